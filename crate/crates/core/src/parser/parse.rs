use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Action, ParseOutcome, ParsedAction};
use crate::catalog::Catalog;
use crate::object::{ObjId, Terminal};
use crate::referent::ViewIndex;
use crate::world::World;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Obj,
    Loc,
    Dur,
}

#[derive(Clone, Debug)]
struct Form {
    action: String,
    toks: Vec<Tok>,
}

/// Lower case, single spaces, no surrounding blanks.
pub fn normalize(input: &str) -> String {
    input
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Compiled grammar.
#[derive(Clone, Debug)]
pub struct Parser {
    forms: Vec<Form>,
}

#[derive(Clone, Debug)]
enum Slot {
    Obj(Vec<(ObjId, Option<Terminal>)>),
    Loc(Vec<usize>),
    Dur(u32),
}

impl Parser {
    /// `teleport` enables the actions marked easy-only.
    pub fn new(catalog: &Catalog, teleport: bool) -> Parser {
        let mut forms = Vec::new();
        for a in &catalog.actions {
            if a.easy_only && !teleport {
                continue;
            }
            for f in &a.forms {
                let toks = f
                    .split_whitespace()
                    .map(|t| match t {
                        "{obj}" => Tok::Obj,
                        "{loc}" => Tok::Loc,
                        "{duration}" => Tok::Dur,
                        w => Tok::Word(String::from(w)),
                    })
                    .collect();
                forms.push(Form {
                    action: a.id.clone(),
                    toks,
                });
            }
        }
        Parser { forms }
    }

    pub fn parse(&self, w: &World, idx: &ViewIndex, input: &str) -> ParseOutcome {
        let text = normalize(input);
        let words: Vec<&str> = text.split(' ').filter(|s| !s.is_empty()).collect();
        if words.is_empty() {
            return ParseOutcome::Unknown;
        }
        let mut found: BTreeSet<Action> = BTreeSet::new();
        for f in &self.forms {
            let mut splits = Vec::new();
            split(&f.toks, &words, &mut Vec::new(), &mut splits);
            for phrases in splits {
                let slots: Option<Vec<Slot>> = f
                    .toks
                    .iter()
                    .filter(|t| !matches!(t, Tok::Word(_)))
                    .zip(&phrases)
                    .map(|(t, p)| ground(w, idx, t, p, f.action == "connect"))
                    .collect();
                if let Some(slots) = slots {
                    build(&f.action, &slots, idx.room, &mut found);
                }
            }
        }
        let mut out: Vec<ParsedAction> = found
            .into_iter()
            .map(|a| ParsedAction {
                text: a.render(w, idx),
                action: a,
            })
            .collect();
        match out.len() {
            0 => ParseOutcome::Unknown,
            1 => ParseOutcome::Parsed(out.pop().expect("one")),
            _ => {
                out.sort_by(|a, b| a.text.cmp(&b.text).then(a.action.cmp(&b.action)));
                ParseOutcome::Ambiguous(out)
            }
        }
    }
}

/// Every way of assigning consecutive word runs to the slots of `toks`.
fn split(toks: &[Tok], words: &[&str], cur: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    match toks.first() {
        None => {
            if words.is_empty() {
                out.push(cur.clone());
            }
        }
        Some(Tok::Word(lit)) => {
            if words.first() == Some(&lit.as_str()) {
                split(&toks[1..], &words[1..], cur, out);
            }
        }
        Some(_) => {
            for n in 1..=words.len() {
                cur.push(words[..n].join(" "));
                split(&toks[1..], &words[n..], cur, out);
                cur.pop();
            }
        }
    }
}

fn ground(w: &World, idx: &ViewIndex, t: &Tok, phrase: &str, terminals: bool) -> Option<Slot> {
    match t {
        Tok::Obj => {
            let mut c: Vec<(ObjId, Option<Terminal>)> = idx
                .resolve(phrase)
                .into_iter()
                .map(|id| (id, None))
                .collect();
            if terminals {
                if let Some((base, term)) = Terminal::parse_suffix(phrase) {
                    for id in idx.resolve(base) {
                        if w.terminals(id).contains(&term) {
                            c.push((id, Some(term)));
                        }
                    }
                }
            }
            (!c.is_empty()).then_some(Slot::Obj(c))
        }
        Tok::Loc => {
            let rooms: Vec<usize> = (0..w.rooms.len())
                .filter(|&r| w.room_name(r).eq_ignore_ascii_case(phrase))
                .collect();
            (!rooms.is_empty()).then_some(Slot::Loc(rooms))
        }
        Tok::Dur => match phrase.parse::<u32>() {
            Ok(n) if (1..=10).contains(&n) => Some(Slot::Dur(n)),
            _ => None,
        },
        Tok::Word(_) => None,
    }
}

/// Plain object candidates; the room itself only where `room_ok`.
fn objs(s: &Slot, room: ObjId, room_ok: bool) -> Vec<ObjId> {
    match s {
        Slot::Obj(c) => c
            .iter()
            .filter(|x| x.1.is_none() && (room_ok || x.0 != room))
            .map(|x| x.0)
            .collect(),
        _ => Vec::new(),
    }
}

fn build(id: &str, slots: &[Slot], room: ObjId, out: &mut BTreeSet<Action>) {
    let one = |f: fn(ObjId) -> Action, out: &mut BTreeSet<Action>| {
        for a in objs(&slots[0], room, false) {
            out.insert(f(a));
        }
    };
    let two = |f: fn(ObjId, ObjId) -> Action, out: &mut BTreeSet<Action>| {
        for a in objs(&slots[0], room, false) {
            for b in objs(&slots[1], room, id == "move") {
                out.insert(f(a, b));
            }
        }
    };
    match (id, slots.len()) {
        ("open", 1) => one(Action::Open, out),
        ("close", 1) => one(Action::Close, out),
        ("activate", 1) => one(Action::Activate, out),
        ("deactivate", 1) => one(Action::Deactivate, out),
        ("connect", 2) => {
            if let (Slot::Obj(x), Slot::Obj(y)) = (&slots[0], &slots[1]) {
                for &(a, ta) in x.iter().filter(|x| x.0 != room) {
                    for &(b, tb) in y.iter().filter(|y| y.0 != room) {
                        out.insert(Action::Connect { a, ta, b, tb });
                    }
                }
            }
        }
        ("disconnect", 1) => one(Action::Disconnect, out),
        ("use", 2) => two(Action::UseOn, out),
        ("use", 1) => one(Action::Use, out),
        ("look around", 0) => {
            out.insert(Action::LookAround);
        }
        ("look at", 1) => one(Action::LookAt, out),
        ("look in", 1) => one(Action::LookIn, out),
        ("read", 1) => one(Action::Read, out),
        ("move", 2) => two(Action::Move, out),
        ("pick up", 1) => one(Action::PickUp, out),
        ("put down", 1) => one(Action::PutDown, out),
        ("pour", 2) => two(Action::Pour, out),
        ("dunk", 2) => two(Action::Dunk, out),
        ("mix", 1) => one(Action::Mix, out),
        ("go to", 1) | ("teleport to", 1) => {
            if let Slot::Loc(rs) = &slots[0] {
                for &r in rs {
                    out.insert(if id == "go to" {
                        Action::GoTo(r)
                    } else {
                        Action::Teleport(r)
                    });
                }
            }
        }
        ("eat", 1) => one(Action::Eat, out),
        ("flush", 1) => one(Action::Flush, out),
        ("focus on", 1) => one(Action::Focus, out),
        ("wait", 0) => {
            out.insert(Action::Wait(1));
        }
        ("wait", 1) => {
            if let Slot::Dur(n) = slots[0] {
                out.insert(Action::Wait(n));
            }
        }
        ("task", 0) => {
            out.insert(Action::Task);
        }
        ("inventory", 0) => {
            out.insert(Action::Inventory);
        }
        _ => {}
    }
}
