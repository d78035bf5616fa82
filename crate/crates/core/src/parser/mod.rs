//! Template-based action parser and valid-action enumeration.
//!
//! Input is matched against every surface form in the grammar. Object slots are
//! grounded through the current [`ViewIndex`]; every distinct grounded action
//! is a candidate. One candidate parses, several produce a numbered
//! disambiguation list, none is unknown.

mod enumerate;
mod parse;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::object::{ObjId, Terminal};
use crate::referent::ViewIndex;
use crate::world::World;

pub use enumerate::valid_actions;
pub use parse::{normalize, Parser};

/// A fully grounded action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Open(ObjId),
    Close(ObjId),
    Activate(ObjId),
    Deactivate(ObjId),
    Connect {
        a: ObjId,
        ta: Option<Terminal>,
        b: ObjId,
        tb: Option<Terminal>,
    },
    Disconnect(ObjId),
    UseOn(ObjId, ObjId),
    Use(ObjId),
    LookAround,
    LookAt(ObjId),
    LookIn(ObjId),
    Read(ObjId),
    Move(ObjId, ObjId),
    PickUp(ObjId),
    PutDown(ObjId),
    Pour(ObjId, ObjId),
    Dunk(ObjId, ObjId),
    Mix(ObjId),
    GoTo(usize),
    Teleport(usize),
    Eat(ObjId),
    Flush(ObjId),
    Focus(ObjId),
    Wait(u32),
    Task,
    Inventory,
}

impl Action {
    /// Grammar id of the action.
    pub fn id(&self) -> &'static str {
        match self {
            Action::Open(_) => "open",
            Action::Close(_) => "close",
            Action::Activate(_) => "activate",
            Action::Deactivate(_) => "deactivate",
            Action::Connect { .. } => "connect",
            Action::Disconnect(_) => "disconnect",
            Action::UseOn(..) | Action::Use(_) => "use",
            Action::LookAround => "look around",
            Action::LookAt(_) => "look at",
            Action::LookIn(_) => "look in",
            Action::Read(_) => "read",
            Action::Move(..) => "move",
            Action::PickUp(_) => "pick up",
            Action::PutDown(_) => "put down",
            Action::Pour(..) => "pour",
            Action::Dunk(..) => "dunk",
            Action::Mix(_) => "mix",
            Action::GoTo(_) => "go to",
            Action::Teleport(_) => "teleport to",
            Action::Eat(_) => "eat",
            Action::Flush(_) => "flush",
            Action::Focus(_) => "focus on",
            Action::Wait(_) => "wait",
            Action::Task => "task",
            Action::Inventory => "inventory",
        }
    }

    /// Objects the action is about, first slot first.
    pub fn objects(&self) -> Vec<ObjId> {
        match *self {
            Action::Open(a)
            | Action::Close(a)
            | Action::Activate(a)
            | Action::Deactivate(a)
            | Action::Disconnect(a)
            | Action::Use(a)
            | Action::LookAt(a)
            | Action::LookIn(a)
            | Action::Read(a)
            | Action::PickUp(a)
            | Action::PutDown(a)
            | Action::Mix(a)
            | Action::Eat(a)
            | Action::Flush(a)
            | Action::Focus(a) => alloc::vec![a],
            Action::Connect { a, b, .. }
            | Action::UseOn(a, b)
            | Action::Move(a, b)
            | Action::Pour(a, b)
            | Action::Dunk(a, b) => alloc::vec![a, b],
            _ => Vec::new(),
        }
    }

    /// Canonical text: the first surface form, canonical object names.
    pub fn render(&self, w: &World, idx: &ViewIndex) -> String {
        let n = |id: ObjId| -> String {
            idx.name(id)
                .map(String::from)
                .unwrap_or_else(|| crate::referent::display_name(w, id))
        };
        let t = |id: ObjId, t: Option<Terminal>| match t {
            Some(t) => format!("{} {}", n(id), t.name()),
            None => n(id),
        };
        match *self {
            Action::Open(a) => format!("open {}", n(a)),
            Action::Close(a) => format!("close {}", n(a)),
            Action::Activate(a) => format!("activate {}", n(a)),
            Action::Deactivate(a) => format!("deactivate {}", n(a)),
            Action::Connect { a, ta, b, tb } => format!("connect {} to {}", t(a, ta), t(b, tb)),
            Action::Disconnect(a) => format!("disconnect {}", n(a)),
            Action::UseOn(a, b) => format!("use {} on {}", n(a), n(b)),
            Action::Use(a) => format!("use {}", n(a)),
            Action::LookAround => String::from("look around"),
            Action::LookAt(a) => format!("look at {}", n(a)),
            Action::LookIn(a) => format!("look in {}", n(a)),
            Action::Read(a) => format!("read {}", n(a)),
            Action::Move(a, b) => format!("move {} to {}", n(a), n(b)),
            Action::PickUp(a) => format!("pick up {}", n(a)),
            Action::PutDown(a) => format!("put down {}", n(a)),
            Action::Pour(a, b) => format!("pour {} into {}", n(a), n(b)),
            Action::Dunk(a, b) => format!("dunk {} into {}", n(a), n(b)),
            Action::Mix(a) => format!("mix {}", n(a)),
            Action::GoTo(r) => format!("go to {}", w.room_name(r)),
            Action::Teleport(r) => format!("teleport to {}", w.room_name(r)),
            Action::Eat(a) => format!("eat {}", n(a)),
            Action::Flush(a) => format!("flush {}", n(a)),
            Action::Focus(a) => format!("focus on {}", n(a)),
            Action::Wait(1) => String::from("wait"),
            Action::Wait(k) => format!("wait {k}"),
            Action::Task => String::from("task"),
            Action::Inventory => String::from("inventory"),
        }
    }
}

/// A grounded action with its canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedAction {
    pub action: Action,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseOutcome {
    Parsed(ParsedAction),
    /// Candidates in canonical-text order; the agent answers with a number.
    Ambiguous(Vec<ParsedAction>),
    Unknown,
}

/// "Which do you mean?" prompt for an ambiguous input.
pub fn ambiguity_prompt(options: &[ParsedAction]) -> String {
    let mut s = String::from("Ambiguous request: Please enter the number for the action you intended (or blank to cancel):");
    for (i, o) in options.iter().enumerate() {
        s.push_str(&format!("\n{}: {}", i + 1, o.text));
    }
    s
}
