use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use sciworld::dataset;
use sciworld::eval::{self, Agent};
use sciworld::transcript;
use sciworld_core::catalog::{Catalog, TaskDef};
use sciworld_core::env::{EnvError, Environment};
use sciworld_core::export::Format;
use sciworld_core::task::{split, Simplifications, Split};

#[derive(Parser)]
#[command(name = "sciworld", version, about = "Text-world science experiment simulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Simplifications: a comma list of flags, or `easy` for all of them.
    #[arg(long, default_value = "easy")]
    simplifications: String,
    /// Base seed; a fresh one is generated and printed when omitted.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play a task interactively.
    Play {
        #[arg(long)]
        task: String,
        #[arg(long, default_value_t = 0)]
        var: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run a baseline agent over a split and report mean scores per task.
    Eval {
        #[arg(long, value_enum, default_value = "random-valid")]
        agent: Agent,
        /// Limit to one task; all tasks when omitted.
        #[arg(long)]
        task: Option<String>,
        #[arg(long, default_value = "test")]
        split: String,
        /// Episodes per task.
        #[arg(long, default_value_t = 10)]
        episodes: usize,
        /// Results file (tab-separated).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Write oracle transcripts, one file per task, into a directory.
    GenGold {
        #[arg(long)]
        task: Option<String>,
        #[arg(long, default_value = "train")]
        split: String,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Convert transcripts into training examples.
    Export {
        /// Transcript file or directory of *.jsonl files.
        input: PathBuf,
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the task suite with split sizes.
    ListTasks,
}

enum Failure {
    Usage(String),
    Engine(String),
}

type Res = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn engine(e: impl std::fmt::Display) -> Failure {
    Failure::Engine(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let catalog = Catalog::builtin();
    let r = match cli.cmd {
        Cmd::Play { task, var, common } => play(&catalog, &task, var, &common),
        Cmd::Eval {
            agent,
            task,
            split,
            episodes,
            out,
            common,
        } => run_eval(&catalog, agent, task.as_deref(), &split, episodes, out, &common),
        Cmd::GenGold {
            task,
            split,
            out,
            common,
        } => gen_gold(&catalog, task.as_deref(), &split, &out, &common),
        Cmd::Export { input, format, out } => export(&input, &format, &out),
        Cmd::ListTasks => {
            list_tasks(&catalog);
            Ok(())
        }
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Engine(m)) => {
            eprintln!("engine error: {m}");
            ExitCode::from(2)
        }
    }
}

fn flags(c: &Common) -> Result<Simplifications, Failure> {
    Simplifications::parse(&c.simplifications).map_err(usage)
}

fn seed(c: &Common) -> u64 {
    c.seed.unwrap_or_else(|| {
        let s = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_nanos() as u64);
        eprintln!("seed: {s}");
        s
    })
}

fn tasks<'a>(cat: &'a Catalog, only: Option<&str>) -> Result<Vec<&'a TaskDef>, Failure> {
    match only {
        Some(id) => cat
            .task(id)
            .map(|t| vec![t])
            .ok_or_else(|| usage(format!("unknown task {id}"))),
        None => Ok(cat.tasks.iter().collect()),
    }
}

fn parse_split(s: &str) -> Result<Split, Failure> {
    Split::parse(s).ok_or_else(|| usage(format!("unknown split {s} (train, dev or test)")))
}

fn list_tasks(cat: &Catalog) {
    println!("{:<6} {:<22} {:<44} {:>5} {:>5} {:>5}", "task", "topic", "name", "train", "dev", "test");
    for t in &cat.tasks {
        let (a, b, c) = split::sizes(t.variations.len());
        println!("{:<6} {:<22} {:<44} {a:>5} {b:>5} {c:>5}", t.id, t.topic, t.name);
    }
}

fn run_eval(
    cat: &Arc<Catalog>,
    agent: Agent,
    task: Option<&str>,
    which: &str,
    episodes: usize,
    out: Option<PathBuf>,
    common: &Common,
) -> Res {
    let (ts, which, f, s) = (tasks(cat, task)?, parse_split(which)?, flags(common)?, seed(common));
    let rows = eval::evaluate(cat, agent, &ts, which, episodes, s, f).map_err(engine)?;
    for r in &rows {
        println!("{:<6} {:<44} {:.3}", r.task, r.name, r.mean_score);
    }
    println!("{:<6} {:<44} {:.3}", "all", "Average", eval::overall(&rows));
    if let Some(p) = out {
        eval::write_results(&p, &rows).map_err(engine)?;
    }
    Ok(())
}

fn gen_gold(cat: &Arc<Catalog>, task: Option<&str>, which: &str, out: &Path, common: &Common) -> Res {
    let (ts, which, f, s) = (tasks(cat, task)?, parse_split(which)?, flags(common)?, seed(common));
    std::fs::create_dir_all(out).map_err(usage)?;
    let mut total = 0;
    for t in ts {
        let corpus = eval::gold_corpus(cat, t, which, s, f).map_err(engine)?;
        total += corpus.len();
        transcript::write_file(&out.join(format!("{}.jsonl", t.id)), &corpus).map_err(engine)?;
    }
    println!("wrote {total} transcripts to {}", out.display());
    Ok(())
}

fn export(input: &Path, format: &str, out: &Path) -> Res {
    let format = Format::parse(format).map_err(usage)?;
    let ts = transcript::read_corpus(input).map_err(usage)?;
    let (path, m) = dataset::write_export(&ts, format, out).map_err(engine)?;
    println!("wrote {} records from {} transcripts to {}", m.records, m.transcripts, path.display());
    Ok(())
}

fn play(cat: &Arc<Catalog>, task: &str, var: usize, common: &Common) -> Res {
    let (f, s) = (flags(common)?, seed(common));
    let mut env = Environment::new(cat.clone());
    let o = env.reset(task, var, s, f).map_err(|e| match e {
        EnvError::Task(_) => usage(e),
        _ => engine(e),
    })?;
    println!("{}\n\n{}", o.task_description, o.obs_text);
    let stdin = io::stdin();
    let mut out = io::stdout();
    loop {
        print!("> ");
        let _ = out.flush();
        let mut line = String::new();
        if stdin.lock().read_line(&mut line).map_err(engine)? == 0 {
            break;
        }
        match line.trim() {
            ":quit" => break,
            ":valid" => {
                for a in env.valid_actions().map_err(engine)? {
                    println!("{}", a.text);
                }
                continue;
            }
            _ => {}
        }
        let o = env.step(line.trim_end_matches(['\r', '\n'])).map_err(engine)?;
        println!("{}\n(score {:.3}, reward {:+.3}, steps {})", o.obs_text, o.score, o.reward, o.steps);
        if o.done {
            println!("Episode over: {:?}.", o.outcome);
            break;
        }
    }
    Ok(())
}
