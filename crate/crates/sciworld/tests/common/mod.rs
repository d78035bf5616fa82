use std::path::PathBuf;

use sciworld::eval::{run_episode, Agent};
use sciworld_core::catalog::Catalog;
use sciworld_core::export::Transcript;
use sciworld_core::task::Simplifications;

/// The fixed two-episode corpus behind the export goldens: a conductivity
/// test and a classification run, both solved by the oracle.
pub fn corpus() -> Vec<Transcript> {
    let cat = Catalog::builtin();
    [("3-3", 0, 0), ("4-2", 0, 0)]
        .into_iter()
        .map(|(t, v, s)| run_episode(&cat, Agent::Oracle, t, v, s, Simplifications::easy()).unwrap())
        .collect()
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against a checked-in file; `UPDATE_GOLDENS=1` rewrites it.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want == actual {
        Ok(())
    } else {
        let line = want
            .lines()
            .zip(actual.lines())
            .position(|(a, b)| a != b)
            .unwrap_or(want.lines().count().min(actual.lines().count()));
        Err(format!("{name} differs from golden at line {}", line + 1))
    }
}
