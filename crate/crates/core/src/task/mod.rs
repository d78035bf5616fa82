//! The task suite: goal predicates, per-family world generation, splits and
//! environment simplifications.

pub mod generate;
pub mod goal;
pub mod simplify;
pub mod split;

pub use generate::{generate, Generated, TaskError};
pub use goal::{EvalCtx, GoalDef, Outcome, Predicate, Scorer, Selector};
pub use simplify::Simplifications;
pub use split::Split;
