//! Deterministic text-world simulation engine for elementary science tasks.
//!
//! The crate is `no_std` with `alloc`: the world model, the physical-process
//! engines, the action parser, the task suite, the step/reset environment and the
//! scripted oracle agents are all pure computations over in-memory state. File
//! IO, transcript persistence and the command line live in the `sciworld` crate.
//!
//! The usual entry point is [`env::Environment`]:
//!
//! ```
//! use sciworld_core::catalog::Catalog;
//! use sciworld_core::env::Environment;
//! use sciworld_core::task::Simplifications;
//!
//! let catalog = Catalog::builtin();
//! let mut env = Environment::new(catalog);
//! let obs = env.reset("1-2", 0, 7, Simplifications::easy()).unwrap();
//! assert_eq!(obs.score, 0.0);
//! let obs = env.step("look around").unwrap();
//! assert!(obs.obs_text.starts_with("This room is called"));
//! ```
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod describe;
pub mod engine;
pub mod env;
pub mod error;
pub mod exec;
pub mod export;
pub mod material;
pub mod object;
pub mod oracle;
pub mod parser;
pub mod referent;
pub mod rng;
pub mod task;
pub mod world;

pub use error::WorldError;
pub use object::{ObjId, Phase, Terminal};
pub use world::World;
