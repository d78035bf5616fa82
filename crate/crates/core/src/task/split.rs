//! Train/dev/test partition of each task's variations.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::catalog::TaskDef;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl Split {
    pub fn parse(s: &str) -> Option<Split> {
        match s {
            "train" => Some(Split::Train),
            "dev" => Some(Split::Dev),
            "test" => Some(Split::Test),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::Test => "test",
        }
    }
}

/// Sizes for `n` variations: train ceil(n/2), dev floor(n/4), test the rest.
pub fn sizes(n: usize) -> (usize, usize, usize) {
    let train = n.div_ceil(2);
    let dev = n / 4;
    (train, dev, n - train - dev)
}

/// Variation indices in split order: seen variations first, unseen last, so
/// unseen ones land in dev/test.
pub fn ordered(task: &TaskDef) -> Vec<usize> {
    let (mut seen, unseen): (Vec<usize>, Vec<usize>) =
        (0..task.variations.len()).partition(|&i| !task.variations[i].unseen);
    seen.extend(unseen);
    seen
}

pub fn indices(task: &TaskDef, split: Split) -> Vec<usize> {
    let order = ordered(task);
    let (train, dev, _) = sizes(order.len());
    match split {
        Split::Train => order[..train].to_vec(),
        Split::Dev => order[train..train + dev].to_vec(),
        Split::Test => order[train + dev..].to_vec(),
    }
}
