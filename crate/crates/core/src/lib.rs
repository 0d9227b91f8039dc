pub mod bijections;
pub mod cli;
pub mod cumulants;
pub mod error;
pub mod partitions;
pub mod peaks;
pub mod perm;
pub mod ring;
pub mod sequences;
pub mod series;
pub mod trees;
pub mod troupes;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use ring::{Poly, Rational, RingElem, RingKind};
pub use series::FormalPowerSeries;
pub use trees::{Color, ColoredTree, LabeledTree};
pub use troupes::WeightedTroupe;
