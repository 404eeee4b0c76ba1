//! Combinatorics of the subdivision map from type `A^(1)_{e-1}` to type
//! `A^(1)_e`: Cartan data, partitions and abaci, tableaux, Garnir data,
//! runner addition and canonical bases of the level-`l` q-Fock space.

pub mod error;
pub mod garnir;
pub mod lie_core;
pub mod partition_core;
pub mod runner_fock;
pub mod subdivision;
pub mod tableaux;
pub mod verify;

pub use error::{Error, Result};
