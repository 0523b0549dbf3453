//! Word-problem solvers for the tower of groups built from the dihedral
//! group of order 18 by a semidirect product, HNN extensions and free
//! products, together with the certificate checks that run on top of them.

pub mod bass_serre;
pub mod combinators;
pub mod elementary;
pub mod error;
pub mod h0;
pub mod morphisms;
pub mod quotients;
pub mod report;
pub mod suite;
pub mod tower;
pub mod words;

pub use error::{Error, Result};
pub use tower::{Level, Subgroup, Tower};
pub use words::{Letter, Word};
