//! Exact orbifold cohomology of the toric Deligne-Mumford stack attached to
//! a simplicial lattice polytope, and the mixed Hodge data carried by it:
//! Hodge and weight filtrations, Hodge numbers, spectrum at infinity,
//! Jordan type of the monodromy and polarization data.
//!
//! All arithmetic is exact (integers and `i64` rationals).

pub mod analysis;
pub mod error;
pub mod hodge;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod polarization;
pub mod polytope;
pub mod rational;
pub mod sectors;
pub mod spectrum;

pub use analysis::Analysis;
pub use error::{Error, Result};
pub use polytope::{Polytope, PolytopeData, SimplexWeights};
pub use rational::Rational;
pub use sectors::{Sector, SectorTable};
