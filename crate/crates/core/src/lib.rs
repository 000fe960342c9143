//! Computational core for classifying solvable three-dimensional Artin
//! representations of the rationals that ramify at a single prime.
//!
//! The crate works entirely with finite groups given by multiplication
//! tables. On top of that it provides
//!
//! * exact character tables (Dixon–Schneider over a prime field, lifted to
//!   cyclotomic values) with induction, restriction and the Mackey criterion,
//! * second cohomology with coefficients in `F_3`, central extensions of
//!   degree three and the 3-rank of the Schur multiplier,
//! * Artin conductor exponents computed from ramification filtrations,
//! * the closed-form counting bounds for imprimitive and primitive
//!   representations, each paired with a brute-force cross-check.

mod arith;
pub mod character;
pub mod cohomology;
pub mod conductor;
pub mod counting;
pub mod cyclotomic;
pub mod error;
pub mod gf3;
pub mod group;
pub mod verify;

pub use character::{Character, CharacterTable};
pub use cohomology::{Cocycle2, CohomologyBasis};
pub use conductor::{FiltrationOrders, RamificationFiltration};
pub use counting::BoundReport;
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::{Group, GroupHom, Subgroup};
