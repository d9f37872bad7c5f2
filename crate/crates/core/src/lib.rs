//! Finite orthogonality spaces, their ortholattices of orthoclosed subsets,
//! and Hermitian spaces over star-fields with places.

pub mod classify;
pub mod error;
pub mod hermitian;
pub mod lattice;
pub mod mask;
pub mod measures;
pub mod morphisms;
pub mod scalars;
pub mod space;
pub mod toolkit;

pub use classify::{classify, ClassReport, Witness};
pub use error::{Error, Result};
pub use lattice::{build_lattice, OrthoLattice};
pub use mask::Mask;
pub use morphisms::{SpaceMap, MapStatus};
pub use space::{OrthoSpace, Subset, Subspace};

/// Exact rationals.
pub type Q = num_rational::BigRational;
/// `Q(√2)` with the identity involution; an ordered field.
pub type Q2 = scalars::Quad<2, false>;
/// `Q(√2)` with `√2 ↦ -√2` as involution.
pub type Q2c = scalars::Quad<2, true>;
/// Gaussian rationals with complex conjugation.
pub type QI = scalars::Quad<-1, true>;
/// `GF(9)` with the Frobenius involution `x ↦ x³`.
pub type Gf9 = scalars::Gf<3, 2, true>;
pub use scalars::{Fp, RatFunc};
