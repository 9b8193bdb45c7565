//! Exact-arithmetic verification of the algebra behind a closed G2 structure
//! on a 2-step construction: a 7-dimensional nilpotent Lie algebra with a
//! closed G2 form, the invariant cohomology of its order-2 symmetry with a
//! non-trivial triple Massey product, the lattice and fixed-locus structure
//! of the quotient, and the cohomology ring of the resolution together with
//! the lifted non-formality obstruction.
//!
//! Everything is computed over the ordered field Q(√2, √3) with
//! arbitrary-precision rationals; no floating point is used anywhere.

pub mod builtin;
pub mod cdga;
pub mod cohomology;
pub mod exterior;
pub mod field;
pub mod g2;
pub mod linalg;
pub mod nilgroup;
pub mod report;
pub mod resring;

pub use cdga::{parse_form, parse_salamon, Cdga, CdgaMorphism, Involution, LieAlgebraData};
pub use cohomology::{CochainComplex, CohomologyClass, Exactness, MasseyOutcome, MasseyTriple};
pub use exterior::{Form, Monomial};
pub use field::FieldElement;
pub use linalg::Matrix;
