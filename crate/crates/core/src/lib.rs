//! Exact computations with Artinian graded algebras `R/I`,
//! `R = k[x_1, .., x_n]`: Hilbert functions, Fröberg predictions, graded
//! Betti numbers, Lefschetz-type properties, ghost terms, linkage and
//! zeroschemes in the plane.
//!
//! The coefficient field is either a prime field `GF(p)` (default
//! `p = 32003`) or the rationals. All linear algebra is exact.

pub mod betti;
pub mod error;
pub mod field;
pub mod form;
pub mod froberg;
pub mod ghost;
pub mod lefschetz;
pub mod linalg;
pub mod linkage;
pub mod monomial;
pub mod monomial_ideal;
pub mod points;
pub mod quotient;
pub mod seed;

pub use error::{Error, Result};
pub use field::{Backend, Field, FieldScalar, PrimeField, RationalField, DEFAULT_PRIME};
pub use form::{Form, GradedIdeal, IdealDocument};
pub use monomial::{GradedBasis, Monomial};
pub use quotient::{HilbertFunction, Quotient, QuotientSlice};
