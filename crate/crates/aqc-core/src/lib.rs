//! Nested pairs of classical codes over small finite fields and the
//! asymmetric CSS-like quantum codes they induce.
//!
//! The crate covers four layers:
//!
//! - [`galois`]: exact arithmetic in `F_q = F_{p^(l*m)}` with the subfield
//!   tower `F_p ⊆ F_r ⊆ F_q`, trace, conjugation, and polynomial arithmetic
//!   modulo `x^n - 1`.
//! - [`code`]: `F_r`-linear codes inside `F_q^n`, weight distributions,
//!   duals under the Euclidean / trace Euclidean / Hermitian / trace
//!   Hermitian inner products, and the Krawtchouk/MacWilliams transform.
//! - [`cyclic`] and [`groupchar`]: constructions of nested pairs (cyclic
//!   codes from divisor polynomials, subfield-linear cyclic codes in
//!   m-generator canonical form, group character codes).
//! - [`aqc`] and [`lp`]: derivation of `[[n,k,dz/dx]]_q` parameters from a
//!   nested pair, and the exact-rational linear-programming layer (Delsarte
//!   bounds, the nine-constraint feasibility system, Farkas certificates).
//!
//! All arithmetic is exact: field elements are table-driven, weight counts
//! are big integers, LP solves run a rational simplex with Bland's rule.

pub mod adhoc;
pub mod aqc;
pub mod code;
pub mod cyclic;
pub mod fixtures;
pub mod galois;
pub mod groupchar;
pub mod lp;

pub(crate) mod linalg;

pub use code::{Code, InnerProductKind, WeightDistribution};
pub use galois::{FieldElement, FieldSpec, Poly};
pub use lp::{LpOutcome, LpProblem, Rat};
