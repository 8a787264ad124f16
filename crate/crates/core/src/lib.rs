//! Exact computations with the reduced Burau representation of the
//! four-strand braid group.
//!
//! * [`laurent`]: Laurent polynomials over the integers.
//! * [`braid`]: braid words, Bokut–Vesnin words, `φ: B4 -> B3`, sampling.
//! * [`burau`]: Burau matrices and the Artin-action triviality oracle.
//! * [`templieb`]: Temperley–Lieb algebras `TL3`, `TL4`, the Jones map and `ψ`.
//! * [`decomp`]: the `P, Q, R` decomposition of `ρ11`/`ρ31` under powers of `a`.
//! * [`regularity`]: lowest-degree regularity checks and the batch experiment.
//! * [`golden`]: published reference values and [`golden::self_test`].

pub mod braid;
pub mod burau;
pub mod decomp;
pub mod golden;
pub mod laurent;
pub mod regularity;
pub mod templieb;

pub use braid::{BraidWord, BvLetter, BvWord, Letter, StrandPermutation, WordError};
pub use burau::{artin_trivial, burau, burau_bv, BurauMatrix};
pub use laurent::{Direction, LaurentError, LaurentPoly};
