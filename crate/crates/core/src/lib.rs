//! Modular forms mod 2 of level 1 and the Hecke algebra acting on them.
//!
//! The space `F` spanned by the odd powers of `Δ` carries an action of the
//! Hecke operators `T_p` (p odd). This crate computes that action exactly
//! over GF(2) on bit-packed q-series and on the finite levels
//! `F(n) = ⟨Δ, Δ³, …, Δ^{2n−1}⟩`, builds the basis `m(a, b)` on which `T₃`
//! and `T₅` act as index shifts, expands every `T_p` as a power series in
//! `x = T₃`, `y = T₅`, and covers the theta series of the forms
//! `x² + 2y²` and `x² + 4y²` with their composition laws.

pub mod arith;
mod bits;
pub mod error;
pub mod fspace;
pub mod gf2;
pub mod mbasis;
pub mod monomial;
pub mod series;
pub mod theta;
pub mod verify;

pub use bits::Bits;
pub use error::{Error, Result};
pub use fspace::{
    algebra_dimension, check_divisibility, commutant_dimension, expand_in_delta_basis,
    hecke_matrix, nilpotency_index, DeltaBasis, FElement,
};
pub use gf2::{Echelon, GF2Matrix};
pub use mbasis::MTable;
pub use monomial::{MExpansion, MIndex};
pub use series::{delta, delta_pow, F2Series, OddDeltaPowers};
pub use theta::{CompositionLaw, FormParam, ThetaIndex};
pub use verify::{run_suite, Check, Suite, VerifyConfig};
