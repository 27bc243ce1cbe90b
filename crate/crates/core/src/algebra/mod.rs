//! Exact arithmetic kernel: Laurent parameter polynomials, truncated
//! `q`-series, Pochhammer symbols, Gaussian binomials, Laurent-in-`z`
//! coefficient extraction and rational functions of `q`.

mod laurent;
mod monomial;
mod pochhammer;
mod poly;
mod qpoly;
mod rational;
mod series;

pub use laurent::LaurentZSeries;
pub use monomial::{Param, ParamMonomial};
pub use pochhammer::{
    inv_qfactorial, poch, poch_step, qbinomial, qbinomial_poly, qbinomial_row, qfactorial, triangular, PochBase,
    PochLen,
};
pub use poly::ParamPoly;
pub use qpoly::QPoly;
pub use rational::QRational;
pub use series::{product, sum, QSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("constant term is not a signed monomial; series is not invertible")]
    NonUnitConstantTerm,
    #[error("infinite product base carries no positive power of q")]
    NonStabilizingProduct,
    #[error("division by the zero rational function")]
    DivisionByZeroRational,
    #[error("result would need q^{0}")]
    NegativeQPower(i64),
    #[error("need q-order {needed}, series only has {have}")]
    InsufficientOrder { needed: usize, have: usize },
}
