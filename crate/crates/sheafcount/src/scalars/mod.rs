//! Exact arithmetic and the truncated-series tower.
//!
//! Everything downstream computes in one of these rings:
//!
//! * [`Rat`]: arbitrary-precision rationals, the only scalars anywhere.
//! * [`SLaurent`]: windowed Laurent series in the equivariant weight `s`.
//! * [`TSeries`]: series in the refinement variable `t = 1 - y` over
//!   `SLaurent`, for the localization route.
//! * [`QSeries`]: generating series in `q` over `TSeries`, again windowed.
//! * [`UPoly`]: exact Laurent polynomials in `u = y^{1/2}`.
//! * [`XSeries`]: series in the modular variable `x` over `UPoly`, for the
//!   theta-function route.
//!
//! The two routes meet only at the very end, when a `q`-coefficient has
//! been reduced to an exact `y`-polynomial and is compared against an
//! `x`-coefficient.

pub mod numbers;
pub mod qseries;
pub mod rat;
pub mod slaurent;
pub mod tseries;
pub mod upoly;
pub mod xseries;

pub use numbers::{bernoulli_upto, factorial};
pub use qseries::QSeries;
pub use rat::Rat;
pub use slaurent::{SLaurent, INF};
pub use tseries::TSeries;
pub use upoly::UPoly;
pub use xseries::XSeries;
