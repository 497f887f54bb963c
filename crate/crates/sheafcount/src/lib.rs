//! Exact-arithmetic engine for rank-2 sheaf counting invariants on complex
//! surfaces.
//!
//! The engine has two independent computational routes that must agree:
//!
//! * a **localization side**: torus localization over products of Hilbert
//!   schemes of points on toric surfaces, producing truncated generating
//!   series with exact rational coefficients, from which seven universal
//!   factor series are extracted ([`universal`]);
//! * a **modular side**: eta/theta product expansions that predict the same
//!   invariants in closed form ([`modular`]).
//!
//! Everything is computed over `Q`; there are no floating point numbers
//! anywhere. Series are truncated, and every truncated object carries its
//! own validity window so that no coefficient is ever reported that was not
//! actually computed.
//!
//! Module map:
//!
//! * [`scalars`]: the series tower (rationals, Laurent series in `s`, power
//!   series in `t = 1 - y`, Laurent series in `q`, power series in `x` over
//!   Laurent polynomials in `u = y^(1/2)`).
//! * [`chartalgebra`]: integer-multiplicity weight characters on a single
//!   toric chart (partitions, monomial ideals, tangent and Hom characters).
//! * [`localization`]: toric surface data, equivariant divisor lifts, the
//!   fixed point sum, single-chart partition functions, and descendent
//!   insertions.
//! * [`universal`]: extraction of the universal factor series from reference
//!   geometries and re-assembly into the weighted sums used by the checks.
//! * [`modular`]: eta, theta, and related product series on the prediction
//!   side.
//! * [`geometry`]: the surface catalog (lattices, canonical classes, basic
//!   class data) and the evaluators that compare both sides.
//! * [`harness`]: cache files, verification reports, suite manifests.

pub mod chartalgebra;
pub mod error;
pub mod localization;
pub mod scalars;

pub use error::Error;

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
