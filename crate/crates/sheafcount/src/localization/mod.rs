//! Equivariant localization on toric surfaces.
//!
//! The generating series computed here sums, over the torus fixed points
//! of a product of two Hilbert schemes of points, the tautological Euler
//! classes and the genus factor of the local obstruction-theory complex.
//! [`toric`] holds the chart tables and the one-parameter specialization,
//! [`factors`] the per-chart integrand, and [`engine`] the global walk.
//!
//! The result of a run is a `q`-series whose coefficients are truncated
//! Laurent series in `s` (and, beyond the total-Chern-class grade, in `t`).
//! Each coefficient is exact inside its recorded window. Chart sums are
//! evaluated at several samples of the torus parameter and interpolated to
//! parameter zero. At that limit the series must be independent of the
//! direction sampled along and of the equivariant lifts of the divisors;
//! at any pinned sample it must factor into single-chart series. All three
//! identities are enforced by tests rather than assumed.

pub mod engine;
pub mod factors;
pub mod toric;

pub use engine::{
    nekrasov_chart, z_series, z_series_at_sample, z_series_graded, z_series_pinned, GradedZ,
    RunConfig, ZRun,
};
pub use toric::{p1xp1, p1xp1_o, p2, p2_o, EpsSample, EpsilonSpec, EqDivisor, ToricSurface};
