//! Crate-wide error type.
//!
//! Truncated-series arithmetic is total on well-formed inputs, but a handful
//! of operations can genuinely fail: asking for a coefficient outside a
//! validity window, inverting a series whose leading term is not known to be
//! nonzero, or specializing equivariant weights at a degenerate parameter.
//! These are reported as values, never silently patched over.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A coefficient was requested outside the window that was actually
    /// computed. Carries enough data to say how much wider the computation
    /// would have to run.
    #[error("coefficient of {var}^{wanted} requested, but only [{lo}, {hi}] is known")]
    OutsideWindow {
        var: &'static str,
        wanted: i64,
        lo: i64,
        hi: i64,
    },

    /// Two series windows no longer overlap, so the operation has no valid
    /// coefficients at all.
    #[error("empty {var}-window after {op}: [{lo}, {hi}]")]
    EmptyWindow {
        var: &'static str,
        op: &'static str,
        lo: i64,
        hi: i64,
    },

    /// Inversion needs a nonzero leading coefficient inside the known window.
    #[error("cannot invert: no nonzero leading term found in {what}")]
    NotInvertible { what: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An equivariant weight specialized to zero where a nonzero value is
    /// required. The caller re-draws the specialization point.
    #[error("degenerate equivariant specialization: weight ({a}, {b}, {k}) vanished")]
    DegenerateEpsilon { a: i64, b: i64, k: i64 },

    /// A virtual bundle came out with the wrong rank; indicates corrupted
    /// fixed-point data and aborts the run.
    #[error("rank audit failed: expected {expected}, got {got}")]
    RankMismatch { expected: i64, got: i64 },

    /// Samples of the chart sum along the torus direction did not fit a
    /// polynomial of the expected degree, so the limit at the origin cannot
    /// be trusted. Signals an inconsistent chart complex or a too-small
    /// sample budget, never a value to patch over.
    #[error("taking the torus limit failed: {0}")]
    ZLimit(String),

    /// The requested check needs deeper truncations than the supplied
    /// universal-series cache provides.
    #[error("insufficient cache: {0}")]
    InsufficientCache(String),

    #[error("cache file rejected: {0}")]
    Cache(String),

    /// Weak-form evaluation hit a basic class sitting exactly on the wall.
    #[error("weak-form evaluation undefined: basic class {0} lies on the degree wall")]
    WeakFormWall(String),

    #[error("unknown surface family `{0}`")]
    UnknownSurface(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
