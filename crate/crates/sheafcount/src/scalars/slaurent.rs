//! Truncated Laurent series in the equivariant variable `s`.
//!
//! An `SLaurent` value represents a Laurent series together with what is
//! actually known about it:
//!
//! * `lo` is a guaranteed valuation bound: the series has no terms below
//!   `s^lo`. Coefficients below `lo` are therefore known to be zero.
//! * `hi` is a knowledge bound: coefficients for exponents in `[lo, hi]` are
//!   exact, everything above `hi` is unknown. Exact polynomials carry
//!   `hi = INF`, so multiplying by a polynomial never loses precision.
//!
//! The window is part of the value. Binary operations shrink the result
//! window to what both operands support, accounting for valuation shifts;
//! nothing is ever silently zero-padded. Asking for a coefficient above `hi`
//! is an error, asking below `lo` returns an exact zero.
//!
//! Stored coefficients run from `lo` upward and may stop before `hi`; the
//! gap consists of exact zeros. Canonical form has no zero coefficient at
//! either end of the stored block, so derived equality compares values
//! together with their windows.

use super::rat::Rat;
use crate::error::Error;
use crate::Result;
use std::fmt;

/// Stands in for "known to all orders". Kept well below `i64::MAX` so that
/// window arithmetic can use plain saturating sums.
pub const INF: i64 = i64::MAX / 4;

/// Window-bound addition: anything at or beyond `INF` stays there.
pub(crate) fn sat_add(a: i64, b: i64) -> i64 {
    if a >= INF || b >= INF {
        INF
    } else {
        a + b
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SLaurent {
    lo: i64,
    hi: i64,
    coeffs: Vec<Rat>,
}

impl SLaurent {
    /// The exact zero series (zero to all orders).
    pub fn zero() -> Self {
        SLaurent { lo: INF, hi: INF, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// An exact constant.
    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SLaurent { lo: 0, hi: INF, coeffs: vec![c] }
    }

    /// The exact monomial `c * s^e`.
    pub fn monomial(c: Rat, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SLaurent { lo: e, hi: INF, coeffs: vec![c] }
    }

    /// The exact linear form `c + k s`.
    pub fn linear(c: Rat, k: i64) -> Self {
        Self::from_coeffs(0, vec![c, Rat::from_int(k)], INF)
    }

    /// Build from explicit coefficients for exponents `lo, lo+1, ...`,
    /// known through `hi`.
    pub fn from_coeffs(lo: i64, coeffs: Vec<Rat>, hi: i64) -> Self {
        let mut r = SLaurent { lo, hi, coeffs };
        r.normalize();
        r
    }

    /// "Zero as far as we know": no terms at or below `hi`, nothing known
    /// beyond. Produced by cancellation; distinct from the exact zero.
    pub fn zero_through(hi: i64) -> Self {
        SLaurent { lo: sat_add(hi, 1), hi, coeffs: Vec::new() }
    }

    fn normalize(&mut self) {
        while let Some(first) = self.coeffs.first() {
            if first.is_zero() {
                self.coeffs.remove(0);
                self.lo = sat_add(self.lo, 1);
            } else {
                break;
            }
        }
        while let Some(last) = self.coeffs.last() {
            if last.is_zero() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        if self.coeffs.is_empty() {
            if self.hi >= INF {
                self.lo = INF;
            } else {
                self.lo = sat_add(self.hi, 1);
            }
        } else {
            debug_assert!(self.stored_top() <= self.hi);
        }
    }

    /// True when the value is zero to all orders.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.hi >= INF
    }

    /// True when every known coefficient is zero (window may be finite).
    pub fn is_zero_within_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    fn stored_top(&self) -> i64 {
        if self.coeffs.is_empty() {
            -INF
        } else {
            self.lo + self.coeffs.len() as i64 - 1
        }
    }

    /// Exponent of the leading (lowest) nonzero term, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// Coefficient of `s^e`. Below the valuation bound this is an exact
    /// zero; above the knowledge bound it is an error.
    pub fn coeff(&self, e: i64) -> Result<Rat> {
        if e > self.hi {
            return Err(Error::OutsideWindow { var: "s", wanted: e, lo: self.lo, hi: self.hi });
        }
        if e < self.lo || e > self.stored_top() {
            return Ok(Rat::zero());
        }
        Ok(self.coeffs[(e - self.lo) as usize].clone())
    }

    pub fn add(&self, other: &SLaurent) -> SLaurent {
        let hi = self.hi.min(other.hi);
        let lo = self.lo.min(other.lo);
        if lo >= INF {
            return SLaurent::zero();
        }
        let top = self.stored_top().max(other.stored_top()).min(hi);
        if top < lo {
            let mut r = SLaurent { lo, hi, coeffs: Vec::new() };
            r.normalize();
            return r;
        }
        let mut coeffs = vec![Rat::zero(); (top - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.lo + i as i64;
            if e <= top {
                coeffs[(e - lo) as usize] += c;
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.lo + i as i64;
            if e <= top {
                coeffs[(e - lo) as usize] += c;
            }
        }
        SLaurent::from_coeffs(lo, coeffs, hi)
    }

    pub fn sub(&self, other: &SLaurent) -> SLaurent {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SLaurent {
        SLaurent {
            lo: self.lo,
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Rat) -> SLaurent {
        if c.is_zero() {
            return SLaurent::zero();
        }
        SLaurent {
            lo: self.lo,
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by the exact monomial `s^k`.
    pub fn shift(&self, k: i64) -> SLaurent {
        if self.coeffs.is_empty() && self.hi >= INF {
            return SLaurent::zero();
        }
        SLaurent { lo: sat_add(self.lo, k), hi: sat_add(self.hi, k), coeffs: self.coeffs.clone() }
    }

    pub fn mul(&self, other: &SLaurent) -> SLaurent {
        if self.is_zero() || other.is_zero() {
            return SLaurent::zero();
        }
        let lo = sat_add(self.lo, other.lo);
        let hi = sat_add(self.lo, other.hi).min(sat_add(other.lo, self.hi));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            let mut r = SLaurent { lo, hi, coeffs: Vec::new() };
            r.normalize();
            return r;
        }
        let top = (self.stored_top() + other.stored_top()).min(hi);
        if top < lo {
            let mut r = SLaurent { lo, hi, coeffs: Vec::new() };
            r.normalize();
            return r;
        }
        let mut coeffs = vec![Rat::zero(); (top - lo + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.lo + i as i64;
            let jmax = (top - ea - other.lo).min(other.coeffs.len() as i64 - 1);
            for j in 0..=jmax {
                let b = &other.coeffs[j as usize];
                if b.is_zero() {
                    continue;
                }
                let e = ea + other.lo + j;
                coeffs[(e - lo) as usize] += &(a * b);
            }
        }
        SLaurent::from_coeffs(lo, coeffs, hi)
    }

    /// Multiplicative inverse, computed through `s`-degree `top` (relative
    /// to what the input window supports). Errors when no nonzero leading
    /// coefficient is known.
    pub fn invert(&self, top: i64) -> Result<SLaurent> {
        if self.coeffs.is_empty() {
            return Err(Error::NotInvertible { what: "s-series with no known nonzero term" });
        }
        let v = self.lo;
        if self.coeffs.len() == 1 && self.hi >= INF {
            // exact monomial: inverse is exact too
            return Ok(SLaurent::monomial(self.coeffs[0].recip(), -v));
        }
        let res_hi = sat_add(self.hi, -2 * v).min(top);
        if res_hi >= INF {
            return Err(Error::Precondition(
                "inverting an exact s-polynomial needs a finite truncation".into(),
            ));
        }
        if res_hi < -v {
            return Err(Error::EmptyWindow { var: "s", op: "invert", lo: -v, hi: res_hi });
        }
        let n = (res_hi + v) as usize; // relative orders 0..=n
        let lead_inv = self.coeffs[0].recip();
        let mut out = vec![Rat::zero(); n + 1];
        out[0] = lead_inv.clone();
        for m in 1..=n {
            let mut acc = Rat::zero();
            let kmax = m.min(self.coeffs.len() - 1);
            for k in 1..=kmax {
                if !self.coeffs[k].is_zero() {
                    acc += &(&self.coeffs[k] * &out[m - k]);
                }
            }
            if !acc.is_zero() {
                out[m] = -(acc * &lead_inv);
            }
        }
        Ok(SLaurent::from_coeffs(-v, out, res_hi))
    }

    /// Restrict the knowledge bound to `top` (dropping higher stored terms).
    pub fn truncate(&self, top: i64) -> SLaurent {
        if self.hi <= top {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        if self.stored_top() > top {
            let keep = (top - self.lo + 1).max(0) as usize;
            coeffs.truncate(keep);
        }
        SLaurent::from_coeffs(self.lo, coeffs, top)
    }

    /// Value and window agreement on the overlap of the two windows; used by
    /// tests that recompute a quantity with different truncations.
    pub fn agrees_with(&self, other: &SLaurent) -> bool {
        let hi = self.hi.min(other.hi);
        let lo = self.lo.min(other.lo);
        if hi < lo {
            return true;
        }
        let mut e = lo;
        while e <= hi.min(self.stored_top().max(other.stored_top())) {
            let a = self.coeff(e).unwrap_or_else(|_| Rat::zero());
            let b = other.coeff(e).unwrap_or_else(|_| Rat::zero());
            if a != b {
                return false;
            }
            e += 1;
        }
        true
    }

    /// Iterate over stored nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }
}

impl fmt::Display for SLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            if self.hi >= INF {
                return write!(f, "0");
            }
            return write!(f, "O(s^{})", self.lo);
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})s", c)?,
                _ => write!(f, "({})s^{}", c, e)?,
            }
        }
        if self.hi < INF {
            write!(f, " + O(s^{})", self.hi + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn polynomial_product_is_exact() {
        let a = SLaurent::linear(r(1, 1), 2); // 1 + 2s
        let b = SLaurent::linear(r(3, 1), -1); // 3 - s
        let p = a.mul(&b); // 3 + 5s - 2s^2
        assert_eq!(p.hi(), INF);
        assert_eq!(p.coeff(0).unwrap(), r(3, 1));
        assert_eq!(p.coeff(1).unwrap(), r(5, 1));
        assert_eq!(p.coeff(2).unwrap(), r(-2, 1));
        assert_eq!(p.coeff(100).unwrap(), Rat::zero());
    }

    #[test]
    fn window_shrinks_with_valuation_shift() {
        // a known through s^5, b = s^2 * (exact poly): product known to 7.
        let a = SLaurent::from_coeffs(0, vec![r(1, 1); 6], 5);
        let b = SLaurent::monomial(r(1, 1), 2);
        let p = a.mul(&b);
        assert_eq!((p.lo(), p.hi()), (2, 7));
    }

    #[test]
    fn coeff_outside_window_errors() {
        let a = SLaurent::from_coeffs(-1, vec![r(1, 1), r(2, 1)], 3);
        assert_eq!(a.coeff(-5).unwrap(), Rat::zero());
        assert!(a.coeff(4).is_err());
    }

    #[test]
    fn invert_linear_form() {
        // 1/(2 + s) = 1/2 - s/4 + s^2/8 - ...
        let a = SLaurent::linear(r(2, 1), 1);
        let inv = a.invert(3).unwrap();
        assert_eq!(inv.coeff(0).unwrap(), r(1, 2));
        assert_eq!(inv.coeff(1).unwrap(), r(-1, 4));
        assert_eq!(inv.coeff(2).unwrap(), r(1, 8));
        assert_eq!(inv.coeff(3).unwrap(), r(-1, 16));
        assert!(inv.coeff(4).is_err());
        // round trip on the common window
        let prod = a.mul(&inv);
        assert!(prod.agrees_with(&SLaurent::one()));
    }

    #[test]
    fn invert_pure_monomial() {
        let a = SLaurent::monomial(r(2, 1), 1); // 2s
        let inv = a.invert(10).unwrap();
        assert_eq!(inv.coeff(-1).unwrap(), r(1, 2));
        assert_eq!(inv.valuation(), Some(-1));
    }

    #[test]
    fn cancellation_keeps_window_honest() {
        let a = SLaurent::from_coeffs(0, vec![r(1, 1)], 4);
        let d = a.sub(&a);
        assert!(d.is_zero_within_window());
        assert!(!d.is_zero());
        assert_eq!(d.coeff(3).unwrap(), Rat::zero());
        assert!(d.coeff(5).is_err());
    }
}
