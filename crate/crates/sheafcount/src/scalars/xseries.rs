//! Truncated power series in the modular variable `x`, with exact
//! [`UPoly`] coefficients.
//!
//! Everything on the modular side is built here: eta- and theta-type
//! products, their quotients, and the final refined generating functions.
//! The truncation order `xmax` is a plain knowledge bound; coefficients of
//! `x^0 .. x^xmax` are exact. No valuation tracking is needed at this level
//! because the constructors only ever divide by series with unit (monomial)
//! leading term.

use super::rat::Rat;
use super::upoly::UPoly;
use crate::error::Error;
use crate::Result;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct XSeries {
    xmax: usize,
    c: Vec<UPoly>, // length xmax + 1
}

impl XSeries {
    pub fn zero(xmax: usize) -> Self {
        XSeries { xmax, c: vec![UPoly::zero(); xmax + 1] }
    }

    pub fn one(xmax: usize) -> Self {
        Self::monomial(UPoly::one(), 0, xmax)
    }

    /// `a * x^e`, truncated at `xmax`.
    pub fn monomial(a: UPoly, e: usize, xmax: usize) -> Self {
        let mut r = Self::zero(xmax);
        if e <= xmax {
            r.c[e] = a;
        }
        r
    }

    pub fn from_coeffs(c: Vec<UPoly>) -> Self {
        assert!(!c.is_empty());
        XSeries { xmax: c.len() - 1, c }
    }

    pub fn xmax(&self) -> usize {
        self.xmax
    }

    pub fn coeff(&self, e: usize) -> Result<&UPoly> {
        self.c.get(e).ok_or(Error::OutsideWindow {
            var: "x",
            wanted: e as i64,
            lo: 0,
            hi: self.xmax as i64,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|a| a.is_zero())
    }

    fn min_xmax(&self, other: &XSeries) -> usize {
        self.xmax.min(other.xmax)
    }

    pub fn add(&self, other: &XSeries) -> XSeries {
        let xmax = self.min_xmax(other);
        let c = (0..=xmax).map(|k| self.c[k].add(&other.c[k])).collect();
        XSeries { xmax, c }
    }

    pub fn sub(&self, other: &XSeries) -> XSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> XSeries {
        XSeries { xmax: self.xmax, c: self.c.iter().map(|a| a.neg()).collect() }
    }

    pub fn scalar_mul(&self, a: &Rat) -> XSeries {
        XSeries { xmax: self.xmax, c: self.c.iter().map(|b| b.scalar_mul(a)).collect() }
    }

    pub fn mul_upoly(&self, a: &UPoly) -> XSeries {
        XSeries { xmax: self.xmax, c: self.c.iter().map(|b| b.mul(a)).collect() }
    }

    pub fn mul(&self, other: &XSeries) -> XSeries {
        let xmax = self.min_xmax(other);
        let mut c = vec![UPoly::zero(); xmax + 1];
        for i in 0..=xmax {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(xmax - i) {
                if other.c[j].is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&self.c[i].mul(&other.c[j]));
            }
        }
        XSeries { xmax, c }
    }

    /// `1 / self`; the `x^0` coefficient must be an invertible monomial.
    pub fn invert(&self) -> Result<XSeries> {
        let inv0 = self.c[0].invert()?;
        let mut out = vec![UPoly::zero(); self.xmax + 1];
        out[0] = inv0.clone();
        for k in 1..=self.xmax {
            let mut acc = UPoly::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    acc = acc.add(&self.c[j].mul(&out[k - j]));
                }
            }
            out[k] = acc.neg().mul(&inv0);
        }
        Ok(XSeries { xmax: self.xmax, c: out })
    }

    pub fn pow_int(&self, e: i64) -> Result<XSeries> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = XSeries::one(self.xmax);
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// The truncated geometric series `1 / (1 - c * x^e)` for `e >= 1`.
    pub fn geometric(c: &UPoly, e: usize, xmax: usize) -> XSeries {
        assert!(e >= 1);
        let mut r = XSeries::zero(xmax);
        let mut pk = UPoly::one();
        let mut k = 0usize;
        while k * e <= xmax {
            r.c[k * e] = r.c[k * e].add(&pk);
            pk = pk.mul(c);
            k += 1;
        }
        r
    }

    /// Keep only coefficients of `x^n` with `n = r (mod m)`.
    pub fn filter_residue(&self, r: i64, m: i64) -> XSeries {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if (n as i64).rem_euclid(m) == r.rem_euclid(m) {
                    a.clone()
                } else {
                    UPoly::zero()
                }
            })
            .collect();
        XSeries { xmax: self.xmax, c }
    }

    /// Substitute `x -> x * u^k`: the coefficient of `x^n` is shifted by
    /// `n * k` powers of `u`.
    pub fn twist_u(&self, k: i64) -> XSeries {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(n, a)| a.shift(n as i64 * k))
            .collect();
        XSeries { xmax: self.xmax, c }
    }

    /// Substitute `x -> -x`.
    pub fn negate_x(&self) -> XSeries {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(n, a)| if n % 2 == 0 { a.clone() } else { a.neg() })
            .collect();
        XSeries { xmax: self.xmax, c }
    }

    /// Substitute `u -> 1/u` in every coefficient.
    pub fn conj_u(&self) -> XSeries {
        XSeries { xmax: self.xmax, c: self.c.iter().map(|a| a.conj()).collect() }
    }

    /// Set `u = 1` everywhere, producing plain rational coefficients.
    pub fn eval_u_one(&self) -> Vec<Rat> {
        self.c.iter().map(|a| a.eval_one()).collect()
    }

    pub fn truncate(&self, xmax: usize) -> XSeries {
        let xmax = xmax.min(self.xmax);
        XSeries { xmax, c: self.c[..=xmax].to_vec() }
    }
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                writeln!(f)?;
                write!(f, " + ")?;
            }
            write!(f, "x^{} * ({})", e, a)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.xmax + 1)
    }
}

impl fmt::Debug for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
