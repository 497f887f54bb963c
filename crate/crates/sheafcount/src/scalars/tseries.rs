//! Polynomials in the refinement variable `t` with `SLaurent` coefficients.
//!
//! A `TSeries` is truncated at a fixed `t`-degree `tmax`; coefficient `k`
//! is a Laurent series in `s`. The engine works throughout with the
//! substitution `t = 1 - y`, so `t`-degree zero is the unrefined theory and
//! each extra order in `t` refines one step further toward the full
//! `y`-dependence.
//!
//! Binary operations require matching `tmax` (this is a fixed modulus, not
//! a window) and let the `s`-windows of the coefficients shrink as they
//! will. `to_y_polynomial` converts a series known to be polynomial in `y`
//! back to that form, verifying the claim along the way.

use super::rat::Rat;
use super::slaurent::{SLaurent, INF};
use super::upoly::UPoly;
use crate::error::Error;
use crate::Result;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct TSeries {
    tmax: usize,
    c: Vec<SLaurent>,
}

impl TSeries {
    pub fn zero(tmax: usize) -> Self {
        TSeries { tmax, c: vec![SLaurent::zero(); tmax + 1] }
    }

    pub fn one(tmax: usize) -> Self {
        let mut r = Self::zero(tmax);
        r.c[0] = SLaurent::one();
        r
    }

    /// A series concentrated in `t`-degree zero.
    pub fn from_t0(s: SLaurent, tmax: usize) -> Self {
        let mut r = Self::zero(tmax);
        r.c[0] = s;
        r
    }

    /// Build from explicit `t`-coefficients; the modulus is their count.
    pub fn from_coeffs(c: Vec<SLaurent>) -> Self {
        assert!(!c.is_empty(), "a t-series needs at least the t^0 coefficient");
        TSeries { tmax: c.len() - 1, c }
    }

    /// The element `1 - t`, i.e. the refinement variable `y`.
    pub fn one_minus_t(tmax: usize) -> Self {
        let mut r = Self::one(tmax);
        if tmax >= 1 {
            r.c[1] = SLaurent::constant(Rat::from_int(-1));
        }
        r
    }

    pub fn tmax(&self) -> usize {
        self.tmax
    }

    pub fn coeff(&self, k: usize) -> &SLaurent {
        &self.c[k]
    }

    pub fn t0(&self) -> &SLaurent {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|s| s.is_zero())
    }

    /// Smallest `tmax` the two operands share; binary operations truncate
    /// to it, since higher coefficients would lean on unknown data.
    pub fn min_tmax(&self, other: &TSeries) -> usize {
        self.tmax.min(other.tmax)
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        let tmax = self.min_tmax(other);
        let c = self.c.iter().zip(&other.c).take(tmax + 1).map(|(a, b)| a.add(b)).collect();
        TSeries { tmax, c }
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        let tmax = self.min_tmax(other);
        let c = self.c.iter().zip(&other.c).take(tmax + 1).map(|(a, b)| a.sub(b)).collect();
        TSeries { tmax, c }
    }

    pub fn neg(&self) -> TSeries {
        TSeries { tmax: self.tmax, c: self.c.iter().map(|a| a.neg()).collect() }
    }

    pub fn scalar_mul(&self, r: &Rat) -> TSeries {
        TSeries { tmax: self.tmax, c: self.c.iter().map(|a| a.scalar_mul(r)).collect() }
    }

    pub fn mul_slaurent(&self, s: &SLaurent) -> TSeries {
        TSeries { tmax: self.tmax, c: self.c.iter().map(|a| a.mul(s)).collect() }
    }

    /// Multiply every coefficient by `s^k`.
    pub fn shift_s(&self, k: i64) -> TSeries {
        TSeries { tmax: self.tmax, c: self.c.iter().map(|a| a.shift(k)).collect() }
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        let tmax = self.min_tmax(other);
        let mut c = vec![SLaurent::zero(); tmax + 1];
        for (i, a) in self.c.iter().enumerate().take(tmax + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if i + j > tmax {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        TSeries { tmax, c }
    }

    /// Multiplicative inverse through the `t`-modulus, with `s`-windows
    /// limited by what inverting the `t^0` part supports.
    pub fn invert(&self) -> Result<TSeries> {
        let inv0 = self.c[0].invert(INF.saturating_sub(1))?;
        let mut out = vec![SLaurent::zero(); self.tmax + 1];
        out[0] = inv0.clone();
        for k in 1..=self.tmax {
            let mut acc = SLaurent::zero();
            for j in 1..=k {
                if !self.c[j].is_zero_within_window() {
                    acc = acc.add(&self.c[j].mul(&out[k - j]));
                }
            }
            if !acc.is_zero_within_window() {
                out[k] = acc.mul(&inv0).neg();
            } else if !acc.is_zero() {
                out[k] = acc; // propagate honest ignorance
            }
        }
        Ok(TSeries { tmax: self.tmax, c: out })
    }

    /// Exact division by `t^k`; errors unless the low coefficients vanish
    /// identically (to all `s`-orders). The modulus shrinks by `k`, since
    /// knowledge of the top `t`-coefficients is genuinely lost.
    pub fn div_t_pow(&self, k: usize) -> Result<TSeries> {
        for j in 0..k.min(self.tmax + 1) {
            if !self.c[j].is_zero() {
                return Err(Error::Precondition(format!(
                    "division by t^{} needs the t^{} coefficient to vanish",
                    k, j
                )));
            }
        }
        if k > self.tmax {
            return Err(Error::Precondition(format!(
                "division by t^{} exceeds the t-modulus {}",
                k, self.tmax
            )));
        }
        Ok(TSeries { tmax: self.tmax - k, c: self.c[k..].to_vec() })
    }

    pub fn mul_t_pow(&self, k: usize) -> TSeries {
        let mut c = vec![SLaurent::zero(); self.tmax + 1];
        for (j, a) in self.c.iter().enumerate() {
            if j + k <= self.tmax {
                c[j + k] = a.clone();
            }
        }
        TSeries { tmax: self.tmax, c }
    }

    /// Integer power via binary exponentiation; negative powers invert.
    pub fn pow_int(&self, n: i64) -> Result<TSeries> {
        if n < 0 {
            return self.invert()?.pow_int(-n);
        }
        let mut acc = TSeries::one(self.tmax);
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// `(1 + g)^a` for rational `a`, where `g` must have no `t^0` part.
    /// The binomial series terminates at the `t`-modulus, so this is exact.
    pub fn binom_pow(&self, a: &Rat) -> Result<TSeries> {
        let g0 = &self.c[0];
        let one = SLaurent::one();
        if !g0.sub(&one).is_zero_within_window() {
            return Err(Error::Precondition(
                "rational powers need a series with t^0 part equal to 1".into(),
            ));
        }
        let g = {
            let mut g = self.clone();
            g.c[0] = g0.sub(&one);
            g
        };
        let mut acc = TSeries::one(self.tmax);
        let mut gk = TSeries::one(self.tmax);
        for k in 1..=self.tmax as u64 {
            gk = gk.mul(&g);
            if gk.is_zero() {
                break;
            }
            let b = Rat::binom(a, k);
            if !b.is_zero() {
                acc = acc.add(&gk.scalar_mul(&b));
            }
        }
        Ok(acc)
    }

    /// `y^{k/2}` as a `t`-series, `y = 1 - t`; `k` may be odd or negative.
    pub fn u_power(k: i64, tmax: usize) -> TSeries {
        TSeries::one_minus_t(tmax)
            .binom_pow(&Rat::new(k, 2))
            .expect("1 - t always has unit t^0 part")
    }

    /// Embed an exact `u`-polynomial via `y = 1 - t`, `u^2 = y`.
    pub fn from_upoly(p: &UPoly, tmax: usize) -> TSeries {
        let mut acc = TSeries::zero(tmax);
        for (e, c) in p.terms() {
            acc = acc.add(&TSeries::u_power(*e, tmax).scalar_mul(c));
        }
        acc
    }

    pub fn truncate_s(&self, top: i64) -> TSeries {
        TSeries { tmax: self.tmax, c: self.c.iter().map(|a| a.truncate(top)).collect() }
    }

    /// Restrict to a smaller `t`-modulus.
    pub fn truncate_t(&self, tmax: usize) -> TSeries {
        assert!(tmax <= self.tmax, "cannot grow the t-modulus by truncation");
        TSeries { tmax, c: self.c[..=tmax].to_vec() }
    }

    /// Agreement of all `t`-coefficients on their common `s`-windows.
    pub fn agrees_with(&self, other: &TSeries) -> bool {
        let tm = self.min_tmax(other);
        (0..=tm).all(|k| self.c[k].agrees_with(&other.c[k]))
    }

    /// Interpret the series as a polynomial in `y` of degree at most `deg`
    /// with rational coefficients, returning the coefficients of
    /// `y^0 .. y^deg`. Errors when coefficients retain `s`-dependence or
    /// the `t`-expansion disagrees with every such polynomial.
    pub fn to_y_polynomial(&self, deg: usize) -> Result<Vec<Rat>> {
        if deg > self.tmax {
            return Err(Error::Precondition(format!(
                "need tmax >= {} to resolve a y-polynomial of that degree",
                deg
            )));
        }
        // t^k coefficient of sum_j a_j (1-t)^j is sum_j a_j C(j,k)(-1)^k.
        // Solve triangularly from k = deg down to 0 using rows k <= deg.
        let mut consts = Vec::with_capacity(self.tmax + 1);
        for k in 0..=self.tmax {
            let s = &self.c[k];
            let c0 = s.coeff(0)?;
            // everything else in the window must vanish
            for (e, c) in s.terms() {
                if e != 0 && !c.is_zero() {
                    return Err(Error::Precondition(format!(
                        "t^{} coefficient has s-dependence ({})s^{}",
                        k, c, e
                    )));
                }
            }
            consts.push(c0);
        }
        let mut a = vec![Rat::zero(); deg + 1];
        for k in (0..=deg).rev() {
            // consts[k] = (-1)^k * sum_{j >= k} a_j C(j, k)
            let sign = if k % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
            let mut rhs = &consts[k] * &sign;
            for (j, aj) in a.iter().enumerate().skip(k + 1) {
                if !aj.is_zero() {
                    rhs -= &(aj * &Rat::binom(&Rat::from_int(j as i64), k as u64));
                }
            }
            a[k] = rhs;
        }
        // remaining rows must be consistent
        for k in deg + 1..=self.tmax {
            let mut acc = Rat::zero();
            for (j, aj) in a.iter().enumerate() {
                if !aj.is_zero() {
                    acc += &(aj * &Rat::binom(&Rat::from_int(j as i64), k as u64));
                }
            }
            let sign = if k % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
            if &acc * &sign != consts[k] {
                return Err(Error::Precondition(format!(
                    "series is not a y-polynomial of degree {} (t^{} residual)",
                    deg, k
                )));
            }
        }
        Ok(a)
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, s) in self.c.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "[{}]", s)?,
                1 => write!(f, "[{}] t", s)?,
                _ => write!(f, "[{}] t^{}", s, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (mod t^{})", self.tmax + 1)
    }
}

impl fmt::Debug for TSeries {
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
    fn invert_roundtrip() {
        // (2 + s) + (1 - s) t, inverted mod t^4 with finite s-window
        let a = TSeries::from_coeffs(vec![
            SLaurent::linear(r(2, 1), 1).truncate(6),
            SLaurent::linear(r(1, 1), -1),
            SLaurent::zero(),
            SLaurent::zero(),
        ]);
        let inv = a.invert().unwrap();
        let prod = a.mul(&inv);
        assert!(prod.agrees_with(&TSeries::one(3)));
    }

    #[test]
    fn u_power_squares_to_y() {
        let half = TSeries::u_power(1, 5);
        let y = TSeries::one_minus_t(5);
        assert!(half.mul(&half).agrees_with(&y));
        let inv_half = TSeries::u_power(-1, 5);
        assert!(half.mul(&inv_half).agrees_with(&TSeries::one(5)));
    }

    #[test]
    fn y_polynomial_roundtrip() {
        // 3 + 2y + 5y^2 as a t-series and back
        let ys = vec![r(3, 1), r(2, 1), r(5, 1)];
        let p = UPoly::from_y_coeffs(&ys);
        let ts = TSeries::from_upoly(&p, 6);
        let back = ts.to_y_polynomial(2).unwrap();
        assert_eq!(back, ys);
        // claiming too low a degree must fail
        assert!(ts.to_y_polynomial(1).is_err());
    }

    #[test]
    fn div_t_pow_requires_vanishing() {
        let y = TSeries::one_minus_t(4);
        assert!(y.div_t_pow(1).is_err());
        let t2 = TSeries::one(4).mul_t_pow(2);
        let q = t2.div_t_pow(2).unwrap();
        assert!(q.t0().agrees_with(&SLaurent::one()));
    }

    #[test]
    fn binom_pow_integer_matches_pow_int() {
        let a = TSeries::from_coeffs(vec![
            SLaurent::one(),
            SLaurent::linear(r(2, 1), 1),
            SLaurent::constant(r(1, 3)),
            SLaurent::zero(),
            SLaurent::zero(),
        ]);
        let cube = a.binom_pow(&r(3, 1)).unwrap();
        let cube2 = a.pow_int(3).unwrap();
        assert!(cube.agrees_with(&cube2));
    }
}
