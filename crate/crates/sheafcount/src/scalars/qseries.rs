//! Truncated generating series in the counting variable `q`, with
//! [`TSeries`] coefficients.
//!
//! The window discipline mirrors the `s`-level: `qlo` is a guaranteed
//! valuation bound, `qhi` a knowledge bound (`INF` for exact polynomials),
//! and missing keys inside the window are exact zeros. Coefficients that are
//! only zero as far as their own `s`-windows reach are kept in the map, so
//! the per-coefficient knowledge bounds stay honest.
//!
//! `log` and `exp` are total on the subsets where they are used: `log`
//! requires an exact unit `q^0` coefficient, `exp` a series with positive
//! `q`-valuation. Both terminate because high powers of the argument fall
//! outside the `q`-window.

use super::rat::Rat;
use super::slaurent::{sat_add, INF};
use super::tseries::TSeries;
use crate::error::Error;
use crate::Result;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    qlo: i64,
    qhi: i64,
    tmax: usize,
    c: BTreeMap<i64, TSeries>,
}

impl QSeries {
    pub fn zero(tmax: usize) -> Self {
        QSeries { qlo: INF, qhi: INF, tmax, c: BTreeMap::new() }
    }

    pub fn one(tmax: usize) -> Self {
        Self::monomial(TSeries::one(tmax), 0)
    }

    /// `a * q^e`, exact in `q`.
    pub fn monomial(a: TSeries, e: i64) -> Self {
        let tmax = a.tmax();
        if a.is_zero() {
            return Self::zero(tmax);
        }
        let mut c = BTreeMap::new();
        c.insert(e, a);
        QSeries { qlo: e, qhi: INF, tmax, c }
    }

    /// Build from coefficients; keys outside `[qlo, qhi]` are rejected by
    /// normalization, exact zeros are dropped.
    pub fn from_coeffs(qlo: i64, qhi: i64, tmax: usize, c: BTreeMap<i64, TSeries>) -> Self {
        let mut r = QSeries { qlo, qhi, tmax, c };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        let qhi = self.qhi;
        self.c.retain(|e, a| *e <= qhi && !a.is_zero());
        debug_assert!(self.c.values().all(|a| a.tmax() == self.tmax));
        if let Some(first) = self.c.keys().next() {
            if *first > self.qlo {
                self.qlo = *first;
            }
            debug_assert!(*first >= self.qlo);
        } else if self.qhi >= INF {
            self.qlo = INF;
        } else {
            self.qlo = sat_add(self.qhi, 1);
        }
    }

    pub fn qlo(&self) -> i64 {
        self.qlo
    }

    pub fn qhi(&self) -> i64 {
        self.qhi
    }

    pub fn tmax(&self) -> usize {
        self.tmax
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty() && self.qhi >= INF
    }

    /// First stored key, i.e. the valuation when any coefficient is known
    /// to be nonzero.
    pub fn valuation(&self) -> Option<i64> {
        self.c.keys().next().copied()
    }

    pub fn coeff(&self, e: i64) -> Result<TSeries> {
        if e > self.qhi {
            return Err(Error::OutsideWindow { var: "q", wanted: e, lo: self.qlo, hi: self.qhi });
        }
        Ok(self.c.get(&e).cloned().unwrap_or_else(|| TSeries::zero(self.tmax)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &TSeries)> {
        self.c.iter()
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let qhi = self.qhi.min(other.qhi);
        let qlo = self.qlo.min(other.qlo);
        let tmax = self.tmax.min(other.tmax);
        let mut c: BTreeMap<i64, TSeries> = BTreeMap::new();
        for (e, a) in self.c.iter().chain(other.c.iter()) {
            if *e > qhi {
                continue;
            }
            let a = a.truncate_t(tmax);
            match c.get_mut(e) {
                Some(b) => *b = b.add(&a),
                None => {
                    c.insert(*e, a);
                }
            }
        }
        QSeries::from_coeffs(qlo, qhi, tmax, c)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            qlo: self.qlo,
            qhi: self.qhi,
            tmax: self.tmax,
            c: self.c.iter().map(|(e, a)| (*e, a.neg())).collect(),
        }
    }

    pub fn scalar_mul(&self, a: &Rat) -> QSeries {
        if a.is_zero() {
            return QSeries::zero(self.tmax);
        }
        QSeries {
            qlo: self.qlo,
            qhi: self.qhi,
            tmax: self.tmax,
            c: self.c.iter().map(|(e, b)| (*e, b.scalar_mul(a))).collect(),
        }
    }

    /// Multiply every coefficient by a `q`-independent series.
    pub fn mul_tseries(&self, a: &TSeries) -> QSeries {
        let tmax = self.tmax.min(a.tmax());
        let c = self
            .c
            .iter()
            .map(|(e, b)| (*e, b.truncate_t(tmax).mul(a)))
            .collect();
        QSeries::from_coeffs(self.qlo, self.qhi, tmax, c)
    }

    /// Multiply by `q^k`.
    pub fn shift_q(&self, k: i64) -> QSeries {
        if self.is_zero() {
            return self.clone();
        }
        QSeries {
            qlo: sat_add(self.qlo, k),
            qhi: sat_add(self.qhi, k),
            tmax: self.tmax,
            c: self.c.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        if self.is_zero() || other.is_zero() {
            return QSeries::zero(self.tmax.min(other.tmax));
        }
        let qlo = sat_add(self.qlo, other.qlo);
        let qhi = sat_add(self.qlo, other.qhi).min(sat_add(other.qlo, self.qhi));
        let tmax = self.tmax.min(other.tmax);
        let mut c: BTreeMap<i64, TSeries> = BTreeMap::new();
        for (ea, a) in &self.c {
            for (eb, b) in &other.c {
                let e = ea + eb;
                if e > qhi {
                    break;
                }
                let p = a.truncate_t(tmax).mul(&b.truncate_t(tmax));
                match c.get_mut(&e) {
                    Some(x) => *x = x.add(&p),
                    None => {
                        c.insert(e, p);
                    }
                }
            }
        }
        QSeries::from_coeffs(qlo, qhi, tmax, c)
    }

    /// Multiplicative inverse through `q`-order `top`.
    pub fn invert_to(&self, top: i64) -> Result<QSeries> {
        let v = match self.valuation() {
            Some(v) => v,
            None => return Err(Error::NotInvertible { what: "q-series with no known nonzero term" }),
        };
        let res_hi = sat_add(self.qhi, -2 * v).min(top);
        if res_hi < -v {
            return Err(Error::EmptyWindow { var: "q", op: "invert", lo: -v, hi: res_hi });
        }
        let lead_inv = self.c[&v].invert()?;
        let mut out: BTreeMap<i64, TSeries> = BTreeMap::new();
        out.insert(-v, lead_inv.clone());
        for e in (-v + 1)..=res_hi {
            // coefficient of q^{e+v} in self*out must vanish
            let mut acc = TSeries::zero(self.tmax);
            for (ea, a) in &self.c {
                if *ea == v {
                    continue;
                }
                let eb = e + v - ea;
                if eb < -v || eb >= e {
                    continue;
                }
                if let Some(b) = out.get(&eb) {
                    acc = acc.add(&a.mul(b));
                }
            }
            if !acc.is_zero() {
                out.insert(e, acc.neg().mul(&lead_inv));
            }
        }
        Ok(QSeries::from_coeffs(-v, res_hi, self.tmax, out))
    }

    /// Multiplicative inverse bounded by the input's own window; the input
    /// must therefore not be an exact polynomial.
    pub fn invert(&self) -> Result<QSeries> {
        if self.qhi >= INF {
            return Err(Error::Precondition(
                "inverting an exact q-polynomial needs an explicit truncation; use invert_to".into(),
            ));
        }
        self.invert_to(INF)
    }

    pub fn pow_int(&self, e: i64) -> Result<QSeries> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = QSeries::one(self.tmax);
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

    /// Natural logarithm. Requires the `q^0` coefficient to be exactly 1.
    pub fn log(&self) -> Result<QSeries> {
        let c0 = self.coeff(0)?;
        if !c0.agrees_with(&TSeries::one(self.tmax)) || c0.is_zero() {
            return Err(Error::Precondition("log needs q^0 coefficient equal to 1".into()));
        }
        let n = self.sub(&QSeries::one(self.tmax));
        let v = match n.valuation() {
            Some(v) => v,
            None => return Ok(n), // 1 + (zero within window): log is that zero
        };
        if v < 1 {
            return Err(Error::Precondition("log argument must be 1 + O(q)".into()));
        }
        let mut acc = QSeries::zero(self.tmax);
        let mut pk = n.clone();
        let mut k: i64 = 1;
        loop {
            let coef = Rat::new(if k % 2 == 1 { 1 } else { -1 }, k);
            acc = acc.add(&pk.scalar_mul(&coef));
            k += 1;
            if k * v > n.qhi() {
                break;
            }
            pk = pk.mul(&n);
        }
        Ok(acc)
    }

    /// Exponential of a series with positive `q`-valuation.
    pub fn exp(&self) -> Result<QSeries> {
        if self.qlo < 1 {
            return Err(Error::Precondition("exp argument must be O(q)".into()));
        }
        let mut acc = QSeries::one(self.tmax).truncate_q(self.qhi);
        if self.valuation().is_none() {
            return Ok(acc);
        }
        let v = self.qlo;
        let mut pk = self.clone();
        let mut fact = Rat::one();
        let mut k: i64 = 1;
        loop {
            acc = acc.add(&pk.scalar_mul(&fact.recip()));
            k += 1;
            if k * v > self.qhi {
                break;
            }
            fact = &fact * &Rat::from_int(k);
            pk = pk.mul(self);
        }
        Ok(acc)
    }

    /// Substitute `q -> q/s`: the coefficient of `q^n` picks up `s^{-n}`.
    pub fn subst_q_over_s(&self) -> QSeries {
        QSeries {
            qlo: self.qlo,
            qhi: self.qhi,
            tmax: self.tmax,
            c: self.c.iter().map(|(e, a)| (*e, a.shift_s(-e))).collect(),
        }
    }

    pub fn truncate_q(&self, top: i64) -> QSeries {
        if self.qhi <= top {
            return self.clone();
        }
        let c = self.c.iter().filter(|(e, _)| **e <= top).map(|(e, a)| (*e, a.clone())).collect();
        QSeries::from_coeffs(self.qlo, top, self.tmax, c)
    }

    pub fn truncate_s(&self, top: i64) -> QSeries {
        QSeries {
            qlo: self.qlo,
            qhi: self.qhi,
            tmax: self.tmax,
            c: self.c.iter().map(|(e, a)| (*e, a.truncate_s(top))).collect(),
        }
    }

    pub fn truncate_t(&self, tmax: usize) -> QSeries {
        let tmax = tmax.min(self.tmax);
        let c = self.c.iter().map(|(e, a)| (*e, a.truncate_t(tmax))).collect();
        QSeries { qlo: self.qlo, qhi: self.qhi, tmax, c }
    }

    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let qhi = self.qhi.min(other.qhi);
        let tmax = self.tmax.min(other.tmax);
        let keys: std::collections::BTreeSet<i64> =
            self.c.keys().chain(other.c.keys()).copied().filter(|e| *e <= qhi).collect();
        keys.iter().all(|e| {
            let a = self.coeff(*e).unwrap_or_else(|_| TSeries::zero(tmax));
            let b = other.coeff(*e).unwrap_or_else(|_| TSeries::zero(tmax));
            a.truncate_t(tmax).agrees_with(&b.truncate_t(tmax))
        })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (e, a) in &self.c {
                if first {
                    first = false;
                } else {
                    writeln!(f)?;
                    write!(f, " + ")?;
                }
                write!(f, "q^{} * ({})", e, a)?;
            }
        }
        if self.qhi < INF {
            write!(f, " + O(q^{})", self.qhi + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::slaurent::SLaurent;

    fn qone(tmax: usize, top: i64) -> QSeries {
        QSeries::one(tmax).truncate_q(top)
    }

    #[test]
    fn exp_log_roundtrip() {
        // f = 1 + q(1+s) + q^2 * 3s^2, known through q^5
        let mut c = BTreeMap::new();
        c.insert(0, TSeries::one(2));
        c.insert(1, TSeries::from_t0(SLaurent::linear(Rat::one(), 1), 2));
        c.insert(2, TSeries::from_t0(SLaurent::monomial(Rat::from_int(3), 2), 2));
        let f = QSeries::from_coeffs(0, 5, 2, c);
        let lf = f.log().unwrap();
        assert_eq!(lf.qhi(), 5);
        let back = lf.exp().unwrap();
        assert!(back.agrees_with(&f));
    }

    #[test]
    fn invert_roundtrip() {
        let mut c = BTreeMap::new();
        c.insert(0, TSeries::one(1));
        c.insert(1, TSeries::from_t0(SLaurent::monomial(Rat::from_int(-2), -1), 1));
        let f = QSeries::from_coeffs(0, 4, 1, c);
        let g = f.invert().unwrap();
        assert!(f.mul(&g).agrees_with(&qone(1, 4)));
    }

    #[test]
    fn window_tracks_valuation_in_products() {
        let a = QSeries::monomial(TSeries::one(0), 2); // exact q^2
        let mut c = BTreeMap::new();
        c.insert(0, TSeries::one(0));
        let b = QSeries::from_coeffs(0, 3, 0, c); // 1 + O(q^4)
        let p = a.mul(&b);
        assert_eq!((p.qlo(), p.qhi()), (2, 5));
        assert!(p.coeff(6).is_err());
        assert_eq!(p.coeff(1).unwrap(), TSeries::zero(0));
    }

    #[test]
    fn subst_q_over_s_shifts_windows() {
        let f = QSeries::monomial(TSeries::one(0), 3).subst_q_over_s();
        let c3 = f.coeff(3).unwrap();
        assert_eq!(c3.t0().valuation(), Some(-3));
    }

    #[test]
    fn log_rejects_bad_unit() {
        let f = QSeries::monomial(TSeries::one(0), 0).scalar_mul(&Rat::from_int(2)).truncate_q(3);
        assert!(f.log().is_err());
    }
}
