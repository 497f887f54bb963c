//! Exact Laurent polynomials in `u`, where `u^2 = y`.
//!
//! The refined invariants are Laurent polynomials in `y` after
//! normalization, but intermediate generating functions carry half-integer
//! `y`-powers, so the ground variable is the square root `u`. A `UPoly` is
//! sparse and exact: no windows, every coefficient is known.

use super::rat::Rat;
use crate::error::Error;
use crate::Result;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct UPoly {
    c: BTreeMap<i64, Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0)
    }

    pub fn constant(a: Rat) -> Self {
        Self::monomial(a, 0)
    }

    /// `a * u^e`.
    pub fn monomial(a: Rat, e: i64) -> Self {
        let mut c = BTreeMap::new();
        if !a.is_zero() {
            c.insert(e, a);
        }
        UPoly { c }
    }

    /// Polynomial in `y = u^2` from coefficients of `y^0, y^1, ...`.
    pub fn from_y_coeffs(ys: &[Rat]) -> Self {
        let mut c = BTreeMap::new();
        for (k, a) in ys.iter().enumerate() {
            if !a.is_zero() {
                c.insert(2 * k as i64, a.clone());
            }
        }
        UPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.c.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.c.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.c.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.c.keys().next_back().copied()
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let mut c = self.c.clone();
        for (e, a) in &other.c {
            let entry = c.entry(*e).or_insert_with(Rat::zero);
            *entry += a;
            if entry.is_zero() {
                c.remove(e);
            }
        }
        UPoly { c }
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|(e, a)| (*e, -a)).collect() }
    }

    pub fn scalar_mul(&self, a: &Rat) -> UPoly {
        if a.is_zero() {
            return UPoly::zero();
        }
        UPoly { c: self.c.iter().map(|(e, b)| (*e, a * b)).collect() }
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        let mut c: BTreeMap<i64, Rat> = BTreeMap::new();
        for (ea, a) in &self.c {
            for (eb, b) in &other.c {
                let entry = c.entry(ea + eb).or_insert_with(Rat::zero);
                *entry += &(a * b);
            }
        }
        c.retain(|_, a| !a.is_zero());
        UPoly { c }
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> UPoly {
        UPoly { c: self.c.iter().map(|(e, a)| (e + k, a.clone())).collect() }
    }

    /// Invertible exactly when the polynomial is a single monomial.
    pub fn invert(&self) -> Result<UPoly> {
        if self.c.len() != 1 {
            return Err(Error::NotInvertible { what: "u-polynomial that is not a monomial" });
        }
        let (e, a) = self.c.iter().next().unwrap();
        Ok(UPoly::monomial(a.recip(), -e))
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `u -> 1/u`.
    pub fn conj(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|(e, a)| (-e, a.clone())).collect() }
    }

    /// Value at `u = 1` (equivalently `y = 1`).
    pub fn eval_one(&self) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.values() {
            acc += a;
        }
        acc
    }

    /// Value at `u = -1`.
    pub fn eval_neg_one(&self) -> Rat {
        let mut acc = Rat::zero();
        for (e, a) in &self.c {
            if e.rem_euclid(2) == 0 {
                acc += a;
            } else {
                acc -= a;
            }
        }
        acc
    }

    /// True when only even powers of `u` occur, i.e. the value is a genuine
    /// Laurent polynomial in `y`.
    pub fn is_y_polynomial(&self) -> bool {
        self.c.keys().all(|e| e.rem_euclid(2) == 0)
    }

    /// True when invariant under `u -> 1/u`.
    pub fn is_palindromic(&self) -> bool {
        self == &self.conj()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let as_y = self.is_y_polynomial();
        let mut first = true;
        for (e, a) in &self.c {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{}", a)?;
            } else if as_y {
                let k = e / 2;
                if k == 1 {
                    write!(f, "({})y", a)?;
                } else {
                    write!(f, "({})y^{}", a, k)?;
                }
            } else {
                write!(f, "({})y^({}/2)", a, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn mul_and_conj() {
        // (u + 1/u)^2 = y + 2 + 1/y
        let a = UPoly::monomial(r(1), 1).add(&UPoly::monomial(r(1), -1));
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(2), r(1));
        assert_eq!(sq.coeff(0), r(2));
        assert_eq!(sq.coeff(-2), r(1));
        assert!(sq.is_palindromic());
        assert!(sq.is_y_polynomial());
        assert_eq!(sq.eval_one(), r(4));
        assert_eq!(sq.eval_neg_one(), r(4));
    }

    #[test]
    fn invert_monomial_only() {
        let m = UPoly::monomial(Rat::new(2, 3), -4);
        let inv = m.invert().unwrap();
        assert_eq!(m.mul(&inv), UPoly::one());
        let p = UPoly::one().add(&UPoly::monomial(r(1), 2));
        assert!(p.invert().is_err());
    }

    #[test]
    fn y_coeff_roundtrip() {
        let p = UPoly::from_y_coeffs(&[r(1), r(0), r(-3)]);
        assert_eq!(p.coeff(0), r(1));
        assert_eq!(p.coeff(4), r(-3));
        assert!(p.is_y_polynomial());
        assert_eq!(format!("{}", p), "1 + (-3)y^2");
    }
}
