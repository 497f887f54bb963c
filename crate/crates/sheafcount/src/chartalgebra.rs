//! Partitions and equivariant character sums on a toric chart.
//!
//! A fixed point of the torus action on the relevant moduli spaces is
//! described, chart by chart, by monomial ideals, i.e. partitions. This
//! module provides the two ingredients the localization engine consumes:
//!
//! * [`Partition`]: integer partitions with conjugation and enumeration in
//!   a fixed deterministic order.
//! * [`KElement`]: finite integer combinations of torus characters
//!   `T1^m T2^n U^k`, where `T1, T2` generate the surface torus and `U` is
//!   the extra circle scaling the cotangent direction. All representation-
//!   theoretic bookkeeping (duals, twists, tangent spaces) happens exactly
//!   in this Laurent ring, before any weights are evaluated.
//!
//! Tangent characters are computed in two independent ways: a closed
//! arm/leg sum over boxes, and the standard generating-function identity in
//! the chart coordinates. The two are compared in tests for all small
//! partitions; the engine uses the arm/leg form, which has no intermediate
//! cancellation.

use crate::scalars::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// An integer partition, stored as weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Self {
        parts.retain(|p| *p != 0);
        assert!(parts.iter().all(|p| *p > 0), "parts must be positive");
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing");
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|p| **p > j).count() as i64)
            .collect();
        Partition { parts }
    }

    /// Boxes `(i, j)` with `i` the row (0-based) and `j < parts[i]`.
    pub fn boxes(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, p)| (0..*p).map(move |j| (i as i64, j)))
    }

    /// All partitions of `n`, in a fixed order: first parts decreasing.
    pub fn all_of(n: i64) -> Vec<Partition> {
        fn rec(remaining: i64, max_part: i64, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            let top = max_part.min(remaining);
            for p in (1..=top).rev() {
                prefix.push(p);
                rec(remaining - p, p, prefix, out);
                prefix.pop();
            }
        }
        assert!(n >= 0);
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        if n == 0 {
            // rec pushed the empty partition already
            debug_assert_eq!(out.len(), 1);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Exponents `(m, n, k)` of a character `T1^m T2^n U^k`.
pub type Char = (i64, i64, i64);

/// A finite integer combination of torus characters: an element of the
/// representation ring. Multiplicities may be negative (virtual sums).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KElement {
    c: BTreeMap<Char, i64>,
}

impl KElement {
    pub fn zero() -> Self {
        KElement { c: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::character(0, 0, 0)
    }

    pub fn character(m: i64, n: i64, k: i64) -> Self {
        let mut c = BTreeMap::new();
        c.insert((m, n, k), 1);
        KElement { c }
    }

    pub fn from_terms<I: IntoIterator<Item = (Char, i64)>>(terms: I) -> Self {
        let mut r = KElement::zero();
        for (ch, mult) in terms {
            r.insert(ch, mult);
        }
        r
    }

    fn insert(&mut self, ch: Char, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.c.entry(ch).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.c.remove(&ch);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Virtual rank: the sum of multiplicities.
    pub fn rank(&self) -> i64 {
        self.c.values().sum()
    }

    /// Multiplicity of the trivial character; nonzero means a fixed part.
    pub fn fixed_multiplicity(&self) -> i64 {
        self.c.get(&(0, 0, 0)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Char, &i64)> {
        self.c.iter()
    }

    pub fn add(&self, other: &KElement) -> KElement {
        let mut r = self.clone();
        for (ch, mult) in &other.c {
            r.insert(*ch, *mult);
        }
        r
    }

    pub fn sub(&self, other: &KElement) -> KElement {
        let mut r = self.clone();
        for (ch, mult) in &other.c {
            r.insert(*ch, -mult);
        }
        r
    }

    pub fn neg(&self) -> KElement {
        KElement { c: self.c.iter().map(|(ch, m)| (*ch, -m)).collect() }
    }

    pub fn scale(&self, k: i64) -> KElement {
        if k == 0 {
            return KElement::zero();
        }
        KElement { c: self.c.iter().map(|(ch, m)| (*ch, m * k)).collect() }
    }

    pub fn mul(&self, other: &KElement) -> KElement {
        let mut r = KElement::zero();
        for ((m1, n1, k1), a) in &self.c {
            for ((m2, n2, k2), b) in &other.c {
                r.insert((m1 + m2, n1 + n2, k1 + k2), a * b);
            }
        }
        r
    }

    /// Multiply by the single character `T1^m T2^n U^k`.
    pub fn twist(&self, m: i64, n: i64, k: i64) -> KElement {
        KElement {
            c: self.c.iter().map(|((a, b, u), mult)| ((a + m, b + n, u + k), *mult)).collect(),
        }
    }

    /// The dual representation: every character inverted.
    pub fn conj(&self) -> KElement {
        KElement { c: self.c.iter().map(|((m, n, k), mult)| ((-m, -n, -k), *mult)).collect() }
    }

    /// Evaluate each character `(m, n, k)` at the slope
    /// `m e1 + n e2 + k`, returning `(slope, multiplicity)` pairs.
    pub fn slopes(&self, e1: &Rat, e2: &Rat) -> Vec<(Rat, i64)> {
        self.c
            .iter()
            .map(|((m, n, k), mult)| {
                let s = &(&(e1 * &Rat::from_int(*m)) + &(e2 * &Rat::from_int(*n)))
                    + &Rat::from_int(*k);
                (s, *mult)
            })
            .collect()
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((m, n, k), mult) in &self.c {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*T1^{} T2^{} U^{}", mult, m, n, k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Weights `(v, w)` of the two chart coordinates, as characters of the
/// surface torus.
pub type ChartBasis = ((i64, i64), (i64, i64));

/// Character of the monomial `x^a y^b` in the chart with coordinate
/// weights `basis`.
pub fn chart_char(basis: ChartBasis, a: i64, b: i64) -> Char {
    let ((v1, v2), (w1, w2)) = basis;
    (a * v1 + b * w1, a * v2 + b * w2, 0)
}

/// Character of the coordinate ring quotient defined by the partition: one
/// monomial per box, in the chart coordinates.
pub fn partition_character(lambda: &Partition, basis: ChartBasis) -> KElement {
    KElement::from_terms(lambda.boxes().map(|(i, j)| (chart_char(basis, i, j), 1)))
}

/// Tangent character of the punctual Hilbert scheme at the monomial ideal,
/// via the arm/leg closed form.
pub fn tangent_character(lambda: &Partition, basis: ChartBasis) -> KElement {
    let conj = lambda.conjugate();
    let mut r = KElement::zero();
    for (i, j) in lambda.boxes() {
        let arm = lambda.parts()[i as usize] - 1 - j;
        let leg = conj.parts()[j as usize] - 1 - i;
        r.insert(chart_char(basis, -(leg + 1), arm), 1);
        r.insert(chart_char(basis, leg, -(arm + 1)), 1);
    }
    r
}

/// Same tangent character through the generating-function identity
/// `T = Z + Zbar/(xy) - Zbar Z (1-x)(1-y)/(xy)` with `x, y` the chart
/// coordinates and `Z` the box character. Used as an independent check.
pub fn tangent_character_product_form(lambda: &Partition, basis: ChartBasis) -> KElement {
    let z = partition_character(lambda, basis);
    let zbar = z.conj();
    let x = chart_char(basis, 1, 0);
    let y = chart_char(basis, 0, 1);
    let one = KElement::one();
    let vertex = one
        .sub(&KElement::from_terms([(x, 1)]))
        .mul(&one.sub(&KElement::from_terms([(y, 1)])));
    let inv_xy = (-x.0 - y.0, -x.1 - y.1, 0);
    z.add(&zbar.twist(inv_xy.0, inv_xy.1, 0))
        .sub(&zbar.mul(&z).mul(&vertex).twist(inv_xy.0, inv_xy.1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let expected = [1usize, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(Partition::all_of(n as i64).len(), *e, "p({})", n);
        }
    }

    #[test]
    fn conjugate_is_involution() {
        for n in 0..=7 {
            for p in Partition::all_of(n) {
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.conjugate().size(), p.size());
            }
        }
    }

    #[test]
    fn tangent_forms_agree_on_small_partitions() {
        let bases: [ChartBasis; 3] =
            [((1, 0), (0, 1)), ((-1, 0), (-1, 1)), ((0, -1), (1, -1))];
        for n in 0..=6 {
            for p in Partition::all_of(n) {
                for basis in bases {
                    let a = tangent_character(&p, basis);
                    let b = tangent_character_product_form(&p, basis);
                    assert_eq!(a, b, "partition {} basis {:?}", p, basis);
                }
            }
        }
    }

    #[test]
    fn tangent_rank_and_fixed_part() {
        for n in 1..=6 {
            for p in Partition::all_of(n) {
                let t = tangent_character(&p, ((1, 0), (0, 1)));
                assert_eq!(t.rank(), 2 * p.size());
                assert_eq!(t.fixed_multiplicity(), 0);
            }
        }
    }

    #[test]
    fn kelement_ring_laws() {
        let a = KElement::character(1, 0, 0).add(&KElement::character(0, 2, 1).scale(3));
        let b = KElement::character(-1, 1, 0).sub(&KElement::one());
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        assert_eq!(a.mul(&b).rank(), a.rank() * b.rank());
        assert_eq!(a.sub(&a), KElement::zero());
    }

    #[test]
    fn slopes_evaluate_linearly() {
        let e1 = Rat::new(97, 89);
        let e2 = Rat::new(53, 61);
        let a = KElement::character(2, -1, 3);
        let s = a.slopes(&e1, &e2);
        assert_eq!(s.len(), 1);
        let expect = &(&(&e1 * &Rat::from_int(2)) - &e2) + &Rat::from_int(3);
        assert_eq!(s[0].0, expect);
        assert_eq!(s[0].1, 1);
    }
}
