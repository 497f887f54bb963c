//! Per-chart integrand pieces: the local obstruction-theory complex at a
//! fixed point, Euler-class monomials, and the multiplicative genus factor
//! attached to each weight line.
//!
//! Everything here works on a single chart. The genus factor of a line of
//! weight `x = c s` is
//!
//! ```text
//! f(x)/x = 1 + 1/x + sum_{n >= 1} B_n x^{n-1} t^n / n!
//! ```
//!
//! with `B_n` the Bernoulli numbers (`B_1 = -1/2`), which is the expansion
//! of `(1 - (1-t) e^{-xt}) / (1 - e^{-xt})`. At `t = 0` it degenerates to
//! `(1 + x)/x`, the total-Chern-class grade.
//!
//! The per-line coefficient `c` is the slope of the character at one
//! `EpsSample` of the torus direction. Chart sums are later interpolated
//! in the sample parameter toward zero, where the surface torus drops out.

use crate::chartalgebra::{
    chart_char, partition_character, tangent_character, ChartBasis, KElement, Partition,
};
use crate::error::Error;
use crate::localization::toric::EpsSample;
use crate::scalars::{bernoulli_upto, factorial, Rat, SLaurent, TSeries};
use crate::Result;

/// Shared per-sample data for building chart contributions.
pub struct FactorContext {
    pub sample: EpsSample,
    /// Truncation order in `t`; `0` computes the total-Chern-class grade.
    pub tmax: usize,
    /// Absolute truncation of every stored `s`-window.
    pub s_top: i64,
    bern: Vec<Rat>,
}

impl FactorContext {
    pub fn new(sample: EpsSample, tmax: usize, s_top: i64) -> Self {
        let bern = bernoulli_upto(tmax);
        FactorContext { sample, tmax, s_top, bern }
    }

    /// The genus factor of a single line with nonzero slope `c`, divided
    /// by its Euler class.
    pub fn line_factor(&self, c: &Rat) -> TSeries {
        let mut coeffs = Vec::with_capacity(self.tmax + 1);
        let t0 = SLaurent::from_coeffs(-1, vec![c.recip(), Rat::one()], crate::scalars::INF);
        coeffs.push(t0.truncate(self.s_top));
        let mut cpow = Rat::one();
        for n in 1..=self.tmax {
            let num = &self.bern[n] / &factorial(n as u64);
            coeffs.push(SLaurent::monomial(&cpow * &num, n as i64 - 1));
            cpow *= c;
        }
        TSeries::from_coeffs(coeffs)
    }

    /// Product of `(f(x)/x)^mult` over the lines of `e`.
    ///
    /// A line with character `(0, 0, 0)` cannot appear here; a nonzero
    /// character with zero slope means the direction is degenerate.
    /// Positive and negative multiplicities are accumulated separately so
    /// the series inversion happens once, not once per negative line.
    pub fn genus_over_euler(&self, e: &KElement) -> Result<TSeries> {
        let mut pos = TSeries::one(self.tmax);
        let mut neg = TSeries::one(self.tmax);
        for (&(m, n, k), &mult) in e.terms() {
            if mult == 0 {
                continue;
            }
            if (m, n, k) == (0, 0, 0) {
                return Err(Error::Precondition(
                    "local complex has a fixed summand; its Euler class vanishes identically"
                        .into(),
                ));
            }
            let c = self.sample.slope((m, n, k));
            if c.is_zero() {
                return Err(Error::DegenerateEpsilon { a: m, b: n, k });
            }
            let f = self.line_factor(&c);
            if mult > 0 {
                pos = pos.mul(&f.pow_int(mult)?);
            } else {
                neg = neg.mul(&f.pow_int(-mult)?);
            }
        }
        Ok(pos.mul(&neg.invert()?))
    }

    /// Euler class of a sum of lines, as `Some((slope product, s-power))`,
    /// or `None` when a line is exactly trivial so that the class vanishes
    /// for structural reasons.
    pub fn euler_monomial(&self, k: &KElement) -> Result<Option<(Rat, i64)>> {
        let mut coeff = Rat::one();
        let mut pow = 0i64;
        for (&(m, n, kk), &mult) in k.terms() {
            if mult == 0 {
                continue;
            }
            if (m, n, kk) == (0, 0, 0) {
                return Ok(None);
            }
            let c = self.sample.slope((m, n, kk));
            if c.is_zero() {
                return Err(Error::DegenerateEpsilon { a: m, b: n, k: kk });
            }
            coeff *= &c.pow(mult);
            pow += mult;
        }
        Ok(Some((coeff, pow)))
    }
}

fn cross_kernel(basis: ChartBasis) -> KElement {
    // (1 - x)(1 - y) / (x y) expanded in the chart coordinates
    KElement::from_terms([
        (chart_char(basis, -1, -1), 1),
        (chart_char(basis, -1, 0), -1),
        (chart_char(basis, 0, -1), -1),
        ((0, 0, 0), 1),
    ])
}

/// The restriction of the obstruction-theory complex to the fixed point
/// `(lambda, mu)` of one chart. `a1`, `c1` are the chart characters of the
/// two divisor lifts. The result has rank `4(|lambda| + |mu|)`.
pub fn chart_complex(
    basis: ChartBasis,
    a1: (i64, i64),
    c1: (i64, i64),
    lam: &Partition,
    mu: &Partition,
) -> Result<KElement> {
    let zl = partition_character(lam, basis);
    let zm = partition_character(mu, basis);
    let d21 = (c1.0 - 2 * a1.0, c1.1 - 2 * a1.1);
    let d12 = (-d21.0, -d21.1);
    let ((v1, v2), (w1, w2)) = basis;
    // restriction of the canonical class in the lift matching tangent
    // weights -v, -w
    let kc = (v1 + w1, v2 + w2);
    let cross = cross_kernel(basis);

    let mut e = tangent_character(lam, basis).add(&tangent_character(mu, basis));
    e = e.add(&zm.twist(d21.0, d21.1, 2));
    e = e.add(&zl.twist(d12.0 + kc.0, d12.1 + kc.1, 0).conj().twist(0, 0, 2));
    e = e.sub(&zl.conj().mul(&zm).mul(&cross).twist(d21.0, d21.1, 2));
    e = e.add(&zl.twist(d12.0, d12.1, -2));
    e = e.add(&zm.twist(d21.0 + kc.0, d21.1 + kc.1, 0).conj().twist(0, 0, -2));
    e = e.sub(&zm.conj().mul(&zl).mul(&cross).twist(d12.0, d12.1, -2));

    let expected = 4 * (lam.size() + mu.size());
    if e.rank() != expected {
        return Err(Error::RankMismatch { expected, got: e.rank() });
    }
    Ok(e)
}

fn taut_element(
    basis: ChartBasis,
    a1: (i64, i64),
    c1: (i64, i64),
    lam: &Partition,
    mu: &Partition,
) -> KElement {
    partition_character(lam, basis)
        .twist(a1.0, a1.1, 0)
        .add(&partition_character(mu, basis).twist(c1.0 - a1.0, c1.1 - a1.1, 2))
}

/// Full multiplicative contribution of one chart to a fixed point:
/// tautological Euler classes times the genus factor of the local complex
/// over its Euler class. `None` marks a structurally vanishing numerator.
pub fn chart_contribution(
    ctx: &FactorContext,
    basis: ChartBasis,
    a1: (i64, i64),
    c1: (i64, i64),
    lam: &Partition,
    mu: &Partition,
) -> Result<Option<TSeries>> {
    let taut = taut_element(basis, a1, c1, lam, mu);
    let (coeff, pow) = match ctx.euler_monomial(&taut)? {
        None => return Ok(None),
        Some(m) => m,
    };
    let e = chart_complex(basis, a1, c1, lam, mu)?;
    let g = ctx.genus_over_euler(&e)?;
    Ok(Some(g.mul_slaurent(&SLaurent::monomial(coeff, pow))))
}

/// The characters whose slopes get inverted in the contribution of one
/// fixed point, with their total inversion multiplicities: the
/// positive-multiplicity lines of the local complex and any
/// negative-multiplicity tautological lines. Chart sums are rational in
/// the torus parameter exactly because of these inversions, so this list
/// bounds the denominator of the sum.
pub fn inverted_chars(
    basis: ChartBasis,
    a1: (i64, i64),
    c1: (i64, i64),
    lam: &Partition,
    mu: &Partition,
) -> Result<Vec<((i64, i64, i64), i64)>> {
    let mut out = Vec::new();
    for (&c, &mult) in chart_complex(basis, a1, c1, lam, mu)?.terms() {
        if mult > 0 {
            out.push((c, mult));
        }
    }
    for (&c, &mult) in taut_element(basis, a1, c1, lam, mu).terms() {
        if mult < 0 {
            out.push((c, -mult));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::toric::EpsilonSpec;
    use crate::scalars::INF;

    fn unit_sample() -> EpsSample {
        EpsilonSpec::default().at(&Rat::one())
    }

    fn ctx(tmax: usize) -> FactorContext {
        FactorContext::new(unit_sample(), tmax, 12)
    }

    /// Expand `(1 - (1-t) e^{-xt}) / ((1 - e^{-xt})/x)` directly and
    /// compare with the Bernoulli closed form.
    #[test]
    fn line_factor_matches_rational_expansion() {
        let tmax = 8;
        for c in [Rat::from_int(1), Rat::new(-5, 3), Rat::new(7, 2)] {
            // e^{-xt} with x = c s: t^n coefficient (-c)^n s^n / n!
            let mut exp_neg = Vec::new();
            for n in 0..=tmax as u64 {
                let coeff = &Rat::from_int(-1).pow(n as i64) * &c.pow(n as i64);
                exp_neg.push(SLaurent::monomial(&coeff / &factorial(n), n as i64));
            }
            let exp_neg = TSeries::from_coeffs(exp_neg);
            let one = TSeries::one(tmax);
            let num = one.sub(&TSeries::one_minus_t(tmax).mul(&exp_neg));
            // (1 - e^{-xt}) has t-valuation 1 and leading coefficient x
            let den = one.sub(&exp_neg).div_t_pow(1).unwrap().truncate_s(40);
            let oracle = num.div_t_pow(1).unwrap().mul(&den.invert().unwrap());
            let closed = ctx(tmax).line_factor(&c).truncate_s(30);
            assert!(closed.agrees_with(&oracle), "slope {}: {} vs {}", c, closed, oracle);
        }
    }

    #[test]
    fn line_factor_euler_grade() {
        let f = ctx(0).line_factor(&Rat::from_int(2));
        // (1 + 2s) / (2s) = (1/2) s^{-1} + 1
        assert_eq!(f.t0().coeff(-1).unwrap(), Rat::new(1, 2));
        assert_eq!(f.t0().coeff(0).unwrap(), Rat::one());
        assert_eq!(f.t0().lo(), -1);
    }

    #[test]
    fn genus_over_euler_single_inversion_matches_powers() {
        let c = ctx(4);
        let k = KElement::from_terms([((1, 0, 0), 2), ((0, 1, 0), -1), ((0, 0, 2), -2)]);
        let fast = c.genus_over_euler(&k).unwrap();
        let slow = c
            .line_factor(&c.sample.slope((1, 0, 0)))
            .pow_int(2)
            .unwrap()
            .mul(&c.line_factor(&c.sample.slope((0, 1, 0))).pow_int(-1).unwrap())
            .mul(&c.line_factor(&Rat::from_int(2)).pow_int(-2).unwrap());
        assert!(fast.agrees_with(&slow));
    }

    #[test]
    fn chart_complex_single_box() {
        let basis = ((1, 0), (0, 1));
        let lam = Partition::empty();
        let mu = Partition::new(vec![1]);
        let e = chart_complex(basis, (0, 0), (0, 0), &lam, &mu).unwrap();
        let mut terms: Vec<_> = e.terms().map(|(c, m)| (*c, *m)).collect();
        terms.sort();
        assert_eq!(
            terms,
            vec![((-1, -1, -2), 1), ((-1, 0, 0), 1), ((0, -1, 0), 1), ((0, 0, 2), 1)]
        );
    }

    #[test]
    fn chart_complex_rank_audit() {
        let basis = ((-1, 0), (-1, 1));
        for (l, m) in [(vec![2, 1], vec![1]), (vec![3], vec![2, 2]), (vec![1, 1, 1], vec![])] {
            let lam = Partition::new(l);
            let mu = Partition::new(m);
            let e = chart_complex(basis, (1, -2), (0, 3), &lam, &mu).unwrap();
            assert_eq!(e.rank(), 4 * (lam.size() + mu.size()));
        }
    }

    #[test]
    fn inverted_chars_single_box() {
        let basis = ((1, 0), (0, 1));
        let mut inv = inverted_chars(
            basis,
            (0, 0),
            (0, 0),
            &Partition::empty(),
            &Partition::new(vec![1]),
        )
        .unwrap();
        inv.sort();
        // the whole rank-4 complex sits in positive degree; the single
        // tautological line is not inverted
        assert_eq!(
            inv,
            vec![((-1, -1, -2), 1), ((-1, 0, 0), 1), ((0, -1, 0), 1), ((0, 0, 2), 1)]
        );
    }

    #[test]
    fn euler_monomial_detects_structural_zero() {
        let c = ctx(0);
        let taut = KElement::from_terms([((0, 0, 0), 1), ((1, 0, 0), 1)]);
        assert!(c.euler_monomial(&taut).unwrap().is_none());
        let ok = KElement::from_terms([((1, 0, 0), 2), ((0, 1, 0), -1)]);
        let (coeff, pow) = c.euler_monomial(&ok).unwrap().unwrap();
        // 13^2 / 11 at the unit sample of the default direction
        assert_eq!(coeff, Rat::new(169, 11));
        assert_eq!(pow, 1);
    }

    #[test]
    fn degenerate_pairing_is_reported() {
        let bad = FactorContext::new(EpsSample::new(Rat::one(), Rat::from_int(-1)), 0, 8);
        // (1, 1, -2) has slope -2: fine
        let k = KElement::from_terms([((1, 1, -2), 1)]);
        assert!(bad.euler_monomial(&k).is_ok());
        // (1, 1, 0) has slope exactly zero at this sample
        let z = KElement::from_terms([((1, 1, 0), 1)]);
        match bad.euler_monomial(&z) {
            Err(Error::DegenerateEpsilon { a: 1, b: 1, k: 0 }) => {}
            other => panic!("expected degenerate pairing, got {:?}", other),
        }
        match bad.genus_over_euler(&z) {
            Err(Error::DegenerateEpsilon { a: 1, b: 1, k: 0 }) => {}
            other => panic!("expected degenerate pairing, got {:?}", other),
        }
    }

    #[test]
    fn contribution_window_is_truncated() {
        let c = ctx(3);
        let basis = ((1, 0), (0, 1));
        let t = chart_contribution(
            &c,
            basis,
            (0, 0),
            (1, 0),
            &Partition::empty(),
            &Partition::new(vec![1]),
        )
        .unwrap()
        .unwrap();
        assert!(t.t0().hi() < INF);
        assert!(t.t0().lo() >= -4);
    }
}
