//! Toric surface data for the localization engine.
//!
//! A surface is presented through its torus-fixed charts: for each fixed
//! point the two tangent weights as lattice characters, and for each lifted
//! divisor one lattice character per chart (the weight of a local generator
//! there, on functions). The two-dimensional torus is collapsed to a
//! one-parameter subgroup with integer direction `EpsilonSpec`; evaluating
//! that subgroup at a rational parameter gives an `EpsSample`, the pair of
//! weight values every character pairs against.
//!
//! Chart sums produced downstream are rational in the sample parameter,
//! regular at zero, and the honest invariant is their limit there.
//! Degree-two pairings (intersection numbers) are independent of the
//! parameter outright, so they are computed from the direction alone.

use crate::chartalgebra::{Char, ChartBasis};
use crate::scalars::Rat;

/// Integer direction of the one-parameter subgroup used to collapse the
/// surface torus. Components are coprime, distinct, and large enough that
/// no tangent character of a desk-scale box configuration pairs to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EpsilonSpec {
    pub d1: i64,
    pub d2: i64,
}

impl EpsilonSpec {
    pub fn new(d1: i64, d2: i64) -> Self {
        EpsilonSpec { d1, d2 }
    }

    /// Fallback directions tried in order when a pairing degenerates.
    /// A character (m, n, k) can only degenerate at a nonzero parameter
    /// when k = 0 and m d1 + n d2 = 0, which for the listed coprime pairs
    /// needs |m|, |n| beyond anything a small box configuration produces.
    pub fn candidates() -> Vec<EpsilonSpec> {
        vec![
            EpsilonSpec::new(13, 11),
            EpsilonSpec::new(23, 17),
            EpsilonSpec::new(29, 19),
            EpsilonSpec::new(37, 23),
        ]
    }

    /// Pairing of the direction with a lattice character.
    pub fn dir(&self, m: i64, n: i64) -> i64 {
        m * self.d1 + n * self.d2
    }

    /// Evaluate the subgroup at parameter `zeta`.
    pub fn at(&self, zeta: &Rat) -> EpsSample {
        EpsSample {
            e1: zeta * &Rat::from_int(self.d1),
            e2: zeta * &Rat::from_int(self.d2),
        }
    }
}

impl Default for EpsilonSpec {
    fn default() -> Self {
        EpsilonSpec::new(13, 11)
    }
}

/// Values of the two torus weights at one parameter sample, measured in
/// units of the surviving equivariant variable `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsSample {
    pub e1: Rat,
    pub e2: Rat,
}

impl EpsSample {
    pub fn new(e1: Rat, e2: Rat) -> Self {
        EpsSample { e1, e2 }
    }

    /// Coefficient of `s` in the full weight of a character: the torus
    /// part pairs with the sample, the `s`-exponent contributes directly.
    pub fn slope(&self, c: Char) -> Rat {
        let (m, n, k) = c;
        let mut r = &self.e1 * &Rat::from_int(m);
        r += &(&self.e2 * &Rat::from_int(n));
        r += &Rat::from_int(k);
        r
    }
}

/// An equivariant lift of a divisor class: one lattice character per
/// fixed chart. Two lifts of the same class differ by a single global
/// character added to every chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqDivisor {
    pub name: String,
    pub lifts: Vec<(i64, i64)>,
}

impl EqDivisor {
    pub fn new(name: impl Into<String>, lifts: Vec<(i64, i64)>) -> Self {
        EqDivisor { name: name.into(), lifts }
    }

    /// Number of charts the lift covers.
    pub fn len(&self) -> usize {
        self.lifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lifts.is_empty()
    }

    /// The lattice character at chart `sigma`.
    pub fn chart(&self, sigma: usize) -> (i64, i64) {
        self.lifts[sigma]
    }

    /// Pairing of the chart lift with the chosen direction.
    pub fn dir_coeff(&self, sigma: usize, eps: &EpsilonSpec) -> i64 {
        let (a, b) = self.lifts[sigma];
        eps.dir(a, b)
    }

    /// The chart lift as a character with `s`-exponent zero.
    pub fn char_at(&self, sigma: usize) -> Char {
        let (a, b) = self.lifts[sigma];
        (a, b, 0)
    }

    /// Another lift of the same class, shifted by a global character.
    pub fn twist_global(&self, global: (i64, i64)) -> EqDivisor {
        let lifts = self.lifts.iter().map(|&(a, b)| (a + global.0, b + global.1)).collect();
        EqDivisor { name: format!("{}~", self.name), lifts }
    }
}

/// A smooth projective toric surface presented by its fixed charts.
#[derive(Clone, Debug)]
pub struct ToricSurface {
    pub name: String,
    charts: Vec<ChartBasis>,
}

impl ToricSurface {
    pub fn new(name: impl Into<String>, charts: Vec<ChartBasis>) -> Self {
        ToricSurface { name: name.into(), charts }
    }

    /// Number of fixed charts, which for these surfaces is the Euler
    /// number.
    pub fn chart_count(&self) -> usize {
        self.charts.len()
    }

    pub fn charts(&self) -> &[ChartBasis] {
        &self.charts
    }

    /// Tangent weights of chart `sigma` as lattice characters.
    pub fn basis(&self, sigma: usize) -> ChartBasis {
        self.charts[sigma]
    }

    /// Lift of the canonical class: at each fixed point the sum of the
    /// two tangent characters (the weight on local functions).
    pub fn canonical_lift(&self) -> EqDivisor {
        let lifts = self
            .charts
            .iter()
            .map(|&((v1, v2), (w1, w2))| (v1 + w1, v2 + w2))
            .collect();
        EqDivisor::new("K", lifts)
    }

    /// Direction pairings of the chart's two tangent weights.
    pub fn chart_dirs(&self, sigma: usize, eps: &EpsilonSpec) -> (i64, i64) {
        let ((v1, v2), (w1, w2)) = self.charts[sigma];
        (eps.dir(v1, v2), eps.dir(w1, w2))
    }

    /// Sum over charts of `f(sigma)` divided by the direction pairing of
    /// the tangent Euler class. Compactness makes this the equivariant
    /// pushforward to a point for parameter-free integrands.
    pub fn euler_weighted_sum(&self, eps: &EpsilonSpec, f: impl Fn(usize) -> Rat) -> Rat {
        let mut acc = Rat::zero();
        for sigma in 0..self.chart_count() {
            let (dv, dw) = self.chart_dirs(sigma, eps);
            assert!(dv != 0 && dw != 0, "direction degenerates on a tangent weight");
            acc += &(f(sigma) / Rat::from_int(dv * dw));
        }
        acc
    }

    /// Intersection number of two lifted divisors. The sample parameter
    /// cancels in degree two, so only the direction enters; the result is
    /// an integer whenever the lifts are consistent.
    pub fn intersect(&self, a: &EqDivisor, b: &EqDivisor, eps: &EpsilonSpec) -> Rat {
        self.euler_weighted_sum(eps, |sigma| {
            Rat::from_int(a.dir_coeff(sigma, eps) * b.dir_coeff(sigma, eps))
        })
    }
}

/// The projective plane with its three fixed charts.
pub fn p2() -> ToricSurface {
    ToricSurface::new("P2", vec![((1, 0), (0, 1)), ((-1, 0), (-1, 1)), ((0, -1), (1, -1))])
}

/// Lift of `O(d)` on the plane, normalized to weight zero at the first
/// chart.
pub fn p2_o(d: i64) -> EqDivisor {
    EqDivisor::new(format!("O({})", d), vec![(0, 0), (d, 0), (0, d)])
}

/// The quadric, a product of two lines, with its four fixed charts.
pub fn p1xp1() -> ToricSurface {
    let mut charts = Vec::new();
    for i in [1i64, -1] {
        for j in [1i64, -1] {
            charts.push(((i, 0), (0, j)));
        }
    }
    ToricSurface::new("P1xP1", charts)
}

/// Lift of `O(d1, d2)` on the quadric, normalized at the first chart.
pub fn p1xp1_o(d1: i64, d2: i64) -> EqDivisor {
    let mut lifts = Vec::new();
    for i in [0i64, 1] {
        for j in [0i64, 1] {
            lifts.push((d1 * i, d2 * j));
        }
    }
    EqDivisor::new(format!("O({},{})", d1, d2), lifts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn compact_pairings_vanish() {
        for eps in [EpsilonSpec::new(13, 11), EpsilonSpec::new(3, 5)] {
            for s in [p2(), p1xp1()] {
                let zero_deg = s.euler_weighted_sum(&eps, |_| Rat::one());
                assert!(zero_deg.is_zero(), "{}: sum 1/e != 0", s.name);
                let k = s.canonical_lift();
                let one_deg =
                    s.euler_weighted_sum(&eps, |sigma| ri(k.dir_coeff(sigma, &eps)));
                assert!(one_deg.is_zero(), "{}: sum K/e != 0", s.name);
            }
        }
    }

    #[test]
    fn plane_intersection_table() {
        let s = p2();
        let eps = EpsilonSpec::default();
        let h = p2_o(1);
        let k = s.canonical_lift();
        assert_eq!(s.intersect(&h, &h, &eps), ri(1));
        assert_eq!(s.intersect(&h, &k, &eps), ri(-3));
        assert_eq!(s.intersect(&k, &k, &eps), ri(9));
        // lifts of the same class differ by one global character
        let diffs: Vec<(i64, i64)> = k
            .lifts
            .iter()
            .zip(&p2_o(-3).lifts)
            .map(|(&(a, b), &(c, d))| (a - c, b - d))
            .collect();
        assert!(diffs.iter().all(|&d| d == diffs[0]));
    }

    #[test]
    fn quadric_intersection_table() {
        let s = p1xp1();
        let eps = EpsilonSpec::default();
        let f = p1xp1_o(1, 0);
        let g = p1xp1_o(0, 1);
        let k = s.canonical_lift();
        assert_eq!(s.intersect(&f, &f, &eps), ri(0));
        assert_eq!(s.intersect(&g, &g, &eps), ri(0));
        assert_eq!(s.intersect(&f, &g, &eps), ri(1));
        assert_eq!(s.intersect(&k, &k, &eps), ri(8));
        assert_eq!(s.intersect(&k, &f, &eps), ri(-2));
        assert_eq!(s.intersect(&k, &g, &eps), ri(-2));
    }

    #[test]
    fn intersection_is_lift_independent() {
        let s = p2();
        let eps = EpsilonSpec::new(23, 17);
        let h = p2_o(2);
        let h2 = h.twist_global((3, -1));
        let k = s.canonical_lift();
        assert_eq!(s.intersect(&h, &h, &eps), s.intersect(&h2, &h2, &eps));
        assert_eq!(s.intersect(&h, &k, &eps), s.intersect(&h2, &k, &eps));
    }

    #[test]
    fn sample_slopes_follow_the_direction() {
        let eps = EpsilonSpec::new(13, 11);
        let z = Rat::from_int(3);
        let sample = eps.at(&z);
        assert_eq!(sample.e1, ri(39));
        assert_eq!(sample.e2, ri(33));
        // torus part scales with the parameter, s-exponent does not
        assert_eq!(sample.slope((1, -1, 0)), ri(6));
        assert_eq!(sample.slope((0, 0, 2)), ri(2));
        assert_eq!(sample.slope((2, -1, -2)), ri(2 * 39 - 33 - 2));
        let origin = eps.at(&Rat::zero());
        assert_eq!(origin.slope((5, 7, -4)), ri(-4));
    }
}
