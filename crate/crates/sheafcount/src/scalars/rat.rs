//! Arbitrary-precision rational scalars.
//!
//! `Rat` keeps values in lowest terms with a positive denominator. Machine
//! words back the common case: series coefficients overwhelmingly stay
//! small, and canonicalizing heap rationals after every ring operation
//! would dominate whole runs. Values that outgrow `i64` promote to a
//! GMP-backed `rug::Rational` and demote back the moment they fit again,
//! so every value has exactly one representation and derived equality
//! stays truthful. The canonical text form is `p/q`, which is what the
//! cache format stores.

use rug::{Integer, Rational};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, positive denominator; every value that fits lives here.
    Small(i64, i64),
    /// Reduced, positive denominator; numerator or denominator beyond `i64`.
    Big(Box<Rational>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn add_small(n1: i64, d1: i64, n2: i64, d2: i64, sign: i128) -> Rat {
    let g = gcd_u64(d1 as u64, d2 as u64) as i128;
    let t1 = d2 as i128 / g;
    let t2 = d1 as i128 / g;
    let n = n1 as i128 * t1 + sign * (n2 as i128) * t2;
    if n == 0 {
        return Rat::zero();
    }
    let d = t2 * d2 as i128;
    // the fresh numerator can only share factors with the denominators'
    // gcd, so one small reduction restores lowest terms
    let g2 = if g == 1 {
        1
    } else {
        gcd_u64((n.unsigned_abs() % g as u128) as u64, g as u64) as i128
    };
    Rat::from_reduced_i128(n / g2, d / g2)
}

fn mul_small(n1: i64, d1: i64, n2: i64, d2: i64) -> Rat {
    if n1 == 0 || n2 == 0 {
        return Rat::zero();
    }
    let g1 = gcd_u64(n1.unsigned_abs(), d2 as u64) as i128;
    let g2 = gcd_u64(n2.unsigned_abs(), d1 as u64) as i128;
    let n = (n1 as i128 / g1) * (n2 as i128 / g2);
    let d = (d1 as i128 / g2) * (d2 as i128 / g1);
    Rat::from_reduced_i128(n, d)
}

fn div_small(n1: i64, d1: i64, n2: i64, d2: i64) -> Rat {
    assert!(n2 != 0, "division by zero");
    if n1 == 0 {
        return Rat::zero();
    }
    let g1 = gcd_u64(n1.unsigned_abs(), n2.unsigned_abs()) as i128;
    let g2 = gcd_u64(d1 as u64, d2 as u64) as i128;
    let mut n = (n1 as i128 / g1) * (d2 as i128 / g2);
    let mut d = (d1 as i128 / g2) * (n2 as i128 / g1);
    if d < 0 {
        n = -n;
        d = -d;
    }
    Rat::from_reduced_i128(n, d)
}

impl Rat {
    fn small(n: i64, d: i64) -> Self {
        debug_assert!(d > 0);
        Rat(Repr::Small(n, d))
    }

    /// Wrap a coprime pair with positive denominator, small when it fits.
    fn from_reduced_i128(n: i128, d: i128) -> Self {
        debug_assert!(d > 0);
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(sn), Ok(sd)) => Rat::small(sn, sd),
            _ => Rat(Repr::Big(Box::new(Rational::from((
                Integer::from(n),
                Integer::from(d),
            ))))),
        }
    }

    /// Wrap an already-canonical heap value, demoting when it fits.
    fn from_big(r: Rational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Rat::small(n, d);
        }
        Rat(Repr::Big(Box::new(r)))
    }

    fn to_big(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::from((*n, *d)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn zero() -> Self {
        Rat::small(0, 1)
    }

    pub fn one() -> Self {
        Rat::small(1, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Rat::small(n, 1)
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut n = num as i128;
        let mut d = den as i128;
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u64(n.unsigned_abs() as u64, d.unsigned_abs() as u64) as i128;
        Rat::from_reduced_i128(n / g, d / g)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.cmp0() == Ordering::Less,
        }
    }

    /// True when the value is an integer.
    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    /// The value as an `i64`, if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(n, 1) => Some(n),
            _ => None,
        }
    }

    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                if *n < 0 {
                    Rat::from_reduced_i128(-(*d as i128), -(*n as i128))
                } else {
                    Rat::small(*d, *n)
                }
            }
            Repr::Big(r) => Rat::from_big(Rational::from(r.recip_ref())),
        }
    }

    /// Integer power, negative exponents allowed (value must be nonzero).
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Rat::one();
        }
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Rat::one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc *= &sq;
            }
            sq = &sq * &sq;
            n >>= 1;
        }
        acc
    }

    /// Canonical cache rendering: always `p/q`, including `q = 1`.
    pub fn to_frac_string(&self) -> String {
        match &self.0 {
            Repr::Small(n, d) => format!("{}/{}", n, d),
            Repr::Big(r) => format!("{}/{}", r.numer(), r.denom()),
        }
    }

    /// Parse `p/q` or a bare integer.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let (p, q) = (p.trim(), q.trim());
                if let (Ok(pn), Ok(qn)) = (i64::from_str(p), i64::from_str(q)) {
                    if qn == 0 {
                        return None;
                    }
                    return Some(Rat::new(pn, qn));
                }
                let p = Integer::from_str(p).ok()?;
                let q = Integer::from_str(q).ok()?;
                if q == 0 {
                    return None;
                }
                Some(Rat::from_big(Rational::from((p, q))))
            }
            None => match i64::from_str(s) {
                Ok(n) => Some(Rat::from_int(n)),
                Err(_) => Some(Rat::from_big(Rational::from(Integer::from_str(s).ok()?))),
            },
        }
    }

    /// Binomial coefficient `C(c, k)` with an arbitrary rational top index:
    /// `c (c-1) ... (c-k+1) / k!`.
    pub fn binom(c: &Rat, k: u64) -> Rat {
        let mut num = Rat::one();
        for i in 0..k {
            num *= &(c - &Rat::from_int(i as i64));
            num /= &Rat::from_int((i + 1) as i64);
        }
        num
    }
}

fn add_rat(a: &Rat, b: &Rat) -> Rat {
    match (&a.0, &b.0) {
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => add_small(*n1, *d1, *n2, *d2, 1),
        _ => Rat::from_big(a.to_big() + b.to_big()),
    }
}

fn sub_rat(a: &Rat, b: &Rat) -> Rat {
    match (&a.0, &b.0) {
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => add_small(*n1, *d1, *n2, *d2, -1),
        _ => Rat::from_big(a.to_big() - b.to_big()),
    }
}

fn mul_rat(a: &Rat, b: &Rat) -> Rat {
    match (&a.0, &b.0) {
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => mul_small(*n1, *d1, *n2, *d2),
        _ => Rat::from_big(a.to_big() * b.to_big()),
    }
}

fn div_rat(a: &Rat, b: &Rat) -> Rat {
    match (&a.0, &b.0) {
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => div_small(*n1, *d1, *n2, *d2),
        _ => {
            assert!(!b.is_zero(), "division by zero");
            Rat::from_big(a.to_big() / b.to_big())
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{}", n),
            Repr::Small(n, d) => write!(f, "{}/{}", n, d),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                (*n1 as i128 * *d2 as i128).cmp(&(*n2 as i128 * *d1 as i128))
            }
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $helper:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $helper(self, rhs)
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $helper(&self, &rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $helper(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_rat);
forward_binop!(Sub, sub, sub_rat);
forward_binop!(Mul, mul, mul_rat);
forward_binop!(Div, div, div_rat);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat::small(m, *d),
                None => Rat::from_reduced_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(r) => Rat::from_big(Rational::from(-&**r)),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        let v = add_rat(self, rhs);
        *self = v;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        let v = sub_rat(self, rhs);
        *self = v;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        let v = mul_rat(self, rhs);
        *self = v;
    }
}

impl DivAssign<&Rat> for Rat {
    fn div_assign(&mut self, rhs: &Rat) {
        let v = div_rat(self, rhs);
        *self = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rat::new(-6, -8);
        assert_eq!(r, Rat::new(3, 4));
        assert_eq!(r.to_frac_string(), "3/4");
        assert_eq!(Rat::new(-3, 4).to_frac_string(), "-3/4");
        assert_eq!(format!("{}", Rat::from_int(7)), "7");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0/1", "-5/8", "22/7", "12/1"] {
            let r = Rat::parse(s).unwrap();
            assert_eq!(r.to_frac_string(), s);
        }
        assert_eq!(Rat::parse("9").unwrap(), Rat::from_int(9));
        assert!(Rat::parse("1/0").is_none());
    }

    #[test]
    fn pow_and_binom() {
        assert_eq!(Rat::new(2, 3).pow(-2), Rat::new(9, 4));
        // C(1/2, 2) = (1/2)(-1/2)/2 = -1/8
        assert_eq!(Rat::binom(&Rat::new(1, 2), 2), Rat::new(-1, 8));
        assert_eq!(Rat::binom(&Rat::from_int(5), 2), Rat::from_int(10));
    }

    #[test]
    fn promotes_and_demotes_transparently() {
        let max = Rat::from_int(i64::MAX);
        let big = &max + &Rat::one();
        assert_eq!(big.to_frac_string(), "9223372036854775808/1");
        assert_eq!(big.to_i64(), None);
        assert_eq!(&big - &max, Rat::one());
        assert!((&big - &big).is_zero());
        assert!((&big / &big).is_one());
        let r = Rat::parse("9223372036854775808/2").unwrap();
        assert_eq!(r.to_i64(), Some(4611686018427387904));
        assert_eq!((-&max) - &Rat::one(), Rat::from_int(i64::MIN));
        assert_eq!(-&Rat::from_int(i64::MIN), big);
        assert!(Rat::from_int(i64::MIN).recip() < Rat::zero());
    }

    #[test]
    fn mixed_representation_arithmetic() {
        let huge = Rat::parse("36893488147419103232/3").unwrap();
        let small = Rat::new(1, 3);
        assert_eq!(&huge * &small.recip(), Rat::parse("36893488147419103232").unwrap());
        assert_eq!(&(&huge + &small) - &huge, small);
        assert!(huge > small);
        assert!(-&huge < small);
    }
}
