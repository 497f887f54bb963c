//! Small exact-number utilities shared across the series tower.

use super::rat::Rat;

/// Bernoulli numbers `B_0 .. B_n` in the convention where
/// `z / (e^z - 1) = sum B_n z^n / n!`, so `B_1 = -1/2`.
pub fn bernoulli_upto(n: usize) -> Vec<Rat> {
    let mut b = Vec::with_capacity(n + 1);
    b.push(Rat::one());
    for m in 1..=n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += &(&Rat::binom(&Rat::from_int(m as i64 + 1), k as u64) * bk);
            }
        }
        let bm = -(acc * &Rat::new(1, m as i64 + 1));
        b.push(bm);
    }
    b
}

/// `n!` as an exact rational.
pub fn factorial(n: u64) -> Rat {
    let mut acc = Rat::one();
    for k in 2..=n {
        acc *= &Rat::from_int(k as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_bernoulli_numbers() {
        let b = bernoulli_upto(8);
        assert_eq!(b[0], Rat::one());
        assert_eq!(b[1], Rat::new(-1, 2));
        assert_eq!(b[2], Rat::new(1, 6));
        assert_eq!(b[3], Rat::zero());
        assert_eq!(b[4], Rat::new(-1, 30));
        assert_eq!(b[6], Rat::new(1, 42));
        assert_eq!(b[8], Rat::new(-1, 30));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), Rat::one());
        assert_eq!(factorial(5), Rat::from_int(120));
    }
}
