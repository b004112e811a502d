//! Exact evaluation of the Takagi function.
//!
//! `T(x) = sum_{k>=1} g_k(x)` where `g_k(x)` is the distance from `x` to the
//! grid `D_k = 2^-(k-1) Z`; equivalently `T(x) = sum_{n>=0} 2^-n phi(2^n x)`
//! with `phi` the distance to the nearest integer.
//!
//! At a rational point the digit stream is eventually periodic, so beyond
//! the preperiod `g_{k+L}(x) = 2^-L g_k(x)` and the series closes to an exact
//! rational.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digits::{inv_pow2, pow2, DigitExpansion, Rational};

/// Distance from `q` to the nearest integer.
pub fn phi(q: &Rational) -> Rational {
    let frac = q - q.floor();
    let other = Rational::one() - &frac;
    if frac <= other {
        frac
    } else {
        other
    }
}

/// Distance from `q` to `D_k`, computed as `2^-(k-1) phi(2^(k-1) q)`.
pub fn g_k(q: &Rational, k: usize) -> Rational {
    assert!(k >= 1, "g_k is indexed from 1");
    let scale = Rational::from_integer(pow2(k - 1));
    phi(&(q * &scale)) / scale
}

/// `g_k` from the binary digits: `a_k 2^-k + (1 - 2 a_k) sum_{j>k} a_j 2^-j`.
pub fn g_k_digit_formula(e: &DigitExpansion, k: usize) -> Rational {
    assert!(k >= 1, "g_k is indexed from 1");
    let tail = e.tail_sum(k + 1);
    if e.digit(k) == 0 {
        tail
    } else {
        inv_pow2(k) - tail
    }
}

/// The partial sum `G_n = g_1 + ... + g_n`.
pub fn partial_sum(q: &Rational, n: usize) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, k| acc + g_k(q, k))
}

/// Exact value of `T` at a rational point.
pub fn takagi_exact(q: &Rational) -> Rational {
    takagi(&DigitExpansion::from_rational(q))
}

/// Exact value of `T` at the point carried by an expansion.
///
/// All tails `sum_{j>=k} a_j 2^-j` for `k <= P + L + 1` share the
/// denominator `D = 2^(P+L) (2^L - 1)`, so the head terms and one period of
/// tail terms are accumulated as integer numerators over `D`. The periodic
/// block is then scaled by `1 / (1 - 2^-L)`.
pub fn takagi(e: &DigitExpansion) -> Rational {
    let p = e.preperiod_len();
    let l = e.period_len();
    let n = p + l;
    let cycle = pow2(l) - 1;
    let period_word = BigInt::from_biguint(
        num_bigint::Sign::Plus,
        num_bigint::BigUint::from_radix_be(e.period(), 2).expect("bits are 0 or 1"),
    );

    // tails[k] = D * sum_{j>=k} a_j 2^-j for k in 1..=n+1
    let mut tails = vec![BigInt::zero(); n + 2];
    tails[p + 1] = period_word << l;
    for k in (1..=p).rev() {
        tails[k] = &tails[k + 1] + ((BigInt::from(e.digit(k)) * &cycle) << (n - k));
    }
    for k in p + 1..=n {
        tails[k + 1] = &tails[k] - ((BigInt::from(e.digit(k)) * &cycle) << (n - k));
    }

    let term = |k: usize| -> BigInt {
        if e.digit(k) == 0 {
            tails[k + 1].clone()
        } else {
            (&cycle << (n - k)) - &tails[k + 1]
        }
    };
    let head: BigInt = (1..=p).map(term).sum();
    let periodic: BigInt = (p + 1..=n).map(term).sum();

    let num = head * &cycle + (periodic << l);
    let den = (&cycle << n) * &cycle;
    Rational::new(num, den)
}

/// A partial sum of the series together with a bound on the neglected tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedValue {
    pub value: Rational,
    /// `2^-terms_used`, since `sum_{k>N} g_k <= sum_{k>N} 2^-k`.
    pub error_bound: Rational,
    pub terms_used: usize,
}

impl CertifiedValue {
    pub fn lower(&self) -> Rational {
        &self.value - &self.error_bound
    }

    pub fn upper(&self) -> Rational {
        &self.value + &self.error_bound
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.lower() <= *t && *t <= self.upper()
    }
}

/// `G_n(q)` with its tail bound `2^-n`.
pub fn takagi_certified(q: &Rational, n_terms: usize) -> CertifiedValue {
    assert!(n_terms >= 1, "at least one term is required");
    CertifiedValue {
        value: partial_sum(q, n_terms),
        error_bound: inv_pow2(n_terms),
        terms_used: n_terms,
    }
}

/// The split of a point and of `T` at digit index `m`.
///
/// `head_value = sum_{j<m} g_j(x)` and `tail_value = sum_{j>=m} g_j(x)`; the
/// index `m` is explicit because both pieces depend on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTail {
    pub m: usize,
    /// `sum_{j<m} a_j 2^-j`
    pub head_point: Rational,
    /// `sum_{j>=m} a_j 2^-j`
    pub tail_point: Rational,
    pub head_value: Rational,
    pub tail_value: Rational,
}

impl SplitTail {
    /// `2^-(m-1) T(2^(m-1) tail_point)`, which equals `tail_value`.
    pub fn rescaled_tail_value(&self) -> Rational {
        let scale = Rational::from_integer(pow2(self.m - 1));
        takagi_exact(&(&self.tail_point * &scale)) / scale
    }
}

pub fn split_tail(e: &DigitExpansion, m: usize) -> SplitTail {
    assert!(m >= 1, "split index starts at 1");
    let x = e.to_rational();
    let head_value = (1..m).fold(Rational::zero(), |acc, j| acc + g_k(&x, j));
    let tail_value = takagi(e) - &head_value;
    SplitTail {
        m,
        head_point: e.head_sum(m),
        tail_point: e.tail_sum(m),
        head_value,
        tail_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    fn e(p: i64, q: i64) -> DigitExpansion {
        DigitExpansion::from(&r(p, q))
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&r(1, 2)), r(1, 2));
        assert_eq!(phi(&r(7, 3)), r(1, 3));
        assert_eq!(phi(&r(-1, 4)), r(1, 4));
    }

    #[test]
    fn g_k_examples() {
        assert_eq!(g_k(&r(1, 3), 1), r(1, 3));
        assert_eq!(g_k(&r(1, 3), 2), r(1, 6));
        assert_eq!(g_k(&r(1, 4), 3), r(0, 1));
    }

    #[test]
    fn digit_formula_examples() {
        assert_eq!(g_k_digit_formula(&e(1, 3), 1), r(1, 3));
        assert_eq!(g_k_digit_formula(&e(2, 3), 1), r(1, 3));
        assert_eq!(g_k_digit_formula(&e(1, 2), 1), r(1, 2));
    }

    /// Brute-force distance to `D_k` by scanning the two nearest grid points.
    fn grid_distance(q: &Rational, k: usize) -> Rational {
        let step = inv_pow2(k - 1);
        let below = (q / &step).floor() * &step;
        let above = &below + &step;
        std::cmp::min(q - &below, above - q)
    }

    #[test]
    fn g_k_is_grid_distance() {
        for den in 1..40 {
            for num in -den..3 * den {
                let q = r(num, den);
                for k in 1..12 {
                    assert_eq!(g_k(&q, k), grid_distance(&q, k));
                    assert_eq!(g_k_digit_formula(&DigitExpansion::from(&q), k), g_k(&q, k));
                }
            }
        }
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum(&r(1, 3), 2), r(1, 2));
        assert_eq!(partial_sum(&r(0, 1), 5), r(0, 1));
        assert_eq!(partial_sum(&r(1, 4), 2), r(1, 2));
    }

    #[test]
    fn exact_examples() {
        assert_eq!(takagi_exact(&r(1, 3)), r(2, 3));
        assert_eq!(takagi_exact(&r(0, 1)), r(0, 1));
        assert_eq!(takagi_exact(&r(1, 2)), r(1, 2));
        assert_eq!(takagi_exact(&r(1, 6)), r(1, 2));
        assert_eq!(takagi_exact(&r(1, 4)), r(1, 2));
        // T(1/5) = 1/5 + T(2/5)/2
        assert_eq!(takagi_exact(&r(1, 5)), r(8, 15));
    }

    #[test]
    fn exact_sits_in_every_certified_bracket() {
        for (p, q) in [(1, 3), (1, 5), (3, 7), (5, 12), (11, 13), (-2, 9), (17, 4)] {
            let t = takagi_exact(&r(p, q));
            for n in 1..50 {
                assert!(takagi_certified(&r(p, q), n).contains(&t), "{p}/{q} n={n}");
            }
            // The bracket eventually pins the value to well below its width.
            let c = takagi_certified(&r(p, q), 60);
            assert!(c.lower() <= t && t <= c.upper());
        }
    }

    #[test]
    fn certified_examples() {
        let c = takagi_certified(&r(0, 1), 7);
        assert_eq!((c.value, c.error_bound), (r(0, 1), r(1, 128)));
        let c = takagi_certified(&r(1, 2), 1);
        assert_eq!((c.value.clone(), c.error_bound.clone()), (r(1, 2), r(1, 2)));
        assert!(c.contains(&r(1, 2)));
        assert!((takagi_certified(&r(1, 3), 10).value - r(2, 3)) <= inv_pow2(10));
    }

    #[test]
    fn split_examples() {
        let s = split_tail(&e(1, 3), 1);
        assert_eq!(
            (s.head_value.clone(), s.tail_value.clone()),
            (r(0, 1), r(2, 3))
        );
        let s = split_tail(&e(1, 2), 2);
        assert_eq!(
            (s.head_value.clone(), s.tail_value.clone()),
            (r(1, 2), r(0, 1))
        );
        let s = split_tail(&e(1, 5), 2);
        assert_eq!(s.tail_value, r(1, 3));
        assert_eq!(s.rescaled_tail_value(), s.tail_value);
        assert_eq!(&s.head_point + &s.tail_point, r(1, 5));
    }
}
