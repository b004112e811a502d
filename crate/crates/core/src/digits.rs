//! Eventually periodic binary expansions of rationals.
//!
//! Every rational `x` is written as `x = k + sum_{n>=1} a_n 2^-n` with
//! `k = floor(x)` and bits `a_n` that are eventually periodic. A
//! [`DigitExpansion`] stores `k`, the preperiod `a_1..a_P` and the period
//! `a_{P+1}..a_{P+L}` in canonical form:
//!
//! - the period is never all ones (such tails are folded into a carry),
//! - the period and preperiod are as short as possible.
//!
//! Dyadic rationals therefore always carry the terminating expansion, with
//! period `[0]`.
//!
//! The text form is `k.pre(per)` with every part written in binary, for
//! example `0.01(10)` for 5/12 and `-1.(10)` for -1/3.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction, always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A binary digit, `0` or `1`.
pub type Bit = u8;

/// `2^n` as a big integer.
pub fn pow2(n: usize) -> BigInt {
    BigInt::one() << n
}

/// `2^-n` as a rational.
pub fn inv_pow2(n: usize) -> Rational {
    Rational::new(BigInt::one(), pow2(n))
}

fn bits_to_int(bits: &[Bit]) -> BigInt {
    if bits.is_empty() {
        return BigInt::zero();
    }
    let mag = BigUint::from_radix_be(bits, 2).expect("bits are 0 or 1");
    BigInt::from_biguint(Sign::Plus, mag)
}

fn fractional(q: &Rational) -> Rational {
    q - q.floor()
}

/// Canonical binary expansion `k + 0.a_1 a_2 ...` of a rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitExpansion {
    int_part: BigInt,
    preperiod: Vec<Bit>,
    period: Vec<Bit>,
}

impl DigitExpansion {
    /// Builds an expansion from raw parts and normalizes it.
    ///
    /// Non-canonical input (an all-ones period, a period that is a repetition
    /// of a shorter word, a preperiod that absorbs part of the period) is
    /// accepted and brought to canonical form.
    pub fn new(int_part: BigInt, preperiod: Vec<Bit>, period: Vec<Bit>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidArgument("period must be nonempty".into()));
        }
        if preperiod.iter().chain(&period).any(|&b| b > 1) {
            return Err(Error::InvalidArgument("digits must be 0 or 1".into()));
        }
        let raw = DigitExpansion {
            int_part,
            preperiod,
            period,
        };
        Ok(Self::from_rational(&raw.to_rational()))
    }

    /// Canonical expansion of `q` with `int_part = floor(q)`.
    pub fn from_rational(q: &Rational) -> Self {
        let int_part = q.floor().to_integer();
        let frac = fractional(q);
        let num = frac.numer().to_biguint().expect("fraction is nonnegative");
        let den = frac.denom().to_biguint().expect("denominator is positive");
        let (preperiod, period) = long_division(&num, &den);
        DigitExpansion {
            int_part,
            preperiod,
            period,
        }
    }

    /// Exact value `k + 0.pre(per)`.
    pub fn to_rational(&self) -> Rational {
        let p = self.preperiod.len();
        let l = self.period.len();
        let cycle = pow2(l) - 1;
        let num = bits_to_int(&self.preperiod) * &cycle + bits_to_int(&self.period);
        let den = cycle << p;
        Rational::from_integer(self.int_part.clone()) + Rational::new(num, den)
    }

    pub fn int_part(&self) -> &BigInt {
        &self.int_part
    }

    pub fn preperiod(&self) -> &[Bit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Bit] {
        &self.period
    }

    /// Length `P` of the preperiod.
    pub fn preperiod_len(&self) -> usize {
        self.preperiod.len()
    }

    /// Length `L` of the period.
    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// True when the point lies on the dyadic grid.
    pub fn is_dyadic(&self) -> bool {
        self.period == [0]
    }

    /// Smallest `n` with `x` in `D_n = 2^-(n-1) Z`, for dyadic points.
    pub fn dyadic_level(&self) -> Option<usize> {
        self.is_dyadic().then(|| self.preperiod.len() + 1)
    }

    /// The bit `a_n`, for `n >= 1`.
    pub fn digit(&self, n: usize) -> Bit {
        assert!(n >= 1, "digits are indexed from 1");
        let p = self.preperiod.len();
        if n <= p {
            self.preperiod[n - 1]
        } else {
            self.period[(n - p - 1) % self.period.len()]
        }
    }

    /// The bits `a_1..=a_n`.
    pub fn digits(&self, n: usize) -> Vec<Bit> {
        (1..=n).map(|i| self.digit(i)).collect()
    }

    /// `sum_{j<m} a_j 2^-j`, the truncation of the fraction before index `m`.
    pub fn head_sum(&self, m: usize) -> Rational {
        assert!(m >= 1, "digits are indexed from 1");
        let bits = self.digits(m - 1);
        Rational::new(bits_to_int(&bits), pow2(m - 1))
    }

    /// `sum_{j>=n} a_j 2^-j` in closed form.
    pub fn tail_sum(&self, n: usize) -> Rational {
        assert!(n >= 1, "digits are indexed from 1");
        let p = self.preperiod.len();
        let l = self.period.len();
        let cycle = pow2(l) - 1;
        if n > p {
            let shift = (n - p - 1) % l;
            let mut rotated = self.period[shift..].to_vec();
            rotated.extend_from_slice(&self.period[..shift]);
            Rational::new(bits_to_int(&rotated), cycle << (n - 1))
        } else {
            let head = bits_to_int(&self.preperiod[n - 1..]) * &cycle;
            Rational::new(head + bits_to_int(&self.period), cycle << p)
        }
    }

    /// The point `2^(m-1) * sum_{j>=m} a_j 2^-j` in `[0, 1)`, whose digits are
    /// `a_m, a_{m+1}, ...`.
    pub fn shifted_tail(&self, m: usize) -> DigitExpansion {
        assert!(m >= 1, "digits are indexed from 1");
        let p = self.preperiod.len();
        let drop = m - 1;
        let (preperiod, period) = if drop <= p {
            (self.preperiod[drop..].to_vec(), self.period.clone())
        } else {
            let shift = (drop - p) % self.period.len();
            let mut rotated = self.period[shift..].to_vec();
            rotated.extend_from_slice(&self.period[..shift]);
            (Vec::new(), rotated)
        };
        DigitExpansion {
            int_part: BigInt::zero(),
            preperiod,
            period,
        }
    }

    /// The same digits with integer part zero.
    pub fn fractional_part(&self) -> DigitExpansion {
        DigitExpansion {
            int_part: BigInt::zero(),
            preperiod: self.preperiod.clone(),
            period: self.period.clone(),
        }
    }

    /// Maps `x` into `[0, 1)` without changing `T(x)`.
    ///
    /// Negative points are reflected first (`x -> -x`) and the flag reports
    /// it; under reflection left and right Dini data trade places and the
    /// superdifferential changes sign. Nonnegative points only lose their
    /// integer part.
    pub fn reduce_to_unit(&self) -> (DigitExpansion, bool) {
        let x = self.to_rational();
        if x.is_negative() {
            (Self::from_rational(&fractional(&-x)), true)
        } else {
            (self.fractional_part(), false)
        }
    }

    /// Consecutive points of `D_n` around a non-dyadic `x`.
    pub fn neighbor_bracket(&self, n: usize) -> Result<NeighborBracket> {
        if self.is_dyadic() {
            return Err(Error::DyadicPoint(self.to_string()));
        }
        NeighborBracket::around(&self.to_rational(), n)
    }
}

impl From<&Rational> for DigitExpansion {
    fn from(q: &Rational) -> Self {
        DigitExpansion::from_rational(q)
    }
}

/// Splits `num/den` (with `0 <= num < den`, in lowest terms) into preperiod
/// and period bits.
///
/// With `den = 2^s d`, `d` odd, the preperiod has exactly `s` bits and the
/// remainder sequence is purely periodic afterwards, so the period ends the
/// first time the remainder returns to its value after `s` steps.
fn long_division(num: &BigUint, den: &BigUint) -> (Vec<Bit>, Vec<Bit>) {
    let s = den.trailing_zeros().unwrap_or(0) as usize;
    if let (Some(r), Some(b)) = (num.to_u64(), den.to_u64()) {
        return long_division_small(r as u128, b as u128, s);
    }
    let mut r = num.clone();
    let next = |r: &mut BigUint| -> Bit {
        *r <<= 1usize;
        if &*r >= den {
            *r -= den;
            1
        } else {
            0
        }
    };
    let preperiod: Vec<Bit> = (0..s).map(|_| next(&mut r)).collect();
    let start = r.clone();
    let mut period = Vec::new();
    loop {
        period.push(next(&mut r));
        if r == start {
            break;
        }
    }
    (preperiod, period)
}

fn long_division_small(mut r: u128, b: u128, s: usize) -> (Vec<Bit>, Vec<Bit>) {
    let next = |r: &mut u128| -> Bit {
        *r <<= 1;
        if *r >= b {
            *r -= b;
            1
        } else {
            0
        }
    };
    let preperiod: Vec<Bit> = (0..s).map(|_| next(&mut r)).collect();
    let start = r;
    let mut period = Vec::new();
    loop {
        period.push(next(&mut r));
        if r == start {
            break;
        }
    }
    (preperiod, period)
}

fn write_bits(f: &mut fmt::Formatter<'_>, bits: &[Bit]) -> fmt::Result {
    for b in bits {
        write!(f, "{b}")?;
    }
    Ok(())
}

impl fmt::Display for DigitExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.int_part.is_negative() {
            write!(f, "-{:b}.", self.int_part.magnitude())?;
        } else {
            write!(f, "{:b}.", self.int_part.magnitude())?;
        }
        write_bits(f, &self.preperiod)?;
        f.write_str("(")?;
        write_bits(f, &self.period)?;
        f.write_str(")")
    }
}

fn parse_bits(token: &str, part: &str) -> Result<Vec<Bit>> {
    part.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse {
                token: token.to_string(),
                reason: format!("`{c}` is not a binary digit"),
            }),
        })
        .collect()
}

impl FromStr for DigitExpansion {
    type Err = Error;

    /// Parses `k.pre(per)`, `k.pre` (terminating) or `-k.pre(per)`, all in
    /// binary.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            token: s.to_string(),
            reason: reason.to_string(),
        };
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_str, frac_str) = body
            .split_once('.')
            .ok_or_else(|| bad("expected `k.pre(per)`"))?;
        if int_str.is_empty() {
            return Err(bad("missing integer part"));
        }
        let int_bits = parse_bits(s, int_str)?;
        let mut int_part = bits_to_int(&int_bits);
        if negative {
            int_part = -int_part;
        }
        let (pre_str, per_str) = match frac_str.split_once('(') {
            Some((pre, rest)) => {
                let per = rest
                    .strip_suffix(')')
                    .ok_or_else(|| bad("unterminated period"))?;
                if per.is_empty() {
                    return Err(bad("empty period"));
                }
                (pre, per)
            }
            None => (frac_str, "0"),
        };
        if pre_str.contains(')') {
            return Err(bad("unbalanced parenthesis"));
        }
        let preperiod = parse_bits(s, pre_str)?;
        let period = parse_bits(s, per_str)?;
        DigitExpansion::new(int_part, preperiod, period)
    }
}

/// Parses a point written as `p/q`, as an integer, or as an expansion
/// literal `k.pre(per)`.
pub fn parse_point(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.contains('.') {
        return Ok(s.parse::<DigitExpansion>()?.to_rational());
    }
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>().map_err(|_| Error::Parse {
            token: t.to_string(),
            reason: "not an integer".into(),
        })
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The cell `[x_n, y_n]` of `D_n` containing a non-dyadic point, with its
/// midpoint `c_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborBracket {
    /// `x_n`, the grid point of `D_n` just below `x`.
    pub left: Rational,
    /// `c_n = (x_n + y_n) / 2`, a point of `D_{n+1}`.
    pub center: Rational,
    /// `y_n = x_n + 2^-(n-1)`.
    pub right: Rational,
    pub level: usize,
}

impl NeighborBracket {
    fn around(x: &Rational, level: usize) -> Result<Self> {
        if level < 1 {
            return Err(Error::InvalidArgument("bracket level starts at 1".into()));
        }
        let scale = Rational::from_integer(pow2(level - 1));
        let left = (x * &scale).floor() / &scale;
        let width = inv_pow2(level - 1);
        let right = &left + &width;
        let center = &left + width / BigInt::from(2);
        Ok(NeighborBracket {
            left,
            center,
            right,
            level,
        })
    }

    pub fn width(&self) -> Rational {
        &self.right - &self.left
    }
}
