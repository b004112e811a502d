//! Slopes, the superdifferential classifier and exact difference quotients.
//!
//! Off the dyadic grid every `g_n` is differentiable with slope
//! `g'_n(x) = 1 - 2 a_n`, and `G'_n = g'_1 + ... + g'_n`. The Fréchet
//! superdifferential of `T` is decided from the digit stream alone:
//!
//! | case              | digit condition                                   | superdifferential          |
//! |-------------------|---------------------------------------------------|----------------------------|
//! | `Dyadic`          | `x` in `D`                                        | empty                      |
//! | `TailAlternating` | `a_n + a_{n+1} = 1` for all `n >= m`              | `c_x + [0,1]` or `c_x + [-1,0]` |
//! | `PairSumming`     | `a_{m+2i} + a_{m+2i+1} = 1` for all `i >= 0`      | `{c_x}`                    |
//! | `Irregular`       | neither                                           | empty                      |
//!
//! with `c_x = m - 1 - 2 sum_{j<m} a_j = G'_{m-1}(x)`. The subdifferential
//! is all of `R` on `D` and empty elsewhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::digits::{pow2, DigitExpansion, Rational};
use crate::error::{Error, Result};
use crate::evaluator::takagi_exact;

/// An integer or one of the two infinities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtendedInt {
    NegInfinity,
    Finite(i64),
    PosInfinity,
}

impl ExtendedInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtendedInt::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedInt::NegInfinity => f.write_str("-inf"),
            ExtendedInt::Finite(v) => write!(f, "{v}"),
            ExtendedInt::PosInfinity => f.write_str("+inf"),
        }
    }
}

/// `liminf` and `limsup` of `G'_n(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlopeLimits {
    pub liminf: ExtendedInt,
    pub limsup: ExtendedInt,
}

impl SlopeLimits {
    /// `limsup - liminf` when both are finite.
    pub fn gap(&self) -> Option<i64> {
        Some(self.limsup.finite()? - self.liminf.finite()?)
    }
}

/// Tag of the four mutually exclusive cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Dyadic,
    TailAlternating,
    PairSumming,
    Irregular,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::Dyadic => "Dyadic",
            Case::TailAlternating => "TailAlternating",
            Case::PairSumming => "PairSumming",
            Case::Irregular => "Irregular",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which case holds at a point, with the minimal witness index `m` and
/// the slope `c_x` it determines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Dyadic,
    TailAlternating { m: usize, c_x: i64 },
    PairSumming { m: usize, c_x: i64 },
    Irregular,
}

impl Classification {
    pub fn case(&self) -> Case {
        match self {
            Classification::Dyadic => Case::Dyadic,
            Classification::TailAlternating { .. } => Case::TailAlternating,
            Classification::PairSumming { .. } => Case::PairSumming,
            Classification::Irregular => Case::Irregular,
        }
    }

    pub fn witness_m(&self) -> Option<usize> {
        match *self {
            Classification::TailAlternating { m, .. } | Classification::PairSumming { m, .. } => {
                Some(m)
            }
            _ => None,
        }
    }

    pub fn c_x(&self) -> Option<i64> {
        match *self {
            Classification::TailAlternating { c_x, .. }
            | Classification::PairSumming { c_x, .. } => Some(c_x),
            _ => None,
        }
    }
}

/// The Fréchet superdifferential of `T` at a point.
///
/// Nonempty values always have integer endpoints, and intervals always have
/// unit length, so an interval is stored by its lower end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuperdiffResult {
    Empty,
    Singleton(i64),
    Interval { lo: i64 },
}

impl SuperdiffResult {
    pub fn interval(lo: i64) -> Self {
        SuperdiffResult::Interval { lo }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SuperdiffResult::Empty)
    }

    /// `(lo, hi)` for nonempty results.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        match *self {
            SuperdiffResult::Empty => None,
            SuperdiffResult::Singleton(c) => Some((c, c)),
            SuperdiffResult::Interval { lo } => Some((lo, lo + 1)),
        }
    }

    pub fn contains(&self, xi: i64) -> bool {
        self.bounds().is_some_and(|(lo, hi)| lo <= xi && xi <= hi)
    }
}

impl fmt::Display for SuperdiffResult {
    /// `empty`, `{c}` or `[lo,hi]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SuperdiffResult::Empty => f.write_str("empty"),
            SuperdiffResult::Singleton(c) => write!(f, "{{{c}}}"),
            SuperdiffResult::Interval { lo } => write!(f, "[{},{}]", lo, lo + 1),
        }
    }
}

/// The Fréchet subdifferential of `T` at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subdifferential {
    Empty,
    AllReals,
}

impl fmt::Display for Subdifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subdifferential::Empty => f.write_str("empty"),
            Subdifferential::AllReals => f.write_str("R"),
        }
    }
}

fn require_non_dyadic(e: &DigitExpansion) -> Result<()> {
    if e.is_dyadic() {
        Err(Error::DyadicPoint(e.to_string()))
    } else {
        Ok(())
    }
}

fn slope_of(bit: u8) -> i64 {
    1 - 2 * i64::from(bit)
}

/// `g'_n(x) = 1 - 2 a_n` off the dyadic grid.
pub fn g_prime(e: &DigitExpansion, n: usize) -> Result<i64> {
    require_non_dyadic(e)?;
    Ok(slope_of(e.digit(n)))
}

/// `G'_n(x) = sum_{k<=n} (1 - 2 a_k)` off the dyadic grid.
pub fn slope_sum(e: &DigitExpansion, n: usize) -> Result<i64> {
    require_non_dyadic(e)?;
    Ok(digit_slope_sum(e, n))
}

/// `sum_{k<=n} (1 - 2 a_k)` for any expansion. At dyadic points these are
/// the right-hand slopes of the terminating expansion.
fn digit_slope_sum(e: &DigitExpansion, n: usize) -> i64 {
    (1..=n).map(|k| slope_of(e.digit(k))).sum()
}

/// `liminf_n G'_n` and `limsup_n G'_n`.
///
/// A nonzero slope sum over one period sends `G'_n` to an infinity. When it
/// vanishes, `G'_{n+L} = G'_n` for `n >= P`, so one period window settles
/// both limits.
pub fn slope_limits(e: &DigitExpansion) -> Result<SlopeLimits> {
    require_non_dyadic(e)?;
    let drift: i64 = e.period().iter().map(|&b| slope_of(b)).sum();
    if drift > 0 {
        return Ok(SlopeLimits {
            liminf: ExtendedInt::PosInfinity,
            limsup: ExtendedInt::PosInfinity,
        });
    }
    if drift < 0 {
        return Ok(SlopeLimits {
            liminf: ExtendedInt::NegInfinity,
            limsup: ExtendedInt::NegInfinity,
        });
    }
    let p = e.preperiod_len();
    let mut sum = digit_slope_sum(e, p);
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    for n in p + 1..=p + e.period_len() {
        sum += slope_of(e.digit(n));
        lo = lo.min(sum);
        hi = hi.max(sum);
    }
    Ok(SlopeLimits {
        liminf: ExtendedInt::Finite(lo),
        limsup: ExtendedInt::Finite(hi),
    })
}

/// `c_x = m - 1 - 2 sum_{j<m} a_j`.
pub fn c_x(e: &DigitExpansion, m: usize) -> i64 {
    digit_slope_sum(e, m - 1)
}

/// First index past which the digit pairs `(a_n, a_{n+1})` repeat with
/// period `L`.
fn periodic_start(e: &DigitExpansion, m: usize) -> usize {
    m.max(e.preperiod_len() + 1)
}

/// `a_n + a_{n+1} = 1` for every `n >= m`.
pub fn alternates_from(e: &DigitExpansion, m: usize) -> bool {
    assert!(m >= 1, "witness index starts at 1");
    let end = periodic_start(e, m) + e.period_len();
    (m..end).all(|n| e.digit(n) + e.digit(n + 1) == 1)
}

/// `a_{m+2i} + a_{m+2i+1} = 1` for every `i >= 0`.
pub fn pairs_complement_from(e: &DigitExpansion, m: usize) -> bool {
    assert!(m >= 1, "witness index starts at 1");
    let end = periodic_start(e, m) + e.period_len().lcm(&2);
    (m..end)
        .step_by(2)
        .all(|n| e.digit(n) + e.digit(n + 1) == 1)
}

/// Candidate witnesses `1..=P + 2L`; both digit conditions only depend on
/// the shift of the stream modulo the period and parity.
fn witness_range(e: &DigitExpansion) -> std::ops::RangeInclusive<usize> {
    1..=e.preperiod_len() + 2 * e.period_len()
}

/// Decides which case holds, reporting the minimal witness.
pub fn classify(e: &DigitExpansion) -> Classification {
    if e.is_dyadic() {
        return Classification::Dyadic;
    }
    if let Some(m) = witness_range(e).find(|&m| alternates_from(e, m)) {
        return Classification::TailAlternating { m, c_x: c_x(e, m) };
    }
    if let Some(m) = witness_range(e).find(|&m| pairs_complement_from(e, m)) {
        return Classification::PairSumming { m, c_x: c_x(e, m) };
    }
    Classification::Irregular
}

/// The superdifferential computed from a given witness index, or `None` when
/// `m` is not a valid witness at this point.
pub fn superdifferential_for_witness(e: &DigitExpansion, m: usize) -> Option<SuperdiffResult> {
    if e.is_dyadic() {
        return None;
    }
    let c = c_x(e, m);
    if alternates_from(e, m) {
        let lo = if e.digit(m) == 0 { c } else { c - 1 };
        Some(SuperdiffResult::interval(lo))
    } else if pairs_complement_from(e, m)
        && !matches!(classify(e), Classification::TailAlternating { .. })
    {
        Some(SuperdiffResult::Singleton(c))
    } else {
        None
    }
}

/// The Fréchet superdifferential of `T`.
pub fn superdifferential(e: &DigitExpansion) -> SuperdiffResult {
    superdiff_from(e, &classify(e))
}

fn superdiff_from(e: &DigitExpansion, class: &Classification) -> SuperdiffResult {
    match *class {
        Classification::Dyadic | Classification::Irregular => SuperdiffResult::Empty,
        Classification::TailAlternating { m, c_x } => {
            if e.digit(m) == 0 {
                SuperdiffResult::interval(c_x)
            } else {
                SuperdiffResult::interval(c_x - 1)
            }
        }
        Classification::PairSumming { c_x, .. } => SuperdiffResult::Singleton(c_x),
    }
}

/// The Fréchet subdifferential of `T`: all of `R` on the dyadic grid, empty
/// elsewhere.
pub fn subdifferential(e: &DigitExpansion) -> Subdifferential {
    if e.is_dyadic() {
        Subdifferential::AllReals
    } else {
        Subdifferential::Empty
    }
}

/// True when `T` has a local maximum at the point.
///
/// That happens exactly when the point has a witness `m` with `c_x = 0`.
/// For a tail-alternating point the witnesses `m` and `m + 1` give the two
/// endpoints of the superdifferential, so the test reads "0 lies in the
/// superdifferential".
pub fn is_local_max(e: &DigitExpansion) -> bool {
    superdifferential(e).contains(0)
}

/// The left mirror point `x'_n = 2 x_n - x` and the exact quotient
/// `(T(x'_n) - T(x)) / (x'_n - x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorQuotient {
    pub level: usize,
    pub mirror_point: Rational,
    pub quotient: Rational,
}

pub fn mirror_quotient(e: &DigitExpansion, n: usize) -> Result<MirrorQuotient> {
    require_non_dyadic(e)?;
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "mirror level {n} is below 3"
        )));
    }
    let x = e.to_rational();
    let bracket = e.neighbor_bracket(n)?;
    let two = Rational::from_integer(BigInt::from(2));
    let mirror_point = &two * &bracket.left - &x;
    let quotient = (takagi_exact(&mirror_point) - takagi_exact(&x)) / (&mirror_point - &x);
    Ok(MirrorQuotient {
        level: n,
        mirror_point,
        quotient,
    })
}

/// The value the mirror quotient at level `n` takes, read off the digits.
///
/// With `j` the last index `< n` carrying `a_j = 1` we have
/// `x_{j} < x_{j+1} = ... = x_n`, and the quotient is
/// `G'_{j-1}(x) = G'_j(x) + 1`. With no such `j` the mirror point is
/// `2 floor(x) - x` and the quotient is `0`.
pub fn predicted_mirror_slope(e: &DigitExpansion, n: usize) -> Result<i64> {
    require_non_dyadic(e)?;
    Ok(match (1..n).rev().find(|&j| e.digit(j) == 1) {
        Some(j) => digit_slope_sum(e, j - 1),
        None => 0,
    })
}

/// The right mirror point `2 y_n - x` and its quotient. By evenness of `T`
/// this is the left mirror quotient of `-x`, negated.
pub fn right_mirror_quotient(e: &DigitExpansion, n: usize) -> Result<MirrorQuotient> {
    require_non_dyadic(e)?;
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "mirror level {n} is below 3"
        )));
    }
    let x = e.to_rational();
    let bracket = e.neighbor_bracket(n)?;
    let two = Rational::from_integer(BigInt::from(2));
    let mirror_point = &two * &bracket.right - &x;
    let quotient = (takagi_exact(&mirror_point) - takagi_exact(&x)) / (&mirror_point - &x);
    Ok(MirrorQuotient {
        level: n,
        mirror_point,
        quotient,
    })
}

/// `(T(x + 2^-p) - T(x)) 2^p` at a dyadic point.
pub fn dyadic_quotient(e: &DigitExpansion, p: usize) -> Result<Rational> {
    let level = dyadic_precondition(e, p)?;
    debug_assert!(p > level);
    let x = e.to_rational();
    let scale = Rational::from_integer(pow2(p));
    let step = Rational::new(1.into(), pow2(p));
    Ok((takagi_exact(&(&x + &step)) - takagi_exact(&x)) * scale)
}

/// `sum_{j<=n} g'_j(x) + (p - n)` with right-hand slopes of the terminating
/// expansion and `n` the dyadic level of `x`.
pub fn predicted_dyadic_slope(e: &DigitExpansion, p: usize) -> Result<i64> {
    let level = dyadic_precondition(e, p)?;
    Ok(digit_slope_sum(e, level) + (p - level) as i64)
}

fn dyadic_precondition(e: &DigitExpansion, p: usize) -> Result<usize> {
    let level = e
        .dyadic_level()
        .ok_or_else(|| Error::NotDyadic(e.to_string()))?;
    if p <= level {
        return Err(Error::InvalidArgument(format!(
            "step exponent {p} must exceed the dyadic level {level}"
        )));
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::format_rational;

    fn e(p: i64, q: i64) -> DigitExpansion {
        DigitExpansion::from(&Rational::new(p.into(), q.into()))
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn slopes() {
        assert_eq!(g_prime(&e(1, 3), 1), Ok(1));
        assert_eq!(g_prime(&e(1, 3), 2), Ok(-1));
        assert_eq!(g_prime(&e(2, 3), 1), Ok(-1));
        assert!(g_prime(&e(1, 2), 1).is_err());
        assert_eq!(slope_sum(&e(1, 3), 4), Ok(0));
        assert_eq!(slope_sum(&e(1, 3), 3), Ok(1));
        assert_eq!(slope_sum(&e(1, 9), 6), Ok(0));
    }

    #[test]
    fn limits() {
        let lim = slope_limits(&e(1, 3)).unwrap();
        assert_eq!(
            (lim.liminf, lim.limsup),
            (ExtendedInt::Finite(0), ExtendedInt::Finite(1))
        );
        let lim = slope_limits(&e(1, 9)).unwrap();
        assert_eq!(
            (lim.liminf, lim.limsup),
            (ExtendedInt::Finite(0), ExtendedInt::Finite(3))
        );
        assert_eq!(
            slope_limits(&e(1, 7)).unwrap().liminf,
            ExtendedInt::PosInfinity
        );
        assert_eq!(
            slope_limits(&e(6, 7)).unwrap().limsup,
            ExtendedInt::NegInfinity
        );
        assert!(slope_limits(&e(0, 1)).is_err());
    }

    #[test]
    fn limits_ignore_the_preperiod() {
        // 0.0000011(10): G' climbs to 5 in the prefix, then oscillates in [2, 3].
        let x = DigitExpansion::new(0.into(), vec![0, 0, 0, 0, 0, 1, 1], vec![1, 0]).unwrap();
        let lim = slope_limits(&x).unwrap();
        assert_eq!(
            (lim.liminf, lim.limsup),
            (ExtendedInt::Finite(2), ExtendedInt::Finite(3))
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&e(3, 4)), Classification::Dyadic);
        assert_eq!(
            classify(&e(1, 3)),
            Classification::TailAlternating { m: 1, c_x: 0 }
        );
        assert_eq!(
            classify(&e(1, 5)),
            Classification::PairSumming { m: 2, c_x: 1 }
        );
        assert_eq!(classify(&e(1, 9)), Classification::Irregular);
        assert_eq!(
            classify(&e(11, 12)),
            Classification::TailAlternating { m: 3, c_x: -2 }
        );
    }

    #[test]
    fn superdifferential_examples() {
        assert_eq!(superdifferential(&e(1, 3)), SuperdiffResult::interval(0));
        assert_eq!(superdifferential(&e(2, 3)), SuperdiffResult::interval(-1));
        assert_eq!(superdifferential(&e(2, 5)), SuperdiffResult::Singleton(0));
        assert_eq!(superdifferential(&e(1, 5)), SuperdiffResult::Singleton(1));
        assert_eq!(superdifferential(&e(1, 9)), SuperdiffResult::Empty);
        assert_eq!(superdifferential(&e(1, 2)), SuperdiffResult::Empty);
        assert_eq!(superdifferential(&e(1, 3)).to_string(), "[0,1]");
        assert_eq!(superdifferential(&e(1, 5)).to_string(), "{1}");
    }

    #[test]
    fn witness_independence() {
        for (p, q) in [
            (1, 3),
            (2, 3),
            (2, 5),
            (1, 5),
            (11, 12),
            (5, 12),
            (7, 10),
            (-3, 5),
        ] {
            let x = e(p, q);
            let class = classify(&x);
            let m = class.witness_m().unwrap();
            let sd = superdifferential(&x);
            let step = if class.case() == Case::TailAlternating {
                1
            } else {
                2
            };
            for k in 0..6 {
                assert_eq!(
                    superdifferential_for_witness(&x, m + k * step),
                    Some(sd),
                    "{p}/{q}"
                );
            }
        }
    }

    #[test]
    fn subdifferential_examples() {
        assert_eq!(subdifferential(&e(1, 2)), Subdifferential::AllReals);
        assert_eq!(subdifferential(&e(1, 3)), Subdifferential::Empty);
        assert_eq!(subdifferential(&e(0, 1)), Subdifferential::AllReals);
    }

    #[test]
    fn local_max_examples() {
        assert!(is_local_max(&e(1, 3)));
        assert!(!is_local_max(&e(1, 5)));
        assert!(!is_local_max(&e(1, 2)));
        // 0.110(01): minimal witness m = 4 has c_x = -1, witness 5 has c_x = 0.
        let x = DigitExpansion::new(0.into(), vec![1, 1, 0], vec![0, 1]).unwrap();
        assert_eq!(
            classify(&x),
            Classification::TailAlternating { m: 4, c_x: -1 }
        );
        assert!(is_local_max(&x));
    }

    #[test]
    fn mirror_examples() {
        let mq = mirror_quotient(&e(1, 3), 3).unwrap();
        assert_eq!(format_rational(&mq.mirror_point), "1/6");
        assert_eq!(mq.quotient, r(1, 1));
        assert_eq!(predicted_mirror_slope(&e(1, 3), 3), Ok(1));
        assert_eq!(mirror_quotient(&e(1, 3), 5).unwrap().quotient, r(1, 1));
        assert_eq!(mirror_quotient(&e(2, 5), 3).unwrap().quotient, r(1, 1));
        assert!(mirror_quotient(&e(1, 2), 3).is_err());
        assert!(mirror_quotient(&e(1, 3), 2).is_err());
    }

    #[test]
    fn dyadic_examples() {
        assert_eq!(dyadic_quotient(&e(0, 1), 3), Ok(r(3, 1)));
        assert_eq!(dyadic_quotient(&e(0, 1), 10), Ok(r(10, 1)));
        assert_eq!(predicted_dyadic_slope(&e(0, 1), 10), Ok(10));
        let half = e(1, 2);
        assert_eq!(
            dyadic_quotient(&half, 4).unwrap(),
            Rational::from_integer(predicted_dyadic_slope(&half, 4).unwrap().into())
        );
        assert!(matches!(
            dyadic_quotient(&e(1, 3), 4),
            Err(Error::NotDyadic(_))
        ));
        assert!(dyadic_quotient(&half, 2).is_err());
    }
}
