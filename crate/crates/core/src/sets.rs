//! Membership in the maximum set `M`, the countable set `A` and the set
//! `ScriptA` of superdifferentiability points.
//!
//! - `M`: `a_{2n-1} + a_{2n} = 1` for all `n >= 1`; exactly where `T = 2/3`.
//! - `A`: the digits alternate from some index on.
//! - `ScriptA`: the digit pairs starting at some index `m` are complementary,
//!   that is `ScriptA = union_m (D_m + 2^-(m-1) M)`.
//!
//! All tests are exact scans over one period window of the digit stream.
//! Membership is read off the floor-based digits of `x` itself. Reflecting
//! a non-dyadic point complements its digits, and every digit condition here
//! is invariant under complement with the same witness, so reducing to
//! `[0, 1)` first would not change any answer.

use std::fmt;

use num_bigint::BigInt;

use crate::differentials::{alternates_from, classify, pairs_complement_from, Classification};
use crate::digits::{pow2, DigitExpansion, Rational};
use crate::evaluator::{split_tail, takagi};

/// The maximum value of `T`.
pub fn max_value() -> Rational {
    Rational::new(2.into(), 3.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetId {
    M,
    A,
    ScriptA,
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetId::M => "M",
            SetId::A => "A",
            SetId::ScriptA => "ScriptA",
        })
    }
}

/// A membership certificate `x = dyadic_part + 2^-(m-1) scaled_point` with
/// `dyadic_part` in `D_m` and `scaled_point` in `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetWitness {
    pub set_id: SetId,
    pub m: usize,
    pub dyadic_part: Rational,
    pub scaled_point: Rational,
}

impl SetWitness {
    /// Rebuilds the point from its decomposition.
    pub fn recompose(&self) -> Rational {
        &self.dyadic_part + &self.scaled_point / Rational::from_integer(pow2(self.m - 1))
    }

    fn at(e: &DigitExpansion, set_id: SetId, m: usize) -> Self {
        let dyadic_part = Rational::from_integer(e.int_part().clone()) + e.head_sum(m);
        SetWitness {
            set_id,
            m,
            dyadic_part,
            scaled_point: e.shifted_tail(m).to_rational(),
        }
    }
}

/// `a_{2n-1} + a_{2n} = 1` for every `n >= 1`.
pub fn in_m(e: &DigitExpansion) -> bool {
    !e.is_dyadic() && pairs_complement_from(e, 1)
}

/// Minimal `m` with `a_n + a_{n+1} = 1` for all `n >= m`.
pub fn in_a(e: &DigitExpansion) -> Option<usize> {
    if e.is_dyadic() {
        return None;
    }
    (1..=e.preperiod_len() + 2 * e.period_len()).find(|&m| alternates_from(e, m))
}

/// Decomposition witness for `A`, at the minimal alternation index.
pub fn a_witness(e: &DigitExpansion) -> Option<SetWitness> {
    in_a(e).map(|m| SetWitness::at(e, SetId::A, m))
}

/// `4 / (3 2^m) + k / 2^(m-1)`, a point of `A` alternating from index `m`.
pub fn a_identity_member(m: usize, k: i64) -> Rational {
    assert!(m >= 1, "level starts at 1");
    Rational::new(4.into(), BigInt::from(3) * pow2(m)) + Rational::new(k.into(), pow2(m - 1))
}

/// Recovers `k` with `x = a_identity_member(m, k)`, if there is one.
pub fn a_identity_index(x: &Rational, m: usize) -> Option<i64> {
    let scaled = (x - a_identity_member(m, 0)) * Rational::from_integer(pow2(m - 1));
    let k = scaled.round();
    if k == scaled {
        num_traits::ToPrimitive::to_i64(&k.to_integer())
    } else {
        None
    }
}

/// Witness for nonempty superdifferential, with the scaled tail checked
/// to lie in `M`.
pub fn in_script_a(e: &DigitExpansion) -> Option<SetWitness> {
    let m = match classify(e) {
        Classification::TailAlternating { m, .. } | Classification::PairSumming { m, .. } => m,
        Classification::Dyadic | Classification::Irregular => return None,
    };
    let witness = SetWitness::at(e, SetId::ScriptA, m);
    debug_assert!(in_m(&DigitExpansion::from_rational(&witness.scaled_point)));
    Some(witness)
}

/// Witness for `M`, with `m = 1`: the integer part and the fraction.
pub fn m_witness(e: &DigitExpansion) -> Option<SetWitness> {
    in_m(e).then(|| SetWitness::at(e, SetId::M, 1))
}

/// All sets the point belongs to.
pub fn memberships(e: &DigitExpansion) -> Vec<SetWitness> {
    [m_witness(e), a_witness(e), in_script_a(e)]
        .into_iter()
        .flatten()
        .collect()
}

/// `T(x) = 2/3`.
pub fn max_value_check(e: &DigitExpansion) -> bool {
    takagi(e) == max_value()
}

/// Checks `T~_m(x) = 2^-(m-1) T(z)` for a `ScriptA` witness.
pub fn tail_scaling_holds(e: &DigitExpansion, witness: &SetWitness) -> bool {
    let split = split_tail(e, witness.m);
    let scale = Rational::from_integer(pow2(witness.m - 1));
    let z = DigitExpansion::from_rational(&witness.scaled_point);
    split.tail_value == takagi(&z) / scale && split.rescaled_tail_value() == split.tail_value
}
