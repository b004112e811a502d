//! Numerical Dini-derivative oracle.
//!
//! Estimates `d_-T(x) = liminf_{h->0-} (T(x+h) - T(x)) / h` and
//! `D^+T(x) = limsup_{h->0+} (T(x+h) - T(x)) / h` from exact difference
//! quotients at a finite set of small steps. It only calls the evaluator and
//! never looks at the digit classifier, so it can cross-check it.
//!
//! Sampled steps at depth `d` and width `w`:
//!
//! - the grid `h = +-j 2^-d` for `1 <= j <= w`,
//! - for non-dyadic `x`, the mirror points `2 x_n - x` (left) and
//!   `2 y_n - x` (right) of the level-`n` brackets with `d/2 < n <= d`.
//!
//! Shallow brackets are skipped: a quotient over a long step says nothing
//! about the one-sided limits.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::differentials::{mirror_quotient, right_mirror_quotient};
use crate::digits::{inv_pow2, DigitExpansion, Rational};
use crate::error::{Error, Result};
use crate::evaluator::takagi_exact;
use crate::render::to_decimal;

/// Tuning knobs for [`dini_estimate_with`].
#[derive(Clone, Debug, PartialEq)]
pub struct DiniConfig {
    /// A side is flagged divergent when its quotient at `h = +-2^-p` moves
    /// strictly outward over `p = d-2, d-1, d` and ends beyond this value.
    pub divergence_threshold: Rational,
}

impl Default for DiniConfig {
    fn default() -> Self {
        DiniConfig {
            divergence_threshold: Rational::from_integer(10.into()),
        }
    }
}

/// Extremal sampled quotients on each side of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiniEstimate {
    /// Smallest sampled left quotient, estimating `d_-T(x)`.
    pub d_minus: Rational,
    /// Largest sampled right quotient, estimating `D^+T(x)`.
    pub d_plus: Rational,
    pub depth: usize,
    pub width: usize,
    pub samples: usize,
    /// Right quotients grow without bound (`D^+T(x) = +inf`).
    pub divergent_up: bool,
    /// Left quotients fall without bound (`d_-T(x) = -inf`).
    pub divergent_down: bool,
}

impl DiniEstimate {
    pub fn d_minus_decimal(&self, digits: usize) -> String {
        to_decimal(&self.d_minus, digits)
    }

    pub fn d_plus_decimal(&self, digits: usize) -> String {
        to_decimal(&self.d_plus, digits)
    }

    pub fn d_minus_f64(&self) -> f64 {
        self.d_minus.to_f64().unwrap_or(f64::NAN)
    }

    pub fn d_plus_f64(&self) -> f64 {
        self.d_plus.to_f64().unwrap_or(f64::NAN)
    }
}

pub fn dini_estimate(q: &Rational, depth: usize, width: usize) -> Result<DiniEstimate> {
    dini_estimate_with(q, depth, width, &DiniConfig::default())
}

pub fn dini_estimate_with(
    q: &Rational,
    depth: usize,
    width: usize,
    config: &DiniConfig,
) -> Result<DiniEstimate> {
    if depth < 4 {
        return Err(Error::InvalidArgument(format!("depth {depth} is below 4")));
    }
    if width < 2 {
        return Err(Error::InvalidArgument(format!("width {width} is below 2")));
    }
    let t_x = takagi_exact(q);
    let quotient = |h: &Rational| (takagi_exact(&(q + h)) - &t_x) / h;

    let unit = inv_pow2(depth);
    let mut left_steps = Vec::with_capacity(width);
    let mut right_steps = Vec::with_capacity(width);
    for j in 1..=width {
        let h = &unit * Rational::from_integer(j.into());
        left_steps.push(-h.clone());
        right_steps.push(h);
    }
    let left_grid = left_steps.par_iter().map(quotient);
    let right_grid = right_steps.par_iter().map(quotient);

    let e = DigitExpansion::from_rational(q);
    let mirror_levels: Vec<usize> = if e.is_dyadic() {
        Vec::new()
    } else {
        (depth / 2 + 1..=depth).filter(|&n| n >= 3).collect()
    };
    let left_mirrors = mirror_levels
        .par_iter()
        .map(|&n| mirror_quotient(&e, n).map(|m| m.quotient))
        .collect::<Result<Vec<_>>>()?;
    let right_mirrors = mirror_levels
        .par_iter()
        .map(|&n| right_mirror_quotient(&e, n).map(|m| m.quotient))
        .collect::<Result<Vec<_>>>()?;

    let d_minus = left_grid
        .chain(left_mirrors.into_par_iter())
        .min()
        .expect("width >= 2");
    let d_plus = right_grid
        .chain(right_mirrors.into_par_iter())
        .max()
        .expect("width >= 2");

    let probe =
        |p: usize, sign: i64| quotient(&(inv_pow2(p) * Rational::from_integer(sign.into())));
    let ups: Vec<Rational> = (depth - 2..=depth).map(|p| probe(p, 1)).collect();
    let downs: Vec<Rational> = (depth - 2..=depth).map(|p| probe(p, -1)).collect();
    let threshold = &config.divergence_threshold;
    let divergent_up = ups.windows(2).all(|w| w[0] < w[1]) && ups[2] > *threshold;
    let divergent_down = downs.windows(2).all(|w| w[0] > w[1]) && downs[2] < -threshold.clone();

    Ok(DiniEstimate {
        d_minus,
        d_plus,
        depth,
        width,
        samples: 2 * width + 2 * mirror_levels.len(),
        divergent_up,
        divergent_down,
    })
}
