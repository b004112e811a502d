//! Exact evaluation of the Takagi function `T(x) = sum_{n>=0} 2^-n phi(2^n x)`
//! and of its Fréchet super- and subdifferentials at rational points.
//!
//! - [`digits`]: canonical eventually periodic binary expansions.
//! - [`evaluator`]: `phi`, `g_k`, partial sums, closed-form `T`, certified
//!   brackets, and the head/tail split.
//! - [`differentials`]: digit slopes `G'_n`, the four-case classifier, the
//!   superdifferential, the subdifferential and exact quotient identities.
//! - [`dini`]: a numerical Dini-derivative oracle built only on evaluation.
//! - [`sets`]: the maximum set `M`, the set `A` and the set `ScriptA`.
//! - [`cli`]: the `takagi` command-line front end.
//!
//! ```
//! use takagi::{classify, superdifferential, takagi_exact, DigitExpansion, Rational};
//!
//! let third = Rational::new(1.into(), 3.into());
//! assert_eq!(takagi_exact(&third), Rational::new(2.into(), 3.into()));
//!
//! let e = DigitExpansion::from_rational(&third);
//! assert_eq!(e.to_string(), "0.(01)");
//! assert_eq!(superdifferential(&e).to_string(), "[0,1]");
//! assert_eq!(classify(&e).c_x(), Some(0));
//! ```

pub mod cli;
pub mod differentials;
pub mod digits;
pub mod dini;
pub mod error;
pub mod evaluator;
pub mod render;
pub mod sets;

pub use differentials::{
    classify, dyadic_quotient, g_prime, is_local_max, mirror_quotient, predicted_dyadic_slope,
    predicted_mirror_slope, slope_limits, slope_sum, subdifferential, superdifferential, Case,
    Classification, ExtendedInt, MirrorQuotient, SlopeLimits, Subdifferential, SuperdiffResult,
};
pub use digits::{parse_point, DigitExpansion, NeighborBracket, Rational};
pub use dini::{dini_estimate, DiniEstimate};
pub use error::{Error, Result};
pub use evaluator::{
    g_k, g_k_digit_formula, partial_sum, phi, split_tail, takagi, takagi_certified, takagi_exact,
    CertifiedValue, SplitTail,
};
pub use sets::{in_a, in_m, in_script_a, max_value_check, SetId, SetWitness};
