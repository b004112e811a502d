//! Dini derivative estimates from sampled difference quotients, next to
//! the exact mirror-quotient identities.
//!
//!     cargo run --example dini_oracle

use takagi::{
    dini_estimate, dyadic_quotient, mirror_quotient, parse_point, predicted_mirror_slope,
    superdifferential, DigitExpansion,
};

fn main() {
    for s in ["1/3", "2/3", "2/5", "1/5", "1/9", "1/2"] {
        let x = parse_point(s).unwrap();
        let est = dini_estimate(&x, 24, 16).unwrap();
        let e = DigitExpansion::from_rational(&x);
        println!(
            "{s:>4}: D+ ~ {:>9}  d- ~ {:>9}  diverges up {:<5}  superdiff {}",
            est.d_plus_decimal(4),
            est.d_minus_decimal(4),
            est.divergent_up,
            superdifferential(&e)
        );
    }

    let e = DigitExpansion::from_rational(&parse_point("1/5").unwrap());
    println!("\nmirror quotients at 1/5:");
    for n in 3..=10 {
        let mq = mirror_quotient(&e, n).unwrap();
        println!(
            "  n = {n:>2}  x' = {:<10} quotient {:>3}  predicted {:>3}",
            mq.mirror_point.to_string(),
            mq.quotient.to_string(),
            predicted_mirror_slope(&e, n).unwrap()
        );
    }

    // At a dyadic point the right quotient grows without bound.
    let e = DigitExpansion::from_rational(&parse_point("1/2").unwrap());
    let growth: Vec<String> = (4..=40)
        .step_by(6)
        .map(|p| dyadic_quotient(&e, p).unwrap().to_string())
        .collect();
    println!(
        "\nright quotients at 1/2, p = 4, 10, ..., 40: {}",
        growth.join(" ")
    );
}
