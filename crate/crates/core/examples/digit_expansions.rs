//! Canonical binary expansions and the neighbor brackets around a point.
//!
//!     cargo run --example digit_expansions

use takagi::{parse_point, DigitExpansion};

fn main() {
    for s in ["1/3", "1/6", "5/12", "1/9", "3/8", "-1/3", "7/3"] {
        let e = DigitExpansion::from_rational(&parse_point(s).unwrap());
        println!(
            "{s:>5} = {:<12} preperiod {} period {} dyadic {}",
            e.to_string(),
            e.preperiod_len(),
            e.period_len(),
            e.is_dyadic()
        );
    }

    // Literals parse back to the same rational.
    let e: DigitExpansion = "0.0(0011)".parse().unwrap();
    println!("0.0(0011) = {}", e.to_rational());

    let e = DigitExpansion::from_rational(&parse_point("2/5").unwrap());
    println!("digits of 2/5: {:?}", e.digits(12));
    for n in 1..=5 {
        let b = e.neighbor_bracket(n).unwrap();
        println!("n = {n}: {} < {} < {}", b.left, b.center, b.right);
    }
}
