//! The maximum set M, the alternating set A and the decomposition of
//! superdifferentiability points.
//!
//!     cargo run --example kahane_sets

use takagi::sets::{a_identity_member, max_value};
use takagi::{in_a, in_m, in_script_a, parse_point, takagi, DigitExpansion};

fn main() {
    println!("max T = {}", max_value());
    for s in ["1/3", "2/5", "1/5", "5/12", "11/12", "-7/5", "1/9"] {
        let e = DigitExpansion::from_rational(&parse_point(s).unwrap());
        let witness = in_script_a(&e)
            .map(|w| {
                format!(
                    "m = {}, {} + 2^-{} * {}",
                    w.m,
                    w.dyadic_part,
                    w.m - 1,
                    w.scaled_point
                )
            })
            .unwrap_or_else(|| "-".into());
        println!(
            "{s:>5}  T = {:<10} in M {:<5} in A {:<7} ScriptA {witness}",
            takagi(&e).to_string(),
            in_m(&e),
            format!("{:?}", in_a(&e)),
        );
    }

    println!("\nA-formula 4/(3 2^m) + k/2^(m-1), k = 0:");
    for m in 1..=6 {
        let x = a_identity_member(m, 0);
        let e = DigitExpansion::from_rational(&x);
        println!("  m = {m}: {x:<6} = {}", e);
    }
}
