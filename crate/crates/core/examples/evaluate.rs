//! Exact values, certified brackets and the head/tail split.
//!
//!     cargo run --example evaluate

use takagi::render::to_decimal;
use takagi::{parse_point, split_tail, takagi_certified, takagi_exact, DigitExpansion};

fn main() {
    for s in ["1/3", "2/5", "1/5", "1/7", "3/8", "-7/5", "0.1(10)"] {
        let x = parse_point(s).unwrap();
        let t = takagi_exact(&x);
        println!("T({s:>7}) = {t:<14} ~ {}", to_decimal(&t, 12));
    }

    // Truncated sums come with a rigorous error bound.
    let x = parse_point("1/7").unwrap();
    let exact = takagi_exact(&x);
    for n in [4, 8, 16, 32] {
        let c = takagi_certified(&x, n);
        println!(
            "n = {n:>2}: [{}, {}] contains exact: {}",
            to_decimal(&c.lower(), 10),
            to_decimal(&c.upper(), 10),
            c.contains(&exact)
        );
    }

    let e = DigitExpansion::from_rational(&parse_point("1/5").unwrap());
    let s = split_tail(&e, 2);
    println!(
        "T(1/5) = {} (head at {}) + {} (tail at {})",
        s.head_value, s.head_point, s.tail_value, s.tail_point
    );
}
