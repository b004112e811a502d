//! The four-case classifier and the resulting super- and subdifferentials.
//!
//!     cargo run --example classify_superdifferential [POINT...]

use takagi::{
    classify, is_local_max, parse_point, slope_limits, subdifferential, superdifferential,
    DigitExpansion,
};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let points = if args.is_empty() {
        [
            "1/3", "2/3", "2/5", "1/5", "11/12", "19/24", "1/9", "1/7", "3/8",
        ]
        .map(String::from)
        .to_vec()
    } else {
        args
    };

    println!(
        "{:>6}  {:<14} {:<16} {:>2} {:>3}  {:<8} {:<5} limits",
        "x", "expansion", "case", "m", "c", "super", "sub"
    );
    for s in &points {
        let e = DigitExpansion::from_rational(&parse_point(s).unwrap());
        let class = classify(&e);
        let limits = match slope_limits(&e) {
            Ok(l) => format!("[{}, {}]", l.liminf, l.limsup),
            Err(_) => "-".into(),
        };
        println!(
            "{s:>6}  {:<14} {:<16} {:>2} {:>3}  {:<8} {:<5} {limits}{}",
            e.to_string(),
            class.case().as_str(),
            class.witness_m().map_or("-".into(), |m| m.to_string()),
            class.c_x().map_or("-".into(), |c| c.to_string()),
            superdifferential(&e).to_string(),
            subdifferential(&e).to_string(),
            if is_local_max(&e) { "  local max" } else { "" }
        );
    }
}
