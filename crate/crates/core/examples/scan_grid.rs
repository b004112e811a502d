//! Scans a dyadic grid and writes CSV to stdout, the same rows as
//! `takagi scan --format csv`.
//!
//!     cargo run --example scan_grid -- [STEP]

use std::io;

use takagi::cli::{scan_grid, scan_rows, write_rows, ScanFormat};
use takagi::parse_point;

fn main() {
    let step = std::env::args().nth(1).unwrap_or_else(|| "1/16".into());
    let points = scan_grid(
        &parse_point("0").unwrap(),
        &parse_point("1").unwrap(),
        &parse_point(&step).unwrap(),
    )
    .unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(3);
    });
    let rows = scan_rows(&points, 8);
    write_rows(&rows, io::stdout().lock(), ScanFormat::Csv).unwrap();
}
