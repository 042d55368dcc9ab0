//! Frequency of ones among the digits of frac(sqrt(s)).
//!
//! cargo run --release --example normality_scan -- [n]

use tu_lab::experiments::normality_scan;

fn main() -> tu_lab::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1 << 14);
    let s_values = [2, 3, 5, 6, 7, 8, 10];
    for series in normality_scan(&s_values, n)? {
        let (top, f) = series.last().expect("nonempty grid");
        let dev = (f.to_f64() - 0.5).abs();
        println!("{:<20} f_{top} = {:.6}  |f - 1/2| = {dev:.6}", series.label, f.to_f64());
    }
    Ok(())
}
