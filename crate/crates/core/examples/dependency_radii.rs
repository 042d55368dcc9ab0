//! How many digits of omega fix the first r digits of omega^2, and how many
//! digits of nu fix the first n digits of sqrt(nu).

use tu_lab::dependency::{dep_radius_m, dep_radius_n};
use tu_lab::{ExactReal, Rat};

fn main() -> tu_lab::Result<()> {
    let nu = ExactReal::from(Rat::new(1, 3));
    let omega = nu.sqrt()?;
    println!(" k  N(sqrt(1/3), k)  m(1/3, k)");
    for k in 1..=16 {
        let big_n = dep_radius_n(&omega, k, None)?;
        let m = dep_radius_m(&nu, k, None)?;
        println!("{k:>2}  {:>15}  {:>9}", big_n.radius, m.radius);
    }

    let r = dep_radius_n(&omega, 1, None)?;
    println!("\ncell for r = 1: [{}, {})", r.interval_lo, r.interval_hi);
    println!("{}", serde_json::to_string_pretty(&r)?);

    let half = ExactReal::sqrt_of_rat(Rat::new(1, 2))?;
    match dep_radius_n(&half, 1, None) {
        Err(e) => println!("\nsqrt(1/2): {e}"),
        Ok(r) => println!("\nsqrt(1/2): radius {}", r.radius),
    }
    Ok(())
}
