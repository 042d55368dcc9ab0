//! dh_n/du_r for nu = 1/3 on a dyadic grid of n: each column shrinks as n
//! grows.

use tu_lab::experiments::{dyadic_grid, sweep_partial_diff};
use tu_lab::{ExactReal, Rat};

fn main() -> tu_lab::Result<()> {
    let nu = ExactReal::from(Rat::new(1, 3));
    let rs: Vec<usize> = (1..=8).collect();
    let grid = dyadic_grid(4, 12);
    let table = sweep_partial_diff(&nu, &rs, &grid)?;
    print!("{:>6}", "n");
    for r in &rs {
        print!("{:>9}", format!("r={r}"));
    }
    println!();
    for &n in &grid {
        print!("{n:>6}");
        for &r in &rs {
            print!("{:>9.4}", table.get(r, n).expect("cell").to_f64());
        }
        println!();
    }
    Ok(())
}
