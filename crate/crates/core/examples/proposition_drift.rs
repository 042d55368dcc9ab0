//! f_n(sqrt(eta)) - f_n(sqrt(eta1)) where eta1 differs from eta in finitely
//! many digits. The gap tends to zero.

use tu_lab::experiments::{dyadic_grid, proposition_drift};
use tu_lab::{ExactReal, Rat};

fn main() -> tu_lab::Result<()> {
    let eta = ExactReal::from(Rat::new(1, 3));
    let series = proposition_drift(&eta, &[2, 5, 9], &dyadic_grid(4, 14))?;
    println!("{}", series.label);
    for (n, v) in series.n_grid.iter().zip(&series.values) {
        println!("{n:>6}  {:>14}  {}", v.decimal, v.exact);
    }
    Ok(())
}
