//! Step-by-step decomposition of h_n(nu') - h_n(nu) when digits of nu are
//! flipped, plus the matching decomposition of one digit of omega^2.

use tu_lab::difference::{total_diff_h, total_diff_u};
use tu_lab::digits::{flip_bits, induced_deltas, perturb, total_diff_f, DigitDelta};
use tu_lab::{ExactReal, Rat};

fn main() -> tu_lab::Result<()> {
    let nu = ExactReal::from(Rat::new(1, 3));
    let pert = flip_bits(&nu, &[3, 5])?;
    let report = total_diff_h(&nu, &pert, 10, None)?;
    println!("nu = {nu}, nu' = {pert}, n = {}", report.n);
    for (i, t) in report.nonzero_terms() {
        println!("  step {i:>2}: {t}");
    }
    println!(
        "sum = {}, h_n(nu') - h_n(nu) = {}, cutoff observed {} / predicted {}",
        report.total, report.lhs_direct, report.observed_cutoff, report.predicted_cutoff
    );

    let omega = nu.sqrt()?;
    let dx = induced_deltas(&omega, &flip_bits(&omega, &[2, 4])?, 12)?;
    println!("\ndigit deltas of omega: {:?}", dx.iter().collect::<Vec<_>>());
    println!("f_12 change from deltas: {}", total_diff_f(&dx, 12)?);

    let dx = DigitDelta::from_pairs(&[(2, dx.get(2)), (4, dx.get(4))], 12)?;
    let moved = perturb(&omega, &dx)?;
    let u = total_diff_u(&omega, &dx, 3)?;
    println!("u_3 of omega^2 changes by {} (perturbed point {moved})", u.delta_u_r);
    println!("per-digit coefficients: {:?}", u.coeffs);
    Ok(())
}
