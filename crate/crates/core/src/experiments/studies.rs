use num_bigint::BigUint;
use rayon::prelude::*;

use super::{dyadic_grid_upto, LimitSeries, SweepCell, SweepTable, Value};
use crate::difference::{partial_quotient, partial_term_h, ZeroCase};
use crate::digits::{flip_bit_u, flip_bits, prefix_bits};
use crate::error::{Error, Result};
use crate::exact::{ExactReal, Rat};

fn require_non_dyadic(x: &ExactReal, what: &str) -> Result<()> {
    if x.is_dyadic() {
        return Err(Error::DyadicBoundary {
            what: format!("{what} = {x}"),
        });
    }
    if !x.in_unit_interval() || x.cmp_dyadic(&Rat::zero()).is_eq() {
        return Err(Error::OutOfUnitInterval {
            value: x.to_string(),
        });
    }
    Ok(())
}

fn require_positive(grid: &[usize], what: &str) -> Result<()> {
    if grid.is_empty() || grid.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "{what} must be a nonempty list of positive integers"
        )));
    }
    Ok(())
}

/// `dh_n / du_r` at `(nu, nu with digit r flipped)` for every `r` and `n`.
///
/// Every cell is computed from scratch and independently of the others.
pub fn sweep_partial_diff(nu: &ExactReal, r_values: &[usize], n_grid: &[usize]) -> Result<SweepTable> {
    require_non_dyadic(nu, "nu")?;
    require_positive(r_values, "r values")?;
    require_positive(n_grid, "n grid")?;
    let perts = r_values
        .iter()
        .map(|&r| {
            let pert = flip_bit_u(nu, r)?;
            let du = pert.bit(r)? as i8 - nu.bit(r)? as i8;
            Ok((r, pert, du))
        })
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<_> = perts
        .iter()
        .flat_map(|p| n_grid.iter().map(move |&n| (p, n)))
        .collect();
    let cells = jobs
        .into_par_iter()
        .map(|((r, pert, du), n)| {
            let term = partial_term_h(nu, pert, *r, n)?;
            let ctx = ZeroCase {
                base: nu,
                pert,
                i: *r,
                n,
            };
            let quotient = partial_quotient(&term, *du, &ctx)?;
            Ok(SweepCell {
                r: *r,
                n,
                quotient: Value::from(quotient),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepTable {
        nu: nu.to_string(),
        r_values: r_values.to_vec(),
        n_grid: n_grid.to_vec(),
        cells,
    })
}

/// `f_n(sqrt(eta)) - f_n(sqrt(eta1))` where `eta1` is `eta` with the listed
/// digits flipped.
pub fn proposition_drift(eta: &ExactReal, flips: &[usize], n_grid: &[usize]) -> Result<LimitSeries> {
    require_non_dyadic(eta, "eta")?;
    require_positive(n_grid, "n grid")?;
    let eta1 = flip_bits(eta, flips)?;
    let top = *n_grid.iter().max().expect("nonempty");
    let ones0 = prefix_bits(&eta.sqrt()?, top)?.cumulative_ones();
    let ones1 = prefix_bits(&eta1.sqrt()?, top)?.cumulative_ones();
    let values = n_grid
        .iter()
        .map(|&n| Rat::new(ones0[n] as i64 - ones1[n] as i64, n as u64))
        .collect();
    let label = format!("f_n(sqrt({eta})) - f_n(sqrt({eta1}))");
    Ok(LimitSeries::new(label, n_grid.to_vec(), values))
}

/// `f_n` of the fractional part of `sqrt(s)` at every `n` of the grid.
pub fn normality_series(s: u64, n_grid: &[usize]) -> Result<LimitSeries> {
    require_positive(n_grid, "n grid")?;
    let omega = ExactReal::frac_sqrt(&BigUint::from(s))?;
    let top = *n_grid.iter().max().expect("nonempty");
    let ones = prefix_bits(&omega, top)?.cumulative_ones();
    let values = n_grid
        .iter()
        .map(|&n| Rat::new(ones[n] as u64, n as u64))
        .collect();
    Ok(LimitSeries::new(format!("f_n(frac(sqrt({s})))"), n_grid.to_vec(), values))
}

/// [`normality_series`] on the dyadic grid up to `n` for each `s`.
pub fn normality_scan(s_values: &[u64], n: usize) -> Result<Vec<LimitSeries>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let grid = dyadic_grid_upto(n);
    s_values
        .par_iter()
        .map(|&s| normality_series(s, &grid))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn rat(s: &str) -> ExactReal {
        ExactReal::from(r(s))
    }

    #[test]
    fn sweep_examples() {
        let t = sweep_partial_diff(&rat("1/3"), &[5], &[4, 10]).unwrap();
        assert_eq!(t.get(5, 10), Some(&r("-1/10")));
        assert_eq!(t.get(5, 4), Some(&r("0")));
        assert_eq!(t.cells.len(), 2);
    }

    #[test]
    fn sweep_rejects_dyadic() {
        assert!(matches!(
            sweep_partial_diff(&rat("1/2"), &[1], &[4]),
            Err(Error::DyadicBoundary { .. })
        ));
        assert!(sweep_partial_diff(&rat("1/3"), &[], &[4]).is_err());
    }

    #[test]
    fn drift_examples() {
        let s = proposition_drift(&rat("1/3"), &[], &[4, 8, 16]).unwrap();
        assert!(s.values.iter().all(|v| v.exact.is_zero()));
        let s = proposition_drift(&rat("1/3"), &[5], &[10]).unwrap();
        assert_eq!(s.get(10), Some(&r("1/10")));
    }

    #[test]
    fn normality_examples() {
        let series = normality_scan(&[2], 8).unwrap();
        assert_eq!(series[0].n_grid, vec![1, 2, 4, 8]);
        assert_eq!(series[0].get(8), Some(&r("1/2")));
        assert_eq!(series[0].get(2), Some(&r("1/2")));
        assert!(matches!(
            normality_scan(&[4], 8),
            Err(Error::PerfectSquareInput(_))
        ));
    }
}
