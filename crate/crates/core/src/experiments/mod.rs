//! Batch studies over many `(index, n)` pairs: decay of single-digit partial
//! differences, drift of the digit frequency under finitely many flips, and
//! digit-frequency scans of square roots. [`run_experiment`] adds request
//! validation, CSV/JSON output and a content-addressed cache.

mod request;
mod runner;
mod studies;

use serde::Serialize;

use crate::exact::Rat;

pub use request::{NumberSpec, Request};
pub use runner::{run_experiment, Manifest, RunOptions, RunOutput};
pub use studies::{normality_scan, normality_series, proposition_drift, sweep_partial_diff};

/// Powers of two `2^lo ..= 2^hi`.
pub fn dyadic_grid(lo_exp: u32, hi_exp: u32) -> Vec<usize> {
    (lo_exp..=hi_exp).map(|e| 1usize << e).collect()
}

/// Powers of two not exceeding `n`, followed by `n` itself if it is not one.
pub fn dyadic_grid_upto(n: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = (0..usize::BITS)
        .map(|e| 1usize << e)
        .take_while(|&p| p <= n)
        .collect();
    if grid.last() != Some(&n) && n > 0 {
        grid.push(n);
    }
    grid
}

/// A rational together with its decimal rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Value {
    pub exact: Rat,
    pub decimal: String,
}

impl From<Rat> for Value {
    fn from(exact: Rat) -> Self {
        let decimal = exact.to_decimal();
        Value { exact, decimal }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepCell {
    pub r: usize,
    pub n: usize,
    pub quotient: Value,
}

/// Partial differences of `h_n` with respect to single digits `u_r`, one
/// cell per `(r, n)`, ordered by `r` then `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepTable {
    pub nu: String,
    pub r_values: Vec<usize>,
    pub n_grid: Vec<usize>,
    pub cells: Vec<SweepCell>,
}

impl SweepTable {
    pub fn get(&self, r: usize, n: usize) -> Option<&Rat> {
        self.cells
            .iter()
            .find(|c| c.r == r && c.n == n)
            .map(|c| &c.quotient.exact)
    }
}

/// Finite samples of a sequence indexed by `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitSeries {
    pub label: String,
    pub n_grid: Vec<usize>,
    pub values: Vec<Value>,
}

impl LimitSeries {
    pub fn new(label: impl Into<String>, n_grid: Vec<usize>, values: Vec<Rat>) -> Self {
        assert_eq!(n_grid.len(), values.len());
        LimitSeries {
            label: label.into(),
            n_grid,
            values: values.into_iter().map(Value::from).collect(),
        }
    }

    pub fn get(&self, n: usize) -> Option<&Rat> {
        self.n_grid
            .iter()
            .position(|&m| m == n)
            .map(|k| &self.values[k].exact)
    }

    pub fn last(&self) -> Option<(usize, &Rat)> {
        Some((*self.n_grid.last()?, &self.values.last()?.exact))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(dyadic_grid(2, 5), vec![4, 8, 16, 32]);
        assert_eq!(dyadic_grid_upto(8), vec![1, 2, 4, 8]);
        assert_eq!(dyadic_grid_upto(10), vec![1, 2, 4, 8, 10]);
        assert!(dyadic_grid_upto(0).is_empty());
    }
}
