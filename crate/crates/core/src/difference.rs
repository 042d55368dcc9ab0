//! Partial and total differences of digit functions.
//!
//! A change of a whole digit sequence is split into one step per index: step
//! `i` moves digit `i` from its base value to its perturbed value while digits
//! before `i` keep their base values and digits after `i` already carry their
//! perturbed values. The steps telescope to the total change. The two points of
//! step `i` are the *hybrid points* of this module.
//!
//! When the digit does not change at step `i`, the quotient
//! `term_i / delta_i` is defined as the step evaluated as though the digit
//! went from 0 to 1.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::dependency::cutoff_for_sum;
use crate::digits::{h_n, induced_deltas, perturb, prefix_bits, DigitDelta};
use crate::error::{Error, Result};
use crate::exact::{ExactReal, Rat};

/// Which side digit `i` of a hybrid point comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitSource {
    Base,
    Pert,
}

/// `pert - sum_{j <= i0} delta_j 2^-j`: digits `1..=i0` from `base`, the rest
/// from `pert`, with `i0 = i` for [`BitSource::Base`] and `i - 1` otherwise.
pub fn hybrid_point(
    base: &ExactReal,
    pert: &ExactReal,
    i: usize,
    bit_i_from: BitSource,
) -> Result<ExactReal> {
    let i0 = match bit_i_from {
        BitSource::Base => i,
        BitSource::Pert => i - 1,
    };
    let du = induced_deltas(base, pert, i0)?;
    hybrid_from_deltas(pert, &du, i0)
}

fn hybrid_from_deltas(pert: &ExactReal, du: &DigitDelta, i0: usize) -> Result<ExactReal> {
    let shift = du.weighted_sum(i0);
    if shift.is_zero() {
        return Ok(pert.clone());
    }
    pert.add_signed_dyadic(&-shift)
}

/// `point` with digit `i` set to `bit`, no carries.
fn force_bit(point: &ExactReal, i: usize, bit: u8) -> Result<ExactReal> {
    let current = point.bit(i)?;
    if current == bit {
        return Ok(point.clone());
    }
    let sign = i32::from(bit) - i32::from(current);
    point.add_signed_dyadic(&Rat::dyadic(sign, i))
}

/// `h_n` at the pert-side hybrid minus `h_n` at the base-side hybrid.
pub fn partial_term_h(base: &ExactReal, pert: &ExactReal, i: usize, n: usize) -> Result<Rat> {
    let du = induced_deltas(base, pert, i)?;
    if du.get(i) == 0 {
        return Ok(Rat::zero());
    }
    let hi = hybrid_from_deltas(pert, &du, i - 1)?;
    let lo = hybrid_from_deltas(pert, &du, i)?;
    Ok(h_n(&hi, n)? - h_n(&lo, n)?)
}

/// Data for evaluating a step whose digit did not change.
#[derive(Clone, Copy, Debug)]
pub struct ZeroCase<'a> {
    pub base: &'a ExactReal,
    pub pert: &'a ExactReal,
    pub i: usize,
    pub n: usize,
}

impl ZeroCase<'_> {
    /// Step `i` of `h_n` with digit `i` forced to 0 on the base side and 1 on
    /// the perturbed side.
    pub fn evaluate(&self) -> Result<Rat> {
        let du = induced_deltas(self.base, self.pert, self.i)?;
        let lo = hybrid_from_deltas(self.pert, &du, self.i)?;
        let hi = hybrid_from_deltas(self.pert, &du, self.i - 1)?;
        forced_step(&hi, &lo, self.i, self.n)
    }
}

fn forced_step(hi: &ExactReal, lo: &ExactReal, i: usize, n: usize) -> Result<Rat> {
    let one = force_bit(hi, i, 1)?;
    let zero = force_bit(lo, i, 0)?;
    Ok(h_n(&one, n)? - h_n(&zero, n)?)
}

/// `term / delta` for `delta = +-1`; for `delta = 0` the zero-case step.
pub fn partial_quotient(term: &Rat, delta: i8, zero_case: &ZeroCase<'_>) -> Result<Rat> {
    match delta {
        1 => Ok(term.clone()),
        -1 => Ok(-term),
        0 => zero_case.evaluate(),
        d => Err(Error::InvalidArgument(format!("digit delta {d} is not in {{-1, 0, 1}}"))),
    }
}

/// Total-difference decomposition of `h_n` between two points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    pub n: usize,
    /// step `i` of the decomposition, for `i = 1..=scan_limit`
    pub terms: BTreeMap<usize, Rat>,
    /// partial difference `term_i / delta_i`, zero-case convention included
    pub quotients: BTreeMap<usize, Rat>,
    pub total: Rat,
    /// `h_n(pert) - h_n(base)`
    pub lhs_direct: Rat,
    /// largest index with a nonzero term, 0 when there is none
    pub observed_cutoff: usize,
    pub predicted_cutoff: usize,
}

impl DiffReport {
    pub fn telescopes(&self) -> bool {
        self.total == self.lhs_direct && self.terms.values().cloned().sum::<Rat>() == self.total
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &Rat)> + '_ {
        self.terms
            .iter()
            .filter(|(_, t)| !t.is_zero())
            .map(|(&i, t)| (i, t))
    }
}

/// Decomposes `h_n(pert) - h_n(base)` into its steps `1..=scan_limit`.
///
/// `scan_limit` defaults to the predicted cutoff plus 64. A nonzero step past
/// the predicted cutoff, or a sum that fails to telescope, is reported as an
/// internal error.
pub fn total_diff_h(
    base: &ExactReal,
    pert: &ExactReal,
    n: usize,
    scan_limit: Option<usize>,
) -> Result<DiffReport> {
    let predicted_cutoff = cutoff_for_sum(base, n)?;
    let scan_limit = scan_limit.unwrap_or(predicted_cutoff + 64);
    if scan_limit < predicted_cutoff {
        return Err(Error::InvalidArgument(format!(
            "scan limit {scan_limit} is below the predicted cutoff {predicted_cutoff}"
        )));
    }
    let du = induced_deltas(base, pert, scan_limit)?;
    let base_bits = prefix_bits(base, scan_limit)?;

    let steps = (1..=scan_limit)
        .into_par_iter()
        .map(|i| -> Result<(usize, Rat, Rat)> {
            let hi = hybrid_from_deltas(pert, &du, i - 1)?;
            let delta = du.get(i);
            if delta == 0 {
                // hybrids coincide; digit i equals base digit i
                let quotient = forced_step(&hi, &hi, i, n)?;
                debug_assert_eq!(hi.bit(i)?, base_bits.get(i).expect("in prefix"));
                return Ok((i, Rat::zero(), quotient));
            }
            let lo = hybrid_from_deltas(pert, &du, i)?;
            let term = h_n(&hi, n)? - h_n(&lo, n)?;
            let quotient = if delta > 0 { term.clone() } else { -&term };
            Ok((i, term, quotient))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut terms = BTreeMap::new();
    let mut quotients = BTreeMap::new();
    for (i, term, quotient) in steps {
        terms.insert(i, term);
        quotients.insert(i, quotient);
    }
    let observed_cutoff = terms
        .iter()
        .filter(|(_, t)| !t.is_zero())
        .map(|(&i, _)| i)
        .max()
        .unwrap_or(0);
    if observed_cutoff > predicted_cutoff {
        return Err(Error::CutoffExceeded {
            index: observed_cutoff,
            cutoff: predicted_cutoff,
        });
    }
    let report = DiffReport {
        n,
        total: terms.values().cloned().sum(),
        lhs_direct: h_n(pert, n)? - h_n(base, n)?,
        terms,
        quotients,
        observed_cutoff,
        predicted_cutoff,
    };
    if !report.telescopes() {
        return Err(Error::InvariantViolation(format!(
            "steps sum to {} but h_n changed by {}",
            report.total, report.lhs_direct
        )));
    }
    Ok(report)
}

/// Decomposition of the change of one digit `u_r` of `omega^2` into steps over
/// the digits of `omega`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UDecomposition {
    pub r: usize,
    /// `u_r(perturbed) - u_r(base)`, computed directly
    pub delta_u_r: i8,
    /// step `j` of the change of `u_r`, for `j = 1..=max flipped index`
    pub terms: BTreeMap<usize, i8>,
    /// `delta u_r / delta x_j`, zero-case convention where `x_j` is unchanged
    pub coeffs: BTreeMap<usize, i8>,
    /// the steps sum to `delta_u_r`
    pub residual_check: bool,
}

fn u_bit(omega: &ExactReal, r: usize) -> Result<i8> {
    Ok(omega.square().bit(r)? as i8)
}

/// Splits the change of `u_r` caused by flipping the digits of `omega` listed
/// in `dx` into per-digit steps.
pub fn total_diff_u(omega_base: &ExactReal, dx: &DigitDelta, r: usize) -> Result<UDecomposition> {
    if omega_base.cmp_dyadic(&Rat::zero()) != std::cmp::Ordering::Greater {
        return Err(Error::OutOfUnitInterval {
            value: omega_base.to_string(),
        });
    }
    let omega_pert = perturb(omega_base, dx)?;
    let delta_u_r = u_bit(&omega_pert, r)? - u_bit(omega_base, r)?;
    let top = dx.max_index().unwrap_or(0);

    let steps = (1..=top)
        .into_par_iter()
        .map(|j| -> Result<(usize, i8, i8)> {
            let hi = hybrid_from_deltas(&omega_pert, dx, j - 1)?;
            match dx.get(j) {
                0 => {
                    let one = force_bit(&hi, j, 1)?;
                    let zero = force_bit(&hi, j, 0)?;
                    Ok((j, 0, u_bit(&one, r)? - u_bit(&zero, r)?))
                }
                d => {
                    let lo = hybrid_from_deltas(&omega_pert, dx, j)?;
                    let term = u_bit(&hi, r)? - u_bit(&lo, r)?;
                    Ok((j, term, term * d))
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut terms = BTreeMap::new();
    let mut coeffs = BTreeMap::new();
    for (j, term, coeff) in steps {
        terms.insert(j, term);
        coeffs.insert(j, coeff);
    }
    let residual_check = terms.values().map(|&t| i32::from(t)).sum::<i32>() == i32::from(delta_u_r);
    Ok(UDecomposition {
        r,
        delta_u_r,
        terms,
        coeffs,
        residual_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::{flip_bit_u, flip_bits};

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn rat(s: &str) -> ExactReal {
        ExactReal::from(r(s))
    }

    fn sqrt(s: &str) -> ExactReal {
        ExactReal::sqrt_of_rat(r(s)).unwrap()
    }

    #[test]
    fn hybrid_examples() {
        let (base, pert) = (rat("1/3"), rat("35/96"));
        assert_eq!(hybrid_point(&base, &pert, 5, BitSource::Pert).unwrap(), pert);
        assert_eq!(hybrid_point(&base, &pert, 5, BitSource::Base).unwrap(), base);

        // nu' = (1/8 + sqrt(1/3))^2 = .0111..., nu = .0101...
        let omega = ExactReal::quad(r("1/8"), r("1"), r("1/3")).unwrap();
        let nu1 = omega.square();
        let h = hybrid_point(&base, &nu1, 3, BitSource::Base).unwrap();
        assert_eq!(h, nu1.add_signed_dyadic(&r("-1/8")).unwrap());
    }

    #[test]
    fn partial_term_examples() {
        let (base, pert) = (rat("1/3"), rat("35/96"));
        assert_eq!(partial_term_h(&base, &pert, 5, 10).unwrap(), r("-1/10"));
        assert_eq!(partial_term_h(&base, &pert, 7, 10).unwrap(), r("0"));
        assert_eq!(partial_term_h(&base, &pert, 5, 4).unwrap(), r("0"));
    }

    #[test]
    fn partial_quotient_examples() {
        let (base, pert) = (rat("1/3"), rat("35/96"));
        let ctx = ZeroCase { base: &base, pert: &pert, i: 7, n: 10 };
        assert_eq!(partial_quotient(&r("1/4"), -1, &ctx).unwrap(), r("-1/4"));
        assert_eq!(partial_quotient(&r("-1/10"), 1, &ctx).unwrap(), r("-1/10"));
        // both hybrids of step 7 are 1/3 = .0101010..., whose digit 7 is 0
        let z1 = rat("1/3").add_signed_dyadic(&r("1/128")).unwrap();
        let want = h_n(&z1, 10).unwrap() - h_n(&base, 10).unwrap();
        assert_eq!(partial_quotient(&r("0"), 0, &ctx).unwrap(), want);
        assert!(partial_quotient(&r("0"), 2, &ctx).is_err());
    }

    #[test]
    fn total_diff_single_flip() {
        let rep = total_diff_h(&rat("1/3"), &rat("35/96"), 10, None).unwrap();
        assert_eq!(rep.total, r("-1/10"));
        assert_eq!(rep.nonzero_terms().collect::<Vec<_>>(), vec![(5, &r("-1/10"))]);
        assert_eq!(rep.observed_cutoff, 5);
        assert!(rep.observed_cutoff <= rep.predicted_cutoff);
        assert_eq!(rep.terms.len(), rep.predicted_cutoff + 64);
    }

    #[test]
    fn total_diff_identity() {
        let rep = total_diff_h(&rat("1/3"), &rat("1/3"), 10, None).unwrap();
        assert!(rep.terms.values().all(Rat::is_zero));
        assert_eq!(rep.total, r("0"));
        assert_eq!(rep.observed_cutoff, 0);
    }

    #[test]
    fn total_diff_two_flips_telescopes() {
        let base = rat("1/3");
        let pert = flip_bits(&base, &[2, 5]).unwrap();
        let rep = total_diff_h(&base, &pert, 10, None).unwrap();
        let direct = h_n(&pert, 10).unwrap() - h_n(&base, 10).unwrap();
        assert_eq!(rep.total, direct);
        assert!(rep.nonzero_terms().all(|(i, _)| i == 2 || i == 5));
    }

    #[test]
    fn scan_limit_below_cutoff_rejected() {
        assert!(matches!(
            total_diff_h(&rat("1/3"), &rat("35/96"), 10, Some(1)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sign_relation_for_single_flip() {
        let base = rat("5/7");
        for r_idx in 1..=8 {
            let pert = flip_bit_u(&base, r_idx).unwrap();
            let du = i32::from(pert.bit(r_idx).unwrap()) - i32::from(base.bit(r_idx).unwrap());
            let rep = total_diff_h(&base, &pert, 16, None).unwrap();
            let expect = if du > 0 { rep.lhs_direct.clone() } else { -&rep.lhs_direct };
            assert_eq!(rep.quotients[&r_idx], expect);
        }
    }

    #[test]
    fn u_decomposition_examples() {
        let w = sqrt("1/3");
        let dx = DigitDelta::from_pairs(&[(3, 1)], 3).unwrap();
        let dec = total_diff_u(&w, &dx, 3).unwrap();
        assert_eq!(dec.delta_u_r, 1);
        assert_eq!(dec.coeffs[&3], 1);
        assert!(dec.residual_check);

        let dec = total_diff_u(&w, &DigitDelta::default(), 5).unwrap();
        assert!(dec.coeffs.is_empty());
        assert_eq!(dec.delta_u_r, 0);
        assert!(dec.residual_check);

        let dec = total_diff_u(&w, &dx, 1).unwrap();
        assert_eq!(dec.delta_u_r, 0);
        assert_eq!(dec.coeffs[&3], 0);
        assert!(dec.residual_check);
    }

    #[test]
    fn report_serializes_rationals_as_strings() {
        let rep = total_diff_h(&rat("1/3"), &rat("35/96"), 10, None).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["total"], serde_json::json!({"num": "-1", "den": "10"}));
        assert_eq!(v["terms"]["5"]["den"], "10");
        for key in ["n", "terms", "quotients", "total", "lhs_direct", "observed_cutoff", "predicted_cutoff"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
