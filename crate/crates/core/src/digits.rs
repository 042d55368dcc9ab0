//! Binary prefixes, digit-frequency averages and bit-flip perturbations.
//!
//! Indices are 1-based throughout: bit `i` carries weight `2^-i`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ExactReal, Rat};

/// The first `n` binary digits of a number in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitPrefix {
    bits: Vec<bool>,
}

impl BitPrefix {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitPrefix { bits }
    }

    /// The `n` low bits of `k`, most significant first.
    pub fn from_scaled(k: &BigUint, n: usize) -> Self {
        let bits = (0..n).rev().map(|e| k.bit(e as u64)).collect();
        BitPrefix { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit `i`, 1-indexed.
    pub fn get(&self, i: usize) -> Option<u8> {
        i.checked_sub(1)
            .and_then(|k| self.bits.get(k))
            .map(|&b| u8::from(b))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn truncate(&self, n: usize) -> BitPrefix {
        BitPrefix {
            bits: self.bits[..n.min(self.len())].to_vec(),
        }
    }

    /// `sum bits[i] * 2^-i` as an exact dyadic rational.
    pub fn value(&self) -> Rat {
        let k = self
            .bits
            .iter()
            .fold(BigUint::default(), |acc, &b| (acc << 1u32) + u32::from(b));
        Rat::new(k, num_bigint::BigInt::from(1) << self.len())
    }

    /// Running counts of ones: entry `k` is the number of ones among bits `1..=k`.
    pub fn cumulative_ones(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(0);
        let mut acc = 0;
        for &b in &self.bits {
            acc += usize::from(b);
            out.push(acc);
        }
        out
    }
}

impl fmt::Display for BitPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitPrefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidArgument(format!("`{s}` is not a bit string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitPrefix::from_bits)
    }
}

/// Per-index digit differences `bit_i(pert) - bit_i(base)` up to a horizon.
/// Zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitDelta {
    deltas: BTreeMap<usize, i8>,
    horizon: usize,
}

impl DigitDelta {
    pub fn new(deltas: BTreeMap<usize, i8>, horizon: usize) -> Result<Self> {
        for (&i, &d) in &deltas {
            if i == 0 || i > horizon {
                return Err(Error::InvalidArgument(format!(
                    "delta index {i} outside 1..={horizon}"
                )));
            }
            if d != 1 && d != -1 {
                return Err(Error::InvalidArgument(format!(
                    "delta value {d} at index {i} is not +-1"
                )));
            }
        }
        Ok(DigitDelta { deltas, horizon })
    }

    /// Convenience constructor from `(index, delta)` pairs.
    pub fn from_pairs(pairs: &[(usize, i8)], horizon: usize) -> Result<Self> {
        DigitDelta::new(pairs.iter().copied().collect(), horizon)
    }

    pub fn get(&self, i: usize) -> i8 {
        self.deltas.get(&i).copied().unwrap_or(0)
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.deltas.iter().map(|(&i, &d)| (i, d))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.deltas.keys().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.deltas.keys().next_back().copied()
    }

    /// `sum_{j <= upto} delta_j * 2^-j`.
    pub fn weighted_sum(&self, upto: usize) -> Rat {
        self.deltas
            .range(..=upto)
            .map(|(&j, &d)| Rat::dyadic(i32::from(d), j))
            .sum()
    }
}

/// First `n` binary digits of `x`.
pub fn prefix_bits(x: &ExactReal, n: usize) -> Result<BitPrefix> {
    let k = x.floor_scaled(n)?;
    Ok(BitPrefix::from_scaled(&k, n))
}

/// Relative frequency of ones in the prefix.
pub fn freq_f_n(p: &BitPrefix) -> Result<Rat> {
    if p.is_empty() {
        return Err(Error::EmptyPrefix);
    }
    Ok(Rat::new(p.ones() as u64, p.len() as u64))
}

/// `f_n(omega)`: frequency of ones among the first `n` digits of `omega`.
pub fn f_n(omega: &ExactReal, n: usize) -> Result<Rat> {
    freq_f_n(&prefix_bits(omega, n)?)
}

/// `h_n(nu) = f_n(sqrt(nu))`, the same average read off the square.
pub fn h_n(nu: &ExactReal, n: usize) -> Result<Rat> {
    if !nu.in_unit_interval() {
        return Err(Error::OutOfUnitInterval {
            value: nu.to_string(),
        });
    }
    f_n(&nu.sqrt()?, n)
}

/// Flips bit `r` of `x`: adds `2^-r` when the bit is 0, subtracts it when 1.
/// No carry or borrow occurs, so every other bit is unchanged.
pub fn flip_bit_u(x: &ExactReal, r: usize) -> Result<ExactReal> {
    let bit = x.bit(r)?;
    let sign = 1 - 2 * i32::from(bit);
    let out = x.add_signed_dyadic(&Rat::dyadic(sign, r))?;
    if !out.in_unit_interval() {
        return Err(Error::OutOfUnitInterval {
            value: out.to_string(),
        });
    }
    Ok(out)
}

/// Flips every listed bit. The order is irrelevant because flips never carry.
pub fn flip_bits(x: &ExactReal, indices: &[usize]) -> Result<ExactReal> {
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.first() == Some(&0) {
        return Err(Error::InvalidArgument("bit indices start at 1".into()));
    }
    let horizon = sorted.last().copied().unwrap_or(0);
    let base = prefix_bits(x, horizon)?;
    let shift: Rat = sorted
        .iter()
        .map(|&i| Rat::dyadic(1 - 2 * i32::from(base.get(i).expect("within prefix")), i))
        .sum();
    if sorted.is_empty() {
        return Ok(x.clone());
    }
    let out = x.add_signed_dyadic(&shift)?;
    if !out.in_unit_interval() {
        return Err(Error::OutOfUnitInterval {
            value: out.to_string(),
        });
    }
    Ok(out)
}

/// Applies a delta that must consist of genuine bit flips of `x`
/// (`+1` only where the bit is 0, `-1` only where it is 1).
pub fn perturb(x: &ExactReal, dx: &DigitDelta) -> Result<ExactReal> {
    let Some(top) = dx.max_index() else {
        return Ok(x.clone());
    };
    let base = prefix_bits(x, top)?;
    for (i, d) in dx.iter() {
        let expected = 1 - 2 * base.get(i).expect("index within prefix") as i8;
        if d != expected {
            return Err(Error::InconsistentDelta { index: i });
        }
    }
    let out = x.add_signed_dyadic(&dx.weighted_sum(top))?;
    if !out.in_unit_interval() {
        return Err(Error::OutOfUnitInterval {
            value: out.to_string(),
        });
    }
    Ok(out)
}

/// Digit differences between two expansions up to `horizon`.
pub fn induced_deltas(base: &ExactReal, pert: &ExactReal, horizon: usize) -> Result<DigitDelta> {
    let a = prefix_bits(base, horizon)?;
    let b = prefix_bits(pert, horizon)?;
    let deltas = a
        .bits()
        .iter()
        .zip(b.bits())
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(k, (&x, &y))| (k + 1, i8::from(y) - i8::from(x)))
        .collect();
    Ok(DigitDelta { deltas, horizon })
}

/// Total difference of `f_n`: `(1/n) * sum_{j <= n} dx_j`.
pub fn total_diff_f(dx: &DigitDelta, n: usize) -> Result<Rat> {
    if n == 0 {
        return Err(Error::EmptyPrefix);
    }
    if dx.horizon() < n {
        return Err(Error::HorizonTooShort {
            horizon: dx.horizon(),
            needed: n,
        });
    }
    let sum: i64 = dx.deltas.range(..=n).map(|(_, &d)| i64::from(d)).sum();
    Ok(Rat::new(sum, n as u64))
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

    fn sqrt(s: &str) -> ExactReal {
        ExactReal::sqrt_of_rat(r(s)).unwrap()
    }

    fn bits(s: &str) -> BitPrefix {
        s.parse().unwrap()
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(prefix_bits(&sqrt("1/2"), 10).unwrap().to_string(), "1011010100");
        assert_eq!(prefix_bits(&sqrt("1/3"), 10).unwrap().to_string(), "1001001111");
        assert_eq!(prefix_bits(&rat("1/3"), 6).unwrap().to_string(), "010101");
    }

    #[test]
    fn prefix_value_and_counts() {
        let p = bits("1011");
        assert_eq!(p.value(), r("11/16"));
        assert_eq!(p.get(1), Some(1));
        assert_eq!(p.get(2), Some(0));
        assert_eq!(p.get(0), None);
        assert_eq!(p.cumulative_ones(), vec![0, 1, 1, 2, 3]);
        assert!("10a".parse::<BitPrefix>().is_err());
    }

    #[test]
    fn freq_examples() {
        assert_eq!(freq_f_n(&bits("0000")).unwrap(), r("0"));
        assert_eq!(freq_f_n(&bits("1011010100")).unwrap(), r("1/2"));
        assert_eq!(freq_f_n(&bits("1001001111")).unwrap(), r("3/5"));
        assert!(matches!(freq_f_n(&bits("")), Err(Error::EmptyPrefix)));
    }

    #[test]
    fn h_n_examples() {
        assert_eq!(h_n(&rat("1/3"), 10).unwrap(), r("3/5"));
        assert_eq!(h_n(&rat("35/96"), 4).unwrap(), r("1/2"));
        assert_eq!(h_n(&rat("9/16"), 3).unwrap(), r("2/3"));
        assert!(matches!(h_n(&rat("3/2"), 3), Err(Error::OutOfUnitInterval { .. })));
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip_bit_u(&rat("1/3"), 5).unwrap(), rat("35/96"));
        assert_eq!(flip_bit_u(&rat("1/3"), 2).unwrap(), rat("1/12"));
        assert_eq!(flip_bit_u(&rat("35/96"), 5).unwrap(), rat("1/3"));
        assert_eq!(flip_bits(&rat("1/3"), &[5, 2]).unwrap(), ExactReal::from(r("35/96") - r("1/4")));
        assert_eq!(flip_bits(&rat("1/3"), &[]).unwrap(), rat("1/3"));
    }

    #[test]
    fn flip_unsupported_kind() {
        let nested = ExactReal::quad(r("1/4"), r("1/8"), r("2")).unwrap().sqrt().unwrap();
        assert!(matches!(flip_bit_u(&nested, 3), Err(Error::UnsupportedKind { .. })));
    }

    #[test]
    fn induced_delta_examples() {
        let d = induced_deltas(&sqrt("1/3"), &sqrt("35/96"), 10).unwrap();
        assert_eq!(d, DigitDelta::from_pairs(&[(5, 1), (8, -1), (10, -1)], 10).unwrap());
        assert!(induced_deltas(&sqrt("1/3"), &sqrt("1/3"), 40).unwrap().is_empty());
        let d = induced_deltas(&rat("1/3"), &rat("35/96"), 8).unwrap();
        assert_eq!(d, DigitDelta::from_pairs(&[(5, 1)], 8).unwrap());
    }

    #[test]
    fn total_diff_f_examples() {
        let dx = DigitDelta::from_pairs(&[(2, 1), (5, -1)], 10).unwrap();
        assert_eq!(total_diff_f(&dx, 10).unwrap(), r("0"));
        let dx = DigitDelta::from_pairs(&[(2, 1)], 4).unwrap();
        assert_eq!(total_diff_f(&dx, 4).unwrap(), r("1/4"));
        let dx = induced_deltas(&sqrt("1/3"), &sqrt("35/96"), 10).unwrap();
        assert_eq!(total_diff_f(&dx, 10).unwrap(), r("-1/10"));
        assert!(matches!(
            total_diff_f(&dx, 11),
            Err(Error::HorizonTooShort { horizon: 10, needed: 11 })
        ));
    }

    #[test]
    fn digit_delta_validation() {
        assert!(DigitDelta::from_pairs(&[(0, 1)], 4).is_err());
        assert!(DigitDelta::from_pairs(&[(5, 1)], 4).is_err());
        assert!(DigitDelta::from_pairs(&[(2, 2)], 4).is_err());
    }

    #[test]
    fn perturb_requires_true_flips() {
        let w = sqrt("1/3"); // .1001001111
        let dx = DigitDelta::from_pairs(&[(3, 1)], 3).unwrap();
        let w1 = perturb(&w, &dx).unwrap();
        assert_eq!(induced_deltas(&w, &w1, 40).unwrap().iter().collect::<Vec<_>>(), vec![(3, 1)]);
        let bad = DigitDelta::from_pairs(&[(1, 1)], 3).unwrap();
        assert!(matches!(perturb(&w, &bad), Err(Error::InconsistentDelta { index: 1 })));
    }
}
