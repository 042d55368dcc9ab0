//! Reference computations used by the integration tests. Everything here is
//! deliberately naive and shares no code with the library's digit extraction.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

pub fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

/// `y <= sqrt(nu) + c`, decided with one comparison of squares.
fn below_shifted_root(y: &BigRational, nu: &BigRational, c: &BigRational) -> bool {
    let t = y - c;
    t.is_negative() || &t * &t <= *nu
}

/// First `n` digits of `sqrt(nu) + c`, which must lie in `[0, 1)`, by
/// bisection: bit `i` is set when the running prefix plus `2^-i` is still
/// below the target.
pub fn shifted_root_bits(nu: &BigRational, c: &BigRational, n: usize) -> Vec<bool> {
    let mut t = BigRational::zero();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let cand = &t + BigRational::one() / pow2(i);
        let keep = below_shifted_root(&cand, nu, c);
        if keep {
            t = cand;
        }
        out.push(keep);
    }
    out
}

pub fn root_bits(nu: &BigRational, n: usize) -> Vec<bool> {
    shifted_root_bits(nu, &BigRational::zero(), n)
}

/// First `n` digits of a rational in `[0, 1)` by repeated doubling.
pub fn rational_bits(x: &BigRational, n: usize) -> Vec<bool> {
    let mut t = x.clone();
    let two = BigRational::from_integer(BigInt::from(2));
    (0..n)
        .map(|_| {
            t = &t * &two;
            let bit = t >= BigRational::one();
            if bit {
                t -= BigRational::one();
            }
            bit
        })
        .collect()
}

pub fn freq(bits: &[bool]) -> BigRational {
    let ones = bits.iter().filter(|&&b| b).count();
    q(ones as i64, bits.len() as i64)
}

/// `h_n(x) = f_n(sqrt(x))` for rational `x`.
pub fn h_oracle(x: &BigRational, n: usize) -> BigRational {
    freq(&root_bits(x, n))
}

/// Digits of `frac(sqrt(s))` through `num-integer`'s integer square root.
pub fn frac_sqrt_bits(s: u64, n: usize) -> Vec<bool> {
    let scaled: BigUint = BigUint::from(s) << (2 * n);
    let k = scaled.sqrt();
    let frac = k - (BigUint::from(s).sqrt() << n);
    (0..n).rev().map(|j| frac.bit(j as u64)).collect()
}

pub fn bits_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// A random `p/q` in `(0, 1)` with `q <= 2^20` not a power of two.
pub fn random_nu(rng: &mut ChaCha8Rng) -> (i64, i64) {
    loop {
        let den: i64 = rng.gen_range(3..=1 << 20);
        if den & (den - 1) == 0 {
            continue;
        }
        let num: i64 = rng.gen_range(1..den);
        let r = q(num, den);
        if !r.denom().is_one() && (r.denom() & (r.denom() - BigInt::one())).is_zero() {
            continue;
        }
        return (num, den);
    }
}

/// `k` distinct indices from `1..=top`, sorted.
pub fn random_positions(rng: &mut ChaCha8Rng, k: usize, top: usize) -> Vec<usize> {
    let mut v = rand::seq::index::sample(rng, top, k)
        .into_iter()
        .map(|i| i + 1)
        .collect::<Vec<_>>();
    v.sort_unstable();
    v
}

/// Dyadic shift that flips the listed digits of an expansion.
pub fn flip_shift(bits: &[bool], positions: &[usize]) -> BigRational {
    positions
        .iter()
        .map(|&i| {
            let sign = if bits[i - 1] { -1 } else { 1 };
            BigRational::from_integer(BigInt::from(sign)) / pow2(i)
        })
        .fold(BigRational::zero(), |a, b| a + b)
}
