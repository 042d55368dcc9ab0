//! Dependency radii between the two expansions.
//!
//! `N(omega, r)`: how many digits of `omega` fix the first `r` digits of
//! `omega^2`. `m(nu, n)`: how many digits of `nu` fix the first `n` digits of
//! `sqrt(nu)`. Both are certified by mapping a digit cell through the
//! monotone map (`x -> x^2` or `y -> sqrt(y)`) and checking that the open image
//! interval contains no breakpoint of the target digit grid. All tests are
//! done in exact rational arithmetic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{isqrt, ExactReal, Rat};

/// Endpoint of an image interval. The image of a dyadic cell under the square
/// root is not always rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Rational(Rat),
    SqrtOf(Rat),
}

impl Endpoint {
    fn sqrt_of(r: Rat) -> Endpoint {
        match r.sqrt_exact() {
            Some(root) => Endpoint::Rational(root),
            None => Endpoint::SqrtOf(r),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusKind {
    /// digits of omega needed for a prefix of nu
    XForU,
    /// digits of nu needed for a prefix of omega
    UForX,
}

/// A certified dependency radius.
///
/// `interval_lo..interval_hi` is the digit cell of length `radius` containing
/// the point; `image_lo..image_hi` is its image, whose interior holds no
/// multiple of `2^-target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadiusResult {
    pub kind: RadiusKind,
    pub target: usize,
    pub radius: usize,
    pub interval_lo: Rat,
    pub interval_hi: Rat,
    pub image_lo: Endpoint,
    pub image_hi: Endpoint,
}

pub fn default_search_limit(target: usize) -> usize {
    4 * target + 64
}

fn check_open_unit(x: &ExactReal) -> Result<()> {
    if x.cmp_dyadic(&Rat::zero()) == Ordering::Greater && x.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::OutOfUnitInterval {
            value: x.to_string(),
        })
    }
}

/// Digit cells `[k/2^m, (k+1)/2^m)` of `x` for `m = 1..=limit`, derived from
/// a single extraction at full depth.
fn cells(x: &ExactReal, limit: usize) -> Result<impl Iterator<Item = (usize, Rat, Rat)>> {
    let full = BigInt::from(x.floor_scaled(limit)?);
    Ok((1..=limit).map(move |m| {
        let k: BigInt = &full >> (limit - m);
        let scale = BigInt::one() << m;
        let lo = Rat::new(k.clone(), scale.clone());
        let hi = Rat::new(k + 1, scale);
        (m, lo, hi)
    }))
}

/// Smallest `N` such that the first `N` digits of `omega` determine the first
/// `r` digits of `omega^2`.
pub fn dep_radius_n(
    omega: &ExactReal,
    r: usize,
    search_limit: Option<usize>,
) -> Result<RadiusResult> {
    check_open_unit(omega)?;
    let nu = omega.square();
    if nu.is_dyadic() {
        return Err(Error::DyadicBoundary {
            what: format!("square {nu} of {omega}"),
        });
    }
    let limit = search_limit.unwrap_or_else(|| default_search_limit(r));
    for (m, lo, hi) in cells(omega, limit)? {
        let (lo2, hi2) = (lo.square(), hi.square());
        // first multiple of 2^-r strictly above lo^2
        let next = Rat::new(lo2.floor_scaled(r) + 1, BigInt::one() << r);
        if next >= hi2 {
            return Ok(RadiusResult {
                kind: RadiusKind::XForU,
                target: r,
                radius: m,
                interval_lo: lo,
                interval_hi: hi,
                image_lo: Endpoint::Rational(lo2),
                image_hi: Endpoint::Rational(hi2),
            });
        }
    }
    Err(Error::SearchLimitExceeded { limit })
}

/// Smallest `m` such that the first `m` digits of `nu` determine the first
/// `n` digits of `sqrt(nu)`.
pub fn dep_radius_m(nu: &ExactReal, n: usize, search_limit: Option<usize>) -> Result<RadiusResult> {
    check_open_unit(nu)?;
    let root = nu.sqrt()?;
    if root.is_dyadic() {
        return Err(Error::DyadicBoundary {
            what: format!("square root {root} of {nu}"),
        });
    }
    let limit = search_limit.unwrap_or_else(|| default_search_limit(n));
    for (m, lo, hi) in cells(nu, limit)? {
        // smallest k with (k/2^n)^2 > lo, i.e. k^2 > floor(lo * 4^n)
        let floor = lo.floor_scaled(2 * n);
        let k = BigInt::from(isqrt(floor.magnitude())) + 1;
        let next = Rat::new(k, BigInt::one() << n).square();
        if next >= hi {
            return Ok(RadiusResult {
                kind: RadiusKind::UForX,
                target: n,
                radius: m,
                image_lo: Endpoint::sqrt_of(lo.clone()),
                image_hi: Endpoint::sqrt_of(hi.clone()),
                interval_lo: lo,
                interval_hi: hi,
            });
        }
    }
    Err(Error::SearchLimitExceeded { limit })
}

/// Index beyond which every partial term of the total difference of `h_n` at
/// base point `nu` vanishes.
///
/// For `i > m = m(nu, n)` both points of the `i`-th step share their first
/// `i - 1 >= m` digits with `nu`, so they lie in the certified cell and their
/// square roots agree on the first `n` digits.
pub fn cutoff_for_sum(nu: &ExactReal, n: usize) -> Result<usize> {
    Ok(dep_radius_m(nu, n, None)?.radius)
}
