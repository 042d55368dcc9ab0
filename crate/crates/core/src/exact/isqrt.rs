//! Integer square root by Newton iteration.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Returns `floor(sqrt(n))`.
///
/// Newton's iteration `x <- (x + n / x) / 2` started from a power of two
/// that is guaranteed to be at least `sqrt(n)`. From above the iterates
/// decrease monotonically until they reach the floor, so the first
/// non-decreasing step terminates the loop.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let bits = n.bits();
    if bits <= 52 {
        // exact for values below 2^52 after the correction steps
        let v = u64::try_from(n).expect("fits in u64");
        let mut r = (v as f64).sqrt() as u64;
        while r * r > v {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= v {
            r += 1;
        }
        return BigUint::from(r);
    }
    let mut x = BigUint::one() << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Returns `Some(r)` when `n == r * r`.
pub fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = isqrt(n);
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}
