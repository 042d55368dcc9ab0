use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::isqrt::{exact_sqrt, isqrt};
use super::{QuadExt, Rat};
use crate::error::{Error, Result};

/// Radicand of a [`ExactReal::SqrtOf`] value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Radicand {
    Rat(Rat),
    Quad(QuadExt),
}

/// An exactly represented real number from the closed set
/// `{ r, sqrt(r), a + b*sqrt(d), sqrt(a + b*sqrt(d)) }` with rational `r, a, b, d`.
///
/// Constructors keep the representation canonical: a square root of a
/// perfect square, a zero irrational part, or a square `d` always collapses to
/// the simpler kind, so an irrational kind really denotes an irrational value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactReal {
    Rational(Rat),
    SqrtOf(Radicand),
    Quad(QuadExt),
}

impl ExactReal {
    pub fn rational(r: Rat) -> ExactReal {
        ExactReal::Rational(r)
    }

    /// `a + b*sqrt(d)`, collapsed when the value is rational or a plain root.
    pub fn quad(a: Rat, b: Rat, d: Rat) -> Result<ExactReal> {
        if d.is_negative() {
            return Err(Error::InvalidArgument(format!("negative radicand {d}")));
        }
        if b.is_zero() {
            return Ok(ExactReal::Rational(a));
        }
        if let Some(root) = d.sqrt_exact() {
            return Ok(ExactReal::Rational(a + b * root));
        }
        if a.is_zero() && !b.is_negative() {
            return Ok(ExactReal::SqrtOf(Radicand::Rat(b.square() * d)));
        }
        Ok(ExactReal::Quad(
            QuadExt::try_new(a, b, d).expect("invariants checked above"),
        ))
    }

    /// Principal square root of a rational.
    pub fn sqrt_of_rat(r: Rat) -> Result<ExactReal> {
        ExactReal::Rational(r).sqrt()
    }

    /// Fractional part of `sqrt(s)` for a non-square positive integer `s`.
    pub fn frac_sqrt(s: &BigUint) -> Result<ExactReal> {
        if exact_sqrt(s).is_some() {
            return Err(Error::PerfectSquareInput(s.to_string()));
        }
        let whole = BigInt::from(isqrt(s));
        ExactReal::quad(
            Rat::from_int(-whole),
            Rat::one(),
            Rat::from(BigUint::clone(s)),
        )
    }

    /// Principal square root, collapsing to a rational or a quadratic
    /// irrational when the radicand is a perfect square in that kind.
    pub fn sqrt(&self) -> Result<ExactReal> {
        match self {
            ExactReal::Rational(r) => {
                if r.is_negative() {
                    return Err(Error::InvalidArgument(format!("square root of {r}")));
                }
                Ok(match r.sqrt_exact() {
                    Some(root) => ExactReal::Rational(root),
                    None => ExactReal::SqrtOf(Radicand::Rat(r.clone())),
                })
            }
            ExactReal::Quad(q) => {
                if q.cmp_rat(&Rat::zero()) == Ordering::Less {
                    return Err(Error::InvalidArgument(format!("square root of {q}")));
                }
                match q.denest_sqrt() {
                    Some((p, c)) => ExactReal::quad(p, c, q.d().clone()),
                    None => Ok(ExactReal::SqrtOf(Radicand::Quad(q.clone()))),
                }
            }
            ExactReal::SqrtOf(_) => Err(Error::UnsupportedKind {
                op: "sqrt",
                kind: self.kind_name(),
            }),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ExactReal::Rational(_) => "rational",
            ExactReal::SqrtOf(Radicand::Rat(_)) => "sqrt(rational)",
            ExactReal::SqrtOf(Radicand::Quad(_)) => "sqrt(quadratic)",
            ExactReal::Quad(_) => "quadratic",
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ExactReal::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// True only for rationals with a power-of-two denominator; those are the
    /// values with two binary expansions.
    pub fn is_dyadic(&self) -> bool {
        matches!(self, ExactReal::Rational(r) if r.is_dyadic())
    }

    /// Exact three-way comparison of the value against a rational.
    pub fn cmp_dyadic(&self, t: &Rat) -> Ordering {
        match self {
            ExactReal::Rational(r) => r.cmp(t),
            ExactReal::Quad(q) => q.cmp_rat(t),
            ExactReal::SqrtOf(inner) => {
                if t.is_negative() {
                    return Ordering::Greater;
                }
                let t2 = t.square();
                match inner {
                    Radicand::Rat(r) => r.cmp(&t2),
                    Radicand::Quad(q) => q.cmp_rat(&t2),
                }
            }
        }
    }

    pub fn in_unit_interval(&self) -> bool {
        self.cmp_dyadic(&Rat::zero()) != Ordering::Less
            && self.cmp_dyadic(&Rat::one()) == Ordering::Less
    }

    fn check_unit(&self) -> Result<()> {
        if self.in_unit_interval() {
            Ok(())
        } else {
            Err(Error::OutOfUnitInterval {
                value: self.to_string(),
            })
        }
    }

    /// `floor(2^n * x)` for `x` in `[0, 1)`.
    ///
    /// Uses closed forms where they exist (`floor(sqrt(y)) = isqrt(floor(y))`
    /// for the root kinds, a one-step-corrected estimate for `a + b*sqrt(d)`).
    /// Dyadic rationals get their terminating expansion.
    pub fn floor_scaled(&self, n: usize) -> Result<BigUint> {
        self.check_unit()?;
        let k = match self {
            ExactReal::Rational(r) => r.floor_scaled(n),
            ExactReal::SqrtOf(Radicand::Rat(r)) => {
                let pq = r.numer() * r.denom();
                let root = isqrt(&(pq.magnitude() << (2 * n)));
                BigInt::from(root / r.denom().magnitude())
            }
            ExactReal::SqrtOf(Radicand::Quad(q)) => {
                let inner = quad_floor_scaled(q, 2 * n);
                BigInt::from(isqrt(inner.magnitude()))
            }
            ExactReal::Quad(q) => quad_floor_scaled(q, n),
        };
        Ok(k.to_biguint().expect("value in [0, 1)"))
    }

    /// `floor(2^n * x)` by binary search over `k` using only
    /// [`ExactReal::cmp_dyadic`]. Must agree with [`ExactReal::floor_scaled`].
    pub fn floor_scaled_bisect(&self, n: usize) -> Result<BigUint> {
        self.check_unit()?;
        let scale = BigInt::one() << n;
        let mut lo = BigInt::zero();
        let mut hi = scale.clone();
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1u32;
            if self.cmp_dyadic(&Rat::new(mid.clone(), scale.clone())) == Ordering::Less {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(lo.to_biguint().expect("nonnegative"))
    }

    /// Binary digit `i` (1-indexed) of the expansion.
    pub fn bit(&self, i: usize) -> Result<u8> {
        if i == 0 {
            return Err(Error::InvalidArgument("bit indices start at 1".into()));
        }
        Ok(u8::from(self.floor_scaled(i)?.bit(0)))
    }

    /// The exact square.
    pub fn square(&self) -> ExactReal {
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(r.square()),
            ExactReal::SqrtOf(Radicand::Rat(r)) => ExactReal::Rational(r.clone()),
            ExactReal::SqrtOf(Radicand::Quad(q)) => ExactReal::Quad(q.clone()),
            ExactReal::Quad(q) => {
                let (a, b) = q.square_coeffs();
                ExactReal::quad(a, b, q.d().clone()).expect("d > 0")
            }
        }
    }

    /// `x + delta` for a dyadic rational `delta`.
    pub fn add_signed_dyadic(&self, delta: &Rat) -> Result<ExactReal> {
        if !delta.is_dyadic() {
            return Err(Error::InvalidArgument(format!(
                "shift {delta} is not a dyadic rational"
            )));
        }
        match self {
            ExactReal::Rational(r) => Ok(ExactReal::Rational(r + delta)),
            ExactReal::Quad(q) => ExactReal::quad(q.a() + delta, q.b().clone(), q.d().clone()),
            ExactReal::SqrtOf(Radicand::Rat(r)) => {
                ExactReal::quad(delta.clone(), Rat::one(), r.clone())
            }
            ExactReal::SqrtOf(Radicand::Quad(_)) => Err(Error::UnsupportedKind {
                op: "add_signed_dyadic",
                kind: self.kind_name(),
            }),
        }
    }
}

/// `floor(2^n * (a + b*sqrt(d)))`: an estimate from `isqrt(floor(4^n b^2 d))`
/// that is off by at most one, then corrected by exact comparisons.
fn quad_floor_scaled(q: &QuadExt, n: usize) -> BigInt {
    let fa = q.a().floor_scaled(n);
    let g = BigInt::from(isqrt(q.scaled_radicand().floor_scaled(2 * n).magnitude()));
    let mut k = if q.b().is_negative() {
        fa - g - 1
    } else {
        fa + g
    };
    let scale = BigInt::one() << n;
    let at = |k: &BigInt| Rat::new(k.clone(), scale.clone());
    while q.cmp_rat(&at(&k)) == Ordering::Less {
        k -= 1;
    }
    while q.cmp_rat(&at(&(&k + 1))) != Ordering::Less {
        k += 1;
    }
    k
}

impl From<Rat> for ExactReal {
    fn from(r: Rat) -> Self {
        ExactReal::Rational(r)
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(r) => write!(f, "{r}"),
            ExactReal::SqrtOf(Radicand::Rat(r)) => write!(f, "sqrt({r})"),
            ExactReal::SqrtOf(Radicand::Quad(q)) => write!(f, "sqrt({q})"),
            ExactReal::Quad(q) => write!(f, "{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn sqrt(s: &str) -> ExactReal {
        ExactReal::sqrt_of_rat(r(s)).unwrap()
    }

    fn quad(a: &str, b: &str, d: &str) -> ExactReal {
        ExactReal::quad(r(a), r(b), r(d)).unwrap()
    }

    #[test]
    fn constructors_collapse() {
        assert_eq!(sqrt("9/16"), ExactReal::Rational(r("3/4")));
        assert_eq!(quad("1/2", "0", "2"), ExactReal::Rational(r("1/2")));
        assert_eq!(quad("1/2", "2", "1/4"), ExactReal::Rational(r("3/2")));
        assert_eq!(quad("0", "1", "1/3"), sqrt("1/3"));
        assert_eq!(quad("0", "2", "1/3"), sqrt("4/3"));
        assert!(matches!(quad("0", "-1", "1/3"), ExactReal::Quad(_)));
        assert_eq!(sqrt("9/16").cmp_dyadic(&r("3/4")), Ordering::Equal);
    }

    #[test]
    fn cmp_dyadic_examples() {
        assert_eq!(ExactReal::from(r("1/3")).cmp_dyadic(&r("1/2")), Ordering::Less);
        // (37/64)^2 = 1369/4096 > 1/3
        assert_eq!(sqrt("1/3").cmp_dyadic(&r("37/64")), Ordering::Less);
        assert_eq!(sqrt("1/3").cmp_dyadic(&r("36/64")), Ordering::Greater);
        assert_eq!(sqrt("1/3").cmp_dyadic(&r("-1")), Ordering::Greater);
        assert_eq!(quad("-1", "1", "2").cmp_dyadic(&r("1/2")), Ordering::Less);
    }

    #[test]
    fn cmp_nested_root() {
        // sqrt(67/192 + 1/4 sqrt(1/3)) denests; use a non-denestable radicand
        let inner = ExactReal::quad(r("1/4"), r("1/8"), r("2")).unwrap();
        let x = inner.sqrt().unwrap();
        assert!(matches!(x, ExactReal::SqrtOf(Radicand::Quad(_))));
        // inner ~ 0.426777, sqrt ~ 0.653282
        assert_eq!(x.cmp_dyadic(&r("653/1000")), Ordering::Greater);
        assert_eq!(x.cmp_dyadic(&r("654/1000")), Ordering::Less);
        assert_eq!(x.cmp_dyadic(&r("-1/2")), Ordering::Greater);
    }

    #[test]
    fn floor_scaled_examples() {
        assert_eq!(ExactReal::from(r("1/3")).floor_scaled(4).unwrap(), 5u32.into());
        assert_eq!(sqrt("1/2").floor_scaled(4).unwrap(), 11u32.into());
        assert_eq!(sqrt("1/3").floor_scaled(10).unwrap(), 591u32.into());
        assert_eq!(sqrt("1/3").floor_scaled_bisect(10).unwrap(), 591u32.into());
    }

    #[test]
    fn floor_scaled_rejects_outside_unit_interval() {
        assert!(matches!(
            ExactReal::from(r("1")).floor_scaled(3),
            Err(Error::OutOfUnitInterval { .. })
        ));
        assert!(matches!(
            quad("1", "-1", "2").floor_scaled(3),
            Err(Error::OutOfUnitInterval { .. })
        ));
        assert!(matches!(
            sqrt("2").floor_scaled(3),
            Err(Error::OutOfUnitInterval { .. })
        ));
    }

    #[test]
    fn dyadic_values_use_terminating_expansion() {
        let x = ExactReal::from(r("3/4"));
        assert!(x.is_dyadic());
        assert_eq!(x.floor_scaled(3).unwrap(), 6u32.into());
        assert_eq!(x.floor_scaled_bisect(3).unwrap(), 6u32.into());
        assert!(!sqrt("1/2").is_dyadic());
    }

    #[test]
    fn paths_agree_on_all_kinds() {
        let nested = ExactReal::quad(r("1/4"), r("1/8"), r("2")).unwrap().sqrt().unwrap();
        let values = [
            quad("-1", "1", "2"),
            quad("1", "-1", "1/3"),
            quad("67/192", "1/4", "1/3"),
            nested,
            sqrt("35/96"),
        ];
        for x in &values {
            for n in [1, 2, 7, 33, 100] {
                assert_eq!(x.floor_scaled(n).unwrap(), x.floor_scaled_bisect(n).unwrap(), "{x} n={n}");
            }
        }
    }

    #[test]
    fn square_examples() {
        assert_eq!(sqrt("1/3").square(), ExactReal::from(r("1/3")));
        assert_eq!(quad("1/2", "1/4", "1/3").square(), quad("13/48", "1/4", "1/3"));
        assert_eq!(ExactReal::from(r("3/4")).square(), ExactReal::from(r("9/16")));
        // (1 - sqrt(1/3)) * ... : a = 0 after squaring collapses to a root
        assert_eq!(quad("0", "-1", "1/3").square(), ExactReal::from(r("1/3")));
    }

    #[test]
    fn add_signed_dyadic_examples() {
        let x = ExactReal::from(r("1/3"));
        assert_eq!(x.add_signed_dyadic(&r("1/32")).unwrap(), ExactReal::from(r("35/96")));
        assert_eq!(
            sqrt("1/2").add_signed_dyadic(&r("1/4")).unwrap(),
            quad("1/4", "1", "1/2")
        );
        assert_eq!(
            quad("1/8", "1", "1/3").add_signed_dyadic(&r("-1/8")).unwrap(),
            sqrt("1/3")
        );
        assert!(x.add_signed_dyadic(&r("1/3")).is_err());
        let nested = ExactReal::quad(r("1/4"), r("1/8"), r("2")).unwrap().sqrt().unwrap();
        assert!(matches!(
            nested.add_signed_dyadic(&r("1/4")),
            Err(Error::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn sqrt_roundtrips_through_square() {
        let w = quad("1/8", "1", "1/3");
        assert_eq!(w.square().sqrt().unwrap(), w);
        let w = quad("-1", "1", "2");
        assert_eq!(w.square().sqrt().unwrap(), w);
        assert!(sqrt("1/3").sqrt().is_err());
    }

    #[test]
    fn frac_sqrt_values() {
        let w = ExactReal::frac_sqrt(&BigUint::from(2u32)).unwrap();
        assert_eq!(w, quad("-1", "1", "2"));
        assert!(matches!(
            ExactReal::frac_sqrt(&BigUint::from(4u32)),
            Err(Error::PerfectSquareInput(_))
        ));
    }
}
