//! Real quadratic irrationals `a + b*sqrt(d)`.

use std::cmp::Ordering;
use std::fmt;

use super::Rat;

/// `a + b*sqrt(d)` with `b != 0`, `d > 0` and `d` not the square of a rational.
///
/// Values that would violate the invariants are never built as a `QuadExt`;
/// [`crate::ExactReal::quad`] collapses them to a simpler kind instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rat,
    b: Rat,
    d: Rat,
}

impl QuadExt {
    /// Returns `None` when `(a, b, d)` does not describe an irrational value.
    pub fn try_new(a: Rat, b: Rat, d: Rat) -> Option<QuadExt> {
        if b.is_zero() || d.signum() != Ordering::Greater || d.sqrt_exact().is_some() {
            return None;
        }
        Some(QuadExt { a, b, d })
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn d(&self) -> &Rat {
        &self.d
    }

    /// `b^2 * d`, the radicand of `|b| * sqrt(d)`.
    pub(crate) fn scaled_radicand(&self) -> Rat {
        self.b.square() * &self.d
    }

    /// Exact comparison of the value against a rational.
    ///
    /// Compares `b*sqrt(d)` with `t - a`: opposite signs decide immediately,
    /// equal signs are decided by comparing squares. Never returns `Equal`.
    pub fn cmp_rat(&self, t: &Rat) -> Ordering {
        let c = t - &self.a;
        let lhs_sq = self.scaled_radicand();
        if self.b.is_negative() {
            if c.signum() != Ordering::Less {
                return Ordering::Less;
            }
            c.square().cmp(&lhs_sq)
        } else {
            if c.signum() != Ordering::Greater {
                return Ordering::Greater;
            }
            lhs_sq.cmp(&c.square())
        }
    }

    /// Coefficients `(a^2 + b^2 d, 2ab)` of the square over the same `d`.
    pub(crate) fn square_coeffs(&self) -> (Rat, Rat) {
        let a2 = self.a.square() + self.scaled_radicand();
        let b2 = Rat::from(2) * &self.a * &self.b;
        (a2, b2)
    }

    /// Finds `(p, q)` with `(p + q*sqrt(d))^2 == self` and `p + q*sqrt(d) > 0`.
    ///
    /// Such a pair exists exactly when `a^2 - b^2 d` is a rational square `s^2`
    /// and one of `(a +- s)/2` is a rational square `p^2`; then `q = b/(2p)`.
    pub(crate) fn denest_sqrt(&self) -> Option<(Rat, Rat)> {
        let disc = self.a.square() - self.scaled_radicand();
        let s = disc.sqrt_exact()?;
        let half = Rat::new(1, 2);
        for p_sq in [(&self.a + &s) * &half, (&self.a - &s) * &half] {
            let Some(p) = p_sq.sqrt_exact() else { continue };
            if p.is_zero() {
                continue;
            }
            let q = &self.b / (Rat::from(2) * &p);
            let root = QuadExt::try_new(p.clone(), q.clone(), self.d.clone())?;
            return Some(if root.cmp_rat(&Rat::zero()) == Ordering::Greater {
                (p, q)
            } else {
                (-p, -q)
            });
        }
        None
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn q(a: &str, b: &str, d: &str) -> QuadExt {
        QuadExt::try_new(r(a), r(b), r(d)).unwrap()
    }

    #[test]
    fn rejects_degenerate() {
        assert!(QuadExt::try_new(r("1"), r("0"), r("2")).is_none());
        assert!(QuadExt::try_new(r("1"), r("1"), r("9/4")).is_none());
        assert!(QuadExt::try_new(r("1"), r("1"), r("-2")).is_none());
    }

    #[test]
    fn comparison_by_squaring() {
        // sqrt(2) - 1 ~ 0.4142
        let x = q("-1", "1", "2");
        assert_eq!(x.cmp_rat(&r("1/2")), Ordering::Less);
        assert_eq!(x.cmp_rat(&r("2/5")), Ordering::Greater);
        assert_eq!(x.cmp_rat(&r("-3")), Ordering::Greater);
        // 1 - sqrt(2) ~ -0.4142
        let y = q("1", "-1", "2");
        assert_eq!(y.cmp_rat(&r("0")), Ordering::Less);
        assert_eq!(y.cmp_rat(&r("-1/2")), Ordering::Greater);
        assert_eq!(y.cmp_rat(&r("-2/5")), Ordering::Less);
    }

    #[test]
    fn square_coefficients() {
        let (a, b) = q("1/2", "1/4", "1/3").square_coeffs();
        assert_eq!(a, r("13/48"));
        assert_eq!(b, r("1/4"));
    }

    #[test]
    fn denesting() {
        // (1/8 + sqrt(1/3))^2 = 67/192 + (1/4) sqrt(1/3)
        let nu = q("67/192", "1/4", "1/3");
        assert_eq!(nu.denest_sqrt(), Some((r("1/8"), r("1"))));
        // (-1 + sqrt 2)^2 = 3 - 2 sqrt 2 ; positive root is sqrt2 - 1
        let sq = q("3", "-2", "2");
        assert_eq!(sq.denest_sqrt(), Some((r("-1"), r("1"))));
        assert_eq!(q("1", "1", "2").denest_sqrt(), None);
    }
}
