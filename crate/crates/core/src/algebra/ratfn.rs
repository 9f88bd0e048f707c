//! Rational functions with lazy reduction.

use std::fmt;

use super::gcd::gcd;
use super::poly::MPoly;
use super::rat::Rat;
use super::var::VarId;

/// A quotient `num / den` of polynomials, `den != 0`.
///
/// Arithmetic does not cancel common factors; call [`RatFn::reduced`] to get
/// the canonical form (coprime, denominator with leading coefficient 1).
/// Equality is mathematical equality, tested by cross-multiplication.
#[derive(Clone)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

impl RatFn {
    /// `None` when `den` is zero.
    pub fn new(num: MPoly, den: MPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(RatFn { num, den }.normalized_sign())
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFn {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized_sign(self) -> Self {
        let lc = self.den.leading_coeff();
        if lc.is_one() {
            return self;
        }
        RatFn {
            num: self.num.div_rat(&lc),
            den: self.den.div_rat(&lc),
        }
    }

    /// Cancels the gcd and scales the denominator to leading coefficient 1.
    pub fn reduced(&self) -> RatFn {
        if self.num.is_zero() {
            return RatFn::zero();
        }
        let g = gcd(&self.num, &self.den);
        let num = self.num.div_exact(&g).expect("gcd divides numerator");
        let den = self.den.div_exact(&g).expect("gcd divides denominator");
        RatFn { num, den }.normalized_sign()
    }

    /// The polynomial value if the reduced denominator is constant.
    pub fn as_poly(&self) -> Option<MPoly> {
        if let Some(c) = self.den.as_constant() {
            return Some(self.num.div_rat(&c));
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            return Some(q);
        }
        let r = self.reduced();
        r.den.as_constant().map(|c| r.num.div_rat(&c))
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.den == other.den {
            return RatFn {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        if other.den.is_one() {
            return RatFn {
                num: &self.num + &other.num.mul(&self.den),
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            return RatFn {
                num: &self.num.mul(&other.den) + &other.num,
                den: other.den.clone(),
            };
        }
        RatFn {
            num: &self.num.mul(&other.den) + &other.num.mul(&self.den),
            den: self.den.mul(&other.den),
        }
        .normalized_sign()
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
        .normalized_sign()
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFn {
        RatFn {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &RatFn) -> Option<RatFn> {
        if other.is_zero() {
            return None;
        }
        Some(
            RatFn {
                num: self.num.mul(&other.den),
                den: self.den.mul(&other.num),
            }
            .normalized_sign(),
        )
    }

    pub fn recip(&self) -> Option<RatFn> {
        RatFn::one().div(self)
    }

    /// Applies a substitution to numerator and denominator; `None` if the
    /// denominator vanishes identically afterwards.
    pub fn substitute(&self, f: impl Fn(VarId) -> Option<MPoly>) -> Option<RatFn> {
        RatFn::new(self.num.substitute(&f), self.den.substitute(&f))
    }

    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> RatFn {
        RatFn {
            num: self.num.rename(&f),
            den: self.den.rename(&f),
        }
        .normalized_sign()
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFn {}

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> Self {
        RatFn::from_poly(p)
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::render::{parse_poly, VarNames};

    fn p(s: &str) -> MPoly {
        parse_poly(s, &VarNames::default()).unwrap()
    }

    fn f(n: &str, d: &str) -> RatFn {
        RatFn::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn cancellation_sum() {
        // 1/(u1-u2) + 1/(u2-u1) = 0
        let s = f("1", "x1 - x2").add(&f("1", "x2 - x1"));
        assert!(s.reduced().is_zero());
        assert_eq!(s, RatFn::zero());
        let t = f("x1", "x1 - x2").add(&f("x2", "x2 - x1"));
        assert_eq!(t.as_poly(), Some(MPoly::one()));
    }

    #[test]
    fn reduced_is_canonical() {
        let a = f("2*(x1 + z)*(x1 - y1)", "-4*(x1 - y1)*(y1 + 1)");
        let r = a.reduced();
        assert_eq!(r.num(), &p("-1/2*x1 - 1/2*z"));
        assert_eq!(r.den(), &p("y1 + 1"));
        assert_eq!(a, r);
        assert!(RatFn::new(p("1"), MPoly::zero()).is_none());
    }
}
