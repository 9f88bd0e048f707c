//! Truncated bivariate series in `z` and `w`, descending in both.
//!
//! A coefficient of `z^a w^b` is indexed by the `z`-power `a` and the total
//! power `t = a + b`. Both indices are bounded above; below, each direction is
//! either exact (zero past the stored range) or truncated. Substituting
//! `z + w` into a one-variable series expands `(z + w)^k` in powers of `w/z`.

use std::collections::BTreeMap;

use super::poly::MPoly;
use super::rat::Rat;
use super::series::ZSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub lo: i64,
    pub hi: i64,
    pub truncated: bool,
}

impl Bound {
    fn mul(self, o: Bound) -> Bound {
        let lo = match (self.truncated, o.truncated) {
            (false, false) => self.lo + o.lo,
            (true, false) => self.lo + o.hi,
            (false, true) => o.lo + self.hi,
            (true, true) => (self.lo + o.hi).max(o.lo + self.hi),
        };
        Bound {
            lo,
            hi: (self.hi + o.hi).max(lo),
            truncated: self.truncated || o.truncated,
        }
    }

    fn exact_from(self) -> i64 {
        if self.truncated {
            self.lo
        } else {
            i64::MIN
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    /// Keyed by `(a, b)`: the powers of `z` and `w`.
    coeffs: BTreeMap<(i64, i64), MPoly>,
    pub z: Bound,
    pub t: Bound,
}

impl BiSeries {
    /// A series in `z` alone.
    pub fn from_z(s: &ZSeries) -> Self {
        let coeffs = s
            .coeffs()
            .iter()
            .map(|(m, c)| ((*m, 0), c.clone()))
            .collect();
        let b = Bound {
            lo: s.lo(),
            hi: s.hi(),
            truncated: s.is_truncated(),
        };
        BiSeries { coeffs, z: b, t: b }
    }

    /// A series in `w` alone.
    pub fn from_w(s: &ZSeries) -> Self {
        let coeffs = s
            .coeffs()
            .iter()
            .map(|(m, c)| ((0, *m), c.clone()))
            .collect();
        BiSeries {
            coeffs,
            z: Bound {
                lo: 0,
                hi: 0,
                truncated: false,
            },
            t: Bound {
                lo: s.lo(),
                hi: s.hi(),
                truncated: s.is_truncated(),
            },
        }
    }

    /// `s(z + w)` with `(z + w)^k = Σ_j binom(k, j) z^{k−j} w^j`, keeping `z`-powers `>= z_lo`.
    pub fn from_z_plus_w(s: &ZSeries, z_lo: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for (&k, c) in s.coeffs() {
            let mut j = 0u32;
            loop {
                let a = k - j as i64;
                if a < z_lo || (k >= 0 && j as i64 > k) {
                    break;
                }
                let b = Rat::binomial(k, j);
                if !b.is_zero() {
                    coeffs.insert((a, j as i64), c.scale(&b));
                }
                j += 1;
            }
        }
        BiSeries {
            coeffs,
            z: Bound {
                lo: z_lo.min(s.hi()),
                hi: s.hi(),
                truncated: true,
            },
            t: Bound {
                lo: s.lo(),
                hi: s.hi(),
                truncated: s.is_truncated(),
            },
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<(i64, i64), MPoly> {
        &self.coeffs
    }

    pub fn is_exact_at(&self, a: i64, b: i64) -> bool {
        a >= self.z.exact_from() && a + b >= self.t.exact_from()
    }

    pub fn mul(&self, o: &BiSeries) -> BiSeries {
        let z = self.z.mul(o.z);
        let t = self.t.mul(o.t);
        let (zmin, tmin) = (z.exact_from(), t.exact_from());
        let mut coeffs: BTreeMap<(i64, i64), MPoly> = BTreeMap::new();
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &o.coeffs {
                let (a, b) = (a1 + a2, b1 + b2);
                if a >= zmin && a + b >= tmin {
                    coeffs.entry((a, b)).or_default().add_assign(&c1.mul(c2));
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        BiSeries { coeffs, z, t }
    }

    /// First exact position (scanning from the top) where the two series differ.
    pub fn first_difference(&self, o: &BiSeries) -> Option<(i64, i64)> {
        let mut keys: Vec<(i64, i64)> =
            self.coeffs.keys().chain(o.coeffs.keys()).copied().collect();
        keys.sort_by(|x, y| y.cmp(x));
        keys.dedup();
        keys.into_iter().find(|&(a, b)| {
            self.is_exact_at(a, b)
                && o.is_exact_at(a, b)
                && self.coeffs.get(&(a, b)) != o.coeffs.get(&(a, b))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, series_expand, RatFn, VarNames};

    fn p(s: &str) -> MPoly {
        parse_poly(s, &VarNames::default()).unwrap()
    }

    #[test]
    fn z_plus_w_of_inverse() {
        // 1/(t + x) = t^-1 - x t^-2 + x^2 t^-3 at t = z + w
        let s = series_expand(&RatFn::new(p("1"), p("z + x")).unwrap(), (-3, -1)).unwrap();
        let b = BiSeries::from_z_plus_w(&s, -4);
        assert_eq!(b.coeffs()[&(-1, 0)], p("1"));
        assert_eq!(b.coeffs()[&(-2, 1)], p("-1"));
        assert_eq!(b.coeffs()[&(-2, 0)], p("-x"));
        assert_eq!(b.coeffs()[&(-3, 1)], p("2*x"));
    }

    #[test]
    fn product_is_commutative_on_exact_region() {
        let s = series_expand(&RatFn::new(p("z - x"), p("z + y")).unwrap(), (-3, 0)).unwrap();
        let a = BiSeries::from_z(&s);
        let b = BiSeries::from_z_plus_w(&s, -3);
        let c = BiSeries::from_w(&s);
        let l = a.mul(&b).mul(&c);
        let r = c.mul(&b).mul(&a);
        assert_eq!(l.first_difference(&r), None);
        assert_eq!(l.z, r.z);
        assert_eq!(l.t, r.t);
    }
}
