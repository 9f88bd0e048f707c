//! Truncated Laurent series in `z`, expanded at `z = ∞`.

use std::collections::BTreeMap;

use super::poly::MPoly;
use super::rat::Rat;
use super::ratfn::RatFn;
use super::var::VarId;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("denominator has no constant leading coefficient in z (zero-weight factor)")]
    ZeroWeight,
    #[error("nonzero coefficient at z^{power} lies above the window top {hi}")]
    WindowTooSmall { power: i64, hi: i64 },
    #[error("z^{power} is outside the exact window [{lo}, {hi}]")]
    OutOfWindow { power: i64, lo: i64, hi: i64 },
    #[error("empty window [{lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },
}

/// Coefficients of `z^m` for `lo <= m <= hi`.
///
/// Every coefficient above `hi` is zero. When `truncated` is set, powers below
/// `lo` were discarded and are unknown; otherwise they are exactly zero.
/// Coefficients never contain `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    lo: i64,
    hi: i64,
    coeffs: BTreeMap<i64, MPoly>,
    truncated: bool,
}

impl ZSeries {
    pub fn zero(lo: i64, hi: i64) -> Self {
        ZSeries {
            lo,
            hi,
            coeffs: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn constant(c: MPoly) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(power: i64, c: MPoly) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(power, c);
        }
        ZSeries {
            lo: power,
            hi: power,
            coeffs,
            truncated: false,
        }
    }

    /// Builds a series from raw parts; coefficients outside `[lo, hi]` are dropped.
    pub fn from_parts(lo: i64, hi: i64, coeffs: BTreeMap<i64, MPoly>, truncated: bool) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(m, c)| *m >= lo && *m <= hi && !c.is_zero())
            .collect();
        ZSeries {
            lo,
            hi,
            coeffs,
            truncated,
        }
    }

    /// Splits a polynomial containing `z` into its exact (untruncated) series.
    pub fn from_poly(p: &MPoly) -> Self {
        let by_z = p.coeffs_in(VarId::Z);
        let hi = by_z.keys().next_back().copied().unwrap_or(0) as i64;
        let coeffs = by_z.into_iter().map(|(e, c)| (e as i64, c)).collect();
        ZSeries {
            lo: 0,
            hi,
            coeffs,
            truncated: false,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in ascending power order.
    pub fn coeffs(&self) -> &BTreeMap<i64, MPoly> {
        &self.coeffs
    }

    /// Highest power with a nonzero coefficient.
    pub fn leading_power(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Exact coefficient of `z^m`; requesting a power outside the window is an error.
    pub fn coeff_at(&self, m: i64) -> Result<MPoly, SeriesError> {
        if m < self.lo || m > self.hi {
            return Err(SeriesError::OutOfWindow {
                power: m,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(self.coeffs.get(&m).cloned().unwrap_or_default())
    }

    /// Coefficient of `z^m`, with zero above `hi` and below an untruncated `lo`.
    pub fn coeff_or_zero(&self, m: i64) -> Result<MPoly, SeriesError> {
        if m > self.hi || (!self.truncated && m < self.lo) {
            return Ok(MPoly::zero());
        }
        self.coeff_at(m)
    }

    /// Drops powers below `lo`, marking the result truncated.
    pub fn truncate_below(&self, lo: i64) -> ZSeries {
        if lo <= self.lo {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .range(lo..)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        ZSeries {
            lo,
            hi: self.hi.max(lo),
            coeffs,
            truncated: true,
        }
    }

    pub fn add(&self, other: &ZSeries) -> ZSeries {
        let lo = match (self.truncated, other.truncated) {
            (true, true) => self.lo.max(other.lo),
            (true, false) => self.lo,
            (false, true) => other.lo,
            (false, false) => self.lo.min(other.lo),
        };
        let hi = self.hi.max(other.hi);
        let mut coeffs = BTreeMap::new();
        for s in [self, other] {
            for (m, c) in s.coeffs.range(lo..) {
                coeffs.entry(*m).or_insert_with(MPoly::zero).add_assign(c);
            }
        }
        Self::from_parts(lo, hi.max(lo), coeffs, self.truncated || other.truncated)
    }

    pub fn neg(&self) -> ZSeries {
        self.map(|c| -c)
    }

    pub fn sub(&self, other: &ZSeries) -> ZSeries {
        self.add(&other.neg())
    }

    /// Product; the result window is the largest range on which the product is exact.
    pub fn mul(&self, other: &ZSeries) -> ZSeries {
        let hi = self.hi + other.hi;
        let lo = match (self.truncated, other.truncated) {
            (false, false) => self.lo + other.lo,
            (true, false) => self.lo + other.hi,
            (false, true) => other.lo + self.hi,
            (true, true) => (self.lo + other.hi).max(other.lo + self.hi),
        };
        let mut coeffs: BTreeMap<i64, MPoly> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a + b >= lo {
                    coeffs.entry(a + b).or_default().add_assign(&ca.mul(cb));
                }
            }
        }
        Self::from_parts(lo, hi.max(lo), coeffs, self.truncated || other.truncated)
    }

    pub fn mul_poly(&self, p: &MPoly) -> ZSeries {
        self.map(|c| c.mul(p))
    }

    pub fn scale(&self, c: &Rat) -> ZSeries {
        self.map(|x| x.scale(c))
    }

    /// Applies `f` to each coefficient, keeping the window.
    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> ZSeries {
        let coeffs = self.coeffs.iter().map(|(m, c)| (*m, f(c))).collect();
        Self::from_parts(self.lo, self.hi, coeffs, self.truncated)
    }

    /// Fallible variant of [`ZSeries::map`].
    pub fn try_map<E>(&self, f: impl Fn(&MPoly) -> Result<MPoly, E>) -> Result<ZSeries, E> {
        let mut coeffs = BTreeMap::new();
        for (m, c) in &self.coeffs {
            coeffs.insert(*m, f(c)?);
        }
        Ok(Self::from_parts(self.lo, self.hi, coeffs, self.truncated))
    }

    /// Recombines the window into a single polynomial in `z` (requires `lo >= 0`
    /// or accepts only nonnegative powers present).
    pub fn to_poly(&self) -> Option<MPoly> {
        let mut out = MPoly::zero();
        for (m, c) in &self.coeffs {
            if *m < 0 {
                return None;
            }
            out.add_assign(&c.mul(&MPoly::var(VarId::Z).pow(*m as u32)));
        }
        Some(out)
    }

    /// Lowest power on which `self` and `other` are both exact.
    pub fn common_lo(&self, other: &ZSeries) -> i64 {
        match (self.truncated, other.truncated) {
            (true, true) => self.lo.max(other.lo),
            (true, false) => self.lo,
            (false, true) => other.lo,
            (false, false) => self.lo.min(other.lo),
        }
    }

    /// First power in `[lo, ∞)` where the two series differ, if any.
    pub fn first_difference(&self, other: &ZSeries, lo: i64) -> Option<i64> {
        let top = self.hi.max(other.hi);
        (lo..=top).rev().find(|&m| {
            let a = self.coeffs.get(&m);
            let b = other.coeffs.get(&m);
            match (a, b) {
                (None, None) => false,
                (Some(a), Some(b)) => a != b,
                _ => true,
            }
        })
    }
}

/// Expands `f` at `z = ∞` on the window `[lo, hi]`.
///
/// The denominator, as a polynomial in `z`, must have a nonzero rational
/// leading coefficient. Fails if a nonzero coefficient lies above `hi`.
pub fn series_expand(f: &RatFn, window: (i64, i64)) -> Result<ZSeries, SeriesError> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(SeriesError::EmptyWindow { lo, hi });
    }
    let num = f.num().coeffs_in(VarId::Z);
    let den = f.den().coeffs_in(VarId::Z);
    let e = *den.keys().next_back().expect("nonzero denominator") as i64;
    let lead = den[&(e as u32)]
        .as_constant()
        .ok_or(SeriesError::ZeroWeight)?;
    let inv = lead.recip().expect("nonzero leading coefficient");
    let Some(top_num) = num.keys().next_back().map(|&k| k as i64) else {
        return Ok(ZSeries {
            lo,
            hi,
            coeffs: BTreeMap::new(),
            truncated: false,
        });
    };
    let top = top_num - e;
    let mut coeffs: BTreeMap<i64, MPoly> = BTreeMap::new();
    if e == 0 {
        for (k, c) in &num {
            coeffs.insert(*k as i64, c.scale(&inv));
        }
    } else {
        // c_j = (n_{j+e} - Σ_{i<e} d_i c_{j+e-i}) / d_e, from the top down
        let mut j = top;
        while j >= lo.min(top) {
            let mut acc = num.get(&((j + e) as u32)).cloned().unwrap_or_default();
            for (i, d) in den.range(..e as u32) {
                if let Some(c) = coeffs.get(&(j + e - *i as i64)) {
                    acc.sub_assign(&d.mul(c));
                }
            }
            if !acc.is_zero() {
                coeffs.insert(j, acc.scale(&inv));
            }
            j -= 1;
        }
    }
    if let Some((&m, _)) = coeffs.range(hi + 1..).next() {
        return Err(SeriesError::WindowTooSmall { power: m, hi });
    }
    let min_num = num.keys().next().map(|&k| k as i64).unwrap_or(0);
    let truncated = e > 0 || lo > min_num;
    Ok(ZSeries::from_parts(lo, hi, coeffs, truncated))
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
    fn polynomial_is_exact() {
        let s = series_expand(&f("z + x", "1"), (0, 1)).unwrap();
        assert_eq!(s.coeff_at(1).unwrap(), MPoly::one());
        assert_eq!(s.coeff_at(0).unwrap(), p("x"));
        assert!(!s.is_truncated());
        assert!(s.coeff_at(2).is_err());
    }

    #[test]
    fn geometric_series() {
        let s = series_expand(&f("1", "z + x"), (-3, -1)).unwrap();
        assert_eq!(s.coeff_at(-1).unwrap(), p("1"));
        assert_eq!(s.coeff_at(-2).unwrap(), p("-x"));
        assert_eq!(s.coeff_at(-3).unwrap(), p("x^2"));
        assert!(s.coeff_at(-4).is_err());
    }

    #[test]
    fn mobius_expansion() {
        let s = series_expand(&f("z - x", "z + x"), (-2, 0)).unwrap();
        assert_eq!(s.coeff_at(0).unwrap(), p("1"));
        assert_eq!(s.coeff_at(-1).unwrap(), p("-2*x"));
        assert_eq!(s.coeff_at(-2).unwrap(), p("2*x^2"));
    }

    #[test]
    fn errors() {
        assert_eq!(
            series_expand(&f("1", "x + y"), (-1, 0)).err(),
            Some(SeriesError::ZeroWeight)
        );
        assert_eq!(
            series_expand(&f("1", "x*z + 1"), (-1, 0)).err(),
            Some(SeriesError::ZeroWeight)
        );
        assert!(matches!(
            series_expand(&f("z^2", "z + x"), (-1, 0)),
            Err(SeriesError::WindowTooSmall { power: 1, hi: 0 })
        ));
    }

    #[test]
    fn product_window_is_exact() {
        let a = series_expand(&f("1", "z + x"), (-4, -1)).unwrap();
        let b = series_expand(&f("1", "z - x"), (-4, -1)).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.window(), (-5, -2));
        let direct = series_expand(&f("1", "z^2 - x^2"), (-5, -2)).unwrap();
        assert_eq!(ab, direct);
    }
}
