//! The cohomological Hall algebra product as a shuffle formula.
//!
//! For classes `f` at `γ` and `g` at `γ'` the product is
//! `Σ_σ σ[ f(x) g(y) K(x, y) ]` with
//! `K = Π_{arrows p→q} (x^{(p)}_i − y^{(q)}_j) / Π_q (x^{(q)}_i − y^{(q)}_j)`,
//! summed over the per-node shuffles that place the `x` roots at a subset
//! of the output slots and the `y` roots at the complement.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{MPoly, Rat, RatFn, VarId};
use crate::error::{Error, Result};
use crate::quiver::{CohClass, DimVector, Quiver};

/// A per-node shuffle: for each node, the output slots receiving the first
/// block (increasing), the complement receiving the second, and the sign of
/// the resulting permutation.
#[derive(Clone, Debug)]
pub struct Shuffle {
    pub first: Vec<Vec<usize>>,
    pub second: Vec<Vec<usize>>,
    pub sign: i64,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All per-node shuffles of `γ` into `γ + γ'`.
pub fn shuffles(g: &DimVector, h: &DimVector) -> Vec<Shuffle> {
    let mut out = vec![Shuffle {
        first: vec![],
        second: vec![],
        sign: 1,
    }];
    for q in 0..g.len() {
        let (a, b) = (g.get(q) as usize, h.get(q) as usize);
        let mut next = Vec::new();
        for s in &out {
            for subset in combinations(a + b, a) {
                let comp: Vec<usize> = (0..a + b).filter(|i| !subset.contains(i)).collect();
                let inv = subset
                    .iter()
                    .map(|&i| comp.iter().filter(|&&c| c < i).count())
                    .sum::<usize>();
                let mut t = s.clone();
                t.first.push(subset);
                t.second.push(comp);
                if inv % 2 == 1 {
                    t.sign = -t.sign;
                }
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn linear(a: VarId, b: VarId) -> MPoly {
    &MPoly::var(a) - &MPoly::var(b)
}

/// `Π_{arrows p→q} (a^{(p)}_i − b^{(q)}_j)`.
pub fn arrow_numerator(q: &Quiver, g: &DimVector, fa: u8, h: &DimVector, fb: u8) -> MPoly {
    let n = q.num_nodes();
    let mut out = MPoly::one();
    for p in 0..n {
        for r in 0..n {
            for _ in 0..q.mult(p, r) {
                for i in 0..g.get(p) as usize {
                    for j in 0..h.get(r) as usize {
                        out = out.mul(&linear(VarId::root(fa, p, i), VarId::root(fb, r, j)));
                    }
                }
            }
        }
    }
    out
}

/// `Π_q (x^{(q)}_i − y^{(q)}_j)` over the node-diagonal pairs.
pub fn node_denominator(g: &DimVector, fa: u8, h: &DimVector, fb: u8) -> MPoly {
    let mut out = MPoly::one();
    for q in 0..g.len() {
        for i in 0..g.get(q) as usize {
            for j in 0..h.get(q) as usize {
                out = out.mul(&linear(VarId::root(fa, q, i), VarId::root(fb, q, j)));
            }
        }
    }
    out
}

/// Linear factors `c_i − c_j`, `i < j`, of the per-node Vandermonde product.
fn vandermonde_factors(g: &DimVector, f: u8) -> Vec<MPoly> {
    let mut out = Vec::new();
    for q in 0..g.len() {
        let n = g.get(q) as usize;
        for i in 0..n {
            for j in i + 1..n {
                out.push(linear(VarId::root(f, q, i), VarId::root(f, q, j)));
            }
        }
    }
    out
}

fn shuffle_rename(s: &Shuffle, fa: u8, fb: u8, fc: u8) -> impl Fn(VarId) -> VarId + '_ {
    move |v| match v {
        VarId::Root { factor, node, slot } if factor == fa => {
            VarId::root(fc, node as usize, s.first[node as usize][slot as usize])
        }
        VarId::Root { factor, node, slot } if factor == fb => {
            VarId::root(fc, node as usize, s.second[node as usize][slot as usize])
        }
        other => other,
    }
}

/// Shuffle product of a polynomial `p` in the factor-`fa` roots of `γ` and the
/// factor-`fb` roots of `γ'`, landing on the factor-`fc` roots of `γ + γ'`.
///
/// Variables of other factors (and `z`) are carried along as parameters.
/// `p` must be symmetric in each node block of both inputs.
pub fn shuffle_poly(
    q: &Quiver,
    g: &DimVector,
    fa: u8,
    h: &DimVector,
    fb: u8,
    p: &MPoly,
    fc: u8,
) -> Result<MPoly> {
    if p.is_zero() {
        return Ok(MPoly::zero());
    }
    let total = g.add(h);
    if g.is_zero() || h.is_zero() {
        let s = &shuffles(g, h)[0];
        return Ok(p.rename(shuffle_rename(s, fa, fb, fc)));
    }
    let mut pre = p.mul(&arrow_numerator(q, g, fa, h, fb));
    for f in vandermonde_factors(g, fa)
        .iter()
        .chain(&vandermonde_factors(h, fb))
    {
        pre = pre.mul(f);
    }
    let shuffles = shuffles(g, h);
    let summed = shuffles
        .par_iter()
        .map(|s| {
            let t = pre.rename(shuffle_rename(s, fa, fb, fc));
            if s.sign < 0 {
                -t
            } else {
                t
            }
        })
        .reduce(MPoly::zero, |mut a, b| {
            a.add_assign(&b);
            a
        });
    let mut out = summed;
    for f in vandermonde_factors(&total, fc) {
        out = out.div_exact(&f).ok_or_else(|| {
            Error::NonPolynomial(format!(
                "shuffle of {g} and {h} leaves a pole along a root difference"
            ))
        })?;
    }
    Ok(out)
}

/// The CoHA product of two classes.
pub fn shuffle_product(q: &Quiver, f: &CohClass, g: &CohClass) -> Result<CohClass> {
    check_dims(q, f, g)?;
    let p = f.poly.mul(&to_factor(&g.poly, 2));
    let out = shuffle_poly(q, &f.gamma, 1, &g.gamma, 2, &p, 1)?;
    Ok(CohClass {
        gamma: f.gamma.add(&g.gamma),
        poly: out,
    })
}

fn check_dims(q: &Quiver, f: &CohClass, g: &CohClass) -> Result<()> {
    if f.gamma.len() != q.num_nodes() || g.gamma.len() != q.num_nodes() {
        return Err(Error::InvalidInput(
            "classes do not match the quiver".into(),
        ));
    }
    Ok(())
}

/// Moves every factor-1 root to factor `f`.
pub fn to_factor(p: &MPoly, f: u8) -> MPoly {
    p.rename(|v| match v {
        VarId::Root { factor: 1, .. } => v.with_factor(f),
        o => o,
    })
}

/// Degree of `f · g` for homogeneous `f`, `g`: `deg f + deg g − χ(γ, γ')`.
pub fn product_degree(q: &Quiver, f_deg: u32, g: &DimVector, g_deg: u32, h: &DimVector) -> i64 {
    f_deg as i64 + g_deg as i64 - q.euler_form(g, h)
}

/// The CoHA unit: `1` at dimension zero.
pub fn coha_unit(q: &Quiver) -> GradedClass {
    GradedClass::from_class(CohClass::unit(q))
}

/// A finite sum of classes over dimension vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedClass {
    pub components: BTreeMap<DimVector, MPoly>,
}

impl GradedClass {
    pub fn from_class(c: CohClass) -> Self {
        let mut g = GradedClass::default();
        g.add_class(&c);
        g
    }

    pub fn add_class(&mut self, c: &CohClass) {
        let e = self.components.entry(c.gamma.clone()).or_default();
        e.add_assign(&c.poly);
        if e.is_zero() {
            self.components.remove(&c.gamma);
        }
    }

    pub fn classes(&self) -> impl Iterator<Item = CohClass> + '_ {
        self.components.iter().map(|(g, p)| CohClass {
            gamma: g.clone(),
            poly: p.clone(),
        })
    }

    /// Bilinear extension of [`shuffle_product`].
    pub fn mul(&self, q: &Quiver, other: &GradedClass) -> Result<GradedClass> {
        let mut out = GradedClass::default();
        for a in self.classes() {
            for b in other.classes() {
                out.add_class(&shuffle_product(q, &a, &b)?);
            }
        }
        Ok(out)
    }
}

/// Outcome of an associativity check.
#[derive(Clone, Debug)]
pub struct AssocReport {
    pub holds: bool,
    /// `(f·g)·h`.
    pub left: CohClass,
    /// `f·(g·h)`.
    pub right: CohClass,
}

/// Compares `(f·g)·h` with `f·(g·h)` exactly.
pub fn assoc_check(q: &Quiver, f: &CohClass, g: &CohClass, h: &CohClass) -> Result<AssocReport> {
    let left = shuffle_product(q, &shuffle_product(q, f, g)?, h)?;
    let right = shuffle_product(q, f, &shuffle_product(q, g, h)?)?;
    Ok(AssocReport {
        holds: left == right,
        left,
        right,
    })
}

/// Which input factor has its roots shifted by `z` in the localized product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftedFactor {
    First,
    Second,
}

/// The localized product: a rational function of the output roots and `z`.
#[derive(Clone, Debug)]
pub struct EquivariantProduct {
    pub gamma: DimVector,
    /// Reduced rational function in the factor-1 roots and `z`.
    pub value: RatFn,
}

impl EquivariantProduct {
    /// Specializes `z = 0`; fails if the reduced denominator vanishes there.
    pub fn at_z0(&self) -> Result<CohClass> {
        let r = specialize_z0(&self.value)?;
        let poly = r.as_poly().ok_or_else(|| {
            Error::NonPolynomial("localized product is not polynomial at z = 0".into())
        })?;
        Ok(CohClass {
            gamma: self.gamma.clone(),
            poly,
        })
    }
}

/// `r(z = 0)` for a rational function whose reduced denominator survives at zero.
pub fn specialize_z0(r: &RatFn) -> Result<RatFn> {
    let r = r.reduced();
    let zero = |v: VarId| (v == VarId::Z).then(MPoly::zero);
    r.substitute(zero).ok_or(Error::PoleAtZero)
}

/// The shuffle sum with the chosen factor's roots shifted by `z` inside both
/// the classes and the kernel.
pub fn shuffle_product_equivariant(
    q: &Quiver,
    f: &CohClass,
    g: &CohClass,
    shift: ShiftedFactor,
) -> Result<EquivariantProduct> {
    check_dims(q, f, g)?;
    let (gm, hm) = (&f.gamma, &g.gamma);
    let total = gm.add(hm);
    let z = MPoly::z();
    let shifted = match shift {
        ShiftedFactor::First => 1u8,
        ShiftedFactor::Second => 2u8,
    };
    let shift_poly = |p: &MPoly| p.shift(|v| v.factor() == Some(shifted), &z);
    let num = shift_poly(
        &f.poly
            .mul(&to_factor(&g.poly, 2))
            .mul(&arrow_numerator(q, gm, 1, hm, 2)),
    );
    let den = shift_poly(&node_denominator(gm, 1, hm, 2));
    // common denominator: every (u_i − u_j ± z), i ≠ j, at each node
    let sgn = match shift {
        ShiftedFactor::First => Rat::one(),
        ShiftedFactor::Second => Rat::from_int(-1),
    };
    let mut common = MPoly::one();
    for node in 0..total.len() {
        let n = total.get(node) as usize;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let l =
                        &linear(VarId::root(3, node, i), VarId::root(3, node, j)) + &z.scale(&sgn);
                    common = common.mul(&l);
                }
            }
        }
    }
    let mut acc = MPoly::zero();
    for s in shuffles(gm, hm) {
        let ren = shuffle_rename(&s, 1, 2, 3);
        let n = num.rename(&ren);
        let d = den.rename(&ren);
        let cof = common.div_exact(&d).ok_or_else(|| {
            Error::NonPolynomial("kernel denominator outside the common denominator".into())
        })?;
        acc.add_assign(&n.mul(&cof));
    }
    let back = |v: VarId| match v {
        VarId::Root { factor: 3, .. } => v.with_factor(1),
        o => o,
    };
    let value = RatFn::new(acc.rename(back), common.rename(back))
        .expect("nonzero")
        .reduced();
    Ok(EquivariantProduct {
        gamma: total,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(q: &Quiver, s: &str) -> CohClass {
        CohClass::parse(q, s).unwrap()
    }

    /// Brute-force oracle: direct rational-function summation over shuffles.
    fn oracle(q: &Quiver, f: &CohClass, g: &CohClass) -> MPoly {
        let p = f
            .poly
            .mul(&to_factor(&g.poly, 2))
            .mul(&arrow_numerator(q, &f.gamma, 1, &g.gamma, 2));
        let d = node_denominator(&f.gamma, 1, &g.gamma, 2);
        let mut acc = RatFn::zero();
        for s in shuffles(&f.gamma, &g.gamma) {
            let ren = shuffle_rename(&s, 1, 2, 1);
            acc = acc.add(&RatFn::new(p.rename(&ren), d.rename(&ren)).unwrap());
        }
        acc.as_poly().expect("polynomial")
    }

    #[test]
    fn structure_constants() {
        let a1 = Quiver::a1();
        let p = |s| {
            shuffle_product(&a1, &cls(&a1, s), &cls(&a1, "1@[1]"))
                .unwrap()
                .render(&a1)
        };
        assert_eq!(p("1@[1]"), "0@[2]");
        assert_eq!(p("x@[1]"), "1@[2]");
        assert_eq!(p("x^2@[1]"), "x1 + x2@[2]");
        let j = Quiver::jordan();
        let r = shuffle_product(&j, &cls(&j, "1@[1]"), &cls(&j, "1@[1]")).unwrap();
        assert_eq!(r.render(&j), "2@[2]");
    }

    #[test]
    fn matches_oracle() {
        let k = Quiver::kronecker();
        let f = cls(&k, "x1_p^2 + x1_q@[1,1]");
        let g = cls(&k, "x1_q*x2_q@[0,2]");
        assert_eq!(
            shuffle_product(&k, &f, &g).unwrap().poly,
            oracle(&k, &f, &g)
        );
        let a1 = Quiver::a1();
        let f = cls(&a1, "x1^3*x2^3@[2]");
        let g = cls(&a1, "x1 + x2@[2]");
        assert_eq!(
            shuffle_product(&a1, &f, &g).unwrap().poly,
            oracle(&a1, &f, &g)
        );
    }

    #[test]
    fn unit_and_assoc() {
        let a1 = Quiver::a1();
        let x = cls(&a1, "x@[1]");
        let u = CohClass::unit(&a1);
        assert_eq!(shuffle_product(&a1, &u, &x).unwrap(), x);
        assert_eq!(shuffle_product(&a1, &x, &u).unwrap(), x);
        assert_eq!(shuffle_product(&a1, &u, &u).unwrap(), u);
        let one = cls(&a1, "1@[1]");
        assert!(assoc_check(&a1, &one, &one, &one).unwrap().holds);
        assert!(assoc_check(&a1, &x, &one, &one).unwrap().holds);
        let j = Quiver::jordan();
        let xj = cls(&j, "x@[1]");
        assert!(assoc_check(&j, &xj, &xj, &cls(&j, "1@[1]")).unwrap().holds);
    }

    #[test]
    fn equivariant_limits() {
        let a1 = Quiver::a1();
        let one = cls(&a1, "1@[1]");
        let x = cls(&a1, "x@[1]");
        for (f, g) in [(&one, &one), (&x, &one), (&x, &x)] {
            for s in [ShiftedFactor::First, ShiftedFactor::Second] {
                let e = shuffle_product_equivariant(&a1, f, g, s).unwrap();
                assert_eq!(e.at_z0().unwrap(), shuffle_product(&a1, f, g).unwrap());
            }
        }
        let e = shuffle_product_equivariant(&a1, &one, &one, ShiftedFactor::First).unwrap();
        assert!(!e.value.is_zero());
        assert!(e.at_z0().unwrap().poly.is_zero());
        let j = Quiver::jordan();
        let e = shuffle_product_equivariant(
            &j,
            &cls(&j, "1@[1]"),
            &cls(&j, "1@[1]"),
            ShiftedFactor::First,
        )
        .unwrap();
        assert_eq!(e.value, RatFn::from_poly(MPoly::int(2)));
    }

    #[test]
    fn pole_at_zero_is_reported() {
        let r = RatFn::new(MPoly::one(), MPoly::z()).unwrap();
        assert_eq!(specialize_z0(&r).err(), Some(Error::PoleAtZero));
    }
}
