//! The braided vertex coalgebra on quiver moduli cohomology.
//!
//! Conventions: the translation acts on tensor factor 1 by `x ↦ x + z`, and
//! `θ(γ, γ')` enters with weight `−1`, so its factors read `y − x − z`.
//! The coproduct of `α` at the split `(γ, γ')` is
//! `ε(γ, γ') · Ψe(θ(γ, γ')) · α(x + z, y)`, expanded at `z = ∞`.

use std::collections::BTreeMap;

use crate::algebra::{series_expand, BiSeries, MPoly, Rat, RatFn, VarId, ZSeries};
use crate::error::{Error, Result};
use crate::quiver::{theta_between, CohClass, DimVector, Quiver, WeightedComplex};

/// Sign data `(ε, δ)` attached to pairs of dimension vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    /// `ε ≡ δ ≡ 1`.
    Trivial,
    /// `ε(γ, γ') = (−1)^{χ(γ, γ')}` and `δ(γ, γ') = (−1)^{χ(γ, γ') + χ(γ', γ)}`.
    #[default]
    EulerForm,
    /// Explicit values; missing pairs default to `+1`.
    Table(BTreeMap<(DimVector, DimVector), (i8, i8)>),
}

fn parity_sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl Orientation {
    pub fn epsilon(&self, q: &Quiver, g: &DimVector, h: &DimVector) -> i64 {
        match self {
            Orientation::Trivial => 1,
            Orientation::EulerForm => parity_sign(q.euler_form(g, h)),
            Orientation::Table(t) => t.get(&(g.clone(), h.clone())).map_or(1, |e| e.0 as i64),
        }
    }

    pub fn delta(&self, q: &Quiver, g: &DimVector, h: &DimVector) -> i64 {
        match self {
            Orientation::Trivial => 1,
            Orientation::EulerForm => parity_sign(q.symmetrized_form(g, h)),
            Orientation::Table(t) => t.get(&(g.clone(), h.clone())).map_or(1, |e| e.1 as i64),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(Orientation::Trivial),
            "euler" => Ok(Orientation::EulerForm),
            _ => Err(Error::InvalidInput(format!(
                "unknown orientation `{s}` (use `trivial` or `euler`)"
            ))),
        }
    }
}

/// `Π_even (ℓ + w z) / Π_odd (ℓ + w z)` expanded at `z = ∞`.
pub fn psi_euler(c: &WeightedComplex, window: (i64, i64)) -> Result<ZSeries> {
    if c.has_zero_weight() {
        return Err(Error::ZeroWeight);
    }
    Ok(series_expand(&c.euler_fraction(), window)?)
}

/// Window `[lead − depth, lead]`.
pub fn depth_window(lead: i64, depth: u32) -> (i64, i64) {
    (lead - depth as i64, lead)
}

/// Splits the roots of `γ + γ'` on factor `from`: the first `γ_q` roots of each
/// node go to factor `fa`, the rest (renumbered) to factor `fb`.
pub fn split_poly(p: &MPoly, from: u8, g: &DimVector, fa: u8, fb: u8) -> MPoly {
    p.rename(|v| match v {
        VarId::Root { factor, node, slot } if factor == from => {
            let k = g.get(node as usize) as u16;
            if slot < k {
                VarId::Root {
                    factor: fa,
                    node,
                    slot,
                }
            } else {
                VarId::Root {
                    factor: fb,
                    node,
                    slot: slot - k,
                }
            }
        }
        o => o,
    })
}

/// `⊕^*α` at the split `(γ, γ')`: a polynomial in factor-1 and factor-2 roots.
pub fn split_pullback(q: &Quiver, alpha: &CohClass, g: &DimVector, h: &DimVector) -> Result<MPoly> {
    check_split(q, alpha, g, h)?;
    Ok(split_poly(&alpha.poly, 1, g, 1, 2))
}

fn check_split(q: &Quiver, alpha: &CohClass, g: &DimVector, h: &DimVector) -> Result<()> {
    if g.len() != q.num_nodes() || h.len() != q.num_nodes() || g.add(h) != alpha.gamma {
        return Err(Error::InvalidInput(format!(
            "split {g} + {h} does not add up to {}",
            alpha.gamma
        )));
    }
    Ok(())
}

/// Shifts the roots of factor `f` by `z`.
pub fn shift_factor(p: &MPoly, f: u8) -> MPoly {
    p.shift(|v| v.factor() == Some(f), &MPoly::z())
}

/// Rejects nonzero coefficients above `hi` and restricts to `[lo, hi]`.
fn clip(s: ZSeries, lo: i64, hi: i64) -> Result<ZSeries> {
    if let Some(top) = s.leading_power() {
        if top > hi {
            return Err(Error::WindowInsufficient { lo, hi, lead: top });
        }
    }
    let lo_exact = s.lo().max(lo);
    Ok(ZSeries::from_parts(
        lo_exact,
        hi.max(lo_exact),
        s.coeffs().clone(),
        s.is_truncated() || lo > s.lo(),
    ))
}

/// Coproduct of a polynomial on the roots (factor 1) of `γ + γ'`, landing on
/// factors `fa` (shifted) and `fb`; exact on powers `>= lo`, with all
/// coefficients above the natural top power `χ(γ,γ') + deg p` equal to zero.
#[allow(clippy::too_many_arguments)]
pub fn coproduct_poly(
    q: &Quiver,
    p: &MPoly,
    g: &DimVector,
    h: &DimVector,
    fa: u8,
    fb: u8,
    lo: i64,
    orient: &Orientation,
) -> Result<ZSeries> {
    let chi = q.euler_form(g, h);
    let deg = p.degree().unwrap_or(0) as i64;
    let theta = theta_between(q, g, fa, h, fb, -1);
    let e = psi_euler(&theta, ((lo - deg).min(chi), chi))?;
    let split = shift_factor(&split_poly(p, 1, g, fa, fb), fa);
    let a = ZSeries::from_poly(&split);
    let eps = orient.epsilon(q, g, h);
    Ok(e.mul(&a).scale(&Rat::from_int(eps)))
}

/// `Y^∨(α)` at the split `(γ, γ')` on the window `[lo, hi]`.
pub fn y_covertex(
    q: &Quiver,
    alpha: &CohClass,
    g: &DimVector,
    h: &DimVector,
    window: (i64, i64),
    orient: &Orientation,
) -> Result<ZSeries> {
    check_split(q, alpha, g, h)?;
    let s = coproduct_poly(q, &alpha.poly, g, h, 1, 2, window.0, orient)?;
    clip(s, window.0, window.1)
}

/// Top power of `Y^∨(α)` at a split: `χ(γ, γ') + deg α`.
pub fn covertex_lead(q: &Quiver, alpha: &CohClass, g: &DimVector, h: &DimVector) -> i64 {
    q.euler_form(g, h) + alpha.poly.degree().unwrap_or(0) as i64
}

/// The holomorphic translation coproduct `α(x + z, y)`, with no `θ` twist.
pub fn holomorphic_y(
    q: &Quiver,
    alpha: &CohClass,
    g: &DimVector,
    h: &DimVector,
) -> Result<ZSeries> {
    let p = split_pullback(q, alpha, g, h)?;
    Ok(ZSeries::from_poly(&shift_factor(&p, 1)))
}

/// The ratio `δ · Ψe(θ(γ,γ')) / Ψe(σ^*θ)` as an exact rational function, with
/// factor `fa` (holding `γ`) shifted by `z` against factor `fb` (holding `γ'`).
pub fn s_fraction(
    q: &Quiver,
    g: &DimVector,
    fa: u8,
    h: &DimVector,
    fb: u8,
    orient: &Orientation,
) -> RatFn {
    s_complex(q, g, fa, h, fb)
        .euler_fraction()
        .scale(&Rat::from_int(orient.delta(q, g, h)))
}

/// `θ(γ,γ') ⊖ σ^*θ` as one weighted complex, so that its Euler class is `S` up to `δ`.
pub fn s_complex(q: &Quiver, g: &DimVector, fa: u8, h: &DimVector, fb: u8) -> WeightedComplex {
    theta_between(q, g, fa, h, fb, -1).concat(&theta_between(q, h, fb, g, fa, 1).shifted())
}

/// Leading power of the Yang–Baxter series: `χ(γ, γ') − χ(γ', γ)`.
pub fn s_lead(q: &Quiver, g: &DimVector, h: &DimVector) -> i64 {
    q.euler_form(g, h) - q.euler_form(h, g)
}

/// `S(z)` on factors `fa` (shifted) and `fb`, exact from `lo`.
pub fn s_series(
    q: &Quiver,
    g: &DimVector,
    fa: u8,
    h: &DimVector,
    fb: u8,
    lo: i64,
    orient: &Orientation,
) -> Result<ZSeries> {
    let lead = s_lead(q, g, h);
    Ok(series_expand(
        &s_fraction(q, g, fa, h, fb, orient),
        (lo.min(lead), lead),
    )?)
}

/// `S(γ, γ')` on factors 1 (shifted) and 2, on the window `[lo, hi]`.
pub fn s_matrix(
    q: &Quiver,
    g: &DimVector,
    h: &DimVector,
    window: (i64, i64),
    orient: &Orientation,
) -> Result<ZSeries> {
    let s = s_series(q, g, 1, h, 2, window.0, orient)?;
    clip(s, window.0, window.1)
}

/// Result of a Yang–Baxter check.
#[derive(Clone, Debug)]
pub struct YbeReport {
    pub holds: bool,
    /// Exact `z`-power range of the compared products.
    pub z_window: (i64, i64),
    /// Exact total-power range (`z`-power plus `w`-power).
    pub total_window: (i64, i64),
    /// First `(z-power, w-power)` where the two sides differ.
    pub witness: Option<(i64, i64)>,
    pub terms: usize,
}

/// Compares `S12(z) S13(z+w) S23(w)` with `S23(w) S13(z+w) S12(z)`, each
/// factor expanded to the given depth, on their common exact region.
pub fn ybe_check(
    q: &Quiver,
    g1: &DimVector,
    g2: &DimVector,
    g3: &DimVector,
    depth: u32,
    orient: &Orientation,
) -> Result<YbeReport> {
    let d = depth as i64;
    let k12 = s_lead(q, g1, g2);
    let k13 = s_lead(q, g1, g3);
    let k23 = s_lead(q, g2, g3);
    let s12 = s_series(q, g1, 1, g2, 2, k12 - d, orient)?;
    let s13 = s_series(q, g1, 1, g3, 3, k13 - d, orient)?;
    // S23 shifts factor 2 by w; the series variable is named z throughout
    let s23 = s_series(q, g2, 2, g3, 3, k23 - d, orient)?;
    let b12 = BiSeries::from_z(&s12);
    let b13 = BiSeries::from_z_plus_w(&s13, k13 - d);
    let b23 = BiSeries::from_w(&s23);
    let lhs = b12.mul(&b13).mul(&b23);
    let rhs = b23.mul(&b13).mul(&b12);
    let witness = lhs.first_difference(&rhs);
    Ok(YbeReport {
        holds: witness.is_none() && lhs.z == rhs.z && lhs.t == rhs.t,
        z_window: (lhs.z.lo, lhs.z.hi),
        total_window: (lhs.t.lo, lhs.t.hi),
        witness,
        terms: lhs.coeffs().len(),
    })
}

/// Cohomological degree `2 · deg α + χ(γ, γ)` of a homogeneous class.
pub fn degree_of(q: &Quiver, alpha: &CohClass) -> Result<i64> {
    let d = alpha.poly.degree().ok_or(Error::NonHomogeneous)?;
    if !alpha.poly.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    Ok(2 * d as i64 + q.euler_form(&alpha.gamma, &alpha.gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, VarNames};

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn p(s: &str) -> MPoly {
        parse_poly(s, &VarNames::default()).unwrap()
    }

    fn cls(q: &Quiver, s: &str) -> CohClass {
        CohClass::parse(q, s).unwrap()
    }

    #[test]
    fn psi_examples() {
        let c = WeightedComplex {
            even: vec![(p("x"), 1)],
            odd: vec![],
        };
        assert_eq!(psi_euler(&c, (0, 1)).unwrap().to_poly(), Some(p("z + x")));
        let c = WeightedComplex {
            even: vec![(p("x"), 1), (p("y"), 1)],
            odd: vec![],
        };
        assert_eq!(
            psi_euler(&c, (0, 2)).unwrap().to_poly(),
            Some(p("z^2 + (x+y)*z + x*y"))
        );
        let c = WeightedComplex {
            even: vec![],
            odd: vec![(p("x"), 1)],
        };
        let s = psi_euler(&c, (-3, -1)).unwrap();
        assert_eq!(s.coeff_at(-3).unwrap(), p("x^2"));
        let c = WeightedComplex {
            even: vec![(p("x"), 0)],
            odd: vec![],
        };
        assert_eq!(psi_euler(&c, (0, 1)).err(), Some(Error::ZeroWeight));
    }

    #[test]
    fn split_pullback_examples() {
        let a1 = Quiver::a1();
        let (g, h) = (dv(&[1]), dv(&[1]));
        assert_eq!(
            split_pullback(&a1, &cls(&a1, "x1 + x2@[2]"), &g, &h).unwrap(),
            p("x + y")
        );
        assert_eq!(
            split_pullback(&a1, &cls(&a1, "x1*x2@[2]"), &g, &h).unwrap(),
            p("x*y")
        );
        assert_eq!(
            split_pullback(&a1, &cls(&a1, "x1^2*x2 + x1*x2^2@[2]"), &g, &h).unwrap(),
            p("x^2*y + x*y^2")
        );
    }

    #[test]
    fn covertex_examples() {
        let a1 = Quiver::a1();
        let t = Orientation::Trivial;
        let s = y_covertex(&a1, &cls(&a1, "1@[1]"), &dv(&[1]), &dv(&[0]), (0, 0), &t).unwrap();
        assert_eq!(s.to_poly(), Some(MPoly::one()));
        let s = y_covertex(&a1, &cls(&a1, "1@[2]"), &dv(&[1]), &dv(&[1]), (0, 1), &t).unwrap();
        assert_eq!(s.to_poly(), Some(p("-z + y - x")));
        let e = Orientation::EulerForm;
        let s = y_covertex(&a1, &cls(&a1, "1@[2]"), &dv(&[1]), &dv(&[1]), (0, 1), &e).unwrap();
        assert_eq!(s.to_poly(), Some(p("z + x - y")));
        let j = Quiver::jordan();
        let s = y_covertex(&j, &cls(&j, "1@[2]"), &dv(&[1]), &dv(&[1]), (-3, 0), &t).unwrap();
        assert_eq!(s.coeffs().len(), 1);
        assert_eq!(s.coeff_at(0).unwrap(), MPoly::one());
        assert!(matches!(
            y_covertex(&a1, &cls(&a1, "1@[2]"), &dv(&[1]), &dv(&[1]), (-1, 0), &t),
            Err(Error::WindowInsufficient { .. })
        ));
    }

    #[test]
    fn holomorphic_examples() {
        let a1 = Quiver::a1();
        let (g, h) = (dv(&[1]), dv(&[1]));
        assert_eq!(
            holomorphic_y(&a1, &cls(&a1, "1@[2]"), &g, &h)
                .unwrap()
                .to_poly(),
            Some(MPoly::one())
        );
        assert_eq!(
            holomorphic_y(&a1, &cls(&a1, "x1 + x2@[2]"), &g, &h)
                .unwrap()
                .to_poly(),
            Some(p("x + z + y"))
        );
        assert_eq!(
            holomorphic_y(&a1, &cls(&a1, "1@[1]"), &g, &dv(&[0]))
                .unwrap()
                .to_poly(),
            Some(MPoly::one())
        );
    }

    #[test]
    fn s_matrix_examples() {
        let j = Quiver::jordan();
        let one = dv(&[1]);
        for o in [Orientation::Trivial, Orientation::EulerForm] {
            let s = s_matrix(&j, &one, &one, (-3, 0), &o).unwrap();
            assert_eq!(s.coeffs().len(), 1);
            assert_eq!(s.coeff_at(0).unwrap(), MPoly::one());
        }
        // symmetric θ of odd rank: S = (−1)^{rk θ}
        let a1 = Quiver::a1();
        let s = s_matrix(&a1, &one, &one, (-2, 0), &Orientation::Trivial).unwrap();
        assert_eq!(s.coeff_at(0).unwrap(), MPoly::int(-1));
        assert!(s.coeff_at(-1).unwrap().is_zero());
        let k = Quiver::kronecker();
        let s = s_matrix(
            &k,
            &dv(&[0, 0]),
            &dv(&[1, 1]),
            (-2, 0),
            &Orientation::EulerForm,
        )
        .unwrap();
        assert_eq!(s.to_poly(), Some(MPoly::one()));
    }

    #[test]
    fn ybe_examples() {
        let t = Orientation::Trivial;
        let j = Quiver::jordan();
        let one = dv(&[1]);
        assert!(ybe_check(&j, &one, &one, &one, 3, &t).unwrap().holds);
        let a1 = Quiver::a1();
        assert!(ybe_check(&a1, &one, &one, &one, 3, &t).unwrap().holds);
        let k = Quiver::kronecker();
        let r = ybe_check(&k, &dv(&[1, 0]), &dv(&[0, 1]), &dv(&[1, 0]), 2, &t).unwrap();
        assert!(r.holds);
        assert!(r.terms > 0);
    }

    #[test]
    fn degree_examples() {
        let a1 = Quiver::a1();
        let j = Quiver::jordan();
        assert_eq!(degree_of(&a1, &cls(&a1, "1@[1]")).unwrap(), 1);
        assert_eq!(degree_of(&j, &cls(&j, "1@[1]")).unwrap(), 0);
        assert_eq!(degree_of(&a1, &cls(&a1, "x@[1]")).unwrap(), 3);
        assert_eq!(
            degree_of(&a1, &cls(&a1, "x + 1@[1]")).err(),
            Some(Error::NonHomogeneous)
        );
    }
}
