//! Executable checks of the braided vertex bialgebra structure.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{render_poly, MPoly, Rat, VarId, ZSeries};
use crate::coha::{shuffle_poly, shuffle_product, to_factor};
use crate::error::{Error, Result};
use crate::quiver::{theta_between, CohClass, DimVector, Quiver, WeightedComplex};
use crate::vertex::{coproduct_poly, s_complex, s_lead, s_series, split_poly, Orientation};

/// Outcome of one bialgebra instance.
#[derive(Clone, Debug)]
pub struct BialgebraReport {
    pub holds: bool,
    /// Compared `z`-powers.
    pub window: (i64, i64),
    /// First differing power and the rendered difference there.
    pub witness: Option<(i64, String)>,
    pub lhs: ZSeries,
    pub rhs: ZSeries,
    /// Number of intermediate splits summed on the right.
    pub splits: usize,
}

/// The four-way decompositions `(α₁, α₂, β₁, β₂)` with `α₁ + α₂ = γ₁`,
/// `β₁ + β₂ = γ₂`, `α₁ + β₁ = γ`, `α₂ + β₂ = γ'`.
pub fn compatible_splits(
    g1: &DimVector,
    g2: &DimVector,
    g: &DimVector,
) -> Vec<(DimVector, DimVector, DimVector, DimVector)> {
    let mut out = Vec::new();
    for a1 in g1.sub_vectors() {
        let Some(b1) = g.checked_sub(&a1) else {
            continue;
        };
        let Some(b2) = g2.checked_sub(&b1) else {
            continue;
        };
        let a2 = g1.checked_sub(&a1).expect("sub-vector");
        out.push((a1, a2, b1, b2));
    }
    out
}

fn relabel(p: &MPoly, map: &[(u8, u8)]) -> MPoly {
    p.rename(|v| match v {
        VarId::Root { factor, .. } => match map.iter().find(|m| m.0 == factor) {
            Some(m) => v.with_factor(m.1),
            None => v,
        },
        o => o,
    })
}

/// Compares `Y^∨(α·β)` with the braided product of `Y^∨(α)` and `Y^∨(β)` at
/// the split `(γ, γ')`, exactly on the top `depth + 1` powers of `z` (and on
/// every power above them).
pub fn check_bialgebra(
    q: &Quiver,
    alpha: &CohClass,
    beta: &CohClass,
    split: (&DimVector, &DimVector),
    depth: u32,
    orient: &Orientation,
) -> Result<BialgebraReport> {
    let (g, h) = split;
    let (g1, g2) = (&alpha.gamma, &beta.gamma);
    if g.add(h) != g1.add(g2) {
        return Err(Error::InvalidInput(format!(
            "split {g} + {h} does not match {g1} + {g2}"
        )));
    }
    let da = alpha.poly.degree().unwrap_or(0) as i64;
    let db = beta.poly.degree().unwrap_or(0) as i64;
    let lead = q.euler_form(g, h) + da + db - q.euler_form(g1, g2);
    let lo = lead - depth as i64;

    let prod = shuffle_product(q, alpha, beta)?;
    let lhs = coproduct_poly(q, &prod.poly, g, h, 1, 2, lo, orient)?;

    let splits = compatible_splits(g1, g2, g);
    let parts: Vec<Result<ZSeries>> = splits
        .par_iter()
        .map(|(a1, a2, b1, b2)| {
            let ta = q.euler_form(a1, a2) + da;
            let tb = q.euler_form(b1, b2) + db;
            let ts = s_lead(q, b1, a2);
            let reach = (ta + tb + ts - lo).max(0);
            // α on factors (1, 2), β on factors (3, 4), S between 3 (shifted) and 2
            let ya = coproduct_poly(q, &alpha.poly, a1, a2, 1, 2, ta - reach, orient)?;
            let yb = coproduct_poly(q, &beta.poly, b1, b2, 3, 4, tb - reach, orient)?;
            let s = s_series(q, b1, 3, a2, 2, ts - reach, orient)?;
            let prod = ya.mul(&yb).mul(&s);
            prod.try_map(|c| {
                let first = shuffle_poly(q, a1, 1, b1, 3, c, 5)?;
                let second = shuffle_poly(q, a2, 2, b2, 4, &first, 6)?;
                Ok(relabel(&second, &[(5, 1), (6, 2)]))
            })
        })
        .collect();
    let mut rhs: Option<ZSeries> = None;
    for p in parts {
        let p = p?;
        rhs = Some(match rhs {
            None => p,
            Some(r) => r.add(&p),
        });
    }
    let rhs = rhs.unwrap_or_else(|| ZSeries::zero(lo, lead));
    let from = lhs.common_lo(&rhs).max(lo);
    let top = lhs.hi().max(rhs.hi());
    let witness = lhs.first_difference(&rhs, from).map(|m| {
        let d =
            &lhs.coeff_or_zero(m).unwrap_or_default() - &rhs.coeff_or_zero(m).unwrap_or_default();
        (m, render_poly(&d, &q.var_names()))
    });
    Ok(BialgebraReport {
        holds: witness.is_none() && from <= lo,
        window: (from, top),
        witness,
        lhs,
        rhs,
        splits: splits.len(),
    })
}

/// Signed multiset of `(linear form, weight)` factors: even count minus odd count.
fn factor_multiset(c: &WeightedComplex) -> BTreeMap<(Vec<(String, String)>, i64), i64> {
    let key = |l: &MPoly| -> Vec<(String, String)> {
        l.terms()
            .map(|(m, r)| (format!("{m:?}"), r.to_string()))
            .collect()
    };
    let mut out = BTreeMap::new();
    for (l, w) in &c.even {
        *out.entry((key(l), *w)).or_insert(0) += 1;
    }
    for (l, w) in &c.odd {
        *out.entry((key(l), *w)).or_insert(0) -= 1;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// The Euler class of `c` as a sign times a multiset of linear factors
/// `ℓ + w z`, each normalized to a positive leading coefficient.
fn signed_factors(c: &WeightedComplex) -> (bool, BTreeMap<String, i64>) {
    let mut negative = false;
    let mut out = BTreeMap::new();
    for (forms, mult) in [(&c.even, 1), (&c.odd, -1)] {
        for (l, w) in forms {
            let mut f = l + &MPoly::z().scale(&Rat::from_int(*w));
            if f.leading_coeff() < Rat::zero() {
                f = -&f;
                negative = !negative;
            }
            *out.entry(format!("{f:?}")).or_insert(0) += mult;
        }
    }
    out.retain(|_, v| *v != 0);
    (negative, out)
}

/// Outcome of the normal-complex identity on one component quadruple.
#[derive(Clone, Debug)]
pub struct NormalReport {
    pub holds: bool,
    /// The factor-multiset identity for the normal complex.
    pub multiset: bool,
    /// The rational identity defining the Yang–Baxter factor.
    pub s_identity: bool,
}

/// On the component `(α₁, β₁, α₂, β₂)`: pulls `θ(α₁+α₂, β₁+β₂)` back along the
/// direct-sum map, removes `θ(α₁,β₁) ⊕ θ(α₂,β₂)`, and compares with
/// `θ(α₁,β₂) ⊕ θ(α₂,β₁)`. Also checks the defining identity of `S(β₁, α₂)` as
/// a ratio of Euler classes with `α₁, β₁` shifted.
pub fn check_normal_identity(
    q: &Quiver,
    a1: &DimVector,
    b1: &DimVector,
    a2: &DimVector,
    b2: &DimVector,
) -> Result<NormalReport> {
    let n = q.num_nodes();
    if [a1, b1, a2, b2].iter().any(|d| d.len() != n) {
        return Err(Error::InvalidInput(
            "quadruple does not match the quiver".into(),
        ));
    }
    // factors: 1 = α₁, 2 = α₂, 3 = β₁, 4 = β₂; big components on 5 and 6
    let big = theta_between(q, &a1.add(a2), 5, &b1.add(b2), 6, 1);
    let pulled = big.map_forms(|l| split_poly(&split_poly(l, 5, a1, 1, 2), 6, b1, 3, 4));
    let diag = theta_between(q, a1, 1, b1, 3, 1).concat(&theta_between(q, a2, 2, b2, 4, 1));
    let cross = theta_between(q, a1, 1, b2, 4, 1).concat(&theta_between(q, a2, 2, b1, 3, 1));
    let mut lhs = factor_multiset(&pulled);
    for (k, v) in factor_multiset(&diag) {
        *lhs.entry(k).or_insert(0) -= v;
    }
    lhs.retain(|_, v| *v != 0);
    let multiset = lhs == factor_multiset(&cross);

    // Ψ[θ(α₁,α₂) + θ(β₁,α₂) + θ(β₁,β₂) − θ(α₂,β₁)] = S(β₁,α₂) Ψ[θ(α₁,α₂) + θ(β₁,β₂)]
    let t_a = theta_between(q, a1, 1, a2, 2, -1);
    let t_b = theta_between(q, b1, 3, b2, 4, -1);
    let t_ba = theta_between(q, b1, 3, a2, 2, -1);
    let t_ab = theta_between(q, a2, 2, b1, 3, 1);
    let lhs_c = t_a.concat(&t_ba).concat(&t_b).concat(&t_ab.shifted());
    let rhs_c = s_complex(q, b1, 3, a2, 2).concat(&t_a).concat(&t_b);
    let s_identity = signed_factors(&lhs_c) == signed_factors(&rhs_c);
    Ok(NormalReport {
        holds: multiset && s_identity,
        multiset,
        s_identity,
    })
}

/// Outcome of the unit/counit compatibilities.
#[derive(Clone, Debug)]
pub struct CounitReport {
    pub holds: bool,
    /// Names of the failed sub-checks.
    pub failures: Vec<String>,
}

/// The covacuum: the constant term of the dimension-zero component.
pub fn covacuum(c: &CohClass) -> Rat {
    if c.gamma.is_zero() {
        c.poly.constant_term()
    } else {
        Rat::zero()
    }
}

/// Unit and counit compatibilities on the given sample classes:
/// `Y^∨(1) = 1 ⊗ 1`; the covacuum is multiplicative with `covacuum(1) = 1`;
/// `(covacuum ⊗ id) Y^∨ α = α`; `(id ⊗ covacuum) Y^∨ α = α(x + z)`;
/// `1 · α = α = α · 1`.
pub fn check_counit_unit(
    q: &Quiver,
    samples: &[CohClass],
    orient: &Orientation,
) -> Result<CounitReport> {
    let mut failures = Vec::new();
    let zero = DimVector::zero(q.num_nodes());
    let unit = CohClass::unit(q);
    let y1 = coproduct_poly(q, &unit.poly, &zero, &zero, 1, 2, -3, orient)?;
    if y1.to_poly() != Some(MPoly::one()) || y1.coeff_at(-3)? != MPoly::zero() {
        failures.push("Y(1) = 1 (x) 1".to_string());
    }
    if covacuum(&unit) != Rat::one() {
        failures.push("covacuum(1) = 1".into());
    }
    for a in samples {
        let lead = q.euler_form(&a.gamma, &zero) + a.poly.degree().unwrap_or(0) as i64;
        let left = coproduct_poly(q, &a.poly, &zero, &a.gamma, 1, 2, lead - 3, orient)?;
        if left.to_poly() != Some(to_factor(&a.poly, 2)) {
            failures.push(format!("(covacuum (x) id) Y({})", a.render(q)));
        }
        let right = coproduct_poly(q, &a.poly, &a.gamma, &zero, 1, 2, lead - 3, orient)?;
        if right.to_poly() != Some(a.poly.shift(|v| v.factor() == Some(1), &MPoly::z())) {
            failures.push(format!("(id (x) covacuum) Y({})", a.render(q)));
        }
        if shuffle_product(q, &unit, a)? != *a || shuffle_product(q, a, &unit)? != *a {
            failures.push(format!("unit law for {}", a.render(q)));
        }
        for b in samples {
            let ab = shuffle_product(q, a, b)?;
            if covacuum(&ab) != &covacuum(a) * &covacuum(b) {
                failures.push(format!(
                    "covacuum multiplicative on {}, {}",
                    a.render(q),
                    b.render(q)
                ));
            }
        }
    }
    Ok(CounitReport {
        holds: failures.is_empty(),
        failures,
    })
}

/// Basis of symmetric polynomials at `γ`: products over nodes of monomial
/// symmetric functions, of total degree at most `max_deg`.
pub fn monomial_basis(gamma: &DimVector, max_deg: u32) -> Vec<MPoly> {
    let mut out = vec![(MPoly::one(), 0u32)];
    for (q, &g) in gamma.0.iter().enumerate() {
        let vars: Vec<VarId> = (0..g as usize).map(|i| VarId::root(1, q, i)).collect();
        let mut next = Vec::new();
        for (p, d) in &out {
            for lam in partitions_bounded(max_deg - d, g as usize) {
                let deg: u32 = lam.iter().sum();
                next.push((p.mul(&monomial_symmetric(&vars, &lam)), d + deg));
            }
        }
        out = next;
    }
    out.into_iter().map(|x| x.0).collect()
}

/// Partitions with at most `parts` parts and size at most `max`.
fn partitions_bounded(max: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(left: u32, cap: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if cur.len() == parts {
            return;
        }
        for k in (1..=cap.min(left)).rev() {
            cur.push(k);
            rec(left - k, k, parts, cur, out);
            cur.pop();
        }
    }
    rec(max, max, parts, &mut Vec::new(), &mut out);
    out
}

/// The monomial symmetric function `m_λ` in the given variables.
pub fn monomial_symmetric(vars: &[VarId], lam: &[u32]) -> MPoly {
    if lam.len() > vars.len() {
        return MPoly::zero();
    }
    let mut exps: Vec<u32> = lam.to_vec();
    exps.resize(vars.len(), 0);
    exps.sort_unstable();
    // iterate distinct permutations of the exponent vector
    let mut out = MPoly::zero();
    loop {
        let m =
            crate::algebra::Monomial::from_pairs(vars.iter().copied().zip(exps.iter().copied()));
        out.add_term(m, &Rat::one());
        let n = exps.len();
        let Some(i) = (1..n).rev().find(|&i| exps[i - 1] < exps[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| exps[j] > exps[i - 1]).unwrap();
        exps.swap(i - 1, j);
        exps[i..].reverse();
    }
    out
}

/// Homogeneous basis classes at every `γ` with `|γ| <= max_dim`, degree `<= max_deg`.
pub fn sample_classes(q: &Quiver, max_dim: u32, max_deg: u32) -> Vec<CohClass> {
    let mut out = Vec::new();
    for g in q.dim_vectors_up_to(max_dim) {
        for p in monomial_basis(&g, max_deg) {
            out.push(CohClass::new(q, g.clone(), p).expect("symmetric by construction"));
        }
    }
    out
}
