//! Euler classes of weighted two-term complexes, the integration formula over
//! fixed loci, and an independent Grassmann-bundle pushforward oracle.

use serde::Deserialize;

use crate::algebra::poly::{complete, elementary};
use crate::algebra::{parse_poly, MPoly, Monomial, RatFn, VarId, VarNames};
use crate::error::{Error, Result};
use crate::quiver::WeightedComplex;

/// `e(E) = Π_even (ℓ + w z) / Π_odd (ℓ + w z)`, unexpanded.
pub fn euler_two_term(c: &WeightedComplex) -> Result<RatFn> {
    if c.has_zero_weight() {
        return Err(Error::ZeroWeight);
    }
    Ok(c.euler_fraction())
}

/// Whitney sum formula: `e(c₁ ⊕ c₂) = e(c₁) e(c₂)`.
pub fn whitney_check(c1: &WeightedComplex, c2: &WeightedComplex) -> Result<bool> {
    Ok(euler_two_term(&c1.concat(c2))? == euler_two_term(c1)?.mul(&euler_two_term(c2)?))
}

/// One fixed component: the restricted class, its normal complex, and a
/// renaming of variables applied after division.
#[derive(Clone, Debug)]
pub struct FixedComponent {
    pub class: MPoly,
    pub normal: WeightedComplex,
    pub relabel: Vec<(VarId, VarId)>,
}

/// Result of the integration formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pushforward {
    /// The `z⁰` coefficient of a polynomial sum.
    Class(MPoly),
    /// The reduced localized sum.
    Localized(RatFn),
}

/// `Σ relabel(class / e(normal))`. With `t0_extract` the reduced sum must be
/// a polynomial in `z`, and its `z⁰` coefficient is returned.
pub fn localized_pushforward(data: &[FixedComponent], t0_extract: bool) -> Result<Pushforward> {
    let mut acc = RatFn::zero();
    for c in data {
        let term = RatFn::from_poly(c.class.clone())
            .div(&euler_two_term(&c.normal)?)
            .expect("Euler class of nonzero-weight factors is nonzero");
        let term = if c.relabel.is_empty() {
            term
        } else {
            term.rename(|v| c.relabel.iter().find(|r| r.0 == v).map_or(v, |r| r.1))
        };
        acc = acc.add(&term);
    }
    let acc = acc.reduced();
    if !t0_extract {
        return Ok(Pushforward::Localized(acc));
    }
    let p = acc
        .as_poly()
        .ok_or_else(|| Error::NonPolynomial("a denominator survives the fixed-point sum".into()))?;
    Ok(Pushforward::Class(
        p.coeffs_in(VarId::Z).remove(&0).unwrap_or_default(),
    ))
}

#[derive(Deserialize)]
struct FixedSpec {
    class: String,
    #[serde(default)]
    even: Vec<(String, i64)>,
    #[serde(default)]
    odd: Vec<(String, i64)>,
    #[serde(default)]
    relabel: Vec<(String, String)>,
}

/// Parses fixed-point data:
/// `[{"class": "...", "even": [["form", w], ...], "odd": [...], "relabel": [["x1", "y1"], ...]}]`.
pub fn parse_fixed_data(json: &str, names: &VarNames) -> Result<Vec<FixedComponent>> {
    let specs: Vec<FixedSpec> = serde_json::from_str(json)
        .map_err(|e| Error::InvalidInput(format!("fixed-point JSON: {e}")))?;
    let var = |s: &str| -> Result<VarId> {
        let p = parse_poly(s, names)?;
        match p.leading() {
            Some((m, c)) if p.len() == 1 && c.is_one() && m.degree() == 1 => {
                Ok(m.vars().next().unwrap())
            }
            _ => Err(Error::InvalidInput(format!(
                "`{s}` is not a single variable"
            ))),
        }
    };
    specs
        .into_iter()
        .map(|s| {
            let forms = |v: &[(String, i64)]| -> Result<Vec<(MPoly, i64)>> {
                v.iter()
                    .map(|(f, w)| Ok((parse_poly(f, names)?, *w)))
                    .collect()
            };
            Ok(FixedComponent {
                class: parse_poly(&s.class, names)?,
                normal: WeightedComplex {
                    even: forms(&s.even)?,
                    odd: forms(&s.odd)?,
                },
                relabel: s
                    .relabel
                    .iter()
                    .map(|(a, b)| Ok((var(a)?, var(b)?)))
                    .collect::<Result<_>>()?,
            })
        })
        .collect()
}

/// Pushforward along the Grassmann bundle `Gr(n, n+m) → BGL_{n+m}` of a class
/// `h(x; y)` symmetric in the `n` factor-1 roots `x` (sub) and the `m`
/// factor-2 roots `y` (quotient). Returns a polynomial in the factor-1 roots
/// `u_1..u_{n+m}` of the base.
///
/// Works on the full flag bundle: with `w = (x, y)` its cohomology is free over
/// the base with monomial basis `w^a`, `a_i <= N − i`, cut out by the relations
/// `Σ_k (−1)^k e_k(u) h_{N−i+1−k}(w_1..w_i)`. The class is multiplied by the
/// fiber point class `x^{(n−1,…,0)} y^{(m−1,…,0)}` of the flag bundle over the
/// Grassmannian, reduced, and the coefficient of `w^{(N−1,…,0)}` is read off.
pub fn grassmann_pushforward_oracle(h: &MPoly, n: usize, m: usize) -> Result<MPoly> {
    let total = n + m;
    const W: u8 = 7;
    for v in h.vars() {
        let ok = match v {
            VarId::Root {
                factor: 1,
                node: 0,
                slot,
            } => (slot as usize) < n,
            VarId::Root {
                factor: 2,
                node: 0,
                slot,
            } => (slot as usize) < m,
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidInput(
                "oracle input must use x1..xn and y1..ym only".into(),
            ));
        }
    }
    let w = |i: usize| VarId::root(W, 0, i);
    let u: Vec<VarId> = (0..total).map(|i| VarId::root(1, 0, i)).collect();
    let mut p = h.rename(|v| match v {
        VarId::Root {
            factor: 1, slot, ..
        } => w(slot as usize),
        VarId::Root {
            factor: 2, slot, ..
        } => w(n + slot as usize),
        o => o,
    });
    let fiber = Monomial::from_pairs(
        (0..n)
            .map(|i| (w(i), (n - 1 - i) as u32))
            .chain((0..m).map(|j| (w(n + j), (m - 1 - j) as u32))),
    );
    p = p.mul_monomial(&fiber);
    let e: Vec<MPoly> = (0..=total).map(|k| elementary(&u, k)).collect();
    for i in (0..total).rev() {
        let d = (total - i) as u32;
        let ws: Vec<VarId> = (0..=i).map(w).collect();
        let mut rel = MPoly::zero();
        for k in 0..=d as usize {
            let t = e[k].mul(&complete(&ws, d as usize - k));
            if k % 2 == 0 {
                rel.add_assign(&t);
            } else {
                rel.sub_assign(&t);
            }
        }
        p = reduce_by_monic(&p, &rel, w(i), d);
    }
    let top = Monomial::from_pairs((0..total).map(|i| (w(i), (total - 1 - i) as u32)));
    let mut out = MPoly::zero();
    for (mono, c) in p.terms() {
        let mut base = Vec::new();
        let mut fib = Vec::new();
        for &(v, k) in mono.iter() {
            if v.factor() == Some(W) {
                fib.push((v, k));
            } else {
                base.push((v, k));
            }
        }
        let fib = Monomial::from_pairs(fib);
        for &(v, k) in fib.iter() {
            let i = v.slot().unwrap();
            if k as usize > total - 1 - i {
                return Err(Error::ReductionFailure(format!(
                    "w{} has exponent {k} after reduction",
                    i + 1
                )));
            }
        }
        if fib == top {
            out.add_term(Monomial::from_pairs(base), c);
        }
    }
    Ok(out)
}

/// Reduces `p` modulo `rel`, which is monic of degree `d` in `v`, until `deg_v p < d`.
fn reduce_by_monic(p: &MPoly, rel: &MPoly, v: VarId, d: u32) -> MPoly {
    let mut by_v = p.coeffs_in(v);
    let tail = {
        let mut t = rel.coeffs_in(v);
        t.remove(&d);
        t
    };
    // v^d ≡ −tail
    while let Some((&e, _)) = by_v.iter().next_back() {
        if e < d {
            break;
        }
        let c = by_v.remove(&e).unwrap();
        for (k, t) in &tail {
            let contrib = -c.mul(t);
            let entry = by_v.entry(e - d + k).or_default();
            entry.add_assign(&contrib);
            if entry.is_zero() {
                by_v.remove(&(e - d + k));
            }
        }
    }
    MPoly::from_coeffs_in(v, &by_v)
}
