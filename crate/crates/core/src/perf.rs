//! The vertex structure on the homology of the moduli of perfect complexes
//! over a point. Components are indexed by rank `n ∈ Z`, each with cohomology
//! `k[c_1, c_2, …]`; homology classes are the duals `(c^ν)^∨` of monomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{MPoly, Monomial, Rat, VarId};
use crate::lattice::{FockBasis, FockState};
use crate::quiver::{hilbert_series, DimVector};

/// `c_k` of the bundle on `factor`.
pub fn chern(factor: u8, k: usize) -> VarId {
    VarId::root(factor, 0, k - 1)
}

/// Weighted degree `Σ k·e_k` of the `factor` Chern variables of `m`.
pub fn chern_weight(m: &Monomial, factor: u8) -> u32 {
    m.iter()
        .filter(|(v, _)| v.factor() == Some(factor))
        .map(|&(v, e)| (v.slot().unwrap() as u32 + 1) * e)
        .sum()
}

/// A homology class: a combination of `(c^ν)^∨` on components `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomState(BTreeMap<(i64, Monomial), Rat>);

impl HomState {
    pub fn zero() -> Self {
        HomState::default()
    }

    /// `(c^ν)^∨` on component `n`; `nu` is a monomial in the factor-1 Chern variables.
    pub fn dual(n: i64, nu: Monomial) -> Self {
        HomState(BTreeMap::from([((n, nu), Rat::one())]))
    }

    pub fn fundamental(n: i64) -> Self {
        HomState::dual(n, Monomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, Monomial), &Rat)> + '_ {
        self.0.iter()
    }

    pub fn add_term(&mut self, key: (i64, Monomial), c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(key.clone()).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, o: &HomState, c: &Rat) {
        for (k, x) in &o.0 {
            self.add_term(k.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Rat) -> HomState {
        let mut r = HomState::zero();
        r.add_scaled(self, c);
        r
    }
}

impl fmt::Display for HomState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, ((n, m), c)) in self.0.iter().enumerate() {
            let neg = *c < Rat::zero();
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let mono: Vec<String> = m
                .iter()
                .map(|&(v, e)| {
                    let k = v.slot().unwrap() + 1;
                    if e == 1 {
                        format!("c{k}")
                    } else {
                        format!("c{k}^{e}")
                    }
                })
                .collect();
            let body = if mono.is_empty() {
                "1".to_string()
            } else {
                mono.join("*")
            };
            write!(f, "[{body}]@{n}")?;
        }
        Ok(())
    }
}

fn prune(p: &MPoly, t1: u32, t2: u32) -> MPoly {
    MPoly::from_terms(
        p.terms()
            .filter(|(m, _)| chern_weight(m, 1) <= t1 && chern_weight(m, 2) <= t2)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Power sums of the Chern roots through Newton's identities, `P_0 = rank`.
fn power_sums(factor: u8, rank: i64, kmax: usize) -> Vec<MPoly> {
    let c = |k: usize| MPoly::var(chern(factor, k));
    let mut p = vec![MPoly::int(rank)];
    for k in 1..=kmax {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let mut pk = c(k).scale(&Rat::from_int(sign * k as i64));
        for i in 1..k {
            let t = c(i).mul(&p[k - i]);
            if i % 2 == 1 {
                pk.add_assign(&t);
            } else {
                pk.sub_assign(&t);
            }
        }
        p.push(pk);
    }
    p
}

/// All monomials in `c_1, c_2, …` (on `factor`) of weighted degree `d`.
pub fn chern_monomials(factor: u8, d: u32) -> Vec<Monomial> {
    fn go(factor: u8, left: u32, max: u32, cur: &mut Vec<(VarId, u32)>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_pairs(cur.iter().copied()));
            return;
        }
        for k in (1..=left.min(max)).rev() {
            for e in 1..=left / k {
                cur.push((chern(factor, k as usize), e));
                go(factor, left - k * e, k - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(factor, d, d, &mut Vec::new(), &mut out);
    out
}

/// `Y((c^λ)^∨_m, z) (c^μ)^∨_n` for all powers `<= hi`, from the dual of
/// `Y^∨ = ε · e(θ(−1)) · act^* ⊕^*` with `θ = E₁^∨ ⊗ E₂`, `ε = (−1)^{mn}`
/// when `signed`, and `act^*` twisting `E₁` by the weight line. The power of
/// `z` is fixed by homogeneity, so `z` is set to one throughout.
pub fn geometric_y_basis(
    m: i64,
    lambda: &Monomial,
    n: i64,
    mu: &Monomial,
    hi: i64,
    signed: bool,
) -> BTreeMap<i64, HomState> {
    let (t1, t2) = (chern_weight(lambda, 1), chern_weight(mu, 1));
    let total = (t1 + t2) as usize;
    let target = lambda.mul(&mu.rename(|v| v.with_factor(2)));
    let p1 = power_sums(1, m, total);
    let p2 = power_sums(2, n, total);
    let mut x = MPoly::zero();
    for k in 1..=total {
        let mut pk = MPoly::zero();
        for a in 0..=k {
            let t = p1[a]
                .mul(&p2[k - a])
                .scale(&Rat::binomial(k as i64, a as u32));
            if a % 2 == 0 {
                pk.add_assign(&t);
            } else {
                pk.sub_assign(&t);
            }
        }
        x.add_assign(&pk.scale(&Rat::new(-1, k as i64)));
    }
    let x = prune(&x, t1, t2);
    let mut psi = MPoly::one();
    let mut pw = MPoly::one();
    for r in 1..=total {
        pw = prune(&pw.mul(&x), t1, t2).scale(&Rat::new(1, r as i64));
        if pw.is_zero() {
            break;
        }
        psi.add_assign(&pw);
    }
    // e(θ(−1)) carries (−z)^{mn}; ε = (−1)^{mn} cancels its sign
    let sign = if !signed && (m * n).rem_euclid(2) == 1 {
        Rat::from_int(-1)
    } else {
        Rat::one()
    };
    let lo = m * n - total as i64;
    let dmax = (hi - lo).max(-1);
    let twisted = |a: usize| -> MPoly {
        let mut s = MPoly::zero();
        for j in 0..=a {
            let c = if j == 0 {
                MPoly::one()
            } else {
                MPoly::var(chern(1, j))
            };
            s.add_assign(&c.scale(&Rat::binomial(m - j as i64, (a - j) as u32)));
        }
        s
    };
    let f: Vec<MPoly> = (0..=dmax.max(0) as usize)
        .map(|k| {
            let mut s = MPoly::zero();
            for a in 0..=k {
                let b = k - a;
                let c2 = if b == 0 {
                    MPoly::one()
                } else {
                    MPoly::var(chern(2, b))
                };
                s.add_assign(&twisted(a).mul(&c2));
            }
            prune(&s, t1, t2)
        })
        .collect();
    let mut out = BTreeMap::new();
    for d in 0..=dmax {
        let mut coeffs = HomState::zero();
        for nu in chern_monomials(1, d as u32) {
            let mut g = psi.clone();
            for &(v, e) in nu.iter() {
                for _ in 0..e {
                    g = prune(&g.mul(&f[v.slot().unwrap() + 1]), t1, t2);
                }
            }
            coeffs.add_term((m + n, nu), &(&g.coeff(&target) * &sign));
        }
        if !coeffs.is_zero() {
            out.insert(lo + d, coeffs);
        }
    }
    out
}

/// Bilinear extension of [`geometric_y_basis`].
pub fn geometric_y(
    alpha: &HomState,
    beta: &HomState,
    hi: i64,
    signed: bool,
) -> BTreeMap<i64, HomState> {
    let mut out: BTreeMap<i64, HomState> = BTreeMap::new();
    for ((m, l), a) in alpha.terms() {
        for ((n, u), b) in beta.terms() {
            for (p, s) in geometric_y_basis(*m, l, *n, u, hi, signed) {
                out.entry(p).or_default().add_scaled(&s, &(a * b));
            }
        }
    }
    out.retain(|_, s| !s.is_zero());
    out
}

/// The geometric Heisenberg mode: `b_k β` is the `z^{−k−1}` coefficient of
/// `Y(c_1^∨ on component 0, z) β`.
pub fn geometric_mode(k: i64, beta: &HomState) -> HomState {
    let c1 = HomState::dual(0, Monomial::var(chern(1, 1)));
    geometric_y(&c1, beta, -k - 1, true)
        .remove(&(-k - 1))
        .unwrap_or_default()
}

/// Sends `b_{−k1} ⋯ b_{−kr} |n>` of the rank-one lattice `[1]` to the class
/// obtained by applying the geometric modes to `1^∨_n`.
pub fn lattice_to_perf(state: &FockState) -> HomState {
    let mut out = HomState::zero();
    for (b, c) in state.terms() {
        let mut h = HomState::fundamental(b.point[0]);
        for &(k, _) in b.osc().iter().rev() {
            h = geometric_mode(-(k as i64), &h);
        }
        out.add_scaled(&h, c);
    }
    out
}

/// `Σ_n q^{n²} H(k[c_1, c_2, …])(q)` with `c_k` in degree `2k`, up to `q^order`.
pub fn perf_character(order: i64) -> BTreeMap<i64, u64> {
    let ord = order.max(0) as usize;
    let h = hilbert_series(&DimVector(vec![ord as u32 / 2 + 1]), ord);
    let mut out: BTreeMap<i64, u64> = (0..=order).map(|d| (d, 0)).collect();
    let mut n = 0i64;
    while n * n <= order {
        let copies = if n == 0 { 1 } else { 2 };
        for d in 0..=(order - n * n) as usize {
            *out.get_mut(&(n * n + d as i64)).unwrap() += copies * h[d];
        }
        n += 1;
    }
    out
}

/// Fock basis vector of the rank-one lattice.
pub fn fock1(point: i64, modes: &[u32]) -> FockBasis {
    FockBasis::new(vec![point], modes.iter().map(|&k| (k, 0)).collect())
}
