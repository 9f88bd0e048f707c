//! Lattice vertex algebras: Fock spaces, vertex operators with the standard
//! two-cocycle, locality checks, and graded characters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Rat;
use crate::error::{Error, Result};

/// A lattice `Z^rank` with integral symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
}

impl LatticeSpec {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let s = LatticeSpec {
            rank: gram.len(),
            gram,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: LatticeSpec = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("lattice JSON: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.gram.len() != self.rank || self.gram.iter().any(|r| r.len() != self.rank) {
            return Err(Error::InvalidInput(format!(
                "Gram matrix must be {0}x{0}",
                self.rank
            )));
        }
        for i in 0..self.rank {
            for j in 0..i {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(Error::InvalidInput("Gram matrix must be symmetric".into()));
                }
            }
        }
        Ok(())
    }

    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        (0..self.rank)
            .map(|i| a[i] * (0..self.rank).map(|j| self.gram[i][j] * b[j]).sum::<i64>())
            .sum()
    }

    /// `(G a)_i`: the eigenvalue of the zero mode `b^i_0` on `e^a`.
    pub fn zero_mode(&self, a: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| self.gram[i][j] * a[j]).sum()
    }

    /// `(a, a) mod 2`.
    pub fn parity(&self, a: &[i64]) -> u8 {
        self.pair(a, a).rem_euclid(2) as u8
    }

    /// Bimultiplicative cocycle with `ε(e_i, e_j) = (−1)^{G_ij + G_ii G_jj}` for
    /// `i < j` and `1` otherwise, so that
    /// `ε(a, b) ε(b, a) = (−1)^{(a,b) + (a,a)(b,b)}`.
    pub fn cocycle(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut odd = 0i64;
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if (self.gram[i][j] + self.gram[i][i] * self.gram[j][j]).rem_euclid(2) == 1 {
                    odd += a[i] * b[j];
                }
            }
        }
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    fn principal_minor(&self, idx: &[usize]) -> Rat {
        let n = idx.len();
        let mut m: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .map(|&j| Rat::from_int(self.gram[i][j]))
                    .collect()
            })
            .collect();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det = &det * &m[c][c];
            for r in c + 1..n {
                let f = &m[r][c] / &m[c][c];
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[r][k] = &m[r][k] - &t;
                }
            }
        }
        det
    }

    /// Sylvester's criterion on leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.rank).all(|k| self.principal_minor(&(0..k).collect::<Vec<_>>()) > Rat::zero())
    }

    /// `(G^{-1})_ii`, for positive definite `G`.
    fn inverse_diagonal(&self, i: usize) -> Rat {
        let all: Vec<usize> = (0..self.rank).collect();
        let rest: Vec<usize> = all.iter().copied().filter(|&j| j != i).collect();
        &self.principal_minor(&rest) / &self.principal_minor(&all)
    }
}

/// An oscillator `b^{dir}_{−k}` stored as `(k, dir)`, `k >= 1`.
pub type Osc = (u32, usize);

/// A Fock basis vector `b^{d1}_{−k1} ⋯ b^{dr}_{−kr} e^point`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockBasis {
    pub point: Vec<i64>,
    osc: Vec<Osc>,
}

impl FockBasis {
    pub fn new(point: Vec<i64>, mut osc: Vec<Osc>) -> Self {
        osc.sort_unstable();
        FockBasis { point, osc }
    }

    pub fn lattice(point: Vec<i64>) -> Self {
        FockBasis {
            point,
            osc: Vec::new(),
        }
    }

    pub fn osc(&self) -> &[Osc] {
        &self.osc
    }

    /// Total oscillator energy `Σ k`.
    pub fn energy(&self) -> u32 {
        self.osc.iter().map(|o| o.0).sum()
    }

    /// `(γ, γ) + 2 Σ k`: twice the conformal weight.
    pub fn degree(&self, spec: &LatticeSpec) -> i64 {
        spec.pair(&self.point, &self.point) + 2 * self.energy() as i64
    }

    fn render(&self, rank: usize) -> String {
        let mut s = String::new();
        for &(k, d) in &self.osc {
            if rank == 1 {
                s.push_str(&format!("b(-{k})"));
            } else {
                s.push_str(&format!("b{}(-{k})", d + 1));
            }
        }
        let pts: Vec<String> = self.point.iter().map(|p| p.to_string()).collect();
        format!("{s}|{}>", pts.join(","))
    }

    /// Parses `b1(-2)b2(-1)|1,0>`; for rank one the direction may be omitted.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(format!("Fock vector `{s}`: {m}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (ops, rest) = t.split_once('|').ok_or_else(|| bad("missing `|`"))?;
        let inner = rest.strip_suffix('>').ok_or_else(|| bad("missing `>`"))?;
        let point: Vec<i64> = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.parse().map_err(|_| bad("bad lattice entry")))
                .collect::<Result<_>>()?
        };
        if point.len() != rank {
            return Err(bad(&format!("expected {rank} lattice entries")));
        }
        let mut osc = Vec::new();
        let mut rest = ops;
        while !rest.is_empty() {
            let r = rest.strip_prefix('b').ok_or_else(|| bad("expected `b`"))?;
            let open = r.find('(').ok_or_else(|| bad("expected `(`"))?;
            let close = r.find(')').ok_or_else(|| bad("expected `)`"))?;
            let dir = if open == 0 {
                if rank != 1 {
                    return Err(bad("direction index required"));
                }
                0
            } else {
                let d: usize = r[..open].parse().map_err(|_| bad("bad direction"))?;
                if d == 0 || d > rank {
                    return Err(bad("direction out of range"));
                }
                d - 1
            };
            let mode: i64 = r[open + 1..close].parse().map_err(|_| bad("bad mode"))?;
            if mode >= 0 {
                return Err(bad("only creation modes b(-k), k >= 1, build states"));
            }
            osc.push(((-mode) as u32, dir));
            rest = &r[close + 1..];
        }
        Ok(FockBasis::new(point, osc))
    }
}

/// A finite linear combination of Fock basis vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockState(BTreeMap<FockBasis, Rat>);

impl FockState {
    pub fn zero() -> Self {
        FockState::default()
    }

    pub fn basis(b: FockBasis) -> Self {
        FockState(BTreeMap::from([(b, Rat::one())]))
    }

    pub fn lattice(point: Vec<i64>) -> Self {
        FockState::basis(FockBasis::lattice(point))
    }

    pub fn vacuum(rank: usize) -> Self {
        FockState::lattice(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockBasis, &Rat)> + '_ {
        self.0.iter()
    }

    pub fn coeff(&self, b: &FockBasis) -> Rat {
        self.0.get(b).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, b: FockBasis, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(b.clone()).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.0.remove(&b);
        }
    }

    pub fn add_scaled(&mut self, o: &FockState, c: &Rat) {
        for (b, x) in &o.0 {
            self.add_term(b.clone(), &(x * c));
        }
    }

    pub fn add(&self, o: &FockState) -> FockState {
        let mut r = self.clone();
        r.add_scaled(o, &Rat::one());
        r
    }

    pub fn sub(&self, o: &FockState) -> FockState {
        let mut r = self.clone();
        r.add_scaled(o, &Rat::from_int(-1));
        r
    }

    pub fn scale(&self, c: &Rat) -> FockState {
        let mut r = FockState::zero();
        r.add_scaled(self, c);
        r
    }

    fn max_energy(&self) -> u32 {
        self.0.keys().map(|b| b.energy()).max().unwrap_or(0)
    }

    pub fn render(&self, rank: usize) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (b, c)) in self.0.iter().enumerate() {
            let neg = *c < Rat::zero();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                out.push_str(&format!("{a}*"));
            }
            out.push_str(&b.render(rank));
        }
        out
    }
}

/// Applies the Heisenberg mode `b^{dir}_n` with `[b^i_m, b^j_n] = m G_ij δ_{m+n,0}`.
pub fn heisenberg_apply(spec: &LatticeSpec, n: i64, dir: usize, state: &FockState) -> FockState {
    let mut out = FockState::zero();
    for (b, c) in state.terms() {
        match n.cmp(&0) {
            std::cmp::Ordering::Less => {
                let mut osc = b.osc.clone();
                osc.push(((-n) as u32, dir));
                out.add_term(FockBasis::new(b.point.clone(), osc), c);
            }
            std::cmp::Ordering::Equal => {
                out.add_term(
                    b.clone(),
                    &(c * &Rat::from_int(spec.zero_mode(&b.point, dir))),
                );
            }
            std::cmp::Ordering::Greater => {
                for (i, &(k, d)) in b.osc.iter().enumerate() {
                    if k as i64 == n && spec.gram[dir][d] != 0 {
                        let mut osc = b.osc.clone();
                        osc.remove(i);
                        out.add_term(
                            FockBasis::new(b.point.clone(), osc),
                            &(c * &Rat::from_int(n * spec.gram[dir][d])),
                        );
                    }
                }
            }
        }
    }
    out
}

/// A field applied to a state: coefficients of `z^p`, exact for every `p <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldExpansion {
    pub coeffs: BTreeMap<i64, FockState>,
    pub hi: i64,
}

impl FieldExpansion {
    pub fn coeff(&self, p: i64) -> FockState {
        self.coeffs.get(&p).cloned().unwrap_or_default()
    }

    /// Lowest power with a nonzero coefficient.
    pub fn leading_power(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }
}

type Series = BTreeMap<i64, FockState>;

fn series_add(acc: &mut Series, p: i64, s: &FockState, c: &Rat) {
    let e = acc.entry(p).or_default();
    e.add_scaled(s, c);
    if e.is_zero() {
        acc.remove(&p);
    }
}

/// A sum of `c · z^shift · b^{dir}_mode` terms.
type ModeSum = Vec<(i64, i64, usize, Rat)>;

fn apply_modes(spec: &LatticeSpec, s: &Series, terms: &ModeSum, hi: Option<i64>) -> Series {
    let mut out = Series::new();
    for (&p, st) in s {
        for (shift, mode, dir, c) in terms {
            let q = p + shift;
            if hi.is_some_and(|h| q > h) {
                continue;
            }
            let r = heisenberg_apply(spec, *mode, *dir, st);
            if !r.is_zero() {
                series_add(&mut out, q, &r, c);
            }
        }
    }
    out
}

fn apply_exp(spec: &LatticeSpec, s: &Series, terms: &ModeSum, hi: Option<i64>) -> Series {
    let mut out = s.clone();
    let mut cur = s.clone();
    let mut r = 1i64;
    loop {
        cur = apply_modes(spec, &cur, terms, hi);
        if cur.is_empty() {
            return out;
        }
        let inv = Rat::new(1, r);
        for st in cur.values_mut() {
            *st = st.scale(&inv);
        }
        for (p, st) in &cur {
            series_add(&mut out, *p, st, &Rat::one());
        }
        r += 1;
    }
}

/// `Σ_k c_k α_{±k} z^{∓k}/k` summands of `E^±(α, z)` up to mode `kmax`.
fn exponent_terms(alpha: &[i64], creation: bool, kmax: i64) -> ModeSum {
    let mut t = Vec::new();
    for k in 1..=kmax {
        for (i, &a) in alpha.iter().enumerate() {
            if a != 0 {
                let (shift, mode, c) = if creation {
                    (k, -k, Rat::new(a, k))
                } else {
                    (-k, k, Rat::new(-a, k))
                };
                t.push((shift, mode, i, c));
            }
        }
    }
    t
}

fn min_power(s: &Series) -> i64 {
    s.keys().next().copied().unwrap_or(0)
}

fn max_energy(s: &Series) -> u32 {
    s.values().map(|st| st.max_energy()).max().unwrap_or(0)
}

/// `Y(u, z) v` for basis vectors, with coefficients of `z^p` for all `p <= hi`.
///
/// `Y(b^{i1}_{−k1} ⋯ e^α, z) = :∂^{(k1−1)} b^{i1}(z) ⋯ Y(e^α, z):`, with
/// `Y(e^α, z) = ε(α, ·) E^−(α, z) E^+(α, z) e^α z^{α_0}` and all modes
/// `b_n`, `n >= 0`, ordered to the right.
fn vertex_basis(spec: &LatticeSpec, u: &FockBasis, v: &FockBasis, hi: i64) -> Series {
    let alpha = &u.point;
    let r = u.osc.len();
    let mut total = Series::new();
    for mask in 0..(1u32 << r) {
        let mut s = Series::from([(0, FockState::basis(v.clone()))]);
        for (j, &(k, dir)) in u.osc.iter().enumerate() {
            if mask & (1 << j) != 0 {
                continue;
            }
            let w = max_energy(&s) as i64;
            let terms: ModeSum = (0..=w)
                .map(|n| (-n - k as i64, n, dir, Rat::binomial(-n - 1, k - 1)))
                .collect();
            s = apply_modes(spec, &s, &terms, None);
        }
        let kmax = max_energy(&s) as i64;
        s = apply_exp(spec, &s, &exponent_terms(alpha, false, kmax), None);
        let mut shifted = Series::new();
        for (p, st) in &s {
            for (b, c) in st.terms() {
                let q = p + spec.pair(alpha, &b.point);
                if q > hi {
                    continue;
                }
                let point: Vec<i64> = b.point.iter().zip(alpha).map(|(x, y)| x + y).collect();
                let sign = Rat::from_int(spec.cocycle(alpha, &b.point));
                series_add(
                    &mut shifted,
                    q,
                    &FockState::basis(FockBasis::new(point, b.osc.clone())),
                    &(c * &sign),
                );
            }
        }
        s = shifted;
        if s.is_empty() {
            continue;
        }
        let budget = hi - min_power(&s);
        s = apply_exp(spec, &s, &exponent_terms(alpha, true, budget), Some(hi));
        for (j, &(k, dir)) in u.osc.iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            let budget = hi - min_power(&s);
            let terms: ModeSum = (k as i64..=k as i64 + budget)
                .map(|l| (l - k as i64, -l, dir, Rat::binomial(l - 1, k - 1)))
                .collect();
            s = apply_modes(spec, &s, &terms, Some(hi));
        }
        for (p, st) in &s {
            series_add(&mut total, *p, st, &Rat::one());
        }
    }
    total
}

/// `Y(u, z) v`, exact for every power `<= hi`.
pub fn vertex_apply(spec: &LatticeSpec, u: &FockState, v: &FockState, hi: i64) -> FieldExpansion {
    let mut coeffs = Series::new();
    for (ub, uc) in u.terms() {
        for (vb, vc) in v.terms() {
            let c = uc * vc;
            for (p, st) in vertex_basis(spec, ub, vb, hi) {
                series_add(&mut coeffs, p, &st, &c);
            }
        }
    }
    FieldExpansion { coeffs, hi }
}

/// `Y(e^γ, z)` applied to `target`, restricted to the window `[lo, hi]`.
/// Fails if a nonzero coefficient lies below `lo`.
pub fn lattice_vertex_op(
    spec: &LatticeSpec,
    gamma: &[i64],
    target: &FockState,
    window: (i64, i64),
) -> Result<FieldExpansion> {
    if gamma.len() != spec.rank || target.terms().any(|(b, _)| b.point.len() != spec.rank) {
        return Err(Error::InvalidInput(format!(
            "lattice vectors must have {} entries",
            spec.rank
        )));
    }
    let (lo, hi) = window;
    let f = vertex_apply(spec, &FockState::lattice(gamma.to_vec()), target, hi);
    if let Some(lead) = f.leading_power().filter(|&l| l < lo) {
        return Err(Error::WindowInsufficient { lo, hi, lead });
    }
    Ok(f)
}

/// Outcome of a weak commutativity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityReport {
    pub holds: bool,
    pub order: u32,
    /// Whether the unmultiplied commutator is nonzero on the region.
    pub commutator_nonzero: bool,
    /// Number of coefficients of the two products compared.
    pub checked: usize,
    pub witness: Option<(i64, i64)>,
}

/// Checks `(z − w)^N [Y(u, z) Y(v, w) − (−1)^{|u||v|} Y(v, w) Y(u, z)] t = 0` on
/// every coefficient `z^a w^b` with `a <= z_hi`, `b <= w_hi`, where both
/// products are exact.
pub fn weak_commutativity(
    spec: &LatticeSpec,
    u: &FockBasis,
    v: &FockBasis,
    t: &FockState,
    order: u32,
    (z_hi, w_hi): (i64, i64),
) -> LocalityReport {
    let (us, vs) = (FockState::basis(u.clone()), FockState::basis(v.clone()));
    let mut diff: BTreeMap<(i64, i64), FockState> = BTreeMap::new();
    let mut put = |a: i64, b: i64, s: &FockState, c: &Rat| {
        let e = diff.entry((a, b)).or_default();
        e.add_scaled(s, c);
    };
    for (b, inner) in vertex_apply(spec, &vs, t, w_hi).coeffs {
        for (a, s) in vertex_apply(spec, &us, &inner, z_hi).coeffs {
            put(a, b, &s, &Rat::one());
        }
    }
    let sign = if spec.parity(&u.point) * spec.parity(&v.point) == 1 {
        Rat::one()
    } else {
        Rat::from_int(-1)
    };
    for (a, inner) in vertex_apply(spec, &us, t, z_hi).coeffs {
        for (b, s) in vertex_apply(spec, &vs, &inner, w_hi).coeffs {
            put(a, b, &s, &sign);
        }
    }
    let checked = diff.len();
    diff.retain(|_, s| !s.is_zero());
    let commutator_nonzero = !diff.is_empty();
    let n = order as i64;
    let mut prod: BTreeMap<(i64, i64), FockState> = BTreeMap::new();
    for (&(a, b), s) in &diff {
        for j in 0..=order {
            let (ta, tb) = (a + n - j as i64, b + j as i64);
            if ta > z_hi || tb > w_hi {
                continue;
            }
            let c = Rat::binomial(n, j);
            let c = if j % 2 == 1 { -c } else { c };
            prod.entry((ta, tb)).or_default().add_scaled(s, &c);
        }
    }
    let witness = prod
        .iter()
        .rev()
        .find(|(_, s)| !s.is_zero())
        .map(|(k, _)| *k);
    LocalityReport {
        holds: witness.is_none(),
        order,
        commutator_nonzero,
        checked,
        witness,
    }
}

/// Coefficients of `Π_{i>=1} (1 − x^i)^{−rank}` up to `x^max`.
pub fn colored_partitions(rank: usize, max: usize) -> Vec<u64> {
    let mut p = vec![0u64; max + 1];
    p[0] = 1;
    for _ in 0..rank {
        for i in 1..=max {
            for d in i..=max {
                p[d] += p[d - i];
            }
        }
    }
    p
}

/// Graded character `Σ_γ q^{(γ,γ)} Π_i (1 − q^{2i})^{−rank}` up to `q^order`.
///
/// Without a range the Gram matrix must be positive definite; `range` gives
/// inclusive bounds per coordinate for the lattice sum.
pub fn character(
    spec: &LatticeSpec,
    order: i64,
    range: Option<&[(i64, i64)]>,
) -> Result<BTreeMap<i64, u64>> {
    let bounds: Vec<(i64, i64)> = match range {
        Some(r) => {
            if r.len() != spec.rank {
                return Err(Error::InvalidInput(format!(
                    "range needs {} coordinate bounds",
                    spec.rank
                )));
            }
            r.to_vec()
        }
        None => {
            if !spec.is_positive_definite() {
                return Err(Error::DivergentRange(
                    "Gram matrix is not positive definite; pass an explicit lattice range".into(),
                ));
            }
            (0..spec.rank)
                .map(|i| {
                    let lim = &Rat::from_int(order.max(0)) * &spec.inverse_diagonal(i);
                    let mut b = 0i64;
                    while Rat::from_int((b + 1) * (b + 1)) <= lim {
                        b += 1;
                    }
                    (-b, b)
                })
                .collect()
        }
    };
    let mut norms: Vec<i64> = Vec::new();
    let mut point: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    if bounds.iter().all(|b| b.0 <= b.1) {
        'outer: loop {
            norms.push(spec.pair(&point, &point));
            for i in 0..spec.rank {
                if point[i] < bounds[i].1 {
                    point[i] += 1;
                    continue 'outer;
                }
                point[i] = bounds[i].0;
            }
            break;
        }
    }
    let lowest = norms.iter().copied().min().unwrap_or(0).min(0);
    let span = (order - lowest).max(0) as usize;
    let parts = colored_partitions(spec.rank, span / 2);
    let mut out: BTreeMap<i64, u64> = (lowest..=order).map(|d| (d, 0)).collect();
    for nrm in norms {
        let mut k = 0usize;
        while nrm + 2 * k as i64 <= order {
            *out.get_mut(&(nrm + 2 * k as i64)).unwrap() += parts[k];
            k += 1;
        }
    }
    Ok(out)
}

/// All Fock basis vectors over `point` with oscillator energy exactly `energy`.
pub fn fock_basis_at(rank: usize, point: &[i64], energy: u32) -> Vec<FockBasis> {
    fn go(
        rank: usize,
        left: u32,
        max_k: u32,
        max_d: usize,
        cur: &mut Vec<Osc>,
        out: &mut Vec<Vec<Osc>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=left.min(max_k)).rev() {
            let top = if k == max_k { max_d } else { rank - 1 };
            for d in (0..=top).rev() {
                cur.push((k, d));
                go(rank, left - k, k, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if rank == 0 {
        if energy == 0 {
            out.push(Vec::new());
        }
    } else {
        go(rank, energy, energy, rank - 1, &mut Vec::new(), &mut out);
    }
    out.into_iter()
        .map(|o| FockBasis::new(point.to_vec(), o))
        .collect()
}

impl fmt::Display for FockBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.point.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank1(g: i64) -> LatticeSpec {
        LatticeSpec::new(vec![vec![g]]).unwrap()
    }

    fn a2() -> LatticeSpec {
        LatticeSpec::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    fn fb(s: &str, rank: usize) -> FockBasis {
        FockBasis::parse(s, rank).unwrap()
    }

    #[test]
    fn validation_and_definiteness() {
        assert!(LatticeSpec::new(vec![vec![1, 2], vec![3, 1]]).is_err());
        assert!(LatticeSpec::from_json(r#"{"rank": 2, "gram": [[1]]}"#).is_err());
        assert!(a2().is_positive_definite());
        assert!(!rank1(0).is_positive_definite());
        assert!(!LatticeSpec::new(vec![vec![0, 1], vec![1, 0]])
            .unwrap()
            .is_positive_definite());
        assert_eq!(a2().inverse_diagonal(0), Rat::new(2, 3));
    }

    #[test]
    fn cocycle_commutation_sign() {
        let specs = [
            a2(),
            LatticeSpec::new(vec![vec![1, 1, 0], vec![1, 2, -1], vec![0, -1, 3]]).unwrap(),
        ];
        for s in specs {
            let pts: Vec<Vec<i64>> = (0..s.rank)
                .flat_map(|i| [1i64, -2].into_iter().map(move |c| (i, c)))
                .map(|(i, c)| {
                    let mut v = vec![1; s.rank];
                    v[i] = c;
                    v
                })
                .collect();
            for a in &pts {
                for b in &pts {
                    let e = (s.pair(a, b) + s.pair(a, a) * s.pair(b, b)).rem_euclid(2);
                    assert_eq!(
                        s.cocycle(a, b) * s.cocycle(b, a),
                        if e == 0 { 1 } else { -1 }
                    );
                }
            }
        }
    }

    #[test]
    fn parse_render_round_trip() {
        let b = fb("b2(-1)b1(-3)|1,-2>", 2);
        assert_eq!(b.osc(), &[(1, 1), (3, 0)]);
        assert_eq!(fb(&b.to_string(), 2), b);
        assert_eq!(fb("b(-2)|3>", 1).to_string(), "b(-2)|3>");
        assert!(FockBasis::parse("b(1)|0>", 1).is_err());
        assert!(FockBasis::parse("b(-1)|0>", 2).is_err());
    }

    #[test]
    fn heisenberg_commutators() {
        let s = a2();
        let states = [
            fb("b1(-1)b2(-2)b1(-2)|1,0>", 2),
            fb("|1,-1>", 2),
            fb("b2(-1)b2(-1)|0,0>", 2),
        ];
        for st in states {
            let v = FockState::basis(st);
            for m in -3i64..=3 {
                for n in -3i64..=3 {
                    for i in 0..2 {
                        for j in 0..2 {
                            let l = heisenberg_apply(&s, m, i, &heisenberg_apply(&s, n, j, &v));
                            let r = heisenberg_apply(&s, n, j, &heisenberg_apply(&s, m, i, &v));
                            let expect = if m + n == 0 {
                                v.scale(&Rat::from_int(m * s.gram[i][j]))
                            } else {
                                FockState::zero()
                            };
                            assert_eq!(l.sub(&r), expect, "m={m} n={n} i={i} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn leading_power_is_pairing() {
        let s = a2();
        for (g, h) in [([1, 0], [0, 1]), ([1, 1], [1, 1]), ([2, -1], [-1, 3])] {
            let f = lattice_vertex_op(&s, &g, &FockState::lattice(h.to_vec()), (-20, 4)).unwrap();
            assert_eq!(f.leading_power(), Some(s.pair(&g, &h)));
            let sum: Vec<i64> = g.iter().zip(&h).map(|(x, y)| x + y).collect();
            assert_eq!(
                f.coeff(s.pair(&g, &h)),
                FockState::lattice(sum).scale(&Rat::from_int(s.cocycle(&g, &h)))
            );
        }
        let err = lattice_vertex_op(&s, &[1, 0], &FockState::lattice(vec![0, 1]), (0, 2));
        assert_eq!(
            err.err(),
            Some(Error::WindowInsufficient {
                lo: 0,
                hi: 2,
                lead: -1
            })
        );
    }

    #[test]
    fn rank_one_exponential() {
        // Y(e^1, z) e^1 = z exp(Σ b_{−k} z^k / k) e^2 for gram [1]
        let s = rank1(1);
        let f = lattice_vertex_op(&s, &[1], &FockState::lattice(vec![1]), (1, 3)).unwrap();
        assert_eq!(f.coeff(1), FockState::lattice(vec![2]));
        assert_eq!(f.coeff(2), FockState::basis(fb("b(-1)|2>", 1)));
        let mut c3 = FockState::zero();
        c3.add_term(fb("b(-2)|2>", 1), &Rat::new(1, 2));
        c3.add_term(fb("b(-1)b(-1)|2>", 1), &Rat::new(1, 2));
        assert_eq!(f.coeff(3), c3);
    }

    #[test]
    fn vacuum_and_creation() {
        let s = a2();
        let vac = FockState::vacuum(2);
        let states = [
            fb("b1(-2)b2(-1)|1,-1>", 2),
            fb("|0,1>", 2),
            fb("b1(-1)|0,0>", 2),
        ];
        for st in states {
            let v = FockState::basis(st.clone());
            let f = vertex_apply(&s, &vac, &v, 3);
            assert_eq!(f.coeffs, BTreeMap::from([(0, v.clone())]));
            let g = vertex_apply(&s, &v, &vac, 3);
            assert_eq!(g.leading_power(), Some(0));
            assert_eq!(g.coeff(0), v);
        }
    }

    #[test]
    fn translation_covariance() {
        // Y(α_{−1} e^α, z) = ∂_z Y(e^α, z), since L_{−1} e^α = α_{−1} e^α
        let s = a2();
        for alpha in [[1i64, 0], [1, 1], [2, -1]] {
            let mut u = FockState::zero();
            for (i, &a) in alpha.iter().enumerate() {
                u.add_term(
                    FockBasis::new(alpha.to_vec(), vec![(1, i)]),
                    &Rat::from_int(a),
                );
            }
            for t in [
                fb("|0,1>", 2),
                fb("b2(-1)|1,0>", 2),
                fb("b1(-2)b1(-1)|-1,1>", 2),
            ] {
                let t = FockState::basis(t);
                let lhs = vertex_apply(&s, &u, &t, 4);
                let y = vertex_apply(&s, &FockState::lattice(alpha.to_vec()), &t, 5);
                let mut d = BTreeMap::new();
                for (p, st) in &y.coeffs {
                    let sc = st.scale(&Rat::from_int(*p));
                    if !sc.is_zero() && p - 1 <= 4 {
                        d.insert(p - 1, sc);
                    }
                }
                assert_eq!(lhs.coeffs, d);
            }
        }
    }

    #[test]
    fn heisenberg_field_from_oscillator() {
        // Y(b_{−1}|0>, z) = Σ_n b_n z^{−n−1}
        let s = rank1(2);
        let u = FockState::basis(fb("b(-1)|0>", 1));
        let t = FockState::basis(fb("b(-2)b(-1)|1>", 1));
        let f = vertex_apply(&s, &u, &t, 2);
        for n in -3i64..=4 {
            assert_eq!(f.coeff(-n - 1), heisenberg_apply(&s, n, 0, &t), "mode {n}");
        }
    }

    #[test]
    fn locality_of_exponentials() {
        let s = a2();
        let t = FockState::basis(fb("b1(-1)|0,1>", 2));
        for (g, h) in [([1i64, 0], [0i64, 1]), ([1, 0], [1, 0]), ([1, 1], [-1, 0])] {
            let (u, v) = (
                FockBasis::lattice(g.to_vec()),
                FockBasis::lattice(h.to_vec()),
            );
            let n = s.pair(&g, &h).unsigned_abs() as u32;
            let r = weak_commutativity(&s, &u, &v, &t, n, (3, 3));
            assert!(r.holds, "{g:?} {h:?} {r:?}");
            assert!(r.checked > 0);
        }
        // order too small fails for a pole
        let r = weak_commutativity(
            &s,
            &FockBasis::lattice(vec![1, 0]),
            &FockBasis::lattice(vec![-1, 0]),
            &t,
            1,
            (3, 3),
        );
        assert!(!r.holds && r.commutator_nonzero);
    }

    #[test]
    fn locality_with_oscillators() {
        let s = a2();
        let t = FockState::basis(fb("b2(-1)|1,0>", 2));
        for (u, v) in [
            ("b1(-1)|1,0>", "|0,1>"),
            ("b2(-2)|1,1>", "b1(-1)|-1,0>"),
            ("b1(-1)|0,0>", "b1(-1)|0,0>"),
        ] {
            let (u, v) = (fb(u, 2), fb(v, 2));
            let n = (s.pair(&u.point, &v.point).unsigned_abs() + (u.energy() + v.energy()) as u64)
                as u32;
            let r = weak_commutativity(&s, &u, &v, &t, n, (3, 3));
            assert!(r.holds, "{u} {v} {r:?}");
            assert!(r.commutator_nonzero);
        }
    }

    #[test]
    fn odd_lattice_uses_super_sign() {
        let s = rank1(1);
        let t = FockState::lattice(vec![0]);
        let r = weak_commutativity(
            &s,
            &FockBasis::lattice(vec![1]),
            &FockBasis::lattice(vec![1]),
            &t,
            1,
            (4, 4),
        );
        assert!(r.holds);
    }

    #[test]
    fn characters() {
        let heis = character(&rank1(0), 4, Some(&[(0, 0)])).unwrap();
        assert_eq!(
            heis.values().copied().collect::<Vec<_>>(),
            vec![1, 0, 1, 0, 2]
        );
        let z = character(&rank1(1), 4, None).unwrap();
        assert_eq!(z.values().copied().collect::<Vec<_>>(), vec![1, 2, 1, 2, 4]);
        assert!(matches!(
            character(&rank1(0), 4, None),
            Err(Error::DivergentRange(_))
        ));
        let hyp = LatticeSpec::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(
            character(&hyp, 4, None),
            Err(Error::DivergentRange(_))
        ));
        let c = character(&hyp, 2, Some(&[(-1, 1), (-1, 1)])).unwrap();
        assert_eq!(c[&-2], 2);
    }

    #[test]
    fn character_counts_basis() {
        let s = a2();
        let ch = character(&s, 6, None).unwrap();
        for (&d, &count) in &ch {
            let mut n = 0;
            for a in -3i64..=3 {
                for b in -3i64..=3 {
                    let nrm = s.pair(&[a, b], &[a, b]);
                    if nrm <= d && (d - nrm) % 2 == 0 {
                        n += fock_basis_at(2, &[a, b], ((d - nrm) / 2) as u32).len() as u64;
                    }
                }
            }
            assert_eq!(n, count, "degree {d}");
        }
    }
}
