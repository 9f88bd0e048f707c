//! Sparse multivariate polynomials over the rationals.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use super::rat::Rat;
use super::var::{Monomial, VarId};

/// A polynomial with exact rational coefficients; zero coefficients are never stored.
///
/// Terms are kept in a `BTreeMap` under the graded-lex monomial order, so the
/// last entry is the leading term.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        MPoly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(Rat::from_int(n))
    }

    pub fn var(v: VarId) -> Self {
        MPoly::term(Monomial::var(v), Rat::one())
    }

    pub fn z() -> Self {
        MPoly::var(VarId::Z)
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rat> {
        self.terms
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading()
            .map(|t| t.1.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|t| t.0.degree())
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &MPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, other: &MPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled(&mut self, other: &MPoly, c: &Rat, m: &Monomial) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), &(oc * c));
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, Rat> = HashMap::with_capacity(small.len() * big.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn product<'a>(it: impl IntoIterator<Item = &'a MPoly>) -> MPoly {
        it.into_iter().fold(MPoly::one(), |a, b| a.mul(b))
    }

    /// Divides every coefficient by `c`.
    pub fn div_rat(&self, c: &Rat) -> MPoly {
        self.scale(&c.recip().expect("division by zero"))
    }

    /// Renames variables; colliding images are merged by multiplication.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    /// Substitutes each variable `v` for which `f(v)` is `Some(p)` by `p`.
    pub fn substitute(&self, f: impl Fn(VarId) -> Option<MPoly>) -> MPoly {
        let mut images: HashMap<VarId, Option<MPoly>> = HashMap::new();
        let mut powers: HashMap<(VarId, u32), MPoly> = HashMap::new();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut fixed: Vec<(VarId, u32)> = Vec::new();
            let mut prod = MPoly::constant(c.clone());
            for &(v, e) in m.iter() {
                let img = images.entry(v).or_insert_with(|| f(v));
                match img {
                    None => fixed.push((v, e)),
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        prod = prod.mul(pw);
                    }
                }
            }
            if !fixed.is_empty() {
                prod = prod.mul_monomial(&Monomial::from_pairs(fixed));
            }
            out.add_assign(&prod);
        }
        out
    }

    /// Replaces every variable with `is_shifted(v)` by `v + t`.
    pub fn shift(&self, is_shifted: impl Fn(VarId) -> bool, t: &MPoly) -> MPoly {
        self.substitute(|v| {
            if is_shifted(v) {
                Some(&MPoly::var(v) + t)
            } else {
                None
            }
        })
    }

    /// Evaluates `v` at the rational `c`.
    pub fn eval_var(&self, v: VarId, c: &Rat) -> MPoly {
        self.substitute(|w| {
            if w == v {
                Some(MPoly::constant(c.clone()))
            } else {
                None
            }
        })
    }

    /// Coefficients of `self` viewed as a polynomial in `v`, keyed by exponent.
    pub fn coeffs_in(&self, v: VarId) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            out.entry(e).or_default().add_term(rest, c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Reassembles `Σ c_e v^e`.
    pub fn from_coeffs_in(v: VarId, coeffs: &BTreeMap<u32, MPoly>) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in coeffs {
            out.add_assign(&c.mul_monomial(&Monomial::var_pow(v, *e)));
        }
        out
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let (m, c) = (m.clone(), c.clone());
            let qm = m.div(&lm)?;
            let qc = &c / &lc;
            rem.add_scaled(d, &-qc.clone(), &qm);
            q.add_term(qm, &qc);
        }
        Some(q)
    }

    /// Sorted set of factor indices carried by root variables.
    pub fn factors(&self) -> BTreeSet<u8> {
        self.vars().into_iter().filter_map(|v| v.factor()).collect()
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> Self {
        MPoly::constant(c)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        MPoly::mul(self, rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Rat::from_int(-1))
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl std::fmt::Debug for MPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}",
            super::render::render_poly(self, &super::render::VarNames::default())
        )
    }
}

/// Sum of `p` over every permutation in the product of symmetric groups on `blocks`.
pub fn symmetrize(p: &MPoly, blocks: &[Vec<VarId>]) -> MPoly {
    let mut acc = p.clone();
    for block in blocks {
        let mut next = MPoly::zero();
        for perm in permutations(block.len()) {
            next.add_assign(&acc.rename(|v| match block.iter().position(|&b| b == v) {
                Some(i) => block[perm[i]],
                None => v,
            }));
        }
        acc = next;
    }
    acc
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Whether `p` is unchanged by every adjacent transposition inside each block.
pub fn is_block_symmetric(p: &MPoly, blocks: &[Vec<VarId>]) -> bool {
    blocks.iter().all(|b| {
        b.windows(2).all(|w| {
            let (a, c) = (w[0], w[1]);
            p.rename(|v| {
                if v == a {
                    c
                } else if v == c {
                    a
                } else {
                    v
                }
            }) == *p
        })
    })
}

/// Elementary symmetric polynomial `e_k` of the given variables.
pub fn elementary(vars: &[VarId], k: usize) -> MPoly {
    let mut e: Vec<MPoly> = vec![MPoly::zero(); k + 1];
    e[0] = MPoly::one();
    for &v in vars {
        for j in (1..=k).rev() {
            let t = e[j - 1].mul(&MPoly::var(v));
            e[j].add_assign(&t);
        }
    }
    e.swap_remove(k)
}

/// Complete homogeneous symmetric polynomial `h_k` of the given variables.
pub fn complete(vars: &[VarId], k: usize) -> MPoly {
    let mut h: Vec<MPoly> = vec![MPoly::zero(); k + 1];
    h[0] = MPoly::one();
    for &v in vars {
        let x = MPoly::var(v);
        for j in 1..=k {
            let t = h[j - 1].mul(&x);
            h[j].add_assign(&t);
        }
    }
    h.swap_remove(k)
}
