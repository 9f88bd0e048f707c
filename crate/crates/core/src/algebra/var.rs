//! Variables and monomials.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A polynomial variable: a Chern root on some tensor factor, or the
/// equivariant parameter `z`.
///
/// Slots and nodes are zero-based internally and rendered one-based.
/// The derived order places every root before `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Root { factor: u8, node: u16, slot: u16 },
    Z,
}

impl VarId {
    pub fn root(factor: u8, node: usize, slot: usize) -> Self {
        VarId::Root {
            factor,
            node: node as u16,
            slot: slot as u16,
        }
    }

    pub fn factor(&self) -> Option<u8> {
        match self {
            VarId::Root { factor, .. } => Some(*factor),
            VarId::Z => None,
        }
    }

    pub fn node(&self) -> Option<usize> {
        match self {
            VarId::Root { node, .. } => Some(*node as usize),
            VarId::Z => None,
        }
    }

    pub fn slot(&self) -> Option<usize> {
        match self {
            VarId::Root { slot, .. } => Some(*slot as usize),
            VarId::Z => None,
        }
    }

    pub fn with_factor(self, f: u8) -> Self {
        match self {
            VarId::Root { node, slot, .. } => VarId::Root {
                factor: f,
                node,
                slot,
            },
            VarId::Z => VarId::Z,
        }
    }
}

/// A monomial as a sorted list of `(variable, exponent)` with positive exponents.
///
/// Ordered graded-lexicographically: by total degree, then by the exponent of
/// the first variable (in `VarId` order) where the two differ, larger first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[(VarId, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut v: SmallVec<[(VarId, u32); 4]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(VarId, u32); 4]> = SmallVec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0
            .binary_search_by(|p| p.0.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VarId, u32)> + '_ {
        self.0.iter()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|p| p.0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(VarId, u32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(VarId, u32); 4]> = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes `v` entirely, returning its exponent and the remaining monomial.
    pub fn split_var(&self, v: VarId) -> (u32, Monomial) {
        let mut rest = self.clone();
        match rest.0.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(i) => {
                let e = rest.0.remove(i).1;
                (e, rest)
            }
            Err(_) => (0, rest),
        }
    }

    /// Applies a variable renaming; the result is re-sorted and merged.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (a, b) = (&self.0, &other.0);
        let n = a.len().min(b.len());
        for i in 0..n {
            if a[i].0 != b[i].0 {
                // the side holding the smaller variable has a positive exponent
                // where the other has zero
                return if a[i].0 < b[i].0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            if a[i].1 != b[i].1 {
                return a[i].1.cmp(&b[i].1);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v:?}^{e}")?;
        }
        Ok(())
    }
}
