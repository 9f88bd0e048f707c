//! Quivers, dimension vectors, cohomology classes on quiver moduli and the
//! weighted Hom complex.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::poly::{is_block_symmetric, MPoly};
use crate::algebra::{Rat, RatFn, VarId, VarNames};
use crate::error::{Error, Result};

/// A finite quiver with arrow multiplicities `a[p][q]` (arrows `p -> q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    nodes: Vec<String>,
    arrows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct QuiverSpec {
    nodes: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowSpec>,
}

#[derive(Serialize, Deserialize)]
struct ArrowSpec {
    from: String,
    to: String,
    #[serde(default = "one")]
    mult: u32,
}

fn one() -> u32 {
    1
}

impl Quiver {
    pub fn new(nodes: Vec<String>, arrows: Vec<Vec<u32>>) -> Result<Self> {
        let n = nodes.len();
        if n == 0 {
            return Err(Error::InvalidInput(
                "a quiver needs at least one node".into(),
            ));
        }
        if arrows.len() != n || arrows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!("arrow matrix must be {n}x{n}")));
        }
        for (i, a) in nodes.iter().enumerate() {
            if a.is_empty() || !a.chars().all(|c| c.is_ascii_alphanumeric()) {
                return Err(Error::InvalidInput(format!(
                    "node name `{a}` must be alphanumeric"
                )));
            }
            if nodes[..i].contains(a) {
                return Err(Error::InvalidInput(format!("duplicate node `{a}`")));
            }
        }
        Ok(Quiver { nodes, arrows })
    }

    /// One node, no arrows.
    pub fn a1() -> Self {
        Quiver {
            nodes: vec!["1".into()],
            arrows: vec![vec![0]],
        }
    }

    /// One node with one loop.
    pub fn jordan() -> Self {
        Quiver {
            nodes: vec!["1".into()],
            arrows: vec![vec![1]],
        }
    }

    /// Two nodes `p`, `q` with two arrows `p -> q`.
    pub fn kronecker() -> Self {
        Quiver {
            nodes: vec!["p".into(), "q".into()],
            arrows: vec![vec![0, 2], vec![0, 0]],
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: QuiverSpec = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("quiver JSON: {e}")))?;
        let n = spec.nodes.len();
        let mut arrows = vec![vec![0u32; n]; n];
        let idx = |name: &str| {
            spec.nodes.iter().position(|x| x == name).ok_or_else(|| {
                Error::InvalidInput(format!("arrow endpoint `{name}` is not a node"))
            })
        };
        for a in &spec.arrows {
            arrows[idx(&a.from)?][idx(&a.to)?] += a.mult;
        }
        Quiver::new(spec.nodes, arrows)
    }

    pub fn to_json(&self) -> String {
        let mut arrows = Vec::new();
        for (p, row) in self.arrows.iter().enumerate() {
            for (q, &m) in row.iter().enumerate() {
                if m > 0 {
                    arrows.push(ArrowSpec {
                        from: self.nodes[p].clone(),
                        to: self.nodes[q].clone(),
                        mult: m,
                    });
                }
            }
        }
        serde_json::to_string(&QuiverSpec {
            nodes: self.nodes.clone(),
            arrows,
        })
        .expect("serializable")
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    /// Number of arrows `p -> q`.
    pub fn mult(&self, p: usize, q: usize) -> u32 {
        self.arrows[p][q]
    }

    pub fn var_names(&self) -> VarNames {
        VarNames::with_nodes(&self.nodes)
    }

    /// Whether `a[p][q] == a[q][p]` for all nodes.
    pub fn is_symmetric(&self) -> bool {
        let n = self.num_nodes();
        (0..n).all(|p| (0..n).all(|q| self.arrows[p][q] == self.arrows[q][p]))
    }

    /// Rank of the Hom complex: `Σ_q γ_q γ'_q − Σ a_{pq} γ_p γ'_q`.
    pub fn euler_form(&self, g: &DimVector, h: &DimVector) -> i64 {
        let node: i64 =
            g.0.iter()
                .zip(&h.0)
                .map(|(a, b)| (*a as i64) * (*b as i64))
                .sum();
        node - self.arrow_form(g, h)
    }

    /// The arrow contribution alone: `Σ a_{pq} γ_p γ'_q`.
    pub fn arrow_form(&self, g: &DimVector, h: &DimVector) -> i64 {
        let n = self.num_nodes();
        let mut s = 0i64;
        for p in 0..n {
            for q in 0..n {
                s += self.arrows[p][q] as i64 * g.0[p] as i64 * h.0[q] as i64;
            }
        }
        s
    }

    /// `χ(γ,γ') + χ(γ',γ)`, the symmetrized form.
    pub fn symmetrized_form(&self, g: &DimVector, h: &DimVector) -> i64 {
        self.euler_form(g, h) + self.euler_form(h, g)
    }

    pub fn dim(&self, v: Vec<u32>) -> Result<DimVector> {
        if v.len() != self.num_nodes() {
            return Err(Error::InvalidInput(format!(
                "dimension vector has {} entries, quiver has {} nodes",
                v.len(),
                self.num_nodes()
            )));
        }
        Ok(DimVector(v))
    }

    /// All dimension vectors with total dimension at most `max_total`.
    pub fn dim_vectors_up_to(&self, max_total: u32) -> Vec<DimVector> {
        let n = self.num_nodes();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DimVector>) {
            if i == cur.len() {
                out.push(DimVector(cur.clone()));
                return;
            }
            for k in 0..=left {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, max_total, &mut cur, &mut out);
        out.sort_by_key(|d| (d.total(), d.0.clone()));
        out
    }
}

/// Dimension vector aligned with the quiver's node order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self − o` if nonnegative.
    pub fn checked_sub(&self, o: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn get(&self, q: usize) -> u32 {
        self.0[q]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `δ` with `0 <= δ <= self` componentwise.
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &g in &self.0 {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..=g).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }

    /// Root variables of this dimension vector on tensor factor `factor`,
    /// grouped by node.
    pub fn root_blocks(&self, factor: u8) -> Vec<Vec<VarId>> {
        self.0
            .iter()
            .enumerate()
            .map(|(q, &g)| (0..g as usize).map(|i| VarId::root(factor, q, i)).collect())
            .collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl std::str::FromStr for DimVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| {
                Error::InvalidInput(format!("dimension vector `{s}` must look like [1,0]"))
            })?;
        if inner.trim().is_empty() {
            return Ok(DimVector(vec![]));
        }
        inner
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(DimVector)
            .map_err(|_| Error::InvalidInput(format!("bad dimension vector `{s}`")))
    }
}

/// A class in `H^*(M_γ)`: a polynomial in the factor-1 roots `x^{(q)}_i`,
/// `i < γ_q`, symmetric in the roots of each node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub gamma: DimVector,
    pub poly: MPoly,
}

impl CohClass {
    /// Validates variables and invariance.
    pub fn new(q: &Quiver, gamma: DimVector, poly: MPoly) -> Result<Self> {
        if gamma.len() != q.num_nodes() {
            return Err(Error::InvalidClass(format!(
                "{gamma} does not match the quiver"
            )));
        }
        for v in poly.vars() {
            match v {
                VarId::Root {
                    factor: 1,
                    node,
                    slot,
                } if (node as usize) < gamma.len() && (slot as u32) < gamma.get(node as usize) => {}
                _ => {
                    return Err(Error::InvalidClass(format!(
                        "variable {} is not a root of {gamma}",
                        q.var_names().render_var(v)
                    )))
                }
            }
        }
        if !is_block_symmetric(&poly, &gamma.root_blocks(1)) {
            return Err(Error::NotInvariant(gamma.to_string()));
        }
        Ok(CohClass { gamma, poly })
    }

    pub fn one(gamma: DimVector) -> Self {
        CohClass {
            gamma,
            poly: MPoly::one(),
        }
    }

    /// The class `1` at dimension zero.
    pub fn unit(q: &Quiver) -> Self {
        Self::one(DimVector::zero(q.num_nodes()))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.poly.is_homogeneous()
    }

    /// Polynomial degree (half the cohomological degree); zero class has none.
    pub fn poly_degree(&self) -> Option<u32> {
        self.poly.degree()
    }

    pub fn render(&self, q: &Quiver) -> String {
        format!(
            "{}@{}",
            crate::algebra::render_poly(&self.poly, &q.var_names()),
            self.gamma
        )
    }

    /// Parses the literal `<polynomial>@[γ_1,...]`.
    pub fn parse(q: &Quiver, s: &str) -> Result<Self> {
        let (p, g) = s
            .rsplit_once('@')
            .ok_or_else(|| Error::InvalidInput(format!("class literal `{s}` lacks `@[...]`")))?;
        let gamma = q.dim(g.parse::<DimVector>()?.0)?;
        let poly = crate::algebra::parse_poly(p, &q.var_names())?;
        CohClass::new(q, gamma, poly)
    }
}

/// A formal difference of linear factors `ℓ + w·z`: the even part over the odd part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedComplex {
    pub even: Vec<(MPoly, i64)>,
    pub odd: Vec<(MPoly, i64)>,
}

impl WeightedComplex {
    pub fn rank(&self) -> i64 {
        self.even.len() as i64 - self.odd.len() as i64
    }

    /// Direct sum.
    pub fn concat(&self, o: &WeightedComplex) -> WeightedComplex {
        WeightedComplex {
            even: self.even.iter().chain(&o.even).cloned().collect(),
            odd: self.odd.iter().chain(&o.odd).cloned().collect(),
        }
    }

    /// Shifted complex `E[1]`: even and odd parts exchanged.
    pub fn shifted(&self) -> WeightedComplex {
        WeightedComplex {
            even: self.odd.clone(),
            odd: self.even.clone(),
        }
    }

    pub fn has_zero_weight(&self) -> bool {
        self.even.iter().chain(&self.odd).any(|f| f.1 == 0)
    }

    /// Applies `f` to every linear form.
    pub fn map_forms(&self, f: impl Fn(&MPoly) -> MPoly) -> WeightedComplex {
        WeightedComplex {
            even: self.even.iter().map(|(l, w)| (f(l), *w)).collect(),
            odd: self.odd.iter().map(|(l, w)| (f(l), *w)).collect(),
        }
    }

    fn factor(l: &MPoly, w: i64) -> MPoly {
        l + &MPoly::z().scale(&Rat::from_int(w))
    }

    /// `Π_even (ℓ + w z)` and `Π_odd (ℓ + w z)`, as a fraction.
    pub fn euler_fraction(&self) -> RatFn {
        let num = self
            .even
            .iter()
            .fold(MPoly::one(), |a, (l, w)| a.mul(&Self::factor(l, *w)));
        let den = self
            .odd
            .iter()
            .fold(MPoly::one(), |a, (l, w)| a.mul(&Self::factor(l, *w)));
        RatFn::new(num, den).expect("linear factors are nonzero")
    }
}

/// The Hom complex between factor-`fa` and factor-`fb` roots:
/// even `(b^{(q)}_j − a^{(q)}_i, w)`, odd `(b^{(q)}_j − a^{(p)}_i, w)` per arrow `p -> q`.
pub fn theta_between(
    q: &Quiver,
    g: &DimVector,
    fa: u8,
    h: &DimVector,
    fb: u8,
    w: i64,
) -> WeightedComplex {
    let n = q.num_nodes();
    let mut c = WeightedComplex::default();
    let form = |p: usize, i: usize, qq: usize, j: usize| {
        &MPoly::var(VarId::root(fb, qq, j)) - &MPoly::var(VarId::root(fa, p, i))
    };
    for node in 0..n {
        for i in 0..g.get(node) as usize {
            for j in 0..h.get(node) as usize {
                c.even.push((form(node, i, node, j), w));
            }
        }
    }
    for p in 0..n {
        for qq in 0..n {
            for _ in 0..q.mult(p, qq) {
                for i in 0..g.get(p) as usize {
                    for j in 0..h.get(qq) as usize {
                        c.odd.push((form(p, i, qq, j), w));
                    }
                }
            }
        }
    }
    c
}

/// `θ(γ, γ')` with `x` the factor-1 roots and `y` the factor-2 roots.
pub fn theta_factors(q: &Quiver, g: &DimVector, h: &DimVector, w: i64) -> WeightedComplex {
    theta_between(q, g, 1, h, 2, w)
}

/// `Π_q Π_{k=1}^{γ_q} 1/(1 − q^{2k})` truncated at `q^{max_deg}`.
pub fn hilbert_series(gamma: &DimVector, max_deg: usize) -> Vec<u64> {
    let mut s = vec![0u64; max_deg + 1];
    s[0] = 1;
    for &g in &gamma.0 {
        for k in 1..=g as usize {
            let step = 2 * k;
            for d in step..=max_deg {
                s[d] += s[d - step];
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn theta_examples() {
        let a1 = Quiver::a1();
        let t = theta_factors(&a1, &dv(&[1]), &dv(&[1]), -1);
        assert_eq!(t.even.len(), 1);
        assert!(t.odd.is_empty());
        let j = Quiver::jordan();
        let t = theta_factors(&j, &dv(&[1]), &dv(&[1]), -1);
        assert_eq!((t.even.len(), t.odd.len()), (1, 1));
        assert_eq!(t.even[0], t.odd[0]);
        let t = theta_factors(&a1, &dv(&[2]), &dv(&[1]), 1);
        assert_eq!(t.even.len(), 2);
        assert_eq!(t.even[1].1, 1);
    }

    #[test]
    fn euler_form_examples() {
        assert_eq!(Quiver::a1().euler_form(&dv(&[1]), &dv(&[1])), 1);
        assert_eq!(Quiver::jordan().euler_form(&dv(&[1]), &dv(&[1])), 0);
        assert_eq!(
            Quiver::kronecker().euler_form(&dv(&[1, 0]), &dv(&[0, 1])),
            -2
        );
        assert_eq!(
            Quiver::kronecker().arrow_form(&dv(&[1, 0]), &dv(&[0, 1])),
            2
        );
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_series(&dv(&[1]), 4), vec![1, 0, 1, 0, 1]);
        assert_eq!(hilbert_series(&dv(&[0]), 4), vec![1, 0, 0, 0, 0]);
        assert_eq!(hilbert_series(&dv(&[2]), 4), vec![1, 0, 1, 0, 2]);
    }

    #[test]
    fn json_roundtrip() {
        let k =
            Quiver::from_json(r#"{"nodes":["p","q"],"arrows":[{"from":"p","to":"q","mult":2}]}"#)
                .unwrap();
        assert_eq!(k, Quiver::kronecker());
        assert_eq!(Quiver::from_json(&k.to_json()).unwrap(), k);
        assert!(Quiver::from_json(r#"{"nodes":["p"],"arrows":[{"from":"p","to":"r"}]}"#).is_err());
    }

    #[test]
    fn class_validation() {
        let q = Quiver::a1();
        assert!(CohClass::parse(&q, "x1 + x2@[2]").is_ok());
        assert!(matches!(
            CohClass::parse(&q, "x1@[2]"),
            Err(Error::NotInvariant(_))
        ));
        assert!(CohClass::parse(&q, "x3@[2]").is_err());
        assert!(CohClass::parse(&q, "y1@[1]").is_err());
        let c = CohClass::parse(&q, "x@[1]").unwrap();
        assert_eq!(c.render(&q), "x1@[1]");
        let k = Quiver::kronecker();
        let c = CohClass::parse(&k, "x1_p*x1_q@[1,1]").unwrap();
        assert_eq!(CohClass::parse(&k, &c.render(&k)).unwrap(), c);
    }
}
