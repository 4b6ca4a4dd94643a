//! Rational tropical curves in the plane with one end of weight `k` in
//! direction `(b, a)`, downward ends of weights `α_i` pinned to vertical
//! lines and leftward ends of weights `α'_j` pinned to horizontal lines.
//!
//! A curve type is an unrooted trivalent tree. Rooting it at the weight-`k`
//! end turns it into a rooted binary tree on the remaining leaves, recorded
//! here as a laminar family of leaf sets ("clusters"): every vertex is the
//! cluster of leaves below it, and every edge is the cluster on its far side
//! from the root end. The outward weighted vector of the edge towards a
//! cluster `C` is the sum of the leaf vectors in `C`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{quantum_integer, Rational, RationalFunction};

/// Half-width of the sampling window for line positions, per unit of total
/// end weight `k(a + b)`.
pub const CONFIG_RANGE_PER_WEIGHT: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropicalError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("configuration has {got_x} vertical and {got_y} horizontal lines, expected {want_x} and {want_y}")]
    ShapeMismatch {
        want_x: usize,
        want_y: usize,
        got_x: usize,
        got_y: usize,
    },
    #[error("configuration is not generic for this curve type")]
    NonGeneric,
    #[error("Pick identity violated for vertex vectors {vectors:?}: 2I = {twice_i}")]
    PickViolation {
        vectors: [(i64, i64); 3],
        twice_i: i64,
    },
    #[error("vertex vectors {0:?} do not balance")]
    Unbalanced([(i64, i64); 3]),
}

/// Constraint data `(a, b, k, α, α')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TropicalProblem {
    pub a: i64,
    pub b: i64,
    pub k: i64,
    pub alpha: Vec<i64>,
    pub alpha_prime: Vec<i64>,
}

impl TropicalProblem {
    pub fn new(
        a: i64,
        b: i64,
        k: i64,
        alpha: Vec<i64>,
        alpha_prime: Vec<i64>,
    ) -> Result<Self, TropicalError> {
        let p = Self {
            a,
            b,
            k,
            alpha,
            alpha_prime,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), TropicalError> {
        let bad = |m: String| Err(TropicalError::InvalidProblem(m));
        if self.a < 1 || self.b < 1 || self.k < 1 {
            return bad(format!(
                "a, b, k must be positive, got ({}, {}, {})",
                self.a, self.b, self.k
            ));
        }
        if self.a.gcd(&self.b) != 1 {
            return bad(format!("a = {} and b = {} are not coprime", self.a, self.b));
        }
        if self.alpha.is_empty() || self.alpha_prime.is_empty() {
            return bad("alpha and alpha_prime must be nonempty".into());
        }
        if self.alpha.iter().chain(&self.alpha_prime).any(|&w| w < 1) {
            return bad("all parts must be positive".into());
        }
        if self.alpha.iter().sum::<i64>() != self.k * self.a {
            return bad(format!("alpha must sum to ka = {}", self.k * self.a));
        }
        if self.alpha_prime.iter().sum::<i64>() != self.k * self.b {
            return bad(format!("alpha_prime must sum to kb = {}", self.k * self.b));
        }
        if self.num_leaves() > 64 {
            return bad("too many ends".into());
        }
        Ok(())
    }

    /// Number of ends, including the weight-`k` end.
    pub fn num_leaves(&self) -> usize {
        self.alpha.len() + self.alpha_prime.len() + 1
    }

    pub fn total_weight(&self) -> i64 {
        self.k * (self.a + self.b)
    }

    /// `(0, −α_i)` for downward ends, `(−α'_j, 0)` for leftward ends.
    fn constrained_leaf_vectors(&self) -> Vec<(i64, i64)> {
        self.alpha
            .iter()
            .map(|&w| (0, -w))
            .chain(self.alpha_prime.iter().map(|&w| (-w, 0)))
            .collect()
    }

    fn weight_denominators(&self) -> (BigInt, RationalFunction) {
        let mut classical = BigInt::one();
        let mut refined = RationalFunction::one();
        for &w in self.alpha.iter().chain(&self.alpha_prime) {
            classical *= w;
            refined = &refined * &RationalFunction::from(quantum_integer(w as u32));
        }
        (classical, refined)
    }
}

impl fmt::Display for TropicalProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[i64]| {
            v.iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "({},{},{},({}),({}))",
            self.a,
            self.b,
            self.k,
            list(&self.alpha),
            list(&self.alpha_prime)
        )
    }
}

/// Positions of the vertical lines (one per `α` part) and horizontal lines
/// (one per `α'` part).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstraintConfig {
    #[serde(with = "rational_seq")]
    pub xlines: Vec<Rational>,
    #[serde(with = "rational_seq")]
    pub ylines: Vec<Rational>,
    pub seed: u64,
}

mod rational_seq {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Int(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| match e {
                Entry::Int(n) => Ok(Rational::from_integer(n.into())),
                Entry::Text(t) => t
                    .trim()
                    .parse::<Rational>()
                    .map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

impl ConstraintConfig {
    pub fn new(xlines: Vec<Rational>, ylines: Vec<Rational>, seed: u64) -> Self {
        Self {
            xlines,
            ylines,
            seed,
        }
    }

    pub fn from_integers(xlines: &[i64], ylines: &[i64], seed: u64) -> Self {
        let conv = |v: &[i64]| {
            v.iter()
                .map(|&n| Rational::from_integer(n.into()))
                .collect()
        };
        Self::new(conv(xlines), conv(ylines), seed)
    }

    pub fn check(&self, p: &TropicalProblem) -> Result<(), TropicalError> {
        if self.xlines.len() != p.alpha.len() || self.ylines.len() != p.alpha_prime.len() {
            return Err(TropicalError::ShapeMismatch {
                want_x: p.alpha.len(),
                want_y: p.alpha_prime.len(),
                got_x: self.xlines.len(),
                got_y: self.ylines.len(),
            });
        }
        let distinct = |v: &[Rational]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
        // coinciding lines are the most basic failure of genericity
        if !distinct(&self.xlines) || !distinct(&self.ylines) {
            return Err(TropicalError::NonGeneric);
        }
        Ok(())
    }
}

/// Deterministic configuration: distinct integers in
/// `[−R, R]`, `R = CONFIG_RANGE_PER_WEIGHT · k(a + b)`, drawn from a
/// ChaCha8 stream seeded with `seed`; collisions are redrawn.
pub fn random_config(p: &TropicalProblem, seed: u64) -> ConstraintConfig {
    let range = CONFIG_RANGE_PER_WEIGHT * p.total_weight();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |n: usize| {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let v: i64 = rng.gen_range(-range..=range);
            if seen.insert(v) {
                out.push(v);
            }
        }
        out
    };
    let xs = draw(p.alpha.len());
    let ys = draw(p.alpha_prime.len());
    ConstraintConfig::from_integers(&xs, &ys, seed)
}

/// `(μ, P, I)` of a trivalent vertex: `μ = |det|` of two weighted edge
/// vectors, `P` the total weight, and `I` the number of interior lattice
/// points of the dual triangle from `2I = μ − P + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeStats {
    pub mu: i64,
    pub perimeter: i64,
    pub interior: i64,
}

pub fn lattice_stats(vectors: [(i64, i64); 3]) -> Result<LatticeStats, TropicalError> {
    let [u, v, w] = vectors;
    if u.0 + v.0 + w.0 != 0 || u.1 + v.1 + w.1 != 0 {
        return Err(TropicalError::Unbalanced(vectors));
    }
    let mu = (u.0 * v.1 - u.1 * v.0).abs();
    let perimeter: i64 = vectors.iter().map(|&(x, y)| x.gcd(&y)).sum();
    let twice_i = mu - perimeter + 2;
    if twice_i < 0 || twice_i % 2 != 0 {
        return Err(TropicalError::PickViolation { vectors, twice_i });
    }
    Ok(LatticeStats {
        mu,
        perimeter,
        interior: twice_i / 2,
    })
}

/// A vertex of a curve type: the leaves below it and its two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeVertex {
    pub cluster: u64,
    pub children: [u64; 2],
    /// Index of the parent vertex; `None` for the vertex on the weight-`k` end.
    pub parent: Option<usize>,
}

/// A labeled trivalent tree with its balanced edge data.
///
/// Leaves `0..#α` are the downward ends, then `#α..#α+#α'` the leftward
/// ends; the weight-`k` end is the root and carries no label bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialType {
    n_alpha: usize,
    leaf_vectors: Vec<(i64, i64)>,
    /// Internal edges as sorted clusters: the canonical encoding.
    splits: Vec<u64>,
    /// Parents before children.
    vertices: Vec<TypeVertex>,
}

impl CombinatorialType {
    fn from_clusters(p: &TropicalProblem, clusters: &BTreeSet<u64>) -> Self {
        let leaf_vectors = p.constrained_leaf_vectors();
        let m = leaf_vectors.len();
        let full = full_mask(m);
        let splits: Vec<u64> = clusters
            .iter()
            .copied()
            .filter(|&c| c != full && c.count_ones() > 1)
            .collect();
        let mut vcl: Vec<u64> = clusters
            .iter()
            .copied()
            .filter(|&c| c.count_ones() > 1)
            .collect();
        vcl.sort_unstable_by(|x, y| y.cmp(x));
        let vertices = vcl
            .iter()
            .map(|&c| {
                // children: maximal proper sub-clusters
                let subs: Vec<u64> = clusters
                    .iter()
                    .copied()
                    .filter(|&d| d != c && d & c == d)
                    .collect();
                let mut kids: Vec<u64> = subs
                    .iter()
                    .copied()
                    .filter(|&d| !subs.iter().any(|&e| e != d && e & d == d))
                    .collect();
                kids.sort_unstable();
                debug_assert_eq!(kids.len(), 2);
                let parent = vcl
                    .iter()
                    .enumerate()
                    .filter(|&(_, &e)| e != c && e & c == c)
                    .min_by_key(|(_, e)| e.count_ones())
                    .map(|(i, _)| i);
                TypeVertex {
                    cluster: c,
                    children: [kids[0], kids[1]],
                    parent,
                }
            })
            .collect();
        Self {
            n_alpha: p.alpha.len(),
            leaf_vectors,
            splits,
            vertices,
        }
    }

    pub fn num_constrained_leaves(&self) -> usize {
        self.leaf_vectors.len()
    }

    pub fn splits(&self) -> &[u64] {
        &self.splits
    }

    pub fn vertices(&self) -> &[TypeVertex] {
        &self.vertices
    }

    pub fn is_alpha_leaf(&self, leaf: usize) -> bool {
        leaf < self.n_alpha
    }

    /// Outward weighted vector of the edge leading to cluster `c`.
    pub fn edge_vector(&self, c: u64) -> (i64, i64) {
        (0..self.leaf_vectors.len())
            .filter(|&i| c >> i & 1 == 1)
            .fold((0, 0), |acc, i| {
                (
                    acc.0 + self.leaf_vectors[i].0,
                    acc.1 + self.leaf_vectors[i].1,
                )
            })
    }

    /// Weight (lattice length) of the edge leading to cluster `c`; the edge
    /// above the root vertex is the weight-`k` end.
    pub fn edge_weight(&self, c: u64) -> i64 {
        let (x, y) = self.edge_vector(c);
        x.gcd(&y)
    }

    /// Outward weighted vectors at vertex `i`: the two children, then the
    /// edge towards the root end.
    pub fn vertex_vectors(&self, i: usize) -> [(i64, i64); 3] {
        let v = &self.vertices[i];
        let (c1, c2) = (
            self.edge_vector(v.children[0]),
            self.edge_vector(v.children[1]),
        );
        let up = self.edge_vector(v.cluster);
        [c1, c2, (-up.0, -up.1)]
    }

    pub fn vertex_stats(&self, i: usize) -> Result<LatticeStats, TropicalError> {
        lattice_stats(self.vertex_vectors(i))
    }

    /// The three incident edges of vertex `i` as clusters (children, then own).
    pub fn incident_edges(&self, i: usize) -> [u64; 3] {
        let v = &self.vertices[i];
        [v.children[0], v.children[1], v.cluster]
    }

    fn leaf_label(&self, i: usize) -> String {
        if i < self.n_alpha {
            format!("a{i}")
        } else {
            format!("b{}", i - self.n_alpha)
        }
    }

    fn cluster_label(&self, c: u64) -> String {
        let names: Vec<String> = (0..self.leaf_vectors.len())
            .filter(|&i| c >> i & 1 == 1)
            .map(|i| self.leaf_label(i))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    fn is_degenerate(&self) -> bool {
        self.splits.iter().any(|&c| self.edge_vector(c) == (0, 0))
            || (0..self.vertices.len()).any(|i| {
                let [u, v, _] = self.vertex_vectors(i);
                u.0 * v.1 - u.1 * v.0 == 0
            })
    }
}

impl fmt::Display for CombinatorialType {
    /// Internal edges, each as the set of labeled ends on the side away from
    /// the weight-`k` end; the tripod is `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.splits.is_empty() {
            return f.write_str("*");
        }
        let parts: Vec<String> = self.splits.iter().map(|&c| self.cluster_label(c)).collect();
        f.write_str(&parts.join("|"))
    }
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Every labeled trivalent tree with `m + 1` leaves, rooted at the extra
/// leaf, as its cluster family. There are `(2m − 3)!!` of them.
pub fn labeled_topologies(m: usize) -> Vec<BTreeSet<u64>> {
    assert!(m >= 2, "need at least three leaves");
    let mut trees = vec![BTreeSet::from([0b1u64, 0b10, 0b11])];
    for i in 2..m {
        let bit = 1u64 << i;
        let mut next = Vec::with_capacity(trees.len() * (2 * i - 1));
        for t in &trees {
            for &d in t {
                let mut nt: BTreeSet<u64> = t
                    .iter()
                    .map(|&c| if c & d == d { c | bit } else { c })
                    .collect();
                nt.insert(d | bit);
                nt.insert(d);
                nt.insert(bit);
                next.push(nt);
            }
        }
        trees = next;
    }
    trees
}

/// All nondegenerate curve types, sorted by canonical encoding.
pub fn enumerate_types(p: &TropicalProblem) -> Vec<CombinatorialType> {
    let m = p.alpha.len() + p.alpha_prime.len();
    let mut types: Vec<CombinatorialType> = labeled_topologies(m)
        .iter()
        .map(|t| CombinatorialType::from_clusters(p, t))
        .filter(|t| !t.is_degenerate())
        .collect();
    types.sort_by(|x, y| x.splits.cmp(&y.splits));
    types.dedup_by(|x, y| x.splits == y.splits);
    types
}

/// A curve type placed on a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedCurve {
    pub ctype: CombinatorialType,
    /// Vertex positions, indexed like `ctype.vertices()`.
    pub positions: Vec<(Rational, Rational)>,
    /// Lattice lengths of the internal edges, indexed like `ctype.splits()`.
    pub lengths: Vec<Rational>,
    /// `∏_V μ(Γ, V)`.
    pub mu: BigInt,
    /// `μ(Γ) = ∏_V μ(Γ, V) / (∏ α_i ∏ α'_j)`.
    pub mu_normalized: Rational,
    /// `∏_V [μ(Γ, V)]_q / (∏ [α_i]_q ∏ [α'_j]_q)`.
    pub refined: RationalFunction,
}

/// JSON form of a [`PlacedCurve`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    #[serde(rename = "type")]
    pub ctype: String,
    pub positions: Vec<[String; 2]>,
    pub lengths: Vec<String>,
    pub mu: String,
    pub mu_normalized: String,
    pub refined: String,
}

impl PlacedCurve {
    pub fn record(&self) -> CurveRecord {
        CurveRecord {
            ctype: self.ctype.to_string(),
            positions: self
                .positions
                .iter()
                .map(|(x, y)| [x.to_string(), y.to_string()])
                .collect(),
            lengths: self.lengths.iter().map(Rational::to_string).collect(),
            mu: self.mu.to_string(),
            mu_normalized: self.mu_normalized.to_string(),
            refined: self.refined.to_string(),
        }
    }

    pub fn vertex_stats(&self) -> Result<Vec<LatticeStats>, TropicalError> {
        (0..self.ctype.vertices.len())
            .map(|i| self.ctype.vertex_stats(i))
            .collect()
    }
}

/// Classical and refined multiplicity of a placed curve.
pub fn multiplicities(
    c: &PlacedCurve,
    p: &TropicalProblem,
) -> Result<(Rational, RationalFunction), TropicalError> {
    type_multiplicities(&c.ctype, p).map(|(_, classical, refined)| (classical, refined))
}

fn type_multiplicities(
    t: &CombinatorialType,
    p: &TropicalProblem,
) -> Result<(BigInt, Rational, RationalFunction), TropicalError> {
    let mut mu = BigInt::one();
    let mut refined = RationalFunction::one();
    for i in 0..t.vertices.len() {
        let m = t.vertex_stats(i)?.mu;
        mu *= m;
        refined = &refined * &RationalFunction::from(quantum_integer(m as u32));
    }
    let (den, qden) = p.weight_denominators();
    let classical = Rational::new(mu.clone(), den);
    let refined = refined
        .checked_div(&qden)
        .expect("quantum integers of positive weights are nonzero");
    Ok((mu, classical, refined))
}

/// Solves `A x = rhs` exactly; `None` if `A` is singular.
fn solve_linear(mut a: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col][col..].iter_mut() {
            *v = &*v * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        let pivot_row = a[col].clone();
        let pivot_rhs = rhs[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
                rhs[r] -= &f * &pivot_rhs;
            }
        }
    }
    Some(rhs)
}

/// Places `ct` on `cfg`.
///
/// Unknowns are the root vertex position and the lattice length of each
/// internal edge; each downward end fixes the `x`-coordinate of its vertex
/// and each leftward end fixes the `y`-coordinate. Returns `Ok(None)` when
/// the unique solution has a negative length, and `NonGeneric` when the
/// system is singular or some length vanishes.
pub fn place(
    ct: &CombinatorialType,
    p: &TropicalProblem,
    cfg: &ConstraintConfig,
) -> Result<Option<PlacedCurve>, TropicalError> {
    cfg.check(p)?;
    let m = ct.num_constrained_leaves();
    let split_index = |c: u64| ct.splits.binary_search(&c).ok();
    // path[v]: internal edges (by split index) from the root vertex down to v
    let mut path: Vec<Vec<usize>> = Vec::with_capacity(ct.vertices.len());
    for v in &ct.vertices {
        let mut pth = v.parent.map(|pi| path[pi].clone()).unwrap_or_default();
        if let Some(si) = split_index(v.cluster) {
            pth.push(si);
        }
        path.push(pth);
    }
    let primitive = |c: u64| {
        let (x, y) = ct.edge_vector(c);
        let g = x.gcd(&y);
        (x / g, y / g)
    };
    let prims: Vec<(i64, i64)> = ct.splits.iter().map(|&c| primitive(c)).collect();
    let mut a = vec![vec![Rational::zero(); m]; m];
    let mut rhs = Vec::with_capacity(m);
    for (leaf, row) in a.iter_mut().enumerate() {
        let vi = ct
            .vertices
            .iter()
            .position(|v| v.children.contains(&(1u64 << leaf)))
            .expect("leaf has a vertex");
        let alpha = ct.is_alpha_leaf(leaf);
        row[if alpha { 0 } else { 1 }] = Rational::one();
        for &si in &path[vi] {
            let comp = if alpha { prims[si].0 } else { prims[si].1 };
            row[2 + si] = Rational::from_integer(comp.into());
        }
        rhs.push(if alpha {
            cfg.xlines[leaf].clone()
        } else {
            cfg.ylines[leaf - ct.n_alpha].clone()
        });
    }
    let sol = solve_linear(a, rhs).ok_or(TropicalError::NonGeneric)?;
    let lengths: Vec<Rational> = sol[2..].to_vec();
    if lengths.iter().any(Zero::is_zero) {
        return Err(TropicalError::NonGeneric);
    }
    if lengths.iter().any(Signed::is_negative) {
        return Ok(None);
    }
    let positions = path
        .iter()
        .map(|pth| {
            pth.iter()
                .fold((sol[0].clone(), sol[1].clone()), |(x, y), &si| {
                    let (dx, dy) = prims[si];
                    (
                        x + &lengths[si] * BigInt::from(dx),
                        y + &lengths[si] * BigInt::from(dy),
                    )
                })
        })
        .collect();
    let (mu, mu_normalized, refined) = type_multiplicities(ct, p)?;
    Ok(Some(PlacedCurve {
        ctype: ct.clone(),
        positions,
        lengths,
        mu,
        mu_normalized,
        refined,
    }))
}

/// `N^trop` and `N̂^trop` with the contributing curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValues {
    pub classical: Rational,
    pub refined: RationalFunction,
    pub curves: Vec<PlacedCurve>,
}

/// Sums multiplicities over every type that places on `cfg`. Types are
/// placed in parallel and merged in canonical order.
pub fn invariants(
    p: &TropicalProblem,
    cfg: &ConstraintConfig,
) -> Result<InvariantValues, TropicalError> {
    p.validate()?;
    cfg.check(p)?;
    let placed: Vec<Option<PlacedCurve>> = enumerate_types(p)
        .par_iter()
        .map(|t| place(t, p, cfg))
        .collect::<Result<_, _>>()?;
    let curves: Vec<PlacedCurve> = placed.into_iter().flatten().collect();
    let classical = curves
        .iter()
        .fold(Rational::zero(), |acc, c| acc + &c.mu_normalized);
    let refined = curves
        .iter()
        .fold(RationalFunction::zero(), |acc, c| &acc + &c.refined);
    Ok(InvariantValues {
        classical,
        refined,
        curves,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeEntry {
    pub seed: u64,
    pub classical: String,
    pub refined: String,
    pub curves: usize,
}

/// Outcome of computing the invariants over several seeded configurations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub entries: Vec<ProbeEntry>,
    pub non_generic_seeds: Vec<u64>,
    /// All generic seeds gave the same refined invariant.
    pub consistent: bool,
}

pub fn invariance_probe(
    p: &TropicalProblem,
    seeds: &[u64],
) -> Result<InvarianceReport, TropicalError> {
    p.validate()?;
    let mut entries = Vec::new();
    let mut non_generic_seeds = Vec::new();
    let mut values: Vec<RationalFunction> = Vec::new();
    for &seed in seeds {
        match invariants(p, &random_config(p, seed)) {
            Ok(v) => {
                entries.push(ProbeEntry {
                    seed,
                    classical: v.classical.to_string(),
                    refined: v.refined.to_string(),
                    curves: v.curves.len(),
                });
                values.push(v.refined);
            }
            Err(TropicalError::NonGeneric) => non_generic_seeds.push(seed),
            Err(e) => return Err(e),
        }
    }
    let consistent = values.windows(2).all(|w| w[0] == w[1]);
    Ok(InvarianceReport {
        entries,
        non_generic_seeds,
        consistent,
    })
}
