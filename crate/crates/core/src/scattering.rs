//! Factorization of a vertex-group element into a slope-ordered product of
//! wall automorphisms, solved one `t`-order at a time.
//!
//! At order `m` the current product `P` agrees with the target `C` modulo
//! `t^m`. Writing `C = P ∘ D`, the order-`m` part of `D − id` is a sum of
//! first-order wall contributions, each of which is a derivation and
//! therefore commutes with everything else at this order. It also equals the
//! order-`m` part of `C − P`, because `P(w) ≡ w` modulo `t`. A coefficient
//! `c` at `t^m x^{ka} y^{kb}` on wall `(a, b)` contributes
//!
//! * commutatively: `−b·c` at `x^{ka+1} y^{kb}` in `δx`, `a·c` at
//!   `x^{ka} y^{kb+1}` in `δy`;
//! * quantum: `c(q^{−kb} − 1)/(s^k − s^{−k})` in `δx̂` and
//!   `c(1 − q^{−ka})/(s^k − s^{−k})` in `δŷ`, at the same monomials.
//!
//! Both equations must produce the same `c`.

use std::cmp::Ordering as CmpOrdering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{LaurentPoly, RationalFunction};
use crate::torus::{Mode, Monomial, TruncatedSeries};
use crate::vertexgroup::{
    commutator, wall_automorphism, TorusAutomorphism, VertexGroupError, Wall,
};

/// Which end of the composition the smallest slope occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ordering {
    /// `θ_{smallest slope} ∘ … ∘ θ_{largest slope}`.
    IncreasingSlopeFirst,
    /// `θ_{largest slope} ∘ … ∘ θ_{smallest slope}`.
    IncreasingSlopeLast,
}

impl Default for Ordering {
    /// The convention under which commutators factor with positive leading
    /// wall coefficients.
    fn default() -> Self {
        Ordering::IncreasingSlopeLast
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ordering::IncreasingSlopeFirst => "increasing-slope-first",
            Ordering::IncreasingSlopeLast => "increasing-slope-last",
        })
    }
}

impl FromStr for Ordering {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "increasing-slope-first" => Ok(Ordering::IncreasingSlopeFirst),
            "increasing-slope-last" => Ok(Ordering::IncreasingSlopeLast),
            _ => Err(format!("unknown ordering `{s}`")),
        }
    }
}

/// Primitive direction ordered by slope `b/a`; `(1, 0)` is smallest and
/// `(0, 1)` largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    pub a: i64,
    pub b: i64,
}

impl Ord for Direction {
    fn cmp(&self, o: &Self) -> CmpOrdering {
        // b/a < b'/a'  ⇔  b·a' < b'·a  for a, a' ≥ 0 (not both directions vertical)
        (self.b * o.a)
            .cmp(&(o.b * self.a))
            .then_with(|| (self.a, self.b).cmp(&(o.a, o.b)))
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, o: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(o))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScatteringError {
    #[error("inconsistent discrepancy at t^{order}, monomial x^{u}y^{v}: {detail}")]
    InconsistentDiscrepancy {
        order: u32,
        u: i64,
        v: i64,
        detail: String,
    },
    #[error("discrepancy monomial x^{u}y^{v} at t^{order} is not a positive multiple of a first-quadrant direction")]
    NonQuadrantMonomial { order: u32, u: i64, v: i64 },
    #[error("coefficient query ({a}, {b}, k = {k}) is out of range")]
    OutOfRange { a: i64, b: i64, k: u32 },
    #[error("target is not the identity modulo t")]
    NotUnipotent,
    #[error(transparent)]
    VertexGroup(#[from] VertexGroupError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatteringResult {
    pub mode: Mode,
    pub order: u32,
    /// Generator levels `(ℓ1, ℓ2)` when the target is their commutator.
    pub levels: Option<(i64, i64)>,
    pub ordering: Ordering,
    pub walls: BTreeMap<Direction, Wall>,
}

/// JSON form of a [`ScatteringResult`]; coefficients are canonical strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScatteringRecord {
    pub l1: Option<i64>,
    pub l2: Option<i64>,
    pub mode: Mode,
    pub order: u32,
    pub ordering: Ordering,
    pub walls: Vec<WallRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallRecord {
    pub dir: [i64; 2],
    pub coeffs: BTreeMap<u32, String>,
}

impl ScatteringResult {
    pub fn empty(mode: Mode, order: u32, ordering: Ordering) -> Self {
        Self {
            mode,
            order,
            levels: None,
            ordering,
            walls: BTreeMap::new(),
        }
    }

    pub fn wall(&self, a: i64, b: i64) -> Option<&Wall> {
        self.walls.get(&Direction { a, b })
    }

    /// Directions carrying a nonzero wall, by increasing slope.
    pub fn directions(&self) -> Vec<(i64, i64)> {
        self.walls.keys().map(|d| (d.a, d.b)).collect()
    }

    /// Whether a wall sits on a coordinate axis (slope 0 or ∞).
    pub fn has_axis_walls(&self) -> bool {
        self.walls.keys().any(|d| d.a == 0 || d.b == 0)
    }

    /// Every coefficient specialized at `s = 1`, keyed by `(a, b, k)`.
    pub fn coefficients_at_s_one(
        &self,
    ) -> Result<BTreeMap<(i64, i64, u32), RationalFunction>, ScatteringError> {
        let one = crate::exactnum::Rational::from_integer(1.into());
        let mut out = BTreeMap::new();
        for (d, w) in &self.walls {
            for (&k, c) in w.coeffs() {
                let v = c
                    .eval_rational(&one)
                    .map_err(VertexGroupError::from)?
                    .ok_or_else(|| {
                        VertexGroupError::from(crate::exactnum::ExactError::DivisionByZero)
                    })?;
                if v != crate::exactnum::Rational::from_integer(0.into()) {
                    out.insert((d.a, d.b, k), RationalFunction::constant(v));
                }
            }
        }
        Ok(out)
    }

    pub fn record(&self) -> ScatteringRecord {
        ScatteringRecord {
            l1: self.levels.map(|l| l.0),
            l2: self.levels.map(|l| l.1),
            mode: self.mode,
            order: self.order,
            ordering: self.ordering,
            walls: self
                .walls
                .iter()
                .map(|(d, w)| WallRecord {
                    dir: [d.a, d.b],
                    coeffs: w
                        .coeffs()
                        .iter()
                        .map(|(k, c)| (*k, c.to_string()))
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Ordered composition of the wall automorphisms.
pub fn reconstruct(r: &ScatteringResult) -> Result<TorusAutomorphism, ScatteringError> {
    compose_walls(r.walls.values(), r.mode, r.order, r.ordering)
}

fn compose_walls<'a, I>(
    walls: I,
    mode: Mode,
    order: u32,
    ordering: Ordering,
) -> Result<TorusAutomorphism, ScatteringError>
where
    I: DoubleEndedIterator<Item = &'a Wall>,
{
    // left-to-right factor list, folded from the innermost (rightmost) factor
    let factors: Vec<&Wall> = match ordering {
        Ordering::IncreasingSlopeFirst => walls.collect(),
        Ordering::IncreasingSlopeLast => walls.rev().collect(),
    };
    let mut acc = TorusAutomorphism::identity(mode, order);
    for w in factors.into_iter().rev().filter(|w| !w.is_trivial()) {
        acc = wall_automorphism(w, mode, order)?.compose(&acc)?;
    }
    Ok(acc)
}

/// Factors `target` as a slope-ordered product of walls up to its
/// truncation order.
pub fn factor(
    target: &TorusAutomorphism,
    ordering: Ordering,
) -> Result<ScatteringResult, ScatteringError> {
    let (mode, n) = (target.mode(), target.order());
    let x = TruncatedSeries::x(mode, n);
    let y = TruncatedSeries::y(mode, n);
    if target.img_x().truncate_below(1) != x || target.img_y().truncate_below(1) != y {
        return Err(ScatteringError::NotUnipotent);
    }
    let mut walls: BTreeMap<Direction, Wall> = BTreeMap::new();
    for m in 1..=n {
        let p = compose_walls(walls.values(), mode, n, ordering)?;
        let dx = target.img_x() - p.img_x();
        let dy = target.img_y() - p.img_y();
        for ((u, v), (cx, cy)) in collect_deviation(&dx, &dy, m) {
            let c = solve_coefficient(mode, m, u, v, &cx, &cy)?;
            if c.is_zero() {
                continue;
            }
            let k = u.gcd(&v);
            let dir = Direction { a: u / k, b: v / k };
            let wall = match walls.entry(dir) {
                std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::btree_map::Entry::Vacant(e) => e.insert(Wall::new(dir.a, dir.b)?),
            };
            wall.set_coeff(k as u32, c)?;
        }
    }
    let result = ScatteringResult {
        mode,
        order: n,
        levels: None,
        ordering,
        walls,
    };
    if reconstruct(&result)? != *target {
        return Err(ScatteringError::InconsistentDiscrepancy {
            order: n,
            u: 0,
            v: 0,
            detail: "ordered product does not reproduce the target".into(),
        });
    }
    Ok(result)
}

/// Factors the commutator `T_{ℓ2}⁻¹ ∘ S_{ℓ1} ∘ T_{ℓ2} ∘ S_{ℓ1}⁻¹`.
pub fn factor_commutator(
    l1: i64,
    l2: i64,
    mode: Mode,
    order: u32,
    ordering: Ordering,
) -> Result<ScatteringResult, ScatteringError> {
    let target = commutator(l1, l2, mode, order)?;
    let mut r = factor(&target, ordering)?;
    r.levels = Some((l1, l2));
    Ok(r)
}

type Deviation = BTreeMap<(i64, i64), (RationalFunction, RationalFunction)>;

/// Order-`m` deviations keyed by the wall exponent `(u, v)`:
/// `x^{u+1} y^v` in `δx`, `x^u y^{v+1}` in `δy`.
fn collect_deviation(dx: &TruncatedSeries, dy: &TruncatedSeries, m: u32) -> Deviation {
    let mut out: Deviation = BTreeMap::new();
    for (mono, c) in dx.layer(m) {
        out.entry((mono.mx - 1, mono.my)).or_default().0 = c.clone();
    }
    for (mono, c) in dy.layer(m) {
        out.entry((mono.mx, mono.my - 1)).or_default().1 = c.clone();
    }
    out
}

fn solve_coefficient(
    mode: Mode,
    m: u32,
    u: i64,
    v: i64,
    cx: &RationalFunction,
    cy: &RationalFunction,
) -> Result<RationalFunction, ScatteringError> {
    if u < 0 || v < 0 || (u == 0 && v == 0) {
        return Err(ScatteringError::NonQuadrantMonomial { order: m, u, v });
    }
    let inconsistent = |detail: String| ScatteringError::InconsistentDiscrepancy {
        order: m,
        u,
        v,
        detail,
    };
    if u + v != m as i64 {
        return Err(inconsistent(format!(
            "t-degree {m} differs from the wall degree {}",
            u + v
        )));
    }
    let k = u.gcd(&v);
    let (a, b) = (u / k, v / k);
    let (fx, fy) = match mode {
        Mode::Commutative => (RationalFunction::from(-b), RationalFunction::from(a)),
        Mode::Quantum => {
            let norm: RationalFunction = (&LaurentPoly::s_pow(k) - &LaurentPoly::s_pow(-k)).into();
            let fx = (&RationalFunction::s_pow(-2 * v) - &RationalFunction::one())
                .checked_div(&norm)
                .map_err(VertexGroupError::from)?;
            let fy = (&RationalFunction::one() - &RationalFunction::s_pow(-2 * u))
                .checked_div(&norm)
                .map_err(VertexGroupError::from)?;
            (fx, fy)
        }
    };
    let solve = |c: &RationalFunction,
                 f: &RationalFunction|
     -> Result<Option<RationalFunction>, ScatteringError> {
        if f.is_zero() {
            if c.is_zero() {
                return Ok(None);
            }
            return Err(inconsistent(format!(
                "generator equation has no solution for {c}"
            )));
        }
        Ok(Some(c.checked_div(f).map_err(VertexGroupError::from)?))
    };
    match (solve(cx, &fx)?, solve(cy, &fy)?) {
        (Some(p), Some(q)) if p != q => Err(inconsistent(format!("x gives {p}, y gives {q}"))),
        (Some(p), _) | (None, Some(p)) => Ok(p),
        (None, None) => Ok(RationalFunction::zero()),
    }
}

/// `c^k_{a,b}`: the `k`-th coefficient of wall `(a, b)`.
///
/// Indices beyond the truncation (`k(a+b) > N`) read as zero; a
/// non-primitive or out-of-quadrant direction, or `k = 0`, is an error.
pub fn extract_ck(
    r: &ScatteringResult,
    a: i64,
    b: i64,
    k: u32,
) -> Result<RationalFunction, ScatteringError> {
    if k == 0 || a < 0 || b < 0 || (a == 0 && b == 0) || a.gcd(&b) != 1 {
        return Err(ScatteringError::OutOfRange { a, b, k });
    }
    Ok(r.wall(a, b).map(|w| w.coeff(k)).unwrap_or_default())
}

/// Deviation monomials of the target at order `m`, as `(u, v)` wall
/// exponents; useful for diagnostics.
pub fn deviation_monomials(target: &TorusAutomorphism, m: u32) -> Vec<Monomial> {
    let (mode, n) = (target.mode(), target.order());
    let dx = target.img_x() - &TruncatedSeries::x(mode, n);
    let dy = target.img_y() - &TruncatedSeries::y(mode, n);
    collect_deviation(&dx, &dy, m)
        .into_keys()
        .map(|(u, v)| Monomial::new(u, v))
        .collect()
}
