//! Elements of the tropical vertex group and its quantum deformation,
//! recorded by the images of the two generators.
//!
//! Composition follows `(φ∘ψ)(w) = φ(ψ(w))`. A monomial `x^m y^n` is sent to
//! `φ(x)^m · φ(y)^n` (in that factor order, which matches normal ordering).
//!
//! Quantum walls act by conjugation. For a wall in direction `(a, b)` with
//! stored coefficients `c_k`, the conjugating element is `g = exp(G)` with
//!
//! ```text
//! G = Σ_k c_k / (s^k − s^{-k}) · t^{k(a+b)} x̂^{ka} ŷ^{kb}
//! ```
//!
//! The division by `s^k − s^{-k}` makes `c_k` the quantum counterpart of the
//! coefficients of `log f`: at `s = 1` the wall reduces to the classical
//! `x ↦ f^{-b}x`, `y ↦ f^a y`.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{ExactError, LaurentPoly, RationalFunction};
use crate::torus::{DirectionalSeries, Mode, Monomial, TorusError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexGroupError {
    #[error("generator level must be positive, got {0}")]
    InvalidLevel(i64),
    #[error("invalid wall direction ({0}, {1}): need a, b ≥ 0 coprime and not both zero")]
    InvalidDirection(i64, i64),
    #[error("wall coefficient index must be ≥ 1")]
    InvalidIndex,
    #[error("generator image is not the generator times 1 + O(t)")]
    NotUnipotent,
    #[error("images violate x̂ŷ = q ŷx̂")]
    RelationViolated,
    #[error(transparent)]
    Torus(#[from] TorusError),
}

impl From<ExactError> for VertexGroupError {
    fn from(e: ExactError) -> Self {
        VertexGroupError::Torus(TorusError::Exact(e))
    }
}

/// Automorphism `id + O(t)` of the (quantum) torus algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAutomorphism {
    img_x: TruncatedSeries,
    img_y: TruncatedSeries,
}

/// Text record used for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismRecord {
    pub mode: Mode,
    pub order: u32,
    #[serde(rename = "imgX")]
    pub img_x: String,
    #[serde(rename = "imgY")]
    pub img_y: String,
}

impl TorusAutomorphism {
    /// Validates that the images are `x(1 + O(t))`, `y(1 + O(t))` and, in
    /// quantum mode, that they satisfy the defining relation.
    pub fn new(img_x: TruncatedSeries, img_y: TruncatedSeries) -> Result<Self, VertexGroupError> {
        img_x.check_compatible(&img_y)?;
        let phi = Self { img_x, img_y };
        if !phi.is_unipotent() {
            return Err(VertexGroupError::NotUnipotent);
        }
        if !phi.preserves_relation() {
            return Err(VertexGroupError::RelationViolated);
        }
        Ok(phi)
    }

    fn unchecked(img_x: TruncatedSeries, img_y: TruncatedSeries) -> Self {
        Self { img_x, img_y }
    }

    pub fn identity(mode: Mode, order: u32) -> Self {
        Self::unchecked(
            TruncatedSeries::x(mode, order),
            TruncatedSeries::y(mode, order),
        )
    }

    pub fn mode(&self) -> Mode {
        self.img_x.mode()
    }

    pub fn order(&self) -> u32 {
        self.img_x.order()
    }

    pub fn img_x(&self) -> &TruncatedSeries {
        &self.img_x
    }

    pub fn img_y(&self) -> &TruncatedSeries {
        &self.img_y
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.mode(), self.order())
    }

    fn is_unipotent(&self) -> bool {
        let one = RationalFunction::one();
        let lx = self.img_x.layer(0);
        let ly = self.img_y.layer(0);
        lx.len() == 1
            && lx.get(&Monomial::X) == Some(&one)
            && ly.len() == 1
            && ly.get(&Monomial::Y) == Some(&one)
    }

    /// `imgX·imgY − q·imgY·imgX = 0`; always true in commutative mode.
    pub fn preserves_relation(&self) -> bool {
        if self.mode() == Mode::Commutative {
            return true;
        }
        let lhs = &self.img_x * &self.img_y;
        let rhs = (&self.img_y * &self.img_x).scale(&RationalFunction::q_pow(1));
        lhs == rhs
    }

    /// Substitutes the generator images into `f`.
    pub fn apply(&self, f: &TruncatedSeries) -> Result<TruncatedSeries, VertexGroupError> {
        self.img_x.check_compatible(f)?;
        let mut powers = PowerCache::new(self);
        let mut out = TruncatedSeries::zero(self.mode(), self.order());
        for (d, m, c) in f.terms() {
            let px = powers.x_pow(m.mx)?;
            let py = powers.y_pow(m.my)?;
            let image = (&px * &py).scale(c).shift_t(d);
            out = &out + &image;
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, VertexGroupError> {
        self.img_x.check_compatible(&other.img_x)?;
        Ok(Self::unchecked(
            self.apply(&other.img_x)?,
            self.apply(&other.img_y)?,
        ))
    }

    /// Two-sided inverse, solved order by order: each pass subtracts the
    /// current error of `self ∘ ψ`, which raises its `t`-valuation.
    pub fn invert(&self) -> Result<Self, VertexGroupError> {
        let (mode, n) = (self.mode(), self.order());
        let x = TruncatedSeries::x(mode, n);
        let y = TruncatedSeries::y(mode, n);
        let mut psi = Self::identity(mode, n);
        for _ in 0..=n {
            let e = self.compose(&psi)?;
            let ex = &e.img_x - &x;
            let ey = &e.img_y - &y;
            if ex.is_zero() && ey.is_zero() {
                break;
            }
            psi = Self::unchecked(&psi.img_x - &ex, &psi.img_y - &ey);
        }
        Self::new(psi.img_x, psi.img_y)
    }

    /// Specializes every coefficient at `s = 1`, giving a commutative
    /// automorphism.
    pub fn at_s_one(&self) -> Result<Self, VertexGroupError> {
        Ok(Self::unchecked(
            self.img_x.at_s_one()?,
            self.img_y.at_s_one()?,
        ))
    }

    pub fn record(&self) -> AutomorphismRecord {
        AutomorphismRecord {
            mode: self.mode(),
            order: self.order(),
            img_x: self.img_x.to_string(),
            img_y: self.img_y.to_string(),
        }
    }
}

struct PowerCache<'a> {
    phi: &'a TorusAutomorphism,
    x: HashMap<i64, TruncatedSeries>,
    y: HashMap<i64, TruncatedSeries>,
}

impl<'a> PowerCache<'a> {
    fn new(phi: &'a TorusAutomorphism) -> Self {
        Self {
            phi,
            x: HashMap::new(),
            y: HashMap::new(),
        }
    }

    fn pow(
        cache: &mut HashMap<i64, TruncatedSeries>,
        base: &TruncatedSeries,
        e: i64,
    ) -> Result<TruncatedSeries, VertexGroupError> {
        if let Some(p) = cache.get(&e) {
            return Ok(p.clone());
        }
        let p = match e {
            0 => TruncatedSeries::one(base.mode(), base.order()),
            1 => base.clone(),
            -1 => base.inverse()?,
            _ => {
                let step = e.signum();
                let prev = Self::pow(cache, base, e - step)?;
                let unit = Self::pow(cache, base, step)?;
                &prev * &unit
            }
        };
        cache.insert(e, p.clone());
        Ok(p)
    }

    fn x_pow(&mut self, e: i64) -> Result<TruncatedSeries, VertexGroupError> {
        Self::pow(&mut self.x, &self.phi.img_x, e)
    }

    fn y_pow(&mut self, e: i64) -> Result<TruncatedSeries, VertexGroupError> {
        Self::pow(&mut self.y, &self.phi.img_y, e)
    }
}

fn level(l: i64) -> Result<(), VertexGroupError> {
    if l <= 0 {
        return Err(VertexGroupError::InvalidLevel(l));
    }
    Ok(())
}

/// `1 + c·t·g` where `g` is a generator and `c = 1` (commutative) or `s`
/// (quantum).
fn one_plus_generator(mode: Mode, order: u32, gen: Monomial) -> TruncatedSeries {
    let c = match mode {
        Mode::Commutative => RationalFunction::one(),
        Mode::Quantum => RationalFunction::s_pow(1),
    };
    &TruncatedSeries::one(mode, order) + &TruncatedSeries::monomial(mode, order, 1, gen, c)
}

/// `S_ℓ`: `x ↦ x`, `y ↦ (1 + tx)^ℓ · y`; in quantum mode
/// `ŷ ↦ (1 + s·t·x̂)^ℓ · ŷ`.
pub fn make_s(l: i64, mode: Mode, order: u32) -> Result<TorusAutomorphism, VertexGroupError> {
    level(l)?;
    let f = one_plus_generator(mode, order, Monomial::X).pow(l)?;
    TorusAutomorphism::new(
        TruncatedSeries::x(mode, order),
        &f * &TruncatedSeries::y(mode, order),
    )
}

/// `T_ℓ`: `y ↦ y`, `x ↦ (1 + ty)^{-ℓ} · x`; in quantum mode
/// `x̂ ↦ (1 + s·t·ŷ)^{-ℓ} · x̂`.
pub fn make_t(l: i64, mode: Mode, order: u32) -> Result<TorusAutomorphism, VertexGroupError> {
    level(l)?;
    let f = one_plus_generator(mode, order, Monomial::Y).pow(-l)?;
    TorusAutomorphism::new(
        &f * &TruncatedSeries::x(mode, order),
        TruncatedSeries::y(mode, order),
    )
}

/// `T_{ℓ2}⁻¹ ∘ S_{ℓ1} ∘ T_{ℓ2} ∘ S_{ℓ1}⁻¹`.
pub fn commutator(
    l1: i64,
    l2: i64,
    mode: Mode,
    order: u32,
) -> Result<TorusAutomorphism, VertexGroupError> {
    let s = make_s(l1, mode, order)?;
    let t = make_t(l2, mode, order)?;
    let s_inv = s.invert()?;
    let t_inv = t.invert()?;
    t_inv.compose(&s.compose(&t.compose(&s_inv)?)?)
}

/// A primitive direction `(a, b)` in the closed first quadrant together
/// with the coefficients `c_k` of `log f = Σ_k c_k t^{k(a+b)} x^{ka} y^{kb}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wall {
    a: i64,
    b: i64,
    coeffs: BTreeMap<u32, RationalFunction>,
}

impl Wall {
    pub fn new(a: i64, b: i64) -> Result<Self, VertexGroupError> {
        if a < 0 || b < 0 || (a == 0 && b == 0) || a.gcd(&b) != 1 {
            return Err(VertexGroupError::InvalidDirection(a, b));
        }
        Ok(Self {
            a,
            b,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn with_coeffs<I>(a: i64, b: i64, coeffs: I) -> Result<Self, VertexGroupError>
    where
        I: IntoIterator<Item = (u32, RationalFunction)>,
    {
        let mut w = Self::new(a, b)?;
        for (k, c) in coeffs {
            w.set_coeff(k, c)?;
        }
        Ok(w)
    }

    pub fn direction(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    pub fn set_coeff(&mut self, k: u32, c: RationalFunction) -> Result<(), VertexGroupError> {
        if k == 0 {
            return Err(VertexGroupError::InvalidIndex);
        }
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
        Ok(())
    }

    pub fn coeff(&self, k: u32) -> RationalFunction {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, RationalFunction> {
        &self.coeffs
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `t`-degree of the `k`-th term.
    pub fn degree(&self, k: u32) -> u32 {
        k * (self.a + self.b) as u32
    }

    /// The wall with negated coefficients, whose automorphism is the inverse.
    pub fn negated(&self) -> Self {
        Self {
            a: self.a,
            b: self.b,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    fn monomial(&self, k: u32) -> Monomial {
        Monomial::new(k as i64 * self.a, k as i64 * self.b)
    }

    /// `Σ_k c_k t^{k(a+b)} x^{ka} y^{kb}` truncated at `order`.
    pub fn log_series(&self, mode: Mode, order: u32) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(mode, order);
        for (&k, c) in &self.coeffs {
            s.add_term(self.degree(k), self.monomial(k), c.clone());
        }
        s
    }

    /// `G = Σ_k c_k/(s^k − s^{-k}) t^{k(a+b)} x̂^{ka} ŷ^{kb}`, the logarithm of
    /// the conjugating element of the quantum wall.
    pub fn conjugator_log(&self, order: u32) -> Result<DirectionalSeries, VertexGroupError> {
        let mut s = TruncatedSeries::zero(Mode::Quantum, order);
        for (&k, c) in &self.coeffs {
            let d = self.degree(k);
            if d > order {
                continue;
            }
            let k = k as i64;
            let norm: RationalFunction = (&LaurentPoly::s_pow(k) - &LaurentPoly::s_pow(-k)).into();
            s.add_term(d, self.monomial(k as u32), c.checked_div(&norm)?);
        }
        Ok(DirectionalSeries::new(self.a, self.b, s)?)
    }

    /// The conjugating element `g = exp(G)` of the quantum wall.
    pub fn conjugator(&self, order: u32) -> Result<TruncatedSeries, VertexGroupError> {
        Ok(self.conjugator_log(order)?.series().exp()?)
    }
}

/// Automorphism of a wall.
///
/// Commutative: `x ↦ f^{-b} x`, `y ↦ f^a y` with `f = exp(log f)`.
/// Quantum: `w ↦ g w g⁻¹`. For a monomial `M = x̂^m ŷ^n` this is
/// `M · exp(G(q^d z) − G(z))` with `d = a·n − b·m`, since `h(z)·M = M·h(q^d z)`.
pub fn wall_automorphism(
    w: &Wall,
    mode: Mode,
    order: u32,
) -> Result<TorusAutomorphism, VertexGroupError> {
    let x = TruncatedSeries::x(mode, order);
    let y = TruncatedSeries::y(mode, order);
    let (a, b) = w.direction();
    match mode {
        Mode::Commutative => {
            let l = w.log_series(mode, order);
            let img_x = &l.scale(&RationalFunction::from(-b)).exp()? * &x;
            let img_y = &l.scale(&RationalFunction::from(a)).exp()? * &y;
            TorusAutomorphism::new(img_x, img_y)
        }
        Mode::Quantum => {
            let g = w.conjugator_log(order)?;
            let multiplier = |d: i64| -> Result<TruncatedSeries, VertexGroupError> {
                Ok((g.commute_past(d).series() - g.series()).exp()?)
            };
            let img_x = &x * &multiplier(-b)?;
            let img_y = &y * &multiplier(a)?;
            TorusAutomorphism::new(img_x, img_y)
        }
    }
}
