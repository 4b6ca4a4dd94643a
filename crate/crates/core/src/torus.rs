//! Truncated `t`-adic series over the Laurent ring `ℚ(s)[x^±, y^±]`, either
//! commutative or over the quantum torus `x̂ŷ = q ŷx̂` with `q = s²`.
//!
//! Quantum monomials are stored normal-ordered, `x̂^m ŷ^n`. Moving `ŷ` past
//! `x̂` costs `ŷx̂ = q⁻¹ x̂ŷ`, which gives the product rule
//!
//! ```text
//! (x̂^{m1} ŷ^{n1}) · (x̂^{m2} ŷ^{n2}) = q^{-n1·m2} x̂^{m1+m2} ŷ^{n1+n2}
//! ```
//!
//! Every series carries its truncation order `N`; only `t^0 … t^N` are kept
//! and mixing orders is an error.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{ExactError, Rational, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Commutative,
    Quantum,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Commutative => "commutative",
            Mode::Quantum => "quantum",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "commutative" => Ok(Mode::Commutative),
            "quantum" => Ok(Mode::Quantum),
            _ => Err(format!(
                "unknown mode `{s}` (expected `commutative` or `quantum`)"
            )),
        }
    }
}

/// `x^mx y^my` (normal-ordered in quantum mode).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub mx: i64,
    pub my: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { mx: 0, my: 0 };
    pub const X: Monomial = Monomial { mx: 1, my: 0 };
    pub const Y: Monomial = Monomial { mx: 0, my: 1 };

    pub fn new(mx: i64, my: i64) -> Self {
        Self { mx, my }
    }

    /// Product exponents and the power of `q` picked up by normal ordering.
    pub fn mul_twisted(self, o: Monomial) -> (Monomial, i64) {
        (
            Monomial::new(self.mx + o.mx, self.my + o.my),
            -self.my * o.mx,
        )
    }

    /// `⟨self, o⟩ = mx·o.my − my·o.mx`; in the quantum torus
    /// `self·o = q^{⟨self,o⟩} o·self`.
    pub fn pairing(self, o: Monomial) -> i64 {
        self.mx * o.my - self.my * o.mx
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (v, e) in [("x", self.mx), ("y", self.my)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("mode mismatch: {0} vs {1}")]
    ModeMismatch(Mode, Mode),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("constant term is not a unit monomial")]
    NonUnit,
    #[error("log needs a series of the form 1 + O(t)")]
    LogDomain,
    #[error("exp needs a series with zero constant term")]
    ExpDomain,
    #[error("series contains a monomial {0} that is not a power of the direction ({1}, {2})")]
    NotDirectional(Monomial, i64, i64),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

type Layer = BTreeMap<Monomial, RationalFunction>;

/// Series `Σ_{d ≤ N} t^d · (finite sum of coefficient · monomial)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    mode: Mode,
    order: u32,
    layers: Vec<Layer>,
}

impl TruncatedSeries {
    pub fn zero(mode: Mode, order: u32) -> Self {
        Self {
            mode,
            order,
            layers: vec![Layer::new(); order as usize + 1],
        }
    }

    pub fn one(mode: Mode, order: u32) -> Self {
        Self::monomial(mode, order, 0, Monomial::ONE, RationalFunction::one())
    }

    /// `coeff · t^tdeg · mono`; vanishes when `tdeg > order`.
    pub fn monomial(
        mode: Mode,
        order: u32,
        tdeg: u32,
        mono: Monomial,
        coeff: RationalFunction,
    ) -> Self {
        let mut s = Self::zero(mode, order);
        s.add_term(tdeg, mono, coeff);
        s
    }

    /// The generator `x` (or `x̂`).
    pub fn x(mode: Mode, order: u32) -> Self {
        Self::monomial(mode, order, 0, Monomial::X, RationalFunction::one())
    }

    /// The generator `y` (or `ŷ`).
    pub fn y(mode: Mode, order: u32) -> Self {
        Self::monomial(mode, order, 0, Monomial::Y, RationalFunction::one())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn add_term(&mut self, tdeg: u32, mono: Monomial, coeff: RationalFunction) {
        if tdeg > self.order || coeff.is_zero() {
            return;
        }
        let layer = &mut self.layers[tdeg as usize];
        match layer.get_mut(&mono) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    layer.remove(&mono);
                }
            }
            None => {
                layer.insert(mono, coeff);
            }
        }
    }

    pub fn coeff(&self, tdeg: u32, mono: Monomial) -> RationalFunction {
        self.layers
            .get(tdeg as usize)
            .and_then(|l| l.get(&mono))
            .cloned()
            .unwrap_or_default()
    }

    /// The homogeneous `t^tdeg` part.
    pub fn layer(&self, tdeg: u32) -> &BTreeMap<Monomial, RationalFunction> {
        &self.layers[tdeg as usize]
    }

    /// Iterates `(tdeg, monomial, coefficient)` in ascending `t`-degree then
    /// lexicographic monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, Monomial, &RationalFunction)> + '_ {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(d, l)| l.iter().map(move |(m, c)| (d as u32, *m, c)))
    }

    pub fn num_terms(&self) -> usize {
        self.layers.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(BTreeMap::is_empty)
    }

    /// Lowest `t`-degree carrying a nonzero term.
    pub fn valuation(&self) -> Option<u32> {
        self.layers
            .iter()
            .position(|l| !l.is_empty())
            .map(|d| d as u32)
    }

    pub fn check_compatible(&self, o: &Self) -> Result<(), TorusError> {
        if self.mode != o.mode {
            return Err(TorusError::ModeMismatch(self.mode, o.mode));
        }
        if self.order != o.order {
            return Err(TorusError::OrderMismatch(self.order, o.order));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, TorusError> {
        self.check_compatible(o)?;
        let mut r = self.clone();
        for (d, m, c) in o.terms() {
            r.add_term(d, m, c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, TorusError> {
        self.checked_add(&-o)
    }

    /// Product truncated at the common order, with the quantum twist in
    /// quantum mode.
    pub fn checked_mul(&self, o: &Self) -> Result<Self, TorusError> {
        self.check_compatible(o)?;
        let n = self.order as usize;
        let mut r = Self::zero(self.mode, self.order);
        for (i, li) in self.layers.iter().enumerate() {
            if li.is_empty() {
                continue;
            }
            for (j, lj) in o.layers.iter().enumerate().take(n + 1 - i) {
                for (m1, c1) in li {
                    for (m2, c2) in lj {
                        let (m, twist) = m1.mul_twisted(*m2);
                        let mut c = c1 * c2;
                        if self.mode == Mode::Quantum && twist != 0 {
                            c = c.mul_s_pow(2 * twist);
                        }
                        r.add_term((i + j) as u32, m, c);
                    }
                }
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut r = Self::zero(self.mode, self.order);
        if c.is_zero() {
            return r;
        }
        for (d, l) in self.layers.iter().enumerate() {
            r.layers[d] = l.iter().map(|(m, v)| (*m, v * c)).collect();
        }
        r
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&RationalFunction::constant(c.clone()))
    }

    /// Multiplication by `t^k`, discarding what falls past the order.
    pub fn shift_t(&self, k: u32) -> Self {
        let mut r = Self::zero(self.mode, self.order);
        for (d, l) in self.layers.iter().enumerate() {
            let nd = d + k as usize;
            if nd <= self.order as usize {
                r.layers[nd] = l.clone();
            }
        }
        r
    }

    /// Keeps only `t`-degrees `< k`.
    pub fn truncate_below(&self, k: u32) -> Self {
        let mut r = self.clone();
        for d in (k as usize)..r.layers.len() {
            r.layers[d].clear();
        }
        r
    }

    pub fn map_coeffs<F>(&self, mode: Mode, f: F) -> Result<Self, TorusError>
    where
        F: Fn(&RationalFunction) -> Result<RationalFunction, TorusError>,
    {
        let mut r = Self::zero(mode, self.order);
        for (d, m, c) in self.terms() {
            r.add_term(d, m, f(c)?);
        }
        Ok(r)
    }

    /// Same series over the commutative ring.
    pub fn to_commutative(&self) -> Self {
        Self {
            mode: Mode::Commutative,
            ..self.clone()
        }
    }

    /// Same term data reinterpreted over the quantum torus.
    pub fn to_quantum(&self) -> Self {
        Self {
            mode: Mode::Quantum,
            ..self.clone()
        }
    }

    /// Evaluates every coefficient at `s = 1` and returns the commutative
    /// series with those constant coefficients.
    pub fn at_s_one(&self) -> Result<Self, TorusError> {
        let one = Rational::one();
        self.map_coeffs(Mode::Commutative, |c| {
            c.eval_rational(&one)?
                .map(RationalFunction::constant)
                .ok_or(TorusError::Exact(ExactError::DivisionByZero))
        })
    }

    /// Multiplicative inverse of a unit `c·m + O(t)`.
    pub fn inverse(&self) -> Result<Self, TorusError> {
        let lead = &self.layers[0];
        if lead.len() != 1 {
            return Err(TorusError::NonUnit);
        }
        let (&m0, c0) = lead.iter().next().unwrap();
        // f0⁻¹: the monomial m0⁻¹ picks up a q-power so that f0·f0⁻¹ = 1.
        let inv_m = Monomial::new(-m0.mx, -m0.my);
        let (_, twist) = m0.mul_twisted(inv_m);
        let mut inv_c = c0.recip()?;
        if self.mode == Mode::Quantum && twist != 0 {
            inv_c = inv_c.mul_s_pow(-2 * twist);
        }
        let f0_inv = Self::monomial(self.mode, self.order, 0, inv_m, inv_c);
        // f = f0·(1 + u), u = f0⁻¹·(f − f0);  f⁻¹ = (Σ (−u)^k)·f0⁻¹
        let mut rest = self.clone();
        rest.layers[0].clear();
        let neg_u = -&(&f0_inv * &rest);
        let mut acc = Self::one(self.mode, self.order);
        let mut pow = Self::one(self.mode, self.order);
        for _ in 0..self.order {
            pow = &pow * &neg_u;
            if pow.is_zero() {
                break;
            }
            acc = &acc + &pow;
        }
        Ok(&acc * &f0_inv)
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, e: i64) -> Result<Self, TorusError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.mode, self.order);
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `log(1 + u) = Σ_{k≥1} (−1)^{k+1} u^k / k`.
    pub fn log(&self) -> Result<Self, TorusError> {
        let lead = &self.layers[0];
        if lead.len() != 1
            || !lead
                .get(&Monomial::ONE)
                .is_some_and(RationalFunction::is_one)
        {
            return Err(TorusError::LogDomain);
        }
        let mut u = self.clone();
        u.layers[0].clear();
        let mut acc = Self::zero(self.mode, self.order);
        let mut pow = Self::one(self.mode, self.order);
        for k in 1..=self.order as i64 {
            pow = &pow * &u;
            if pow.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = &acc + &pow.scale_rational(&Rational::new(sign.into(), k.into()));
        }
        Ok(acc)
    }

    /// `exp(h) = Σ_{k≥0} h^k / k!` for `h = O(t)`.
    pub fn exp(&self) -> Result<Self, TorusError> {
        if !self.layers[0].is_empty() {
            return Err(TorusError::ExpDomain);
        }
        let mut acc = Self::one(self.mode, self.order);
        let mut pow = Self::one(self.mode, self.order);
        for k in 1..=self.order as i64 {
            pow = (&pow * self).scale_rational(&Rational::new(1.into(), k.into()));
            if pow.is_zero() {
                break;
            }
            acc = &acc + &pow;
        }
        Ok(acc)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    /// # Panics
    /// On mode or order mismatch; use [`TruncatedSeries::checked_add`] otherwise.
    fn add(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.checked_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.checked_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            mode: self.mode,
            order: self.order,
            layers: self
                .layers
                .iter()
                .map(|l| l.iter().map(|(m, c)| (*m, -c)).collect())
                .collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    /// `t`-degree ascending, monomials lexicographic, terms joined by ` + `;
    /// non-constant coefficients are parenthesized, e.g.
    /// `x + (s+s^-1)*t*x^2*y + -1/2*t^2*x^3*y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, m, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            match d {
                0 => {}
                1 => factors.push("t".to_string()),
                _ => factors.push(format!("t^{d}")),
            }
            if m != Monomial::ONE {
                factors.push(m.to_string());
            }
            let coeff = match c.as_constant() {
                Some(k) if k.is_one() && !factors.is_empty() => None,
                Some(k) => Some(k.to_string()),
                None => Some(format!("({c})")),
            };
            if let Some(cs) = coeff {
                factors.insert(0, cs);
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Series in the single variable `z = x^a y^b`: every monomial is the
/// normal-ordered `x^{ka} y^{kb}` for some `k ≥ 0`.
///
/// Powers of one direction commute with each other, so such series form a
/// commutative subalgebra even in quantum mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionalSeries {
    a: i64,
    b: i64,
    series: TruncatedSeries,
}

impl DirectionalSeries {
    pub fn new(a: i64, b: i64, series: TruncatedSeries) -> Result<Self, TorusError> {
        for (_, m, _) in series.terms() {
            if Self::power_of(a, b, m).is_none() {
                return Err(TorusError::NotDirectional(m, a, b));
            }
        }
        Ok(Self { a, b, series })
    }

    fn power_of(a: i64, b: i64, m: Monomial) -> Option<i64> {
        if m == Monomial::ONE {
            return Some(0);
        }
        let k = if a != 0 {
            m.mx / a
        } else if b != 0 {
            m.my / b
        } else {
            return None;
        };
        (k > 0 && m.mx == k * a && m.my == k * b).then_some(k)
    }

    pub fn direction(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn into_series(self) -> TruncatedSeries {
        self.series
    }

    /// Substitutes `z ↦ q^d z`: the coefficient of `z^k` is multiplied by
    /// `s^{2dk}`.
    pub fn commute_past(&self, d: i64) -> Self {
        let mut r = TruncatedSeries::zero(self.series.mode, self.series.order);
        for (t, m, c) in self.series.terms() {
            let k = Self::power_of(self.a, self.b, m).expect("validated at construction");
            r.add_term(t, m, c.mul_s_pow(2 * d * k));
        }
        Self {
            a: self.a,
            b: self.b,
            series: r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, LaurentPoly};
    use proptest::prelude::*;

    fn mono(mode: Mode, n: u32, d: u32, mx: i64, my: i64, c: RationalFunction) -> TruncatedSeries {
        TruncatedSeries::monomial(mode, n, d, Monomial::new(mx, my), c)
    }

    fn one_c() -> RationalFunction {
        RationalFunction::one()
    }

    #[test]
    fn commutative_product() {
        let xy = mono(Mode::Commutative, 3, 0, 1, 1, one_c());
        assert_eq!(&xy * &xy, mono(Mode::Commutative, 3, 0, 2, 2, one_c()));
    }

    #[test]
    fn quantum_product_picks_up_q_inverse() {
        let xy = mono(Mode::Quantum, 3, 0, 1, 1, one_c());
        assert_eq!(
            &xy * &xy,
            mono(Mode::Quantum, 3, 0, 2, 2, RationalFunction::q_pow(-1))
        );
    }

    #[test]
    fn quantum_defining_relation() {
        let x = TruncatedSeries::x(Mode::Quantum, 2);
        let y = TruncatedSeries::y(Mode::Quantum, 2);
        let lhs = &x * &y;
        let rhs = (&y * &x).scale(&RationalFunction::q_pow(1));
        assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn pairing_governs_commutation() {
        // M·P = q^{⟨M,P⟩} P·M
        for (a, b) in [((1, 0), (0, 1)), ((2, -1), (1, 3)), ((0, 2), (-3, 1))] {
            let m = Monomial::new(a.0, a.1);
            let p = Monomial::new(b.0, b.1);
            let ms = mono(Mode::Quantum, 0, 0, m.mx, m.my, one_c());
            let ps = mono(Mode::Quantum, 0, 0, p.mx, p.my, one_c());
            let lhs = &ms * &ps;
            let rhs = (&ps * &ms).scale(&RationalFunction::q_pow(m.pairing(p)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mismatches_are_errors() {
        let a = TruncatedSeries::one(Mode::Quantum, 3);
        let b = TruncatedSeries::one(Mode::Commutative, 3);
        let c = TruncatedSeries::one(Mode::Quantum, 4);
        assert_eq!(
            a.checked_mul(&b),
            Err(TorusError::ModeMismatch(Mode::Quantum, Mode::Commutative))
        );
        assert_eq!(a.checked_add(&c), Err(TorusError::OrderMismatch(3, 4)));
    }

    #[test]
    fn geometric_inverse() {
        let n = 5;
        let f = &TruncatedSeries::one(Mode::Commutative, n)
            + &mono(Mode::Commutative, n, 1, 1, 0, one_c());
        let g = f.inverse().unwrap();
        for d in 0..=n {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                g.coeff(d, Monomial::new(d as i64, 0)),
                RationalFunction::from(sign)
            );
        }
        assert_eq!(g.num_terms(), n as usize + 1);
        assert_eq!(&f * &g, TruncatedSeries::one(Mode::Commutative, n));
        assert_eq!(
            TruncatedSeries::one(Mode::Quantum, 2).inverse().unwrap(),
            TruncatedSeries::one(Mode::Quantum, 2)
        );
    }

    #[test]
    fn quantum_inverse_round_trip() {
        let n = 6;
        let s: RationalFunction = LaurentPoly::s().into();
        let f = &TruncatedSeries::one(Mode::Quantum, n) + &mono(Mode::Quantum, n, 1, 1, 0, s);
        let g = f.inverse().unwrap();
        assert_eq!(&f * &g, TruncatedSeries::one(Mode::Quantum, n));
        assert_eq!(&g * &f, TruncatedSeries::one(Mode::Quantum, n));
        // unit with a non-trivial leading monomial
        let h = &mono(Mode::Quantum, n, 0, 1, 1, int(3).into())
            + &mono(Mode::Quantum, n, 1, 2, -1, RationalFunction::s_pow(3));
        let hi = h.inverse().unwrap();
        assert_eq!(&h * &hi, TruncatedSeries::one(Mode::Quantum, n));
        assert_eq!(&hi * &h, TruncatedSeries::one(Mode::Quantum, n));
    }

    #[test]
    fn non_unit_rejected() {
        let f =
            &TruncatedSeries::x(Mode::Commutative, 2) + &TruncatedSeries::y(Mode::Commutative, 2);
        assert_eq!(f.inverse(), Err(TorusError::NonUnit));
        assert_eq!(
            TruncatedSeries::zero(Mode::Commutative, 2).inverse(),
            Err(TorusError::NonUnit)
        );
    }

    #[test]
    fn log_of_one_plus_t2xy() {
        let n = 8;
        let f = &TruncatedSeries::one(Mode::Commutative, n)
            + &mono(Mode::Commutative, n, 2, 1, 1, one_c());
        let l = f.log().unwrap();
        for k in 1..=4i64 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(
                l.coeff(2 * k as u32, Monomial::new(k, k)),
                RationalFunction::constant(rat(sign, k))
            );
        }
        assert_eq!(l.num_terms(), 4);
        assert_eq!(l.exp().unwrap(), f);
    }

    #[test]
    fn exp_log_edge_cases() {
        assert_eq!(
            TruncatedSeries::zero(Mode::Quantum, 4).exp().unwrap(),
            TruncatedSeries::one(Mode::Quantum, 4)
        );
        let tx = mono(Mode::Quantum, 5, 1, 1, 0, one_c());
        assert_eq!(tx.exp().unwrap().log().unwrap(), tx);
        assert_eq!(
            TruncatedSeries::one(Mode::Quantum, 2).exp(),
            Err(TorusError::ExpDomain)
        );
        assert_eq!(
            TruncatedSeries::x(Mode::Quantum, 2).log(),
            Err(TorusError::LogDomain)
        );
    }

    #[test]
    fn commute_past_examples() {
        let n = 3;
        let g = &TruncatedSeries::one(Mode::Quantum, n) + &mono(Mode::Quantum, n, 1, 1, 0, one_c());
        let z = DirectionalSeries::new(1, 0, g.clone()).unwrap();
        let expected = &TruncatedSeries::one(Mode::Quantum, n)
            + &mono(Mode::Quantum, n, 1, 1, 0, RationalFunction::q_pow(1));
        assert_eq!(z.commute_past(1).series(), &expected);
        assert_eq!(z.commute_past(0), z);
        assert_eq!(z.commute_past(1).commute_past(-1), z);
        assert!(DirectionalSeries::new(1, 1, g).is_err());
    }

    #[test]
    fn commute_past_matches_conjugation() {
        // h(z)·M = M·h(q^{⟨(a,b),M⟩} z) with z = x^a y^b
        let n = 4;
        let (a, b) = (2, 1);
        let mut h = TruncatedSeries::one(Mode::Quantum, n);
        h.add_term(3, Monomial::new(2, 1), int(5).into());
        h.add_term(3, Monomial::new(4, 2), RationalFunction::s_pow(1));
        let hz = DirectionalSeries::new(a, b, h.clone()).unwrap();
        for m in [Monomial::X, Monomial::Y, Monomial::new(-1, 3)] {
            let ms = TruncatedSeries::monomial(Mode::Quantum, n, 0, m, one_c());
            let d = Monomial::new(a, b).pairing(m);
            assert_eq!(&h * &ms, &ms * hz.commute_past(d).series());
        }
    }

    #[test]
    fn rendering() {
        let n = 3;
        let mut f = TruncatedSeries::x(Mode::Commutative, n);
        f.add_term(
            1,
            Monomial::new(2, 1),
            LaurentPoly::from_terms([(1, int(1)), (-1, int(1))]).into(),
        );
        f.add_term(2, Monomial::new(3, 2), rat(-1, 2).into());
        assert_eq!(f.to_string(), "x + (s+s^-1)*t*x^2*y + -1/2*t^2*x^3*y^2");
        assert_eq!(TruncatedSeries::zero(Mode::Quantum, 1).to_string(), "0");
        assert_eq!(TruncatedSeries::one(Mode::Quantum, 1).to_string(), "1");
    }

    fn arb_series(mode: Mode, n: u32) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((0..=n, -2i64..=2, -2i64..=2, -3i64..=3, -2i64..=2), 0..5).prop_map(
            move |v| {
                let mut s = TruncatedSeries::zero(mode, n);
                for (d, mx, my, c, e) in v {
                    s.add_term(
                        d,
                        Monomial::new(mx, my),
                        RationalFunction::s_pow(e).scale(&int(c)),
                    );
                }
                s
            },
        )
    }

    fn arb_unit(mode: Mode, n: u32) -> impl Strategy<Value = TruncatedSeries> {
        (arb_series(mode, n), -2i64..=2, -2i64..=2, 1i64..=3).prop_map(move |(s, mx, my, c)| {
            let mut u = s.shift_t(1);
            u.add_term(0, Monomial::new(mx, my), int(c).into());
            u
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn quantum_ring_axioms(a in arb_series(Mode::Quantum, 3), b in arb_series(Mode::Quantum, 3), c in arb_series(Mode::Quantum, 3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn commutative_ring_axioms(a in arb_series(Mode::Commutative, 3), b in arb_series(Mode::Commutative, 3), c in arb_series(Mode::Commutative, 3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn quantum_at_s_one_is_commutative(a in arb_series(Mode::Quantum, 3), b in arb_series(Mode::Quantum, 3)) {
            let q = (&a * &b).at_s_one().unwrap();
            let c = &a.at_s_one().unwrap() * &b.at_s_one().unwrap();
            prop_assert_eq!(q, c);
        }

        #[test]
        fn inverse_round_trip(u in arb_unit(Mode::Quantum, 3), v in arb_unit(Mode::Commutative, 3)) {
            let one_q = TruncatedSeries::one(Mode::Quantum, 3);
            let ui = u.inverse().unwrap();
            prop_assert_eq!(&u * &ui, one_q.clone());
            prop_assert_eq!(&ui * &u, one_q);
            let vi = v.inverse().unwrap();
            prop_assert_eq!(&v * &vi, TruncatedSeries::one(Mode::Commutative, 3));
        }

        #[test]
        fn exp_log_round_trip(h in arb_series(Mode::Commutative, 4), qh in arb_series(Mode::Quantum, 4)) {
            let h = h.shift_t(1);
            prop_assert_eq!(h.exp().unwrap().log().unwrap(), h.clone());
            let u = &TruncatedSeries::one(Mode::Commutative, 4) + &h;
            prop_assert_eq!(u.log().unwrap().exp().unwrap(), u);
            let qh = qh.shift_t(1);
            prop_assert_eq!(qh.exp().unwrap().log().unwrap(), qh);
        }
    }
}
