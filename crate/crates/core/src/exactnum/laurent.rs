use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{GaussianRational, Rational};

/// Laurent polynomial in `s` with rational coefficients.
///
/// Stored sparsely as exponent → nonzero coefficient, so two equal
/// polynomials always have identical representations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · s^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The variable `s` itself.
    pub fn s() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `s^e` with unit coefficient.
    pub fn s_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Returns the constant if the polynomial has no `s`-dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Multiplication by `s^e`.
    pub fn shift(&self, e: i64) -> Self {
        if e == 0 {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    /// Substitutes `s ↦ s⁻¹`.
    pub fn invert_s(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a nonzero Gaussian rational. Returns `None` when
    /// `s0 = 0` and a negative exponent is present.
    pub fn eval(&self, s0: &GaussianRational) -> Option<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (e, c) in self.terms() {
            let p = s0.pow(e)?;
            acc = &acc + &p.scale(c);
        }
        Some(acc)
    }

    /// Dense coefficient vector of `self · s^{-min_exp}`, ascending, together
    /// with the shift. Zero maps to `(0, [])`.
    pub(crate) fn to_dense(&self) -> (i64, Vec<Rational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms() {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_dense(shift: i64, coeffs: &[Rational]) -> Self {
        Self {
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c.clone()))
                .collect(),
        }
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in o.terms() {
            r.add_term(e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in o.terms() {
            r.add_term(e, -c.clone());
        }
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents without spaces, e.g. `s^2+1+s^-2`, `1/2*s-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("s")?,
                (_, true) => write!(f, "s^{e}")?,
                (1, false) => write!(f, "{a}*s")?,
                (_, false) => write!(f, "{a}*s^{e}")?,
            }
        }
        Ok(())
    }
}

/// The quantum integer `[m]_q = (s^m - s^-m)/(s - s^-1)`, expanded as
/// `s^{m-1} + s^{m-3} + … + s^{1-m}`; zero for `m = 0`.
pub fn quantum_integer(m: u32) -> LaurentPoly {
    let m = m as i64;
    LaurentPoly::from_terms((0..m).map(|j| (m - 1 - 2 * j, Rational::one())))
}

// Dense polynomial helpers over ℚ, ascending coefficient order. Inputs are
// trimmed (no trailing zeros); the empty vector is zero.

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Polynomial division `a = q·b + r`, `deg r < deg b`.
pub(crate) fn dense_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = &r[dr] * &lead_inv;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Monic greatest common divisor.
pub(crate) fn dense_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = dense_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &lead;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn quantum_integer_small_values() {
        assert!(quantum_integer(0).is_zero());
        assert_eq!(quantum_integer(1), LaurentPoly::one());
        let two = &LaurentPoly::s() + &LaurentPoly::s_pow(-1);
        assert_eq!(quantum_integer(2), two);
        assert_eq!(quantum_integer(3).to_string(), "s^2+1+s^-2");
    }

    #[test]
    fn quantum_integer_matches_defining_quotient() {
        // [m]·(s - s^-1) = s^m - s^-m, checked by multiplication
        let d = &LaurentPoly::s() - &LaurentPoly::s_pow(-1);
        for m in 0..10u32 {
            let lhs = &quantum_integer(m) * &d;
            let rhs = &LaurentPoly::s_pow(m as i64) - &LaurentPoly::s_pow(-(m as i64));
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn quantum_integer_at_one_is_m() {
        let one = GaussianRational::one();
        for m in 1..=8u32 {
            assert_eq!(
                quantum_integer(m).eval(&one).unwrap(),
                GaussianRational::real(int(m as i64))
            );
        }
    }

    #[test]
    fn quantum_integer_at_i() {
        let i = GaussianRational::i();
        assert_eq!(
            quantum_integer(3).eval(&i).unwrap(),
            -GaussianRational::one()
        );
        for m in 1..=12u32 {
            let v = quantum_integer(m).eval(&i).unwrap();
            if m % 2 == 0 {
                assert!(v.is_zero());
            } else {
                assert_eq!(v, GaussianRational::i_pow(m as i64 - 1));
            }
        }
    }

    #[test]
    fn display_forms() {
        let p = LaurentPoly::from_terms([(1, rat(1, 2)), (0, int(-3)), (-2, int(2))]);
        assert_eq!(p.to_string(), "1/2*s-3+2*s^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!((-LaurentPoly::s()).to_string(), "-s");
    }

    #[test]
    fn gcd_and_division() {
        // (1+x)(2+x) and (1+x)(3-x)
        let a = vec![int(2), int(3), int(1)];
        let b = vec![int(3), int(2), int(-1)];
        assert_eq!(dense_gcd(&a, &b), vec![int(1), int(1)]);
        let (q, r) = dense_divrem(&a, &[int(1), int(1)]);
        assert_eq!(q, vec![int(2), int(1)]);
        assert!(r.is_empty());
    }
}
