use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::{dense_divrem, dense_gcd};
use super::{ExactError, GaussianRational, LaurentPoly, Rational};

/// Quotient of Laurent polynomials in `s`, kept in a canonical form:
///
/// * numerator and denominator are coprime,
/// * the denominator has lowest exponent `0` and lowest coefficient `1`,
/// * zero is `0 / 1`.
///
/// With these rules equality of values is equality of fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Result of evaluating a rational function at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Value(GaussianRational),
    /// The reduced denominator vanishes at the point.
    Pole,
}

impl Evaluation {
    pub fn value(&self) -> Option<&GaussianRational> {
        match self {
            Evaluation::Value(v) => Some(v),
            Evaluation::Pole => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, Evaluation::Pole)
    }
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            num: LaurentPoly::constant(c),
            den: LaurentPoly::one(),
        }
    }

    /// `s^e`.
    pub fn s_pow(e: i64) -> Self {
        Self {
            num: LaurentPoly::s_pow(e),
            den: LaurentPoly::one(),
        }
    }

    /// `q^e = s^{2e}`.
    pub fn q_pow(e: i64) -> Self {
        Self::s_pow(2 * e)
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this equals, if the reduced denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// The constant this equals, if it has no `s`-dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        self.as_laurent().and_then(LaurentPoly::as_constant)
    }

    /// Multiplication by `s^e`; stays canonical without a gcd.
    pub fn mul_s_pow(&self, e: i64) -> Self {
        Self {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    /// Substitutes `s ↦ s⁻¹` and re-canonicalizes.
    pub fn invert_s(&self) -> Self {
        Self::canonical(self.num.invert_s(), self.den.invert_s())
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ExactError> {
        if o.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluates the reduced form at `s0 ≠ 0`.
    pub fn eval(&self, s0: &GaussianRational) -> Result<Evaluation, ExactError> {
        if s0.is_zero() {
            return Err(ExactError::ZeroEvaluationPoint);
        }
        let d = self.den.eval(s0).expect("s0 is nonzero");
        let Some(d_inv) = d.inv() else {
            return Ok(Evaluation::Pole);
        };
        let n = self.num.eval(s0).expect("s0 is nonzero");
        Ok(Evaluation::Value(&n * &d_inv))
    }

    /// Evaluation at a rational point; `None` on a pole.
    pub fn eval_rational(&self, s0: &Rational) -> Result<Option<Rational>, ExactError> {
        match self.eval(&GaussianRational::real(s0.clone()))? {
            Evaluation::Value(v) => Ok(Some(v.re)),
            Evaluation::Pole => Ok(None),
        }
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let (den_shift, den_dense) = den.to_dense();
        let (num_shift, num_dense) = num.to_dense();
        let num_shift = num_shift - den_shift;
        let (mut n, mut d) = if den_dense.len() == 1 {
            (num_dense, den_dense)
        } else {
            let g = dense_gcd(&num_dense, &den_dense);
            if g.len() > 1 {
                let (nq, nr) = dense_divrem(&num_dense, &g);
                let (dq, dr) = dense_divrem(&den_dense, &g);
                debug_assert!(nr.is_empty() && dr.is_empty());
                (nq, dq)
            } else {
                (num_dense, den_dense)
            }
        };
        let lead = d[0].clone();
        if !lead.is_one() {
            for c in n.iter_mut() {
                *c /= &lead;
            }
            for c in d.iter_mut() {
                *c /= &lead;
            }
        }
        Self {
            num: LaurentPoly::from_dense(num_shift, &n),
            den: LaurentPoly::from_dense(0, &d),
        }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction {
                num: &self.num + &o.num,
                den: LaurentPoly::one(),
            };
        }
        if self.den == o.den {
            return RationalFunction::canonical(&self.num + &o.num, self.den.clone());
        }
        RationalFunction::canonical(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction {
                num: &self.num * &o.num,
                den: LaurentPoly::one(),
            };
        }
        RationalFunction::canonical(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: RationalFunction) -> RationalFunction {
        &self + &o
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: RationalFunction) -> RationalFunction {
        &self - &o
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: RationalFunction) -> RationalFunction {
        &self * &o
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    /// `num` when the denominator is 1, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, quantum_integer, rat};

    fn qi(m: u32) -> RationalFunction {
        quantum_integer(m).into()
    }

    #[test]
    fn unreduced_quotient_cancels() {
        let f = RationalFunction::new(quantum_integer(2), quantum_integer(2)).unwrap();
        assert!(f.is_one());
        assert_eq!(
            f.eval(&GaussianRational::i()).unwrap(),
            Evaluation::Value(GaussianRational::one())
        );
    }

    #[test]
    fn pole_after_reduction() {
        // [4]/([2][2]) = (q + q^-1)/[2]
        let f = qi(4).checked_div(&(&qi(2) * &qi(2))).unwrap();
        let expected = RationalFunction::new(
            &LaurentPoly::s_pow(2) + &LaurentPoly::s_pow(-2),
            quantum_integer(2),
        )
        .unwrap();
        assert_eq!(f, expected);
        assert_eq!(f.eval(&GaussianRational::i()).unwrap(), Evaluation::Pole);
        assert_eq!(
            f.eval(&GaussianRational::one()).unwrap(),
            Evaluation::Value(GaussianRational::one())
        );
    }

    #[test]
    fn s_squared_at_i() {
        let f = RationalFunction::s_pow(2);
        assert_eq!(
            f.eval(&GaussianRational::i()).unwrap(),
            Evaluation::Value(-GaussianRational::one())
        );
    }

    #[test]
    fn zero_point_rejected() {
        assert_eq!(
            RationalFunction::one().eval(&GaussianRational::zero()),
            Err(ExactError::ZeroEvaluationPoint)
        );
    }

    #[test]
    fn invert_s_examples() {
        assert_eq!(qi(2).invert_s(), qi(2));
        let d: RationalFunction = (&LaurentPoly::s() - &LaurentPoly::s_pow(-1)).into();
        assert_eq!(d.invert_s(), -&d);
        assert_eq!(RationalFunction::one().invert_s(), RationalFunction::one());
    }

    #[test]
    fn canonical_denominator_normalization() {
        // (2s^3)/(4s^2 + 2s) = s^2/(1 + 2s)
        let f = RationalFunction::new(
            LaurentPoly::monomial(int(2), 3),
            LaurentPoly::from_terms([(2, int(4)), (1, int(2))]),
        )
        .unwrap();
        assert_eq!(
            f.denom(),
            &LaurentPoly::from_terms([(0, int(1)), (1, int(2))])
        );
        assert_eq!(f.numer(), &LaurentPoly::s_pow(2));
        assert_eq!(
            RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(ExactError::ZeroDenominator)
        );
    }

    #[test]
    fn arithmetic_identities() {
        let a = qi(3).checked_div(&qi(2)).unwrap();
        let b = RationalFunction::constant(rat(1, 3))
            .checked_div(&qi(5))
            .unwrap();
        let sum = &a + &b;
        assert_eq!(&sum - &b, a);
        assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
        assert!((&a - &a).is_zero());
    }
}
