//! Parsers for the text forms produced by `Display` on [`LaurentPoly`] and
//! [`RationalFunction`].

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExactError, LaurentPoly, Rational, RationalFunction};

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, reason: impl Into<String>) -> ExactError {
        ExactError::Parse {
            input: self.src.to_string(),
            reason: format!("{} at byte {}", reason.into(), self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ExactError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn signed_int(&mut self) -> Result<i64, ExactError> {
        let neg = self.eat(b'-');
        let v = self.digits()?;
        let v: i64 = i64::try_from(&v).map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// `digits [ '/' digits ]`
    fn rational(&mut self) -> Result<Rational, ExactError> {
        let n = self.digits()?;
        if self.peek() == Some(b'/') && self.bytes.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }

    /// `'s' [ '^' int ]`
    fn s_power(&mut self) -> Result<i64, ExactError> {
        if !self.eat(b's') {
            return Err(self.err("expected `s`"));
        }
        if self.eat(b'^') {
            self.signed_int()
        } else {
            Ok(1)
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, ExactError> {
        let mut p = LaurentPoly::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let (c, e) = match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let c = self.rational()?;
                    if self.eat(b'*') {
                        (c, self.s_power()?)
                    } else {
                        (c, 0)
                    }
                }
                Some(b's') => (Rational::one(), self.s_power()?),
                _ => return Err(self.err("expected a term")),
            };
            p.add_term(e, if neg { -c } else { c });
            first = false;
        }
        Ok(p)
    }

    fn finish(&mut self) -> Result<(), ExactError> {
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("trailing input"));
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        let p = c.poly()?;
        c.finish()?;
        Ok(p)
    }
}

impl FromStr for RationalFunction {
    type Err = ExactError;

    /// Accepts `poly` or `(poly)/(poly)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        if c.eat(b'(') {
            let num = c.poly()?;
            if !c.eat(b')') {
                return Err(c.err("expected `)`"));
            }
            let den = if c.eat(b'/') {
                if !c.eat(b'(') {
                    return Err(c.err("expected `(`"));
                }
                let d = c.poly()?;
                if !c.eat(b')') {
                    return Err(c.err("expected `)`"));
                }
                d
            } else {
                LaurentPoly::one()
            };
            c.finish()?;
            return RationalFunction::new(num, den);
        }
        let p = c.poly()?;
        c.finish()?;
        Ok(p.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, quantum_integer, rat};
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let p: LaurentPoly = "s^2+1+s^-2".parse().unwrap();
        assert_eq!(p, quantum_integer(3));
        let f: RationalFunction = "(s+s^-1)/(s^2+s^-2)".parse().unwrap();
        let g = RationalFunction::new(
            quantum_integer(2),
            &LaurentPoly::s_pow(2) + &LaurentPoly::s_pow(-2),
        )
        .unwrap();
        assert_eq!(f, g);
        let h: LaurentPoly = "-1/2*s^3 + 7 - s".parse().unwrap();
        assert_eq!(
            h,
            LaurentPoly::from_terms([(3, rat(-1, 2)), (0, int(7)), (1, int(-1))])
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!("s^".parse::<LaurentPoly>().is_err());
        assert!("2*".parse::<LaurentPoly>().is_err());
        assert!("(s)/(0)".parse::<RationalFunction>().is_err());
        assert!("1/0".parse::<LaurentPoly>().is_err());
        assert!("s s".parse::<LaurentPoly>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..=4, -6i64..=6, 1i64..=4), 0..5)
            .prop_map(|v| LaurentPoly::from_terms(v.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
    }

    proptest! {
        #[test]
        fn rendering_round_trips(n in arb_poly(), d in arb_poly()) {
            prop_assume!(!d.is_zero());
            let f = RationalFunction::new(n.clone(), d).unwrap();
            let back: RationalFunction = f.to_string().parse().unwrap();
            prop_assert_eq!(back, f);
            let pn: LaurentPoly = n.to_string().parse().unwrap();
            prop_assert_eq!(pn, n);
        }

        #[test]
        fn canonical_form_is_a_congruence(a in arb_poly(), b in arb_poly(), c in arb_poly(), d in arb_poly()) {
            prop_assume!(!b.is_zero() && !d.is_zero());
            let f = RationalFunction::new(a.clone(), b.clone()).unwrap();
            let g = RationalFunction::new(c.clone(), d.clone()).unwrap();
            // unreduced cross-multiplied forms agree with the canonical arithmetic
            let sum = RationalFunction::new(&(&a * &d) + &(&c * &b), &b * &d).unwrap();
            prop_assert_eq!(&f + &g, sum);
            let prod = RationalFunction::new(&a * &c, &b * &d).unwrap();
            prop_assert_eq!(&f * &g, prod);
            if !g.is_zero() {
                prop_assert_eq!((&f * &g).checked_div(&g).unwrap(), f.clone());
            }
            prop_assert_eq!(f.invert_s().invert_s(), f);
        }
    }

    #[test]
    fn quantum_integers_are_s_symmetric() {
        for m in 0..10 {
            let f: RationalFunction = quantum_integer(m).into();
            assert_eq!(f.invert_s(), f);
            assert_eq!(quantum_integer(m).num_terms(), m as usize);
        }
    }
}
