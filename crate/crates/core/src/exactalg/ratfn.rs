//! Rational functions in `T, a1, a2, ...` with canonical representatives.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::gcd;
use super::parse::parse_poly;
use super::poly::{MultiPoly, Var};
use super::rational::Q;
use super::ExactError;

/// `num / den` with `gcd(num, den) = 1` and `den` monic in graded lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl Default for RatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        RatFn { num: MultiPoly::one(), den: MultiPoly::one() }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFn { num: p, den: MultiPoly::one() }
    }

    pub fn from_q(c: Q) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_poly(MultiPoly::from_i64(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    /// Normalised quotient; errors on a zero denominator.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return RatFn { num: num.scale(&c.recip()), den: MultiPoly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff().recip();
        RatFn { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_poly() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        if self.is_poly() {
            return Self::from_poly(&self.num * p);
        }
        Self::normalize(&self.num * p, self.den.clone())
    }

    /// Substitute `v := value`; `None` if the denominator vanishes there.
    pub fn eval_var(&self, v: Var, value: &Q) -> Option<Self> {
        let d = self.den.eval_var(v, value);
        if d.is_zero() {
            return None;
        }
        Some(Self::normalize(self.num.eval_var(v, value), d))
    }

    /// Substitute `v := replacement` for a polynomial replacement.
    pub fn substitute(&self, v: Var, replacement: &MultiPoly) -> Option<Self> {
        let d = self.den.substitute(v, replacement);
        if d.is_zero() {
            return None;
        }
        Some(Self::normalize(self.num.substitute(v, replacement), d))
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn parse(s: &str) -> Result<Self, ExactError> {
        match split_fraction(s) {
            Some((n, d)) => Self::new(parse_poly(n)?, parse_poly(d)?),
            None => Ok(Self::from_poly(parse_poly(s)?)),
        }
    }
}

/// Split `(num)/(den)` at a top-level slash that is followed by `(`.
fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 => {
                let rest = s[i + 1..].trim_start();
                if rest.starts_with('(') {
                    return Some((&s[..i], rest));
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Serialize for RatFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RatFn::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl From<MultiPoly> for RatFn {
    fn from(p: MultiPoly) -> Self {
        RatFn::from_poly(p)
    }
}

impl From<i64> for RatFn {
    fn from(c: i64) -> Self {
        RatFn::from_i64(c)
    }
}

impl From<Q> for RatFn {
    fn from(c: Q) -> Self {
        RatFn::from_q(c)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFn::from_poly(&self.num + &rhs.num);
            }
            return RatFn::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFn::normalize(num, &self.den * &b)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.is_poly() && rhs.is_poly() {
            return RatFn::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coeff().recip();
        RatFn { num: num.scale(&lc), den: den.scale(&lc) }
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -self.num, den: self.den }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&RatFn> for RatFn {
    fn add_assign(&mut self, rhs: &RatFn) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFn> for RatFn {
    fn sub_assign(&mut self, rhs: &RatFn) {
        *self = &*self - rhs;
    }
}

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
}

impl One for RatFn {
    fn one() -> Self {
        RatFn::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::T;
    use crate::exactalg::rational::qi;

    fn r(s: &str) -> RatFn {
        RatFn::parse(s).unwrap()
    }

    #[test]
    fn normalizes() {
        let x = r("(2*T^2 - 2)/(4*T - 4)");
        assert_eq!(x.to_string(), "1/2*T + 1/2");
        let y = r("(T)/(2*T^2 + 2)");
        assert_eq!(y.to_string(), "(1/2*T)/(T^2 + 1)");
        assert!(RatFn::parse("(1)/(0)").is_err());
    }

    #[test]
    fn arithmetic() {
        let a = r("(1)/(T)");
        let b = r("(1)/(T - 1)");
        assert_eq!((&a - &b).to_string(), "(-1)/(T^2 - T)");
        assert_eq!((&a * &RatFn::var(T)), RatFn::one());
        assert_eq!((&a / &b).to_string(), "(T - 1)/(T)");
    }

    #[test]
    fn evaluation() {
        let a = r("(T + 1)/(T - 2)");
        assert_eq!(a.eval_var(T, &qi(3)).unwrap().constant_value(), Some(qi(4)));
        assert!(a.eval_var(T, &qi(2)).is_none());
    }

    #[test]
    fn serde_round_trip() {
        let a = r("(T*a1 + 1)/(T^2 - a2)");
        let s = serde_json::to_string(&a).unwrap();
        let b: RatFn = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
