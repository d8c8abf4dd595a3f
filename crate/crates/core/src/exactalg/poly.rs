//! Sparse multivariate polynomials over the rationals.
//!
//! Indeterminates are identified by index: index 0 is `T` (the rank
//! parameter), index `i >= 1` is the parameter `a{i}`. Monomials are compared
//! in graded lexicographic order with `T` first, so the canonical term order
//! is the same for every polynomial regardless of which indeterminates occur.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, Q};

/// Index of an indeterminate. `0` is `T`.
pub type Var = usize;

/// The rank parameter.
pub const T: Var = 0;

pub fn var_name(v: Var) -> String {
    if v == T {
        "T".to_string()
    } else {
        format!("a{v}")
    }
}

pub fn parse_var_name(s: &str) -> Option<Var> {
    if s == "T" {
        return Some(T);
    }
    let rest = s.strip_prefix('a')?;
    let idx: usize = rest.parse().ok()?;
    (idx >= 1).then_some(idx)
}

/// Exponent vector with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut exps = vec![0; v + 1];
        exps[v] = e;
        Monomial(exps)
    }

    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial(exps)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            if other.0[self.0.len()..].iter().any(|&e| e > 0) {
                return None;
            }
        }
        let mut exps = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            let o = other.exp(i);
            if o > self.0[i] {
                return None;
            }
            exps.push(self.0[i] - o);
        }
        Some(Monomial::from_exps(exps))
    }

    /// Drop the exponent of `v`.
    pub fn without(&self, v: Var) -> Monomial {
        let mut exps = self.0.clone();
        if v < exps.len() {
            exps[v] = 0;
        }
        Monomial::from_exps(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().rev().cmp(other.terms.iter().rev())
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Q::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `v + c` for an integer shift `c`.
    pub fn var_plus(v: Var, c: i64) -> Self {
        Self::var(v) + Self::from_i64(c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Q {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// Largest variable index occurring, if any.
    pub fn max_var(&self) -> Option<Var> {
        self.terms
            .keys()
            .filter(|m| !m.is_one())
            .map(|m| m.nvars() - 1)
            .max()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = Vec::new();
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `v := value` for a rational value.
    pub fn eval_var(&self, v: Var, value: &Q) -> MultiPoly {
        let mut out = Self::zero();
        let mut powers: Vec<Q> = vec![Q::one()];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.without(v), c * &powers[e]);
        }
        out
    }

    /// Substitute `v := replacement` for a polynomial replacement.
    pub fn substitute(&self, v: Var, replacement: &MultiPoly) -> MultiPoly {
        let mut out = Self::zero();
        let mut powers: Vec<MultiPoly> = vec![Self::one()];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * replacement;
                powers.push(next);
            }
            let rest = Self::monomial(m.without(v), c.clone());
            out += &(&rest * &powers[e]);
        }
        out
    }

    /// Evaluate at a full assignment; missing variables are an error.
    pub fn eval_all(&self, assignment: &BTreeMap<Var, Q>) -> Option<Q> {
        let mut p = self.clone();
        for (v, val) in assignment {
            p = p.eval_var(*v, val);
        }
        p.constant_value()
    }

    /// Coefficients of `self` viewed as a polynomial in `v`: index i holds the
    /// coefficient of `v^i` (a polynomial free of `v`).
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            out += &c.mul_monomial(&Monomial::var(v, i as u32), &Q::one());
        }
        out
    }

    /// Make the leading coefficient (graded lex) equal to one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        l
    }

    /// Integer coefficients with positive gcd 1 and positive leading coefficient.
    pub fn primitive_integer(&self) -> MultiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.denominator_lcm();
        let scaled = self.scale(&Q::from_integer(l));
        let mut g = BigInt::zero();
        for c in scaled.terms.values() {
            g = num_integer::Integer::gcd(&g, c.numer());
        }
        let mut out = scaled.scale(&Q::new(BigInt::one(), g));
        if out.leading_coeff().is_negative() {
            out = -out;
        }
        out
    }

    /// Exact division by a nonzero divisor; `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = &c / &lc;
            rem -= &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Univariate division with remainder in `v` when the divisor's leading
    /// coefficient in `v` is a nonzero constant.
    pub fn div_rem_univariate(&self, divisor: &MultiPoly, v: Var) -> (MultiPoly, MultiPoly) {
        let dc = divisor.coeffs_in(v);
        let dd = dc.len() - 1;
        let lead = dc[dd].constant_value().expect("constant leading coefficient");
        let mut rem = self.coeffs_in(v);
        let mut quot = vec![Self::zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let coef = rem[k].scale(&lead.recip());
            for (i, c) in dc.iter().enumerate() {
                let sub = c * &coef;
                rem[k - dd + i] -= &sub;
            }
            quot[k - dd] = coef;
            while rem.last().is_some_and(MultiPoly::is_zero) {
                rem.pop();
            }
        }
        (Self::from_coeffs_in(v, &quot), Self::from_coeffs_in(v, &rem))
    }

    /// Formal derivative in `v`.
    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut exps = m.exps().to_vec();
                exps[v] -= 1;
                out.add_term(Monomial::from_exps(exps), c * Q::from_integer(BigInt::from(e)));
            }
        }
        out
    }
}

impl From<Q> for MultiPoly {
    fn from(c: Q) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::from_i64(c)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical string form, e.g. `3/2*T^2*a1 - 1`; terms in descending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(fmt_rational(&abs));
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(var_name(v)),
                    _ => factors.push(format!("{}^{}", var_name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// `base (base - 1) ... (base - k + 1)`; the empty product for `k = 0`.
pub fn falling_factorial(base: &MultiPoly, k: usize) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for i in 0..k {
        let factor = base - &MultiPoly::from_i64(i as i64);
        acc = &acc * &factor;
    }
    acc
}

pub fn binomial2(base: &MultiPoly) -> MultiPoly {
    falling_factorial(base, 2).scale(&BigRational::new(1.into(), 2.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;

    fn t() -> MultiPoly {
        MultiPoly::var(T)
    }

    #[test]
    fn falling_factorial_examples() {
        let ff = falling_factorial(&t(), 2);
        assert_eq!(ff, &t() * &t() - t());
        assert_eq!(ff.eval_var(T, &q(5, 1)).constant_value(), Some(q(20, 1)));
        assert!(falling_factorial(&MultiPoly::var_plus(T, -2), 0).is_one());
        let shifted = falling_factorial(&MultiPoly::var_plus(T, -1), 2);
        assert_eq!(shifted.to_string(), "T^2 - 3*T + 2");
    }

    #[test]
    fn display_is_canonical() {
        let a1 = MultiPoly::var(1);
        let p = (&(&t() * &t()) * &a1).scale(&q(3, 2)) - MultiPoly::one();
        assert_eq!(p.to_string(), "3/2*T^2*a1 - 1");
        let p2 = &a1 + &t();
        assert_eq!(p2.to_string(), "T + a1");
    }

    #[test]
    fn exact_division() {
        let a = &(&t() - &MultiPoly::from_i64(3)) * &(&t() + &MultiPoly::var(2));
        let b = &t() + &MultiPoly::var(2);
        assert_eq!(a.div_exact(&b), Some(&t() - &MultiPoly::from_i64(3)));
        assert_eq!(t().div_exact(&(&t() + &MultiPoly::one())), None);
    }

    #[test]
    fn substitution_shifts() {
        let p = &t() * &t();
        let s = p.substitute(T, &MultiPoly::var_plus(T, -1));
        assert_eq!(s.to_string(), "T^2 - 2*T + 1");
    }
}
