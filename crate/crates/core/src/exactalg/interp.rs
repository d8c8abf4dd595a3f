//! Interpolation in one variable and integer root finding.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, MultiPoly, Var, T};
use super::rational::Q;
use super::ExactError;

/// Coefficients (low to high) of the polynomial of degree `<= bound` through
/// the first `bound + 1` points, via Newton divided differences.
fn newton_coeffs(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Expand the Newton form from the innermost coefficient outwards.
    let mut coeffs = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![Q::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn horner(coeffs: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn check_samples(samples: &[(i64, Q)], degree_bound: usize) -> Result<(), ExactError> {
    if samples.len() < degree_bound + 1 {
        return Err(ExactError::TooFewSamples { needed: degree_bound + 1, got: samples.len() });
    }
    let mut seen = std::collections::BTreeSet::new();
    for (x, _) in samples {
        if !seen.insert(*x) {
            return Err(ExactError::DuplicateSample(*x));
        }
    }
    Ok(())
}

/// The unique polynomial in `T` of degree `<= degree_bound` through the first
/// `degree_bound + 1` samples; the remaining samples must agree.
pub fn lagrange_interpolate(samples: &[(i64, Q)], degree_bound: usize) -> Result<MultiPoly, ExactError> {
    interpolate_in(T, samples, degree_bound)
}

/// As [`lagrange_interpolate`] with an arbitrary variable.
pub fn interpolate_in(v: Var, samples: &[(i64, Q)], degree_bound: usize) -> Result<MultiPoly, ExactError> {
    check_samples(samples, degree_bound)?;
    let k = degree_bound + 1;
    let xs: Vec<Q> = samples[..k].iter().map(|(x, _)| Q::from_integer(BigInt::from(*x))).collect();
    let ys: Vec<Q> = samples[..k].iter().map(|(_, y)| y.clone()).collect();
    let coeffs = newton_coeffs(&xs, &ys);
    for (x, y) in &samples[k..] {
        if &horner(&coeffs, &Q::from_integer(BigInt::from(*x))) != y {
            return Err(ExactError::DegreeExceeded { bound: degree_bound, point: *x });
        }
    }
    let cs: Vec<MultiPoly> = coeffs.into_iter().map(MultiPoly::constant).collect();
    Ok(MultiPoly::from_coeffs_in(v, &cs))
}

/// Interpolate in `v` when each sample value is a polynomial free of `v`.
pub fn interpolate_poly_values(
    v: Var,
    samples: &[(i64, MultiPoly)],
    degree_bound: usize,
) -> Result<MultiPoly, ExactError> {
    let mut monos: BTreeMap<Monomial, ()> = BTreeMap::new();
    for (_, p) in samples {
        assert!(!p.contains_var(v), "sample value contains the interpolation variable");
        for (m, _) in p.terms() {
            monos.insert(m.clone(), ());
        }
    }
    if monos.is_empty() {
        check_samples(
            &samples.iter().map(|(x, _)| (*x, Q::zero())).collect::<Vec<_>>(),
            degree_bound,
        )?;
        return Ok(MultiPoly::zero());
    }
    let mut out = MultiPoly::zero();
    for m in monos.keys() {
        let scalar: Vec<(i64, Q)> = samples
            .iter()
            .map(|(x, p)| {
                let c = p.terms().find(|(k, _)| *k == m).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero);
                (*x, c)
            })
            .collect();
        let u = interpolate_in(v, &scalar, degree_bound)?;
        out += &u.mul_monomial(m, &Q::one());
    }
    Ok(out)
}

/// Sorted integer roots of a univariate polynomial.
pub fn integer_roots(p: &MultiPoly) -> Result<Vec<BigInt>, ExactError> {
    Ok(integer_roots_with_multiplicity(p)?.into_iter().map(|(r, _)| r).collect())
}

/// Integer roots with multiplicities, sorted by root.
pub fn integer_roots_with_multiplicity(p: &MultiPoly) -> Result<Vec<(BigInt, u32)>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let vars = p.vars();
    if vars.len() > 1 {
        return Err(ExactError::NotUnivariate(p.to_string()));
    }
    let Some(&v) = vars.first() else {
        return Ok(Vec::new());
    };
    let prim = p.primitive_integer();
    let mut coeffs: Vec<BigInt> =
        prim.coeffs_in(v).iter().map(|c| c.constant_value().unwrap().to_integer()).collect();
    let mut out = Vec::new();
    let zero_mult = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        out.push((BigInt::zero(), zero_mult as u32));
        coeffs.drain(..zero_mult);
    }
    if coeffs.len() <= 1 {
        return Ok(out);
    }
    let mut bound = root_bound(&coeffs);
    let mut r = BigInt::one();
    while r <= bound && coeffs.len() > 1 {
        if (&coeffs[0] % &r).is_zero() {
            for cand in [-r.clone(), r.clone()] {
                let mut mult = 0u32;
                while coeffs.len() > 1 {
                    match deflate(&coeffs, &cand) {
                        Some(q) => {
                            coeffs = q;
                            mult += 1;
                        }
                        None => break,
                    }
                }
                if mult > 0 {
                    out.push((cand, mult));
                    if coeffs.len() > 1 {
                        bound = root_bound(&coeffs);
                    }
                }
            }
        }
        r += 1;
    }
    out.sort();
    Ok(out)
}

/// Fujiwara's bound `2 max_i |a_(n-i) / a_n|^(1/i)` on the absolute value of
/// the roots, rounded up, capped by `|a_0|`.
fn root_bound(coeffs: &[BigInt]) -> BigInt {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    let mut best = BigInt::zero();
    for i in 1..=n {
        let c = coeffs[n - i].abs();
        if c.is_zero() {
            continue;
        }
        let ratio = {
            let (q, r) = c.div_rem(&lead);
            if r.is_zero() { q } else { q + 1 }
        };
        let mut root = ratio.nth_root(i as u32);
        if root.pow(i as u32) < ratio {
            root += 1;
        }
        best = best.max(root);
    }
    (best * 2u32).min(coeffs[0].abs())
}

/// Divide by `(x - r)` if `r` is a root.
fn deflate(coeffs: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let n = coeffs.len();
    let mut q = vec![BigInt::zero(); n - 1];
    let mut acc = BigInt::zero();
    for i in (0..n).rev() {
        acc = acc * r + &coeffs[i];
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    acc.is_zero().then_some(q)
}
