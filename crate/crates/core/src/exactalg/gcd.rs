//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive on a main variable: content and primitive part are split off and
//! the primitive parts go through a primitive pseudo-remainder sequence.
//! Results are normalised to be monic in graded lex order.

use super::poly::{MultiPoly, Var};

pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    if va.len() == 1 && va == vb {
        return univariate_gcd(a, b, va[0]);
    }
    let v = *va.iter().chain(vb.iter()).max().unwrap();
    if !a.contains_var(v) {
        return gcd(a, &content(b, v));
    }
    if !b.contains_var(v) {
        return gcd(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let pa = divide_coeffs(a, &ca, v);
    let pb = divide_coeffs(b, &cb, v);
    let g = primitive_prs(pa, pb, v);
    (&c * &g).monic()
}

/// Gcd of the coefficients of `p` viewed in `v`.
pub fn content(p: &MultiPoly, v: Var) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

fn divide_coeffs(p: &MultiPoly, c: &MultiPoly, v: Var) -> MultiPoly {
    let coeffs: Vec<MultiPoly> = p
        .coeffs_in(v)
        .iter()
        .map(|x| x.div_exact(c).expect("content divides every coefficient"))
        .collect();
    MultiPoly::from_coeffs_in(v, &coeffs)
}

fn primitive_part(p: &MultiPoly, v: Var) -> MultiPoly {
    let c = content(p, v);
    divide_coeffs(p, &c, v)
}

/// `lc(b)^k * a mod b` in `v`, computed with coefficient vectors.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let bc = b.coeffs_in(v);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let mut r = a.coeffs_in(v);
    while r.len() > db {
        let k = r.len() - 1;
        let lr = r[k].clone();
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, c) in bc.iter().enumerate() {
            let sub = c * &lr;
            r[k - db + i] -= &sub;
        }
        while r.last().is_some_and(MultiPoly::is_zero) {
            r.pop();
        }
    }
    MultiPoly::from_coeffs_in(v, &r)
}

fn primitive_prs(a: MultiPoly, b: MultiPoly, v: Var) -> MultiPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if !r.contains_var(v) {
            return MultiPoly::one();
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.monic(), b.monic())
    } else {
        (b.monic(), a.monic())
    };
    while !b.is_zero() {
        let (_, r) = a.div_rem_univariate(&b, v);
        a = b;
        b = r.monic();
    }
    a.monic()
}

pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn univariate() {
        let g = gcd(&p("T^2 - 1"), &p("2*T^2 - 2*T"));
        assert_eq!(g.to_string(), "T - 1");
        assert!(gcd(&p("T"), &p("T + 1")).is_one());
    }

    #[test]
    fn multivariate() {
        let f = p("(T - a1)*(a2 + 1)");
        let g = p("(T - a1)*(T + a2)");
        assert_eq!(gcd(&f, &g), p("T - a1"));
        let h = p("(a1*T + 1)^2*(a2 - T)");
        let k = p("(a1*T + 1)*(a2 + T)");
        assert_eq!(gcd(&h, &k), p("a1*T + 1").monic());
    }

    #[test]
    fn zero_and_constants() {
        assert_eq!(gcd(&MultiPoly::zero(), &p("3*T")), p("T"));
        assert!(gcd(&p("5"), &p("T")).is_one());
    }
}
