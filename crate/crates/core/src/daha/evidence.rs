//! Endomorphisms of `y`-objects and evidence for generic simplicity.
//!
//! Simplicity inside the non-semisimple truncation has no computable
//! criterion, so the report collects evidence only: the endomorphism
//! dimension over the function field, nondegeneracy of the Gram form on the
//! underlying object, and Burnside checks of integer specializations.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::induce::{rho, StandardParams};
use super::yobject::{ev, YObject};
use super::DahaError;
use crate::delcat::{gram_det, hom_basis, Morphism, Object};
use crate::exactalg::{rank_profile, RatFn, RatMatrix, Var, Q, T};
use crate::oracle::daha::{ev_rep, induce_rep, right_symmetrizer, DahaRep, PermSum};
use crate::oracle::QMatrix;
use crate::recollement::Word;

/// A basis of `{m ∈ End(M) : m ∘ y = y ∘ (id ⊗ m)}`.
pub fn end_space(y: &YObject) -> Result<Vec<Morphism>, DahaError> {
    let basis = hom_basis(&y.object, &y.object)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let id_h = Morphism::identity(&[Word::single(1)]);
    let mut cols = Vec::with_capacity(basis.len());
    for m in &basis {
        let d = y.y.then(m)?.sub(&id_h.tensor(m).then(&y.y)?)?;
        cols.push(d.coordinates());
    }
    let rows = cols[0].len();
    let mut mat = RatMatrix::zeros(rows, basis.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            if !v.is_zero() {
                mat.set(i, j, v.clone());
            }
        }
    }
    let (_, kernel) = rank_profile(&mat);
    let mut out = Vec::with_capacity(kernel.len());
    for v in kernel {
        let mut m = Morphism::zero(&y.object.words, &y.object.words);
        for (c, b) in v.iter().zip(&basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c))?;
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Parameters other than `T` occurring in the `y`-map.
fn parameters(y: &YObject) -> Vec<Var> {
    let mut vars = BTreeSet::new();
    for lc in y.y.blocks.iter().flatten() {
        for c in lc.values() {
            vars.extend(c.num().vars());
            vars.extend(c.den().vars());
        }
    }
    vars.remove(&T);
    vars.into_iter().collect()
}

/// A random rational with small numerator and denominator.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=7).into())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evidence {
    pub end_dim: usize,
    pub gram_det: RatFn,
    pub gram_nondegenerate: bool,
    /// `(n, assignment, simple)` per integer specialization.
    pub burnside: Vec<(usize, Vec<(Var, Q)>, bool)>,
}

/// Evidence report; labelled evidence, not a proof.
pub fn generic_simplicity_evidence(y: &YObject, ns: &[usize], seed: u64) -> Result<Evidence, DahaError> {
    let end_dim = end_space(y)?.len();
    let g = gram_det(&y.object)?;
    let vars = parameters(y);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut burnside = Vec::new();
    for &n in ns {
        let assignment: Vec<(Var, Q)> = vars.iter().map(|&v| (v, random_rational(&mut rng))).collect();
        let rep = y.to_oracle(n, &assignment)?;
        burnside.push((n, assignment, rep.is_simple()));
    }
    Ok(Evidence { end_dim, gram_nondegenerate: !g.is_zero(), gram_det: g, burnside })
}

/// The oracle module `M^n(a)_π` built directly from honest evaluation
/// modules and PBW induction, for rational parameters.
pub fn oracle_standard_module(parts: &[usize], a: &[Q], n: usize) -> Result<DahaRep, DahaError> {
    let l: usize = parts.iter().sum();
    if a.len() != parts.len() + 1 {
        return Err(DahaError::TypeMismatch(format!("need {} parameters", parts.len() + 1)));
    }
    if n < l {
        return Err(DahaError::TypeMismatch(format!("n = {n} is smaller than |π| = {l}")));
    }
    let r = rho(a.len());
    let first = PermSum::of_words(&[Word::unit()], n - l);
    let mut m = ev_rep(&(&a[0] + &r[0]), first, QMatrix::identity(1));
    for (i, &li) in parts.iter().enumerate() {
        let space = PermSum::of_words(&[Word::single(li)], li);
        let e = right_symmetrizer(&space);
        let b = ev_rep(&(&a[i + 1] + &r[i + 1]), space, e);
        m = induce_rep(&m, &b)?;
    }
    Ok(m)
}

/// One grid point of a simplicity scan.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint {
    pub n: usize,
    pub a: Vec<Q>,
    pub simple: bool,
    pub on_hyperplane: bool,
}

/// `a` lies on a hyperplane `(a_i + ρ_i) - (a_j + ρ_j) ∈ ℤ`.
pub fn on_listed_hyperplane(a: &[Q]) -> bool {
    let r = rho(a.len());
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if (&a[i] + &r[i] - &a[j] - &r[j]).is_integer() {
                return true;
            }
        }
    }
    false
}

/// Burnside simplicity of `M^n(a)_π` over all pairs from `grid`.
pub fn grid_scan(parts: &[usize], grid: &[Q], ns: &[usize]) -> Result<Vec<GridPoint>, DahaError> {
    if parts.len() != 1 {
        return Err(DahaError::TypeMismatch("grid scans take two parameters".into()));
    }
    let mut out = Vec::new();
    for &n in ns {
        for a1 in grid {
            for a2 in grid {
                let a = vec![a1.clone(), a2.clone()];
                let rep = oracle_standard_module(parts, &a, n)?;
                out.push(GridPoint { n, on_hyperplane: on_listed_hyperplane(&a), a, simple: rep.is_simple() });
            }
        }
    }
    Ok(out)
}

/// `ev(a, [∅])` over indeterminate `a`, as a convenience for reports.
pub fn ev_trivial(a: Var) -> Result<YObject, DahaError> {
    ev(&RatFn::var(a), &Object::unit())
}

/// The parameters of `M^T(a)_π` as indeterminates `a1, ..., ak`.
pub fn generic_params(parts: &[usize]) -> Result<StandardParams, DahaError> {
    let a = (1..=parts.len() + 1).map(RatFn::var).collect();
    StandardParams::new(parts.to_vec(), a)
}

/// Burnside simplicity of `M^n(a)_π` at `count` random rational points off
/// the listed hyperplanes, for every `n` in `ns`.
pub fn random_off_hyperplane(parts: &[usize], count: usize, ns: &[usize], seed: u64) -> Result<Vec<GridPoint>, DahaError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let a: Vec<Q> = (0..=parts.len()).map(|_| random_rational(&mut rng)).collect();
        if !on_listed_hyperplane(&a) {
            points.push(a);
        }
    }
    let mut out = Vec::new();
    for &n in ns {
        for a in &points {
            let simple = oracle_standard_module(parts, a, n)?.is_simple();
            out.push(GridPoint { n, a: a.clone(), simple, on_hyperplane: false });
        }
    }
    Ok(out)
}
