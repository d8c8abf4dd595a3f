//! Symmetric monoidal structure: braiding, decomposition of tensor words
//! into generators, duality, trace, the Jucys–Murphy endomorphism and the
//! induction functor `Rep(S_(T-n)) × Rep(S_n) -> Rep(S_T)`.

use std::collections::BTreeMap;

use super::morphism::{add_term, tensor_words, LinComb, Morphism};
use super::object::Object;
use super::table::jm_terms;
use super::CatError;
use crate::exactalg::{falling_factorial, MultiPoly, RatFn, Q, T};
use crate::recollement::diagram::trace_blocks;
use crate::recollement::{Diagram, Word};

/// The symmetry `X ⊗ Y -> Y ⊗ X`.
pub fn braiding(x: &Object, y: &Object) -> Result<Morphism, CatError> {
    let src = tensor_words(&x.words, &y.words);
    let tgt = tensor_words(&y.words, &x.words);
    let mut m = Morphism::zero(&src, &tgt);
    let ny = y.words.len();
    let nx = x.words.len();
    for (i, wx) in x.words.iter().enumerate() {
        for (j, wy) in y.words.iter().enumerate() {
            let (r, s) = (wx.num_factors(), wy.num_factors());
            let perm: Vec<usize> = (r..r + s).chain(0..r).collect();
            for d in Diagram::factor_permutation_terms(&wx.concat(wy), &perm) {
                m.blocks[j * nx + i][i * ny + j].insert(d, RatFn::one());
            }
        }
    }
    if x.is_plain() && y.is_plain() {
        return Ok(m);
    }
    x.identity().tensor(&y.identity()).then(&m)
}

/// A decomposition of an object into generators `[k]`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Generators, with the idempotent transported from the original object.
    pub object: Object,
    /// Valid partition of the original word behind each summand.
    pub labels: Vec<(usize, Diagram)>,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

/// `⊕_P [P] ≅ w`, one summand per partition `P` of the points of `w` that
/// separates points of the same factor. Inclusion and projection are
/// mutually inverse.
pub fn flatten(x: &Object) -> Result<Decomposition, CatError> {
    let mut singles = Vec::new();
    let mut labels = Vec::new();
    for (i, w) in x.words.iter().enumerate() {
        for p in Diagram::enumerate(w, &Word::unit()) {
            singles.push(Word::single(p.num_blocks()));
            labels.push((i, p));
        }
    }
    let mut proj = Morphism::zero(&x.words, &singles);
    for (k, (i, p)) in labels.iter().enumerate() {
        let mut l: Vec<usize> = p.labels().iter().map(|&b| b as usize).collect();
        l.extend(0..p.num_blocks());
        proj.blocks[k][*i].insert(Diagram::from_labels(&l), RatFn::one());
    }
    let inc = proj.transpose();
    let object = match &x.idem {
        None => Object { words: singles, idem: None },
        Some(e) => Object::with_idempotent(singles, inc.then(e)?.then(&proj)?)?,
    };
    Ok(Decomposition { object, labels, inclusion: inc, projection: proj })
}

/// `X ⊗ Y` decomposed into generators, `[U] ⊗ [V] = ⊕_(C ∈ rec(U,V)) [C]`.
pub fn tensor_objects(x: &Object, y: &Object) -> Result<Decomposition, CatError> {
    flatten(&x.tensor(y))
}

/// Duality data `(coev: 1 -> X ⊗ X*, ev: X* ⊗ X -> 1)` with `X*` the same
/// words carrying the transposed idempotent.
pub fn duality_data(x: &Object) -> Result<(Object, Morphism, Morphism), CatError> {
    let ws = &x.words;
    let n = ws.len();
    let unit = vec![Word::unit()];
    let pair = tensor_words(ws, ws);
    let mut coev = Morphism::zero(&unit, &pair);
    for (i, w) in ws.iter().enumerate() {
        let a = w.total();
        let constraint: Vec<usize> = (0..a).chain(0..a).collect();
        for d in Diagram::coarsenings(&constraint, &Word::unit(), &w.concat(w)) {
            coev.blocks[i * n + i][0].insert(d, RatFn::one());
        }
    }
    let ev = coev.transpose();
    let dual = match &x.idem {
        None => Object { words: ws.clone(), idem: None },
        Some(e) => Object { words: ws.clone(), idem: Some(e.transpose()) },
    };
    if x.is_plain() {
        return Ok((dual, coev, ev));
    }
    let coev = coev.then(&x.identity().tensor(&dual.identity()))?;
    let ev = dual.identity().tensor(&x.identity()).then(&ev)?;
    Ok((dual, coev, ev))
}

/// Categorical trace: a doubled partition with `k` blocks contributes `(T)_k`.
pub fn trace(f: &Morphism) -> Result<RatFn, CatError> {
    if f.src != f.tgt {
        return Err(CatError::ObjectMismatch("trace needs an endomorphism".into()));
    }
    let mut acc = RatFn::zero();
    for (i, w) in f.src.iter().enumerate() {
        for (d, c) in &f.blocks[i][i] {
            if let Some(k) = trace_blocks(d, w) {
                acc += &c.mul_poly(&falling_factorial(&MultiPoly::var(T), k));
            }
        }
    }
    Ok(acc)
}

pub fn cat_dimension(x: &Object) -> Result<RatFn, CatError> {
    trace(&x.identity())
}

/// `Σ_(i<j) (i j)` acting on `X`.
pub fn jm_endo(x: &Object) -> Result<Morphism, CatError> {
    let mut m = Morphism::zero(&x.words, &x.words);
    for (i, w) in x.words.iter().enumerate() {
        for (d, p) in jm_terms(w)?.iter() {
            m.blocks[i][i].insert(d.clone(), RatFn::from_poly(p.clone()));
        }
    }
    match &x.idem {
        None => Ok(m),
        Some(e) => m.then(e),
    }
}

/// `η: [∅] -> [1]`, the sum of all basis vectors.
pub fn unit_map() -> Morphism {
    Morphism::from_diagram(&Word::unit(), &Word::single(1), Diagram::from_labels(&[0u8])).expect("valid")
}

/// `s: [1] -> [∅]`, the standard map.
pub fn counit_map() -> Morphism {
    Morphism::from_diagram(&Word::single(1), &Word::unit(), Diagram::from_labels(&[0u8])).expect("valid")
}

/// `B_h: h ⊗ h -> 1`, the pairing of `[1]` with itself.
pub fn pairing_h() -> Morphism {
    let w = Word::new(vec![1, 1]);
    Morphism::from_diagram(&w, &Word::unit(), Diagram::from_labels(&[0u8, 0])).expect("valid")
}

/// Disjoint union of `c: (v) -> (v')` and a bijection `d: (j) -> (j)`.
pub fn disjoint_union_diagram(c: &Diagram, v: usize, vp: usize, d: &Diagram, j: usize) -> Diagram {
    let nc = c.num_blocks();
    let mut labels = vec![0usize; v + j + vp + j];
    for p in 0..v {
        labels[p] = c.block_of(p);
    }
    for p in 0..vp {
        labels[v + j + p] = c.block_of(v + p);
    }
    for p in 0..j {
        labels[v + p] = nc + d.block_of(p);
        labels[v + j + vp + p] = nc + d.block_of(j + p);
    }
    Diagram::from_labels(&labels)
}

/// True if `d: (j) -> (j)` is a bijection.
pub fn is_bijection(d: &Diagram, j: usize) -> bool {
    d.num_blocks() == j && d.blocks().iter().all(|b| b.len() == 2 && b[0] < j && b[1] >= j)
}

/// `ind(f, b)`: `f` lives over parameter `T - n` on single words, `b` is an
/// element of `ℚ[S_n]` written in bijection diagrams of `(n) -> (n)`.
pub fn induct_st(f: &Morphism, n: usize, b: &BTreeMap<Diagram, Q>) -> Result<Morphism, CatError> {
    for w in f.src.iter().chain(&f.tgt) {
        if w.num_factors() > 1 {
            return Err(CatError::TypeMismatch("induction is defined on generators [V]".into()));
        }
    }
    let jw = Word::single(n);
    for d in b.keys() {
        d.check(&jw, &jw)?;
        if !is_bijection(d, n) {
            return Err(CatError::TypeMismatch(format!("{d} is not a bijection of J")));
        }
    }
    let shift = MultiPoly::var_plus(T, -(n as i64));
    let grow = |w: &Word| Word::single(w.total() + n);
    let src: Vec<Word> = f.src.iter().map(grow).collect();
    let tgt: Vec<Word> = f.tgt.iter().map(grow).collect();
    let mut out = Morphism::zero(&src, &tgt);
    for (t, row) in f.blocks.iter().enumerate() {
        for (s, lc) in row.iter().enumerate() {
            let (v, vp) = (f.src[s].total(), f.tgt[t].total());
            let mut acc = LinComb::new();
            for (c, x) in lc {
                let x = x.substitute(T, &shift).ok_or_else(|| CatError::PoleAtSpecialization("T -> T - n".into()))?;
                for (d, y) in b {
                    add_term(&mut acc, disjoint_union_diagram(c, v, vp, d, n), &x.scale(y));
                }
            }
            out.blocks[t][s] = acc;
        }
    }
    Ok(out)
}

/// `ind(X, B)` for an object over `T - n` and an idempotent `b ∈ ℚ[S_n]`.
pub fn induct_object(x: &Object, n: usize, b: &BTreeMap<Diagram, Q>) -> Result<Object, CatError> {
    let e = induct_st(&x.identity(), n, b)?;
    Object::with_idempotent(e.src.clone(), e)
}

/// The identity of `ℚ[S_n]` in bijection diagrams.
pub fn group_algebra_unit(n: usize) -> BTreeMap<Diagram, Q> {
    let labels: Vec<usize> = (0..n).chain(0..n).collect();
    BTreeMap::from([(Diagram::from_labels(&labels), Q::from_integer(1.into()))])
}
