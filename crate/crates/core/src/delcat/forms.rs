//! Hom-space dimensions, trace forms, negligible morphisms, idempotent
//! splitting and the block structure of endomorphism algebras.

use num_traits::Zero;

use super::morphism::Morphism;
use super::object::Object;
use super::structure::trace;
use super::CatError;
use crate::exactalg::{integer_roots_with_multiplicity, rank_profile, MultiPoly, RatFn, RatMatrix, Var, Q, T};
use crate::oracle::qmat::QMatrix;
use crate::recollement::Diagram;

/// Every diagram of every block, as single-term morphisms.
pub fn diagram_basis(src: &[crate::recollement::Word], tgt: &[crate::recollement::Word]) -> Vec<Morphism> {
    let mut out = Vec::new();
    for (t, wt) in tgt.iter().enumerate() {
        for (s, ws) in src.iter().enumerate() {
            for d in Diagram::enumerate(ws, wt) {
                let mut m = Morphism::zero(src, tgt);
                m.blocks[t][s].insert(d, RatFn::one());
                out.push(m);
            }
        }
    }
    out
}

/// Indices of a maximal independent subset (leftmost pivots) over `ℚ(T, ...)`.
pub fn independent_subset(vectors: &[Vec<RatFn>]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let n = vectors[0].len();
    let mut m = RatMatrix::zeros(n, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                m.set(i, j, x.clone());
            }
        }
    }
    let (pm, _) = m.clear_denominators();
    pm.echelon().pivots
}

/// A basis of `Hom(X, Y)` in the envelope: sandwiched diagrams, pruned to an
/// independent subset.
pub fn hom_basis(x: &Object, y: &Object) -> Result<Vec<Morphism>, CatError> {
    let all = diagram_basis(&x.words, &y.words);
    if x.is_plain() && y.is_plain() {
        return Ok(all);
    }
    let sandwiched = all.iter().map(|f| Object::sandwich(x, f, y)).collect::<Result<Vec<_>, _>>()?;
    let coords: Vec<Vec<RatFn>> = sandwiched.iter().map(Morphism::coordinates).collect();
    Ok(independent_subset(&coords).into_iter().map(|i| sandwiched[i].clone()).collect())
}

pub fn hom_dim(x: &Object, y: &Object) -> Result<usize, CatError> {
    Ok(hom_basis(x, y)?.len())
}

/// Pairing matrix `M[i][j] = trace(g_j ∘ f_i)`.
pub fn trace_pairing(fs: &[Morphism], gs: &[Morphism]) -> Result<RatMatrix, CatError> {
    let mut m = RatMatrix::zeros(fs.len(), gs.len());
    for (i, f) in fs.iter().enumerate() {
        for (j, g) in gs.iter().enumerate() {
            m.set(i, j, trace(&f.then(g)?)?);
        }
    }
    Ok(m)
}

/// Gram matrix of `⟨f, g⟩ = trace(transpose(g) ∘ f)` on `End(X)`.
pub fn gram_matrix(x: &Object) -> Result<RatMatrix, CatError> {
    let basis = hom_basis(x, x)?;
    let transposed: Vec<Morphism> = basis.iter().map(Morphism::transpose).collect();
    trace_pairing(&basis, &transposed)
}

pub fn gram_det(x: &Object) -> Result<RatFn, CatError> {
    Ok(gram_matrix(x)?.det()?)
}

/// Negligible morphisms in `Hom(X, Y)` at `T = t`: the left kernel of the
/// trace pairing with `Hom(Y, X)`. Returns the basis used and the kernel
/// vectors in that basis.
pub fn negligible_radical(x: &Object, y: &Object, t: &Q) -> Result<(Vec<Morphism>, Vec<Vec<Q>>), CatError> {
    let fs = hom_basis(x, y)?;
    let gs = hom_basis(y, x)?;
    let m = trace_pairing(&fs, &gs)?;
    let mut dense = vec![vec![Q::zero(); fs.len()]; gs.len()];
    for (i, row) in m.to_rows().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let v = v.eval_var(T, t).ok_or_else(|| CatError::PoleAtSpecialization(format!("trace pairing at T = {t}")))?;
            dense[j][i] = v.constant_value().ok_or_else(|| CatError::TypeMismatch("pairing depends on parameters other than T".into()))?;
        }
    }
    if fs.is_empty() {
        return Ok((fs, Vec::new()));
    }
    let k = if gs.is_empty() { QMatrix::identity(fs.len()) } else { QMatrix::from_dense(&dense).kernel() };
    let vecs = (0..k.cols()).map(|c| (0..k.rows()).map(|r| k.get(r, c)).collect()).collect();
    Ok((fs, vecs))
}

/// The image of an idempotent endomorphism of a sum of words.
pub fn split_idempotent(e: &Morphism) -> Result<Object, CatError> {
    Object::with_idempotent(e.src.clone(), e.clone())
}

/// Block data of a split semisimple `End(X)` over `ℚ(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub total_dim: usize,
    pub center_dim: usize,
    /// Matrix sizes of the blocks, decreasing.
    pub multiplicities: Vec<usize>,
}

/// Variable used for characteristic polynomials.
const LAMBDA: Var = 999;

/// Blocks of `End(X)` from its center `Z`: the element `w ∈ Z` with
/// `Tr_Z(w z) = Tr_End(z)` for all `z ∈ Z` equals `Σ m_i^2 e_i` over the
/// primitive central idempotents, so the eigenvalues of `w` on `Z` are the
/// squared block sizes.
pub fn block_structure(x: &Object) -> Result<BlockStructure, CatError> {
    let basis = hom_basis(x, x)?;
    let n = basis.len();
    let full: Vec<Vec<RatFn>> = basis.iter().map(Morphism::coordinates).collect();
    let coord_matrix = {
        let rows = full.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zeros(rows, n);
        for (j, v) in full.iter().enumerate() {
            for (i, c) in v.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        m
    };
    let plain = x.is_plain();
    let coords = |f: &Morphism| -> Result<Vec<RatFn>, CatError> {
        let v = f.coordinates();
        if plain {
            return Ok(v);
        }
        coord_matrix.solve(&v).ok_or_else(|| CatError::TypeMismatch("product left the endomorphism space".into()))
    };
    // prod[i][j] = coordinates of b_i ∘ b_j.
    let mut prod = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            prod[i][j] = coords(&basis[j].then(&basis[i])?)?;
        }
    }
    let mul = |a: &[RatFn], b: &[RatFn]| -> Vec<RatFn> {
        let mut out = vec![RatFn::zero(); n];
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero()) {
                let c = &a[i] * &b[j];
                for (k, p) in prod[i][j].iter().enumerate() {
                    if !p.is_zero() {
                        out[k] += &(&c * p);
                    }
                }
            }
        }
        out
    };
    let mut rows = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let row: Vec<RatFn> = (0..n).map(|i| &prod[i][j][k] - &prod[j][i][k]).collect();
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    let center: Vec<Vec<RatFn>> = if rows.is_empty() {
        (0..n).map(|i| (0..n).map(|j| if i == j { RatFn::one() } else { RatFn::zero() }).collect()).collect()
    } else {
        rank_profile(&RatMatrix::from_rows(rows)).1
    };
    let b = center.len();
    let mut zmat = RatMatrix::zeros(n, b);
    for (k, z) in center.iter().enumerate() {
        for (i, c) in z.iter().enumerate() {
            zmat.set(i, k, c.clone());
        }
    }
    let in_center = |v: &[RatFn]| -> Result<Vec<RatFn>, CatError> {
        zmat.solve(v).ok_or_else(|| CatError::TypeMismatch("product of central elements left the center".into()))
    };
    // Left multiplication by z on Z, in the basis `center`.
    let lmul = |z: &[RatFn]| -> Result<RatMatrix, CatError> {
        let mut m = RatMatrix::zeros(b, b);
        for (k, zk) in center.iter().enumerate() {
            for (r, c) in in_center(&mul(z, zk))?.into_iter().enumerate() {
                m.set(r, k, c);
            }
        }
        Ok(m)
    };
    let trace_end: Vec<RatFn> = (0..n)
        .map(|i| (0..n).fold(RatFn::zero(), |acc, j| &acc + &prod[i][j][j]))
        .collect();
    let tr_a = |v: &[RatFn]| v.iter().zip(&trace_end).fold(RatFn::zero(), |acc, (x, t)| &acc + &(x * t));
    let tr_z = |m: &RatMatrix| (0..b).fold(RatFn::zero(), |acc, i| &acc + m.get(i, i));
    let mut gram = RatMatrix::zeros(b, b);
    for a in 0..b {
        for c in 0..b {
            gram.set(a, c, tr_z(&lmul(&mul(&center[a], &center[c]))?));
        }
    }
    let rhs: Vec<RatFn> = center.iter().map(|z| tr_a(z)).collect();
    let coeff = gram.solve(&rhs).ok_or_else(|| CatError::TypeMismatch("center is not semisimple".into()))?;
    let mut w = vec![RatFn::zero(); n];
    for (c, z) in coeff.iter().zip(&center) {
        for (i, zi) in z.iter().enumerate() {
            w[i] += &(c * zi);
        }
    }
    let lw = lmul(&w)?;
    let lambda = RatFn::var(LAMBDA);
    let mut char_m = RatMatrix::zeros(b, b);
    for i in 0..b {
        for j in 0..b {
            let v = if i == j { &lambda - lw.get(i, j) } else { -lw.get(i, j).clone() };
            char_m.set(i, j, v);
        }
    }
    let chi = char_m.det()?;
    let chi = chi
        .as_poly()
        .filter(|p| p.vars().iter().all(|&v| v == LAMBDA))
        .cloned()
        .ok_or_else(|| CatError::TypeMismatch(format!("block sizes are not constant: {chi}")))?;
    let mut multiplicities = Vec::new();
    for (r, mult) in integer_roots_with_multiplicity(&chi)? {
        let r: u64 = r.try_into().map_err(|_| CatError::TypeMismatch("negative squared block size".into()))?;
        let m = (r as f64).sqrt().round() as u64;
        if m * m != r {
            return Err(CatError::TypeMismatch(format!("{r} is not a squared block size")));
        }
        multiplicities.extend(std::iter::repeat(m as usize).take(mult as usize));
    }
    if multiplicities.len() != b {
        return Err(CatError::TypeMismatch("block sizes are not all integral".into()));
    }
    multiplicities.sort_unstable_by(|a, b| b.cmp(a));
    Ok(BlockStructure { total_dim: n, center_dim: b, multiplicities })
}

/// `gram_det` as a polynomial when it is one.
pub fn gram_det_poly(x: &Object) -> Result<MultiPoly, CatError> {
    let d = gram_det(x)?;
    d.as_poly().cloned().ok_or_else(|| CatError::TypeMismatch(format!("Gram determinant {d} is not a polynomial")))
}
