//! Permutation modules `C[inj(U_1, I)] ⊗ ... ⊗ C[inj(U_r, I)]` with `I = 0..n`,
//! and the matrices of diagram morphisms acting on them.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::qmat::{QMatrix, RowEchelon};
use super::OracleError;
use crate::exactalg::Q;
use crate::recollement::{Diagram, Recollement, Word};

/// Basis of the permutation module of a word: tuples of values, one injection
/// per factor, in lexicographic order.
#[derive(Clone, Debug)]
pub struct WordBasis {
    pub word: Word,
    pub n: usize,
    pub elems: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

/// Injections `0..k -> 0..n` as value tuples, lexicographic.
pub fn injections(k: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; n];
    fn rec(k: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

impl WordBasis {
    pub fn new(word: &Word, n: usize) -> Self {
        let mut elems: Vec<Vec<u8>> = vec![Vec::new()];
        for &s in word.sizes() {
            let inj = injections(s, n);
            let mut next = Vec::with_capacity(elems.len() * inj.len());
            for e in &elems {
                for f in &inj {
                    let mut v = e.clone();
                    v.extend_from_slice(f);
                    next.push(v);
                }
            }
            elems = next;
        }
        let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        WordBasis { word: word.clone(), n, elems, index }
    }

    /// Tuples of `head ++ (tail)` whose last `tail` values avoid all earlier
    /// values: the basis of `ind(C[inj(head, I)] ⊠ C[inj(J, J)])` with `|J| = tail`.
    pub fn induced(head: &Word, tail: usize, n: usize) -> Self {
        let word = head.concat(&Word::single(tail));
        let split = head.total();
        let full = WordBasis::new(&word, n);
        let elems: Vec<Vec<u8>> = full
            .elems
            .into_iter()
            .filter(|e| e[split..].iter().all(|v| !e[..split].contains(v)))
            .collect();
        let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        WordBasis { word, n, elems, index }
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, e: &[u8]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Matrix of the permutation `sigma` of `I` acting by `f -> sigma ∘ f`.
    pub fn perm_matrix(&self, sigma: &[usize]) -> QMatrix {
        let images: Vec<usize> = self
            .elems
            .iter()
            .map(|e| {
                let img: Vec<u8> = e.iter().map(|&v| sigma[v as usize] as u8).collect();
                self.index[&img]
            })
            .collect();
        QMatrix::permutation(&images)
    }
}

/// Equality pattern of a value tuple, as a diagram.
pub fn pattern(values: &[u8]) -> Diagram {
    Diagram::from_labels(values)
}

/// Matrix of `Σ coeff(D) (D)` from `src` to `tgt`: entry `(g, f)` is the
/// coefficient of the diagram induced by `(f, g)`.
pub fn realize_lincomb(terms: &BTreeMap<Diagram, Q>, src: &WordBasis, tgt: &WordBasis) -> QMatrix {
    let mut triples = Vec::new();
    if terms.is_empty() {
        return QMatrix::zeros(tgt.dim(), src.dim());
    }
    let mut buf: Vec<u8> = Vec::with_capacity(src.word.total() + tgt.word.total());
    for (j, f) in src.elems.iter().enumerate() {
        for (i, g) in tgt.elems.iter().enumerate() {
            buf.clear();
            buf.extend_from_slice(f);
            buf.extend_from_slice(g);
            if let Some(c) = terms.get(&pattern(&buf)) {
                triples.push((i, j, c.clone()));
            }
        }
    }
    QMatrix::from_triples(tgt.dim(), src.dim(), triples)
}

pub fn realize_diagram(d: &Diagram, src: &WordBasis, tgt: &WordBasis) -> QMatrix {
    let mut m = BTreeMap::new();
    m.insert(d.clone(), Q::one());
    realize_lincomb(&m, src, tgt)
}

/// 0/1 matrix of `(C)` on `C[inj(j, I)] -> C[inj(k, I)]`.
pub fn realize_morphism(c: &Recollement, n: usize) -> QMatrix {
    let src = WordBasis::new(&Word::single(c.src()), n);
    let tgt = WordBasis::new(&Word::single(c.tgt()), n);
    realize_diagram(&c.to_diagram(), &src, &tgt)
}

/// A value tuple realising `d`: the points of block `b` take value `b`.
pub fn representative(d: &Diagram) -> Vec<u8> {
    d.labels().to_vec()
}

/// Integer coefficients of `d ∘ c` in the diagram basis at rank `n`, found by
/// counting middle tuples for one representative of each result diagram.
/// Exact because the coefficient is constant on `S_n`-orbits.
pub fn verify_composition_diagrams(
    c: &Diagram,
    d: &Diagram,
    w: &Word,
    w_mid: &Word,
    w_out: &Word,
    n: usize,
) -> Result<BTreeMap<Diagram, i64>, OracleError> {
    if n < w.total() + w_out.total() {
        return Err(OracleError::BasisNotIndependent { n, needed: w.total() + w_out.total() });
    }
    let mid = WordBasis::new(w_mid, n);
    let a = w.total();
    let mut out = BTreeMap::new();
    let mut buf = Vec::new();
    for e in Diagram::enumerate(w, w_out) {
        let rep = representative(&e);
        let (f, h) = rep.split_at(a);
        let mut count = 0i64;
        for g in &mid.elems {
            buf.clear();
            buf.extend_from_slice(f);
            buf.extend_from_slice(g);
            if pattern(&buf) != *c {
                continue;
            }
            buf.clear();
            buf.extend_from_slice(g);
            buf.extend_from_slice(h);
            if pattern(&buf) == *d {
                count += 1;
            }
        }
        if count != 0 {
            out.insert(e, count);
        }
    }
    Ok(out)
}

/// As [`verify_composition_diagrams`] for two-set recollements.
pub fn verify_composition(
    c: &Recollement,
    d: &Recollement,
    n: usize,
) -> Result<BTreeMap<Recollement, i64>, OracleError> {
    if c.tgt() != d.src() {
        return Err(OracleError::TypeMismatch(format!("{} != {}", c.tgt(), d.src())));
    }
    let (w, m, o) = (Word::single(c.src()), Word::single(c.tgt()), Word::single(d.tgt()));
    let raw = verify_composition_diagrams(&c.to_diagram(), &d.to_diagram(), &w, &m, &o, n)?;
    raw.into_iter()
        .map(|(e, k)| Ok((Recollement::from_diagram(&e, c.src(), d.tgt())?, k)))
        .collect()
}

/// Generators of `S_n`: the transposition `(0 1)` and the long cycle.
pub fn sn_generators(n: usize) -> Vec<Vec<usize>> {
    if n < 2 {
        return Vec::new();
    }
    let swap: Vec<usize> = (0..n).map(|i| if i == 0 { 1 } else if i == 1 { 0 } else { i }).collect();
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    vec![swap, cycle]
}

/// Dimension of the space of `S_n`-equivariant maps `src -> tgt`, from the
/// linear system `M[g][f] = M[σg][σf]` over generators `σ`.
pub fn equivariant_hom_dim(src: &WordBasis, tgt: &WordBasis) -> usize {
    let (ds, dt) = (src.dim(), tgt.dim());
    let unknowns = ds * dt;
    let mut ech = RowEchelon::new(unknowns);
    for sigma in sn_generators(src.n) {
        let act = |b: &WordBasis, i: usize| -> usize {
            let img: Vec<u8> = b.elems[i].iter().map(|&v| sigma[v as usize] as u8).collect();
            b.index_of(&img).unwrap()
        };
        let ps: Vec<usize> = (0..ds).map(|f| act(src, f)).collect();
        let pt: Vec<usize> = (0..dt).map(|g| act(tgt, g)).collect();
        for g in 0..dt {
            for f in 0..ds {
                let a = g * ds + f;
                let b = pt[g] * ds + ps[f];
                if a != b {
                    let mut row = BTreeMap::new();
                    row.insert(a, Q::one());
                    row.insert(b, -Q::one());
                    ech.insert(row);
                }
            }
        }
    }
    unknowns - ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;

    #[test]
    fn realize_examples() {
        let id = realize_morphism(&Recollement::identity(1), 3);
        assert_eq!(id, QMatrix::identity(3));
        let disc = realize_morphism(&Recollement::discrete(1, 1), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(disc.get(i, j), if i == j { qi(0) } else { qi(1) });
            }
        }
        let unit = realize_morphism(&Recollement::discrete(0, 1), 3);
        assert_eq!((unit.rows(), unit.cols()), (3, 1));
        assert!((0..3).all(|i| unit.get(i, 0) == qi(1)));
    }

    #[test]
    fn composition_examples() {
        let disc = Recollement::discrete(1, 1);
        let r = verify_composition(&disc, &disc, 5).unwrap();
        assert_eq!(r[&Recollement::identity(1)], 4);
        assert_eq!(r[&disc], 3);
        let r = verify_composition(&Recollement::discrete(0, 1), &Recollement::discrete(1, 0), 7).unwrap();
        assert_eq!(r[&Recollement::discrete(0, 0)], 7);
        assert!(matches!(verify_composition(&disc, &disc, 1), Err(OracleError::BasisNotIndependent { .. })));
    }

    #[test]
    fn hom_dims_count_orbits() {
        for (j, k) in [(1, 1), (1, 2), (2, 2)] {
            for n in 2..=4 {
                let s = WordBasis::new(&Word::single(j), n);
                let t = WordBasis::new(&Word::single(k), n);
                let expect = crate::recollement::enumerate(j, k, None)
                    .iter()
                    .filter(|c| c.ambient_size() <= n)
                    .count();
                assert_eq!(equivariant_hom_dim(&s, &t), expect);
            }
        }
    }
}
