//! Specialization at `T = n` followed by realization in the permutation
//! modules `⊕_i C[inj(w_i, 0..n)]`.

use std::collections::BTreeMap;

use super::morphism::Morphism;
use super::CatError;
use crate::exactalg::{Q, T};
use crate::oracle::{realize_lincomb, QMatrix, WordBasis};
use crate::recollement::Word;

/// Bases of the summands and their offsets in the direct sum.
pub fn sum_basis(words: &[Word], n: usize) -> (Vec<WordBasis>, Vec<usize>) {
    let bases: Vec<WordBasis> = words.iter().map(|w| WordBasis::new(w, n)).collect();
    let mut offsets = Vec::with_capacity(bases.len() + 1);
    let mut acc = 0;
    for b in &bases {
        offsets.push(acc);
        acc += b.dim();
    }
    offsets.push(acc);
    (bases, offsets)
}

/// The matrix of `f` at `T = n`. Fails if `f` has a pole at `n` or depends on
/// other parameters.
pub fn realize(f: &Morphism, n: usize) -> Result<QMatrix, CatError> {
    let g = f.specialize(&[(T, Q::from_integer(n.into()))])?;
    let (sb, so) = sum_basis(&g.src, n);
    let (tb, to) = sum_basis(&g.tgt, n);
    let mut triples = Vec::new();
    for (t, row) in g.blocks.iter().enumerate() {
        for (s, lc) in row.iter().enumerate() {
            let mut terms = BTreeMap::new();
            for (d, c) in lc {
                let c = c.constant_value().ok_or_else(|| CatError::TypeMismatch(format!("coefficient {c} is not a number")))?;
                terms.insert(d.clone(), c);
            }
            let m = realize_lincomb(&terms, &sb[s], &tb[t]);
            for i in 0..m.rows() {
                for (j, v) in m.row(i) {
                    triples.push((to[t] + i, so[s] + j, v.clone()));
                }
            }
        }
    }
    Ok(QMatrix::from_triples(to[tb.len()], so[sb.len()], triples))
}
