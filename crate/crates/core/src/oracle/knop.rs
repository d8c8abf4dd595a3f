//! Permutation modules of `S_n ⋉ G^n` on `G`-equivariant injections
//! `U -> ⊔_n G` for free `G`-sets `U`.
//!
//! An injection is stored by its values on orbit representatives: a slot in
//! `0..n` and a group element. `G^n` multiplies labels on the left, `G` acts
//! on the right, so a matched pair `(x, y)` has the invariant `g_x^-1 g'_y`.
//! Basis order is labels (lexicographic over `G^u`) then slots, which is
//! exactly `⊕_(G^u) C[inj(u, I)]`.

use std::collections::BTreeMap;

use super::daha::PermSum;
use super::inj::{injections, pattern, WordBasis};
use super::qmat::QMatrix;
use super::wreath::WreathRep;
use super::OracleError;
use crate::exactalg::Q;
use crate::recollement::{FiniteGroup, Recollement, Word};

#[derive(Clone, Debug)]
pub struct GBasis {
    pub orbits: usize,
    pub n: usize,
    pub group_order: usize,
    slots: Vec<Vec<u8>>,
}

/// All label tuples in `G^len`, lexicographic.
pub fn label_tuples(len: usize, order: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..order).map(move |g| {
                    let mut t = t.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

fn label_index(labels: &[usize], order: usize) -> usize {
    labels.iter().fold(0, |acc, &g| acc * order + g)
}

impl GBasis {
    pub fn new(orbits: usize, n: usize, group_order: usize) -> Self {
        GBasis { orbits, n, group_order, slots: injections(orbits, n) }
    }

    pub fn dim(&self) -> usize {
        self.group_order.pow(self.orbits as u32) * self.slots.len()
    }

    pub fn elem(&self, i: usize) -> (Vec<usize>, &[u8]) {
        let per = self.slots.len();
        let mut li = i / per;
        let mut labels = vec![0; self.orbits];
        for k in (0..self.orbits).rev() {
            labels[k] = li % self.group_order;
            li /= self.group_order;
        }
        (labels, &self.slots[i % per])
    }

    pub fn index_of(&self, labels: &[usize], slots: &[u8]) -> Option<usize> {
        let s = self.slots.binary_search_by(|x| x.as_slice().cmp(slots)).ok()?;
        Some(label_index(labels, self.group_order) * self.slots.len() + s)
    }

    /// The same space as a sum of `|G|^u` copies of `C[inj(u, I)]`.
    pub fn as_perm_sum(&self) -> PermSum {
        let wb = WordBasis::new(&Word::single(self.orbits), self.n);
        PermSum::new(self.n, vec![wb; self.group_order.pow(self.orbits as u32)])
    }
}

/// The labelled recollement induced by a pair of equivariant injections.
pub fn g_pattern(group: &FiniteGroup, src: (&[usize], &[u8]), tgt: (&[usize], &[u8])) -> Recollement {
    let mut buf = src.1.to_vec();
    buf.extend_from_slice(tgt.1);
    let base = Recollement::from_diagram(&pattern(&buf), src.1.len(), tgt.1.len()).expect("injective tuples");
    let labels = base.matches().iter().map(|&(x, y)| group.mul(group.inv(src.0[x]), tgt.0[y])).collect();
    Recollement::new(base.src(), base.tgt(), base.matches().to_vec(), Some(labels)).expect("valid labels")
}

/// 0/1 matrix of `(C)_G`.
pub fn realize_grec(c: &Recollement, group: &FiniteGroup, n: usize) -> QMatrix {
    let g = group.order();
    let src = GBasis::new(c.src(), n, g);
    let tgt = GBasis::new(c.tgt(), n, g);
    let mut triples = Vec::new();
    for j in 0..src.dim() {
        let (ls, vs) = src.elem(j);
        for i in 0..tgt.dim() {
            let (lt, vt) = tgt.elem(i);
            if g_pattern(group, (&ls, vs), (&lt, vt)) == *c {
                triples.push((i, j, Q::from_integer(1.into())));
            }
        }
    }
    QMatrix::from_triples(tgt.dim(), src.dim(), triples)
}

/// Integer coefficients of `(D)_G ∘ (C)_G` at rank `n`, counted on one
/// representative pair of injections per result.
pub fn verify_g_composition(
    c: &Recollement,
    d: &Recollement,
    group: &FiniteGroup,
    n: usize,
) -> Result<BTreeMap<Recollement, i64>, OracleError> {
    if c.tgt() != d.src() {
        return Err(OracleError::TypeMismatch(format!("{} != {}", c.tgt(), d.src())));
    }
    let needed = c.src() + d.tgt();
    if n < needed {
        return Err(OracleError::BasisNotIndependent { n, needed });
    }
    let g = group.order();
    let mid = GBasis::new(c.tgt(), n, g);
    let mut out = BTreeMap::new();
    for e in crate::recollement::enumerate(c.src(), d.tgt(), Some(g)) {
        let (su, sw) = (c.src(), d.tgt());
        let mut src_slots: Vec<u8> = (0..su as u8).collect();
        let mut tgt_slots: Vec<u8> = vec![0; sw];
        let mut tgt_labels = vec![0; sw];
        let mut next = su as u8;
        for (k, &(x, z)) in e.matches().iter().enumerate() {
            tgt_slots[z] = x as u8;
            tgt_labels[z] = e.labels().unwrap()[k];
        }
        for z in 0..sw {
            if e.partner_of_tgt(z).is_none() {
                tgt_slots[z] = next;
                next += 1;
            }
        }
        let src_labels = vec![0; su];
        src_slots.truncate(su);
        let mut count = 0i64;
        for i in 0..mid.dim() {
            let (lm, vm) = mid.elem(i);
            if g_pattern(group, (&src_labels, &src_slots), (&lm, vm)) == *c
                && g_pattern(group, (&lm, vm), (&tgt_labels, &tgt_slots)) == *d
            {
                count += 1;
            }
        }
        if count != 0 {
            out.insert(e, count);
        }
    }
    Ok(out)
}

/// The `k[G]`-wreath module on `inj_G(U, ⊔_n G)`: slot `i` with group
/// element `h` multiplies the label of the orbit sent to `i` by `h`.
pub fn knop_wreath_rep(group: &FiniteGroup, orbits: usize, n: usize) -> WreathRep {
    let g = group.order();
    let basis = GBasis::new(orbits, n, g);
    let dim = basis.dim();
    let y = (0..n)
        .map(|slot| {
            (0..g)
                .map(|h| {
                    let images: Vec<usize> = (0..dim)
                        .map(|j| {
                            let (mut labels, vals) = basis.elem(j);
                            if let Some(x) = vals.iter().position(|&v| v as usize == slot) {
                                labels[x] = group.mul(h, labels[x]);
                            }
                            basis.index_of(&labels, vals).unwrap()
                        })
                        .collect();
                    QMatrix::permutation(&images)
                })
                .collect()
        })
        .collect();
    WreathRep { space: basis.as_perm_sum(), e: QMatrix::identity(dim), y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{qi, T};
    use crate::wreath::FinAlgebra;

    #[test]
    fn free_orbit_count() {
        for n in 1..=5 {
            assert_eq!(GBasis::new(1, n, 2).dim(), 2 * n);
            assert_eq!(GBasis::new(1, n, 3).dim(), 3 * n);
        }
    }

    #[test]
    fn unit_counit_scalar() {
        let g = FiniteGroup::cyclic(2);
        for n in 2..=4 {
            let eta = Recollement::new(0, 1, vec![], Some(vec![])).unwrap();
            let eps = Recollement::new(1, 0, vec![], Some(vec![])).unwrap();
            let r = verify_g_composition(&eta, &eps, &g, n).unwrap();
            assert_eq!(r.values().copied().collect::<Vec<_>>(), vec![2 * n as i64]);
        }
    }

    #[test]
    fn labelled_composition_matches_patterns() {
        let g = FiniteGroup::cyclic(2);
        for (j, k, l) in [(1, 1, 1), (1, 2, 1), (2, 1, 2), (0, 2, 1)] {
            for c in crate::recollement::enumerate(j, k, Some(2)) {
                for d in crate::recollement::enumerate(k, l, Some(2)) {
                    let n = j + l + 1;
                    let got = verify_g_composition(&c, &d, &g, n).unwrap();
                    let mut expect: BTreeMap<Recollement, i64> = BTreeMap::new();
                    for p in crate::recollement::compose_patterns(&c, &d, Some(&g)).unwrap() {
                        let v = p.coefficient(2).eval_var(T, &qi(n as i64));
                        let v = v.constant_value().unwrap();
                        *expect.entry(p.result).or_default() += v.to_integer().try_into().unwrap_or(0i64);
                    }
                    expect.retain(|_, v| *v != 0);
                    assert_eq!(got, expect, "{c:?} {d:?}");
                }
            }
        }
    }

    #[test]
    fn realization_is_equivariant() {
        let g = FiniteGroup::cyclic(2);
        let n = 3;
        let alg = FinAlgebra::group_algebra(&g);
        for c in crate::recollement::enumerate(1, 2, Some(2)) {
            let m = realize_grec(&c, &g, n);
            let src = knop_wreath_rep(&g, 1, n);
            let tgt = knop_wreath_rep(&g, 2, n);
            src.check_relations(&alg).unwrap();
            tgt.check_relations(&alg).unwrap();
            for slot in 0..n {
                assert_eq!(m.mul(&src.y[slot][1]), tgt.y[slot][1].mul(&m));
            }
        }
    }
}
