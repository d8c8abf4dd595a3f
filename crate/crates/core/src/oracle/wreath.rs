//! Honest modules over `A_n = S_n ⋉ A^⊗n` on permutation sums.
//!
//! `y[i][b]` is the action of `1 ⊗ .. ⊗ b ⊗ .. ⊗ 1` (basis element `b` in
//! slot `i`) on the ambient space; the module is the image of `e`.

use num_traits::Zero;

use super::daha::{columns, InducedBasis, PermSum};
use super::qmat::{simplicity_burnside, QMatrix};
use super::OracleError;
use crate::exactalg::Q;
use crate::wreath::algebra::FinAlgebra;

#[derive(Clone, Debug)]
pub struct WreathRep {
    pub space: PermSum,
    pub e: QMatrix,
    pub y: Vec<Vec<QMatrix>>,
}

fn lincomb(mats: &[QMatrix], coeffs: &[Q], dim: usize) -> QMatrix {
    let mut out = QMatrix::zeros(dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

impl WreathRep {
    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn dim(&self) -> usize {
        self.e.rank()
    }

    /// Action of an arbitrary algebra element in slot `i`.
    pub fn y_elem(&self, i: usize, a: &[Q]) -> QMatrix {
        lincomb(&self.y[i], a, self.space.dim())
    }

    pub fn check_relations(&self, alg: &FinAlgebra) -> Result<(), OracleError> {
        let n = self.n();
        let d = alg.dim();
        let e = &self.e;
        let fail = |m: String| Err(OracleError::RelationViolated(m));
        if e.mul(e) != *e {
            return fail("e is not idempotent".into());
        }
        let s: Vec<QMatrix> = (0..n.saturating_sub(1)).map(|i| self.space.transposition(i, i + 1)).collect();
        for (i, si) in s.iter().enumerate() {
            if si.mul(e) != e.mul(si) {
                return fail(format!("e does not commute with s_{i}"));
            }
        }
        for i in 0..n {
            if self.y_elem(i, &alg.unit) != *e {
                return fail(format!("y_({i}, 1) is not the identity"));
            }
            for b in 0..d {
                if e.mul(&self.y[i][b]).mul(e) != self.y[i][b] {
                    return fail(format!("y_({i}, {}) leaves the module", alg.basis[b]));
                }
                for (j, sj) in s.iter().enumerate() {
                    let si = if i == j { j + 1 } else if i == j + 1 { j } else { i };
                    if sj.mul(&self.y[i][b]).mul(sj) != self.y[si][b] {
                        return fail(format!("s_{j} y_({i}, {}) s_{j} != y_({si}, {})", alg.basis[b], alg.basis[b]));
                    }
                }
                for c in 0..d {
                    if self.y[i][b].mul(&self.y[i][c]) != self.y_elem(i, &alg.mul[b][c]) {
                        return fail(format!("y_({i}, {}) y_({i}, {}) != y_({i}, product)", alg.basis[b], alg.basis[c]));
                    }
                    for j in (0..n).filter(|&j| j != i) {
                        if !self.y[i][b].commutator(&self.y[j][c]).is_zero() {
                            return fail(format!("slots {i} and {j} do not commute"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn restricted_generators(&self) -> Vec<QMatrix> {
        let (b, l) = self.e.image_frame();
        let mut out: Vec<QMatrix> =
            (0..self.n().saturating_sub(1)).map(|i| l.mul(&self.space.transposition(i, i + 1)).mul(&b)).collect();
        for yi in &self.y {
            for m in yi {
                out.push(l.mul(m).mul(&b));
            }
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        let d = self.dim();
        d > 0 && simplicity_burnside(&self.restricted_generators(), d)
    }
}

/// `V_χ`: every slot acts by the scalar `χ(a)`.
pub fn v_chi_rep(alg: &FinAlgebra, chi: &[Q], space: PermSum, e: QMatrix) -> WreathRep {
    let y = (0..space.n).map(|_| (0..alg.dim()).map(|b| e.scale(&chi[b])).collect()).collect();
    WreathRep { space, e, y }
}

/// Induction from `A_m ⊗ A_nb`; the second factor must live on copies of
/// `C[inj(J, J)]`. Slot actions are transported along the shuffles with no
/// correction terms.
pub fn induce_wreath_rep(alg: &FinAlgebra, a: &WreathRep, b: &WreathRep) -> Result<WreathRep, OracleError> {
    let basis = InducedBasis::new(&a.space, &b.space)?;
    let m = a.n();
    let total = m + b.n();
    let e = basis.transport(&a.e, &b.e);
    let d = alg.dim();
    let cols_a: Vec<Vec<_>> = a.y.iter().map(|yi| yi.iter().map(columns).collect()).collect();
    let cols_b: Vec<Vec<_>> = b.y.iter().map(|yi| yi.iter().map(columns).collect()).collect();
    let mut y = vec![Vec::with_capacity(d); total];
    for (k, yk) in y.iter_mut().enumerate() {
        for c in 0..d {
            let mut triples = Vec::new();
            for (g, (w, _, a_idx, b_idx)) in basis.entries.iter().enumerate() {
                let kp = w.iter().position(|&x| x == k).unwrap();
                if kp < m {
                    for (ia, v) in &cols_a[kp][c][*a_idx] {
                        triples.push((basis.embed(w, *ia, *b_idx), g, v.clone()));
                    }
                } else {
                    for (ib, v) in &cols_b[kp - m][c][*b_idx] {
                        triples.push((basis.embed(w, *a_idx, *ib), g, v.clone()));
                    }
                }
            }
            let op = QMatrix::from_triples(basis.dim(), basis.dim(), triples);
            yk.push(e.mul(&op).mul(&e));
        }
    }
    Ok(WreathRep { space: basis.space, e, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;
    use crate::recollement::{FiniteGroup, Word};

    fn z2() -> FinAlgebra {
        FinAlgebra::group_algebra(&FiniteGroup::cyclic(2))
    }

    #[test]
    fn v_chi_on_trivial() {
        let alg = z2();
        let r = v_chi_rep(&alg, &[qi(1), qi(-1)], PermSum::of_words(&[Word::unit()], 2), QMatrix::identity(1));
        r.check_relations(&alg).unwrap();
        assert_eq!(r.y[0][1], QMatrix::scalar(1, &qi(-1)));
        let mut bad = r.clone();
        bad.y[0][1] = bad.y[0][1].scale(&qi(2));
        assert!(bad.check_relations(&alg).is_err());
    }

    #[test]
    fn induction_dimension_and_relations() {
        let alg = z2();
        let a = v_chi_rep(&alg, &[qi(1), qi(1)], PermSum::of_words(&[Word::unit()], 2), QMatrix::identity(1));
        let b = v_chi_rep(&alg, &[qi(1), qi(-1)], PermSum::of_words(&[Word::single(1)], 1), QMatrix::identity(1));
        let ind = induce_wreath_rep(&alg, &a, &b).unwrap();
        ind.check_relations(&alg).unwrap();
        assert_eq!(ind.dim(), 3);
        assert!(ind.is_simple());
        let alg = FinAlgebra::dual_numbers();
        let a = v_chi_rep(&alg, &[qi(1), qi(0)], PermSum::of_words(&[Word::single(1)], 3), QMatrix::identity(3));
        let b = v_chi_rep(&alg, &[qi(1), qi(0)], PermSum::of_words(&[Word::single(1)], 1), QMatrix::identity(1));
        induce_wreath_rep(&alg, &a, &b).unwrap().check_relations(&alg).unwrap();
    }
}
