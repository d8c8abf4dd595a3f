//! Honest modules over the degenerate affine Hecke algebra `H_n`.
//!
//! `H_n` is generated by `S_n` and `y_0, ..., y_{n-1}` with
//! `σ y_i σ^-1 = y_σ(i)` and `[y_i, y_j] = ¼ Σ_k ((i j k) - (j i k))`, where
//! `(i j k)` sends `i -> j -> k -> i`. The alternative generators
//! `x_i = y_i - ½ Σ_l sgn(i - l) (i l)` satisfy `x_i s_i = s_i x_(i+1) + 1`.
//! Modules are always carried by sums of permutation modules together with an
//! `S_n`-equivariant idempotent cutting out the actual module.

use num_traits::{One, Zero};

use super::inj::WordBasis;
use super::qmat::{simplicity_burnside, QMatrix};
use super::OracleError;
use crate::exactalg::{q, Q};
use crate::recollement::Word;

/// Direct sum of permutation modules over the same `n`.
#[derive(Clone, Debug)]
pub struct PermSum {
    pub n: usize,
    pub parts: Vec<WordBasis>,
    offsets: Vec<usize>,
}

impl PermSum {
    pub fn new(n: usize, parts: Vec<WordBasis>) -> Self {
        assert!(parts.iter().all(|p| p.n == n), "all parts must share n");
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for p in &parts {
            offsets.push(acc);
            acc += p.dim();
        }
        PermSum { n, parts, offsets }
    }

    pub fn of_words(words: &[Word], n: usize) -> Self {
        Self::new(n, words.iter().map(|w| WordBasis::new(w, n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(WordBasis::dim).sum()
    }

    pub fn offset(&self, part: usize) -> usize {
        self.offsets[part]
    }

    pub fn locate(&self, global: usize) -> (usize, usize) {
        let part = self.offsets.partition_point(|&o| o <= global) - 1;
        (part, global - self.offsets[part])
    }

    pub fn perm_matrix(&self, sigma: &[usize]) -> QMatrix {
        let mut m = QMatrix::zeros(0, 0);
        for p in &self.parts {
            m = m.direct_sum(&p.perm_matrix(sigma));
        }
        m
    }

    pub fn transposition(&self, i: usize, j: usize) -> QMatrix {
        let mut sigma: Vec<usize> = (0..self.n).collect();
        sigma.swap(i, j);
        self.perm_matrix(&sigma)
    }
}

/// An `H_n`-module: the image of `e` inside a permutation sum, with `y_k`
/// given as ambient matrices satisfying `y_k = e y_k e`.
#[derive(Clone, Debug)]
pub struct DahaRep {
    pub space: PermSum,
    pub e: QMatrix,
    pub y: Vec<QMatrix>,
}

fn sgn(a: usize, b: usize) -> Q {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => -Q::one(),
        std::cmp::Ordering::Equal => Q::zero(),
        std::cmp::Ordering::Greater => Q::one(),
    }
}

/// The 3-cycle `i -> j -> k -> i` acting on `space`, as `(i k)(i j)`.
fn three_cycle(space: &PermSum, i: usize, j: usize, k: usize) -> QMatrix {
    space.transposition(i, k).mul(&space.transposition(i, j))
}

impl DahaRep {
    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn dim(&self) -> usize {
        self.e.rank()
    }

    /// Check all defining relations on the image of `e`.
    pub fn check_relations(&self) -> Result<(), OracleError> {
        let n = self.n();
        let e = &self.e;
        if e.mul(e) != *e {
            return Err(OracleError::RelationViolated("e is not idempotent".into()));
        }
        let trans: Vec<Vec<QMatrix>> =
            (0..n).map(|i| (0..n).map(|j| self.space.transposition(i, j)).collect()).collect();
        for i in 0..n.saturating_sub(1) {
            if trans[i][i + 1].mul(e) != e.mul(&trans[i][i + 1]) {
                return Err(OracleError::RelationViolated(format!("e does not commute with s_{i}")));
            }
        }
        for k in 0..n {
            if e.mul(&self.y[k]).mul(e) != self.y[k] {
                return Err(OracleError::RelationViolated(format!("y_{k} leaves the module")));
            }
        }
        for i in 0..n.saturating_sub(1) {
            let s = &trans[i][i + 1];
            for k in 0..n {
                let sk = if k == i { i + 1 } else if k == i + 1 { i } else { k };
                if s.mul(&self.y[k]).mul(s) != self.y[sk] {
                    return Err(OracleError::RelationViolated(format!("s_{i} y_{k} s_{i} != y_{sk}")));
                }
            }
        }
        let quarter = q(1, 4);
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.y[i].commutator(&self.y[j]);
                let mut rhs = QMatrix::zeros(e.rows(), e.cols());
                for k in (0..n).filter(|&k| k != i && k != j) {
                    rhs = rhs.add(&three_cycle(&self.space, i, j, k).sub(&three_cycle(&self.space, j, i, k)));
                }
                let rhs = rhs.scale(&quarter).mul(e);
                if lhs != rhs {
                    return Err(OracleError::RelationViolated(format!("[y_{i}, y_{j}] relation fails")));
                }
            }
        }
        Ok(())
    }

    /// Generators `s_i` and `y_k` restricted to the module, in a basis of its image.
    pub fn restricted_generators(&self) -> Vec<QMatrix> {
        let (b, l) = self.e.image_frame();
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n.saturating_sub(1) {
            out.push(l.mul(&self.space.transposition(i, i + 1)).mul(&b));
        }
        for k in 0..n {
            out.push(l.mul(&self.y[k]).mul(&b));
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        let d = self.dim();
        if d == 0 {
            return false;
        }
        simplicity_burnside(&self.restricted_generators(), d)
    }

    /// `x_k = y_k - ½ Σ_l sgn(k - l) (k l)` on the ambient space.
    pub fn x(&self, k: usize) -> QMatrix {
        let mut m = self.y[k].clone();
        for l in 0..self.n() {
            if l != k {
                m = m.sub(&self.space.transposition(k, l).scale(&(sgn(k, l) * q(1, 2))));
            }
        }
        m
    }
}

/// The evaluation module `ev_a(V)`: `y_k = a + ½ Σ_(j != k) (k j)` on the
/// image of `e` in `space`.
pub fn ev_rep(a: &Q, space: PermSum, e: QMatrix) -> DahaRep {
    let n = space.n;
    let dim = space.dim();
    let half = q(1, 2);
    let y = (0..n)
        .map(|k| {
            let mut m = QMatrix::scalar(dim, a);
            for j in (0..n).filter(|&j| j != k) {
                m = m.add(&space.transposition(k, j).scale(&half));
            }
            e.mul(&m).mul(&e)
        })
        .collect();
    DahaRep { space, e, y }
}

/// Reduced word `[i_1, ..., i_r]` with `w = s_(i_1) ∘ ... ∘ s_(i_r)`.
pub fn reduced_word(w: &[usize]) -> Vec<usize> {
    let mut cur = w.to_vec();
    let mut rev = Vec::new();
    while let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
        cur.swap(i, i + 1);
        rev.push(i);
    }
    rev.reverse();
    rev
}

fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn simple(i: usize, n: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).collect();
    s.swap(i, i + 1);
    s
}

/// `x_k w = w x_(k') + Σ c_u u` for `w` given by a reduced word; returns `k'`
/// and the correction terms.
fn push_x(k: usize, word: &[usize], n: usize) -> (usize, Vec<(Q, Vec<usize>)>) {
    let Some((&i, rest)) = word.split_first() else {
        return (k, Vec::new());
    };
    let rest_perm = rest.iter().fold((0..n).collect::<Vec<_>>(), |acc, &j| compose_perm(&acc, &simple(j, n)));
    let c = if k == i { Q::one() } else if k == i + 1 { -Q::one() } else { Q::zero() };
    let k1 = if k == i { i + 1 } else if k == i + 1 { i } else { k };
    let (kf, inner) = push_x(k1, rest, n);
    let s = simple(i, n);
    let mut extras: Vec<(Q, Vec<usize>)> = inner.into_iter().map(|(c, u)| (c, compose_perm(&s, &u))).collect();
    if !c.is_zero() {
        extras.push((c, rest_perm));
    }
    (kf, extras)
}

/// Basis of `ind (X ⊠ Y)` for `X` on a permutation sum at rank `m` and `Y` on
/// copies of `C[inj(J, J)]`: tuples `w ∘ (f ⊔ σ)` with `w` a shuffle.
pub struct InducedBasis {
    pub space: PermSum,
    pub m: usize,
    /// Per global index: the shuffle `w`, its reduced word, and the indices of
    /// `f` and `σ` in the two factor spaces.
    pub entries: Vec<(Vec<usize>, Vec<usize>, usize, usize)>,
    a_space: PermSum,
    b_space: PermSum,
}

impl InducedBasis {
    pub fn new(a_space: &PermSum, b_space: &PermSum) -> Result<Self, OracleError> {
        let m = a_space.n;
        let nb = b_space.n;
        if b_space.parts.iter().any(|p| p.word != Word::single(nb)) {
            return Err(OracleError::TypeMismatch("induction needs the second factor on copies of C[inj(J, J)]".into()));
        }
        let total = m + nb;
        let mut parts = Vec::new();
        for pa in &a_space.parts {
            for _ in &b_space.parts {
                parts.push(WordBasis::induced(&pa.word, nb, total));
            }
        }
        let space = PermSum::new(total, parts);
        let nparts_b = b_space.parts.len();
        let mut entries = Vec::with_capacity(space.dim());
        for g in 0..space.dim() {
            let (part, local) = space.locate(g);
            let (sa, sb) = (part / nparts_b, part % nparts_b);
            let p = &space.parts[part].elems[local];
            let split = p.len() - nb;
            let mut jset: Vec<usize> = p[split..].iter().map(|&v| v as usize).collect();
            jset.sort_unstable();
            let iset: Vec<usize> = (0..total).filter(|v| !jset.contains(v)).collect();
            let w: Vec<usize> = iset.iter().chain(jset.iter()).copied().collect();
            let mut winv = vec![0; total];
            for (x, &wx) in w.iter().enumerate() {
                winv[wx] = x;
            }
            let f: Vec<u8> = p[..split].iter().map(|&v| winv[v as usize] as u8).collect();
            let sigma: Vec<u8> = p[split..].iter().map(|&v| (winv[v as usize] - m) as u8).collect();
            let a_idx = a_space.offset(sa) + a_space.parts[sa].index_of(&f).expect("head lies in I");
            let b_idx = b_space.offset(sb) + b_space.parts[sb].index_of(&sigma).expect("tail is a bijection of J");
            entries.push((w.clone(), reduced_word(&w), a_idx, b_idx));
        }
        Ok(InducedBasis { space, m, entries, a_space: a_space.clone(), b_space: b_space.clone() })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Global index of `w ∘ (f ⊔ σ)`.
    pub fn embed(&self, w: &[usize], a_idx: usize, b_idx: usize) -> usize {
        let (sa, fa) = self.a_space.locate(a_idx);
        let (sb, fb) = self.b_space.locate(b_idx);
        let f = &self.a_space.parts[sa].elems[fa];
        let sigma = &self.b_space.parts[sb].elems[fb];
        let p: Vec<u8> = f
            .iter()
            .map(|&v| w[v as usize] as u8)
            .chain(sigma.iter().map(|&v| w[v as usize + self.m] as u8))
            .collect();
        let part = sa * self.b_space.parts.len() + sb;
        self.space.offset(part) + self.space.parts[part].index_of(&p).expect("image is a basis tuple")
    }

    /// `X ⊠ Y`-operator `op_a ⊗ op_b` transported along the shuffles.
    pub fn transport(&self, op_a: &QMatrix, op_b: &QMatrix) -> QMatrix {
        let ca = columns(op_a);
        let cb = columns(op_b);
        let mut triples = Vec::new();
        for (g, (w, _, a_idx, b_idx)) in self.entries.iter().enumerate() {
            for (ia, x) in &ca[*a_idx] {
                for (ib, y) in &cb[*b_idx] {
                    triples.push((self.embed(w, *ia, *ib), g, x * y));
                }
            }
        }
        QMatrix::from_triples(self.dim(), self.dim(), triples)
    }
}

/// Nonzero entries of every column.
pub fn columns(m: &QMatrix) -> Vec<Vec<(usize, Q)>> {
    let mut out = vec![Vec::new(); m.cols()];
    for i in 0..m.rows() {
        for (j, v) in m.row(i) {
            out[*j].push((i, v.clone()));
        }
    }
    out
}

/// `ind_(H_m ⊗ H_n)^(H_(m+n)) (A ⊠ B)` computed from the PBW basis.
///
/// `b` must be carried by copies of `C[inj(J, J)]` (words `(n)`). The result
/// lives on `C[inj(U ⊔ J, I ⊔ J)]` for each pair of summands, with the
/// basis vector `w ⊗ (f, σ)` identified with the tuple `w ∘ (f ⊔ σ)`.
pub fn induce_rep(a: &DahaRep, b: &DahaRep) -> Result<DahaRep, OracleError> {
    let basis = InducedBasis::new(&a.space, &b.space)?;
    let (m, nb) = (a.n(), b.n());
    let total = m + nb;
    let e = basis.transport(&a.e, &b.e);
    let xa: Vec<Vec<Vec<(usize, Q)>>> = (0..m).map(|k| columns(&a.x(k))).collect();
    let xb: Vec<Vec<Vec<(usize, Q)>>> = (0..nb).map(|k| columns(&b.x(k))).collect();
    let mut y = Vec::with_capacity(total);
    for k in 0..total {
        let mut triples = Vec::new();
        for (g, (w, word, a_idx, b_idx)) in basis.entries.iter().enumerate() {
            let (kp, extras) = push_x(k, word, total);
            if kp < m {
                for (ia, c) in &xa[kp][*a_idx] {
                    triples.push((basis.embed(w, *ia, *b_idx), g, c.clone()));
                }
            } else {
                for (ib, c) in &xb[kp - m][*b_idx] {
                    triples.push((basis.embed(w, *a_idx, *ib), g, c.clone()));
                }
            }
            for (c, u) in extras {
                triples.push((basis.embed(&u, *a_idx, *b_idx), g, c));
            }
        }
        let mut xk = QMatrix::from_triples(basis.dim(), basis.dim(), triples);
        for l in (0..total).filter(|&l| l != k) {
            xk = xk.add(&basis.space.transposition(k, l).scale(&(sgn(k, l) * q(1, 2))));
        }
        y.push(e.mul(&xk).mul(&e));
    }
    Ok(DahaRep { space: basis.space, e, y })
}

/// Symmetrizer `(1/n!) Σ σ` on copies of `C[inj(J, J)]`, acting on the right
/// (on the `J` side): it commutes with the left `S_n` action and cuts each
/// copy down to the trivial module.
pub fn right_symmetrizer(space: &PermSum) -> QMatrix {
    let n = space.n;
    let perms = crate::recollement::combinat::permutations(n);
    let scale = Q::one() / crate::exactalg::rational::factorial(n);
    let mut triples = Vec::new();
    for (pi, part) in space.parts.iter().enumerate() {
        let off = space.offset(pi);
        for (j, f) in part.elems.iter().enumerate() {
            for tau in &perms {
                let g: Vec<u8> = tau.iter().map(|&t| f[t]).collect();
                triples.push((off + part.index_of(&g).unwrap(), off + j, scale.clone()));
            }
        }
    }
    QMatrix::from_triples(space.dim(), space.dim(), triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;

    fn trivial_ev(n: usize, a: Q) -> DahaRep {
        let space = PermSum::of_words(&[Word::unit()], n);
        let e = QMatrix::identity(1);
        ev_rep(&a, space, e)
    }

    #[test]
    fn evaluation_modules_satisfy_relations() {
        for n in 1..=4 {
            let r = trivial_ev(n, qi(2));
            r.check_relations().unwrap();
            // y acts on the trivial module by a + (n - 1)/2.
            assert_eq!(r.y[0], QMatrix::scalar(1, &(qi(2) + q(n as i64 - 1, 2))));
        }
        let space = PermSum::of_words(&[Word::single(1)], 4);
        let dim = space.dim();
        ev_rep(&q(1, 3), space, QMatrix::identity(dim)).check_relations().unwrap();
        let space = PermSum::of_words(&[Word::new(vec![1, 1])], 3);
        let dim = space.dim();
        ev_rep(&qi(0), space, QMatrix::identity(dim)).check_relations().unwrap();
    }

    #[test]
    fn scaled_y_breaks_relations() {
        let space = PermSum::of_words(&[Word::single(1)], 3);
        let dim = space.dim();
        let mut r = ev_rep(&qi(1), space, QMatrix::identity(dim));
        r.y = r.y.iter().map(|m| m.scale(&qi(2))).collect();
        assert!(r.check_relations().is_err());
    }

    #[test]
    fn reduced_words_rebuild_permutations() {
        for w in crate::recollement::combinat::permutations(4) {
            let word = reduced_word(&w);
            let rebuilt = word.iter().fold((0..4).collect::<Vec<_>>(), |acc, &i| compose_perm(&acc, &simple(i, 4)));
            assert_eq!(rebuilt, w);
        }
    }

    #[test]
    fn induction_satisfies_relations() {
        for (m, nb) in [(2, 1), (3, 1), (2, 2)] {
            let a = trivial_ev(m, q(1, 3));
            let bspace = PermSum::of_words(&[Word::single(nb)], nb);
            let sym = right_symmetrizer(&bspace);
            let b = ev_rep(&q(-2, 5), bspace, sym);
            b.check_relations().unwrap();
            let ind = induce_rep(&a, &b).unwrap();
            ind.check_relations().unwrap();
            let expect = (1..=m + nb).product::<usize>() / ((1..=m).product::<usize>() * (1..=nb).product::<usize>());
            assert_eq!(ind.dim(), expect);
        }
    }

    #[test]
    fn generic_standard_module_is_simple() {
        let a = trivial_ev(3, qi(0));
        let bspace = PermSum::of_words(&[Word::single(1)], 1);
        let b = ev_rep(&q(7, 3), bspace, QMatrix::identity(1));
        assert!(induce_rep(&a, &b).unwrap().is_simple());
    }
}
