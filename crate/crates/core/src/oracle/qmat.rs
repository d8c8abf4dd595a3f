//! Sparse exact matrices over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactalg::Q;

/// Row-sparse matrix; each row holds `(column, value)` with nonzero values,
/// sorted by column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Q)>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, Q::one())]).collect() }
    }

    pub fn scalar(n: usize, c: &Q) -> Self {
        Self::identity(n).scale(c)
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        QMatrix { rows: r, cols: c, data }
    }

    /// Build from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in triples {
            assert!(i < rows && j < cols, "entry out of range");
            *acc[i].entry(j).or_insert_with(Q::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        QMatrix { rows, cols, data }
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        Self::from_triples(perm.len(), perm.len(), perm.iter().enumerate().map(|(j, &i)| (i, j, Q::one())))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.data[i][k].1.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn row(&self, i: usize) -> &[(usize, Q)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        *acc.entry(*j).or_insert_with(Q::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        QMatrix { rows: self.rows, cols: other.cols, data }
    }

    fn combine(&self, other: &QMatrix, sign: &Q) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Q> = a.iter().cloned().collect();
                for (j, v) in b {
                    *acc.entry(*j).or_insert_with(Q::zero) += v * sign;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        self.combine(other, &Q::one())
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        self.combine(other, &-Q::one())
    }

    pub fn scale(&self, c: &Q) -> QMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect()).collect(),
        }
    }

    pub fn transpose(&self) -> QMatrix {
        let mut data: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        QMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &QMatrix) -> QMatrix {
        let mut data = self.data.clone();
        data.extend(other.data.iter().map(|r| r.iter().map(|(j, v)| (j + self.cols, v.clone())).collect()));
        QMatrix { rows: self.rows + other.rows, cols: self.cols + other.cols, data }
    }

    /// Kronecker product with row index `i * other.rows + k`.
    pub fn kron(&self, other: &QMatrix) -> QMatrix {
        let mut triples = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            for (j, a) in row {
                for (k, orow) in other.data.iter().enumerate() {
                    for (l, b) in orow {
                        triples.push((i * other.rows + k, j * other.cols + l, a * b));
                    }
                }
            }
        }
        Self::from_triples(self.rows * other.rows, self.cols * other.cols, triples)
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let mut colmap = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            colmap[c] = k;
        }
        let data = rows
            .iter()
            .map(|&i| {
                let mut r: Vec<(usize, Q)> = self.data[i]
                    .iter()
                    .filter(|(j, _)| colmap[*j] != usize::MAX)
                    .map(|(j, v)| (colmap[*j], v.clone()))
                    .collect();
                r.sort_by_key(|(j, _)| *j);
                r
            })
            .collect();
        QMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, v)| (j + self.cols, v.clone())));
                r
            })
            .collect();
        QMatrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        let mut e = RowEchelon::new(self.cols);
        for row in &self.data {
            e.insert(row.iter().cloned().collect());
        }
        e.rank()
    }

    /// Basis of `{x : self * x = 0}` as columns of the returned matrix.
    pub fn kernel(&self) -> QMatrix {
        let rref = rref_dense(self.to_dense());
        let mut pivots = Vec::new();
        for row in &rref {
            if let Some(j) = row.iter().position(|v| !v.is_zero()) {
                pivots.push(j);
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut triples = Vec::new();
        for (k, &f) in free.iter().enumerate() {
            triples.push((f, k, Q::one()));
            for (r, &p) in pivots.iter().enumerate() {
                let v = -rref[r][f].clone();
                if !v.is_zero() {
                    triples.push((p, k, v));
                }
            }
        }
        Self::from_triples(self.cols, free.len(), triples)
    }

    /// Column space basis (as columns), picked from the columns of `self`.
    pub fn column_basis(&self) -> QMatrix {
        let t = self.transpose();
        let mut e = RowEchelon::new(t.cols);
        let mut keep = Vec::new();
        for (i, row) in t.data.iter().enumerate() {
            if e.insert(row.iter().cloned().collect()) {
                keep.push(i);
            }
        }
        let all: Vec<usize> = (0..self.rows).collect();
        self.select(&all, &keep)
    }
}

impl QMatrix {
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let aug = self.hcat(&QMatrix::identity(n));
        let r = rref_dense(aug.to_dense());
        if r.len() < n || (0..n).any(|i| r[i][i] != Q::one()) {
            return None;
        }
        Some(QMatrix::from_dense(&r.iter().map(|row| row[n..].to_vec()).collect::<Vec<_>>()))
    }

    /// For an idempotent `self`, a column basis `B` of its image and a left
    /// inverse `L` with `L B = I`. A map preserving the image restricts to `L M B`.
    pub fn image_frame(&self) -> (QMatrix, QMatrix) {
        let b = self.column_basis();
        let bt = b.transpose();
        let gram = bt.mul(&b);
        let l = gram.inverse().expect("column basis has full rank").mul(&bt);
        (b, l)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(crate::exactalg::fmt_rational).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

fn rref_dense(mut m: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    m.truncate(r);
    m
}

/// Incremental sparse echelon basis used for rank and span-closure tests.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    len: usize,
    /// Pivot column -> normalised row with pivot entry 1.
    rows: BTreeMap<usize, BTreeMap<usize, Q>>,
}

impl RowEchelon {
    pub fn new(len: usize) -> Self {
        RowEchelon { len, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    /// Reduce `v` against the basis; returns the remainder.
    pub fn reduce(&self, mut v: BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        loop {
            let Some((col, c)) = v
                .iter()
                .find(|(j, _)| self.rows.contains_key(j))
                .map(|(j, c)| (*j, c.clone()))
            else {
                return v;
            };
            for (j, b) in &self.rows[&col] {
                let e = v.entry(*j).or_insert_with(Q::zero);
                *e -= &c * b;
                if e.is_zero() {
                    v.remove(j);
                }
            }
        }
    }

    /// Add `v` to the span; true if it was independent.
    pub fn insert(&mut self, v: BTreeMap<usize, Q>) -> bool {
        let v: BTreeMap<usize, Q> = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let r = self.reduce(v);
        let Some((&p, c)) = r.iter().next() else { return false };
        let inv = c.recip();
        let r: BTreeMap<usize, Q> = r.into_iter().map(|(j, x)| (j, x * &inv)).collect();
        // Keep the basis fully reduced at the new pivot.
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&p).cloned() {
                for (j, b) in &r {
                    let e = row.entry(*j).or_insert_with(Q::zero);
                    *e -= &f * b;
                    if e.is_zero() {
                        row.remove(j);
                    }
                }
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, v: BTreeMap<usize, Q>) -> bool {
        self.reduce(v).is_empty()
    }
}

fn flatten(m: &QMatrix) -> BTreeMap<usize, Q> {
    let mut out = BTreeMap::new();
    for i in 0..m.rows() {
        for (j, v) in m.row(i) {
            out.insert(i * m.cols() + j, v.clone());
        }
    }
    out
}

/// Dimension of the unital algebra generated by `mats` (all `d x d`).
pub fn generated_algebra_dim(mats: &[QMatrix], d: usize) -> usize {
    let mut basis = RowEchelon::new(d * d);
    let mut elems = vec![QMatrix::identity(d)];
    basis.insert(flatten(&elems[0]));
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in mats {
                let p = a.mul(g);
                if basis.insert(flatten(&p)) {
                    next.push(p);
                }
            }
        }
        elems.extend(next.iter().cloned());
        frontier = next;
        if basis.rank() == d * d {
            break;
        }
    }
    basis.rank()
}

/// Burnside's criterion: the module is simple iff its matrices generate all of `M_d`.
pub fn simplicity_burnside(mats: &[QMatrix], d: usize) -> bool {
    generated_algebra_dim(mats, d) == d * d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;

    #[test]
    fn burnside_examples() {
        assert!(simplicity_burnside(&[QMatrix::identity(1)], 1));
        assert!(!simplicity_burnside(&[QMatrix::identity(2)], 2));
        let swap = QMatrix::permutation(&[1, 0]);
        let diag = QMatrix::from_dense(&[vec![qi(1), qi(0)], vec![qi(0), qi(2)]]);
        assert!(simplicity_burnside(&[swap.clone(), diag], 2));
        assert!(!simplicity_burnside(&[swap], 2));
    }

    #[test]
    fn kernel_and_rank() {
        let m = QMatrix::from_dense(&[vec![qi(1), qi(2), qi(3)], vec![qi(2), qi(4), qi(6)]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn kron_and_products() {
        let p = QMatrix::permutation(&[1, 2, 0]);
        assert_eq!(p.mul(&p).mul(&p), QMatrix::identity(3));
        let k = QMatrix::identity(2).kron(&p);
        assert_eq!(k.rows(), 6);
        assert_eq!(k.get(4, 3), qi(1));
    }
}
