//! Exact linear algebra over the rational-function field.
//!
//! Elimination is fraction free: rows are scaled to polynomial entries and
//! then reduced with Bareiss' exact-division update.

use std::fmt;

use num_traits::{One, Zero};

use super::gcd::{gcd, lcm};
use super::poly::{MultiPoly, Var};
use super::rational::Q;
use super::ratfn::RatFn;
use super::ExactError;

/// Dense matrix of rational functions, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFn>,
}

/// Dense matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MultiPoly>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![RatFn::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFn::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFn>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFn) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFn] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<RatFn>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFn::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * m.cols + j;
                    m.data[idx] += &(a * b);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &RatFn) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[RatFn]) -> Vec<RatFn> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = RatFn::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Substitute `v := value` in every entry; `None` if a denominator vanishes.
    pub fn eval_var(&self, v: Var, value: &Q) -> Option<RatMatrix> {
        let data = self.data.iter().map(|a| a.eval_var(v, value)).collect::<Option<Vec<_>>>()?;
        Some(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Each row multiplied by the lcm of its denominators.
    pub fn clear_denominators(&self) -> (PolyMatrix, Vec<MultiPoly>) {
        let mut data = Vec::with_capacity(self.data.len());
        let mut factors = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut l = MultiPoly::one();
            for a in self.row(i) {
                if !a.den().is_one() {
                    l = lcm(&l, a.den());
                }
            }
            for a in self.row(i) {
                if l.is_one() {
                    data.push(a.num().clone());
                } else {
                    data.push(&a.num().clone() * &l.div_exact(a.den()).expect("lcm divisible"));
                }
            }
            factors.push(l);
        }
        (PolyMatrix { rows: self.rows, cols: self.cols, data }, factors)
    }

    pub fn rank(&self) -> usize {
        self.clear_denominators().0.echelon().pivots.len()
    }

    pub fn det(&self) -> Result<RatFn, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let (pm, factors) = self.clear_denominators();
        let d = pm.det()?;
        let mut denom = MultiPoly::one();
        for f in &factors {
            denom = &denom * f;
        }
        RatFn::new(d, denom)
    }

    pub fn inverse(&self) -> Result<RatMatrix, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, RatFn::one());
        }
        let rref = aug.rref();
        for i in 0..n {
            if rref.get(i, i).is_zero() {
                return Err(ExactError::Singular);
            }
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, rref.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Reduced row echelon form over the function field.
    pub fn rref(&self) -> RatMatrix {
        let (pm, _) = self.clear_denominators();
        let ech = pm.echelon();
        let mut out = Self::zeros(self.rows, self.cols);
        let rank = ech.pivots.len();
        let rows: Vec<Vec<RatFn>> = (0..rank)
            .map(|k| {
                let p = ech.m.get(k, ech.pivots[k]).clone();
                (0..self.cols)
                    .map(|j| RatFn::new(ech.m.get(k, j).clone(), p.clone()).unwrap())
                    .collect()
            })
            .collect();
        let mut rows = rows;
        for k in (0..rank).rev() {
            let pc = ech.pivots[k];
            for i in 0..k {
                let f = rows[i][pc].clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..self.cols {
                    let sub = &f * &rows[k][j];
                    rows[i][j] -= &sub;
                }
            }
        }
        for (k, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                out.set(k, j, v);
            }
        }
        out
    }

    /// Solve `self * x = b`; `None` if inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[RatFn]) -> Option<Vec<RatFn>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let r = aug.rref();
        let mut x = vec![RatFn::zero(); self.cols];
        for i in 0..self.rows {
            let lead = (0..=self.cols).find(|&j| !r.get(i, j).is_zero());
            match lead {
                None => continue,
                Some(j) if j == self.cols => return None,
                Some(j) => x[j] = r.get(i, self.cols).clone(),
            }
        }
        Some(x)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free row echelon form and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub m: PolyMatrix,
    pub pivots: Vec<usize>,
    /// Parity of the row permutation applied.
    pub swaps_odd: bool,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![MultiPoly::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        PolyMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_ratmatrix(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().cloned().map(RatFn::from_poly).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Bareiss elimination. Rows below the rank are zero on return.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut prev = MultiPoly::one();
        let mut pivots = Vec::new();
        let mut swaps_odd = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Prefer the pivot with fewest terms to keep entries small.
            let Some(p) = (r..m.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by_key(|&i| (m.get(i, c).num_terms(), m.get(i, c).total_degree(), i))
            else {
                continue;
            };
            if p != r {
                m.swap_rows(p, r);
                swaps_odd = !swaps_odd;
            }
            let piv = m.get(r, c).clone();
            for i in r + 1..m.rows {
                let lead = m.get(i, c).clone();
                for j in c + 1..m.cols {
                    let a = m.get(i, j);
                    let b = m.get(r, j);
                    let mut v = &piv * a;
                    if !lead.is_zero() && !b.is_zero() {
                        v -= &(&lead * b);
                    }
                    if !prev.is_one() {
                        v = v.div_exact(&prev).expect("Bareiss division is exact");
                    }
                    m.set(i, j, v);
                }
                m.set(i, c, MultiPoly::zero());
            }
            // Rows above the pivot keep their entries; entries left of later
            // pivots in earlier rows are untouched by Bareiss.
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots, swaps_odd }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn det(&self) -> Result<MultiPoly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Ok(MultiPoly::one());
        }
        if let Some(v) = self.single_var() {
            return self.det_by_interpolation(v);
        }
        let e = self.echelon();
        if e.pivots.len() < self.rows {
            return Ok(MultiPoly::zero());
        }
        let d = e.m.get(self.rows - 1, self.cols - 1).clone();
        Ok(if e.swaps_odd { -d } else { d })
    }

    /// The only variable occurring, if there is exactly one.
    fn single_var(&self) -> Option<Var> {
        let mut var = None;
        for p in &self.data {
            for v in p.vars() {
                match var {
                    None => var = Some(v),
                    Some(w) if w != v => return None,
                    _ => {}
                }
            }
        }
        var
    }

    /// Univariate determinant from values at `D + 1` integers, where `D` is
    /// the smaller of the row and column degree bounds.
    fn det_by_interpolation(&self, v: Var) -> Result<MultiPoly, ExactError> {
        let deg = |p: &MultiPoly| p.degree_in(v).unwrap_or(0) as usize;
        let col_bound: usize = (0..self.cols).map(|j| (0..self.rows).map(|i| deg(self.get(i, j))).max().unwrap_or(0)).sum();
        let row_bound: usize = (0..self.rows).map(|i| (0..self.cols).map(|j| deg(self.get(i, j))).max().unwrap_or(0)).sum();
        let bound = col_bound.min(row_bound);
        let samples: Vec<(i64, Q)> = (0..=bound as i64)
            .map(|x| {
                let at = Q::from_integer(x.into());
                let rows: Vec<Vec<Q>> = (0..self.rows)
                    .map(|i| (0..self.cols).map(|j| self.get(i, j).eval_var(v, &at).constant_value().expect("univariate")).collect())
                    .collect();
                (x, det_q(rows))
            })
            .collect();
        super::interp::interpolate_in(v, &samples, bound)
    }

    pub fn eval_var(&self, v: Var, value: &Q) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.eval_var(v, value)).collect(),
        }
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { rows: rows.len(), cols: cols.len(), data }
    }
}

/// Rank and a kernel basis of `m` over the function field.
///
/// Each kernel vector is normalised so its first nonzero entry is 1.
pub fn rank_profile(m: &RatMatrix) -> (usize, Vec<Vec<RatFn>>) {
    let (pm, _) = m.clear_denominators();
    let ech = pm.echelon();
    let rank = ech.pivots.len();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|j| !ech.pivots.contains(j)).collect();
    let mut kernel = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![RatFn::zero(); n];
        x[f] = RatFn::one();
        for k in (0..rank).rev() {
            let pc = ech.pivots[k];
            let mut acc = RatFn::zero();
            for j in pc + 1..n {
                let a = ech.m.get(k, j);
                if !a.is_zero() && !x[j].is_zero() {
                    acc += &x[j].mul_poly(a);
                }
            }
            if !acc.is_zero() {
                let p = RatFn::from_poly(ech.m.get(k, pc).clone());
                x[pc] = -(&acc / &p);
            }
        }
        let first = x.iter().find(|v| !v.is_zero()).cloned().expect("nonzero kernel vector");
        let inv = first.inv().expect("nonzero");
        kernel.push(x.iter().map(|v| v * &inv).collect());
    }
    (rank, kernel)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Gcd of all `r x r` minors: its zero set is where the rank drops below `r`.
pub fn rank_drop_locus(m: &PolyMatrix, r: usize) -> Result<MultiPoly, ExactError> {
    if r == 0 {
        return Ok(MultiPoly::one());
    }
    if r > m.rows() || r > m.cols() {
        return Err(ExactError::GenericRankTooLow { requested: r, rank: m.rank() });
    }
    let mut g = MultiPoly::zero();
    for rs in combinations(m.rows(), r) {
        for cs in combinations(m.cols(), r) {
            let d = m.submatrix(&rs, &cs).det()?;
            if d.is_zero() {
                continue;
            }
            g = gcd(&g, &d);
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    if g.is_zero() {
        return Err(ExactError::GenericRankTooLow { requested: r, rank: m.rank() });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;
    use crate::exactalg::poly::T;

    fn pm(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|s| parse_poly(s).unwrap()).collect()).collect(),
        )
    }

    #[test]
    fn univariate_det_agrees_with_elimination() {
        let m = pm(&[&["T^2 - 1", "3", "T"], &["2*T", "T^3", "1/2"], &["0", "T - 4", "T^2 + 7"]]);
        let e = m.echelon();
        let bareiss = if e.swaps_odd { -e.m.get(2, 2).clone() } else { e.m.get(2, 2).clone() };
        assert_eq!(m.det().unwrap(), bareiss);
        let singular = pm(&[&["T", "T^2"], &["1", "T"]]);
        assert!(singular.det().unwrap().is_zero());
    }

    #[test]
    fn rank_profile_examples() {
        let id = RatMatrix::identity(3);
        let (r, k) = rank_profile(&id);
        assert_eq!((r, k.len()), (3, 0));

        let m = pm(&[&["T", "1"], &["T^2", "T"]]).to_ratmatrix();
        let (r, k) = rank_profile(&m);
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![RatFn::one(), -RatFn::var(T)]]);

        let (r, k) = rank_profile(&RatMatrix::zeros(2, 2));
        assert_eq!((r, k.len()), (0, 2));
    }

    #[test]
    fn rank_drop_examples() {
        let m = pm(&[&["T", "1"], &["0", "T - 3"]]);
        assert_eq!(rank_drop_locus(&m, 2).unwrap(), parse_poly("T^2 - 3*T").unwrap());
        let id = pm(&[&["1", "0"], &["0", "1"]]);
        assert!(rank_drop_locus(&id, 2).unwrap().is_one());
        let deg = pm(&[&["T", "T"], &["T", "T"]]);
        assert!(matches!(rank_drop_locus(&deg, 2), Err(ExactError::GenericRankTooLow { .. })));
    }

    #[test]
    fn det_and_inverse() {
        let m = pm(&[&["T", "1", "0"], &["1", "T", "1"], &["0", "1", "T"]]);
        assert_eq!(m.det().unwrap(), parse_poly("T^3 - 2*T").unwrap());
        let r = m.to_ratmatrix();
        let inv = r.inverse().unwrap();
        assert_eq!(r.mul(&inv), RatMatrix::identity(3));
        let swapped = pm(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(swapped.det().unwrap(), MultiPoly::from_i64(-1));
    }

    #[test]
    fn solve_system() {
        let m = pm(&[&["T", "1"], &["1", "1"]]).to_ratmatrix();
        let b = vec![RatFn::one(), RatFn::zero()];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }
}

/// Determinant of a dense rational matrix by Gaussian elimination.
fn det_q(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..n {
                let x = &f * &m[c][k];
                m[r][k] -= x;
            }
        }
    }
    det
}
