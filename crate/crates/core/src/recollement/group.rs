//! Finite groups given by a multiplication table.

use serde::{Deserialize, Serialize};

use super::RecError;

/// Elements are `0..order`; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub names: Vec<String>,
    /// `table[a][b] = a * b`.
    pub table: Vec<Vec<usize>>,
}

pub const MAX_GROUP_ORDER: usize = 24;

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, RecError> {
        let n = names.len();
        if n == 0 || n > MAX_GROUP_ORDER {
            return Err(RecError::BadGroup(format!("order {n} outside 1..={MAX_GROUP_ORDER}")));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(RecError::BadGroup("table is not n x n over 0..n".into()));
        }
        let g = FiniteGroup { names, table };
        for a in 0..n {
            if g.mul(0, a) != a || g.mul(a, 0) != a {
                return Err(RecError::BadGroup("element 0 is not the identity".into()));
            }
            let mut row: Vec<usize> = g.table[a].clone();
            row.sort_unstable();
            if row != (0..n).collect::<Vec<_>>() {
                return Err(RecError::BadGroup(format!("row {a} is not a permutation")));
            }
            for b in 0..n {
                for c in 0..n {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return Err(RecError::BadGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup { names, table }
    }

    /// The symmetric group on three letters, elements in lexicographic order
    /// of their one-line notation.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let names = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        FiniteGroup { names, table }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).expect("group inverse")
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_are_groups() {
        for g in [FiniteGroup::cyclic(1), FiniteGroup::cyclic(4), FiniteGroup::s3()] {
            let checked = FiniteGroup::new(g.names.clone(), g.table.clone()).unwrap();
            assert_eq!(checked, g);
        }
        assert!(!FiniteGroup::s3().is_abelian());
        assert_eq!(FiniteGroup::cyclic(5).inv(2), 3);
    }

    #[test]
    fn rejects_non_groups() {
        let names = vec!["e".to_string(), "x".to_string()];
        assert!(FiniteGroup::new(names, vec![vec![0, 1], vec![1, 1]]).is_err());
    }
}
