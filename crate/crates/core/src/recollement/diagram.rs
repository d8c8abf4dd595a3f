//! Recollements of several sets at once ("flat" diagrams).
//!
//! A word `(U_1, ..., U_r)` stands for the tensor product `[U_1] ⊗ ... ⊗ [U_r]`;
//! only the sizes matter. A diagram between words `w` and `w'` is a set
//! partition of the points of `w ++ w'` in which no block contains two points of
//! the same factor. These are the recollements of the whole family, and they
//! form a basis of `hom(w, w')`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::combinat::partial_matchings;
use super::RecError;

/// Factor sizes of a tensor word; zero-size factors are dropped since `[∅]`
/// is the unit object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Word(Vec<usize>);

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word::new(v)
    }
}

impl From<Word> for Vec<usize> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl Word {
    pub fn new(sizes: Vec<usize>) -> Self {
        Word(sizes.into_iter().filter(|&s| s > 0).collect())
    }

    pub fn single(n: usize) -> Self {
        Word::new(vec![n])
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn num_factors(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Factor index of each point.
    pub fn factor_of_points(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat(i).take(s)).collect()
    }

    /// First point of each factor.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|&s| {
                let o = acc;
                acc += s;
                o
            })
            .collect()
    }

    /// The word with factors reordered: factor `i` of the result is factor `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Word {
        Word(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Canonical set partition stored as a restricted growth string: point `p`
/// lies in block `blocks[p]` and blocks are numbered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    rgs: Vec<u8>,
}

impl Diagram {
    /// Canonicalise an arbitrary block labelling of points.
    pub fn from_labels<L: Copy + Eq>(labels: &[L]) -> Self {
        let mut seen: Vec<L> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i as u8,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Diagram { rgs }
    }

    pub fn from_blocks(npoints: usize, blocks: &[Vec<usize>]) -> Self {
        let mut labels = vec![usize::MAX; npoints];
        for (i, b) in blocks.iter().enumerate() {
            for &p in b {
                labels[p] = i;
            }
        }
        assert!(labels.iter().all(|&l| l != usize::MAX), "blocks must cover all points");
        Self::from_labels(&labels)
    }

    pub fn npoints(&self) -> usize {
        self.rgs.len()
    }

    pub fn block_of(&self, p: usize) -> usize {
        self.rgs[p] as usize
    }

    pub fn labels(&self) -> &[u8] {
        &self.rgs
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    /// Blocks as sorted point lists, ordered by smallest point.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (p, &b) in self.rgs.iter().enumerate() {
            out[b as usize].push(p);
        }
        out
    }

    pub fn check(&self, src: &Word, tgt: &Word) -> Result<(), RecError> {
        let factors = src.concat(tgt).factor_of_points();
        if factors.len() != self.rgs.len() {
            return Err(RecError::Invalid(format!(
                "diagram has {} points, words {src} -> {tgt} have {}",
                self.rgs.len(),
                factors.len()
            )));
        }
        for b in self.blocks() {
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    if factors[b[i]] == factors[b[j]] {
                        return Err(RecError::Invalid(format!(
                            "block joins points {} and {} of the same factor",
                            b[i], b[j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// All diagrams between two words, in canonical order.
    pub fn enumerate(src: &Word, tgt: &Word) -> Vec<Diagram> {
        let factors = src.concat(tgt).factor_of_points();
        let mut out = Vec::new();
        let mut rgs: Vec<u8> = Vec::with_capacity(factors.len());
        // block_factors[b] is a bitmask of factors already in block b.
        let mut block_factors: Vec<u64> = Vec::new();
        fn rec(
            p: usize,
            factors: &[usize],
            rgs: &mut Vec<u8>,
            bf: &mut Vec<u64>,
            out: &mut Vec<Diagram>,
        ) {
            if p == factors.len() {
                out.push(Diagram { rgs: rgs.clone() });
                return;
            }
            let bit = 1u64 << factors[p];
            for b in 0..bf.len() {
                if bf[b] & bit == 0 {
                    bf[b] |= bit;
                    rgs.push(b as u8);
                    rec(p + 1, factors, rgs, bf, out);
                    rgs.pop();
                    bf[b] &= !bit;
                }
            }
            bf.push(bit);
            rgs.push((bf.len() - 1) as u8);
            rec(p + 1, factors, rgs, bf, out);
            rgs.pop();
            bf.pop();
        }
        assert!(src.num_factors() + tgt.num_factors() <= 64, "too many factors");
        rec(0, &factors, &mut rgs, &mut block_factors, &mut out);
        out.sort();
        out
    }

    /// All valid diagrams on `src -> tgt` in which the points sharing a label
    /// in `constraint` lie in one block. The operator "these points carry equal
    /// values" is the sum of these diagrams.
    pub fn coarsenings<L: Copy + Eq>(constraint: &[L], src: &Word, tgt: &Word) -> Vec<Diagram> {
        let factors = src.concat(tgt).factor_of_points();
        assert_eq!(factors.len(), constraint.len(), "constraint has wrong length");
        let base = Diagram::from_labels(constraint);
        let cells = base.blocks();
        let mut masks = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut m = 0u64;
            for &p in cell {
                let bit = 1u64 << factors[p];
                if m & bit != 0 {
                    return Vec::new();
                }
                m |= bit;
            }
            masks.push(m);
        }
        let mut out = Vec::new();
        fn rec(i: usize, masks: &[u64], assign: &mut Vec<usize>, groups: &mut Vec<u64>, out: &mut Vec<Vec<usize>>) {
            if i == masks.len() {
                out.push(assign.clone());
                return;
            }
            for g in 0..groups.len() {
                if groups[g] & masks[i] == 0 {
                    groups[g] |= masks[i];
                    assign.push(g);
                    rec(i + 1, masks, assign, groups, out);
                    assign.pop();
                    groups[g] &= !masks[i];
                }
            }
            groups.push(masks[i]);
            assign.push(groups.len() - 1);
            rec(i + 1, masks, assign, groups, out);
            assign.pop();
            groups.pop();
        }
        let mut assigns = Vec::new();
        rec(0, &masks, &mut Vec::new(), &mut Vec::new(), &mut assigns);
        for a in assigns {
            let labels: Vec<usize> = (0..constraint.len()).map(|p| a[base.block_of(p)]).collect();
            out.push(Diagram::from_labels(&labels));
        }
        out.sort();
        out
    }

    /// Terms of the identity of `w`: one doubled partition per valid partition of `w`.
    pub fn identity_terms(w: &Word) -> Vec<Diagram> {
        let n = w.total();
        let labels: Vec<usize> = (0..n).chain(0..n).collect();
        Self::coarsenings(&labels, w, w)
    }

    /// Terms of `w -> w.permuted(perm)`, where target factor `i` carries the
    /// values of source factor `perm[i]`.
    pub fn factor_permutation_terms(w: &Word, perm: &[usize]) -> Vec<Diagram> {
        let n = w.total();
        let offs = w.offsets();
        let tgt = w.permuted(perm);
        let mut labels: Vec<usize> = (0..n).collect();
        for &p in perm {
            for k in 0..w.sizes()[p] {
                labels.push(offs[p] + k);
            }
        }
        Self::coarsenings(&labels, w, &tgt)
    }

    /// Swap the roles of source and target.
    pub fn transpose(&self, src: &Word) -> Diagram {
        let s = src.total();
        let mut labels: Vec<u8> = self.rgs[s..].to_vec();
        labels.extend_from_slice(&self.rgs[..s]);
        Self::from_labels(&labels)
    }

    /// Relabel points through `map` (old point -> new point) into a diagram on `npoints`.
    pub fn relabel(&self, map: &[usize], npoints: usize) -> Diagram {
        let mut labels = vec![usize::MAX; npoints];
        for (p, &q) in map.iter().enumerate() {
            labels[q] = self.rgs[p] as usize;
        }
        Self::from_labels(&labels)
    }
}

/// Summands of `d ∘ c` for `c: w -> w'` and `d: w' -> w''`, as pairs
/// `(e, free)`; the coefficient of `e` is `(T - |e|)_(free)` summed over
/// repeated entries.
pub fn compose(c: &Diagram, d: &Diagram, w: &Word, w_mid: &Word, w_out: &Word) -> Vec<(Diagram, usize)> {
    let a = w.total();
    let b = w_mid.total();
    let cc = w_out.total();
    debug_assert_eq!(c.npoints(), a + b);
    debug_assert_eq!(d.npoints(), b + cc);
    let ncb = c.num_blocks();
    let ndb = d.num_blocks();
    let mut mid_c: Vec<Vec<usize>> = vec![Vec::new(); ncb];
    let mut mid_d: Vec<Vec<usize>> = vec![Vec::new(); ndb];
    for m in 0..b {
        mid_c[c.block_of(a + m)].push(m);
        mid_d[d.block_of(m)].push(m);
    }
    // Joint blocks: C-block x and D-block y with the same middle points.
    let mut partner: Vec<Option<usize>> = vec![None; ncb];
    for x in 0..ncb {
        if let Some(&m0) = mid_c[x].first() {
            let y = d.block_of(m0);
            if mid_d[y] != mid_c[x] {
                return Vec::new();
            }
            partner[x] = Some(y);
        }
    }
    // New labels: joint pairs keyed by x, C-only by x, D-only by ncb + y.
    let mut labels = vec![usize::MAX; a + cc];
    let mut has_outer = vec![false; ncb];
    for p in 0..a {
        let x = c.block_of(p);
        labels[p] = x;
        has_outer[x] = true;
    }
    let mut y_to_x: Vec<Option<usize>> = vec![None; ndb];
    for x in 0..ncb {
        if let Some(y) = partner[x] {
            y_to_x[y] = Some(x);
        }
    }
    for q in 0..cc {
        let y = d.block_of(b + q);
        labels[a + q] = match y_to_x[y] {
            Some(x) => {
                has_outer[x] = true;
                x
            }
            None => ncb + y,
        };
    }
    let free = (0..ncb).filter(|&x| partner[x].is_some() && !has_outer[x]).count();
    let c_only: Vec<usize> = (0..ncb).filter(|&x| partner[x].is_none()).collect();
    let d_only: Vec<usize> = (0..ndb).filter(|&y| mid_d[y].is_empty()).collect();
    let mut out = Vec::new();
    for m in partial_matchings(c_only.len(), d_only.len()) {
        let mut l = labels.clone();
        for &(i, j) in &m {
            let from = ncb + d_only[j];
            for v in l.iter_mut() {
                if *v == from {
                    *v = c_only[i];
                }
            }
        }
        out.push((Diagram::from_labels(&l), free));
    }
    out
}

/// Summands of `x ⊗ y` for `x: s1 -> t1` and `y: s2 -> _`, each with coefficient 1.
/// The result lives on `s1 ++ s2 -> t1 ++ t2`.
pub fn tensor(x: &Diagram, s1: &Word, t1: &Word, y: &Diagram, s2: &Word) -> Vec<Diagram> {
    let (n1, n2, m1) = (s1.total(), s2.total(), t1.total());
    let total = x.npoints() + y.npoints();
    let nxb = x.num_blocks();
    let mut labels = vec![0usize; total];
    for p in 0..x.npoints() {
        let q = if p < n1 { p } else { n1 + n2 + (p - n1) };
        labels[q] = x.block_of(p);
    }
    for p in 0..y.npoints() {
        let q = if p < n2 { n1 + p } else { n1 + n2 + m1 + (p - n2) };
        labels[q] = nxb + y.block_of(p);
    }
    let mut out = Vec::new();
    for m in partial_matchings(nxb, y.num_blocks()) {
        let mut l = labels.clone();
        for &(i, j) in &m {
            for v in l.iter_mut() {
                if *v == nxb + j {
                    *v = i;
                }
            }
        }
        out.push(Diagram::from_labels(&l));
    }
    out.sort();
    out
}

/// Number of blocks of the partition `P` when `d: w -> w` is the doubled
/// partition `P ∪ P'`, else `None`. The trace of `d` is `(T)_(|P|)` or zero.
pub fn trace_blocks(d: &Diagram, w: &Word) -> Option<usize> {
    let n = w.total();
    for p in 0..n {
        if d.block_of(p) != d.block_of(n + p) {
            return None;
        }
    }
    Some(d.num_blocks())
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let blocks: Vec<Vec<usize>> = Vec::deserialize(d)?;
        let n = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for &p in blocks.iter().flatten() {
            if p >= n || seen[p] {
                return Err(serde::de::Error::custom("blocks must partition 0..n"));
            }
            seen[p] = true;
        }
        Ok(Diagram::from_blocks(n, &blocks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> Word {
        Word::new(v.to_vec())
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Diagram::enumerate(&w(&[2]), &w(&[2])).len(), 7);
        assert_eq!(Diagram::enumerate(&w(&[3]), &w(&[3])).len(), 34);
        // Partitions of 3 points, all in different factors: Bell(3) = 5.
        assert_eq!(Diagram::enumerate(&w(&[1, 1]), &w(&[1])).len(), 5);
        assert_eq!(Diagram::enumerate(&w(&[]), &w(&[])).len(), 1);
    }

    #[test]
    fn identity_is_neutral() {
        let s = w(&[1, 2]);
        let t = w(&[2]);
        for d in Diagram::enumerate(&s, &t) {
            let left: Vec<_> =
                Diagram::identity_terms(&s).iter().flat_map(|i| compose(i, &d, &s, &s, &t)).collect();
            assert_eq!(left, vec![(d.clone(), 0)]);
            let right: Vec<_> =
                Diagram::identity_terms(&t).iter().flat_map(|i| compose(&d, i, &s, &t, &t)).collect();
            assert_eq!(right, vec![(d.clone(), 0)]);
        }
        assert_eq!(Diagram::identity_terms(&w(&[1, 1])).len(), 2);
        assert_eq!(Diagram::identity_terms(&w(&[3])).len(), 1);
    }

    #[test]
    fn scalar_loop() {
        let u = w(&[]);
        let one = w(&[1]);
        let cup = Diagram::enumerate(&u, &one)[0].clone();
        let cap = Diagram::enumerate(&one, &u)[0].clone();
        let r = compose(&cup, &cap, &u, &one, &u);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].1, 1);
    }

    #[test]
    fn transpose_is_involution() {
        let s = w(&[1, 2]);
        let t = w(&[2, 1]);
        for d in Diagram::enumerate(&s, &t) {
            assert_eq!(d.transpose(&s).transpose(&t), d);
        }
    }

    #[test]
    fn tensor_of_identities_expands() {
        let one = w(&[1]);
        let id = Diagram::identity_terms(&one);
        let t = tensor(&id[0], &one, &one, &id[0], &one);
        assert_eq!(t, Diagram::identity_terms(&w(&[1, 1])));
    }

    #[test]
    fn serde_blocks() {
        let d = Diagram::from_blocks(3, &[vec![0, 2], vec![1]]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, "[[0,2],[1]]");
        assert_eq!(serde_json::from_str::<Diagram>(&s).unwrap(), d);
    }
}
