//! Recollements of two sets: partial bijections `U -> V`, optionally with
//! group labels on matched pairs.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::combinat::partial_matchings;
use super::diagram::{Diagram, Word};
use super::group::FiniteGroup;
use super::RecError;
use crate::exactalg::{falling_factorial, MultiPoly, T};

/// A basis element of `hom([U], [V])` with `U = 0..src`, `V = 0..tgt`.
///
/// In the labelled case the label of a pair `(u, v)` is `alpha(u)^-1 beta(v)`
/// for the group components `alpha`, `beta` of two equivariant injections.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recollement {
    src: usize,
    tgt: usize,
    matches: Vec<(usize, usize)>,
    labels: Option<Vec<usize>>,
}

impl Ord for Recollement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.src, self.tgt, &self.matches, &self.labels).cmp(&(
            other.src,
            other.tgt,
            &other.matches,
            &other.labels,
        ))
    }
}

impl PartialOrd for Recollement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One term of a composition: `(D) o (C)` contains `result` with coefficient
/// `|G|^free_count (T - |result|)_(free_count)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GluePattern {
    pub left: Recollement,
    pub right: Recollement,
    pub result: Recollement,
    pub free_count: usize,
}

impl GluePattern {
    pub fn coefficient(&self, group_order: usize) -> MultiPoly {
        let base = MultiPoly::var_plus(T, -(self.result.ambient_size() as i64));
        let ff = falling_factorial(&base, self.free_count);
        ff.scale(&crate::exactalg::qi((group_order as i64).pow(self.free_count as u32)))
    }
}

impl Recollement {
    pub fn new(
        src: usize,
        tgt: usize,
        matches: Vec<(usize, usize)>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self, RecError> {
        if let Some(l) = &labels {
            if l.len() != matches.len() {
                return Err(RecError::Invalid("one label per matched pair required".into()));
            }
        }
        let mut used_u = vec![false; src];
        let mut used_v = vec![false; tgt];
        for &(u, v) in &matches {
            if u >= src || v >= tgt {
                return Err(RecError::Invalid(format!("pair ({u},{v}) out of range")));
            }
            if used_u[u] || used_v[v] {
                return Err(RecError::Invalid("matching is not a partial bijection".into()));
            }
            used_u[u] = true;
            used_v[v] = true;
        }
        let mut idx: Vec<usize> = (0..matches.len()).collect();
        idx.sort_by_key(|&i| matches[i]);
        let sorted = idx.iter().map(|&i| matches[i]).collect();
        let labels = labels.map(|l| idx.iter().map(|&i| l[i]).collect());
        Ok(Recollement { src, tgt, matches: sorted, labels })
    }

    pub fn discrete(src: usize, tgt: usize) -> Self {
        Recollement { src, tgt, matches: Vec::new(), labels: None }
    }

    pub fn identity(n: usize) -> Self {
        Recollement { src: n, tgt: n, matches: (0..n).map(|i| (i, i)).collect(), labels: None }
    }

    /// Identity with all labels equal to the group identity.
    pub fn identity_labelled(n: usize) -> Self {
        Recollement { labels: Some(vec![0; n]), ..Self::identity(n) }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn matches(&self) -> &[(usize, usize)] {
        &self.matches
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn is_labelled(&self) -> bool {
        self.labels.is_some()
    }

    /// Size of the glued set: `src + tgt - |matches|`.
    pub fn ambient_size(&self) -> usize {
        self.src + self.tgt - self.matches.len()
    }

    pub fn partner_of_src(&self, u: usize) -> Option<(usize, Option<usize>)> {
        self.matches
            .iter()
            .position(|&(a, _)| a == u)
            .map(|i| (self.matches[i].1, self.labels.as_ref().map(|l| l[i])))
    }

    pub fn partner_of_tgt(&self, v: usize) -> Option<(usize, Option<usize>)> {
        self.matches
            .iter()
            .position(|&(_, b)| b == v)
            .map(|i| (self.matches[i].0, self.labels.as_ref().map(|l| l[i])))
    }

    pub fn transpose(&self, group: Option<&FiniteGroup>) -> Self {
        let matches = self.matches.iter().map(|&(u, v)| (v, u)).collect();
        let labels = self.labels.as_ref().map(|l| {
            let g = group.expect("labelled transpose needs the group");
            l.iter().map(|&x| g.inv(x)).collect()
        });
        Recollement::new(self.tgt, self.src, matches, labels).expect("transpose stays valid")
    }

    /// `C ⊔ D` with `D`'s indices shifted past `C`'s.
    pub fn disjoint_union(&self, other: &Recollement) -> Result<Self, RecError> {
        if self.labels.is_some() != other.labels.is_some() {
            return Err(RecError::Invalid("cannot mix labelled and plain recollements".into()));
        }
        let mut matches = self.matches.clone();
        matches.extend(other.matches.iter().map(|&(u, v)| (u + self.src, v + self.tgt)));
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.extend(other.labels.as_ref().unwrap());
            l
        });
        Recollement::new(self.src + other.src, self.tgt + other.tgt, matches, labels)
    }

    /// The flat diagram on `([src], [tgt])` with the same blocks.
    pub fn to_diagram(&self) -> Diagram {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut tgt_done = vec![false; self.tgt];
        for u in 0..self.src {
            match self.partner_of_src(u) {
                Some((v, _)) => {
                    tgt_done[v] = true;
                    blocks.push(vec![u, self.src + v]);
                }
                None => blocks.push(vec![u]),
            }
        }
        for v in 0..self.tgt {
            if !tgt_done[v] {
                blocks.push(vec![self.src + v]);
            }
        }
        Diagram::from_blocks(self.src + self.tgt, &blocks)
    }

    pub fn from_diagram(d: &Diagram, src: usize, tgt: usize) -> Result<Self, RecError> {
        let words = (Word::single(src), Word::single(tgt));
        d.check(&words.0, &words.1)?;
        let mut matches = Vec::new();
        for b in d.blocks() {
            if b.len() == 2 {
                matches.push((b[0], b[1] - src));
            }
        }
        Recollement::new(src, tgt, matches, None)
    }
}

/// All recollements in `rec(j, k)`, in canonical order. With `group_order = Some(g)`
/// every matched pair carries one of `g` labels.
pub fn enumerate(j: usize, k: usize, group_order: Option<usize>) -> Vec<Recollement> {
    let mut out = Vec::new();
    for m in partial_matchings(j, k) {
        match group_order {
            None => out.push(Recollement { src: j, tgt: k, matches: m, labels: None }),
            Some(g) => {
                for labels in label_tuples(m.len(), g) {
                    out.push(Recollement { src: j, tgt: k, matches: m.clone(), labels: Some(labels) });
                }
            }
        }
    }
    out.sort();
    out
}

fn label_tuples(len: usize, g: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..g).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Support and multiplicity data of `(D) o (C)` for `C in rec(U,V)`, `D in rec(V,W)`.
pub fn compose_patterns(
    c: &Recollement,
    d: &Recollement,
    group: Option<&FiniteGroup>,
) -> Result<Vec<GluePattern>, RecError> {
    if c.tgt != d.src {
        return Err(RecError::SizeMismatch { left: c.tgt, right: d.src });
    }
    if c.is_labelled() != d.is_labelled() || (c.is_labelled() && group.is_none()) {
        return Err(RecError::Invalid("labelled composition needs labelled inputs and a group".into()));
    }
    let mut forced: Vec<(usize, usize, Option<usize>)> = Vec::new();
    let mut blocked_u = vec![false; c.src];
    let mut blocked_w = vec![false; d.tgt];
    let mut free = 0;
    for v in 0..c.tgt {
        match (c.partner_of_tgt(v), d.partner_of_src(v)) {
            (Some((u, lc)), Some((w, ld))) => {
                let label = lc.zip(ld).map(|(a, b)| group.unwrap().mul(a, b));
                forced.push((u, w, label));
                blocked_u[u] = true;
                blocked_w[w] = true;
            }
            (Some((u, _)), None) => blocked_u[u] = true,
            (None, Some((w, _))) => blocked_w[w] = true,
            (None, None) => free += 1,
        }
    }
    let open_u: Vec<usize> = (0..c.src).filter(|&u| !blocked_u[u]).collect();
    let open_w: Vec<usize> = (0..d.tgt).filter(|&w| !blocked_w[w]).collect();
    let g = group.map(FiniteGroup::order);
    let mut out = Vec::new();
    for extra in partial_matchings(open_u.len(), open_w.len()) {
        let label_choices = match g {
            Some(g) => label_tuples(extra.len(), g).into_iter().map(Some).collect(),
            None => vec![None],
        };
        for extra_labels in label_choices {
            let mut matches: Vec<(usize, usize)> = forced.iter().map(|&(u, w, _)| (u, w)).collect();
            matches.extend(extra.iter().map(|&(a, b)| (open_u[a], open_w[b])));
            let labels = extra_labels.map(|el: Vec<usize>| {
                let mut l: Vec<usize> = forced.iter().map(|&(_, _, x)| x.unwrap()).collect();
                l.extend(el);
                l
            });
            let result = Recollement::new(c.src, d.tgt, matches, labels)?;
            out.push(GluePattern { left: c.clone(), right: d.clone(), result, free_count: free });
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct RecollementJson {
    src: usize,
    tgt: usize,
    matches: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
}

impl Recollement {
    /// JSON form `{"src":2,"tgt":3,"matches":[[0,1],[1,0]],"labels":["e","g"]}`.
    pub fn to_json(&self, group: Option<&FiniteGroup>) -> serde_json::Value {
        let labels = self.labels.as_ref().map(|l| {
            let g = group.expect("labelled recollement needs the group for names");
            l.iter().map(|&x| g.names[x].clone()).collect()
        });
        let j = RecollementJson {
            src: self.src,
            tgt: self.tgt,
            matches: self.matches.iter().map(|&(u, v)| [u, v]).collect(),
            labels,
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value, group: Option<&FiniteGroup>) -> Result<Self, RecError> {
        let j: RecollementJson =
            serde_json::from_value(v.clone()).map_err(|e| RecError::Invalid(e.to_string()))?;
        let labels = match j.labels {
            None => None,
            Some(names) => {
                let g = group.ok_or_else(|| RecError::Invalid("labels given without a group".into()))?;
                let idx = names
                    .iter()
                    .map(|n| g.index_of(n).ok_or_else(|| RecError::Invalid(format!("unknown group element '{n}'"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(idx)
            }
        };
        Recollement::new(j.src, j.tgt, j.matches.into_iter().map(|[u, v]| (u, v)).collect(), labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(1, 1, None).len(), 2);
        assert_eq!(enumerate(0, 4, None).len(), 1);
        assert_eq!(enumerate(2, 2, None).len(), 7);
        assert_eq!(enumerate(1, 1, Some(2)).len(), 3);
        assert_eq!(enumerate(3, 3, None).len(), 34);
    }

    #[test]
    fn compose_examples() {
        let disc = Recollement::discrete(1, 1);
        let p = compose_patterns(&disc, &disc, None).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|g| g.free_count == 1));
        let results: Vec<_> = p.iter().map(|g| g.result.matches().len()).collect();
        assert_eq!(results, vec![0, 1]);

        for d in enumerate(2, 2, None) {
            let p = compose_patterns(&Recollement::identity(2), &d, None).unwrap();
            assert_eq!(p.len(), 1);
            assert_eq!((p[0].result.clone(), p[0].free_count), (d, 0));
        }

        let a = Recollement::discrete(0, 1);
        let b = Recollement::discrete(1, 0);
        let p = compose_patterns(&a, &b, None).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].coefficient(1).to_string(), "T");
    }

    #[test]
    fn transpose_and_union() {
        let g = FiniteGroup::cyclic(3);
        for c in enumerate(2, 3, Some(3)) {
            assert_eq!(c.transpose(Some(&g)).transpose(Some(&g)), c);
        }
        let m = Recollement::identity(1);
        let u = m.disjoint_union(&Recollement::discrete(1, 1)).unwrap();
        assert_eq!(u.matches(), &[(0, 0)]);
        assert_eq!((u.src(), u.tgt()), (2, 2));
        let e = Recollement::discrete(0, 0);
        assert_eq!(e.disjoint_union(&e).unwrap(), e);
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::cyclic(2);
        let c = Recollement::new(2, 3, vec![(1, 0), (0, 1)], Some(vec![1, 0])).unwrap();
        let v = c.to_json(Some(&g));
        assert_eq!(v.to_string(), r#"{"src":2,"tgt":3,"matches":[[0,1],[1,0]],"labels":["e","g1"]}"#);
        assert_eq!(Recollement::from_json(&v, Some(&g)).unwrap(), c);
    }

    #[test]
    fn diagram_round_trip() {
        for c in enumerate(2, 3, None) {
            assert_eq!(Recollement::from_diagram(&c.to_diagram(), 2, 3).unwrap(), c);
        }
    }
}
