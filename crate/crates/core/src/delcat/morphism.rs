//! Morphisms between formal sums of tensor words, as block matrices of
//! linear combinations of diagrams over `ℚ(T, a_1, ...)`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::table::compose_terms;
use super::CatError;
use crate::exactalg::{RatFn, Var, Q};
use crate::recollement::diagram::tensor as tensor_diagrams;
use crate::recollement::{Diagram, Word};

pub type LinComb = BTreeMap<Diagram, RatFn>;

/// `blocks[t][s]` is the component from source summand `s` to target summand `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub src: Vec<Word>,
    pub tgt: Vec<Word>,
    pub blocks: Vec<Vec<LinComb>>,
}

pub fn add_term(lc: &mut LinComb, d: Diagram, c: &RatFn) {
    if c.is_zero() {
        return;
    }
    match lc.get_mut(&d) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                lc.remove(&d);
            }
        }
        None => {
            lc.insert(d, c.clone());
        }
    }
}

/// `g ∘ f` for `f: src -> mid`, `g: mid -> tgt`.
pub fn compose_lincomb(f: &LinComb, g: &LinComb, src: &Word, mid: &Word, tgt: &Word) -> LinComb {
    let mut out = LinComb::new();
    for (c, x) in f {
        for (d, y) in g {
            let xy = x * y;
            for (e, p) in compose_terms(c, d, src, mid, tgt).iter() {
                add_term(&mut out, e.clone(), &xy.mul_poly(p));
            }
        }
    }
    out
}

pub fn tensor_lincomb(f: &LinComb, s1: &Word, t1: &Word, g: &LinComb, s2: &Word) -> LinComb {
    let mut out = LinComb::new();
    for (x, a) in f {
        for (y, b) in g {
            let ab = a * b;
            for e in tensor_diagrams(x, s1, t1, y, s2) {
                add_term(&mut out, e, &ab);
            }
        }
    }
    out
}

impl Morphism {
    pub fn zero(src: &[Word], tgt: &[Word]) -> Self {
        Morphism { src: src.to_vec(), tgt: tgt.to_vec(), blocks: vec![vec![LinComb::new(); src.len()]; tgt.len()] }
    }

    pub fn identity(words: &[Word]) -> Self {
        let mut m = Self::zero(words, words);
        for (i, w) in words.iter().enumerate() {
            for d in Diagram::identity_terms(w) {
                m.blocks[i][i].insert(d, RatFn::one());
            }
        }
        m
    }

    /// A single diagram between single words.
    pub fn from_diagram(src: &Word, tgt: &Word, d: Diagram) -> Result<Self, CatError> {
        d.check(src, tgt)?;
        let mut m = Self::zero(std::slice::from_ref(src), std::slice::from_ref(tgt));
        m.blocks[0][0].insert(d, RatFn::one());
        Ok(m)
    }

    pub fn from_lincomb(src: &Word, tgt: &Word, lc: LinComb) -> Result<Self, CatError> {
        for d in lc.keys() {
            d.check(src, tgt)?;
        }
        let mut m = Self::zero(std::slice::from_ref(src), std::slice::from_ref(tgt));
        m.blocks[0][0] = lc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(m)
    }

    pub fn block(&self, t: usize, s: usize) -> &LinComb {
        &self.blocks[t][s]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(BTreeMap::is_empty)
    }

    pub fn num_terms(&self) -> usize {
        self.blocks.iter().flatten().map(BTreeMap::len).sum()
    }

    fn same_shape(&self, other: &Morphism) -> Result<(), CatError> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(CatError::ObjectMismatch(format!(
                "{} -> {} vs {} -> {}",
                fmt_words(&self.src),
                fmt_words(&self.tgt),
                fmt_words(&other.src),
                fmt_words(&other.tgt)
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism, CatError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (t, row) in other.blocks.iter().enumerate() {
            for (s, lc) in row.iter().enumerate() {
                for (d, c) in lc {
                    add_term(&mut out.blocks[t][s], d.clone(), c);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism, CatError> {
        self.add(&other.scale(&RatFn::from_i64(-1)))
    }

    pub fn scale(&self, c: &RatFn) -> Morphism {
        let mut out = Self::zero(&self.src, &self.tgt);
        if c.is_zero() {
            return out;
        }
        for (t, row) in self.blocks.iter().enumerate() {
            for (s, lc) in row.iter().enumerate() {
                out.blocks[t][s] = lc.iter().map(|(d, x)| (d.clone(), x * c)).collect();
            }
        }
        out
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism, CatError> {
        if self.tgt != g.src {
            return Err(CatError::ObjectMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                fmt_words(&self.src),
                fmt_words(&self.tgt),
                fmt_words(&g.src),
                fmt_words(&g.tgt)
            )));
        }
        let mut out = Self::zero(&self.src, &g.tgt);
        for (t, wt) in g.tgt.iter().enumerate() {
            for (s, ws) in self.src.iter().enumerate() {
                let mut acc = LinComb::new();
                for (m, wm) in self.tgt.iter().enumerate() {
                    let (f, h) = (&self.blocks[m][s], &g.blocks[t][m]);
                    if f.is_empty() || h.is_empty() {
                        continue;
                    }
                    for (d, c) in compose_lincomb(f, h, ws, wm, wt) {
                        add_term(&mut acc, d, &c);
                    }
                }
                out.blocks[t][s] = acc;
            }
        }
        Ok(out)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &Morphism) -> Result<Morphism, CatError> {
        f.then(self)
    }

    /// Summands of `X ⊗ Y` are ordered with the `X` index major.
    pub fn tensor(&self, other: &Morphism) -> Morphism {
        let src = tensor_words(&self.src, &other.src);
        let tgt = tensor_words(&self.tgt, &other.tgt);
        let mut out = Self::zero(&src, &tgt);
        let (ns2, nt2) = (other.src.len(), other.tgt.len());
        for (t1, wt1) in self.tgt.iter().enumerate() {
            for (s1, ws1) in self.src.iter().enumerate() {
                let f = &self.blocks[t1][s1];
                if f.is_empty() {
                    continue;
                }
                for t2 in 0..nt2 {
                    for (s2, ws2) in other.src.iter().enumerate() {
                        let g = &other.blocks[t2][s2];
                        if g.is_empty() {
                            continue;
                        }
                        out.blocks[t1 * nt2 + t2][s1 * ns2 + s2] = tensor_lincomb(f, ws1, wt1, g, ws2);
                    }
                }
            }
        }
        out
    }

    /// Swap source and target; on the realizations this is the matrix transpose.
    pub fn transpose(&self) -> Morphism {
        let mut out = Self::zero(&self.tgt, &self.src);
        for (t, row) in self.blocks.iter().enumerate() {
            for (s, lc) in row.iter().enumerate() {
                out.blocks[s][t] = lc.iter().map(|(d, c)| (d.transpose(&self.src[s]), c.clone())).collect();
            }
        }
        out
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.blocks.iter().flatten().flat_map(|lc| lc.values()).any(|c| c.contains_var(v))
    }

    /// Substitute rational values for indeterminates.
    pub fn specialize(&self, assignment: &[(Var, Q)]) -> Result<Morphism, CatError> {
        let mut out = Self::zero(&self.src, &self.tgt);
        for (t, row) in self.blocks.iter().enumerate() {
            for (s, lc) in row.iter().enumerate() {
                for (d, c) in lc {
                    let mut c = c.clone();
                    for (v, x) in assignment {
                        c = c.eval_var(*v, x).ok_or_else(|| {
                            CatError::PoleAtSpecialization(format!("{} = {} in coefficient of {d}", crate::exactalg::poly::var_name(*v), crate::exactalg::fmt_rational(x)))
                        })?;
                    }
                    add_term(&mut out.blocks[t][s], d.clone(), &c);
                }
            }
        }
        Ok(out)
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs<F: Fn(&RatFn) -> Result<RatFn, CatError>>(&self, f: F) -> Result<Morphism, CatError> {
        let mut out = Self::zero(&self.src, &self.tgt);
        for (t, row) in self.blocks.iter().enumerate() {
            for (s, lc) in row.iter().enumerate() {
                for (d, c) in lc {
                    add_term(&mut out.blocks[t][s], d.clone(), &f(c)?);
                }
            }
        }
        Ok(out)
    }

    /// Restrict to chosen source and target summands.
    pub fn select(&self, tgt_idx: &[usize], src_idx: &[usize]) -> Morphism {
        let src: Vec<Word> = src_idx.iter().map(|&i| self.src[i].clone()).collect();
        let tgt: Vec<Word> = tgt_idx.iter().map(|&i| self.tgt[i].clone()).collect();
        let blocks = tgt_idx.iter().map(|&t| src_idx.iter().map(|&s| self.blocks[t][s].clone()).collect()).collect();
        Morphism { src, tgt, blocks }
    }

    /// Coordinates in the basis of all diagrams of all blocks, block-row-major.
    pub fn coordinates(&self) -> Vec<RatFn> {
        let mut out = Vec::new();
        for (t, row) in self.blocks.iter().enumerate() {
            for (s, lc) in row.iter().enumerate() {
                for d in Diagram::enumerate(&self.src[s], &self.tgt[t]) {
                    out.push(lc.get(&d).cloned().unwrap_or_else(RatFn::zero));
                }
            }
        }
        out
    }

    /// The first nonzero block, as a witness of a failed identity.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Diagram, RatFn)> {
        for (t, row) in self.blocks.iter().enumerate() {
            for (s, lc) in row.iter().enumerate() {
                if let Some((d, c)) = lc.iter().next() {
                    return Some((t, s, d.clone(), c.clone()));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Vec<Value>> = self
            .blocks
            .iter()
            .map(|row| {
                row.iter()
                    .map(|lc| Value::Array(lc.iter().map(|(d, c)| json!([d, c.to_string()])).collect()))
                    .collect()
            })
            .collect();
        json!({"src": self.src, "tgt": self.tgt, "blocks": blocks})
    }

    pub fn from_json(v: &Value) -> Result<Morphism, CatError> {
        let bad = |m: &str| CatError::Parse(m.to_string());
        let src: Vec<Word> = serde_json::from_value(v["src"].clone()).map_err(|e| bad(&e.to_string()))?;
        let tgt: Vec<Word> = serde_json::from_value(v["tgt"].clone()).map_err(|e| bad(&e.to_string()))?;
        let mut m = Morphism::zero(&src, &tgt);
        let rows = v["blocks"].as_array().ok_or_else(|| bad("blocks must be an array"))?;
        if rows.len() != tgt.len() {
            return Err(bad("one block row per target summand required"));
        }
        for (t, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| bad("block rows must be arrays"))?;
            if row.len() != src.len() {
                return Err(bad("one block per source summand required"));
            }
            for (s, terms) in row.iter().enumerate() {
                for term in terms.as_array().ok_or_else(|| bad("blocks must be term arrays"))? {
                    let d: Diagram = serde_json::from_value(term[0].clone()).map_err(|e| bad(&e.to_string()))?;
                    d.check(&src[s], &tgt[t])?;
                    let c = match &term[1] {
                        Value::String(s) => RatFn::parse(s)?,
                        Value::Number(n) => RatFn::from_i64(n.as_i64().ok_or_else(|| bad("integer coefficient expected"))?),
                        _ => return Err(bad("coefficient must be a string or integer")),
                    };
                    add_term(&mut m.blocks[t][s], d, &c);
                }
            }
        }
        Ok(m)
    }
}

pub fn tensor_words(a: &[Word], b: &[Word]) -> Vec<Word> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.concat(y))).collect()
}

pub fn fmt_words(ws: &[Word]) -> String {
    if ws.is_empty() {
        return "0".into();
    }
    ws.iter().map(|w| format!("[{}]", w.sizes().iter().map(ToString::to_string).collect::<Vec<_>>().join(","))).collect::<Vec<_>>().join("+")
}
