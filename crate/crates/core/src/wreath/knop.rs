//! Knop's `Rep(S_t ⋉ G^t)` on free `G`-sets `[u]_G` (u orbits), and the
//! functor `F` into `Rep(A_t)` for `A = k[G]`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::algebra::FinAlgebra;
use super::wobject::WObject;
use super::WreathError;
use crate::delcat::morphism::tensor_words;
use crate::delcat::{Morphism, Object};
use crate::exactalg::{rank_profile, RatFn, RatMatrix};
use crate::oracle::knop::label_tuples;
use crate::recollement::{compose_patterns, enumerate, Diagram, FiniteGroup, Recollement, Word};

/// A linear combination of `G`-recollements `(C)_G: [src]_G -> [tgt]_G`.
#[derive(Clone, Debug, PartialEq)]
pub struct KnopMorphism {
    pub src: usize,
    pub tgt: usize,
    pub terms: BTreeMap<Recollement, RatFn>,
}

impl KnopMorphism {
    pub fn zero(src: usize, tgt: usize) -> Self {
        KnopMorphism { src, tgt, terms: BTreeMap::new() }
    }

    pub fn from_rec(c: Recollement) -> Result<Self, WreathError> {
        if !c.is_labelled() {
            return Err(WreathError::TypeMismatch("Knop morphisms need labelled recollements".into()));
        }
        Ok(KnopMorphism { src: c.src(), tgt: c.tgt(), terms: BTreeMap::from([(c, RatFn::one())]) })
    }

    pub fn identity(u: usize) -> Self {
        Self::from_rec(Recollement::identity_labelled(u)).expect("labelled")
    }

    pub fn add_term(&mut self, c: Recollement, x: &RatFn) {
        let e = self.terms.entry(c).or_insert_with(RatFn::zero);
        *e += x;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn to_json(&self, group: &FiniteGroup) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(c, x)| json!({"rec": c.to_json(Some(group)), "coeff": x.to_string()})).collect();
        json!({"src": self.src, "tgt": self.tgt, "terms": terms})
    }

    pub fn from_json(v: &Value, group: &FiniteGroup) -> Result<Self, WreathError> {
        let bad = |m: &str| WreathError::TypeMismatch(m.into());
        let src = v["src"].as_u64().ok_or_else(|| bad("missing src"))? as usize;
        let tgt = v["tgt"].as_u64().ok_or_else(|| bad("missing tgt"))? as usize;
        let mut out = KnopMorphism::zero(src, tgt);
        for t in v["terms"].as_array().ok_or_else(|| bad("terms must be a list"))? {
            let c = Recollement::from_json(&t["rec"], Some(group))?;
            if c.src() != src || c.tgt() != tgt || !c.is_labelled() {
                return Err(bad("term does not match the declared sizes"));
            }
            let x = RatFn::parse(t["coeff"].as_str().ok_or_else(|| bad("coeff must be a string"))?)?;
            out.add_term(c, &x);
        }
        Ok(out)
    }
}

/// `g ∘ f` by the labelled composition law
/// `(D)_G ∘ (C)_G = Σ |G|^k (T - |E|)_k (E)_G`.
pub fn knop_compose(f: &KnopMorphism, g: &KnopMorphism, group: &FiniteGroup) -> Result<KnopMorphism, WreathError> {
    if f.tgt != g.src {
        return Err(WreathError::TypeMismatch(format!("[{}]_G != [{}]_G", f.tgt, g.src)));
    }
    let mut out = KnopMorphism::zero(f.src, g.tgt);
    for (c, x) in &f.terms {
        for (d, z) in &g.terms {
            let xz = x * z;
            for p in compose_patterns(c, d, Some(group))? {
                out.add_term(p.result.clone(), &xz.mul_poly(&p.coefficient(group.order())));
            }
        }
    }
    Ok(out)
}

/// `[u]_G ⊗ [v]_G = ⊕_(C ∈ rec_G(u, v)) [|C|]_G`; returns each `C` with its
/// number of orbits.
pub fn knop_tensor(u: usize, v: usize, group: &FiniteGroup) -> Vec<(Recollement, usize)> {
    enumerate(u, v, Some(group.order())).into_iter().map(|c| {
        let k = c.ambient_size();
        (c, k)
    }).collect()
}

/// `F([u]_G) = ⊕_(G^u) [u]` with the `y`-maps of `k[G]`: `y_g` sends the
/// summand of `ℓ` to that of `ℓ'` by the identity recollement when `ℓ' = ℓ`
/// and the `h`-point is outside `u`, or when `ℓ'` is `ℓ` with `g` multiplied
/// on the left at the point `x` joined to the `h`-point.
pub fn functor_f_object(u: usize, group: &FiniteGroup) -> Result<WObject, WreathError> {
    let alg = FinAlgebra::group_algebra(group);
    let labels = label_tuples(u, group.order());
    let words = vec![Word::single(u); labels.len()];
    let object = Object { words: words.clone(), idem: None };
    let src = tensor_words(&[Word::single(1)], &words);
    let ident: Vec<u8> = (0..u as u8).collect();
    let diagram = |k: u8| {
        let lab: Vec<u8> = std::iter::once(k).chain(ident.iter().copied()).chain(ident.iter().copied()).collect();
        Diagram::from_labels(&lab)
    };
    let mut ys = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let mut y = Morphism::zero(&src, &words);
        for (s, l) in labels.iter().enumerate() {
            y.blocks[s][s].insert(diagram(u as u8), RatFn::one());
            for x in 0..u {
                let mut lp = l.clone();
                lp[x] = group.mul(g, l[x]);
                let t = labels.iter().position(|z| *z == lp).expect("label tuple");
                y.blocks[t][s].insert(diagram(x as u8), RatFn::one());
            }
        }
        ys.push(y);
    }
    WObject::unchecked(alg, object, ys)
}

/// `F((D)_G)`: the block from `ℓ` to `ℓ'` is the underlying recollement when
/// `ℓ(x)^-1 ℓ'(y)` equals the label of every matched pair `(x, y)`.
pub fn functor_f(f: &KnopMorphism, group: &FiniteGroup) -> Morphism {
    let ls = label_tuples(f.src, group.order());
    let lt = label_tuples(f.tgt, group.order());
    let mut m = Morphism::zero(&vec![Word::single(f.src); ls.len()], &vec![Word::single(f.tgt); lt.len()]);
    for (c, x) in &f.terms {
        let d = c.to_diagram();
        let labels = c.labels().expect("labelled");
        for (s, l) in ls.iter().enumerate() {
            for (t, lp) in lt.iter().enumerate() {
                let ok = c.matches().iter().zip(labels).all(|(&(a, b), &g)| group.mul(group.inv(l[a]), lp[b]) == g);
                if ok {
                    let e = m.blocks[t][s].entry(d.clone()).or_insert_with(RatFn::zero);
                    *e += x;
                }
            }
        }
    }
    for row in &mut m.blocks {
        for lc in row {
            lc.retain(|_, v| !v.is_zero());
        }
    }
    m
}

/// Hom-space comparison for one pair of sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComparison {
    pub src: usize,
    pub tgt: usize,
    /// `|rec_G(src, tgt)|`.
    pub knop_dim: usize,
    /// Dimension of `Rep(A_t)`-morphisms `F([src]_G) -> F([tgt]_G)` over `ℚ(T)`.
    pub etingof_dim: usize,
    /// Rank of `F` on the Knop hom space.
    pub f_rank: usize,
    /// Every `F((C)_G)` commutes with the `y`-maps.
    pub images_are_morphisms: bool,
}

impl HomComparison {
    pub fn injective(&self) -> bool {
        self.f_rank == self.knop_dim
    }

    pub fn full(&self) -> bool {
        self.f_rank == self.etingof_dim
    }
}

/// Compares Knop hom spaces with their images under `F` for all sizes `≤ max`.
pub fn compare_knop_etingof(group: &FiniteGroup, max: usize) -> Result<Vec<HomComparison>, WreathError> {
    let objects: Vec<WObject> = (0..=max).map(|u| functor_f_object(u, group)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for u in 0..=max {
        for v in 0..=max {
            let basis = enumerate(u, v, Some(group.order()));
            let mut images_are_morphisms = true;
            let mut coords = Vec::with_capacity(basis.len());
            for c in &basis {
                let img = functor_f(&KnopMorphism::from_rec(c.clone())?, group);
                images_are_morphisms &= WObject::is_morphism(&img, &objects[u], &objects[v])?;
                coords.push(img.coordinates());
            }
            let rows = coords.first().map_or(0, Vec::len);
            let mut mat = RatMatrix::zeros(rows, basis.len());
            for (j, col) in coords.iter().enumerate() {
                for (i, x) in col.iter().enumerate() {
                    if !x.is_zero() {
                        mat.set(i, j, x.clone());
                    }
                }
            }
            let (f_rank, _) = rank_profile(&mat);
            let etingof_dim = WObject::hom_space(&objects[u], &objects[v])?.len();
            out.push(HomComparison { src: u, tgt: v, knop_dim: basis.len(), etingof_dim, f_rank, images_are_morphisms });
        }
    }
    Ok(out)
}
