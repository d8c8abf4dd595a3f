//! Objects of `Rep(A_t)`: an object `M` of `Rep(S_t)` with maps
//! `y_a: h ⊗ M -> M`, one per basis element of `A`, and the `Q_1`/`Q_2`
//! calculus used to state and check the wreath conditions.

use num_traits::Zero;
use serde_json::{json, Value};

use super::algebra::FinAlgebra;
use super::WreathError;
use crate::daha::induce::{induced_object, induced_y};
use crate::daha::yobject::slot_actions;
use crate::delcat::morphism::tensor_words;
use crate::delcat::structure::{counit_map, duality_data, pairing_h};
use crate::delcat::{braiding, hom_basis, realize, Morphism, Object};
use crate::exactalg::{rank_profile, RatFn, RatMatrix, Q};
use crate::oracle::daha::PermSum;
use crate::oracle::wreath::WreathRep;
use crate::recollement::{Diagram, Word};

fn hw() -> Word {
    Word::single(1)
}

fn hhw() -> Word {
    Word::new(vec![1, 1])
}

/// `r: h -> h ⊗ h`, `e_i -> e_i ⊗ e_i`.
pub fn diag_r() -> Morphism {
    Morphism::from_diagram(&hw(), &hhw(), Diagram::from_labels(&[0u8, 0, 0])).expect("valid")
}

/// `ρ: h ⊗ h -> h`, `e_i ⊗ e_j -> δ_ij e_i`.
pub fn mult_rho() -> Morphism {
    Morphism::from_diagram(&hhw(), &hw(), Diagram::from_labels(&[0u8, 0, 0])).expect("valid")
}

/// `h ⊗ h -> h ⊗ h ⊗ h ⊗ h`, `e_i ⊗ e_j -> Σ_k e_i ⊗ e_k ⊗ e_k ⊗ e_j`.
fn split_middle() -> Morphism {
    let coev = pairing_h().transpose();
    id_h().tensor(&coev).tensor(&id_h())
}

fn id_h() -> Morphism {
    Morphism::identity(&[hw()])
}

fn hh_object() -> Object {
    Object { words: vec![hhw()], idem: None }
}

/// `s ⊗ id_M`, the unit of `Q_1(M)`.
pub fn q1_unit(m: &Object) -> Morphism {
    counit_map().tensor(&m.identity())
}

/// `f * g = f ∘ (id_h ⊗ g) ∘ (r ⊗ id_M)`.
pub fn q1_product(m: &Object, f: &Morphism, g: &Morphism) -> Result<Morphism, WreathError> {
    Ok(diag_r().tensor(&m.identity()).then(&id_h().tensor(g))?.then(f)?)
}

/// The product of `Q_2(M)`: families multiply as matrices,
/// `(f * g)_ij = Σ_k f_ik g_kj`, so that `φ` is unital.
pub fn q2_product(m: &Object, f: &Morphism, g: &Morphism) -> Result<Morphism, WreathError> {
    let id_hh = Morphism::identity(&[hhw()]);
    Ok(split_middle().tensor(&m.identity()).then(&id_hh.tensor(g))?.then(f)?)
}

/// `γ(f ⊗ g) = f ∘ (id_h ⊗ g)`.
pub fn gamma(f: &Morphism, g: &Morphism) -> Result<Morphism, WreathError> {
    Ok(id_h().tensor(g).then(f)?)
}

/// `γ'(f ⊗ g) = g ∘ (id_h ⊗ f) ∘ P12`.
pub fn gamma_prime(m: &Object, f: &Morphism, g: &Morphism) -> Result<Morphism, WreathError> {
    let h = Object::h();
    let p12 = braiding(&h, &h)?.tensor(&m.identity());
    Ok(p12.then(&id_h().tensor(f))?.then(g)?)
}

/// `θ = γ - γ'`.
pub fn theta(m: &Object, f: &Morphism, g: &Morphism) -> Result<Morphism, WreathError> {
    Ok(gamma(f, g)?.sub(&gamma_prime(m, f, g)?)?)
}

/// `φ(f) = f ∘ (ρ ⊗ id_M)`.
pub fn phi(m: &Object, f: &Morphism) -> Result<Morphism, WreathError> {
    Ok(mult_rho().tensor(&m.identity()).then(f)?)
}

/// The anti-involution reversing the two copies of `M` in every diagram of
/// `h^⊗k ⊗ M -> M`, where `k` is the number of leading `h` points.
pub fn tau(f: &Morphism) -> Result<Morphism, WreathError> {
    let nt = f.tgt.len();
    if f.src.len() != nt {
        return Err(WreathError::TypeMismatch("τ needs data on h^k ⊗ M -> M".into()));
    }
    let mut out = Morphism::zero(&f.src, &f.tgt);
    for t in 0..nt {
        for s in 0..nt {
            let (a_s, a_t) = (f.tgt[s].total(), f.tgt[t].total());
            let k = f.src[s].total() - a_s;
            if f.src[t].total() - a_t != k {
                return Err(WreathError::TypeMismatch("τ needs the same h-part in every summand".into()));
            }
            for (d, c) in &f.blocks[t][s] {
                let l = d.labels();
                let lab: Vec<u8> =
                    l[..k].iter().chain(&l[k + a_s..]).chain(&l[k..k + a_s]).copied().collect();
                out.blocks[s][t].insert(Diagram::from_labels(&lab), c.clone());
            }
        }
    }
    Ok(out)
}

/// `Q_1(X) ⊗ Q_1(Y) -> Q_1(X ⊗ Y)`: `{f_i} ⊗ {g_i} -> {f_i ⊗ g_i}`.
pub fn q1_pair(x: &Object, y: &Object, f: &Morphism, g: &Morphism) -> Result<Morphism, WreathError> {
    let spread = diag_r().tensor(&x.identity()).tensor(&y.identity());
    let swap = id_h().tensor(&braiding(&Object::h(), x)?).tensor(&y.identity());
    Ok(spread.then(&swap)?.then(&f.tensor(g))?)
}

/// `h ⊗ h -> (h ⊗ h) ⊗ (h ⊗ h)`, `e_i ⊗ e_j -> e_i ⊗ e_j ⊗ e_i ⊗ e_j`.
fn diag_r2() -> Morphism {
    let src = hhw();
    let tgt = Word::new(vec![1, 1, 1, 1]);
    let mut m = Morphism::zero(std::slice::from_ref(&src), std::slice::from_ref(&tgt));
    for d in Diagram::coarsenings(&[0u8, 1, 0, 1, 0, 1], &src, &tgt) {
        m.blocks[0][0].insert(d, RatFn::one());
    }
    m
}

/// `Q_2(X) ⊗ Q_2(Y) -> Q_2(X ⊗ Y)`: `{f_ij} ⊗ {g_ij} -> {f_ij ⊗ g_ij}`.
pub fn q2_pair(x: &Object, y: &Object, f: &Morphism, g: &Morphism) -> Result<Morphism, WreathError> {
    let spread = diag_r2().tensor(&x.identity()).tensor(&y.identity());
    let swap = Morphism::identity(&[hhw()]).tensor(&braiding(&hh_object(), x)?).tensor(&y.identity());
    Ok(spread.then(&swap)?.then(&f.tensor(g))?)
}

/// An object of `Rep(A_t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WObject {
    pub algebra: FinAlgebra,
    pub object: Object,
    /// `y[b]` for the basis element `b` of `A`.
    pub y: Vec<Morphism>,
}

/// Which wreath condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WCondition {
    /// `y_1 = s ⊗ id`.
    Unit,
    /// `y_a * y_b = y_ab`.
    Product,
    /// `θ(y_a ⊗ y_b) = φ(y_[a,b])`.
    Commutator,
}

/// The witness is the first failing basis pair.
#[derive(Clone, Debug, PartialEq)]
pub struct WCheck {
    pub holds: bool,
    pub witness: Option<(WCondition, usize, usize)>,
}

impl WObject {
    /// Builds after checking types and both wreath conditions.
    pub fn new(algebra: FinAlgebra, object: Object, y: Vec<Morphism>) -> Result<Self, WreathError> {
        let w = Self::unchecked(algebra, object, y)?;
        if let Some((c, a, b)) = w.check()?.witness {
            return Err(WreathError::RelationViolated(format!(
                "{c:?} condition at ({}, {})",
                w.algebra.basis[a], w.algebra.basis[b]
            )));
        }
        Ok(w)
    }

    pub fn unchecked(algebra: FinAlgebra, object: Object, y: Vec<Morphism>) -> Result<Self, WreathError> {
        if y.len() != algebra.dim() {
            return Err(WreathError::TypeMismatch(format!("need {} y-maps, got {}", algebra.dim(), y.len())));
        }
        let src = tensor_words(&[hw()], &object.words);
        let hm = Object::h().tensor(&object);
        for yb in &y {
            if yb.src != src || yb.tgt != object.words {
                return Err(WreathError::TypeMismatch("y-maps must map h ⊗ M -> M".into()));
            }
            Object::check_morphism(&hm, yb, &object)?;
        }
        Ok(WObject { algebra, object, y })
    }

    /// `y_x` for an arbitrary element `x` of `A`.
    pub fn y_of(&self, x: &[Q]) -> Morphism {
        let mut out = Morphism::zero(&self.y[0].src, &self.y[0].tgt);
        for (c, yb) in x.iter().zip(&self.y) {
            if !c.is_zero() {
                out = out.add(&yb.scale(&RatFn::from_q(c.clone()))).expect("same shape");
            }
        }
        out
    }

    pub fn check(&self) -> Result<WCheck, WreathError> {
        let alg = &self.algebra;
        let m = &self.object;
        let fail = |c, a, b| Ok(WCheck { holds: false, witness: Some((c, a, b)) });
        if self.y_of(&alg.unit) != q1_unit(m) {
            return fail(WCondition::Unit, 0, 0);
        }
        let d = alg.dim();
        for a in 0..d {
            for b in 0..d {
                if q1_product(m, &self.y[a], &self.y[b])? != self.y_of(&alg.mul[a][b]) {
                    return fail(WCondition::Product, a, b);
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                let comm = alg.commutator(&alg.basis_vec(a), &alg.basis_vec(b));
                if theta(m, &self.y[a], &self.y[b])? != phi(m, &self.y_of(&comm))? {
                    return fail(WCondition::Commutator, a, b);
                }
            }
        }
        Ok(WCheck { holds: true, witness: None })
    }

    /// True if `f: X -> Y` commutes with every `y_b`.
    pub fn is_morphism(f: &Morphism, x: &WObject, y: &WObject) -> Result<bool, WreathError> {
        if x.algebra != y.algebra {
            return Err(WreathError::TypeMismatch("objects over different algebras".into()));
        }
        let lift = id_h().tensor(f);
        for (yx, yy) in x.y.iter().zip(&y.y) {
            if lift.then(yy)? != yx.then(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A basis of the morphisms `X -> Y` commuting with the `y`-maps.
    pub fn hom_space(x: &WObject, y: &WObject) -> Result<Vec<Morphism>, WreathError> {
        let basis = hom_basis(&x.object, &y.object)?;
        if basis.is_empty() {
            return Ok(Vec::new());
        }
        let lifts: Vec<Morphism> = basis.iter().map(|m| id_h().tensor(m)).collect();
        let mut cols: Vec<Vec<RatFn>> = vec![Vec::new(); basis.len()];
        for (yx, yy) in x.y.iter().zip(&y.y) {
            for (j, (m, l)) in basis.iter().zip(&lifts).enumerate() {
                cols[j].extend(l.then(yy)?.sub(&yx.then(m)?)?.coordinates());
            }
        }
        let rows = cols[0].len();
        let mut mat = RatMatrix::zeros(rows, basis.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    mat.set(i, j, v.clone());
                }
            }
        }
        let (_, kernel) = rank_profile(&mat);
        let mut out = Vec::with_capacity(kernel.len());
        for v in kernel {
            let mut m = Morphism::zero(&x.object.words, &y.object.words);
            for (c, b) in v.iter().zip(&basis) {
                if !c.is_zero() {
                    m = m.add(&b.scale(c))?;
                }
            }
            out.push(m);
        }
        Ok(out)
    }

    /// The honest `A_n`-module at `T = n`.
    pub fn to_oracle(&self, n: usize) -> Result<WreathRep, WreathError> {
        let space = PermSum::of_words(&self.object.words, n);
        let e = realize(&self.object.identity(), n)?;
        let per_b: Vec<Vec<_>> =
            self.y.iter().map(|yb| Ok(slot_actions(&realize(yb, n)?, &space))).collect::<Result<_, WreathError>>()?;
        let y = (0..n).map(|i| per_b.iter().map(|v| v[i].clone()).collect()).collect();
        Ok(WreathRep { space, e, y })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra.to_json(),
            "object": self.object.to_json(),
            "y": self.y.iter().map(Morphism::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, WreathError> {
        let algebra = FinAlgebra::from_json(&v["algebra"])?;
        let object = Object::from_json(&v["object"])?;
        let y = v["y"]
            .as_array()
            .ok_or_else(|| WreathError::TypeMismatch("y must be a list".into()))?
            .iter()
            .map(Morphism::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Self::unchecked(algebra, object, y)
    }
}

/// `V_χ(X)`: `y_a = χ(a) (s ⊗ id)`.
pub fn v_chi(alg: &FinAlgebra, chi: &[Q], x: &Object) -> Result<WObject, WreathError> {
    alg.check_character(chi)?;
    let unit = q1_unit(x);
    let y = chi.iter().map(|c| unit.scale(&RatFn::from_q(c.clone()))).collect();
    WObject::unchecked(alg.clone(), x.clone(), y)
}

/// `𝟏` with `y_a = ε(a) s`.
pub fn unit_wobject(alg: &FinAlgebra) -> Result<WObject, WreathError> {
    let h = alg.hopf.as_ref().ok_or(WreathError::NotHopf)?;
    let counit = h.counit.clone();
    v_chi(alg, &counit, &Object::unit())
}

/// `X ⊗ Y` with `y_a = Σ Δ(a)_(bc) y_b ⊗ y_c`.
pub fn hopf_tensor(x: &WObject, y: &WObject) -> Result<WObject, WreathError> {
    if x.algebra != y.algebra {
        return Err(WreathError::TypeMismatch("objects over different algebras".into()));
    }
    let alg = &x.algebra;
    let (ox, oy) = (&x.object, &y.object);
    let object = ox.tensor(oy);
    let d = alg.dim();
    let mut pairs = vec![vec![None; d]; d];
    let mut ys = Vec::with_capacity(d);
    for a in 0..d {
        let delta = alg.coproduct(&alg.basis_vec(a))?;
        let mut acc = Morphism::zero(&tensor_words(&[hw()], &object.words), &object.words);
        for (b, row) in delta.iter().enumerate() {
            for (c, coeff) in row.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                if pairs[b][c].is_none() {
                    pairs[b][c] = Some(q1_pair(ox, oy, &x.y[b], &y.y[c])?);
                }
                acc = acc.add(&pairs[b][c].as_ref().expect("filled").scale(&RatFn::from_q(coeff.clone())))?;
            }
        }
        ys.push(acc);
    }
    WObject::unchecked(alg.clone(), object, ys)
}

/// The right dual: same words with the transposed idempotent and
/// `y'_a = τ(y_(S(a)))`.
pub fn hopf_dual(x: &WObject) -> Result<WObject, WreathError> {
    let alg = &x.algebra;
    let (dual, _, _) = duality_data(&x.object)?;
    let ys = (0..alg.dim())
        .map(|a| tau(&x.y_of(&alg.antipode(&alg.basis_vec(a))?)))
        .collect::<Result<Vec<_>, _>>()?;
    WObject::unchecked(alg.clone(), dual, ys)
}

/// `(coev: 1 -> X ⊗ X*, ev: X* ⊗ X -> 1)` as `Rep(A_t)`-morphisms; errors if
/// either fails to commute with the `y`-maps.
pub fn hopf_duality_maps(x: &WObject) -> Result<(WObject, Morphism, Morphism), WreathError> {
    let dual = hopf_dual(x)?;
    let (_, coev, ev) = duality_data(&x.object)?;
    let unit = unit_wobject(&x.algebra)?;
    if !WObject::is_morphism(&coev, &unit, &hopf_tensor(x, &dual)?)? {
        return Err(WreathError::RelationViolated("coevaluation does not commute with y".into()));
    }
    if !WObject::is_morphism(&ev, &hopf_tensor(&dual, x)?, &unit)? {
        return Err(WreathError::RelationViolated("evaluation does not commute with y".into()));
    }
    Ok((dual, coev, ev))
}

/// `ind(W, B_2, ..., B_l)`, associated from the left; every `B_s` is carried
/// by copies of `[J_s]` and read at `T = |J_s|`. No correction terms occur.
pub fn induce_wreath(w: &WObject, bs: &[WObject]) -> Result<WObject, WreathError> {
    let mut cur = w.clone();
    for b in bs {
        if b.algebra != w.algebra {
            return Err(WreathError::TypeMismatch("objects over different algebras".into()));
        }
        let n = match b.object.words.first() {
            Some(wd) if wd.num_factors() == 1 => wd.total(),
            _ => return Err(WreathError::TypeMismatch("factors must be carried by copies of [J]".into())),
        };
        let object = induced_object(&cur.object, &b.object, n)?;
        let ys = cur
            .y
            .iter()
            .zip(&b.y)
            .map(|(ya, yb)| induced_y(&cur.object, ya, &b.object, yb, &object, n, None))
            .collect::<Result<Vec<_>, _>>()?;
        cur = WObject::unchecked(w.algebra.clone(), object, ys)?;
    }
    Ok(cur)
}
