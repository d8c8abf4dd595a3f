//! `y`-objects, the interpolated relation and the evaluation functor.

use std::sync::OnceLock;

use num_traits::Zero;
use serde_json::{json, Value};

use super::DahaError;
use crate::delcat::morphism::{fmt_words, tensor_words};
use crate::delcat::structure::pairing_h;
use crate::delcat::{braiding, jm_endo, realize, Morphism, Object};
use crate::exactalg::{q, MultiPoly, RatFn, Var, Q, T};
use crate::oracle::daha::{ev_rep, DahaRep, PermSum};
use crate::oracle::QMatrix;
use crate::recollement::{Diagram, Word};

/// An object `M` of `Rep(S_t)` with `y: h ⊗ M -> M`.
#[derive(Clone, Debug, PartialEq)]
pub struct YObject {
    pub object: Object,
    pub y: Morphism,
}

/// Outcome of the relation check; the witness is the first nonzero block
/// `(target summand, source summand, diagram, coefficient)` of `LHS - RHS`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub holds: bool,
    pub witness: Option<(usize, usize, Diagram, RatFn)>,
}

impl YObject {
    /// Builds the object after checking types and the relation.
    pub fn new(object: Object, y: Morphism) -> Result<Self, DahaError> {
        let out = Self::unchecked(object, y)?;
        let check = out.check_relation()?;
        if let Some((t, s, d, c)) = check.witness {
            return Err(DahaError::RelationViolated(format!("block ({t}, {s}), diagram {d}: {c}")));
        }
        Ok(out)
    }

    /// Builds the object after checking types only.
    pub fn unchecked(object: Object, y: Morphism) -> Result<Self, DahaError> {
        let src = tensor_words(&[Word::single(1)], &object.words);
        if y.src != src || y.tgt != object.words {
            return Err(DahaError::TypeMismatch(format!(
                "y must map {} -> {}, got {} -> {}",
                fmt_words(&src),
                fmt_words(&object.words),
                fmt_words(&y.src),
                fmt_words(&y.tgt)
            )));
        }
        let hm = Object::h().tensor(&object);
        Object::check_morphism(&hm, &y, &object)?;
        Ok(YObject { object, y })
    }

    pub fn zero() -> Self {
        YObject { object: Object { words: Vec::new(), idem: None }, y: Morphism::zero(&[], &[]) }
    }

    /// `(y ∘ (id ⊗ y) ∘ (id - P12), κ (B_h ⊗ id) ∘ [Ω13, Ω23])` on `h ⊗ h ⊗ M`,
    /// with `κ = -1/12` matching the normalization `y_i -> a + ½ Σ (i j)`:
    /// at integer `n` the bracket side is `-3 Σ_k ((i j k) - (i k j))` while
    /// `[y_i, y_j] = ¼ Σ_k ((i j k) - (i k j))`.
    pub fn relation_sides(&self) -> Result<(Morphism, Morphism), DahaError> {
        let h = Object::h();
        let m = &self.object;
        let hm = h.tensor(m);
        let hhm = h.tensor(&hm);
        let id_h = h.identity();
        let p12 = braiding(&h, &h)?.tensor(&m.identity());
        let lhs = hhm.identity().sub(&p12)?.then(&id_h.tensor(&self.y))?.then(&self.y)?;
        let o23 = id_h.tensor(&jm_endo(&hm)?);
        let o13 = p12.then(&o23)?.then(&p12)?;
        let comm = o23.then(&o13)?.sub(&o13.then(&o23)?)?;
        let rhs = comm.then(&pairing_h().tensor(&m.identity()))?.scale(&RatFn::from_q(relation_scale()));
        Ok((lhs, rhs))
    }

    pub fn check_relation(&self) -> Result<RelationCheck, DahaError> {
        let (lhs, rhs) = self.relation_sides()?;
        let diff = lhs.sub(&rhs)?;
        let witness = diff.first_nonzero();
        Ok(RelationCheck { holds: witness.is_none(), witness })
    }

    pub fn scaled(&self, c: &RatFn) -> YObject {
        YObject { object: self.object.clone(), y: self.y.scale(c) }
    }

    /// True if `f: X -> Y` commutes with the `y`-maps.
    pub fn is_morphism(f: &Morphism, x: &YObject, y: &YObject) -> Result<bool, DahaError> {
        let lhs = Morphism::identity(&[Word::single(1)]).tensor(f).then(&y.y)?;
        let rhs = x.y.then(f)?;
        Ok(lhs == rhs)
    }

    /// Substitute parameters (not `T`) by rationals.
    pub fn specialize(&self, assignment: &[(Var, Q)]) -> Result<YObject, DahaError> {
        let idem = match &self.object.idem {
            None => None,
            Some(e) => Some(e.specialize(assignment)?),
        };
        Ok(YObject {
            object: Object { words: self.object.words.clone(), idem },
            y: self.y.specialize(assignment)?,
        })
    }

    /// The honest `H_n`-module at `T = n` after substituting `assignment`.
    pub fn to_oracle(&self, n: usize, assignment: &[(Var, Q)]) -> Result<DahaRep, DahaError> {
        let s = self.specialize(assignment)?;
        let space = PermSum::of_words(&s.object.words, n);
        let e = realize(&s.object.identity(), n)?;
        let y = slot_actions(&realize(&s.y, n)?, &space);
        Ok(DahaRep { space, e, y })
    }

    pub fn to_json(&self) -> Value {
        json!({"object": self.object.to_json(), "y": self.y.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self, DahaError> {
        let object = Object::from_json(&v["object"])?;
        let y = Morphism::from_json(&v["y"])?;
        Self::unchecked(object, y)
    }
}

/// Splits the realization of `h ⊗ M -> M` into the actions of the `n` slots of `h`.
pub(crate) fn slot_actions(big: &QMatrix, space: &PermSum) -> Vec<QMatrix> {
    let n = space.n;
    let dims: Vec<usize> = space.parts.iter().map(|p| p.dim()).collect();
    let mut src_off = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in &dims {
        src_off.push(acc);
        acc += n * d;
    }
    (0..n)
        .map(|k| {
            let mut triples = Vec::new();
            for r in 0..big.rows() {
                for (c, v) in big.row(r) {
                    let part = src_off.iter().rposition(|&o| o <= *c).expect("column in range");
                    let local = c - src_off[part];
                    if local / dims[part] == k {
                        triples.push((r, space.offset(part) + local % dims[part], v.clone()));
                    }
                }
            }
            QMatrix::from_triples(space.dim(), space.dim(), triples)
        })
        .collect()
}

/// Kind of a diagram `h ⊗ [w] -> [w]` for the evaluation functor, read off a
/// representative `(k, f, g)`.
enum EvKind {
    /// `f = g` and `k` is a value of `f`.
    Inside,
    /// `f = g` and `k` is not a value of `f`; carries the number of values of `f`.
    Outside(usize),
    /// `g = (k j) ∘ f` for some `j != k`.
    Transposed,
    Other,
}

fn ev_kind(d: &Diagram, w: &Word) -> EvKind {
    let labels = d.labels();
    let a = w.total();
    let k = labels[0];
    let (f, g) = (&labels[1..1 + a], &labels[1 + a..]);
    if f == g {
        if f.contains(&k) {
            return EvKind::Inside;
        }
        let mut vals = f.to_vec();
        vals.sort_unstable();
        vals.dedup();
        return EvKind::Outside(vals.len());
    }
    let Some((&x, &y)) = f.iter().zip(g).find(|(x, y)| x != y) else { return EvKind::Other };
    let j = if x == k {
        y
    } else if y == k {
        x
    } else {
        return EvKind::Other;
    };
    let tau = |v: u8| if v == k { j } else if v == j { k } else { v };
    if f.iter().zip(g).all(|(&x, &y)| tau(x) == y) {
        EvKind::Transposed
    } else {
        EvKind::Other
    }
}

/// The constants `(c1, c2)` in the evaluation `y`-map: the coefficient of
/// the diagram with `f = g` and the `h`-point outside is `a + c1 (T - |f| - 1)`,
/// and a transposition at the `h`-point carries `c2`. Read off the oracle
/// module `ev_0(C[inj(1, I)])` at `n = 3, 4, 5`.
pub fn ev_constants() -> Result<(Q, Q), DahaError> {
    static CONSTANTS: OnceLock<(Q, Q)> = OnceLock::new();
    if let Some(c) = CONSTANTS.get() {
        return Ok(c.clone());
    }
    let mut found: Option<(Q, Q)> = None;
    for n in 3..=5usize {
        let space = PermSum::of_words(&[Word::single(1)], n);
        let dim = space.dim();
        let rep = ev_rep(&Q::zero(), space.clone(), QMatrix::identity(dim));
        // k = 0, f = (1): diagonal entry; g = (0): transposition (0 1).
        let basis = &space.parts[0];
        let f = basis.index_of(&[1]).expect("n >= 2");
        let g = basis.index_of(&[0]).expect("n >= 1");
        let c1 = rep.y[0].get(f, f) / Q::from_integer((n as i64 - 2).into());
        let c2 = rep.y[0].get(g, f);
        match &found {
            None => found = Some((c1, c2)),
            Some(prev) if *prev != (c1.clone(), c2.clone()) => {
                return Err(DahaError::RelationViolated(format!("evaluation constants vary with n: {prev:?} vs ({c1}, {c2})")));
            }
            _ => {}
        }
    }
    let c = found.expect("three samples");
    Ok(CONSTANTS.get_or_init(|| c).clone())
}

/// `ev_a(X)`: `y_i = a + ½ Σ_(j != i) (i j)` interpolated to `Rep(S_T)`.
pub fn ev(a: &RatFn, x: &Object) -> Result<YObject, DahaError> {
    let (c1, c2) = ev_constants()?;
    let src = tensor_words(&[Word::single(1)], &x.words);
    let mut y = Morphism::zero(&src, &x.words);
    for (i, w) in x.words.iter().enumerate() {
        for d in Diagram::enumerate(&src[i], w) {
            let c = match ev_kind(&d, w) {
                EvKind::Inside => a.clone(),
                EvKind::Outside(vals) => {
                    let shift = MultiPoly::var_plus(T, -(vals as i64) - 1).scale(&c1);
                    a + &RatFn::from_poly(shift)
                }
                EvKind::Transposed => RatFn::from_q(c2.clone()),
                EvKind::Other => continue,
            };
            if !c.is_zero() {
                y.blocks[i][i].insert(d, c);
            }
        }
    }
    let hm = Object::h().tensor(x);
    let y = Object::sandwich(&hm, &y, x)?;
    Ok(YObject { object: x.clone(), y })
}

pub fn relation_scale() -> Q {
    q(-1, 12)
}

/// Half, as used by the evaluation and induction rules.
pub(crate) fn half() -> Q {
    q(1, 2)
}
