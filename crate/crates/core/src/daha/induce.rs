//! Induction `Rep(H_(t-n)) × Rep(H_n) -> Rep(H_t)` on recollements, and the
//! standard modules `M^t(a)_π`.

use num_traits::{One, Zero};

use super::yobject::{ev, half, YObject};
use super::DahaError;
use crate::delcat::morphism::{add_term, tensor_words, LinComb};
use crate::delcat::structure::{disjoint_union_diagram, is_bijection};
use crate::delcat::{CatError, Morphism, Object};
use crate::exactalg::{MultiPoly, RatFn, Q, T};
use crate::recollement::combinat::permutations;
use crate::recollement::{Diagram, Word};

/// `c(T) -> c(T - n)`.
fn shift(c: &RatFn, n: usize) -> Result<RatFn, CatError> {
    c.substitute(T, &MultiPoly::var_plus(T, -(n as i64)))
        .ok_or_else(|| CatError::PoleAtSpecialization(format!("{c} at T - {n}")))
}

/// `c(n)`; the result may still involve other parameters.
fn at_n(c: &RatFn, n: usize) -> Result<RatFn, CatError> {
    c.eval_var(T, &Q::from_integer(n.into()))
        .ok_or_else(|| CatError::PoleAtSpecialization(format!("{c} has a pole at T = {n}")))
}

/// `g = (k x) ∘ f` for some value `x` accepted by `allowed`.
fn is_transposed(k: u8, f: &[u8], g: &[u8], allowed: impl Fn(u8) -> bool) -> bool {
    let Some((&x, &y)) = f.iter().zip(g).find(|(x, y)| x != y) else { return false };
    let other = if x == k {
        y
    } else if y == k {
        x
    } else {
        return false;
    };
    if other == k || !allowed(other) {
        return false;
    }
    let tau = |v: u8| if v == k { other } else if v == other { k } else { v };
    f.iter().zip(g).all(|(&x, &y)| tau(x) == y)
}

/// The underlying object of `ind(A, B)`: `A` built from generators `[V]`
/// over `T - n`, `B` carried by copies of `[J]`, `|J| = n`, read at `T = n`.
/// Summands are ordered with the `A` index major.
pub(crate) fn induced_object(a: &Object, b: &Object, n: usize) -> Result<Object, CatError> {
    let jw = Word::single(n);
    if a.words.iter().any(|w| w.num_factors() > 1) {
        return Err(CatError::TypeMismatch("induction needs A built from generators [V]".into()));
    }
    if b.words.iter().any(|w| *w != jw) {
        return Err(CatError::TypeMismatch(format!("B must be carried by copies of [{n}]")));
    }
    let (na, nb) = (a.words.len(), b.words.len());
    let words: Vec<Word> = a.words.iter().flat_map(|w| (0..nb).map(move |_| Word::single(w.total() + n))).collect();
    if words.is_empty() {
        return Ok(Object { words, idem: None });
    }
    let ea = a.identity();
    let eb = b.identity();
    let mut e = Morphism::zero(&words, &words);
    for t in 0..na {
        for s in 0..na {
            let (v, vp) = (a.words[s].total(), a.words[t].total());
            for tp in 0..nb {
                for sp in 0..nb {
                    let mut acc = LinComb::new();
                    for (c, x) in &ea.blocks[t][s] {
                        let x = shift(x, n)?;
                        for (d, z) in &eb.blocks[tp][sp] {
                            if !is_bijection(d, n) {
                                continue;
                            }
                            add_term(&mut acc, disjoint_union_diagram(c, v, vp, d, n), &(&x * &at_n(z, n)?));
                        }
                    }
                    e.blocks[t * nb + tp][s * nb + sp] = acc;
                }
            }
        }
    }
    Object::with_idempotent(words, e)
}

/// The `y`-map `h ⊗ ind(A, B) -> ind(A, B)` assembled from `ya` and `yb`.
/// Slots outside `J` act through `A`, slots in `J` through `B`; with
/// `cross = Some(c)` a slot `k ∉ J` also carries `-c Σ_(j ∈ J) (k j)` and a
/// slot `k ∈ J` carries `+c Σ_(i ∉ J) (k i)`.
pub(crate) fn induced_y(
    a: &Object,
    ya: &Morphism,
    b: &Object,
    yb: &Morphism,
    object: &Object,
    n: usize,
    cross: Option<&Q>,
) -> Result<Morphism, CatError> {
    let words = &object.words;
    let (na, nb) = (a.words.len(), b.words.len());
    let src = tensor_words(&[Word::single(1)], words);
    let mut y = Morphism::zero(&src, words);
    if words.is_empty() {
        return Ok(y);
    }
    let mut yb_n: Vec<Vec<LinComb>> = vec![vec![LinComb::new(); nb]; nb];
    for tp in 0..nb {
        for sp in 0..nb {
            for (d, c) in &yb.blocks[tp][sp] {
                add_term(&mut yb_n[tp][sp], d.clone(), &at_n(c, n)?);
            }
        }
    }
    let cross = cross.map(|c| RatFn::from_q(c.clone()));
    for t in 0..na {
        for s in 0..na {
            let (us, ut) = (a.words[s].total(), a.words[t].total());
            let ya = &ya.blocks[t][s];
            for tp in 0..nb {
                for sp in 0..nb {
                    let yb = &yb_n[tp][sp];
                    let (row, col) = (t * nb + tp, s * nb + sp);
                    let mut acc = LinComb::new();
                    for d in Diagram::enumerate(&src[col], &words[row]) {
                        let l = d.labels();
                        let k = l[0];
                        let (p, qq) = l[1..].split_at(us + n);
                        let (pu, pj) = p.split_at(us);
                        let (qu, qj) = qq.split_at(ut);
                        let mut coeff = RatFn::zero();
                        if !pj.contains(&k) {
                            if qj == pj && tp == sp {
                                let lab: Vec<u8> =
                                    std::iter::once(k).chain(pu.iter().copied()).chain(qu.iter().copied()).collect();
                                if let Some(x) = ya.get(&Diagram::from_labels(&lab)) {
                                    coeff += &shift(x, n)?;
                                }
                            }
                            if let Some(c) = &cross {
                                if t == s && tp == sp && is_transposed(k, p, qq, |x| pj.contains(&x)) {
                                    coeff -= c;
                                }
                            }
                        } else {
                            let j0 = pj.iter().position(|&v| v == k).expect("k in pj");
                            if t == s && pu == qu {
                                let sigma: Option<Vec<u8>> =
                                    qj.iter().map(|v| pj.iter().position(|x| x == v).map(|i| i as u8)).collect();
                                if let Some(sigma) = sigma {
                                    let lab: Vec<u8> =
                                        std::iter::once(j0 as u8).chain(0..n as u8).chain(sigma.iter().copied()).collect();
                                    if let Some(x) = yb.get(&Diagram::from_labels(&lab)) {
                                        coeff += x;
                                    }
                                }
                            }
                            if let Some(c) = &cross {
                                if t == s && tp == sp && is_transposed(k, p, qq, |x| !pj.contains(&x)) {
                                    coeff += c;
                                }
                            }
                        }
                        add_term(&mut acc, d, &coeff);
                    }
                    y.blocks[row][col] = acc;
                }
            }
        }
    }
    let hm = Object::h().tensor(object);
    Object::sandwich(&hm, &y, object)
}

/// `ind(A, B)` with `A` over `T - n` and `B` an `H_n`-module carried by
/// copies of `[J]`, `|J| = n`, read at `T = n`.
///
/// The `y`-map of the result follows from the embedding `H_m ⊗ H_n -> H_(m+n)`
/// preserving the `x`-generators: `y_k` acts through `A` with an extra
/// `-½ Σ_(j ∈ J) (k j)` for `k ∉ J`, and through `B` with an extra
/// `+½ Σ_(i ∉ J) (k i)` for `k ∈ J`.
pub fn induce(a: &YObject, b: &YObject, n: usize) -> Result<YObject, DahaError> {
    let object = induced_object(&a.object, &b.object, n)?;
    if object.words.is_empty() {
        return Ok(YObject::zero());
    }
    let y = induced_y(&a.object, &a.y, &b.object, &b.y, &object, n, Some(&half()))?;
    Ok(YObject { object, y })
}

/// `ρ_i = (k + 1 - 2i)/2` for `i = 1..k`.
pub fn rho(k: usize) -> Vec<Q> {
    (1..=k).map(|i| Q::new((k as i64 + 1 - 2 * i as i64).into(), 2.into())).collect()
}

/// A partition `l_2 ≥ ... ≥ l_k` and parameters `a_1, ..., a_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardParams {
    pub parts: Vec<usize>,
    pub a: Vec<RatFn>,
}

impl StandardParams {
    pub fn new(parts: Vec<usize>, a: Vec<RatFn>) -> Result<Self, DahaError> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(DahaError::TypeMismatch("parts must be positive and weakly decreasing".into()));
        }
        if a.len() != parts.len() + 1 {
            return Err(DahaError::TypeMismatch(format!("need {} parameters, got {}", parts.len() + 1, a.len())));
        }
        Ok(StandardParams { parts, a })
    }

    /// `a_i + ρ_i`.
    pub fn shifted(&self) -> Vec<RatFn> {
        let r = rho(self.a.len());
        self.a.iter().zip(r).map(|(a, r)| a + &RatFn::from_q(r)).collect()
    }
}

/// `[J]` cut down to the trivial module by the symmetrizer.
pub fn trivial_on_j(n: usize) -> Result<Object, DahaError> {
    let jw = Word::single(n);
    let perms = permutations(n);
    let c = RatFn::from_q(Q::one() / crate::exactalg::rational::factorial(n));
    let mut e = Morphism::zero(std::slice::from_ref(&jw), std::slice::from_ref(&jw));
    for sigma in perms {
        let lab: Vec<usize> = (0..n).chain(sigma.iter().copied()).collect();
        e.blocks[0][0].insert(Diagram::from_labels(&lab), c.clone());
    }
    Ok(Object::with_idempotent(vec![jw], e)?)
}

/// `M^T(a)_π = ind(ev_(a_1+ρ_1) 1, ..., ev_(a_k+ρ_k) 1)`, associated from the left.
pub fn standard_module(params: &StandardParams) -> Result<YObject, DahaError> {
    let b = params.shifted();
    let mut m = ev(&b[0], &Object::unit())?;
    for (l, bi) in params.parts.iter().zip(&b[1..]) {
        let triv = ev(bi, &trivial_on_j(*l)?)?;
        m = induce(&m, &triv, *l)?;
    }
    Ok(m)
}

/// No difference `(a_i + ρ_i) - (a_j + ρ_j)`, `i < j`, is a negative integer.
/// Differences that are not constants never are.
pub fn is_in_dk(params: &StandardParams) -> bool {
    let b = params.shifted();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if let Some(c) = (&b[i] - &b[j]).constant_value() {
                if c.is_integer() && c < Q::zero() {
                    return false;
                }
            }
        }
    }
    true
}
