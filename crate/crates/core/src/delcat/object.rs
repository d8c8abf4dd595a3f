//! Objects of the Karoubi envelope: a formal sum of tensor words together
//! with an idempotent endomorphism of the sum.

use serde_json::{json, Value};

use super::morphism::{fmt_words, tensor_words, Morphism};
use super::CatError;
use crate::recollement::Word;

/// Caps on generator size and summand count for enumerations.
pub const MAX_GENERATOR_SIZE: usize = 6;
pub const MAX_SUMMANDS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Object {
    pub words: Vec<Word>,
    /// `None` means the identity.
    pub idem: Option<Morphism>,
}

impl Object {
    pub fn new(words: Vec<Word>) -> Result<Self, CatError> {
        check_caps(&words)?;
        Ok(Object { words, idem: None })
    }

    /// `[U]` with `|U| = n`.
    pub fn generator(n: usize) -> Self {
        Object { words: vec![Word::single(n)], idem: None }
    }

    pub fn unit() -> Self {
        Object { words: vec![Word::unit()], idem: None }
    }

    /// `[1]`.
    pub fn h() -> Self {
        Self::generator(1)
    }

    pub fn sum_of_generators(sizes: &[usize]) -> Result<Self, CatError> {
        Self::new(sizes.iter().map(|&n| Word::single(n)).collect())
    }

    /// The image of `e`, which must be an idempotent endomorphism of the words.
    pub fn with_idempotent(words: Vec<Word>, e: Morphism) -> Result<Self, CatError> {
        check_caps(&words)?;
        if e.src != words || e.tgt != words {
            return Err(CatError::ObjectMismatch(format!("idempotent is not an endomorphism of {}", fmt_words(&words))));
        }
        if e.then(&e)? != e {
            return Err(CatError::NotIdempotent);
        }
        if e == Morphism::identity(&words) {
            return Ok(Object { words, idem: None });
        }
        Ok(Object { words, idem: Some(e) })
    }

    pub fn identity(&self) -> Morphism {
        self.idem.clone().unwrap_or_else(|| Morphism::identity(&self.words))
    }

    pub fn is_plain(&self) -> bool {
        self.idem.is_none()
    }

    pub fn tensor(&self, other: &Object) -> Object {
        let words = tensor_words(&self.words, &other.words);
        let idem = match (&self.idem, &other.idem) {
            (None, None) => None,
            _ => Some(self.identity().tensor(&other.identity())),
        };
        Object { words, idem }
    }

    pub fn direct_sum(&self, other: &Object) -> Object {
        let mut words = self.words.clone();
        words.extend(other.words.iter().cloned());
        let idem = match (&self.idem, &other.idem) {
            (None, None) => None,
            _ => Some(block_diagonal(&self.identity(), &other.identity())),
        };
        Object { words, idem }
    }

    /// `f ↦ e_Y ∘ f ∘ e_X`.
    pub fn sandwich(x: &Object, f: &Morphism, y: &Object) -> Result<Morphism, CatError> {
        let mut g = f.clone();
        if let Some(e) = &x.idem {
            g = e.then(&g)?;
        }
        if let Some(e) = &y.idem {
            g = g.then(e)?;
        }
        Ok(g)
    }

    /// Checks `f: X -> Y` as a morphism of the envelope: `f = e_Y f e_X`.
    pub fn check_morphism(x: &Object, f: &Morphism, y: &Object) -> Result<(), CatError> {
        if f.src != x.words || f.tgt != y.words {
            return Err(CatError::ObjectMismatch(format!(
                "morphism {} -> {} between {} and {}",
                fmt_words(&f.src),
                fmt_words(&f.tgt),
                fmt_words(&x.words),
                fmt_words(&y.words)
            )));
        }
        if Self::sandwich(x, f, y)? != *f {
            return Err(CatError::ObjectMismatch("morphism is not compatible with the idempotents".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"words": self.words});
        if let Some(e) = &self.idem {
            v["idempotent"] = e.to_json();
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self, CatError> {
        let words: Vec<Word> =
            serde_json::from_value(v["words"].clone()).map_err(|e| CatError::Parse(format!("words: {e}")))?;
        match v.get("idempotent") {
            None | Some(Value::Null) => Object::new(words),
            Some(e) => Object::with_idempotent(words, Morphism::from_json(e)?),
        }
    }
}

fn check_caps(words: &[Word]) -> Result<(), CatError> {
    if words.len() > MAX_SUMMANDS {
        return Err(CatError::Truncation(format!("{} summands exceed the cap {MAX_SUMMANDS}", words.len())));
    }
    if let Some(w) = words.iter().find(|w| w.total() > MAX_GENERATOR_SIZE) {
        return Err(CatError::Truncation(format!("word of size {} exceeds the cap {MAX_GENERATOR_SIZE}", w.total())));
    }
    Ok(())
}

pub fn block_diagonal(a: &Morphism, b: &Morphism) -> Morphism {
    let mut src = a.src.clone();
    src.extend(b.src.iter().cloned());
    let mut tgt = a.tgt.clone();
    tgt.extend(b.tgt.iter().cloned());
    let mut m = Morphism::zero(&src, &tgt);
    for (t, row) in a.blocks.iter().enumerate() {
        for (s, lc) in row.iter().enumerate() {
            m.blocks[t][s] = lc.clone();
        }
    }
    let (ot, os) = (a.tgt.len(), a.src.len());
    for (t, row) in b.blocks.iter().enumerate() {
        for (s, lc) in row.iter().enumerate() {
            m.blocks[ot + t][os + s] = lc.clone();
        }
    }
    m
}
