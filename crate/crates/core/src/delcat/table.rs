//! Memo table of structure constants, optionally persisted as JSON lines.
//!
//! Records look like
//! `{"kind":"compose","key":{...},"value":{"[[0,1]]":"T - 1"}}`; the value
//! maps a diagram (as its JSON block list) to a polynomial string.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::CatError;
use crate::exactalg::{falling_factorial, parse_poly, MultiPoly, T};
use crate::oracle::interp::interpolate_family;
use crate::recollement::diagram::compose as compose_diagrams;
use crate::recollement::{Diagram, Word};

pub type Terms = Arc<Vec<(Diagram, MultiPoly)>>;

/// Rules behind every table entry; bumping this invalidates old cache files.
const RULES: &str = "compose: (T-|E|)_free over glued patterns; jm: oracle interpolation, degree 2";

pub const CACHE_ENV: &str = "DELIGNE_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ComposeKey {
    c: Diagram,
    d: Diagram,
    src: Word,
    mid: Word,
    tgt: Word,
}

#[derive(Default)]
struct Table {
    compose: HashMap<ComposeKey, Terms>,
    jm: HashMap<Word, Terms>,
    path: Option<PathBuf>,
    loaded: bool,
}

fn table() -> &'static Mutex<Table> {
    static TABLE: OnceLock<Mutex<Table>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(Table::default()))
}

/// Hex sha256 identifying the rules that produced the table.
pub fn cache_version() -> String {
    hex::encode(Sha256::digest(RULES.as_bytes()))
}

fn terms_to_json(terms: &[(Diagram, MultiPoly)]) -> Value {
    let mut m = Map::new();
    for (d, p) in terms {
        m.insert(serde_json::to_string(d).expect("diagram serializes"), Value::String(p.to_string()));
    }
    Value::Object(m)
}

fn terms_from_json(v: &Value) -> Option<Vec<(Diagram, MultiPoly)>> {
    let mut out = Vec::new();
    for (k, p) in v.as_object()? {
        let d: Diagram = serde_json::from_str(k).ok()?;
        out.push((d, parse_poly(p.as_str()?).ok()?));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Some(out)
}

fn compose_key_json(k: &ComposeKey) -> Value {
    json!({"left": k.c, "right": k.d, "src": k.src, "mid": k.mid, "tgt": k.tgt})
}

impl Table {
    fn ensure_loaded(&mut self) {
        if self.loaded {
            return;
        }
        self.loaded = true;
        let Some(path) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else { return };
        if let Ok(file) = std::fs::File::open(&path) {
            for line in BufReader::new(file).lines().map_while(Result::ok) {
                let Ok(rec) = serde_json::from_str::<Value>(&line) else { continue };
                if rec.get("version").and_then(Value::as_str) != Some(cache_version().as_str()) {
                    continue;
                }
                let Some(terms) = terms_from_json(&rec["value"]) else { continue };
                match rec["kind"].as_str() {
                    Some("compose") => {
                        let k = &rec["key"];
                        let parsed = (|| {
                            Some(ComposeKey {
                                c: serde_json::from_value(k["left"].clone()).ok()?,
                                d: serde_json::from_value(k["right"].clone()).ok()?,
                                src: serde_json::from_value(k["src"].clone()).ok()?,
                                mid: serde_json::from_value(k["mid"].clone()).ok()?,
                                tgt: serde_json::from_value(k["tgt"].clone()).ok()?,
                            })
                        })();
                        if let Some(key) = parsed {
                            self.compose.insert(key, Arc::new(terms));
                        }
                    }
                    Some("jm") => {
                        if let Ok(w) = serde_json::from_value::<Word>(rec["key"].clone()) {
                            self.jm.insert(w, Arc::new(terms));
                        }
                    }
                    _ => {}
                }
            }
        }
        self.path = Some(path);
    }

    fn persist(&self, kind: &str, key: Value, terms: &[(Diagram, MultiPoly)]) {
        let Some(path) = &self.path else { return };
        let rec = json!({"kind": kind, "key": key, "value": terms_to_json(terms), "version": cache_version()});
        // The cache is an accelerator; failing to write it is not an error.
        if let Ok(mut f) = OpenOptions::new().create(true).append(true).open(path) {
            let _ = writeln!(f, "{rec}");
        }
    }
}

/// `d ∘ c` for single diagrams `c: src -> mid`, `d: mid -> tgt`, as
/// polynomial coefficients in canonical diagram order.
pub fn compose_terms(c: &Diagram, d: &Diagram, src: &Word, mid: &Word, tgt: &Word) -> Terms {
    // Only recollement keys are memoized; tensor words have too many pairs.
    if [src, mid, tgt].iter().any(|w| w.num_factors() > 1) {
        return Arc::new(closed_rule(c, d, src, mid, tgt));
    }
    let key = ComposeKey { c: c.clone(), d: d.clone(), src: src.clone(), mid: mid.clone(), tgt: tgt.clone() };
    {
        let mut t = table().lock().expect("table lock");
        t.ensure_loaded();
        if let Some(v) = t.compose.get(&key) {
            return v.clone();
        }
    }
    let terms: Terms = Arc::new(closed_rule(c, d, src, mid, tgt));
    let mut t = table().lock().expect("table lock");
    if let Some(v) = t.compose.get(&key) {
        return v.clone();
    }
    t.persist("compose", compose_key_json(&key), &terms);
    t.compose.insert(key, terms.clone());
    terms
}

fn closed_rule(c: &Diagram, d: &Diagram, src: &Word, mid: &Word, tgt: &Word) -> Vec<(Diagram, MultiPoly)> {
    let mut acc: std::collections::BTreeMap<Diagram, MultiPoly> = std::collections::BTreeMap::new();
    for (e, free) in compose_diagrams(c, d, src, mid, tgt) {
        let base = MultiPoly::var_plus(T, -(e.num_blocks() as i64));
        let coeff = falling_factorial(&base, free);
        *acc.entry(e).or_insert_with(MultiPoly::zero) += &coeff;
    }
    acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
}

/// Number of transpositions `τ` of `0..n` with `τ ∘ f = g`.
fn transpositions_between(f: &[u8], g: &[u8], n: usize) -> usize {
    match f.iter().zip(g).find(|(a, b)| a != b) {
        None => {
            let mut used = vec![false; n];
            for &v in f {
                used[v as usize] = true;
            }
            let free = used.iter().filter(|u| !**u).count();
            free * free.saturating_sub(1) / 2
        }
        Some((&x, &y)) => {
            let tau = |v: u8| if v == x { y } else if v == y { x } else { v };
            usize::from(f.iter().zip(g).all(|(&a, &b)| tau(a) == b))
        }
    }
}

/// Coefficients of `Σ_(i<j) (i j)` on the word `w` in the diagram basis,
/// interpolated from the permutation-module action (degree bound 2).
pub fn jm_terms(w: &Word) -> Result<Terms, CatError> {
    {
        let mut t = table().lock().expect("table lock");
        t.ensure_loaded();
        if let Some(v) = t.jm.get(w) {
            return Ok(v.clone());
        }
    }
    let a = w.total();
    let min_n = 2 * a + 1;
    let mut terms = Vec::new();
    for d in Diagram::enumerate(w, w) {
        let rep = d.labels().to_vec();
        let (f, g) = rep.split_at(a);
        let p = interpolate_family(min_n, 2, |n| Ok(MultiPoly::from_i64(transpositions_between(f, g, n) as i64)))?;
        if !p.is_zero() {
            terms.push((d, p));
        }
    }
    let terms = Arc::new(terms);
    let mut t = table().lock().expect("table lock");
    t.persist("jm", json!(w), &terms);
    t.jm.insert(w.clone(), terms.clone());
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    #[test]
    fn discrete_square() {
        let w = Word::single(1);
        let disc = Diagram::from_labels(&[0u8, 1]);
        let id = Diagram::from_labels(&[0u8, 0]);
        let t = compose_terms(&disc, &disc, &w, &w, &w);
        assert_eq!(t.as_slice(), &[(id, parse_poly("T - 1").unwrap()), (disc, parse_poly("T - 2").unwrap())]);
    }

    #[test]
    fn jm_on_unit_and_point() {
        let t = jm_terms(&Word::unit()).unwrap();
        assert_eq!(t[0].1, parse_poly("1/2*T^2 - 1/2*T").unwrap());
        let t = jm_terms(&Word::single(1)).unwrap();
        let id = Diagram::from_labels(&[0u8, 0]);
        let disc = Diagram::from_labels(&[0u8, 1]);
        let get = |d: &Diagram| t.iter().find(|(e, _)| e == d).map(|(_, p)| p.clone());
        assert_eq!(get(&id), Some(parse_poly("1/2*T^2 - 3/2*T + 1").unwrap()));
        assert_eq!(get(&disc), Some(MultiPoly::one()));
    }

    #[test]
    fn transposition_counts() {
        assert_eq!(transpositions_between(&[0], &[0], 4), 3);
        assert_eq!(transpositions_between(&[0, 1], &[1, 0], 4), 1);
        assert_eq!(transpositions_between(&[0, 1], &[1, 2], 4), 0);
        assert_eq!(transpositions_between(&[0, 1], &[0, 2], 4), 1);
    }
}
