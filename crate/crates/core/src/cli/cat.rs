//! `rec`, `cat` and `oracle` subcommands.

use std::collections::BTreeMap;

use clap::Subcommand;
use serde_json::{json, Value};

use super::input::{load_json, parse_group, parse_range, parse_sizes, parse_word};
use super::{CliError, Report};
use crate::delcat::forms::diagram_basis;
use crate::delcat::{gram_det, hom_dim, jm_endo, realize, Morphism, Object};
use crate::exactalg::{integer_roots_with_multiplicity, qi, RatFn, Q, T};
use crate::oracle::daha::PermSum;
use crate::oracle::knop::verify_g_composition;
use crate::oracle::verify_composition;
use crate::recollement::{enumerate, FiniteGroup, Recollement, Word};
use crate::wreath::{knop_compose, KnopMorphism};

/// Largest generator size accepted by `cat gram`.
const GRAM_CAP: usize = 4;

#[derive(Debug, Subcommand)]
pub enum RecCmd {
    /// List the recollements `[src] -> [tgt]` in canonical order.
    Enumerate {
        #[arg(long)]
        src: usize,
        #[arg(long)]
        tgt: usize,
        /// Finite group for labelled recollements: z<k> or s3.
        #[arg(long)]
        group: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatCmd {
    /// `second ∘ first` for morphism JSON documents.
    Compose {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        /// Compare with matrix products at these ranks, e.g. 4..6.
        #[arg(long)]
        check_n: Option<String>,
    },
    /// `left ⊗ right`.
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        check_n: Option<String>,
    },
    /// Gram determinants of `End([k])` for `k <= max-size`, with integer root sets.
    Gram {
        #[arg(long, default_value_t = 1)]
        max_size: usize,
        /// Use this object (JSON) instead of the generators.
        #[arg(long)]
        object: Option<String>,
    },
    /// The Jucys-Murphy endomorphism of a word.
    Jm {
        /// Factor sizes of the word, e.g. `1,1`; empty for the unit.
        #[arg(long, default_value = "1")]
        sizes: String,
        #[arg(long, default_value = "5..7")]
        check_n: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    /// Compare symbolic composition with brute-force counts for all pairs
    /// `[a] -> [b] -> [c]`.
    Verify {
        /// `a,b,c`.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value = "8..12")]
        n_range: String,
        /// Labelled recollements for this group (Knop's category).
        #[arg(long)]
        group: Option<String>,
    },
}

pub fn rec_str(c: &Recollement, group: Option<&FiniteGroup>) -> String {
    let pairs: Vec<String> = match (c.labels(), group) {
        (Some(l), Some(g)) => {
            c.matches().iter().zip(l).map(|((u, v), &x)| format!("{u}-{v}:{}", g.names[x])).collect()
        }
        _ => c.matches().iter().map(|(u, v)| format!("{u}-{v}")).collect(),
    };
    format!("{}->{} {{{}}}", c.src(), c.tgt(), pairs.join(","))
}

fn q_str(x: &Q) -> String {
    crate::exactalg::fmt_rational(x)
}

fn at(x: &RatFn, n: usize) -> Result<Q, CliError> {
    x.eval_var(T, &qi(n as i64))
        .and_then(|v| v.constant_value())
        .ok_or_else(|| CliError::Input(format!("{x} has no value at T = {n}")))
}

pub fn run_rec(cmd: &RecCmd) -> Result<Report, CliError> {
    let RecCmd::Enumerate { src, tgt, group } = cmd;
    let group = group.as_deref().map(parse_group).transpose()?;
    let mut r = Report::new("rec enumerate");
    let recs = enumerate(*src, *tgt, group.as_ref().map(FiniteGroup::order));
    r.set("src", json!(src));
    r.set("tgt", json!(tgt));
    if let Some(g) = &group {
        r.set("group", json!(g.names));
    }
    r.set("count", json!(recs.len()));
    r.table(&["#", "recollement", "ambient"]);
    let mut list = Vec::with_capacity(recs.len());
    for (i, c) in recs.iter().enumerate() {
        let mut v = c.to_json(group.as_ref());
        v["ambient_size"] = json!(c.ambient_size());
        list.push(v);
        r.row(vec![i.to_string(), rec_str(c, group.as_ref()), c.ambient_size().to_string()]);
    }
    r.set("recollements", Value::Array(list));
    Ok(r)
}

fn morphism(arg: &str) -> Result<Morphism, CliError> {
    Ok(Morphism::from_json(&load_json(arg)?)?)
}

fn morphism_rows(r: &mut Report, f: &Morphism) {
    r.table(&["target", "source", "diagram", "coefficient"]);
    for (t, row) in f.blocks.iter().enumerate() {
        for (s, lc) in row.iter().enumerate() {
            for (d, c) in lc {
                r.row(vec![format!("{t}:{}", f.tgt[t]), format!("{s}:{}", f.src[s]), d.to_string(), c.to_string()]);
            }
        }
    }
}

pub fn run_cat(cmd: &CatCmd) -> Result<Report, CliError> {
    match cmd {
        CatCmd::Compose { first, second, check_n } => {
            let (f, g) = (morphism(first)?, morphism(second)?);
            let h = f.then(&g)?;
            let mut r = Report::new("cat compose");
            r.set("composite", h.to_json());
            morphism_rows(&mut r, &h);
            if let Some(ns) = check_n {
                for n in parse_range(ns)? {
                    let ok = realize(&h, n)? == realize(&g, n)?.mul(&realize(&f, n)?);
                    r.check(format!("matrix product at n = {n}"), ok, Some(json!({"n": n})));
                }
            }
            Ok(r)
        }
        CatCmd::Tensor { left, right, check_n } => {
            let (f, g) = (morphism(left)?, morphism(right)?);
            let h = f.tensor(&g);
            let mut r = Report::new("cat tensor");
            r.set("tensor", h.to_json());
            morphism_rows(&mut r, &h);
            if let Some(ns) = check_n {
                let (nt2, ns2) = (g.tgt.len(), g.src.len());
                for n in parse_range(ns)? {
                    let mut bad = None;
                    'outer: for t1 in 0..f.tgt.len() {
                        for s1 in 0..f.src.len() {
                            for t2 in 0..nt2 {
                                for s2 in 0..ns2 {
                                    let lhs = realize(&h.select(&[t1 * nt2 + t2], &[s1 * ns2 + s2]), n)?;
                                    let a = realize(&f.select(&[t1], &[s1]), n)?;
                                    let b = realize(&g.select(&[t2], &[s2]), n)?;
                                    if lhs != a.kron(&b) {
                                        bad = Some(json!({"n": n, "block": [t1 * nt2 + t2, s1 * ns2 + s2]}));
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                    r.check(format!("Kronecker product at n = {n}"), bad.is_none(), bad);
                }
            }
            Ok(r)
        }
        CatCmd::Gram { max_size, object } => {
            let objects: Vec<(String, Object)> = match object {
                Some(o) => {
                    let x = Object::from_json(&load_json(o)?)?;
                    vec![(crate::delcat::morphism::fmt_words(&x.words), x)]
                }
                None => {
                    if *max_size > GRAM_CAP {
                        return Err(CliError::Usage(format!("--max-size is capped at {GRAM_CAP}")));
                    }
                    (0..=*max_size).map(|k| (format!("[{k}]"), Object::generator(k))).collect()
                }
            };
            let mut r = Report::new("cat gram");
            r.table(&["object", "dim", "determinant", "roots"]);
            let mut list = Vec::new();
            for (name, x) in &objects {
                let d = gram_det(x)?;
                let dim = hom_dim(x, x)?;
                let mut entry = json!({"object": name, "end_dim": dim, "determinant": d.to_string()});
                let roots = match d.as_poly() {
                    Some(p) if !p.is_zero() => {
                        let mut rs = integer_roots_with_multiplicity(p)?;
                        rs.sort();
                        let found: u32 = rs.iter().map(|(_, m)| *m).sum();
                        let deg = p.degree_in(T).unwrap_or(0);
                        let nonneg = rs.iter().all(|(x, _)| x.sign() != num_bigint::Sign::Minus);
                        r.check(
                            format!("End({name}): nonzero, roots are nonnegative integers"),
                            nonneg && found == deg,
                            Some(json!({"degree": deg, "integer_roots_found": found})),
                        );
                        rs
                    }
                    _ => {
                        r.check(format!("End({name}): nonzero, roots are nonnegative integers"), false, Some(json!({"determinant": d.to_string()})));
                        Vec::new()
                    }
                };
                let rj: Vec<Value> =
                    roots.iter().map(|(x, m)| json!({"root": x.to_string(), "multiplicity": m})).collect();
                let set: Vec<String> = roots.iter().map(|(x, m)| if *m > 1 { format!("{x}^{m}") } else { x.to_string() }).collect();
                entry["roots"] = Value::Array(rj);
                r.row(vec![name.clone(), dim.to_string(), d.to_string(), format!("{{{}}}", set.join(","))]);
                list.push(entry);
            }
            r.set("gram", Value::Array(list));
            Ok(r)
        }
        CatCmd::Jm { sizes, check_n } => {
            let w = parse_word(sizes)?;
            let x = Object::new(vec![w.clone()])?;
            let omega = jm_endo(&x)?;
            let mut r = Report::new("cat jm");
            let lo = 2 * w.total() + 1;
            r.set("word", json!(w));
            r.set("jm", omega.to_json());
            r.set("provenance", json!({"interpolated_from_n": (lo..lo + 4).collect::<Vec<_>>(), "degree_bound": 2}));
            morphism_rows(&mut r, &omega);
            for n in parse_range(check_n)? {
                let space = PermSum::of_words(&x.words, n);
                let mut sum = crate::oracle::QMatrix::zeros(space.dim(), space.dim());
                for i in 0..n {
                    for j in i + 1..n {
                        sum = sum.add(&space.transposition(i, j));
                    }
                }
                r.check(format!("sum of transpositions at n = {n}"), realize(&omega, n)? == sum, Some(json!({"n": n})));
            }
            let mut bad = None;
            for f in diagram_basis(&x.words, &x.words) {
                if f.then(&omega)? != omega.then(&f)? {
                    bad = Some(f.to_json());
                    break;
                }
            }
            r.check("naturality on End(X)", bad.is_none(), bad);
            Ok(r)
        }
    }
}

fn values_at(terms: &BTreeMap<Recollement, RatFn>, n: usize) -> Result<BTreeMap<Recollement, Q>, CliError> {
    let mut out = BTreeMap::new();
    for (e, x) in terms {
        let v = at(x, n)?;
        if v != qi(0) {
            out.insert(e.clone(), v);
        }
    }
    Ok(out)
}

pub fn run_oracle(cmd: &OracleCmd) -> Result<Report, CliError> {
    let OracleCmd::Verify { sizes, n_range, group } = cmd;
    let s = parse_sizes(sizes)?;
    let [a, b, c] = s[..] else { return Err(CliError::Usage("--sizes needs three sizes a,b,c".into())) };
    let ns: Vec<usize> = parse_range(n_range)?.collect();
    let group = group.as_deref().map(parse_group).transpose()?;
    let order = group.as_ref().map(FiniteGroup::order);
    let mut r = Report::new("oracle verify");
    r.set("sizes", json!([a, b, c]));
    r.set("n", json!(ns));
    if let Some(g) = &group {
        r.set("group", json!(g.names));
    }
    let mut headers = vec!["first".to_string(), "second".into(), "result".into(), "P(T)".into()];
    headers.extend(ns.iter().map(|n| format!("n={n}")));
    r.headers = headers;
    let mut pairs = Vec::new();
    let mut mismatch = None;
    for cc in enumerate(a, b, order) {
        for dd in enumerate(b, c, order) {
            let terms: BTreeMap<Recollement, RatFn> = match &group {
                Some(g) => {
                    let f = KnopMorphism::from_rec(cc.clone())?;
                    let h = KnopMorphism::from_rec(dd.clone())?;
                    knop_compose(&f, &h, g)?.terms
                }
                None => {
                    let f = Morphism::from_diagram(&Word::single(a), &Word::single(b), cc.to_diagram())?;
                    let h = Morphism::from_diagram(&Word::single(b), &Word::single(c), dd.to_diagram())?;
                    let comp = f.then(&h)?;
                    comp.blocks[0][0]
                        .iter()
                        .map(|(d, x)| Ok((Recollement::from_diagram(d, a, c)?, x.clone())))
                        .collect::<Result<_, CliError>>()?
                }
            };
            let mut oracle_tables = Vec::with_capacity(ns.len());
            for &n in &ns {
                let honest = match &group {
                    Some(g) => verify_g_composition(&cc, &dd, g, n)?,
                    None => verify_composition(&cc, &dd, n)?,
                };
                let honest: BTreeMap<Recollement, Q> = honest.into_iter().map(|(e, v)| (e, qi(v))).collect();
                let got = values_at(&terms, n)?;
                if got != honest && mismatch.is_none() {
                    mismatch = Some(json!({
                        "first": cc.to_json(group.as_ref()),
                        "second": dd.to_json(group.as_ref()),
                        "n": n,
                    }));
                }
                oracle_tables.push(honest);
            }
            let mut keys: Vec<Recollement> = terms.keys().cloned().collect();
            for t in &oracle_tables {
                keys.extend(t.keys().cloned());
            }
            keys.sort();
            keys.dedup();
            let mut rows = Vec::new();
            for e in &keys {
                let p = terms.get(e).cloned().unwrap_or_else(RatFn::zero);
                let mut values = Vec::new();
                let mut oracle = Vec::new();
                let mut cells = vec![rec_str(&cc, group.as_ref()), rec_str(&dd, group.as_ref()), rec_str(e, group.as_ref()), p.to_string()];
                for (i, &n) in ns.iter().enumerate() {
                    let v = at(&p, n)?;
                    let o = oracle_tables[i].get(e).cloned().unwrap_or_else(|| qi(0));
                    cells.push(if v == o { q_str(&v) } else { format!("{}!={}", q_str(&v), q_str(&o)) });
                    values.push(q_str(&v));
                    oracle.push(q_str(&o));
                }
                r.row(cells);
                rows.push(json!({"result": e.to_json(group.as_ref()), "coefficient": p.to_string(), "values": values, "oracle": oracle}));
            }
            pairs.push(json!({"first": cc.to_json(group.as_ref()), "second": dd.to_json(group.as_ref()), "terms": rows}));
        }
    }
    r.set("rule", json!("coefficient (T - |E|)_k over glued patterns, |G|^k (T - |E|)_k with a group"));
    r.set("pairs", Value::Array(pairs));
    r.check("interpolated coefficients equal oracle counts", mismatch.is_none(), mismatch);
    Ok(r)
}
