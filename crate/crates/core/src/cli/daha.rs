//! `daha` subcommands.

use clap::Subcommand;
use serde_json::{json, Value};

use super::input::{load_json, parse_params, parse_q, parse_q_list, parse_range, parse_sizes};
use super::{CliError, Report};
use crate::daha::{
    ev, ev_constants, generic_params, generic_simplicity_evidence, grid_scan, induce, is_in_dk, random_off_hyperplane,
    standard_module, GridPoint, RelationCheck, StandardParams, YObject,
};
use crate::delcat::morphism::tensor_words;
use crate::delcat::Object;
use crate::exactalg::{fmt_rational, RatFn, Var, Q, T};
use crate::oracle::daha::{ev_rep, PermSum};
use crate::oracle::QMatrix;
use crate::recollement::Word;

#[derive(Debug, Subcommand)]
pub enum DahaCmd {
    /// The evaluation object `ev_a(X)`.
    Ev {
        /// Rational, expression in a1, a2, ..., or `indeterminate`.
        #[arg(long, default_value = "indeterminate")]
        a: String,
        /// `X` as a sum of generators, e.g. `0,1,2`.
        #[arg(long, default_value = "1")]
        sizes: String,
        /// `X` as an object JSON (overrides --sizes).
        #[arg(long)]
        object: Option<String>,
        /// Compare with the honest evaluation module at these ranks.
        #[arg(long)]
        check_n: Option<String>,
        /// Value substituted for every parameter in the oracle comparison.
        #[arg(long, default_value = "2/3")]
        sample: String,
    },
    /// Induction `ind(A, B)` with `B` carried by copies of `[n]`.
    Induce {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: usize,
    },
    /// The standard module `M^T(a)_π`.
    Standard {
        /// Parts of π, weakly decreasing.
        #[arg(long, default_value = "1")]
        parts: String,
        /// One parameter per part plus one; indeterminate by default.
        #[arg(long)]
        a: Option<String>,
        /// Also check the defining relation.
        #[arg(long)]
        check: bool,
    },
    /// Check the defining relation of a y-object JSON.
    Check {
        #[arg(long)]
        input: String,
    },
    /// Evidence for generic simplicity of `M^T(a)_π`; not a proof.
    Evidence {
        #[arg(long, default_value = "1")]
        parts: String,
        /// Ranks for Burnside checks.
        #[arg(long, default_value = "4,5")]
        n: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random points off the listed hyperplanes.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Rational grid for a scan of all parameter pairs, e.g. `-2,-1,0,1/2,7/3`.
        #[arg(long)]
        grid: Option<String>,
    },
}

fn relation_witness(c: &RelationCheck, y: &YObject) -> Option<Value> {
    let src = tensor_words(&[Word::single(1)], &y.y.src);
    c.witness.as_ref().map(|(t, s, d, x)| {
        json!({
            "target_summand": t,
            "source_summand": s,
            "source_word": src.get(*s).map(|w| w.to_string()).unwrap_or_default(),
            "target_word": y.y.tgt.get(*t).map(|w| w.to_string()).unwrap_or_default(),
            "recollement": d.to_string(),
            "diagram": d,
            "difference": x.to_string(),
        })
    })
}

fn relation_check(r: &mut Report, y: &YObject) -> Result<(), CliError> {
    let c = y.check_relation()?;
    r.check("y ∘ (id ⊗ y) ∘ (id - P12) = κ (B_h ⊗ id) ∘ [Ω13, Ω23]", c.holds, relation_witness(&c, y));
    Ok(())
}

fn object_arg(sizes: &str, object: &Option<String>) -> Result<Object, CliError> {
    match object {
        Some(o) => Ok(Object::from_json(&load_json(o)?)?),
        None => Ok(Object::sum_of_generators(&parse_sizes(sizes)?)?),
    }
}

/// Every parameter other than `T` in `x`.
fn params_of(x: &RatFn) -> Vec<Var> {
    let mut v: Vec<Var> = x.num().vars().into_iter().chain(x.den().vars()).filter(|&v| v != T).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn grid_json(points: &[GridPoint]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| {
                json!({
                    "n": p.n,
                    "a": p.a.iter().map(fmt_rational).collect::<Vec<_>>(),
                    "simple": p.simple,
                    "on_listed_hyperplane": p.on_hyperplane,
                })
            })
            .collect(),
    )
}

pub fn run(cmd: &DahaCmd) -> Result<Report, CliError> {
    match cmd {
        DahaCmd::Ev { a, sizes, object, check_n, sample } => {
            let a = parse_params(a)?.remove(0);
            let x = object_arg(sizes, object)?;
            let y = ev(&a, &x)?;
            let mut r = Report::new("daha ev");
            let (c1, c2) = ev_constants()?;
            r.set("a", json!(a.to_string()));
            r.set(
                "ev_constants",
                json!({
                    "source": "oracle evaluation modules at n = 3, 4, 5",
                    "diagonal_shift": fmt_rational(&c1),
                    "transposition": fmt_rational(&c2),
                    "written_coefficients": {"transposition": "1", "diagonal": "a + |I| - |U| - 1"},
                    "reconciled": false,
                }),
            );
            r.set("yobject", y.to_json());
            relation_check(&mut r, &y)?;
            if let Some(ns) = check_n {
                let s = parse_q(sample)?;
                let assignment: Vec<(Var, Q)> = params_of(&a).into_iter().map(|v| (v, s.clone())).collect();
                let mut av = a.clone();
                for (v, x) in &assignment {
                    av = av.eval_var(*v, x).ok_or_else(|| CliError::Input(format!("a has a pole at {x}")))?;
                }
                let av = av.constant_value().ok_or_else(|| CliError::Input("a must not involve T".into()))?;
                for n in parse_range(ns)? {
                    let sym = y.to_oracle(n, &assignment)?;
                    let space = PermSum::of_words(&x.words, n);
                    let d = space.dim();
                    let honest = ev_rep(&av, space, QMatrix::identity(d));
                    r.check(
                        format!("oracle evaluation module at n = {n}, a = {}", fmt_rational(&av)),
                        sym.y == honest.y,
                        Some(json!({"n": n})),
                    );
                }
            }
            Ok(r)
        }
        DahaCmd::Induce { a, b, n } => {
            let ya = YObject::from_json(&load_json(a)?)?;
            let yb = YObject::from_json(&load_json(b)?)?;
            let y = induce(&ya, &yb, *n)?;
            let mut r = Report::new("daha induce");
            r.set("yobject", y.to_json());
            relation_check(&mut r, &y)?;
            Ok(r)
        }
        DahaCmd::Standard { parts, a, check } => {
            let parts = parse_sizes(parts)?;
            let params = match a {
                None => generic_params(&parts)?,
                Some(s) => StandardParams::new(parts.clone(), parse_params(s)?)?,
            };
            let y = standard_module(&params)?;
            let mut r = Report::new("daha standard");
            r.set("parts", json!(parts));
            r.set("a", json!(params.a.iter().map(ToString::to_string).collect::<Vec<_>>()));
            r.set("shifted", json!(params.shifted().iter().map(ToString::to_string).collect::<Vec<_>>()));
            r.set("in_dk", json!(is_in_dk(&params)));
            r.set("yobject", y.to_json());
            if *check {
                relation_check(&mut r, &y)?;
            }
            Ok(r)
        }
        DahaCmd::Check { input } => {
            let y = YObject::from_json(&load_json(input)?)?;
            let mut r = Report::new("daha check");
            r.set("words", json!(y.object.words));
            relation_check(&mut r, &y)?;
            Ok(r)
        }
        DahaCmd::Evidence { parts, n, seed, samples, grid } => {
            let parts = parse_sizes(parts)?;
            let ns = parse_sizes(n)?;
            let y = standard_module(&generic_params(&parts)?)?;
            let ev = generic_simplicity_evidence(&y, &[], *seed)?;
            let mut r = Report::new("daha evidence");
            r.set("kind", json!("evidence, not a proof"));
            r.set("parts", json!(parts));
            r.set("end_dim", json!(ev.end_dim));
            r.set("gram_det", json!(ev.gram_det.to_string()));
            r.check("dim End(M) = 1 over the function field", ev.end_dim == 1, Some(json!({"end_dim": ev.end_dim})));
            r.check("Gram form of the underlying object is nondegenerate", ev.gram_nondegenerate, None);
            let random = random_off_hyperplane(&parts, *samples, &ns, *seed)?;
            r.table(&["n", "a", "simple", "on hyperplane"]);
            for p in &random {
                let a: Vec<String> = p.a.iter().map(fmt_rational).collect();
                r.row(vec![p.n.to_string(), a.join(","), p.simple.to_string(), p.on_hyperplane.to_string()]);
            }
            let bad = random.iter().find(|p| !p.simple);
            r.check(
                "Burnside simplicity at random points off the listed hyperplanes",
                bad.is_none(),
                bad.map(|p| grid_json(std::slice::from_ref(p))),
            );
            r.set("random_points", grid_json(&random));
            if let Some(g) = grid {
                let grid = parse_q_list(g)?;
                let scan = grid_scan(&parts, &grid, &ns)?;
                let failures: Vec<GridPoint> = scan.iter().filter(|p| !p.simple).cloned().collect();
                let stray = failures.iter().find(|p| !p.on_hyperplane);
                r.set("grid_failures", grid_json(&failures));
                r.set("grid_points", json!(scan.len()));
                r.check(
                    "grid failures lie on the listed hyperplanes",
                    stray.is_none(),
                    stray.map(|p| grid_json(std::slice::from_ref(p))),
                );
            }
            Ok(r)
        }
    }
}
