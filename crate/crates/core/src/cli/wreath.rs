//! `wreath` and `knop` subcommands.

use clap::Subcommand;
use serde_json::{json, Value};

use super::input::{load_json, parse_group, parse_q_list, parse_range, parse_sizes};
use super::{CliError, Report};
use crate::delcat::{duality_data, Object};
use crate::exactalg::{qi, Q, T};
use crate::oracle::daha::PermSum;
use crate::oracle::knop::realize_grec;
use crate::oracle::wreath::v_chi_rep;
use crate::oracle::QMatrix;
use crate::recollement::FiniteGroup;
use crate::wreath::{
    compare_knop_etingof, functor_f, functor_f_object, hopf_duality_maps, hopf_tensor, induce_wreath, knop_compose,
    v_chi, FinAlgebra, KnopMorphism, WObject, WreathError,
};

#[derive(Debug, Subcommand)]
pub enum WreathCmd {
    /// Check both wreath conditions on a wreath-object JSON.
    Check {
        #[arg(long)]
        input: String,
    },
    /// `V_χ(X)` for a one-dimensional character `χ`.
    Vchi {
        /// Algebra JSON, or `z<k>`, `s3` (group algebras), `dual` (k[x]/x^2).
        #[arg(long, default_value = "z2")]
        algebra: String,
        /// Values of `χ` on the basis, e.g. `1,-1`.
        #[arg(long)]
        chi: String,
        #[arg(long, default_value = "1")]
        sizes: String,
        #[arg(long)]
        object: Option<String>,
        /// Compare with the honest module at these ranks.
        #[arg(long)]
        check_n: Option<String>,
    },
    /// `ind(W, B_2, ..., B_l)`.
    Induce {
        #[arg(long)]
        w: String,
        /// Factors carried by copies of `[J]`; repeat for several.
        #[arg(long, required = true)]
        b: Vec<String>,
    },
    /// `X ⊗ Y` with the coproduct of a Hopf algebra.
    Tensor {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The dual `X*` with evaluation and coevaluation.
    Dual {
        #[arg(long)]
        x: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum KnopCmd {
    /// `g ∘ f` for Knop morphism JSON documents.
    Compose {
        #[arg(long, default_value = "z2")]
        group: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Compare with matrix products at these ranks.
        #[arg(long)]
        check_n: Option<String>,
    },
    /// `F([u]_G)` (with --size) or `F` of a morphism (with --input).
    Functor {
        #[arg(long, default_value = "z2")]
        group: String,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        input: Option<String>,
    },
    /// Hom dimensions and the rank of `F` for all sizes up to --max.
    Compare {
        #[arg(long, default_value = "z2")]
        group: String,
        #[arg(long, default_value_t = 2)]
        max: usize,
    },
}

fn algebra(arg: &str) -> Result<FinAlgebra, CliError> {
    match arg {
        "dual" => Ok(FinAlgebra::dual_numbers()),
        s if s == "s3" || (s.starts_with('z') && s[1..].parse::<usize>().is_ok()) => {
            Ok(FinAlgebra::group_algebra(&parse_group(s)?))
        }
        s => Ok(FinAlgebra::from_json(&load_json(s)?)?),
    }
}

fn wobject(arg: &str) -> Result<WObject, CliError> {
    Ok(WObject::from_json(&load_json(arg)?)?)
}

fn wreath_check(r: &mut Report, w: &WObject) -> Result<(), CliError> {
    let c = w.check()?;
    let witness = c.witness.map(|(cond, a, b)| {
        json!({"condition": format!("{cond:?}"), "a": w.algebra.basis[a], "b": w.algebra.basis[b]})
    });
    r.check("wreath conditions (unit, product, commutator)", c.holds, witness);
    Ok(())
}

fn knop_matrix(f: &KnopMorphism, group: &FiniteGroup, n: usize) -> Result<QMatrix, CliError> {
    let order = group.order();
    let dim = |u: usize| -> usize {
        (0..u).map(|i| (n - i) * order).product()
    };
    let mut m = QMatrix::zeros(dim(f.tgt), dim(f.src));
    for (c, x) in &f.terms {
        let v = x
            .eval_var(T, &qi(n as i64))
            .and_then(|v| v.constant_value())
            .ok_or_else(|| CliError::Input(format!("{x} has no value at T = {n}")))?;
        m = m.add(&realize_grec(c, group, n).scale(&v));
    }
    Ok(m)
}

pub fn run_wreath(cmd: &WreathCmd) -> Result<Report, CliError> {
    match cmd {
        WreathCmd::Check { input } => {
            let w = wobject(input)?;
            let mut r = Report::new("wreath check");
            r.set("algebra", json!(w.algebra.basis));
            r.set("words", json!(w.object.words));
            wreath_check(&mut r, &w)?;
            Ok(r)
        }
        WreathCmd::Vchi { algebra: a, chi, sizes, object, check_n } => {
            let alg = algebra(a)?;
            let chi: Vec<Q> = parse_q_list(chi)?;
            let x = match object {
                Some(o) => Object::from_json(&load_json(o)?)?,
                None => Object::sum_of_generators(&parse_sizes(sizes)?)?,
            };
            let w = v_chi(&alg, &chi, &x)?;
            let mut r = Report::new("wreath vchi");
            r.set("wobject", w.to_json());
            wreath_check(&mut r, &w)?;
            if let Some(ns) = check_n {
                for n in parse_range(ns)? {
                    let sym = w.to_oracle(n)?;
                    let space = PermSum::of_words(&x.words, n);
                    let d = space.dim();
                    let honest = v_chi_rep(&alg, &chi, space, QMatrix::identity(d));
                    r.check(format!("oracle module at n = {n}"), sym.y == honest.y, Some(json!({"n": n})));
                }
            }
            Ok(r)
        }
        WreathCmd::Induce { w, b } => {
            let w = wobject(w)?;
            let bs: Vec<WObject> = b.iter().map(|s| wobject(s)).collect::<Result<_, _>>()?;
            let ind = induce_wreath(&w, &bs)?;
            let mut r = Report::new("wreath induce");
            r.set("wobject", ind.to_json());
            wreath_check(&mut r, &ind)?;
            Ok(r)
        }
        WreathCmd::Tensor { x, y } => {
            let t = hopf_tensor(&wobject(x)?, &wobject(y)?)?;
            let mut r = Report::new("wreath tensor");
            r.set("wobject", t.to_json());
            wreath_check(&mut r, &t)?;
            Ok(r)
        }
        WreathCmd::Dual { x } => {
            let w = wobject(x)?;
            let mut r = Report::new("wreath dual");
            match hopf_duality_maps(&w) {
                Ok((dual, coev, ev)) => {
                    r.set("dual", dual.to_json());
                    r.set("coev", coev.to_json());
                    r.set("ev", ev.to_json());
                    wreath_check(&mut r, &dual)?;
                    r.check("coev and ev commute with the y-maps", true, None);
                    let x = &w.object;
                    let (d, _, _) = duality_data(x)?;
                    let left = coev.tensor(&x.identity()).then(&x.identity().tensor(&ev))?;
                    r.check("(id ⊗ ev) ∘ (coev ⊗ id) = id", left == x.identity(), None);
                    let right = d.identity().tensor(&coev).then(&ev.tensor(&d.identity()))?;
                    r.check("(ev ⊗ id) ∘ (id ⊗ coev) = id", right == d.identity(), None);
                }
                Err(WreathError::RelationViolated(m)) => {
                    r.check("coev and ev commute with the y-maps", false, Some(json!(m)));
                }
                Err(e) => return Err(e.into()),
            }
            Ok(r)
        }
    }
}

fn knop_morphism(arg: &str, group: &FiniteGroup) -> Result<KnopMorphism, CliError> {
    Ok(KnopMorphism::from_json(&load_json(arg)?, group)?)
}

pub fn run_knop(cmd: &KnopCmd) -> Result<Report, CliError> {
    match cmd {
        KnopCmd::Compose { group, f, g, check_n } => {
            let grp = parse_group(group)?;
            let (f, g) = (knop_morphism(f, &grp)?, knop_morphism(g, &grp)?);
            let h = knop_compose(&f, &g, &grp)?;
            let mut r = Report::new("knop compose");
            r.set("group", json!(grp.names));
            r.set("composite", h.to_json(&grp));
            r.table(&["recollement", "coefficient"]);
            for (c, x) in &h.terms {
                r.row(vec![super::cat::rec_str(c, Some(&grp)), x.to_string()]);
            }
            if let Some(ns) = check_n {
                for n in parse_range(ns)? {
                    let ok = knop_matrix(&h, &grp, n)? == knop_matrix(&g, &grp, n)?.mul(&knop_matrix(&f, &grp, n)?);
                    r.check(format!("equivariant matrices at n = {n}"), ok, Some(json!({"n": n})));
                }
            }
            Ok(r)
        }
        KnopCmd::Functor { group, size, input } => {
            let grp = parse_group(group)?;
            let mut r = Report::new("knop functor");
            r.set("group", json!(grp.names));
            match (size, input) {
                (Some(u), None) => {
                    let w = functor_f_object(*u, &grp)?;
                    r.set("wobject", w.to_json());
                    wreath_check(&mut r, &w)?;
                }
                (None, Some(i)) => {
                    let f = knop_morphism(i, &grp)?;
                    let img = functor_f(&f, &grp);
                    let x = functor_f_object(f.src, &grp)?;
                    let y = functor_f_object(f.tgt, &grp)?;
                    r.set("morphism", img.to_json());
                    r.check("F(f) commutes with the y-maps", WObject::is_morphism(&img, &x, &y)?, None);
                }
                _ => return Err(CliError::Usage("give exactly one of --size and --input".into())),
            }
            Ok(r)
        }
        KnopCmd::Compare { group, max } => {
            let grp = parse_group(group)?;
            let rows = compare_knop_etingof(&grp, *max)?;
            let mut r = Report::new("knop compare");
            r.set("group", json!(grp.names));
            r.table(&["src", "tgt", "knop dim", "etingof dim", "rank F", "injective", "full"]);
            let mut list = Vec::new();
            for c in &rows {
                r.row(vec![
                    c.src.to_string(),
                    c.tgt.to_string(),
                    c.knop_dim.to_string(),
                    c.etingof_dim.to_string(),
                    c.f_rank.to_string(),
                    c.injective().to_string(),
                    c.full().to_string(),
                ]);
                list.push(json!({
                    "src": c.src, "tgt": c.tgt, "knop_dim": c.knop_dim, "etingof_dim": c.etingof_dim,
                    "f_rank": c.f_rank, "injective": c.injective(), "full": c.full(),
                    "images_are_morphisms": c.images_are_morphisms,
                }));
            }
            r.set("hom_spaces", Value::Array(list));
            let first_bad = |p: &dyn Fn(&crate::wreath::HomComparison) -> bool| {
                rows.iter().find(|c| !p(c)).map(|c| json!({"src": c.src, "tgt": c.tgt}))
            };
            let w = first_bad(&|c| c.images_are_morphisms);
            r.check("F lands in y-morphisms", w.is_none(), w);
            let w = first_bad(&|c| c.injective());
            r.check("F is injective on every hom space", w.is_none(), w);
            let w = first_bad(&|c| c.full());
            r.check("hom dimensions match (F is full)", w.is_none(), w);
            Ok(r)
        }
    }
}
