use deligne_core::delcat::forms::diagram_basis;
use deligne_core::delcat::morphism::tensor_words;
use deligne_core::delcat::{Morphism, Object};
use deligne_core::exactalg::{qi, RatFn, Q};
use deligne_core::oracle::daha::PermSum;
use deligne_core::oracle::knop::{knop_wreath_rep, realize_grec, verify_g_composition};
use deligne_core::oracle::wreath::{induce_wreath_rep, v_chi_rep};
use deligne_core::oracle::QMatrix;
use deligne_core::recollement::{enumerate, FiniteGroup, Word};
use deligne_core::wreath::*;

fn z2() -> FinAlgebra {
    FinAlgebra::group_algebra(&FiniteGroup::cyclic(2))
}

fn sign() -> Vec<Q> {
    vec![qi(1), qi(-1)]
}

fn small_objects() -> Vec<Object> {
    vec![Object::unit(), Object::h(), Object::generator(2)]
}

/// Basis of `Q_1(X)` for a plain object.
fn q1_basis(x: &Object) -> Vec<Morphism> {
    diagram_basis(&tensor_words(&[Word::single(1)], &x.words), &x.words)
}

/// A few sparse elements of `Q_1(X)` with small integer coefficients.
fn q1_samples(x: &Object) -> Vec<Morphism> {
    let b = q1_basis(x);
    let mut out = b.clone();
    let mut acc = Morphism::zero(&b[0].src, &b[0].tgt);
    for (i, m) in b.iter().enumerate() {
        acc = acc.add(&m.scale(&RatFn::from_i64(i as i64 % 3 - 1))).unwrap();
    }
    out.push(acc);
    out.truncate(6);
    out
}

#[test]
fn v_chi_passes_and_scaling_fails() {
    let alg = z2();
    for x in small_objects() {
        let w = v_chi(&alg, &sign(), &x).unwrap();
        assert!(w.check().unwrap().holds);
    }
    let w = v_chi(&alg, &sign(), &Object::h()).unwrap();
    let mut bad = w.clone();
    bad.y[1] = bad.y[1].scale(&RatFn::from_i64(2));
    let c = bad.check().unwrap();
    assert_eq!(c.witness, Some((WCondition::Product, 1, 1)));
    assert!(v_chi(&alg, &[qi(1), qi(2)], &Object::h()).is_err());
}

#[test]
fn trivial_algebra_always_passes() {
    let g1 = FinAlgebra::group_algebra(&FiniteGroup::cyclic(1));
    let w = v_chi(&g1, &[qi(1)], &Object::generator(2)).unwrap();
    assert!(w.check().unwrap().holds);
}

#[test]
fn v_chi_matches_oracle() {
    let alg = z2();
    for x in small_objects() {
        let w = v_chi(&alg, &sign(), &x).unwrap();
        for n in 3..=4 {
            let sym = w.to_oracle(n).unwrap();
            let space = PermSum::of_words(&x.words, n);
            let d = space.dim();
            let honest = v_chi_rep(&alg, &sign(), space, QMatrix::identity(d));
            assert_eq!(sym.y, honest.y);
            sym.check_relations(&alg).unwrap();
        }
    }
}

#[test]
fn v_chi_is_functorial() {
    let alg = z2();
    let ws: Vec<WObject> = small_objects().iter().map(|x| v_chi(&alg, &sign(), x).unwrap()).collect();
    for x in &ws {
        for y in &ws {
            for f in diagram_basis(&x.object.words, &y.object.words) {
                assert!(WObject::is_morphism(&f, x, y).unwrap());
            }
        }
    }
}

#[test]
fn q1_calculus_identities() {
    {
        for x in [Object::unit(), Object::h(), Object::generator(2)] {
            let s = q1_samples(&x);
            let unit = q1_unit(&x);
            for f in &s {
                assert_eq!(q1_product(&x, &unit, f).unwrap(), *f);
                assert_eq!(q1_product(&x, f, &unit).unwrap(), *f);
                assert_eq!(tau(&tau(f).unwrap()).unwrap(), *f);
                assert_eq!(phi(&x, &tau(f).unwrap()).unwrap(), tau(&phi(&x, f).unwrap()).unwrap());
                for g in &s {
                    let fg = q1_product(&x, f, g).unwrap();
                    assert_eq!(phi(&x, &fg).unwrap(), q2_product(&x, &phi(&x, f).unwrap(), &phi(&x, g).unwrap()).unwrap());
                    assert_eq!(tau(&fg).unwrap(), q1_product(&x, &tau(g).unwrap(), &tau(f).unwrap()).unwrap());
                    let th = theta(&x, f, g).unwrap();
                    assert_eq!(th, gamma(f, g).unwrap().sub(&gamma_prime(&x, f, g).unwrap()).unwrap());
                    let tt = theta(&x, &tau(f).unwrap(), &tau(g).unwrap()).unwrap();
                    assert_eq!(tt, tau(&th).unwrap().scale(&RatFn::from_i64(-1)));
                    for k in s.iter().take(3) {
                        let l = q1_product(&x, &fg, k).unwrap();
                        let r = q1_product(&x, f, &q1_product(&x, g, k).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }
    for x in [Object::h(), Object::generator(2)] {
        let one = phi(&x, &q1_unit(&x)).unwrap();
        for f in q1_samples(&x) {
            let pf = phi(&x, &f).unwrap();
            let g = gamma(&f, &f).unwrap();
            assert_eq!(q2_product(&x, &one, &pf).unwrap(), pf);
            assert_eq!(q2_product(&x, &g, &one).unwrap(), g);
            assert_eq!(q2_product(&x, &one, &g).unwrap(), g);
        }
    }
}

#[test]
fn q1_of_unit_is_scalar() {
    let x = Object::unit();
    let b = q1_basis(&x);
    assert_eq!(b.len(), 1);
    let f = b[0].scale(&RatFn::from_i64(3));
    let g = b[0].scale(&RatFn::from_i64(5));
    assert_eq!(q1_product(&x, &f, &g).unwrap(), b[0].scale(&RatFn::from_i64(15)));
}

#[test]
fn tau_on_h() {
    // Symmetric diagrams are fixed; joining the h-point to the source or to
    // the target point is swapped.
    let basis = q1_basis(&Object::h());
    assert_eq!(basis.len(), 5);
    let fixed = basis.iter().filter(|d| tau(d).unwrap() == **d).count();
    assert_eq!(fixed, 3);
    for d in &basis {
        assert!(basis.contains(&tau(d).unwrap()));
    }
    let sym = deligne_core::delcat::Morphism::identity(&[Word::single(1)]);
    assert_eq!(sym.transpose(), sym);
}

#[test]
fn compatibility_squares() {
    let x = Object::h();
    let y = Object::h();
    let s = q1_samples(&x);
    for f in s.iter().take(4) {
        for fp in s.iter().skip(1).take(4) {
            for g in s.iter().take(3) {
                for gp in s.iter().skip(2).take(3) {
                    let xy = x.tensor(&y);
                    let lhs = theta(&xy, &q1_pair(&x, &y, f, g).unwrap(), &q1_pair(&x, &y, fp, gp).unwrap()).unwrap();
                    let rhs = q2_pair(&x, &y, &theta(&x, f, fp).unwrap(), &gamma(g, gp).unwrap())
                        .unwrap()
                        .add(&q2_pair(&x, &y, &gamma_prime(&x, f, fp).unwrap(), &theta(&y, g, gp).unwrap()).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
                let lhs = phi(&x.tensor(&y), &q1_pair(&x, &y, &q1_product(&x, f, fp).unwrap(), g).unwrap()).unwrap();
                let rhs = q2_pair(&x, &y, &gamma(f, fp).unwrap(), &phi(&y, g).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn hopf_tensor_of_characters() {
    let alg = z2();
    let triv = vec![qi(1), qi(1)];
    for (x, y) in [(Object::h(), Object::h()), (Object::unit(), Object::generator(2)), (Object::h(), Object::unit())] {
        let a = v_chi(&alg, &sign(), &x).unwrap();
        let b = v_chi(&alg, &sign(), &y).unwrap();
        let t = hopf_tensor(&a, &b).unwrap();
        assert!(t.check().unwrap().holds);
        assert_eq!(t, v_chi(&alg, &triv, &x.tensor(&y)).unwrap());
        let sym = t.to_oracle(3).unwrap();
        sym.check_relations(&alg).unwrap();
    }
    let unit = unit_wobject(&alg).unwrap();
    let w = v_chi(&alg, &sign(), &Object::h()).unwrap();
    assert_eq!(hopf_tensor(&unit, &w).unwrap().y, w.y);
}

#[test]
fn hopf_dual_and_zig_zags() {
    let alg = z2();
    assert_eq!(hopf_dual(&v_chi(&alg, &sign(), &Object::unit()).unwrap()).unwrap(), v_chi(&alg, &sign(), &Object::unit()).unwrap());
    for x in small_objects() {
        let w = v_chi(&alg, &sign(), &x).unwrap();
        let (dual, _, _) = hopf_duality_maps(&w).unwrap();
        assert!(dual.check().unwrap().holds);
    }
    let ind = induce_wreath(&v_chi(&alg, &sign(), &Object::h()).unwrap(), &[v_chi(&alg, &[qi(1), qi(1)], &Object::h()).unwrap()]).unwrap();
    let (dual, _, _) = hopf_duality_maps(&ind).unwrap();
    assert!(dual.check().unwrap().holds);
}

#[test]
fn hopf_tensor_is_functorial() {
    let alg = z2();
    let a = v_chi(&alg, &sign(), &Object::h()).unwrap();
    let b = induce_wreath(&v_chi(&alg, &sign(), &Object::unit()).unwrap(), &[v_chi(&alg, &[qi(1), qi(1)], &Object::h()).unwrap()]).unwrap();
    let ends_a = WObject::hom_space(&a, &a).unwrap();
    let ends_b = WObject::hom_space(&b, &b).unwrap();
    let ab = hopf_tensor(&a, &b).unwrap();
    assert!(ab.check().unwrap().holds);
    for f in &ends_a {
        for g in &ends_b {
            assert!(WObject::is_morphism(&f.tensor(g), &ab, &ab).unwrap());
        }
    }
}

#[test]
fn induction_matches_oracle() {
    let alg = z2();
    let cases = [(Object::unit(), sign(), vec![qi(1), qi(1)]), (Object::h(), vec![qi(1), qi(1)], sign())];
    for (x, chi, psi) in cases {
        let a = v_chi(&alg, &chi, &x).unwrap();
        let b = v_chi(&alg, &psi, &Object::h()).unwrap();
        let ind = induce_wreath(&a, &[b]).unwrap();
        assert!(ind.check().unwrap().holds);
        for m in 2..=3 {
            let sym = ind.to_oracle(m + 1).unwrap();
            let sa = PermSum::of_words(&x.words, m);
            let da = sa.dim();
            let ao = v_chi_rep(&alg, &chi, sa, QMatrix::identity(da));
            let bo = v_chi_rep(&alg, &psi, PermSum::of_words(&[Word::single(1)], 1), QMatrix::identity(1));
            let honest = induce_wreath_rep(&alg, &ao, &bo).unwrap();
            assert_eq!(sym.e, honest.e);
            assert_eq!(sym.y, honest.y);
        }
    }
    let a = v_chi(&alg, &sign(), &Object::unit()).unwrap();
    assert_eq!(induce_wreath(&a, &[]).unwrap(), a);
    let ind = induce_wreath(&a, &[v_chi(&alg, &[qi(1), qi(1)], &Object::h()).unwrap()]).unwrap();
    assert_eq!(ind.to_oracle(3).unwrap().dim(), 3);
}

#[test]
fn wobject_json_round_trip() {
    let w = v_chi(&z2(), &sign(), &Object::h()).unwrap();
    assert_eq!(WObject::from_json(&w.to_json()).unwrap(), w);
}

#[test]
fn knop_counts_and_unit_counit() {
    let g = FiniteGroup::cyclic(2);
    assert_eq!(enumerate(1, 1, Some(2)).len(), 3);
    assert_eq!(knop_tensor(1, 1, &g).len(), 3);
    let eta = KnopMorphism::from_rec(enumerate(0, 1, Some(2))[0].clone()).unwrap();
    let eps = KnopMorphism::from_rec(enumerate(1, 0, Some(2))[0].clone()).unwrap();
    let c = knop_compose(&eta, &eps, &g).unwrap();
    assert_eq!(c.terms.values().next().unwrap(), &RatFn::parse("2*T").unwrap());
}

#[test]
fn knop_matches_equivariant_oracle() {
    let g = FiniteGroup::cyclic(2);
    for (j, k, l) in [(1, 1, 1), (1, 2, 1), (2, 1, 2), (0, 2, 1), (2, 2, 1)] {
        for c in enumerate(j, k, Some(2)) {
            for d in enumerate(k, l, Some(2)) {
                let sym = knop_compose(&KnopMorphism::from_rec(c.clone()).unwrap(), &KnopMorphism::from_rec(d.clone()).unwrap(), &g).unwrap();
                for n in 4..=6 {
                    let honest = verify_g_composition(&c, &d, &g, n).unwrap();
                    let got: std::collections::BTreeMap<_, _> = sym
                        .terms
                        .iter()
                        .map(|(e, x)| (e.clone(), x.eval_var(deligne_core::exactalg::T, &qi(n as i64)).unwrap().constant_value().unwrap()))
                        .filter(|(_, v)| *v != qi(0))
                        .collect();
                    let want: std::collections::BTreeMap<_, _> = honest.into_iter().map(|(e, v)| (e, qi(v))).collect();
                    assert_eq!(got, want);
                }
            }
        }
    }
}

#[test]
fn functor_f_objects_and_composition() {
    let g = FiniteGroup::cyclic(2);
    let alg = z2();
    for u in 0..=2 {
        let w = functor_f_object(u, &g).unwrap();
        assert!(w.check().unwrap().holds, "u = {u}");
        for n in [3, 4] {
            let sym = w.to_oracle(n).unwrap();
            assert_eq!(sym.y, knop_wreath_rep(&g, u, n).y);
            sym.check_relations(&alg).unwrap();
        }
    }
    for (j, k, l) in [(1, 1, 1), (1, 2, 1), (0, 1, 2), (2, 1, 0)] {
        for c in enumerate(j, k, Some(2)) {
            let fc = KnopMorphism::from_rec(c.clone()).unwrap();
            assert_eq!(deligne_core::delcat::realize(&functor_f(&fc, &g), 4).unwrap(), realize_grec(&c, &g, 4));
            for d in enumerate(k, l, Some(2)) {
                let fd = KnopMorphism::from_rec(d.clone()).unwrap();
                let lhs = functor_f(&knop_compose(&fc, &fd, &g).unwrap(), &g);
                let rhs = functor_f(&fc, &g).then(&functor_f(&fd, &g)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn comparison_at_truncation() {
    let g = FiniteGroup::cyclic(2);
    let rows = compare_knop_etingof(&g, 2).unwrap();
    assert_eq!(rows.len(), 9);
    for r in &rows {
        assert!(r.images_are_morphisms, "{r:?}");
        assert!(r.injective(), "{r:?}");
        assert!(r.full(), "{r:?}");
    }
    let r = rows.iter().find(|r| r.src == 0 && r.tgt == 1).unwrap();
    assert_eq!((r.knop_dim, r.etingof_dim), (1, 1));
}

#[test]
fn dual_numbers_objects() {
    let alg = FinAlgebra::dual_numbers();
    let chi = vec![qi(1), qi(0)];
    for x in small_objects() {
        let w = v_chi(&alg, &chi, &x).unwrap();
        assert!(w.check().unwrap().holds);
    }
    let ind = induce_wreath(&v_chi(&alg, &chi, &Object::h()).unwrap(), &[v_chi(&alg, &chi, &Object::h()).unwrap()]).unwrap();
    assert!(ind.check().unwrap().holds);
    ind.to_oracle(4).unwrap().check_relations(&alg).unwrap();
    assert!(unit_wobject(&alg).is_err());
}
