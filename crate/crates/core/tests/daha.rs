use deligne_core::daha::evidence::{ev_trivial, generic_params, oracle_standard_module};
use deligne_core::daha::induce::trivial_on_j;
use deligne_core::daha::{end_space, ev, ev_constants, induce, is_in_dk, rho, standard_module, StandardParams, YObject};
use deligne_core::delcat::structure::counit_map;
use deligne_core::delcat::{Morphism, Object};
use deligne_core::exactalg::{q, qi, RatFn};
use deligne_core::oracle::daha::{ev_rep, induce_rep, PermSum};
use deligne_core::oracle::QMatrix;
use deligne_core::recollement::Word;

fn a1() -> RatFn {
    RatFn::var(1)
}

#[test]
fn evaluation_constants_are_halves() {
    assert_eq!(ev_constants().unwrap(), (q(1, 2), q(1, 2)));
}

#[test]
fn ev_on_unit() {
    let y = ev_trivial(1).unwrap();
    let c = y.y.block(0, 0).values().next().unwrap().clone();
    assert_eq!(c, RatFn::parse("a1 + 1/2*T - 1/2").unwrap());
    assert!(y.check_relation().unwrap().holds);
}

#[test]
fn zero_object_satisfies_relation() {
    assert!(YObject::zero().check_relation().unwrap().holds);
}

#[test]
fn relation_holds_for_small_generators() {
    for x in [Object::unit(), Object::h(), Object::generator(2)] {
        let y = ev(&a1(), &x).unwrap();
        let check = y.check_relation().unwrap();
        assert!(check.holds, "{:?}", check.witness);
    }
}

#[test]
fn scaled_y_breaks_relation() {
    let y = ev(&a1(), &Object::h()).unwrap().scaled(&RatFn::from_i64(2));
    let check = y.check_relation().unwrap();
    assert!(!check.holds);
    assert!(check.witness.is_some());
}

#[test]
fn ev_matches_oracle() {
    for x in [Object::unit(), Object::h(), Object::generator(2)] {
        let y = ev(&a1(), &x).unwrap();
        for n in 3..=6 {
            for a in [qi(0), q(2, 3)] {
                let sym = y.to_oracle(n, &[(1, a.clone())]).unwrap();
                let space = PermSum::of_words(&x.words, n);
                let dim = space.dim();
                let honest = ev_rep(&a, space, QMatrix::identity(dim));
                assert_eq!(sym.y, honest.y, "n = {n}");
                sym.check_relations().unwrap();
            }
        }
    }
}

#[test]
fn ev_is_functorial() {
    let objs = [Object::unit(), Object::h(), Object::generator(2)];
    let ys: Vec<YObject> = objs.iter().map(|x| ev(&a1(), x).unwrap()).collect();
    for (i, x) in objs.iter().enumerate() {
        for (j, y) in objs.iter().enumerate() {
            for f in deligne_core::delcat::forms::diagram_basis(&x.words, &y.words) {
                assert!(YObject::is_morphism(&f, &ys[i], &ys[j]).unwrap());
            }
        }
    }
    assert!(YObject::is_morphism(&counit_map(), &ys[1], &ys[0]).unwrap());
}

#[test]
fn rho_values() {
    assert_eq!(rho(1), vec![qi(0)]);
    assert_eq!(rho(2), vec![q(1, 2), q(-1, 2)]);
    assert_eq!(rho(3), vec![qi(1), qi(0), qi(-1)]);
}

#[test]
fn dk_membership() {
    let generic = generic_params(&[1]).unwrap();
    assert!(is_in_dk(&generic));
    let p = StandardParams::new(vec![1], vec![RatFn::from_i64(0), RatFn::from_i64(2)]).unwrap();
    // (0 + 1/2) - (2 - 1/2) = -1.
    assert!(!is_in_dk(&p));
    let p = StandardParams::new(vec![1], vec![RatFn::from_i64(2), RatFn::from_i64(0)]).unwrap();
    assert!(is_in_dk(&p));
    assert!(StandardParams::new(vec![1, 2], vec![a1(); 3]).is_err());
}

#[test]
fn standard_module_without_parts_is_evaluation() {
    let p = StandardParams::new(vec![], vec![a1()]).unwrap();
    assert_eq!(standard_module(&p).unwrap(), ev(&a1(), &Object::unit()).unwrap());
}

#[test]
fn induce_with_zero_is_zero() {
    let a = ev(&a1(), &Object::unit()).unwrap();
    let b = YObject { object: Object { words: vec![], idem: None }, y: Morphism::zero(&[], &[]) };
    assert_eq!(induce(&a, &b, 1).unwrap(), YObject::zero());
}

#[test]
fn standard_module_of_one_box() {
    let m = standard_module(&generic_params(&[1]).unwrap()).unwrap();
    assert_eq!(m.object.words, vec![Word::single(1)]);
    let check = m.check_relation().unwrap();
    assert!(check.holds, "{:?}", check.witness);
    assert_eq!(end_space(&m).unwrap().len(), 1);
}

#[test]
fn induction_matches_oracle() {
    // A = ev_b1 on [∅] or [1] over T - n, B = ev_b2 on [J] (regular) or its trivial part.
    let b1 = q(1, 3);
    let b2 = q(-2, 5);
    for (a_obj, nb, trivial) in [(Object::unit(), 1, false), (Object::h(), 1, false), (Object::unit(), 2, true), (Object::unit(), 2, false)] {
        let a = ev(&RatFn::from_q(b1.clone()), &a_obj).unwrap();
        let b_obj = if trivial { trivial_on_j(nb).unwrap() } else { Object::generator(nb) };
        let b = ev(&RatFn::from_q(b2.clone()), &b_obj).unwrap();
        let ind = induce(&a, &b, nb).unwrap();
        let check = ind.check_relation().unwrap();
        assert!(check.holds, "{:?}", check.witness);
        for m in 3..=4 {
            let sym = ind.to_oracle(m + nb, &[]).unwrap();
            let ao = ev_rep(&b1, PermSum::of_words(&a_obj.words, m), QMatrix::identity(PermSum::of_words(&a_obj.words, m).dim()));
            let bspace = PermSum::of_words(&[Word::single(nb)], nb);
            let be = if trivial {
                deligne_core::oracle::daha::right_symmetrizer(&bspace)
            } else {
                QMatrix::identity(bspace.dim())
            };
            let bo = ev_rep(&b2, bspace, be);
            let honest = induce_rep(&ao, &bo).unwrap();
            assert_eq!(sym.e, honest.e, "idempotent, m = {m}");
            assert_eq!(sym.y, honest.y, "y, m = {m}");
        }
    }
}

#[test]
fn symbolic_standard_module_specializes_to_oracle() {
    let m = standard_module(&generic_params(&[1]).unwrap()).unwrap();
    for n in [4usize, 5] {
        let a = [q(0, 1), q(7, 3)];
        let sym = m.to_oracle(n, &[(1, a[0].clone()), (2, a[1].clone())]).unwrap();
        let honest = oracle_standard_module(&[1], &a, n).unwrap();
        assert_eq!(sym.y, honest.y);
        assert!(honest.is_simple());
    }
}

#[test]
fn yobject_json_round_trip() {
    let y = ev(&a1(), &Object::h()).unwrap();
    assert_eq!(YObject::from_json(&y.to_json()).unwrap(), y);
    let bad = serde_json::json!({"object": Object::h().to_json(), "y": Morphism::identity(&[Word::single(1)]).to_json()});
    assert!(YObject::from_json(&bad).is_err());
}

#[test]
fn grid_failures_lie_on_listed_hyperplanes() {
    use deligne_core::daha::grid_scan;
    let grid = vec![qi(-2), qi(-1), qi(0), q(1, 2), q(7, 3)];
    let pts = grid_scan(&[1], &grid, &[4, 5]).unwrap();
    assert_eq!(pts.len(), 50);
    assert!(pts.iter().all(|p| p.simple || p.on_hyperplane));
    // a1 = a2 gives (a1 + ½) - (a2 - ½) = 1 and is reducible.
    assert!(pts.iter().any(|p| !p.simple));
}

#[test]
fn random_parameters_give_simple_modules() {
    use deligne_core::daha::evidence::{on_listed_hyperplane, random_rational};
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 4 {
        let a = vec![random_rational(&mut rng), random_rational(&mut rng)];
        if on_listed_hyperplane(&a) {
            continue;
        }
        for n in [4, 5] {
            assert!(oracle_standard_module(&[1], &a, n).unwrap().is_simple());
        }
        tested += 1;
    }
}

#[test]
fn simplicity_evidence_for_one_box() {
    use deligne_core::daha::generic_simplicity_evidence;
    let m = standard_module(&generic_params(&[1]).unwrap()).unwrap();
    let ev = generic_simplicity_evidence(&m, &[4, 5], 3).unwrap();
    assert_eq!(ev.end_dim, 1);
    assert!(ev.gram_nondegenerate);
    assert!(ev.burnside.iter().all(|(_, a, s)| a.len() == 2 && *s));
}
