use std::collections::BTreeMap;

use deligne_core::delcat::forms::{diagram_basis, negligible_radical, trace_pairing};
use deligne_core::delcat::structure::{counit_map, group_algebra_unit, induct_object, unit_map};
use deligne_core::delcat::{
    block_structure, braiding, cat_dimension, duality_data, flatten, gram_det, hom_dim, induct_st, jm_endo, realize,
    split_idempotent, trace, CatError, Morphism, Object,
};
use deligne_core::exactalg::{integer_roots_with_multiplicity, parse_poly, qi, MultiPoly, RatFn, T};
use deligne_core::oracle::inj::sn_generators;
use deligne_core::oracle::{QMatrix, WordBasis};
use deligne_core::recollement::{enumerate, Diagram, Word};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn rf(s: &str) -> RatFn {
    RatFn::parse(s).unwrap()
}

fn w(sizes: &[usize]) -> Word {
    Word::new(sizes.to_vec())
}

fn disc1() -> Morphism {
    Morphism::from_diagram(&w(&[1]), &w(&[1]), Diagram::from_labels(&[0u8, 1])).unwrap()
}

fn transposition_sum(words: &[Word], n: usize) -> QMatrix {
    let bases: Vec<WordBasis> = words.iter().map(|x| WordBasis::new(x, n)).collect();
    let mut total: Option<QMatrix> = None;
    for i in 0..n {
        for j in i + 1..n {
            let sigma: Vec<usize> = (0..n).map(|k| if k == i { j } else if k == j { i } else { k }).collect();
            let m = bases.iter().map(|b| b.perm_matrix(&sigma)).reduce(|a, b| a.direct_sum(&b)).unwrap();
            total = Some(match total {
                None => m,
                Some(t) => t.add(&m),
            });
        }
    }
    total.unwrap_or_else(|| {
        let d: usize = bases.iter().map(WordBasis::dim).sum();
        QMatrix::zeros(d, d)
    })
}

#[test]
fn discrete_square() {
    let e = disc1();
    let lhs = e.then(&e).unwrap();
    let rhs = Morphism::identity(&[w(&[1])]).scale(&rf("T - 1")).add(&e.scale(&rf("T - 2"))).unwrap();
    assert_eq!(lhs, rhs);
    for n in 3..=5 {
        let m = realize(&e, n).unwrap();
        assert_eq!(realize(&lhs, n).unwrap(), m.mul(&m));
    }
}

#[test]
fn unit_counit_scalar() {
    let s = unit_map().then(&counit_map()).unwrap();
    assert_eq!(s.block(0, 0).get(&Diagram::from_labels::<u8>(&[])), Some(&rf("T")));
}

#[test]
fn identity_is_neutral() {
    let x = Object::sum_of_generators(&[0, 1, 2]).unwrap();
    for f in diagram_basis(&x.words, &x.words).into_iter().take(12) {
        assert_eq!(x.identity().then(&f).unwrap(), f);
        assert_eq!(f.then(&x.identity()).unwrap(), f);
    }
}

#[test]
fn tensor_decomposition_counts() {
    let d = flatten(&Object::h().tensor(&Object::h())).unwrap();
    let mut sizes: Vec<usize> = d.object.words.iter().map(Word::total).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2]);
    let d = flatten(&Object::h().tensor(&Object::generator(2))).unwrap();
    let mut sizes: Vec<usize> = d.object.words.iter().map(Word::total).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 2, 3]);
    let x = Object::new(vec![w(&[1, 2]), w(&[2])]).unwrap();
    let d = flatten(&x).unwrap();
    assert_eq!(d.projection.then(&d.inclusion).unwrap(), x.identity());
    assert_eq!(d.inclusion.then(&d.projection).unwrap(), d.object.identity());
}

#[test]
fn counit_tensor_identity_matches_oracle() {
    let f = counit_map().tensor(&Morphism::identity(&[w(&[1])]));
    for n in [6, 9] {
        let eps = realize(&counit_map(), n).unwrap();
        let id = QMatrix::identity(n);
        assert_eq!(realize(&f, n).unwrap(), eps.kron(&id));
    }
}

#[test]
fn braiding_is_symmetric_and_realizes_the_swap() {
    let h = Object::h();
    let b = braiding(&h, &h).unwrap();
    assert_eq!(b.then(&b).unwrap(), h.tensor(&h).identity());
    let n = 4;
    let basis = WordBasis::new(&w(&[1, 1]), n);
    let images: Vec<usize> = basis.elems.iter().map(|e| basis.index_of(&[e[1], e[0]]).unwrap()).collect();
    assert_eq!(realize(&b, n).unwrap(), QMatrix::permutation(&images));
    let x = Object::sum_of_generators(&[1, 2]).unwrap();
    let y = Object::generator(1);
    let bxy = braiding(&x, &y).unwrap();
    let byx = braiding(&y, &x).unwrap();
    assert_eq!(bxy.then(&byx).unwrap(), x.tensor(&y).identity());
}

#[test]
fn zig_zag_identities() {
    let one = Object::unit();
    for x in [Object::h(), Object::generator(2), Object::sum_of_generators(&[0, 1]).unwrap()] {
        let (dual, coev, ev) = duality_data(&x).unwrap();
        let lhs = coev
            .tensor(&x.identity())
            .then(&x.identity().tensor(&ev))
            .unwrap();
        // X -> (X ⊗ X*) ⊗ X -> X ⊗ (X* ⊗ X) -> X; the unit word is dropped by tensoring.
        assert_eq!(lhs.src, one.tensor(&x).words);
        assert_eq!(lhs, x.identity());
        let rhs = dual.identity().tensor(&coev).then(&ev.tensor(&dual.identity())).unwrap();
        assert_eq!(rhs, dual.identity());
    }
}

#[test]
fn traces_and_dimensions() {
    assert_eq!(cat_dimension(&Object::unit()).unwrap(), RatFn::one());
    assert_eq!(cat_dimension(&Object::h()).unwrap(), rf("T"));
    assert_eq!(cat_dimension(&Object::generator(2)).unwrap(), rf("T^2 - T"));
    assert!(trace(&disc1()).unwrap().is_zero());
    let (_, coev, ev) = duality_data(&Object::h()).unwrap();
    assert_eq!(coev.then(&ev).unwrap().block(0, 0).values().next(), Some(&rf("T")));
    for n in 3..=5 {
        for x in [Object::generator(2), Object::new(vec![w(&[1, 1])]).unwrap()] {
            let id = realize(&x.identity(), n).unwrap();
            let c = cat_dimension(&x).unwrap().as_poly().unwrap().eval_var(T, &qi(n as i64));
            assert_eq!(c.constant_value().unwrap(), (0..id.rows()).map(|i| id.get(i, i)).sum());
        }
    }
}

#[test]
fn trivial_summand_idempotent() {
    let e = counit_map().then(&unit_map()).unwrap().scale(&rf("1/(T)"));
    let x = split_idempotent(&e).unwrap();
    assert_eq!(cat_dimension(&x).unwrap(), RatFn::one());
    assert!(matches!(split_idempotent(&disc1()), Err(CatError::NotIdempotent)));
    assert_eq!(split_idempotent(&Object::h().identity()).unwrap(), Object::h());
    let pole = Object::h().identity().scale(&rf("1/(T - 1)"));
    assert!(matches!(realize(&pole, 1), Err(CatError::PoleAtSpecialization(_))));
}

#[test]
fn hom_dimensions() {
    assert_eq!(hom_dim(&Object::generator(2), &Object::generator(2)).unwrap(), 7);
    let e = counit_map().then(&unit_map()).unwrap().scale(&rf("1/(T)"));
    let triv = split_idempotent(&e).unwrap();
    assert_eq!(hom_dim(&triv, &triv).unwrap(), 1);
    assert_eq!(hom_dim(&triv, &Object::generator(2)).unwrap(), 1);
}

#[test]
fn gram_determinant_of_h() {
    let d = gram_det(&Object::h()).unwrap();
    let p = d.as_poly().unwrap();
    let c = p.leading_coeff();
    assert!(!c.is_zero());
    assert_eq!(p, &parse_poly("T^3 - T^2").unwrap().scale(&c));
    let mut roots = integer_roots_with_multiplicity(p).unwrap();
    roots.sort();
    assert_eq!(roots, vec![(BigInt::from(0), 2), (BigInt::from(1), 1)]);
}

#[test]
fn gram_determinants_have_integer_roots() {
    for k in 0..=2 {
        let d = gram_det(&Object::generator(k)).unwrap();
        let p: &MultiPoly = d.as_poly().expect("polynomial");
        assert!(!p.is_zero());
        let deg = p.degree_in(T).unwrap_or(0);
        let found: u32 = integer_roots_with_multiplicity(p).unwrap().iter().map(|(r, m)| {
            assert!(*r >= BigInt::from(0));
            *m
        }).sum();
        assert_eq!(found, deg);
    }
}

#[test]
fn negligible_quotient_counts_orbits() {
    for (a, b) in [(1, 1), (0, 2), (1, 2), (2, 2)] {
        let (x, y) = (Object::generator(a), Object::generator(b));
        for n in 0..=4 {
            let (fs, rad) = negligible_radical(&x, &y, &qi(n as i64)).unwrap();
            let expect = enumerate(a, b, None).iter().filter(|c| c.ambient_size() <= n).count();
            assert_eq!(fs.len() - rad.len(), expect, "({a},{b}) at n = {n}");
        }
    }
}

#[test]
fn pairing_matches_matrix_trace() {
    let x = Object::sum_of_generators(&[1, 2]).unwrap();
    let fs = diagram_basis(&x.words, &x.words);
    let m = trace_pairing(&fs[..4], &fs[..4]).unwrap();
    for n in [3usize, 4] {
        for i in 0..4 {
            for j in 0..4 {
                let prod = realize(&fs[i].then(&fs[j]).unwrap(), n).unwrap();
                let tr: deligne_core::exactalg::Q = (0..prod.rows()).map(|k| prod.get(k, k)).sum();
                let v = m.get(i, j).eval_var(T, &qi(n as i64)).unwrap();
                assert_eq!(v.constant_value().unwrap(), tr);
            }
        }
    }
}

#[test]
fn block_structure_of_small_sum() {
    let x = Object::sum_of_generators(&[0, 1]).unwrap();
    let b = block_structure(&x).unwrap();
    assert_eq!((b.total_dim, b.center_dim, b.multiplicities.clone()), (5, 2, vec![2, 1]));
    let b = block_structure(&Object::h()).unwrap();
    assert_eq!(b.multiplicities, vec![1, 1]);
}

#[test]
fn jm_endo_matches_transpositions() {
    let empty = jm_endo(&Object::unit()).unwrap();
    assert_eq!(empty.block(0, 0).values().next(), Some(&rf("1/2*T^2 - 1/2*T")));
    for x in [Object::unit(), Object::h(), Object::generator(2), Object::new(vec![w(&[1, 1])]).unwrap()] {
        let omega = jm_endo(&x).unwrap();
        for n in 5..=7 {
            assert_eq!(realize(&omega, n).unwrap(), transposition_sum(&x.words, n));
        }
    }
}

#[test]
fn jm_endo_is_natural() {
    let objs = [Object::unit(), Object::h(), Object::generator(2)];
    for x in &objs {
        for y in &objs {
            for f in diagram_basis(&x.words, &y.words) {
                let lhs = f.then(&jm_endo(y).unwrap()).unwrap();
                let rhs = jm_endo(x).unwrap().then(&f).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn induction_of_identity_and_functoriality() {
    let unit1 = group_algebra_unit(1);
    let grown = induct_object(&Object::unit(), 1, &unit1).unwrap();
    assert_eq!(grown, Object::h());
    let id = induct_st(&Object::h().identity(), 1, &unit1).unwrap();
    assert_eq!(id, Object::generator(2).identity());
    let fs = diagram_basis(&[w(&[1])], &[w(&[1])]);
    for f in &fs {
        for g in &fs {
            let lhs = induct_st(&f.then(g).unwrap(), 1, &unit1).unwrap();
            let rhs = induct_st(f, 1, &unit1).unwrap().then(&induct_st(g, 1, &unit1).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
    let swap: BTreeMap<Diagram, _> = [(Diagram::from_labels(&[0u8, 1, 1, 0]), num_rational::BigRational::from_integer(1.into()))].into();
    let unit2 = group_algebra_unit(2);
    let f = &fs[1];
    let lhs = induct_st(&f.then(f).unwrap(), 2, &unit2).unwrap();
    let rhs = induct_st(f, 2, &swap).unwrap().then(&induct_st(f, 2, &swap).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn induced_permutation_module_dimension() {
    let m = 4;
    let b = WordBasis::induced(&w(&[1]), 1, m + 1);
    assert_eq!(b.dim(), (m + 1) * m);
    assert_eq!(b.dim(), WordBasis::new(&w(&[2]), m + 1).dim());
}

#[test]
fn realizations_are_equivariant() {
    for (a, b) in [(1, 1), (1, 2), (2, 2), (0, 2)] {
        for f in diagram_basis(&[Word::single(a)], &[Word::single(b)]) {
            for n in 3..=5 {
                let m = realize(&f, n).unwrap();
                for s in sn_generators(n) {
                    let ps = WordBasis::new(&Word::single(a), n).perm_matrix(&s);
                    let pt = WordBasis::new(&Word::single(b), n).perm_matrix(&s);
                    assert_eq!(pt.mul(&m), m.mul(&ps));
                }
            }
        }
    }
}

fn words_strategy() -> impl Strategy<Value = Vec<Word>> {
    let pool = vec![w(&[]), w(&[1]), w(&[2]), w(&[1, 1])];
    prop::collection::vec(prop::sample::select(pool), 1..=2)
}

fn morphism_strategy(src: Vec<Word>, tgt: Vec<Word>) -> impl Strategy<Value = Morphism> {
    let basis = diagram_basis(&src, &tgt);
    let n = basis.len();
    prop::collection::vec((0..n, -2i64..=2, any::<bool>()), 1..=4).prop_map(move |terms| {
        let mut m = Morphism::zero(&src, &tgt);
        for (i, c, linear) in terms {
            let coeff = if linear { RatFn::from_poly(MultiPoly::var_plus(T, c)) } else { RatFn::from_i64(c) };
            m = m.add(&basis[i].scale(&coeff)).unwrap();
        }
        m
    })
}

fn composable_pair() -> impl Strategy<Value = (Morphism, Morphism)> {
    (words_strategy(), words_strategy(), words_strategy())
        .prop_flat_map(|(a, b, c)| (morphism_strategy(a, b.clone()), morphism_strategy(b, c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_matches_oracle((f, g) in composable_pair()) {
        let h = f.then(&g).unwrap();
        let n = 4;
        prop_assert_eq!(realize(&h, n).unwrap(), realize(&g, n).unwrap().mul(&realize(&f, n).unwrap()));
    }

    #[test]
    fn tensor_matches_oracle(
        f in (words_strategy(), words_strategy()).prop_flat_map(|(a, b)| morphism_strategy(a, b)),
        g in (words_strategy(), words_strategy()).prop_flat_map(|(a, b)| morphism_strategy(a, b)),
    ) {
        let n = 4;
        let fg = f.tensor(&g);
        let (ns2, nt2) = (g.src.len(), g.tgt.len());
        for t1 in 0..f.tgt.len() {
            for s1 in 0..f.src.len() {
                for t2 in 0..nt2 {
                    for s2 in 0..ns2 {
                        let lhs = realize(&fg.select(&[t1 * nt2 + t2], &[s1 * ns2 + s2]), n).unwrap();
                        let a = realize(&f.select(&[t1], &[s1]), n).unwrap();
                        let b = realize(&g.select(&[t2], &[s2]), n).unwrap();
                        prop_assert_eq!(lhs, a.kron(&b));
                    }
                }
            }
        }
    }

    #[test]
    fn interchange_law((f, f2) in composable_pair(), (g, g2) in composable_pair()) {
        let lhs = f.then(&f2).unwrap().tensor(&g.then(&g2).unwrap());
        let rhs = f.tensor(&g).then(&f2.tensor(&g2)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transpose_matches_matrix_transpose(
        f in (words_strategy(), words_strategy()).prop_flat_map(|(a, b)| morphism_strategy(a, b)),
    ) {
        prop_assert_eq!(realize(&f.transpose(), 3).unwrap(), realize(&f, 3).unwrap().transpose());
    }

    #[test]
    fn json_round_trip(
        f in (words_strategy(), words_strategy()).prop_flat_map(|(a, b)| morphism_strategy(a, b)),
    ) {
        prop_assert_eq!(Morphism::from_json(&f.to_json()).unwrap(), f);
    }
}
