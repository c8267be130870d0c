use std::sync::OnceLock;

use proptest::prelude::*;

use enriques_lattice::coble::{make_generator_set, sample_g0_element, GeneratorSet, SampleKind};
use enriques_lattice::e10::{build_e10, E10, RANK};
use enriques_lattice::f2::{reduce_vector, F2QuadSpace, F2Vector};
use enriques_lattice::roots::{covering_involution_action, AdeType, RootDatum};
use enriques_lattice::{IntMatrix, Isometry, Lattice};

fn e10() -> &'static E10 {
    static E: OnceLock<E10> = OnceLock::new();
    E.get_or_init(|| build_e10().unwrap())
}

fn gens() -> &'static GeneratorSet {
    static G: OnceLock<GeneratorSet> = OnceLock::new();
    G.get_or_init(|| make_generator_set(e10(), 5, 7).unwrap())
}

fn ade_type() -> impl Strategy<Value = AdeType> {
    prop::sample::select(AdeType::all_up_to(8))
}

fn type_and_word() -> impl Strategy<Value = (AdeType, Vec<usize>)> {
    ade_type().prop_flat_map(|t| (Just(t), prop::collection::vec(0..t.rank(), 0..24)))
}

fn random_lattice(max_rank: usize) -> impl Strategy<Value = Lattice> {
    (1..=max_rank)
        .prop_flat_map(|n| prop::collection::vec(-3i64..=3, n * n))
        .prop_filter_map("degenerate", |v| {
            let n = (v.len() as f64).sqrt() as usize;
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let x = if i == j { 2 * v[i * n + j] } else { v[i * n + j] };
                    m[(i, j)] = x;
                    m[(j, i)] = x;
                }
            }
            Lattice::new(m).ok()
        })
}

fn cone_point() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-10i64..=10, RANK).prop_filter_map("outside the positive cone", |c| {
        let e = e10();
        let x = e.from_pairings(&c).ok()?;
        (e.inner(&x, &x).ok()? >= 0 && e.inner(&x, e.h()).ok()? > 0).then_some(x)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decompose_weyl_words_roundtrip((t, word) in type_and_word()) {
        let rd = RootDatum::new(t).unwrap();
        let g = rd.weyl_word_matrix(&word).unwrap();
        let d = rd.decompose_isometry(&g).unwrap();
        prop_assert!(d.graph.is_identity());
        prop_assert_eq!(rd.weyl_word_matrix(&d.weyl_word).unwrap(), g);
        prop_assert!(d.weyl_word.len() <= word.len());
    }

    #[test]
    fn decompose_with_graph_part((t, word) in type_and_word()) {
        let rd = RootDatum::new(t).unwrap();
        let sigma = covering_involution_action(t).unwrap();
        let g = rd.weyl_word_matrix(&word).unwrap().compose(&sigma.to_isometry()).unwrap();
        let d = rd.decompose_isometry(&g).unwrap();
        prop_assert_eq!(&d.graph, &sigma);
        let back = rd.weyl_word_matrix(&d.weyl_word).unwrap().compose(&d.graph.to_isometry()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn weyl_group_acts_trivially_on_discriminant((t, word) in type_and_word()) {
        let rd = RootDatum::new(t).unwrap();
        let g = rd.weyl_word_matrix(&word).unwrap();
        prop_assert!(rd.lattice.discriminant_action(&g).unwrap().is_identity());
    }

    #[test]
    fn discriminant_action_is_functorial((t, w1) in type_and_word(), seed in any::<u64>()) {
        let rd = RootDatum::new(t).unwrap();
        let w2: Vec<usize> = (0..6).map(|k| ((seed >> (4 * k)) as usize) % t.rank()).collect();
        let sigma = covering_involution_action(t).unwrap().to_isometry();
        let g = rd.weyl_word_matrix(&w1).unwrap().compose(&sigma).unwrap();
        let h = sigma.compose(&rd.weyl_word_matrix(&w2).unwrap()).unwrap();
        let d = rd.lattice.discriminant_group().unwrap();
        let gh = d.action(&rd.lattice, &g.compose(&h).unwrap()).unwrap();
        let composed = d.action(&rd.lattice, &g).unwrap().compose(&d.action(&rd.lattice, &h).unwrap());
        prop_assert_eq!(gh, composed);
    }

    #[test]
    fn reflections_preserve_the_form((t, word) in type_and_word(), i in 0usize..8) {
        let rd = RootDatum::new(t).unwrap();
        let e = rd.positive_roots[i % rd.positive_roots.len()].clone();
        let r = rd.weyl_word_matrix(&word).unwrap().apply(&e).unwrap();
        let s = rd.reflection(&r).unwrap();
        prop_assert!(rd.lattice.is_isometry(&s.matrix));
        prop_assert!(s.compose(&s).unwrap().is_identity());
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        prop_assert_eq!(s.apply(&r).unwrap(), neg);
    }

    #[test]
    fn direct_sum_invariants(a in random_lattice(4), b in random_lattice(4)) {
        let (ia, ib) = (a.invariants().unwrap(), b.invariants().unwrap());
        let s = a.direct_sum(&b).invariants().unwrap();
        prop_assert_eq!(s.determinant, ia.determinant * ib.determinant);
        prop_assert_eq!(s.is_even, ia.is_even && ib.is_even);
        prop_assert_eq!(s.signature, (ia.signature.0 + ib.signature.0, ia.signature.1 + ib.signature.1));
        let (da, db) = (a.discriminant_group().unwrap(), b.discriminant_group().unwrap());
        prop_assert_eq!(a.direct_sum(&b).discriminant_group().unwrap().order, da.order * db.order);
    }

    #[test]
    fn discriminant_order_is_abs_det(l in random_lattice(5)) {
        let d = l.discriminant_group().unwrap();
        prop_assert_eq!(d.order, l.invariants().unwrap().determinant.abs());
        prop_assert_eq!(d.elements().len() as i64, d.order);
    }

    #[test]
    fn e10_reflections_preserve_the_form(word in prop::collection::vec(0..RANK, 0..20), i in 0..RANK) {
        let e = e10();
        let mut root = vec![0; RANK];
        root[i] = 1;
        let r = e.replay_on_vector(&word, &root).unwrap();
        prop_assert_eq!(e.inner(&r, &r).unwrap(), -2);
        let s = enriques_lattice::roots::reflection_matrix(e.lattice(), &r).unwrap();
        prop_assert!(e.lattice().is_isometry(&s.matrix));
        prop_assert!(e.is_in_o_plus(&s).unwrap());
    }

    #[test]
    fn chamber_reduce_replays(x in cone_point()) {
        let e = e10();
        let r = e.chamber_reduce(&x).unwrap();
        prop_assert!(e.lattice().pairings(&r.reduced).unwrap().iter().all(|&p| p >= 0));
        prop_assert_eq!(e.replay_on_vector(&r.word, &x).unwrap(), r.reduced.clone());
        prop_assert_eq!(e.inner(&r.reduced, &r.reduced).unwrap(), e.inner(&x, &x).unwrap());
        let again = e.chamber_reduce(&r.reduced).unwrap();
        prop_assert!(again.word.is_empty());
    }

    #[test]
    fn express_in_reflections_roundtrip(word in prop::collection::vec(0..RANK, 0..30)) {
        let e = e10();
        let g = e.word_matrix(&word).unwrap();
        let w = e.express_in_fundamental_reflections(&g).unwrap();
        prop_assert_eq!(e.word_matrix(&w).unwrap(), g);
    }

    #[test]
    fn g0_is_closed(a in any::<u64>(), b in any::<u64>(), len in 0usize..4) {
        let e = e10();
        let x = sample_g0_element(e, SampleKind::ReflectionPair, a).unwrap();
        let y = sample_g0_element(e, SampleKind::SigmaWord { gens: gens(), length: len }, b).unwrap();
        prop_assert!(e.is_in_g0(&x.compose(&y).unwrap()).unwrap());
        prop_assert!(e.is_in_g0(&x.inverse(e.lattice()).unwrap()).unwrap());
    }

    #[test]
    fn g0_elements_fix_f2(a in any::<u64>(), v in 0u16..1024) {
        let e = e10();
        let space = F2QuadSpace::from_e10(e);
        let g = sample_g0_element(e, SampleKind::ReflectionPair, a).unwrap();
        prop_assert!(space.reduce_isometry(&g).unwrap().is_identity());
        let bits: Vec<i64> = (0..RANK).map(|i| i64::from((v >> i) & 1)).collect();
        prop_assert_eq!(reduce_vector(&g.apply(&bits).unwrap()).unwrap(), F2Vector(v));
    }

    #[test]
    fn reduced_isometries_preserve_q(word in prop::collection::vec(0..RANK, 0..12)) {
        let e = e10();
        let space = F2QuadSpace::from_e10(e);
        let g = space.reduce_isometry(&e.word_matrix(&word).unwrap()).unwrap();
        prop_assert!(space.preserves(&g));
    }

    #[test]
    fn sigma_u_for_searched_planes(k in 0usize..72) {
        let e = e10();
        let planes = e.find_hyperbolic_planes(7, 72).unwrap().planes;
        let u = &planes[k];
        let s = e.sigma_u(u).unwrap();
        prop_assert!(e.is_in_g0(&s).unwrap());
        prop_assert!(s.compose(&s).unwrap().is_identity());
        prop_assert_eq!(s.apply(&u.f1).unwrap(), u.f1.clone());
        prop_assert_eq!(s.apply(&u.f2).unwrap(), u.f2.clone());
    }
}

#[test]
fn minus_identity_is_not_in_o_plus() {
    let e = e10();
    let m = Isometry::minus_identity(RANK);
    assert!(!e.is_in_o_plus(&m).unwrap());
    assert!(m.is_identity_mod2());
    assert!(!e.is_in_g0(&m).unwrap());
}

#[test]
fn g0_closed_under_200_products() {
    let e = e10();
    let mut elements: Vec<Isometry> = (0..20)
        .map(|seed| {
            let kind = if seed % 2 == 0 {
                SampleKind::ReflectionPair
            } else {
                SampleKind::SigmaWord { gens: gens(), length: 2 }
            };
            sample_g0_element(e, kind, seed).unwrap()
        })
        .collect();
    let n = elements.len();
    let mut products = 0;
    'outer: for i in 0..n {
        for j in 0..n {
            if products == 200 {
                break 'outer;
            }
            let p = elements[i].compose(&elements[j].inverse(e.lattice()).unwrap()).unwrap();
            assert!(e.is_in_g0(&p).unwrap());
            products += 1;
            if products % 50 == 0 {
                elements.push(p);
            }
        }
    }
    assert_eq!(products, 200);
}
