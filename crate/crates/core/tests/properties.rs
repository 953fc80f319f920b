use std::collections::BTreeSet;

use proptest::prelude::*;
use qtower::oracle::verify_newton;
use qtower::{
    bm, border, build_line_cover, classify, derive_tower, drimb, drinb, generate, generate_base,
    newton_interpolate, qtbm, quotient_check, verify_groebner, Axis, Bidegree, FieldSpec, Flavor,
    GeneratorConfig, MonomialOrder, PointSet, Polynomial,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rational),
        Just(FieldSpec::Prime(37)),
        Just(FieldSpec::Prime(43)),
    ]
}

/// Supported (order, flavor) pairs.
fn supported() -> impl Strategy<Value = (MonomialOrder, Flavor)> {
    use Flavor::*;
    use MonomialOrder::*;
    prop::sample::select(vec![
        (GrLex, QuasiX),
        (GrLex, XTower),
        (Lex, QuasiX),
        (Lex, Arbitrary),
        (InvLex, QuasiY),
        (InvLex, Arbitrary),
        (GrevLex, QuasiY),
        (GrevLex, YTower),
    ])
}

fn instance(field: FieldSpec, flavor: Flavor, mu: usize, seed: u64) -> PointSet {
    let mu = if field == FieldSpec::Rational {
        mu.min(18)
    } else {
        mu
    };
    generate(GeneratorConfig {
        field,
        flavor,
        mu,
        seed,
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qtbm_equals_bm(f in field(), (order, flavor) in supported(), mu in 3usize..60, seed in any::<u64>()) {
        let s = instance(f, flavor, mu, seed);
        let a = qtbm(&s, order).unwrap();
        let e = bm(&s, order);
        prop_assert_eq!(&a.n, &e.n);
        prop_assert_eq!(a.sorted_g(order), e.sorted_g(order));
        prop_assert!(verify_groebner(&s, &a, order).passed);
        prop_assert!(verify_groebner(&s, &e, order).passed);
    }

    #[test]
    fn newton_bases_are_triangular(f in field(), (order, flavor) in supported(), mu in 1usize..60, seed in any::<u64>()) {
        let flavor = if mu < 3 { Flavor::Arbitrary } else { flavor };
        let order = if flavor == Flavor::Arbitrary && mu < 3 { MonomialOrder::Lex } else { order };
        let s = instance(f, flavor, mu, seed);
        let basis = drinb(&s, order).unwrap();
        prop_assert!(verify_newton(&basis, &s));
        let n: Vec<Bidegree> = drimb(&s, order).unwrap();
        let idx: BTreeSet<Bidegree> = basis.elements.iter().map(|e| e.index).collect();
        prop_assert_eq!(idx, n.iter().copied().collect::<BTreeSet<_>>());
        // every expanded element has its index as leading monomial
        for e in &basis.elements {
            let p = e.expand();
            prop_assert_eq!(p.leading_monomial(order).unwrap(), e.index);
        }
    }

    #[test]
    fn interpolation_hits_values(f in field(), (order, flavor) in supported(), mu in 3usize..50, seed in any::<u64>()) {
        let s = instance(f, flavor, mu, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let values: Vec<_> = (0..s.len()).map(|_| f.from_i64(rng.gen_range(-9..10))).collect();
        let p = newton_interpolate(&s, &values, order).unwrap();
        for (pt, v) in s.iter().zip(&values) {
            prop_assert_eq!(&p.evaluate(&pt.x, &pt.y), v);
        }
        let n: BTreeSet<Bidegree> = drimb(&s, order).unwrap().into_iter().collect();
        prop_assert!(p.support().all(|t| n.contains(&t)));
    }

    #[test]
    fn border_is_shifted_escalier(f in field(), (order, flavor) in supported(), mu in 3usize..60, seed in any::<u64>()) {
        let s = instance(f, flavor, mu, seed);
        let n = drimb(&s, order).unwrap();
        let inside: BTreeSet<Bidegree> = n.iter().copied().collect();
        let l = border(&n, order).unwrap().monomials;
        for w in l.windows(2) {
            prop_assert!(order.compare(w[0], w[1]).is_lt());
        }
        for t in &l {
            prop_assert!(!inside.contains(t));
            let from_x = t.x > 0 && inside.contains(&Bidegree::new(t.x - 1, t.y));
            let from_y = t.y > 0 && inside.contains(&Bidegree::new(t.x, t.y - 1));
            prop_assert!(from_x || from_y);
        }
    }

    #[test]
    fn classification_flags_agree_with_row_data(f in field(), flavor in prop::sample::select(Flavor::ALL.to_vec()), mu in 3usize..40, seed in any::<u64>()) {
        let s = instance(f, flavor, mu, seed);
        let c = classify(&s);
        // recompute from raw rows
        let mut rows: std::collections::BTreeMap<_, BTreeSet<_>> = Default::default();
        for p in s.iter() {
            rows.entry(p.y.clone()).or_default().insert(p.x.clone());
        }
        let mut sets: Vec<BTreeSet<_>> = rows.into_values().collect();
        sets.sort_by_key(|r| std::cmp::Reverse(r.len()));
        let generalized = sets.windows(2).all(|w| w[0].len() > w[1].len());
        let tower = generalized && sets.iter().all(|r| r.is_subset(&sets[0]));
        prop_assert_eq!(c.gen_x_tower, generalized);
        prop_assert_eq!(c.x_tower, tower);
        prop_assert_eq!(c.quasi_x_tower, generalized && !tower);

        let t = classify(&s.transposed());
        prop_assert_eq!((t.x_tower, t.gen_x_tower, t.quasi_x_tower), (c.y_tower, c.gen_y_tower, c.quasi_y_tower));
        prop_assert_eq!(t.cartesian, c.cartesian);
    }

    #[test]
    fn many_bases_derive_towers(mu in 3usize..40, seed in any::<u64>()) {
        let f = FieldSpec::Prime(43);
        let xi = instance(f, Flavor::QuasiX, mu, seed);
        let mut seen = BTreeSet::new();
        for k in 0..10u64 {
            let base = generate_base(&xi, (k % 4) as usize, seed.wrapping_add(k)).unwrap();
            let union = derive_tower(&xi, &base).unwrap();
            prop_assert!(classify(&union).x_tower);
            seen.insert(base.points().to_vec());
        }
        prop_assert!(seen.len() > 1);
    }

    #[test]
    fn quotient_relation_holds(mu in 3usize..30, seed in any::<u64>(), extra in 0usize..3) {
        let f = FieldSpec::Prime(43);
        let xi = instance(f, Flavor::QuasiX, mu, seed);
        let base = generate_base(&xi, extra, seed).unwrap();
        prop_assert!(quotient_check(&xi, &base).unwrap());
    }

    #[test]
    fn generator_is_reproducible(f in field(), flavor in prop::sample::select(Flavor::ALL.to_vec()), mu in 3usize..80, seed in any::<u64>()) {
        let c = GeneratorConfig { field: f, flavor, mu, seed };
        let a = generate(c).unwrap();
        prop_assert_eq!(&a, &generate(c).unwrap());
        prop_assert_eq!(a.len(), mu);
    }

    #[test]
    fn lex_escalier_is_the_row_profile(f in field(), mu in 1usize..40, seed in any::<u64>()) {
        let s = instance(f, Flavor::Arbitrary, mu, seed);
        let sizes = build_line_cover(&s, Axis::X).sizes();
        let mut expected: Vec<Bidegree> = sizes
            .iter()
            .enumerate()
            .flat_map(|(j, &m)| (0..m as u32).map(move |i| Bidegree::new(i, j as u32)))
            .collect();
        MonomialOrder::Lex.sort(&mut expected);
        prop_assert_eq!(bm(&s, MonomialOrder::Lex).n, expected);
    }

    #[test]
    fn reproduces_escalier_polynomials(f in field(), (order, flavor) in supported(), mu in 3usize..40, seed in any::<u64>()) {
        let s = instance(f, flavor, mu, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = drimb(&s, order).unwrap();
        let target = Polynomial::from_terms(
            f,
            n.iter().map(|&t| (t, f.from_i64(rng.gen_range(-5..6)))),
        );
        let values: Vec<_> = s.iter().map(|p| target.evaluate(&p.x, &p.y)).collect();
        prop_assert_eq!(newton_interpolate(&s, &values, order).unwrap(), target);
    }
}
