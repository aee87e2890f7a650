use monoclass::catalog;
use monoclass::oracle::{probe_3star_growth, probe_extension, sample_cycle};
use monoclass::products::{class_and, product_op, product_relation};
use monoclass::random::{random_monotone_nxn, random_monotone_relation};
use monoclass::report::cycle_sum;
use monoclass::{classify, classify_relation, ClassCode, LinearRelation, Tolerance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn code() -> impl Strategy<Value = ClassCode> {
    any::<[bool; 5]>().prop_map(ClassCode::from_bits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn and_is_a_meet(a in code(), b in code(), c in code()) {
        prop_assert_eq!(class_and(a, b), class_and(b, a));
        prop_assert_eq!(class_and(class_and(a, b), c), class_and(a, class_and(b, c)));
        prop_assert_eq!(class_and(a, a), a);
        prop_assert_eq!(class_and(a, ClassCode::ALL), a);
        prop_assert_eq!(class_and(a, ClassCode::NONE), ClassCode::NONE);
    }

    #[test]
    fn random_operator_products_follow_and(seed in any::<u64>()) {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (rng.random_range(2..=4), rng.random_range(2..=4));
        let a = random_monotone_nxn(&mut rng, n);
        let mut b = random_monotone_nxn(&mut rng, m);
        // Blocks more than ~1e4 apart in scale put the smaller one inside
        // the rounding band of the combined α* search; keep them within 1e2.
        if !a.is_zero() && !b.is_zero() {
            let ratio = a.matrix().max_abs() / b.matrix().max_abs();
            b = b.scale(ratio * 10f64.powf(rng.random_range(-2.0..2.0)));
        }
        let got = classify(&product_op(&a, &b), &tol).code;
        prop_assert_eq!(got, class_and(classify(&a, &tol).code, classify(&b, &tol).code));
    }

    #[test]
    fn random_relation_products_follow_and(seed in any::<u64>()) {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let a = random_monotone_relation(&mut rng, n);
        let b = random_monotone_relation(&mut rng, m);
        let p = product_relation(&a, &b, &tol);
        prop_assert_eq!(p.graph_dim(), a.graph_dim() + b.graph_dim());
        let got = classify_relation(&p, &tol).code;
        let want = class_and(classify_relation(&a, &tol).code, classify_relation(&b, &tol).code);
        prop_assert_eq!(got, want);
    }
}

#[test]
fn relation_catalog_products_follow_and() {
    let tol = Tolerance::default();
    let entries: Vec<_> = catalog::relation_catalog()
        .into_iter()
        .chain(
            catalog::operator_catalog()
                .into_iter()
                .filter(|e| e.operator().unwrap().dim() <= 3),
        )
        .collect();
    for a in &entries {
        for b in &entries {
            let (ra, rb) = (a.relation(&tol), b.relation(&tol));
            let got = classify_relation(&product_relation(&ra, &rb, &tol), &tol).code;
            assert_eq!(got, class_and(a.expected, b.expected), "{} x {}", a.name, b.name);
        }
    }
}

#[test]
fn oracle_is_deterministic() {
    let tol = Tolerance::default();
    let a = catalog::tilde_r();
    let first = sample_cycle(&a, 3, 20_000, 99, &tol).unwrap();
    assert!(first.is_some());
    assert_eq!(sample_cycle(&a, 3, 20_000, 99, &tol).unwrap(), first);
    let r = catalog::rotation(std::f64::consts::FRAC_PI_2);
    assert_eq!(
        probe_3star_growth(&r, 1_000, 4, 1e12),
        probe_3star_growth(&r, 1_000, 4, 1e12)
    );
    let s = catalog::star_not_pm();
    assert_eq!(
        probe_extension(&s, 500, 8, &tol).unwrap(),
        probe_extension(&s, 500, 8, &tol).unwrap()
    );
}

#[test]
fn oracle_witnesses_are_sound() {
    let tol = Tolerance::default();
    for e in catalog::operator_catalog() {
        let a = e.operator().unwrap();
        if let Some(w) = sample_cycle(a, 3, 20_000, 5, &tol).unwrap() {
            let images: Vec<Vec<f64>> = w.points.iter().map(|p| a.apply(p).unwrap()).collect();
            assert!(cycle_sum(&w.points, &images) < 0.0, "{}", e.name);
        }
    }
    let s = catalog::star_not_pm();
    let w = probe_extension(&s, 1_000, 1, &tol).unwrap().unwrap();
    assert!(w.gap > 1e-3 * (w.u.iter().chain(&w.ustar).map(|v| v * v).sum::<f64>()).sqrt());
    assert!(s.monotonically_related(&w.u, &w.ustar, &tol).unwrap());
}

#[test]
fn oracle_agrees_on_relations() {
    let tol = Tolerance::default();
    for e in catalog::relation_catalog() {
        let a = e.relation(&tol);
        let found = probe_extension(&a, 3_000, 2, &tol).unwrap();
        assert_eq!(found.is_some(), !a.is_maximal(&tol), "{}", e.name);
        if e.expected.star3 {
            assert!(probe_3star_growth(&a, 10_000, 2, 2f64.powi(40)).is_none(), "{}", e.name);
        }
    }
    let r90 = LinearRelation::from_operator(&catalog::rotation(std::f64::consts::FRAC_PI_2), &tol);
    assert!(probe_3star_growth(&r90, 10_000, 2, 2f64.powi(40)).is_some());
}
