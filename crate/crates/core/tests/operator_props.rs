use monoclass::catalog;
use monoclass::operators::closed_form_monotone_2x2;
use monoclass::random::{random_general_2x2, random_monotone_nxn};
use monoclass::report::cycle_sum;
use monoclass::{classify, classify_relation, AlphaStar, LinearRelation, Matrix, MatrixOperator, Tolerance};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn monotone(seed: u64, n: usize) -> MatrixOperator {
    random_monotone_nxn(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

/// Minimum of `⟨x, Ax⟩ / |Ax|²` over a fine grid of unit vectors in R².
/// Directions with `|Ax|` at rounding level are skipped.
fn alpha_grid_min(a: &MatrixOperator, points: usize) -> f64 {
    let floor = 1e-3 * a.matrix().max_abs();
    (0..points)
        .map(|i| {
            let t = std::f64::consts::PI * i as f64 / points as f64;
            let x = [t.cos(), t.sin()];
            let ax = a.apply(&x).unwrap();
            let q = x[0] * ax[0] + x[1] * ax[1];
            let n2 = ax[0] * ax[0] + ax[1] * ax[1];
            if n2.sqrt() <= floor {
                f64::INFINITY
            } else {
                q / n2
            }
        })
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn class_codes_are_closed(seed in any::<u64>(), n in 2usize..=6) {
        let tol = Tolerance::default();
        let r = classify(&monotone(seed, n), &tol);
        prop_assert!(r.code.is_closed(), "{}", r.code);
        prop_assert!(r.code.mm);
        prop_assert_eq!(r.code.pm, r.code.star3);
    }

    #[test]
    fn alpha_star_scales_inversely(seed in any::<u64>(), n in 2usize..=4, c in 0.01f64..100.0) {
        let tol = Tolerance::default();
        let a = monotone(seed, n);
        let (Ok(AlphaStar::Finite(x)), Ok(AlphaStar::Finite(y))) =
            (a.brezis_haraux_alpha(&tol), a.scale(c).brezis_haraux_alpha(&tol)) else {
            return Ok(());
        };
        if x > a.alpha_threshold(&tol) {
            prop_assert!((y * c - x).abs() <= 1e-8 * x);
        }
    }

    #[test]
    fn alpha_star_is_feasible(seed in any::<u64>(), n in 2usize..=5) {
        let tol = Tolerance::default();
        let a = monotone(seed, n);
        if let Ok(AlphaStar::Finite(alpha)) = a.brezis_haraux_alpha(&tol) {
            // ⟨x, Ax⟩ ≥ α|Ax|² on random directions.
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
            for _ in 0..50 {
                let x = monoclass::random::gaussian_vec(&mut rng, n);
                let ax = a.apply(&x).unwrap();
                let lhs: f64 = x.iter().zip(&ax).map(|(p, q)| p * q).sum();
                let rhs: f64 = alpha * ax.iter().map(|v| v * v).sum::<f64>();
                // The PSD floor admits −eig_rel·|A|_max·|x|² of slack.
                let slack = 1e-8 * a.matrix().max_abs() * x.iter().map(|v| v * v).sum::<f64>();
                prop_assert!(lhs >= rhs - slack);
            }
        }
    }

    #[test]
    fn alpha_star_2x2_matches_grid(seed in any::<u64>()) {
        let tol = Tolerance::default();
        let a = monotone(seed, 2);
        if let Ok(AlphaStar::Finite(alpha)) = a.brezis_haraux_alpha(&tol) {
            if a.is_paramonotone(&tol) && !a.is_zero() {
                let grid = alpha_grid_min(&a, 10_000);
                // The grid minimum bounds α* from above, tightly.
                prop_assert!(alpha <= grid * (1.0 + 1e-8));
                prop_assert!(alpha >= grid * (1.0 - 1e-3));
            }
        }
    }

    #[test]
    fn cyclic_orders_are_nested(theta in 0.0f64..std::f64::consts::FRAC_PI_2) {
        let tol = Tolerance::default();
        let r = catalog::rotation(theta);
        let verdicts: Vec<bool> = (2..=8).map(|n| r.is_n_cyclic(n, &tol).unwrap().cyclic).collect();
        for w in verdicts.windows(2) {
            prop_assert!(w[0] || !w[1]);
        }
    }

    #[test]
    fn cyclic_witnesses_are_negative(seed in any::<u64>(), n in 2usize..=6) {
        let tol = Tolerance::default();
        let a = random_general_2x2(&mut ChaCha8Rng::seed_from_u64(seed));
        let v = a.is_n_cyclic(n, &tol).unwrap();
        match v.witness {
            Some(w) => {
                prop_assert!(!v.cyclic);
                prop_assert_eq!(w.len(), n);
                let images: Vec<Vec<f64>> = w.points.iter().map(|p| a.apply(p).unwrap()).collect();
                prop_assert!(cycle_sum(&w.points, &images) < 0.0);
            }
            None => prop_assert!(v.cyclic),
        }
    }

    #[test]
    fn closed_form_agrees_off_boundary(seed in any::<u64>()) {
        let tol = Tolerance::default();
        let a = random_general_2x2(&mut ChaCha8Rng::seed_from_u64(seed));
        let [p, c, b, d] = a.entries_2x2().unwrap();
        let margin = (4.0 * p * d - (b + c) * (b + c)).abs().min((p + d).abs());
        if margin > 1e-6 {
            prop_assert_eq!(closed_form_monotone_2x2([p, c, b, d]), a.is_monotone(&tol));
        }
    }

    #[test]
    fn relation_lift_agrees(seed in any::<u64>(), n in 2usize..=4) {
        let tol = Tolerance::default();
        let a = monotone(seed, n);
        let m = classify(&a, &tol).code;
        let r = classify_relation(&LinearRelation::from_operator(&a, &tol), &tol).code;
        prop_assert_eq!(m.sm, r.sm);
        prop_assert_eq!(m.cm3, r.cm3);
        prop_assert_eq!(m.mm, r.mm);
    }
}

#[test]
fn catalog_lifts_classify_identically() {
    let tol = Tolerance::default();
    for e in catalog::operator_catalog() {
        let a = e.operator().unwrap();
        let lifted = classify_relation(&LinearRelation::from_operator(a, &tol), &tol).code;
        assert_eq!(lifted, classify(a, &tol).code, "{}", e.name);
    }
}

#[test]
fn example_3x3_certificates() {
    let tol = Tolerance::default();
    let r = classify(&catalog::example_3x3(), &tol);
    assert_eq!(r.ker_sym.dim(), 1);
    let v = &r.ker_sym.basis()[0];
    let s = 0.5f64.sqrt();
    assert!((v[0].abs() - s).abs() < 1e-10 && v[1].abs() < 1e-10 && (v[0] + v[2]).abs() < 1e-10);
    assert!(r.lambda_min_sym.abs() < 1e-10);
    assert!(matches!(r.alpha_star, Some(AlphaStar::Finite(a)) if a > 0.0));
}

#[test]
fn tilde_r_alpha_matches_grid() {
    let tol = Tolerance::default();
    let a = catalog::tilde_r();
    let AlphaStar::Finite(alpha) = a.brezis_haraux_alpha(&tol).unwrap() else {
        panic!("tilde_r is not zero");
    };
    let grid = alpha_grid_min(&a, 10_000);
    assert!(alpha > 0.0);
    assert!(alpha <= grid * (1.0 + 1e-8) && alpha >= grid * (1.0 - 1e-4));
    assert!(!a.necessary_3cm_2x2().unwrap());
}

#[test]
fn non_monotone_reports_no_classes() {
    let tol = Tolerance::default();
    let a = MatrixOperator::new(Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap()).unwrap();
    let r = classify(&a, &tol);
    assert_eq!(r.code.to_string(), "00000");
    assert!(!r.monotone);
    assert!(r.cycle_witness.unwrap().recompute() < 0.0);
    assert!(a.brezis_haraux_alpha(&tol).is_err());
}
