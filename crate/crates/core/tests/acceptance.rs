//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use monoclass::catalog::{self, CatalogObject};
use monoclass::oracle::{probe_3star_growth, probe_extension, sample_cycle};
use monoclass::products::{class_and, product_op};
use monoclass::random::{random_general_2x2, random_monotone_2x2, random_monotone_nxn, random_monotone_relation};
use monoclass::{classify, classify_relation, AlphaStar, ClassCode, LinearRelation, MatrixOperator, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn code(s: &str) -> ClassCode {
    s.parse().expect("well-formed code")
}

fn expect_code(name: &str, a: &MatrixOperator, want: &str, tol: &Tolerance) -> Result<(), String> {
    let got = classify(a, tol).code;
    if got == code(want) {
        Ok(())
    } else {
        Err(format!("{name}: got {got}, want {want}"))
    }
}

fn r2_table() -> Outcome {
    let tol = Tolerance::default();
    expect_code("R_pi/2", &catalog::rotation(FRAC_PI_2), "00010", &tol)?;
    expect_code(
        "projection",
        &catalog::coordinate_projection(2, 1).unwrap(),
        "10111",
        &tol,
    )?;
    expect_code("R_1.3", &catalog::rotation(1.3), "11011", &tol)?;
    expect_code("identity", &catalog::identity(2), "11111", &tol)?;
    Ok("4 rows".into())
}

fn hilbert_table() -> Outcome {
    let tol = Tolerance::default();
    expect_code("example_3x3", &catalog::example_3x3(), "10011", &tol)?;
    expect_code("zero", &catalog::zero(2), "10111", &tol)?;

    let mut previous = f64::INFINITY;
    let mut worst = 0.0f64;
    for n in 1..=5 {
        let alpha = match catalog::rotation_chain(n).unwrap().brezis_haraux_alpha(&tol) {
            Ok(AlphaStar::Finite(a)) => a,
            other => return Err(format!("alpha*(A_{n}) = {other:?}")),
        };
        let exact = (1.0 / (n as f64).powi(4)).sin();
        let rel = (alpha - exact).abs() / exact;
        worst = worst.max(rel);
        if rel > 1e-6 {
            return Err(format!(
                "alpha*(A_{n}) = {alpha:e}, sin(1/N^4) = {exact:e}, rel {rel:e}"
            ));
        }
        if alpha >= previous {
            return Err(format!("alpha*(A_{n}) = {alpha:e} not below {previous:e}"));
        }
        previous = alpha;
    }

    let chain = catalog::rotation_chain(3).unwrap();
    let product = product_op(&MatrixOperator::zero(1), &chain);
    let got = classify(&product, &tol).code;
    let want = class_and(code("10111"), classify(&chain, &tol).code);
    if got != want {
        return Err(format!("0 x A_3: got {got}, want {want}"));
    }
    Ok(format!("alpha* decay max rel err {worst:.2e}"))
}

fn rotation_law() -> Outcome {
    let tol = Tolerance::default();
    let mut checked = 0;
    for n in 2..=8 {
        let boundary = PI / n as f64;
        let mut thetas = vec![boundary - 1e-4, boundary + 1e-4];
        thetas.extend((0..50).map(|i| FRAC_PI_2 * i as f64 / 49.0));
        for theta in thetas {
            // Grid points that land on π/n up to rounding are boundary
            // points, where the law is inclusive.
            let expected = theta <= boundary * (1.0 + 1e-12);
            let got = catalog::rotation(theta).is_n_cyclic(n, &tol).unwrap().cyclic;
            if got != expected {
                return Err(format!("n = {n}, theta = {theta}: got {got}, want {expected}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, theta) cases"))
}

fn r2_paramonotone_law() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut pm_count = 0;
    for i in 0..10_000 {
        let a = random_monotone_2x2(&mut rng);
        let symmetric = a.matrix().is_symmetric(tol.abs * a.matrix().max_abs().max(1.0));
        let pm = a.is_paramonotone(&tol);
        if pm != (a.is_strictly_monotone(&tol) || symmetric) {
            return Err(format!("sample {i}: {:?}", a.matrix()));
        }
        pm_count += pm as usize;
    }
    Ok(format!("10000 matrices, {pm_count} paramonotone"))
}

fn finite_3star_equivalence() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut star_count = 0;
    for i in 0..1_000 {
        let n = rng.random_range(2..=6);
        let a = random_monotone_nxn(&mut rng, n);
        let star = a.is_zero()
            || match a.brezis_haraux_alpha(&tol) {
                Ok(AlphaStar::Finite(alpha)) => alpha > a.alpha_threshold(&tol),
                Ok(AlphaStar::Unbounded) => true,
                Err(e) => return Err(format!("sample {i}: {e}")),
            };
        let inclusion = a.ker_sym(&tol).is_subset(&a.ker(&tol), &tol).unwrap();
        if star != inclusion {
            return Err(format!(
                "sample {i}: 3* {star}, kernel inclusion {inclusion}, {:?}",
                a.matrix()
            ));
        }
        star_count += star as usize;
    }
    Ok(format!("1000 matrices, {star_count} with positive alpha*"))
}

fn necessary_3cm() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut cyclic = 0;
    for i in 0..10_000 {
        let a = random_general_2x2(&mut rng);
        if a.is_n_cyclic(3, &tol).unwrap().cyclic {
            cyclic += 1;
            if !a.necessary_3cm_2x2().unwrap() {
                return Err(format!("sample {i}: {:?}", a.matrix()));
            }
        }
    }
    Ok(format!("10000 matrices, {cyclic} 3-cyclic"))
}

fn product_and_law() -> Outcome {
    let tol = Tolerance::default();
    if class_and(code("10111"), code("11010")) != code("10010") {
        return Err("10111 AND 11010 != 10010".into());
    }
    let ops: Vec<_> = catalog::operator_catalog()
        .into_iter()
        .filter_map(|e| e.operator().cloned().map(|a| (e.name, a)))
        .collect();
    if ops.len() < 8 {
        return Err(format!("only {} catalog operators", ops.len()));
    }
    let codes: Vec<ClassCode> = ops.iter().map(|(_, a)| classify(a, &tol).code).collect();
    for (i, (na, a)) in ops.iter().enumerate() {
        for (j, (nb, b)) in ops.iter().enumerate() {
            let got = classify(&product_op(a, b), &tol).code;
            let want = class_and(codes[i], codes[j]);
            if got != want {
                return Err(format!("{na} x {nb}: got {got}, want {want}"));
            }
        }
    }
    Ok(format!("{} ordered pairs", ops.len() * ops.len()))
}

fn relation_structure() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let (mut maximal, mut star) = (0, 0);
    for i in 0..1_000 {
        let d = rng.random_range(1..=5);
        let a = random_monotone_relation(&mut rng, d);
        let fail = |what: &str| Err(format!("relation {i} (d = {d}): {what}"));
        if !a.is_monotone(&tol) {
            return fail("generator produced a non-monotone relation");
        }
        let dom_perp = a.dom().orth_complement();
        let a0_perp = a.a0().orth_complement();
        if !a.dom().is_subset(&a0_perp, &tol).unwrap() || !a.a0().is_subset(&dom_perp, &tol).unwrap() {
            return fail("dom and A0 not orthogonal");
        }
        let s = a.canonical_selection(&tol).unwrap();
        if !s.a0().is_trivial() || !s.graph().is_subset(a.graph(), &tol).unwrap() {
            return fail("selection not a single-valued sub-graph");
        }
        if a.is_maximal(&tol) {
            maximal += 1;
            if !dom_perp.equals(a.a0(), &tol).unwrap() {
                return fail("maximal but dom^perp != A0");
            }
        }
        if a.is_3star(&tol).unwrap() {
            star += 1;
            if !a.extend_by_domain_perp(&tol).is_paramonotone(&tol).unwrap() {
                return fail("3* but the extension is not paramonotone");
            }
        }
    }
    Ok(format!("1000 relations, {maximal} maximal, {star} 3*"))
}

fn star_not_pm() -> Outcome {
    let tol = Tolerance::default();
    let a = catalog::star_not_pm();
    let r = classify_relation(&a, &tol);
    if !r.code.star3 || r.code.pm || r.code.mm {
        return Err(format!("code {}", r.code));
    }
    let w = probe_extension(&a, tol.sample_budget, 9, &tol)
        .map_err(|e| e.to_string())?
        .ok_or("no extension witness")?;
    let extended = a.extend_by_domain_perp(&tol);
    if !extended.is_paramonotone(&tol).unwrap() {
        return Err("extension is not paramonotone".into());
    }
    Ok(format!("extension witness u = {:?}, u* = {:?}", w.u, w.ustar))
}

fn witness_soundness() -> Outcome {
    let tol = Tolerance::default();
    let mut negatives = 0;
    let entries = catalog::operator_catalog()
        .into_iter()
        .chain(catalog::relation_catalog());
    for e in entries {
        let relation = e.relation(&tol);
        for n in 2..=5 {
            let (verdict, sampled) = match &e.object {
                CatalogObject::Operator(a) => (
                    a.is_n_cyclic(n, &tol).unwrap(),
                    sample_cycle(a, n, tol.sample_budget, 17, &tol).unwrap(),
                ),
                CatalogObject::Relation(_) => (
                    relation.is_n_cyclic(n, &tol).unwrap(),
                    sample_cycle(&relation, n, tol.sample_budget, 17, &tol).unwrap(),
                ),
            };
            if !verdict.cyclic {
                negatives += 1;
                let w = verdict
                    .witness
                    .as_ref()
                    .ok_or(format!("{} n = {n}: no witness", e.name))?;
                if w.recompute() >= 0.0 {
                    return Err(format!(
                        "{} n = {n}: witness sum {} not negative",
                        e.name,
                        w.recompute()
                    ));
                }
            }
            match (&sampled, verdict.cyclic) {
                (Some(w), true) => {
                    return Err(format!(
                        "{} n = {n}: oracle found sum {} on a cyclic verdict",
                        e.name, w.sum
                    ))
                }
                (None, false) => return Err(format!("{} n = {n}: oracle missed the negative cycle", e.name)),
                (Some(w), false) if w.recompute() >= 0.0 => {
                    return Err(format!("{} n = {n}: oracle witness not negative", e.name))
                }
                _ => {}
            }
        }
    }
    let r90 = catalog::rotation(FRAC_PI_2);
    let scale_max = 2f64.powi(40);
    let growth = probe_3star_growth(&r90, 10_000, 23, scale_max).ok_or("no growth for R_pi/2")?;
    if growth.evaluate(growth.t_final) <= 1e6 * (1.0 + growth.evaluate(1.0).abs()) {
        return Err("growth witness does not grow on re-evaluation".into());
    }
    if probe_3star_growth(&catalog::identity(2), 10_000, 23, scale_max).is_some() {
        return Err("growth reported for the identity".into());
    }
    let id_rel = LinearRelation::from_operator(&catalog::identity(2), &tol);
    if probe_3star_growth(&id_rel, 10_000, 23, scale_max).is_some() {
        return Err("growth reported for the identity graph".into());
    }
    Ok(format!(
        "{negatives} negative verdicts confirmed by eigenvector and oracle"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("R^2 class table codes", r2_table),
        ("Hilbert-space class table codes and alpha* decay", hilbert_table),
        ("rotation n-cyclic law", rotation_law),
        ("R^2 paramonotone law", r2_paramonotone_law),
        ("finite-dim 3* equivalence", finite_3star_equivalence),
        ("3CM necessary condition on 2x2", necessary_3cm),
        ("product AND law", product_and_law),
        ("relation structure suite", relation_structure),
        ("3* relation without PM", star_not_pm),
        ("witness soundness", witness_soundness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
