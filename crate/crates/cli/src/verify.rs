//! Self-check suites run by `monoclass verify`. Each suite draws its cases
//! from its own ChaCha8 stream of the user seed, so a failing case can be
//! replayed from the seed alone.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use clap::ValueEnum;
use monoclass::catalog::{self, relation_catalog, CatalogObject};
use monoclass::oracle::{probe_3star_growth, probe_extension, sample_cycle};
use monoclass::products::{class_and, product_op, product_relation};
use monoclass::random::{random_general_2x2, random_monotone_nxn, random_monotone_relation};
use monoclass::{classify, classify_relation, AlphaStar, ClassCode, LinearRelation, MatrixOperator, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Operators,
    Relations,
    Products,
    Catalog,
    Oracle,
}

impl Suite {
    const EACH: [Suite; 5] = [
        Suite::Operators,
        Suite::Relations,
        Suite::Products,
        Suite::Catalog,
        Suite::Oracle,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Operators => "operators",
            Suite::Relations => "relations",
            Suite::Products => "products",
            Suite::Catalog => "catalog",
            Suite::Oracle => "oracle",
        }
    }
}

/// Deliberate bugs for testing the harness itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Products are checked against OR instead of AND.
    AndLaw,
}

/// Failures kept per suite in the report.
const MAX_FAILURES: usize = 10;

/// Oracle trials per unit of budget.
const ORACLE_TRIALS_PER_CASE: usize = 500;

#[derive(Debug, Serialize)]
pub struct Failure {
    pub case: usize,
    pub check: String,
    pub input: Value,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub budget: usize,
    pub ok: bool,
    pub suites: Vec<SuiteResult>,
}

struct Recorder {
    result: SuiteResult,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Self {
            result: SuiteResult {
                suite: suite.name(),
                passed: 0,
                failed: 0,
                failures: Vec::new(),
            },
        }
    }

    fn check(
        &mut self,
        case: usize,
        check: &str,
        ok: bool,
        input: impl FnOnce() -> Value,
        detail: impl FnOnce() -> String,
    ) {
        if ok {
            self.result.passed += 1;
            return;
        }
        self.result.failed += 1;
        if self.result.failures.len() < MAX_FAILURES {
            self.result.failures.push(Failure {
                case,
                check: check.into(),
                input: input(),
                detail: detail(),
            });
        }
    }
}

struct Ctx {
    seed: u64,
    budget: usize,
    fault: Option<Fault>,
    tol: Tolerance,
}

impl Ctx {
    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(suite as u64);
        rng
    }

    fn and_law(&self, a: ClassCode, b: ClassCode) -> ClassCode {
        match self.fault {
            Some(Fault::AndLaw) => {
                let (x, y) = (a.bits(), b.bits());
                ClassCode::from_bits(std::array::from_fn(|i| x[i] || y[i]))
            }
            None => class_and(a, b),
        }
    }
}

fn op_json(a: &MatrixOperator) -> Value {
    json!({ "matrix": a.matrix().to_rows() })
}

fn rel_json(r: &LinearRelation) -> Value {
    json!({ "d": r.ambient_dim(), "graph": r.graph().basis() })
}

pub fn run(seed: u64, budget: usize, suite: Suite, fault: Option<Fault>, tol: &Tolerance) -> VerifyReport {
    let ctx = Ctx {
        seed,
        budget,
        fault,
        tol: *tol,
    };
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let results: Vec<SuiteResult> = suites
        .into_iter()
        .map(|s| {
            let mut rec = Recorder::new(s);
            match s {
                Suite::Operators => operators(&ctx, &mut rec),
                Suite::Relations => relations(&ctx, &mut rec),
                Suite::Products => products(&ctx, &mut rec),
                Suite::Catalog => catalog_suite(&ctx, &mut rec),
                Suite::Oracle => oracle(&ctx, &mut rec),
                Suite::All => unreachable!("expanded above"),
            }
            rec.result
        })
        .collect();
    VerifyReport {
        seed,
        budget,
        ok: results.iter().all(|r| r.failed == 0),
        suites: results,
    }
}

fn operators(ctx: &Ctx, rec: &mut Recorder) {
    let tol = &ctx.tol;
    let mut rng = ctx.rng(Suite::Operators);
    for case in 0..ctx.budget {
        let n = rng.random_range(2..=5);
        let a = random_monotone_nxn(&mut rng, n);
        let r = classify(&a, tol);
        let input = || op_json(&a);
        rec.check(case, "monotone", r.monotone && r.code.mm, input, || r.code.to_string());
        rec.check(case, "implications", r.code.is_closed(), input, || r.code.to_string());
        rec.check(case, "pm_iff_3star", r.code.pm == r.code.star3, input, || {
            r.code.to_string()
        });

        let verdicts: Vec<_> = (2..=5)
            .map(|k| a.is_n_cyclic(k, tol))
            .collect::<Result<_, _>>()
            .unwrap_or_default();
        let nested = verdicts.len() == 4 && verdicts.windows(2).all(|w| w[0].cyclic || !w[1].cyclic);
        rec.check(case, "cyclic_orders_nested", nested, input, || {
            format!("{:?}", verdicts.iter().map(|v| v.cyclic).collect::<Vec<_>>())
        });
        for v in verdicts.iter().filter(|v| !v.cyclic) {
            let sum = v.witness.as_ref().map_or(f64::NAN, |w| w.recompute());
            rec.check(case, "cycle_witness_negative", sum < 0.0, input, || {
                format!("n = {}, sum = {sum}", v.n)
            });
        }

        let g = random_general_2x2(&mut rng);
        let ginput = || op_json(&g);
        let [p, c, b, d] = g.entries_2x2().expect("2x2");
        let margin = (4.0 * p * d - (b + c) * (b + c)).abs().min((p + d).abs());
        if margin > 1e-6 {
            let closed = monoclass::operators::closed_form_monotone_2x2([p, c, b, d]);
            rec.check(case, "closed_form_2x2", closed == g.is_monotone(tol), ginput, || {
                format!("closed form {closed}")
            });
        }
        if let Ok(v) = g.is_n_cyclic(3, tol) {
            let necessary = g.necessary_3cm_2x2().expect("2x2");
            rec.check(case, "3cm_necessary_2x2", !v.cyclic || necessary, ginput, String::new);
        }
        let gr = classify(&g, tol);
        if !gr.monotone {
            let sum = gr.cycle_witness.as_ref().map_or(f64::NAN, |w| w.recompute());
            rec.check(case, "non_monotone_witness", sum < 0.0, ginput, || {
                format!("sum = {sum}")
            });
        }
    }
}

fn relations(ctx: &Ctx, rec: &mut Recorder) {
    let tol = &ctx.tol;
    let mut rng = ctx.rng(Suite::Relations);
    for case in 0..ctx.budget {
        let d = rng.random_range(1..=4);
        let a = random_monotone_relation(&mut rng, d);
        let input = || rel_json(&a);
        let r = classify_relation(&a, tol);
        rec.check(case, "implications", r.code.is_closed(), input, || r.code.to_string());
        let split = a.graph_dim() == a.dom().dim() + a.a0().dim();
        rec.check(case, "graph_splits", split, input, String::new);
        if a.is_maximal(tol) {
            rec.check(
                case,
                "maximality_identities",
                a.maximality_identities_hold(tol),
                input,
                String::new,
            );
        }

        let selection_ok = a.canonical_selection(tol).is_ok_and(|s| {
            s.a0().is_trivial()
                && s.graph().is_subset(a.graph(), tol).unwrap_or(false)
                && s.dom().equals(a.dom(), tol).unwrap_or(false)
        });
        rec.check(case, "selection", selection_ok, input, String::new);

        let e = a.extend_by_domain_perp(tol);
        let perp = e.a0().equals(&a.dom().orth_complement(), tol).unwrap_or(false);
        rec.check(case, "domain_perp_extension", perp, input, String::new);
        if a.is_3star(tol).unwrap_or(false) {
            let pm = e.is_paramonotone(tol).unwrap_or(false);
            rec.check(case, "extension_of_3star_is_pm", pm, input, String::new);
        }

        let n = rng.random_range(1..=4);
        let op = random_monotone_nxn(&mut rng, n);
        let m = classify(&op, tol).code;
        let lifted = classify_relation(&LinearRelation::from_operator(&op, tol), tol).code;
        let agree = m.sm == lifted.sm && m.cm3 == lifted.cm3 && m.mm == lifted.mm;
        rec.check(
            case,
            "operator_lift",
            agree,
            || op_json(&op),
            || format!("{m} vs {lifted}"),
        );
    }
}

fn products(ctx: &Ctx, rec: &mut Recorder) {
    let tol = &ctx.tol;
    let mut rng = ctx.rng(Suite::Products);
    let mut case = 0;
    let entries: Vec<_> = catalog::operator_catalog()
        .into_iter()
        .chain(relation_catalog())
        .collect();
    for a in &entries {
        for b in &entries {
            let got = classify_relation(&product_relation(&a.relation(tol), &b.relation(tol), tol), tol).code;
            let want = ctx.and_law(a.expected, b.expected);
            rec.check(
                case,
                "catalog_product",
                got == want,
                || json!([a.name, b.name]),
                || format!("got {got}, want {want}"),
            );
            case += 1;
        }
    }
    for _ in 0..ctx.budget {
        let (n, m) = (rng.random_range(2..=4), rng.random_range(2..=4));
        let a = random_monotone_nxn(&mut rng, n);
        let mut b = random_monotone_nxn(&mut rng, m);
        // Keep the block scales within 1e2 of each other.
        if !a.is_zero() && !b.is_zero() {
            let ratio = a.matrix().max_abs() / b.matrix().max_abs();
            b = b.scale(ratio * 10f64.powf(rng.random_range(-2.0..2.0)));
        }
        let got = classify(&product_op(&a, &b), tol).code;
        let want = ctx.and_law(classify(&a, tol).code, classify(&b, tol).code);
        rec.check(
            case,
            "operator_product",
            got == want,
            || json!([op_json(&a), op_json(&b)]),
            || format!("got {got}, want {want}"),
        );

        let (n, m) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let ra = random_monotone_relation(&mut rng, n);
        let rb = random_monotone_relation(&mut rng, m);
        let got = classify_relation(&product_relation(&ra, &rb, tol), tol).code;
        let want = ctx.and_law(classify_relation(&ra, tol).code, classify_relation(&rb, tol).code);
        rec.check(
            case,
            "relation_product",
            got == want,
            || json!([rel_json(&ra), rel_json(&rb)]),
            || format!("got {got}, want {want}"),
        );
        case += 1;
    }
}

fn catalog_suite(ctx: &Ctx, rec: &mut Recorder) {
    let tol = &ctx.tol;
    let mut case = 0;
    for e in catalog::operator_catalog().into_iter().chain(relation_catalog()) {
        let got = match &e.object {
            CatalogObject::Operator(a) => classify(a, tol).code,
            CatalogObject::Relation(r) => classify_relation(r, tol).code,
        };
        rec.check(
            case,
            "catalog_code",
            got == e.expected,
            || json!(e.name),
            || format!("got {got}, want {}", e.expected),
        );
        let lifted = classify_relation(&e.relation(tol), tol).code;
        rec.check(
            case,
            "lifted_code",
            lifted == e.expected,
            || json!(e.name),
            || lifted.to_string(),
        );
        case += 1;
    }
    for n in 1..=5 {
        let a = catalog::rotation_chain(n).expect("N >= 1");
        let want = catalog::rotation_chain_alpha(n);
        let got = match a.brezis_haraux_alpha(tol) {
            Ok(AlphaStar::Finite(v)) => v,
            _ => f64::NAN,
        };
        let close = (got - want).abs() <= 1e-8 * want;
        rec.check(
            case,
            "rotation_chain_alpha",
            close,
            || json!({ "n": n }),
            || format!("got {got}, want {want}"),
        );
        case += 1;
    }
    for n in 2..=8usize {
        let edge = PI / n as f64;
        for (theta, want) in [(edge - 1e-4, true), (edge + 1e-4, false)] {
            if theta > FRAC_PI_2 {
                continue;
            }
            let got = catalog::rotation(theta).is_n_cyclic(n, tol).map(|v| v.cyclic).ok();
            rec.check(
                case,
                "rotation_law",
                got == Some(want),
                || json!({ "theta": theta, "n": n }),
                || format!("got {got:?}, want {want}"),
            );
            case += 1;
        }
    }
}

fn oracle(ctx: &Ctx, rec: &mut Recorder) {
    let tol = &ctx.tol;
    let trials = ctx.budget.saturating_mul(ORACLE_TRIALS_PER_CASE).max(1);
    let mut case = 0;
    for e in catalog::operator_catalog().into_iter().chain(relation_catalog()) {
        let relation = e.relation(tol);
        for n in 2..=5 {
            let result = match &e.object {
                CatalogObject::Operator(a) => a
                    .is_n_cyclic(n, tol)
                    .and_then(|v| Ok((v, sample_cycle(a, n, trials, ctx.seed, tol)?))),
                CatalogObject::Relation(_) => relation
                    .is_n_cyclic(n, tol)
                    .and_then(|v| Ok((v, sample_cycle(&relation, n, trials, ctx.seed, tol)?))),
            };
            let input = || json!({ "entry": e.name, "n": n });
            match result {
                Ok((verdict, sampled)) => {
                    let agree = verdict.cyclic == sampled.is_none();
                    rec.check(case, "cycle_agreement", agree, input, || {
                        format!(
                            "classifier cyclic = {}, oracle witness = {}",
                            verdict.cyclic,
                            sampled.is_some()
                        )
                    });
                    if let Some(w) = sampled {
                        let sum = w.recompute();
                        rec.check(case, "oracle_witness_negative", sum < 0.0, input, || {
                            format!("sum = {sum}")
                        });
                    }
                }
                Err(err) => rec.check(case, "cycle_agreement", false, input, || err.to_string()),
            }
            case += 1;
        }
        let found = probe_extension(&relation, trials.min(tol.sample_budget), ctx.seed, tol).map(|w| w.is_some());
        let maximal = relation.is_maximal(tol);
        rec.check(
            case,
            "extension_agreement",
            found.as_ref().is_ok_and(|f| *f != maximal),
            || json!(e.name),
            || format!("maximal = {maximal}, extension found = {found:?}"),
        );
        case += 1;
    }
    let scale_max = 2f64.powi(40);
    let growth_trials = trials.min(10_000);
    let r90 = catalog::rotation(FRAC_PI_2);
    let grows = probe_3star_growth(&r90, growth_trials, ctx.seed, scale_max).is_some();
    rec.check(
        case,
        "growth_rotation_pi_2",
        grows,
        || json!("rotation_pi_2"),
        String::new,
    );
    let id = catalog::identity(2);
    let flat = probe_3star_growth(&id, growth_trials, ctx.seed, scale_max).is_none();
    rec.check(case + 1, "no_growth_identity", flat, || json!("identity"), String::new);
}

pub fn render(report: &VerifyReport, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string(report)?),
        Format::Text => {
            let mut out = String::new();
            for s in &report.suites {
                let _ = writeln!(out, "{:<10} {:>6} passed {:>4} failed", s.suite, s.passed, s.failed);
                for f in &s.failures {
                    let _ = writeln!(out, "  case {} {}: {} {}", f.case, f.check, f.detail, f.input);
                }
            }
            let _ = writeln!(out, "{}", if report.ok { "ok" } else { "FAILED" });
            Ok(out)
        }
        Format::Csv | Format::Dot => anyhow::bail!("verify output supports json and text"),
    }
}
