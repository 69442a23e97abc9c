//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails, after running all of them.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dsemion::anyons::{expected_epsilon_table, f_symbol_report, r_symbol_report, s_matrix, SectorAlgebra};
use dsemion::category::{check_category, AnyonData};
use dsemion::groundstate::{closed_string_invariance, passing_conventions, select_convention, verify_suite, Convention};
use dsemion::purity::{dominated_span_check, parity_exhaustive, parity_sampled, schmidt_check};
use dsemion::tqd::compare;

const SEED: u64 = 20260;

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: u32, name: &'static str, budget: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, mut detail) = f();
    let elapsed = start.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed < b);
    if !in_budget {
        detail.push_str(&format!("; over budget of {:?}", budget.unwrap()));
    }
    Outcome { id, name, passed: ok && in_budget, detail, elapsed }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn criterion_1() -> (bool, String) {
    let patch = common::oracle_patch();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    for case in 0..1000 {
        let k = rng.random_range(1..=10);
        if let Err(what) = common::oracle_case(&mut rng, &patch, k) {
            failures.push(format!("case {case}: {what}"));
        }
    }
    (failures.is_empty(), format!("1000 cases on 1..=10 edges, {} disagreements", failures.len()))
}

fn criterion_2() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 1..=2 {
        let r = verify_suite(n, Convention::LoopCount).unwrap();
        ok &= r.passed();
        notes.push(format!(
            "n={n}: {} soups, {} violations, dim {}",
            r.state.num_soups,
            r.state.violations.len(),
            r.ground_space.dimension
        ));
    }
    let passing = passing_conventions(2).unwrap();
    let selected = select_convention().ok();
    ok &= passing == vec![Convention::LoopCount] && selected == Some(Convention::LoopCount);
    notes.push(format!("passing conventions at n=2: {passing:?}"));
    (ok, notes.join("; "))
}

fn criterion_3() -> (bool, String) {
    let r = closed_string_invariance(3, Convention::LoopCount).unwrap();
    let bad = r.cases.iter().filter(|c| c.phase.is_none()).count();
    (r.passed() && r.cases.len() == 76, format!("{} loop/label cases, {bad} not eigenvectors", r.cases.len()))
}

fn criterion_4() -> (bool, String) {
    let (r, _) = s_matrix(3, Convention::LoopCount, 1).unwrap();
    let radii: Vec<u32> = r.loops.iter().map(|l| l.radius).collect();
    (r.passed(), format!("loop radii {radii:?}, radius independent {}, equals expected {}", r.radius_independent, r.matches_expected))
}

fn criterion_5() -> (bool, String) {
    let r = f_symbol_report(3).unwrap();
    let pentagon = AnyonData::double_semion().check_pentagon();
    let data = SectorAlgebra::new(3).unwrap().anyon_data().unwrap().check_pentagon();
    let ok = r.passed() && data.checked == 256 && data.passed() && pentagon.passed();
    (ok, format!("checks {:?}, stable at n=4 {}, pentagon {}/256", r.checks, r.stable_under_enlargement, data.checked - data.failures))
}

fn criteria_6_and_7() -> ((bool, String), (bool, String)) {
    let r = r_symbol_report(3).unwrap();
    let alg = SectorAlgebra::new(3).unwrap();
    let eps = alg.epsilon_table().unwrap();
    let hex = alg.anyon_data().unwrap().check_hexagons();
    let get = |name: &str| r.checks.iter().find(|(n, _)| n == name).map(|(_, ok)| *ok).unwrap_or(false);
    let six = get("reference values")
        && get("R equals epsilon")
        && get("hook independence")
        && hex.passed()
        && hex.checked == 128
        && eps == expected_epsilon_table()
        && r.stable_under_enlargement;
    let seven = get("Yang-Baxter") && get("braid equations");
    (
        (six, format!("epsilon exponents {eps:?}, hexagons {}/128", hex.checked - hex.failures)),
        (seven, "Yang-Baxter and braid equations on all 64 label triples".to_string()),
    )
}

fn criterion_8() -> (bool, String) {
    let reference = check_category(&AnyonData::double_semion(), 200, SEED);
    let measured = check_category(&SectorAlgebra::new(3).unwrap().anyon_data().unwrap(), 200, SEED + 1);
    let ok = reference.passed() && measured.passed();
    (
        ok,
        format!(
            "{}/200 and {}/200 gauges keep pentagon, hexagons, R(a,a), R(a,b)R(b,a)",
            reference.gauge_invariant_trials, measured.gauge_invariant_trials
        ),
    )
}

fn criterion_9() -> (bool, String) {
    let r = compare(3).unwrap();
    let ok = r.passed()
        && r.associativity.checked == 64
        && r.coproduct_morphism.checked == 16
        && r.braiding_matches
        && r.gauge.is_some();
    let perm = r.matching_relabellings.first().map(|m| m.perm.join(",")).unwrap_or_default();
    (
        ok,
        format!(
            "slant cocycles {}, associativity {}/64, coproduct {}/16, {} matching relabelling ({perm})",
            r.slant_cocycles.passed(),
            r.associativity.checked - r.associativity.failures,
            r.coproduct_morphism.checked - r.coproduct_morphism.failures,
            r.matching_relabellings.len()
        ),
    )
}

fn criterion_10() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 1..=2 {
        let r = schmidt_check(n, Convention::LoopCount, SEED).unwrap();
        ok &= r.passed() && r.multiplicity_matches && r.flat && r.bulk_agreement;
        notes.push(format!(
            "n={n}: {} conditions, spectrum {:?}, bulk ops {}",
            r.boundary_conditions, r.spectrum, r.bulk_operators
        ));
    }
    for n in 1..=2 {
        let p = parity_exhaustive(n).unwrap();
        ok &= p.tally.passed();
        notes.push(format!("parity n={n}: {} soups exhaustive", p.tally.soups));
    }
    let p = parity_sampled(3, 10_000, SEED).unwrap();
    ok &= p.tally.passed() && p.tally.soups == 10_000;
    notes.push(format!("parity n=3: {} sampled soups", p.tally.soups));
    (ok, notes.join("; "))
}

fn criterion_11() -> (bool, String) {
    let r = dominated_span_check(6, 500, SEED);
    (
        r.passed() && r.trials == 500,
        format!("{} trials, {} failures, {}/{} controls detected", r.trials, r.failures, r.controls_detected, r.controls),
    )
}

#[test]
fn acceptance() {
    let mut out = Vec::new();
    out.push(run(1, "operator algebra vs dense oracle", secs(10), criterion_1));
    out.push(run(2, "ground state eigenconditions and uniqueness", secs(30), criterion_2));
    out.push(run(3, "closed string invariance", secs(120), criterion_3));
    out.push(run(4, "S-matrix", secs(300), criterion_4));
    out.push(run(5, "F-symbols and pentagon", None, criterion_5));
    let start = Instant::now();
    let (six, seven) = criteria_6_and_7();
    let shared = start.elapsed();
    out.push(Outcome { id: 6, name: "braidings, R-symbols and hexagons", passed: six.0, detail: six.1, elapsed: shared });
    out.push(Outcome { id: 7, name: "operator Yang-Baxter and braid equations", passed: seven.0, detail: seven.1, elapsed: shared });
    out.push(run(8, "gauge invariance", None, criterion_8));
    out.push(run(9, "twisted quantum double comparison", None, criterion_9));
    out.push(run(10, "Schmidt structure and pairing parity", secs(600), criterion_10));
    out.push(run(11, "dominated Schmidt span", None, criterion_11));

    for o in &out {
        println!(
            "criterion {:>2} {} {} ({:.1}s): {}",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed.as_secs_f64(),
            o.detail
        );
    }
    let failed: Vec<u32> = out.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
