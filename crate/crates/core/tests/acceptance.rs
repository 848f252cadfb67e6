//! Acceptance suite: one line per criterion, pinned tolerances and runtime
//! budgets. Run with `cargo test --test acceptance -- --nocapture`.
//!
//! Tests are serialized so that each budget measures its own work only.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sweedler_rb::algebra::h4;
use sweedler_rb::autgroup::{conjugate, enumerate_maps};
use sweedler_rb::catalog::family;
use sweedler_rb::classify::packed::unpack_weighted;
use sweedler_rb::classify::verify::{
    default_weights, verify_corollary, verify_families, verify_kernel_theorems, verify_subalgebras,
};
use sweedler_rb::classify::{classify, enumerate_packed, Fp, Mat, OrbitContext, Strategy};
use sweedler_rb::field::{Field, Scalar};
use sweedler_rb::rb::is_rb;

/// Golden values for F_3, λ = 1, locked after the first verified run.
const F3_RB_COUNT: usize = 672;
const F3_ORBIT_COUNT: usize = 15;

const CONJUGATION_PAIRS: usize = 100_000;

fn serial() -> MutexGuard<'static, ()> {
    static LOCK: Mutex<()> = Mutex::new(());
    LOCK.lock().unwrap_or_else(|e| e.into_inner())
}

fn f3_ops() -> &'static [Mat] {
    static OPS: OnceLock<Vec<Mat>> = OnceLock::new();
    OPS.get_or_init(|| enumerate_packed(Fp::new(3).unwrap(), 1, Strategy::Exhaustive, 1).unwrap())
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Prints the criterion's line and fails the test unless both the check and
/// the budget hold.
fn verdict(n: u32, what: &str, pass: bool, detail: &str, took: Duration, budget: Duration) {
    let in_budget = took < budget;
    let tag = if pass && in_budget { "PASS" } else { "FAIL" };
    println!("criterion {n} {tag}: {what}; {detail} [{} / budget {}]", secs(took), secs(budget));
    assert!(pass, "criterion {n} ({what}) failed: {detail}");
    assert!(in_budget, "criterion {n} ({what}) exceeded its budget: {} >= {}", secs(took), secs(budget));
}

/// Dual of every operator and `CONJUGATION_PAIRS` random conjugates pass the
/// generic RB check. Returns (duals failing, conjugates failing).
fn closure(p: u64, ops: &[Mat], seed: u64) -> (usize, usize) {
    let fp = Fp::new(p).unwrap();
    let alg = h4(Field::prime(p).unwrap()).unwrap();
    let maps = enumerate_maps(p, true).unwrap();
    let weighted: Vec<_> = ops.iter().map(|m| unpack_weighted(fp, m, 1)).collect();
    let bad_duals = weighted.iter().filter(|w| !is_rb(&alg, &w.dual()).unwrap()).count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad_conj = 0;
    for _ in 0..CONJUGATION_PAIRS {
        let w = weighted.choose(&mut rng).unwrap();
        let phi = maps.choose(&mut rng).unwrap();
        if !is_rb(&alg, &conjugate(w, phi).unwrap()).unwrap() {
            bad_conj += 1;
        }
    }
    (bad_duals, bad_conj)
}

#[test]
fn criterion_1_family_validity() {
    let _g = serial();
    let t = Instant::now();
    let report = verify_families(&default_weights(), 100, 1).unwrap();
    let took = t.elapsed();
    let failing: Vec<&str> = report.families.iter().filter(|f| f.status == "fail").map(|f| f.id.as_str()).collect();
    let checked: usize = report.families.iter().map(|f| f.checked).sum();
    let detail = format!(
        "{} families, {checked} exact checks at λ ∈ {{{}}}, failing: {failing:?}",
        report.families.len(),
        report.weights.join(", ")
    );
    verdict(1, "family validity over Q", report.pass && failing.is_empty(), &detail, took, Duration::from_secs(10));
}

#[test]
fn criterion_2_conditional_family_dichotomy() {
    let _g = serial();
    let t = Instant::now();
    let f = family("ma-h").unwrap();
    let lambda = Scalar::rational(1, 1);
    let alg = h4(Field::Rational).unwrap();
    let k = f.params.iter().position(|n| n == "p1").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut agree, mut on_locus) = (0, 0);
    for n in 0..200 {
        let mut params = f.random_params(&mut rng, &lambda).unwrap();
        if n % 2 == 0 {
            params[k] = Scalar::rational(0, 1);
        }
        let p1_zero = params[k].is_zero();
        on_locus += p1_zero as usize;
        let ok = is_rb(&alg, &f.instantiate(&lambda, &params).unwrap()).unwrap();
        agree += (ok == p1_zero) as usize;
    }
    let took = t.elapsed();
    let detail = format!("{agree}/200 samples agree (is_rb iff p1 = 0), {on_locus} on p1 = 0");
    verdict(2, "ma-h is RB iff p1 = 0", agree == 200, &detail, took, Duration::from_secs(1));
}

#[test]
fn criterion_3_closure_over_f3() {
    let _g = serial();
    let ops = f3_ops();
    let t = Instant::now();
    let (bad_duals, bad_conj) = closure(3, ops, 3);
    let took = t.elapsed();
    let detail =
        format!("{} duals ({bad_duals} failing), {CONJUGATION_PAIRS} conjugates ({bad_conj} failing)", ops.len());
    verdict(
        3,
        "dual and conjugation closure, F_3",
        bad_duals == 0 && bad_conj == 0,
        &detail,
        took,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_4_completeness_over_f3() {
    let _g = serial();
    let fp = Fp::new(3).unwrap();
    let t = Instant::now();
    let ops = enumerate_packed(fp, 1, Strategy::Exhaustive, 1).unwrap();
    let ctx = OrbitContext::new(3, 1).unwrap();
    let report = classify(&ctx, &ops).unwrap();
    let single = t.elapsed();

    let t = Instant::now();
    let sharded_ops = enumerate_packed(fp, 1, Strategy::Exhaustive, 8).unwrap();
    let sharded = classify(&ctx, &sharded_ops).unwrap();
    let eight = t.elapsed();

    let nontrivial_matched = report
        .orbits
        .iter()
        .filter(|o| !o.matched_families.iter().any(|f| f == "trivial"))
        .all(|o| !o.matched_families.is_empty());
    let pass = report.complete()
        && nontrivial_matched
        && report.total_rb_count == F3_RB_COUNT
        && report.orbit_count == F3_ORBIT_COUNT
        && sharded_ops == ops
        && sharded == report;
    let detail = format!(
        "{} operators (golden {F3_RB_COUNT}), {} orbits (golden {F3_ORBIT_COUNT}), unmatched {}, stray {}, 8 shards {} in {}",
        report.total_rb_count,
        report.orbit_count,
        report.unmatched.len(),
        report.findings.stray_instances.len(),
        if sharded == report { "identical" } else { "DIFFERENT" },
        secs(eight),
    );
    assert!(eight < Duration::from_secs(120), "8-shard run exceeded 2 min: {}", secs(eight));
    verdict(4, "final classification complete over F_3", pass, &detail, single, Duration::from_secs(600));
}

#[test]
fn criterion_5_kernel_theorems_over_f3() {
    let _g = serial();
    let ops = f3_ops();
    let t = Instant::now();
    let report = verify_kernel_theorems(Fp::new(3).unwrap(), 1, ops).unwrap();
    let took = t.elapsed();
    let mismatches: usize = report.groups.iter().map(|g| g.missing.len() + g.extra.len()).sum();
    let failing: Vec<&str> = report.groups.iter().filter(|g| !g.pass).map(|g| g.group.as_str()).collect();
    let detail = format!("{} header groups, {mismatches} mismatches, failing: {failing:?}", report.groups.len());
    verdict(
        5,
        "kernel-stratified set equality",
        report.pass && mismatches == 0,
        &detail,
        took,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_6_subalgebra_census() {
    let _g = serial();
    let t = Instant::now();
    let report = verify_subalgebras(&[3, 5]).unwrap();
    let took = t.elapsed();
    let counts: Vec<String> = report
        .censuses
        .iter()
        .map(|c| format!("F_{} dim {}: {} ({} classes)", c.p, c.dim, c.count, c.by_class.len()))
        .collect();
    let detail = format!("{}; all witnessed: {}", counts.join(", "), report.witnessed.iter().all(|w| *w));
    verdict(6, "subalgebra census", report.pass, &detail, took, Duration::from_secs(30));
}

#[test]
fn criterion_7_corollary() {
    let _g = serial();
    let t = Instant::now();
    let report = verify_corollary(&Scalar::rational(1, 1), 100, 7, 3).unwrap();
    let took = t.elapsed();
    let items: Vec<String> = report
        .items
        .iter()
        .map(|i| {
            let mark = if i.pass { "ok" } else { "FAIL" };
            format!(
                "({}) {mark} [{} checked, {} witnesses, {} counterexamples]",
                i.item,
                i.checked,
                i.witnesses.len(),
                i.counterexamples.len()
            )
        })
        .collect();
    let witnessed = report
        .items
        .iter()
        .filter(|i| i.claim.contains("conjugate"))
        .filter(|i| i.pass)
        .all(|i| !i.witnesses.is_empty());
    verdict(7, "corollary items (i)-(vii)", report.pass && witnessed, &items.join(", "), took, Duration::from_secs(60));
}

#[test]
fn criterion_8_cross_strategy_agreement() {
    let _g = serial();
    let f3 = Fp::new(3).unwrap();
    let exhaustive = f3_ops();
    let backtracked = enumerate_packed(f3, 1, Strategy::Backtracking, 1).unwrap();
    let agree = backtracked.as_slice() == exhaustive;

    let f5 = Fp::new(5).unwrap();
    let t = Instant::now();
    let ops = enumerate_packed(f5, 1, Strategy::Backtracking, 1).unwrap();
    let search = t.elapsed();

    let alg = h4(Field::prime(5).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let sample: Vec<&Mat> = ops.iter().filter(|_| rng.gen_ratio(1, 100)).collect();
    let recheck_bad =
        sample.iter().filter(|m| !(f5.is_rb_full(m, 1) && is_rb(&alg, &unpack_weighted(f5, m, 1)).unwrap())).count();
    let (bad_duals, bad_conj) = closure(5, &ops, 8);
    let distinct: BTreeSet<&Mat> = ops.iter().collect();

    let pass = agree && recheck_bad == 0 && bad_duals == 0 && bad_conj == 0 && distinct.len() == ops.len();
    let detail = format!(
        "F_3 backtracking {} exhaustive ({} operators); F_5: {} operators in {}, re-check {} sampled ({recheck_bad} failing), closure {bad_duals}/{bad_conj} failing",
        if agree { "==" } else { "!=" },
        backtracked.len(),
        ops.len(),
        secs(search),
        sample.len(),
    );
    verdict(8, "backtracking agrees and scales to F_5", pass, &detail, search, Duration::from_secs(1800));
}

#[test]
fn criterion_9_determinism() {
    let _g = serial();
    let bin = env!("CARGO_BIN_EXE_h4rb");
    let run = || {
        let out = Command::new(bin).args(["classify", "--p", "3", "--weight", "1", "--shards", "8"]).output().unwrap();
        (out.status.code(), out.stdout)
    };
    let t = Instant::now();
    let (code_a, a) = run();
    let (code_b, b) = run();
    let took = t.elapsed();
    let identical = a == b && !a.is_empty();
    let detail = format!("exit codes {code_a:?}/{code_b:?}, {} bytes, byte-identical: {identical}", a.len());
    verdict(
        9,
        "classify is deterministic",
        identical && code_a == Some(0) && code_b == Some(0),
        &detail,
        took,
        Duration::from_secs(600),
    );
}
