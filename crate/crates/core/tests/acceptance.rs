//! The acceptance gate: eight criteria, each printing one pass or fail
//! line. Heavy corpus sweeps are shared through lazy statics so the gate
//! stays inside its wall-clock budget.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use triod_rotation::conjugacy::build_conjugacy;
use triod_rotation::pattern::Pattern;
use triod_rotation::rotation_theory::classify;
use triod_rotation::sharkovsky::{sharkovsky_compare, SharkovskyValue};
use triod_rotation::triod::rat;
use triod_rotation::verify::{run_suite, SuiteConfig, SuiteReport};

fn gate(criterion: u32, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} - {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

/// Full default suite over every pattern of period at most 6.
fn full_suite() -> &'static (SuiteReport, u64) {
    static SUITE: OnceLock<(SuiteReport, u64)> = OnceLock::new();
    SUITE.get_or_init(|| {
        let t = Instant::now();
        let report = run_suite(&SuiteConfig::new(6)).unwrap();
        (report, t.elapsed().as_secs())
    })
}

/// Oscillation and conjugacy checks pushed one period past the full
/// suite, over every pattern of period at most 7.
fn seven_suite() -> &'static SuiteReport {
    static SUITE: OnceLock<SuiteReport> = OnceLock::new();
    SUITE.get_or_init(|| {
        let mut cfg = SuiteConfig::new(7);
        cfg.checks = Some(
            [
                "oscillation-modality-bound",
                "green-state-oscillation",
                "red-state-oscillation",
                "country-oscillation",
                "conjugacy-equivariance",
                "conjugacy-bijectivity",
                "lap-bound",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect::<BTreeSet<_>>(),
        );
        run_suite(&cfg).unwrap()
    })
}

#[test]
fn criterion_1_primitive_three_cycle() {
    let p =
        Pattern::from_json_line(r#"{"period":3,"points":[[0,1],[1,1],[2,1]]}"#).unwrap();
    let c = classify(&p).unwrap();
    let conj = build_conjugacy(&p).unwrap();
    let ok = c.rho == rat(1, 3)
        && (c.rp.d, c.rp.n) == (1, 3)
        && c.census == [0, 3, 0]
        && c.twist
        && c.modality == 1
        && conj.psi == vec![rat(0, 1), rat(1, 3), rat(2, 3)];
    gate(
        1,
        ok,
        &format!(
            "rho={}/{} rp=({},{}) census={:?} twist={} modality={} psi=thirds={}",
            c.rho.numer(),
            c.rho.denom(),
            c.rp.d,
            c.rp.n,
            c.census,
            c.twist,
            c.modality,
            conj.psi == vec![rat(0, 1), rat(1, 3), rat(2, 3)]
        ),
    );
}

#[test]
fn criterion_2_full_suite_period_six() {
    let (report, secs) = full_suite();
    let ok = report.passed() && report.corpus_size == 3983 && *secs <= 300;
    gate(
        2,
        ok,
        &format!(
            "corpus={} checks={} failures={} wall={}s (budget 300s)",
            report.corpus_size,
            report.checks.len(),
            report.failures_total(),
            secs
        ),
    );
}

#[test]
fn criterion_3_chi_and_regime_bounds_period_seven() {
    let report = seven_suite();
    let names = [
        "oscillation-modality-bound",
        "green-state-oscillation",
        "red-state-oscillation",
        "country-oscillation",
    ];
    let mut ok = report.corpus_size == 29903;
    let mut counts = Vec::new();
    for name in names {
        let c = &report.checks[name];
        ok &= c.failures.is_empty() && c.passes > 0;
        counts.push(format!("{name}={}", c.passes));
    }
    gate(3, ok, &format!("non-vacuous pass counts over {}: {}", report.corpus_size, counts.join(" ")));
}

#[test]
fn criterion_4_conjugacy_period_seven() {
    let report = seven_suite();
    let names = ["conjugacy-bijectivity", "conjugacy-equivariance", "lap-bound"];
    let mut ok = true;
    let mut counts = Vec::new();
    for name in names {
        let c = &report.checks[name];
        ok &= c.failures.is_empty() && c.passes > 0;
        counts.push(format!("{name}={}", c.passes));
    }
    gate(4, ok, &format!("twist conjugacies verified: {}", counts.join(" ")));
}

#[test]
fn criterion_5_oracle_equivalences() {
    let reach = {
        let mut cfg = SuiteConfig::new(4);
        cfg.checks = Some(["reach-rule-oracle".to_string()].into());
        run_suite(&cfg).unwrap()
    };
    let grid = {
        let mut cfg = SuiteConfig::new(4);
        cfg.checks = Some(["orbit-grid-oracle".to_string()].into());
        run_suite(&cfg).unwrap()
    };
    let forcing = &full_suite().0.checks["twist-forcing-oracle"];
    let reach_c = &reach.checks["reach-rule-oracle"];
    let grid_c = &grid.checks["orbit-grid-oracle"];
    let ok = reach_c.failures.is_empty()
        && reach_c.passes == reach.corpus_size
        && grid_c.failures.is_empty()
        && grid_c.passes == grid.corpus_size
        && forcing.failures.is_empty()
        && forcing.passes > 0;
    gate(
        5,
        ok,
        &format!(
            "reach {}/{} grid {}/{} forcing passes={} inconclusive={} disagreements={}",
            reach_c.passes,
            reach.corpus_size,
            grid_c.passes,
            grid.corpus_size,
            forcing.passes,
            forcing.inconclusive,
            forcing.failures.len()
        ),
    );
}

#[test]
fn criterion_6_regularity_dual_route() {
    let (report, _) = full_suite();
    let c = &report.checks["regularity-crosscheck"];
    let ok = c.failures.is_empty() && c.examined == 3983;
    gate(6, ok, &format!("routes agree on {}/{} patterns", c.passes, c.examined));
}

#[test]
fn criterion_7_sharkovsky_chain_and_hull() {
    use SharkovskyValue::{Finite, TwoInfinity};
    // Build the displayed chain independently: odd tiers by doubling
    // factor, the limit value, then powers of two descending.
    let mut expected = Vec::new();
    let mut factor = 1u64;
    while factor * 3 <= 100 {
        let mut o = 3;
        while factor * o <= 100 {
            expected.push(Finite(factor * o));
            o += 2;
        }
        factor *= 2;
    }
    expected.push(TwoInfinity);
    let mut pow = 64;
    while pow >= 1 {
        expected.push(Finite(pow));
        if pow == 1 {
            break;
        }
        pow /= 2;
    }
    let mut actual: Vec<SharkovskyValue> = (1..=100).map(Finite).collect();
    actual.push(TwoInfinity);
    actual.sort_by(|a, b| sharkovsky_compare(*a, *b));
    let chain_ok = actual == expected
        && actual.windows(2).all(|w| sharkovsky_compare(w[0], w[1]).is_lt())
        && actual[..4] == [Finite(3), Finite(5), Finite(7), Finite(9)];
    let hull = &full_suite().0.checks["mrp-hull-containment"];
    let hull_ok = hull.failures.is_empty() && hull.passes > 0;
    gate(
        7,
        chain_ok && hull_ok,
        &format!(
            "chain of {} values reproduced={} hull containment on {} regular patterns",
            actual.len(),
            chain_ok,
            hull.passes
        ),
    );
}

#[test]
fn criterion_8_deterministic_reruns() {
    let bin = env!("CARGO_BIN_EXE_triodrot");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().unwrap();
        assert!(out.status.success(), "{args:?} failed: {:?}", out);
        out.stdout
    };
    let dir = tempfile::tempdir().unwrap();
    let corpus_path = dir.path().join("corpus.jsonl");
    let corpus = run(&["enumerate", "--max-period", "3", "--deterministic"]);
    std::fs::write(&corpus_path, &corpus).unwrap();
    let cp = corpus_path.to_str().unwrap();
    let pairs = [
        run(&["enumerate", "--max-period", "3", "--deterministic"]) == corpus,
        run(&["classify", "--in", cp, "--deterministic"])
            == run(&["classify", "--in", cp, "--deterministic"]),
        run(&["classify", "--in", cp, "--format", "csv", "--deterministic"])
            == run(&["classify", "--in", cp, "--format", "csv", "--deterministic"]),
        run(&["verify", "--max-period", "3", "--deterministic"])
            == run(&["verify", "--max-period", "3", "--deterministic"]),
    ];
    let ok = pairs.iter().all(|&b| b);
    gate(
        8,
        ok,
        &format!(
            "byte-identical reruns: enumerate={} classify-json={} classify-csv={} verify={}",
            pairs[0], pairs[1], pairs[2], pairs[3]
        ),
    );
}
