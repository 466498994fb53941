//! Acceptance gate: ten criteria, one test each. Every test prints a
//! `criterion N: PASS` line when it succeeds, so a full run gives one
//! line per criterion.

use std::collections::BTreeMap;
use std::process::Command;

use rayon::prelude::*;

use qrprod::closed::{
    closed_braces, closed_s, closed_t_fibonacci, closed_t_pell,
};
use qrprod::invariants::{
    h_minus_3p, h_minus_4p, h_minus_p, two_square_decomposition,
};
use qrprod::modular::{is_prime, OddPrime};
use qrprod::products::{braces_pairs, product_braces, product_s, product_t, QuadraticForm};
use qrprod::sweep::emit::{emit_report, ReportFormat};
use qrprod::sweep::{run_sweep, SweepConfig};

fn primes_to(hi: u64) -> Vec<u64> {
    (3..=hi).filter(|&q| is_prime(q)).collect()
}

// write to the raw stdout handle so the line survives test capture
fn report_pass(n: u32) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {n}: PASS").unwrap();
    out.flush().unwrap();
}

fn sweep(targets: &[&str], min: u64, max: u64) -> qrprod::sweep::Summary {
    let cfg = SweepConfig {
        targets: targets.iter().map(|s| s.to_string()).collect(),
        min,
        max,
        ..SweepConfig::default()
    };
    let (summary, _) = run_sweep(&cfg).expect("sweep must run");
    assert_eq!(summary.failures(), 0, "failures in {targets:?}: {summary:?}");
    assert!(summary.checked() > 0, "nothing checked in {targets:?}");
    summary
}

#[test]
fn criterion_01_count_identities_all_odd_moduli() {
    // all five count-symbol identities for every odd n <= 2001 and
    // every admissible x
    sweep(&["thm1.1"], 3, 2001);
    report_pass(1);
}

#[test]
fn criterion_02_full_range_product_case_table() {
    // S_p closed form vs brute force over the full coefficient grid
    // [-6,6]^3 for all p <= 199, with every stated case exercised
    let per_prime: Vec<BTreeMap<&'static str, u64>> = primes_to(199)
        .into_par_iter()
        .map(|q| {
            let p = OddPrime::new(q).unwrap();
            let mut hits: BTreeMap<&'static str, u64> = BTreeMap::new();
            for a in -6..=6i64 {
                for b in -6..=6i64 {
                    for c in -6..=6i64 {
                        let f = QuadraticForm::new(a, b, c);
                        let closed = closed_s(&f, p).unwrap();
                        let brute = product_s(&f, p);
                        assert_eq!(
                            closed.value, brute.value,
                            "S_{q}({a},{b},{c}) case {}",
                            closed.case
                        );
                        if closed.stated_value.is_some() {
                            assert_eq!(closed.stated_value, Some(0));
                        }
                        *hits.entry(closed.case).or_default() += 1;
                    }
                }
            }
            hits
        })
        .collect();
    let mut hits: BTreeMap<&'static str, u64> = BTreeMap::new();
    for h in per_prime {
        for (k, v) in h {
            *hits.entry(k).or_default() += v;
        }
    }
    let ten_cases = [
        "degenerate-all-zero",
        "p ∤ a, p | b, p | c",
        "p | a, p ∤ b, p | c",
        "p | a, p | b, p ∤ c",
        "p | a, p ∤ bc, p | b+c",
        "p ∤ ab, p | a+b, p | c",
        "p ∤ ac, p | a-c, p | a+b+c",
        "p ∤ ac(a-c), p | a+b+c",
        "p ∤ ab(a+b), p | c",
        "p | a, p ∤ bc(b+c)",
    ];
    for case in ten_cases {
        let n = hits.get(case).copied().unwrap_or(0);
        assert!(n >= 100, "case `{case}` hit only {n} times");
    }
    assert!(hits.contains_key("p | disc") && hits.contains_key("p ∤ disc"));
    report_pass(2);
}

#[test]
fn criterion_03_braces_product_all_pairs() {
    // {a,b}_p closed form vs brute force for every valid pair at every
    // p <= 199, covering both a = b subcases
    let mut subcases = BTreeMap::new();
    for q in primes_to(199) {
        let p = OddPrime::new(q).unwrap();
        for (a, b) in braces_pairs(p) {
            let closed = closed_braces(a as i64, b as i64, p).unwrap();
            let brute = product_braces(a as i64, b as i64, p).unwrap();
            assert_eq!(closed.value, brute.value, "{{{a},{b}}}_{q}");
            if a == b {
                *subcases.entry(closed.case).or_insert(0u64) += 1;
            }
        }
    }
    assert!(subcases["p = 1 mod 8"] > 0 && subcases["p = 5 mod 8"] > 0);
    report_pass(3);
}

#[test]
fn criterion_04_half_square_product_general() {
    // T_p(1,-A,-1) for A in [-8,8] at every p <= 499, including the
    // p | A^2 + 4 branch
    sweep(&["thm1.4"], 3, 499);
    // all three discriminant branches fire on that grid
    let mut branches = BTreeMap::new();
    for q in primes_to(499) {
        let p = OddPrime::new(q).unwrap();
        for a in -8..=8i64 {
            let r = qrprod::closed::closed_t_general(a, p).unwrap();
            *branches.entry(r.case).or_insert(0u64) += 1;
        }
    }
    for needle in ["p = 5 mod 8", "(disc/p) = 1", "(disc/p) = -1"] {
        assert!(
            branches.keys().any(|c| c.contains(needle)),
            "branch {needle} never hit: {branches:?}"
        );
    }
    report_pass(4);
}

#[test]
fn criterion_05_special_families() {
    // the Fibonacci, Pell, (2, +-5, 2), and triangular linear closed
    // forms at every p <= 1999, both variants where applicable
    sweep(&["thm1.5", "thm1.6", "thm1.7"], 3, 1999);
    // floor-exponent edge cases at the smallest primes
    let p3 = OddPrime::new(3).unwrap();
    let p7 = OddPrime::new(7).unwrap();
    assert_eq!(closed_t_fibonacci(p3).unwrap().value, 2);
    assert_eq!(closed_t_fibonacci(p7).unwrap().value, 6);
    assert_eq!(closed_t_pell(p3).unwrap().value, 1);
    assert_eq!(closed_t_pell(p7).unwrap().value, 1);
    assert_eq!(
        product_t(&QuadraticForm::new(1, -1, -1), p3).value,
        2
    );
    report_pass(5);
}

#[test]
fn criterion_06_supporting_lemmas() {
    // the count, factorial, entry-point, half-index, and paired
    // double-factorial lemmas at every p <= 1999
    sweep(&["lem3.1", "lem3.3", "lem4.1", "lem4.3", "lem6.1"], 3, 1999);
    report_pass(6);
}

#[test]
fn criterion_07_background_congruences() {
    // all six quartic-residue arms at every p = 1 (mod 4) up to 1999
    let summary = sweep(&["background"], 3, 1999);
    let s = &summary.per_item["background"];
    // 147 primes = 1 (mod 4) below 2000, six arms each
    assert!(s.pass >= 6 * 147, "only {} background passes", s.pass);
    // pinned: at p = 13 the mod-p^2 arm has both sides = 20 (mod 169)
    let recs = qrprod::invariants::background_checks(OddPrime::new(13).unwrap()).unwrap();
    let cde = recs.iter().find(|r| r.params["arm"] == 5).unwrap();
    assert_eq!((cde.lhs, cde.rhs), (20, 20));
    report_pass(7);
}

#[test]
fn criterion_08_conjectures_no_counterexamples() {
    let targets = [
        "conj7.1", "conj7.2", "conj7.3", "conj7.4", "conj7.5", "conj7.6", "conj7.7", "conj7.8",
        "conj7.9", "conj7.10",
    ];
    let summary = sweep(&targets, 3, 1999);
    for t in targets {
        let s = &summary.per_item[t];
        assert_eq!(s.fail, 0, "{t} has counterexamples");
        assert!(s.pass > 100, "{t} checked only {} primes", s.pass);
    }
    report_pass(8);
}

#[test]
fn criterion_09_pinned_goldens() {
    let p = |v: u64| OddPrime::new(v).unwrap();
    assert_eq!(product_t(&QuadraticForm::new(1, -2, -1), p(5)).value, 2);
    assert_eq!(product_t(&QuadraticForm::new(1, -1, -1), p(5)).value, 4);
    assert_eq!(product_s(&QuadraticForm::new(1, 0, 1), p(5)).value, 1);
    assert_eq!(product_s(&QuadraticForm::new(1, 0, 5), p(5)).value, 4);
    assert_eq!(product_braces(2, 2, p(5)).unwrap().value, 1);
    assert_eq!(product_t(&QuadraticForm::new(2, 5, 2), p(7)).value, 1);
    assert_eq!(product_t(&QuadraticForm::new(1, -1, -1), p(7)).value, 6);
    assert_eq!(product_t(&QuadraticForm::new(1, -1, -1), p(13)).value, 5);
    assert_eq!(h_minus_4p(p(5)).unwrap().h, 2);
    assert_eq!(h_minus_4p(p(13)).unwrap().h, 2);
    assert_eq!(h_minus_3p(p(13)).unwrap().h, 4);
    assert_eq!(h_minus_p(p(23)).unwrap().h, 3);
    assert_eq!(h_minus_p(p(47)).unwrap().h, 5);
    let t = two_square_decomposition(p(13)).unwrap();
    assert_eq!((t.x, t.y), (-3, -2));
    report_pass(9);
}

#[test]
fn criterion_10_determinism_and_exit_codes() {
    // identical byte streams regardless of worker count
    let base = SweepConfig {
        targets: vec!["thm1.5".into(), "conj7.7".into(), "lem3.3".into()],
        min: 3,
        max: 300,
        ..SweepConfig::default()
    };
    let mut streams = Vec::new();
    for jobs in [Some(1), Some(3), Some(8)] {
        let cfg = SweepConfig {
            jobs,
            ..base.clone()
        };
        let (_, records) = run_sweep(&cfg).unwrap();
        let mut buf = Vec::new();
        emit_report(&records, ReportFormat::JsonLines, &mut buf).unwrap();
        streams.push(buf);
    }
    assert_eq!(streams[0], streams[1]);
    assert_eq!(streams[1], streams[2]);

    // CLI exit codes: 0 on a green run, 2 on a usage error
    let bin = env!("CARGO_BIN_EXE_qrprod");
    let ok = Command::new(bin)
        .args(["verify", "--target", "thm1.5", "--min", "3", "--max", "50"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&ok.stderr));
    let bad = Command::new(bin)
        .args(["verify", "--target", "thm9.9"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let bad_range = Command::new(bin)
        .args(["sweep", "--min", "50", "--max", "10"])
        .output()
        .unwrap();
    assert_eq!(bad_range.status.code(), Some(2));
    report_pass(10);
}
