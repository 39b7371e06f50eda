//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use cacc::complexity::{d_sequence, fit_floor_linear, r_n_scans, RowClassProtocol};
use cacc::detectors::{additive_protocol_eval, detect_additivity, sensibility_report};
use cacc::evolve::{digits_of, tabulate, TabulateOptions, Word};
use cacc::matrices::{build_center_matrix, profile, rank_gf2};
use cacc::oracles::{self, ThreeStateContext};
use cacc::rules::{eca_from_wolfram, orbit, representatives, space_mirror, state_complement};
use cacc::{d_n, EcaCode, RuleTable};
use cacc_cli::{analyze_rule, parse_rule, Cache, Context};

/// Allowed distance of the best split from `n / 3`.
const ARGMAX_BAND: f64 = 2.0;
const TABLE_N_MAX: u32 = 12;

const BOUNDED: [u8; 45] = [
    0, 1, 2, 3, 4, 5, 7, 8, 10, 12, 13, 15, 19, 24, 27, 28, 29, 32, 34, 36, 38, 42, 46, 51, 60, 71,
    72, 76, 78, 90, 105, 108, 128, 130, 136, 138, 140, 150, 154, 156, 160, 170, 172, 200, 204,
];
const LINEAR: [u8; 18] = [
    11, 14, 23, 33, 35, 43, 44, 50, 56, 58, 77, 132, 142, 152, 168, 178, 184, 232,
];
const OTHER: [u8; 25] = [
    6, 9, 18, 22, 25, 26, 30, 37, 40, 41, 45, 54, 57, 62, 73, 74, 94, 104, 106, 110, 122, 126, 134,
    146, 164,
];
const ADDITIVE: [u8; 12] = [15, 51, 60, 90, 105, 108, 128, 136, 150, 160, 170, 204];
const HALF_LIMITED: [u8; 5] = [7, 13, 28, 140, 172];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn eca(c: u32) -> RuleTable {
    eca_from_wolfram(c).unwrap()
}

fn criterion_1() -> Outcome {
    let reps = representatives();
    let mut covered = BTreeSet::new();
    let mut disjoint = true;
    for r in &reps {
        for c in orbit(*r).codes() {
            disjoint &= covered.insert(c.value());
        }
    }
    let partition = disjoint && covered.len() == 256;
    outcome(
        reps.len() == 88 && partition,
        format!(
            "{} representatives, orbits cover {} codes, disjoint {disjoint}",
            reps.len(),
            covered.len()
        ),
    )
}

/// The reference list puts 71 among the bounded rules; 71 is not a
/// representative (its orbit is that of 29) and 162 is missing, so the
/// comparison maps 71 to 162.
fn expected_table() -> BTreeMap<u8, &'static str> {
    let mut m = BTreeMap::new();
    for c in BOUNDED {
        let c = if c == 71 { 162 } else { c };
        m.insert(c, "Bounded");
    }
    for c in LINEAR {
        m.insert(c, "Linear");
    }
    for c in OTHER {
        m.insert(c, "Other");
    }
    m
}

fn criterion_2() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("table.csv");
    let n_max = TABLE_N_MAX.to_string();
    let code = cacc_cli::run([
        "cacc",
        "classify-all",
        "--n-max",
        &n_max,
        "--format",
        "csv",
        "--cache-dir",
        dir.path().join("cache").to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    if code != 0 {
        return outcome(false, format!("classify-all exited with {code}"));
    }
    let records = cacc_cli::record::from_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    let expected = expected_table();
    let mut counts = BTreeMap::new();
    let mut mismatches = Vec::new();
    for r in &records {
        let code = r.rule.code.unwrap();
        let kind = r.class.as_ref().map(|c| c.kind.as_str()).unwrap_or("none");
        *counts.entry(kind.to_string()).or_insert(0) += 1;
        if expected.get(&code) != Some(&kind) {
            mismatches.push(format!("{code}:{kind}"));
        }
    }
    let pass = records.len() == 88 && mismatches.is_empty() && expected.len() == 88;
    outcome(pass, format!("{counts:?}, mismatches {mismatches:?}"))
}

fn criterion_3() -> Outcome {
    let mut certified = Vec::new();
    let mut all_verified = true;
    let mut bounded = true;
    for code in representatives() {
        let f = code.rule();
        if let Some(w) = detect_additivity(&f).unwrap() {
            certified.push(code.value());
            all_verified &= w.verify(&f);
            bounded &= d_sequence(&f, TABLE_N_MAX)
                .unwrap()
                .values
                .iter()
                .all(|&d| d <= 2);
        }
    }
    let expected: Vec<u8> = ADDITIVE.to_vec();
    let missing: Vec<u8> = expected
        .iter()
        .copied()
        .filter(|c| !certified.contains(c))
        .collect();
    let extra: Vec<u8> = certified
        .iter()
        .copied()
        .filter(|c| !expected.contains(c))
        .collect();
    outcome(
        certified == expected && all_verified && bounded,
        format!(
            "certified {certified:?}; missing {missing:?}, extra {extra:?}; witnesses verified {all_verified}; d_n <= 2 {bounded}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut wrong = Vec::new();
    for c in HALF_LIMITED {
        let r = sensibility_report(&eca(c.into()), TABLE_N_MAX).unwrap();
        if r.limited != Some(false) || r.half_limited != Some(true) {
            wrong.push(c);
        }
    }
    let mut others = Vec::new();
    for code in representatives() {
        if HALF_LIMITED.contains(&code.value()) {
            continue;
        }
        let r = sensibility_report(&code.rule(), TABLE_N_MAX).unwrap();
        if r.limited == Some(false) && r.half_limited == Some(true) {
            others.push(code.value());
        }
    }
    outcome(
        wrong.is_empty(),
        format!("listed rules not flagged: {wrong:?}; also half-limited only: {others:?}"),
    )
}

fn criterion_5() -> Outcome {
    let f = eca(132);
    let mut bad = Vec::new();
    for n in 1..=10u32 {
        let t = tabulate(&f, n).unwrap();
        let m0 = build_center_matrix(&t, 0).unwrap();
        let m1 = build_center_matrix(&t, 1).unwrap();
        let nn = n as usize;
        let ok_d = d_n(&f, n).unwrap() == nn + 1;
        let ok_rows = profile(&m0).distinct_rows == 1 && profile(&m1).distinct_rows == nn + 1;
        let row = |k: usize| ((1usize << k) - 1) << (nn - k);
        let col = |l: usize| ((1usize << l) - 1) << (nn - l);
        let ok_id = (0..=nn).all(|k| (0..=nn).all(|l| m1.get(row(k), col(l)) == u8::from(k == l)));
        if !(ok_d && ok_rows && ok_id) {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("n = 1..10, failures at {bad:?}"))
}

fn criterion_6() -> Outcome {
    let got: Vec<usize> = d_sequence(&eca(23), 10).unwrap().values;
    let want: Vec<usize> = (2..=11).collect();
    outcome(got == want, format!("d_1..d_10 = {got:?}"))
}

fn criterion_7() -> Outcome {
    let f = eca(105);
    let w = detect_additivity(&f).unwrap().unwrap();
    let mut bad = Vec::new();
    for n in 1..=8usize {
        let t = tabulate(&f, n as u32).unwrap();
        let ok = (0..t.len()).all(|x| {
            let cells = digits_of(x, 2 * n + 1, 2);
            let u = Word::new(cells[..n].to_vec());
            let v = Word::new(cells[n + 1..].to_vec());
            additive_protocol_eval(&f, &w, &u, cells[n], &v).unwrap() == t.get(x)
        });
        if !ok {
            bad.push(n);
        }
    }
    outcome(
        bad.is_empty(),
        format!("all 2^(2n+1) inputs for n = 1..8, failures at {bad:?}"),
    )
}

fn criterion_8() -> Outcome {
    let f = oracles::three_state_rule();
    let mut ds = Vec::new();
    let mut ok = true;
    for n in 1..=5u32 {
        let d = d_n(&f, n).unwrap() as u64;
        let m = u64::from(n) + 1;
        ok &= m * (m + 1) / 2 <= d && d <= 4 * m * m;
        ds.push(d);
        let t = tabulate(&f, n).unwrap();
        ok &= (0..t.len()).all(|x| {
            let w = Word::new(digits_of(x, t.width(), 3));
            let ctx = ThreeStateContext::from_word(&w).unwrap();
            oracles::three_state_predict(w.cells()[n as usize], &ctx, n).unwrap() == t.get(x)
        });
    }
    outcome(
        ok,
        format!("d_1..d_5 = {ds:?}; prediction checked on all inputs"),
    )
}

fn criterion_9() -> Outcome {
    let f = oracles::comparison_rule();
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 1..=5usize {
        let t = tabulate(&f, n as u32).unwrap();
        let m = build_center_matrix(&t, oracles::PLAIN_1).unwrap();
        let distinct = profile(&m).distinct_rows;
        ok &= distinct >= 1 << n;
        rows.push(distinct);
        if n <= 4 {
            let marked_cols: Vec<usize> = (0..m.cols())
                .filter(|&j| digits_of(j, n, 4).iter().all(|&x| x >= oracles::MARKED_0))
                .collect();
            for i in
                (0..m.rows()).filter(|&i| digits_of(i, n, 4).iter().all(|&x| x <= oracles::PLAIN_1))
            {
                let ones = marked_cols.iter().filter(|&&j| m.get(i, j) == 1).count();
                ok &= ones == 1;
            }
        }
    }
    outcome(ok, format!("distinct rows of M_1^n for n = 1..5: {rows:?}"))
}

fn criterion_10() -> Outcome {
    let scans = r_n_scans(&eca(7), 12, &TabulateOptions::default()).unwrap();
    let tail: Vec<_> = scans.iter().filter(|s| (9..=12).contains(&s.n)).collect();
    let points: Vec<(i64, i64)> = tail
        .iter()
        .map(|s| (i64::from(s.n), s.r_n as i64))
        .collect();
    let fit = fit_floor_linear(&points);
    let in_band = tail
        .iter()
        .all(|s| (s.argmax_p as f64 - f64::from(s.n) / 3.0).abs() <= ARGMAX_BAND);
    let summary: Vec<String> = tail
        .iter()
        .map(|s| format!("n={} R={} p={}", s.n, s.r_n, s.argmax_p))
        .collect();
    outcome(
        fit.is_some() && in_band,
        format!(
            "{}; floor-linear fit {}; argmax within {ARGMAX_BAND} of n/3 {in_band}",
            summary.join(", "),
            fit.map(|(a1, a0)| format!("a1={a1} a0={a0}"))
                .unwrap_or_else(|| "none".into())
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut failures = Vec::new();
    if !EcaCode::all().all(|c| {
        let f = c.rule();
        let d = d_sequence(&f, 6).unwrap();
        d == d_sequence(&space_mirror(&f), 6).unwrap()
            && d == d_sequence(&state_complement(&f).unwrap(), 6).unwrap()
    }) {
        failures.push("symmetry invariance");
    }
    let mut transpose_ok = true;
    let mut rank_ok = true;
    for c in EcaCode::all() {
        for n in 1..=4 {
            let t = tabulate(&c.rule(), n).unwrap();
            let tm = tabulate(&space_mirror(&c.rule()), n).unwrap();
            for center in 0..2 {
                let m = build_center_matrix(&t, center).unwrap();
                transpose_ok &= build_center_matrix(&tm, center).unwrap() == m.transpose();
                rank_ok &= rank_gf2(&m).unwrap() <= profile(&m).distinct_rows;
            }
        }
    }
    for c in representatives() {
        for n in 5..=6 {
            let t = tabulate(&c.rule(), n).unwrap();
            for center in 0..2 {
                let m = build_center_matrix(&t, center).unwrap();
                rank_ok &= rank_gf2(&m).unwrap() <= profile(&m).distinct_rows;
            }
        }
    }
    if !transpose_ok {
        failures.push("mirror transpose");
    }
    if !rank_ok {
        failures.push("rank bound");
    }
    let protocol_ok = representatives().into_iter().all(|c| {
        (1..=4).all(|n| {
            let t = tabulate(&c.rule(), n).unwrap();
            (0..2).all(|center| {
                let m = build_center_matrix(&t, center).unwrap();
                [m.clone(), m.transpose()].iter().all(|m| {
                    let p = RowClassProtocol::from_matrix(m);
                    (0..m.rows())
                        .all(|i| (0..m.cols()).all(|j| p.answer(p.message(i), j) == m.get(i, j)))
                })
            })
        })
    });
    if !protocol_ok {
        failures.push("row-class protocol");
    }
    let dir = tempfile::tempdir().unwrap();
    let params = cacc::ClassifierParams::default();
    let cache_ok = ["30", "110", "@three-state"].iter().all(|spec| {
        let (rule, id) = parse_rule(spec).unwrap();
        let n = if rule.states() == 2 { 10 } else { 4 };
        let with_cache = Context::new(Some(Cache::new(dir.path())));
        let cold = analyze_rule(&rule, id.clone(), n, &params, false, &with_cache).unwrap();
        let warm = analyze_rule(&rule, id.clone(), n, &params, false, &with_cache).unwrap();
        let none = analyze_rule(&rule, id, n, &params, false, &Context::new(None)).unwrap();
        cold == warm && warm == none
    });
    if !cache_ok {
        failures.push("cache transparency");
    }
    outcome(failures.is_empty(), format!("failed suites: {failures:?}"))
}

fn main() {
    // the manual harness also receives libtest flags; listing shows nothing
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [(u32, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = Vec::new();
    for (k, run) in criteria {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {k:>2}: {verdict} ({:.1}s) {}",
            start.elapsed().as_secs_f64(),
            o.detail
        );
        if !o.pass {
            failed.push(k);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
