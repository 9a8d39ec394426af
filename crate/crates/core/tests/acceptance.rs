//! One line per acceptance criterion, with its tolerance and time budget.

mod common;

use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use lspace_core::classify::{region_scan, torus_listed, torus_oracle, Verdict};
use lspace_core::{corpus, obstruction_report, Axis, Error, HalfInt, NTable, Surgeon};

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, f64, fn() -> Outcome);

/// `n^{+L2}_{s1,s2}(L_n)` for `-4 <= s1, s2 <= 4`, rows `s2 = 4, ..., -4`, columns `s1 = -4, ..., 4`.
const EXPECTED_NMATRICES: [[[i64; 9]; 9]; 4] = [
    [
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0],
        [1, 1, 1, 1, 1, 1, 1, 1, 1],
        [2, 2, 2, 2, 2, 2, 2, 2, 2],
        [3, 3, 3, 3, 3, 3, 3, 3, 3],
        [4, 4, 4, 4, 4, 4, 4, 4, 4],
    ],
    [
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 1, 0, 0, 0],
        [1, 1, 1, 1, 2, 1, 1, 1, 1],
        [2, 2, 2, 2, 2, 2, 2, 2, 2],
        [3, 3, 3, 3, 3, 3, 3, 3, 3],
        [4, 4, 4, 4, 4, 4, 4, 4, 4],
    ],
    [
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 1, 0, 0, 0],
        [0, 0, 1, 1, 2, 1, 1, 0, 0],
        [1, 1, 1, 2, 2, 2, 1, 1, 1],
        [2, 2, 2, 2, 3, 2, 2, 2, 2],
        [3, 3, 3, 3, 3, 3, 3, 3, 3],
        [4, 4, 4, 4, 4, 4, 4, 4, 4],
    ],
    [
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 1, 0, 0, 0],
        [0, 0, 1, 1, 2, 1, 1, 0, 0],
        [0, 1, 1, 2, 2, 2, 1, 1, 0],
        [1, 1, 2, 2, 3, 2, 2, 1, 1],
        [2, 2, 2, 3, 3, 3, 2, 2, 2],
        [3, 3, 3, 3, 4, 3, 3, 3, 3],
        [4, 4, 4, 4, 4, 4, 4, 4, 4],
    ],
];

fn nmatrix_reproduction() -> Outcome {
    let mut equal = 0;
    for (k, expected) in EXPECTED_NMATRICES.iter().enumerate() {
        let n = k as i64 + 1;
        let m = NTable::new(&corpus::l_n(n)).nmatrix(4);
        if m.values.len() != 9 || m.values.iter().any(|r| r.len() != 9) {
            return Err(format!("L_{n}: matrix is not 9x9"));
        }
        for (r, row) in expected.iter().enumerate() {
            for (c, &want) in row.iter().enumerate() {
                let got = m.values[r][c];
                if got != want {
                    return Err(format!(
                        "L_{n}: n^(+L2)_({}, {}) = {got}, expected {want}",
                        m.s1[c], m.s2[r]
                    ));
                }
                equal += 1;
            }
        }
    }
    Ok(format!("{equal} equalities"))
}

fn nu_law() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        let t = NTable::new(&corpus::l_n(n));
        for s1 in -10..=10i64 {
            let got = t
                .nu(Axis::L2, HalfInt::from_int(s1))
                .map_err(|e| e.to_string())?;
            let want = HalfInt::from_int((n - s1.abs()).max(0));
            if got != want {
                return Err(format!("L_{n}: nu^(+L2)_{s1} = {got}, expected {want}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} thresholds"))
}

fn dimension_law() -> Outcome {
    let mut dims = Vec::new();
    for n in 1..=5 {
        let s = Surgeon::new(corpus::l_n(n), false).map_err(|e| e.to_string())?;
        let r = s.hf_hat(1, 1).map_err(|e| e.to_string())?;
        let want = ((2 * n - 1) * (2 * n - 1)) as usize;
        if r.total != want {
            return Err(format!("L_{n} (1,1): total {}, expected {want}", r.total));
        }
        dims.push(r.total.to_string());
    }
    Ok(format!("totals {}", dims.join(", ")))
}

fn whitehead_classification() -> Outcome {
    let s = Surgeon::new(corpus::whitehead(), false).map_err(|e| e.to_string())?;
    let region = region_scan(&s, -10, 10).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for c in &region.cells {
        if c.p1 * c.p2 == 0 {
            continue;
        }
        let want = c.p1 > 0 && c.p2 > 0;
        if (c.verdict == Verdict::Lspace) != want || c.verdict == Verdict::Unsupported {
            return Err(format!("({}, {}): {:?}", c.p1, c.p2, c.verdict));
        }
        checked += 1;
    }
    Ok(format!("{checked} framings"))
}

fn l7n2_obstruction() -> Outcome {
    let witness = "n^(+L1)_(0, 0) = -1";
    let report = obstruction_report(&corpus::l7n2());
    if report.passes() {
        return Err("gate passed".into());
    }
    if !report
        .failures()
        .any(|c| c.witness.as_deref() == Some(witness))
    {
        return Err(format!("no failure with witness {witness}:\n{report}"));
    }
    match Surgeon::new(corpus::l7n2(), false) {
        Err(Error::Obstructed(msg)) if msg.contains(witness) => Ok(format!("witness {witness}")),
        Err(e) => Err(format!("unexpected error {e}")),
        Ok(_) => Err("surgeon accepted L7n2".into()),
    }
}

fn torus_agreement() -> Outcome {
    let mut compared = 0;
    let mut listed = 0;
    for n in 2..=6 {
        let s = Surgeon::new(corpus::torus(n), false).map_err(|e| e.to_string())?;
        let region = region_scan(&s, -4 * n, 4 * n).map_err(|e| e.to_string())?;
        for c in &region.cells {
            let oracle = torus_oracle(n, c.p1, c.p2);
            match (c.verdict, oracle) {
                (Verdict::Unsupported, _) => continue,
                (Verdict::B1Positive, None) => continue,
                (Verdict::Lspace, Some(true)) | (Verdict::NotLspace, Some(false)) => compared += 1,
                (v, o) => {
                    return Err(format!(
                        "T(2,{}) ({}, {}): classifier {v:?}, oracle {o:?}",
                        2 * n,
                        c.p1,
                        c.p2
                    ))
                }
            }
        }
        for (p, q) in torus_listed(n, -4 * n, 4 * n) {
            match region.get(p, q) {
                Some(Verdict::Lspace) => listed += 1,
                Some(Verdict::Unsupported | Verdict::B1Positive) => {}
                v => {
                    return Err(format!(
                        "T(2,{}) ({p}, {q}) listed but classified {v:?}",
                        2 * n
                    ))
                }
            }
        }
    }
    Ok(format!(
        "{compared} cells agree, {listed} listed cells are L-spaces"
    ))
}

fn property_suites() -> Outcome {
    let run = |name: &str, result: Result<(), String>| result.map_err(|e| format!("{name}: {e}"));
    run(
        "zigzag",
        fixed_runner(500)
            .run(&zigzag_code(), |c| check_zigzag(&c))
            .map_err(|e| e.to_string()),
    )?;
    run(
        "square",
        fixed_runner(200)
            .run(&commuting_square(), |s| check_square(&s))
            .map_err(|e| e.to_string()),
    )?;
    let surgeons = corpus_surgeons();
    let mut framings = 0;
    for (s, sw) in &surgeons {
        for p1 in -6..=6 {
            for p2 in -6..=6 {
                run(
                    "stability",
                    check_stability(s, p1, p2).map_err(|e| e.to_string()),
                )?;
                run(
                    "structure",
                    check_structure(s, sw, p1, p2).map_err(|e| e.to_string()),
                )?;
                framings += 1;
            }
        }
        run("n-table", check_ntable(s.link()).map_err(|e| e.to_string()))?;
    }
    Ok(format!(
        "500 zigzags, 200 squares, {framings} framings on {} links",
        surgeons.len()
    ))
}

fn lens_spaces() -> Outcome {
    let hopf = Surgeon::new(corpus::hopf(), false).map_err(|e| e.to_string())?;
    let unlink = Surgeon::new(corpus::unlink(), false).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for p1 in -5..=5i64 {
        for p2 in -5..=5i64 {
            if p1 * p2 - 1 != 0 {
                let r = hopf.hf_hat(p1, p2).map_err(|e| e.to_string())?;
                if r.total as i64 != (p1 * p2 - 1).abs() {
                    return Err(format!("Hopf ({p1}, {p2}): total {}", r.total));
                }
                checked += 1;
            }
            if p1 * p2 != 0 {
                let r = unlink.hf_hat(p1, p2).map_err(|e| e.to_string())?;
                if r.total as i64 != (p1 * p2).abs() {
                    return Err(format!("unlink ({p1}, {p2}): total {}", r.total));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} framings"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "n-matrix reproduction, L_1..L_4, exact",
            1.0,
            nmatrix_reproduction,
        ),
        ("nu law, n <= 6, |s1| <= 10, exact", 1.0, nu_law),
        ("dimension law (2n-1)^2, n = 1..5", 10.0, dimension_law),
        (
            "Whitehead classification on [-10,10]^2",
            30.0,
            whitehead_classification,
        ),
        ("L7n2 obstruction witness", 0.1, l7n2_obstruction),
        ("T(2,2n) oracle agreement, n = 2..6", 300.0, torus_agreement),
        ("property suites", 120.0, property_suites),
        ("lens-space sanity, Hopf and unlink", 10.0, lens_spaces),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for (k, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let line = match outcome {
            Ok(detail) if took <= Duration::from_secs_f64(*limit) => {
                format!("PASS  criterion {}: {name}: {detail}", k + 1)
            }
            Ok(detail) => {
                failed += 1;
                format!(
                    "FAIL  criterion {}: {name}: {detail}, but over the time limit",
                    k + 1
                )
            }
            Err(e) => {
                failed += 1;
                format!("FAIL  criterion {}: {name}: {e}", k + 1)
            }
        };
        let _ = writeln!(out, "{line} [{:.3} s / {limit} s]", took.as_secs_f64());
    }
    let _ = writeln!(
        out,
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
