//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria 2 to 6 share a single exhaustive sweep over in-model unicyclic, infinity-type and
//! theta-type graphs with n <= 8 (a few minutes in release mode). Two criteria fail on that
//! corpus for mathematical reasons; they are listed in `KNOWN_FAILURES` with the reason. The
//! process exits nonzero if any other criterion fails, or if a known failure stops failing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tricolor::exact::{GaussianRational, Matrix};
use tricolor::generators::{ColoringMode, Family, GreenOrientation};
use tricolor::graph::{classify_shape, parse_graph, ShapeClass};
use tricolor::report::{classify, ReportOptions};
use tricolor::verify::{verify, Check, SweepSpec, VerifyReport};

const GOLDEN_THETA: &str = "n=6\n1 2 r\n2 3 r\n4 3 g\n4 1 r\n1 6 r\n2 5 r\n5 6 r\n";

/// The known inverse of the six-vertex golden theta graph, row by row.
const GOLDEN_THETA_INVERSE: [[&str; 6]; 6] = [
    ["0+0*i", "0-1*i", "0+0*i", "1+0*i", "0+0*i", "0+1*i"],
    ["0+1*i", "0+0*i", "1+0*i", "0+0*i", "0-1*i", "0+0*i"],
    ["0+0*i", "1+0*i", "0+0*i", "0+0*i", "0+0*i", "-1+0*i"],
    ["1+0*i", "0+0*i", "0+0*i", "0+0*i", "-1+0*i", "0+0*i"],
    ["0+0*i", "0+1*i", "0+0*i", "-1+0*i", "0+0*i", "1-1*i"],
    ["0-1*i", "0+0*i", "-1+0*i", "0+0*i", "1+1*i", "0+0*i"],
];

const CORPUS_MAX_N: usize = 8;

const KNOWN_FAILURES: [(u8, &str); 2] = [
    (
        3,
        "the 3-colored-inverse procedure (unique perfect matching and no cycle with exactly two pegs => \
         inverse entries in {0,±1,±i}) is wrong on theta graphs of order 8: two mm-alternating paths can \
         share matched edges, so their symmetric difference is a cycle with four pegs and the entry is ±2 or ±2i",
    ),
    (
        4,
        "the peg parity law as stated (every perfect matching, matched chords counted) fails already on the \
         six-vertex golden theta graph; the parity of the pegs that leave a cycle, and independence of an even cycle as \
         'peg-free for some perfect matching', hold on every instance",
    ),
];

struct Outcome {
    passed: bool,
    summary: String,
    notes: Vec<String>,
}

fn golden() -> Outcome {
    let start = Instant::now();
    let g = parse_graph(GOLDEN_THETA).expect("valid graph");
    let report = classify(&g, ReportOptions { inverse: true, timing: false }).expect("analyzable");
    let elapsed = start.elapsed();
    let expected = Matrix::from_rows(
        GOLDEN_THETA_INVERSE
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<GaussianRational>().expect("entry")).collect())
            .collect(),
    )
    .expect("square");
    let inverse = report.inverse.as_ref().map(|i| &i.combinatorial);
    let mut notes = Vec::new();
    let det_ok = report.det.combinatorial == -1 && report.det.exact == "-1+0*i";
    let inverse_ok = inverse == Some(&expected) && report.inverse.as_ref().is_some_and(|i| i.agrees_with_exact);
    let diagonal_ok = inverse.is_some_and(|m| m.diagonal().all(GaussianRational::is_zero));
    let fast = elapsed < Duration::from_secs(1);
    if !inverse_ok {
        notes.push(format!("computed inverse:\n{}", inverse.map_or("none".into(), |m| m.to_string())));
    }
    let entries = inverse.map_or(String::new(), |m| format!("b36={} b56={} b65={}", m[(2, 5)], m[(4, 5)], m[(5, 4)]));
    Outcome {
        passed: det_ok && inverse_ok && diagonal_ok && fast && classify_shape(&g) == ShapeClass::BicyclicTheta,
        summary: format!("det={} {entries} zero diagonal {diagonal_ok}, {:.1?}", report.det.combinatorial, elapsed),
        notes,
    }
}

fn tally_line(report: &VerifyReport, check: Check) -> (bool, String) {
    let t = report.tally(check);
    let ok = t.violations == 0 && t.applicable > 0;
    let mut line = format!("{}: {} applicable, {} violations", check.name(), t.applicable, t.violations);
    if let Some(v) = &t.first_violation {
        line.push_str(&format!("; first {} n={} #{}: {}", v.instance.family, v.instance.n, v.instance.index, v.detail));
        line.push_str(&format!(" [{}]", v.instance.graph.trim_end().replace('\n', "; ")));
    }
    (ok, line)
}

fn checks(report: &VerifyReport, list: &[Check], extra: Option<(bool, String)>) -> Outcome {
    let mut passed = true;
    let mut notes = Vec::new();
    for &c in list {
        let (ok, line) = tally_line(report, c);
        passed &= ok;
        notes.push(line);
    }
    if let Some((ok, line)) = extra {
        passed &= ok;
        notes.push(line);
    }
    let violations: u64 = list.iter().map(|&c| report.tally(c).violations).sum();
    Outcome { passed, summary: format!("{} checks, {violations} violations", list.len()), notes }
}

fn corpus() -> VerifyReport {
    let spec = SweepSpec::new(
        Family::ALL.to_vec(),
        CORPUS_MAX_N,
        ColoringMode::Exhaustive { green: GreenOrientation::Canonical },
    );
    verify(spec).expect("corpus within limits")
}

fn main() -> ExitCode {
    // cargo passes libtest flags such as --quiet; nothing here is filterable
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    results.push((1, "golden six-vertex theta graph: determinant and inverse", golden()));

    let start = Instant::now();
    let report = corpus();
    let sweep_time = start.elapsed();
    let counts: Vec<String> = report
        .instances
        .iter()
        .map(|(f, per_n)| format!("{f} {}", per_n.values().sum::<u64>()))
        .collect();
    println!("corpus: {} instances ({}) in {:.0?}", report.total_instances, counts.join(", "), sweep_time);

    results.push((
        2,
        "combinatorial det and inverse equal the exact ones",
        checks(
            &report,
            &[
                Check::DetCombinatorialEqualsExact,
                Check::InverseCombinatorialEqualsExact,
                Check::InverseHermitianIdentity,
                Check::ConjugateOrientation,
            ],
            None,
        ),
    ));
    results.push((
        3,
        "predicates agree with the oracle; verify exits 0",
        checks(
            &report,
            &[
                Check::PredicateNonsingular,
                Check::PredicateZeroDiagonal,
                Check::PredicateUnimodular,
                Check::PredicateInverse3colored,
            ],
            Some((report.passed(), format!("verify counterexamples: {}", report.counterexamples))),
        ),
    ));
    let mut counts = checks(
        &report,
        &[
            Check::SpanningCountOneIndependent,
            Check::SpanningCountInfinityBothIndependent,
            Check::SpanningCountThetaAllIndependent,
            Check::SeveralMatchingsIffIndependentEvenCycle,
            Check::PegParityAsStated,
        ],
        None,
    );
    counts.notes.push(format!("(supplementary) {}", tally_line(&report, Check::OutgoingPegParity).1));
    results.push((4, "spanning counts 3/9/6, peg parity, several matchings iff independent even cycle", counts));
    results.push((
        5,
        "closed-form determinants",
        checks(
            &report,
            &[Check::OneIndependentCycleDet, Check::InfinityBothIndependentDet, Check::ThetaAllIndependentDet],
            None,
        ),
    ));
    results.push((6, "at most four mm-alternating paths", checks(&report, &[Check::MmAlternatingAtMostFour], None)));

    let mut unexpected = 0;
    for (id, title, outcome) in &results {
        let known = KNOWN_FAILURES.iter().find(|(k, _)| k == id).map(|(_, why)| *why);
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {id}: {status}  {title}  ({})", outcome.summary);
        for note in &outcome.notes {
            println!("    {note}");
        }
        match (outcome.passed, known) {
            (false, Some(why)) => println!("    known failure: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("    listed as a known failure but passed; update KNOWN_FAILURES");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    let passed = results.iter().filter(|r| r.2.passed).count();
    println!("acceptance: {passed}/{} criteria pass, {unexpected} unexpected", results.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
