//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use corona_spectra::closed_form::predict_spectrum;
use corona_spectra::graph::IntMatrix;
use corona_spectra::spectra::{a_alpha_energy, adjacency_matrix, line_graph_spectrum_regular};
use corona_spectra::{
    a_alpha_matrix, build_cospectral_pair, compose, generate, known_regular_cospectral_pair,
    spectra_equal, sym_eigenvalues, verify_prediction, Alpha, CoronaKind, FamilyKind, Graph,
    NamedGraph, RegularSpec, VerifyMode,
};

const IDENTITY_TOL: f64 = 1e-9;
const LINE_GRAPH_TOL: f64 = 1e-8;
const CHARPOLY_TOL: f64 = 1e-6;
const SPECTRUM_TOL: f64 = 1e-6;
const SEED_TOL: f64 = 1e-8;
const CERTIFICATE_TOL: f64 = 1e-6;
const FAMILY_MATCH_TOL: f64 = 1e-6;

const FULL_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const SAMPLE_GRID: [f64; 4] = [0.0, 0.3, 0.7, 1.0];

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    match failures.first() {
        None => Outcome {
            passed: true,
            detail: summary,
        },
        Some(first) => Outcome {
            passed: false,
            detail: format!("{} failure(s), first: {first}", failures.len()),
        },
    }
}

fn g(spec: &str) -> Graph {
    generate(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn alphas(values: &[f64]) -> Vec<Alpha> {
    values.iter().map(|&a| Alpha::new(a).unwrap()).collect()
}

fn identity_suite() -> Outcome {
    let corpus = [
        "cycle:3",
        "cycle:4",
        "cycle:5",
        "cycle:6",
        "complete:4",
        "petersen",
        "path:3",
        "path:5",
    ];
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for spec in corpus {
        let graph = g(spec);
        let r = graph.incidence_matrix();
        let rrt = r.mul(&r.transpose()).unwrap();
        if rrt
            != graph
                .adjacency_matrix()
                .add(&graph.degree_matrix())
                .unwrap()
        {
            failures.push(format!("{spec}: R R^T != A + D"));
        }
        let rtr = r.transpose().mul(&r).unwrap();
        let b_plus = graph
            .line_graph()
            .adjacency_matrix()
            .add(&IntMatrix::identity(graph.size()).scale(2))
            .unwrap();
        if rtr != b_plus {
            failures.push(format!("{spec}: R^T R != B + 2I"));
        }
        let Some(deg) = graph.regular_degree() else {
            continue;
        };
        let adj = sym_eigenvalues(&adjacency_matrix(&graph)).unwrap();
        let e0 = a_alpha_energy(&graph, Alpha::new(0.0).unwrap()).unwrap();
        for alpha in alphas(&FULL_GRID) {
            let aa = sym_eigenvalues(&a_alpha_matrix(&graph, alpha)).unwrap();
            for (x, y) in adj.eigenvalues().iter().zip(aa.eigenvalues()) {
                let dev = (alpha.value() * deg as f64 + alpha.complement() * x - y).abs();
                worst = worst.max(dev);
                if dev > IDENTITY_TOL {
                    failures.push(format!(
                        "{spec} α={}: shift deviation {dev:e}",
                        alpha.value()
                    ));
                }
            }
            let dev = (a_alpha_energy(&graph, alpha).unwrap() - alpha.complement() * e0).abs();
            worst = worst.max(dev);
            if dev > IDENTITY_TOL {
                failures.push(format!(
                    "{spec} α={}: energy deviation {dev:e}",
                    alpha.value()
                ));
            }
        }
    }
    outcome(failures, format!("8 graphs, max deviation {worst:.1e}"))
}

fn line_graph_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for spec in ["cycle:4", "complete:4", "petersen"] {
        let graph = g(spec);
        let own = sym_eigenvalues(&adjacency_matrix(&graph)).unwrap();
        let predicted = line_graph_spectrum_regular(
            &own,
            graph.order(),
            graph.size(),
            graph.regular_degree().unwrap(),
        )
        .unwrap();
        let oracle = sym_eigenvalues(&adjacency_matrix(&graph.line_graph())).unwrap();
        let dev = predicted.max_deviation(&oracle).unwrap_or(f64::INFINITY);
        worst = worst.max(dev);
        if dev > LINE_GRAPH_TOL {
            failures.push(format!("{spec}: {dev:e}"));
        }
    }
    outcome(failures, format!("max deviation {worst:.1e}"))
}

fn charpoly_suite() -> Outcome {
    let pairs = [
        ("cycle:4", "complete:2"),
        ("complete:4", "complete:2"),
        ("cycle:4", "path:3"),
        ("petersen", "complete:3"),
    ];
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut cells = 0;
    for kind in CoronaKind::CLOSED_FORM {
        for (s1, s2) in pairs {
            let report = match verify_prediction(
                kind,
                &g(s1),
                &g(s2),
                &alphas(&SAMPLE_GRID),
                CHARPOLY_TOL,
                VerifyMode::Charpoly,
            ) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{kind} ({s1}, {s2}): {e}"));
                    continue;
                }
            };
            cells += report.cells.len();
            worst = worst.max(report.max_deviation.unwrap_or(f64::INFINITY));
            if !report.passed {
                failures.push(format!(
                    "{kind} ({s1}, {s2}): max deviation {:?}",
                    report.max_deviation
                ));
            }
        }
    }
    outcome(
        failures,
        format!("{cells} cells x 10 samples, max relative deviation {worst:.1e}"),
    )
}

/// Fixed families required by the closed forms, as (kind, value, multiplicity).
fn required_families(
    kind: CoronaKind,
    g1: &RegularSpec,
    g2: &RegularSpec,
    alpha: f64,
) -> Vec<(FamilyKind, Option<f64>, usize)> {
    let (n1, m1, r1, n2) = (g1.order(), g1.size(), g1.degree() as f64, g2.order());
    let copies = if kind == CoronaKind::QEdge { m1 } else { n1 };
    let mut out = vec![(FamilyKind::CopySpectrum, None, copies * (n2 - 1))];
    match kind {
        CoronaKind::Total | CoronaKind::QVertex => {
            out.push((
                FamilyKind::IncidenceKernel,
                Some(2.0 * (alpha * r1 - 1.0 + alpha)),
                m1.saturating_sub(n1),
            ));
        }
        CoronaKind::QEdge => {
            out.push((
                FamilyKind::MatchingDeficit,
                Some(alpha * r1),
                n1.saturating_sub(m1),
            ));
        }
        _ => {}
    }
    out
}

fn spectrum_suite() -> Outcome {
    let pairs = [
        ("cycle:4", "complete:2"),
        ("cycle:5", "complete:3"),
        ("complete:4", "complete:2"),
        ("petersen", "complete:2"),
    ];
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut cells = 0;
    for kind in CoronaKind::CLOSED_FORM {
        for (s1, s2) in pairs {
            let (g1, g2) = (g(s1), g(s2));
            let (spec1, spec2) = (
                RegularSpec::from_graph(&g1).unwrap(),
                RegularSpec::from_graph(&g2).unwrap(),
            );
            let (composite, _) = compose(kind, &g1, &g2).unwrap();
            for alpha in alphas(&SAMPLE_GRID) {
                cells += 1;
                let here = format!("{kind} ({s1}, {s2}) α={}", alpha.value());
                let report = match predict_spectrum(kind, &spec1, &spec2, alpha) {
                    Ok(r) => r,
                    Err(e) => {
                        failures.push(format!("{here}: {e}"));
                        continue;
                    }
                };
                let oracle = sym_eigenvalues(&a_alpha_matrix(&composite, alpha)).unwrap();
                let dev = report.total.max_deviation(&oracle).unwrap_or(f64::INFINITY);
                worst = worst.max(dev);
                if dev > SPECTRUM_TOL {
                    failures.push(format!("{here}: spectrum deviation {dev:e}"));
                }
                for (fk, value, count) in required_families(kind, &spec1, &spec2, alpha.value()) {
                    let got = report.family(&fk).map_or(0, |f| f.count());
                    if got != count {
                        failures.push(format!("{here}: {fk:?} has {got} values, expected {count}"));
                        continue;
                    }
                    if let (Some(v), Some(f)) = (value, report.family(&fk)) {
                        if count > 0 && f.values.iter().any(|x| (x - v).abs() > FAMILY_MATCH_TOL) {
                            failures.push(format!(
                                "{here}: {fk:?} values {:?}, expected {v}",
                                f.values
                            ));
                        }
                        if oracle.count_near(v, FAMILY_MATCH_TOL) < count {
                            failures.push(format!("{here}: oracle lacks {v} x{count}"));
                        }
                    }
                }
            }
        }
    }
    outcome(
        failures,
        format!("{cells} cells, max deviation {worst:.1e}"),
    )
}

fn certificate_suite() -> Outcome {
    let mut failures = Vec::new();
    let (a, b) = match known_regular_cospectral_pair("shrikhande_rook4") {
        Ok(pair) => pair,
        Err(e) => return outcome(vec![e.to_string()], String::new()),
    };
    let mut expected = vec![6.0];
    expected.extend([2.0; 6]);
    expected.extend([-2.0; 9]);
    let expected = corona_spectra::Spectrum::from_values(expected);
    for seed in [&a, &b] {
        let s = sym_eigenvalues(&adjacency_matrix(&seed.graph)).unwrap();
        let (ok, dev) = spectra_equal(&s, &expected, SEED_TOL);
        if !ok {
            failures.push(format!("{}: spectrum off by {dev:e}", seed.name));
        }
    }
    let mut worst = 0.0f64;
    let mut largest = 0;
    for kind in CoronaKind::CLOSED_FORM {
        for h in ["complete:2", "path:3"] {
            let h = NamedGraph::generate(h).unwrap();
            largest = largest.max(compose(kind, &a.graph, &h.graph).unwrap().0.order());
            match build_cospectral_pair(kind, (&a, &b), &h, &alphas(&FULL_GRID), CERTIFICATE_TOL) {
                Ok(cert) => {
                    worst = worst.max(cert.max_deviation);
                    if !cert.passed {
                        failures.push(format!(
                            "{kind} with {}: deviation {:e}",
                            h.name, cert.max_deviation
                        ));
                    }
                    if !cert.non_regular {
                        failures.push(format!("{kind} with {}: composites are regular", h.name));
                    }
                }
                Err(e) => failures.push(format!("{kind} with {}: {e}", h.name)),
            }
        }
    }
    outcome(
        failures,
        format!("12 certificates, max deviation {worst:.1e}, largest composite {largest} vertices"),
    )
}

fn small_composites() -> Outcome {
    let mut failures = Vec::new();
    for kind in [CoronaKind::QVertex, CoronaKind::QEdge] {
        let (c, _) = compose(kind, &g("cycle:4"), &g("complete:2")).unwrap();
        if (c.order(), c.size()) != (16, 24) {
            failures.push(format!(
                "{kind}: {} vertices, {} edges",
                c.order(),
                c.size()
            ));
        }
    }
    outcome(
        failures,
        "both composites have 16 vertices and 24 edges".into(),
    )
}

fn cli_goldens() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_corona-spectra");
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let run = |args: &[&str]| Command::new(bin).args(args).output().expect("binary runs");
    let mut failures = Vec::new();
    let goldens: [(&str, &[&str]); 3] = [
        (
            "spectrum_cycle4_alpha0.json",
            &["spectrum", "--graph", "cycle:4", "--alpha", "0"],
        ),
        (
            "verify_qvertex_cycle4_complete2.json",
            &[
                "verify",
                "--kind",
                "q-vertex",
                "--g1",
                "cycle:4",
                "--g2",
                "complete:2",
                "--alpha-grid",
                "0,0.5,1",
            ],
        ),
        (
            "energy_cycle4_alpha05.json",
            &["energy", "--graph", "cycle:4", "--alpha", "0.5"],
        ),
    ];
    for (file, args) in goldens {
        let out = run(args);
        let want = std::fs::read(golden_dir.join(file)).unwrap();
        if out.status.code() != Some(0) || out.stdout != want {
            failures.push(format!("{file}: output or exit status differs"));
        }
    }
    let exits: [(&[&str], i32); 4] = [
        (
            &[
                "verify",
                "--kind",
                "total",
                "--g1",
                "cycle:5",
                "--g2",
                "complete:3",
                "--tol",
                "1e-300",
            ],
            1,
        ),
        (
            &[
                "predict",
                "--kind",
                "total",
                "--g1",
                "cycle:4",
                "--g2",
                "complete:2",
                "--alpha",
                "1.5",
            ],
            2,
        ),
        (&["spectrum", "--graph", "hypercube:3"], 2),
        (&["spectrum", "--graph", "@/nonexistent/edges.txt"], 3),
    ];
    for (args, code) in exits {
        let got = run(args).status.code();
        if got != Some(code) {
            failures.push(format!("{args:?}: exit {got:?}, expected {code}"));
        }
    }
    outcome(
        failures,
        "3 goldens byte-identical, exit codes 0/1/2/3 honoured".into(),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("identity suite", identity_suite, Duration::from_secs(5)),
        (
            "line-graph spectra",
            line_graph_suite,
            Duration::from_secs(5),
        ),
        (
            "factorised characteristic polynomials",
            charpoly_suite,
            Duration::from_secs(30),
        ),
        (
            "closed-form spectra and fixed families",
            spectrum_suite,
            Duration::from_secs(60),
        ),
        (
            "cospectral certificates",
            certificate_suite,
            Duration::from_secs(60),
        ),
        (
            "C4 with K2 composites",
            small_composites,
            Duration::from_secs(5),
        ),
        (
            "CLI goldens and exit codes",
            cli_goldens,
            Duration::from_secs(30),
        ),
    ];
    let mut all = true;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if elapsed > limit {
            result.passed = false;
            result.detail = format!("{} (exceeded {:?} limit)", result.detail, limit);
        }
        all &= result.passed;
        println!(
            "{} criterion {}: {name}: {} [{:.2}s]",
            if result.passed { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
