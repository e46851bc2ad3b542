//! Acceptance gate: one line per criterion, full desk-scale sizes.

use bmoment::models::Tolerances;
use bmoment::verify::{self, Check};

const SEED: u64 = 20_241_017;

// Tolerances are pinned here rather than read from the environment.
fn tol() -> Tolerances {
    let t = Tolerances::default();
    assert_eq!(t.weight, 1e-3);
    assert_eq!(t.hessian_step, 1e-4);
    assert_eq!(t.nullity, 1e-4);
    assert_eq!(t.vertex_match, 1e-6);
    assert_eq!(t.hull_delta, 0.05);
    assert_eq!(t.hausdorff, 0.05);
    assert_eq!(t.cut_slack, 1e-6);
    t
}

fn criteria() -> Vec<(u8, &'static str, Vec<Check>)> {
    let t = tol();
    let mut morse = verify::morse_bott_evenness(&t);
    morse.retain(|c| c.criterion == 8);
    vec![
        (1, "dichotomy", verify::dichotomy(100, SEED)),
        (2, "modular weight recovery", verify::weight_recovery(&t)),
        (3, "local model image", verify::local_model_image(10_000, SEED, &t)),
        (4, "convexity", verify::convexity(100_000, 1_000, 0.05, SEED, &t)),
        (5, "vertices are fixed points", verify::vertices_are_fixed_points(&t)),
        (6, "recession cones", verify::recession_cones()),
        (7, "zero-weight leaf image", verify::leaf_image(10_000, SEED, &t)),
        (8, "Morse-Bott evenness", morse),
        (9, "level connectedness", verify::level_connectedness(20, 200)),
        (10, "counterexample fidelity", vec![verify::counterexample(&t)]),
        (11, "symplectic cut", verify::cut(10_000, SEED, &t)),
        (12, "c-symplectic coexistence", verify::c_symplectic(&t)),
        (13, "oracle equivalence", verify::oracle_equivalence(50, SEED)),
    ]
}

#[test]
fn acceptance_criteria() {
    let mut failures = Vec::new();
    for (n, title, checks) in criteria() {
        let ok = !checks.is_empty() && checks.iter().all(|c| c.passed && c.criterion == n);
        let summary: Vec<String> = checks
            .iter()
            .map(|c| format!("{}={}", c.name, c.measured))
            .collect();
        println!("criterion {n:>2} {}: {title} [{}]", if ok { "PASS" } else { "FAIL" }, summary.join(", "));
        if !ok {
            for c in checks.iter().filter(|c| !c.passed) {
                println!("    failed {}: measured {} tolerance {} {}", c.name, c.measured, c.tolerance, c.detail);
            }
            failures.push(n);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
