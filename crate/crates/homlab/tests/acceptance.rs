//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//! Every criterion is exact-integer; a single violation fails the build.

use homlab::digraph::Digraph;
use homlab::verifier;

fn poset(n: usize, rel: &[(usize, usize)]) -> Digraph {
    let g = Digraph::from_arcs(n, rel)
        .unwrap()
        .transitive_hull()
        .with_all_loops();
    assert!(g.is_poset());
    g
}

fn run(criterion: &str, label: &str, id: &str, budget_secs: u64) {
    let started = std::time::Instant::now();
    let report = verifier::run_check(id, None).unwrap();
    let wall = started.elapsed();
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion} ({label}): {status} — violations={} instances={} wall={:.1}s",
        report.violations.len(),
        report.instances,
        wall.as_secs_f64()
    );
    assert!(
        report.passed(),
        "criterion {criterion} failed:\n{}",
        report.render()
    );
    assert!(report.instances > 0, "criterion {criterion} swept nothing");
    assert!(
        wall.as_secs() < budget_secs,
        "criterion {criterion} blew its {budget_secs}s budget: {wall:?}"
    );
}

#[test]
fn criterion_1_extension_counting_sweep() {
    run("1", "extension classes and totals", "eq45", 300);
}

#[test]
fn criterion_2_selecting_weights() {
    run("2", "selecting weight correctness", "selecting", 600);
}

#[test]
fn criterion_3_self_map_class_routes() {
    run("3", "membership route equivalence", "prop1", 600);
}

#[test]
fn criterion_4_exact_ratio() {
    // the hand-derived capsule instance: ratio one half, two strict maps,
    // four in the profile class
    let g = poset(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)]);
    let c3 = Digraph::chain(3);
    let phi = homlab::shells::phi(&g).unwrap();
    assert_eq!(phi.to_string(), "1/2");
    let strict = homlab::homs::enumerate_homs(&g, &c3, true).unwrap();
    assert_eq!(strict.len(), 2);
    let family = homlab::paths::top_path_family(&g).unwrap();
    let j = homlab::homs::j_class(&g, &c3, &strict[0], &c3, &family).unwrap();
    assert_eq!(j.len(), 4);

    run("4", "strict counts against profile classes", "thm7", 900);
}

#[test]
fn criterion_5_constructive_contrapositives() {
    let started = std::time::Instant::now();
    for id in ["thm5", "thm6", "thm8"] {
        let report = verifier::run_check(id, None).unwrap();
        assert!(
            report.passed(),
            "criterion 5 failed in {id}:\n{}",
            report.render()
        );
        assert!(report.instances > 0, "criterion 5 swept nothing in {id}");
        println!(
            "criterion 5 ({id} witnesses): PASS — violations=0 instances={}",
            report.instances
        );
    }
    let wall = started.elapsed();
    println!(
        "criterion 5 (constructive contrapositives): PASS — wall={:.1}s",
        wall.as_secs_f64()
    );
    assert!(wall.as_secs() < 1200, "criterion 5 blew its budget: {wall:?}");
}

#[test]
fn criterion_6_path_strictness_characterization() {
    run("6", "path-strictness equivalence", "prop2", 600);
}

#[test]
fn criterion_7_desk_scale_distinguishability() {
    run("7", "poset pairs distinguished by counts", "lovasz", 300);
}

#[test]
fn criterion_8_engine_oracle() {
    run("8", "engine versus naive filter", "engine", 60);
}
