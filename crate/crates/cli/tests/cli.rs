use std::process::{Command, Output};

use deform_cli::{RunReport, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, SCHEMA_VERSION};

fn deform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deform")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> RunReport {
    serde_json::from_slice(&out.stdout).expect("stdout is a run report")
}

#[test]
fn weyl_product_of_q_and_p_from_both_engines() {
    let out = deform(&["star", "--lambda", "1/2", "--engine", "both", "q1", "p1"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let r = report(&out);
    assert_eq!(r.outputs["product"], "q1*p1 + 1/2*t");
    assert_eq!(r.outputs["equality"], true);
    assert!(r.passed);
    assert_eq!(r.schema_version, SCHEMA_VERSION);
}

#[test]
fn standard_and_anti_standard_orderings() {
    let product = |l: &str, u: &str, v: &str| report(&deform(&["star", "--lambda", l, u, v])).outputs["product"].clone();
    assert_eq!(product("0", "q1", "p1"), "q1*p1");
    assert_eq!(product("0", "p1", "q1"), "q1*p1 - t");
    assert_eq!(product("1", "q1", "p1"), "q1*p1 + t");
    assert_eq!(product("1", "p1", "q1"), "q1*p1");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = deform(&["star", "--bogus", "q1", "p1"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_polynomial_is_a_usage_error_with_a_report() {
    let out = deform(&["star", "q1 +* p1", "p1"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let r = report(&out);
    assert!(!r.passed);
    assert!(r.error.is_some());
}

#[test]
fn variable_outside_the_phase_space_is_rejected() {
    let out = deform(&["star", "--n", "1", "q2", "p1"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn json_report_round_trips() {
    let out = deform(&["smash", "--lhs", "q1 | p1", "--rhs", "q1 | 1", "--verify"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let r = report(&out);
    let again: RunReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
    assert!(r.report.checks.iter().any(|c| c.name == "associativity" && c.passed));
}

#[test]
fn config_hash_depends_on_arguments_only() {
    let a = report(&deform(&["star", "q1", "p1"]));
    let b = report(&deform(&["--format", "json", "star", "q1", "p1"]));
    let c = report(&deform(&["star", "--lambda", "0", "q1", "p1"]));
    assert_eq!(a.config_hash, b.config_hash);
    assert_ne!(a.config_hash, c.config_hash);
    assert_eq!(a.config_hash.len(), 64);
}

#[test]
fn text_format() {
    let out = deform(&["--format", "text", "star", "q1", "p1"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("PASS"));
    assert!(s.contains("product = q1*p1 + 1/2*t"));
}

#[test]
fn enveloping_algebra_from_bundled_file() {
    let out = deform(&["smash", "--algebra", "lie:axb.lie", "--lhs", "H", "--rhs", "E", "--verify"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert_eq!(report(&out).outputs["product"], "E*H");
}

#[test]
fn transported_product_on_abelian_group() {
    let out = deform(&["udf", "--group", "abelian:2", "--lhs", "w1^2", "--rhs", "w2"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let r = report(&out);
    assert_eq!(r.outputs["product"], "w1^2*w2 + w1*t");
    assert_eq!(r.outputs["poisson"], "(1)*∂w1∧∂w2");
}

#[test]
fn non_invariant_product_on_heisenberg_fails_its_checks() {
    let out = deform(&["udf", "--group", "heisenberg.grp", "--lhs", "w1", "--rhs", "w2"]);
    assert_eq!(out.status.code(), Some(EXIT_FAIL));
    let r = report(&out);
    assert!(!r.report.get("left_invariance").unwrap().passed);
}

#[test]
fn triple_pipeline_on_bundled_instance() {
    for action in ["validate", "extend", "diagnose", "weights", "build-s"] {
        let out = deform(&["triple", action, "diag_a_2a.triple"]);
        assert_eq!(out.status.code(), Some(EXIT_PASS), "{action}");
    }
    let r = report(&deform(&["triple", "twist", "diag_a_2a.triple"]));
    assert!(r.passed);
    assert_eq!(r.outputs["global_diffeo"], true);
    assert_eq!(r.outputs["phi"][0], "sinh(a1)");
}

#[test]
fn missing_triple_file_is_a_usage_error() {
    let out = deform(&["triple", "validate", "/nonexistent.triple"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn wkb_star_approaches_the_pointwise_product() {
    let out = deform(&["wkb", "star", "--hbar", "0.01", "--u", "gauss*(1+q)", "--v", "gauss*p", "--x0", "0.3,0.2"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let r = report(&out);
    let get = |n: &str| r.report.values.iter().find(|v| v.name == n).unwrap().value;
    assert!((get("re") - get("uv")).abs() < 0.02);
}

#[test]
fn verify_all_subset() {
    let out = deform(&["verify-all", "--only", "2,9"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let r = report(&out);
    assert_eq!(r.criteria.iter().map(|c| c.id).collect::<Vec<_>>(), vec![2, 9]);
    assert!(r.criteria.iter().all(|c| c.passed()));
}

#[test]
fn verify_all_rejects_unknown_criterion() {
    assert_eq!(deform(&["verify-all", "--only", "13"]).status.code(), Some(EXIT_USAGE));
}
