use std::process::{Command, Output};

fn riesz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_restriction_prints_two() {
    let o = riesz(&["eval", "-p", "restrict(norm(sup),[2,2,2])", "-x", "[3,-1,0]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn eval_prints_rationals_as_fractions() {
    let o = riesz(&["eval", "-p", "norm(l1)", "-x", "[1/3, -1/6]"]);
    assert_eq!(stdout(&o), "1/2\n");
}

#[test]
fn unit_walk_is_refuted_in_norm() {
    let o = riesz(&["converge", "--net", "unitwalk", "--limit", "0", "--top", "tau(norm(sup))"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("aggregate: fail"));
}

#[test]
fn unit_walk_is_uo_null_in_c0() {
    let o = riesz(&[
        "converge",
        "--net",
        "unitwalk",
        "--limit",
        "0",
        "--kind",
        "uo",
        "--probes",
        "[{prefix=[], d=0, c=1}]",
        "--ambient",
        "c0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn scenario_json_round_trips() {
    let o = riesz(&["scenario", "run", "c0-uo-not-o", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["aggregate"], "match");
    for key in ["command", "config", "rows"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    for key in ["subject", "paper_ref", "expected", "computed", "status"] {
        assert!(value["rows"][0].get(key).is_some(), "missing row key {key}");
    }
    let report = riesz_core::report::Report::from_json(&text).unwrap();
    assert_eq!(format!("{}\n", report.to_json()), text);
}

#[test]
fn unreproduced_claim_exits_one() {
    let o = riesz(&["scenario", "run", "remark11-r2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("aggregate: claim_not_reproduced"));
}

#[test]
fn usage_and_syntax_errors_exit_three() {
    let cases: [&[&str]; 5] = [
        &["bogus"],
        &["eval", "-p", "norm(sup)", "-x", "[1, 1/0]"],
        &["eval", "-p", "usup(norm(sup), [])", "-x", "[1]"],
        &["scenario", "run", "no-such-scenario"],
        &["converge", "--net", "sin2d", "--limit", "[2,0]", "--top", "tau(norm(euclid))"],
    ];
    for args in cases {
        let o = riesz(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stderr(&o));
    }
    let o = riesz(&["eval", "-p", "usup(norm(sup), [])", "-x", "[1]"]);
    assert!(stderr(&o).contains("empty A generates discrete topology"));
    let o = riesz(&["eval", "-p", "norm(sup)", "-x", "[1, 1/0]"]);
    assert!(stderr(&o).contains("zero denominator"));
}

#[test]
fn float_mode_accepts_euclid() {
    let o = riesz(&["eval", "--mode", "float", "-p", "norm(euclid)", "-x", "[3,4]"]);
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn axioms_pass_for_a_restriction() {
    let o = riesz(&["axioms", "-p", "restrict(norm(l1),[1,2,3])", "--samples", "40", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let value: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(value["aggregate"], "pass");
    assert_eq!(value["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn compare_with_expectation() {
    let first = "u(tau(norm(sup), space=rn:2), AA=[[[1,1]]])";
    let second = "tau(norm(sup), space=rn:2)";
    let net = "scaled([1,1], rate=1/k) -> 0";
    let o = riesz(&["compare", "--first", first, "--second", second, "--net", net, "--expect", "coarser"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = riesz(&["compare", "--first", first, "--second", second, "--net", net, "--expect", "finer"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ideal_transfer_on_coordinates() {
    let o = riesz(&[
        "ideal",
        "--top",
        "tau(norm(sup))",
        "--gens",
        "[[1,0,0],[0,1,0]]",
        "--candidates",
        "[[2,3,0],[0,0,1]]",
        "--net",
        "scaled([1,1,0], rate=1/k) -> 0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[refusal]"));
}

#[test]
fn ideal_transfer_on_a_dual_pair() {
    let o = riesz(&[
        "ideal",
        "--pair",
        "pair(E=rn:2)",
        "--e0",
        "[[1,0]]",
        "--f0",
        "[[1,1]]",
        "--collection",
        "[[[1,1]]]",
        "--net",
        "scaled([1,0], rate=1/k) -> 0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("as-written") && text.contains("meet-a"));
}

#[test]
fn scenario_list_names_the_catalog() {
    let o = riesz(&["scenario", "list"]);
    assert_eq!(stdout(&o).lines().count(), 9);
}
