//! Byte-level regression of every scenario report against stored text.
//! Regenerate with `UPDATE_GOLDEN=1 cargo test --test golden`.

use std::path::PathBuf;

use riesz_core::convergence::Policy;
use riesz_core::scenarios::{list_scenarios, run_scenario, DEFAULT_SEED};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

#[test]
fn scenario_reports_match_fixtures() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut stale = Vec::new();
    for s in list_scenarios() {
        let text = run_scenario(s.name, &Policy::default(), DEFAULT_SEED).unwrap().to_text();
        let path = fixture(s.name);
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let stored = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if stored != text {
            stale.push(s.name);
        }
    }
    assert!(stale.is_empty(), "reports differ from fixtures: {stale:?}");
}

#[test]
fn reports_are_deterministic_across_execution_strategies() {
    use riesz_core::Execution;
    for s in list_scenarios() {
        let seq = Policy { exec: Execution::Sequential, ..Policy::default() };
        let par = Policy { exec: Execution::Parallel, ..Policy::default() };
        let a = run_scenario(s.name, &seq, DEFAULT_SEED).unwrap().to_text();
        let b = run_scenario(s.name, &par, DEFAULT_SEED).unwrap().to_text();
        assert_eq!(a, b, "{}", s.name);
    }
}
