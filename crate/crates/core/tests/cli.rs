//! End-to-end checks of the verification front end: report contents, JSON
//! schema stability, exit codes, and the named-ideal parser.

use hmf5::cli::{self, Cli, Command, Output};
use hmf5::ideal_lab::Ambient;
use hmf5::report::Report;

fn base(command: Command) -> Cli {
    Cli { trace_bound: 10, output: Output::Text, deep: false, cache_dir: None, l_constants: None, command }
}

#[test]
fn identities_report_passes() {
    let rep = cli::identities_report();
    assert!(rep.all_passed());
    assert_eq!(rep.checks.len(), 2);
    assert!(rep.checks.iter().all(|c| c.detail.contains("IDENTITY VERIFIED")));
}

#[test]
fn derivations_report_passes() {
    let rep = cli::derivations_report(7).unwrap();
    assert!(rep.all_passed(), "{}", rep.render_text());
}

#[test]
fn structure_report_is_honest() {
    // the structure report includes two checks pinned to displayed constants
    // that the exact model contradicts; everything else passes
    let rep = cli::structure_report(7).unwrap();
    assert!(!rep.all_passed());
    let failed: Vec<&str> = rep
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    assert_eq!(
        failed,
        vec!["Klein with displayed λ = 484/49", "chi15 proportional to (√5/22)·[chi6,phi2,chi5]"]
    );
}

#[test]
fn exit_codes() {
    assert_eq!(cli::run(&base(Command::Identities)), 0);
    assert_eq!(cli::run(&base(Command::Classify)), 0);
    // structure carries the two honest failures → exit 1
    let mut cli_args = base(Command::Structure);
    cli_args.trace_bound = 6;
    assert_eq!(cli::run(&cli_args), 1);
    // configuration error → exit 2
    let mut bad = base(Command::Structure);
    bad.trace_bound = 3;
    assert_eq!(cli::run(&bad), 2);
    let bad_ideal = base(Command::Stability { ideal: Some("bogus(".into()), derivs: None });
    assert_eq!(cli::run(&bad_ideal), 2);
}

#[test]
fn json_reports_are_schema_stable() {
    let rep = cli::identities_report();
    let text = rep.render_json();
    let parsed: Report = serde_json::from_str(&text).expect("report JSON parses back");
    assert_eq!(parsed.command, "identities");
    assert_eq!(parsed.checks.len(), rep.checks.len());
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(value["checks"][0]["name"].is_string());
    assert!(value["checks"][0]["pass"].is_boolean());
    assert!(value["checks"][0]["detail"].is_string());
}

#[test]
fn ideal_parser() {
    let chi = cli::parse_ideal("chi").unwrap();
    assert_eq!(chi.ambient, Ambient::TStar);
    assert_eq!(chi.gens.len(), 1);
    let q = cli::parse_ideal("Q(1/800000, 1/800)").unwrap();
    assert_eq!(q.ambient, Ambient::TQuot);
    assert_eq!(q.gens.len(), 3);
    let custom = cli::parse_ideal("chi5^2; phi2^3 - 1050*chi6").unwrap();
    assert_eq!(custom.ambient, Ambient::TStar);
    assert_eq!(custom.gens.len(), 2);
    let quot = cli::parse_ideal("X; chi5").unwrap();
    assert_eq!(quot.ambient, Ambient::TQuot);
    assert!(cli::parse_ideal("P(1,").is_err());
    let derivs = cli::parse_derivations("dstar,e1, f2").unwrap();
    assert_eq!(derivs.len(), 3);
    assert!(cli::parse_derivations("dstar,zz").is_err());
}

#[test]
fn named_stability_query_runs() {
    let args = Cli {
        trace_bound: 6,
        output: Output::Text,
        deep: false,
        cache_dir: None,
        l_constants: None,
        command: Command::Stability { ideal: Some("chi5".into()), derivs: Some("estar".into()) },
    };
    assert_eq!(cli::run(&args), 0);
}

#[test]
fn l_constants_override_skips_calibration() {
    // with the measured constants supplied, the full-derivation instability of
    // (chi15) is decided without any Fourier work
    let lc = cli::parse_l_constants("14/5*s5, -16/5*s5, 22/5*s5").unwrap();
    let args = Cli {
        trace_bound: 10,
        output: Output::Text,
        deep: false,
        cache_dir: None,
        l_constants: Some("14/5*s5,-16/5*s5,22/5*s5".into()),
        command: Command::Stability { ideal: Some("chi15".into()), derivs: Some("d1,d2,e1,e2,f1,f2".into()) },
    };
    assert_eq!(cli::run(&args), 0);
    assert!(cli::parse_l_constants("1,2").is_err());
    drop(lc);
}

#[test]
fn fourier_dump_roundtrips_through_cache() {
    let dir = std::env::temp_dir().join(format!("hmf5-test-{}", std::process::id()));
    let args = Cli {
        trace_bound: 5,
        output: Output::Text,
        deep: false,
        cache_dir: Some(dir.clone()),
        l_constants: None,
        command: Command::FourierDump,
    };
    assert_eq!(cli::run(&args), 0);
    for name in ["phi2", "chi5", "chi6", "chi15", "constants"] {
        assert!(dir.join(format!("{name}.json")).exists(), "{name}.json missing");
    }
    // a second run must verify against the cached constants
    assert_eq!(cli::run(&args), 0);
    // the derivations command picks the coefficient cache up instead of
    // rebuilding, and still verifies everything
    let rep = cli::derivations_report_with_cache(5, Some(&dir)).unwrap();
    assert!(rep.all_passed(), "{}", rep.render_text());
    assert!(rep.checks.iter().any(|c| c.name == "coefficient cache"));
    std::fs::remove_dir_all(&dir).ok();
}
