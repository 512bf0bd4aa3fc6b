use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tjurina"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn germ_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const G: &str = "y^4-x^5+x^3*y^2";

#[test]
fn invariants_of_the_example_germ() {
    let v = json(&run(&["invariants", "--vars", "x,y", G]));
    assert_eq!((v["mu"].as_u64(), v["tau"].as_u64(), v["nu1"].as_u64(), v["ebs"].as_u64()), (Some(12), Some(11), Some(1), Some(2)));
    assert_eq!(v["quotient_mu_tau"], "12/11");
    let by_name = json(&run(&["invariants", "G"]));
    assert_eq!(by_name, v);
}

#[test]
fn invariants_csv_and_spectrum() {
    let o = run(&["invariants", "--vars", "x,y", "x^2+y^2", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("germ,arity,mu,tau,nu1,ebs,mu_over_tau,quasihomogeneous,alpha_min,verdict")
    );
    assert_eq!(lines.next(), Some("x^2 + y^2,2,1,1,0,1,1,true,1,equality-case"));
    let v = json(&run(&["invariants", "--vars", "x,y", "x^3+y^3"]));
    assert_eq!(v["qh_spectrum"], serde_json::json!(["2/3", "1", "1", "4/3"]));
    assert_eq!(v["alpha_min"], "2/3");
}

#[test]
fn exit_codes() {
    let smooth = run(&["invariants", "--vars", "x", "x"]);
    assert_eq!(smooth.status.code(), Some(2));
    assert!(stderr(&smooth).contains("smooth"));
    assert!(smooth.stdout.is_empty());
    assert_eq!(run(&["invariants", "--vars", "x", "x^2+"]).status.code(), Some(1));
    assert_eq!(run(&["invariants", "--vars", "x", "y^2"]).status.code(), Some(1));
    let nonisolated = run(&["invariants", "--vars", "x,y", "--max-degree-cap", "16", "x^2*y"]);
    assert_eq!(nonisolated.status.code(), Some(2));
    assert_eq!(run(&["invariants", "nosuchname"]).status.code(), Some(1));
    assert_eq!(run(&["--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let big = run(&["join", "--oracle", "--vars", "x,y,z", "x^2+y^2+z^2", "x^2+y^3+z^2"]);
    assert_eq!(big.status.code(), Some(0), "oracle is skipped above the arity limit");
}

#[test]
fn joins() {
    let v = json(&run(&["join", "G", "G"]));
    assert_eq!(v["tau_join_tensor"], 122);
    assert_eq!(v["theorem_residual"], 0);
    assert_eq!(v["rank_mode"], "exact");
    assert_eq!(v["dim_U"], 21);
    let v = json(&run(&["join", "--vars", "x", "x^2", "x^2"]));
    assert_eq!(v["tau_join_tensor"], 1);
    let v = json(&run(&["join", "--oracle", "--vars", "x,y", "--vars2", "z", G, "z^2"]));
    assert_eq!((v["tau_join_tensor"].as_u64(), v["tau_join_fullring"].as_u64()), (Some(11), Some(11)));
}

#[test]
fn triple_join_in_modular_mode() {
    let v = json(&run(&["join", "H", "G", "--mode", "modular", "--seed", "7"]));
    assert_eq!(v["tau_join_tensor"], 1363);
    assert_eq!(v["rank_mode"], "modular");
    assert_eq!(v["maximaltau"], serde_json::json!({"verdict": "holds", "tau": 1363}));
    assert_eq!(v["primes"].as_array().unwrap().len(), 3);
    assert_eq!(v["prime_ranks"], serde_json::json!([365, 365, 365]));
}

#[test]
fn verify_catalog_files() {
    let good = germ_file("A1 : x,y : x^2 + y^2 : mu=1 tau=1\nG : x,y : y^4 - x^5 + x^3*y^2 : mu=12 tau=11\n");
    let o = run(&["verify-catalog", good.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("subject,check,status,detail\n"));
    assert!(text.contains("G+G,join,ok,tau=122 mode=exact residual=0 b=0 u=0"));
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2) == Some("ok")));

    let bad = germ_file("G : x,y : y^4 - x^5 + x^3*y^2 : mu=12 tau=12\n");
    let o = run(&["verify-catalog", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("G,expectations,fail,\"tau: expected 12, got 11\""));

    let empty = germ_file("# nothing here\n");
    let o = run(&["verify-catalog", empty.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());

    let broken = germ_file("a : x : x^2\na : x : x^3\n");
    let o = run(&["verify-catalog", broken.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn family_scan_finds_the_example_germ() {
    let o = run(&["family-scan", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "deformation,mu,tau,mu_over_tau,minimal\n0,12,12,1,false\nx^3*y^2,12,11,12/11,true\n"
    );
    assert!(stderr(&o).contains("min tau 11"));
    let v = json(&run(&["family-scan", "5", "--max-terms", "1", "--json"]));
    assert_eq!((v["min_tau"].as_u64(), v["formula_attained"].as_bool()), (Some(18), Some(true)));
    assert_eq!(run(&["family-scan", "9"]).status.code(), Some(1));
    assert_eq!(run(&["family-scan", "4", "--max-terms", "3"]).status.code(), Some(1));
}

#[test]
fn quotient_report_rows() {
    let f = germ_file(
        "G : x,y : y^4 - x^5 + x^3*y^2\nE12 : x,y : x^3 + y^7\nH : x,y,z,w : y^4 - x^5 + x^3*y^2 + w^4 - z^5 + z^3*w^2\n",
    );
    let o = run(&["quotient-report", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "name,mu,tau,quotient,ebs,verdict\nG,12,11,12/11,2,ok\nE12,12,12,1,1,equality-case\nH,144,122,72/61,3,ok\n"
    );
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["invariants", "--vars", "x,y", "x^2*y+y^5"],
        vec!["join", "G", "E6"],
        vec!["family-scan", "4", "--json"],
    ] {
        let o = run(&args);
        let text = stdout(&o);
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap() + "\n", text, "{args:?}");
        assert_eq!(stdout(&run(&args)), text);
    }
    let o = run(&["family-scan", "5", "--max-terms", "1"]);
    let text = stdout(&o);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).unwrap();
    for r in reader.records() {
        w.write_record(&r.unwrap()).unwrap();
    }
    assert_eq!(String::from_utf8(w.into_inner().unwrap()).unwrap(), text);
}
