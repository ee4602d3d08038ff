use std::io::Write;
use std::process::{Command, Output, Stdio};

use latpath::{CountReport, LatticePath};

fn latpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latpath"))
        .args(args)
        .env_remove("LATPATH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn validate_reports_witness() {
    let o = latpath(&["validate", "--r", "3", "--s", "2", "--n", "3", "ENENNNEEEEEENNE"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "ENENNNEEEEEENNE: invalid; violation (2,1) -> (8,5), ell=2; crossing check agrees\n"
    );

    let o = latpath(&["validate", "--r", "1", "--s", "1", "--n", "1", "EN"]);
    assert_eq!(stdout(&o), "EN: valid; crossing check agrees\n");

    let o = latpath(&[
        "validate", "--r", "1", "--s", "1", "--n", "2", "EENN", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let row: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(row["valid"], false);
    assert_eq!(row["violation"]["first"], serde_json::json!([1, 0]));
    assert_eq!(row["violation"]["ell"], 1);
}

#[test]
fn validate_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_latpath"))
        .args(["validate", "--r", "1", "--s", "1", "--n", "2", "--format", "csv", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"ENEN\nEENN\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "path,valid,first,second,ell,crossing_agrees\nENEN,true,,,,true\nEENN,false,1 0,2 1,1,true\n"
    );
}

#[test]
fn malformed_path_exits_one() {
    let o = latpath(&["validate", "--r", "3", "--s", "2", "--n", "3", "ENEZ"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("position 3"), "{}", stderr(&o));
}

#[test]
fn missing_flags_exit_one() {
    let o = latpath(&["count", "--r", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = latpath(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn count_report_formats() {
    let o = latpath(&["count", "--r", "3", "--s", "2", "--n", "2"]);
    assert_eq!(stdout(&o), "r=3 s=2 n=2 valid=100 total=210 formula=100 match=true\n");

    let o = latpath(&["count", "--r", "3", "--s", "2", "--n", "2", "--format", "json"]);
    let report: CountReport = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report.valid_count.to_string(), "100");
    assert!(report.matches);
    assert_eq!(
        stdout(&o),
        "{\"r\":3,\"s\":2,\"n\":2,\"valid\":100,\"total\":210,\"formula\":100,\"match\":true}\n"
    );

    let o = latpath(&[
        "count", "--r", "2", "--s", "3", "--n", "2", "--format", "csv", "--oracle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "r,s,n,valid,total,formula,match\n2,3,2,100,210,100,true\n");
}

#[test]
fn count_with_prefix() {
    let o = latpath(&["count", "--r", "3", "--s", "2", "--n", "2", "--prefix", "1"]);
    assert_eq!(stdout(&o), "r=3 s=2 n=2 a=1 count=30 formula=30 match=true\n");
    let o = latpath(&["count", "--r", "3", "--s", "3", "--n", "2", "--prefix", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn budget_limits_and_env_override() {
    let o = latpath(&["count", "--r", "3", "--s", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget of 24"));

    let o = Command::new(env!("CARGO_BIN_EXE_latpath"))
        .args(["count", "--r", "3", "--s", "2", "--n", "5"])
        .env("LATPATH_BUDGET", "25")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid=100000"));

    let o = latpath(&["enumerate", "--r", "1", "--s", "1", "--n", "3", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_lists_paths() {
    let o = latpath(&["enumerate", "--r", "1", "--s", "1", "--n", "2"]);
    assert_eq!(stdout(&o), "ENEN\nENNE\nNENE\nNNEE\n");
    let o = latpath(&["enumerate", "--r", "1", "--s", "1", "--n", "2", "--format", "json"]);
    let paths: Vec<LatticePath> = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(paths.len(), 4);
}

#[test]
fn phi_commands() {
    let o = latpath(&["phi", "--r", "2", "--s", "2", "--n", "3", "NENNNNEEENEE"]);
    assert_eq!(stdout(&o), "p1=NENE q=2,2:NNNEEENE\n");
    let o = latpath(&[
        "phi",
        "--r",
        "2",
        "--s",
        "2",
        "--n",
        "3",
        "NNNNNEEEEENE",
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&o), "{\"p1\":\"NENE\",\"q\":\"2,2:EENNNNEE\"}\n");

    let o = latpath(&["phi-inv", "--r", "2", "--s", "2", "--n", "3", "NENE", "2,2:EENNNNEE"]);
    assert_eq!(stdout(&o), "NNNNNEEEEENE\n");

    let o = latpath(&["phi", "--r", "2", "--s", "2", "--n", "3", "EEENNNNNNEEE"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid"), "{}", stderr(&o));

    let o = latpath(&["phi", "--r", "2", "--s", "3", "--n", "2", "NNNEENNNEE"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decompose_command() {
    let o = latpath(&["decompose", "--r", "2", "--s", "2", "--n", "1", "EENN"]);
    assert_eq!(stdout(&o), "[EENN]\n");

    let o = latpath(&[
        "decompose",
        "--r",
        "2",
        "--s",
        "2",
        "--n",
        "3",
        "NENNNNEEENEE",
        "--format",
        "json",
    ]);
    let factors: Vec<LatticePath> = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(factors.len(), 3);
    assert_eq!(factors[0].to_string(), "NENE");

    let mut args = vec!["decompose", "--r", "2", "--s", "2", "--n", "3", "--inverse"];
    let texts: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    args.extend(texts.iter().map(String::as_str));
    let o = latpath(&args);
    assert_eq!(stdout(&o), "NENNNNEEENEE\n");
}

#[test]
fn table_sweeps() {
    let o = latpath(&["table", "--r", "1..3", "--s", "2", "--n", "1..2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "r,s,n,valid,total,formula,match\n\
         1,2,1,3,3,3,true\n1,2,2,9,15,9,true\n\
         2,2,1,6,6,6,true\n2,2,2,36,70,36,true\n\
         3,2,1,10,10,10,true\n3,2,2,100,210,100,true\n"
    );

    let o = latpath(&["table", "--r", "1", "--s", "1", "--n", "3", "--format", "json"]);
    let rows: Vec<CountReport> = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(rows[0].valid_count.to_string(), "8");

    let o = latpath(&["table", "--r", "3", "--s", "2", "--n", "4..5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "r=3 s=2 n=4 valid=10000 total=125970 formula=10000 match=true\nr=3 s=2 n=5 skipped (over budget)\n"
    );
}

#[test]
fn selftest_passes() {
    let o = latpath(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--r", "2", "--s", "2", "--n", "2", "--format", "json"];
    assert_eq!(latpath(&args).stdout, latpath(&args).stdout);
}
