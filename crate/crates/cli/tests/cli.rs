use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(cache: &Path) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mu-cycles"));
    cmd.env("MU_CYCLES_CACHE", cache);
    cmd
}

fn run(cache: &Path, args: &[&str]) -> Output {
    bin(cache).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_formats() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let o = run(&cache, &["table", "nt", "--n", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0,1\n1,6\n2,6\n3,7\n4,2\n5,1\n6,1\n");
    let o = run(&cache, &["table", "nti", "--n", "2"]);
    assert_eq!(stdout(&o), "0\n");
    let o = run(&cache, &["table", "nm", "--n", "4", "--format", "json"]);
    assert_eq!(
        stdout(&o),
        "{\"statistic\":\"nm\",\"n\":4,\"coeffs\":[1,1,3,1]}\n"
    );
    let o = run(&cache, &["table", "nti", "--n", "6", "--format", "csv"]);
    assert!(stdout(&o).starts_with("0,0\n1,0\n2,0\n3,6\n4,13\n"));
    let o = run(&cache, &["table", "cnt", "--n", "3"]);
    assert_eq!(stdout(&o), "cyc=1: 1 + q\ncyc=2: 3\ncyc=3: 1\n");
}

#[test]
fn table_output_ignores_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let base = stdout(&run(&cache, &["table", "nt", "--n", "5", "--no-cache"]));
    let par = stdout(&run(
        &cache,
        &["table", "nt", "--n", "5", "--jobs", "4", "--no-cache"],
    ));
    assert_eq!(base, par);
}

#[test]
fn budget_refusals() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    for args in [
        &["table", "nt", "--n", "12"][..],
        &["table", "nt", "--n", "12", "--allow-large"],
        &["table", "nt", "--n", "12", "--jobs", "4"],
        &["table", "nm", "--n", "13", "--jobs", "4", "--allow-large"],
        &["table", "cnt", "--n", "9"],
    ] {
        let o = run(&cache, args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("refusing"));
    }
    assert_eq!(
        run(&cache, &["table", "nt", "--n", "0"]).status.code(),
        Some(2)
    );
    assert!(!cache.exists());
}

#[test]
fn cache_round_trip_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let first = stdout(&run(
        &cache,
        &["table", "nt", "--n", "6", "--format", "json"],
    ));
    let text = fs::read_to_string(&cache).unwrap();
    assert!(text.contains("\"nt/6\"") && text.contains("\"nti/6\""));
    let again = stdout(&run(
        &cache,
        &["table", "nt", "--n", "6", "--format", "json"],
    ));
    assert_eq!(first, again);
    let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1);

    let info = stdout(&run(&cache, &["cache", "info"]));
    assert!(info.contains("entries=3"));

    // a tampered entry is served from cache but caught by --no-cache
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    json["entries"]["nt/6"][0] = 2.into();
    fs::write(&cache, json.to_string()).unwrap();
    let served = stdout(&run(
        &cache,
        &["table", "nt", "--n", "6", "--format", "csv"],
    ));
    assert!(served.starts_with("0,2\n"));
    let o = run(&cache, &["table", "nt", "--n", "6", "--no-cache"]);
    assert_eq!(o.status.code(), Some(1));

    fs::write(&cache, text.replace("\"version\": 1", "\"version\": 99")).unwrap();
    let o = run(&cache, &["table", "nt", "--n", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("version"));

    fs::write(&cache, "{not json").unwrap();
    assert_eq!(
        run(&cache, &["table", "nt", "--n", "3"]).status.code(),
        Some(1)
    );

    let o = run(&cache, &["cache", "clear"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!cache.exists());
}

#[test]
fn cache_flag_overrides_env() {
    let dir = tempfile::tempdir().unwrap();
    let env_path = dir.path().join("env.json");
    let flag_path = dir.path().join("flag.json");
    let o = run(
        &env_path,
        &[
            "--cache",
            flag_path.to_str().unwrap(),
            "table",
            "nt",
            "--n",
            "4",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(flag_path.exists() && !env_path.exists());
}

#[test]
fn stat_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let o = stdout(&run(&cache, &["stat", "1,4,6,2,7,5,8,3"]));
    assert!(o.lines().any(|l| l == "NT=5"));
    let o = stdout(&run(&cache, &["stat", "4,6,7,8,3,5,1,2"]));
    assert!(o.contains("cycle=(1,2,4,6,7,8,3,5)\n"));
    assert!(o.contains("contraction=(1,3,5,2,4)\n"));
    let o = stdout(&run(&cache, &["stat", "1,8,7,6,5,11,4,3,10,2,9"]));
    assert!(o.contains("partition=(4,2,1)\n"));
    let o = stdout(&run(&cache, &["stat", "1,4,8,5,9,6,2,7,3"]));
    assert!(o.contains("charge_path=0,1,2,1,2,1,0,1,0\n"));
    assert!(o.contains("dyck=true\n"));
    assert_eq!(run(&cache, &["stat", "1,2,2"]).status.code(), Some(2));
    assert_eq!(run(&cache, &["stat", "1,x"]).status.code(), Some(2));
}

#[test]
fn construct_command() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let o = run(
        &cache,
        &["construct", "--partition", "3,3,2,1", "--n", "12"],
    );
    assert_eq!(stdout(&o), "1,8,7,6,5,4,12,11,3,10,2,9\n");
    let o = run(&cache, &["construct", "--partition", "", "--n", "6"]);
    assert_eq!(stdout(&o), "1,6,5,4,3,2\n");
    let o = run(&cache, &["construct", "--partition", "9", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not fit"));
    let o = run(
        &cache,
        &["construct", "--partition", "1,1", "--n", "5", "--trace"],
    );
    assert_eq!(
        stdout(&o),
        "C_3=1,3,2\nC_4=1,3,2,4\nC_5=1,3,2,5,4\n1,3,2,5,4\n"
    );
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let o = stdout(&run(&cache, &["plot", "nm", "--cycle", "1,4,5,3,8,7,2,6"]));
    assert_eq!(o.lines().count(), 8);
    assert_eq!(o.matches('#').count(), 11);
    let o = stdout(&run(&cache, &["plot", "nm", "--cycle", "1,3,2"]));
    assert_eq!(o, "...\n...\n...\n");
    let svg = dir.path().join("charge.svg");
    let o = run(
        &cache,
        &[
            "plot",
            "charge",
            "--perm",
            "1,4,8,5,9,6,2,7,3",
            "--format",
            "svg",
            "--out",
            svg.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    let again = stdout(&run(
        &cache,
        &[
            "plot",
            "charge",
            "--perm",
            "1,4,8,5,9,6,2,7,3",
            "--format",
            "svg",
        ],
    ));
    assert_eq!(text, again);
    assert_eq!(
        run(&cache, &["plot", "nm", "--perm", "1,2"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    let o = run(&cache, &["verify", "catalan", "--max-odd", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "CHECK catalan odd=3..9 dyck=3..9 PASS\n");
    let o = run(&cache, &["verify", "tables", "--max-n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&cache, &["verify", "all", "--max-n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout)
        .unwrap()
        .lines()
        .filter(|l| l.starts_with("CHECK"))
        .collect();
    assert_eq!(lines.len(), 14);
    assert!(lines.last().unwrap().ends_with("CONJECTURE-CONSISTENT"));
    let o = run(
        &cache,
        &[
            "verify",
            "conjecture",
            "--max-even",
            "8",
            "--format",
            "json",
        ],
    );
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json[0]["status"], "CONJECTURE-CONSISTENT");
    assert_eq!(run(&cache, &["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&cache, &["verify", "conjecture", "--max-even", "16"])
            .status
            .code(),
        Some(2)
    );
}
