use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("locus").chain(args.iter().copied());
    let code = locus_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn volume_su5_exact() {
    let v = json(&["volume", "--series", "su", "--n", "5", "--exact", "--json"]);
    assert_eq!(v["result"]["exact"], "(512/9)·√5·π^14");
    assert!(v["result"].get("log_value").is_none());
    assert_eq!(v["provenance"]["version"], locus_cli::VERSION);
    let x = v["result"]["value"].as_f64().unwrap();
    assert!((x - 1.160407885641e9).abs() / x < 1e-10);
}

#[test]
fn volume_log_and_gamma() {
    let v = json(&[
        "volume", "--series", "d", "--n", "6", "--gamma", "2", "--log", "--format", "json",
    ]);
    assert_eq!(v["result"]["group"], "Spin(12)/Z2");
    assert!(v["result"].get("exact").is_none());
    let (code, _, err) = run(&["volume", "--series", "b", "--n", "3", "--gamma", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("error"));
}

#[test]
fn curvature_so8_chi() {
    let v = json(&[
        "curvature",
        "--series",
        "so",
        "--n",
        "8",
        "--report",
        "json",
    ]);
    assert_eq!(v["result"]["chi"].as_f64().unwrap(), 6.0);
    assert!(v["result"].get("killing_matrix").is_none());
}

#[test]
fn curvature_su_records_disagreement() {
    let v = json(&["curvature", "--series", "su", "--n", "4", "--json"]);
    assert_eq!(v["result"]["chi"].as_f64().unwrap(), 8.0);
    assert_eq!(v["result"]["comparison"]["agrees"], false);
}

#[test]
fn sample_is_deterministic() {
    let args = [
        "sample", "--series", "su", "--n", "10", "--count", "1000", "--r", "0.5", "--seed", "7",
        "--json",
    ];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let mut more = args.to_vec();
    more.extend(["--workers", "3"]);
    assert_eq!(run(&more).1, a);
}

#[test]
fn sample_histogram_csv() {
    let (code, out, _) = run(&[
        "sample", "--series", "su", "--n", "4", "--count", "500", "--seed", "1", "--hist", "ksi",
        "--bins", "20",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "lo,hi,count");
    assert_eq!(lines.len(), 21);
    let total: usize = lines[1..]
        .iter()
        .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 500);
}

#[test]
fn cpn_commands() {
    let v = json(&["cpn", "--n", "10", "band-mass", "--eps", "0.3", "--json"]);
    assert!((v["result"]["normalized_complement"].as_f64().unwrap() - 0.599).abs() < 1e-3);
    let v = json(&[
        "cpn",
        "--n",
        "2",
        "check-metric",
        "--points",
        "100",
        "--tol",
        "1e-8",
        "--json",
    ]);
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn roots_and_ratio_csv() {
    let v = json(&["roots", "--series", "a", "--n", "5", "--json"]);
    assert_eq!(v["result"]["positive_roots"].as_array().unwrap().len(), 10);
    let (code, out, _) = run(&[
        "ratio", "--series", "c", "--n", "5", "--to", "8", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "n,ratio,asymptote,quotient");
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn levy_runs() {
    let v = json(&[
        "levy", "--family", "so", "--from", "5", "--to", "30", "--json",
    ]);
    assert_eq!(v["result"]["check"]["holds"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["volume", "--series", "su"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(
        run(&["sample", "--series", "su", "--n", "3", "--r", "0.2"]).0,
        2
    );
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn computation_errors_exit_1() {
    assert_eq!(run(&["volume", "--series", "x", "--n", "3"]).0, 1);
    assert_eq!(
        run(&["sample", "--series", "so", "--n", "2", "--r", "0.2", "--seed", "1"]).0,
        1
    );
    assert_eq!(
        run(&["sample", "--series", "su", "--n", "3", "--r", "2.0", "--seed", "1"]).0,
        1
    );
}

#[test]
fn reproduce_quick_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, err) = run(&[
        "reproduce",
        "--quick",
        "--seed",
        "3",
        "--output",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0, "{err}{out}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let criteria = v["result"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 8);
    assert!(criteria.iter().all(|c| c["passed"] == true));
}
