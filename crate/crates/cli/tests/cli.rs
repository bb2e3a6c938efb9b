use std::fs;
use std::path::Path;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = armine_cli::run(
        std::iter::once("armine").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const SAMPLE: &str = "\
id,age,sex,outcome,fever,cough,apnea,rash
1,34,M,recovered,1,1,0,0
2,71,F,deceased,1,1,1,0
3,15,F,recovered,0,0,1,0
4,52,M,recovered,1,1,0,0
5,66,M,deceased,0,1,1,0
";

fn sample(dir: &Path) -> String {
    let p = dir.join("sample.csv");
    fs::write(&p, SAMPLE).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn freq_lists_items_by_count() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = cli(&["freq", "--input", &sample(dir.path())]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "item,count,fraction\ncough,4,0.8\nfever,3,0.6\napnea,3,0.6\nrash,0,0\n"
    );
}

#[test]
fn freq_respects_cohort() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = cli(&["freq", "--input", &sample(dir.path()), "--cohort", "deceased"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("item,count,fraction\ncough,2,1\napnea,2,1\n"), "{out}");
}

#[test]
fn select_prints_kept_symptoms() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = cli(&["select", "--input", &sample(dir.path())]);
    assert_eq!(code, 0);
    assert_eq!(out, "item\ncough\nfever\napnea\n");
}

#[test]
fn mine_markdown_shape() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = cli(&[
        "mine",
        "--input",
        &sample(dir.path()),
        "--min-support",
        "0.4",
        "--format",
        "md",
    ]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("| Antecedents | Consequents | Antecedent support"));
    assert!(lines[1].starts_with("| ----------- |"));
    assert!(lines.len() > 2);
    assert!(lines[2..].iter().all(|l| l.matches('|').count() == 9));
}

#[test]
fn mine_with_target_and_derived_items() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = cli(&[
        "mine",
        "--input",
        &sample(dir.path()),
        "--derive",
        "outcome",
        "--target",
        "Death",
        "--min-support",
        "0.2",
    ]);
    assert_eq!(code, 0, "{err}");
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert!(!rows.is_empty());
    assert!(
        rows.iter().all(|r| r.split(',').filter(|c| *c == "Death").count() == 1),
        "{out}"
    );
}

#[test]
fn mine_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("rules.json");
    let (code, out, _) = cli(&[
        "mine",
        "--input",
        &sample(dir.path()),
        "--format",
        "json",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let parsed: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert!(parsed.as_array().is_some_and(|a| !a.is_empty()));
}

#[test]
fn missing_input_is_a_data_error_naming_the_path() {
    let (code, out, err) = cli(&["mine", "--input", "/nonexistent/patients.csv"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("/nonexistent/patients.csv"), "{err}");
}

#[test]
fn malformed_cell_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.csv");
    fs::write(&p, "id,fever\n1,1\n2,yes\n").unwrap();
    let (code, _, err) = cli(&["freq", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.csv") && err.contains("fever"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["mine", "--input", "x.csv", "--min-support", "1.5"][..],
        &["mine", "--input", "x.csv", "--min-lift", "-1"],
        &["mine", "--input", "x.csv", "--cohort", "age:60-20"],
        &["mine", "--input", "x.csv", "--format", "xml"],
        &["mine"],
        &["frobnicate"],
        &["verify"],
    ] {
        let (code, _, err) = cli(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn cohort_without_outcome_column_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("plain.csv");
    fs::write(&p, "id,fever\n1,1\n").unwrap();
    let (code, _, err) = cli(&["freq", "--input", p.to_str().unwrap(), "--cohort", "deceased"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn synth_is_seeded() {
    let args = [
        "synth",
        "--n",
        "50",
        "--seed",
        "3",
        "--marginal",
        "fever:0.5",
        "--pair",
        "fever,cough:0.3",
        "--marginal",
        "cough:0.4",
    ];
    let (code, a, err) = cli(&args);
    assert_eq!(code, 0, "{err}");
    assert_eq!(a, cli(&args).1);
    assert_eq!(a.lines().next().unwrap(), "id,age,sex,outcome,fever,cough");
    assert_eq!(a.lines().count(), 51);
    let other = cli(&[
        "synth",
        "--n",
        "50",
        "--seed",
        "4",
        "--marginal",
        "fever:0.5",
        "--pair",
        "fever,cough:0.3",
        "--marginal",
        "cough:0.4",
    ])
    .1;
    assert_ne!(a, other);
}

#[test]
fn synth_rejects_impossible_pair() {
    let (code, _, err) = cli(&[
        "synth",
        "--marginal",
        "a:0.2",
        "--marginal",
        "b:0.3",
        "--pair",
        "a,b:0.25",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("Fréchet"), "{err}");
}

#[test]
fn verify_random_and_file() {
    let (code, out, err) = cli(&["verify", "--random", "25", "--seed", "9"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "random cases: 25, mismatches: 0\n");

    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = cli(&["verify", "--input", &sample(dir.path()), "--min-support", "0.2"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("frequent itemsets") && out.matches(" match").count() == 2,
        "{out}"
    );
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path());
    let cfg = dir.path().join("mine.conf");
    fs::write(
        &cfg,
        format!("# thresholds\ninput = {input}\nmin-support=0.4\nformat=md\nno-select=true\n"),
    )
    .unwrap();
    let (code, from_config, err) = cli(&["--config", cfg.to_str().unwrap(), "mine"]);
    assert_eq!(code, 0, "{err}");
    let (_, direct, _) = cli(&[
        "mine",
        "--input",
        &input,
        "--min-support",
        "0.4",
        "--format",
        "md",
        "--no-select",
    ]);
    assert_eq!(from_config, direct);

    // command-line flags override the file
    let (_, csv, _) = cli(&["mine", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert!(csv.starts_with("Antecedents,Consequents"), "{csv}");
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "min-suport=0.4\n").unwrap();
    let (code, _, err) = cli(&["--config", cfg.to_str().unwrap(), "mine"]);
    assert_eq!(code, 2);
    assert!(err.contains("min-suport"), "{err}");
}
