use std::process::{Command, Output};

use fxi_cli::{run, CommandKind, Format, Options, ReportDoc, RunConfig};
use fxi_core::RationalValue;
use proptest::prelude::*;

fn fxi(args: &[&str]) -> Output {
    fxi_env(args, &[])
}

fn fxi_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fxi"));
    cmd.args(args).env_remove("FXI_CAPACITY");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> ReportDoc {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = fxi(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    ReportDoc::from_json(&stdout(&o)).unwrap()
}

fn r(s: &str) -> RationalValue {
    s.parse().unwrap()
}

fn config(kind: CommandKind, options: Options) -> RunConfig {
    RunConfig::from_options(kind, &options, None).unwrap()
}

#[test]
fn table_golden_csv() {
    let o = fxi(&["table", "--f", "x*y", "--p", "2", "--e", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "e,t,length,c_num,c_den\n2,0,7,7,4\n2,1,5,5,4\n2,2,3,3,4\n2,3,1,1,4\n"
    );
}

#[test]
fn table_linear_form_is_constant() {
    let o = fxi(&["table", "--f", "x", "--p", "3", "--e", "1"]);
    assert_eq!(
        stdout(&o),
        "e,t,length,c_num,c_den\n1,0,3,1,1\n1,1,3,1,1\n1,2,3,1,1\n"
    );
}

#[test]
fn table_range_covers_each_e() {
    let doc = json(&["table", "--f", "x*y", "--p", "2", "--e", "1..3"]);
    let es: Vec<u32> = doc.tables.iter().map(|t| t.e).collect();
    assert_eq!(es, [1, 2, 3]);
    assert_eq!(doc.metadata.e_range, Some([1, 3]));
    assert_eq!(doc.metadata.field, "F_p");
}

#[test]
fn unit_is_a_usage_error() {
    let o = fxi(&["table", "--f", "x+1", "--p", "2", "--e", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("f must lie in the maximal ideal"));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["table", "--f", "x*y", "--p", "4", "--e", "1"],
        vec!["table", "--f", "x*y", "--p", "2"],
        vec!["table", "--f", "x*", "--p", "2", "--e", "1"],
        vec!["pair", "--f", "x*y", "--p", "2", "--e", "1", "--t", "3/2"],
        vec!["pair", "--f", "x*y", "--p", "2", "--e", "1", "--t", "a/b"],
        vec!["table", "--f", "x*y", "--p", "2", "--e", "3..1"],
        vec![
            "table", "--f", "x*y", "--p", "2", "--e", "1", "--format", "dat",
        ],
        vec!["frobnicate"],
        vec![],
    ] {
        let o = fxi(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(fxi(&["--help"]).status.code(), Some(0));
    assert_eq!(fxi(&["--version"]).status.code(), Some(0));
}

#[test]
fn capacity_exceeded_exits_3() {
    let o = fxi(&["table", "--f", "x*y", "--p", "2", "--e", "13"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("capacity"));
    let o = fxi(&[
        "table",
        "--f",
        "x*y",
        "--p",
        "2",
        "--e",
        "3",
        "--capacity",
        "63",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = fxi_env(
        &["table", "--f", "x*y", "--p", "2", "--e", "3"],
        &[("FXI_CAPACITY", "63")],
    );
    assert_eq!(o.status.code(), Some(3));
    let o = fxi_env(
        &["table", "--f", "x*y", "--p", "2", "--e", "3"],
        &[("FXI_CAPACITY", "64")],
    );
    assert_eq!(o.status.code(), Some(0));
    let o = fxi_env(
        &["table", "--f", "x*y", "--p", "2", "--e", "3"],
        &[("FXI_CAPACITY", "many")],
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn xi_breakpoints_and_dat() {
    let o = fxi(&[
        "xi", "--f", "x*y", "--p", "2", "--e", "2", "--format", "dat",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let points: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(str::to_string)
        .collect();
    assert_eq!(
        points,
        [
            "0/1 7/4 1.75",
            "1/4 5/4 1.25",
            "1/2 3/4 0.75",
            "3/4 1/4 0.25",
            "1/1 1/4 0.25"
        ]
    );
    let doc = json(&["xi", "--f", "x*y", "--p", "2", "--e", "2"]);
    let expect: Vec<(RationalValue, RationalValue)> = [
        ("0", "7/4"),
        ("1/4", "5/4"),
        ("1/2", "3/4"),
        ("3/4", "1/4"),
        ("1", "1/4"),
    ]
    .iter()
    .map(|(x, y)| (r(x), r(y)))
    .collect();
    assert_eq!(doc.steps[0].breakpoints, expect);
    assert_eq!(doc.steps[0].integral, r("1"));
}

#[test]
fn xi_of_linear_form_is_one() {
    let doc = json(&["xi", "--f", "x", "--p", "3", "--e", "0..2"]);
    for step in &doc.steps {
        assert!(step.breakpoints.iter().all(|(_, y)| *y == r("1")));
    }
}

#[test]
fn xi_dat_files_and_brackets() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let doc = json(&[
        "xi",
        "--f",
        "x*y",
        "--p",
        "2",
        "--e",
        "1..3",
        "--alpha",
        "1/3",
        "--dat-dir",
        d,
    ]);
    for e in 1..=3 {
        let text = std::fs::read_to_string(dir.path().join(format!("xi_e{e}.dat"))).unwrap();
        let rows = text.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(rows, (1 << e) + 1);
        for l in text.lines().filter(|l| !l.starts_with('#')) {
            assert_eq!(l.split(' ').count(), 3);
        }
    }
    let b = doc.brackets.iter().find(|b| b.e == 3).unwrap();
    assert_eq!(b.lower_index, 3);
    assert_eq!(b.upper_index, Some(1));
    assert_eq!(b.lower, r("9/8"));
    assert_eq!(b.upper, Some(r("13/8")));
    let lowers: Vec<_> = doc.brackets.iter().map(|b| b.lower.clone()).collect();
    assert!(lowers.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn estimates_examples() {
    let doc = json(&["estimates", "--f", "x*y", "--p", "2", "--e", "3"]);
    let values = |i: usize| -> Vec<RationalValue> {
        doc.estimates[i]
            .values
            .iter()
            .map(|v| v.1.clone())
            .collect()
    };
    assert_eq!(values(0), [r("3/2"), r("7/4"), r("15/8")]);
    assert_eq!(values(1), [r("1/2"), r("1/4"), r("1/8")]);
    let fpt = doc.fpt.as_ref().unwrap();
    let fpts: Vec<_> = fpt.sequence.values.iter().map(|v| v.1.clone()).collect();
    assert_eq!(fpts, [r("1"), r("1"), r("1")]);
    assert_eq!(fpt.upper_bound, r("1"));

    let doc = json(&["estimates", "--f", "x", "--p", "2", "--e", "3"]);
    for seq in doc
        .estimates
        .iter()
        .chain([&doc.fpt.as_ref().unwrap().sequence])
    {
        assert!(seq.values.iter().all(|v| v.1 == r("1")));
    }

    let doc = json(&["estimates", "--f", "x^2+y^3", "--p", "5", "--e", "1"]);
    assert_eq!(doc.estimates[1].values, [(1, r("0"))]);
    assert_eq!(doc.fpt.as_ref().unwrap().upper_bound, r("4/5"));
    assert!(doc.fpt.as_ref().unwrap().caveat.is_none());
}

#[test]
fn pair_examples() {
    let doc = json(&[
        "pair", "--f", "x*y", "--p", "2", "--e", "3", "--t", "1/2,0,1",
    ]);
    let got: Vec<_> = doc
        .pairs
        .iter()
        .map(|p| (p.t.clone(), p.estimate.clone()))
        .collect();
    assert_eq!(
        got,
        [(r("1/2"), r("1/4")), (r("0"), r("1")), (r("1"), r("1/64"))]
    );
    assert_eq!(doc.pairs[0].one_minus_phi, r("1/4"));
    assert_eq!(doc.pairs[0].s.0, 4);
}

#[test]
fn monomial_examples() {
    let doc = json(&["monomial", "--exponents", "1,2,3", "--p", "2"]);
    let m = doc.monomial.unwrap();
    assert_eq!(m.xi_coefficients, ["6", "-22", "18"]);
    assert_eq!(m.betas, ["6", "11", "6"]);
    assert_eq!(m.fpt, r("1/3"));
    assert_eq!(m.left_limit, r("2/3"));
    assert_eq!(m.convergence_constant, "244");

    let m = json(&["monomial", "--f", "x*y", "--p", "3"])
        .monomial
        .unwrap();
    assert!(m.continuous);

    let m = json(&["monomial", "--exponents", "1,3", "--p", "2"])
        .monomial
        .unwrap();
    assert!(!m.limit_exists_at_fpt);
    assert_eq!(m.epsilon.cycle, [2, 1]);
    assert_eq!(m.limsup_at_fpt, r("4/3"));
    let m = json(&["monomial", "--exponents", "1,3", "--p", "7"])
        .monomial
        .unwrap();
    assert!(m.limit_exists_at_fpt);

    let o = fxi(&["monomial", "--f", "x+y", "--p", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = fxi(&["monomial", "--exponents", "0,0", "--p", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn monomial_dat_samples_polynomial() {
    let o = fxi(&[
        "monomial",
        "--exponents",
        "1,2,3",
        "--p",
        "2",
        "--format",
        "dat",
    ]);
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(' ').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 65);
    assert_eq!(rows[0], ["0/1", "6/1", "6"]);
    assert_eq!(rows[64][0], "1/3");
    assert_eq!(rows[64][1], "2/3");
    assert_eq!(rows[64][2], "0.66666666666666667");
}

#[test]
fn verify_single_polynomial_and_corruption() {
    let o = fxi(&["verify", "--f", "x^2+y^3", "--p", "3", "--e", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc = ReportDoc::from_json(&stdout(&o)).unwrap();
    assert!(doc.checks.iter().all(|c| c.passed()));
    assert_eq!(doc.checks.len(), 9);

    let o = fxi(&["verify", "--f", "x*y", "--p", "2", "--e", "3", "--corrupt"]);
    assert_eq!(o.status.code(), Some(2));
    let doc = ReportDoc::from_json(&stdout(&o)).unwrap();
    let failed: Vec<_> = doc
        .checks
        .iter()
        .filter(|c| c.failed())
        .map(|c| c.id.as_str())
        .collect();
    assert!(failed.contains(&"total-mass"));
    assert!(doc
        .checks
        .iter()
        .filter(|c| c.failed())
        .all(|c| c.witness.is_some()));
}

#[test]
fn verify_default_corpus_at_small_capacity() {
    let env = [("FXI_CAPACITY", "4096")];
    let o = fxi_env(&["verify"], &env);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc = ReportDoc::from_json(&stdout(&o)).unwrap();
    assert!(doc.checks.len() >= 12 * 9);
    assert!(doc.checks.iter().all(|c| c.passed()));
    let o = fxi_env(&["verify", "--corrupt"], &env);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_capacity_violation_is_skipped() {
    let o = fxi(&["verify", "--f", "x*y", "--p", "2", "--e", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("skipped"));
    let doc = ReportDoc::from_json(&stdout(&o)).unwrap();
    assert!(doc
        .checks
        .iter()
        .all(|c| c.status == fxi_core::CheckStatus::Skipped));
    assert!(doc.checks.iter().all(|c| c.witness.is_some()));
}

#[test]
fn bench_agreement_and_mismatch() {
    let doc = json(&["bench", "--f", "x*y", "--p", "2", "--e", "3"]);
    let names: Vec<_> = doc.bench.iter().map(|b| b.strategy.as_str()).collect();
    assert_eq!(names, ["graded", "incremental", "naive", "combinatorial"]);
    assert!(doc.bench.iter().all(|b| b.agrees && b.mu.0 == 8));

    let o = fxi(&[
        "bench", "--f", "x^2+y^3", "--p", "3", "--e", "2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("combinatorial counting strategy is skipped"));
    assert_eq!(ReportDoc::from_json(&stdout(&o)).unwrap().bench.len(), 3);

    let o = fxi(&["bench", "--f", "x*y", "--p", "2", "--e", "2", "--corrupt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_random_input_is_seeded() {
    let a = json(&["bench", "--p", "3", "--e", "1..2", "--seed", "11"]);
    let b = json(&["bench", "--p", "3", "--e", "1..2", "--seed", "11"]);
    assert_eq!(a.metadata.f, b.metadata.f);
    assert!(a.bench.iter().all(|r| r.agrees));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub/table.json");
    let o = fxi(&[
        "table",
        "--f",
        "x*y",
        "--p",
        "2",
        "--e",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let doc = ReportDoc::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(
        doc.tables[0]
            .lengths
            .iter()
            .map(|l| l.0)
            .collect::<Vec<_>>(),
        [7, 5, 3, 1]
    );
}

/// Numbers from the CSV and from the JSON of the same run, as canonical
/// strings.
fn csv_and_json_numbers(doc: &ReportDoc) -> (Vec<[String; 4]>, Vec<[String; 4]>) {
    let csv_text = doc.table_csv();
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let from_csv: Vec<[String; 4]> = reader
        .records()
        .map(|rec| {
            let rec = rec.unwrap();
            let c = RationalValue::new(
                rec[3].parse::<num_bigint::BigInt>().unwrap(),
                rec[4].parse::<num_bigint::BigInt>().unwrap(),
            );
            [
                rec[0].to_string(),
                rec[1].to_string(),
                rec[2].to_string(),
                c.to_string(),
            ]
        })
        .collect();
    let value: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
    let mut from_json = Vec::new();
    for table in value["tables"].as_array().unwrap() {
        let e = table["e"].to_string();
        let lengths = table["lengths"].as_array().unwrap();
        let cs = table["c"].as_array().unwrap();
        for (t, (l, c)) in lengths.iter().zip(cs).enumerate() {
            let l = match l {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let c: RationalValue = c.as_str().unwrap().parse().unwrap();
            from_json.push([e.clone(), t.to_string(), l, c.to_string()]);
        }
    }
    (from_csv, from_json)
}

#[test]
fn csv_and_json_agree_on_the_golden_table() {
    let o = Options {
        f: Some("x^2+y^3".into()),
        p: Some(5),
        e: Some("0..2".parse().unwrap()),
        ..Options::default()
    };
    let doc = run(&config(CommandKind::Table, o)).unwrap().doc;
    let (a, b) = csv_and_json_numbers(&doc);
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn long_csv_carries_the_json_values() {
    let o = Options {
        f: Some("x*y".into()),
        p: Some(2),
        e: Some("3".parse().unwrap()),
        t: vec![r("1/2")],
        format: Some(Format::Csv),
        ..Options::default()
    };
    let doc = run(&config(CommandKind::Pair, o)).unwrap().doc;
    let text = doc.long_csv();
    assert!(text.contains("pair,3,1/2,1/4"));
    assert!(text.contains("one-minus-phi,3,1/2,1/4"));
}

fn round_trip(kind: CommandKind, options: Options) {
    let outcome = run(&config(kind, options)).unwrap();
    let text = outcome.doc.to_json();
    let back = ReportDoc::from_json(&text).unwrap();
    assert_eq!(back, outcome.doc);
    assert_eq!(back.to_json(), text);
}

#[test]
fn every_command_round_trips() {
    let base = Options {
        f: Some("x^2+y^3".into()),
        p: Some(3),
        e: Some("1..2".parse().unwrap()),
        ..Options::default()
    };
    round_trip(CommandKind::Table, base.clone());
    round_trip(
        CommandKind::Xi,
        Options {
            alpha: vec![r("1/2"), r("2/3")],
            ..base.clone()
        },
    );
    round_trip(CommandKind::Estimates, base.clone());
    round_trip(
        CommandKind::Pair,
        Options {
            t: vec![r("0"), r("1/3"), r("1")],
            ..base.clone()
        },
    );
    round_trip(CommandKind::Verify, base.clone());
    round_trip(CommandKind::Bench, base.clone());
    round_trip(
        CommandKind::Monomial,
        Options {
            f: None,
            exponents: vec![2, 3, 5],
            ..base
        },
    );
}

#[test]
fn large_integers_are_strings_in_json() {
    let doc = ReportDoc {
        metadata: fxi_cli::report::Metadata {
            capacity: fxi_cli::JsonInt(u64::MAX),
            ..Default::default()
        },
        ..Default::default()
    };
    let text = doc.to_json();
    assert!(text.contains("\"capacity\": \"18446744073709551615\""));
    assert_eq!(ReportDoc::from_json(&text).unwrap(), doc);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_tables_round_trip_and_agree(
        exps in prop::collection::vec((0u32..4, 0u32..4), 1..4),
        p in prop::sample::select(vec![2u64, 3, 5]),
        e in 0u32..3,
    ) {
        let text: Vec<String> = exps
            .iter()
            .map(|&(a, b)| format!("x^{} * y^{}", a + 1, b))
            .collect();
        let o = Options {
            f: Some(text.join(" + ")),
            p: Some(p),
            e: Some(format!("0..{e}").parse().unwrap()),
            ..Options::default()
        };
        let doc = match run(&config(CommandKind::Table, o)) {
            Ok(out) => out.doc,
            Err(_) => return Ok(()),
        };
        let (a, b) = csv_and_json_numbers(&doc);
        prop_assert_eq!(a, b);
        let back = ReportDoc::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(back, doc);
    }
}
