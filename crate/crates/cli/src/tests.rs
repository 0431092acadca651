use num_bigint::BigInt;
use num_traits::Zero;

use crate::run;

struct Output {
    code: u8,
    stdout: String,
    stderr: String,
}

fn compgf(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("compgf").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn stdout(args: &[&str]) -> String {
    let out = compgf(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn int(s: &str) -> BigInt {
    s.trim().parse().unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["count", "not:ap:1:3", "10"]), "19\n");
    assert_eq!(
        stdout(&["series", "not:mod:3:0", "--limit", "7", "--format", "csv"]),
        "1,1,2,3,6,11,20,37\n"
    );
    assert_eq!(stdout(&["count", "set:", "5"]), "0\n");
    assert_eq!(stdout(&["table", "--mod3", "--limit", "1"]), "1,0,1,1\n");
}

#[test]
fn table_is_byte_identical_to_published_values() {
    let want = include_str!("../tests/data/mod3_table.csv");
    assert_eq!(stdout(&["table", "--mod3", "--limit", "20"]), want);
    let with_header = stdout(&["table", "--mod3", "--limit", "20", "--header"]);
    assert_eq!(with_header, format!("n,c31,c32,c30\n{want}"));
}

#[test]
fn exit_codes() {
    assert_eq!(compgf(&["count", "mod:3:5", "4"]).code, 2);
    assert_eq!(compgf(&["count", "not:", "4"]).code, 2);
    assert_eq!(compgf(&["frobnicate"]).code, 2);
    assert_eq!(compgf(&["table", "--limit", "3"]).code, 2);
    assert_eq!(compgf(&["closed-form", "all", "--digits", "5"]).code, 2);
    assert_eq!(compgf(&["verify", "thm2", "--k", "1"]).code, 2);
    let bad = compgf(&["count", "ap:0:3", "4"]);
    assert!(!bad.stderr.is_empty() && bad.stdout.is_empty());

    assert_eq!(compgf(&["verify", "thm2"]).code, 0);
    assert_eq!(compgf(&["verify", "thm3", "--k", "4", "--m", "3"]).code, 0);
    assert_eq!(compgf(&["verify", "thm3", "--k", "5", "--m", "2"]).code, 1);
}

#[test]
fn subcommands_agree_on_the_same_setspec() {
    for spec in ["not:ap:2:5", "mod:4:1,2", "ge:3", "not:set:2"] {
        let series: Vec<BigInt> = stdout(&["series", spec, "--limit", "30", "--format", "csv"])
            .trim()
            .split(',')
            .map(int)
            .collect();
        for n in [0usize, 1, 7, 30] {
            let n_s = n.to_string();
            assert_eq!(
                int(&stdout(&["count", spec, &n_s])),
                series[n],
                "{spec} {n}"
            );
            assert_eq!(int(&stdout(&["nth", spec, &n_s])), series[n]);
            let by_length: BigInt = stdout(&["bylength", spec, &n_s])
                .lines()
                .map(|l| int(l.split(',').nth(1).unwrap()))
                .sum();
            assert_eq!(by_length, series[n]);
        }
        let p = 1_000_000_007u32;
        let modded = int(&stdout(&["nth", spec, "30", "--mod", &p.to_string()]));
        assert_eq!(modded, &series[30] % BigInt::from(p));
    }
}

#[test]
fn recurrence_json_round_trips_through_nth() {
    let dir = std::env::temp_dir().join(format!("compgf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (i, spec) in ["not:mod:3:0", "not:ap:1:4"].iter().enumerate() {
        let json = stdout(&["recurrence", spec, "--format", "json"]);
        let file = dir.join(format!("rec{i}.json"));
        std::fs::write(&file, &json).unwrap();
        let file = file.to_str().unwrap();
        let counts: Vec<BigInt> = stdout(&["series", spec, "--limit", "100", "--format", "csv"])
            .trim()
            .split(',')
            .map(int)
            .collect();
        for (n, want) in counts.iter().enumerate() {
            let got = int(&stdout(&["nth", "--recurrence-file", file, &n.to_string()]));
            assert_eq!(&got, want, "{spec} n={n}");
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn recurrence_json_schema() {
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["recurrence", "not:mod:3:0"])).unwrap();
    let keys: Vec<&str> = json
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys, ["order", "coeffs", "corrections", "initial"]);
    assert_eq!(json["order"], 3);
}

#[test]
fn exact_values_print_in_full() {
    let big = stdout(&["count", "all", "400"]);
    assert_eq!(int(&big), BigInt::from(1) << 399usize);
    assert!(big.trim().bytes().all(|b| b.is_ascii_digit()));
    let json = stdout(&["series", "all", "--limit", "200", "--format", "json"]);
    assert!(json.contains(&(BigInt::from(1) << 199usize).to_string()));
}

#[test]
fn closed_form_output() {
    let text = stdout(&["closed-form", "not:ap:1:3"]);
    assert!(text.contains("0.657298106138"), "{text}");
    assert!(
        text.contains("-0.578649053069 + 0.652575763252 i"),
        "{text}"
    );
    assert!(text.contains("nearest_integer_valid false"));
    assert!(
        text.contains("poly_part [1/2]") && text.contains("residue_sum 0.500000000000 + 0 i"),
        "{text}"
    );
    let text = stdout(&["closed-form", "not:mod:3:0", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["dominance"]["nearest_integer_valid"], true);
    assert_eq!(json["poles"].as_array().unwrap().len(), 3);

    let eval = stdout(&["eval-closed", "not:mod:3:0", "20"]);
    assert!(eval.contains("rounded 101902"), "{eval}");
}

#[test]
fn verify_json_reports() {
    let text = stdout(&[
        "verify",
        "zeilberger",
        "--a",
        "2",
        "--b",
        "3",
        "--format",
        "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let report = &json[0];
    assert_eq!(report["passed"], true);
    assert_eq!(report["rows"].as_array().unwrap().len(), 25);

    let out = compgf(&["verify", "cayley", "--format", "json"]);
    assert_eq!(out.code, 0);
    let json: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(json[0]["findings"][0]["id"], "cayley-unshifted");
    assert!(json[0]["rows"][0]["lhs"].is_number());
}

#[test]
fn bylength_rows() {
    assert_eq!(
        stdout(&["bylength", "mod:2:1", "5"]),
        "1,1\n2,0\n3,3\n4,0\n5,1\n"
    );
    assert_eq!(stdout(&["bylength", "all", "0"]), "0,1\n");
    assert_eq!(
        stdout(&["bylength", "all", "4", "--format", "csv"]),
        "0,1,3,3,1\n"
    );
    let row = stdout(&["bylength", "ge:2", "6", "--format", "json"]);
    let row: Vec<BigInt> = serde_json::from_str::<Vec<serde_json::Value>>(&row)
        .unwrap()
        .iter()
        .map(|v| int(&v.to_string()))
        .collect();
    assert!(row[0].is_zero());
    assert_eq!(row.iter().sum::<BigInt>(), BigInt::from(5));
}

#[test]
fn help_goes_to_stdout() {
    let out = compgf(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("closed-form") && out.stderr.is_empty());
    let out = compgf(&["series"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("SETSPEC"), "{}", out.stderr);
}
