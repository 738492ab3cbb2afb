use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thorntree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

#[test]
fn stirling_table() {
    let o = run(&["table", "stirling", "5"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "k,value,provenance\n1,24,formula\n2,50,formula\n3,35,formula\n4,10,formula\n5,1,formula\n"
    );
}

#[test]
fn b_table_solver_and_oracle_agree() {
    let solver = run(&["table", "B", "3"]);
    assert_eq!(
        stdout(&solver),
        "partition,value,provenance\n3^1,1,solver\n1^1 2^1,0,solver\n1^3,1,solver\n"
    );
    let oracle = run(&["table", "B", "3", "--oracle"]);
    assert_eq!(stdout(&oracle), stdout(&solver).replace("solver", "oracle"));
}

#[test]
fn a_table_sums_to_factorial() {
    let v = json(&run(&["table", "A", "4", "--format", "json"]));
    let total: u64 = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 24);
}

#[test]
fn parity_filter() {
    let o = run(&["table", "B", "4", "--parity"]);
    assert_eq!(
        stdout(&o),
        "partition,value,provenance\n1^1 3^1,4,solver\n2^2,1,solver\n1^4,1,solver\n"
    );
}

#[test]
fn verify_suites_pass() {
    for (suite, n) in [
        ("zagier", "7"),
        ("reformulation", "6"),
        ("bijection", "5"),
        ("proportions", "5"),
        ("identities", "4"),
    ] {
        let o = run(&["verify", suite, n]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        let v = json(&o);
        assert_eq!(v["status"], "pass");
        assert!(!v["items"].as_array().unwrap().is_empty());
    }
    let v = json(&run(&["verify", "reformulation", "6"]));
    assert!(v["items"]
        .as_array()
        .unwrap()
        .iter()
        .any(|i| i["expected"] == "1/6"));
}

#[test]
fn refusals_exit_two() {
    let o = run(&["verify", "bijection", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["status"], "refused");
    let o = run(&["--budget", "7", "verify", "bijection", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        run(&["table", "ST", "9", "--oracle"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["table", "B", "61"]).status.code(), Some(2));
    assert_eq!(run(&["table", "nonsense", "3"]).status.code(), Some(2));
}

#[test]
fn psi_of_the_example_map() {
    let o = run(&[
        "transform",
        "psi",
        fixture("example21.json").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        concat!(
            r#"{"n":7,"white":[{"edge":0},{"thorn":0},{"edge":1},{"thorn":1},{"thorn":2},{"edge":2},{"thorn":3}],"#,
            r#""blacks":[{"thorns":3},{"thorns":0},{"thorns":1}],"sigma":[[1,[2,0]],[3,[0,0]],[4,[0,1]],[6,[0,2]]]}"#,
            "\n"
        )
    );
}

#[test]
fn invert_the_five_element_fixture() {
    let v = json(&run(&[
        "transform",
        "invert",
        fixture("ex1.json").to_str().unwrap(),
    ]));
    assert_eq!(v["outcome"], "success");
    assert_eq!(v["alpha"], "(1 3 2 4 5)");
    assert_eq!(v["beta"], "(1 3 2)(4)(5)");
    assert_eq!(v["pi"], "{{1,2,3}, {4,5}}");
}

#[test]
fn classify_and_invert_the_self_loop() {
    let path = fixture("selfloop4.json");
    let o = run(&["transform", "classify", path.to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "{\"classification\":\"cycle_fail\",\"cycle\":[1]}\n"
    );
    let v = json(&run(&["transform", "invert", path.to_str().unwrap()]));
    assert_eq!(v["outcome"], "failure");
    assert_eq!(v["certificate"]["collided_label"], 1);
}

#[test]
fn contract_writes_a_file() {
    let out = std::env::temp_dir().join(format!("thorntree-contract-{}.json", std::process::id()));
    let o = run(&[
        "transform",
        "contract",
        fixture("ex1.json").to_str().unwrap(),
        "--vertex",
        "1",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).ok();
    assert!(text.starts_with(r#"{"tree":{"n":4,"white":"#));
    assert!(text.contains(r#""type":[4]"#));
    let missing = run(&[
        "transform",
        "contract",
        fixture("ex1.json").to_str().unwrap(),
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["verify", "bijection", "4"],
        vec!["table", "D", "6", "--oracle"],
        vec!["verify", "identities", "3"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn parse_errors_carry_a_position() {
    let bad = std::env::temp_dir().join(format!("thorntree-bad-{}.json", std::process::id()));
    std::fs::write(&bad, "{\"n\":3,\n\"white\":[}").unwrap();
    let o = run(&["transform", "classify", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).ok();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn dot_exports() {
    let map = stdout(&run(&[
        "export-dot",
        fixture("example21.json").to_str().unwrap(),
    ]));
    assert!(map.starts_with("graph star_map {"));
    let tree = stdout(&run(&["export-dot", fixture("ex1.json").to_str().unwrap()]));
    assert!(tree.starts_with("digraph permuted_tree {"));
    let aux = stdout(&run(&[
        "export-dot",
        fixture("selfloop4.json").to_str().unwrap(),
        "--aux",
    ]));
    assert!(aux.contains("v1 -> v1;"));
}
