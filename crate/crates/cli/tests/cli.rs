use mutclass::io::parse_matrix;
use mutclass_cli::{run, Output, EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::{json, Value};

const A2: &str = r#"{"m":2,"n":2,"rows":[[0,1],[-1,0]],"name":"A2"}"#;
const KRONECKER: &str = r#"{"m":2,"n":2,"rows":[[0,2],[-2,0]]}"#;

fn call(args: &[&str], stdin: &str) -> Output {
    let argv = std::iter::once("mutclass").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn json_of(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", out.stdout))
}

#[test]
fn classify_a2() {
    let out = call(&["classify"], A2);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(json_of(&out), json!({"finite_type": true, "family": "A", "rank": 2}));
}

#[test]
fn classify_infinite_type_exits_one() {
    let out = call(&["classify"], KRONECKER);
    assert_eq!(out.code, EXIT_DOMAIN);
    let v = json_of(&out);
    assert_eq!(v["finite_type"], false);
    assert_eq!(v["witness_weight"], 4);
}

#[test]
fn classify_disconnected_lists_components() {
    let doc = r#"{"rows":[[0,1,0],[-1,0,0],[0,0,0]]}"#;
    let v = json_of(&call(&["classify"], doc));
    assert_eq!(v["finite_type"], true);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_theorem_on_kronecker() {
    let out = call(&["verify-theorem", "--budget", "10000"], KRONECKER);
    assert_eq!(out.code, EXIT_OK);
    let v = json_of(&out);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["lhs"], "infinite");
    let kind = v["rhs_certificate"].as_str().unwrap();
    assert!(
        ["UnbalancedWeight4Triangle", "AcyclicWeight4Attachment", "WeightGrowthGt4"].contains(&kind),
        "{kind}"
    );
    assert_eq!(v["growth"]["steps"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_theorem_undecided_exits_three() {
    let a3 = r#"{"rows":[[0,1,0],[-1,0,1],[0,-1,0]]}"#;
    let out = call(&["verify-theorem", "--budget", "5"], a3);
    assert_eq!(out.code, EXIT_BUDGET);
    assert_eq!(json_of(&out)["verdict"], "UNDECIDED-AT-BUDGET");
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = call(&["frobnicate"], "");
    assert_eq!(out.code, EXIT_USAGE);
    assert_eq!(json_of(&out)["error"], "usage");
}

#[test]
fn mutate_matches_library() {
    let out = call(&["mutate", "--seq", "1,2,1"], A2);
    assert_eq!(out.code, EXIT_OK);
    let got = parse_matrix(&out.stdout).unwrap();
    let want = parse_matrix(A2).unwrap().mutate_seq(&[0, 1, 0]).unwrap();
    assert_eq!(got, want);
    assert_eq!(json_of(&out)["name"], "A2");
}

#[test]
fn mutate_at_frozen_index_fails() {
    let doc = r#"{"m":3,"n":2,"rows":[[0,1],[-1,0],[1,0]]}"#;
    let out = call(&["mutate", "--at", "3"], doc);
    assert_eq!(out.code, EXIT_DOMAIN);
    assert_eq!(json_of(&out)["error"], "frozen_index");
}

#[test]
fn invalid_document_names_the_pair() {
    let out = call(&["classify"], r#"{"rows":[[0,1],[1,0]]}"#);
    assert_eq!(out.code, EXIT_DOMAIN);
    assert_eq!(json_of(&out)["location"], json!([1, 2]));
    let out = call(&["classify"], r#"{"rows":[[0,1],[-1]]}"#);
    assert_eq!(json_of(&out)["error"], "row_length");
}

#[test]
fn enumerate_reports_and_exhausts() {
    let principal = r#"{"m":4,"n":2,"rows":[[0,1],[-1,0],[1,0],[0,1]]}"#;
    let v = json_of(&call(&["enumerate", "--budget", "1000"], principal));
    assert_eq!(v["outcome"], "closed");
    assert_eq!(v["labeled"], 10);
    let out = call(&["enumerate", "--budget", "3"], principal);
    assert_eq!(out.code, EXIT_BUDGET);
}

#[test]
fn single_threaded_output_is_byte_identical() {
    let c2 = r#"{"rows":[[0,2,0],[-1,0,1],[0,-2,0]]}"#;
    let a = call(&["--jobs", "1", "verify-theorem"], c2);
    let b = call(&["--jobs", "1", "verify-theorem"], c2);
    let c = call(&["--jobs", "4", "verify-theorem"], c2);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn catalog_pipes_into_classify() {
    for (family, rank) in [("A", 5), ("B", 3), ("D", 5), ("E", 6), ("F", 4), ("G", 2)] {
        let doc = call(&["catalog", "--family", family, "--rank", &rank.to_string()], "");
        assert_eq!(doc.code, EXIT_OK);
        let v = json_of(&call(&["classify"], &doc.stdout));
        assert_eq!(v, json!({"finite_type": true, "family": family, "rank": rank}));
    }
}

#[test]
fn catalog_rejects_bad_rank() {
    let out = call(&["catalog", "--family", "E", "--rank", "9"], "");
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn minimal_on_extended_diagram() {
    let doc = call(&["catalog", "--family", "D", "--rank", "4", "--affine"], "");
    let v = json_of(&call(&["minimal"], &doc.stdout));
    assert_eq!(v["minimal_infinite"], true);
    assert_eq!(v["deletions"].as_array().unwrap().len(), 5);
    let v = json_of(&call(&["minimal"], A2));
    assert_eq!(v["minimal_infinite"], false);
}

#[test]
fn companion_find_and_check() {
    let v = json_of(&call(&["companion"], A2));
    assert_eq!(v["admissible"], true);
    assert_eq!(v["semidefiniteness"]["kind"], "positive");

    // the cyclic triangle needs an odd number of positive entries on its cycle
    let tri = r#"{"rows":[[0,1,-1],[-1,0,1],[1,-1,0]],
                  "companion":[[2,1,-1],[1,2,-1],[-1,-1,2]]}"#;
    let out = call(&["companion"], tri);
    assert_eq!(json_of(&out)["admissible"], true, "{}", out.stdout);
    let bad = r#"{"rows":[[0,1,-1],[-1,0,1],[1,-1,0]],
                  "companion":[[2,-1,-1],[-1,2,-1],[-1,-1,2]]}"#;
    let out = call(&["companion"], bad);
    assert_eq!(out.code, EXIT_DOMAIN);
    assert_eq!(json_of(&out)["admissible"], false);

    let kronecker_extended = call(&["catalog", "--family", "A", "--rank", "1", "--affine"], "");
    let v = json_of(&call(&["companion"], &kronecker_extended.stdout));
    assert_eq!(v["semidefiniteness"], json!({"kind": "semipositive", "corank": 1}));
    assert_eq!(v["radical"][0]["sincere"], true);
}

#[test]
fn diagram_dot_output() {
    let out = call(&["diagram", "--dot"], KRONECKER);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("digraph"));
    assert!(out.stdout.contains("[label=\"4\"]"));
}

#[test]
fn input_file_flag() {
    let dir = std::env::temp_dir().join(format!("mutclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.json");
    std::fs::write(&path, A2).unwrap();
    let out = call(&["classify", "--input", path.to_str().unwrap()], "");
    assert_eq!(out.code, EXIT_OK);
    let out = call(&["classify", "--input", dir.join("missing.json").to_str().unwrap()], "");
    assert_eq!(out.code, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pretty_output_is_the_same_value() {
    let a = call(&["classify"], A2);
    let b = call(&["classify", "--pretty"], A2);
    assert_ne!(a.stdout, b.stdout);
    assert_eq!(json_of(&a), json_of(&b));
}
