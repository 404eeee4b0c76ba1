use std::process::{Command, Output};

use serde_json::Value;
use subdiv::garnir::GarnirContext;
use subdiv::partition_core::Multipartition;
use subdiv::runner_fock::{canonical_basis, parse_reference, reference, Convention, FockVector, LaurentPoly, ScanReport};
use subdiv::subdivision::AbacusDatum;

fn subdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subdiv")).args(args).env_remove("SUBDIV_CONVENTION").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = subdiv(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let text = ok(&all);
    serde_json::from_str(&text).unwrap()
}

fn mp(s: &str) -> Multipartition {
    s.parse().unwrap()
}

#[test]
fn subdivide_rectangle() {
    let args = ["subdivide", "--e", "5", "--k", "1", "--charge", "1", "--partition", "11,11,11,11,11,11,11"];
    let text = ok(&args);
    assert!(text.contains("Young model:  (14,13^5,12,2)"));
    assert!(text.contains("abacus model: (14,13^5,12,2)"));
    assert!(text.contains("(a,c,d,a') = (11,2,0,13), new beads {1,7}"));

    let v = json(&args);
    assert_eq!(serde_json::from_value::<Multipartition>(v["young_image"].clone()).unwrap(), mp("14,13^5,12,2"));
    assert_eq!(v["young_image"], v["abacus_image"]);
    let datum: Vec<AbacusDatum> = serde_json::from_value(v["datum"].clone()).unwrap();
    assert_eq!(datum, vec![AbacusDatum { a: 11, c: 2, d: 0, a_prime: 13 }]);
    assert_eq!(v["k_count"], serde_json::json!([1]));
    assert_eq!(serde_json::from_value::<Multipartition>(v["split"]["components"].clone()).unwrap(), mp("11^5|11^2"));
}

#[test]
fn subdivide_with_other_datum() {
    let v = json(&["subdivide", "--e", "5", "--k", "1", "--charge", "1", "--partition", "11^7", "--a", "16"]);
    assert_eq!(serde_json::from_value::<Multipartition>(v["abacus_image"].clone()).unwrap(), mp("14,13^5,12,2"));
    assert_eq!(v["datum"][0]["a"], 16);
}

#[test]
fn degree_of_initial_tableau() {
    assert_eq!(ok(&["degree", "--e", "3", "--charge", "1,2", "--shape", "3,2,1|5,1,1", "--initial"]), "4\n");
    let t = "1 2 7 / 4 12 / 9 | 3 6 8 10 11 / 5 / 13";
    assert_eq!(ok(&["degree", "--e", "3", "--charge", "1,2", "--tableau", t]), "6\n");
}

#[test]
fn tableau_subdivision() {
    let t = "1 2 6 8 13 17 21 22 / 3 5 12 16 18 | 4 9 10 20 / 7 14 19 / 11 15";
    let v = json(&["tableau", "--e", "3", "--charge", "0,1", "--tableau", t, "--k", "1"]);
    assert_eq!(v["degree"], 12);
    assert_eq!(v["subdivided"]["degree"], 12);
    assert_eq!(v["subdivided"]["charge"], serde_json::json!([0, 1]));
}

#[test]
fn fock_canonical_matches_reference() {
    let text = ok(&["fock-canonical", "--e", "3", "--charge", "0,1", "--mu", "6|5,1,1"]);
    let want: Vec<String> =
        parse_reference(reference::G3_6_511).unwrap().iter().map(|t| format!("{} |{}⟩", t.coeff, t.shape.bracketed())).collect();
    let mut got: Vec<&str> = text.lines().collect();
    assert_eq!(got.len(), want.len());
    assert_eq!(got[0], "1 |[6], [5,1^2]⟩");
    got.sort_unstable();
    let mut want_sorted: Vec<&str> = want.iter().map(String::as_str).collect();
    want_sorted.sort_unstable();
    assert_eq!(got, want_sorted);

    let v = json(&["fock-canonical", "--e", "3", "--charge", "0,1", "--mu", "6|5,1,1"]);
    let g: FockVector = serde_json::from_value(v["expansion"].clone()).unwrap();
    assert_eq!(g, canonical_basis(&mp("6|5,1,1"), 3, &[0, 1], Convention::CALIBRATED).unwrap());
    assert_eq!(v["convention"], "above+");
}

#[test]
fn convention_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_subdiv"))
        .args(["decomp", "--e", "3", "--charge", "0", "--shape", "2,1", "--mu", "3"])
        .env("SUBDIV_CONVENTION", "sideways")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown convention"));
}

#[test]
fn decomposition_numbers() {
    assert_eq!(ok(&["decomp", "--e", "3", "--charge", "0", "--shape", "2,1", "--mu", "3"]), "q\n");
    assert_eq!(ok(&["decomp", "--e", "3", "--charge", "0", "--shape", "3", "--mu", "2,1"]), "0\n");
    let v = json(&["decomp", "--e", "3", "--charge", "0,1", "--shape", "6|3,3,1", "--mu", "6|5,1,1"]);
    assert_eq!(serde_json::from_value::<LaurentPoly>(v["coefficient"].clone()).unwrap(), "q".parse().unwrap());
}

#[test]
fn runner_addition() {
    let text = ok(&["runner-add", "--e", "4", "--d", "4", "--charge", "1", "--shape", "5,4,2,1,1", "--a", "9"]);
    assert!(text.starts_with("image:  (6,4,2^2,1^3)\n"));
    assert_eq!(ok(&["epsilon", "--e", "4", "--d", "4", "--charge", "1", "--shape", "7,2,2,1,1", "--a", "9"]), "1\n");
    assert_eq!(ok(&["epsilon", "--e", "3", "--d", "1,0", "--charge", "0,1", "--shape", "6|5,1,1"]), "2,2\n");
    let v = json(&["runner-add", "--e", "3", "--d", "1,0", "--charge", "0,1", "--shape", "6|5,1,1"]);
    assert_eq!(serde_json::from_value::<Multipartition>(v["image"].clone()).unwrap(), mp("8|7,1^2"));
    let neg = ok(&["runner-add", "--e", "3", "--d", "-1", "--charge", "0", "--shape", "2,1"]);
    assert!(neg.starts_with("image:"));
}

#[test]
fn garnir_data() {
    let listed = ok(&["garnir", "--e", "3", "--charge", "0,1", "--shape", "5,4,3,3,1|14,10,2"]);
    assert!(listed.starts_with("23 Garnir nodes:"));
    let v = json(&["garnir", "--e", "3", "--charge", "0,1", "--shape", "5,4,3,3,1|14,10,2", "--node", "2,1,8"]);
    let ctx: GarnirContext = serde_json::from_value(v["context"].clone()).unwrap();
    assert_eq!((ctx.k_a, ctx.f_a, ctx.belt.len()), (4, 2, 15));
    assert_eq!(v["set"]["d_a"].as_array().unwrap().len(), 6);
}

#[test]
fn abacus_and_split() {
    let v = json(&["abacus", "--e", "3", "--partition", "4,3,2,2", "--beads", "4"]);
    assert_eq!(v["beta_set"], serde_json::json!([7, 5, 3, 2]));
    assert_eq!(ok(&["split", "--e", "5", "--k", "1", "--charge", "1", "--shape", "11^7"]), "(11^5|11^2) with charge 1,1\n");
}

#[test]
fn scans() {
    let v = json(&["conjecture-scan", "--e", "3", "--charge", "0,1", "--d", "1,0", "--shape", "6|5,1,1", "--mode", "total"]);
    let report: ScanReport = serde_json::from_value(v).unwrap();
    assert_eq!(report.pairs_checked, report.confirmed);
    assert!(report.pairs_checked > 0);

    let strict = subdiv(&["conjecture-scan", "--e", "3", "--charge", "0,1", "--d", "1,0", "--max-size", "8", "--mode", "total", "--strict"]);
    assert_eq!(strict.status.code(), Some(2));
    let report: ScanReport = serde_json::from_str(&stdout(&strict)).unwrap();
    assert!(!report.counterexamples.is_empty());

    let text = ok(&["runner-check", "--e", "3", "--max-size", "6", "--workers", "1"]);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.contains(" 0 counterexamples, 0 skipped")));
}

#[test]
fn verify_small_scale() {
    let text = ok(&["verify", "--max-size", "5"]);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    let v = json(&["verify", "--max-size", "4", "canonical-basis"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn usage_and_domain_errors() {
    for args in [
        vec!["subdivide", "--e", "5", "--k", "1", "--charge", "1", "--partition", "11,12"],
        vec!["subdivide", "--e", "5", "--k", "1", "--charge", "1", "--partition", "11", "--bogus"],
        vec!["subdivide", "--e", "2", "--k", "1", "--charge", "1", "--partition", "11"],
        vec!["subdivide", "--e", "5", "--k", "1", "--charge", "1", "--partition", "11^7", "--a", "12"],
        vec!["degree", "--e", "3", "--charge", "0", "--tableau", "2 1 / 3"],
        vec!["garnir", "--e", "3", "--charge", "0", "--shape", "3,2", "--node", "1,2,1"],
        vec!["fock-canonical", "--e", "3", "--charge", "0", "--mu", "2|1"],
        vec!["verify", "no-such-criterion"],
    ] {
        let out = subdiv(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(subdiv(&["--help"]).status.code(), Some(0));
}
