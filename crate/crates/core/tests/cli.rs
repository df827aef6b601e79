use serde_json::Value;
use std::path::PathBuf;
use surfgraph::io::cli::{run, EXIT_INVARIANT, EXIT_LIMIT, EXIT_OK, EXIT_PARSE, EXIT_VIOLATION};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn fgl(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("fgl").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("stdout is one JSON value")
}

#[test]
fn fixtures_validate() {
    for f in ["extended_family.fgl", "generalized_theta.fgl", "s_cycle_bigon.fgl", "two_cornered_theta.fgl"] {
        let (code, out, _) = fgl(&["validate", &data(f)]);
        assert_eq!(code, EXIT_OK, "{f}");
        assert_eq!(json(&out)["record"], "validate");
    }
}

#[test]
fn detect_reports_what_it_finds() {
    let (code, out, _) = fgl(&["detect", &data("s_cycle_bigon.fgl"), "--structure", "s-cycle"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["certificates"].as_array().unwrap().len(), 2);
    let (code, _, _) = fgl(&["detect", &data("s_cycle_bigon.fgl"), "--structure", "level"]);
    assert_eq!(code, EXIT_VIOLATION);
    let (code, _, _) = fgl(&["detect", &data("generalized_theta.fgl"), "--structure", "generalized"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = fgl(&["detect", &data("extended_family.fgl"), "--structure", "extended"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn lemma_checks_set_the_exit_code() {
    let (code, out, _) = fgl(&["check", &data("extended_family.fgl"), "--lemma", "2.6", "--partner", "S"]);
    assert_eq!(code, EXIT_VIOLATION);
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert!(v["witness_check"].as_array().unwrap().iter().all(|w| w == "ok"));
    let (code, _, _) = fgl(&["check", &data("s_cycle_bigon.fgl"), "--lemma", "2.6", "--partner", "S"]);
    assert_eq!(code, EXIT_OK);
    let (code, out, err) = fgl(&["check", &data("s_cycle_bigon.fgl"), "--lemma", "9.9", "--partner", "S"]);
    assert_eq!(code, EXIT_PARSE);
    assert_eq!(json(&out)["record"], "error");
    assert!(!err.is_empty());
}

#[test]
fn bad_input_maps_to_its_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let garbled = dir.path().join("garbled.fgl");
    std::fs::write(&garbled, "pair delta=1 n1=2\ngraph 1 type=S\nvertex zero\n").unwrap();
    assert_eq!(fgl(&["validate", garbled.to_str().unwrap()]).0, EXIT_PARSE);
    // the bigon traces as a sphere, so declaring a torus breaks an invariant
    let wrong = dir.path().join("wrong_surface.fgl");
    let text = std::fs::read_to_string(data("s_cycle_bigon.fgl")).unwrap().replace("type=S", "type=T");
    std::fs::write(&wrong, text).unwrap();
    assert_eq!(fgl(&["validate", wrong.to_str().unwrap()]).0, EXIT_INVARIANT);
    assert_eq!(fgl(&["validate", "/no/such/file.fgl"]).0, EXIT_PARSE);
    assert_eq!(fgl(&["enumerate", "--campaign", "no-such-campaign"]).0, EXIT_PARSE);
}

#[test]
fn enumerate_writes_a_report_that_rereads_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("euler.json");
    let path = out.to_str().unwrap();
    let (code, _, err) = fgl(&["enumerate", "--campaign", "sec8-euler", "--workers", "2", "--out", path]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("units"));
    let (code, summary, _) = fgl(&["report", path]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&summary)["campaign"], "sec8-euler");
}

#[test]
fn node_limit_yields_a_resumable_partial_report() {
    let dir = tempfile::tempdir().unwrap();
    let part = dir.path().join("part.json");
    let args = ["enumerate", "--campaign", "parallel-family", "--n-partner", "1..8", "--workers", "1"];
    let (code, _, _) = fgl(&[&args[..], &["--max-nodes", "1", "--out", part.to_str().unwrap()]].concat());
    assert_eq!(code, EXIT_LIMIT);
    let partial = json(&std::fs::read_to_string(&part).unwrap());
    assert_eq!(partial["complete"], false);
    let token = partial["resume_token"].as_str().unwrap().to_string();
    assert_eq!(fgl(&["report", part.to_str().unwrap()]).0, EXIT_LIMIT);
    let (code, rest, _) = fgl(&[&args[..], &["--resume", &token]].concat());
    assert_eq!(code, EXIT_OK);
    let rest = json(&rest);
    assert_eq!(rest["complete"], true);
    let (_, full, _) = fgl(&args);
    let full = json(&full);
    let units = |v: &Value| v["units_done"].as_u64().unwrap();
    assert_eq!(units(&partial) + units(&rest), units(&full));
    assert_eq!(
        partial["checks"].as_u64().unwrap() + rest["checks"].as_u64().unwrap(),
        full["checks"].as_u64().unwrap()
    );
}
