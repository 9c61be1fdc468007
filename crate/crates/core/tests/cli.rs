use mackey_field::cli::{run_report, Report, EXIT_CAP, EXIT_PARSE, EXIT_VERIFY};

fn run(args: &[&str]) -> (Option<Report>, i32, String) {
    run_report(std::iter::once("mackey-field").chain(args.iter().copied()))
}

fn scenario(name: &str) -> String {
    format!("{}/scenarios/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn roots_validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"cartan": [[2, 1], [1, 2]]}"#).unwrap();
    assert_eq!(run(&["roots-validate", bad.to_str().unwrap()]).1, EXIT_PARSE);
    let good = dir.path().join("g2.json");
    std::fs::write(&good, r#"{"cartan": [[2, -1], [-3, 2]], "rank_central": 1}"#).unwrap();
    let (r, code, _) = run(&["roots-validate", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = r.unwrap();
    assert_eq!(r.payload["weyl_order"], 12);
    assert_eq!(r.payload["positive_roots"].as_array().unwrap().len(), 6);
    assert_eq!(run(&["roots-validate", good.to_str().unwrap(), "--cap", "5"]).1, EXIT_CAP);
    assert_eq!(run(&["roots-validate", "/nonexistent.json"]).1, EXIT_PARSE);
}

#[test]
fn decompose_lists_three_terms() {
    let (r, code, _) = run(&["decompose", "--datum", "A1", "--sigma", "1", "--nu", "0", "--radius", "5"]);
    assert_eq!(code, 0);
    let terms = r.unwrap().payload["table"]["terms"].as_array().unwrap().clone();
    let got: Vec<(i64, u64)> = terms.iter().map(|t| (t["theta"][0].as_i64().unwrap(), t["m"].as_u64().unwrap())).collect();
    assert_eq!(got, vec![(1, 1), (3, 1), (5, 1)]);
    assert_eq!(run(&["decompose", "--datum", "A1", "--sigma", "7", "--nu", "0", "--radius", "5"]).1, EXIT_PARSE);
}

#[test]
fn uniqueness_exit_codes() {
    let (r, code, _) = run(&["uniqueness", "--datum", "A1", "--nu", "0", "--radius", "7"]);
    assert_eq!(code, 0);
    let r = r.unwrap();
    assert_eq!(r.pass["identity_only"], true);
    assert_eq!(r.payload["survivors"].as_array().unwrap().len(), 1);
    assert_eq!(run(&["uniqueness", "--datum", "A1", "--nu", "0", "--radius", "7", "--cap", "3"]).1, EXIT_CAP);
    assert_eq!(run(&["uniqueness", "--datum", "A2", "--nu", "0,0", "--radius", "2"]).1, EXIT_PARSE);
    assert_eq!(run(&["uniqueness", "--datum", "A2", "--nu", "0,0", "--radius", "2", "--closed"]).1, 0);
}

#[test]
fn parse_errors() {
    assert_eq!(run(&["dual-normalize", "--datum", "A2", "--sigma", "x", "--nu", "0,0"]).1, EXIT_PARSE);
    assert_eq!(run(&["dual-normalize", "--datum", "A2", "--sigma", "1", "--nu", "0,0"]).1, EXIT_PARSE);
    assert_eq!(run(&["dual-normalize", "--datum", "Z9", "--sigma", "1", "--nu", "0"]).1, EXIT_PARSE);
    assert_eq!(run(&["no-such-command"]).1, EXIT_PARSE);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let args = ["dual-normalize", "--datum", "A2", "--sigma", "-1,2", "--nu", "-1/2,1/3", "--kind", "motion"];
    let (a, _, _) = run(&args);
    let (b, _, _) = run(&args);
    let (a, b) = (a.unwrap(), b.unwrap());
    assert_eq!(a.inputs_digest, b.inputs_digest);
    assert_eq!(serde_json::to_string(&a.payload).unwrap(), serde_json::to_string(&b.payload).unwrap());
    let back: Report = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
    assert_eq!(back, a);
    assert_eq!(a.payload["nu"], serde_json::json!(["1/3", "1/6"]));
    let (c, _, _) = run(&["dual-normalize", "--datum", "A2", "--sigma", "-1,2", "--nu", "0,0"]);
    assert_ne!(c.unwrap().inputs_digest, a.inputs_digest);
}

#[test]
fn mackey_map_round_trip() {
    let (f, code, _) = run(&["mackey-map", "--datum", "C2", "--sigma", "3,-4", "--nu", "0,1/2"]);
    assert_eq!(code, 0);
    let f = f.unwrap().payload;
    let sigma = f["sigma"].as_array().unwrap().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    let nu = f["nu"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect::<Vec<_>>().join(",");
    let (g, _, _) = run(&["mackey-map", "--datum", "C2", "--sigma", &sigma, "--nu", &nu, "--direction", "inverse"]);
    assert_eq!(g.unwrap().payload, f);
}

#[test]
fn out_directory_receives_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let (_, code, _) = run(&["decompose", "--datum", "A2", "--sigma", "0,0", "--nu", "0,0", "--radius", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(out.join("decomposition.txt")).unwrap();
    assert!(text.lines().count() > 1);
    let r: Report = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(r.schema_version, 1);
}

#[test]
fn sl2_health_and_motion_rep() {
    let (r, code, _) = run(&["sl2", "iwasawa", &scenario("sigma0_nu0")]);
    assert_eq!(code, 0);
    assert!(r.unwrap().pass.values().all(|&b| b));
    let (r, code, _) = run(&["sl2", "motionrep", &scenario("sigma1_nu1")]);
    assert_eq!(code, 0, "{:?}", r.map(|r| r.payload));
    // An impossible tolerance turns into a verification failure.
    assert_eq!(run(&["sl2", "motionrep", &scenario("sigma1_nu1"), "--tol", "1e-300"]).1, EXIT_VERIFY);
    assert_eq!(run(&["sl2", "limit", "/nonexistent.json"]).1, EXIT_PARSE);
}
