use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tropgrass::fan::tgr2_fan_builder;
use tropgrass::IndexConvention;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropgrass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn intro_weight_gives_seven_cells() {
    let out = run(&["subdivide", "--weight", path(&fixture("intro_weight.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["cells"].as_array().unwrap().len(), 7);
    assert_eq!(v["inputs"]["weight"].as_str().unwrap().len(), 64);
}

#[test]
fn dual_graph_text_shows_the_star() {
    let out = run(&["dual-graph", "--weight", path(&fixture("intro_weight.json")), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("7 cells, 6 edges"));
    assert!(text.contains("star with center cell"));
}

#[test]
fn fano_valuation_over_f2() {
    let out = run(&["valuation", "--matrix", path(&fixture("fano_matrix.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let entries = &json(&out)["result"]["entries"];
    for line in ["124", "135", "167", "236", "347", "456"] {
        assert_eq!(entries[line], "1", "w_{line}");
    }
    assert!(entries.get("123").is_none());
}

#[test]
fn json_output_is_byte_stable() {
    let w = fixture("intro_weight.json");
    let args = ["dual-graph", "--weight", path(&w)];
    let (a, b) = (run(&args), run(&args));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = run(&["named", "--named", "fano", "--out", path(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    assert_eq!(v["result"]["lines"].as_array().unwrap().len(), 7);
}

#[test]
fn four_point_violation_has_a_witness() {
    let out = run(&["tree", "check", "--weight", path(&fixture("quartet_bad.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "property_failed");
    assert_eq!(v["witness"]["quadruple"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn tree_metric_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("tree.json");
    let out = run(&["tree", "from-metric", "--weight", path(&fixture("quartet_tree.json")), "--out", path(&tree)]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&std::fs::read(&tree).unwrap()).unwrap();
    std::fs::write(&tree, report["result"].to_string()).unwrap();
    let back = json(&run(&["tree", "distance", "--tree", path(&tree)]));
    let original: Value = serde_json::from_slice(&std::fs::read(fixture("quartet_tree.json")).unwrap()).unwrap();
    for (k, v) in original["entries"].as_object().unwrap() {
        assert_eq!(back["result"]["entries"][k].to_string(), format!("\"{v}\""), "w_{k}");
    }
}

#[test]
fn malformed_json_is_an_input_error() {
    let out = run(&["subdivide", "--weight", path(&fixture("malformed.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "input_error");
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_file_and_unknown_subcommand_exit_two() {
    assert_eq!(run(&["subdivide", "--weight", "/nonexistent/w.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["chart", "--named", "fig36"]).status.code(), Some(2));
}

#[test]
fn non_facet_flat_fails_with_witness() {
    let ok = run(&["facets", "--named", "fano", "--facet-flat", "1,2,4"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["facets", "--named", "fano", "--facet-flat", "1,2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["witness"]["is_flat"], false);
}

#[test]
fn fig36_jacobian_is_certified() {
    let out = run(&["jacobian", "--named", "fig36", "--basis", "123"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!json(&out)["result"]["certificates"].as_array().unwrap().is_empty());
}

#[test]
fn enumerate_rank_two_on_four() {
    let v = json(&run(&["enumerate", "--d", "2", "--n", "4"]));
    assert_eq!(v["result"]["count"], 7);
}

#[test]
fn fan_commands_on_tgr25() {
    let dir = tempfile::tempdir().unwrap();
    let fan = dir.path().join("fan.json");
    let f = tgr2_fan_builder(5).unwrap();
    std::fs::write(&fan, f.to_json(IndexConvention::Lex1).to_string()).unwrap();

    let orbits = json(&run(&["orbit-fvector", "--fan", path(&fan)]));
    assert_eq!(orbits["status"], "ok");
    assert_eq!(orbits["result"]["fvector"], serde_json::json!([10, 15]));
    assert_eq!(orbits["result"]["orbit_fvector"], serde_json::json!([1, 1]));

    let scan = run(&["star-scan", "--fan", path(&fan), "--cone", "1"]);
    assert_eq!(scan.status.code(), Some(0), "{}", String::from_utf8_lossy(&scan.stdout));

    let converted = dir.path().join("website.json");
    let out = run(&["convert-fan", "--fan", path(&fan), "--to", "website0", "--out", path(&converted)]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&std::fs::read(&converted).unwrap()).unwrap();
    let lowest = report["result"]["fan"]["cones"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["cells"].as_array().unwrap())
        .flat_map(|cell| cell.as_array().unwrap())
        .filter_map(Value::as_u64)
        .min();
    assert_eq!(lowest, Some(0));
    assert_eq!(report["result"]["fan"]["index_convention"], "website0");
}
