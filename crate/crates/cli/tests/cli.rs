use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn symcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let o = symcone(&all);
    (
        serde_json::from_slice(&o.stdout).expect("json on stdout"),
        o.status.code().unwrap(),
    )
}

#[test]
fn verify_three_spheres() {
    let o = symcone(&["verify", "@s2xs2xs2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ell = 0"), "{out}");
    assert!(out.contains("even sum = 6"), "{out}");
    assert!(out.contains("verdict: pass"));
}

#[test]
fn filtered_kt_times_sphere() {
    let o = symcone(&["filtered", "-p", "1", "@kt_x_s2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("even part: (1,5,5,6,3)"), "{out}");
    assert!(out.contains("even sum = 20"));
}

#[test]
fn semichar_genus_two() {
    let o = symcone(&["semichar", "@surface_g2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("kChar = 1"), "{out}");
    assert!(out.contains("ell = 0"), "{out}");
}

fn sha(v: &Value) -> String {
    v["provenance"]["models"][0]["sha256"].as_str().unwrap().to_string()
}

#[test]
fn fixture_matches_catalog() {
    let (a, _) = json(&["betti", &fixture("kodaira_thurston.json")]);
    let (b, _) = json(&["betti", "@kodaira_thurston"]);
    assert_eq!(sha(&a), sha(&b));
    assert_eq!(a["sections"], b["sections"]);
}

#[test]
fn product_fixture() {
    let (v, code) = json(&["filtered", &fixture("kt_x_s2.json")]);
    assert_eq!(code, 0);
    let (c, _) = json(&["filtered", "@kt_x_s2"]);
    assert_eq!(sha(&v), sha(&c));
    assert_eq!(v["sections"][0]["even_part"], serde_json::json!([1, 5, 5, 6, 3]));
    assert_eq!(v["sections"][0]["even_sum"], 20);
}

#[test]
fn relative_and_inline_factors() {
    let o = symcone(&["verify", &fixture("three_spheres.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("even sum = 6"));
}

#[test]
fn rejects_wrong_degree_differential() {
    let o = symcone(&["betti", &fixture("invalid/wrong_degree.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("e1"), "{}", stderr(&o));
}

#[test]
fn rejects_unknown_field_with_position() {
    let o = symcone(&["betti", &fixture("invalid/unknown_field.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("metric") && err.contains("line 7"), "{err}");
}

#[test]
fn rejects_unknown_catalog_factor() {
    let o = symcone(&["verify", &fixture("invalid/unknown_factor.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("klein_bottle"));
}

#[test]
fn validation_failure_names_witness() {
    let o = symcone(&["validate", &fixture("invalid/degenerate.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL  omega-nondegenerate"), "{}", stdout(&o));
    let o = symcone(&["filtered", &fixture("invalid/degenerate.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("omega-nondegenerate"));
    let o = symcone(&["validate", "@kt_x_torus2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: valid"));
}

#[test]
fn falsification_exits_three() {
    let o = symcone(&["verify", &fixture("falsify/two_classes.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FALSIFIED"));
    assert!(stderr(&o).contains("not Poincare dual"));
}

#[test]
fn usage_errors() {
    assert_eq!(symcone(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(symcone(&["--help"]).status.code(), Some(0));
    let o = symcone(&["ops", "-p", "2", "@torus4"]);
    assert_eq!(o.status.code(), Some(2));
}

/// Parses `k  cone  formula` rows from the filtered text table.
fn text_rows(text: &str) -> Vec<(usize, usize, usize)> {
    text.lines()
        .filter_map(|l| {
            let f: Vec<usize> = l.split_whitespace().map(|w| w.parse().ok()).collect::<Option<_>>()?;
            (f.len() == 3).then(|| (f[0], f[1], f[2]))
        })
        .collect()
}

#[test]
fn text_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    for (model, p, extra) in [
        ("@kt_x_s2", "1", None),
        ("@torus6", "2", Some("--all-degrees")),
        ("@surface_g3", "0", None),
    ] {
        let path = dir.path().join("r.json");
        let mut args = vec!["filtered", "-p", p, model, "--json", path.to_str().unwrap()];
        args.extend(extra);
        let o = symcone(&args);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let s = &v["sections"][0];
        let rows = text_rows(&stdout(&o));
        assert_eq!(rows.len() as u64, s["last_degree"].as_u64().unwrap() + 1);
        for (k, cone, formula) in rows {
            assert_eq!(s["b_phi_cone"][k], cone);
            assert_eq!(s["b_phi_formula"][k], formula);
        }
        assert!(stdout(&o).contains(&format!("even sum = {}", s["even_sum"])));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--with-ops", "@kt_x_s2", "@s2xs2xs2"][..],
        &["catalog", "show", "torus4"][..],
    ] {
        let a = symcone(args);
        let b = symcone(args);
        assert_eq!(a.stdout, b.stdout);
        let (ja, _) = json(args);
        let (jb, _) = json(args);
        assert_eq!(ja, jb);
    }
}

fn copy_fixtures(dir: &Path, names: &[&str]) {
    for n in names {
        std::fs::copy(fixture(n), dir.join(Path::new(n).file_name().unwrap())).unwrap();
    }
}

#[test]
fn batch_directory() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path(), &["kt_x_s2.json", "genus2.json", "kodaira_thurston.json"]);
    let d = dir.path().to_str().unwrap();
    let (v, code) = json(&["verify", "--dir", d]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["model"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["genus2", "kodaira_thurston", "kt_x_s2"]);
    assert_eq!(v["sections"][1]["verdict"], "not-applicable");

    copy_fixtures(dir.path(), &["invalid/wrong_degree.json"]);
    let (_, code) = json(&["verify", "--dir", d]);
    assert_eq!(code, 2);
    copy_fixtures(dir.path(), &["falsify/two_classes.json"]);
    let (v, code) = json(&["verify", "--dir", d]);
    assert_eq!(code, 3);
    assert_eq!(v["sections"].as_array().unwrap().len(), 5);
}

#[test]
fn catalog_show_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["kodaira_thurston", "surface_g2", "s2xs2xs2", "kt_x_s2"] {
        let (v, code) = json(&["catalog", "show", name]);
        assert_eq!(code, 0);
        let path: PathBuf = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(&v["sections"][0]["file"]).unwrap()).unwrap();
        let (a, _) = json(&["filtered", "--all-degrees", path.to_str().unwrap()]);
        let (b, _) = json(&["filtered", "--all-degrees", &format!("@{name}")]);
        assert_eq!(a["sections"], b["sections"], "{name}");
    }
}

#[test]
fn ops_with_verify() {
    let o = symcone(&["verify", "--with-ops", "@torus6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("D: 64x64, skew-symmetric: yes"), "{out}");
    assert!(out.contains("dim ker (∂+∂*)|C^even = 56"), "{out}");
}

#[test]
fn catalog_list() {
    let o = symcone(&["catalog", "list"]);
    let out = stdout(&o);
    for name in ["@point", "@kodaira_thurston", "@kt_x_torus2"] {
        assert!(out.contains(name));
    }
}
