use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn trigon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigon")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn fermat_quintic_is_decided_false() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "fermat.curve", "# Fermat\nf = x^5 + y^5 + z^5\n");
    let out = trigon(&["decide", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["trigonal"], false);
    assert_eq!(r["case"], "Veronese");
    assert_eq!(r["lie_dim"], 8);
}

#[test]
fn cusp_is_unsupported() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "cusp.curve", "f = y^2*z - x^3\n");
    let out = trigon(&["decide", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("non-ordinary singularity"), "{}", stderr(&out));
}

#[test]
fn low_genus_is_unsupported() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "cubic.curve", "f = x^3 + y^3 + z^3\n");
    let out = trigon(&["decide", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("below 3"));
}

#[test]
fn parse_errors_report_location() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.curve", "# header\nf = x^4 + * y\n");
    let out = trigon(&["decide", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = trigon(&["decide", "/nonexistent/curve"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn genus_three_with_point() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "klein.curve", "f = x^3*y + y^3*z + z^3*x\n");
    let out = trigon(&["decide", &path, "--point", "(0:0:1)"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["case"], "Genus3");
    assert_eq!(r["map_available"], true);
    assert_eq!(r["verified_degree"], 3);

    let out = trigon(&["decide", &path]);
    let r = json(&out);
    assert_eq!(r["trigonal"], true);
    assert_eq!(r["map_available"], false);

    let out = trigon(&["decide", &path, "--point", "(1:1:1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not on the curve"));
}

#[test]
fn json_out_matches_stdout_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let curve = dir.path().join("p5.curve");
    let gen = trigon(&["generate", "--method", "projection", "5", "--seed", "4", "--out", curve.to_str().unwrap()]);
    assert_eq!(gen.status.code(), Some(0), "{}", stderr(&gen));
    let j1 = dir.path().join("r1.json");
    let j2 = dir.path().join("r2.json");
    let a = trigon(&["decide", curve.to_str().unwrap(), "--seed", "7", "--json-out", j1.to_str().unwrap()]);
    let b = trigon(&["decide", curve.to_str().unwrap(), "--seed", "7", "--json-out", j2.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    let t1 = fs::read_to_string(&j1).unwrap();
    assert_eq!(t1, fs::read_to_string(&j2).unwrap());
    assert_eq!(t1.trim(), stdout(&b).trim());
    let r: serde_json::Value = serde_json::from_str(&t1).unwrap();
    assert_eq!(r["case"], "Scroll");
    assert_eq!(r["seed"], 7);
    assert_eq!(r["map"]["fibers"]["degree"], 3);
}

#[test]
fn timings_only_on_request() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "fermat.curve", "f = x^5 + y^5 + z^5\n");
    assert!(json(&trigon(&["decide", &path]))["timings"].is_null());
    assert!(json(&trigon(&["decide", &path, "--timings"]))["timings"]["adjoints"].is_number());
}

fn generated(method: &str, params: &str, seed: &str) -> (Output, String) {
    let out = trigon(&["generate", "--method", method, params, "--seed", seed]);
    let text = stdout(&out);
    (out, text)
}

#[test]
fn generate_projection_genus_seven() {
    let (out, text) = generated("projection", "6", "1");
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("# seed: 1"));
    assert!(text.contains("# genus: 7"));
    assert!(text.contains("sing = (0:0:1) mult 3"));
}

#[test]
fn generate_method_one_genus_four() {
    let (out, text) = generated("m1", "3", "2");
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("# genus: 4"));
}

#[test]
fn generated_files_round_trip_through_decide() {
    let dir = TempDir::new().unwrap();
    let (_, text) = generated("m1", "3", "5");
    let path = write(&dir, "m1.curve", &text);
    let r = json(&trigon(&["decide", &path]));
    assert_eq!(r["genus"], 4);
    assert_eq!(r["trigonal"], true);
}

#[test]
fn generation_failure_exits_two() {
    let out = trigon(&["generate", "--method", "m2", "4,2", "--height", "2", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("generation failed"));
}

#[test]
fn bad_generator_params_exit_two() {
    let out = trigon(&["generate", "--method", "m2", "4,3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = trigon(&["generate", "--method", "nodal", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

const HEADER: &str = "generator,params,bit_height,genus,deg,seconds,accepted,trigonal,agreement";

fn bench(spec: &str, seed: &str) -> Vec<Vec<String>> {
    let dir = TempDir::new().unwrap();
    let spec_path = write(&dir, "spec.txt", spec);
    let out_path = dir.path().join("out.csv");
    let out = trigon(&["bench", &spec_path, "--seed", seed, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    read_csv(&out_path)
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn empty_spec_gives_header_only() {
    assert!(bench("# nothing\n", "0").is_empty());
}

#[test]
fn bench_rows_are_in_spec_order_and_reproducible() {
    let spec = "method=m1 params=3 n=3 height=5\nmethod=projection params=5 n=3 height=3\n";
    let rows = bench(spec, "11");
    assert_eq!(rows.len(), 6);
    assert!(rows[..3].iter().all(|r| r[0] == "m1"));
    assert!(rows[3..].iter().all(|r| r[0] == "projection"));
    for r in rows.iter().filter(|r| r[6] == "true") {
        assert_eq!(r[7], "true");
        assert_eq!(r[8], "true");
    }
    for r in rows[..3].iter().filter(|r| r[6] == "true") {
        assert_eq!(r[3], "4");
    }
    let again = bench(spec, "11");
    let drop_seconds = |rs: &[Vec<String>]| rs.iter().map(|r| [&r[..5], &r[6..]].concat()).collect::<Vec<_>>();
    assert_eq!(drop_seconds(&rows), drop_seconds(&again));
}

#[test]
fn bad_spec_exits_two() {
    let dir = TempDir::new().unwrap();
    let spec_path = write(&dir, "spec.txt", "method=m1 params=3 n=many height=5\n");
    let out = trigon(&["bench", &spec_path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"));
}
