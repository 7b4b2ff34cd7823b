//! End-to-end tests of the command-line interface and its exit-code
//! contract: 0 success, 1 verification failure, 2 usage, 3 domain error.

use std::process::{Command, Output};

fn planar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_square(dir: &std::path::Path) -> std::path::PathBuf {
    let path = dir.join("square.json");
    std::fs::write(&path, r#"{"outer": [[0,0],[1,0],[1,1],[0,1]]}"#).unwrap();
    path
}

#[test]
fn gallery_writes_json_and_svg() {
    let dir = std::env::temp_dir().join("planar-cli-gallery");
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("j.json");
    let svg = dir.join("j.svg");
    let out = planar(&[
        "gallery",
        "bad-arc",
        "--depth",
        "6",
        "--out",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(text.contains("\"kind\":\"bad-arc\""));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn unknown_gallery_kind_is_usage_error() {
    let out = planar(&["gallery", "does-not-exist"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = planar(&["verify", "does-not-exist"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suite_passes() {
    let out = planar(&["verify", "tails"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"));
}

#[test]
fn geodesic_on_square_matches_library_exactly() {
    let dir = std::env::temp_dir().join("planar-cli-geo");
    std::fs::create_dir_all(&dir).unwrap();
    let setfile = write_square(&dir);
    let out = planar(&[
        "geodesic",
        setfile.to_str().unwrap(),
        "--from",
        "0,0",
        "--to",
        "1,1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let set: planar::planeset::PlaneSet =
        serde_json::from_str(&std::fs::read_to_string(&setfile).unwrap()).unwrap();
    let lib = planar::geodesic::geodesic_distance(
        &set,
        planar::geom::Point::new(0.0, 0.0),
        planar::geom::Point::new(1.0, 1.0),
    )
    .unwrap();
    // the CLI is a thin wrapper: bit-for-bit equality with the library
    assert_eq!(value["length"].as_f64().unwrap(), lib.length);

    // deterministic output: a second run produces identical bytes
    let again = planar(&[
        "geodesic",
        setfile.to_str().unwrap(),
        "--from",
        "0,0",
        "--to",
        "1,1",
    ]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn outside_point_is_domain_error() {
    let dir = std::env::temp_dir().join("planar-cli-geo3");
    std::fs::create_dir_all(&dir).unwrap();
    let setfile = write_square(&dir);
    let out = planar(&[
        "geodesic",
        setfile.to_str().unwrap(),
        "--from",
        "0,0",
        "--to",
        "3,3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn crossed_square_report_flips_under_hull() {
    let dir = std::env::temp_dir().join("planar-cli-report");
    std::fs::create_dir_all(&dir).unwrap();
    let setfile = dir.join("crossed.json");
    std::fs::write(
        &setfile,
        r#"{"kind":"crossed-square","params":{"y":{"rule":"geometric","ratio":0.5}},"depth":9}"#,
    )
    .unwrap();
    let out = planar(&[
        "report",
        setfile.to_str().unwrap(),
        "--probes",
        "0.5,0",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report["verdict"], "incomplete-certified");

    // the filled hull of the same construction is a plain square
    let set: planar::planeset::PlaneSet =
        serde_json::from_str(&std::fs::read_to_string(&setfile).unwrap()).unwrap();
    let hull = planar::planeset::hull(&set).unwrap();
    let hullfile = dir.join("hull.json");
    std::fs::write(&hullfile, serde_json::to_string(&hull).unwrap()).unwrap();
    let out = planar(&[
        "report",
        hullfile.to_str().unwrap(),
        "--probes",
        "0.5,0",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report["verdict"], "no-divergence-found");
}

#[test]
fn report_output_is_deterministic() {
    let dir = std::env::temp_dir().join("planar-cli-det");
    std::fs::create_dir_all(&dir).unwrap();
    let setfile = dir.join("dent.json");
    std::fs::write(
        &setfile,
        r#"{"kind":"dented-square","params":{"r":{"rule":"sqrt-depth"},"s":{"rule":"geometric","ratio":0.25}},"depth":8}"#,
    )
    .unwrap();
    let a = planar(&["report", setfile.to_str().unwrap(), "--probes", "0,0"]);
    let b = planar(&["report", setfile.to_str().unwrap(), "--probes", "0,0"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&a.stdout)).unwrap();
    assert_eq!(report["verdict"], "incomplete-certified");
}
