use std::process::{Command, Output};

use cheeger_core::domains::{build_domain, Family};
use cheeger_core::numerics::CheegerResult;
use cheeger_core::revolve::RevolveOptions;
use serde_json::Value;

fn cheeger(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cheeger"))
        .args(args)
        .env_remove("CHEEGER_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&cheeger(args))).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("cheeger-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn cheeger_values() {
    let v = json(&["cheeger", "cylinder", "--n", "3", "--l", "1", "--r", "1"]);
    assert!((v["h"].as_f64().unwrap() - 3.72474).abs() < 1e-5);
    assert_eq!(v["certificate_pass"], true);
    let v = json(&["cheeger", "cone", "--l", "1", "--theta", "0.5235987756"]);
    assert!((v["h"].as_f64().unwrap() - 7.85898).abs() < 1e-5);
    let v = json(&["cheeger", "double-cone", "--l", "1", "--r", "1", "--theta-deg", "60"]);
    assert!((v["h"].as_f64().unwrap() - 3.00582).abs() < 1e-5);
}

#[test]
fn json_round_trip() {
    let v = json(&["cheeger", "double-cone", "--l", "1.8", "--r", "3.2", "--theta-arcsin", "0.8"]);
    let r: CheegerResult = serde_json::from_value(v["result"].clone()).unwrap();
    let (_, _, ratio) = r.candidate.recompute(&RevolveOptions::default()).unwrap();
    assert!((ratio - v["h"].as_f64().unwrap()).abs() < 1e-9);
}

#[test]
fn csv_row() {
    let out = stdout(&cheeger(&["--format", "csv", "cheeger", "cylinder", "--l", "2", "--r", "1", "--n", "4"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "family,l,r,theta,A,B,C,D,n,H_opt,h,structure,certificate_pass");
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells.len(), 13);
    assert!((cells[9].parse::<f64>().unwrap() - 1.24549).abs() < 1e-5);
}

#[test]
fn output_is_deterministic() {
    let args = ["cheeger", "cone", "--l", "3", "--theta-arcsin", "0.8"];
    assert_eq!(stdout(&cheeger(&args)), stdout(&cheeger(&args)));
}

#[test]
fn tables() {
    let out = stdout(&cheeger(&["tables"]));
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 26);
    let find = |family: &str, l: &str, r: &str, n: &str| {
        rows.iter()
            .find(|c| c[0] == family && c[1] == l && c[2] == r && c[8] == n)
            .unwrap()
            .clone()
    };
    let h = |c: &[&str]| c[10].parse::<f64>().unwrap();
    assert!((h(&find("cylinder", "1", "1", "30")) - 29.7175).abs() < 1e-3);
    assert!((h(&find("cylinder", "2", "1", "10")) - 9.51714).abs() < 1e-4);
    let dc = rows
        .iter()
        .find(|c| c[0] == "double-cone" && (c[3].parse::<f64>().unwrap() - 0.4 * std::f64::consts::PI).abs() < 1e-12)
        .unwrap();
    assert!((h(dc) - 2.38303).abs() < 1e-4);
    assert!(rows.iter().all(|c| c[12] == "true"));
    assert!(rows.iter().all(|c| c[15].parse::<f64>().unwrap().abs() < 1e-3));
}

#[test]
fn sweep_near_third_transition() {
    let csv = tmp("sweep.csv");
    let v = json(&[
        "sweep",
        "--from",
        "1.10",
        "--to",
        "1.14",
        "--step",
        "0.02",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    let crit = v["critical"].as_array().unwrap();
    assert_eq!(crit.len(), 1);
    assert!((crit[0]["value"].as_f64().unwrap() - 1.1216).abs() < 5e-3);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cheeger(args).status.code().unwrap();
    assert_eq!(code(&["sweep", "--from", "1.0", "--to", "0.5"]), 1);
    assert_eq!(code(&["cheeger", "cone", "--l", "1"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["cheeger", "cylinder", "--l", "1", "--r", "-1"]), 2);
    assert_eq!(code(&["cheeger", "cone", "--l", "1", "--theta", "2"]), 2);
    assert_eq!(code(&["classify", "--H", "1", "--T", "0.3"]), 2);
    assert_eq!(code(&["plot", "-o", "/nonexistent/dir/x.svg", "ball"]), 3);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn tolerance_from_environment() {
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_cheeger"))
            .args(["cheeger", "cylinder", "--l", "1", "--r", "1"])
            .env("CHEEGER_TOL", tol)
            .output()
            .unwrap()
    };
    let v: Value = serde_json::from_slice(&run("1e-8").stdout).unwrap();
    assert!((v["h"].as_f64().unwrap() - 3.72474).abs() < 1e-5);
    assert_eq!(run("-1").status.code(), Some(1));
}

#[test]
fn classify_and_profile() {
    let v = json(&["classify", "--n", "5", "--H", "1", "--T", "0.10546875"]);
    assert_eq!(v["class"], "Cylinder");
    let pts = json(&["profile", "--H", "1", "--T", "0", "--samples", "51"]);
    let pts = pts.as_array().unwrap();
    assert_eq!(pts.len(), 51);
    for p in pts {
        let (x, y) = (p["x"].as_f64().unwrap(), p["y"].as_f64().unwrap());
        assert!((x.hypot(y) - 1.0).abs() < 1e-6);
    }
}

fn parse_path(d: &str) -> Vec<Vec<[f64; 2]>> {
    d.split('M')
        .filter(|s| !s.trim().is_empty())
        .map(|sub| {
            let nums: Vec<f64> = sub
                .split(|c: char| c == 'L' || c == 'Z' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().unwrap())
                .collect();
            nums.chunks(2).map(|c| [c[0], c[1]]).collect()
        })
        .collect()
}

fn filled_paths(svg: &str) -> Vec<String> {
    let doc = roxmltree::Document::parse(svg).unwrap();
    doc.descendants()
        .filter(|n| n.has_tag_name("path") && n.attribute("fill").is_some_and(|f| f != "none"))
        .map(|n| n.attribute("d").unwrap().to_string())
        .collect()
}

#[test]
fn plot_cylinder() {
    let out = tmp("z31.svg");
    stdout(&cheeger(&["plot", "-o", out.to_str().unwrap(), "--scale", "50", "cylinder", "--l", "3", "--r", "1"]));
    let svg = std::fs::read_to_string(out).unwrap();
    assert_eq!(filled_paths(&svg).len(), 1);
}

#[test]
fn plot_delaunay_family() {
    let out = tmp("family.svg");
    stdout(&cheeger(&[
        "plot",
        "-o",
        out.to_str().unwrap(),
        "delaunay",
        "--n",
        "5",
        "--H",
        "1",
        "--T=-0.2,0,0.05,0.1",
    ]));
    let svg = std::fs::read_to_string(out).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("polyline")).count(), 4);
}

#[test]
fn plot_hourglass_layout() {
    let out = tmp("hourglass.svg");
    stdout(&cheeger(&[
        "plot", "-o", out.to_str().unwrap(), "hourglass", "--a", "3", "--b", "2", "--c", "0.3", "--d", "0.6",
    ]));
    let svg = std::fs::read_to_string(out).unwrap();
    let paths = filled_paths(&svg);
    assert_eq!(paths.len(), 1);
    let pts: Vec<[f64; 2]> = parse_path(&paths[0]).concat();
    let domain = build_domain(
        Family::Hourglass {
            a: 3.0,
            b: 2.0,
            c: 0.3,
            d: 0.6,
        },
        3,
    )
    .unwrap();
    // Coordinates are printed with six decimals.
    let eps = 2e-6;
    assert!(pts.iter().all(|p| p[1] <= domain.height_at(p[0]) + eps));
    assert!(pts.iter().any(|p| (p[0] - 3.0).abs() < eps && p[1] > 0.5));
    assert!(pts.iter().any(|p| (p[0] + 3.0).abs() < eps && p[1] > 0.5));
    // The region runs through the reflex corner and along the slope.
    assert!(pts.iter().any(|p| (p[0] - 0.3).abs() < eps && (p[1] - 0.6).abs() < eps));
    let on_slope = |p: &[f64; 2]| p[0] > 0.5 && p[0] < 2.9 && (p[1] - domain.height_at(p[0])).abs() < eps;
    assert!(pts.iter().any(on_slope));
}
