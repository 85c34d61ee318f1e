use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mutvis::format::{read_instance, read_solution, solution_to_json, to_text};
use mutvis::svg::Viewport;
use mutvis_core::geometry::Point;
use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn mutvis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mutvis"))
        .args(args)
        .env_remove("MUTVIS_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn solve_fixture(dir: &TempDir, name: &str) -> String {
    let out_path = p(dir, &format!("{name}.solution.json"));
    let out = mutvis(&["solve", fixture(name).to_str().unwrap(), "-o", &out_path]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    out_path
}

#[test]
fn solve_square() {
    let dir = TempDir::new().unwrap();
    let sol = read_solution(Path::new(&solve_fixture(&dir, "square.json"))).unwrap();
    assert_eq!(sol.steps(), 2);
    assert_eq!(sol.m, 4);
}

#[test]
fn solve_rejects_crossing_and_garbage() {
    let dir = TempDir::new().unwrap();
    let out = mutvis(&[
        "solve",
        fixture("hexagon.json").to_str().unwrap(),
        "-o",
        &p(&dir, "x.json"),
    ]);
    assert_eq!(code(&out), 2);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["hint"].as_str().unwrap().contains("analyze"));

    let bad = p(&dir, "bad.json");
    std::fs::write(&bad, "{ \"polygon\": [[0, 0], ").unwrap();
    assert_eq!(code(&mutvis(&["solve", &bad, "-o", &p(&dir, "y.json")])), 3);

    let spike = p(&dir, "spike.json");
    std::fs::write(
        &spike,
        r#"{"polygon": [[0,0],[4,0],[4,4],[2,4],[2,-2],[0,4]], "S": {"a": [1,1], "b": [1,2]},
            "T": {"a": [3,1], "b": [3,2]}, "robots": [{"start": [1,1], "target": [3,1]}]}"#,
    )
    .unwrap();
    assert_eq!(
        code(&mutvis(&["solve", &spike, "-o", &p(&dir, "z.json")])),
        4
    );
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let square = fixture("square.json");
    let square = square.to_str().unwrap();
    let sol_path = solve_fixture(&dir, "square.json");
    assert_eq!(
        code(&mutvis(&["verify", square, &sol_path, "--samples", "10"])),
        0
    );

    let mut sol = read_solution(Path::new(&sol_path)).unwrap();
    sol.trajectories[0].waypoints[1] = Point::from_ints(5, 9);
    let detour = p(&dir, "detour.json");
    std::fs::write(&detour, to_text(&solution_to_json(&sol))).unwrap();
    let out = mutvis(&["verify", square, &detour, "--samples", "10"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(report["paths_ok"], serde_json::json!([false, true]));

    let other = solve_fixture(&dir, "l_shape.json");
    assert_eq!(code(&mutvis(&["verify", square, &other])), 4);
}

#[test]
fn gen_is_deterministic_and_seed_env_wins() {
    let dir = TempDir::new().unwrap();
    let (a, b, c) = (p(&dir, "a.json"), p(&dir, "b.json"), p(&dir, "c.json"));
    for path in [&a, &b] {
        let out = mutvis(&[
            "gen",
            "--vertices",
            "12",
            "--robots",
            "4",
            "--seed",
            "7",
            "-o",
            path,
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let out = Command::new(env!("CARGO_BIN_EXE_mutvis"))
        .args([
            "gen",
            "--vertices",
            "12",
            "--robots",
            "4",
            "--seed",
            "1",
            "-o",
            &c,
        ])
        .env("MUTVIS_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());

    assert_eq!(
        code(&mutvis(&[
            "gen",
            "--vertices",
            "3",
            "--robots",
            "1",
            "-o",
            &c
        ])),
        5
    );
}

#[test]
fn gen_minimal_and_large_instances_solve() {
    let dir = TempDir::new().unwrap();
    for (m, n, seed) in [("4", "1", "0"), ("4", "1", "9"), ("60", "20", "1")] {
        let inst = p(&dir, "inst.json");
        assert_eq!(
            code(&mutvis(&[
                "gen",
                "--vertices",
                m,
                "--robots",
                n,
                "--seed",
                seed,
                "-o",
                &inst
            ])),
            0
        );
        let parsed = read_instance(Path::new(&inst)).unwrap();
        assert_eq!(parsed.polygon().len().to_string(), m);
        let sol = p(&dir, "sol.json");
        assert_eq!(code(&mutvis(&["solve", &inst, "-o", &sol])), 0);
        assert_eq!(code(&mutvis(&["verify", &inst, &sol])), 0);
    }
}

fn svg_of(args: &[&str]) -> String {
    let out = mutvis(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(args.last().unwrap()).unwrap()
}

fn count(doc: &roxmltree::Document, tag: &str, class: Option<&str>) -> usize {
    doc.descendants()
        .filter(|n| n.has_tag_name(tag) && class.is_none_or(|c| n.attribute("class") == Some(c)))
        .count()
}

#[test]
fn render_square_with_and_without_solution() {
    let dir = TempDir::new().unwrap();
    let square = fixture("square.json");
    let sol = solve_fixture(&dir, "square.json");
    let svg_path = p(&dir, "square.svg");
    let text = svg_of(&[
        "render",
        square.to_str().unwrap(),
        "--solution",
        &sol,
        "-o",
        &svg_path,
    ]);
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(count(&doc, "polygon", None), 1);
    assert_eq!(count(&doc, "polyline", Some("trajectory")), 2);
    assert_eq!(count(&doc, "line", Some("sweep")), 3);
    assert_eq!(
        doc.root_element().attribute("viewBox"),
        Some("0 0 1000 1000")
    );

    let text = svg_of(&["render", square.to_str().unwrap(), "-o", &svg_path]);
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(count(&doc, "polygon", None), 1);
    assert_eq!(count(&doc, "polyline", None), 0);
    assert_eq!(count(&doc, "line", Some("start-segment")), 1);
    assert_eq!(count(&doc, "line", Some("target-segment")), 1);
    assert_eq!(count(&doc, "circle", Some("start")), 2);
    assert_eq!(count(&doc, "circle", Some("target")), 2);
}

#[test]
fn render_pinched_trajectories_meet_at_pinch() {
    let dir = TempDir::new().unwrap();
    let inst_path = fixture("pinched.json");
    let inst = read_instance(&inst_path).unwrap();
    let sol = solve_fixture(&dir, "pinched.json");
    let svg_path = p(&dir, "pinched.svg");
    let text = svg_of(&[
        "render",
        inst_path.to_str().unwrap(),
        "--solution",
        &sol,
        "-o",
        &svg_path,
    ]);
    let doc = roxmltree::Document::parse(&text).unwrap();
    let (px, py) = Viewport::fit(inst.polygon().vertices()).map(&Point::from_ints(9, 6));
    let lines: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .collect();
    assert_eq!(lines.len(), 3);
    for l in lines {
        let hits = l.attribute("points").unwrap().split_whitespace().any(|xy| {
            let (x, y) = xy.split_once(',').unwrap();
            let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
            (x - px).abs() < 1e-3 && (y - py).abs() < 1e-3
        });
        assert!(hits);
    }
}

#[test]
fn analyze_outcomes() {
    let dir = TempDir::new().unwrap();
    let out_path = p(&dir, "analysis.json");
    let run = |name: &str| {
        let out = mutvis(&[
            "analyze",
            fixture(name).to_str().unwrap(),
            "--angular-steps",
            "64",
            "-o",
            &out_path,
        ]);
        (code(&out), std::fs::read_to_string(&out_path).ok())
    };
    let (c, text) = run("stuck.json");
    assert_eq!(c, 0);
    let v: Value = serde_json::from_str(&text.unwrap()).unwrap();
    assert_eq!(v["rotating_line"][0]["outcome"], "Stuck");
    assert_eq!(
        v["rotating_line"][0]["witness"].as_array().unwrap().len(),
        2
    );
    assert_eq!(v["critical_points"]["y_before_x"], true);
    assert_eq!(v["critical_points"]["y_prime_before_x_prime"], true);

    let (c, text) = run("convex_crossing.json");
    assert_eq!(c, 0);
    let v: Value = serde_json::from_str(&text.unwrap()).unwrap();
    assert_eq!(v["rotating_line"][0]["outcome"], "Completed");
    assert_eq!(v["partition"]["R1"], serde_json::json!([0]));

    std::fs::remove_file(&out_path).unwrap();
    assert_eq!(run("square.json").0, 2);
}
