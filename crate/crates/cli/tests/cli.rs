use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use crown_core::curves::sample::random_system;
use crown_core::moves::{random_move, MoveCommand, MoveKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TORUS: &str = include_str!("../../core/tests/fixtures/torus.diagram");
const SPHERE: &str = include_str!("../../core/tests/fixtures/sphere_bigons.diagram");

fn crown(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crown")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// A sampled diagram with a triangle that admits R3, and that move.
fn with_triangle() -> (String, MoveCommand, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    loop {
        let Ok(s) = random_system(2, 4, &mut rng, 50) else { continue };
        if let Some((cmd, e)) = random_move(&s.diagram, &[MoveKind::R3], &mut rng, 50) {
            return (s.diagram.to_text(), cmd, e.to_text());
        }
    }
}

#[test]
fn check_reports_torus() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.diagram", TORUS);
    let o = crown(&["check", &p]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("genus: 1"));
    assert!(out.contains("allowable: no"));
    assert!(out.contains("sha256:"));
}

#[test]
fn malformed_input_exits_one_with_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.diagram", "stacked-diagram v1\ncurves two\n");
    let o = crown(&["check", &p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(crown(&["check", "/nonexistent/x.diagram"]).status.code(), Some(1));
    assert_eq!(crown(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn gradings_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "s.diagram", SPHERE);
    let (a, b) = (dir.path().join("a.eq"), dir.path().join("b.eq"));
    for out in [&a, &b] {
        assert!(crown(&["gradings", &p, "-o", out.to_str().unwrap()]).status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("grading-system v1"));
    assert_eq!(text.lines().filter(|l| l.starts_with("eq ")).count(), 8);
}

#[test]
fn compare_self_and_r3_image() {
    let dir = tempfile::tempdir().unwrap();
    let (d, _, e) = with_triangle();
    let p = write(dir.path(), "d.diagram", &d);
    let q = write(dir.path(), "e.diagram", &e);
    let o = crown(&["compare", &p, &p]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: EQUAL\nrotation: 0"));
    let o = crown(&["compare", &p, &q]);
    assert!(stdout(&o).contains("verdict: EQUAL"), "{}", stdout(&o));
}

#[test]
fn move_then_inverse_returns_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let (d, cmd, e) = with_triangle();
    let p = write(dir.path(), "d.diagram", &d);
    let s = write(dir.path(), "m.txt", &format!("{cmd}\n"));
    let out = dir.path().join("out.diagram");
    assert!(crown(&["move", &p, &s, "-o", out.to_str().unwrap()]).status.success());
    let moved = fs::read_to_string(&out).unwrap();
    assert_eq!(moved, e);
    // The moved triangle carries the same crossings; moving it again undoes it.
    let de = crown_core::parse_diagram(&moved).unwrap();
    let dd = crown_core::parse_diagram(&d).unwrap();
    let MoveCommand::R3 { face } = cmd else { unreachable!() };
    let names: Vec<&str> = dd.face(face).corners().iter().map(|c| dd.name(c.crossing)).collect();
    let back = (0..de.faces().len())
        .find(|&g| de.face(g).len() == 3 && de.face(g).corners().iter().all(|c| names.contains(&de.name(c.crossing))))
        .unwrap();
    let s2 = write(dir.path(), "back.txt", &format!("move r3 face=f{}\n", back + 1));
    let o = crown(&["move", out.to_str().unwrap(), &s2]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), d);
    let bad = write(dir.path(), "bad.txt", "move r3 face=f999\n");
    assert_eq!(crown(&["move", &p, &bad]).status.code(), Some(1));
}

#[test]
fn render_is_well_formed_and_read_only() {
    let dir = tempfile::tempdir().unwrap();
    let (d, _, _) = with_triangle();
    let p = write(dir.path(), "d.diagram", &d);
    let svg = dir.path().join("d.svg");
    assert!(crown(&["render", &p, "-o", svg.to_str().unwrap()]).status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("<circle").count(), text.matches("</circle>").count());
    assert_eq!(fs::read_to_string(&p).unwrap(), d);
    let curves = write(dir.path(), "c.plc", &crown_core::curves::sample::chain_file(2).to_text());
    let o = crown(&["render", &curves]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("<path"));
}

#[test]
fn unknown_knot_lists_presets() {
    let o = crown(&["pseudocoronation", "--knot", "3_1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("7_6") && err.contains("10_133"), "{err}");
}

#[test]
fn pseudocoronation_feeds_salient() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.diagram");
    let curves = dir.path().join("p.plc");
    let o = crown(&[
        "pseudocoronation",
        "--knot",
        "7_6",
        "-o",
        out.to_str().unwrap(),
        "--curves",
        curves.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = stdout(&o);
    assert!(report.contains("curves: 22"));
    assert!(report.contains("genus: 3"));
    let o = crown(&["check", out.to_str().unwrap()]);
    assert!(stdout(&o).contains("genus: 3"));
    let o = crown(&["salient", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("integer solutions: yes"));
    assert!(crown_core::curves::parse_curve_file(&fs::read_to_string(&curves).unwrap()).is_ok());
}
