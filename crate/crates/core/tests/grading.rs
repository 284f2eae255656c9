use crown_core::grading::{build_grading_system, GradingSystem};
use crown_core::lattice::solve_sparse;
use crown_core::parse_diagram;
use num_bigint::BigInt;

const SPHERE: &str = include_str!("fixtures/sphere_bigons.diagram");

#[test]
fn sphere_system_matches_box_enumeration() {
    let d = parse_diagram(SPHERE).unwrap();
    let gs = build_grading_system(&d);
    assert_eq!(gs.equations.len(), 8);
    assert_eq!(gs.n_vars(), 4);
    // Box oracle: enumerate [-4, 4]^4 against the emitted equations.
    let mut found = Vec::new();
    let range = -4i64..=4;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for e in range.clone() {
                    let x = [a, b, c, e];
                    let ok = gs.equations.iter().all(|eq| {
                        eq.terms.iter().map(|&(v, k)| k * x[v]).sum::<i64>() == eq.rhs
                    });
                    if ok {
                        found.push(x);
                    }
                }
            }
        }
    }
    // Every bigon has one positive and one negative corner, so the system only
    // ties the two FORWARD chords together and the two BACKWARD chords together.
    assert_eq!(found.len(), 81);
    assert!(found.iter().all(|x| x[0] == x[2] && x[1] == x[3]));
    assert!(found.contains(&[1, 1, 1, 1]));
    let sol = solve_sparse(&gs.to_sparse()).unwrap();
    let l = sol.lattice().unwrap();
    assert_eq!(l.rank(), 2);
    for x in &found {
        assert!(l.contains(&x.map(BigInt::from)));
    }
    assert!(!l.contains(&[1, 1, 2, 1].map(BigInt::from)));
}

#[test]
fn bigon_equation_text() {
    let d = parse_diagram(SPHERE).unwrap();
    let text = build_grading_system(&d).emit();
    let first = text.lines().nth(2).unwrap();
    assert_eq!(first, "eq 0/f1: +cx1f -cx2f = 0");
    assert!(text.starts_with("grading-system v1\nvariables 4: cx1f cx1b cx2f cx2b\n"));
}

#[test]
fn emit_parse_round_trip() {
    let d = parse_diagram(SPHERE).unwrap();
    let gs = build_grading_system(&d);
    let text = gs.emit();
    let back = GradingSystem::parse(&text).unwrap();
    assert_eq!(back, gs);
    assert_eq!(back.emit(), text);
}

#[test]
fn cancelled_equation_keeps_audit_form() {
    let text = "grading-system v1\nvariables 2: cx1f cx1b\neq 0/f1: 0 = 0\neq 1/f1: +2cx1f -cx1b = 1\n";
    let gs = GradingSystem::parse(text).unwrap();
    assert!(gs.equations[0].is_trivial());
    assert_eq!(gs.equations[1].terms, vec![(0, 2), (1, -1)]);
    assert_eq!(gs.emit(), text);
}
