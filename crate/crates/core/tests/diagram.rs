use crown_core::diagram::DiagramError;
use crown_core::{parse_diagram, Chord, Corner, Labeling};

const TORUS: &str = include_str!("fixtures/torus.diagram");
const SPHERE: &str = include_str!("fixtures/sphere_bigons.diagram");

#[test]
fn torus_configuration() {
    let d = parse_diagram(TORUS).unwrap();
    assert_eq!(d.crossing_count(), 1);
    assert_eq!(d.genus(), 1);
    assert_eq!(d.faces().len(), 1);
    let corners = d.face(0).corners();
    assert_eq!(corners.len(), 4);
    assert!(corners.iter().all(|c| c.crossing == 0));
    let report = d.check_allowable();
    assert_eq!(report.revisiting_face, Some((0, 0)));
    assert!(!report.is_allowable());
}

#[test]
fn declared_genus_is_checked() {
    let text = TORUS.replace("curves 2", "genus 2\ncurves 2");
    let err = parse_diagram(&text).unwrap_err();
    assert!(err.to_string().starts_with("genus mismatch: computed 1"), "{err}");
}

#[test]
fn both_strands_on_one_curve_rejected() {
    let text = "stacked-diagram v1\ncurves 1\ncrossing x1\ncurve 1: x1.0 x1.1\n";
    let err = parse_diagram(text).unwrap_err();
    assert!(matches!(err, DiagramError::StrandCurvesEqual { .. }));
    assert!(err
        .to_string()
        .contains("strands at crossing must be perpendicular pairs {0,2},{1,3}"));
}

#[test]
fn port_reuse_and_open_traversal() {
    let reused = "stacked-diagram v1\ncurves 2\ncrossing x1\ncurve 1: x1.0\ncurve 2: x1.2\n";
    assert!(matches!(parse_diagram(reused), Err(DiagramError::PortReused { .. })));
    let open = "stacked-diagram v1\ncurves 2\ncrossing x1 x2\ncurve 1: x1.0\ncurve 2: x1.1\n";
    assert!(matches!(parse_diagram(open), Err(DiagramError::OpenTraversal { .. })));
}

#[test]
fn syntax_errors_carry_positions() {
    let text = "stacked-diagram v1\ncurves 2\ncrossing x1\ncurve 1: x1.7\ncurve 2: x1.1\n";
    match parse_diagram(text).unwrap_err() {
        DiagramError::Syntax { line, column, .. } => assert_eq!((line, column), (4, 13)),
        e => panic!("unexpected {e}"),
    }
    let text = "stacked-diagram v2\n";
    assert!(matches!(parse_diagram(text), Err(DiagramError::Syntax { line: 1, .. })));
    let text = "stacked-diagram v1\ncurves 2\ncrossing x1\ncurve 1: y9.0\ncurve 2: x1.1\n";
    match parse_diagram(text).unwrap_err() {
        DiagramError::Syntax { line, column, message } => {
            assert_eq!((line, column), (4, 10));
            assert!(message.contains("unknown crossing"));
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn sphere_has_four_bigons() {
    let d = parse_diagram(SPHERE).unwrap();
    assert_eq!(d.genus(), 0);
    assert_eq!(d.faces().len(), 4);
    assert!(d.faces().iter().all(|f| f.len() == 2));
    let report = d.check_allowable();
    assert!(report.faces_embedded());
    assert_eq!(report.bad_pairs, vec![(0, 2), (1, 2)]);
}

#[test]
fn serialization_round_trips() {
    for text in [TORUS, SPHERE] {
        let d = parse_diagram(text).unwrap();
        let s = d.to_text();
        let again = parse_diagram(&s).unwrap();
        assert_eq!(again, d);
        assert_eq!(again.to_text(), s);
    }
}

#[test]
fn chord_counts() {
    assert_eq!(parse_diagram(TORUS).unwrap().chords().len(), 2);
    assert_eq!(parse_diagram(SPHERE).unwrap().chords().len(), 4);
}

#[test]
fn active_chord_examples() {
    let d = parse_diagram(SPHERE).unwrap();
    // With two curves, labeling 0 activates FORWARD chords, labeling 1 BACKWARD.
    assert_eq!(d.active_chord(0, Labeling(0)), Chord::forward(0));
    assert_eq!(d.active_chord(0, Labeling(1)), Chord::backward(0));
}

#[test]
fn quadrant_signs_alternate_and_flip() {
    let d = parse_diagram(SPHERE).unwrap();
    for x in 0..d.crossing_count() {
        for l in 0..2 {
            let signs: Vec<i8> = (0..4)
                .map(|q| d.quadrant_sign(Corner { crossing: x, quadrant: q }, Labeling(l)))
                .collect();
            assert!(signs == vec![1, -1, 1, -1] || signs == vec![-1, 1, -1, 1]);
            assert_eq!(signs.iter().map(|&s| i32::from(s)).sum::<i32>(), 0);
            let other: Vec<i8> = (0..4)
                .map(|q| d.quadrant_sign(Corner { crossing: x, quadrant: q }, Labeling(1 - l)))
                .collect();
            assert_eq!(other, signs.iter().map(|s| -s).collect::<Vec<_>>());
        }
    }
}

#[test]
fn salient_chords_require_a_crossing() {
    let d = parse_diagram(TORUS).unwrap();
    let chords = d.salient_chords().unwrap();
    assert_eq!(chords, vec![Chord::forward(0), Chord::backward(0)]);
    let d = parse_diagram(SPHERE).unwrap();
    assert!(matches!(
        d.salient_chords(),
        Err(DiagramError::AmbiguousConsecutiveCrossing(1, 2, 2))
    ));
}
