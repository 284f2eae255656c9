use crown_core::curves::geom::ratio;
use crown_core::curves::pseudo::{Monodromy, BASE_CURVES};
use crown_core::curves::sample::{chain_file, random_system};
use crown_core::curves::{
    dehn_twist, find_transversal_arc, intersection_count, minimal_position, minimal_position_seeded, parse_curve_file,
    respace, to_stacked_diagram, tube_substitute, CurveError, PlCurve, TwistWord,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn counts(curves: &[PlCurve]) -> Vec<Vec<usize>> {
    curves
        .iter()
        .map(|a| curves.iter().map(|b| if a.vertices == b.vertices { 0 } else { intersection_count(a, b).unwrap() }).collect())
        .collect()
}

#[test]
fn base_file_round_trips() {
    let f = parse_curve_file(BASE_CURVES).unwrap();
    assert_eq!(f.model.genus(), 2);
    assert_eq!(f.curves.len(), 5);
    assert_eq!(parse_curve_file(&f.to_text()).unwrap(), f);
}

#[test]
fn chains_meet_in_a_path() {
    for g in 1..=4 {
        let f = chain_file(g);
        let n = f.curves.len();
        let m = counts(&f.curves);
        for i in 0..n {
            for j in 0..n {
                let want = usize::from(i.abs_diff(j) == 1);
                assert_eq!(m[i][j], want, "genus {g}: {} vs {}", f.curves[i].name, f.curves[j].name);
            }
        }
        let emb = to_stacked_diagram(&f.model, &f.curves).unwrap();
        assert_eq!(emb.diagram.genus(), g);
        assert_eq!(emb.diagram.crossing_count(), n - 1);
    }
}

#[test]
fn twisting_a_pushoff_about_its_neighbour() {
    // i(t_a(b), b) = i(a, b)^2 and i(t_a(b), a) = i(a, b).
    let f = chain_file(2);
    let (a, b) = (&f.curves[0], &f.curves[1]);
    let mut tw = dehn_twist(&f.model, a, &b.offset(&ratio(1, 8)), 1).unwrap();
    tw.name = "tw".into();
    let sys = minimal_position(&f.model, &[a.clone(), b.clone(), tw]).unwrap();
    assert_eq!(intersection_count(&sys[2], &sys[1]).unwrap(), 1);
    assert_eq!(intersection_count(&sys[2], &sys[0]).unwrap(), 1);
}

#[test]
fn twist_and_untwist_restore_counts() {
    let f = chain_file(2);
    let c = &f.curves[2];
    for (k, t) in f.curves.iter().enumerate() {
        if t.vertices == c.vertices || intersection_count(c, t).unwrap() == 0 {
            continue;
        }
        for sign in [1, -1] {
            let there = dehn_twist(&f.model, c, t, sign).unwrap();
            let back = dehn_twist(&f.model, c, &there, -sign).unwrap();
            let mut sys = f.curves.clone();
            sys[k] = back;
            let m = minimal_position(&f.model, &sys).unwrap();
            assert_eq!(counts(&m), counts(&f.curves), "{} sign {sign}", t.name);
        }
    }
}

#[test]
fn disjoint_twist_is_the_identity() {
    let f = chain_file(3);
    let (m1, n1) = (&f.curves[0], &f.curves[2]);
    assert_eq!(intersection_count(m1, n1).unwrap(), 0);
    assert_eq!(dehn_twist(&f.model, m1, n1, 1).unwrap().vertices, n1.vertices);
    assert_eq!(dehn_twist(&f.model, n1, m1, -1).unwrap().vertices, m1.vertices);
}

#[test]
fn reduction_order_does_not_matter() {
    let f = chain_file(2);
    let c = &f.curves[1];
    let t = &f.curves[2];
    let there = dehn_twist(&f.model, c, t, 1).unwrap();
    let back = dehn_twist(&f.model, c, &there, -1).unwrap();
    let mut sys = f.curves.clone();
    sys[2] = back;
    let want = counts(&minimal_position(&f.model, &sys).unwrap());
    for seed in 0..8 {
        assert_eq!(counts(&minimal_position_seeded(&f.model, &sys, seed).unwrap()), want, "seed {seed}");
    }
}

#[test]
fn respacing_keeps_the_diagram() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = random_system(2, 5, &mut rng, 50).unwrap();
    let before = to_stacked_diagram(&s.model, &s.curves).unwrap().diagram;
    let mut cs = s.curves.clone();
    respace(&s.model, &mut cs);
    for c in &cs {
        c.validate(&s.model).unwrap();
    }
    assert_eq!(to_stacked_diagram(&s.model, &cs).unwrap().diagram, before);
}

#[test]
fn samples_fill_their_surface() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (g, k) in [(1, 3), (2, 4), (3, 6), (4, 8)] {
        let s = random_system(g, k, &mut rng, 100).unwrap();
        assert_eq!(s.diagram.genus(), g);
        assert_eq!(s.diagram.curve_count(), k);
        assert_eq!(s.diagram.salient_chords().unwrap().len(), k);
    }
}

#[test]
fn a_tube_adds_a_handle() {
    let f = chain_file(1);
    let arc = find_transversal_arc(&f.model, &f.curves, &[0]).unwrap();
    let (model, curves, tube) = tube_substitute(&f.model, &arc, &f.curves).unwrap();
    assert_eq!(model.genus(), 2);
    assert_eq!(tube.pair, 1);
    // Rerouting over the tube changes no intersection numbers.
    assert_eq!(counts(&curves), counts(&f.curves));
    for c in &curves {
        c.validate(&model).unwrap();
    }
}

#[test]
fn self_crossing_curves_are_rejected() {
    let text = "plcurves v1\nframe 0 0 10 10\ncurve bow: 1 1; 5 1; 5 5; 3 5; 3 0; 1 0\n";
    let err = parse_curve_file(text).and_then(|f| f.curves[0].validate(&f.model)).unwrap_err();
    assert!(matches!(err, CurveError::Curve { .. }), "{err}");
    let err = parse_curve_file("plcurves v1\nframe 0 0 1\n").unwrap_err();
    assert!(matches!(err, CurveError::Syntax { line: 2, .. }));
}

#[test]
fn words_parse_and_invert() {
    let w = TwistWord::parse("t_a * t_b^-1 t_c").unwrap();
    assert_eq!(w.len(), 3);
    let inv = w.inverse();
    assert_eq!(inv.letters[0].curve, "c");
    assert!(inv.letters[0].inverse && !inv.letters[1].inverse);
    assert_eq!(inv.inverse(), w);
    assert!(TwistWord::parse("t_a^2").is_err());
    let mono = Monodromy::bundled();
    assert_eq!(mono.knot_names(), vec!["7_6", "10_133"]);
}
