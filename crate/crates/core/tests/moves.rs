use crown_core::curves::sample::{random_system, Sample};
use crown_core::moves::{
    finger_move, parse_script, r2_remove, r3, random_move, retract, slide, MoveCommand, MoveError, MoveKind,
};
use crown_core::{compare, parse_diagram, salient_set, StackedDiagram};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPHERE: &str = include_str!("fixtures/sphere_bigons.diagram");

fn sample(seed: u64) -> (StackedDiagram, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = rng.gen_range(1..=3);
        let k = rng.gen_range(3..=6);
        if let Ok(Sample { diagram, .. }) = random_system(g, k, &mut rng, 20) {
            return (diagram, rng);
        }
    }
}

#[test]
fn r3_is_an_involution() {
    let mut checked = 0;
    for seed in 0..12 {
        let (d, mut rng) = sample(seed);
        let Some((MoveCommand::R3 { face }, e)) = random_move(&d, &[MoveKind::R3], &mut rng, 50) else { continue };
        let names: Vec<&str> = d.face(face).corners().iter().map(|c| d.name(c.crossing)).collect();
        let back = (0..e.faces().len())
            .find(|&g| {
                let f = e.face(g);
                f.len() == 3 && f.corners().iter().all(|c| names.contains(&e.name(c.crossing)))
            })
            .expect("the moved triangle survives");
        assert_eq!(r3(&e, back).unwrap(), d);
        checked += 1;
    }
    assert!(checked >= 5, "only {checked} triangles");
}

#[test]
fn retracting_a_finger_restores_the_diagram() {
    let mut checked = 0;
    for seed in 20..32 {
        let (d, mut rng) = sample(seed);
        let Some((MoveCommand::Finger { arc, path }, _)) = random_move(&d, &[MoveKind::Finger], &mut rng, 50) else { continue };
        let r = finger_move(&d, arc, &path).unwrap();
        let names: Vec<String> = r.new_crossings.iter().map(|&x| r.diagram.name(x).to_string()).collect();
        assert_eq!(names.len(), 2 * (path.len() - 1));
        let back = retract(&r.diagram, &names).unwrap();
        assert_eq!(back.to_text(), d.to_text());
        checked += 1;
    }
    assert!(checked >= 5);
}

#[test]
fn sphere_bigons_resist_removal() {
    // Removing either bigon would leave a curve with no crossings.
    let d = parse_diagram(SPHERE).unwrap();
    for f in 0..d.faces().len() {
        assert!(matches!(r2_remove(&d, f), Err(MoveError::EmptiesCurve(_))), "face {f}");
    }
}

#[test]
fn slides_need_disjoint_curves() {
    let d = parse_diagram(SPHERE).unwrap();
    assert!(matches!(slide(&d, 0, 1, &[0]), Err(MoveError::CurvesIntersect(1, 2))));
    assert!(matches!(slide(&d, 0, 0, &[0]), Err(MoveError::SameCurve(1))));
    assert!(matches!(slide(&d, 0, 5, &[0]), Err(MoveError::NoSuchCurve(6))));
}

#[test]
fn rotation_is_detected_by_compare() {
    let (d, _) = sample(3);
    let s = salient_set(&d).unwrap();
    assert_eq!(compare(&s, &s), Some(0));
    for r in 1..d.curve_count() {
        let t = salient_set(&d.rotate_curves(r)).unwrap();
        let rot = compare(&s, &t).expect("rotations have equal salient sets");
        assert!(rot < d.curve_count());
    }
}

#[test]
fn printed_commands_parse_back() {
    let (d, mut rng) = sample(5);
    let kinds = [MoveKind::R2Insert, MoveKind::R3, MoveKind::Slide, MoveKind::Finger];
    let mut cur = d;
    for _ in 0..8 {
        let Some((cmd, next)) = random_move(&cur, &kinds, &mut rng, 50) else { break };
        let parsed = parse_script(&format!("{cmd}\n")).unwrap();
        assert_eq!(parsed, vec![cmd]);
        cur = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rewrites_preserve_the_salient_set(seed in any::<u64>(), steps in 1usize..=6) {
        let (d, mut rng) = sample(seed);
        let before = salient_set(&d).unwrap();
        let kinds = [MoveKind::R2Insert, MoveKind::R2Remove, MoveKind::R3, MoveKind::Slide, MoveKind::Finger];
        let mut cur = d;
        for _ in 0..steps {
            let Some((_, next)) = random_move(&cur, &kinds, &mut rng, 50) else { break };
            cur = next;
        }
        prop_assert_eq!(before.lattice, salient_set(&cur).unwrap().lattice);
    }

    #[test]
    fn moves_keep_the_genus(seed in any::<u64>()) {
        let (d, mut rng) = sample(seed);
        let kinds = [MoveKind::R2Insert, MoveKind::R3, MoveKind::Slide, MoveKind::Finger];
        if let Some((_, e)) = random_move(&d, &kinds, &mut rng, 50) {
            prop_assert_eq!(e.genus(), d.genus());
            prop_assert_eq!(parse_diagram(&e.to_text()).unwrap(), e);
        }
    }
}
