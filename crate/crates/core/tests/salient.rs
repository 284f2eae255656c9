use crown_core::grading::SignConvention;
use crown_core::salient::{parametric_form, salient_set_with, SalientLattice};
use crown_core::{compare, parse_diagram, salient_set, AffineLattice};
use num_bigint::BigInt;

const SPHERE: &str = include_str!("fixtures/sphere_bigons.diagram");
const TORUS: &str = include_str!("fixtures/torus.diagram");

fn designated_sphere() -> crown_core::StackedDiagram {
    let text = SPHERE.replace("crossing x2\n", "crossing x2\nsalient x1 x2\n");
    parse_diagram(&text).unwrap()
}

#[test]
fn sphere_salient_chords_are_free() {
    // The bigons only tie cx1f = cx2f and cx1b = cx2b; the salient chords are
    // cx1f and cx2b, one from each class, so both range over Z.
    let s = salient_set(&designated_sphere()).unwrap();
    assert_eq!(s.system_rank, 2);
    assert_eq!(s.n_parameters, 2);
    let z2 = AffineLattice::new(vec![BigInt::from(0); 2], vec![vec![1.into(), 0.into()], vec![0.into(), 1.into()]]);
    assert_eq!(s.lattice, SalientLattice::Integral(z2));
    assert_eq!(parametric_form(&s).unwrap(), "x_1 = t_1; x_2 = t_2");
}

#[test]
fn undesignated_ambiguity_is_an_error() {
    assert!(salient_set(&parse_diagram(SPHERE).unwrap()).is_err());
    assert!(salient_set(&parse_diagram(TORUS).unwrap()).is_ok());
}

#[test]
fn flipped_signs_give_the_same_set() {
    for d in [designated_sphere(), parse_diagram(TORUS).unwrap()] {
        let a = salient_set_with(&d, SignConvention::Standard).unwrap();
        let b = salient_set_with(&d, SignConvention::Flipped).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn report_field_order_is_fixed() {
    let r = salient_set(&designated_sphere()).unwrap().report();
    let keys: Vec<&str> = r.lines().map(|l| l.split(':').next().unwrap()).collect();
    assert_eq!(
        keys,
        [
            "curves",
            "variables",
            "equations",
            "system rank",
            "integer solutions",
            "solution parameters",
            "salient rank",
            "parametric form",
            "canonical lattice"
        ]
    );
    let s = salient_set(&designated_sphere()).unwrap();
    assert_eq!(compare(&s, &s), Some(0));
}
