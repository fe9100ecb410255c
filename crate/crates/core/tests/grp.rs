use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qwreath::grp::{
    group_haar, parse_group_spec, subgroup_expectation, GroupAlgebra, GroupElement, GroupSpec, Subgroup,
};
use qwreath::Rational;

/// S_3 as a table: 0 = id, 1 = (12), 2 = (23), 3 = (13), 4 = (123), 5 = (132).
const S3: &str = "finite([[0,1,2,3,4,5],[1,0,4,5,2,3],[2,5,0,4,3,1],[3,4,5,0,1,2],[4,3,1,2,5,0],[5,2,3,1,0,4]])";

fn specs() -> Vec<GroupSpec> {
    vec![
        parse_group_spec("cyclic(6)").unwrap(),
        parse_group_spec("int").unwrap(),
        parse_group_spec("free(2)").unwrap(),
        parse_group_spec(S3).unwrap(),
        parse_group_spec("amalgam(cyclic(4),cyclic(6),2,a^2,b^3)").unwrap(),
    ]
}

#[test]
fn parses_every_spec_form() {
    for text in ["trivial", "int", "cyclic(5)", "free(3)", S3, "amalgam(cyclic(4), cyclic(6), 2, a^2, b^3)"] {
        parse_group_spec(text).unwrap();
    }
    for bad in ["cyclic(0)", "free(0)", "cyclic(x)", "moose(2)", "amalgam(cyclic(4),cyclic(6),2,a,b^3)"] {
        assert!(parse_group_spec(bad).is_err(), "{bad}");
    }
}

#[test]
fn finite_table_validation() {
    assert!(parse_group_spec("finite([[0,1],[1,1]])").is_err());
    let g = parse_group_spec(S3).unwrap();
    assert!(g.is_finite());
    let t = GroupElement::Finite(1);
    assert_eq!(g.order(&t), Some(2));
    assert_eq!(g.order(&GroupElement::Finite(4)), Some(3));
}

#[test]
fn amalgam_normal_form() {
    let g = parse_group_spec("amalgam(cyclic(4),cyclic(6),2,a^2,b^3)").unwrap();
    let a2 = g.parse_word("a^2").unwrap();
    let b3 = g.parse_word("b^3").unwrap();
    assert_eq!(a2, b3);
    assert_eq!(g.order(&a2), Some(2));
    let ab = g.parse_word("a*b").unwrap();
    assert_eq!(g.order(&ab), None);
    match &ab {
        GroupElement::Amalgam(w) => assert_eq!(w.length(), 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn subgroups() {
    let c6 = GroupSpec::cyclic(6).unwrap();
    let s = Subgroup::parse(&c6, "<a^3>").unwrap();
    assert_eq!(s.order(&c6), 2);
    assert!(s.is_member(&c6, &GroupElement::Cyclic(3)));
    assert!(!s.is_member(&c6, &GroupElement::Cyclic(2)));
    assert!(Subgroup::parse(&c6, "<a^6>").unwrap().is_trivial(&c6));
    assert!(Subgroup::parse(&c6, "amalgam").is_err());
    let int = GroupSpec::Int;
    assert!(Subgroup::parse(&int, "<a>").is_err());
}

#[test]
fn haar_and_expectation_on_the_group_algebra() {
    let c6 = GroupSpec::cyclic(6).unwrap();
    let p = GroupAlgebra::<Rational>::averaging_projection(&c6, &GroupElement::Cyclic(2), 3);
    assert_eq!(group_haar(&p, &c6), Rational::new(1.into(), 3.into()));
    assert_eq!(p.mul(&p, &c6), p);
    let s = Subgroup::parse(&c6, "<a^3>").unwrap();
    let e = subgroup_expectation(&p, &s, &c6);
    assert_eq!(group_haar(&e, &c6), group_haar(&p, &c6));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(which in 0usize..5, seed in any::<u64>()) {
        let g = &specs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (g.random_element(&mut rng, 3), g.random_element(&mut rng, 3), g.random_element(&mut rng, 3));
        let e = g.identity();
        prop_assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
        prop_assert_eq!(g.multiply(&x, &e), x.clone());
        prop_assert!(g.is_identity(&g.multiply(&x, &g.inverse(&x))));
        prop_assert_eq!(g.power(&x, 3), g.multiply(&x, &g.multiply(&x, &x)));
    }

    #[test]
    fn format_round_trips(which in 0usize..5, seed in any::<u64>()) {
        let g = &specs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng, 4);
        prop_assert_eq!(g.parse_word(&g.format(&x)).unwrap(), x);
    }

    #[test]
    fn group_haar_is_tracial(which in 0usize..5, seed in any::<u64>()) {
        let g = &specs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = GroupAlgebra::<Rational>::zero();
        let mut y = GroupAlgebra::<Rational>::zero();
        for c in 1..=3i64 {
            x.add_term(g.random_element(&mut rng, 2), Rational::from_integer(c.into()));
            y.add_term(g.random_element(&mut rng, 2), Rational::from_integer((-c).into()));
        }
        prop_assert_eq!(group_haar(&x.mul(&y, g), g), group_haar(&y.mul(&x, g), g));
        prop_assert!(group_haar(&x.star(g).mul(&x, g), g) > Rational::from_integer(0.into()));
    }
}
