use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qwreath::grp::{parse_group_spec, GroupElement, GroupSpec, Subgroup};
use qwreath::ncpart::SnPlus;
use qwreath::wreath::{k0_generator_trace, sample, K0Generator, WreathCtx};
use qwreath::{Rational, WreathElement};

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn contexts() -> Vec<Arc<WreathCtx>> {
    let c6 = GroupSpec::cyclic(6).unwrap();
    let sub = Subgroup::cyclic(&c6, GroupElement::Cyclic(3)).unwrap();
    let sl2 = parse_group_spec("amalgam(cyclic(4),cyclic(6),2,a^2,b^3)").unwrap();
    vec![
        WreathCtx::trivial_sub(2, GroupSpec::cyclic(3).unwrap()).unwrap(),
        WreathCtx::trivial_sub(3, GroupSpec::free(2).unwrap()).unwrap(),
        WreathCtx::new(4, c6.clone(), sub.clone()).unwrap(),
        WreathCtx::new(2, c6, sub).unwrap(),
        WreathCtx::trivial_sub(4, GroupSpec::Int).unwrap(),
        WreathCtx::new(2, sl2.clone(), Subgroup::parse(&sl2, "amalgam").unwrap()).unwrap(),
    ]
}

/// x = 0 exactly when h(x*x) = 0, the Haar state being faithful.
fn vanishes(x: &WreathElement) -> bool {
    x.star().mul(x).unwrap().haar().unwrap().is_zero()
}

fn sample_pair(which: usize, seed: u64) -> (WreathElement, WreathElement) {
    let ctx = &contexts()[which];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (nu, u) = if ctx.n >= 4 { (2, 1) } else { (2, 2) };
    (sample::random_element(&mut rng, ctx, 2, nu, u), sample::random_element(&mut rng, ctx, 2, nu, u))
}

#[test]
fn haar_of_generators() {
    let ctx = &contexts()[2];
    let nu = |i, l| WreathElement::nu(ctx, i, GroupElement::Cyclic(l)).unwrap();
    assert!(WreathElement::one(ctx).haar().unwrap().is_one());
    // a³ generates Λ, so ν_i(a³) is a single element of the common subgroup.
    assert!(nu(1, 3).minus(&nu(2, 3)).unwrap().is_zero());
    assert!(nu(1, 3).haar().unwrap().is_zero());
    assert!(nu(1, 1).haar().unwrap().is_zero());
    let x = nu(1, 1).mul(&nu(1, 5)).unwrap();
    assert!(x.haar().unwrap().is_one());
}

#[test]
fn snplus_embedding_preserves_haar() {
    let ctx = &contexts()[4];
    let x = SnPlus::<Rational>::u(4, 1, 2).unwrap();
    let y = &x * &SnPlus::u(4, 3, 2).unwrap();
    let z = &y + &SnPlus::u(4, 2, 2).unwrap();
    assert_eq!(WreathElement::from_snplus(ctx, &z).haar().unwrap(), z.haar().unwrap());
    assert_eq!(WreathElement::from_snplus(ctx, &z).as_snplus().unwrap(), z);
}

#[test]
fn generator_traces() {
    assert_eq!(k0_generator_trace(8, 2, &K0Generator::Unit).unwrap(), q(1, 1));
    assert_eq!(k0_generator_trace(8, 2, &K0Generator::U { i: 1, j: 2 }).unwrap(), q(1, 8));
    assert_eq!(k0_generator_trace(8, 2, &K0Generator::NuDeltaU { i: 1, k: 0, j: 2 }).unwrap(), q(1, 16));
    assert_eq!(k0_generator_trace(3, 1, &K0Generator::Perm(vec![2, 1, 3])).unwrap(), q(1, 6));
}

#[test]
fn reduced_words_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ctx in contexts() {
        for nu in 1..=3 {
            let x: WreathElement = sample::random_reduced_word(&mut rng, &ctx, nu, 3).unwrap();
            assert!(x.haar().unwrap().is_zero(), "{x}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_an_antimultiplicative_involution(which in 0usize..6, seed in any::<u64>()) {
        let (x, y) = sample_pair(which, seed);
        prop_assert!(vanishes(&x.star().star().minus(&x).unwrap()));
        let xy = x.mul(&y).unwrap();
        prop_assert!(vanishes(&xy.star().minus(&y.star().mul(&x.star()).unwrap()).unwrap()));
        prop_assert_eq!(x.star().haar().unwrap(), x.haar().unwrap());
    }

    #[test]
    fn multiplication_is_associative(which in 0usize..6, seed in any::<u64>()) {
        let (x, y) = sample_pair(which, seed);
        let z = x.plus(&y).unwrap();
        let l = x.mul(&y).unwrap().mul(&z).unwrap();
        let r = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert!(vanishes(&l.minus(&r).unwrap()));
    }

    #[test]
    fn haar_is_a_positive_trace(which in 0usize..6, seed in any::<u64>()) {
        let (x, y) = sample_pair(which, seed);
        prop_assert!(x.star().mul(&x).unwrap().haar().unwrap() >= q(0, 1));
        prop_assert_eq!(x.mul(&y).unwrap().haar().unwrap(), y.mul(&x).unwrap().haar().unwrap());
    }

    #[test]
    fn haar_factors_through_the_base(which in 0usize..6, seed in any::<u64>()) {
        let (x, y) = sample_pair(which, seed);
        let xy = x.mul(&y).unwrap();
        let base = xy.expect_onto_base().unwrap();
        prop_assert_eq!(base.state().unwrap(), xy.haar().unwrap());
        prop_assert_eq!(base.to_wreath().haar().unwrap(), xy.haar().unwrap());
    }

    #[test]
    fn two_point_oracle_agrees(which in prop::sample::select(vec![0usize, 3, 5]), seed in any::<u64>()) {
        let (x, y) = sample_pair(which, seed);
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.haar().unwrap(), xy.haar_semidirect_n2().unwrap());
    }
}

#[test]
fn row_letters_pass_through_nu() {
    let ctx = &contexts()[0];
    let nu = WreathElement::nu(ctx, 1, GroupElement::Cyclic(2)).unwrap();
    let u = |i, j| WreathElement::u(ctx, i, j).unwrap();
    assert!(u(1, 1).mul(&nu).unwrap().mul(&u(2, 1)).unwrap().is_zero());
    assert!(!u(1, 1).mul(&nu).unwrap().mul(&u(2, 2)).unwrap().is_zero());
}
