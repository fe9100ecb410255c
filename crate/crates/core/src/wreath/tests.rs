use std::sync::Arc;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::grp::{GroupElement, GroupSpec, Subgroup};
use crate::ncpart::SnPlus;
use crate::Rational;

type W = Wreath<Rational>;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn cyc(n: usize, s: u64) -> Arc<WreathCtx> {
    WreathCtx::trivial_sub(n, GroupSpec::cyclic(s).unwrap()).unwrap()
}

fn a(l: u64) -> GroupElement {
    GroupElement::Cyclic(l)
}

fn word(ctx: &Arc<WreathCtx>, parts: &[W]) -> W {
    parts.iter().fold(W::one(ctx), |x, y| x.mul(y).unwrap())
}

#[test]
fn nu_commutes_with_its_row() {
    let ctx = cyc(4, 3);
    let nu = W::nu(&ctx, 1, a(1)).unwrap();
    let u = W::u(&ctx, 1, 2).unwrap();
    assert!(nu.mul(&u).unwrap().minus(&u.mul(&nu).unwrap()).unwrap().is_zero());
    let v = W::u(&ctx, 2, 2).unwrap();
    assert!(!nu.mul(&v).unwrap().minus(&v.mul(&nu).unwrap()).unwrap().is_zero());
}

#[test]
fn star_and_inverse() {
    let ctx = cyc(4, 3);
    let x = W::nu(&ctx, 1, a(1)).unwrap().mul(&W::u(&ctx, 2, 3).unwrap()).unwrap();
    let y = W::u(&ctx, 2, 3).unwrap().mul(&W::nu(&ctx, 1, a(2)).unwrap()).unwrap();
    assert_eq!(x.star(), y);
    let p = W::nu(&ctx, 1, a(1)).unwrap().mul(&W::nu(&ctx, 1, a(2)).unwrap()).unwrap();
    assert_eq!(p, W::one(&ctx));
}

#[test]
fn haar_anchors() {
    for n in 2..=5 {
        let ctx = cyc(n, 3);
        assert_eq!(W::u(&ctx, 1, 1).unwrap().haar().unwrap(), q(1, n as i64));
        assert_eq!(W::one(&ctx).haar().unwrap(), Rational::one());
    }
    let ctx = cyc(4, 3);
    let reduced = word(&ctx, &[
        W::nu(&ctx, 1, a(1)).unwrap(),
        W::u(&ctx, 1, 2).unwrap(),
        W::nu(&ctx, 2, a(2)).unwrap(),
    ]);
    assert!(reduced.haar().unwrap().is_zero());
    assert!(reduced.expect_onto_base().unwrap().is_zero());
    let x = word(&ctx, &[
        W::nu(&ctx, 1, a(1)).unwrap(),
        W::u(&ctx, 2, 2).unwrap(),
        W::nu(&ctx, 1, a(2)).unwrap(),
    ]);
    assert_eq!(x.haar().unwrap(), q(1, 4));
    let e = x.expect_onto_base().unwrap();
    // (1/3)(1 − u_12) written through the row relation Σ_j u_1j = 1.
    let mut expected = SnPlus::zero(4);
    for j in [1, 3, 4] {
        expected = &expected + &SnPlus::u(4, 1, j).unwrap().scale(&q(1, 3));
    }
    assert_eq!(e.component(&a(0)), expected);
}

#[test]
fn semidirect_oracle_examples() {
    let ctx = cyc(2, 3);
    assert_eq!(W::u(&ctx, 1, 1).unwrap().haar_semidirect_n2().unwrap(), q(1, 2));
    let x = W::nu(&ctx, 1, a(1)).unwrap().mul(&W::nu(&ctx, 2, a(2)).unwrap()).unwrap();
    assert!(x.haar_semidirect_n2().unwrap().is_zero());
    assert!(x.haar().unwrap().is_zero());
    let y = word(&ctx, &[
        W::nu(&ctx, 1, a(1)).unwrap(),
        W::u(&ctx, 1, 2).unwrap(),
        W::nu(&ctx, 1, a(2)).unwrap(),
    ]);
    assert_eq!(y.haar_semidirect_n2().unwrap(), q(1, 2));
    assert_eq!(y.haar().unwrap(), q(1, 2));
}

#[test]
fn amalgamated_subgroup_is_shared() {
    let g = GroupSpec::cyclic(6).unwrap();
    let sub = Subgroup::cyclic(&g, a(3)).unwrap();
    let ctx = WreathCtx::new(3, g, sub).unwrap();
    let x = W::nu(&ctx, 1, a(3)).unwrap();
    let y = W::nu(&ctx, 2, a(3)).unwrap();
    assert_eq!(x, y);
    let u = W::u(&ctx, 2, 1).unwrap();
    assert_eq!(x.mul(&u).unwrap(), u.mul(&x).unwrap());
    assert!(x.haar().unwrap().is_zero());
    assert_eq!(x.mul(&x).unwrap().haar().unwrap(), Rational::one());
}

#[test]
fn reflection_traces() {
    assert_eq!(k0_generator_trace(8, 2, &K0Generator::U { i: 1, j: 1 }).unwrap(), q(1, 8));
    let t = k0_generator_trace(8, 2, &K0Generator::NuDeltaU { i: 1, k: 1, j: 2 }).unwrap();
    assert_eq!(t, q(1, 16));
    assert_eq!(k0_generator_trace(3, 2, &K0Generator::Perm(vec![2, 1, 3])).unwrap(), q(1, 6));
}

#[test]
fn random_reduced_words_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (n, s) in [(2, 2), (3, 3), (4, 2)] {
        let ctx = cyc(n, s);
        for _ in 0..10 {
            let x: W = sample::random_reduced_word(&mut rng, &ctx, 3, 2).unwrap();
            assert!(x.haar().unwrap().is_zero(), "{x}");
        }
    }
}

#[test]
fn oracle_agrees_at_n2() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in [2, 6] {
        let ctx = cyc(2, s);
        for _ in 0..20 {
            let x: W = sample::random_element(&mut rng, &ctx, 2, 3, 3);
            assert_eq!(x.haar().unwrap(), x.haar_semidirect_n2().unwrap(), "{x}");
        }
    }
}

#[test]
fn display_renders_words() {
    let ctx = cyc(3, 4);
    let x = word(&ctx, &[W::u(&ctx, 2, 1).unwrap(), W::nu(&ctx, 1, a(3)).unwrap()])
        .scale(&q(-1, 2));
    assert_eq!(x.to_string(), "-1/2*u(2,1)*nu(1,a^3)");
}
