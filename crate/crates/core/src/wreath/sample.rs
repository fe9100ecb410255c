//! Random elements for property tests and benchmarks.

use std::sync::Arc;

use rand::Rng;

use super::element::Wreath;
use super::monomial::{WreathCtx, WreathMonomial};
use crate::grp::GroupElement;
use crate::error::Result;
use crate::ncpart::{SnPlus, UWord};
use crate::scalar::Scalar;

fn random_uword<R: Rng>(rng: &mut R, n: usize, len: usize) -> UWord {
    let mut w = UWord::empty();
    for _ in 0..len {
        w = w.concat(&UWord::letter(rng.gen_range(1..=n), rng.gen_range(1..=n)));
    }
    w
}

/// A monomial with `nu` group letters and `u` magic-unitary letters spread over
/// the separators; group letters are random words of length `glen`.
pub fn random_monomial<R: Rng>(
    rng: &mut R,
    ctx: &WreathCtx,
    nu: usize,
    u: usize,
    glen: usize,
) -> WreathMonomial {
    let mut counts = vec![0usize; nu + 1];
    for _ in 0..u {
        counts[rng.gen_range(0..=nu)] += 1;
    }
    let seps = counts.iter().map(|&c| random_uword(rng, ctx.n, c)).collect();
    let letters = (0..nu)
        .map(|_| (rng.gen_range(1..=ctx.n) as u8, ctx.group.random_element(rng, glen)))
        .collect();
    WreathMonomial { head: ctx.group.identity(), seps, letters }
}

/// Sum of `terms` random monomials with small integer coefficients.
pub fn random_element<S: Scalar, R: Rng>(
    rng: &mut R,
    ctx: &Arc<WreathCtx>,
    terms: usize,
    nu: usize,
    u: usize,
) -> Wreath<S> {
    let mut x = Wreath::zero(ctx);
    for _ in 0..terms {
        let m = random_monomial(rng, ctx, nu, u, 2);
        let c = rng.gen_range(-3i64..=3);
        x.add_monomial(m, S::from_i64(c));
    }
    x
}

/// A reduced element ν_{i₁}(g₁) a₁ ν_{i₂}(g₂) ⋯ a_{nu−1} ν_{i_nu}(g_nu):
/// every g_t ∉ Λ, separators are random u-words of length at most `u`, and
/// at an equal-index adjacency the separator a is replaced by a − E_i(a).
pub fn random_reduced_word<S: Scalar, R: Rng>(
    rng: &mut R,
    ctx: &Arc<WreathCtx>,
    nu: usize,
    u: usize,
) -> Result<Wreath<S>> {
    let mut letters: Vec<(usize, GroupElement)> = Vec::new();
    while letters.len() < nu {
        let i = rng.gen_range(1..=ctx.n);
        let g = ctx.group.random_element(rng, 2);
        if !ctx.sub.is_member(&ctx.group, &g) {
            letters.push((i, g));
        }
    }
    let mut x = Wreath::one(ctx);
    for (t, (i, g)) in letters.iter().enumerate() {
        if t > 0 {
            let len = rng.gen_range(0..=u);
            let mut a = SnPlus::from_word(ctx.n, &random_uword(rng, ctx.n, len))?;
            if letters[t - 1].0 == *i {
                a = &a - &a.cond_expect_row(*i)?;
            }
            x = x.mul(&Wreath::from_snplus(ctx, &a))?;
        }
        x = x.mul(&Wreath::nu(ctx, *i, g.clone())?)?;
    }
    Ok(x)
}
