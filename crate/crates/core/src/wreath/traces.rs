use std::fmt;

use super::element::Wreath;
use super::monomial::WreathCtx;
use crate::error::{QwError, Result};
use crate::grp::{GroupElement, GroupSpec};
use crate::ncpart::{SnPlus, UWord};
use crate::Rational;

/// Representative projection of a K₀ generator of C(ℤ̂_s ≀* S_N⁺).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum K0Generator {
    Unit,
    U { i: usize, j: usize },
    /// ν_i(δ_k) u_ij with δ_k the k-th minimal projection of C*(ℤ_s).
    NuDeltaU { i: usize, k: usize, j: usize },
    /// Π_j u_{σ(j) j}, the point mass at σ ∈ S_N (N ≤ 3); σ is 1-based.
    Perm(Vec<usize>),
}

impl fmt::Display for K0Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            K0Generator::Unit => write!(f, "[1]"),
            K0Generator::U { i, j } => write!(f, "[u{i}{j}]"),
            K0Generator::NuDeltaU { i, k, j } => write!(f, "[nu{i}(d{k})u{i}{j}]"),
            K0Generator::Perm(s) => {
                let body: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "[d{}]", body.join(""))
            }
        }
    }
}

/// Haar trace of the generator's representative in C(ℤ̂_s ≀* S_N⁺).
///
/// δ_k = (1/s) Σ_l ω^{-kl} λ_{a^l} has complex coefficients; its trace is
/// computed from the values h(ν_i(a^l) u_ij), which must vanish for l ≠ 0
/// for the result to be rational.
pub fn k0_generator_trace(n: usize, s: u64, gen: &K0Generator) -> Result<Rational> {
    let group = GroupSpec::cyclic(s)?;
    let ctx = WreathCtx::trivial_sub(n, group)?;
    let check = |i: usize| -> Result<()> {
        if i == 0 || i > n {
            return Err(QwError::OutOfRange(format!("index {i} outside 1..={n}")));
        }
        Ok(())
    };
    match gen {
        K0Generator::Unit => Wreath::<Rational>::one(&ctx).haar(),
        K0Generator::U { i, j } => Wreath::<Rational>::u(&ctx, *i, *j)?.haar(),
        K0Generator::NuDeltaU { i, k, j } => {
            check(*i)?;
            check(*j)?;
            if *k as u64 >= s {
                return Err(QwError::OutOfRange(format!("delta index {k} outside 0..{s}")));
            }
            let u = Wreath::<Rational>::u(&ctx, *i, *j)?;
            let mut v0 = None;
            for l in 0..s {
                let x = Wreath::nu(&ctx, *i, GroupElement::Cyclic(l))?.mul(&u)?;
                let h = x.haar()?;
                if l == 0 {
                    v0 = Some(h);
                } else if h != Rational::from_integer(0.into()) {
                    return Err(QwError::NotRational(format!(
                        "h(nu_{i}(a^{l}) u_{i}{j}) = {h} is nonzero"
                    )));
                }
            }
            Ok(v0.unwrap() / Rational::from_integer((s as i64).into()))
        }
        K0Generator::Perm(sigma) => {
            if sigma.len() != n {
                return Err(QwError::OutOfRange("permutation length must equal N".into()));
            }
            let mut w = UWord::empty();
            for (j, &i) in sigma.iter().enumerate() {
                check(i)?;
                w = w.concat(&UWord::letter(i, j + 1));
            }
            let x = SnPlus::<Rational>::from_word(n, &w)?;
            Wreath::from_snplus(&ctx, &x).haar()
        }
    }
}
