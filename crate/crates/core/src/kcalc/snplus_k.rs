use num_bigint::BigInt;

use super::abgroup::FgAbGroup;
use super::sixterm::KPair;
use crate::error::{QwError, Result};
use crate::ncpart::permutations;

/// K-theory of C(S_N⁺) on labelled generators, unit marked.
///
/// N ≥ 4: K₀ free on [1] and [u_ij] for i, j ≤ N−1, K₁ = ℤ.
/// N ≤ 3: C(S_N) = ℂ^{N!}, K₀ free on the point masses [δ_σ], K₁ = 0.
pub fn k_snplus(n: usize) -> Result<KPair> {
    if n == 0 {
        return Err(QwError::OutOfRange("N must be at least 1".into()));
    }
    if n >= 4 {
        let mut labels = vec!["[1]".to_string()];
        for i in 1..n {
            for j in 1..n {
                labels.push(format!("[u{i}{j}]"));
            }
        }
        let g = labels.len();
        let mut unit = vec![BigInt::from(0); g];
        unit[0] = BigInt::from(1);
        let k0 = FgAbGroup::free(g).with_labels(labels)?.with_unit(unit)?;
        return Ok(KPair::new(k0, FgAbGroup::free(1)));
    }
    let perms = permutations(n);
    let labels: Vec<String> = perms.iter().map(|p| perm_label(p)).collect();
    let g = labels.len();
    let k0 = FgAbGroup::free(g).with_labels(labels)?.with_unit(vec![BigInt::from(1); g])?;
    Ok(KPair::new(k0, FgAbGroup::trivial()))
}

pub(crate) fn perm_label(p: &[usize]) -> String {
    let body: String = p.iter().map(|x| (x + 1).to_string()).collect();
    format!("[d{body}]")
}

/// The class [u_ij] in the generators of `k_snplus(N).k0`.
pub fn u_class(n: usize, i: usize, j: usize) -> Result<Vec<BigInt>> {
    if n == 0 || i == 0 || j == 0 || i > n || j > n {
        return Err(QwError::OutOfRange(format!("u_class({n},{i},{j}) index out of range")));
    }
    if n <= 3 {
        return Ok(permutations(n).iter().map(|p| BigInt::from((p[j - 1] == i - 1) as i64)).collect());
    }
    let g = (n - 1) * (n - 1) + 1;
    let idx = |a: usize, b: usize| 1 + (a - 1) * (n - 1) + (b - 1);
    let mut v = vec![BigInt::from(0); g];
    match (i == n, j == n) {
        (false, false) => v[idx(i, j)] = BigInt::from(1),
        (false, true) => {
            v[0] = BigInt::from(1);
            for l in 1..n {
                v[idx(i, l)] = BigInt::from(-1);
            }
        }
        (true, false) => {
            v[0] = BigInt::from(1);
            for l in 1..n {
                v[idx(l, j)] = BigInt::from(-1);
            }
        }
        (true, true) => {
            v[0] = BigInt::from(2 - n as i64);
            for x in v.iter_mut().skip(1) {
                *x = BigInt::from(1);
            }
        }
    }
    Ok(v)
}
