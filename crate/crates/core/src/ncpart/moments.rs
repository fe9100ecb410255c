//! Haar moments of magic-unitary words.
//!
//! N ≥ 4 goes through the Weingarten sum; N ≤ 3 averages over the N!
//! permutation matrices, since S_N⁺ = S_N there and the Gram matrix may be
//! singular.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::partition::{join_count_unchecked, Partition};
use super::snplus::{check_index, UWord};
use super::weingarten::weingarten_data;
use crate::bounds;
use crate::error::{QwError, Result};
use crate::scalar::Scalar;

fn rat(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// All permutations of {0..n-1} in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// h(Π χ_{i_t j_t}) on S_N: the fraction of σ with σ(j_t) = i_t for all t.
fn classical(n: usize, w: &UWord) -> BigRational {
    let perms = permutations(n);
    let hits = perms
        .iter()
        .filter(|s| w.0.iter().all(|&(i, j)| s[j as usize - 1] == i as usize - 1))
        .count();
    rat(hits, perms.len())
}

type MomentCache = Mutex<HashMap<(usize, Partition, Partition), BigRational>>;

fn moment_cache() -> &'static MomentCache {
    static CACHE: OnceLock<MomentCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn weingarten_moment(n: usize, w: &UWord) -> Result<BigRational> {
    let ki = Partition::kernel(&w.rows());
    let kj = Partition::kernel(&w.cols());
    let key = (n, ki, kj);
    if let Some(v) = moment_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let data = weingarten_data(w.len(), n)?;
    let v = data.restricted_sum(&key.1, &key.2);
    moment_cache().lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Exact Haar value of a word whose indices are already validated.
pub(crate) fn haar_word(n: usize, w: &UWord) -> Result<BigRational> {
    let Some(w) = w.reduce_cyclic() else { return Ok(BigRational::zero()) };
    if w.is_empty() {
        return Ok(BigRational::one());
    }
    bounds::check("moment word length", w.len(), bounds::max_moment_len())?;
    if n <= 3 {
        Ok(classical(n, &w))
    } else {
        weingarten_moment(n, &w)
    }
}

/// h(u_{i₁j₁} ⋯ u_{i_k j_k}) with 1-based indices.
pub fn haar_moment<S: Scalar>(n: usize, i: &[usize], j: &[usize]) -> Result<S> {
    if i.len() != j.len() {
        return Err(QwError::OutOfRange(format!(
            "row tuple has length {}, column tuple {}",
            i.len(),
            j.len()
        )));
    }
    for &x in i.iter().chain(j) {
        check_index(n, x)?;
    }
    let w = UWord(i.iter().zip(j).map(|(&a, &b)| (a as u8, b as u8)).collect());
    Ok(S::from_rational(&haar_word(n, &w)?))
}

/// h((Σ_i u_ii)^k).
///
/// For N ≥ 4 this is Σ_{i} Σ_{p,q ≤ ker i} W_pq; grouping the diagonal
/// tuples i by kernel turns the count into Σ_{p,q} W_pq N^{|p∨q|}.
pub fn character_moment<S: Scalar>(n: usize, k: usize) -> Result<S> {
    if n == 0 {
        return Err(QwError::OutOfRange("N must be positive".into()));
    }
    bounds::check("character moment order", k, bounds::max_moment_len())?;
    if k == 0 {
        return Ok(S::one());
    }
    if n <= 3 {
        let perms = permutations(n);
        let total: usize = perms
            .iter()
            .map(|s| {
                let fix = s.iter().enumerate().filter(|(a, b)| a == *b).count();
                fix.pow(k as u32)
            })
            .sum();
        return Ok(S::from_rational(&rat(total, perms.len())));
    }
    let data = weingarten_data(k, n)?;
    let m = data.parts.len();
    let mut acc = BigRational::zero();
    for p in 0..m {
        for q in 0..m {
            let e = join_count_unchecked(&data.parts[p], &data.parts[q]);
            acc += data.entry(p, q) * BigRational::from_integer(num_traits::pow(BigInt::from(n), e));
        }
    }
    Ok(S::from_rational(&acc))
}

type RowCache = Mutex<HashMap<(usize, usize, UWord), Arc<Vec<BigRational>>>>;

fn row_cache() -> &'static RowCache {
    static CACHE: OnceLock<RowCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients c_j with E_i(w) = Σ_j c_j u_ij, i.e. c_j = N h(w u_ij).
pub(crate) fn row_expectation(n: usize, i: usize, w: &UWord) -> Result<Arc<Vec<BigRational>>> {
    let key = (n, i, w.clone());
    if let Some(v) = row_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let scale = BigRational::from_integer(BigInt::from(n));
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        let h = haar_word(n, &w.concat(&UWord::letter(i, j)))?;
        out.push(h * &scale);
    }
    let out = Arc::new(out);
    row_cache().lock().unwrap().insert(key, out.clone());
    Ok(out)
}
