//! Gram and Weingarten matrices over NC(k).
//!
//! The Gram exponent is |p ∨ q| with the join taken in the lattice of ALL set
//! partitions. Using the noncrossing join instead (the smallest noncrossing
//! partition above both) gives a different, wrong matrix; {12}{34} ∨ {14}{23}
//! is the one-block partition either way, but {13}{2}{4} ∨ {1}{24}{3} is
//! {13}{24} in the full lattice and the one-block partition in NC(4).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::partition::{enumerate_partitions, join_count_unchecked, Partition};
use crate::error::{QwError, Result};
use crate::scalar::Scalar;

/// Exact inverse of the Gram matrix, stored as adjugate over determinant.
#[derive(Debug)]
pub struct WeingartenData {
    pub k: usize,
    pub n: usize,
    pub parts: Vec<Partition>,
    adj: Vec<BigInt>,
    det: BigInt,
}

impl WeingartenData {
    pub fn entry(&self, p: usize, q: usize) -> BigRational {
        BigRational::new(self.adj[p * self.parts.len() + q].clone(), self.det.clone())
    }

    /// Σ_{p ≤ a, q ≤ b} W_pq over noncrossing p, q.
    pub fn restricted_sum(&self, a: &Partition, b: &Partition) -> BigRational {
        let left: Vec<usize> = (0..self.parts.len()).filter(|&p| self.parts[p].refines(a)).collect();
        let right: Vec<usize> = (0..self.parts.len()).filter(|&q| self.parts[q].refines(b)).collect();
        let m = self.parts.len();
        let mut acc = BigInt::zero();
        for &p in &left {
            for &q in &right {
                acc += &self.adj[p * m + q];
            }
        }
        BigRational::new(acc, self.det.clone())
    }
}

fn pow_usize(n: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(n), e)
}

fn gram_int(parts: &[Partition], n: usize) -> Vec<BigInt> {
    let m = parts.len();
    let mut g = Vec::with_capacity(m * m);
    for p in parts {
        for q in parts {
            g.push(pow_usize(n, join_count_unchecked(p, q)));
        }
    }
    g
}

pub fn gram_matrix<S: Scalar>(k: usize, n: usize) -> Result<Matrix<S>> {
    if n == 0 {
        return Err(QwError::OutOfRange("N must be positive".into()));
    }
    let parts = enumerate_partitions(k, true)?;
    let g = gram_int(&parts, n);
    let m = parts.len();
    let one = BigInt::one();
    Ok(Matrix::from_fn(m, m, |i, j| S::from_ratio(&g[i * m + j], &one)))
}

/// Fraction-free Gauss–Jordan on [A | I]: returns (adj', d) with
/// A⁻¹ = adj' / d, or `None` if A is singular.
fn bareiss_inverse(a: &[BigInt], m: usize) -> Option<(Vec<BigInt>, BigInt)> {
    let w = 2 * m;
    let mut t = vec![BigInt::zero(); m * w];
    for i in 0..m {
        for j in 0..m {
            t[i * w + j] = a[i * m + j].clone();
        }
        t[i * w + m + i] = BigInt::one();
    }
    let mut prev = BigInt::one();
    for k in 0..m {
        let pivot = (k..m).find(|&r| !t[r * w + k].is_zero())?;
        if pivot != k {
            for j in 0..w {
                t.swap(pivot * w + j, k * w + j);
            }
        }
        let pk: Vec<BigInt> = t[k * w..(k + 1) * w].to_vec();
        let akk = pk[k].clone();
        for i in 0..m {
            if i == k {
                continue;
            }
            let aik = t[i * w + k].clone();
            let row = &mut t[i * w..(i + 1) * w];
            for j in 0..w {
                let v = &akk * &row[j] - &aik * &pk[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = akk;
    }
    let mut adj = Vec::with_capacity(m * m);
    for i in 0..m {
        adj.extend_from_slice(&t[i * w + m..(i + 1) * w]);
    }
    if prev.is_negative() {
        prev = -prev;
        for v in adj.iter_mut() {
            *v = -v.clone();
        }
    }
    Some((adj, prev))
}

type Cache = Mutex<HashMap<(usize, usize), Arc<WeingartenData>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact Weingarten data for (k, N), N ≥ 4, computed once per process.
pub fn weingarten_data(k: usize, n: usize) -> Result<Arc<WeingartenData>> {
    if n < 4 {
        return Err(QwError::OutOfRange(format!(
            "Weingarten inversion requires N >= 4 (got N={n}); use classical averaging"
        )));
    }
    if let Some(d) = cache().lock().unwrap().get(&(k, n)) {
        return Ok(d.clone());
    }
    let parts = enumerate_partitions(k, true)?;
    let m = parts.len();
    let g = gram_int(&parts, n);
    let (adj, det) = bareiss_inverse(&g, m).ok_or(QwError::SingularGram { k, n })?;
    let data = Arc::new(WeingartenData { k, n, parts, adj, det });
    cache().lock().unwrap().insert((k, n), data.clone());
    Ok(data)
}

pub fn weingarten_matrix<S: Scalar>(k: usize, n: usize) -> Result<Matrix<S>> {
    let d = weingarten_data(k, n)?;
    let m = d.parts.len();
    Ok(Matrix::from_fn(m, m, |i, j| {
        S::from_ratio(&d.adj[i * m + j], &d.det)
    }))
}
