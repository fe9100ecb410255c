use std::fmt;

use crate::bounds::MAX_PARTITION_K;
use crate::error::{QwError, Result};

/// Set partition of {1..k}, stored as a restricted growth string: entry t is
/// the index of the block containing t+1, blocks numbered by first element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rgs: Vec<u8>,
}

impl Partition {
    /// Build from arbitrary labels; equal labels share a block.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| *s == l) {
                Some(p) => p as u8,
                None => {
                    seen.push(l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Partition { rgs }
    }

    /// Kernel of an index tuple: positions with equal indices share a block.
    pub fn kernel(indices: &[usize]) -> Self {
        Self::from_labels(indices)
    }

    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(QwError::OutOfRange("empty block".into()));
            }
            for &x in block {
                if x == 0 || x > k || labels[x - 1] != usize::MAX {
                    return Err(QwError::OutOfRange(format!("bad element {x} for k={k}")));
                }
                labels[x - 1] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(QwError::OutOfRange("blocks do not cover {1..k}".into()));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn k(&self) -> usize {
        self.rgs.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.rgs
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    /// Blocks as 1-based element lists, ordered by minimum element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (t, &b) in self.rgs.iter().enumerate() {
            out[b as usize].push(t + 1);
        }
        out
    }

    /// `self ≤ other` in the refinement order.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.k() != other.k() {
            return false;
        }
        let mut image = vec![u8::MAX; self.block_count()];
        for (a, b) in self.rgs.iter().zip(&other.rgs) {
            let slot = &mut image[*a as usize];
            if *slot == u8::MAX {
                *slot = *b;
            } else if *slot != *b {
                return false;
            }
        }
        true
    }

    pub fn is_noncrossing(&self) -> bool {
        (0..self.k()).all(|d| !crossing_ending_at(&self.rgs[..=d]))
    }
}

/// Whether the last element of `prefix` closes a crossing a<b<c<d with
/// d the last element and b in the same block as d.
fn crossing_ending_at(prefix: &[u8]) -> bool {
    let d = prefix.len() - 1;
    let y = prefix[d];
    for b in 0..d {
        if prefix[b] != y {
            continue;
        }
        for c in b + 1..d {
            let x = prefix[c];
            if x != y && prefix[..b].contains(&x) {
                return true;
            }
        }
    }
    false
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.blocks() {
            let body: Vec<String> = block.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", body.join(","))?;
        }
        Ok(())
    }
}

/// All set partitions (or only noncrossing ones) of {1..k}, in descending
/// lexicographic order of restricted growth strings. This puts the finest
/// partition first and the one-block partition last.
pub fn enumerate_partitions(k: usize, noncrossing_only: bool) -> Result<Vec<Partition>> {
    if k == 0 || k > MAX_PARTITION_K {
        return Err(QwError::OutOfRange(format!(
            "partition size k={k} outside 1..={MAX_PARTITION_K}"
        )));
    }
    let mut out = Vec::new();
    let mut rgs = Vec::with_capacity(k);
    grow(k, noncrossing_only, &mut rgs, 0, &mut out);
    Ok(out)
}

fn grow(k: usize, nc: bool, rgs: &mut Vec<u8>, blocks: u8, out: &mut Vec<Partition>) {
    if rgs.len() == k {
        out.push(Partition { rgs: rgs.clone() });
        return;
    }
    for label in (0..=blocks).rev() {
        rgs.push(label);
        if !(nc && label < blocks && crossing_ending_at(rgs)) {
            let next = if label == blocks { blocks + 1 } else { blocks };
            grow(k, nc, rgs, next, out);
        }
        rgs.pop();
    }
}

/// Number of blocks of p ∨ q, the join taken among all set partitions.
pub fn join_block_count(p: &Partition, q: &Partition) -> Result<usize> {
    if p.k() != q.k() {
        return Err(QwError::OutOfRange(format!(
            "join of partitions on {} and {} points",
            p.k(),
            q.k()
        )));
    }
    Ok(join_count_unchecked(p, q))
}

pub(crate) fn join_count_unchecked(p: &Partition, q: &Partition) -> usize {
    let k = p.k();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for labels in [&p.rgs, &q.rgs] {
        let mut first = [usize::MAX; 256];
        for (t, &b) in labels.iter().enumerate() {
            let f = &mut first[b as usize];
            if *f == usize::MAX {
                *f = t;
            } else {
                let (a, c) = (find(&mut parent, *f), find(&mut parent, t));
                if a != c {
                    parent[a] = c;
                }
            }
        }
    }
    (0..k).filter(|&x| find(&mut parent, x) == x).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let bell = [1, 2, 5, 15, 52, 203, 877];
        let catalan = [1, 2, 5, 14, 42, 132, 429];
        for k in 1..=7 {
            assert_eq!(enumerate_partitions(k, false).unwrap().len(), bell[k - 1]);
            assert_eq!(enumerate_partitions(k, true).unwrap().len(), catalan[k - 1]);
        }
    }

    #[test]
    fn canonical_order_k2() {
        let ps = enumerate_partitions(2, true).unwrap();
        assert_eq!(ps[0].to_string(), "{1}{2}");
        assert_eq!(ps[1].to_string(), "{1,2}");
    }

    #[test]
    fn the_crossing_one() {
        let all = enumerate_partitions(4, false).unwrap();
        let crossing: Vec<_> = all.iter().filter(|p| !p.is_noncrossing()).collect();
        assert_eq!(crossing.len(), 1);
        assert_eq!(crossing[0].to_string(), "{1,3}{2,4}");
    }

    #[test]
    fn joins() {
        let p = Partition::from_blocks(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let q = Partition::from_blocks(4, &[vec![2, 3], vec![1, 4]]).unwrap();
        assert_eq!(join_block_count(&p, &q).unwrap(), 1);
        assert_eq!(join_block_count(&p, &p).unwrap(), 2);
        let r = Partition::from_blocks(3, &[vec![1], vec![2], vec![3]]).unwrap();
        assert!(join_block_count(&p, &r).is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(enumerate_partitions(0, true).is_err());
        assert!(enumerate_partitions(13, true).is_err());
    }
}
