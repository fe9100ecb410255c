use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::intmat::IntMatrix;
use super::snf::{integer_nullspace, integer_solve, lattice_basis, smith_normal_form};
use crate::error::{QwError, Result};

pub type ZMat = IntMatrix<BigInt>;

/// ℤ^g modulo the row span of an r×g relation matrix.
#[derive(Debug, Clone)]
pub struct FgAbGroup {
    gens: usize,
    relations: ZMat,
    labels: Option<Vec<String>>,
    unit: Option<Vec<BigInt>>,
    invariants: (usize, Vec<BigInt>),
}

fn invariants_of(gens: usize, relations: &ZMat) -> (usize, Vec<BigInt>) {
    let s = smith_normal_form(relations);
    let torsion = s.factors.iter().filter(|d| !d.is_one()).cloned().collect();
    (gens - s.rank(), torsion)
}

impl FgAbGroup {
    pub fn new(gens: usize, relations: ZMat) -> Result<Self> {
        if relations.cols() != gens {
            return Err(QwError::Graph(format!(
                "relation matrix has {} columns for {gens} generators",
                relations.cols()
            )));
        }
        let invariants = invariants_of(gens, &relations);
        Ok(FgAbGroup { gens, relations, labels: None, unit: None, invariants })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, ZMat::zeros(0, rank)).unwrap()
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// ℤ^rank ⊕ ⊕ ℤ/d, generators ordered free part first.
    pub fn from_invariants(rank: usize, torsion: &[BigInt]) -> Self {
        let g = rank + torsion.len();
        let rows = torsion
            .iter()
            .enumerate()
            .map(|(t, d)| (0..g).map(|j| if j == rank + t { d.clone() } else { BigInt::zero() }).collect())
            .collect();
        Self::new(g, ZMat::from_rows(rows, g)).unwrap()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.gens {
            return Err(QwError::Graph(format!("{} labels for {} generators", labels.len(), self.gens)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_unit(mut self, unit: Vec<BigInt>) -> Result<Self> {
        if unit.len() != self.gens {
            return Err(QwError::Graph(format!("unit vector of length {} for {} generators", unit.len(), self.gens)));
        }
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &ZMat {
        &self.relations
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels.as_ref().map_or_else(|| format!("g{}", i + 1), |l| l[i].clone())
    }

    pub fn unit(&self) -> Option<&[BigInt]> {
        self.unit.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.invariants.0
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.invariants.1
    }

    /// (rank, torsion invariant factors).
    pub fn invariant_factors(&self) -> (usize, Vec<BigInt>) {
        self.invariants.clone()
    }

    pub fn is_free(&self) -> bool {
        self.torsion().is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0 && self.is_free()
    }

    pub fn iso(&self, other: &Self) -> bool {
        self.invariants == other.invariants
    }

    /// Whether x ∈ ℤ^g is zero in the group.
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        x.iter().all(Zero::is_zero) || integer_solve(&self.relations.transpose(), x).is_some()
    }

    /// Whether x has finite order in the group.
    pub fn is_torsion_element(&self, x: &[BigInt]) -> bool {
        // Over ℚ: x lies in the rational span of the relations.
        let stacked = self.relations.vstack(&ZMat::from_rows(vec![x.to_vec()], self.gens));
        smith_normal_form(&stacked).rank() == smith_normal_form(&self.relations).rank()
    }

    /// ℤ^rank ⊕ ⊕ ℤ/d_i on SNF coordinates; the unit is carried along.
    pub fn simplify(&self) -> Self {
        let s = smith_normal_form(&self.relations);
        let g = self.gens;
        let keep: Vec<usize> = (0..g).filter(|&i| i >= s.rank() || !s.factors[i].is_one()).collect();
        let rank_start = s.rank();
        let mut order: Vec<usize> = keep.iter().copied().filter(|&i| i >= rank_start).collect();
        order.extend(keep.iter().copied().filter(|&i| i < rank_start));
        let torsion: Vec<BigInt> = order.iter().filter(|&&i| i < rank_start).map(|&i| s.factors[i].clone()).collect();
        let mut out = Self::from_invariants(g - rank_start, &torsion);
        if let Some(u) = &self.unit {
            // R·V = U⁻¹·D, so x ↦ Vᵀx carries the relations onto the rows of D.
            let y = s.v.transpose().mul_vec(u);
            let mut nu: Vec<BigInt> = order.iter().map(|&i| y[i].clone()).collect();
            for (t, d) in torsion.iter().enumerate() {
                let c = &mut nu[g - rank_start + t];
                *c = ((c.clone() % d) + d) % d;
            }
            out.unit = Some(nu);
        }
        out
    }

    /// Direct sum, with generators of `self` first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let rel = ZMat::block_diag(&[self.relations.clone(), other.relations.clone()]);
        let mut out = Self::new(self.gens + other.gens, rel).unwrap();
        if self.labels.is_some() || other.labels.is_some() {
            let mut l: Vec<String> = (0..self.gens).map(|i| self.label(i)).collect();
            l.extend((0..other.gens).map(|i| other.label(i)));
            out.labels = Some(l);
        }
        out
    }
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.iso(other)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let t = self.torsion();
        let mut i = 0;
        while i < t.len() {
            let run = t[i..].iter().take_while(|d| **d == t[i]).count();
            if run == 1 {
                parts.push(format!("Z/{}", t[i]));
            } else {
                parts.push(format!("(Z/{})^{run}", t[i]));
            }
            i += run;
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" (+) "))
        }
    }
}

/// Homomorphism given on generators: column j is the image of generator j.
#[derive(Debug, Clone)]
pub struct AbHom {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: ZMat,
}

impl AbHom {
    /// Validates dimensions and that relations map to relations.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: ZMat) -> Result<Self> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(QwError::IllDefined(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens(),
                source.gens()
            )));
        }
        let h = AbHom { source, target, matrix };
        h.check_well_defined()?;
        Ok(h)
    }

    pub fn zero(source: FgAbGroup, target: FgAbGroup) -> Self {
        let matrix = ZMat::zeros(target.gens(), source.gens());
        AbHom { source, target, matrix }
    }

    pub fn check_well_defined(&self) -> Result<()> {
        let rt = self.target.relations.transpose();
        for (k, r) in self.source.relations.row_vectors().iter().enumerate() {
            let img = self.matrix.mul_vec(r);
            if img.iter().all(Zero::is_zero) {
                continue;
            }
            if integer_solve(&rt, &img).is_none() {
                return Err(QwError::IllDefined(format!(
                    "source relation {} does not map into the target relations",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// Target modulo the image; generators and labels of the target are kept.
    pub fn cokernel(&self) -> FgAbGroup {
        let rel = self.target.relations.vstack(&self.matrix.transpose());
        let mut out = FgAbGroup::new(self.target.gens(), rel).unwrap();
        out.labels = self.target.labels.clone();
        out.unit = self.target.unit.clone();
        out
    }

    /// {x : f(x) = 0} modulo the source relations, on a lattice basis of the
    /// preimage of the target relations.
    pub fn kernel(&self) -> FgAbGroup {
        let a = self.source.gens();
        let rb = self.target.relations.transpose();
        let big = self.matrix.hstack(&rb.neg());
        let null = integer_nullspace(&big);
        let gens = ZMat::from_fn(null.cols(), a, |i, j| null.get(j, i).clone());
        let basis = lattice_basis(&gens);
        let k = basis.rows();
        let bt = basis.transpose();
        let rows: Vec<Vec<BigInt>> = self
            .source
            .relations
            .row_vectors()
            .iter()
            .map(|r| integer_solve(&bt, r).expect("well-defined map: relations lie in the kernel lattice"))
            .collect();
        FgAbGroup::new(k, ZMat::from_rows(rows, k)).unwrap()
    }

    /// Rank of the image over ℚ.
    pub fn image_rank(&self) -> usize {
        self.source.rank() - self.kernel().rank()
    }
}

/// Integer vector formatting "[a,b,c]".
pub fn render_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn z(rows: &[Vec<i64>], cols: usize) -> ZMat {
        ZMat::from_i64(rows, cols)
    }

    #[test]
    fn invariants() {
        let g = FgAbGroup::new(3, z(&[vec![2, 0, 0], vec![0, 3, 0]], 3)).unwrap();
        assert_eq!(g.invariant_factors(), (1, vec![BigInt::from(6)]));
        assert_eq!(g.to_string(), "Z (+) Z/6");
        assert_eq!(FgAbGroup::free(2).to_string(), "Z^2");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        let t = FgAbGroup::from_invariants(0, &vec![BigInt::from(2); 3]);
        assert_eq!(t.to_string(), "(Z/2)^3");
    }

    #[test]
    fn kernels_and_cokernels() {
        let zg = FgAbGroup::free(1);
        let f = AbHom::new(zg.clone(), zg.clone(), z(&[vec![-2]], 1)).unwrap();
        assert_eq!(f.cokernel().to_string(), "Z/2");
        assert!(f.kernel().is_trivial());
        let zero = AbHom::zero(FgAbGroup::free(3), FgAbGroup::free(2));
        assert_eq!(zero.kernel().to_string(), "Z^3");
        let id = AbHom::new(FgAbGroup::free(2), FgAbGroup::free(2), ZMat::identity(2)).unwrap();
        assert!(id.cokernel().is_trivial());
        // ℤ/4 → ℤ/4, x ↦ 2x has kernel ℤ/2.
        let c4 = FgAbGroup::from_invariants(0, &[BigInt::from(4)]);
        let d = AbHom::new(c4.clone(), c4, z(&[vec![2]], 1)).unwrap();
        assert_eq!(d.kernel().to_string(), "Z/2");
        assert_eq!(d.cokernel().to_string(), "Z/2");
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        let c2 = FgAbGroup::from_invariants(0, &[BigInt::from(2)]);
        assert!(AbHom::new(c2, FgAbGroup::free(1), z(&[vec![1]], 1)).is_err());
    }

    #[test]
    fn simplify_tracks_unit() {
        let g = FgAbGroup::new(2, z(&[vec![1, -1]], 2)).unwrap().with_unit(vec![1.into(), 0.into()]).unwrap();
        let s = g.simplify();
        assert_eq!(s.gens(), 1);
        assert_eq!(s.unit().unwrap()[0].abs(), BigInt::one());
    }
}
