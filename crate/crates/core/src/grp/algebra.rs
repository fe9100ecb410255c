use std::collections::BTreeMap;

use super::element::GroupElement;
use super::spec::GroupSpec;
use super::subgroup::Subgroup;
use crate::scalar::Scalar;

/// Finitely supported element Σ c_g λ_g of the group algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAlgebra<S> {
    terms: BTreeMap<GroupElement, S>,
}

impl<S: Scalar> Default for GroupAlgebra<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> GroupAlgebra<S> {
    pub fn zero() -> Self {
        GroupAlgebra { terms: BTreeMap::new() }
    }

    pub fn basis(g: GroupElement) -> Self {
        let mut x = Self::zero();
        x.add_term(g, S::one());
        x
    }

    pub fn add_term(&mut self, g: GroupElement, c: S) {
        if c.is_negligible() {
            return;
        }
        let merged = match self.terms.remove(&g) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_negligible() {
            self.terms.insert(g, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElement) -> S {
        self.terms.get(g).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (g, v) in &self.terms {
            out.add_term(g.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self, spec: &GroupSpec) -> Self {
        let mut out = Self::zero();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(spec.multiply(g, h), a.clone() * b.clone());
            }
        }
        out
    }

    pub fn star(&self, spec: &GroupSpec) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(spec.inverse(g), c.clone());
        }
        out
    }

    /// (1/s) Σ_{l<s} λ_{g^l}: the minimal projection δ₀ of ⟨g⟩ ≅ ℤ_s.
    pub fn averaging_projection(spec: &GroupSpec, g: &GroupElement, s: u64) -> Self {
        let w = S::one() / S::from_i64(s as i64);
        let mut out = Self::zero();
        for l in 0..s as i64 {
            out.add_term(spec.power(g, l), w.clone());
        }
        out
    }
}

/// The Haar state of the dual: coefficient of the identity.
pub fn group_haar<S: Scalar>(x: &GroupAlgebra<S>, spec: &GroupSpec) -> S {
    x.coefficient(&spec.identity())
}

/// E_Λ: keep the terms supported on Λ.
pub fn subgroup_expectation<S: Scalar>(
    x: &GroupAlgebra<S>,
    lambda: &Subgroup,
    spec: &GroupSpec,
) -> GroupAlgebra<S> {
    let mut out = GroupAlgebra::zero();
    for (g, c) in x.terms() {
        if lambda.is_member(spec, g) {
            out.add_term(g.clone(), c.clone());
        }
    }
    out
}
