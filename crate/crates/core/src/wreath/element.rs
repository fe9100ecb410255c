use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::{WreathCtx, WreathMonomial};
use crate::bounds;
use crate::error::{QwError, Result};
use crate::grp::{GroupElement, GroupSpec, Subgroup};
use crate::ncpart::{render_terms, SnPlus, UWord};
use crate::scalar::Scalar;

/// Linear combination of normalized monomials in Pol(Γ̂ ≀*,Λ̂ S_N⁺).
#[derive(Debug, Clone, PartialEq)]
pub struct Wreath<S> {
    ctx: Arc<WreathCtx>,
    terms: BTreeMap<WreathMonomial, S>,
}

impl WreathCtx {
    /// Validate and share a context; Λ must be finite and closed.
    pub fn new(n: usize, group: GroupSpec, sub: Subgroup) -> Result<Arc<Self>> {
        if n == 0 || n > 255 {
            return Err(QwError::OutOfRange(format!("N={n} outside 1..=255")));
        }
        sub.check_closed(&group)?;
        Ok(Arc::new(WreathCtx { n, group, sub }))
    }

    pub fn trivial_sub(n: usize, group: GroupSpec) -> Result<Arc<Self>> {
        Self::new(n, group, Subgroup::Trivial)
    }
}

fn check_bounds(m: &WreathMonomial) -> Result<()> {
    bounds::check("nu-letters per monomial", m.nu_count(), bounds::max_nu_letters())?;
    bounds::check("u-letters per monomial", m.u_count(), bounds::max_u_letters())
}

impl<S: Scalar> Wreath<S> {
    pub fn zero(ctx: &Arc<WreathCtx>) -> Self {
        Wreath { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(ctx: &Arc<WreathCtx>, c: S) -> Self {
        let mut x = Self::zero(ctx);
        x.add_monomial(WreathMonomial::unit(ctx), c);
        x
    }

    pub fn one(ctx: &Arc<WreathCtx>) -> Self {
        Self::scalar(ctx, S::one())
    }

    pub fn u(ctx: &Arc<WreathCtx>, i: usize, j: usize) -> Result<Self> {
        let w = SnPlus::<S>::u(ctx.n, i, j)?;
        Ok(Self::from_snplus(ctx, &w))
    }

    pub fn nu(ctx: &Arc<WreathCtx>, i: usize, g: GroupElement) -> Result<Self> {
        if i == 0 || i > ctx.n {
            return Err(QwError::OutOfRange(format!("nu index {i} outside 1..={}", ctx.n)));
        }
        let m = WreathMonomial {
            head: ctx.group.identity(),
            seps: vec![UWord::empty(), UWord::empty()],
            letters: vec![(i as u8, g)],
        };
        let mut x = Self::zero(ctx);
        x.add_monomial(m, S::one());
        Ok(x)
    }

    pub fn from_snplus(ctx: &Arc<WreathCtx>, x: &SnPlus<S>) -> Self {
        let mut out = Self::zero(ctx);
        for (w, c) in x.terms() {
            let m = WreathMonomial { head: ctx.group.identity(), seps: vec![w.clone()], letters: Vec::new() };
            out.add_monomial(m, c.clone());
        }
        out
    }

    pub fn ctx(&self) -> &Arc<WreathCtx> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WreathMonomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Normalize and add c·m.
    pub fn add_monomial(&mut self, m: WreathMonomial, c: S) {
        if c.is_negligible() {
            return;
        }
        let Some(m) = m.normalize(&self.ctx) else { return };
        let merged = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_negligible() {
            self.terms.insert(m, merged);
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(QwError::SpecMismatch("wreath elements over different N, Γ or Λ".into()));
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_monomial(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, v) in &self.terms {
            out.add_monomial(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = Self::zero(&self.ctx);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let raw = a.concat_raw(b, &self.ctx);
                if let Some(m) = raw.normalize(&self.ctx) {
                    check_bounds(&m)?;
                    out.add_monomial(m, x.clone() * y.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn star(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_monomial(m.star_raw(&self.ctx), c.clone());
        }
        out
    }

    pub fn check_bounds(&self) -> Result<()> {
        self.terms.keys().try_for_each(check_bounds)
    }

    /// The element as a C(S_N⁺) element when it has no group letters.
    pub fn as_snplus(&self) -> Option<SnPlus<S>> {
        let mut out = SnPlus::zero(self.ctx.n);
        for (m, c) in &self.terms {
            if !m.letters.is_empty() || !self.ctx.group.is_identity(&m.head) {
                return None;
            }
            out.add_term(m.seps[0].clone(), c.clone());
        }
        Some(out)
    }
}

impl<S: Scalar> fmt::Display for Wreath<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = &self.ctx;
        f.write_str(&render_terms(self.terms.iter().map(|(m, c)| (m.render(ctx), c))))
    }
}
