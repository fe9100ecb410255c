//! The Haar state of the free wreath product and the conditional expectation
//! onto C(Λ̂) ⊗ C(S_N⁺).
//!
//! Every monomial is rewritten as a base element plus reduced words. Scanning
//! left to right, the first separator a between equal-index letters
//! ν_i(g) a ν_i(g') is split as E_i(a) + (a − E_i(a)). The E_i part lies in
//! span{u_ij} and commutes with ν_i, so the two letters merge into ν_i(gg');
//! that branch has one letter fewer and rescans. The other branch keeps a
//! separator killed by E_i and moves on. A branch with no adjacency left is a
//! reduced word (all its letters lie outside Λ) and is killed.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::element::Wreath;
use super::monomial::{WreathCtx, WreathMonomial};
use crate::bounds;
use crate::error::{QwError, Result};
use crate::grp::{GroupElement, GroupSpec, Side};
use crate::ncpart::{render_terms, SnPlus, UWord};
use crate::scalar::Scalar;

/// Σ c · λ_h ⊗ w in C(Λ̂) ⊗ C(S_N⁺).
#[derive(Debug, Clone, PartialEq)]
pub struct BaseElement<S> {
    ctx: Arc<WreathCtx>,
    terms: BTreeMap<(GroupElement, UWord), S>,
}

impl<S: Scalar> BaseElement<S> {
    fn new(ctx: &Arc<WreathCtx>) -> Self {
        BaseElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    fn add(&mut self, h: GroupElement, w: UWord, c: S) {
        let Some(w) = w.reduce() else { return };
        let key = (h, w);
        let merged = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_negligible() {
            self.terms.insert(key, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GroupElement, UWord), &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// (h_Λ ⊗ h_{S_N⁺}) applied to the element.
    pub fn state(&self) -> Result<S> {
        let mut acc = S::zero();
        for ((h, w), c) in &self.terms {
            if self.ctx.group.is_identity(h) {
                acc = acc + c.clone() * SnPlus::<S>::from_word(self.ctx.n, w)?.haar()?;
            }
        }
        Ok(acc)
    }

    /// The C(S_N⁺) component attached to a fixed h ∈ Λ.
    pub fn component(&self, h: &GroupElement) -> SnPlus<S> {
        let mut out = SnPlus::zero(self.ctx.n);
        for ((g, w), c) in &self.terms {
            if g == h {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    pub fn to_wreath(&self) -> Wreath<S> {
        let mut out = Wreath::zero(&self.ctx);
        for ((h, w), c) in &self.terms {
            let m = WreathMonomial { head: h.clone(), seps: vec![w.clone()], letters: Vec::new() };
            out.add_monomial(m, c.clone());
        }
        out
    }

    pub fn render(&self) -> String {
        let ctx = &self.ctx;
        render_terms(self.terms.iter().map(|((h, w), c)| {
            let m = WreathMonomial { head: h.clone(), seps: vec![w.clone()], letters: Vec::new() };
            (m.render(ctx), c)
        }))
    }
}

#[derive(Clone)]
struct Branch<S> {
    coeff: S,
    head: GroupElement,
    seps: Vec<SnPlus<S>>,
    letters: Vec<(u8, GroupElement)>,
    pos: usize,
}

impl<S: Scalar> Branch<S> {
    fn from_monomial(ctx: &WreathCtx, m: &WreathMonomial, c: S) -> Result<Self> {
        let seps = m
            .seps
            .iter()
            .map(|w| SnPlus::from_word(ctx.n, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Branch { coeff: c, head: m.head.clone(), seps, letters: m.letters.clone(), pos: 0 })
    }

    fn remove_letter(&mut self, t: usize) {
        self.letters.remove(t);
        let after = self.seps.remove(t + 1);
        self.seps[t] = &self.seps[t] * &after;
        self.pos = 0;
    }

    /// Structural rewrites that keep the branch value; `false` if it is zero.
    fn settle(&mut self, ctx: &WreathCtx) -> bool {
        let g = &ctx.group;
        'outer: loop {
            if self.seps.iter().any(SnPlus::is_zero) {
                return false;
            }
            if let Some(t) = self.letters.iter().position(|(_, x)| g.is_identity(x)) {
                self.remove_letter(t);
                continue;
            }
            if let Some(t) = self.letters.iter().position(|(_, x)| ctx.sub.is_member(g, x)) {
                let h = self.letters[t].1.clone();
                if t + 1 < self.letters.len() {
                    self.letters[t + 1].1 = g.multiply(&h, &self.letters[t + 1].1);
                } else if t > 0 {
                    self.letters[t - 1].1 = g.multiply(&self.letters[t - 1].1, &h);
                } else {
                    self.head = g.multiply(&self.head, &h);
                }
                self.remove_letter(t);
                continue;
            }
            if !g.is_identity(&self.head) && !self.letters.is_empty() {
                self.letters[0].1 = g.multiply(&self.head, &self.letters[0].1);
                self.head = g.identity();
                continue;
            }
            for t in 0..self.letters.len().saturating_sub(1) {
                if self.letters[t].0 != self.letters[t + 1].0 {
                    continue;
                }
                if let Some(c) = self.seps[t + 1].as_scalar() {
                    let (_, x) = self.letters.remove(t + 1);
                    self.seps.remove(t + 1);
                    self.letters[t].1 = g.multiply(&self.letters[t].1, &x);
                    self.coeff = self.coeff.clone() * c;
                    self.pos = 0;
                    continue 'outer;
                }
            }
            return true;
        }
    }
}

fn expand_monomial<S: Scalar>(
    ctx: &Arc<WreathCtx>,
    m: &WreathMonomial,
    c: &S,
    out: &mut BaseElement<S>,
) -> Result<()> {
    bounds::check("nu-letters per monomial", m.nu_count(), bounds::max_nu_letters())?;
    bounds::check("u-letters per monomial", m.u_count(), bounds::max_u_letters())?;
    let mut stack = vec![Branch::from_monomial(ctx, m, c.clone())?];
    while let Some(mut b) = stack.pop() {
        if !b.settle(ctx) {
            continue;
        }
        if b.letters.is_empty() {
            for (w, v) in b.seps[0].terms() {
                out.add(b.head.clone(), w.clone(), b.coeff.clone() * v.clone());
            }
            continue;
        }
        let last = b.letters.len() - 1;
        let Some(t) = (b.pos..last).find(|&t| b.letters[t].0 == b.letters[t + 1].0) else {
            continue;
        };
        let i = b.letters[t].0 as usize;
        let sep = &b.seps[t + 1];
        let e = sep.cond_expect_row(i)?;
        let rest = sep - &e;
        for (w, cj) in e.terms() {
            let mut m = b.clone();
            m.coeff = m.coeff.clone() * cj.clone();
            let (_, x) = m.letters.remove(t + 1);
            m.letters[t].1 = ctx.group.multiply(&m.letters[t].1, &x);
            m.seps.remove(t + 1);
            m.seps[t] = &m.seps[t] * &SnPlus::from_word(ctx.n, w)?;
            // Adjacencies left of t − 1 are untouched by the merge.
            m.pos = t.saturating_sub(1);
            stack.push(m);
        }
        if !rest.is_zero() {
            b.seps[t + 1] = rest;
            b.pos = t + 1;
            stack.push(b);
        }
    }
    Ok(())
}

impl<S: Scalar> Wreath<S> {
    /// The conditional expectation E onto C(Λ̂) ⊗ C(S_N⁺) that kills reduced words.
    pub fn expect_onto_base(&self) -> Result<BaseElement<S>> {
        let mut out = BaseElement::new(self.ctx());
        for (m, c) in self.terms() {
            expand_monomial(self.ctx(), m, c, &mut out)?;
        }
        Ok(out)
    }

    /// The Haar state h = (h_Λ ⊗ h_{S_N⁺}) ∘ E.
    pub fn haar(&self) -> Result<S> {
        self.expect_onto_base()?.state()
    }

    /// Haar state at N = 2 through C(Γ̂ ≀*,Λ̂ S₂⁺) ≅ C*(Γ *_Λ Γ) ⊗ C(S₂),
    /// ν_i(g) ↦ λ_{g in copy i} ⊗ 1, u_ij ↦ 1 ⊗ χ_ij.
    pub fn haar_semidirect_n2(&self) -> Result<S> {
        let ctx = self.ctx();
        if ctx.n != 2 {
            return Err(QwError::OutOfRange(format!("semidirect oracle needs N=2, got N={}", ctx.n)));
        }
        let (lg, k) = ctx.sub.generator_and_order(&ctx.group);
        let doubled = GroupSpec::amalgam(ctx.group.clone(), ctx.group.clone(), k, lg.clone(), lg)?;
        let GroupSpec::Amalgam(sp) = &doubled else { unreachable!() };
        let mut acc = S::zero();
        for (m, c) in self.terms() {
            let mut x = sp.embed(Side::Left, &m.head);
            for (i, g) in &m.letters {
                let side = if *i == 1 { Side::Left } else { Side::Right };
                x = doubled.multiply(&x, &sp.embed(side, g));
            }
            if !doubled.is_identity(&x) {
                continue;
            }
            // Average of Π χ_{ij}(σ) = Π [σ(j) = i] over S₂.
            let letters: Vec<(u8, u8)> = m.seps.iter().flat_map(|s| s.0.iter().copied()).collect();
            let hits = [[1u8, 2], [2, 1]]
                .iter()
                .filter(|sigma| letters.iter().all(|&(i, j)| sigma[j as usize - 1] == i))
                .count();
            acc = acc + c.clone() * S::from_i64(hits as i64) / S::from_i64(2);
        }
        Ok(acc)
    }
}
