use crate::grp::{GroupElement, GroupSpec, Subgroup};
use crate::ncpart::UWord;

/// Shared parameters of Pol(Γ̂ ≀*,Λ̂ S_N⁺).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathCtx {
    pub n: usize,
    pub group: GroupSpec,
    pub sub: Subgroup,
}

/// h₀ · s₀ ν_{i₁}(g₁) s₁ ⋯ ν_{i_n}(g_n) s_n with h₀ ∈ Λ central.
///
/// `seps` always has one more entry than `letters`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathMonomial {
    pub head: GroupElement,
    pub seps: Vec<UWord>,
    pub letters: Vec<(u8, GroupElement)>,
}

impl WreathMonomial {
    pub fn unit(ctx: &WreathCtx) -> Self {
        WreathMonomial {
            head: ctx.group.identity(),
            seps: vec![UWord::empty()],
            letters: Vec::new(),
        }
    }

    pub fn nu_count(&self) -> usize {
        self.letters.len()
    }

    pub fn u_count(&self) -> usize {
        self.seps.iter().map(UWord::len).sum()
    }

    /// Concatenation before normalization; `other.head` becomes a Λ-letter.
    pub(crate) fn concat_raw(&self, other: &Self, ctx: &WreathCtx) -> Self {
        let mut seps = self.seps.clone();
        let mut letters = self.letters.clone();
        let mut tail = seps.pop().unwrap_or_default();
        if !ctx.group.is_identity(&other.head) {
            seps.push(tail);
            letters.push((1, other.head.clone()));
            tail = UWord::empty();
        }
        let mut rest = other.seps.iter();
        seps.push(tail.concat(rest.next().unwrap_or(&UWord::empty())));
        seps.extend(rest.cloned());
        letters.extend(other.letters.iter().cloned());
        WreathMonomial { head: self.head.clone(), seps, letters }
    }

    /// Adjoint before normalization.
    pub(crate) fn star_raw(&self, ctx: &WreathCtx) -> Self {
        let g = &ctx.group;
        let mut seps: Vec<UWord> = self.seps.iter().rev().map(UWord::reversed).collect();
        let mut letters: Vec<(u8, GroupElement)> =
            self.letters.iter().rev().map(|(i, x)| (*i, g.inverse(x))).collect();
        if !g.is_identity(&self.head) {
            letters.push((1, g.inverse(&self.head)));
            seps.push(UWord::empty());
        }
        WreathMonomial { head: g.identity(), seps, letters }
    }

    /// Rewrite to normal form; `None` if the monomial vanishes.
    ///
    /// Rules, applied until nothing changes: local u-reductions; drop
    /// ν_i(e); push each Λ-letter into the next ν-letter (else the previous
    /// one, else the head); push the head into the first ν-letter; merge
    /// equal-index ν-letters across an empty separator; move row-i letters
    /// at the start of the separator after ν_i to its left; vanish when a
    /// row-i letter before ν_i is orthogonal to the letter after it.
    pub fn normalize(mut self, ctx: &WreathCtx) -> Option<Self> {
        let g = &ctx.group;
        'outer: loop {
            for s in self.seps.iter_mut() {
                *s = s.reduce()?;
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
                if self.letters[t].0 == self.letters[t + 1].0 && self.seps[t + 1].is_empty() {
                    let (_, x) = self.letters.remove(t + 1);
                    self.seps.remove(t + 1);
                    self.letters[t].1 = g.multiply(&self.letters[t].1, &x);
                    continue 'outer;
                }
            }
            let mut moved = false;
            for t in 0..self.letters.len() {
                let row = self.letters[t].0;
                while self.seps[t + 1].0.first().is_some_and(|p| p.0 == row) {
                    let p = self.seps[t + 1].0.remove(0);
                    self.seps[t].0.push(p);
                    moved = true;
                }
            }
            if !moved {
                // u_ij ν_i(g) u_kj = ν_i(g) u_ij u_kj = 0 for k ≠ i.
                for t in 0..self.letters.len() {
                    let row = self.letters[t].0;
                    if let (Some(p), Some(r)) = (self.seps[t].0.last(), self.seps[t + 1].0.first()) {
                        if p.0 == row && r.0 != row && p.1 == r.1 {
                            return None;
                        }
                    }
                }
                return Some(self);
            }
        }
    }

    fn remove_letter(&mut self, t: usize) {
        self.letters.remove(t);
        let after = self.seps.remove(t + 1);
        self.seps[t] = self.seps[t].concat(&after);
    }

    pub fn render(&self, ctx: &WreathCtx) -> String {
        let g = &ctx.group;
        let mut parts = Vec::new();
        if !g.is_identity(&self.head) {
            parts.push(format!("nu(1,{})", g.format(&self.head)));
        }
        for (t, s) in self.seps.iter().enumerate() {
            if !s.is_empty() {
                parts.push(s.render());
            }
            if let Some((i, x)) = self.letters.get(t) {
                parts.push(format!("nu({i},{})", g.format(x)));
            }
        }
        parts.join("*")
    }
}
