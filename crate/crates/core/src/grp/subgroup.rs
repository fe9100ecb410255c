use super::element::GroupElement;
use super::spec::GroupSpec;
use crate::error::{QwError, Result};

/// A finite subgroup Λ ≤ Γ given by a membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subgroup {
    Trivial,
    /// ⟨g⟩ for g of finite order.
    Cyclic { generator: GroupElement, order: u64 },
    /// The amalgamated subgroup of an amalgam spec.
    AmalgamBase,
}

impl Subgroup {
    pub fn cyclic(spec: &GroupSpec, generator: GroupElement) -> Result<Self> {
        let order = spec
            .order(&generator)
            .ok_or_else(|| QwError::Unsupported("only finite subgroups are supported".into()))?;
        if order == 1 {
            return Ok(Subgroup::Trivial);
        }
        Ok(Subgroup::Cyclic { generator, order })
    }

    /// Parse `trivial`, `<word>` or `amalgam`.
    pub fn parse(spec: &GroupSpec, text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "" | "trivial" | "1" => Ok(Subgroup::Trivial),
            "amalgam" | "base" => match spec {
                GroupSpec::Amalgam(_) => Ok(Subgroup::AmalgamBase),
                _ => Err(QwError::InvalidSpec("`amalgam` subgroup needs an amalgam group".into())),
            },
            _ => {
                let inner = t
                    .strip_prefix('<')
                    .and_then(|r| r.strip_suffix('>'))
                    .ok_or_else(|| QwError::Syntax {
                        line: 1,
                        col: 1,
                        msg: format!("subgroup must be `trivial`, `amalgam` or `<word>`, got `{text}`"),
                    })?;
                Self::cyclic(spec, spec.parse_word(inner)?)
            }
        }
    }

    /// Generator and order (the identity and 1 for the trivial subgroup).
    pub fn generator_and_order(&self, spec: &GroupSpec) -> (GroupElement, u64) {
        match (self, spec) {
            (Subgroup::Trivial, _) => (spec.identity(), 1),
            (Subgroup::Cyclic { generator, order }, _) => (generator.clone(), *order),
            (Subgroup::AmalgamBase, GroupSpec::Amalgam(a)) => (a.base_element(1), a.order_k()),
            (Subgroup::AmalgamBase, _) => (spec.identity(), 1),
        }
    }

    pub fn order(&self, spec: &GroupSpec) -> u64 {
        self.generator_and_order(spec).1
    }

    pub fn is_trivial(&self, spec: &GroupSpec) -> bool {
        self.order(spec) == 1
    }

    pub fn elements(&self, spec: &GroupSpec) -> Vec<GroupElement> {
        let (g, k) = self.generator_and_order(spec);
        (0..k as i64).map(|l| spec.power(&g, l)).collect()
    }

    pub fn is_member(&self, spec: &GroupSpec, g: &GroupElement) -> bool {
        match self {
            Subgroup::Trivial => spec.is_identity(g),
            Subgroup::Cyclic { .. } => self.elements(spec).contains(g),
            Subgroup::AmalgamBase => match g {
                GroupElement::Amalgam(w) => w.syllables.is_empty(),
                _ => false,
            },
        }
    }

    /// Diagnostic closure check on the subgroup's own elements.
    pub fn check_closed(&self, spec: &GroupSpec) -> Result<()> {
        let els = self.elements(spec);
        for a in &els {
            if !self.is_member(spec, &spec.inverse(a)) {
                return Err(QwError::InvalidSpec("subgroup not closed under inverse".into()));
            }
            for b in els.iter().take(64) {
                if !self.is_member(spec, &spec.multiply(a, b)) {
                    return Err(QwError::InvalidSpec("subgroup not closed under product".into()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let c6 = GroupSpec::cyclic(6).unwrap();
        let lam = Subgroup::parse(&c6, "<a^3>").unwrap();
        assert!(lam.is_member(&c6, &GroupElement::Cyclic(3)));
        assert!(!lam.is_member(&c6, &GroupElement::Cyclic(2)));
        assert_eq!(lam.order(&c6), 2);
        lam.check_closed(&c6).unwrap();
        assert!(Subgroup::parse(&GroupSpec::Int, "<a>").is_err());
    }
}
