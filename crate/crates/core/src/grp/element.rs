/// Normal-form group element; the variant always matches its [`GroupSpec`].
///
/// [`GroupSpec`]: super::GroupSpec
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Row index into the multiplication table.
    Finite(usize),
    /// Exponent of the generator, reduced mod s.
    Cyclic(u64),
    Int(i64),
    /// Freely reduced syllables (generator, nonzero exponent); neighbours differ.
    Free(Vec<(u8, i64)>),
    Amalgam(AmalgamWord),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// c₁ c₂ ⋯ c_n · t^tail: alternating nontrivial coset representatives
/// followed by a power of the amalgamated generator t.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AmalgamWord {
    pub syllables: Vec<(Side, GroupElement)>,
    pub tail: u64,
}

impl AmalgamWord {
    /// Number of syllables, the length invariant of the normal form.
    pub fn length(&self) -> usize {
        self.syllables.len()
    }
}
