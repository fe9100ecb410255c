use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::{AmalgamWord, GroupElement, Side};
use crate::error::{QwError, Result};

const MAX_ORDER_SEARCH: u64 = 100_000;
const FULL_ASSOCIATIVITY_UP_TO: usize = 24;

/// A computable discrete group Γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Finite(FiniteGroup),
    Cyclic(u64),
    Int,
    Free(usize),
    Amalgam(Box<AmalgamSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

/// Γ₁ *_C Γ₂ with C cyclic of order k, generated by `left_gen` ≡ `right_gen`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamSpec {
    left: GroupSpec,
    right: GroupSpec,
    k: u64,
    left_powers: Vec<GroupElement>,
    right_powers: Vec<GroupElement>,
}

/// One letter of a raw word: global letter index, optional element index
/// (finite groups), exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawLetter {
    pub letter: usize,
    pub sub: Option<usize>,
    pub exp: i64,
}

impl FiniteGroup {
    /// Validate a multiplication table (entries are 0-based element indices).
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(QwError::InvalidSpec("table must be square with entries in 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| QwError::InvalidSpec("table has no identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| QwError::InvalidSpec(format!("element {x} has no inverse")))?;
            inverses.push(inv);
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= FULL_ASSOCIATIVITY_UP_TO {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(QwError::InvalidSpec(format!(
                                "table not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(QwError::InvalidSpec(format!(
                        "table not associative at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverses })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
}

fn letter_name(idx: usize) -> Result<char> {
    if idx >= 26 {
        return Err(QwError::InvalidSpec("more than 26 generator letters".into()));
    }
    Ok((b'a' + idx as u8) as char)
}

fn power_token(name: &str, e: i64) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

impl GroupSpec {
    pub fn cyclic(s: u64) -> Result<Self> {
        if s == 0 {
            return Err(QwError::InvalidSpec("cyclic order must be at least 1".into()));
        }
        Ok(GroupSpec::Cyclic(s))
    }

    pub fn free(m: usize) -> Result<Self> {
        if m == 0 || m > 26 {
            return Err(QwError::InvalidSpec("free rank must be in 1..=26".into()));
        }
        Ok(GroupSpec::Free(m))
    }

    /// Γ₁ *_{ℤ_k} Γ₂ identifying `left_gen` with `right_gen`, both of exact order k.
    pub fn amalgam(
        left: GroupSpec,
        right: GroupSpec,
        k: u64,
        left_gen: GroupElement,
        right_gen: GroupElement,
    ) -> Result<Self> {
        if k == 0 {
            return Err(QwError::InvalidSpec("amalgam order must be at least 1".into()));
        }
        for (spec, g, side) in [(&left, &left_gen, "left"), (&right, &right_gen, "right")] {
            match spec.order(g) {
                Some(o) if o == k => {}
                Some(o) => {
                    return Err(QwError::InvalidSpec(format!(
                        "{side} amalgam image has order {o}, expected {k}"
                    )))
                }
                None => {
                    return Err(QwError::InvalidSpec(format!(
                        "{side} amalgam image has infinite order"
                    )))
                }
            }
        }
        let powers = |spec: &GroupSpec, g: &GroupElement| {
            (0..k as i64).map(|l| spec.power(g, l)).collect::<Vec<_>>()
        };
        let spec = AmalgamSpec {
            left_powers: powers(&left, &left_gen),
            right_powers: powers(&right, &right_gen),
            left,
            right,
            k,
        };
        let out = GroupSpec::Amalgam(Box::new(spec));
        if out.depth() > 2 {
            return Err(QwError::InvalidSpec("amalgam nesting deeper than 2".into()));
        }
        letter_name(out.letter_count().saturating_sub(1))?;
        Ok(out)
    }

    pub fn depth(&self) -> usize {
        match self {
            GroupSpec::Amalgam(a) => 1 + a.left.depth().max(a.right.depth()),
            _ => 0,
        }
    }

    /// Number of generator letters this spec occupies.
    pub fn letter_count(&self) -> usize {
        match self {
            GroupSpec::Free(m) => *m,
            GroupSpec::Amalgam(a) => a.left.letter_count() + a.right.letter_count(),
            _ => 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            GroupSpec::Finite(_) | GroupSpec::Cyclic(_) => true,
            GroupSpec::Int | GroupSpec::Free(_) => false,
            GroupSpec::Amalgam(a) => {
                a.left.is_finite() && a.right.is_finite() && {
                    let (l, r) = (a.left.cardinality(), a.right.cardinality());
                    l == Some(a.k) || r == Some(a.k)
                }
            }
        }
    }

    fn cardinality(&self) -> Option<u64> {
        match self {
            GroupSpec::Finite(f) => Some(f.order() as u64),
            GroupSpec::Cyclic(s) => Some(*s),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Finite(f) => GroupElement::Finite(f.identity),
            GroupSpec::Cyclic(_) => GroupElement::Cyclic(0),
            GroupSpec::Int => GroupElement::Int(0),
            GroupSpec::Free(_) => GroupElement::Free(Vec::new()),
            GroupSpec::Amalgam(_) => GroupElement::Amalgam(AmalgamWord::default()),
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.identity()
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (GroupSpec::Finite(f), GroupElement::Finite(x), GroupElement::Finite(y)) => {
                GroupElement::Finite(f.table[*x][*y])
            }
            (GroupSpec::Cyclic(s), GroupElement::Cyclic(x), GroupElement::Cyclic(y)) => {
                GroupElement::Cyclic((x + y) % s)
            }
            (GroupSpec::Int, GroupElement::Int(x), GroupElement::Int(y)) => GroupElement::Int(x + y),
            (GroupSpec::Free(_), GroupElement::Free(x), GroupElement::Free(y)) => {
                let mut out = x.clone();
                for &syl in y {
                    push_free(&mut out, syl);
                }
                GroupElement::Free(out)
            }
            (GroupSpec::Amalgam(sp), GroupElement::Amalgam(x), GroupElement::Amalgam(y)) => {
                let mut out = x.clone();
                for (side, f) in &y.syllables {
                    sp.absorb(&mut out, *side, f);
                }
                if y.tail != 0 {
                    let t = sp.left_powers[y.tail as usize].clone();
                    sp.absorb(&mut out, Side::Left, &t);
                }
                GroupElement::Amalgam(out)
            }
            _ => panic!("group element does not belong to spec: {a:?} * {b:?} in {self:?}"),
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        match (self, g) {
            (GroupSpec::Finite(f), GroupElement::Finite(x)) => GroupElement::Finite(f.inverses[*x]),
            (GroupSpec::Cyclic(s), GroupElement::Cyclic(x)) => GroupElement::Cyclic((s - x) % s),
            (GroupSpec::Int, GroupElement::Int(x)) => GroupElement::Int(-x),
            (GroupSpec::Free(_), GroupElement::Free(x)) => {
                GroupElement::Free(x.iter().rev().map(|&(g, e)| (g, -e)).collect())
            }
            (GroupSpec::Amalgam(sp), GroupElement::Amalgam(x)) => {
                let mut out = AmalgamWord::default();
                if x.tail != 0 {
                    let t = sp.left_powers[((sp.k - x.tail) % sp.k) as usize].clone();
                    sp.absorb(&mut out, Side::Left, &t);
                }
                for (side, f) in x.syllables.iter().rev() {
                    let inv = sp.factor(*side).inverse(f);
                    sp.absorb(&mut out, *side, &inv);
                }
                GroupElement::Amalgam(out)
            }
            _ => panic!("group element does not belong to spec: {g:?} in {self:?}"),
        }
    }

    pub fn power(&self, g: &GroupElement, e: i64) -> GroupElement {
        let base = if e < 0 { self.inverse(g) } else { g.clone() };
        let mut acc = self.identity();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &sq);
            }
            sq = self.multiply(&sq, &sq);
            k >>= 1;
        }
        acc
    }

    /// Order of g, or `None` when no finite order was found.
    pub fn order(&self, g: &GroupElement) -> Option<u64> {
        match (self, g) {
            (GroupSpec::Int, GroupElement::Int(x)) => (*x == 0).then_some(1),
            (GroupSpec::Free(_), GroupElement::Free(x)) => x.is_empty().then_some(1),
            (GroupSpec::Cyclic(s), GroupElement::Cyclic(x)) => {
                Some(s / num_integer::gcd(*s, *x))
            }
            (GroupSpec::Amalgam(a), GroupElement::Amalgam(_)) => {
                // Cyclically reduce; a cyclically reduced word of length ≥ 2
                // has infinite order, shorter ones live in a factor.
                let mut h = g.clone();
                loop {
                    let GroupElement::Amalgam(w) = &h else { unreachable!() };
                    match w.syllables.as_slice() {
                        [] => {
                            let k = a.order_k();
                            return Some(k / num_integer::gcd(k, w.tail));
                        }
                        [(side, c)] => {
                            let f = a.factor(*side);
                            return f.order(&f.multiply(c, &a.powers(*side)[w.tail as usize]));
                        }
                        [(s0, c0), .., (s1, _)] if s0 == s1 => {
                            let first = a.embed(*s0, c0);
                            h = self.multiply(&self.multiply(&self.inverse(&first), &h), &first);
                        }
                        _ => return None,
                    }
                }
            }
            _ => {
                let mut acc = g.clone();
                for o in 1..=MAX_ORDER_SEARCH {
                    if self.is_identity(&acc) {
                        return Some(o);
                    }
                    acc = self.multiply(&acc, g);
                }
                None
            }
        }
    }

    /// The element named by (letter, sub) in the global lettering.
    pub fn generator(&self, letter: usize, sub: Option<usize>) -> Result<GroupElement> {
        let name = letter_name(letter).map(|c| c.to_string()).unwrap_or_default();
        match self {
            GroupSpec::Finite(f) => match (letter, sub) {
                (0, Some(i)) if i < f.order() => Ok(GroupElement::Finite(i)),
                _ => Err(QwError::UnknownGenerator(format!("{name}{}", sub.map(|s| s.to_string()).unwrap_or_default()))),
            },
            _ if sub.is_some() => Err(QwError::UnknownGenerator(format!("{name}{}", sub.unwrap()))),
            GroupSpec::Cyclic(s) if letter == 0 => Ok(GroupElement::Cyclic(1 % s)),
            GroupSpec::Int if letter == 0 => Ok(GroupElement::Int(1)),
            GroupSpec::Free(m) if letter < *m => Ok(GroupElement::Free(vec![(letter as u8, 1)])),
            GroupSpec::Amalgam(sp) => {
                let lc = sp.left.letter_count();
                let (side, inner) = if letter < lc {
                    (Side::Left, sp.left.generator(letter, None)?)
                } else {
                    (Side::Right, sp.right.generator(letter - lc, None)?)
                };
                Ok(sp.embed(side, &inner))
            }
            _ => Err(QwError::UnknownGenerator(name)),
        }
    }

    fn generator_finite_aware(&self, l: &RawLetter) -> Result<GroupElement> {
        match self {
            GroupSpec::Amalgam(sp) => {
                let lc = sp.left.letter_count();
                let (side, inner) = if l.letter < lc {
                    (Side::Left, sp.left.generator_finite_aware(l)?)
                } else {
                    let shifted = RawLetter { letter: l.letter - lc, ..*l };
                    (Side::Right, sp.right.generator_finite_aware(&shifted)?)
                };
                Ok(sp.embed(side, &inner))
            }
            _ => self.generator(l.letter, l.sub),
        }
    }

    /// Normal form of a raw word.
    pub fn normalize(&self, raw: &[RawLetter]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for l in raw {
            let g = self.generator_finite_aware(l)?;
            acc = self.multiply(&acc, &self.power(&g, l.exp));
        }
        Ok(acc)
    }

    /// Parse `1` or `x^e*y^f*…` where finite-group letters carry an element
    /// index (`a3`).
    pub fn parse_word(&self, text: &str) -> Result<GroupElement> {
        let raw = parse_raw_word(text)?;
        self.normalize(&raw)
    }

    /// Render in the word syntax accepted by [`GroupSpec::parse_word`].
    pub fn format(&self, g: &GroupElement) -> String {
        let mut tokens = Vec::new();
        self.tokens(g, 0, &mut tokens);
        if tokens.is_empty() {
            "1".into()
        } else {
            tokens.join("*")
        }
    }

    fn tokens(&self, g: &GroupElement, offset: usize, out: &mut Vec<String>) {
        let name = letter_name(offset).map(|c| c.to_string()).unwrap_or_else(|_| "?".into());
        match (self, g) {
            (GroupSpec::Finite(f), GroupElement::Finite(x)) => {
                if *x != f.identity {
                    out.push(format!("{name}{x}"));
                }
            }
            (GroupSpec::Cyclic(_), GroupElement::Cyclic(x)) => {
                if *x != 0 {
                    out.push(power_token(&name, *x as i64));
                }
            }
            (GroupSpec::Int, GroupElement::Int(x)) => {
                if *x != 0 {
                    out.push(power_token(&name, *x));
                }
            }
            (GroupSpec::Free(_), GroupElement::Free(x)) => {
                for &(gen, e) in x {
                    let n = letter_name(offset + gen as usize).unwrap_or('?').to_string();
                    out.push(power_token(&n, e));
                }
            }
            (GroupSpec::Amalgam(sp), GroupElement::Amalgam(x)) => {
                let right_offset = offset + sp.left.letter_count();
                // The tail is folded into the last syllable for display.
                let last = x.syllables.len().wrapping_sub(1);
                for (idx, (side, f)) in x.syllables.iter().enumerate() {
                    let shown = if idx == last && x.tail != 0 {
                        sp.factor(*side).multiply(f, &sp.powers(*side)[x.tail as usize])
                    } else {
                        f.clone()
                    };
                    match side {
                        Side::Left => sp.left.tokens(&shown, offset, out),
                        Side::Right => sp.right.tokens(&shown, right_offset, out),
                    }
                }
                if x.tail != 0 && x.syllables.is_empty() {
                    sp.left.tokens(&sp.left_powers[x.tail as usize], offset, out);
                }
            }
            _ => out.push("?".into()),
        }
    }

    /// A random element built from `len` random letters.
    pub fn random_element<R: Rng>(&self, rng: &mut R, len: usize) -> GroupElement {
        let mut acc = self.identity();
        for _ in 0..len {
            let g = match self {
                GroupSpec::Finite(f) => GroupElement::Finite(rng.gen_range(0..f.order())),
                GroupSpec::Cyclic(s) => GroupElement::Cyclic(rng.gen_range(0..*s)),
                GroupSpec::Int => GroupElement::Int(rng.gen_range(-3..=3)),
                GroupSpec::Free(m) => {
                    let e = if rng.gen_bool(0.5) { 1 } else { -1 };
                    GroupElement::Free(vec![(rng.gen_range(0..*m) as u8, e)])
                }
                GroupSpec::Amalgam(sp) => {
                    let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
                    let inner = sp.factor(side).random_element(rng, 1);
                    sp.embed(side, &inner)
                }
            };
            acc = self.multiply(&acc, &g);
        }
        acc
    }
}

fn push_free(word: &mut Vec<(u8, i64)>, (g, e): (u8, i64)) {
    if e == 0 {
        return;
    }
    if let Some(last) = word.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                word.pop();
            }
            return;
        }
    }
    word.push((g, e));
}

impl AmalgamSpec {
    pub fn factor(&self, side: Side) -> &GroupSpec {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    fn powers(&self, side: Side) -> &[GroupElement] {
        match side {
            Side::Left => &self.left_powers,
            Side::Right => &self.right_powers,
        }
    }

    pub fn order_k(&self) -> u64 {
        self.k
    }

    /// The amalgamated generator t^e as an element of the amalgam.
    pub fn base_element(&self, e: u64) -> GroupElement {
        GroupElement::Amalgam(AmalgamWord { syllables: Vec::new(), tail: e % self.k })
    }

    pub fn embed(&self, side: Side, x: &GroupElement) -> GroupElement {
        let mut out = AmalgamWord::default();
        self.absorb(&mut out, side, x);
        GroupElement::Amalgam(out)
    }

    /// y = c · t^e with c the canonical representative of yC; c is the
    /// identity exactly when y ∈ C.
    fn decompose(&self, side: Side, y: &GroupElement) -> (GroupElement, u64) {
        let spec = self.factor(side);
        let pw = self.powers(side);
        let k = self.k as usize;
        let mut best: Option<(GroupElement, u64)> = None;
        for l in 0..k {
            let c = spec.multiply(y, &pw[(k - l) % k]);
            if spec.is_identity(&c) {
                return (c, l as u64);
            }
            if best.as_ref().map_or(true, |(b, _)| c < *b) {
                best = Some((c, l as u64));
            }
        }
        best.expect("amalgam order is positive")
    }

    /// Right-multiply a normal form by a factor element.
    fn absorb(&self, word: &mut AmalgamWord, side: Side, x: &GroupElement) {
        let spec = self.factor(side);
        let t = &self.powers(side)[word.tail as usize];
        let y = match word.syllables.last() {
            Some((s, last)) if *s == side => {
                let y = spec.multiply(&spec.multiply(last, t), x);
                word.syllables.pop();
                y
            }
            _ => spec.multiply(t, x),
        };
        let (c, e) = self.decompose(side, &y);
        if !spec.is_identity(&c) {
            word.syllables.push((side, c));
        }
        word.tail = e;
    }
}

/// Tokenize `x^e*y*…`; `1` and `e` denote the identity.
pub fn parse_raw_word(text: &str) -> Result<Vec<RawLetter>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(QwError::Syntax { line: 1, col: 1, msg: "empty group word".into() });
    }
    if compact == "1" || compact == "e" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut col = 1;
    for token in compact.split('*') {
        let err = |msg: &str| QwError::Syntax { line: 1, col, msg: format!("{msg} in `{token}`") };
        let mut chars = token.chars().peekable();
        let letter = match chars.next() {
            Some(c) if c.is_ascii_lowercase() => (c as u8 - b'a') as usize,
            _ => return Err(err("expected generator letter")),
        };
        let mut digits = String::new();
        while let Some(c) = chars.peek().copied().filter(char::is_ascii_digit) {
            digits.push(c);
            chars.next();
        }
        let sub = if digits.is_empty() { None } else { Some(digits.parse().map_err(|_| err("bad index"))?) };
        let rest: String = chars.collect();
        let exp = if rest.is_empty() {
            1
        } else if let Some(e) = rest.strip_prefix('^') {
            e.parse::<i64>().map_err(|_| err("bad exponent"))?
        } else {
            return Err(err("unexpected characters"));
        };
        out.push(RawLetter { letter, sub, exp });
        col += token.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2z() -> GroupSpec {
        let l = GroupSpec::cyclic(6).unwrap();
        let r = GroupSpec::cyclic(4).unwrap();
        GroupSpec::amalgam(l, r, 2, GroupElement::Cyclic(3), GroupElement::Cyclic(2)).unwrap()
    }

    #[test]
    fn normal_forms() {
        let c6 = GroupSpec::cyclic(6).unwrap();
        assert_eq!(c6.parse_word("a^7").unwrap(), GroupElement::Cyclic(1));
        let f2 = GroupSpec::free(2).unwrap();
        let w = f2.parse_word("a*b*b^-1*a").unwrap();
        assert_eq!(f2.format(&w), "a^2");
        let g = sl2z();
        assert!(g.is_identity(&g.parse_word("a^3*b^-2").unwrap()));
        assert_eq!(g.format(&g.parse_word("a^4*b*a").unwrap()), "a*b*a^4");
    }

    #[test]
    fn ops() {
        let c4 = GroupSpec::cyclic(4).unwrap();
        let x = c4.multiply(&GroupElement::Cyclic(3), &GroupElement::Cyclic(2));
        assert_eq!(x, GroupElement::Cyclic(1));
        let f2 = GroupSpec::free(2).unwrap();
        let ab = f2.parse_word("a*b").unwrap();
        assert_eq!(f2.format(&f2.inverse(&ab)), "b^-1*a^-1");
    }

    #[test]
    fn amalgam_rejects_wrong_order() {
        let l = GroupSpec::cyclic(6).unwrap();
        let r = GroupSpec::cyclic(4).unwrap();
        let bad = GroupSpec::amalgam(l, r, 2, GroupElement::Cyclic(2), GroupElement::Cyclic(2));
        assert!(bad.is_err());
    }

    #[test]
    fn finite_table_validation() {
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = GroupSpec::Finite(FiniteGroup::new(z3).unwrap());
        let x = g.parse_word("a1*a1").unwrap();
        assert_eq!(x, GroupElement::Finite(2));
        assert_eq!(g.format(&x), "a2");
        let broken = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::new(broken).is_err());
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_raw_word("a^x").is_err());
        assert!(parse_raw_word("A").is_err());
        assert!(GroupSpec::cyclic(3).unwrap().parse_word("b").is_err());
    }
}
