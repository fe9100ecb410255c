use super::intmat::{IntMatrix, IntRing};

/// U·M·V = D with U, V unimodular and d₁ | d₂ | ⋯ on the diagonal of D.
#[derive(Debug, Clone)]
pub struct Smith<T> {
    pub u: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub v_inv: IntMatrix<T>,
    /// Nonzero diagonal entries, in order.
    pub factors: Vec<T>,
}

impl<T: IntRing> Smith<T> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

struct Work<T> {
    m: IntMatrix<T>,
    u: IntMatrix<T>,
    v: IntMatrix<T>,
    u_inv: IntMatrix<T>,
    v_inv: IntMatrix<T>,
}

impl<T: IntRing> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, a: usize, b: usize, c: &T) {
        self.m.add_row(a, b, c);
        self.u.add_row(a, b, c);
        self.u_inv.add_col(b, a, &-c.clone());
    }

    fn add_col(&mut self, a: usize, b: usize, c: &T) {
        self.m.add_col(a, b, c);
        self.v.add_col(a, b, c);
        self.v_inv.add_row(b, a, &-c.clone());
    }

    fn negate_row(&mut self, a: usize) {
        self.m.negate_row(a);
        self.u.negate_row(a);
        self.u_inv.negate_col(a);
    }

    /// Position of a smallest nonzero entry in the trailing block.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let x = self.m.get(i, j).abs();
                if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_normal_form<T: IntRing>(m: &IntMatrix<T>) -> Smith<T> {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        m: m.clone(),
        u: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        u_inv: IntMatrix::identity(r),
        v_inv: IntMatrix::identity(c),
    };
    let mut factors = Vec::new();
    for t in 0..r.min(c) {
        let Some((pi, pj)) = w.pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let x = w.m.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(w.m.get(t, t));
                w.add_row(i, t, &-q);
                if !w.m.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                let x = w.m.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(w.m.get(t, t));
                w.add_col(j, t, &-q);
                if !w.m.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = w.pivot_in_cross(t);
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // Divisibility: fold a row with an entry not divisible by the pivot.
            let p = w.m.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !w.m.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &T::one()),
                None => break,
            }
        }
        if w.m.get(t, t).is_negative() {
            w.negate_row(t);
        }
        factors.push(w.m.get(t, t).clone());
    }
    Smith { u: w.u, d: w.m, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv, factors }
}

impl<T: IntRing> Work<T> {
    /// Smallest nonzero entry of row t and column t.
    fn pivot_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.m.get(t, t).abs());
        for i in t..self.m.rows() {
            let x = self.m.get(i, t).abs();
            if !x.is_zero() && (best.2.is_zero() || x < best.2) {
                best = (i, t, x);
            }
        }
        for j in t..self.m.cols() {
            let x = self.m.get(t, j).abs();
            if !x.is_zero() && (best.2.is_zero() || x < best.2) {
                best = (t, j, x);
            }
        }
        (best.0, best.1)
    }
}

/// A basis of {x ∈ ℤ^cols : M x = 0}, as columns.
pub fn integer_nullspace<T: IntRing>(m: &IntMatrix<T>) -> IntMatrix<T> {
    let s = smith_normal_form(m);
    let k = s.rank();
    let c = m.cols();
    IntMatrix::from_fn(c, c - k, |i, j| s.v.get(i, k + j).clone())
}

/// An integer x with M x = b, if one exists.
pub fn integer_solve<T: IntRing>(m: &IntMatrix<T>, b: &[T]) -> Option<Vec<T>> {
    let s = smith_normal_form(m);
    let ub = s.u.mul_vec(b);
    let mut y = vec![T::zero(); m.cols()];
    for (i, x) in ub.iter().enumerate() {
        if i < s.rank() {
            let d = &s.factors[i];
            if !x.is_multiple_of(d) {
                return None;
            }
            y[i] = x.clone() / d.clone();
        } else if !x.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// A basis of the lattice spanned by the rows of `gens`, as rows.
pub fn lattice_basis<T: IntRing>(gens: &IntMatrix<T>) -> IntMatrix<T> {
    let s = smith_normal_form(gens);
    let k = s.rank();
    IntMatrix::from_fn(k, gens.cols(), |i, j| s.factors[i].clone() * s.v_inv.get(i, j).clone())
}
