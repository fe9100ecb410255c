use num_bigint::BigInt;

use super::abgroup::{AbHom, FgAbGroup, ZMat};
use crate::error::{QwError, Result};

/// K₀ (possibly unit-marked) and K₁ of a C*-algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct KPair {
    pub k0: FgAbGroup,
    pub k1: FgAbGroup,
}

impl KPair {
    pub fn new(k0: FgAbGroup, k1: FgAbGroup) -> Self {
        KPair { k0, k1 }
    }
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub name: String,
    pub k: KPair,
}

/// An edge algebra A_e with maps s_e: A_e → A_src and r_e: A_e → A_dst on K₀, K₁.
#[derive(Debug, Clone)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    pub k: KPair,
    pub s0: ZMat,
    pub r0: ZMat,
    pub s1: ZMat,
    pub r1: ZMat,
}

#[derive(Debug, Clone, Default)]
pub struct GraphKData {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl GraphKData {
    pub fn vertex(&mut self, name: &str, k: KPair) -> usize {
        self.vertices.push(Vertex { name: name.to_string(), k });
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, e: Edge) {
        self.edges.push(e);
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.src, e.dst), (e.dst, e.src)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.iter().all(|&x| x)
    }

    fn validate(&self) -> Result<()> {
        let nv = self.vertices.len();
        for e in &self.edges {
            if e.src >= nv || e.dst >= nv {
                return Err(QwError::Graph(format!("edge {} has an unknown endpoint", e.name)));
            }
            let checks = [
                ("s0", &e.s0, &e.k.k0, &self.vertices[e.src].k.k0),
                ("r0", &e.r0, &e.k.k0, &self.vertices[e.dst].k.k0),
                ("s1", &e.s1, &e.k.k1, &self.vertices[e.src].k.k1),
                ("r1", &e.r1, &e.k.k1, &self.vertices[e.dst].k.k1),
            ];
            for (what, m, from, to) in checks {
                AbHom::new(from.clone(), to.clone(), m.clone())
                    .map_err(|err| QwError::Graph(format!("edge {} map {what}: {err}", e.name)))?;
            }
        }
        if !self.is_connected() {
            return Err(QwError::Graph("graph is not connected".into()));
        }
        Ok(())
    }

    /// ψ = Σ_e (s_e* − r_e*) : ⊕_e K_d(A_e) → ⊕_v K_d(A_v).
    pub fn psi(&self, degree: usize) -> AbHom {
        let pick = |k: &KPair| if degree == 0 { k.k0.clone() } else { k.k1.clone() };
        let source = self.edges.iter().map(|e| pick(&e.k)).fold(FgAbGroup::trivial(), |a, b| a.direct_sum(&b));
        let target = self.vertices.iter().map(|v| pick(&v.k)).fold(FgAbGroup::trivial(), |a, b| a.direct_sum(&b));
        let mut voff = vec![0];
        for v in &self.vertices {
            voff.push(voff.last().unwrap() + pick(&v.k).gens());
        }
        let mut m = ZMat::zeros(target.gens(), source.gens());
        let mut c0 = 0;
        for e in &self.edges {
            let (s, r) = if degree == 0 { (&e.s0, &e.r0) } else { (&e.s1, &e.r1) };
            let mut add = |block: &ZMat, v: usize, sign: i64| {
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        let x = m.get(voff[v] + i, c0 + j).clone() + block.get(i, j) * BigInt::from(sign);
                        m.set(voff[v] + i, c0 + j, x);
                    }
                }
            };
            add(s, e.src, 1);
            add(r, e.dst, -1);
            c0 += s.cols();
        }
        let mut target = target;
        if degree == 0 {
            target = carry_units(target, &self.vertices);
        }
        AbHom { source, target, matrix: m }
    }
}

/// The unit of the first unit-marked vertex, placed in its block.
fn carry_units(target: FgAbGroup, vertices: &[Vertex]) -> FgAbGroup {
    let mut off = 0;
    for v in vertices {
        if let Some(u) = v.k.k0.unit() {
            let mut full = vec![BigInt::from(0); target.gens()];
            full[off..off + u.len()].clone_from_slice(u);
            return target.with_unit(full).unwrap();
        }
        off += v.k.k0.gens();
    }
    target
}

#[derive(Debug, Clone)]
pub struct SixTermSolution {
    pub k0: FgAbGroup,
    pub k1: FgAbGroup,
    pub split_certain_k0: bool,
    pub split_certain_k1: bool,
    pub diagnostic: String,
}

impl SixTermSolution {
    pub fn pair(&self) -> KPair {
        KPair::new(self.k0.clone(), self.k1.clone())
    }

    /// A solution with no extension ambiguity.
    pub fn certain(k: KPair, diagnostic: &str) -> Self {
        SixTermSolution {
            k0: k.k0,
            k1: k.k1,
            split_certain_k0: true,
            split_certain_k1: true,
            diagnostic: diagnostic.to_string(),
        }
    }
}

/// 0 → coker ψ₀ → K₀(P) → ker ψ₁ → 0 and 0 → coker ψ₁ → K₁(P) → ker ψ₀ → 0,
/// each resolved as the split sum.
pub fn solve_six_term(graph: &GraphKData) -> Result<SixTermSolution> {
    graph.validate()?;
    let psi0 = graph.psi(0);
    let psi1 = graph.psi(1);
    let (c0, k0) = (psi0.cokernel(), psi0.kernel());
    let (c1, k1) = (psi1.cokernel(), psi1.kernel());
    let mut notes = Vec::new();
    let certain0 = k1.is_free();
    let certain1 = k0.is_free();
    if !certain0 {
        notes.push(format!("K0: extension of ker psi1 = {k1} by coker psi0 = {c0} undetermined"));
    }
    if !certain1 {
        notes.push(format!("K1: extension of ker psi0 = {k0} by coker psi1 = {c1} undetermined"));
    }
    let mut out0 = c0.direct_sum(&k1);
    if let Some(u) = c0.unit() {
        let mut full = u.to_vec();
        full.extend(std::iter::repeat_n(BigInt::from(0), k1.gens()));
        out0 = out0.with_unit(full)?;
    }
    Ok(SixTermSolution {
        k0: out0,
        k1: c1.direct_sum(&k0),
        split_certain_k0: certain0,
        split_certain_k1: certain1,
        diagnostic: if notes.is_empty() { "split".into() } else { notes.join("; ") },
    })
}
