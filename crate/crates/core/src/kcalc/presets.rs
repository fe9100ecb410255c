use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::abgroup::{AbHom, FgAbGroup, ZMat};
use super::sixterm::{solve_six_term, Edge, GraphKData, KPair, SixTermSolution};
use super::snplus_k::{k_snplus, u_class};
use crate::error::{QwError, Result};
use crate::ncpart::permutations;
use crate::wreath::{k0_generator_trace, K0Generator};
use crate::Rational;

/// C*(ℤ_s) ≅ ℂ^s: K₀ = ℤ^s on the minimal projections δ_k, K₁ = 0.
pub fn cyclic_k(s: u64) -> Result<KPair> {
    if s == 0 {
        return Err(QwError::OutOfRange("cyclic order must be at least 1".into()));
    }
    let labels = (0..s).map(|k| format!("[d{k}]")).collect();
    let k0 = FgAbGroup::free(s as usize).with_labels(labels)?.with_unit(vec![BigInt::one(); s as usize])?;
    Ok(KPair::new(k0, FgAbGroup::trivial()))
}

/// C*(F_m): K₀ = ℤ[1], K₁ = ℤ^m. m = 1 is C*(ℤ).
pub fn free_group_k(m: usize) -> KPair {
    let k0 = FgAbGroup::free(1).with_labels(vec!["[1]".into()]).unwrap().with_unit(vec![BigInt::one()]).unwrap();
    KPair::new(k0, FgAbGroup::free(m))
}

fn strip(label: &str) -> &str {
    label.strip_prefix('[').and_then(|l| l.strip_suffix(']')).unwrap_or(label)
}

/// K-theory of C(Ĝ ≀* S_N⁺) from that of C*(Γ).
///
/// K₀ is the cokernel of ψ: ℤ^{N²} → K₀(C*Γ)^{⊕N²} ⊕ K₀(C(S_N⁺)),
/// e_ij ↦ [1 in copy (i,j)] − [u_ji]; copy (i,j) carries ν_j(·)u_ji.
pub fn wreath_k(kg: &KPair, n: usize) -> Result<KPair> {
    let Some(unit) = kg.k0.unit() else {
        return Err(QwError::MissingUnit("K0 of the group algebra has no unit class".into()));
    };
    let sn = k_snplus(n)?;
    let g = kg.k0.gens();
    let copies = n * n;
    let mut target = FgAbGroup::trivial();
    for i in 1..=n {
        for j in 1..=n {
            let labels = (0..g).map(|t| format!("[nu{j}({})u{j}{i}]", strip(&kg.k0.label(t)))).collect();
            target = target.direct_sum(&kg.k0.clone().with_labels(labels)?);
        }
    }
    target = target.direct_sum(&sn.k0);
    let off = copies * g;
    let mut full_unit = vec![BigInt::zero(); target.gens()];
    full_unit[off..].clone_from_slice(sn.k0.unit().unwrap());
    let target = target.with_unit(full_unit)?;
    let mut psi = ZMat::zeros(target.gens(), copies);
    for i in 1..=n {
        for j in 1..=n {
            let c = (i - 1) * n + (j - 1);
            for (t, x) in unit.iter().enumerate() {
                psi.set(c * g + t, c, x.clone());
            }
            for (t, x) in u_class(n, j, i)?.into_iter().enumerate() {
                let v = psi.get(off + t, c).clone() - x;
                psi.set(off + t, c, v);
            }
        }
    }
    let hom = AbHom::new(FgAbGroup::free(copies), target, psi)?;
    if !hom.kernel().is_trivial() {
        return Err(QwError::NotInjective("the boundary map psi has a nontrivial kernel".into()));
    }
    let mut k1 = FgAbGroup::trivial();
    for _ in 0..copies {
        k1 = k1.direct_sum(&kg.k1);
    }
    Ok(KPair::new(hom.cokernel(), k1.direct_sum(&sn.k1)))
}

/// H_N^{s+} = ℤ̂_s ≀* S_N⁺; `None` is s = ∞.
pub fn reflection_k(n: usize, s: Option<u64>) -> Result<KPair> {
    match s {
        Some(s) => wreath_k(&cyclic_k(s)?, n),
        None => wreath_k(&free_group_k(1), n),
    }
}

fn single_loop(vertex: KPair, edge: KPair, maps: [ZMat; 4]) -> GraphKData {
    let mut g = GraphKData::default();
    let v = g.vertex("A", vertex);
    let [s0, r0, s1, r1] = maps;
    g.edge(Edge { name: "e".into(), src: v, dst: v, k: edge, s0, r0, s1, r1 });
    g
}

fn check_bs(n: i64, m: i64) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(QwError::OutOfRange("Baumslag-Solitar parameters must be nonzero".into()));
    }
    Ok(())
}

fn scalar(x: i64) -> ZMat {
    ZMat::from_i64(&[vec![x]], 1)
}

/// BS(n, m) as the HNN extension of ℤ: a loop on C*(ℤ) with θ_n, θ_m.
pub fn bs_group_k(n: i64, m: i64) -> Result<SixTermSolution> {
    check_bs(n, m)?;
    let z = free_group_k(1);
    solve_six_term(&single_loop(z.clone(), z, [scalar(1), scalar(1), scalar(n), scalar(m)]))
}

/// Free wreath of the BS(n, m) dual by S_N⁺, plain or amalgamated over ℤ.
pub fn bs_wreath_k(big_n: usize, n: i64, m: i64, amalgamated: bool) -> Result<SixTermSolution> {
    check_bs(n, m)?;
    if !amalgamated {
        let kg = bs_group_k(n, m)?;
        let k = wreath_k(&kg.pair(), big_n)?;
        return Ok(SixTermSolution::certain(k, "split"));
    }
    let a = wreath_k(&free_group_k(1), big_n)?;
    let g0 = a.k0.gens();
    let copies = big_n * big_n;
    let g1 = a.k1.gens();
    let diag = |x: i64| {
        let d: Vec<BigInt> = (0..g1).map(|t| BigInt::from(if t < copies { x } else { 1 })).collect();
        ZMat::diagonal(&d)
    };
    let maps = [ZMat::identity(g0), ZMat::identity(g0), diag(n), diag(m)];
    solve_six_term(&single_loop(a.clone(), a, maps))
}

/// Copy blocks δ_η ↦ Σ_{c ≡ η mod s} δ_c for ℤ_s ⊂ ℤ_t; identity on C(S_N⁺).
fn cyclic_inclusion(n: usize, s: usize, t: usize, sn_gens: usize) -> ZMat {
    let copies = n * n;
    let mut m = ZMat::zeros(copies * t + sn_gens, copies * s + sn_gens);
    for c in 0..copies {
        for eta in 0..s {
            for x in (eta..t).step_by(s) {
                m.set(c * t + x, c * s + eta, BigInt::one());
            }
        }
    }
    for k in 0..sn_gens {
        m.set(copies * t + k, copies * s + k, BigInt::one());
    }
    m
}

/// SL₂(ℤ) = ℤ₄ *_{ℤ₂} ℤ₆: a tree with two vertices and one edge.
pub fn sl2z_wreath_k(n: usize) -> Result<SixTermSolution> {
    let sn = k_snplus(n)?;
    let a = wreath_k(&cyclic_k(6)?, n)?;
    let b = wreath_k(&cyclic_k(4)?, n)?;
    let e = wreath_k(&cyclic_k(2)?, n)?;
    let g = sn.k0.gens();
    let k1 = ZMat::identity(sn.k1.gens());
    let mut graph = GraphKData::default();
    let va = graph.vertex("Z6", a);
    let vb = graph.vertex("Z4", b);
    graph.edge(Edge {
        name: "Z2".into(),
        src: va,
        dst: vb,
        k: e,
        s0: cyclic_inclusion(n, 2, 6, g),
        r0: cyclic_inclusion(n, 2, 4, g),
        s1: k1.clone(),
        r1: k1,
    });
    solve_six_term(&graph)
}

/// Representatives of the generators of `reflection_k(n, Some(s)).k0`, in order.
pub fn reflection_generators(n: usize, s: u64) -> Vec<K0Generator> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 0..s as usize {
                out.push(K0Generator::NuDeltaU { i: j, k, j: i });
            }
        }
    }
    if n >= 4 {
        out.push(K0Generator::Unit);
        for i in 1..n {
            for j in 1..n {
                out.push(K0Generator::U { i, j });
            }
        }
    } else {
        for p in permutations(n) {
            out.push(K0Generator::Perm(p.iter().map(|x| x + 1).collect()));
        }
    }
    out
}

/// Haar traces of a free basis of K₀(C(H_N^{s+})) with multiplicities.
///
/// Each ψ-relation eliminates the δ₀ class of its copy; the remaining
/// generators form a basis and each trace is evaluated on a representative.
pub fn reflection_signature(n: usize, s: u64) -> Result<BTreeMap<Rational, usize>> {
    if s == 0 {
        return Err(QwError::OutOfRange("s must be at least 1".into()));
    }
    let k = reflection_k(n, Some(s))?;
    let gens = reflection_generators(n, s);
    let rel = k.k0.relations();
    assert_eq!(gens.len(), rel.cols());
    let mut eliminated = vec![false; gens.len()];
    for r in 0..rel.rows() {
        let i = (r / n) + 1;
        let j = (r % n) + 1;
        let pivot = (i - 1) * n * s as usize + (j - 1) * s as usize;
        let coeff = rel.get(r, pivot);
        let alone = (0..rel.rows()).all(|q| q == r || rel.get(q, pivot).is_zero());
        if !(coeff.is_one() || (-coeff).is_one()) || !alone || eliminated[pivot] {
            return Err(QwError::Unsupported("relation does not eliminate a distinct generator".into()));
        }
        eliminated[pivot] = true;
    }
    let mut out = BTreeMap::new();
    for (g, _) in gens.iter().zip(&eliminated).filter(|(_, e)| !**e) {
        *out.entry(k0_generator_trace(n, s, g)?).or_insert(0) += 1;
    }
    let total: usize = out.values().sum();
    if total != k.k0.rank() || !k.k0.is_free() {
        return Err(QwError::Unsupported("remaining generators are not a basis".into()));
    }
    Ok(out)
}

/// "1 x1, 1/8 x49, 1/16 x64", largest trace first.
pub fn render_signature(sig: &BTreeMap<Rational, usize>) -> String {
    let parts: Vec<String> = sig.iter().rev().map(|(v, m)| format!("{v} x{m}")).collect();
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_table() {
        assert_eq!(reflection_k(4, Some(3)).unwrap().k0.to_string(), "Z^42");
        let inf = reflection_k(4, None).unwrap();
        assert_eq!((inf.k0.to_string(), inf.k1.to_string()), ("Z^10".into(), "Z^17".into()));
        let f2 = wreath_k(&free_group_k(2), 5).unwrap();
        assert_eq!((f2.k0.to_string(), f2.k1.to_string()), ("Z^17".into(), "Z^51".into()));
        assert_eq!(reflection_k(3, Some(2)).unwrap().k0.to_string(), "Z^15");
    }

    #[test]
    fn baumslag_solitar() {
        let g = bs_group_k(1, 3).unwrap();
        assert_eq!((g.k0.to_string(), g.k1.to_string()), ("Z".into(), "Z (+) Z/2".into()));
        let w = bs_wreath_k(4, 1, 3, true).unwrap();
        assert_eq!(w.k0.to_string(), "Z^11");
        assert_eq!(w.k1.to_string(), "Z^11 (+) (Z/2)^16");
        assert!(w.split_certain_k0 && w.split_certain_k1);
        let p = bs_wreath_k(4, 1, 3, false).unwrap();
        assert_eq!((p.k0.to_string(), p.k1.to_string()), ("Z^10".into(), "Z^17 (+) (Z/2)^16".into()));
    }

    #[test]
    fn sl2z() {
        let k = sl2z_wreath_k(4).unwrap();
        assert_eq!((k.k0.to_string(), k.k1.to_string()), ("Z^122".into(), "Z".into()));
        let k = sl2z_wreath_k(3).unwrap();
        assert_eq!((k.k0.to_string(), k.k1.to_string()), ("Z^69".into(), "0".into()));
    }

    #[test]
    fn signature() {
        let sig = reflection_signature(8, 2).unwrap();
        assert_eq!(render_signature(&sig), "1 x1, 1/8 x49, 1/16 x64");
    }
}
