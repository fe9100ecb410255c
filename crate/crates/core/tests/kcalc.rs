use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use qwreath::kcalc::{
    cyclic_k, free_group_k, integer_nullspace, integer_solve, k_snplus, kdata, smith_normal_form, solve_six_term,
    wreath_k, AbHom, Edge, FgAbGroup, GraphKData, IntMatrix, KPair, ZMat,
};

fn zmat(rows: &[Vec<i64>], cols: usize) -> ZMat {
    ZMat::from_i64(rows, cols)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn matrix() -> impl Strategy<Value = ZMat> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-12i64..=12, c), r).prop_map(move |rows| zmat(&rows, c))
    })
}

fn point() -> KPair {
    KPair::new(FgAbGroup::free(1).with_unit(ints(&[1])).unwrap(), FgAbGroup::trivial())
}

fn edge(name: &str, src: usize, dst: usize, k: KPair, s0: ZMat, r0: ZMat, s1: ZMat, r1: ZMat) -> Edge {
    Edge { name: name.into(), src, dst, k, s0, r0, s1, r1 }
}

#[test]
fn identity_edge_between_equal_vertices_glues_them() {
    let a = cyclic_k(3).unwrap();
    let mut g = GraphKData::default();
    let v = g.vertex("A", a.clone());
    let w = g.vertex("B", a.clone());
    let id = ZMat::identity(3);
    g.edge(edge("e", v, w, a.clone(), id.clone(), id, ZMat::zeros(0, 0), ZMat::zeros(0, 0)));
    let sol = solve_six_term(&g).unwrap();
    assert!(sol.split_certain_k0 && sol.split_certain_k1);
    assert!(sol.k0.iso(&FgAbGroup::free(3)) && sol.k1.is_trivial());
    assert_eq!(sol.k0.unit().map(|u| u.len()), Some(sol.k0.gens()));
}

#[test]
fn free_product_over_the_scalars() {
    let mut g = GraphKData::default();
    let v = g.vertex("Z2", cyclic_k(2).unwrap());
    let w = g.vertex("Z3", cyclic_k(3).unwrap());
    g.edge(edge(
        "C",
        v,
        w,
        point(),
        zmat(&[vec![1], vec![1]], 1),
        zmat(&[vec![1], vec![1], vec![1]], 1),
        ZMat::zeros(0, 0),
        ZMat::zeros(0, 0),
    ));
    let sol = solve_six_term(&g).unwrap();
    assert!(sol.k0.iso(&FgAbGroup::free(4)) && sol.k1.is_trivial());
}

#[test]
fn identity_loop_is_a_crossed_product_by_z() {
    let mut g = GraphKData::default();
    let v = g.vertex("C", point());
    let id = ZMat::identity(1);
    g.edge(edge("t", v, v, point(), id.clone(), id, ZMat::zeros(0, 0), ZMat::zeros(0, 0)));
    let sol = solve_six_term(&g).unwrap();
    assert!(sol.pair() == free_group_k(1));
}

#[test]
fn graph_validation() {
    let mut g = GraphKData::default();
    g.vertex("A", point());
    g.vertex("B", point());
    assert!(solve_six_term(&g).is_err());
    let bad = edge("e", 0, 1, point(), zmat(&[vec![1, 0]], 2), ZMat::identity(1), ZMat::zeros(0, 0), ZMat::zeros(0, 0));
    g.edge(bad);
    assert!(solve_six_term(&g).is_err());
}

#[test]
fn graph_file_round_trip() {
    let text = "# Z2 * Z2\nvertex A\nK0 rank=2 unit=[1,1]\nK1 rank=0\nvertex B\nK0 rank=2 unit=[1,1]\nK1 rank=0\n\
                edge e A B\nK0 rank=1 unit=[1]\nK1 rank=0\ns0 [[1],[1]]\nr0 [[1],[1]]\ns1 []\nr1 []\n";
    let sol = solve_six_term(&kdata::parse_graph(text).unwrap()).unwrap();
    assert!(sol.k0.iso(&FgAbGroup::free(3)) && sol.k1.is_trivial());
}

#[test]
fn wreath_by_trivial_group_is_snplus() {
    for n in 1..=6 {
        assert!(wreath_k(&point(), n).unwrap() == k_snplus(n).unwrap());
    }
}

#[test]
fn torsion_groups_and_elements() {
    let g = FgAbGroup::new(2, zmat(&[vec![2, 0], vec![0, 4]], 2)).unwrap();
    assert_eq!(g.to_string(), "Z/2 (+) Z/4");
    assert!(g.is_torsion_element(&ints(&[1, 1])));
    assert!(g.is_zero_element(&ints(&[2, 4])));
    assert!(!g.is_zero_element(&ints(&[0, 2])));
    assert!(g.iso(&FgAbGroup::from_invariants(0, &ints(&[4, 2]))));
    assert!(!g.iso(&FgAbGroup::from_invariants(0, &ints(&[8]))));
    let h = AbHom::new(FgAbGroup::free(1), g.clone(), zmat(&[vec![1], vec![2]], 1)).unwrap();
    assert!(h.kernel().iso(&FgAbGroup::free(1)));
    assert!(h.cokernel().iso(&FgAbGroup::from_invariants(0, &ints(&[4]))));
    assert!(AbHom::new(g.clone(), FgAbGroup::free(1), zmat(&[vec![1, 0]], 2)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_properties(m in matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.mul(&s.u_inv).is_identity() && s.v.mul(&s.v_inv).is_identity());
        prop_assert!(s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one());
        for w in s.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.factors.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = integer_nullspace(&m);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(smith_normal_form(&m).rank() + k.cols(), m.cols());
        let h = AbHom::new(FgAbGroup::free(m.cols()), FgAbGroup::free(m.rows()), m.clone()).unwrap();
        prop_assert_eq!(h.image_rank() + h.kernel().rank(), m.cols());
        prop_assert!(h.kernel().is_free());
    }

    #[test]
    fn cokernel_matches_smith_factors(m in matrix()) {
        let h = AbHom::new(FgAbGroup::free(m.cols()), FgAbGroup::free(m.rows()), m.clone()).unwrap();
        let s = smith_normal_form(&m);
        let expected = FgAbGroup::from_invariants(m.rows() - s.rank(), &s.factors);
        prop_assert!(h.cokernel().iso(&expected));
    }

    #[test]
    fn solve_recovers_images(m in matrix(), x in prop::collection::vec(-5i64..=5, 6)) {
        let x: Vec<BigInt> = ints(&x[..m.cols()]);
        let b = m.mul_vec(&x);
        let y = integer_solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn simplify_is_an_isomorphism(m in matrix()) {
        let g = FgAbGroup::new(m.cols(), m.clone()).unwrap();
        let s = g.simplify();
        prop_assert!(s.iso(&g));
        prop_assert!(s.relations().rows() <= g.relations().rows());
    }

    #[test]
    fn direct_sums_add_invariants(a in matrix(), b in matrix()) {
        let (g, h) = (FgAbGroup::new(a.cols(), a).unwrap(), FgAbGroup::new(b.cols(), b).unwrap());
        let s = g.direct_sum(&h);
        prop_assert_eq!(s.rank(), g.rank() + h.rank());
        prop_assert!(s.iso(&h.direct_sum(&g)));
    }
}

#[test]
fn big_entries_do_not_overflow() {
    let big = BigInt::from(i64::MAX) * BigInt::from(1_000_003);
    let m = IntMatrix::from_rows(vec![vec![big.clone(), BigInt::from(2)], vec![BigInt::from(3), big]], 2);
    let s = smith_normal_form(&m);
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
}
