use proptest::prelude::*;

use qwreath::ncpart::{
    character_moment, enumerate_partitions, gram_matrix, haar_moment, join_block_count, weingarten_matrix, Matrix,
    Partition, SnPlus, UWord,
};
use qwreath::Rational;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

#[test]
fn partition_counts() {
    let bell = [1, 2, 5, 15, 52, 203, 877];
    let catalan = [1, 2, 5, 14, 42, 132, 429];
    for k in 1..=7 {
        assert_eq!(enumerate_partitions(k, false).unwrap().len(), bell[k - 1]);
        assert_eq!(enumerate_partitions(k, true).unwrap().len(), catalan[k - 1]);
    }
    assert!(enumerate_partitions(0, true).is_err());
}

#[test]
fn enumeration_is_duplicate_free_and_noncrossing() {
    let all = enumerate_partitions(6, true).unwrap();
    for (a, p) in all.iter().enumerate() {
        assert!(p.is_noncrossing());
        assert!(all[a + 1..].iter().all(|r| r != p));
    }
    let crossing = Partition::from_blocks(4, &[vec![1, 3], vec![2, 4]]).unwrap();
    assert!(!crossing.is_noncrossing());
}

#[test]
fn join_with_singletons_and_full() {
    let p = Partition::from_blocks(4, &[vec![1, 4], vec![2, 3]]).unwrap();
    let singles = Partition::kernel(&[1, 2, 3, 4]);
    let full = Partition::kernel(&[1, 1, 1, 1]);
    assert_eq!(join_block_count(&p, &singles).unwrap(), 2);
    assert_eq!(join_block_count(&p, &full).unwrap(), 1);
    assert!(singles.refines(&p) && p.refines(&full));
}

#[test]
fn gram_entries_are_powers_of_n() {
    let g: Matrix<Rational> = gram_matrix(3, 5).unwrap();
    for a in 0..g.rows() {
        for b in 0..g.cols() {
            let v = g.get(a, b).to_integer();
            assert!([5, 25, 125].iter().any(|&p| v == p.into()));
        }
    }
}

#[test]
fn small_n_moments_are_classical() {
    // Below N = 4 the moments come from S_N itself.
    assert_eq!(haar_moment::<Rational>(3, &[1, 2], &[1, 2]).unwrap(), q(1, 6));
    assert_eq!(haar_moment::<Rational>(4, &[1, 2], &[1, 2]).unwrap(), q(1, 12));
    assert_eq!(character_moment::<Rational>(3, 4).unwrap(), q(14, 1));
    assert_eq!(character_moment::<Rational>(4, 4).unwrap(), q(14, 1));
    let w: Matrix<Rational> = weingarten_matrix(2, 4).unwrap();
    assert_eq!(w.rows(), 2);
}

#[test]
fn expectation_onto_row() {
    let x = SnPlus::<Rational>::u(4, 2, 2).unwrap();
    let e = x.cond_expect_row(1).unwrap();
    let mut expected = SnPlus::zero(4);
    for j in [1, 3, 4] {
        expected = &expected + &SnPlus::u(4, 1, j).unwrap().scale(&q(1, 3));
    }
    assert_eq!(e, expected);
    let r = SnPlus::<Rational>::u(4, 1, 3).unwrap();
    assert_eq!(r.cond_expect_row(1).unwrap(), r);
}

fn word(n: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((1..=n, 1..=n), 0..=4)
}

fn element(n: usize) -> impl Strategy<Value = SnPlus<Rational>> {
    prop::collection::vec((word(n), -3i64..=3), 1..=3).prop_map(move |terms| {
        let mut x = SnPlus::zero(n);
        for (w, c) in terms {
            let mut u = UWord::empty();
            for (i, j) in w {
                u = u.concat(&UWord::letter(i, j));
            }
            x = &x + &SnPlus::from_word(n, &u).unwrap().scale(&q(c, 1));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Summing the last column index over a row gives the shorter moment.
    #[test]
    fn marginal_relation(n in 4usize..=5, w in prop::collection::vec((1usize..=5, 1usize..=5), 1..=4)) {
        let w: Vec<(usize, usize)> = w.into_iter().map(|(i, j)| ((i - 1) % n + 1, (j - 1) % n + 1)).collect();
        let (rows, cols): (Vec<usize>, Vec<usize>) = w.iter().copied().unzip();
        let k = rows.len();
        let mut sum = Rational::from_integer(0.into());
        for j in 1..=n {
            let mut c = cols.clone();
            c[k - 1] = j;
            sum += haar_moment::<Rational>(n, &rows, &c).unwrap();
        }
        let short: Rational = haar_moment(n, &rows[..k - 1], &cols[..k - 1]).unwrap();
        prop_assert_eq!(sum, short);
    }

    #[test]
    fn positivity_and_trace(n in 2usize..=4, x in element(4), y in element(4)) {
        let x = if n == 4 { x } else { SnPlus::one(n).scale(&q(2, 1)) };
        let y = if n == 4 { y } else { SnPlus::one(n) };
        let p = (&x.star() * &x).haar().unwrap();
        prop_assert!(p >= q(0, 1));
        prop_assert_eq!((&x * &y).haar().unwrap(), (&y * &x).haar().unwrap());
    }

    #[test]
    fn expectation_is_idempotent_and_preserves_haar(x in element(4), i in 1usize..=4) {
        let e = x.cond_expect_row(i).unwrap();
        prop_assert!(e.in_row_algebra(i));
        prop_assert_eq!(e.cond_expect_row(i).unwrap(), e.clone());
        prop_assert_eq!(e.haar().unwrap(), x.haar().unwrap());
    }
}
