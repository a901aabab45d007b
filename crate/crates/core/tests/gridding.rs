mod common;

use std::collections::BTreeSet;

use common::*;
use gridclass::gridding::{count_griddings, enumerate_griddings_part, gridded_of_length};
use gridclass::{
    bicyclic_counterexample, contains, enumerate_griddings, gridded_contains, make_gridded, member, Error, GriddedPerm,
    GriddingMatrix, Perm,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

#[test]
fn sample_griddings_are_valid() {
    let q = p("812543697");
    let g = make_gridded(&q, &m3(), &[4, 6], &[5, 7]).unwrap();
    assert_eq!(g.cuts(), (vec![4, 6], vec![5, 7]));
    assert!(make_gridded(&q, &m3(), &[3, 7], &[4, 7]).is_ok());
    let inc = GriddingMatrix::from_rows_bottom_up(&[&[1]]).unwrap();
    assert_eq!(make_gridded(&p("21"), &inc, &[], &[]), Err(Error::NotMonotone(c(0, 0))));
    assert!(matches!(make_gridded(&q, &m3(), &[6, 4], &[5, 7]), Err(Error::BadCuts(_))));
    let forest = GriddingMatrix::from_rows_bottom_up(&[&[1, -1], &[0, 1]]).unwrap();
    assert_eq!(make_gridded(&p("12"), &forest, &[1], &[0]), Err(Error::ZeroCell(c(0, 1))));
}

#[test]
fn six_griddings() {
    let q = p("812543697");
    let all = enumerate_griddings(&q, &m3());
    assert_eq!(all.len(), 6);
    let assignments: BTreeSet<Vec<_>> = all.iter().map(|g| g.cells().to_vec()).collect();
    assert_eq!(assignments, brute_griddings(&q, &m3()));
    assert_eq!(count_griddings(&q, &m3()), 6);
}

#[test]
fn several_griddings_in_mprime() {
    assert!(enumerate_griddings(&p("28476153"), &mprime()).len() >= 2);
}

#[test]
fn empty_has_one_gridding() {
    assert_eq!(enumerate_griddings(&Perm::empty(), &m3()).len(), 1);
    assert_eq!(enumerate_griddings(&Perm::empty(), &msm())[0], GriddedPerm::empty(msm()));
}

#[test]
fn membership_examples() {
    assert!(member(&p("2143"), &msm()).is_none());
    assert!(member(&p("3412"), &msm()).is_none());
    assert!(member(&p("2413"), &msm()).is_some());
    let (pi1, m5, n6) = bicyclic_counterexample(1).unwrap();
    assert_eq!(pi1, p("35164827"));
    assert!(member(&pi1, &m5).is_none());
    assert!(member(&pi1.delete_point(0).unwrap(), &n6).is_some());
}

#[test]
fn skew_merged_oracle_up_to_six() {
    let basis = [p("2143"), p("3412")];
    for n in 0..=6 {
        for q in Perm::all_of_length(n) {
            let avoids = basis.iter().all(|b| contains(b, &q).is_none());
            assert_eq!(member(&q, &msm()).is_some(), avoids, "{q}");
        }
    }
}

#[test]
fn gridded_containment_basics() {
    let q = p("812543697");
    let g = make_gridded(&q, &m3(), &[4, 6], &[5, 7]).unwrap();
    assert_eq!(gridded_contains(&g, &g).unwrap(), Some((0..9).collect()));
    let one = GriddedPerm::new(msm(), p("1"), vec![c(0, 0)]).unwrap();
    let host = GriddedPerm::new(msm(), p("21"), vec![c(0, 1), c(1, 1)]).unwrap();
    assert_eq!(gridded_contains(&one, &host).unwrap(), None);
    assert!(contains(one.perm(), host.perm()).is_some());
    assert_eq!(gridded_contains(&one, &g), Err(Error::MatrixMismatch));
}

#[test]
fn gridded_counts_in_skew_merged() {
    let counts: Vec<usize> = (1..=7).map(|n| gridded_of_length(&msm(), n).len()).collect();
    assert_eq!(counts, vec![4, 14, 48, 166, 584, 2092, 7616]);
}

#[test]
fn direct_generation_matches_enumeration() {
    for m in [msm(), m3(), a4(), negative2()] {
        for n in 0..=5 {
            let direct: BTreeSet<GriddedPerm> = gridded_of_length(&m, n).into_iter().collect();
            let mut enumerated = BTreeSet::new();
            for q in Perm::all_of_length(n) {
                enumerated.extend(enumerate_griddings(&q, &m));
            }
            assert_eq!(direct, enumerated);
        }
    }
}

#[test]
fn partitions_cover_the_enumeration() {
    let q = p("812543697");
    let mut union = BTreeSet::new();
    for part in 0..3 {
        for g in enumerate_griddings_part(&q, &m3(), part, 3) {
            assert!(union.insert(g));
        }
    }
    assert_eq!(union, enumerate_griddings(&q, &m3()).into_iter().collect());
}

#[test]
fn downsets() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for m in [msm(), m3()] {
        let pool = gridded_of_length(&m, 9);
        for _ in 0..100 {
            let g = &pool[rng.gen_range(0..pool.len())];
            assert!(member(g.perm(), &m).is_some());
            for i in 0..9 {
                assert!(member(&g.perm().delete_point(i).unwrap(), &m).is_some());
                let d = g.delete_point(i).unwrap();
                assert!(gridded_contains(&d, g).unwrap().is_some());
            }
        }
    }
}

fn arb_perm(max: usize) -> impl Strategy<Value = Perm> {
    (0..=max)
        .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Perm::from_zero_based(v).unwrap())
}

proptest! {
    #[test]
    fn enumeration_matches_brute_force(q in arb_perm(7), which in 0usize..4) {
        let m = [msm(), m3(), a4(), mprime()][which].clone();
        let got: BTreeSet<Vec<_>> = enumerate_griddings(&q, &m).iter().map(|g| g.cells().to_vec()).collect();
        prop_assert_eq!(&got, &brute_griddings(&q, &m));
        prop_assert_eq!(member(&q, &m).is_some(), !got.is_empty());
        for g in enumerate_griddings(&q, &m) {
            let (v, h) = g.cuts();
            prop_assert_eq!(make_gridded(&q, &m, &v, &h).unwrap(), g);
        }
    }

    #[test]
    fn gridded_containment_implies_containment(seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let small = gridded_of_length(&msm(), 3);
        let large = gridded_of_length(&msm(), 6);
        let a = &small[rng.gen_range(0..small.len())];
        let b = &large[rng.gen_range(0..large.len())];
        if let Some(e) = gridded_contains(a, b).unwrap() {
            prop_assert_eq!(b.perm().pattern_at(&e), a.perm().clone());
            prop_assert!(e.iter().enumerate().all(|(k, &h)| a.cell_of(k) == b.cell_of(h)));
            prop_assert!(contains(a.perm(), b.perm()).is_some());
        }
    }
}
