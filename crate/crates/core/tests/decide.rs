mod common;

use std::collections::BTreeSet;

use common::*;
use gridclass::decide::{
    basis_search_with_limit, family_threshold, is_basis_element, ChiralityEvidence, DecidePlan, DEFAULT_BASIS_LIMIT,
};
use gridclass::{
    antichain_family, basis_search, bicyclic_counterexample, build_coil, check_antichain,
    check_labelled_coil_antichain, classify, coil_type, count_embeddings, cycles, decide_lwqo, end_inflated_survey,
    is_gridded_coil, member, unique_gridding_probe, Answer, Chirality, CoilType, Error, GriddingMatrix, MatrixClass,
    Perm,
};
use proptest::prelude::*;

fn section_six_basis() -> Vec<Perm> {
    [
        "2143", "2413", "3412", "314562", "412563", "415632", "431562", "512364", "512643", "516432", "541263",
        "541632", "543162",
    ]
    .iter()
    .map(|s| p(s))
    .collect()
}

fn coils_of_length(m: &GriddingMatrix, len: usize) -> Vec<Perm> {
    let cyc = cycles(m).unwrap().remove(0);
    let mut out = Vec::new();
    for ch in Chirality::BOTH {
        for s in 0..cyc.len() {
            out.push(build_coil(m, &cyc, s, ch, len).unwrap().0.perm().clone());
        }
    }
    out
}

fn forest() -> GriddingMatrix {
    GriddingMatrix::from_rows_bottom_up(&[&[1, -1, 0], &[0, 1, 0], &[0, -1, 1]]).unwrap()
}

#[test]
fn empty_basis_is_not_lwqo() {
    let v = decide_lwqo(&m3(), &[]).unwrap();
    assert_eq!(v.answer, Answer::NotLwqo);
    assert!(v.replay());
    assert_eq!(v.components.len(), 1);
    assert_eq!(v.components[0].bound, 7);
    let plan = DecidePlan::new(&m3(), &[]).unwrap();
    assert!(plan.tasks().is_empty());
}

#[test]
fn forests_are_lwqo() {
    let m = forest();
    assert_eq!(classify(&m), MatrixClass::Acyclic);
    for basis in [vec![], vec![p("21")], section_six_basis()] {
        let v = decide_lwqo(&m, &basis).unwrap();
        assert_eq!(v.answer, Answer::Lwqo);
        assert!(v.components.is_empty());
        assert!(v.replay());
    }
}

#[test]
fn section_six_class_is_not_lwqo() {
    let basis = section_six_basis();
    let v = decide_lwqo(&msm(), &basis).unwrap();
    assert_eq!(v.answer, Answer::NotLwqo);
    assert!(v.replay());
    let dropped: BTreeSet<Perm> = v.dropped.iter().cloned().collect();
    assert_eq!(dropped, [p("2143"), p("3412")].into_iter().collect());
    assert_eq!(v.components[0].bound, (6 + 5) * 4 + 6);
    let avoid = v.components[0]
        .evidence
        .iter()
        .find_map(|e| match e {
            ChiralityEvidence::AllAvoid { chirality, length } => Some((*chirality, *length)),
            _ => None,
        })
        .unwrap();
    let cyc = cycles(&v.matrix).unwrap().remove(0);
    for s in 0..4 {
        let (coil, _) = build_coil(&v.matrix, &cyc, s, avoid.0, avoid.1).unwrap();
        for b in &basis {
            assert_eq!(count_embeddings(b, coil.perm()), 0);
        }
    }
}

#[test]
fn eight_short_coils_make_lwqo() {
    let basis = coils_of_length(&msm(), 9);
    assert_eq!(basis.iter().collect::<BTreeSet<_>>().len(), 8);
    let v = decide_lwqo(&msm(), &basis).unwrap();
    assert_eq!(v.answer, Answer::Lwqo);
    assert!(v.dropped.is_empty());
    assert!(v.replay());
    assert_eq!(v.components[0].bound, 14 * 4 + 9);
}

#[test]
fn tampered_evidence_fails_replay() {
    let basis = coils_of_length(&msm(), 9);
    let mut v = decide_lwqo(&msm(), &basis).unwrap();
    if let ChiralityEvidence::Contains { embedding, .. } = &mut v.components[0].evidence[0] {
        embedding.reverse();
    }
    assert!(!v.replay());
    let mut w = decide_lwqo(&msm(), &section_six_basis()).unwrap();
    w.answer = Answer::Lwqo;
    assert!(!w.replay());
}

#[test]
fn negative_cycle_matrix_is_doubled() {
    let v = decide_lwqo(&negative2(), &[p("321")]).unwrap();
    assert!(v.doubled);
    assert_eq!(v.components.len(), 1);
    assert_eq!(v.components[0].cycle.len(), 8);
    assert!(v.replay());
}

#[test]
fn polycyclic_is_rejected() {
    let (_, m5, _) = bicyclic_counterexample(1).unwrap();
    assert_eq!(classify(&m5), MatrixClass::Polycyclic);
    assert!(matches!(decide_lwqo(&m5, &[]), Err(Error::UnsupportedClass(MatrixClass::Polycyclic))));
}

fn two_components() -> GriddingMatrix {
    GriddingMatrix::from_rows_bottom_up(&[&[1, -1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, -1, -1]]).unwrap()
}

#[test]
fn pseudoforest_verdict_is_conjunction() {
    let m = two_components();
    assert_eq!(classify(&m), MatrixClass::Pseudoforest);
    let left = msm();
    let right = mprime();
    let bases = vec![
        vec![],
        coils_of_length(&left, 9),
        coils_of_length(&right, 9),
        [coils_of_length(&left, 9), coils_of_length(&right, 7)].concat(),
        vec![p("2413"), p("3142")],
        vec![p("123")],
    ];
    for basis in bases {
        let whole = decide_lwqo(&m, &basis).unwrap();
        let a = decide_lwqo(&left, &basis).unwrap();
        let b = decide_lwqo(&right, &basis).unwrap();
        let both = a.answer == Answer::Lwqo && b.answer == Answer::Lwqo;
        assert_eq!(whole.answer == Answer::Lwqo, both, "{basis:?}");
        assert!(whole.replay());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adding_basis_elements_keeps_lwqo(picks in prop::collection::vec(0usize..40, 1..5), extra in 0usize..40) {
        let mut pool = coils_of_length(&msm(), 9);
        pool.extend(coils_of_length(&msm(), 6));
        pool.extend(["2413", "3142", "312", "231", "1234", "4321", "25314", "21"].iter().map(|s| p(s)));
        pool.extend(section_six_basis());
        pool.truncate(40);
        let basis: Vec<Perm> = picks.iter().map(|&i| pool[i % pool.len()].clone()).collect();
        let mut bigger = basis.clone();
        bigger.push(pool[extra % pool.len()].clone());
        let v = decide_lwqo(&msm(), &basis).unwrap();
        let w = decide_lwqo(&msm(), &bigger).unwrap();
        prop_assert!(v.replay() && w.replay());
        if v.answer == Answer::Lwqo {
            prop_assert_eq!(w.answer, Answer::Lwqo);
        }
    }
}

#[test]
fn antichain_family_lengths() {
    let m = msm();
    let f = antichain_family(&m, CoilType { first: 0, second: 1, last: 0 }, 3).unwrap();
    let lens: Vec<usize> = f.members.iter().map(|g| g.len()).collect();
    assert_eq!(lens, vec![83, 87, 91]);
    let perms: Vec<Perm> = f.members.iter().map(|g| g.perm().clone()).collect();
    assert_eq!(check_antichain(&perms), Ok(()));
    let f = antichain_family(&m, CoilType { first: 2, second: 1, last: 3 }, 2).unwrap();
    assert_eq!(f.members.iter().map(|g| g.len()).collect::<Vec<_>>(), vec![86, 90]);
    let f = antichain_family(&m3(), CoilType { first: 0, second: 1, last: 0 }, 1).unwrap();
    assert_eq!(f.members[0].len(), 7 * 36 + 3);
    assert!(antichain_family(&m, CoilType { first: 0, second: 1, last: 0 }, 0).unwrap().members.is_empty());
    assert_eq!(antichain_family(&m, CoilType { first: 0, second: 2, last: 0 }, 1), Err(Error::InvalidType));
    assert_eq!(antichain_family(&m, CoilType { first: 4, second: 1, last: 0 }, 1), Err(Error::InvalidType));
    assert_eq!(family_threshold(4), 81);
}

#[test]
fn family_members_share_their_type() {
    let m = msm();
    let cyc = cycles(&m).unwrap().remove(0);
    for first in 0..4 {
        for ch in Chirality::BOTH {
            let second = if ch == Chirality::A { (first + 1) % 4 } else { (first + 3) % 4 };
            for last in 0..4 {
                let ty = CoilType { first, second, last };
                let f = antichain_family(&m, ty, 2).unwrap();
                assert_eq!(f.members[1].len() - f.members[0].len(), 4);
                assert!(f.members[0].len() >= 83);
                for g in &f.members {
                    let (coil, cert) = build_coil(&m, &cyc, first, ch, g.len() - 2).unwrap();
                    assert_eq!(coil_type(&cert), ty);
                    assert_eq!(gridclass::end_inflate(&coil, &cert).unwrap(), *g);
                }
            }
        }
    }
}

#[test]
fn antichain_checks() {
    let pis: Vec<Perm> = (1..=3).map(|k| bicyclic_counterexample(k).unwrap().0).collect();
    assert_eq!(check_antichain(&pis), Ok(()));
    assert_eq!(check_antichain(&[p("12"), p("123")]), Err((0, 1)));
    assert_eq!(check_antichain(&[p("123"), p("12")]), Err((1, 0)));
    assert_eq!(check_antichain(&[p("1")]), Ok(()));
    assert_eq!(check_antichain(&[]), Ok(()));
}

#[test]
fn labelled_coil_antichains() {
    for ch in Chirality::BOTH {
        for s in 0..4 {
            assert!(check_labelled_coil_antichain(&msm(), s, ch, &[9, 13]).unwrap());
        }
    }
    assert!(check_labelled_coil_antichain(&m3(), 0, Chirality::A, &[7, 13, 19]).unwrap());
    assert!(check_labelled_coil_antichain(&m3(), 3, Chirality::B, &[7, 13, 19]).unwrap());
    assert_eq!(check_labelled_coil_antichain(&msm(), 0, Chirality::A, &[9, 9]), Err(Error::InvalidLengths));
    assert_eq!(check_labelled_coil_antichain(&msm(), 0, Chirality::A, &[4, 9]), Err(Error::InvalidLengths));
}

#[test]
fn unlabelled_coils_do_embed() {
    let a = coils_of_length(&msm(), 9);
    let b = coils_of_length(&msm(), 13);
    for (x, y) in a.iter().zip(&b) {
        assert!(gridclass::contains(x, y).is_some());
    }
}

#[test]
fn skew_merged_basis() {
    let b = basis_search(&msm(), 5).unwrap();
    assert_eq!(b, vec![p("2143"), p("3412")]);
    let inc = with_pmm(GriddingMatrix::from_rows_bottom_up(&[&[1]]).unwrap());
    assert_eq!(basis_search(&inc, 3).unwrap(), vec![p("21")]);
    assert_eq!(basis_search(&msm(), DEFAULT_BASIS_LIMIT + 1), Err(Error::BudgetExceeded { requested: 9, limit: 8 }));
    assert_eq!(basis_search_with_limit(&msm(), 7, 7).unwrap().len(), 2);
    let found = basis_search(&m3(), 5).unwrap();
    assert_eq!(check_antichain(&found), Ok(()));
    for b in &found {
        assert!(is_basis_element(b, &m3()));
    }
}

#[test]
fn bicyclic_instances() {
    let published = ["3 5 1 6 4 8 2 7", "5 9 1 7 3 8 6 10 4 12 2 11", "7 13 1 11 3 9 5 10 8 12 6 14 4 16 2 15"];
    for (k, text) in (1..=3).zip(published) {
        let (pi, m5, n6) = bicyclic_counterexample(k).unwrap();
        assert_eq!(pi, p(text));
        assert_eq!(pi.len(), 4 * k + 4);
        assert_eq!(classify(&m5), MatrixClass::Polycyclic);
        assert_eq!(classify(&n6), MatrixClass::Pseudoforest);
    }
    assert_eq!(bicyclic_counterexample(0).unwrap_err(), Error::InvalidLengths);
}

#[test]
fn bicyclic_membership() {
    for k in 1..=4 {
        let (pi, m5, n6) = bicyclic_counterexample(k).unwrap();
        assert!(member(&pi, &m5).is_none());
        for i in 0..pi.len() {
            assert!(member(&pi.delete_point(i).unwrap(), &n6).is_some(), "k {k} i {i}");
        }
        if k <= 2 {
            assert!(is_basis_element(&pi, &m5));
            assert!(is_basis_element(&pi, &n6));
        }
    }
}

#[test]
fn lambda_embeds_once() {
    let (pi1, _, _) = bicyclic_counterexample(1).unwrap();
    assert_eq!(count_embeddings(&p("3516472"), &pi1), 1);
    assert_eq!(brute_embeddings(&p("3516472"), &pi1).len(), 1);
}

#[test]
fn pi_k_holds_a_coil() {
    for k in 1..=3 {
        let (pi, _, _) = bicyclic_counterexample(k).unwrap();
        let found =
            gridclass::longest_coil_contained(&pi, &gridclass::decide::bicyclic_coil_matrix()).unwrap().unwrap();
        assert_eq!(found.length, 4 * k + 2);
    }
}

#[test]
fn survey_reports() {
    let m = msm();
    let all = end_inflated_survey(&m, &[], 100).unwrap();
    assert_eq!(all.threshold, 83);
    assert!(!all.below_threshold);
    assert_eq!(all.types.len(), 32);
    assert!(all.types.iter().all(|t| t.alive && !t.avoiding.is_empty()));
    let none = end_inflated_survey(&m, &[p("2413"), p("3142")], 100).unwrap();
    assert!(none.types.is_empty());
    let low = end_inflated_survey(&m, &[], 82).unwrap();
    assert!(low.below_threshold);
    assert!(low.types.is_empty());
}

#[test]
fn survey_drops_one_chirality() {
    let m = msm();
    let cyc = cycles(&m).unwrap().remove(0);
    let basis: Vec<Perm> = (0..4).map(|s| build_coil(&m, &cyc, s, Chirality::A, 9).unwrap().0.perm().clone()).collect();
    let r = end_inflated_survey(&m, &basis, 100).unwrap();
    assert_eq!(r.types.len(), 16);
    for t in &r.types {
        assert_eq!(t.coil_type.second, (t.coil_type.first + 3) % 4);
        let first = t.avoiding[0];
        assert!((83..87).contains(&first));
        assert_eq!(t.avoiding, (first..=100).step_by(4).collect::<Vec<_>>());
        assert!(t.alive);
    }
}

#[test]
fn unique_gridding_probes() {
    let mp = mprime();
    let x = p("28476153");
    assert!(gridclass::gridding::count_griddings(&x, &mp) >= 2);
    assert!(gridclass::enumerate_griddings(&x, &mp).iter().any(|g| is_gridded_coil(g).is_some()));
    let lens: Vec<usize> = (9..=20).collect();
    let entries = unique_gridding_probe(&mp, &lens).unwrap();
    assert_eq!(entries.len(), 12 * 8);
    assert!(entries.iter().all(|e| e.griddings == 1));
    let short = unique_gridding_probe(&mp, &[8]).unwrap();
    assert!(short.iter().any(|e| e.perm == x && e.griddings >= 2));
    let long = unique_gridding_probe(&msm(), &[81]).unwrap();
    assert!(long.iter().all(|e| e.griddings == 1));
}
