mod common;

use pcinc::indices::{classical_indices, cycle_based_indices, ClassicalIndex};
use pcinc::priority::{gmm, ills, lls_criterion};
use pcinc::{evaluate_all, parse_matrix, serialize_matrix, BlendParams, ComparisonGraph, EnumerationCap, IndexId};
use proptest::prelude::*;
use rand::seq::SliceRandom;

use common::{consistent, disturbed, rng, thinned};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reciprocity_and_round_trip(seed in any::<u64>(), n in 3usize..=7) {
        let mut r = rng(seed);
        let m = thinned(&disturbed(n, 9.0, &mut r), &mut r);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(m.get(i, j).is_some(), m.get(j, i).is_some());
                if let Some(c) = m.get(i, j) {
                    prop_assert!((c * m.get(j, i).unwrap() - 1.0).abs() < 1e-15);
                }
            }
        }
        prop_assert_eq!(parse_matrix(&serialize_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn cycle_ratio_rotation_and_reversal(seed in any::<u64>(), n in 4usize..=6) {
        let mut r = rng(seed);
        let m = thinned(&disturbed(n, 9.0, &mut r), &mut r);
        let g = ComparisonGraph::new(&m);
        for c in g.enumerate_cycles(3, EnumerationCap::Unbounded).unwrap() {
            let v = c.vertices();
            let ratio = g.cycle_ratio(v);
            let mut rot = v.to_vec();
            rot.rotate_left(1);
            prop_assert!(close(g.cycle_ratio(&rot), ratio, 1e-12));
            let rev: Vec<usize> = v.iter().rev().copied().collect();
            prop_assert!(close(g.cycle_ratio(&rev), 1.0 / ratio, 1e-12));
            prop_assert!(close(g.cycle_inconsistency(&rev), g.cycle_inconsistency(v), 1e-12));
        }
    }

    #[test]
    fn removing_an_edge_only_removes_cycles(seed in any::<u64>(), n in 4usize..=6) {
        let mut r = rng(seed);
        let m = thinned(&consistent(n, &mut r), &mut r);
        let before = ComparisonGraph::new(&m).enumerate_cycles(3, EnumerationCap::Unbounded).unwrap();
        let pairs = m.defined_pairs();
        let (i, j) = pairs[seed as usize % pairs.len()];
        let after = ComparisonGraph::new(&m.without_pair(i, j)).enumerate_cycles(3, EnumerationCap::Unbounded).unwrap();
        prop_assert!(after.iter().all(|c| before.contains(c)));
    }

    #[test]
    fn indices_are_permutation_invariant(seed in any::<u64>(), n in 4usize..=7) {
        let mut r = rng(seed);
        let m = thinned(&disturbed(n, 9.0, &mut r), &mut r);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let p = BlendParams::default();
        let a = evaluate_all(&m, &p).unwrap();
        let b = evaluate_all(&m.permuted(&perm), &p).unwrap();
        for (id, v) in a.iter() {
            prop_assert!(close(v, b.get(id), 1e-9), "{} {} {}", id, v, b.get(id));
        }
    }

    #[test]
    fn consistent_matrices_score_zero(seed in any::<u64>(), n in 4usize..=8) {
        let mut r = rng(seed);
        let m = thinned(&consistent(n, &mut r), &mut r);
        for (id, v) in evaluate_all(&m, &BlendParams::default()).unwrap().iter() {
            prop_assert!(v.abs() <= 1e-9, "{} = {}", id, v);
        }
    }

    #[test]
    fn complete_matrices_reduce(seed in any::<u64>(), n in 3usize..=7) {
        let mut r = rng(seed);
        let m = disturbed(n, 30.0, &mut r);
        let p = BlendParams::default();
        let inc = evaluate_all(&m, &p).unwrap();
        let cls = classical_indices(&m, &p).unwrap();
        for (id, cid) in [
            (IndexId::Ci, ClassicalIndex::Ci),
            (IndexId::Oliva, ClassicalIndex::Ci),
            (IndexId::Gci1, ClassicalIndex::Gci),
            (IndexId::GoldenWang, ClassicalIndex::GoldenWang),
            (IndexId::Re1, ClassicalIndex::Re),
            (IndexId::Re2, ClassicalIndex::Re),
        ] {
            prop_assert!((inc.get(id) - cls.get(cid)).abs() <= 1e-8, "{} vs {}", id, cid.name());
        }
        // Longer cycles and paths can only widen the extremes.
        prop_assert!(inc.get(IndexId::KTilde) >= cls.k - 1e-12);
        prop_assert!(inc.get(IndexId::SaloHamalainen) >= cls.ish - 1e-12);
        let w_ills = ills(&m).unwrap();
        let w_gmm = gmm(&m).unwrap();
        for (a, b) in w_ills.weights().iter().zip(w_gmm.weights()) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn cycle_indices_are_ordered(seed in any::<u64>(), n in 3usize..=7) {
        let mut r = rng(seed);
        let m = thinned(&disturbed(n, 30.0, &mut r), &mut r);
        let c = cycle_based_indices(&m).unwrap();
        prop_assert!(c.i2 <= c.i1 + 1e-15);
        prop_assert!(c.i1 <= c.k + 1e-15);
        prop_assert!(c.k >= 0.0);
    }

    #[test]
    fn ills_is_locally_optimal(seed in any::<u64>(), n in 3usize..=7, step in 1e-4f64..1e-1) {
        let mut r = rng(seed);
        let m = thinned(&disturbed(n, 9.0, &mut r), &mut r);
        let w = ills(&m).unwrap().into_inner();
        let best = lls_criterion(&m, &w);
        for v in 0..n {
            for sign in [-1.0, 1.0] {
                let mut w2 = w.clone();
                w2[v] *= (sign * step).exp();
                prop_assert!(lls_criterion(&m, &w2) >= best - 1e-12);
            }
        }
    }
}
