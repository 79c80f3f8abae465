//! Randomized cross-module invariants tying the constructions, the code
//! surgery and the brute-force references together.

mod common;

use common::*;
use lodex::constructions::*;
use lodex::fmatrix::FVector;
use lodex::indexcode::{
    fitting_matrix_of, normalize_zeroes, prune_queries, time_share, validate, validate_cached,
};
use lodex::oracles::{min_queries_for_encoder, minrank_bruteforce, optimal_ab_coloring};
use lodex::sigraph::SideInfoGraph;
use lodex::{rat_int, rat_usize, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

const BUDGET: u64 = 1 << 22;

/// Every construction validates on its target graph across randomized
/// parameters, keeps `1 <= r_avg <= r <= beta`, and satisfies the
/// single-query counting bound.
#[test]
fn every_construction_validates() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut emitted = 0u32;
    for _ in 0..12 {
        let q: u64 = *[2, 3, 4].get(rng.gen_range(0..3)).unwrap();
        let f = gf(q);
        let n = rng.gen_range(3..=6usize);
        let mut codes = Vec::new();

        let cyc = SideInfoGraph::directed_cycle(n);
        codes.push((
            cyc.clone(),
            cycle_scalar_code(n, rng.gen_range(1..=n), &f).unwrap(),
        ));
        codes.push((cyc.clone(), cycle_vector_code(n, &f).unwrap()));
        codes.push((
            cyc.clone(),
            cycle_code_for_message_length(n, rng.gen_range(1..=2 * n), &f).unwrap(),
        ));
        codes.push((
            cyc.clone(),
            cyclic_symmetry_code(&cyc, rng.gen_range(n - 1..=n), &f, BUDGET).unwrap(),
        ));

        let g = random_graph(&mut rng, n, 1, 2);
        codes.push((g.clone(), uncoded(&g, rng.gen_range(1..=2), &f)));
        if let Ok(coloring) = optimal_ab_coloring(&g.interference_graph()) {
            codes.push((
                g.clone(),
                fractional_coloring_code(&g, &coloring, &f).unwrap(),
            ));
        }
        codes.push((g.clone(), minrank_nm1_code(&g, &f).unwrap().0));
        codes.push((
            g.clone(),
            partition_cover_code(&g, rng.gen_range(1..=3), &Providers::default(), &f, BUDGET)
                .unwrap()
                .code,
        ));

        for (graph, code) in codes {
            let report = validate(&graph, &code).unwrap();
            assert!(report.valid, "construction failed on {}", graph.to_json());
            let p = code.locality_profile();
            assert!(p.average >= rat_int(1));
            assert!(p.overall >= p.average);
            assert!(p.rate >= p.overall);
            assert!(code.single_query_stats().holds);
            emitted += 1;
        }
    }
    assert!(emitted > 80);
}

/// When the whole graph has minrank N-1, every induced subproblem has
/// minrank at least |S| - 1.
#[test]
fn induced_minrank_drops_by_at_most_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let f = gf(2);
    let mut tested = 0;
    while tested < 8 {
        let n = rng.gen_range(4..=6usize);
        let cycle_len = rng.gen_range(3..=n);
        let extra = rng.gen_range(0..=2);
        let g = random_planted_cycle(&mut rng, n, cycle_len, extra);
        let Ok(mr) = minrank_bruteforce(&g, &f, BUDGET) else {
            continue;
        };
        if mr.minrank != n - 1 {
            continue;
        }
        tested += 1;
        for _ in 0..6 {
            let size = rng.gen_range(1..=n);
            let mut s = BTreeSet::new();
            while s.len() < size {
                s.insert(rng.gen_range(1..=n));
            }
            let (sub, _) = g.induced_subgraph(&s).unwrap();
            let sub_mr = minrank_bruteforce(&sub, &f, BUDGET).unwrap().minrank;
            assert!(
                sub_mr >= size - 1,
                "induced minrank {sub_mr} < |S|-1 on {}",
                g.to_json()
            );
        }
    }
}

/// For an optimal scalar encoder, the receivers in the support of any
/// fitting-matrix null vector together query at least twice the induced
/// minrank.
#[test]
fn null_support_localities_are_twice_induced_minrank() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let f = gf(2);
    let mut tested = 0;
    while tested < 6 {
        let n = rng.gen_range(4..=5usize);
        let extra = rng.gen_range(0..=1);
        let cycle_len = rng.gen_range(3..=n);
        let g = random_planted_cycle(&mut rng, n, cycle_len, extra);
        let Ok(mr) = minrank_bruteforce(&g, &f, BUDGET) else {
            continue;
        };
        if mr.minrank == n {
            continue;
        }
        tested += 1;
        // optimal encoder from the witness, minimal queries per receiver
        let keep = lodex::fmatrix::independent_subset_indices(&mr.witness.columns());
        let l = mr.witness.select_cols(&keep);
        let mut sizes = vec![0usize; n + 1];
        for i in 1..=n {
            let (size, _) = min_queries_for_encoder(&g, &l, 1, i, 20).unwrap();
            sizes[i] = size;
        }
        for z in mr.witness.null_space_basis() {
            let support: BTreeSet<usize> = z.support().iter().map(|&t| t + 1).collect();
            if support.is_empty() {
                continue;
            }
            let (sub, _) = g.induced_subgraph(&support).unwrap();
            let sub_mr = minrank_bruteforce(&sub, &f, BUDGET).unwrap().minrank;
            let total: usize = support.iter().map(|&i| sizes[i]).sum();
            assert!(
                total >= 2 * sub_mr,
                "support {support:?} queries {total} < 2*{sub_mr} on {}",
                g.to_json()
            );
        }
    }
}

/// Time sharing combines rates as the exact weighted average and never
/// exceeds the weighted average of localities.
#[test]
fn time_share_weighted_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let f = gf(3);
    for _ in 0..20 {
        let n = rng.gen_range(3..=5usize);
        let g = SideInfoGraph::directed_cycle(n);
        let mut a = uncoded(&g, rng.gen_range(1..=2), &f);
        let mut b = cycle_vector_code(n, &f).unwrap();
        validate_cached(&g, &mut a).unwrap();
        validate_cached(&g, &mut b).unwrap();
        let wa = rng.gen_range(1..=3u64);
        let wb = rng.gen_range(1..=3u64);
        let mut shared = time_share(&[&a, &b], &[wa, wb]).unwrap();
        assert!(validate_cached(&g, &mut shared).unwrap().valid);
        let (pa, pb, ps) = (
            a.locality_profile(),
            b.locality_profile(),
            shared.locality_profile(),
        );
        let weight_a = rat_usize(wa as usize) / rat_usize((wa + wb) as usize);
        let weight_b = rat_int(1) - weight_a.clone();
        let expected_rate = weight_a.clone() * pa.rate + weight_b.clone() * pb.rate;
        assert_eq!(ps.rate, expected_rate);
        let mixed_r: Rat = weight_a * pa.overall + weight_b * pb.overall;
        assert!(ps.overall <= mixed_r);
    }
}

/// Decoding returns the transmitted demands on random message vectors for
/// randomized valid codes, including after normalization and pruning.
#[test]
fn decode_round_trip_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..30 {
        let q: u64 = *[2, 3].get(rng.gen_range(0..2)).unwrap();
        let f = gf(q);
        let n = rng.gen_range(3..=5usize);
        let g = SideInfoGraph::directed_cycle(n);
        let base = cycle_code_for_message_length(n, rng.gen_range(1..=n), &f).unwrap();
        let variants = vec![
            base.clone(),
            normalize_zeroes(&g, &base).unwrap(),
            prune_queries(&g, &base).unwrap(),
        ];
        for code in variants {
            let mn = n * code.msg_len();
            let x = FVector::from_felts(&f, (0..mn).map(|_| f.elt(rng.gen())).collect());
            let c = code.encode(&x);
            for i in 1..=n {
                let side: BTreeMap<usize, FVector> = g
                    .side_info(i)
                    .iter()
                    .map(|&j| {
                        let block: Vec<_> = ((j - 1) * code.msg_len()..j * code.msg_len())
                            .map(|t| x.get(t))
                            .collect();
                        (j, FVector::from_felts(&f, block))
                    })
                    .collect();
                let got = code.decode(&g, i, &c, &side).unwrap();
                let want: Vec<_> = code.demand_rows(i).map(|t| x.get(t)).collect();
                assert_eq!(got.entries(), &want[..]);
            }
        }
    }
}

/// The N x N fitting matrix extracted from a valid scalar code fits the
/// graph and its column space sits inside the encoder's.
#[test]
fn extracted_fitting_matrices_fit() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let f = gf(2);
    for _ in 0..10 {
        let n = rng.gen_range(3..=6usize);
        let g = random_graph(&mut rng, n, 1, 2);
        let (code, _) = minrank_nm1_code(&g, &f).unwrap();
        let fitting = fitting_matrix_of(&g, &code).unwrap();
        assert!(lodex::oracles::fits(&g, fitting.matrix()));
        for c in 0..n {
            let col = fitting.matrix().column(c);
            assert!(code.encoder().solve(&col).unwrap().is_some());
        }
    }
}
