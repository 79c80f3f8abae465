//! Acceptance suite: one test per claim, each printing a PASS line with
//! its runtime. Everything is exact rational arithmetic; there are no
//! tolerances to tune.

mod common;

use common::*;
use lodex::constructions::{
    ais_cover_code, cycle_vector_code, feasible_locality_code, fractional_coloring_code,
    minrank_nm1_code, partition_cover_code, t_subset_cover, uncoded, ConstructError,
    MinrankNm1Note, Providers,
};
use lodex::fmatrix::{independent_subset_indices, FMatrix};
use lodex::indexcode::{normalize_zeroes, time_share, validate, validate_cached, IndexCode};
use lodex::oracles::{
    enumerate_fittings, exhaustive_decodability, min_queries_for_encoder, minrank_bruteforce,
    optimal_ab_coloring,
};
use lodex::sigraph::SideInfoGraph;
use lodex::{rat, rat_int, rat_usize, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const BUDGET: u64 = 1 << 24;

fn finish_line(criterion: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    println!("PASS {criterion} ({elapsed:.2?})");
    assert!(
        elapsed < limit,
        "{criterion} exceeded its runtime budget: {elapsed:.2?} > {limit:.2?}"
    );
}

/// 3-cycle over GF(2): the corner points (1,3) and (4/3,2) and the
/// time-shared points on the line beta = 6 - 3r at r = 7/6 and 5/4.
#[test]
fn criterion_01_three_cycle_corner_points() {
    let started = Instant::now();
    let g = SideInfoGraph::directed_cycle(3);
    let f = gf(2);

    let coloring = optimal_ab_coloring(&g.interference_graph()).unwrap();
    let at_one = fractional_coloring_code(&g, &coloring, &f).unwrap();
    let p = at_one.locality_profile();
    assert_eq!(
        (p.overall.clone(), p.rate.clone()),
        (rat_int(1), rat_int(3))
    );
    assert!(validate(&g, &at_one).unwrap().valid);

    let corner = cycle_vector_code(3, &f).unwrap();
    let p = corner.locality_profile();
    assert_eq!((p.overall.clone(), p.rate.clone()), (rat(4, 3), rat_int(2)));
    assert!(validate(&g, &corner).unwrap().valid);

    let mut un = uncoded(&g, 1, &f);
    validate_cached(&g, &mut un).unwrap();
    for (mult_uncoded, mult_cycle, want_r) in [(1u64, 1u64, rat(7, 6)), (1, 3, rat(5, 4))] {
        let mut shared = time_share(&[&un, &corner], &[mult_uncoded, mult_cycle]).unwrap();
        let report = validate_cached(&g, &mut shared).unwrap();
        assert!(report.valid);
        let p = shared.locality_profile();
        assert_eq!(p.overall, want_r);
        let on_line = rat_int(6) - rat_int(3) * want_r;
        assert_eq!(p.rate, on_line, "time-shared point sits on beta = 6 - 3r");
    }
    finish_line(
        "criterion 1 (3-cycle corner points)",
        started,
        Duration::from_secs(1),
    );
}

/// Directed N-cycles, N in 3..=7: the vector code attains beta = N-1 with
/// r = r_avg = 2(N-1)/N at the minimum message length.
#[test]
fn criterion_02_cycle_corner_exact() {
    let started = Instant::now();
    for n in 3..=7usize {
        let g = SideInfoGraph::directed_cycle(n);
        let code = cycle_vector_code(n, &gf(2)).unwrap();
        assert!(validate(&g, &code).unwrap().valid);
        let p = code.locality_profile();
        assert_eq!(p.rate, rat_int(n as i64 - 1));
        assert_eq!(p.overall, rat(2 * (n as i64 - 1), n as i64));
        assert_eq!(p.average, p.overall);
        assert_eq!(
            code.msg_len(),
            lodex::oracles::min_message_length_for_cycle_locality(n)
        );
    }
    finish_line(
        "criterion 2 (cycle corner, N = 3..7)",
        started,
        Duration::from_secs(1),
    );
}

/// The worked construction pi = (3,1,5,2,4), r = (1,1,1,2,3) over GF(3)
/// reproduces the published encoder bit for bit.
#[test]
fn criterion_03_feasible_locality_bit_exact() {
    let started = Instant::now();
    let f = gf(3);
    let out = feasible_locality_code(&[3, 1, 5, 2, 4], &[1, 1, 1, 2, 3], &f).unwrap();
    // codeword (x1-x3, x2-x1, x3-x5, x1-x2-x3+x4)
    let expected = FMatrix::from_vals(
        &f,
        5,
        4,
        &[
            1, 2, 0, 1, //
            0, 1, 0, 2, //
            2, 0, 1, 2, //
            0, 0, 0, 1, //
            0, 0, 2, 0,
        ],
    );
    assert_eq!(out.code.encoder(), &expected);
    let p = out.code.locality_profile();
    assert_eq!(
        p.per_receiver,
        vec![rat_int(1), rat_int(1), rat_int(1), rat_int(2), rat_int(3)]
    );
    finish_line(
        "criterion 3 (worked example bit-exact)",
        started,
        Duration::from_secs(1),
    );
}

/// Feasibility is exactly `sum r_i >= 2(N-1)`: over every single-cycle pi
/// with N <= 7 and 200 random locality vectors each, the construction
/// succeeds iff the sum condition holds, and every success validates at
/// length N-1 within the requested localities.
#[test]
fn criterion_04_feasible_localities_iff() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xfea51b1e);
    let f = gf(3);
    let mut successes = 0u64;
    let mut failures = 0u64;
    for n in 2..=7usize {
        for pi in all_single_cycles(n) {
            let g = SideInfoGraph::from_permutation(&pi).unwrap();
            for _ in 0..200 {
                let r: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
                let feasible = r.iter().sum::<u64>() >= 2 * (n as u64 - 1);
                match feasible_locality_code(&pi, &r, &f) {
                    Ok(out) => {
                        assert!(feasible, "construction succeeded on an infeasible vector");
                        successes += 1;
                        assert_eq!(out.code.code_len(), n - 1);
                        let p = out.code.locality_profile();
                        for i in 0..n {
                            assert!(p.per_receiver[i] <= rat_int(r[i] as i64));
                        }
                        debug_assert!(validate(&g, &out.code).unwrap().valid);
                    }
                    Err(ConstructError::InfeasibleLocalities { .. }) => {
                        assert!(!feasible, "construction refused a feasible vector");
                        failures += 1;
                    }
                    Err(other) => panic!("unexpected error: {other}"),
                }
            }
        }
    }
    assert!(
        successes > 0 && failures > 0,
        "both directions were exercised"
    );
    finish_line(
        "criterion 4 (feasible localities iff sum >= 2(N-1))",
        started,
        Duration::from_secs(30),
    );
}

fn random_valid_code(rng: &mut ChaCha8Rng, g: &SideInfoGraph, q: u64, msg_len: usize) -> IndexCode {
    let f = gf(q);
    match rng.gen_range(0..3) {
        0 => uncoded(g, msg_len, &f),
        1 => {
            // uncoded plus a few extra receiver-specific columns
            let mut code = uncoded(g, msg_len, &f);
            for _ in 0..rng.gen_range(1..=2) {
                code = append_random_solo_column(rng, g, &code);
            }
            code
        }
        _ => {
            let mut code = uncoded(g, msg_len, &f);
            // densify: replace one identity column by a decodable sum
            // (x_i + x_j for j in K_i), which stays valid
            let i = rng.gen_range(1..=g.n());
            if let Some(&j) = g.side_info(i).iter().next() {
                if msg_len == 1 {
                    let mut enc = code.encoder().clone();
                    enc.set(j - 1, i - 1, f.one());
                    code = IndexCode::new(f.clone(), g.n(), 1, enc, code.all_queries().to_vec())
                        .unwrap();
                }
            }
            code
        }
    }
}

/// Appends one column with random entries, queried only by one random
/// receiver. Extra information can never hurt, so validity is preserved,
/// and the new column is singly queried.
fn append_random_solo_column(
    rng: &mut ChaCha8Rng,
    g: &SideInfoGraph,
    code: &IndexCode,
) -> IndexCode {
    let f = code.field().clone();
    let mn = g.n() * code.msg_len();
    let mut enc = FMatrix::zeros(&f, mn, code.code_len() + 1);
    for r in 0..mn {
        for c in 0..code.code_len() {
            enc.set(r, c, code.encoder().get(r, c));
        }
        enc.set(r, code.code_len(), f.elt(rng.gen::<u64>()));
    }
    let mut queries = code.all_queries().to_vec();
    let lucky = rng.gen_range(0..g.n());
    queries[lucky].insert(code.code_len());
    IndexCode::new(f, g.n(), code.msg_len(), enc, queries).unwrap()
}

fn random_arbitrary_code(
    rng: &mut ChaCha8Rng,
    g: &SideInfoGraph,
    q: u64,
    msg_len: usize,
    len: usize,
) -> IndexCode {
    let f = gf(q);
    let mn = g.n() * msg_len;
    let entries: Vec<u64> = (0..mn * len).map(|_| rng.gen()).collect();
    let enc = FMatrix::from_vals(&f, mn, len, &entries);
    let queries = (0..g.n())
        .map(|_| {
            let size = rng.gen_range(1..=len);
            let mut s = BTreeSet::new();
            while s.len() < size {
                s.insert(rng.gen_range(0..len));
            }
            s
        })
        .collect();
    IndexCode::new(f, g.n(), msg_len, enc, queries).unwrap()
}

fn corrupt(rng: &mut ChaCha8Rng, code: &IndexCode) -> IndexCode {
    let f = code.field().clone();
    let mut enc = code.encoder().clone();
    let mut queries = code.all_queries().to_vec();
    if rng.gen_bool(0.5) {
        let r = rng.gen_range(0..enc.rows());
        let c = rng.gen_range(0..enc.cols());
        let bump = f.elt(rng.gen_range(1..f.order() as u64));
        enc.set(r, c, f.add(enc.get(r, c), bump));
    } else {
        let i = rng.gen_range(0..queries.len());
        if let Some(&k) = queries[i].iter().next() {
            queries[i].remove(&k);
        }
    }
    IndexCode::new(f, code.n(), code.msg_len(), enc, queries).unwrap()
}

/// The linear validator agrees with information-theoretic exhaustion on
/// valid and corrupted codes alike.
#[test]
fn criterion_05_validator_matches_exhaustive_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0bac1e);
    let mut checked = 0u64;
    let mut valid_seen = 0u64;
    let mut invalid_seen = 0u64;
    while checked < 500 {
        let q: u64 = *[2, 2, 2, 3, 4].get(rng.gen_range(0..5)).unwrap();
        let n = rng.gen_range(2..=4usize);
        let msg_len = rng.gen_range(1..=2usize);
        let mn = (n * msg_len) as u32;
        if (q as u128).pow(mn) > 1 << 16 {
            continue;
        }
        let g = random_graph(&mut rng, n, 1, 2);
        let code = match rng.gen_range(0..3) {
            0 => random_valid_code(&mut rng, &g, q, msg_len),
            1 => {
                let base = random_valid_code(&mut rng, &g, q, msg_len);
                corrupt(&mut rng, &base)
            }
            _ => {
                let len = rng.gen_range(1..=(n * msg_len).min(6));
                random_arbitrary_code(&mut rng, &g, q, msg_len, len)
            }
        };
        let linear = validate(&g, &code).unwrap().valid;
        let exhaustive = exhaustive_decodability(&g, &code, 1 << 16).unwrap();
        assert_eq!(
            linear,
            exhaustive,
            "disagreement on n={n} q={q} M={msg_len} code={}",
            code.to_json()
        );
        if linear {
            valid_seen += 1;
        } else {
            invalid_seen += 1;
        }
        checked += 1;
    }
    assert!(
        valid_seen >= 50 && invalid_seen >= 50,
        "both outcomes well represented"
    );
    finish_line(
        "criterion 5 (validator = exhaustive oracle on 500 codes)",
        started,
        Duration::from_secs(60),
    );
}

/// Minrank references: 3-cycle over GF(2) is 2, directed N-cycles give
/// N-1, and DAGs always give N.
#[test]
fn criterion_06_minrank_references() {
    let started = Instant::now();
    let f = gf(2);
    assert_eq!(
        minrank_bruteforce(&SideInfoGraph::directed_cycle(3), &f, BUDGET)
            .unwrap()
            .minrank,
        2
    );
    for n in 2..=6usize {
        assert_eq!(
            minrank_bruteforce(&SideInfoGraph::directed_cycle(n), &f, BUDGET)
                .unwrap()
                .minrank,
            n - 1
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xda6);
    for _ in 0..50 {
        let n = rng.gen_range(2..=6usize);
        let g = random_dag(&mut rng, n, 1, 2);
        assert_eq!(
            minrank_bruteforce(&g, &f, BUDGET).unwrap().minrank,
            n,
            "DAGs have full minrank: {}",
            g.to_json()
        );
    }
    finish_line(
        "criterion 6 (minrank oracle references)",
        started,
        Duration::from_secs(60),
    );
}

/// Locality-1 optimum: the coloring code achieves the fractional
/// chromatic number of the interference graph with disjoint queries
/// across interference edges, and no randomly sampled locality-1 code
/// does better.
#[test]
fn criterion_07_locality_one_optimum() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc010e);
    let f = gf(2);
    for trial in 0..20 {
        let n = rng.gen_range(3..=8usize);
        let g = random_graph(&mut rng, n, 1, 2);
        let h = g.interference_graph();
        let coloring = optimal_ab_coloring(&h).unwrap();
        let chif = coloring.ratio();
        let code = fractional_coloring_code(&g, &coloring, &f).unwrap();
        let p = code.locality_profile();
        assert_eq!(p.overall, rat_int(1), "trial {trial}");
        assert_eq!(p.rate, chif, "rate equals the fractional chromatic number");
        for (i, j) in h.edges() {
            assert!(
                code.queries(i).is_disjoint(code.queries(j)),
                "interference neighbors must query disjoint symbols"
            );
        }
        // randomized search below the optimum: every locality-1 code with
        // beta < chi_f must fail validation
        let shorter = chif.ceil().to_integer();
        let shorter = usize::try_from(&shorter).unwrap() - 1;
        if shorter >= 1 {
            for _ in 0..100 {
                let code = {
                    let entries: Vec<u64> = (0..n * shorter).map(|_| rng.gen()).collect();
                    let enc = FMatrix::from_vals(&f, n, shorter, &entries);
                    let queries = (0..n)
                        .map(|_| BTreeSet::from([rng.gen_range(0..shorter)]))
                        .collect();
                    IndexCode::new(f.clone(), n, 1, enc, queries).unwrap()
                };
                assert!(
                    !validate(&g, &code).unwrap().valid,
                    "a locality-1 code with rate {shorter} < {} should not exist",
                    lodex::fmt_rat(&chif)
                );
            }
        }
    }
    finish_line(
        "criterion 7 (locality-1 optimum = fractional coloring)",
        started,
        Duration::from_secs(120),
    );
}

/// Scalar coding on minrank-(N-1) graphs with shortest cycle >= 3: the
/// cycle-plus-uncoded scheme has rate N-1, locality 2, average
/// (N + N_c - 2)/N, and no optimal scalar encoder beats that average.
#[test]
fn criterion_08_minrank_nm1_optimal_scalar() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x31f0);
    let f = gf(2);
    let mut found = 0;
    while found < 20 {
        let n = rng.gen_range(4..=6usize);
        let cycle_len = rng.gen_range(3..=n);
        let extra = rng.gen_range(0..=2);
        let g = random_planted_cycle(&mut rng, n, cycle_len, extra);
        if g.edge_count() > 12 {
            continue;
        }
        let Ok(mr) = minrank_bruteforce(&g, &f, BUDGET) else {
            continue;
        };
        if mr.minrank != n - 1 {
            continue;
        }
        let (girth, _) = g.shortest_directed_cycle().expect("a cycle was planted");
        assert!(girth >= 3);
        found += 1;

        let (code, note) = minrank_nm1_code(&g, &f).unwrap();
        assert!(matches!(note, MinrankNm1Note::CycleScheme { .. }));
        let p = code.locality_profile();
        assert_eq!(p.rate, rat_int(n as i64 - 1));
        assert_eq!(p.overall, rat_int(2));
        let expected_avg = rat(n as i64 + girth as i64 - 2, n as i64);
        assert_eq!(p.average, expected_avg);

        // exhaustive sweep over optimal scalar encoders: rank-(N-1)
        // fitting matrices determine the candidate column spaces
        let mut best_avg: Option<Rat> = None;
        let mut seen_spaces = BTreeSet::new();
        enumerate_fittings(&g, &f, BUDGET, &mut |a| {
            if a.rank() != n - 1 {
                return true;
            }
            // canonical form of the column space
            let canon: Vec<u32> = a
                .transpose()
                .rref()
                .0
                .entries()
                .iter()
                .map(|e| e.val())
                .collect();
            if !seen_spaces.insert(canon) {
                return true;
            }
            let keep = independent_subset_indices(&a.columns());
            let l = a.select_cols(&keep);
            let mut total = 0usize;
            for i in 1..=n {
                let (size, _) = min_queries_for_encoder(&g, &l, 1, i, 20)
                    .expect("optimal encoders decode everywhere");
                total += size;
            }
            let avg = rat_usize(total) / rat_usize(n);
            if best_avg.as_ref().is_none_or(|b| &avg < b) {
                best_avg = Some(avg);
            }
            true
        })
        .unwrap();
        let best = best_avg.expect("at least one rank-(N-1) fitting matrix exists");
        assert_eq!(
            best, expected_avg,
            "no optimal scalar encoder beats the average locality bound"
        );
    }
    finish_line(
        "criterion 8 (minrank N-1: optimal locality pair)",
        started,
        Duration::from_secs(600),
    );
}

/// The single-query counting bound holds on every code emitted by every
/// construction in the corpus.
#[test]
fn criterion_09_single_query_bound_everywhere() {
    let started = Instant::now();
    let corpus = build_corpus();
    assert!(corpus.len() >= 30);
    for (name, code) in &corpus {
        let stats = code.single_query_stats();
        assert!(stats.holds, "single-query bound failed for {name}");
        if stats.covered_len == code.code_len() {
            // fully covered: the bound reads M(2*beta - N*r_avg) exactly
            let p = code.locality_profile();
            let m = rat_usize(code.msg_len());
            let nominal = m * (rat_int(2) * p.rate - rat_usize(code.n()) * p.average);
            assert!(rat_usize(stats.solo_total) >= nominal, "{name}");
        }
    }
    finish_line(
        "criterion 9 (single-query bound over the corpus)",
        started,
        Duration::from_secs(60),
    );
}

fn build_corpus() -> Vec<(String, IndexCode)> {
    use lodex::constructions::*;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0fe);
    let mut corpus: Vec<(String, IndexCode)> = Vec::new();
    let f2 = gf(2);
    let f3 = gf(3);
    for n in 3..=6usize {
        let g = SideInfoGraph::directed_cycle(n);
        corpus.push((format!("uncoded-{n}"), uncoded(&g, 2, &f2)));
        corpus.push((
            format!("cycle-vector-{n}"),
            cycle_vector_code(n, &f2).unwrap(),
        ));
        for pivot in 1..=n.min(3) {
            corpus.push((
                format!("cycle-scalar-{n}-{pivot}"),
                cycle_scalar_code(n, pivot, &f3).unwrap(),
            ));
        }
        for m in 1..=n {
            corpus.push((
                format!("cycle-m-{n}-{m}"),
                cycle_code_for_message_length(n, m, &f3).unwrap(),
            ));
        }
        let coloring = lodex::oracles::optimal_ab_coloring(&g.interference_graph()).unwrap();
        corpus.push((
            format!("frac-coloring-{n}"),
            fractional_coloring_code(&g, &coloring, &f2).unwrap(),
        ));
        if n <= 5 {
            let cover = t_subset_cover(&g, 2).unwrap();
            corpus.push((
                format!("ais-cover-{n}"),
                ais_cover_code(&g, &cover, n - 1, &f2, BUDGET).unwrap(),
            ));
            corpus.push((
                format!("cyclic-symmetry-{n}"),
                cyclic_symmetry_code(&g, n - 1, &f2, BUDGET).unwrap(),
            ));
        }
    }
    for _ in 0..6 {
        let n = rng.gen_range(3..=6usize);
        let g = random_graph(&mut rng, n, 1, 2);
        let (code, _) = minrank_nm1_code(&g, &f2).unwrap();
        corpus.push((format!("minrank-nm1-rand-{n}"), code));
        let out = partition_cover_code(&g, 2, &Providers::default(), &f2, BUDGET).unwrap();
        corpus.push((format!("partition-rand-{n}"), out.code));
    }
    // the separation scheme leaves some columns unqueried by design
    let g = SideInfoGraph::directed_cycle(4);
    let base = cycle_scalar_code(4, 4, &f2).unwrap();
    let h = hamming_parity_check(&f2, 3);
    corpus.push((
        "covering-separation-hamming".into(),
        covering_separation_code(&g, &base, &h, 1, BUDGET).unwrap(),
    ));
    let pi = [3usize, 1, 5, 2, 4];
    corpus.push((
        "feasible-localities".into(),
        feasible_locality_code(&pi, &[1, 1, 1, 2, 3], &f3)
            .unwrap()
            .code,
    ));
    corpus
}

/// AIS covers: the 3-cycle with t = 2 and scalar length 2 reaches
/// locality at most 4/3, and random covers respect (Q + (P-Q)l)/P.
#[test]
fn criterion_10_ais_cover_bounds() {
    let started = Instant::now();
    let f = gf(2);
    let g = SideInfoGraph::directed_cycle(3);
    let cover = t_subset_cover(&g, 2).unwrap();
    let code = ais_cover_code(&g, &cover, 2, &f, BUDGET).unwrap();
    let p = code.locality_profile();
    assert!(validate(&g, &code).unwrap().valid);
    assert_eq!(p.rate, rat_int(2));
    assert!(p.overall <= rat(4, 3));

    let mut rng = ChaCha8Rng::seed_from_u64(0xa15);
    let mut tested = 0;
    while tested < 10 {
        let n = rng.gen_range(3..=6usize);
        let extra = rng.gen_range(0..=2);
        let g = random_planted_cycle(&mut rng, n, 3.min(n), extra);
        if g.edge_count() > 12 {
            continue;
        }
        let t = if g.shortest_directed_cycle().is_none_or(|(l, _)| l > 2) {
            rng.gen_range(1..=2usize)
        } else {
            1
        };
        let Ok(cover) = t_subset_cover(&g, t) else {
            continue;
        };
        let Ok(mr) = minrank_bruteforce(&g, &f, BUDGET) else {
            continue;
        };
        let len = rng.gen_range(mr.minrank..=n);
        let code = ais_cover_code(&g, &cover, len, &f, BUDGET).unwrap();
        let p_count = cover.subsets.len();
        let q_count = cover.fold;
        let bound = rat_usize(q_count + (p_count - q_count) * len) / rat_usize(p_count);
        let p = code.locality_profile();
        assert!(
            p.overall <= bound,
            "cover locality bound violated on {}",
            g.to_json()
        );
        assert_eq!(p.rate, rat_usize(len));
        tested += 1;
    }
    finish_line(
        "criterion 10 (AIS cover locality bounds)",
        started,
        Duration::from_secs(30),
    );
}

/// The subset DP matches exhaustive enumeration over all partitions for
/// every locality cap in {1, 2, 3}.
#[test]
fn criterion_11_partition_dp_is_optimal() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd11);
    let providers = Providers::default();
    let f = gf(2);
    let mut tested = 0;
    while tested < 20 {
        let n = rng.gen_range(3..=8usize);
        let g = random_graph(&mut rng, n, 1, 3);
        if g.edge_count() > 14 {
            continue;
        }
        tested += 1;
        // shared cost table: best feasible length per subset and cap
        let full = (1usize << n) - 1;
        let mut cost = vec![[None::<usize>; 3]; full + 1];
        for mask in 1..=full {
            let subset: BTreeSet<usize> = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
            for (_, len, loc) in
                lodex::constructions::subset_options(&g, &subset, &providers, &f, BUDGET)
            {
                for (slot, cap) in (1..=3usize).enumerate() {
                    if loc <= cap && cost[mask][slot].is_none_or(|c| len < c) {
                        cost[mask][slot] = Some(len);
                    }
                }
            }
        }
        for (slot, cap) in (1..=3usize).enumerate() {
            let dp = partition_cover_code(&g, cap, &providers, &f, BUDGET).unwrap();
            let brute = min_over_partitions(n, &|mask| cost[mask][slot]);
            assert_eq!(
                Some(dp.total_len),
                brute,
                "DP result differs from exhaustive enumeration on {} (cap {cap})",
                g.to_json()
            );
            assert!(dp.code.locality_profile().overall <= rat_int(cap as i64));
        }
    }
    finish_line(
        "criterion 11 (partition DP optimality)",
        started,
        Duration::from_secs(300),
    );
}

/// Exhaustive minimum over all set partitions via restricted growth
/// strings; `None` when every partition has an infeasible part.
fn min_over_partitions(n: usize, cost: &dyn Fn(usize) -> Option<usize>) -> Option<usize> {
    fn rec(
        n: usize,
        v: usize,
        blocks: &mut Vec<usize>,
        cost: &dyn Fn(usize) -> Option<usize>,
        best: &mut Option<usize>,
    ) {
        if v > n {
            let mut total = 0usize;
            for &mask in blocks.iter() {
                match cost(mask) {
                    Some(c) => total += c,
                    None => return,
                }
            }
            if best.is_none_or(|b| total < b) {
                *best = Some(total);
            }
            return;
        }
        for i in 0..blocks.len() {
            blocks[i] |= 1 << (v - 1);
            rec(n, v + 1, blocks, cost, best);
            blocks[i] &= !(1 << (v - 1));
        }
        blocks.push(1 << (v - 1));
        rec(n, v + 1, blocks, cost, best);
        blocks.pop();
    }
    let mut best = None;
    rec(n, 1, &mut Vec::new(), cost, &mut best);
    best
}

/// Zero-pattern normalization preserves validity, dimensions and queries
/// while confining every singly-queried column to its receiver's demand
/// block.
#[test]
fn criterion_12_normalization_preserves_everything() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x2070);
    let mut done = 0;
    while done < 100 {
        let q: u64 = *[2, 3].get(rng.gen_range(0..2)).unwrap();
        let n = rng.gen_range(2..=4usize);
        let msg_len = rng.gen_range(1..=2usize);
        let g = random_graph(&mut rng, n, 2, 3);
        let mut code = random_valid_code(&mut rng, &g, q, msg_len);
        for _ in 0..rng.gen_range(1..=2) {
            code = append_random_solo_column(&mut rng, &g, &code);
        }
        if !validate(&g, &code).unwrap().valid {
            continue;
        }
        let stats = code.single_query_stats();
        if stats.solo_total == 0 {
            continue;
        }
        done += 1;
        let norm = normalize_zeroes(&g, &code).unwrap();
        assert!(validate(&g, &norm).unwrap().valid);
        assert_eq!(norm.code_len(), code.code_len());
        assert_eq!(norm.msg_len(), code.msg_len());
        assert_eq!(norm.all_queries(), code.all_queries());
        for i in 1..=n {
            let demand: BTreeSet<usize> = norm.demand_rows(i).collect();
            for &k in &stats.solo[i - 1] {
                let support: BTreeSet<usize> =
                    norm.encoder().column(k).support().into_iter().collect();
                assert!(
                    support.is_subset(&demand),
                    "solo column {k} of receiver {i} must live on its demand block"
                );
            }
        }
    }
    finish_line(
        "criterion 12 (zero-pattern normalization on 100 codes)",
        started,
        Duration::from_secs(60),
    );
}
