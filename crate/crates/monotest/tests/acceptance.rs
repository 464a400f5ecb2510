//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `-- --nocapture` to see them). Expected values
//! come from independent oracles: exact distances via `n - LNDS`, exact
//! probabilities via rational arithmetic cross-checked against full seed
//! enumeration, and Monte Carlo estimates with explicit confidence margins.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use rand::Rng;

use monotest::distance::{
    disjoint_violating_pairs_greedy, distance_to_monotone_line, distance_to_monotone_poset,
    violating_pairs,
};
use monotest::function::{LineFunction, PartialAssignment};
use monotest::instances::{grid_order, sample, DistributionId, MuParams, ScaledParams};
use monotest::probability::{agreement_probability, enumerate_distribution};
use monotest::stream::{derive_seed, stream};
use monotest::testers::{
    find_disjoint_violating_pairs, improved_iteration, improved_query_budget, test_improved, Eps,
    QueryOracle, TesterConfig, Verdict,
};
use monotest::value::RankValue;
use monotest::verify::{
    check_claim_good, check_cut_lemma, cut_indices_of_points, cut_tightness_points,
    estimate_bad_hit,
};

fn pass(criterion: u32, name: &str, detail: &str) {
    println!("criterion {criterion:>2} ({name}): PASS - {detail}");
}

fn line(k: u32, m: u64) -> ScaledParams {
    ScaledParams::line(MuParams::new(k, m).unwrap())
}

/// Wilson score interval lower bound at confidence z.
fn wilson_lower(successes: u64, trials: u64, z: f64) -> f64 {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let margin = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (center - margin) / denom
}

/// Criterion 1: 1-sided testers never reject a monotone input: 10^4 runs of
/// the log-scheme tester (and as many of the spot checker) split between
/// monotone-family draws (k=10, m in 5..=1000) and random sorted arrays.
/// Budget: under 10 seconds.
#[test]
fn c01_monotone_soundness() {
    use monotest::testers::test_ergun;
    let started = Instant::now();
    let eps = Eps::new(1, 2).unwrap();
    let ms = [5u64, 17, 129, 477, 1000];
    let mut runs = 0u64;
    for trial in 0..5_000u64 {
        let params = line(10, ms[(trial % ms.len() as u64) as usize]);
        let f = sample(DistributionId::Mu, &params, &mut stream(100, trial)).unwrap();
        assert!(f.is_monotone());
        let config = TesterConfig::new(eps, derive_seed(100, trial));
        let report = test_improved(QueryOracle::new(&f), &config).unwrap();
        assert_eq!(report.verdict, Verdict::Accept, "rejected a monotone draw at trial {trial}");
        let report = test_ergun(QueryOracle::new(&f), &config).unwrap();
        assert_eq!(report.verdict, Verdict::Accept, "spot checker rejected at trial {trial}");
        runs += 2;
    }
    let mut rng = stream(101, 0);
    for trial in 0..5_000u64 {
        let n = rng.random_range(4..2048u64);
        let mut values: Vec<u64> = (0..n).map(|_| rng.random_range(0..1_000_000)).collect();
        values.sort_unstable();
        let f = LineFunction::from_ints(&values);
        let config = TesterConfig::new(eps, derive_seed(101, trial));
        let report = test_improved(QueryOracle::new(&f), &config).unwrap();
        assert_eq!(report.verdict, Verdict::Accept, "rejected a sorted array at trial {trial}");
        let report = test_ergun(QueryOracle::new(&f), &config).unwrap();
        assert_eq!(report.verdict, Verdict::Accept, "spot checker rejected at trial {trial}");
        runs += 2;
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    pass(1, "monotone soundness", &format!("{runs} runs, 0 rejections, {elapsed:.2?}"));
}

/// Criterion 2: every flip-mixture draw is 1/2-far: exact distance
/// `n - LNDS >= 2^(k-1)` on 1000 draws across k in 4..=12. Budget: 5 s.
#[test]
fn c02_farness_of_flip_draws() {
    let started = Instant::now();
    let mut worst_margin = u64::MAX;
    for trial in 0..1_000u64 {
        let k = 4 + (trial % 9) as u32;
        let params = line(k, 5);
        let f = sample(DistributionId::Nu, &params, &mut stream(200, trial)).unwrap();
        let dist = distance_to_monotone_line(&f);
        let need = 1u64 << (k - 1);
        assert!(dist >= need, "trial {trial}: distance {dist} < {need} at k={k}");
        worst_margin = worst_margin.min(dist - need);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    pass(2, "farness of flip draws", &format!("1000 draws, min slack {worst_margin}, {elapsed:.2?}"));
}

/// Criterion 3: completeness at eps = 1/2 with c = 6: rejection rate over
/// 1000 flip-mixture draws is at least 2/3, with the 99% Wilson lower bound
/// clearing 0.66. Budget: 10 s.
#[test]
fn c03_tester_completeness() {
    let started = Instant::now();
    let params = line(10, 5);
    let eps = Eps::new(1, 2).unwrap();
    let trials = 1_000u64;
    let mut rejects = 0u64;
    for trial in 0..trials {
        let f = sample(DistributionId::Nu, &params, &mut stream(300, trial)).unwrap();
        let config = TesterConfig::new(eps, derive_seed(300, trial));
        let report = test_improved(QueryOracle::new(&f), &config).unwrap();
        if report.verdict == Verdict::Reject {
            rejects += 1;
        }
    }
    let rate = rejects as f64 / trials as f64;
    let lower = wilson_lower(rejects, trials, 2.576);
    assert!(rate >= 2.0 / 3.0, "rejection rate {rate}");
    assert!(lower >= 0.66, "99% CI lower bound {lower}");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    pass(3, "tester completeness", &format!("rate {rate:.3}, 99% lower bound {lower:.3}, {elapsed:.2?}"));
}

/// Criterion 4: the per-run query budget
/// `ceil(c/eps) * (1 + 2*(ceil(log2(eps n)) + 1))` holds on every single
/// run, for eps in {1/2, 1/8, 1/64} and n up to 2^20.
#[test]
fn c04_query_budget() {
    let mut rng = stream(400, 0);
    let mut runs = 0u64;
    for (num, den) in [(1u64, 2u64), (1, 8), (1, 64)] {
        let eps = Eps::new(num, den).unwrap();
        for n in [256u64, 4096, 1 << 20] {
            let budget = improved_query_budget(&eps, 6, n);
            for trial in 0..5u64 {
                let values: Vec<u64> = (0..n).map(|_| rng.random_range(0..1 << 30)).collect();
                let f = LineFunction::from_ints(&values);
                let config = TesterConfig::new(eps, derive_seed(400, trial));
                let report = test_improved(QueryOracle::new(&f), &config).unwrap();
                assert!(
                    report.queries <= budget,
                    "eps={eps} n={n}: {} > {budget}",
                    report.queries
                );
                runs += 1;
            }
        }
        // Block-scaled far draws at n = 2^14 exercise the reject path.
        let scaled = ScaledParams::new(16, MuParams::new(10, 5).unwrap()).unwrap();
        let n = scaled.domain_size();
        let budget = improved_query_budget(&eps, 6, n);
        for trial in 0..5u64 {
            let f = sample(DistributionId::NuTilde, &scaled, &mut stream(401, trial)).unwrap();
            let config = TesterConfig::new(eps, derive_seed(401, trial));
            let report = test_improved(QueryOracle::new(&f), &config).unwrap();
            assert!(report.queries <= budget);
            runs += 1;
        }
    }
    pass(4, "query budget", &format!("{runs} runs within the closed-form bound"));
}

/// Criterion 5: the digit rule and the split recursion are the same
/// distribution, seed by seed: exhaustive for k <= 3 at m = 5, and 10^4
/// random seeds for k up to 10.
#[test]
fn c05_definition_equivalence() {
    use monotest::instances::{mu_from_seed, mu_from_seed_recursive, DigitSeed};
    let mut exhaustive_cases = 0u64;
    for k in 1..=3u32 {
        let params = MuParams::new(k, 5).unwrap();
        let cells = params.seed_len() as u32;
        for code in 0..4u64.pow(cells) {
            let mut c = code;
            let seed = DigitSeed::from_fn(&params, |_, _| {
                let a = c % 4;
                c /= 4;
                a
            })
            .unwrap();
            assert_eq!(
                mu_from_seed(&params, &seed).unwrap(),
                mu_from_seed_recursive(&params, &seed).unwrap(),
                "k={k} code={code}"
            );
            exhaustive_cases += 1;
        }
    }
    let mut rng = stream(500, 0);
    for trial in 0..10_000u64 {
        let k = 1 + (trial % 10) as u32;
        let m = [5u64, 7, 11][(trial % 3) as usize];
        let params = MuParams::new(k, m).unwrap();
        let seed = DigitSeed::sample(&params, &mut rng);
        assert_eq!(
            mu_from_seed(&params, &seed).unwrap(),
            mu_from_seed_recursive(&params, &seed).unwrap(),
            "trial {trial}"
        );
    }
    pass(5, "definition equivalence", &format!("{exhaustive_cases} exhaustive seeds + 10000 random"));
}

/// All good assignments on a fixed point set (digits 1..=m-2 everywhere).
fn for_each_good_assignment(
    params: &MuParams,
    points: &[u64],
    mut run: impl FnMut(&PartialAssignment),
) {
    let span = params.m() - 2;
    let cells = points.len() as u32 * params.k();
    for code in 0..(span as u128).pow(cells) {
        let mut c = code;
        let entries: Vec<(u64, RankValue)> = points
            .iter()
            .map(|&p| {
                let digits: Vec<u64> = (0..params.k())
                    .map(|_| {
                        let d = 1 + (c % span as u128) as u64;
                        c /= span as u128;
                        d
                    })
                    .collect();
                (p, RankValue::from_digits(params.m(), digits).unwrap())
            })
            .collect();
        run(&PartialAssignment::new(entries).unwrap());
    }
}

/// Criterion 6: exact agreement equality. For k in {2, 3} at m = 5, over 200
/// random point sets with an uncut index j: every good assignment has
/// analytically equal agreement probabilities under the base family and its
/// level-j flip, and both match full seed enumeration. Zero tolerance.
#[test]
fn c06_agreement_equality_exact() {
    let mut cases = 0u64;
    for k in [2u32, 3] {
        let scaled = line(k, 5);
        let params = *scaled.mu();
        let mu_support = enumerate_distribution(DistributionId::Mu, &scaled).unwrap();
        let nu_supports: Vec<_> = (0..k)
            .map(|j| enumerate_distribution(DistributionId::NuJ(j), &scaled).unwrap())
            .collect();
        let mut rng = stream(600 + k as u64, 0);
        let mut sets = 0;
        while sets < 100 {
            let weight = rng.random_range(1..=3u64.min(params.domain_size()));
            let points = monotest::verify::sample_distinct_points(
                params.domain_size(),
                weight,
                &mut rng,
            );
            let cut = cut_indices_of_points(&points, k).cut;
            let uncut: Vec<u32> = (0..k).filter(|j| !cut.contains(j)).collect();
            if uncut.is_empty() {
                continue;
            }
            let j = uncut[rng.random_range(0..uncut.len())];

            // Weight of each value tuple over the point set, per distribution.
            let restrict = |support: &[(LineFunction, BigRational)]| {
                let mut map: BTreeMap<Vec<RankValue>, BigRational> = BTreeMap::new();
                for (f, w) in support {
                    let key: Vec<RankValue> = points.iter().map(|&p| f.value(p).clone()).collect();
                    *map.entry(key).or_insert_with(|| BigRational::from_integer(0.into())) += w;
                }
                map
            };
            let mu_map = restrict(&mu_support);
            let nu_map = restrict(&nu_supports[j as usize]);
            let zero = BigRational::from_integer(0.into());

            for_each_good_assignment(&params, &points, |alpha| {
                let p_mu = agreement_probability(alpha, DistributionId::Mu, &scaled).unwrap();
                let p_nu_j =
                    agreement_probability(alpha, DistributionId::NuJ(j), &scaled).unwrap();
                assert_eq!(p_mu, p_nu_j, "analytic mismatch: {alpha:?} j={j}");
                let key: Vec<RankValue> =
                    points.iter().map(|&p| alpha.get(p).unwrap().clone()).collect();
                assert_eq!(mu_map.get(&key).unwrap_or(&zero), &p_mu, "enumeration (mu)");
                assert_eq!(nu_map.get(&key).unwrap_or(&zero), &p_nu_j, "enumeration (flip)");
                cases += 1;
            });
            sets += 1;
        }
    }
    pass(6, "agreement equality", &format!("{cases} exact equalities, zero tolerance"));
}

/// Criterion 7: exact mixture inequality. Same regime: every good
/// assignment of weight at most k/2 satisfies `P_mu <= 2 * P_nu` exactly.
#[test]
fn c07_mixture_inequality_exact() {
    let mut cases = 0u64;
    for k in [2u32, 3] {
        let params = MuParams::new(k, 5).unwrap();
        // floor(k/2) = 1 in this regime: the empty assignment plus every
        // good singleton.
        let empty = check_claim_good(&params, &PartialAssignment::empty()).unwrap();
        assert!(empty.is_verified(), "{empty:?}");
        cases += 1;
        for x in 0..params.domain_size() {
            for_each_good_assignment(&params, &[x], |alpha| {
                let res = check_claim_good(&params, alpha).unwrap();
                assert!(res.is_verified(), "{res:?}");
                cases += 1;
            });
        }
    }
    pass(7, "mixture inequality", &format!("{cases} exact inequalities"));
}

/// Criterion 8: cut counting. Exhaustive for k = 4 over all point sets of
/// size <= 5 plus 10^4 random size-8 sets at k = 16: cut count <= weight - 1
/// and the witness graph is acyclic; and the bound is tight at every
/// (k, t <= k) via the nested-chain construction.
#[test]
fn c08_cut_lemma() {
    let mut exhaustive_cases = 0u64;
    for weight in 1..=5u64 {
        let res = check_cut_lemma(4, weight, 0, 800);
        match res.outcome {
            monotest::verify::Outcome::Verified { cases } => exhaustive_cases += cases,
            ref other => panic!("weight {weight}: {other:?}"),
        }
    }
    let res = check_cut_lemma(16, 8, 10_000, 801);
    assert!(res.is_verified(), "{res:?}");

    let mut witnesses = 0u64;
    for k in [4u32, 8, 16] {
        for t in 1..=k as u64 {
            let points = cut_tightness_points(k, t).unwrap();
            let report = cut_indices_of_points(&points, k);
            assert_eq!(report.cut.len() as u64, t - 1, "tightness at k={k} t={t}");
            witnesses += 1;
        }
    }
    pass(
        8,
        "cut lemma",
        &format!("{exhaustive_cases} exhaustive sets, 10000 random sets, {witnesses} tight witnesses"),
    );
}

/// Criterion 9: bad-value search bound. Monte Carlo probability that
/// q = k/2 random probes see a bad value stays within
/// `q * k * 2/(m-1) + 3 sigma` for (k, m) in {(6, 64), (8, 512)}.
#[test]
fn c09_bad_hit_bound() {
    let mut details = Vec::new();
    for (k, m) in [(6u32, 64u64), (8, 512)] {
        let params = MuParams::new(k, m).unwrap();
        let est = estimate_bad_hit(&params, k as u64 / 2, 20_000, 900 + k as u64).unwrap();
        assert!(est.informative, "bound {} is vacuous", est.bound);
        assert!(est.within_bound, "(k={k}, m={m}): {est:?}");
        details.push(format!("(k={k},m={m}): {:.4} <= {:.4}", est.estimate, est.bound));
    }
    pass(9, "bad-hit bound", &details.join("; "));
}

/// Criterion 10: the scaled construction. 500 scaled flip draws with
/// ell <= 8 and k <= 8 have exact distance >= eps*n = 2^(k-1); scaled
/// monotone draws have distance 0.
#[test]
fn c10_scaled_construction() {
    let mut rng = stream(1000, 0);
    for trial in 0..500u64 {
        let ell = 1 + rng.random_range(0..8u64);
        let k = 2 + (trial % 7) as u32;
        let scaled = ScaledParams::new(ell, MuParams::new(k, 5).unwrap()).unwrap();
        let f = sample(DistributionId::NuTilde, &scaled, &mut stream(1001, trial)).unwrap();
        let dist = distance_to_monotone_line(&f);
        assert!(
            dist >= scaled.eps_n(),
            "trial {trial} (ell={ell}, k={k}): {dist} < {}",
            scaled.eps_n()
        );
    }
    for trial in 0..200u64 {
        let ell = 1 + rng.random_range(0..8u64);
        let k = 2 + (trial % 7) as u32;
        let scaled = ScaledParams::new(ell, MuParams::new(k, 5).unwrap()).unwrap();
        let f = sample(DistributionId::MuTilde, &scaled, &mut stream(1002, trial)).unwrap();
        assert_eq!(distance_to_monotone_line(&f), 0, "trial {trial}");
        assert!(f.is_monotone());
    }
    pass(10, "scaled construction", "500 far draws >= eps*n, 200 monotone draws at distance 0");
}

/// Criterion 11: greedy certificate. On 500 inputs whose farness is
/// oracle-verified, the neighbor-removal procedure yields floor(eps*n/2)
/// disjoint violating pairs with gap <= eps*n, and a single simulated
/// tester iteration rejects at one endpoint of every pair.
#[test]
fn c11_greedy_certificate() {
    let mut rng = stream(1100, 0);
    let mut checked = 0u64;
    let mut pairs_total = 0u64;
    while checked < 500 {
        // Alternate random functions (exact eps from the oracle) and
        // flip-family draws (eps = 1/2 certified by the oracle).
        let (f, eps) = if checked.is_multiple_of(2) {
            let n = rng.random_range(4..257u64);
            let values: Vec<u64> = (0..n).map(|_| rng.random_range(0..64)).collect();
            let f = LineFunction::from_ints(&values);
            let dist = distance_to_monotone_line(&f);
            if dist == 0 {
                continue;
            }
            let eps = Eps::new(dist, n).unwrap();
            (f, eps)
        } else {
            let k = 4 + (checked % 5) as u32;
            let params = line(k, 5);
            let f = sample(DistributionId::Nu, &params, &mut stream(1101, checked)).unwrap();
            let eps = Eps::new(1, 2).unwrap();
            assert!(distance_to_monotone_line(&f) >= eps.ceil_eps_n(f.n()));
            (f, eps)
        };
        let n = f.n();
        let pairs = find_disjoint_violating_pairs(&f, &eps).unwrap();
        assert_eq!(pairs.len() as u64, eps.floor_half_eps_n(n));
        let levels = eps.ceil_log2_eps_n(n);
        let mut used = std::collections::HashSet::new();
        for pair in &pairs {
            assert!(pair.is_violation_on_line(&f));
            assert!(eps.gap_within_eps_n(pair.y - pair.x, n));
            assert!(used.insert(pair.x) && used.insert(pair.y), "pairs overlap");
            let detected = [pair.x, pair.y].iter().any(|&z| {
                let mut oracle = QueryOracle::new(&f);
                improved_iteration(&mut oracle, levels, z).unwrap().is_some()
            });
            assert!(detected, "no endpoint of {pair:?} rejects in one iteration");
        }
        pairs_total += pairs.len() as u64;
        checked += 1;
    }
    pass(11, "greedy certificate", &format!("500 far inputs, {pairs_total} pairs all detected"));
}

/// Criterion 12: hypergrid embedding. Regrouped scaled monotone draws have
/// zero violating pairs; regrouped scaled flip draws keep at least
/// floor(eps*n)/2 disjoint violating pairs; and for d*b <= 12 the exact
/// poset distance still clears eps*n.
#[test]
fn c12_hypergrid_embedding() {
    // (ell = 2^a blocks, k) with a + k = d * b.
    let cases = [(2u64, 4u32, 2u32, 3u32), (2, 6, 2, 4), (4, 8, 3, 4)];
    let mut monotone_checked = 0u64;
    let mut far_checked = 0u64;
    for (case, &(a, k, d, b)) in cases.iter().enumerate() {
        assert_eq!(a + k as u64, (d * b) as u64);
        let scaled = ScaledParams::new(1 << a, MuParams::new(k, 5).unwrap()).unwrap();
        let order = grid_order(d, b).unwrap();
        let n = scaled.domain_size();
        assert_eq!(order.ground_size().unwrap(), n);
        let eps_n = scaled.eps_n();
        let draws = if d * b > 8 { 3 } else { 15 };
        for trial in 0..draws {
            let seed_base = 1200 + case as u64 * 100;
            let f =
                sample(DistributionId::MuTilde, &scaled, &mut stream(seed_base, trial)).unwrap();
            assert!(violating_pairs(&f, &order).unwrap().is_empty(), "monotone draw violated");
            monotone_checked += 1;

            let g = sample(DistributionId::NuTilde, &scaled, &mut stream(seed_base + 1, trial))
                .unwrap();
            let disjoint = disjoint_violating_pairs_greedy(&g, &order).unwrap();
            assert!(
                disjoint.len() as u64 >= eps_n / 2,
                "only {} disjoint pairs on the grid, need {}",
                disjoint.len(),
                eps_n / 2
            );
            let exact = distance_to_monotone_poset(&g, &order).unwrap();
            assert!(exact >= eps_n, "poset distance {exact} < {eps_n}");
            far_checked += 1;
        }
    }
    pass(
        12,
        "hypergrid embedding",
        &format!("{monotone_checked} monotone draws clean, {far_checked} far draws certified"),
    );
}
