//! Machine checkers for the structural facts the hard instances rest on.
//!
//! Each check returns a [`LemmaCheckResult`]: verified over so-many cases, a
//! deterministic counterexample payload, or not-applicable when the fact's
//! preconditions do not hold for the supplied inputs. Exact statements are
//! checked with exact rational arithmetic; statistical ones report estimates
//! with explicit error bars.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::distance::distance_to_monotone_line;
use crate::error::{Error, Result};
use crate::function::PartialAssignment;
use crate::instances::{sample, DigitSeed, DistributionId, MuParams, ScaledParams};
use crate::probability::{agreement_probability, enumerate_distribution, ENUMERATION_CAP};
use crate::stream::{derive_seed, stream};
use crate::testers::{QueryOracle, TesterReport, Verdict};
use crate::value::RankValue;

/// Good values avoid the boundary digits 0 and `m-1` in their `k`-digit
/// base-`m` expansion (leading zeros included, so short values are bad).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueClass {
    Good,
    Bad,
}

pub fn classify_value(v: &RankValue, k: u32, m: u64) -> Result<ValueClass> {
    let digits = v.to_digits(k, m)?;
    let good = digits.iter().all(|&d| d >= 1 && d + 1 < m);
    Ok(if good { ValueClass::Good } else { ValueClass::Bad })
}

/// One chosen witness pair per cut index.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CutEdge {
    pub index: u32,
    pub x: u64,
    pub y: u64,
}

/// The indices cut by a point set: `j` is cut when two points share their
/// first `j` bits and differ at bit `j` (bit 0 is the most significant of
/// `k`). `edges` picks one witness pair per cut index; the graph they form
/// is acyclic, which is what bounds the cut count by `weight - 1`.
#[derive(Debug, Clone, Serialize)]
pub struct CutReport {
    pub weight: u64,
    pub cut: BTreeSet<u32>,
    pub edges: Vec<CutEdge>,
    pub acyclic: bool,
}

/// Cut analysis of a raw point set (an assignment's values are irrelevant
/// to cutting).
pub fn cut_indices_of_points(points: &[u64], k: u32) -> CutReport {
    let mut sorted: Vec<u64> = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut cut = BTreeSet::new();
    let mut edges: Vec<CutEdge> = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        for &y in &sorted[i + 1..] {
            let diff = x ^ y;
            debug_assert!(diff != 0);
            let high = 63 - diff.leading_zeros();
            if high >= k {
                continue;
            }
            let index = k - 1 - high;
            if cut.insert(index) {
                edges.push(CutEdge { index, x, y });
            }
        }
    }
    let acyclic = witness_graph_acyclic(&sorted, &edges);
    CutReport { weight: sorted.len() as u64, cut, edges, acyclic }
}

pub fn cut_indices(alpha: &PartialAssignment, k: u32) -> CutReport {
    let points: Vec<u64> = alpha.points().collect();
    cut_indices_of_points(&points, k)
}

fn witness_graph_acyclic(vertices: &[u64], edges: &[CutEdge]) -> bool {
    let index_of = |v: u64| vertices.binary_search(&v).expect("edge endpoint in vertex set");
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for e in edges {
        let (a, b) = (find(&mut parent, index_of(e.x)), find(&mut parent, index_of(e.y)));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// A weight-`t` point set that cuts exactly `t - 1` indices: the nested
/// chain `p_i = 2^(k-1) + ... + 2^(k-i)`, whose pairs split exactly at
/// indices `0..t-2`.
pub fn cut_tightness_points(k: u32, t: u64) -> Result<Vec<u64>> {
    if t < 1 || t > k as u64 {
        return Err(Error::invalid(format!("tightness chain needs 1 <= t <= k, got t={t}, k={k}")));
    }
    Ok((0..t)
        .map(|i| {
            let mut p = 0u64;
            for u in 0..i {
                p |= 1 << (k as u64 - 1 - u);
            }
            p
        })
        .collect())
}

/// Identifier of a checked fact, in command-line spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaId {
    /// Weight-`t` point sets cut at most `t - 1` indices.
    Cut,
    /// Good assignments that do not cut `j` agree equally under the base
    /// family and its level-`j` flip.
    Goodalpha,
    /// Good assignments of weight at most `k/2` satisfy `P_mu <= 2 * P_nu`.
    ClaimGood,
    /// Few random queries rarely see a bad value.
    ClaimBad,
    /// Every flipped draw is far from monotone.
    Nonmonotone,
}

impl std::fmt::Display for LemmaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LemmaId::Cut => "cut",
            LemmaId::Goodalpha => "goodalpha",
            LemmaId::ClaimGood => "claim-good",
            LemmaId::ClaimBad => "claim-bad",
            LemmaId::Nonmonotone => "nonmonotone",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cut" => Ok(LemmaId::Cut),
            "goodalpha" => Ok(LemmaId::Goodalpha),
            "claim-good" => Ok(LemmaId::ClaimGood),
            "claim-bad" => Ok(LemmaId::ClaimBad),
            "nonmonotone" => Ok(LemmaId::Nonmonotone),
            _ => Err(Error::invalid(format!("unknown lemma {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Verified { cases: u64 },
    Counterexample { detail: Value },
    /// The fact's preconditions do not hold for these inputs, so the check
    /// does not apply (distinct from both verified and counterexample).
    NotApplicable { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheckResult {
    pub lemma: LemmaId,
    pub params: Value,
    pub outcome: Outcome,
}

impl LemmaCheckResult {
    pub fn is_counterexample(&self) -> bool {
        matches!(self.outcome, Outcome::Counterexample { .. })
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.outcome, Outcome::Verified { .. })
    }
}

fn alpha_json(alpha: &PartialAssignment) -> Value {
    Value::Array(
        alpha
            .iter()
            .map(|(p, v)| json!({ "point": p, "value": v.to_string() }))
            .collect(),
    )
}

/// Check the cut bound `|J| <= weight - 1` and witness-graph acyclicity over
/// point sets of the given weight: exhaustively when `2^k <= 16`, otherwise
/// over `trials` random sets.
pub fn check_cut_lemma(k: u32, weight: u64, trials: u64, base_seed: u64) -> LemmaCheckResult {
    let n = 1u64 << k;
    let params = json!({ "k": k, "weight": weight, "trials": trials, "seed": base_seed });
    if weight > n {
        return LemmaCheckResult {
            lemma: LemmaId::Cut,
            params,
            outcome: Outcome::NotApplicable {
                reason: format!("weight {weight} exceeds the domain size {n}"),
            },
        };
    }

    let mut cases = 0u64;
    let mut failure: Option<Value> = None;
    let mut run = |points: &[u64]| -> bool {
        let report = cut_indices_of_points(points, k);
        cases += 1;
        let bound_ok = report.weight == 0 || (report.cut.len() as u64) < report.weight;
        if bound_ok && report.acyclic {
            true
        } else {
            failure = Some(json!({
                "points": points,
                "cut": report.cut,
                "acyclic": report.acyclic,
            }));
            false
        }
    };

    if n <= 16 {
        let mut points = Vec::with_capacity(weight as usize);
        exhaustive_subsets(n, weight as usize, 0, &mut points, &mut run);
    } else {
        let mut rng = stream(base_seed, 0);
        for _ in 0..trials {
            let points = sample_distinct_points(n, weight, &mut rng);
            if !run(&points) {
                break;
            }
        }
    }

    LemmaCheckResult {
        lemma: LemmaId::Cut,
        params,
        outcome: match failure {
            Some(detail) => Outcome::Counterexample { detail },
            None => Outcome::Verified { cases },
        },
    }
}

fn exhaustive_subsets(
    n: u64,
    size: usize,
    from: u64,
    acc: &mut Vec<u64>,
    run: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    if acc.len() == size {
        return run(acc);
    }
    for p in from..n {
        if n - p < (size - acc.len()) as u64 {
            break;
        }
        acc.push(p);
        let keep_going = exhaustive_subsets(n, size, p + 1, acc, run);
        acc.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// `count` distinct uniform points of `[n]`, sorted.
pub fn sample_distinct_points<R: Rng + ?Sized>(n: u64, count: u64, rng: &mut R) -> Vec<u64> {
    assert!(count <= n);
    let mut points = BTreeSet::new();
    while (points.len() as u64) < count {
        points.insert(rng.random_range(0..n));
    }
    points.into_iter().collect()
}

fn is_good_assignment(params: &MuParams, alpha: &PartialAssignment) -> Result<bool> {
    for (_, v) in alpha.iter() {
        if classify_value(v, params.k(), params.m())? == ValueClass::Bad {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check the exact agreement equality `P_mu(alpha) = P_nu_j(alpha)` for a
/// good assignment that does not cut `j`. Both sides come from the analytic
/// formula and, when the seed space fits under the enumeration cap, from
/// full support enumeration as well.
pub fn check_goodalpha(
    params: &MuParams,
    alpha: &PartialAssignment,
    j: u32,
) -> Result<LemmaCheckResult> {
    if j >= params.k() {
        return Err(Error::invalid(format!("j={j} out of range for k={}", params.k())));
    }
    let meta = json!({
        "k": params.k(), "m": params.m(), "j": j, "alpha": alpha_json(alpha),
    });
    if !is_good_assignment(params, alpha)? {
        return Ok(LemmaCheckResult {
            lemma: LemmaId::Goodalpha,
            params: meta,
            outcome: Outcome::NotApplicable { reason: "assignment has a bad value".into() },
        });
    }
    if cut_indices(alpha, params.k()).cut.contains(&j) {
        return Ok(LemmaCheckResult {
            lemma: LemmaId::Goodalpha,
            params: meta,
            outcome: Outcome::NotApplicable { reason: format!("assignment cuts index {j}") },
        });
    }

    let scaled = ScaledParams::line(*params);
    let p_mu = agreement_probability(alpha, DistributionId::Mu, &scaled)?;
    let p_nu_j = agreement_probability(alpha, DistributionId::NuJ(j), &scaled)?;
    let mut checks = vec![("analytic equality", p_mu == p_nu_j)];

    let enumerable = ((params.m() - 1) as u128)
        .checked_pow(params.seed_len() as u32)
        .is_some_and(|s| s <= ENUMERATION_CAP);
    let mut enumerated: Option<(BigRational, BigRational)> = None;
    if enumerable {
        let e_mu = weight_of_agreeing(DistributionId::Mu, &scaled, alpha)?;
        let e_nu_j = weight_of_agreeing(DistributionId::NuJ(j), &scaled, alpha)?;
        checks.push(("enumeration matches the mu side", e_mu == p_mu));
        checks.push(("enumeration matches the flipped side", e_nu_j == p_nu_j));
        enumerated = Some((e_mu, e_nu_j));
    }

    let outcome = if checks.iter().all(|(_, ok)| *ok) {
        Outcome::Verified { cases: 1 }
    } else {
        Outcome::Counterexample {
            detail: json!({
                "p_mu": p_mu.to_string(),
                "p_nu_j": p_nu_j.to_string(),
                "enumerated": enumerated.map(|(a, b)| vec![a.to_string(), b.to_string()]),
                "failed": checks.iter().filter(|(_, ok)| !ok).map(|(w, _)| *w).collect::<Vec<_>>(),
            }),
        }
    };
    Ok(LemmaCheckResult { lemma: LemmaId::Goodalpha, params: meta, outcome })
}

fn weight_of_agreeing(
    id: DistributionId,
    scaled: &ScaledParams,
    alpha: &PartialAssignment,
) -> Result<BigRational> {
    let support = enumerate_distribution(id, scaled)?;
    let mut total = BigRational::from_integer(0.into());
    for (f, w) in &support {
        if crate::function::agrees(f, alpha)? {
            total += w;
        }
    }
    Ok(total)
}

/// Check the exact mixture inequality `P_mu(alpha) <= 2 * P_nu(alpha)` for a
/// good assignment of weight at most `k/2`, via the counting facts behind
/// it: at least half the indices are uncut, every uncut level contributes a
/// term equal to `P_mu`, and the mixture average therefore dominates
/// `P_mu / 2`.
pub fn check_claim_good(params: &MuParams, alpha: &PartialAssignment) -> Result<LemmaCheckResult> {
    let k = params.k();
    let meta = json!({
        "k": k, "m": params.m(), "weight": alpha.weight(), "alpha": alpha_json(alpha),
    });
    if !is_good_assignment(params, alpha)? {
        return Ok(LemmaCheckResult {
            lemma: LemmaId::ClaimGood,
            params: meta,
            outcome: Outcome::NotApplicable { reason: "assignment has a bad value".into() },
        });
    }
    if 2 * alpha.weight() > k as u64 {
        return Ok(LemmaCheckResult {
            lemma: LemmaId::ClaimGood,
            params: meta,
            outcome: Outcome::NotApplicable {
                reason: format!("weight {} exceeds k/2 with k = {k}", alpha.weight()),
            },
        });
    }

    let scaled = ScaledParams::line(*params);
    let p_mu = agreement_probability(alpha, DistributionId::Mu, &scaled)?;
    let p_nu = agreement_probability(alpha, DistributionId::Nu, &scaled)?;
    let two = BigRational::from_integer(2.into());

    let cut = cut_indices(alpha, k).cut;
    let uncut: Vec<u32> = (0..k).filter(|j| !cut.contains(j)).collect();
    let mut failures: Vec<String> = Vec::new();
    if 2 * uncut.len() < k as usize {
        failures.push(format!("only {} of {k} indices are uncut", uncut.len()));
    }
    for &j in &uncut {
        let p_j = agreement_probability(alpha, DistributionId::NuJ(j), &scaled)?;
        if p_j != p_mu {
            failures.push(format!("uncut level {j} disagrees with the mu side"));
        }
    }
    if p_mu > &two * &p_nu {
        failures.push("P_mu exceeds 2 * P_nu".into());
    }

    let outcome = if failures.is_empty() {
        Outcome::Verified { cases: 1 }
    } else {
        Outcome::Counterexample {
            detail: json!({
                "p_mu": p_mu.to_string(),
                "p_nu": p_nu.to_string(),
                "failures": failures,
            }),
        }
    };
    Ok(LemmaCheckResult { lemma: LemmaId::ClaimGood, params: meta, outcome })
}

/// A uniformly random good assignment: distinct points, digits uniform in
/// `[1, m-2]`.
pub fn random_good_assignment<R: Rng + ?Sized>(
    params: &MuParams,
    weight: u64,
    rng: &mut R,
) -> Result<PartialAssignment> {
    if params.m() < 3 {
        return Err(Error::invalid("good values need m >= 3"));
    }
    let points = sample_distinct_points(params.domain_size(), weight, rng);
    let entries: Result<Vec<_>> = points
        .into_iter()
        .map(|p| {
            let digits: Vec<u64> =
                (0..params.k()).map(|_| rng.random_range(1..=params.m() - 2)).collect();
            Ok((p, RankValue::from_digits(params.m(), digits)?))
        })
        .collect();
    PartialAssignment::new(entries?)
}

/// Monte Carlo estimate of the probability that `queries` uniformly random
/// distinct probes of a monotone-family draw see any bad value.
#[derive(Debug, Clone, Serialize)]
pub struct BadHitEstimate {
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub std_error: f64,
    /// The search bound `queries * k * 2 / (m - 1)`.
    pub bound: f64,
    /// False when the bound is at least 1, making the check vacuous.
    pub informative: bool,
    /// `estimate <= bound + 3 * std_error`.
    pub within_bound: bool,
}

pub fn estimate_bad_hit(
    params: &MuParams,
    queries: u64,
    trials: u64,
    base_seed: u64,
) -> Result<BadHitEstimate> {
    let n = params.domain_size();
    if queries > n {
        return Err(Error::invalid(format!("cannot probe {queries} distinct points of {n}")));
    }
    let mut rng = stream(base_seed, 0);
    let mut hits = 0u64;
    for _ in 0..trials {
        let seed = DigitSeed::sample(params, &mut rng);
        let points = sample_distinct_points(n, queries, &mut rng);
        let hit = points.iter().any(|&x| {
            let v = crate::instances::mu_value_at(params, &seed, x);
            matches!(classify_value(&v, params.k(), params.m()), Ok(ValueClass::Bad))
        });
        if hit {
            hits += 1;
        }
    }
    let estimate = hits as f64 / trials as f64;
    let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    let bound = queries as f64 * params.k() as f64 * 2.0 / (params.m() - 1) as f64;
    Ok(BadHitEstimate {
        trials,
        hits,
        estimate,
        std_error,
        bound,
        informative: bound < 1.0,
        within_bound: estimate <= bound + 3.0 * std_error,
    })
}

/// Wrap [`estimate_bad_hit`] as a lemma check.
pub fn check_claim_bad(
    params: &MuParams,
    queries: u64,
    trials: u64,
    base_seed: u64,
) -> Result<LemmaCheckResult> {
    let est = estimate_bad_hit(params, queries, trials, base_seed)?;
    let meta = json!({
        "k": params.k(), "m": params.m(), "queries": queries,
        "trials": trials, "seed": base_seed, "estimate": est,
    });
    let outcome = if est.within_bound {
        Outcome::Verified { cases: trials }
    } else {
        Outcome::Counterexample { detail: serde_json::to_value(&est).expect("serializable") }
    };
    Ok(LemmaCheckResult { lemma: LemmaId::ClaimBad, params: meta, outcome })
}

/// Check that flipped draws are far from monotone: `trials` draws from the
/// scaled flip mixture must each have exact distance at least `eps * n`,
/// which is `2^(k-1)` for every block count.
pub fn check_nonmonotone(
    scaled: &ScaledParams,
    trials: u64,
    base_seed: u64,
) -> Result<LemmaCheckResult> {
    let meta = json!({
        "k": scaled.mu().k(), "m": scaled.mu().m(), "ell": scaled.ell(),
        "trials": trials, "seed": base_seed,
    });
    let need = scaled.eps_n();
    for trial in 0..trials {
        let f = sample(DistributionId::NuTilde, scaled, &mut stream(base_seed, trial))?;
        let dist = distance_to_monotone_line(&f);
        if dist < need {
            return Ok(LemmaCheckResult {
                lemma: LemmaId::Nonmonotone,
                params: meta,
                outcome: Outcome::Counterexample {
                    detail: json!({ "trial": trial, "distance": dist, "required": need }),
                },
            });
        }
    }
    Ok(LemmaCheckResult {
        lemma: LemmaId::Nonmonotone,
        params: meta,
        outcome: Outcome::Verified { cases: trials },
    })
}

/// Acceptance statistics of a tester on one distribution.
#[derive(Debug, Clone, Serialize)]
pub struct SideStats {
    pub accepts: u64,
    pub acceptance_rate: f64,
    pub mean_queries: f64,
    pub max_queries: u64,
}

/// Result of running one tester against a distribution pair.
#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub trials: u64,
    pub side_a: SideStats,
    pub side_b: SideStats,
    /// `acceptance(a) - acceptance(b)`.
    pub gap: f64,
}

/// Configuration for [`distinguishing_experiment`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapConfig {
    pub trials: u64,
    pub base_seed: u64,
    /// Hard query cap per run; an exhausted oracle makes the tester accept.
    pub budget: Option<u64>,
}

/// Run a black-box tester on fresh draws from two distributions and report
/// the acceptance gap. Per trial `t`, the side-a draw uses stream `4t` and
/// tester seed `derive_seed(base, 4t+1)`; side b uses `4t+2` and `4t+3`.
pub fn distinguishing_experiment<F>(
    tester: F,
    dist_a: DistributionId,
    dist_b: DistributionId,
    scaled: &ScaledParams,
    config: &GapConfig,
) -> Result<GapReport>
where
    F: Fn(QueryOracle<'_>, u64) -> Result<TesterReport>,
{
    let mut accepts = [0u64; 2];
    let mut query_sum = [0u64; 2];
    let mut query_max = [0u64; 2];
    for trial in 0..config.trials {
        for (side, id) in [dist_a, dist_b].into_iter().enumerate() {
            let sample_stream = 4 * trial + 2 * side as u64;
            let f = sample(id, scaled, &mut stream(config.base_seed, sample_stream))?;
            let mut oracle = QueryOracle::new(&f);
            if let Some(budget) = config.budget {
                oracle = oracle.with_budget(budget);
            }
            let report = tester(oracle, derive_seed(config.base_seed, sample_stream + 1))?;
            if report.verdict == Verdict::Accept {
                accepts[side] += 1;
            }
            query_sum[side] += report.queries;
            query_max[side] = query_max[side].max(report.queries);
        }
    }
    let stats = |side: usize| SideStats {
        accepts: accepts[side],
        acceptance_rate: accepts[side] as f64 / config.trials as f64,
        mean_queries: query_sum[side] as f64 / config.trials as f64,
        max_queries: query_max[side],
    };
    let (side_a, side_b) = (stats(0), stats(1));
    let gap = side_a.acceptance_rate - side_b.acceptance_rate;
    Ok(GapReport { trials: config.trials, side_a, side_b, gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testers::{test_exhaustive, test_improved, Eps, TesterConfig};

    fn params(k: u32, m: u64) -> MuParams {
        MuParams::new(k, m).unwrap()
    }

    fn dv(m: u64, digits: &[u64]) -> RankValue {
        RankValue::from_digits(m, digits.to_vec()).unwrap()
    }

    #[test]
    fn classify_worked_examples() {
        assert_eq!(classify_value(&RankValue::Int(0), 3, 4).unwrap(), ValueClass::Bad);
        // 21 = (1,1,1) in base 4.
        assert_eq!(classify_value(&RankValue::Int(21), 3, 4).unwrap(), ValueClass::Good);
        // 7 = (1,3) in base 4: contains digit m-1.
        assert_eq!(classify_value(&RankValue::Int(7), 2, 4).unwrap(), ValueClass::Bad);
    }

    #[test]
    fn good_value_count_follows_product_rule() {
        for (k, m) in [(2u32, 4u64), (3, 4), (2, 6), (4, 3)] {
            let total = m.pow(k);
            let good = (0..total)
                .filter(|&v| classify_value(&RankValue::Int(v), k, m).unwrap() == ValueClass::Good)
                .count() as u64;
            assert_eq!(good, (m - 2).pow(k), "k={k} m={m}");
        }
    }

    #[test]
    fn cut_worked_examples() {
        let singleton = cut_indices_of_points(&[5], 3);
        assert!(singleton.cut.is_empty());
        assert!(singleton.acyclic);

        let pair = cut_indices_of_points(&[0b001, 0b011], 3);
        assert_eq!(pair.cut.iter().copied().collect::<Vec<_>>(), vec![1]);

        let triple = cut_indices_of_points(&[0b000, 0b011, 0b100], 3);
        assert_eq!(triple.cut.iter().copied().collect::<Vec<_>>(), vec![0, 1]);
        assert!(triple.acyclic);
        assert!((triple.cut.len() as u64) < triple.weight);
    }

    #[test]
    fn cut_is_monotone_under_restriction() {
        let mut rng = stream(21, 0);
        for _ in 0..100 {
            let k = 6;
            let points = sample_distinct_points(1 << k, 5, &mut rng);
            let full = cut_indices_of_points(&points, k);
            let sub = cut_indices_of_points(&points[..3], k);
            assert!(sub.cut.is_subset(&full.cut));
        }
    }

    #[test]
    fn cut_lemma_small_exhaustive() {
        for weight in 1..=5u64 {
            let res = check_cut_lemma(4, weight, 0, 0);
            assert!(res.is_verified(), "weight {weight}: {res:?}");
        }
    }

    #[test]
    fn cut_lemma_random_large() {
        let res = check_cut_lemma(16, 8, 500, 3);
        assert!(res.is_verified());
    }

    #[test]
    fn tightness_chain_cuts_exactly_t_minus_one() {
        for k in [3u32, 5, 8, 16] {
            for t in 1..=k as u64 {
                let points = cut_tightness_points(k, t).unwrap();
                let report = cut_indices_of_points(&points, k);
                assert_eq!(report.cut.len() as u64, t - 1, "k={k} t={t}");
                assert!(report.acyclic);
            }
        }
        assert!(cut_tightness_points(4, 5).is_err());
    }

    #[test]
    fn goodalpha_worked_example() {
        // k=2, m=5: a singleton at 0 with digits (1,2) cuts nothing.
        let p = params(2, 5);
        let alpha = PartialAssignment::new([(0, dv(5, &[1, 2]))]).unwrap();
        let res = check_goodalpha(&p, &alpha, 1).unwrap();
        assert!(res.is_verified(), "{res:?}");
        // Both sides equal (1/4)^2 = 1/16.
        let scaled = ScaledParams::line(p);
        let p_mu = agreement_probability(&alpha, DistributionId::Mu, &scaled).unwrap();
        assert_eq!(p_mu, BigRational::new(1.into(), 16.into()));
    }

    #[test]
    fn goodalpha_skips_when_preconditions_fail() {
        let p = params(2, 5);
        let bad = PartialAssignment::new([(0, dv(5, &[0, 2]))]).unwrap();
        let res = check_goodalpha(&p, &bad, 1).unwrap();
        assert!(matches!(res.outcome, Outcome::NotApplicable { .. }));
        // Points 0 and 2 differ at bit 0, so index 0 is cut.
        let cutting = PartialAssignment::new([(0, dv(5, &[1, 1])), (2, dv(5, &[2, 2]))]).unwrap();
        let res = check_goodalpha(&p, &cutting, 0).unwrap();
        assert!(matches!(res.outcome, Outcome::NotApplicable { .. }));
    }

    #[test]
    fn goodalpha_accepts_the_empty_assignment() {
        let p = params(3, 5);
        let res = check_goodalpha(&p, &PartialAssignment::empty(), 1).unwrap();
        assert!(res.is_verified());
        let res = check_claim_good(&p, &PartialAssignment::empty()).unwrap();
        assert!(res.is_verified());
    }

    #[test]
    fn goodalpha_random_sweep() {
        let p = params(3, 5);
        let mut rng = stream(31, 0);
        let mut verified = 0;
        while verified < 60 {
            let weight = rng.random_range(1..=4);
            let alpha = random_good_assignment(&p, weight, &mut rng).unwrap();
            let cut = cut_indices(&alpha, p.k()).cut;
            let Some(j) = (0..p.k()).find(|j| !cut.contains(j)) else { continue };
            let res = check_goodalpha(&p, &alpha, j).unwrap();
            assert!(res.is_verified(), "{res:?}");
            verified += 1;
        }
    }

    #[test]
    fn claim_good_random_sweep() {
        let p = params(4, 5);
        let mut rng = stream(32, 0);
        for _ in 0..60 {
            let weight = rng.random_range(1..=2);
            let alpha = random_good_assignment(&p, weight, &mut rng).unwrap();
            let res = check_claim_good(&p, &alpha).unwrap();
            assert!(res.is_verified(), "{res:?}");
        }
        // Wider regime: weight up to k/2 = 3 at k = 6.
        let p = params(6, 5);
        for _ in 0..100 {
            let weight = rng.random_range(1..=3);
            let alpha = random_good_assignment(&p, weight, &mut rng).unwrap();
            let res = check_claim_good(&p, &alpha).unwrap();
            assert!(res.is_verified(), "{res:?}");
        }
    }

    #[test]
    fn claim_good_rejects_overweight() {
        let p = params(2, 5);
        let alpha = random_good_assignment(&p, 2, &mut stream(33, 0)).unwrap();
        let res = check_claim_good(&p, &alpha).unwrap();
        assert!(matches!(res.outcome, Outcome::NotApplicable { .. }));
    }

    #[test]
    fn bad_hit_bound_holds() {
        let p = params(6, 64);
        let est = estimate_bad_hit(&p, 3, 4000, 5).unwrap();
        assert!(est.informative);
        assert!(est.within_bound, "{est:?}");
        // Huge m: essentially no bad mass.
        let p = params(10, 1 << 20);
        let est = estimate_bad_hit(&p, 5, 500, 6).unwrap();
        assert!(est.estimate < 0.01);
        assert!(est.within_bound);
    }

    #[test]
    fn bad_hit_vacuous_bound_is_flagged() {
        let p = params(4, 5);
        let est = estimate_bad_hit(&p, 2, 500, 7).unwrap();
        assert!(!est.informative);
        assert!(est.within_bound);
    }

    #[test]
    fn nonmonotone_check_verifies() {
        let scaled = ScaledParams::new(2, params(4, 5)).unwrap();
        let res = check_nonmonotone(&scaled, 100, 8).unwrap();
        assert!(res.is_verified());
    }

    #[test]
    fn exhaustive_tester_separates_perfectly() {
        let scaled = ScaledParams::line(params(4, 5));
        let config = GapConfig { trials: 50, base_seed: 9, budget: None };
        let report = distinguishing_experiment(
            |oracle, _| Ok(test_exhaustive(oracle)),
            DistributionId::Mu,
            DistributionId::Nu,
            &scaled,
            &config,
        )
        .unwrap();
        assert_eq!(report.side_a.accepts, 50);
        assert_eq!(report.side_b.accepts, 0);
        assert_eq!(report.gap, 1.0);
    }

    #[test]
    fn improved_tester_separates() {
        let scaled = ScaledParams::line(params(8, 5));
        let config = GapConfig { trials: 150, base_seed: 10, budget: None };
        let eps = Eps::new(1, 2).unwrap();
        let report = distinguishing_experiment(
            |oracle, seed| test_improved(oracle, &TesterConfig::new(eps, seed)),
            DistributionId::Mu,
            DistributionId::Nu,
            &scaled,
            &config,
        )
        .unwrap();
        assert_eq!(report.side_a.acceptance_rate, 1.0);
        assert!(report.side_b.acceptance_rate <= 0.25, "{report:?}");
    }

    #[test]
    fn tiny_budget_shrinks_the_gap() {
        let scaled = ScaledParams::line(params(8, 5));
        let eps = Eps::new(1, 2).unwrap();
        let capped = GapConfig { trials: 200, base_seed: 11, budget: Some(2) };
        let report = distinguishing_experiment(
            |oracle, seed| test_improved(oracle, &TesterConfig::new(eps, seed)),
            DistributionId::Mu,
            DistributionId::Nu,
            &scaled,
            &capped,
        )
        .unwrap();
        assert!(report.gap <= 0.3, "capped gap {}", report.gap);
    }
}
