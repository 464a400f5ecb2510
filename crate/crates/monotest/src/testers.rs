//! Randomized monotonicity testers and the disjoint-pair certificate.
//!
//! The log-scheme tester probes, for a random `x`, the nearest multiples of
//! `2^i` on both sides for `i` up to `ceil(log2(eps*n))`. It is non-adaptive,
//! never rejects a monotone function, and uses
//! `ceil(c/eps) * (1 + 2*(ceil(log2(eps*n)) + 1))` queries in the worst
//! case. The binary-search spot checker is the classic baseline
//! (reconstructed here; ties broken by index so equal values stay sound),
//! and the exhaustive scan is the trivial exact tester.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{LineFunction, PosetOrder, ViolationPair};
use crate::stream::stream;
use crate::value::RankValue;

use rand::Rng;

/// Default repetition constant: `ceil(c/eps)` outer iterations. Each
/// iteration hits a detecting element with probability at least `eps/4`,
/// so `c = 6` keeps the acceptance probability of a far input below
/// `e^(-3/2) < 1/3`.
pub const DEFAULT_ITERATION_CONSTANT: u32 = 6;

/// An exact proximity parameter `0 < p/q <= 1`. Kept rational so thresholds
/// like `eps * n` and `ceil(log2(eps * n))` are computed without rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eps {
    num: u64,
    den: u64,
}

impl Eps {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num > den {
            return Err(Error::invalid(format!("eps must satisfy 0 < {num}/{den} <= 1")));
        }
        let g = num.gcd(&den);
        Ok(Eps { num: num / g, den: den / g })
    }

    pub fn one() -> Self {
        Eps { num: 1, den: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    fn times_n(&self, n: u64) -> u128 {
        self.num as u128 * n as u128
    }

    /// Is `eps * n >= bound`?
    pub fn eps_n_at_least(&self, n: u64, bound: u64) -> bool {
        self.times_n(n) >= bound as u128 * self.den as u128
    }

    /// `floor(eps * n)`.
    pub fn floor_eps_n(&self, n: u64) -> u64 {
        (self.times_n(n) / self.den as u128) as u64
    }

    /// `ceil(eps * n)`.
    pub fn ceil_eps_n(&self, n: u64) -> u64 {
        (self.times_n(n).div_ceil(self.den as u128)) as u64
    }

    /// `floor(eps * n / 2)`: the disjoint-pair certificate size.
    pub fn floor_half_eps_n(&self, n: u64) -> u64 {
        (self.times_n(n) / (2 * self.den as u128)) as u64
    }

    /// Is `gap <= eps * n`?
    pub fn gap_within_eps_n(&self, gap: u64, n: u64) -> bool {
        gap as u128 * self.den as u128 <= self.times_n(n)
    }

    /// `ceil(c / eps)`: the outer repetition count.
    pub fn ceil_reps(&self, c: u32) -> u64 {
        let num = c as u128 * self.den as u128;
        num.div_ceil(self.num as u128) as u64
    }

    /// `ceil(log2(eps * n))`, the number of probe levels. Requires
    /// `eps * n >= 1`.
    pub fn ceil_log2_eps_n(&self, n: u64) -> u32 {
        let target = self.times_n(n);
        let mut cap = self.den as u128;
        let mut level = 0u32;
        while cap < target {
            cap = cap.saturating_mul(2);
            level += 1;
        }
        level
    }
}

impl std::fmt::Display for Eps {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Eps {
    type Err = Error;

    /// Parse `p/q` (or a bare integer). Floating-point input is rejected;
    /// the thresholds need exact arithmetic.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("eps must be a rational p/q, got {s:?}"));
        if s.contains('.') {
            return Err(bad());
        }
        match s.split_once('/') {
            Some((p, q)) => {
                Eps::new(p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?)
            }
            None => Eps::new(s.trim().parse().map_err(|_| bad())?, 1),
        }
    }
}

impl Serialize for Eps {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// Signals that a budget-capped oracle refused another query; testers
/// respond by accepting (the 1-sided default).
#[derive(Debug, Clone, Copy)]
pub struct BudgetExhausted;

/// Query access to a function with counting, transcript capture, optional
/// memoization (on by default: each distinct point is counted once per run)
/// and an optional hard query budget.
pub struct QueryOracle<'a> {
    f: &'a LineFunction,
    memoize: bool,
    budget: Option<u64>,
    transcript: Vec<(u64, RankValue)>,
    seen: HashMap<u64, usize>,
}

impl<'a> QueryOracle<'a> {
    pub fn new(f: &'a LineFunction) -> Self {
        QueryOracle { f, memoize: true, budget: None, transcript: Vec::new(), seen: HashMap::new() }
    }

    /// Count repeated queries to the same point every time.
    pub fn unmemoized(f: &'a LineFunction) -> Self {
        QueryOracle { memoize: false, ..Self::new(f) }
    }

    /// Refuse queries beyond `budget`.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn n(&self) -> u64 {
        self.f.n()
    }

    pub fn queries(&self) -> u64 {
        self.transcript.len() as u64
    }

    pub fn transcript(&self) -> &[(u64, RankValue)] {
        &self.transcript
    }

    pub(crate) fn function(&self) -> &'a LineFunction {
        self.f
    }

    pub fn query(&mut self, x: u64) -> std::result::Result<RankValue, BudgetExhausted> {
        if self.memoize {
            if let Some(&pos) = self.seen.get(&x) {
                return Ok(self.transcript[pos].1.clone());
            }
        }
        if let Some(budget) = self.budget {
            if self.queries() >= budget {
                return Err(BudgetExhausted);
            }
        }
        let value = self.f.value(x).clone();
        if self.memoize {
            self.seen.insert(x, self.transcript.len());
        }
        self.transcript.push((x, value.clone()));
        Ok(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

/// Outcome of one tester run.
#[derive(Debug, Clone)]
pub struct TesterReport {
    pub verdict: Verdict,
    pub queries: u64,
    pub witness: Option<ViolationPair>,
    pub transcript: Vec<(u64, RankValue)>,
}

impl TesterReport {
    fn accept(oracle: QueryOracle<'_>) -> Self {
        TesterReport {
            verdict: Verdict::Accept,
            queries: oracle.queries(),
            witness: None,
            transcript: oracle.transcript,
        }
    }

    fn reject(witness: ViolationPair, oracle: QueryOracle<'_>) -> Self {
        TesterReport {
            verdict: Verdict::Reject,
            queries: oracle.queries(),
            witness: Some(witness),
            transcript: oracle.transcript,
        }
    }
}

/// Tester parameters: proximity, repetition constant, and the seed of the
/// tester's own randomness.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TesterConfig {
    pub eps: Eps,
    pub c: u32,
    pub seed: u64,
}

impl TesterConfig {
    pub fn new(eps: Eps, seed: u64) -> Self {
        TesterConfig { eps, c: DEFAULT_ITERATION_CONSTANT, seed }
    }
}

fn line_pair(f: &LineFunction, x: u64, y: u64) -> ViolationPair {
    ViolationPair::new(f, &PosetOrder::line(f.n()), x, y)
        .expect("endpoints were just observed out of order")
}

/// One probe round of the log-scheme tester at start point `x`: walk levels
/// `i = 0..=levels`, compare `f(x)` against the nearest multiples of `2^i`
/// strictly below and above `x` (skipping ones outside the domain).
pub fn improved_iteration(
    oracle: &mut QueryOracle<'_>,
    levels: u32,
    x: u64,
) -> std::result::Result<Option<ViolationPair>, BudgetExhausted> {
    let n = oracle.n();
    let fx = oracle.query(x)?;
    for i in 0..=levels {
        let step = 1u64 << i;
        if x > 0 {
            let w = ((x - 1) / step) * step;
            let fw = oracle.query(w)?;
            if fw > fx {
                return Ok(Some(line_pair(oracle.function(), w, x)));
            }
        }
        let y = (x / step + 1) * step;
        if y < n {
            let fy = oracle.query(y)?;
            if fx > fy {
                return Ok(Some(line_pair(oracle.function(), x, y)));
            }
        }
    }
    Ok(None)
}

/// The `O(eps^-1 log(eps n))` non-adaptive 1-sided tester. Requires
/// `eps * n >= 2`; use [`test_exhaustive`] below that.
pub fn test_improved(mut oracle: QueryOracle<'_>, config: &TesterConfig) -> Result<TesterReport> {
    let n = oracle.n();
    if !config.eps.eps_n_at_least(n, 2) {
        return Err(Error::Config(format!(
            "log-scheme tester needs eps*n >= 2 (eps = {}, n = {n}); run the exhaustive tester instead",
            config.eps
        )));
    }
    let levels = config.eps.ceil_log2_eps_n(n);
    let reps = config.eps.ceil_reps(config.c);
    let mut rng = stream(config.seed, 0);
    for _ in 0..reps {
        let x = rng.random_range(0..n);
        match improved_iteration(&mut oracle, levels, x) {
            Ok(Some(witness)) => return Ok(TesterReport::reject(witness, oracle)),
            Ok(None) => {}
            Err(BudgetExhausted) => break,
        }
    }
    Ok(TesterReport::accept(oracle))
}

/// Worst-case query count of [`test_improved`]: every run satisfies
/// `queries <= ceil(c/eps) * (1 + 2 * (ceil(log2(eps*n)) + 1))`.
pub fn improved_query_budget(eps: &Eps, c: u32, n: u64) -> u64 {
    eps.ceil_reps(c) * (1 + 2 * (eps.ceil_log2_eps_n(n) as u64 + 1))
}

/// The classic binary-search spot checker: pick `x` at random and search for
/// its key over the index range as if the array were sorted. Any comparison
/// that contradicts sortedness yields a violating pair. Ties are broken by
/// index, so monotone functions (with duplicates) are always accepted.
pub fn test_ergun(mut oracle: QueryOracle<'_>, config: &TesterConfig) -> Result<TesterReport> {
    let n = oracle.n();
    if n == 0 {
        return Ok(TesterReport::accept(oracle));
    }
    let reps = config.eps.ceil_reps(config.c);
    let mut rng = stream(config.seed, 0);
    for _ in 0..reps {
        let x = rng.random_range(0..n);
        let fx = match oracle.query(x) {
            Ok(v) => v,
            Err(BudgetExhausted) => return Ok(TesterReport::accept(oracle)),
        };
        let (mut lo, mut hi) = (0u64, n);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if mid == x {
                lo = mid;
                continue;
            }
            let fmid = match oracle.query(mid) {
                Ok(v) => v,
                Err(BudgetExhausted) => return Ok(TesterReport::accept(oracle)),
            };
            // Keys are (value, index); a key comparison pointing away from x
            // exhibits a violation.
            let mid_le_x = (fmid.clone(), mid) <= (fx.clone(), x);
            if mid_le_x {
                if mid > x {
                    let witness = line_pair(oracle.function(), x, mid);
                    return Ok(TesterReport::reject(witness, oracle));
                }
                lo = mid;
            } else {
                if mid < x {
                    let witness = line_pair(oracle.function(), mid, x);
                    return Ok(TesterReport::reject(witness, oracle));
                }
                hi = mid;
            }
        }
        debug_assert_eq!(lo, x, "search on a sorted-looking path lands on x");
    }
    Ok(TesterReport::accept(oracle))
}

/// Worst-case query count of [`test_ergun`]:
/// `ceil(c/eps) * (ceil(log2 n) + 1)`.
pub fn ergun_query_budget(eps: &Eps, c: u32, n: u64) -> u64 {
    let mut levels = 0u64;
    let mut cap = 1u64;
    while cap < n {
        cap = cap.saturating_mul(2);
        levels += 1;
    }
    eps.ceil_reps(c) * (levels + 1)
}

/// The trivial exact tester: query every point, reject on any adjacent
/// inversion.
pub fn test_exhaustive(mut oracle: QueryOracle<'_>) -> TesterReport {
    let n = oracle.n();
    let mut values = Vec::with_capacity(n as usize);
    for x in 0..n {
        match oracle.query(x) {
            Ok(v) => values.push(v),
            Err(BudgetExhausted) => return TesterReport::accept(oracle),
        }
    }
    for x in 0..n.saturating_sub(1) {
        if values[x as usize] > values[x as usize + 1] {
            let witness = line_pair(oracle.function(), x, x + 1);
            return TesterReport::reject(witness, oracle);
        }
    }
    TesterReport::accept(oracle)
}

/// Tester selector used by experiment drivers and the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TesterId {
    Improved,
    Ergun,
    Exhaustive,
}

impl std::str::FromStr for TesterId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "improved" => Ok(TesterId::Improved),
            "ergun" => Ok(TesterId::Ergun),
            "exhaustive" => Ok(TesterId::Exhaustive),
            _ => Err(Error::invalid(format!("unknown tester {s:?}"))),
        }
    }
}

impl std::fmt::Display for TesterId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TesterId::Improved => write!(f, "improved"),
            TesterId::Ergun => write!(f, "ergun"),
            TesterId::Exhaustive => write!(f, "exhaustive"),
        }
    }
}

/// Run the selected tester on one oracle.
pub fn run_tester(
    id: TesterId,
    oracle: QueryOracle<'_>,
    config: &TesterConfig,
) -> Result<TesterReport> {
    match id {
        TesterId::Improved => test_improved(oracle, config),
        TesterId::Ergun => test_ergun(oracle, config),
        TesterId::Exhaustive => Ok(test_exhaustive(oracle)),
    }
}

/// Greedy neighbor-removal over a linked list of surviving points: remove
/// adjacent violating pairs until `target` pairs are found (or, with no
/// target, until the survivors are violation-free).
fn greedy_neighbor_pairs(f: &LineFunction, target: Option<u64>) -> Vec<ViolationPair> {
    let n = f.n();
    let mut pairs = Vec::new();
    if n < 2 {
        return pairs;
    }

    const NONE: u64 = u64::MAX;
    let mut next: Vec<u64> = (1..=n).map(|i| if i == n { NONE } else { i }).collect();
    let mut prev: Vec<u64> = (0..n).map(|i| if i == 0 { NONE } else { i - 1 }).collect();
    let mut head = 0u64;
    let mut cursor = head;

    while target.is_none_or(|t| (pairs.len() as u64) < t) {
        if cursor == NONE {
            break;
        }
        let succ = next[cursor as usize];
        if succ == NONE {
            break;
        }
        if f.value(cursor) > f.value(succ) {
            let (x, y) = (cursor, succ);
            pairs.push(line_pair(f, x, y));
            // Unlink both endpoints and back up one step: removal creates at
            // most one new adjacency, between prev(x) and next(y).
            let before = prev[x as usize];
            let after = next[y as usize];
            if before == NONE {
                head = after;
            } else {
                next[before as usize] = after;
            }
            if after != NONE {
                prev[after as usize] = before;
            }
            cursor = if before == NONE { head } else { before };
        } else {
            cursor = succ;
        }
    }
    pairs
}

/// Greedy neighbor-removal certificate: returns `floor(eps*n/2)` pairwise
/// disjoint violating pairs, each with gap at most `eps * n`, provided `f`
/// is eps-far from monotone. Stalls with a certificate error otherwise.
pub fn find_disjoint_violating_pairs(f: &LineFunction, eps: &Eps) -> Result<Vec<ViolationPair>> {
    let n = f.n();
    let target = eps.floor_half_eps_n(n);
    let pairs = greedy_neighbor_pairs(f, Some(target));
    if (pairs.len() as u64) < target {
        return Err(Error::Certificate(format!(
            "greedy pair construction stalled after {} of {target} pairs; \
             the input is not eps-far for eps = {eps}",
            pairs.len()
        )));
    }
    if let Some(p) = pairs.iter().find(|p| !eps.gap_within_eps_n(p.y - p.x, n)) {
        return Err(Error::Certificate(format!(
            "pair ({}, {}) has gap {} beyond eps*n",
            p.x,
            p.y,
            p.y - p.x
        )));
    }
    Ok(pairs)
}

/// The greedy procedure run to exhaustion: a maximal set of disjoint
/// violating pairs (the survivors are violation-free). Its size is a lower
/// bound on the distance to monotone, and at least half of it.
pub fn max_disjoint_violating_pairs(f: &LineFunction) -> Vec<ViolationPair> {
    greedy_neighbor_pairs(f, None)
}

/// The smallest level `i` such that exactly one multiple of `2^i` lies
/// strictly between `x` and `y`; defined for `y >= x + 2` and satisfies
/// `2^i < 2 * (y - x)`.
pub fn split_level(x: u64, y: u64) -> Result<u32> {
    if y < x + 2 {
        return Err(Error::invalid(format!(
            "split level needs y >= x + 2, got x = {x}, y = {y}"
        )));
    }
    for i in 0..64u32 {
        let step = 1u64 << i;
        let count = (y - 1) / step - x / step;
        if count == 1 {
            return Ok(i);
        }
    }
    unreachable!("a level with a unique strict multiple always exists")
}
