//! Adversarial instance distributions on the line and their hypergrid
//! embedding.
//!
//! The base family lives on domain `[2^k]` with range `[m^k]`. A function is
//! determined by one digit per binary prefix: writing the argument `x` in `k`
//! bits and the value in `k` base-`m` digits (most significant first), the
//! `i`-th digit of `f(x)` is `a_s + b`, where `s` is the length-`i` prefix of
//! `x`, `b` is the `i`-th bit of `x`, and each `a_s` is drawn uniformly from
//! `[0, m-2]`. Such functions are monotone. Flipping one argument bit before
//! evaluation (`nu^j`) makes every draw far from monotone while keeping the
//! per-prefix digit statistics intact.
//!
//! The scaled (`tilde`) variants concatenate `ell` independent blocks, with
//! block `s` offset by `s * m^k`, and plant a single flipped block.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{LineFunction, PosetOrder};
use crate::value::RankValue;

/// Largest domain a constructor will materialize as a dense function.
pub const MAX_MATERIALIZED_DOMAIN: u64 = 1 << 24;

/// Parameters of the base family: `k` digit levels over digit base `m`.
///
/// `m` is a free parameter so exhaustive verification can use tiny bases;
/// [`MuParams::cubic_base`] gives the `m = k^3` regime in which the flip
/// families defeat every tester of `o(k)` queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MuParams {
    k: u32,
    m: u64,
}

impl MuParams {
    pub fn new(k: u32, m: u64) -> Result<Self> {
        if !(1..=24).contains(&k) {
            return Err(Error::invalid(format!("k must be in [1, 24], got {k}")));
        }
        if m < 2 {
            return Err(Error::invalid(format!("digit base m must be >= 2, got {m}")));
        }
        Ok(MuParams { k, m })
    }

    /// The `m = k^3` regime, so the range bound is `k^(3k)`.
    pub fn cubic_base(k: u32) -> Result<Self> {
        let m = (k as u64).pow(3);
        Self::new(k, m)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Domain size `2^k`.
    pub fn domain_size(&self) -> u64 {
        1u64 << self.k
    }

    /// Range bound `m^k` as a digit vector.
    pub fn range_bound(&self) -> RankValue {
        let mut digits = vec![0u64; self.k as usize + 1];
        digits[0] = 1;
        RankValue::from_digits(self.m, digits).expect("1 is a valid digit for m >= 2")
    }

    pub fn seed_len(&self) -> u64 {
        (1u64 << self.k) - 1
    }
}

/// One digit `a_s` in `[0, m-2]` per binary prefix `s` with `|s| < k`,
/// stored in heap order (level by level, left to right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSeed {
    k: u32,
    values: Vec<u64>,
}

fn heap_index(len: u32, prefix: u64) -> usize {
    ((1u64 << len) - 1 + prefix) as usize
}

impl DigitSeed {
    /// Sample all `2^k - 1` digits uniformly from `[0, m-2]`, in heap order.
    pub fn sample<R: Rng + ?Sized>(params: &MuParams, rng: &mut R) -> Self {
        let values = (0..params.seed_len())
            .map(|_| rng.random_range(0..params.m - 1))
            .collect();
        DigitSeed { k: params.k, values }
    }

    /// Build a seed from explicit `((len, prefix), a)` entries. Every prefix
    /// with `len < k` must be present exactly once.
    pub fn from_entries(
        params: &MuParams,
        entries: impl IntoIterator<Item = ((u32, u64), u64)>,
    ) -> Result<Self> {
        let mut values = vec![u64::MAX; params.seed_len() as usize];
        for ((len, prefix), a) in entries {
            if len >= params.k || prefix >= (1 << len) {
                return Err(Error::invalid(format!(
                    "prefix ({len}, {prefix:b}) out of range for k={}",
                    params.k
                )));
            }
            if a > params.m - 2 {
                return Err(Error::invalid(format!(
                    "seed digit {a} exceeds m-2 = {}",
                    params.m - 2
                )));
            }
            let slot = &mut values[heap_index(len, prefix)];
            if *slot != u64::MAX {
                return Err(Error::invalid(format!("duplicate prefix ({len}, {prefix:b})")));
            }
            *slot = a;
        }
        if values.contains(&u64::MAX) {
            return Err(Error::invalid("incomplete seed: missing prefixes"));
        }
        Ok(DigitSeed { k: params.k, values })
    }

    /// Build a seed by evaluating `f(len, prefix)` on every prefix.
    pub fn from_fn(params: &MuParams, mut f: impl FnMut(u32, u64) -> u64) -> Result<Self> {
        let mut entries = Vec::with_capacity(params.seed_len() as usize);
        for len in 0..params.k {
            for prefix in 0..(1u64 << len) {
                entries.push(((len, prefix), f(len, prefix)));
            }
        }
        Self::from_entries(params, entries)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The digit for the length-`len` prefix with bits `prefix`.
    pub fn a(&self, len: u32, prefix: u64) -> u64 {
        self.values[heap_index(len, prefix)]
    }
}

fn check_seed(params: &MuParams, seed: &DigitSeed) -> Result<()> {
    if seed.k != params.k {
        return Err(Error::invalid(format!(
            "seed built for k={} used with k={}",
            seed.k, params.k
        )));
    }
    if let Some(a) = seed.values.iter().find(|&&a| a > params.m - 2) {
        return Err(Error::invalid(format!("seed digit {a} exceeds m-2 = {}", params.m - 2)));
    }
    Ok(())
}

/// The base-`m` digits of the monotone-family value at point `x`.
pub fn mu_digits_at(params: &MuParams, seed: &DigitSeed, x: u64) -> Vec<u64> {
    let k = params.k;
    (0..k)
        .map(|i| {
            let prefix = x >> (k - i);
            let bit = (x >> (k - 1 - i)) & 1;
            seed.a(i, prefix) + bit
        })
        .collect()
}

/// Value of the monotone-family function at one point, without materializing
/// the whole function.
pub fn mu_value_at(params: &MuParams, seed: &DigitSeed, x: u64) -> RankValue {
    RankValue::from_digits(params.m, mu_digits_at(params, seed, x))
        .expect("seed digits stay below m")
}

/// The monotone hard-instance function for `seed`, via the digit rule.
pub fn mu_from_seed(params: &MuParams, seed: &DigitSeed) -> Result<LineFunction> {
    check_seed(params, seed)?;
    let n = params.domain_size();
    if n > MAX_MATERIALIZED_DOMAIN {
        return Err(Error::capacity(format!("domain {n} too large to materialize")));
    }
    let values = (0..n).map(|x| mu_value_at(params, seed, x)).collect();
    LineFunction::new(values, params.range_bound())
}

/// The same function built bottom-up by the split recursion
/// `f = a * m^i + f_0` on the lower half and `(a+1) * m^i + f_1` on the
/// upper half. Independent arithmetic route used to cross-check
/// [`mu_from_seed`].
pub fn mu_from_seed_recursive(params: &MuParams, seed: &DigitSeed) -> Result<LineFunction> {
    check_seed(params, seed)?;
    if params.domain_size() > MAX_MATERIALIZED_DOMAIN {
        return Err(Error::capacity("domain too large to materialize"));
    }

    fn build(params: &MuParams, seed: &DigitSeed, len: u32, prefix: u64) -> Vec<BigUint> {
        if len == params.k {
            return vec![BigUint::zero()];
        }
        let a = seed.a(len, prefix);
        let lower = build(params, seed, len + 1, prefix << 1);
        let upper = build(params, seed, len + 1, (prefix << 1) | 1);
        let i = params.k - len - 1;
        let scale = BigUint::from(params.m).pow(i);
        let low_offset = &scale * a;
        let high_offset = &scale * (a + 1);
        lower
            .into_iter()
            .map(|v| &low_offset + v)
            .chain(upper.into_iter().map(|v| &high_offset + v))
            .collect()
    }

    let values = build(params, seed, 0, 0)
        .into_iter()
        .map(RankValue::from)
        .collect();
    let bound = RankValue::from(BigUint::from(params.m).pow(params.k));
    LineFunction::new(values, bound)
}

/// The far function obtained by flipping argument bit `j` (0 = most
/// significant) before evaluating the monotone function.
pub fn nu_j_from_seed(params: &MuParams, seed: &DigitSeed, j: u32) -> Result<LineFunction> {
    if j >= params.k {
        return Err(Error::invalid(format!("flip level j={j} out of range for k={}", params.k)));
    }
    check_seed(params, seed)?;
    let n = params.domain_size();
    if n > MAX_MATERIALIZED_DOMAIN {
        return Err(Error::capacity(format!("domain {n} too large to materialize")));
    }
    let mask = 1u64 << (params.k - 1 - j);
    let values = (0..n).map(|x| mu_value_at(params, seed, x ^ mask)).collect();
    LineFunction::new(values, params.range_bound())
}

/// Parameters of the scaled block construction: `ell` independent blocks of
/// the base family, so the proximity parameter is `eps = 1/(2*ell)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScaledParams {
    ell: u64,
    mu: MuParams,
}

impl ScaledParams {
    pub fn new(ell: u64, mu: MuParams) -> Result<Self> {
        if ell < 1 {
            return Err(Error::invalid("block count ell must be >= 1"));
        }
        ell.checked_mul(mu.domain_size())
            .ok_or_else(|| Error::capacity("scaled domain overflows u64"))?;
        Ok(ScaledParams { ell, mu })
    }

    /// Blocks-of-one wrapper for the base family.
    pub fn line(mu: MuParams) -> Self {
        ScaledParams { ell: 1, mu }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn mu(&self) -> &MuParams {
        &self.mu
    }

    pub fn domain_size(&self) -> u64 {
        self.ell * self.mu.domain_size()
    }

    /// `eps = 1 / (2 * ell)` as an exact `(numerator, denominator)` pair.
    pub fn eps(&self) -> (u64, u64) {
        (1, 2 * self.ell)
    }

    /// `eps * n = 2^(k-1)` for the scaled construction.
    pub fn eps_n(&self) -> u64 {
        1u64 << (self.mu.k - 1)
    }

    /// Digits of the block index prefix: enough base-`m` digits for `ell-1`.
    fn block_digit_width(&self) -> usize {
        let mut width = 1;
        let mut top = self.ell - 1;
        while top >= self.mu.m {
            top /= self.mu.m;
            width += 1;
        }
        width
    }

    /// Range bound `ell * m^k` as a digit vector.
    pub fn range_bound(&self) -> RankValue {
        let mut digits = base_m_digits(self.ell, self.mu.m);
        digits.extend(std::iter::repeat_n(0, self.mu.k as usize));
        RankValue::from_digits(self.mu.m, digits).expect("digits below base")
    }
}

/// Minimal base-`m` digit expansion of `v`, most significant first.
fn base_m_digits(mut v: u64, m: u64) -> Vec<u64> {
    let mut digits = Vec::new();
    loop {
        digits.push(v % m);
        v /= m;
        if v == 0 {
            break;
        }
    }
    digits.reverse();
    digits
}

fn block_prefix_digits(scaled: &ScaledParams, s: u64) -> Vec<u64> {
    let width = scaled.block_digit_width();
    let mut digits = base_m_digits(s, scaled.mu.m);
    let mut padded = vec![0u64; width - digits.len()];
    padded.append(&mut digits);
    padded
}

fn tilde_from_seeds(
    scaled: &ScaledParams,
    seeds: &[DigitSeed],
    flipped: Option<(u64, u32)>,
) -> Result<LineFunction> {
    if seeds.len() as u64 != scaled.ell {
        return Err(Error::invalid(format!(
            "expected {} block seeds, got {}",
            scaled.ell,
            seeds.len()
        )));
    }
    if let Some((t, j)) = flipped {
        if t >= scaled.ell {
            return Err(Error::invalid(format!("block index t={t} out of range")));
        }
        if j >= scaled.mu.k {
            return Err(Error::invalid(format!("flip level j={j} out of range")));
        }
    }
    let n = scaled.domain_size();
    if n > MAX_MATERIALIZED_DOMAIN {
        return Err(Error::capacity(format!("domain {n} too large to materialize")));
    }
    let params = &scaled.mu;
    let block_len = params.domain_size();
    let mut values = Vec::with_capacity(n as usize);
    for (s, seed) in seeds.iter().enumerate() {
        check_seed(params, seed)?;
        let prefix = block_prefix_digits(scaled, s as u64);
        let flip_mask = match flipped {
            Some((t, j)) if t == s as u64 => 1u64 << (params.k - 1 - j),
            _ => 0,
        };
        for x in 0..block_len {
            let mut digits = prefix.clone();
            digits.extend(mu_digits_at(params, seed, x ^ flip_mask));
            values.push(RankValue::from_digits(params.m, digits)?);
        }
    }
    LineFunction::new(values, scaled.range_bound())
}

/// The scaled monotone function: block `s` is an independent base-family
/// draw offset by `s * m^k`.
pub fn mu_tilde_from_seeds(scaled: &ScaledParams, seeds: &[DigitSeed]) -> Result<LineFunction> {
    tilde_from_seeds(scaled, seeds, None)
}

/// The scaled far function: block `t` has argument bit `j` flipped.
pub fn nu_tilde_from_seeds(
    scaled: &ScaledParams,
    seeds: &[DigitSeed],
    t: u64,
    j: u32,
) -> Result<LineFunction> {
    tilde_from_seeds(scaled, seeds, Some((t, j)))
}

/// Identifier of one of the hard-instance distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionId {
    /// Monotone base family.
    Mu,
    /// Single-level flip of the base family.
    NuJ(u32),
    /// Uniform mixture of the flips over all levels.
    Nu,
    /// Scaled block-concatenated monotone family.
    MuTilde,
    /// Scaled family with block `t` flipped at level `j`.
    NuTildeTJ(u64, u32),
    /// Uniform mixture over blocks and levels.
    NuTilde,
}

impl DistributionId {
    /// Is this a scaled (block) distribution?
    pub fn is_tilde(&self) -> bool {
        matches!(
            self,
            DistributionId::MuTilde | DistributionId::NuTildeTJ(..) | DistributionId::NuTilde
        )
    }

    /// Every draw of this distribution is monotone.
    pub fn is_monotone_family(&self) -> bool {
        matches!(self, DistributionId::Mu | DistributionId::MuTilde)
    }

    pub fn validate(&self, scaled: &ScaledParams) -> Result<()> {
        if !self.is_tilde() && scaled.ell != 1 {
            return Err(Error::invalid(format!(
                "distribution {self} lives on a single block; got ell={}",
                scaled.ell
            )));
        }
        match *self {
            DistributionId::NuJ(j) if j >= scaled.mu.k => {
                Err(Error::invalid(format!("nu-j:{j} needs j < k = {}", scaled.mu.k)))
            }
            DistributionId::NuTildeTJ(t, j) => {
                if t >= scaled.ell {
                    Err(Error::invalid(format!("nu-tilde:{t}:{j} needs t < ell = {}", scaled.ell)))
                } else if j >= scaled.mu.k {
                    Err(Error::invalid(format!("nu-tilde:{t}:{j} needs j < k = {}", scaled.mu.k)))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for DistributionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistributionId::Mu => write!(f, "mu"),
            DistributionId::NuJ(j) => write!(f, "nu-j:{j}"),
            DistributionId::Nu => write!(f, "nu"),
            DistributionId::MuTilde => write!(f, "mu-tilde"),
            DistributionId::NuTildeTJ(t, j) => write!(f, "nu-tilde:{t}:{j}"),
            DistributionId::NuTilde => write!(f, "nu-tilde"),
        }
    }
}

impl std::str::FromStr for DistributionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("unknown distribution {s:?}"));
        match s {
            "mu" => Ok(DistributionId::Mu),
            "nu" => Ok(DistributionId::Nu),
            "mu-tilde" => Ok(DistributionId::MuTilde),
            "nu-tilde" => Ok(DistributionId::NuTilde),
            _ => {
                if let Some(rest) = s.strip_prefix("nu-j:") {
                    let j = rest.parse().map_err(|_| bad())?;
                    return Ok(DistributionId::NuJ(j));
                }
                if let Some(rest) = s.strip_prefix("nu-tilde:") {
                    let (t, j) = rest.split_once(':').ok_or_else(bad)?;
                    let t = t.parse().map_err(|_| bad())?;
                    let j = j.parse().map_err(|_| bad())?;
                    return Ok(DistributionId::NuTildeTJ(t, j));
                }
                Err(bad())
            }
        }
    }
}

impl Serialize for DistributionId {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// Draw one function. Mixture components are drawn before seeds: `nu` picks
/// the level `j` first, `nu-tilde` picks the uniform `(t, j)` pair first,
/// then block seeds are sampled in block order.
pub fn sample<R: Rng + ?Sized>(
    id: DistributionId,
    scaled: &ScaledParams,
    rng: &mut R,
) -> Result<LineFunction> {
    id.validate(scaled)?;
    let params = &scaled.mu;
    match id {
        DistributionId::Mu => mu_from_seed(params, &DigitSeed::sample(params, rng)),
        DistributionId::NuJ(j) => nu_j_from_seed(params, &DigitSeed::sample(params, rng), j),
        DistributionId::Nu => {
            let j = rng.random_range(0..params.k);
            nu_j_from_seed(params, &DigitSeed::sample(params, rng), j)
        }
        DistributionId::MuTilde => {
            let seeds = sample_block_seeds(scaled, rng);
            mu_tilde_from_seeds(scaled, &seeds)
        }
        DistributionId::NuTildeTJ(t, j) => {
            let seeds = sample_block_seeds(scaled, rng);
            nu_tilde_from_seeds(scaled, &seeds, t, j)
        }
        DistributionId::NuTilde => {
            let pair = rng.random_range(0..scaled.ell * params.k as u64);
            let (t, j) = (pair / params.k as u64, (pair % params.k as u64) as u32);
            let seeds = sample_block_seeds(scaled, rng);
            nu_tilde_from_seeds(scaled, &seeds, t, j)
        }
    }
}

fn sample_block_seeds<R: Rng + ?Sized>(scaled: &ScaledParams, rng: &mut R) -> Vec<DigitSeed> {
    (0..scaled.ell)
        .map(|_| DigitSeed::sample(&scaled.mu, rng))
        .collect()
}

/// Map a line index `x` in `[2^(d*b)]` to the hypergrid point whose `i`-th
/// coordinate is the `i`-th group of `b` bits, most significant group first.
pub fn grid_point(x: u64, d: u32, b: u32) -> Result<Vec<u64>> {
    if d < 1 || b < 1 || d as u64 * b as u64 > 63 {
        return Err(Error::invalid(format!("need 1 <= d*b <= 63, got d={d}, b={b}")));
    }
    let total = d * b;
    if x >= (1u64 << total) {
        return Err(Error::PointOutOfDomain { point: x, n: 1 << total });
    }
    let mask = (1u64 << b) - 1;
    Ok((0..d).map(|i| (x >> ((d - 1 - i) * b)) & mask).collect())
}

/// The hypergrid order `[2^b]^d` matching [`grid_point`]'s indexing.
pub fn grid_order(d: u32, b: u32) -> Result<PosetOrder> {
    if d < 1 || b < 1 || d as u64 * b as u64 > 63 {
        return Err(Error::invalid(format!("need 1 <= d*b <= 63, got d={d}, b={b}")));
    }
    PosetOrder::hypergrid(1 << b, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::distance_to_monotone_line;
    use crate::stream::stream;
    use crate::value::RankValue;

    fn params(k: u32, m: u64) -> MuParams {
        MuParams::new(k, m).unwrap()
    }

    /// Worked seed for k=2: a_eps=1, a_0=2, a_1=1.
    fn worked_seed(p: &MuParams) -> DigitSeed {
        DigitSeed::from_entries(p, [((0, 0), 1), ((1, 0), 2), ((1, 1), 1)]).unwrap()
    }

    #[test]
    fn digit_rule_on_worked_example() {
        let p = params(2, 4);
        let f = mu_from_seed(&p, &worked_seed(&p)).unwrap();
        let got: Vec<u64> = f.values().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(got, vec![6, 7, 9, 10]);
    }

    #[test]
    fn digit_rule_single_level() {
        let p = params(1, 5);
        let seed = DigitSeed::from_entries(&p, [((0, 0), 0)]).unwrap();
        let f = mu_from_seed(&p, &seed).unwrap();
        let got: Vec<u64> = f.values().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(got, vec![0, 1]);
    }

    #[test]
    fn recursion_single_level() {
        let p = params(1, 5);
        let seed = DigitSeed::from_entries(&p, [((0, 0), 3)]).unwrap();
        let f = mu_from_seed_recursive(&p, &seed).unwrap();
        let got: Vec<u64> = f.values().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(got, vec![3, 4]);
    }

    #[test]
    fn recursion_matches_digit_rule_on_worked_example() {
        let p = params(2, 4);
        let direct = mu_from_seed(&p, &worked_seed(&p)).unwrap();
        let recursive = mu_from_seed_recursive(&p, &worked_seed(&p)).unwrap();
        assert_eq!(direct, recursive);
        let got: Vec<u64> = recursive.values().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(got, vec![6, 7, 9, 10]);
    }

    #[test]
    fn recursion_matches_digit_rule_exhaustively_small_k() {
        for k in 1..=3u32 {
            let p = params(k, 5);
            let cells = p.seed_len() as u32;
            let total = (p.m() - 1).pow(cells);
            for code in 0..total {
                let mut c = code;
                let seed = DigitSeed::from_fn(&p, |_, _| {
                    let a = c % (p.m() - 1);
                    c /= p.m() - 1;
                    a
                })
                .unwrap();
                assert_eq!(
                    mu_from_seed(&p, &seed).unwrap(),
                    mu_from_seed_recursive(&p, &seed).unwrap()
                );
            }
        }
    }

    #[test]
    fn mu_draws_are_monotone() {
        let mut rng = stream(5, 0);
        for trial in 0..1000 {
            let k = 1 + (trial % 6) as u32;
            let p = params(k, 5 + (trial % 7) as u64);
            let f = mu_from_seed(&p, &DigitSeed::sample(&p, &mut rng)).unwrap();
            assert!(f.is_monotone());
            assert_eq!(distance_to_monotone_line(&f), 0);
        }
    }

    #[test]
    fn entire_support_is_monotone_for_small_k() {
        for k in 1..=3u32 {
            let p = params(k, 4);
            let cells = p.seed_len() as u32;
            for code in 0..(p.m() - 1).pow(cells) {
                let mut c = code;
                let seed = DigitSeed::from_fn(&p, |_, _| {
                    let a = c % (p.m() - 1);
                    c /= p.m() - 1;
                    a
                })
                .unwrap();
                assert!(mu_from_seed(&p, &seed).unwrap().is_monotone());
            }
        }
    }

    #[test]
    fn flip_on_worked_examples() {
        let p1 = params(1, 5);
        let seed = DigitSeed::from_entries(&p1, [((0, 0), 2)]).unwrap();
        let g = nu_j_from_seed(&p1, &seed, 0).unwrap();
        let got: Vec<u64> = g.values().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(got, vec![3, 2]);

        let p2 = params(2, 4);
        let g = nu_j_from_seed(&p2, &worked_seed(&p2), 0).unwrap();
        let got: Vec<u64> = g.values().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(got, vec![9, 10, 6, 7]);
    }

    #[test]
    fn flip_is_half_far() {
        let mut rng = stream(6, 0);
        for trial in 0..300 {
            let k = 1 + (trial % 10) as u32;
            let p = params(k, 5);
            let j = (trial % k as usize) as u32;
            let g = nu_j_from_seed(&p, &DigitSeed::sample(&p, &mut rng), j).unwrap();
            assert!(
                distance_to_monotone_line(&g) >= 1 << (k - 1),
                "k={k} j={j} distance too small"
            );
        }
    }

    #[test]
    fn flip_rewrites_level_j_digit() {
        // g's digit j equals a_s + (1 - b) with s the level-j prefix of x.
        let p = params(3, 6);
        let mut rng = stream(8, 0);
        let seed = DigitSeed::sample(&p, &mut rng);
        for j in 0..3u32 {
            let g = nu_j_from_seed(&p, &seed, j).unwrap();
            for x in 0..p.domain_size() {
                let digits = g.value(x).to_digits(p.k(), p.m()).unwrap();
                let prefix = x >> (p.k() - j);
                let bit = (x >> (p.k() - 1 - j)) & 1;
                assert_eq!(digits[j as usize], seed.a(j, prefix) + (1 - bit));
            }
        }
    }

    #[test]
    fn scaled_block_formula_on_worked_example() {
        let p = params(1, 5);
        let scaled = ScaledParams::new(2, p).unwrap();
        let s0 = DigitSeed::from_entries(&p, [((0, 0), 1)]).unwrap();
        let s1 = DigitSeed::from_entries(&p, [((0, 0), 3)]).unwrap();
        let f = mu_tilde_from_seeds(&scaled, &[s0.clone(), s1.clone()]).unwrap();
        let got: Vec<u64> = f.values().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(got, vec![1, 2, 8, 9]);
        assert_eq!(f.range_bound(), &RankValue::Int(10));
        assert!(f.is_monotone());
        // Flip block 1: its two values swap, block 0 unchanged.
        let g = nu_tilde_from_seeds(&scaled, &[s0.clone(), s1.clone()], 1, 0).unwrap();
        let got: Vec<u64> = g.values().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(got, vec![1, 2, 9, 8]);
        assert!(nu_tilde_from_seeds(&scaled, &[s0.clone(), s1.clone()], 2, 0).is_err());
        assert!(nu_tilde_from_seeds(&scaled, &[s0], 0, 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic_per_stream() {
        let p = params(4, 7);
        let scaled = ScaledParams::line(p);
        let f = sample(DistributionId::Mu, &scaled, &mut stream(42, 1)).unwrap();
        let g = sample(DistributionId::Mu, &scaled, &mut stream(42, 1)).unwrap();
        let h = sample(DistributionId::Mu, &scaled, &mut stream(42, 2)).unwrap();
        assert_eq!(f, g);
        assert_ne!(f, h);
    }

    #[test]
    fn scaled_nu_is_eps_far() {
        let mut rng = stream(9, 0);
        for trial in 0..100u64 {
            let k = 2 + (trial % 5) as u32;
            let ell = 1 + trial % 4;
            let scaled = ScaledParams::new(ell, params(k, 5)).unwrap();
            let f = sample(DistributionId::NuTilde, &scaled, &mut rng).unwrap();
            assert!(distance_to_monotone_line(&f) >= scaled.eps_n());
        }
    }

    #[test]
    fn line_distributions_reject_multiple_blocks() {
        let scaled = ScaledParams::new(2, params(3, 5)).unwrap();
        assert!(sample(DistributionId::Mu, &scaled, &mut stream(0, 0)).is_err());
        assert!(sample(DistributionId::MuTilde, &scaled, &mut stream(0, 0)).is_ok());
    }

    #[test]
    fn distribution_names_round_trip() {
        for name in ["mu", "nu", "nu-j:3", "mu-tilde", "nu-tilde", "nu-tilde:2:1"] {
            let id: DistributionId = name.parse().unwrap();
            assert_eq!(id.to_string(), name);
        }
        assert!("mu-j:1".parse::<DistributionId>().is_err());
        assert!("nu-tilde:x:1".parse::<DistributionId>().is_err());
    }

    #[test]
    fn cubic_base_preset() {
        let p = MuParams::cubic_base(5).unwrap();
        assert_eq!(p.m(), 125);
        assert_eq!(p.domain_size(), 32);
        let f = mu_from_seed(&p, &DigitSeed::sample(&p, &mut stream(3, 0))).unwrap();
        assert!(f.is_monotone());
        assert!(MuParams::cubic_base(1).is_err());
    }

    #[test]
    fn incomplete_seed_is_rejected() {
        let p = params(2, 5);
        let partial = DigitSeed::from_entries(&p, [((0, 0), 1), ((1, 0), 2)]);
        assert!(partial.is_err());
    }

    #[test]
    fn grid_point_worked_examples() {
        assert_eq!(grid_point(0, 3, 2).unwrap(), vec![0, 0, 0]);
        assert_eq!(grid_point(0b110100, 3, 2).unwrap(), vec![3, 1, 0]);
        assert!(grid_point(1 << 6, 3, 2).is_err());
    }

    #[test]
    fn single_bit_pairs_stay_comparable_on_grid() {
        for (d, b) in [(2u32, 3u32), (3, 2), (4, 3)] {
            let total = d * b;
            let order = grid_order(d, b).unwrap();
            for x in 0..(1u64 << total) {
                for bit in 0..total {
                    let y = x | (1 << bit);
                    if y == x {
                        continue;
                    }
                    let gx = grid_point(x & !(1 << bit), d, b).unwrap();
                    let gy = grid_point(y, d, b).unwrap();
                    assert!(gx.iter().zip(&gy).all(|(a, b)| a <= b));
                    assert!(order.leq(x & !(1 << bit), y));
                }
            }
        }
    }
}
