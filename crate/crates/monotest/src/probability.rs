//! Exact agreement probabilities and support enumeration.
//!
//! Agreement events factor through the seed digits: a partial assignment
//! pins `a_s = digit_i(value) - bit_i(point)` for every assigned point and
//! level, so its probability under the monotone family is
//! `(1/(m-1))^(#constrained prefixes)`, or zero on any conflict or
//! out-of-range digit. Flips relocate the constraints (the flipped function
//! agrees iff the base function agrees on flipped points), mixtures average,
//! and independent blocks multiply. Everything is exact rational arithmetic;
//! no floating point.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::function::{LineFunction, PartialAssignment};
use crate::instances::{
    mu_from_seed, mu_tilde_from_seeds, nu_j_from_seed, nu_tilde_from_seeds, DigitSeed,
    DistributionId, MuParams, ScaledParams,
};

/// Cap on `support size * mixture size` for exhaustive enumeration.
pub const ENUMERATION_CAP: u128 = 10_000_000;

/// One assigned point inside a block: local index and k-digit value.
type LocalEntry = (u64, Vec<u64>);

/// Probability that a base-family draw agrees with the given local entries.
fn mu_local_probability(params: &MuParams, entries: &[LocalEntry]) -> BigRational {
    let k = params.k();
    let m = params.m();
    let mut constraints: HashMap<(u32, u64), u64> = HashMap::new();
    for (x, digits) in entries {
        for i in 0..k {
            let prefix = x >> (k - i);
            let bit = (x >> (k - 1 - i)) & 1;
            let digit = digits[i as usize];
            if digit < bit {
                return BigRational::zero();
            }
            let a = digit - bit;
            if a > m - 2 {
                return BigRational::zero();
            }
            match constraints.insert((i, prefix), a) {
                Some(previous) if previous != a => return BigRational::zero(),
                _ => {}
            }
        }
    }
    inv_pow(m - 1, constraints.len() as u32)
}

/// `(1/base)^exp` as an exact rational.
fn inv_pow(base: u64, exp: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(base).pow(exp))
}

fn flip_entries(params: &MuParams, entries: &[LocalEntry], j: u32) -> Vec<LocalEntry> {
    let mask = 1u64 << (params.k() - 1 - j);
    entries.iter().map(|(x, d)| (x ^ mask, d.clone())).collect()
}

/// Probability that the single-level flip at `j` agrees: the flipped draw
/// agrees at `x` iff the base draw agrees at `x xor 2^(k-1-j)`.
fn nu_j_local_probability(params: &MuParams, entries: &[LocalEntry], j: u32) -> BigRational {
    mu_local_probability(params, &flip_entries(params, entries, j))
}

fn biguint_digits(mut v: BigUint, k: u32, m: u64) -> Vec<u64> {
    let base = BigUint::from(m);
    let mut out = vec![0u64; k as usize];
    for slot in out.iter_mut().rev() {
        let (q, r) = v.div_rem(&base);
        *slot = r.to_u64().expect("remainder below a u64 base");
        v = q;
    }
    debug_assert!(v.is_zero());
    out
}

/// The assigned points of each block, with values reduced to block-local
/// digits. `None` when some value sits outside its block's stripe, which
/// makes the agreement probability exactly zero for every variant.
fn split_blocks(
    alpha: &PartialAssignment,
    scaled: &ScaledParams,
) -> Result<Option<Vec<Vec<LocalEntry>>>> {
    let params = scaled.mu();
    let n = scaled.domain_size();
    let bound = scaled.range_bound().to_biguint();
    let block_len = params.domain_size();
    let stripe = params.range_bound().to_biguint();
    let mut blocks: Vec<Vec<LocalEntry>> = vec![Vec::new(); scaled.ell() as usize];
    for (point, value) in alpha.iter() {
        if point >= n {
            return Err(Error::PointOutOfDomain { point, n });
        }
        let big = value.to_biguint();
        if big >= bound {
            return Err(Error::ValueOutOfRange {
                value: value.to_string(),
                bound: scaled.range_bound().to_string(),
            });
        }
        let s = point / block_len;
        let base = &stripe * s;
        if big < base || big >= &base + &stripe {
            return Ok(None);
        }
        let digits = biguint_digits(big - base, params.k(), params.m());
        blocks[s as usize].push((point % block_len, digits));
    }
    Ok(Some(blocks))
}

/// Exact probability that a draw from the distribution agrees with `alpha`.
pub fn agreement_probability(
    alpha: &PartialAssignment,
    id: DistributionId,
    scaled: &ScaledParams,
) -> Result<BigRational> {
    id.validate(scaled)?;
    let params = scaled.mu();
    let k = params.k();
    let Some(blocks) = split_blocks(alpha, scaled)? else {
        return Ok(BigRational::zero());
    };

    let prob = match id {
        DistributionId::Mu => mu_local_probability(params, &blocks[0]),
        DistributionId::NuJ(j) => nu_j_local_probability(params, &blocks[0], j),
        DistributionId::Nu => {
            let sum: BigRational = (0..k)
                .map(|j| nu_j_local_probability(params, &blocks[0], j))
                .sum();
            sum / BigRational::from(BigInt::from(k))
        }
        DistributionId::MuTilde => blocks
            .iter()
            .map(|entries| mu_local_probability(params, entries))
            .product(),
        DistributionId::NuTildeTJ(t, j) => blocks
            .iter()
            .enumerate()
            .map(|(s, entries)| {
                if s as u64 == t {
                    nu_j_local_probability(params, entries, j)
                } else {
                    mu_local_probability(params, entries)
                }
            })
            .product(),
        DistributionId::NuTilde => {
            let base: Vec<BigRational> = blocks
                .iter()
                .map(|entries| mu_local_probability(params, entries))
                .collect();
            // prefix[t] * suffix[t] = product of base probabilities off block t.
            let ell = base.len();
            let mut prefix = vec![BigRational::one(); ell + 1];
            for (t, p) in base.iter().enumerate() {
                prefix[t + 1] = &prefix[t] * p;
            }
            let mut suffix = vec![BigRational::one(); ell + 1];
            for t in (0..ell).rev() {
                suffix[t] = &suffix[t + 1] * &base[t];
            }
            let mut sum = BigRational::zero();
            for (t, entries) in blocks.iter().enumerate() {
                let off_block = &prefix[t] * &suffix[t + 1];
                for j in 0..k {
                    sum += &off_block * nu_j_local_probability(params, entries, j);
                }
            }
            sum / BigRational::from(BigInt::from(ell as u64 * k as u64))
        }
    };
    Ok(prob)
}

/// The full support of a distribution with exact weights. Duplicate
/// functions arising from different mixture components are merged; weights
/// sum to one. Fails with a capacity error once
/// `support * mixture > ENUMERATION_CAP`.
pub fn enumerate_distribution(
    id: DistributionId,
    scaled: &ScaledParams,
) -> Result<Vec<(LineFunction, BigRational)>> {
    id.validate(scaled)?;
    let params = scaled.mu();
    let m = params.m();
    let cells = scaled.ell() * params.seed_len();
    let seed_count = (m as u128 - 1)
        .checked_pow(u32::try_from(cells).map_err(|_| Error::capacity("too many seed cells"))?)
        .ok_or_else(|| Error::capacity("seed space overflows u128"))?;
    let mixture: u128 = match id {
        DistributionId::Nu => params.k() as u128,
        DistributionId::NuTilde => scaled.ell() as u128 * params.k() as u128,
        _ => 1,
    };
    let total = seed_count
        .checked_mul(mixture)
        .ok_or_else(|| Error::capacity("enumeration size overflows u128"))?;
    if total > ENUMERATION_CAP {
        return Err(Error::capacity(format!(
            "enumeration needs {total} weighted functions, cap is {ENUMERATION_CAP}"
        )));
    }

    let components: Vec<Option<(u64, u32)>> = match id {
        DistributionId::Mu | DistributionId::MuTilde => vec![None],
        DistributionId::NuJ(j) => vec![Some((0, j))],
        DistributionId::NuTildeTJ(t, j) => vec![Some((t, j))],
        DistributionId::Nu => (0..params.k()).map(|j| Some((0, j))).collect(),
        DistributionId::NuTilde => (0..scaled.ell())
            .flat_map(|t| (0..params.k()).map(move |j| Some((t, j))))
            .collect(),
    };
    let weight = BigRational::new(
        BigInt::one(),
        BigInt::from(components.len() as u64) * BigInt::from(m - 1).pow(cells as u32),
    );

    let mut out: Vec<(LineFunction, BigRational)> = Vec::new();
    for component in &components {
        for code in 0..seed_count {
            let seeds = seeds_from_code(scaled, code);
            let f = match (id.is_tilde(), component) {
                (false, None) => mu_from_seed(params, &seeds[0])?,
                (false, Some((_, j))) => nu_j_from_seed(params, &seeds[0], *j)?,
                (true, None) => mu_tilde_from_seeds(scaled, &seeds)?,
                (true, Some((t, j))) => nu_tilde_from_seeds(scaled, &seeds, *t, *j)?,
            };
            out.push((f, weight.clone()));
        }
    }

    out.sort_by(|a, b| a.0.values().cmp(b.0.values()));
    let mut merged: Vec<(LineFunction, BigRational)> = Vec::with_capacity(out.len());
    for (f, w) in out {
        match merged.last_mut() {
            Some((g, acc)) if g.values() == f.values() => *acc += w,
            _ => merged.push((f, w)),
        }
    }
    Ok(merged)
}

/// Decode the `code`-th point of the seed-tuple space, blocks in order and
/// heap order within each block.
fn seeds_from_code(scaled: &ScaledParams, mut code: u128) -> Vec<DigitSeed> {
    let params = scaled.mu();
    let radix = params.m() as u128 - 1;
    (0..scaled.ell())
        .map(|_| {
            DigitSeed::from_fn(params, |_, _| {
                let a = (code % radix) as u64;
                code /= radix;
                a
            })
            .expect("digits below m-1 by construction")
        })
        .collect()
}
