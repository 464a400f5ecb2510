//! Range values with a total order.
//!
//! A [`RankValue`] is either a machine integer (ingested data) or a base-`m`
//! digit vector, most significant digit first (generated instances, where the
//! range bound `m^k` overflows `u64` long before the constructions get
//! interesting). Both forms denote a non-negative integer and compare by
//! numeric value, so mixed-representation functions behave like plain
//! integer sequences.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Digit-vector form of a value: `base >= 2`, digits in `[0, base)`, most
/// significant first. The denoted integer is `sum(digits[i] * base^(len-1-i))`.
#[derive(Debug, Clone)]
pub struct DigitVec {
    base: u64,
    digits: Vec<u64>,
}

impl DigitVec {
    pub fn new(base: u64, digits: Vec<u64>) -> Result<Self> {
        if base < 2 {
            return Err(Error::invalid(format!("digit base must be >= 2, got {base}")));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::invalid(format!("digit {d} out of range for base {base}")));
        }
        Ok(DigitVec { base, digits })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn to_biguint(&self) -> BigUint {
        let base = BigUint::from(self.base);
        let mut acc = BigUint::zero();
        for &d in &self.digits {
            acc = acc * &base + BigUint::from(d);
        }
        acc
    }

    /// Numeric comparison of two same-base digit vectors; lexicographic after
    /// zero-extending the shorter one at the front.
    fn cmp_same_base(&self, other: &DigitVec) -> Ordering {
        debug_assert_eq!(self.base, other.base);
        let (a, b) = (&self.digits, &other.digits);
        if a.len() != b.len() {
            let (longer, shorter, flip) = if a.len() > b.len() {
                (a, b, false)
            } else {
                (b, a, true)
            };
            let extra = longer.len() - shorter.len();
            if longer[..extra].iter().any(|&d| d != 0) {
                return if flip { Ordering::Less } else { Ordering::Greater };
            }
            let ord = longer[extra..].cmp(shorter.as_slice());
            return if flip { ord.reverse() } else { ord };
        }
        a.cmp(b)
    }
}

/// A non-negative range value under a total order.
#[derive(Debug, Clone)]
pub enum RankValue {
    Int(u64),
    Digits(DigitVec),
}

impl RankValue {
    pub fn from_digits(base: u64, digits: Vec<u64>) -> Result<Self> {
        Ok(RankValue::Digits(DigitVec::new(base, digits)?))
    }

    /// Parse a decimal literal. Values that fit in 64 bits become `Int`;
    /// larger ones become a base-10 digit vector.
    pub fn parse_decimal(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::invalid(format!("not a decimal literal: {s:?}")));
        }
        if let Ok(v) = s.parse::<u64>() {
            return Ok(RankValue::Int(v));
        }
        let trimmed = s.trim_start_matches('0');
        let digits: Vec<u64> = trimmed.bytes().map(|b| (b - b'0') as u64).collect();
        RankValue::from_digits(10, digits)
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            RankValue::Int(v) => BigUint::from(*v),
            RankValue::Digits(d) => d.to_biguint(),
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            RankValue::Int(v) => Some(*v),
            RankValue::Digits(d) => d.to_biguint().to_u64(),
        }
    }

    /// The `k`-digit base-`m` expansion with leading zeros, most significant
    /// digit first. Fails if the value does not fit in `k` digits.
    pub fn to_digits(&self, k: u32, m: u64) -> Result<Vec<u64>> {
        let k = k as usize;
        if let RankValue::Digits(d) = self {
            if d.base == m {
                match d.digits.len().cmp(&k) {
                    Ordering::Equal => return Ok(d.digits.clone()),
                    Ordering::Less => {
                        let mut out = vec![0; k - d.digits.len()];
                        out.extend_from_slice(&d.digits);
                        return Ok(out);
                    }
                    Ordering::Greater => {
                        let extra = d.digits.len() - k;
                        if d.digits[..extra].iter().all(|&x| x == 0) {
                            return Ok(d.digits[extra..].to_vec());
                        }
                        return Err(Error::ValueOutOfRange {
                            value: self.to_string(),
                            bound: format!("{m}^{k}"),
                        });
                    }
                }
            }
        }
        let mut big = self.to_biguint();
        let base = BigUint::from(m);
        let mut out = vec![0u64; k];
        for slot in out.iter_mut().rev() {
            let (q, r) = big.div_rem(&base);
            *slot = r.to_u64().expect("remainder below a u64 base");
            big = q;
        }
        if !big.is_zero() {
            return Err(Error::ValueOutOfRange {
                value: self.to_string(),
                bound: format!("{m}^{k}"),
            });
        }
        Ok(out)
    }
}

impl From<u64> for RankValue {
    fn from(v: u64) -> Self {
        RankValue::Int(v)
    }
}

impl From<BigUint> for RankValue {
    fn from(v: BigUint) -> Self {
        match v.to_u64() {
            Some(small) => RankValue::Int(small),
            None => {
                let digits = v.to_string().bytes().map(|b| (b - b'0') as u64).collect();
                RankValue::Digits(DigitVec { base: 10, digits })
            }
        }
    }
}

impl Ord for RankValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RankValue::Int(a), RankValue::Int(b)) => a.cmp(b),
            (RankValue::Digits(a), RankValue::Digits(b)) if a.base == b.base => {
                a.cmp_same_base(b)
            }
            _ => self.to_biguint().cmp(&other.to_biguint()),
        }
    }
}

impl PartialOrd for RankValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for RankValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for RankValue {}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Int(v) => write!(f, "{v}"),
            RankValue::Digits(d) => write!(f, "{}", d.to_biguint()),
        }
    }
}

impl Serialize for RankValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RankValue::Int(v) => serializer.serialize_u64(*v),
            RankValue::Digits(_) => serializer.serialize_str(&self.to_string()),
        }
    }
}
