//! Functions on the line, partial assignments, and poset orders.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::value::RankValue;

/// A total function `[n] -> [r]` stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFunction {
    values: Vec<RankValue>,
    range_bound: RankValue,
}

impl LineFunction {
    pub fn new(values: Vec<RankValue>, range_bound: RankValue) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| **v >= range_bound) {
            return Err(Error::ValueOutOfRange {
                value: v.to_string(),
                bound: range_bound.to_string(),
            });
        }
        Ok(LineFunction { values, range_bound })
    }

    /// Convenience constructor for small integer-valued functions; the range
    /// bound is one past the maximum value.
    pub fn from_ints(values: &[u64]) -> Self {
        let bound = values.iter().copied().max().map_or(1, |m| m + 1);
        LineFunction {
            values: values.iter().map(|&v| RankValue::Int(v)).collect(),
            range_bound: RankValue::Int(bound),
        }
    }

    pub fn n(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn range_bound(&self) -> &RankValue {
        &self.range_bound
    }

    pub fn values(&self) -> &[RankValue] {
        &self.values
    }

    /// Value at `x`; panics if `x` is outside the domain (use [`Self::get`]
    /// for checked access).
    pub fn value(&self, x: u64) -> &RankValue {
        &self.values[x as usize]
    }

    pub fn get(&self, x: u64) -> Result<&RankValue> {
        self.values
            .get(x as usize)
            .ok_or(Error::PointOutOfDomain { point: x, n: self.n() })
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// Write in the function file format: a header line `n r`, then one
    /// decimal value per line.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {}", self.n(), self.range_bound)?;
        for v in &self.values {
            writeln!(w, "{v}")?;
        }
        Ok(())
    }

    pub fn to_file_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("decimal output is ASCII")
    }

    /// Parse the function file format. Errors carry 1-based line numbers.
    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty input, expected header line `n r`"))?;
        let header = header.map_err(|e| parse_err(1, e.to_string()))?;
        let mut parts = header.split_whitespace();
        let n: u64 = parts
            .next()
            .ok_or_else(|| parse_err(1, "missing domain size"))?
            .parse()
            .map_err(|e| parse_err(1, format!("bad domain size: {e}")))?;
        let bound = parts
            .next()
            .ok_or_else(|| parse_err(1, "missing range bound"))?;
        let range_bound =
            RankValue::parse_decimal(bound).map_err(|e| parse_err(1, e.to_string()))?;
        if parts.next().is_some() {
            return Err(parse_err(1, "trailing tokens after `n r` header"));
        }
        let mut values = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let (idx, line) = lines
                .next()
                .ok_or_else(|| parse_err(values.len() + 2, "unexpected end of input"))?;
            let line = line.map_err(|e| parse_err(idx + 1, e.to_string()))?;
            let text = line.trim();
            values.push(
                RankValue::parse_decimal(text).map_err(|e| parse_err(idx + 1, e.to_string()))?,
            );
        }
        for (idx, line) in lines {
            let line = line.map_err(|e| parse_err(idx + 1, e.to_string()))?;
            if !line.trim().is_empty() {
                return Err(parse_err(idx + 1, "trailing content after values"));
            }
        }
        LineFunction::new(values, range_bound)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// A partial assignment of values to domain points.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    entries: BTreeMap<u64, RankValue>,
}

impl PartialAssignment {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(entries: impl IntoIterator<Item = (u64, RankValue)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (point, value) in entries {
            if map.insert(point, value).is_some() {
                return Err(Error::invalid(format!("duplicate point {point} in assignment")));
            }
        }
        Ok(PartialAssignment { entries: map })
    }

    pub fn weight(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, point: u64) -> Option<&RankValue> {
        self.entries.get(&point)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &RankValue)> {
        self.entries.iter().map(|(&p, v)| (p, v))
    }

    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }
}

/// Does `f` agree with `alpha` on every assigned point?
pub fn agrees(f: &LineFunction, alpha: &PartialAssignment) -> Result<bool> {
    for (point, value) in alpha.iter() {
        if f.get(point)? != value {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The partial orders this crate works over. Hypergrid points are indexed by
/// the row-major bijection `[side^dims] -> [side]^dims` (most significant
/// coordinate first), which for `side = 2^b` coincides with splitting the
/// binary representation into groups of `b` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetOrder {
    Line { n: u64 },
    Hypergrid { side: u64, dims: u32 },
}

impl PosetOrder {
    pub fn line(n: u64) -> Self {
        PosetOrder::Line { n }
    }

    pub fn hypergrid(side: u64, dims: u32) -> Result<Self> {
        if side < 1 || dims < 1 {
            return Err(Error::invalid("hypergrid needs side >= 1 and dims >= 1"));
        }
        let order = PosetOrder::Hypergrid { side, dims };
        order.ground_size()?;
        Ok(order)
    }

    pub fn ground_size(&self) -> Result<u64> {
        match *self {
            PosetOrder::Line { n } => Ok(n),
            PosetOrder::Hypergrid { side, dims } => {
                let mut acc: u64 = 1;
                for _ in 0..dims {
                    acc = acc
                        .checked_mul(side)
                        .ok_or_else(|| Error::capacity("hypergrid ground set overflows u64"))?;
                }
                Ok(acc)
            }
        }
    }

    /// Coordinates of the point with index `x`.
    pub fn coords(&self, x: u64) -> Vec<u64> {
        match *self {
            PosetOrder::Line { .. } => vec![x],
            PosetOrder::Hypergrid { side, dims } => {
                let mut out = vec![0u64; dims as usize];
                let mut rest = x;
                for slot in out.iter_mut().rev() {
                    *slot = rest % side;
                    rest /= side;
                }
                out
            }
        }
    }

    /// Partial-order comparison `x <= y` on indices.
    pub fn leq(&self, x: u64, y: u64) -> bool {
        match *self {
            PosetOrder::Line { .. } => x <= y,
            PosetOrder::Hypergrid { side, dims } => {
                let (mut a, mut b) = (x, y);
                for _ in 0..dims {
                    if a % side > b % side {
                        return false;
                    }
                    a /= side;
                    b /= side;
                }
                true
            }
        }
    }
}

/// A witnessed monotonicity violation: `x < y` in the poset but `f(x) > f(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ViolationPair {
    pub x: u64,
    pub y: u64,
}

impl ViolationPair {
    pub fn new(f: &LineFunction, order: &PosetOrder, x: u64, y: u64) -> Result<Self> {
        let n = order.ground_size()?;
        if x >= n {
            return Err(Error::PointOutOfDomain { point: x, n });
        }
        if y >= n {
            return Err(Error::PointOutOfDomain { point: y, n });
        }
        if x == y || !order.leq(x, y) || f.get(x)? <= f.get(y)? {
            return Err(Error::invalid(format!("({x}, {y}) is not a violating pair")));
        }
        Ok(ViolationPair { x, y })
    }

    pub(crate) fn unchecked(x: u64, y: u64) -> Self {
        ViolationPair { x, y }
    }

    /// Re-check the pair against a function on the line.
    pub fn is_violation_on_line(&self, f: &LineFunction) -> bool {
        self.x < self.y
            && self.y < f.n()
            && f.value(self.x) > f.value(self.y)
    }
}
