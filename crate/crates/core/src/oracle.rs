//! Boolean oracles `f: {0,1}^n -> {0,1}` and their phase unitaries.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Largest argument width; keeps `2^n` within the linear-algebra limit.
pub const MAX_BITS: usize = 10;

/// Default cap on the number of enumerated balanced oracles (exhaustive up to n = 4).
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionClass {
    Constant,
    Balanced,
    Neither,
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FunctionClass::Constant => "constant",
            FunctionClass::Balanced => "balanced",
            FunctionClass::Neither => "neither",
        };
        f.write_str(s)
    }
}

/// Truth table of a Boolean function; `table[x] = f(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanOracle {
    n: usize,
    table: Vec<bool>,
}

fn check_bits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_BITS {
        return Err(Error::InvalidOracle(format!("n must be in 1..={MAX_BITS}, got {n}")));
    }
    Ok(())
}

impl BooleanOracle {
    pub fn new(n: usize, table: Vec<bool>) -> Result<Self> {
        check_bits(n)?;
        if table.len() != 1 << n {
            return Err(Error::InvalidOracle(format!(
                "truth table has {} entries, expected 2^{n} = {}",
                table.len(),
                1usize << n
            )));
        }
        Ok(BooleanOracle { n, table })
    }

    /// Constant oracle returning `value` everywhere.
    pub fn constant(n: usize, value: bool) -> Result<Self> {
        check_bits(n)?;
        Ok(BooleanOracle { n, table: vec![value; 1 << n] })
    }

    /// Parses a bit string whose leftmost character is `f(0)`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let table = bits
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidOracle(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let len = table.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidOracle(format!(
                "bit string length must be a power of two >= 2, got {len}"
            )));
        }
        Self::new(len.trailing_zeros() as usize, table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N = 2^n`
    pub fn domain_size(&self) -> usize {
        self.table.len()
    }

    pub fn truth_table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, x: usize) -> bool {
        self.table[x]
    }

    pub fn popcount(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    pub fn classify(&self) -> FunctionClass {
        let ones = self.popcount();
        let size = self.domain_size();
        if ones == 0 || ones == size {
            FunctionClass::Constant
        } else if 2 * ones == size {
            FunctionClass::Balanced
        } else {
            FunctionClass::Neither
        }
    }

    /// Diagonal of the phase oracle: `(-1)^f(x)`.
    pub fn signs(&self) -> Vec<f64> {
        self.table.iter().map(|&b| if b { -1.0 } else { 1.0 }).collect()
    }

    /// `U_f |x> = (-1)^f(x) |x>`
    pub fn unitary(&self) -> ComplexMatrix {
        let diag: Vec<C64> = self.signs().into_iter().map(|s| C64::new(s, 0.0)).collect();
        ComplexMatrix::from_diag(&diag)
    }

    /// Bit `x` holds `f(x)`. Only for `N <= 64`.
    pub(crate) fn mask(&self) -> u64 {
        debug_assert!(self.domain_size() <= 64);
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0u64, |acc, (x, _)| acc | (1 << x))
    }
}

impl fmt::Display for BooleanOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.table {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BooleanOracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_bits(s)
    }
}

impl Serialize for BooleanOracle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BooleanOracle {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Self::from_bits(&s).map_err(serde::de::Error::custom)
    }
}

/// The all-zeros and all-ones oracles, in that order.
pub fn enumerate_constant(n: usize) -> Result<Vec<BooleanOracle>> {
    Ok(vec![BooleanOracle::constant(n, false)?, BooleanOracle::constant(n, true)?])
}

/// `C(2^n, 2^(n-1))`, or `None` on overflow.
pub fn balanced_count(n: usize) -> Option<u128> {
    let size = 1u128.checked_shl(n as u32)?;
    binomial(size, size / 2)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Every balanced oracle, ascending by truth table read as an integer with `f(0)` most significant.
pub fn enumerate_balanced(n: usize) -> Result<Vec<BooleanOracle>> {
    enumerate_balanced_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_balanced_capped(n: usize, cap: u128) -> Result<Vec<BooleanOracle>> {
    check_bits(n)?;
    let count = balanced_count(n).filter(|&c| c <= cap).ok_or_else(|| {
        Error::ResourceLimit(format!(
            "n = {n} has {} balanced oracles, cap is {cap}",
            balanced_count(n).map_or_else(|| "too many".to_string(), |c| c.to_string())
        ))
    })?;
    let size = 1usize << n;
    if size > 64 {
        return Err(Error::ResourceLimit(format!("n = {n} exceeds the packed enumeration width")));
    }

    let mut out = Vec::with_capacity(count as usize);
    let limit: u128 = 1 << size;
    // Gosper's hack: successive integers with the same popcount, ascending.
    let mut v: u128 = (1 << (size / 2)) - 1;
    while v < limit {
        let table = (0..size).map(|x| (v >> (size - 1 - x)) & 1 == 1).collect();
        out.push(BooleanOracle { n, table });
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// Constant oracles followed by balanced oracles.
pub fn enumerate_admissible(n: usize) -> Result<Vec<BooleanOracle>> {
    let mut all = enumerate_constant(n)?;
    all.extend(enumerate_balanced(n)?);
    Ok(all)
}
