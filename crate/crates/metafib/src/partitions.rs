//! The binary partition function, the Prouhet–Thue–Morse signs, and the
//! alternating window sums that tie both to the `h` family.
//!
//! `bin(n)` counts partitions of `n` into powers of two and satisfies
//! `bin(0) = 1`, `bin(2n) = bin(2n-1) + bin(n)`, `bin(2n+1) = bin(2n)`.
//! The Thue–Morse sign of `n` is `+1` or `-1` according to the parity of the
//! binary digit sum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::closed::h_values;
use crate::{Error, Result};

/// Dense table of `bin(0..=n_max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinTable {
    pub values: Vec<BigInt>,
}

impl BinTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// CSV dump with a header row: `index,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }
}

/// Builds `bin(0..=n_max)` from the defining recursion.
pub fn bin_table(n_max: u64) -> BinTable {
    let len = (n_max + 1) as usize;
    let mut values: Vec<BigInt> = Vec::with_capacity(len);
    for i in 0..len {
        let x = if i == 0 {
            BigInt::one()
        } else if i % 2 == 1 {
            values[i - 1].clone()
        } else {
            &values[i - 1] + &values[i / 2]
        };
        values.push(x);
    }
    BinTable { values }
}

/// A Thue–Morse sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtmValue {
    Plus,
    Minus,
}

impl PtmValue {
    pub fn sign(self) -> i64 {
        match self {
            PtmValue::Plus => 1,
            PtmValue::Minus => -1,
        }
    }

    /// The 0/1 reading used by automata outputs: `+1 -> 0`, `-1 -> 1`.
    pub fn bit(self) -> u8 {
        match self {
            PtmValue::Plus => 0,
            PtmValue::Minus => 1,
        }
    }
}

/// Thue–Morse sign of `n`: parity of the binary digit sum.
pub fn ptm(n: u64) -> PtmValue {
    if n.count_ones() % 2 == 0 {
        PtmValue::Plus
    } else {
        PtmValue::Minus
    }
}

/// Signed window sum over `h`: `sum_{i < 2^k} t_i h(n - 2i)`.
///
/// Only defined for `n >= 2^(k+1) - 2`, where every referenced index is
/// nonnegative; smaller `n` is a usage error. `h` must cover `0..=n`.
pub fn ptm_window_sum(k: u32, n: u64, h: &[BigInt]) -> Result<BigInt> {
    let width = 1u128 << (k + 1);
    if (n as u128) + 2 < width {
        return Err(Error::Usage(format!(
            "window sum needs n >= 2^(k+1) - 2; got k={k}, n={n}"
        )));
    }
    if (n as usize) >= h.len() {
        return Err(Error::Usage(format!(
            "h table of length {} does not cover index {n}",
            h.len()
        )));
    }
    let mut acc = BigInt::zero();
    for i in 0..(1u64 << k) {
        let term = &h[(n - 2 * i) as usize];
        match ptm(i) {
            PtmValue::Plus => acc += term,
            PtmValue::Minus => acc -= term,
        }
    }
    Ok(acc)
}

/// Verifies the halving rule of the window sums,
/// `F(k, 2n) = F(k-1, n)`, for `1 <= k <= k_max` and admissible `n <= n_max`.
pub fn check_window_sum_recursion(k_max: u32, n_max: u64) -> bool {
    let h = h_values(1, 1, 2 * n_max);
    for k in 1..=k_max {
        let lo = (1u64 << k) - 1;
        for n in lo..=n_max {
            let left = ptm_window_sum(k, 2 * n, &h).expect("admissible by construction");
            let right = ptm_window_sum(k - 1, n, &h).expect("admissible by construction");
            if left != right {
                return false;
            }
        }
    }
    true
}

/// Checks `sum_{i < 2^k} t_i h(2^(k+1) n + 2^k - 2i) = n + 1` exactly.
pub fn check_ptm_identity(k: u32, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Usage("identity requires n >= 1".into()));
    }
    let top = (1u64 << (k + 1)) * n + (1u64 << k);
    let h = h_values(1, 1, top);
    let sum = ptm_window_sum(k, top, &h)?;
    Ok(sum == BigInt::from(n + 1))
}

/// Checks the signed power sum `sum_{i < 2^k} t_i i^m = 0`, claimed for all
/// `m < k`; `m >= k` is a usage error.
pub fn check_ptm_power_sum(k: u32, m: u32) -> Result<bool> {
    if m >= k {
        return Err(Error::Usage("power sum vanishes only for m < k".into()));
    }
    let mut acc = BigInt::zero();
    for i in 0..(1u64 << k) {
        // 0^0 = 1 by the empty-product convention.
        let pow = BigInt::from(i).pow(m);
        match ptm(i) {
            PtmValue::Plus => acc += pow,
            PtmValue::Minus => acc -= pow,
        }
    }
    Ok(acc.is_zero())
}

/// Checks `h_{1,b}(2n+1) = (b-2) bin(n+1) + h_{1,1}(2n+2)` for all
/// `n <= n_max`; requires `b >= 2`.
pub fn check_h1b_bin_link(b: u64, n_max: u64) -> Result<bool> {
    if b < 2 {
        return Err(Error::Usage(
            "the bin link is only claimed for b >= 2".into(),
        ));
    }
    let bins = bin_table(n_max + 1);
    let h11 = h_values(1, 1, 2 * n_max + 2);
    let h1b = h_values(1, b, 2 * n_max + 1);
    let factor = BigInt::from(b) - 2;
    for n in 0..=n_max as usize {
        let expect = &factor * &bins.values[n + 1] + &h11[2 * n + 2];
        if h1b[2 * n + 1] != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One row of the growth trend report for `bin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendPoint {
    pub k: u32,
    /// `bitlength(bin(2^k)) / (k^2 / 2)`, rounded to 3 decimals.
    pub ratio: f64,
}

/// Reports how fast `log2 bin(2^k)` approaches `k^2/2`. Informational:
/// the limit is only reached far beyond desk scale, so no pass bound is
/// attached.
pub fn mahler_trend_report(k_min: u32, k_max: u32) -> Result<Vec<TrendPoint>> {
    if !(4 <= k_min && k_min <= k_max && k_max <= 20) {
        return Err(Error::Usage(
            "trend report accepts 4 <= k_min <= k_max <= 20".into(),
        ));
    }
    let table = bin_table(1u64 << k_max);
    let mut out = Vec::new();
    for k in k_min..=k_max {
        let bits = table.values[1usize << k].bits() as f64;
        let ratio = bits / (k as f64 * k as f64 / 2.0);
        out.push(TrendPoint {
            k,
            ratio: (ratio * 1000.0).round() / 1000.0,
        });
    }
    Ok(out)
}

/// `bin(n) mod 2` is 1 exactly at n = 0 and n = 1; handy for GF(2) series.
pub fn bin_parity(table: &BinTable, n: usize) -> u8 {
    if table.values[n].is_odd() {
        1
    } else {
        0
    }
}
