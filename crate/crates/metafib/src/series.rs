//! Truncated formal power series over the integers and over GF(2), and the
//! exact verification of every functional and algebraic equation the
//! sequence families satisfy.
//!
//! All arithmetic is exact through a fixed truncation order N; a checker
//! passes only if the residual series vanishes coefficient by coefficient.
//! There are no tolerances anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::automata::r_table;
use crate::closed::h_values;
use crate::partitions::{bin_table, ptm, PtmValue};
use crate::{Error, Result};

/// Truncated integer power series; `coeffs[n]` is the coefficient of x^n,
/// `0 <= n <= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesZ {
    coeffs: Vec<BigInt>,
}

impl SeriesZ {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0)
    }

    /// `x^k` (zero series if `k > order`).
    pub fn monomial(order: usize, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = BigInt::one();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series carries at least the constant term"
        );
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> BigInt) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// `1/(1 - x^m)`: ones at multiples of m.
    pub fn geometric_inv(order: usize, m: usize) -> Self {
        assert!(m >= 1);
        Self::from_fn(order, |n| {
            if n % m == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn assert_same_order(&self, rhs: &Self) {
        assert_eq!(self.order(), rhs.order(), "series orders must match");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Truncated product, exact through the common order.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    /// Substitutes x -> x^2: coefficient n moves to position 2n, positions
    /// beyond the order are dropped.
    pub fn substitute_square(&self) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (n, a) in self.coeffs.iter().enumerate() {
            if 2 * n > order {
                break;
            }
            coeffs[2 * n] = a.clone();
        }
        Self { coeffs }
    }

    /// Multiplies by `x^k`, dropping overflow past the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (n, a) in self.coeffs.iter().enumerate() {
            if n + k > order {
                break;
            }
            coeffs[n + k] = a.clone();
        }
        Self { coeffs }
    }

    /// Multiplies by `1/(1 - x^m)` in O(N): a running sum with stride m.
    pub fn mul_geometric_inv(&self, m: usize) -> Self {
        assert!(m >= 1);
        let mut coeffs = self.coeffs.clone();
        for n in m..coeffs.len() {
            let prev = coeffs[n - m].clone();
            coeffs[n] += prev;
        }
        Self { coeffs }
    }

    /// Multiplies by `(1 - x^m)` in O(N).
    pub fn mul_one_minus(&self, m: usize) -> Self {
        assert!(m >= 1);
        let mut coeffs = self.coeffs.clone();
        for n in (m..coeffs.len()).rev() {
            let prev = self.coeffs[n - m].clone();
            coeffs[n] -= prev;
        }
        Self { coeffs }
    }

    /// Multiplicative inverse; the constant term must be 1 or -1.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0 == &BigInt::one() || *c0 == -BigInt::one()) {
            return Err(Error::Usage(
                "inversion requires constant term +1 or -1".into(),
            ));
        }
        let order = self.order();
        let mut inv = vec![BigInt::zero(); order + 1];
        inv[0] = c0.clone(); // 1/c0 = c0 for c0 = +-1
        for n in 1..=order {
            let mut sum = BigInt::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !inv[n - k].is_zero() {
                    sum += &self.coeffs[k] * &inv[n - k];
                }
            }
            inv[n] = -c0 * sum; // divide by c0
        }
        Ok(Self { coeffs: inv })
    }

    /// CSV dump with a header row: `index,coefficient`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,coefficient\n");
        for (i, v) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }
}

/// Truncated power series over GF(2); `bits[n]` in {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesF2 {
    bits: Vec<u8>,
}

impl SeriesF2 {
    pub fn zero(order: usize) -> Self {
        Self {
            bits: vec![0; order + 1],
        }
    }

    pub fn monomial(order: usize, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.bits[k] = 1;
        }
        s
    }

    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(!bits.is_empty());
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        Self { bits }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> u8) -> Self {
        Self {
            bits: (0..=order).map(|n| f(n) & 1).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.bits.len() - 1
    }

    pub fn bit(&self, n: usize) -> u8 {
        self.bits[n]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    fn assert_same_order(&self, rhs: &Self) {
        assert_eq!(self.order(), rhs.order(), "series orders must match");
    }

    /// Addition = subtraction = XOR over GF(2).
    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        Self {
            bits: self
                .bits
                .iter()
                .zip(&rhs.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    /// Truncated product via word-packed shift-and-xor.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let len = self.bits.len();
        let words = len.div_ceil(64);
        let mut packed = vec![0u64; words];
        for (i, &b) in rhs.bits.iter().enumerate() {
            if b == 1 {
                packed[i / 64] |= 1 << (i % 64);
            }
        }
        let mut acc = vec![0u64; words];
        for (i, &b) in self.bits.iter().enumerate() {
            if b == 1 {
                xor_shifted(&mut acc, &packed, i);
            }
        }
        let bits = (0..len)
            .map(|i| ((acc[i / 64] >> (i % 64)) & 1) as u8)
            .collect();
        Self { bits }
    }

    pub fn substitute_square(&self) -> Self {
        let order = self.order();
        let mut bits = vec![0u8; order + 1];
        for (n, &b) in self.bits.iter().enumerate() {
            if 2 * n > order {
                break;
            }
            bits[2 * n] = b;
        }
        Self { bits }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut bits = vec![0u8; order + 1];
        for (n, &b) in self.bits.iter().enumerate() {
            if n + k > order {
                break;
            }
            bits[n + k] = b;
        }
        Self { bits }
    }

    pub fn mul_geometric_inv(&self, m: usize) -> Self {
        assert!(m >= 1);
        let mut bits = self.bits.clone();
        for n in m..bits.len() {
            bits[n] ^= bits[n - m];
        }
        Self { bits }
    }

    /// Over GF(2) multiplying by (1 - x^m) and (1 + x^m) coincide.
    pub fn mul_one_minus(&self, m: usize) -> Self {
        assert!(m >= 1);
        let mut bits = self.bits.clone();
        for n in (m..bits.len()).rev() {
            bits[n] ^= self.bits[n - m];
        }
        Self { bits }
    }

    pub fn invert_unit(&self) -> Result<Self> {
        if self.bits[0] != 1 {
            return Err(Error::Usage(
                "inversion over GF(2) requires constant term 1".into(),
            ));
        }
        let order = self.order();
        let mut inv = vec![0u8; order + 1];
        inv[0] = 1;
        for n in 1..=order {
            let mut sum = 0u8;
            for k in 1..=n {
                sum ^= self.bits[k] & inv[n - k];
            }
            inv[n] = sum;
        }
        Ok(Self { bits: inv })
    }

    /// CSV dump with a header row: `index,coefficient`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,coefficient\n");
        for (i, b) in self.bits.iter().enumerate() {
            out.push_str(&format!("{i},{b}\n"));
        }
        out
    }
}

/// `acc ^= src << shift` over packed 64-bit words, truncated to acc's length.
fn xor_shifted(acc: &mut [u64], src: &[u64], shift: usize) {
    let word_shift = shift / 64;
    let bit_shift = shift % 64;
    for w in 0..acc.len().saturating_sub(word_shift) {
        let mut v = src[w] << bit_shift;
        if bit_shift > 0 && w > 0 {
            v |= src[w - 1] >> (64 - bit_shift);
        }
        acc[w + word_shift] ^= v;
    }
}

/// Generating series of `h_{1,1}` through order N.
pub fn h_series(order: usize) -> SeriesZ {
    SeriesZ::from_coeffs(h_values(1, 1, order as u64))
}

/// Generating series of `h_{1,b}` through order N.
pub fn hb_series(b: u64, order: usize) -> SeriesZ {
    SeriesZ::from_coeffs(h_values(1, b, order as u64))
}

/// Generating series of `bin` through order N.
pub fn b_series(order: usize) -> SeriesZ {
    SeriesZ::from_coeffs(bin_table(order as u64).values)
}

/// Generating series of the Thue–Morse signs through order N.
pub fn t_series(order: usize) -> SeriesZ {
    SeriesZ::from_fn(order, |n| match ptm(n as u64) {
        PtmValue::Plus => BigInt::one(),
        PtmValue::Minus => -BigInt::one(),
    })
}

/// `G = H mod 2` over GF(2), built from the mod-2 recurrences.
pub fn g_series(order: usize) -> SeriesF2 {
    SeriesF2::from_bits(r_table(order as u64))
}

/// `G_b = H_b mod 2` over GF(2).
pub fn gb_series(b: u64, order: usize) -> SeriesF2 {
    let h = h_values(1, b, order as u64);
    SeriesF2::from_fn(order, |n| if h[n].is_odd() { 1 } else { 0 })
}

/// Residual of `H(x^2)/(1-x^2) - H(x) + x/(1-x^2)^2` through order N;
/// identically zero when the functional equation holds. Kept public so a
/// failing check can be dumped as CSV for inspection.
pub fn h_equation_residual(order: usize) -> Result<SeriesZ> {
    if order < 2 {
        return Err(Error::Usage("order must be at least 2".into()));
    }
    let h = h_series(order);
    let even_part = h.substitute_square().mul_geometric_inv(2);
    let odd_part = SeriesZ::geometric_inv(order, 2)
        .mul_geometric_inv(2)
        .shift_up(1);
    Ok(even_part.sub(&h).add(&odd_part))
}

/// Verifies `H(x^2)/(1-x^2) - H(x) + x/(1-x^2)^2 = 0` through order N.
pub fn check_h_equation(order: usize) -> Result<bool> {
    Ok(h_equation_residual(order)?.is_zero())
}

/// Residual of the `H_b` functional equation through order N, `b >= 2`.
pub fn hb_equation_residual(b: u64, order: usize) -> Result<SeriesZ> {
    if b < 2 {
        return Err(Error::Usage("the H_b equation is stated for b >= 2".into()));
    }
    if order < 2 {
        return Err(Error::Usage("order must be at least 2".into()));
    }
    let hb = hb_series(b, order);
    let term1 = hb.substitute_square().mul_geometric_inv(2).shift_up(1);
    let term2 = SeriesZ::geometric_inv(order, 2)
        .shift_up(1)
        .scalar_mul(&BigInt::from(b - 1));
    let term3 = SeriesZ::geometric_inv(order, 2).mul_geometric_inv(2);
    Ok(hb.sub(&term1).sub(&term2).sub(&term3))
}

/// Verifies `H_b = x H_b(x^2)/(1-x^2) + (b-1)x/(1-x^2) + 1/(1-x^2)^2`
/// through order N, for `b >= 2`.
pub fn check_hb_equation(b: u64, order: usize) -> Result<bool> {
    Ok(hb_equation_residual(b, order)?.is_zero())
}

/// Residual of `(1-x^2) G^2 + (1-x^2)^2 G + x` over GF(2) through order N.
pub fn g_algebraic_residual(order: usize) -> Result<SeriesF2> {
    if order < 2 {
        return Err(Error::Usage("order must be at least 2".into()));
    }
    let g = g_series(order);
    Ok(g.mul(&g)
        .mul_one_minus(2)
        .add(&g.mul_one_minus(2).mul_one_minus(2))
        .add(&SeriesF2::monomial(order, 1)))
}

/// Verifies `(1-x^2) G^2 + (1-x^2)^2 G + x = 0` over GF(2) through order N,
/// with G built from the mod-2 recurrences, and the Frobenius congruence
/// `G(x)^2 = G(x^2)` along the way.
pub fn check_g_algebraic(order: usize) -> Result<bool> {
    if order < 2 {
        return Err(Error::Usage("order must be at least 2".into()));
    }
    let g = g_series(order);
    if g.mul(&g) != g.substitute_square() {
        return Ok(false);
    }
    Ok(g_algebraic_residual(order)?.is_zero())
}

/// Residual of `x(1-x^2) G_b^2 - (1-x^2)^2 G_b + (b-1)x(1-x^2) + 1` over
/// GF(2) through order N, `b >= 2`.
pub fn fb_algebraic_residual(b: u64, order: usize) -> Result<SeriesF2> {
    if b < 2 {
        return Err(Error::Usage("the f_b equation is stated for b >= 2".into()));
    }
    let gb = gb_series(b, order);
    let mut residual = gb.mul(&gb).mul_one_minus(2).shift_up(1);
    residual = residual.add(&gb.mul_one_minus(2).mul_one_minus(2));
    if b % 2 == 0 {
        // (b-1) is odd: the x(1-x^2) term survives mod 2.
        residual = residual.add(&SeriesF2::monomial(order, 1).mul_one_minus(2));
    }
    residual = residual.add(&SeriesF2::monomial(order, 0));
    Ok(residual)
}

/// Verifies `x(1-x^2) G_b^2 - (1-x^2)^2 G_b + (b-1)x(1-x^2) + 1 = 0` over
/// GF(2) through order N, for `b >= 2`.
pub fn check_fb_algebraic(b: u64, order: usize) -> Result<bool> {
    Ok(fb_algebraic_residual(b, order)?.is_zero())
}

/// The split of H into the even bin part and the residue layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HDecomposition {
    /// Coefficients of the layered remainder `d`.
    pub d_coeffs: Vec<BigInt>,
    /// Both identities held: `H = B(x^2) + sum_i layer_i` and
    /// `h(2n) = bin(n) + d(2n)`.
    pub ok: bool,
}

/// Splits H as `B(x^2) + sum_{i>=1} layer_i` where
/// `layer_i = x^(2^(i-1)) / ((1-x^2)...(1-x^(2^i)) (1-x^(2^i)))`, checks the
/// sum against H and the coefficient identity `h(2n) = bin(n) + d(2n)`.
pub fn decompose_h(order: usize) -> Result<HDecomposition> {
    if order < 4 {
        return Err(Error::Usage("order must be at least 4".into()));
    }
    let h = h_series(order);
    let h_bar = b_series(order).substitute_square();
    let mut d = SeriesZ::zero(order);
    let mut i = 1u32;
    while (1usize << (i - 1)) <= order {
        let mut layer = SeriesZ::monomial(order, 1 << (i - 1));
        for j in 1..=i {
            layer = layer.mul_geometric_inv(1 << j);
        }
        layer = layer.mul_geometric_inv(1 << i);
        d = d.add(&layer);
        i += 1;
    }

    let sum_ok = h_bar.add(&d) == h;
    let bins = bin_table((order / 2) as u64);
    let coeff_ok = (0..=order / 2).all(|n| *h.coeff(2 * n) == &bins.values[n] + d.coeff(2 * n));
    Ok(HDecomposition {
        d_coeffs: d.coeffs,
        ok: sum_ok && coeff_ok,
    })
}

/// Result of the eventual-periodicity scan of a GF(2) series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalityReport {
    pub max_preperiod: usize,
    pub max_period: usize,
    /// Least (period, preperiod) pair under which the tail repeats, if any.
    pub found: Option<(usize, usize)>,
}

/// Exhaustively searches for an eventual period of the coefficient stream.
/// Over GF(2) a power series is rational exactly when its coefficients are
/// eventually periodic, so absence across the scanned window is evidence of
/// irrationality.
pub fn rationality_evidence(
    s: &SeriesF2,
    max_period: usize,
    max_preperiod: usize,
) -> Result<RationalityReport> {
    if s.order() < 2 * (max_period + max_preperiod) {
        return Err(Error::Usage(
            "series order must be at least twice the scanned period plus preperiod".into(),
        ));
    }
    let bits = s.bits();
    let mut found = None;
    'outer: for period in 1..=max_period {
        for pre in 0..=max_preperiod {
            if (pre..bits.len() - period).all(|n| bits[n] == bits[n + period]) {
                found = Some((period, pre));
                break 'outer;
            }
        }
    }
    Ok(RationalityReport {
        max_preperiod,
        max_period,
        found,
    })
}
