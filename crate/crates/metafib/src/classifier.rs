//! Automatic detection of eventual laws in residue-class subsequences:
//! eventual constancy, eventual arithmetic progressions, and exact linear
//! recurrences with integer coefficients.
//!
//! Detection is exact replay, not fitting: a verdict is only issued if the
//! claimed law regenerates every observed term from its start index to the
//! end of the table. Coefficients come from exact rational elimination on
//! the observed big integers and are only accepted when integral.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::recurrence::{eval_range, subsequence, NegMode, RecurrenceSpec, SequenceTable, Term};
use crate::{Error, Result};

/// The law found for one residue-class subsequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    EventuallyConstant {
        start: u64,
        #[serde(with = "crate::bigjson")]
        value: BigInt,
        witness_window: u64,
    },
    EventuallyAp {
        start: u64,
        #[serde(with = "crate::bigjson")]
        difference: BigInt,
        witness_window: u64,
    },
    LinearRecurrence {
        start: u64,
        /// `s(n) = coeffs[0] s(n-1) + ... + coeffs[r-1] s(n-r)`.
        #[serde(with = "crate::bigjson::vec")]
        coeffs: Vec<BigInt>,
        witness_window: u64,
    },
    Dead {
        at: u64,
    },
    Unclassified,
}

impl Verdict {
    /// Replays the claimed law against the observed values.
    pub fn replays(&self, values: &[BigInt]) -> bool {
        match self {
            Verdict::EventuallyConstant { start, value, .. } => {
                values[*start as usize..].iter().all(|v| v == value)
            }
            Verdict::EventuallyAp {
                start, difference, ..
            } => values[*start as usize..]
                .windows(2)
                .all(|w| &w[1] - &w[0] == *difference),
            Verdict::LinearRecurrence { start, coeffs, .. } => {
                let r = coeffs.len();
                let s = *start as usize;
                if values.len() < s + r {
                    return false;
                }
                (s + r..values.len()).all(|t| {
                    let mut acc = BigInt::zero();
                    for (i, c) in coeffs.iter().enumerate() {
                        acc += c * &values[t - 1 - i];
                    }
                    acc == values[t]
                })
            }
            Verdict::Dead { .. } | Verdict::Unclassified => true,
        }
    }
}

/// Finds the least `start` from which first differences are constant, if
/// the stable suffix carries at least `min_tail` terms. A zero difference
/// is reported as such (the sequence is eventually constant).
pub fn detect_eventual_ap(values: &[BigInt], min_tail: usize) -> Option<(usize, BigInt)> {
    if values.len() < min_tail.max(2) {
        return None;
    }
    let last_diff = &values[values.len() - 1] - &values[values.len() - 2];
    let mut start = values.len() - 2;
    while start > 0 && &values[start] - &values[start - 1] == last_diff {
        start -= 1;
    }
    if values.len() - start < min_tail.max(2) {
        return None;
    }
    Some((start, last_diff))
}

/// Solves for integer coefficients `c` with
/// `w[t] = sum_i c_i w[t-i]` across all usable rows of the window; exact
/// rational elimination, integral solutions only.
fn solve_recurrence(window: &[BigInt], order: usize) -> Option<Vec<BigInt>> {
    let rows = window.len().checked_sub(order)?;
    if rows < order {
        return None;
    }
    // Augmented matrix over exact rationals.
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|k| {
            let t = order + k;
            let mut row: Vec<BigRational> = (1..=order)
                .map(|i| BigRational::from_integer(window[t - i].clone()))
                .collect();
            row.push(BigRational::from_integer(window[t].clone()));
            row
        })
        .collect();

    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; order];
    let mut next_row = 0usize;
    for col in 0..order {
        let Some(p) = (next_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, p);
        let inv = m[next_row][col].clone();
        for entry in m[next_row].iter_mut() {
            *entry /= inv.clone();
        }
        for r in 0..rows {
            if r != next_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[next_row].clone();
                for (entry, pivot) in m[r].iter_mut().zip(&pivot_row) {
                    *entry -= &factor * pivot;
                }
            }
        }
        pivot_row_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    // Inconsistent system: a zero row with nonzero right-hand side.
    for row in &m {
        if row[..order].iter().all(Zero::is_zero) && !row[order].is_zero() {
            return None;
        }
    }
    // Free variables default to zero.
    let mut coeffs = Vec::with_capacity(order);
    for pivot in &pivot_row_of_col {
        let value = match pivot {
            Some(r) => m[*r][order].clone(),
            None => BigRational::zero(),
        };
        if !value.denom().is_one() && *value.denom() != -BigInt::one() {
            return None;
        }
        coeffs.push(value.to_integer());
    }
    Some(coeffs)
}

/// Searches for the minimal-order exact integer linear recurrence that
/// reproduces the last `window` values, then extends it backward as far as
/// replay succeeds. Returns the coefficient vector and the earliest start.
///
/// Coefficients are solved on a short block at the end of the window and
/// then verified across the whole window with integer arithmetic, so large
/// windows cost integer replay rather than rational elimination.
pub fn detect_linear_recurrence(
    values: &[BigInt],
    max_order: usize,
    window: usize,
) -> Option<(Vec<BigInt>, usize)> {
    if values.len() < window || window == 0 {
        return None;
    }
    for order in 1..=max_order.min(window / 2) {
        let solve_span = (4 * order).min(window);
        let tail = &values[values.len() - solve_span..];
        let Some(coeffs) = solve_recurrence(tail, order) else {
            continue;
        };
        let holds = |t: usize| -> bool {
            let mut acc = BigInt::zero();
            for (i, c) in coeffs.iter().enumerate() {
                acc += c * &values[t - 1 - i];
            }
            acc == values[t]
        };
        // The candidate has to reproduce the entire window.
        let window_start = values.len() - window;
        if !(window_start + order..values.len()).all(holds) {
            continue;
        }
        // Earliest index from which the law replays over the whole table.
        let mut start = window_start;
        while start > 0 && holds(start + order - 1) {
            start -= 1;
        }
        return Some((coeffs, start));
    }
    None
}

/// Detector thresholds. `min_tail` is the shortest stable suffix accepted
/// as an eventual law; recurrences are solved on the last `window` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub min_tail: usize,
    pub max_order: usize,
    pub window: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        // Defaults exceed every preamble length the proved cases exhibit.
        let max_order = 8;
        Self {
            min_tail: 64,
            max_order,
            window: 8 * max_order,
        }
    }
}

/// Per-residue-class verdicts for one recurrence table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub spec: RecurrenceSpec,
    pub modulus: u64,
    pub n_max: u64,
    pub verdicts: Vec<Verdict>,
}

/// Classifies one extracted subsequence by the priority order
/// constant, arithmetic progression, linear recurrence, unclassified.
pub fn classify_values(values: &[BigInt], opts: &ClassifyOptions) -> Verdict {
    if let Some((start, diff)) = detect_eventual_ap(values, opts.min_tail) {
        let witness_window = (values.len() - start) as u64;
        let verdict = if diff.is_zero() {
            Verdict::EventuallyConstant {
                start: start as u64,
                value: values[start].clone(),
                witness_window,
            }
        } else {
            Verdict::EventuallyAp {
                start: start as u64,
                difference: diff,
                witness_window,
            }
        };
        debug_assert!(verdict.replays(values));
        return verdict;
    }
    if let Some((coeffs, start)) = detect_linear_recurrence(values, opts.max_order, opts.window) {
        let verdict = Verdict::LinearRecurrence {
            start: start as u64,
            coeffs,
            witness_window: (values.len() - start) as u64,
        };
        debug_assert!(verdict.replays(values));
        return verdict;
    }
    Verdict::Unclassified
}

/// Builds the table for `spec`, splits it into `split_modulus` residue
/// classes and classifies each. A table that dies yields `Dead` verdicts.
pub fn classify(
    spec: &RecurrenceSpec,
    split_modulus: u64,
    n_max: u64,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    if split_modulus == 0 {
        return Err(Error::Usage("split modulus must be >= 1".into()));
    }
    let table = eval_range(spec, n_max)?;
    let verdicts = classify_table(&table, split_modulus, opts)?;
    Ok(ClassificationReport {
        spec: spec.clone(),
        modulus: split_modulus,
        n_max,
        verdicts,
    })
}

/// Classifies the residue classes of an already-built table.
pub fn classify_table(
    table: &SequenceTable,
    split_modulus: u64,
    opts: &ClassifyOptions,
) -> Result<Vec<Verdict>> {
    let mut verdicts = Vec::with_capacity(split_modulus as usize);
    for residue in 0..split_modulus {
        if let Some(at) = table.death {
            verdicts.push(Verdict::Dead { at });
            continue;
        }
        let class = subsequence(table, split_modulus, residue)?;
        let verdict = classify_values(&class, opts);
        if !verdict.replays(&class) {
            return Err(Error::Usage(format!(
                "internal replay failure for residue {residue}"
            )));
        }
        verdicts.push(verdict);
    }
    Ok(verdicts)
}

/// A fitted affine law `f(n) = difference * n + offset`, valid from `start`
/// through `checked_to` (inclusive), with `start` minimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApFit {
    pub start: u64,
    #[serde(with = "crate::bigjson")]
    pub difference: BigInt,
    #[serde(with = "crate::bigjson")]
    pub offset: BigInt,
    pub checked_to: u64,
}

fn ap_fit(values: &[BigInt], min_tail: usize) -> Option<ApFit> {
    let (start, difference) = detect_eventual_ap(values, min_tail)?;
    let offset = &values[start] - &difference * BigInt::from(start as u64);
    Some(ApFit {
        start: start as u64,
        difference,
        offset,
        checked_to: (values.len() - 1) as u64,
    })
}

/// Everything the u = 1, v = 3 probe measures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct U1V3Report {
    /// Affine law of `f(3n+1)`.
    pub class1: Option<ApFit>,
    /// Affine law of `f(3n+2)`.
    pub class2: Option<ApFit>,
    /// `f(3n) = 211 + sum_{i=1}^n f(2i - 19162)` held on `30..=sum_checked_to`.
    pub summation_ok: bool,
    pub sum_checked_to: u64,
    /// The step form `f(3n) = f(2n - 19161) + f(3n-3)` held on
    /// `121..=n_max/3`.
    pub step_recurrence_ok: bool,
    /// Verdict for `f(3n)` with detectors run over the whole class.
    pub class0: Verdict,
}

/// The spec of the u = 1, v = 3 probe sequence: `f(0) = f(1) = 1` and value
/// 1 at negative indices.
pub fn u1v3_spec() -> RecurrenceSpec {
    RecurrenceSpec::new(
        vec![Term::Nested { d: 0, u: 1 }, Term::Shift(3)],
        [1u64, 1],
        NegMode::Const(BigInt::one()),
    )
    .expect("probe spec is valid")
}

/// Builds the u = 1, v = 3 sequence to `n_max` and measures the laws of its
/// three residue classes. The closed summation form with the fixed shift
/// 19162 is checked on `30 <= n <= min(5000, n_max/3)`; beyond `n = 9582`
/// that shift drifts one index off the step recurrence (f(4) != f(5)), so
/// the step form is checked separately over the full range.
pub fn u1v3_probe(n_max: u64) -> Result<U1V3Report> {
    if n_max < 36_000 {
        return Err(Error::Usage("the probe needs n_max >= 36000".into()));
    }
    let table = eval_range(&u1v3_spec(), n_max)?;
    let f = &table.values;
    let top = n_max / 3;

    let class1 = subsequence(&table, 3, 1)?;
    let class2 = subsequence(&table, 3, 2)?;
    let class0 = subsequence(&table, 3, 0)?;

    let sum_checked_to = top.min(5_000);
    let mut sum = BigInt::zero();
    let mut summation_ok = true;
    for i in 1..=sum_checked_to {
        let idx = 2 * i as i64 - 19_162;
        sum += if idx < 0 {
            BigInt::one()
        } else {
            f[idx as usize].clone()
        };
        if i >= 30 && f[3 * i as usize] != &sum + BigInt::from(211) {
            summation_ok = false;
            break;
        }
    }

    let step_recurrence_ok = (121..=top).all(|n| {
        let idx = 2 * n as i64 - 19_161;
        let stepped = if idx < 0 {
            BigInt::one()
        } else {
            f[idx as usize].clone()
        };
        f[3 * n as usize] == stepped + &f[3 * (n - 1) as usize]
    });

    let opts = ClassifyOptions {
        min_tail: 64,
        max_order: 16,
        window: class0.len(),
    };
    Ok(U1V3Report {
        class1: ap_fit(&class1, 64),
        class2: ap_fit(&class2, 64),
        summation_ok,
        sum_checked_to,
        step_recurrence_ok,
        class0: classify_values(&class0, &opts),
    })
}

/// Fits the eventual affine law of the u = 2, v = 1 sequence with
/// `f(0) = a`, `f(1) = b` and value `a` below zero.
pub fn u2v1_fit(a: u64, b: u64, n_max: u64) -> Result<Option<ApFit>> {
    let spec = RecurrenceSpec::new(
        vec![Term::Nested { d: 0, u: 2 }, Term::Shift(1)],
        [a, b],
        NegMode::Const(BigInt::from(a)),
    )?;
    let table = eval_range(&spec, n_max)?;
    if !table.is_complete() {
        return Ok(None);
    }
    Ok(ap_fit(&table.values, 64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{g_spec, h_spec};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ap_detector_basics() {
        let v = ints(&[1, 1, 2, 3, 4, 5, 6]);
        assert_eq!(detect_eventual_ap(&v, 4), Some((1, BigInt::one())));
        // Constant tail shows up as difference zero.
        let v = ints(&[9, 7, 5, 5, 5, 5, 5]);
        assert_eq!(detect_eventual_ap(&v, 4), Some((2, BigInt::zero())));
        // A tail shorter than min_tail is rejected.
        let v = ints(&[0, 5, 1, 7, 2, 9, 11, 13]);
        assert_eq!(detect_eventual_ap(&v, 6), None);
    }

    #[test]
    fn recurrence_detector_basics() {
        // Doubling: order 1, coefficient 2.
        let v: Vec<BigInt> = (0..40u32).map(|n| BigInt::from(3) << n).collect();
        let (coeffs, start) = detect_linear_recurrence(&v, 4, 24).unwrap();
        assert_eq!(coeffs, ints(&[2]));
        assert_eq!(start, 0);

        // Fibonacci with a junk preamble: order 2, coefficients [1, 1].
        let mut v = ints(&[9, 9, 9, 1, 2]);
        for t in 5..60 {
            let s = &v[t - 1] + &v[t - 2];
            v.push(s);
        }
        let (coeffs, start) = detect_linear_recurrence(&v, 4, 32).unwrap();
        assert_eq!(coeffs, ints(&[1, 1]));
        assert_eq!(start, 3);

        // An AP satisfies s(n) = 2s(n-1) - s(n-2).
        let v: Vec<BigInt> = (0..50u32).map(|n| BigInt::from(7 * n + 3)).collect();
        let (coeffs, _) = detect_linear_recurrence(&v, 4, 32).unwrap();
        assert_eq!(coeffs, ints(&[2, -1]));

        // Thue-Morse signs satisfy no short integer recurrence.
        let v: Vec<BigInt> = (0..512u64)
            .map(|n| BigInt::from(crate::partitions::ptm(n).sign()))
            .collect();
        assert_eq!(detect_linear_recurrence(&v, 4, 64), None);
    }

    #[test]
    fn g_family_examples() {
        let opts = ClassifyOptions::default();

        // Even class of g_{3,2} doubles.
        let report = classify(&g_spec(3, 2), 2, 2_000, &opts).unwrap();
        match &report.verdicts[0] {
            Verdict::LinearRecurrence { coeffs, start, .. } => {
                assert_eq!(coeffs, &ints(&[2]));
                assert_eq!(*start, 0);
            }
            other => panic!("expected doubling law, got {other:?}"),
        }
        assert!(matches!(
            report.verdicts[1],
            Verdict::EventuallyConstant { ref value, .. } if *value == BigInt::from(2)
        ));

        // Even class of g_{1,1} obeys s(n) = s(n-1) + s(n-2) from index 1.
        let report = classify(&g_spec(1, 1), 2, 2_000, &opts).unwrap();
        match &report.verdicts[0] {
            Verdict::LinearRecurrence { coeffs, start, .. } => {
                assert_eq!(coeffs, &ints(&[1, 1]));
                assert_eq!(*start, 1);
            }
            other => panic!("expected Fibonacci-type law, got {other:?}"),
        }

        // Odd class of g_{7,7} is an AP; forced recurrence detection on the
        // same class finds the order-2 law [2, -1].
        let table = eval_range(&g_spec(7, 7), 2_000).unwrap();
        let odd = subsequence(&table, 2, 1).unwrap();
        match classify_values(&odd, &opts) {
            Verdict::EventuallyAp { difference, .. } => {
                assert_eq!(difference, BigInt::from(7))
            }
            other => panic!("expected AP, got {other:?}"),
        }
        let (coeffs, _) = detect_linear_recurrence(&odd, 4, 64).unwrap();
        assert_eq!(coeffs, ints(&[2, -1]));
    }

    #[test]
    fn h11_split_classes() {
        let report = classify(&h_spec(1, 1), 2, 2_000, &ClassifyOptions::default()).unwrap();
        match &report.verdicts[1] {
            Verdict::EventuallyAp {
                start, difference, ..
            } => {
                assert_eq!(*start, 0);
                assert_eq!(*difference, BigInt::one());
            }
            other => panic!("odd class of h should be an AP, got {other:?}"),
        }
        assert_eq!(report.verdicts[0], Verdict::Unclassified);
    }

    #[test]
    fn dead_tables_yield_dead_verdicts() {
        let spec = RecurrenceSpec::new(
            vec![Term::Nested { d: 0, u: 1 }, Term::Nested { d: 0, u: 2 }],
            [2u64, 1],
            NegMode::Strict,
        )
        .unwrap();
        let report = classify(&spec, 2, 100, &ClassifyOptions::default()).unwrap();
        assert_eq!(
            report.verdicts,
            vec![Verdict::Dead { at: 4 }, Verdict::Dead { at: 4 }]
        );
    }

    #[test]
    fn g_taxonomy_matches_parity_claims() {
        // One parity class eventually constant, the other AP or a linear
        // recurrence of order at most max(a, b); checked across the grid.
        // The pairs (1,1), (1,2), (2,1) sit outside that order bound and
        // carry their own recurrences of orders 2, 2 and 3.
        let opts = ClassifyOptions {
            max_order: 12,
            ..ClassifyOptions::default()
        };
        for a in 1..=12u64 {
            for b in 1..=12u64 {
                let report = classify(&g_spec(a, b), 2, 2_400, &opts).unwrap();
                let constant_count = report
                    .verdicts
                    .iter()
                    .filter(|v| matches!(v, Verdict::EventuallyConstant { .. }))
                    .count();
                assert!(constant_count >= 1, "g_{{{a},{b}}} lacks a constant class");
                let order_bound = match (a, b) {
                    (1, 1) | (1, 2) => 2,
                    (2, 1) => 3,
                    _ => a.max(b),
                };
                for v in &report.verdicts {
                    match v {
                        Verdict::EventuallyConstant { .. } | Verdict::EventuallyAp { .. } => {}
                        Verdict::LinearRecurrence { coeffs, .. } => {
                            assert!(
                                coeffs.len() as u64 <= order_bound,
                                "g_{{{a},{b}}} recurrence order {} above the bound",
                                coeffs.len()
                            );
                        }
                        other => panic!("g_{{{a},{b}}} unexpected verdict {other:?}"),
                    }
                }
            }
        }
        // The exceptional pairs, pinned exactly.
        let even_law =
            |a, b| match classify(&g_spec(a, b), 2, 800, &opts).unwrap().verdicts[0].clone() {
                Verdict::LinearRecurrence { coeffs, .. } => coeffs,
                other => panic!("expected recurrence, got {other:?}"),
            };
        assert_eq!(even_law(1, 1), ints(&[1, 1]));
        assert_eq!(even_law(2, 1), ints(&[1, 0, 1]));
        let report = classify(&g_spec(1, 2), 2, 800, &opts).unwrap();
        match &report.verdicts[1] {
            Verdict::LinearRecurrence { coeffs, .. } => assert_eq!(coeffs, &ints(&[1, 1])),
            other => panic!("expected recurrence, got {other:?}"),
        }
    }

    #[test]
    fn v1_sweep_is_eventually_ap() {
        // v = 1 with c >= 1: the whole sequence is eventually an AP.
        let opts = ClassifyOptions::default();
        for u in 1..=3u64 {
            for a in 1..=5u64 {
                for b in 1..=5u64 {
                    for c in 1..=3u64 {
                        let spec = RecurrenceSpec::new(
                            vec![Term::Nested { d: 0, u }, Term::Shift(1)],
                            [a, b],
                            NegMode::Const(BigInt::from(c)),
                        )
                        .unwrap();
                        let report = classify(&spec, 1, 2_000, &opts).unwrap();
                        assert!(
                            matches!(
                                report.verdicts[0],
                                Verdict::EventuallyAp { .. } | Verdict::EventuallyConstant { .. }
                            ),
                            "u={u} a={a} b={b} c={c}: {:?}",
                            report.verdicts[0]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn synthetic_laws_are_recovered() {
        let mut rng = StdRng::seed_from_u64(0xd1ce);
        let opts = ClassifyOptions::default();
        for round in 0..120 {
            let preamble_len = rng.random_range(0..=32usize);
            let mut values: Vec<BigInt> = (0..preamble_len)
                .map(|_| BigInt::from(rng.random_range(-9..=9i64)))
                .collect();
            if rng.random_bool(0.5) {
                // Random AP.
                let diff = BigInt::from(rng.random_range(-5..=5i64));
                let mut cur = BigInt::from(rng.random_range(-50..=50i64));
                for _ in 0..200 {
                    values.push(cur.clone());
                    cur += &diff;
                }
                match classify_values(&values, &opts) {
                    Verdict::EventuallyConstant { start, .. } => {
                        assert!(diff.is_zero(), "round {round}");
                        assert!(start as usize <= preamble_len);
                    }
                    Verdict::EventuallyAp {
                        start, difference, ..
                    } => {
                        assert_eq!(difference, diff, "round {round}");
                        assert!(start as usize <= preamble_len);
                    }
                    other => panic!("round {round}: AP not recovered: {other:?}"),
                }
            } else {
                // Random integer recurrence of order <= 4.
                let order = rng.random_range(1..=4usize);
                let coeffs: Vec<BigInt> = (0..order)
                    .map(|i| loop {
                        let c = rng.random_range(-3..=3i64);
                        if c != 0 || i + 1 != order {
                            return BigInt::from(c);
                        }
                    })
                    .collect();
                let mut tail: Vec<BigInt> = (0..order)
                    .map(|_| BigInt::from(rng.random_range(1..=5i64)))
                    .collect();
                for t in order..120 {
                    let mut acc = BigInt::zero();
                    for (i, c) in coeffs.iter().enumerate() {
                        acc += c * &tail[t - 1 - i];
                    }
                    tail.push(acc);
                }
                values.extend(tail.iter().cloned());
                let boundary = preamble_len + order;
                let found = detect_linear_recurrence(&values, 4, opts.window)
                    .unwrap_or_else(|| panic!("round {round}: no law found"));
                let (coeffs_found, start) = found;
                // The found law must regenerate the entire generated block.
                let verdict = Verdict::LinearRecurrence {
                    start: boundary.max(start).min(boundary) as u64,
                    coeffs: coeffs_found,
                    witness_window: 0,
                };
                assert!(
                    verdict.replays(&values[preamble_len..]),
                    "round {round}: law does not replay the generated block"
                );
            }
        }
    }

    #[test]
    fn u1v3_constants() {
        let report = u1v3_probe(36_000).unwrap();
        let class2 = report.class2.expect("class 2 is eventually affine");
        assert_eq!(class2.start, 120);
        assert_eq!(class2.difference, BigInt::one());
        assert_eq!(class2.offset, BigInt::from(19_162));

        let class1 = report.class1.expect("class 1 is eventually affine");
        // The affine law sets in exactly at 9672 (9671 still deviates).
        assert_eq!(class1.start, 9_672);
        assert_eq!(class1.difference, BigInt::one());
        assert_eq!(
            class1.offset,
            "29871990902013037527".parse::<BigInt>().unwrap()
        );

        assert!(report.summation_ok);
        assert!(report.step_recurrence_ok);
        assert_eq!(report.class0, Verdict::Unclassified);
        assert!(u1v3_probe(10_000).is_err());
    }

    #[test]
    fn u2v1_characterization() {
        // f(n) = n + b + 1 for a = 1, b <= 2.
        for b in [1u64, 2] {
            let fit = u2v1_fit(1, b, 2_000).unwrap().unwrap();
            assert_eq!(fit.difference, BigInt::one());
            assert_eq!(fit.offset, BigInt::from(b + 1));
            assert!(fit.start <= 4);
        }
        // f(n) = n + 2b - 2 for a = 1, b >= 3 (offset fitted empirically).
        for b in 3..=6u64 {
            let fit = u2v1_fit(1, b, 2_000).unwrap().unwrap();
            assert_eq!(fit.difference, BigInt::one());
            assert_eq!(fit.offset, BigInt::from(2 * b - 2));
            assert!(fit.start <= 4);
        }
        // f(n) = 2n - b holds for (2, 1); the (2, 2) start does not follow
        // the same pattern and settles on f(n) = 2n exactly.
        let fit = u2v1_fit(2, 1, 2_000).unwrap().unwrap();
        assert_eq!(fit.difference, BigInt::from(2));
        assert_eq!(fit.offset, BigInt::from(-1));
        let fit = u2v1_fit(2, 2, 2_000).unwrap().unwrap();
        assert_eq!(fit.difference, BigInt::from(2));
        assert_eq!(fit.offset, BigInt::zero());
        // f(n) = an + b - a for a >= 2, b >= 3.
        for (a, b) in [(2u64, 3u64), (3, 4), (5, 3), (4, 5)] {
            let fit = u2v1_fit(a, b, 2_000).unwrap().unwrap();
            assert_eq!(fit.difference, BigInt::from(a));
            assert_eq!(fit.offset, BigInt::from(b as i64 - a as i64));
            assert!(fit.start <= 4);
        }
    }

    #[test]
    fn verdict_serialization_round_trips() {
        let v = Verdict::LinearRecurrence {
            start: 3,
            coeffs: ints(&[1, -2, 5]),
            witness_window: 97,
        };
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Verdict>(&json).unwrap(), v);
        let report = classify(&g_spec(3, 2), 2, 500, &ClassifyOptions::default()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            serde_json::from_str::<ClassificationReport>(&json).unwrap(),
            report
        );
    }
}
