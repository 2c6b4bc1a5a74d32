//! General evaluator for nested ("meta-Fibonacci") recurrences.
//!
//! A recurrence is a sum of terms, each either a plain shift `f(n-v)` or a
//! nested reference `f(n - d - f(n-u))`, together with initial values
//! `f(0..k-1)` and a convention for indices below zero. Evaluation fills a
//! dense table left to right; a reference that cannot be resolved stops the
//! table and is recorded as data rather than raised as an error.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One additive term on the right-hand side of a recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    /// `f(n - v)`, `v >= 1`.
    Shift(u64),
    /// `f(n - d - f(n-u))`, `d >= 0`, `u >= 1`.
    Nested { d: u64, u: u64 },
}

/// What to do with a reference to an index below zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NegMode {
    /// The sequence dies at the first negative reference.
    Strict,
    /// Indices below zero all carry this fixed value.
    Const(#[serde(with = "crate::bigjson")] BigInt),
}

/// A complete recurrence description: terms, initial values `f(0..k-1)` and
/// the negative-index convention. The recurrence applies from `n = k` on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    pub terms: Vec<Term>,
    #[serde(with = "crate::bigjson::vec")]
    pub init: Vec<BigInt>,
    #[serde(rename = "neg")]
    pub neg_mode: NegMode,
}

impl RecurrenceSpec {
    /// Builds and validates a spec. Nested terms require strictly positive
    /// initial values (otherwise `n - f(n-u)` need not make progress);
    /// shift-only recurrences accept any nonnegative seeds.
    pub fn new<I>(terms: Vec<Term>, init: I, neg_mode: NegMode) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let spec = Self {
            terms,
            init: init.into_iter().map(Into::into).collect(),
            neg_mode,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Start index of the recurrence; equals the number of initial values.
    pub fn k(&self) -> u64 {
        self.init.len() as u64
    }

    pub fn validate(&self) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::InvalidSpec("term list is empty".into()));
        }
        if self.init.is_empty() {
            return Err(Error::InvalidSpec("initial values are empty".into()));
        }
        for term in &self.terms {
            match *term {
                Term::Shift(0) => {
                    return Err(Error::InvalidSpec("shift offset must be >= 1".into()))
                }
                Term::Nested { u: 0, .. } => {
                    return Err(Error::InvalidSpec("nested offset u must be >= 1".into()))
                }
                _ => {}
            }
        }
        let nested = self.terms.iter().any(|t| matches!(t, Term::Nested { .. }));
        for v in &self.init {
            if v.is_negative() {
                return Err(Error::InvalidSpec(
                    "initial values must be nonnegative".into(),
                ));
            }
            if nested && v.is_zero() {
                return Err(Error::InvalidSpec(
                    "nested terms require strictly positive initial values".into(),
                ));
            }
        }
        if let NegMode::Const(c) = &self.neg_mode {
            if c.is_negative() {
                return Err(Error::InvalidSpec(
                    "negative-index constant must be >= 0".into(),
                ));
            }
        }
        Ok(())
    }

    /// Parses the JSON wire form
    /// `{"terms":[{"shift":2},{"nested":{"d":0,"u":1}}],"init":["1","1"],"neg":"strict"}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(s).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }
}

/// Why a table stopped short of the requested range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// A reference went below zero under the strict convention.
    Died,
    /// A nested reference pointed at the current or a later index.
    NonWellFounded,
}

/// Dense prefix of a sequence. `values[i]` holds `f(i)`; if `death` is set,
/// evaluation failed at that index and no later values are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub spec: RecurrenceSpec,
    pub values: Vec<BigInt>,
    pub death: Option<u64>,
    pub failure_kind: Option<FailureKind>,
}

impl SequenceTable {
    pub fn is_complete(&self) -> bool {
        self.death.is_none()
    }

    /// Recomputes every stored value from its references and compares.
    /// Intended for tests; quadratic-free (same O(n) walk as evaluation).
    pub fn replay_consistent(&self) -> bool {
        let k = self.spec.k() as usize;
        for n in k..self.values.len() {
            let mut acc = BigInt::zero();
            for term in &self.spec.terms {
                match resolve_term(term, n as u64, &self.values, &self.spec.neg_mode) {
                    Ok(v) => acc += v,
                    Err(_) => return false,
                }
            }
            if acc != self.values[n] {
                return false;
            }
        }
        true
    }
}

/// Resolves one term at index `n` against already-computed values.
fn resolve_term<'a>(
    term: &Term,
    n: u64,
    values: &'a [BigInt],
    neg: &'a NegMode,
) -> std::result::Result<&'a BigInt, FailureKind> {
    match *term {
        Term::Shift(v) => lookup(n as i128 - v as i128, n, values, neg),
        Term::Nested { d, u } => {
            let inner = lookup(n as i128 - u as i128, n, values, neg)?;
            // Huge inner values force the target below zero; avoid converting
            // n - d - inner into a BigInt in the common path.
            let target = match inner.to_i128() {
                Some(iv) => n as i128 - d as i128 - iv,
                None => i128::MIN, // |inner| > 2^127 and inner >= 0, so target < 0
            };
            lookup(target, n, values, neg)
        }
    }
}

fn lookup<'a>(
    idx: i128,
    n: u64,
    values: &'a [BigInt],
    neg: &'a NegMode,
) -> std::result::Result<&'a BigInt, FailureKind> {
    if idx < 0 {
        return match neg {
            NegMode::Const(c) => Ok(c),
            NegMode::Strict => Err(FailureKind::Died),
        };
    }
    if idx as u128 >= n as u128 {
        return Err(FailureKind::NonWellFounded);
    }
    Ok(&values[idx as usize])
}

/// Evaluates `spec` for all indices `0..=n_max`. Failure to resolve a
/// reference is recorded in the returned table, not raised.
pub fn eval_range(spec: &RecurrenceSpec, n_max: u64) -> Result<SequenceTable> {
    spec.validate()?;
    let k = spec.k();
    let mut values: Vec<BigInt> = Vec::with_capacity((n_max + 1) as usize);
    for i in 0..=n_max.min(k - 1) {
        values.push(spec.init[i as usize].clone());
    }
    for n in k..=n_max {
        let mut acc = BigInt::zero();
        let mut failed = None;
        for term in &spec.terms {
            match resolve_term(term, n, &values, &spec.neg_mode) {
                Ok(v) => acc += v,
                Err(kind) => {
                    failed = Some(kind);
                    break;
                }
            }
        }
        if let Some(kind) = failed {
            return Ok(SequenceTable {
                spec: spec.clone(),
                values,
                death: Some(n),
                failure_kind: Some(kind),
            });
        }
        values.push(acc);
    }
    Ok(SequenceTable {
        spec: spec.clone(),
        values,
        death: None,
        failure_kind: None,
    })
}

/// Outcome of a single-point evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalOutcome {
    Value(BigInt),
    Failure { at: u64, kind: FailureKind },
}

impl EvalOutcome {
    pub fn value(self) -> Option<BigInt> {
        match self {
            EvalOutcome::Value(v) => Some(v),
            EvalOutcome::Failure { .. } => None,
        }
    }
}

/// Evaluates `f(n)` by filling the prefix table up to `n`.
pub fn eval(spec: &RecurrenceSpec, n: u64) -> Result<EvalOutcome> {
    let table = eval_range(spec, n)?;
    Ok(match (table.death, table.failure_kind) {
        (Some(at), Some(kind)) => EvalOutcome::Failure { at, kind },
        _ => EvalOutcome::Value(table.values[n as usize].clone()),
    })
}

/// Extracts the residue-class subsequence `f(modulus * n + residue)` from a
/// table, in index order, for as long as values are stored.
pub fn subsequence(table: &SequenceTable, modulus: u64, residue: u64) -> Result<Vec<BigInt>> {
    if modulus == 0 {
        return Err(Error::Usage("subsequence modulus must be >= 1".into()));
    }
    if residue >= modulus {
        return Err(Error::Usage(format!(
            "residue {residue} must be below modulus {modulus}"
        )));
    }
    Ok(table
        .values
        .iter()
        .skip(residue as usize)
        .step_by(modulus as usize)
        .cloned()
        .collect())
}

/// Spec of the family `h_{a,b}`: `f(n) = f(n - f(n-1)) + f(n-2)` with
/// `f(0) = a`, `f(1) = b` and value `a` at negative indices.
pub fn h_spec(a: u64, b: u64) -> RecurrenceSpec {
    RecurrenceSpec::new(
        vec![Term::Nested { d: 0, u: 1 }, Term::Shift(2)],
        [a, b],
        NegMode::Const(BigInt::from(a)),
    )
    .expect("h spec is valid for a, b >= 1")
}

/// Spec of the family `g_{a,b}`: same recurrence as `h_{a,b}` but with value
/// 0 at negative indices.
pub fn g_spec(a: u64, b: u64) -> RecurrenceSpec {
    RecurrenceSpec::new(
        vec![Term::Nested { d: 0, u: 1 }, Term::Shift(2)],
        [a, b],
        NegMode::Const(BigInt::zero()),
    )
    .expect("g spec is valid for a, b >= 1")
}
