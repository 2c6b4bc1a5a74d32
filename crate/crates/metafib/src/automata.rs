//! Deterministic finite automata with output (DFAO), the two concrete
//! automata used by the verification suite, direct mod-2 computation of
//! `r(n) = h_{1,1}(n) mod 2`, and a finite-evidence kernel explorer.
//!
//! Digit order is a per-automaton property: the Thue–Morse automaton reads
//! the most significant binary digit first, the `r(2n)` automaton reads the
//! least significant digit first. Both read canonical representations (no
//! leading zeros; `n = 0` is the empty string).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::closed::h_values;
use crate::partitions::bin_table;
use crate::{Error, Result};

/// Which end of the base-k representation is fed to the automaton first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DigitOrder {
    #[serde(rename = "msd")]
    MostSignificantFirst,
    #[serde(rename = "lsd")]
    LeastSignificantFirst,
}

/// A deterministic finite automaton with output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dfao {
    /// Display names, one per state.
    pub states: Vec<String>,
    pub initial: usize,
    pub base: u32,
    pub order: DigitOrder,
    /// `transitions[state][digit]` is the successor state.
    pub transitions: Vec<Vec<usize>>,
    /// `outputs[state]` is emitted when the input ends in `state`.
    pub outputs: Vec<i64>,
}

impl Dfao {
    pub fn validate(&self) -> Result<()> {
        let n = self.states.len();
        if n == 0 {
            return Err(Error::Usage("automaton needs at least one state".into()));
        }
        if self.base < 2 {
            return Err(Error::Usage("digit base must be at least 2".into()));
        }
        if self.initial >= n {
            return Err(Error::Usage("initial state out of range".into()));
        }
        if self.transitions.len() != n || self.outputs.len() != n {
            return Err(Error::Usage(
                "transition/output tables must cover every state".into(),
            ));
        }
        for row in &self.transitions {
            if row.len() != self.base as usize {
                return Err(Error::Usage(
                    "transition row does not cover the digit alphabet".into(),
                ));
            }
            if row.iter().any(|&s| s >= n) {
                return Err(Error::Usage("transition target out of range".into()));
            }
        }
        Ok(())
    }

    /// Runs the automaton on the canonical base-k digits of `n`.
    pub fn run(&self, n: u64) -> i64 {
        let mut digits = Vec::new();
        let mut rest = n;
        while rest > 0 {
            digits.push((rest % self.base as u64) as usize);
            rest /= self.base as u64;
        }
        // Digits are produced least significant first.
        if matches!(self.order, DigitOrder::MostSignificantFirst) {
            digits.reverse();
        }
        let mut state = self.initial;
        for d in digits {
            state = self.transitions[state][d];
        }
        self.outputs[state]
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: Self = serde_json::from_str(s).map_err(|e| Error::Usage(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("automaton serialization cannot fail")
    }

    /// Graphviz rendering for visual inspection.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfao {\n  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  __start [shape=point];\n");
        for (i, name) in self.states.iter().enumerate() {
            out.push_str(&format!(
                "  s{i} [label=\"{name}\\n{}\"];\n",
                self.outputs[i]
            ));
        }
        out.push_str(&format!("  __start -> s{};\n", self.initial));
        for (i, row) in self.transitions.iter().enumerate() {
            for (digit, &target) in row.iter().enumerate() {
                out.push_str(&format!("  s{i} -> s{target} [label=\"{digit}\"];\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The two-state Thue–Morse automaton: outputs the sign `t(n)`.
pub fn ptm_dfao() -> Dfao {
    Dfao {
        states: vec!["even".into(), "odd".into()],
        initial: 0,
        base: 2,
        order: DigitOrder::MostSignificantFirst,
        transitions: vec![vec![0, 1], vec![1, 0]],
        outputs: vec![1, -1],
    }
}

const PATTERN_8N4: [u8; 4] = [0, 1, 1, 0];
const PATTERN_16N8: [u8; 4] = [0, 0, 1, 1];

/// Dense table of `r(0..=n_max)` from the mod-2 recurrences
/// `r(2n+1) = (n+1) mod 2` and `r(2n+2) = r(2n) xor r(n+1)`.
pub fn r_table(n_max: u64) -> Vec<u8> {
    let len = (n_max + 1) as usize;
    let mut r = Vec::with_capacity(len);
    for i in 0..len {
        let bit = if i == 0 {
            1
        } else if i % 2 == 1 {
            ((i / 2 + 1) % 2) as u8
        } else {
            r[i - 2] ^ r[i / 2]
        };
        r.push(bit);
    }
    r
}

/// `r(n)` for a single point, via the memoized table.
pub fn r_direct(n: u64) -> u8 {
    r_table(n)[n as usize]
}

/// `r(n)` in O(log n) through the proved residue relations. Used where the
/// kernel explorer needs point access far beyond any sensible table.
pub fn r_point(n: u64) -> u8 {
    let mut m = n;
    loop {
        if m == 0 {
            return 1;
        }
        if m % 2 == 1 {
            return (((m / 2) + 1) % 2) as u8;
        }
        match m % 8 {
            2 => return 1 - r_point(m - 2),
            6 => m -= 2,
            4 => return PATTERN_8N4[((m - 4) / 8 % 4) as usize],
            _ => {
                if m % 16 == 8 {
                    return PATTERN_16N8[((m - 8) / 16 % 4) as usize];
                }
                if m % 32 == 16 {
                    return 1 - PATTERN_16N8[((m - 16) / 32 % 4) as usize];
                }
                m /= 2; // r(32n) = r(16n)
            }
        }
    }
}

/// The 14-state automaton for `(r(2n))`, read least significant digit
/// first. State names record the residue class of `2n` pinned down so far.
pub fn r2n_dfao() -> Dfao {
    let states = [
        "2n", "4n", "4n+2", "8n", "8n+2", "8n+4", "16n+12", "16n+4", "16n+8", "16n+10", "16n",
        "16n+2", "32n+4", "32n+12",
    ];
    Dfao {
        states: states.iter().map(|s| s.to_string()).collect(),
        initial: 0,
        base: 2,
        order: DigitOrder::LeastSignificantFirst,
        transitions: vec![
            vec![1, 2],   // 2n
            vec![3, 5],   // 4n
            vec![4, 5],   // 4n+2 (8n+6 behaves as 8n+4)
            vec![10, 8],  // 8n
            vec![11, 9],  // 8n+2
            vec![7, 6],   // 8n+4
            vec![13, 12], // 16n+12
            vec![12, 13], // 16n+4
            vec![7, 7],   // 16n+8
            vec![6, 6],   // 16n+10
            vec![10, 9],  // 16n (reading 0 stays: r(32n) = r(16n))
            vec![11, 8],  // 16n+2
            vec![12, 12], // 32n+4 (r is 0 on this class whatever follows)
            vec![13, 13], // 32n+12 (r is 1 on this class whatever follows)
        ],
        outputs: vec![1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1],
    }
}

/// Verifies the four residue relations for all `n <= n_max`:
/// `r(8n+2) = 1 - r(8n)`, `r(8n+6) = r(8n+4)`,
/// `r(32n) = r(16n)`, `r(32n+16) = 1 - r(16n+8)`.
pub fn check_r_relations(n_max: u64) -> bool {
    let r = r_table(32 * n_max + 17);
    (0..=n_max as usize).all(|n| {
        r[8 * n + 2] == 1 - r[8 * n]
            && r[8 * n + 6] == r[8 * n + 4]
            && r[32 * n] == r[16 * n]
            && r[32 * n + 16] == 1 - r[16 * n + 8]
    })
}

/// A kernel subsequence `n -> a(k^j n + i)`, `0 <= i < k^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelDescriptor {
    pub j: u32,
    pub i: u64,
}

/// Descriptors whose subsequences agree on the tested prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelClass {
    pub representative: KernelDescriptor,
    pub members: Vec<KernelDescriptor>,
}

/// Result of a bounded kernel exploration. Prefix equality is necessary but
/// not sufficient for true equality, so a closed report is evidence of
/// automaticity, never proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub base: u32,
    pub prefix_len: u64,
    pub discovered: Vec<KernelDescriptor>,
    pub classes: Vec<KernelClass>,
    /// Every child of every class representative landed in a known class.
    pub closed: bool,
    /// The class budget ran out before closure.
    pub truncated: bool,
    /// The sequence oracle ran out of data (or an index overflowed).
    pub data_exhausted: bool,
}

/// Explores the base-k kernel of a sequence by breadth-first refinement
/// from the identity descriptor `(j=0, i=0)`, comparing subsequences on
/// their first `prefix_len` terms.
pub fn kernel_explore<F>(
    mut seq: F,
    base: u32,
    prefix_len: u64,
    max_classes: usize,
) -> Result<KernelReport>
where
    F: FnMut(u64) -> Option<i64>,
{
    if base < 2 {
        return Err(Error::Usage("kernel base must be at least 2".into()));
    }
    if prefix_len < 16 {
        return Err(Error::Usage(
            "prefix length below 16 is not meaningful evidence".into(),
        ));
    }
    if max_classes == 0 {
        return Err(Error::Usage("class budget must be at least 1".into()));
    }

    let mut report = KernelReport {
        base,
        prefix_len,
        discovered: Vec::new(),
        classes: Vec::new(),
        closed: false,
        truncated: false,
        data_exhausted: false,
    };
    let mut rep_prefixes: Vec<Vec<i64>> = Vec::new();

    let prefix_of = |seq: &mut F, d: &KernelDescriptor| -> Option<Vec<i64>> {
        let stride = (base as u64).checked_pow(d.j)?;
        let mut prefix = Vec::with_capacity(prefix_len as usize);
        for n in 0..prefix_len {
            let idx = stride.checked_mul(n)?.checked_add(d.i)?;
            prefix.push(seq(idx)?);
        }
        Some(prefix)
    };

    let mut queue = VecDeque::new();
    queue.push_back(KernelDescriptor { j: 0, i: 0 });
    while let Some(d) = queue.pop_front() {
        let prefix = match prefix_of(&mut seq, &d) {
            Some(p) => p,
            None => {
                report.data_exhausted = true;
                return Ok(report);
            }
        };
        if let Some(pos) = rep_prefixes.iter().position(|p| *p == prefix) {
            report.classes[pos].members.push(d);
            report.discovered.push(d);
            continue;
        }
        if report.classes.len() == max_classes {
            report.truncated = true;
            return Ok(report);
        }
        report.classes.push(KernelClass {
            representative: d,
            members: vec![d],
        });
        rep_prefixes.push(prefix);
        report.discovered.push(d);
        // Children refine n -> stride*n + i into base-many subsequences.
        let stride = match (base as u64).checked_pow(d.j) {
            Some(s) => s,
            None => {
                report.data_exhausted = true;
                return Ok(report);
            }
        };
        for t in 0..base as u64 {
            let child_i = match stride.checked_mul(t).and_then(|x| x.checked_add(d.i)) {
                Some(i) => i,
                None => {
                    report.data_exhausted = true;
                    return Ok(report);
                }
            };
            queue.push_back(KernelDescriptor {
                j: d.j + 1,
                i: child_i,
            });
        }
    }
    report.closed = true;
    Ok(report)
}

/// Dense table of `h_{1,1}(n) mod m`, computed entirely in residues via the
/// parity-split recurrence (no big integers). Moduli up to 256 keep the
/// table one byte per entry.
pub fn h_mod_table(m: u32, n_max: u64) -> Vec<u8> {
    assert!((1..=256).contains(&m), "modulus must be in 1..=256");
    let len = (n_max + 1) as usize;
    let mut v: Vec<u8> = Vec::with_capacity(len);
    for i in 0..len {
        let x = if i == 0 {
            (1 % m) as u8
        } else if i % 2 == 1 {
            ((i as u64 / 2 + 1) % m as u64) as u8
        } else {
            ((v[i - 2] as u32 + v[i / 2] as u32) % m) as u8
        };
        v.push(x);
    }
    v
}

/// Growth evidence for the a = 1 family members: exact domination of the
/// relevant parity class over `bin`, plus first crossings of `n^C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    /// The compared parity class: `h(2n)` for b = 1, `h_{1,b}(2n+1)` else.
    pub class_description: String,
    /// Class value >= bin dominance held at every tested index.
    pub domination_ok: bool,
    pub first_violation: Option<u64>,
    /// For each exponent C, the least n >= 2 with class(n) > n^C in range.
    pub witnesses: Vec<(u32, Option<u64>)>,
}

/// Verifies `h_{1,1}(2n) >= bin(n)` (or the odd-class analogue
/// `h_{1,b}(2n+1) >= bin(n+1)` for `b >= 2`) for all `n <= n_max`, and finds
/// the least `n >= 2` with the class value above `n^C` for C in {1,2,4,8}.
pub fn growth_witness(a: u64, b: u64, n_max: u64) -> Result<GrowthReport> {
    if a != 1 {
        return Err(Error::Usage(
            "growth domination is only claimed for a = 1".into(),
        ));
    }
    let h = h_values(a, b, 2 * n_max + 1);
    let bins = bin_table(n_max + 1);
    let class: Vec<&BigInt> = if b == 1 {
        (0..=n_max as usize).map(|n| &h[2 * n]).collect()
    } else {
        (0..=n_max as usize).map(|n| &h[2 * n + 1]).collect()
    };
    let bound: Vec<&BigInt> = if b == 1 {
        (0..=n_max as usize).map(|n| &bins.values[n]).collect()
    } else {
        (0..=n_max as usize).map(|n| &bins.values[n + 1]).collect()
    };

    let mut first_violation = None;
    for n in 0..=n_max as usize {
        if class[n] < bound[n] {
            first_violation = Some(n as u64);
            break;
        }
    }

    let mut witnesses = Vec::new();
    for c in [1u32, 2, 4, 8] {
        let mut found = None;
        for n in 2..=n_max {
            let power = num_traits::Pow::pow(BigInt::from(n), c);
            if *class[n as usize] > power {
                found = Some(n);
                break;
            }
        }
        witnesses.push((c, found));
    }

    Ok(GrowthReport {
        class_description: if b == 1 {
            "h(2n) vs bin(n)".into()
        } else {
            format!("h_{{1,{b}}}(2n+1) vs bin(n+1)")
        },
        domination_ok: first_violation.is_none(),
        first_violation,
        witnesses,
    })
}
