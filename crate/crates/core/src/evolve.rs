//! Iterated local functions: one-step evolution, exhaustive tabulation of
//! `f^n`, and space-time diagrams.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{words_for, PackedBits};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matrices::StateMatrix;
use crate::rules::RuleTable;

/// Default ceiling on the size of a single tabulated level.
pub const DEFAULT_BUDGET_BYTES: u64 = 512 << 20;

/// A finite row of cells, leftmost first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(cells: Vec<u8>) -> Self {
        Word(cells)
    }

    pub fn cells(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_cells(self) -> Vec<u8> {
        self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(cells: Vec<u8>) -> Self {
        Word(cells)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// One decimal digit per cell, e.g. `"01101"`.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::input(format!("cell '{c}' is not a decimal digit")))
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Base-`states` digits of `index`, most significant (leftmost cell) first.
pub fn digits_of(mut index: usize, len: usize, states: u32) -> Vec<u8> {
    let s = states as usize;
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % s) as u8;
        index /= s;
    }
    out
}

/// Inverse of [`digits_of`].
pub fn index_of(cells: &[u8], states: u32) -> usize {
    let s = states as usize;
    cells.iter().fold(0usize, |acc, &c| acc * s + c as usize)
}

/// Index of the digit-reversed word, for words of `len` digits.
pub fn reverse_index(index: usize, len: usize, states: u32) -> usize {
    if states == 2 {
        if len == 0 {
            return 0;
        }
        return index.reverse_bits() >> (usize::BITS as usize - len);
    }
    let s = states as usize;
    let mut rest = index;
    let mut out = 0;
    for _ in 0..len {
        out = out * s + rest % s;
        rest /= s;
    }
    out
}

fn check_states(rule: &RuleTable, w: &Word) -> Result<()> {
    match w.cells().iter().find(|&&c| u32::from(c) >= rule.states()) {
        Some(c) => Err(Error::input(format!(
            "cell state {c} is outside [0, {})",
            rule.states()
        ))),
        None => Ok(()),
    }
}

/// One synchronous update of a finite word; the result is `2r` cells shorter.
pub fn step(rule: &RuleTable, w: &Word) -> Result<Word> {
    let width = rule.width();
    if w.len() < width {
        return Err(Error::input(format!(
            "a step needs at least {width} cells, got {}",
            w.len()
        )));
    }
    check_states(rule, w)?;
    Ok(Word(
        w.cells()
            .windows(width)
            .map(|win| rule.apply(win))
            .collect(),
    ))
}

/// Options for [`tabulate_with`] and [`for_each_level`].
#[derive(Clone, Copy, Debug)]
pub struct TabulateOptions {
    pub budget_bytes: u64,
    pub exec: Exec,
}

impl Default for TabulateOptions {
    fn default() -> Self {
        TabulateOptions {
            budget_bytes: DEFAULT_BUDGET_BYTES,
            exec: Exec::default(),
        }
    }
}

/// Storage for one state per entry; binary automata are bit-packed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cells {
    Packed(PackedBits),
    Bytes(Vec<u8>),
}

impl Cells {
    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        match self {
            Cells::Packed(b) => b.get(i) as u8,
            Cells::Bytes(v) => v[i],
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Cells::Packed(b) => b.len(),
            Cells::Bytes(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Full truth table of `f^n` over all `s^(2rn+1)` words.
#[derive(Clone, Debug)]
pub struct IteratedTable {
    rule: RuleTable,
    n: u32,
    cells: Cells,
}

/// Entry count and storage size of level `n`, checked against the budget.
fn level_size(rule: &RuleTable, n: u32, budget: u64) -> Result<usize> {
    let width = 2 * u128::from(rule.radius()) * u128::from(n) + 1;
    let entries = u32::try_from(width)
        .ok()
        .and_then(|w| u128::from(rule.states()).checked_pow(w));
    let bytes = entries.map(|e| if rule.states() == 2 { e.div_ceil(8) } else { e });
    match (entries, bytes) {
        (Some(e), Some(b)) if b <= u128::from(budget) && e <= usize::MAX as u128 => Ok(e as usize),
        _ => Err(Error::Resource {
            what: format!(
                "bytes to tabulate f^{n} ({} states, radius {})",
                rule.states(),
                rule.radius()
            ),
            needed: bytes.unwrap_or(u128::MAX),
            limit: u128::from(budget),
        }),
    }
}

impl IteratedTable {
    /// `f^1`, which is the rule table itself.
    pub fn first(rule: &RuleTable) -> Self {
        let cells = if rule.states() == 2 {
            let mut bits = PackedBits::zeros(rule.table().len());
            for (i, &v) in rule.table().iter().enumerate() {
                bits.set(i, v == 1);
            }
            Cells::Packed(bits)
        } else {
            Cells::Bytes(rule.table().to_vec())
        };
        IteratedTable {
            rule: rule.clone(),
            n: 1,
            cells,
        }
    }

    /// Builds `f^(n+1)` from `f^n`: every entry is the rule applied to the
    /// `2r+1` overlapping sub-words of length `2rn+1`, looked up in `self`.
    pub fn next(&self, opts: &TabulateOptions) -> Result<Self> {
        let rule = &self.rule;
        let n = self.n + 1;
        let len = level_size(rule, n, opts.budget_bytes)?;
        let r2 = 2 * rule.radius() as usize;
        let prev = &self.cells;
        let table = rule.table();
        let cells = match prev {
            Cells::Packed(prev) => {
                let sub_mask = (1usize << (r2 * self.n as usize + 1)) - 1;
                let entry = |w: usize| -> u64 {
                    let mut idx = 0usize;
                    for o in 0..=r2 {
                        idx = (idx << 1) | prev.get((w >> (r2 - o)) & sub_mask) as usize;
                    }
                    u64::from(table[idx])
                };
                let mut words = vec![0u64; words_for(len)];
                opts.exec.fill(&mut words, |q| {
                    let base = q << 6;
                    let end = (base + 64).min(len);
                    let mut word = 0u64;
                    for w in base..end {
                        word |= entry(w) << (w - base);
                    }
                    word
                });
                Cells::Packed(PackedBits::from_words(words, len))
            }
            Cells::Bytes(prev) => {
                let s = rule.states() as usize;
                let sub_len = prev.len();
                let mut out = vec![0u8; len];
                opts.exec.fill(&mut out, |w| {
                    let mut idx = 0usize;
                    let mut div = s.pow(r2 as u32);
                    for _ in 0..=r2 {
                        idx = idx * s + prev[(w / div) % sub_len] as usize;
                        div /= s;
                    }
                    table[idx]
                });
                Cells::Bytes(out)
            }
        };
        Ok(IteratedTable {
            rule: rule.clone(),
            n,
            cells,
        })
    }

    pub fn rule(&self) -> &RuleTable {
        &self.rule
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    /// Argument length `2rn + 1`.
    pub fn width(&self) -> usize {
        2 * self.rule.radius() as usize * self.n as usize + 1
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    #[inline]
    pub fn get(&self, index: usize) -> u8 {
        self.cells.get(index)
    }

    /// `Some(v)` if `f^n` takes the single value `v` everywhere.
    pub fn constant_value(&self) -> Option<u8> {
        match &self.cells {
            Cells::Packed(b) => match b.count_ones() {
                0 => Some(0),
                k if k == b.len() => Some(1),
                _ => None,
            },
            Cells::Bytes(v) => {
                let first = v[0];
                v.iter().all(|&x| x == first).then_some(first)
            }
        }
    }
}

/// Tabulates `f^n` with the default budget and execution strategy.
pub fn tabulate(rule: &RuleTable, n: u32) -> Result<IteratedTable> {
    tabulate_with(rule, n, &TabulateOptions::default())
}

pub fn tabulate_with(rule: &RuleTable, n: u32, opts: &TabulateOptions) -> Result<IteratedTable> {
    if n == 0 {
        return Err(Error::input("iteration count must be at least 1"));
    }
    level_size(rule, n, opts.budget_bytes)?;
    let mut table = IteratedTable::first(rule);
    while table.n < n {
        table = table.next(opts)?;
    }
    Ok(table)
}

/// Calls `visit` on `f^1, ..., f^n_max` in order, holding at most two levels
/// in memory at a time.
pub fn for_each_level<F>(
    rule: &RuleTable,
    n_max: u32,
    opts: &TabulateOptions,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&IteratedTable) -> Result<()>,
{
    if n_max == 0 {
        return Err(Error::input("n_max must be at least 1"));
    }
    level_size(rule, n_max, opts.budget_bytes)?;
    let mut table = IteratedTable::first(rule);
    loop {
        visit(&table)?;
        if table.n >= n_max {
            return Ok(());
        }
        table = table.next(opts)?;
    }
}

/// Reads `f^n(w)` from the table.
pub fn eval(table: &IteratedTable, w: &Word) -> Result<u8> {
    if w.len() != table.width() {
        return Err(Error::input(format!(
            "f^{} takes {} cells, got {}",
            table.n,
            table.width(),
            w.len()
        )));
    }
    check_states(&table.rule, w)?;
    Ok(table.get(index_of(w.cells(), table.rule.states())))
}

/// Rows of a finite evolution, `rows[t+1] = step(rows[t])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpacetimeDiagram {
    radius: u32,
    states: u32,
    rows: Vec<Word>,
}

impl SpacetimeDiagram {
    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    /// Image layout with time going upward: the last row is on top and each
    /// row is centred under the initial word. Cells outside the shrinking
    /// dependence triangle are state 0.
    pub fn to_matrix(&self) -> StateMatrix {
        let cols = self.rows[0].len();
        let height = self.rows.len();
        let r = self.radius as usize;
        StateMatrix::from_fn(height, cols, self.states, Exec::Sequential, |i, j| {
            let t = height - 1 - i;
            let row = &self.rows[t];
            let off = r * t;
            if j >= off && j - off < row.len() {
                row.cells()[j - off]
            } else {
                0
            }
        })
    }
}

pub fn spacetime(rule: &RuleTable, w: &Word, steps: u32) -> Result<SpacetimeDiagram> {
    let need = 2 * rule.radius() as usize * steps as usize + 1;
    if w.len() < need {
        return Err(Error::input(format!(
            "{steps} steps need at least {need} cells, got {}",
            w.len()
        )));
    }
    check_states(rule, w)?;
    let mut rows = Vec::with_capacity(steps as usize + 1);
    rows.push(w.clone());
    for _ in 0..steps {
        let next = step(rule, rows.last().expect("nonempty"))?;
        rows.push(next);
    }
    Ok(SpacetimeDiagram {
        radius: rule.radius(),
        states: rule.states(),
        rows,
    })
}
