//! Matrix views of `f^n`: the centre-fixed family `M_c^n`, the split family
//! `M_p^n`, distinct row/column counts and GF(2) rank.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::bits::words_for;
use crate::error::{Error, Result};
use crate::evolve::{reverse_index, Cells, IteratedTable};
use crate::exec::Exec;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    /// Row-major, each row padded to whole words.
    Packed {
        words: Vec<u64>,
        row_words: usize,
    },
    Bytes(Vec<u8>),
}

/// Dense `rows x cols` matrix of cell states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMatrix {
    rows: usize,
    cols: usize,
    states: u32,
    storage: Storage,
}

impl StateMatrix {
    /// From row-major entries.
    pub fn new(rows: usize, cols: usize, states: u32, entries: &[u8]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if !(2..=255).contains(&states) {
            return Err(Error::input(format!("state count {states} out of range")));
        }
        if let Some(bad) = entries.iter().find(|&&v| u32::from(v) >= states) {
            return Err(Error::input(format!(
                "entry {bad} is not a state below {states}"
            )));
        }
        Ok(Self::from_fn(
            rows,
            cols,
            states,
            Exec::Sequential,
            |i, j| entries[i * cols + j],
        ))
    }

    pub fn from_fn<F>(rows: usize, cols: usize, states: u32, exec: Exec, f: F) -> Self
    where
        F: Fn(usize, usize) -> u8 + Sync,
    {
        let storage = if states == 2 {
            let row_words = words_for(cols);
            let mut words = vec![0u64; rows * row_words];
            if row_words > 0 {
                exec.fill(&mut words, |q| {
                    let i = q / row_words;
                    let base = (q % row_words) << 6;
                    let end = (base + 64).min(cols);
                    (base..end).fold(0u64, |acc, j| acc | (u64::from(f(i, j) & 1) << (j - base)))
                });
            }
            Storage::Packed { words, row_words }
        } else {
            let mut data = vec![0u8; rows * cols];
            if cols > 0 {
                exec.fill(&mut data, |k| f(k / cols, k % cols));
            }
            Storage::Bytes(data)
        };
        StateMatrix {
            rows,
            cols,
            states,
            storage,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn states(&self) -> u32 {
        self.states
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        debug_assert!(i < self.rows && j < self.cols);
        match &self.storage {
            Storage::Packed { words, row_words } => {
                ((words[i * row_words + (j >> 6)] >> (j & 63)) & 1) as u8
            }
            Storage::Bytes(v) => v[i * self.cols + j],
        }
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            out.extend((0..self.cols).map(|j| self.get(i, j)));
        }
        out
    }

    pub fn row(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn transpose_with(&self, exec: Exec) -> StateMatrix {
        StateMatrix::from_fn(self.cols, self.rows, self.states, exec, |i, j| {
            self.get(j, i)
        })
    }

    pub fn transpose(&self) -> StateMatrix {
        self.transpose_with(Exec::default())
    }

    /// Assigns every row a class id (first-occurrence order) such that two
    /// rows share an id iff they are equal. Returns the ids and, per class,
    /// the index of its first row.
    pub fn row_classes(&self) -> (Vec<usize>, Vec<usize>) {
        match &self.storage {
            Storage::Packed { words, row_words } => {
                classes((0..self.rows).map(|i| &words[i * row_words..(i + 1) * row_words]))
            }
            Storage::Bytes(v) => {
                classes((0..self.rows).map(|i| &v[i * self.cols..(i + 1) * self.cols]))
            }
        }
    }

    pub fn distinct_rows(&self) -> usize {
        if self.rows == 0 {
            return 0;
        }
        match &self.storage {
            // each row fits in one word
            Storage::Packed { words, .. } if self.cols <= 64 => {
                count_distinct(words.iter().copied(), self.cols)
            }
            _ => self.row_classes().1.len(),
        }
    }

    pub fn distinct_cols_with(&self, exec: Exec) -> usize {
        if self.cols == 0 {
            return 0;
        }
        match &self.storage {
            // each column fits in one word: gather it without transposing
            Storage::Packed { words, row_words } if self.rows <= 64 => {
                let rw = *row_words;
                let rows = self.rows;
                let cols = self.cols;
                let columns = (0..rw).flat_map(move |w| {
                    let lanes: Vec<u64> = (0..rows).map(|i| words[i * rw + w]).collect();
                    let end = (cols - w * 64).min(64);
                    (0..end).map(move |b| {
                        lanes
                            .iter()
                            .enumerate()
                            .fold(0u64, |acc, (i, lane)| acc | (((lane >> b) & 1) << i))
                    })
                });
                count_distinct(columns, rows)
            }
            _ => self.transpose_with(exec).distinct_rows(),
        }
    }

    pub fn distinct_cols(&self) -> usize {
        self.distinct_cols_with(Exec::default())
    }

    pub(crate) fn packed_rows(&self) -> Option<impl Iterator<Item = &[u64]>> {
        match &self.storage {
            Storage::Packed { words, row_words } => {
                let rw = *row_words;
                Some((0..self.rows).map(move |i| &words[i * rw..(i + 1) * rw]))
            }
            Storage::Bytes(_) => None,
        }
    }

    /// Binary matrices only: bytes of the P4 raster, rows MSB-first and
    /// padded to whole bytes.
    pub(crate) fn pbm_raster(&self) -> Option<Vec<u8>> {
        let rows = self.packed_rows()?;
        let row_bytes = self.cols.div_ceil(8);
        let mut out = Vec::with_capacity(row_bytes * self.rows);
        for row in rows {
            for b in 0..row_bytes {
                let word = row[b / 8];
                let byte = (word >> ((b % 8) * 8)) as u8;
                out.push(byte.reverse_bits());
            }
        }
        Some(out)
    }
}

/// Distinct values among `width`-bit keys.
fn count_distinct(values: impl Iterator<Item = u64>, width: usize) -> usize {
    if width <= 20 {
        let mut seen = crate::bits::PackedBits::zeros(1 << width);
        let mut count = 0;
        for v in values {
            if !seen.get(v as usize) {
                seen.set(v as usize, true);
                count += 1;
            }
        }
        count
    } else {
        values.collect::<std::collections::HashSet<u64>>().len()
    }
}

fn classes<'a, K, I>(rows: I) -> (Vec<usize>, Vec<usize>)
where
    K: Eq + Hash + ?Sized + 'a,
    I: Iterator<Item = &'a K>,
{
    let mut seen: HashMap<&K, usize> = HashMap::new();
    let mut ids = Vec::new();
    let mut firsts = Vec::new();
    for (i, row) in rows.enumerate() {
        let next = firsts.len();
        let id = *seen.entry(row).or_insert(next);
        if id == next {
            firsts.push(i);
        }
        ids.push(id);
    }
    (ids, firsts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowColProfile {
    pub distinct_rows: usize,
    pub distinct_cols: usize,
}

impl RowColProfile {
    /// `max(distinct rows, distinct columns)`.
    pub fn d(&self) -> usize {
        self.distinct_rows.max(self.distinct_cols)
    }
}

pub fn profile(m: &StateMatrix) -> RowColProfile {
    profile_with(m, Exec::default())
}

pub fn profile_with(m: &StateMatrix, exec: Exec) -> RowColProfile {
    RowColProfile {
        distinct_rows: m.distinct_rows(),
        distinct_cols: m.distinct_cols_with(exec),
    }
}

/// Number of left (or right) cells on each side of the centre: `r * n`.
fn side_len(table: &IteratedTable) -> usize {
    table.rule().radius() as usize * table.n() as usize
}

/// `M_c^n(i, j) = f^n(reverse(digits(i)), c, digits(j))`, both indices on
/// `r*n` base-`s` digits.
pub fn build_center_matrix(table: &IteratedTable, center: u8) -> Result<StateMatrix> {
    build_center_matrix_with(table, center, Exec::default())
}

pub fn build_center_matrix_with(
    table: &IteratedTable,
    center: u8,
    exec: Exec,
) -> Result<StateMatrix> {
    let s = table.rule().states();
    if u32::from(center) >= s {
        return Err(Error::input(format!(
            "centre state {center} is outside [0, {s})"
        )));
    }
    let m = side_len(table);
    let size = (s as usize).pow(m as u32);
    let c = center as usize;
    // word-aligned rows: copy them straight out of the packed table
    if let (Cells::Packed(bits), true) = (table.cells(), m >= 6) {
        let row_words = size / 64;
        let src = bits.words();
        let mut words = vec![0u64; size * row_words];
        exec.fill(&mut words, |q| {
            let i = q / row_words;
            let left = reverse_index(i, m, 2);
            let start = ((left << (m + 1)) | (c << m)) / 64;
            src[start + q % row_words]
        });
        return Ok(StateMatrix {
            rows: size,
            cols: size,
            states: 2,
            storage: Storage::Packed { words, row_words },
        });
    }
    Ok(StateMatrix::from_fn(size, size, s, exec, |i, j| {
        let left = reverse_index(i, m, s);
        table.get((left * s as usize + c) * size + j)
    }))
}

/// `M_p^n(u, v) = f^n(u . reverse(v))` where `u` covers the `p` leftmost
/// cells and `v` the remaining `2rn + 1 - p`; the centre is not fixed.
pub fn build_partition_matrix(table: &IteratedTable, p: usize) -> Result<StateMatrix> {
    build_partition_matrix_with(table, p, Exec::default())
}

pub fn build_partition_matrix_with(
    table: &IteratedTable,
    p: usize,
    exec: Exec,
) -> Result<StateMatrix> {
    let width = table.width();
    if p == 0 || p >= width {
        return Err(Error::input(format!(
            "split point must be in [1, {}], got {p}",
            width - 1
        )));
    }
    let s = table.rule().states();
    let q = width - p;
    let rows = (s as usize).pow(p as u32);
    let cols = (s as usize).pow(q as u32);
    Ok(StateMatrix::from_fn(rows, cols, s, exec, |u, v| {
        table.get(u * cols + reverse_index(v, q, s))
    }))
}

/// Rank over GF(2), binary matrices only.
pub fn rank_gf2(m: &StateMatrix) -> Result<usize> {
    let Some(rows) = m.packed_rows() else {
        return Err(Error::unsupported(format!(
            "GF(2) rank needs a 0-1 matrix, this one has {} states",
            m.states
        )));
    };
    let (_, firsts) = m.row_classes();
    let rows: Vec<&[u64]> = rows.collect();
    // basis[p] has lowest set bit p
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; m.cols];
    let mut rank = 0;
    for &i in &firsts {
        let mut v = rows[i].to_vec();
        while let Some(p) = lowest_bit(&v) {
            match &basis[p] {
                Some(b) => {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
                None => {
                    basis[p] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Ok(rank)
}

fn lowest_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}
