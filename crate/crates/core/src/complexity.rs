//! The distinct-row measure `d_n`, one-way communication cost, split scans
//! `R_n`, and the experimental Bounded / Linear / Other classification.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{for_each_level, IteratedTable, TabulateOptions};
use crate::exec::Exec;
use crate::matrices::{
    build_center_matrix_with, build_partition_matrix_with, profile_with, RowColProfile, StateMatrix,
};
use crate::rules::RuleTable;

/// Profiles of `M_c^n` for every centre state `c`, in order.
pub fn center_profiles(table: &IteratedTable, exec: Exec) -> Result<Vec<RowColProfile>> {
    (0..table.rule().states())
        .map(|c| {
            let m = build_center_matrix_with(table, c as u8, exec)?;
            Ok(profile_with(&m, exec))
        })
        .collect()
}

/// Maximum distinct row or column count over all centres.
pub fn d_from_profiles(profiles: &[RowColProfile]) -> usize {
    profiles.iter().map(RowColProfile::d).max().unwrap_or(0)
}

pub fn d_n(rule: &RuleTable, n: u32) -> Result<usize> {
    let table = crate::evolve::tabulate(rule, n)?;
    Ok(d_from_profiles(&center_profiles(&table, Exec::default())?))
}

/// `ceil(log2 d)`: bits the talking party needs to name one of `d` classes.
pub fn one_way_cc(d: usize) -> Result<u32> {
    if d == 0 {
        return Err(Error::input("a matrix has at least one distinct row"));
    }
    Ok(usize::BITS - (d - 1).leading_zeros())
}

/// `d_1, ..., d_N` for one rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexitySequence {
    pub values: Vec<usize>,
}

impl ComplexitySequence {
    pub fn new(values: Vec<usize>) -> Self {
        ComplexitySequence { values }
    }

    pub fn n_max(&self) -> u32 {
        self.values.len() as u32
    }

    /// `d_n`, 1-based.
    pub fn get(&self, n: u32) -> Option<usize> {
        self.values.get((n as usize).checked_sub(1)?).copied()
    }

    pub fn from_profiles(levels: &[Vec<RowColProfile>]) -> Self {
        ComplexitySequence {
            values: levels.iter().map(|p| d_from_profiles(p)).collect(),
        }
    }
}

/// Centre profiles for `n = 1..=n_max`, tabulating each level once.
pub fn level_profiles(
    rule: &RuleTable,
    n_max: u32,
    opts: &TabulateOptions,
) -> Result<Vec<Vec<RowColProfile>>> {
    let mut out = Vec::with_capacity(n_max as usize);
    for_each_level(rule, n_max, opts, |t| {
        out.push(center_profiles(t, opts.exec)?);
        Ok(())
    })?;
    Ok(out)
}

pub fn d_sequence(rule: &RuleTable, n_max: u32) -> Result<ComplexitySequence> {
    d_sequence_with(rule, n_max, &TabulateOptions::default())
}

pub fn d_sequence_with(
    rule: &RuleTable,
    n_max: u32,
    opts: &TabulateOptions,
) -> Result<ComplexitySequence> {
    Ok(ComplexitySequence::from_profiles(&level_profiles(
        rule, n_max, opts,
    )?))
}

/// The one-way protocol behind the `ceil(log2 d)` upper bound: the sender
/// names the class of identical rows its input falls in, and the receiver
/// reads the answer off that class's representative row.
#[derive(Clone, Debug)]
pub struct RowClassProtocol {
    message: Vec<usize>,
    answers: Vec<Vec<u8>>,
}

impl RowClassProtocol {
    /// Protocol where the row player talks.
    pub fn from_matrix(m: &StateMatrix) -> Self {
        let (message, firsts) = m.row_classes();
        let answers = firsts.iter().map(|&i| m.row(i)).collect();
        RowClassProtocol { message, answers }
    }

    /// What the sender transmits for row input `i`.
    pub fn message(&self, i: usize) -> usize {
        self.message[i]
    }

    /// Receiver's output given the message and its own column input `j`.
    pub fn answer(&self, message: usize, j: usize) -> u8 {
        self.answers[message][j]
    }

    pub fn classes(&self) -> usize {
        self.answers.len()
    }

    /// Worst-case message length in bits.
    pub fn cost_bits(&self) -> u32 {
        one_way_cc(self.classes().max(1)).expect("nonzero")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierParams {
    /// Number of trailing values examined.
    pub tail_len: u32,
    /// Values below this `n` are ignored as transient.
    pub min_n: u32,
}

impl Default for ClassifierParams {
    fn default() -> Self {
        ClassifierParams {
            tail_len: 8,
            min_n: 2,
        }
    }
}

impl ClassifierParams {
    pub fn validate(&self) -> Result<()> {
        if self.tail_len < 3 {
            return Err(Error::input(format!(
                "tail_len must be at least 3, got {}",
                self.tail_len
            )));
        }
        if self.min_n < 1 {
            return Err(Error::input("min_n must be at least 1"));
        }
        Ok(())
    }

    /// Shortest sequence these parameters can classify.
    pub fn required_len(&self) -> u32 {
        self.min_n + self.tail_len
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ClassLabel {
    /// Every measured value is at most `b`, and the tail sets no new maximum.
    Bounded {
        b: usize,
    },
    /// `d_n = floor(a1 * n) + a0` for every `n >= n0` measured.
    Linear {
        a1: Ratio<i64>,
        a0: i64,
        n0: u32,
    },
    Other,
}

impl ClassLabel {
    pub fn name(&self) -> &'static str {
        match self {
            ClassLabel::Bounded { .. } => "Bounded",
            ClassLabel::Linear { .. } => "Linear",
            ClassLabel::Other => "Other",
        }
    }
}

pub fn classify(seq: &ComplexitySequence, params: &ClassifierParams) -> Result<ClassLabel> {
    params.validate()?;
    let n_max = seq.n_max();
    if n_max < params.required_len() {
        return Err(Error::input(format!(
            "classification needs at least {} values (min_n {} + tail_len {}), got {n_max}",
            params.required_len(),
            params.min_n,
            params.tail_len
        )));
    }
    let values = &seq.values;
    let tail_start = (n_max - params.tail_len) as usize;
    let tail = &values[tail_start..];
    let before = &values[params.min_n as usize - 1..tail_start];

    let tail_max = *tail.iter().max().expect("nonempty tail");
    let before_max = *before.iter().max().expect("nonempty window");
    let constant = tail.iter().all(|&v| v == tail[0]);
    if constant || tail_max <= before_max {
        let b = *values.iter().max().expect("nonempty");
        return Ok(ClassLabel::Bounded { b });
    }

    let points: Vec<(i64, i64)> = tail
        .iter()
        .enumerate()
        .map(|(k, &v)| ((tail_start + k + 1) as i64, v as i64))
        .collect();
    Ok(match fit_floor_linear(&points) {
        Some((a1, a0)) => ClassLabel::Linear {
            a1,
            a0,
            n0: tail_start as u32 + 1,
        },
        None => ClassLabel::Other,
    })
}

/// Exact search for `a1 > 0` rational and `a0` integer with
/// `v = floor(a1 * n) + a0` at every point.
///
/// For fixed `a0` the admissible slopes form the half-open interval
/// `[max (v - a0) / n, min (v - a0 + 1) / n)`; any nonempty one contains a
/// rational, and the simplest is reported. Among all `a0`, the fit with the
/// smallest slope denominator wins (then the smaller slope).
pub fn fit_floor_linear(points: &[(i64, i64)]) -> Option<(Ratio<i64>, i64)> {
    let (&(n_first, v_first), &(n_last, v_last)) = (points.first()?, points.last()?);
    if points
        .windows(2)
        .any(|w| w[1].1 < w[0].1 || w[1].0 <= w[0].0)
        || n_first < 1
    {
        return None;
    }
    let span = n_last - n_first;
    if span == 0 {
        return None;
    }
    // a1 <= (dv + 1) / dn bounds how far below v_first the intercept can go
    let lowest = v_first - Integer::div_ceil(&((v_last - v_first + 1) * n_first), &span) - 1;
    let mut best: Option<(Ratio<i64>, i64)> = None;
    for a0 in (lowest..=v_first).rev() {
        let mut lo = Ratio::from_integer(0);
        let mut hi: Option<Ratio<i64>> = None;
        for &(n, v) in points {
            let l = Ratio::new(v - a0, n);
            let h = Ratio::new(v - a0 + 1, n);
            lo = lo.max(l);
            hi = Some(hi.map_or(h, |x| x.min(h)));
        }
        let hi = hi?;
        if lo >= hi {
            continue;
        }
        let a1 = simplest_positive_in(lo, hi);
        let better = match &best {
            None => true,
            Some((b, _)) => (a1.denom(), a1) < (b.denom(), *b),
        };
        if better {
            best = Some((a1, a0));
        }
    }
    best
}

/// Smallest-denominator positive rational in `[lo, hi)`, `0 <= lo < hi`.
fn simplest_positive_in(lo: Ratio<i64>, hi: Ratio<i64>) -> Ratio<i64> {
    let mut q = 1i64;
    loop {
        let p = (lo * q).ceil().to_integer().max(1);
        let x = Ratio::new(p, q);
        if x < hi {
            return x;
        }
        q += 1;
    }
}

/// Least-squares slope of `ln d` against `ln n` over the classifier tail;
/// about 1 for linear growth, larger for polynomial, growing for exponential.
pub fn growth_hint(seq: &ComplexitySequence, params: &ClassifierParams) -> Option<f64> {
    let n_max = seq.n_max() as usize;
    let k = (params.tail_len as usize).min(n_max);
    if k < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = (n_max - k..n_max)
        .map(|i| (((i + 1) as f64).ln(), (seq.values[i].max(1) as f64).ln()))
        .collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k as f64;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Distinct-row counts of the split matrices `M_p^n` for every `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RnScan {
    pub n: u32,
    /// `max(rows, cols)` per `p = 1..=2rn`.
    pub per_p: Vec<usize>,
    /// Rows only, per `p`.
    pub per_p_rows: Vec<usize>,
    pub r_n: usize,
    /// Smallest `p` attaining `r_n`.
    pub argmax_p: usize,
    pub r_n_rows: usize,
    pub argmax_p_rows: usize,
}

fn argmax_first(values: &[usize]) -> (usize, usize) {
    let mut best = (values[0], 1);
    for (k, &v) in values.iter().enumerate() {
        if v > best.0 {
            best = (v, k + 1);
        }
    }
    best
}

pub fn r_n_scan_table(table: &IteratedTable, exec: Exec) -> Result<RnScan> {
    let splits = table.width() - 1;
    let mut per_p = Vec::with_capacity(splits);
    let mut per_p_rows = Vec::with_capacity(splits);
    for p in 1..=splits {
        let m = build_partition_matrix_with(table, p, exec)?;
        let prof = profile_with(&m, exec);
        per_p.push(prof.d());
        per_p_rows.push(prof.distinct_rows);
    }
    let (r_n, argmax_p) = argmax_first(&per_p);
    let (r_n_rows, argmax_p_rows) = argmax_first(&per_p_rows);
    Ok(RnScan {
        n: table.n(),
        per_p,
        per_p_rows,
        r_n,
        argmax_p,
        r_n_rows,
        argmax_p_rows,
    })
}

pub fn r_n_scan(rule: &RuleTable, n: u32) -> Result<RnScan> {
    let table = crate::evolve::tabulate(rule, n)?;
    r_n_scan_table(&table, Exec::default())
}

/// Scans for every `n = 1..=n_max`.
pub fn r_n_scans(rule: &RuleTable, n_max: u32, opts: &TabulateOptions) -> Result<Vec<RnScan>> {
    let mut out = Vec::new();
    for_each_level(rule, n_max, opts, |t| {
        out.push(r_n_scan_table(t, opts.exec)?);
        Ok(())
    })?;
    Ok(out)
}
