//! Sufficient conditions for bounded `d_n`: additivity (decided exactly),
//! limited and half-limited sensibility, and nilpotency (both probed up to a
//! finite `n_max`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{digits_of, for_each_level, Cells, IteratedTable, TabulateOptions, Word};
use crate::exec::Exec;
use crate::rules::RuleTable;

/// Cap on operator tables tried per search (`s^(s^2)` for each operator).
pub const DEFAULT_OPERATOR_BUDGET: u64 = 1 << 24;

/// Operators `⊕` (with two-sided neutral `e`) and `⊗` such that
/// `f(a ⊕ a') = f(a) ⊗ f(a')` and `f(a ⊗ a') = f(a) ⊕ f(a')` cellwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditivityWitness {
    pub states: u32,
    /// Row-major `s × s`: `oplus[x * s + y] = x ⊕ y`.
    pub oplus: Vec<u8>,
    pub otimes: Vec<u8>,
    pub neutral: u8,
}

impl AdditivityWitness {
    pub fn oplus(&self, x: u8, y: u8) -> u8 {
        self.oplus[x as usize * self.states as usize + y as usize]
    }

    pub fn otimes(&self, x: u8, y: u8) -> u8 {
        self.otimes[x as usize * self.states as usize + y as usize]
    }

    /// Rechecks the neutral element and both equations over every pair of
    /// neighbourhoods, independently of the search.
    pub fn verify(&self, rule: &RuleTable) -> bool {
        let s = rule.states();
        if self.states != s
            || self.oplus.len() != (s * s) as usize
            || self.otimes.len() != (s * s) as usize
            || u32::from(self.neutral) >= s
            || self
                .oplus
                .iter()
                .chain(&self.otimes)
                .any(|&x| u32::from(x) >= s)
        {
            return false;
        }
        if (0..s as u8)
            .any(|x| self.oplus(x, self.neutral) != x || self.oplus(self.neutral, x) != x)
        {
            return false;
        }
        let width = rule.width();
        let hoods: Vec<Vec<u8>> = (0..rule.table().len())
            .map(|i| digits_of(i, width, s))
            .collect();
        let mut buf = vec![0u8; width];
        for a in &hoods {
            for b in &hoods {
                let (fa, fb) = (rule.apply(a), rule.apply(b));
                for k in 0..width {
                    buf[k] = self.oplus(a[k], b[k]);
                }
                if rule.apply(&buf) != self.otimes(fa, fb) {
                    return false;
                }
                for k in 0..width {
                    buf[k] = self.otimes(a[k], b[k]);
                }
                if rule.apply(&buf) != self.oplus(fa, fb) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn detect_additivity(rule: &RuleTable) -> Result<Option<AdditivityWitness>> {
    detect_additivity_with_budget(rule, DEFAULT_OPERATOR_BUDGET)
}

/// Searches `⊕` in lexicographic order of `(x⊕y)` over row-major cells, then
/// `e` ascending, then the entries of `⊗` left free by the first equation,
/// again lexicographically. Returns the first witness found.
pub fn detect_additivity_with_budget(
    rule: &RuleTable,
    budget: u64,
) -> Result<Option<AdditivityWitness>> {
    let s = rule.states();
    let cells = (s * s) as usize;
    let candidates = u64::from(s)
        .checked_pow(cells as u32)
        .filter(|&c| c <= budget);
    let Some(candidates) = candidates else {
        return Err(Error::Resource {
            what: format!("operator tables for {s} states"),
            needed: u128::from(s).checked_pow(cells as u32).unwrap_or(u128::MAX),
            limit: u128::from(budget),
        });
    };
    let width = rule.width();
    let m = rule.table().len();
    let hoods: Vec<Vec<u8>> = (0..m).map(|i| digits_of(i, width, s)).collect();
    let f = rule.table();
    let combine = |op: &[u8], a: &[u8], b: &[u8]| -> usize {
        let mut idx = 0usize;
        for k in 0..width {
            idx = idx * s as usize + op[a[k] as usize * s as usize + b[k] as usize] as usize;
        }
        idx
    };

    for code in 0..candidates {
        let oplus = digits_of(code as usize, cells, s);
        for e in 0..s as u8 {
            let neutral_ok = (0..s as u8).all(|x| {
                oplus[(x as u32 * s + u32::from(e)) as usize] == x
                    && oplus[(u32::from(e) * s + x as u32) as usize] == x
            });
            if !neutral_ok {
                continue;
            }
            // first equation pins otimes on pairs of attained values
            let mut forced: Vec<Option<u8>> = vec![None; cells];
            let mut consistent = true;
            'pairs: for a in 0..m {
                for b in 0..m {
                    let key = f[a] as usize * s as usize + f[b] as usize;
                    let val = f[combine(&oplus, &hoods[a], &hoods[b])];
                    match forced[key] {
                        None => forced[key] = Some(val),
                        Some(v) if v != val => {
                            consistent = false;
                            break 'pairs;
                        }
                        _ => {}
                    }
                }
            }
            if !consistent {
                continue;
            }
            let free: Vec<usize> = (0..cells).filter(|&k| forced[k].is_none()).collect();
            let free_count = u64::from(s).pow(free.len() as u32);
            for assignment in 0..free_count {
                let mut otimes: Vec<u8> = forced.iter().map(|x| x.unwrap_or(0)).collect();
                for (k, v) in free
                    .iter()
                    .zip(digits_of(assignment as usize, free.len(), s))
                {
                    otimes[*k] = v;
                }
                let second = (0..m).all(|a| {
                    (0..m).all(|b| {
                        f[combine(&otimes, &hoods[a], &hoods[b])]
                            == oplus[f[a] as usize * s as usize + f[b] as usize]
                    })
                });
                if second {
                    return Ok(Some(AdditivityWitness {
                        states: s,
                        oplus,
                        otimes,
                        neutral: e,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn run_steps(rule: &RuleTable, cells: Vec<u8>, steps: usize) -> Result<u8> {
    let mut w = Word::new(cells);
    for _ in 0..steps {
        w = crate::evolve::step(rule, &w)?;
    }
    Ok(w.cells()[0])
}

/// Alice's single message: `f^n(u, c, e^n)`.
pub fn additive_alice_message(
    rule: &RuleTable,
    witness: &AdditivityWitness,
    u: &Word,
    c: u8,
) -> Result<u8> {
    let rn = u.len();
    let mut cells = u.cells().to_vec();
    cells.push(c);
    cells.extend(std::iter::repeat_n(witness.neutral, rn));
    run_steps(rule, cells, rn / rule.radius() as usize)
}

/// Bob's output: combines `b` with `f^n(e^n, e, v)` by `⊕` for even `n`
/// and by `⊗` for odd `n`. Bob uses `e` at the center because
/// `(u, c, e^n) ⊕ (e^n, e, v) = (u, c, v)`.
pub fn additive_bob_output(
    rule: &RuleTable,
    witness: &AdditivityWitness,
    b: u8,
    v: &Word,
) -> Result<u8> {
    let rn = v.len();
    let mut cells = vec![witness.neutral; rn + 1];
    cells.extend_from_slice(v.cells());
    let n = rn / rule.radius() as usize;
    let own = run_steps(rule, cells, n)?;
    Ok(if n.is_multiple_of(2) {
        witness.oplus(b, own)
    } else {
        witness.otimes(b, own)
    })
}

/// Output of the one-message protocol for `f^n(u c v)`, simulated by direct
/// evolution rather than table lookup.
pub fn additive_protocol_eval(
    rule: &RuleTable,
    witness: &AdditivityWitness,
    u: &Word,
    c: u8,
    v: &Word,
) -> Result<u8> {
    let r = rule.radius() as usize;
    if u.len() != v.len() || u.is_empty() || !u.len().is_multiple_of(r) {
        return Err(Error::input(format!(
            "halves must both have length r*n with n >= 1, got {} and {}",
            u.len(),
            v.len()
        )));
    }
    if u32::from(c) >= rule.states() {
        return Err(Error::input(format!("center state {c} out of range")));
    }
    if !witness.verify(rule) {
        return Err(Error::input(
            "witness does not satisfy the additivity equations",
        ));
    }
    let b = additive_alice_message(rule, witness, u, c)?;
    additive_bob_output(rule, witness, b, v)
}

/// Positions (1-based, left to right) that `f^n` depends on.
pub fn essential_positions(table: &IteratedTable) -> Vec<usize> {
    essential_positions_with(table, Exec::default())
}

pub fn essential_positions_with(table: &IteratedTable, exec: Exec) -> Vec<usize> {
    let width = table.width();
    let s = table.rule().states() as usize;
    let flags = exec.map_range(width, |k| {
        let pos = k + 1;
        let stride = s.pow((width - pos) as u32);
        match table.cells() {
            Cells::Packed(bits) => packed_depends_on(bits.words(), width - pos),
            Cells::Bytes(v) => (0..v.len()).any(|w| {
                !(w / stride).is_multiple_of(s) && v[w] != v[w - ((w / stride) % s) * stride]
            }),
        }
    });
    (1..=width).filter(|&p| flags[p - 1]).collect()
}

const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Whether toggling index bit `bit` ever changes the packed table.
fn packed_depends_on(words: &[u64], bit: usize) -> bool {
    if bit < 6 {
        let shift = 1u32 << bit;
        let mask = LOW_HALF[bit];
        words.iter().any(|&w| (w & mask) != ((w >> shift) & mask))
    } else {
        let stride = 1usize << (bit - 6);
        words
            .chunks(2 * stride)
            .any(|block| block[..stride] != block[stride..])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensibilityLevel {
    pub n: u32,
    pub essential: Vec<usize>,
    /// Essential positions among `1..=rn`.
    pub left_count: usize,
    /// Essential positions among `rn+2..=2rn+1`.
    pub right_count: usize,
    pub total_count: usize,
}

impl SensibilityLevel {
    pub fn from_essential(n: u32, radius: u32, essential: Vec<usize>) -> Self {
        let rn = (radius * n) as usize;
        let left_count = essential.iter().filter(|&&p| p <= rn).count();
        let right_count = essential.iter().filter(|&&p| p > rn + 1).count();
        SensibilityLevel {
            n,
            total_count: essential.len(),
            essential,
            left_count,
            right_count,
        }
    }
}

/// Trailing window length used for the experimental flags.
pub const SENSIBILITY_WINDOW: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensibilityReport {
    pub levels: Vec<SensibilityLevel>,
    /// `None` when `n_max` is too small to separate a window from its past.
    pub limited: Option<bool>,
    pub half_limited: Option<bool>,
    pub left_bounded: Option<bool>,
    pub right_bounded: Option<bool>,
}

impl SensibilityReport {
    pub fn from_levels(levels: Vec<SensibilityLevel>) -> Self {
        let series =
            |f: fn(&SensibilityLevel) -> usize| -> Vec<usize> { levels.iter().map(f).collect() };
        let total = window_bounded(&series(|l| l.total_count));
        let left = window_bounded(&series(|l| l.left_count));
        let right = window_bounded(&series(|l| l.right_count));
        let half = match (total, left, right) {
            (Some(t), Some(l), Some(r)) => Some(t || l || r),
            _ => None,
        };
        SensibilityReport {
            levels,
            limited: total,
            half_limited: half,
            left_bounded: left,
            right_bounded: right,
        }
    }

    pub fn n_max(&self) -> u32 {
        self.levels.len() as u32
    }
}

/// No value in the trailing window exceeds the maximum seen before it.
fn window_bounded(values: &[usize]) -> Option<bool> {
    let w = SENSIBILITY_WINDOW as usize;
    if values.len() <= w {
        return None;
    }
    let (before, window) = values.split_at(values.len() - w);
    Some(window.iter().max() <= before.iter().max())
}

pub fn sensibility_report(rule: &RuleTable, n_max: u32) -> Result<SensibilityReport> {
    sensibility_report_with(rule, n_max, &TabulateOptions::default())
}

pub fn sensibility_report_with(
    rule: &RuleTable,
    n_max: u32,
    opts: &TabulateOptions,
) -> Result<SensibilityReport> {
    let mut levels = Vec::with_capacity(n_max as usize);
    for_each_level(rule, n_max, opts, |t| {
        levels.push(sensibility_level(t, opts.exec));
        Ok(())
    })?;
    Ok(SensibilityReport::from_levels(levels))
}

pub fn sensibility_level(table: &IteratedTable, exec: Exec) -> SensibilityLevel {
    SensibilityLevel::from_essential(
        table.n(),
        table.rule().radius(),
        essential_positions_with(table, exec),
    )
}

/// Experimental only: constancy up to `n_max` proves nothing beyond it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyReport {
    pub n_max: u32,
    /// Least tested `n0` with `f^n` constant for every tested `n >= n0`.
    pub constant_from: Option<u32>,
    /// Constant value of `f^n` per level, if any.
    pub constant_values: Vec<Option<u8>>,
}

impl NilpotencyReport {
    pub fn from_constants(constant_values: Vec<Option<u8>>) -> Self {
        let tail = constant_values
            .iter()
            .rev()
            .take_while(|v| v.is_some())
            .count();
        let n_max = constant_values.len() as u32;
        NilpotencyReport {
            n_max,
            constant_from: (tail > 0).then(|| n_max - tail as u32 + 1),
            constant_values,
        }
    }
}

pub fn nilpotency_probe(rule: &RuleTable, n_max: u32) -> Result<NilpotencyReport> {
    nilpotency_probe_with(rule, n_max, &TabulateOptions::default())
}

pub fn nilpotency_probe_with(
    rule: &RuleTable,
    n_max: u32,
    opts: &TabulateOptions,
) -> Result<NilpotencyReport> {
    let mut values = Vec::with_capacity(n_max as usize);
    for_each_level(rule, n_max, opts, |t| {
        values.push(t.constant_value());
        Ok(())
    })?;
    Ok(NilpotencyReport::from_constants(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::{eval, index_of, tabulate};
    use crate::rules::{eca_from_wolfram, representatives, EcaCode};

    const XOR: [u8; 4] = [0, 1, 1, 0];
    const XNOR: [u8; 4] = [1, 0, 0, 1];

    fn eca(c: u32) -> RuleTable {
        eca_from_wolfram(c).unwrap()
    }

    fn lookup(table: &IteratedTable, cells: &[u8]) -> u8 {
        table.get(index_of(cells, table.rule().states()))
    }

    fn word(bits: usize, len: usize) -> Word {
        Word::new(digits_of(bits, len, 2))
    }

    #[test]
    fn rule_105_witness() {
        let w = detect_additivity(&eca(105)).unwrap().unwrap();
        assert_eq!(w.oplus, XOR);
        assert_eq!(w.otimes, XNOR);
        assert_eq!(w.neutral, 0);
        assert!(w.verify(&eca(105)));
    }

    #[test]
    fn rule_110_has_no_witness() {
        assert_eq!(detect_additivity(&eca(110)).unwrap(), None);
    }

    #[test]
    fn witnesses_verify_and_are_symmetric_under_orbits() {
        for code in EcaCode::all() {
            let f = code.rule();
            let found = detect_additivity(&f).unwrap();
            if let Some(w) = &found {
                assert!(w.verify(&f), "rule {code}");
            }
            let canon = crate::rules::orbit(code).canonical().rule();
            assert_eq!(
                found.is_some(),
                detect_additivity(&canon).unwrap().is_some(),
                "rule {code}"
            );
        }
    }

    #[test]
    fn tampered_witness_fails_verification() {
        let f = eca(105);
        let mut w = detect_additivity(&f).unwrap().unwrap();
        w.otimes = XOR.to_vec();
        assert!(!w.verify(&f));
        let u = word(0, 1);
        assert!(matches!(
            additive_protocol_eval(&f, &w, &u, 0, &u),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn operator_budget_is_enforced() {
        let three = RuleTable::from_fn(3, 1, |w| w[1]).unwrap();
        let err = detect_additivity_with_budget(&three, 1000).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
        let four = RuleTable::from_fn(4, 1, |w| w[1]).unwrap();
        assert!(matches!(
            detect_additivity(&four),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn three_state_identity_is_additive() {
        let id = RuleTable::from_fn(3, 1, |w| w[1]).unwrap();
        let w = detect_additivity(&id).unwrap().unwrap();
        assert!(w.verify(&id));
    }

    #[test]
    fn protocol_examples() {
        let f = eca(105);
        let w = detect_additivity(&f).unwrap().unwrap();
        assert_eq!(
            additive_protocol_eval(&f, &w, &word(0, 1), 0, &word(0, 1)).unwrap(),
            1
        );

        let id = eca(204);
        let wid = detect_additivity(&id).unwrap().unwrap();
        for n in 1..=3 {
            for u in 0..1 << n {
                for v in 0..1 << n {
                    for c in 0..2 {
                        let out =
                            additive_protocol_eval(&id, &wid, &word(u, n), c, &word(v, n)).unwrap();
                        assert_eq!(out, c);
                    }
                }
            }
        }

        let f90 = eca(90);
        let w90 = detect_additivity(&f90).unwrap().unwrap();
        let t = tabulate(&f90, 2).unwrap();
        for x in 0..32 {
            let cells = digits_of(x, 5, 2);
            let (u, c, v) = (
                Word::new(cells[..2].to_vec()),
                cells[2],
                Word::new(cells[3..].to_vec()),
            );
            let expected = eval(&t, &Word::new(cells.clone())).unwrap();
            assert_eq!(
                additive_protocol_eval(&f90, &w90, &u, c, &v).unwrap(),
                expected
            );
        }
    }

    #[test]
    fn protocol_matches_table_for_every_additive_rule() {
        for code in representatives() {
            let f = code.rule();
            let Some(w) = detect_additivity(&f).unwrap() else {
                continue;
            };
            for n in 1..=4usize {
                let t = tabulate(&f, n as u32).unwrap();
                for x in 0..t.len() {
                    let cells = digits_of(x, 2 * n + 1, 2);
                    let got = additive_protocol_eval(
                        &f,
                        &w,
                        &Word::new(cells[..n].to_vec()),
                        cells[n],
                        &Word::new(cells[n + 1..].to_vec()),
                    )
                    .unwrap();
                    assert_eq!(got, t.get(x), "rule {code} n {n} word {x}");
                }
            }
        }
    }

    #[test]
    fn additivity_transports_to_iterates() {
        for code in representatives() {
            let f = code.rule();
            let Some(w) = detect_additivity(&f).unwrap() else {
                continue;
            };
            for n in 1..=4u32 {
                let t = tabulate(&f, n).unwrap();
                let width = t.width();
                let words: Vec<Vec<u8>> = (0..t.len()).map(|x| digits_of(x, width, 2)).collect();
                for a in &words {
                    for b in &words {
                        let plus: Vec<u8> = a.iter().zip(b).map(|(&x, &y)| w.oplus(x, y)).collect();
                        let times: Vec<u8> =
                            a.iter().zip(b).map(|(&x, &y)| w.otimes(x, y)).collect();
                        let (fa, fb) = (lookup(&t, a), lookup(&t, b));
                        let (on_plus, on_times) = if n % 2 == 1 {
                            (w.otimes(fa, fb), w.oplus(fa, fb))
                        } else {
                            (w.oplus(fa, fb), w.otimes(fa, fb))
                        };
                        assert_eq!(lookup(&t, &plus), on_plus, "rule {code} n {n}");
                        assert_eq!(lookup(&t, &times), on_times, "rule {code} n {n}");
                    }
                }
            }
        }
    }

    fn brute_essential(t: &IteratedTable) -> Vec<usize> {
        let width = t.width();
        let s = t.rule().states();
        (1..=width)
            .filter(|&p| {
                (0..t.len()).any(|x| {
                    let mut cells = digits_of(x, width, s);
                    let orig = lookup(t, &cells);
                    (0..s as u8).any(|v| {
                        cells[p - 1] = v;
                        lookup(t, &cells) != orig
                    })
                })
            })
            .collect()
    }

    #[test]
    fn essential_positions_match_brute_force() {
        for code in EcaCode::all() {
            for n in 1..=3 {
                let t = tabulate(&code.rule(), n).unwrap();
                assert_eq!(
                    essential_positions(&t),
                    brute_essential(&t),
                    "rule {code} n {n}"
                );
                assert_eq!(
                    essential_positions_with(&t, Exec::Sequential),
                    essential_positions(&t)
                );
            }
        }
        let three = crate::oracles::three_state_rule();
        for n in 1..=2 {
            let t = tabulate(&three, n).unwrap();
            assert_eq!(essential_positions(&t), brute_essential(&t));
        }
    }

    #[test]
    fn essential_examples() {
        for n in 1..=8 {
            let t = tabulate(&eca(0), n).unwrap();
            assert!(essential_positions(&t).is_empty());
            let t = tabulate(&eca(170), n).unwrap();
            assert_eq!(essential_positions(&t), vec![2 * n as usize + 1]);
            let t = tabulate(&eca(60), n).unwrap();
            assert!(essential_positions(&t).iter().all(|&p| p <= n as usize + 1));
        }
    }

    #[test]
    fn essential_set_is_minimal_support() {
        for code in representatives() {
            for n in 1..=3 {
                let t = tabulate(&code.rule(), n).unwrap();
                let width = t.width();
                let ess = essential_positions(&t);
                let masked = |x: usize, keep: &[usize]| -> Vec<u8> {
                    let mut cells = digits_of(x, width, 2);
                    for (k, c) in cells.iter_mut().enumerate() {
                        if !keep.contains(&(k + 1)) {
                            *c = 0;
                        }
                    }
                    cells
                };
                for x in 0..t.len() {
                    assert_eq!(t.get(x), lookup(&t, &masked(x, &ess)), "rule {code} n {n}");
                }
                for drop in &ess {
                    let smaller: Vec<usize> = ess.iter().copied().filter(|p| p != drop).collect();
                    assert!((0..t.len()).any(|x| t.get(x) != lookup(&t, &masked(x, &smaller))));
                }
            }
        }
    }

    #[test]
    fn sensibility_counts_are_consistent() {
        let r = sensibility_report(&eca(30), 8).unwrap();
        for l in &r.levels {
            let center = l.essential.contains(&(l.n as usize + 1)) as usize;
            assert_eq!(l.left_count + l.right_count + center, l.total_count);
        }
        assert_eq!(r.limited, Some(false));
        assert_eq!(r.half_limited, Some(false));
        assert_eq!(sensibility_report(&eca(30), 6).unwrap().limited, None);
    }

    #[test]
    fn limited_sensibility_list() {
        let limited = [
            0, 1, 2, 3, 4, 5, 8, 10, 12, 19, 24, 29, 34, 36, 38, 42, 46, 72, 76, 108, 138, 200,
        ];
        for code in limited {
            let r = sensibility_report(&eca(code), 12).unwrap();
            assert_eq!(r.limited, Some(true), "rule {code}");
            assert_eq!(r.half_limited, Some(true), "rule {code}");
        }
        // expected limited, but only one half stays bounded
        let r78 = sensibility_report(&eca(78), 12).unwrap();
        assert_eq!((r78.limited, r78.half_limited), (Some(false), Some(true)));
    }

    #[test]
    fn half_limited_list() {
        for code in [7, 13, 28, 140, 172] {
            let r = sensibility_report(&eca(code), 12).unwrap();
            assert_eq!(
                (r.limited, r.half_limited),
                (Some(false), Some(true)),
                "rule {code}"
            );
        }
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_probe(&eca(0), 6).unwrap().constant_from, Some(1));
        assert_eq!(nilpotency_probe(&eca(204), 6).unwrap().constant_from, None);
        // rule 8 marks 011; two adjacent marks are impossible, so f^2 = 0
        let r = nilpotency_probe(&eca(8), 8).unwrap();
        assert_eq!(r.constant_from, Some(2));
        let r = NilpotencyReport::from_constants(vec![None, Some(0), None, Some(0), Some(0)]);
        assert_eq!(r.constant_from, Some(4));
    }
}
