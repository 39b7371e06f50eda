//! Closed forms for the automata whose `d_n` is known exactly, used to
//! cross-check the brute-force pipeline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::Word;
use crate::rules::RuleTable;

/// `d_n = n + 1` for rule 132.
pub fn rule132_dn(n: u32) -> usize {
    n as usize + 1
}

/// Distinct rows of `M_0^n` and `M_1^n` for rule 132: a zero centre never
/// turns on, a one survives iff both neighbouring blocks are long enough.
pub fn rule132_center_counts(n: u32) -> [usize; 2] {
    [1, n as usize + 1]
}

/// `d_n = n + 1` for rule 23.
pub fn rule23_dn(n: u32) -> usize {
    n as usize + 1
}

pub fn rule105_formula(x: u8, c: u8, y: u8) -> u8 {
    x ^ c ^ y ^ 1
}

/// `f(i, j, k) = j` if `j = 0` and `i = k`, `max(i, j, k)` otherwise.
pub fn three_state_rule() -> RuleTable {
    RuleTable::from_fn(3, 1, |w| {
        let (i, j, k) = (w[0], w[1], w[2]);
        if j == 0 && i == k {
            j
        } else {
            i.max(j).max(k)
        }
    })
    .expect("valid table")
}

/// Distances from the centre to the nearest 1 and 2 on each side, `None`
/// when absent within `n`. The nearest 1 is only looked for in front of
/// the nearest 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeStateContext {
    pub l1: Option<u32>,
    pub l2: Option<u32>,
    pub r1: Option<u32>,
    pub r2: Option<u32>,
}

impl ThreeStateContext {
    /// Reads the context of the centre of `w`, which has length `2n + 1`.
    pub fn from_word(w: &Word) -> Result<Self> {
        let cells = w.cells();
        if cells.len().is_multiple_of(2) {
            return Err(Error::input("word must have odd length"));
        }
        if cells.iter().any(|&x| x > 2) {
            return Err(Error::input("three-state words use states 0, 1, 2"));
        }
        let n = cells.len() / 2;
        let scan = |side: &dyn Fn(usize) -> u8| {
            let two = (1..=n).find(|&k| side(k) == 2);
            let one = (1..two.unwrap_or(n + 1)).find(|&k| side(k) == 1);
            (one.map(|k| k as u32), two.map(|k| k as u32))
        };
        let (l1, l2) = scan(&|k| cells[n - k]);
        let (r1, r2) = scan(&|k| cells[n + k]);
        Ok(ThreeStateContext { l1, l2, r1, r2 })
    }

    fn check(&self, n: u32) -> Result<()> {
        let in_range = |x: Option<u32>| x.is_none_or(|d| (1..=n).contains(&d));
        let before = |one: Option<u32>, two: Option<u32>| match (one, two) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        };
        if [self.l1, self.l2, self.r1, self.r2]
            .into_iter()
            .all(in_range)
            && before(self.l1, self.l2)
            && before(self.r1, self.r2)
        {
            Ok(())
        } else {
            Err(Error::input(format!(
                "context {self:?} is inconsistent for n = {n}"
            )))
        }
    }
}

/// Centre state after `n` steps of [`three_state_rule`].
///
/// A 2 stays. A 1 stays unless a 2 reaches it. A 0 stays only if the 2s
/// (and likewise the 1s in front of them) arrive from both sides at once or
/// not at all; otherwise the strongest arriving state takes over.
pub fn three_state_predict(c: u8, ctx: &ThreeStateContext, n: u32) -> Result<u8> {
    if c > 2 {
        return Err(Error::input(format!("state {c} out of range")));
    }
    ctx.check(n)?;
    let any_two = ctx.l2.is_some() || ctx.r2.is_some();
    Ok(match c {
        2 => 2,
        1 => {
            if any_two {
                2
            } else {
                1
            }
        }
        _ => {
            let twos_balanced = ctx.l2 == ctx.r2;
            let ones_balanced = ctx.l1 == ctx.r1;
            if twos_balanced && ones_balanced {
                0
            } else if any_two {
                2
            } else {
                1
            }
        }
    })
}

/// `((n+1)(n+2)/2, 2^(2 ceil(log2(n+1))))`: the row family lower bound and
/// the two-distances protocol upper bound.
pub fn three_state_dn_bounds(n: u32) -> (u64, u64) {
    let m = u64::from(n) + 1;
    let bits = u64::BITS - (m - 1).leading_zeros();
    (m * (m + 1) / 2, 1u64 << (2 * bits))
}

/// States of the comparison automaton: plain 0, 1 and marked 0, 1.
pub const PLAIN_0: u8 = 0;
pub const PLAIN_1: u8 = 1;
pub const MARKED_0: u8 = 2;
pub const MARKED_1: u8 = 3;

fn is_marked(x: u8) -> bool {
    x >= MARKED_0
}

/// Plain cells shift right, marked cells shift left; where they meet at a
/// plain 1 the centre records whether the two bits agree.
pub fn comparison_rule() -> RuleTable {
    RuleTable::from_fn(4, 1, |w| {
        let (x, c, y) = (w[0], w[1], w[2]);
        match (is_marked(x), is_marked(c), is_marked(y)) {
            (_, true, true) => y,
            (false, false, false) => x,
            (false, false, true) if c == PLAIN_1 => u8::from(x == y - MARKED_0),
            _ => 0,
        }
    })
    .expect("valid table")
}

/// `f^n(u, 1, marked v)` of the comparison automaton: 1 exactly when `v`
/// is `u` read backwards.
pub fn comparison_expected(u: &[u8], v: &[u8]) -> Result<u8> {
    if u.len() != v.len() {
        return Err(Error::input(format!(
            "lengths differ: {} and {}",
            u.len(),
            v.len()
        )));
    }
    if u.iter().chain(v).any(|&b| b > 1) {
        return Err(Error::input("comparison inputs are bits"));
    }
    Ok(u8::from(u.iter().eq(v.iter().rev())))
}

/// `u · 1 · v` with `v` marked, the input `comparison_expected` describes.
pub fn comparison_word(u: &[u8], v: &[u8]) -> Word {
    let mut cells = u.to_vec();
    cells.push(PLAIN_1);
    cells.extend(v.iter().map(|&b| b + MARKED_0));
    Word::new(cells)
}
