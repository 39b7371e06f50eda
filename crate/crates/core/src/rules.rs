//! Local rules, Wolfram numbering and the two elementary symmetries.
//!
//! A [`RuleTable`] stores the complete lookup table of a local function over
//! `states` symbols and radius `radius`. Neighbourhoods are indexed as base-`s`
//! numbers with the leftmost cell as the most significant digit, so for
//! elementary automata the entry for `(a, b, c)` lives at `4a + 2b + c`, which
//! is exactly the bit position the Wolfram number assigns to it.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::evolve::{digits_of, index_of};

/// Largest alphabet a [`RuleTable`] may use; cell states are stored as `u8`.
pub const MAX_STATES: u32 = 255;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleTable {
    states: u8,
    radius: u32,
    table: Vec<u8>,
}

impl RuleTable {
    pub fn new(states: u32, radius: u32, table: Vec<u8>) -> Result<Self> {
        if !(2..=MAX_STATES).contains(&states) {
            return Err(Error::input(format!(
                "state count must be in [2, {MAX_STATES}], got {states}"
            )));
        }
        if radius == 0 {
            return Err(Error::input("radius must be at least 1"));
        }
        let expected = (states as u128).checked_pow(2 * radius + 1);
        if expected != Some(table.len() as u128) {
            return Err(Error::input(format!(
                "a rule with {states} states and radius {radius} needs {states}^{} table entries, got {}",
                2 * radius + 1,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| u32::from(v) >= states) {
            return Err(Error::input(format!(
                "table entry {bad} is not a state below {states}"
            )));
        }
        Ok(RuleTable {
            states: states as u8,
            radius,
            table,
        })
    }

    /// Builds a rule from its local function, evaluated on every neighbourhood.
    pub fn from_fn(states: u32, radius: u32, f: impl Fn(&[u8]) -> u8) -> Result<Self> {
        let width = (2 * radius + 1) as usize;
        let size = (states as usize)
            .checked_pow(width as u32)
            .ok_or_else(|| Error::input("rule table too large"))?;
        let table = (0..size).map(|i| f(&digits_of(i, width, states))).collect();
        RuleTable::new(states, radius, table)
    }

    pub fn states(&self) -> u32 {
        u32::from(self.states)
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// Number of cells in a neighbourhood, `2r + 1`.
    pub fn width(&self) -> usize {
        2 * self.radius as usize + 1
    }

    pub fn is_elementary(&self) -> bool {
        self.states == 2 && self.radius == 1
    }

    /// Applies the local function to one neighbourhood.
    pub fn apply(&self, window: &[u8]) -> u8 {
        debug_assert_eq!(window.len(), self.width());
        self.table[index_of(window, self.states())]
    }

    /// SHA-256 over `states`, `radius` and the table, as lowercase hex.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update([self.states]);
        h.update(self.radius.to_le_bytes());
        h.update(&self.table);
        hex::encode(h.finalize())
    }

    /// The images of this rule under mirror, complement (binary rules only)
    /// and their composition, including the rule itself, deduplicated.
    pub fn symmetry_images(&self) -> Vec<RuleTable> {
        let mut out = vec![self.clone(), space_mirror(self)];
        if let Ok(c) = state_complement(self) {
            out.push(space_mirror(&c));
            out.push(c);
        }
        out.sort_by(|a, b| a.table.cmp(&b.table));
        out.dedup();
        out
    }
}

/// Wolfram number of an elementary rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EcaCode(u8);

impl EcaCode {
    pub fn new(code: u32) -> Result<Self> {
        u8::try_from(code)
            .map(EcaCode)
            .map_err(|_| Error::input(format!("Wolfram code must be in [0, 255], got {code}")))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn rule(self) -> RuleTable {
        let table = (0..8).map(|i| (self.0 >> i) & 1).collect();
        RuleTable {
            states: 2,
            radius: 1,
            table,
        }
    }

    /// Every elementary code.
    pub fn all() -> impl Iterator<Item = EcaCode> {
        (0..=255u8).map(EcaCode)
    }
}

impl From<u8> for EcaCode {
    fn from(code: u8) -> Self {
        EcaCode(code)
    }
}

impl fmt::Display for EcaCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Rule table of Wolfram code `code`: `f(a,b,c)` is bit `4a+2b+c`.
pub fn eca_from_wolfram(code: u32) -> Result<RuleTable> {
    Ok(EcaCode::new(code)?.rule())
}

pub fn wolfram_code(rule: &RuleTable) -> Result<EcaCode> {
    if !rule.is_elementary() {
        return Err(Error::input(format!(
            "Wolfram numbers need 2 states and radius 1, got {} states and radius {}",
            rule.states, rule.radius
        )));
    }
    let code = rule
        .table
        .iter()
        .enumerate()
        .fold(0u8, |acc, (i, &v)| acc | (v << i));
    Ok(EcaCode(code))
}

/// `f'(w) = f(reverse w)`.
pub fn space_mirror(rule: &RuleTable) -> RuleTable {
    let s = rule.states();
    let width = rule.width();
    let table = (0..rule.table.len())
        .map(|i| {
            let mut w = digits_of(i, width, s);
            w.reverse();
            rule.table[index_of(&w, s)]
        })
        .collect();
    RuleTable {
        table,
        ..rule.clone()
    }
}

/// `f''(w) = 1 - f(1 - w)`, binary rules only.
pub fn state_complement(rule: &RuleTable) -> Result<RuleTable> {
    if rule.states != 2 {
        return Err(Error::unsupported(format!(
            "state complement is defined for binary rules, this one has {} states",
            rule.states
        )));
    }
    let last = rule.table.len() - 1;
    // Complementing every digit of a binary index is `last - i`.
    let table = (0..=last).map(|i| 1 - rule.table[last - i]).collect();
    Ok(RuleTable {
        table,
        ..rule.clone()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryOrbit {
    codes: Vec<EcaCode>,
}

impl SymmetryOrbit {
    /// Orbit members, ascending.
    pub fn codes(&self) -> &[EcaCode] {
        &self.codes
    }

    pub fn canonical(&self) -> EcaCode {
        self.codes[0]
    }

    pub fn contains(&self, code: EcaCode) -> bool {
        self.codes.binary_search(&code).is_ok()
    }
}

pub fn orbit(code: EcaCode) -> SymmetryOrbit {
    let mut codes: Vec<EcaCode> = code
        .rule()
        .symmetry_images()
        .iter()
        .map(|r| wolfram_code(r).expect("symmetries keep rules elementary"))
        .collect();
    codes.sort_unstable();
    codes.dedup();
    SymmetryOrbit { codes }
}

/// Codes that are minimal in their symmetry orbit, ascending.
pub fn representatives() -> Vec<EcaCode> {
    EcaCode::all()
        .filter(|&c| orbit(c).canonical() == c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(rule: &RuleTable) -> u8 {
        wolfram_code(rule).unwrap().value()
    }

    #[test]
    fn wolfram_tables() {
        assert_eq!(
            eca_from_wolfram(105).unwrap().table(),
            &[1, 0, 0, 1, 0, 1, 1, 0]
        );
        assert_eq!(
            eca_from_wolfram(132).unwrap().table(),
            &[0, 0, 1, 0, 0, 0, 0, 1]
        );
        assert_eq!(eca_from_wolfram(0).unwrap().table(), &[0; 8]);
        assert!(matches!(eca_from_wolfram(256), Err(Error::Input(_))));
    }

    #[test]
    fn wolfram_code_inverse() {
        let rightmost = RuleTable::new(2, 1, vec![0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(code(&rightmost), 170);
        assert_eq!(code(&RuleTable::new(2, 1, vec![0; 8]).unwrap()), 0);
        for c in 0..256 {
            assert_eq!(u32::from(code(&eca_from_wolfram(c).unwrap())), c);
        }
        let three = RuleTable::new(3, 1, vec![0; 27]).unwrap();
        assert!(matches!(wolfram_code(&three), Err(Error::Input(_))));
    }

    #[test]
    fn rule_table_validation() {
        assert!(RuleTable::new(1, 1, vec![0]).is_err());
        assert!(RuleTable::new(2, 0, vec![0, 0]).is_err());
        assert!(RuleTable::new(2, 1, vec![0; 7]).is_err());
        assert!(RuleTable::new(2, 1, vec![0, 0, 0, 0, 0, 0, 0, 2]).is_err());
        assert!(RuleTable::new(3, 1, vec![2; 27]).is_ok());
    }

    #[test]
    fn mirror_examples() {
        let m = |c: u32| code(&space_mirror(&eca_from_wolfram(c).unwrap()));
        assert_eq!(m(170), 240);
        assert_eq!(m(204), 204);
        assert_eq!(m(110), 124);
    }

    #[test]
    fn complement_examples() {
        let c = |x: u32| code(&state_complement(&eca_from_wolfram(x).unwrap()).unwrap());
        assert_eq!(c(110), 137);
        assert_eq!(c(204), 204);
        assert_eq!(c(0), 255);
        let three = RuleTable::new(3, 1, vec![0; 27]).unwrap();
        assert!(matches!(
            state_complement(&three),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn orbit_examples() {
        let o = orbit(EcaCode::from(110));
        let codes: Vec<u8> = o.codes().iter().map(|c| c.value()).collect();
        assert_eq!(codes, vec![110, 124, 137, 193]);
        assert_eq!(o.canonical().value(), 110);
        assert_eq!(orbit(EcaCode::from(204)).codes().len(), 1);
        assert_eq!(orbit(EcaCode::from(105)).canonical().value(), 105);
    }

    #[test]
    fn representative_set() {
        let reps = representatives();
        assert_eq!(reps.len(), 88);
        assert!(reps.contains(&EcaCode::from(0)));
        assert!(!reps.contains(&EcaCode::from(240)));
        assert!(reps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn symmetries_are_commuting_involutions() {
        for c in EcaCode::all() {
            let r = c.rule();
            let m = space_mirror(&r);
            let k = state_complement(&r).unwrap();
            assert_eq!(space_mirror(&m), r);
            assert_eq!(state_complement(&k).unwrap(), r);
            assert_eq!(space_mirror(&k), state_complement(&m).unwrap());
        }
    }

    #[test]
    fn orbits_partition_all_codes() {
        let reps = representatives();
        let mut total = 0;
        let mut seen = [false; 256];
        for r in &reps {
            let o = orbit(*r);
            assert!(matches!(o.codes().len(), 1 | 2 | 4));
            for c in o.codes() {
                assert!(!seen[c.value() as usize]);
                seen[c.value() as usize] = true;
                // closure under both transforms
                assert!(o.contains(wolfram_code(&space_mirror(&c.rule())).unwrap()));
                assert!(o.contains(wolfram_code(&state_complement(&c.rule()).unwrap()).unwrap()));
            }
            total += o.codes().len();
        }
        assert_eq!(total, 256);
    }

    #[test]
    fn digest_separates_rules() {
        let a = eca_from_wolfram(30).unwrap();
        assert_eq!(a.digest(), eca_from_wolfram(30).unwrap().digest());
        assert_ne!(a.digest(), eca_from_wolfram(31).unwrap().digest());
        assert_eq!(a.digest().len(), 64);
    }
}
