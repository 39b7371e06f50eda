//! Result records and their JSON and CSV encodings.

use std::collections::HashMap;

use cacc::complexity::{
    growth_hint, one_way_cc, ClassLabel, ClassifierParams, ComplexitySequence, RnScan,
};
use cacc::detectors::{AdditivityWitness, SensibilityReport};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleId {
    pub states: u32,
    pub radius: u32,
    /// Wolfram number, for elementary rules.
    pub code: Option<u8>,
    /// Built-in name or source file, for everything else.
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassRecord {
    /// `Bounded`, `Linear` or `Other`.
    pub kind: String,
    pub b: Option<usize>,
    /// Slope as `p/q`.
    pub a1: Option<String>,
    pub a0: Option<i64>,
    pub n0: Option<u32>,
    pub min_n: u32,
    pub tail_len: u32,
    pub growth_hint: Option<f64>,
}

impl ClassRecord {
    pub fn new(label: &ClassLabel, params: &ClassifierParams, seq: &ComplexitySequence) -> Self {
        let mut rec = ClassRecord {
            kind: label.name().to_string(),
            b: None,
            a1: None,
            a0: None,
            n0: None,
            min_n: params.min_n,
            tail_len: params.tail_len,
            growth_hint: growth_hint(seq, params),
        };
        match label {
            ClassLabel::Bounded { b } => rec.b = Some(*b),
            ClassLabel::Linear { a1, a0, n0 } => {
                rec.a1 = Some(format!("{}/{}", a1.numer(), a1.denom()));
                rec.a0 = Some(*a0);
                rec.n0 = Some(*n0);
            }
            ClassLabel::Other => {}
        }
        rec
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensibilityRecord {
    /// Essential cells of `f^n`, per `n`.
    pub total: Vec<usize>,
    /// Essential cells left of the centre, per `n`.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub limited: Option<bool>,
    pub half_limited: Option<bool>,
}

impl From<&SensibilityReport> for SensibilityRecord {
    fn from(r: &SensibilityReport) -> Self {
        SensibilityRecord {
            total: r.levels.iter().map(|l| l.total_count).collect(),
            left: r.levels.iter().map(|l| l.left_count).collect(),
            right: r.levels.iter().map(|l| l.right_count).collect(),
            limited: r.limited,
            half_limited: r.half_limited,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stamp {
    pub unix_seconds: u64,
    pub jobs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub rule: RuleId,
    /// SHA-256 of the rule table.
    pub digest: String,
    pub n_max: u32,
    /// `d_1, ..., d_n_max`.
    pub d: Vec<usize>,
    /// `ceil(log2 d_n)` per `n`.
    pub cc: Vec<u32>,
    /// Absent when the sequence is too short to classify.
    pub class: Option<ClassRecord>,
    /// Absent when the operator search was skipped for this state count.
    pub additive: Option<bool>,
    pub witness: Option<AdditivityWitness>,
    pub sensibility: SensibilityRecord,
    /// First `n` from which every computed `f^n` is constant.
    pub constant_from: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_n: Option<Vec<RnScan>>,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stamp: Option<Stamp>,
}

impl ResultRecord {
    /// Checks the internal consistency a reader can verify without recomputing.
    pub fn validate(&self, table_digest: &str) -> Result<(), CliError> {
        let fail = |msg: String| Err(CliError::Usage(msg));
        if self.digest != table_digest {
            return fail(format!(
                "digest {} does not match rule table {}",
                self.digest, table_digest
            ));
        }
        if self.d.len() != self.n_max as usize || self.cc.len() != self.d.len() {
            return fail(format!("expected {} values of d and cc", self.n_max));
        }
        Ok(())
    }
}

pub fn cc_of(d: &[usize]) -> Vec<u32> {
    d.iter()
        .map(|&x| one_way_cc(x.max(1)).expect("positive"))
        .collect()
}

const FIXED_HEAD: [&str; 6] = ["code", "name", "states", "radius", "digest", "n_max"];
const FIXED_TAIL: [&str; 22] = [
    "class",
    "b",
    "a1",
    "a0",
    "n0",
    "min_n",
    "tail_len",
    "growth_hint",
    "additive",
    "oplus",
    "otimes",
    "neutral",
    "limited",
    "half_limited",
    "sens_total",
    "sens_left",
    "sens_right",
    "constant_from",
    "r_n",
    "version",
    "stamp",
    "witness_states",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn digits(xs: &[u8]) -> String {
    xs.iter()
        .map(|d| char::from_digit(u32::from(*d), 36).expect("small"))
        .collect()
}

/// One CSV row per record; `d_k` columns up to the largest `n_max`.
pub fn to_csv(records: &[ResultRecord]) -> Result<String, CliError> {
    let width = records.iter().map(|r| r.n_max).max().unwrap_or(0);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = FIXED_HEAD.iter().map(|s| s.to_string()).collect();
    header.extend((1..=width).map(|k| format!("d_{k}")));
    header.extend(FIXED_TAIL.iter().map(|s| s.to_string()));
    w.write_record(&header).map_err(csv_err)?;
    for r in records {
        let mut row = vec![
            opt(&r.rule.code),
            opt(&r.rule.name),
            r.rule.states.to_string(),
            r.rule.radius.to_string(),
            r.digest.clone(),
            r.n_max.to_string(),
        ];
        row.extend(
            (0..width as usize).map(|k| r.d.get(k).map(ToString::to_string).unwrap_or_default()),
        );
        let c = r.class.as_ref();
        let w_ = r.witness.as_ref();
        row.extend([
            c.map(|c| c.kind.clone()).unwrap_or_default(),
            c.map(|c| opt(&c.b)).unwrap_or_default(),
            c.map(|c| opt(&c.a1)).unwrap_or_default(),
            c.map(|c| opt(&c.a0)).unwrap_or_default(),
            c.map(|c| opt(&c.n0)).unwrap_or_default(),
            c.map(|c| c.min_n.to_string()).unwrap_or_default(),
            c.map(|c| c.tail_len.to_string()).unwrap_or_default(),
            c.map(|c| opt(&c.growth_hint)).unwrap_or_default(),
            opt(&r.additive),
            w_.map(|w| digits(&w.oplus)).unwrap_or_default(),
            w_.map(|w| digits(&w.otimes)).unwrap_or_default(),
            w_.map(|w| w.neutral.to_string()).unwrap_or_default(),
            opt(&r.sensibility.limited),
            opt(&r.sensibility.half_limited),
            join(&r.sensibility.total),
            join(&r.sensibility.left),
            join(&r.sensibility.right),
            opt(&r.constant_from),
            match &r.r_n {
                Some(scans) => serde_json::to_string(scans).map_err(json_err)?,
                None => String::new(),
            },
            r.version.clone(),
            match &r.stamp {
                Some(s) => serde_json::to_string(s).map_err(json_err)?,
                None => String::new(),
            },
            w_.map(|w| w.states.to_string()).unwrap_or_default(),
        ]);
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Usage(format!("csv: {e}"))
}

fn json_err(e: serde_json::Error) -> CliError {
    CliError::Usage(format!("json: {e}"))
}

fn parse_opt<T: std::str::FromStr>(s: &str, col: &str) -> Result<Option<T>, CliError> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| CliError::Usage(format!("bad value {s:?} in column {col}")))
}

fn parse_req<T: std::str::FromStr>(s: &str, col: &str) -> Result<T, CliError> {
    parse_opt(s, col)?.ok_or_else(|| CliError::Usage(format!("column {col} is empty")))
}

fn parse_list(s: &str, col: &str) -> Result<Vec<usize>, CliError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(|x| parse_req(x, col)).collect()
}

fn parse_digits(s: &str) -> Result<Vec<u8>, CliError> {
    s.chars()
        .map(|c| {
            c.to_digit(36)
                .map(|d| d as u8)
                .ok_or_else(|| CliError::Usage(format!("bad operator digit {c:?}")))
        })
        .collect()
}

/// Inverse of [`to_csv`].
pub fn from_csv(text: &str) -> Result<Vec<ResultRecord>, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(csv_err)?.clone();
    let index: HashMap<&str, usize> = header.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_err)?;
        let get = |col: &str| -> Result<&str, CliError> {
            index
                .get(col)
                .and_then(|&i| row.get(i))
                .ok_or_else(|| CliError::Usage(format!("missing column {col}")))
        };
        let n_max: u32 = parse_req(get("n_max")?, "n_max")?;
        let d: Vec<usize> = (1..=n_max)
            .map(|k| {
                let col = format!("d_{k}");
                parse_req(get(&col)?, &col)
            })
            .collect::<Result<_, _>>()?;
        let kind = get("class")?;
        let class = if kind.is_empty() {
            None
        } else {
            Some(ClassRecord {
                kind: kind.to_string(),
                b: parse_opt(get("b")?, "b")?,
                a1: parse_opt(get("a1")?, "a1")?,
                a0: parse_opt(get("a0")?, "a0")?,
                n0: parse_opt(get("n0")?, "n0")?,
                min_n: parse_req(get("min_n")?, "min_n")?,
                tail_len: parse_req(get("tail_len")?, "tail_len")?,
                growth_hint: parse_opt(get("growth_hint")?, "growth_hint")?,
            })
        };
        let witness = match parse_opt::<u32>(get("witness_states")?, "witness_states")? {
            Some(states) => Some(AdditivityWitness {
                states,
                oplus: parse_digits(get("oplus")?)?,
                otimes: parse_digits(get("otimes")?)?,
                neutral: parse_req(get("neutral")?, "neutral")?,
            }),
            None => None,
        };
        let r_n = match get("r_n")? {
            "" => None,
            s => Some(serde_json::from_str(s).map_err(json_err)?),
        };
        let stamp = match get("stamp")? {
            "" => None,
            s => Some(serde_json::from_str(s).map_err(json_err)?),
        };
        out.push(ResultRecord {
            rule: RuleId {
                states: parse_req(get("states")?, "states")?,
                radius: parse_req(get("radius")?, "radius")?,
                code: parse_opt(get("code")?, "code")?,
                name: parse_opt(get("name")?, "name")?,
            },
            digest: get("digest")?.to_string(),
            n_max,
            cc: cc_of(&d),
            d,
            class,
            additive: parse_opt(get("additive")?, "additive")?,
            witness,
            sensibility: SensibilityRecord {
                total: parse_list(get("sens_total")?, "sens_total")?,
                left: parse_list(get("sens_left")?, "sens_left")?,
                right: parse_list(get("sens_right")?, "sens_right")?,
                limited: parse_opt(get("limited")?, "limited")?,
                half_limited: parse_opt(get("half_limited")?, "half_limited")?,
            },
            constant_from: parse_opt(get("constant_from")?, "constant_from")?,
            r_n,
            version: get("version")?.to_string(),
            stamp,
        });
    }
    Ok(out)
}

pub fn to_json(records: &[ResultRecord], single: bool) -> Result<String, CliError> {
    let mut text = if single && records.len() == 1 {
        serde_json::to_string_pretty(&records[0])
    } else {
        serde_json::to_string_pretty(records)
    }
    .map_err(json_err)?;
    text.push('\n');
    Ok(text)
}

/// Accepts one record or an array of records.
pub fn from_json(text: &str) -> Result<Vec<ResultRecord>, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_err)?;
    if value.is_array() {
        serde_json::from_value(value).map_err(json_err)
    } else {
        Ok(vec![serde_json::from_value(value).map_err(json_err)?])
    }
}
