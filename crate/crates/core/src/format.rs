//! Plain-text file formats.
//!
//! Profile files start with the order `n` on its own line, followed by `n`
//! lines `i value` (values are exact, `a/b` or `a`). A profile produced by
//! surgery may carry a companion `v: V_0,V_1,...` line. Raw profiles use
//! arbitrary whitespace-free ids instead of indices and add one
//! `conj id1 id2` line per conjugation orbit (`conj a a` for a fixed id),
//! plus a `cyclic` line when entry `k` is the group element `k` of `Z/n`.
//! Blank lines and `#` comments are ignored.
//!
//! Gram files hold the rank and then one row of integers per line.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::dcore::{DProfile, RawProfile, Rational};
use crate::knots::VSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileDoc {
    Labeled { profile: DProfile, v: Option<VSequence> },
    Raw(RawProfile),
}

impl ProfileDoc {
    /// Labeled profiles become cyclic raw profiles.
    pub fn to_raw(&self) -> RawProfile {
        match self {
            ProfileDoc::Labeled { profile, .. } => RawProfile::from_labeled(profile),
            ProfileDoc::Raw(raw) => raw.clone(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ProfileDoc::Labeled { profile, .. } => profile.n(),
            ProfileDoc::Raw(raw) => raw.n(),
        }
    }
}

fn parse_rational(s: &str, line: usize) -> Result<Rational, ParseError> {
    Rational::from_str(s).map_err(|_| err(line, format!("invalid exact value {s:?}")))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_profile(text: &str) -> Result<ProfileDoc, ParseError> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| err(1, "empty profile file"))?;
    let n: usize = header
        .parse()
        .map_err(|_| err(first, format!("expected the order n, found {header:?}")))?;
    if n == 0 {
        return Err(err(
            first,
            "n = 0 (vanishing intersection form) is outside what this tool handles",
        ));
    }

    let mut entries: Vec<(usize, String, Rational)> = Vec::new();
    let mut conj: Vec<(String, String)> = Vec::new();
    let mut cyclic = false;
    let mut v: Option<(usize, VSequence)> = None;
    for (line, body) in lines {
        if let Some(rest) = body.strip_prefix("v:") {
            let seq = rest.trim().parse().map_err(|e| err(line, format!("{e}")))?;
            v = Some((line, seq));
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields.as_slice() {
            ["cyclic"] => cyclic = true,
            ["conj", a, b] => conj.push((a.to_string(), b.to_string())),
            [id, value] => entries.push((line, id.to_string(), parse_rational(value, line)?)),
            _ => return Err(err(line, format!("cannot parse {body:?}"))),
        }
    }
    if entries.len() != n {
        let line = entries.last().map_or(first, |e| e.0);
        return Err(err(line, format!("expected {n} entries, found {}", entries.len())));
    }

    if conj.is_empty() && !cyclic {
        let mut values: Vec<Option<Rational>> = vec![None; n];
        for (line, id, value) in entries {
            let i: usize = id
                .parse()
                .ok()
                .filter(|&i| i < n)
                .ok_or_else(|| err(line, format!("index {id:?} is not in 0..{n}")))?;
            if values[i].replace(value).is_some() {
                return Err(err(line, format!("index {i} given twice")));
            }
        }
        let values = values.into_iter().map(|v| v.expect("all n indices present")).collect();
        let profile = DProfile::new(values).map_err(|e| err(first, e.to_string()))?;
        return Ok(ProfileDoc::Labeled { profile, v: v.map(|(_, s)| s) });
    }
    if let Some((line, _)) = v {
        return Err(err(line, "a V-sequence only accompanies labelled profiles"));
    }
    let entries = entries.into_iter().map(|(_, id, value)| (id, value)).collect();
    let conj: Vec<(String, String)> = conj
        .into_iter()
        .map(|(a, b)| if a == b { (a.clone(), a) } else { (a, b) })
        .collect();
    let raw = RawProfile::new(n, entries, &conj, cyclic).map_err(|e| err(first, e.to_string()))?;
    Ok(ProfileDoc::Raw(raw))
}

pub fn write_profile(p: &DProfile, v: Option<&VSequence>) -> String {
    let mut out = format!("{}\n", p.n());
    if let Some(v) = v {
        writeln!(out, "v: {v}").unwrap();
    }
    for (i, value) in p.values().iter().enumerate() {
        writeln!(out, "{i} {value}").unwrap();
    }
    out
}

pub fn write_raw_profile(raw: &RawProfile) -> String {
    let mut out = format!("{}\n", raw.n());
    if raw.is_cyclic() {
        out.push_str("cyclic\n");
    }
    for (id, value) in raw.ids().iter().zip(raw.values()) {
        writeln!(out, "{id} {value}").unwrap();
    }
    for (a, b) in raw.orbits() {
        writeln!(out, "conj {} {}", raw.ids()[a], raw.ids()[b]).unwrap();
    }
    out
}

pub fn write_doc(doc: &ProfileDoc) -> String {
    match doc {
        ProfileDoc::Labeled { profile, v } => write_profile(profile, v.as_ref()),
        ProfileDoc::Raw(raw) => write_raw_profile(raw),
    }
}

pub fn parse_gram(text: &str) -> Result<Vec<Vec<i64>>, ParseError> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| err(1, "empty Gram file"))?;
    let rank: usize = header
        .parse()
        .map_err(|_| err(first, format!("expected the rank, found {header:?}")))?;
    let mut rows = Vec::with_capacity(rank);
    for (line, body) in lines {
        let row = body
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| err(line, format!("invalid integer {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != rank {
            return Err(err(line, format!("expected {rank} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != rank {
        return Err(err(first, format!("expected {rank} rows, found {}", rows.len())));
    }
    Ok(rows)
}
