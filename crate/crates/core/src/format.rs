//! Text formats. `#` starts a comment, `e` is the empty string.
//!
//! Code files list one bitstring per line. Table files start with a header
//! `n=1`, `n=2` or `flavor=monoid` followed by one `u -> v` pair per line
//! (tuples are written `(u,v)`). Generating-set files are `[name]` sections,
//! each holding a table block.

use std::fmt::Write as _;

use crate::brin2v::{NGenSet, NTable, Tuple};
use crate::codes::{BitString, PrefixCode};
use crate::error::{Error, Result};
use crate::eval_v::GenSet;
use crate::monoid::MTable;
use crate::v_core::VTable;

/// A content line and its number.
type Line<'a> = (usize, &'a str);
/// `(line, lhs, rhs)` of one `u -> v` entry.
type RawPair<'a> = (usize, &'a str, &'a str);

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            msg: other.to_string(),
        },
    }
}

pub fn parse_code(text: &str) -> Result<PrefixCode> {
    let mut members = Vec::new();
    for (line, l) in content_lines(text) {
        members.push(l.parse::<BitString>().map_err(|e| at(line, e))?);
    }
    PrefixCode::new(members)
}

pub fn format_code(c: &PrefixCode) -> String {
    c.members().iter().map(|m| format!("{m}\n")).collect()
}

/// The header of a table block.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableKind {
    V,
    TwoV,
    Monoid,
}

/// A parsed table file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TableFile {
    V(VTable),
    TwoV(NTable),
    Monoid(MTable),
}

fn header(l: &str) -> Option<TableKind> {
    match l.replace(' ', "").as_str() {
        "n=1" => Some(TableKind::V),
        "n=2" => Some(TableKind::TwoV),
        "flavor=monoid" => Some(TableKind::Monoid),
        _ => None,
    }
}

fn split_pair(line: usize, l: &str) -> Result<(&str, &str)> {
    l.split_once("->")
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected `u -> v`, got `{l}`"),
        })
}

/// Kind and raw `(line, lhs, rhs)` pairs; a missing header means `n=1`.
fn table_block<'a>(lines: &[Line<'a>]) -> Result<(TableKind, Vec<RawPair<'a>>)> {
    let (kind, body) = match lines.first().and_then(|(_, l)| header(l)) {
        Some(k) => (k, &lines[1..]),
        None => (TableKind::V, lines),
    };
    let mut pairs = Vec::new();
    for &(line, l) in body {
        let (a, b) = split_pair(line, l)?;
        pairs.push((line, a, b));
    }
    if pairs.is_empty() {
        return Err(Error::Format("table has no pairs".into()));
    }
    Ok((kind, pairs))
}

fn bit_pairs(pairs: &[(usize, &str, &str)]) -> Result<Vec<(BitString, BitString)>> {
    pairs
        .iter()
        .map(|&(line, a, b)| Ok((a.parse().map_err(|e| at(line, e))?, b.parse().map_err(|e| at(line, e))?)))
        .collect()
}

fn tuple_pairs(pairs: &[(usize, &str, &str)]) -> Result<Vec<(Tuple, Tuple)>> {
    pairs
        .iter()
        .map(|&(line, a, b)| Ok((a.parse().map_err(|e| at(line, e))?, b.parse().map_err(|e| at(line, e))?)))
        .collect()
}

fn table_from_lines(lines: &[(usize, &str)]) -> Result<TableFile> {
    let (kind, pairs) = table_block(lines)?;
    Ok(match kind {
        TableKind::V => TableFile::V(VTable::new(bit_pairs(&pairs)?)?),
        TableKind::TwoV => TableFile::TwoV(NTable::candidate(tuple_pairs(&pairs)?)?),
        TableKind::Monoid => TableFile::Monoid(MTable::new(bit_pairs(&pairs)?)?),
    })
}

/// Parses a table file. `n=1` tables are validated as elements of V; `n=2`
/// tables are kept as candidates for the Q1–Q5 decisions.
pub fn parse_table(text: &str) -> Result<TableFile> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    table_from_lines(&lines)
}

pub fn parse_vtable(text: &str) -> Result<VTable> {
    match parse_table(text)? {
        TableFile::V(t) => Ok(t),
        _ => Err(Error::Format("expected an `n=1` table".into())),
    }
}

pub fn parse_ntable(text: &str) -> Result<NTable> {
    match parse_table(text)? {
        TableFile::TwoV(t) => Ok(t),
        _ => Err(Error::Format("expected an `n=2` table".into())),
    }
}

pub fn parse_mtable(text: &str) -> Result<MTable> {
    match parse_table(text)? {
        TableFile::Monoid(t) => Ok(t),
        _ => Err(Error::Format("expected a `flavor=monoid` table".into())),
    }
}

fn write_pairs<A: std::fmt::Display>(header: &str, pairs: impl Iterator<Item = (A, A)>) -> String {
    let mut out = format!("{header}\n");
    for (a, b) in pairs {
        writeln!(out, "{a} -> {b}").expect("writing to a string");
    }
    out
}

pub fn format_vtable(t: &VTable) -> String {
    write_pairs("n=1", t.pairs().iter().map(|(a, b)| (a, b)))
}

pub fn format_ntable(t: &NTable) -> String {
    write_pairs(&format!("n={}", t.n()), t.pairs().iter().map(|(a, b)| (a, b)))
}

pub fn format_mtable(t: &MTable) -> String {
    write_pairs("flavor=monoid", t.pairs().iter().map(|(a, b)| (a, b)))
}

/// `[name]` sections, each with its content lines.
fn sections(text: &str) -> Result<Vec<(String, Vec<Line<'_>>)>> {
    let mut out: Vec<(String, Vec<Line<'_>>)> = Vec::new();
    for (line, l) in content_lines(text) {
        if let Some(name) = l.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim();
            let valid = !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || "_*-".contains(c));
            if !valid {
                return Err(Error::Parse {
                    line,
                    msg: format!("bad generator name `{name}`"),
                });
            }
            out.push((name.to_string(), Vec::new()));
        } else {
            let Some(last) = out.last_mut() else {
                return Err(Error::Parse {
                    line,
                    msg: "table line outside a `[name]` section".into(),
                });
            };
            last.1.push((line, l));
        }
    }
    Ok(out)
}

pub fn parse_genset(text: &str) -> Result<GenSet> {
    let mut g = GenSet::new();
    for (name, lines) in sections(text)? {
        match table_from_lines(&lines)? {
            TableFile::V(t) => g.insert(&name, t),
            _ => return Err(Error::Format(format!("generator `{name}` is not an `n=1` table"))),
        }
    }
    if g.is_empty() {
        return Err(Error::Format("generating set has no generators".into()));
    }
    Ok(g)
}

pub fn format_genset(g: &GenSet) -> String {
    g.iter()
        .map(|(name, t)| format!("[{name}]\n{}", format_vtable(t)))
        .collect()
}

/// A 2V generating set; every section must be an `n=2` table of a group element.
pub fn parse_ngenset(text: &str) -> Result<NGenSet> {
    let mut g = NGenSet::new();
    for (name, lines) in sections(text)? {
        match table_from_lines(&lines)? {
            TableFile::TwoV(t) => g.insert(&name, &t)?,
            _ => return Err(Error::Format(format!("generator `{name}` is not an `n=2` table"))),
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::bs;
    use crate::eval_v::table_a;

    #[test]
    fn codes() {
        let c = parse_code("# a code\n0\n10\n\n11 # last\n").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(parse_code(&format_code(&c)).unwrap(), c);
        assert!(matches!(parse_code("0\n0x\n"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(parse_code("e\n").unwrap().members(), &[bs("")]);
    }

    #[test]
    fn tables() {
        assert_eq!(parse_vtable("n=1\ne -> e\n").unwrap(), VTable::identity());
        assert_eq!(parse_vtable("e -> e").unwrap(), VTable::identity());
        let a = table_a();
        assert_eq!(parse_vtable(&format_vtable(&a)).unwrap(), a);
        let n = parse_ntable("n=2\n(e,0) -> (0,e)\n(e,1) -> (1,e)\n").unwrap();
        assert_eq!(parse_ntable(&format_ntable(&n)).unwrap(), n);
        let m = parse_mtable("flavor=monoid\n0 -> e\n1 -> e\n").unwrap();
        assert_eq!(parse_mtable(&format_mtable(&m)).unwrap(), m);
        assert!(matches!(
            parse_table("n=1\n0 -> 1\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_vtable("0 -> 0\n").is_err());
    }

    #[test]
    fn gensets() {
        let g = GenSet::thompson_v();
        let back = parse_genset(&format_genset(&g)).unwrap();
        assert_eq!(back.names().collect::<Vec<_>>(), g.names().collect::<Vec<_>>());
        assert!(parse_genset("0 -> 0").is_err());
        let s = parse_ngenset("[sigma]\nn=2\n(e,0) -> (0,e)\n(e,1) -> (1,e)\n").unwrap();
        assert_eq!(s.names().collect::<Vec<_>>(), vec!["sigma"]);
    }
}
