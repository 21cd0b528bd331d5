//! Text formats for algebras, frames and models.
//!
//! Every format is a list of `key: value` lines. Blank lines and anything
//! after `#` are ignored. Indices are 0-based carrier positions.
//!
//! ```text
//! # algebra                          # frame
//! size: 3                            size: 2
//! leq: chain                         leq: 0,0 0,1 1,1
//! neg: 2 1 0                         g: 1 0
//! g: 0 1 2                           r: 0,0 0,1 1,1
//! h: 0 1 2                           q: 0,0 0,1 1,1
//! imp: 2 2 2; 0 2 2; 0 1 2
//! ```
//!
//! A relation value is `chain`, `covers PAIRS` (reflexive-transitive closure
//! of the listed pairs), `pairs PAIRS`, or bare `PAIRS`; a pair is `x,y`.
//! `imp` is optional and derived from the order when absent. Models extend
//! the frame format with one `meaning VAR: MEMBERS` line per variable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::FiniteTshAlgebra;
use crate::error::{Error, Result};
use crate::frame::TshFrame;
use crate::order::{Relation, Subset};
use crate::semantics::TshModel;

struct Field<'a> {
    line: usize,
    /// Column where the value starts.
    column: usize,
    value: &'a str,
}

struct Fields<'a> {
    fields: BTreeMap<String, Field<'a>>,
    last_line: usize,
}

impl<'a> Fields<'a> {
    fn read(text: &'a str, allowed: &[&str], allow_meaning: bool) -> Result<Self> {
        let mut fields = BTreeMap::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let colon = content
                .find(':')
                .ok_or_else(|| Error::syntax(line, 1, "expected `key: value`"))?;
            let key = content[..colon].trim();
            let known = allowed.contains(&key)
                || (allow_meaning
                    && key
                        .strip_prefix("meaning ")
                        .is_some_and(|v| !v.trim().is_empty()));
            if !known {
                return Err(Error::syntax(line, 1, format!("unknown key `{key}`")));
            }
            let key = key.split_whitespace().collect::<Vec<_>>().join(" ");
            let field = Field {
                line,
                column: colon + 2,
                value: &content[colon + 1..],
            };
            if fields.insert(key.clone(), field).is_some() {
                return Err(Error::syntax(line, 1, format!("duplicate key `{key}`")));
            }
        }
        Ok(Fields { fields, last_line })
    }

    fn get(&self, key: &str) -> Result<&Field<'a>> {
        self.fields
            .get(key)
            .ok_or_else(|| Error::syntax(self.last_line + 1, 1, format!("missing key `{key}`")))
    }
}

/// Whitespace-separated words with their columns.
fn words<'a>(field: &Field<'a>) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in field.value.char_indices() {
        match (c.is_whitespace() || c == ';', start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &field.value[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &field.value[s..]));
    }
    out.into_iter()
        .map(|(i, w)| (field.column + i, w))
        .collect()
}

fn int(field: &Field<'_>, column: usize, word: &str) -> Result<usize> {
    word.parse().map_err(|_| {
        Error::syntax(
            field.line,
            column,
            format!("expected a non-negative integer, found `{word}`"),
        )
    })
}

fn read_size(fields: &Fields<'_>) -> Result<usize> {
    let f = fields.get("size")?;
    let w = words(f);
    match w.as_slice() {
        [(col, word)] => {
            let n = int(f, *col, word)?;
            if n == 0 {
                return Err(Error::syntax(f.line, *col, "size must be positive"));
            }
            if n > crate::order::MAX_CARRIER {
                return Err(Error::syntax(
                    f.line,
                    *col,
                    format!("size {n} exceeds {}", crate::order::MAX_CARRIER),
                ));
            }
            Ok(n)
        }
        _ => Err(Error::syntax(f.line, f.column, "expected a single size")),
    }
}

fn read_table(fields: &Fields<'_>, key: &str, n: usize) -> Result<Vec<usize>> {
    let f = fields.get(key)?;
    let w = words(f);
    if w.len() != n {
        return Err(Error::syntax(
            f.line,
            f.column,
            format!("`{key}` needs {n} entries, found {}", w.len()),
        ));
    }
    w.iter()
        .map(|&(col, word)| {
            let v = int(f, col, word)?;
            if v >= n {
                return Err(Error::syntax(
                    f.line,
                    col,
                    format!("entry {v} out of range"),
                ));
            }
            Ok(v)
        })
        .collect()
}

fn read_relation(fields: &Fields<'_>, key: &str, n: usize) -> Result<Relation> {
    let f = fields.get(key)?;
    let mut w = words(f);
    let mode = match w.first().map(|&(_, s)| s) {
        Some("chain") => {
            if w.len() != 1 {
                return Err(Error::syntax(f.line, w[1].0, "`chain` takes no pairs"));
            }
            return Relation::chain(n);
        }
        Some(m @ ("covers" | "pairs")) => {
            w.remove(0);
            m
        }
        _ => "pairs",
    };
    let mut pairs = Vec::with_capacity(w.len());
    for (col, word) in w {
        let (a, b) = word.split_once(',').ok_or_else(|| {
            Error::syntax(
                f.line,
                col,
                format!("expected a pair `x,y`, found `{word}`"),
            )
        })?;
        let (x, y) = (int(f, col, a)?, int(f, col, b)?);
        if x >= n || y >= n {
            return Err(Error::syntax(
                f.line,
                col,
                format!("pair {x},{y} out of range"),
            ));
        }
        pairs.push((x, y));
    }
    let rel = Relation::from_pairs(n, pairs)?;
    Ok(if mode == "covers" { rel.closure() } else { rel })
}

fn read_matrix(fields: &Fields<'_>, key: &str, n: usize) -> Result<Option<Vec<Vec<usize>>>> {
    let Some(f) = fields.fields.get(key) else {
        return Ok(None);
    };
    let mut rows = Vec::with_capacity(n);
    let mut offset = 0;
    for chunk in f.value.split(';') {
        let sub = Field {
            line: f.line,
            column: f.column + offset,
            value: chunk,
        };
        let w = words(&sub);
        if w.len() != n {
            return Err(Error::syntax(
                f.line,
                sub.column,
                format!("`{key}` rows need {n} entries"),
            ));
        }
        let row = w
            .iter()
            .map(|&(col, word)| {
                let v = int(f, col, word)?;
                if v >= n {
                    return Err(Error::syntax(
                        f.line,
                        col,
                        format!("entry {v} out of range"),
                    ));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        offset += chunk.len() + 1;
    }
    if rows.len() != n {
        return Err(Error::syntax(
            f.line,
            f.column,
            format!("`{key}` needs {n} rows separated by `;`"),
        ));
    }
    Ok(Some(rows))
}

fn at_field(fields: &Fields<'_>, key: &str, e: Error) -> Error {
    match e {
        Error::InvalidInput(msg) => {
            let (line, column) = fields
                .fields
                .get(key)
                .map(|f| (f.line, f.column))
                .unwrap_or((1, 1));
            Error::syntax(line, column, msg)
        }
        other => other,
    }
}

pub fn parse_algebra(text: &str) -> Result<FiniteTshAlgebra> {
    let fields = Fields::read(text, &["size", "leq", "neg", "g", "h", "imp"], false)?;
    let n = read_size(&fields)?;
    let leq = read_relation(&fields, "leq", n)?;
    let neg = read_table(&fields, "neg", n)?;
    let g = read_table(&fields, "g", n)?;
    let h = read_table(&fields, "h", n)?;
    match read_matrix(&fields, "imp", n)? {
        Some(imp) => {
            FiniteTshAlgebra::new(leq, neg, imp, g, h).map_err(|e| at_field(&fields, "leq", e))
        }
        None => {
            FiniteTshAlgebra::from_order(leq, neg, g, h).map_err(|e| at_field(&fields, "leq", e))
        }
    }
}

fn pairs_text(rel: &Relation) -> String {
    rel.pairs()
        .map(|(x, y)| format!("{x},{y}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn table_text(t: &[usize]) -> String {
    t.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Appends `key: value`, leaving no trailing space when `value` is empty.
fn field(out: &mut String, key: &str, value: &str) {
    if value.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {value}");
    }
}

pub fn format_algebra(w: &FiniteTshAlgebra) -> String {
    let imp = w
        .imp_table()
        .iter()
        .map(|row| table_text(row))
        .collect::<Vec<_>>()
        .join("; ");
    let mut out = String::new();
    field(&mut out, "size", &w.size().to_string());
    field(&mut out, "leq", &pairs_text(w.leq()));
    field(&mut out, "neg", &table_text(w.neg_table()));
    field(&mut out, "g", &table_text(w.g_table()));
    field(&mut out, "h", &table_text(w.h_table()));
    field(&mut out, "imp", &imp);
    out
}

fn frame_from_fields(fields: &Fields<'_>) -> Result<TshFrame> {
    let n = read_size(fields)?;
    let leq = read_relation(fields, "leq", n)?;
    let g = read_table(fields, "g", n)?;
    let r = read_relation(fields, "r", n)?;
    let q = read_relation(fields, "q", n)?;
    TshFrame::new(leq, g, r, q).map_err(|e| at_field(fields, "leq", e))
}

pub fn parse_frame(text: &str) -> Result<TshFrame> {
    let fields = Fields::read(text, &["size", "leq", "g", "r", "q"], false)?;
    frame_from_fields(&fields)
}

pub fn format_frame(k: &TshFrame) -> String {
    let mut out = String::new();
    field(&mut out, "size", &k.size().to_string());
    field(&mut out, "leq", &pairs_text(k.leq()));
    field(&mut out, "g", &table_text(k.g_map()));
    field(&mut out, "r", &pairs_text(k.r()));
    field(&mut out, "q", &pairs_text(k.q()));
    out
}

pub fn parse_model(text: &str) -> Result<TshModel> {
    let fields = Fields::read(text, &["size", "leq", "g", "r", "q"], true)?;
    let frame = frame_from_fields(&fields)?;
    let n = frame.size();
    let mut meaning = BTreeMap::new();
    for (key, f) in &fields.fields {
        let Some(var) = key.strip_prefix("meaning ") else {
            continue;
        };
        let members = words(f)
            .into_iter()
            .map(|(col, w)| {
                let v = int(f, col, w)?;
                if v >= n {
                    return Err(Error::syntax(
                        f.line,
                        col,
                        format!("state {v} out of range"),
                    ));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        meaning.insert(var.to_string(), Subset::from_members(n, members)?);
    }
    TshModel::new(frame, meaning).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::syntax(fields.last_line, 1, msg),
        other => other,
    })
}

pub fn format_model(m: &TshModel) -> String {
    let mut out = format_frame(m.frame());
    for (var, set) in m.meaning() {
        let members: Vec<usize> = set.members().collect();
        field(&mut out, &format!("meaning {var}"), &table_text(&members));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn a3_from_shorthand() {
        let text = "# A3\nsize: 3\nleq: chain\nneg: 2 1 0\ng: 0 1 2\nh: 0 1 2\n";
        assert_eq!(parse_algebra(text).unwrap(), fixtures::a3());
        let covers = "size: 3\nleq: covers 0,1 1,2\nneg: 2 1 0\ng: 0 1 2\nh: 0 1 2\n";
        assert_eq!(parse_algebra(covers).unwrap(), fixtures::a3());
    }

    #[test]
    fn explicit_imp_is_kept() {
        let text = "size: 2\nleq: chain\nneg: 1 0\ng: 0 1\nh: 0 1\nimp: 1 1; 0 1\n";
        assert_eq!(parse_algebra(text).unwrap(), fixtures::boolean2());
        let wrong = "size: 2\nleq: chain\nneg: 1 0\ng: 0 1\nh: 0 1\nimp: 1 1; 1 1\n";
        let w = parse_algebra(wrong).unwrap();
        assert_eq!(w.imp(1, 0), 1);
    }

    #[test]
    fn round_trips() {
        for (_, w) in fixtures::algebra_corpus() {
            assert_eq!(parse_algebra(&format_algebra(&w)).unwrap(), w);
        }
        for k in crate::frame::enumerate_frames(2, true) {
            assert_eq!(parse_frame(&format_frame(&k)).unwrap(), k);
        }
        let cm = crate::semantics::find_countermodel(&crate::logic::parse("p | ~q").unwrap(), 2)
            .unwrap();
        assert_eq!(parse_model(&format_model(&cm.model)).unwrap(), cm.model);
    }

    #[test]
    fn empty_relations() {
        let text = "size: 1\nleq: 0,0\ng: 0\nr:\nq:\n";
        assert_eq!(parse_frame(text).unwrap(), fixtures::singleton_frame(false));
    }

    #[test]
    fn diagnostics() {
        let cases = [
            ("size: 3\nleq: chain\nneg: 2 1\ng: 0 1 2\nh: 0 1 2\n", 3),
            ("size: 3\nleq: chain\nneg: 2 1 x\ng: 0 1 2\nh: 0 1 2\n", 3),
            ("size: 3\nleq: chain\nneg: 2 1 0\ng: 0 1 2\n", 5),
            ("size: 3\nfoo: 1\n", 2),
            ("size: 3\nsize: 3\n", 2),
            ("size: 2\nleq: 0,0 1,1 0,5\nneg: 1 0\ng: 0 1\nh: 0 1\n", 2),
            (
                "size: 3\nleq: 0,0 1,1 2,2\nneg: 2 1 0\ng: 0 1 2\nh: 0 1 2\n",
                2,
            ),
        ];
        for (text, expected_line) in cases {
            match parse_algebra(text) {
                Err(Error::Syntax { line, .. }) => assert_eq!(line, expected_line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
