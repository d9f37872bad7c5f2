//! The `.osp` text format.
//!
//! ```text
//! # free-form header comment
//! format: 1
//! name: five_point
//! provenance: hand-entered
//! elements: a b c d e
//! ortho: a-b a-c b-c a-d b-e c-e
//! ```
//!
//! `#` starts a comment that runs to the end of the line. `elements:` and
//! `ortho:` may repeat; their contents accumulate. Labels are runs of
//! characters other than whitespace, `-`, `#`, `:` and `,`. Edges are
//! unordered and duplicates are dropped.
//!
//! Serialization writes labels in element order and edges sorted by index
//! pair, so `serialize(parse(t)) == t` for any text produced by `serialize`.
//! Comment lines before the first directive are kept as the header; all
//! other comments are discarded.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::space::OrthoSpace;

pub const FORMAT_VERSION: u32 = 1;

const LABELS_PER_LINE: usize = 16;
const EDGES_PER_LINE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        message: message.into(),
    })
}

/// A parsed `.osp` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDocument {
    pub format_version: u32,
    pub header: Vec<String>,
    pub name: Option<String>,
    pub provenance: Option<String>,
    pub space: OrthoSpace,
}

impl SpaceDocument {
    pub fn new(space: OrthoSpace) -> Self {
        SpaceDocument {
            format_version: FORMAT_VERSION,
            header: Vec::new(),
            name: space.name().map(str::to_owned),
            provenance: None,
            space,
        }
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }

    pub fn with_header(mut self, lines: &[&str]) -> Self {
        self.header = lines.iter().map(|s| s.to_string()).collect();
        self
    }
}

fn is_label_char(c: char) -> bool {
    !(c.is_whitespace() || matches!(c, '-' | '#' | ':' | ','))
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, (b, c)) in s.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((k, b)),
            (true, Some((k0, b0))) => {
                out.push((offset + k0, &s[b0..b]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((k0, b0)) = start {
        out.push((offset + k0, &s[b0..]));
    }
    out
}

fn check_label(line: usize, col: usize, l: &str) -> Result<(), ParseError> {
    match l.chars().position(|c| !is_label_char(c)) {
        Some(p) => err(line, col + p, format!("invalid character in label `{l}`")),
        None if l.is_empty() => err(line, col, "empty label"),
        None => Ok(()),
    }
}

pub fn parse_document(text: &str) -> Result<SpaceDocument, ParseError> {
    let mut header = Vec::new();
    let mut seen_directive = false;
    let mut version = None;
    let mut name = None;
    let mut provenance = None;
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = BTreeSet::new();
    let mut pending: Vec<(usize, usize, String, String)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let (body, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if body.trim().is_empty() {
            if let (Some(c), false) = (comment, seen_directive) {
                if raw.trim_start().starts_with('#') {
                    header.push(c.to_owned());
                }
            }
            continue;
        }
        seen_directive = true;
        let Some(colon) = body.find(':') else {
            let col = body.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return err(ln, col, "expected `key: value`");
        };
        let key = body[..colon].trim();
        let value = &body[colon + 1..];
        let vcol = body[..colon + 1].chars().count() + 1;
        match key {
            "format" => {
                let v = value.trim();
                let col = vcol + value.chars().take_while(|c| c.is_whitespace()).count();
                match v.parse::<u32>() {
                    Ok(FORMAT_VERSION) if version.is_none() => version = Some(FORMAT_VERSION),
                    Ok(FORMAT_VERSION) => return err(ln, col, "repeated `format`"),
                    _ => return err(ln, col, format!("unsupported format `{v}`")),
                }
            }
            "name" | "provenance" => {
                let slot = if key == "name" { &mut name } else { &mut provenance };
                if slot.is_some() {
                    return err(ln, 1, format!("repeated `{key}`"));
                }
                *slot = Some(value.trim().to_owned());
            }
            "elements" => {
                for (col, l) in tokens(value, vcol) {
                    check_label(ln, col, l)?;
                    if index.contains_key(l) {
                        return err(ln, col, format!("duplicate label `{l}`"));
                    }
                    index.insert(l.to_owned(), labels.len());
                    labels.push(l.to_owned());
                }
            }
            "ortho" => {
                for (col, t) in tokens(value, vcol) {
                    let Some((a, b)) = t.split_once('-') else {
                        return err(ln, col, format!("expected `a-b`, found `{t}`"));
                    };
                    check_label(ln, col, a)?;
                    check_label(ln, col + a.chars().count() + 1, b)?;
                    if a == b {
                        return err(ln, col, format!("`{a}` cannot be orthogonal to itself"));
                    }
                    pending.push((ln, col, a.to_owned(), b.to_owned()));
                }
            }
            _ => {
                let col = body.chars().take_while(|c| c.is_whitespace()).count() + 1;
                return err(ln, col, format!("unknown key `{key}`"));
            }
        }
    }

    if labels.is_empty() {
        return err(1, 1, "no elements declared");
    }
    for (ln, col, a, b) in pending {
        let look = |l: &str, c: usize| match index.get(l) {
            Some(&i) => Ok(i),
            None => err(ln, c, format!("unknown label `{l}`")),
        };
        let i = look(&a, col)?;
        let j = look(&b, col + a.chars().count() + 1)?;
        edges.insert((i.min(j), i.max(j)));
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let mut space = OrthoSpace::from_index_edges(labels, &edges).map_err(|e| ParseError {
        line: 1,
        col: 1,
        message: e.to_string(),
    })?;
    if let Some(n) = &name {
        space = space.with_name(n.clone());
    }
    Ok(SpaceDocument {
        format_version: version.unwrap_or(FORMAT_VERSION),
        header,
        name,
        provenance,
        space,
    })
}

pub fn parse_osp(text: &str) -> Result<OrthoSpace, ParseError> {
    parse_document(text).map(|d| d.space)
}

impl fmt::Display for SpaceDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.header {
            writeln!(f, "#{h}")?;
        }
        writeln!(f, "format: {}", self.format_version)?;
        if let Some(n) = &self.name {
            writeln!(f, "name: {n}")?;
        }
        if let Some(p) = &self.provenance {
            writeln!(f, "provenance: {p}")?;
        }
        let x = &self.space;
        for chunk in x.labels().chunks(LABELS_PER_LINE) {
            writeln!(f, "elements: {}", chunk.join(" "))?;
        }
        let edges: Vec<String> = x
            .edges()
            .into_iter()
            .map(|(i, j)| format!("{}-{}", x.label(i), x.label(j)))
            .collect();
        for chunk in edges.chunks(EDGES_PER_LINE) {
            writeln!(f, "ortho: {}", chunk.join(" "))?;
        }
        Ok(())
    }
}

pub fn serialize_document(doc: &SpaceDocument) -> String {
    doc.to_string()
}

pub fn serialize_osp(x: &OrthoSpace) -> String {
    SpaceDocument::new(x.clone()).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_orthogonal_points() {
        let x = parse_osp("elements: a b\northo: a-b").unwrap();
        assert_eq!(x.len(), 2);
        assert!(x.is_orth(0, 1));
    }

    #[test]
    fn comments_duplicates_and_header() {
        let t = "# five points\n#  second line\nformat: 1\nelements: a b c # trailing\nelements: d\northo: a-b b-a\northo: c-d\n";
        let doc = parse_document(t).unwrap();
        assert_eq!(doc.header, vec![" five points", "  second line"]);
        assert_eq!(doc.space.edge_count(), 2);
        let s = serialize_document(&doc);
        assert_eq!(s, "# five points\n#  second line\nformat: 1\nelements: a b c d\northo: a-b c-d\n");
        assert_eq!(serialize_document(&parse_document(&s).unwrap()), s);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_osp("elements: a\northo: a-a").unwrap_err();
        assert_eq!((e.line, e.col), (2, 8));
        let e = parse_osp("elements: a b\northo: a-b  b-z").unwrap_err();
        assert_eq!((e.line, e.col), (2, 15));
        assert!(e.message.contains("unknown label"));
        let e = parse_osp("elements: a a").unwrap_err();
        assert_eq!((e.line, e.col), (1, 13));
        let e = parse_osp("format: 2\nelements: a").unwrap_err();
        assert_eq!((e.line, e.col), (1, 9));
        let e = parse_osp("colour: red").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_osp("# nothing\n").is_err());
        assert!(parse_osp("elements: a b\northo: ab").is_err());
    }

    #[test]
    fn long_lists_wrap() {
        let labels: Vec<String> = (0..20).map(|i| format!("p{i}")).collect();
        let edges: Vec<_> = (1..20).map(|i| (0, i)).collect();
        let x = OrthoSpace::from_index_edges(labels, &edges).unwrap().with_name("star");
        let s = serialize_osp(&x);
        assert_eq!(s.lines().filter(|l| l.starts_with("elements:")).count(), 2);
        assert_eq!(s.lines().filter(|l| l.starts_with("ortho:")).count(), 2);
        let y = parse_osp(&s).unwrap();
        assert_eq!(x, y);
        assert_eq!(y.name(), Some("star"));
    }
}
