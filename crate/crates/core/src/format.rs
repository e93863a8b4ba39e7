//! Line-oriented tiling file format.
//!
//! ```text
//! pentatile 1
//! domain torus <v1x> <v1y> <v2x> <v2y>
//! unit <windmill|ship> <A|P> <x> <y> <U|D> <rot> [spin]
//! ```
//!
//! or, for a finite domain, `domain region` followed by `tri <x> <y> <U|D>`
//! lines and a closing `end`. `#` starts a comment. Serialized unit lines
//! are sorted lexicographically.

use std::fmt::Write as _;

use thiserror::Error;

use crate::lattice::{Orient, Region, TorusBasis, Tri};
use crate::pentagon::{Chirality, UnitKind, UnitPlacement};
use crate::tiling::{Domain, Tiling};

pub const HEADER: &str = "pentatile 1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected token `{0}`")]
    UnexpectedToken(String),
    #[error("unexpected end of line, expected {0}")]
    MissingToken(&'static str),
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("missing `{HEADER}` header")]
    MissingHeader,
    #[error("missing domain statement")]
    MissingDomain,
    #[error("region not closed with `end`")]
    UnclosedRegion,
    #[error("degenerate torus basis")]
    DegenerateBasis,
    #[error("invalid unit: {0}")]
    InvalidUnit(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn is_semantic(&self) -> bool {
        matches!(self.kind, ParseErrorKind::DegenerateBasis | ParseErrorKind::InvalidUnit(_))
    }
}

struct Tokens<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
    pos: usize,
    eol_column: usize,
}

impl<'a> Tokens<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        let text = text.split('#').next().unwrap_or("");
        let mut items = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    items.push((s + 1, &text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            items.push((s + 1, &text[s..]));
        }
        Tokens { line, items, pos: 0, eol_column: text.chars().count() + 1 }
    }

    fn is_blank(&self) -> bool {
        self.items.is_empty()
    }

    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column, kind }
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        let item = self
            .items
            .get(self.pos)
            .copied()
            .ok_or_else(|| self.err(self.eol_column, ParseErrorKind::MissingToken(what)))?;
        self.pos += 1;
        Ok(item)
    }

    fn keyword(&mut self, options: &[&str], what: &'static str) -> Result<(usize, &'a str), ParseError> {
        let (col, tok) = self.next(what)?;
        if options.contains(&tok) {
            Ok((col, tok))
        } else {
            Err(self.err(col, ParseErrorKind::UnexpectedToken(tok.to_string())))
        }
    }

    fn int<T: std::str::FromStr>(&mut self, what: &'static str) -> Result<T, ParseError> {
        let (col, tok) = self.next(what)?;
        tok.parse().map_err(|_| self.err(col, ParseErrorKind::BadInteger(tok.to_string())))
    }

    fn orient(&mut self) -> Result<Orient, ParseError> {
        let (_, tok) = self.keyword(&["U", "D"], "U or D")?;
        Ok(if tok == "U" { Orient::U } else { Orient::D })
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.items.get(self.pos) {
            None => Ok(()),
            Some(&(col, tok)) => Err(self.err(col, ParseErrorKind::UnexpectedToken(tok.to_string()))),
        }
    }
}

enum State {
    Header,
    Domain,
    Region(Region),
    Units(Domain),
}

pub fn parse(text: &str) -> Result<Tiling, ParseError> {
    let mut state = State::Header;
    let mut units = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let mut toks = Tokens::new(line, raw);
        if toks.is_blank() {
            continue;
        }
        state = match state {
            State::Header => {
                let (col, tok) = toks.next("header")?;
                if tok != "pentatile" {
                    return Err(toks.err(col, ParseErrorKind::MissingHeader));
                }
                toks.keyword(&["1"], "format version")?;
                toks.finish()?;
                State::Domain
            }
            State::Domain => {
                let (col, tok) = toks.next("domain")?;
                if tok != "domain" {
                    return Err(toks.err(col, ParseErrorKind::MissingDomain));
                }
                let (col, kind) = toks.keyword(&["torus", "region"], "torus or region")?;
                if kind == "torus" {
                    let v1 = (toks.int("v1x")?, toks.int("v1y")?);
                    let v2 = (toks.int("v2x")?, toks.int("v2y")?);
                    toks.finish()?;
                    let basis = TorusBasis::new(v1, v2).map_err(|_| toks.err(col, ParseErrorKind::DegenerateBasis))?;
                    State::Units(Domain::Torus(basis))
                } else {
                    toks.finish()?;
                    State::Region(Region::new())
                }
            }
            State::Region(mut region) => {
                let (_, tok) = toks.keyword(&["tri", "end"], "tri or end")?;
                if tok == "end" {
                    toks.finish()?;
                    State::Units(Domain::Finite(region))
                } else {
                    let (x, y) = (toks.int("x")?, toks.int("y")?);
                    let orient = toks.orient()?;
                    toks.finish()?;
                    region.insert(Tri::new(x, y, orient));
                    State::Region(region)
                }
            }
            State::Units(domain) => {
                let (col, _) = toks.keyword(&["unit"], "unit")?;
                units.push(parse_unit(&mut toks, col)?);
                State::Units(domain)
            }
        };
    }
    let eof = |kind| ParseError { line: last_line + 1, column: 1, kind };
    match state {
        State::Units(domain) => Ok(Tiling::new(domain, units)),
        State::Header => Err(eof(ParseErrorKind::MissingHeader)),
        State::Domain => Err(eof(ParseErrorKind::MissingDomain)),
        State::Region(_) => Err(eof(ParseErrorKind::UnclosedRegion)),
    }
}

fn parse_unit(toks: &mut Tokens<'_>, col: usize) -> Result<UnitPlacement, ParseError> {
    let (_, kind) = toks.keyword(&["windmill", "ship"], "unit kind")?;
    let kind = if kind == "windmill" { UnitKind::Windmill } else { UnitKind::Ship };
    let (_, chir) = toks.keyword(&["A", "P"], "A or P")?;
    let chirality = if chir == "A" { Chirality::Anterior } else { Chirality::Posterior };
    let (x, y) = (toks.int("anchor x")?, toks.int("anchor y")?);
    let orient = toks.orient()?;
    let rot: u8 = toks.int("rot")?;
    let spin: Option<u8> = if toks.pos < toks.items.len() { Some(toks.int("spin")?) } else { None };
    toks.finish()?;
    UnitPlacement::from_fields(kind, chirality, Tri::new(x, y, orient), rot, spin)
        .map_err(|e| toks.err(col, ParseErrorKind::InvalidUnit(e.to_string())))
}

pub fn serialize(t: &Tiling) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    match &t.domain {
        Domain::Torus(b) => {
            let _ = writeln!(out, "domain torus {b}");
        }
        Domain::Finite(r) => {
            out.push_str("domain region\n");
            for tri in r.iter() {
                let _ = writeln!(out, "tri {} {} {}", tri.x, tri.y, tri.orient);
            }
            out.push_str("end\n");
        }
    }
    let mut lines: Vec<String> = t.units.iter().map(|u| format!("unit {u}")).collect();
    lines.sort();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}
