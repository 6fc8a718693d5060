//! PD text, the knot corpus format and JSON-lines result records.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! diagram := "O" | "PD[" item ("," item)* "]" | bare+
//! item    := "X[" int "," int "," int "," int "]" | "O"
//! bare    := "X(" int "," int "," int "," int ")" [","]
//! ```
//!
//! `O` is a crossingless circle. Serialization is canonical: crossings in
//! stored order as `X[a,b,c,d]` PD tuples, split circles as trailing `O`s,
//! no spaces.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagram::{EdgeLabel, PdDiagram};
use crate::error::{Error, Result};
use crate::faces::{faces, reducible_crossings};

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.bump(c);
        }
    }

    fn bump(&mut self, c: char) {
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump(c);
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.bump(want);
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<EdgeLabel> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let digits: String = self.text[self.pos..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected an edge label, found '{c}'")),
                None => self.error("expected an edge label, found end of input"),
            });
        }
        for c in digits.chars() {
            self.bump(c);
        }
        match digits.parse::<EdgeLabel>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(Error::Syntax {
                line,
                column,
                message: format!("edge label {digits} must be a positive 32-bit integer"),
            }),
        }
    }

    /// Four labels and the closing bracket.
    fn tuple(&mut self, close: char) -> Result<[EdgeLabel; 4]> {
        let mut t = [0; 4];
        for (k, slot) in t.iter_mut().enumerate() {
            if k > 0 {
                if self.peek() == Some(close) {
                    return Err(self.error(format!("crossing has {k} labels, expected 4")));
                }
                self.expect(',')?;
            }
            *slot = self.int()?;
        }
        if self.peek() == Some(',') {
            return Err(self.error("crossing has more than 4 labels"));
        }
        self.expect(close)?;
        Ok(t)
    }
}

/// Parses PD text without the face/Euler check.
pub fn parse_pd_unchecked(text: &str) -> Result<PdDiagram> {
    let mut lx = Lexer::new(text);
    let mut tuples = Vec::new();
    let mut loops = 0;
    match lx.peek() {
        None => return Err(lx.error("empty input; the crossingless circle is written O")),
        Some('O') => {
            lx.bump('O');
            loops = 1;
        }
        Some('P') => {
            for c in ['P', 'D', '['] {
                lx.expect(c)?;
            }
            if lx.peek() == Some(']') {
                return Err(lx.error("PD[] has no crossings; the crossingless circle is written O"));
            }
            loop {
                match lx.peek() {
                    Some('X') => {
                        lx.bump('X');
                        lx.expect('[')?;
                        tuples.push(lx.tuple(']')?);
                    }
                    Some('O') => {
                        lx.bump('O');
                        loops += 1;
                    }
                    Some(c) => return Err(lx.error(format!("expected X[...] or O, found '{c}'"))),
                    None => return Err(lx.error("unterminated PD[")),
                }
                if !lx.eat(',') {
                    break;
                }
            }
            lx.expect(']')?;
        }
        Some('X') => {
            while lx.peek() == Some('X') {
                lx.bump('X');
                let close = match lx.peek() {
                    Some('(') => ')',
                    Some('[') => ']',
                    _ => return Err(lx.error("expected '(' after X")),
                };
                lx.bump(if close == ')' { '(' } else { '[' });
                tuples.push(lx.tuple(close)?);
                lx.eat(',');
            }
        }
        Some(c) => return Err(lx.error(format!("expected PD[, X( or O, found '{c}'"))),
    }
    if let Some(c) = lx.peek() {
        return Err(lx.error(format!("trailing input starting at '{c}'")));
    }
    PdDiagram::from_pd(&tuples, loops)
}

/// Parses and validates PD text.
pub fn parse_pd(text: &str) -> Result<PdDiagram> {
    let d = parse_pd_unchecked(text)?;
    validate(&d)?;
    Ok(d)
}

/// Canonical text for a diagram.
pub fn serialize(diagram: &PdDiagram) -> String {
    if diagram.crossing_count() == 0 && diagram.loops() == 1 {
        return "O".to_string();
    }
    let mut items: Vec<String> = diagram
        .pd_tuples()
        .iter()
        .map(|t| format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3]))
        .collect();
    items.extend(std::iter::repeat_n("O".to_string(), diagram.loops()));
    format!("PD[{}]", items.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub crossings: usize,
    pub edges: usize,
    pub components: usize,
    pub regions: usize,
    pub writhe: i32,
    pub reducible_crossings: Vec<usize>,
}

/// Structural checks: edge pairing and orientation (already enforced when
/// the diagram was built), connectivity and the Euler count `c + 2`.
pub fn validate(diagram: &PdDiagram) -> Result<ValidationReport> {
    let map = faces(diagram)?;
    Ok(ValidationReport {
        crossings: diagram.crossing_count(),
        edges: diagram.edge_count(),
        components: diagram.component_count(),
        regions: map.len(),
        writhe: diagram.writhe(),
        reducible_crossings: reducible_crossings(&map),
    })
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub pd_text: String,
    pub crossing_number: usize,
    /// Admissible region unknotting numbers, when known.
    pub expected_ur_constraint: Option<BTreeSet<usize>>,
    pub diagram: PdDiagram,
}

fn parse_constraint(field: &str) -> std::result::Result<Option<BTreeSet<usize>>, String> {
    let field = field.trim();
    if field == "-" {
        return Ok(None);
    }
    let inner = field
        .strip_prefix('{')
        .and_then(|f| f.strip_suffix('}'))
        .ok_or_else(|| format!("constraint {field:?} is neither a set literal nor -"))?;
    let set = inner
        .split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}")))
        .collect::<std::result::Result<BTreeSet<_>, _>>()?;
    Ok(Some(set))
}

/// Parses corpus TSV: `name, pd, crossings, ur_constraint` per line; blank
/// lines and lines starting with `#` are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fail = |message: String| Error::Corpus { line, message };
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if fields.len() != 4 {
            return Err(fail(format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        let name = fields[0].trim().to_string();
        if !names.insert(name.clone()) {
            return Err(fail(format!("duplicate name {name}")));
        }
        let diagram = parse_pd(fields[1]).map_err(|e| fail(format!("{name}: {e}")))?;
        let crossing_number: usize = fields[2]
            .trim()
            .parse()
            .map_err(|e| fail(format!("{name}: crossing number: {e}")))?;
        if crossing_number != diagram.crossing_count() {
            return Err(fail(format!(
                "{name}: crossing number {crossing_number} but the diagram has {}",
                diagram.crossing_count()
            )));
        }
        let expected_ur_constraint =
            parse_constraint(fields[3]).map_err(|m| fail(format!("{name}: {m}")))?;
        out.push(CorpusEntry {
            name,
            pd_text: fields[1].trim().to_string(),
            crossing_number,
            expected_ur_constraint,
            diagram,
        });
    }
    Ok(out)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusEntry>> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

/// Upper bounds on the region unknotting number of a diagram and whether
/// they hold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub holds: bool,
    pub ur: usize,
    /// `c/2 + 1`.
    pub crossing_bound: f64,
    /// Half the number of regions, `(c + 2)/2`.
    pub region_bound: f64,
}

/// One JSON-lines result row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub name: String,
    pub ur: usize,
    pub witness_regions: Vec<usize>,
    pub bound: BoundRecord,
    /// Number of flip vectors that turn the diagram into an unknot.
    pub jones_trivial_flips: usize,
}

impl ResultRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}
