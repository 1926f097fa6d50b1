//! Text formats for tournaments and round schedules.
//!
//! Tournament:
//!
//! ```text
//! 3
//! 011
//! 001
//! 000
//! ```
//!
//! or, equivalently, the compact form `3\nhex:7\n` whose digits are the pair
//! bits of [`InstanceIndex`], most significant first and zero-padded to
//! `ceil(C(n,2)/4)` digits. Schedules start with a round count followed by
//! that many tournaments back to back.

use std::fmt::Write as _;

use crate::bitset::Word;
use crate::error::{Error, Result};
use crate::tournament::{InstanceIndex, Tournament};

/// Matrix form, one row per line, trailing newline included.
pub fn serialize<W: Word>(t: &Tournament<W>) -> String {
    let n = t.n();
    let mut s = String::with_capacity((n + 1) * (n + 1) + 8);
    writeln!(s, "{n}").unwrap();
    for i in 0..n {
        s.extend((0..n).map(|j| if t.has_edge(i, j) { '1' } else { '0' }));
        s.push('\n');
    }
    s
}

pub fn serialize_hex<W: Word>(t: &Tournament<W>) -> String {
    format!("{}\nhex:{}\n", t.n(), t.to_index().to_hex())
}

/// Line cursor that skips blank lines and remembers 1-based positions.
struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate().peekable() }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        for (no, line) in self.inner.by_ref() {
            let line = line.trim_end_matches('\r').trim();
            if !line.is_empty() {
                return Ok((no + 1, line));
            }
        }
        Err(Error::Parse { line: 0, msg: format!("unexpected end of input, expected {what}") })
    }

    fn rest_is_blank(&mut self) -> Option<usize> {
        self.inner.find(|(_, l)| !l.trim().is_empty()).map(|(no, _)| no + 1)
    }
}

fn parse_count(line: usize, text: &str, what: &str) -> Result<usize> {
    text.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("malformed header: expected {what}, found {text:?}"),
    })
}

fn with_line(line: usize, err: Error) -> Error {
    match err {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => Error::Parse { line, msg: other.to_string() },
    }
}

fn parse_one<W: Word>(lines: &mut Lines<'_>) -> Result<Tournament<W>> {
    let (hline, header) = lines.next_line("vertex count")?;
    let n = parse_count(hline, header, "vertex count")?;
    if n == 0 {
        return Err(Error::Parse { line: hline, msg: "vertex count must be at least 1".into() });
    }
    let (line, first) = lines.next_line("matrix row or hex line")?;
    if let Some(digits) = first.strip_prefix("hex:") {
        let idx = InstanceIndex::from_hex(n, digits.trim()).map_err(|e| with_line(line, e))?;
        return Tournament::from_index(&idx).map_err(|e| with_line(line, e));
    }
    let mut rows = Vec::with_capacity(n);
    let mut row_text = (line, first);
    loop {
        let (no, text) = row_text;
        let row = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse { line: no, msg: format!("unexpected character {other:?}") }),
            })
            .collect::<Result<Vec<bool>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line: no,
                msg: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        rows.push(row);
        if rows.len() == n {
            break;
        }
        row_text = lines.next_line("matrix row")?;
    }
    Tournament::build(n, &rows).map_err(|e| with_line(hline, e))
}

/// Parses exactly one tournament; trailing content is an error.
pub fn parse<W: Word>(text: &str) -> Result<Tournament<W>> {
    let mut lines = Lines::new(text);
    let t = parse_one(&mut lines)?;
    if let Some(line) = lines.rest_is_blank() {
        return Err(Error::Parse { line, msg: "trailing content after tournament".into() });
    }
    Ok(t)
}

pub fn serialize_schedule<W: Word>(rounds: &[Tournament<W>]) -> String {
    let mut s = format!("{}\n", rounds.len());
    for t in rounds {
        s.push_str(&serialize(t));
    }
    s
}

/// Parses a round count followed by that many tournaments, all of one size.
pub fn parse_schedule<W: Word>(text: &str) -> Result<Vec<Tournament<W>>> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next_line("round count")?;
    let count = parse_count(line, header, "round count")?;
    let mut rounds: Vec<Tournament<W>> = Vec::with_capacity(count);
    for _ in 0..count {
        let t = parse_one(&mut lines)?;
        if let Some(first) = rounds.first() {
            if first.n() != t.n() {
                return Err(Error::SizeMismatch(first.n(), t.n()));
            }
        }
        rounds.push(t);
    }
    if let Some(line) = lines.rest_is_blank() {
        return Err(Error::Parse { line, msg: "trailing content after last round".into() });
    }
    Ok(rounds)
}
