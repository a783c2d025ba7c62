//! The `.lgrid` text format and move scripts.
//!
//! ```text
//! # trefoil-ish
//! lens 5 2
//! index 2
//! z 0 3
//! w 4 1
//! ```

use std::fmt;

use thiserror::Error;

use crate::grid::{GridDiagram, GridError};
use crate::legendrian::moves::{GridMove, StabType};

/// A syntax error; `line` and `column` are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoadError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid diagram: {0}")]
    Invalid(#[from] GridError),
}

/// Whitespace-separated words of a line with their 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain([(line.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn number(line: usize, (column, word): (usize, &str)) -> Result<usize, ParseError> {
    word.parse().map_err(|_| ParseError {
        line,
        column,
        message: format!("expected a non-negative integer, found `{word}`"),
    })
}

/// Meaningful lines: (1-based line number, words), comments and blanks
/// skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let w = words(l);
        match w.first() {
            None => None,
            Some((_, first)) if first.starts_with('#') => None,
            Some(_) => Some((i + 1, w)),
        }
    })
}

/// Raw fields of a `.lgrid` file, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGrid {
    pub p: usize,
    pub q: usize,
    pub z: Vec<usize>,
    pub w: Vec<usize>,
}

pub fn parse_raw(text: &str) -> Result<RawGrid, ParseError> {
    const KEYS: [&str; 4] = ["lens", "index", "z", "w"];
    let mut lines = content_lines(text);
    let mut fields: Vec<Vec<usize>> = Vec::new();
    let mut last_line = 0;
    for key in KEYS {
        let (line, ws) = lines.next().ok_or_else(|| ParseError {
            line: last_line + 1,
            column: 1,
            message: format!("missing `{key}` line"),
        })?;
        last_line = line;
        let (column, head) = ws[0];
        if head != key {
            return Err(ParseError {
                line,
                column,
                message: format!("expected `{key}`, found `{head}`"),
            });
        }
        let values = ws[1..].iter().map(|&w| number(line, w)).collect::<Result<Vec<_>, _>>()?;
        let expected = match key {
            "lens" => Some(2),
            "index" => Some(1),
            _ => fields.get(1).map(|n| n[0]),
        };
        if let Some(k) = expected {
            if values.len() != k {
                let column = ws.get(k + 1).or(ws.last()).map_or(1, |w| w.0);
                return Err(ParseError {
                    line,
                    column,
                    message: format!("`{key}` takes {k} values, found {}", values.len()),
                });
            }
        }
        fields.push(values);
    }
    if let Some((line, ws)) = lines.next() {
        return Err(ParseError {
            line,
            column: ws[0].0,
            message: format!("unexpected `{}` after the `w` line", ws[0].1),
        });
    }
    Ok(RawGrid {
        p: fields[0][0],
        q: fields[0][1],
        z: fields[2].clone(),
        w: fields[3].clone(),
    })
}

pub fn parse_grid(text: &str) -> Result<GridDiagram, LoadError> {
    let raw = parse_raw(text)?;
    Ok(GridDiagram::new(raw.p, raw.q, raw.z, raw.w)?)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Canonical text: the four fields in order, single spaces, trailing newline.
pub fn emit_grid(d: &GridDiagram) -> String {
    format!(
        "lens {} {}\nindex {}\nz {}\nw {}\n",
        d.p,
        d.q,
        d.n,
        join(&d.z),
        join(&d.w)
    )
}

pub struct ScriptLine(pub GridMove);

impl fmt::Display for ScriptLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            GridMove::CommuteColumns(i) => write!(f, "commute-cols {i}"),
            GridMove::CommuteRows(i) => write!(f, "commute-rows {i}"),
            GridMove::Stabilize(t, row) => write!(f, "stab {t} {row}"),
            GridMove::Destabilize(site) => write!(f, "destab {site}"),
        }
    }
}

/// Moves, one per line; `destab k` names the k-th entry of
/// `destabilization_sites` of the diagram at that point of the script.
pub fn parse_script(text: &str) -> Result<Vec<GridMove>, ParseError> {
    let mut out = Vec::new();
    for (line, ws) in content_lines(text) {
        let (column, verb) = ws[0];
        let arity = if verb == "stab" { 2 } else { 1 };
        if ws.len() != arity + 1 {
            return Err(ParseError {
                line,
                column: ws.get(arity + 1).map_or(column, |w| w.0),
                message: format!("`{verb}` takes {arity} argument(s)"),
            });
        }
        let mv = match verb {
            "commute-cols" => GridMove::CommuteColumns(number(line, ws[1])?),
            "commute-rows" => GridMove::CommuteRows(number(line, ws[1])?),
            "destab" => GridMove::Destabilize(number(line, ws[1])?),
            "stab" => {
                let t: StabType = ws[1].1.parse().map_err(|message| ParseError {
                    line,
                    column: ws[1].0,
                    message,
                })?;
                GridMove::Stabilize(t, number(line, ws[2])?)
            }
            _ => {
                return Err(ParseError {
                    line,
                    column,
                    message: format!("unknown move `{verb}`"),
                })
            }
        };
        out.push(mv);
    }
    Ok(out)
}

pub fn emit_script(moves: &[GridMove]) -> String {
    moves.iter().map(|m| format!("{}\n", ScriptLine(*m))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendrian::moves::Ordinal;

    #[test]
    fn canonical_round_trip() {
        for d in crate::corpus::random_corpus(4, 30, 5, 3) {
            let text = emit_grid(&d);
            assert_eq!(parse_grid(&text).unwrap(), d);
            assert_eq!(emit_grid(&parse_grid(&text).unwrap()), text);
        }
    }

    #[test]
    fn comments_and_spacing() {
        let text = "# core of L(2,1)\n\nlens  2 1\n  index 1\nz 0   # z\nw 1\n";
        assert!(parse_grid(text).is_err());
        let text = "# core of L(2,1)\n\nlens  2 1\n  index 1\nz 0\nw 1\n";
        let d = parse_grid(text).unwrap();
        assert_eq!(emit_grid(&d), "lens 2 1\nindex 1\nz 0\nw 1\n");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_raw("lens 2 1\nindex 1\nz x\nw 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        let e = parse_raw("lens 2 1\nindex 2\nz 0\nw 1 3\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_raw("lens 2 1\nz 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_raw("lens 2 1\nindex 1\nz 0\n").unwrap_err();
        assert!(e.message.contains("`w`"));
        assert!(matches!(parse_grid("lens 4 2\nindex 1\nz 0\nw 1\n"), Err(LoadError::Invalid(_))));
    }

    #[test]
    fn scripts() {
        let text = "commute-cols 1\n# c\ncommute-rows 0\nstab W:SE 2\ndestab 3\n";
        let moves = parse_script(text).unwrap();
        assert_eq!(
            moves,
            vec![
                GridMove::CommuteColumns(1),
                GridMove::CommuteRows(0),
                GridMove::Stabilize(StabType::w(Ordinal::SE), 2),
                GridMove::Destabilize(3),
            ]
        );
        assert_eq!(parse_script(&emit_script(&moves)).unwrap(), moves);
        let e = parse_script("stab Q:SE 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        let e = parse_script("commute-cols\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_script("twist 1\n").is_err());
    }
}
