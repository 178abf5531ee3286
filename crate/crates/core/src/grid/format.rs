//! Line-oriented text format for grid links.
//!
//! ```text
//! # comment
//! link L=3
//! component 1 start 0 0 0
//! moves E N W S
//! ```
//!
//! A component may span several `moves` lines; letters can be separated by
//! spaces or written contiguously.

use std::fmt::Write as _;

use super::{validate, Component, GridLink, LatticePoint, Move, Violation};

const MOVES_PER_LINE: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: component {component} does not return to its start (ends at {end})")]
    OpenCycle { line: usize, component: usize, end: LatticePoint },
    #[error("line {line}: {detail}")]
    SelfIntersection { line: usize, detail: String },
    #[error("line {line}: component {component} leaves the box at step {step}: {point}")]
    OutOfBounds { line: usize, component: usize, step: usize, point: LatticePoint },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

/// Tokens of one line with their 1-based columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn parse_int(line: usize, (col, tok): (usize, &str)) -> Result<i32, ParseError> {
    tok.parse().map_err(|_| syntax(line, col, format!("expected an integer, found `{tok}`")))
}

/// Parses the text format without checking link invariants other than the
/// presence of at least one move per component. Returns the link and the
/// line number of each component header.
pub fn parse_grid_link_unchecked(text: &str) -> Result<(GridLink, Vec<usize>), ParseError> {
    let mut size: Option<i32> = None;
    let mut components: Vec<Component> = Vec::new();
    let mut header_lines: Vec<usize> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body);
        let Some(&(col, keyword)) = toks.first() else { continue };

        match keyword {
            "link" => {
                if size.is_some() {
                    return Err(syntax(line, col, "duplicate `link` header"));
                }
                let &(c, arg) = toks.get(1).ok_or_else(|| syntax(line, col, "expected `L=<int>`"))?;
                let value = arg.strip_prefix("L=").ok_or_else(|| syntax(line, c, "expected `L=<int>`"))?;
                let l = parse_int(line, (c + 2, value))?;
                if l <= 0 {
                    return Err(syntax(line, c + 2, "L must be positive"));
                }
                if let Some(&(c, extra)) = toks.get(2) {
                    return Err(syntax(line, c, format!("unexpected `{extra}`")));
                }
                size = Some(l);
            }
            "component" => {
                if size.is_none() {
                    return Err(syntax(line, col, "`component` before `link` header"));
                }
                if let (Some(prev), Some(&hl)) = (components.last(), header_lines.last()) {
                    if prev.moves.is_empty() {
                        return Err(syntax(hl, 1, "component has no moves"));
                    }
                }
                if toks.len() != 6 || toks[2].1 != "start" {
                    return Err(syntax(line, col, "expected `component <int> start <x> <y> <z>`"));
                }
                let label = parse_int(line, toks[1])?;
                if label as usize != components.len() + 1 || label <= 0 {
                    return Err(syntax(
                        line,
                        toks[1].0,
                        format!("expected component label {}, found {label}", components.len() + 1),
                    ));
                }
                let p =
                    LatticePoint::new(parse_int(line, toks[3])?, parse_int(line, toks[4])?, parse_int(line, toks[5])?);
                components.push(Component::new(p, Vec::new()));
                header_lines.push(line);
            }
            "moves" => {
                let comp = components.last_mut().ok_or_else(|| syntax(line, col, "`moves` before any `component`"))?;
                for &(c, tok) in &toks[1..] {
                    for (off, ch) in tok.char_indices() {
                        let mv = Move::from_letter(ch)
                            .ok_or_else(|| syntax(line, c + off, format!("unknown move `{ch}`")))?;
                        comp.moves.push(mv);
                    }
                }
            }
            other => return Err(syntax(line, col, format!("unknown keyword `{other}`"))),
        }
    }

    let size = size.ok_or_else(|| syntax(last_line.max(1), 1, "missing `link L=<int>` header"))?;
    if components.is_empty() {
        return Err(syntax(last_line.max(1), 1, "no components"));
    }
    if let (Some(prev), Some(&hl)) = (components.last(), header_lines.last()) {
        if prev.moves.is_empty() {
            return Err(syntax(hl, 1, "component has no moves"));
        }
    }
    Ok((GridLink::from_parts_unchecked(size, components), header_lines))
}

/// Parses and validates a grid link.
pub fn parse_grid_link(text: &str) -> Result<GridLink, ParseError> {
    let (link, lines) = parse_grid_link_unchecked(text)?;
    let violations = validate(&link);
    let line_of = |c: usize| lines.get(c).copied().unwrap_or(0);
    // Report open cycles first, then bounds, then self-intersections.
    let rank = |v: &Violation| match v {
        Violation::OpenCycle { .. } => 0,
        Violation::OutOfBounds { .. } => 1,
        _ => 2,
    };
    match violations.iter().min_by_key(|v| rank(v)) {
        None => Ok(link),
        Some(v) => Err(match v {
            Violation::OpenCycle { component, end } => {
                ParseError::OpenCycle { line: line_of(*component), component: component + 1, end: *end }
            }
            Violation::OutOfBounds { component, step, point } => ParseError::OutOfBounds {
                line: line_of(*component),
                component: component + 1,
                step: *step,
                point: *point,
            },
            Violation::DuplicateEdge { second, .. } | Violation::VertexCollision { second, .. } => {
                ParseError::SelfIntersection { line: line_of(second.0), detail: v.to_string() }
            }
            Violation::EmptyComponent { component } => syntax(line_of(*component), 1, v.to_string()),
            Violation::NonPositiveSize { .. } => syntax(1, 1, v.to_string()),
        }),
    }
}

pub fn serialize_grid_link(link: &GridLink) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "link L={}", link.size());
    for (i, c) in link.components().iter().enumerate() {
        let _ = writeln!(out, "component {} start {} {} {}", i + 1, c.start.x, c.start.y, c.start.z);
        for chunk in c.moves.chunks(MOVES_PER_LINE) {
            out.push_str("moves");
            for m in chunk {
                out.push(' ');
                out.push(m.letter());
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_dense_fill, make_hopf_link};

    #[test]
    fn smallest_square() {
        let link = parse_grid_link("link L=1\ncomponent 1 start 0 0 0\nmoves E N W S\n").unwrap();
        assert_eq!(link.size(), 1);
        assert_eq!(link.edge_count(), 4);
        assert_eq!(link.components()[0].moves, vec![Move::E, Move::N, Move::W, Move::S]);
    }

    #[test]
    fn contiguous_letters_and_comments() {
        let a =
            parse_grid_link("# unit square\nlink L=1 # size\ncomponent 1 start 0 0 0\nmoves EN\nmoves WS\n").unwrap();
        let b = parse_grid_link("link L=1\ncomponent 1 start 0 0 0\nmoves E N W S").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn open_cycle_is_its_own_error() {
        let err = parse_grid_link("link L=2\ncomponent 1 start 0 0 0\nmoves E N W\n").unwrap_err();
        assert!(matches!(err, ParseError::OpenCycle { line: 2, component: 1, .. }), "{err:?}");
    }

    #[test]
    fn self_intersection_and_bounds_errors() {
        let err = parse_grid_link("link L=1\ncomponent 1 start 0 0 0\nmoves ENWS ENWS\n").unwrap_err();
        assert!(matches!(err, ParseError::SelfIntersection { .. }), "{err:?}");
        let err = parse_grid_link("link L=1\ncomponent 1 start 1 0 0\nmoves E N W S\n").unwrap_err();
        assert!(matches!(err, ParseError::OutOfBounds { .. }), "{err:?}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_grid_link("link L=1\ncomponent 1 start 0 0 0\nmoves E N X S\n").unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 3, column: 11, message: "unknown move `X`".into() });
        let err = parse_grid_link("link L=x\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, column: 8, .. }), "{err:?}");
        let err = parse_grid_link("link L=2\ncomponent 2 start 0 0 0\nmoves E N W S\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_grid_link("link L=2\ncomponent 1 start 0 0 0\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
    }

    #[test]
    fn hopf_round_trips() {
        let link = make_hopf_link();
        let text = serialize_grid_link(&link);
        let back = parse_grid_link(&text).unwrap();
        assert_eq!(back, link);
        assert_eq!(serialize_grid_link(&back), text);
    }

    #[test]
    fn long_components_wrap_at_sixty_moves() {
        let link = make_dense_fill(4);
        let text = serialize_grid_link(&link);
        for line in text.lines().filter(|l| l.starts_with("moves")) {
            assert!(line.split_whitespace().count() - 1 <= MOVES_PER_LINE);
        }
        assert_eq!(parse_grid_link(&text).unwrap(), link);
    }
}
