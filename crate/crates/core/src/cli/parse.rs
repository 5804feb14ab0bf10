//! Text syntax for quaternions, matrices and eigenvectors.
//!
//! Positions in errors are byte offsets into the original text.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::spectrum::Matrix2;
use crate::{Quat, Rational};

fn expected(position: usize, what: &str) -> Error {
    Error::Parse {
        position,
        expected: what.to_string(),
    }
}

/// Non-whitespace characters with their byte offsets.
struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Cursor {
    fn new(text: &str, offset: usize) -> Self {
        Cursor {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .map(|(i, c)| (i + offset, c))
                .collect(),
            pos: 0,
            end: text.len() + offset,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }
}

/// Parses a sum of signed terms such as `1+2i-3j+k` or `1/2 + 1/2k`.
pub fn parse_quaternion(text: &str) -> Result<Quat> {
    parse_quaternion_at(text, 0)
}

fn parse_quaternion_at(text: &str, offset: usize) -> Result<Quat> {
    let mut cur = Cursor::new(text, offset);
    if cur.peek().is_none() {
        return Err(expected(cur.offset(), "a term"));
    }
    let mut coeffs = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                negative = true;
                cur.bump();
            }
            _ if first => {}
            _ => return Err(expected(cur.offset(), "'+' or '-'")),
        }
        first = false;
        let coefficient = match cur.digits() {
            Some(numer) => {
                let denom = if cur.peek() == Some('/') {
                    cur.bump();
                    let at = cur.offset();
                    match cur.digits() {
                        Some(d) if !d.is_zero() => d,
                        _ => return Err(expected(at, "positive integer denominator")),
                    }
                } else {
                    BigInt::one()
                };
                Some(Rational::new(numer, denom))
            }
            None => None,
        };
        let unit = match cur.peek() {
            Some('i') => Some(1),
            Some('j') => Some(2),
            Some('k') => Some(3),
            _ => None,
        };
        if unit.is_some() {
            cur.bump();
        }
        let slot = match (coefficient.is_some(), unit) {
            (false, None) => return Err(expected(cur.offset(), "rational coefficient or unit i, j, k")),
            (_, Some(u)) => u,
            (true, None) => 0,
        };
        let value = coefficient.unwrap_or_else(Rational::one);
        if negative {
            coeffs[slot] -= value;
        } else {
            coeffs[slot] += value;
        }
    }
    let [x0, x1, x2, x3] = coeffs;
    Ok(Quat::new(x0, x1, x2, x3))
}

/// Splits `text[start..end]` on top-level commas, returning `(offset, piece)`.
fn split_commas(text: &str, start: usize, end: usize) -> Vec<(usize, &str)> {
    let mut pieces = Vec::new();
    let mut depth = 0usize;
    let mut piece_start = start;
    for (i, c) in text[start..end].char_indices() {
        let i = i + start;
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                pieces.push((piece_start, &text[piece_start..i]));
                piece_start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push((piece_start, &text[piece_start..end]));
    pieces
}

/// Interior of a bracketed group: `(start, end)` of the text between `[` and `]`.
fn brackets(text: &str, offset: usize) -> Result<(usize, usize)> {
    let open = text
        .find(|c: char| !c.is_whitespace())
        .ok_or_else(|| expected(offset + text.len(), "'['"))?;
    if !text[open..].starts_with('[') {
        return Err(expected(offset + open, "'['"));
    }
    let close = text.rfind(|c: char| !c.is_whitespace()).unwrap_or(open);
    if close == open || !text[close..].starts_with(']') {
        return Err(expected(offset + close + 1, "']'"));
    }
    Ok((open + 1, close))
}

/// Parses `[[a, b], [c, d]]`.
pub fn parse_matrix(text: &str) -> Result<Matrix2<Rational>> {
    let (start, end) = brackets(text, 0)?;
    let rows = split_commas(text, start, end);
    if rows.len() != 2 {
        let at = rows.get(2).map_or(end, |r| r.0);
        return Err(expected(at, "exactly two rows"));
    }
    let mut entries = Vec::with_capacity(4);
    for (row_start, row) in rows {
        let (s, e) = brackets(row, row_start)?;
        let cells = split_commas(row, s, e);
        if cells.len() != 2 {
            let at = cells.get(2).map_or(row_start + e, |c| row_start + c.0);
            return Err(expected(at, "exactly two entries per row"));
        }
        for (cell_start, cell) in cells {
            entries.push(parse_quaternion_at(cell, row_start + cell_start)?);
        }
    }
    let [a, b, c, d]: [Quat; 4] = entries.try_into().expect("four entries");
    Ok(Matrix2::new(a, b, c, d))
}

/// Parses a column vector `V1,V2`, optionally bracketed.
pub fn parse_vector(text: &str) -> Result<[Quat; 2]> {
    let trimmed = text.trim_start();
    let (start, end) = if trimmed.starts_with('[') || trimmed.starts_with('(') {
        let open = text.len() - trimmed.len();
        let close = text.rfind(|c: char| !c.is_whitespace()).unwrap_or(open);
        let closing = if trimmed.starts_with('[') { ']' } else { ')' };
        if close == open || !text[close..].starts_with(closing) {
            return Err(expected(close + 1, &format!("'{closing}'")));
        }
        (open + 1, close)
    } else {
        (0, text.len())
    };
    let parts = split_commas(text, start, end);
    if parts.len() != 2 {
        let at = parts.get(2).map_or(end, |p| p.0);
        return Err(expected(at, "exactly two components"));
    }
    Ok([
        parse_quaternion_at(parts[0].1, parts[0].0)?,
        parse_quaternion_at(parts[1].1, parts[1].0)?,
    ])
}
