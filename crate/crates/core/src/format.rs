//! Text formats for configurations, matrices and trilinear forms.
//!
//! Every format starts with a `field rational` or `field prime P` line.
//! `#` starts a comment that runs to the end of the line; blank lines are
//! ignored and entries are separated by any whitespace.
//!
//! ```text
//! field rational
//! dim 2
//! points 4
//! 1 0 0
//! 0 1 0
//! 0 0 1
//! 1 1/2 -3
//! ```
//!
//! A matrix file is the field line followed by its rows. A tensor file is the
//! field line, `r R`, `s S`, then `r+s` blocks of `r+1` rows with `s+1`
//! entries each.

use std::fmt::Write as _;

use crate::detnl::TrilinearForm;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use crate::pointconfig::PointConfiguration;

/// Largest dimension or point count accepted in a header.
pub const MAX_COUNT: usize = 1 << 20;

/// Non-blank lines with comments stripped, numbered from 1.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if !content.is_empty() {
                self.last = i + 1;
                return Some((i + 1, content));
            }
        }
        None
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next_line().ok_or_else(|| Error::Parse {
            line: self.last + 1,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }

    /// A `key value` line.
    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (line, content) = self.expect_line(&format!("`{key}`"))?;
        match content.split_once(char::is_whitespace) {
            Some((k, rest)) if k == key => Ok((line, rest.trim())),
            _ => Err(Error::Parse {
                line,
                msg: format!("expected `{key} <value>`"),
            }),
        }
    }

    fn count(&mut self, key: &str) -> Result<usize> {
        let (line, value) = self.keyword(key)?;
        match value.parse() {
            Ok(n) if n <= MAX_COUNT => Ok(n),
            _ => Err(Error::Parse {
                line,
                msg: format!("`{key}` needs an integer in [0, {MAX_COUNT}], got `{value}`"),
            }),
        }
    }
}

fn parse_field(lines: &mut Lines) -> Result<FieldSpec> {
    let (line, value) = lines.keyword("field")?;
    parse_field_spec(value).map_err(|e| Error::Parse {
        line,
        msg: e.to_string(),
    })
}

/// `rational` or `prime P`.
pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        ["rational"] => Ok(FieldSpec::Rationals),
        ["prime", p] => {
            let p: u64 = p.parse().map_err(|_| Error::InvalidArgument(format!("bad modulus `{p}`")))?;
            FieldSpec::prime(p)
        }
        _ => Err(Error::InvalidArgument(format!(
            "expected `rational` or `prime P`, got `{text}`"
        ))),
    }
}

fn parse_row(field: FieldSpec, line: usize, content: &str, width: Option<usize>) -> Result<Vec<Scalar>> {
    let row = content
        .split_whitespace()
        .map(|t| field.parse_scalar(t))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
    if let Some(w) = width {
        if row.len() != w {
            return Err(Error::Parse {
                line,
                msg: format!("expected {w} entries, found {}", row.len()),
            });
        }
    }
    Ok(row)
}

fn reject_trailing(lines: &mut Lines) -> Result<()> {
    match lines.next_line() {
        Some((line, _)) => Err(Error::Parse {
            line,
            msg: "unexpected content after the last row".into(),
        }),
        None => Ok(()),
    }
}

pub fn parse_configuration(text: &str) -> Result<PointConfiguration> {
    let mut lines = Lines::new(text);
    let field = parse_field(&mut lines)?;
    let r = lines.count("dim")?;
    if r < 1 {
        return Err(Error::Parse {
            line: lines.last,
            msg: "`dim` must be at least 1".into(),
        });
    }
    let gamma = lines.count("points")?;
    let header = lines.last;
    let mut rows = Vec::new();
    for _ in 0..gamma {
        let (line, content) = lines.expect_line("a point")?;
        rows.push(parse_row(field, line, content, Some(r + 1))?);
    }
    reject_trailing(&mut lines)?;
    PointConfiguration::new(field, r, rows).map_err(|e| Error::Parse {
        line: header,
        msg: e.to_string(),
    })
}

pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let mut lines = Lines::new(text);
    let field = parse_field(&mut lines)?;
    let mut rows = Vec::new();
    let mut width = None;
    while let Some((line, content)) = lines.next_line() {
        let row = parse_row(field, line, content, width)?;
        width = Some(row.len());
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: lines.last + 1,
            msg: "matrix has no rows".into(),
        });
    }
    ExactMatrix::from_rows(field, rows)
}

pub fn parse_tensor(text: &str) -> Result<TrilinearForm> {
    let mut lines = Lines::new(text);
    let field = parse_field(&mut lines)?;
    let r = lines.count("r")?;
    let s = lines.count("s")?;
    if r < 1 || s < 1 {
        return Err(Error::Parse {
            line: lines.last,
            msg: "`r` and `s` must be at least 1".into(),
        });
    }
    let header = lines.last;
    let mut blocks = Vec::new();
    for _ in 0..r + s {
        let mut block = Vec::new();
        for _ in 0..=r {
            let (line, content) = lines.expect_line("a tensor row")?;
            block.push(parse_row(field, line, content, Some(s + 1))?);
        }
        blocks.push(block);
    }
    reject_trailing(&mut lines)?;
    TrilinearForm::new(field, r, s, blocks).map_err(|e| Error::Parse {
        line: header,
        msg: e.to_string(),
    })
}

fn write_rows(out: &mut String, m: &ExactMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(Scalar::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

/// Serializes with optional leading comment lines.
pub fn write_configuration(cfg: &PointConfiguration, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "field {}", cfg.field());
    let _ = writeln!(out, "dim {}", cfg.r());
    let _ = writeln!(out, "points {}", cfg.gamma());
    write_rows(&mut out, cfg.coords());
    out
}

pub fn write_matrix(m: &ExactMatrix) -> String {
    let mut out = format!("field {}\n", m.field());
    write_rows(&mut out, m);
    out
}

pub fn write_tensor(phi: &TrilinearForm) -> String {
    let mut out = format!("field {}\nr {}\ns {}\n", phi.field(), phi.r(), phi.s());
    for m in 0..phi.r() + phi.s() {
        if m > 0 {
            out.push('\n');
        }
        write_rows(&mut out, &phi.slice(m));
    }
    out
}
