//! Code files: a header line `m q`, then one codeword per line as `m`
//! whitespace-separated symbols. `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{Code, Vertex};

pub fn parse_code(text: &str) -> Result<Code> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap().trim();
        (!line.is_empty()).then_some((i + 1, line))
    });
    let (l0, header) = lines.next().ok_or_else(|| Error::parse(1, "empty code file"))?;
    let nums = parse_numbers(header, l0)?;
    let (m, q) = match nums[..] {
        [m, q] if m > 0 && q > 0 => (m, q),
        _ => return Err(Error::parse(l0, "expected header `m q` with positive values")),
    };
    let mut words = Vec::new();
    for (l, line) in lines {
        let symbols = parse_numbers(line, l)?;
        if symbols.len() != m {
            return Err(Error::parse(
                l,
                format!("expected {m} symbols, found {}", symbols.len()),
            ));
        }
        words.push(Vertex::new(q, &symbols).map_err(|e| Error::parse(l, e.to_string()))?);
    }
    if words.is_empty() {
        return Err(Error::parse(l0, "code has no words"));
    }
    Code::new(m, q, words)
}

fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("bad number `{t}`")))
        })
        .collect()
}

pub fn write_code(code: &Code) -> String {
    let mut out = String::with_capacity(code.len() * (2 * code.m() + 1) + 16);
    writeln!(out, "{} {}", code.m(), code.q()).unwrap();
    for w in code {
        writeln!(out, "{w}").unwrap();
    }
    out
}
