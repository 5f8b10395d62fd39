//! Wreath group files: a header `m q`, then one element per line as JSON
//! `{"m":…,"q":…,"bottom":[[…]…],"top":[…]}`. `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{WreathElement, WreathGroup};

pub fn parse_wreath_group(text: &str) -> Result<WreathGroup> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        (!line.is_empty() && !line.starts_with('#')).then_some((i + 1, line))
    });
    let (l0, header) = lines.next().ok_or_else(|| Error::parse(1, "empty group file"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(l0, format!("bad number `{t}`"))))
        .collect::<Result<_>>()?;
    let (m, q) = match nums[..] {
        [m, q] if m > 0 && q > 0 => (m, q),
        _ => return Err(Error::parse(l0, "expected header `m q`")),
    };
    let mut gens = Vec::new();
    for (l, line) in lines {
        let x: WreathElement = serde_json::from_str(line).map_err(|e| Error::parse(l, e.to_string()))?;
        if x.m() != m || x.q() != q {
            return Err(Error::parse(
                l,
                format!("element over H({},{}) in H({m},{q}) file", x.m(), x.q()),
            ));
        }
        gens.push(x);
    }
    WreathGroup::new(m, q, gens)
}

pub fn write_wreath_group(g: &WreathGroup) -> String {
    let mut out = format!("{} {}\n", g.m(), g.q());
    for x in g.generators() {
        writeln!(out, "{}", x.to_json()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn round_trip() {
        let x = WreathElement::diagonal(3, &Permutation::parse_cycles(4, "(0 1 2)").unwrap());
        let y = WreathElement::from_top(4, Permutation::parse_cycles(3, "(0 1)").unwrap());
        let g = WreathGroup::new(3, 4, vec![x, y]).unwrap();
        let text = write_wreath_group(&g);
        let back = parse_wreath_group(&text).unwrap();
        assert_eq!(back.generators(), g.generators());
        assert_eq!(write_wreath_group(&back), text);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_wreath_group("2\n"), Err(Error::Parse { line: 1, .. })));
        let bad = "2 3\n{\"m\":2,\"q\":3,\"bottom\":[[0,1,2]],\"top\":[0,1]}\n";
        assert!(matches!(parse_wreath_group(bad), Err(Error::Parse { line: 2, .. })));
    }
}
