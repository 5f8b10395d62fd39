//! Text formats for groups and homomorphisms.
//!
//! A group file starts with `degree n` and lists one generator per line,
//! either as `n` images or in cycle notation. A homomorphism file is a group
//! file followed by `target_degree n` and one `map i -> <perm>` line per
//! generator. `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{GroupHom, PermGroup, Permutation};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap().trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_keyword(line: &str, key: &str, lineno: usize) -> Result<Option<usize>> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(key) {
        return Ok(None);
    }
    let value = parts
        .next()
        .ok_or_else(|| Error::parse(lineno, format!("missing value after `{key}`")))?;
    if parts.next().is_some() {
        return Err(Error::parse(lineno, format!("trailing input after `{key}`")));
    }
    let n = value
        .parse::<usize>()
        .map_err(|_| Error::parse(lineno, format!("bad {key} `{value}`")))?;
    if n == 0 {
        return Err(Error::parse(lineno, format!("{key} must be positive")));
    }
    Ok(Some(n))
}

fn perm_at(degree: usize, s: &str, lineno: usize) -> Result<Permutation> {
    Permutation::parse(degree, s).map_err(|e| Error::parse(lineno, e.to_string()))
}

pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut lines = content_lines(text);
    let (l0, first) = lines.next().ok_or_else(|| Error::parse(1, "empty group file"))?;
    let degree = parse_keyword(first, "degree", l0)?.ok_or_else(|| Error::parse(l0, "expected `degree n`"))?;
    let gens = lines.map(|(l, s)| perm_at(degree, s, l)).collect::<Result<Vec<_>>>()?;
    PermGroup::new(degree, gens)
}

pub fn write_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for gen in g.generators() {
        writeln!(out, "{}", gen.to_image_string()).unwrap();
    }
    out
}

pub fn parse_hom(text: &str) -> Result<GroupHom> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let split = lines
        .iter()
        .position(|(_, s)| s.split_whitespace().next() == Some("target_degree"))
        .ok_or_else(|| Error::parse(lines.last().map_or(1, |l| l.0), "missing `target_degree`"))?;
    let (group_lines, rest) = lines.split_at(split);
    let (lt, tline) = rest[0];
    let target_degree = parse_keyword(tline, "target_degree", lt)?.unwrap();

    let (l0, first) = *group_lines
        .first()
        .ok_or_else(|| Error::parse(lt, "missing source group"))?;
    let degree = parse_keyword(first, "degree", l0)?.ok_or_else(|| Error::parse(l0, "expected `degree n`"))?;
    // keep identity generators so that map indices line up with the file
    let gens = group_lines[1..]
        .iter()
        .map(|&(l, s)| perm_at(degree, s, l))
        .collect::<Result<Vec<_>>>()?;

    let mut images: Vec<Option<Permutation>> = vec![None; gens.len()];
    for &(l, s) in &rest[1..] {
        let body = s
            .strip_prefix("map")
            .ok_or_else(|| Error::parse(l, "expected `map i -> <perm>`"))?;
        let (idx, perm) = body.split_once("->").ok_or_else(|| Error::parse(l, "expected `->`"))?;
        let i: usize = idx
            .trim()
            .parse()
            .map_err(|_| Error::parse(l, format!("bad generator index `{}`", idx.trim())))?;
        if i >= gens.len() {
            return Err(Error::parse(l, format!("generator index {i} out of range")));
        }
        if images[i].is_some() {
            return Err(Error::parse(l, format!("generator {i} mapped twice")));
        }
        images[i] = Some(perm_at(target_degree, perm.trim(), l)?);
    }
    let last = lines.last().map_or(1, |l| l.0);
    let mut kept_gens = Vec::new();
    let mut kept_images = Vec::new();
    for (i, (g, img)) in gens.into_iter().zip(images).enumerate() {
        let img = img.ok_or_else(|| Error::parse(last, format!("generator {i} has no image")))?;
        if g.is_identity() {
            if !img.is_identity() {
                return Err(Error::NotAHomomorphism);
            }
            continue;
        }
        kept_gens.push(g);
        kept_images.push(img);
    }
    GroupHom::new(PermGroup::new(degree, kept_gens)?, target_degree, kept_images)
}

pub fn write_hom(h: &GroupHom) -> String {
    let mut out = write_group(h.source());
    writeln!(out, "target_degree {}", h.target_degree()).unwrap();
    for (i, img) in h.target_images().iter().enumerate() {
        writeln!(out, "map {i} -> {}", img.to_image_string()).unwrap();
    }
    out
}
