use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamming::{neighbours_in_coords, Code, Vertex};

fn check_params(m: usize, q: usize) -> Result<()> {
    if m == 0 || q == 0 || q > crate::hamming::MAX_Q {
        return Err(Error::InvalidParameter(format!("bad parameters m = {m}, q = {q}")));
    }
    Ok(())
}

/// `Rep(m,q)`: the `q` constant words.
pub fn rep_code(m: usize, q: usize) -> Result<Code> {
    check_params(m, q)?;
    let words = (0..q).map(|a| Vertex::constant(m, q, a)).collect::<Result<_>>()?;
    Code::new(m, q, words)
}

fn multinomial(p: usize, q: usize) -> u128 {
    // (pq)! / (p!)^q, built up one letter class at a time
    let mut total: u128 = 1;
    let mut placed = 0u128;
    for _ in 0..q {
        for k in 1..=p as u128 {
            placed += 1;
            total = total.saturating_mul(placed) / k;
        }
    }
    total
}

/// `All(pq,q)`: words of length `pq` in which every symbol occurs `p` times.
pub fn all_code(p: usize, q: usize, bound: u64) -> Result<Code> {
    check_params(p * q, q)?;
    if multinomial(p, q) > bound as u128 {
        return Err(Error::bound("code size", bound));
    }
    let m = p * q;
    let mut counts = vec![p; q];
    let mut word = Vec::with_capacity(m);
    let mut out = Vec::new();
    fn rec(counts: &mut [usize], word: &mut Vec<u8>, m: usize, q: usize, out: &mut Vec<Vertex>) {
        if word.len() == m {
            out.push(Vertex::from_bytes(q, word.clone().into_boxed_slice()));
            return;
        }
        for s in 0..counts.len() {
            if counts[s] > 0 {
                counts[s] -= 1;
                word.push(s as u8);
                rec(counts, word, m, q, out);
                word.pop();
                counts[s] += 1;
            }
        }
    }
    rec(&mut counts, &mut word, m, q, &mut out);
    Ok(Code::from_sorted_unchecked(m, q, out))
}

/// Words with pairwise distinct entries; requires `m < q`.
pub fn injective_code(m: usize, q: usize, bound: u64) -> Result<Code> {
    check_params(m, q)?;
    if m >= q {
        return Err(Error::InvalidParameter(format!(
            "injective code needs m < q (m = {m}, q = {q})"
        )));
    }
    let size = ((q - m + 1)..=q).fold(1u128, |acc, k| acc.saturating_mul(k as u128));
    if size > bound as u128 {
        return Err(Error::bound("code size", bound));
    }
    let mut out = Vec::new();
    let mut used = vec![false; q];
    let mut word = Vec::with_capacity(m);
    fn rec(used: &mut [bool], word: &mut Vec<u8>, m: usize, out: &mut Vec<Vertex>) {
        if word.len() == m {
            out.push(Vertex::from_bytes(used.len(), word.clone().into_boxed_slice()));
            return;
        }
        for s in 0..used.len() {
            if !used[s] {
                used[s] = true;
                word.push(s as u8);
                rec(used, word, m, out);
                word.pop();
                used[s] = false;
            }
        }
    }
    rec(&mut used, &mut word, m, &mut out);
    Ok(Code::from_sorted_unchecked(m, q, out))
}

/// Binary words of weight `(m−1)/2` or `(m+1)/2`, for odd `m ≥ 3`.
pub fn weight_code(m: usize) -> Result<Code> {
    if m < 3 || m.is_multiple_of(2) || m > 24 {
        return Err(Error::InvalidParameter(format!(
            "weight code needs odd 3 ≤ m ≤ 24, got {m}"
        )));
    }
    let lo = (m - 1) / 2;
    let words = (0u32..1 << m)
        .filter(|x| {
            let w = x.count_ones() as usize;
            w == lo || w == lo + 1
        })
        .map(|x| {
            let bits: Vec<usize> = (0..m).map(|i| ((x >> (m - 1 - i)) & 1) as usize).collect();
            Vertex::new(2, &bits)
        })
        .collect::<Result<_>>()?;
    Code::new(m, 2, words)
}

/// `Prod_l(C)`: all concatenations of `l` codewords.
pub fn prod_code(code: &Code, l: usize, bound: u64) -> Result<Code> {
    if l == 0 {
        return Err(Error::InvalidParameter("product needs l ≥ 1".into()));
    }
    let size = (0..l).fold(1u128, |acc, _| acc.saturating_mul(code.len() as u128));
    if size > bound as u128 {
        return Err(Error::bound("code size", bound));
    }
    let mut words: Vec<Vertex> = code.words().to_vec();
    for _ in 1..l {
        words = words
            .par_iter()
            .flat_map_iter(|a| code.words().iter().map(move |b| a.concat(b).unwrap()))
            .collect();
    }
    // concatenating sorted lists in nested order keeps the result sorted
    Ok(Code::from_sorted_unchecked(code.m() * l, code.q(), words))
}

/// `Rep_l(C)`: each codeword repeated `l` times.
pub fn rep_l_code(code: &Code, l: usize) -> Result<Code> {
    if l == 0 {
        return Err(Error::InvalidParameter("repetition needs l ≥ 1".into()));
    }
    let words = code
        .words()
        .iter()
        .map(|w| {
            let mut s = Vec::with_capacity(w.m() * l);
            for _ in 0..l {
                s.extend_from_slice(w.bytes());
            }
            Vertex::from_bytes(code.q(), s.into_boxed_slice())
        })
        .collect();
    Ok(Code::from_sorted_unchecked(code.m() * l, code.q(), words))
}

/// Validates a coordinate set and returns it in ascending order.
pub fn normalize_coords(m: usize, coords: &[usize]) -> Result<Vec<usize>> {
    let mut j = coords.to_vec();
    j.sort_unstable();
    let before = j.len();
    j.dedup();
    if j.is_empty() {
        return Err(Error::InvalidParameter("coordinate set is empty".into()));
    }
    if j.len() != before {
        return Err(Error::InvalidParameter("coordinate set has repeated entries".into()));
    }
    if let Some(&c) = j.iter().find(|&&c| c >= m) {
        return Err(Error::PointOutOfRange { point: c, degree: m });
    }
    Ok(j)
}

/// `π_J(C)`, with `J` taken in ascending order.
pub fn project(code: &Code, coords: &[usize]) -> Result<Code> {
    let j = normalize_coords(code.m(), coords)?;
    code.map(j.len(), code.q(), |w| w.project(&j))
}

/// `C_1(J)`: neighbours `ν(α, j, b) ∈ C_1` with `α ∈ C` and `j ∈ J`.
pub fn c1_of_j(code: &Code, coords: &[usize]) -> Result<Vec<Vertex>> {
    let j = normalize_coords(code.m(), coords)?;
    Ok(neighbours_in_coords(code, &j))
}
