use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::code::space_size;
use super::{Code, Vertex};

/// `Γ_k(a)`: all vertices at distance exactly `k`, in lexicographic order.
pub fn sphere(a: &Vertex, k: usize) -> Result<Vec<Vertex>> {
    let m = a.m();
    if k > m {
        return Err(Error::InvalidParameter(format!("radius {k} exceeds length {m}")));
    }
    let q = a.q();
    let mut out = Vec::new();
    let mut current = a.bytes().to_vec();
    fn rec(start: usize, left: usize, a: &Vertex, q: usize, current: &mut Vec<u8>, out: &mut Vec<Vertex>) {
        if left == 0 {
            out.push(Vertex::from_bytes(q, current.clone().into_boxed_slice()));
            return;
        }
        for i in start..=current.len() - left {
            let orig = current[i];
            for s in 0..q as u8 {
                if s != orig {
                    current[i] = s;
                    rec(i + 1, left - 1, a, q, current, out);
                }
            }
            current[i] = a.bytes()[i];
        }
    }
    rec(0, k, a, q, &mut current, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// All vertices adjacent to `v`.
pub(crate) fn adjacent(v: &Vertex) -> impl Iterator<Item = Vertex> + '_ {
    let q = v.q();
    (0..v.m()).flat_map(move |i| {
        let own = v.get(i);
        (0..q).filter(move |&s| s != own).map(move |s| v.nu_unchecked(i, s))
    })
}

/// The neighbour set `C_1`: vertices at distance one from `C`, sorted. Empty
/// exactly when `C` is the complete code.
pub fn neighbour_set(code: &Code) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = code
        .words()
        .par_iter()
        .flat_map_iter(|w| adjacent(w).filter(|v| !code.contains(v)).collect::<Vec<_>>())
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

/// Neighbours `ν(α, j, b) ∈ C_1` with `α ∈ C` and `j ∈ coords`.
pub fn neighbours_in_coords(code: &Code, coords: &[usize]) -> Vec<Vertex> {
    let q = code.q();
    let mut out: Vec<Vertex> = code
        .words()
        .par_iter()
        .flat_map_iter(|w| {
            coords
                .iter()
                .flat_map(|&j| {
                    let own = w.get(j);
                    (0..q).filter(move |&s| s != own).map(move |s| w.nu_unchecked(j, s))
                })
                .filter(|v| !code.contains(v))
                .collect::<Vec<_>>()
        })
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

/// The distance partition `C_0 = C, C_1, …, C_ρ` of the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    pub cells: Vec<Code>,
}

impl DistancePartition {
    pub fn rho(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Code::len).collect()
    }

    /// Index of the cell containing `v`.
    pub fn cell_of(&self, v: &Vertex) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(v))
    }
}

/// Dense breadth-first search over `H(m,q)` with vertices encoded as integers
/// (first coordinate most significant, so integer order is word order).
struct DenseSpace {
    m: usize,
    q: u64,
    weights: Vec<u64>,
}

impl DenseSpace {
    fn new(m: usize, q: usize, bound: u64) -> Result<Self> {
        if space_size(m, q) > bound as u128 {
            return Err(Error::bound("Hamming space size", bound));
        }
        let q = q as u64;
        let mut weights = vec![1u64; m];
        for i in (0..m.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * q;
        }
        Ok(DenseSpace { m, q, weights })
    }

    fn encode(&self, v: &Vertex) -> u64 {
        v.bytes().iter().zip(&self.weights).map(|(&s, &w)| s as u64 * w).sum()
    }

    fn decode(&self, mut x: u64) -> Vertex {
        let mut symbols = vec![0u8; self.m];
        for (i, &w) in self.weights.iter().enumerate() {
            symbols[i] = (x / w) as u8;
            x %= w;
        }
        Vertex::from_bytes(self.q as usize, symbols.into_boxed_slice())
    }

    /// Cells of the distance partition as sorted integer lists.
    fn layers(&self, start: Vec<u64>) -> Vec<Vec<u64>> {
        let total = self.weights.first().map_or(1, |w| w * self.q);
        let mut seen = vec![0u64; (total as usize).div_ceil(64)];
        let mark = |seen: &mut Vec<u64>, x: u64| -> bool {
            let (i, b) = ((x / 64) as usize, x % 64);
            let fresh = seen[i] & (1 << b) == 0;
            seen[i] |= 1 << b;
            fresh
        };
        for &x in &start {
            mark(&mut seen, x);
        }
        let mut layers = vec![start];
        loop {
            let mut next = Vec::new();
            for &x in layers.last().unwrap() {
                for &w in &self.weights {
                    let d = (x / w) % self.q;
                    let base = x - d * w;
                    for s in 0..self.q {
                        if s != d {
                            let y = base + s * w;
                            if mark(&mut seen, y) {
                                next.push(y);
                            }
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        layers
    }
}

/// Full distance partition; requires `q^m ≤ bound`.
pub fn distance_partition(code: &Code, bound: u64) -> Result<DistancePartition> {
    let space = DenseSpace::new(code.m(), code.q(), bound)?;
    let start = code.words().iter().map(|w| space.encode(w)).collect();
    let cells = space
        .layers(start)
        .into_iter()
        .map(|layer| {
            let words = layer.into_par_iter().map(|x| space.decode(x)).collect();
            Code::from_sorted_unchecked(code.m(), code.q(), words)
        })
        .collect();
    Ok(DistancePartition { cells })
}

/// Sizes of the cells of the distance partition, without materializing them.
pub fn partition_sizes(code: &Code, bound: u64) -> Result<Vec<usize>> {
    let space = DenseSpace::new(code.m(), code.q(), bound)?;
    let start = code.words().iter().map(|w| space.encode(w)).collect();
    Ok(space.layers(start).iter().map(Vec::len).collect())
}

/// Covering radius `ρ`; requires `q^m ≤ bound`.
pub fn covering_radius(code: &Code, bound: u64) -> Result<usize> {
    Ok(partition_sizes(code, bound)?.len() - 1)
}

/// The first cells `C_0, …, C_s` (fewer if the partition ends earlier), by
/// hashed frontier expansion; at most `bound` vertices are visited.
pub fn partition_levels(code: &Code, s: usize, bound: u64) -> Result<Vec<Vec<Vertex>>> {
    let mut visited = code.len() as u64;
    let mut levels: Vec<Vec<Vertex>> = vec![code.words().to_vec()];
    let mut prev: HashSet<Vertex> = HashSet::new();
    let mut cur: HashSet<Vertex> = code.words().iter().cloned().collect();
    while levels.len() <= s {
        let frontier = levels.last().unwrap();
        let mut next: Vec<Vertex> = frontier
            .par_iter()
            .flat_map_iter(|w| {
                adjacent(w)
                    .filter(|v| !cur.contains(v) && !prev.contains(v))
                    .collect::<Vec<_>>()
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        if next.is_empty() {
            break;
        }
        visited += next.len() as u64;
        if visited > bound {
            return Err(Error::bound("visited vertices", bound));
        }
        prev = std::mem::replace(&mut cur, next.iter().cloned().collect());
        levels.push(next);
    }
    Ok(levels)
}
