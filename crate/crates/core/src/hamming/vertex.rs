use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest alphabet size; symbols are stored as bytes.
pub const MAX_Q: usize = 256;

/// A vertex of `H(m,q)`: `m` symbols from `0..q`.
///
/// Ordering is lexicographic on the symbols, which is the canonical code order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    symbols: Box<[u8]>,
    q: u16,
}

impl Vertex {
    pub fn new(q: usize, symbols: &[usize]) -> Result<Self> {
        if q == 0 || q > MAX_Q {
            return Err(Error::InvalidParameter(format!("alphabet size {q} not in 1..={MAX_Q}")));
        }
        if symbols.is_empty() {
            return Err(Error::InvalidParameter("vertex length must be positive".into()));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::InvalidParameter(format!("symbol {s} not below q = {q}")));
        }
        Ok(Vertex {
            symbols: symbols.iter().map(|&s| s as u8).collect(),
            q: q as u16,
        })
    }

    pub(crate) fn from_bytes(q: usize, symbols: Box<[u8]>) -> Self {
        debug_assert!(symbols.iter().all(|&s| (s as usize) < q));
        Vertex { symbols, q: q as u16 }
    }

    /// The constant word `(a, …, a)`.
    pub fn constant(m: usize, q: usize, a: usize) -> Result<Self> {
        Vertex::new(q, &vec![a; m])
    }

    pub fn random<R: Rng + ?Sized>(m: usize, q: usize, rng: &mut R) -> Self {
        Vertex::from_bytes(q, (0..m).map(|_| rng.gen_range(0..q) as u8).collect())
    }

    pub fn m(&self) -> usize {
        self.symbols.len()
    }

    pub fn q(&self) -> usize {
        self.q as usize
    }

    pub fn get(&self, i: usize) -> usize {
        self.symbols[i] as usize
    }

    pub fn bytes(&self) -> &[u8] {
        &self.symbols
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.symbols.iter().map(|&s| s as usize).collect()
    }

    pub fn same_context(&self, other: &Vertex) -> bool {
        self.q == other.q && self.symbols.len() == other.symbols.len()
    }

    pub(crate) fn check_context(&self, m: usize, q: usize) -> Result<()> {
        if self.m() != m || self.q() != q {
            return Err(Error::ContextMismatch(format!(
                "vertex in H({},{}) used in H({m},{q})",
                self.m(),
                self.q()
            )));
        }
        Ok(())
    }

    /// Number of coordinates in which the vertices differ.
    pub fn distance(&self, other: &Vertex) -> Result<usize> {
        if !self.same_context(other) {
            return Err(Error::ContextMismatch(format!(
                "H({},{}) vs H({},{})",
                self.m(),
                self.q(),
                other.m(),
                other.q()
            )));
        }
        Ok(self.distance_unchecked(other))
    }

    #[inline]
    pub(crate) fn distance_unchecked(&self, other: &Vertex) -> usize {
        self.symbols
            .iter()
            .zip(other.symbols.iter())
            .filter(|(a, b)| a != b)
            .count()
    }

    /// `ν(α, i, s)`: the vertex with coordinate `i` replaced by `s`.
    pub fn nu(&self, i: usize, s: usize) -> Result<Vertex> {
        if i >= self.m() {
            return Err(Error::PointOutOfRange {
                point: i,
                degree: self.m(),
            });
        }
        if s >= self.q() {
            return Err(Error::InvalidParameter(format!(
                "symbol {s} not below q = {}",
                self.q()
            )));
        }
        Ok(self.nu_unchecked(i, s))
    }

    #[inline]
    pub(crate) fn nu_unchecked(&self, i: usize, s: usize) -> Vertex {
        let mut symbols = self.symbols.clone();
        symbols[i] = s as u8;
        Vertex { symbols, q: self.q }
    }

    /// Restriction to the coordinates `coords`, in the given order.
    pub fn project(&self, coords: &[usize]) -> Vertex {
        Vertex {
            symbols: coords.iter().map(|&j| self.symbols[j]).collect(),
            q: self.q,
        }
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Vertex) -> Result<Vertex> {
        if self.q != other.q {
            return Err(Error::ContextMismatch("alphabet sizes differ".into()));
        }
        let mut symbols = self.symbols.to_vec();
        symbols.extend_from_slice(&other.symbols);
        Ok(Vertex {
            symbols: symbols.into_boxed_slice(),
            q: self.q,
        })
    }

    /// Number of occurrences of each symbol.
    pub fn composition(&self) -> Vec<usize> {
        let mut counts = vec![0; self.q()];
        for &s in self.symbols.iter() {
            counts[s as usize] += 1;
        }
        counts
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex{:?}", self.to_vec())
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}
