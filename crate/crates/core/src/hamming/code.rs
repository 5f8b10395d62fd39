use rayon::prelude::*;

use crate::error::{Error, Result};

use super::Vertex;

/// A nonempty set of vertices of `H(m,q)`, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Code {
    m: usize,
    q: usize,
    words: Vec<Vertex>,
}

impl Code {
    pub fn new(m: usize, q: usize, mut words: Vec<Vertex>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidParameter("a code must be nonempty".into()));
        }
        for w in &words {
            w.check_context(m, q)?;
        }
        words.par_sort_unstable();
        words.dedup();
        Ok(Code { m, q, words })
    }

    pub fn from_rows(m: usize, q: usize, rows: &[Vec<usize>]) -> Result<Self> {
        let words = rows.iter().map(|r| Vertex::new(q, r)).collect::<Result<Vec<_>>>()?;
        Code::new(m, q, words)
    }

    /// Builds a code from words already known to be valid, sorted and distinct.
    pub(crate) fn from_sorted_unchecked(m: usize, q: usize, words: Vec<Vertex>) -> Self {
        debug_assert!(words.windows(2).all(|w| w[0] < w[1]));
        Code { m, q, words }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[Vertex] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Vertex> {
        self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vertex> {
        self.words.iter()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.words.binary_search(v).is_ok()
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.words.binary_search(v).ok()
    }

    /// Number of vertices of `H(m,q)`, saturating.
    pub fn space_size(&self) -> u128 {
        space_size(self.m, self.q)
    }

    /// The code is all of `H(m,q)`.
    pub fn is_complete(&self) -> bool {
        self.words.len() as u128 == self.space_size()
    }

    pub fn packed(&self) -> Packed {
        Packed::new(self.m, self.q, &self.words)
    }

    /// Least distance between distinct codewords.
    pub fn min_distance(&self) -> Result<usize> {
        if self.words.len() < 2 {
            return Err(Error::Precondition("minimum distance needs two codewords".into()));
        }
        let packed = self.packed();
        let n = self.words.len();
        let best = (0..n - 1)
            .into_par_iter()
            .map(|i| {
                let a = packed.word(i);
                let mut best = usize::MAX;
                for j in i + 1..n {
                    let d = packed.distance(a, packed.word(j));
                    if d < best {
                        best = d;
                    }
                }
                best
            })
            .min()
            .unwrap();
        Ok(best)
    }

    /// `d(v, C)`.
    pub fn distance_to(&self, v: &Vertex) -> Result<usize> {
        v.check_context(self.m, self.q)?;
        if self.contains(v) {
            return Ok(0);
        }
        let packed = self.packed();
        let pv = packed.pack(v);
        Ok((0..self.words.len())
            .map(|i| packed.distance(&pv, packed.word(i)))
            .min()
            .unwrap())
    }

    /// Number of codewords at each distance `0..=m` from `v`.
    pub fn distance_distribution(&self, v: &Vertex) -> Result<Vec<usize>> {
        v.check_context(self.m, self.q)?;
        let packed = self.packed();
        Ok(packed.distribution(&packed.pack(v)))
    }

    /// `Some(p)` when every word uses each symbol exactly `p` times (`m = pq`).
    pub fn is_frequency_array(&self) -> Option<usize> {
        if !self.m.is_multiple_of(self.q) {
            return None;
        }
        let p = self.m / self.q;
        self.words
            .iter()
            .all(|w| w.composition().iter().all(|&c| c == p))
            .then_some(p)
    }

    /// Image of every word under `f`, as a new code.
    pub fn map<F>(&self, m: usize, q: usize, f: F) -> Result<Code>
    where
        F: Fn(&Vertex) -> Vertex + Sync + Send,
    {
        Code::new(m, q, self.words.par_iter().map(f).collect())
    }
}

impl<'a> IntoIterator for &'a Code {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;
    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

pub fn space_size(m: usize, q: usize) -> u128 {
    let mut s: u128 = 1;
    for _ in 0..m {
        s = s.saturating_mul(q as u128);
    }
    s
}

/// Words packed into 64-bit chunks so that a distance costs a few XORs and
/// popcounts. Symbols take 4 bits when `q ≤ 16`, otherwise 8.
#[derive(Debug, Clone)]
pub struct Packed {
    bits: u32,
    chunks: usize,
    data: Vec<u64>,
    m: usize,
}

impl Packed {
    pub fn new(m: usize, q: usize, words: &[Vertex]) -> Self {
        let bits = if q <= 16 { 4 } else { 8 };
        let per = 64 / bits as usize;
        let chunks = m.div_ceil(per);
        let mut p = Packed {
            bits,
            chunks,
            data: Vec::with_capacity(chunks * words.len()),
            m,
        };
        for w in words {
            let packed = p.pack(w);
            p.data.extend_from_slice(&packed);
        }
        p
    }

    pub fn pack(&self, v: &Vertex) -> Vec<u64> {
        let per = 64 / self.bits as usize;
        let mut out = vec![0u64; self.chunks];
        for (i, &s) in v.bytes().iter().enumerate() {
            out[i / per] |= (s as u64) << ((i % per) as u32 * self.bits);
        }
        out
    }

    #[inline]
    pub fn word(&self, i: usize) -> &[u64] {
        &self.data[i * self.chunks..(i + 1) * self.chunks]
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.chunks).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn distance(&self, a: &[u64], b: &[u64]) -> usize {
        let mut total = 0;
        if self.bits == 4 {
            for (x, y) in a.iter().zip(b) {
                let z = x ^ y;
                let nz = (z | z >> 1 | z >> 2 | z >> 3) & 0x1111_1111_1111_1111;
                total += nz.count_ones() as usize;
            }
        } else {
            for (x, y) in a.iter().zip(b) {
                let z = x ^ y;
                let z = z | z >> 4;
                let nz = (z | z >> 2 | z >> 1 | z >> 3) & 0x0101_0101_0101_0101;
                total += nz.count_ones() as usize;
            }
        }
        total
    }

    /// Counts of words at each distance `0..=m` from the packed vertex `v`.
    pub fn distribution(&self, v: &[u64]) -> Vec<usize> {
        let mut counts = vec![0; self.m + 1];
        for i in 0..self.len() {
            counts[self.distance(v, self.word(i))] += 1;
        }
        counts
    }

    /// Least distance from `v` to any word.
    pub fn min_distance_to(&self, v: &[u64]) -> usize {
        (0..self.len())
            .map(|i| self.distance(v, self.word(i)))
            .min()
            .unwrap_or(usize::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_order_and_dedup() {
        let c = Code::from_rows(2, 3, &[vec![2, 0], vec![0, 1], vec![2, 0]]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.words()[0].to_vec(), vec![0, 1]);
        assert!(Code::new(2, 3, vec![]).is_err());
        assert!(Code::from_rows(2, 3, &[vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn packed_distance_matches_plain_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(m, q) in &[(1, 2), (7, 3), (17, 16), (23, 17), (40, 255)] {
            let words: Vec<Vertex> = (0..20).map(|_| Vertex::random(m, q, &mut rng)).collect();
            let p = Packed::new(m, q, &words);
            for i in 0..words.len() {
                for j in 0..words.len() {
                    assert_eq!(p.distance(p.word(i), p.word(j)), words[i].distance(&words[j]).unwrap());
                }
            }
        }
    }

    #[test]
    fn min_distance_and_distance_to_code() {
        let rep = Code::from_rows(5, 3, &[vec![0; 5], vec![1; 5], vec![2; 5]]).unwrap();
        assert_eq!(rep.min_distance().unwrap(), 5);
        let rep2 = Code::from_rows(3, 2, &[vec![0; 3], vec![1; 3]]).unwrap();
        assert_eq!(rep2.distance_to(&Vertex::new(2, &[0, 1, 1]).unwrap()).unwrap(), 1);
        assert_eq!(rep2.distance_to(&Vertex::new(2, &[1, 1, 1]).unwrap()).unwrap(), 0);
        let single = Code::from_rows(2, 2, &[vec![0, 1]]).unwrap();
        assert!(single.min_distance().is_err());
    }

    #[test]
    fn distance_distribution_counts() {
        let rep2 = Code::from_rows(3, 2, &[vec![0; 3], vec![1; 3]]).unwrap();
        let d = rep2
            .distance_distribution(&Vertex::new(2, &[0, 0, 1]).unwrap())
            .unwrap();
        assert_eq!(d, vec![0, 1, 1, 0]);
    }
}
