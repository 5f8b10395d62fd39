use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamming::Vertex;
use crate::perm::{ChainElement, Permutation};

/// An automorphism `hσ` of `H(m,q)`: bottom permutations `h_0, …, h_{m-1}` of
/// the alphabet followed by a coordinate permutation `σ`.
///
/// The vertex `v` is mapped to `w` with `w[σ(i)] = h_i(v[i])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement", into = "RawElement")]
pub struct WreathElement {
    m: usize,
    q: usize,
    bottom: Vec<Permutation>,
    top: Permutation,
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    m: usize,
    q: usize,
    bottom: Vec<Vec<usize>>,
    top: Vec<usize>,
}

impl TryFrom<RawElement> for WreathElement {
    type Error = Error;
    fn try_from(raw: RawElement) -> Result<Self> {
        let bottom = raw
            .bottom
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>>>()?;
        let top = Permutation::from_images(raw.top)?;
        let x = WreathElement::new(bottom, top)?;
        if x.m != raw.m || x.q != raw.q {
            return Err(Error::ContextMismatch(format!(
                "declared H({},{}) but components give H({},{})",
                raw.m, raw.q, x.m, x.q
            )));
        }
        Ok(x)
    }
}

impl From<WreathElement> for RawElement {
    fn from(x: WreathElement) -> Self {
        RawElement {
            m: x.m,
            q: x.q,
            bottom: x.bottom.into_iter().map(Permutation::into_images).collect(),
            top: x.top.into_images(),
        }
    }
}

impl WreathElement {
    pub fn new(bottom: Vec<Permutation>, top: Permutation) -> Result<Self> {
        let m = top.degree();
        if bottom.len() != m {
            return Err(Error::DegreeMismatch {
                expected: m,
                found: bottom.len(),
            });
        }
        let q = bottom[0].degree();
        if let Some(h) = bottom.iter().find(|h| h.degree() != q) {
            return Err(Error::DegreeMismatch {
                expected: q,
                found: h.degree(),
            });
        }
        Ok(WreathElement { m, q, bottom, top })
    }

    pub fn identity(m: usize, q: usize) -> Self {
        WreathElement {
            m,
            q,
            bottom: vec![Permutation::identity(q); m],
            top: Permutation::identity(m),
        }
    }

    /// A base-group element `(h_0, …, h_{m-1})`.
    pub fn from_bottom(bottom: Vec<Permutation>) -> Result<Self> {
        let m = bottom.len();
        if m == 0 {
            return Err(Error::InvalidParameter("empty bottom".into()));
        }
        WreathElement::new(bottom, Permutation::identity(m))
    }

    /// A top-group element `σ`.
    pub fn from_top(q: usize, top: Permutation) -> Self {
        let m = top.degree();
        WreathElement {
            m,
            q,
            bottom: vec![Permutation::identity(q); m],
            top,
        }
    }

    /// The diagonal element `x_h = (h, …, h)`.
    pub fn diagonal(m: usize, h: &Permutation) -> Self {
        WreathElement {
            m,
            q: h.degree(),
            bottom: vec![h.clone(); m],
            top: Permutation::identity(m),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn bottom(&self) -> &[Permutation] {
        &self.bottom
    }

    /// `μ(x)`, the coordinate permutation.
    pub fn top(&self) -> &Permutation {
        &self.top
    }

    pub fn mu(&self) -> Permutation {
        self.top.clone()
    }

    pub fn is_identity(&self) -> bool {
        self.top.is_identity() && self.bottom.iter().all(Permutation::is_identity)
    }

    pub fn in_base_group(&self) -> bool {
        self.top.is_identity()
    }

    fn check_same(&self, other: &WreathElement) -> Result<()> {
        if self.m != other.m || self.q != other.q {
            return Err(Error::ContextMismatch(format!(
                "H({},{}) element combined with H({},{}) element",
                self.m, self.q, other.m, other.q
            )));
        }
        Ok(())
    }

    pub fn apply(&self, v: &Vertex) -> Result<Vertex> {
        v.check_context(self.m, self.q)?;
        Ok(self.apply_unchecked(v))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, v: &Vertex) -> Vertex {
        let mut out = vec![0u8; self.m];
        for (i, &s) in v.bytes().iter().enumerate() {
            out[self.top.image(i)] = self.bottom[i].image(s as usize) as u8;
        }
        Vertex::from_bytes(self.q, out.into_boxed_slice())
    }

    /// The product `self` then `other`.
    pub fn compose(&self, other: &WreathElement) -> Result<WreathElement> {
        self.check_same(other)?;
        Ok(self.then(other))
    }

    /// Unchecked product; panics on mismatched contexts.
    pub fn then(&self, other: &WreathElement) -> WreathElement {
        assert!(self.m == other.m && self.q == other.q, "wreath context mismatch");
        let bottom = (0..self.m)
            .map(|i| self.bottom[i].then(&other.bottom[self.top.image(i)]))
            .collect();
        WreathElement {
            m: self.m,
            q: self.q,
            bottom,
            top: self.top.then(&other.top),
        }
    }

    pub fn inverse(&self) -> WreathElement {
        let mut bottom = vec![Permutation::identity(self.q); self.m];
        for i in 0..self.m {
            bottom[self.top.image(i)] = self.bottom[i].inverse();
        }
        WreathElement {
            m: self.m,
            q: self.q,
            bottom,
            top: self.top.inverse(),
        }
    }

    /// `y⁻¹ x y`.
    pub fn conjugate_by(&self, y: &WreathElement) -> WreathElement {
        y.inverse().then(self).then(y)
    }

    /// `φ_i(x) = h_i`, defined when `σ` fixes `i`.
    pub fn phi(&self, i: usize) -> Result<Permutation> {
        if i >= self.m {
            return Err(Error::PointOutOfRange {
                point: i,
                degree: self.m,
            });
        }
        if self.top.image(i) != i {
            return Err(Error::Precondition(format!("element does not fix entry {i}")));
        }
        Ok(self.bottom[i].clone())
    }

    /// The faithful action on `m·q` points, `(i, a) ↦ (σ(i), h_i(a))` with
    /// `(i, a)` numbered `i·q + a`.
    pub fn to_block_perm(&self) -> Permutation {
        let q = self.q;
        let mut images = vec![0; self.m * q];
        for i in 0..self.m {
            let t = self.top.image(i) * q;
            for a in 0..q {
                images[i * q + a] = t + self.bottom[i].image(a);
            }
        }
        Permutation::from_images_unchecked(images)
    }

    /// Inverse of [`WreathElement::to_block_perm`]; fails when `p` does not
    /// preserve the blocks `{i·q, …, i·q + q − 1}`.
    pub fn from_block_perm(m: usize, q: usize, p: &Permutation) -> Result<Self> {
        if p.degree() != m * q {
            return Err(Error::DegreeMismatch {
                expected: m * q,
                found: p.degree(),
            });
        }
        let mut top = Vec::with_capacity(m);
        let mut bottom = Vec::with_capacity(m);
        for i in 0..m {
            let t = p.image(i * q) / q;
            top.push(t);
            let mut h = Vec::with_capacity(q);
            for a in 0..q {
                let img = p.image(i * q + a);
                if img / q != t {
                    return Err(Error::StructureViolation("permutation does not preserve blocks".into()));
                }
                h.push(img % q);
            }
            bottom.push(Permutation::from_images(h)?);
        }
        WreathElement::new(bottom, Permutation::from_images(top)?)
    }

    /// `χ(x)` on the coordinates `J` (taken in ascending order), defined when
    /// `σ` stabilizes `J`.
    pub fn chi_restrict(&self, coords: &[usize]) -> Result<WreathElement> {
        let mut j = coords.to_vec();
        j.sort_unstable();
        j.dedup();
        if j.is_empty() || *j.last().unwrap() >= self.m {
            return Err(Error::InvalidParameter("bad coordinate set".into()));
        }
        let mut position = vec![usize::MAX; self.m];
        for (k, &c) in j.iter().enumerate() {
            position[c] = k;
        }
        let mut top = Vec::with_capacity(j.len());
        for &c in &j {
            let img = position[self.top.image(c)];
            if img == usize::MAX {
                return Err(Error::Precondition(
                    "element does not stabilize the coordinate set".into(),
                ));
            }
            top.push(img);
        }
        let bottom = j.iter().map(|&c| self.bottom[c].clone()).collect();
        WreathElement::new(bottom, Permutation::from_images(top)?)
    }

    /// Places `self` on block `block` of `H(m·l, q)`, acting trivially elsewhere.
    pub fn embed_block(&self, block: usize, blocks: usize) -> WreathElement {
        let m = self.m;
        let mut bottom = vec![Permutation::identity(self.q); m * blocks];
        let mut top: Vec<usize> = (0..m * blocks).collect();
        for i in 0..m {
            bottom[block * m + i] = self.bottom[i].clone();
            top[block * m + i] = block * m + self.top.image(i);
        }
        WreathElement {
            m: m * blocks,
            q: self.q,
            bottom,
            top: Permutation::from_images_unchecked(top),
        }
    }

    /// Direct product of `self` on the first coordinates and `other` on the rest.
    pub fn direct_sum(&self, other: &WreathElement) -> Result<WreathElement> {
        if self.q != other.q {
            return Err(Error::ContextMismatch("alphabet sizes differ".into()));
        }
        let mut bottom = self.bottom.clone();
        bottom.extend(other.bottom.iter().cloned());
        WreathElement::new(bottom, self.top.direct_sum(&other.top))
    }

    /// The top permutation of `H(m·l, q)` moving block `b` of length `m` to
    /// block `blocks_perm(b)`.
    pub fn block_permutation(m: usize, q: usize, blocks_perm: &Permutation) -> WreathElement {
        let l = blocks_perm.degree();
        let images = (0..m * l).map(|p| blocks_perm.image(p / m) * m + p % m).collect();
        WreathElement::from_top(q, Permutation::from_images_unchecked(images))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::parse(0, e.to_string()))
    }
}

impl ChainElement for WreathElement {
    #[inline]
    fn act(&self, point: usize) -> usize {
        self.top.image(point)
    }
    fn mul(&self, other: &Self) -> Self {
        self.then(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_trivial(&self) -> bool {
        self.is_identity()
    }
}

/// Both sides of `ν(α,i,a)^x = ν(α^x, i^σ, a^{h_i})`.
pub fn neighbour_image_check(x: &WreathElement, alpha: &Vertex, i: usize, a: usize) -> Result<(Vertex, Vertex)> {
    let lhs = x.apply(&alpha.nu(i, a)?)?;
    let rhs = x.apply(alpha)?.nu(x.top().image(i), x.bottom()[i].image(a))?;
    Ok((lhs, rhs))
}
