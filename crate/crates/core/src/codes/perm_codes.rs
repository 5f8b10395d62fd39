use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamming::{Code, Vertex};
use crate::perm::{GroupHom, PermGroup, Permutation};

/// `α(g) = (0^g, …, (q−1)^g)`.
pub fn alpha(g: &Permutation) -> Vertex {
    Vertex::from_bytes(g.degree(), g.images().iter().map(|&x| x as u8).collect())
}

/// The permutation whose image array is the word `v` (when it is one).
pub fn alpha_inverse(v: &Vertex) -> Result<Permutation> {
    Permutation::from_images(v.to_vec())
}

/// `C(T) = {α(g) : g ∈ T}`.
pub fn perm_code(t: &PermGroup, bound: u64) -> Result<Code> {
    let words: Vec<Vertex> = t.elements(bound)?.par_iter().map(alpha).collect();
    // elements come in lexicographic order, which is the word order
    Ok(Code::from_sorted_unchecked(t.degree(), t.degree(), words))
}

/// A group of degree `q` paired with a second degree-`q` action through a
/// generator correspondence `t ↦ t^τ`.
#[derive(Debug, Clone)]
pub struct PairedAction {
    hom: GroupHom,
}

impl PairedAction {
    /// Validates that the correspondence is a well-defined injective map into
    /// a second group on the same number of points.
    pub fn new(group1: PermGroup, images: Vec<Permutation>) -> Result<Self> {
        let q = group1.degree();
        let hom = GroupHom::new(group1, q, images)?;
        PairedAction::from_hom(hom)
    }

    pub fn from_hom(hom: GroupHom) -> Result<Self> {
        if hom.target_degree() != hom.source().degree() {
            return Err(Error::InvalidParameter(
                "both actions of a pairing must have the same degree".into(),
            ));
        }
        let pa = PairedAction { hom };
        let graph = pa.graph_group()?;
        if graph.order() != pa.group1().order() {
            return Err(Error::NotAHomomorphism);
        }
        if !pa.hom.is_injective()? {
            return Err(Error::InvalidParameter("the second action is not faithful".into()));
        }
        Ok(pa)
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn q(&self) -> usize {
        self.hom.source().degree()
    }

    pub fn group1(&self) -> &PermGroup {
        self.hom.source()
    }

    pub fn images(&self) -> &[Permutation] {
        self.hom.target_images()
    }

    pub fn group2(&self) -> Result<PermGroup> {
        self.hom.image()
    }

    /// `t^τ`.
    pub fn tau(&self, t: &Permutation) -> Result<Permutation> {
        self.hom.map_element(t)
    }

    /// The diagonal group `{(t, t^τ)}` on `2q` points.
    pub fn graph_group(&self) -> Result<PermGroup> {
        self.hom.graph_group()
    }

    /// Restriction of the pairing to the subgroup generated by `gens`.
    pub fn restrict(&self, gens: Vec<Permutation>) -> Result<PairedAction> {
        let images = gens.iter().map(|g| self.tau(g)).collect::<Result<Vec<_>>>()?;
        PairedAction::new(PermGroup::new(self.q(), gens)?, images)
    }

    /// True when every `t^τ` lies in the first group and `τ² = 1`.
    pub fn is_involutory_automorphism(&self) -> Result<bool> {
        for img in self.images() {
            if !self.group1().contains(img)? {
                return Ok(false);
            }
        }
        for g in self.group1().generators() {
            if &self.tau(&self.tau(g)?)? != g {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The word `(α(t), α(t^τ))` of a graph-group element on `2q` points.
pub fn twisted_word(q: usize, p: &Permutation) -> Vertex {
    let images = p.images();
    let symbols = images[..q]
        .iter()
        .copied()
        .chain(images[q..].iter().map(|&x| x - q))
        .map(|x| x as u8)
        .collect();
    Vertex::from_bytes(q, symbols)
}

/// `C(T, T^τ) = {(α(t), α(t^τ)) : t ∈ T}` in `H(2q, q)`.
pub fn twisted_code(pa: &PairedAction, bound: u64) -> Result<Code> {
    let q = pa.q();
    let graph = pa.graph_group()?;
    let words: Vec<Vertex> = graph.elements(bound)?.par_iter().map(|p| twisted_word(q, p)).collect();
    Ok(Code::from_sorted_unchecked(2 * q, q, words))
}

/// A finite group given by its multiplication table on `0..n`:
/// `table[a][b]` is the product `ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |msg: &str| Err(Error::InvalidParameter(format!("not a group table: {msg}")));
        if n == 0 || n > crate::hamming::MAX_Q {
            return bad("size must be between 1 and 256");
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("rows must have n entries below n");
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(&format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
                    }
                }
            }
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("no identity");
        };
        for (a, row) in table.iter().enumerate() {
            if !(0..n).any(|b| row[b] == e && table[b][a] == e) {
                return bad(&format!("{a} has no inverse"));
            }
        }
        Ok(GroupTable { table, identity: e })
    }

    /// `Z_n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        GroupTable::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// Table of a permutation group on its lexicographically ordered elements.
    pub fn from_perm_group(g: &PermGroup, bound: u64) -> Result<Self> {
        let els = g.elements(bound)?;
        let table = els
            .iter()
            .map(|a| {
                els.iter()
                    .map(|b| els.binary_search(&a.then(b)).expect("closed under products"))
                    .collect()
            })
            .collect();
        GroupTable::new(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// The right regular representation `g ↦ (x ↦ xg)`.
    pub fn right_regular(&self, g: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.order()).map(|x| self.table[x][g]).collect())
    }
}

/// `C_o(G) = {(g_1 g, …, g_q g) : g ∈ G}` for the ordering `o = (g_1, …, g_q)`.
pub fn cayley_code(table: &GroupTable, ordering: &[usize]) -> Result<Code> {
    let n = table.order();
    let mut seen = vec![false; n];
    if ordering.len() != n
        || ordering
            .iter()
            .any(|&g| g >= n || std::mem::replace(&mut seen[g], true))
    {
        return Err(Error::InvalidParameter(
            "ordering must list every group element once".into(),
        ));
    }
    let words = (0..n)
        .map(|g| {
            let symbols: Vec<usize> = ordering.iter().map(|&gi| table.mul(gi, g)).collect();
            Vertex::new(n, &symbols)
        })
        .collect::<Result<_>>()?;
    Code::new(n, n, words)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn permutation_codes() {
        let c3 = PermGroup::new(3, vec![p(3, "(0 1 2)")]).unwrap();
        let c = perm_code(&c3, 100).unwrap();
        let rows: Vec<Vec<usize>> = c.words().iter().map(|w| w.to_vec()).collect();
        assert_eq!(rows, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert_eq!(c.min_distance().unwrap(), 3);
        let s3 = perm_code(&PermGroup::symmetric(3), 100).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.min_distance().unwrap(), 2);
        let t = perm_code(&PermGroup::trivial(4), 100).unwrap();
        assert_eq!(t.words()[0].to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn identity_pairing_doubles_distance() {
        let a5 = PermGroup::alternating(5);
        let pa = PairedAction::new(a5.clone(), a5.generators().to_vec()).unwrap();
        let c = twisted_code(&pa, 1000).unwrap();
        assert_eq!(c.len(), 60);
        assert_eq!(c.min_distance().unwrap(), 2 * 3);
        assert!(pa.is_involutory_automorphism().unwrap());
    }

    #[test]
    fn pairings_must_be_homomorphisms() {
        let s3 = PermGroup::symmetric(3);
        let images = vec![p(3, "(0 1 2)"), p(3, "(0 1 2)")];
        assert!(PairedAction::new(s3, images).is_err());
    }

    #[test]
    fn group_tables() {
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        let z6 = GroupTable::cyclic(6).unwrap();
        assert_eq!(z6.identity(), 0);
        let s3 = GroupTable::from_perm_group(&PermGroup::symmetric(3), 100).unwrap();
        assert_eq!(s3.order(), 6);
    }

    #[test]
    fn cayley_codes() {
        let z3 = GroupTable::cyclic(3).unwrap();
        let c = cayley_code(&z3, &[0, 1, 2]).unwrap();
        let rows: Vec<Vec<usize>> = c.words().iter().map(|w| w.to_vec()).collect();
        assert_eq!(rows, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert!(cayley_code(&z3, &[0, 1, 1]).is_err());
        let s3 = GroupTable::from_perm_group(&PermGroup::symmetric(3), 100).unwrap();
        let c = cayley_code(&s3, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.min_distance().unwrap(), 6);
    }
}
