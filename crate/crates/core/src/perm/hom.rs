use crate::error::{Error, Result};

use super::chain::{Chain, ChainElement, KernelSink};
use super::{PermGroup, Permutation};

/// A source element carried together with its image; the chain acts through
/// the source part only.
#[derive(Debug, Clone)]
struct Pair {
    src: Permutation,
    dst: Permutation,
}

impl ChainElement for Pair {
    fn act(&self, point: usize) -> usize {
        self.src.image(point)
    }
    fn mul(&self, other: &Self) -> Self {
        Pair {
            src: self.src.then(&other.src),
            dst: self.dst.then(&other.dst),
        }
    }
    fn inv(&self) -> Self {
        Pair {
            src: self.src.inverse(),
            dst: self.dst.inverse(),
        }
    }
    fn is_trivial(&self) -> bool {
        self.src.is_identity() && self.dst.is_identity()
    }
}

/// Any pair with trivial source and non-trivial image shows that the
/// generator correspondence is not well defined.
struct HomSink;

impl KernelSink<Pair> for HomSink {
    fn absorb(&mut self, _r: &Pair) -> Result<bool> {
        Err(Error::NotAHomomorphism)
    }
}

/// A homomorphism from a permutation group, given by the images of its
/// generators.
#[derive(Debug, Clone)]
pub struct GroupHom {
    source: PermGroup,
    target_images: Vec<Permutation>,
    target_degree: usize,
    chain: Chain<Pair>,
}

impl GroupHom {
    /// Checks that the correspondence extends to a homomorphism.
    pub fn new(source: PermGroup, target_degree: usize, target_images: Vec<Permutation>) -> Result<Self> {
        if target_images.len() != source.generators().len() {
            return Err(Error::InvalidParameter(format!(
                "{} generator images given for {} generators",
                target_images.len(),
                source.generators().len()
            )));
        }
        for t in &target_images {
            if t.degree() != target_degree {
                return Err(Error::DegreeMismatch {
                    expected: target_degree,
                    found: t.degree(),
                });
            }
        }
        let pairs: Vec<Pair> = source
            .generators()
            .iter()
            .zip(&target_images)
            .map(|(s, d)| Pair {
                src: s.clone(),
                dst: d.clone(),
            })
            .collect();
        let identity = Pair {
            src: source.identity(),
            dst: Permutation::identity(target_degree),
        };
        let chain = Chain::build(source.degree(), identity, &pairs, &[], &mut HomSink)?;
        Ok(GroupHom {
            source,
            target_images,
            target_degree,
            chain,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target_images(&self) -> &[Permutation] {
        &self.target_images
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }

    /// Image of `g`, read off from its factorization through the chain.
    pub fn map_element(&self, g: &Permutation) -> Result<Permutation> {
        if !self.source.contains(g)? {
            return Err(Error::NotInGroup);
        }
        let start = Pair {
            src: g.clone(),
            dst: Permutation::identity(self.target_degree),
        };
        let (residue, _) = self.chain.strip(start, 0);
        debug_assert!(residue.src.is_identity());
        Ok(residue.dst.inverse())
    }

    /// The image group, generated by the target images.
    pub fn image(&self) -> Result<PermGroup> {
        PermGroup::new(self.target_degree, self.target_images.clone())
    }

    /// The graph `{(g, g^hom)}` acting on `source_degree + target_degree` points.
    pub fn graph_group(&self) -> Result<PermGroup> {
        let gens = self
            .source
            .generators()
            .iter()
            .zip(&self.target_images)
            .map(|(s, d)| s.direct_sum(d))
            .collect();
        PermGroup::new(self.source.degree() + self.target_degree, gens)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.image()?.order() == self.source.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn sign_hom() -> GroupHom {
        let s4 = PermGroup::symmetric(4);
        let images = s4
            .generators()
            .iter()
            .map(|g| {
                if g.is_even() {
                    Permutation::identity(2)
                } else {
                    p(2, "(0 1)")
                }
            })
            .collect();
        GroupHom::new(s4, 2, images).unwrap()
    }

    #[test]
    fn identity_maps_to_identity() {
        let h = sign_hom();
        assert!(h.map_element(&Permutation::identity(4)).unwrap().is_identity());
    }

    #[test]
    fn generators_map_to_declared_images() {
        let h = sign_hom();
        for (g, t) in h.source().generators().iter().zip(h.target_images()) {
            assert_eq!(&h.map_element(g).unwrap(), t);
        }
    }

    #[test]
    fn products_are_word_independent() {
        let h = sign_hom();
        let a = p(4, "(0 1 2)");
        let b = p(4, "(1 3)");
        // (0 1 2)(1 3) also factors as a product of three transpositions
        let via_product = h.map_element(&a.then(&b)).unwrap();
        let via_images = h.map_element(&a).unwrap().then(&h.map_element(&b).unwrap());
        assert_eq!(via_product, via_images);
        assert_eq!(via_product, p(2, "(0 1)"));
    }

    #[test]
    fn rejects_ill_defined_maps() {
        let c4 = PermGroup::cyclic(4);
        // a 4-cycle cannot map to a 3-cycle
        let err = GroupHom::new(c4, 3, vec![p(3, "(0 1 2)")]).unwrap_err();
        assert_eq!(err, Error::NotAHomomorphism);
    }

    #[test]
    fn rejects_non_members() {
        let h = sign_hom();
        let c3 = PermGroup::new(4, vec![p(4, "(0 1 2)")]).unwrap();
        let g = GroupHom::new(c3, 1, vec![Permutation::identity(1)]).unwrap();
        assert_eq!(g.map_element(&p(4, "(0 1)")).unwrap_err(), Error::NotInGroup);
        assert!(!h.is_injective().unwrap());
    }
}
