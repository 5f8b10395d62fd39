//! Pairs of inequivalent actions of the same group on `q` points.
//!
//! * `s6_pair`, `a6_pair`: the natural action and the action on the six
//!   one-factorizations of `K_6`, relabelled so that the pairing is an
//!   involution.
//! * `psl2_11_pair`: the two actions on the cosets of the two classes of
//!   `A_5`, related by conjugation with `x ↦ −x` from `PGL(2,11)`.
//! * `a7_15_pair`: the two actions on the cosets of the two classes of
//!   `PSL(3,2)`, related by conjugation with the transposition `(0 1)`.
//! * `m12_pair`: the natural action and the action on the cosets of a
//!   transitive `M_11`.
//!
//! Every fixture is validated before it is returned.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

use super::perm_codes::PairedAction;

type Matching = Vec<(usize, usize)>;

pub const FIXTURE_NAMES: [&str; 5] = ["a6_pair", "s6_pair", "psl2_11_pair", "a7_15_pair", "m12_pair"];

/// A validated pairing, optionally with a pairing of a normalizing group.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub pair: PairedAction,
    /// Pairing on `N_{S_q}(T)` extending `pair`, used to build the twisted
    /// neighbour-transitive group.
    pub normalizer: Option<PairedAction>,
    pub expected_order: u128,
    pub check: FixtureCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub order: u128,
    pub transitive: [bool; 2],
    pub two_transitive: [bool; 2],
    /// Points of the second action fixed by the stabilizer of point 0 in the
    /// first. Two transitive actions are equivalent exactly when this is
    /// nonempty.
    pub stabilizer_fixed: Vec<usize>,
}

impl FixtureCheck {
    pub fn inequivalent(&self) -> bool {
        self.stabilizer_fixed.is_empty()
    }

    pub fn passed(&self, expected_order: u128) -> bool {
        self.order == expected_order
            && self.transitive == [true, true]
            && self.two_transitive == [true, true]
            && self.inequivalent()
    }
}

/// Order, transitivity, 2-transitivity and inequivalence of the two actions.
pub fn check_pair(pa: &PairedAction) -> Result<FixtureCheck> {
    let g1 = pa.group1();
    let g2 = pa.group2()?;
    let q = pa.q();
    let stab = pa.graph_group()?.point_stabilizer(0)?;
    let stabilizer_fixed = (0..q)
        .filter(|&j| stab.generators().iter().all(|p| p.image(q + j) == q + j))
        .collect();
    Ok(FixtureCheck {
        order: g1.order(),
        transitive: [g1.is_transitive(), g2.is_transitive()],
        two_transitive: [g1.is_2transitive(), g2.is_2transitive()],
        stabilizer_fixed,
    })
}

/// Runs [`check_pair`] and turns any failure into an error.
pub fn validate_pair(pa: &PairedAction, expected_order: u128) -> Result<FixtureCheck> {
    let check = check_pair(pa)?;
    if check.order != expected_order {
        return Err(Error::FixtureValidation(format!(
            "order {} differs from the expected {expected_order}",
            check.order
        )));
    }
    if check.transitive != [true, true] || check.two_transitive != [true, true] {
        return Err(Error::FixtureValidation("an action is not 2-transitive".into()));
    }
    if !check.inequivalent() {
        return Err(Error::FixtureValidation(format!(
            "the actions are equivalent: a point stabilizer fixes {:?}",
            check.stabilizer_fixed
        )));
    }
    Ok(check)
}

fn cycles(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).expect("valid fixture permutation")
}

pub fn fixture(name: &str, bound: u64) -> Result<Fixture> {
    let (pair, normalizer, expected_order, name) = match name {
        "s6_pair" => {
            let s6 = s6_pairing()?;
            (s6.clone(), Some(s6), 720, "s6_pair")
        }
        "a6_pair" => {
            let s6 = s6_pairing()?;
            let a6 = s6.restrict(vec![cycles(6, "(0 1 2)"), cycles(6, "(1 2 3 4 5)")])?;
            (a6, Some(s6), 360, "a6_pair")
        }
        "psl2_11_pair" => {
            let pa = psl2_11_pairing()?;
            (pa.clone(), Some(pa), 660, "psl2_11_pair")
        }
        "a7_15_pair" => {
            let pa = a7_15_pairing(bound)?;
            (pa.clone(), Some(pa), 2520, "a7_15_pair")
        }
        "m12_pair" => (m12_pairing()?, None, 95040, "m12_pair"),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown fixture `{other}`; available: {}",
                FIXTURE_NAMES.join(", ")
            )))
        }
    };
    let check = validate_pair(&pair, expected_order)?;
    Ok(Fixture {
        name,
        pair,
        normalizer,
        expected_order,
        check,
    })
}

/// The action of `S_6` on the one-factorizations of `K_6`.
struct OneFactorizations {
    /// Each factorization as a sorted list of 5 matchings, each a sorted
    /// list of 3 edges `(a, b)` with `a < b`.
    factorizations: Vec<Vec<Matching>>,
}

impl OneFactorizations {
    fn new() -> Self {
        let mut matchings = Vec::new();
        fn matchings_rec(left: Vec<usize>, acc: Matching, out: &mut Vec<Matching>) {
            if left.is_empty() {
                let mut m = acc.clone();
                m.sort_unstable();
                out.push(m);
                return;
            }
            let a = left[0];
            for k in 1..left.len() {
                let b = left[k];
                let rest: Vec<usize> = left.iter().copied().filter(|&x| x != a && x != b).collect();
                let mut acc2 = acc.clone();
                acc2.push((a, b));
                matchings_rec(rest, acc2, out);
            }
        }
        matchings_rec((0..6).collect(), Vec::new(), &mut matchings);
        let disjoint = |x: &Matching, y: &Matching| x.iter().all(|e| !y.contains(e));
        let mut factorizations = Vec::new();
        fn fact_rec(
            start: usize,
            chosen: &mut Vec<usize>,
            matchings: &[Matching],
            disjoint: &dyn Fn(&Matching, &Matching) -> bool,
            out: &mut Vec<Vec<Matching>>,
        ) {
            if chosen.len() == 5 {
                out.push(chosen.iter().map(|&i| matchings[i].clone()).collect());
                return;
            }
            for i in start..matchings.len() {
                if chosen.iter().all(|&j| disjoint(&matchings[i], &matchings[j])) {
                    chosen.push(i);
                    fact_rec(i + 1, chosen, matchings, disjoint, out);
                    chosen.pop();
                }
            }
        }
        fact_rec(0, &mut Vec::new(), &matchings, &disjoint, &mut factorizations);
        OneFactorizations { factorizations }
    }

    fn act(&self, g: &Permutation) -> Permutation {
        let images = self
            .factorizations
            .iter()
            .map(|f| {
                let mut image: Vec<Matching> = f
                    .iter()
                    .map(|m| {
                        let mut e: Matching = m
                            .iter()
                            .map(|&(a, b)| {
                                let (x, y) = (g.image(a), g.image(b));
                                (x.min(y), x.max(y))
                            })
                            .collect();
                        e.sort_unstable();
                        e
                    })
                    .collect();
                image.sort_unstable();
                self.factorizations
                    .iter()
                    .position(|h| *h == image)
                    .expect("factorizations are permuted")
            })
            .collect();
        Permutation::from_images(images).expect("a permutation of factorizations")
    }
}

fn s6_pairing() -> Result<PairedAction> {
    let of = OneFactorizations::new();
    if of.factorizations.len() != 6 {
        return Err(Error::FixtureValidation("K_6 should have 6 one-factorizations".into()));
    }
    let s6 = PermGroup::symmetric(6);
    let gens = vec![cycles(6, "(0 1)"), cycles(6, "(0 1 2 3 4 5)")];
    // relabel the factorizations so that the pairing squares to the identity
    for lambda in s6.elements(u64::MAX)? {
        let linv = lambda.inverse();
        let f = |g: &Permutation| linv.then(&of.act(g)).then(&lambda);
        if gens.iter().all(|g| &f(&f(g)) == g) {
            let images = gens.iter().map(f).collect();
            return PairedAction::new(PermGroup::new(6, gens)?, images);
        }
    }
    Err(Error::FixtureValidation("no involutory relabelling found".into()))
}

/// `PSL(2,11)` on the projective line, points `0..=10` and `∞ = 11`.
fn psl2_11_natural() -> (PermGroup, Permutation) {
    let p = 11;
    let inf = 11;
    let map = |f: &dyn Fn(usize) -> usize| Permutation::from_images((0..12).map(f).collect()).unwrap();
    let inv = |x: usize| (1..p).find(|y| x * y % p == 1).unwrap();
    let translate = map(&|x| if x == inf { inf } else { (x + 1) % p });
    let scale = map(&|x| if x == inf { inf } else { 4 * x % p });
    let invert = map(&|x| match x {
        0 => inf,
        x if x == inf => 0,
        x => (p - inv(x)) % p,
    });
    let negate = map(&|x| if x == inf { inf } else { (p - x) % p });
    (PermGroup::new(12, vec![translate, scale, invert]).unwrap(), negate)
}

fn psl2_11_pairing() -> Result<PairedAction> {
    let (g, delta) = psl2_11_natural();
    if g.order() != 660 {
        return Err(Error::FixtureValidation(
            "PSL(2,11) generators give the wrong order".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = loop {
        let a = g.random_element(&mut rng);
        let b = g.random_element(&mut rng);
        if a.order() != 2 || b.order() != 3 {
            continue;
        }
        let h = PermGroup::new(12, vec![a, b])?;
        if h.order() == 60 {
            break h;
        }
    };
    paired_by_conjugation(&g, &h, &delta)
}

/// The coset action of `g` on `h`, paired with itself twisted by
/// conjugation with `delta`.
fn paired_by_conjugation(g: &PermGroup, h: &PermGroup, delta: &Permutation) -> Result<PairedAction> {
    let action = g.coset_action(h, 100_000)?;
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for x in g.generators() {
        gens.push(action.image_of(x)?);
        images.push(action.image_of(&x.conjugate_by(delta))?);
    }
    PairedAction::new(PermGroup::new(action.degree(), gens)?, images)
}

/// Collineations of the Fano plane with lines `{i, i+1, i+3} mod 7`.
fn fano_collineations(bound: u64) -> Result<PermGroup> {
    let lines: Vec<[usize; 3]> = (0..7)
        .map(|i| {
            let mut l = [i, (i + 1) % 7, (i + 3) % 7];
            l.sort_unstable();
            l
        })
        .collect();
    let preserves = |g: &Permutation| {
        lines.iter().all(|l| {
            let mut img = l.map(|x| g.image(x));
            img.sort_unstable();
            lines.contains(&img)
        })
    };
    let s7 = PermGroup::symmetric(7);
    PermGroup::generated_by(7, s7.elements(bound)?.into_iter().filter(|g| preserves(g)))
}

fn a7_15_pairing(bound: u64) -> Result<PairedAction> {
    let h = fano_collineations(bound)?;
    if h.order() != 168 {
        return Err(Error::FixtureValidation(
            "Fano collineation group should have order 168".into(),
        ));
    }
    let a7 = PermGroup::alternating(7);
    paired_by_conjugation(&a7, &h, &cycles(7, "(0 1)"))
}

fn m12_natural() -> PermGroup {
    PermGroup::new(
        12,
        vec![
            cycles(12, "(0 1 2 3 4 5 6 7 8 9 10)"),
            cycles(12, "(2 6 10 7)(3 9 4 5)"),
            cycles(12, "(0 11)(1 10)(2 5)(3 7)(4 8)(6 9)"),
        ],
    )
    .unwrap()
}

fn m12_pairing() -> Result<PairedAction> {
    let g = m12_natural();
    if g.order() != 95040 {
        return Err(Error::FixtureValidation("M12 generators give the wrong order".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let h = loop {
        let h = PermGroup::new(12, vec![g.random_element(&mut rng), g.random_element(&mut rng)])?;
        if h.order() == 7920 && h.is_transitive() {
            break h;
        }
    };
    let action = g.coset_action(&h, 100_000)?;
    let images = g
        .generators()
        .iter()
        .map(|x| action.image_of(x))
        .collect::<Result<Vec<_>>>()?;
    PairedAction::new(g, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k6_has_six_one_factorizations() {
        let of = OneFactorizations::new();
        assert_eq!(of.factorizations.len(), 6);
        // a transposition of points acts as a product of three transpositions
        let t = of.act(&cycles(6, "(0 1)"));
        assert_eq!(t.fixed_count(), 0);
        assert_eq!(t.order(), 2);
    }

    #[test]
    fn fano_plane_group() {
        let h = fano_collineations(10_000).unwrap();
        assert_eq!(h.order(), 168);
        assert_eq!(h.minimal_degree(1000).unwrap(), 4);
    }

    #[test]
    fn small_fixtures_validate() {
        for name in ["a6_pair", "s6_pair", "psl2_11_pair"] {
            let f = fixture(name, 1_000_000).unwrap();
            assert!(f.check.passed(f.expected_order), "{name}");
        }
        assert!(fixture("hs_pair", 10).is_err());
    }

    #[test]
    fn s6_pairing_is_an_outer_involution() {
        let f = fixture("s6_pair", 1_000_000).unwrap();
        assert!(f.pair.is_involutory_automorphism().unwrap());
        let a6 = fixture("a6_pair", 1_000_000).unwrap();
        assert!(a6.pair.is_involutory_automorphism().unwrap());
    }
}
