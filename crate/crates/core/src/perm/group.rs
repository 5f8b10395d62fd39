use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};

use super::chain::{Chain, FaithfulSink};
use super::Permutation;

/// A permutation group given by generators, with a lazily built stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<Chain<Permutation>>,
}

impl PartialEq for PermGroup {
    /// Equality as subgroups of `Sym(degree)`.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.contains_unchecked(g))
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameter("group degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub(crate) fn from_chain(degree: usize, chain: Chain<Permutation>) -> Self {
        let generators = chain.strong_generators().to_vec();
        let lock = OnceLock::new();
        let _ = lock.set(chain);
        PermGroup {
            degree,
            generators,
            chain: lock,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("positive degree")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        PermGroup::new(n, gens).expect("valid generators")
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        PermGroup::new(n, gens).expect("valid generators")
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        PermGroup::new(n, gens).expect("valid generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn chain(&self) -> &Chain<Permutation> {
        self.chain.get_or_init(|| self.build_chain(&[]))
    }

    /// Chain whose first base points are `prefix`, in order.
    pub fn build_chain(&self, prefix: &[usize]) -> Chain<Permutation> {
        Chain::build(
            self.degree,
            self.identity(),
            &self.generators,
            prefix,
            &mut FaithfulSink,
        )
        .expect("faithful chain construction cannot fail")
    }

    pub fn order(&self) -> u128 {
        self.chain().action_order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.contains_unchecked(p))
    }

    pub(crate) fn contains_unchecked(&self, p: &Permutation) -> bool {
        let chain = self.chain();
        let (h, j) = chain.strip(p.clone(), 0);
        j == chain.depth() && h.is_identity()
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains_unchecked(g))
    }

    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        parent.contains_group(self)
            && self.generators.iter().all(|n| {
                parent
                    .generators
                    .iter()
                    .all(|g| self.contains_unchecked(&n.conjugate_by(g)))
            })
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            k += 1;
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// All orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let o = self.orbit(p).unwrap();
            for &x in &o {
                seen[x] = true;
            }
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// 2-transitivity as a single orbit on ordered pairs of distinct points.
    pub fn is_2transitive(&self) -> bool {
        let n = self.degree;
        if n < 2 {
            return false;
        }
        let mut seen = vec![false; n * n];
        let start = 1; // the pair (0, 1)
        seen[start] = true;
        let mut queue = vec![start];
        let mut k = 0;
        while k < queue.len() {
            let code = queue[k];
            k += 1;
            let (a, b) = (code / n, code % n);
            for g in &self.generators {
                let img = g.image(a) * n + g.image(b);
                if !seen[img] {
                    seen[img] = true;
                    queue.push(img);
                }
            }
        }
        queue.len() == n * (n - 1)
    }

    /// Every point stabilizer is trivial, i.e. every orbit has length `|G|`.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits().iter().all(|o| o.len() as u128 == order)
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.is_semiregular()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    fn check_enumerable(&self, bound: u64) -> Result<()> {
        if self.order() > bound as u128 {
            return Err(Error::bound("group order", bound));
        }
        Ok(())
    }

    /// All elements in lexicographic order of their image arrays.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        self.check_enumerable(bound)?;
        let mut all = self.chain().transversal_products();
        all.sort_unstable();
        Ok(all)
    }

    /// Alias of [`PermGroup::elements`] returning an iterator.
    pub fn enumerate_elements(&self, bound: u64) -> Result<impl Iterator<Item = Permutation>> {
        Ok(self.elements(bound)?.into_iter())
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let chain = self.chain();
        let mut g = self.identity();
        for l in 0..chain.depth() {
            let orbit = chain.orbit(l);
            let beta = orbit[rng.gen_range(0..orbit.len())];
            g = chain.transversal(l, beta).unwrap().then(&g);
        }
        g
    }

    /// Subgroup generated by `gens` (which must have this group's degree).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(self.degree, gens)
    }

    /// Smallest subgroup containing `elems`, keeping only elements that
    /// enlarge the group generated so far.
    pub fn generated_by<I: IntoIterator<Item = Permutation>>(degree: usize, elems: I) -> Result<PermGroup> {
        let mut chain = Chain::build(degree, Permutation::identity(degree), &[], &[], &mut FaithfulSink)?;
        let mut kept = Vec::new();
        for e in elems {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: e.degree(),
                });
            }
            if chain.extend(&e, &mut FaithfulSink)? {
                kept.push(e);
            }
        }
        let mut g = PermGroup::from_chain(degree, chain);
        g.generators = kept;
        Ok(g)
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let chain = self.build_chain(&[point]);
        PermGroup::new(self.degree, chain.level_generators(1))
    }

    /// Setwise stabilizer by filtering the enumerated elements.
    pub fn setwise_stabilizer(&self, set: &[usize], bound: u64) -> Result<PermGroup> {
        let mut mask = vec![false; self.degree];
        for &p in set {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
            mask[p] = true;
        }
        let count = mask.iter().filter(|&&b| b).count();
        if count == 0 || count == self.degree || self.generators.iter().all(|g| stabilizes(g, &mask)) {
            return Ok(self.clone());
        }
        let elems = self.elements(bound)?;
        PermGroup::generated_by(self.degree, elems.into_iter().filter(|g| stabilizes(g, &mask)))
    }

    /// Least number of points moved by a non-identity element.
    pub fn minimal_degree(&self, bound: u64) -> Result<usize> {
        if self.is_trivial() {
            return Err(Error::Precondition("minimal degree of the trivial group".into()));
        }
        self.check_enumerable(bound)?;
        let m = self
            .chain()
            .transversal_products()
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| g.moved_count())
            .min()
            .expect("non-trivial group");
        Ok(m)
    }

    /// Smallest normal subgroup of `self` containing `elems`.
    pub fn normal_closure(&self, elems: &[Permutation]) -> Result<PermGroup> {
        for e in elems {
            if !self.contains(e)? {
                return Err(Error::NotInGroup);
            }
        }
        let mut chain = Chain::build(self.degree, self.identity(), &[], &[], &mut FaithfulSink)?;
        let mut gens: Vec<Permutation> = Vec::new();
        for e in elems {
            if chain.extend(e, &mut FaithfulSink)? {
                gens.push(e.clone());
            }
        }
        let mut k = 0;
        while k < gens.len() {
            let n = gens[k].clone();
            k += 1;
            for g in &self.generators {
                let c = n.conjugate_by(g);
                if chain.extend(&c, &mut FaithfulSink)? {
                    gens.push(c);
                }
            }
        }
        let mut out = PermGroup::from_chain(self.degree, chain);
        out.generators = gens;
        Ok(out)
    }

    /// Conjugacy class representatives (lexicographically least element of
    /// each class) with class sizes, ordered by representative.
    pub fn conjugacy_classes(&self, bound: u64) -> Result<Vec<(Permutation, usize)>> {
        let elems = self.elements(bound)?;
        let mut seen: HashSet<Permutation> = HashSet::with_capacity(elems.len());
        let mut out = Vec::new();
        for e in elems {
            if seen.contains(&e) {
                continue;
            }
            seen.insert(e.clone());
            let mut class = vec![e.clone()];
            let mut k = 0;
            while k < class.len() {
                let x = class[k].clone();
                k += 1;
                for g in &self.generators {
                    let c = x.conjugate_by(g);
                    if seen.insert(c.clone()) {
                        class.push(c);
                    }
                }
            }
            out.push((e, class.len()));
        }
        Ok(out)
    }

    /// Minimal normal subgroups, as the inclusion-minimal normal closures of
    /// conjugacy class representatives. Ordered by (order, generators).
    pub fn minimal_normal_subgroups(&self, bound: u64) -> Result<Vec<PermGroup>> {
        if self.is_trivial() {
            return Ok(Vec::new());
        }
        let classes = self.conjugacy_classes(bound)?;
        let mut closures: Vec<PermGroup> = Vec::new();
        for (rep, _) in classes.into_iter().filter(|(r, _)| !r.is_identity()) {
            closures.push(self.normal_closure(&[rep])?);
        }
        closures.sort_by_key(|n| n.order());
        let mut minimal: Vec<PermGroup> = Vec::new();
        for n in closures {
            if minimal.iter().any(|m| n.contains_group(m)) {
                continue;
            }
            minimal.push(n);
        }
        Ok(minimal)
    }

    pub fn socle(&self, bound: u64) -> Result<PermGroup> {
        let mins = self.minimal_normal_subgroups(bound)?;
        let gens = mins.iter().flat_map(|n| n.generators().iter().cloned());
        PermGroup::generated_by(self.degree, gens)
    }

    /// Non-trivial with no proper non-trivial normal subgroup.
    pub fn is_simple(&self, bound: u64) -> Result<bool> {
        if self.is_trivial() {
            return Ok(false);
        }
        let mins = self.minimal_normal_subgroups(bound)?;
        Ok(mins.len() == 1 && mins[0].order() == self.order())
    }

    /// Normalizer of `self` in `Sym(degree)`, by brute force (degree at most 8).
    pub fn normalizer_in_symmetric(&self) -> Result<PermGroup> {
        if self.degree > 8 {
            return Err(Error::Precondition(
                "brute-force normalizer is limited to degree 8".into(),
            ));
        }
        let sym = PermGroup::symmetric(self.degree);
        let all = sym.elements(u64::MAX)?;
        let normalizing = all.into_iter().filter(|s| {
            self.generators
                .iter()
                .all(|g| self.contains_unchecked(&g.conjugate_by(s)))
        });
        PermGroup::generated_by(self.degree, normalizing)
    }

    /// Action on the right cosets of `sub`; see [`CosetAction`].
    pub fn coset_action(&self, sub: &PermGroup, index_bound: u64) -> Result<CosetAction> {
        CosetAction::new(self, sub, index_bound)
    }
}

fn stabilizes(g: &Permutation, mask: &[bool]) -> bool {
    mask.iter().enumerate().all(|(i, &inside)| !inside || mask[g.image(i)])
}

/// The transitive action of a group on the right cosets `Hx` of a subgroup.
/// Coset 0 is `H` itself.
#[derive(Debug, Clone)]
pub struct CosetAction {
    group: PermGroup,
    sub_chain: Chain<Permutation>,
    reps: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl CosetAction {
    fn new(parent: &PermGroup, sub: &PermGroup, index_bound: u64) -> Result<Self> {
        if sub.degree() != parent.degree() {
            return Err(Error::DegreeMismatch {
                expected: parent.degree(),
                found: sub.degree(),
            });
        }
        if !parent.contains_group(sub) {
            return Err(Error::Precondition("subgroup is not contained in the group".into()));
        }
        let idx = parent.order() / sub.order();
        if idx > index_bound as u128 {
            return Err(Error::bound("coset index", index_bound));
        }
        let n = parent.degree();
        let full_base: Vec<usize> = (0..n).collect();
        let sub_chain = sub.build_chain(&full_base);
        let mut action = CosetAction {
            group: PermGroup::trivial(1),
            sub_chain,
            reps: Vec::new(),
            index: HashMap::new(),
        };
        let start = action.canonical(&parent.identity());
        action.index.insert(start.clone(), 0);
        action.reps.push(start);
        let mut images: Vec<Vec<usize>> = vec![Vec::new(); parent.generators().len()];
        let mut k = 0;
        while k < action.reps.len() {
            let x = action.reps[k].clone();
            k += 1;
            for (gi, g) in parent.generators().iter().enumerate() {
                let c = action.canonical(&x.then(g));
                let next = action.reps.len();
                let j = *action.index.entry(c.clone()).or_insert(next);
                if j == next {
                    action.reps.push(c);
                }
                images[gi].push(j);
            }
        }
        debug_assert_eq!(action.reps.len() as u128, idx);
        let deg = action.reps.len();
        let gens = images
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>>>()?;
        action.group = PermGroup::new(deg, gens)?;
        Ok(action)
    }

    /// Lexicographically least element of the coset `Hx`.
    fn canonical(&self, x: &Permutation) -> Permutation {
        let mut g = x.clone();
        for l in 0..self.sub_chain.depth() {
            let orbit = self.sub_chain.orbit(l);
            let beta = *orbit.iter().min_by_key(|&&b| g.image(b)).unwrap();
            g = self.sub_chain.transversal(l, beta).unwrap().then(&g);
        }
        g
    }

    /// The image of the parent group, on `[G:H]` points.
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// The permutation of the cosets induced by `g`.
    pub fn image_of(&self, g: &Permutation) -> Result<Permutation> {
        let images = self
            .reps
            .iter()
            .map(|x| {
                let c = self.canonical(&x.then(g));
                self.index.get(&c).copied().ok_or(Error::NotInGroup)
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}
