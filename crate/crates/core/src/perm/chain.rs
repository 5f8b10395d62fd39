//! Deterministic Schreier–Sims over labelled elements.
//!
//! The chain is built for any element type that acts on `0..degree`. The
//! action need not be faithful: elements that survive sifting through every
//! level while fixing all points are handed to a [`KernelSink`], which decides
//! whether they enlarge the kernel. Plain permutation groups use a sink that
//! only accepts the identity; homomorphism graphs use it to detect ill-defined
//! maps; wreath elements acting on coordinates collect the base-group kernel.

use crate::error::Result;

use super::Permutation;

pub trait ChainElement: Clone {
    /// Image of `point` under the action used by the chain.
    fn act(&self, point: usize) -> usize;
    /// Product: `self` first, then `other`.
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    /// True when the element is the identity (not merely trivial on points).
    fn is_trivial(&self) -> bool;
}

impl ChainElement for Permutation {
    #[inline]
    fn act(&self, point: usize) -> usize {
        self.image(point)
    }
    #[inline]
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

/// Receives elements that act trivially on the points but are not the identity.
pub trait KernelSink<E> {
    /// Returns `true` when `r` was not yet generated by earlier elements.
    fn absorb(&mut self, r: &E) -> Result<bool>;
}

/// Sink for faithful actions: a point-trivial element is always the identity.
pub struct FaithfulSink;

impl<E> KernelSink<E> for FaithfulSink {
    fn absorb(&mut self, _r: &E) -> Result<bool> {
        unreachable!("faithful action produced a non-identity element fixing every point")
    }
}

#[derive(Debug, Clone)]
struct Level<E> {
    base: usize,
    /// Indices into `Chain::gens` of generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    reps: Vec<Option<E>>,
    inv_reps: Vec<Option<E>>,
}

#[derive(Debug, Clone)]
pub struct Chain<E> {
    degree: usize,
    identity: E,
    gens: Vec<E>,
    kernel_gens: Vec<E>,
    levels: Vec<Level<E>>,
}

fn acts_trivially<E: ChainElement>(e: &E, degree: usize) -> bool {
    (0..degree).all(|p| e.act(p) == p)
}

fn first_moved<E: ChainElement>(e: &E, degree: usize) -> Option<usize> {
    (0..degree).find(|&p| e.act(p) != p)
}

impl<E: ChainElement> Chain<E> {
    /// Builds a complete chain. `base_prefix` points become the first levels
    /// (even when their orbits are trivial); further base points are chosen
    /// greedily as first moved points.
    pub fn build<S: KernelSink<E>>(
        degree: usize,
        identity: E,
        generators: &[E],
        base_prefix: &[usize],
        sink: &mut S,
    ) -> Result<Self> {
        let mut chain = Chain {
            degree,
            identity,
            gens: Vec::new(),
            kernel_gens: Vec::new(),
            levels: Vec::new(),
        };
        for &b in base_prefix {
            chain.push_level(b);
        }
        for g in generators {
            chain.insert_generator(g.clone(), sink)?;
        }
        chain.complete(sink)?;
        Ok(chain)
    }

    /// Adds a generator to a complete chain and re-completes it. Returns
    /// `false` when the element was already in the group.
    pub fn extend<S: KernelSink<E>>(&mut self, g: &E, sink: &mut S) -> Result<bool> {
        let (h, j) = self.strip(g.clone(), 0);
        if j == self.levels.len() && acts_trivially(&h, self.degree) {
            if h.is_trivial() {
                return Ok(false);
            }
            if !sink.absorb(&h)? {
                return Ok(false);
            }
            self.kernel_gens.push(h);
            self.complete(sink)?;
            return Ok(true);
        }
        self.insert_generator(g.clone(), sink)?;
        self.complete(sink)?;
        Ok(true)
    }

    fn insert_generator<S: KernelSink<E>>(&mut self, g: E, sink: &mut S) -> Result<()> {
        if g.is_trivial() {
            return Ok(());
        }
        if acts_trivially(&g, self.degree) {
            if sink.absorb(&g)? {
                self.kernel_gens.push(g);
            }
            return Ok(());
        }
        if self.levels.iter().all(|l| g.act(l.base) == l.base) {
            let p = first_moved(&g, self.degree).expect("moves a point");
            self.push_level(p);
        }
        let idx = self.gens.len();
        self.gens.push(g);
        // Register in every level whose earlier base points it fixes.
        for l in 0..self.levels.len() {
            self.levels[l].gens.push(idx);
            if self.gens[idx].act(self.levels[l].base) != self.levels[l].base {
                break;
            }
        }
        let top = self.levels.len();
        for l in 0..top {
            self.recompute_orbit(l);
        }
        Ok(())
    }

    fn push_level(&mut self, base: usize) {
        let mut reps = vec![None; self.degree];
        let mut inv_reps = vec![None; self.degree];
        reps[base] = Some(self.identity.clone());
        inv_reps[base] = Some(self.identity.clone());
        // Existing generators fixing every current base point belong here too.
        let gens = (0..self.gens.len())
            .filter(|&i| self.levels.iter().all(|l| self.gens[i].act(l.base) == l.base))
            .collect();
        self.levels.push(Level {
            base,
            gens,
            orbit: vec![base],
            reps,
            inv_reps,
        });
    }

    fn recompute_orbit(&mut self, l: usize) {
        let level = &mut self.levels[l];
        let base = level.base;
        for r in level.reps.iter_mut() {
            *r = None;
        }
        for r in level.inv_reps.iter_mut() {
            *r = None;
        }
        level.reps[base] = Some(self.identity.clone());
        level.inv_reps[base] = Some(self.identity.clone());
        level.orbit.clear();
        level.orbit.push(base);
        let mut k = 0;
        while k < level.orbit.len() {
            let x = level.orbit[k];
            k += 1;
            for &gi in &level.gens {
                let g = &self.gens[gi];
                let y = g.act(x);
                if level.reps[y].is_none() {
                    let u = level.reps[x].as_ref().unwrap().mul(g);
                    level.inv_reps[y] = Some(u.inv());
                    level.reps[y] = Some(u);
                    level.orbit.push(y);
                }
            }
        }
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the index
    /// of the first level where sifting failed (`levels.len()` on success).
    pub fn strip(&self, mut g: E, from: usize) -> (E, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let beta = g.act(level.base);
            match &level.inv_reps[beta] {
                Some(inv) => g = g.mul(inv),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn complete<S: KernelSink<E>>(&mut self, sink: &mut S) -> Result<()> {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.check_level(i as usize, sink)? {
                None => i -= 1,
                Some(restart) => i = restart as isize,
            }
        }
        Ok(())
    }

    /// Tests every Schreier generator of level `i`; on the first one that does
    /// not sift, repairs the chain and returns the level to resume from.
    fn check_level<S: KernelSink<E>>(&mut self, i: usize, sink: &mut S) -> Result<Option<usize>> {
        let orbit = self.levels[i].orbit.clone();
        let level_gens = self.levels[i].gens.clone();
        let n_kernel = self.kernel_gens.len();
        for &beta in &orbit {
            for idx in 0..level_gens.len() + n_kernel {
                let s = if idx < level_gens.len() {
                    &self.gens[level_gens[idx]]
                } else {
                    &self.kernel_gens[idx - level_gens.len()]
                };
                let level = &self.levels[i];
                let u = level.reps[beta].as_ref().unwrap();
                let target = s.act(beta);
                let sch = u.mul(s).mul(level.inv_reps[target].as_ref().unwrap());
                if sch.is_trivial() {
                    continue;
                }
                let (h, j) = self.strip(sch, i + 1);
                if j < self.levels.len() {
                    self.add_strong(h, j);
                    return Ok(Some(j));
                }
                if !acts_trivially(&h, self.degree) {
                    let p = first_moved(&h, self.degree).unwrap();
                    self.push_level(p);
                    let new = self.levels.len() - 1;
                    self.add_strong(h, new);
                    return Ok(Some(new));
                }
                if !h.is_trivial() && sink.absorb(&h)? {
                    self.kernel_gens.push(h);
                    return Ok(Some(self.levels.len() - 1));
                }
            }
        }
        Ok(None)
    }

    /// Adds `h`, which fixes the base points of levels `0..j`, as a strong
    /// generator of levels `0..=j`.
    fn add_strong(&mut self, h: E, j: usize) {
        let idx = self.gens.len();
        self.gens.push(h);
        for l in 0..=j {
            self.levels[l].gens.push(idx);
        }
        // Orbits of levels above the one being repaired cannot grow, but the
        // sifting residue may enlarge every level up to `j`.
        for l in 0..=j {
            self.recompute_orbit(l);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    /// Transversal element mapping the level's base point to `point`.
    pub fn transversal(&self, level: usize, point: usize) -> Option<&E> {
        self.levels[level].reps[point].as_ref()
    }

    pub fn kernel_generators(&self) -> &[E] {
        &self.kernel_gens
    }

    /// All strong generators (acting non-trivially).
    pub fn strong_generators(&self) -> &[E] {
        &self.gens
    }

    /// Strong generators fixing the base points of levels `0..level`.
    pub fn level_generators(&self, level: usize) -> Vec<E> {
        if level >= self.levels.len() {
            return Vec::new();
        }
        self.levels[level].gens.iter().map(|&i| self.gens[i].clone()).collect()
    }

    /// Product of the orbit lengths (the order of the action image),
    /// saturating at `u128::MAX`.
    pub fn action_order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    /// An element whose action on the points equals `action`, if any.
    pub fn lift(&self, action: &Permutation) -> Option<E> {
        let mut h = action.clone();
        let mut factors = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let beta = h.image(level.base);
            let inv = level.inv_reps[beta].as_ref()?;
            let inv_action = Permutation::from_images_unchecked((0..self.degree).map(|p| inv.act(p)).collect());
            h = h.then(&inv_action);
            factors.push(level.reps[beta].as_ref().unwrap());
        }
        if !h.is_identity() {
            return None;
        }
        // action = u_{k-1} ... u_0
        let mut acc = self.identity.clone();
        for u in factors.iter().rev() {
            acc = acc.mul(u);
        }
        Some(acc)
    }

    /// Every product `u_{k-1} .. u_0` of transversal elements, one per coset
    /// of the kernel.
    pub fn transversal_products(&self) -> Vec<E> {
        let mut acc = vec![self.identity.clone()];
        for level in self.levels.iter() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for a in &acc {
                for &beta in &level.orbit {
                    next.push(level.reps[beta].as_ref().unwrap().mul(a));
                }
            }
            acc = next;
        }
        acc
    }
}
