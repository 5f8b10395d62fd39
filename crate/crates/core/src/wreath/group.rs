use std::collections::HashMap;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hamming::{Code, Vertex};
use crate::perm::{Chain, FaithfulSink, KernelSink, PermGroup, Permutation};

use super::WreathElement;

/// Collects the base-group kernel of the coordinate action, as a permutation
/// group on the `m·q` points `(i, a)`.
#[derive(Debug, Clone)]
struct BaseSink {
    chain: Chain<Permutation>,
    kernel: Vec<WreathElement>,
}

impl BaseSink {
    fn new(m: usize, q: usize) -> Self {
        let n = m * q;
        BaseSink {
            chain: Chain::build(n, Permutation::identity(n), &[], &[], &mut FaithfulSink).expect("empty chain"),
            kernel: Vec::new(),
        }
    }
}

impl KernelSink<WreathElement> for BaseSink {
    fn absorb(&mut self, r: &WreathElement) -> Result<bool> {
        if self.chain.extend(&r.to_block_perm(), &mut FaithfulSink)? {
            self.kernel.push(r.clone());
            return Ok(true);
        }
        Ok(false)
    }
}

/// Stabilizer chain of the action on coordinates, with the kernel attached.
#[derive(Debug, Clone)]
pub struct TopChain {
    chain: Chain<WreathElement>,
    sink: BaseSink,
}

impl TopChain {
    pub fn chain(&self) -> &Chain<WreathElement> {
        &self.chain
    }

    /// Generators of `K = X ∩ B`.
    pub fn kernel(&self) -> &[WreathElement] {
        &self.sink.kernel
    }

    pub fn kernel_order(&self) -> u128 {
        self.sink.chain.action_order()
    }

    /// An element of `X` with top component `top`, if one exists.
    pub fn lift(&self, top: &Permutation) -> Option<WreathElement> {
        self.chain.lift(top)
    }
}

/// A subgroup `X ≤ Aut(H(m,q))` given by generators.
#[derive(Debug, Clone)]
pub struct WreathGroup {
    m: usize,
    q: usize,
    generators: Vec<WreathElement>,
    top: OnceLock<TopChain>,
    block: OnceLock<PermGroup>,
}

impl WreathGroup {
    pub fn new(m: usize, q: usize, generators: Vec<WreathElement>) -> Result<Self> {
        if m == 0 || q == 0 {
            return Err(Error::InvalidParameter("m and q must be positive".into()));
        }
        for g in &generators {
            if g.m() != m || g.q() != q {
                return Err(Error::ContextMismatch(format!(
                    "generator over H({},{}) in a group over H({m},{q})",
                    g.m(),
                    g.q()
                )));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(WreathGroup {
            m,
            q,
            generators,
            top: OnceLock::new(),
            block: OnceLock::new(),
        })
    }

    pub fn trivial(m: usize, q: usize) -> Self {
        WreathGroup::new(m, q, Vec::new()).expect("positive context")
    }

    /// `Diag_m(T)`, one diagonal generator per generator of `T`.
    pub fn diag_embed(t: &PermGroup, m: usize) -> Self {
        let gens = t.generators().iter().map(|h| WreathElement::diagonal(m, h)).collect();
        WreathGroup::new(m, t.degree(), gens).expect("consistent context")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn generators(&self) -> &[WreathElement] {
        &self.generators
    }

    pub fn top_chain(&self) -> &TopChain {
        self.top.get_or_init(|| self.build_top_chain(&[]))
    }

    /// Chain for the coordinate action with the given base prefix.
    pub fn build_top_chain(&self, prefix: &[usize]) -> TopChain {
        let mut sink = BaseSink::new(self.m, self.q);
        let chain = Chain::build(
            self.m,
            WreathElement::identity(self.m, self.q),
            &self.generators,
            prefix,
            &mut sink,
        )
        .expect("base sink never fails");
        TopChain { chain, sink }
    }

    /// `X` acting faithfully on the `m·q` points `(i, a)`.
    pub fn block_group(&self) -> &PermGroup {
        self.block.get_or_init(|| {
            let gens = self.generators.iter().map(|g| g.to_block_perm()).collect();
            PermGroup::new(self.m * self.q, gens).expect("consistent degrees")
        })
    }

    pub fn order(&self) -> u128 {
        let t = self.top_chain();
        t.chain.action_order().saturating_mul(t.kernel_order())
    }

    pub fn contains(&self, x: &WreathElement) -> Result<bool> {
        if x.m() != self.m || x.q() != self.q {
            return Err(Error::ContextMismatch("element and group contexts differ".into()));
        }
        self.block_group().contains(&x.to_block_perm())
    }

    /// `X^M = μ(X)`.
    pub fn top_group(&self) -> PermGroup {
        let gens = self.generators.iter().map(WreathElement::mu).collect();
        PermGroup::new(self.m, gens).expect("consistent degrees")
    }

    /// `K = X ∩ B`, the kernel of the action on coordinates.
    pub fn base_kernel(&self) -> WreathGroup {
        WreathGroup::new(self.m, self.q, self.top_chain().kernel().to_vec()).expect("same context")
    }

    /// `X_i`, the stabilizer of coordinate `i`.
    pub fn entry_stabilizer(&self, i: usize) -> Result<WreathGroup> {
        if i >= self.m {
            return Err(Error::PointOutOfRange {
                point: i,
                degree: self.m,
            });
        }
        let tc = self.build_top_chain(&[i]);
        let mut gens = tc.chain.level_generators(1);
        gens.extend(tc.sink.kernel.iter().cloned());
        WreathGroup::new(self.m, self.q, gens)
    }

    /// `X_J`, the setwise stabilizer of the coordinates `coords`, by filtering
    /// the enumerated top group.
    pub fn block_stabilizer(&self, coords: &[usize], bound: u64) -> Result<WreathGroup> {
        let mut mask = vec![false; self.m];
        for &c in coords {
            if c >= self.m {
                return Err(Error::PointOutOfRange {
                    point: c,
                    degree: self.m,
                });
            }
            mask[c] = true;
        }
        let stabilizes = |p: &Permutation| (0..self.m).all(|i| !mask[i] || mask[p.image(i)]);
        if self.generators.iter().all(|g| stabilizes(g.top())) {
            return Ok(self.clone());
        }
        let top = self.top_group();
        let sub = PermGroup::generated_by(self.m, top.elements(bound)?.into_iter().filter(|p| stabilizes(p)))?;
        let tc = self.top_chain();
        let mut gens: Vec<WreathElement> = sub
            .generators()
            .iter()
            .map(|p| tc.lift(p).expect("element of the top group"))
            .collect();
        gens.extend(tc.kernel().iter().cloned());
        WreathGroup::new(self.m, self.q, gens)
    }

    /// `X_i^Q = φ_i(X_i)`.
    pub fn alphabet_group(&self, i: usize) -> Result<PermGroup> {
        let stab = self.entry_stabilizer(i)?;
        let gens = stab.generators().iter().map(|x| x.phi(i)).collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.q, gens)
    }

    /// `y⁻¹ X y`.
    pub fn conjugate_by(&self, y: &WreathElement) -> Result<WreathGroup> {
        let gens = self.generators.iter().map(|g| g.conjugate_by(y)).collect();
        WreathGroup::new(self.m, self.q, gens)
    }

    /// `X wr S_l` acting on `H(m·l, q)`.
    pub fn wreath_power(&self, l: usize) -> Result<WreathGroup> {
        if l == 0 {
            return Err(Error::InvalidParameter("wreath power needs l ≥ 1".into()));
        }
        let mut gens: Vec<WreathElement> = self.generators.iter().map(|g| g.embed_block(0, l)).collect();
        for s in PermGroup::symmetric(l).generators() {
            gens.push(WreathElement::block_permutation(self.m, self.q, s));
        }
        WreathGroup::new(self.m * l, self.q, gens)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> WreathElement {
        let tc = self.top_chain();
        let mut x = WreathElement::identity(self.m, self.q);
        for l in 0..tc.chain.depth() {
            let orbit = tc.chain.orbit(l);
            let beta = orbit[rng.gen_range(0..orbit.len())];
            x = tc.chain.transversal(l, beta).unwrap().then(&x);
        }
        let kernel =
            PermGroup::new(self.m * self.q, tc.sink.chain.strong_generators().to_vec()).expect("consistent degrees");
        let k = WreathElement::from_block_perm(self.m, self.q, &kernel.random_element(rng))
            .expect("kernel preserves blocks");
        k.then(&x)
    }

    /// Orbit of `v` with transporter bookkeeping; fails beyond `bound` points.
    pub fn orbit(&self, v: &Vertex, bound: u64) -> Result<Orbit> {
        v.check_context(self.m, self.q)?;
        let mut points = vec![v.clone()];
        let mut index = HashMap::new();
        index.insert(v.clone(), 0usize);
        let mut parent = vec![(usize::MAX, usize::MAX)];
        let mut k = 0;
        while k < points.len() {
            let x = points[k].clone();
            for (gi, g) in self.generators.iter().enumerate() {
                let y = g.apply_unchecked(&x);
                if !index.contains_key(&y) {
                    if points.len() as u64 >= bound {
                        return Err(Error::bound("orbit size", bound));
                    }
                    index.insert(y.clone(), points.len());
                    points.push(y);
                    parent.push((k, gi));
                }
            }
            k += 1;
        }
        Ok(Orbit {
            m: self.m,
            q: self.q,
            generators: self.generators.clone(),
            points,
            index,
            parent,
        })
    }

    pub fn orbit_of_vertex(&self, v: &Vertex, bound: u64) -> Result<Code> {
        let orbit = self.orbit(v, bound)?;
        Code::new(self.m, self.q, orbit.points)
    }

    /// True when the sorted vertex list `set` is a single orbit.
    pub fn is_orbit_set(&self, set: &[Vertex], bound: u64) -> Result<bool> {
        let Some(first) = set.first() else {
            return Ok(false);
        };
        let bound = bound.min(set.len() as u64 + 1);
        match self.orbit(first, bound) {
            Ok(o) => Ok(o.len() == set.len() && o.points.iter().all(|p| set.binary_search(p).is_ok())),
            Err(Error::BoundExceeded { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn is_orbit(&self, code: &Code, bound: u64) -> Result<bool> {
        if code.m() != self.m || code.q() != self.q {
            return Err(Error::ContextMismatch("code and group contexts differ".into()));
        }
        self.is_orbit_set(code.words(), bound)
    }
}

/// A vertex orbit together with a Schreier tree over the group generators.
#[derive(Debug, Clone)]
pub struct Orbit {
    m: usize,
    q: usize,
    generators: Vec<WreathElement>,
    points: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    parent: Vec<(usize, usize)>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in discovery order; point 0 is the starting vertex.
    pub fn points(&self) -> &[Vertex] {
        &self.points
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn into_code(self) -> Result<Code> {
        Code::new(self.m, self.q, self.points)
    }

    /// An element mapping the starting vertex to point `i`.
    pub fn transporter(&self, mut i: usize) -> WreathElement {
        let mut word = Vec::new();
        while i != 0 {
            let (p, g) = self.parent[i];
            word.push(g);
            i = p;
        }
        word.iter()
            .rev()
            .fold(WreathElement::identity(self.m, self.q), |acc, &g| {
                acc.then(&self.generators[g])
            })
    }

    /// Transporters for every point, in discovery order.
    pub fn transporters(&self) -> Vec<WreathElement> {
        let mut out: Vec<WreathElement> = Vec::with_capacity(self.points.len());
        out.push(WreathElement::identity(self.m, self.q));
        for i in 1..self.points.len() {
            let (p, g) = self.parent[i];
            let t = out[p].then(&self.generators[g]);
            out.push(t);
        }
        out
    }

    /// Schreier generators `u_i g u_j⁻¹` of the stabilizer of the starting
    /// vertex, skipping the trivial ones.
    pub fn schreier_generators(&self) -> impl Iterator<Item = WreathElement> + '_ {
        let transporters = self.transporters();
        let inverses: Vec<WreathElement> = transporters.iter().map(|t| t.inverse()).collect();
        (0..self.points.len()).flat_map(move |i| {
            let u = transporters[i].clone();
            let inverses = inverses.clone();
            self.generators
                .iter()
                .enumerate()
                .filter_map(move |(gi, g)| {
                    let j = self.index[&g.apply_unchecked(&self.points[i])];
                    if self.parent[j] == (i, gi) {
                        return None;
                    }
                    let s = u.then(g).then(&inverses[j]);
                    (!s.is_identity()).then_some(s)
                })
                .collect::<Vec<_>>()
        })
    }
}
