//! Supports of the minimal normal subgroups of `soc(K)`, their forms, and the
//! decomposition of a neighbour transitive code into translates of a
//! `soc(K)`-orbit.

use serde::Serialize;
use serde_json::json;

use crate::bounds::Bounds;
use crate::codes::{perm_code, prod_code, rep_code, rep_l_code, twisted_code, PairedAction};
use crate::error::{Error, Result};
use crate::hamming::Code;
use crate::perm::{PermGroup, Permutation};
use crate::wreath::{WreathElement, WreathGroup};

use super::equivalence::equivalence_map;
use super::report::{element_json, perm_json, vertex_json, Report};
use super::transitivity::check_neighbour_transitive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Form {
    Form1,
    Form2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    ProdRep,
    ProdRepPerm,
    ProdRepTwisted,
}

/// The minimal normal subgroups `D_i` of `soc(K)` with their supports `J_i`,
/// ordered by least coordinate.
#[derive(Debug, Clone)]
pub struct SupportPartition {
    pub blocks: Vec<Vec<usize>>,
    pub factors: Vec<WreathGroup>,
}

fn to_wreath(m: usize, q: usize, g: &PermGroup) -> Result<WreathGroup> {
    let gens = g
        .generators()
        .iter()
        .map(|p| WreathElement::from_block_perm(m, q, p))
        .collect::<Result<_>>()?;
    WreathGroup::new(m, q, gens)
}

/// `soc(K)`, computed on the faithful action of `K` on `m·q` points.
pub fn kernel_socle(kernel: &WreathGroup, bound: u64) -> Result<WreathGroup> {
    let soc = kernel.block_group().socle(bound)?;
    to_wreath(kernel.m(), kernel.q(), &soc)
}

/// Coordinates where some generator acts non-trivially.
fn support(g: &WreathGroup) -> Vec<usize> {
    (0..g.m())
        .filter(|&j| g.generators().iter().any(|x| !x.bottom()[j].is_identity()))
        .collect()
}

fn local_gens(gens: &[WreathElement], j: usize) -> Vec<Permutation> {
    gens.iter().map(|x| x.bottom()[j].clone()).collect()
}

/// Splits `soc(K)` into its minimal normal subgroups and checks that their
/// supports partition the coordinates, each factor being a full diagonal
/// subgroup of a product of copies of one simple group.
pub fn support_partition(soc_k: &WreathGroup, bound: u64) -> Result<SupportPartition> {
    if !soc_k.generators().iter().all(WreathElement::in_base_group) {
        return Err(Error::Precondition(
            "the group is not contained in the base group".into(),
        ));
    }
    let (m, q) = (soc_k.m(), soc_k.q());
    let mins = soc_k.block_group().minimal_normal_subgroups(bound)?;
    let mut parts = Vec::new();
    for d in &mins {
        let w = to_wreath(m, q, d)?;
        parts.push((support(&w), w));
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut owner = vec![usize::MAX; m];
    for (i, (s, _)) in parts.iter().enumerate() {
        for &j in s {
            if owner[j] != usize::MAX {
                return Err(Error::StructureViolation(format!(
                    "coordinate {j} lies in the supports of two minimal normal subgroups"
                )));
            }
            owner[j] = i;
        }
    }
    if let Some(j) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::StructureViolation(format!("coordinate {j} lies in no support")));
    }
    for (s, d) in &parts {
        let order = d.order();
        for &j in s {
            let local = PermGroup::new(q, local_gens(d.generators(), j))?;
            if local.order() != order || !local.is_simple(bound)? {
                return Err(Error::StructureViolation(format!(
                    "the factor supported on {s:?} is not a full diagonal subgroup at coordinate {j}"
                )));
            }
        }
    }
    let (blocks, factors) = parts.into_iter().unzip();
    Ok(SupportPartition { blocks, factors })
}

/// Form of the factors, with the halves `(J_i^(1), J_i^(2))` of each block
/// for Form 2. `J_i^(1)` holds the coordinates whose action is equivalent to
/// that of the least coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormClassification {
    pub form: Form,
    pub halves: Vec<[Vec<usize>; 2]>,
}

pub fn classify_form(sp: &SupportPartition) -> Result<FormClassification> {
    let mut forms = Vec::new();
    let mut halves = Vec::new();
    for (block, d) in sp.blocks.iter().zip(&sp.factors) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &j in block {
            let gj = local_gens(d.generators(), j);
            match classes
                .iter_mut()
                .find(|c| equivalence_map(&gj, &local_gens(d.generators(), c[0])).is_some())
            {
                Some(c) => c.push(j),
                None => classes.push(vec![j]),
            }
        }
        match classes.len() {
            1 => forms.push(Form::Form1),
            2 if classes[0].len() == classes[1].len() => {
                forms.push(Form::Form2);
                let second = classes.pop().unwrap();
                halves.push([classes.pop().unwrap(), second]);
            }
            2 => {
                return Err(Error::StructureViolation(format!(
                    "the two halves of block {block:?} have different sizes"
                )))
            }
            n => {
                return Err(Error::StructureViolation(format!(
                    "block {block:?} carries {n} inequivalent coordinate actions"
                )))
            }
        }
    }
    let form = forms[0];
    if forms.iter().any(|&f| f != form) {
        return Err(Error::StructureViolation(
            "the blocks do not all have the same form".into(),
        ));
    }
    Ok(FormClassification { form, halves })
}

/// The decomposition of an `X`-neighbour transitive code.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// `K = X ∩ B`.
    pub kernel: WreathGroup,
    pub soc_kernel: WreathGroup,
    /// The supports `J_1, …, J_ℓ`.
    pub supports: Vec<Vec<usize>>,
    pub form: Form,
    /// `(J_i^(1), J_i^(2))` for each block; empty for Form 1.
    pub halves: Vec<[Vec<usize>; 2]>,
    /// `Δ`, the `soc(K)`-orbit of the least codeword.
    pub delta: Code,
    /// Elements `x` with `C` the disjoint union of the `Δ^x`.
    pub translates: Vec<WreathElement>,
    pub shape: Shape,
    /// Number of repeated copies in each block, for the non-repetition shapes.
    pub p: Option<usize>,
    /// The simple group `T` on the alphabet, after relabelling.
    pub socle_group: PermGroup,
    /// `t ↦ t^τ` for Form 2.
    pub pairing: Option<PairedAction>,
    /// `y` with `Δ^y` literally equal to the construction named by `shape`.
    pub conjugator: WreathElement,
}

impl Decomposition {
    pub fn l(&self) -> usize {
        self.supports.len()
    }

    pub fn k(&self) -> usize {
        self.supports[0].len()
    }

    /// The construction `Δ^y` is compared against.
    pub fn construction(&self, bound: u64) -> Result<Code> {
        let q = self.delta.q();
        let block = match (self.shape, self.p) {
            (Shape::ProdRep, _) => rep_code(self.k(), q)?,
            (Shape::ProdRepPerm, Some(p)) => rep_l_code(&perm_code(&self.socle_group, bound)?, p)?,
            (Shape::ProdRepTwisted, Some(p)) => {
                let pa = self.pairing.as_ref().expect("twisted shape carries its pairing");
                rep_l_code(&twisted_code(pa, bound)?, p)?
            }
            _ => unreachable!("non-repetition shapes record p"),
        };
        prod_code(&block, self.l(), bound)
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new("decompose")
            .witness("shape", self.shape)
            .witness("form", self.form)
            .witness("supports", &self.supports)
            .witness("halves", &self.halves)
            .witness("p", self.p)
            .witness("delta_size", self.delta.len())
            .witness(
                "translates",
                self.translates.iter().map(element_json).collect::<Vec<_>>(),
            )
            .witness("conjugator", element_json(&self.conjugator))
            .witness(
                "socle_generators",
                self.socle_group.generators().iter().map(perm_json).collect::<Vec<_>>(),
            )
            .stat("kernel_order", self.kernel.order())
            .stat("soc_kernel_order", self.soc_kernel.order())
            .stat("translate_count", self.translates.len());
        if let Some(pa) = &self.pairing {
            r = r.witness("tau_images", pa.images().iter().map(perm_json).collect::<Vec<_>>());
        }
        r
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::StructureViolation(msg.into())
}

/// Checks the hypotheses, then computes `Δ`, its translates and its shape,
/// verifying each conclusion on the computed sets.
pub fn decompose(code: &Code, x: &WreathGroup, bounds: &Bounds) -> Result<Decomposition> {
    let (m, q) = (code.m(), code.q());
    if !check_neighbour_transitive(code, x, bounds)?.verdict {
        return Err(Error::Precondition("the code is not neighbour transitive".into()));
    }
    let delta_c = code.min_distance()?;
    if delta_c < 3 {
        return Err(Error::Precondition(format!("minimum distance {delta_c} is below 3")));
    }
    let kernel = x.base_kernel();
    if kernel.order() == 1 {
        return Err(Error::Precondition("the kernel K = X ∩ B is trivial".into()));
    }
    let local = x.alphabet_group(0)?;
    if !local.is_2transitive() {
        return Err(Error::Precondition(
            "the alphabet group X_0^Q is not 2-transitive".into(),
        ));
    }
    let local_soc = local.socle(bounds.enumeration)?;
    if local_soc.is_abelian() || !local_soc.is_simple(bounds.enumeration)? {
        return Err(Error::Precondition(
            "the alphabet group X_0^Q is not almost simple with nonabelian socle".into(),
        ));
    }

    let soc_kernel = kernel_socle(&kernel, bounds.enumeration)?;
    let sp = support_partition(&soc_kernel, bounds.enumeration)?;
    let fc = classify_form(&sp)?;
    let l = sp.blocks.len();
    let k = m / l;
    if sp.blocks.iter().any(|b| b.len() != k) {
        return Err(violation("the supports have different sizes"));
    }
    match fc.form {
        Form::Form1 if k < 3 => return Err(violation(format!("Form 1 blocks of size {k} < 3"))),
        Form::Form2 if k < 4 || k % 2 == 1 => {
            return Err(violation(format!(
                "Form 2 blocks of size {k} are not even and at least 4"
            )))
        }
        _ => {}
    }

    let alpha = &code.words()[0];
    let delta = soc_kernel.orbit_of_vertex(alpha, bounds.orbit)?;
    let translates = translates(code, x, &delta, bounds)?;

    // relabel every coordinate so that D_i acts as T on J_i^(1) and as T^τ on J_i^(2)
    let gens0 = sp.factors[0].generators().to_vec();
    let r0 = sp.blocks[0][0];
    let mut targets = vec![local_gens(&gens0, r0)];
    if fc.form == Form::Form2 {
        targets.push(local_gens(&gens0, fc.halves[0][1][0]));
    }
    let tc = x.build_top_chain(&[r0]);
    let mut relabel = vec![Permutation::identity(q); m];
    let mut half = vec![0usize; m];
    for (i, block) in sp.blocks.iter().enumerate() {
        let xi = if i == 0 {
            WreathElement::identity(m, q)
        } else {
            let chain = tc.chain();
            let orbit: &[usize] = if chain.depth() > 0 && chain.base()[0] == r0 {
                chain.orbit(0)
            } else {
                &[]
            };
            let pt = block
                .iter()
                .find(|j| orbit.contains(j))
                .ok_or_else(|| violation("X does not permute the supports transitively"))?;
            chain.transversal(0, *pt).expect("point in the orbit").clone()
        };
        let gens_i: Vec<WreathElement> = gens0.iter().map(|d| d.conjugate_by(&xi)).collect();
        if gens_i
            .iter()
            .any(|g| (0..m).any(|j| !block.contains(&j) && !g.bottom()[j].is_identity()))
        {
            return Err(violation("X does not permute the minimal normal subgroups of soc(K)"));
        }
        for &j in block {
            let gj = local_gens(&gens_i, j);
            let (h, lambda) = targets
                .iter()
                .enumerate()
                .find_map(|(h, t)| equivalence_map(&gj, t).map(|lam| (h, lam)))
                .ok_or_else(|| violation(format!("coordinate {j} acts inequivalently to the reference")))?;
            relabel[j] = lambda;
            half[j] = h;
        }
    }
    let halves: Vec<[Vec<usize>; 2]> = match fc.form {
        Form::Form1 => Vec::new(),
        Form::Form2 => sp
            .blocks
            .iter()
            .map(|b| {
                let part = |h| b.iter().copied().filter(|&j| half[j] == h).collect::<Vec<_>>();
                [part(0), part(1)]
            })
            .collect(),
    };
    if halves.iter().any(|[a, b]| a.len() != b.len()) {
        return Err(violation("the halves of a Form 2 block have different sizes"));
    }
    let relabel = WreathElement::from_bottom(relabel)?;
    let reference = relabel.apply(alpha)?;

    let constant = sp
        .blocks
        .iter()
        .all(|b| b.iter().all(|&j| reference.get(j) == reference.get(b[0])));
    let (shape, p) = match fc.form {
        Form::Form1 if constant => (Shape::ProdRep, None),
        Form::Form1 => (Shape::ProdRepPerm, Some(k / q)),
        Form::Form2 => (Shape::ProdRepTwisted, Some(k / (2 * q))),
    };
    let copies = match fc.form {
        Form::Form1 => 1,
        Form::Form2 => 2,
    };
    let mut position = vec![0usize; m];
    for (i, block) in sp.blocks.iter().enumerate() {
        if shape == Shape::ProdRep {
            for (r, &j) in block.iter().enumerate() {
                position[j] = i * k + r;
            }
            continue;
        }
        let p = p.unwrap();
        if k != p * copies * q {
            return Err(violation(format!("block size {k} is not a multiple of {}", copies * q)));
        }
        let mut seen = vec![[0usize; 2]; q];
        for &j in block {
            let (a, h) = (reference.get(j), half[j]);
            let r = seen[a][h];
            if r >= p {
                return Err(violation(format!(
                    "symbol {a} occurs more than {p} times in the reference codeword on a block half"
                )));
            }
            seen[a][h] += 1;
            position[j] = i * k + r * copies * q + h * q + a;
        }
    }
    let reorder = WreathElement::from_top(q, Permutation::from_images(position)?);
    let conjugator = relabel.then(&reorder);

    let socle_group = PermGroup::new(q, targets[0].clone())?;
    let pairing = match fc.form {
        Form::Form1 => None,
        Form::Form2 => Some(PairedAction::new(socle_group.clone(), targets[1].clone())?),
    };
    let dec = Decomposition {
        kernel,
        soc_kernel,
        supports: sp.blocks,
        form: fc.form,
        halves,
        delta,
        translates,
        shape,
        p,
        socle_group,
        pairing,
        conjugator,
    };
    let moved = dec.delta.map(m, q, |w| dec.conjugator.apply_unchecked(w))?;
    if moved != dec.construction(bounds.enumeration)? {
        return Err(violation("Δ is not equivalent to the predicted construction"));
    }
    if let Some(p) = p {
        for i in 0..l {
            for h in 0..copies {
                let part: Vec<usize> = (i * k..(i + 1) * k)
                    .filter(|c| (c - i * k) % (copies * q) / q == h)
                    .collect();
                if crate::codes::project(&moved, &part)?.is_frequency_array() != Some(p) {
                    return Err(violation("Δ is not a frequency permutation array on a block"));
                }
            }
        }
    }
    Ok(dec)
}

/// Greedy cover of `C` by translates of `Δ`, each checked to lie in `C` and
/// to avoid the earlier ones.
fn translates(code: &Code, x: &WreathGroup, delta: &Code, bounds: &Bounds) -> Result<Vec<WreathElement>> {
    let orbit = x.orbit(&code.words()[0], bounds.orbit)?;
    let mut covered = vec![false; code.len()];
    let mut out = Vec::new();
    while let Some(u) = covered.iter().position(|&c| !c) {
        let target = &code.words()[u];
        let t = orbit
            .index_of(target)
            .ok_or_else(|| violation("C is not a single X-orbit"))?;
        let xt = orbit.transporter(t);
        for w in delta.words() {
            let image = xt.apply_unchecked(w);
            let idx = code
                .index_of(&image)
                .ok_or_else(|| violation("a translate of Δ leaves C"))?;
            if std::mem::replace(&mut covered[idx], true) {
                return Err(violation("two translates of Δ overlap"));
            }
        }
        out.push(xt);
    }
    Ok(out)
}

/// Runs [`decompose`] and summarises the result; precondition failures are
/// reported with verdict `false`.
pub fn decompose_report(code: &Code, x: &WreathGroup, bounds: &Bounds) -> Result<Report> {
    match decompose(code, x, bounds) {
        Ok(d) => Ok(d.to_report().witness("base_codeword", vertex_json(&code.words()[0]))),
        Err(Error::Precondition(msg)) => Ok(Report::new("decompose").fail(json!({
            "kind": "precondition",
            "reason": msg,
        }))),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{
        diag_top_group, example_code, example_group, fixture, perm_code, perm_code_group, twisted_group,
    };

    fn b() -> Bounds {
        Bounds::default()
    }

    fn a5_coordinatewise(m: usize) -> WreathGroup {
        let a5 = PermGroup::alternating(5);
        let gens = (0..m)
            .flat_map(|i| {
                a5.generators().iter().map(move |g| {
                    let mut bottom = vec![Permutation::identity(5); m];
                    bottom[i] = g.clone();
                    WreathElement::from_bottom(bottom).unwrap()
                })
            })
            .collect();
        WreathGroup::new(m, 5, gens).unwrap()
    }

    #[test]
    fn supports() {
        let diag = WreathGroup::diag_embed(&PermGroup::alternating(5), 3);
        let sp = support_partition(&diag, 10_000).unwrap();
        assert_eq!(sp.blocks, vec![vec![0, 1, 2]]);
        let sp = support_partition(&a5_coordinatewise(3), 1_000_000).unwrap();
        assert_eq!(sp.blocks, vec![vec![0], vec![1], vec![2]]);
        let x = example_group(5, 2).unwrap();
        let soc = kernel_socle(&x.base_kernel(), 100_000).unwrap();
        assert_eq!(soc.order(), 3600);
        let sp = support_partition(&soc, 100_000).unwrap();
        assert_eq!(sp.blocks, vec![(0..5).collect::<Vec<_>>(), (5..10).collect()]);
        let top = WreathGroup::new(
            2,
            5,
            vec![WreathElement::from_top(
                5,
                Permutation::from_images(vec![1, 0]).unwrap(),
            )],
        );
        assert!(support_partition(&top.unwrap(), 100).is_err());
    }

    #[test]
    fn forms() {
        let diag = WreathGroup::diag_embed(&PermGroup::alternating(5), 3);
        let fc = classify_form(&support_partition(&diag, 10_000).unwrap()).unwrap();
        assert_eq!(fc.form, Form::Form1);
        let f = fixture("a6_pair", 1_000_000).unwrap();
        let x = twisted_group(&f.pair, f.normalizer.as_ref().unwrap()).unwrap();
        let soc = kernel_socle(&x.base_kernel(), 100_000).unwrap();
        let fc = classify_form(&support_partition(&soc, 100_000).unwrap()).unwrap();
        assert_eq!(fc.form, Form::Form2);
        assert_eq!(fc.halves, vec![[(0..6).collect::<Vec<_>>(), (6..12).collect()]]);
    }

    #[test]
    fn mixed_forms_are_rejected() {
        // a Form 1 factor on coordinates 0, 1 and a Form 2 factor on 2, 3
        let f = fixture("a6_pair", 1_000_000).unwrap();
        let mut gens = Vec::new();
        for (t, tt) in f.pair.group1().generators().iter().zip(f.pair.images()) {
            let id = Permutation::identity(6);
            gens.push(WreathElement::from_bottom(vec![t.clone(), t.clone(), id.clone(), id.clone()]).unwrap());
            gens.push(WreathElement::from_bottom(vec![id.clone(), id, t.clone(), tt.clone()]).unwrap());
        }
        let g = WreathGroup::new(4, 6, gens).unwrap();
        let sp = support_partition(&g, 1_000_000).unwrap();
        assert_eq!(sp.blocks.len(), 2);
        assert!(matches!(classify_form(&sp), Err(Error::StructureViolation(_))));
    }

    #[test]
    fn example_decomposes_into_two_translates() {
        let c = example_code(5, 2, 1_000_000).unwrap();
        let x = example_group(5, 2).unwrap();
        let d = decompose(&c, &x, &b()).unwrap();
        assert_eq!(d.shape, Shape::ProdRepPerm);
        assert_eq!(d.form, Form::Form1);
        assert_eq!(d.p, Some(1));
        assert_eq!(d.delta.len(), 3600);
        assert_eq!(d.translates.len(), 2);
        let a5 = perm_code(&PermGroup::alternating(5), 1000).unwrap();
        assert_eq!(d.delta, prod_code(&a5, 2, 10_000).unwrap());
    }

    #[test]
    fn permutation_code_is_its_own_block() {
        let a5 = PermGroup::alternating(5);
        let c = perm_code(&a5, 1000).unwrap();
        let x = perm_code_group(&a5, &PermGroup::symmetric(5)).unwrap();
        let d = decompose(&c, &x, &b()).unwrap();
        assert_eq!(d.delta, c);
        assert_eq!(d.translates.len(), 1);
        assert_eq!(d.shape, Shape::ProdRepPerm);

        let s5 = PermGroup::symmetric(5);
        let c = perm_code(&s5, 1000).unwrap();
        let x = perm_code_group(&s5, &s5).unwrap();
        assert!(matches!(decompose(&c, &x, &b()), Err(Error::Precondition(_))));
        assert!(!decompose_report(&c, &x, &b()).unwrap().verdict);
    }

    #[test]
    fn repetition_shapes() {
        let x = diag_top_group(&PermGroup::symmetric(5), 4);
        let d = decompose(&rep_code(4, 5).unwrap(), &x, &b()).unwrap();
        assert_eq!(d.shape, Shape::ProdRep);
        assert_eq!(d.l(), 1);
        let x2 = diag_top_group(&PermGroup::symmetric(5), 3).wreath_power(2).unwrap();
        let c2 = prod_code(&rep_code(3, 5).unwrap(), 2, 1000).unwrap();
        let d = decompose(&c2, &x2, &b()).unwrap();
        assert_eq!(d.shape, Shape::ProdRep);
        assert_eq!(d.supports, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(d.translates.len(), 1);
        // the alphabet group S_3 has an abelian socle
        let x3 = diag_top_group(&PermGroup::symmetric(3), 3);
        assert!(decompose(&rep_code(3, 3).unwrap(), &x3, &b()).is_err());
    }

    #[test]
    fn twisted_code_decomposes() {
        let f = fixture("a6_pair", 1_000_000).unwrap();
        let x = twisted_group(&f.pair, f.normalizer.as_ref().unwrap()).unwrap();
        let c = twisted_code(&f.pair, 1_000_000).unwrap();
        let d = decompose(&c, &x, &b()).unwrap();
        assert_eq!(d.shape, Shape::ProdRepTwisted);
        assert_eq!(d.form, Form::Form2);
        assert_eq!(d.translates.len(), 1);
        assert_eq!(d.delta.len(), 360);
    }
}
