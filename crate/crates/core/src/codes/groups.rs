//! Automorphism groups under which the constructed codes are neighbour
//! transitive.

use crate::error::{Error, Result};
use crate::hamming::{Code, Vertex};
use crate::perm::{PermGroup, Permutation};
use crate::wreath::{WreathElement, WreathGroup};

use super::perm_codes::{alpha, PairedAction};

/// `x_y = (y, …, y)` on `H(q,q)`, mapping `α(g)` to `α(gy)`.
pub fn x_of(y: &Permutation) -> WreathElement {
    WreathElement::diagonal(y.degree(), y)
}

/// `σ(y)`: `y` acting on coordinates, mapping `α(g)` to `α(y⁻¹g)`.
pub fn sigma_of(y: &Permutation) -> WreathElement {
    WreathElement::from_top(y.degree(), y.clone())
}

/// `a_t = x_t σ(t)`, mapping `α(g)` to `α(t⁻¹gt)`.
pub fn a_of(t: &Permutation) -> WreathElement {
    x_of(t).then(&sigma_of(t))
}

/// `Diag_m(T) ⋊ S_m`.
pub fn diag_top_group(t: &PermGroup, m: usize) -> WreathGroup {
    let q = t.degree();
    let mut gens: Vec<WreathElement> = WreathGroup::diag_embed(t, m).generators().to_vec();
    gens.extend(
        PermGroup::symmetric(m)
            .generators()
            .iter()
            .map(|s| WreathElement::from_top(q, s.clone())),
    );
    WreathGroup::new(m, q, gens).expect("consistent context")
}

/// `⟨Diag_q(T), A(N)⟩` for `N` normalizing `T`, acting on `H(q,q)`.
pub fn perm_code_group(t: &PermGroup, normalizer: &PermGroup) -> Result<WreathGroup> {
    let q = t.degree();
    if normalizer.degree() != q {
        return Err(Error::DegreeMismatch {
            expected: q,
            found: normalizer.degree(),
        });
    }
    for n in normalizer.generators() {
        for g in t.generators() {
            if !t.contains(&g.conjugate_by(n))? {
                return Err(Error::Precondition("the given group does not normalize T".into()));
            }
        }
    }
    let mut gens: Vec<WreathElement> = t.generators().iter().map(x_of).collect();
    gens.extend(normalizer.generators().iter().map(a_of));
    WreathGroup::new(q, q, gens)
}

/// `⟨Diag(T,T^τ), A(N,N^τ), swap⟩` on `H(2q, q)`. The pairing `normalizer`
/// must extend `pa` to a group normalizing `T`.
pub fn twisted_group(pa: &PairedAction, normalizer: &PairedAction) -> Result<WreathGroup> {
    let q = pa.q();
    if normalizer.q() != q {
        return Err(Error::DegreeMismatch {
            expected: q,
            found: normalizer.q(),
        });
    }
    for (g, img) in pa.group1().generators().iter().zip(pa.images()) {
        if !normalizer.group1().contains(g)? || &normalizer.tau(g)? != img {
            return Err(Error::Precondition(
                "the normalizer pairing does not extend the code pairing".into(),
            ));
        }
    }
    let mut gens = Vec::new();
    for (t, tt) in pa.group1().generators().iter().zip(pa.images()) {
        gens.push(x_of(t).direct_sum(&x_of(tt))?);
    }
    for (n, nt) in normalizer.group1().generators().iter().zip(normalizer.images()) {
        gens.push(a_of(n).direct_sum(&a_of(nt))?);
    }
    gens.push(WreathElement::block_permutation(
        q,
        q,
        &Permutation::from_images(vec![1, 0])?,
    ));
    WreathGroup::new(2 * q, q, gens)
}

/// The code `{(α(t_1), …, α(t_l)) : t_i t_j⁻¹ ∈ A_q}` in `H(lq, q)`.
pub fn example_code(q: usize, l: usize, bound: u64) -> Result<Code> {
    if q < 2 || l == 0 {
        return Err(Error::InvalidParameter("need q ≥ 2 and l ≥ 1".into()));
    }
    let sq = PermGroup::symmetric(q).elements(bound)?;
    let size = (sq.len() as u128) * ((sq.len() / 2) as u128).saturating_pow(l as u32 - 1);
    if size > bound as u128 {
        return Err(Error::bound("code size", bound));
    }
    let mut words: Vec<Vec<u8>> = sq.iter().map(|t| alpha(t).bytes().to_vec()).collect();
    let mut parities: Vec<bool> = sq.iter().map(Permutation::is_even).collect();
    for _ in 1..l {
        let mut next_words = Vec::new();
        let mut next_par = Vec::new();
        for (w, &par) in words.iter().zip(&parities) {
            for t in sq.iter().filter(|t| t.is_even() == par) {
                let mut w2 = w.clone();
                w2.extend(t.images().iter().map(|&x| x as u8));
                next_words.push(w2);
                next_par.push(par);
            }
        }
        words = next_words;
        parities = next_par;
    }
    let words = words
        .into_iter()
        .map(|w| Vertex::from_bytes(q, w.into_boxed_slice()))
        .collect();
    Code::new(l * q, q, words)
}

/// The group `{(x_{h_1}σ_1, …, x_{h_l}σ_l)σ : h_i h_j⁻¹, σ_i σ_j⁻¹ ∈ A_q}`
/// acting on `H(lq, q)`.
pub fn example_group(q: usize, l: usize) -> Result<WreathGroup> {
    if q < 3 || l == 0 {
        return Err(Error::InvalidParameter("need q ≥ 3 and l ≥ 1".into()));
    }
    let aq = PermGroup::alternating(q);
    let s = Permutation::from_cycles(q, &[vec![0, 1]])?;
    let mut gens = Vec::new();
    for i in 0..l {
        for a in aq.generators() {
            gens.push(x_of(a).embed_block(i, l));
            gens.push(sigma_of(a).embed_block(i, l));
        }
    }
    let spread = |x: &WreathElement| {
        (0..l).fold(WreathElement::identity(l * q, q), |acc, i| {
            acc.then(&x.embed_block(i, l))
        })
    };
    gens.push(spread(&x_of(&s)));
    gens.push(spread(&sigma_of(&s)));
    for b in PermGroup::symmetric(l).generators() {
        gens.push(WreathElement::block_permutation(q, q, b));
    }
    WreathGroup::new(l * q, q, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{perm_code, rep_code};

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn alpha_actions() {
        let g = p(4, "(0 1 2)");
        let y = p(4, "(1 3)");
        assert_eq!(x_of(&y).apply(&alpha(&g)).unwrap(), alpha(&g.then(&y)));
        assert_eq!(sigma_of(&y).apply(&alpha(&g)).unwrap(), alpha(&y.inverse().then(&g)));
        assert_eq!(
            a_of(&y).apply(&alpha(&g)).unwrap(),
            alpha(&y.inverse().then(&g).then(&y))
        );
    }

    #[test]
    fn rep_group_preserves_rep() {
        let x = diag_top_group(&PermGroup::symmetric(3), 3);
        assert!(x.is_orbit(&rep_code(3, 3).unwrap(), 100).unwrap());
    }

    #[test]
    fn perm_code_group_preserves_code() {
        let a5 = PermGroup::alternating(5);
        let x = perm_code_group(&a5, &PermGroup::symmetric(5)).unwrap();
        let c = perm_code(&a5, 1000).unwrap();
        assert!(x.is_orbit(&c, 1000).unwrap());
        assert_eq!(x.base_kernel().order(), 60);
        let c5 = PermGroup::cyclic(5);
        assert!(perm_code_group(&c5, &PermGroup::symmetric(5)).is_err());
    }

    #[test]
    fn example_sizes() {
        let c = example_code(5, 2, 1_000_000).unwrap();
        assert_eq!(c.len(), 7200);
        let x = example_group(5, 2).unwrap();
        assert_eq!(x.top_group().order(), 14400);
        assert_eq!(x.base_kernel().order(), 7200);
    }
}
