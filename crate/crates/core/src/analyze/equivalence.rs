use serde_json::json;

use crate::error::{Error, Result};
use crate::hamming::Code;
use crate::perm::Permutation;
use crate::wreath::WreathElement;

use super::report::{element_json, Report};

/// A base-group element `y` with `C^y ⊆ Rep(m,q)`, for a code in which any
/// two codewords differ in every entry.
///
/// Coordinate `i` gets the permutation sending each codeword's `i`-th symbol
/// to its first symbol; unused symbols are matched in increasing order.
pub fn rep_equivalence_witness(code: &Code) -> Result<WreathElement> {
    if code.len() < 2 {
        return Err(Error::Precondition("a witness needs at least two codewords".into()));
    }
    let (m, q) = (code.m(), code.q());
    let delta = code.min_distance()?;
    if delta != m {
        return Err(Error::Precondition(format!(
            "minimum distance {delta} is below the length {m}"
        )));
    }
    let mut bottom = Vec::with_capacity(m);
    for i in 0..m {
        let mut images = vec![usize::MAX; q];
        let mut used = vec![false; q];
        for w in code.words() {
            images[w.get(i)] = w.get(0);
            used[w.get(0)] = true;
        }
        let mut free = (0..q).filter(|&b| !used[b]);
        for img in images.iter_mut().filter(|x| **x == usize::MAX) {
            *img = free.next().expect("as many free targets as free sources");
        }
        bottom.push(Permutation::from_images(images)?);
    }
    WreathElement::from_bottom(bottom)
}

pub fn rep_witness_report(code: &Code) -> Result<Report> {
    let report = Report::new("rep_equivalence");
    match rep_equivalence_witness(code) {
        Ok(y) => {
            let image = code.map(code.m(), code.q(), |w| y.apply_unchecked(w))?;
            let whole = image.len() == code.q();
            Ok(report
                .witness("witness", element_json(&y))
                .witness("image_is_repetition_code", whole))
        }
        Err(Error::Precondition(msg)) => Ok(report.fail(json!({
            "kind": "no_witness",
            "reason": msg,
        }))),
        Err(e) => Err(e),
    }
}

/// A permutation `λ` of `0..q` with `λ(a_k(x)) = b_k(λ(x))` for every `k`,
/// that is, an equivalence between the two actions of the group whose
/// generators are paired as `(a_k, b_k)`.
pub fn equivalence_map(a: &[Permutation], b: &[Permutation]) -> Option<Permutation> {
    let q = a.first().map_or(0, Permutation::degree);
    if a.len() != b.len() || b.iter().any(|p| p.degree() != q) || a.iter().any(|p| p.degree() != q) {
        return None;
    }
    let mut lambda = vec![usize::MAX; q];
    let mut used = vec![false; q];
    if extend(a, b, &mut lambda, &mut used) {
        Some(Permutation::from_images(lambda).expect("a bijection"))
    } else {
        None
    }
}

/// Assigns the least unassigned point to each free target in turn and
/// propagates along its orbit, backtracking on conflict.
fn extend(a: &[Permutation], b: &[Permutation], lambda: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
    let Some(x0) = lambda.iter().position(|&v| v == usize::MAX) else {
        return true;
    };
    for y0 in 0..lambda.len() {
        if used[y0] {
            continue;
        }
        let saved = (lambda.clone(), used.clone());
        lambda[x0] = y0;
        used[y0] = true;
        let mut stack = vec![x0];
        let mut ok = true;
        'prop: while let Some(x) = stack.pop() {
            for (ga, gb) in a.iter().zip(b) {
                let (x2, y2) = (ga.image(x), gb.image(lambda[x]));
                if lambda[x2] == usize::MAX {
                    if used[y2] {
                        ok = false;
                        break 'prop;
                    }
                    lambda[x2] = y2;
                    used[y2] = true;
                    stack.push(x2);
                } else if lambda[x2] != y2 {
                    ok = false;
                    break 'prop;
                }
            }
        }
        if ok && extend(a, b, lambda, used) {
            return true;
        }
        (*lambda, *used) = saved;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{cayley_code, perm_code, rep_code, GroupTable};
    use crate::perm::PermGroup;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn witnesses_map_onto_repetition_codes() {
        let c5 = PermGroup::new(5, vec![p(5, "(0 1 2 3 4)")]).unwrap();
        let c = perm_code(&c5, 100).unwrap();
        let y = rep_equivalence_witness(&c).unwrap();
        let image = c.map(5, 5, |w| y.apply(w).unwrap()).unwrap();
        assert_eq!(image, rep_code(5, 5).unwrap());
        let z6 = cayley_code(&GroupTable::cyclic(6).unwrap(), &[0, 1, 2, 3, 4, 5]).unwrap();
        let y = rep_equivalence_witness(&z6).unwrap();
        assert_eq!(z6.map(6, 6, |w| y.apply(w).unwrap()).unwrap(), rep_code(6, 6).unwrap());
        let r = rep_code(4, 3).unwrap();
        assert!(rep_equivalence_witness(&r).unwrap().is_identity());
    }

    #[test]
    fn no_witness_below_full_distance() {
        let c = perm_code(&PermGroup::symmetric(3), 100).unwrap();
        assert!(rep_equivalence_witness(&c).is_err());
        assert!(!rep_witness_report(&c).unwrap().verdict);
    }

    #[test]
    fn equivalences_between_actions() {
        let a = [p(4, "(0 1 2 3)")];
        let b = [p(4, "(0 2 1 3)")];
        let l = equivalence_map(&a, &b).unwrap();
        assert_eq!(l.inverse().then(&a[0]).then(&l), b[0]);
        // a 4-cycle and a double transposition act inequivalently
        assert!(equivalence_map(&a, &[p(4, "(0 1)(2 3)")]).is_none());
        // intransitive actions need one choice per orbit
        let a = [p(5, "(0 1)"), p(5, "(2 3 4)")];
        let b = [p(5, "(3 4)"), p(5, "(0 1 2)")];
        let l = equivalence_map(&a, &b).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(&l.inverse().then(x).then(&l), y);
        }
    }
}
