use std::sync::OnceLock;

use ntcodes::analyze::{check_neighbour_transitive, check_projection_structure, check_prop27, check_s_regular};
use ntcodes::codes::{diag_top_group, perm_code, perm_code_group, prod_code, project, rep_code};
use ntcodes::hamming::{distance_partition, neighbour_set, Code, Vertex};
use ntcodes::perm::{PermGroup, Permutation};
use ntcodes::wreath::{neighbour_image_check, WreathElement, WreathGroup};
use ntcodes::Bounds;
use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::test_runner::{TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = ProptestConfig {
        cases: CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    };
    TestRunner::new(config).run(&strategy, test).map_err(|e| e.to_string())
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn element(m: usize, q: usize) -> impl Strategy<Value = WreathElement> {
    (prop::collection::vec(perm(q), m), perm(m)).prop_map(|(b, t)| WreathElement::new(b, t).unwrap())
}

fn vertex(m: usize, q: usize) -> impl Strategy<Value = Vertex> {
    prop::collection::vec(0..q, m).prop_map(move |s| Vertex::new(q, &s).unwrap())
}

fn code(m: usize, q: usize, max: usize) -> impl Strategy<Value = Code> {
    prop::collection::vec(vertex(m, q), 1..=max).prop_map(move |w| Code::new(m, q, w).unwrap())
}

fn coords(m: usize) -> impl Strategy<Value = Vec<usize>> {
    subsequence((0..m).collect::<Vec<_>>(), 1..=m)
}

/// Elements whose coordinate permutation preserves `j`.
fn stabilizing(m: usize, q: usize, j: Vec<usize>) -> impl Strategy<Value = WreathElement> {
    let rest: Vec<usize> = (0..m).filter(|c| !j.contains(c)).collect();
    (
        prop::collection::vec(perm(q), m),
        Just(j.clone()).prop_shuffle(),
        Just(rest.clone()).prop_shuffle(),
    )
        .prop_map(move |(bottom, jt, rt)| {
            let mut top = vec![0; m];
            for (src, dst) in j.iter().zip(&jt).chain(rest.iter().zip(&rt)) {
                top[*src] = *dst;
            }
            WreathElement::new(bottom, Permutation::from_images(top).unwrap()).unwrap()
        })
}

fn conjugate_code(c: &Code, y: &WreathElement) -> Code {
    c.map(c.m(), c.q(), |w| y.apply(w).unwrap()).unwrap()
}

fn hamming(a: &Vertex, b: &Vertex) -> usize {
    (0..a.m()).filter(|&i| a.get(i) != b.get(i)).count()
}

fn naive_min_distance(c: &Code) -> Option<usize> {
    let w = c.words();
    (0..w.len())
        .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
        .map(|(i, j)| hamming(&w[i], &w[j]))
        .min()
}

struct Example {
    code: Code,
    group: WreathGroup,
    partitions: Vec<Vec<Vec<usize>>>,
}

fn trivial_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    vec![vec![(0..m).collect()], (0..m).map(|i| vec![i]).collect()]
}

fn examples() -> &'static [Example] {
    static EX: OnceLock<Vec<Example>> = OnceLock::new();
    EX.get_or_init(|| {
        let s2 = PermGroup::symmetric(2);
        let a5 = PermGroup::alternating(5);
        let mut prod_parts = trivial_partitions(6);
        prod_parts.push(vec![vec![0, 1, 2], vec![3, 4, 5]]);
        vec![
            Example {
                code: rep_code(3, 3).unwrap(),
                group: diag_top_group(&PermGroup::symmetric(3), 3),
                partitions: trivial_partitions(3),
            },
            Example {
                code: rep_code(5, 2).unwrap(),
                group: diag_top_group(&s2, 5),
                partitions: trivial_partitions(5),
            },
            Example {
                code: perm_code(&a5, 1000).unwrap(),
                group: perm_code_group(&a5, &PermGroup::symmetric(5)).unwrap(),
                partitions: trivial_partitions(5),
            },
            Example {
                code: prod_code(&rep_code(3, 2).unwrap(), 2, 1000).unwrap(),
                group: diag_top_group(&s2, 3).wreath_power(2).unwrap(),
                partitions: prod_parts,
            },
        ]
    })
}

fn example_and_conjugator() -> impl Strategy<Value = (usize, WreathElement)> {
    (0..examples().len()).prop_flat_map(|e| {
        let c = &examples()[e].code;
        (Just(e), element(c.m(), c.q()))
    })
}

fn conjugated(e: usize, y: &WreathElement) -> (Code, WreathGroup, Vec<Vec<Vec<usize>>>) {
    let ex = &examples()[e];
    let parts = ex
        .partitions
        .iter()
        .map(|p| {
            p.iter()
                .map(|b| b.iter().map(|&j| y.top().image(j)).collect())
                .collect()
        })
        .collect();
    (conjugate_code(&ex.code, y), ex.group.conjugate_by(y).unwrap(), parts)
}

pub fn examples_are_neighbour_transitive() {
    for ex in examples() {
        let r = check_neighbour_transitive(&ex.code, &ex.group, &Bounds::default()).unwrap();
        assert!(r.verdict, "{}", r.to_json());
        assert!(ex.code.min_distance().unwrap() >= 3);
    }
}

pub fn shared_neighbour_trichotomy() -> Result<(), String> {
    run(
        (2usize..=6, 2usize..=5).prop_flat_map(|(m, q)| (vertex(m, q), 0..m, 1..q, 0..m, 1..q)),
        |(alpha, i, a, j, c)| {
            let q = alpha.q();
            let a = (alpha.get(i) + a) % q;
            let nu = alpha.nu(i, a).unwrap();
            let c = (nu.get(j) + c) % q;
            let beta = nu.nu(j, c).unwrap();
            let b = nu.get(j);
            prop_assert_eq!(beta.nu(j, b).unwrap(), nu.clone());
            prop_assert_ne!(beta.get(j), b);

            let d = hamming(&alpha, &beta);
            let first = alpha == beta && i == j && a == b;
            let second = i == j && a == b && c != alpha.get(i) && c != a && beta == alpha.nu(i, c).unwrap();
            let third = d == 2 && i != j && alpha.get(j) == b && beta.get(i) == a;
            prop_assert_eq!([first, second, third].iter().filter(|&&t| t).count(), 1);
            Ok(())
        },
    )
}

pub fn neighbour_image_identity() -> Result<(), String> {
    run(
        (1usize..=6, 2usize..=5).prop_flat_map(|(m, q)| (element(m, q), vertex(m, q), 0..m, 0..q)),
        |(x, alpha, i, a)| {
            let (lhs, rhs) = neighbour_image_check(&x, &alpha, i, a).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            let image = x.apply(&alpha).unwrap();
            prop_assert_eq!(hamming(&image, &lhs), hamming(&alpha, &alpha.nu(i, a).unwrap()));
            Ok(())
        },
    )
}

pub fn distance_partition_equivariance() -> Result<(), String> {
    run(
        (2usize..=4, 2usize..=3).prop_flat_map(|(m, q)| {
            (
                code(m, q, 6),
                element(m, q),
                prop::collection::vec(element(m, q), 1..=2),
            )
        }),
        |(c, y, gens)| {
            let bound = 1000;
            let p = distance_partition(&c, bound).unwrap();
            let py = distance_partition(&conjugate_code(&c, &y), bound).unwrap();
            prop_assert_eq!(p.cells.len(), py.cells.len());
            for (cell, cell_y) in p.cells.iter().zip(&py.cells) {
                prop_assert_eq!(&conjugate_code(cell, &y), cell_y);
            }
            let x = WreathGroup::new(c.m(), c.q(), gens).unwrap();
            let bounds = Bounds::default();
            let before = check_neighbour_transitive(&c, &x, &bounds).map(|r| r.verdict).ok();
            let after = check_neighbour_transitive(&conjugate_code(&c, &y), &x.conjugate_by(&y).unwrap(), &bounds)
                .map(|r| r.verdict)
                .ok();
            prop_assert_eq!(before, after);
            Ok(())
        },
    )
}

pub fn wreath_action_compatibility() -> Result<(), String> {
    run(
        (1usize..=6, 2usize..=5).prop_flat_map(|(m, q)| (element(m, q), element(m, q), vertex(m, q))),
        |(x, y, v)| {
            let xy = x.then(&y);
            prop_assert_eq!(xy.apply(&v).unwrap(), y.apply(&x.apply(&v).unwrap()).unwrap());
            prop_assert_eq!(x.inverse().apply(&x.apply(&v).unwrap()).unwrap(), v.clone());
            prop_assert!(x.then(&x.inverse()).is_identity());
            prop_assert_eq!(xy.to_block_perm(), x.to_block_perm().then(&y.to_block_perm()));
            prop_assert_eq!(
                WreathElement::from_block_perm(x.m(), x.q(), &x.to_block_perm()).unwrap(),
                x.clone()
            );
            let conj = x.conjugate_by(&y);
            let w = y.apply(&v).unwrap();
            prop_assert_eq!(conj.apply(&w).unwrap(), y.apply(&x.apply(&v).unwrap()).unwrap());
            Ok(())
        },
    )
}

pub fn chi_is_a_homomorphism() -> Result<(), String> {
    run(
        (1usize..=6, 2usize..=4).prop_flat_map(|(m, q)| {
            coords(m).prop_flat_map(move |j| {
                (
                    stabilizing(m, q, j.clone()),
                    stabilizing(m, q, j.clone()),
                    vertex(m, q),
                    Just(j),
                )
            })
        }),
        |(x, y, v, j)| {
            let cx = x.chi_restrict(&j).unwrap();
            let cy = y.chi_restrict(&j).unwrap();
            prop_assert_eq!(x.then(&y).chi_restrict(&j).unwrap(), cx.then(&cy));
            prop_assert_eq!(x.apply(&v).unwrap().project(&j), cx.apply(&v.project(&j)).unwrap());
            Ok(())
        },
    )
}

pub fn projection_inclusions() -> Result<(), String> {
    run(
        (2usize..=5, 2usize..=3).prop_flat_map(|(m, q)| (code(m, q, 8), coords(m), vertex(m, q))),
        |(c, j, nu)| {
            let pc = project(&c, &j).unwrap();
            let lhs = pc.distance_to(&nu.project(&j)).unwrap();
            let rhs = c.words().iter().map(|w| hamming(w, &nu)).min().unwrap();
            prop_assert!(lhs <= rhs);

            if naive_min_distance(&c).is_none_or(|d| d >= 2) {
                let mut c1j = Vec::new();
                for w in c.words() {
                    for &k in &j {
                        for s in (0..c.q()).filter(|&s| s != w.get(k)) {
                            let n = w.nu(k, s).unwrap();
                            if !c.contains(&n) {
                                c1j.push(n.project(&j));
                            }
                        }
                    }
                }
                for n in neighbour_set(&pc) {
                    prop_assert!(c1j.contains(&n), "{:?} missing", n.to_vec());
                }
            }
            Ok(())
        },
    )
}

pub fn neighbour_transitive_codes_are_one_regular() -> Result<(), String> {
    run(example_and_conjugator(), |(e, y)| {
        let (c, _, _) = conjugated(e, &y);
        let r = check_s_regular(&c, 1, &Bounds::default()).unwrap();
        prop_assert!(r.verdict, "{}", r.to_json());
        Ok(())
    })
}

pub fn stabilizer_transitivity_triple() -> Result<(), String> {
    run(example_and_conjugator(), |(e, y)| {
        let (c, x, _) = conjugated(e, &y);
        let r = check_prop27(&c, &x, &Bounds::default()).unwrap();
        prop_assert!(r.verdict, "{}", r.to_json());
        Ok(())
    })
}

pub fn invariant_blocks_have_equal_projected_distances() -> Result<(), String> {
    run(example_and_conjugator(), |(e, y)| {
        let (c, x, parts) = conjugated(e, &y);
        for blocks in &parts {
            let r = check_projection_structure(&c, &x, blocks, &Bounds::default()).unwrap();
            prop_assert!(r.verdict, "{}", r.to_json());
            let d: Vec<_> = blocks
                .iter()
                .map(|b| naive_min_distance(&project(&c, b).unwrap()))
                .collect();
            prop_assert!(d.iter().all(|v| *v == d[0]), "{:?}", d);
        }
        Ok(())
    })
}

pub fn projected_distance_at_least_two() -> Result<(), String> {
    run(example_and_conjugator(), |(e, y)| {
        let (c, _, parts) = conjugated(e, &y);
        for b in parts.iter().flatten() {
            let p = project(&c, b).unwrap();
            if !p.is_complete() {
                prop_assert!(naive_min_distance(&p).is_none_or(|d| d >= 2));
            }
        }
        Ok(())
    })
}

pub type Suite = fn() -> Result<(), String>;

/// The randomized suites, by name.
#[allow(dead_code)]
pub const SUITES: &[(&str, Suite)] = &[
    ("shared_neighbour_trichotomy", shared_neighbour_trichotomy),
    ("neighbour_image_identity", neighbour_image_identity),
    ("distance_partition_equivariance", distance_partition_equivariance),
    ("wreath_action_compatibility", wreath_action_compatibility),
    ("chi_is_a_homomorphism", chi_is_a_homomorphism),
    ("projection_inclusions", projection_inclusions),
    (
        "neighbour_transitive_codes_are_one_regular",
        neighbour_transitive_codes_are_one_regular,
    ),
    ("stabilizer_transitivity_triple", stabilizer_transitivity_triple),
    (
        "invariant_blocks_have_equal_projected_distances",
        invariant_blocks_have_equal_projected_distances,
    ),
    ("projected_distance_at_least_two", projected_distance_at_least_two),
];
