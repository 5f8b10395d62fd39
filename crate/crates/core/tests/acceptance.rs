//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

mod suites;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ntcodes::analyze::{
    check_completely_transitive, check_neighbour_transitive, decompose, rep_equivalence_witness, Shape,
};
use ntcodes::codes::{
    all_code, cayley_code, diag_top_group, example_code, example_group, fixture, perm_code, prod_code, project,
    rep_code, twisted_code, validate_pair, Fixture, GroupTable, PairedAction, FIXTURE_NAMES,
};
use ntcodes::hamming::{covering_radius, Code};
use ntcodes::perm::{PermGroup, Permutation};
use ntcodes::wreath::WreathGroup;
use ntcodes::Bounds;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn cycles(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).unwrap()
}

fn hamming(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn pairwise_min_distance(c: &Code) -> usize {
    let w: Vec<Vec<usize>> = c.words().iter().map(|v| v.to_vec()).collect();
    let mut best = usize::MAX;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            best = best.min(hamming(&w[i], &w[j]));
        }
    }
    best
}

fn image(c: &Code, y: &ntcodes::wreath::WreathElement) -> Result<Code, String> {
    c.map(c.m(), c.q(), |w| y.apply(w).unwrap()).map_err(err)
}

fn repetition_parameters() -> Outcome {
    let b = Bounds::default();
    for (m, q) in [(3, 2), (5, 3), (4, 4)] {
        let c = rep_code(m, q).map_err(err)?;
        let d = c.min_distance().map_err(err)?;
        ensure(
            d == m && pairwise_min_distance(&c) == m,
            format!("δ(Rep({m},{q})) = {d}"),
        )?;
        let x = diag_top_group(&PermGroup::symmetric(q), m);
        let r = check_neighbour_transitive(&c, &x, &b).map_err(err)?;
        ensure(r.verdict, format!("Rep({m},{q}) not neighbour transitive"))?;
    }
    Ok("δ = m and NT for (3,2), (5,3), (4,4)".into())
}

fn all_code_parameters() -> Outcome {
    let c = all_code(2, 3, 1000).map_err(err)?;
    let d = c.min_distance().map_err(err)?;
    let rho = covering_radius(&c, 1000).map_err(err)?;
    ensure(d == 2 && rho == 4, format!("δ = {d}, ρ = {rho}"))?;
    Ok(format!("|All(2,3)| = {}, δ = 2, ρ = 4", c.len()))
}

fn complete_transitivity_split() -> Outcome {
    let b = Bounds::default();
    let x2 = diag_top_group(&PermGroup::symmetric(2), 5);
    let ct2 = check_completely_transitive(&rep_code(5, 2).map_err(err)?, &x2, &b).map_err(err)?;
    let x3 = diag_top_group(&PermGroup::symmetric(3), 4);
    let ct3 = check_completely_transitive(&rep_code(4, 3).map_err(err)?, &x3, &b).map_err(err)?;
    ensure(
        ct2.verdict && !ct3.verdict,
        format!("Rep(5,2): {}, Rep(4,3): {}", ct2.verdict, ct3.verdict),
    )?;
    Ok("Rep(5,2) CT, Rep(4,3) not CT".into())
}

fn repetition_witnesses() -> Outcome {
    let c5 = PermGroup::new(5, vec![cycles(5, "(0 1 2 3 4)")]).map_err(err)?;
    let s3 = GroupTable::from_perm_group(&PermGroup::symmetric(3), 100).map_err(err)?;
    let cases = [
        ("C(<(0 1 2 3 4)>)", perm_code(&c5, 100).map_err(err)?, 5),
        (
            "C(Z6)",
            cayley_code(&GroupTable::cyclic(6).map_err(err)?, &[0, 1, 2, 3, 4, 5]).map_err(err)?,
            6,
        ),
        ("C(S3)", cayley_code(&s3, &[0, 1, 2, 3, 4, 5]).map_err(err)?, 6),
    ];
    for (name, c, q) in cases {
        let y = rep_equivalence_witness(&c).map_err(err)?;
        ensure(
            image(&c, &y)? == rep_code(q, q).map_err(err)?,
            format!("{name} is not mapped onto Rep({q},{q})"),
        )?;
    }
    Ok("witnesses map onto Rep(5,5), Rep(6,6), Rep(6,6)".into())
}

/// Collineations of the Fano plane with lines `{i, i+1, i+3} mod 7`.
fn fano_group() -> Result<PermGroup, String> {
    let line = |g: &Permutation, i: usize| {
        let mut l: Vec<usize> = [i, i + 1, i + 3].iter().map(|&p| g.image(p % 7)).collect();
        l.sort_unstable();
        l
    };
    let lines: Vec<Vec<usize>> = (0..7).map(|i| line(&Permutation::identity(7), i)).collect();
    let collineations = PermGroup::symmetric(7)
        .elements(5040)
        .map_err(err)?
        .into_iter()
        .filter(|g| (0..7).all(|i| lines.contains(&line(g, i))));
    PermGroup::generated_by(7, collineations).map_err(err)
}

fn minimal_degree_identity() -> Outcome {
    let psl = fano_group()?;
    ensure(psl.order() == 168, format!("|PSL(3,2)| = {}", psl.order()))?;
    let md = psl.minimal_degree(1000).map_err(err)?;
    ensure(md == 4, format!("minimal degree of PSL(3,2) = {md}"))?;
    let mut found = Vec::new();
    for (name, t) in [
        ("A5", PermGroup::alternating(5)),
        ("S5", PermGroup::symmetric(5)),
        ("PSL(3,2)", psl),
    ] {
        let els = t.elements(1000).map_err(err)?;
        let naive = els
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| g.moved_count())
            .min()
            .unwrap();
        let scan = pairwise_min_distance(&perm_code(&t, 1000).map_err(err)?);
        let md = t.minimal_degree(1000).map_err(err)?;
        ensure(
            scan == md && naive == md,
            format!("{name}: scan {scan}, minimal degree {md}, naive {naive}"),
        )?;
        found.push(format!("{name} {md}"));
    }
    Ok(format!("δ(C(T)) = minimal degree: {}", found.join(", ")))
}

/// `min_{t ≠ 1} (|supp t| + |supp t^τ|)`.
fn moved_points_distance(pa: &PairedAction) -> Result<usize, String> {
    let els = pa.group1().elements(1_000_000).map_err(err)?;
    let mut best = usize::MAX;
    for t in els.iter().filter(|t| !t.is_identity()) {
        best = best.min(t.moved_count() + pa.tau(t).map_err(err)?.moved_count());
    }
    Ok(best)
}

fn twisted_distances() -> Outcome {
    let mut found = Vec::new();
    for (name, want) in [("a6_pair", 8), ("s6_pair", 8), ("psl2_11_pair", 16)] {
        let f = fixture(name, 1_000_000).map_err(err)?;
        let formula = moved_points_distance(&f.pair)?;
        let delta = twisted_code(&f.pair, 1_000_000)
            .map_err(err)?
            .min_distance()
            .map_err(err)?;
        ensure(
            formula == want && delta == want,
            format!("{name}: formula {formula}, δ {delta}"),
        )?;
        if name == "a6_pair" {
            let scan = pairwise_min_distance(&twisted_code(&f.pair, 1_000_000).map_err(err)?);
            ensure(scan == want, format!("a6 pairwise scan gives {scan}"))?;
        }
        found.push(format!("{name} {want}"));
    }
    Ok(found.join(", "))
}

fn twisted_distances_extended() -> Outcome {
    let mut found = Vec::new();
    for (name, want) in [("a7_15_pair", 24), ("m12_pair", 16)] {
        let f = fixture(name, 1_000_000).map_err(err)?;
        let formula = moved_points_distance(&f.pair)?;
        ensure(formula == want, format!("{name}: formula {formula}"))?;
        found.push(format!("{name} {want}"));
    }
    Ok(found.join(", "))
}

fn worked_example() -> Outcome {
    let b = Bounds::default();
    let c = example_code(5, 2, b.enumeration).map_err(err)?;
    let x: WreathGroup = example_group(5, 2).map_err(err)?;
    ensure(c.len() == 7200, format!("|C| = {}", c.len()))?;
    let d = c.min_distance().map_err(err)?;
    ensure(d == 3, format!("δ(C) = {d}"))?;
    ensure(
        check_neighbour_transitive(&c, &x, &b).map_err(err)?.verdict,
        "C is not X-neighbour transitive",
    )?;
    let k = x.base_kernel().order();
    ensure(k == 7200, format!("|K| = {k}"))?;
    let s5 = perm_code(&PermGroup::symmetric(5), 1000).map_err(err)?;
    for j in [[0, 1, 2, 3, 4], [5, 6, 7, 8, 9]] {
        let p = project(&c, &j).map_err(err)?;
        ensure(p == s5, format!("π_{j:?}(C) is not C(S5)"))?;
        ensure(p.min_distance().map_err(err)? == 2, "projected distance is not 2")?;
    }
    let dec = decompose(&c, &x, &b).map_err(err)?;
    ensure(dec.shape == Shape::ProdRepPerm, format!("shape {:?}", dec.shape))?;
    let a5 = perm_code(&PermGroup::alternating(5), 1000).map_err(err)?;
    ensure(
        dec.delta == prod_code(&a5, 2, 1_000_000).map_err(err)?,
        "Δ is not Prod_2(C(A5))",
    )?;
    ensure(dec.delta.len() == 3600, format!("|Δ| = {}", dec.delta.len()))?;
    ensure(
        dec.translates.len() == 2,
        format!("{} translates", dec.translates.len()),
    )?;
    let parts = dec
        .translates
        .iter()
        .map(|t| image(&dec.delta, t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut union: Vec<_> = parts.iter().flat_map(|p| p.words().iter().cloned()).collect();
    let total = union.len();
    union.sort();
    union.dedup();
    ensure(
        total == 7200 && union == c.words(),
        "translates are not a disjoint cover of C",
    )?;
    Ok("|C| = 7200, δ = 3, NT, |K| = 7200, π_J(C) = C(S5), Δ = Prod_2(C(A5)), 2 disjoint translates".into())
}

fn property_suites() -> Outcome {
    suites::examples_are_neighbour_transitive();
    for (name, suite) in suites::SUITES {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites × {} cases", suites::SUITES.len(), suites::CASES))
}

fn corrupted(f: &Fixture) -> bool {
    let mut images = f.pair.images().to_vec();
    images[0] = images[0].then(&cycles(f.pair.q(), "(0 1)"));
    PairedAction::new(f.pair.group1().clone(), images)
        .and_then(|pa| validate_pair(&pa, f.expected_order))
        .is_err()
}

fn fixture_validation() -> Outcome {
    for name in FIXTURE_NAMES {
        let f = fixture(name, 1_000_000).map_err(err)?;
        validate_pair(&f.pair, f.expected_order).map_err(|e| format!("{name}: {e}"))?;
        ensure(f.check.passed(f.expected_order), format!("{name}: stored check failed"))?;
        ensure(corrupted(&f), format!("{name}: corrupted generator still validates"))?;
    }
    Ok(format!(
        "{} fixtures validate, corrupted copies rejected",
        FIXTURE_NAMES.len()
    ))
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
    optional: bool,
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let criteria = [
        Criterion {
            id: "1",
            name: "repetition parameters",
            limit: s(1),
            run: repetition_parameters,
            optional: false,
        },
        Criterion {
            id: "2",
            name: "All(2,3) parameters",
            limit: s(1),
            run: all_code_parameters,
            optional: false,
        },
        Criterion {
            id: "3",
            name: "complete transitivity split",
            limit: s(10),
            run: complete_transitivity_split,
            optional: false,
        },
        Criterion {
            id: "4",
            name: "repetition witnesses",
            limit: s(1),
            run: repetition_witnesses,
            optional: false,
        },
        Criterion {
            id: "5",
            name: "minimal degree identity",
            limit: s(30),
            run: minimal_degree_identity,
            optional: false,
        },
        Criterion {
            id: "6",
            name: "twisted distances",
            limit: s(120),
            run: twisted_distances,
            optional: false,
        },
        Criterion {
            id: "6+",
            name: "twisted distances, extended",
            limit: s(600),
            run: twisted_distances_extended,
            optional: true,
        },
        Criterion {
            id: "7",
            name: "worked example",
            limit: s(300),
            run: worked_example,
            optional: false,
        },
        Criterion {
            id: "8",
            name: "property suites",
            limit: s(600),
            run: property_suites,
            optional: false,
        },
        Criterion {
            id: "9",
            name: "fixture validation",
            limit: s(30),
            run: fixture_validation,
            optional: false,
        },
    ];
    let mut failed = false;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= c.limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.2?}, limit {:?}", c.limit))
            }
        });
        let tag = if c.optional { " (optional)" } else { "" };
        match outcome {
            Ok(msg) => println!("criterion {}: PASS{tag} {} [{elapsed:.2?}]: {msg}", c.id, c.name),
            Err(msg) => {
                println!("criterion {}: FAIL{tag} {} [{elapsed:.2?}]: {msg}", c.id, c.name);
                failed |= !c.optional;
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
