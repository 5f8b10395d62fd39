use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bounds::Bounds;
use crate::codes::{c1_of_j, normalize_coords, project, rep_code};
use crate::error::{Error, Result};
use crate::hamming::{neighbour_set, Code, Vertex};
use crate::wreath::WreathGroup;

use super::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProjectionKind {
    Repetition,
    Complete,
    FrequencyArray { p: usize },
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockProjection {
    pub coords: Vec<usize>,
    pub kind: ProjectionKind,
    pub size: usize,
    pub min_distance: Option<usize>,
    /// `π_J(C)` is complete or `π_J(C)_1 = π_J(C_1(J))`.
    pub neighbour_dichotomy: bool,
}

pub fn classify_projection(code: &Code, coords: &[usize]) -> Result<BlockProjection> {
    let coords = normalize_coords(code.m(), coords)?;
    let proj = project(code, &coords)?;
    let k = coords.len();
    let kind = if proj.is_complete() {
        ProjectionKind::Complete
    } else if proj == rep_code(k, code.q())? {
        ProjectionKind::Repetition
    } else if let Some(p) = proj.is_frequency_array() {
        ProjectionKind::FrequencyArray { p }
    } else {
        ProjectionKind::Other
    };
    let min_distance = if proj.len() >= 2 {
        Some(proj.min_distance()?)
    } else {
        None
    };
    let neighbour_dichotomy = kind == ProjectionKind::Complete || {
        let mut projected: Vec<Vertex> = c1_of_j(code, &coords)?.par_iter().map(|v| v.project(&coords)).collect();
        projected.par_sort_unstable();
        projected.dedup();
        projected == neighbour_set(&proj)
    };
    Ok(BlockProjection {
        coords,
        kind,
        size: proj.len(),
        min_distance,
        neighbour_dichotomy,
    })
}

/// Checks that `blocks` is an `X`-invariant partition of the coordinates.
pub fn check_invariant_partition(x: &WreathGroup, blocks: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let m = x.m();
    let blocks = blocks
        .iter()
        .map(|b| normalize_coords(m, b))
        .collect::<Result<Vec<_>>>()?;
    let mut owner = vec![usize::MAX; m];
    for (i, b) in blocks.iter().enumerate() {
        for &j in b {
            if owner[j] != usize::MAX {
                return Err(Error::InvalidParameter(format!("coordinate {j} lies in two blocks")));
            }
            owner[j] = i;
        }
    }
    if let Some(j) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::InvalidParameter(format!("coordinate {j} lies in no block")));
    }
    for g in x.generators() {
        for b in &blocks {
            let target = owner[g.top().image(b[0])];
            if b.iter().any(|&j| owner[g.top().image(j)] != target) || blocks[target].len() != b.len() {
                return Err(Error::Precondition(format!("block {b:?} is not mapped to a block")));
            }
        }
    }
    Ok(blocks)
}

/// For each block `J`: the type of `π_J(C)`, the neighbour dichotomy, equal
/// minimum distances across blocks, and `δ(π_J(C)) ≥ 2` unless complete.
pub fn check_projection_structure(
    code: &Code,
    x: &WreathGroup,
    blocks: &[Vec<usize>],
    _bounds: &Bounds,
) -> Result<Report> {
    let blocks = check_invariant_partition(x, blocks)?;
    let parts = blocks
        .par_iter()
        .map(|b| classify_projection(code, b))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("projection_structure").witness("blocks", &parts);
    if let Some(i) = parts.iter().position(|b| !b.neighbour_dichotomy) {
        return Ok(report.fail(json!({"kind": "neighbour_dichotomy_fails", "block": i})));
    }
    if let Some(i) = parts
        .iter()
        .position(|b| b.kind != ProjectionKind::Complete && b.min_distance.is_some_and(|d| d < 2))
    {
        return Ok(report.fail(json!({"kind": "distance_below_2", "block": i})));
    }
    let distances: Vec<Option<usize>> = parts.iter().map(|b| b.min_distance).collect();
    if let Some(i) = distances.iter().position(|d| *d != distances[0]) {
        return Ok(report.fail(json!({
            "kind": "unequal_block_distances",
            "blocks": [0, i],
            "distances": [distances[0], distances[i]],
        })));
    }
    report = report.stat("block_count", parts.len());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{diag_top_group, example_code, example_group, fixture, prod_code, twisted_code, twisted_group};
    use crate::perm::PermGroup;

    #[test]
    fn example_blocks_project_to_symmetric_permutation_codes() {
        let c = example_code(5, 2, 1_000_000).unwrap();
        let x = example_group(5, 2).unwrap();
        let blocks: Vec<Vec<usize>> = vec![(0..5).collect(), (5..10).collect()];
        let r = check_projection_structure(&c, &x, &blocks, &Bounds::default()).unwrap();
        assert!(r.verdict);
        let b0 = classify_projection(&c, &blocks[0]).unwrap();
        assert_eq!(b0.kind, ProjectionKind::FrequencyArray { p: 1 });
        assert_eq!(b0.size, 120);
        assert_eq!(b0.min_distance, Some(2));
    }

    #[test]
    fn product_blocks_are_repetition_codes() {
        let x = diag_top_group(&PermGroup::symmetric(2), 3).wreath_power(2).unwrap();
        let c = prod_code(&rep_code(3, 2).unwrap(), 2, 100).unwrap();
        let blocks = vec![vec![0, 1, 2], vec![3, 4, 5]];
        let r = check_projection_structure(&c, &x, &blocks, &Bounds::default()).unwrap();
        assert!(r.verdict);
        assert_eq!(
            classify_projection(&c, &blocks[1]).unwrap().kind,
            ProjectionKind::Repetition
        );
        let bad = vec![vec![0, 1, 3], vec![2, 4, 5]];
        assert!(check_projection_structure(&c, &x, &bad, &Bounds::default()).is_err());
    }

    #[test]
    fn twisted_halves() {
        let f = fixture("a6_pair", 1_000_000).unwrap();
        let x = twisted_group(&f.pair, f.normalizer.as_ref().unwrap()).unwrap();
        let c = twisted_code(&f.pair, 1_000_000).unwrap();
        let halves: Vec<Vec<usize>> = vec![(0..6).collect(), (6..12).collect()];
        let r = check_projection_structure(&c, &x, &halves, &Bounds::default()).unwrap();
        assert!(r.verdict);
        for h in &halves {
            assert_eq!(
                classify_projection(&c, h).unwrap().kind,
                ProjectionKind::FrequencyArray { p: 1 }
            );
        }
    }
}
