use rayon::prelude::*;

use crate::bounds::Bounds;
use crate::error::Result;
use crate::hamming::{distance_partition, Code};

use super::report::{vertex_json, Report};

/// Minimum distance with a pair of codewords attaining it.
pub fn min_distance_report(code: &Code) -> Result<Report> {
    let report = Report::new("min_distance").stat("code_size", code.len());
    if code.len() < 2 {
        return Ok(report.witness("min_distance", None::<usize>));
    }
    let delta = code.min_distance()?;
    let words = code.words();
    let pair = (0..words.len())
        .into_par_iter()
        .find_map_first(|i| {
            words[i + 1..]
                .iter()
                .find(|w| words[i].distance_unchecked(w) == delta)
                .map(|w| (i, w))
        })
        .expect("the minimum is attained");
    Ok(report
        .witness("min_distance", delta)
        .witness("pair", [vertex_json(&words[pair.0]), vertex_json(pair.1)]))
}

/// Covering radius with a vertex at that distance from the code.
pub fn covering_radius_report(code: &Code, bounds: &Bounds) -> Result<Report> {
    let partition = distance_partition(code, bounds.partition)?;
    let far = partition.cells.last().expect("at least the code itself").words()[0].clone();
    Ok(Report::new("covering_radius")
        .witness("covering_radius", partition.rho())
        .witness("farthest_vertex", vertex_json(&far))
        .stat("space_size", code.space_size()))
}

pub fn partition_report(code: &Code, bounds: &Bounds) -> Result<Report> {
    let partition = distance_partition(code, bounds.partition)?;
    Ok(Report::new("distance_partition")
        .witness("cell_sizes", partition.sizes())
        .witness("rho", partition.rho()))
}
