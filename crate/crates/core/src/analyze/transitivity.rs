use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::hamming::{distance_partition, neighbour_set, partition_levels, sphere, Code, Vertex};
use crate::perm::PermGroup;
use crate::wreath::WreathGroup;

use super::report::{vertex_json, Report};

/// How a vertex set sits under a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetOrbit {
    /// The set is one orbit.
    Single,
    /// Generator `generator` maps `vertex` in the set to `image` outside it.
    Leaves {
        generator: usize,
        vertex: Vertex,
        image: Vertex,
    },
    /// `b` lies in the set but not in the orbit of `a`.
    Split { a: Vertex, b: Vertex },
}

impl SetOrbit {
    pub fn is_single(&self) -> bool {
        matches!(self, SetOrbit::Single)
    }

    /// The counterexample, labelled with the name of the set.
    pub fn to_json(&self, set: &str) -> Value {
        match self {
            SetOrbit::Single => Value::Null,
            SetOrbit::Leaves {
                generator,
                vertex,
                image,
            } => json!({
                "kind": "generator_leaves_set",
                "set": set,
                "generator": generator,
                "vertex": vertex_json(vertex),
                "image": vertex_json(image),
            }),
            SetOrbit::Split { a, b } => json!({
                "kind": "split_orbit",
                "set": set,
                "a": vertex_json(a),
                "b": vertex_json(b),
            }),
        }
    }
}

/// Decides whether the sorted, nonempty vertex list `set` is a single
/// `x`-orbit.
pub fn orbit_check(x: &WreathGroup, set: &[Vertex], bound: u64) -> Result<SetOrbit> {
    let Some(first) = set.first() else {
        return Err(Error::InvalidParameter("empty vertex set".into()));
    };
    if set.len() as u64 > bound {
        return Err(Error::bound("orbit size", bound));
    }
    let leaves = || {
        set.par_iter()
            .find_map_first(|v| {
                x.generators().iter().enumerate().find_map(|(gi, g)| {
                    let w = g.apply(v).ok()?;
                    set.binary_search(&w).is_err().then(|| SetOrbit::Leaves {
                        generator: gi,
                        vertex: v.clone(),
                        image: w,
                    })
                })
            })
            .expect("some generator leaves the set")
    };
    match x.orbit(first, set.len() as u64 + 1) {
        Err(Error::BoundExceeded { .. }) => Ok(leaves()),
        Err(e) => Err(e),
        Ok(o) => {
            if o.points().iter().any(|p| set.binary_search(p).is_err()) {
                return Ok(leaves());
            }
            if o.len() < set.len() {
                let b = set
                    .iter()
                    .find(|v| !o.contains(v))
                    .expect("set is larger than the orbit");
                return Ok(SetOrbit::Split {
                    a: first.clone(),
                    b: b.clone(),
                });
            }
            Ok(SetOrbit::Single)
        }
    }
}

fn check_context(code: &Code, x: &WreathGroup) -> Result<()> {
    if code.m() != x.m() || code.q() != x.q() {
        return Err(Error::ContextMismatch(format!(
            "code lives in H({}, {}) but the group acts on H({}, {})",
            code.m(),
            code.q(),
            x.m(),
            x.q()
        )));
    }
    Ok(())
}

/// `C` and `C_1` are both `X`-orbits.
pub fn check_neighbour_transitive(code: &Code, x: &WreathGroup, bounds: &Bounds) -> Result<Report> {
    check_context(code, x)?;
    if code.is_complete() {
        return Err(Error::Precondition("the complete code has no neighbours".into()));
    }
    let report = Report::new("neighbour_transitive").stat("code_size", code.len());
    let on_code = orbit_check(x, code.words(), bounds.orbit)?;
    if !on_code.is_single() {
        return Ok(report.fail(on_code.to_json("code")));
    }
    let neighbours = neighbour_set(code);
    let report = report.stat("neighbour_size", neighbours.len());
    let on_neighbours = orbit_check(x, &neighbours, bounds.orbit)?;
    if !on_neighbours.is_single() {
        return Ok(report.fail(on_neighbours.to_json("neighbours")));
    }
    Ok(report
        .witness("code_representative", vertex_json(&code.words()[0]))
        .witness("neighbour_representative", vertex_json(&neighbours[0])))
}

/// Every cell of the distance partition is an `X`-orbit.
pub fn check_completely_transitive(code: &Code, x: &WreathGroup, bounds: &Bounds) -> Result<Report> {
    check_context(code, x)?;
    let partition = distance_partition(code, bounds.partition)?;
    let outcomes = partition
        .cells
        .par_iter()
        .map(|cell| orbit_check(x, cell.words(), bounds.orbit))
        .collect::<Result<Vec<_>>>()?;
    let report = Report::new("completely_transitive")
        .stat("rho", partition.rho())
        .stat("cell_sizes", partition.sizes());
    if let Some((i, bad)) = outcomes.iter().enumerate().find(|(_, o)| !o.is_single()) {
        let mut c = bad.to_json(&format!("cell {i}"));
        c["cell"] = json!(i);
        return Ok(report.fail(c));
    }
    let reps: Vec<Value> = partition.cells.iter().map(|c| vertex_json(&c.words()[0])).collect();
    Ok(report.witness("cell_representatives", reps))
}

/// For each cell, the distance distribution to `C` must not depend on the
/// vertex. Returns the common distributions or a counterexample.
fn equitable(code: &Code, cells: &[Vec<Vertex>]) -> std::result::Result<Vec<Vec<usize>>, Value> {
    let packed = code.packed();
    let mut arrays = Vec::with_capacity(cells.len());
    for (i, cell) in cells.iter().enumerate() {
        let first = packed.distribution(&packed.pack(&cell[0]));
        let bad = cell.par_iter().skip(1).find_map_first(|v| {
            let d = packed.distribution(&packed.pack(v));
            (d != first).then_some((v.clone(), d))
        });
        if let Some((v, d)) = bad {
            let k = (0..first.len()).find(|&k| first[k] != d[k]).unwrap();
            return Err(json!({
                "kind": "unequal_intersections",
                "cell": i,
                "k": k,
                "u": vertex_json(&cell[0]),
                "v": vertex_json(&v),
                "counts": [first[k], d[k]],
            }));
        }
        arrays.push(first);
    }
    Ok(arrays)
}

/// `s`-regularity: for `i ≤ s` and every `k`, `|Γ_k(ν) ∩ C|` is constant on
/// `C_i`.
pub fn check_s_regular(code: &Code, s: usize, bounds: &Bounds) -> Result<Report> {
    let levels = partition_levels(code, s, bounds.partition)?;
    let report = Report::new(&format!("{s}_regular")).stat("levels", levels.len());
    Ok(match equitable(code, &levels) {
        Ok(arrays) => report.witness("distance_distributions", arrays),
        Err(c) => report.fail(c),
    })
}

/// `ρ`-regularity, over the full distance partition.
pub fn check_completely_regular(code: &Code, bounds: &Bounds) -> Result<Report> {
    let partition = distance_partition(code, bounds.partition)?;
    let cells: Vec<Vec<Vertex>> = partition.cells.iter().map(|c| c.words().to_vec()).collect();
    let report = Report::new("completely_regular").stat("rho", partition.rho());
    Ok(match equitable(code, &cells) {
        Ok(arrays) => report.witness("distance_distributions", arrays),
        Err(c) => report.fail(c),
    })
}

/// For an `X`-neighbour transitive code with `δ ≥ 3`: `X_α` is transitive
/// on `Γ_1(α)` and on the coordinates; each `X_i` is transitive on `C`; each
/// `X_i^Q` is 2-transitive.
pub fn check_prop27(code: &Code, x: &WreathGroup, bounds: &Bounds) -> Result<Report> {
    let nt = check_neighbour_transitive(code, x, bounds)?;
    if !nt.verdict {
        return Err(Error::Precondition("the code is not neighbour transitive".into()));
    }
    let delta = code.min_distance()?;
    if delta < 3 {
        return Err(Error::Precondition(format!("minimum distance {delta} is below 3")));
    }
    let (m, q) = (x.m(), x.q());
    let alpha = &code.words()[0];
    let orbit = x.orbit(alpha, bounds.orbit)?;
    let stab_perm = PermGroup::generated_by(m * q, orbit.schreier_generators().map(|s| s.to_block_perm()))?;
    let stab = WreathGroup::new(
        m,
        q,
        stab_perm
            .generators()
            .iter()
            .map(|p| crate::wreath::WreathElement::from_block_perm(m, q, p))
            .collect::<Result<_>>()?,
    )?;
    let report = Report::new("prop27").stat("stabilizer_order", stab.order());

    let ball = sphere(alpha, 1)?;
    let on_sphere = orbit_check(&stab, &ball, bounds.orbit)?;
    if !on_sphere.is_single() {
        return Ok(report.fail(on_sphere.to_json("neighbours of the base codeword")));
    }
    let top = stab.top_group();
    if !top.is_transitive() {
        return Ok(report.fail(json!({
            "kind": "stabilizer_intransitive_on_coordinates",
            "orbit_of_0": top.orbit(0)?,
        })));
    }
    for i in 0..m {
        let xi = x.entry_stabilizer(i)?;
        let on_code = orbit_check(&xi, code.words(), bounds.orbit)?;
        if !on_code.is_single() {
            let mut c = on_code.to_json("code");
            c["entry"] = json!(i);
            return Ok(report.fail(c));
        }
        let local = x.alphabet_group(i)?;
        if !local.is_2transitive() {
            return Ok(report.fail(json!({
                "kind": "alphabet_group_not_2_transitive",
                "entry": i,
                "generators": local.generators().iter().map(|g| g.images().to_vec()).collect::<Vec<_>>(),
            })));
        }
    }
    Ok(report
        .witness("base_codeword", vertex_json(alpha))
        .witness("stabilizer_transitive_on_sphere", true)
        .witness("stabilizer_transitive_on_coordinates", true)
        .witness("entry_stabilizers_transitive_on_code", true)
        .witness("alphabet_groups_2_transitive", true))
}
