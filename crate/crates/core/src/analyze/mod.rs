//! Certifiers for neighbour transitivity and its consequences, and the
//! structural decomposition of neighbour transitive codes.
//!
//! Every certifier returns a [`Report`]: a `false` verdict carries a
//! counterexample that can be checked without this crate.

mod equivalence;
mod metrics;
mod projection;
mod report;
mod structure;
mod transitivity;

pub use equivalence::{equivalence_map, rep_equivalence_witness, rep_witness_report};
pub use metrics::{covering_radius_report, min_distance_report, partition_report};
pub use projection::{
    check_invariant_partition, check_projection_structure, classify_projection, BlockProjection, ProjectionKind,
};
pub use report::{element_json, perm_json, vertex_json, Report};
pub use structure::{
    classify_form, decompose, decompose_report, kernel_socle, support_partition, Decomposition, Form,
    FormClassification, Shape, SupportPartition,
};
pub use transitivity::{
    check_completely_regular, check_completely_transitive, check_neighbour_transitive, check_prop27, check_s_regular,
    orbit_check, SetOrbit,
};
