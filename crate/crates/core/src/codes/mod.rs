//! Code constructions and the groups and fixtures they use.

mod basic;
pub mod fixtures;
mod groups;
mod perm_codes;

pub use basic::{
    all_code, c1_of_j, injective_code, normalize_coords, prod_code, project, rep_code, rep_l_code, weight_code,
};
pub use fixtures::{check_pair, fixture, validate_pair, Fixture, FixtureCheck, FIXTURE_NAMES};
pub use groups::{a_of, diag_top_group, example_code, example_group, perm_code_group, sigma_of, twisted_group, x_of};
pub use perm_codes::{
    alpha, alpha_inverse, cayley_code, perm_code, twisted_code, twisted_word, GroupTable, PairedAction,
};
