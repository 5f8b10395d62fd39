//! The automorphism group `S_q wr S_m` of `H(m,q)` and its subgroups.

mod element;
mod group;
pub mod io;

pub use element::{neighbour_image_check, WreathElement};
pub use group::{Orbit, TopChain, WreathGroup};
