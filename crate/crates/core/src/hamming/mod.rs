//! The Hamming graph `H(m,q)`: vertices, codes, spheres and distance partitions.

mod code;
pub mod io;
mod neighbours;
mod vertex;

pub use code::{space_size, Code, Packed};
pub use neighbours::{
    covering_radius, distance_partition, neighbour_set, neighbours_in_coords, partition_levels, partition_sizes,
    sphere, DistancePartition,
};
pub use vertex::{Vertex, MAX_Q};
