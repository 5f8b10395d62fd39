use serde::{Deserialize, Serialize};

/// Guard rails for the exhaustive parts of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Maximum group order for element enumeration.
    pub enumeration: u64,
    /// Maximum size of a vertex orbit.
    pub orbit: u64,
    /// Maximum number of vertices visited by a distance partition.
    pub partition: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: 1_000_000,
            orbit: 10_000_000,
            partition: 100_000_000,
        }
    }
}

impl Bounds {
    pub const ENV_ENUMERATION: &'static str = "NTCODES_ENUM_BOUND";
    pub const ENV_ORBIT: &'static str = "NTCODES_ORBIT_BOUND";
    pub const ENV_PARTITION: &'static str = "NTCODES_PARTITION_BOUND";

    /// Defaults overridden by the `NTCODES_*_BOUND` environment variables.
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        let read = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse::<u64>().ok());
        if let Some(v) = read(Self::ENV_ENUMERATION).filter(|&v| v > 0) {
            b.enumeration = v;
        }
        if let Some(v) = read(Self::ENV_ORBIT).filter(|&v| v > 0) {
            b.orbit = v;
        }
        if let Some(v) = read(Self::ENV_PARTITION).filter(|&v| v > 0) {
            b.partition = v;
        }
        b
    }
}
