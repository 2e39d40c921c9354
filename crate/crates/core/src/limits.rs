//! Size caps guarding the exhaustive loops.
//!
//! Every check in this crate enumerates its whole search space. When a
//! structure is too large for that, the operation fails with
//! `SizeCapExceeded` instead of sampling.

/// Configurable caps. `Limits::default()` matches the documented defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum elements of a poset, and objects of a category.
    pub max_elements: usize,
    /// Maximum size of a powerset universe (`|U|`, `|X|`, `|Y|`).
    pub max_universe: usize,
    /// Maximum arrows of a generated category.
    pub max_arrows: usize,
    /// Maximum composable triples visited by the associativity check.
    pub max_triples: usize,
    /// Maximum free-group generators.
    pub max_generators: usize,
    /// Maximum order of a finite target group.
    pub max_group_order: usize,
    /// Maximum reduced-word length explored in the free group.
    pub max_depth: usize,
    /// Largest prime accepted by the vector-space brain.
    pub max_prime: u32,
    /// Largest component dimension accepted by the vector-space brain.
    pub max_dim: usize,
    /// Largest number of components accepted by the vector-space brain.
    pub max_components: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 4096,
            max_universe: 6,
            max_arrows: 100_000,
            max_triples: 5_000_000,
            max_generators: 3,
            max_group_order: 12,
            max_depth: 6,
            max_prime: 3,
            max_dim: 2,
            max_components: 3,
        }
    }
}

/// A cap that was exceeded: which one, the requested size and the cap.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{what} of {size} exceeds the cap of {cap}")]
pub struct CapExceeded {
    pub what: &'static str,
    pub size: usize,
    pub cap: usize,
}

pub(crate) fn ensure(what: &'static str, size: usize, cap: usize) -> Result<(), CapExceeded> {
    if size > cap {
        Err(CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
