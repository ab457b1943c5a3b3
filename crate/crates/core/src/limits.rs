/// Caps guarding the exhaustive routines against accidental blowups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest field order accepted by [`crate::gfarith::make_field`].
    pub max_field_q: u64,
    /// Largest number of subspaces a single enumeration may produce.
    pub subspace_budget: u64,
    /// Largest point count for Boolean geometries (2^n subspaces).
    pub boolean_points: usize,
    /// Largest point count for brute-force collineation search.
    pub collineation_points: usize,
    /// Largest m + n for lattice-path enumeration.
    pub path_steps: u32,
    /// Largest q^(n^2) for brute-force matrix group enumeration.
    pub matrix_space: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_field_q: 16,
            subspace_budget: 1_000_000,
            boolean_points: 12,
            collineation_points: 9,
            path_steps: 24,
            matrix_space: 19_683,
        }
    }
}
