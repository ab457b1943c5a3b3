//! Inputs shared by the benchmarks.

use qproj_core::geometry::{build_boolean_geometry, build_projective_space};
use qproj_core::IncidenceGeometry;

/// Geometries validated in the axiom benchmarks, with labels.
pub fn validation_fixtures() -> Vec<(&'static str, IncidenceGeometry)> {
    vec![
        ("fano", build_projective_space(2, 2).expect("P^2(F_2)")),
        ("p2_f4", build_projective_space(4, 2).expect("P^2(F_4)")),
        ("p3_f2", build_projective_space(2, 3).expect("P^3(F_2)")),
        ("boolean_6", build_boolean_geometry(6).expect("Boolean(6)")),
    ]
}

/// Geometries small enough for collineation search.
pub fn collineation_fixtures() -> Vec<(&'static str, IncidenceGeometry)> {
    vec![
        ("fano", build_projective_space(2, 2).expect("P^2(F_2)")),
        ("boolean_6", build_boolean_geometry(6).expect("Boolean(6)")),
        ("boolean_8", build_boolean_geometry(8).expect("Boolean(8)")),
    ]
}
