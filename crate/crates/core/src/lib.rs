//! Exact q-analogues and finite projective geometry.
//!
//! Gaussian binomial coefficients are computed as polynomials in `q` by two
//! independent routes and checked against three of their interpretations:
//! the noncommutative binomial theorem for `yx = qxy`, subspace counts of
//! `F_q^n`, and lattice paths weighted by area. Finite projective geometries
//! are handled purely at the incidence level (points, subspaces, dimension),
//! which makes the Boolean algebra of subsets of a set a projective geometry
//! of order 1 alongside the projective spaces `P^n(F_q)`.

pub mod error;
pub mod fqlinalg;
pub mod geometry;
pub mod gfarith;
pub mod grouporders;
pub mod limits;
pub mod paths;
pub mod planes;
pub mod qcalc;
pub mod qword;

pub use error::{Error, Result};
pub use fqlinalg::{MatrixFq, SubspaceCanonical};
pub use geometry::{AxiomReport, IncidenceGeometry};
pub use gfarith::{FieldElement, FiniteField};
pub use limits::Limits;
pub use paths::LatticePath;
pub use planes::{BruckRyser, PlaneStructure};
pub use qcalc::QPoly;
pub use qword::NoncommPoly;
