//! Critical determinants and critical loci of planar convex domains that are
//! symmetric about the origin.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: domains described by their gauge (Minkowski functional).
//! - [`lattice`]: rank-2 lattices, Gauss–Lagrange reduction, enumeration and
//!   admissibility.
//! - [`critical`]: inscribed-hexagon search for the critical determinant and
//!   the parameterization of the critical locus.
//! - [`construct`]: tangent-triangle domains whose critical locus is a
//!   prescribed closed subset of a circle of critical lattices.
//! - [`analysis`]: box-counting dimension and coordinates on the space of
//!   lattices.
//! - [`dirichlet`]: continued fractions, Dirichlet-type solvability and the
//!   diagonal flow.
//! - [`io`]: textual formats shared by the command-line front end.

pub mod analysis;
pub mod construct;
pub mod critical;
pub mod dirichlet;
mod error;
pub mod geometry;
pub mod io;
pub mod lattice;
mod quadrature;
pub mod selftest;

pub use error::{Error, Result};

pub use analysis::{box_dimension_locus, box_dimension_param, embed_lattice, BoxCountSeries};
pub use construct::{
    build_construction, cantor_gaps, delta_preserved, verify_locus, ClosedSet01,
    CompositeDomain, DeltaCheck, TangentTriangle, VerifyReport,
};
pub use critical::{
    critical_search, equivariance_check, locus_parameterize, solve_companion, CriticalArc,
    CriticalReport, HexagonCandidate, LocusCurve, LocusOptions, LocusPoint, MinimizerCluster,
    SearchOptions,
};
pub use dirichlet::{
    continued_fraction, dirichlet_solvable, flow_trajectory, CFExpansion, DirichletOutcome,
    FlowSample, PsiFamily,
};
pub use geometry::{BoundaryPoint, ConvexDomain, Region, Shape};
pub use lattice::{Lattice2, LatticePoint};

/// Column vectors in the plane.
pub type Vec2 = nalgebra::Vector2<f64>;
/// 2×2 real matrices acting on [`Vec2`].
pub type Mat2 = nalgebra::Matrix2<f64>;

/// Signed area of the parallelogram spanned by `a` and `b`.
#[inline]
pub fn cross(a: &Vec2, b: &Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Angle of `v` in `[0, 2π)`.
#[inline]
pub fn angle_of(v: &Vec2) -> f64 {
    let a = v.y.atan2(v.x);
    if a < 0.0 {
        // tiny negative angles would round up to 2π
        let b = a + std::f64::consts::TAU;
        if b < std::f64::consts::TAU {
            b
        } else {
            0.0
        }
    } else {
        a
    }
}

/// Unit vector at angle `theta`.
#[inline]
pub fn unit(theta: f64) -> Vec2 {
    let (s, c) = theta.sin_cos();
    Vec2::new(c, s)
}
