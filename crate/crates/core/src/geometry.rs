//! Bounded convex domains symmetric about the origin.
//!
//! Every domain is described by its gauge `ν(x) = inf{λ > 0 : x ∈ λK}`. The
//! domain itself is the open unit ball `{ν < 1}` and its boundary is the level
//! set `{ν = 1}`; radial functions, boundary points and classification are all
//! derived from the gauge.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use crate::construct::CompositeDomain;
use crate::{angle_of, cross, quadrature, unit, Error, Mat2, Result, Vec2};

/// Default relative width of the band treated as "on the boundary".
pub const DEFAULT_TOL_BOUNDARY: f64 = 1e-9;

/// Relative tolerance used to decide that a boundary point is a corner.
const CORNER_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Interior,
    Boundary,
    Exterior,
}

/// A point of the boundary together with its polar angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub point: Vec2,
}

/// An invertible linear map stored with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    g: Mat2,
    g_inv: Mat2,
}

impl LinearMap {
    pub fn new(g: Mat2) -> Result<Self> {
        let det = g.determinant();
        let scale = g.norm_squared().max(f64::MIN_POSITIVE);
        if !det.is_finite() || det.abs() <= 1e-12 * scale {
            return Err(Error::InvalidDomain(format!(
                "matrix {:?} is not invertible",
                g.as_slice()
            )));
        }
        let g_inv = g.try_inverse().ok_or_else(|| {
            Error::InvalidDomain("matrix inversion failed".to_string())
        })?;
        Ok(Self { g, g_inv })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.g
    }

    pub fn inverse(&self) -> &Mat2 {
        &self.g_inv
    }

    pub fn det(&self) -> f64 {
        self.g.determinant()
    }

    /// Image of a tangent direction, renormalised and kept counter-clockwise.
    fn push_tangent(&self, t: &Vec2) -> Vec2 {
        let mut v = self.g * t;
        if self.det() < 0.0 {
            v = -v;
        }
        v.normalize()
    }
}

/// Centrally symmetric hexagon, vertices in counter-clockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
    /// `functionals[k]` equals 1 on the edge from `vertices[k]` to `vertices[k + 1]`.
    functionals: Vec<Vec2>,
}

impl Polygon {
    /// Symmetric hexagon with vertices `±v[0], ±v[1], ±v[2]`.
    pub fn hexagon(v: [Vec2; 3]) -> Result<Self> {
        let mut vertices: Vec<Vec2> = v.iter().flat_map(|p| [*p, -*p]).collect();
        if vertices.iter().any(|p| !p.x.is_finite() || !p.y.is_finite() || p.norm() == 0.0) {
            return Err(Error::InvalidDomain("hexagon vertices must be finite and nonzero".into()));
        }
        vertices.sort_by(|a, b| angle_of(a).total_cmp(&angle_of(b)));
        let n = vertices.len();
        let scale = vertices.iter().map(|p| p.norm_squared()).fold(0.0, f64::max);
        for k in 0..n {
            let a = vertices[k];
            let b = vertices[(k + 1) % n];
            let c = vertices[(k + 2) % n];
            if cross(&a, &b) <= 1e-12 * scale || cross(&(b - a), &(c - b)) <= 1e-9 * scale {
                return Err(Error::InvalidDomain(
                    "hexagon vertices are not in strictly convex position".into(),
                ));
            }
        }
        let functionals = (0..n)
            .map(|k| {
                let a = vertices[k];
                let b = vertices[(k + 1) % n];
                Vec2::new(b.y - a.y, a.x - b.x) / cross(&a, &b)
            })
            .collect();
        Ok(Self { vertices, functionals })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    fn gauge(&self, x: &Vec2) -> f64 {
        self.functionals.iter().map(|a| a.dot(x)).fold(0.0, f64::max)
    }

    fn tangent_at(&self, x: &Vec2) -> Option<Vec2> {
        let level = self.gauge(x);
        let n = self.vertices.len();
        let mut active = (0..n).filter(|&k| self.functionals[k].dot(x) >= level * (1.0 - CORNER_TOL));
        let k = active.next()?;
        if active.next().is_some() {
            return None;
        }
        Some((self.vertices[(k + 1) % n] - self.vertices[k]).normalize())
    }

    fn area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n)
            .map(|k| cross(&self.vertices[k], &self.vertices[(k + 1) % n]))
            .sum::<f64>()
    }
}

/// The concrete description behind a [`ConvexDomain`].
#[derive(Clone, Debug)]
pub enum Shape {
    Disc { radius: f64 },
    /// Image of `[-1, 1]²` under the map.
    Parallelogram(LinearMap),
    Hexagon(Polygon),
    /// Open unit ball of `(|x|^p + |y|^p)^{1/p}`.
    LpBall { p: f64 },
    Affine { map: LinearMap, base: Box<Shape> },
    Composite(Arc<CompositeDomain>),
}

impl Shape {
    pub(crate) fn gauge(&self, x: &Vec2) -> f64 {
        match self {
            Shape::Disc { radius } => x.norm() / radius,
            Shape::Parallelogram(map) => {
                let y = map.inverse() * x;
                y.x.abs().max(y.y.abs())
            }
            Shape::Hexagon(poly) => poly.gauge(x),
            Shape::LpBall { p } => lp_norm(x, *p),
            Shape::Affine { map, base } => base.gauge(&(map.inverse() * x)),
            Shape::Composite(c) => c.gauge(x),
        }
    }

    /// Counter-clockwise unit tangent at a boundary point, `None` at corners.
    pub(crate) fn tangent_at(&self, x: &Vec2) -> Option<Vec2> {
        match self {
            Shape::Disc { .. } => Some(Vec2::new(-x.y, x.x).normalize()),
            Shape::Parallelogram(map) => {
                let y = map.inverse() * x;
                let level = y.x.abs().max(y.y.abs());
                let on_vertical = y.x.abs() >= level * (1.0 - CORNER_TOL);
                let on_horizontal = y.y.abs() >= level * (1.0 - CORNER_TOL);
                let t = match (on_vertical, on_horizontal) {
                    (true, false) => Vec2::new(0.0, y.x.signum()),
                    (false, true) => Vec2::new(-y.y.signum(), 0.0),
                    _ => return None,
                };
                Some(map.push_tangent(&t))
            }
            Shape::Hexagon(poly) => poly.tangent_at(x),
            Shape::LpBall { p } => {
                let grad = Vec2::new(
                    x.x.signum() * x.x.abs().powf(p - 1.0),
                    x.y.signum() * x.y.abs().powf(p - 1.0),
                );
                Some(Vec2::new(-grad.y, grad.x).normalize())
            }
            Shape::Affine { map, base } => {
                let t = base.tangent_at(&(map.inverse() * x))?;
                Some(map.push_tangent(&t))
            }
            Shape::Composite(c) => c.tangent_at(x),
        }
    }

    pub(crate) fn area(&self) -> f64 {
        match self {
            Shape::Disc { radius } => PI * radius * radius,
            Shape::Parallelogram(map) => 4.0 * map.det().abs(),
            Shape::Hexagon(poly) => poly.area(),
            Shape::LpBall { .. } => self.area_by_quadrature(),
            Shape::Affine { map, base } => map.det().abs() * base.area(),
            Shape::Composite(c) => c.area(),
        }
    }

    /// `½∫ρ(θ)² dθ` over a full turn, split at the non-smooth angles.
    pub(crate) fn area_by_quadrature(&self) -> f64 {
        let mut breaks: Vec<f64> = self
            .breakpoints()
            .into_iter()
            .filter(|&b| b > 0.0 && b < PI)
            .collect();
        breaks.push(0.0);
        breaks.push(PI);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let f = |theta: f64| {
            let r = 1.0 / self.gauge(&unit(theta));
            r * r
        };
        // central symmetry: ½∫₀^{2π} = ∫₀^π
        quadrature::integrate_pieces(&f, &breaks, 1e-13)
    }

    /// Upper bound for `max_θ ρ(θ)`, exact for the built-in shapes.
    pub(crate) fn outer_radius(&self) -> f64 {
        match self {
            Shape::Disc { radius } => *radius,
            Shape::Parallelogram(map) => {
                let g = map.matrix();
                [Vec2::new(1.0, 1.0), Vec2::new(1.0, -1.0)]
                    .iter()
                    .map(|c| (g * c).norm())
                    .fold(0.0, f64::max)
            }
            Shape::Hexagon(poly) => poly.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max),
            Shape::LpBall { p } => {
                if *p >= 2.0 {
                    2f64.powf(0.5 - 1.0 / p)
                } else {
                    1.0
                }
            }
            Shape::Affine { map, base } => spectral_norm(map.matrix()) * base.outer_radius(),
            Shape::Composite(c) => c.outer_radius(),
        }
    }

    /// Angles in `[0, 2π)` where the boundary may fail to be smooth.
    pub(crate) fn breakpoints(&self) -> Vec<f64> {
        let mut out = match self {
            Shape::Disc { .. } => Vec::new(),
            Shape::Parallelogram(map) => [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]
                .iter()
                .map(|&(a, b)| angle_of(&(map.matrix() * Vec2::new(a, b))))
                .collect(),
            Shape::Hexagon(poly) => poly.vertices().iter().map(angle_of).collect(),
            // curvature degenerates on the axes
            Shape::LpBall { .. } => vec![0.0, 0.5 * PI, PI, 1.5 * PI],
            Shape::Affine { map, base } => base
                .breakpoints()
                .into_iter()
                .map(|b| angle_of(&(map.matrix() * unit(b))))
                .collect(),
            Shape::Composite(c) => c.breakpoints(),
        };
        out.sort_by(f64::total_cmp);
        out
    }

    pub(crate) fn is_parallelogram(&self) -> bool {
        match self {
            Shape::Parallelogram(_) => true,
            Shape::Affine { base, .. } => base.is_parallelogram(),
            _ => false,
        }
    }

    pub(crate) fn is_strictly_convex(&self) -> bool {
        match self {
            Shape::Disc { .. } | Shape::LpBall { .. } => true,
            Shape::Affine { base, .. } => base.is_strictly_convex(),
            _ => false,
        }
    }

    fn symmetries(&self) -> Vec<Mat2> {
        match self {
            Shape::LpBall { .. } => {
                let mut out = Vec::with_capacity(8);
                for &(a, b, c, d) in &[(1.0, 0.0, 0.0, 1.0), (0.0, 1.0, 1.0, 0.0)] {
                    for &sx in &[1.0, -1.0] {
                        for &sy in &[1.0, -1.0] {
                            out.push(Mat2::new(sx * a, sx * b, sy * c, sy * d));
                        }
                    }
                }
                out
            }
            Shape::Affine { map, base } => base
                .symmetries()
                .iter()
                .map(|s| map.matrix() * s * map.inverse())
                .collect(),
            _ => vec![Mat2::identity(), -Mat2::identity()],
        }
    }
}

fn lp_norm(x: &Vec2, p: f64) -> f64 {
    let (a, b) = (x.x.abs(), x.y.abs());
    let m = a.max(b);
    if m == 0.0 {
        return 0.0;
    }
    m * ((a / m).powf(p) + (b / m).powf(p)).powf(1.0 / p)
}

fn spectral_norm(g: &Mat2) -> f64 {
    let ata = g.transpose() * g;
    let tr = ata.trace();
    let det = ata.determinant();
    let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
    (0.5 * tr + disc).sqrt()
}

/// A bounded convex domain symmetric about the origin.
///
/// Values are immutable; all methods are pure.
#[derive(Clone, Debug)]
pub struct ConvexDomain {
    shape: Shape,
    tol_boundary: f64,
}

impl ConvexDomain {
    pub fn from_shape(shape: Shape) -> Self {
        Self { shape, tol_boundary: DEFAULT_TOL_BOUNDARY }
    }

    pub fn disc(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidDomain(format!("disc radius must be positive, got {radius}")));
        }
        Ok(Self::from_shape(Shape::Disc { radius }))
    }

    pub fn unit_disc() -> Self {
        Self::from_shape(Shape::Disc { radius: 1.0 })
    }

    /// The square `[-1, 1]²`.
    pub fn square() -> Self {
        Self::from_shape(Shape::Parallelogram(
            LinearMap::new(Mat2::identity()).expect("identity is invertible"),
        ))
    }

    pub fn parallelogram(g: Mat2) -> Result<Self> {
        Ok(Self::from_shape(Shape::Parallelogram(LinearMap::new(g)?)))
    }

    pub fn hexagon(v: [Vec2; 3]) -> Result<Self> {
        Ok(Self::from_shape(Shape::Hexagon(Polygon::hexagon(v)?)))
    }

    /// Regular hexagon with vertices at angles 0, π/3, 2π/3, ….
    pub fn regular_hexagon(circumradius: f64) -> Result<Self> {
        let v = [0.0, PI / 3.0, 2.0 * PI / 3.0].map(|a| circumradius * unit(a));
        Self::hexagon(v)
    }

    pub fn lp_ball(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::InvalidDomain(format!("lp exponent must be > 1, got {p}")));
        }
        Ok(Self::from_shape(Shape::LpBall { p }))
    }

    /// The image `gK`.
    pub fn affine(g: Mat2, base: &ConvexDomain) -> Result<Self> {
        let map = LinearMap::new(g)?;
        Ok(Self {
            shape: Shape::Affine { map, base: Box::new(base.shape.clone()) },
            tol_boundary: base.tol_boundary,
        })
    }

    pub fn composite(c: CompositeDomain) -> Self {
        Self::from_shape(Shape::Composite(Arc::new(c)))
    }

    pub fn with_tol_boundary(mut self, tol: f64) -> Self {
        self.tol_boundary = tol;
        self
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn tol_boundary(&self) -> f64 {
        self.tol_boundary
    }

    pub fn as_composite(&self) -> Option<&CompositeDomain> {
        match &self.shape {
            Shape::Composite(c) => Some(c),
            _ => None,
        }
    }

    #[inline]
    pub fn gauge(&self, x: &Vec2) -> f64 {
        self.shape.gauge(x)
    }

    pub fn radial(&self, theta: f64) -> f64 {
        1.0 / self.gauge(&unit(theta))
    }

    pub fn boundary_point(&self, theta: f64) -> BoundaryPoint {
        let dir = unit(theta);
        BoundaryPoint { theta, point: dir / self.gauge(&dir) }
    }

    pub fn tangent_dir(&self, theta: f64) -> Result<Vec2> {
        let bp = self.boundary_point(theta);
        self.shape.tangent_at(&bp.point).ok_or(Error::CornerPoint { theta })
    }

    /// Tangent at an arbitrary boundary point.
    pub fn tangent_at(&self, x: &Vec2) -> Result<Vec2> {
        self.shape
            .tangent_at(x)
            .ok_or(Error::CornerPoint { theta: angle_of(x) })
    }

    pub fn area(&self) -> f64 {
        self.shape.area()
    }

    /// Area from the polar formula, independent of any closed form.
    pub fn area_by_quadrature(&self) -> f64 {
        self.shape.area_by_quadrature()
    }

    pub fn classify(&self, x: &Vec2) -> Region {
        let g = self.gauge(x);
        if g < 1.0 - self.tol_boundary {
            Region::Interior
        } else if g <= 1.0 + self.tol_boundary {
            Region::Boundary
        } else {
            Region::Exterior
        }
    }

    /// Upper bound on the distance from the origin to the boundary.
    pub fn outer_radius(&self) -> f64 {
        self.shape.outer_radius()
    }

    /// Sorted angles in `[0, 2π)` where the boundary may have a corner.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.shape.breakpoints()
    }

    pub fn is_parallelogram(&self) -> bool {
        self.shape.is_parallelogram()
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.shape.is_strictly_convex()
    }

    /// Discs, parallelograms and their linear images.
    pub fn is_known_irreducible(&self) -> bool {
        fn go(s: &Shape) -> bool {
            match s {
                Shape::Disc { .. } | Shape::Parallelogram(_) => true,
                Shape::Affine { base, .. } => go(base),
                _ => false,
            }
        }
        go(&self.shape)
    }

    /// Linear maps `s` with `sK = K` used to identify lattices up to symmetry.
    /// Always contains `±I`; discs only report `±I`.
    pub fn symmetries(&self) -> Vec<Mat2> {
        self.shape.symmetries()
    }

    /// Boundary samples at `n` equally spaced angles plus every breakpoint,
    /// sorted by angle.
    pub fn boundary_samples(&self, n: usize) -> Vec<BoundaryPoint> {
        let mut angles: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
        angles.extend(self.breakpoints());
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        angles.into_iter().map(|t| self.boundary_point(t)).collect()
    }
}
