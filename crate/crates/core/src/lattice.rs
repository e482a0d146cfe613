//! Rank-2 lattices `Λ = gℤ²`.

use crate::geometry::{ConvexDomain, Region};
use crate::{cross, Error, Mat2, Result, Vec2};

/// Default upper bound on the number of coefficient pairs scanned by
/// [`Lattice2::enumerate_nonzero`].
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// Integer change of basis: `reduced = original · U` (columns).
pub type Unimodular = [[i64; 2]; 2];

/// A lattice in the plane given by two basis columns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice2 {
    v1: Vec2,
    v2: Vec2,
}

/// A lattice vector with its coefficients in the basis it was enumerated from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticePoint {
    pub m: i64,
    pub n: i64,
    pub point: Vec2,
}

impl Lattice2 {
    pub fn new(v1: Vec2, v2: Vec2) -> Result<Self> {
        let det = cross(&v1, &v2);
        if !det.is_finite() || det.abs() <= 1e-12 {
            return Err(Error::DegenerateLattice { det });
        }
        Ok(Self { v1, v2 })
    }

    /// Lattice generated by the columns of `g`.
    pub fn from_matrix(g: &Mat2) -> Result<Self> {
        Self::new(g.column(0).into(), g.column(1).into())
    }

    pub fn standard() -> Self {
        Self { v1: Vec2::new(1.0, 0.0), v2: Vec2::new(0.0, 1.0) }
    }

    pub fn v1(&self) -> Vec2 {
        self.v1
    }

    pub fn v2(&self) -> Vec2 {
        self.v2
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::from_columns(&[self.v1, self.v2])
    }

    pub fn det(&self) -> f64 {
        cross(&self.v1, &self.v2)
    }

    pub fn covolume(&self) -> f64 {
        self.det().abs()
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(c * self.v1, c * self.v2)
    }

    /// The lattice `gΛ`.
    pub fn transformed(&self, g: &Mat2) -> Result<Self> {
        Self::new(g * self.v1, g * self.v2)
    }

    pub fn point(&self, m: i64, n: i64) -> Vec2 {
        m as f64 * self.v1 + n as f64 * self.v2
    }

    /// Gauss–Lagrange reduction.
    pub fn reduce(&self) -> Self {
        self.reduce_with_transform().0
    }

    /// Gauss–Lagrange reduction, also returning the integer matrix `U` with
    /// `[w1 w2] = [v1 v2]·U`.
    ///
    /// The result satisfies `|w1| ≤ |w2| ≤ |w2 ± w1|`.
    pub fn reduce_with_transform(&self) -> (Self, Unimodular) {
        let (mut b1, mut b2) = (self.v1, self.v2);
        // columns of U, i.e. coefficient vectors of b1 and b2
        let (mut c1, mut c2) = ([1i64, 0], [0i64, 1]);
        for _ in 0..10_000 {
            if b1.norm_squared() > b2.norm_squared() {
                std::mem::swap(&mut b1, &mut b2);
                std::mem::swap(&mut c1, &mut c2);
            }
            let mu = (b1.dot(&b2) / b1.norm_squared()).round();
            if mu == 0.0 || !mu.is_finite() {
                break;
            }
            b2 -= mu * b1;
            let k = mu as i64;
            c2 = [c2[0] - k * c1[0], c2[1] - k * c1[1]];
        }
        // one last size check: rounding may leave |b2 ± b1| marginally shorter
        for s in [-1.0, 1.0] {
            let cand = b2 + s * b1;
            if cand.norm_squared() < b2.norm_squared() * (1.0 - 1e-15) {
                b2 = cand;
                let k = s as i64;
                c2 = [c2[0] + k * c1[0], c2[1] + k * c1[1]];
            }
        }
        let u = [[c1[0], c2[0]], [c1[1], c2[1]]];
        (Self { v1: b1, v2: b2 }, u)
    }

    /// Nonzero lattice points of Euclidean norm at most `radius`.
    pub fn enumerate_nonzero(&self, radius: f64) -> Result<Vec<LatticePoint>> {
        self.enumerate_nonzero_capped(radius, DEFAULT_ENUMERATION_CAP)
    }

    /// As [`Self::enumerate_nonzero`], failing when more than `cap`
    /// coefficient pairs would have to be scanned.
    pub fn enumerate_nonzero_capped(&self, radius: f64, cap: usize) -> Result<Vec<LatticePoint>> {
        let (red, u) = self.reduce_with_transform();
        let det = red.covolume();
        // distances between neighbouring lattice lines parallel to w2 and w1
        let h1 = det / red.v2.norm();
        let h2 = det / red.v1.norm();
        let m_max = (radius / h1).ceil() + 1.0;
        let n_max = (radius / h2).ceil() + 1.0;
        let predicted = (2.0 * m_max + 1.0) * (2.0 * n_max + 1.0);
        if !predicted.is_finite() || predicted > cap as f64 {
            return Err(Error::EnumerationTooLarge {
                predicted: if predicted.is_finite() { predicted as u128 } else { u128::MAX },
                cap,
            });
        }
        let (m_max, n_max) = (m_max as i64, n_max as i64);
        let r2 = radius * radius;
        let mut out = Vec::new();
        for m in -m_max..=m_max {
            for n in -n_max..=n_max {
                if m == 0 && n == 0 {
                    continue;
                }
                let point = red.point(m, n);
                if point.norm_squared() <= r2 {
                    out.push(LatticePoint {
                        m: u[0][0] * m + u[0][1] * n,
                        n: u[1][0] * m + u[1][1] * n,
                        point,
                    });
                }
            }
        }
        Ok(out)
    }

    /// `true` iff no nonzero lattice point lies in the interior of `domain`.
    /// Points in the boundary band are allowed.
    pub fn is_admissible(&self, domain: &ConvexDomain) -> Result<bool> {
        let radius = domain.outer_radius() * (1.0 + 1e-9);
        Ok(self
            .enumerate_nonzero(radius)?
            .iter()
            .all(|p| domain.classify(&p.point) != Region::Interior))
    }

    /// Smallest gauge value over the nonzero lattice points.
    pub fn first_minimum(&self, domain: &ConvexDomain) -> Result<f64> {
        let w1 = self.reduce().v1;
        // any point with gauge below that of w1 lies within this radius
        let radius = domain.gauge(&w1) * domain.outer_radius() * (1.0 + 1e-9);
        Ok(self
            .enumerate_nonzero(radius)?
            .iter()
            .map(|p| domain.gauge(&p.point))
            .fold(f64::INFINITY, f64::min))
    }

    /// Lattice points in the boundary band of `domain`, sorted by angle.
    pub fn boundary_points(&self, domain: &ConvexDomain) -> Result<Vec<Vec2>> {
        let radius = domain.outer_radius() * (1.0 + 1e-9);
        let mut pts: Vec<Vec2> = self
            .enumerate_nonzero(radius)?
            .into_iter()
            .filter(|p| domain.classify(&p.point) == Region::Boundary)
            .map(|p| p.point)
            .collect();
        pts.sort_by(|a, b| crate::angle_of(a).total_cmp(&crate::angle_of(b)));
        Ok(pts)
    }

    /// Whether both bases generate the same lattice, i.e. the change of basis
    /// is integral with determinant ±1 up to `tol`.
    pub fn same_lattice(&self, other: &Lattice2, tol: f64) -> bool {
        let Some(inv) = self.matrix().try_inverse() else { return false };
        let m = inv * other.matrix();
        m.iter().all(|x| (x - x.round()).abs() <= tol) && (m.determinant().abs() - 1.0).abs() <= tol
    }
}
