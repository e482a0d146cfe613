//! Critical determinants through inscribed hexagons.
//!
//! A critical lattice of `K` always has three pairs of points `±p1, ±p2, ±p3`
//! on the boundary with `p1 + p2 = p3`, and conversely any such triple on the
//! boundary generates an admissible lattice. Fixing `p1 = p(s)` leaves one
//! equation for the angle `u` of `p2`, so the critical determinant is the
//! minimum of a function of one angle.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::geometry::ConvexDomain;
use crate::lattice::Lattice2;
use crate::{angle_of, cross, Error, Mat2, Result, Vec2};

/// `f(u) > ROOT_SLACK` counts as strictly outside when bracketing roots.
const ROOT_SLACK: f64 = 1e-13;
/// Relative tolerance for identifying two minimizer lattices.
const SAME_LATTICE_TOL: f64 = 1e-6;
const LOCUS_TOL: f64 = 1e-7;

/// Boundary triple `p1 + p2 = p3` and the lattice it generates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HexagonCandidate {
    pub s: f64,
    pub u: f64,
    pub p1: Vec2,
    pub p2: Vec2,
    pub p3: Vec2,
    pub lattice: Lattice2,
}

impl HexagonCandidate {
    fn from_angles(domain: &ConvexDomain, s: f64, u: f64) -> Result<Self> {
        let p1 = domain.boundary_point(s).point;
        let p2 = domain.boundary_point(u).point;
        let lattice = Lattice2::new(p1, p2)?;
        Ok(Self { s, u, p1, p2, p3: p1 + p2, lattice })
    }

    /// Candidate through `boundary_point(s)` using the leftmost companion root.
    pub fn at(domain: &ConvexDomain, s: f64) -> Result<Self> {
        Self::from_angles(domain, s, solve_companion(domain, s)?)
    }

    pub fn covolume(&self) -> f64 {
        self.lattice.covolume()
    }

    /// The six boundary points `±p1, ±p2, ±p3`, counter-clockwise from `p1`.
    pub fn hexagon(&self) -> [Vec2; 6] {
        [self.p1, self.p3, self.p2, -self.p1, -self.p3, -self.p2]
    }
}

fn companion_residual(domain: &ConvexDomain, base: &Vec2, u: f64) -> f64 {
    domain.gauge(&(base + domain.boundary_point(u).point)) - 1.0
}

/// Leftmost and rightmost roots of `u ↦ ν(p(s) + p(u)) − 1` on `(s, s + π)`.
fn companion_roots(domain: &ConvexDomain, s: f64) -> Result<(f64, f64)> {
    let base = domain.boundary_point(s).point;
    let f = |u: f64| companion_residual(domain, &base, u);
    let (lo, hi) = (s + 1e-9, s + PI - 1e-9);
    if !(f(lo) > ROOT_SLACK) || !(f(hi) < -ROOT_SLACK) {
        return Err(Error::BracketFailure { s });
    }
    let bisect = |outside: &dyn Fn(f64) -> bool| {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if outside(m) {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    };
    let left = bisect(&|u| f(u) > ROOT_SLACK);
    let right = bisect(&|u| f(u) >= -ROOT_SLACK);
    Ok((left, right))
}

/// Angle `u ∈ (s, s + π)` with `boundary_point(s) + boundary_point(u)` on the
/// boundary. When the root set is an interval (flat sides) the leftmost root is
/// returned.
pub fn solve_companion(domain: &ConvexDomain, s: f64) -> Result<f64> {
    companion_roots(domain, s).map(|(left, _)| left)
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub grid_n: usize,
    pub refine_tol: f64,
    /// Golden-section steps per local minimum.
    pub refine_steps: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { grid_n: 720, refine_tol: 1e-9, refine_steps: 40 }
    }
}

/// A group of minimizing candidates describing one critical lattice, or one
/// connected family of them when `continuum` is set.
#[derive(Clone, Debug)]
pub struct MinimizerCluster {
    pub representative: HexagonCandidate,
    pub grid_points: usize,
    pub continuum: bool,
}

#[derive(Clone, Debug)]
pub struct CriticalReport {
    pub delta_est: f64,
    /// Cluster representatives.
    pub minimizers: Vec<HexagonCandidate>,
    pub clusters: Vec<MinimizerCluster>,
    /// Number of clusters once lattices related by a symmetry of the domain
    /// are identified.
    pub distinct_up_to_symmetry: usize,
    pub grid_n: usize,
    pub refine_tol: f64,
    /// Set for parallelograms, whose boundary hexagons are not unique.
    pub parallelogram_warning: bool,
    /// Grid angles where no admissible candidate was produced.
    pub failed_candidates: usize,
}

impl CriticalReport {
    /// `Δ / (V/4)`, which Minkowski's theorem bounds below by 1.
    pub fn minkowski_ratio(&self, area: f64) -> f64 {
        self.delta_est / (area / 4.0)
    }
}

/// Best admissible candidate through `boundary_point(s)`, trying both ends of a
/// flat root interval.
fn evaluate(domain: &ConvexDomain, s: f64) -> Option<HexagonCandidate> {
    let (left, right) = companion_roots(domain, s).ok()?;
    let mut roots = vec![left];
    if right - left > 1e-12 {
        roots.push(right);
    }
    roots
        .into_iter()
        .filter_map(|u| HexagonCandidate::from_angles(domain, s, u).ok())
        .filter(|c| c.lattice.is_admissible(domain).unwrap_or(false))
        .min_by(|a, b| a.covolume().total_cmp(&b.covolume()))
}

fn det_of(c: &Option<HexagonCandidate>) -> f64 {
    c.as_ref().map_or(f64::INFINITY, HexagonCandidate::covolume)
}

fn golden_section(domain: &ConvexDomain, a: f64, b: f64, steps: usize) -> Option<HexagonCandidate> {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (a, b);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut c1 = evaluate(domain, x1);
    let mut c2 = evaluate(domain, x2);
    for _ in 0..steps {
        if det_of(&c1) <= det_of(&c2) {
            b = x2;
            x2 = x1;
            c2 = c1;
            x1 = b - ratio * (b - a);
            c1 = evaluate(domain, x1);
        } else {
            a = x1;
            x1 = x2;
            c1 = c2;
            x2 = a + ratio * (b - a);
            c2 = evaluate(domain, x2);
        }
    }
    if det_of(&c1) <= det_of(&c2) {
        c1
    } else {
        c2
    }
}

/// Scan `s ∈ [0, π)`, refine local minima and group the minimizers.
pub fn critical_search(domain: &ConvexDomain, opts: &SearchOptions) -> Result<CriticalReport> {
    let n = opts.grid_n.max(3);
    let step = PI / n as f64;
    let grid: Vec<Option<HexagonCandidate>> =
        (0..n).into_par_iter().map(|i| evaluate(domain, i as f64 * step)).collect();
    let dets: Vec<f64> = grid.iter().map(det_of).collect();
    let failed_candidates = dets.iter().filter(|d| !d.is_finite()).count();
    if failed_candidates == n {
        return Err(Error::BracketFailure { s: 0.0 });
    }

    let prev = |i: usize| (i + n - 1) % n;
    let next = |i: usize| (i + 1) % n;
    // candidates at s and s + π generate the same lattice, so the grid is cyclic
    let to_refine: Vec<usize> = (0..n)
        .filter(|&i| {
            let (d, dp, dn) = (dets[i], dets[prev(i)], dets[next(i)]);
            let flat = (dp - d).abs() <= opts.refine_tol && (dn - d).abs() <= opts.refine_tol;
            d.is_finite() && d <= dp && d <= dn && !flat
        })
        .collect();
    let refined: Vec<(usize, HexagonCandidate)> = to_refine
        .par_iter()
        .filter_map(|&i| {
            let s = i as f64 * step;
            golden_section(domain, s - step, s + step, opts.refine_steps).map(|c| (i, c))
        })
        .collect();

    let delta_est = dets
        .iter()
        .copied()
        .chain(refined.iter().map(|(_, c)| c.covolume()))
        .fold(f64::INFINITY, f64::min);
    let threshold = delta_est + opts.refine_tol;

    // cyclic runs of grid minimizers
    let inside: Vec<bool> = dets.iter().map(|&d| d <= threshold).collect();
    let mut runs: Vec<Vec<usize>> = Vec::new();
    if inside.iter().all(|&b| b) {
        runs.push((0..n).collect());
    } else {
        let start = (0..n).find(|&i| !inside[i]).expect("some grid point is outside");
        let mut current: Vec<usize> = Vec::new();
        for k in 1..=n {
            let i = (start + k) % n;
            if inside[i] {
                current.push(i);
            } else if !current.is_empty() {
                runs.push(std::mem::take(&mut current));
            }
        }
    }

    struct Raw {
        grid: Vec<usize>,
        refined: Vec<HexagonCandidate>,
    }
    let mut raw: Vec<Raw> = runs.into_iter().map(|grid| Raw { grid, refined: Vec::new() }).collect();
    for (origin, cand) in refined.into_iter().filter(|(_, c)| c.covolume() <= threshold) {
        let near = |g: &Vec<usize>| g.iter().any(|&i| i == origin || i == prev(origin) || i == next(origin));
        match raw.iter_mut().find(|r| near(&r.grid)) {
            Some(r) => r.refined.push(cand),
            None => raw.push(Raw { grid: vec![origin], refined: vec![cand] }),
        }
    }

    let mut clusters: Vec<MinimizerCluster> = Vec::new();
    for r in raw {
        let continuum = r.grid.len() >= 3;
        let representative = if continuum {
            grid[r.grid[0]].expect("grid minimizer is finite")
        } else {
            r.grid
                .iter()
                .filter_map(|&i| grid[i])
                .filter(|c| c.covolume() <= threshold)
                .chain(r.refined.iter().copied())
                .min_by(|a, b| a.covolume().total_cmp(&b.covolume()))
                .expect("cluster is non-empty")
        };
        let grid_points = r.grid.len();
        let same = clusters.iter_mut().find(|c| {
            !c.continuum
                && !continuum
                && c.representative.lattice.same_lattice(&representative.lattice, SAME_LATTICE_TOL)
        });
        match same {
            Some(c) => {
                c.grid_points += grid_points;
                if representative.covolume() < c.representative.covolume() {
                    c.representative = representative;
                }
            }
            None => clusters.push(MinimizerCluster { representative, grid_points, continuum }),
        }
    }

    let symmetries = domain.symmetries();
    let mut classes: Vec<Lattice2> = Vec::new();
    for c in &clusters {
        let l = c.representative.lattice;
        let known = classes.iter().any(|k| {
            symmetries
                .iter()
                .any(|g| l.transformed(g).map_or(false, |gl| gl.same_lattice(k, SAME_LATTICE_TOL)))
        });
        if !known {
            classes.push(l);
        }
    }

    Ok(CriticalReport {
        delta_est,
        minimizers: clusters.iter().map(|c| c.representative).collect(),
        distinct_up_to_symmetry: classes.len(),
        clusters,
        grid_n: n,
        refine_tol: opts.refine_tol,
        parallelogram_warning: domain.is_parallelogram(),
        failed_candidates,
    })
}

/// The boundary arc from one point of a critical lattice to the next one
/// counter-clockwise, parameterized by angle over `[0, 1]`.
#[derive(Clone, Debug)]
pub struct CriticalArc {
    domain: ConvexDomain,
    theta_start: f64,
    theta_end: f64,
}

impl CriticalArc {
    pub fn new(domain: ConvexDomain, theta_start: f64, theta_end: f64) -> Result<Self> {
        if !(theta_end > theta_start && theta_end - theta_start < PI) {
            return Err(Error::InvalidDomain(format!(
                "arc [{theta_start}, {theta_end}] must be non-empty and shorter than π"
            )));
        }
        Ok(Self { domain, theta_start, theta_end })
    }

    /// For a disc: the arc from `(r, 0)` to `r(1/2, √3/2)`.
    pub fn canonical_disc(domain: ConvexDomain) -> Self {
        Self { domain, theta_start: 0.0, theta_end: PI / 3.0 }
    }

    /// Arc from `p1` to the next point `p3 = p1 + p2` of the candidate lattice.
    pub fn from_candidate(domain: ConvexDomain, cand: &HexagonCandidate) -> Result<Self> {
        let start = angle_of(&cand.p1);
        let mut end = angle_of(&cand.p3);
        while end <= start {
            end += std::f64::consts::TAU;
        }
        Self::new(domain, start, end)
    }

    /// Canonical arc for discs; otherwise the arc of a critical lattice found
    /// by [`critical_search`].
    pub fn for_domain(domain: &ConvexDomain, opts: &SearchOptions) -> Result<Self> {
        if let crate::Shape::Disc { .. } = domain.shape() {
            return Ok(Self::canonical_disc(domain.clone()));
        }
        let report = critical_search(domain, opts)?;
        let rep = report.minimizers.first().ok_or(Error::BracketFailure { s: 0.0 })?;
        Self::from_candidate(domain.clone(), rep)
    }

    pub fn domain(&self) -> &ConvexDomain {
        &self.domain
    }

    pub fn theta_start(&self) -> f64 {
        self.theta_start
    }

    pub fn theta_end(&self) -> f64 {
        self.theta_end
    }

    pub fn theta(&self, t: f64) -> f64 {
        self.theta_start + t * (self.theta_end - self.theta_start)
    }

    pub fn p(&self, t: f64) -> Vec2 {
        self.domain.boundary_point(self.theta(t)).point
    }

    /// Lattice point following `p(t)` counter-clockwise on the boundary.
    pub fn q(&self, t: f64) -> Result<Vec2> {
        let s = self.theta(t);
        let u = solve_companion(&self.domain, s)?;
        Ok(self.domain.boundary_point(s).point + self.domain.boundary_point(u).point)
    }

    /// `φ(t) = [p(t) q(t)]ℤ²`.
    pub fn lattice(&self, t: f64) -> Result<Lattice2> {
        Lattice2::new(self.p(t), self.q(t)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocusPoint {
    pub t: f64,
    pub p: Vec2,
    pub q: Vec2,
    pub lattice: Lattice2,
}

#[derive(Clone, Debug)]
pub struct LocusCurve {
    pub arc: CriticalArc,
    pub points: Vec<LocusPoint>,
    pub delta: f64,
    /// Whether `φ(1)` and `φ(0)` are the same lattice.
    pub closes: bool,
}

#[derive(Clone, Debug, Default)]
pub struct LocusOptions {
    pub assume_irreducible: bool,
    pub search: SearchOptions,
    /// Critical lattice to start from instead of searching for one.
    pub start: Option<HexagonCandidate>,
}

/// Sample `t ↦ φ(t)` on `n_samples` equally spaced points of `[0, 1]`.
pub fn locus_parameterize(
    domain: &ConvexDomain,
    n_samples: usize,
    opts: &LocusOptions,
) -> Result<LocusCurve> {
    if domain.is_parallelogram() {
        return Err(Error::Parallelogram);
    }
    if !opts.assume_irreducible && !domain.is_known_irreducible() {
        return Err(Error::NotIrreducible(
            "irreducibility is not established for this domain; assume it explicitly".into(),
        ));
    }
    let arc = match &opts.start {
        Some(c) => CriticalArc::from_candidate(domain.clone(), c)?,
        None => CriticalArc::for_domain(domain, &opts.search)?,
    };
    let delta = arc.lattice(0.0)?.covolume();
    let n = n_samples.max(2);
    let points = (0..n)
        .into_par_iter()
        .map(|j| {
            let t = j as f64 / (n - 1) as f64;
            let s = arc.theta(t);
            let (left, right) = companion_roots(domain, s)?;
            if right - left > LOCUS_TOL {
                return Err(Error::NotIrreducible(format!(
                    "boundary point at t = {t} has a non-unique companion"
                )));
            }
            let p = arc.p(t);
            let q = p + domain.boundary_point(left).point;
            let lattice = Lattice2::new(p, q)?;
            if (lattice.covolume() - delta).abs() > LOCUS_TOL * delta {
                return Err(Error::NotIrreducible(format!(
                    "the lattice through p({t}) has covolume {} instead of {delta}",
                    lattice.covolume()
                )));
            }
            Ok(LocusPoint { t, p, q, lattice })
        })
        .collect::<Result<Vec<_>>>()?;
    let closes = points[n - 1].lattice.same_lattice(&points[0].lattice, LOCUS_TOL);
    Ok(LocusCurve { arc, points, delta, closes })
}

#[derive(Clone, Debug)]
pub struct EquivarianceReport {
    pub delta: f64,
    pub delta_image: f64,
    /// `|det g|·Δ(K)`.
    pub expected: f64,
    pub delta_ok: bool,
    /// Images of the minimizers of `K` are admissible for `gK` with the
    /// expected covolume.
    pub lattices_ok: bool,
}

impl EquivarianceReport {
    pub fn holds(&self) -> bool {
        self.delta_ok && self.lattices_ok
    }
}

/// Check `Δ(gK) = |det g|·Δ(K)` and that `g` maps critical lattices to
/// admissible lattices of `gK`.
pub fn equivariance_check(
    domain: &ConvexDomain,
    g: &Mat2,
    opts: &SearchOptions,
) -> Result<EquivarianceReport> {
    let image = ConvexDomain::affine(*g, domain)?;
    let base = critical_search(domain, opts)?;
    let moved = critical_search(&image, opts)?;
    let expected = g.determinant().abs() * base.delta_est;
    let tol = 1e-7 * expected.max(1.0);
    let delta_ok = (moved.delta_est - expected).abs() <= tol;
    let mut lattices_ok = true;
    for c in &base.minimizers {
        let gl = c.lattice.transformed(g)?;
        lattices_ok &= gl.is_admissible(&image)? && (gl.covolume() - expected).abs() <= tol;
    }
    Ok(EquivarianceReport {
        delta: base.delta_est,
        delta_image: moved.delta_est,
        expected,
        delta_ok,
        lattices_ok,
    })
}

/// Orientation check used by tests and the self-test: `det(p1, p2) > 0`.
pub fn is_counter_clockwise(c: &HexagonCandidate) -> bool {
    cross(&c.p1, &c.p2) > 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unit;
    use approx::assert_abs_diff_eq;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn companion_on_disc() {
        let d = ConvexDomain::unit_disc();
        assert_abs_diff_eq!(solve_companion(&d, 0.0).unwrap(), 2.0 * PI / 3.0, epsilon = 1e-12);
        let c = HexagonCandidate::at(&d, 0.0).unwrap();
        assert_abs_diff_eq!(c.p2.x, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(c.p2.y, SQRT3 / 2.0, epsilon = 1e-12);
        let s = PI / 6.0;
        assert_abs_diff_eq!(solve_companion(&d, s).unwrap(), s + 2.0 * PI / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn companion_on_regular_hexagon() {
        let hex = ConvexDomain::regular_hexagon(1.0).unwrap();
        let c = HexagonCandidate::at(&hex, PI / 6.0).unwrap();
        // p1 + p2 lands on the midpoint of the top side
        assert_abs_diff_eq!(c.p1.x, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(c.p1.y, SQRT3 / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.p3.x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.p3.y, SQRT3 / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.u, 5.0 * PI / 6.0, epsilon = 1e-12);
        let midpoints =
            Lattice2::new(Vec2::new(0.75, SQRT3 / 4.0), Vec2::new(0.0, SQRT3 / 2.0)).unwrap();
        assert!(c.lattice.same_lattice(&midpoints, 1e-10));
    }

    #[test]
    fn companion_residual_is_small() {
        for k in [
            ConvexDomain::unit_disc(),
            ConvexDomain::lp_ball(1.5).unwrap(),
            ConvexDomain::lp_ball(4.0).unwrap(),
            ConvexDomain::regular_hexagon(1.3).unwrap(),
        ] {
            for i in 0..50 {
                let s = 0.1 + i as f64 * 0.123;
                let c = HexagonCandidate::at(&k, s).unwrap();
                assert!((k.gauge(&c.p3) - 1.0).abs() < 1e-10);
                assert!(is_counter_clockwise(&c));
                assert!(c.u > s && c.u < s + PI);
            }
        }
    }

    #[test]
    fn square_companion_flat_interval() {
        // through (1, 0) every p2 = (x, 1) with -1 <= x <= 0 works; leftmost is (0, 1)
        let sq = ConvexDomain::square();
        let (l, r) = companion_roots(&sq, 0.0).unwrap();
        assert_abs_diff_eq!(l, PI / 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r, 3.0 * PI / 4.0, epsilon = 1e-9);
    }

    #[test]
    fn disc_search() {
        let r = critical_search(&ConvexDomain::unit_disc(), &SearchOptions::default()).unwrap();
        assert!((r.delta_est - SQRT3 / 2.0).abs() < 1e-8);
        assert_eq!(r.clusters.len(), 1);
        assert!(r.clusters[0].continuum);
        assert_eq!(r.clusters[0].grid_points, 720);
        assert_eq!(r.failed_candidates, 0);
        assert!(!r.parallelogram_warning);
    }

    #[test]
    fn regular_hexagon_search() {
        let hex = ConvexDomain::regular_hexagon(1.0).unwrap();
        let r = critical_search(&hex, &SearchOptions::default()).unwrap();
        assert!((r.delta_est - 3.0 * SQRT3 / 8.0).abs() < 1e-9);
        assert!((4.0 * r.delta_est - hex.area()).abs() < 1e-7);
        assert_eq!(r.clusters.len(), 1);
        assert!(!r.clusters[0].continuum);
    }

    #[test]
    fn square_search_warns() {
        let r = critical_search(&ConvexDomain::square(), &SearchOptions::default()).unwrap();
        assert!((r.delta_est - 1.0).abs() < 1e-8);
        assert!(r.parallelogram_warning);
    }

    #[test]
    fn all_candidates_admissible() {
        for k in [
            ConvexDomain::unit_disc(),
            ConvexDomain::square(),
            ConvexDomain::regular_hexagon(1.0).unwrap(),
            ConvexDomain::lp_ball(1.5).unwrap(),
            ConvexDomain::lp_ball(3.0).unwrap(),
        ] {
            let r = critical_search(&k, &SearchOptions { grid_n: 360, ..Default::default() }).unwrap();
            assert_eq!(r.failed_candidates, 0, "{:?}", k.shape());
            assert!(r.delta_est >= k.area() / 4.0 - 1e-9);
            for c in &r.minimizers {
                assert!(c.lattice.is_admissible(&k).unwrap());
                assert!((c.covolume() - r.delta_est).abs() <= r.refine_tol);
            }
        }
    }

    #[test]
    fn disc_locus_is_rotation() {
        let d = ConvexDomain::unit_disc();
        let curve = locus_parameterize(&d, 31, &LocusOptions::default()).unwrap();
        let base = Mat2::new(1.0, 0.5, 0.0, SQRT3 / 2.0);
        for lp in &curve.points {
            let a = lp.t * PI / 3.0;
            let rot = Mat2::new(a.cos(), -a.sin(), a.sin(), a.cos());
            let want = Lattice2::from_matrix(&(rot * base)).unwrap();
            assert!(lp.lattice.same_lattice(&want, 1e-9));
            assert!((lp.p - unit(a)).norm() < 1e-15);
        }
        assert!(curve.closes);
        assert!(curve.points[0].lattice.same_lattice(&curve.points[30].lattice, 1e-9));
    }

    #[test]
    fn locus_requires_irreducibility() {
        let lp = ConvexDomain::lp_ball(3.0).unwrap();
        assert!(matches!(
            locus_parameterize(&lp, 10, &LocusOptions::default()),
            Err(Error::NotIrreducible(_))
        ));
        // assuming it does not help: the covolume is not constant along the arc
        let opts = LocusOptions { assume_irreducible: true, ..Default::default() };
        assert!(matches!(locus_parameterize(&lp, 10, &opts), Err(Error::NotIrreducible(_))));
        assert!(matches!(
            locus_parameterize(&ConvexDomain::square(), 10, &opts),
            Err(Error::Parallelogram)
        ));
    }

    #[test]
    fn ellipse_locus_closes() {
        let e = ConvexDomain::affine(Mat2::new(1.5, 0.3, 0.0, 0.7), &ConvexDomain::unit_disc()).unwrap();
        let curve = locus_parameterize(&e, 25, &LocusOptions::default()).unwrap();
        assert!(curve.closes);
        let area = e.area();
        assert!((curve.delta - area * SQRT3 / (2.0 * PI)).abs() < 1e-8);
    }

    #[test]
    fn equivariance_examples() {
        let d = ConvexDomain::unit_disc();
        let r = equivariance_check(&d, &(2.0 * Mat2::identity()), &SearchOptions::default()).unwrap();
        assert!(r.holds());
        assert!((r.delta_image - SQRT3 * 2.0).abs() < 1e-7);

        let a: f64 = 0.4;
        let rot = Mat2::new(a.cos(), -a.sin(), a.sin(), a.cos());
        let r = equivariance_check(&d, &rot, &SearchOptions::default()).unwrap();
        assert!(r.holds());
        assert!((r.delta_image - SQRT3 / 2.0).abs() < 1e-8);

        let shear = Mat2::new(1.0, 1.0, 0.0, 1.0);
        let r = equivariance_check(&ConvexDomain::square(), &shear, &SearchOptions::default()).unwrap();
        assert!(r.holds());
        assert!((r.delta_image - 1.0).abs() < 1e-8);
    }
}
