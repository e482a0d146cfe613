//! Domains with a prescribed critical locus.
//!
//! Start from a strictly convex irreducible domain `H` and the boundary arc of
//! one of its critical lattices, parameterized by `t ∈ [0, 1]`. For every gap
//! `(a, b)` of a closed set `Q ⊂ [0, 1]` the arc between `p(a)` and `p(b)` is
//! replaced by the two tangent segments `p(a) → v → p(b)`, and the same is done
//! on the antipodal arc. The resulting domain `K` keeps `p(t)` on its boundary
//! exactly for `t ∈ Q`, so its critical lattices are the `φ(t)` with `t ∈ Q`.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::critical::{critical_search, CriticalArc, SearchOptions};
use crate::geometry::ConvexDomain;
use crate::{angle_of, cross, quadrature, unit, Error, Result, Vec2};

/// Gaps narrower than this are dropped before building triangles.
pub const MIN_GAP_WIDTH: f64 = 1e-7;
const MAX_CANTOR_DEPTH: u32 = 30;
const PARALLEL_TOL: f64 = 1e-10;
const CORNER_TOL: f64 = 1e-9;
const CONVEXITY_SAMPLES: usize = 4096;

/// A closed set `Q = [0, 1] ∖ ⋃(aᵢ, bᵢ)` given by its open gaps.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSet01 {
    gaps: Vec<(f64, f64)>,
    resolution: Option<f64>,
}

impl ClosedSet01 {
    /// Sorts the gaps and clips them to `[0, 1]`; overlapping gaps are rejected.
    pub fn from_gaps(gaps: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut out = Vec::new();
        for (a, b) in gaps {
            if !(a.is_finite() && b.is_finite()) || a >= b {
                return Err(Error::InvalidGaps(format!("({a}, {b}) is not an open interval")));
            }
            let (ca, cb) = (a.max(0.0), b.min(1.0));
            if (ca, cb) != (a, b) {
                log::warn!("gap ({a}, {b}) clipped to [0, 1]");
            }
            if ca >= cb {
                continue;
            }
            out.push((ca, cb));
        }
        out.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in out.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::InvalidGaps(format!(
                    "gaps ({}, {}) and ({}, {}) overlap",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self { gaps: out, resolution: None })
    }

    /// `Q = [0, 1]`.
    pub fn full() -> Self {
        Self { gaps: Vec::new(), resolution: None }
    }

    /// `Q = {0, 1}`.
    pub fn endpoints() -> Self {
        Self { gaps: vec![(0.0, 1.0)], resolution: None }
    }

    pub fn gaps(&self) -> &[(f64, f64)] {
        &self.gaps
    }

    /// Smallest scale at which this finite approximation is meaningful.
    pub fn resolution(&self) -> Option<f64> {
        self.resolution
    }

    pub fn with_resolution(mut self, resolution: f64) -> Self {
        self.resolution = Some(resolution);
        self
    }

    fn gap_containing(&self, t: f64) -> Option<(f64, f64)> {
        let i = self.gaps.partition_point(|g| g.0 < t);
        (i > 0 && t < self.gaps[i - 1].1).then(|| self.gaps[i - 1])
    }

    pub fn contains(&self, t: f64) -> bool {
        (0.0..=1.0).contains(&t) && self.gap_containing(t).is_none()
    }

    /// Distance from `t ∈ [0, 1]` to `Q`.
    pub fn distance(&self, t: f64) -> f64 {
        match self.gap_containing(t) {
            Some((a, b)) => (t - a).min(b - t),
            None => 0.0,
        }
    }

    /// Maximal closed intervals of `Q` (possibly single points), in order.
    pub fn components(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.gaps.len() + 1);
        let mut start = 0.0;
        for &(a, b) in &self.gaps {
            if a >= start {
                out.push((start, a));
            }
            start = b;
        }
        if start <= 1.0 {
            out.push((start, 1.0));
        }
        out
    }
}

/// Middle-third gaps of the depth-`depth` Cantor approximation.
pub fn cantor_gaps(depth: u32) -> Result<ClosedSet01> {
    if depth > MAX_CANTOR_DEPTH {
        return Err(Error::DepthTooLarge(depth));
    }
    let mut gaps = Vec::with_capacity((1usize << depth) - 1);
    // left ends of the surviving intervals, as numerators over 3^(level - 1)
    let mut lefts: Vec<u64> = vec![0];
    let mut scale: u64 = 1;
    for _ in 0..depth {
        scale *= 3;
        let denom = scale as f64;
        let mut next = Vec::with_capacity(lefts.len() * 2);
        for &l in &lefts {
            gaps.push(((3 * l + 1) as f64 / denom, (3 * l + 2) as f64 / denom));
            next.push(3 * l);
            next.push(3 * l + 2);
        }
        lefts = next;
    }
    gaps.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(ClosedSet01 { gaps, resolution: Some(1.0 / scale as f64) })
}

/// The region between the tangent lines at `p(a)`, `p(b)` and the arc between
/// them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentTriangle {
    pub a: f64,
    pub b: f64,
    pub theta_a: f64,
    pub theta_b: f64,
    pub pa: Vec2,
    pub pb: Vec2,
    pub v: Vec2,
    /// Linear functionals equal to 1 on the tangent lines at `pa` and `pb`.
    la: Vec2,
    lb: Vec2,
    ta: Vec2,
    tb: Vec2,
}

impl TangentTriangle {
    fn new(base: &ConvexDomain, arc: &CriticalArc, a: f64, b: f64) -> Result<Self> {
        let (theta_a, theta_b) = (arc.theta(a), arc.theta(b));
        let pa = base.boundary_point(theta_a).point;
        let pb = base.boundary_point(theta_b).point;
        let ta = base.tangent_dir(theta_a)?;
        let tb = base.tangent_dir(theta_b)?;
        let turn = cross(&ta, &tb);
        if turn.abs() < PARALLEL_TOL {
            return Err(Error::TangentIntersectionUnstable { a, b });
        }
        let v = pa + ta * (cross(&(pb - pa), &tb) / turn);
        // outward normals are the tangents rotated clockwise
        let na = Vec2::new(ta.y, -ta.x);
        let nb = Vec2::new(tb.y, -tb.x);
        Ok(Self {
            a,
            b,
            theta_a,
            theta_b,
            pa,
            pb,
            v,
            la: na / na.dot(&pa),
            lb: nb / nb.dot(&pb),
            ta,
            tb,
        })
    }

    fn gauge(&self, x: &Vec2) -> f64 {
        self.la.dot(x).max(self.lb.dot(x))
    }

    fn tangent_at(&self, x: &Vec2) -> Option<Vec2> {
        let (ga, gb) = (self.la.dot(x), self.lb.dot(x));
        let level = ga.max(gb);
        match (ga >= level * (1.0 - CORNER_TOL), gb >= level * (1.0 - CORNER_TOL)) {
            (true, false) => Some(self.ta),
            (false, true) => Some(self.tb),
            _ => None,
        }
    }

    /// Area of the region added to `H`.
    fn area(&self, base: &ConvexDomain) -> f64 {
        let kite = 0.5 * (cross(&self.pa, &self.v) + cross(&self.v, &self.pb));
        let f = |theta: f64| {
            let r = base.radial(theta);
            0.5 * r * r
        };
        kite - quadrature::integrate(&f, self.theta_a, self.theta_b, 1e-15)
    }
}

/// `H` with tangent triangles glued over the gap arcs and their antipodes.
#[derive(Clone, Debug)]
pub struct CompositeDomain {
    base: ConvexDomain,
    arc: CriticalArc,
    q: ClosedSet01,
    triangles: Vec<TangentTriangle>,
    dropped_gaps: Vec<(f64, f64)>,
    area: f64,
    outer_radius: f64,
    breakpoints: Vec<f64>,
}

impl CompositeDomain {
    pub fn base(&self) -> &ConvexDomain {
        &self.base
    }

    pub fn arc(&self) -> &CriticalArc {
        &self.arc
    }

    pub fn q(&self) -> &ClosedSet01 {
        &self.q
    }

    pub fn triangles(&self) -> &[TangentTriangle] {
        &self.triangles
    }

    /// Gaps narrower than [`MIN_GAP_WIDTH`], left as arcs of `H`.
    pub fn dropped_gaps(&self) -> &[(f64, f64)] {
        &self.dropped_gaps
    }

    /// Triangle whose sector contains `x`, and whether `x` is in the antipodal copy.
    fn locate(&self, x: &Vec2) -> Option<(&TangentTriangle, bool)> {
        if self.triangles.is_empty() {
            return None;
        }
        let start = self.arc.theta_start();
        let len = self.arc.theta_end() - start;
        let rel = (angle_of(x) - start).rem_euclid(TAU);
        let (rel, flipped) = if rel <= len {
            (rel, false)
        } else if rel >= PI && rel - PI <= len {
            (rel - PI, true)
        } else {
            return None;
        };
        let theta = start + rel;
        let i = self.triangles.partition_point(|tr| tr.theta_a <= theta);
        let tr = &self.triangles[i.checked_sub(1)?];
        (theta <= tr.theta_b).then_some((tr, flipped))
    }

    pub(crate) fn gauge(&self, x: &Vec2) -> f64 {
        if x.x == 0.0 && x.y == 0.0 {
            return 0.0;
        }
        match self.locate(x) {
            Some((tr, false)) => tr.gauge(x),
            Some((tr, true)) => tr.gauge(&-x),
            None => self.base.gauge(x),
        }
    }

    pub(crate) fn tangent_at(&self, x: &Vec2) -> Option<Vec2> {
        match self.locate(x) {
            Some((tr, false)) => tr.tangent_at(x),
            Some((tr, true)) => tr.tangent_at(&-x).map(|t| -t),
            None => self.base.tangent_at(x).ok(),
        }
    }

    pub(crate) fn area(&self) -> f64 {
        self.area
    }

    pub(crate) fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    pub(crate) fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }

    /// The lattice `φ(t)` of the base domain.
    pub fn locus_lattice(&self, t: f64) -> Result<crate::Lattice2> {
        self.arc.lattice(t)
    }

    fn check_convex(&self) -> Result<()> {
        for tr in &self.triangles {
            if self.base.gauge(&tr.v) <= 1.0 {
                return Err(Error::NonConvexResult(format!(
                    "tangent vertex for gap ({}, {}) is not outside the base",
                    tr.a, tr.b
                )));
            }
            if cross(&(tr.v - tr.pa), &(tr.pb - tr.v)) <= 0.0 {
                return Err(Error::NonConvexResult(format!(
                    "reflex vertex for gap ({}, {})",
                    tr.a, tr.b
                )));
            }
        }
        let mut angles: Vec<f64> =
            (0..CONVEXITY_SAMPLES).map(|k| TAU * k as f64 / CONVEXITY_SAMPLES as f64).collect();
        angles.extend(self.breakpoints.iter().copied());
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Vec2> = angles
            .iter()
            .map(|&a| {
                let d = unit(a);
                d / self.gauge(&d)
            })
            .collect();
        for k in 0..pts.len() {
            let mid = 0.5 * (pts[k] + pts[(k + 1) % pts.len()]);
            if self.gauge(&mid) > 1.0 + 1e-12 {
                return Err(Error::NonConvexResult(format!(
                    "chord midpoint at angle {} lies outside",
                    angles[k]
                )));
            }
        }
        Ok(())
    }
}

/// Build `K` over the canonical critical arc of `H` (for discs, the arc from
/// `(r, 0)` to `r(1/2, √3/2)`).
pub fn build_construction(base: &ConvexDomain, q: &ClosedSet01) -> Result<CompositeDomain> {
    if !base.is_strictly_convex() {
        return Err(Error::InvalidDomain(
            "the construction needs a strictly convex base with a smooth boundary".into(),
        ));
    }
    let arc = CriticalArc::for_domain(base, &SearchOptions::default())?;
    build_construction_on_arc(arc, q)
}

/// Build `K` over an explicit arc of the base domain.
pub fn build_construction_on_arc(arc: CriticalArc, q: &ClosedSet01) -> Result<CompositeDomain> {
    let base = arc.domain().clone();
    let mut triangles = Vec::with_capacity(q.gaps().len());
    let mut dropped_gaps = Vec::new();
    for &(a, b) in q.gaps() {
        if b - a < MIN_GAP_WIDTH {
            log::warn!("gap ({a}, {b}) is narrower than {MIN_GAP_WIDTH} and is dropped");
            dropped_gaps.push((a, b));
            continue;
        }
        triangles.push(TangentTriangle::new(&base, &arc, a, b)?);
    }

    let added: f64 = triangles.par_iter().map(|tr| tr.area(&base)).sum();
    let outer_radius = triangles.iter().map(|tr| tr.v.norm()).fold(base.outer_radius(), f64::max);
    let mut breakpoints: Vec<f64> = base.breakpoints();
    for tr in &triangles {
        for theta in [tr.theta_a, angle_of(&tr.v), tr.theta_b] {
            breakpoints.push(theta.rem_euclid(TAU));
            breakpoints.push((theta + PI).rem_euclid(TAU));
        }
    }
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup();

    let k = CompositeDomain {
        area: base.area() + 2.0 * added,
        base,
        arc,
        q: q.clone(),
        triangles,
        dropped_gaps,
        outer_radius,
        breakpoints,
    };
    k.check_convex()?;
    Ok(k)
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub agreement_fraction: f64,
    /// Grid points outside the endpoint bands.
    pub scored: usize,
    pub samples: usize,
    /// Parameters where admissibility disagrees with membership in `Q`.
    pub mismatches: Vec<f64>,
}

/// Compare admissibility of `φ(t)` for `K` with `t ∈ Q` on a uniform grid of
/// `n_grid` points. Points within `2/n_grid` of a gap endpoint are not scored.
pub fn verify_locus(k: &ConvexDomain, q: &ClosedSet01, n_grid: usize) -> Result<VerifyReport> {
    let comp = k
        .as_composite()
        .ok_or_else(|| Error::InvalidDomain("verification needs a constructed domain".into()))?;
    let n = n_grid.max(2);
    let band = 2.0 / n as f64;
    let outcomes: Vec<Option<(f64, bool)>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let t = j as f64 / (n - 1) as f64;
            let near_endpoint = q.gaps().iter().any(|&(a, b)| (t - a).abs() < band || (t - b).abs() < band);
            if near_endpoint {
                return Ok(None);
            }
            let admissible = comp.locus_lattice(t)?.is_admissible(k)?;
            Ok(Some((t, admissible == q.contains(t))))
        })
        .collect::<Result<_>>()?;
    let scored: Vec<(f64, bool)> = outcomes.into_iter().flatten().collect();
    let mismatches: Vec<f64> = scored.iter().filter(|(_, ok)| !ok).map(|(t, _)| *t).collect();
    let agreement_fraction = if scored.is_empty() {
        1.0
    } else {
        1.0 - mismatches.len() as f64 / scored.len() as f64
    };
    Ok(VerifyReport { agreement_fraction, scored: scored.len(), samples: n, mismatches })
}

#[derive(Clone, Debug)]
pub struct DeltaCheck {
    pub delta_k: f64,
    pub delta_h: f64,
    /// `|Δ(K) − Δ(H)|` within the tolerance.
    pub preserved: bool,
    /// `Δ(K) ≥ Δ(H)` up to the tolerance, as `H ⊂ K` requires.
    pub monotone: bool,
}

pub const DELTA_TOL: f64 = 1e-6;

/// Check that the construction did not change the critical determinant.
pub fn delta_preserved(k: &ConvexDomain, opts: &SearchOptions) -> Result<DeltaCheck> {
    let comp = k
        .as_composite()
        .ok_or_else(|| Error::InvalidDomain("expected a constructed domain".into()))?;
    let delta_k = critical_search(k, opts)?.delta_est;
    let delta_h = critical_search(comp.base(), opts)?.delta_est;
    Ok(DeltaCheck {
        delta_k,
        delta_h,
        preserved: (delta_k - delta_h).abs() <= DELTA_TOL,
        monotone: delta_k >= delta_h - DELTA_TOL,
    })
}
