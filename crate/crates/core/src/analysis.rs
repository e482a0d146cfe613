//! Box-counting dimension of parameter sets and of the loci they produce.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::construct::{ClosedSet01, CompositeDomain};
use crate::lattice::Lattice2;
use crate::{angle_of, cross, Error, Result, Vec2};

const TIE_TOL: f64 = 1e-9;
/// Scales coarser than this index are left out of the fit.
const FIT_FROM: u32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct BoxCountSeries {
    pub scales: Vec<f64>,
    pub counts: Vec<usize>,
    pub slope: f64,
    pub r_squared: f64,
    /// Index into `scales` of the first scale used in the fit.
    pub fit_start: usize,
}

/// Least-squares line through `(x, y)`: returns `(slope, r²)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return (0.0, 1.0);
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, r2)
}

fn series(scales: Vec<f64>, counts: Vec<usize>) -> BoxCountSeries {
    let fit_start = if scales.len() > FIT_FROM as usize { FIT_FROM as usize - 1 } else { 0 };
    let x: Vec<f64> = scales[fit_start..].iter().map(|e| -e.ln()).collect();
    let y: Vec<f64> = counts[fit_start..].iter().map(|&c| (c as f64).ln()).collect();
    let (slope, r_squared) = linear_fit(&x, &y);
    BoxCountSeries { scales, counts, slope, r_squared, fit_start }
}

/// Fewest intervals of length `eps` covering `Q`.
fn covering_number(components: &[(f64, f64)], eps: f64) -> usize {
    let tol = TIE_TOL * eps;
    let mut covered = f64::NEG_INFINITY;
    let mut count = 0usize;
    for &(c0, c1) in components {
        if c1 <= covered + tol {
            continue;
        }
        let fresh = c0 > covered + tol;
        let start = if fresh { c0 } else { covered };
        let boxes = ((c1 - start) / eps - TIE_TOL).ceil().max(if fresh { 1.0 } else { 0.0 }) as usize;
        count += boxes;
        covered = start + boxes as f64 * eps;
    }
    count
}

/// Covering numbers of `Q` at scales `3^{-k}`, `k = 1..=k_max`.
pub fn box_dimension_param(q: &ClosedSet01, k_max: u32) -> Result<BoxCountSeries> {
    let finest = 3f64.powi(-(k_max as i32));
    if let Some(res) = q.resolution() {
        if finest < res * (1.0 - 1e-9) {
            return Err(Error::ResolutionExceeded { box_size: finest, resolution: res });
        }
    }
    let components = q.components();
    let scales: Vec<f64> = (1..=k_max as i32).map(|k| 3f64.powi(-k)).collect();
    let counts = scales.iter().map(|&e| covering_number(&components, e)).collect();
    Ok(series(scales, counts))
}

fn canonical_basis(reduced: &Lattice2) -> (Vec2, Vec2) {
    let (r1, r2) = (reduced.v1(), reduced.v2());
    let det = cross(&r1, &r2).abs();
    let mut nearby = Vec::with_capacity(24);
    for i in -2i32..=2 {
        for j in -2i32..=2 {
            if (i, j) != (0, 0) {
                nearby.push(f64::from(i) * r1 + f64::from(j) * r2);
            }
        }
    }
    let shortest = nearby.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    let w1 = *nearby
        .iter()
        .filter(|v| v.norm() <= shortest * (1.0 + TIE_TOL) && angle_of(v) < std::f64::consts::PI)
        .min_by(|a, b| angle_of(a).total_cmp(&angle_of(b)))
        .expect("a shortest vector lies in the upper half-plane");
    let partners: Vec<Vec2> = nearby
        .into_iter()
        .filter(|v| (cross(&w1, v) - det).abs() <= TIE_TOL * det)
        .collect();
    let best = partners.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    let w2 = *partners
        .iter()
        .filter(|v| v.norm() <= best * (1.0 + TIE_TOL))
        .max_by(|a, b| (w1.dot(a) / a.norm()).total_cmp(&(w1.dot(b) / b.norm())))
        .expect("w1 is primitive");
    (w1, w2)
}

/// Coordinates of a lattice in `ℝ⁴`: a canonical reduced basis `(w1, w2)`.
///
/// `w1` is the shortest vector with the smallest angle in `[0, π)`; `w2` is the
/// shortest vector with `det(w1, w2) = covolume`, ties going to the smaller
/// angle from `w1`.
pub fn embed_lattice(l: &Lattice2) -> [f64; 4] {
    let (w1, w2) = canonical_basis(&l.reduce());
    [w1.x, w1.y, w2.x, w2.y]
}

/// Mesh count of points of `ℝ⁴` at scale `eps`.
fn mesh_count(points: &[[f64; 4]], eps: f64) -> usize {
    points
        .iter()
        .map(|p| p.map(|c| (c / eps).floor() as i64))
        .collect::<HashSet<_>>()
        .len()
}

/// Finest dyadic exponent worth fitting: boxes at least twice the parameter
/// resolution of `Q` (or of the sample grid when `Q` has none).
pub fn default_locus_kmax(q: &ClosedSet01, n_samples: usize) -> u32 {
    let res = q.resolution().unwrap_or(1.0 / n_samples.max(1) as f64);
    ((1.0 / res).log2().floor() as u32).saturating_sub(1).max(1)
}

/// Dyadic box counts of the embedded locus `{φ(t) : t ∈ Q}`, sampled on the
/// grid `j / n_samples`.
pub fn box_dimension_locus(
    k: &CompositeDomain,
    q: &ClosedSet01,
    n_samples: usize,
    k_max: u32,
) -> Result<BoxCountSeries> {
    let finest = 2f64.powi(-(k_max as i32));
    if let Some(res) = q.resolution() {
        if finest < res * (1.0 - 1e-9) {
            return Err(Error::ResolutionExceeded { box_size: finest, resolution: res });
        }
    }
    let n = n_samples.max(1);
    let points: Vec<[f64; 4]> = (0..=n)
        .into_par_iter()
        .map(|j| j as f64 / n as f64)
        .filter(|&t| q.distance(t) <= 1e-12)
        .map(|t| k.locus_lattice(t).map(|l| embed_lattice(&l)))
        .collect::<Result<_>>()?;
    let scales: Vec<f64> = (1..=k_max as i32).map(|e| 2f64.powi(-e)).collect();
    let counts = scales.iter().map(|&e| mesh_count(&points, e)).collect();
    Ok(series(scales, counts))
}
