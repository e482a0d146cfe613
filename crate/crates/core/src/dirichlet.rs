//! Continued fractions, Dirichlet-type approximation and the diagonal flow.

use crate::lattice::Lattice2;
use crate::{Result, Vec2};

/// Denominators beyond this are not trusted from a double-precision expansion.
const MAX_RELIABLE_DENOMINATOR: i64 = 1 << 21;
/// Largest `T` for which the minimum is also checked by direct search.
pub const BRUTE_FORCE_LIMIT: f64 = 1e5;

#[derive(Clone, Debug, PartialEq)]
pub struct CFExpansion {
    pub alpha: f64,
    pub partial_quotients: Vec<i64>,
    pub convergents: Vec<(i64, i64)>,
    /// The input was recognised as rational and the expansion ended.
    pub terminated: bool,
    /// More terms were requested than double precision supports.
    pub precision_exhausted: bool,
}

/// Floor-based expansion of `alpha` with at most `n_terms` partial quotients.
pub fn continued_fraction(alpha: f64, n_terms: usize) -> CFExpansion {
    let mut out = CFExpansion {
        alpha,
        partial_quotients: Vec::new(),
        convergents: Vec::new(),
        terminated: false,
        precision_exhausted: false,
    };
    let (mut p1, mut q1, mut p2, mut q2) = (1i64, 0i64, 0i64, 1i64);
    let mut x = alpha;
    for _ in 0..n_terms.max(1) {
        let a = x.floor();
        let ai = a as i64;
        let (p, q) = (ai * p1 + p2, ai * q1 + q2);
        if q > MAX_RELIABLE_DENOMINATOR {
            out.precision_exhausted = true;
            break;
        }
        out.partial_quotients.push(ai);
        out.convergents.push((p, q));
        (p2, q2, p1, q1) = (p1, q1, p, q);
        let frac = x - a;
        let err = (alpha * q as f64 - p as f64).abs();
        if frac <= 0.0 || err <= 8.0 * f64::EPSILON * alpha.abs().max(1.0) * q as f64 {
            out.terminated = true;
            break;
        }
        x = 1.0 / frac;
    }
    out
}

/// `|qα − p|` for the integer `p` nearest to `qα`, with that `p`.
pub fn nearest(alpha: f64, q: i64) -> (i64, f64) {
    let x = alpha * q as f64;
    let p = x.round();
    (p as i64, (x - p).abs())
}

/// Minimizer of `‖qα‖` over `1 ≤ q ≤ q_max` by direct search, as `(p, q, distance)`.
pub fn min_distance_brute(alpha: f64, q_max: i64) -> (i64, i64, f64) {
    let mut best = (0, 0, f64::INFINITY);
    for q in 1..=q_max.max(1) {
        let (p, d) = nearest(alpha, q);
        if d < best.2 {
            best = (p, q, d);
        }
    }
    best
}

/// Minimizer of `‖qα‖` over `1 ≤ q ≤ q_max` from the convergents. Returns
/// `None` when the expansion stops short of `q_max` for precision reasons.
pub fn min_distance_convergents(alpha: f64, q_max: i64) -> Option<(i64, i64, f64)> {
    let cf = continued_fraction(alpha, 64);
    let q = cf.convergents.iter().map(|c| c.1).filter(|&q| q >= 1 && q <= q_max).max()?;
    let reaches = cf.terminated || cf.convergents.iter().any(|c| c.1 > q_max);
    if !reaches {
        return None;
    }
    let (p, d) = nearest(alpha, q);
    Some((p, q, d))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirichletOutcome {
    pub solvable: bool,
    /// A solution `(p, q)` when solvable, otherwise the best candidate.
    pub witness: Option<(i64, i64)>,
    /// `min_{1 ≤ q ≤ T} ‖qα‖`.
    pub min_distance: f64,
}

/// Whether `|qα − p| ≤ ψ` and `|q| ≤ T` has a nonzero integer solution.
pub fn dirichlet_solvable(alpha: f64, psi: f64, t: f64) -> DirichletOutcome {
    let q_max = t.max(1.0).floor() as i64;
    let best = match min_distance_convergents(alpha, q_max) {
        Some(b) => b,
        None => {
            if t > BRUTE_FORCE_LIMIT {
                log::warn!("continued fraction of {alpha} exhausted below T = {t}; searching directly");
            }
            min_distance_brute(alpha, q_max)
        }
    };
    let (p, q, d) = best;
    if d <= psi {
        DirichletOutcome { solvable: true, witness: Some((p, q)), min_distance: d }
    } else if psi >= 1.0 {
        DirichletOutcome { solvable: true, witness: Some((1, 0)), min_distance: d }
    } else {
        DirichletOutcome { solvable: false, witness: None, min_distance: d }
    }
}

/// Families of approximation functions offered on the command line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PsiFamily {
    /// `ψ(T) = c / T`.
    Linear { c: f64 },
    /// `ψ(T) = 1 / (T log T)`.
    LogLinear,
}

impl PsiFamily {
    /// `ψ(T)`, clipped to `(0, 1]`.
    pub fn eval(&self, t: f64) -> f64 {
        let v = match self {
            PsiFamily::Linear { c } => c / t,
            PsiFamily::LogLinear => 1.0 / (t * t.ln()),
        };
        if v.is_finite() && v > 0.0 {
            v.min(1.0)
        } else {
            1.0
        }
    }
}

/// `m + nα` to nearly full relative precision for large integers.
fn shifted(alpha: f64, m: i64, n: i64) -> f64 {
    let nf = n as f64;
    let hi = nf * alpha;
    let lo = nf.mul_add(alpha, -hi);
    let mf = m as f64;
    let s = mf + hi;
    let bb = s - mf;
    let err = (mf - (s - bb)) + (hi - bb);
    s + (err + lo)
}

/// The point `g_t u_α (m, n) = (e^t (m + nα), e^{-t} n)`.
pub fn flow_point(alpha: f64, t: f64, m: i64, n: i64) -> Vec2 {
    Vec2::new(t.exp() * shifted(alpha, m, n), (-t).exp() * n as f64)
}

/// Image of the solution vector `(−p, q)` under `g_t u_α`.
pub fn witness_image(alpha: f64, t: f64, p: i64, q: i64) -> Vec2 {
    flow_point(alpha, t, -p, q)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowSample {
    pub t: f64,
    /// Reduced basis of `g_t u_α ℤ²`.
    pub lattice: Lattice2,
    pub lambda1_sup: f64,
    /// A shortest vector in the supremum norm.
    pub vector: Vec2,
    /// Its integer coordinates `(m, n)`.
    pub coeffs: (i64, i64),
}

fn sup(v: &Vec2) -> f64 {
    v.x.abs().max(v.y.abs())
}

/// One sample of the trajectory `t ↦ g_t u_α ℤ²`.
pub fn flow_sample(alpha: f64, t: f64) -> Result<FlowSample> {
    let at = |c: (i64, i64)| flow_point(alpha, t, c.0, c.1);
    // Gauss reduction carried out on integer coordinates
    let (mut c1, mut c2) = ((1i64, 0i64), (0i64, 1i64));
    if at(c1).norm() > at(c2).norm() {
        std::mem::swap(&mut c1, &mut c2);
    }
    for _ in 0..10_000 {
        let (w1, w2) = (at(c1), at(c2));
        let k = (w1.dot(&w2) / w1.norm_squared()).round() as i64;
        if k != 0 {
            c2 = (c2.0 - k * c1.0, c2.1 - k * c1.1);
        }
        if at(c2).norm() < at(c1).norm() {
            std::mem::swap(&mut c1, &mut c2);
        } else if k == 0 {
            break;
        }
    }
    let (w1, w2) = (at(c1), at(c2));
    let lattice = Lattice2::new(w1, w2)?;
    let det = lattice.covolume();
    let radius = std::f64::consts::SQRT_2 * sup(&w1);
    let i_max = (radius * w2.norm() / det).ceil() as i64 + 1;
    let j_max = (radius * w1.norm() / det).ceil() as i64 + 1;
    let mut best = (sup(&w1), w1, c1);
    for i in -i_max..=i_max {
        for j in -j_max..=j_max {
            if (i, j) == (0, 0) {
                continue;
            }
            let c = (i * c1.0 + j * c2.0, i * c1.1 + j * c2.1);
            let v = at(c);
            let s = sup(&v);
            if s < best.0 {
                best = (s, v, c);
            }
        }
    }
    Ok(FlowSample { t, lattice, lambda1_sup: best.0, vector: best.1, coeffs: best.2 })
}

/// Samples at `t = 0, dt, 2dt, …, t_max`.
pub fn flow_trajectory(alpha: f64, t_max: f64, dt: f64) -> Result<Vec<FlowSample>> {
    let steps = (t_max / dt + 1e-9).floor() as usize;
    (0..=steps).map(|i| flow_sample(alpha, i as f64 * dt)).collect()
}
