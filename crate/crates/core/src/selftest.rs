//! Quick end-to-end invariant checks, run by the `selftest` command.

use std::f64::consts::PI;

use crate::analysis::{box_dimension_param, embed_lattice};
use crate::construct::{build_construction, cantor_gaps, verify_locus};
use crate::critical::{critical_search, locus_parameterize, LocusOptions, SearchOptions};
use crate::dirichlet::{continued_fraction, dirichlet_solvable, flow_trajectory};
use crate::geometry::ConvexDomain;
use crate::lattice::Lattice2;
use crate::{Result, Vec2};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

pub fn run() -> Vec<Check> {
    let sqrt3_2 = 0.75f64.sqrt();
    let opts = SearchOptions::default();
    vec![
        check("disc critical determinant", || {
            let r = critical_search(&ConvexDomain::unit_disc(), &opts)?;
            Ok(((r.delta_est - sqrt3_2).abs() < 1e-8, format!("delta = {}", r.delta_est)))
        }),
        check("square critical determinant", || {
            let r = critical_search(&ConvexDomain::square(), &opts)?;
            Ok(((r.delta_est - 1.0).abs() < 1e-8 && r.parallelogram_warning, format!("delta = {}", r.delta_est)))
        }),
        check("regular hexagon: 4 delta = area", || {
            let hex = ConvexDomain::regular_hexagon(1.0)?;
            let r = critical_search(&hex, &opts)?;
            let gap = (4.0 * r.delta_est - hex.area()).abs();
            Ok((gap < 1e-7 && r.clusters.len() == 1, format!("|4 delta - V| = {gap:e}")))
        }),
        check("lattice reduction", || {
            let l = Lattice2::new(Vec2::new(1.0, 0.0), Vec2::new(10.0, 1.0))?;
            let r = l.reduce();
            let ok = (r.v1().norm() - 1.0).abs() < 1e-15 && (r.v2().norm() - 1.0).abs() < 1e-15;
            Ok((ok, format!("reduced basis {:?} {:?}", r.v1().as_slice(), r.v2().as_slice())))
        }),
        check("disc locus closes", || {
            let c = locus_parameterize(&ConvexDomain::unit_disc(), 61, &LocusOptions::default())?;
            let e = embed_lattice(&c.points[0].lattice);
            Ok((c.closes && (e[0] - 1.0).abs() < 1e-12, format!("delta = {}", c.delta)))
        }),
        check("construction at cantor depth 2", || {
            let q = cantor_gaps(2)?;
            let k = ConvexDomain::composite(build_construction(&ConvexDomain::unit_disc(), &q)?);
            let v = verify_locus(&k, &q, 500)?;
            let d = critical_search(&k, &opts)?.delta_est;
            let ok = v.agreement_fraction == 1.0 && (d - sqrt3_2).abs() < 1e-6;
            Ok((ok, format!("agreement = {}, delta = {d}", v.agreement_fraction)))
        }),
        check("cantor box counts", || {
            let s = box_dimension_param(&cantor_gaps(6)?, 6)?;
            let exact = s.counts.iter().enumerate().all(|(k, &c)| c == 1 << (k + 1));
            Ok((exact, format!("slope = {}", s.slope)))
        }),
        check("continued fraction of the golden ratio", || {
            let cf = continued_fraction(0.5 * (1.0 + 5f64.sqrt()), 20);
            Ok((cf.partial_quotients.iter().all(|&a| a == 1), format!("{} terms", cf.partial_quotients.len())))
        }),
        check("dirichlet theorem for pi", || {
            let ok = (1..=6).all(|e| {
                let t = 10f64.powi(e);
                dirichlet_solvable(PI, 1.0 / t, t).solvable
            });
            Ok((ok, "T = 10 … 10^6".into()))
        }),
        check("flow preserves covolume", || {
            let traj = flow_trajectory(2f64.sqrt(), 10.0, 0.1)?;
            let worst = traj.iter().map(|s| (s.lattice.covolume() - 1.0).abs()).fold(0.0, f64::max);
            Ok((worst < 1e-12, format!("max |covolume - 1| = {worst:e}")))
        }),
    ]
}
