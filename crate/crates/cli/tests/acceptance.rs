//! Acceptance criteria, one pass/fail line each. Run with
//! `cargo test -p critlocus-cli --test acceptance`.

use std::f64::consts::{PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use critlocus::analysis::default_locus_kmax;
use critlocus::dirichlet::{min_distance_brute, min_distance_convergents, witness_image};
use critlocus::{
    angle_of, box_dimension_locus, box_dimension_param, build_construction, cantor_gaps, critical_search,
    dirichlet_solvable, flow_trajectory, verify_locus, ConvexDomain, CriticalArc, SearchOptions, Vec2,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_critlocus"))
}

/// Runs the binary and returns stdout, failing on a nonzero exit.
fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = bin().args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn field(output: &str, key: &str) -> Result<f64, String> {
    output
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(':')))
        .ok_or_else(|| format!("no {key} in output"))?
        .trim()
        .parse()
        .map_err(|e| format!("{key}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || format!("took {:.2} s, limit {limit} s", elapsed.as_secs_f64()))
}

fn c1_disc() -> Outcome {
    let start = Instant::now();
    let out = run_cli(&["delta", "disc", "--grid", "720"])?;
    let elapsed = start.elapsed();
    let delta = field(&out, "delta_est")?;
    let err = (delta - 0.75f64.sqrt()).abs();
    ensure(err < 1e-8, || format!("|delta - sqrt(3)/2| = {err:e}"))?;
    within(elapsed, 2.0)?;
    Ok(format!("|delta - sqrt(3)/2| = {err:.1e} in {:.2} s", elapsed.as_secs_f64()))
}

fn c2_square() -> Outcome {
    let out = run_cli(&["delta", "square"])?;
    let delta = field(&out, "delta_est")?;
    let ratio = field(&out, "minkowski_ratio")?;
    ensure((delta - 1.0).abs() < 1e-8, || format!("delta = {delta}"))?;
    ensure((ratio - 1.0).abs() < 1e-8, || format!("ratio = {ratio}"))?;
    ensure(out.contains("ParallelogramWarning"), || "no parallelogram warning".into())?;
    Ok(format!("delta = {delta}, ratio = {ratio}, warning present"))
}

fn random_hexagon(rng: &mut impl Rng) -> ConvexDomain {
    loop {
        let mut angles = [rng.gen_range(0.0..PI), rng.gen_range(0.0..PI), rng.gen_range(0.0..PI)];
        angles.sort_by(f64::total_cmp);
        let v = angles.map(|a| rng.gen_range(0.5..1.5) * Vec2::new(a.cos(), a.sin()));
        if let Ok(h) = ConvexDomain::hexagon(v) {
            return h;
        }
    }
}

fn c3_hexagons() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut domains = vec![ConvexDomain::regular_hexagon(1.0).map_err(|e| e.to_string())?];
    domains.extend((0..20).map(|_| random_hexagon(&mut rng)));
    let mut worst = 0.0f64;
    for (i, h) in domains.iter().enumerate() {
        let r = critical_search(h, &SearchOptions::default()).map_err(|e| format!("hexagon {i}: {e}"))?;
        worst = worst.max((4.0 * r.delta_est - h.area()).abs());
        ensure(r.clusters.len() == 1, || format!("hexagon {i}: {} clusters", r.clusters.len()))?;
    }
    let elapsed = start.elapsed();
    ensure(worst < 1e-7, || format!("max |4 delta - V| = {worst:e}"))?;
    within(elapsed, 5.0)?;
    Ok(format!("21 hexagons, max |4 delta - V| = {worst:.1e}, one cluster each, {:.2} s", elapsed.as_secs_f64()))
}

fn c4_lp_balls() -> Outcome {
    let mut notes = Vec::new();
    for p in [1.5, 3.0, 4.0] {
        let k = ConvexDomain::lp_ball(p).map_err(|e| e.to_string())?;
        let r = critical_search(&k, &SearchOptions::default()).map_err(|e| e.to_string())?;
        let lower = k.area() / 4.0;
        let upper = 0.75f64.sqrt() * k.outer_radius().powi(2);
        ensure(lower <= r.delta_est && r.delta_est <= upper, || {
            format!("p = {p}: delta {} outside [{lower}, {upper}]", r.delta_est)
        })?;
        ensure((1..=2).contains(&r.clusters.len()) && (1..=2).contains(&r.distinct_up_to_symmetry), || {
            format!("p = {p}: {} clusters, {} up to symmetry", r.clusters.len(), r.distinct_up_to_symmetry)
        })?;
        notes.push(format!("p={p}: delta={:.5} clusters={}", r.delta_est, r.clusters.len()));
    }
    Ok(notes.join("; "))
}

fn c5_construction() -> Outcome {
    let disc = ConvexDomain::unit_disc();
    let target = 0.75f64.sqrt();
    let mut notes = Vec::new();
    for depth in [0u32, 1, 2, 4, 6] {
        let start = Instant::now();
        let q = cantor_gaps(depth).map_err(|e| e.to_string())?;
        let k = ConvexDomain::composite(build_construction(&disc, &q).map_err(|e| e.to_string())?);
        let v = verify_locus(&k, &q, 2000).map_err(|e| e.to_string())?;
        let d = critical_search(&k, &SearchOptions::default()).map_err(|e| e.to_string())?.delta_est;
        let elapsed = start.elapsed();
        ensure(v.agreement_fraction == 1.0, || format!("depth {depth}: agreement {}", v.agreement_fraction))?;
        ensure((d - target).abs() < 1e-6, || format!("depth {depth}: delta {d}"))?;
        if depth == 6 {
            within(elapsed, 60.0)?;
            notes.push(format!("depth 6 in {:.2} s", elapsed.as_secs_f64()));
        }
    }
    Ok(format!("agreement 1.0 and delta preserved at depths 0,1,2,4,6; {}", notes.join("")))
}

fn c6_dimension() -> Outcome {
    let start = Instant::now();
    let target = 2f64.ln() / 3f64.ln();
    let q = cantor_gaps(8).map_err(|e| e.to_string())?;
    let param = box_dimension_param(&q, 8).map_err(|e| e.to_string())?;
    let exact = param.counts.iter().enumerate().all(|(i, &c)| c == 1usize << (i + 1));
    ensure(exact, || format!("parameter counts {:?}", param.counts))?;
    ensure((param.slope - target).abs() < 0.01, || format!("parameter slope {}", param.slope))?;
    let k = build_construction(&ConvexDomain::unit_disc(), &q).map_err(|e| e.to_string())?;
    let n = 3usize.pow(8);
    let locus = box_dimension_locus(&k, &q, n, default_locus_kmax(&q, n)).map_err(|e| e.to_string())?;
    ensure((locus.slope - target).abs() < 0.05, || format!("locus slope {}", locus.slope))?;
    let elapsed = start.elapsed();
    within(elapsed, 120.0)?;
    Ok(format!(
        "parameter slope {:.5}, locus slope {:.4}, target {target:.5}, {:.2} s",
        param.slope,
        locus.slope,
        elapsed.as_secs_f64()
    ))
}

fn c7_interleaving() -> Outcome {
    let disc = ConvexDomain::unit_disc();
    let arc = CriticalArc::canonical_disc(disc.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut violations = 0;
    for _ in 0..100 {
        let t1: f64 = rng.gen_range(0.0..1.0);
        let mut t2: f64 = rng.gen_range(0.0..1.0);
        while (t1 - t2).abs() < 1e-6 {
            t2 = rng.gen_range(0.0..1.0);
        }
        let a = arc.lattice(t1).and_then(|l| l.boundary_points(&disc)).map_err(|e| e.to_string())?;
        let b = arc.lattice(t2).and_then(|l| l.boundary_points(&disc)).map_err(|e| e.to_string())?;
        ensure(a.len() == 6 && b.len() == 6, || format!("t = {t1}, {t2}: not six boundary points"))?;
        for i in 0..6 {
            let lo = angle_of(&a[i]);
            let width = (angle_of(&a[(i + 1) % 6]) - lo).rem_euclid(TAU);
            let inside = b
                .iter()
                .filter(|x| {
                    let d = (angle_of(x) - lo).rem_euclid(TAU);
                    d > 0.0 && d < width
                })
                .count();
            if inside != 1 {
                violations += 1;
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("100 pairs, 0 violations".into())
}

fn wrap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

fn c8_uniqueness() -> Outcome {
    let arc = CriticalArc::canonical_disc(ConvexDomain::unit_disc());
    let six = |t: f64| -> [Vec2; 6] {
        let p = arc.p(t);
        let q = arc.q(t).expect("disc companion");
        [p, q, q - p, -p, -q, p - q]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 240;
    for _ in 0..100 {
        let psi: f64 = rng.gen_range(0.0..TAU);
        let target = Vec2::new(psi.cos(), psi.sin());
        let mut roots: Vec<f64> = Vec::new();
        for k in 0..6 {
            let h = |t: f64| wrap(angle_of(&six(t)[k]), psi);
            for j in 0..n {
                let (mut a, mut b) = (j as f64 / n as f64, (j + 1) as f64 / n as f64);
                let (ha, hb) = (h(a), h(b));
                if ha.abs() > 1.0 || hb.abs() > 1.0 || ha * hb > 0.0 || (hb == 0.0 && j + 1 < n) {
                    continue;
                }
                for _ in 0..80 {
                    let m = 0.5 * (a + b);
                    if h(a) * h(m) <= 0.0 {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                let t = 0.5 * (a + b);
                let miss = (six(t)[k] - target).norm();
                ensure(miss < 1e-9, || format!("psi = {psi}: root misses by {miss:e}"))?;
                roots.push(t.rem_euclid(1.0));
            }
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
        if roots.len() == 2 && (roots[1] - roots[0] - 1.0).abs() < 1e-9 {
            roots.pop();
        }
        ensure(roots.len() == 1, || format!("psi = {psi}: parameters {roots:?}"))?;
    }
    Ok("100 boundary points, one parameter each".into())
}

fn c9_dirichlet() -> Outcome {
    let start = Instant::now();
    let golden = 0.5 * (1.0 + 5f64.sqrt());
    for (name, alpha) in [("sqrt2", 2f64.sqrt()), ("golden", golden), ("pi", PI)] {
        for i in 0..50 {
            let t = 10f64.powf(6.0 * i as f64 / 49.0);
            let r = dirichlet_solvable(alpha, 1.0 / t, t);
            ensure(r.solvable, || format!("{name}: not solvable at T = {t}"))?;
        }
    }
    let (mut a, mut b) = (1i64, 2i64);
    let mut fib_checked = 0;
    while b <= 1_000_000 {
        let t = b as f64;
        let r = dirichlet_solvable(golden, 0.4 / t, t);
        ensure(!r.solvable, || format!("golden with 0.4/T solvable at Fibonacci T = {b}"))?;
        fib_checked += 1;
        (a, b) = (b, a + b);
    }
    let mut qs: Vec<i64> = (1..=300).collect();
    qs.extend((0..200).map(|i| (300f64 * (1e4f64 / 300.0).powf(i as f64 / 199.0)).round() as i64));
    for alpha in [2f64.sqrt(), golden, PI] {
        for &q in &qs {
            let conv = min_distance_convergents(alpha, q).ok_or_else(|| format!("alpha {alpha}: expansion ran out at T = {q}"))?;
            let brute = min_distance_brute(alpha, q);
            ensure(conv == brute, || format!("alpha {alpha}, T = {q}: {conv:?} vs {brute:?}"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 10.0)?;
    Ok(format!(
        "150 solvable queries, {fib_checked} Fibonacci failures, {} exact minimum comparisons, {:.2} s",
        3 * qs.len(),
        elapsed.as_secs_f64()
    ))
}

fn c10_flow() -> Outcome {
    let golden = 0.5 * (1.0 + 5f64.sqrt());
    let csv = run_cli(&["flow", "--alpha", "golden", "--tmax", "20"])?;
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    ensure(rows.len() == 2001, || format!("{} CSV rows", rows.len()))?;
    for row in &rows {
        let lambda: f64 = row.split(',').nth(1).and_then(|s| s.parse().ok()).ok_or("bad CSV row")?;
        ensure(lambda <= 1.0 + 1e-12, || format!("lambda1_sup {lambda} > 1 in row {row}"))?;
    }
    let traj = flow_trajectory(golden, 20.0, 0.01).map_err(|e| e.to_string())?;
    let worst = traj.iter().map(|s| (s.lattice.covolume() - 1.0).abs()).fold(0.0, f64::max);
    ensure(worst < 1e-12, || format!("max |covolume - 1| = {worst:e}"))?;
    for i in 0..20 {
        let t = 10f64.powf(1.0 + 5.0 * i as f64 / 19.0);
        let r = dirichlet_solvable(golden, 1.0 / t, t);
        let (p, q) = r.witness.ok_or_else(|| format!("no witness at T = {t}"))?;
        let w = witness_image(golden, t.ln(), p, q);
        let s = w.x.abs().max(w.y.abs());
        ensure(s <= 1.0 + 1e-12, || format!("T = {t}: witness image sup norm {s}"))?;
    }
    Ok(format!("{} samples, max |covolume - 1| = {worst:.1e}, 20 witness images in the unit square", traj.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("disc critical determinant", c1_disc),
        ("square with parallelogram warning", c2_square),
        ("hexagons: 4 delta = area, one cluster", c3_hexagons),
        ("Lp balls: bounds and cluster count", c4_lp_balls),
        ("construction end to end", c5_construction),
        ("box-counting dimension", c6_dimension),
        ("interleaving on the disc", c7_interleaving),
        ("uniqueness on the disc", c8_uniqueness),
        ("Dirichlet solvability", c9_dirichlet),
        ("diagonal flow", c10_flow),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] {} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
