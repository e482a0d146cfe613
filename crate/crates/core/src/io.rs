//! Text formats: domain specifications, domain files, lattice literals,
//! parameter sets and numbers.

use std::path::Path;

use crate::construct::{build_construction_on_arc, cantor_gaps, ClosedSet01, CompositeDomain};
use crate::critical::CriticalArc;
use crate::geometry::{ConvexDomain, Shape};
use crate::lattice::Lattice2;
use crate::{Error, Mat2, Result, Vec2};

/// A float with 17 significant digits, which always round-trips.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
        .and_then(|v| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Parse(format!("not a finite number: {s:?}")))
            }
        })
}

fn parse_list(s: &str, len: usize) -> Result<Vec<f64>> {
    let v: Vec<f64> = s.split(',').map(parse_f64).collect::<Result<_>>()?;
    if v.len() != len {
        return Err(Error::Parse(format!("expected {len} numbers, got {}", v.len())));
    }
    Ok(v)
}

fn param<'a>(rest: &'a str, key: &str) -> Result<&'a str> {
    rest.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Parse(format!("expected {key}=…, got {rest:?}")))
}

fn matrix(s: &str) -> Result<Mat2> {
    let v = parse_list(s, 4)?;
    Ok(Mat2::new(v[0], v[1], v[2], v[3]))
}

/// Parse a domain specification such as `disc`, `lp:p=3` or
/// `affine:g=1,0.5,0,1:base=square`. Composite domains are loaded from their
/// file.
pub fn parse_domain(spec: &str) -> Result<ConvexDomain> {
    let spec = spec.trim();
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match (kind, rest) {
        ("disc", "") => Ok(ConvexDomain::unit_disc()),
        ("disc", r) => ConvexDomain::disc(parse_f64(param(r, "r")?)?),
        ("square", "") => Ok(ConvexDomain::square()),
        ("parallelogram", r) => ConvexDomain::parallelogram(matrix(param(r, "g")?)?),
        ("hexagon", "regular") => ConvexDomain::regular_hexagon(1.0),
        ("hexagon", r) => {
            let v = parse_list(param(r, "v")?, 6)?;
            ConvexDomain::hexagon([
                Vec2::new(v[0], v[1]),
                Vec2::new(v[2], v[3]),
                Vec2::new(v[4], v[5]),
            ])
        }
        ("lp", r) => ConvexDomain::lp_ball(parse_f64(param(r, "p")?)?),
        ("affine", r) => {
            let (g, base) = r
                .split_once(":base=")
                .ok_or_else(|| Error::Parse("affine needs g=…:base=<spec>".into()))?;
            ConvexDomain::affine(matrix(param(g, "g")?)?, &parse_domain(base)?)
        }
        ("composite", r) => read_domain_file(param(r, "file")?),
        _ => Err(Error::Parse(format!("unknown domain specification {spec:?}"))),
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(",")
}

fn format_shape(shape: &Shape) -> Option<String> {
    Some(match shape {
        Shape::Disc { radius } => format!("disc:r={}", fmt_f64(*radius)),
        Shape::Parallelogram(map) => format!("parallelogram:g={}", join(map.matrix().transpose().as_slice())),
        Shape::Hexagon(poly) => {
            let v = poly.vertices();
            format!("hexagon:v={}", join(&[v[0].x, v[0].y, v[1].x, v[1].y, v[2].x, v[2].y]))
        }
        Shape::LpBall { p } => format!("lp:p={}", fmt_f64(*p)),
        Shape::Affine { map, base } => format!(
            "affine:g={}:base={}",
            join(map.matrix().transpose().as_slice()),
            format_shape(base)?
        ),
        Shape::Composite(_) => return None,
    })
}

/// Specification string reproducing the domain exactly; `None` for composites.
pub fn format_domain(domain: &ConvexDomain) -> Option<String> {
    format_shape(domain.shape())
}

/// Text form of a constructed domain: base specification, arc and gaps.
pub fn domain_to_text(k: &CompositeDomain) -> Result<String> {
    let base = format_domain(k.base())
        .ok_or_else(|| Error::InvalidDomain("nested composite domains are not supported".into()))?;
    let mut out = String::from("# critlocus composite domain\n");
    out.push_str(&format!("base: {base}\n"));
    out.push_str(&format!(
        "arc: {} {}\n",
        fmt_f64(k.arc().theta_start()),
        fmt_f64(k.arc().theta_end())
    ));
    for &(a, b) in k.q().gaps() {
        out.push_str(&format!("gap: {} {}\n", fmt_f64(a), fmt_f64(b)));
    }
    Ok(out)
}

pub fn domain_from_text(text: &str) -> Result<ConvexDomain> {
    let mut base = None;
    let mut arc = None;
    let mut gaps = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key: value", lineno + 1)))?;
        let value = value.trim();
        let pair = || -> Result<(f64, f64)> {
            let mut it = value.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => Ok((parse_f64(a)?, parse_f64(b)?)),
                _ => Err(Error::Parse(format!("line {}: expected two numbers", lineno + 1))),
            }
        };
        match key.trim() {
            "base" => base = Some(parse_domain(value)?),
            "arc" => arc = Some(pair()?),
            "gap" => gaps.push(pair()?),
            other => return Err(Error::Parse(format!("line {}: unknown key {other:?}", lineno + 1))),
        }
    }
    let base = base.ok_or_else(|| Error::Parse("missing base".into()))?;
    let (t0, t1) = arc.ok_or_else(|| Error::Parse("missing arc".into()))?;
    let q = ClosedSet01::from_gaps(gaps)?;
    let k = build_construction_on_arc(CriticalArc::new(base, t0, t1)?, &q)?;
    Ok(ConvexDomain::composite(k))
}

pub fn write_domain_file(path: impl AsRef<Path>, k: &CompositeDomain) -> Result<()> {
    std::fs::write(path, domain_to_text(k)?)?;
    Ok(())
}

pub fn read_domain_file(path: impl AsRef<Path>) -> Result<ConvexDomain> {
    domain_from_text(&std::fs::read_to_string(path)?)
}

/// `lattice:v1x,v1y,v2x,v2y`.
pub fn parse_lattice(s: &str) -> Result<Lattice2> {
    let body = s
        .trim()
        .strip_prefix("lattice:")
        .ok_or_else(|| Error::Parse(format!("expected lattice:…, got {s:?}")))?;
    let v = parse_list(body, 4)?;
    Lattice2::new(Vec2::new(v[0], v[1]), Vec2::new(v[2], v[3]))
}

/// `cantor:depth=N`, `full`, `endpoints` or `gaps:a,b;c,d;…`.
pub fn parse_q(s: &str) -> Result<ClosedSet01> {
    let s = s.trim();
    match s.split_once(':') {
        None if s == "full" => Ok(ClosedSet01::full()),
        None if s == "endpoints" => Ok(ClosedSet01::endpoints()),
        Some(("cantor", r)) => {
            let depth = param(r, "depth")?
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad depth in {s:?}")))?;
            cantor_gaps(depth)
        }
        Some(("gaps", r)) => {
            let gaps = r
                .split(';')
                .filter(|g| !g.trim().is_empty())
                .map(|g| parse_list(g, 2).map(|v| (v[0], v[1])))
                .collect::<Result<Vec<_>>>()?;
            ClosedSet01::from_gaps(gaps)
        }
        _ => Err(Error::Parse(format!("unknown parameter set {s:?}"))),
    }
}

/// `sqrt2`, `golden`, `pi` or a decimal literal.
pub fn parse_alpha(s: &str) -> Result<f64> {
    match s.trim() {
        "sqrt2" => Ok(std::f64::consts::SQRT_2),
        "golden" => Ok(0.5 * (1.0 + 5f64.sqrt())),
        "pi" => Ok(std::f64::consts::PI),
        other => parse_f64(other),
    }
}
