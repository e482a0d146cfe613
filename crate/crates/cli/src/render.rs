//! Deterministic SVG figures of domains and lattices.

use std::fmt::Write as _;

use critlocus::{geometry::Region, io::format_domain, ConvexDomain, Lattice2, Result, Vec2};

/// Half-width of the square view box, centred at the origin.
pub const VIEW: f64 = 1.6;

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub boundary_samples: usize,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self { width: 800, height: 800, boundary_samples: 1440 }
    }
}

struct Canvas {
    w: f64,
    h: f64,
}

impl Canvas {
    fn map(&self, p: &Vec2) -> (f64, f64) {
        ((p.x + VIEW) / (2.0 * VIEW) * self.w, (VIEW - p.y) / (2.0 * VIEW) * self.h)
    }

    fn path(&self, pts: &[Vec2], closed: bool) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
        }
        if closed {
            d.push('Z');
        }
        d.trim_end().to_string()
    }
}

fn describe(domain: &ConvexDomain) -> String {
    match domain.as_composite() {
        Some(c) => format!(
            "composite over {} with {} gaps",
            format_domain(c.base()).unwrap_or_default(),
            c.triangles().len()
        ),
        None => format_domain(domain).unwrap_or_default(),
    }
}

pub fn render_svg(domain: &ConvexDomain, lattice: Option<&Lattice2>, spec: &RenderSpec) -> Result<String> {
    let c = Canvas { w: f64::from(spec.width), h: f64::from(spec.height) };
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, spec.width, spec.height);

    let (ox, oy) = c.map(&Vec2::zeros());
    let _ = writeln!(out, r##"<g id="axes" stroke="#bbbbbb" stroke-width="0.5">"##);
    let _ = writeln!(out, r#"<line x1="0" y1="{oy:.3}" x2="{}" y2="{oy:.3}"/>"#, spec.width);
    let _ = writeln!(out, r#"<line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{}"/>"#, spec.height);
    let _ = writeln!(out, "</g>");

    if let Some(comp) = domain.as_composite() {
        let base: Vec<Vec2> = comp.base().boundary_samples(spec.boundary_samples).iter().map(|b| b.point).collect();
        let _ = writeln!(
            out,
            r##"<path id="base" d="{}" fill="none" stroke="#999999" stroke-width="1" stroke-dasharray="4 3"/>"##,
            c.path(&base, true)
        );
        let _ = writeln!(out, r##"<g id="tangents" stroke="#1f77b4" stroke-width="0.8" fill="none">"##);
        for tr in comp.triangles() {
            for s in [1.0, -1.0] {
                let _ = writeln!(out, r#"<path d="{}"/>"#, c.path(&[s * tr.pa, s * tr.v, s * tr.pb], false));
            }
        }
        let _ = writeln!(out, "</g>");
    }

    let boundary: Vec<Vec2> = domain.boundary_samples(spec.boundary_samples).iter().map(|b| b.point).collect();
    let _ = writeln!(
        out,
        r##"<path id="boundary" d="{}" fill="#f2f2f2" fill-opacity="0.5" stroke="black" stroke-width="1.5"/>"##,
        c.path(&boundary, true)
    );

    if let Some(l) = lattice {
        let mut pts = l.enumerate_nonzero(VIEW * std::f64::consts::SQRT_2)?;
        pts.retain(|p| p.point.x.abs() <= VIEW && p.point.y.abs() <= VIEW);
        pts.sort_by(|a, b| (a.m, a.n).cmp(&(b.m, b.n)));
        let _ = writeln!(out, r#"<g id="lattice">"#);
        let _ = writeln!(out, r#"<circle cx="{ox:.3}" cy="{oy:.3}" r="3" fill="black"/>"#);
        for p in &pts {
            let (x, y) = c.map(&p.point);
            let colour = if domain.classify(&p.point) == Region::Boundary { "#d62728" } else { "#555555" };
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{colour}"/>"#);
        }
        let _ = writeln!(out, "</g>");
        let _ = writeln!(out, r#"<g id="labels" font-family="sans-serif" font-size="12" fill="black">"#);
        let on_boundary = l.boundary_points(domain)?;
        for (i, p) in on_boundary.iter().enumerate() {
            let (x, y) = c.map(&(p * 1.08));
            let _ = writeln!(out, r#"<text x="{x:.3}" y="{y:.3}" text-anchor="middle">{}</text>"#, i + 1);
        }
        let _ = writeln!(
            out,
            r#"<text x="8" y="{:.3}">covolume {:.6}, {} points on the boundary</text>"#,
            c.h - 8.0,
            l.covolume(),
            on_boundary.len()
        );
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(
        out,
        r#"<text x="8" y="18" font-family="sans-serif" font-size="13">{}</text>"#,
        describe(domain).replace('&', "&amp;").replace('<', "&lt;")
    );
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_figure_is_deterministic() {
        let d = ConvexDomain::unit_disc();
        let l = Lattice2::new(Vec2::new(1.0, 0.0), Vec2::new(0.5, 0.75f64.sqrt())).unwrap();
        let a = render_svg(&d, Some(&l), &RenderSpec::default()).unwrap();
        let b = render_svg(&d, Some(&l), &RenderSpec::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("#d62728").count(), 6);
    }
}
