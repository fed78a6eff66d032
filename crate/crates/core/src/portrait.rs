//! Phase portraits on the disc `(x, y) ↦ (x, y) / (1 + r)` as SVG.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::flow::integrator::{drive, AtEscape, CompiledField, Control};
use crate::flow::verdict::return_map_compiled;
use crate::flow::{default_radii, sample_points, scan_finite_equilibria, EquilibriumScan, IntegratorConfig, OrbitVerdict};
use crate::poly::{rat, VectorField};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PortraitSpec {
    pub width: u32,
    pub height: u32,
    pub seeds: Vec<[f64; 2]>,
    /// Time horizon for orbits that do not close.
    pub orbit_time: f64,
}

impl Default for PortraitSpec {
    fn default() -> Self {
        Self {
            width: 600,
            height: 600,
            seeds: sample_points(&default_radii()),
            orbit_time: 30.0,
        }
    }
}

const COLOR_PERIODIC: &str = "#1f77b4";
const COLOR_ESCAPING: &str = "#d62728";
const COLOR_INCONCLUSIVE: &str = "#7f7f7f";

/// Maps the plane onto the open unit disc.
pub fn disc_projection(z: [f64; 2]) -> [f64; 2] {
    let r = (z[0] * z[0] + z[1] * z[1]).sqrt();
    [z[0] / (1.0 + r), z[1] / (1.0 + r)]
}

struct Canvas {
    cx: f64,
    cy: f64,
    radius: f64,
}

impl Canvas {
    fn pixel(&self, w: [f64; 2]) -> (f64, f64) {
        (self.cx + self.radius * w[0], self.cy - self.radius * w[1])
    }
}

fn orbit(field: &CompiledField, seed: [f64; 2], cfg: &IntegratorConfig, t_end: f64) -> Vec<[f64; 2]> {
    let mut pts = vec![seed];
    let _ = drive(field, seed, cfg, t_end, AtEscape::Continue, |s| {
        if s.at_infinity {
            // run along the boundary circle
            let a0 = s.y0[1].atan2(s.y0[0]);
            let k = (s.sweep.abs() / 0.05).ceil().max(1.0) as usize;
            for j in 0..=k {
                let a = a0 + s.sweep * j as f64 / k as f64;
                pts.push([1e12 * a.cos(), 1e12 * a.sin()]);
            }
        }
        pts.push(s.y1);
        Control::Continue
    });
    pts
}

fn polyline(out: &mut String, canvas: &Canvas, pts: &[[f64; 2]], color: &str) {
    let mut last: Option<(f64, f64)> = None;
    let mut coords = String::new();
    for &z in pts {
        let p = canvas.pixel(disc_projection(z));
        if let Some(q) = last {
            if (p.0 - q.0).hypot(p.1 - q.1) < 0.5 {
                continue;
            }
        }
        let _ = write!(coords, "{:.2},{:.2} ", p.0, p.1);
        last = Some(p);
    }
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1"/>"#,
        coords.trim_end()
    );
}

/// Renders the disc boundary, the finite equilibria and one orbit per
/// seed, colored by the seed's return-map verdict. Output depends only on
/// the inputs.
pub fn render_svg(vf: &VectorField, spec: &PortraitSpec, cfg: &IntegratorConfig) -> String {
    let canvas = Canvas {
        cx: spec.width as f64 / 2.0,
        cy: spec.height as f64 / 2.0,
        radius: 0.45 * spec.width.min(spec.height) as f64,
    };
    let field = CompiledField::new(vf);
    let backward = CompiledField::new(&vf.scale(&rat(-1)).expect("nonzero field"));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(out, r#"<rect width="{}" height="{}" fill="white"/>"#, spec.width, spec.height);
    let _ = writeln!(
        out,
        r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        canvas.cx, canvas.cy, canvas.radius
    );
    for &seed in &spec.seeds {
        let verdict = return_map_compiled(&field, seed, cfg);
        match verdict {
            OrbitVerdict::Periodic { period, .. } => {
                let pts = orbit(&field, seed, cfg, period);
                polyline(&mut out, &canvas, &pts, COLOR_PERIODIC);
            }
            OrbitVerdict::Escaping { .. } | OrbitVerdict::Inconclusive { .. } => {
                let color = if verdict.is_escaping() { COLOR_ESCAPING } else { COLOR_INCONCLUSIVE };
                for f in [&field, &backward] {
                    let mut pts = orbit(f, seed, cfg, spec.orbit_time);
                    let end = *pts.last().expect("nonempty");
                    let r = end[0].hypot(end[1]);
                    if r >= cfg.escape_radius {
                        // finish on the boundary circle
                        pts.push([end[0] * 1e12 / r, end[1] * 1e12 / r]);
                    }
                    polyline(&mut out, &canvas, &pts, color);
                }
            }
        }
    }
    let mut equilibria = vec![[0.0, 0.0]];
    if let EquilibriumScan::Extra { points } = scan_finite_equilibria(vf) {
        equilibria.extend(points);
    }
    for e in equilibria {
        let (px, py) = canvas.pixel(disc_projection(e));
        let _ = writeln!(out, r#"<circle cx="{px:.2}" cy="{py:.2}" r="3" fill="black"/>"#);
    }
    out.push_str("</svg>\n");
    out
}
