//! CSV, JSON and SVG renderings of atlases and sweeps.
//!
//! Floats are written in shortest round-trip form, so equal values always
//! produce equal bytes.

use std::fmt::Write;

use serde::Serialize;

use super::regions::UNCOUNTED;
use super::trace::SingularCurve;
use super::{SliceAtlas, SweepEntry};
use crate::cuspfind::CuspPoint;

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

/// Columns `branch_id, alpha, theta1, l2, l3`.
pub fn curves_csv(curves: &[SingularCurve]) -> String {
    let mut out = String::from("branch_id,alpha,theta1,l2,l3\n");
    for c in curves {
        for s in &c.samples {
            let _ = writeln!(out, "{},{},{},{},{}", c.branch_id, s.alpha, s.theta1, s.l2, s.l3);
        }
    }
    out
}

pub fn cusps_json(cusps: &[CuspPoint]) -> String {
    to_json(cusps)
}

pub fn atlas_json(atlas: &SliceAtlas) -> String {
    to_json(atlas)
}

pub fn sweep_json(entries: &[SweepEntry]) -> String {
    to_json(entries)
}

/// Columns `l1, cusp_count, region_signature`; the signature is written as
/// `count:components` pairs separated by `;`, and a degenerate slice has an
/// empty cusp count.
pub fn sweep_csv(entries: &[SweepEntry]) -> String {
    let mut out = String::from("l1,cusp_count,region_signature\n");
    for e in entries {
        let sig: Vec<String> = e.region_signature.iter().map(|(c, n)| format!("{c}:{n}")).collect();
        let count = e.cusp_count.map(|c| c.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{}", e.l1, count, sig.join(";"));
    }
    out
}

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

fn fill(count: i32) -> Option<&'static str> {
    match count {
        0 => Some("#dddddd"),
        2 => Some("#4e79a7"),
        4 => Some("#f28e2b"),
        6 => Some("#59a14f"),
        _ => None,
    }
}

/// Region grid as translucent fills keyed by mode count, curve images as
/// polylines and cusps as circled markers, in the `(L2, L3)` plane.
pub fn slice_svg(atlas: &SliceAtlas) -> String {
    let w = atlas.regions.window;
    let span = (w.l2max - w.l2min).max(w.l3max - w.l3min);
    let k = (SIZE - 2.0 * MARGIN) / span;
    let x = |l2: f64| MARGIN + (l2 - w.l2min) * k;
    let y = |l3: f64| SIZE - MARGIN - (l3 - w.l3min) * k;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(out, r#"<g fill-opacity="0.35" stroke="none">"#);
    let (h2, h3) = atlas.regions.cell_size();
    let (n2, n3) = atlas.regions.resolution;
    for j in 0..n3 {
        // runs of equal count along L2
        let mut i = 0;
        while i < n2 {
            let c = atlas.regions.counts[i][j];
            let mut e = i + 1;
            while e < n2 && atlas.regions.counts[e][j] == c {
                e += 1;
            }
            if let Some(f) = fill(c).filter(|_| c != UNCOUNTED) {
                let (x0, x1) = (x(w.l2min + i as f64 * h2), x(w.l2min + e as f64 * h2));
                let (y0, y1) = (y(w.l3min + (j + 1) as f64 * h3), y(w.l3min + j as f64 * h3));
                let _ = writeln!(
                    out,
                    r#"<rect x="{x0:.3}" y="{y0:.3}" width="{:.3}" height="{:.3}" fill="{f}"/>"#,
                    x1 - x0,
                    y1 - y0
                );
            }
            i = e;
        }
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1">"#);
    for c in &atlas.curves {
        let pts: Vec<String> = c.samples.iter().map(|s| format!("{:.3},{:.3}", x(s.l2), y(s.l3))).collect();
        let _ = writeln!(out, r#"<polygon data-branch="{}" points="{}"/>"#, c.branch_id, pts.join(" "));
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, r#"<g fill="none" stroke="red" stroke-width="2">"#);
    for c in &atlas.cusps {
        let _ = writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="7"/>"#, x(c.l2), y(c.l3));
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="14">"#);
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="24">L1 = {}, cusps: {}</text>"#, atlas.l1, atlas.cusp_count);
    for (n, c) in [0, 2, 4, 6].into_iter().enumerate() {
        let lx = SIZE - MARGIN - 200.0 + 50.0 * n as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{lx}" y="10" width="16" height="16" fill="{}" fill-opacity="0.35"/><text x="{}" y="24">{c}</text>"#,
            fill(c).unwrap_or("none"),
            lx + 20.0
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
