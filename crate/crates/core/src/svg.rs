//! Deterministic SVG renderings: element order is fixed and every
//! coordinate is printed with 6 decimal digits, so identical inputs produce
//! byte-identical files.

use crate::dessin::{Dessin, LoopSet};
use crate::schottky::{LimitSample, SchottkyConfiguration};
use std::fmt::Write;

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

/// Circles of a configuration as one path element each, plus one marker per
/// limit point.
pub fn schottky_svg(cfg: &SchottkyConfiguration, sample: Option<&LimitSample>) -> String {
    let circles = cfg.circles();
    let mut lo_x = f64::INFINITY;
    let mut hi_x = f64::NEG_INFINITY;
    let mut lo_y = f64::INFINITY;
    let mut hi_y = f64::NEG_INFINITY;
    for c in &circles {
        let center = c.center().unwrap();
        let r = c.radius().unwrap();
        lo_x = lo_x.min(center.re - r);
        hi_x = hi_x.max(center.re + r);
        lo_y = lo_y.min(center.im - r);
        hi_y = hi_y.max(center.im + r);
    }
    let pad = 0.1 * (hi_x - lo_x).max(hi_y - lo_y).max(1.0);
    let (x0, y0) = (lo_x - pad, lo_y - pad);
    let (w, h) = (hi_x - lo_x + 2.0 * pad, hi_y - lo_y + 2.0 * pad);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"##,
        fmt6(x0),
        fmt6(y0),
        fmt6(w),
        fmt6(h)
    );
    let stroke = fmt6(0.004 * w.max(h));
    for (i, c) in circles.iter().enumerate() {
        let center = c.center().unwrap();
        let r = c.radius().unwrap();
        // full circle as two arcs so it stays a single path element
        let _ = writeln!(
            svg,
            r##"  <path id="circle-{i}" fill="none" stroke="#1a4a8a" stroke-width="{stroke}" d="M {} {} A {} {} 0 1 0 {} {} A {} {} 0 1 0 {} {} Z"/>"##,
            fmt6(center.re + r),
            fmt6(center.im),
            fmt6(r),
            fmt6(r),
            fmt6(center.re - r),
            fmt6(center.im),
            fmt6(r),
            fmt6(r),
            fmt6(center.re + r),
            fmt6(center.im),
        );
    }
    if let Some(sample) = sample {
        let marker = 0.006 * w.max(h);
        for (i, lp) in sample.points.iter().enumerate() {
            if let Some(z) = lp.point.as_complex() {
                let _ = writeln!(
                    svg,
                    r##"  <circle id="limit-{i}" cx="{}" cy="{}" r="{}" fill="#c03020"/>"##,
                    fmt6(z.re),
                    fmt6(z.im),
                    fmt6(marker)
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

const VERTEX_FILLS: [&str; 3] = ["#c03020", "#208030", "#2040c0"];
const LOOP_STROKES: [&str; 6] = ["#e0a020", "#a020e0", "#20c0c0", "#e02080", "#80c020", "#2080e0"];

/// Planar-ish rendering of a dessin: vertices on a circle grouped by color,
/// chords for edges, loop edges overdrawn in per-loop colors.
pub fn dessin_svg(dessin: &Dessin, loops: Option<&LoopSet>) -> String {
    let n = dessin.vertex_count();
    let radius = 100.0;
    let position = |v: usize| -> (f64, f64) {
        let angle = std::f64::consts::TAU * v as f64 / n as f64 - std::f64::consts::FRAC_PI_2;
        (radius * angle.cos(), radius * angle.sin())
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-120 -120 240 240">"##
    );
    // edges first: multi-edges bend apart deterministically by id
    for e in 0..dessin.edge_count() {
        let (a, b) = dessin.edge_vertices(e);
        let (x1, y1) = position(a);
        let (x2, y2) = position(b);
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let (dx, dy) = (x2 - x1, y2 - y1);
        let bend = 6.0 * ((e % 5) as f64 - 2.0);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let (cx, cy) = (mx - dy / len * bend, my + dx / len * bend);
        let _ = writeln!(
            svg,
            r##"  <path id="edge-{e}" fill="none" stroke="#777777" stroke-width="0.8" d="M {} {} Q {} {} {} {}"/>"##,
            fmt6(x1),
            fmt6(y1),
            fmt6(cx),
            fmt6(cy),
            fmt6(x2),
            fmt6(y2)
        );
    }
    if let Some(set) = loops {
        for (k, l) in set.loops.iter().enumerate() {
            let color = LOOP_STROKES[k % LOOP_STROKES.len()];
            for &dt in &l.darts {
                let e = dessin.dart_edge(dt);
                let (a, b) = dessin.edge_vertices(e);
                let (x1, y1) = position(a);
                let (x2, y2) = position(b);
                let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
                let (dx, dy) = (x2 - x1, y2 - y1);
                let bend = 6.0 * ((e % 5) as f64 - 2.0);
                let len = (dx * dx + dy * dy).sqrt().max(1e-9);
                let (cx, cy) = (mx - dy / len * bend, my + dx / len * bend);
                let _ = writeln!(
                    svg,
                    r##"  <path id="loop-{k}-edge-{e}" fill="none" stroke="{color}" stroke-width="2.2" d="M {} {} Q {} {} {} {}"/>"##,
                    fmt6(x1),
                    fmt6(y1),
                    fmt6(cx),
                    fmt6(cy),
                    fmt6(x2),
                    fmt6(y2)
                );
            }
        }
    }
    for v in 0..n {
        let (x, y) = position(v);
        let fill = VERTEX_FILLS[dessin.vertices()[v].color];
        let _ = writeln!(
            svg,
            r##"  <circle id="vertex-{v}" cx="{}" cy="{}" r="3.5" fill="{fill}"/>"##,
            fmt6(x),
            fmt6(y)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belyi::genus2_five_cycles;
    use crate::schottky::real_axis_genus2;

    #[test]
    fn schottky_svg_is_deterministic() {
        let cfg = real_axis_genus2();
        let sample = cfg.limit_points(2, 100_000).unwrap();
        let a = schottky_svg(&cfg, Some(&sample));
        let b = schottky_svg(&cfg, Some(&sample));
        assert_eq!(a, b);
        assert_eq!(a.matches("<path id=\"circle-").count(), 4);
        assert_eq!(a.matches("<circle id=\"limit-").count(), 12);
    }

    #[test]
    fn dessin_svg_lists_every_edge_and_vertex() {
        let dessin = Dessin::build(&genus2_five_cycles());
        let svg = dessin_svg(&dessin, None);
        assert_eq!(svg.matches("<path id=\"edge-").count(), 15);
        assert_eq!(svg.matches("<circle id=\"vertex-").count(), 3);
    }

    #[test]
    fn trivial_dessin_golden_file() {
        let dessin = Dessin::build(&crate::belyi::MonodromyTriple::trivial());
        let expected = "\
<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-120 -120 240 240\">
  <path id=\"edge-0\" fill=\"none\" stroke=\"#777777\" stroke-width=\"0.8\" d=\"M 0.000000 -100.000000 Q 53.693575 -31.000000 86.602540 50.000000\"/>
  <path id=\"edge-1\" fill=\"none\" stroke=\"#777777\" stroke-width=\"0.8\" d=\"M 86.602540 50.000000 Q 0.000000 56.000000 -86.602540 50.000000\"/>
  <path id=\"edge-2\" fill=\"none\" stroke=\"#777777\" stroke-width=\"0.8\" d=\"M -86.602540 50.000000 Q -43.301270 -25.000000 0.000000 -100.000000\"/>
  <circle id=\"vertex-0\" cx=\"0.000000\" cy=\"-100.000000\" r=\"3.5\" fill=\"#c03020\"/>
  <circle id=\"vertex-1\" cx=\"86.602540\" cy=\"50.000000\" r=\"3.5\" fill=\"#208030\"/>
  <circle id=\"vertex-2\" cx=\"-86.602540\" cy=\"50.000000\" r=\"3.5\" fill=\"#2040c0\"/>
</svg>
";
        assert_eq!(dessin_svg(&dessin, None), expected);
    }
}
