//! SVG pictures. Floats appear only here; every coordinate is printed with a
//! fixed precision so output is byte-stable.

use std::fmt::Write as _;

use crate::cps::{vertices_in_range, CutProjectScheme};
use crate::error::{Error, Result};
use crate::exactnum::QuadraticNumber;
use crate::hull::{window, Tiling};

const PALETTE: [&str; 6] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2",
];
const MARGIN: f64 = 20.0;

fn check_scale(scale: f64) -> Result<()> {
    if scale.is_finite() && scale > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            value: scale.to_string(),
            range: "render scale > 0".into(),
        })
    }
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
}

/// The tiles of `t` meeting `[lo, hi]`, one rectangle per tile coloured by
/// label, with a tick at the origin. `scale` is pixels per unit length.
pub fn tiling_strip(
    t: &Tiling,
    lo: &QuadraticNumber,
    hi: &QuadraticNumber,
    scale: f64,
) -> Result<String> {
    check_scale(scale)?;
    if hi <= lo {
        return Err(Error::OutOfRange {
            value: format!("[{lo}, {hi}]"),
            range: "lo < hi".into(),
        });
    }
    let (lo_f, hi_f) = (lo.to_f64(), hi.to_f64());
    let x = |v: f64| MARGIN + (v - lo_f) * scale;
    let bar = 40.0;
    let mut out = String::new();
    header(&mut out, x(hi_f) + MARGIN, bar + 2.0 * MARGIN + 16.0);
    for tile in window(t, lo, hi).tiles {
        let (a, b) = (tile.start.to_f64().max(lo_f), tile.end().to_f64().min(hi_f));
        if b <= a {
            continue;
        }
        let name = t.alphabet()[tile.label as usize];
        let _ = writeln!(
            out,
            r#"  <rect x="{:.3}" y="{MARGIN:.3}" width="{:.3}" height="{bar:.3}" fill="{}" stroke="black" stroke-width="0.5"><title>{name}</title></rect>"#,
            x(a),
            (b - a) * scale,
            PALETTE[tile.label as usize % PALETTE.len()],
        );
    }
    if lo_f <= 0.0 && 0.0 <= hi_f {
        let _ = writeln!(
            out,
            r#"  <line x1="{0:.3}" y1="{1:.3}" x2="{0:.3}" y2="{2:.3}" stroke="black" stroke-width="2"/>"#,
            x(0.0),
            MARGIN - 6.0,
            MARGIN + bar + 6.0,
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-size="12" text-anchor="middle">0</text>"#,
            x(0.0),
            MARGIN + bar + 20.0,
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Lattice, acceptance strip, line and the staircase through the accepted
/// points whose positions lie in `[lo, hi)`, with their orthogonal
/// projections onto the line. The projected gaps are `1 / sqrt(1 + alpha^2)`
/// and `alpha / sqrt(1 + alpha^2)`, the unit-speed tile lengths. `scale` is
/// pixels per lattice unit.
pub fn cps_picture(
    s: &CutProjectScheme,
    lo: &QuadraticNumber,
    hi: &QuadraticNumber,
    scale: f64,
) -> Result<String> {
    check_scale(scale)?;
    let verts = vertices_in_range(s, lo, hi)?;
    if verts.is_empty() {
        return Err(Error::OutOfRange {
            value: format!("[{lo}, {hi})"),
            range: "a range containing a vertex".into(),
        });
    }
    let alpha = s.alpha().to_f64();
    let rho = s.rho().to_f64();
    let pts = &verts.points;
    let i_min = pts.iter().map(|p| p.0).min().expect("nonempty") - 1;
    let i_max = pts.iter().map(|p| p.0).max().expect("nonempty") + 1;
    let j_min = pts.iter().map(|p| p.1).min().expect("nonempty") - 1;
    let j_max = pts.iter().map(|p| p.1).max().expect("nonempty") + 1;
    let width = (i_max - i_min) as f64 * scale + 2.0 * MARGIN;
    let height = (j_max - j_min) as f64 * scale + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x - i_min as f64) * scale;
    let py = |y: f64| MARGIN + (j_max as f64 - y) * scale;
    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(
        out,
        r#"  <clipPath id="frame"><rect x="{MARGIN:.3}" y="{MARGIN:.3}" width="{:.3}" height="{:.3}"/></clipPath>"#,
        width - 2.0 * MARGIN,
        height - 2.0 * MARGIN,
    );
    let _ = writeln!(out, r#"  <g clip-path="url(#frame)">"#);
    // the strip j - alpha i - rho in the window [-alpha, 1]
    let (x0, x1) = (i_min as f64, i_max as f64);
    let edge = |x: f64, u: f64| (px(x), py(alpha * x + rho + u));
    let corners = [
        edge(x0, -alpha),
        edge(x1, -alpha),
        edge(x1, 1.0),
        edge(x0, 1.0),
    ];
    let poly: Vec<String> = corners
        .iter()
        .map(|(a, b)| format!("{a:.3},{b:.3}"))
        .collect();
    let _ = writeln!(
        out,
        r##"    <polygon points="{}" fill="#fde9b8" stroke="#d9a520" stroke-width="0.5"/>"##,
        poly.join(" ")
    );
    let (a, b) = edge(x0, 0.0);
    let (c, d) = edge(x1, 0.0);
    let _ = writeln!(
        out,
        r#"    <line x1="{a:.3}" y1="{b:.3}" x2="{c:.3}" y2="{d:.3}" stroke="black" stroke-width="1"/>"#
    );
    for i in i_min..=i_max {
        for j in j_min..=j_max {
            let _ = writeln!(
                out,
                r##"    <circle cx="{:.3}" cy="{:.3}" r="1.5" fill="#999999"/>"##,
                px(i as f64),
                py(j as f64)
            );
        }
    }
    let n2 = 1.0 + alpha * alpha;
    for &(i, j) in pts {
        let (i, j) = (i as f64, j as f64);
        let t = (i + (j - rho) * alpha) / n2;
        let _ = writeln!(
            out,
            r##"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#e15759" stroke-width="0.5" stroke-dasharray="2,2"/>"##,
            px(i),
            py(j),
            px(t),
            py(rho + t * alpha)
        );
        let _ = writeln!(
            out,
            r##"    <circle cx="{:.3}" cy="{:.3}" r="2.5" fill="#e15759"/>"##,
            px(t),
            py(rho + t * alpha)
        );
    }
    let stairs: Vec<String> = pts
        .iter()
        .map(|&(i, j)| format!("{:.3},{:.3}", px(i as f64), py(j as f64)))
        .collect();
    let _ = writeln!(
        out,
        r##"    <polyline points="{}" fill="none" stroke="#4e79a7" stroke-width="2"/>"##,
        stairs.join(" ")
    );
    for &(i, j) in pts {
        let _ = writeln!(
            out,
            r#"    <circle cx="{:.3}" cy="{:.3}" r="3" fill="black"/>"#,
            px(i as f64),
            py(j as f64)
        );
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cps::WindowConvention;
    use crate::hull::psi;
    use crate::words::{Branch, SturmianParams};

    fn qn(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn strip_has_one_rect_per_tile() {
        let p = SturmianParams::new(qn("sqrt(2) - 1"), qn("1/3"), Branch::Upper).unwrap();
        let t = psi(&p);
        let (lo, hi) = (qn("-3"), qn("5"));
        let svg = tiling_strip(&t, &lo, &hi, 30.0).unwrap();
        let tiles = window(&t, &lo, &hi).len();
        // one background rect plus the tiles; clipping may drop a zero-width end tile
        let rects = svg.matches("<rect").count() - 1;
        assert!(rects == tiles || rects + 1 == tiles, "{rects} vs {tiles}");
        assert!(svg.contains(">0</text>"));
        assert_eq!(svg, tiling_strip(&t, &lo, &hi, 30.0).unwrap());
        assert!(tiling_strip(&t, &hi, &lo, 30.0).is_err());
        assert!(tiling_strip(&t, &lo, &hi, f64::NAN).is_err());
    }

    #[test]
    fn cps_picture_marks_every_vertex() {
        let s = CutProjectScheme::new(qn("sqrt(2) - 1"), qn("1/5"), WindowConvention::Low).unwrap();
        let (lo, hi) = (qn("-2"), qn("6"));
        let n = vertices_in_range(&s, &lo, &hi).unwrap().len();
        let svg = cps_picture(&s, &lo, &hi, 25.0).unwrap();
        assert_eq!(svg.matches(r#"r="3" fill="black""#).count(), n);
        assert_eq!(svg.matches("stroke-dasharray").count(), n);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
