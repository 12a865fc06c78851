use std::fmt::Write as _;

use crate::fan::AdmissibleFan;
use crate::newton::{Face, FaceClass, NewtonPolygon};

// Deterministic rendering: all coordinates are integers in user units
// scaled by SCALE, so identical input yields byte-identical output.
const SCALE: i64 = 40;
const MARGIN: i64 = 60;

fn class_color(cls: FaceClass) -> &'static str {
    match cls {
        FaceClass::Plus => "#1a9641",
        FaceClass::Zero => "#ff7f00",
        FaceClass::Minus => "#2b6cb0",
    }
}

/// Renders the Newton polygon (lattice grid, support dots, classified hull
/// edges, covector arrows) and optionally the fan rays as an SVG document.
pub fn render_svg(
    polygon: &NewtonPolygon,
    faces: &[Face],
    fan: Option<&AdmissibleFan>,
    path: &str,
) -> crate::Result<()> {
    let svg = svg_string(polygon, faces, fan);
    std::fs::write(path, svg)?;
    Ok(())
}

pub fn svg_string(polygon: &NewtonPolygon, faces: &[Face], fan: Option<&AdmissibleFan>) -> String {
    let min_m = polygon.support.iter().map(|p| p.0).min().unwrap_or(0) - 1;
    let max_m = polygon.support.iter().map(|p| p.0).max().unwrap_or(1) + 1;
    let min_n = polygon.support.iter().map(|p| p.1).min().unwrap_or(0) - 1;
    let max_n = polygon.support.iter().map(|p| p.1).max().unwrap_or(1) + 1;
    let (min_m, min_n) = (min_m.min(0), min_n.min(0));

    let width = (max_m - min_m) * SCALE + 2 * MARGIN + if fan.is_some() { 240 } else { 0 };
    let height = (max_n - min_n) * SCALE + 2 * MARGIN;
    // SVG y-axis points down; flip.
    let px = |m: i64| MARGIN + (m - min_m) * SCALE;
    let py = |n: i64| height - MARGIN - (n - min_n) * SCALE;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(s, "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");

    // Lattice grid.
    for m in min_m..=max_m {
        let _ = writeln!(
            s,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#e2e2e2\" stroke-width=\"1\"/>",
            px(m),
            py(min_n),
            py(max_n)
        );
    }
    for n in min_n..=max_n {
        let _ = writeln!(
            s,
            "<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"#e2e2e2\" stroke-width=\"1\"/>",
            px(min_m),
            px(max_m),
            py(n)
        );
    }
    // Axes.
    let _ = writeln!(
        s,
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#999999\" stroke-width=\"1\"/>",
        px(0),
        py(min_n),
        py(max_n)
    );
    let _ = writeln!(
        s,
        "<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"#999999\" stroke-width=\"1\"/>",
        px(min_m),
        px(max_m),
        py(0)
    );

    // Hull edges colored by class when the edge is a face at infinity;
    // other hull edges in gray.
    let vs = &polygon.vertices;
    if vs.len() >= 2 {
        let edges: Vec<((i64, i64), (i64, i64))> = if vs.len() == 2 {
            vec![(vs[0], vs[1])]
        } else {
            (0..vs.len()).map(|i| (vs[i], vs[(i + 1) % vs.len()])).collect()
        };
        for (a, b) in edges {
            let face = faces.iter().find(|f| {
                let lo = f.base;
                let hi = (
                    f.base.0 + f.ell as i64 * f.dir.0,
                    f.base.1 + f.ell as i64 * f.dir.1,
                );
                (lo, hi) == (a.min(b), a.max(b))
            });
            let color = face.map(|f| class_color(f.cls)).unwrap_or("#888888");
            let _ = writeln!(
                s,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"3\"/>",
                px(a.0),
                py(a.1),
                px(b.0),
                py(b.1),
                color
            );
        }
    }

    // Covector arrows at face midpoints (doubled coordinates to stay in
    // integers: draw from the midpoint of the edge).
    for f in faces {
        let hi = (
            f.base.0 + f.ell as i64 * f.dir.0,
            f.base.1 + f.ell as i64 * f.dir.1,
        );
        let midx = (px(f.base.0) + px(hi.0)) / 2;
        let midy = (py(f.base.1) + py(hi.1)) / 2;
        // Arrow along the covector direction (d decreases outward, so P
        // points into the polygon; draw P itself).
        let tipx = midx + f.covector.p * SCALE / 2;
        let tipy = midy - f.covector.q * SCALE / 2;
        let color = class_color(f.cls);
        let _ = writeln!(
            s,
            "<line x1=\"{midx}\" y1=\"{midy}\" x2=\"{tipx}\" y2=\"{tipy}\" stroke=\"{color}\" stroke-width=\"2\"/>"
        );
        let _ = writeln!(
            s,
            "<circle cx=\"{tipx}\" cy=\"{tipy}\" r=\"3\" fill=\"{color}\"/>"
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{color}\">({},{})</text>",
            tipx + 5,
            tipy,
            f.covector.p,
            f.covector.q
        );
    }

    // Support dots on top.
    for &(m, n) in &polygon.support {
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#111111\"/>",
            px(m),
            py(n)
        );
    }

    // Optional fan inset: rays from a hub at the right.
    if let Some(fan) = fan {
        let hubx = width - 130;
        let huby = height / 2;
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#333333\">fan</text>",
            hubx - 20,
            huby - 90
        );
        for r in fan.rays() {
            // Normalize ray length crudely by max coordinate.
            let mag = r.p.abs().max(r.q.abs()).max(1);
            let tipx = hubx + r.p * 70 / mag;
            let tipy = huby - r.q * 70 / mag;
            let _ = writeln!(
                s,
                "<line x1=\"{hubx}\" y1=\"{huby}\" x2=\"{tipx}\" y2=\"{tipy}\" stroke=\"#555555\" stroke-width=\"1\"/>"
            );
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#555555\">({},{})</text>",
                tipx + 2,
                tipy,
                r.p,
                r.q
            );
        }
    }

    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivar::BiPoly;
    use crate::exactmath::rat;
    use crate::newton::{infinity_faces, newton_polygon};

    fn xy(pairs: &[(i64, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(pairs.iter().map(|&(m, n, c)| ((m, n), rat(c))))
    }

    #[test]
    fn svg_is_deterministic_and_wellformed() {
        let f = xy(&[(1, 0, 1), (2, 2, 1)]);
        let polygon = newton_polygon(&f).unwrap();
        let faces = infinity_faces(&f).unwrap();
        let a = svg_string(&polygon, &faces, None);
        let b = svg_string(&polygon, &faces, None);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        // two covector arrows labeled
        assert!(a.contains("(-2,1)"));
        assert!(a.contains("(2,-1)"));
        // monomial: single dot, no edges
        let f = xy(&[(3, 2, 7)]);
        let polygon = newton_polygon(&f).unwrap();
        let faces = infinity_faces(&f).unwrap();
        let c = svg_string(&polygon, &faces, None);
        assert!(!c.contains("stroke-width=\"3\""));
    }
}
