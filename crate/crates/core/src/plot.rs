//! Static SVG scatter plots of point sets.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::geometry::PointSet;

const EXTENT: f64 = 400.0;
const MARGIN: f64 = 20.0;
const RADIUS: f64 = 4.0;

/// One circle per point, equal scale on both axes, `y` pointing up.
/// Output depends only on the point coordinates.
pub fn plot_svg(points: &PointSet) -> String {
    let coords: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.x.to_f64(), p.y.to_f64()))
        .collect();
    let (min_x, max_x) = bounds(coords.iter().map(|c| c.0));
    let (min_y, max_y) = bounds(coords.iter().map(|c| c.1));
    let span = (max_x - min_x).max(max_y - min_y);
    let scale = if span > 0.0 { EXTENT / span } else { 1.0 };
    let width = (max_x - min_x) * scale + 2.0 * MARGIN;
    let height = (max_y - min_y) * scale + 2.0 * MARGIN;

    let mut sorted = coords.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (x, y) in sorted {
        let cx = MARGIN + (x - min_x) * scale;
        let cy = height - MARGIN - (y - min_y) * scale;
        let _ = writeln!(
            svg,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{RADIUS}" fill="black"/>"#
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn plot(points: &PointSet, path: &Path) -> Result<()> {
    std::fs::write(path, plot_svg(points))?;
    Ok(())
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn pts(raw: &[(i64, i64)]) -> PointSet {
        let f = FieldSpec::Rational;
        PointSet::from_pairs(f, raw.iter().map(|&(x, y)| (f.from_i64(x), f.from_i64(y)))).unwrap()
    }

    #[test]
    fn one_marker_per_point() {
        let s = pts(&[(0, 0), (1, 0), (2, 0), (1, 1)]);
        assert_eq!(plot_svg(&s).matches("<circle").count(), 4);
        assert_eq!(plot_svg(&pts(&[(3, 3)])).matches("<circle").count(), 1);
    }

    #[test]
    fn output_is_deterministic_and_order_free() {
        let a = pts(&[(0, 0), (5, 1), (2, 3)]);
        let b = pts(&[(2, 3), (0, 0), (5, 1)]);
        assert_eq!(plot_svg(&a), plot_svg(&b));
    }

    #[test]
    fn axes_share_one_scale() {
        let s = pts(&[(0, 0), (10, 5)]);
        let svg = plot_svg(&s);
        assert!(svg.contains(r#"width="440.00" height="240.00""#), "{svg}");
    }
}
