//! SVG rendering of plane sets: region faces filled, skeleton arcs stroked.

use super::{PlaneSet, SetError};
use crate::geom::Point;
use std::fmt::Write;

#[derive(Clone, Debug)]
pub struct SvgStyle {
    pub width_px: u32,
    pub fill: String,
    pub stroke: String,
    pub stroke_width_frac: f64,
    /// Extra points drawn as contrasting markers (e.g. dent witnesses).
    pub overlay_points: Vec<Point>,
    /// Extra polylines drawn in a contrasting stroke.
    pub overlay_lines: Vec<Vec<Point>>,
    pub overlay_color: String,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            width_px: 640,
            fill: "#c8d7e8".into(),
            stroke: "#1f3a5f".into(),
            stroke_width_frac: 0.002,
            overlay_points: Vec::new(),
            overlay_lines: Vec::new(),
            overlay_color: "#c03020".into(),
        }
    }
}

fn path_data(points: &[Point], close: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{}{} {} ", cmd, p.re, -p.im);
    }
    if close {
        d.push('Z');
    }
    d
}

/// Renders the materialized set as a standalone SVG document. The y axis
/// is flipped so the mathematical orientation matches the image.
pub fn to_svg(set: &PlaneSet, style: &SvgStyle) -> Result<String, SetError> {
    let set = set.materialized()?;
    let bbox = set.bbox()?;
    let pad = 0.05 * bbox.diameter().max(1e-9);
    let min = bbox.min - Point::new(pad, pad);
    let max = bbox.max + Point::new(pad, pad);
    let w = max.re - min.re;
    let h = max.im - min.im;
    let height_px = (style.width_px as f64 * h / w).ceil() as u32;
    let sw = style.stroke_width_frac * w.max(h);

    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n",
        style.width_px, height_px, min.re, -max.im, w, h
    );
    match set {
        PlaneSet::Region(r) => {
            let mut d = path_data(r.outer(), true);
            for hole in r.holes() {
                d.push(' ');
                d.push_str(&path_data(hole, true));
            }
            let _ = write!(
                out,
                "  <path d=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\" fill-rule=\"nonzero\"/>\n",
                d, style.fill, style.stroke, sw
            );
        }
        PlaneSet::Skeleton(s) => {
            for arc in s.arcs() {
                let _ = write!(
                    out,
                    "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                    path_data(arc.vertices(), false),
                    style.stroke,
                    sw
                );
            }
        }
        PlaneSet::Gallery(_) => unreachable!("materialized"),
    }
    for line in &style.overlay_lines {
        let _ = write!(
            out,
            "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\"/>\n",
            path_data(line, false),
            style.overlay_color,
            sw,
            4.0 * sw,
            2.0 * sw
        );
    }
    for p in &style.overlay_points {
        let _ = write!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            p.re,
            -p.im,
            3.0 * sw,
            style.overlay_color
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planeset::{GalleryKind, GallerySpec, Region};

    #[test]
    fn unit_square_is_one_filled_path() {
        let region = Region::new(
            vec![
                Point::ZERO,
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            vec![],
        )
        .unwrap();
        let svg = to_svg(&PlaneSet::Region(region), &SvgStyle::default()).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains("fill=\"#c8d7e8\""));
    }

    #[test]
    fn cantor_squares_rendering_counts_squares() {
        let g = GallerySpec::new(GalleryKind::CantorSquares {}, 4).unwrap();
        let svg = to_svg(&PlaneSet::Gallery(g), &SvgStyle::default()).unwrap();
        // one path; outline has 2 + 4 * 15 vertices, each an L or M command
        assert_eq!(svg.matches('L').count() + svg.matches('M').count(), 2 + 4 * 15);
    }

    #[test]
    fn rsa_disc_rendering_has_sector_cuts() {
        let g = GallerySpec::new(GalleryKind::RsaDisc {}, 8).unwrap();
        let set = PlaneSet::Gallery(g);
        let svg = to_svg(&set, &SvgStyle::default()).unwrap();
        // all 8 sector vertices z_n appear in the outline
        let r = set.as_region().unwrap();
        let cuts = (1..=8)
            .filter(|&k| {
                let b = crate::planeset::gallery::beta(k);
                let z = Point::new(b.cos(), b.sin()).scale(1.0 - 2.0 * crate::planeset::gallery::rsa_r(k));
                r.outer().iter().any(|&v| v.dist(z) < 1e-12)
            })
            .count();
        assert_eq!(cuts, 8);
        assert!(svg.starts_with("<svg"));
    }
}
