//! Deterministic SVG rendering of realizations: points as circles, lines as
//! segments clipped to the viewport, the 0th element of each class drawn
//! heavier.

use crate::geom::{Line2, Point2};
use crate::realizer::{ClassElems, Realization};

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub margin: f64,
    pub point_radius: f64,
    /// Cycled per class.
    pub palette: Vec<String>,
    /// Draw the 0th orbit element thicker.
    pub emphasize_first: bool,
    /// Unexpected incidence locations to mark, in drawing coordinates.
    pub marks: Vec<Point2>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 800,
            height: 800,
            margin: 40.0,
            point_radius: 4.0,
            palette: [
                "#c0392b", "#27ae60", "#2980b9", "#8e44ad", "#d35400", "#16a085", "#2c3e50",
                "#7f8c8d",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            emphasize_first: true,
            marks: vec![],
        }
    }
}

fn fmt6(v: f64) -> String {
    // fixed 6-decimal serialization keeps output byte-identical across runs
    format!("{:.6}", if v == 0.0 { 0.0 } else { v })
}

/// Renders a realization to an SVG 1.1 document.
pub fn render_svg(real: &Realization, spec: &RenderSpec) -> String {
    let pts: Vec<Point2> = real
        .point_classes()
        .flat_map(|(_, v)| v.iter().copied())
        .collect();
    let mut max_r = pts.iter().map(|p| p.norm()).fold(1e-9, f64::max);
    max_r *= 1.05;
    let w = spec.width as f64;
    let h = spec.height as f64;
    let scale = ((w.min(h)) / 2.0 - spec.margin) / max_r;
    let cx = w / 2.0;
    let cy = h / 2.0;
    let tx = |p: Point2| -> (f64, f64) { (cx + scale * p.x, cy - scale * p.y) };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        spec.width, spec.height, spec.width, spec.height
    ));
    out.push_str(&format!(
        "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        spec.width, spec.height
    ));

    for (class_idx, (name, elems)) in real.classes.iter().enumerate() {
        let color = &spec.palette[class_idx % spec.palette.len()];
        match elems {
            ClassElems::Lines(lines) => {
                for (j, l) in lines.iter().enumerate() {
                    if let Some(((x1, y1), (x2, y2))) = clip_line(*l, max_r).map(|(a, b)| (tx(a), tx(b)))
                    {
                        let width = if spec.emphasize_first && j == 0 { 2.5 } else { 1.0 };
                        out.push_str(&format!(
                            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"><title>{} {}</title></line>\n",
                            fmt6(x1), fmt6(y1), fmt6(x2), fmt6(y2), color, width, name, j
                        ));
                    }
                }
            }
            ClassElems::Points(_) => {}
        }
    }
    for (class_idx, (name, elems)) in real.classes.iter().enumerate() {
        let color = &spec.palette[class_idx % spec.palette.len()];
        if let ClassElems::Points(points) = elems {
            for (j, p) in points.iter().enumerate() {
                let (x, y) = tx(*p);
                let r = if spec.emphasize_first && j == 0 {
                    spec.point_radius * 1.6
                } else {
                    spec.point_radius
                };
                out.push_str(&format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"><title>{} {}</title></circle>\n",
                    fmt6(x), fmt6(y), fmt6(r), color, name, j
                ));
            }
        }
    }
    for m in &spec.marks {
        let (x, y) = tx(*m);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"2,2\"/>\n",
            fmt6(x), fmt6(y), fmt6(spec.point_radius * 2.2)
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Clips the infinite line to the square of half-width `r` about the origin.
fn clip_line(l: Line2, r: f64) -> Option<(Point2, Point2)> {
    let mut hits: Vec<Point2> = Vec::new();
    let push_unique = |hits: &mut Vec<Point2>, p: Point2| {
        if hits.iter().all(|q| q.dist(p) > 1e-9) {
            hits.push(p);
        }
    };
    // intersect with x = +-r and y = +-r
    if l.b.abs() > 1e-12 {
        for x in [-r, r] {
            let y = -(l.a * x + l.c) / l.b;
            if y.abs() <= r + 1e-9 {
                push_unique(&mut hits, Point2::new(x, y));
            }
        }
    }
    if l.a.abs() > 1e-12 {
        for y in [-r, r] {
            let x = -(l.b * y + l.c) / l.a;
            if x.abs() <= r + 1e-9 {
                push_unique(&mut hits, Point2::new(x, y));
            }
        }
    }
    hits.sort_by(|p, q| (p.x, p.y).partial_cmp(&(q.x, q.y)).unwrap());
    if hits.len() >= 2 {
        Some((hits[0], *hits.last().unwrap()))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizer::ClassElems;
    use std::collections::BTreeMap;

    fn tiny() -> Realization {
        let pts: Vec<Point2> = (0..3)
            .map(|j| {
                let ang = std::f64::consts::TAU * j as f64 / 3.0;
                Point2::new(ang.cos(), ang.sin())
            })
            .collect();
        Realization::new(
            3,
            vec![("P".into(), ClassElems::Points(pts))],
            BTreeMap::new(),
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn three_points_three_circles() {
        let svg = render_svg(&tiny(), &RenderSpec::default());
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = render_svg(&tiny(), &RenderSpec::default());
        let b = render_svg(&tiny(), &RenderSpec::default());
        assert_eq!(a, b);
    }
}
