//! Exact-formula plane primitives: points, lines, circles, parabolas and
//! dilative rotations, together with the intersection routines the
//! construction machinery is built on.
//!
//! Everything is double precision with two tolerances: [`DEGENERACY_TOL`]
//! rejects near-parallel meets and coincident joins, [`INCIDENCE_TOL`] is the
//! acceptance threshold used by audits.

use crate::error::{Error, Result};

/// Tolerance below which two directions count as parallel and two points as
/// coincident.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Acceptance threshold for point-line incidence in audits.
pub const INCIDENCE_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn dist(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Line `a x + b y + c = 0`, normalized so that `a^2 + b^2 = 1` and the first
/// coefficient of `(a, b)` that is meaningfully nonzero is positive. Equality
/// of lines is then coefficient comparison within tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line2 {
    /// Builds a normalized line from raw coefficients.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if n < DEGENERACY_TOL {
            return Err(Error::Degenerate("line with zero normal".into()));
        }
        let (mut a, mut b, mut c) = (a / n, b / n, c / n);
        if a < -DEGENERACY_TOL || (a.abs() <= DEGENERACY_TOL && b < 0.0) {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line2 { a, b, c })
    }

    pub fn approx_eq(self, other: Line2, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol
            && (self.b - other.b).abs() <= tol
            && (self.c - other.c).abs() <= tol
    }

    /// Foot of the perpendicular from `p` onto the line.
    pub fn foot(self, p: Point2) -> Point2 {
        let d = point_line_residual(p, self);
        Point2::new(p.x - d * self.a, p.y - d * self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle2 {
    pub center: Point2,
    pub radius: f64,
}

impl Circle2 {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::Degenerate("circle radius must be positive".into()));
        }
        Ok(Circle2 { center, radius })
    }
}

/// Parabola given by focus and directrix; a point lies on it iff its distance
/// to the focus equals its distance to the directrix.
#[derive(Clone, Copy, Debug)]
pub struct Parabola2 {
    pub focus: Point2,
    pub directrix: Line2,
}

impl Parabola2 {
    pub fn new(focus: Point2, directrix: Line2) -> Result<Self> {
        if point_line_residual(focus, directrix).abs() < DEGENERACY_TOL {
            return Err(Error::Degenerate("parabola focus on directrix".into()));
        }
        Ok(Parabola2 { focus, directrix })
    }

    /// Vertex: midpoint of the focus and its foot on the directrix.
    pub fn vertex(self) -> Point2 {
        let f = self.directrix.foot(self.focus);
        Point2::new((f.x + self.focus.x) / 2.0, (f.y + self.focus.y) / 2.0)
    }

    /// Half the focus-directrix distance.
    pub fn semi_latus(self) -> f64 {
        point_line_residual(self.focus, self.directrix).abs() / 2.0
    }
}

/// Dilative rotation (spiral similarity) about `center`:
/// `z -> center + scale * R(angle) * (z - center)`.
#[derive(Clone, Copy, Debug)]
pub struct Similarity2 {
    pub center: Point2,
    pub scale: f64,
    pub angle: f64,
}

impl Similarity2 {
    pub fn apply(self, p: Point2) -> Point2 {
        let (dx, dy) = (p.x - self.center.x, p.y - self.center.y);
        let (s, c) = self.angle.sin_cos();
        Point2::new(
            self.center.x + self.scale * (c * dx - s * dy),
            self.center.y + self.scale * (s * dx + c * dy),
        )
    }

    pub fn apply_line(self, l: Line2) -> Line2 {
        let p = l.foot(Point2::ORIGIN);
        let q = Point2::new(p.x + l.b, p.y - l.a);
        join(self.apply(p), self.apply(q)).expect("similarity preserves distinctness")
    }
}

/// Signed distance from `p` to `l` (the sign follows the normalized normal).
pub fn point_line_residual(p: Point2, l: Line2) -> f64 {
    l.a * p.x + l.b * p.y + l.c
}

/// Line through two distinct points.
pub fn join(p: Point2, q: Point2) -> Result<Line2> {
    if p.dist(q) < DEGENERACY_TOL {
        return Err(Error::Degenerate(format!(
            "join of coincident points ({:.6}, {:.6})",
            p.x, p.y
        )));
    }
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    let a = -dy;
    let b = dx;
    let c = -(a * p.x + b * p.y);
    Line2::new(a, b, c)
}

/// Intersection point of two non-parallel lines.
pub fn meet(l: Line2, m: Line2) -> Result<Point2> {
    let det = l.a * m.b - m.a * l.b;
    if det.abs() < DEGENERACY_TOL {
        return Err(Error::Degenerate("meet of (nearly) parallel lines".into()));
    }
    Ok(Point2::new(
        (l.b * m.c - m.b * l.c) / det,
        (m.a * l.c - l.a * m.c) / det,
    ))
}

pub fn rotate(p: Point2, angle: f64, center: Point2) -> Point2 {
    Similarity2 {
        center,
        scale: 1.0,
        angle,
    }
    .apply(p)
}

pub fn rotate_line(l: Line2, angle: f64, center: Point2) -> Line2 {
    Similarity2 {
        center,
        scale: 1.0,
        angle,
    }
    .apply_line(l)
}

/// Reflection of `p` over `l`.
pub fn reflect(p: Point2, l: Line2) -> Point2 {
    let d = point_line_residual(p, l);
    Point2::new(p.x - 2.0 * d * l.a, p.y - 2.0 * d * l.b)
}

/// Circumscribed circle of three non-collinear points.
pub fn circle_through(a: Point2, b: Point2, c: Point2) -> Result<Circle2> {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    let scale = a.dist(b).max(b.dist(c)).max(a.dist(c));
    if d.abs() < DEGENERACY_TOL * scale.max(1.0) {
        return Err(Error::Degenerate("circle through collinear points".into()));
    }
    let (na, nb, nc) = (
        a.x * a.x + a.y * a.y,
        b.x * b.x + b.y * b.y,
        c.x * c.x + c.y * c.y,
    );
    let ux = (na * (b.y - c.y) + nb * (c.y - a.y) + nc * (a.y - b.y)) / d;
    let uy = (na * (c.x - b.x) + nb * (a.x - c.x) + nc * (b.x - a.x)) / d;
    let center = Point2::new(ux, uy);
    Circle2::new(center, center.dist(a))
}

/// Intersections of a line with a circle: empty, a single tangency point, or
/// two points. Tangency is reported when the center-line distance is within
/// [`DEGENERACY_TOL`] of the radius.
pub fn line_circle_intersections(l: Line2, c: Circle2) -> Vec<Point2> {
    let d = point_line_residual(c.center, l);
    let foot = Point2::new(c.center.x - d * l.a, c.center.y - d * l.b);
    let gap = d.abs() - c.radius;
    if gap.abs() <= DEGENERACY_TOL {
        return vec![foot];
    }
    if gap > 0.0 {
        return vec![];
    }
    let h = (c.radius * c.radius - d * d).sqrt();
    // direction along the line
    let (tx, ty) = (l.b, -l.a);
    vec![
        Point2::new(foot.x - h * tx, foot.y - h * ty),
        Point2::new(foot.x + h * tx, foot.y + h * ty),
    ]
}

/// The envelope of chords `P P'` where `P` runs over `l` and `P'` is its
/// rotate by `theta` about `center`: a parabola with focus `center` whose
/// directrix joins the reflections of the center over `l` and over the
/// rotated line.
pub fn envelope_parabola(l: Line2, theta: f64, center: Point2) -> Result<Parabola2> {
    if point_line_residual(center, l).abs() < DEGENERACY_TOL {
        return Err(Error::Degenerate("envelope center lies on the line".into()));
    }
    let lp = rotate_line(l, theta, center);
    let o1 = reflect(center, l);
    let o2 = reflect(center, lp);
    if o1.dist(o2) < DEGENERACY_TOL {
        return Err(Error::Degenerate(
            "envelope degenerates: rotation is a multiple of 2\u{3c0}".into(),
        ));
    }
    Parabola2::new(center, join(o1, o2)?)
}

/// The unique dilative rotation about `center` sending `from` to `to`.
pub fn similarity_mapping(center: Point2, from: Point2, to: Point2) -> Result<Similarity2> {
    let (fx, fy) = (from.x - center.x, from.y - center.y);
    let (tx, ty) = (to.x - center.x, to.y - center.y);
    let fn2 = fx * fx + fy * fy;
    if fn2.sqrt() < DEGENERACY_TOL || (tx * tx + ty * ty).sqrt() < DEGENERACY_TOL {
        return Err(Error::Degenerate(
            "similarity endpoints must differ from the center".into(),
        ));
    }
    // complex ratio (to - c) / (from - c)
    let re = (tx * fx + ty * fy) / fn2;
    let im = (ty * fx - tx * fy) / fn2;
    Ok(Similarity2 {
        center,
        scale: re.hypot(im),
        angle: im.atan2(re),
    })
}

/// Polar line of `p` with respect to circle `c`:
/// `(p - o) . (x - o) = r^2`.
pub fn polar_line(p: Point2, c: Circle2) -> Result<Line2> {
    let (dx, dy) = (p.x - c.center.x, p.y - c.center.y);
    if dx.hypot(dy) < DEGENERACY_TOL {
        return Err(Error::Degenerate("polar of the circle center".into()));
    }
    Line2::new(
        dx,
        dy,
        -(dx * c.center.x + dy * c.center.y) - c.radius * c.radius,
    )
}

/// Pole of a line with respect to a circle; inverse of [`polar_line`].
pub fn pole_point(l: Line2, c: Circle2) -> Result<Point2> {
    let d = point_line_residual(c.center, l);
    if d.abs() < DEGENERACY_TOL {
        return Err(Error::Degenerate("pole of a line through the center".into()));
    }
    let k = -(c.radius * c.radius) / d;
    Ok(Point2::new(c.center.x + k * l.a, c.center.y + k * l.b))
}

/// Intersections of a parabola and a circle with even-multiplicity contact
/// tagged as tangencies.
///
/// Working in the parabola frame (`u` along the directrix, height
/// `u^2 / (4p)`), circle membership is a quartic in `u`. The quartic is
/// analyzed through its derivative: critical points come from the closed-form
/// cubic, a sign change on a monotone piece brackets a simple root, and a
/// critical value within tolerance of zero is a double root sitting exactly
/// at the critical point. Clustering within `1e-7` catches the marginal case
/// where a near-tangency splits into a bracketed pair.
pub fn parabola_circle_intersections(p: Parabola2, c: Circle2) -> Vec<(Point2, bool)> {
    let semi = p.semi_latus();
    let vertex = p.vertex();
    // axis unit vector from vertex toward focus, and the directrix direction
    let w = Point2::new(
        (p.focus.x - vertex.x) / semi,
        (p.focus.y - vertex.y) / semi,
    );
    let u = Point2::new(w.y, -w.x);
    let to_frame = |q: Point2| {
        let (dx, dy) = (q.x - vertex.x, q.y - vertex.y);
        (dx * u.x + dy * u.y, dx * w.x + dy * w.y)
    };
    let from_frame = |(fu, fw): (f64, f64)| {
        Point2::new(vertex.x + fu * u.x + fw * w.x, vertex.y + fu * u.y + fw * w.y)
    };
    let (uc, wc) = to_frame(c.center);
    let inv4p = 1.0 / (4.0 * semi);
    // f(u) = (u - uc)^2 + (u^2/(4p) - wc)^2 - r^2
    let c4 = inv4p * inv4p;
    let c2 = 1.0 - 2.0 * wc * inv4p;
    let c1 = -2.0 * uc;
    let c0 = uc * uc + wc * wc - c.radius * c.radius;
    let roots = quartic_real_roots([c4, 0.0, c2, c1, c0]);
    roots
        .into_iter()
        .map(|(r, mult)| (from_frame((r, r * r * inv4p)), mult >= 2))
        .collect()
}

/// Real roots with multiplicities of `c[0] x^4 + c[1] x^3 + ... + c[4]`,
/// leading coefficient assumed nonzero.
fn quartic_real_roots(c: [f64; 5]) -> Vec<(f64, usize)> {
    let a = [c[1] / c[0], c[2] / c[0], c[3] / c[0], c[4] / c[0]];
    let f = |x: f64| (((x + a[0]) * x + a[1]) * x + a[2]) * x + a[3];
    let fp = |x: f64| ((4.0 * x + 3.0 * a[0]) * x + 2.0 * a[1]) * x + a[2];
    // scale estimate for the "critical value is zero" test
    let scale = 1.0 + a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let crit_tol = 1e-12 * scale;

    let mut crits = cubic_real_roots(4.0, 3.0 * a[0], 2.0 * a[1], a[2]);
    crits.sort_by(|x, y| x.partial_cmp(y).unwrap());
    crits.dedup_by(|x, y| (*x - *y).abs() < 1e-12);

    let bound = 1.0 + a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut stops = vec![-bound - 1.0];
    stops.extend(crits.iter().copied());
    stops.push(bound + 1.0);

    let mut roots: Vec<(f64, usize)> = Vec::new();
    for (i, &x) in crits.iter().enumerate() {
        if f(x).abs() <= crit_tol {
            // polish on the derivative, where the double root is simple
            let mut r = x;
            for _ in 0..40 {
                let d2 = (12.0 * r + 6.0 * a[0]) * r + 2.0 * a[1];
                if d2.abs() < 1e-300 {
                    break;
                }
                let step = fp(r) / d2;
                r -= step;
                if step.abs() < 1e-16 * (1.0 + r.abs()) {
                    break;
                }
            }
            roots.push((r, 2));
            let _ = i;
        }
    }
    for win in stops.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        let (flo, fhi) = (f(lo), f(hi));
        if flo == 0.0 {
            roots.push((lo, 1));
            continue;
        }
        if flo * fhi < 0.0 {
            let mut a0 = lo;
            let mut b0 = hi;
            let mut fa = flo;
            for _ in 0..200 {
                let mid = 0.5 * (a0 + b0);
                let fm = f(mid);
                if fm == 0.0 || (b0 - a0) < 1e-15 * (1.0 + mid.abs()) {
                    a0 = mid;
                    b0 = mid;
                    break;
                }
                if (fm < 0.0) == (fa < 0.0) {
                    a0 = mid;
                    fa = fm;
                } else {
                    b0 = mid;
                }
            }
            roots.push((0.5 * (a0 + b0), 1));
        }
    }
    roots.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    // cluster near-coincident roots into a tangency
    let mut out: Vec<(f64, usize)> = Vec::new();
    for (r, m) in roots {
        match out.last_mut() {
            Some((r0, m0)) if (r - *r0).abs() < 1e-7 => {
                *r0 = if *m0 >= m { *r0 } else { r };
                *m0 += m;
            }
            _ => out.push((r, m)),
        }
    }
    out
}

/// Real roots of `c3 x^3 + c2 x^2 + c1 x + c0` (c3 != 0), by the
/// trigonometric/Cardano closed form.
fn cubic_real_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;
    // depressed: t^3 + p t + q, x = t - a/3
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    if p.abs() < 1e-14 && q.abs() < 1e-14 {
        return vec![shift];
    }
    if disc > 1e-14 * (1.0 + q * q) {
        let s = disc.sqrt();
        let u = (-q / 2.0 + s).cbrt();
        let v = (-q / 2.0 - s).cbrt();
        vec![u + v + shift]
    } else if disc >= 0.0 {
        // borderline: treat as triple/double structure
        let u = (-q / 2.0).cbrt();
        vec![2.0 * u + shift, -u + shift]
    } else {
        let r = (-p * p * p / 27.0).sqrt();
        let phi = (-q / (2.0 * r)).clamp(-1.0, 1.0).acos();
        let m = 2.0 * (-p / 3.0).sqrt();
        (0..3)
            .map(|k| m * ((phi + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() + shift)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn join_axes() {
        let l = join(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)).unwrap();
        assert!(point_line_residual(Point2::new(5.0, 0.0), l).abs() < 1e-12);
        assert!(l.a.abs() < 1e-12 && (l.b.abs() - 1.0).abs() < 1e-12);
        let v = join(Point2::new(0.0, 0.0), Point2::new(0.0, 1.0)).unwrap();
        assert!(point_line_residual(Point2::new(0.0, 7.0), v).abs() < 1e-12);
        assert!(join(Point2::new(1.0, 2.0), Point2::new(1.0, 2.0)).is_err());
    }

    #[test]
    fn join_ninegon_chord() {
        // chord of the 9-gon: endpoints must have residual < 1e-12
        let d0 = Point2::new(1.0, 0.0);
        let d1 = Point2::new((2.0 * PI / 9.0).cos(), (2.0 * PI / 9.0).sin());
        let l = join(d0, d1).unwrap();
        assert!(point_line_residual(d0, l).abs() < 1e-12);
        assert!(point_line_residual(d1, l).abs() < 1e-12);
    }

    #[test]
    fn meet_axes_and_projective_axiom() {
        let h = join(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)).unwrap();
        let v = join(Point2::new(0.0, 0.0), Point2::new(0.0, 1.0)).unwrap();
        let o = meet(h, v).unwrap();
        assert!(o.dist(Point2::ORIGIN) < 1e-12);
        // meet(join(p,q), join(p,r)) = p
        let (p, q, r) = (
            Point2::new(0.3, -1.2),
            Point2::new(2.0, 0.5),
            Point2::new(-1.0, 2.0),
        );
        let m = meet(join(p, q).unwrap(), join(p, r).unwrap()).unwrap();
        assert!(m.dist(p) < 1e-10);
        assert!(meet(h, h).is_err());
    }

    #[test]
    fn meet_of_ninegon_chords_matches_closed_form() {
        // P1 = meet(L0, L-3) in the frame with D0 at angle 17pi/18
        let off = 17.0 * PI / 18.0;
        let d = |i: i64| {
            let ang = 2.0 * PI * (i as f64) / 9.0 + off;
            Point2::new(ang.cos(), ang.sin())
        };
        let l0 = join(d(0), d(1)).unwrap();
        let lm3 = join(d(-3), d(-2)).unwrap();
        let p1 = meet(l0, lm3).unwrap();
        let k = 2.0 * (PI / 9.0).cos();
        let expect = Point2::new(-k * (2.0 * PI / 9.0).sin(), k * (2.0 * PI / 9.0).cos());
        assert!(p1.dist(expect) < 1e-12, "P1 = {p1:?}");
    }

    #[test]
    fn rotate_basics() {
        let p = rotate(Point2::new(1.0, 0.0), 2.0 * PI / 3.0, Point2::ORIGIN);
        assert!(p.dist(Point2::new(-0.5, 3f64.sqrt() / 2.0)) < 1e-12);
        let q = Point2::new(0.3, 0.9);
        assert!(rotate(q, 0.0, Point2::ORIGIN).dist(q) < 1e-15);
        // D_i = rotate(D_0, 2 pi i / 9)
        for i in 0..9 {
            let ang = 2.0 * PI * i as f64 / 9.0;
            let d = rotate(Point2::new(1.0, 0.0), ang, Point2::ORIGIN);
            assert!(d.dist(Point2::new(ang.cos(), ang.sin())) < 1e-12);
        }
    }

    #[test]
    fn circle_through_basics() {
        let c = circle_through(
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(-1.0, 0.0),
        )
        .unwrap();
        assert!(c.center.dist(Point2::ORIGIN) < 1e-12 && (c.radius - 1.0).abs() < 1e-12);
        assert!(circle_through(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 2.0)
        )
        .is_err());
    }

    #[test]
    fn circle_through_shifted_ninegon_points() {
        let off = 17.0 * PI / 18.0;
        let d = |i: i64| {
            let ang = 2.0 * PI * (i as f64) / 9.0 + off;
            Point2::new(ang.cos(), ang.sin())
        };
        let c = circle_through(d(-1), d(-3), Point2::ORIGIN).unwrap();
        let expect = Point2::new(0.0, 1.0 / (2.0 * (2.0 * PI / 9.0).cos()));
        assert!(c.center.dist(expect) < 1e-10, "center {:?}", c.center);
        // x^2 + y^2 - y sec(2 pi / 9) = 0 at all three points
        let sec = 1.0 / (2.0 * PI / 9.0).cos();
        for p in [d(-1), d(-3), Point2::ORIGIN] {
            assert!((p.x * p.x + p.y * p.y - p.y * sec).abs() < 1e-10);
        }
    }

    #[test]
    fn line_circle_cases() {
        let unit = Circle2::new(Point2::ORIGIN, 1.0).unwrap();
        let h = Line2::new(0.0, 1.0, 0.0).unwrap(); // y = 0
        let mut xs: Vec<f64> = line_circle_intersections(h, unit)
            .iter()
            .map(|p| p.x)
            .collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(xs.len(), 2);
        assert!((xs[0] + 1.0).abs() < 1e-12 && (xs[1] - 1.0).abs() < 1e-12);
        let far = Line2::new(0.0, 1.0, -2.0).unwrap(); // y = 2
        assert!(line_circle_intersections(far, unit).is_empty());
        let tan = Line2::new(0.0, 1.0, -1.0).unwrap(); // y = 1
        let t = line_circle_intersections(tan, unit);
        assert_eq!(t.len(), 1);
        assert!(t[0].dist(Point2::new(0.0, 1.0)) < 1e-12);
    }

    #[test]
    fn envelope_directrix_for_the_shifted_ninegon() {
        let off = 17.0 * PI / 18.0;
        let d = |i: i64| {
            let ang = 2.0 * PI * (i as f64) / 9.0 + off;
            Point2::new(ang.cos(), ang.sin())
        };
        let l0 = join(d(0), d(1)).unwrap();
        let par = envelope_parabola(l0, 8.0 * PI / 9.0, Point2::ORIGIN).unwrap();
        // directrix is horizontal at y = -2 sin(pi/18) cos(pi/9)
        let y = -2.0 * (PI / 18.0).sin() * (PI / 9.0).cos();
        assert!(par.directrix.a.abs() < 1e-10);
        let at = -par.directrix.c / par.directrix.b;
        assert!((at - y).abs() < 1e-10, "directrix intercept {at}");
    }

    #[test]
    fn envelope_reflection_criterion() {
        // every chord P P' is tangent to the parabola: the reflection of the
        // focus over the chord lands on the directrix
        let l = Line2::new(0.0, 1.0, -1.5).unwrap();
        let theta = 1.234;
        let par = envelope_parabola(l, theta, Point2::ORIGIN).unwrap();
        for k in 0..20 {
            let t = -3.0 + 6.0 * (k as f64) / 19.0;
            let p = Point2::new(t, 1.5);
            let q = rotate(p, theta, Point2::ORIGIN);
            let chord = join(p, q).unwrap();
            let r = reflect(Point2::ORIGIN, chord);
            assert!(point_line_residual(r, par.directrix).abs() < 1e-9);
        }
    }

    #[test]
    fn envelope_degenerate_theta_pi_for_horizontal_line() {
        // reflections are symmetric about the focus; the focus lies on the
        // would-be directrix
        let l = Line2::new(0.0, 1.0, -1.0).unwrap();
        assert!(envelope_parabola(l, PI, Point2::ORIGIN).is_err());
        let ok = envelope_parabola(l, PI / 2.0, Point2::ORIGIN).unwrap();
        assert!(ok.semi_latus() > 0.1);
    }

    #[test]
    fn similarity_roundtrip() {
        let s = similarity_mapping(
            Point2::ORIGIN,
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 2.0),
        )
        .unwrap();
        assert!((s.scale - 2.0).abs() < 1e-12 && (s.angle - PI / 2.0).abs() < 1e-12);
        let id = similarity_mapping(Point2::ORIGIN, Point2::new(0.4, 0.6), Point2::new(0.4, 0.6))
            .unwrap();
        assert!((id.scale - 1.0).abs() < 1e-12 && id.angle.abs() < 1e-12);
        let c = Point2::new(0.2, -0.7);
        let from = Point2::new(1.3, 0.4);
        let to = Point2::new(-0.8, 2.0);
        let s = similarity_mapping(c, from, to).unwrap();
        assert!(s.apply(from).dist(to) < 1e-12);
    }

    #[test]
    fn polarity() {
        let unit = Circle2::new(Point2::ORIGIN, 1.0).unwrap();
        let l = polar_line(Point2::new(2.0, 0.0), unit).unwrap();
        // x = 1/2
        assert!((l.a - 1.0).abs() < 1e-12 && l.b.abs() < 1e-12 && (l.c + 0.5).abs() < 1e-12);
        let p = Point2::new(0.8, -1.7);
        let back = pole_point(polar_line(p, unit).unwrap(), unit).unwrap();
        assert!(back.dist(p) < 1e-12);
        assert!(polar_line(Point2::ORIGIN, unit).is_err());
    }

    #[test]
    fn residual_sign_flips_across_line() {
        let l = Line2::new(0.0, 1.0, 0.0).unwrap();
        let above = point_line_residual(Point2::new(3.0, 1.0), l);
        let below = point_line_residual(Point2::new(-2.0, -1.0), l);
        assert!((above - 1.0).abs() < 1e-12);
        assert!(above * below < 0.0);
    }

    #[test]
    fn parabola_circle_tangencies_of_the_proof() {
        let off = 17.0 * PI / 18.0;
        let d = |i: i64| {
            let ang = 2.0 * PI * (i as f64) / 9.0 + off;
            Point2::new(ang.cos(), ang.sin())
        };
        let l0 = join(d(0), d(1)).unwrap();
        let par = envelope_parabola(l0, 8.0 * PI / 9.0, Point2::ORIGIN).unwrap();
        let circ = circle_through(d(-1), d(-3), Point2::ORIGIN).unwrap();
        let hits = parabola_circle_intersections(par, circ);
        assert_eq!(hits.len(), 2, "{hits:?}");
        assert!(hits.iter().all(|(_, tangent)| *tangent));
        let k = 2.0 * (PI / 18.0).sin() * (PI / 9.0).cos();
        let t1 = Point2::new(-3f64.sqrt() * k, k);
        let t2 = Point2::new(3f64.sqrt() * k, k);
        let mut pts: Vec<Point2> = hits.iter().map(|(p, _)| *p).collect();
        pts.sort_by(|p, q| p.x.partial_cmp(&q.x).unwrap());
        assert!(pts[0].dist(t1) < 1e-10, "{:?} vs {:?}", pts[0], t1);
        assert!(pts[1].dist(t2) < 1e-10);
    }

    #[test]
    fn parabola_circle_osculating_vertex() {
        // circle of curvature at the vertex of x^2 = 4 p y (p = 1):
        // radius 2p centered on the axis
        let par = Parabola2::new(
            Point2::new(0.0, 1.0),
            Line2::new(0.0, 1.0, 1.0).unwrap(),
        )
        .unwrap();
        let circ = Circle2::new(Point2::new(0.0, 2.0), 2.0).unwrap();
        let hits = parabola_circle_intersections(par, circ);
        assert_eq!(hits.len(), 1, "{hits:?}");
        assert!(hits[0].1, "osculating contact should be tangential");
        assert!(hits[0].0.dist(Point2::ORIGIN) < 1e-7);
    }

    #[test]
    fn parabola_circle_matches_dense_sampling() {
        // transversal case cross-checked by sign changes of the distance
        // function along the parabola
        let par = Parabola2::new(
            Point2::new(0.0, 1.0),
            Line2::new(0.0, 1.0, 1.0).unwrap(),
        )
        .unwrap();
        for (cy, r) in [(5.0, 1.0), (3.0, 2.5), (0.5, 2.0), (10.0, 0.5)] {
            let circ = Circle2::new(Point2::new(0.3, cy), r).unwrap();
            let hits = parabola_circle_intersections(par, circ);
            // dense sampling oracle
            let f = |u: f64| {
                let p = Point2::new(u, u * u / 4.0);
                p.dist(circ.center) - circ.radius
            };
            let mut crossings = 0;
            let mut last = f(-30.0);
            let n = 400_000;
            for i in 1..=n {
                let u = -30.0 + 60.0 * (i as f64) / (n as f64);
                let v = f(u);
                if last * v < 0.0 {
                    crossings += 1;
                }
                last = v;
            }
            let simple: usize = hits.iter().filter(|(_, t)| !*t).count();
            assert_eq!(simple, crossings, "cy={cy} r={r} hits={hits:?}");
            for (p, _) in &hits {
                assert!((p.dist(circ.center) - circ.radius).abs() < 1e-7);
                let d_dir = point_line_residual(*p, par.directrix).abs();
                assert!((p.dist(par.focus) - d_dir).abs() < 1e-7);
            }
        }
    }
}
