//! Celestial (k-astral) configurations, the specific weak 9-fold grid
//! realization, and the numeric verification of why no strong 9-fold
//! straight-line realization exists.

use crate::data;
use crate::error::{Error, Result};
use crate::geom::{
    circle_through, envelope_parabola, join, line_circle_intersections, meet,
    parabola_circle_intersections, point_line_residual, rotate, Line2, Point2,
};
use crate::incidence::gray_incidence;
use crate::realizer::{audit_default, execute, AuditReport, ClassElems, Realization};
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

/// Symbol `m#(s1,t1; ...; sk,tk)` of a k-celestial configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CelestialSymbol {
    pub m: usize,
    pub spans: Vec<(usize, usize)>,
}

impl CelestialSymbol {
    pub fn new(m: usize, spans: Vec<(usize, usize)>) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidSymbol("symmetry order must be at least 3".into()));
        }
        if spans.is_empty() {
            return Err(Error::InvalidSymbol("at least one (s, t) pair required".into()));
        }
        for &(s, t) in &spans {
            if s == 0 || t == 0 || 2 * s >= m || 2 * t >= m {
                return Err(Error::InvalidSymbol(format!(
                    "span pair ({s}, {t}) must satisfy 0 < s, t < m/2"
                )));
            }
        }
        Ok(CelestialSymbol { m, spans })
    }
}

impl std::fmt::Display for CelestialSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let spans = self
            .spans
            .iter()
            .map(|(s, t)| format!("{s},{t}"))
            .collect::<Vec<_>>()
            .join(";");
        write!(f, "{}#({})", self.m, spans)
    }
}

/// Closure residual accepted when gluing the final ring back onto ring 0.
pub const CELESTIAL_CLOSURE_TOL: f64 = 1e-8;

/// Iterated chord construction: ring 0 on the unit circle; line class `h`
/// joins ring-`h` points `s_h` apart; ring `h+1` collects the meets
/// `L^h_j . L^h_{j - t_h}`. The final meets must land back on ring 0 (up to
/// one fixed index shift), otherwise the symbol does not close and an error
/// is returned.
pub fn celestial_realization(sym: &CelestialSymbol) -> Result<Realization> {
    let m = sym.m;
    let k = sym.spans.len();
    let mut rings: Vec<Vec<Point2>> = Vec::with_capacity(k);
    let mut line_classes: Vec<Vec<Line2>> = Vec::with_capacity(k);
    let ring0: Vec<Point2> = (0..m)
        .map(|j| {
            let ang = TAU * j as f64 / m as f64;
            Point2::new(ang.cos(), ang.sin())
        })
        .collect();
    rings.push(ring0);
    for (h, &(s, t)) in sym.spans.iter().enumerate() {
        let ring = rings[h].clone();
        let lines: Vec<Line2> = (0..m)
            .map(|j| join(ring[j], ring[(j + s) % m]))
            .collect::<Result<_>>()?;
        let next: Vec<Point2> = (0..m)
            .map(|j| meet(lines[j], lines[(j + m - t % m) % m]))
            .collect::<Result<_>>()?;
        line_classes.push(lines);
        rings.push(next);
    }
    // closure: the (k+1)-th ring must be ring 0 under some index shift
    let last = rings.pop().unwrap();
    let mut best = (f64::INFINITY, 0usize);
    for shift in 0..m {
        let worst = (0..m)
            .map(|j| last[j].dist(rings[0][(j + shift) % m]))
            .fold(0.0f64, f64::max);
        if worst < best.0 {
            best = (worst, shift);
        }
    }
    if best.0 > CELESTIAL_CLOSURE_TOL {
        return Err(Error::ClosureFailed(best.0));
    }
    let mut classes = Vec::new();
    for (h, ring) in rings.into_iter().enumerate() {
        classes.push((format!("P{h}"), ClassElems::Points(ring)));
    }
    for (h, lines) in line_classes.into_iter().enumerate() {
        classes.push((format!("L{h}"), ClassElems::Lines(lines)));
    }
    Realization::new(m, classes, BTreeMap::new(), vec![])
}

/// Per-element incidence census of a realization at the given tolerance:
/// `(points-per-line, lines-per-point)` sorted ascending.
pub fn incidence_census(real: &Realization, tol: f64) -> (Vec<usize>, Vec<usize>) {
    let pts: Vec<Point2> = real
        .point_classes()
        .flat_map(|(_, v)| v.iter().copied())
        .collect();
    let lns: Vec<Line2> = real
        .line_classes()
        .flat_map(|(_, v)| v.iter().copied())
        .collect();
    let mut per_line = vec![0usize; lns.len()];
    let mut per_point = vec![0usize; pts.len()];
    for (pi, p) in pts.iter().enumerate() {
        for (li, l) in lns.iter().enumerate() {
            if point_line_residual(*p, *l).abs() < tol {
                per_line[li] += 1;
                per_point[pi] += 1;
            }
        }
    }
    per_line.sort_unstable();
    per_point.sort_unstable();
    (per_line, per_point)
}

/// One numbered check of [`verify_z9_theorem`].
#[derive(Clone, Debug)]
pub struct TheoremCheck {
    pub name: String,
    pub value: String,
    pub pass: bool,
}

/// Structured outcome of the 9-fold non-realizability verification.
#[derive(Clone, Debug)]
pub struct Z9Report {
    pub circle_center: Point2,
    pub circle_radius: f64,
    pub directrix_intercept: f64,
    pub tangency_points: Vec<(Point2, bool)>,
    pub p1: Point2,
    pub p1_rot: Point2,
    pub collinearity_det: f64,
    pub off_solution_samples: usize,
    pub off_solution_misses: usize,
    pub checks: Vec<TheoremCheck>,
}

impl Z9Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl std::fmt::Display for Z9Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<36} {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.value
            )?;
        }
        writeln!(
            f,
            "overall: {}",
            if self.all_pass() { "PASS" } else { "FAIL" }
        )
    }
}

/// Verifies, in the rotated frame that puts the first base point at angle
/// `17 pi / 18`, that the chord-envelope parabola and the three-point circle
/// meet in exactly two points, both tangentially, at the closed-form contact
/// points; that the contact point is collinear with the chord endpoints it
/// comes from; and that 1000 sampled off-solution chords miss the circle.
pub fn verify_z9_theorem() -> Z9Report {
    let offset = 17.0 * PI / 18.0;
    let d = |i: i64| -> Point2 {
        let ang = TAU * (i as f64) / 9.0 + offset;
        Point2::new(ang.cos(), ang.sin())
    };
    let origin = Point2::ORIGIN;
    let l0 = join(d(0), d(1)).expect("distinct base points");
    let circle = circle_through(d(-1), d(-3), origin).expect("non-collinear");
    let parab = envelope_parabola(l0, 8.0 * PI / 9.0, origin).expect("non-degenerate");

    let mut checks = Vec::new();
    let mut check = |name: &str, value: String, pass: bool| {
        checks.push(TheoremCheck {
            name: name.into(),
            value,
            pass,
        });
    };

    let center_expect = Point2::new(0.0, 1.0 / (2.0 * (2.0 * PI / 9.0).cos()));
    check(
        "circle center (0, sec(2pi/9)/2)",
        format!("({:.12}, {:.12})", circle.center.x, circle.center.y),
        circle.center.dist(center_expect) < 1e-10,
    );

    // directrix: y = -2 sin(pi/18) cos(pi/9) (= -2 cos(pi/9) cos(4pi/9))
    let dir_expect = -2.0 * (PI / 18.0).sin() * (PI / 9.0).cos();
    let dir_at = -parab.directrix.c / parab.directrix.b;
    check(
        "directrix intercept",
        format!("{dir_at:.12} (expected {dir_expect:.12})"),
        parab.directrix.a.abs() < 1e-10 && (dir_at - dir_expect).abs() < 1e-10,
    );

    let hits = parabola_circle_intersections(parab, circle);
    check(
        "exactly two intersections",
        format!("{}", hits.len()),
        hits.len() == 2,
    );
    check(
        "both tangential",
        format!("{:?}", hits.iter().map(|(_, t)| *t).collect::<Vec<_>>()),
        hits.iter().all(|(_, t)| *t),
    );

    let kc = 2.0 * (PI / 18.0).sin() * (PI / 9.0).cos();
    let t1_expect = Point2::new(-3f64.sqrt() * kc, kc);
    let t2_expect = Point2::new(3f64.sqrt() * kc, kc);
    let mut sorted = hits.clone();
    sorted.sort_by(|a, b| a.0.x.partial_cmp(&b.0.x).unwrap());
    let t_ok = sorted.len() == 2
        && sorted[0].0.dist(t1_expect) < 1e-10
        && sorted[1].0.dist(t2_expect) < 1e-10;
    check(
        "contact points match closed form",
        format!(
            "T1 ({:.12}, {:.12}), T2 ({:.12}, {:.12})",
            sorted.first().map_or(f64::NAN, |h| h.0.x),
            sorted.first().map_or(f64::NAN, |h| h.0.y),
            sorted.last().map_or(f64::NAN, |h| h.0.x),
            sorted.last().map_or(f64::NAN, |h| h.0.y),
        ),
        t_ok,
    );

    let p1 = meet(l0, join(d(-3), d(-2)).unwrap()).expect("chords meet");
    let p1_expect = {
        let k = 2.0 * (PI / 9.0).cos();
        Point2::new(-k * (2.0 * PI / 9.0).sin(), k * (2.0 * PI / 9.0).cos())
    };
    check(
        "P1 closed form",
        format!("({:.12}, {:.12})", p1.x, p1.y),
        p1.dist(p1_expect) < 1e-10,
    );
    let p1_rot = rotate(p1, 8.0 * PI / 9.0, origin);
    let t1 = t1_expect;
    let det = p1.x * (p1_rot.y - t1.y) - p1.y * (p1_rot.x - t1.x)
        + (p1_rot.x * t1.y - p1_rot.y * t1.x);
    check(
        "P1, P1', T1 collinear",
        format!("det {det:.3e}"),
        det.abs() < 1e-10,
    );

    // off-solution chords miss the circle
    let chord_param = |p: Point2| -> f64 {
        let (d0, d1) = (d(0), d(1));
        let dd = Point2::new(d1.x - d0.x, d1.y - d0.y);
        ((p.x - d0.x) * dd.x + (p.y - d0.y) * dd.y) / (dd.x * dd.x + dd.y * dd.y)
    };
    let p2 = meet(l0, join(d(3), d(4)).unwrap()).unwrap();
    let (tp1, tp2) = (chord_param(p1), chord_param(p2));
    let mut samples = 0;
    let mut misses = 0;
    for i in 0..2000 {
        if samples == 1000 {
            break;
        }
        let t = -3.0 + 7.0 * (i as f64 + 0.5) / 1024.0;
        if (t - tp1).abs() < 1e-2 || (t - tp2).abs() < 1e-2 {
            continue;
        }
        samples += 1;
        let f0 = Point2::new((1.0 - t) * d(0).x + t * d(1).x, (1.0 - t) * d(0).y + t * d(1).y);
        let f4 = rotate(f0, 8.0 * PI / 9.0, origin);
        let chord = join(f0, f4).unwrap();
        if line_circle_intersections(chord, circle).is_empty() {
            misses += 1;
        }
    }
    check(
        "off-solution chords miss the circle",
        format!("{misses}/{samples}"),
        misses == samples && samples == 1000,
    );

    Z9Report {
        circle_center: circle.center,
        circle_radius: circle.radius,
        directrix_intercept: dir_at,
        tangency_points: hits,
        p1,
        p1_rot,
        collinearity_det: det,
        off_solution_samples: samples,
        off_solution_misses: misses,
        checks,
    }
}

/// Runs the bundled 9-fold construction with the distinguished free point at
/// the chord crossing `L0 . L-3`, audits the outcome against the grid
/// configuration (it must be a weak realization), and returns both.
pub fn z9_weak_gray() -> Result<(Realization, AuditReport)> {
    let prog = data::z9_program();
    // parameter of the crossing point on the anchor segment D0 D1
    let d = |i: i64| -> Point2 {
        let ang = TAU * (i.rem_euclid(9) as f64) / 9.0;
        Point2::new(ang.cos(), ang.sin())
    };
    let l0 = join(d(0), d(1))?;
    let lm3 = join(d(6), d(7))?;
    let p1 = meet(l0, lm3)?;
    let dd = Point2::new(d(1).x - d(0).x, d(1).y - d(0).y);
    let t = ((p1.x - d(0).x) * dd.x + (p1.y - d(0).y) * dd.y) / (dd.x * dd.x + dd.y * dd.y);
    let mut params = prog.default_params();
    params.insert("t".into(), t);
    let real = execute(&prog, &params)?;
    let report = audit_default(&real, &gray_incidence())?;
    Ok((real, report))
}
