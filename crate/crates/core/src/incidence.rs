//! Incidence structures: labeled points and lines with a flag relation,
//! their Levi graphs, duality, and the builders for the configurations this
//! crate studies (the 3x3x3 grid configuration, the Pappus configuration and
//! its embedded grid).

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexClass};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    points: Vec<String>,
    lines: Vec<String>,
    flags: BTreeSet<(usize, usize)>,
}

impl IncidenceStructure {
    pub fn new(
        points: Vec<String>,
        lines: Vec<String>,
        flags: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (p, l) in flags {
            if p >= points.len() || l >= lines.len() {
                return Err(Error::InvalidIncidence(format!(
                    "flag ({p}, {l}) out of range"
                )));
            }
            if !set.insert((p, l)) {
                return Err(Error::InvalidIncidence(format!("duplicate flag ({p}, {l})")));
            }
        }
        for labels in [&points, &lines] {
            let mut sorted = labels.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidIncidence("duplicate label".into()));
            }
        }
        Ok(IncidenceStructure {
            points,
            lines,
            flags: set,
        })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn flags(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.flags.iter().copied()
    }

    pub fn flag_count(&self) -> usize {
        self.flags.len()
    }

    pub fn has_flag(&self, point: usize, line: usize) -> bool {
        self.flags.contains(&(point, line))
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    pub fn line_index(&self, label: &str) -> Option<usize> {
        self.lines.iter().position(|l| l == label)
    }

    pub fn points_on_line(&self, line: usize) -> Vec<usize> {
        self.flags
            .iter()
            .filter(|&&(_, l)| l == line)
            .map(|&(p, _)| p)
            .collect()
    }

    pub fn lines_through_point(&self, point: usize) -> Vec<usize> {
        self.flags
            .iter()
            .filter(|&&(p, _)| p == point)
            .map(|&(_, l)| l)
            .collect()
    }

    /// Any two distinct lines share at most one point.
    pub fn is_linear(&self) -> bool {
        let on_line: Vec<BTreeSet<usize>> = (0..self.lines.len())
            .map(|l| self.points_on_line(l).into_iter().collect())
            .collect();
        for i in 0..on_line.len() {
            for j in (i + 1)..on_line.len() {
                if on_line[i].intersection(&on_line[j]).count() > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// True for an (n_k) configuration: equal point/line counts, uniform
    /// degree `k` on both sides, and linearity.
    pub fn is_configuration(&self, k: usize) -> bool {
        self.points.len() == self.lines.len()
            && (0..self.points.len()).all(|p| self.lines_through_point(p).len() == k)
            && (0..self.lines.len()).all(|l| self.points_on_line(l).len() == k)
            && self.is_linear()
    }

    /// Bipartite point/line incidence graph. Points come first, lines after,
    /// in the order they are stored here.
    pub fn levi_graph(&self) -> Graph {
        let np = self.points.len();
        let edges: Vec<(usize, usize)> = self.flags.iter().map(|&(p, l)| (p, np + l)).collect();
        let mut colors = vec![VertexClass::Point; np];
        colors.extend(std::iter::repeat_n(VertexClass::Line, self.lines.len()));
        Graph::with_colors(np + self.lines.len(), &edges, colors)
            .expect("flags form a valid bipartite graph")
    }

    /// Points and lines exchange roles; flags transpose.
    pub fn dual(&self) -> IncidenceStructure {
        IncidenceStructure {
            points: self.lines.clone(),
            lines: self.points.clone(),
            flags: self.flags.iter().map(|&(p, l)| (l, p)).collect(),
        }
    }
}

/// Whether grid label `point` (e.g. `"012"`) lies on grid line `line`
/// (e.g. `"0*2"`): the labels must agree on every coordinate the line fixes.
pub fn grid_incident(point: &str, line: &str) -> bool {
    point.len() == line.len()
        && point
            .chars()
            .zip(line.chars())
            .all(|(p, l)| l == '*' || p == l)
}

/// The (27_3) configuration of the 3x3x3 integer grid: points `xyz` and
/// lines `*yz`, `x*z`, `xy*`; a point is on a line iff the labels agree in
/// the two coordinates the line fixes.
pub fn gray_incidence() -> IncidenceStructure {
    let digits = ["0", "1", "2"];
    let mut points = Vec::with_capacity(27);
    for x in digits {
        for y in digits {
            for z in digits {
                points.push(format!("{x}{y}{z}"));
            }
        }
    }
    let mut lines = Vec::with_capacity(27);
    for i in digits {
        for j in digits {
            lines.push(format!("*{i}{j}"));
        }
    }
    for i in digits {
        for j in digits {
            lines.push(format!("{i}*{j}"));
        }
    }
    for i in digits {
        for j in digits {
            lines.push(format!("{i}{j}*"));
        }
    }
    let mut flags = Vec::new();
    for (pi, p) in points.iter().enumerate() {
        for (li, l) in lines.iter().enumerate() {
            if grid_incident(p, l) {
                flags.push((pi, li));
            }
        }
    }
    IncidenceStructure::new(points, lines, flags).expect("grid flags are consistent")
}

/// The Pappus (9_3) configuration on the z = 0 grid layer: the six grid
/// lines `*y0`, `x*0` plus the three diagonals `w0`, `w1`, `w2`, where `wc`
/// collects the points with `y - x = c (mod 3)`.
pub fn pappus_incidence() -> IncidenceStructure {
    let mut points = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            points.push(format!("{x}{y}0"));
        }
    }
    let mut lines = Vec::new();
    for y in 0..3 {
        lines.push(format!("*{y}0"));
    }
    for x in 0..3 {
        lines.push(format!("{x}*0"));
    }
    for c in 0..3 {
        lines.push(format!("w{c}"));
    }
    let mut flags = Vec::new();
    for (pi, p) in points.iter().enumerate() {
        let (x, y) = (
            p[0..1].parse::<i32>().unwrap(),
            p[1..2].parse::<i32>().unwrap(),
        );
        for (li, l) in lines.iter().enumerate() {
            let inc = if let Some(c) = l.strip_prefix('w') {
                (y - x).rem_euclid(3) == c.parse::<i32>().unwrap()
            } else {
                grid_incident(p, l)
            };
            if inc {
                flags.push((pi, li));
            }
        }
    }
    IncidenceStructure::new(points, lines, flags).expect("pappus flags are consistent")
}

/// The (9_2, 6_3) grid subconfiguration of [`pappus_incidence`]: the three
/// diagonal lines removed.
pub fn grid_incidence() -> IncidenceStructure {
    let pap = pappus_incidence();
    let keep: Vec<usize> = (0..pap.lines().len())
        .filter(|&l| !pap.lines()[l].starts_with('w'))
        .collect();
    let lines: Vec<String> = keep.iter().map(|&l| pap.lines()[l].clone()).collect();
    let flags: Vec<(usize, usize)> = pap
        .flags()
        .filter_map(|(p, l)| keep.iter().position(|&k| k == l).map(|nl| (p, nl)))
        .collect();
    IncidenceStructure::new(pap.points().to_vec(), lines, flags).unwrap()
}
