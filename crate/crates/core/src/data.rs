//! Bundled data: the grid configuration and its Levi graph, the reference
//! quotient graphs, the voltage-labeled reduced Levi graphs, the construction
//! programs, and the orbit labelings used to audit realizations. Files live
//! under `data/` and are embedded at compile time; accessors parse on call.

use crate::covers::VoltageGraph;
use crate::error::Result;
use crate::formats;
use crate::graph::Graph;
use crate::incidence::{grid_incident, IncidenceStructure};
use crate::perm::Perm;
use crate::realizer::ConstructionProgram;

pub const GRAY_INCIDENCE: &str = include_str!("../data/gray_incidence.txt");
pub const GRAY_LEVI: &str = include_str!("../data/gray_levi.txt");
pub const PAPPUS_GRAPH: &str = include_str!("../data/pappus_graph.txt");
pub const GG_GRAPH: &str = include_str!("../data/gg_graph.txt");
pub const RLG_Z3Z3: &str = include_str!("../data/rlg_z3z3.txt");
pub const RLG_PAPPUS: &str = include_str!("../data/rlg_pappus.txt");
pub const RLG_PAPPUS_PATH: &str = include_str!("../data/rlg_pappus_path.txt");
pub const RLG_Z9: &str = include_str!("../data/rlg_z9.txt");
pub const RLG_Z9_PATH: &str = include_str!("../data/rlg_z9_path.txt");
pub const TREE_Z9_PATH: &str = include_str!("../data/tree_z9_path.txt");
pub const PROGRAM_PAPPUS_RLG: &str = include_str!("../data/pappus_rlg.prog");
pub const PROGRAM_PAPPUS: &str = include_str!("../data/pappus.prog");
pub const PROGRAM_Z9: &str = include_str!("../data/z9.prog");
pub const LABELS_Z3Z3: &str = include_str!("../data/labels_z3z3.txt");
pub const LABELS_Z9: &str = include_str!("../data/labels_z9.txt");
pub const GROUP_Z3_ROWS: &str = include_str!("../data/group_z3_rows.txt");
pub const GROUP_Z3_COLS: &str = include_str!("../data/group_z3_cols.txt");
pub const GROUP_Z3Z3: &str = include_str!("../data/group_z3z3.txt");
pub const GROUP_Z9: &str = include_str!("../data/group_z9.txt");

/// Every bundled file, keyed by the name the CLI accepts.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("incidence", GRAY_INCIDENCE),
        ("levi", GRAY_LEVI),
        ("pappus-graph", PAPPUS_GRAPH),
        ("gg-graph", GG_GRAPH),
        ("rlg-z3z3", RLG_Z3Z3),
        ("rlg-pappus", RLG_PAPPUS),
        ("rlg-pappus-path", RLG_PAPPUS_PATH),
        ("rlg-z9", RLG_Z9),
        ("rlg-z9-path", RLG_Z9_PATH),
        ("tree-z9-path", TREE_Z9_PATH),
        ("prog-pappus-rlg", PROGRAM_PAPPUS_RLG),
        ("prog-pappus", PROGRAM_PAPPUS),
        ("prog-z9", PROGRAM_Z9),
        ("labels-z3z3", LABELS_Z3Z3),
        ("labels-z9", LABELS_Z9),
        ("group-z3-rows", GROUP_Z3_ROWS),
        ("group-z3-cols", GROUP_Z3_COLS),
        ("group-z3z3", GROUP_Z3Z3),
        ("group-z9", GROUP_Z9),
    ]
}

pub fn gray_levi() -> Graph {
    formats::parse_graph(GRAY_LEVI).expect("bundled Levi graph parses")
}

pub fn pappus_graph() -> Graph {
    formats::parse_graph(PAPPUS_GRAPH).expect("bundled Pappus graph parses")
}

pub fn gg_graph() -> Graph {
    formats::parse_graph(GG_GRAPH).expect("bundled GG graph parses")
}

pub fn rlg_z3z3() -> VoltageGraph {
    formats::parse_voltage_graph(RLG_Z3Z3).expect("bundled RLG parses")
}

pub fn rlg_pappus() -> VoltageGraph {
    formats::parse_voltage_graph(RLG_PAPPUS).expect("bundled RLG parses")
}

pub fn rlg_pappus_path() -> VoltageGraph {
    formats::parse_voltage_graph(RLG_PAPPUS_PATH).expect("bundled RLG parses")
}

pub fn rlg_z9() -> VoltageGraph {
    formats::parse_voltage_graph(RLG_Z9).expect("bundled RLG parses")
}

pub fn rlg_z9_path() -> VoltageGraph {
    formats::parse_voltage_graph(RLG_Z9_PATH).expect("bundled RLG parses")
}

pub fn pappus_rlg_program() -> ConstructionProgram {
    formats::parse_program(PROGRAM_PAPPUS_RLG).expect("bundled program parses")
}

pub fn pappus_program() -> ConstructionProgram {
    formats::parse_program(PROGRAM_PAPPUS).expect("bundled program parses")
}

pub fn z9_program() -> ConstructionProgram {
    formats::parse_program(PROGRAM_Z9).expect("bundled program parses")
}

/// Parsed orbit labeling: `(class name, labels by orbit index)`.
pub fn parse_labels(text: &str) -> Result<Vec<(String, Vec<String>)>> {
    formats::parse_labels(text)
}

/// The translation `+abc` on grid labels as a permutation of the Levi
/// vertices of `gray` (points `xyz -> (x+a)(y+b)(z+c)`, lines likewise with
/// `*` fixed).
pub fn gray_translation(gray: &IncidenceStructure, a: u32, b: u32, c: u32) -> Perm {
    let shift = [a, b, c];
    let map_label = |lab: &str| -> String {
        lab.chars()
            .enumerate()
            .map(|(i, ch)| match ch.to_digit(10) {
                Some(d) => char::from_digit((d + shift[i]) % 3, 10).unwrap(),
                None => '*',
            })
            .collect()
    };
    perm_from_label_map(gray, map_label)
}

/// The order-9 rotation `xyz -> (z+1)xy` on grid labels as a permutation of
/// the Levi vertices.
pub fn gray_z9_rotation(gray: &IncidenceStructure) -> Perm {
    let map_point = |lab: &str| -> String {
        let cs: Vec<char> = lab.chars().collect();
        let z = cs[2].to_digit(10).unwrap();
        format!("{}{}{}", (z + 1) % 3, cs[0], cs[1])
    };
    let map_label = |lab: &str| -> String {
        if !lab.contains('*') {
            return map_point(lab);
        }
        // map the line by mapping its points and re-deriving the label
        let pts: Vec<String> = point_labels_on(lab)
            .into_iter()
            .map(|p| map_point(&p))
            .collect();
        label_of_point_set(&pts)
    };
    perm_from_label_map(gray, map_label)
}

fn point_labels_on(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                let p = format!("{x}{y}{z}");
                if grid_incident(&p, line) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn label_of_point_set(pts: &[String]) -> String {
    (0..3)
        .map(|i| {
            let cs: Vec<char> = pts.iter().map(|p| p.chars().nth(i).unwrap()).collect();
            if cs.iter().all(|&c| c == cs[0]) {
                cs[0]
            } else {
                '*'
            }
        })
        .collect()
}

fn perm_from_label_map(
    gray: &IncidenceStructure,
    map_label: impl Fn(&str) -> String,
) -> Perm {
    let np = gray.points().len();
    let mut img = vec![0usize; np + gray.lines().len()];
    for (i, p) in gray.points().iter().enumerate() {
        img[i] = gray
            .point_index(&map_label(p))
            .expect("label map stays within the point set");
    }
    for (i, l) in gray.lines().iter().enumerate() {
        img[np + i] = np
            + gray
                .line_index(&map_label(l))
                .expect("label map stays within the line set");
    }
    Perm::from_images(img).expect("label map is a bijection")
}
