//! Line-oriented text formats for every value the CLI reads or writes.
//! Blank lines and `#` comments are ignored everywhere; `parse(serialize(x))`
//! reproduces `x` exactly.

use crate::covers::{Arc, FiniteGroupSpec, GroupTable, VoltageGraph};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexClass};
use crate::incidence::IncidenceStructure;
use crate::perm::Perm;
use crate::realizer::{
    CirclePointRef, ClassElems, ConstructionProgram, ConstructionStep, ElemRef, ParamSpec,
    Realization, TargetIncidence,
};
use std::collections::BTreeMap;

fn lines_of(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| err(line, format!("bad {what}: {tok}")))
}

// ---------------------------------------------------------------- graphs

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut colors: Option<Vec<VertexClass>> = None;
    let mut edges = Vec::new();
    for (ln, line) in lines_of(text) {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("GRAPH") => {
                let tok = it.next().ok_or_else(|| err(ln, "GRAPH needs a vertex count"))?;
                n = Some(parse_num(ln, tok, "vertex count")?);
            }
            Some("COLORS") => {
                let cs: Result<Vec<VertexClass>> = it
                    .map(|t| match t {
                        "P" => Ok(VertexClass::Point),
                        "L" => Ok(VertexClass::Line),
                        _ => Err(err(ln, format!("color token must be P or L, got {t}"))),
                    })
                    .collect();
                colors = Some(cs?);
            }
            Some("EDGE") => {
                let u = parse_num(ln, it.next().ok_or_else(|| err(ln, "EDGE needs u v"))?, "vertex")?;
                let v = parse_num(ln, it.next().ok_or_else(|| err(ln, "EDGE needs u v"))?, "vertex")?;
                edges.push((u, v));
            }
            Some(other) => return Err(err(ln, format!("unknown directive {other}"))),
            None => {}
        }
    }
    let n = n.ok_or_else(|| err(0, "missing GRAPH header"))?;
    match colors {
        Some(cs) => Graph::with_colors(n, &edges, cs),
        None => Graph::new(n, &edges),
    }
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("GRAPH {}\n", g.n());
    if let Some(cs) = g.colors() {
        out.push_str("COLORS ");
        out.push_str(
            &cs.iter()
                .map(|c| c.token())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push('\n');
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("EDGE {u} {v}\n"));
    }
    out
}

// ------------------------------------------------------------- incidence

pub fn parse_incidence(text: &str) -> Result<IncidenceStructure> {
    let mut points: Vec<String> = Vec::new();
    let mut lines: Vec<String> = Vec::new();
    let mut flags: Vec<(usize, usize)> = Vec::new();
    for (ln, line) in lines_of(text) {
        if let Some(rest) = line.strip_prefix("POINTS ") {
            points = rest.split(',').map(|s| s.trim().to_string()).collect();
        } else if let Some(rest) = line.strip_prefix("LINES ") {
            lines = rest.split(',').map(|s| s.trim().to_string()).collect();
        } else if let Some(rest) = line.strip_prefix("FLAG ") {
            let mut it = rest.split_whitespace();
            let p = it.next().ok_or_else(|| err(ln, "FLAG needs point and line"))?;
            let l = it.next().ok_or_else(|| err(ln, "FLAG needs point and line"))?;
            let pi = points
                .iter()
                .position(|x| x == p)
                .ok_or_else(|| err(ln, format!("unknown point {p}")))?;
            let li = lines
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| err(ln, format!("unknown line {l}")))?;
            flags.push((pi, li));
        } else {
            return Err(err(ln, format!("unknown directive: {line}")));
        }
    }
    IncidenceStructure::new(points, lines, flags)
}

pub fn serialize_incidence(inc: &IncidenceStructure) -> String {
    let mut out = String::new();
    out.push_str("POINTS ");
    out.push_str(&inc.points().join(","));
    out.push_str("\nLINES ");
    out.push_str(&inc.lines().join(","));
    out.push('\n');
    for (p, l) in inc.flags() {
        out.push_str(&format!("FLAG {} {}\n", inc.points()[p], inc.lines()[l]));
    }
    out
}

// ----------------------------------------------------------- permutations

pub fn parse_perm(text: &str) -> Result<Perm> {
    let Some((ln, line)) = lines_of(text).next() else {
        return Err(err(0, "empty permutation file"));
    };
    let Some(rest) = line.strip_prefix("PERM ") else {
        return Err(err(ln, "expected a PERM line"));
    };
    let (head, imgs) = rest
        .split_once(':')
        .ok_or_else(|| err(ln, "PERM <n> : i0 i1 ..."))?;
    let n: usize = parse_num(ln, head.trim(), "degree")?;
    let img: Result<Vec<usize>> = imgs
        .split_whitespace()
        .map(|t| parse_num(ln, t, "image"))
        .collect();
    let img = img?;
    if img.len() != n {
        return Err(err(ln, format!("expected {n} images, got {}", img.len())));
    }
    Perm::from_images(img)
}

pub fn serialize_perm(p: &Perm) -> String {
    let imgs: Vec<String> = p.images().map(|x| x.to_string()).collect();
    format!("PERM {} : {}\n", p.degree(), imgs.join(" "))
}

/// Group files list generators only; the caller materializes.
pub fn parse_group_generators(text: &str) -> Result<(usize, Vec<Perm>)> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (ln, line) in lines_of(text) {
        if let Some(rest) = line.strip_prefix("GROUP ") {
            degree = Some(parse_num(ln, rest.trim(), "degree")?);
        } else if let Some(rest) = line.strip_prefix("GEN ") {
            let n = degree.ok_or_else(|| err(ln, "GEN before GROUP header"))?;
            let img: Result<Vec<usize>> = rest
                .split_whitespace()
                .map(|t| parse_num(ln, t, "image"))
                .collect();
            let img = img?;
            if img.len() != n {
                return Err(err(ln, format!("expected {n} images, got {}", img.len())));
            }
            gens.push(Perm::from_images(img)?);
        } else {
            return Err(err(ln, format!("unknown directive: {line}")));
        }
    }
    let degree = degree.ok_or_else(|| err(0, "missing GROUP header"))?;
    Ok((degree, gens))
}

pub fn serialize_group_generators(degree: usize, gens: &[Perm]) -> String {
    let mut out = format!("GROUP {degree}\n");
    for g in gens {
        let imgs: Vec<String> = g.images().map(|x| x.to_string()).collect();
        out.push_str(&format!("GEN {}\n", imgs.join(" ")));
    }
    out
}

// ---------------------------------------------------------- voltage graphs

fn parse_voltage(ln: usize, spec: &FiniteGroupSpec, tok: &str) -> Result<usize> {
    let modp = |v: i64, m: usize| -> usize { v.rem_euclid(m as i64) as usize };
    match spec {
        FiniteGroupSpec::Cyclic(m) => {
            let v: i64 = parse_num(ln, tok, "voltage")?;
            Ok(modp(v, *m))
        }
        FiniteGroupSpec::Product(m, n) => {
            let (a, b) = tok
                .split_once(',')
                .ok_or_else(|| err(ln, format!("voltage {tok} must be a,b")))?;
            let a: i64 = parse_num(ln, a, "voltage")?;
            let b: i64 = parse_num(ln, b, "voltage")?;
            Ok(modp(a, *m) * n + modp(b, *n))
        }
        FiniteGroupSpec::Table(t) => {
            let v: usize = parse_num(ln, tok, "voltage")?;
            if v >= t.mul.len() {
                return Err(err(ln, format!("table index {v} out of range")));
            }
            Ok(v)
        }
    }
}

pub fn serialize_voltage(spec: &FiniteGroupSpec, v: usize) -> String {
    match spec {
        FiniteGroupSpec::Cyclic(_) | FiniteGroupSpec::Table(_) => v.to_string(),
        FiniteGroupSpec::Product(_, n) => format!("{},{}", v / n, v % n),
    }
}

pub fn parse_voltage_graph(text: &str) -> Result<VoltageGraph> {
    let mut spec: Option<FiniteGroupSpec> = None;
    let mut table_rows: Vec<Vec<usize>> = Vec::new();
    let mut expect_rows = 0usize;
    let mut names: Vec<String> = Vec::new();
    let mut classes: Vec<VertexClass> = Vec::new();
    let mut arcs: Vec<(usize, String, String, String)> = Vec::new();
    for (ln, line) in lines_of(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["RLGGROUP", "Z", m] => spec = Some(FiniteGroupSpec::Cyclic(parse_num(ln, m, "order")?)),
            ["RLGGROUP", "Z", m, "x", "Z", n] => {
                spec = Some(FiniteGroupSpec::Product(
                    parse_num(ln, m, "order")?,
                    parse_num(ln, n, "order")?,
                ))
            }
            ["RLGGROUP", "TABLE", k] => {
                expect_rows = parse_num(ln, k, "order")?;
                table_rows.clear();
            }
            ["ROW", rest @ ..] => {
                let row: Result<Vec<usize>> =
                    rest.iter().map(|t| parse_num(ln, t, "entry")).collect();
                table_rows.push(row?);
                if table_rows.len() == expect_rows && spec.is_none() {
                    spec = Some(FiniteGroupSpec::Table(GroupTable::new(table_rows.clone())?));
                }
            }
            ["NODE", name, class] => {
                names.push((*name).to_string());
                classes.push(match *class {
                    "P" => VertexClass::Point,
                    "L" => VertexClass::Line,
                    other => return Err(err(ln, format!("node class must be P or L, got {other}"))),
                });
            }
            ["ARC", from, to, voltage] => {
                arcs.push((ln, (*from).to_string(), (*to).to_string(), (*voltage).to_string()))
            }
            _ => return Err(err(ln, format!("unknown directive: {line}"))),
        }
    }
    let spec = spec.ok_or_else(|| err(0, "missing RLGGROUP header"))?;
    let resolved: Result<Vec<Arc>> = arcs
        .into_iter()
        .map(|(ln, from, to, volt)| {
            let f = names
                .iter()
                .position(|n| *n == from)
                .ok_or_else(|| err(ln, format!("unknown node {from}")))?;
            let t = names
                .iter()
                .position(|n| *n == to)
                .ok_or_else(|| err(ln, format!("unknown node {to}")))?;
            Ok(Arc {
                from: f,
                to: t,
                voltage: parse_voltage(ln, &spec, &volt)?,
            })
        })
        .collect();
    VoltageGraph::new(names, classes, spec, resolved?)
}

pub fn serialize_voltage_graph(vg: &VoltageGraph) -> String {
    let mut out = String::new();
    match &vg.group {
        FiniteGroupSpec::Cyclic(m) => out.push_str(&format!("RLGGROUP Z {m}\n")),
        FiniteGroupSpec::Product(m, n) => out.push_str(&format!("RLGGROUP Z {m} x Z {n}\n")),
        FiniteGroupSpec::Table(t) => {
            out.push_str(&format!("RLGGROUP TABLE {}\n", t.mul.len()));
            for row in &t.mul {
                let toks: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("ROW {}\n", toks.join(" ")));
            }
        }
    }
    for (name, class) in vg.names.iter().zip(&vg.classes) {
        out.push_str(&format!("NODE {name} {}\n", class.token()));
    }
    for a in &vg.arcs {
        out.push_str(&format!(
            "ARC {} {} {}\n",
            vg.names[a.from],
            vg.names[a.to],
            serialize_voltage(&vg.group, a.voltage)
        ));
    }
    out
}

/// A tree file lists arcs of an existing voltage graph as
/// `ARC <from> <to> <voltage>`; returns their indices in `vg`.
pub fn parse_tree_arcs(text: &str, vg: &VoltageGraph) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (ln, line) in lines_of(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let ["ARC", from, to, voltage] = toks.as_slice() else {
            return Err(err(ln, format!("expected ARC lines, got: {line}")));
        };
        let v = parse_voltage(ln, &vg.group, voltage)?;
        let idx = vg
            .arcs
            .iter()
            .position(|a| {
                vg.names[a.from] == *from && vg.names[a.to] == *to && a.voltage == v
            })
            .ok_or_else(|| err(ln, format!("no arc {from} -> {to} with voltage {voltage}")))?;
        out.push(idx);
    }
    Ok(out)
}

// ------------------------------------------------------- orbit labelings

pub fn parse_labels(text: &str) -> Result<Vec<(String, Vec<String>)>> {
    let mut out = Vec::new();
    for (ln, line) in lines_of(text) {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("CLASS") => {
                let name = it
                    .next()
                    .ok_or_else(|| err(ln, "CLASS needs a name"))?
                    .to_string();
                let labels: Vec<String> = it.map(str::to_string).collect();
                if labels.is_empty() {
                    return Err(err(ln, "CLASS needs labels"));
                }
                out.push((name, labels));
            }
            _ => return Err(err(ln, format!("unknown directive: {line}"))),
        }
    }
    Ok(out)
}

pub fn serialize_labels(labels: &[(String, Vec<String>)]) -> String {
    let mut out = String::new();
    for (name, ls) in labels {
        out.push_str(&format!("CLASS {name} {}\n", ls.join(" ")));
    }
    out
}

// ----------------------------------------------------- construction programs

fn parse_elem_ref(ln: usize, tok: &str) -> Result<ElemRef> {
    let open = tok
        .find('[')
        .ok_or_else(|| err(ln, format!("reference {tok} must look like C[j]")))?;
    if !tok.ends_with(']') {
        return Err(err(ln, format!("reference {tok} must look like C[j]")));
    }
    let class = tok[..open].to_string();
    let index: usize = parse_num(ln, &tok[open + 1..tok.len() - 1], "index")?;
    Ok(ElemRef { class, index })
}

pub fn parse_program(text: &str) -> Result<ConstructionProgram> {
    let mut order: Option<usize> = None;
    let mut params = Vec::new();
    let mut steps = Vec::new();
    let mut targets = Vec::new();
    let mut labels: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (ln, line) in lines_of(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["ORDER", m] => order = Some(parse_num(ln, m, "order")?),
            ["PARAM", name, default, lo, hi] => params.push(ParamSpec {
                name: (*name).to_string(),
                default: parse_num(ln, default, "default")?,
                lo: parse_num(ln, lo, "lower bound")?,
                hi: parse_num(ln, hi, "upper bound")?,
            }),
            ["INIT", class, m, radius, phase] => steps.push(ConstructionStep::InitRegularOrbit {
                class: (*class).to_string(),
                orbit: parse_num(ln, m, "orbit size")?,
                radius: parse_num(ln, radius, "radius")?,
                phase: parse_num(ln, phase, "phase")?,
            }),
            ["FREEPOINT", class, "ON", host, "PARAM", param] => {
                steps.push(ConstructionStep::FreePointOnLine {
                    class: (*class).to_string(),
                    host: parse_elem_ref(ln, host)?,
                    param: (*param).to_string(),
                })
            }
            ["FREELINE", class, "THROUGH", host, "PARAM", param] => {
                steps.push(ConstructionStep::FreeLineThroughPoint {
                    class: (*class).to_string(),
                    host: parse_elem_ref(ln, host)?,
                    param: (*param).to_string(),
                })
            }
            ["JOIN", class, p, q] => steps.push(ConstructionStep::JoinOrbit {
                class: (*class).to_string(),
                p: parse_elem_ref(ln, p)?,
                q: parse_elem_ref(ln, q)?,
            }),
            ["MEET", class, l, m] => steps.push(ConstructionStep::MeetOrbit {
                class: (*class).to_string(),
                l: parse_elem_ref(ln, l)?,
                m: parse_elem_ref(ln, m)?,
            }),
            ["ROTFILL", class] => steps.push(ConstructionStep::OrbitRotateFill {
                class: (*class).to_string(),
            }),
            ["LINECIRCLE", class, line, c1, c2, c3] => {
                let circ = |tok: &str| -> Result<CirclePointRef> {
                    if tok == "ORIGIN" {
                        Ok(CirclePointRef::Origin)
                    } else {
                        Ok(CirclePointRef::Elem(parse_elem_ref(ln, tok)?))
                    }
                };
                steps.push(ConstructionStep::LineCircleOrbit {
                    class: (*class).to_string(),
                    line: parse_elem_ref(ln, line)?,
                    circle: [circ(c1)?, circ(c2)?, circ(c3)?],
                })
            }
            ["TARGET", line, point] => targets.push(TargetIncidence {
                line: parse_elem_ref(ln, line)?,
                point: parse_elem_ref(ln, point)?,
            }),
            ["LABELS", class, rest @ ..] => {
                labels.insert(
                    (*class).to_string(),
                    rest.iter().map(|s| (*s).to_string()).collect(),
                );
            }
            _ => return Err(err(ln, format!("unknown directive: {line}"))),
        }
    }
    Ok(ConstructionProgram {
        order: order.ok_or_else(|| err(0, "missing ORDER header"))?,
        params,
        steps,
        targets,
        labels,
    })
}

pub fn serialize_program(p: &ConstructionProgram) -> String {
    let mut out = format!("ORDER {}\n", p.order);
    for param in &p.params {
        out.push_str(&format!(
            "PARAM {} {} {} {}\n",
            param.name, param.default, param.lo, param.hi
        ));
    }
    for step in &p.steps {
        let line = match step {
            ConstructionStep::InitRegularOrbit {
                class,
                orbit,
                radius,
                phase,
            } => format!("INIT {class} {orbit} {radius} {phase}"),
            ConstructionStep::FreePointOnLine { class, host, param } => {
                format!("FREEPOINT {class} ON {host} PARAM {param}")
            }
            ConstructionStep::FreeLineThroughPoint { class, host, param } => {
                format!("FREELINE {class} THROUGH {host} PARAM {param}")
            }
            ConstructionStep::JoinOrbit { class, p, q } => format!("JOIN {class} {p} {q}"),
            ConstructionStep::MeetOrbit { class, l, m } => format!("MEET {class} {l} {m}"),
            ConstructionStep::OrbitRotateFill { class } => format!("ROTFILL {class}"),
            ConstructionStep::LineCircleOrbit { class, line, circle } => {
                let c = circle
                    .iter()
                    .map(|r| match r {
                        CirclePointRef::Origin => "ORIGIN".to_string(),
                        CirclePointRef::Elem(e) => e.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("LINECIRCLE {class} {line} {c}")
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    for t in &p.targets {
        out.push_str(&format!("TARGET {} {}\n", t.line, t.point));
    }
    for (class, ls) in &p.labels {
        out.push_str(&format!("LABELS {class} {}\n", ls.join(" ")));
    }
    out
}

// ------------------------------------------------------------ realizations

pub fn parse_realization(text: &str) -> Result<Realization> {
    let mut order: Option<usize> = None;
    let mut params: Vec<(String, f64)> = Vec::new();
    let mut labels: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut classes: Vec<(String, ClassElems)> = Vec::new();
    let push_point = |ln: usize,
                          classes: &mut Vec<(String, ClassElems)>,
                          class: &str,
                          j: usize,
                          p: crate::geom::Point2|
     -> Result<()> {
        match classes.iter_mut().find(|(n, _)| n == class) {
            Some((_, ClassElems::Points(v))) => {
                if v.len() != j {
                    return Err(err(ln, format!("class {class} indices out of order")));
                }
                v.push(p);
            }
            Some(_) => return Err(err(ln, format!("class {class} mixes points and lines"))),
            None => {
                if j != 0 {
                    return Err(err(ln, format!("class {class} must start at index 0")));
                }
                classes.push((class.to_string(), ClassElems::Points(vec![p])));
            }
        }
        Ok(())
    };
    let push_line = |ln: usize,
                         classes: &mut Vec<(String, ClassElems)>,
                         class: &str,
                         j: usize,
                         l: crate::geom::Line2|
     -> Result<()> {
        match classes.iter_mut().find(|(n, _)| n == class) {
            Some((_, ClassElems::Lines(v))) => {
                if v.len() != j {
                    return Err(err(ln, format!("class {class} indices out of order")));
                }
                v.push(l);
            }
            Some(_) => return Err(err(ln, format!("class {class} mixes points and lines"))),
            None => {
                if j != 0 {
                    return Err(err(ln, format!("class {class} must start at index 0")));
                }
                classes.push((class.to_string(), ClassElems::Lines(vec![l])));
            }
        }
        Ok(())
    };
    for (ln, line) in lines_of(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["REALIZATION", m] => order = Some(parse_num(ln, m, "order")?),
            ["PARAMVAL", name, v] => {
                params.push(((*name).to_string(), parse_num(ln, v, "value")?))
            }
            ["LABEL", class, rest @ ..] => {
                labels.insert(
                    (*class).to_string(),
                    rest.iter().map(|s| (*s).to_string()).collect(),
                );
            }
            ["POINT", class, j, x, y] => {
                let p = crate::geom::Point2::new(
                    parse_num(ln, x, "coordinate")?,
                    parse_num(ln, y, "coordinate")?,
                );
                push_point(ln, &mut classes, class, parse_num(ln, j, "index")?, p)?;
            }
            ["LINE", class, j, a, b, c] => {
                let l = crate::geom::Line2::new(
                    parse_num(ln, a, "coefficient")?,
                    parse_num(ln, b, "coefficient")?,
                    parse_num(ln, c, "coefficient")?,
                )?;
                push_line(ln, &mut classes, class, parse_num(ln, j, "index")?, l)?;
            }
            _ => return Err(err(ln, format!("unknown directive: {line}"))),
        }
    }
    Realization::new(
        order.ok_or_else(|| err(0, "missing REALIZATION header"))?,
        classes,
        labels,
        params,
    )
}

pub fn serialize_realization(r: &Realization) -> String {
    let mut out = format!("REALIZATION {}\n", r.order);
    for (name, v) in &r.params {
        out.push_str(&format!("PARAMVAL {name} {v:.17}\n"));
    }
    for (class, ls) in &r.labels {
        out.push_str(&format!("LABEL {class} {}\n", ls.join(" ")));
    }
    for (name, elems) in &r.classes {
        match elems {
            ClassElems::Points(v) => {
                for (j, p) in v.iter().enumerate() {
                    out.push_str(&format!("POINT {name} {j} {:.17} {:.17}\n", p.x, p.y));
                }
            }
            ClassElems::Lines(v) => {
                for (j, l) in v.iter().enumerate() {
                    out.push_str(&format!(
                        "LINE {name} {j} {:.17} {:.17} {:.17}\n",
                        l.a, l.b, l.c
                    ));
                }
            }
        }
    }
    out
}
