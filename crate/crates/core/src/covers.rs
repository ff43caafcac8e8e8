//! Quotients of graphs under semi-regular actions, voltage-labeled reduced
//! Levi graphs, voltage normalization, and lifting back to regular covers.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexClass};
use crate::perm::{preserves_edges, Perm, PermGroup};
use std::collections::{HashMap, HashSet, VecDeque};

/// What a base-graph edge orbit projects to in the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    Proper,
    Parallel,
    Loop,
    SemiEdge,
}

#[derive(Clone, Debug)]
pub struct Link {
    pub a: usize,
    pub b: usize,
    pub kind: LinkKind,
    /// Number of base edges lying over this link.
    pub fiber: usize,
}

/// Quotient multigraph of a graph under a semi-regular group action.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub orbits: Vec<Vec<usize>>,
    pub links: Vec<Link>,
    pub colors: Option<Vec<VertexClass>>,
}

impl QuotientGraph {
    pub fn has_semi_edges(&self) -> bool {
        self.links.iter().any(|l| l.kind == LinkKind::SemiEdge)
    }

    /// Simple graph on the orbit vertices: loops and semi-edges dropped,
    /// parallels merged.
    pub fn underlying_simple(&self) -> Graph {
        let mut edges: Vec<(usize, usize)> = self
            .links
            .iter()
            .filter(|l| l.a != l.b)
            .map(|l| (l.a.min(l.b), l.a.max(l.b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        match &self.colors {
            Some(cs) => Graph::with_colors(self.orbits.len(), &edges, cs.clone())
                .expect("quotient coloring is proper"),
            None => Graph::new(self.orbits.len(), &edges).expect("quotient edges are valid"),
        }
    }
}

/// Quotient of `g` by a semi-regular subgroup of its automorphism group.
/// Orbit vertices keep the coloring when the action preserves it; links are
/// classified per edge orbit (a semi-edge when some group element flips an
/// edge in place).
pub fn quotient(g: &Graph, gamma: &PermGroup) -> Result<QuotientGraph> {
    if gamma.degree() != g.n() {
        return Err(Error::InvalidGroup(
            "group degree does not match graph order".into(),
        ));
    }
    if !gamma.generators().iter().all(|p| preserves_edges(p, g))
        || !gamma.elements().iter().all(|p| preserves_edges(p, g))
    {
        return Err(Error::NotAutomorphisms);
    }
    if !gamma.is_semi_regular() {
        return Err(Error::NotSemiRegular);
    }
    let orbits = gamma.orbits();
    let mut orbit_of = vec![usize::MAX; g.n()];
    for (i, orb) in orbits.iter().enumerate() {
        for &v in orb {
            orbit_of[v] = i;
        }
    }
    let colors = g.colors().map(|cs| {
        orbits
            .iter()
            .map(|orb| cs[orb[0]])
            .collect::<Vec<VertexClass>>()
    });
    if let (Some(cs), Some(base)) = (&colors, g.colors()) {
        for (i, orb) in orbits.iter().enumerate() {
            if orb.iter().any(|&v| base[v] != cs[i]) {
                // orbit mixes the two classes: drop the inherited coloring
                return build_links(g, gamma, orbits.clone(), orbit_of, None);
            }
        }
    }
    build_links(g, gamma, orbits, orbit_of, colors)
}

fn build_links(
    g: &Graph,
    gamma: &PermGroup,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    colors: Option<Vec<VertexClass>>,
) -> Result<QuotientGraph> {
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut links = Vec::new();
    for &(u, v) in g.edges() {
        if seen.contains(&(u, v)) {
            continue;
        }
        let mut fiber = 0;
        let mut folded = false;
        for p in gamma.elements() {
            let (a, b) = (p.apply(u), p.apply(v));
            let e = (a.min(b), a.max(b));
            if seen.insert(e) {
                fiber += 1;
            }
            if a == v && b == u {
                folded = true;
            }
        }
        let (a, b) = (orbit_of[u], orbit_of[v]);
        let kind = if folded {
            LinkKind::SemiEdge
        } else if a == b {
            LinkKind::Loop
        } else {
            LinkKind::Proper
        };
        links.push(Link { a, b, kind, fiber });
    }
    // promote multi-links between the same pair to Parallel
    let mut mult: HashMap<(usize, usize), usize> = HashMap::new();
    for l in &links {
        *mult.entry((l.a.min(l.b), l.a.max(l.b))).or_insert(0) += 1;
    }
    for l in &mut links {
        if l.kind == LinkKind::Proper && mult[&(l.a.min(l.b), l.a.max(l.b))] > 1 {
            l.kind = LinkKind::Parallel;
        }
    }
    Ok(QuotientGraph {
        orbits,
        links,
        colors,
    })
}

/// Finite voltage group: cyclic, a product of two cyclic groups, or an
/// explicit multiplication table. Elements are `0..order` with identity `0`.
#[derive(Clone, Debug, PartialEq)]
pub enum FiniteGroupSpec {
    Cyclic(usize),
    Product(usize, usize),
    Table(GroupTable),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupTable {
    pub mul: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table must be square".into()));
        }
        if mul.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for (a, row) in mul.iter().enumerate() {
            if mul[0][a] != a || row[0] != a {
                return Err(Error::InvalidGroup("element 0 must be the identity".into()));
            }
            if !row.contains(&0) {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        // associativity spot check on a deterministic pseudo-random sample
        let mut state = 0x9e37u64;
        for _ in 0..200.min(n * n * n) {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let a = (state >> 16) as usize % n;
            let b = (state >> 32) as usize % n;
            let c = (state >> 48) as usize % n;
            if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                return Err(Error::InvalidGroup("table is not associative".into()));
            }
        }
        Ok(GroupTable { mul })
    }
}

impl FiniteGroupSpec {
    pub fn order(&self) -> usize {
        match self {
            FiniteGroupSpec::Cyclic(m) => *m,
            FiniteGroupSpec::Product(m, n) => m * n,
            FiniteGroupSpec::Table(t) => t.mul.len(),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            FiniteGroupSpec::Cyclic(m) => (a + b) % m,
            FiniteGroupSpec::Product(m, n) => {
                let (a1, a2) = (a / n, a % n);
                let (b1, b2) = (b / n, b % n);
                ((a1 + b1) % m) * n + (a2 + b2) % n
            }
            FiniteGroupSpec::Table(t) => t.mul[a][b],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match self {
            FiniteGroupSpec::Cyclic(m) => (m - a) % m,
            FiniteGroupSpec::Product(m, n) => {
                let (a1, a2) = (a / n, a % n);
                ((m - a1) % m) * n + (n - a2) % n
            }
            FiniteGroupSpec::Table(t) => t.mul[a].iter().position(|&x| x == 0).unwrap(),
        }
    }
}

/// An explicit isomorphism from a [`FiniteGroupSpec`] onto a permutation
/// group: `perms[i]` realizes spec element `i`.
#[derive(Clone, Debug)]
pub struct DeckIso {
    pub spec: FiniteGroupSpec,
    pub perms: Vec<Perm>,
}

impl DeckIso {
    /// Cyclic deck group generated by `gen`: element `k` maps to `gen^k`.
    pub fn cyclic(gen: &Perm) -> Self {
        let m = gen.order();
        let mut perms = vec![Perm::identity(gen.degree())];
        for _ in 1..m {
            perms.push(gen.compose(perms.last().unwrap()));
        }
        DeckIso {
            spec: FiniteGroupSpec::Cyclic(m),
            perms,
        }
    }

    /// Product deck group from two commuting generators whose cyclic groups
    /// intersect trivially; element `a*n + b` maps to `g1^a g2^b`.
    pub fn product(g1: &Perm, g2: &Perm) -> Result<Self> {
        if g1.compose(g2) != g2.compose(g1) {
            return Err(Error::InvalidGroup(
                "product deck generators must commute".into(),
            ));
        }
        let (m, n) = (g1.order(), g2.order());
        let mut perms = Vec::with_capacity(m * n);
        for a in 0..m {
            for b in 0..n {
                let mut p = Perm::identity(g1.degree());
                for _ in 0..a {
                    p = g1.compose(&p);
                }
                for _ in 0..b {
                    p = g2.compose(&p);
                }
                perms.push(p);
            }
        }
        let mut set: Vec<&Perm> = perms.iter().collect();
        set.sort();
        set.dedup();
        if set.len() != m * n {
            return Err(Error::InvalidGroup(
                "product deck generators overlap: not a direct product".into(),
            ));
        }
        Ok(DeckIso {
            spec: FiniteGroupSpec::Product(m, n),
            perms,
        })
    }

    /// Derives a cyclic iso automatically when `gamma` is cyclic.
    pub fn auto_cyclic(gamma: &PermGroup) -> Option<Self> {
        let n = gamma.order();
        let gen = gamma.elements().iter().find(|p| p.order() == n)?;
        Some(DeckIso::cyclic(gen))
    }

    /// Spec element realized by `p`, if `p` is in the deck group.
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.perms.iter().position(|q| q == p)
    }
}

/// A bipartite voltage graph (reduced Levi graph): nodes carry a point/line
/// class, arcs run from line-class to point-class nodes and carry voltages.
/// An arc `L -> P` with voltage `g` means orbit element `L_h` is incident
/// with `P_{h*g}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VoltageGraph {
    pub names: Vec<String>,
    pub classes: Vec<VertexClass>,
    pub group: FiniteGroupSpec,
    pub arcs: Vec<Arc>,
    /// Nodes carrying a semi-edge. Representable, but lifting them is
    /// rejected.
    pub semi_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub voltage: usize,
}

impl VoltageGraph {
    pub fn new(
        names: Vec<String>,
        classes: Vec<VertexClass>,
        group: FiniteGroupSpec,
        arcs: Vec<Arc>,
    ) -> Result<Self> {
        if names.len() != classes.len() {
            return Err(Error::InvalidVoltageGraph("node metadata mismatch".into()));
        }
        let n = names.len();
        for a in &arcs {
            if a.from >= n || a.to >= n {
                return Err(Error::InvalidVoltageGraph("arc endpoint out of range".into()));
            }
            if classes[a.from] != VertexClass::Line || classes[a.to] != VertexClass::Point {
                return Err(Error::InvalidVoltageGraph(
                    "arcs must run from line-class to point-class nodes".into(),
                ));
            }
            if a.voltage >= group.order() {
                return Err(Error::InvalidVoltageGraph("voltage out of range".into()));
            }
        }
        Ok(VoltageGraph {
            names,
            classes,
            group,
            arcs,
            semi_edges: vec![],
        })
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Derived graph of the voltage assignment: vertices are
    /// `(node, group element)`, and an arc `L -> P` with voltage `g` lifts to
    /// the edges `{(L, h), (P, h*g)}` for every `h`. Vertex `node i, elem h`
    /// gets index `i * |G| + h`.
    pub fn lift(&self) -> Result<Graph> {
        if !self.semi_edges.is_empty() {
            return Err(Error::InvalidVoltageGraph(
                "cannot lift a voltage graph with semi-edges".into(),
            ));
        }
        let m = self.group.order();
        let mut edges = Vec::with_capacity(self.arcs.len() * m);
        for a in &self.arcs {
            for h in 0..m {
                edges.push((a.from * m + h, a.to * m + self.group.mul(h, a.voltage)));
            }
        }
        let mut colors = Vec::with_capacity(self.names.len() * m);
        for c in &self.classes {
            colors.extend(std::iter::repeat_n(*c, m));
        }
        Graph::with_colors(self.names.len() * m, &edges, colors)
    }

    /// Adds `g` on the appropriate side of every arc at `node`, relabeling
    /// which orbit element counts as 0th; the lift's isomorphism class is
    /// unchanged.
    pub fn shift_voltages(&self, node: usize, g: usize) -> VoltageGraph {
        let mut out = self.clone();
        for a in &mut out.arcs {
            if a.from == node {
                a.voltage = self.group.mul(g, a.voltage);
            } else if a.to == node {
                a.voltage = self.group.mul(a.voltage, self.group.inv(g));
            }
        }
        out
    }

    /// Zeroes the voltages on a spanning tree given as arc indices, by
    /// propagating node shifts outward from node 0.
    pub fn normalize_spanning_tree(&self, tree: &[usize]) -> Result<VoltageGraph> {
        let n = self.names.len();
        if tree.len() + 1 != n {
            return Err(Error::NotSpanningTree(format!(
                "{} arcs cannot span {} nodes",
                tree.len(),
                n
            )));
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (other node, arc idx)
        for &ai in tree {
            let a = self
                .arcs
                .get(ai)
                .ok_or_else(|| Error::NotSpanningTree(format!("arc index {ai} out of range")))?;
            adj[a.from].push((a.to, ai));
            adj[a.to].push((a.from, ai));
        }
        // BFS from node 0 computing shifts; s(root) = identity
        let mut shift = vec![usize::MAX; n];
        shift[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        let mut visited_arcs = 0;
        while let Some(u) = queue.pop_front() {
            for &(v, ai) in &adj[u] {
                if shift[v] != usize::MAX {
                    continue;
                }
                visited_arcs += 1;
                let a = &self.arcs[ai];
                // want: s(from) * voltage * s(to)^-1 = identity
                shift[v] = if v == a.to {
                    // s(to) = s(from) * voltage
                    self.group.mul(shift[u], a.voltage)
                } else {
                    // s(from) = s(to) * voltage^-1
                    self.group.mul(shift[u], self.group.inv(a.voltage))
                };
                queue.push_back(v);
            }
        }
        if visited_arcs != tree.len() || shift.contains(&usize::MAX) {
            return Err(Error::NotSpanningTree(
                "arc set is disconnected or contains a cycle".into(),
            ));
        }
        let mut out = self.clone();
        for a in &mut out.arcs {
            out_voltage(&self.group, &shift, a);
        }
        Ok(out)
    }

    /// Reverses all arcs (inverting voltages) and swaps the node classes:
    /// the reduced Levi graph of the dual configuration.
    pub fn dual_rlg(&self) -> VoltageGraph {
        VoltageGraph {
            names: self.names.clone(),
            classes: self.classes.iter().map(|c| c.swapped()).collect(),
            group: self.group.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| Arc {
                    from: a.to,
                    to: a.from,
                    voltage: self.group.inv(a.voltage),
                })
                .collect(),
            semi_edges: self.semi_edges.clone(),
        }
    }

    /// Multiset of voltages, sorted.
    pub fn voltage_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.arcs.iter().map(|a| a.voltage).collect();
        v.sort_unstable();
        v
    }

    /// The deck group of the lift as permutations of the lift's vertices:
    /// spec element `g` sends `(node, h)` to `(node, g*h)`.
    pub fn deck_group(&self) -> PermGroup {
        let m = self.group.order();
        let n = self.names.len();
        let mut gens = Vec::new();
        for g in 1..m {
            let mut img = vec![0usize; n * m];
            for node in 0..n {
                for h in 0..m {
                    img[node * m + h] = node * m + self.group.mul(g, h);
                }
            }
            gens.push(Perm::from_images(img).unwrap());
        }
        PermGroup::from_generators(n * m, gens, (n * m).max(m * m))
            .expect("deck group is bounded by the group order")
    }
}

fn out_voltage(group: &FiniteGroupSpec, shift: &[usize], a: &mut Arc) {
    // v' = s(from) * v * s(to)^-1
    a.voltage = group.mul(group.mul(shift[a.from], a.voltage), group.inv(shift[a.to]));
}

/// Whether two voltage graphs over the same group with identical node lists
/// differ only by node shifts. Searched by brute force over shift
/// assignments, which is fine at reduced-Levi-graph scale.
pub fn shift_equivalent(a: &VoltageGraph, b: &VoltageGraph) -> bool {
    if a.names != b.names || a.classes != b.classes || a.group != b.group {
        return false;
    }
    if a.arcs.len() != b.arcs.len() {
        return false;
    }
    let pair_key = |arcs: &[Arc]| {
        let mut m: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for arc in arcs {
            m.entry((arc.from, arc.to)).or_default().push(arc.voltage);
        }
        m
    };
    let target = {
        let mut t = pair_key(&b.arcs);
        for v in t.values_mut() {
            v.sort_unstable();
        }
        t
    };
    let n = a.names.len();
    let ord = a.group.order();
    let mut shifts = vec![0usize; n];
    fn rec(
        a: &VoltageGraph,
        target: &HashMap<(usize, usize), Vec<usize>>,
        shifts: &mut Vec<usize>,
        node: usize,
        ord: usize,
    ) -> bool {
        let n = a.names.len();
        if node == n {
            return true;
        }
        'outer: for s in 0..ord {
            shifts[node] = s;
            // check all arcs whose endpoints are both decided
            let mut groups: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
            for arc in &a.arcs {
                if arc.from <= node && arc.to <= node && (arc.from == node || arc.to == node) {
                    let v = a.group.mul(
                        a.group.mul(shifts[arc.from], arc.voltage),
                        a.group.inv(shifts[arc.to]),
                    );
                    groups.entry((arc.from, arc.to)).or_default().push(v);
                }
            }
            for (k, mut vs) in groups {
                vs.sort_unstable();
                match target.get(&k) {
                    Some(t) if *t == vs => {}
                    _ => continue 'outer,
                }
            }
            if rec(a, target, shifts, node + 1, ord) {
                return true;
            }
        }
        false
    }
    rec(a, &target, &mut shifts, 0, ord)
}

/// Builds the reduced Levi graph of `levi` under the color-preserving
/// semi-regular action `iso`. Representatives default to the least vertex of
/// each orbit. The voltage on the arc for an edge orbit is the spec element
/// `h^-1 k` where the edge's endpoints are `h`(line rep) and `k`(point rep).
pub fn reduced_levi_graph(
    levi: &Graph,
    iso: &DeckIso,
    representatives: Option<&[usize]>,
) -> Result<VoltageGraph> {
    let colors = levi
        .colors()
        .ok_or_else(|| Error::InvalidGraph("reduced Levi graph needs a colored graph".into()))?;
    let gamma = PermGroup::from_generators(
        levi.n(),
        iso.perms
            .iter()
            .filter(|p| !p.is_identity())
            .cloned()
            .collect(),
        iso.perms.len(),
    )?;
    if gamma.order() != iso.perms.len() {
        return Err(Error::InvalidGroup(
            "deck iso does not enumerate the group exactly".into(),
        ));
    }
    if !gamma.elements().iter().all(|p| preserves_edges(p, levi)) {
        return Err(Error::NotAutomorphisms);
    }
    if !gamma.is_semi_regular() {
        return Err(Error::NotSemiRegular);
    }
    for p in &iso.perms {
        if colors.iter().enumerate().any(|(v, c)| colors[p.apply(v)] != *c) {
            return Err(Error::InvalidGroup(
                "deck action must preserve the point/line classes".into(),
            ));
        }
    }
    let orbits = gamma.orbits();
    let mut orbit_of = vec![usize::MAX; levi.n()];
    for (i, orb) in orbits.iter().enumerate() {
        for &v in orb {
            orbit_of[v] = i;
        }
    }
    let reps: Vec<usize> = match representatives {
        Some(r) => {
            if r.len() != orbits.len() {
                return Err(Error::InvalidGroup(format!(
                    "need exactly one representative per orbit ({} orbits)",
                    orbits.len()
                )));
            }
            let mut reps = vec![usize::MAX; orbits.len()];
            for &v in r {
                let o = orbit_of
                    .get(v)
                    .copied()
                    .filter(|&o| o != usize::MAX)
                    .ok_or_else(|| Error::InvalidGroup(format!("representative {v} out of range")))?;
                if reps[o] != usize::MAX {
                    return Err(Error::InvalidGroup(format!(
                        "two representatives given for one orbit ({} and {v})",
                        reps[o]
                    )));
                }
                reps[o] = v;
            }
            reps
        }
        None => orbits.iter().map(|o| o[0]).collect(),
    };
    // which spec element carries the representative to each vertex
    let mut elem_of = vec![usize::MAX; levi.n()];
    for (o, &rep) in reps.iter().enumerate() {
        for (gi, p) in iso.perms.iter().enumerate() {
            let v = p.apply(rep);
            if orbit_of[v] != o {
                return Err(Error::InvalidGroup("representative leaves its orbit".into()));
            }
            if elem_of[v] != usize::MAX {
                return Err(Error::NotSemiRegular);
            }
            elem_of[v] = gi;
        }
    }
    let names: Vec<String> = reps.iter().map(|&r| format!("v{r}")).collect();
    let classes: Vec<VertexClass> = reps.iter().map(|&r| colors[r]).collect();
    let mut arcs = Vec::new();
    let mut seen: HashSet<(usize, usize, usize)> = HashSet::new();
    for &(u, v) in levi.edges() {
        let (line, point) = if colors[u] == VertexClass::Line {
            (u, v)
        } else {
            (v, u)
        };
        let h = elem_of[line];
        let k = elem_of[point];
        let voltage = iso.spec.mul(iso.spec.inv(h), k);
        let key = (orbit_of[line], orbit_of[point], voltage);
        if seen.insert(key) {
            arcs.push(Arc {
                from: key.0,
                to: key.1,
                voltage,
            });
        }
    }
    VoltageGraph::new(names, classes, iso.spec.clone(), arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::isomorphic;
    use crate::incidence::gray_incidence;
    use crate::perm::automorphism_group;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn quotient_of_hexagon_by_rotation() {
        let c6 = cycle(6);
        let rot = Perm::from_images(vec![2, 3, 4, 5, 0, 1]).unwrap();
        let gamma = PermGroup::from_generators(6, vec![rot], 100).unwrap();
        let q = quotient(&c6, &gamma).unwrap();
        assert_eq!(q.orbits.len(), 2);
        assert!(!q.has_semi_edges());
        assert_eq!(q.links.len(), 2);
    }

    #[test]
    fn quotient_by_trivial_group_is_the_graph() {
        let c6 = cycle(6);
        let q = quotient(&c6, &PermGroup::trivial(6)).unwrap();
        assert_eq!(q.orbits.len(), 6);
        assert_eq!(q.links.len(), 6);
        assert!(isomorphic(&q.underlying_simple(), &c6, false).is_some());
    }

    #[test]
    fn folded_edge_becomes_semi_edge() {
        let e = Graph::new(2, &[(0, 1)]).unwrap();
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let gamma = PermGroup::from_generators(2, vec![swap], 10).unwrap();
        let q = quotient(&e, &gamma).unwrap();
        assert!(q.has_semi_edges());
    }

    #[test]
    fn non_semi_regular_rejected() {
        let c6 = cycle(6);
        let aut = automorphism_group(&c6, false, 1000).unwrap();
        assert!(matches!(quotient(&c6, &aut), Err(Error::NotSemiRegular)));
    }

    #[test]
    fn lift_over_trivial_group_is_identity() {
        let vg = VoltageGraph::new(
            vec!["L".into(), "P".into()],
            vec![VertexClass::Line, VertexClass::Point],
            FiniteGroupSpec::Cyclic(1),
            vec![Arc {
                from: 0,
                to: 1,
                voltage: 0,
            }],
        )
        .unwrap();
        let g = vg.lift().unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn shift_by_identity_is_noop() {
        let vg = VoltageGraph::new(
            vec!["L".into(), "P".into()],
            vec![VertexClass::Line, VertexClass::Point],
            FiniteGroupSpec::Cyclic(5),
            vec![Arc {
                from: 0,
                to: 1,
                voltage: 3,
            }],
        )
        .unwrap();
        assert_eq!(vg.shift_voltages(0, 0), vg);
    }

    #[test]
    fn spanning_tree_normalization_walkthrough() {
        // a 3-node path over Z3: shifting zeroes the chosen arcs
        let vg = VoltageGraph::new(
            vec!["L".into(), "P".into(), "Q".into()],
            vec![VertexClass::Line, VertexClass::Point, VertexClass::Point],
            FiniteGroupSpec::Cyclic(3),
            vec![
                Arc {
                    from: 0,
                    to: 1,
                    voltage: 2,
                },
                Arc {
                    from: 0,
                    to: 2,
                    voltage: 1,
                },
            ],
        )
        .unwrap();
        let norm = vg.normalize_spanning_tree(&[0, 1]).unwrap();
        assert_eq!(norm.voltage_multiset(), vec![0, 0]);
        // already normalized: unchanged
        assert_eq!(norm.normalize_spanning_tree(&[0, 1]).unwrap(), norm);
        // not a tree
        assert!(vg.normalize_spanning_tree(&[0]).is_err());
    }

    #[test]
    fn dual_rlg_involution_and_voltage_inverse() {
        let vg = VoltageGraph::new(
            vec!["L".into(), "P".into()],
            vec![VertexClass::Line, VertexClass::Point],
            FiniteGroupSpec::Cyclic(9),
            vec![Arc {
                from: 0,
                to: 1,
                voltage: 4,
            }],
        )
        .unwrap();
        let dual = vg.dual_rlg();
        assert_eq!(dual.arcs[0].voltage, 5);
        assert_eq!(dual.dual_rlg(), vg);
    }

    #[test]
    fn gray_z3z3_quotient_is_k33() {
        let levi = gray_incidence().levi_graph();
        let (g1, g2) = super::tests::gray_translations();
        let gamma = PermGroup::from_generators(54, vec![g1, g2], 100).unwrap();
        let q = quotient(&levi, &gamma).unwrap();
        assert_eq!(q.orbits.len(), 6);
        assert!(!q.has_semi_edges());
        let k33: Vec<(usize, usize)> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        let k33 = Graph::new(6, &k33).unwrap();
        assert!(isomorphic(&q.underlying_simple(), &k33, false).is_some());
    }

    /// +111 and +210 as permutations of the canonical Gray Levi vertex order.
    pub(crate) fn gray_translations() -> (Perm, Perm) {
        let gray = gray_incidence();
        let t = |a: u32, b: u32, c: u32| {
            crate::data::gray_translation(&gray, a, b, c)
        };
        (t(1, 1, 1), t(2, 1, 0))
    }

    #[test]
    fn color_mixing_action_drops_the_quotient_coloring() {
        // one-step rotation of the 6-cycle swaps the two sides
        let colors = vec![
            VertexClass::Point,
            VertexClass::Line,
            VertexClass::Point,
            VertexClass::Line,
            VertexClass::Point,
            VertexClass::Line,
        ];
        let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let levi = Graph::with_colors(6, &edges, colors).unwrap();
        let rot = Perm::from_images(vec![1, 2, 3, 4, 5, 0]).unwrap();
        let gamma = PermGroup::from_generators(6, vec![rot], 100).unwrap();
        let q = quotient(&levi, &gamma).unwrap();
        assert!(q.colors.is_none());
        assert_eq!(q.orbits.len(), 1);
    }

    #[test]
    fn semi_edges_block_lifting() {
        let mut vg = VoltageGraph::new(
            vec!["L".into(), "P".into()],
            vec![VertexClass::Line, VertexClass::Point],
            FiniteGroupSpec::Cyclic(2),
            vec![Arc {
                from: 0,
                to: 1,
                voltage: 1,
            }],
        )
        .unwrap();
        vg.semi_edges.push(0);
        assert!(matches!(vg.lift(), Err(Error::InvalidVoltageGraph(_))));
    }

    #[test]
    fn table_group_spec_behaves_like_its_cyclic_model() {
        // Z4 given as an explicit table
        let mul = (0..4)
            .map(|a| (0..4).map(|b| (a + b) % 4).collect())
            .collect();
        let table = FiniteGroupSpec::Table(GroupTable::new(mul).unwrap());
        let cyc = FiniteGroupSpec::Cyclic(4);
        for a in 0..4 {
            assert_eq!(table.inv(a), cyc.inv(a));
            for b in 0..4 {
                assert_eq!(table.mul(a, b), cyc.mul(a, b));
            }
        }
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn rlg_round_trip_on_the_hexagon() {
        // 6-cycle as Levi graph of the triangle: colors alternate
        let colors = vec![
            VertexClass::Point,
            VertexClass::Line,
            VertexClass::Point,
            VertexClass::Line,
            VertexClass::Point,
            VertexClass::Line,
        ];
        let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let levi = Graph::with_colors(6, &edges, colors).unwrap();
        let rot = Perm::from_images(vec![2, 3, 4, 5, 0, 1]).unwrap();
        let iso = DeckIso::cyclic(&rot);
        let rlg = reduced_levi_graph(&levi, &iso, None).unwrap();
        assert_eq!(rlg.names.len(), 2);
        assert_eq!(rlg.arcs.len(), 2);
        let lifted = rlg.lift().unwrap();
        assert!(isomorphic(&lifted, &levi, true).is_some());
    }
}
