//! Undirected simple graphs with an optional point/line 2-coloring, plus the
//! small-graph algorithms the rest of the crate leans on: girth by repeated
//! BFS and isomorphism by backtracking over a BFS ordering. Instances here
//! stay tiny (at most a few hundred vertices), so nothing cleverer is needed.

use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Vertex class of a Levi-like graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Point,
    Line,
}

impl VertexClass {
    pub fn swapped(self) -> Self {
        match self {
            VertexClass::Point => VertexClass::Line,
            VertexClass::Line => VertexClass::Point,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            VertexClass::Point => "P",
            VertexClass::Line => "L",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    colors: Option<Vec<VertexClass>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            let e = (u.min(v), u.max(v));
            list.push(e);
        }
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
            colors: None,
        })
    }

    pub fn with_colors(n: usize, edges: &[(usize, usize)], colors: Vec<VertexClass>) -> Result<Self> {
        if colors.len() != n {
            return Err(Error::InvalidGraph("color vector length mismatch".into()));
        }
        let mut g = Graph::new(n, edges)?;
        for &(u, v) in &g.edges {
            if colors[u] == colors[v] {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) joins two {}-class vertices",
                    colors[u].token()
                )));
            }
        }
        g.colors = Some(colors);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn colors(&self) -> Option<&[VertexClass]> {
        self.colors.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Same graph with the two vertex classes exchanged.
    pub fn color_swapped(&self) -> Graph {
        let mut g = self.clone();
        g.colors = g
            .colors
            .map(|cs| cs.into_iter().map(VertexClass::swapped).collect());
        g
    }

    pub fn drop_colors(&self) -> Graph {
        let mut g = self.clone();
        g.colors = None;
        g
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle; `None` for forests.
    ///
    /// BFS from every vertex; the first non-tree edge seen from the root's
    /// tree closes a shortest cycle through that root.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // cycles through deeper vertices can only be longer
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }
}

/// Searches for an isomorphism from `g` onto `h`, color-respecting when
/// requested; the returned vector maps `g`-vertices to `h`-vertices.
pub fn isomorphic(g: &Graph, h: &Graph, respect_colors: bool) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edges().len() != h.edges().len() {
        return None;
    }
    let mut gd: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut hd: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return None;
    }
    if respect_colors {
        match (g.colors(), h.colors()) {
            (Some(gc), Some(hc)) => {
                let count = |cs: &[VertexClass]| {
                    cs.iter().filter(|c| **c == VertexClass::Point).count()
                };
                if count(gc) != count(hc) {
                    return None;
                }
            }
            (None, None) => {}
            _ => return None,
        }
    }
    let order = bfs_order(g);
    let mut map = vec![usize::MAX; g.n()];
    let mut used = vec![false; h.n()];
    if assign(g, h, respect_colors, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Checks that `map` is a valid (optionally color-respecting) isomorphism.
pub fn verify_isomorphism(g: &Graph, h: &Graph, map: &[usize], respect_colors: bool) -> bool {
    if map.len() != g.n() || g.edges().len() != h.edges().len() {
        return false;
    }
    let mut seen = vec![false; h.n()];
    for &m in map {
        if m >= h.n() || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    if respect_colors {
        if let (Some(gc), Some(hc)) = (g.colors(), h.colors()) {
            if (0..g.n()).any(|v| gc[v] != hc[map[v]]) {
                return false;
            }
        }
    }
    g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]))
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

fn assign(
    g: &Graph,
    h: &Graph,
    respect_colors: bool,
    order: &[usize],
    idx: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if idx == order.len() {
        return true;
    }
    let u = order[idx];
    // candidate pool: neighbors of an already-mapped neighbor when possible
    let pool: Vec<usize> = match g.neighbors(u).iter().find(|&&w| map[w] != usize::MAX) {
        Some(&w) => h.neighbors(map[w]).to_vec(),
        None => (0..h.n()).collect(),
    };
    'cand: for v in pool {
        if used[v] || g.degree(u) != h.degree(v) {
            continue;
        }
        if respect_colors {
            if let (Some(gc), Some(hc)) = (g.colors(), h.colors()) {
                if gc[u] != hc[v] {
                    continue;
                }
            }
        }
        for &w in g.neighbors(u) {
            if map[w] != usize::MAX && !h.has_edge(v, map[w]) {
                continue 'cand;
            }
        }
        // mapped h-neighbors of v must pull back to g-neighbors of u
        for &x in h.neighbors(v) {
            if used[x] {
                let pre = map.iter().position(|&m| m == x).unwrap();
                if !g.has_edge(u, pre) {
                    continue 'cand;
                }
            }
        }
        map[u] = v;
        used[v] = true;
        if assign(g, h, respect_colors, order, idx + 1, map, used) {
            return true;
        }
        map[u] = usize::MAX;
        used[v] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn girth_cases() {
        assert_eq!(cycle(6).girth(), Some(6));
        assert_eq!(Graph::new(2, &[(0, 1)]).unwrap().girth(), None);
        assert_eq!(cycle(3).girth(), Some(3));
        let k33_edges: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (3..6).map(move |j| (i, j)))
            .collect();
        assert_eq!(Graph::new(6, &k33_edges).unwrap().girth(), Some(4));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(3, &[(0, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 5)]).is_err());
    }

    #[test]
    fn iso_self_and_degree_mismatch() {
        let c6 = cycle(6);
        let id = isomorphic(&c6, &c6, false).unwrap();
        assert!(verify_isomorphism(&c6, &c6, &id, false));
        let k33_edges: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (3..6).map(move |j| (i, j)))
            .collect();
        let k33 = Graph::new(6, &k33_edges).unwrap();
        assert!(isomorphic(&k33, &c6, false).is_none());
    }

    #[test]
    fn iso_relabeled_cycle() {
        let c6 = cycle(6);
        let other = Graph::new(6, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 5), (5, 0)]).unwrap();
        let m = isomorphic(&c6, &other, false).unwrap();
        assert!(verify_isomorphism(&c6, &other, &m, false));
    }

    #[test]
    fn bipartite_check() {
        assert!(cycle(6).is_bipartite());
        assert!(!cycle(5).is_bipartite());
    }

    #[test]
    fn colored_construction_rejects_monochrome_edge() {
        let cs = vec![VertexClass::Point, VertexClass::Point];
        assert!(Graph::with_colors(2, &[(0, 1)], cs).is_err());
    }
}
