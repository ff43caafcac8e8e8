//! Permutations and fully materialized finite permutation groups.
//!
//! Groups here are small (the largest this crate meets has order 1296), so
//! every group is stored as its complete element set: closure, conjugacy and
//! subgroup tests are then plain set operations, with no need for stabilizer
//! chains.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::{HashMap, HashSet};

/// Default cap on materialized group size.
pub const DEFAULT_GROUP_BOUND: usize = 100_000;

/// A permutation of `{0, .., n-1}` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u16>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            img: (0..n as u16).collect(),
        }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image array of length {n} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm {
            img: img.into_iter().map(|x| x as u16).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.img.iter().map(|&x| x as usize)
    }

    /// `self` after `other`: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            img: other.img.iter().map(|&x| self.img[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u16; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u16;
        }
        Perm { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                v = self.apply(v);
                len += 1;
            }
            lens.push(len);
        }
        lens
    }

    /// All cycles have the same length (for a nontrivial permutation this
    /// means fixed-point-free with uniform cycle type).
    pub fn is_semi_regular(&self) -> bool {
        let lens = self.cycle_lengths();
        lens.windows(2).all(|w| w[0] == w[1])
    }
}

/// A finite permutation group with its full element set materialized.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: vec![],
            elements: vec![Perm::identity(degree)],
        }
    }

    /// Closes the generating set, erroring out beyond `bound` elements.
    pub fn from_generators(degree: usize, gens: Vec<Perm>, bound: usize) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidGroup("generator degree mismatch".into()));
            }
        }
        let elements = close(&gens, degree, bound)?;
        Ok(PermGroup {
            degree,
            gens,
            elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Elements in a deterministic (sorted) order, identity first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, big: &PermGroup) -> bool {
        self.degree == big.degree && self.elements.iter().all(|e| big.contains(e))
    }

    /// Every nontrivial element is fixed-point-free with uniform cycle type;
    /// equivalently every orbit has size equal to the group order. The
    /// trivial group counts as semi-regular.
    pub fn is_semi_regular(&self) -> bool {
        self.elements.iter().all(Perm::is_semi_regular)
    }

    /// Orbits of the natural action, each sorted, in order of least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.degree];
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            let mut orb: Vec<usize> = self.elements.iter().map(|g| g.apply(s)).collect();
            orb.sort_unstable();
            orb.dedup();
            for &v in &orb {
                seen[v] = true;
            }
            out.push(orb);
        }
        out
    }

    fn element_key(&self) -> Vec<Perm> {
        self.elements.clone()
    }
}

fn close(gens: &[Perm], degree: usize, bound: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut set: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for g in gens {
                let c = g.compose(e);
                if set.insert(c.clone()) {
                    if set.len() > bound {
                        return Err(Error::MaterializationBound(bound));
                    }
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    let mut elements: Vec<Perm> = set.into_iter().collect();
    elements.sort();
    Ok(elements)
}

/// Enumerates the full (optionally color-preserving) automorphism group of a
/// graph by backtracking along a BFS vertex order; candidate images must stay
/// adjacency- and degree-consistent with the partial map, which on graphs of
/// this size prunes the search to roughly one branch per automorphism.
pub fn automorphism_group(g: &Graph, respect_colors: bool, bound: usize) -> Result<PermGroup> {
    let n = g.n();
    let order = {
        // BFS order so every later vertex (in a component) has a mapped neighbor
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
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
    };
    let mut autos: Vec<Perm> = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_autos(
        g,
        respect_colors,
        &order,
        0,
        &mut map,
        &mut used,
        &mut autos,
        bound,
    )?;
    let gens = autos.clone();
    PermGroup::from_generators(n, gens, bound.max(autos.len()))
}

#[allow(clippy::too_many_arguments)]
fn search_autos(
    g: &Graph,
    respect_colors: bool,
    order: &[usize],
    idx: usize,
    map: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Perm>,
    bound: usize,
) -> Result<()> {
    if idx == order.len() {
        out.push(Perm::from_images(map.to_vec()).expect("complete map is a bijection"));
        if out.len() > bound {
            return Err(Error::MaterializationBound(bound));
        }
        return Ok(());
    }
    let u = order[idx];
    let pool: Vec<usize> = match g.neighbors(u).iter().find(|&&w| map[w] != usize::MAX) {
        Some(&w) => g.neighbors(map[w]).to_vec(),
        None => (0..g.n()).collect(),
    };
    'cand: for v in pool {
        if used[v] || g.degree(u) != g.degree(v) {
            continue;
        }
        if respect_colors {
            if let Some(cs) = g.colors() {
                if cs[u] != cs[v] {
                    continue;
                }
            }
        }
        for &w in g.neighbors(u) {
            if map[w] != usize::MAX && !g.has_edge(v, map[w]) {
                continue 'cand;
            }
        }
        for &x in g.neighbors(v) {
            if used[x] {
                let pre = map.iter().position(|&m| m == x).unwrap();
                if !g.has_edge(u, pre) {
                    continue 'cand;
                }
            }
        }
        map[u] = v;
        used[v] = true;
        search_autos(g, respect_colors, order, idx + 1, map, used, out, bound)?;
        map[u] = usize::MAX;
        used[v] = false;
    }
    Ok(())
}

/// A conjugating element `g` with `g h g^-1 = k` (as element sets), if any.
pub fn are_conjugate(h: &PermGroup, k: &PermGroup, big: &PermGroup) -> Option<Perm> {
    if h.order() != k.order() || h.degree() != k.degree() {
        return None;
    }
    let hgens: Vec<&Perm> = if h.generators().is_empty() {
        h.elements().iter().collect()
    } else {
        h.generators().iter().collect()
    };
    for g in big.elements() {
        let gi = g.inverse();
        if hgens
            .iter()
            .all(|x| k.contains(&g.compose(x).compose(&gi)))
        {
            // same order plus generator containment forces equality
            return Some(g.clone());
        }
    }
    None
}

/// A representative of one conjugacy class of semi-regular subgroups.
#[derive(Clone, Debug)]
pub struct SemiRegularClass {
    pub group: PermGroup,
    pub structure: String,
}

/// One representative per conjugacy class of nontrivial semi-regular
/// subgroups of `big`, sorted by order (then by structure label).
///
/// Candidates are grown from semi-regular elements: cyclic closures first,
/// then repeated extension of each found subgroup by one more semi-regular
/// element. Any closure that acquires a non-semi-regular element is
/// discarded immediately; since every subgroup of a semi-regular group is
/// itself semi-regular, each intermediate closure on the way to a target
/// subgroup survives this pruning, so the sweep reaches every semi-regular
/// subgroup of `big`.
pub fn semi_regular_subgroups_up_to_conjugacy(big: &PermGroup) -> Result<Vec<SemiRegularClass>> {
    let degree = big.degree();
    let sr_elems: Vec<&Perm> = big
        .elements()
        .iter()
        .filter(|p| !p.is_identity() && p.is_semi_regular())
        .collect();

    // closure of a generating set, aborting on any non-semi-regular element
    let sr_close = |gens: &[Perm]| -> Option<Vec<Perm>> {
        let id = Perm::identity(degree);
        let mut set: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for e in &frontier {
                for g in gens {
                    let c = g.compose(e);
                    if !set.contains(&c) {
                        if !c.is_semi_regular() {
                            return None;
                        }
                        set.insert(c.clone());
                        next.push(c);
                    }
                }
            }
            frontier = next;
        }
        let mut v: Vec<Perm> = set.into_iter().collect();
        v.sort();
        Some(v)
    };

    let mut found: HashMap<Vec<Perm>, Vec<Perm>> = HashMap::new(); // elements -> gens
    let mut worklist: Vec<(Vec<Perm>, Vec<Perm>)> = Vec::new();
    for g in &sr_elems {
        if let Some(els) = sr_close(std::slice::from_ref(*g)) {
            if found.insert(els.clone(), vec![(*g).clone()]).is_none() {
                worklist.push((els, vec![(*g).clone()]));
            }
        }
    }
    while let Some((els, gens)) = worklist.pop() {
        for g in &sr_elems {
            if els.binary_search(g).is_ok() {
                continue;
            }
            let mut gens2 = gens.clone();
            gens2.push((*g).clone());
            if let Some(els2) = sr_close(&gens2) {
                if !found.contains_key(&els2) {
                    found.insert(els2.clone(), gens2.clone());
                    worklist.push((els2, gens2));
                }
            }
        }
    }

    // group into conjugacy classes
    let mut groups: Vec<PermGroup> = found
        .into_iter()
        .map(|(elements, gens)| PermGroup {
            degree,
            gens,
            elements,
        })
        .collect();
    groups.sort_by_key(|g| (g.order(), g.element_key()));
    let mut reps: Vec<PermGroup> = Vec::new();
    for g in groups {
        if reps
            .iter()
            .all(|r| are_conjugate(r, &g, big).is_none())
        {
            reps.push(g);
        }
    }
    let mut classes: Vec<SemiRegularClass> = reps
        .into_iter()
        .map(|group| {
            let structure = structure_name(&group);
            SemiRegularClass { group, structure }
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.group.order(), &a.structure).cmp(&(b.group.order(), &b.structure))
    });
    Ok(classes)
}

/// Identifies small groups by order and element-order census: abelian groups
/// get their invariant-factor name (`Z9xZ3`), a few standard non-abelian
/// groups are recognized by census, and anything else is reported as
/// `unknown(order)` rather than mislabeled.
pub fn structure_name(gamma: &PermGroup) -> String {
    let n = gamma.order();
    if n == 1 {
        return "1".into();
    }
    let census = order_census(gamma.elements());
    let abelian = is_abelian(gamma);
    if abelian {
        if let Some(factors) = abelian_invariant_factors(n, &census) {
            return factors
                .iter()
                .rev()
                .map(|d| format!("Z{d}"))
                .collect::<Vec<_>>()
                .join("x");
        }
        return format!("unknown({n})");
    }
    type CensusEntry = (usize, &'static [(usize, usize)], &'static str);
    let named: &[CensusEntry] = &[
        (6, &[(1, 1), (2, 3), (3, 2)], "S3"),
        (8, &[(1, 1), (2, 5), (4, 2)], "D4"),
        (8, &[(1, 1), (2, 1), (4, 6)], "Q8"),
        (10, &[(1, 1), (2, 5), (5, 4)], "D5"),
        (12, &[(1, 1), (2, 3), (3, 8)], "A4"),
        (12, &[(1, 1), (2, 7), (3, 2), (6, 2)], "D6"),
        (12, &[(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)], "Dic3"),
        (27, &[(1, 1), (3, 8), (9, 18)], "Z9:Z3"),
        (27, &[(1, 1), (3, 26)], "He3"),
    ];
    for (order, want, name) in named {
        if *order == n && census_matches(&census, want) {
            return (*name).into();
        }
    }
    format!("unknown({n})")
}

fn order_census(elements: &[Perm]) -> HashMap<usize, usize> {
    let mut census = HashMap::new();
    for e in elements {
        *census.entry(e.order()).or_insert(0) += 1;
    }
    census
}

fn census_matches(census: &HashMap<usize, usize>, want: &[(usize, usize)]) -> bool {
    census.len() == want.len() && want.iter().all(|&(o, c)| census.get(&o) == Some(&c))
}

fn is_abelian(g: &PermGroup) -> bool {
    let gens: Vec<&Perm> = if g.generators().is_empty() {
        g.elements().iter().collect()
    } else {
        g.generators().iter().collect()
    };
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.compose(b) != b.compose(a) {
                return false;
            }
        }
    }
    true
}

/// Invariant factors `d1 | d2 | ... | dk` of the abelian group with the
/// given order and element-order census, found by enumerating divisor chains
/// (fine for order <= a few hundred) and comparing censuses.
fn abelian_invariant_factors(n: usize, census: &HashMap<usize, usize>) -> Option<Vec<usize>> {
    let mut chains = Vec::new();
    divisor_chains(n, 2, &mut vec![], &mut chains);
    chains
        .into_iter()
        .find(|chain| census_of_product(chain) == *census)
}

/// All chains d1 | d2 | ... | dk (each >= 2, ascending divisibility) with
/// product `n`.
fn divisor_chains(n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 1 {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        return;
    }
    for d in min..=n {
        if n.is_multiple_of(d) {
            if let Some(&last) = cur.last() {
                if d % last != 0 {
                    continue;
                }
            }
            cur.push(d);
            divisor_chains(n / d, d, cur, out);
            cur.pop();
        }
    }
}

fn census_of_product(factors: &[usize]) -> HashMap<usize, usize> {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    fn lcm(a: usize, b: usize) -> usize {
        a / gcd(a, b) * b
    }
    let mut census = HashMap::new();
    let total: usize = factors.iter().product();
    let mut idx = vec![0usize; factors.len()];
    for _ in 0..total {
        let ord = idx
            .iter()
            .zip(factors)
            .map(|(&a, &d)| d / gcd(a, d))
            .fold(1, lcm);
        *census.entry(ord).or_insert(0) += 1;
        for k in 0..factors.len() {
            idx[k] += 1;
            if idx[k] < factors[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    census
}

/// Checks that every generator maps edges to edges.
pub fn preserves_edges(g: &Perm, graph: &Graph) -> bool {
    graph
        .edges()
        .iter()
        .all(|&(u, v)| graph.has_edge(g.apply(u), g.apply(v)))
}
