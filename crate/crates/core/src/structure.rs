//! Structural decompositions and counts: components, k-cores, the 2-core
//! with its hanging trees, r-neighborhoods, pair components, short cycle
//! enumeration, bipartiteness census, and intermediate-component mass.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::generator::DegreeSequence;
use crate::graph::MultiGraph;

/// Default cap on exact cycle enumeration length.
pub const DEFAULT_CYCLE_CAP: usize = 12;

/// Connected components, sizes nonincreasing, ties broken by the smallest
/// contained vertex.
#[derive(Debug, Clone)]
pub struct ComponentDecomposition {
    components: Vec<Vec<usize>>,
    component_id: Vec<usize>,
}

impl ComponentDecomposition {
    /// Vertex lists, largest component first; each list sorted ascending.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Index into `components()` for each vertex.
    pub fn component_id(&self) -> &[usize] {
        &self.component_id
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn largest(&self) -> &[usize] {
        &self.components[0]
    }
}

pub fn components(g: &MultiGraph) -> ComponentDecomposition {
    let n = g.n();
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp_of[start] = id;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in g.adjacency(v) {
                let w = w as usize;
                if comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    // Sort by size descending, ties by smallest contained vertex; BFS order
    // already guarantees members[0] is the component minimum.
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&i| (usize::MAX - comps[i].len(), comps[i][0]));
    let mut components = Vec::with_capacity(comps.len());
    let mut component_id = vec![usize::MAX; n];
    for (new_id, &old_id) in order.iter().enumerate() {
        for &v in &comps[old_id] {
            component_id[v] = new_id;
        }
        components.push(std::mem::take(&mut comps[old_id]));
    }
    ComponentDecomposition { components, component_id }
}

/// The k-core: iterated peeling of vertices with multigraph degree < k
/// (a loop contributes 2). Returns the surviving vertices sorted.
pub fn k_core(g: &MultiGraph, k: u32) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<i64> = g.degrees().iter().map(|&d| i64::from(d)).collect();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> =
        (0..n).filter(|&v| deg[v] < i64::from(k)).collect();
    for &v in &queue {
        removed[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.adjacency(v) {
            let w = w as usize;
            if w == v || removed[w] {
                continue;
            }
            deg[w] -= 1;
            if deg[w] < i64::from(k) {
                removed[w] = true;
                queue.push_back(w);
            }
        }
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// One tree hanging off the 2-core: rooted at `root` (depth 1), attached
/// to the core at `attachment` via the single edge (attachment, root).
#[derive(Debug, Clone)]
pub struct HangingTree {
    pub root: usize,
    pub attachment: usize,
    /// Sorted tree vertices (root included).
    pub vertices: Vec<usize>,
    /// Maximum depth, with the root at depth 1.
    pub depth: usize,
}

/// The 2-core of one component plus its hanging trees; core vertices and
/// tree vertex sets partition the component.
#[derive(Debug, Clone)]
pub struct CoreDecomposition {
    pub core_vertices: Vec<usize>,
    pub hanging_trees: Vec<HangingTree>,
}

pub fn two_core_decomposition(g: &MultiGraph, component: &[usize]) -> Result<CoreDecomposition> {
    let n = g.n();
    let mut in_comp = vec![false; n];
    for &v in component {
        in_comp[v] = true;
    }

    // Peel within the component.
    let mut deg: Vec<i64> = g.degrees().iter().map(|&d| i64::from(d)).collect();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = component.iter().copied().filter(|&v| deg[v] < 2).collect();
    for &v in &queue {
        removed[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.adjacency(v) {
            let w = w as usize;
            if w == v || removed[w] || !in_comp[w] {
                continue;
            }
            deg[w] -= 1;
            if deg[w] < 2 {
                removed[w] = true;
                queue.push_back(w);
            }
        }
    }
    let mut in_core = vec![false; n];
    let core_vertices: Vec<usize> = component
        .iter()
        .copied()
        .filter(|&v| !removed[v])
        .inspect(|&v| in_core[v] = true)
        .collect();
    if core_vertices.is_empty() {
        return Err(Error::NoTwoCore);
    }

    // Each off-core fragment is a tree touching the core through exactly
    // one edge; root it one step off the core and record depths from there.
    let mut seen = vec![false; n];
    let mut hanging_trees = Vec::new();
    for &c in &core_vertices {
        for &(w, _) in g.adjacency(c) {
            let w = w as usize;
            if w == c || in_core[w] || seen[w] {
                continue;
            }
            let root = w;
            seen[root] = true;
            let mut vertices = vec![root];
            let mut depth = 1usize;
            let mut frontier = vec![(root, 1usize)];
            while let Some((v, d)) = frontier.pop() {
                for &(x, _) in g.adjacency(v) {
                    let x = x as usize;
                    if x == v || in_core[x] || seen[x] {
                        continue;
                    }
                    seen[x] = true;
                    vertices.push(x);
                    depth = depth.max(d + 1);
                    frontier.push((x, d + 1));
                }
            }
            vertices.sort_unstable();
            hanging_trees.push(HangingTree { root, attachment: c, vertices, depth });
        }
    }
    debug_assert_eq!(
        core_vertices.len() + hanging_trees.iter().map(|t| t.vertices.len()).sum::<usize>(),
        component.len()
    );
    Ok(CoreDecomposition { core_vertices, hanging_trees })
}

/// Iterated closed neighborhood N[U, r]; N[U, 0] = U. Returns a sorted
/// vertex list.
pub fn neighborhood(g: &MultiGraph, seed_set: &[usize], r: usize) -> Vec<usize> {
    let n = g.n();
    let mut inside = vec![false; n];
    let mut current: Vec<usize> = Vec::new();
    for &v in seed_set {
        if !inside[v] {
            inside[v] = true;
            current.push(v);
        }
    }
    for _ in 0..r {
        let mut next = Vec::new();
        for &v in &current {
            for &(w, _) in g.adjacency(v) {
                let w = w as usize;
                if !inside[w] {
                    inside[w] = true;
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        current = next;
    }
    (0..n).filter(|&v| inside[v]).collect()
}

/// Number of pair components: exactly two degree-one vertices joined by
/// one edge.
pub fn count_pairs(g: &MultiGraph) -> u64 {
    components(g)
        .components()
        .iter()
        .filter(|c| c.len() == 2 && c.iter().all(|&v| g.degree(v) == 1))
        .count() as u64
}

/// Exact counts of cycles of each length 1..=K; a length-1 cycle is a
/// loop, a length-2 cycle is an unordered pair of parallel edges, and each
/// longer simple cycle is counted once per distinct edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCensus {
    counts: Vec<u64>,
}

impl CycleCensus {
    /// Count of cycles of length `k` (1-based).
    pub fn count(&self, k: usize) -> u64 {
        self.counts[k - 1]
    }

    /// Counts for lengths 1..=K in order.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

pub fn count_cycles(g: &MultiGraph, max_len: usize) -> Result<CycleCensus> {
    count_cycles_with_cap(g, max_len, DEFAULT_CYCLE_CAP)
}

/// As [`count_cycles`] with an explicit enumeration cap override.
pub fn count_cycles_with_cap(g: &MultiGraph, max_len: usize, cap: usize) -> Result<CycleCensus> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("cycle length bound must be >= 1".into()));
    }
    if max_len > cap {
        return Err(Error::CycleLengthCap { requested: max_len, cap });
    }
    let mut walks = vec![0u64; max_len];
    // Loops are 1-cycles.
    walks[0] = g.loop_count() as u64;
    if max_len >= 2 {
        let mut visited = vec![false; g.n()];
        for s in 0..g.n() {
            visited[s] = true;
            // Ordered closed walks from s through vertices > s, counted per
            // orientation; halved below.
            for &(w, eid) in g.adjacency(s) {
                let w = w as usize;
                if w <= s {
                    continue;
                }
                visited[w] = true;
                walk_count(g, s, w, eid, 1, max_len, &mut visited, &mut walks);
                visited[w] = false;
            }
            visited[s] = false;
        }
    }
    let counts = walks
        .iter()
        .enumerate()
        .map(|(i, &c)| if i == 0 { c } else { c / 2 })
        .collect();
    Ok(CycleCensus { counts })
}

fn walk_count(
    g: &MultiGraph,
    start: usize,
    v: usize,
    first_edge: u32,
    depth: usize,
    max_len: usize,
    visited: &mut [bool],
    walks: &mut [u64],
) {
    for &(w, eid) in g.adjacency(v) {
        let w = w as usize;
        if w == start && (depth > 1 || eid != first_edge) {
            walks[depth] += 1;
        }
    }
    if depth + 1 >= max_len {
        return;
    }
    for &(w, _) in g.adjacency(v) {
        let w = w as usize;
        if w <= start || w == v || visited[w] {
            continue;
        }
        visited[w] = true;
        walk_count(g, start, w, first_edge, depth + 1, max_len, visited, walks);
        visited[w] = false;
    }
}

/// Bipartiteness and cycle-structure summary of one connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddCycleCensus {
    pub bipartite: bool,
    /// edges - vertices + 1 for the component.
    pub excess: i64,
    pub unicyclic: bool,
    pub odd_unicycle: bool,
}

pub fn odd_cycle_census(g: &MultiGraph, component: &[usize]) -> OddCycleCensus {
    let mut color: BTreeMap<usize, u8> = BTreeMap::new();
    let mut bipartite = true;
    let start = component[0];
    color.insert(start, 0);
    let mut queue = VecDeque::from([start]);
    'bfs: while let Some(v) = queue.pop_front() {
        let cv = color[&v];
        for &(w, _) in g.adjacency(v) {
            let w = w as usize;
            if w == v {
                // A loop is an odd 1-cycle.
                bipartite = false;
                break 'bfs;
            }
            match color.get(&w) {
                None => {
                    color.insert(w, 1 - cv);
                    queue.push_back(w);
                }
                Some(&cw) if cw == cv => {
                    bipartite = false;
                    break 'bfs;
                }
                _ => {}
            }
        }
    }
    let degree_sum: u64 = component.iter().map(|&v| u64::from(g.degree(v))).sum();
    let edges = (degree_sum / 2) as i64;
    let excess = edges - component.len() as i64 + 1;
    let unicyclic = excess == 1;
    // With a single cycle, odd length and non-bipartiteness coincide.
    OddCycleCensus { bipartite, excess, unicyclic, odd_unicycle: unicyclic && !bipartite }
}

/// Total vertices in non-largest components of size at least `threshold`.
pub fn intermediate_mass(cd: &ComponentDecomposition, threshold: usize) -> u64 {
    cd.components()
        .iter()
        .skip(1)
        .map(Vec::len)
        .filter(|&s| s >= threshold)
        .map(|s| s as u64)
        .sum()
}

/// Fraction |N[core, r]| / n where the core is the 2-core of the largest
/// component. Errors when the largest component is acyclic.
pub fn measure_tc_r(g: &MultiGraph, r: usize) -> Result<f64> {
    let cd = components(g);
    let core = two_core_decomposition(g, cd.largest())?;
    let nb = neighborhood(g, &core.core_vertices, r);
    Ok(nb.len() as f64 / g.n() as f64)
}

/// Histogram of induced-core degrees: for each j, the number of 2-core
/// vertices with exactly j core neighbors (a core loop contributes 2).
pub fn core_degree_histogram(cd: &CoreDecomposition, g: &MultiGraph) -> BTreeMap<u32, u64> {
    let mut in_core = vec![false; g.n()];
    for &v in &cd.core_vertices {
        in_core[v] = true;
    }
    let mut hist = BTreeMap::new();
    for &v in &cd.core_vertices {
        let deg = g.adjacency(v).iter().filter(|&&(w, _)| in_core[w as usize]).count() as u32;
        *hist.entry(deg).or_insert(0) += 1;
    }
    hist
}

/// Maximum degree sanity check: `ok` iff d_max^2 <= n.
pub fn max_degree_check(seq: &DegreeSequence) -> (u32, bool) {
    let d_max = seq.degrees().iter().copied().max().unwrap_or(0);
    let ok = u64::from(d_max) * u64::from(d_max) <= seq.n() as u64;
    (d_max, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> MultiGraph {
        MultiGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn cycle(n: usize) -> MultiGraph {
        let edges: Vec<(u32, u32)> =
            (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        graph(n, &edges)
    }

    #[test]
    fn components_edgeless_and_path() {
        let cd = components(&graph(3, &[]));
        assert_eq!(cd.sizes(), vec![1, 1, 1]);
        assert_eq!(cd.components()[0], vec![0]); // tie broken by min vertex

        let cd = components(&graph(3, &[(0, 1), (1, 2)]));
        assert_eq!(cd.sizes(), vec![3]);
        assert_eq!(cd.largest(), &[0, 1, 2]);
    }

    #[test]
    fn components_cover_all_vertices() {
        let g = graph(7, &[(0, 1), (2, 3), (3, 4), (5, 5)]);
        let cd = components(&g);
        assert_eq!(cd.sizes().iter().sum::<usize>(), 7);
        assert_eq!(cd.sizes(), vec![3, 2, 1, 1]);
        for (v, &id) in cd.component_id().iter().enumerate() {
            assert!(cd.components()[id].contains(&v));
        }
    }

    #[test]
    fn k_core_basics() {
        // Any tree has empty 2-core.
        assert!(k_core(&graph(4, &[(0, 1), (1, 2), (1, 3)]), 2).is_empty());
        // A cycle is its own 2-core.
        assert_eq!(k_core(&cycle(5), 2), vec![0, 1, 2, 3, 4]);
        // Triangle with a pendant path keeps only the triangle.
        let g = graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        assert_eq!(k_core(&g, 2), vec![0, 1, 2]);
        // A loop keeps its vertex in the 2-core.
        assert_eq!(k_core(&graph(2, &[(0, 0), (0, 1)]), 2), vec![0]);
    }

    #[test]
    fn k_core_nesting() {
        let g = graph(
            6,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3), (3, 4), (4, 5)],
        );
        let mut prev = k_core(&g, 2);
        for k in 3..5 {
            let next = k_core(&g, k);
            assert!(next.iter().all(|v| prev.contains(v)));
            prev = next;
        }
    }

    #[test]
    fn two_core_decomposition_examples() {
        // Triangle with pendant path of 2: one tree, size 2, depth 2.
        let g = graph(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)]);
        let cd = components(&g);
        let core = two_core_decomposition(&g, cd.largest()).unwrap();
        assert_eq!(core.core_vertices, vec![0, 1, 2]);
        assert_eq!(core.hanging_trees.len(), 1);
        let t = &core.hanging_trees[0];
        assert_eq!((t.root, t.attachment), (3, 0));
        assert_eq!(t.vertices, vec![3, 4]);
        assert_eq!(t.depth, 2);

        // Pure cycle: no trees.
        let g = cycle(6);
        let cd = components(&g);
        let core = two_core_decomposition(&g, cd.largest()).unwrap();
        assert!(core.hanging_trees.is_empty());
        assert_eq!(core.core_vertices.len(), 6);

        // Acyclic component errors.
        let g = graph(3, &[(0, 1), (1, 2)]);
        let cd = components(&g);
        assert!(matches!(two_core_decomposition(&g, cd.largest()), Err(Error::NoTwoCore)));
    }

    #[test]
    fn two_core_partitions_component() {
        let g = graph(
            9,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (3, 5), (1, 6), (6, 7), (7, 8)],
        );
        let cd = components(&g);
        let core = two_core_decomposition(&g, cd.largest()).unwrap();
        let tree_total: usize = core.hanging_trees.iter().map(|t| t.vertices.len()).sum();
        assert_eq!(core.core_vertices.len() + tree_total, cd.largest().len());
    }

    #[test]
    fn neighborhood_examples() {
        let path = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(neighborhood(&path, &[1], 0), vec![1]);
        assert_eq!(neighborhood(&path, &[1], 1), vec![0, 1, 2]);

        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(neighborhood(&star, &[0], 1), vec![0, 1, 2, 3, 4]);
        assert_eq!(neighborhood(&star, &[0], 2), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn neighborhood_monotone_in_r() {
        let g = graph(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (5, 6)]);
        let mut prev = neighborhood(&g, &[0], 0);
        for r in 1..6 {
            let cur = neighborhood(&g, &[0], r);
            assert!(prev.iter().all(|v| cur.contains(v)));
            prev = cur;
        }
    }

    #[test]
    fn pair_counting() {
        assert_eq!(count_pairs(&graph(2, &[(0, 1)])), 1);
        assert_eq!(count_pairs(&graph(3, &[(0, 1), (1, 2)])), 0);
        // A double-edge size-2 component is not a pair.
        assert_eq!(count_pairs(&graph(4, &[(0, 1), (2, 3), (2, 3)])), 1);
    }

    #[test]
    fn cycle_census_small_cases() {
        let c = count_cycles(&graph(1, &[(0, 0)]), 3).unwrap();
        assert_eq!(c.counts(), &[1, 0, 0]);

        let c = count_cycles(&graph(2, &[(0, 1), (0, 1)]), 3).unwrap();
        assert_eq!(c.counts(), &[0, 1, 0]);

        // Triple edge: C(3,2) = 3 two-cycles.
        let c = count_cycles(&graph(2, &[(0, 1), (0, 1), (0, 1)]), 2).unwrap();
        assert_eq!(c.counts(), &[0, 3]);

        // K4: 4 triangles, 3 four-cycles.
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let c = count_cycles(&k4, 4).unwrap();
        assert_eq!(c.counts(), &[0, 0, 4, 3]);

        assert!(matches!(
            count_cycles(&k4, 13),
            Err(Error::CycleLengthCap { requested: 13, cap: 12 })
        ));
        assert_eq!(count_cycles_with_cap(&k4, 13, 16).unwrap().count(4), 3);
    }

    #[test]
    fn odd_cycle_census_cases() {
        let tree = graph(3, &[(0, 1), (1, 2)]);
        let cd = components(&tree);
        assert_eq!(
            odd_cycle_census(&tree, cd.largest()),
            OddCycleCensus { bipartite: true, excess: 0, unicyclic: false, odd_unicycle: false }
        );

        let c5 = cycle(5);
        let cd = components(&c5);
        assert_eq!(
            odd_cycle_census(&c5, cd.largest()),
            OddCycleCensus { bipartite: false, excess: 1, unicyclic: true, odd_unicycle: true }
        );

        let c6 = cycle(6);
        let cd = components(&c6);
        assert_eq!(
            odd_cycle_census(&c6, cd.largest()),
            OddCycleCensus { bipartite: true, excess: 1, unicyclic: true, odd_unicycle: false }
        );

        // Loop plus pendant edge: odd unicyclic.
        let g = graph(2, &[(0, 0), (0, 1)]);
        let cd = components(&g);
        let census = odd_cycle_census(&g, cd.largest());
        assert!(census.odd_unicycle && !census.bipartite);

        // Double edge: bipartite unicyclic.
        let g = graph(2, &[(0, 1), (0, 1)]);
        let cd = components(&g);
        let census = odd_cycle_census(&g, cd.largest());
        assert!(census.bipartite && census.unicyclic && !census.odd_unicycle);
    }

    #[test]
    fn intermediate_mass_definition() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(intermediate_mass(&components(&g), 1), 0);

        // Sizes (10, 5, 3): with threshold 4 only the 5 counts.
        let mut edges = Vec::new();
        for i in 0..9u32 {
            edges.push((i, i + 1));
        }
        for i in 10..14u32 {
            edges.push((i, i + 1));
        }
        edges.push((15, 16));
        edges.push((16, 17));
        let g = graph(18, &edges);
        let cd = components(&g);
        assert_eq!(cd.sizes(), vec![10, 5, 3]);
        assert_eq!(intermediate_mass(&cd, 4), 5);
        assert_eq!(intermediate_mass(&cd, 1), 8);
        assert_eq!(intermediate_mass(&cd, 6), 0);
    }

    #[test]
    fn tc_r_measurement() {
        // Triangle with a pendant path of length 3 plus two isolated vertices.
        let g = graph(
            8,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5)],
        );
        assert!((measure_tc_r(&g, 0).unwrap() - 3.0 / 8.0).abs() < 1e-12);
        assert!((measure_tc_r(&g, 1).unwrap() - 4.0 / 8.0).abs() < 1e-12);
        assert!((measure_tc_r(&g, 5).unwrap() - 6.0 / 8.0).abs() < 1e-12);

        let forest = graph(3, &[(0, 1)]);
        assert!(measure_tc_r(&forest, 1).is_err());

        let mut prev = 0.0;
        for r in 0..5 {
            let f = measure_tc_r(&g, r).unwrap();
            assert!(f >= prev);
            prev = f;
        }
    }

    #[test]
    fn core_degree_histograms() {
        let c5 = cycle(5);
        let cd = components(&c5);
        let core = two_core_decomposition(&c5, cd.largest()).unwrap();
        let hist = core_degree_histogram(&core, &c5);
        assert_eq!(hist.get(&2), Some(&5));

        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let cd = components(&k4);
        let core = two_core_decomposition(&k4, cd.largest()).unwrap();
        let hist = core_degree_histogram(&core, &k4);
        assert_eq!(hist.get(&3), Some(&4));
    }

    #[test]
    fn max_degree_check_examples() {
        let (d, ok) = max_degree_check(&DegreeSequence::new(vec![2, 2, 2]));
        assert_eq!((d, ok), (2, false));
        let (d, ok) = max_degree_check(&DegreeSequence::new(vec![3; 100]));
        assert_eq!((d, ok), (3, true));
    }
}
