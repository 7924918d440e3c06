//! Bipartite graph and flow engines.
//!
//! Everything here is exact and integral: maximum matching with a vertex
//! cover certificate, the Dulmage-Mendelsohn matching merge, proper edge
//! coloring of bipartite multigraphs with the maximum-degree number of
//! colors, and shortest-augmenting-path maximum flow with a minimum cut.

/// A bipartite graph on parts `A` (indices `0..size_a`) and `B`
/// (`0..size_b`). Edges are instances: the same pair may appear several
/// times, which the edge-coloring engine treats as parallel edges.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    pub size_a: usize,
    pub size_b: usize,
    pub edges: Vec<(usize, usize)>,
}

/// A matching: pairwise vertex-disjoint `(a, b)` pairs.
pub type Matching = Vec<(usize, usize)>;

/// A vertex cover split into its `A`-side and `B`-side vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCover {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl VertexCover {
    pub fn len(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }
}

impl BipartiteGraph {
    pub fn new(size_a: usize, size_b: usize) -> Self {
        BipartiteGraph {
            size_a,
            size_b,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a < self.size_a && b < self.size_b);
        self.edges.push((a, b));
    }

    /// Adjacency lists for the `A` side, parallel edges collapsed,
    /// neighbours in first-insertion order.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.size_a];
        for &(a, b) in &self.edges {
            if !adj[a].contains(&b) {
                adj[a].push(b);
            }
        }
        adj
    }

    /// A maximum-cardinality matching, found by alternating-path
    /// augmentation from each `A` vertex in ascending order.
    pub fn max_matching(&self) -> Matching {
        let adj = self.adjacency();
        let match_b = kuhn_matching(&adj, self.size_b);
        let mut matching: Matching = match_b
            .iter()
            .enumerate()
            .filter_map(|(b, a)| a.map(|a| (a, b)))
            .collect();
        matching.sort_unstable();
        matching
    }

    /// A minimum vertex cover, built from a maximum matching by alternating
    /// reachability from the unmatched `A` vertices. The size always equals
    /// the maximum matching size.
    pub fn min_vertex_cover(&self) -> VertexCover {
        let matching = self.max_matching();
        let adj = self.adjacency();
        let mut match_a: Vec<Option<usize>> = vec![None; self.size_a];
        let mut match_b: Vec<Option<usize>> = vec![None; self.size_b];
        for &(a, b) in &matching {
            match_a[a] = Some(b);
            match_b[b] = Some(a);
        }
        // Alternating BFS: unmatched A-vertices, non-matching edges to B,
        // matching edges back to A.
        let mut reach_a = vec![false; self.size_a];
        let mut reach_b = vec![false; self.size_b];
        let mut queue: Vec<usize> = (0..self.size_a).filter(|&a| match_a[a].is_none()).collect();
        for &a in &queue {
            reach_a[a] = true;
        }
        while let Some(a) = queue.pop() {
            for &b in &adj[a] {
                if match_a[a] == Some(b) || reach_b[b] {
                    continue;
                }
                reach_b[b] = true;
                if let Some(a2) = match_b[b] {
                    if !reach_a[a2] {
                        reach_a[a2] = true;
                        queue.push(a2);
                    }
                }
            }
        }
        let cover = VertexCover {
            a: (0..self.size_a).filter(|&a| !reach_a[a]).collect(),
            b: (0..self.size_b).filter(|&b| reach_b[b]).collect(),
        };
        assert_eq!(cover.len(), matching.len(), "cover size must equal matching size");
        cover
    }

    /// Maximum degree over both sides, counting edge multiplicity.
    pub fn max_degree(&self) -> usize {
        let mut deg_a = vec![0usize; self.size_a];
        let mut deg_b = vec![0usize; self.size_b];
        for &(a, b) in &self.edges {
            deg_a[a] += 1;
            deg_b[b] += 1;
        }
        deg_a.into_iter().chain(deg_b).max().unwrap_or(0)
    }

    /// A proper edge coloring with colors `0..max_degree()`: no two edge
    /// instances sharing a vertex get the same color. Returns one color per
    /// edge instance, in input order.
    ///
    /// The graph is padded to a `max_degree()`-regular bipartite multigraph
    /// with dummy vertices and edges; each color class is a perfect matching
    /// of the padded graph, extracted and removed in turn. Dummy edges are
    /// discarded from the answer.
    pub fn edge_color(&self) -> Vec<usize> {
        let delta = self.max_degree();
        if delta == 0 {
            return Vec::new();
        }
        let n = self.size_a.max(self.size_b);

        // Multiplicity per vertex pair, plus the queue of instance indices so
        // parallel input edges each receive their own color.
        let mut mult = vec![vec![0usize; n]; n];
        let mut instances: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
        let mut deg_a = vec![0usize; n];
        let mut deg_b = vec![0usize; n];
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            mult[a][b] += 1;
            instances[a][b].push(idx);
            deg_a[a] += 1;
            deg_b[b] += 1;
        }
        // Pad to delta-regularity with dummy parallel edges between deficient
        // vertices; total deficiency is equal on both sides.
        let mut a_cursor = 0;
        for b in 0..n {
            while deg_b[b] < delta {
                while deg_a[a_cursor] >= delta {
                    a_cursor += 1;
                }
                let add = (delta - deg_b[b]).min(delta - deg_a[a_cursor]);
                mult[a_cursor][b] += add;
                deg_a[a_cursor] += add;
                deg_b[b] += add;
            }
        }
        debug_assert!(deg_a.iter().all(|&d| d == delta));

        let mut colors = vec![usize::MAX; self.edges.len()];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for color in 0..delta {
            // Perfect matching on the support of the remaining multigraph; a
            // regular bipartite multigraph always has one.
            for (a, list) in adj.iter_mut().enumerate() {
                list.clear();
                list.extend((0..n).filter(|&b| mult[a][b] > 0));
            }
            let match_b = kuhn_matching(&adj, n);
            for b in 0..n {
                let a = match_b[b].expect("regular multigraph must have a perfect matching");
                mult[a][b] -= 1;
                if let Some(idx) = instances[a][b].pop() {
                    colors[idx] = color;
                }
            }
        }
        debug_assert!(colors.iter().all(|&c| c != usize::MAX));
        colors
    }
}

/// Kuhn's algorithm with a greedy warm start: `match_b[b]` ends up holding
/// the `A` partner of each matched `b`.
fn kuhn_matching(adj: &[Vec<usize>], size_b: usize) -> Vec<Option<usize>> {
    let size_a = adj.len();
    let mut match_b: Vec<Option<usize>> = vec![None; size_b];
    let mut matched_a = vec![false; size_a];
    for (a, neighbours) in adj.iter().enumerate() {
        for &b in neighbours {
            if match_b[b].is_none() {
                match_b[b] = Some(a);
                matched_a[a] = true;
                break;
            }
        }
    }
    let mut visited = vec![false; size_b];
    for (a, &matched) in matched_a.iter().enumerate() {
        if matched {
            continue;
        }
        visited.fill(false);
        augment(adj, a, &mut visited, &mut match_b);
    }
    match_b
}

/// Tries to find an augmenting path from `a`; `match_b[b]` holds the current
/// partner of `b`.
fn augment(
    adj: &[Vec<usize>],
    a: usize,
    visited: &mut [bool],
    match_b: &mut [Option<usize>],
) -> bool {
    for &b in &adj[a] {
        if visited[b] {
            continue;
        }
        visited[b] = true;
        let free = match match_b[b] {
            None => true,
            Some(a2) => augment(adj, a2, visited, match_b),
        };
        if free {
            match_b[b] = Some(a);
            return true;
        }
    }
    false
}

/// Merges two matchings of a common bipartite graph: the result is contained
/// in their union, covers every `A` vertex covered by `m1` and every `B`
/// vertex covered by `m2`.
///
/// The union decomposes into paths and cycles alternating between `m1` and
/// `m2` edges; in each component one of the two edge classes meets both
/// coverage requirements, with ties broken toward `m1`.
pub fn dm_merge(m1: &[(usize, usize)], m2: &[(usize, usize)]) -> Matching {
    let size_a = m1
        .iter()
        .chain(m2)
        .map(|&(a, _)| a + 1)
        .max()
        .unwrap_or(0);
    let size_b = m1
        .iter()
        .chain(m2)
        .map(|&(_, b)| b + 1)
        .max()
        .unwrap_or(0);
    let mut m1_of_a: Vec<Option<usize>> = vec![None; size_a];
    let mut m1_of_b: Vec<Option<usize>> = vec![None; size_b];
    let mut m2_of_a: Vec<Option<usize>> = vec![None; size_a];
    let mut m2_of_b: Vec<Option<usize>> = vec![None; size_b];
    for &(a, b) in m1 {
        debug_assert!(m1_of_a[a].is_none() && m1_of_b[b].is_none(), "m1 is a matching");
        m1_of_a[a] = Some(b);
        m1_of_b[b] = Some(a);
    }
    for &(a, b) in m2 {
        debug_assert!(m2_of_a[a].is_none() && m2_of_b[b].is_none(), "m2 is a matching");
        m2_of_a[a] = Some(b);
        m2_of_b[b] = Some(a);
    }

    let mut merged: Matching = Vec::new();
    let mut seen_a = vec![false; size_a];
    for start in 0..size_a {
        if seen_a[start] || (m1_of_a[start].is_none() && m2_of_a[start].is_none()) {
            continue;
        }
        // Walk the whole component containing `start`.
        let mut comp_a = Vec::new();
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            if seen_a[a] {
                continue;
            }
            seen_a[a] = true;
            comp_a.push(a);
            for b in [m1_of_a[a], m2_of_a[a]].into_iter().flatten() {
                for a2 in [m1_of_b[b], m2_of_b[b]].into_iter().flatten() {
                    if !seen_a[a2] {
                        stack.push(a2);
                    }
                }
            }
        }
        comp_a.sort_unstable();
        let comp_m1: Vec<(usize, usize)> = comp_a
            .iter()
            .filter_map(|&a| m1_of_a[a].map(|b| (a, b)))
            .collect();
        let comp_m2: Vec<(usize, usize)> = comp_a
            .iter()
            .filter_map(|&a| m2_of_a[a].map(|b| (a, b)))
            .collect();
        // Required coverage inside this component.
        let need_a: Vec<usize> = comp_m1.iter().map(|&(a, _)| a).collect();
        let need_b: Vec<usize> = comp_m2.iter().map(|&(_, b)| b).collect();
        let covers = |m: &[(usize, usize)]| {
            need_a.iter().all(|&a| m.iter().any(|&(x, _)| x == a))
                && need_b.iter().all(|&b| m.iter().any(|&(_, y)| y == b))
        };
        if covers(&comp_m1) {
            merged.extend(comp_m1);
        } else if covers(&comp_m2) {
            merged.extend(comp_m2);
        } else {
            unreachable!("one side of an alternating component always covers");
        }
    }
    merged.sort_unstable();
    merged
}

/// A directed network with integral capacities and distinguished source and
/// sink vertices.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    pub num_vertices: usize,
    pub source: usize,
    pub sink: usize,
    edges: Vec<(usize, usize, u64)>,
}

/// An integral flow: one value per network edge, in insertion order.
#[derive(Clone, Debug)]
pub struct Flow {
    pub edge_flow: Vec<u64>,
    pub value: u64,
}

impl FlowNetwork {
    pub fn new(num_vertices: usize, source: usize, sink: usize) -> Self {
        assert!(source < num_vertices && sink < num_vertices && source != sink);
        FlowNetwork {
            num_vertices,
            source,
            sink,
            edges: Vec::new(),
        }
    }

    /// Adds a directed edge and returns its index.
    ///
    /// Panics if it would give the source an in-edge or the sink an out-edge.
    pub fn add_edge(&mut self, from: usize, to: usize, capacity: u64) -> usize {
        assert!(from < self.num_vertices && to < self.num_vertices);
        assert!(to != self.source, "source must keep zero in-degree");
        assert!(from != self.sink, "sink must keep zero out-degree");
        self.edges.push((from, to, capacity));
        self.edges.len() - 1
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    /// An integral maximum flow, by shortest augmenting paths in the
    /// residual graph (breadth-first), which terminates on integral
    /// capacities and preserves integrality.
    pub fn max_flow_integral(&self) -> Flow {
        let mut residual = Residual::build(self);
        while let Some(path) = residual.shortest_path() {
            residual.push_along(&path);
        }
        residual.into_flow(self)
    }

    /// The source side of a minimum cut induced by `flow`: vertices reachable
    /// from the source in the residual graph. The cut edges (from the source
    /// side to its complement) have total capacity equal to `flow.value` when
    /// `flow` is maximum.
    pub fn min_cut_source_side(&self, flow: &Flow) -> Vec<bool> {
        let mut residual = Residual::build(self);
        for (i, &f) in flow.edge_flow.iter().enumerate() {
            residual.apply(i, f);
        }
        residual.reachable_from_source()
    }
}

/// Residual representation: each network edge has a forward and a backward
/// arc.
struct Residual {
    adj: Vec<Vec<usize>>,
    arcs: Vec<ResidualArc>,
    source: usize,
    sink: usize,
}

struct ResidualArc {
    to: usize,
    remaining: u64,
    /// Index of the paired reverse arc.
    twin: usize,
}

impl Residual {
    fn build(net: &FlowNetwork) -> Residual {
        let mut residual = Residual {
            adj: vec![Vec::new(); net.num_vertices],
            arcs: Vec::with_capacity(net.edges.len() * 2),
            source: net.source,
            sink: net.sink,
        };
        for &(from, to, cap) in &net.edges {
            let fwd = residual.arcs.len();
            residual.arcs.push(ResidualArc {
                to,
                remaining: cap,
                twin: fwd + 1,
            });
            residual.arcs.push(ResidualArc {
                to: from,
                remaining: 0,
                twin: fwd,
            });
            residual.adj[from].push(fwd);
            residual.adj[to].push(fwd + 1);
        }
        residual
    }

    fn apply(&mut self, edge_index: usize, flow: u64) {
        let fwd = edge_index * 2;
        self.arcs[fwd].remaining -= flow;
        self.arcs[fwd + 1].remaining += flow;
    }

    /// Breadth-first search for a shortest source-to-sink path with spare
    /// residual capacity, returned as arc indices.
    fn shortest_path(&self) -> Option<Vec<usize>> {
        let mut parent_arc: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut queue = std::collections::VecDeque::from([self.source]);
        let mut reached = vec![false; self.adj.len()];
        reached[self.source] = true;
        while let Some(v) = queue.pop_front() {
            if v == self.sink {
                break;
            }
            for &arc in &self.adj[v] {
                let to = self.arcs[arc].to;
                if self.arcs[arc].remaining > 0 && !reached[to] {
                    reached[to] = true;
                    parent_arc[to] = Some(arc);
                    queue.push_back(to);
                }
            }
        }
        if !reached[self.sink] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = self.sink;
        while v != self.source {
            let arc = parent_arc[v].unwrap();
            path.push(arc);
            v = self.arcs[self.arcs[arc].twin].to;
        }
        path.reverse();
        Some(path)
    }

    fn push_along(&mut self, path: &[usize]) {
        let bottleneck = path
            .iter()
            .map(|&arc| self.arcs[arc].remaining)
            .min()
            .expect("path is nonempty");
        for &arc in path {
            self.arcs[arc].remaining -= bottleneck;
            let twin = self.arcs[arc].twin;
            self.arcs[twin].remaining += bottleneck;
        }
    }

    fn reachable_from_source(&self) -> Vec<bool> {
        let mut reached = vec![false; self.adj.len()];
        let mut stack = vec![self.source];
        reached[self.source] = true;
        while let Some(v) = stack.pop() {
            for &arc in &self.adj[v] {
                let to = self.arcs[arc].to;
                if self.arcs[arc].remaining > 0 && !reached[to] {
                    reached[to] = true;
                    stack.push(to);
                }
            }
        }
        reached
    }

    fn into_flow(self, net: &FlowNetwork) -> Flow {
        let edge_flow: Vec<u64> = net
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(_, _, cap))| cap - self.arcs[i * 2].remaining)
            .collect();
        let value = net
            .edges
            .iter()
            .zip(&edge_flow)
            .map(|(&(from, to, _), &f)| {
                if from == net.source {
                    f as i64
                } else if to == net.source {
                    -(f as i64)
                } else {
                    0
                }
            })
            .sum::<i64>();
        Flow {
            edge_flow,
            value: u64::try_from(value).expect("net flow out of the source is non-negative"),
        }
    }
}
