//! Completion of rectangles with at most one empty cell per column.
//!
//! Pipeline over an upper-left `r` by `s` rectangle with hole set `B`
//! (at most one hole per column):
//!
//! 1. Fill some holes so every symbol reaches `r + s - n` occurrences,
//!    routing the needed placements as unit flows through a
//!    symbols-to-rows-to-holes network. A flow deficit yields a hole subset
//!    `B'` whose inequality over the top rows minus `B'` fails.
//! 2. Independently fill all holes row by row with supported symbols via
//!    per-row matchings. A deficient row yields a hole subset `B'` whose own
//!    inequality fails.
//! 3. Merge: per row, combine the two fillings with a Dulmage-Mendelsohn
//!    matching merge, covering every hole and preserving step 1's symbol
//!    counts, then finish with the rectangle completion.

use thiserror::Error;

use crate::graphs::{dm_merge, BipartiteGraph, FlowNetwork};
use crate::ryser;
use crate::shape::{classify_shape, ShapeClass};
use crate::square::{CellRef, PartialLatinSquare};
use crate::symbols::Symbol;

/// A validated instance: the square, its rectangle dimensions and its holes.
#[derive(Clone, Debug)]
pub struct HoleInstance {
    square: PartialLatinSquare,
    rows: usize,
    cols: usize,
    holes: Vec<CellRef>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum HolesError {
    #[error("filled cells do not form a rectangle with at most one empty cell per column")]
    WrongShape,
    #[error(
        "flow deficit: {got} of {needed} required placements are routable; \
         the inequality for the top rows minus {certificate_size} hole(s) fails",
        certificate_size = certificate.len()
    )]
    FlowDeficit {
        needed: u64,
        got: u64,
        /// Hole subset `B'`: the top-rows cell set minus these holes violates
        /// its inequality.
        certificate: Vec<CellRef>,
    },
    #[error(
        "row {} cannot fill its holes: {} hole(s) support too few symbols jointly",
        row + 1, certificate.len()
    )]
    RowMatchingDeficit {
        row: usize,
        /// Hole subset `B'` in one row that violates its own inequality.
        certificate: Vec<CellRef>,
    },
}

impl HoleInstance {
    /// Accepts squares classified as a rectangle, with or without holes.
    pub fn new(square: PartialLatinSquare) -> Result<Self, HolesError> {
        let (rows, cols, holes) = match classify_shape(&square) {
            ShapeClass::Rectangle { rows, cols } => (rows, cols, Vec::new()),
            ShapeClass::RectangleWithColumnHoles { rows, cols, holes } => (rows, cols, holes),
            _ => return Err(HolesError::WrongShape),
        };
        Ok(HoleInstance {
            square,
            rows,
            cols,
            holes,
        })
    }

    pub fn square(&self) -> &PartialLatinSquare {
        &self.square
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn holes(&self) -> &[CellRef] {
        &self.holes
    }
}

/// The placement requirements of step 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MuProfile {
    /// Least additional occurrences needed per symbol:
    /// `max(0, r + s - n - ν(σ))`.
    pub mu: Vec<usize>,
    /// Total required placements.
    pub u: usize,
    /// Per symbol, the number of rows holding a hole that supports it.
    pub rho: Vec<usize>,
}

/// Computes the per-symbol placement requirements and supporting-row counts.
pub fn compute_mu(instance: &HoleInstance) -> MuProfile {
    let square = instance.square();
    let n = square.order();
    let needed = (instance.rows + instance.cols).saturating_sub(n);
    let mu: Vec<usize> = (0..n)
        .map(|i| needed.saturating_sub(square.nu(Symbol::from_index(i))))
        .collect();
    let u = mu.iter().sum();
    let rho = (0..n)
        .map(|i| {
            crate::hall::rows_with_supporting_hole(
                square,
                Symbol::from_index(i),
                &instance.holes,
                &[],
            )
        })
        .collect();
    MuProfile { mu, u, rho }
}

/// The step 1 network plus the labels needed to decode a flow back into
/// hole placements.
#[derive(Clone, Debug)]
pub struct Step1Network {
    pub network: FlowNetwork,
    /// Symbols still needing placements, ascending; vertex `2 + i` is
    /// `deficient_symbols[i]`.
    pub deficient_symbols: Vec<Symbol>,
    /// (symbol, row) vertices: the symbol is deficient and some hole in the
    /// row supports it; vertex `2 + deficient_symbols.len() + i` is
    /// `support_pairs[i]`.
    pub support_pairs: Vec<(Symbol, usize)>,
    /// Edge indices from the source to each deficient symbol.
    pub source_edges: Vec<usize>,
    /// Edge indices from symbols to (symbol, row) pairs.
    pub pair_edges: Vec<(usize, usize, usize)>,
    /// Edge indices from (symbol, row) pairs to holes:
    /// (pair index, hole index, edge index).
    pub hole_edges: Vec<(usize, usize, usize)>,
}

/// Builds the unit-flow network for step 1: source → deficient symbols
/// (capacity `μ(σ)`) → per-row support pairs (capacity 1) → holes (capacity
/// `u`) → sink (capacity 1).
pub fn build_flow_network(instance: &HoleInstance, profile: &MuProfile) -> Step1Network {
    let square = instance.square();
    let deficient_symbols: Vec<Symbol> = profile
        .mu
        .iter()
        .enumerate()
        .filter(|&(_, &m)| m > 0)
        .map(|(i, _)| Symbol::from_index(i))
        .collect();
    let mut support_pairs = Vec::new();
    for &symbol in &deficient_symbols {
        for row in 0..instance.rows {
            if instance
                .holes
                .iter()
                .any(|&h| h.row == row && square.supports(h, symbol))
            {
                support_pairs.push((symbol, row));
            }
        }
    }
    let num_symbols = deficient_symbols.len();
    let num_pairs = support_pairs.len();
    let num_holes = instance.holes.len();
    // Vertex layout: 0 = source, 1 = sink, then symbols, pairs, holes.
    let source = 0;
    let sink = 1;
    let symbol_base = 2;
    let pair_base = symbol_base + num_symbols;
    let hole_base = pair_base + num_pairs;
    let mut network = FlowNetwork::new(hole_base + num_holes, source, sink);
    let u = profile.u as u64;

    let source_edges: Vec<usize> = deficient_symbols
        .iter()
        .enumerate()
        .map(|(i, &symbol)| {
            network.add_edge(source, symbol_base + i, profile.mu[symbol.index()] as u64)
        })
        .collect();
    let mut pair_edges = Vec::new();
    for (pair_index, &(symbol, _)) in support_pairs.iter().enumerate() {
        let symbol_index = deficient_symbols
            .iter()
            .position(|&s| s == symbol)
            .expect("pair symbols are deficient");
        let edge = network.add_edge(symbol_base + symbol_index, pair_base + pair_index, 1);
        pair_edges.push((symbol_index, pair_index, edge));
    }
    let mut hole_edges = Vec::new();
    for (pair_index, &(symbol, row)) in support_pairs.iter().enumerate() {
        for (hole_index, &hole) in instance.holes.iter().enumerate() {
            if hole.row == row && square.supports(hole, symbol) {
                let edge = network.add_edge(pair_base + pair_index, hole_base + hole_index, u);
                hole_edges.push((pair_index, hole_index, edge));
            }
        }
    }
    for hole_index in 0..num_holes {
        network.add_edge(hole_base + hole_index, sink, 1);
    }
    Step1Network {
        network,
        deficient_symbols,
        support_pairs,
        source_edges,
        pair_edges,
        hole_edges,
    }
}

/// Step 1: fills some holes so that every symbol appears at least
/// `r + s - n` times inside the rectangle.
///
/// On a flow deficit the error carries the hole subset `B'` read off the
/// minimum cut; the inequality for the top rows minus `B'` is then violated.
pub fn step1_partial_fill(instance: &HoleInstance) -> Result<PartialLatinSquare, HolesError> {
    let profile = compute_mu(instance);
    if profile.u == 0 {
        return Ok(instance.square().clone());
    }
    let step1 = build_flow_network(instance, &profile);
    let flow = step1.network.max_flow_integral();
    if flow.value < profile.u as u64 {
        let certificate = cut_certificate(instance, &profile, &step1, &flow);
        return Err(HolesError::FlowDeficit {
            needed: profile.u as u64,
            got: flow.value,
            certificate,
        });
    }
    // Decode: a saturated symbol→pair edge routes one placement; the pair's
    // single outgoing flow unit names the hole.
    let mut filled = instance.square().clone();
    for &(symbol_index, pair_index, edge) in &step1.pair_edges {
        if flow.edge_flow[edge] == 0 {
            continue;
        }
        let symbol = step1.deficient_symbols[symbol_index];
        let hole_index = step1
            .hole_edges
            .iter()
            .find(|&&(p, _, e)| p == pair_index && flow.edge_flow[e] > 0)
            .map(|&(_, h, _)| h)
            .expect("unit in-flow leaves through exactly one hole edge");
        let hole = instance.holes[hole_index];
        debug_assert!(filled.get(hole.row, hole.col).is_none());
        filled.set(hole.row, hole.col, Some(symbol));
    }
    debug_assert_eq!(filled.validate(), Ok(()));
    Ok(filled)
}

/// Reads the violating hole subset `B'` off a minimum cut.
///
/// `U'` is the set of deficient symbols whose source edge is uncut; symbols
/// whose cut count reaches `μ(σ)` are moved out of `U'` (cutting their
/// source edge instead never enlarges the cut). `B'` collects the holes
/// reachable from `U'` along uncut edges.
fn cut_certificate(
    instance: &HoleInstance,
    profile: &MuProfile,
    step1: &Step1Network,
    flow: &crate::graphs::Flow,
) -> Vec<CellRef> {
    let source_side = step1.network.min_cut_source_side(flow);
    let symbol_base = 2;
    let pair_base = symbol_base + step1.deficient_symbols.len();
    let mut in_u_prime: Vec<bool> = step1
        .deficient_symbols
        .iter()
        .enumerate()
        .map(|(i, _)| source_side[symbol_base + i])
        .collect();
    // Normalization: if all of a symbol's pair edges are cut anyway, treat
    // the symbol itself as cut.
    for (i, &symbol) in step1.deficient_symbols.iter().enumerate() {
        if !in_u_prime[i] {
            continue;
        }
        let cut_count = step1
            .pair_edges
            .iter()
            .filter(|&&(si, pi, _)| si == i && !source_side[pair_base + pi])
            .count();
        if cut_count >= profile.mu[symbol.index()] {
            in_u_prime[i] = false;
        }
    }
    let mut in_b_prime = vec![false; instance.holes.len()];
    for &(symbol_index, pair_index, _) in &step1.pair_edges {
        if !in_u_prime[symbol_index] || !source_side[pair_base + pair_index] {
            continue;
        }
        for &(pi, hole_index, _) in &step1.hole_edges {
            if pi == pair_index {
                in_b_prime[hole_index] = true;
            }
        }
    }
    instance
        .holes
        .iter()
        .enumerate()
        .filter(|&(i, _)| in_b_prime[i])
        .map(|(_, &h)| h)
        .collect()
}

/// Step 2: fills every hole, row by row, with supported symbols.
///
/// Each row's holes are matched to the symbols they support; a row that
/// cannot cover its holes yields the unmatched alternating-reachable hole
/// subset `B'`, whose own inequality is violated.
pub fn step2_full_fill(instance: &HoleInstance) -> Result<PartialLatinSquare, HolesError> {
    let square = instance.square();
    let n = square.order();
    let mut filled = square.clone();
    for row in 0..instance.rows {
        let row_holes: Vec<CellRef> = instance
            .holes
            .iter()
            .copied()
            .filter(|h| h.row == row)
            .collect();
        if row_holes.is_empty() {
            continue;
        }
        let mut graph = BipartiteGraph::new(row_holes.len(), n);
        for (i, &hole) in row_holes.iter().enumerate() {
            for symbol in square.support_set(hole).iter() {
                graph.add_edge(i, symbol.index());
            }
        }
        let matching = graph.max_matching();
        if matching.len() < row_holes.len() {
            let certificate = hall_violator(&graph, &matching, &row_holes);
            return Err(HolesError::RowMatchingDeficit { row, certificate });
        }
        for &(i, symbol_index) in &matching {
            let hole = row_holes[i];
            filled.set(hole.row, hole.col, Some(Symbol::from_index(symbol_index)));
        }
    }
    debug_assert_eq!(filled.validate(), Ok(()));
    Ok(filled)
}

/// The holes reachable from some unmatched hole by alternating paths; their
/// joint neighbourhood is smaller than they are.
fn hall_violator(
    graph: &BipartiteGraph,
    matching: &[(usize, usize)],
    row_holes: &[CellRef],
) -> Vec<CellRef> {
    let mut match_of_a: Vec<Option<usize>> = vec![None; graph.size_a];
    let mut match_of_b: Vec<Option<usize>> = vec![None; graph.size_b];
    for &(a, b) in matching {
        match_of_a[a] = Some(b);
        match_of_b[b] = Some(a);
    }
    let mut adj = vec![Vec::new(); graph.size_a];
    for &(a, b) in &graph.edges {
        adj[a].push(b);
    }
    let mut reach_a = vec![false; graph.size_a];
    let mut reach_b = vec![false; graph.size_b];
    let mut stack: Vec<usize> = (0..graph.size_a).filter(|&a| match_of_a[a].is_none()).collect();
    for &a in &stack {
        reach_a[a] = true;
    }
    while let Some(a) = stack.pop() {
        for &b in &adj[a] {
            if reach_b[b] {
                continue;
            }
            reach_b[b] = true;
            if let Some(a2) = match_of_b[b] {
                if !reach_a[a2] {
                    reach_a[a2] = true;
                    stack.push(a2);
                }
            }
        }
    }
    (0..graph.size_a)
        .filter(|&a| reach_a[a])
        .map(|a| row_holes[a])
        .collect()
}

/// Step 3: merges the two fillings row by row so that every hole is filled
/// and every symbol keeps at least its step 1 occurrence count.
pub fn step3_merge(
    instance: &HoleInstance,
    q1: &PartialLatinSquare,
    q2: &PartialLatinSquare,
) -> PartialLatinSquare {
    let mut merged = instance.square().clone();
    for row in 0..instance.rows {
        let row_holes: Vec<CellRef> = instance
            .holes
            .iter()
            .copied()
            .filter(|h| h.row == row)
            .collect();
        if row_holes.is_empty() {
            continue;
        }
        // Matchings between symbols (A side) and the row's holes (B side).
        let as_matching = |q: &PartialLatinSquare| -> Vec<(usize, usize)> {
            row_holes
                .iter()
                .enumerate()
                .filter_map(|(i, &h)| q.get(h.row, h.col).map(|s| (s.index(), i)))
                .collect()
        };
        let m1 = as_matching(q1);
        let m2 = as_matching(q2);
        debug_assert_eq!(m2.len(), row_holes.len(), "step 2 covers every hole");
        let merged_matching = dm_merge(&m1, &m2);
        for &(symbol_index, i) in &merged_matching {
            let hole = row_holes[i];
            merged.set(hole.row, hole.col, Some(Symbol::from_index(symbol_index)));
        }
    }
    debug_assert_eq!(merged.validate(), Ok(()));
    merged
}

/// Completes a rectangle-with-holes square, or surfaces the specific
/// violated inequality as an error certificate.
pub fn complete_with_holes(instance: &HoleInstance) -> Result<PartialLatinSquare, HolesError> {
    let q1 = step1_partial_fill(instance)?;
    let q2 = step2_full_fill(instance)?;
    let merged = step3_merge(instance, &q1, &q2);
    let completed = ryser::complete_rectangle(&merged)
        .expect("merged square fills the rectangle and meets the count condition");
    Ok(completed)
}
