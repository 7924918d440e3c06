//! Hardness-gadget reduction: 4-uniform 4-regular hypergraphs to L-shaped
//! partial latin squares whose completability encodes 2-in-4 colorability.
//!
//! A hypergraph on `u` vertices (and hence `u` edges) becomes a `4u` by `4u`
//! admissible symbol array laid out as a `u` by `u` grid of 4-by-4 blocks.
//! An incident (vertex, edge) block carries two edge symbols in its top and
//! bottom rows plus six vertex symbols whose placements chain consecutive
//! incident blocks together; a non-incident block carries four private
//! symbols. Row and column unions give a balanced framework realizable as an
//! L-shaped square of order `4u² + 12u` whose empty-cell support sums all
//! equal one exactly.
//!
//! Inside any latinization, each vertex's chained symbols admit exactly two
//! global placements; which one a vertex uses is its color. The two
//! placements are not hard-coded: they are derived once by solving the
//! single-vertex strip, which doubles as a consistency check of the layout.

use std::sync::OnceLock;

use thiserror::Error;

use crate::framework::{AdmissibleArray, BalanceError, Framework, LatinRectangle};
use crate::ryser::{realize_framework, RealizeError};
use crate::shape::lshape_block;
use crate::square::PartialLatinSquare;
use crate::symbols::{Symbol, SymbolSet};

/// A hypergraph with 4-vertex edges over vertices `0..u`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypergraph {
    pub u: usize,
    pub edges: Vec<[usize; 4]>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum HypergraphError {
    #[error("edge {} is not 4 distinct vertices", edge + 1)]
    NotUniform { edge: usize },
    #[error("vertex {vertex} out of range 0..{u} in edge {}", edge + 1)]
    VertexOutOfRange { edge: usize, vertex: usize, u: usize },
    #[error("vertex {vertex} lies in {degree} edges, expected 4")]
    NotRegular { vertex: usize, degree: usize },
}

impl Hypergraph {
    pub fn new(u: usize, edges: Vec<[usize; 4]>) -> Self {
        Hypergraph { u, edges }
    }
}

/// Checks 4-uniformity (four distinct vertices per edge, in range) and
/// 4-regularity (every vertex in exactly four edges).
pub fn validate_hypergraph(h: &Hypergraph) -> Result<(), HypergraphError> {
    for (index, edge) in h.edges.iter().enumerate() {
        for &v in edge {
            if v >= h.u {
                return Err(HypergraphError::VertexOutOfRange {
                    edge: index,
                    vertex: v,
                    u: h.u,
                });
            }
        }
        let mut sorted = *edge;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(HypergraphError::NotUniform { edge: index });
        }
    }
    let mut degree = vec![0usize; h.u];
    for edge in &h.edges {
        for &v in edge {
            degree[v] += 1;
        }
    }
    if let Some(vertex) = degree.iter().position(|&d| d != 4) {
        return Err(HypergraphError::NotRegular {
            vertex,
            degree: degree[vertex],
        });
    }
    Ok(())
}

/// A 4-uniform 4-regular hypergraph on six vertices, from the incidence
/// matrix with rows `(1,0,0,1,1,1)`, `(1,1,0,0,1,1)`, `(1,1,1,0,0,1)`,
/// `(1,1,1,1,0,0)`, `(0,1,1,1,1,0)`, `(0,0,1,1,1,1)` (rows are vertices,
/// columns are edges).
pub fn sample_hypergraph() -> Hypergraph {
    const INCIDENCE: [[u8; 6]; 6] = [
        [1, 0, 0, 1, 1, 1],
        [1, 1, 0, 0, 1, 1],
        [1, 1, 1, 0, 0, 1],
        [1, 1, 1, 1, 0, 0],
        [0, 1, 1, 1, 1, 0],
        [0, 0, 1, 1, 1, 1],
    ];
    let edges = (0..6)
        .map(|j| {
            let members: Vec<usize> = (0..6).filter(|&i| INCIDENCE[i][j] == 1).collect();
            [members[0], members[1], members[2], members[3]]
        })
        .collect();
    Hypergraph::new(6, edges)
}

/// The smallest valid instance: four copies of the edge `{0,1,2,3}`.
pub fn smallest_hypergraph() -> Hypergraph {
    Hypergraph::new(4, vec![[0, 1, 2, 3]; 4])
}

/// A red/blue vertex coloring; `red[v]` is true when `v` is red.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoColoring {
    pub red: Vec<bool>,
}

impl TwoColoring {
    /// Exactly two red vertices in every edge.
    pub fn is_valid_2in4(&self, h: &Hypergraph) -> bool {
        self.red.len() == h.u
            && h.edges
                .iter()
                .all(|edge| edge.iter().filter(|&&v| self.red[v]).count() == 2)
    }

    pub fn complement(&self) -> TwoColoring {
        TwoColoring {
            red: self.red.iter().map(|&r| !r).collect(),
        }
    }
}

/// Exhaustive 2-in-4 colorability: depth-first over vertices in ascending
/// order, red tried before blue, pruning any edge with three vertices of one
/// color. Returns the first witness in that order, or `None`.
pub fn decide_2in4(h: &Hypergraph) -> Option<TwoColoring> {
    let mut red = vec![false; h.u];
    let mut red_count = vec![0usize; h.edges.len()];
    let mut blue_count = vec![0usize; h.edges.len()];
    let mut edges_of: Vec<Vec<usize>> = vec![Vec::new(); h.u];
    for (e, edge) in h.edges.iter().enumerate() {
        for &v in edge {
            edges_of[v].push(e);
        }
    }
    fn dfs(
        v: usize,
        h: &Hypergraph,
        edges_of: &[Vec<usize>],
        red: &mut Vec<bool>,
        red_count: &mut Vec<usize>,
        blue_count: &mut Vec<usize>,
    ) -> bool {
        if v == h.u {
            return true;
        }
        'choice: for is_red in [true, false] {
            let counts: &mut Vec<usize> = if is_red { red_count } else { blue_count };
            for &e in &edges_of[v] {
                if counts[e] == 2 {
                    continue 'choice;
                }
            }
            for &e in &edges_of[v] {
                if is_red {
                    red_count[e] += 1;
                } else {
                    blue_count[e] += 1;
                }
            }
            red[v] = is_red;
            if dfs(v + 1, h, edges_of, red, red_count, blue_count) {
                return true;
            }
            for &e in &edges_of[v] {
                if is_red {
                    red_count[e] -= 1;
                } else {
                    blue_count[e] -= 1;
                }
            }
        }
        false
    }
    if dfs(0, h, &edges_of, &mut red, &mut red_count, &mut blue_count) {
        Some(TwoColoring { red })
    } else {
        None
    }
}

/// Symbol bookkeeping for a gadget: the bijection between the three symbol
/// classes and `{1..=n}`, and the incidence structure ordering each vertex's
/// edges.
#[derive(Clone, Debug)]
pub struct GadgetSymbols {
    pub u: usize,
    /// `n = 4u² + 12u`.
    pub n: usize,
    /// Per vertex, its four incident edges ascending; the position is the
    /// vertex's slot for that edge.
    pub vertex_edges: Vec<[usize; 4]>,
    /// `slot[i][j]` is `Some(k)` when edge `j` is vertex `i`'s `(k+1)`-st
    /// incident edge.
    pub slot: Vec<Vec<Option<usize>>>,
    /// Lexicographic index of each non-incident (vertex, edge) pair.
    c_pair: Vec<Vec<Option<usize>>>,
}

impl GadgetSymbols {
    pub fn new(h: &Hypergraph) -> Result<Self, HypergraphError> {
        validate_hypergraph(h)?;
        let u = h.u;
        assert!(
            4 * u * u + 12 * u <= usize::from(u16::MAX),
            "gadget order exceeds the symbol range (u must be at most 126)"
        );
        let mut slot = vec![vec![None; u]; u];
        let mut vertex_edges = vec![[0usize; 4]; u];
        for i in 0..u {
            let incident: Vec<usize> = (0..u).filter(|&j| h.edges[j].contains(&i)).collect();
            debug_assert_eq!(incident.len(), 4);
            for (k, &j) in incident.iter().enumerate() {
                slot[i][j] = Some(k);
                vertex_edges[i][k] = j;
            }
        }
        let mut c_pair = vec![vec![None; u]; u];
        let mut next = 0;
        for i in 0..u {
            for j in 0..u {
                if slot[i][j].is_none() {
                    c_pair[i][j] = Some(next);
                    next += 1;
                }
            }
        }
        debug_assert_eq!(next, u * u.saturating_sub(4));
        Ok(GadgetSymbols {
            u,
            n: 4 * u * u + 12 * u,
            vertex_edges,
            slot,
            c_pair,
        })
    }

    pub fn class_sizes(&self) -> (usize, usize, usize) {
        (4 * self.u, 24 * self.u, 4 * self.u * (self.u - 4))
    }

    /// Edge symbol `a(j, k)`, `k` in `0..4`.
    pub fn symbol_a(&self, j: usize, k: usize) -> Symbol {
        debug_assert!(j < self.u && k < 4);
        Symbol::from_index(4 * j + k)
    }

    /// Vertex symbol `b(i, k, l)`: vertex `i`, slot `k` in `0..4`, `l` in
    /// `0..6`.
    pub fn symbol_b(&self, i: usize, k: usize, l: usize) -> Symbol {
        debug_assert!(i < self.u && k < 4 && l < 6);
        Symbol::from_index(4 * self.u + 24 * i + 6 * k + l)
    }

    /// Block symbol `c(i, j, m)` for a non-incident pair, `m` in `0..4`.
    pub fn symbol_c(&self, i: usize, j: usize, m: usize) -> Symbol {
        let pair = self.c_pair[i][j].expect("c symbols exist only for non-incident pairs");
        Symbol::from_index(28 * self.u + 4 * pair + m)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("row/column unions fail to reproduce the admissible entry at ({row}, {col})")]
    IntersectionMismatch { row: usize, col: usize },
    #[error("gadget framework is not balanced: {0}")]
    NotBalanced(BalanceError),
    #[error(transparent)]
    Realize(#[from] RealizeError),
    #[error("coloring is not a valid 2-in-4 coloring")]
    InvalidColoring,
    #[error("vertex {vertex}'s symbols match neither canonical placement")]
    UnrecognizedPosition { vertex: usize },
    #[error("rectangle is not a latinization of the gadget framework")]
    NotALatinization,
}

/// Builds the `4u` by `4u` admissible symbol array of a valid hypergraph.
pub fn build_gadget_array(h: &Hypergraph) -> Result<AdmissibleArray, ReductionError> {
    let ctx = GadgetSymbols::new(h)?;
    Ok(gadget_array(&ctx))
}

fn gadget_array(ctx: &GadgetSymbols) -> AdmissibleArray {
    let u = ctx.u;
    let side = 4 * u;
    let mut entries = vec![SymbolSet::new(); side * side];
    let mut put = |row: usize, col: usize, symbols: &[Symbol]| {
        entries[row * side + col] = symbols.iter().copied().collect();
    };
    for i in 0..u {
        for j in 0..u {
            let (base_r, base_c) = (4 * i, 4 * j);
            match ctx.slot[i][j] {
                Some(k) => {
                    let a = |m| ctx.symbol_a(j, m);
                    let b = |kk, l| ctx.symbol_b(i, kk, l);
                    let prev = (k + 3) % 4;
                    // Top row: the two upper edge symbols plus one vertex
                    // symbol, split between the left and right halves.
                    put(base_r, base_c, &[a(0), a(1), b(k, 0)]);
                    put(base_r, base_c + 1, &[a(0), a(1), b(k, 0)]);
                    put(base_r, base_c + 2, &[a(0), a(1), b(k, 1)]);
                    put(base_r, base_c + 3, &[a(0), a(1), b(k, 1)]);
                    // Middle rows: vertex symbols only; the leftmost column
                    // carries the previous block's chain symbol.
                    put(base_r + 1, base_c, &[b(prev, 5), b(k, 0)]);
                    put(base_r + 1, base_c + 1, &[b(k, 4), b(k, 0)]);
                    put(base_r + 1, base_c + 2, &[b(k, 4), b(k, 1)]);
                    put(base_r + 1, base_c + 3, &[b(k, 5), b(k, 1)]);
                    put(base_r + 2, base_c, &[b(prev, 5), b(k, 2)]);
                    put(base_r + 2, base_c + 1, &[b(k, 4), b(k, 2)]);
                    put(base_r + 2, base_c + 2, &[b(k, 4), b(k, 3)]);
                    put(base_r + 2, base_c + 3, &[b(k, 5), b(k, 3)]);
                    // Bottom row mirrors the top with the lower edge symbols.
                    put(base_r + 3, base_c, &[a(2), a(3), b(k, 2)]);
                    put(base_r + 3, base_c + 1, &[a(2), a(3), b(k, 2)]);
                    put(base_r + 3, base_c + 2, &[a(2), a(3), b(k, 3)]);
                    put(base_r + 3, base_c + 3, &[a(2), a(3), b(k, 3)]);
                }
                None => {
                    let symbols: Vec<Symbol> = (0..4).map(|m| ctx.symbol_c(i, j, m)).collect();
                    for dr in 0..4 {
                        for dc in 0..4 {
                            put(base_r + dr, base_c + dc, &symbols);
                        }
                    }
                }
            }
        }
    }
    AdmissibleArray::new(side, side, entries)
}

/// Builds the balanced framework whose admissible array is `array`: row
/// lists are row unions, column lists are column unions. Verifies both the
/// entrywise intersection property and balance; failures indicate a
/// malformed array, never a property of valid gadget input.
pub fn build_framework(array: &AdmissibleArray) -> Result<Framework, ReductionError> {
    let side = array.rows();
    debug_assert_eq!(side % 4, 0);
    let u = side / 4;
    let n = 4 * u * u + 12 * u;
    let row_lists: Vec<SymbolSet> = (0..side).map(|i| array.row_union(i)).collect();
    let col_lists: Vec<SymbolSet> = (0..side).map(|j| array.col_union(j)).collect();
    for (i, row_list) in row_lists.iter().enumerate() {
        for (j, col_list) in col_lists.iter().enumerate() {
            if row_list.intersection(col_list) != *array.entry(i, j) {
                return Err(ReductionError::IntersectionMismatch { row: i, col: j });
            }
        }
    }
    let framework = Framework::new(side, side, n, row_lists, col_lists);
    framework
        .check_balanced()
        .map_err(ReductionError::NotBalanced)?;
    Ok(framework)
}

/// The gadget framework of a hypergraph.
pub fn gadget_framework(h: &Hypergraph) -> Result<Framework, ReductionError> {
    build_framework(&build_gadget_array(h)?)
}

/// The full reduction: an L-shaped partial latin square of order
/// `4u² + 12u` with an empty upper-left `4u` by `4u` block, completable
/// exactly when the hypergraph is 2-in-4 colorable. The output satisfies
/// the sufficient Hall condition with every empty cell's sum exactly one.
pub fn reduce_to_pls(h: &Hypergraph) -> Result<PartialLatinSquare, ReductionError> {
    let framework = gadget_framework(h)?;
    let square = realize_framework(&framework, framework.t)?;
    Ok(square)
}

/// Variant selector for the empty-cell-proportion reductions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EpsilonMode {
    /// The reduction output unchanged; its empty proportion vanishes as `u`
    /// grows.
    Dense,
    /// Additionally delete the symbols in the bottom-right block, leaving
    /// only the two filled border strips; the empty proportion approaches
    /// one. Deleting filled cells preserves the Hall property. Whether
    /// completability transfers back across the deletion is not something
    /// this library establishes; it exposes the construction without
    /// claiming that equivalence.
    Sparse,
}

/// Applies an epsilon-variant transformation to a reduction output (an
/// L-shaped square with an empty upper-left `r` by `s` block).
pub fn epsilon_variant(square: &PartialLatinSquare, mode: EpsilonMode) -> PartialLatinSquare {
    match mode {
        EpsilonMode::Dense => square.clone(),
        EpsilonMode::Sparse => {
            let n = square.order();
            let (r, s) =
                lshape_block(square, n).expect("sparse variant applies to L-shaped squares");
            let mut out = square.clone();
            for row in r..n {
                for col in s..n {
                    out.set(row, col, None);
                }
            }
            out
        }
    }
}

/// A strip-local cell: (row within the vertex's four rows, slot of the
/// incident block, column within the block).
type StripCell = (usize, usize, usize);

/// The two cells a vertex symbol occupies inside the strip.
type Placement = [StripCell; 2];

/// One of the two canonical placements of a vertex's 24 symbols, indexed by
/// `slot * 6 + kind`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct StripPattern {
    placements: Vec<Placement>,
}

/// The 2-by-2 cell rectangle of symbol `b(·, k, l)`: its two rows and its
/// two (slot, column) positions, in chain order.
fn b_rectangle(k: usize, l: usize) -> ([usize; 2], [(usize, usize); 2]) {
    match l {
        0 => ([0, 1], [(k, 0), (k, 1)]),
        1 => ([0, 1], [(k, 2), (k, 3)]),
        2 => ([2, 3], [(k, 0), (k, 1)]),
        3 => ([2, 3], [(k, 2), (k, 3)]),
        4 => ([1, 2], [(k, 1), (k, 2)]),
        5 => ([1, 2], [(k, 3), ((k + 1) % 4, 0)]),
        _ => unreachable!("l ranges over 0..6"),
    }
}

fn placement_for(k: usize, l: usize, main_diagonal: bool) -> Placement {
    let ([row_lo, row_hi], [first, second]) = b_rectangle(k, l);
    if main_diagonal {
        [(row_lo, first.0, first.1), (row_hi, second.0, second.1)]
    } else {
        [(row_lo, second.0, second.1), (row_hi, first.0, first.1)]
    }
}

/// Derives the two canonical strip placements by exhausting the per-symbol
/// diagonal choices of a single vertex strip. Placements may only collide in
/// the two middle rows; the search must find exactly two collision-free
/// assignments, which is itself a structural check of the gadget.
fn derive_strip_patterns() -> (StripPattern, StripPattern) {
    let mut solutions: Vec<Vec<bool>> = Vec::new();
    let mut choices = vec![false; 24];
    fn middle_mask(placement: &Placement) -> u32 {
        let mut mask = 0;
        for &(row, slot, col) in placement {
            if row == 1 || row == 2 {
                mask |= 1 << ((row - 1) * 16 + slot * 4 + col);
            }
        }
        mask
    }
    fn dfs(index: usize, occupied: u32, choices: &mut Vec<bool>, solutions: &mut Vec<Vec<bool>>) {
        if index == 24 {
            solutions.push(choices.clone());
            return;
        }
        let (k, l) = (index / 6, index % 6);
        for main in [true, false] {
            let mask = middle_mask(&placement_for(k, l, main));
            if occupied & mask != 0 {
                continue;
            }
            choices[index] = main;
            dfs(index + 1, occupied | mask, choices, solutions);
        }
    }
    dfs(0, 0, &mut choices, &mut solutions);
    assert_eq!(
        solutions.len(),
        2,
        "the strip admits exactly two global placements"
    );
    let build = |choice: &[bool]| StripPattern {
        placements: (0..24)
            .map(|index| placement_for(index / 6, index % 6, choice[index]))
            .collect(),
    };
    // Red is the placement with symbol (slot 0, kind 0) on its main
    // diagonal; the naming is a convention, swapping it globally yields the
    // complementary coloring.
    let (red, blue) = if solutions[0][0] {
        (&solutions[0], &solutions[1])
    } else {
        (&solutions[1], &solutions[0])
    };
    assert!(red[0] && !blue[0]);
    (build(red), build(blue))
}

fn strip_patterns() -> &'static (StripPattern, StripPattern) {
    static PATTERNS: OnceLock<(StripPattern, StripPattern)> = OnceLock::new();
    PATTERNS.get_or_init(derive_strip_patterns)
}

/// Global cells of vertex `i`'s symbols under a pattern: pairs of
/// (cell row, cell col, symbol).
fn pattern_cells(
    ctx: &GadgetSymbols,
    vertex: usize,
    pattern: &StripPattern,
) -> Vec<(usize, usize, Symbol)> {
    let mut cells = Vec::with_capacity(48);
    for k in 0..4 {
        for l in 0..6 {
            let symbol = ctx.symbol_b(vertex, k, l);
            for &(row, slot, col) in &pattern.placements[k * 6 + l] {
                let edge = ctx.vertex_edges[vertex][slot];
                cells.push((4 * vertex + row, 4 * edge + col, symbol));
            }
        }
    }
    cells
}

/// Reads the 2-in-4 coloring off a latinization of the gadget framework:
/// each vertex's symbols must sit in one of the two canonical placements.
pub fn extract_coloring(
    h: &Hypergraph,
    latinization: &LatinRectangle,
) -> Result<TwoColoring, ReductionError> {
    let ctx = GadgetSymbols::new(h)?;
    let side = 4 * ctx.u;
    if latinization.rows() != side || latinization.cols() != side {
        return Err(ReductionError::NotALatinization);
    }
    let (red, blue) = strip_patterns();
    let matches = |vertex: usize, pattern: &StripPattern| {
        pattern_cells(&ctx, vertex, pattern)
            .into_iter()
            .all(|(row, col, symbol)| latinization.get(row, col) == symbol)
    };
    let mut colors = Vec::with_capacity(ctx.u);
    for vertex in 0..ctx.u {
        if matches(vertex, red) {
            colors.push(true);
        } else if matches(vertex, blue) {
            colors.push(false);
        } else {
            return Err(ReductionError::UnrecognizedPosition { vertex });
        }
    }
    Ok(TwoColoring { red: colors })
}

/// Builds a latinization of the gadget framework from a valid 2-in-4
/// coloring: vertex symbols go to their color's canonical placement, edge
/// symbols fill the remaining top- and bottom-row cells (the 2-red/2-blue
/// split is exactly what makes their four columns available), and each
/// non-incident block takes a cyclic square on its four private symbols.
pub fn coloring_to_latinization(
    h: &Hypergraph,
    coloring: &TwoColoring,
) -> Result<LatinRectangle, ReductionError> {
    let ctx = GadgetSymbols::new(h)?;
    if !coloring.is_valid_2in4(h) {
        return Err(ReductionError::InvalidColoring);
    }
    let side = 4 * ctx.u;
    let mut grid: Vec<Option<Symbol>> = vec![None; side * side];
    fn place(grid: &mut [Option<Symbol>], side: usize, row: usize, col: usize, symbol: Symbol) {
        let cell = &mut grid[row * side + col];
        debug_assert!(cell.is_none(), "cell ({row},{col}) placed twice");
        *cell = Some(symbol);
    }

    let (red, blue) = strip_patterns();
    for vertex in 0..ctx.u {
        let pattern = if coloring.red[vertex] { red } else { blue };
        for (row, col, symbol) in pattern_cells(&ctx, vertex, pattern) {
            place(&mut grid, side, row, col, symbol);
        }
    }
    for i in 0..ctx.u {
        for j in 0..ctx.u {
            if ctx.slot[i][j].is_none() {
                for p in 0..4 {
                    for q in 0..4 {
                        place(&mut grid, side, 4 * i + p, 4 * j + q, ctx.symbol_c(i, j, (p + q) % 4));
                    }
                }
            }
        }
    }
    // Edge symbols: per edge, rows 0 and 3 of each incident strip have two
    // free cells; assign the first symbol of each pair an injective choice of
    // columns, the second takes the leftovers.
    for j in 0..ctx.u {
        let mut strips: Vec<usize> = (0..ctx.u).filter(|&i| ctx.slot[i][j].is_some()).collect();
        strips.sort_unstable();
        for (local_row, pair) in [(0usize, [0usize, 1]), (3, [2, 3])] {
            let free: Vec<Vec<usize>> = strips
                .iter()
                .map(|&i| {
                    let row = 4 * i + local_row;
                    (0..4)
                        .filter(|&q| grid[row * side + 4 * j + q].is_none())
                        .collect()
                })
                .collect();
            let assignment = injective_choice(&free)
                .expect("a valid 2-in-4 split leaves an injective column choice");
            for (strip_index, &i) in strips.iter().enumerate() {
                let row = 4 * i + local_row;
                let first_col = assignment[strip_index];
                let second_col = *free[strip_index]
                    .iter()
                    .find(|&&q| q != first_col)
                    .expect("each strip row has two free cells");
                place(&mut grid, side, row, 4 * j + first_col, ctx.symbol_a(j, pair[0]));
                place(&mut grid, side, row, 4 * j + second_col, ctx.symbol_a(j, pair[1]));
            }
        }
    }

    let values: Vec<Symbol> = grid
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .expect("every cell of the gadget rectangle is placed");
    Ok(LatinRectangle::new(side, side, values))
}

/// Picks one element per list with all picks distinct, preferring small
/// values, by backtracking over the (tiny) lists.
fn injective_choice(lists: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn dfs(lists: &[Vec<usize>], index: usize, used: &mut Vec<usize>) -> bool {
        if index == lists.len() {
            return true;
        }
        for &v in &lists[index] {
            if used.contains(&v) {
                continue;
            }
            used.push(v);
            if dfs(lists, index + 1, used) {
                return true;
            }
            used.pop();
        }
        false
    }
    let mut used = Vec::new();
    if dfs(lists, 0, &mut used) {
        Some(used)
    } else {
        None
    }
}
