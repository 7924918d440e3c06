//! Hall's Condition machinery.
//!
//! For a set `T` of cells and a symbol `σ`, `α(σ, T)` is the size of the
//! largest subset of `T` that is independent (no shared row or column) with
//! every cell supporting `σ`. The inequality for `T` asks
//! `Σ_σ α(σ, T) ≥ |T|`; the square satisfies Hall's Condition when the
//! inequality holds for every cell set, equivalently for every set of empty
//! cells.
//!
//! A single inequality is decided in polynomial time by `n` bipartite
//! matchings. Deciding the whole condition is only offered as an exhaustive
//! scan over empty-cell subsets, plus a one-sided sufficient condition that
//! bounds each cell's support weight, evaluated in exact rational
//! arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::graphs::BipartiteGraph;
use crate::shape::{classify_shape, ShapeClass};
use crate::square::{CellRef, PartialLatinSquare};
use crate::symbols::{Symbol, SymbolSet};

/// Outcome of a Hall check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HallVerdict {
    Satisfied,
    Violated,
    /// Only produced by the sufficient condition: it can never certify a
    /// violation.
    Inconclusive,
}

/// Which check produced a report.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HallMethod {
    Exhaustive,
    SufficientCondition,
    SingleInequality,
}

/// A violated inequality: the cell set, its α-sum and its size.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HallCertificate {
    pub cells: Vec<CellRef>,
    pub alpha_sum: usize,
}

impl HallCertificate {
    pub fn size(&self) -> usize {
        self.cells.len()
    }
}

/// Verdict plus the violating certificate when there is one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HallReport {
    pub verdict: HallVerdict,
    pub method: HallMethod,
    pub certificate: Option<HallCertificate>,
    /// Number of cell sets evaluated (exhaustive scans only).
    pub sets_checked: Option<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum HallError {
    #[error("{count} empty cells exceed the exhaustive-check limit {limit}")]
    TooManyEmptyCells { count: usize, limit: usize },
    #[error("operation requires shape {expected}")]
    WrongShape { expected: &'static str },
    #[error("cell {cell} is not a hole of the instance")]
    NotAHole { cell: CellRef },
}

/// The size of the largest independent set for `symbol` inside `cells`.
///
/// Computed as a maximum matching between rows and columns, one edge per
/// supporting cell of `cells`. Filled cells containing the symbol count as
/// supporting; the latin property keeps their edges vertex-disjoint from
/// every other supporting edge, so they always enter the matching.
pub fn alpha(square: &PartialLatinSquare, symbol: Symbol, cells: &[CellRef]) -> usize {
    let n = square.order();
    let mut graph = BipartiteGraph::new(n, n);
    let mut seen = std::collections::HashSet::new();
    for &cell in cells {
        if seen.insert(cell) && square.supports(cell, symbol) {
            graph.add_edge(cell.row, cell.col);
        }
    }
    graph.max_matching().len()
}

/// Evaluates the single inequality for `cells`: `Σ_σ α(σ, cells) ≥ |cells|`.
pub fn check_hi(square: &PartialLatinSquare, cells: &[CellRef]) -> HallReport {
    let (sum, size) = alpha_sum(square, cells, None);
    let verdict = if sum >= size {
        HallVerdict::Satisfied
    } else {
        HallVerdict::Violated
    };
    HallReport {
        verdict,
        method: HallMethod::SingleInequality,
        certificate: (verdict == HallVerdict::Violated).then(|| HallCertificate {
            cells: cells.to_vec(),
            alpha_sum: sum,
        }),
        sets_checked: None,
    }
}

/// `Σ_σ α(σ, cells)` and `|cells|`, with duplicates dropped. The sum stops
/// early at `stop_at` when given (the inequality is then already settled).
fn alpha_sum(
    square: &PartialLatinSquare,
    cells: &[CellRef],
    stop_at: Option<usize>,
) -> (usize, usize) {
    let mut unique: Vec<CellRef> = cells.to_vec();
    unique.sort_unstable();
    unique.dedup();
    let size = unique.len();
    // Only symbols supported somewhere in the set can contribute.
    let mut relevant = SymbolSet::new();
    for &cell in &unique {
        relevant = relevant.union(&square.support_set(cell));
    }
    let mut sum = 0;
    for symbol in relevant.iter() {
        sum += alpha(square, symbol, &unique);
        if let Some(stop) = stop_at {
            if sum >= stop {
                break;
            }
        }
    }
    (sum, size)
}

/// Default cap on the number of empty cells the exhaustive check accepts.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;

/// Checks every subset of empty cells, in increasing size and otherwise
/// lexicographic (row-major) order, returning the first violated subset as
/// a certificate. Filled cells never need checking: removing a filled cell
/// from a set does not change its inequality's status.
///
/// Fails upfront when there are more than `limit` empty cells.
pub fn check_hc_exhaustive(
    square: &PartialLatinSquare,
    limit: usize,
) -> Result<HallReport, HallError> {
    let empty = square.empty_cells();
    if empty.len() > limit {
        return Err(HallError::TooManyEmptyCells {
            count: empty.len(),
            limit,
        });
    }
    let supports: Vec<SymbolSet> = empty.iter().map(|&c| square.support_set(c)).collect();
    let mut checked: u64 = 0;
    let mut edges: Vec<CellRef> = Vec::with_capacity(empty.len());
    for size in 0..=empty.len() {
        let mut combo = Combinations::new(empty.len(), size);
        while let Some(indices) = combo.next() {
            checked += 1;
            let relevant = indices
                .iter()
                .fold(SymbolSet::new(), |acc, &i| acc.union(&supports[i]));
            let mut sum = 0;
            for symbol in relevant.iter() {
                edges.clear();
                edges.extend(
                    indices
                        .iter()
                        .filter(|&&i| supports[i].contains(symbol))
                        .map(|&i| empty[i]),
                );
                sum += independent_cells(&edges);
                if sum >= size {
                    break;
                }
            }
            if sum < size {
                let subset: Vec<CellRef> = indices.iter().map(|&i| empty[i]).collect();
                // Recompute without the early exit so the certificate carries
                // the true α-sum.
                let (alpha_sum, _) = alpha_sum(square, &subset, None);
                return Ok(HallReport {
                    verdict: HallVerdict::Violated,
                    method: HallMethod::Exhaustive,
                    certificate: Some(HallCertificate {
                        cells: subset,
                        alpha_sum,
                    }),
                    sets_checked: Some(checked),
                });
            }
        }
    }
    Ok(HallReport {
        verdict: HallVerdict::Satisfied,
        method: HallMethod::Exhaustive,
        certificate: None,
        sets_checked: Some(checked),
    })
}

/// Maximum number of pairwise row- and column-disjoint cells: a small
/// matching between the rows and columns the cells touch.
fn independent_cells(cells: &[CellRef]) -> usize {
    let mut rows: Vec<usize> = cells.iter().map(|c| c.row).collect();
    rows.sort_unstable();
    rows.dedup();
    let mut cols: Vec<usize> = cells.iter().map(|c| c.col).collect();
    cols.sort_unstable();
    cols.dedup();
    let mut adj = vec![Vec::new(); rows.len()];
    for cell in cells {
        let r = rows.binary_search(&cell.row).unwrap();
        let c = cols.binary_search(&cell.col).unwrap();
        adj[r].push(c);
    }
    let mut match_col: Vec<Option<usize>> = vec![None; cols.len()];
    let mut visited = vec![false; cols.len()];
    let mut size = 0;
    for r in 0..rows.len() {
        visited.fill(false);
        if small_augment(&adj, r, &mut visited, &mut match_col) {
            size += 1;
        }
    }
    size
}

fn small_augment(
    adj: &[Vec<usize>],
    r: usize,
    visited: &mut [bool],
    match_col: &mut [Option<usize>],
) -> bool {
    for &c in &adj[r] {
        if visited[c] {
            continue;
        }
        visited[c] = true;
        let free = match match_col[c] {
            None => true,
            Some(r2) => small_augment(adj, r2, visited, match_col),
        };
        if free {
            match_col[c] = Some(r);
            return true;
        }
    }
    false
}

/// Lexicographic k-combinations of `0..n`.
struct Combinations {
    n: usize,
    indices: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            indices: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.indices);
        }
        let k = self.indices.len();
        // Advance the rightmost index that still has room.
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.indices[i] < self.n - (k - i) {
                self.indices[i] += 1;
                for j in i + 1..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                return Some(&self.indices);
            }
        }
    }
}

/// The one-sided sufficient condition: if every empty cell `b` satisfies
/// `Σ_{σ ∈ S(b)} 1/(n − ν(σ)) ≥ 1`, Hall's Condition holds. Sums are exact
/// rationals so the boundary value 1 is decided correctly.
///
/// Returns `Satisfied`, or `Inconclusive` with the first cell whose sum
/// falls short (never `Violated`: the condition is only sufficient).
pub fn check_sufficient(square: &PartialLatinSquare) -> HallReport {
    let n = square.order();
    let nu: Vec<usize> = (0..n).map(|i| square.nu(Symbol::from_index(i))).collect();
    let one = BigRational::from(BigInt::from(1));
    for cell in square.empty_cells() {
        let mut sum = BigRational::from(BigInt::from(0));
        for symbol in square.support_set(cell).iter() {
            // A supported symbol is missing from the cell's row, so ν < n.
            let denom = n - nu[symbol.index()];
            sum += BigRational::new(BigInt::from(1), BigInt::from(denom));
        }
        if sum < one {
            return HallReport {
                verdict: HallVerdict::Inconclusive,
                method: HallMethod::SufficientCondition,
                certificate: Some(HallCertificate {
                    cells: vec![cell],
                    alpha_sum: 0,
                }),
                sets_checked: None,
            };
        }
    }
    HallReport {
        verdict: HallVerdict::Satisfied,
        method: HallMethod::SufficientCondition,
        certificate: None,
        sets_checked: None,
    }
}

/// Exact per-cell sufficient-condition sum `Σ_{σ ∈ S(b)} 1/(n − ν(σ))` for
/// an empty cell.
pub fn sufficient_sum(square: &PartialLatinSquare, cell: CellRef) -> BigRational {
    let n = square.order();
    let mut sum = BigRational::from(BigInt::from(0));
    for symbol in square.support_set(cell).iter() {
        let denom = n - square.nu(symbol);
        sum += BigRational::new(BigInt::from(1), BigInt::from(denom));
    }
    sum
}

/// Closed form for `α(σ, H)` when the filled cells form an upper-left
/// rectangle and `H` is the set of cells in the top `r` rows:
/// `min(r, ν(σ) + n − s)`.
pub fn alpha_closed_rectangle(
    square: &PartialLatinSquare,
    symbol: Symbol,
) -> Result<usize, HallError> {
    let ShapeClass::Rectangle { rows, cols } = classify_shape(square) else {
        return Err(HallError::WrongShape { expected: "Rectangle" });
    };
    let n = square.order();
    Ok(rows.min(square.nu(symbol) + n - cols))
}

/// Closed form for `α(σ, H − J)` when the filled cells form an upper-left
/// rectangle with at most one hole per column and `J` is a subset of the
/// holes: `min(r, ν(σ) + ρ(σ) + n − s)`, where `ρ(σ)` counts the rows
/// holding a hole outside `J` that supports `σ`.
pub fn alpha_closed_holes(
    square: &PartialLatinSquare,
    symbol: Symbol,
    excluded_holes: &[CellRef],
) -> Result<usize, HallError> {
    let (rows, cols, holes) = match classify_shape(square) {
        ShapeClass::Rectangle { rows, cols } => (rows, cols, Vec::new()),
        ShapeClass::RectangleWithColumnHoles { rows, cols, holes } => (rows, cols, holes),
        _ => {
            return Err(HallError::WrongShape {
                expected: "RectangleWithColumnHoles",
            })
        }
    };
    for &cell in excluded_holes {
        if !holes.contains(&cell) {
            return Err(HallError::NotAHole { cell });
        }
    }
    let n = square.order();
    let rho = rows_with_supporting_hole(square, symbol, &holes, excluded_holes);
    Ok(rows.min(square.nu(symbol) + rho + n - cols))
}

/// Number of rows containing a hole outside `excluded` that supports
/// `symbol`.
pub(crate) fn rows_with_supporting_hole(
    square: &PartialLatinSquare,
    symbol: Symbol,
    holes: &[CellRef],
    excluded: &[CellRef],
) -> usize {
    let mut rows = std::collections::BTreeSet::new();
    for &hole in holes {
        if !excluded.contains(&hole) && square.supports(hole, symbol) {
            rows.insert(hole.row);
        }
    }
    rows.len()
}

/// The cells of the top `r` rows (all `n` columns), row-major.
pub fn top_rows_cells(square: &PartialLatinSquare, r: usize) -> Vec<CellRef> {
    let n = square.order();
    (0..r)
        .flat_map(|row| (0..n).map(move |col| CellRef::new(row, col)))
        .collect()
}
