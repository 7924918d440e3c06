//! Rectangle completion and framework realization.
//!
//! A partial latin square whose filled cells form an upper-left `r` by `s`
//! rectangle is completable exactly when every symbol appears at least
//! `r + s - n` times. The completion is constructive: extend the rectangle
//! to `r` full rows by edge-coloring a symbols-versus-rows graph (one color
//! per new column), then to the full square by edge-coloring a
//! columns-versus-symbols graph (one color per new row). Realizing a
//! balanced framework as an L-shaped square uses the same two phases.

use thiserror::Error;

use crate::framework::{BalanceError, Framework};
use crate::graphs::BipartiteGraph;
use crate::shape::{classify_shape, ShapeClass};
use crate::square::PartialLatinSquare;
use crate::symbols::{Symbol, SymbolSet};

/// Per-symbol deficits against the rectangle condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RyserReport {
    /// `max(0, r + s - n - ν(σ))` per symbol, indexed by symbol index.
    pub deficits: Vec<usize>,
}

impl RyserReport {
    pub fn is_completable(&self) -> bool {
        self.deficits.iter().all(|&d| d == 0)
    }

    /// Symbols with a positive deficit.
    pub fn violating_symbols(&self) -> Vec<(Symbol, usize)> {
        self.deficits
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d > 0)
            .map(|(i, &d)| (Symbol::from_index(i), d))
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum RyserError {
    #[error("filled cells do not form an upper-left rectangle")]
    WrongShape,
    #[error("the rectangle condition fails: {0} symbol(s) appear too few times")]
    Violated(usize),
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum RealizeError {
    #[error("framework is not balanced: {0}")]
    NotBalanced(BalanceError),
    #[error("order {order} is too small: need at least max(t, r + s) = {min}")]
    OrderTooSmall { order: usize, min: usize },
}

/// Evaluates the rectangle condition `ν(σ) ≥ r + s − n` for every symbol.
pub fn check_ryser(square: &PartialLatinSquare) -> Result<RyserReport, RyserError> {
    let ShapeClass::Rectangle { rows, cols } = classify_shape(square) else {
        return Err(RyserError::WrongShape);
    };
    let n = square.order();
    let needed = (rows + cols).saturating_sub(n);
    let deficits = (0..n)
        .map(|i| needed.saturating_sub(square.nu(Symbol::from_index(i))))
        .collect();
    Ok(RyserReport { deficits })
}

/// Whether the single inequality for the top `r` rows holds; for rectangle
/// squares this is equivalent to the rectangle condition.
pub fn check_hi_equivalence(square: &PartialLatinSquare) -> Result<bool, RyserError> {
    let ShapeClass::Rectangle { rows, .. } = classify_shape(square) else {
        return Err(RyserError::WrongShape);
    };
    let cells = crate::hall::top_rows_cells(square, rows);
    let report = crate::hall::check_hi(square, &cells);
    Ok(report.verdict == crate::hall::HallVerdict::Satisfied)
}

/// Completes a rectangle-shaped partial latin square.
///
/// Fails only when the rectangle condition is violated; the result is a
/// complete latin square extending the input.
pub fn complete_rectangle(
    square: &PartialLatinSquare,
) -> Result<PartialLatinSquare, RyserError> {
    let report = check_ryser(square)?;
    if !report.is_completable() {
        return Err(RyserError::Violated(report.violating_symbols().len()));
    }
    let ShapeClass::Rectangle { rows, cols } = classify_shape(square) else {
        unreachable!("checked above");
    };
    let mut out = square.clone();
    extend_columns(&mut out, rows, cols);
    extend_rows(&mut out, rows);
    Ok(out)
}

/// Fills columns `s..n` of the top `r` rows.
///
/// Bipartite multigraph: symbols versus rows, one edge per (symbol, row)
/// with the symbol missing from the row, padded to `n - s` regularity with
/// dummy rows (symbol σ receives `n - s - (r - ν(σ))` dummy edges, which the
/// rectangle condition keeps non-negative). Color `k` places its symbol in
/// column `s + k`.
fn extend_columns(square: &mut PartialLatinSquare, r: usize, s: usize) {
    let n = square.order();
    if n == s || r == 0 {
        return;
    }
    let delta = n - s;
    // A side: symbols 0..n. B side: rows 0..r, then n - r dummy rows.
    let mut graph = BipartiteGraph::new(n, n);
    let mut real_edges = Vec::new();
    let mut deficiency = Vec::with_capacity(n);
    for i in 0..n {
        let symbol = Symbol::from_index(i);
        let mut degree = 0;
        for row in 0..r {
            if square.row_missing(row).contains(symbol) {
                graph.add_edge(i, row);
                real_edges.push((i, row));
                degree += 1;
            }
        }
        assert!(degree <= delta, "rectangle condition bounds the degree");
        deficiency.push(delta - degree);
    }
    let mut dummy_row = r;
    let mut dummy_capacity = delta;
    for (i, &d) in deficiency.iter().enumerate() {
        let mut remaining = d;
        while remaining > 0 {
            let take = remaining.min(dummy_capacity);
            for _ in 0..take {
                graph.add_edge(i, dummy_row);
            }
            remaining -= take;
            dummy_capacity -= take;
            if dummy_capacity == 0 {
                dummy_row += 1;
                dummy_capacity = delta;
            }
        }
    }
    let colors = graph.edge_color();
    for (edge_index, &(i, row)) in real_edges.iter().enumerate() {
        let color = colors[edge_index];
        debug_assert!(color < delta);
        square.set(row, s + color, Some(Symbol::from_index(i)));
    }
    // Each real row had exactly n - s missing symbols with distinct colors,
    // so its cells s..n are now all filled.
    debug_assert!((0..r).all(|row| (s..n).all(|col| square.get(row, col).is_some())));
}

/// Fills rows `r..n`, given full top `r` rows.
///
/// Bipartite graph: columns versus symbols, one edge per (column, symbol)
/// with the symbol missing from the column's top `r` cells; the graph is
/// `n - r`-regular. Color `k` places its symbol in row `r + k`.
fn extend_rows(square: &mut PartialLatinSquare, r: usize) {
    let n = square.order();
    if n == r {
        return;
    }
    let mut graph = BipartiteGraph::new(n, n);
    for col in 0..n {
        let mut present = SymbolSet::new();
        for row in 0..r {
            if let Some(sym) = square.get(row, col) {
                present.insert(sym);
            }
        }
        for i in 0..n {
            let symbol = Symbol::from_index(i);
            if !present.contains(symbol) {
                graph.add_edge(col, i);
            }
        }
    }
    debug_assert_eq!(graph.max_degree(), n - r);
    let colors = graph.edge_color();
    for (edge_index, &(col, i)) in graph.edges.iter().enumerate() {
        let color = colors[edge_index];
        square.set(r + color, col, Some(Symbol::from_index(i)));
    }
}

/// Realizes a balanced framework as an L-shaped partial latin square of
/// order `n`: the symbols missing from row `i` are exactly the framework's
/// row list `i`, and likewise for columns.
///
/// Phase one fills the rightmost `n - s` columns of the top `r` rows with
/// the symbols outside each row list (graph maximum degree `n - s`,
/// asserted); phase two fills the bottom `n - r` rows from the column lists
/// and the already-placed top cells.
pub fn realize_framework(
    framework: &Framework,
    n: usize,
) -> Result<PartialLatinSquare, RealizeError> {
    framework
        .check_balanced()
        .map_err(RealizeError::NotBalanced)?;
    let (r, s, t) = (framework.r, framework.s, framework.t);
    let min = t.max(r + s);
    if n < min {
        return Err(RealizeError::OrderTooSmall { order: n, min });
    }

    let mut square = PartialLatinSquare::new_empty(n);

    // Phase one: symbols versus the top r rows; an edge means the symbol is
    // absent from the row list, so it must appear in the row's right part.
    if r > 0 && n > s {
        let mut graph = BipartiteGraph::new(n, r);
        for i in 0..n {
            let symbol = Symbol::from_index(i);
            for row in 0..r {
                if !framework.row_lists[row].contains(symbol) {
                    graph.add_edge(i, row);
                }
            }
        }
        assert_eq!(
            graph.max_degree(),
            n - s,
            "balanced lists and n >= r + s cap symbol degrees at n - s"
        );
        let colors = graph.edge_color();
        for (edge_index, &(i, row)) in graph.edges.iter().enumerate() {
            square.set(row, s + colors[edge_index], Some(Symbol::from_index(i)));
        }
    }

    // Phase two: columns versus symbols; the first s columns exclude their
    // column lists, the rest exclude what phase one already placed.
    if n > r {
        let mut graph = BipartiteGraph::new(n, n);
        for col in 0..n {
            let excluded = if col < s {
                framework.col_lists[col].clone()
            } else {
                let mut present = SymbolSet::new();
                for row in 0..r {
                    if let Some(sym) = square.get(row, col) {
                        present.insert(sym);
                    }
                }
                present
            };
            for i in 0..n {
                let symbol = Symbol::from_index(i);
                if !excluded.contains(symbol) {
                    graph.add_edge(col, i);
                }
            }
        }
        debug_assert_eq!(graph.max_degree(), n - r);
        let colors = graph.edge_color();
        for (edge_index, &(col, i)) in graph.edges.iter().enumerate() {
            square.set(r + colors[edge_index], col, Some(Symbol::from_index(i)));
        }
    }

    Ok(square)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::framework_from_lshape;
    use crate::solver;
    use crate::square::goldwasser;

    fn rectangle(n: usize, rows: &[Vec<Option<u16>>]) -> PartialLatinSquare {
        let mut full: Vec<Vec<Option<u16>>> = rows.to_vec();
        for row in full.iter_mut() {
            row.resize(n, None);
        }
        while full.len() < n {
            full.push(vec![None; n]);
        }
        PartialLatinSquare::from_rows(n, &full)
    }

    #[test]
    fn small_rectangle_is_always_completable() {
        // r + s <= n makes the required count non-positive.
        let p = rectangle(4, &[vec![Some(1), Some(2)]]);
        let report = check_ryser(&p).unwrap();
        assert!(report.is_completable());
    }

    #[test]
    fn complete_square_satisfies_ryser() {
        let p = PartialLatinSquare::from_rows(
            2,
            &[vec![Some(1), Some(2)], vec![Some(2), Some(1)]],
        );
        assert!(check_ryser(&p).unwrap().is_completable());
    }

    #[test]
    fn missing_symbol_is_a_deficit() {
        // 2x2 block over {1,2} inside order 3: symbol 3 must appear at least
        // 2 + 2 - 3 = 1 times but appears zero.
        let p = rectangle(
            3,
            &[vec![Some(1), Some(2)], vec![Some(2), Some(1)]],
        );
        let report = check_ryser(&p).unwrap();
        assert!(!report.is_completable());
        assert_eq!(report.violating_symbols(), vec![(Symbol::new(3), 1)]);
        // The solver agrees there is no completion.
        assert_eq!(
            solver::complete_pls(&p, solver::DEFAULT_BUDGET),
            solver::SearchOutcome::Exhausted
        );
        // And the single inequality for the top rows fails too.
        assert_eq!(check_hi_equivalence(&p), Ok(false));
    }

    #[test]
    fn wrong_shape_rejected() {
        assert_eq!(check_ryser(&goldwasser()), Err(RyserError::WrongShape));
    }

    #[test]
    fn empty_square_completes() {
        let p = PartialLatinSquare::new_empty(5);
        let done = complete_rectangle(&p).unwrap();
        assert_eq!(done.validate(), Ok(()));
        assert!(done.is_complete());
    }

    #[test]
    fn forced_one_by_one() {
        let p = rectangle(2, &[vec![Some(1)]]);
        let done = complete_rectangle(&p).unwrap();
        assert_eq!(done.validate(), Ok(()));
        assert!(p.extends(&done));
    }

    #[test]
    fn violated_rectangle_errors() {
        let p = rectangle(3, &[vec![Some(1), Some(2)], vec![Some(2), Some(1)]]);
        assert_eq!(complete_rectangle(&p), Err(RyserError::Violated(1)));
    }

    #[test]
    fn hi_equivalence_on_empty_rows() {
        // r = 0: the empty inequality holds.
        let p = PartialLatinSquare::new_empty(3);
        assert_eq!(check_hi_equivalence(&p), Ok(true));
    }

    #[test]
    fn realize_minimal_framework() {
        let f = Framework::new(
            1,
            1,
            2,
            vec![[Symbol::new(1)].into_iter().collect()],
            vec![[Symbol::new(1)].into_iter().collect()],
        );
        let p = realize_framework(&f, 2).unwrap();
        assert_eq!(p.validate(), Ok(()));
        assert_eq!(p.get(0, 0), None);
        assert_eq!(p.row_missing(0), [Symbol::new(1)].into_iter().collect());
        assert_eq!(p.col_missing(0), [Symbol::new(1)].into_iter().collect());
        assert_eq!(p.filled_count(), 3);
    }

    #[test]
    fn realize_round_trip_missing_sets() {
        // Build an L-shaped square, read off its framework, realize it, and
        // compare the missing sets.
        let base = complete_rectangle(&PartialLatinSquare::new_empty(6)).unwrap();
        let mut lshaped = base.clone();
        for row in 0..2 {
            for col in 0..3 {
                lshaped.set(row, col, None);
            }
        }
        let f = framework_from_lshape(&lshaped).unwrap();
        let realized = realize_framework(&f, 6).unwrap();
        assert_eq!(realized.validate(), Ok(()));
        for row in 0..2 {
            assert_eq!(realized.row_missing(row), lshaped.row_missing(row));
        }
        for col in 0..3 {
            assert_eq!(realized.col_missing(col), lshaped.col_missing(col));
        }
    }

    #[test]
    fn realize_rejects_small_order() {
        let f = Framework::new(
            1,
            1,
            2,
            vec![[Symbol::new(1)].into_iter().collect()],
            vec![[Symbol::new(1)].into_iter().collect()],
        );
        assert_eq!(
            realize_framework(&f, 1),
            Err(RealizeError::OrderTooSmall { order: 1, min: 2 })
        );
    }

    #[test]
    fn realize_rejects_unbalanced() {
        let f = Framework::new(
            1,
            1,
            2,
            vec![[Symbol::new(1)].into_iter().collect()],
            vec![[Symbol::new(2)].into_iter().collect()],
        );
        assert!(matches!(
            realize_framework(&f, 4),
            Err(RealizeError::NotBalanced(_))
        ));
    }
}
