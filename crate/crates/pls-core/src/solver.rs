//! Backtracking completion oracle.
//!
//! Ground truth for the constructive engines at desk scale: completes
//! partial latin squares, latinizes frameworks, and counts solutions.
//! Deterministic by construction: cells are picked by fewest remaining
//! candidates with (row, column) tie-breaks, values tried in ascending
//! order, and single-candidate cells are propagated eagerly.

use crate::framework::{Framework, LatinRectangle};
use crate::square::PartialLatinSquare;
use crate::symbols::{Symbol, SymbolSet};

/// Search result: distinguishes a proven absence of solutions from running
/// out of budget.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted; no solution exists.
    Exhausted,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Default node budget for the oracles.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Completes a partial latin square, or proves there is no completion.
///
/// The square must be valid; every returned completion extends the input.
pub fn complete_pls(square: &PartialLatinSquare, budget: u64) -> SearchOutcome<PartialLatinSquare> {
    let n = square.order();
    let mut grid = Grid::new(n, n, n, |_, _| SymbolSet::full(n));
    for row in 0..n {
        for col in 0..n {
            if let Some(s) = square.get(row, col) {
                grid.assign_fixed(row, col, s);
            }
        }
    }
    match grid.search_first(budget) {
        SearchOutcome::Found(cells) => {
            let mut out = square.clone();
            for (row, col, symbol) in cells {
                out.set(row, col, Some(symbol));
            }
            SearchOutcome::Found(out)
        }
        SearchOutcome::Exhausted => SearchOutcome::Exhausted,
        SearchOutcome::BudgetExhausted => SearchOutcome::BudgetExhausted,
    }
}

/// Finds a latinization of a framework, or proves there is none.
pub fn latinize_framework(framework: &Framework, budget: u64) -> SearchOutcome<LatinRectangle> {
    let array = framework.admissible_array();
    let mut grid = Grid::new(framework.r, framework.s, framework.t, |row, col| {
        array.entry(row, col).clone()
    });
    match grid.search_first(budget) {
        SearchOutcome::Found(cells) => {
            let mut values = vec![Symbol::new(1); framework.r * framework.s];
            for (row, col, symbol) in cells {
                values[row * framework.s + col] = symbol;
            }
            SearchOutcome::Found(LatinRectangle::new(framework.r, framework.s, values))
        }
        SearchOutcome::Exhausted => SearchOutcome::Exhausted,
        SearchOutcome::BudgetExhausted => SearchOutcome::BudgetExhausted,
    }
}

/// Counts completions of a square, up to `cap`. Intended for small
/// instances; the enumeration order is deterministic.
pub fn enumerate_completions(square: &PartialLatinSquare, cap: usize) -> usize {
    let n = square.order();
    let mut grid = Grid::new(n, n, n, |_, _| SymbolSet::full(n));
    for row in 0..n {
        for col in 0..n {
            if let Some(s) = square.get(row, col) {
                grid.assign_fixed(row, col, s);
            }
        }
    }
    grid.count_solutions(cap)
}

/// Counts latinizations of a framework, up to `cap`.
pub fn enumerate_latinizations(framework: &Framework, cap: usize) -> usize {
    let array = framework.admissible_array();
    let mut grid = Grid::new(framework.r, framework.s, framework.t, |row, col| {
        array.entry(row, col).clone()
    });
    grid.count_solutions(cap)
}

/// A rows-by-cols grid with per-cell candidate sets and all-different rows
/// and columns over symbols `1..=t`.
struct Grid {
    rows: usize,
    cols: usize,
    base: Vec<SymbolSet>,
    assignment: Vec<Option<Symbol>>,
    row_used: Vec<SymbolSet>,
    col_used: Vec<SymbolSet>,
    nodes: u64,
}

impl Grid {
    fn new(
        rows: usize,
        cols: usize,
        _t: usize,
        candidates: impl Fn(usize, usize) -> SymbolSet,
    ) -> Self {
        let base = (0..rows)
            .flat_map(|r| (0..cols).map(|c| candidates(r, c)).collect::<Vec<_>>())
            .collect();
        Grid {
            rows,
            cols,
            base,
            assignment: vec![None; rows * cols],
            row_used: vec![SymbolSet::new(); rows],
            col_used: vec![SymbolSet::new(); cols],
            nodes: 0,
        }
    }

    fn assign_fixed(&mut self, row: usize, col: usize, symbol: Symbol) {
        self.assignment[row * self.cols + col] = Some(symbol);
        self.row_used[row].insert(symbol);
        self.col_used[col].insert(symbol);
    }

    fn live_candidates(&self, row: usize, col: usize) -> SymbolSet {
        let mut set = self.base[row * self.cols + col].clone();
        set.subtract(&self.row_used[row]);
        set.subtract(&self.col_used[col]);
        set
    }

    /// The unassigned cell with fewest live candidates, ties by (row, col).
    fn pick_cell(&self) -> Option<(usize, usize, SymbolSet)> {
        let mut best: Option<(usize, usize, SymbolSet, usize)> = None;
        for row in 0..self.rows {
            for col in 0..self.cols {
                if self.assignment[row * self.cols + col].is_some() {
                    continue;
                }
                let cands = self.live_candidates(row, col);
                let count = cands.len();
                match &best {
                    Some((_, _, _, best_count)) if *best_count <= count => {}
                    _ => best = Some((row, col, cands, count)),
                }
                if count == 0 {
                    // Dead end; no better pick exists.
                    let (r, c, s, _) = best.unwrap();
                    return Some((r, c, s));
                }
            }
        }
        best.map(|(r, c, s, _)| (r, c, s))
    }

    fn assign(&mut self, row: usize, col: usize, symbol: Symbol, trail: &mut Vec<(usize, usize)>) {
        self.assignment[row * self.cols + col] = Some(symbol);
        self.row_used[row].insert(symbol);
        self.col_used[col].insert(symbol);
        trail.push((row, col));
        self.nodes += 1;
    }

    fn undo_to(&mut self, mark: usize, trail: &mut Vec<(usize, usize)>) {
        while trail.len() > mark {
            let (row, col) = trail.pop().unwrap();
            let symbol = self.assignment[row * self.cols + col].take().unwrap();
            self.row_used[row].remove(symbol);
            self.col_used[col].remove(symbol);
        }
    }

    /// Assigns every cell whose live candidate set is a singleton, repeating
    /// until a fixpoint. Returns false on a contradiction (an empty cell
    /// with no candidates).
    fn propagate_singles(&mut self, trail: &mut Vec<(usize, usize)>) -> bool {
        loop {
            let mut changed = false;
            for row in 0..self.rows {
                for col in 0..self.cols {
                    if self.assignment[row * self.cols + col].is_some() {
                        continue;
                    }
                    let cands = self.live_candidates(row, col);
                    match cands.len() {
                        0 => return false,
                        1 => {
                            self.assign(row, col, cands.first().unwrap(), trail);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }


    fn solution(&self) -> Vec<(usize, usize, Symbol)> {
        let mut cells = Vec::new();
        for row in 0..self.rows {
            for col in 0..self.cols {
                if let Some(s) = self.assignment[row * self.cols + col] {
                    cells.push((row, col, s));
                }
            }
        }
        cells
    }

    fn search_first(&mut self, budget: u64) -> SearchOutcome<Vec<(usize, usize, Symbol)>> {
        let mut trail = Vec::new();
        match self.dfs(budget, &mut trail) {
            Dfs::Solution => SearchOutcome::Found(self.solution()),
            Dfs::Exhausted => SearchOutcome::Exhausted,
            Dfs::OutOfBudget => SearchOutcome::BudgetExhausted,
        }
    }

    fn dfs(&mut self, budget: u64, trail: &mut Vec<(usize, usize)>) -> Dfs {
        if self.nodes > budget {
            return Dfs::OutOfBudget;
        }
        let mark = trail.len();
        if !self.propagate_singles(trail) {
            self.undo_to(mark, trail);
            return Dfs::Exhausted;
        }
        let Some((row, col, cands)) = self.pick_cell() else {
            // Every cell assigned.
            return Dfs::Solution;
        };
        for symbol in cands.iter() {
            let branch_mark = trail.len();
            self.assign(row, col, symbol, trail);
            match self.dfs(budget, trail) {
                Dfs::Solution => return Dfs::Solution,
                Dfs::OutOfBudget => {
                    self.undo_to(mark, trail);
                    return Dfs::OutOfBudget;
                }
                Dfs::Exhausted => self.undo_to(branch_mark, trail),
            }
        }
        self.undo_to(mark, trail);
        Dfs::Exhausted
    }

    fn count_solutions(&mut self, cap: usize) -> usize {
        let mut trail = Vec::new();
        let mut count = 0;
        self.count_dfs(cap, &mut count, &mut trail);
        count
    }

    fn count_dfs(&mut self, cap: usize, count: &mut usize, trail: &mut Vec<(usize, usize)>) {
        if *count >= cap {
            return;
        }
        let mark = trail.len();
        if !self.propagate_singles(trail) {
            self.undo_to(mark, trail);
            return;
        }
        match self.pick_cell() {
            None => {
                *count += 1;
            }
            Some((row, col, cands)) => {
                for symbol in cands.iter() {
                    if *count >= cap {
                        break;
                    }
                    let branch_mark = trail.len();
                    self.assign(row, col, symbol, trail);
                    self.count_dfs(cap, count, trail);
                    self.undo_to(branch_mark, trail);
                }
            }
        }
        self.undo_to(mark, trail);
    }
}

enum Dfs {
    Solution,
    Exhausted,
    OutOfBudget,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::goldwasser;
    use crate::symbols::Symbol;

    #[test]
    fn goldwasser_is_incompletable() {
        let outcome = complete_pls(&goldwasser(), DEFAULT_BUDGET);
        assert_eq!(outcome, SearchOutcome::Exhausted);
    }

    #[test]
    fn complete_square_returns_itself() {
        let p = PartialLatinSquare::from_rows(
            2,
            &[vec![Some(1), Some(2)], vec![Some(2), Some(1)]],
        );
        assert_eq!(complete_pls(&p, DEFAULT_BUDGET), SearchOutcome::Found(p));
    }

    #[test]
    fn forced_completion() {
        let mut p = PartialLatinSquare::new_empty(2);
        p.set(0, 0, Some(Symbol::new(1)));
        let done = complete_pls(&p, DEFAULT_BUDGET).found().unwrap();
        assert_eq!(done.validate(), Ok(()));
        assert!(p.extends(&done));
        assert_eq!(done.get(1, 1), Some(Symbol::new(1)));
        assert_eq!(done.get(0, 1), Some(Symbol::new(2)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_completions(&PartialLatinSquare::new_empty(1), 10), 1);
        assert_eq!(enumerate_completions(&PartialLatinSquare::new_empty(2), 10), 2);
        assert_eq!(enumerate_completions(&PartialLatinSquare::new_empty(3), 100), 12);
        // The cap is respected.
        assert_eq!(enumerate_completions(&PartialLatinSquare::new_empty(3), 5), 5);
    }

    #[test]
    fn latinize_singleton_framework() {
        let f = Framework::new(
            1,
            1,
            5,
            vec![[Symbol::new(5)].into_iter().collect()],
            vec![[Symbol::new(5)].into_iter().collect()],
        );
        let rect = latinize_framework(&f, DEFAULT_BUDGET).found().unwrap();
        assert_eq!(rect.get(0, 0), Symbol::new(5));
    }

    #[test]
    fn latinization_enumeration_counts() {
        let full: SymbolSet = [Symbol::new(1), Symbol::new(2)].into_iter().collect();
        let f = Framework::new(2, 2, 2, vec![full.clone(); 2], vec![full; 2]);
        assert_eq!(enumerate_latinizations(&f, 10), 2);
    }

    #[test]
    fn latinize_empty_entry_is_exhausted() {
        let f = Framework::new(
            1,
            1,
            4,
            vec![[Symbol::new(1)].into_iter().collect()],
            vec![[Symbol::new(2)].into_iter().collect()],
        );
        assert_eq!(
            latinize_framework(&f, DEFAULT_BUDGET),
            SearchOutcome::Exhausted
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let p = PartialLatinSquare::new_empty(9);
        assert_eq!(complete_pls(&p, 3), SearchOutcome::BudgetExhausted);
    }

    #[test]
    fn determinism() {
        let p = PartialLatinSquare::new_empty(5);
        let a = complete_pls(&p, DEFAULT_BUDGET).found().unwrap();
        let b = complete_pls(&p, DEFAULT_BUDGET).found().unwrap();
        assert_eq!(a, b);
    }
}
