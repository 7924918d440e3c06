//! Frameworks: per-row and per-column symbol lists constraining an `r` by
//! `s` latin rectangle, their admissible symbol arrays, latinizations, and
//! the natural framework of an L-shaped square.

use thiserror::Error;

use crate::shape::lshape_block;
use crate::square::PartialLatinSquare;
use crate::symbols::{Symbol, SymbolSet};

/// A tuple `(r, s, t, row lists, column lists)` with lists over `{1..=t}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Framework {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub row_lists: Vec<SymbolSet>,
    pub col_lists: Vec<SymbolSet>,
}

/// Failure of the balance conditions.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum BalanceError {
    #[error("row list {} has {size} symbols, expected {expected}", row + 1)]
    RowListSize { row: usize, size: usize, expected: usize },
    #[error("column list {} has {size} symbols, expected {expected}", col + 1)]
    ColListSize { col: usize, size: usize, expected: usize },
    #[error("symbol {symbol} appears {row_count} times in row lists but {col_count} in column lists")]
    SymbolCount {
        symbol: Symbol,
        row_count: usize,
        col_count: usize,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("square is not L-shaped: empty cells do not form an upper-left rectangle")]
pub struct NotLShaped;

impl Framework {
    pub fn new(
        r: usize,
        s: usize,
        t: usize,
        row_lists: Vec<SymbolSet>,
        col_lists: Vec<SymbolSet>,
    ) -> Self {
        assert_eq!(row_lists.len(), r);
        assert_eq!(col_lists.len(), s);
        Framework { r, s, t, row_lists, col_lists }
    }

    /// Checks the balance conditions: row lists of size `s`, column lists of
    /// size `r`, and each symbol appearing equally often in row lists and
    /// column lists.
    pub fn check_balanced(&self) -> Result<(), BalanceError> {
        for (row, list) in self.row_lists.iter().enumerate() {
            if list.len() != self.s {
                return Err(BalanceError::RowListSize {
                    row,
                    size: list.len(),
                    expected: self.s,
                });
            }
        }
        for (col, list) in self.col_lists.iter().enumerate() {
            if list.len() != self.r {
                return Err(BalanceError::ColListSize {
                    col,
                    size: list.len(),
                    expected: self.r,
                });
            }
        }
        for i in 0..self.t {
            let symbol = Symbol::from_index(i);
            let row_count = self.row_lists.iter().filter(|l| l.contains(symbol)).count();
            let col_count = self.col_lists.iter().filter(|l| l.contains(symbol)).count();
            if row_count != col_count {
                return Err(BalanceError::SymbolCount { symbol, row_count, col_count });
            }
        }
        Ok(())
    }

    pub fn is_balanced(&self) -> bool {
        self.check_balanced().is_ok()
    }

    /// The entrywise intersections `row list ∩ column list`.
    pub fn admissible_array(&self) -> AdmissibleArray {
        let entries = (0..self.r)
            .flat_map(|i| {
                (0..self.s).map(move |j| self.row_lists[i].intersection(&self.col_lists[j]))
            })
            .collect();
        AdmissibleArray {
            rows: self.r,
            cols: self.s,
            entries,
        }
    }

    /// How often `symbol` occurs across the row lists.
    pub fn row_occurrences(&self, symbol: Symbol) -> usize {
        self.row_lists.iter().filter(|l| l.contains(symbol)).count()
    }
}

/// The natural framework of an L-shaped square: row lists are the symbols
/// missing from the first `r` rows, column lists those missing from the
/// first `s` columns, and `t` is the order. The result is always balanced.
///
/// A complete square yields the degenerate framework with no lists.
pub fn framework_from_lshape(square: &PartialLatinSquare) -> Result<Framework, NotLShaped> {
    let n = square.order();
    let (r, s) = lshape_block(square, n).ok_or(NotLShaped)?;
    let row_lists = (0..r).map(|i| square.row_missing(i)).collect();
    let col_lists = (0..s).map(|j| square.col_missing(j)).collect();
    Ok(Framework::new(r, s, n, row_lists, col_lists))
}

/// An `rows` by `cols` array of symbol sets; entry `(i, j)` holds the
/// symbols admissible in cell `(i, j)` of a latinization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissibleArray {
    rows: usize,
    cols: usize,
    entries: Vec<SymbolSet>,
}

impl AdmissibleArray {
    pub fn new(rows: usize, cols: usize, entries: Vec<SymbolSet>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        AdmissibleArray { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &SymbolSet {
        &self.entries[row * self.cols + col]
    }

    /// Union of the entries in a row.
    pub fn row_union(&self, row: usize) -> SymbolSet {
        (0..self.cols).fold(SymbolSet::new(), |acc, col| acc.union(self.entry(row, col)))
    }

    /// Union of the entries in a column.
    pub fn col_union(&self, col: usize) -> SymbolSet {
        (0..self.rows).fold(SymbolSet::new(), |acc, row| acc.union(self.entry(row, col)))
    }
}

/// A fully filled latin rectangle; entries may exceed the rectangle
/// dimensions (they live in some universe `{1..=t}`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatinRectangle {
    rows: usize,
    cols: usize,
    grid: Vec<Symbol>,
}

impl LatinRectangle {
    pub fn new(rows: usize, cols: usize, grid: Vec<Symbol>) -> Self {
        assert_eq!(grid.len(), rows * cols);
        LatinRectangle { rows, cols, grid }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Symbol {
        self.grid[row * self.cols + col]
    }

    /// No symbol repeated in any row or column.
    pub fn is_latin(&self) -> bool {
        for i in 0..self.rows {
            let mut seen = SymbolSet::new();
            for j in 0..self.cols {
                let s = self.get(i, j);
                if seen.contains(s) {
                    return false;
                }
                seen.insert(s);
            }
        }
        for j in 0..self.cols {
            let mut seen = SymbolSet::new();
            for i in 0..self.rows {
                let s = self.get(i, j);
                if seen.contains(s) {
                    return false;
                }
                seen.insert(s);
            }
        }
        true
    }

    /// Whether this rectangle is a latinization of `framework`: latin, and
    /// every entry admissible for its cell.
    pub fn is_latinization_of(&self, framework: &Framework) -> bool {
        if self.rows != framework.r || self.cols != framework.s {
            return false;
        }
        if !self.is_latin() {
            return false;
        }
        let array = framework.admissible_array();
        (0..self.rows)
            .all(|i| (0..self.cols).all(|j| array.entry(i, j).contains(self.get(i, j))))
    }
}
