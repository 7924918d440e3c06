//! Partial latin squares: the grid data model, validation and support
//! computation.
//!
//! Rows, columns and cells are 0-based internally; every external surface
//! (formats, diagnostics, `Display`) converts to the 1-based convention.

use std::fmt;

use thiserror::Error;

use crate::symbols::{Symbol, SymbolSet};

/// A cell position. Coordinates are 0-based; `Display` prints them 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CellRef {
    pub row: usize,
    pub col: usize,
}

impl CellRef {
    pub fn new(row: usize, col: usize) -> Self {
        CellRef { row, col }
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

/// A violation of the latin property or the symbol range.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum LatinError {
    #[error("duplicate symbol {symbol} in row {}", row + 1)]
    DuplicateInRow { row: usize, symbol: Symbol },
    #[error("duplicate symbol {symbol} in column {}", col + 1)]
    DuplicateInColumn { col: usize, symbol: Symbol },
    #[error("symbol {value} out of range 1..={order} at cell {cell}")]
    SymbolOutOfRange { cell: CellRef, value: u16, order: usize },
}

/// An `n` by `n` grid of optionally filled cells.
///
/// The grid itself places no latin-property restriction on its contents;
/// [`PartialLatinSquare::validate`] checks it. Everything downstream expects
/// validated squares.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialLatinSquare {
    n: usize,
    grid: Vec<Option<Symbol>>,
}

impl PartialLatinSquare {
    /// An all-empty square of order `n`.
    pub fn new_empty(n: usize) -> Self {
        PartialLatinSquare {
            n,
            grid: vec![None; n * n],
        }
    }

    /// Builds a square from rows of optional 1-based values.
    ///
    /// Panics if the row count or any row length differs from `n`; does not
    /// check the latin property.
    pub fn from_rows(n: usize, rows: &[Vec<Option<u16>>]) -> Self {
        assert_eq!(rows.len(), n, "expected {n} rows");
        let mut square = PartialLatinSquare::new_empty(n);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "expected {n} cells in row {}", r + 1);
            for (c, &value) in row.iter().enumerate() {
                square.grid[r * n + c] = value.map(Symbol::new);
            }
        }
        square
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Symbol> {
        self.grid[row * self.n + col]
    }

    /// Sets or clears a cell. No latin-property check.
    pub fn set(&mut self, row: usize, col: usize, value: Option<Symbol>) {
        self.grid[row * self.n + col] = value;
    }

    pub fn is_filled(&self, cell: CellRef) -> bool {
        self.get(cell.row, cell.col).is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.grid.iter().all(|c| c.is_some())
    }

    pub fn filled_count(&self) -> usize {
        self.grid.iter().filter(|c| c.is_some()).count()
    }

    /// Empty cells in row-major order.
    pub fn empty_cells(&self) -> Vec<CellRef> {
        let mut cells = Vec::new();
        for row in 0..self.n {
            for col in 0..self.n {
                if self.get(row, col).is_none() {
                    cells.push(CellRef::new(row, col));
                }
            }
        }
        cells
    }

    /// Filled cells in row-major order.
    pub fn filled_cells(&self) -> Vec<CellRef> {
        let mut cells = Vec::new();
        for row in 0..self.n {
            for col in 0..self.n {
                if self.get(row, col).is_some() {
                    cells.push(CellRef::new(row, col));
                }
            }
        }
        cells
    }

    /// Checks the latin property and the symbol range.
    ///
    /// Returns the first offence in row-major scan order: range errors for a
    /// cell are reported before duplicate errors involving it.
    pub fn validate(&self) -> Result<(), LatinError> {
        let n = self.n;
        for row in 0..n {
            for col in 0..n {
                if let Some(s) = self.get(row, col) {
                    if usize::from(s.value()) > n {
                        return Err(LatinError::SymbolOutOfRange {
                            cell: CellRef::new(row, col),
                            value: s.value(),
                            order: n,
                        });
                    }
                }
            }
        }
        for row in 0..n {
            let mut seen = SymbolSet::new();
            for col in 0..n {
                if let Some(s) = self.get(row, col) {
                    if seen.contains(s) {
                        return Err(LatinError::DuplicateInRow { row, symbol: s });
                    }
                    seen.insert(s);
                }
            }
        }
        for col in 0..n {
            let mut seen = SymbolSet::new();
            for row in 0..n {
                if let Some(s) = self.get(row, col) {
                    if seen.contains(s) {
                        return Err(LatinError::DuplicateInColumn { col, symbol: s });
                    }
                    seen.insert(s);
                }
            }
        }
        Ok(())
    }

    /// Symbols present in a row.
    pub fn row_symbols(&self, row: usize) -> SymbolSet {
        (0..self.n).filter_map(|col| self.get(row, col)).collect()
    }

    /// Symbols present in a column.
    pub fn col_symbols(&self, col: usize) -> SymbolSet {
        (0..self.n).filter_map(|row| self.get(row, col)).collect()
    }

    /// Symbols missing from a row: not in any filled cell of the row.
    pub fn row_missing(&self, row: usize) -> SymbolSet {
        let mut missing = SymbolSet::full(self.n);
        missing.subtract(&self.row_symbols(row));
        missing
    }

    /// Symbols missing from a column.
    pub fn col_missing(&self, col: usize) -> SymbolSet {
        let mut missing = SymbolSet::full(self.n);
        missing.subtract(&self.col_symbols(col));
        missing
    }

    /// The set of symbols supported by a cell: a filled cell supports exactly
    /// its content, an empty cell supports every symbol missing from both its
    /// row and its column.
    pub fn support_set(&self, cell: CellRef) -> SymbolSet {
        match self.get(cell.row, cell.col) {
            Some(s) => [s].into_iter().collect(),
            None => self
                .row_missing(cell.row)
                .intersection(&self.col_missing(cell.col)),
        }
    }

    /// Whether `cell` supports `symbol`.
    pub fn supports(&self, cell: CellRef, symbol: Symbol) -> bool {
        match self.get(cell.row, cell.col) {
            Some(s) => s == symbol,
            None => {
                self.row_missing(cell.row).contains(symbol)
                    && self.col_missing(cell.col).contains(symbol)
            }
        }
    }

    /// The number of times `symbol` appears in the square.
    pub fn nu(&self, symbol: Symbol) -> usize {
        self.grid.iter().filter(|&&c| c == Some(symbol)).count()
    }

    /// True if `other` agrees with `self` on every filled cell of `self`.
    pub fn extends(&self, other: &PartialLatinSquare) -> bool {
        self.n == other.n
            && self
                .grid
                .iter()
                .zip(&other.grid)
                .all(|(a, b)| a.is_none() || a == b)
    }
}

impl fmt::Debug for PartialLatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PartialLatinSquare(order {})", self.n)?;
        for row in 0..self.n {
            for col in 0..self.n {
                if col > 0 {
                    write!(f, " ")?;
                }
                match self.get(row, col) {
                    Some(s) => write!(f, "{s}")?,
                    None => write!(f, ".")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The incompletable order-6 square that satisfies Hall's Condition: three
/// full top rows and two full left columns, twelve empty cells.
pub fn goldwasser() -> PartialLatinSquare {
    let rows: Vec<Vec<Option<u16>>> = vec![
        vec![Some(1), Some(2), Some(3), Some(4), Some(5), Some(6)],
        vec![Some(3), Some(6), Some(1), Some(2), Some(4), Some(5)],
        vec![Some(5), Some(4), Some(2), Some(6), Some(3), Some(1)],
        vec![Some(2), Some(5), None, None, None, None],
        vec![Some(4), Some(1), None, None, None, None],
        vec![Some(6), Some(3), None, None, None, None],
    ];
    PartialLatinSquare::from_rows(6, &rows)
}
