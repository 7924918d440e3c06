//! Shape classification of partial latin squares.
//!
//! The completion engines dispatch on the occupancy pattern: a filled
//! upper-left rectangle, a rectangle with at most one empty cell per column,
//! an L-shape (everything filled except an empty upper-left rectangle), or
//! none of these.

use crate::square::{CellRef, PartialLatinSquare};

/// The occupancy pattern of a partial latin square.
///
/// All dimensions refer to upper-left blocks. A complete square is
/// `Rectangle(n, n)`; an all-empty square is `Rectangle(0, 0)`. When several
/// variants apply, the more specific one wins: `Rectangle` over
/// `RectangleWithColumnHoles` over `LShaped` over `General`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ShapeClass {
    /// Filled cells are exactly the upper-left `rows` by `cols` block.
    Rectangle { rows: usize, cols: usize },
    /// Filled cells are the upper-left block minus `holes`, with at most one
    /// hole per column. Holes are listed in row-major order.
    RectangleWithColumnHoles {
        rows: usize,
        cols: usize,
        holes: Vec<CellRef>,
    },
    /// Empty cells are exactly the upper-left `rows` by `cols` block.
    LShaped { rows: usize, cols: usize },
    General,
}

/// Classifies the occupancy pattern of `square`.
pub fn classify_shape(square: &PartialLatinSquare) -> ShapeClass {
    let n = square.order();
    let filled = square.filled_cells();

    // Minimal enclosing block of the filled region.
    let rows = filled.iter().map(|c| c.row + 1).max().unwrap_or(0);
    let cols = filled.iter().map(|c| c.col + 1).max().unwrap_or(0);

    if filled.len() == rows * cols {
        // Nothing outside the block (by maximality) and the block is full.
        return ShapeClass::Rectangle { rows, cols };
    }

    // Maximality of the block puts every filled cell inside it, so the square
    // is always "block minus holes"; the shape only counts when no column has
    // two holes.
    let holes: Vec<CellRef> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| CellRef::new(r, c)))
        .filter(|&cell| !square.is_filled(cell))
        .collect();
    let mut per_column = vec![0usize; cols];
    for hole in &holes {
        per_column[hole.col] += 1;
    }
    if per_column.iter().all(|&count| count <= 1) {
        return ShapeClass::RectangleWithColumnHoles { rows, cols, holes };
    }

    if let Some((rows, cols)) = lshape_block(square, n) {
        return ShapeClass::LShaped { rows, cols };
    }

    ShapeClass::General
}

/// If the empty region is exactly an upper-left block, returns its size.
pub(crate) fn lshape_block(square: &PartialLatinSquare, n: usize) -> Option<(usize, usize)> {
    let empty = square.empty_cells();
    if empty.is_empty() {
        return Some((0, 0));
    }
    let rows = empty.iter().map(|c| c.row + 1).max().unwrap();
    let cols = empty.iter().map(|c| c.col + 1).max().unwrap();
    if rows > n || cols > n {
        return None;
    }
    if empty.len() == rows * cols && empty.iter().all(|c| c.row < rows && c.col < cols) {
        Some((rows, cols))
    } else {
        None
    }
}
