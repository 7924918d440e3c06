//! Seeded test-instance generators.
//!
//! Complete squares come from a cyclic square scrambled by random row,
//! column and symbol permutations; erasing cells from those yields
//! completable, Hall-satisfying instances by construction. Greedy random
//! fills (not erasures) produce shapes with no completability guarantee,
//! useful for exercising violation paths.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::square::PartialLatinSquare;
use crate::symbols::{Symbol, SymbolSet};

/// A deterministic generator seeded with a 64-bit value.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A complete latin square of order `n`: the cyclic square under uniformly
/// random row, column and symbol permutations.
pub fn random_latin_square(n: usize, rng: &mut ChaCha8Rng) -> PartialLatinSquare {
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut symbols: Vec<usize> = (0..n).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    symbols.shuffle(rng);
    let mut square = PartialLatinSquare::new_empty(n);
    for r in 0..n {
        for c in 0..n {
            let value = symbols[(r + c) % n];
            square.set(rows[r], cols[c], Some(Symbol::from_index(value)));
        }
    }
    debug_assert_eq!(square.validate(), Ok(()));
    square
}

/// Keeps only the upper-left `r` by `s` block of a complete square.
pub fn erase_to_rectangle(square: &PartialLatinSquare, r: usize, s: usize) -> PartialLatinSquare {
    let n = square.order();
    let mut out = square.clone();
    for row in 0..n {
        for col in 0..n {
            if row >= r || col >= s {
                out.set(row, col, None);
            }
        }
    }
    out
}

/// Empties the upper-left `r` by `s` block of a complete square.
pub fn erase_to_lshape(square: &PartialLatinSquare, r: usize, s: usize) -> PartialLatinSquare {
    let mut out = square.clone();
    for row in 0..r {
        for col in 0..s {
            out.set(row, col, None);
        }
    }
    out
}

/// Erases to the upper-left rectangle and then punches up to `holes` extra
/// empty cells inside it, at most one per column.
pub fn erase_to_rectangle_with_holes(
    square: &PartialLatinSquare,
    r: usize,
    s: usize,
    holes: usize,
    rng: &mut ChaCha8Rng,
) -> PartialLatinSquare {
    let mut out = erase_to_rectangle(square, r, s);
    let mut columns: Vec<usize> = (0..s).collect();
    columns.shuffle(rng);
    for &col in columns.iter().take(holes.min(s)) {
        if r == 0 {
            break;
        }
        let row = rng.gen_range(0..r);
        out.set(row, col, None);
    }
    out
}

/// Greedily fills the upper-left `r` by `s` block cell by cell with a random
/// admissible symbol. `None` when the greedy order jams; retry with another
/// seed. No completability or Hall guarantee, by design.
pub fn greedy_random_rectangle(
    n: usize,
    r: usize,
    s: usize,
    rng: &mut ChaCha8Rng,
) -> Option<PartialLatinSquare> {
    let mut square = PartialLatinSquare::new_empty(n);
    for row in 0..r {
        for col in 0..s {
            let mut allowed = SymbolSet::full(n);
            allowed.subtract(&square.row_symbols(row));
            allowed.subtract(&square.col_symbols(col));
            let options: Vec<Symbol> = allowed.iter().collect();
            if options.is_empty() {
                return None;
            }
            let pick = options[rng.gen_range(0..options.len())];
            square.set(row, col, Some(pick));
        }
    }
    Some(square)
}

/// Greedy random rectangle with up to `holes` cells left empty, at most one
/// per column.
pub fn greedy_random_rectangle_with_holes(
    n: usize,
    r: usize,
    s: usize,
    holes: usize,
    rng: &mut ChaCha8Rng,
) -> Option<PartialLatinSquare> {
    let mut square = greedy_random_rectangle(n, r, s, rng)?;
    if r == 0 {
        return Some(square);
    }
    let mut columns: Vec<usize> = (0..s).collect();
    columns.shuffle(rng);
    for &col in columns.iter().take(holes.min(s)) {
        let row = rng.gen_range(0..r);
        square.set(row, col, None);
    }
    Some(square)
}
