//! Symbols and symbol sets.
//!
//! A symbol is a value in `1..=t` for some universe size `t` (the order of a
//! square, or the symbol universe of a framework). Symbol sets are small
//! bitsets; they are the working currency of support computation, framework
//! lists and solver candidate tracking.

use std::fmt;
use std::num::NonZeroU16;

/// A symbol, stored as its 1-based value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(NonZeroU16);

impl Symbol {
    /// Creates a symbol from its 1-based value.
    ///
    /// Panics if `value` is zero.
    pub fn new(value: u16) -> Self {
        Symbol(NonZeroU16::new(value).expect("symbol values are 1-based"))
    }

    /// Creates a symbol from a 0-based index.
    pub fn from_index(index: usize) -> Self {
        Symbol::new(u16::try_from(index + 1).expect("symbol index out of u16 range"))
    }

    /// The 1-based value, as written in file formats and messages.
    pub fn value(self) -> u16 {
        self.0.get()
    }

    /// The 0-based index, for array addressing.
    pub fn index(self) -> usize {
        usize::from(self.0.get()) - 1
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol({})", self.0)
    }
}

/// A set of symbols, backed by a bitset.
#[derive(Clone, Default)]
pub struct SymbolSet {
    words: Vec<u64>,
}

// Contents decide equality; trailing zero words do not.
impl PartialEq for SymbolSet {
    fn eq(&self, other: &Self) -> bool {
        let n = self.words.len().max(other.words.len());
        (0..n).all(|i| {
            self.words.get(i).copied().unwrap_or(0) == other.words.get(i).copied().unwrap_or(0)
        })
    }
}

impl Eq for SymbolSet {}

impl SymbolSet {
    pub fn new() -> Self {
        SymbolSet { words: Vec::new() }
    }

    /// The set `{1, ..., t}`.
    pub fn full(t: usize) -> Self {
        let mut set = SymbolSet::new();
        for i in 0..t {
            set.insert(Symbol::from_index(i));
        }
        set
    }

    pub fn insert(&mut self, symbol: Symbol) {
        let i = symbol.index();
        let word = i / 64;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, symbol: Symbol) {
        let i = symbol.index();
        let word = i / 64;
        if word < self.words.len() {
            self.words[word] &= !(1 << (i % 64));
        }
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        let i = symbol.index();
        let word = i / 64;
        word < self.words.len() && self.words[word] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &SymbolSet) -> SymbolSet {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        SymbolSet { words }
    }

    pub fn union(&self, other: &SymbolSet) -> SymbolSet {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| {
                self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0)
            })
            .collect();
        SymbolSet { words }
    }

    /// Removes every symbol of `other` from `self`.
    pub fn subtract(&mut self, other: &SymbolSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset_of(&self, other: &SymbolSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    /// Iterates the symbols in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(Symbol::from_index(wi * 64 + b))
                }
            })
        })
    }

    /// The smallest symbol in the set, if any.
    pub fn first(&self) -> Option<Symbol> {
        self.iter().next()
    }
}

impl FromIterator<Symbol> for SymbolSet {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        let mut set = SymbolSet::new();
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Debug for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|s| s.value()))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(values: &[u16]) -> SymbolSet {
        values.iter().map(|&v| Symbol::new(v)).collect()
    }

    #[test]
    fn insert_contains_remove() {
        let mut s = SymbolSet::new();
        assert!(s.is_empty());
        s.insert(Symbol::new(3));
        s.insert(Symbol::new(100));
        assert!(s.contains(Symbol::new(3)));
        assert!(s.contains(Symbol::new(100)));
        assert!(!s.contains(Symbol::new(99)));
        assert_eq!(s.len(), 2);
        s.remove(Symbol::new(3));
        assert!(!s.contains(Symbol::new(3)));
    }

    #[test]
    fn set_algebra() {
        let a = set(&[1, 2, 5]);
        let b = set(&[2, 5, 9]);
        assert_eq!(a.intersection(&b), set(&[2, 5]));
        assert_eq!(a.union(&b), set(&[1, 2, 5, 9]));
        assert!(set(&[2, 5]).is_subset_of(&a));
        assert!(!set(&[2, 9]).is_subset_of(&a));
    }

    #[test]
    fn iteration_is_ascending() {
        let s = set(&[70, 2, 64, 1]);
        let values: Vec<u16> = s.iter().map(|sym| sym.value()).collect();
        assert_eq!(values, vec![1, 2, 64, 70]);
        assert_eq!(s.first(), Some(Symbol::new(1)));
    }

    #[test]
    fn full_set() {
        let s = SymbolSet::full(6);
        assert_eq!(s.len(), 6);
        assert!(s.contains(Symbol::new(6)));
        assert!(!s.contains(Symbol::new(7)));
    }
}
