//! Partial latin squares: Hall's Condition certification, constructive
//! completion, balanced-framework realization, and a hardness-gadget
//! reduction from hypergraph coloring.
//!
//! The pieces fit together like this:
//!
//! - [`square`] holds the grid model, validation and support computation;
//!   [`shape`] classifies occupancy patterns.
//! - [`graphs`] provides the exact engines everything else runs on:
//!   bipartite matching with vertex covers, integral maximum flow with
//!   minimum cuts, proper edge coloring, and the Dulmage-Mendelsohn merge.
//! - [`hall`] evaluates Hall inequalities by matchings, exhaustively
//!   certifies or refutes Hall's Condition at desk scale, and carries the
//!   closed forms for rectangle shapes.
//! - [`ryser`] completes rectangle-shaped squares and realizes balanced
//!   frameworks as L-shaped squares; [`holes`] completes rectangles with at
//!   most one empty cell per column, surfacing violated inequalities as
//!   certificates.
//! - [`reduction`] maps 4-uniform 4-regular hypergraphs to L-shaped squares
//!   whose completability encodes 2-in-4 colorability.
//! - [`solver`] is the independent backtracking oracle; [`generate`] builds
//!   seeded test instances; [`formats`] reads and writes the file formats.
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs; everything is safe to share across threads.
//!
//! ```
//! use pls_core::{goldwasser, hall, solver};
//!
//! // The demo square satisfies Hall's Condition on every empty-cell subset...
//! let square = goldwasser();
//! let report = hall::check_hc_exhaustive(&square, 20).unwrap();
//! assert_eq!(report.verdict, hall::HallVerdict::Satisfied);
//! assert_eq!(report.sets_checked, Some(4096));
//!
//! // ...yet no completion exists.
//! let outcome = solver::complete_pls(&square, solver::DEFAULT_BUDGET);
//! assert_eq!(outcome, solver::SearchOutcome::Exhausted);
//! ```

pub mod formats;
pub mod framework;
pub mod generate;
pub mod graphs;
pub mod hall;
pub mod holes;
pub mod reduction;
pub mod ryser;
pub mod shape;
pub mod solver;
pub mod square;
pub mod symbols;

pub use framework::{framework_from_lshape, AdmissibleArray, Framework, LatinRectangle};
pub use shape::{classify_shape, ShapeClass};
pub use square::{goldwasser, CellRef, LatinError, PartialLatinSquare};
pub use symbols::{Symbol, SymbolSet};
