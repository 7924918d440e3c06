//! Randomized cross-module properties, seeded for determinism.
//!
//! Covers the invariants that tie modules together: support recomputation,
//! framework balance, inequality behaviour under adding or removing filled
//! cells, the matching lower bound for evenly-missing symbols, closed-form
//! alpha equivalence, the step-1 count bound, and solver agreement.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use pls_core::framework::framework_from_lshape;
use pls_core::generate::{
    erase_to_lshape, erase_to_rectangle_with_holes, greedy_random_rectangle_with_holes,
    random_latin_square, rng_from_seed,
};
use pls_core::graphs::FlowNetwork;
use pls_core::hall::{
    alpha, alpha_closed_holes, alpha_closed_rectangle, check_hi, check_hc_exhaustive,
    top_rows_cells, HallVerdict,
};
use pls_core::holes::{compute_mu, HoleInstance};
use pls_core::ryser::check_hi_equivalence;
use pls_core::shape::{classify_shape, ShapeClass};
use pls_core::solver::{complete_pls, SearchOutcome, DEFAULT_BUDGET};
use pls_core::square::{CellRef, PartialLatinSquare};
use pls_core::symbols::Symbol;
use pls_core::{formats, ShapeClass as Shape};

/// Brute-force reference for alpha: the largest subset of `cells` that
/// supports `symbol` with no shared row or column, by subset enumeration.
fn brute_force_alpha(square: &PartialLatinSquare, symbol: Symbol, cells: &[CellRef]) -> usize {
    let mut unique: Vec<CellRef> = cells.to_vec();
    unique.sort_unstable();
    unique.dedup();
    assert!(unique.len() <= 16, "oracle is for small sets");
    let mut best = 0;
    for mask in 0u32..(1 << unique.len()) {
        let subset: Vec<CellRef> = unique
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        if subset.len() <= best {
            continue;
        }
        let supports_all = subset.iter().all(|&c| square.supports(c, symbol));
        let independent = subset.iter().enumerate().all(|(i, a)| {
            subset[i + 1..]
                .iter()
                .all(|b| a.row != b.row && a.col != b.col)
        });
        if supports_all && independent {
            best = subset.len();
        }
    }
    best
}

/// A valid partial square: random erasure of a random complete square.
fn random_partial(n: usize, keep_prob: f64, rng: &mut ChaCha8Rng) -> PartialLatinSquare {
    let full = random_latin_square(n, rng);
    let mut out = full.clone();
    for row in 0..n {
        for col in 0..n {
            if rng.gen_bool(1.0 - keep_prob) {
                out.set(row, col, None);
            }
        }
    }
    out
}

fn random_cell_subset(cells: &[CellRef], rng: &mut ChaCha8Rng) -> Vec<CellRef> {
    cells
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.5))
        .collect()
}

#[test]
fn support_is_intersection_of_missing_sets() {
    let mut rng = rng_from_seed(101);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let square = random_partial(n, 0.6, &mut rng);
        for cell in square.empty_cells() {
            let expected = square
                .row_missing(cell.row)
                .intersection(&square.col_missing(cell.col));
            assert_eq!(square.support_set(cell), expected);
        }
    }
}

#[test]
fn lshape_frameworks_are_always_balanced() {
    let mut rng = rng_from_seed(102);
    for _ in 0..60 {
        let n = rng.gen_range(1..=9);
        let full = random_latin_square(n, &mut rng);
        let r = rng.gen_range(0..=n);
        let s = rng.gen_range(0..=n);
        let lshaped = erase_to_lshape(&full, r, s);
        let framework = framework_from_lshape(&lshaped).expect("erasing a block is L-shaped");
        assert!(framework.is_balanced(), "n={n} r={r} s={s}");
    }
}

#[test]
fn classification_survives_text_round_trip() {
    let mut rng = rng_from_seed(103);
    for _ in 0..40 {
        let n = rng.gen_range(1..=8);
        let square = random_partial(n, rng.gen_range(0.2..0.9), &mut rng);
        let reparsed = formats::parse_pls(&formats::serialize_pls(&square)).unwrap();
        assert_eq!(classify_shape(&square), classify_shape(&reparsed));
    }
}

#[test]
fn alpha_matches_the_brute_force_oracle() {
    let mut rng = rng_from_seed(112);
    // The demo square's full empty set, per symbol.
    let demo = pls_core::goldwasser();
    let empty = demo.empty_cells();
    for value in 1..=6u16 {
        let symbol = Symbol::new(value);
        assert_eq!(
            alpha(&demo, symbol, &empty),
            brute_force_alpha(&demo, symbol, &empty)
        );
    }
    // The demo square with one more cell filled, probed on a column pair.
    let mut modified = demo.clone();
    modified.set(3, 2, Some(Symbol::new(6)));
    assert_eq!(modified.validate(), Ok(()));
    let pair = [CellRef::new(4, 2), CellRef::new(5, 2)];
    let report = check_hi(&modified, &pair);
    let oracle_sum: usize = (1..=6u16)
        .map(|v| brute_force_alpha(&modified, Symbol::new(v), &pair))
        .sum();
    assert_eq!(
        report.verdict,
        if oracle_sum >= pair.len() {
            HallVerdict::Satisfied
        } else {
            HallVerdict::Violated
        }
    );
    // Random small sets on random squares.
    for _ in 0..80 {
        let n = rng.gen_range(2..=7);
        let square = random_partial(n, 0.5, &mut rng);
        let empty = square.empty_cells();
        let mut subset = random_cell_subset(&empty, &mut rng);
        subset.truncate(12);
        let symbol = Symbol::new(rng.gen_range(1..=n as u16));
        assert_eq!(
            alpha(&square, symbol, &subset),
            brute_force_alpha(&square, symbol, &subset)
        );
    }
}

#[test]
fn alpha_is_monotone_in_the_cell_set() {
    let mut rng = rng_from_seed(104);
    for _ in 0..40 {
        let n = rng.gen_range(2..=7);
        let square = random_partial(n, 0.5, &mut rng);
        let empty = square.empty_cells();
        let larger = random_cell_subset(&empty, &mut rng);
        let smaller = random_cell_subset(&larger, &mut rng);
        for value in 1..=n as u16 {
            let symbol = Symbol::new(value);
            assert!(
                alpha(&square, symbol, &smaller) <= alpha(&square, symbol, &larger),
                "subset alpha exceeded superset alpha"
            );
        }
    }
}

/// Removing a filled cell from a set never changes its inequality verdict.
#[test]
fn filled_cells_are_inert_in_inequalities() {
    let mut rng = rng_from_seed(105);
    let mut exercised = 0;
    for _ in 0..60 {
        let n = rng.gen_range(2..=7);
        let square = random_partial(n, 0.5, &mut rng);
        let all: Vec<CellRef> = (0..n)
            .flat_map(|r| (0..n).map(move |c| CellRef::new(r, c)))
            .collect();
        let set = random_cell_subset(&all, &mut rng);
        let Some(&filled) = set.iter().find(|&&c| square.is_filled(c)) else {
            continue;
        };
        let without: Vec<CellRef> = set.iter().copied().filter(|&c| c != filled).collect();
        assert_eq!(
            check_hi(&square, &set).verdict,
            check_hi(&square, &without).verdict
        );
        exercised += 1;
    }
    assert!(exercised >= 30, "too few sets contained a filled cell");
}

/// A symbol missing from exactly k rows and k columns has alpha at least
/// ceil(t / k) on any empty set with t supporting cells.
#[test]
fn evenly_missing_symbols_meet_the_ratio_bound() {
    let mut rng = rng_from_seed(106);
    let mut exercised = 0;
    'outer: for _ in 0..400 {
        let n = rng.gen_range(2..=8);
        let square = random_partial(n, rng.gen_range(0.3..0.8), &mut rng);
        let empty = square.empty_cells();
        for value in 1..=n as u16 {
            let symbol = Symbol::new(value);
            let missing_rows = (0..n)
                .filter(|&r| square.row_missing(r).contains(symbol))
                .count();
            let missing_cols = (0..n)
                .filter(|&c| square.col_missing(c).contains(symbol))
                .count();
            if missing_rows != missing_cols || missing_rows == 0 {
                continue;
            }
            let k = missing_rows;
            let subset = random_cell_subset(&empty, &mut rng);
            let t = subset
                .iter()
                .filter(|&&cell| square.supports(cell, symbol))
                .count();
            let bound = t.div_ceil(k);
            assert!(
                alpha(&square, symbol, &subset) >= bound,
                "alpha below ceil({t}/{k})"
            );
            exercised += 1;
            if exercised >= 500 {
                break 'outer;
            }
        }
    }
    assert!(exercised >= 300, "too few evenly-missing probes");
}

#[test]
fn closed_form_alpha_matches_matching_alpha_on_rectangles() {
    let mut rng = rng_from_seed(107);
    for _ in 0..60 {
        let n = rng.gen_range(1..=7);
        let full = random_latin_square(n, &mut rng);
        let r = rng.gen_range(0..=n);
        let s = rng.gen_range(0..=n);
        let square = pls_core::generate::erase_to_rectangle(&full, r, s);
        let Shape::Rectangle { rows, .. } = classify_shape(&square) else {
            unreachable!("erasure yields a rectangle");
        };
        let top = top_rows_cells(&square, rows);
        for value in 1..=n as u16 {
            let symbol = Symbol::new(value);
            assert_eq!(
                alpha_closed_rectangle(&square, symbol).unwrap(),
                alpha(&square, symbol, &top),
                "n={n} r={rows} symbol={value}"
            );
        }
    }
}

#[test]
fn closed_form_alpha_matches_on_hole_shapes() {
    let mut rng = rng_from_seed(108);
    let mut probes = 0;
    while probes < 200 {
        let n = rng.gen_range(2..=8);
        let r = rng.gen_range(1..=n);
        let s = rng.gen_range(1..=n);
        let holes = rng.gen_range(0..=s.min(3));
        // Mix guaranteed-completable erasures with arbitrary greedy fills.
        let square = if rng.gen_bool(0.5) {
            let full = random_latin_square(n, &mut rng);
            erase_to_rectangle_with_holes(&full, r, s, holes, &mut rng)
        } else {
            match greedy_random_rectangle_with_holes(n, r, s, holes, &mut rng) {
                Some(square) => square,
                None => continue,
            }
        };
        let (rows, hole_cells) = match classify_shape(&square) {
            ShapeClass::Rectangle { rows, .. } => (rows, Vec::new()),
            ShapeClass::RectangleWithColumnHoles { rows, holes, .. } => (rows, holes),
            _ => continue,
        };
        let excluded = random_cell_subset(&hole_cells, &mut rng);
        let mut cells = top_rows_cells(&square, rows);
        cells.retain(|c| !excluded.contains(c));
        for value in 1..=n as u16 {
            let symbol = Symbol::new(value);
            assert_eq!(
                alpha_closed_holes(&square, symbol, &excluded).unwrap(),
                alpha(&square, symbol, &cells),
                "n={n} rows={rows} symbol={value} excluded={excluded:?}"
            );
        }
        probes += 1;
    }
}

/// Wherever the top-rows inequality holds, no symbol needs more placements
/// than it has supporting-hole rows.
#[test]
fn required_placements_never_exceed_supporting_rows() {
    let mut rng = rng_from_seed(109);
    let mut exercised = 0;
    while exercised < 100 {
        let n = rng.gen_range(2..=8);
        let r = rng.gen_range(1..=n);
        let s = rng.gen_range(1..=n);
        let holes = rng.gen_range(0..=s.min(3));
        let full = random_latin_square(n, &mut rng);
        let square = erase_to_rectangle_with_holes(&full, r, s, holes, &mut rng);
        let Ok(instance) = HoleInstance::new(square.clone()) else {
            continue;
        };
        // Erasures are completable, so every inequality holds.
        let profile = compute_mu(&instance);
        for i in 0..n {
            assert!(
                profile.mu[i] <= profile.rho[i],
                "mu exceeds rho for symbol {} (n={n})",
                i + 1
            );
        }
        exercised += 1;
    }
}

/// Brute-force reference for step 1: the most hole placements with each
/// deficient symbol used at most its required count, at most once per row,
/// only where supported.
fn brute_force_placements(
    square: &PartialLatinSquare,
    holes: &[CellRef],
    mu: &[usize],
) -> usize {
    fn dfs(
        square: &PartialLatinSquare,
        holes: &[CellRef],
        index: usize,
        used: &mut Vec<usize>,
        row_used: &mut Vec<Vec<bool>>,
        mu: &[usize],
    ) -> usize {
        if index == holes.len() {
            return 0;
        }
        // Leave the hole empty, or place any admissible deficient symbol.
        let mut best = dfs(square, holes, index + 1, used, row_used, mu);
        let hole = holes[index];
        for i in 0..mu.len() {
            if mu[i] == 0 || used[i] >= mu[i] || row_used[i][hole.row] {
                continue;
            }
            if !square.supports(hole, Symbol::from_index(i)) {
                continue;
            }
            used[i] += 1;
            row_used[i][hole.row] = true;
            best = best.max(1 + dfs(square, holes, index + 1, used, row_used, mu));
            used[i] -= 1;
            row_used[i][hole.row] = false;
        }
        best
    }
    let n = square.order();
    let mut used = vec![0; mu.len()];
    let mut row_used = vec![vec![false; n]; mu.len()];
    dfs(square, holes, 0, &mut used, &mut row_used, mu)
}

/// The step 1 flow value equals the best achievable number of placements.
#[test]
fn flow_value_matches_brute_force_placements() {
    use pls_core::holes::{build_flow_network, compute_mu};
    let mut rng = rng_from_seed(113);
    let mut exercised = 0;
    while exercised < 60 {
        let n = rng.gen_range(3..=6);
        let r = rng.gen_range(2..=n);
        let s = rng.gen_range(2..=n);
        let holes = rng.gen_range(1..=s.min(4));
        // Greedy fills give instances where the flow actually falls short.
        let Some(square) = greedy_random_rectangle_with_holes(n, r, s, holes, &mut rng) else {
            continue;
        };
        let Ok(instance) = HoleInstance::new(square.clone()) else {
            continue;
        };
        if instance.holes().len() > 6 {
            continue;
        }
        let profile = compute_mu(&instance);
        if profile.u == 0 {
            continue;
        }
        let step1 = build_flow_network(&instance, &profile);
        let flow = step1.network.max_flow_integral();
        let best = brute_force_placements(&square, instance.holes(), &profile.mu);
        assert_eq!(flow.value, best as u64, "flow vs enumeration (n={n})");
        exercised += 1;
    }
}

/// The pipeline succeeds exactly where the backtracking oracle completes.
#[test]
fn holes_pipeline_agrees_with_the_solver() {
    let mut rng = rng_from_seed(114);
    let mut instances: Vec<PartialLatinSquare> = Vec::new();
    // Deterministic incompletable members: two first-row holes whose only
    // supported symbol never appears anywhere else.
    for n in 4..=8 {
        let mut square = PartialLatinSquare::new_empty(n);
        for i in 1..n {
            square.set(i, 0, Some(Symbol::new(i as u16)));
            square.set(i, 1, Some(Symbol::new((i % (n - 1) + 1) as u16)));
        }
        assert_eq!(square.validate(), Ok(()));
        instances.push(square);
    }
    while instances.len() < 80 {
        let n = rng.gen_range(2..=7);
        let r = rng.gen_range(1..=n);
        let s = rng.gen_range(1..=n);
        let holes = rng.gen_range(0..=s.min(3));
        let square = if rng.gen_bool(0.4) {
            let full = random_latin_square(n, &mut rng);
            erase_to_rectangle_with_holes(&full, r, s, holes, &mut rng)
        } else {
            match greedy_random_rectangle_with_holes(n, r, s, holes, &mut rng) {
                Some(square) => square,
                None => continue,
            }
        };
        instances.push(square);
    }
    let mut failures_seen = 0;
    for square in &instances {
        let Ok(instance) = HoleInstance::new(square.clone()) else {
            continue;
        };
        let pipeline = pls_core::holes::complete_with_holes(&instance);
        let solver = complete_pls(square, DEFAULT_BUDGET);
        match (&pipeline, &solver) {
            (Ok(done), SearchOutcome::Found(_)) => {
                assert_eq!(done.validate(), Ok(()));
                assert!(square.extends(done));
            }
            (Err(_), SearchOutcome::Exhausted) => failures_seen += 1,
            other => panic!("pipeline and solver disagree: {other:?}"),
        }
    }
    assert!(failures_seen >= 5, "the mix should include incompletable instances");
}

#[test]
fn flow_value_is_invariant_under_relabeling() {
    let mut rng = rng_from_seed(110);
    for _ in 0..60 {
        let v = rng.gen_range(4..=9);
        let mut edges = Vec::new();
        for from in 0..v {
            for to in 0..v {
                if from != to && from != v - 1 && to != 0 && rng.gen_bool(0.4) {
                    edges.push((from, to, rng.gen_range(0..5u64)));
                }
            }
        }
        let mut net = FlowNetwork::new(v, 0, v - 1);
        for &(f, t, c) in &edges {
            net.add_edge(f, t, c);
        }
        // Relabel internal vertices by a rotation.
        let relabel = |x: usize| -> usize {
            if x == 0 || x == v - 1 {
                x
            } else {
                1 + (x % (v - 2))
            }
        };
        let mut permuted = FlowNetwork::new(v, 0, v - 1);
        for &(f, t, c) in &edges {
            permuted.add_edge(relabel(f), relabel(t), c);
        }
        assert_eq!(
            net.max_flow_integral().value,
            permuted.max_flow_integral().value
        );
    }
}

/// Rectangle verdicts agree across the count condition, the top-rows
/// inequality and the solver, and completions imply the exhaustive check.
#[test]
fn rectangle_verdicts_and_completions_agree_at_small_scale() {
    let mut rng = rng_from_seed(111);
    let mut checked = 0;
    while checked < 40 {
        let n = rng.gen_range(2..=5);
        let r = rng.gen_range(1..=n);
        let s = rng.gen_range(1..=n);
        let Some(square) = pls_core::generate::greedy_random_rectangle(n, r, s, &mut rng) else {
            continue;
        };
        let ryser_ok = pls_core::ryser::check_ryser(&square)
            .unwrap()
            .is_completable();
        let hi_ok = check_hi_equivalence(&square).unwrap();
        let solved = complete_pls(&square, DEFAULT_BUDGET);
        let solver_ok = solved.is_found();
        assert_eq!(ryser_ok, hi_ok);
        assert_eq!(ryser_ok, solver_ok);
        if ryser_ok {
            let constructed = pls_core::ryser::complete_rectangle(&square).unwrap();
            assert_eq!(constructed.validate(), Ok(()));
            assert!(constructed.is_complete());
            assert!(square.extends(&constructed));
        }
        if let SearchOutcome::Found(done) = &solved {
            assert_eq!(done.validate(), Ok(()));
            assert!(square.extends(done));
            if done.order() * done.order() - square.filled_count() <= 14 {
                let report = check_hc_exhaustive(&square, 14).unwrap();
                assert_eq!(report.verdict, HallVerdict::Satisfied);
            }
        }
        checked += 1;
    }
}
