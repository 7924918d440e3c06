//! `pls`: certification and completion of partial latin squares.
//!
//! Artifacts (squares, rectangles) go to stdout; reports, certificates and
//! diagnostics go to stderr. Exit codes: 0 success/satisfied, 1 negative
//! result (violated, incompletable, no latinization), 2 inconclusive,
//! 3 infeasible or out of budget, 4 bad input or usage. Failures print a
//! single `error:`-prefixed line.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pls_core::formats;
use pls_core::framework::{Framework, LatinRectangle};
use pls_core::generate;
use pls_core::hall::{self, HallReport, HallVerdict};
use pls_core::holes::{self, HolesError};
use pls_core::reduction::{self, EpsilonMode};
use pls_core::ryser;
use pls_core::shape::{classify_shape, ShapeClass};
use pls_core::solver::{self, SearchOutcome};
use pls_core::square::{goldwasser, CellRef, PartialLatinSquare};

#[derive(Parser)]
#[command(name = "pls", version, about = "Partial latin squares: Hall certification, completion, realization, reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check Hall's Condition (default: exhaustive over empty-cell subsets).
    CheckHall {
        /// Input square (`.pls` / `.json`); stdin when omitted or `-`.
        file: Option<PathBuf>,
        /// Scan every subset of empty cells (the default mode).
        #[arg(long, conflicts_with = "sufficient")]
        exhaustive: bool,
        /// Evaluate only the per-cell sufficient condition.
        #[arg(long)]
        sufficient: bool,
        /// Max empty cells the exhaustive scan accepts
        /// [default: 20, or the PLS_HALL_LIMIT environment variable].
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check the rectangle condition, reporting per-symbol deficits.
    CheckRyser {
        file: Option<PathBuf>,
    },
    /// Complete a square, dispatching on its shape.
    Complete {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Node budget for the backtracking method.
        #[arg(long, default_value_t = solver::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Realize a balanced framework (`.fw` / `.json`) as an L-shaped square.
    Realize {
        file: Option<PathBuf>,
        /// Order of the realization; at least max(t, r + s).
        #[arg(long)]
        order: usize,
    },
    /// Reduce a 4-uniform 4-regular hypergraph (`.hg` / `.json`) to an
    /// L-shaped square that satisfies Hall's Condition.
    Reduce {
        file: Option<PathBuf>,
        /// Also delete the bottom-right block, leaving a mostly-empty square.
        #[arg(long)]
        sparse: bool,
    },
    /// Complete a square by backtracking search alone.
    Solve {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = solver::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Find a latinization of a framework by backtracking search.
    Latinize {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = solver::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Emit a built-in square.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
    /// Generate test instances by erasing from a scrambled cyclic square.
    Gen {
        #[command(subcommand)]
        shape: GenShape,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Rectangle,
    Holes,
    Solver,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DemoName {
    /// The order-6 incompletable square satisfying Hall's Condition.
    Goldwasser,
}

#[derive(Subcommand)]
enum GenShape {
    /// Keep only the upper-left block of a random complete square.
    Rectangle {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rectangle plus up to `--holes` empty cells, at most one per column.
    Holes {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        holes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // Single machine-parsable line instead of clap's usage block.
            let summary = e
                .render()
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("error: {summary}");
            return ExitCode::from(4);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(4)
        }
    }
}

/// Domain outcomes map to exit codes; hard failures come back as messages.
fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::CheckHall {
            file,
            exhaustive,
            sufficient,
            limit,
        } => {
            let square = load_square(&file)?;
            let report = if sufficient && !exhaustive {
                hall::check_sufficient(&square)
            } else {
                let limit = resolve_limit(limit)?;
                match hall::check_hc_exhaustive(&square, limit) {
                    Ok(report) => report,
                    Err(hall::HallError::TooManyEmptyCells { count, limit }) => {
                        eprintln!(
                            "hall: infeasible ({count} empty cells exceed limit {limit}; \
                             raise --limit or use --sufficient)"
                        );
                        return Ok(ExitCode::from(3));
                    }
                    Err(e) => return Err(e.to_string()),
                }
            };
            print_hall_report(&report);
            Ok(match report.verdict {
                HallVerdict::Satisfied => ExitCode::SUCCESS,
                HallVerdict::Violated => ExitCode::from(1),
                HallVerdict::Inconclusive => ExitCode::from(2),
            })
        }
        Command::CheckRyser { file } => {
            let square = load_square(&file)?;
            let report = ryser::check_ryser(&square).map_err(|e| e.to_string())?;
            if report.is_completable() {
                eprintln!("ryser: completable (every symbol appears often enough)");
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("ryser: not-completable");
                for (symbol, deficit) in report.violating_symbols() {
                    eprintln!("deficit: symbol {symbol} needs {deficit} more occurrence(s)");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Complete {
            file,
            method,
            budget,
        } => {
            let square = load_square(&file)?;
            complete_command(&square, method, budget)
        }
        Command::Realize { file, order } => {
            let framework = load_framework(&file)?;
            let square =
                ryser::realize_framework(&framework, order).map_err(|e| e.to_string())?;
            print!("{}", formats::serialize_pls(&square));
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { file, sparse } => {
            let hypergraph = load_hypergraph(&file)?;
            let square = reduction::reduce_to_pls(&hypergraph).map_err(|e| e.to_string())?;
            let square = if sparse {
                reduction::epsilon_variant(&square, EpsilonMode::Sparse)
            } else {
                square
            };
            let symbols = reduction::GadgetSymbols::new(&hypergraph).map_err(|e| e.to_string())?;
            let (a, b, c) = symbols.class_sizes();
            eprintln!("order: {}", square.order());
            eprintln!("symbol classes: |A| = {a}, |B| = {b}, |C| = {c}");
            let sufficient = hall::check_sufficient(&square);
            eprintln!(
                "sufficient-condition: {}",
                verdict_name(sufficient.verdict)
            );
            print!("{}", formats::serialize_pls(&square));
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { file, budget } => {
            let square = load_square(&file)?;
            match solver::complete_pls(&square, budget) {
                SearchOutcome::Found(done) => {
                    print!("{}", formats::serialize_pls(&done));
                    Ok(ExitCode::SUCCESS)
                }
                SearchOutcome::Exhausted => {
                    eprintln!("incompletable");
                    Ok(ExitCode::from(1))
                }
                SearchOutcome::BudgetExhausted => {
                    eprintln!("budget-exhausted ({budget} nodes)");
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Latinize { file, budget } => {
            let framework = load_framework(&file)?;
            match solver::latinize_framework(&framework, budget) {
                SearchOutcome::Found(rectangle) => {
                    print!("{}", render_rectangle(&rectangle));
                    Ok(ExitCode::SUCCESS)
                }
                SearchOutcome::Exhausted => {
                    eprintln!("no latinization");
                    Ok(ExitCode::from(1))
                }
                SearchOutcome::BudgetExhausted => {
                    eprintln!("budget-exhausted ({budget} nodes)");
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Demo { name } => {
            match name {
                DemoName::Goldwasser => print!("{}", formats::serialize_pls(&goldwasser())),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { shape } => {
            let square = match shape {
                GenShape::Rectangle {
                    order,
                    rows,
                    cols,
                    seed,
                } => {
                    check_block(order, rows, cols)?;
                    let mut rng = generate::rng_from_seed(seed);
                    let full = generate::random_latin_square(order, &mut rng);
                    generate::erase_to_rectangle(&full, rows, cols)
                }
                GenShape::Holes {
                    order,
                    rows,
                    cols,
                    holes,
                    seed,
                } => {
                    check_block(order, rows, cols)?;
                    let mut rng = generate::rng_from_seed(seed);
                    let full = generate::random_latin_square(order, &mut rng);
                    generate::erase_to_rectangle_with_holes(&full, rows, cols, holes, &mut rng)
                }
            };
            print!("{}", formats::serialize_pls(&square));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn complete_command(
    square: &PartialLatinSquare,
    method: Method,
    budget: u64,
) -> Result<ExitCode, String> {
    let method = if method == Method::Auto {
        match classify_shape(square) {
            ShapeClass::Rectangle { .. } => Method::Rectangle,
            ShapeClass::RectangleWithColumnHoles { .. } => Method::Holes,
            _ => Method::Solver,
        }
    } else {
        method
    };
    match method {
        Method::Rectangle => match ryser::complete_rectangle(square) {
            Ok(done) => {
                print!("{}", formats::serialize_pls(&done));
                Ok(ExitCode::SUCCESS)
            }
            Err(ryser::RyserError::Violated(_)) => {
                let report = ryser::check_ryser(square).map_err(|e| e.to_string())?;
                eprintln!("not completable: the rectangle condition fails");
                for (symbol, deficit) in report.violating_symbols() {
                    eprintln!("deficit: symbol {symbol} needs {deficit} more occurrence(s)");
                }
                Ok(ExitCode::from(1))
            }
            Err(e) => Err(e.to_string()),
        },
        Method::Holes => {
            let instance = holes::HoleInstance::new(square.clone()).map_err(|e| e.to_string())?;
            match holes::complete_with_holes(&instance) {
                Ok(done) => {
                    print!("{}", formats::serialize_pls(&done));
                    Ok(ExitCode::SUCCESS)
                }
                Err(HolesError::FlowDeficit {
                    needed,
                    got,
                    certificate,
                }) => {
                    eprintln!(
                        "not completable: flow deficit ({got} of {needed} placements routable)"
                    );
                    eprintln!(
                        "certificate: the inequality for the top rows minus {{{}}} is violated",
                        cells_display(&certificate)
                    );
                    Ok(ExitCode::from(1))
                }
                Err(HolesError::RowMatchingDeficit { row, certificate }) => {
                    eprintln!("not completable: row {} cannot cover its holes", row + 1);
                    eprintln!(
                        "certificate: the inequality for {{{}}} is violated",
                        cells_display(&certificate)
                    );
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Method::Solver => match solver::complete_pls(square, budget) {
            SearchOutcome::Found(done) => {
                print!("{}", formats::serialize_pls(&done));
                Ok(ExitCode::SUCCESS)
            }
            SearchOutcome::Exhausted => {
                eprintln!("incompletable");
                Ok(ExitCode::from(1))
            }
            SearchOutcome::BudgetExhausted => {
                eprintln!("budget-exhausted ({budget} nodes)");
                Ok(ExitCode::from(3))
            }
        },
        Method::Auto => unreachable!("resolved above"),
    }
}

fn print_hall_report(report: &HallReport) {
    let method = match report.method {
        hall::HallMethod::Exhaustive => "exhaustive",
        hall::HallMethod::SufficientCondition => "sufficient-condition",
        hall::HallMethod::SingleInequality => "single-inequality",
    };
    match report.sets_checked {
        Some(count) => eprintln!(
            "hall: {} ({method}, {count} sets checked)",
            verdict_name(report.verdict)
        ),
        None => eprintln!("hall: {} ({method})", verdict_name(report.verdict)),
    }
    if let Some(certificate) = &report.certificate {
        match report.verdict {
            HallVerdict::Violated => eprintln!(
                "certificate: |T| = {}, alpha-sum = {}, cells: {}",
                certificate.size(),
                certificate.alpha_sum,
                cells_display(&certificate.cells)
            ),
            HallVerdict::Inconclusive => eprintln!(
                "first short cell: {}",
                cells_display(&certificate.cells)
            ),
            HallVerdict::Satisfied => {}
        }
    }
}

fn verdict_name(verdict: HallVerdict) -> &'static str {
    match verdict {
        HallVerdict::Satisfied => "satisfied",
        HallVerdict::Violated => "violated",
        HallVerdict::Inconclusive => "inconclusive",
    }
}

fn cells_display(cells: &[CellRef]) -> String {
    cells
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_rectangle(rectangle: &LatinRectangle) -> String {
    let mut out = String::new();
    for row in 0..rectangle.rows() {
        for col in 0..rectangle.cols() {
            if col > 0 {
                out.push(' ');
            }
            out.push_str(&rectangle.get(row, col).value().to_string());
        }
        out.push('\n');
    }
    out
}

fn check_block(order: usize, rows: usize, cols: usize) -> Result<(), String> {
    if order == 0 {
        return Err("order must be positive".into());
    }
    if rows > order || cols > order {
        return Err(format!("block {rows}x{cols} does not fit in order {order}"));
    }
    Ok(())
}

fn resolve_limit(flag: Option<usize>) -> Result<usize, String> {
    if let Some(limit) = flag {
        return Ok(limit);
    }
    match std::env::var("PLS_HALL_LIMIT") {
        Ok(value) => value
            .parse()
            .map_err(|_| format!("PLS_HALL_LIMIT is not a number: {value:?}")),
        Err(_) => Ok(hall::DEFAULT_EXHAUSTIVE_LIMIT),
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<(String, bool), String> {
    match file {
        Some(path) if path.as_os_str() != "-" => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let json = path
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("json"));
            Ok((text, json))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok((text, false))
        }
    }
}

/// Loads and validates a square.
fn load_square(file: &Option<PathBuf>) -> Result<PartialLatinSquare, String> {
    let (text, json) = read_input(file)?;
    let square = formats::read_pls_str(&text, json).map_err(|e| e.to_string())?;
    square.validate().map_err(|e| e.to_string())?;
    Ok(square)
}

fn load_framework(file: &Option<PathBuf>) -> Result<Framework, String> {
    let (text, json) = read_input(file)?;
    if json {
        formats::framework_from_json(&text).map_err(|e| e.to_string())
    } else {
        formats::parse_framework(&text).map_err(|e| e.to_string())
    }
}

fn load_hypergraph(file: &Option<PathBuf>) -> Result<reduction::Hypergraph, String> {
    let (text, json) = read_input(file)?;
    let hypergraph = if json {
        formats::hypergraph_from_json(&text).map_err(|e| e.to_string())?
    } else {
        formats::parse_hypergraph(&text).map_err(|e| e.to_string())?
    };
    reduction::validate_hypergraph(&hypergraph).map_err(|e| e.to_string())?;
    Ok(hypergraph)
}
