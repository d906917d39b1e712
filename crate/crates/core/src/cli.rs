//! Command-line front end. Every subcommand builds a [`Table`] and prints it
//! as CSV or JSON; `compare` prints a bare `true`/`false`.
//!
//! Exit status: 0 on success, 2 on a usage error, 1 when a guard or domain
//! check rejects the input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::ballot::{strong_ballot_table, weak_ordering_table, LevelRow, OrderKind};
use crate::criteria::{
    corner_event, strong_leq, top_rows_event, weak_leq_by, StrongMethod, WeakMethod,
};
use crate::error::{Error, Result};
use crate::formulas::{corner_event_prob, corner_event_prob_printed, CORNER_N_MAX};
use crate::montecarlo::{scaling_table, Relation};
use crate::perm::{factorial, Permutation};
use crate::posets::{count_pairs_exact, weak_product_bound, CountMethod, LINEXT_SUM_N_MAX};
use crate::rational::{factorial_big, ratio_u, to_f64};
use crate::report::{Cell, Format, Table};
use crate::rng::DEFAULT_SEED;

pub const DEFAULT_WORKERS: usize = 8;
pub const DEFAULT_TRIALS: u64 = 1_000_000;
pub const BOUNDS_N_MAX: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "bruhat",
    version,
    about = "Bruhat order comparability on permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide one comparison; prints true or false.
    Compare {
        /// strong, weak, corner (four-corner event, even n) or top_rows (needs --k)
        #[arg(long, default_value = "strong")]
        order: CompareKind,
        /// Comma-separated one-line notation, e.g. 2,1,5,3,4
        #[arg(long)]
        pi: Permutation,
        #[arg(long)]
        sigma: Permutation,
        /// strong: tableau, dominance, chain_oracle; weak: inversion_set, chain_oracle
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact number of comparable ordered pairs in S_n × S_n.
    Count {
        /// strong or weak
        #[arg(long)]
        order: OrderKind,
        #[arg(long)]
        n: usize,
        /// brute or linext_sum (weak only); defaults to brute for strong, linext_sum for weak
        #[arg(long)]
        method: Option<CountMethod>,
        #[arg(long, default_value_t = DEFAULT_WORKERS)]
        workers: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// N_k (strong) or N_k* (weak) with Q = N/(2k)! and its k-th root.
    Ballot {
        /// strong or weak
        #[arg(long)]
        kind: OrderKind,
        /// defaults to 11 for strong, 6 for weak
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_WORKERS)]
        workers: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Harmonic product lower bound on the weak probability, with exact values where feasible.
    Bounds {
        #[arg(long, default_value_t = 9)]
        nmax: usize,
        #[arg(long, default_value_t = DEFAULT_WORKERS)]
        workers: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Exact probability of the four-corner event for even n.
    Dagger {
        /// One or more even n, comma-separated
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Sum the variant with the (m3 + 1) denominator instead
        #[arg(long)]
        printed_form: bool,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Monte Carlo estimates over a list of n.
    Mc {
        /// strong, weak or corner
        #[arg(long)]
        order: Relation,
        /// Strictly increasing, comma-separated
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        /// Decimal or 0x-prefixed hex
        #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_WORKERS)]
        workers: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Regenerate the numeric tables.
    Tables {
        /// all, nk, nk_star, mc_strong, exact_strong, mc_weak, exact_weak, bounds
        #[arg(long, default_value = "all")]
        which: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_WORKERS)]
        workers: usize,
        #[arg(long, default_value_t = 8)]
        strong_nmax: usize,
        #[arg(long, default_value_t = 9)]
        weak_nmax: usize,
        /// Write one file per table instead of printing sections
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CompareKind {
    Strong,
    Weak,
    Corner,
    TopRows,
}

impl FromStr for CompareKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(Self::Strong),
            "weak" => Ok(Self::Weak),
            "corner" => Ok(Self::Corner),
            "top_rows" => Ok(Self::TopRows),
            _ => Err(Error::InvalidArgument(format!("unknown order {s:?}"))),
        }
    }
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

pub const TABLE_NAMES: [&str; 7] = [
    "nk",
    "nk_star",
    "mc_strong",
    "exact_strong",
    "mc_weak",
    "exact_weak",
    "bounds",
];

/// Runs with the process's stdout and stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `argv` (program name first), executes, and writes the report to `out`.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, err) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
        .install(f)
}

fn execute(command: Command, err: &mut dyn Write) -> Result<String> {
    match command {
        Command::Compare {
            order,
            pi,
            sigma,
            method,
            k,
        } => compare(order, &pi, &sigma, method.as_deref(), k).map(|b| format!("{b}\n")),
        Command::Count {
            order,
            n,
            method,
            workers,
            format,
        } => {
            let method = method.unwrap_or(match order {
                OrderKind::Strong => CountMethod::Brute,
                OrderKind::Weak => CountMethod::LinextSum,
            });
            let count = with_workers(workers, || count_pairs_exact(n, order, method))?;
            let mut t = Table::new(
                "count",
                &[
                    "n",
                    "order",
                    "method",
                    "count",
                    "prob_num",
                    "prob_den",
                    "prob_float",
                ],
            );
            let mut row = vec![Cell::int(n), Cell::text(order), Cell::text(method)];
            row.extend(exact_cells(n, count));
            t.push(row);
            Ok(t.render(format))
        }
        Command::Ballot {
            kind,
            kmax,
            workers,
            format,
        } => {
            let kmax = kmax.unwrap_or(match kind {
                OrderKind::Strong => 11,
                OrderKind::Weak => 6,
            });
            Ok(with_workers(workers, || ballot_report(kind, kmax))?.render(format))
        }
        Command::Bounds {
            nmax,
            workers,
            format,
        } => Ok(with_workers(workers, || bounds_report(nmax))?.render(format)),
        Command::Dagger {
            n,
            printed_form,
            format,
        } => Ok(dagger_report(&n, printed_form)?.render(format)),
        Command::Mc {
            order,
            ns,
            trials,
            seed,
            workers,
            format,
        } => Ok(
            with_workers(workers, || mc_report(order, &ns, trials, seed, workers))?.render(format),
        ),
        Command::Tables {
            which,
            trials,
            seed,
            workers,
            strong_nmax,
            weak_nmax,
            out_dir,
            format,
        } => {
            let names: Vec<&str> = if which == "all" {
                TABLE_NAMES.to_vec()
            } else {
                which.split(',').collect()
            };
            if let Some(bad) = names.iter().find(|n| !TABLE_NAMES.contains(n)) {
                return Err(Error::InvalidArgument(format!("unknown table {bad:?}")));
            }
            let tables = with_workers(workers, || {
                names
                    .iter()
                    .map(|name| numerics_table(name, trials, seed, workers, strong_nmax, weak_nmax))
                    .collect::<Result<Vec<_>>>()
            })?;
            match out_dir {
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(io_err)?;
                    for t in &tables {
                        let path = dir.join(format!("{}.{format}", t.name));
                        fs::write(&path, t.render(format)).map_err(io_err)?;
                        let _ = writeln!(err, "wrote {}", path.display());
                    }
                    Ok(String::new())
                }
                None => Ok(render_sections(&tables, format)),
            }
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("i/o: {e}"))
}

fn render_sections(tables: &[Table], format: Format) -> String {
    match format {
        Format::Csv => tables
            .iter()
            .map(|t| format!("# {}\n{}", t.name, t.to_csv()))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let obj: serde_json::Map<String, serde_json::Value> = tables
                .iter()
                .map(|t| (t.name.clone(), t.to_json_value()))
                .collect();
            let mut s = serde_json::to_string_pretty(&obj).expect("json");
            s.push('\n');
            s
        }
    }
}

fn compare(
    kind: CompareKind,
    pi: &Permutation,
    sigma: &Permutation,
    method: Option<&str>,
    k: Option<usize>,
) -> Result<bool> {
    let no_method = |order: &'static str| match method {
        Some(m) => Err(Error::MethodMismatch {
            method: m.to_string(),
            order,
        }),
        None => Ok(()),
    };
    match kind {
        CompareKind::Strong => {
            let m = method
                .map(StrongMethod::from_str)
                .transpose()?
                .unwrap_or_default();
            strong_leq(pi, sigma, m)
        }
        CompareKind::Weak => {
            let m = method
                .map(WeakMethod::from_str)
                .transpose()?
                .unwrap_or_default();
            weak_leq_by(pi, sigma, m)
        }
        CompareKind::Corner => {
            no_method("corner")?;
            corner_event(pi, sigma)
        }
        CompareKind::TopRows => {
            no_method("top_rows")?;
            let k = k.ok_or_else(|| Error::InvalidArgument("top_rows needs --k".into()))?;
            top_rows_event(pi, sigma, k)
        }
    }
}

/// `count, prob_num, prob_den, prob_float` for a pair count in `S_n × S_n`.
fn exact_cells(n: usize, count: u128) -> Vec<Cell> {
    let f = factorial(n);
    let q = ratio_u(count, f * f);
    vec![
        Cell::int(count),
        Cell::int(q.numer()),
        Cell::int(q.denom()),
        Cell::Float(to_f64(&q)),
    ]
}

fn level_table(name: &str, rows: &[LevelRow]) -> Table {
    let mut t = Table::new(name, &["k", "N", "Q_num", "Q_den", "Q_float", "root"]);
    for r in rows {
        t.push(vec![
            Cell::int(r.k),
            Cell::int(&r.count),
            Cell::int(r.q.numer()),
            Cell::int(r.q.denom()),
            Cell::Float(r.q_float),
            Cell::Float(r.root),
        ]);
    }
    t
}

/// The N_k (strong) or N_k* (weak) table for `k = 1..=kmax`.
pub fn ballot_report(kind: OrderKind, kmax: usize) -> Result<Table> {
    Ok(match kind {
        OrderKind::Strong => level_table("nk", &strong_ballot_table(kmax)?),
        OrderKind::Weak => level_table("nk_star", &weak_ordering_table(kmax)?),
    })
}

/// Exact comparable-pair counts for `n = 1..=nmax`.
pub fn exact_report(order: OrderKind, nmax: usize) -> Result<Table> {
    let (name, method) = match order {
        OrderKind::Strong => ("exact_strong", CountMethod::Brute),
        OrderKind::Weak => ("exact_weak", CountMethod::LinextSum),
    };
    let mut t = Table::new(name, &["n", "count", "prob_num", "prob_den", "prob_float"]);
    for n in 1..=nmax {
        let count = count_pairs_exact(n, order, method)?;
        let mut row = vec![Cell::int(n)];
        row.extend(exact_cells(n, count));
        t.push(row);
    }
    Ok(t)
}

/// `∏ H(i)/i` and `(n!)² ∏ H(i)/i` for `n = 1..=nmax`, beside the exact weak
/// count where it is computable.
pub fn bounds_report(nmax: usize) -> Result<Table> {
    crate::error::too_large("nmax", nmax, BOUNDS_N_MAX)?;
    let mut t = Table::new(
        "bounds",
        &[
            "n",
            "bound_num",
            "bound_den",
            "bound_float",
            "scaled_bound",
            "exact_count",
            "exact_prob_float",
        ],
    );
    for n in 1..=nmax {
        let b = weak_product_bound(n);
        let f = num_bigint::BigInt::from(factorial_big(n));
        let scaled = num_rational::BigRational::from_integer(&f * &f) * &b;
        let mut row = vec![
            Cell::int(b.numer()),
            Cell::int(b.denom()),
            Cell::Float(to_f64(&b)),
            Cell::Float(to_f64(&scaled)),
        ];
        if n <= LINEXT_SUM_N_MAX {
            let count = count_pairs_exact(n, OrderKind::Weak, CountMethod::LinextSum)?;
            let cells = exact_cells(n, count);
            row.push(cells[0].clone());
            row.push(cells[3].clone());
        } else {
            row.extend([Cell::Empty, Cell::Empty]);
        }
        row.insert(0, Cell::int(n));
        t.push(row);
    }
    Ok(t)
}

/// Exact four-corner probabilities at each even n.
pub fn dagger_report(ns: &[usize], printed_form: bool) -> Result<Table> {
    let mut t = Table::new(
        "dagger",
        &[
            "n",
            "prob_num",
            "prob_den",
            "prob_float",
            "n_squared_times_prob",
        ],
    );
    for &n in ns {
        crate::error::too_large("n", n, CORNER_N_MAX)?;
        let p = if printed_form {
            corner_event_prob_printed(n)?
        } else {
            corner_event_prob(n)?
        };
        let x = to_f64(&p);
        t.push(vec![
            Cell::int(n),
            Cell::int(p.numer()),
            Cell::int(p.denom()),
            Cell::Float(x),
            Cell::Float((n * n) as f64 * x),
        ]);
    }
    Ok(t)
}

/// Seed-stamped Monte Carlo rows.
pub fn mc_report(
    relation: Relation,
    ns: &[usize],
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Table> {
    let name = match relation {
        Relation::Strong => "mc_strong",
        Relation::Weak => "mc_weak",
        Relation::CornerEvent => "mc_corner",
    };
    let mut t = Table::new(
        name,
        &[
            "n",
            "relation",
            "trials",
            "successes",
            "p_hat",
            "stderr",
            "ln_ratio",
            "step_ratio",
            "seed",
            "workers",
        ],
    );
    for row in scaling_table(ns, relation, trials, seed, workers)? {
        let e = &row.estimate;
        t.push(vec![
            Cell::int(e.n),
            Cell::text(e.relation),
            Cell::int(e.trials),
            Cell::int(e.successes),
            Cell::Float(e.p_hat),
            Cell::Float(e.stderr),
            Cell::opt_float(row.ln_ratio),
            Cell::opt_float(row.step_ratio),
            Cell::int(e.seed),
            Cell::int(e.workers),
        ]);
    }
    Ok(t)
}

fn numerics_table(
    name: &str,
    trials: u64,
    seed: u64,
    workers: usize,
    strong_nmax: usize,
    weak_nmax: usize,
) -> Result<Table> {
    match name {
        "nk" => ballot_report(OrderKind::Strong, 11),
        "nk_star" => ballot_report(OrderKind::Weak, 6),
        "mc_strong" => mc_report(
            Relation::Strong,
            &[10, 30, 50, 70, 90, 110],
            trials,
            seed,
            workers,
        ),
        "exact_strong" => exact_report(OrderKind::Strong, strong_nmax),
        "mc_weak" => mc_report(
            Relation::Weak,
            &[10, 11, 12, 13, 14, 15, 16],
            trials,
            seed,
            workers,
        ),
        "exact_weak" => exact_report(OrderKind::Weak, weak_nmax),
        "bounds" => bounds_report(9),
        _ => Err(Error::InvalidArgument(format!("unknown table {name:?}"))),
    }
}
