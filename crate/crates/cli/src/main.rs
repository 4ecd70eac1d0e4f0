//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 internal consistency failure
//! (oracle mismatch, discontinuity, broken staircase), 3 verification
//! mismatch against a closed form.

mod output;
mod sweep;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use upsilon_torsion::alexander::{genus_from_gaps, KnotSpec};
use upsilon_torsion::rational::{fraction_string, Rat};
use upsilon_torsion::staircase::{staircase_from_gaps, validate_staircase};
use upsilon_torsion::upsilon::{extract_orders, upsilon_torsion, PiecewiseLinear, TorsionOrders};

use output::{breakpoints_of, csv_plot_row, dump_staircase, Record};

#[derive(Parser)]
#[command(
    name = "upsilon",
    version,
    about = "Upsilon torsion functions and torsion orders of L-space knots, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct KnotArgs {
    /// Knot spec: torus:p,q | twisted:p,k | gaps:a1,a2,... | alex:c0,c1,...
    #[arg(long)]
    knot: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial as a dense coefficient list
    Alexander(KnotArgs),
    /// Gap sequence of the Alexander polynomial exponents
    Gaps(KnotArgs),
    /// Staircase complex: generators, gradings and arrows
    Staircase(KnotArgs),
    /// The Upsilon torsion function as exact breakpoints
    Upsilon {
        #[command(flatten)]
        args: KnotArgs,
        /// Append N+1 decimal samples on [0, 2] to the CSV plot stream
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Torsion orders Ord and Ord'
    Orders(KnotArgs),
    /// Recompute through independent routes and closed forms; report checks
    Verify(KnotArgs),
    /// Torsion data over a (p, k) grid of the twisted family
    Sweep {
        /// Inclusive p range, e.g. 4..9
        #[arg(long, value_name = "A..B")]
        p_range: String,
        /// Inclusive k range, e.g. 1..3
        #[arg(long, value_name = "C..D")]
        k_range: String,
        /// Maximum worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

enum AppError {
    Input(String),
    Internal(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            Self::Input(_) => 1,
            Self::Internal(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Input(m) | Self::Internal(m) => m,
        }
    }
}

fn main() -> ExitCode {
    // Usage errors are invalid input (exit 1); clap's default would be 2,
    // which this tool reserves for internal consistency failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

/// Everything derivable from a validated spec.
struct Computed {
    spec: KnotSpec,
    alexander: Vec<String>,
    gaps: Vec<u64>,
    genus: u64,
}

impl Computed {
    fn resolve(raw: &str) -> Result<Self, AppError> {
        let parsed = KnotSpec::parse(raw).map_err(|e| AppError::Input(e.to_string()))?;
        for w in &parsed.warnings {
            eprintln!("warning: {w}");
        }
        let spec = parsed.spec;
        let alexander = spec
            .alexander()
            .map_err(|e| AppError::Internal(e.to_string()))?;
        let gaps = spec.gaps().map_err(|e| AppError::Internal(e.to_string()))?;
        let genus =
            genus_from_gaps(gaps.as_slice()).map_err(|e| AppError::Internal(e.to_string()))?;
        Ok(Self {
            spec,
            alexander: alexander
                .dense_string()
                .split(',')
                .map(str::to_string)
                .collect(),
            gaps: gaps.as_slice().to_vec(),
            genus,
        })
    }

    fn record(&self, raw: &str) -> Record {
        let mut record = Record::new(raw.to_string());
        record.alexander = Some(self.alexander.clone());
        record.gaps = Some(self.gaps.clone());
        record.genus = Some(self.genus);
        record
    }

    fn upsilon(&self) -> Result<PiecewiseLinear, AppError> {
        let gaps = self.spec.gaps().map_err(|e| AppError::Internal(e.to_string()))?;
        upsilon_torsion(&staircase_from_gaps(&gaps))
            .map_err(|e| AppError::Internal(e.to_string()))
    }

    fn orders(&self, u: &PiecewiseLinear) -> Result<TorsionOrders, AppError> {
        let orders = extract_orders(u).map_err(|e| AppError::Internal(e.to_string()))?;
        if !orders.ord_prime_is_integral() {
            eprintln!(
                "warning: ord' = {} is not an integer; the gaps do not realize a knot",
                fraction_string(&orders.ord_prime)
            );
        }
        Ok(orders)
    }
}

fn run(cli: Cli) -> Result<u8, AppError> {
    match cli.command {
        Command::Alexander(args) => {
            let computed = Computed::resolve(&args.knot)?;
            match args.format {
                Format::Json => {
                    let mut record = Record::new(args.knot.clone());
                    record.alexander = Some(computed.alexander.clone());
                    println!("{}", record.to_json());
                }
                Format::Csv => println!("{}", computed.alexander.join(",")),
            }
            Ok(0)
        }
        Command::Gaps(args) => {
            let computed = Computed::resolve(&args.knot)?;
            match args.format {
                Format::Json => println!("{}", computed.record(&args.knot).to_json()),
                Format::Csv => println!(
                    "{}",
                    computed
                        .gaps
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            }
            Ok(0)
        }
        Command::Staircase(args) => {
            let computed = Computed::resolve(&args.knot)?;
            let gaps = computed
                .spec
                .gaps()
                .map_err(|e| AppError::Internal(e.to_string()))?;
            let complex = staircase_from_gaps(&gaps);
            let violations = validate_staircase(&complex);
            if !violations.is_empty() {
                return Err(AppError::Internal(format!(
                    "constructed staircase is invalid: {}",
                    violations.join("; ")
                )));
            }
            match args.format {
                Format::Json => {
                    let mut record = computed.record(&args.knot);
                    record.staircase = Some(dump_staircase(&complex));
                    println!("{}", record.to_json());
                }
                Format::Csv => {
                    for g in &complex.generators {
                        println!("generator,{},{},{},{}", g.index, g.x, g.y, g.grading);
                    }
                    for a in &complex.arrows {
                        println!("arrow,{},{}", a.source, a.target);
                    }
                }
            }
            Ok(0)
        }
        Command::Upsilon { args, samples } => {
            if samples == Some(0) {
                return Err(AppError::Input("--samples must be at least 1".to_string()));
            }
            let computed = Computed::resolve(&args.knot)?;
            let u = computed.upsilon()?;
            match args.format {
                Format::Json => {
                    if samples.is_some() {
                        eprintln!("warning: --samples only affects CSV output");
                    }
                    let mut record = computed.record(&args.knot);
                    record.upsilon = Some(breakpoints_of(&u));
                    println!("{}", record.to_json());
                }
                Format::Csv => {
                    println!("t,value");
                    for (t, v) in u.breakpoints().iter().zip(u.values()) {
                        println!("{}", csv_plot_row(t, v));
                    }
                    if let Some(n) = samples {
                        for i in 0..=n {
                            let t = Rat::new((2 * i).into(), n.into());
                            let v = u.eval(&t);
                            println!("{}", csv_plot_row(&t, &v));
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Orders(args) => {
            let computed = Computed::resolve(&args.knot)?;
            let u = computed.upsilon()?;
            let orders = computed.orders(&u)?;
            match args.format {
                Format::Json => {
                    let mut record = computed.record(&args.knot);
                    record.upsilon = Some(breakpoints_of(&u));
                    record.ord = Some(orders.ord);
                    record.ord_prime = Some(fraction_string(&orders.ord_prime));
                    println!("{}", record.to_json());
                }
                Format::Csv => {
                    println!("ord,ord_prime");
                    println!("{},{}", orders.ord, fraction_string(&orders.ord_prime));
                }
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let computed = Computed::resolve(&args.knot)?;
            let complex = verify::staircase_of(&computed.spec);
            let u = computed.upsilon()?;
            let orders = computed.orders(&u)?;
            let report = verify::run_checks(&computed.spec, &complex, &u, &orders);
            match args.format {
                Format::Json => {
                    let mut record = computed.record(&args.knot);
                    record.upsilon = Some(breakpoints_of(&u));
                    record.ord = Some(orders.ord);
                    record.ord_prime = Some(fraction_string(&orders.ord_prime));
                    record.checks = report.checks.clone();
                    println!("{}", record.to_json());
                }
                Format::Csv => {
                    println!("check,pass");
                    for c in &report.checks {
                        println!("{},{}", c.name, c.pass);
                    }
                }
            }
            if report.consistency_failure {
                eprintln!("error: internal consistency check failed");
                Ok(2)
            } else if report.mismatch {
                eprintln!("error: verification mismatch against a closed form");
                Ok(3)
            } else {
                Ok(0)
            }
        }
        Command::Sweep {
            p_range,
            k_range,
            jobs,
            format,
        } => {
            let p_range = sweep::parse_range(&p_range, "--p-range").map_err(AppError::Input)?;
            let k_range = sweep::parse_range(&k_range, "--k-range").map_err(AppError::Input)?;
            if p_range.0 < 2 {
                return Err(AppError::Input(
                    "--p-range: the twisted family needs p >= 2".to_string(),
                ));
            }
            if k_range.0 < 1 {
                return Err(AppError::Input(
                    "--k-range: the twisted family needs k >= 1".to_string(),
                ));
            }
            let jobs = jobs.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            if jobs == 0 {
                return Err(AppError::Input("--jobs must be at least 1".to_string()));
            }
            let rows = sweep::run(p_range, k_range, jobs).map_err(AppError::Internal)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&rows).expect("rows serialize")
                ),
                Format::Csv => {
                    println!("p,k,ord,ord_prime,breakpoints");
                    for r in &rows {
                        println!(
                            "{},{},{},{},{}",
                            r.p, r.k, r.ord, r.ord_prime, r.breakpoints
                        );
                    }
                }
            }
            Ok(0)
        }
    }
}
