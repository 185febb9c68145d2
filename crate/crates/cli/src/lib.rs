//! The `foulkes` command line: argument parsing, output formatting and the
//! golden-corpus checks behind `selftest`.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use foulkes_core::blocks::{self, BlockId};
use foulkes_core::bounds::check_prime;
use foulkes_core::foulkes::{self as fk, SummandReport};
use foulkes_core::selftest::{self, Fault, SelftestConfig, SuiteOutcome};
use foulkes_core::weight2::{self, ChainTag};
use foulkes_core::{Abacus, Bounds, Error, Partition};

pub mod golden;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "foulkes",
    version,
    about = "Modular structure of the Foulkes modules H^(2^n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// An odd prime.
    #[arg(long)]
    p: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest partition size to enumerate (default 60, or $FOULKES_BOUND).
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Debug, Args)]
struct WithPartition {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = false)]
    partition: Partition,
}

#[derive(Debug, Args)]
struct WithBeads {
    #[command(flatten)]
    inner: WithPartition,
    /// Number of beads (default: the number of parts).
    #[arg(long)]
    beads: Option<usize>,
}

#[derive(Debug, Args)]
struct WithN {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct ScottArgs {
    #[command(flatten)]
    common: Common,
    /// The principal block core is (2k).
    #[arg(long)]
    k: usize,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest partition size for the exhaustive suites.
    #[arg(long, default_value_t = 16)]
    bound: usize,
    /// Largest n for the witness suite.
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Skew one leg length so that the delta suite must fail.
    #[arg(long)]
    inject_fault: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// p-core and p-weight of a partition.
    Core(WithPartition),
    /// p-quotient on an abacus.
    Quotient(WithBeads),
    /// Draw the abacus.
    Abacus(WithBeads),
    /// w(γ) of a p-core.
    Wgamma(WithPartition),
    /// w(γ) and E(γ) of a p-core.
    Eset(WithPartition),
    /// δ of a weight-2 partition.
    Delta(WithPartition),
    /// Δ of a weight-2 partition.
    Ddelta(WithPartition),
    /// Colour of a weight-2 partition with δ = 0.
    Colour(WithPartition),
    /// ν° of a p-regular weight-2 partition.
    Nucirc(WithPartition),
    /// Decomposition column of a p-regular partition of weight at most 2.
    Column(WithPartition),
    /// The even and δ = 1 partitions of B(core, 2); --partition gives the core.
    Chain(WithPartition),
    /// The even witness partition of 2n.
    Witness(WithN),
    /// Even partitions of 2n grouped by block.
    Character(WithN),
    /// Summands of H^(2^n) block by block.
    Analyze(WithN),
    /// Loewy structure of the Scott module in B((2k), 2).
    Scott(ScottArgs),
    /// A block for each vertex Q_t.
    Vertices(WithN),
    /// Number of summands with the largest vertex.
    Maxvertex(WithN),
    /// Run the oracle suites and golden checks.
    Selftest(SelftestArgs),
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_invariant_violation() {
                EXIT_INVARIANT
            } else {
                EXIT_USAGE
            },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Parses `argv` (including the program name), runs the command and writes
/// its output; returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn bounds_for(common: &Common) -> std::result::Result<Bounds, Failure> {
    check_prime(common.p)?;
    let from_env = std::env::var("FOULKES_BOUND").ok();
    let max_size = match (common.bound, from_env) {
        (Some(b), _) => b,
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("FOULKES_BOUND={v} is not a number")))?,
        (None, None) => Bounds::default().max_size,
    };
    Ok(Bounds {
        max_size,
        ..Bounds::default()
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn no_dot(format: Format) -> std::result::Result<(), Failure> {
    if format == Format::Dot {
        return Err(usage("dot output is available for analyze and scott only"));
    }
    Ok(())
}

fn list(items: &[Partition]) -> String {
    items
        .iter()
        .map(Partition::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Core(a) => {
            let c = &a.common;
            bounds_for(c)?;
            no_dot(c.format)?;
            let b = blocks::block_of(&a.partition, c.p)?;
            Ok(match c.format {
                Format::Json => json(
                    &json!({"partition": a.partition, "p": c.p, "core": b.core, "weight": b.weight}),
                ),
                _ => format!("core {}\nweight {}\n", b.core, b.weight),
            })
        }
        Command::Quotient(a) => {
            let (abacus, c) = abacus_of(&a)?;
            let q = abacus.p_quotient();
            Ok(match c.format {
                Format::Json => json(&q),
                _ => format!(
                    "beads {}\nquotient ({})\nweight {}\n",
                    q.bead_count,
                    q.components
                        .iter()
                        .map(Partition::to_string)
                        .collect::<Vec<_>>()
                        .join(", "),
                    q.weight
                ),
            })
        }
        Command::Abacus(a) => {
            let (abacus, c) = abacus_of(&a)?;
            Ok(match c.format {
                Format::Json => json(&abacus),
                _ => abacus.render(),
            })
        }
        Command::Wgamma(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            no_dot(c.format)?;
            let prof = blocks::core_profile(&a.partition, c.p, &bounds)?;
            Ok(match c.format {
                Format::Json => json(&json!({"core": prof.core, "w": prof.w})),
                _ => format!("w {}\n", prof.w),
            })
        }
        Command::Eset(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            no_dot(c.format)?;
            let prof = blocks::core_profile(&a.partition, c.p, &bounds)?;
            Ok(match c.format {
                Format::Json => json(&prof),
                _ => format!("w {}\nE {}\n", prof.w, list(&prof.e_set)),
            })
        }
        Command::Delta(a) => {
            let c = &a.common;
            bounds_for(c)?;
            no_dot(c.format)?;
            let d = weight2::hook_pair(&a.partition, c.p)?;
            Ok(match c.format {
                Format::Json => json(
                    &json!({"partition": a.partition, "p": c.p, "delta": d.delta,
                    "leg1": d.leg1, "leg2": d.leg2, "two_hook_flag": d.two_hook_flag}),
                ),
                _ => format!("{}\n", d.delta),
            })
        }
        Command::Ddelta(a) => {
            let c = &a.common;
            bounds_for(c)?;
            no_dot(c.format)?;
            let d = weight2::big_delta(&a.partition, c.p)?;
            Ok(match c.format {
                Format::Json => json(&json!({"partition": a.partition, "p": c.p, "big_delta": d})),
                _ => format!("{d}\n"),
            })
        }
        Command::Colour(a) => {
            let c = &a.common;
            bounds_for(c)?;
            no_dot(c.format)?;
            let col = weight2::colour(&a.partition, c.p)?;
            Ok(match c.format {
                Format::Json => json(&json!({"partition": a.partition, "p": c.p, "colour": col})),
                _ => format!("{col}\n"),
            })
        }
        Command::Nucirc(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            no_dot(c.format)?;
            let circ = weight2::nu_circ(&a.partition, c.p, &bounds)?;
            Ok(match c.format {
                Format::Json => json(&json!({"nu": a.partition, "p": c.p, "nu_circ": circ})),
                _ => format!("{circ}\n"),
            })
        }
        Command::Column(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            no_dot(c.format)?;
            let block = blocks::block_of(&a.partition, c.p)?;
            let col = weight2::decomp_column(&a.partition, &block, &bounds)?;
            Ok(match c.format {
                Format::Json => json(&col),
                _ => col
                    .rows
                    .iter()
                    .map(|r| format!("{} {}\n", r.d, r.mu))
                    .collect(),
            })
        }
        Command::Chain(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            no_dot(c.format)?;
            let block = BlockId::new(c.p, a.partition.clone(), 2)?;
            let chain = weight2::chain(&block, &bounds)?;
            Ok(match c.format {
                Format::Json => json(&chain.elements),
                _ => chain
                    .elements
                    .iter()
                    .map(|e| {
                        let label = e.label.map_or(String::new(), |l| l.to_string());
                        let tag = match e.tag {
                            ChainTag::Even => "even",
                            ChainTag::Delta1 => "delta1",
                        };
                        let singular = if e.regular { "" } else { " singular" };
                        format!("{label}\t{}\t{tag}{singular}\n", e.partition)
                    })
                    .collect(),
            })
        }
        Command::Witness(a) => {
            let c = &a.common;
            bounds_for(c)?;
            no_dot(c.format)?;
            let w = blocks::witness(a.n, c.p)?;
            Ok(match c.format {
                Format::Json => json(&w),
                _ => format!("{}\n", w.partition),
            })
        }
        Command::Character(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            no_dot(c.format)?;
            let ch = fk::character(a.n, c.p, &bounds)?;
            Ok(match c.format {
                Format::Json => json(
                    &ch.iter()
                        .map(|(b, evens)| json!({"block": b, "character": evens}))
                        .collect::<Vec<_>>(),
                ),
                _ => ch
                    .iter()
                    .map(|(b, evens)| format!("{b}: {}\n", list(evens)))
                    .collect(),
            })
        }
        Command::Analyze(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            let report = fk::analyze(a.n, c.p, &bounds)?;
            Ok(match c.format {
                Format::Json => json(&report),
                Format::Dot => report
                    .blocks
                    .iter()
                    .filter_map(SummandReport::to_dot)
                    .collect(),
                Format::Text => report
                    .blocks
                    .iter()
                    .map(summand_text)
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
        Command::Scott(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            let s = fk::scott(c.p, a.k, &bounds)?;
            Ok(match c.format {
                Format::Json => json(&s),
                Format::Dot => s.to_dot(),
                Format::Text => {
                    let labelled = |xs: &[Partition], ls: &[weight2::Label]| {
                        xs.iter()
                            .zip(ls)
                            .map(|(x, l)| format!("{l} {x}"))
                            .collect::<Vec<_>>()
                            .join("  ")
                    };
                    format!(
                        "top    {}\nheart  {}\nsocle  {}\n",
                        labelled(&s.top, &s.top_labels),
                        labelled(&s.heart, &s.heart_labels),
                        labelled(&s.socle, &s.top_labels)
                    )
                }
            })
        }
        Command::Vertices(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            no_dot(c.format)?;
            let v = fk::vertex_spectrum(a.n, c.p, &bounds)?;
            Ok(match c.format {
                Format::Json => json(&v),
                _ => v
                    .iter()
                    .map(|w| format!("Q_{}  witness {}  {}\n", w.t, w.witness, w.block))
                    .collect(),
            })
        }
        Command::Maxvertex(a) => {
            let c = &a.common;
            let bounds = bounds_for(c)?;
            no_dot(c.format)?;
            let m = fk::max_vertex_count(a.n, c.p, &bounds)?;
            Ok(match c.format {
                Format::Json => json(&m),
                _ => format!("Q_{} summands {}\ncores {}\n", m.t, m.count, list(&m.cores)),
            })
        }
        Command::Selftest(a) => run_selftest(&a),
    }
}

fn abacus_of(a: &WithBeads) -> std::result::Result<(Abacus, &Common), Failure> {
    let c = &a.inner.common;
    bounds_for(c)?;
    no_dot(c.format)?;
    let beads = a.beads.unwrap_or(a.inner.partition.len());
    Ok((Abacus::from_partition(&a.inner.partition, c.p, beads)?, c))
}

fn summand_text(r: &SummandReport) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}  {:?}", r.block, r.kind);
    if let Some(l) = &r.label {
        let letter = if r.kind == fk::SummandKind::SimpleSpecht {
            "S"
        } else {
            "P"
        };
        let _ = write!(s, "  {letter}^{l}");
    }
    let _ = writeln!(s, "  vertex Q_{}", r.vertex_t);
    let _ = writeln!(s, "  character {}", list(&r.character));
    if !r.composition.is_empty() {
        let parts: Vec<String> = r
            .composition
            .iter()
            .map(|f| format!("D^{} x{}", f.label, f.multiplicity))
            .collect();
        let _ = writeln!(s, "  composition {}", parts.join(", "));
    }
    if let Some(layers) = &r.loewy_layers {
        for layer in layers {
            let _ = writeln!(s, "  | {}", list(layer));
        }
    }
    if let Some(note) = &r.green_correspondent_note {
        let _ = writeln!(s, "  {note}");
    }
    for note in &r.notes {
        let _ = writeln!(s, "  note: {note}");
    }
    if !r.definitive {
        let _ = writeln!(s, "  (not definitive)");
    }
    s
}

fn run_selftest(a: &SelftestArgs) -> Outcome {
    no_dot(a.format)?;
    let config = SelftestConfig {
        max_size: a.bound,
        max_n: a.n,
        fault: a.inject_fault.then_some(Fault::FlipLeg),
        ..SelftestConfig::default()
    };
    let mut suites: Vec<SuiteOutcome> = selftest::run(&config);
    suites.push(golden::check_all());
    let failed = suites.iter().filter(|s| !s.passed()).count();
    let text = match a.format {
        Format::Json => json(&suites),
        _ => {
            let mut s = String::new();
            for suite in &suites {
                let _ = writeln!(
                    s,
                    "{:<4} {:<22} {:>7} checks {:>6} ms",
                    if suite.passed() { "ok" } else { "FAIL" },
                    suite.name,
                    suite.checked,
                    suite.elapsed.as_millis()
                );
                for f in &suite.failures {
                    let _ = writeln!(s, "       {f}");
                }
            }
            s
        }
    };
    if failed > 0 {
        return Err(Failure {
            code: EXIT_INVARIANT,
            message: format!("{failed} suite(s) failed\n{text}"),
        });
    }
    Ok(text)
}
