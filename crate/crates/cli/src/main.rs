//! `selfnav`: compile single-qubit gates into XY-plane pulses and virtual-Z
//! frame shifts, sweep the evaluation grid, and verify schedule files.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use selfnav_bench::{eps_decades, evaluation_dataset_with, fit_log_model, run_sweep, RotationOrder, SweepRow};
use selfnav_cli::{GateSpec, ScheduleFile};
use selfnav_core::{allowed_axes, sn_compile, u3_compile, SnConfig};

/// Slack when comparing a re-evaluated error with the declared one.
const VERIFY_SLACK: f64 = 1e-12;

#[derive(Parser)]
#[command(name = "selfnav", version, about = "Approximate single-qubit gate compiler for XY pulses with virtual-Z frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile one gate and print its schedule
    Compile(CompileArgs),
    /// Sweep the 128-gate evaluation set over axis counts and target accuracies
    Bench(BenchArgs),
    /// Re-evaluate a schedule file against its target
    Verify(VerifyArgs),
}

#[derive(Args, Default)]
struct GateArgs {
    /// Named gate: I, X, Y, Z, H, S, T or SX
    #[arg(long, value_name = "NAME")]
    gate: Option<String>,
    /// U3 angles in radians
    #[arg(long, value_name = "THETA,PHI,LAM", allow_hyphen_values = true)]
    euler: Option<String>,
    /// Unit rotation axis (use with --angle)
    #[arg(long, value_name = "NX,NY,NZ", allow_hyphen_values = true, requires = "angle")]
    axis: Option<String>,
    /// Rotation angle in radians (use with --axis)
    #[arg(long, allow_hyphen_values = true, requires = "axis")]
    angle: Option<f64>,
    /// Inline 2x2 matrix as JSON; entries are numbers or [re, im]
    #[arg(long, value_name = "JSON")]
    matrix: Option<String>,
    /// File containing a 2x2 matrix in the --matrix format
    #[arg(long, value_name = "PATH")]
    matrix_file: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    gate: GateArgs,
    /// Number of allowed rotation axes (±z plus uniform XY-plane phases)
    #[arg(long, default_value_t = 18)]
    axes: usize,
    /// Target gate error 1 - F
    #[arg(long, default_value_t = 1e-4)]
    epsilon: f64,
    /// Use the exact U3 baseline instead of the greedy compiler
    #[arg(long)]
    baseline: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the JSON schedule to this file
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Order {
    XThenZ,
    ZThenX,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated axis counts
    #[arg(long, default_value = "6,10,18,34")]
    axes_list: String,
    /// Decade range FIRST:LAST, i.e. 1e-FIRST ... 1e-LAST
    #[arg(long, default_value = "1:8")]
    eps_decades: String,
    /// CSV output path (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Order of the two rotations generating each evaluation target
    #[arg(long, value_enum, default_value_t = Order::XThenZ)]
    order: Order,
}

#[derive(Args)]
struct VerifyArgs {
    /// Schedule file produced by `compile`
    #[arg(long, value_name = "PATH")]
    schedule: PathBuf,
    /// Target to check against; defaults to the target stored in the file
    #[command(flatten)]
    gate: GateArgs,
}

enum Failure {
    Usage(String),
    Operational(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Operational(e)
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

impl GateArgs {
    fn resolve(&self) -> Result<Option<GateSpec>, Failure> {
        let given = [
            self.gate.is_some(),
            self.euler.is_some(),
            self.axis.is_some(),
            self.matrix.is_some(),
            self.matrix_file.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if given > 1 {
            return Err(usage("give only one of --gate, --euler, --axis/--angle, --matrix, --matrix-file"));
        }
        let spec = if let Some(name) = &self.gate {
            GateSpec::named(name)
        } else if let Some(text) = &self.euler {
            GateSpec::euler(text)
        } else if let (Some(axis), Some(angle)) = (&self.axis, self.angle) {
            GateSpec::axis_angle(axis, angle)
        } else if let Some(text) = &self.matrix {
            GateSpec::matrix_json(text)
        } else if let Some(path) = &self.matrix_file {
            GateSpec::matrix_file(&path.to_string_lossy())
        } else {
            return Ok(None);
        };
        spec.map(Some).map_err(usage)
    }
}

fn cmd_compile(args: &CompileArgs) -> Result<(), Failure> {
    let spec = args
        .gate
        .resolve()?
        .ok_or_else(|| usage("a gate is required (--gate, --euler, --axis/--angle, --matrix or --matrix-file)"))?;
    let target = spec.unitary().map_err(usage)?;

    let (gate, n_axes) = if args.baseline {
        (u3_compile(&target).map_err(|e| anyhow!(e))?.0, None)
    } else {
        let axes = allowed_axes(args.axes).map_err(usage)?;
        let config = SnConfig::with_target(args.epsilon);
        config.validate().map_err(usage)?;
        let (gate, _) = sn_compile(&target, &axes, &config).context("compilation failed")?;
        (gate, Some(args.axes))
    };

    let file = ScheduleFile::from_compiled(spec, n_axes, args.epsilon, &gate);
    let json = file.to_json();
    if let Some(path) = &args.out {
        fs::write(path, format!("{json}\n")).with_context(|| format!("cannot write {}", path.display()))?;
    }
    match args.format {
        Format::Json => println!("{json}"),
        Format::Text => {
            match n_axes {
                Some(n) => println!("compiler     self-navigation, {n} axes, target epsilon {:e}", args.epsilon),
                None => println!("compiler     U3 baseline"),
            }
            for (i, p) in gate.pulses.iter().enumerate() {
                println!("pulse {i:<6} phase {:.12} rad  angle {:.12} rad", p.phase, p.angle);
            }
            println!("frame phase  {:.12} rad", gate.frame_phase);
            println!("epsilon      {:e}", gate.epsilon);
            println!("distance     {:.12} rad", gate.distance);
            println!("pulses       {}", gate.pulse_count);
            println!("iterations   {}", gate.iterations);
            println!("time         {:e} s", gate.compile_time);
        }
    }
    Ok(())
}

fn parse_axes_list(text: &str) -> Result<Vec<usize>, Failure> {
    let list = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("bad --axes-list {text:?}: {e}")))?;
    if list.is_empty() {
        return Err(usage("--axes-list is empty"));
    }
    Ok(list)
}

fn parse_decades(text: &str) -> Result<Vec<f64>, Failure> {
    let bad = || usage(format!("bad --eps-decades {text:?}, expected FIRST:LAST such as 1:8"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let (first, last): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if first == 0 || first > last || last > 15 {
        return Err(bad());
    }
    Ok(eps_decades(first, last))
}

fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> anyhow::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let axes_list = parse_axes_list(&args.axes_list)?;
    let eps_list = parse_decades(&args.eps_decades)?;
    let order = match args.order {
        Order::XThenZ => RotationOrder::XThenZ,
        Order::ZThenX => RotationOrder::ZThenX,
    };
    // open the output before spending time on the sweep
    let file = match &args.out {
        Some(path) => Some(fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?),
        None => None,
    };
    let rows = run_sweep(&axes_list, &eps_list, &evaluation_dataset_with(order)).map_err(usage)?;
    match file {
        Some(f) => write_csv(f, &rows)?,
        None => write_csv(io::stdout().lock(), &rows)?,
    }

    for &n in &axes_list {
        let sel: Vec<&SweepRow> = rows.iter().filter(|r| r.n_axes == n).collect();
        let eps: Vec<f64> = sel.iter().map(|r| r.eps_target).collect();
        let pulses: Vec<f64> = sel.iter().map(|r| r.pulses_mean).collect();
        let failures: usize = sel.iter().map(|r| r.failures).sum();
        match fit_log_model(&eps, &pulses) {
            Ok(fit) => eprintln!(
                "axes {n:>3}: pulses ~ {:.3}*log10(1/eps) + {:.3} (r2 {:.4}), failures {failures}",
                fit.slope, fit.intercept, fit.r2
            ),
            Err(_) => eprintln!("axes {n:>3}: too few points to fit, failures {failures}"),
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let text = fs::read_to_string(&args.schedule)
        .with_context(|| format!("cannot read {}", args.schedule.display()))?;
    let file = ScheduleFile::from_json(&text).with_context(|| format!("invalid schedule {}", args.schedule.display()))?;
    let spec = match args.gate.resolve()? {
        Some(spec) => spec,
        None => file.target.clone(),
    };
    let target = spec.unitary().map_err(usage)?;
    let epsilon = file.error_against(&target);
    let declared = file.epsilon.0;
    let ok = epsilon <= declared + VERIFY_SLACK;
    println!("pulses      {}", file.pulses.len());
    println!("declared    {declared:e}");
    println!("evaluated   {epsilon:e}");
    println!("status      {}", if ok { "OK" } else { "MISMATCH" });
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compile(args) => cmd_compile(args).map(|_| true),
        Command::Bench(args) => cmd_bench(args).map(|_| true),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Operational(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
