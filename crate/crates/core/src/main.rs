use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use shiftmul::bitcore::Word;
use shiftmul::counters::RingCostModel;
use shiftmul::datapath::{render_trace, run, ArchConfig, Variant};
use shiftmul::harness::{
    emit_report, exhaustive_verify, sweep, DistKind, OperandDistribution, ReportFormat, ReportMeta,
    SweepConfig, RNG_NAME,
};
use shiftmul::power::{area_proxy, estimate_energy, PowerModel};
use shiftmul::SimError;

/// Published FPGA power reductions, printed for comparison only.
const PUBLISHED_REDUCTION: [(u32, f64); 2] = [(4, 20.51), (8, 35.25)];

#[derive(Parser)]
#[command(
    name = "shiftmul",
    version,
    about = "Shift-and-add multiplier switching-activity simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check both architectures against native multiplication on every operand pair.
    Verify {
        #[arg(long)]
        width: u32,
    },
    /// Simulate a single multiplication.
    Run {
        #[arg(long, value_parser = parse_variant)]
        arch: Variant,
        #[arg(long)]
        width: u32,
        #[arg(long, value_parser = parse_u64)]
        a: u64,
        #[arg(long, value_parser = parse_u64)]
        b: u64,
        /// Print the per-cycle table.
        #[arg(long)]
        trace: bool,
        /// Process only this many low multiplier bits.
        #[arg(long)]
        effective_width: Option<u32>,
        #[command(flatten)]
        cost: CostArgs,
    },
    /// Sweep widths over a stimulus distribution and write a report.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        widths: Vec<u32>,
        /// uniform, sparse, dense, exhaustive, or fixed:A,B
        #[arg(long, default_value = "uniform", value_parser = parse_dist)]
        dist: DistKind,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: ReportFormat,
        /// Capacitance weights, vdd and f_clk as `key = value` lines.
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        cost: CostArgs,
    },
}

#[derive(Args)]
struct CostArgs {
    /// Flip-flops per clock-gated ring block.
    #[arg(long, default_value_t = 4)]
    block_size: u32,
    /// Internal transitions per clocked flip-flop (s).
    #[arg(long, default_value_t = 2)]
    ffs_cost: u64,
    /// Gating-logic transitions per block per clock (g).
    #[arg(long, default_value_t = 1)]
    gate_cost: u64,
}

impl CostArgs {
    fn model(&self) -> RingCostModel {
        RingCostModel {
            ff_cost: self.ffs_cost,
            gate_cost: self.gate_cost,
            block_size: self.block_size,
        }
    }
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let (digits, radix) = match s.get(..2) {
        Some("0x") | Some("0X") => (&s[2..], 16),
        Some("0b") | Some("0B") => (&s[2..], 2),
        _ => (s, 10),
    };
    u64::from_str_radix(&digits.replace('_', ""), radix).map_err(|e| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: SimError| e.to_string())
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: SimError| e.to_string())
}

fn parse_dist(s: &str) -> Result<DistKind, String> {
    match s {
        "uniform" => Ok(DistKind::Uniform),
        "sparse" => Ok(DistKind::Sparse),
        "dense" => Ok(DistKind::Dense),
        "exhaustive" => Ok(DistKind::Exhaustive),
        other => {
            let pair = other
                .strip_prefix("fixed:")
                .ok_or_else(|| format!("unknown distribution `{other}`"))?;
            let (a, b) = pair.split_once(',').ok_or("expected fixed:A,B")?;
            Ok(DistKind::FixedPair {
                a: parse_u64(a)?,
                b: parse_u64(b)?,
            })
        }
    }
}

enum Failure {
    Usage(SimError),
    Runtime(SimError),
    Verification,
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Io { .. } | SimError::Serialize(_) => Failure::Runtime(e),
            other => Failure::Usage(other),
        }
    }
}

fn cmd_verify(width: u32) -> Result<(), Failure> {
    let verdict = exhaustive_verify(width)?;
    println!(
        "width {width}: {}/{} operand pairs match on both architectures",
        verdict.passed, verdict.pairs
    );
    for m in verdict.mismatches.iter().take(10) {
        println!(
            "  mismatch {}: {} x {} = {}, got {}",
            m.variant, m.a, m.b, m.expected, m.got
        );
    }
    if verdict.ok() {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL ({} mismatches)", verdict.mismatches.len());
        Err(Failure::Verification)
    }
}

fn cmd_run(
    arch: Variant,
    width: u32,
    a: u64,
    b: u64,
    trace: bool,
    effective_width: Option<u32>,
    cost: &CostArgs,
) -> Result<(), Failure> {
    let mut cfg = ArchConfig::new(arch, width)?.with_cost(cost.model())?;
    if let Some(k) = effective_width {
        cfg = cfg.with_effective_width(k)?;
    }
    let result = run(Word::exact(a, width)?, Word::exact(b, width)?, &cfg, trace)?;
    print!("{}", render_trace(&result));
    println!("cycles {}", result.cycles);
    for (cat, count) in result.ledger.iter() {
        println!("{:<22}{count}", cat.name());
    }
    println!(
        "{:<22}{}",
        "energy",
        estimate_energy(&result.ledger, &PowerModel::default())
    );
    let area = area_proxy(&cfg);
    println!(
        "area                  flip_flops={} full_adders={} mux_inputs={} gates={}",
        area.flip_flops, area.full_adders, area.mux_inputs, area.gates
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    widths: Vec<u32>,
    dist: DistKind,
    trials: u64,
    seed: u64,
    out: PathBuf,
    format: ReportFormat,
    model: Option<PathBuf>,
    cost: &CostArgs,
) -> Result<(), Failure> {
    let model = match model {
        Some(path) => PowerModel::load(&path)?,
        None => PowerModel::default(),
    };
    let cfg = SweepConfig {
        widths,
        dist: OperandDistribution::new(dist, seed),
        trials,
        model,
        cost: cost.model(),
    };
    let rows = sweep(&cfg)?;
    let meta = ReportMeta {
        generator: RNG_NAME.to_string(),
        seed,
        dist: dist.to_string(),
        trials,
        block_size: cost.block_size,
        ff_cost: cost.ffs_cost,
        gate_cost: cost.gate_cost,
    };
    emit_report(&rows, format, Some(&meta), &out)?;

    println!(
        "{:>5}  {:>9}  {:>14}  {:>10}  published",
        "width", "arch", "energy", "reduction"
    );
    for r in &rows {
        let published = match r.arch {
            Variant::LowPower => PUBLISHED_REDUCTION
                .iter()
                .find(|(w, _)| *w == r.width)
                .map_or("-".to_string(), |(_, p)| format!("{p:.2}%")),
            Variant::Conventional => String::new(),
        };
        println!(
            "{:>5}  {:>9}  {:>14.1}  {:>9.2}%  {published}",
            r.width,
            r.arch.name(),
            r.energy,
            r.reduction_pct
        );
    }
    println!("report written to {}", out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let outcome = match cli.command {
        Command::Verify { width } => cmd_verify(width),
        Command::Run {
            arch,
            width,
            a,
            b,
            trace,
            effective_width,
            cost,
        } => cmd_run(arch, width, a, b, trace, effective_width, &cost),
        Command::Sweep {
            widths,
            dist,
            trials,
            seed,
            out,
            format,
            model,
            cost,
        } => cmd_sweep(widths, dist, trials, seed, out, format, model, &cost),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
