//! Command-line front end for the `twohop` binary.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::af::crossover_window;
use crate::channel::{ChannelParams, Duplex};
use crate::error::Error;
use crate::optimize::OptimizerSpec;
use crate::scheme::{evaluate, Scheme, SchemeResult};
use crate::sweep::{fmt_sig, regime_label, run_sweep, write_csv, write_json, SweepSpec, Vary};

#[derive(Debug, Parser)]
#[command(
    name = "twohop",
    version,
    about = "Achievable symmetric rates for two-hop Gaussian interference networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rate of one scheme at one channel instance.
    Rate(RateArgs),
    /// Every scheme at one channel instance.
    Compare(CompareArgs),
    /// Sweep one parameter and emit CSV (or JSON) rows.
    Sweep(SweepArgs),
    /// Power window where out-of-phase AF beats each hop's capacity (a = b).
    Window(WindowArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DuplexArg {
    Full,
    Half,
}

impl From<DuplexArg> for Duplex {
    fn from(d: DuplexArg) -> Self {
        match d {
            DuplexArg::Full => Duplex::Full,
            DuplexArg::Half => Duplex::Half,
        }
    }
}

#[derive(Debug, Args)]
pub struct OptimizerArgs {
    /// Grid points per optimization variable.
    #[arg(long, default_value_t = 101)]
    pub grid_points: usize,
    #[arg(long, default_value_t = 3)]
    pub refine_rounds: usize,
}

impl OptimizerArgs {
    fn spec(&self) -> OptimizerSpec {
        OptimizerSpec {
            coarse_points: self.grid_points,
            refine_rounds: self.refine_rounds,
            ..OptimizerSpec::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// First-hop cross gain.
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    /// Second-hop cross gain.
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    /// Transmitter power (linear).
    #[arg(long, allow_negative_numbers = true)]
    pub p1: f64,
    /// Relay power (linear).
    #[arg(long, allow_negative_numbers = true)]
    pub p2: f64,
    #[arg(long, value_enum, default_value_t = DuplexArg::Full)]
    pub duplex: DuplexArg,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, default_value = "df")]
    pub scheme: Scheme,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub opt: OptimizerArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub opt: OptimizerArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Parameter to vary: a, b, p1, p2 or p-joint (P1 = P2).
    #[arg(long)]
    pub vary: Vary,
    #[arg(long, allow_negative_numbers = true)]
    pub start: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: f64,
    #[arg(long)]
    pub points: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub p1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub p2: Option<f64>,
    /// Comma-separated scheme ids.
    #[arg(long, value_delimiter = ',', default_value = "df")]
    pub scheme: Vec<Scheme>,
    #[arg(long, value_enum, default_value_t = DuplexArg::Full)]
    pub duplex: DuplexArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub opt: OptimizerArgs,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn checked_spec(opt: &OptimizerArgs) -> Result<OptimizerSpec, CliError> {
    let spec = opt.spec();
    spec.validate().map_err(usage)?;
    Ok(spec)
}

fn point_params(p: &PointArgs) -> Result<ChannelParams, CliError> {
    Ok(ChannelParams::new(p.a, p.b, p.p1, p.p2)
        .map_err(usage)?
        .with_duplex(p.duplex.into()))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Rate(args) => cmd_rate(&args, out),
        Command::Compare(args) => cmd_compare(&args, out),
        Command::Sweep(args) => cmd_sweep(&args, out),
        Command::Window(args) => cmd_window(&args, out),
    }
}

fn result_json(scheme: Scheme, params: &ChannelParams, r: &SchemeResult) -> serde_json::Value {
    json!({
        "scheme": scheme.id(),
        "rate_bits": r.rate,
        "alpha": r.alpha,
        "beta": r.beta,
        "alpha2": r.alpha2,
        "share": r.share,
        "switched": r.switched,
        "regime": regime_label(scheme, params),
    })
}

fn write_result(
    out: &mut dyn Write,
    scheme: Scheme,
    params: &ChannelParams,
    r: &SchemeResult,
) -> io::Result<()> {
    let opt = |x: Option<f64>| x.map(fmt_sig).unwrap_or_else(|| "-".into());
    writeln!(out, "scheme     {}", scheme.id())?;
    writeln!(out, "rate_bits  {}", fmt_sig(r.rate))?;
    writeln!(out, "alpha      {}", opt(r.alpha))?;
    writeln!(out, "beta       {}", opt(r.beta))?;
    writeln!(out, "alpha2     {}", opt(r.alpha2))?;
    writeln!(out, "share      {}", opt(r.share))?;
    writeln!(out, "regime     {}", regime_label(scheme, params))?;
    writeln!(out, "switched   {}", r.switched)
}

pub fn cmd_rate(args: &RateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = point_params(&args.point)?;
    let spec = checked_spec(&args.opt)?;
    let scheme = args.scheme;
    let Some(result) = evaluate(scheme, &params, &spec)? else {
        return Err(usage(match scheme {
            Scheme::DfNaive => "df-naive needs a > 1 and b > 1",
            _ => "cap-per-hop needs 0 < a, b < 1 with both hops in noisy interference",
        }));
    };
    // the baseline is only meaningful next to the role-switched rate
    let contrast = if scheme == Scheme::DfNaive {
        evaluate(Scheme::Df, &params.with_duplex(Duplex::Full), &spec)?
    } else {
        None
    };

    if args.json {
        let mut v = result_json(scheme, &params, &result);
        if let Some(df) = contrast {
            v["df_rate_bits"] = json!(df.rate);
        }
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        )?;
    } else {
        write_result(out, scheme, &params, &result)?;
        if let Some(df) = contrast {
            writeln!(out, "df_rate    {}", fmt_sig(df.rate))?;
        }
    }
    Ok(())
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = point_params(&args.point)?;
    let spec = checked_spec(&args.opt)?;
    let mut rows = Vec::new();
    for scheme in Scheme::ALL {
        if let Some(r) = evaluate(scheme, &params, &spec)? {
            rows.push((scheme, r));
        }
    }
    if args.json {
        let v: Vec<_> = rows
            .iter()
            .map(|(s, r)| result_json(*s, &params, r))
            .collect();
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        )?;
    } else {
        writeln!(
            out,
            "{:<14} {:>16}  {:<13} switched",
            "scheme", "rate_bits", "regime"
        )?;
        for (s, r) in &rows {
            writeln!(
                out,
                "{:<14} {:>16}  {:<13} {}",
                s.id(),
                fmt_sig(r.rate),
                regime_label(*s, &params),
                r.switched
            )?;
        }
    }
    Ok(())
}

pub fn sweep_spec(args: &SweepArgs) -> Result<SweepSpec, CliError> {
    let given = |name: &str, v: Option<f64>, varied: bool| -> Result<f64, CliError> {
        match (v, varied) {
            (Some(_), true) => Err(usage(format!("--{name} is the swept parameter; drop it"))),
            (Some(x), false) => Ok(x),
            (None, true) => Ok(0.0),
            (None, false) => Err(usage(format!("--{name} is required when it is not swept"))),
        }
    };
    let v = args.vary;
    let a = given("a", args.a, v == Vary::A)?;
    let b = given("b", args.b, v == Vary::B)?;
    let p1 = given("p1", args.p1, matches!(v, Vary::P1 | Vary::PJoint))?;
    let p2 = given("p2", args.p2, matches!(v, Vary::P2 | Vary::PJoint))?;
    let base = ChannelParams::new(a, b, p1, p2).map_err(usage)?;
    let spec = SweepSpec {
        vary: v,
        start: args.start,
        stop: args.stop,
        points: args.points,
        base,
        schemes: args.scheme.clone(),
        duplex: args.duplex.into(),
    };
    spec.validate().map_err(usage)?;
    for x in [spec.start, spec.stop] {
        v.apply(&base, x).validate().map_err(usage)?;
    }
    Ok(spec)
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = sweep_spec(args)?;
    let opt = checked_spec(&args.opt)?;
    let rows = run_sweep(&spec, &opt)?;
    match &args.out {
        Some(path) => {
            let file = BufWriter::new(File::create(path)?);
            if args.json {
                write_json(&rows, file)?;
            } else {
                write_csv(&rows, file)?;
            }
        }
        None if args.json => write_json(&rows, out)?,
        None => write_csv(&rows, out)?,
    }
    Ok(())
}

pub fn cmd_window(args: &WindowArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let w = crossover_window(args.a).map_err(usage)?;
    if args.json {
        let v = json!({ "a": args.a, "lower": w.lower, "upper": w.upper, "nonempty": w.nonempty });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        )?;
    } else {
        writeln!(out, "a          {}", fmt_sig(args.a))?;
        writeln!(out, "lower      {}", fmt_sig(w.lower))?;
        writeln!(out, "upper      {}", fmt_sig(w.upper))?;
        writeln!(out, "nonempty   {}", w.nonempty)?;
    }
    Ok(())
}
