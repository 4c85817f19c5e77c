//! Command-line front end: decompose a space fixture, enumerate the theta
//! subspace, or apply the Hecke and lift operators to a series file.
//!
//! Exit codes: 0 when every check passes, 2 when the run completed but a
//! mathematical check failed, 1 on operational errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shimdec_core::chars::DirichletCharacter;
use shimdec_core::decomp::{decompose, verify_report, AmbientSpace, DecomposeOptions, Mode};
use shimdec_core::field::{Field, NfElement, NumberField};
use shimdec_core::hecke::{t_p2_half, HeckeContext};
use shimdec_core::lift::{shimura_lift, LiftContext};
use shimdec_core::lmfdb::{lmfdb_fetch, LmfdbConfig};
use shimdec_core::newforms::{parse_packets, NewformPacket};
use shimdec_core::qseries::{QExpansion, Weight};
use shimdec_core::serial;
use shimdec_core::theta;

#[derive(Parser)]
#[command(name = "shimdec", about = "Exact decomposition of half-integral weight cusp form spaces", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose an ambient space fixture into the theta subspace and
    /// newform-indexed summands.
    Decompose(DecomposeArgs),
    /// Enumerate the theta subspace basis for a level and character.
    S0(S0Args),
    /// Apply the half-integral Hecke operator T_{p^2} to a series file.
    Hecke(HeckeArgs),
    /// Apply the Shimura lift Sh_t to a series file.
    Lift(LiftArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    /// Ambient space fixture (shimdec-space-1).
    #[arg(long)]
    space: PathBuf,
    /// Newform packet fixture (shimdec-newforms-1).
    #[arg(long)]
    newforms: Option<PathBuf>,
    /// Fetch packets from the configured web service instead of a file.
    #[arg(long)]
    fetch: bool,
    /// Eigenvalue bound for the distinguishing-prime search.
    #[arg(long, default_value_t = 100)]
    prime_bound: u64,
    /// certified (derive everything) or spot-check (verify the claimed grouping).
    #[arg(long, default_value = "certified")]
    mode: String,
    /// Report output path; defaults next to the space fixture.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render summand bases with symbolic roots on stdout.
    #[arg(long)]
    pretty: bool,
    /// Also run the post-hoc verification checks.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct S0Args {
    #[arg(long)]
    level: u64,
    /// Character encoding: trivial or kronecker:D.
    #[arg(long, default_value = "trivial")]
    char: String,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 50)]
    prec: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HeckeArgs {
    #[arg(long)]
    p: u64,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long)]
    t: u64,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Decompose(args) => cmd_decompose(args),
        Command::S0(args) => cmd_s0(args),
        Command::Hecke(args) => cmd_hecke(args),
        Command::Lift(args) => cmd_lift(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn read_json(path: &Path) -> shimdec_core::Result<serde_json::Value> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        shimdec_core::Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn write_json(path: &Path, value: &serde_json::Value) -> shimdec_core::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn cmd_decompose(args: DecomposeArgs) -> shimdec_core::Result<bool> {
    let space = AmbientSpace::from_json(&read_json(&args.space)?)?;
    let packets: Vec<NewformPacket> = if args.fetch {
        let config = LmfdbConfig::from_env();
        let chi_sq = space.character.pow(2).primitive_inducing();
        let char_spec = match chi_sq.encode() {
            serde_json::Value::String(s) => s,
            other => other.to_string(),
        };
        lmfdb_fetch(&config, space.k - 1, &char_spec, space.level / 2, args.prime_bound)?
    } else {
        let path = args.newforms.ok_or_else(|| {
            shimdec_core::Error::SchemaError("either --newforms or --fetch is required".into())
        })?;
        parse_packets(&read_json(&path)?)?
    };
    let mode = match args.mode.as_str() {
        "certified" => Mode::Certified,
        "spot-check" => Mode::SpotCheck,
        other => {
            return Err(shimdec_core::Error::SchemaError(format!(
                "unknown mode {other}; expected certified or spot-check"
            )))
        }
    };
    let opts = DecomposeOptions { mode, prime_bound: args.prime_bound, ..Default::default() };
    let mut report = decompose(&space, &packets, &opts)?;
    if args.verify {
        let extra = verify_report(&report, &space, &packets);
        report.checks.extend(extra);
    }

    println!("mode: {}", report.mode.as_str());
    println!("dim S0 = {}", report.s0.len());
    for (label, dim) in &report.dims {
        println!("dim S({label}) = {dim}");
    }
    println!("distinguishing primes: {:?}", report.primes_used.primes);
    for c in &report.checks {
        println!("check {}: {} ({})", c.name, if c.pass { "pass" } else { "FAIL" }, c.detail);
    }
    if args.pretty {
        let roots = root_labels(&packets);
        for (label, basis) in &report.summands {
            println!("S({label}):");
            for v in basis {
                println!("  {}", pretty_series(v, roots.get(label.as_str()).copied()));
            }
        }
    }

    let out = args.out.unwrap_or_else(|| args.space.with_extension("report.json"));
    write_json(&out, &report.to_json())?;
    println!("report written to {}", out.display());
    Ok(report.all_pass())
}

fn root_labels(packets: &[NewformPacket]) -> BTreeMap<&str, &str> {
    packets
        .iter()
        .filter_map(|p| p.root_label.as_deref().map(|r| (p.label.as_str(), r)))
        .collect()
}

fn pretty_series(v: &QExpansion<NumberField>, root: Option<&str>) -> String {
    let mut terms = Vec::new();
    for (n, c) in v.iter() {
        let rendered = pretty_element(c, root.unwrap_or("x"));
        let term = if rendered == "1" {
            format!("q^{n}")
        } else if rendered == "-1" {
            format!("-q^{n}")
        } else if rendered.contains(' ') {
            format!("({rendered})q^{n}")
        } else {
            format!("{rendered}q^{n}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        return "0".into();
    }
    format!("{} + O(q^{})", terms.join(" + "), v.precision)
}

fn pretty_element(e: &NfElement, root: &str) -> String {
    use num_traits::Zero;
    let mut parts = Vec::new();
    for (i, c) in e.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c_str = serial::rat_to_string(c);
        let part = match i {
            0 => c_str,
            1 => {
                if c_str == "1" {
                    root.to_string()
                } else if c_str == "-1" {
                    format!("-{root}")
                } else {
                    format!("{c_str}{root}")
                }
            }
            _ => format!("{c_str}{root}^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn cmd_s0(args: S0Args) -> shimdec_core::Result<bool> {
    let chi = DirichletCharacter::decode(&serde_json::Value::String(args.char.clone()), args.level)?;
    let basis = theta::s0_basis(args.level, &chi, args.k, args.prec)?;
    if basis.is_empty() && args.k >= 5 {
        println!("S0 = 0 for k >= 5");
    }
    println!("dim S0 = {}", basis.len());
    let mut entries = Vec::new();
    for (d, series) in &basis {
        println!("descriptor: conductor {}, t = {}", d.conductor(), d.t);
        entries.push(serde_json::json!({
            "psi": d.psi.encode(),
            "conductor": d.conductor(),
            "t": d.t,
            "series": serial::series_to_json(series),
        }));
    }
    if let Some(out) = args.out {
        write_json(&out, &serde_json::json!({ "s0": entries }))?;
        println!("basis written to {}", out.display());
    }
    Ok(true)
}

fn cmd_hecke(args: HeckeArgs) -> shimdec_core::Result<bool> {
    let series = serial::series_from_json(&read_json(&args.input)?)?;
    let k = match series.meta.weight {
        Weight::Half(k) => k,
        Weight::Integral(_) => {
            return Err(shimdec_core::Error::MetaMismatch(
                "hecke expects a half-integral weight series".into(),
            ))
        }
    };
    let ctx = HeckeContext::new(k, series.meta.level, series.meta.character.clone())?;
    let image = t_p2_half(&series, args.p, &ctx)?;
    println!("surviving precision: {}", image.precision);
    // report the scalar when the image is a multiple of the input
    if let Some(lead) = series.leading_index() {
        if lead >= 1 && lead < image.precision {
            let f = &series.field;
            let ratio = f.div(&image.coeff(lead)?, &series.coeff(lead)?)?;
            let scaled = series.truncate(image.precision).scale(&ratio);
            if scaled == image {
                println!("eigen scalar: {}", pretty_element(&ratio, "x"));
            }
        }
    }
    let out = args.out.unwrap_or_else(|| args.input.with_extension("hecke.json"));
    write_json(&out, &serial::series_to_json(&image))?;
    println!("series written to {}", out.display());
    Ok(true)
}

fn cmd_lift(args: LiftArgs) -> shimdec_core::Result<bool> {
    let series = serial::series_from_json(&read_json(&args.input)?)?;
    let k = match series.meta.weight {
        Weight::Half(k) => k,
        Weight::Integral(_) => {
            return Err(shimdec_core::Error::MetaMismatch(
                "lift expects a half-integral weight series".into(),
            ))
        }
    };
    let ctx = HeckeContext::new(k, series.meta.level, series.meta.character.clone())?;
    let lc = LiftContext::new(args.t, ctx)?;
    let lifted = shimura_lift(&series, &lc)?;
    println!("surviving precision: {}", lifted.precision);
    let out = args.out.unwrap_or_else(|| args.input.with_extension("lift.json"));
    write_json(&out, &serial::series_to_json(&lifted))?;
    println!("series written to {}", out.display());
    Ok(true)
}
