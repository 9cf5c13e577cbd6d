//! `bsq-lab` command line.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use boussinesq_core::asymptotics::{sector2_leading, u_sol, ModulatedSpectrum, ModulationContext, SolitonRoute};
use boussinesq_core::asymptotics::formulas::u_rad;
use boussinesq_core::scattering::{locate_zeros, map_k_grid, reflection_coefficients, residue_constants, SearchRect, ZeroSearchOptions};
use boussinesq_core::soliton::u_multisoliton;
use boussinesq_core::spectral::SpectralPoint;
use boussinesq_core::{Complex64, CoreError};
use clap::{Parser, Subcommand, ValueEnum};

use crate::compare::{compare_asymptotics, REFLECTIONLESS_TOLERANCE};
use crate::config::{self, AsymRequest, CompareRequest, ModulateRequest, PlotRequest, ScatterRequest, SolitonRequest};
use crate::csvio::{self, Table};
use crate::suite::{run_invariant_suite, Fault, SuiteConfig};
use crate::svg::{line_chart, Series};

#[derive(Debug, Parser)]
#[command(name = "bsq-lab", version, about = "Multi-soliton fields, scattering data and long-time asymptotics")]
pub struct Cli {
    /// JSON request for the subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = SuiteConfig::default().seed)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact multi-soliton field on a grid.
    Soliton,
    /// Reflection coefficients, zeros of s11 and residue constants of initial data.
    Scatter,
    /// Saddle point, nu and modulated soliton constants along rays.
    Modulate,
    /// Soliton, radiation and leading-wave terms of the long-time asymptotics.
    Asym,
    /// Run the invariant suite.
    Verify {
        #[arg(long, value_enum)]
        fault: Option<Fault>,
        /// Count known deviations as failures.
        #[arg(long)]
        strict: bool,
        /// Skip the zero search on seeded data.
        #[arg(long)]
        quick: bool,
    },
    /// Asymptotic prediction against the exact field along a ray.
    Compare,
    /// Line chart (SVG) of columns of a CSV file.
    Plot,
}

/// Exit status: 1 for bad input, 2 when a computation misses its accuracy target.
#[derive(Debug)]
pub enum CliError {
    Validation(anyhow::Error),
    Accuracy(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Accuracy(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(e) => write!(f, "error: {e:#}"),
            CliError::Accuracy(msg) => write!(f, "accuracy failure: {msg}"),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<CoreError>() {
            Some(CoreError::Accuracy { .. }) => CliError::Accuracy(format!("{e:#}")),
            _ => CliError::Validation(e),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::from(anyhow::Error::new(e))
    }
}

fn require_config(cli: &Cli) -> Result<&Path, CliError> {
    cli.config.as_deref().ok_or_else(|| CliError::Validation(anyhow!("this subcommand needs --config <file>")))
}

fn sink(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(table: &Table, cli: &Cli) -> anyhow::Result<()> {
    let mut w = sink(cli.out.as_deref())?;
    match cli.format {
        Format::Csv => table.write_csv(&mut w)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &table.to_json())?;
            writeln!(w)?;
        }
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Soliton => soliton(cli),
        Command::Scatter => scatter(cli),
        Command::Modulate => modulate(cli),
        Command::Asym => asym(cli),
        Command::Verify { fault, strict, quick } => verify(cli, *fault, *strict, *quick),
        Command::Compare => compare(cli),
        Command::Plot => plot(cli),
    }
}

/// Smallest ray slope the CLI evaluates; the saddles merge with `omega` at 1.
pub const MIN_ZETA: f64 = 1.0 + 1e-6;

/// Lifts `zeta` in `[1, MIN_ZETA)` to `MIN_ZETA` with a warning; smaller values are rejected.
pub fn admissible_zeta(zeta: f64) -> Result<f64, CliError> {
    if !(zeta >= 1.0) {
        return Err(CoreError::OutOfSector { zeta }.into());
    }
    if zeta < MIN_ZETA {
        eprintln!("warning: zeta = {zeta} raised to {MIN_ZETA}");
        return Ok(MIN_ZETA);
    }
    Ok(zeta)
}

fn zeta_values(set: &config::NumberSet) -> Result<Vec<f64>, CliError> {
    set.values()?.into_iter().map(admissible_zeta).collect()
}

fn soliton(cli: &Cli) -> Result<(), CliError> {
    let req: SolitonRequest = config::load(require_config(cli)?)?;
    let spec = req.spectrum.build()?;
    let mut table = Table::new(&["x", "t", "u", "provenance"]);
    for t in req.t.values()? {
        for x in req.x.values()? {
            let s = u_multisoliton(x, t, &spec)?;
            table.push(vec![x.into(), t.into(), s.u.into(), s.provenance.as_str().into()]);
        }
    }
    Ok(emit(&table, cli)?)
}

fn scatter(cli: &Cli) -> Result<(), CliError> {
    let req: ScatterRequest = config::load(require_config(cli)?)?;
    let data = req.initial_data.build()?;
    let mut table = Table::new(&["kind", "phi", "k_re", "k_im", "a_re", "a_im", "b_re", "b_im", "gap"]);
    if let Some(angles) = &req.arc_angles {
        let phis = angles.values()?;
        let ks: Vec<Complex64> = phis.iter().map(|&phi| Complex64::from_polar(1.0, phi)).collect();
        let values = map_k_grid(&ks, |k| reflection_coefficients(&data, SpectralPoint::new(k)?));
        for (phi, value) in phis.into_iter().zip(values) {
            let (r1, r2) = value?;
            table.push(vec![
                "reflection".into(),
                phi.into(),
                phi.cos().into(),
                phi.sin().into(),
                r1.re.into(),
                r1.im.into(),
                r2.re.into(),
                r2.im.into(),
                f64::NAN.into(),
            ]);
        }
    }
    if let Some(s) = &req.search {
        let rect = SearchRect::new(s.re_min, s.re_max, s.im_min, s.im_max)?;
        for zero in locate_zeros(&data, &rect, &ZeroSearchOptions::default())? {
            let cmp = residue_constants(&data, SpectralPoint::new(zero.k)?)?;
            table.push(vec![
                "zero".into(),
                zero.k.arg().into(),
                zero.k.re.into(),
                zero.k.im.into(),
                cmp.compact.re.into(),
                cmp.compact.im.into(),
                cmp.general.c.re.into(),
                cmp.general.c.im.into(),
                cmp.relative_gap().into(),
            ]);
        }
    }
    Ok(emit(&table, cli)?)
}

fn modulate(cli: &Cli) -> Result<(), CliError> {
    let req: ModulateRequest = config::load(require_config(cli)?)?;
    let spec = req.spectrum.build()?;
    let table_r = req.reflection.build()?;
    let mut table =
        Table::new(&["zeta", "k1_re", "k1_im", "nu", "delta_modulus", "kind", "index", "pole_re", "pole_im", "c_re", "c_im"]);
    for zeta in zeta_values(&req.zeta)? {
        let ctx = ModulationContext::new(zeta, table_r.clone(), &spec)?;
        let modulated = ModulatedSpectrum::modulated(&spec, &ctx)?;
        let head = |kind: &str, index: f64, pole: Complex64, c: Complex64| {
            vec![
                zeta.into(),
                ctx.k1.re.into(),
                ctx.k1.im.into(),
                ctx.nu.into(),
                ctx.delta_modulus_on_circle().into(),
                kind.into(),
                index.into(),
                pole.re.into(),
                pole.im.into(),
                c.re.into(),
                c.im.into(),
            ]
        };
        let nan = Complex64::new(f64::NAN, f64::NAN);
        table.push(head("saddle", f64::NAN, ctx.k1, nan));
        for (j, b) in modulated.breathers.iter().enumerate() {
            table.push(head("breather", j as f64, b.lambda, b.c));
        }
        for (j, s) in modulated.solitons.iter().enumerate() {
            table.push(head("soliton", j as f64, Complex64::new(s.k, 0.0), s.c));
        }
    }
    Ok(emit(&table, cli)?)
}

fn asym(cli: &Cli) -> Result<(), CliError> {
    let req: AsymRequest = config::load(require_config(cli)?)?;
    let spec = req.spectrum.build()?;
    let table_r = req.reflection.build()?;
    let mut table = Table::new(&["zeta", "t", "u_sol", "u_rad_over_sqrt_t", "u_leading", "A", "alpha"]);
    let times = req.t.values()?;
    if let Some(t) = times.iter().find(|t| !(**t > 0.0)) {
        return Err(CliError::Validation(anyhow!("times must be positive, got {t}")));
    }
    for zeta in zeta_values(&req.zeta)? {
        let ctx = ModulationContext::new(zeta, table_r.clone(), &spec)?;
        for &t in &times {
            let x = zeta * t;
            let sol = u_sol(x, t, &spec, &ctx, SolitonRoute::Determinant)?.u;
            let rad = u_rad(x, t, &spec, &ctx)?.u / t.sqrt();
            let lead = sector2_leading(t, &ctx, &spec, req.epsilon)?;
            // Inside a soliton band the leading-wave formula does not apply.
            let u_leading = if lead.nearby_soliton.is_some() { f64::NAN } else { lead.u_leading };
            table.push(vec![
                zeta.into(),
                t.into(),
                sol.into(),
                rad.into(),
                u_leading.into(),
                lead.amplitude.into(),
                lead.phase.into(),
            ]);
        }
    }
    Ok(emit(&table, cli)?)
}

fn verify(cli: &Cli, fault: Option<Fault>, strict: bool, quick: bool) -> Result<(), CliError> {
    let outcome = run_invariant_suite(&SuiteConfig { seed: cli.seed, fault, strict, quick });
    let mut table = Table::new(&["check", "status", "measured", "tolerance", "runtime_ms", "detail"]);
    for r in &outcome.reports {
        table.push(vec![
            r.check_name.as_str().into(),
            r.status().into(),
            r.measured.into(),
            r.tolerance.into(),
            r.runtime_ms.into(),
            r.detail.as_str().into(),
        ]);
    }
    if cli.out.is_some() {
        emit(&table, cli)?;
    }
    let mut err = io::stderr().lock();
    for r in &outcome.reports {
        let _ = writeln!(err, "{r}");
    }
    let failed = outcome.failures().count();
    let deviations = outcome.reports.iter().filter(|r| !r.passed && r.known_deviation).count();
    let _ = writeln!(
        err,
        "{} checks, {} failed, {} known deviation(s), {:.0} ms",
        outcome.reports.len(),
        failed,
        deviations,
        outcome.runtime_ms
    );
    if failed > 0 {
        return Err(CliError::Accuracy(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn compare(cli: &Cli) -> Result<(), CliError> {
    let req: CompareRequest = config::load(require_config(cli)?)?;
    let spec = req.spectrum.build()?;
    let outcome = compare_asymptotics(&spec, req.reflection.build()?, admissible_zeta(req.zeta)?, &req.t.values()?)?;
    emit(&outcome.to_table(), cli)?;
    let mut err = io::stderr().lock();
    match outcome.envelope_slope {
        Some(s) => {
            let _ = writeln!(err, "radiation envelope slope in ln t: {s:.6} (expected -0.5)");
        }
        None => {
            let _ = writeln!(err, "no radiation; envelope slope undefined");
        }
    }
    if let Some(d) = outcome.max_deviation() {
        let _ = writeln!(err, "max deviation from exact field: {d:.3e}");
        if d > REFLECTIONLESS_TOLERANCE {
            return Err(CliError::Accuracy(format!("deviation {d:e} exceeds {REFLECTIONLESS_TOLERANCE:e}")));
        }
    } else {
        let _ = writeln!(err, "reflection present: rows are predictions only");
    }
    Ok(())
}

fn plot(cli: &Cli) -> Result<(), CliError> {
    let req: PlotRequest = config::load(require_config(cli)?)?;
    let file = File::open(&req.input).with_context(|| format!("opening {}", req.input.display()))?;
    let data = csvio::read_csv(file)?;
    let xs = data.column(&req.x)?;
    let mut series = Vec::with_capacity(req.y.len());
    for name in &req.y {
        series.push(Series { name, points: xs.iter().copied().zip(data.column(name)?).collect() });
    }
    let svg = line_chart(&req.title, &req.x, &series);
    let mut w = sink(cli.out.as_deref())?;
    w.write_all(svg.as_bytes()).context("writing svg")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arguments_parse() {
        let cli = Cli::try_parse_from(["bsq-lab", "verify", "--fault", "beta-identity", "--strict", "--seed", "7"]).unwrap();
        assert_eq!(cli.seed, 7);
        assert!(matches!(cli.command, Command::Verify { fault: Some(Fault::BetaIdentity), strict: true, quick: false }));
        let cli = Cli::try_parse_from(["bsq-lab", "asym", "--config", "a.json", "--format", "json"]).unwrap();
        assert_eq!(cli.format, Format::Json);
    }

    #[test]
    fn missing_config_is_a_validation_error() {
        let cli = Cli::try_parse_from(["bsq-lab", "soliton"]).unwrap();
        assert_eq!(run(&cli).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn zeta_near_one_is_lifted_and_below_one_rejected() {
        assert_eq!(admissible_zeta(1.0).unwrap(), MIN_ZETA);
        assert_eq!(admissible_zeta(2.0).unwrap(), 2.0);
        assert_eq!(admissible_zeta(0.9).unwrap_err().exit_code(), 1);
        assert_eq!(admissible_zeta(f64::NAN).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn accuracy_errors_map_to_exit_two() {
        let e = CliError::from(CoreError::Accuracy { what: "x".into(), achieved: 1.0, target: 0.1 });
        assert_eq!(e.exit_code(), 2);
        assert_eq!(CliError::from(CoreError::ZeroSpectralParameter).exit_code(), 1);
    }
}
