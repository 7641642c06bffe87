//! `deltanls`: bound states, thresholds and ground states of the half-line
//! NLS energy with a delta interaction at the origin.
//!
//! Exit codes: 0 ok, 1 usage or domain error, 2 no bound state of the requested
//! frequency or mass, 3 a verification check failed.

mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltanls::boundstate::{sample, BoundState};
use deltanls::closedform::{
    beta, check_power, critical_mass_halfline, is_critical, soliton_frequency_for_mass,
};
use deltanls::groundstate::decide;
use deltanls::minimizer::{el_residual, identity_residuals, normalized_gradient_flow};
use deltanls::thresholds::{
    alpha_threshold, count_bound_states, invert_mass, least_energy_bound_state, threshold_report,
};
use deltanls::verify::{self, RegimeFilter};
use deltanls::{BranchSelector, DiscreteField, FlowConfig, Grid, Initialization, NlsError};
use rayon::prelude::*;

use output::{emit, num, opt, Format, Summary, Table};
use sweep::Sweep;

#[derive(Parser)]
#[command(name = "deltanls", version, about = "NLS bound and ground states on the half-line with a delta interaction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The bound state at one frequency, or of one mass.
    BoundState(BoundStateArgs),
    /// Mass and energy along a frequency sweep.
    Curves(CurvesArgs),
    /// omega*, mu*, mu~ and the soliton thresholds of one (p, alpha).
    Thresholds(ThresholdArgs),
    /// Existence classification over a (mu, alpha) grid.
    PhaseDiagram(PhaseArgs),
    /// Run the self-check suite.
    Verify(VerifyArgs),
    /// Normalised gradient flow for the discrete constrained minimiser.
    Flow(FlowArgs),
}

#[derive(Args)]
struct Common {
    /// csv for sweeps, text (key=value) for summaries when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundStateArgs {
    #[arg(long)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
    omega: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    /// Branch for `--mu`; the least-energy state when omitted.
    #[arg(long, requires = "mu")]
    branch: Option<BranchSelector>,
    /// Truncation length of the profile dump (fitted to the decay by default).
    #[arg(long = "L")]
    length: Option<f64>,
    #[arg(long, default_value_t = 2048)]
    n: usize,
    /// Format of the summary on stdout.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the sampled profile here as two-column text.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurvesArgs {
    #[arg(long)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Frequencies, `[omega=]start:stop:count[:log]`.
    #[arg(long)]
    sweep: Sweep,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PhaseArgs {
    #[arg(long)]
    p: f64,
    /// Two sweeps, `mu=...` and `alpha=...` (unnamed: mu first).
    #[arg(long, num_args = 1, allow_hyphen_values = true, required = true)]
    sweep: Vec<Sweep>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    regime: RegimeFilter,
    #[arg(long, default_value_t = 20240607)]
    seed: u64,
    #[arg(long, hide = true, default_value_t = 1.0)]
    theta_scale: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Init {
    BoundState,
    HalfSoliton,
    RandomBump,
}

impl From<Init> for Initialization {
    fn from(i: Init) -> Self {
        match i {
            Init::BoundState => Initialization::BoundState,
            Init::HalfSoliton => Initialization::HalfSoliton,
            Init::RandomBump => Initialization::RandomBump,
        }
    }
}

#[derive(Args)]
struct FlowArgs {
    #[arg(long)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long)]
    mu: f64,
    #[arg(long = "L")]
    length: Option<f64>,
    #[arg(long, default_value_t = 4096)]
    n: usize,
    #[arg(long, default_value_t = 1e-14)]
    tol: f64,
    #[arg(long, default_value_t = 20000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "bound-state")]
    init: Init,
    /// Summary format on stdout.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the final field here as two-column text.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Nls(NlsError),
    Usage(String),
    Io(std::io::Error),
    ChecksFailed,
}

impl From<NlsError> for Failure {
    fn from(e: NlsError) -> Self {
        Failure::Nls(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Nls(
                NlsError::NoBoundState { .. }
                | NlsError::NoBoundStateOfMass { .. }
                | NlsError::OutOfRange { .. },
            ) => 2,
            Failure::ChecksFailed => 3,
            _ => 1,
        }
    }
}

type CmdResult = Result<(), Failure>;

fn bound_state(a: BoundStateArgs) -> CmdResult {
    let mut s = Summary::default();
    s.push("p", num(a.p)).push("alpha", num(a.alpha));
    let state = match (a.omega, a.mu) {
        (Some(omega), _) => BoundState::new(a.p, a.alpha, omega)?,
        (None, Some(mu)) => {
            s.push("mu", num(mu));
            s.push("bound_state_count", count_bound_states(a.p, a.alpha, mu)?.to_string());
            match a.branch {
                Some(b) => {
                    s.push("branch", b.to_string());
                    BoundState::new(a.p, a.alpha, invert_mass(a.p, a.alpha, mu, b)?)?
                }
                None => {
                    s.push("branch", "least-energy");
                    least_energy_bound_state(a.p, a.alpha, mu)?
                }
            }
        }
        (None, None) => return Err(Failure::Usage("one of --omega, --mu is required".into())),
    };
    let m = sample(a.p, a.alpha, state.omega)?;
    s.push("omega", num(state.omega))
        .push("shift", num(state.shift))
        .push("mass", num(m.mass))
        .push("energy", num(m.energy))
        .push("dmass_domega", num(m.dmass_domega))
        .push("denergy_domega", num(m.denergy_domega));
    if let Some(path) = &a.out {
        let grid = match a.length {
            Some(l) => Grid::new(l, a.n)?,
            None => Grid::fitted(state.shift, state.omega, a.n)?,
        };
        let mut buf = Vec::new();
        DiscreteField::sample(&state, grid)?.write_text(&mut buf)?;
        std::fs::write(path, buf)?;
        s.push("profile_length", num(grid.length)).push("profile_n", grid.n.to_string());
    }
    emit(&s.render(a.format), None)?;
    Ok(())
}

fn curves(a: CurvesArgs) -> CmdResult {
    check_power(a.p)?;
    if let Some(n) = a.sweep.name.as_deref().filter(|n| *n != "omega") {
        return Err(Failure::Usage(format!("curves sweeps omega, not '{n}'")));
    }
    let results: Vec<_> = a
        .sweep
        .points()
        .into_par_iter()
        .map(|omega| (omega, sample(a.p, a.alpha, omega)))
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut omitted = 0;
    for (omega, r) in results {
        match r {
            Ok(m) => rows.push(vec![
                num(m.omega),
                num(m.mass),
                num(m.energy),
                num(m.dmass_domega),
                num(m.denergy_domega),
            ]),
            Err(NlsError::NoBoundState { alpha_sq, .. }) => {
                omitted += 1;
                eprintln!("note: omega = {omega} <= alpha^2 = {alpha_sq}, no bound state; row omitted");
            }
            Err(e) => return Err(e.into()),
        }
    }
    let table = Table {
        config: vec![
            format!("deltanls curves p={} alpha={} omega={}", a.p, a.alpha, a.sweep),
            format!("rows={} omitted={omitted}", rows.len()),
        ],
        columns: vec!["omega", "mass", "energy", "dmass", "denergy"],
        rows,
    };
    emit(&table.render(a.common.format.unwrap_or(Format::Csv)), a.common.out.as_deref())?;
    Ok(())
}

fn thresholds(a: ThresholdArgs) -> CmdResult {
    let r = threshold_report(a.p, a.alpha)?;
    let mut s = Summary::default();
    s.push("p", num(r.p))
        .push("alpha", num(r.alpha))
        .push("soliton_mass_at_alpha_sq", num(r.soliton_mass_at_alpha_sq));
    if let Some(g) = r.gamma_p {
        s.push("gamma_p", num(g));
    }
    if is_critical(a.p) {
        s.push("critical_mass", num(critical_mass_halfline()));
    }
    if let (Some(ws), Some(ms), Some(mt)) = (r.omega_star, r.mu_star, r.mu_tilde) {
        s.push("omega_star", num(ws))
            .push("mu_star", num(ms))
            .push("mu_tilde", num(mt));
        // h~ inverts mu~, and sits above gamma_p mu^beta
        let h = alpha_threshold(a.p, mt)?.value;
        let lower = r.gamma_p.unwrap_or(f64::NAN) * mt.powf(beta(a.p));
        s.push("h_tilde_at_mu_tilde", num(h))
            .push("h_tilde_relative_gap", num((h - a.alpha).abs() / a.alpha))
            .push("h_tilde_above_gamma_bound", (h > lower).to_string());
    }
    emit(&s.render(a.common.format.unwrap_or(Format::Text)), a.common.out.as_deref())?;
    Ok(())
}

fn phase_diagram(a: PhaseArgs) -> CmdResult {
    check_power(a.p)?;
    let (mu, alpha) = match a.sweep.as_slice() {
        [x, y] => match (x.name.as_deref(), y.name.as_deref()) {
            (None | Some("mu"), None | Some("alpha")) => (x, y),
            (Some("alpha"), Some("mu")) => (y, x),
            _ => return Err(Failure::Usage("phase-diagram sweeps are named mu= and alpha=".into())),
        },
        _ => return Err(Failure::Usage("phase-diagram takes exactly two --sweep values".into())),
    };
    let cells: Vec<(f64, f64)> = mu
        .points()
        .into_iter()
        .flat_map(|m| alpha.points().into_iter().map(move |al| (m, al)))
        .collect();
    let results: Vec<_> = cells
        .par_iter()
        .map(|&(m, al)| if al == 0.0 { None } else { Some(decide(a.p, al, m)) })
        .collect();
    let mut rows = Vec::with_capacity(cells.len());
    for (&(m, al), r) in cells.iter().zip(results) {
        let Some(r) = r else {
            eprintln!("note: alpha = 0 at mu = {m} is outside the model; cell omitted");
            continue;
        };
        let r = r?;
        let value = match r.level.value() {
            v if v.is_finite() => num(v),
            _ => String::new(),
        };
        rows.push(vec![
            num(m),
            num(al),
            r.bound_state_count.to_string(),
            r.exists.to_string(),
            r.at_threshold.to_string(),
            r.level.tag().to_string(),
            value,
        ]);
    }
    let table = Table {
        config: vec![
            format!("deltanls phase-diagram p={} mu={} alpha={}", a.p, mu, alpha),
            "order=mu-major; level_value is empty when level=minus-infinity".into(),
        ],
        columns: vec![
            "mu",
            "alpha",
            "bound_state_count",
            "ground_state_exists",
            "at_threshold",
            "level",
            "level_value",
        ],
        rows,
    };
    emit(&table.render(a.common.format.unwrap_or(Format::Csv)), a.common.out.as_deref())?;
    Ok(())
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn run_verify(a: VerifyArgs) -> CmdResult {
    let report = verify::run(&verify::VerifyOptions {
        regime: a.regime,
        theta_scale: a.theta_scale,
        seed: a.seed,
    });
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let mut text = String::new();
    match a.common.format.unwrap_or(Format::Text) {
        Format::Text => {
            for c in &report.checks {
                text.push_str(&format!("{c}\n"));
            }
            text.push_str(&format!("passed={passed}\nfailed={}\n", report.checks.len() - passed));
        }
        Format::Csv => {
            text.push_str("id,critical,status,detail\n");
            for c in &report.checks {
                let status = if c.passed { "pass" } else { "fail" };
                text.push_str(&format!("{},{},{status},{}\n", c.id, c.critical, csv_quote(&c.detail)));
            }
        }
    }
    emit(&text, a.common.out.as_deref())?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

fn flow(a: FlowArgs) -> CmdResult {
    check_power(a.p)?;
    let report = decide(a.p, a.alpha, a.mu)?;
    let grid = match (a.length, report.minimizer) {
        (Some(l), _) => Grid::new(l, a.n)?,
        (None, Some(state)) => Grid::fitted(state.shift, state.omega, a.n)?,
        (None, None) => {
            let guess = if is_critical(a.p) {
                1.0
            } else {
                soliton_frequency_for_mass(a.p, 2.0 * a.mu)?
            };
            Grid::new(30f64.max(50.0 / guess.sqrt()), a.n)?
        }
    };
    let cfg = FlowConfig {
        tol: a.tol,
        max_iter: a.max_iter,
        init: a.init.into(),
        seed: a.seed,
        ..FlowConfig::default()
    };
    let out = normalized_gradient_flow(a.p, a.alpha, a.mu, grid, &cfg)?;
    let el = el_residual(&out.field, a.p, a.alpha);
    let id = identity_residuals(&out.field, a.p, a.alpha);

    let mut s = Summary::default();
    s.push("p", num(a.p))
        .push("alpha", num(a.alpha))
        .push("mu", num(a.mu))
        .push("L", num(grid.length))
        .push("n", grid.n.to_string())
        .push("status", out.status.as_str())
        .push("iterations", out.iterations.to_string())
        .push("energy", num(out.energy))
        .push("mass", num(out.field.mass()))
        .push("mass_center", num(out.field.mass_center()))
        .push("el_omega", num(el.omega))
        .push("el_interior", num(el.interior))
        .push("el_boundary", num(el.boundary))
        .push("pohozaev", num(id.pohozaev))
        .push("nehari", num(id.nehari))
        .push("ground_state_exists", report.exists.to_string())
        .push("level", report.level.tag())
        .push("closed_form_energy", opt(report.minimizer.map(|m| m.energy())))
        .push("line_level", opt(report.line_level));
    if let Some(path) = &a.out {
        let mut buf = Vec::new();
        out.field.write_text(&mut buf)?;
        std::fs::write(path, buf)?;
    }
    emit(&s.render(a.format), None)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::BoundState(a) => bound_state(a),
        Command::Curves(a) => curves(a),
        Command::Thresholds(a) => thresholds(a),
        Command::PhaseDiagram(a) => phase_diagram(a),
        Command::Verify(a) => run_verify(a),
        Command::Flow(a) => flow(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Nls(e) => eprintln!("error: {e}"),
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Io(e) => eprintln!("error: {e}"),
                Failure::ChecksFailed => eprintln!("error: verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
