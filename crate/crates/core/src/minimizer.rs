//! Finite-difference energy minimisation at fixed mass.
//!
//! The half-line is truncated to `[0, L]` with `n` intervals of width `h`.
//! A field is the vector of nodal values `u_0 .. u_n`, with `u_n = 0`.
//!
//! ```text
//! F_h(u) = 1/2 sum_i ((u_{i+1} - u_i) / h)^2 h - 1/p sum_i w_i |u_i|^p + alpha/2 u_0^2
//! M_h(u) = sum_i w_i u_i^2,        w_0 = w_n = h/2, w_i = h otherwise
//! ```
//!
//! The Robin condition is not imposed; it is the natural boundary condition
//! of `F_h`. Minimisation runs a backward-Euler normalised gradient flow
//! with the nonlinearity frozen as a potential:
//!
//! ```text
//! (W + tau (K - W V(u))) u* = W u,    V(u) = |u|^(p-2),    u <- sqrt(mu / M_h(u*)) u*
//! ```
//!
//! with `K` the (tridiagonal) Hessian of the quadratic part and `W` the
//! trapezoid weights. Its fixed points solve the discrete Euler-Lagrange
//! equation exactly. `tau` is kept below `1 / omega`, which keeps the system
//! matrix positive definite near the minimiser; steps that raise the energy
//! are rejected and `tau` halved.

use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundstate::BoundState;
use crate::closedform::{check_power, is_critical, soliton_frequency_for_mass, soliton_value};
use crate::error::{NlsError, Result};
use crate::thresholds::{count_bound_states, least_energy_bound_state};

pub const MIN_INTERVALS: usize = 64;

/// Largest admissible `tau * omega`.
const TAU_OMEGA: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub length: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(length: f64, n: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(NlsError::domain(format!("grid length L = {length} must be positive")));
        }
        if n < MIN_INTERVALS {
            return Err(NlsError::domain(format!(
                "grid needs at least {MIN_INTERVALS} intervals (got {n})"
            )));
        }
        Ok(Grid { length, n })
    }

    /// Default truncation `L = max(30, 50 / sqrt(omega))`.
    pub fn for_frequency(omega: f64, n: usize) -> Result<Self> {
        Grid::new(30f64.max(50.0 / omega.sqrt()), n)
    }

    /// Truncation `L = max(peak, 0) + 8 / sqrt(omega)` for a profile peaked
    /// at `peak` that decays like `exp(-sqrt(omega) x)`: the neglected tail
    /// carries a fraction of order `exp(-16)` of the mass.
    pub fn fitted(peak: f64, omega: f64, n: usize) -> Result<Self> {
        Grid::new(peak.max(0.0) + 8.0 / omega.sqrt(), n)
    }

    pub fn h(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.length * i as f64 / self.n as f64
    }

    /// `h sqrt(omega) <= 0.1`
    pub fn resolves(&self, omega: f64) -> bool {
        self.h() * omega.sqrt() <= 0.1
    }

    fn weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.n {
            0.5 * self.h()
        } else {
            self.h()
        }
    }
}

/// Nodal values on a [`Grid`]; the last node is pinned to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteField {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl DiscreteField {
    pub fn new(grid: Grid, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n + 1 {
            return Err(NlsError::domain(format!(
                "field has {} samples, grid needs {}",
                values.len(),
                grid.n + 1
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(NlsError::domain(format!("non-finite sample {v}")));
        }
        values[grid.n] = 0.0;
        Ok(DiscreteField { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        DiscreteField {
            grid,
            values: vec![0.0; grid.n + 1],
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        DiscreteField::new(grid, (0..=grid.n).map(|i| f(grid.x(i))).collect())
    }

    /// Samples of a bound state.
    pub fn sample(state: &BoundState, grid: Grid) -> Result<Self> {
        DiscreteField::from_fn(grid, |x| state.evaluate(x))
    }

    pub fn mass(&self) -> f64 {
        discrete_mass(self)
    }

    pub fn energy(&self, p: f64, alpha: f64) -> f64 {
        discrete_energy(self, p, alpha)
    }

    /// `int x u^2 / int u^2`
    pub fn mass_center(&self) -> f64 {
        let g = &self.grid;
        let first: f64 = (0..=g.n).map(|i| g.weight(i) * g.x(i) * self.values[i].powi(2)).sum();
        first / self.mass()
    }

    pub fn scale_to_mass(&mut self, mu: f64) {
        let s = (mu / self.mass()).sqrt();
        self.values.iter_mut().for_each(|v| *v *= s);
    }

    /// Two columns `x u`, one node per line.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{:.17e} {:.17e}", self.grid.x(i), v)?;
        }
        Ok(())
    }

    /// Reads the format of [`write_text`](Self::write_text); nodes must be
    /// uniformly spaced from `x = 0`. Lines starting with `#` are skipped.
    pub fn read_text<R: BufRead>(input: R) -> Result<Self> {
        let mut xs = Vec::new();
        let mut us = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut cols = t.split_whitespace().map(str::parse::<f64>);
            match (cols.next(), cols.next(), cols.next()) {
                (Some(Ok(x)), Some(Ok(u)), None) => {
                    xs.push(x);
                    us.push(u);
                }
                _ => {
                    return Err(NlsError::Parse(format!(
                        "line {}: expected two numbers",
                        lineno + 1
                    )))
                }
            }
        }
        if xs.len() < MIN_INTERVALS + 1 {
            return Err(NlsError::Parse(format!("only {} nodes", xs.len())));
        }
        let n = xs.len() - 1;
        let grid = Grid::new(xs[n], n)?;
        if xs[0] != 0.0 {
            return Err(NlsError::Parse("first node must be x = 0".into()));
        }
        let h = grid.h();
        if xs.iter().enumerate().any(|(i, &x)| (x - grid.x(i)).abs() > 1e-9 * h.max(x.abs())) {
            return Err(NlsError::Parse("nodes are not uniformly spaced".into()));
        }
        DiscreteField::new(grid, us)
    }
}

pub fn discrete_mass(field: &DiscreteField) -> f64 {
    let g = &field.grid;
    field
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| g.weight(i) * v * v)
        .sum()
}

/// Kinetic, potential (`sum w |u|^p`) and trace (`u_0^2`) parts.
fn energy_parts(field: &DiscreteField, p: f64) -> (f64, f64, f64) {
    let g = &field.grid;
    let h = g.h();
    let u = &field.values;
    let kinetic: f64 = u.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum::<f64>() / h;
    let potential: f64 = u
        .iter()
        .enumerate()
        .map(|(i, v)| g.weight(i) * v.abs().powf(p))
        .sum();
    (kinetic, potential, u[0] * u[0])
}

pub fn discrete_energy(field: &DiscreteField, p: f64, alpha: f64) -> f64 {
    let (kin, pot, trace) = energy_parts(field, p);
    0.5 * kin - pot / p + 0.5 * alpha * trace
}

/// Solves a symmetric tridiagonal system with constant off-diagonal `off`.
fn thomas(diag: &[f64], off: f64, rhs: &mut [f64], scratch: &mut Vec<f64>) {
    let n = diag.len();
    scratch.clear();
    scratch.resize(n, 0.0);
    let mut denom = diag[0];
    scratch[0] = off / denom;
    rhs[0] /= denom;
    for i in 1..n {
        denom = diag[i] - off * scratch[i - 1];
        scratch[i] = off / denom;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= scratch[i] * rhs[i + 1];
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Initialization {
    /// The least-energy bound state of mass `mu` where one exists, else a random bump.
    BoundState,
    /// The line soliton centred at the origin, restricted and rescaled to mass `mu`.
    HalfSoliton,
    /// A seeded random positive bump.
    RandomBump,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowConfig {
    /// Initial pseudo-time step.
    pub step: f64,
    /// Stop once the relative energy decrease of an accepted step is below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Runs whose energy falls below this are flagged divergent.
    pub floor: f64,
    pub init: Initialization,
    pub seed: u64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            step: 1.0,
            tol: 1e-14,
            max_iter: 20_000,
            floor: -1e6,
            init: Initialization::BoundState,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowStatus {
    Converged,
    /// No step lowers the energy in floating point: stationary to rounding.
    Stalled,
    MaxIterations,
    /// The energy crossed the configured floor.
    Divergent,
}

impl FlowStatus {
    /// `Converged` or `Stalled`.
    pub fn is_settled(self) -> bool {
        matches!(self, FlowStatus::Converged | FlowStatus::Stalled)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FlowStatus::Converged => "converged",
            FlowStatus::Stalled => "stalled",
            FlowStatus::MaxIterations => "max-iterations",
            FlowStatus::Divergent => "divergent",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FlowOutcome {
    pub field: DiscreteField,
    pub energy: f64,
    pub iterations: usize,
    pub status: FlowStatus,
    /// Energy after every accepted step, starting with the initial field.
    pub history: Vec<f64>,
}

fn random_bump(grid: Grid, seed: u64) -> DiscreteField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = rng.gen_range(0.0..2.0);
    let width = rng.gen_range(0.5..3.0);
    let modes: [f64; 3] = [rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1)];
    let l = grid.length;
    let f = |x: f64| {
        let r = (x - center) / width;
        let wiggle: f64 = modes
            .iter()
            .enumerate()
            .map(|(k, c)| c * ((k + 1) as f64 * std::f64::consts::PI * x / l).cos())
            .sum();
        (-r * r).exp() * (1.0 + wiggle)
    };
    DiscreteField {
        grid,
        values: (0..=grid.n)
            .map(|i| if i == grid.n { 0.0 } else { f(grid.x(i)) })
            .collect(),
    }
}

/// Starting field of mass `mu`.
pub fn initial_field(
    p: f64,
    alpha: f64,
    mu: f64,
    grid: Grid,
    init: Initialization,
    seed: u64,
) -> Result<DiscreteField> {
    check_power(p)?;
    let mut field = match init {
        Initialization::BoundState => {
            if count_bound_states(p, alpha, mu)? > 0 {
                DiscreteField::sample(&least_energy_bound_state(p, alpha, mu)?, grid)?
            } else {
                random_bump(grid, seed)
            }
        }
        Initialization::HalfSoliton => {
            let omega = if is_critical(p) {
                1.0
            } else {
                soliton_frequency_for_mass(p, 2.0 * mu)?
            };
            let mut f = DiscreteField::zeros(grid);
            for i in 0..grid.n {
                f.values[i] = soliton_value(p, omega, grid.x(i))?;
            }
            f
        }
        Initialization::RandomBump => random_bump(grid, seed),
    };
    if field.mass() == 0.0 {
        return Err(NlsError::domain("initial field vanishes on the grid"));
    }
    field.scale_to_mass(mu);
    Ok(field)
}

/// Normalised gradient flow for `min F_h` on `{M_h = mu}`.
pub fn normalized_gradient_flow(
    p: f64,
    alpha: f64,
    mu: f64,
    grid: Grid,
    config: &FlowConfig,
) -> Result<FlowOutcome> {
    let start = initial_field(p, alpha, mu, grid, config.init, config.seed)?;
    flow_from(p, alpha, mu, start, config)
}

/// [`normalized_gradient_flow`] from a caller-supplied field.
pub fn flow_from(
    p: f64,
    alpha: f64,
    mu: f64,
    start: DiscreteField,
    config: &FlowConfig,
) -> Result<FlowOutcome> {
    check_power(p)?;
    if !(mu.is_finite() && mu > 0.0) {
        return Err(NlsError::domain(format!("mass mu = {mu} must be positive")));
    }
    if !(config.step > 0.0 && config.tol >= 0.0) {
        return Err(NlsError::domain("flow step must be positive and tol non-negative"));
    }
    let grid = start.grid;
    let n = grid.n;
    let h = grid.h();
    let mut field = start;
    field.scale_to_mass(mu);

    let tau_min = 1e-14 * h * h;
    let mut tau = config.step;

    let mut energy = field.energy(p, alpha);
    let mut history = vec![energy];
    let mut diag = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    let mut scratch = Vec::with_capacity(n);
    let mut trial = field.clone();

    let mut status = FlowStatus::MaxIterations;
    let mut iterations = 0;
    while iterations < config.max_iter {
        iterations += 1;
        // the lowest eigenvalue of K - W V(u) is close to -omega
        let omega = el_residual(&field, p, alpha).omega;
        if omega > 0.0 {
            tau = tau.min(TAU_OMEGA / omega);
        }
        let accepted = loop {
            let off = -tau / h;
            for i in 0..n {
                let w = grid.weight(i);
                let u = field.values[i];
                diag[i] = w * (1.0 - tau * u.abs().powf(p - 2.0)) + tau * 2.0 / h;
                rhs[i] = w * u;
            }
            diag[0] += tau * (alpha - 1.0 / h);
            thomas(&diag, off, &mut rhs, &mut scratch);
            trial.values[..n].copy_from_slice(&rhs);
            trial.values[n] = 0.0;
            let m = trial.mass();
            if m.is_finite() && m > 0.0 && trial.values.iter().all(|v| v.is_finite()) {
                trial.scale_to_mass(mu);
                let e = trial.energy(p, alpha);
                if e <= energy {
                    break Some(e);
                }
            }
            tau *= 0.5;
            if tau < tau_min {
                break None;
            }
        };
        let Some(e) = accepted else {
            status = FlowStatus::Stalled;
            break;
        };
        let decrease = energy - e;
        std::mem::swap(&mut field, &mut trial);
        energy = e;
        history.push(e);
        if energy < config.floor {
            status = FlowStatus::Divergent;
            break;
        }
        if decrease <= config.tol * energy.abs().max(f64::MIN_POSITIVE) {
            status = FlowStatus::Converged;
            break;
        }
        tau *= 2.0;
    }
    Ok(FlowOutcome {
        field,
        energy,
        iterations,
        status,
        history,
    })
}

/// Discrete Euler-Lagrange residuals of a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElResidual {
    /// `(||u||_p^p - ||u'||^2 - alpha u_0^2) / ||u||^2`
    pub omega: f64,
    /// `max_i |-(D^2 u)_i - |u_i|^(p-2) u_i + omega u_i|` over interior nodes.
    pub interior: f64,
    /// `|(u_1 - u_0)/h - alpha u_0|`
    pub boundary: f64,
}

pub fn el_residual(field: &DiscreteField, p: f64, alpha: f64) -> ElResidual {
    let (kin, pot, trace) = energy_parts(field, p);
    let mass = field.mass();
    let omega = (pot - kin - alpha * trace) / mass;
    let u = &field.values;
    let h = field.grid.h();
    let interior = u
        .windows(3)
        .map(|w| {
            let lap = (w[2] - 2.0 * w[1] + w[0]) / (h * h);
            (-lap - w[1].abs().powf(p - 2.0) * w[1] + omega * w[1]).abs()
        })
        .fold(0.0, f64::max);
    ElResidual {
        omega,
        interior,
        boundary: ((u[1] - u[0]) / h - alpha * u[0]).abs(),
    }
}

/// Discrete Pohozaev and Nehari residuals, each relative to `omega ||u||^2`.
///
/// `omega` is the least-squares multiplier of the interior equation, so that
/// neither identity holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals {
    pub omega: f64,
    pub pohozaev: f64,
    pub nehari: f64,
}

pub fn identity_residuals(field: &DiscreteField, p: f64, alpha: f64) -> IdentityResiduals {
    let (kin, pot, trace) = energy_parts(field, p);
    let mass = field.mass();
    let u = &field.values;
    let h = field.grid.h();
    let (mut num, mut den) = (0.0, 0.0);
    for w in u.windows(3) {
        let lap = (w[2] - 2.0 * w[1] + w[0]) / (h * h);
        num += w[1] * (lap + w[1].abs().powf(p - 2.0) * w[1]);
        den += w[1] * w[1];
    }
    let omega = num / den;
    let scale = (omega * mass).abs();
    IdentityResiduals {
        omega,
        pohozaev: (0.5 * kin + pot / p - 0.5 * omega * mass) / scale,
        nehari: (kin - pot + alpha * trace + omega * mass) / scale,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementRow {
    pub n: usize,
    pub h: f64,
    pub energy: f64,
    pub iterations: usize,
    pub status: FlowStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementTable {
    pub rows: Vec<RefinementRow>,
    /// `log2((E_k - E_{k+1}) / (E_{k+1} - E_{k+2}))` for consecutive triples.
    pub orders: Vec<f64>,
    /// `(4 E_finest - E_previous) / 3`
    pub richardson: f64,
}

/// Observed orders and the second-order extrapolation of a doubling sequence.
pub fn convergence_orders(energies: &[f64]) -> (Vec<f64>, f64) {
    let orders = energies
        .windows(3)
        .map(|e| ((e[0] - e[1]) / (e[1] - e[2])).log2())
        .collect();
    let k = energies.len();
    let richardson = if k >= 2 {
        (4.0 * energies[k - 1] - energies[k - 2]) / 3.0
    } else {
        f64::NAN
    };
    (orders, richardson)
}

/// Runs the flow on `grids` (at least three, each doubling `n` of the previous).
pub fn refinement_study(
    p: f64,
    alpha: f64,
    mu: f64,
    grids: &[Grid],
    config: &FlowConfig,
) -> Result<RefinementTable> {
    if grids.len() < 3 {
        return Err(NlsError::domain("refinement needs at least three grids"));
    }
    if grids.windows(2).any(|g| g[1].n != 2 * g[0].n || g[1].length != g[0].length) {
        return Err(NlsError::domain("grids must share L and double n"));
    }
    let mut rows = Vec::with_capacity(grids.len());
    for &grid in grids {
        let out = normalized_gradient_flow(p, alpha, mu, grid, config)?;
        rows.push(RefinementRow {
            n: grid.n,
            h: grid.h(),
            energy: out.energy,
            iterations: out.iterations,
            status: out.status,
        });
    }
    let energies: Vec<f64> = rows.iter().map(|r| r.energy).collect();
    let (orders, richardson) = convergence_orders(&energies);
    Ok(RefinementTable {
        rows,
        orders,
        richardson,
    })
}
