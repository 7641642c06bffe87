//! Ground-state existence, the energy level `F(mu)`, and the critical
//! dichotomy.
//!
//! | regime              | ground state exists iff        | level without one             |
//! |---------------------|--------------------------------|-------------------------------|
//! | `p < 6, alpha < 0`  | always                         |                               |
//! | `p <= 4, alpha > 0` | `mu > ||phi_{alpha^2}||^2`     | `-theta_p mu^(2b+1)`, not attained |
//! | `4 < p < 6, alpha > 0` | `mu >= mu~(alpha)`          | `-theta_p mu^(2b+1)`, not attained |
//! | `p = 6, alpha < 0`  | `mu < sqrt(3) pi / 4`          | `-inf`                        |
//! | `p = 6, alpha > 0`  | never                          | `0` up to `sqrt(3) pi / 4`, then `-inf` |
//!
//! Whenever a ground state exists it is the least-energy positive bound state.

use crate::boundstate::{check_alpha, BoundState};
use crate::closedform::{
    beta, check_power, check_subcritical, critical_mass_halfline, critical_soliton_value,
    is_critical, theta,
};
use crate::error::{NlsError, Result};
use crate::minimizer::{DiscreteField, Grid};
use crate::thresholds::{
    count_bound_states, k_ratio_at, least_energy_frequency, mu_tilde, side, Side,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergyLevel {
    /// `attained == false` marks an infimum that no admissible function reaches.
    Finite { value: f64, attained: bool },
    Zero,
    MinusInfinity,
}

impl EnergyLevel {
    pub fn tag(&self) -> &'static str {
        match self {
            EnergyLevel::Finite { attained: true, .. } => "finite",
            EnergyLevel::Finite { attained: false, .. } => "finite-not-attained",
            EnergyLevel::Zero => "zero",
            EnergyLevel::MinusInfinity => "minus-infinity",
        }
    }

    /// The level as a number (`0` and `-inf` included).
    pub fn value(&self) -> f64 {
        match *self {
            EnergyLevel::Finite { value, .. } => value,
            EnergyLevel::Zero => 0.0,
            EnergyLevel::MinusInfinity => f64::NEG_INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateReport {
    pub p: f64,
    pub alpha: f64,
    pub mu: f64,
    pub exists: bool,
    /// `mu` lies within the tolerance band of the regime's existence threshold.
    pub at_threshold: bool,
    pub minimizer: Option<BoundState>,
    pub level: EnergyLevel,
    /// Energy of the least-energy bound state of mass `mu`, when there is one.
    pub candidate_energy: Option<f64>,
    /// `-theta_p mu^(2 beta + 1)`; `None` for `p = 6`.
    pub line_level: Option<f64>,
    pub bound_state_count: usize,
}

fn check_mass(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 {
        Ok(())
    } else {
        Err(NlsError::domain(format!("mass mu = {mu} must be positive")))
    }
}

/// `-theta_p mu^(2 beta + 1)`
pub fn line_level(p: f64, mu: f64) -> Result<f64> {
    Ok(-theta(p)? * mu.powf(2.0 * beta(p) + 1.0))
}

pub fn decide(p: f64, alpha: f64, mu: f64) -> Result<GroundStateReport> {
    check_power(p)?;
    check_alpha(alpha)?;
    check_mass(mu)?;

    let count = count_bound_states(p, alpha, mu)?;
    let candidate = if count > 0 {
        let f = least_energy_frequency(p, alpha, mu)?;
        Some(BoundState::from_frequency(p, alpha, &f))
    } else {
        None
    };
    let candidate_energy = candidate.map(|s| s.energy());
    let line = if is_critical(p) { None } else { Some(line_level(p, mu)?) };

    let (exists, at_threshold) = if is_critical(p) {
        let s = side(mu, critical_mass_halfline());
        (alpha < 0.0 && s == Side::Below, s == Side::At)
    } else if alpha < 0.0 {
        (true, false)
    } else {
        let threshold = if p <= 4.0 {
            candidate_threshold_line(p, alpha)?
        } else {
            mu_tilde(p, alpha)?
        };
        let s = side(mu, threshold);
        let exists = if p <= 4.0 { s == Side::Above } else { s != Side::Below };
        (exists, s == Side::At)
    };

    let level = if exists {
        let value = candidate_energy.ok_or_else(|| {
            NlsError::Convergence(format!("no bound state of mass {mu} in an existence regime"))
        })?;
        EnergyLevel::Finite {
            value,
            attained: true,
        }
    } else if is_critical(p) {
        match (alpha < 0.0, side(mu, critical_mass_halfline())) {
            (false, Side::Below | Side::At) => EnergyLevel::Zero,
            _ => EnergyLevel::MinusInfinity,
        }
    } else {
        EnergyLevel::Finite {
            value: line.unwrap_or(f64::NAN),
            attained: false,
        }
    };

    Ok(GroundStateReport {
        p,
        alpha,
        mu,
        exists,
        at_threshold,
        minimizer: if exists { candidate } else { None },
        level,
        candidate_energy,
        line_level: line,
        bound_state_count: count,
    })
}

fn candidate_threshold_line(p: f64, alpha: f64) -> Result<f64> {
    crate::thresholds::soliton_mass_at_alpha_sq(p, alpha)
}

pub fn ground_energy_level(p: f64, alpha: f64, mu: f64) -> Result<EnergyLevel> {
    Ok(decide(p, alpha, mu)?.level)
}

/// `K(mu) = F(eta^mu) / mu^(2 beta + 1)` on the least-energy bound state.
pub fn k_diagnostic(p: f64, alpha: f64, mu: f64) -> Result<f64> {
    check_subcritical(p)?;
    check_alpha(alpha)?;
    check_mass(mu)?;
    let f = least_energy_frequency(p, alpha, mu)?;
    Ok(k_ratio_at(p, alpha, &f))
}

/// Energies of the scaled family `f_nu = sqrt(nu) v_mu(nu x)` at `p = 6`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalScaling {
    pub alpha: f64,
    pub mu: f64,
    /// Frequency of the truncated critical soliton `v`.
    pub omega: f64,
    /// `v_mu = lambda v`, `lambda = sqrt(mu / (sqrt(3) pi / 4))`.
    pub lambda: f64,
    pub nu: Vec<f64>,
    pub energies: Vec<f64>,
}

impl CriticalScaling {
    pub fn strictly_decreasing(&self) -> bool {
        self.energies.windows(2).all(|w| w[1] < w[0])
    }
}

/// Energy of `f_nu` with `f_nu` sampled on `[0, L/nu]` with `n` intervals.
///
/// Sampling on the scaled grid makes the discrete energy exactly
/// `nu^2 A_h + nu B_h`, where `A_h, B_h` are the kinetic-minus-potential and
/// boundary parts at `nu = 1`.
fn scaled_energy(base: &DiscreteField, nu: f64, alpha: f64) -> Result<f64> {
    let grid = Grid::new(base.grid.length / nu, base.grid.n)?;
    let s = nu.sqrt();
    let f = DiscreteField::new(grid, base.values.iter().map(|v| s * v).collect())?;
    Ok(f.energy(6.0, alpha))
}

struct ScalingBase {
    omega: f64,
    lambda: f64,
    field: DiscreteField,
}

fn scaling_base(alpha: f64, mu: f64, n: usize) -> Result<ScalingBase> {
    check_alpha(alpha)?;
    check_mass(mu)?;
    let quarter = critical_mass_halfline();
    let unbounded = match side(mu, quarter) {
        Side::Above => true,
        Side::At => alpha < 0.0,
        Side::Below => false,
    };
    if !unbounded {
        return Err(NlsError::domain(format!(
            "mass {mu} is in the bounded-energy regime for p = 6, alpha = {alpha}"
        )));
    }
    let lambda = (mu / quarter).sqrt();
    let omega = if alpha < 0.0 {
        1.0
    } else {
        // F(v_mu) < 0 once sqrt(omega) > 8 alpha / (pi (lambda^4 - 1))
        let bound = 8.0 * alpha / (std::f64::consts::PI * (lambda.powi(4) - 1.0));
        (2.0 * bound).powi(2).max(1.0)
    };
    let grid = Grid::new(40.0 / omega.sqrt(), n)?;
    let mut field = DiscreteField::zeros(grid);
    for i in 0..grid.n {
        field.values[i] = lambda * critical_soliton_value(omega, grid.x(i))?;
    }
    Ok(ScalingBase {
        omega,
        lambda,
        field,
    })
}

/// The critical scaling family at the listed `nu`, evaluated with `n` intervals.
pub fn critical_scaling_demo(alpha: f64, mu: f64, nu: &[f64], n: usize) -> Result<CriticalScaling> {
    let base = scaling_base(alpha, mu, n)?;
    let energies = nu
        .iter()
        .map(|&v| {
            if !(v.is_finite() && v > 0.0) {
                return Err(NlsError::domain(format!("scaling factor nu = {v} must be positive")));
            }
            scaled_energy(&base.field, v, alpha)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CriticalScaling {
        alpha,
        mu,
        omega: base.omega,
        lambda: base.lambda,
        nu: nu.to_vec(),
        energies,
    })
}

/// Doubles `nu` from 1 until the energy falls below `floor` (at most `max_doublings` times).
/// Returns the sequence and whether the floor was crossed.
pub fn critical_scaling_to_floor(
    alpha: f64,
    mu: f64,
    floor: f64,
    n: usize,
    max_doublings: usize,
) -> Result<(CriticalScaling, bool)> {
    let base = scaling_base(alpha, mu, n)?;
    let (mut nu, mut energies) = (Vec::new(), Vec::new());
    let mut v = 1.0;
    let mut crossed = false;
    for _ in 0..=max_doublings {
        let e = scaled_energy(&base.field, v, alpha)?;
        nu.push(v);
        energies.push(e);
        if e < floor {
            crossed = true;
            break;
        }
        v *= 2.0;
    }
    Ok((
        CriticalScaling {
            alpha,
            mu,
            omega: base.omega,
            lambda: base.lambda,
            nu,
            energies,
        },
        crossed,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{critical_mass_line, neumann_halfline_energy};
    use crate::thresholds::{
        invert_mass, least_energy_bound_state, mu_star, soliton_mass_at_alpha_sq, BranchSelector,
    };
    use approx::assert_relative_eq;

    #[test]
    fn regime_examples() {
        let r = decide(3.0, -1.0, 1.0).unwrap();
        assert!(r.exists && r.bound_state_count == 1 && r.minimizer.is_some());
        assert_relative_eq!(r.minimizer.unwrap().mass(), 1.0, max_relative = 1e-8);

        let (ms, mt) = (mu_star(5.0, 1.0).unwrap(), mu_tilde(5.0, 1.0).unwrap());
        let r = decide(5.0, 1.0, 0.5 * (ms + mt)).unwrap();
        assert!(!r.exists && r.bound_state_count == 2 && r.minimizer.is_none());
        assert!(matches!(r.level, EnergyLevel::Finite { attained: false, .. }));
        // the candidate sits above the line level between mu* and mu~
        assert!(r.candidate_energy.unwrap() > r.line_level.unwrap());

        let r = decide(6.0, 1.0, 1.0).unwrap();
        assert!(!r.exists);
        assert_eq!(r.level, EnergyLevel::Zero);
    }

    #[test]
    fn p4_level() {
        let r = decide(4.0, 1.0, 6.0).unwrap();
        assert!(r.exists);
        assert_relative_eq!(r.level.value(), -3.0, max_relative = 1e-10);
        assert!(r.level.value() < line_level(4.0, 6.0).unwrap());
        assert_relative_eq!(line_level(4.0, 6.0).unwrap(), -2.25, max_relative = 1e-12);
        // strict threshold at ||phi_1||^2 = 4
        let r = decide(4.0, 1.0, 4.0).unwrap();
        assert!(!r.exists && r.at_threshold);
    }

    #[test]
    fn critical_levels() {
        let q = critical_mass_halfline();
        assert_eq!(ground_energy_level(6.0, -1.0, q).unwrap(), EnergyLevel::MinusInfinity);
        assert_eq!(ground_energy_level(6.0, -1.0, 2.0).unwrap(), EnergyLevel::MinusInfinity);
        let r = decide(6.0, -1.0, 0.5 * q).unwrap();
        assert!(r.exists && r.level.value() < 0.0);
        assert_eq!(ground_energy_level(6.0, 1.0, q).unwrap(), EnergyLevel::Zero);
        assert_eq!(ground_energy_level(6.0, 1.0, 1.01 * q).unwrap(), EnergyLevel::MinusInfinity);
        assert!(decide(6.0, 1.0, 1.2 * q).unwrap().bound_state_count == 1);
        assert!(!decide(6.0, 1.0, 1.2 * q).unwrap().exists);
        assert!(decide(6.0, 1.0, critical_mass_line()).unwrap().bound_state_count == 0);
    }

    #[test]
    fn below_threshold_level_not_attained() {
        let mu = 1e-3;
        let level = ground_energy_level(3.0, 1.0, mu).unwrap();
        let expected = -theta(3.0).unwrap() * mu.powf(5.0 / 3.0);
        match level {
            EnergyLevel::Finite { value, attained } => {
                assert!(!attained);
                assert_relative_eq!(value, expected, max_relative = 1e-13);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mu_tilde_is_inclusive() {
        let mt = mu_tilde(5.0, 1.0).unwrap();
        let r = decide(5.0, 1.0, mt).unwrap();
        assert!(r.exists && r.at_threshold);
        assert_relative_eq!(r.level.value(), r.line_level.unwrap(), max_relative = 1e-8);
        assert!(!decide(5.0, 1.0, mt * (1.0 - 1e-6)).unwrap().exists);
    }

    #[test]
    fn domain_errors() {
        assert!(decide(2.0, 1.0, 1.0).is_err());
        assert!(decide(3.0, 0.0, 1.0).is_err());
        assert!(decide(3.0, 1.0, -1.0).is_err());
        assert!(k_diagnostic(6.0, -1.0, 1.0).is_err());
        assert!(matches!(
            k_diagnostic(3.0, 1.0, 1.0),
            Err(NlsError::NoBoundStateOfMass { .. })
        ));
    }

    #[test]
    fn k_decreasing_for_p_at_most_4() {
        for &p in &[3.0, 4.0] {
            let th = theta(p).unwrap();
            let line = soliton_mass_at_alpha_sq(p, 1.0).unwrap();
            let mut prev = f64::INFINITY;
            for k in 1..30 {
                let mu = line * (1.0 + 0.1 * k as f64);
                let kk = k_diagnostic(p, 1.0, mu).unwrap();
                assert!(kk < prev && kk < -th);
                prev = kk;
            }
            let near = k_diagnostic(p, 1.0, line * (1.0 + 1e-7)).unwrap();
            assert!((near + th).abs() < 1e-5 * th, "p={p}: {near} vs {}", -th);
        }
    }

    #[test]
    fn k_limit_p_above_4() {
        let p = 5.0;
        let lim = -2f64.powf(2.0 * beta(p)) * theta(p).unwrap();
        let k1 = k_diagnostic(p, 1.0, 1e3).unwrap();
        let k2 = k_diagnostic(p, 1.0, 1e5).unwrap();
        assert!((k2 - lim).abs() < (k1 - lim).abs());
        assert!((k2 / lim - 1.0).abs() < 1e-3, "{k2} vs {lim}");
        let mt = mu_tilde(p, 1.0).unwrap();
        assert!((k_diagnostic(p, 1.0, mt).unwrap() + theta(p).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn attractive_level_beats_neumann() {
        for &p in &[2.5, 3.0, 4.5, 5.5] {
            for &mu in &[0.3, 2.0, 8.0] {
                let l = ground_energy_level(p, -0.7, mu).unwrap().value();
                assert!(l < neumann_halfline_energy(p, mu).unwrap());
            }
        }
    }

    #[test]
    fn scaling_demo_attractive() {
        let q = critical_mass_halfline();
        let d = critical_scaling_demo(-1.0, q, &[1.0, 2.0, 4.0, 8.0, 16.0], 8192).unwrap();
        assert!(d.strictly_decreasing(), "{:?}", d.energies);
        assert_relative_eq!(d.lambda, 1.0, max_relative = 1e-15);
        let (run, crossed) = critical_scaling_to_floor(-1.0, q, -1e6, 4096, 40).unwrap();
        assert!(crossed && run.strictly_decreasing());
    }

    #[test]
    fn scaling_demo_repulsive() {
        let q = critical_mass_halfline();
        let d = critical_scaling_demo(1.0, 1.5 * q, &[1.0, 2.0, 4.0, 8.0], 8192).unwrap();
        assert!(d.energies[0] < 0.0);
        assert!(d.strictly_decreasing());
        assert!(critical_scaling_demo(1.0, q, &[1.0], 1024).is_err());
        assert!(critical_scaling_demo(-1.0, 0.9 * q, &[1.0], 1024).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn regime_cases() -> impl Strategy<Value = (f64, f64, f64)> {
            (
                prop_oneof![2.05f64..5.9, Just(4.0), Just(6.0)],
                prop_oneof![-3.0f64..-0.05, 0.05f64..3.0],
                0.02f64..20.0,
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn existence_matches_tables((p, alpha, mu) in regime_cases()) {
                let r = decide(p, alpha, mu).unwrap();
                let q = critical_mass_halfline();
                let expected = if is_critical(p) {
                    alpha < 0.0 && mu < q
                } else if alpha < 0.0 {
                    true
                } else if p <= 4.0 {
                    mu > soliton_mass_at_alpha_sq(p, alpha).unwrap()
                } else {
                    mu >= mu_tilde(p, alpha).unwrap()
                };
                prop_assume!(!r.at_threshold);
                prop_assert_eq!(r.exists, expected);
                if r.exists {
                    let m = r.minimizer.unwrap();
                    prop_assert!((m.mass() - mu).abs() <= 1e-8 * mu);
                    let least = least_energy_bound_state(p, alpha, mu).unwrap();
                    prop_assert_eq!(m, least);
                    if let Some(line) = r.line_level {
                        prop_assert!(r.level.value() <= line + 1e-10 * line.abs().max(1.0));
                    }
                    if p > 4.0 && alpha > 0.0 && !is_critical(p) {
                        let w = invert_mass(p, alpha, mu, BranchSelector::UpperBranch).unwrap();
                        prop_assert!((m.omega - w).abs() <= 1e-12 * w);
                    }
                }
            }
        }
    }
}
