//! Implicit thresholds of the bound-state and ground-state problems.
//!
//! * `omega*`, `mu*`: the interior minimum of the mass map when `4 < p < 6`
//!   and `alpha > 0`;
//! * branch-aware inversion `omega(mu)` of the mass map;
//! * the number of positive bound states of a given mass;
//! * `mu~`: the ground-state onset mass for `4 < p < 6`, `alpha > 0`;
//! * `gamma_p` and the `alpha`-threshold at fixed mass.
//!
//! All roots are bracketed. Frequencies are searched through
//! `s = ln(omega - alpha^2)` so that both the `alpha^2` end and the far end of
//! the frequency axis are reachable with the same relative precision.

use std::fmt;

use crate::boundstate::{
    check_alpha, energy_at, mass_at, mass_derivative_at, BoundState, Frequency,
};
use crate::closedform::{
    beta, check_power, check_subcritical, compute_constants, critical_mass_halfline,
    critical_mass_line, is_critical, mass_integral, soliton_mass_line_unchecked, weight_exponent,
};
use crate::error::{NlsError, Result};
use crate::roots::{brent_with_values, Tolerance};

/// Relative width of the band in which a mass is reported as sitting exactly
/// on a threshold.
pub const THRESHOLD_BAND: f64 = 1e-9;

/// Position of a value relative to a threshold, with the at-threshold band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    At,
    Above,
}

pub fn side(value: f64, threshold: f64) -> Side {
    if (value - threshold).abs() <= THRESHOLD_BAND * threshold.abs() {
        Side::At
    } else if value < threshold {
        Side::Below
    } else {
        Side::Above
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchSelector {
    /// `alpha^2 < omega < omega*`
    LowerBranch,
    /// `omega >= omega*`
    UpperBranch,
    /// The mass map is monotone; there is one branch.
    Unique,
}

impl BranchSelector {
    fn name(self) -> &'static str {
        match self {
            BranchSelector::LowerBranch => "lower",
            BranchSelector::UpperBranch => "upper",
            BranchSelector::Unique => "unique",
        }
    }
}

impl fmt::Display for BranchSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BranchSelector {
    type Err = NlsError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(BranchSelector::LowerBranch),
            "upper" => Ok(BranchSelector::UpperBranch),
            "unique" => Ok(BranchSelector::Unique),
            other => Err(NlsError::Parse(format!("unknown branch '{other}'"))),
        }
    }
}

/// True in the only regime with two branches: `4 < p < 6`, `alpha > 0`.
pub fn has_two_branches(p: f64, alpha: f64) -> bool {
    p > 4.0 && !is_critical(p) && alpha > 0.0
}

fn check_two_branch(p: f64, alpha: f64) -> Result<()> {
    check_power(p)?;
    check_alpha(alpha)?;
    if !has_two_branches(p, alpha) {
        return Err(NlsError::domain(format!(
            "requires 4 < p < 6 and alpha > 0 (got p = {p}, alpha = {alpha})"
        )));
    }
    Ok(())
}

fn tight() -> Tolerance {
    Tolerance {
        x_abs: 1e-14,
        x_rel: 2.0 * f64::EPSILON,
        max_iter: 300,
    }
}

/// `||phi_{alpha^2}||^2` on the line; `sqrt(3) pi / 2` when `p = 6`.
pub fn soliton_mass_at_alpha_sq(p: f64, alpha: f64) -> Result<f64> {
    check_power(p)?;
    check_alpha(alpha)?;
    if is_critical(p) {
        return Ok(critical_mass_line());
    }
    Ok(soliton_mass_line_unchecked(p, alpha * alpha))
}

/// Sign function of `M'(omega)` up to a positive factor; its root is `omega*`.
fn star_residual(p: f64, alpha: f64, f: &Frequency) -> f64 {
    0.5 * (6.0 - p) * mass_at(p, alpha, f)
        - (0.5 * p).powf(2.0 / (p - 2.0)) * alpha * f.excess.powf(weight_exponent(p))
}

/// `ln(omega* - alpha^2)`.
fn ln_star_excess(p: f64, alpha: f64) -> Result<f64> {
    let g = |s: f64| star_residual(p, alpha, &Frequency::from_excess(alpha, s.exp()));
    // bracket [alpha^2 (1 + 1e-8), alpha^2 2^k]; for p close to 4 the
    // residual turns negative only much closer to alpha^2
    let floor = (alpha * alpha).ln() - 690.0;
    let mut a = (alpha * alpha * 1e-8).ln();
    let mut ga = g(a);
    while ga >= 0.0 {
        a -= 16.0;
        if a < floor {
            return Err(NlsError::Convergence(format!(
                "omega* bracket: residual {ga} near alpha^2 is not negative"
            )));
        }
        ga = g(a);
    }
    let mut k = 1;
    let mut b;
    let mut gb;
    loop {
        b = (alpha * alpha * (2f64.powi(k) - 1.0)).ln();
        gb = g(b);
        if gb > 0.0 {
            break;
        }
        k += 1;
        if k > 200 {
            return Err(NlsError::Convergence("omega* bracket expansion failed".into()));
        }
    }
    brent_with_values(g, a, ga, b, gb, tight())
}

/// Frequency `omega*` at which the mass map attains its minimum (`4 < p < 6`, `alpha > 0`).
pub fn omega_star(p: f64, alpha: f64) -> Result<f64> {
    check_two_branch(p, alpha)?;
    Ok(alpha * alpha + ln_star_excess(p, alpha)?.exp())
}

/// `mu* = M(omega*)`.
pub fn mu_star(p: f64, alpha: f64) -> Result<f64> {
    check_two_branch(p, alpha)?;
    let f = Frequency::from_excess(alpha, ln_star_excess(p, alpha)?.exp());
    Ok(mass_at(p, alpha, &f))
}

/// Branch structure of the two-branch regime.
#[derive(Debug, Clone, Copy)]
struct TwoBranch {
    ln_star: f64,
    mu_star: f64,
    line_mass: f64,
}

impl TwoBranch {
    fn new(p: f64, alpha: f64) -> Result<Self> {
        let ln_star = ln_star_excess(p, alpha)?;
        let f = Frequency::from_excess(alpha, ln_star.exp());
        Ok(TwoBranch {
            ln_star,
            mu_star: mass_at(p, alpha, &f),
            line_mass: soliton_mass_line_unchecked(p, alpha * alpha),
        })
    }
}

/// Solve `M(alpha^2 + e^s) = mu` for `s`, starting from `s0` and walking in
/// `direction` (+1 / -1) until the residual changes sign.
fn solve_ln_excess(p: f64, alpha: f64, mu: f64, s0: f64, direction: f64) -> Result<f64> {
    let g = |s: f64| mass_at(p, alpha, &Frequency::from_excess(alpha, s.exp())) - mu;
    let g0 = g(s0);
    if g0 == 0.0 {
        return Ok(s0);
    }
    let mut prev = (s0, g0);
    let mut step = 0.5;
    for _ in 0..200 {
        let s = prev.0 + direction * step;
        if !(-700.0..700.0).contains(&s) {
            break;
        }
        let gs = g(s);
        if gs.is_nan() {
            break;
        }
        if gs.signum() != g0.signum() || gs == 0.0 {
            let (a, fa, b, fb) = if direction > 0.0 {
                (prev.0, prev.1, s, gs)
            } else {
                (s, gs, prev.0, prev.1)
            };
            return brent_with_values(g, a, fa, b, fb, tight());
        }
        prev = (s, gs);
        step *= 2.0;
    }
    Err(NlsError::OutOfRange { mu })
}

/// Frequency of the bound state of mass `mu` on the selected branch.
pub fn invert_mass(p: f64, alpha: f64, mu: f64, branch: BranchSelector) -> Result<f64> {
    let f = invert_mass_frequency(p, alpha, mu, branch)?;
    Ok(f.omega)
}

pub(crate) fn invert_mass_frequency(
    p: f64,
    alpha: f64,
    mu: f64,
    branch: BranchSelector,
) -> Result<Frequency> {
    check_power(p)?;
    check_alpha(alpha)?;
    if !(mu.is_finite() && mu > 0.0) {
        return Err(NlsError::domain(format!("mass mu = {mu} must be positive")));
    }
    let invalid = || NlsError::BranchInvalid {
        selector: branch.name(),
        p,
        alpha,
    };
    let out = || NlsError::OutOfRange { mu };
    let s_start = (alpha * alpha).ln();

    let ln_excess = if has_two_branches(p, alpha) {
        let tb = TwoBranch::new(p, alpha)?;
        if side(mu, tb.mu_star) == Side::At {
            return Ok(Frequency::from_excess(alpha, tb.ln_star.exp()));
        }
        match branch {
            BranchSelector::Unique => return Err(invalid()),
            BranchSelector::LowerBranch => {
                if mu < tb.mu_star || mu >= tb.line_mass {
                    return Err(out());
                }
                solve_ln_excess(p, alpha, mu, tb.ln_star, -1.0)?
            }
            BranchSelector::UpperBranch => {
                if mu < tb.mu_star {
                    return Err(out());
                }
                solve_ln_excess(p, alpha, mu, tb.ln_star, 1.0)?
            }
        }
    } else {
        if branch != BranchSelector::Unique {
            return Err(invalid());
        }
        let (lo, hi) = if is_critical(p) {
            let quarter = critical_mass_halfline();
            if alpha < 0.0 {
                (0.0, quarter)
            } else {
                (quarter, critical_mass_line())
            }
        } else if alpha < 0.0 {
            (0.0, f64::INFINITY)
        } else {
            (soliton_mass_line_unchecked(p, alpha * alpha), f64::INFINITY)
        };
        if !(mu > lo && mu < hi) {
            return Err(out());
        }
        let m0 = mass_at(p, alpha, &Frequency::from_excess(alpha, s_start.exp()));
        let increasing = !(is_critical(p) && alpha > 0.0);
        let direction = if (m0 < mu) == increasing { 1.0 } else { -1.0 };
        solve_ln_excess(p, alpha, mu, s_start, direction)?
    };
    Ok(Frequency::from_excess(alpha, ln_excess.exp()))
}

/// Number of positive bound states of mass `mu`.
pub fn count_bound_states(p: f64, alpha: f64, mu: f64) -> Result<usize> {
    check_power(p)?;
    check_alpha(alpha)?;
    if !(mu.is_finite() && mu > 0.0) {
        return Err(NlsError::domain(format!("mass mu = {mu} must be positive")));
    }
    if is_critical(p) {
        let quarter = critical_mass_halfline();
        let n = if alpha < 0.0 {
            usize::from(side(mu, quarter) == Side::Below)
        } else {
            usize::from(
                side(mu, quarter) == Side::Above && side(mu, critical_mass_line()) == Side::Below,
            )
        };
        return Ok(n);
    }
    if alpha < 0.0 {
        return Ok(1);
    }
    let line = soliton_mass_line_unchecked(p, alpha * alpha);
    if p <= 4.0 {
        return Ok(usize::from(side(mu, line) == Side::Above));
    }
    let tb = TwoBranch::new(p, alpha)?;
    Ok(match (side(mu, tb.mu_star), side(mu, line)) {
        (Side::Below, _) => 0,
        (Side::At, _) => 1,
        (Side::Above, Side::Below) => 2,
        _ => 1,
    })
}

/// The least-energy positive bound state of mass `mu`.
///
/// With two candidates the one on the upper branch (`omega >= omega*`) is returned.
pub fn least_energy_bound_state(p: f64, alpha: f64, mu: f64) -> Result<BoundState> {
    let f = least_energy_frequency(p, alpha, mu)?;
    Ok(BoundState::from_frequency(p, alpha, &f))
}

pub(crate) fn least_energy_frequency(p: f64, alpha: f64, mu: f64) -> Result<Frequency> {
    if count_bound_states(p, alpha, mu)? == 0 {
        return Err(NlsError::NoBoundStateOfMass { mu });
    }
    let branch = if has_two_branches(p, alpha) {
        BranchSelector::UpperBranch
    } else {
        BranchSelector::Unique
    };
    match invert_mass_frequency(p, alpha, mu, branch) {
        // masses inside the at-threshold band of a monotone end
        Err(NlsError::OutOfRange { .. }) => Err(NlsError::NoBoundStateOfMass { mu }),
        other => other,
    }
}

/// `gamma_p`, the coefficient of the `alpha`-threshold `gamma_p mu^beta` for `p <= 4`.
pub fn gamma_p(p: f64) -> Result<f64> {
    check_subcritical(p)?;
    let integral = mass_integral(p, 0.0);
    Ok((2.0 / p).powf(2.0 / (6.0 - p))
        * ((p - 2.0) / (4.0 * integral)).powf((p - 2.0) / (6.0 - p)))
}

/// `K = F(eta) / M^(2 beta + 1)` at a frequency.
pub(crate) fn k_ratio_at(p: f64, alpha: f64, f: &Frequency) -> f64 {
    energy_at(p, alpha, f) / mass_at(p, alpha, f).powf(2.0 * beta(p) + 1.0)
}

/// Onset of ground states: the mass and frequency solving
/// `mu = M(omega, alpha)`, `F(eta^mu) = -theta_p mu^(2 beta + 1)` on the upper branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuTilde {
    pub mu: f64,
    pub omega: f64,
}

/// `mu~(alpha)` for `4 < p < 6`, `alpha > 0`.
///
/// The upper branch is parametrised by its frequency, on which the mass is
/// increasing, so the root of `K(mu) + theta_p` over `(mu*, ||phi_{alpha^2}||^2)`
/// is located as a root in `omega` above `omega*`.
pub fn mu_tilde_point(p: f64, alpha: f64) -> Result<MuTilde> {
    check_two_branch(p, alpha)?;
    let theta = compute_constants(p)?.theta_p;
    let tb = TwoBranch::new(p, alpha)?;
    // as p -> 4+ the interval (mu*, ||phi_{alpha^2}||^2) collapses below the
    // resolution of K + theta; any point of it is then within the threshold band
    if tb.line_mass - tb.mu_star <= THRESHOLD_BAND * tb.mu_star {
        let mu = 0.5 * (tb.mu_star + tb.line_mass);
        let f = invert_mass_frequency(p, alpha, mu, BranchSelector::UpperBranch)?;
        return Ok(MuTilde { mu, omega: f.omega });
    }
    let g = |s: f64| k_ratio_at(p, alpha, &Frequency::from_excess(alpha, s.exp())) + theta;
    let ga = g(tb.ln_star);
    if !(ga > 0.0) {
        return Err(NlsError::Convergence(format!(
            "mu~ bracket: K(mu*) + theta = {ga} is not positive"
        )));
    }
    // K + theta < 0 well before the mass reaches ||phi_{alpha^2}||^2
    let (mut s_hi, mut gb, mut step) = (tb.ln_star, ga, 0.25);
    while gb >= 0.0 {
        s_hi += step;
        step *= 2.0;
        if s_hi > 700.0 {
            return Err(NlsError::Convergence("mu~ bracket expansion failed".into()));
        }
        gb = g(s_hi);
    }
    let s_lo = s_hi - 0.5 * step;
    let ga = g(s_lo);
    let s = brent_with_values(g, s_lo, ga, s_hi, gb, tight())?;
    let f = Frequency::from_excess(alpha, s.exp());
    let mu = mass_at(p, alpha, &f);
    // the root must sit strictly on the increasing side of the mass map
    if mass_derivative_at(p, alpha, &f) <= 0.0 {
        return Err(NlsError::Convergence(
            "mu~ root violates (6-p)/2 mu > (p/2)^(2/(p-2)) alpha (omega - alpha^2)^((4-p)/(p-2))".into(),
        ));
    }
    Ok(MuTilde { mu, omega: f.omega })
}

pub fn mu_tilde(p: f64, alpha: f64) -> Result<f64> {
    Ok(mu_tilde_point(p, alpha)?.mu)
}

/// Threshold in `alpha` at fixed mass: ground states exist iff
/// `alpha < value` (`inclusive == false`) or `alpha <= value` (`inclusive == true`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaThreshold {
    pub value: f64,
    pub inclusive: bool,
}

impl AlphaThreshold {
    pub fn admits(&self, alpha: f64) -> bool {
        if self.inclusive {
            alpha <= self.value
        } else {
            alpha < self.value
        }
    }
}

/// `gamma_p mu^beta` for `p <= 4`; `h~(mu)`, the inverse of `alpha -> mu~(alpha)`, for `p > 4`.
pub fn alpha_threshold(p: f64, mu: f64) -> Result<AlphaThreshold> {
    check_subcritical(p)?;
    if !(mu.is_finite() && mu > 0.0) {
        return Err(NlsError::domain(format!("mass mu = {mu} must be positive")));
    }
    let lower = gamma_p(p)? * mu.powf(beta(p));
    if p <= 4.0 {
        return Ok(AlphaThreshold {
            value: lower,
            inclusive: false,
        });
    }
    // mu~(gamma_p mu^beta) < ||phi_{alpha^2}||^2 = mu, so the root lies above `lower`
    let g = |ln_a: f64| match mu_tilde(p, ln_a.exp()) {
        Ok(m) => m - mu,
        Err(_) => f64::NAN,
    };
    let a = lower.ln();
    let ga = g(a);
    if !(ga < 0.0) {
        return Err(NlsError::Convergence(format!(
            "alpha-threshold bracket: mu~ - mu = {ga} at gamma_p mu^beta"
        )));
    }
    let mut step = 0.25;
    for _ in 0..60 {
        let b = a + step;
        let gb = g(b);
        if gb > 0.0 {
            let ln_alpha = brent_with_values(g, a, ga, b, gb, tight())?;
            return Ok(AlphaThreshold {
                value: ln_alpha.exp(),
                inclusive: true,
            });
        }
        if gb.is_nan() {
            break;
        }
        step *= 2.0;
    }
    Err(NlsError::Convergence(
        "alpha-threshold bracket expansion failed".into(),
    ))
}

/// `omega(mu) / (2^(2 beta + 1) theta_p (2 beta + 1) mu^(2 beta))` on the
/// least-energy branch; tends to 1 as `mu -> infinity`.
pub fn omega_asymptotics_check(p: f64, alpha: f64, mu: f64) -> Result<f64> {
    check_subcritical(p)?;
    let c = compute_constants(p)?;
    let omega = least_energy_frequency(p, alpha, mu)?.omega;
    let b = c.beta;
    let lead = 2f64.powf(2.0 * b + 1.0) * c.theta_p * (2.0 * b + 1.0) * mu.powf(2.0 * b);
    Ok(omega / lead)
}

/// The thresholds of one `(p, alpha)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub p: f64,
    pub alpha: f64,
    pub omega_star: Option<f64>,
    pub mu_star: Option<f64>,
    pub mu_tilde: Option<f64>,
    /// `||phi_{alpha^2}||^2` on the line (`sqrt(3) pi / 2` for `p = 6`).
    pub soliton_mass_at_alpha_sq: f64,
    /// `None` for `p = 6`.
    pub gamma_p: Option<f64>,
}

pub fn threshold_report(p: f64, alpha: f64) -> Result<ThresholdReport> {
    check_power(p)?;
    check_alpha(alpha)?;
    let line = soliton_mass_at_alpha_sq(p, alpha)?;
    let gamma = if is_critical(p) { None } else { Some(gamma_p(p)?) };
    let (omega_star, mu_star, mu_tilde) = if has_two_branches(p, alpha) {
        let tb = TwoBranch::new(p, alpha)?;
        (
            Some(alpha * alpha + tb.ln_star.exp()),
            Some(tb.mu_star),
            Some(mu_tilde(p, alpha)?),
        )
    } else {
        (None, None, None)
    };
    Ok(ThresholdReport {
        p,
        alpha,
        omega_star,
        mu_star,
        mu_tilde,
        soliton_mass_at_alpha_sq: line,
        gamma_p: gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundstate::{energy, mass, mass_derivative, energy_derivative_omega};
    use crate::closedform::{soliton_frequency_for_mass, theta};
    use approx::assert_relative_eq;

    /// Golden-section minimisation of `f` on `[a, b]`.
    fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        while (b - a).abs() > tol {
            if f(c) < f(d) {
                b = d;
            } else {
                a = c;
            }
            c = b - g * (b - a);
            d = a + g * (b - a);
        }
        0.5 * (a + b)
    }

    #[test]
    fn side_band() {
        assert_eq!(side(1.0, 1.0 + 1e-10), Side::At);
        assert_eq!(side(1.0, 1.0 + 1e-8), Side::Below);
        assert_eq!(side(1.0 + 1e-8, 1.0), Side::Above);
    }

    #[test]
    fn omega_star_is_critical_point() {
        for &alpha in &[0.5, 1.0, 2.0] {
            for &p in &[4.5, 5.0, 5.5] {
                let ws = omega_star(p, alpha).unwrap();
                let dm = mass_derivative(p, alpha, ws).unwrap();
                assert!(dm.abs() < 1e-8, "p={p} alpha={alpha} M'={dm}");
                // sign change brackets the root
                assert!(mass_derivative(p, alpha, ws * (1.0 - 1e-4)).unwrap() < 0.0);
                assert!(mass_derivative(p, alpha, ws * (1.0 + 1e-4)).unwrap() > 0.0);
                // scaling: omega*(alpha) = alpha^2 omega*(1)
                let w1 = omega_star(p, 1.0).unwrap();
                assert_relative_eq!(ws, alpha * alpha * w1, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn omega_star_against_golden_section() {
        let ws = omega_star(5.0, 1.0).unwrap();
        let wg = golden_min(|w| mass(5.0, 1.0, w).unwrap(), 1.0 + 1e-9, 100.0, 1e-10);
        assert_relative_eq!(ws, wg, max_relative = 1e-6);
    }

    #[test]
    fn p5_unit_alpha_reference_values() {
        // independent mpmath evaluation of the same defining equations
        assert_relative_eq!(omega_star(5.0, 1.0).unwrap(), 3.290167593831591, max_relative = 1e-10);
        assert_relative_eq!(mu_star(5.0, 1.0).unwrap(), 2.794908405288237, max_relative = 1e-10);
        assert_relative_eq!(
            soliton_mass_at_alpha_sq(5.0, 1.0).unwrap(),
            3.1769977022120637,
            max_relative = 1e-10
        );
        let mt = mu_tilde_point(5.0, 1.0).unwrap();
        assert_relative_eq!(mt.mu, 2.844921238498284, max_relative = 1e-8);
        assert_relative_eq!(mt.omega, 6.7497672542067795, max_relative = 1e-7);
    }

    #[test]
    fn omega_star_domain() {
        assert!(omega_star(4.0, 1.0).is_err());
        assert!(omega_star(5.0, -1.0).is_err());
        assert!(omega_star(6.0, 1.0).is_err());
    }

    #[test]
    fn invert_p4_closed_form() {
        let w = invert_mass(4.0, 1.0, 6.0, BranchSelector::Unique).unwrap();
        assert_relative_eq!(w, 4.0, max_relative = 1e-10);
        // omega = (mu/2 - alpha)^2
        for &(alpha, mu) in &[(-1.0, 0.5), (-2.0, 30.0), (0.5, 2.5)] {
            let w = invert_mass(4.0, alpha, mu, BranchSelector::Unique).unwrap();
            assert_relative_eq!(w, (0.5 * mu - alpha).powi(2), max_relative = 1e-10);
        }
    }

    #[test]
    fn invert_errors() {
        let ms = mu_star(5.0, 1.0).unwrap();
        for b in [BranchSelector::LowerBranch, BranchSelector::UpperBranch] {
            assert!(matches!(
                invert_mass(5.0, 1.0, ms * (1.0 - 1e-6), b),
                Err(NlsError::OutOfRange { .. })
            ));
        }
        assert!(matches!(
            invert_mass(5.0, 1.0, 3.0, BranchSelector::Unique),
            Err(NlsError::BranchInvalid { .. })
        ));
        assert!(matches!(
            invert_mass(3.0, -1.0, 3.0, BranchSelector::UpperBranch),
            Err(NlsError::BranchInvalid { .. })
        ));
        assert!(matches!(
            invert_mass(3.0, 1.0, 5.0, BranchSelector::Unique),
            Err(NlsError::OutOfRange { .. })
        ));
        assert!(matches!(
            invert_mass(6.0, -1.0, 1.5, BranchSelector::Unique),
            Err(NlsError::OutOfRange { .. })
        ));
    }

    #[test]
    fn two_branches_straddle_omega_star() {
        let (p, alpha) = (5.0, 1.0);
        let ws = omega_star(p, alpha).unwrap();
        let ms = mu_star(p, alpha).unwrap();
        let line = soliton_mass_at_alpha_sq(p, alpha).unwrap();
        let mu = 0.5 * (ms + line);
        let w1 = invert_mass(p, alpha, mu, BranchSelector::LowerBranch).unwrap();
        let w2 = invert_mass(p, alpha, mu, BranchSelector::UpperBranch).unwrap();
        assert!(alpha * alpha < w1 && w1 < ws && ws < w2);
        assert_relative_eq!(mass(p, alpha, w1).unwrap(), mu, max_relative = 1e-10);
        assert_relative_eq!(mass(p, alpha, w2).unwrap(), mu, max_relative = 1e-10);
        // the upper branch carries the lower energy
        assert!(energy(p, alpha, w1).unwrap() > energy(p, alpha, w2).unwrap());
        let least = least_energy_bound_state(p, alpha, mu).unwrap();
        assert_relative_eq!(least.omega, w2, max_relative = 1e-12);
        assert_eq!(least.energy(), energy(p, alpha, least.omega).unwrap());
    }

    #[test]
    fn energy_monotonicity_along_two_branch_curve() {
        // dF/domega = -(omega/2) M'(omega): increasing below omega*, decreasing above
        let (p, alpha) = (5.0, 1.0);
        let ws = omega_star(p, alpha).unwrap();
        assert!(ws > 2.0 * alpha * alpha);
        assert!(energy_derivative_omega(p, alpha, 2.0 * alpha * alpha).unwrap() > 0.0);
        let mut prev = f64::INFINITY;
        for k in 0..200 {
            let w = ws * (1.0 + 0.05 * k as f64);
            let e = energy(p, alpha, w).unwrap();
            assert!(e < prev);
            assert!(energy_derivative_omega(p, alpha, w).unwrap() <= 1e-12);
            prev = e;
        }
        // at equal mass the lower-branch state always has the higher energy
        let ms = mu_star(p, alpha).unwrap();
        let line = soliton_mass_at_alpha_sq(p, alpha).unwrap();
        for k in 1..20 {
            let mu = ms + (line - ms) * k as f64 / 20.0;
            let w1 = invert_mass(p, alpha, mu, BranchSelector::LowerBranch).unwrap();
            let w2 = invert_mass(p, alpha, mu, BranchSelector::UpperBranch).unwrap();
            assert!(energy(p, alpha, w1).unwrap() > energy(p, alpha, w2).unwrap());
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_bound_states(3.0, -1.0, 5.0).unwrap(), 1);
        let ms = mu_star(5.0, 1.0).unwrap();
        let line = soliton_mass_at_alpha_sq(5.0, 1.0).unwrap();
        assert_eq!(count_bound_states(5.0, 1.0, 0.5 * (ms + line)).unwrap(), 2);
        assert_eq!(count_bound_states(5.0, 1.0, 0.9 * ms).unwrap(), 0);
        assert_eq!(count_bound_states(5.0, 1.0, ms).unwrap(), 1);
        assert_eq!(count_bound_states(5.0, 1.0, line).unwrap(), 1);
        assert_eq!(count_bound_states(5.0, 1.0, 2.0 * line).unwrap(), 1);
        let q = critical_mass_halfline();
        assert_eq!(count_bound_states(6.0, 1.0, q).unwrap(), 0);
        assert_eq!(count_bound_states(6.0, 1.0, 1.2 * q).unwrap(), 1);
        assert_eq!(count_bound_states(6.0, 1.0, 2.0 * q).unwrap(), 0);
        assert_eq!(count_bound_states(6.0, -1.0, 0.99 * q).unwrap(), 1);
        assert_eq!(count_bound_states(6.0, -1.0, q).unwrap(), 0);
        assert_eq!(count_bound_states(3.0, 1.0, 6.0).unwrap(), 0);
        assert_eq!(count_bound_states(3.0, 1.0, 6.0001).unwrap(), 1);
    }

    #[test]
    fn least_energy_unique_regime() {
        let s = least_energy_bound_state(3.0, -1.0, 1.0).unwrap();
        let w = invert_mass(3.0, -1.0, 1.0, BranchSelector::Unique).unwrap();
        assert_eq!(s.omega, w);
        assert!(matches!(
            least_energy_bound_state(3.0, 1.0, 1.0),
            Err(NlsError::NoBoundStateOfMass { .. })
        ));
        let ws = omega_star(5.0, 1.0).unwrap();
        let s = least_energy_bound_state(5.0, 1.0, mu_star(5.0, 1.0).unwrap()).unwrap();
        assert_relative_eq!(s.omega, ws, max_relative = 1e-12);
    }

    #[test]
    fn gamma_p4_and_inversion() {
        assert_relative_eq!(gamma_p(4.0).unwrap(), 0.25, max_relative = 1e-14);
        for &p in &[3.0, 3.5, 4.0, 5.0] {
            assert!(gamma_p(p).unwrap() > 0.0);
            for &mu in &[0.7, 2.0, 9.0] {
                // alpha with ||phi_{alpha^2}||^2 = mu, via the soliton mass inversion
                let alpha = soliton_frequency_for_mass(p, mu).unwrap().sqrt();
                let g = gamma_p(p).unwrap() * mu.powf(beta(p));
                assert_relative_eq!(g, alpha, max_relative = 1e-8);
            }
        }
        let t = alpha_threshold(4.0, 4.0).unwrap();
        assert_relative_eq!(t.value, 1.0, max_relative = 1e-12);
        assert!(!t.inclusive && !t.admits(t.value) && t.admits(0.999));
    }

    #[test]
    fn mu_tilde_structure() {
        let (p, alpha) = (5.0, 1.0);
        let theta = theta(p).unwrap();
        let ms = mu_star(p, alpha).unwrap();
        let line = soliton_mass_at_alpha_sq(p, alpha).unwrap();
        let mt = mu_tilde_point(p, alpha).unwrap();
        assert!(ms < mt.mu && mt.mu < line);
        let k = energy(p, alpha, mt.omega).unwrap() / mt.mu.powf(2.0 * beta(p) + 1.0);
        assert!((k + theta).abs() < 1e-8 * theta.max(1.0));
        assert!(mt.omega > omega_star(p, alpha).unwrap());

        let r: Vec<f64> = [0.5, 1.0, 2.0].iter().map(|&a| mu_tilde(p, a).unwrap()).collect();
        assert!(r[0] < r[1] && r[1] < r[2]);
        // scaling: mu~(alpha) = alpha^((6-p)/(p-2)) mu~(1)
        assert_relative_eq!(r[2], 2f64.powf((6.0 - p) / (p - 2.0)) * r[1], max_relative = 1e-8);
    }

    #[test]
    fn alpha_threshold_above_gamma_for_p_above_4() {
        for &mu in &[1.0, 3.0] {
            let t = alpha_threshold(5.0, mu).unwrap();
            assert!(t.inclusive);
            assert!(t.value > gamma_p(5.0).unwrap() * mu.powi(3));
            assert_relative_eq!(mu_tilde(5.0, t.value).unwrap(), mu, max_relative = 1e-9);
        }
        assert!(alpha_threshold(3.0, 1e-6).unwrap().value > 0.0);
    }

    #[test]
    fn asymptotics() {
        let r3 = omega_asymptotics_check(3.0, 1.0, 1e3).unwrap();
        let r4 = omega_asymptotics_check(3.0, 1.0, 1e4).unwrap();
        assert!((r4 - 1.0).abs() < (r3 - 1.0).abs());
        // the correction decays like alpha / sqrt(omega) ~ mu^(-beta)
        for &alpha in &[-1.0, 1.0] {
            let r = omega_asymptotics_check(3.0, alpha, 1e8).unwrap();
            assert!((r - 1.0).abs() < 5e-3, "alpha={alpha} r={r}");
        }

        // p = 4: omega = (mu/2 - alpha)^2, leading term mu^2 / 4
        let c = compute_constants(4.0).unwrap();
        assert_relative_eq!(8.0 * c.theta_p * 3.0, 0.25, max_relative = 1e-12);
        let mu: f64 = 1e3;
        let r = omega_asymptotics_check(4.0, 1.0, mu).unwrap();
        assert_relative_eq!(r, (0.5 * mu - 1.0).powi(2) / (0.25 * mu * mu), max_relative = 1e-9);
    }

    #[test]
    fn report_shapes() {
        let r = threshold_report(5.0, 1.0).unwrap();
        assert!(r.mu_star.unwrap() < r.mu_tilde.unwrap());
        assert!(r.mu_tilde.unwrap() < r.soliton_mass_at_alpha_sq);
        let r = threshold_report(3.0, 1.0).unwrap();
        assert!(r.omega_star.is_none() && r.mu_star.is_none() && r.mu_tilde.is_none());
        assert!(r.gamma_p.is_some());
        let r = threshold_report(4.0, 1.0).unwrap();
        assert_relative_eq!(r.soliton_mass_at_alpha_sq, 4.0, max_relative = 1e-14);
        let r = threshold_report(5.0, -1.0).unwrap();
        assert!(r.mu_tilde.is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn invert_roundtrip_monotone(p in 2.2f64..6.0, alpha in -2.5f64..2.5, factor in 1.05f64..40.0) {
                prop_assume!(alpha.abs() > 0.05);
                prop_assume!(!has_two_branches(p, alpha));
                let w = factor * alpha * alpha;
                let mu = mass(p, alpha, w).unwrap();
                let back = invert_mass(p, alpha, mu, BranchSelector::Unique).unwrap();
                prop_assert!((back - w).abs() <= 1e-9 * w, "w={} back={}", w, back);
            }

            #[test]
            fn invert_roundtrip_two_branch(p in 4.1f64..5.9, alpha in 0.1f64..2.5, factor in 1.001f64..40.0) {
                let w = factor * alpha * alpha;
                let ws = omega_star(p, alpha).unwrap();
                prop_assume!((w - ws).abs() > 1e-3 * ws);
                let branch = if w < ws { BranchSelector::LowerBranch } else { BranchSelector::UpperBranch };
                let mu = mass(p, alpha, w).unwrap();
                let back = invert_mass(p, alpha, mu, branch).unwrap();
                prop_assert!((back - w).abs() <= 1e-9 * w, "w={} back={}", w, back);
            }
        }
    }
}
