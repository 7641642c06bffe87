//! Closed-form soliton quantities on the line and on the Neumann half-line.
//!
//! For `2 < p <= 6` and `omega > 0` the positive soliton is
//!
//! ```text
//! phi_omega(x) = [ (p/2) omega sech^2( (p/2 - 1) sqrt(omega) |x| ) ]^(1/(p-2))
//! ```
//!
//! Its mass, the fixed-mass energy law `E(mu) = -theta_p mu^(2 beta + 1)` and
//! the universal constants derived from them are computed here. Profiles are
//! evaluated in log space so that far tails underflow to zero instead of
//! producing `inf * 0`.

use std::f64::consts::PI;

use crate::error::{NlsError, Result};
use crate::quadrature::tanh_sinh;
use crate::roots::{brent_with_values, Tolerance};

pub const CRITICAL_POWER: f64 = 6.0;

/// Sharp Gagliardo-Nirenberg constant `K_6` on the half-line, `16 / pi^2`.
pub const K6_HALFLINE: f64 = 16.0 / (PI * PI);
/// Sharp Gagliardo-Nirenberg constant `K_6` on the line, `4 / pi^2`.
pub const K6_LINE: f64 = 4.0 / (PI * PI);
/// `K_inf` on the line.
pub const KINF_LINE: f64 = 1.0;
/// `K_inf` on the half-line.
pub const KINF_HALFLINE: f64 = 2.0;

/// Mass of every critical half-soliton, `sqrt(3) pi / 4 = sqrt(3 / K6_HALFLINE)`.
pub fn critical_mass_halfline() -> f64 {
    3f64.sqrt() * PI / 4.0
}

/// Mass of every critical soliton on the line, `sqrt(3) pi / 2`.
pub fn critical_mass_line() -> f64 {
    3f64.sqrt() * PI / 2.0
}

pub fn is_critical(p: f64) -> bool {
    (p - CRITICAL_POWER).abs() < 1e-12
}

pub fn check_power(p: f64) -> Result<()> {
    if p.is_finite() && p > 2.0 && (p <= 6.0 || is_critical(p)) {
        Ok(())
    } else {
        Err(NlsError::domain(format!("power p = {p} must lie in (2, 6]")))
    }
}

pub fn check_subcritical(p: f64) -> Result<()> {
    check_power(p)?;
    if is_critical(p) {
        return Err(NlsError::domain(
            "p = 6 is L2-critical; use the critical-case routines",
        ));
    }
    Ok(())
}

fn check_frequency(omega: f64) -> Result<()> {
    if omega.is_finite() && omega > 0.0 {
        Ok(())
    } else {
        Err(NlsError::domain(format!("frequency omega = {omega} must be positive")))
    }
}

/// `beta = (p - 2) / (6 - p)`.
pub fn beta(p: f64) -> f64 {
    (p - 2.0) / (6.0 - p)
}

/// Exponent `(4 - p) / (p - 2)` of the mass-integral weight `(1 - s^2)^q`.
pub fn weight_exponent(p: f64) -> f64 {
    (4.0 - p) / (p - 2.0)
}

/// `ln sech(y)`, stable for large `|y|`.
pub fn ln_sech(y: f64) -> f64 {
    let y = y.abs();
    -y + std::f64::consts::LN_2 - (-2.0 * y).exp().ln_1p()
}

/// `∫_{-t}^{1} (1 - s^2)^{(4-p)/(p-2)} ds` for `-1 < t < 1`.
///
/// `one_minus_t` must equal `1 - t`; callers pass it separately when `t` is
/// close to 1 and the difference is known more accurately than `1.0 - t`.
///
/// With `s = cos(theta)` the integral becomes `∫_0^{acos(-t)} sin^r(theta)`,
/// `r = (6 - p)/(p - 2) >= 0`, which is bounded; the remaining `theta^r`
/// endpoint behaviour is absorbed by tanh-sinh quadrature.
pub fn mass_integral_split(p: f64, t: f64, one_minus_t: f64) -> f64 {
    mass_integral_ends(p, t, one_minus_t, 1.0 + t)
}

/// `pi - acos(t)`, taken from whichever of `1 - t`, `1 + t` is small.
pub(crate) fn upper_angle(t: f64, one_minus_t: f64, one_plus_t: f64) -> f64 {
    if t > 0.5 {
        PI - 2.0 * (0.5 * one_minus_t).sqrt().asin()
    } else if t < -0.5 {
        2.0 * (0.5 * one_plus_t).sqrt().asin()
    } else {
        PI - t.acos()
    }
}

/// [`mass_integral_split`] with `1 + t` also supplied.
pub(crate) fn mass_integral_ends(p: f64, t: f64, one_minus_t: f64, one_plus_t: f64) -> f64 {
    let r = (6.0 - p) / (p - 2.0);
    let theta_max = upper_angle(t, one_minus_t, one_plus_t);
    if r.abs() < 1e-14 || theta_max <= 0.0 {
        return theta_max.max(0.0);
    }
    // c = pi - theta_max = acos(t), accurate when small
    let c = if t > 0.5 {
        2.0 * (0.5 * one_minus_t).sqrt().asin()
    } else {
        PI - theta_max
    };
    tanh_sinh(
        |_, dl, dr| {
            // sin(theta) with theta = dl, or sin(pi - theta) = sin(c + dr)
            let s = if dl <= dr || c > 1.0 { dl.sin() } else { (c + dr).sin() };
            s.powf(r)
        },
        0.0,
        theta_max,
        1e-15,
    )
    .value
}

pub fn mass_integral(p: f64, t: f64) -> f64 {
    mass_integral_split(p, t, 1.0 - t)
}

/// Value of the soliton `phi_omega(x)` (line soliton centred at 0).
pub fn soliton_value(p: f64, omega: f64, x: f64) -> Result<f64> {
    check_power(p)?;
    check_frequency(omega)?;
    Ok(soliton_value_unchecked(p, omega, x))
}

pub(crate) fn soliton_value_unchecked(p: f64, omega: f64, x: f64) -> f64 {
    soliton_ln_value(p, omega, x).exp()
}

pub(crate) fn soliton_ln_value(p: f64, omega: f64, x: f64) -> f64 {
    let width = (0.5 * p - 1.0) * omega.sqrt();
    ((0.5 * p * omega).ln() + 2.0 * ln_sech(width * x)) / (p - 2.0)
}

/// `phi_omega'(x) = -sqrt(omega) tanh((p/2 - 1) sqrt(omega) x) phi_omega(x)`.
pub fn soliton_derivative(p: f64, omega: f64, x: f64) -> Result<f64> {
    check_power(p)?;
    check_frequency(omega)?;
    Ok(soliton_derivative_unchecked(p, omega, x))
}

pub(crate) fn soliton_derivative_unchecked(p: f64, omega: f64, x: f64) -> f64 {
    let width = (0.5 * p - 1.0) * omega.sqrt();
    -omega.sqrt() * (width * x).tanh() * soliton_value_unchecked(p, omega, x)
}

/// Peak value `(p omega / 2)^(1/(p-2))`.
pub fn soliton_peak(p: f64, omega: f64) -> f64 {
    (0.5 * p * omega).powf(1.0 / (p - 2.0))
}

/// `4 (p/2)^(2/(p-2)) / (p - 2)`, the mass prefactor of the line soliton.
fn line_mass_prefactor(p: f64) -> f64 {
    4.0 * (0.5 * p).powf(2.0 / (p - 2.0)) / (p - 2.0)
}

/// Exponent of `omega` in the soliton mass, `(6 - p) / (2 (p - 2))`.
pub fn mass_frequency_exponent(p: f64) -> f64 {
    (6.0 - p) / (2.0 * (p - 2.0))
}

/// `||phi_omega||^2` on the whole line, for `2 < p < 6`.
pub fn soliton_mass_line(p: f64, omega: f64) -> Result<f64> {
    check_subcritical(p)?;
    check_frequency(omega)?;
    Ok(soliton_mass_line_unchecked(p, omega))
}

pub(crate) fn soliton_mass_line_unchecked(p: f64, omega: f64) -> f64 {
    line_mass_prefactor(p) * omega.powf(mass_frequency_exponent(p)) * mass_integral(p, 0.0)
}

/// Frequency of the line soliton of mass `mu`: monotone inversion of the mass law.
///
/// The search runs over `ln(omega)`, starting from the bracket
/// `[1e-12, 1e-12 * 2^k]` and widening in either direction as needed.
pub fn soliton_frequency_for_mass(p: f64, mu: f64) -> Result<f64> {
    check_subcritical(p)?;
    if !(mu.is_finite() && mu > 0.0) {
        return Err(NlsError::domain(format!("mass mu = {mu} must be positive")));
    }
    let ln_coeff = (line_mass_prefactor(p) * mass_integral(p, 0.0)).ln();
    let expo = mass_frequency_exponent(p);
    let ln_mu = mu.ln();
    let g = |s: f64| ln_coeff + expo * s - ln_mu;

    let s0 = 1e-12_f64.ln();
    let g0 = g(s0);
    let mut step = 1.0;
    let (mut a, mut b) = (s0, s0);
    let (mut ga, mut gb) = (g0, g0);
    for _ in 0..2000 {
        if g0 < 0.0 {
            b = s0 + step;
            gb = g(b);
            if gb >= 0.0 {
                break;
            }
            a = b;
            ga = gb;
        } else {
            a = s0 - step;
            ga = g(a);
            if ga <= 0.0 {
                break;
            }
            b = a;
            gb = ga;
        }
        step *= 2.0;
    }
    let tol = Tolerance {
        x_abs: 1e-15,
        x_rel: f64::EPSILON,
        max_iter: 300,
    };
    let s = brent_with_values(g, a, ga, b, gb, tol)?;
    Ok(s.exp())
}

/// Constants of the subcritical soliton family at power `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalConstants {
    pub p: f64,
    /// `(p - 2) / (6 - p)`.
    pub beta: f64,
    /// Energy coefficient in `E(mu, R) = -theta_p mu^(2 beta + 1)`.
    pub theta_p: f64,
    /// Frequency of the unit-mass soliton.
    pub omega_of_unit_mass: f64,
    /// Amplitude coefficient in `phi_mu(x) = C_p mu^(2/(6-p)) sech^(2/(p-2))(c_p mu^beta x)`.
    pub amplitude_coeff: f64,
    /// Width coefficient `c_p` of the same representation.
    pub width_coeff: f64,
    pub k6_halfline: f64,
    pub kinf_line: f64,
    pub kinf_halfline: f64,
}

pub fn compute_constants(p: f64) -> Result<UniversalConstants> {
    check_subcritical(p)?;
    let b = beta(p);
    let omega1 = soliton_frequency_for_mass(p, 1.0)?;
    Ok(UniversalConstants {
        p,
        beta: b,
        theta_p: omega1 / (2.0 * (2.0 * b + 1.0)),
        omega_of_unit_mass: omega1,
        amplitude_coeff: soliton_peak(p, omega1),
        width_coeff: (0.5 * p - 1.0) * omega1.sqrt(),
        k6_halfline: K6_HALFLINE,
        kinf_line: KINF_LINE,
        kinf_halfline: KINF_HALFLINE,
    })
}

/// `theta_p` alone.
pub fn theta(p: f64) -> Result<f64> {
    Ok(compute_constants(p)?.theta_p)
}

fn check_mass(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 {
        Ok(())
    } else {
        Err(NlsError::domain(format!("mass mu = {mu} must be positive")))
    }
}

/// Line ground-state energy at mass `mu`: `-theta_p mu^(2 beta + 1)`.
pub fn soliton_energy_line(p: f64, mu: f64) -> Result<f64> {
    check_mass(mu)?;
    let c = compute_constants(p)?;
    Ok(-c.theta_p * mu.powf(2.0 * c.beta + 1.0))
}

/// Neumann half-line ground-state energy at mass `mu`: `-theta_p 2^(2 beta) mu^(2 beta + 1)`.
pub fn neumann_halfline_energy(p: f64, mu: f64) -> Result<f64> {
    check_mass(mu)?;
    let c = compute_constants(p)?;
    Ok(-c.theta_p * 2f64.powf(2.0 * c.beta) * mu.powf(2.0 * c.beta + 1.0))
}

/// Value of the critical (`p = 6`) soliton, `(3 omega sech^2(2 sqrt(omega) x))^(1/4)`.
pub fn critical_soliton_value(omega: f64, x: f64) -> Result<f64> {
    soliton_value(CRITICAL_POWER, omega, x)
}
