//! Positive bound states of `-u'' - |u|^{p-2} u + omega u = 0` on the
//! half-line with the Robin/delta condition `u'(0) = alpha u(0)`.
//!
//! For `omega > alpha^2` the only positive bound state is the shifted soliton
//! `phi_omega(x - a)` with `sqrt(omega) tanh((p-2)/2 sqrt(omega) a) = alpha`;
//! for `0 < omega <= alpha^2` there is none. This module provides the shift,
//! the mass map `M(omega, alpha)`, the energy `F(eta^omega)` and their
//! `omega`-derivatives, for `2 < p < 6` and the critical power `p = 6`.

use crate::closedform::{
    check_power, is_critical, mass_integral_ends, soliton_derivative_unchecked, upper_angle,
    soliton_value_unchecked, weight_exponent,
};
use crate::error::{NlsError, Result};

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha != 0.0 {
        Ok(())
    } else {
        Err(NlsError::domain(format!(
            "interaction strength alpha = {alpha} must be finite and nonzero"
        )))
    }
}

/// A frequency above `alpha^2`, carrying `omega - alpha^2` and
/// `1 - alpha/sqrt(omega)` at full precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Frequency {
    pub omega: f64,
    pub excess: f64,
    /// `alpha / sqrt(omega)`, in `(-1, 1)`.
    pub t: f64,
    pub one_minus_t: f64,
    pub one_plus_t: f64,
}

impl Frequency {
    pub fn new(alpha: f64, omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(NlsError::domain(format!("frequency omega = {omega} must be positive")));
        }
        let excess = omega - alpha * alpha;
        if excess <= 0.0 {
            return Err(NlsError::NoBoundState {
                omega,
                alpha_sq: alpha * alpha,
            });
        }
        Ok(Self::from_parts(alpha, omega, excess))
    }

    /// `omega = alpha^2 + excess`, with `excess > 0` known exactly.
    pub fn from_excess(alpha: f64, excess: f64) -> Self {
        Self::from_parts(alpha, alpha * alpha + excess, excess)
    }

    fn from_parts(alpha: f64, omega: f64, excess: f64) -> Self {
        let root = omega.sqrt();
        let t = alpha / root;
        let near = excess / (root * (root + alpha.abs()));
        let (one_minus_t, one_plus_t) = if alpha > 0.0 {
            (near, 1.0 + t)
        } else {
            (1.0 - t, near)
        };
        Frequency {
            omega,
            excess,
            t,
            one_minus_t,
            one_plus_t,
        }
    }

    /// `atanh(alpha / sqrt(omega))`
    fn atanh_t(&self) -> f64 {
        0.5 * (self.t.ln_1p() - self.one_minus_t.ln())
    }

    /// `pi - acos(alpha / sqrt(omega))`, accurate when the ratio approaches +-1.
    fn upper_angle(&self) -> f64 {
        upper_angle(self.t, self.one_minus_t, self.one_plus_t)
    }

    fn mass_integral(&self, p: f64) -> f64 {
        mass_integral_ends(p, self.t, self.one_minus_t, self.one_plus_t)
    }
}

/// Translation `a = 2 atanh(alpha / sqrt(omega)) / ((p - 2) sqrt(omega))`.
pub fn shift(p: f64, alpha: f64, omega: f64) -> Result<f64> {
    check_power(p)?;
    check_alpha(alpha)?;
    let f = Frequency::new(alpha, omega)?;
    Ok(shift_at(p, &f))
}

pub(crate) fn shift_at(p: f64, f: &Frequency) -> f64 {
    2.0 * f.atanh_t() / ((p - 2.0) * f.omega.sqrt())
}

/// The positive bound state `eta^{omega, alpha} = phi_omega(. - a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub p: f64,
    pub alpha: f64,
    pub omega: f64,
    pub shift: f64,
}

impl BoundState {
    pub fn new(p: f64, alpha: f64, omega: f64) -> Result<Self> {
        check_power(p)?;
        check_alpha(alpha)?;
        let f = Frequency::new(alpha, omega)?;
        Ok(Self::from_frequency(p, alpha, &f))
    }

    pub(crate) fn from_frequency(p: f64, alpha: f64, f: &Frequency) -> Self {
        BoundState {
            p,
            alpha,
            omega: f.omega,
            shift: shift_at(p, f),
        }
    }

    /// `eta(x)` for `x >= 0`.
    pub fn evaluate(&self, x: f64) -> f64 {
        soliton_value_unchecked(self.p, self.omega, x - self.shift)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        soliton_derivative_unchecked(self.p, self.omega, x - self.shift)
    }

    /// `M(omega, alpha)`.
    pub fn mass(&self) -> f64 {
        mass_at(self.p, self.alpha, &Frequency::from_excess(self.alpha, self.omega - self.alpha * self.alpha))
    }

    pub fn energy(&self) -> f64 {
        energy_at(self.p, self.alpha, &Frequency::from_excess(self.alpha, self.omega - self.alpha * self.alpha))
    }

    /// Boundary-condition mismatch `sqrt(omega) tanh((p-2)/2 sqrt(omega) a) - alpha`.
    pub fn boundary_mismatch(&self) -> f64 {
        let root = self.omega.sqrt();
        root * (0.5 * (self.p - 2.0) * root * self.shift).tanh() - self.alpha
    }

    /// A spatial extent past which the profile is below `exp(-40)` of its peak.
    pub fn decay_length(&self) -> f64 {
        self.shift.max(0.0) + 40.0 / ((0.5 * self.p - 1.0) * self.omega.sqrt())
    }
}

fn subcritical_mass_prefactor(p: f64) -> f64 {
    p.powf(2.0 / (p - 2.0)) / (2f64.powf((4.0 - p) / (p - 2.0)) * (p - 2.0))
}

pub(crate) fn mass_at(p: f64, _alpha: f64, f: &Frequency) -> f64 {
    if is_critical(p) {
        return critical_mass_at(f);
    }
    subcritical_mass_prefactor(p)
        * f.omega.powf((6.0 - p) / (2.0 * (p - 2.0)))
        * f.mass_integral(p)
}

fn critical_mass_at(f: &Frequency) -> f64 {
    // (sqrt 3 / 2)(pi/2 + asin t) = (sqrt 3 / 2)(pi - acos t)
    0.5 * 3f64.sqrt() * f.upper_angle()
}

/// `M(alpha^2 + excess, alpha)`, usable where `alpha^2 + excess` rounds to `alpha^2`.
pub fn mass_from_excess(p: f64, alpha: f64, excess: f64) -> Result<f64> {
    check_power(p)?;
    check_alpha(alpha)?;
    if !(excess > 0.0) {
        return Err(NlsError::domain(format!("excess {excess} must be positive")));
    }
    Ok(mass_at(p, alpha, &Frequency::from_excess(alpha, excess)))
}

/// Mass `M(omega, alpha)` of the bound state at frequency `omega`.
pub fn mass(p: f64, alpha: f64, omega: f64) -> Result<f64> {
    check_power(p)?;
    check_alpha(alpha)?;
    let f = Frequency::new(alpha, omega)?;
    Ok(mass_at(p, alpha, &f))
}

/// Critical mass map `(sqrt 3 / 2)(pi/2 + asin(alpha / sqrt omega))`.
pub fn mass_critical(alpha: f64, omega: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let f = Frequency::new(alpha, omega)?;
    Ok(critical_mass_at(&f))
}

pub(crate) fn mass_derivative_at(p: f64, alpha: f64, f: &Frequency) -> f64 {
    if is_critical(p) {
        return -alpha * 3f64.sqrt() / (4.0 * f.omega * f.excess.sqrt());
    }
    let m = mass_at(p, alpha, f);
    let trace = (0.5 * p).powf(2.0 / (p - 2.0)) * alpha * f.excess.powf(weight_exponent(p));
    (0.5 * (6.0 - p) * m - trace) / ((p - 2.0) * f.omega)
}

/// `dM/domega`.
pub fn mass_derivative(p: f64, alpha: f64, omega: f64) -> Result<f64> {
    check_power(p)?;
    check_alpha(alpha)?;
    let f = Frequency::new(alpha, omega)?;
    Ok(mass_derivative_at(p, alpha, &f))
}

pub(crate) fn energy_at(p: f64, alpha: f64, f: &Frequency) -> f64 {
    let m = mass_at(p, alpha, f);
    -(6.0 - p) / (2.0 * (p + 2.0)) * f.omega * m
        + alpha * (p - 2.0) / (2.0 * (p + 2.0)) * (0.5 * p * f.excess).powf(2.0 / (p - 2.0))
}

/// Energy `F(eta^omega)` of the bound state.
pub fn energy(p: f64, alpha: f64, omega: f64) -> Result<f64> {
    check_power(p)?;
    check_alpha(alpha)?;
    let f = Frequency::new(alpha, omega)?;
    Ok(energy_at(p, alpha, &f))
}

pub(crate) fn energy_derivative_at(p: f64, alpha: f64, f: &Frequency) -> f64 {
    let prefactor = p.powf(2.0 / (p - 2.0)) / (2f64.powf(p / (p - 2.0)) * (p - 2.0));
    let integral_term = if is_critical(p) {
        0.0
    } else {
        (6.0 - p) / (p - 2.0)
            * f.omega.powf((6.0 - p) / (2.0 * (p - 2.0)))
            * f.mass_integral(p)
    };
    prefactor * (-integral_term + alpha * f.excess.powf(weight_exponent(p)))
}

/// `d F(eta^omega) / d omega`.
pub fn energy_derivative_omega(p: f64, alpha: f64, omega: f64) -> Result<f64> {
    check_power(p)?;
    check_alpha(alpha)?;
    let f = Frequency::new(alpha, omega)?;
    Ok(energy_derivative_at(p, alpha, &f))
}

/// Mass, energy and their frequency derivatives at one point of the curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassEnergySample {
    pub omega: f64,
    pub mass: f64,
    pub energy: f64,
    pub dmass_domega: f64,
    pub denergy_domega: f64,
}

pub fn sample(p: f64, alpha: f64, omega: f64) -> Result<MassEnergySample> {
    check_power(p)?;
    check_alpha(alpha)?;
    let f = Frequency::new(alpha, omega)?;
    Ok(MassEnergySample {
        omega,
        mass: mass_at(p, alpha, &f),
        energy: energy_at(p, alpha, &f),
        dmass_domega: mass_derivative_at(p, alpha, &f),
        denergy_domega: energy_derivative_at(p, alpha, &f),
    })
}
