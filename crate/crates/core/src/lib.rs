//! Bound states and fixed-mass ground states of
//!
//! ```text
//! F(u) = 1/2 ||u'||^2 - 1/p ||u||_p^p + alpha/2 |u(0)|^2,   u in H^1(R+),   ||u||_2^2 = mu
//! ```
//!
//! for `2 < p <= 6` and `alpha != 0`.
//!
//! * [`closedform`]: solitons, their masses and the universal constants;
//! * [`boundstate`]: the shifted-soliton bound states and the mass/energy maps;
//! * [`thresholds`]: `omega*`, `mu*`, `mu~`, mass inversion and bound-state counts;
//! * [`groundstate`]: existence decisions, energy levels, the critical dichotomy;
//! * [`minimizer`]: a finite-difference gradient flow used as an independent check;
//! * [`verify`]: the self-check suite.

pub mod boundstate;
pub mod closedform;
pub mod error;
pub mod groundstate;
pub mod minimizer;
pub mod quadrature;
pub mod roots;
pub mod thresholds;
pub mod verify;

pub use boundstate::{BoundState, MassEnergySample};
pub use closedform::UniversalConstants;
pub use error::{NlsError, Result};
pub use groundstate::{EnergyLevel, GroundStateReport};
pub use minimizer::{DiscreteField, FlowConfig, FlowOutcome, FlowStatus, Grid, Initialization};
pub use thresholds::{AlphaThreshold, BranchSelector, ThresholdReport};
pub use verify::{RegimeFilter, VerifyOptions, VerifyReport};
