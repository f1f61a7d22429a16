//! Entanglement sudden death of two amplitude-damped qubits.
//!
//! The crate evolves two-level pairs decaying into independent reservoirs,
//! measures their entanglement through the negativity of the partial
//! transpose, applies instantaneous local bit-flips at chosen times, and
//! locates the finite time at which entanglement ends (or shows that it
//! never does).
//!
//! All math is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod deathclock;
pub mod error;
pub mod intervention;
pub mod linalg;
pub mod qstate;
pub mod roots;
pub mod scalar;

pub use channel::{evolve_kraus, evolve_xstate_closed, gamma_factor, DampingParams, GammaFactor};
pub use deathclock::{
    discriminant, eq5_curve, eq5_max_deviation, find_t_a, find_t_b, find_t_end, linspace,
    sweep_tsw, trajectory, DeathReport, Fate, Piecewise, SweepCurve, SweepRow,
};
pub use error::{Error, Result};
pub use intervention::{
    apply, apply_xstate, LocalUnitary, Schedule, ScheduledOp, Switch, Unitary2,
};
pub use qstate::{
    concurrence, negativity, negativity_xstate, partial_transpose, von_neumann_entropy,
    DensityMatrix4, Hermitian4, MeasureValue, Subsystem, XShape, XState,
};
pub use scalar::Real;

pub type XState64 = XState<f64>;
pub type DensityMatrix = DensityMatrix4<f64>;
pub type Hermitian = Hermitian4<f64>;
pub type Measure = MeasureValue<f64>;
pub type Schedule64 = Schedule<f64>;
pub type LocalUnitary64 = LocalUnitary<f64>;
pub type DeathReport64 = DeathReport<f64>;
pub type SweepCurve64 = SweepCurve<f64>;
pub type Damping64 = DampingParams<f64>;
