//! Instantaneous local unitary operations and switch schedules.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat2, CMat4};
use crate::qstate::{DensityMatrix4, XState};
use crate::scalar::Real;

/// Bit-flip switch between excited and ground level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Switch {
    /// `σx ⊗ σx`: exchanges `a ↔ d` and `b ↔ c`.
    Both,
    /// `σx ⊗ 1`.
    Alice,
    /// `1 ⊗ σx`.
    Bob,
}

impl Switch {
    /// XOR mask on the basis index `2·alice + bob`.
    fn index_mask(self) -> usize {
        match self {
            Switch::Both => 0b11,
            Switch::Alice => 0b10,
            Switch::Bob => 0b01,
        }
    }

    pub fn is_single_sided(self) -> bool {
        !matches!(self, Switch::Both)
    }
}

/// 2×2 unitary checked on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2<T: Real>(CMat2<T>);

impl<T: Real> Unitary2<T> {
    pub fn new(m: CMat2<T>) -> Result<Self> {
        let dev = linalg::unitarity_deviation2(&m);
        if !(dev <= T::lit(T::STRUCTURE_TOL)) {
            return Err(Error::NonUnitary {
                deviation: dev.as_f64(),
            });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(linalg::identity2())
    }

    pub fn pauli_x() -> Self {
        let (o, z) = (Complex::one(), Complex::zero());
        Self([[z, o], [o, z]])
    }

    /// `e^{iφ} [[e^{iα} cos θ, e^{iβ} sin θ], [−e^{−iβ} sin θ, e^{−iα} cos θ]]`;
    /// covers all of U(2).
    pub fn from_angles(phi: T, alpha: T, beta: T, theta: T) -> Self {
        let g = Complex::from_polar(T::one(), phi);
        let e = |ang: T, r: T| Complex::from_polar(r, ang);
        let (c, s) = (theta.cos(), theta.sin());
        Self([
            [g * e(alpha, c), g * e(beta, s)],
            [-(g * e(-beta, s)), g * e(-alpha, c)],
        ])
    }

    pub fn matrix(&self) -> &CMat2<T> {
        &self.0
    }
}

/// Local operation `U_A ⊗ U_B` applied instantaneously.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalUnitary<T: Real> {
    SwapBoth,
    SwapAlice,
    SwapBob,
    General {
        alice: Unitary2<T>,
        bob: Unitary2<T>,
    },
}

impl<T: Real> LocalUnitary<T> {
    pub fn general(alice: CMat2<T>, bob: CMat2<T>) -> Result<Self> {
        Ok(Self::General {
            alice: Unitary2::new(alice)?,
            bob: Unitary2::new(bob)?,
        })
    }

    /// The bit-flip this operation is, if any.
    pub fn as_switch(&self) -> Option<Switch> {
        match self {
            Self::SwapBoth => Some(Switch::Both),
            Self::SwapAlice => Some(Switch::Alice),
            Self::SwapBob => Some(Switch::Bob),
            Self::General { .. } => None,
        }
    }

    pub fn matrix(&self) -> CMat4<T> {
        let (a, b) = match self {
            Self::SwapBoth => (Unitary2::pauli_x(), Unitary2::pauli_x()),
            Self::SwapAlice => (Unitary2::pauli_x(), Unitary2::identity()),
            Self::SwapBob => (Unitary2::identity(), Unitary2::pauli_x()),
            Self::General { alice, bob } => (*alice, *bob),
        };
        linalg::kron2(a.matrix(), b.matrix())
    }
}

impl<T: Real> From<Switch> for LocalUnitary<T> {
    fn from(s: Switch) -> Self {
        match s {
            Switch::Both => Self::SwapBoth,
            Switch::Alice => Self::SwapAlice,
            Switch::Bob => Self::SwapBob,
        }
    }
}

/// `(U_A⊗U_B) ρ (U_A⊗U_B)†`.
pub fn apply<T: Real>(m: &DensityMatrix4<T>, op: &LocalUnitary<T>) -> DensityMatrix4<T> {
    let out = match op.as_switch() {
        // a permutation; copy entries rather than multiply
        Some(sw) => {
            let mask = sw.index_mask();
            let src = m.entries();
            let mut out = linalg::zeros4();
            for i in 0..4 {
                for j in 0..4 {
                    out[i][j] = src[i ^ mask][j ^ mask];
                }
            }
            out
        }
        None => linalg::conjugate4(&op.matrix(), m.entries()),
    };
    DensityMatrix4::new_unchecked(out)
}

/// Exact coefficient rewrite of a bit-flip on an X state.
pub fn apply_xstate<T: Real>(s: &XState<T>, op: Switch) -> XState<T> {
    let (a, b, c, d, zi, zc) = (s.a(), s.b(), s.c(), s.d(), s.z_inner(), s.z_corner());
    match op {
        Switch::Both => XState::new_unchecked(d, c, b, a, zi, zc),
        Switch::Alice => XState::new_unchecked(c, d, a, b, zc, zi),
        Switch::Bob => XState::new_unchecked(b, a, d, c, zc, zi),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduledOp<T: Real> {
    pub tau: T,
    pub op: LocalUnitary<T>,
}

/// Time-ordered interventions, strictly increasing in `τ`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule<T: Real> {
    events: Vec<ScheduledOp<T>>,
}

impl<T: Real> Schedule<T> {
    pub fn new(events: Vec<ScheduledOp<T>>) -> Result<Self> {
        for (i, ev) in events.iter().enumerate() {
            if !(ev.tau.is_finite() && ev.tau >= T::zero()) {
                return Err(Error::InvalidSchedule(format!(
                    "event {i} has time {}, expected finite and >= 0",
                    ev.tau
                )));
            }
            if i > 0 && !(ev.tau > events[i - 1].tau) {
                return Err(Error::InvalidSchedule(format!(
                    "event {i} at {} does not follow {}",
                    ev.tau,
                    events[i - 1].tau
                )));
            }
        }
        Ok(Self { events })
    }

    pub fn empty() -> Self {
        Self { events: Vec::new() }
    }

    pub fn single(tau: T, op: impl Into<LocalUnitary<T>>) -> Result<Self> {
        Self::new(vec![ScheduledOp { tau, op: op.into() }])
    }

    pub fn events(&self) -> &[ScheduledOp<T>] {
        &self.events
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}
