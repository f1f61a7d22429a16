//! Amplitude damping of both qubits into independent reservoirs.
//!
//! Times are dimensionless, `τ = Γt`. [`evolve_xstate_closed`] is the
//! coefficient-level propagator; [`evolve_kraus`] is the operator-sum oracle
//! that works on any two-qubit density matrix.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat2};
use crate::qstate::{DensityMatrix4, XState};
use crate::scalar::Real;

/// Decay rate `Γ`; only used to convert between `t` and `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingParams<T: Real> {
    rate: T,
}

impl<T: Real> DampingParams<T> {
    pub fn new(rate: T) -> Result<Self> {
        if !(rate > T::zero() && rate.is_finite()) {
            return Err(Error::Domain(format!("decay rate must be > 0, got {rate}")));
        }
        Ok(Self { rate })
    }

    pub fn rate(&self) -> T {
        self.rate
    }

    pub fn to_tau(&self, t: T) -> T {
        self.rate * t
    }

    pub fn to_physical(&self, tau: T) -> T {
        tau / self.rate
    }
}

impl<T: Real> Default for DampingParams<T> {
    fn default() -> Self {
        Self { rate: T::one() }
    }
}

/// Amplitude survival factor `γ = exp(−τ/2)`, in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GammaFactor<T: Real>(T);

impl<T: Real> GammaFactor<T> {
    pub fn gamma(self) -> T {
        self.0
    }

    /// Population survival `γ² = exp(−τ)`.
    pub fn squared(self) -> T {
        self.0 * self.0
    }

    pub fn fourth(self) -> T {
        let g2 = self.squared();
        g2 * g2
    }
}

fn check_tau<T: Real>(tau: T) -> Result<()> {
    if tau >= T::zero() && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeTime(tau.as_f64()))
    }
}

pub fn gamma_factor<T: Real>(tau: T) -> Result<GammaFactor<T>> {
    check_tau(tau)?;
    Ok(GammaFactor((-tau / T::lit(2.0)).exp()))
}

/// Closed-form propagator on X states, parameterized by `x = γ² ∈ [0, 1]`.
///
/// Both coherences decay as `γ²`; `d` is fixed by trace completion.
pub(crate) fn evolve_xstate_at<T: Real>(s: &XState<T>, x: T) -> XState<T> {
    let (a0, b0, c0) = (s.a(), s.b(), s.c());
    let x2 = x * x;
    let a = a0 * x2;
    let b = (b0 + a0) * x - a0 * x2;
    let c = (c0 + a0) * x - a0 * x2;
    let d = T::lit(3.0) - a - b - c;
    XState::new_unchecked(a, b, c, d, s.z_inner() * x, s.z_corner() * x)
}

pub fn evolve_xstate_closed<T: Real>(s0: &XState<T>, tau: T) -> Result<XState<T>> {
    let g = gamma_factor(tau)?;
    Ok(evolve_xstate_at(s0, g.squared()))
}

/// Single-qubit Kraus pair on `(|+⟩, |−⟩)`: `K₀ = diag(γ, 1)` and
/// `K₁ = √(1−γ²) |−⟩⟨+|`.
pub fn kraus_pair<T: Real>(g: GammaFactor<T>) -> [CMat2<T>; 2] {
    let re = |v: T| Complex::new(v, T::zero());
    let zero = Complex::zero();
    let k0 = [[re(g.gamma()), zero], [zero, re(T::one())]];
    let k1 = [
        [zero, zero],
        [re((T::one() - g.squared()).max(T::zero()).sqrt()), zero],
    ];
    [k0, k1]
}

/// `ρ ↦ Σᵢⱼ (Kᵢ⊗Kⱼ) ρ (Kᵢ⊗Kⱼ)†`.
pub fn evolve_kraus<T: Real>(m: &DensityMatrix4<T>, tau: T) -> Result<DensityMatrix4<T>> {
    let g = gamma_factor(tau)?;
    let ks = kraus_pair(g);
    let mut out = linalg::zeros4();
    for ka in &ks {
        for kb in &ks {
            let k = linalg::kron2(ka, kb);
            let term = linalg::conjugate4(&k, m.entries());
            for (o, t) in out.iter_mut().flatten().zip(term.iter().flatten()) {
                *o = *o + *t;
            }
        }
    }
    Ok(DensityMatrix4::new_unchecked(out))
}
