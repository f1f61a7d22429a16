//! Two-qubit states and their entanglement / information measures.
//!
//! Basis order is `(|++⟩, |+−⟩, |−+⟩, |−−⟩)`: Alice is the first slot and the
//! high bit of the index, `+` is the excited level.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat4, HermitianEigen};
use crate::scalar::Real;

/// Which qubit a partial transpose acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Subsystem {
    A,
    #[default]
    B,
}

/// Which coherence slots of an [`XState`] are populated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XShape {
    /// Both coherences zero.
    Diagonal,
    /// Only the `|+−⟩`/`|−+⟩` coherence.
    Inner,
    /// Only the `|++⟩`/`|−−⟩` coherence.
    Corner,
    Both,
}

/// Real X-form two-qubit state, stored with the 1/3 prefactor factored out.
///
/// The occupations sum to 3 and the matrix is recovered as
///
/// ```text
///        ⎛ a  0  0  w ⎞
/// ρ = ⅓  ⎜ 0  b  z  0 ⎟      z = z_inner, w = z_corner
///        ⎜ 0  z  c  0 ⎟
///        ⎝ w  0  0  d ⎠
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState<T: Real> {
    a: T,
    b: T,
    c: T,
    d: T,
    z_inner: T,
    z_corner: T,
}

impl<T: Real> XState<T> {
    /// Validates occupations, unit trace and positivity.
    pub fn new(a: T, b: T, c: T, d: T, z_inner: T, z_corner: T) -> Result<Self> {
        let s = Self::new_unchecked(a, b, c, d, z_inner, z_corner);
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(a: T, b: T, c: T, d: T, z_inner: T, z_corner: T) -> Self {
        Self {
            a,
            b,
            c,
            d,
            z_inner,
            z_corner,
        }
    }

    /// `a = b = c = z = 1`, `d = 0`: entangled, but dies in finite time.
    pub fn with_excited_admixture() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self::new_unchecked(o, o, o, z, o, z)
    }

    /// `b = c = d = z = 1`, `a = 0`: entanglement only decays asymptotically.
    pub fn with_ground_admixture() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self::new_unchecked(z, o, o, o, o, z)
    }

    pub fn a(&self) -> T {
        self.a
    }
    pub fn b(&self) -> T {
        self.b
    }
    pub fn c(&self) -> T {
        self.c
    }
    pub fn d(&self) -> T {
        self.d
    }
    pub fn z_inner(&self) -> T {
        self.z_inner
    }
    pub fn z_corner(&self) -> T {
        self.z_corner
    }

    pub fn shape(&self) -> XShape {
        match (self.z_inner.is_zero(), self.z_corner.is_zero()) {
            (true, true) => XShape::Diagonal,
            (false, true) => XShape::Inner,
            (true, false) => XShape::Corner,
            (false, false) => XShape::Both,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let tol = T::lit(T::STRUCTURE_TOL);
        let all = [self.a, self.b, self.c, self.d, self.z_inner, self.z_corner];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(invariant("finite", format!("{self:?}")));
        }
        for (name, v) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)] {
            if v < -tol {
                return Err(invariant("occupation >= 0", format!("{name} = {v}")));
            }
        }
        let trace = self.a + self.b + self.c + self.d;
        let three = T::lit(3.0);
        if (trace - three).abs() > tol * three {
            return Err(invariant("a+b+c+d = 3", format!("sum = {trace}")));
        }
        if self.z_inner * self.z_inner > self.b * self.c + tol {
            return Err(invariant(
                "z_inner^2 <= b*c",
                format!("z_inner = {}, b*c = {}", self.z_inner, self.b * self.c),
            ));
        }
        if self.z_corner * self.z_corner > self.a * self.d + tol {
            return Err(invariant(
                "z_corner^2 <= a*d",
                format!("z_corner = {}, a*d = {}", self.z_corner, self.a * self.d),
            ));
        }
        Ok(())
    }

    pub fn to_density_matrix(&self) -> DensityMatrix4<T> {
        let third = T::one() / T::lit(3.0);
        let re = |x: T| Complex::new(x * third, T::zero());
        let mut m = linalg::zeros4();
        m[0][0] = re(self.a);
        m[1][1] = re(self.b);
        m[2][2] = re(self.c);
        m[3][3] = re(self.d);
        m[1][2] = re(self.z_inner);
        m[2][1] = re(self.z_inner);
        m[0][3] = re(self.z_corner);
        m[3][0] = re(self.z_corner);
        DensityMatrix4::new_unchecked(m)
    }

    /// Largest absolute difference over all six coefficients.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let l = [self.a, self.b, self.c, self.d, self.z_inner, self.z_corner];
        let r = [
            other.a,
            other.b,
            other.c,
            other.d,
            other.z_inner,
            other.z_corner,
        ];
        l.iter()
            .zip(&r)
            .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).abs()))
    }
}

fn invariant(name: &'static str, detail: String) -> Error {
    Error::Invariant {
        invariant: name,
        detail,
    }
}

/// Validated `to_density_matrix`; rejects states that break an invariant.
pub fn to_density_matrix<T: Real>(s: &XState<T>) -> Result<DensityMatrix4<T>> {
    s.validate()?;
    Ok(s.to_density_matrix())
}

/// 4×4 complex matrix checked to be Hermitian. Partial transposes live here
/// since they need not be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian4<T: Real>(CMat4<T>);

impl<T: Real> Hermitian4<T> {
    pub fn new(m: CMat4<T>) -> Result<Self> {
        let dev = linalg::hermitian_deviation(&m);
        if !(dev <= T::lit(T::STRUCTURE_TOL)) {
            return Err(Error::NotHermitian {
                deviation: dev.as_f64(),
            });
        }
        Ok(Self(m))
    }

    pub fn entries(&self) -> &CMat4<T> {
        &self.0
    }

    pub fn trace(&self) -> T {
        linalg::trace4(&self.0).re
    }

    pub fn partial_transpose(&self, subsystem: Subsystem) -> Self {
        let mut out = linalg::zeros4();
        for i in 0..4 {
            for j in 0..4 {
                let (ia, ib, ja, jb) = (i >> 1, i & 1, j >> 1, j & 1);
                let (src_i, src_j) = match subsystem {
                    Subsystem::B => (2 * ia + jb, 2 * ja + ib),
                    Subsystem::A => (2 * ja + ib, 2 * ia + jb),
                };
                out[i][j] = self.0[src_i][src_j];
            }
        }
        Self(out)
    }

    pub fn eigen(&self) -> Result<HermitianEigen<T>> {
        linalg::eigh(&self.0)
    }

    pub fn eigenvalues(&self) -> Result<[T; 4]> {
        Ok(self.eigen()?.values)
    }
}

/// Two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4<T: Real>(Hermitian4<T>);

impl<T: Real> DensityMatrix4<T> {
    pub fn new(m: CMat4<T>) -> Result<Self> {
        let h = Hermitian4::new(m)?;
        let tol = T::lit(T::STRUCTURE_TOL);
        let tr = linalg::trace4(&m);
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(invariant("trace = 1", format!("trace = {tr}")));
        }
        let min = h.eigenvalues()?[0];
        if min < -T::lit(T::PSD_TOL) {
            return Err(invariant(
                "positive semidefinite",
                format!("min eigenvalue = {min}"),
            ));
        }
        Ok(Self(h))
    }

    /// For matrices produced by structure-preserving maps inside the crate.
    pub(crate) fn new_unchecked(m: CMat4<T>) -> Self {
        Self(Hermitian4(m))
    }

    pub fn entries(&self) -> &CMat4<T> {
        self.0.entries()
    }

    pub fn as_hermitian(&self) -> &Hermitian4<T> {
        &self.0
    }

    pub fn trace(&self) -> T {
        self.0.trace()
    }

    pub fn eigenvalues(&self) -> Result<[T; 4]> {
        self.0.eigenvalues()
    }

    /// Re-runs the constructor checks.
    pub fn validate(&self) -> Result<()> {
        Self::new(*self.entries()).map(|_| ())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        linalg::max_abs_diff4(self.entries(), other.entries())
    }
}

impl<T: Real> fmt::Display for DensityMatrix4<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries() {
            let cells: Vec<String> = row.iter().map(|z| format!("{z:.6}")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn partial_transpose<T: Real>(m: &DensityMatrix4<T>, subsystem: Subsystem) -> Hermitian4<T> {
    m.as_hermitian().partial_transpose(subsystem)
}

/// Ascending eigenvalues of a Hermitian 4×4 matrix.
pub fn eigenvalues_hermitian4<T: Real>(m: &CMat4<T>) -> Result<[T; 4]> {
    Hermitian4::new(*m)?.eigenvalues()
}

/// Non-negative scalar measure (negativity, concurrence, entropy).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct MeasureValue<T: Real>(T);

impl<T: Real> MeasureValue<T> {
    /// Round-off below zero is clamped to zero.
    pub fn from_raw(v: T) -> Self {
        Self(v.max(T::zero()))
    }

    pub fn value(self) -> T {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }
}

impl<T: Real> fmt::Display for MeasureValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Sum of |negative eigenvalues| of the partial transpose over B.
pub fn negativity<T: Real>(m: &DensityMatrix4<T>) -> Result<MeasureValue<T>> {
    let spectrum = partial_transpose(m, Subsystem::B).eigenvalues()?;
    let neg = spectrum
        .iter()
        .filter(|&&l| l < T::zero())
        .fold(T::zero(), |acc, &l| acc - l);
    Ok(MeasureValue::from_raw(neg))
}

/// Closed-form negativity for an X state with at most one coherence slot.
///
/// The partial transpose swaps the two coherence slots, so the only block
/// that can go negative is `{|++⟩,|−−⟩}` for inner coherence and
/// `{|+−⟩,|−+⟩}` for corner coherence.
pub fn negativity_xstate<T: Real>(s: &XState<T>) -> Result<MeasureValue<T>> {
    let (p, q, z) = match s.shape() {
        XShape::Diagonal => return Ok(MeasureValue::default()),
        XShape::Inner => (s.a, s.d, s.z_inner),
        XShape::Corner => (s.b, s.c, s.z_corner),
        XShape::Both => return Err(Error::UnsupportedShape("both coherence slots are nonzero")),
    };
    let four = T::lit(4.0);
    let root = ((p - q) * (p - q) + four * z * z).sqrt();
    let denom = root + p + q;
    if denom.is_zero() {
        return Ok(MeasureValue::default());
    }
    // root − (p + q), rationalized so late-time values keep their precision
    let six_lambda = four * (z * z - p * q) / denom;
    Ok(MeasureValue::from_raw(six_lambda / T::lit(6.0)))
}

/// Wootters concurrence, from the spectrum of `√ρ ρ̃ √ρ`.
pub fn concurrence<T: Real>(m: &DensityMatrix4<T>) -> Result<MeasureValue<T>> {
    let rho = m.entries();
    // σy⊗σy is real: ±1 on the anti-diagonal
    let mut yy = linalg::zeros4::<T>();
    for (i, sign) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        yy[i][3 - i] = Complex::new(T::lit(sign), T::zero());
    }
    let flipped = linalg::mul4(&linalg::mul4(&yy, &linalg::conj4(rho)), &yy);

    let sqrt_rho = m
        .as_hermitian()
        .eigen()?
        .map_spectrum(|l| l.max(T::zero()).sqrt());
    let prod = linalg::mul4(&linalg::mul4(&sqrt_rho, &flipped), &sqrt_rho);
    // symmetrize away round-off before the Hermitian solver
    let mut herm = linalg::zeros4();
    let half = T::lit(0.5);
    for i in 0..4 {
        for j in 0..4 {
            herm[i][j] = (prod[i][j] + prod[j][i].conj()) * half;
        }
    }
    let mut lambdas = linalg::eigh(&herm)?
        .values
        .map(|mu| mu.max(T::zero()).sqrt());
    lambdas.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    Ok(MeasureValue::from_raw(
        lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3],
    ))
}

/// `−Σ λ ln λ` with natural log and `0 ln 0 = 0`.
pub fn von_neumann_entropy<T: Real>(m: &DensityMatrix4<T>) -> Result<MeasureValue<T>> {
    let s = m
        .eigenvalues()?
        .iter()
        .filter(|&&l| l > T::zero())
        .fold(T::zero(), |acc, &l| acc - l * l.ln());
    Ok(MeasureValue::from_raw(s))
}
