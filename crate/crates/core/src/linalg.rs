//! Fixed-size complex matrices and a cyclic Jacobi eigensolver for 4×4
//! Hermitian input.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub type CMat2<T> = [[Complex<T>; 2]; 2];
pub type CMat4<T> = [[Complex<T>; 4]; 4];

const MAX_SWEEPS: usize = 100;

pub fn zeros4<T: Real>() -> CMat4<T> {
    [[Complex::zero(); 4]; 4]
}

pub fn identity4<T: Real>() -> CMat4<T> {
    let mut m = zeros4();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex::one();
    }
    m
}

pub fn identity2<T: Real>() -> CMat2<T> {
    [
        [Complex::one(), Complex::zero()],
        [Complex::zero(), Complex::one()],
    ]
}

pub fn mul4<T: Real>(a: &CMat4<T>, b: &CMat4<T>) -> CMat4<T> {
    let mut out = zeros4();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Complex::zero();
            for k in 0..4 {
                acc = acc + a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mul2<T: Real>(a: &CMat2<T>, b: &CMat2<T>) -> CMat2<T> {
    let mut out = [[Complex::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn adjoint4<T: Real>(a: &CMat4<T>) -> CMat4<T> {
    let mut out = zeros4();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn adjoint2<T: Real>(a: &CMat2<T>) -> CMat2<T> {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Entry-wise complex conjugate (not the adjoint).
pub fn conj4<T: Real>(a: &CMat4<T>) -> CMat4<T> {
    let mut out = *a;
    out.iter_mut().flatten().for_each(|z| *z = z.conj());
    out
}

/// `a ⊗ b` with the first factor acting on Alice (the high index bit).
pub fn kron2<T: Real>(a: &CMat2<T>, b: &CMat2<T>) -> CMat4<T> {
    let mut out = zeros4();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i >> 1][j >> 1] * b[i & 1][j & 1];
        }
    }
    out
}

/// `u m u†`.
pub fn conjugate4<T: Real>(u: &CMat4<T>, m: &CMat4<T>) -> CMat4<T> {
    mul4(&mul4(u, m), &adjoint4(u))
}

pub fn trace4<T: Real>(a: &CMat4<T>) -> Complex<T> {
    (0..4).fold(Complex::zero(), |acc, i| acc + a[i][i])
}

pub fn max_abs_diff4<T: Real>(a: &CMat4<T>, b: &CMat4<T>) -> T {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).norm()))
}

pub fn hermitian_deviation<T: Real>(a: &CMat4<T>) -> T {
    let mut dev = T::zero();
    for i in 0..4 {
        for j in i..4 {
            dev = dev.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    dev
}

pub fn unitarity_deviation2<T: Real>(u: &CMat2<T>) -> T {
    let p = mul2(u, &adjoint2(u));
    let id = identity2::<T>();
    p.iter()
        .flatten()
        .zip(id.iter().flatten())
        .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).norm()))
}

/// Spectral decomposition `m = V diag(values) V†` with ascending `values`.
/// Column `k` of `vectors` is the eigenvector for `values[k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianEigen<T: Real> {
    pub values: [T; 4],
    pub vectors: CMat4<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn reconstruct(&self) -> CMat4<T> {
        let mut out = zeros4();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Complex::zero();
                for k in 0..4 {
                    acc = acc + self.vectors[i][k] * self.vectors[j][k].conj() * self.values[k];
                }
                out[i][j] = acc;
            }
        }
        out
    }

    /// `V diag(f(values)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> CMat4<T> {
        HermitianEigen {
            values: self.values.map(f),
            vectors: self.vectors,
        }
        .reconstruct()
    }
}

fn off_diagonal_norm<T: Real>(a: &CMat4<T>) -> T {
    let mut acc = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                acc = acc + a[i][j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation first removes the phase of `a[p][q]` with a diagonal
/// unitary, then applies a real plane rotation. The input must be Hermitian;
/// callers validate that.
pub fn eigh<T: Real>(m: &CMat4<T>) -> Result<HermitianEigen<T>> {
    let mut a = *m;
    // the diagonal of a Hermitian matrix is real
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Complex::new(row[i].re, T::zero());
    }
    let mut v = identity4::<T>();
    let scale = a
        .iter()
        .flatten()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
        .max(T::one());
    let threshold = T::lit(T::JACOBI_TOL) * scale;
    let half = T::lit(0.5);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                let r = apq.norm();
                if r == T::zero() {
                    continue;
                }
                let phase = apq / r; // e^{iφ}
                let theta = (a[q][q].re - a[p][p].re) * half / r;
                let t = if theta.is_infinite() {
                    T::zero()
                } else {
                    let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // G = diag(1, e^{-iφ}) on (p, q) followed by the real rotation
                let g_pp = Complex::new(c, T::zero());
                let g_pq = Complex::new(s, T::zero());
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;

                // A <- A G
                for row in a.iter_mut() {
                    let (xp, xq) = (row[p], row[q]);
                    row[p] = xp * g_pp + xq * g_qp;
                    row[q] = xp * g_pq + xq * g_qq;
                }
                // A <- G† A
                for k in 0..4 {
                    let (xp, xq) = (a[p][k], a[q][k]);
                    a[p][k] = g_pp.conj() * xp + g_qp.conj() * xq;
                    a[q][k] = g_pq.conj() * xp + g_qq.conj() * xq;
                }
                a[p][q] = Complex::zero();
                a[q][p] = Complex::zero();
                a[p][p] = Complex::new(a[p][p].re, T::zero());
                a[q][q] = Complex::new(a[q][q].re, T::zero());
                // V <- V G
                for row in v.iter_mut() {
                    let (xp, xq) = (row[p], row[q]);
                    row[p] = xp * g_pp + xq * g_qp;
                    row[q] = xp * g_pq + xq * g_qq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) >= threshold {
        return Err(Error::Numerical("Jacobi sweeps did not converge"));
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| {
        a[i][i]
            .re
            .partial_cmp(&a[j][j].re)
            .expect("finite eigenvalue")
    });
    let values = order.map(|k| a[k][k].re);
    let mut vectors = zeros4();
    for (col, &k) in order.iter().enumerate() {
        for row in 0..4 {
            vectors[row][col] = v[row][k];
        }
    }
    Ok(HermitianEigen { values, vectors })
}
