#![allow(dead_code, clippy::needless_range_loop)]

use esd_core::linalg::{self, CMat4};
use esd_core::{DensityMatrix, LocalUnitary64, Unitary2, XState64};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Valid X state with one coherence slot (`corner` picks which) drawn with
/// random occupations and coherence anywhere inside the positivity bound.
pub fn random_xstate(rng: &mut impl Rng, corner: bool) -> XState64 {
    let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(1e-3..1.0));
    let k = 3.0 / w.iter().sum::<f64>();
    let (a, b, c) = (w[0] * k, w[1] * k, w[2] * k);
    let d = 3.0 - a - b - c;
    let frac: f64 = rng.gen_range(-1.0..1.0);
    if corner {
        XState64::new(a, b, c, d, 0.0, frac * (a * d).sqrt()).unwrap()
    } else {
        XState64::new(a, b, c, d, frac * (b * c).sqrt(), 0.0).unwrap()
    }
}

/// `p · GG†/tr + (1 − p) · 1/4` with random complex `G` and `p`; mixes
/// separable and entangled states.
pub fn random_density(rng: &mut impl Rng) -> DensityMatrix {
    let mut g: CMat4<f64> = linalg::zeros4();
    for z in g.iter_mut().flatten() {
        *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    let mut m = linalg::mul4(&g, &linalg::adjoint4(&g));
    let tr = linalg::trace4(&m).re;
    let p: f64 = rng.gen_range(0.0..1.0);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z *= p / tr;
            if i == j {
                *z += Complex64::new((1.0 - p) / 4.0, 0.0);
            }
        }
    }
    hermitize(&mut m);
    DensityMatrix::new(m).unwrap()
}

pub fn random_pure(rng: &mut impl Rng) -> ([Complex64; 4], DensityMatrix) {
    let mut v: [Complex64; 4] =
        std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= n);
    let mut m = linalg::zeros4();
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = v[i] * v[j].conj();
        }
    }
    hermitize(&mut m);
    (v, DensityMatrix::new(m).unwrap())
}

pub fn random_unitary(rng: &mut impl Rng) -> Unitary2<f64> {
    let mut ang = || rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    Unitary2::from_angles(ang(), ang(), ang(), ang())
}

pub fn random_local(rng: &mut impl Rng) -> LocalUnitary64 {
    LocalUnitary64::General {
        alice: random_unitary(rng),
        bob: random_unitary(rng),
    }
}

fn hermitize(m: &mut CMat4<f64>) {
    for i in 0..4 {
        m[i][i] = Complex64::new(m[i][i].re, 0.0);
        for j in (i + 1)..4 {
            m[j][i] = m[i][j].conj();
        }
    }
}

pub fn t0() -> f64 {
    (1.0 + 1.0 / 2f64.sqrt()).ln()
}
