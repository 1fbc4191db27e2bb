//! Seeded random inputs. Every trial draws from its own substream so results
//! do not depend on evaluation order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::operator::TMatrix;
use crate::scalar::Bicomplex;
use crate::tmodule::TVector;

/// Smallest hat-component magnitude accepted by [`nonsingular_scalar`].
pub const MIN_HAT_MAGNITUDE: f64 = 1e-3;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a hash of a label, used to separate the streams of different checks.
pub fn stream_id(label: &str) -> u64 {
    label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01B3))
}

/// Independent generator for trial `index` of stream `stream` under `seed`.
pub fn substream(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let h = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
    ChaCha8Rng::seed_from_u64(h)
}

pub fn uniform_scalar<R: Rng>(rng: &mut R) -> Bicomplex {
    Bicomplex::new(
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
    )
}

pub fn uniform_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

/// Uniform scalar conditioned on both hat-components having magnitude at
/// least [`MIN_HAT_MAGNITUDE`].
pub fn nonsingular_scalar<R: Rng>(rng: &mut R) -> Bicomplex {
    loop {
        let w = uniform_scalar(rng);
        let h = w.to_idempotent();
        if h.h1.norm() >= MIN_HAT_MAGNITUDE && h.h2.norm() >= MIN_HAT_MAGNITUDE {
            return w;
        }
    }
}

/// A random element `z·e₁` or `z·e₂` of the null cone.
pub fn null_cone_scalar<R: Rng>(rng: &mut R) -> Bicomplex {
    let z = Bicomplex::from_complex(uniform_complex(rng));
    if rng.random_bool(0.5) {
        z * Bicomplex::E1
    } else {
        z * Bicomplex::E2
    }
}

pub fn uniform_vector<R: Rng>(rng: &mut R, n: usize) -> TVector {
    TVector::new((0..n).map(|_| uniform_scalar(rng)).collect()).expect("n >= 1")
}

/// Uniform point on the unit sphere of the `4n` real coordinates.
pub fn unit_vector<R: Rng>(rng: &mut R, n: usize) -> TVector {
    loop {
        let g: Vec<f64> = (0..4 * n).map(|_| rng.sample(StandardNormal)).collect();
        let len = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len > 1e-300 {
            let unit: Vec<f64> = g.iter().map(|v| v / len).collect();
            return TVector::from_real(&unit).expect("finite");
        }
    }
}

pub fn uniform_matrix<R: Rng>(rng: &mut R, m: usize, n: usize) -> TMatrix {
    TMatrix::from_fn(m, n, |_, _| uniform_scalar(rng))
}

/// Square matrix whose two hat-components both have condition number at
/// most `max_cond`.
pub fn well_conditioned_matrix<R: Rng>(rng: &mut R, n: usize, max_cond: f64) -> TMatrix {
    loop {
        let t = uniform_matrix(rng, n, n);
        let p = t.split();
        if crate::linalg::condition_number(&p.m1) <= max_cond && crate::linalg::condition_number(&p.m2) <= max_cond {
            return t;
        }
    }
}

pub fn dim_in<R: Rng>(rng: &mut R, dims: (usize, usize)) -> usize {
    rng.random_range(dims.0..=dims.1)
}
