//! The individual suites. Every `measure` is a pure function of its witness,
//! so a serialized witness replays to the same score. Witnesses that would be
//! bulky store an inner seed and regenerate their data from it.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Check, CheckConfig, DynCheck};
use crate::dual::{self, SubmoduleFunctional, TFunctional};
use crate::linalg::{self, CVector};
use crate::operator::{self, TMatrix};
use crate::sampling::{self, dim_in, null_cone_scalar, uniform_matrix, uniform_scalar, uniform_vector, unit_vector};
use crate::scalar::{Bicomplex, DEFAULT_SINGULAR_TOL};
use crate::tmodule::{self, IdempotentVectorPair, Submodule, TVector};

pub const CHECK_IDS: [&str; 18] = [
    "ring-axioms",
    "submult",
    "norm-identity",
    "scalar-homogeneity",
    "translation-invariance",
    "homeomorphism-Ta",
    "homeomorphism-Mlambda",
    "ubp",
    "continuity-bounded",
    "limit-operator",
    "bxy-complete",
    "open-mapping",
    "closed-graph",
    "two-metric",
    "total-family",
    "hahn-banach",
    "norm-sandwich",
    "compose-norm",
];

static REGISTRY: [&dyn DynCheck; 18] = [
    &RingAxioms,
    &Submult,
    &NormIdentity,
    &ScalarHomogeneity,
    &TranslationInvariance,
    &HomeomorphismTa,
    &HomeomorphismMlambda,
    &Ubp,
    &ContinuityBounded,
    &LimitOperator,
    &BxyComplete,
    &OpenMapping,
    &ClosedGraph,
    &TwoMetric,
    &TotalFamily,
    &HahnBanach,
    &NormSandwich,
    &ComposeNorm,
];

pub(super) fn registry() -> &'static [&'static dyn DynCheck] {
    &REGISTRY
}

fn inner_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform scalar, or a null-cone element with probability `p`.
fn mixed_scalar<R: Rng>(rng: &mut R, p: f64) -> Bicomplex {
    if rng.random_bool(p) {
        null_cone_scalar(rng)
    } else {
        uniform_scalar(rng)
    }
}

fn idempotent<R: Rng>(rng: &mut R) -> Bicomplex {
    if rng.random_bool(0.5) {
        Bicomplex::E1
    } else {
        Bicomplex::E2
    }
}

fn sub(x: &TVector, y: &TVector) -> TVector {
    x.checked_sub(y).expect("same dimension")
}

fn add(x: &TVector, y: &TVector) -> TVector {
    x.checked_add(y).expect("same dimension")
}

fn apply(t: &TMatrix, x: &TVector) -> TVector {
    t.apply(x).expect("matching dimension")
}

fn rho(x: &TVector, y: &TVector) -> f64 {
    tmodule::fmetric(x, y).expect("same dimension")
}

// ring-axioms

pub(super) struct RingAxioms;

#[derive(Serialize, Deserialize)]
pub(super) struct ScalarTriple {
    s: Bicomplex,
    t: Bicomplex,
    u: Bicomplex,
}

impl Check for RingAxioms {
    type Witness = ScalarTriple;

    fn id(&self) -> &'static str {
        "ring-axioms"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, _: &CheckConfig, _: u64) -> ScalarTriple {
        ScalarTriple {
            s: mixed_scalar(rng, 0.25),
            t: mixed_scalar(rng, 0.25),
            u: mixed_scalar(rng, 0.25),
        }
    }

    /// Largest coefficient error over the ring laws and the idempotent
    /// identities.
    fn measure(&self, w: &ScalarTriple, _: &CheckConfig) -> f64 {
        use Bicomplex as B;
        let (s, t, u) = (w.s, w.t, w.u);
        let hat = |x: B| x.to_idempotent();
        [
            ((s * t) * u, s * (t * u)),
            (s * t, t * s),
            ((s + t) + u, s + (t + u)),
            (s + t, t + s),
            (s * (t + u), s * t + s * u),
            (s * B::ONE, s),
            (s + B::ZERO, s),
            (s + (-s), B::ZERO),
            ((hat(s) * hat(t)).to_bicomplex(), s * t),
            (hat(s).to_bicomplex(), s),
            (B::E1 + B::E2, B::ONE),
            (B::E1 * B::E2, B::ZERO),
            (B::E1 * B::E1, B::E1),
            (B::E2 * B::E2, B::E2),
            (B::E1 - B::E2, B::J),
            (B::I1 * B::I1, -B::ONE),
            (B::I2 * B::I2, -B::ONE),
            (B::J * B::J, B::ONE),
            (B::I1 * B::I2, B::J),
        ]
        .iter()
        .map(|(x, y)| x.max_coeff_diff(y))
        .fold(0.0, f64::max)
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-13
    }
}

// submult

pub(super) struct Submult;

#[derive(Serialize, Deserialize)]
pub(super) struct ScalarPair {
    s: Bicomplex,
    t: Bicomplex,
}

impl Check for Submult {
    type Witness = ScalarPair;

    fn id(&self) -> &'static str {
        "submult"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, _: &CheckConfig, _: u64) -> ScalarPair {
        match rng.random_range(0..4) {
            // both in the same ideal, where the ratio is exactly √2
            0 => {
                let e = idempotent(rng);
                ScalarPair {
                    s: Bicomplex::from_complex(sampling::uniform_complex(rng)) * e,
                    t: Bicomplex::from_complex(sampling::uniform_complex(rng)) * e,
                }
            }
            1 => ScalarPair {
                s: null_cone_scalar(rng),
                t: uniform_scalar(rng),
            },
            _ => ScalarPair {
                s: uniform_scalar(rng),
                t: uniform_scalar(rng),
            },
        }
    }

    /// `|st| / (|s||t|)`
    fn measure(&self, w: &ScalarPair, _: &CheckConfig) -> f64 {
        let den = w.s.norm() * w.t.norm();
        if den == 0.0 {
            0.0
        } else {
            (w.s * w.t).norm() / den
        }
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        SQRT_2 + 1e-12
    }
}

// norm-identity

pub(super) struct NormIdentity;

#[derive(Serialize, Deserialize)]
pub(super) struct OneScalar {
    w: Bicomplex,
}

impl Check for NormIdentity {
    type Witness = OneScalar;

    fn id(&self) -> &'static str {
        "norm-identity"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, _: &CheckConfig, _: u64) -> OneScalar {
        let scale = 10f64.powf(rng.random_range(-6.0..6.0));
        OneScalar {
            w: mixed_scalar(rng, 0.2).scale(scale),
        }
    }

    /// `|norm - norm_idem| / (1 + norm)`
    fn measure(&self, w: &OneScalar, _: &CheckConfig) -> f64 {
        let n = w.w.norm();
        (n - w.w.to_idempotent().norm()).abs() / (1.0 + n)
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-12
    }
}

// scalar-homogeneity

pub(super) struct ScalarHomogeneity;

#[derive(Serialize, Deserialize)]
pub(super) struct Homogeneity {
    alpha: Bicomplex,
    beta: Bicomplex,
    x: TVector,
}

impl Check for ScalarHomogeneity {
    type Witness = Homogeneity;

    fn id(&self) -> &'static str {
        "scalar-homogeneity"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> Homogeneity {
        let n = dim_in(rng, cfg.dims);
        let alpha = Bicomplex::from_complex(sampling::uniform_complex(rng));
        if rng.random_bool(1.0 / 3.0) {
            // β and x in the same ideal attain the √2 bound
            let e = idempotent(rng);
            Homogeneity {
                alpha,
                beta: Bicomplex::from_complex(sampling::uniform_complex(rng)) * e,
                x: uniform_vector(rng, n).scale(e),
            }
        } else {
            Homogeneity {
                alpha,
                beta: mixed_scalar(rng, 0.3),
                x: uniform_vector(rng, n),
            }
        }
    }

    /// Relative error of `‖αx‖ = |α|‖x‖` for complex `α`, and relative excess
    /// of `‖βx‖` over `√2|β|‖x‖` for bicomplex `β`.
    fn measure(&self, w: &Homogeneity, _: &CheckConfig) -> f64 {
        let nx = w.x.norm();
        let a = w.alpha.norm() * nx;
        let eq = (w.x.scale(w.alpha).norm() - a).abs() / (1.0 + a);
        let b = SQRT_2 * w.beta.norm() * nx;
        let le = (w.x.scale(w.beta).norm() - b) / (1.0 + b);
        eq.max(le)
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-12
    }
}

// translation-invariance

pub(super) struct TranslationInvariance;

#[derive(Serialize, Deserialize)]
pub(super) struct Translation {
    x: TVector,
    y: TVector,
    a: TVector,
}

fn sample_translation(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Translation {
    let n = dim_in(rng, cfg.dims);
    let big = 10f64.powf(rng.random_range(0.0..4.0));
    Translation {
        x: uniform_vector(rng, n),
        y: uniform_vector(rng, n),
        a: uniform_vector(rng, n).scale_real(big),
    }
}

impl Check for TranslationInvariance {
    type Witness = Translation;

    fn id(&self) -> &'static str {
        "translation-invariance"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> Translation {
        sample_translation(rng, cfg)
    }

    /// `ρ(x+a, y+a) = ρ(x, y)`, `ρ(x-y, 0) = ρ(x, y)` and `|x| = ρ(x, 0)`,
    /// errors relative to `1 + ‖a‖`.
    fn measure(&self, w: &Translation, _: &CheckConfig) -> f64 {
        let zero = TVector::zeros(w.x.dim());
        let r = rho(&w.x, &w.y);
        let shifted = rho(&add(&w.x, &w.a), &add(&w.y, &w.a));
        let scale = 1.0 + w.a.norm();
        let fnorm = tmodule::FMetricPoint::new(w.x.clone()).fnorm;
        [
            (shifted - r).abs() / scale,
            (rho(&sub(&w.x, &w.y), &zero) - r).abs(),
            (fnorm - rho(&w.x, &zero)).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-12
    }
}

// homeomorphism-Ta

pub(super) struct HomeomorphismTa;

impl Check for HomeomorphismTa {
    type Witness = Translation;

    fn id(&self) -> &'static str {
        "homeomorphism-Ta"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> Translation {
        sample_translation(rng, cfg)
    }

    /// `T_a` is an isometry with inverse `T_{-a}`: distortion of `ρ` and the
    /// round-trip error `‖T_{-a}T_a x - x‖`, both relative to `1 + ‖a‖`.
    fn measure(&self, w: &Translation, _: &CheckConfig) -> f64 {
        let ta = |v: &TVector| add(v, &w.a);
        let scale = 1.0 + w.a.norm();
        let iso = (rho(&ta(&w.x), &ta(&w.y)) - rho(&w.x, &w.y)).abs() / scale;
        let back = add(&ta(&w.x), &w.a.neg());
        let round = rho(&back, &w.x) / scale;
        // the graph of T_a is the set of pairs at product distance
        // 2ρ(x, y) exactly
        let graph = (tmodule::product_metric((&w.x, &ta(&w.x)), (&w.y, &ta(&w.y))).expect("same dimension")
            - 2.0 * rho(&w.x, &w.y))
        .abs()
            / scale;
        iso.max(round).max(graph)
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-12
    }
}

// homeomorphism-Mlambda

pub(super) struct HomeomorphismMlambda;

#[derive(Serialize, Deserialize)]
pub(super) struct Multiplier {
    lambda: Bicomplex,
    x: TVector,
    y: TVector,
}

impl Check for HomeomorphismMlambda {
    type Witness = Multiplier;

    fn id(&self) -> &'static str {
        "homeomorphism-Mlambda"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> Multiplier {
        let n = dim_in(rng, cfg.dims);
        let lambda = if rng.random_bool(0.25) {
            null_cone_scalar(rng)
        } else {
            sampling::nonsingular_scalar(rng)
        };
        Multiplier {
            lambda,
            x: uniform_vector(rng, n),
            y: uniform_vector(rng, n),
        }
    }

    /// Nonsingular `λ`: `‖λ⁻¹(λx) - x‖ / (κ(λ)(1 + ‖x‖))` and the Lipschitz
    /// excess of `M_λ`. Singular `λ`: the collapsed component of `λx`
    /// relative to `1 + ‖x‖`, infinite unless `M_λ` also refuses inversion.
    fn measure(&self, w: &Multiplier, cfg: &CheckConfig) -> f64 {
        let n = w.x.dim();
        let lx = w.x.scale(w.lambda);
        if w.lambda.classify(DEFAULT_SINGULAR_TOL).is_singular {
            let refused = matches!(
                TMatrix::scalar(n, w.lambda).invert(cfg.tol),
                Err(crate::Error::SingularOperator { .. })
            );
            if !refused {
                return f64::INFINITY;
            }
            let p = lx.split();
            return linalg::norm(&p.v1).min(linalg::norm(&p.v2)) / (1.0 + w.x.norm());
        }
        let inv = match w.lambda.inverse(DEFAULT_SINGULAR_TOL) {
            Ok(v) => v,
            Err(_) => return f64::INFINITY,
        };
        let round = rho(&lx.scale(inv), &w.x) / (w.lambda.condition() * (1.0 + w.x.norm()));
        let lip = SQRT_2 * w.lambda.norm() * rho(&w.x, &w.y);
        let excess = (rho(&lx, &w.y.scale(w.lambda)) - lip) / (1.0 + lip);
        round.max(excess)
    }

    fn bound(&self, cfg: &CheckConfig) -> f64 {
        cfg.tol
    }
}

// ubp

pub(super) struct Ubp;

#[derive(Serialize, Deserialize)]
pub(super) struct FamilySeed {
    m: usize,
    n: usize,
    size: usize,
    eps: f64,
    inner_seed: u64,
}

const UBP_SAMPLES: usize = 8;

impl Check for Ubp {
    type Witness = FamilySeed;

    fn id(&self) -> &'static str {
        "ubp"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> FamilySeed {
        FamilySeed {
            m: dim_in(rng, cfg.dims),
            n: dim_in(rng, cfg.dims),
            size: rng.random_range(1..=5),
            eps: 10f64.powf(-rng.random_range(0.0..6.0)),
            inner_seed: rng.random(),
        }
    }

    /// `max_a ‖T_a x‖ / (√2·sup_a sup_norm(T_a)·‖x‖)` over sampled `x` of
    /// norm `eps`; the family is regenerated from the inner seed. Each
    /// member's top singular direction is among the samples.
    fn measure(&self, w: &FamilySeed, _: &CheckConfig) -> f64 {
        let mut rng = inner_rng(w.inner_seed);
        let family: Vec<TMatrix> = (0..w.size)
            .map(|i| {
                let t = uniform_matrix(&mut rng, w.m, w.n);
                // every other member lives in one ideal
                if i % 2 == 1 { t.scale(idempotent(&mut rng)) } else { t }
            })
            .collect();
        let s = family.iter().map(|t| t.norms().sup_norm).fold(0.0, f64::max);
        if !s.is_finite() {
            return f64::INFINITY;
        }
        let mut xs: Vec<TVector> = (0..UBP_SAMPLES).map(|_| unit_vector(&mut rng, w.n)).collect();
        xs.extend(family.iter().map(top_right_singular_vector));
        let mut worst: f64 = 0.0;
        for x in &xs {
            let x = x.scale_real(w.eps);
            let nx = x.norm();
            if nx == 0.0 || s == 0.0 {
                continue;
            }
            for t in &family {
                worst = worst.max(apply(t, &x).norm() / (SQRT_2 * s * nx));
            }
        }
        worst
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1.0 + 1e-12
    }
}

/// Unit vector achieving `‖Tx‖ = √2·sup_norm(T)`: the top right singular
/// vector of the dominant hat-component, placed in that component alone.
fn top_right_singular_vector(t: &TMatrix) -> TVector {
    let p = t.split();
    let (s1, s2) = (linalg::largest_singular_value(&p.m1), linalg::largest_singular_value(&p.m2));
    let k = if s1 >= s2 { 1 } else { 2 };
    let svd = p.component(k).clone().svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let i = svd.singular_values.imax();
    let v: CVector = v_t.row(i).transpose().map(|z| z.conj()) * Complex64::new(SQRT_2, 0.0);
    component_vector(k, v)
}

/// The vector whose `k`-th split component is `v` and whose other
/// component vanishes.
fn component_vector(k: usize, v: CVector) -> TVector {
    let zero = CVector::zeros(v.len());
    let pair = if k == 1 {
        IdempotentVectorPair::new(v, zero)
    } else {
        IdempotentVectorPair::new(zero, v)
    };
    pair.and_then(|p| p.merge()).expect("finite")
}

// continuity-bounded

pub(super) struct ContinuityBounded;

#[derive(Serialize, Deserialize)]
pub(super) struct OneMatrix {
    t: TMatrix,
}

fn sample_matrix(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> TMatrix {
    let (m, n) = (dim_in(rng, cfg.dims), dim_in(rng, cfg.dims));
    let t = uniform_matrix(rng, m, n);
    match rng.random_range(0..4) {
        // complex-valued: equal hat-components
        0 => {
            let z: Vec<Complex64> = (0..m * n).map(|_| sampling::uniform_complex(rng)).collect();
            operator::complex_matrix(m, n, &z).expect("sizes agree")
        }
        // one ideal: a vanishing hat-component
        1 => t.scale(idempotent(rng)),
        _ => t,
    }
}

/// Largest singular value of the real `4m × 4n` representation, through
/// the symmetric eigenproblem of `RᵀR`.
pub(crate) fn real_operator_norm(t: &TMatrix) -> f64 {
    let r = t.to_real_matrix();
    let g = r.transpose() * &r;
    g.symmetric_eigenvalues().max().max(0.0).sqrt()
}

impl Check for ContinuityBounded {
    type Witness = OneMatrix;

    fn id(&self) -> &'static str {
        "continuity-bounded"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> OneMatrix {
        OneMatrix { t: sample_matrix(rng, cfg) }
    }

    /// Relative gap between the unit-ball image sup, computed on the real
    /// representation, and `√2·bound_constant`.
    fn measure(&self, w: &OneMatrix, _: &CheckConfig) -> f64 {
        let image_sup = real_operator_norm(&w.t);
        let claimed = SQRT_2 * w.t.bound_constant();
        (image_sup - claimed).abs() / (1.0 + claimed)
    }

    fn bound(&self, cfg: &CheckConfig) -> f64 {
        cfg.tol
    }
}

// limit-operator

pub(super) struct LimitOperator;

#[derive(Serialize, Deserialize)]
pub(super) struct Perturbed {
    t: TMatrix,
    e: TMatrix,
}

const LIMIT_STEPS: usize = 32;

impl Check for LimitOperator {
    type Witness = Perturbed;

    fn id(&self) -> &'static str {
        "limit-operator"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> Perturbed {
        let t = sample_matrix(rng, cfg);
        let scale = 10f64.powf(rng.random_range(-1.0..1.0));
        let e = uniform_matrix(rng, t.rows(), t.cols()).scale_real(scale);
        Perturbed { t, e }
    }

    /// `sup_norm(T) - √2·liminf sup_norm(T_n)` with `T_n = T + E/n`; the
    /// liminf is estimated by the minimum over the second half of the run.
    fn measure(&self, w: &Perturbed, _: &CheckConfig) -> f64 {
        let liminf = (LIMIT_STEPS / 2..=LIMIT_STEPS)
            .map(|k| {
                let tn = w.t.checked_add(&w.e.scale_real(1.0 / k as f64)).expect("same shape");
                tn.norms().sup_norm
            })
            .fold(f64::INFINITY, f64::min);
        w.t.norms().sup_norm - SQRT_2 * liminf
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-10
    }
}

// bxy-complete

pub(super) struct BxyComplete;

#[derive(Serialize, Deserialize)]
pub(super) struct SeriesSeed {
    m: usize,
    n: usize,
    inner_seed: u64,
}

const SERIES_TERMS: usize = 40;

impl Check for BxyComplete {
    type Witness = SeriesSeed;

    fn id(&self) -> &'static str {
        "bxy-complete"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> SeriesSeed {
        SeriesSeed {
            m: dim_in(rng, cfg.dims),
            n: dim_in(rng, cfg.dims),
            inner_seed: rng.random(),
        }
    }

    /// The partial sums `T_n = Σ_{k≤n} 2⁻ᵏE_k` are Cauchy in `idem_norm`.
    /// With `T` the last partial sum, scores the largest excess of
    /// `‖T - T_n‖` over the tail bound `Σ_{k>n} 2⁻ᵏ‖E_k‖` (which tends to
    /// zero), relative to `1 + ‖T‖`.
    fn measure(&self, w: &SeriesSeed, _: &CheckConfig) -> f64 {
        let mut rng = inner_rng(w.inner_seed);
        let mut partial = Vec::with_capacity(SERIES_TERMS);
        let mut norms = Vec::with_capacity(SERIES_TERMS);
        let mut acc = TMatrix::zeros(w.m, w.n);
        for k in 0..SERIES_TERMS {
            let e = uniform_matrix(&mut rng, w.m, w.n);
            let e = if rng.random_bool(0.25) { e.scale(idempotent(&mut rng)) } else { e };
            let term = e.scale_real(0.5f64.powi(k as i32));
            norms.push(term.norms().idem_norm);
            acc = acc.checked_add(&term).expect("same shape");
            partial.push(acc.clone());
        }
        let limit = partial.last().expect("nonempty");
        let scale = 1.0 + limit.norms().idem_norm;
        let mut worst = f64::NEG_INFINITY;
        for (i, tn) in partial.iter().enumerate() {
            let gap = limit.checked_sub(tn).expect("same shape").norms().idem_norm;
            let tail: f64 = norms[i + 1..].iter().sum();
            worst = worst.max((gap - tail) / scale);
        }
        worst
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-12
    }
}

// open-mapping

pub(super) struct OpenMapping;

#[derive(Serialize, Deserialize)]
pub(super) struct Bijection {
    t: TMatrix,
    inner_seed: u64,
}

const OPEN_SAMPLES: usize = 16;

impl Check for OpenMapping {
    type Witness = Bijection;

    fn id(&self) -> &'static str {
        "open-mapping"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> Bijection {
        let n = dim_in(rng, cfg.dims);
        Bijection {
            t: sampling::well_conditioned_matrix(rng, n, 1e4),
            inner_seed: rng.random(),
        }
    }

    /// Points `y` on the sphere of radius `r = interior_radius(T)` have
    /// preimages in the closed unit ball. Scores `max ‖T⁻¹y‖` (infinite if a
    /// solve residual exceeds `tol·r`); the sampled points include the
    /// direction where the radius is tight.
    fn measure(&self, w: &Bijection, cfg: &CheckConfig) -> f64 {
        let n = w.t.cols();
        let r = w.t.interior_radius();
        if r <= 0.0 {
            return f64::INFINITY;
        }
        let mut rng = inner_rng(w.inner_seed);
        let mut ys: Vec<TVector> = (0..OPEN_SAMPLES).map(|_| unit_vector(&mut rng, n)).collect();
        ys.push(bottom_left_singular_vector(&w.t));
        let mut worst: f64 = 0.0;
        for y in ys {
            let y = y.scale_real(r);
            let x = match w.t.solve(&y, DEFAULT_SINGULAR_TOL) {
                Ok(x) => x,
                Err(_) => return f64::INFINITY,
            };
            if rho(&apply(&w.t, &x), &y) > cfg.tol * r {
                return f64::INFINITY;
            }
            worst = worst.max(x.norm());
        }
        worst
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1.0 + 1e-9
    }
}

/// Unit vector in the image direction where `T` is weakest: the left
/// singular vector of the smallest singular value of the weaker component.
fn bottom_left_singular_vector(t: &TMatrix) -> TVector {
    let p = t.split();
    let (s1, s2) = (linalg::smallest_singular_value(&p.m1), linalg::smallest_singular_value(&p.m2));
    let k = if s1 <= s2 { 1 } else { 2 };
    let svd = p.component(k).clone().svd(true, false);
    let u = svd.u.expect("requested");
    let i = svd.singular_values.imin();
    component_vector(k, u.column(i).into_owned() * Complex64::new(SQRT_2, 0.0))
}

// closed-graph

pub(super) struct ClosedGraph;

#[derive(Serialize, Deserialize)]
pub(super) struct Approach {
    t: TMatrix,
    x: TVector,
    delta: TVector,
}

const GRAPH_STEPS: i32 = 60;

impl Check for ClosedGraph {
    type Witness = Approach;

    fn id(&self) -> &'static str {
        "closed-graph"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> Approach {
        let t = sample_matrix(rng, cfg);
        let n = t.cols();
        Approach {
            t,
            x: uniform_vector(rng, n),
            delta: uniform_vector(rng, n),
        }
    }

    /// With `x_k = x + 2⁻ᵏδ` and `y` the limit of `T x_k`, scores
    /// `‖y - Tx‖` and the final product-metric distance from `(x_k, Tx_k)`
    /// to `(x, y)`, relative to `1 + ‖Tx‖`.
    fn measure(&self, w: &Approach, _: &CheckConfig) -> f64 {
        let xk = |k: i32| add(&w.x, &w.delta.scale_real(0.5f64.powi(k)));
        let y = apply(&w.t, &xk(GRAPH_STEPS));
        let tx = apply(&w.t, &w.x);
        let scale = 1.0 + tx.norm();
        let last = xk(GRAPH_STEPS - 1);
        let graph_gap = tmodule::product_metric((&last, &apply(&w.t, &last)), (&w.x, &y)).expect("same dimension");
        (rho(&y, &tx) / scale).max(graph_gap / scale)
    }

    fn bound(&self, cfg: &CheckConfig) -> f64 {
        cfg.tol
    }
}

// two-metric

pub(super) struct TwoMetric;

#[derive(Serialize, Deserialize)]
pub(super) struct MetricPair {
    a: TMatrix,
    x: TVector,
    inner_seed: u64,
}

const METRIC_STEPS: i32 = 40;

impl Check for TwoMetric {
    type Witness = MetricPair;

    fn id(&self) -> &'static str {
        "two-metric"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> MetricPair {
        let n = dim_in(rng, cfg.dims);
        MetricPair {
            a: sampling::well_conditioned_matrix(rng, n, 1e4),
            x: uniform_vector(rng, n),
            inner_seed: rng.random(),
        }
    }

    /// Second metric `ρ₂(u, v) = ‖A(u - v)‖` against `ρ₁ = ρ`, with
    /// comparison constants `c₂ = √2·sup_norm(A)` and `c₁ = √2·sup_norm(A⁻¹)`.
    /// Along `x_k = x + 2⁻ᵏδ_k` scores the larger of `ρ₂/(c₂ρ₁)` and
    /// `ρ₁/(c₁ρ₂)`; both at most 1 means the two convergences coincide.
    fn measure(&self, w: &MetricPair, _: &CheckConfig) -> f64 {
        let inv = match w.a.invert(DEFAULT_SINGULAR_TOL) {
            Ok(v) => v,
            Err(_) => return f64::INFINITY,
        };
        let c2 = SQRT_2 * w.a.norms().sup_norm;
        let c1 = SQRT_2 * inv.norms().sup_norm;
        let mut rng = inner_rng(w.inner_seed);
        let mut worst: f64 = 0.0;
        for k in 0..METRIC_STEPS {
            let d = unit_vector(&mut rng, w.x.dim()).scale_real(0.5f64.powi(k));
            let xk = add(&w.x, &d);
            let r1 = rho(&xk, &w.x);
            let r2 = apply(&w.a, &sub(&xk, &w.x)).norm();
            if r1 == 0.0 || r2 == 0.0 {
                return f64::INFINITY;
            }
            worst = worst.max(r2 / (c2 * r1)).max(r1 / (c1 * r2));
        }
        worst
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1.0 + 1e-9
    }
}

// total-family

pub(super) struct TotalFamily;

#[derive(Serialize, Deserialize)]
pub(super) struct Family {
    family: Vec<TFunctional>,
    x: TVector,
    /// Built to miss one ideal, so it must be reported as not total.
    degenerate: bool,
}

impl Check for TotalFamily {
    type Witness = Family;

    fn id(&self) -> &'static str {
        "total-family"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> Family {
        let n = dim_in(rng, cfg.dims);
        let x = uniform_vector(rng, n);
        match rng.random_range(0..3) {
            0 => Family {
                family: (0..n).map(|k| TFunctional::coordinate(n, k)).collect(),
                x,
                degenerate: false,
            },
            1 => {
                let size = n + rng.random_range(0..=2);
                Family {
                    family: (0..size).map(|_| TFunctional::new(uniform_vector(rng, n))).collect(),
                    x,
                    degenerate: false,
                }
            }
            _ => {
                let size = n + rng.random_range(0..=2);
                let e = idempotent(rng);
                Family {
                    family: (0..size).map(|_| TFunctional::new(uniform_vector(rng, n).scale(e))).collect(),
                    x,
                    degenerate: true,
                }
            }
        }
    }

    /// A total family has stacked hat-components with smallest singular
    /// value `σ > tol·σ_max`, and then `‖Fx‖ ≥ σ‖x‖`; scores `σ‖x‖/‖Fx‖`.
    /// A degenerate family scores 0 if the test reports it as not total and
    /// a nonzero common zero is exhibited, and infinity otherwise.
    fn measure(&self, w: &Family, cfg: &CheckConfig) -> f64 {
        let n = w.x.dim();
        let rows: Vec<Bicomplex> = w.family.iter().flat_map(|f| f.coeffs().entries().to_vec()).collect();
        let f = TMatrix::new(w.family.len(), n, rows).expect("consistent shape");
        let p = f.split();
        let s = [linalg::singular_values(&p.m1), linalg::singular_values(&p.m2)];
        let smax = s.iter().map(|v| v[0]).fold(0.0, f64::max);
        let smin = s.iter().map(|v| v[v.len() - 1]).fold(f64::INFINITY, f64::min);
        let total = w.family.len() >= n && smin > cfg.tol * smax;
        if w.degenerate {
            if total {
                return f64::INFINITY;
            }
            let weak = if s[0][s[0].len() - 1] <= s[1][s[1].len() - 1] { 1 } else { 2 };
            let svd = p.component(weak).clone().svd(false, true);
            let v_t = svd.v_t.expect("requested");
            let i = svd.singular_values.imin();
            let z = component_vector(weak, v_t.row(i).transpose().map(|c| c.conj()));
            let worst = w.family.iter().map(|g| g.eval(&z).expect("same dimension").norm()).fold(0.0, f64::max);
            return if worst <= cfg.tol * z.norm() * smax.max(1.0) {
                0.0
            } else {
                f64::INFINITY
            };
        }
        if !total {
            return f64::INFINITY;
        }
        let fx = apply(&f, &w.x).norm();
        smin * w.x.norm() / fx
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1.0 + 1e-12
    }
}

// hahn-banach

pub(super) struct HahnBanach;

#[derive(Serialize, Deserialize)]
pub(super) struct ExtensionSeed {
    n: usize,
    inner_seed: u64,
}

/// A random submodule (some generators confined to one ideal) and a random
/// ambient functional whose restriction is to be extended.
pub(crate) fn extension_instance(n: usize, rng: &mut ChaCha8Rng) -> (Submodule, TFunctional) {
    let r = rng.random_range(1..=n);
    let gens = (0..r)
        .map(|_| {
            let g = uniform_vector(rng, n);
            if rng.random_bool(1.0 / 3.0) { g.scale(idempotent(rng)) } else { g }
        })
        .collect();
    let y = Submodule::new(n, gens).expect("generators have dimension n");
    (y, TFunctional::new(uniform_vector(rng, n)))
}

impl Check for HahnBanach {
    type Witness = ExtensionSeed;

    fn id(&self) -> &'static str {
        "hahn-banach"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> ExtensionSeed {
        ExtensionSeed {
            n: dim_in(rng, cfg.dims),
            inner_seed: rng.random(),
        }
    }

    /// Extends `g|_Y` given only by its generator values and scores the
    /// restriction error (on generators and on random points of `Y`), the
    /// gap between the component norms of the extension and of the
    /// restriction (computed independently as `‖Q_kᵀg_k‖`), and the
    /// agreement of the real-part route with the direct one.
    fn measure(&self, w: &ExtensionSeed, _: &CheckConfig) -> f64 {
        let mut rng = inner_rng(w.inner_seed);
        let (y, g) = extension_instance(w.n, &mut rng);
        let values = y
            .generators()
            .iter()
            .map(|v| g.eval(v).expect("same dimension"))
            .collect();
        let report = match dual::hahn_banach_extend(&SubmoduleFunctional::Values { values }, &y) {
            Ok(r) => r,
            Err(_) => return f64::INFINITY,
        };
        let x = &report.extension;
        let mut worst = report.restriction_error;
        for _ in 0..8 {
            let p = y
                .generators()
                .iter()
                .fold(TVector::zeros(w.n), |acc, v| add(&acc, &v.scale(uniform_scalar(&mut rng))));
            let gp = g.eval(&p).expect("same dimension");
            worst = worst.max((x.eval(&p).expect("same dimension") - gp).norm() / (1.0 + gp.norm()));
        }
        let gc = g.components();
        for k in 1..=2 {
            let restricted = linalg::norm(&(y.basis(k).transpose() * gc.component(k)));
            worst = worst.max((report.extension_component_norms[k - 1] - restricted).abs());
            worst = worst.max((report.restricted_component_norms[k - 1] - restricted).abs());
        }
        let [re, ..] = g.real_parts();
        if let Ok(f1) = dual::extend_real(&re, &y) {
            worst = worst.max(dual::lift_real(&f1).max_coeff_diff(x));
        } else {
            return f64::INFINITY;
        }
        worst
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-10
    }
}

// norm-sandwich

pub(super) struct NormSandwich;

impl Check for NormSandwich {
    type Witness = OneMatrix;

    fn id(&self) -> &'static str {
        "norm-sandwich"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> OneMatrix {
        OneMatrix { t: sample_matrix(rng, cfg) }
    }

    /// `max(sup - idem, idem - √2·sup)`
    fn measure(&self, w: &OneMatrix, _: &CheckConfig) -> f64 {
        let r = w.t.norms();
        (r.sup_norm - r.idem_norm).max(r.idem_norm - SQRT_2 * r.sup_norm)
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-10
    }
}

// compose-norm

pub(super) struct ComposeNorm;

#[derive(Serialize, Deserialize)]
pub(super) struct Composition {
    a: TMatrix,
    b: TMatrix,
}

impl Check for ComposeNorm {
    type Witness = Composition;

    fn id(&self) -> &'static str {
        "compose-norm"
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, _: u64) -> Composition {
        let (m, k, n) = (dim_in(rng, cfg.dims), dim_in(rng, cfg.dims), dim_in(rng, cfg.dims));
        let a = uniform_matrix(rng, m, k);
        let b = uniform_matrix(rng, k, n);
        if rng.random_bool(0.25) {
            // a shared ideal makes the sup-norm bound tight along the top
            // singular directions
            let e = idempotent(rng);
            Composition { a: a.scale(e), b: b.scale(e) }
        } else {
            Composition { a, b }
        }
    }

    /// `‖AB‖ - √2‖A‖‖B‖`, the larger over both norm variants.
    fn measure(&self, w: &Composition, _: &CheckConfig) -> f64 {
        let ab = w.a.compose(&w.b).expect("inner dimensions agree").norms();
        let (a, b) = (w.a.norms(), w.b.norms());
        (ab.sup_norm - SQRT_2 * a.sup_norm * b.sup_norm).max(ab.idem_norm - SQRT_2 * a.idem_norm * b.idem_norm)
    }

    fn bound(&self, _: &CheckConfig) -> f64 {
        1e-10
    }
}
