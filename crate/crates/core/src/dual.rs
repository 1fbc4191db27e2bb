//! Functionals on 𝕋ⁿ and the constructive Hahn-Banach extension.
//!
//! A 𝕋-linear functional is `x ↦ Σ c_k x_k` for a coefficient vector `c`;
//! its hat-components are the complex bilinear forms `v ↦ c_kᵀ v` on the two
//! split coordinates, with norms `‖c₁‖`, `‖c₂‖`.
//!
//! The extension of `y*` from a submodule `Y` is done per hat-component:
//! the restriction of `(y*)_k` to `Y_k` is represented by a Riesz vector in
//! `Y_k` and composed with the orthogonal projection onto `Y_k`. This is the
//! minimal-norm extension, so `‖(x*)_k‖ = ‖(y*)_k‖` for both `k`.
//!
//! The real route is also available: [`TFunctional::real_parts`] splits a
//! functional into four real functionals, [`extend_real`] extends the first
//! one by projection, and [`lift_real`] rebuilds a 𝕋-linear functional from
//! it via `F(x) - ι₁F(ι₁x) - ι₂F(ι₂x) + ι₁ι₂F(ι₁ι₂x)`.

use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::operator::{NormReport, TMatrix};
use crate::sampling;
use crate::scalar::Bicomplex;
use crate::tmodule::{check_dim, IdempotentVectorPair, Submodule, TVector};

/// Relative residual above which generator values are declared inconsistent.
pub const CONSISTENCY_TOL: f64 = 1e-10;

/// Split components with norm at most this fraction of `‖x‖` count as zero.
pub const NULL_COMPONENT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct TFunctional {
    coeffs: TVector,
}

impl TFunctional {
    pub fn new(coeffs: TVector) -> Self {
        TFunctional { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(TVector::zeros(n))
    }

    /// `x ↦ x_k`
    pub fn coordinate(n: usize, k: usize) -> Self {
        Self::new(TVector::unit(n, k))
    }

    /// Functional with hat-component coefficient vectors `c₁`, `c₂`.
    pub fn from_components(c1: CVector, c2: CVector) -> Result<Self> {
        Ok(Self::new(IdempotentVectorPair::new(c1, c2)?.merge()?))
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn coeffs(&self) -> &TVector {
        &self.coeffs
    }

    pub fn eval(&self, x: &TVector) -> Result<Bicomplex> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.coeffs.entries().iter().zip(x.entries()).map(|(&c, &v)| c * v).sum())
    }

    pub fn scale(&self, w: Bicomplex) -> Self {
        Self::new(self.coeffs.scale(w))
    }

    pub fn checked_sub(&self, o: &TFunctional) -> Result<Self> {
        Ok(Self::new(self.coeffs.checked_sub(&o.coeffs)?))
    }

    /// Hat-component coefficient vectors `(c₁, c₂)`.
    pub fn components(&self) -> IdempotentVectorPair {
        self.coeffs.split()
    }

    /// `(‖(x*)₁‖, ‖(x*)₂‖)`
    pub fn component_norms(&self) -> [f64; 2] {
        let p = self.components();
        [linalg::norm(&p.v1), linalg::norm(&p.v2)]
    }

    /// Both operator norms, treating the functional as a `1×n` operator.
    pub fn norms(&self) -> NormReport {
        let [s1, s2] = self.component_norms();
        NormReport::from_singular_values(s1, s2)
    }

    pub fn as_matrix(&self) -> TMatrix {
        TMatrix::new(1, self.dim(), self.coeffs.entries().to_vec()).expect("nonempty row")
    }

    /// `(f₁, f₂, f₃, f₄)` with `f(y) = f₁(y) + ι₁f₂(y) + ι₂f₃(y) + ι₁ι₂f₄(y)`.
    pub fn real_parts(&self) -> [RealLinearFunctional; 4] {
        let n = self.dim();
        let mut parts: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; 4 * n]);
        let mut coords = vec![0.0; 4 * n];
        for col in 0..4 * n {
            coords[col] = 1.0;
            let e = TVector::from_real(&coords).expect("finite basis vector");
            let value = self.eval(&e).expect("matching dimension").coeffs();
            for (part, v) in parts.iter_mut().zip(value) {
                part[col] = v;
            }
            coords[col] = 0.0;
        }
        parts.map(|coeffs| RealLinearFunctional { coeffs })
    }

    pub fn max_coeff_diff(&self, o: &TFunctional) -> f64 {
        self.coeffs.max_coeff_diff(&o.coeffs)
    }
}

/// On-disk functional form `{ "n": …, "coeffs": [[a,b,c,d], …] }`.
#[derive(Serialize, Deserialize)]
struct FunctionalFile {
    n: usize,
    coeffs: TVector,
}

impl Serialize for TFunctional {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FunctionalFile {
            n: self.dim(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TFunctional {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = FunctionalFile::deserialize(d)?;
        check_dim(f.n, f.coeffs.dim()).map_err(serde::de::Error::custom)?;
        Ok(TFunctional::new(f.coeffs))
    }
}

/// An ℝ-linear functional on the `4n` real coordinates of 𝕋ⁿ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealLinearFunctional {
    coeffs: Vec<f64>,
}

impl RealLinearFunctional {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs.len().is_multiple_of(4) {
            return Err(Error::Parse(format!(
                "real functional needs a positive multiple of 4 coefficients, got {}",
                coeffs.len()
            )));
        }
        if !coeffs.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(RealLinearFunctional { coeffs })
    }

    /// Module dimension `n` (the functional has `4n` coefficients).
    pub fn dim(&self) -> usize {
        self.coeffs.len() / 4
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: &TVector) -> Result<f64> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.coeffs.iter().zip(x.to_real()).map(|(c, v)| c * v).sum())
    }

    /// Dual norm with respect to the coefficient-Euclidean module norm.
    pub fn dual_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// `x ↦ F(x) - ι₁F(ι₁x) - ι₂F(ι₂x) + ι₁ι₂F(ι₁ι₂x)`, a 𝕋-linear functional.
pub fn lift_real(f: &RealLinearFunctional) -> TFunctional {
    let n = f.dim();
    let at = |x: &TVector| f.eval(x).expect("matching dimension");
    let coeffs = (0..n)
        .map(|k| {
            let u = TVector::unit(n, k);
            Bicomplex::real(at(&u)) - Bicomplex::I1.scale(at(&u.scale(Bicomplex::I1)))
                - Bicomplex::I2.scale(at(&u.scale(Bicomplex::I2)))
                + Bicomplex::J.scale(at(&u.scale(Bicomplex::J)))
        })
        .collect();
    TFunctional::new(TVector::new(coeffs).expect("n >= 1"))
}

/// Extends a real functional from the real span of `y` to the whole module
/// as `f ∘ P_Y`; its dual norm is the norm of `f` restricted to `Y`.
pub fn extend_real(f: &RealLinearFunctional, y: &Submodule) -> Result<RealLinearFunctional> {
    check_dim(y.ambient_dim(), f.dim())?;
    // P_Y is an orthogonal projection in the real coefficient inner product,
    // so f ∘ P_Y has coefficient vector P_Y(f).
    let coeffs = y.project(&TVector::from_real(f.coeffs())?)?.to_real();
    RealLinearFunctional::new(coeffs)
}

/// A functional on a submodule: either the restriction of an ambient
/// functional, or its values on the submodule's generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubmoduleFunctional {
    Ambient(TFunctional),
    Values { values: Vec<Bicomplex> },
}

impl SubmoduleFunctional {
    /// Values on the generators of `y`.
    pub fn generator_values(&self, y: &Submodule) -> Result<Vec<Bicomplex>> {
        match self {
            SubmoduleFunctional::Ambient(f) => y.generators().iter().map(|g| f.eval(g)).collect(),
            SubmoduleFunctional::Values { values } => {
                check_dim(y.generators().len(), values.len())?;
                Ok(values.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtensionReport {
    pub extension: TFunctional,
    /// Largest `|x*(g) - y*(g)|` over the generators `g` of `Y`.
    pub restriction_error: f64,
    /// `(‖(x*)₁‖, ‖(x*)₂‖)`
    pub extension_component_norms: [f64; 2],
    /// `(‖(y*)₁‖, ‖(y*)₂‖)`, norms of the restrictions to `Y₁`, `Y₂`.
    pub restricted_component_norms: [f64; 2],
    pub extension_norms: NormReport,
    pub restricted_norms: NormReport,
}

/// Norm-preserving extension of `ystar` from `y` to the ambient module.
pub fn hahn_banach_extend(ystar: &SubmoduleFunctional, y: &Submodule) -> Result<ExtensionReport> {
    let n = y.ambient_dim();
    if let SubmoduleFunctional::Ambient(f) = ystar {
        check_dim(n, f.dim())?;
    }
    let values = ystar.generator_values(y)?;
    let beta: Vec<_> = values.iter().map(Bicomplex::to_idempotent).collect();
    let gens: Vec<IdempotentVectorPair> = y.generators().iter().map(TVector::split).collect();

    let mut coeffs = Vec::with_capacity(2);
    let mut restricted = [0.0; 2];
    for k in 1..=2 {
        let q = y.basis(k);
        let rhs = CVector::from_iterator(beta.len(), beta.iter().map(|h| h.component(k)));
        // Coordinates t_i = Q* g_i of the generators; solve Σ_j t_ij b_j = β_i.
        let t = CMatrix::from_fn(gens.len(), q.ncols(), |i, j| {
            q.column(j).iter().zip(gens[i].component(k).iter()).map(|(qv, gv)| qv.conj() * gv).sum()
        });
        let b = if q.ncols() == 0 || gens.is_empty() {
            CVector::zeros(q.ncols())
        } else {
            t.clone()
                .svd(true, true)
                .solve(&rhs, 0.0)
                .map_err(|e| Error::Parse(format!("least-squares solve failed: {e}")))?
        };
        let residual = linalg::norm(&(&t * &b - &rhs));
        if residual > CONSISTENCY_TOL * (1.0 + linalg::norm(&rhs)) {
            return Err(Error::InconsistentFunctional { residual });
        }
        restricted[k - 1] = linalg::norm(&b);
        // x*_k(v) = bᵀ Q* v, coefficient vector conj(Q)·b.
        coeffs.push(q.map(|z| z.conj()) * &b);
    }
    let c2 = coeffs.pop().expect("two components");
    let c1 = coeffs.pop().expect("two components");
    let extension = TFunctional::from_components(c1, c2)?;

    let restriction_error = y
        .generators()
        .iter()
        .zip(&values)
        .map(|(g, v)| extension.eval(g).map(|e| (e - *v).norm()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let extension_component_norms = extension.component_norms();
    Ok(ExtensionReport {
        extension_norms: extension.norms(),
        restricted_norms: NormReport::from_singular_values(restricted[0], restricted[1]),
        extension,
        restriction_error,
        extension_component_norms,
        restricted_component_norms: restricted,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Separation {
    pub functional: TFunctional,
    pub d: f64,
    pub d1: f64,
    pub d2: f64,
    pub norms: NormReport,
    /// The value `1/d` one would hope for; attained by `idem_norm` iff `d₁ = d₂`.
    pub claimed_norm: f64,
}

/// A functional vanishing on `y` with value 1 at `x`. Requires both
/// component distances to be positive: if one vanishes, `f(x)` lies in an
/// ideal and cannot equal 1.
pub fn separating_functional(x: &TVector, y: &Submodule) -> Result<Separation> {
    check_dim(y.ambient_dim(), x.dim())?;
    let p = x.split();
    let r1 = &p.v1 - linalg::project(y.basis(1), &p.v1);
    let r2 = &p.v2 - linalg::project(y.basis(2), &p.v2);
    let (d1, d2) = (linalg::norm(&r1), linalg::norm(&r2));
    let floor = NULL_COMPONENT_TOL * x.norm();
    if d1 <= floor || d2 <= floor {
        return Err(Error::ComponentInNullDistance { d1, d2 });
    }
    // f_k(v) = r_k* v / d_k², which kills Y_k and sends x_k to 1.
    let functional = TFunctional::from_components(
        r1.map(|z| z.conj()) / nalgebra::Complex::new(d1 * d1, 0.0),
        r2.map(|z| z.conj()) / nalgebra::Complex::new(d2 * d2, 0.0),
    )?;
    let d = ((d1 * d1 + d2 * d2) / 2.0).sqrt();
    Ok(Separation {
        norms: functional.norms(),
        functional,
        d,
        d1,
        d2,
        claimed_norm: 1.0 / d,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Norming {
    pub functional: TFunctional,
    /// `f(x)`, equal to the real number `‖x‖`.
    pub value: Bicomplex,
    pub norms: NormReport,
}

/// A functional with `f(x) = ‖x‖`. Its idempotent norm is 1 exactly when the
/// two split components of `x` have equal length; otherwise the achieved
/// norms are reported.
pub fn norming_functional(x: &TVector) -> Result<Norming> {
    let p = x.split();
    let norms = [linalg::norm(&p.v1), linalg::norm(&p.v2)];
    let nx = x.norm();
    if norms[0] <= NULL_COMPONENT_TOL * nx || norms[1] <= NULL_COMPONENT_TOL * nx || nx == 0.0 {
        return Err(Error::NullConeVector { norms });
    }
    let comp = |v: &CVector, len: f64| v.map(|z| z.conj()) * nalgebra::Complex::new(nx / (len * len), 0.0);
    let functional = TFunctional::from_components(comp(&p.v1, norms[0]), comp(&p.v2, norms[1]))?;
    Ok(Norming {
        value: functional.eval(x)?,
        norms: functional.norms(),
        functional,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualityGap {
    /// Largest `|f(x)|` over the sampled functionals with `idem_norm = 1`.
    pub sup_estimate: f64,
    /// `‖x‖ - sup_estimate`
    pub gap: f64,
}

/// Samples `trials` functionals uniformly from the unit idem-norm sphere and
/// measures how close `sup |f(x)|` gets to `‖x‖`.
pub fn duality_gap(x: &TVector, trials: usize, seed: u64) -> DualityGap {
    let n = x.dim();
    let sup_estimate = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = sampling::substream(seed, sampling::stream_id("duality-gap"), t);
            let g: Vec<f64> = (0..4 * n).map(|_| rng.sample(StandardNormal)).collect();
            let len = DVector::from_vec(g.clone()).norm();
            let c = TVector::from_real(&g.iter().map(|v| v / len).collect::<Vec<_>>()).expect("finite");
            // idem_norm of a functional equals the module norm of its coefficients
            TFunctional::new(c).eval(x).expect("matching dimension").norm()
        })
        .reduce(|| 0.0, f64::max);
    DualityGap {
        sup_estimate,
        gap: x.norm() - sup_estimate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tmodule::distance_to;

    fn bc(a: f64, b: f64, c: f64, d: f64) -> Bicomplex {
        Bicomplex::new(a, b, c, d)
    }

    fn vec_of(e: &[Bicomplex]) -> TVector {
        TVector::new(e.to_vec()).unwrap()
    }

    fn sample_functional() -> TFunctional {
        TFunctional::new(vec_of(&[bc(0.5, -1.0, 0.25, 2.0), bc(-0.3, 0.0, 1.0, -0.6), bc(0.8, 0.9, -0.1, 0.0)]))
    }

    fn sample_vec() -> TVector {
        vec_of(&[bc(1.0, 0.2, -0.4, 0.0), bc(0.0, -1.0, 0.5, 0.5), bc(0.3, 0.3, 0.3, -0.3)])
    }

    #[test]
    fn eval_examples() {
        assert_eq!(TFunctional::coordinate(3, 1).eval(&TVector::unit(3, 1)).unwrap(), Bicomplex::ONE);
        let v = sample_functional().scale(Bicomplex::E1).eval(&sample_vec()).unwrap();
        assert_eq!(v.classify(1e-14).vanishing_components, vec![2]);
        let w = bc(0.3, -0.2, 0.9, 0.1);
        let f = sample_functional();
        let lhs = f.eval(&sample_vec().scale(w)).unwrap();
        let rhs = w * f.eval(&sample_vec()).unwrap();
        assert!(lhs.max_coeff_diff(&rhs) < 1e-14);
        assert!(f.eval(&TVector::zeros(2)).is_err());
    }

    #[test]
    fn real_parts_examples() {
        let [f1, ..] = TFunctional::coordinate(1, 0).real_parts();
        assert_eq!(f1.coeffs(), &[1.0, 0.0, 0.0, 0.0]);
        // ι₁·w = -b + aι₁ - dι₂ + cj, so its real part is -b.
        let [f1, ..] = TFunctional::coordinate(1, 0).scale(Bicomplex::I1).real_parts();
        assert_eq!(f1.coeffs(), &[0.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn real_parts_recombine_and_satisfy_relations() {
        let f = sample_functional();
        let [f1, f2, f3, f4] = f.real_parts();
        let y = sample_vec();
        let v = f.eval(&y).unwrap();
        let parts = [f1.eval(&y).unwrap(), f2.eval(&y).unwrap(), f3.eval(&y).unwrap(), f4.eval(&y).unwrap()];
        for k in 0..4 {
            assert!((parts[k] - v.coeffs()[k]).abs() < 1e-14);
        }
        assert!((parts[1] + f1.eval(&y.scale(Bicomplex::I1)).unwrap()).abs() < 1e-14);
        assert!((parts[2] + f1.eval(&y.scale(Bicomplex::I2)).unwrap()).abs() < 1e-14);
        assert!((parts[3] - f1.eval(&y.scale(Bicomplex::J)).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn lift_examples() {
        let a_coeff = RealLinearFunctional::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(lift_real(&a_coeff), TFunctional::coordinate(1, 0));
        let zero = RealLinearFunctional::new(vec![0.0; 8]).unwrap();
        assert_eq!(lift_real(&zero), TFunctional::zero(2));
        let g = sample_functional();
        assert!(lift_real(&g.real_parts()[0]).max_coeff_diff(&g) < 1e-15);
    }

    #[test]
    fn lift_is_t_linear() {
        let f = RealLinearFunctional::new((0..12).map(|k| (k as f64 * 0.37).sin()).collect()).unwrap();
        let x_star = lift_real(&f);
        let x = sample_vec();
        for w in [Bicomplex::I1, Bicomplex::I2, Bicomplex::J, bc(0.2, -0.7, 0.4, 1.1)] {
            let lhs = x_star.eval(&x.scale(w)).unwrap();
            let rhs = w * x_star.eval(&x).unwrap();
            assert!(lhs.max_coeff_diff(&rhs) < 1e-14);
        }
    }

    #[test]
    fn extend_real_examples() {
        let f = RealLinearFunctional::new((0..12).map(|k| k as f64 - 5.5).collect()).unwrap();
        assert!(extend_real(&f, &Submodule::full(3))
            .unwrap()
            .coeffs()
            .iter()
            .zip(f.coeffs())
            .all(|(a, b)| (a - b).abs() < 1e-13));

        // Y = first coordinate axis, f = a-coefficient of the first entry.
        let axis = Submodule::new(2, vec![TVector::unit(2, 0)]).unwrap();
        let f = RealLinearFunctional::new(vec![1.0, 0.0, 0.0, 0.0, 3.0, -2.0, 1.0, 7.0]).unwrap();
        let big = extend_real(&f, &axis).unwrap();
        let c = big.coeffs();
        assert!((c[0] - 1.0).abs() < 1e-15);
        assert!(c[1..].iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn extend_real_agrees_on_submodule_and_keeps_norm() {
        let y = Submodule::new(3, vec![sample_vec(), sample_vec().scale(Bicomplex::E1).scale(bc(0.0, 1.0, 2.0, 0.0))]).unwrap();
        let f = sample_functional().real_parts()[0].clone();
        let big = extend_real(&f, &y).unwrap();
        let restricted = extend_real(&big, &y).unwrap();
        assert!((big.dual_norm() - restricted.dual_norm()).abs() < 1e-14);
        for g in y.generators() {
            let p = g.scale(bc(0.5, 0.1, -0.2, 0.3));
            assert!((big.eval(&p).unwrap() - f.eval(&p).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn extension_of_full_module_is_identity() {
        let f = sample_functional();
        let r = hahn_banach_extend(&SubmoduleFunctional::Ambient(f.clone()), &Submodule::full(3)).unwrap();
        assert!(r.extension.max_coeff_diff(&f) < 1e-14);
        assert!(r.restriction_error < 1e-14);
    }

    #[test]
    fn extension_from_first_axis() {
        let y = Submodule::new(2, vec![TVector::unit(2, 0)]).unwrap();
        let r = hahn_banach_extend(&SubmoduleFunctional::Values { values: vec![Bicomplex::ONE] }, &y).unwrap();
        assert!(r.extension.max_coeff_diff(&TFunctional::coordinate(2, 0)) < 1e-15);
        assert!((r.extension_component_norms[0] - 1.0).abs() < 1e-15);
        assert_eq!(r.extension_component_norms, r.restricted_component_norms);
    }

    #[test]
    fn extension_matches_real_route() {
        let y = Submodule::new(3, vec![sample_vec(), TVector::unit(3, 2).scale(Bicomplex::E2)]).unwrap();
        let g = sample_functional();
        let r = hahn_banach_extend(&SubmoduleFunctional::Ambient(g.clone()), &y).unwrap();
        let via_real = lift_real(&extend_real(&g.real_parts()[0], &y).unwrap());
        assert!(r.extension.max_coeff_diff(&via_real) < 1e-13);
        for k in 0..2 {
            assert!((r.extension_component_norms[k] - r.restricted_component_norms[k]).abs() < 1e-13);
        }
    }

    #[test]
    fn inconsistent_generator_values_are_rejected() {
        let g = sample_vec();
        let y = Submodule::new(3, vec![g.clone(), g.scale(bc(2.0, 0.0, 0.0, 0.0))]).unwrap();
        let ok = SubmoduleFunctional::Values { values: vec![Bicomplex::ONE, bc(2.0, 0.0, 0.0, 0.0)] };
        assert!(hahn_banach_extend(&ok, &y).is_ok());
        let bad = SubmoduleFunctional::Values { values: vec![Bicomplex::ONE, Bicomplex::ONE] };
        assert!(matches!(hahn_banach_extend(&bad, &y), Err(Error::InconsistentFunctional { .. })));
        // A null-cone generator cannot carry a value outside its ideal.
        let y = Submodule::new(3, vec![g.scale(Bicomplex::E1)]).unwrap();
        let bad = SubmoduleFunctional::Values { values: vec![Bicomplex::ONE] };
        assert!(matches!(hahn_banach_extend(&bad, &y), Err(Error::InconsistentFunctional { .. })));
        let good = SubmoduleFunctional::Values { values: vec![Bicomplex::E1] };
        assert!(hahn_banach_extend(&good, &y).is_ok());
    }

    #[test]
    fn separation_examples() {
        let s = separating_functional(&TVector::unit(1, 0), &Submodule::zero(1)).unwrap();
        assert!(s.functional.max_coeff_diff(&TFunctional::coordinate(1, 0)) < 1e-15);
        assert!((s.norms.idem_norm - 1.0).abs() < 1e-15);

        let y = Submodule::new(2, vec![TVector::unit(2, 0)]).unwrap();
        let x = TVector::unit(2, 1);
        let s = separating_functional(&x, &y).unwrap();
        assert!(s.functional.max_coeff_diff(&TFunctional::coordinate(2, 1)) < 1e-15);
        assert!(s.functional.eval(&x).unwrap().max_coeff_diff(&Bicomplex::ONE) < 1e-15);
        assert!((s.d - 1.0).abs() < 1e-15);
        assert!((s.norms.idem_norm - s.claimed_norm).abs() < 1e-15);

        let x = sample_vec().scale(Bicomplex::E1);
        assert!(matches!(
            separating_functional(&x, &Submodule::zero(3)),
            Err(Error::ComponentInNullDistance { .. })
        ));
    }

    #[test]
    fn separation_vanishes_on_submodule() {
        let y = Submodule::new(3, vec![sample_vec().scale(bc(0.0, 0.0, 1.0, 0.5))]).unwrap();
        let x = vec_of(&[bc(0.0, 1.0, 0.0, 0.0), bc(1.0, 0.0, 0.0, 0.0), bc(0.0, 0.0, -1.0, 0.2)]);
        let s = separating_functional(&x, &y).unwrap();
        let dist = distance_to(&x, &y).unwrap();
        assert!((s.d - dist.d).abs() < 1e-14);
        assert!(s.functional.eval(&x).unwrap().max_coeff_diff(&Bicomplex::ONE) < 1e-14);
        for g in y.generators() {
            assert!(s.functional.eval(&g.scale(bc(0.3, 0.1, 0.7, -2.0))).unwrap().norm() < 1e-13);
        }
        let [n1, n2] = s.functional.component_norms();
        assert!((n1 - 1.0 / s.d1).abs() < 1e-12 && (n2 - 1.0 / s.d2).abs() < 1e-12);
    }

    #[test]
    fn norming_examples() {
        let r = norming_functional(&TVector::unit(1, 0)).unwrap();
        assert!(r.functional.max_coeff_diff(&TFunctional::coordinate(1, 0)) < 1e-15);
        assert_eq!(r.value, Bicomplex::ONE);
        let x = vec_of(&[Bicomplex::J]);
        let r = norming_functional(&x).unwrap();
        assert!(r.functional.coeffs().get(0).max_coeff_diff(&Bicomplex::J) < 1e-15);
        assert!(r.value.max_coeff_diff(&Bicomplex::ONE) < 1e-15);
        assert!((r.norms.idem_norm - 1.0).abs() < 1e-15);
        assert!(matches!(norming_functional(&vec_of(&[Bicomplex::E1])), Err(Error::NullConeVector { .. })));
        assert!(matches!(norming_functional(&TVector::zeros(2)), Err(Error::NullConeVector { .. })));
    }

    #[test]
    fn norming_unbalanced_reports_norms_above_one() {
        let x = vec_of(&[Bicomplex::E1.scale(3.0) + Bicomplex::E2]);
        let r = norming_functional(&x).unwrap();
        assert!(r.value.max_coeff_diff(&Bicomplex::real(x.norm())) < 1e-14);
        assert!(r.norms.idem_norm > 1.0);
    }

    #[test]
    fn duality_gap_examples() {
        let g = duality_gap(&TVector::unit(1, 0), 10_000, 3);
        assert!(g.sup_estimate >= 0.99 && g.sup_estimate <= 1.0 + 1e-15);
        assert!(g.gap <= 0.01);
        let g = duality_gap(&TVector::zeros(2), 100, 3);
        assert_eq!((g.sup_estimate, g.gap), (0.0, 0.0));
        assert_eq!(duality_gap(&sample_vec(), 500, 9), duality_gap(&sample_vec(), 500, 9));
    }

    #[test]
    fn submodule_functional_json_forms() {
        let f: SubmoduleFunctional = serde_json::from_str(r#"{"n":1,"coeffs":[[1,0,0,0]]}"#).unwrap();
        assert_eq!(f, SubmoduleFunctional::Ambient(TFunctional::coordinate(1, 0)));
        let f: SubmoduleFunctional = serde_json::from_str(r#"{"values":[[0.5,0,0,0.5]]}"#).unwrap();
        assert_eq!(f, SubmoduleFunctional::Values { values: vec![Bicomplex::E1] });
        assert!(serde_json::from_str::<TFunctional>(r#"{"n":2,"coeffs":[[1,0,0,0]]}"#).is_err());
    }
}
