//! The free module 𝕋ⁿ.
//!
//! Every vector splits into two ℂ(ι₁)-coordinate vectors `(v₁, v₂)`, the
//! components of `x` in `V₁ = e₁·𝕋ⁿ` and `V₂ = e₂·𝕋ⁿ`. The module norm is the
//! Euclidean norm of the `4n` real coefficients, which in split form reads
//! `‖x‖² = (‖v₁‖² + ‖v₂‖²)/2`. It is also the F-norm `|x| = ρ(x, 0)` of the
//! translation-invariant metric `ρ(x, y) = ‖x - y‖`.
//!
//! Submodules need not be free (`e₁·𝕋` is a submodule with no basis), so a
//! [`Submodule`] is carried as the pair of complex subspaces `(Y₁, Y₂)`
//! spanned by the hat-components of its generators.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::scalar::{Bicomplex, IdempotentForm};

#[derive(Clone, Debug, PartialEq)]
pub struct TVector {
    entries: Vec<Bicomplex>,
}

impl TVector {
    pub fn new(entries: Vec<Bicomplex>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if !entries.iter().all(Bicomplex::is_finite) {
            return Err(Error::NonFinite);
        }
        Ok(TVector { entries })
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        TVector {
            entries: vec![Bicomplex::ZERO; n],
        }
    }

    /// The `k`-th standard basis vector of 𝕋ⁿ.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[k] = Bicomplex::ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Bicomplex] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Bicomplex {
        self.entries[i]
    }

    pub fn checked_add(&self, other: &TVector) -> Result<TVector> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn checked_sub(&self, other: &TVector) -> Result<TVector> {
        self.zip_with(other, |x, y| x - y)
    }

    fn zip_with(&self, other: &TVector, f: impl Fn(Bicomplex, Bicomplex) -> Bicomplex) -> Result<TVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(TVector {
            entries: self.entries.iter().zip(&other.entries).map(|(&x, &y)| f(x, y)).collect(),
        })
    }

    /// Module scalar multiplication `w·x`.
    pub fn scale(&self, w: Bicomplex) -> TVector {
        TVector {
            entries: self.entries.iter().map(|&x| w * x).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> TVector {
        TVector {
            entries: self.entries.iter().map(|x| x.scale(s)).collect(),
        }
    }

    pub fn neg(&self) -> TVector {
        self.scale_real(-1.0)
    }

    pub fn split(&self) -> IdempotentVectorPair {
        let hats: Vec<IdempotentForm> = self.entries.iter().map(Bicomplex::to_idempotent).collect();
        IdempotentVectorPair {
            v1: CVector::from_iterator(hats.len(), hats.iter().map(|h| h.h1)),
            v2: CVector::from_iterator(hats.len(), hats.iter().map(|h| h.h2)),
        }
    }

    /// Euclidean norm over the `4n` real coefficients.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(Bicomplex::norm_sqr).sum::<f64>().sqrt()
    }

    /// Flattened real coordinates `(a₀, b₀, c₀, d₀, a₁, …)`.
    pub fn to_real(&self) -> Vec<f64> {
        self.entries.iter().flat_map(|w| w.coeffs()).collect()
    }

    pub fn from_real(coords: &[f64]) -> Result<TVector> {
        if !coords.len().is_multiple_of(4) {
            return Err(Error::Parse(format!(
                "real coordinate count {} is not a multiple of 4",
                coords.len()
            )));
        }
        let entries = coords
            .chunks_exact(4)
            .map(|c| Bicomplex::from_coeffs([c[0], c[1], c[2], c[3]]))
            .collect::<Result<Vec<_>>>()?;
        TVector::new(entries)
    }

    pub fn max_coeff_diff(&self, other: &TVector) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| x.max_coeff_diff(y))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl Serialize for TVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<Bicomplex>::deserialize(d)?;
        TVector::new(entries).map_err(serde::de::Error::custom)
    }
}

/// The two ℂ(ι₁)-coordinate vectors of a [`TVector`].
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentVectorPair {
    pub v1: CVector,
    pub v2: CVector,
}

impl IdempotentVectorPair {
    pub fn new(v1: CVector, v2: CVector) -> Result<Self> {
        check_dim(v1.len(), v2.len())?;
        Ok(IdempotentVectorPair { v1, v2 })
    }

    pub fn component(&self, k: usize) -> &CVector {
        match k {
            1 => &self.v1,
            2 => &self.v2,
            _ => panic!("hat-component index must be 1 or 2, got {k}"),
        }
    }

    pub fn merge(&self) -> Result<TVector> {
        let entries = self
            .v1
            .iter()
            .zip(self.v2.iter())
            .map(|(&h1, &h2)| IdempotentForm::new(h1, h2).to_bicomplex())
            .collect();
        TVector::new(entries)
    }

    /// `√((‖v₁‖² + ‖v₂‖²)/2)`
    pub fn norm(&self) -> f64 {
        ((linalg::norm(&self.v1).powi(2) + linalg::norm(&self.v2).powi(2)) / 2.0).sqrt()
    }
}

/// A point together with its F-norm `|x| = ρ(x, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FMetricPoint {
    pub point: TVector,
    pub fnorm: f64,
}

impl FMetricPoint {
    pub fn new(point: TVector) -> Self {
        let fnorm = fmetric(&point, &TVector::zeros(point.dim())).expect("same dimension");
        FMetricPoint { point, fnorm }
    }
}

/// `ρ(x, y) = ‖x - y‖`; translation invariant because it only sees `x - y`.
pub fn fmetric(x: &TVector, y: &TVector) -> Result<f64> {
    Ok(x.checked_sub(y)?.norm())
}

/// `‖x - x'‖ + ‖y - y'‖` on the product module.
pub fn product_metric(p: (&TVector, &TVector), q: (&TVector, &TVector)) -> Result<f64> {
    Ok(fmetric(p.0, q.0)? + fmetric(p.1, q.1)?)
}

/// Supremum of the norms of a finite sample; the boundedness certificate
/// in a normed module.
pub fn bounded_sup<'a, I>(points: I) -> Result<f64>
where
    I: IntoIterator<Item = &'a TVector>,
{
    points
        .into_iter()
        .map(TVector::norm)
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
        .ok_or(Error::EmptyCollection)
}

/// A submodule of 𝕋ⁿ given by generators, with orthonormal bases of the
/// two complex component subspaces.
#[derive(Clone, Debug)]
pub struct Submodule {
    n: usize,
    gens: Vec<TVector>,
    y1: CMatrix,
    y2: CMatrix,
}

impl Submodule {
    /// Generators are paired positionally with their hat-components; an
    /// empty generator list gives the zero submodule.
    pub fn new(n: usize, gens: Vec<TVector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        for g in &gens {
            check_dim(n, g.dim())?;
        }
        let mut c1 = CMatrix::zeros(n, gens.len());
        let mut c2 = CMatrix::zeros(n, gens.len());
        for (j, g) in gens.iter().enumerate() {
            let p = g.split();
            c1.set_column(j, &p.v1);
            c2.set_column(j, &p.v2);
        }
        Ok(Submodule {
            n,
            y1: linalg::orthonormal_basis(&c1),
            y2: linalg::orthonormal_basis(&c2),
            gens,
        })
    }

    /// The whole module, generated by the standard basis.
    pub fn full(n: usize) -> Self {
        Self::new(n, (0..n).map(|k| TVector::unit(n, k)).collect()).expect("valid basis")
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("valid dimension")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[TVector] {
        &self.gens
    }

    /// Orthonormal basis (columns) of component subspace `k` ∈ {1, 2}.
    pub fn basis(&self, k: usize) -> &CMatrix {
        match k {
            1 => &self.y1,
            2 => &self.y2,
            _ => panic!("hat-component index must be 1 or 2, got {k}"),
        }
    }

    /// `(dim Y₁, dim Y₂)`
    pub fn dims(&self) -> (usize, usize) {
        (self.y1.ncols(), self.y2.ncols())
    }

    /// True when the generators form a fundamental set, i.e. span all of 𝕋ⁿ.
    pub fn is_fundamental(&self) -> bool {
        self.dims() == (self.n, self.n)
    }

    /// Closest point of the submodule; componentwise orthogonal projection.
    pub fn project(&self, x: &TVector) -> Result<TVector> {
        check_dim(self.n, x.dim())?;
        let p = x.split();
        IdempotentVectorPair::new(linalg::project(&self.y1, &p.v1), linalg::project(&self.y2, &p.v2))?.merge()
    }
}

impl Serialize for Submodule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubmoduleFile {
            n: self.n,
            generators: self.gens.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Submodule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = SubmoduleFile::deserialize(d)?;
        Submodule::new(f.n, f.generators).map_err(serde::de::Error::custom)
    }
}

/// On-disk submodule form `{ "n": …, "generators": [[[a,b,c,d], …], …] }`.
#[derive(Serialize, Deserialize)]
struct SubmoduleFile {
    n: usize,
    generators: Vec<TVector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Distance {
    /// `√((d₁² + d₂²)/2)`
    pub d: f64,
    pub d1: f64,
    pub d2: f64,
    /// The unique norm-minimizing element of the submodule.
    pub proj: TVector,
}

pub fn distance_to(x: &TVector, y: &Submodule) -> Result<Distance> {
    check_dim(y.ambient_dim(), x.dim())?;
    let p = x.split();
    let r1 = linalg::project(&y.y1, &p.v1);
    let r2 = linalg::project(&y.y2, &p.v2);
    let d1 = linalg::norm(&(&p.v1 - &r1));
    let d2 = linalg::norm(&(&p.v2 - &r2));
    let proj = IdempotentVectorPair::new(r1, r2)?.merge()?;
    Ok(Distance {
        d: ((d1 * d1 + d2 * d2) / 2.0).sqrt(),
        d1,
        d2,
        proj,
    })
}

/// Membership test `d(x, Y) ≤ tol·(1 + ‖x‖)`.
pub fn in_span(x: &TVector, y: &Submodule, tol: f64) -> Result<bool> {
    Ok(distance_to(x, y)?.d <= tol * (1.0 + x.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn bc(a: f64, b: f64, c: f64, d: f64) -> Bicomplex {
        Bicomplex::new(a, b, c, d)
    }

    fn vec_of(e: &[Bicomplex]) -> TVector {
        TVector::new(e.to_vec()).unwrap()
    }

    fn sample() -> TVector {
        vec_of(&[bc(0.3, -1.0, 2.0, 0.5), bc(-0.7, 0.1, 0.0, 1.5), bc(1.0, 1.0, -1.0, 0.25)])
    }

    #[test]
    fn idempotent_scalings_recombine() {
        let x = sample();
        let sum = x.scale(Bicomplex::E1).checked_add(&x.scale(Bicomplex::E2)).unwrap();
        assert!(sum.max_coeff_diff(&x) < 1e-15);
        assert_eq!(x.scale(Bicomplex::E2).scale(Bicomplex::E1), TVector::zeros(3));
        assert_eq!(vec_of(&[Bicomplex::ONE]).scale(Bicomplex::J), vec_of(&[Bicomplex::J]));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = sample().checked_add(&TVector::zeros(2)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 3, found: 2 });
        assert_eq!(TVector::new(vec![]).unwrap_err(), Error::EmptyDimension);
    }

    #[test]
    fn split_examples() {
        let p = vec_of(&[Bicomplex::J, Bicomplex::J]).split();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(p.v1.as_slice(), &[one, one]);
        assert_eq!(p.v2.as_slice(), &[-one, -one]);

        let x = sample();
        assert!(x.split().merge().unwrap().max_coeff_diff(&x) < 1e-15);
        let p = x.scale(Bicomplex::E1).split();
        assert!(linalg::norm(&(&p.v1 - &x.split().v1)) < 1e-15);
        assert_eq!(linalg::norm(&p.v2), 0.0);
    }

    #[test]
    fn norm_examples() {
        assert!((vec_of(&[Bicomplex::E1, Bicomplex::E2]).norm() - 1.0).abs() < 1e-15);
        assert_eq!(vec_of(&[bc(1.0, 1.0, 1.0, 1.0)]).norm(), 2.0);
        let x = sample();
        assert!((x.norm() - x.split().norm()).abs() < 1e-14);
        let alpha = bc(0.6, -0.8, 0.0, 0.0);
        assert!((x.scale(alpha).norm() - x.norm()).abs() < 1e-14);
    }

    #[test]
    fn product_metric_examples() {
        let x = sample();
        let y = sample().scale(Bicomplex::I2);
        let z = TVector::zeros(3);
        assert_eq!(product_metric((&x, &y), (&x, &y)).unwrap(), 0.0);
        assert_eq!(product_metric((&z, &z), (&x, &z)).unwrap(), x.norm());
        assert!(product_metric((&x, &y), (&z, &TVector::zeros(2))).is_err());
    }

    #[test]
    fn fmetric_point_holds_norm() {
        let p = FMetricPoint::new(sample());
        assert_eq!(p.fnorm, sample().norm());
    }

    #[test]
    fn distance_examples() {
        let x = sample();
        let full = Submodule::full(3);
        let d = distance_to(&x, &full).unwrap();
        assert!(d.d < 1e-14);
        assert!(d.proj.max_coeff_diff(&x) < 1e-14);

        let d = distance_to(&x, &Submodule::zero(3)).unwrap();
        assert!((d.d - x.norm()).abs() < 1e-15);

        let y = Submodule::new(2, vec![vec_of(&[Bicomplex::ONE, Bicomplex::ZERO])]).unwrap();
        let d = distance_to(&vec_of(&[Bicomplex::ZERO, Bicomplex::ONE]), &y).unwrap();
        assert!((d.d - 1.0).abs() < 1e-15);
        assert!((d.d1 - 1.0).abs() < 1e-15 && (d.d2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn null_cone_generator_gives_unbalanced_submodule() {
        let g = sample();
        let y = Submodule::new(3, vec![g.scale(Bicomplex::E1)]).unwrap();
        assert_eq!(y.dims(), (1, 0));
        assert!(in_span(&g.scale(Bicomplex::E1), &y, 1e-12).unwrap());
        assert!(in_span(&g.scale(Bicomplex::new(0.2, 1.0, -3.0, 0.0) * Bicomplex::E1), &y, 1e-12).unwrap());
        assert!(!in_span(&g, &y, 1e-12).unwrap());
        let d = distance_to(&g, &y).unwrap();
        assert!(d.d1 < 1e-14);
        assert!((d.d2 - linalg::norm(&g.split().v2)).abs() < 1e-14);
    }

    #[test]
    fn in_span_examples() {
        let y = Submodule::new(2, vec![vec_of(&[Bicomplex::ONE, Bicomplex::ZERO])]).unwrap();
        assert!(!in_span(&vec_of(&[Bicomplex::ZERO, Bicomplex::ONE]), &y, 1e-9).unwrap());
        assert!(Submodule::full(3).is_fundamental());
        assert!(in_span(&sample(), &Submodule::full(3), 1e-12).unwrap());
    }

    #[test]
    fn bounded_sup_examples() {
        assert_eq!(bounded_sup([&TVector::zeros(1)]).unwrap(), 0.0);
        let pts = [vec_of(&[Bicomplex::E1]), vec_of(&[Bicomplex::E2]), vec_of(&[Bicomplex::ONE])];
        assert_eq!(bounded_sup(&pts).unwrap(), 1.0);
        let x = sample();
        let seq: Vec<TVector> = (1..=50).map(|k| x.scale_real(1.0 / k as f64)).collect();
        assert_eq!(bounded_sup(&seq).unwrap(), x.norm());
        assert_eq!(bounded_sup(std::iter::empty()).unwrap_err(), Error::EmptyCollection);
    }

    #[test]
    fn submodule_json_round_trip() {
        let y = Submodule::new(3, vec![sample(), sample().scale(Bicomplex::E2)]).unwrap();
        let s = serde_json::to_string(&y).unwrap();
        let back: Submodule = serde_json::from_str(&s).unwrap();
        assert_eq!(back.generators(), y.generators());
        assert_eq!(back.dims(), (1, 1));
        assert!(serde_json::from_str::<Submodule>(r#"{"n":2,"generators":[[[1,0,0,0]]]}"#).is_err());
    }
}
