//! 𝕋-linear operators 𝕋ⁿ → 𝕋ᵐ as bicomplex matrices.
//!
//! Writing `T = T̂₁e₁ + T̂₂e₂` with complex `m×n` hat-components, `T` acts on
//! split vectors as `(v₁, v₂) ↦ (T̂₁v₁, T̂₂v₂)`. Everything below (norms,
//! determinants, inversion) reduces to the two complex matrices.
//!
//! Two operator norms are reported. With `s_k` the largest singular value
//! of `T̂_k`:
//!
//! * `sup_norm = (1/√2)·sup_{‖x‖≤1} ‖Tx‖ = max(s₁, s₂)/√2`
//! * `idem_norm = √((s₁² + s₂²)/2)`
//!
//! and `sup_norm ≤ idem_norm ≤ √2·sup_norm`.

use std::f64::consts::SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::scalar::{Bicomplex, IdempotentForm};
use crate::tmodule::{check_dim, IdempotentVectorPair, TVector};

/// Hat-components whose condition number exceeds this are refused by
/// [`TMatrix::solve`] and [`TMatrix::invert`].
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, Debug, PartialEq)]
pub struct TMatrix {
    m: usize,
    n: usize,
    /// Row-major.
    entries: Vec<Bicomplex>,
}

impl TMatrix {
    pub fn new(m: usize, n: usize, entries: Vec<Bicomplex>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyDimension);
        }
        check_dim(m * n, entries.len())?;
        if !entries.iter().all(Bicomplex::is_finite) {
            return Err(Error::NonFinite);
        }
        Ok(TMatrix { m, n, entries })
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> Bicomplex) -> Self {
        assert!(m >= 1 && n >= 1, "dimensions must be at least 1");
        let entries = (0..m * n).map(|k| f(k / n, k % n)).collect();
        TMatrix { m, n, entries }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Self::from_fn(m, n, |_, _| Bicomplex::ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Bicomplex::ONE)
    }

    /// `w·I`, the multiplication operator `M_w`.
    pub fn scalar(n: usize, w: Bicomplex) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { w } else { Bicomplex::ZERO })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn is_square(&self) -> bool {
        self.m == self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Bicomplex {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Bicomplex] {
        &self.entries
    }

    pub fn apply(&self, x: &TVector) -> Result<TVector> {
        check_dim(self.n, x.dim())?;
        let out = (0..self.m)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x.get(j)).sum())
            .collect();
        TVector::new(out)
    }

    /// The product `self · b`.
    pub fn compose(&self, b: &TMatrix) -> Result<TMatrix> {
        check_dim(self.n, b.m)?;
        Ok(TMatrix::from_fn(self.m, b.n, |i, j| {
            (0..self.n).map(|k| self.get(i, k) * b.get(k, j)).sum()
        }))
    }

    pub fn checked_add(&self, o: &TMatrix) -> Result<TMatrix> {
        check_dim(self.m, o.m)?;
        check_dim(self.n, o.n)?;
        Ok(TMatrix::from_fn(self.m, self.n, |i, j| self.get(i, j) + o.get(i, j)))
    }

    pub fn checked_sub(&self, o: &TMatrix) -> Result<TMatrix> {
        check_dim(self.m, o.m)?;
        check_dim(self.n, o.n)?;
        Ok(TMatrix::from_fn(self.m, self.n, |i, j| self.get(i, j) - o.get(i, j)))
    }

    pub fn scale(&self, w: Bicomplex) -> TMatrix {
        TMatrix::from_fn(self.m, self.n, |i, j| w * self.get(i, j))
    }

    pub fn scale_real(&self, s: f64) -> TMatrix {
        TMatrix::from_fn(self.m, self.n, |i, j| self.get(i, j).scale(s))
    }

    pub fn split(&self) -> ComplexMatrixPair {
        let hats: Vec<IdempotentForm> = self.entries.iter().map(Bicomplex::to_idempotent).collect();
        ComplexMatrixPair {
            m1: CMatrix::from_row_iterator(self.m, self.n, hats.iter().map(|h| h.h1)),
            m2: CMatrix::from_row_iterator(self.m, self.n, hats.iter().map(|h| h.h2)),
        }
    }

    pub fn norms(&self) -> NormReport {
        let p = self.split();
        NormReport::from_singular_values(
            linalg::largest_singular_value(&p.m1),
            linalg::largest_singular_value(&p.m2),
        )
    }

    /// Least `M` with `‖Tx‖ ≤ √2·M·‖x‖` for all `x`; equals `sup_norm`.
    pub fn bound_constant(&self) -> f64 {
        self.norms().sup_norm
    }

    /// Radius of the largest ball about the origin contained in the image
    /// of the open unit ball: `min(σ_min(T̂₁), σ_min(T̂₂))`. Zero unless the
    /// operator is square and bijective.
    pub fn interior_radius(&self) -> f64 {
        if !self.is_square() {
            return 0.0;
        }
        let p = self.split();
        linalg::smallest_singular_value(&p.m1).min(linalg::smallest_singular_value(&p.m2))
    }

    /// `det T = det(T̂₁)e₁ + det(T̂₂)e₂`.
    pub fn det(&self) -> Result<Bicomplex> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.m, cols: self.n });
        }
        let p = self.split();
        Ok(IdempotentForm::new(linalg::determinant(&p.m1), linalg::determinant(&p.m2)).to_bicomplex())
    }

    /// Refuses the operator unless each hat-component has `σ_min > tol·σ`
    /// and `σ/σ_min ≤` [`MAX_CONDITION`], where `σ` is the largest singular
    /// value over both components. Measuring against the common `σ` catches
    /// a component that is uniformly negligible next to the other.
    fn check_invertible(&self, p: &ComplexMatrixPair, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.m, cols: self.n });
        }
        let s = [linalg::singular_values(&p.m1), linalg::singular_values(&p.m2)];
        let hi = s[0][0].max(s[1][0]);
        let mut condition = [0.0; 2];
        let mut components = Vec::new();
        for (k, sk) in s.iter().enumerate() {
            let lo = sk[sk.len() - 1];
            condition[k] = if lo > 0.0 { hi / lo } else { f64::INFINITY };
            if hi == 0.0 || lo <= tol * hi || condition[k] > MAX_CONDITION {
                components.push(k as u8 + 1);
            }
        }
        if components.is_empty() {
            Ok(())
        } else {
            Err(Error::SingularOperator { components, condition })
        }
    }

    /// Solves `Tx = b` through the two complex systems `T̂_k u_k = b_k`.
    pub fn solve(&self, b: &TVector, tol: f64) -> Result<TVector> {
        check_dim(self.m, b.dim())?;
        let p = self.split();
        self.check_invertible(&p, tol)?;
        let rhs = b.split();
        let u1 = p.m1.clone().lu().solve(&rhs.v1);
        let u2 = p.m2.clone().lu().solve(&rhs.v2);
        match (u1, u2) {
            (Some(u1), Some(u2)) => IdempotentVectorPair::new(u1, u2)?.merge(),
            (u1, u2) => Err(singular_from_lu(u1.is_none(), u2.is_none())),
        }
    }

    /// Inverse with hat-components `T̂₁⁻¹`, `T̂₂⁻¹`.
    pub fn invert(&self, tol: f64) -> Result<TMatrix> {
        let p = self.split();
        self.check_invertible(&p, tol)?;
        let i1 = p.m1.clone().try_inverse();
        let i2 = p.m2.clone().try_inverse();
        match (i1, i2) {
            (Some(m1), Some(m2)) => ComplexMatrixPair { m1, m2 }.merge(),
            (i1, i2) => Err(singular_from_lu(i1.is_none(), i2.is_none())),
        }
    }

    /// The `4m × 4n` real matrix of `T` acting on flattened real coordinates,
    /// built column by column from images of the real basis vectors.
    pub fn to_real_matrix(&self) -> DMatrix<f64> {
        let mut out = DMatrix::<f64>::zeros(4 * self.m, 4 * self.n);
        let mut coords = vec![0.0; 4 * self.n];
        for col in 0..4 * self.n {
            coords[col] = 1.0;
            let x = TVector::from_real(&coords).expect("finite basis vector");
            let y = self.apply(&x).expect("matching dimension").to_real();
            for (row, v) in y.into_iter().enumerate() {
                out[(row, col)] = v;
            }
            coords[col] = 0.0;
        }
        out
    }

    pub fn max_coeff_diff(&self, o: &TMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&o.entries)
            .map(|(x, y)| x.max_coeff_diff(y))
            .fold(0.0, f64::max)
    }
}

fn singular_from_lu(first: bool, second: bool) -> Error {
    let mut components = Vec::new();
    if first {
        components.push(1);
    }
    if second {
        components.push(2);
    }
    Error::SingularOperator {
        components,
        condition: [
            if first { f64::INFINITY } else { 0.0 },
            if second { f64::INFINITY } else { 0.0 },
        ],
    }
}

/// On-disk matrix form `{ "m": …, "n": …, "entries": [[a,b,c,d], …] }`,
/// entries row-major.
#[derive(Serialize, Deserialize)]
struct MatrixFile {
    m: usize,
    n: usize,
    entries: Vec<Bicomplex>,
}

impl Serialize for TMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixFile {
            m: self.m,
            n: self.n,
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = MatrixFile::deserialize(d)?;
        TMatrix::new(f.m, f.n, f.entries).map_err(serde::de::Error::custom)
    }
}

/// Hat-components `(T̂₁, T̂₂)` of an operator.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrixPair {
    pub m1: CMatrix,
    pub m2: CMatrix,
}

impl ComplexMatrixPair {
    pub fn merge(&self) -> Result<TMatrix> {
        if self.m1.shape() != self.m2.shape() {
            return Err(Error::DimensionMismatch {
                expected: self.m1.len(),
                found: self.m2.len(),
            });
        }
        let (m, n) = self.m1.shape();
        let entries = (0..m * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                IdempotentForm::new(self.m1[(i, j)], self.m2[(i, j)]).to_bicomplex()
            })
            .collect();
        TMatrix::new(m, n, entries)
    }

    pub fn component(&self, k: usize) -> &CMatrix {
        match k {
            1 => &self.m1,
            2 => &self.m2,
            _ => panic!("hat-component index must be 1 or 2, got {k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub sup_norm: f64,
    pub idem_norm: f64,
    pub s1: f64,
    pub s2: f64,
}

impl NormReport {
    pub fn from_singular_values(s1: f64, s2: f64) -> Self {
        NormReport {
            sup_norm: s1.max(s2) / SQRT_2,
            idem_norm: ((s1 * s1 + s2 * s2) / 2.0).sqrt(),
            s1,
            s2,
        }
    }
}

/// Convenience for building a complex-valued (ℂ(ι₁)) operator, whose two
/// hat-components coincide.
pub fn complex_matrix(m: usize, n: usize, entries: &[Complex64]) -> Result<TMatrix> {
    check_dim(m * n, entries.len())?;
    TMatrix::new(m, n, entries.iter().map(|&z| Bicomplex::from_complex(z)).collect())
}
