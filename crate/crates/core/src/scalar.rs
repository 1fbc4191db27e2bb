//! Bicomplex scalars.
//!
//! A bicomplex number is `w = a + b·ι₁ + c·ι₂ + d·j` with `ι₁² = ι₂² = -1` and
//! `j = ι₁ι₂`, `j² = 1`. Equivalently `w = z₁ + ι₂·z₂` with `z₁ = a + b·ι₁`,
//! `z₂ = c + d·ι₁` in ℂ(ι₁).
//!
//! The ring has zero divisors. In the idempotent basis
//! `e₁ = (1 + j)/2`, `e₂ = (1 - j)/2` every scalar splits as `ẑ₁·e₁ + ẑ₂·e₂`
//! and multiplication acts componentwise on `(ẑ₁, ẑ₂)`. The scalars with a
//! vanishing hat-component form the null cone and are exactly the
//! non-invertible elements.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::io::fmt_real;

/// Default relative tolerance for null-cone detection.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-12;

/// A bicomplex number stored by its four real coefficients `(a, b, c, d)`
/// on the basis `1, ι₁, ι₂, j`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Bicomplex {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::raw(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Bicomplex = Bicomplex::raw(1.0, 0.0, 0.0, 0.0);
    pub const I1: Bicomplex = Bicomplex::raw(0.0, 1.0, 0.0, 0.0);
    pub const I2: Bicomplex = Bicomplex::raw(0.0, 0.0, 1.0, 0.0);
    pub const J: Bicomplex = Bicomplex::raw(0.0, 0.0, 0.0, 1.0);
    /// `e₁ = (1 + j)/2`
    pub const E1: Bicomplex = Bicomplex::raw(0.5, 0.0, 0.0, 0.5);
    /// `e₂ = (1 - j)/2`
    pub const E2: Bicomplex = Bicomplex::raw(0.5, 0.0, 0.0, -0.5);

    const fn raw(a: f64, b: f64, c: f64, d: f64) -> Self {
        Bicomplex { a, b, c, d }
    }

    /// Panics if any coefficient is NaN or infinite.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::try_new(a, b, c, d).expect("bicomplex coefficients must be finite")
    }

    pub fn try_new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite() {
            Ok(Self::raw(a, b, c, d))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_coeffs(c: [f64; 4]) -> Result<Self> {
        Self::try_new(c[0], c[1], c[2], c[3])
    }

    pub fn real(a: f64) -> Self {
        Self::new(a, 0.0, 0.0, 0.0)
    }

    /// Embeds a ℂ(ι₁) value `re + im·ι₁`.
    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im, 0.0, 0.0)
    }

    /// `w = z₁ + ι₂·z₂`.
    pub fn from_z(z1: Complex64, z2: Complex64) -> Self {
        Self::new(z1.re, z1.im, z2.re, z2.im)
    }

    pub fn coeffs(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn z1(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }

    pub fn z2(&self) -> Complex64 {
        Complex64::new(self.c, self.d)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|x| x.is_finite())
    }

    /// Euclidean norm of the four coefficients.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// Hat-components `ẑ₁ = z₁ - ι₁z₂`, `ẑ₂ = z₁ + ι₁z₂`.
    pub fn to_idempotent(&self) -> IdempotentForm {
        let (z1, z2) = (self.z1(), self.z2());
        let iz2 = Complex64::new(-z2.im, z2.re);
        IdempotentForm {
            h1: z1 - iz2,
            h2: z1 + iz2,
        }
    }

    pub fn from_idempotent(h: IdempotentForm) -> Self {
        h.to_bicomplex()
    }

    pub fn classify(&self, tol: f64) -> SingularityReport {
        SingularityReport::of(self, tol)
    }

    /// Multiplicative inverse, computed as the componentwise reciprocal of the
    /// hat-components.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let report = self.classify(tol);
        if report.is_singular {
            return Err(Error::SingularElement(report));
        }
        let h = self.to_idempotent();
        Ok(IdempotentForm::new(h.h1.inv(), h.h2.inv()).to_bicomplex())
    }

    /// `max(|ẑ₁|, |ẑ₂|) / min(|ẑ₁|, |ẑ₂|)`; infinite on the null cone.
    pub fn condition(&self) -> f64 {
        let h = self.to_idempotent();
        let (m1, m2) = (h.h1.norm(), h.h2.norm());
        let lo = m1.min(m2);
        if lo == 0.0 {
            f64::INFINITY
        } else {
            m1.max(m2) / lo
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::raw(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Largest absolute coefficient difference.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let (x, y) = (self.coeffs(), other.coeffs());
        (0..4).map(|k| (x[k] - y[k]).abs()).fold(0.0, f64::max)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::raw(-self.a, -self.b, -self.c, -self.d)
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, o: Bicomplex) {
        *self = *self + o;
    }
}

impl SubAssign for Bicomplex {
    fn sub_assign(&mut self, o: Bicomplex) {
        *self = *self - o;
    }
}

// (z₁ + ι₂z₂)(u₁ + ι₂u₂) = (z₁u₁ - z₂u₂) + ι₂(z₁u₂ + z₂u₁)
impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, o: Bicomplex) -> Bicomplex {
        let (z1, z2, u1, u2) = (self.z1(), self.z2(), o.z1(), o.z2());
        let p1 = z1 * u1 - z2 * u2;
        let p2 = z1 * u2 + z2 * u1;
        Bicomplex::raw(p1.re, p1.im, p2.re, p2.im)
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, s: f64) -> Bicomplex {
        self.scale(s)
    }
}

impl std::iter::Sum for Bicomplex {
    fn sum<I: Iterator<Item = Bicomplex>>(iter: I) -> Bicomplex {
        iter.fold(Bicomplex::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            fmt_real(self.a),
            fmt_real(self.b),
            fmt_real(self.c),
            fmt_real(self.d)
        )
    }
}

/// Parses the text form `"a b c d"` (whitespace separated, scientific
/// notation accepted).
impl FromStr for Bicomplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "expected four reals \"a b c d\", got {} token(s) in {s:?}",
                parts.len()
            )));
        }
        let mut c = [0.0; 4];
        for (slot, tok) in c.iter_mut().zip(&parts) {
            *slot = tok
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))?;
        }
        Bicomplex::from_coeffs(c)
    }
}

impl Serialize for Bicomplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bicomplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = <[f64; 4]>::deserialize(d)?;
        Bicomplex::from_coeffs(c).map_err(serde::de::Error::custom)
    }
}

/// Coordinates `(ẑ₁, ẑ₂)` of a scalar in the idempotent basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdempotentForm {
    pub h1: Complex64,
    pub h2: Complex64,
}

impl IdempotentForm {
    pub fn new(h1: Complex64, h2: Complex64) -> Self {
        IdempotentForm { h1, h2 }
    }

    /// `z₁ = (ẑ₁ + ẑ₂)/2`, `z₂ = ι₁(ẑ₁ - ẑ₂)/2`.
    pub fn to_bicomplex(&self) -> Bicomplex {
        let z1 = (self.h1 + self.h2) * 0.5;
        let diff = (self.h1 - self.h2) * 0.5;
        let z2 = Complex64::new(-diff.im, diff.re);
        Bicomplex::raw(z1.re, z1.im, z2.re, z2.im)
    }

    /// `√((|ẑ₁|² + |ẑ₂|²)/2)`, equal to the coefficient norm.
    pub fn norm(&self) -> f64 {
        ((self.h1.norm_sqr() + self.h2.norm_sqr()) / 2.0).sqrt()
    }

    pub fn component(&self, k: usize) -> Complex64 {
        match k {
            1 => self.h1,
            2 => self.h2,
            _ => panic!("hat-component index must be 1 or 2, got {k}"),
        }
    }
}

impl Mul for IdempotentForm {
    type Output = IdempotentForm;
    fn mul(self, o: IdempotentForm) -> IdempotentForm {
        IdempotentForm::new(self.h1 * o.h1, self.h2 * o.h2)
    }
}

/// A hyperbolic number `a + d·j`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Hyperbolic {
    pub a: f64,
    pub d: f64,
}

impl Hyperbolic {
    pub fn new(a: f64, d: f64) -> Self {
        Hyperbolic { a, d }
    }

    pub fn to_bicomplex(self) -> Bicomplex {
        Bicomplex::new(self.a, 0.0, 0.0, self.d)
    }
}

impl From<Hyperbolic> for Bicomplex {
    fn from(h: Hyperbolic) -> Self {
        h.to_bicomplex()
    }
}

impl Mul for Hyperbolic {
    type Output = Hyperbolic;
    fn mul(self, o: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.a * o.a + self.d * o.d, self.a * o.d + self.d * o.a)
    }
}

impl Add for Hyperbolic {
    type Output = Hyperbolic;
    fn add(self, o: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.a + o.a, self.d + o.d)
    }
}

/// Result of a null-cone test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub is_singular: bool,
    /// Hat-component indices (1 and/or 2) judged to vanish.
    pub vanishing_components: Vec<u8>,
    /// `(|ẑ₁|, |ẑ₂|)`
    pub magnitudes: [f64; 2],
}

impl SingularityReport {
    /// Component `k` vanishes iff `|ẑ_k| ≤ tol·max(1, √2·|w|)`; `tol = 0` is
    /// an exact test.
    pub fn of(w: &Bicomplex, tol: f64) -> Self {
        let h = w.to_idempotent();
        let magnitudes = [h.h1.norm(), h.h2.norm()];
        let threshold = tol * (std::f64::consts::SQRT_2 * w.norm()).max(1.0);
        let vanishing_components: Vec<u8> = (0..2)
            .filter(|&k| magnitudes[k] <= threshold)
            .map(|k| k as u8 + 1)
            .collect();
        SingularityReport {
            is_singular: !vanishing_components.is_empty(),
            vanishing_components,
            magnitudes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn idempotent_identities_are_exact() {
        let (e1, e2) = (Bicomplex::E1, Bicomplex::E2);
        assert_eq!(e1 * e1, e1);
        assert_eq!(e2 * e2, e2);
        assert_eq!(e1 * e2, Bicomplex::ZERO);
        assert_eq!(e1 + e2, Bicomplex::ONE);
        assert_eq!(Bicomplex::J * Bicomplex::J, Bicomplex::ONE);
        assert_eq!(Bicomplex::I1 * Bicomplex::I2, Bicomplex::J);
        assert_eq!(Bicomplex::I1 * Bicomplex::I1, -Bicomplex::ONE);
        assert_eq!(Bicomplex::I2 * Bicomplex::I2, -Bicomplex::ONE);
    }

    #[test]
    fn hat_components_of_basis_elements() {
        assert_eq!(Bicomplex::J.to_idempotent(), IdempotentForm::new(c(1.0, 0.0), c(-1.0, 0.0)));
        assert_eq!(Bicomplex::E1.to_idempotent(), IdempotentForm::new(c(1.0, 0.0), c(0.0, 0.0)));
        assert_eq!(Bicomplex::E2.to_idempotent(), IdempotentForm::new(c(0.0, 0.0), c(1.0, 0.0)));
    }

    #[test]
    fn hat_components_multiply_componentwise() {
        // (1 + ι₂)·j = j + ι₂j = j - ι₁, expanded by hand from the
        // multiplication table: ι₂·ι₁ι₂ = ι₁ι₂² = -ι₁.
        let w = Bicomplex::new(1.0, 0.0, 1.0, 0.0);
        let v = Bicomplex::J;
        let prod = w * v;
        assert_eq!(prod, Bicomplex::new(0.0, -1.0, 0.0, 1.0));
        assert_eq!(prod.to_idempotent(), w.to_idempotent() * v.to_idempotent());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(Bicomplex::new(1.0, 1.0, 1.0, 1.0).norm(), 2.0);
        assert!((Bicomplex::E1.norm() - FRAC_1_SQRT_2).abs() < 1e-16);
        assert_eq!(Bicomplex::ZERO.norm(), 0.0);
    }

    #[test]
    fn idempotent_norm_examples() {
        let h = IdempotentForm::new(c(1.0, 0.0), c(0.0, 0.0));
        assert!((h.norm() - FRAC_1_SQRT_2).abs() < 1e-16);
        assert_eq!(IdempotentForm::new(c(1.0, 0.0), c(1.0, 0.0)).norm(), 1.0);
        let h = IdempotentForm::new(c(3.0, 0.0), c(4.0, 0.0));
        assert!((h.norm() - (12.5f64).sqrt()).abs() < 1e-15);
        assert!((h.norm() - h.to_bicomplex().norm()).abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let r = Bicomplex::E1.classify(0.0);
        assert!(r.is_singular);
        assert_eq!(r.vanishing_components, vec![2]);
        assert!(!Bicomplex::ONE.classify(0.0).is_singular);
        let r = Bicomplex::new(1.0, 0.0, 0.0, 1.0).classify(0.0);
        assert!(r.is_singular);
        assert_eq!(r.vanishing_components, vec![2]);
        assert_eq!(Bicomplex::ZERO.classify(0.0).vanishing_components, vec![1, 2]);
    }

    #[test]
    fn classify_tolerance_is_scale_invariant() {
        let w = Bicomplex::E1 + Bicomplex::E2.scale(1e-14);
        assert!(!w.classify(0.0).is_singular);
        assert!(w.classify(DEFAULT_SINGULAR_TOL).is_singular);
        let big = w.scale(1e6);
        assert!(big.classify(DEFAULT_SINGULAR_TOL).is_singular);
    }

    #[test]
    fn inverse_examples() {
        let w = Bicomplex::E1.scale(2.0) + Bicomplex::E2;
        let inv = w.inverse(0.0).unwrap();
        assert!(inv.max_coeff_diff(&(Bicomplex::E1.scale(0.5) + Bicomplex::E2)) < 1e-16);
        assert_eq!(Bicomplex::J.inverse(0.0).unwrap(), Bicomplex::J);
        match Bicomplex::E1.inverse(0.0) {
            Err(Error::SingularElement(r)) => assert_eq!(r.vanishing_components, vec![2]),
            other => panic!("expected SingularElement, got {other:?}"),
        }
    }

    #[test]
    fn submultiplicative_bound_is_attained_at_e1() {
        let e1 = Bicomplex::E1;
        let ratio = (e1 * e1).norm() / (e1.norm() * e1.norm());
        assert!((ratio - SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn text_round_trip() {
        let w: Bicomplex = "1.5 -2e-3 0 3.25E2".parse().unwrap();
        assert_eq!(w.coeffs(), [1.5, -2e-3, 0.0, 325.0]);
        assert_eq!(w.to_string().parse::<Bicomplex>().unwrap(), w);
        assert!("1 2 3".parse::<Bicomplex>().is_err());
        assert!("1 2 3 nan".parse::<Bicomplex>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let w = Bicomplex::new(0.1, -1.0 / 3.0, 1e-300, 7.0);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<Bicomplex>(&s).unwrap(), w);
        assert!(serde_json::from_str::<Bicomplex>("[1, 2, 3]").is_err());
    }

    #[test]
    #[should_panic]
    fn constructor_rejects_nan() {
        let _ = Bicomplex::new(f64::NAN, 0.0, 0.0, 0.0);
    }

    #[test]
    fn hyperbolic_embeds() {
        let h = Hyperbolic::new(2.0, 3.0);
        let g = Hyperbolic::new(-1.0, 0.5);
        assert_eq!(Bicomplex::from(h * g), Bicomplex::from(h) * Bicomplex::from(g));
        assert_eq!(Bicomplex::from(Hyperbolic::new(0.0, 1.0)), Bicomplex::J);
    }
}
