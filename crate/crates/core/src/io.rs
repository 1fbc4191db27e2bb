//! Text, CSV and JSON encodings.
//!
//! Reals are written with the shortest decimal that parses back to the same
//! `f64` (never more than 17 significant digits), so every printed value
//! round-trips exactly.

use crate::error::{Error, Result};
use crate::scalar::Bicomplex;
use crate::tmodule::TVector;

/// Shortest round-trip decimal; negative zero prints as `0`.
pub fn fmt_real(x: f64) -> String {
    let x = x + 0.0;
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// One `a,b,c,d` row per entry.
pub fn vector_to_csv(x: &TVector) -> String {
    let mut out = String::new();
    for w in x.entries() {
        let [a, b, c, d] = w.coeffs();
        out.push_str(&format!("{},{},{},{}\n", fmt_real(a), fmt_real(b), fmt_real(c), fmt_real(d)));
    }
    out
}

/// Parses `a,b,c,d` rows; blank lines and lines starting with `#` are skipped.
pub fn vector_from_csv(s: &str) -> Result<TVector> {
    let mut entries = Vec::new();
    for (lineno, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!("line {}: expected 4 fields, got {}", lineno + 1, fields.len())));
        }
        let mut c = [0.0; 4];
        for (slot, f) in c.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {f:?}: {e}", lineno + 1)))?;
        }
        entries.push(Bicomplex::from_coeffs(c)?);
    }
    TVector::new(entries)
}

pub fn vector_from_json(s: &str) -> Result<TVector> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// Accepts either encoding, choosing JSON when the text starts with `[`.
pub fn vector_from_str(s: &str) -> Result<TVector> {
    if s.trim_start().starts_with('[') {
        vector_from_json(s)
    } else {
        vector_from_csv(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formatting_examples() {
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(-0.0), "0");
        assert_eq!(fmt_real(0.5), "0.5");
        assert_eq!(fmt_real(-2.0), "-2");
        assert_eq!(fmt_real(1e-300), "1e-300");
        assert_eq!(fmt_real(0.1 + 0.2), "0.30000000000000004");
    }

    #[test]
    fn csv_and_json_agree() {
        let csv = "# header\n1,0,0,0\n0.5, -1e-3, 2, 3\n\n";
        let json = "[[1,0,0,0],[0.5,-0.001,2,3]]";
        assert_eq!(vector_from_str(csv).unwrap(), vector_from_str(json).unwrap());
        assert!(vector_from_csv("1,2,3\n").is_err());
        assert!(vector_from_csv("").is_err());
    }

    proptest! {
        #[test]
        fn reals_round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let back: f64 = fmt_real(x).parse().unwrap();
            prop_assert!(back == x);
        }

        #[test]
        fn vectors_round_trip(coeffs in proptest::collection::vec(-1e6f64..1e6, 4..40)) {
            let n = coeffs.len() / 4;
            let x = TVector::from_real(&coeffs[..4 * n]).unwrap();
            prop_assert_eq!(vector_from_csv(&vector_to_csv(&x)).unwrap(), x.clone());
            prop_assert_eq!(vector_from_json(&serde_json::to_string(&x).unwrap()).unwrap(), x);
        }
    }
}
