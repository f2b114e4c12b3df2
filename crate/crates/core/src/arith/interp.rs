//! Counting polynomials recovered from point counts over prime fields.

use super::q::Q;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Point counts over several primes with the interpolated counting polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingProfile {
    /// Point count for each prime used.
    pub samples: BTreeMap<u64, u64>,
    /// Integer coefficients, lowest degree first; trailing zeros stripped.
    pub counting_polynomial: Option<Vec<i64>>,
    /// Value of the counting polynomial at 1.
    pub euler_char: Option<i64>,
}

impl CountingProfile {
    pub fn polynomial_string(&self) -> Option<String> {
        self.counting_polynomial.as_ref().map(|c| poly_to_string(c))
    }
}

/// Renders an integer polynomial in `q`, highest degree first.
pub fn poly_to_string(c: &[i64]) -> String {
    let mut parts = Vec::new();
    for (d, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let mono = match d {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{d}"),
        };
        let abs = v.unsigned_abs();
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs == 1 {
            mono
        } else {
            format!("{abs}{mono}")
        };
        if parts.is_empty() {
            parts.push(if v < 0 { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if v < 0 { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Lagrange interpolation through the given points; coefficients lowest degree first.
fn lagrange(points: &[(Q, Q)]) -> Vec<Q> {
    let n = points.len();
    let mut coeffs = vec![Q::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Basis polynomial prod_{j≠i} (x - xj)/(xi - xj).
        let mut basis = vec![Q::one()];
        let mut denom = Q::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + b;
                next[k] = &next[k] - &(b * xj);
            }
            basis = next;
            denom = &denom * &(xi - xj);
        }
        let scale = yi / &denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] = &coeffs[k] + &(b * &scale);
        }
    }
    coeffs
}

fn eval(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| &(&acc * x) + c)
}

fn to_integer_coeffs(c: &[Q]) -> Result<Vec<i64>> {
    let mut out: Vec<i64> = c.iter().map(|x| x.to_i64().ok_or(Error::NonIntegerCoefficients)).collect::<Result<_>>()?;
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    Ok(out)
}

/// Interpolates an integer polynomial of degree at most `degree_bound` through the
/// samples at the smallest `degree_bound + 1` primes and validates it on the rest.
pub fn interpolate_counting_polynomial(samples: &BTreeMap<u64, u64>, degree_bound: usize) -> Result<CountingProfile> {
    if samples.len() < degree_bound + 1 {
        return Err(Error::InsufficientSamples { needed: degree_bound + 1, got: samples.len() });
    }
    let pts: Vec<(Q, Q)> = samples.iter().map(|(&p, &n)| (Q::from_int(p as i64), Q::from_int(n as i64))).collect();
    let coeffs = lagrange(&pts[..degree_bound + 1]);
    for (x, y) in &pts[degree_bound + 1..] {
        if &eval(&coeffs, x) != y {
            return Err(Error::NotPolynomialCount(format!("held-out sample at q={x} is {y}, interpolant gives {}", eval(&coeffs, x))));
        }
    }
    let ints = to_integer_coeffs(&coeffs)?;
    let chi: i64 = ints.iter().sum();
    Ok(CountingProfile { samples: samples.clone(), counting_polynomial: Some(ints), euler_char: Some(chi) })
}

/// Smallest-degree fit with `holdout` extra validating samples.
///
/// Returns `Ok(None)` when more samples are needed to decide, and an error when the
/// samples already exceed what `max_degree` allows without any fit.
pub fn interpolate_adaptive(samples: &BTreeMap<u64, u64>, max_degree: usize, holdout: usize) -> Result<Option<CountingProfile>> {
    let n = samples.len();
    for d in 0..=max_degree {
        if n < d + 1 + holdout {
            return Ok(None);
        }
        match interpolate_counting_polynomial(samples, d) {
            Ok(p) => return Ok(Some(p)),
            Err(Error::NotPolynomialCount(_)) | Err(Error::NonIntegerCoefficients) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotPolynomialCount(format!("no polynomial of degree ≤ {max_degree} fits {n} samples")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        v.iter().cloned().collect()
    }

    #[test]
    fn constant_count() {
        let p = interpolate_counting_polynomial(&s(&[(2, 1), (3, 1), (5, 1)]), 0).unwrap();
        assert_eq!(p.counting_polynomial, Some(vec![1]));
        assert_eq!(p.euler_char, Some(1));
    }

    #[test]
    fn mismatched_holdout() {
        let e = interpolate_counting_polynomial(&s(&[(2, 1), (3, 2), (5, 7)]), 1).unwrap_err();
        assert!(matches!(e, Error::NotPolynomialCount(_)));
    }

    #[test]
    fn non_integer_coefficients() {
        let e = interpolate_counting_polynomial(&s(&[(2, 1), (3, 2)]), 1);
        assert_eq!(e.unwrap().counting_polynomial, Some(vec![-1, 1]));
        let e = interpolate_counting_polynomial(&s(&[(2, 1), (3, 1), (5, 2)]), 2).unwrap_err();
        assert_eq!(e, Error::NonIntegerCoefficients);
    }

    #[test]
    fn adaptive_waits_for_holdout() {
        assert_eq!(interpolate_adaptive(&s(&[(2, 5), (3, 7)]), 3, 2).unwrap(), None);
        let p = interpolate_adaptive(&s(&[(2, 5), (3, 7), (5, 11), (7, 15)]), 3, 2).unwrap().unwrap();
        assert_eq!(p.counting_polynomial, Some(vec![1, 2]));
    }
}
