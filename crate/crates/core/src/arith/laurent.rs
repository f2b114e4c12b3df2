//! Exact multivariate Laurent polynomials with rational coefficients.

use super::q::Q;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

/// A Laurent polynomial in an ordered list of named variables.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<i32>, Q>,
}

/// One term of a Laurent polynomial in serialized form: coefficient and exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub exps: Vec<i32>,
}

/// Variable names `prefix1, …, prefixn`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl Laurent {
    pub fn zero(vars: &[String]) -> Laurent {
        Laurent { vars: Arc::new(vars.to_vec()), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Laurent {
        Laurent { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Q) -> Laurent {
        let mut p = Laurent::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[String]) -> Laurent {
        Laurent::constant(vars, Q::one())
    }

    pub fn one_like(&self) -> Laurent {
        self.monomial_like(vec![0; self.nvars()], Q::one())
    }

    pub fn var(vars: &[String], i: usize) -> Laurent {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Laurent::monomial(vars, e, Q::one())
    }

    pub fn monomial(vars: &[String], exps: Vec<i32>, c: Q) -> Laurent {
        assert_eq!(exps.len(), vars.len(), "exponent length mismatch");
        let mut p = Laurent::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn monomial_like(&self, exps: Vec<i32>, c: Q) -> Laurent {
        assert_eq!(exps.len(), self.nvars());
        let mut p = self.zero_like();
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Vec<i32>, Q)>) -> Laurent {
        let mut p = Laurent::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The single term of a monomial.
    pub fn as_monomial(&self) -> Option<(&Vec<i32>, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn coeff(&self, exps: &[i32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, e: Vec<i32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_vars(&self, o: &Laurent) {
        assert!(Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars, "variable lists differ: {:?} vs {:?}", self.vars, o.vars);
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        self.check_vars(o);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Laurent {
        Laurent { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Q) -> Laurent {
        if c.is_zero() {
            return self.zero_like();
        }
        Laurent { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        self.check_vars(o);
        let mut r = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &[i32]) -> Laurent {
        Laurent {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// Integer power; negative powers are allowed for monomials only.
    pub fn pow(&self, n: i32) -> Result<Laurent> {
        if n < 0 {
            let (e, c) = self.as_monomial().ok_or(Error::NegativeExponentOnNonUnit)?;
            return Ok(self.monomial_like(e.iter().map(|x| x * n).collect(), c.pow(n)));
        }
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Componentwise minimum exponent (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(v) => v.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars()])
    }

    pub fn max_exponents(&self) -> Vec<i32> {
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(v) => v.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars()])
    }

    /// Whether all exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Exact quotient `self / d`, or an error if `d` does not divide `self` in the Laurent ring.
    pub fn exact_div(&self, d: &Laurent) -> Result<Laurent> {
        self.check_vars(d);
        if d.is_zero() {
            return Err(Error::Invalid("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if let Some((e, c)) = d.as_monomial() {
            let inv: Vec<i32> = e.iter().map(|x| -x).collect();
            return Ok(self.shift(&inv).scale(&c.inv()));
        }
        let md = d.min_exponents();
        let mp = self.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let d0 = d.shift(&neg(&md));
        let mut rem = self.shift(&neg(&mp));
        let (ld, lc) = d0.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let lc_inv = lc.inv();
        let mut quot = self.zero_like();
        while let Some((le, lcoef)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let diff: Vec<i32> = le.iter().zip(&ld).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x < 0) {
                return Err(Error::NegativeExponentOnNonUnit);
            }
            let c = &lcoef * &lc_inv;
            let t = d0.shift(&diff).scale(&c);
            rem = rem.sub(&t);
            quot.add_term(diff, c);
        }
        let back: Vec<i32> = mp.iter().zip(&md).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&back))
    }

    /// Ring homomorphism sending variable `i` to `assignment[i]`.
    ///
    /// Negative powers of non-monomial images are handled by clearing
    /// denominators and dividing exactly.
    pub fn substitute(&self, assignment: &[Laurent]) -> Result<Laurent> {
        assert_eq!(assignment.len(), self.nvars(), "assignment length mismatch");
        let target = assignment.first().map(|a| a.vars.clone());
        let Some(target) = target else {
            return Ok(self.clone());
        };
        let zero = Laurent { vars: target.clone(), terms: BTreeMap::new() };
        let minexp = self.min_exponents();
        let shift: Vec<i32> =
            (0..self.nvars()).map(|i| if assignment[i].is_monomial() { 0 } else { (-minexp[i]).max(0) }).collect();
        let mut cache: HashMap<(usize, i32), Laurent> = HashMap::new();
        let mut power = |i: usize, e: i32| -> Result<Laurent> {
            if let Some(v) = cache.get(&(i, e)) {
                return Ok(v.clone());
            }
            let v = assignment[i].pow(e)?;
            cache.insert((i, e), v.clone());
            Ok(v)
        };
        let mut num = zero.clone();
        for (e, c) in &self.terms {
            let mut t = Laurent::constant(&target, c.clone());
            for i in 0..e.len() {
                let ei = e[i] + shift[i];
                if ei != 0 {
                    t = t.mul(&power(i, ei)?);
                }
            }
            num = num.add(&t);
        }
        if shift.iter().all(|&s| s == 0) {
            return Ok(num);
        }
        let mut den = Laurent::one(&target);
        for (i, &s) in shift.iter().enumerate() {
            if s > 0 {
                den = den.mul(&power(i, s)?);
            }
        }
        num.exact_div(&den)
    }

    /// Re-expresses this polynomial over another variable list containing all its variables.
    pub fn embed(&self, vars: &[String]) -> Result<Laurent> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).ok_or_else(|| Error::Invalid(format!("variable {v} missing"))))
            .collect::<Result<_>>()?;
        let mut out = Laurent::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (k, &x) in e.iter().enumerate() {
                ne[idx[k]] += x;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Serializable list of terms in descending exponent order.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms.iter().rev().map(|(e, c)| TermRecord { coeff: c.to_string(), exps: e.clone() }).collect()
    }

    pub fn from_records(vars: &[String], recs: &[TermRecord]) -> Result<Laurent> {
        let mut p = Laurent::zero(vars);
        for r in recs {
            if r.exps.len() != vars.len() {
                return Err(Error::ParseError(format!("term has {} exponents, expected {}", r.exps.len(), vars.len())));
            }
            p.add_term(r.exps.clone(), parse_rational(&r.coeff)?);
        }
        Ok(p)
    }

    /// Parses expressions such as `t3*t2^3*t1^4 + 2*t4*t3^-1 - 1/2`.
    pub fn parse(vars: &[String], s: &str) -> Result<Laurent> {
        let mut p = Laurent::zero(vars);
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::ParseError("empty expression".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let chars: Vec<char> = cleaned.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            let after_caret = i > 0 && chars[i - 1] == '^';
            if (ch == '+' || ch == '-') && !after_caret {
                if !cur.is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if !cur.is_empty() {
            terms.push((neg, cur));
        }
        for (neg, t) in terms {
            let mut coeff = Q::one();
            let mut exps = vec![0; vars.len()];
            for factor in t.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<i32>().map_err(|_| Error::ParseError(format!("bad exponent in {factor}")))?),
                    None => (factor, 1),
                };
                if let Some(k) = vars.iter().position(|v| v == base) {
                    exps[k] += exp;
                } else {
                    coeff = &coeff * &parse_rational(base)?.pow(exp);
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }
}

/// Parses `a` or `a/b` into a rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::ParseError(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.parse().map_err(|_| bad())?;
            let b: i64 = b.parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(Q::new(a, b))
        }
        None => s.parse::<i64>().map(Q::from_int).map_err(|_| bad()),
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (k, &x) in e.iter().enumerate().rev() {
                match x {
                    0 => {}
                    1 => factors.push(self.vars[k].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[k], x)),
                }
            }
            let negative = c.is_negative();
            let abs = c.abs();
            let body = if factors.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", abs, factors.join("*"))
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
            } else {
                write!(f, " {} {body}", if negative { "-" } else { "+" })?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize) -> Vec<String> {
        var_names("t", n)
    }

    #[test]
    fn unit_cancellation() {
        let v = t(1);
        let x = Laurent::var(&v, 0);
        let xi = x.pow(-1).unwrap();
        assert!(x.mul(&xi).is_one());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let v = t(4);
        let p = Laurent::parse(&v, "t3*t2^3*t1^4 + t4*t3*t2^2*t1^4 - 1/2*t1^-1").unwrap();
        let q = Laurent::parse(&v, &p.to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn exact_division_of_exchange_binomial() {
        let v = t(2);
        let num = Laurent::parse(&v, "t1^2 + 2*t1*t2 + t2^2").unwrap();
        let den = Laurent::parse(&v, "t1 + t2").unwrap();
        assert_eq!(num.exact_div(&den).unwrap(), den);
        let bad = Laurent::parse(&v, "t1 + 1").unwrap();
        assert!(num.exact_div(&bad).is_err());
    }

    #[test]
    fn substitution_clears_denominators() {
        let v = t(2);
        let p = Laurent::parse(&v, "t1^2*t2^-1").unwrap();
        let x = Laurent::parse(&v, "t1 + t2").unwrap();
        let y = Laurent::parse(&v, "t1 + t2").unwrap();
        assert_eq!(p.substitute(&[x.clone(), y]).unwrap(), x);
        let z = Laurent::parse(&v, "t1 + 1").unwrap();
        assert!(matches!(p.substitute(&[Laurent::var(&v, 0), z]), Err(Error::NegativeExponentOnNonUnit)));
    }
}
