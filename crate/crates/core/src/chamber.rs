//! The functions `φ_X` evaluated on the chart `x_i(t)`, twisted minors and the
//! Chamber Ansatz coordinates.

use crate::arith::laurent::var_names;
use crate::arith::{CountingProfile, Laurent, Q};
use crate::counting::{build_y_module, dmap_inverse, flag_profiles, grassmannian_profiles, weights};
use crate::cw::{minimal_right_approximation, CwContext};
use crate::error::{Error, Result};
use crate::rep::module::Rep;
use crate::weyl::a_minus_of_vk;
use std::collections::BTreeMap;

/// Variable names `t1, …, tr` of the chart `x_i(t)`.
pub fn t_vars(r: usize) -> Vec<String> {
    var_names("t", r)
}

/// `φ_X(x_i(t)) = Σ_a χ(F_{i,a,X}) t^a` together with the strata it was assembled from.
#[derive(Clone, Debug)]
pub struct PhiEvaluation {
    pub polynomial: Laurent,
    /// Counting profile of each nonempty stratum, keyed by the weight `a` in index order.
    pub strata: BTreeMap<Vec<usize>, CountingProfile>,
}

impl PhiEvaluation {
    pub fn is_monomial(&self) -> bool {
        self.polynomial.is_monomial()
    }
}

fn assemble(r: usize, strata: BTreeMap<Vec<usize>, CountingProfile>) -> Result<PhiEvaluation> {
    let vars = t_vars(r);
    let mut poly = Laurent::zero(&vars);
    for (a, prof) in &strata {
        let chi = prof.euler_char.ok_or_else(|| Error::NotPolynomialCount(format!("stratum {a:?}")))?;
        if chi != 0 {
            let exps = a.iter().map(|&e| e as i32).collect();
            poly = poly.add(&Laurent::monomial(&vars, exps, Q::from_int(chi)));
        }
    }
    Ok(PhiEvaluation { polynomial: poly, strata })
}

/// Evaluates `φ_X` on `x_i(t)` through the quiver Grassmannians of `Y`.
///
/// Each dimension vector `f` of a subrepresentation of `Y` corresponds to the weight
/// `a = d_{i,X}^{-1}(f)`.
pub fn phi_evaluate(ctx: &CwContext, x: &Rep<Q>) -> Result<PhiEvaluation> {
    let q = ctx.quiver();
    let (_, a_minus) = weights(q, &ctx.word, x)?;
    let y = build_y_module(q, &ctx.word, x)?;
    let mut strata = BTreeMap::new();
    for (f, prof) in grassmannian_profiles(&y.quiver, &y.rep)? {
        let fi: Vec<i64> = f.iter().map(|&v| v as i64).collect();
        strata.insert(dmap_inverse(&ctx.word, &a_minus, &fi)?, prof);
    }
    assemble(ctx.r(), strata)
}

/// Evaluates `φ_X` on `x_i(t)` by counting partial composition series directly.
pub fn phi_evaluate_by_flags(ctx: &CwContext, x: &Rep<Q>) -> Result<PhiEvaluation> {
    assemble(ctx.r(), flag_profiles(ctx, x)?)
}

/// A monomial `c t^e` extracted from an evaluation.
fn single_monomial(p: &Laurent, what: &str) -> Result<Vec<i32>> {
    match p.as_monomial() {
        Some((e, c)) if *c == Q::from_int(1) => Ok(e.clone()),
        _ => Err(Error::NotAMonomial(format!("{what} evaluates to {p}"))),
    }
}

/// Whether `X` lies in `add(T)` for a rigid `T`: its minimal right `add(T)`-approximation is an isomorphism.
pub fn in_add(ctx: &CwContext, summands: &[Rep<Q>], x: &Rep<Q>) -> bool {
    let ap = minimal_right_approximation(ctx.quiver(), summands, x);
    ap.surjective && ap.source.dims == x.dims
}

/// The twisted minor `φ′_k = φ_{Ω_w(V_k)} / φ_{P(V_k)}` on `x_i(t)`, as a Laurent monomial.
#[derive(Clone, Debug)]
pub struct TwistedMinor {
    pub k: usize,
    pub numerator: Laurent,
    pub denominator: Laurent,
    pub value: Laurent,
    /// Whether the value equals `t^{-a⁻(V_k)}` computed from the word alone.
    pub matches_word_formula: bool,
}

pub fn twisted_minor(ctx: &CwContext, k: usize) -> Result<TwistedMinor> {
    let (ap, omega) = ctx.projective_cover(ctx.vk(k))?;
    let num = phi_evaluate(ctx, &omega)?.polynomial;
    let den = phi_evaluate(ctx, &ap.source)?.polynomial;
    let en = single_monomial(&num, &format!("φ of Ω(V_{k})"))?;
    let ed = single_monomial(&den, &format!("φ of P(V_{k})"))?;
    let exps: Vec<i32> = en.iter().zip(&ed).map(|(a, b)| a - b).collect();
    let value = Laurent::monomial(&t_vars(ctx.r()), exps.clone(), Q::from_int(1));
    let matches_word_formula = match &ctx.cartan {
        Some(c) => a_minus_of_vk(c, &ctx.word, k).iter().zip(&exps).all(|(&a, &e)| e as i64 == -a),
        None => false,
    };
    Ok(TwistedMinor { k, numerator: num, denominator: den, value, matches_word_formula })
}

/// Exponents of `C_{i,k}` as a Laurent monomial in `φ′_1, …, φ′_r`.
pub fn chamber_exponents(ctx: &CwContext, k: usize) -> Result<Vec<i32>> {
    let cartan = ctx.cartan.as_ref().ok_or_else(|| Error::UnsupportedAlgebraClass("the Chamber Ansatz needs a Cartan datum".into()))?;
    let w = &ctx.word;
    let mut e = vec![0i32; ctx.r()];
    let ik = w.letter(k);
    e[k - 1] -= 1;
    let km = w.minus(k);
    if km > 0 {
        e[km - 1] -= 1;
    }
    for j in 0..w.n() {
        let s = w.minus_of_letter(k, j);
        let qq = cartan.q(ik, j) as i32;
        if s > 0 && qq > 0 {
            e[s - 1] += qq;
        }
    }
    Ok(e)
}

/// `C_{i,k}` written in the variables `p1, …, pr` standing for `φ′_1, …, φ′_r`.
pub fn chamber_symbolic(ctx: &CwContext, k: usize) -> Result<Laurent> {
    Ok(Laurent::monomial(&var_names("p", ctx.r()), chamber_exponents(ctx, k)?, Q::from_int(1)))
}

/// The Chamber Ansatz coordinates with their values on `x_i(t)`.
#[derive(Clone, Debug)]
pub struct ChamberReport {
    pub minors: Vec<TwistedMinor>,
    pub symbolic: Vec<Laurent>,
    pub values: Vec<Laurent>,
}

impl ChamberReport {
    /// Indices `k` with `C_{i,k}(x_i(t)) ≠ t_k`.
    pub fn failures(&self) -> Vec<usize> {
        let vars = t_vars(self.values.len());
        (1..=self.values.len()).filter(|&k| self.values[k - 1] != Laurent::var(&vars, k - 1)).collect()
    }
}

pub fn chamber_coordinates(ctx: &CwContext) -> Result<ChamberReport> {
    let minors: Vec<TwistedMinor> = (1..=ctx.r()).map(|k| twisted_minor(ctx, k)).collect::<Result<_>>()?;
    let assignment: Vec<Laurent> = minors.iter().map(|m| m.value.clone()).collect();
    let mut symbolic = Vec::new();
    let mut values = Vec::new();
    for k in 1..=ctx.r() {
        let c = chamber_symbolic(ctx, k)?;
        values.push(c.substitute(&assignment)?);
        symbolic.push(c);
    }
    Ok(ChamberReport { minors, symbolic, values })
}

/// Checks `C_{i,k}(x_i(t)) = t_k` for every `k`.
pub fn verify_chamber(ctx: &CwContext) -> Result<ChamberReport> {
    let rep = chamber_coordinates(ctx)?;
    if let Some(k) = rep.failures().first() {
        return Err(Error::VerificationFailed(format!("C_{k} evaluates to {}", rep.values[k - 1])));
    }
    Ok(rep)
}

/// `Σ_a χ(F_{i,a,X}) C^a` with each `C_{i,k}` replaced by its value on `x_i(t)`.
pub fn expand_in_chamber(report: &ChamberReport, phi: &PhiEvaluation) -> Result<Laurent> {
    phi.polynomial.substitute(&report.values)
}

/// Outcome of the monomial criterion for one module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCheck {
    pub monomial: bool,
    pub in_add_w: bool,
}

impl MonomialCheck {
    pub fn consistent(&self) -> bool {
        self.monomial == self.in_add_w
    }
}

/// `φ_X(x_i(t))` is a monomial exactly when `X ∈ add(W_i)`.
pub fn verify_monomial_criterion(ctx: &CwContext, x: &Rep<Q>) -> Result<MonomialCheck> {
    let phi = phi_evaluate(ctx, x)?;
    let w = ctx.w.as_ref().ok_or_else(|| Error::UnsupportedAlgebraClass("W modules need a preprojective algebra".into()))?;
    Ok(MonomialCheck { monomial: phi.is_monomial(), in_add_w: in_add(ctx, w, x) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QQ;
    use crate::weyl::{CartanData, ReducedWord};

    fn a3() -> CwContext {
        let c = CartanData::type_a(3);
        let w = ReducedWord::validate(&c, &[1, 2, 1, 3, 2, 1]).unwrap();
        CwContext::preprojective(&c, &w).unwrap()
    }

    fn parse(s: &str) -> Laurent {
        Laurent::parse(&t_vars(6), s).unwrap()
    }

    #[test]
    fn phi_of_v_and_w() {
        let ctx = a3();
        assert_eq!(phi_evaluate(&ctx, ctx.vk(1)).unwrap().polynomial, parse("t6 + t4 + t1"));
        assert_eq!(phi_evaluate(&ctx, ctx.vk(2)).unwrap().polynomial, parse("t5*t4 + t5*t1 + t2*t1"));
        assert_eq!(phi_evaluate(&ctx, ctx.wk(1).unwrap()).unwrap().polynomial, parse("t3*t2"));
        let by_flags = phi_evaluate_by_flags(&ctx, ctx.vk(2)).unwrap();
        assert_eq!(by_flags.polynomial, parse("t5*t4 + t5*t1 + t2*t1"));
        let zero = Rep::zero(&QQ, ctx.quiver());
        assert_eq!(phi_evaluate(&ctx, &zero).unwrap().polynomial, parse("1"));
    }

    #[test]
    fn chamber_ansatz_on_a3() {
        let ctx = a3();
        let rep = verify_chamber(&ctx).unwrap();
        assert_eq!(rep.minors[3].value, Laurent::parse(&t_vars(6), "t4^-1*t2^-1").unwrap());
        assert_eq!(rep.minors[5].value, Laurent::parse(&t_vars(6), "t6^-1*t5^-1*t3^-1").unwrap());
        assert!(rep.minors.iter().all(|m| m.matches_word_formula));
        let p = var_names("p", 6);
        assert_eq!(rep.symbolic[4], Laurent::parse(&p, "p4*p3*p5^-1*p2^-1").unwrap());
        assert_eq!(rep.symbolic[0], Laurent::parse(&p, "p1^-1").unwrap());
    }

    #[test]
    fn monomial_criterion() {
        let ctx = a3();
        let w1 = verify_monomial_criterion(&ctx, ctx.wk(1).unwrap()).unwrap();
        assert_eq!(w1, MonomialCheck { monomial: true, in_add_w: true });
        let v1 = verify_monomial_criterion(&ctx, ctx.vk(1)).unwrap();
        assert_eq!(v1, MonomialCheck { monomial: false, in_add_w: false });
    }
}
