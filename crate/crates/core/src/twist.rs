//! The twist map `κ_w` as a substitution `φ_{V_k} ↦ φ′_{V_k}` on the cluster of `V`,
//! and the identity `κ_w(φ_X) = φ_{Ω_w(X)} / φ_{P(X)}` on the chart `x_i(t)`.

use crate::arith::frac::Frac;
use crate::arith::{Laurent, Q};
use crate::chamber::{phi_evaluate, twisted_minor};
use crate::character::{Tilting, TiltingContext};
use crate::cw::CwContext;
use crate::error::{Error, Result};
use crate::rep::module::Rep;

/// The images `φ′_{V_k}(x_i(t))` of the cluster variables of `V`.
#[derive(Clone, Debug)]
pub struct TwistMap {
    pub images: Vec<Laurent>,
}

impl TwistMap {
    /// Twist images of the summands of `t`, evaluated on the chart of `ctx`.
    pub fn for_tilting(ctx: &CwContext, t: &Tilting) -> Result<TwistMap> {
        let images = t
            .summands
            .iter()
            .map(|s| twist_rhs(ctx, s)?.to_laurent().ok_or_else(|| Error::Invalid("a twist image is not a Laurent polynomial on the chart".into())))
            .collect::<Result<_>>()?;
        Ok(TwistMap { images })
    }

    /// The twisted minors of `ctx` itself.
    pub fn new(ctx: &CwContext) -> Result<TwistMap> {
        let images = (1..=ctx.r()).map(|k| Ok(twisted_minor(ctx, k)?.value)).collect::<Result<_>>()?;
        Ok(TwistMap { images })
    }

    /// Applies `κ` to an expression in the cluster variables `x_1, …, x_r`.
    pub fn apply(&self, expr: &Laurent) -> Result<Laurent> {
        expr.substitute(&self.images)
    }
}

/// `κ(φ_X)(x_i(t))`, obtained from the expansion of `φ_X` in the cluster of `tc`.
pub fn kappa_of_module(ctx: &CwContext, tc: &TiltingContext, map: &TwistMap, x: &Rep<Q>) -> Result<Laurent> {
    let data = tc.character_data(&ctx.algebra, x)?;
    map.apply(&tc.theta(&data)?)
}

/// `φ_{Ω_w(X)} / φ_{P(X)}` on `x_i(t)`.
pub fn twist_rhs(ctx: &CwContext, x: &Rep<Q>) -> Result<Frac> {
    let (ap, omega) = ctx.projective_cover(x)?;
    let num = Frac::from(phi_evaluate(ctx, &omega)?.polynomial);
    let den = Frac::from(phi_evaluate(ctx, &ap.source)?.polynomial);
    Ok(num.mul(&den.inv()?))
}

/// Both sides of the twist identity for one module.
#[derive(Clone, Debug)]
pub struct TwistCheck {
    pub kappa: Laurent,
    pub expected: Frac,
}

impl TwistCheck {
    pub fn holds(&self) -> bool {
        Frac::from(self.kappa.clone()) == self.expected
    }
}

pub fn verify_twist_identity(ctx: &CwContext, tc: &TiltingContext, map: &TwistMap, x: &Rep<Q>) -> Result<TwistCheck> {
    Ok(TwistCheck { kappa: kappa_of_module(ctx, tc, map, x)?, expected: twist_rhs(ctx, x)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chamber::t_vars;
    use crate::weyl::{CartanData, ReducedWord};

    #[test]
    fn twist_of_v1_and_projectives() {
        let c = CartanData::type_a(3);
        let w = ReducedWord::validate(&c, &[1, 2, 1, 3, 2, 1]).unwrap();
        let ctx = CwContext::preprojective(&c, &w).unwrap();
        let tc = TiltingContext::new(ctx.quiver(), Tilting::v_of(&ctx)).unwrap();
        let map = TwistMap::new(&ctx).unwrap();
        let k1 = kappa_of_module(&ctx, &tc, &map, ctx.vk(1)).unwrap();
        assert_eq!(k1, Laurent::parse(&t_vars(6), "t1^-1").unwrap());
        for k in [3, 5, 6] {
            let chk = verify_twist_identity(&ctx, &tc, &map, ctx.vk(k)).unwrap();
            assert!(chk.holds());
            let phi = phi_evaluate(&ctx, ctx.vk(k)).unwrap().polynomial;
            assert!(chk.kappa.mul(&phi).is_one());
        }
        assert!(map.apply(&Laurent::one(&crate::arith::laurent::var_names("x", 6))).unwrap().is_one());
    }
}
