//! Twisted rows of the example table.

use super::{jminus, jplus, jq_from_orientation, twist_action, TwistError};
use crate::action::catalog::{hu_action, monomial, term, CatalogAction};
use crate::action::{adjoint_action, ActionSpec, Elem, GeneratorOperator, QPoly};
use crate::hopf::catalog as hc;
use crate::hopf::{hopf_iso_check, CartanData, GeneratorMap, HopfPresentation, IsoReport};
use crate::ncalg::GPoly;
use crate::scalars::CycNum;

/// u_q(gl_n) on A_{q^{-1}}: g_i·z_j = q^{-δ_ij}z_j, e_i·z_i = z_{i+1}, f_i·z_{i+1} = z_i.
pub fn hu_action_reversed(n: usize, m: u32) -> Result<ActionSpec<QPoly>, TwistError> {
    let h = hc::uq_gln(n, m)?;
    let q = h.smash.zeta(1);
    let target = QPoly::quantum_plane(n, &q.inv().unwrap());
    let unit = |i: usize| {
        let mut e = vec![0; n];
        e[i] = 1;
        e
    };
    let mut ops = Vec::new();
    for i in 0..n {
        let images = (0..n).map(|j| if i == j { term(q.inv().unwrap(), &unit(j)) } else { monomial(&unit(j)) }).collect();
        ops.push(GeneratorOperator::Automorphism { images });
    }
    for (k, x) in h.skew.iter().enumerate() {
        let mut images = vec![Elem::new(); n];
        if k < n - 1 {
            images[k] = monomial(&unit(k + 1));
        } else {
            let i = k - (n - 1);
            images[i + 1] = monomial(&unit(i));
        }
        ops.push(GeneratorOperator::SkewDerivation { left: x.left.clone(), right: x.right.clone(), images });
    }
    Ok(ActionSpec::new(h, target, ops)?)
}

/// u_q(gl_n)^{J⁺} on (A_q)_{J⁺} = k[z₁, …, z_n].
pub fn gln_jplus_action(n: usize, m: u32) -> Result<ActionSpec<QPoly>, TwistError> {
    twist_action(&hu_action(n, m)?, &jplus(n, m)?)
}

/// u_q(gl_n)^{J⁻} on (A_{q^{-1}})_{J⁻} = k[z₁, …, z_n] with the reversed action.
pub fn gln_jminus_action(n: usize, m: u32) -> Result<ActionSpec<QPoly>, TwistError> {
    twist_action(&hu_action_reversed(n, m)?, &jminus(n, m)?)
}

/// Adjoint-type Borel part twisted by J_Q, acting on (A_{q,Q})_{J_Q} = k[z₁, …, z_r].
pub fn adjoint_borel_twisted_action(cartan: &CartanData, m: u32) -> Result<ActionSpec<QPoly>, TwistError> {
    let b = hc::adjoint_borel(cartan, m)?;
    twist_action(&adjoint_action(&b)?, &jq_from_orientation(cartan, m)?)
}

/// Twisted rows: u_q(gl₃)^{J±} at m = 5 and adjoint Borel parts of A₁, A₂ at m = 3, 5.
pub fn twisted_table() -> Result<Vec<CatalogAction>, TwistError> {
    let mut out = Vec::new();
    out.push(CatalogAction { label: "u_q(gl3)^J+, m=5".into(), action: gln_jplus_action(3, 5)?, denominators: Some(vec![5; 3]) });
    out.push(CatalogAction { label: "u_q(gl3)^J-, m=5".into(), action: gln_jminus_action(3, 5)?, denominators: Some(vec![5; 3]) });
    for r in [1, 2] {
        for m in [3, 5] {
            out.push(CatalogAction {
                label: format!("u~_q^+(A{r})^JQ, m={m}"),
                action: adjoint_borel_twisted_action(&CartanData::type_a(r), m)?,
                denominators: Some(vec![m; r]),
            });
        }
    }
    Ok(out)
}

/// A candidate Hopf isomorphism φ: source → target with an inverse on generators.
/// `twist` holds (H, J, J⁻¹) when the target is H^J and coproducts are taken as J⁻¹ΔJ in H.
pub struct IsoCase {
    pub label: String,
    pub source: HopfPresentation,
    pub target: HopfPresentation,
    pub map: GeneratorMap,
    pub inverse: GeneratorMap,
    pub twist: Option<(HopfPresentation, crate::ncalg::Tensor, crate::ncalg::Tensor)>,
}

impl IsoCase {
    pub fn check(&self) -> IsoReport {
        match &self.twist {
            Some((h, j, ji)) => {
                let raw = |p: &GPoly| super::twisted_coproduct_raw(h, j, ji, p);
                hopf_iso_check(&self.map, &self.source, &self.target, Some(&raw), Some(&self.inverse))
            }
            None => hopf_iso_check(&self.map, &self.source, &self.target, None, Some(&self.inverse)),
        }
    }
}

fn q_minus_qinv(h: &HopfPresentation) -> CycNum {
    let q = h.smash.zeta(1);
    q.sub(&q.inv().unwrap())
}

/// K_{q²} → u_q(sl₂): g ↦ k, x ↦ e, y ↦ (q − q^{-1})kf.
pub fn kq_to_sl2(m: u32) -> Result<IsoCase, TwistError> {
    let source = hc::kq(m, 2)?;
    let target = hc::uq_sl2(m, CycNum::one())?;
    let c = q_minus_qinv(&target);
    let (s, s1) = (&target.smash, &source.smash);
    let map = GeneratorMap { group: vec![s.g(&[1])], skew: vec![s.x(0), s.mul(&s.g(&[1]), &s.x(1)).scale(&c)] };
    let inverse =
        GeneratorMap { group: vec![s1.g(&[1])], skew: vec![s1.x(0), s1.mul(&s1.g(&[-1]), &s1.x(1)).scale(&c.inv().unwrap())] };
    Ok(IsoCase { label: format!("K_q^2 -> u_q(sl2), m={m}"), source, target, map, inverse, twist: None })
}

/// u′_{q²}(gl₂) → u_q(gl₂)^{(J⁺)^{-1}}: γ₁ ↦ g₁², γ₂ ↦ g₂^{-2}, x₁ ↦ e g₁, x₂ ↦ (q − q^{-1}) g₂^{-1} f.
pub fn uprime_to_twisted_gl2(m: u32) -> Result<IsoCase, TwistError> {
    let source = hc::uq_prime_gl2(m, 2)?;
    let h = hc::uq_gl2(m)?;
    let sig = jplus(2, m)?.inverse();
    let target = super::twist_presentation(&h, &sig)?;
    let j = super::twist_tensor(&super::TwistElement::from_cocycle(&sig)?);
    let ji = super::twist_tensor(&super::TwistElement::from_cocycle(&sig.inverse())?);
    let c = q_minus_qinv(&h);
    let (s, s1) = (&target.smash, &source.smash);
    let map = GeneratorMap {
        group: vec![s.g(&[2, 0]), s.g(&[0, -2])],
        skew: vec![s.mul(&s.x(0), &s.g(&[1, 0])), s.mul(&s.g(&[0, -1]), &s.x(1)).scale(&c)],
    };
    // g₁ = γ₁^{(m+1)/2}, g₂ = γ₂^{-(m+1)/2}
    let k = (m as i64 + 1) / 2;
    let inverse = GeneratorMap {
        group: vec![s1.g(&[k, 0]), s1.g(&[0, -k])],
        skew: vec![s1.mul(&s1.x(0), &s1.g(&[-k, 0])), s1.mul(&s1.g(&[0, -k]), &s1.x(1)).scale(&c.inv().unwrap())],
    };
    Ok(IsoCase { label: format!("u'_q^2(gl2) -> u_q(gl2)^(J+)^-1, m={m}"), source, target, map, inverse, twist: Some((h, j, ji)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::verify_all;

    #[test]
    fn adjoint_a1_twist_is_commutative() {
        let a = adjoint_borel_twisted_action(&CartanData::type_a(1), 3).unwrap();
        assert!(a.target.is_commutative());
        assert!(verify_all(&a, 4).unwrap().passed());
    }

    #[test]
    fn kq_iso_m3() {
        assert!(kq_to_sl2(3).unwrap().check().passed());
    }
}
