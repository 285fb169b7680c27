//! Explicit actions of the catalog Hopf algebras on polynomial and q-polynomial algebras.

use super::{ActionError, ActionSpec, Elem, GeneratorOperator, QPoly};
use crate::hopf::catalog as hc;
use crate::hopf::HopfPresentation;
use crate::scalars::CycNum;

/// An action together with the invariant powers z_i^{n_i} used to build its field model.
#[derive(Clone, Debug)]
pub struct CatalogAction {
    pub label: String,
    pub action: ActionSpec<QPoly>,
    pub denominators: Option<Vec<u32>>,
}

/// c · z^e as a target element.
pub fn term(c: CycNum, e: &[i64]) -> Elem<CycNum> {
    let mut m = Elem::new();
    if !c.is_zero() {
        m.insert(e.to_vec(), c);
    }
    m
}

pub fn monomial(e: &[i64]) -> Elem<CycNum> {
    term(CycNum::one(), e)
}

fn diag(k: usize, i: usize, c: CycNum) -> Elem<CycNum> {
    let mut e = vec![0; k];
    e[i] = 1;
    term(c, &e)
}

fn auto(images: Vec<Elem<CycNum>>) -> GeneratorOperator<CycNum> {
    GeneratorOperator::Automorphism { images }
}

/// Skew derivation with the (g, g′) tags copied from the presentation.
fn skew(h: &HopfPresentation, x: usize, images: Vec<Elem<CycNum>>) -> GeneratorOperator<CycNum> {
    GeneratorOperator::SkewDerivation { left: h.skew[x].left.clone(), right: h.skew[x].right.clone(), images }
}

/// Grouplikes act trivially and skew primitives by zero.
pub fn trivial_action(h: &HopfPresentation, target: QPoly) -> Result<ActionSpec<QPoly>, ActionError> {
    let k = target.vars.len();
    let id: Vec<Elem<CycNum>> = (0..k).map(|i| diag(k, i, CycNum::one())).collect();
    let mut ops: Vec<_> = (0..h.group_rank()).map(|_| auto(id.clone())).collect();
    for x in 0..h.skew.len() {
        ops.push(skew(h, x, vec![Elem::new(); k]));
    }
    ActionSpec::new(h.clone(), target, ops)
}

/// T(n) on k[z]: g·z = ζ^{-1}z, x·z = 1.
pub fn taft_action(n: u32) -> Result<ActionSpec<QPoly>, ActionError> {
    let h = hc::taft(n)?;
    let ops = vec![auto(vec![term(CycNum::zeta(n, -1), &[1])]), skew(&h, 0, vec![monomial(&[0])])];
    ActionSpec::new(h, QPoly::commutative(&["z"]), ops)
}

/// E(n) on k[z]: g·z = −z, x_i·z = z^{2(i−1)}.
pub fn nichols_e_action(n: u32) -> Result<ActionSpec<QPoly>, ActionError> {
    let h = hc::nichols_e(n)?;
    let mut ops = vec![auto(vec![term(CycNum::from_int(-1), &[1])])];
    for i in 0..n as usize {
        ops.push(skew(&h, i, vec![monomial(&[2 * i as i64])]));
    }
    ActionSpec::new(h, QPoly::commutative(&["z"]), ops)
}

/// h(ζ_n, 1) on k[z]: g·z = ζ^{-1}z, x₁·z = x₂·z = 1 for n ≥ 3.
///
/// For n = 2 the element x₁g + x₂ is (g,1)-skew primitive and kills k[z] under that
/// action, so x₂·z = z² is used instead.
pub fn book_action(n: u32) -> Result<ActionSpec<QPoly>, ActionError> {
    let h = hc::book(n, 1)?;
    let x2 = if n == 2 { monomial(&[2]) } else { monomial(&[0]) };
    let ops = vec![
        auto(vec![term(CycNum::zeta(n, -1), &[1])]),
        skew(&h, 0, vec![monomial(&[0])]),
        skew(&h, 1, vec![x2]),
    ];
    ActionSpec::new(h, QPoly::commutative(&["z"]), ops)
}

/// H₈₁ on k[z]: g·z = ω^{-1}z, x·z = 1, y·z = z³.
pub fn h81_action() -> Result<ActionSpec<QPoly>, ActionError> {
    let h = hc::h81()?;
    let ops = vec![
        auto(vec![term(CycNum::zeta(3, -1), &[1])]),
        skew(&h, 0, vec![monomial(&[0])]),
        skew(&h, 1, vec![monomial(&[3])]),
    ];
    ActionSpec::new(h, QPoly::commutative(&["z"]), ops)
}

/// u_q(sl₂) on k[z]: e·z = 1, f·z = −qz², k·z = q^{-2}z.
pub fn uq_sl2_action(m: u32) -> Result<ActionSpec<QPoly>, ActionError> {
    let h = hc::uq_sl2(m, CycNum::one())?;
    let q = h.smash.zeta(1);
    let ops = vec![
        auto(vec![term(q.pow(-2), &[1])]),
        skew(&h, 0, vec![monomial(&[0])]),
        skew(&h, 1, vec![term(q.neg(), &[2])]),
    ];
    ActionSpec::new(h, QPoly::commutative(&["z"]), ops)
}

/// u_q(gl₂) on k[z, w]: on z as u_q(sl₂) with g₁·z = q^{-1}z, g₂·z = qz; w spans the
/// character g₁, g₂ ↦ q and is killed by e, f. Without w the central g₁g₂ acts trivially.
pub fn uq_gl2_action(m: u32) -> Result<ActionSpec<QPoly>, ActionError> {
    let h = hc::uq_gl2(m)?;
    let q = h.smash.zeta(1);
    let ops = vec![
        auto(vec![term(q.inv().unwrap(), &[1, 0]), term(q.clone(), &[0, 1])]),
        auto(vec![term(q.clone(), &[1, 0]), term(q.clone(), &[0, 1])]),
        skew(&h, 0, vec![monomial(&[0, 0]), Elem::new()]),
        skew(&h, 1, vec![term(q.neg(), &[2, 0]), Elem::new()]),
    ];
    ActionSpec::new(h, QPoly::commutative(&["z", "w"]), ops)
}

/// u′_q(gl₂) on k[z₁^{±1}, z₂]: γ_i·z_j = q^{δ_ij}z_j, x₁·z₁ = (1−q)z₁²z₂, x₂·z₂ = z₁^{-1}.
pub fn uq_prime_gl2_action(m: u32, j: u32) -> Result<ActionSpec<QPoly>, ActionError> {
    let h = hc::uq_prime_gl2(m, j)?;
    let q = h.smash.zeta(j as i64);
    let ops = vec![
        auto(vec![term(q.clone(), &[1, 0]), monomial(&[0, 1])]),
        auto(vec![monomial(&[1, 0]), term(q.clone(), &[0, 1])]),
        skew(&h, 0, vec![term(CycNum::one().sub(&q), &[2, 1]), Elem::new()]),
        skew(&h, 1, vec![Elem::new(), monomial(&[-1, 0])]),
    ];
    ActionSpec::new(h, QPoly::commutative(&["z1", "z2"]).with_laurent(0), ops)
}

/// u_q(gl_n) on A_q: g_i·z_j = q^{δ_ij}z_j, e_i·z_{i+1} = z_i, f_i·z_i = z_{i+1}, other images 0.
pub fn hu_action(n: usize, m: u32) -> Result<ActionSpec<QPoly>, ActionError> {
    let h = hc::uq_gln(n, m)?;
    let q = h.smash.zeta(1);
    let target = QPoly::quantum_plane(n, &q);
    let mut ops = Vec::new();
    for i in 0..n {
        ops.push(auto((0..n).map(|j| diag(n, j, if i == j { q.clone() } else { CycNum::one() })).collect()));
    }
    for i in 0..n - 1 {
        let mut images = vec![Elem::new(); n];
        images[i + 1] = diag(n, i, CycNum::one());
        ops.push(skew(&h, i, images));
    }
    for i in 0..n - 1 {
        let mut images = vec![Elem::new(); n];
        images[i] = diag(n, i + 1, CycNum::one());
        ops.push(skew(&h, n - 1 + i, images));
    }
    ActionSpec::new(h, target, ops)
}

/// The untwisted rows of the example table.
pub fn example_table() -> Result<Vec<CatalogAction>, ActionError> {
    let mut out = Vec::new();
    let mut push = |label: String, action: ActionSpec<QPoly>, denominators: Option<Vec<u32>>| {
        out.push(CatalogAction { label, action, denominators });
    };
    for n in 2..=6 {
        push(format!("T({n})"), taft_action(n)?, Some(vec![n]));
    }
    for n in 1..=4 {
        push(format!("E({n})"), nichols_e_action(n)?, Some(vec![2]));
    }
    for n in 2..=5 {
        push(format!("h(zeta_{n},1)"), book_action(n)?, Some(vec![n]));
    }
    push("H81".into(), h81_action()?, Some(vec![3]));
    for m in [3, 5] {
        push(format!("u_q(sl2), m={m}"), uq_sl2_action(m)?, Some(vec![m]));
    }
    push("u_q(gl2), m=3".into(), uq_gl2_action(3)?, Some(vec![3, 3]));
    push("u'_q(gl2), m=3".into(), uq_prime_gl2_action(3, 1)?, Some(vec![3, 3]));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{verify_all, Target};

    #[test]
    fn taft_two_passes() {
        let a = taft_action(2).unwrap();
        assert!(verify_all(&a, 4).unwrap().passed());
    }

    #[test]
    fn trivial_action_is_not_faithful() {
        let h = hc::taft(3).unwrap();
        let a = trivial_action(&h, QPoly::commutative(&["z"])).unwrap();
        let r = verify_all(&a, 4).unwrap();
        assert!(r.hopf_relations.passed() && r.module_algebra.passed());
        assert!(!r.inner_faithful.passed());
        assert_eq!(a.target.ngens(), 1);
    }
}
