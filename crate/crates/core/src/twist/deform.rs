//! Twisted coproducts, twisted algebras and twisted actions.

use super::{from_idempotents, Cocycle, FinAbGroup, TwistElement, TwistError};
use crate::action::{grouplike_characters, ActionSpec, Elem, GeneratorOperator, QPoly, Target};
use crate::hopf::{HopfPresentation, SkewGen, Verdict};
use crate::ncalg::{GPoly, Tensor, Word};
use crate::scalars::CycNum;

/// The exponent tuple of a character given by ζ_M-exponents on the generators.
fn tuple_from_exps(g: &FinAbGroup, m: u32, exps: &[i64]) -> Result<Vec<i64>, TwistError> {
    let mut out = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        let w = m as i64 / g.orders[i] as i64;
        let e = e.rem_euclid(m as i64);
        if e % w != 0 {
            return Err(TwistError::Shape(format!("character exponent {e} is not defined on Z/{}", g.orders[i])));
        }
        out.push(e / w);
    }
    Ok(g.reduce(&out))
}

/// Group element t with ψ(t) = ζ_m^{Σ_i ψ_i v_i} for all ψ.
fn element_from_exps(g: &FinAbGroup, m: u32, v: &[i64]) -> Vec<i64> {
    tuple_from_exps(g, m, v).expect("well-defined cocycle yields a group element")
}

fn check_group(h: &HopfPresentation, s: &Cocycle) -> Result<FinAbGroup, TwistError> {
    let g = FinAbGroup::from_lattice(&h.smash.group)?;
    if g != s.group || s.m != h.smash.m {
        return Err(TwistError::Shape("cocycle group or root order differs from the presentation".into()));
    }
    Ok(g)
}

/// Characters of the skew generators as tuples.
fn skew_characters(h: &HopfPresentation, g: &FinAbGroup) -> Result<Vec<Vec<i64>>, TwistError> {
    h.smash.conj.iter().map(|c| tuple_from_exps(g, h.smash.m, c)).collect()
}

/// H^J for a bimultiplicative cocycle: Δ^J(x) = L·t ⊗ x + x ⊗ R·t′ with
/// ψ(t) = σ(ψ, χ_x)^{-1} and ψ(t′) = σ(χ_x, ψ)^{-1}. The algebra is unchanged.
pub fn twist_presentation(h: &HopfPresentation, s: &Cocycle) -> Result<HopfPresentation, TwistError> {
    let g = check_group(h, s)?;
    let b = s.matrix().ok_or(TwistError::NotBimultiplicative)?;
    let chars = skew_characters(h, &g)?;
    let r = g.rank();
    let mut out = h.clone();
    for (x, chi) in chars.iter().enumerate() {
        let bx: Vec<i64> = (0..r).map(|i| -(0..r).map(|j| b[i][j] * chi[j]).sum::<i64>()).collect();
        let btx: Vec<i64> = (0..r).map(|j| -(0..r).map(|i| chi[i] * b[i][j]).sum::<i64>()).collect();
        let t = element_from_exps(&g, s.m, &bx);
        let tp = element_from_exps(&g, s.m, &btx);
        let old = &h.skew[x];
        out.skew[x] = SkewGen { name: old.name.clone(), left: h.smash.group.mul(&old.left, &t), right: h.smash.group.mul(&old.right, &tp) };
    }
    out.name = format!("{}^J", h.name);
    out.check_basic()?;
    Ok(out)
}

/// J as a two-leg tensor in the group layer.
pub fn twist_tensor(j: &TwistElement) -> Tensor {
    let mut t = Tensor::zero();
    for ((a, b), c) in &j.table {
        t.add_term(vec![(Word::empty(), a.clone()), (Word::empty(), b.clone())], c.clone());
    }
    t
}

/// J^{-1} Δ(p) J computed directly in H ⊗ H.
pub fn twisted_coproduct_raw(h: &HopfPresentation, j: &Tensor, jinv: &Tensor, p: &GPoly) -> Tensor {
    let s = &h.smash;
    s.tensor_mul(&s.tensor_mul(jinv, &h.coproduct_raw(p)), j)
}

fn group_alg_poly(a: &super::GroupAlg) -> GPoly {
    let mut p = GPoly::zero();
    for (g, c) in a {
        p.add_term((Word::empty(), g.clone()), c.clone());
    }
    p
}

/// Compare Q^{-1} S(x) Q, Q = Σ_ψ σ(−ψ, ψ) 1_ψ, with the antipode of the twisted presentation.
pub fn twisted_antipode_check(h: &HopfPresentation, hj: &HopfPresentation, s: &Cocycle) -> Result<Vec<Verdict>, TwistError> {
    let g = check_group(h, s)?;
    let m = s.m;
    let q = group_alg_poly(&from_idempotents(&g, m, |psi| s.value(&g.neg(psi), psi)));
    let qinv = group_alg_poly(&from_idempotents(&g, m, |psi| s.value(&g.neg(psi), psi).inv().unwrap()));
    let red = hj.reducer();
    let mut out = Vec::new();
    for x in 0..h.skew.len() {
        let lhs = h.mul(&h.mul(&qinv, &h.antipode_gen(x)?), &q);
        let diff = lhs.sub(&hj.antipode_gen(x)?);
        out.push(match red.reduce(&diff) {
            Ok(nf) if nf.is_zero() => Verdict::Pass,
            Ok(nf) if red.is_exact() => Verdict::Fail(hj.fmt_poly(&nf)),
            Ok(nf) => Verdict::Inconclusive(hj.fmt_poly(&nf)),
            Err(e) => Verdict::Inconclusive(e.to_string()),
        });
    }
    Ok(out)
}

/// Characters of the target generators under the grouplikes, as tuples.
pub fn characters_of_action(a: &ActionSpec<QPoly>) -> Result<Vec<Vec<i64>>, TwistError> {
    let g = FinAbGroup::from_lattice(&a.hopf.smash.group)?;
    let e = grouplike_characters(a)?;
    let k = a.target.ngens();
    (0..k)
        .map(|i| {
            let col: Vec<i64> = e.iter().map(|row| row[i]).collect();
            tuple_from_exps(&g, a.hopf.smash.m, &col)
        })
        .collect()
}

/// c′_ij = c_ij · b_J(χ_j, χ_i).
pub fn twist_algebra(target: &QPoly, chars: &[Vec<i64>], s: &Cocycle) -> QPoly {
    let k = target.vars.len();
    let mut out = target.clone();
    for i in 0..k {
        for j in i + 1..k {
            let b = s.value(&chars[i], &chars[j]).div(&s.value(&chars[j], &chars[i])).unwrap();
            out.comm[i][j] = target.comm[i][j].mul(&b);
        }
    }
    out
}

/// The same commutation matrix from a ∗_J b = Σ J(g, h)(g·a)(h·b) with the J table.
pub fn twist_algebra_raw(target: &QPoly, chars: &[Vec<i64>], j: &TwistElement) -> QPoly {
    let g = &j.group;
    let m = j.m;
    let star = |a: &[i64], b: &[i64]| -> CycNum {
        let mut acc = CycNum::zero();
        for ((x, y), c) in &j.table {
            acc = acc.add(&c.mul(&CycNum::zeta(m, g.pair(a, x, m) + g.pair(b, y, m))));
        }
        acc
    };
    let k = target.vars.len();
    let mut out = target.clone();
    for i in 0..k {
        for l in i + 1..k {
            let alpha = star(&chars[i], &chars[l]);
            let beta = star(&chars[l], &chars[i]);
            out.comm[i][l] = alpha.mul(&target.comm[i][l]).div(&beta).unwrap();
        }
    }
    out
}

/// f(a) with z^{∗a} = f(a) z^a, products taken in increasing variable order.
pub fn star_factor(s: &Cocycle, chars: &[Vec<i64>], key: &[i64]) -> CycNum {
    let g = &s.group;
    let mut prefix = g.zero();
    let mut f = CycNum::one();
    for (i, &a) in key.iter().enumerate() {
        let step = if a >= 0 { chars[i].clone() } else { g.neg(&chars[i]) };
        // z_i^{∗-1} = σ(χ_i, −χ_i)^{-1} z_i^{-1}
        let letter = if a >= 0 { CycNum::one() } else { s.value(&chars[i], &g.neg(&chars[i])).inv().unwrap() };
        for _ in 0..a.abs() {
            f = f.mul(&letter).mul(&s.value(&prefix, &step));
            prefix = g.add(&prefix, &step);
        }
    }
    f
}

fn to_star(s: &Cocycle, chars: &[Vec<i64>], e: &Elem<CycNum>) -> Elem<CycNum> {
    e.iter().map(|(k, c)| (k.clone(), c.mul(&star_factor(s, chars, k).inv().unwrap()))).collect()
}

/// H^J acting on A_J by the operators of the original action.
pub fn twist_action(a: &ActionSpec<QPoly>, s: &Cocycle) -> Result<ActionSpec<QPoly>, TwistError> {
    let hj = twist_presentation(&a.hopf, s)?;
    let chars = characters_of_action(a)?;
    let target = twist_algebra(&a.target, &chars, s);
    let r = hj.group_rank();
    let ops = a
        .ops
        .iter()
        .enumerate()
        .map(|(i, op)| match op {
            GeneratorOperator::Automorphism { images } => {
                GeneratorOperator::Automorphism { images: images.iter().map(|e| to_star(s, &chars, e)).collect() }
            }
            GeneratorOperator::SkewDerivation { images, .. } => {
                let x = &hj.skew[i - r];
                GeneratorOperator::SkewDerivation {
                    left: x.left.clone(),
                    right: x.right.clone(),
                    images: images.iter().map(|e| to_star(s, &chars, e)).collect(),
                }
            }
        })
        .collect();
    Ok(ActionSpec::new(hj, target, ops)?)
}
