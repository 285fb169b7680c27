//! The twists J^± of (Z/m)^n and the orientation twists J_Q of Borel parts.

use super::{Cocycle, FinAbGroup, TwistError};
use crate::hopf::CartanData;
use crate::ncalg::lattice::{smith, solve_mod, Congruence};
use num_integer::Integer;
use serde::Serialize;

/// σ_{J⁺}(χ_i, χ_j) = q for i > j and 1 otherwise, on (Z/m)^n.
pub fn jplus(n: usize, m: u32) -> Result<Cocycle, TwistError> {
    let b = (0..n).map(|i| (0..n).map(|j| (i > j) as i64).collect()).collect();
    Cocycle::bimultiplicative(&FinAbGroup::cyclic_power(m as u64, n), m, b)
}

/// σ_{J⁻}(χ_i, χ_j) = q for i < j and 1 otherwise.
pub fn jminus(n: usize, m: u32) -> Result<Cocycle, TwistError> {
    let b = (0..n).map(|i| (0..n).map(|j| (i < j) as i64).collect()).collect();
    Cocycle::bimultiplicative(&FinAbGroup::cyclic_power(m as u64, n), m, b)
}

/// Which characters of the Cartan subgroup are coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CharBasis {
    /// Grouplikes k_i with α_j(k_i) = q^{d_i a_ij}.
    Standard,
    /// Grouplikes g_i with α_j(g_i) = q^{δ_ij}.
    Adjoint,
}

#[derive(Clone, Debug, PartialEq)]
pub enum JqOutcome {
    /// `b[k][l]` are the exponents of b(ω_k, ω_l) on the coordinate characters.
    Solvable { b: Vec<Vec<i64>>, cocycle: Cocycle, unique: bool },
    /// λ combines the equations b(α_i, α_j) = q^{s_ij} into 0 ≡ residue (mod m).
    Infeasible { lambda: Vec<((usize, usize), i64)>, residue: i64, congruence: String },
}

impl JqOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self, JqOutcome::Solvable { .. })
    }
}

/// s_ij with b(α_i, α_j) = q^{s_ij}: d_i a_ij for i → j, −d_i a_ij for j → i, else 0.
fn targets(cartan: &CartanData) -> Vec<Vec<i64>> {
    let r = cartan.rank();
    let mut s = vec![vec![0; r]; r];
    for (i, j) in cartan.oriented_edges() {
        s[i][j] = cartan.d[i] * cartan.a[i][j];
        s[j][i] = -cartan.d[j] * cartan.a[j][i];
    }
    s
}

fn odd(m: u32) -> Result<(), TwistError> {
    if m % 2 == 0 || m < 3 {
        return Err(TwistError::EvenRoot(m));
    }
    Ok(())
}

/// Cocycle with bicharacter exponents β (alternating) on the coordinate basis:
/// B lower triangular with B_lk = β_kl for k < l.
fn cocycle_for(beta: &[Vec<i64>], m: u32) -> Result<Cocycle, TwistError> {
    let r = beta.len();
    let mut b = vec![vec![0; r]; r];
    for k in 0..r {
        for l in k + 1..r {
            b[l][k] = beta[k][l];
        }
    }
    Cocycle::bimultiplicative(&FinAbGroup::cyclic_power(m as u64, r), m, b)
}

/// J_Q in the adjoint basis: σ(α_j, α_i) = q^{d_i a_ij} for each edge i → j, 1 otherwise.
pub fn jq_from_orientation(cartan: &CartanData, m: u32) -> Result<Cocycle, TwistError> {
    odd(m)?;
    let r = cartan.rank();
    let mut b = vec![vec![0; r]; r];
    for (i, j) in cartan.oriented_edges() {
        b[j][i] = cartan.d[i] * cartan.a[i][j];
    }
    Cocycle::bimultiplicative(&FinAbGroup::cyclic_power(m as u64, r), m, b)
}

/// Solve for an alternating bicharacter with b(α_i, α_j) = q^{s_ij} over Z/m.
pub fn jq_exists(cartan: &CartanData, m: u32, basis: CharBasis) -> Result<JqOutcome, TwistError> {
    odd(m)?;
    let r = cartan.rank();
    let s = targets(cartan);
    let mm = m as i64;
    if basis == CharBasis::Adjoint {
        let cocycle = jq_from_orientation(cartan, m)?;
        let b = s.iter().map(|row| row.iter().map(|x| x.rem_euclid(mm)).collect()).collect();
        return Ok(JqOutcome::Solvable { b, cocycle, unique: true });
    }
    // α_j = Σ_k A[k][j] ω_k
    let a: Vec<Vec<i64>> = (0..r).map(|k| (0..r).map(|j| cartan.d[k] * cartan.a[k][j]).collect()).collect();
    let unknowns: Vec<(usize, usize)> = (0..r).flat_map(|k| (k + 1..r).map(move |l| (k, l))).collect();
    let eqs: Vec<(usize, usize)> = unknowns.clone();
    if unknowns.is_empty() {
        return Ok(JqOutcome::Solvable { b: vec![vec![0; r]; r], cocycle: cocycle_for(&vec![vec![0; r]; r], m)?, unique: true });
    }
    let mat: Vec<Vec<i64>> =
        eqs.iter().map(|&(i, j)| unknowns.iter().map(|&(k, l)| a[k][i] * a[l][j] - a[l][i] * a[k][j]).collect()).collect();
    let t: Vec<i64> = eqs.iter().map(|&(i, j)| s[i][j].rem_euclid(mm)).collect();
    match solve_mod(&mat, &t, mm) {
        Congruence::Solvable(x) => {
            let mut beta = vec![vec![0; r]; r];
            for (&(k, l), &v) in unknowns.iter().zip(&x) {
                beta[k][l] = v.rem_euclid(mm);
                beta[l][k] = (-v).rem_euclid(mm);
            }
            let (d, _, _) = smith(&mat);
            let nc = unknowns.len();
            let unique = d.len() >= nc && d[..nc].iter().all(|&di| di.gcd(&(mm as i128)) == 1);
            Ok(JqOutcome::Solvable { cocycle: cocycle_for(&beta, m)?, b: beta, unique })
        }
        Congruence::Infeasible(lam) => {
            let residue = lam.iter().zip(&t).map(|(l, x)| l * x).sum::<i64>().rem_euclid(mm);
            let lambda: Vec<((usize, usize), i64)> = eqs.iter().copied().zip(lam.iter().copied()).filter(|(_, l)| *l != 0).collect();
            let terms: Vec<String> = lambda.iter().map(|((i, j), l)| format!("{l}·E({},{})", i + 1, j + 1)).collect();
            let congruence = format!("{} gives 0 ≡ {residue} (mod {m})", terms.join(" + "));
            Ok(JqOutcome::Infeasible { lambda, residue, congruence })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_mod_three_is_infeasible() {
        let c = CartanData::type_a(2);
        let out = jq_exists(&c, 3, CharBasis::Standard).unwrap();
        assert!(!out.is_solvable());
        assert!(jq_exists(&c, 5, CharBasis::Standard).unwrap().is_solvable());
    }

    #[test]
    fn even_root_rejected() {
        assert_eq!(jq_exists(&CartanData::type_a(2), 4, CharBasis::Standard), Err(TwistError::EvenRoot(4)));
    }
}
