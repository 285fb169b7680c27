//! Finite abelian groups presented as Z^r modulo a full-rank lattice.

use super::lattice::{hnf, smith};
use num_integer::Integer;
use thiserror::Error;

fn fdiv(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group relations do not define a finite group (lattice rank {rank} < {needed})")]
    Infinite { rank: usize, needed: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLattice {
    rank: usize,
    rows: Vec<Vec<i64>>,
    order: u64,
    exponent: u64,
    invariants: Vec<u64>,
}

impl GroupLattice {
    pub fn new(rank: usize, relations: &[Vec<i64>]) -> Result<GroupLattice, GroupError> {
        let rows = hnf(relations, rank);
        if rows.len() < rank {
            return Err(GroupError::Infinite { rank: rows.len(), needed: rank });
        }
        let order = (0..rank).map(|i| rows[i][i] as u64).product();
        let (d, _, _) = smith(&rows);
        let invariants: Vec<u64> = d.iter().map(|&x| x as u64).collect();
        let exponent = invariants.iter().fold(1u64, |a, &b| a.lcm(&b));
        Ok(GroupLattice { rank, rows, order, exponent, invariants })
    }

    /// Z/n₁ × … × Z/n_r with the standard generators.
    pub fn cyclic_product(orders: &[u64]) -> GroupLattice {
        let r = orders.len();
        let rels: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| if i == j { orders[i] as i64 } else { 0 }).collect()).collect();
        GroupLattice::new(r, &rels).expect("positive orders")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    /// Canonical representative with 0 ≤ a_i < h_ii.
    pub fn reduce(&self, a: &[i64]) -> Vec<i64> {
        let mut a = a.to_vec();
        for i in 0..self.rank {
            let h = self.rows[i][i];
            let q = fdiv(a[i], h);
            if q != 0 {
                for j in 0..self.rank {
                    a[j] -= q * self.rows[i][j];
                }
            }
        }
        a
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn inv(&self, a: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn pow(&self, a: &[i64], k: i64) -> Vec<i64> {
        let s: Vec<i64> = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    pub fn is_identity(&self, a: &[i64]) -> bool {
        self.reduce(a).iter().all(|&x| x == 0)
    }

    /// Order of the element `a`.
    pub fn elem_order(&self, a: &[i64]) -> u64 {
        (1..=self.exponent).find(|&k| self.is_identity(&self.pow(a, k as i64))).unwrap()
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for i in 0..self.rank {
            let h = self.rows[i][i];
            let mut next = Vec::new();
            for e in &out {
                for k in 0..h {
                    let mut v = e.clone();
                    v.push(k);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Character exponent vectors c with χ(g^a) = ζ_m^{c·a}; requires exponent | m.
    pub fn characters(&self, m: u64) -> Vec<Vec<i64>> {
        assert!(m % self.exponent == 0, "root order must be a multiple of the group exponent");
        let (d, _, v) = smith(&self.rows);
        let mut ts: Vec<Vec<i128>> = vec![Vec::new()];
        for &di in &d {
            let mut next = Vec::new();
            for t in &ts {
                for k in 0..di {
                    let mut w = t.clone();
                    w.push(k);
                    next.push(w);
                }
            }
            ts = next;
        }
        let mi = m as i128;
        let mut out: Vec<Vec<i64>> = ts
            .iter()
            .map(|t| {
                let y: Vec<i128> = t.iter().zip(&d).map(|(&ti, &di)| ti * (mi / di)).collect();
                (0..self.rank)
                    .map(|i| (0..self.rank).map(|j| v[i][j] * y[j]).sum::<i128>().rem_euclid(mi) as i64)
                    .collect()
            })
            .collect();
        out.sort();
        out
    }

    /// Exponent of ζ_m in χ(g).
    pub fn pair(chi: &[i64], g: &[i64], m: u64) -> i64 {
        chi.iter().zip(g).map(|(c, a)| c * a).sum::<i64>().rem_euclid(m as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_group() {
        let g = GroupLattice::cyclic_product(&[2, 3]);
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.elements().len(), 6);
        assert_eq!(g.characters(6).len(), 6);
    }

    #[test]
    fn quotient_by_diagonal() {
        // (Z/3)^2 / <(1,1)> ≅ Z/3
        let g = GroupLattice::new(2, &[vec![3, 0], vec![0, 3], vec![1, 1]]).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_identity(&[2, 2]));
        assert!(!g.is_identity(&[1, 2]));
        for c in g.characters(3) {
            assert_eq!(GroupLattice::pair(&c, &[1, 1], 3), 0);
        }
    }
}
