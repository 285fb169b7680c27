//! Drinfeld twists of finite abelian group algebras kG.
//!
//! A character χ of G = ⊕ Z/m_i is an exponent tuple with χ(g) = Π ζ_{m_i}^{χ_i g_i};
//! all scalar values live in Q(ζ_m) for a root order m divisible by every m_i.
//! Cocycles on Ĝ are mostly bimultiplicative, σ(χ, ψ) = ζ_m^{χᵀBψ}.

mod deform;
mod jq;

pub mod catalog;

pub use deform::{
    characters_of_action, star_factor, twist_action, twist_algebra, twist_algebra_raw, twist_presentation, twisted_antipode_check,
    twist_tensor, twisted_coproduct_raw,
};
pub use jq::{jminus, jplus, jq_exists, jq_from_orientation, CharBasis, JqOutcome};

use crate::ncalg::GroupLattice;
use crate::scalars::CycNum;
use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TwistError {
    #[error("group is not a product of cyclic groups in standard form")]
    NotDiagonal,
    #[error("root order {m} is not a multiple of the group exponent")]
    RootOrder { m: u32 },
    #[error("cocycle exponent matrix is not well defined on the group: entry ({0}, {1})")]
    IllDefined(usize, usize),
    #[error("2-cocycle identity fails at {0:?}")]
    NotCocycle((Vec<i64>, Vec<i64>, Vec<i64>)),
    #[error("cocycle value is zero")]
    ZeroValue,
    #[error("group of order {0} is too large for this table computation")]
    TooLarge(u64),
    #[error("a bimultiplicative cocycle is required")]
    NotBimultiplicative,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("even root order {0} is not supported")]
    EvenRoot(u32),
    #[error(transparent)]
    Action(#[from] crate::action::ActionError),
    #[error(transparent)]
    Hopf(#[from] crate::hopf::HopfError),
}

/// ⊕ Z/m_i with elements as reduced exponent tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinAbGroup {
    pub orders: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(orders: &[u64]) -> FinAbGroup {
        assert!(orders.iter().all(|&m| m >= 1), "cyclic orders must be positive");
        FinAbGroup { orders: orders.to_vec() }
    }

    pub fn cyclic_power(m: u64, r: usize) -> FinAbGroup {
        FinAbGroup::new(&vec![m; r])
    }

    /// The group of a lattice presentation whose relation rows are m_i·e_i.
    pub fn from_lattice(g: &GroupLattice) -> Result<FinAbGroup, TwistError> {
        let rows = g.relations();
        let mut orders = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.iter().enumerate().any(|(j, &a)| j != i && a != 0) {
                return Err(TwistError::NotDiagonal);
            }
            orders.push(row[i] as u64);
        }
        Ok(FinAbGroup { orders })
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| a.lcm(&b))
    }

    pub fn reduce(&self, a: &[i64]) -> Vec<i64> {
        a.iter().zip(&self.orders).map(|(&x, &m)| x.rem_euclid(m as i64)).collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.orders {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..m as i64).map(move |k| {
                        let mut v = e.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Exponent k with χ(g) = ζ_m^k.
    pub fn pair(&self, chi: &[i64], g: &[i64], m: u32) -> i64 {
        let m = m as i64;
        chi.iter().zip(g).zip(&self.orders).map(|((c, x), &mi)| c * x * (m / mi as i64)).sum::<i64>().rem_euclid(m)
    }

    fn check_root(&self, m: u32) -> Result<(), TwistError> {
        if m as u64 % self.exponent() != 0 {
            return Err(TwistError::RootOrder { m });
        }
        Ok(())
    }
}

/// Elements of kG in the group basis.
pub type GroupAlg = BTreeMap<Vec<i64>, CycNum>;

pub fn group_alg_mul(g: &FinAbGroup, a: &GroupAlg, b: &GroupAlg) -> GroupAlg {
    let mut out = GroupAlg::new();
    for (x, c) in a {
        for (y, d) in b {
            let k = g.add(x, y);
            let v = out.remove(&k).unwrap_or_else(CycNum::zero).add(&c.mul(d));
            if !v.is_zero() {
                out.insert(k, v);
            }
        }
    }
    out
}

/// 1_χ = |G|^{-1} Σ_g χ(g^{-1}) g.
pub fn idempotent(g: &FinAbGroup, m: u32, chi: &[i64]) -> GroupAlg {
    let inv = CycNum::from_frac(1, g.order() as i64);
    g.elements().into_iter().map(|x| (x.clone(), CycNum::zeta(m, -g.pair(chi, &x, m)).mul(&inv))).collect()
}

/// Σ_χ c(χ) 1_χ expanded in the group basis.
pub fn from_idempotents(g: &FinAbGroup, m: u32, c: impl Fn(&[i64]) -> CycNum) -> GroupAlg {
    let mut out = GroupAlg::new();
    let inv = CycNum::from_frac(1, g.order() as i64);
    let chars = g.elements();
    for x in g.elements() {
        let mut acc = CycNum::zero();
        for chi in &chars {
            acc = acc.add(&c(chi).mul(&CycNum::zeta(m, -g.pair(chi, &x, m))));
        }
        let acc = acc.mul(&inv);
        if !acc.is_zero() {
            out.insert(x, acc);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Bimult(Vec<Vec<i64>>),
    Table(BTreeMap<(Vec<i64>, Vec<i64>), CycNum>),
}

/// A normalized 2-cocycle Ĝ × Ĝ → k^×.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    pub group: FinAbGroup,
    pub m: u32,
    repr: Repr,
}

impl Cocycle {
    pub fn trivial(group: &FinAbGroup, m: u32) -> Result<Cocycle, TwistError> {
        let r = group.rank();
        Cocycle::bimultiplicative(group, m, vec![vec![0; r]; r])
    }

    /// σ(χ, ψ) = ζ_m^{χᵀBψ}; B must be well defined on Ĝ × Ĝ.
    pub fn bimultiplicative(group: &FinAbGroup, m: u32, b: Vec<Vec<i64>>) -> Result<Cocycle, TwistError> {
        group.check_root(m)?;
        let r = group.rank();
        if b.len() != r || b.iter().any(|row| row.len() != r) {
            return Err(TwistError::Shape(format!("exponent matrix must be {r}×{r}")));
        }
        let mm = m as i64;
        let mut red = b.clone();
        for i in 0..r {
            for j in 0..r {
                let e = b[i][j].rem_euclid(mm);
                if (e * group.orders[i] as i64) % mm != 0 || (e * group.orders[j] as i64) % mm != 0 {
                    return Err(TwistError::IllDefined(i, j));
                }
                red[i][j] = e;
            }
        }
        Ok(Cocycle { group: group.clone(), m, repr: Repr::Bimult(red) })
    }

    /// A cocycle from an arbitrary table; the cocycle identity is checked on all triples.
    pub fn from_table(group: &FinAbGroup, m: u32, f: impl Fn(&[i64], &[i64]) -> CycNum) -> Result<Cocycle, TwistError> {
        group.check_root(m)?;
        let n = group.order();
        if n > 64 {
            return Err(TwistError::TooLarge(n));
        }
        let els = group.elements();
        let mut table = BTreeMap::new();
        for a in &els {
            for b in &els {
                let v = f(a, b);
                if v.is_zero() {
                    return Err(TwistError::ZeroValue);
                }
                table.insert((a.clone(), b.clone()), v);
            }
        }
        let s = |a: &Vec<i64>, b: &Vec<i64>| &table[&(a.clone(), b.clone())];
        for a in &els {
            for b in &els {
                let ab = group.add(a, b);
                for c in &els {
                    let bc = group.add(b, c);
                    if s(a, b).mul(s(&ab, c)) != s(b, c).mul(s(a, &bc)) {
                        return Err(TwistError::NotCocycle((a.clone(), b.clone(), c.clone())));
                    }
                }
            }
        }
        Ok(Cocycle { group: group.clone(), m, repr: Repr::Table(table) })
    }

    pub fn matrix(&self) -> Option<&Vec<Vec<i64>>> {
        match &self.repr {
            Repr::Bimult(b) => Some(b),
            Repr::Table(_) => None,
        }
    }

    /// χᵀBψ mod m for bimultiplicative cocycles.
    pub fn exponent(&self, chi: &[i64], psi: &[i64]) -> Option<i64> {
        let b = self.matrix()?;
        let mut e = 0i64;
        for (i, &x) in chi.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in psi.iter().enumerate() {
                e += x * b[i][j] * y;
            }
        }
        Some(e.rem_euclid(self.m as i64))
    }

    pub fn value(&self, chi: &[i64], psi: &[i64]) -> CycNum {
        match &self.repr {
            Repr::Bimult(_) => CycNum::zeta(self.m, self.exponent(chi, psi).unwrap()),
            Repr::Table(t) => t[&(self.group.reduce(chi), self.group.reduce(psi))].clone(),
        }
    }

    pub fn inverse(&self) -> Cocycle {
        let repr = match &self.repr {
            Repr::Bimult(b) => Repr::Bimult(b.iter().map(|row| row.iter().map(|&x| (-x).rem_euclid(self.m as i64)).collect()).collect()),
            Repr::Table(t) => Repr::Table(t.iter().map(|(k, v)| (k.clone(), v.inv().unwrap())).collect()),
        };
        Cocycle { repr, ..self.clone() }
    }

    pub fn is_normalized(&self) -> bool {
        let z = self.group.zero();
        self.group.elements().iter().all(|c| self.value(c, &z).is_one() && self.value(&z, c).is_one())
    }

    /// b(χ, ψ) = σ(ψ, χ)/σ(χ, ψ).
    pub fn bicharacter(&self) -> Result<Bicharacter, TwistError> {
        let r = self.group.rank();
        let mut e = vec![vec![0; r]; r];
        for k in 0..r {
            for l in 0..r {
                let (a, b) = (self.group.unit(k), self.group.unit(l));
                let v = self.value(&b, &a).div(&self.value(&a, &b)).unwrap();
                e[k][l] = v.root_exponent(self.m).ok_or(TwistError::NotBimultiplicative)? as i64;
            }
        }
        let bc = Bicharacter { group: self.group.clone(), m: self.m, e };
        if let Repr::Table(_) = self.repr {
            for a in self.group.elements() {
                for b in self.group.elements() {
                    if bc.value(&a, &b) != self.value(&b, &a).div(&self.value(&a, &b)).unwrap() {
                        return Err(TwistError::NotBimultiplicative);
                    }
                }
            }
        }
        Ok(bc)
    }
}

/// b(χ, ψ) = ζ_m^{χᵀEψ}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bicharacter {
    pub group: FinAbGroup,
    pub m: u32,
    pub e: Vec<Vec<i64>>,
}

impl Bicharacter {
    pub fn exponent(&self, chi: &[i64], psi: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &x) in chi.iter().enumerate() {
            for (j, &y) in psi.iter().enumerate() {
                s += x * self.e[i][j] * y;
            }
        }
        s.rem_euclid(self.m as i64)
    }

    pub fn value(&self, chi: &[i64], psi: &[i64]) -> CycNum {
        CycNum::zeta(self.m, self.exponent(chi, psi))
    }

    /// b(χ, χ) = 1 for all χ.
    pub fn is_alternating(&self) -> bool {
        let r = self.group.rank();
        (0..r).all(|k| {
            let a = self.group.unit(k);
            self.exponent(&a, &a) == 0
                && (k + 1..r).all(|l| {
                    let s = self.group.add(&a, &self.group.unit(l));
                    self.exponent(&s, &s) == 0
                })
        })
    }

    pub fn is_trivial(&self) -> bool {
        let r = self.group.rank();
        (0..r).all(|k| (0..r).all(|l| self.exponent(&self.group.unit(k), &self.group.unit(l)) == 0))
    }

    /// Equality as functions on Ĝ × Ĝ.
    pub fn same_as(&self, o: &Bicharacter) -> bool {
        let r = self.group.rank();
        self.group == o.group
            && (0..r).all(|k| (0..r).all(|l| self.value(&self.group.unit(k), &self.group.unit(l)) == o.value(&o.group.unit(k), &o.group.unit(l))))
    }
}

/// J = Σ J(g, h) g ⊗ h in kG ⊗ kG.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistElement {
    pub group: FinAbGroup,
    pub m: u32,
    pub table: BTreeMap<(Vec<i64>, Vec<i64>), CycNum>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwistAxioms {
    pub cocycle_identity: bool,
    pub counit_left: bool,
    pub counit_right: bool,
    pub invertible: bool,
}

impl TwistAxioms {
    pub fn passed(&self) -> bool {
        self.cocycle_identity && self.counit_left && self.counit_right && self.invertible
    }
}

type Triple = BTreeMap<(Vec<i64>, Vec<i64>, Vec<i64>), CycNum>;

fn add_to<K: Ord>(m: &mut BTreeMap<K, CycNum>, k: K, c: CycNum) {
    let v = m.remove(&k).unwrap_or_else(CycNum::zero).add(&c);
    if !v.is_zero() {
        m.insert(k, v);
    }
}

impl TwistElement {
    /// J = Σ σ(χ, ψ) 1_χ ⊗ 1_ψ.
    ///
    /// For bimultiplicative σ this is Σ_χ 1_χ ⊗ t_χ with ψ(t_χ) = σ(χ, ψ).
    pub fn from_cocycle(s: &Cocycle) -> Result<TwistElement, TwistError> {
        let g = &s.group;
        let n = g.order();
        let m = s.m;
        let mut table = BTreeMap::new();
        let inv = CycNum::from_frac(1, n as i64);
        if let Some(b) = s.matrix() {
            // t_χ solves ψ(t_χ) = ζ^{χᵀBψ}: (m/m_j) t_j ≡ (χᵀB)_j
            let chars = g.elements();
            let mut by_t: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
            for chi in chars {
                let t: Vec<i64> = (0..g.rank())
                    .map(|j| {
                        let e: i64 = (0..g.rank()).map(|i| chi[i] * b[i][j]).sum();
                        let w = m as i64 / g.orders[j] as i64;
                        debug_assert_eq!(e.rem_euclid(m as i64) % w, 0);
                        e.rem_euclid(m as i64) / w
                    })
                    .collect();
                by_t.entry(g.reduce(&t)).or_default().push(chi);
            }
            for x in g.elements() {
                for (t, chis) in &by_t {
                    let mut acc = CycNum::zero();
                    for chi in chis {
                        acc = acc.add(&CycNum::zeta(m, -g.pair(chi, &x, m)));
                    }
                    if !acc.is_zero() {
                        table.insert((x.clone(), t.clone()), acc.mul(&inv));
                    }
                }
            }
        } else {
            if n > 16 {
                return Err(TwistError::TooLarge(n));
            }
            let els = g.elements();
            let inv2 = inv.mul(&inv);
            for x in &els {
                for y in &els {
                    let mut acc = CycNum::zero();
                    for chi in &els {
                        for psi in &els {
                            let e = -g.pair(chi, x, m) - g.pair(psi, y, m);
                            acc = acc.add(&s.value(chi, psi).mul(&CycNum::zeta(m, e)));
                        }
                    }
                    if !acc.is_zero() {
                        table.insert((x.clone(), y.clone()), acc.mul(&inv2));
                    }
                }
            }
        }
        Ok(TwistElement { group: g.clone(), m, table })
    }

    pub fn mul(&self, o: &TwistElement) -> TwistElement {
        let g = &self.group;
        let mut table = BTreeMap::new();
        for ((a, b), c) in &self.table {
            for ((x, y), d) in &o.table {
                add_to(&mut table, (g.add(a, x), g.add(b, y)), c.mul(d));
            }
        }
        TwistElement { table, ..self.clone() }
    }

    pub fn is_one(&self) -> bool {
        let z = self.group.zero();
        self.table.len() == 1 && self.table.get(&(z.clone(), z)).is_some_and(|c| c.is_one())
    }

    /// (id ⊗ ε)(J) and (ε ⊗ id)(J) as kG elements.
    pub fn counit_legs(&self) -> (GroupAlg, GroupAlg) {
        let (mut l, mut r) = (GroupAlg::new(), GroupAlg::new());
        for ((a, b), c) in &self.table {
            add_to(&mut l, a.clone(), c.clone());
            add_to(&mut r, b.clone(), c.clone());
        }
        (l, r)
    }

    /// [(Δ ⊗ id)(J)](J ⊗ 1) = [(id ⊗ Δ)(J)](1 ⊗ J) in kG^{⊗3}, plus normalization and
    /// invertibility against `inverse`.
    pub fn check_axioms(&self, inverse: &TwistElement) -> Result<TwistAxioms, TwistError> {
        let g = &self.group;
        if self.table.len() > 1024 {
            return Err(TwistError::TooLarge(g.order()));
        }
        let mut lhs = Triple::new();
        let mut rhs = Triple::new();
        for ((a, b), c) in &self.table {
            for ((x, y), d) in &self.table {
                let cd = c.mul(d);
                add_to(&mut lhs, (g.add(a, x), g.add(a, y), b.clone()), cd.clone());
                add_to(&mut rhs, (x.clone(), g.add(a, y), g.add(b, y)), cd);
            }
        }
        let one = |v: &GroupAlg| v.len() == 1 && v.get(&g.zero()).is_some_and(|c| c.is_one());
        let (l, r) = self.counit_legs();
        Ok(TwistAxioms { cocycle_identity: lhs == rhs, counit_left: one(&l), counit_right: one(&r), invertible: self.mul(inverse).is_one() })
    }

    /// J(g, h) as a function.
    pub fn coeff(&self, a: &[i64], b: &[i64]) -> CycNum {
        self.table.get(&(a.to_vec(), b.to_vec())).cloned().unwrap_or_else(CycNum::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotents_are_orthogonal_and_complete() {
        let g = FinAbGroup::cyclic_power(3, 2);
        let mut total = GroupAlg::new();
        for chi in g.elements() {
            let e = idempotent(&g, 3, &chi);
            assert_eq!(group_alg_mul(&g, &e, &e), e);
            for (k, c) in e {
                add_to(&mut total, k, c);
            }
        }
        assert_eq!(total.len(), 1);
        assert!(total[&g.zero()].is_one());
    }

    #[test]
    fn table_cocycle_matches_bimultiplicative() {
        let g = FinAbGroup::cyclic_power(3, 2);
        let b = vec![vec![0, 0], vec![1, 0]];
        let s = Cocycle::bimultiplicative(&g, 3, b.clone()).unwrap();
        let t = Cocycle::from_table(&g, 3, |x, y| s.value(x, y)).unwrap();
        let j1 = TwistElement::from_cocycle(&s).unwrap();
        let j2 = TwistElement::from_cocycle(&t).unwrap();
        assert_eq!(j1, j2);
        assert!(s.bicharacter().unwrap().same_as(&t.bicharacter().unwrap()));
    }

    #[test]
    fn non_cocycle_rejected() {
        let g = FinAbGroup::cyclic_power(2, 1);
        let r = Cocycle::from_table(&g, 2, |x, y| if x[0] == 1 && y[0] == 0 { CycNum::from_int(2) } else { CycNum::one() });
        assert!(matches!(r, Err(TwistError::NotCocycle(_))));
    }

    #[test]
    fn ill_defined_exponents_rejected() {
        let g = FinAbGroup::new(&[2, 3]);
        assert_eq!(Cocycle::bimultiplicative(&g, 6, vec![vec![0, 1], vec![0, 0]]), Err(TwistError::IllDefined(0, 1)));
    }
}
