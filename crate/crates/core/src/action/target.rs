//! Target algebras: q-polynomial algebras and finite field extensions F[u]/(u^n − v).

use crate::scalars::{CycNum, Field, RatFunc};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

/// Elements as maps from monomial exponent vectors to coefficients.
pub type Elem<S> = BTreeMap<Vec<i64>, S>;

/// A target generator or its inverse.
pub type Letter = (usize, i64);

#[derive(Clone, Debug)]
pub struct TargetRelation<S> {
    /// The word `lhs` equals Σ c·word in the target.
    pub lhs: Vec<Letter>,
    pub rhs: Vec<(S, Vec<Letter>)>,
}

pub fn add_into<S: Field>(v: &mut Elem<S>, k: Vec<i64>, c: S) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(x) => {
            let s = x.add(&c);
            if s.is_zero() {
                v.remove(&k);
            } else {
                *x = s;
            }
        }
        None => {
            v.insert(k, c);
        }
    }
}

pub fn elem_add<S: Field>(a: &Elem<S>, b: &Elem<S>) -> Elem<S> {
    let mut out = a.clone();
    for (k, c) in b {
        add_into(&mut out, k.clone(), c.clone());
    }
    out
}

pub fn elem_sub<S: Field>(a: &Elem<S>, b: &Elem<S>) -> Elem<S> {
    let mut out = a.clone();
    for (k, c) in b {
        add_into(&mut out, k.clone(), c.neg());
    }
    out
}

pub fn elem_scale<S: Field>(a: &Elem<S>, c: &S) -> Elem<S> {
    if c.is_zero() {
        return Elem::new();
    }
    a.iter().map(|(k, x)| (k.clone(), x.mul(c))).collect()
}

pub trait Target: Clone {
    type S: Field;

    fn ngens(&self) -> usize;
    fn var_names(&self) -> Vec<String>;
    /// z^a · z^b as a scalar times a monomial.
    fn mul_keys(&self, a: &[i64], b: &[i64]) -> (Self::S, Vec<i64>);
    fn invertible(&self, i: usize) -> bool;
    /// Monomials spanning the slice of degree ≤ cap (the whole basis for finite models).
    fn slice(&self, cap: usize) -> Vec<Vec<i64>>;
    fn relations(&self) -> Vec<TargetRelation<Self::S>>;

    fn one_key(&self) -> Vec<i64> {
        vec![0; self.ngens()]
    }

    fn one(&self) -> Elem<Self::S> {
        let mut e = Elem::new();
        e.insert(self.one_key(), Self::S::one());
        e
    }

    fn letter(&self, l: Letter) -> Elem<Self::S> {
        let mut k = self.one_key();
        k[l.0] = l.1;
        let mut e = Elem::new();
        e.insert(k, Self::S::one());
        e
    }

    fn gen(&self, i: usize) -> Elem<Self::S> {
        self.letter((i, 1))
    }

    /// Write the monomial as letter · rest with no scalar, splitting at the first nonzero exponent.
    fn split_first(&self, key: &[i64]) -> Option<(Letter, Vec<i64>)> {
        let i = key.iter().position(|&a| a != 0)?;
        let s = key[i].signum();
        let mut rest = key.to_vec();
        rest[i] -= s;
        Some(((i, s), rest))
    }

    fn mul(&self, a: &Elem<Self::S>, b: &Elem<Self::S>) -> Elem<Self::S> {
        let mut out = Elem::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                let (c, k) = self.mul_keys(ka, kb);
                add_into(&mut out, k, ca.mul(cb).mul(&c));
            }
        }
        out
    }

    fn word(&self, w: &[Letter]) -> Elem<Self::S> {
        w.iter().fold(self.one(), |acc, &l| self.mul(&acc, &self.letter(l)))
    }

    fn fmt_key(&self, k: &[i64]) -> String {
        let names = self.var_names();
        let mut s = String::new();
        for (i, &a) in k.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&names[i]);
            if a != 1 {
                let _ = write!(s, "^{}", a);
            }
        }
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    fn fmt_elem(&self, e: &Elem<Self::S>) -> String {
        if e.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = e.iter().rev().map(|(k, c)| format!("({}) {}", c, self.fmt_key(k))).collect();
        parts.join(" + ")
    }
}

/// k⟨z₁…z_k⟩/(z_i z_j − c_ij z_j z_i), optionally with some z_i inverted.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly {
    pub vars: Vec<String>,
    /// c[i][j] for i < j; the other entries are ignored.
    pub comm: Vec<Vec<CycNum>>,
    pub laurent: Vec<bool>,
}

impl QPoly {
    pub fn commutative(vars: &[&str]) -> QPoly {
        let k = vars.len();
        QPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            comm: vec![vec![CycNum::one(); k]; k],
            laurent: vec![false; k],
        }
    }

    /// A_q: z_i z_j = q z_j z_i for i < j.
    pub fn quantum_plane(k: usize, q: &CycNum) -> QPoly {
        let vars: Vec<String> = (1..=k).map(|i| format!("z{i}")).collect();
        let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let mut p = QPoly::commutative(&refs);
        for i in 0..k {
            for j in i + 1..k {
                p.comm[i][j] = q.clone();
            }
        }
        p
    }

    pub fn with_laurent(mut self, i: usize) -> QPoly {
        self.laurent[i] = true;
        self
    }

    pub fn c(&self, i: usize, j: usize) -> CycNum {
        if i < j {
            self.comm[i][j].clone()
        } else if i > j {
            self.comm[j][i].inv().unwrap()
        } else {
            CycNum::one()
        }
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.vars.len();
        (0..k).all(|i| (i + 1..k).all(|j| self.comm[i][j].is_one()))
    }
}

impl Target for QPoly {
    type S = CycNum;

    fn ngens(&self) -> usize {
        self.vars.len()
    }

    fn var_names(&self) -> Vec<String> {
        self.vars.clone()
    }

    fn mul_keys(&self, a: &[i64], b: &[i64]) -> (CycNum, Vec<i64>) {
        // move each z_j of b left past the z_i of a with i > j: z_i z_j = c_ji^{-1} z_j z_i
        let k = a.len();
        let mut c = CycNum::one();
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..i {
                if b[j] != 0 {
                    c = c.mul(&self.comm[j][i].pow(-a[i] * b[j]));
                }
            }
        }
        (c, a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    fn invertible(&self, i: usize) -> bool {
        self.laurent[i]
    }

    fn slice(&self, cap: usize) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        let mut budget = vec![cap as i64];
        for i in 0..self.vars.len() {
            let mut next = Vec::new();
            let mut nb = Vec::new();
            for (v, &b) in out.iter().zip(&budget) {
                let lo = if self.laurent[i] { -b } else { 0 };
                for a in lo..=b {
                    let mut w = v.clone();
                    w.push(a);
                    next.push(w);
                    nb.push(b - a.abs());
                }
            }
            out = next;
            budget = nb;
        }
        out.sort_by_key(|k| (k.iter().map(|a| a.abs()).sum::<i64>(), k.clone()));
        out
    }

    fn relations(&self) -> Vec<TargetRelation<CycNum>> {
        let k = self.vars.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                out.push(TargetRelation { lhs: vec![(i, 1), (j, 1)], rhs: vec![(self.comm[i][j].clone(), vec![(j, 1), (i, 1)])] });
            }
            if self.laurent[i] {
                out.push(TargetRelation { lhs: vec![(i, 1), (i, -1)], rhs: vec![(CycNum::one(), vec![])] });
                out.push(TargetRelation { lhs: vec![(i, -1), (i, 1)], rhs: vec![(CycNum::one(), vec![])] });
            }
        }
        out
    }
}

/// L = F[u₁…u_k]/(u_i^{n_i} − v_i) over F = Q(ζ)(v₁…v_k), possibly restricted to a
/// subalgebra spanned by a subset of the monomial basis.
#[derive(Clone, Debug)]
pub struct ExtFieldModel {
    pub names: Vec<String>,
    pub fvars: Arc<Vec<String>>,
    pub n: Vec<u32>,
    pub basis: Vec<Vec<i64>>,
}

impl ExtFieldModel {
    pub fn new(names: &[String], n: &[u32]) -> ExtFieldModel {
        let fvars: Vec<String> = (1..=names.len()).map(|i| format!("v{i}")).collect();
        let mut basis = vec![Vec::new()];
        for &ni in n {
            let mut next = Vec::new();
            for b in &basis {
                for a in 0..ni as i64 {
                    let mut w = b.clone();
                    w.push(a);
                    next.push(w);
                }
            }
            basis = next;
        }
        ExtFieldModel { names: names.to_vec(), fvars: Arc::new(fvars), n: n.to_vec(), basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn v(&self, i: usize) -> RatFunc {
        RatFunc::var_in(self.fvars.clone(), i)
    }

    /// Reduce an arbitrary exponent vector: u^e = v^{⌊e/n⌋} u^{e mod n}.
    pub fn normalize(&self, e: &[i64]) -> (RatFunc, Vec<i64>) {
        let carries: Vec<i64> = e.iter().zip(&self.n).map(|(&a, &n)| a.div_euclid(n as i64)).collect();
        let rest: Vec<i64> = e.iter().zip(&self.n).map(|(&a, &n)| a.rem_euclid(n as i64)).collect();
        (RatFunc::monomial(self.fvars.clone(), &carries), rest)
    }

    pub fn restrict(&self, basis: Vec<Vec<i64>>) -> ExtFieldModel {
        ExtFieldModel { basis, ..self.clone() }
    }
}

impl Target for ExtFieldModel {
    type S = RatFunc;

    fn ngens(&self) -> usize {
        self.names.len()
    }

    fn var_names(&self) -> Vec<String> {
        self.names.clone()
    }

    fn mul_keys(&self, a: &[i64], b: &[i64]) -> (RatFunc, Vec<i64>) {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&s)
    }

    fn invertible(&self, _i: usize) -> bool {
        true
    }

    fn letter(&self, l: Letter) -> Elem<RatFunc> {
        let mut k = self.one_key();
        k[l.0] = l.1;
        let (c, key) = self.normalize(&k);
        let mut e = Elem::new();
        e.insert(key, c);
        e
    }

    fn slice(&self, _cap: usize) -> Vec<Vec<i64>> {
        self.basis.clone()
    }

    fn relations(&self) -> Vec<TargetRelation<RatFunc>> {
        let k = self.names.len();
        let mut out = Vec::new();
        for i in 0..k {
            out.push(TargetRelation { lhs: vec![(i, 1); self.n[i] as usize], rhs: vec![(self.v(i), vec![])] });
            for j in i + 1..k {
                out.push(TargetRelation { lhs: vec![(i, 1), (j, 1)], rhs: vec![(RatFunc::one(), vec![(j, 1), (i, 1)])] });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_plane_reordering() {
        let q = CycNum::zeta(3, 1);
        let a = QPoly::quantum_plane(2, &q);
        // z2 z1 = q^{-1} z1 z2
        let p = a.mul(&a.gen(1), &a.gen(0));
        assert_eq!(p.get(&vec![1, 1]), Some(&q.inv().unwrap()));
    }

    #[test]
    fn field_model_wraps() {
        let l = ExtFieldModel::new(&["u".to_string()], &[3]);
        let u = l.gen(0);
        let u3 = l.mul(&l.mul(&u, &u), &u);
        assert_eq!(u3.get(&vec![0]), Some(&l.v(0)));
        assert_eq!(l.dim(), 3);
    }

    #[test]
    fn laurent_slice() {
        let a = QPoly::commutative(&["z", "w"]).with_laurent(0);
        let s = a.slice(1);
        assert_eq!(s.len(), 4);
    }
}
