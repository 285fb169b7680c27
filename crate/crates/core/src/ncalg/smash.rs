//! The group layer kG ⋉ k⟨X⟩: elements are sums of g·w with g in a finite abelian
//! group acting diagonally on the skew generators X by conjugation.

use super::group::GroupLattice;
use super::word::{NCPoly, Word};
use crate::scalars::CycNum;
use std::collections::BTreeMap;
use thiserror::Error;

/// (X-word, group element) standing for g·w.
pub type GKey = (Word, Vec<i64>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SmashError {
    #[error("conjugation character of skew generator {x} is not trivial on the group relations")]
    BadCharacter { x: usize },
    #[error("root order {m} is not a multiple of the group exponent {e}")]
    RootOrder { m: u32, e: u64 },
}

/// Context: the group, the number of skew generators, and the conjugation table
/// g_i x g_i^{-1} = ζ_m^{conj[x][i]} x.
#[derive(Clone, Debug)]
pub struct Smash {
    pub group: GroupLattice,
    pub nx: usize,
    pub conj: Vec<Vec<i64>>,
    pub m: u32,
    zpow: Vec<CycNum>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct GPoly {
    pub terms: BTreeMap<GKey, CycNum>,
}

impl GPoly {
    pub fn zero() -> GPoly {
        GPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: GKey, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add(&self, o: &GPoly) -> GPoly {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &GPoly) -> GPoly {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.neg());
        }
        r
    }

    pub fn scale(&self, c: &CycNum) -> GPoly {
        let mut r = GPoly::zero();
        for (k, x) in &self.terms {
            r.add_term(k.clone(), x.mul(c));
        }
        r
    }

    pub fn neg(&self) -> GPoly {
        self.scale(&CycNum::from_int(-1))
    }

    /// Largest X-degree among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.terms.keys().map(|(w, _)| w.len()).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// True when every term has trivial group part.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(|(_, g)| g.iter().all(|&x| x == 0))
    }

    pub fn letters(&self) -> Vec<u16> {
        let mut v: Vec<u16> = self.terms.keys().flat_map(|(w, _)| w.0.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl Smash {
    pub fn new(group: GroupLattice, conj: Vec<Vec<i64>>, m: u32) -> Result<Smash, SmashError> {
        let nx = conj.len();
        if m as u64 % group.exponent() != 0 {
            return Err(SmashError::RootOrder { m, e: group.exponent() });
        }
        for (x, row) in conj.iter().enumerate() {
            for rel in group.relations() {
                let s: i64 = row.iter().zip(rel).map(|(a, b)| a * b).sum();
                if s.rem_euclid(m as i64) != 0 {
                    return Err(SmashError::BadCharacter { x });
                }
            }
        }
        let conj = conj.into_iter().map(|r| r.into_iter().map(|c| c.rem_euclid(m as i64)).collect()).collect();
        let zpow = (0..m).map(|k| CycNum::zeta(m, k as i64)).collect();
        Ok(Smash { group, nx, conj, m, zpow })
    }

    pub fn zeta(&self, k: i64) -> CycNum {
        self.zpow[k.rem_euclid(self.m as i64) as usize].clone()
    }

    /// Exponent e with g·w·g^{-1} = ζ^e w.
    pub fn weight(&self, w: &Word, g: &[i64]) -> i64 {
        let mut s = 0i64;
        for &x in &w.0 {
            for (c, a) in self.conj[x as usize].iter().zip(g) {
                s += c * a;
            }
        }
        s.rem_euclid(self.m as i64)
    }

    /// Character exponents of a word: the tuple (weight at each group generator).
    pub fn word_character(&self, w: &Word) -> Vec<i64> {
        let r = self.group.rank();
        let mut out = vec![0i64; r];
        for &x in &w.0 {
            for i in 0..r {
                out[i] += self.conj[x as usize][i];
            }
        }
        out.iter().map(|c| c.rem_euclid(self.m as i64)).collect()
    }

    pub fn one(&self) -> GPoly {
        self.key((Word::empty(), self.group.identity()))
    }

    pub fn key(&self, k: GKey) -> GPoly {
        let mut p = GPoly::zero();
        p.add_term(k, CycNum::one());
        p
    }

    pub fn scalar(&self, c: CycNum) -> GPoly {
        let mut p = GPoly::zero();
        p.add_term((Word::empty(), self.group.identity()), c);
        p
    }

    pub fn x(&self, i: usize) -> GPoly {
        self.key((Word::letter(i as u16), self.group.identity()))
    }

    pub fn g(&self, a: &[i64]) -> GPoly {
        self.key((Word::empty(), self.group.reduce(a)))
    }

    /// (g·u)(h·v) = ζ^{−wt(u,h)} (gh)·(uv).
    pub fn mul_keys(&self, a: &GKey, b: &GKey) -> (GKey, i64) {
        let e = -self.weight(&a.0, &b.1);
        ((a.0.concat(&b.0), self.group.mul(&a.1, &b.1)), e)
    }

    pub fn mul(&self, a: &GPoly, b: &GPoly) -> GPoly {
        let mut r = GPoly::zero();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let (k, e) = self.mul_keys(ka, kb);
                r.add_term(k, ca.mul(cb).mul(&self.zeta(e)));
            }
        }
        r
    }

    pub fn pow(&self, a: &GPoly, k: usize) -> GPoly {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn word(&self, letters: &[u16]) -> GPoly {
        self.key((Word(letters.to_vec()), self.group.identity()))
    }

    /// g·p·g^{-1}.
    pub fn conjugate(&self, p: &GPoly, g: &[i64]) -> GPoly {
        let mut r = GPoly::zero();
        for ((w, h), c) in &p.terms {
            r.add_term((w.clone(), h.clone()), c.mul(&self.zeta(self.weight(w, g))));
        }
        r
    }

    /// Character exponents of p if it is a weight vector under conjugation.
    pub fn weight_of(&self, p: &GPoly) -> Option<Vec<i64>> {
        let mut it = p.terms.keys();
        let first = it.next()?;
        let chi = self.word_character(&first.0);
        for (w, _) in it {
            if self.word_character(w) != chi {
                return None;
            }
        }
        Some(chi)
    }

    /// The 1_χ-component as an element of k⟨X⟩: Σ c·χ(g)·w.
    pub fn char_component(&self, p: &GPoly, chi: &[i64]) -> NCPoly {
        let mut r = NCPoly::zero();
        for ((w, g), c) in &p.terms {
            let e = GroupLattice::pair(chi, g, self.m as u64);
            r.add_term(w.clone(), c.mul(&self.zeta(e)));
        }
        r
    }

    /// Read a word in the full alphabet (grouplikes 0..r, then skew generators).
    pub fn from_ncpoly(&self, p: &NCPoly) -> GPoly {
        let r = self.group.rank() as u16;
        let mut out = GPoly::zero();
        for (w, c) in &p.terms {
            let mut acc = (Word::empty(), self.group.identity());
            let mut e = 0i64;
            for &s in &w.0 {
                let k = if s < r {
                    let mut g = self.group.identity();
                    g[s as usize] = 1;
                    (Word::empty(), g)
                } else {
                    (Word::letter(s - r), self.group.identity())
                };
                let (nk, de) = self.mul_keys(&acc, &k);
                acc = nk;
                e += de;
            }
            out.add_term(acc, c.mul(&self.zeta(e)));
        }
        out
    }

    /// Write g·w as the word g_1^{a_1}⋯g_r^{a_r} w in the full alphabet.
    pub fn to_ncpoly(&self, p: &GPoly) -> NCPoly {
        let r = self.group.rank() as u16;
        let mut out = NCPoly::zero();
        for ((w, g), c) in &p.terms {
            let mut letters = Vec::new();
            for (i, &a) in g.iter().enumerate() {
                letters.extend(std::iter::repeat(i as u16).take(a as usize));
            }
            letters.extend(w.0.iter().map(|&x| x + r));
            out.add_term(Word(letters), c.clone());
        }
        out
    }
}

/// Elements of a k-fold tensor power of the group layer.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Tensor {
    pub terms: BTreeMap<Vec<GKey>, CycNum>,
}

impl Tensor {
    pub fn zero() -> Tensor {
        Tensor::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: Vec<GKey>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.neg());
        }
        r
    }

    pub fn scale(&self, c: &CycNum) -> Tensor {
        let mut r = Tensor::zero();
        for (k, x) in &self.terms {
            r.add_term(k.clone(), x.mul(c));
        }
        r
    }

    pub fn pure(legs: &[GPoly]) -> Tensor {
        let mut acc = Tensor::zero();
        acc.add_term(Vec::new(), CycNum::one());
        for p in legs {
            let mut next = Tensor::zero();
            for (k, c) in &acc.terms {
                for (kp, cp) in &p.terms {
                    let mut nk = k.clone();
                    nk.push(kp.clone());
                    next.add_term(nk, c.mul(cp));
                }
            }
            acc = next;
        }
        acc
    }

    /// Collect the terms as Σ_k (leg i part) ⊗ rest, grouped by the other legs.
    pub fn split_leg(&self, i: usize) -> BTreeMap<Vec<GKey>, GPoly> {
        let mut out: BTreeMap<Vec<GKey>, GPoly> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut rest = k.clone();
            let leg = rest.remove(i);
            out.entry(rest).or_default().add_term(leg, c.clone());
        }
        out
    }

    pub fn join_leg(i: usize, parts: &BTreeMap<Vec<GKey>, GPoly>) -> Tensor {
        let mut t = Tensor::zero();
        for (rest, p) in parts {
            for (k, c) in &p.terms {
                let mut nk = rest.clone();
                nk.insert(i, k.clone());
                t.add_term(nk, c.clone());
            }
        }
        t
    }
}

impl Smash {
    pub fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let mut r = Tensor::zero();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let mut e = 0;
                let mut k = Vec::with_capacity(ka.len());
                for (x, y) in ka.iter().zip(kb) {
                    let (nk, de) = self.mul_keys(x, y);
                    e += de;
                    k.push(nk);
                }
                r.add_term(k, ca.mul(cb).mul(&self.zeta(e)));
            }
        }
        r
    }

    pub fn tensor_one(&self, legs: usize) -> Tensor {
        let mut t = Tensor::zero();
        t.add_term(vec![(Word::empty(), self.group.identity()); legs], CycNum::one());
        t
    }

    /// Apply a linear map leg-wise to leg i.
    pub fn map_leg<F: FnMut(&GPoly) -> GPoly>(&self, t: &Tensor, i: usize, mut f: F) -> Tensor {
        let parts = t.split_leg(i);
        let mapped: BTreeMap<Vec<GKey>, GPoly> = parts.into_iter().map(|(k, p)| (k, f(&p))).collect();
        Tensor::join_leg(i, &mapped)
    }

    /// Multiply the legs of a two-leg tensor together.
    pub fn multiply_legs(&self, t: &Tensor) -> GPoly {
        let mut r = GPoly::zero();
        for (k, c) in &t.terms {
            let mut acc = (Word::empty(), self.group.identity());
            let mut e = 0;
            for leg in k {
                let (nk, de) = self.mul_keys(&acc, leg);
                acc = nk;
                e += de;
            }
            r.add_term(acc, c.mul(&self.zeta(e)));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taft3() -> Smash {
        Smash::new(GroupLattice::cyclic_product(&[3]), vec![vec![1]], 3).unwrap()
    }

    #[test]
    fn moving_group_left() {
        let s = taft3();
        // x·g = ζ^{-1} g·x
        let xg = s.mul(&s.x(0), &s.g(&[1]));
        let mut expect = GPoly::zero();
        expect.add_term((Word::letter(0), vec![1]), CycNum::zeta(3, -1));
        assert_eq!(xg, expect);
    }

    #[test]
    fn group_wraps() {
        let s = taft3();
        assert_eq!(s.pow(&s.g(&[1]), 3), s.one());
    }
}
