//! Sparse multivariate polynomials over Q(ζ).
//!
//! Monomials are ordered degree-lexicographically with the first variable most
//! significant; the leading term is the largest monomial in that order.

use super::CycNum;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Exponent vector under the degree-lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, CycNum>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: CycNum) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, CycNum::one())
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::term(Mono(e), CycNum::one())
    }

    pub fn term(m: Mono, c: CycNum) -> Poly {
        let mut p = Poly::zero(m.0.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CycNum)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    pub fn constant_value(&self) -> Option<CycNum> {
        if self.terms.is_empty() {
            return Some(CycNum::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn lead(&self) -> Option<(&Mono, &CycNum)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &CycNum) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            let e: Vec<u32> = a.0.iter().zip(&m.0).map(|(p, q)| p + q).collect();
            r.add_term(Mono(e), x.mul(c));
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &o.terms {
            for (a, x) in &self.terms {
                let e: Vec<u32> = a.0.iter().zip(&m.0).map(|(p, q)| p + q).collect();
                r.add_term(Mono(e), x.mul(c));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn deg_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dm, dc) = d.lead().unwrap();
        let dinv = dc.inv().unwrap();
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = r.lead() {
            if !dm.divides(rm) {
                return None;
            }
            let e: Vec<u32> = rm.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect();
            let t = Mono(e);
            let c = rc.mul(&dinv);
            r = r.sub(&d.mul_term(&t, &c));
            q.add_term(t, c);
        }
        Some(q)
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                r.add_term(Mono(e), c.mul(&CycNum::from_int(m.0[i] as i64)));
            }
        }
        r
    }

    /// Coefficients as a polynomial in variable `i`, indexed by the power of that variable.
    pub fn coeffs_in(&self, i: usize) -> Vec<Poly> {
        let d = self.deg_in(i) as usize;
        let mut out = vec![Poly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut e = m.0.clone();
            e[i] = 0;
            out[k].add_term(Mono(e), c.clone());
        }
        out
    }

    fn x_power(&self, i: usize, k: u32) -> Mono {
        let mut e = vec![0; self.nvars];
        e[i] = k;
        Mono(e)
    }

    fn main_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&i| self.deg_in(i) > 0)
    }

    /// Content with respect to variable `i` (gcd of the coefficients), made monic.
    pub fn content_in(&self, i: usize) -> Poly {
        let cs = self.coeffs_in(i);
        let mut g = Poly::zero(self.nvars);
        for c in cs.iter().filter(|c| !c.is_zero()) {
            g = Poly::gcd(&g, c);
            if g.is_constant() {
                return Poly::one(self.nvars);
            }
        }
        g
    }

    pub fn primitive_in(&self, i: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(i);
        self.div_exact(&c).expect("content divides")
    }

    fn prem(a: &Poly, b: &Poly, i: usize) -> Poly {
        let db = b.deg_in(i);
        let lcb = b.coeffs_in(i).pop().unwrap();
        let mut r = a.clone();
        while !r.is_zero() && r.deg_in(i) >= db {
            let dr = r.deg_in(i);
            let lcr = r.coeffs_in(i).pop().unwrap();
            let shift = r.x_power(i, dr - db);
            let t = lcr.mul_term(&shift, &CycNum::one()).mul(b);
            r = lcb.mul(&r).sub(&t);
        }
        r
    }

    fn mono_gcd(m: &Mono, b: &Poly) -> Poly {
        let mut e = m.0.clone();
        for t in b.terms.keys() {
            for (x, y) in e.iter_mut().zip(&t.0) {
                *x = (*x).min(*y);
            }
        }
        Poly::term(Mono(e), CycNum::one())
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let n = a.nvars;
        if a.is_constant() || b.is_constant() {
            return Poly::one(n);
        }
        if a.terms.len() == 1 {
            return Poly::mono_gcd(a.terms.keys().next().unwrap(), b);
        }
        if b.terms.len() == 1 {
            return Poly::mono_gcd(b.terms.keys().next().unwrap(), a);
        }
        let x = a.main_var().max(b.main_var()).unwrap();
        let ca = a.content_in(x);
        let cb = b.content_in(x);
        let c = Poly::gcd(&ca, &cb);
        let mut p = a.div_exact(&ca).unwrap();
        let mut q = b.div_exact(&cb).unwrap();
        if p.deg_in(x) < q.deg_in(x) {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() {
            if q.deg_in(x) == 0 {
                p = Poly::one(n);
                break;
            }
            let r = Poly::prem(&p, &q, x);
            p = q;
            // rescaling keeps the rational coefficients from growing along the sequence
            q = if r.is_zero() { r } else { r.primitive_in(x).monic() };
        }
        let g = if p.deg_in(x) == 0 { Poly::one(n) } else { p.primitive_in(x) };
        c.mul(&g).monic()
    }

    /// Squarefree decomposition with respect to the main variable of a primitive polynomial.
    fn yun(f: &Poly, x: usize) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        let df = f.derivative(x);
        let a0 = Poly::gcd(f, &df);
        let mut b = f.div_exact(&a0).unwrap();
        let c = df.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative(x));
        let mut i = 1;
        while b.deg_in(x) > 0 {
            let a = Poly::gcd(&b, &d);
            b = b.div_exact(&a).unwrap();
            let c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative(x));
            if a.deg_in(x) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Multiplicities of the squarefree factors, over all variables.
    pub fn squarefree_multiplicities(&self) -> Vec<(Poly, u32)> {
        assert!(!self.is_zero());
        if self.is_constant() {
            return Vec::new();
        }
        if self.terms.len() == 1 {
            let m = self.terms.keys().next().unwrap();
            let mut out = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    out.push((Poly::var(self.nvars, i), e));
                }
            }
            return out;
        }
        let x = self.main_var().unwrap();
        let c = self.content_in(x);
        let p = self.div_exact(&c).unwrap();
        let mut out = c.squarefree_multiplicities();
        out.extend(Poly::yun(&p, x));
        out
    }

    /// True iff `self` = c·h^n with c a constant; constants count as n-th powers.
    pub fn is_nth_power(&self, n: u32) -> bool {
        self.squarefree_multiplicities().iter().all(|(_, e)| e % n == 0)
    }

    /// Evaluate a monomial-free substitution: map every variable index through `map`
    /// into a polynomial ring with `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut r = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            r.add_term(Mono(e), c.clone());
        }
        r
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            let cs = c.to_string();
            let t = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono.join("*")
            } else if c.neg().is_one() {
                format!("-{}", mono.join("*"))
            } else if cs.contains(' ') {
                format!("({})*{}", cs, mono.join("*"))
            } else {
                format!("{}*{}", cs, mono.join("*"))
            };
            parts.push(t);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn gcd_of_products() {
        let x = v(0);
        let y = v(1);
        let one = Poly::one(2);
        let a = x.add(&y).mul(&x.sub(&one));
        let b = x.add(&y).mul(&y.add(&one));
        assert_eq!(Poly::gcd(&a, &b), x.add(&y));
    }

    #[test]
    fn squarefree_detects_powers() {
        let x = v(0);
        let y = v(1);
        let f = x.add(&y).pow(2).mul(&x.pow(4));
        assert!(f.is_nth_power(2));
        assert!(!f.is_nth_power(4));
        assert!(!x.mul(&y).add(&Poly::one(2)).is_nth_power(2));
    }
}
