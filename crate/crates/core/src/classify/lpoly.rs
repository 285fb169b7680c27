//! Laurent polynomials over Q(ζ) in v and the unknowns r_k; every monomial is a unit of F.

use crate::scalars::CycNum;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LPoly {
    pub terms: BTreeMap<Vec<i64>, CycNum>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly::default()
    }

    pub fn term(c: CycNum, e: Vec<i64>) -> LPoly {
        let mut p = LPoly::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn constant(nvars: usize, c: CycNum) -> LPoly {
        LPoly::term(c, vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> LPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        LPoly::term(CycNum::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Vec<i64>, c: CycNum) {
        let s = match self.terms.remove(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(e, s);
        }
    }

    pub fn add(&self, o: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &LPoly) -> LPoly {
        self.add(&o.scale(&CycNum::from_int(-1)))
    }

    pub fn scale(&self, c: &CycNum) -> LPoly {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly { terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect() }
    }

    pub fn mul(&self, o: &LPoly) -> LPoly {
        let mut out = LPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }

    /// Multiply by v^a, v being variable 0.
    pub fn shift_v(&self, a: i64) -> LPoly {
        LPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[0] += a;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Divide by the largest monomial dividing every term.
    pub fn strip_monomial(&self) -> LPoly {
        let Some(first) = self.terms.keys().next() else { return self.clone() };
        let mut low = first.clone();
        for e in self.terms.keys() {
            for (l, x) in low.iter_mut().zip(e) {
                *l = (*l).min(*x);
            }
        }
        LPoly { terms: self.terms.iter().map(|(e, c)| (e.iter().zip(&low).map(|(a, b)| a - b).collect(), c.clone())).collect() }
    }

    /// Replace variable i by the monomial c · x^e (e[i] must be 0).
    pub fn substitute(&self, i: usize, c: &CycNum, e: &[i64]) -> LPoly {
        let mut out = LPoly::zero();
        for (k, x) in &self.terms {
            let p = k[i];
            let mut nk = k.clone();
            nk[i] = 0;
            for (a, b) in nk.iter_mut().zip(e) {
                *a += p * b;
            }
            out.add_term(nk, x.mul(&c.pow(p)));
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(names)
                    .filter(|(x, _)| **x != 0)
                    .map(|(x, n)| if *x == 1 { n.clone() } else { format!("{n}^{x}") })
                    .collect();
                let cs = c.to_string();
                let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => cs,
                    (false, true) => mono.join("*"),
                    (false, false) if cs == "-1" => format!("-{}", mono.join("*")),
                    (false, false) => format!("{cs}*{}", mono.join("*")),
                }
            })
            .collect();
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => out += &format!(" - {rest}"),
                None => out += &format!(" + {p}"),
            }
        }
        out
    }
}
