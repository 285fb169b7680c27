//! Rational functions Q(ζ)(v₁, …, v_k) in lowest terms.

use super::{CycNum, Mono, Poly};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct RatFunc {
    vars: Arc<Vec<String>>,
    num: Poly,
    den: Poly,
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    for v in b {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

impl RatFunc {
    pub fn constant(c: CycNum) -> RatFunc {
        RatFunc { vars: Arc::new(Vec::new()), num: Poly::constant(0, c), den: Poly::one(0) }
    }

    /// The indeterminate `name` in a field whose only variable is `name`.
    pub fn var(name: &str) -> RatFunc {
        RatFunc::var_in(Arc::new(vec![name.to_string()]), 0)
    }

    pub fn var_in(vars: Arc<Vec<String>>, i: usize) -> RatFunc {
        let n = vars.len();
        RatFunc { vars, num: Poly::var(n, i), den: Poly::one(n) }
    }

    pub fn from_poly(vars: Arc<Vec<String>>, p: Poly) -> RatFunc {
        let n = vars.len();
        RatFunc { vars, num: p, den: Poly::one(n) }
    }

    /// Build num/den and reduce to lowest terms. Panics on a zero denominator.
    pub fn new(vars: Arc<Vec<String>>, num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let n = vars.len();
        if num.is_zero() {
            return RatFunc { vars, num: Poly::zero(n), den: Poly::one(n) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.lead().unwrap().1.inv().unwrap();
        RatFunc { vars, num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<CycNum> {
        if self.num.is_constant() && self.den.is_constant() {
            let d = self.den.constant_value().unwrap();
            return self.num.constant_value().unwrap().div(&d);
        }
        None
    }

    /// Re-express in a larger variable list containing all of `self.vars`.
    pub fn embed(&self, vars: &Arc<Vec<String>>) -> RatFunc {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return RatFunc { vars: vars.clone(), num: self.num.clone(), den: self.den.clone() };
        }
        let map: Vec<usize> =
            self.vars.iter().map(|v| vars.iter().position(|w| w == v).expect("variable missing")).collect();
        let n = vars.len();
        RatFunc { vars: vars.clone(), num: self.num.remap(n, &map), den: self.den.remap(n, &map) }
    }

    /// Numerators over the least common denominator of `vals`, in a shared variable list.
    pub fn clear_denominators(vals: &[RatFunc]) -> Vec<Poly> {
        let mut names: Vec<String> = Vec::new();
        for v in vals {
            names = merge_vars(&names, &v.vars);
        }
        let vars = Arc::new(names);
        let vals: Vec<RatFunc> = vals.iter().map(|v| v.embed(&vars)).collect();
        let mut l = Poly::one(vars.len());
        for v in &vals {
            let g = Poly::gcd(&l, &v.den);
            l = l.mul(&v.den.div_exact(&g).unwrap());
        }
        vals.iter().map(|v| v.num.mul(&l.div_exact(&v.den).unwrap())).collect()
    }

    fn align(&self, o: &RatFunc) -> (RatFunc, RatFunc) {
        if Arc::ptr_eq(&self.vars, &o.vars) || *self.vars == *o.vars {
            return (self.clone(), o.embed(&self.vars));
        }
        let vars = Arc::new(merge_vars(&self.vars, &o.vars));
        (self.embed(&vars), o.embed(&vars))
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let (a, b) = self.align(o);
        if a.den == b.den {
            return RatFunc::new(a.vars, a.num.add(&b.num), a.den);
        }
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        RatFunc::new(a.vars, num, a.den.mul(&b.den))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { vars: self.vars.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        let (a, b) = self.align(o);
        if a.is_zero() || b.is_zero() {
            let n = a.vars.len();
            return RatFunc { vars: a.vars, num: Poly::zero(n), den: Poly::one(n) };
        }
        RatFunc::new(a.vars, a.num.mul(&b.num), a.den.mul(&b.den))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.vars.clone(), self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Option<RatFunc> {
        Some(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &CycNum) -> RatFunc {
        RatFunc::new(self.vars.clone(), self.num.scale(c), self.den.clone())
    }

    /// The monomial v^e in the variables of `self`'s field (exponents may be negative).
    pub fn monomial(vars: Arc<Vec<String>>, exps: &[i64]) -> RatFunc {
        let pos: Vec<u32> = exps.iter().map(|&e| e.max(0) as u32).collect();
        let neg: Vec<u32> = exps.iter().map(|&e| (-e).max(0) as u32).collect();
        RatFunc::new(vars, Poly::term(Mono(pos), CycNum::one()), Poly::term(Mono(neg), CycNum::one()))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        let (a, b) = self.align(o);
        if a.den == b.den {
            return a.num == b.num;
        }
        a.num.mul(&b.den) == b.num.mul(&a.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.fmt_with(&self.vars);
        if self.den.is_constant() {
            return write!(f, "{}", n);
        }
        let d = self.den.fmt_with(&self.vars);
        let wrap = |s: String| if s.contains(' ') { format!("({})", s) } else { s };
        write!(f, "{}/{}", wrap(n), wrap(d))
    }
}

/// Whether `f` is an n-th power in the rational-function field, treating every
/// nonzero constant as an n-th power.
pub fn ratfunc_is_nth_power(f: &RatFunc, n: u32) -> Result<bool, &'static str> {
    if f.is_zero() {
        return Err("zero has no well-defined power test");
    }
    if n == 0 {
        return Err("exponent must be at least 1");
    }
    Ok(f.num.is_nth_power(n) && f.den.is_nth_power(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let v = RatFunc::var("v");
        let one = RatFunc::constant(CycNum::one());
        let a = v.mul(&v).sub(&one);
        let b = v.sub(&one);
        let q = a.div(&b).unwrap();
        assert_eq!(q, v.add(&one));
        assert!(q.den().is_constant());
    }

    #[test]
    fn square_of_quotient() {
        let v = RatFunc::var("v");
        let one = RatFunc::constant(CycNum::one());
        let h = v.div(&v.add(&one)).unwrap();
        assert_eq!(ratfunc_is_nth_power(&h.mul(&h), 2), Ok(true));
        assert_eq!(ratfunc_is_nth_power(&v, 2), Ok(false));
    }

    #[test]
    fn mixed_variable_lists() {
        let v = RatFunc::var("v");
        let w = RatFunc::var("w");
        let s = v.add(&w).sub(&v);
        assert_eq!(s, w);
    }
}
