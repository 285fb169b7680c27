//! Exact arithmetic in cyclotomic fields Q(ζ_m).
//!
//! An element is its residue modulo the cyclotomic polynomial Φ_m, written in
//! the power basis 1, ζ, …, ζ^{φ(m)-1}.  Elements of different orders meet in
//! Q(ζ_L) with L = lcm of the orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
#[cfg(test)]
use num_traits::ToPrimitive;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub(crate) struct CycCtx {
    m: u32,
    phi: usize,
    /// Φ_m, low degree first, monic.
    cyclo: Vec<BigInt>,
    /// t^k mod Φ_m for 0 <= k < m.
    pow: Vec<Vec<BigRational>>,
}

fn ctx_cache() -> &'static Mutex<HashMap<u32, Arc<CycCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycCtx>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic order must be positive");
    // t^m - 1 divided by Φ_d for every proper divisor d.
    let mut p: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let q = cyclotomic_poly(d);
            p = div_monic_int(&p, &q);
        }
    }
    p
}

fn div_monic_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

fn ctx(m: u32) -> Arc<CycCtx> {
    let mut cache = ctx_cache().lock().unwrap();
    if let Some(c) = cache.get(&m) {
        return c.clone();
    }
    let cyclo = cyclotomic_poly(m);
    let phi = cyclo.len() - 1;
    let mut pow: Vec<Vec<BigRational>> = Vec::with_capacity(m as usize);
    let mut cur = vec![BigRational::zero(); phi];
    cur[0] = BigRational::one();
    for _ in 0..m {
        pow.push(cur.clone());
        // multiply by t and fold the top coefficient back with Φ_m
        let top = cur[phi - 1].clone();
        let mut next = vec![BigRational::zero(); phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, ni) in next.iter_mut().enumerate() {
                *ni -= &top * BigRational::from_integer(cyclo[i].clone());
            }
        }
        cur = next;
    }
    let c = Arc::new(CycCtx { m, phi, cyclo, pow });
    cache.insert(m, c.clone());
    c
}

/// Euler's totient, the degree of Φ_m.
pub fn euler_phi(m: u32) -> usize {
    ctx(m).phi
}

/// An element of Q(ζ_m).
#[derive(Clone)]
pub struct CycNum {
    ctx: Arc<CycCtx>,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    /// Reduce a raw coefficient sequence Σ c_k ζ^k modulo Φ_m.
    pub fn reduce(raw: &[BigRational], m: u32) -> CycNum {
        let c = ctx(m);
        let mut coeffs = vec![BigRational::zero(); c.phi];
        for (k, rk) in raw.iter().enumerate() {
            if rk.is_zero() {
                continue;
            }
            let p = &c.pow[k % m as usize];
            for (i, pi) in p.iter().enumerate() {
                if !pi.is_zero() {
                    coeffs[i] += rk * pi;
                }
            }
        }
        CycNum { ctx: c, coeffs }
    }

    pub fn from_ratio(r: BigRational) -> CycNum {
        let c = ctx(1);
        CycNum { ctx: c, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> CycNum {
        CycNum::from_ratio(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> CycNum {
        CycNum::from_ratio(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> CycNum {
        CycNum::from_int(0)
    }

    pub fn one() -> CycNum {
        CycNum::from_int(1)
    }

    /// ζ_m^k for any integer k.
    pub fn zeta(m: u32, k: i64) -> CycNum {
        let c = ctx(m);
        let e = k.rem_euclid(m as i64) as usize;
        CycNum { coeffs: c.pow[e].clone(), ctx: c }
    }

    pub fn order(&self) -> u32 {
        self.ctx.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in Q(ζ_l); requires order | l.
    pub fn lift(&self, l: u32) -> CycNum {
        let m = self.ctx.m;
        assert!(l % m == 0, "cannot lift order {} into {}", m, l);
        if l == m {
            return self.clone();
        }
        let step = (l / m) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        CycNum::reduce(&raw, l)
    }

    fn common(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        if a.ctx.m == b.ctx.m {
            return (a.clone(), b.clone());
        }
        // rationals are carried at order 1 and lift for free
        let l = (a.ctx.m as u64).lcm(&(b.ctx.m as u64)) as u32;
        (a.lift(l), b.lift(l))
    }

    pub fn add(&self, o: &CycNum) -> CycNum {
        if self.ctx.m != o.ctx.m {
            let (a, b) = CycNum::common(self, o);
            return a.add(&b);
        }
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x + y).collect();
        CycNum { ctx: self.ctx.clone(), coeffs }
    }

    pub fn sub(&self, o: &CycNum) -> CycNum {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &CycNum) -> CycNum {
        if self.ctx.m != o.ctx.m {
            if let Some(r) = self.as_rational() {
                return o.scale(&r);
            }
            if let Some(r) = o.as_rational() {
                return self.scale(&r);
            }
            let (a, b) = CycNum::common(self, o);
            return a.mul(&b);
        }
        let n = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        CycNum::reduce(&raw, self.ctx.m)
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        CycNum { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|x| x * r).collect() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(CycNum { ctx: self.ctx.clone(), coeffs: {
                let mut v = vec![BigRational::zero(); self.coeffs.len()];
                v[0] = r.recip();
                v
            } });
        }
        // extended Euclid in Q[t] between the element and Φ_m
        let phi_poly: Vec<BigRational> =
            self.ctx.cyclo.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let a = trim(self.coeffs.clone());
        let (g, s, _) = ext_gcd(&a, &phi_poly);
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let s: Vec<BigRational> = s.iter().map(|x| x * &ginv).collect();
        Some(CycNum::reduce(&s, self.ctx.m))
    }

    pub fn div(&self, o: &CycNum) -> Option<CycNum> {
        o.inv().map(|i| self.mul(&i))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> CycNum {
        if e < 0 {
            return self.inv().expect("power of zero with negative exponent").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = CycNum::one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// If `self` = ζ_l^k for some k, return k (smallest nonnegative).
    pub fn root_exponent(&self, l: u32) -> Option<u32> {
        (0..l).find(|&k| CycNum::zeta(l, k as i64) == *self)
    }

    /// Multiplicative order, when `self` is a root of unity of order dividing `bound`.
    pub fn root_order(&self, bound: u32) -> Option<u32> {
        let l = (bound as u64).lcm(&(self.ctx.m as u64)) as u32;
        let k = self.root_exponent(l)?;
        Some(l / (k as u64).gcd(&(l as u64)) as u32)
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().map_or(false, |x| x.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
    v
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
        r.pop();
        r = trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (trim(q), r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Returns (g, s, t) with s·a + t·b = g.
fn ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![BigRational::one()];
    let mut s1 = vec![BigRational::zero()];
    let mut t0 = vec![BigRational::zero()];
    let mut t1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

impl PartialEq for CycNum {
    fn eq(&self, o: &CycNum) -> bool {
        if self.ctx.m == o.ctx.m {
            return self.coeffs == o.coeffs;
        }
        let (a, b) = CycNum::common(self, o);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = if i == 0 {
                fmt_ratio(&a)
            } else {
                let z = if i == 1 {
                    format!("zeta{}", self.ctx.m)
                } else {
                    format!("zeta{}^{}", self.ctx.m, i)
                };
                if a.is_one() {
                    z
                } else {
                    format!("{}*{}", fmt_ratio(&a), z)
                }
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{}", body) } else { body });
            } else {
                parts.push(format!("{} {}", if neg { "-" } else { "+" }, body));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Convenience: integer coefficients to rationals.
pub fn rationals(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys_match_known_values() {
        let to_i = |v: Vec<BigInt>| v.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(to_i(cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(to_i(cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(to_i(cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(to_i(cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(to_i(cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = CycNum::reduce(&rationals(&[2, -1, 3]), 7);
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn mixed_orders_lift() {
        let a = CycNum::zeta(3, 1);
        let b = CycNum::zeta(6, 2);
        assert_eq!(a, b);
        let i = CycNum::zeta(4, 1);
        let p = a.mul(&i);
        assert_eq!(p.order(), 12);
        assert_eq!(p, CycNum::zeta(12, 7));
    }
}
