//! The scalar tower: cyclotomic fields, rational-function fields over them,
//! and the q-combinatorics used by the Hopf algebra catalog.

mod cyclotomic;
mod poly;
mod qcomb;
mod ratfunc;

pub use cyclotomic::{cyclotomic_poly, euler_phi, rationals, CycNum};
pub use poly::{Mono, Poly};
pub use qcomb::{gauss_sum, q_binom_by_factorials, q_binom_sym, q_int, q_int_one_sided, QError};
pub use ratfunc::{ratfunc_is_nth_power, RatFunc};

use std::fmt::{Debug, Display};

/// Canonical residue of Σ raw_k ζ^k modulo Φ_m.
pub fn cyc_reduce(raw: &[num_rational::BigRational], m: u32) -> CycNum {
    assert!(m >= 1, "cyclotomic order must be positive");
    CycNum::reduce(raw, m)
}

/// Exact field operations shared by every scalar type in the crate.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_cyc(c: &CycNum) -> Self;
    /// The value as a constant of Q(ζ), if it is one.
    fn as_cyc(&self) -> Option<CycNum>;
    /// Q(ζ)-coordinates of the values after clearing one common denominator; a family
    /// of vectors over Self is Q(ζ)-independent iff the expanded family is.
    fn k_expansion(vals: &[Self]) -> Vec<Vec<(Vec<u32>, CycNum)>>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_cyc(&CycNum::from_int(n))
    }

    fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
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
}

impl Field for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CycNum::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycNum::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CycNum::mul(self, o)
    }
    fn neg(&self) -> Self {
        CycNum::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        CycNum::inv(self)
    }
    fn from_cyc(c: &CycNum) -> Self {
        c.clone()
    }
    fn as_cyc(&self) -> Option<CycNum> {
        Some(self.clone())
    }
    fn k_expansion(vals: &[Self]) -> Vec<Vec<(Vec<u32>, CycNum)>> {
        vals.iter().map(|c| if c.is_zero() { vec![] } else { vec![(vec![], c.clone())] }).collect()
    }
    fn is_one(&self) -> bool {
        CycNum::is_one(self)
    }
    fn pow(&self, e: i64) -> Self {
        CycNum::pow(self, e)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::constant(CycNum::zero())
    }
    fn one() -> Self {
        RatFunc::constant(CycNum::one())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
    fn from_cyc(c: &CycNum) -> Self {
        RatFunc::constant(c.clone())
    }
    fn as_cyc(&self) -> Option<CycNum> {
        self.as_constant()
    }
    fn k_expansion(vals: &[Self]) -> Vec<Vec<(Vec<u32>, CycNum)>> {
        RatFunc::clear_denominators(vals)
            .iter()
            .map(|p| p.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect())
            .collect()
    }
}
