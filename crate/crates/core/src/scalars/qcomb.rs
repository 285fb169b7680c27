//! q-integers and q-binomials.
//!
//! `q_int` and `q_binom_sym` use the symmetric convention
//! [n]_q = (q^n − q^{−n})/(q − q^{−1}). `gauss_sum` and `q_int_one_sided` are the
//! one-sided sums 1 + q + … + q^{d−1} that appear in the action formulas.

use super::CycNum;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QError {
    #[error("q = ±1 makes the symmetric q-integer undefined")]
    Degenerate,
    #[error("q-binomial needs 0 ≤ i ≤ n, got n = {n}, i = {i}")]
    Range { n: i64, i: i64 },
}

fn check(q: &CycNum) -> Result<CycNum, QError> {
    let d = q.sub(&q.inv().ok_or(QError::Degenerate)?);
    if d.is_zero() {
        return Err(QError::Degenerate);
    }
    Ok(d)
}

/// Symmetric q-integer [n]_q.
pub fn q_int(n: i64, q: &CycNum) -> Result<CycNum, QError> {
    let d = check(q)?;
    Ok(q.pow(n).sub(&q.pow(-n)).div(&d).unwrap())
}

fn q_factorial(n: i64, q: &CycNum) -> Result<CycNum, QError> {
    let mut acc = CycNum::one();
    for k in 1..=n {
        acc = acc.mul(&q_int(k, q)?);
    }
    Ok(acc)
}

/// Symmetric q-binomial [n choose i]_q = [n]!/([i]![n−i]!).
///
/// Computed by the q-Pascal recursion so that it stays defined when a q-factorial vanishes.
pub fn q_binom_sym(n: i64, i: i64, q: &CycNum) -> Result<CycNum, QError> {
    check(q)?;
    if i < 0 || i > n {
        return Err(QError::Range { n, i });
    }
    // [m, k] = q^{-k}[m-1, k] + q^{m-k}[m-1, k-1]
    let mut row = vec![CycNum::one()];
    for m in 1..=n {
        let mut next = vec![CycNum::one(); (m + 1) as usize];
        for k in 1..m {
            let a = q.pow(-k).mul(&row[k as usize]);
            let b = q.pow(m - k).mul(&row[(k - 1) as usize]);
            next[k as usize] = a.add(&b);
        }
        row = next;
    }
    Ok(row[i as usize].clone())
}

/// Symmetric q-factorial ratio, used only as a cross-check when no factorial vanishes.
pub fn q_binom_by_factorials(n: i64, i: i64, q: &CycNum) -> Result<Option<CycNum>, QError> {
    let den = q_factorial(i, q)?.mul(&q_factorial(n - i, q)?);
    Ok(q_factorial(n, q)?.div(&den))
}

/// 1 + ζ + … + ζ^{d−1}.
pub fn gauss_sum(d: i64, zeta: &CycNum) -> CycNum {
    assert!(d >= 0, "gauss_sum needs d ≥ 0");
    let mut acc = CycNum::zero();
    let mut p = CycNum::one();
    for _ in 0..d {
        acc = acc.add(&p);
        p = p.mul(zeta);
    }
    acc
}

/// One-sided q-integer (1 − ζ^d)/(1 − ζ), equal to `gauss_sum` for d ≥ 0 and
/// extended to negative d by the same formula.
pub fn q_int_one_sided(d: i64, zeta: &CycNum) -> CycNum {
    if d >= 0 {
        return gauss_sum(d, zeta);
    }
    let one = CycNum::one();
    let den = one.sub(zeta);
    match one.sub(&zeta.pow(d)).div(&den) {
        Some(v) => v,
        None => CycNum::from_int(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_matches_factorials() {
        let q = CycNum::zeta(7, 1);
        for n in 0..6 {
            for i in 0..=n {
                let a = q_binom_sym(n, i, &q).unwrap();
                let b = q_binom_by_factorials(n, i, &q).unwrap().unwrap();
                assert_eq!(a, b, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn degenerate_q_rejected() {
        assert_eq!(q_int(2, &CycNum::one()), Err(QError::Degenerate));
        assert_eq!(q_int(2, &CycNum::from_int(-1)), Err(QError::Degenerate));
    }

    #[test]
    fn one_sided_negative() {
        let z = CycNum::zeta(5, 1);
        // (1 - z^{-1})/(1 - z) = -z^{-1}
        assert_eq!(q_int_one_sided(-1, &z), z.inv().unwrap().neg());
    }
}
