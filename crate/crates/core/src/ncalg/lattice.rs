//! Integer lattices: Hermite and Smith normal forms, and linear congruences mod m.

use num_integer::Integer;

pub type IMat = Vec<Vec<i128>>;

fn fdiv(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

fn to_i128(a: &[Vec<i64>]) -> IMat {
    a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

/// Row Hermite normal form of the lattice spanned by `rows` (zero rows dropped).
///
/// Output rows are upper triangular with positive pivots and entries above each
/// pivot reduced into [0, pivot).
pub fn hnf(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut a: IMat = to_i128(rows);
    let mut out: IMat = Vec::new();
    let mut col = 0;
    while col < ncols && !a.is_empty() {
        loop {
            let nz: Vec<usize> = (0..a.len()).filter(|&i| a[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = fdiv(a[i][col], a[p][col]);
                    for j in 0..ncols {
                        a[i][j] -= q * a[p][j];
                    }
                }
            }
        }
        if let Some(p) = (0..a.len()).find(|&i| a[i][col] != 0) {
            let mut row = a.remove(p);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(row);
        }
        a.retain(|r| r.iter().any(|&x| x != 0));
        col += 1;
    }
    for i in 0..out.len() {
        let pc = (0..ncols).find(|&j| out[i][j] != 0).unwrap();
        for k in 0..i {
            let q = fdiv(out[k][pc], out[i][pc]);
            if q != 0 {
                for j in 0..ncols {
                    out[k][j] -= q * out[i][j];
                }
            }
        }
    }
    out.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
}

/// Smith form: returns (d, u, v) with u·a·v = diag(d) (rectangular), u and v unimodular.
pub fn smith(a: &[Vec<i64>]) -> (Vec<i128>, IMat, IMat) {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut m = to_i128(a);
    let mut u: IMat = (0..nr).map(|i| (0..nr).map(|j| (i == j) as i128).collect()).collect();
    let mut v: IMat = (0..nc).map(|i| (0..nc).map(|j| (i == j) as i128).collect()).collect();
    let r = nr.min(nc);
    for t in 0..r {
        // pick the smallest nonzero entry in the remaining block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            u.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..nr {
                let q = fdiv(m[i][t], m[t][t]);
                if q != 0 {
                    for j in 0..nc {
                        m[i][j] -= q * m[t][j];
                    }
                    for j in 0..nr {
                        u[i][j] -= q * u[t][j];
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..nc {
                let q = fdiv(m[t][j], m[t][t]);
                if q != 0 {
                    for i in 0..nr {
                        m[i][j] -= q * m[i][t];
                    }
                    for i in 0..nc {
                        v[i][j] -= q * v[i][t];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility condition: pivot must divide the rest of the block
            let mut bad = None;
            'outer: for i in t + 1..nr {
                for j in t + 1..nc {
                    if m[i][j] % m[t][t] != 0 {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in 0..nc {
                        m[t][j] += m[i][j];
                    }
                    for j in 0..nr {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for j in 0..nc {
                m[t][j] = -m[t][j];
            }
            for j in 0..nr {
                u[t][j] = -u[t][j];
            }
        }
    }
    let d = (0..r).map(|i| m[i][i]).collect();
    (d, u, v)
}

/// Outcome of solving M·x ≡ t (mod m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Congruence {
    Solvable(Vec<i64>),
    /// λ with λ·M ≡ 0 and λ·t ≢ 0 (mod m).
    Infeasible(Vec<i64>),
}

/// Solve the linear system M·x ≡ t (mod m) over Z/mZ.
pub fn solve_mod(mat: &[Vec<i64>], t: &[i64], m: i64) -> Congruence {
    let nr = mat.len();
    let nc = if nr == 0 { 0 } else { mat[0].len() };
    let (d, u, v) = smith(mat);
    let mi = m as i128;
    let ut: Vec<i128> = (0..nr).map(|i| (0..nr).map(|j| u[i][j] * t[j] as i128).sum::<i128>().rem_euclid(mi)).collect();
    let mut y = vec![0i128; nc];
    for i in 0..nr {
        let di = if i < d.len() { d[i].rem_euclid(mi) } else { 0 };
        let g = di.gcd(&mi);
        if ut[i] % g != 0 {
            let k = mi / g;
            let lam: Vec<i64> = u[i].iter().map(|&x| (k * x).rem_euclid(mi) as i64).collect();
            return Congruence::Infeasible(lam);
        }
        if i < nc && di != 0 {
            // di/g · y ≡ ut/g (mod m/g)
            let mg = mi / g;
            let a = (di / g).rem_euclid(mg);
            let b = (ut[i] / g).rem_euclid(mg);
            y[i] = if mg == 1 { 0 } else { (b * mod_inverse(a, mg)).rem_euclid(mg) };
        }
    }
    let x: Vec<i64> = (0..nc).map(|i| (0..nc).map(|j| v[i][j] * y[j]).sum::<i128>().rem_euclid(mi) as i64).collect();
    Congruence::Solvable(x)
}

pub fn mod_inverse(a: i128, m: i128) -> i128 {
    let e = a.extended_gcd(&m);
    assert_eq!(e.gcd, 1, "not invertible");
    e.x.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &IMat, b: &IMat) -> IMat {
        let n = a.len();
        let k = b.len();
        let p = if k == 0 { 0 } else { b[0].len() };
        (0..n).map(|i| (0..p).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
    }

    #[test]
    fn smith_of_cartan_a2() {
        let a = vec![vec![2, -1], vec![-1, 2]];
        let (d, u, v) = smith(&a);
        assert_eq!(d, vec![1, 3]);
        let prod = matmul(&matmul(&u, &to_i128(&a)), &v);
        assert_eq!(prod, vec![vec![1, 0], vec![0, 3]]);
    }

    #[test]
    fn hnf_reduces() {
        let h = hnf(&[vec![4, 2], vec![2, 2]], 2);
        assert_eq!(h, vec![vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn congruence_witness() {
        // 3x ≡ 1 mod 3 has no solution
        match solve_mod(&[vec![3]], &[1], 3) {
            Congruence::Infeasible(l) => assert_eq!(l, vec![1]),
            other => panic!("{:?}", other),
        }
        assert_eq!(solve_mod(&[vec![2]], &[1], 5), Congruence::Solvable(vec![3]));
    }
}
