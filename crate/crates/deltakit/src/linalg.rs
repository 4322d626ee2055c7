//! Small exact linear algebra: rational elimination, integer gcd reduction,
//! kernel lattice bases. Dimensions are at most 3 everywhere.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::{Rat, RatVec};

/// Reduces an integer vector to its primitive form (gcd of entries 1,
/// sign of the first nonzero entry preserved).
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let mut g: i64 = 0;
    for &x in v {
        g = g.gcd(&x);
    }
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

/// Scales a rational vector to a primitive integer vector in the same ray.
pub fn primitive_from_rational(v: &[Rat]) -> Vec<i64> {
    let mut lcm = BigInt::one();
    for r in v {
        lcm = lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return vec![0; v.len()];
    }
    ints.iter()
        .map(|x| {
            let q = x / &g;
            i64::try_from(&q).expect("primitive direction exceeds i64")
        })
        .collect()
}

pub fn det2(m: &[RatVec]) -> Rat {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

pub fn det3(m: &[RatVec]) -> Rat {
    let a = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]);
    let b = &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0]);
    let c = &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    a - b + c
}

/// Determinant of an n x n rational matrix, n <= 3.
pub fn det(m: &[RatVec]) -> Rat {
    match m.len() {
        1 => m[0][0].clone(),
        2 => det2(m),
        3 => det3(m),
        n => panic!("det: unsupported dimension {n}"),
    }
}

/// Rank of a rectangular rational matrix by fraction-free elimination.
pub fn rank(rows: &[RatVec]) -> usize {
    let mut m: Vec<RatVec> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot_row[col];
            for c in col..ncols {
                let sub = &factor * &pivot_row[c];
                m[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Solves the square system `a x = b` exactly. Returns None when singular.
pub fn solve(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    let n = a.len();
    let mut m: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let pv = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &pv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Solves `a x = b` where `a` is n x k with k <= n, requiring an exact
/// solution (consistency is asserted). Used for wall relations.
pub fn solve_rect(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pv = m[row][col].clone();
        for c in col..=ncols {
            m[row][c] = &m[row][c] / &pv;
        }
        for r in 0..nrows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=ncols {
                let sub = &factor * &m[row][c];
                m[r][c] -= sub;
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == nrows {
            break;
        }
    }
    // Inconsistent system: a zero row with nonzero rhs.
    for r in row..nrows {
        if m[r][..ncols].iter().all(|x| x.is_zero()) && !m[r][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, c) in pivots {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

pub fn cross3(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Hermite-style reduction of integer row generators to a basis of the
/// lattice they generate. Returns the nonzero rows.
pub fn lattice_basis(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..ncols {
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if rows[r][col] != 0 && best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut reduced_all = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col] == 0 {
                    continue;
                }
                let q = rows[r][col].div_euclid(rows[pivot_row][col]);
                for c in 0..ncols {
                    rows[r][c] -= q * rows[pivot_row][c];
                }
                if rows[r][col] != 0 {
                    reduced_all = false;
                }
            }
            if reduced_all {
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
    rows
}

/// Basis of the saturated kernel lattice { x in Z^n : <a, x> = 0 } for a
/// primitive integer vector `a` (n <= 3).
pub fn kernel_lattice_basis(a: &[i64]) -> Vec<Vec<i64>> {
    let n = a.len();
    match n {
        1 => vec![],
        2 => vec![vec![-a[1], a[0]]],
        3 => {
            let w = solve_unimodular_completion(a);
            let gens: Vec<Vec<i64>> = (0..3)
                .map(|i| {
                    let mut e = vec![0i64; 3];
                    e[i] = 1;
                    for c in 0..3 {
                        e[c] -= a[i] * w[c];
                    }
                    e
                })
                .collect();
            let basis = lattice_basis(gens);
            debug_assert_eq!(basis.len(), 2);
            basis
        }
        _ => panic!("kernel_lattice_basis: unsupported dimension {n}"),
    }
}

/// Finds w with <a, w> = 1 for primitive a via extended gcd.
fn solve_unimodular_completion(a: &[i64]) -> Vec<i64> {
    fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            (a.abs(), a.signum(), 0)
        } else {
            let (g, x, y) = egcd(b, a.rem_euclid(b));
            (g, y, x - (a.div_euclid(b)) * y)
        }
    }
    let (g1, x1, y1) = egcd(a[0], a[1]);
    let (g2, x2, y2) = egcd(g1, a[2]);
    debug_assert_eq!(g2, 1, "vector must be primitive");
    vec![x2 * x1, x2 * y1, y2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rint, rvec};

    #[test]
    fn primitive_reduces_by_gcd() {
        assert_eq!(primitive(&[4, -6]), vec![2, -3]);
        assert_eq!(primitive(&[0, 5, 10]), vec![0, 1, 2]);
    }

    #[test]
    fn solve_inverts_small_systems() {
        let a = vec![rvec(&[2, 1]), rvec(&[1, 3])];
        let b = rvec(&[5, 10]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, rvec(&[1, 3]));
        let singular = vec![rvec(&[1, 2]), rvec(&[2, 4])];
        assert!(solve(&singular, &rvec(&[1, 1])).is_none());
    }

    #[test]
    fn rect_solve_detects_inconsistency() {
        // One unknown, two equations.
        let a = vec![vec![rint(1)], vec![rint(2)]];
        assert_eq!(solve_rect(&a, &rvec(&[3, 6])).unwrap(), rvec(&[3]));
        assert!(solve_rect(&a, &rvec(&[3, 7])).is_none());
    }

    #[test]
    fn kernel_basis_spans_and_saturates() {
        for a in [[1i64, 0, 0], [2, 3, 5], [1, 1, 1], [0, 2, 1]] {
            let a = primitive(&a);
            let basis = kernel_lattice_basis(&a);
            assert_eq!(basis.len(), 2);
            for b in &basis {
                assert_eq!(a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>(), 0);
            }
            // Saturation: basis together with any w such that <a,w>=1 must
            // generate Z^3, i.e. the 3x3 determinant is +-1.
            let w = solve_unimodular_completion(&a);
            let m: Vec<RatVec> = vec![
                basis[0].iter().map(|&x| rint(x)).collect(),
                basis[1].iter().map(|&x| rint(x)).collect(),
                w.iter().map(|&x| rint(x)).collect(),
            ];
            let d = det(&m);
            assert!(d == rint(1) || d == rint(-1), "det {d}");
        }
    }
}
