//! Exact linear solving over the rationals.
//!
//! Forward elimination is fraction-free (Bareiss) on the augmented integer
//! matrix; back-substitution is done in exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntMatrix;

/// A solution of `M x = b` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSolution {
    /// The solution orthogonal to the kernel (minimal Euclidean norm).
    pub particular: Vec<BigRational>,
    /// Basis of the rational kernel; `cols - rank` vectors.
    pub kernel_basis: Vec<Vec<BigRational>>,
}

struct Echelon {
    /// Augmented rows after elimination; last entry of each row is the rhs.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn echelon(m: &IntMatrix, b: &[BigInt]) -> Echelon {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..nr)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nr {
            for j in c + 1..=nc {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots }
}

/// Back-substitutes with free variables fixed by `free`.
fn back_substitute(
    e: &Echelon,
    nc: usize,
    rhs: impl Fn(usize) -> BigRational,
    free: impl Fn(usize) -> BigRational,
) -> Vec<BigRational> {
    let mut x: Vec<BigRational> = (0..nc).map(&free).collect();
    for (k, &c) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[k];
        let mut acc = rhs(k);
        for j in c + 1..nc {
            if !row[j].is_zero() {
                acc -= BigRational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = acc / BigRational::from_integer(row[c].clone());
    }
    x
}

/// Solves a square nonsingular rational system; `None` if singular.
pub(crate) fn solve_square(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let s = &f * &a[c][j];
                a[i][j] -= s;
            }
            let s = &f * &b[c];
            b[i] -= s;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn rdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    let zero = vec![BigInt::zero(); m.rows()];
    echelon(m, &zero).pivots.len()
}

/// Solves `M x = b` over the rationals.
///
/// Returns `None` when `b` is not in the rational column span of `M`.
/// Panics if `b.len() != M.rows()`.
pub fn rational_solve(m: &IntMatrix, b: &[BigInt]) -> Option<RationalSolution> {
    assert_eq!(b.len(), m.rows(), "right-hand side length mismatch");
    let nc = m.cols();
    let e = echelon(m, b);
    let rank = e.pivots.len();
    if e.rows[rank..].iter().any(|r| !r[nc].is_zero()) {
        return None;
    }

    let free_cols: Vec<usize> = (0..nc).filter(|c| !e.pivots.contains(c)).collect();
    let zero = |_: usize| BigRational::zero();
    let raw = back_substitute(
        &e,
        nc,
        |k| BigRational::from_integer(e.rows[k][nc].clone()),
        zero,
    );
    let kernel_basis: Vec<Vec<BigRational>> = free_cols
        .iter()
        .map(|&f| {
            back_substitute(&e, nc, zero, |j| {
                if j == f {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
        })
        .collect();

    // Project the raw solution onto the orthogonal complement of the kernel.
    let particular = if kernel_basis.is_empty() {
        raw
    } else {
        let gram: Vec<Vec<BigRational>> = kernel_basis
            .iter()
            .map(|u| kernel_basis.iter().map(|w| rdot(u, w)).collect())
            .collect();
        let proj: Vec<BigRational> = kernel_basis.iter().map(|u| rdot(u, &raw)).collect();
        let coeffs = solve_square(gram, proj).expect("kernel basis is independent");
        let mut x = raw;
        for (c, k) in coeffs.iter().zip(&kernel_basis) {
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi -= c * ki;
            }
        }
        x
    };

    Some(RationalSolution {
        particular,
        kernel_basis,
    })
}
