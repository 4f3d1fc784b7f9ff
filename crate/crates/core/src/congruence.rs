//! Exact symmetric congruence diagonalization over Q.
//!
//! Produces an invertible rational `P` with `P^T A P` diagonal. The columns
//! of `P` are mutually orthogonal for the form, which gives the inertia, a
//! canonical vector of positive square, and a basis of the radical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::clear_denominators;
use crate::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Diagonal of `P^T A P`.
    pub diagonal: Vec<BigRational>,
    /// Columns of `P`.
    pub columns: Vec<Vec<BigRational>>,
}

impl Diagonalization {
    pub fn inertia(&self) -> (usize, usize, usize) {
        let pos = self.diagonal.iter().filter(|d| d.is_positive()).count();
        let zero = self.diagonal.iter().filter(|d| d.is_zero()).count();
        (pos, zero, self.diagonal.len() - pos - zero)
    }

    /// First column with positive square, as a primitive integer vector.
    pub fn positive_vector(&self) -> Option<Vec<BigInt>> {
        let k = self.diagonal.iter().position(|d| d.is_positive())?;
        Some(clear_denominators(&self.columns[k]))
    }

    /// Integer vectors spanning the radical of the form over Q.
    pub fn radical(&self) -> Vec<Vec<BigInt>> {
        self.diagonal
            .iter()
            .zip(&self.columns)
            .filter(|(d, _)| d.is_zero())
            .map(|(_, c)| clear_denominators(c))
            .collect()
    }
}

pub fn diagonalize(gram: &IntMatrix) -> Diagonalization {
    assert!(gram.is_square());
    let n = gram.rows();
    let mut a: Vec<Vec<BigRational>> =
        gram.to_rows().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    // p[j] is column j of P
    let mut p: Vec<Vec<BigRational>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { BigRational::from_integer(1.into()) } else { BigRational::zero() }).collect())
        .collect();

    let swap = |a: &mut Vec<Vec<BigRational>>, p: &mut Vec<Vec<BigRational>>, i: usize, k: usize| {
        if i == k {
            return;
        }
        a.swap(i, k);
        for row in a.iter_mut() {
            row.swap(i, k);
        }
        p.swap(i, k);
    };

    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap(&mut a, &mut p, i, k);
        } else {
            let pair = (k..n).find_map(|i| (i + 1..n).find(|&j| !a[i][j].is_zero()).map(|j| (i, j)));
            let Some((i, j)) = pair else {
                break;
            };
            // x_i -> x_i + x_j makes the (i, i) entry 2 a_ij != 0
            for c in 0..n {
                let v = &a[i][c] + &a[j][c];
                a[i][c] = v;
            }
            for r in 0..n {
                let v = &a[r][i] + &a[r][j];
                a[r][i] = v;
            }
            let pj = p[j].clone();
            for (x, y) in p[i].iter_mut().zip(pj) {
                *x += y;
            }
            swap(&mut a, &mut p, i, k);
        }
        let pivot = a[k][k].clone();
        for j in k + 1..n {
            if a[j][k].is_zero() {
                continue;
            }
            let f = &a[j][k] / &pivot;
            for c in 0..n {
                let v = &a[j][c] - &f * &a[k][c];
                a[j][c] = v;
            }
            for r in 0..n {
                let v = &a[r][j] - &f * &a[r][k];
                a[r][j] = v;
            }
            let pk = p[k].clone();
            for (x, y) in p[j].iter_mut().zip(pk) {
                *x -= &f * y;
            }
        }
    }
    Diagonalization { diagonal: (0..n).map(|i| a[i][i].clone()).collect(), columns: p }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_plane_needs_the_shear() {
        let d = diagonalize(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(d.inertia(), (1, 0, 1));
        assert_eq!(d.positive_vector().unwrap(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn degenerate_forms_expose_radical() {
        let d = diagonalize(&IntMatrix::from_i64(&[&[0, 0], &[0, -2]]));
        assert_eq!(d.inertia(), (0, 1, 1));
        assert_eq!(d.radical(), vec![vec![BigInt::from(1), BigInt::from(0)]]);
    }
}
