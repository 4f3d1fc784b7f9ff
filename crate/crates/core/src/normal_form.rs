//! Hermite and Smith normal forms over Z, integer kernels and basis
//! completion.
//!
//! All routines pivot deterministically (leftmost column, topmost row), so a
//! given input always yields the same basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    // row[dst] -= q * row[src]
    if q.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Replaces rows (p, i) by (s*p + t*i, -b/g*p + a/g*i).
fn row_combine(m: &mut [Vec<BigInt>], p: usize, i: usize, s: &BigInt, t: &BigInt, a_g: &BigInt, b_g: &BigInt) {
    let rp = m[p].clone();
    let ri = m[i].clone();
    m[p] = rp.iter().zip(&ri).map(|(x, y)| s * x + t * y).collect();
    m[i] = rp.iter().zip(&ri).map(|(x, y)| a_g * y - b_g * x).collect();
}

/// Row-style Hermite normal form with transform: returns `(H, U)` with
/// `U * M = H`, `U` unimodular, `H` in echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn row_hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.to_rows();
    let mut u = IntMatrix::identity(rows).to_rows();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(first) = (pr..rows).find(|&i| !h[i][c].is_zero()) else {
            continue;
        };
        if first != pr {
            h.swap(first, pr);
            u.swap(first, pr);
        }
        for i in pr + 1..rows {
            if h[i][c].is_zero() {
                continue;
            }
            let a = h[pr][c].clone();
            let b = h[i][c].clone();
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                row_axpy(&mut h, i, pr, &q);
                row_axpy(&mut u, i, pr, &q);
            } else {
                let eg = a.extended_gcd(&b);
                let g = eg.gcd;
                let (a_g, b_g) = (&a / &g, &b / &g);
                row_combine(&mut h, pr, i, &eg.x, &eg.y, &a_g, &b_g);
                row_combine(&mut u, pr, i, &eg.x, &eg.y, &a_g, &b_g);
            }
        }
        if h[pr][c].is_negative() {
            for x in h[pr].iter_mut().chain(u[pr].iter_mut()) {
                *x = -&*x;
            }
        }
        let pivot = h[pr][c].clone();
        for k in 0..pr {
            let q = h[k][c].div_floor(&pivot);
            row_axpy(&mut h, k, pr, &q);
            row_axpy(&mut u, k, pr, &q);
        }
        pr += 1;
    }
    (IntMatrix::from_rows(h).unwrap_or_else(|| IntMatrix::zeros(0, cols)), IntMatrix::from_rows(u).unwrap_or_else(|| IntMatrix::zeros(0, 0)))
}

/// Nonzero rows of the row Hermite normal form: the canonical basis of the
/// Z-span of `rows`.
pub fn hnf_basis(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(rows.to_vec()).expect("ragged rows");
    debug_assert_eq!(m.cols(), n);
    let (h, _) = row_hnf_with_transform(&m);
    h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Z-basis of `{x in Z^n : A x = 0}` in Hermite normal form. The result is
/// saturated: it spans the full integer kernel, not a finite-index sublattice.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    if a.rows() == 0 {
        return IntMatrix::identity(n).to_rows();
    }
    let (h, u) = row_hnf_with_transform(&a.transpose());
    let kernel: Vec<Vec<BigInt>> = (0..n)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect();
    hnf_basis(&kernel, n)
}

/// Given `k` row vectors in Z^n spanning a primitive (saturated) rank-k
/// sublattice, returns `n - k` vectors completing them to a basis of Z^n.
/// Returns `None` if the vectors are dependent or their span is not
/// saturated.
pub fn unimodular_completion(vectors: &[Vec<BigInt>], n: usize) -> Option<Vec<Vec<BigInt>>> {
    let k = vectors.len();
    if k > n || vectors.iter().any(|v| v.len() != n) {
        return None;
    }
    // Column operations on S (k x n), tracking V^{-1} so that S = [H | 0] V^{-1}.
    let mut s: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut vinv = IntMatrix::identity(n).to_rows();
    for r in 0..k {
        if let Some(c) = (r..n).find(|&c| !s[r][c].is_zero()) {
            if c != r {
                for row in s.iter_mut() {
                    row.swap(c, r);
                }
                vinv.swap(c, r);
            }
        } else {
            return None;
        }
        for c in r + 1..n {
            if s[r][c].is_zero() {
                continue;
            }
            let a = s[r][r].clone();
            let b = s[r][c].clone();
            if b.is_multiple_of(&a) {
                // col_c -= q col_r ; vinv row_r += q row_c
                let q = &b / &a;
                for row in s.iter_mut() {
                    let t = &row[r] * &q;
                    row[c] -= t;
                }
                let rc = vinv[c].clone();
                for (x, y) in vinv[r].iter_mut().zip(rc.iter()) {
                    *x += &q * y;
                }
            } else {
                let eg = a.extended_gcd(&b);
                let g = eg.gcd;
                let (a_g, b_g) = (&a / &g, &b / &g);
                let (x, y) = (eg.x, eg.y);
                for row in s.iter_mut() {
                    let cr = row[r].clone();
                    let cc = row[c].clone();
                    row[r] = &x * &cr + &y * &cc;
                    row[c] = &a_g * &cc - &b_g * &cr;
                }
                let vr = vinv[r].clone();
                let vc = vinv[c].clone();
                vinv[r] = vr.iter().zip(&vc).map(|(p, q)| &a_g * p + &b_g * q).collect();
                vinv[c] = vr.iter().zip(&vc).map(|(p, q)| &x * q - &y * p).collect();
            }
        }
        if !s[r][r].abs().is_one() {
            return None;
        }
    }
    Some(vinv[k..].to_vec())
}

/// Nonzero invariant factors of the Smith normal form, in divisibility order.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                row_axpy(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut() {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (t + 1..rows).find_map(|i| (t + 1..cols).find(|&j| !a[i][j].is_multiple_of(&p)).map(|_| i));
                match bad {
                    None => break,
                    Some(i) => {
                        let src = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(src) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // move the new smallest entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && (a[best.0][best.1].is_zero() || a[i][t].abs() < a[best.0][best.1].abs()) {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && (a[best.0][best.1].is_zero() || a[t][j].abs() < a[best.0][best.1].abs()) {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = row_hnf_with_transform(m);
    (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

/// Solves `sum c_i rows[i] = target` for integer `c`, where `rows` is in row
/// echelon form. `None` if no integral solution exists.
pub fn solve_in_echelon(rows: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut residual = target.to_vec();
    let mut c = Vec::with_capacity(rows.len());
    for row in rows {
        let p = row.iter().position(|x| !x.is_zero())?;
        if !(&residual[p] % &row[p]).is_zero() {
            return None;
        }
        let q = &residual[p] / &row[p];
        for (x, y) in residual.iter_mut().zip(row) {
            *x -= &q * y;
        }
        c.push(q);
    }
    residual.iter().all(Zero::is_zero).then_some(c)
}
