//! Independent oracles for the acceptance suite. Nothing here calls the
//! library's own algorithms for the quantity being checked.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use isoray::IntMatrix;

/// Euler's totient by counting coprime residues.
pub fn totient(d: u64) -> u64 {
    (1..=d).filter(|k| k.gcd(&d) == 1).count() as u64
}

/// `lcm{d <= 2 r^2 : phi(d) <= r}` with the totient counted directly.
pub fn unipotency_exponent_oracle(r: u64) -> BigInt {
    let mut n = BigInt::one();
    for d in 1..=2 * r * r {
        if totient(d) <= r {
            n = n.lcm(&BigInt::from(d));
        }
    }
    n
}

/// Fraction-free determinant.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Ascending coefficients of `det(xI - g)`, by evaluating at `x = 0..=n` and
/// Newton interpolation over Q.
pub fn char_poly_oracle(g: &IntMatrix) -> Vec<BigInt> {
    let n = g.rows();
    let xs: Vec<BigRational> = (0..=n).map(|k| BigRational::from_integer(BigInt::from(k))).collect();
    let mut ys: Vec<BigRational> = (0..=n)
        .map(|k| {
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| if i == j { BigInt::from(k) - &g[(i, j)] } else { -g[(i, j)].clone() }).collect())
                .collect();
            BigRational::from_integer(bareiss_det(m))
        })
        .collect();
    // divided differences in place
    for level in 1..=n {
        for i in (level..=n).rev() {
            ys[i] = (&ys[i] - &ys[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for i in (0..=n).rev() {
        // coeffs = coeffs * (x - xs[i]) + ys[i]
        let mut next = vec![BigRational::zero(); n + 1];
        for d in 0..n {
            next[d + 1] += &coeffs[d];
            next[d] -= &coeffs[d] * &xs[i];
        }
        next[0] += &ys[i];
        coeffs = next;
    }
    coeffs.into_iter().map(|c| { assert!(c.is_integer()); c.to_integer() }).collect()
}

type QPoly = Vec<BigRational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let q = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] -= &q * bi;
        }
        r = trim(r);
    }
    r
}

fn poly_div(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] -= &c * bi;
        }
        q[shift] = c;
        r = trim(r);
    }
    q
}

/// Monic squarefree part `p / gcd(p, p')` over Q.
pub fn squarefree(p: &[BigInt]) -> Vec<f64> {
    let p: QPoly = trim(p.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    let dp: QPoly = trim((1..p.len()).map(|i| &p[i] * BigRational::from_integer(BigInt::from(i))).collect());
    let mut a = p.clone();
    let mut b = dp;
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    let sf = poly_div(&p, &a);
    let lead = sf.last().unwrap().clone();
    sf.iter().map(|c| (c / &lead).to_f64().unwrap()).collect()
}

/// Largest root modulus of a monic polynomial (ascending coefficients) by
/// Durand-Kerner iteration.
pub fn max_root_modulus(monic: &[f64]) -> f64 {
    let n = monic.len() - 1;
    if n == 0 {
        return 0.0;
    }
    let bound = 1.0 + monic[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (bound / 2.0).max(1.0)).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c);
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `null entropy` as judged numerically: every root within `1 + 1e-8`.
pub fn numerically_null(g: &IntMatrix) -> bool {
    max_root_modulus(&squarefree(&char_poly_oracle(g))) <= 1.0 + 1e-8
}

/// Rank over Q by Gaussian elimination.
pub fn rank_q(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for j in c..cols {
                    let v = &m[rank][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Random unimodular matrix as a product of elementary operations with
/// small multipliers.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut t = IntMatrix::identity(n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i && n > 1 {
            j = rng.gen_range(0..n);
        }
        if n == 1 {
            break;
        }
        let k: i64 = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=2);
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = BigInt::from(k);
        t = t.mul(&e);
    }
    if rng.gen_bool(0.5) {
        // an odd permutation keeps determinant -1 in play
        let mut p = IntMatrix::identity(n);
        p.swap_rows(0, n - 1);
        t = t.mul(&p);
    }
    t
}

/// `(h(u) - u) / v` when `h(u) - u` is an integer multiple of `v`.
pub fn v_multiple(diff: &[BigInt], v: &[BigInt]) -> Option<BigInt> {
    let k = v.iter().position(|x| !x.is_zero())?;
    if !(&diff[k] % &v[k]).is_zero() {
        return None;
    }
    let q = &diff[k] / &v[k];
    diff.iter().zip(v).all(|(d, x)| d == &(&q * x)).then_some(q)
}

pub fn is_abs_one(x: &BigInt) -> bool {
    x.abs().is_one()
}
