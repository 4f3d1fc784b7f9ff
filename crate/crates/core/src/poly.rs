//! Exact univariate integer polynomials.
//!
//! Coefficients are stored in ascending degree. Besides ring arithmetic this
//! module carries the two root-location tools used by the entropy code:
//! Graeffe root squaring and the Schur-Cohn unit-disk test.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::content;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    #[serde(with = "crate::json::bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// From ascending coefficients; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^d - 1`
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = BigInt::from(-1);
        c[d] += 1;
        Self::new(c)
    }

    /// `(x - a)^n`
    pub fn linear_power(a: i64, n: usize) -> Self {
        let lin = Self::from_i64(&[-a, 1]);
        (0..n).fold(Self::one(), |acc, _| acc.mul(&lin))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division by a monic polynomial: `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Divides out the content, leaving a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        let g = content(&self.coeffs);
        if g.is_zero() {
            return self.clone();
        }
        let g = if self.leading().is_negative() { -g } else { g };
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// One Graeffe root-squaring step: a monic polynomial whose roots are
    /// the squares of the roots of `self` (with multiplicity).
    pub fn graeffe(&self) -> Self {
        let n = self.degree().unwrap_or(0);
        let even = Self::new(self.coeffs.iter().step_by(2).cloned().collect());
        let odd = Self::new(self.coeffs.iter().skip(1).step_by(2).cloned().collect());
        let y_odd_sq = Self::new(std::iter::once(BigInt::zero()).chain(odd.mul(&odd).coeffs).collect());
        let p = even.mul(&even).sub(&y_odd_sq);
        if n % 2 == 1 {
            Self::new(p.coeffs.into_iter().map(|c| -c).collect())
        } else {
            p
        }
    }

    /// `1 + max |a_i / a_n|` bounds every root's modulus (Cauchy).
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = BigRational::from_integer(self.leading().abs());
        let n = self.coeffs.len().saturating_sub(1);
        let max = self.coeffs[..n]
            .iter()
            .map(|c| BigRational::from_integer(c.abs()) / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        max + BigRational::one()
    }

    /// Exact test: every complex root `z` satisfies `|z| < radius`.
    ///
    /// Scales the roots to the unit disk and runs the Schur-Cohn recursion
    /// on integer coefficients.
    pub fn roots_strictly_inside(&self, radius: &BigRational) -> bool {
        assert!(radius.is_positive());
        let Some(n) = self.degree() else {
            return true;
        };
        let (p, q) = (radius.numer(), radius.denom());
        // q^n f(p y / q) has roots z q / p
        let mut f: Vec<BigInt> = Vec::with_capacity(n + 1);
        let mut pk = BigInt::one();
        for (k, c) in self.coeffs.iter().enumerate() {
            f.push(c * &pk * q.pow((n - k) as u32));
            pk *= p;
        }
        schur_cohn_all_inside(f)
    }

    /// Whether the polynomial is a product of cyclotomic polynomials `Phi_d`
    /// with `phi(d) <= max_phi` (up to a unit). Used as an exact screen for
    /// all roots lying on the unit circle.
    pub fn is_cyclotomic_product(&self, max_phi: usize) -> bool {
        if self.is_zero() || !self.leading().abs().is_one() {
            return false;
        }
        let mut rest = if self.leading().is_negative() { Self::new(self.coeffs.iter().map(|c| -c).collect()) } else { self.clone() };
        let mut table = CyclotomicTable::default();
        let bound = 2 * max_phi * max_phi;
        for d in 1..=bound.max(2) {
            if rest.degree() == Some(0) {
                break;
            }
            if crate::spectral::euler_phi_u64(d as u64) as usize > max_phi {
                continue;
            }
            let phi = table.get(d);
            loop {
                let (q, r) = rest.div_rem_monic(&phi);
                if !r.is_zero() {
                    break;
                }
                rest = q;
            }
        }
        rest.degree() == Some(0) && rest.leading().is_one()
    }
}

fn schur_cohn_all_inside(mut f: Vec<BigInt>) -> bool {
    loop {
        while f.last().is_some_and(Zero::is_zero) {
            f.pop();
        }
        let n = match f.len() {
            0 => return true,
            k => k - 1,
        };
        if n == 0 {
            return true;
        }
        let a0 = f[0].clone();
        let an = f[n].clone();
        if a0.abs() >= an.abs() {
            return false;
        }
        // g = a_n f - a_0 f*, which vanishes at 0; h = g / z
        let mut h: Vec<BigInt> = (1..=n).map(|k| &an * &f[k] - &a0 * &f[n - k]).collect();
        let g = content(&h);
        if !g.is_zero() && !g.is_one() {
            for c in h.iter_mut() {
                *c = c.div_floor(&g);
            }
        }
        f = h;
    }
}

/// Memoized cyclotomic polynomials.
#[derive(Default)]
pub struct CyclotomicTable {
    cache: BTreeMap<usize, IntPolynomial>,
}

impl CyclotomicTable {
    pub fn get(&mut self, d: usize) -> IntPolynomial {
        if let Some(p) = self.cache.get(&d) {
            return p.clone();
        }
        let mut p = IntPolynomial::x_pow_minus_one(d);
        for e in 1..d {
            if d % e == 0 {
                let phi_e = self.get(e);
                p = p.div_rem_monic(&phi_e).0;
            }
        }
        self.cache.insert(d, p.clone());
        p
    }
}

pub fn cyclotomic(d: usize) -> IntPolynomial {
    CyclotomicTable::default().get(d)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
