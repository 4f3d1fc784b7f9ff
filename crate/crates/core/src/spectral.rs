//! Isometries, characteristic polynomials and entropy.
//!
//! The null-entropy decision is exact: an integer isometry whose eigenvalues
//! all lie on the unit circle has only roots of unity as eigenvalues, each of
//! order `d` with `phi(d) <= r`, so its `n(r)`-th power is unipotent for
//! `n(r) = lcm{d : phi(d) <= r}`. Positive entropy is reported as a certified
//! enclosure of the spectral radius.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{binomial, dyadic_from_f64, ln_abs, rational_to_decimal, rational_to_f64};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::IntMatrix;
use crate::poly::IntPolynomial;

/// An integer matrix preserving the Gram form of its lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    matrix: IntMatrix,
    lattice: Arc<Lattice>,
}

impl Isometry {
    /// Checks `g^T G g = G`; the determinant is then `+-1`.
    pub fn new(lattice: Arc<Lattice>, matrix: IntMatrix) -> Result<Self> {
        if !is_isometry(&lattice, &matrix)? {
            return Err(Error::NotIsometry);
        }
        let det = matrix.det();
        if !det.abs().is_one() {
            return Err(Error::InternalInconsistency(format!("isometry with determinant {det}")));
        }
        Ok(Isometry { matrix, lattice })
    }

    pub fn identity(lattice: Arc<Lattice>) -> Self {
        let n = lattice.rank();
        Isometry { matrix: IntMatrix::identity(n), lattice }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn apply(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector::new(self.matrix.mul_vec(&x.coords))
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { matrix: self.matrix.mul(&other.matrix), lattice: self.lattice.clone() }
    }

    /// `g^{-1} = G^{-1} g^T G`, integral since `det g = +-1`.
    pub fn inverse(&self) -> Isometry {
        let inv = self.matrix.inverse().expect("isometries are unimodular");
        Isometry { matrix: inv, lattice: self.lattice.clone() }
    }

    pub fn pow(&self, e: i64) -> Isometry {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        Isometry { matrix: base.matrix.pow(&BigUint::from(e.unsigned_abs())), lattice: self.lattice.clone() }
    }
}

/// Whether `g^T G g = G` exactly.
pub fn is_isometry(lattice: &Lattice, g: &IntMatrix) -> Result<bool> {
    let r = lattice.rank();
    if g.rows() != r || g.cols() != r {
        return Err(Error::DimensionMismatch { expected: r, found: if g.rows() != r { g.rows() } else { g.cols() } });
    }
    Ok(&g.transpose().mul(&lattice.gram().mul(g)) == lattice.gram())
}

/// Membership in the index-two subgroup preserving the positive cone:
/// `(g x0, x0) > 0` for the lattice's reference vector `x0`.
pub fn is_in_o_prime(lattice: &Lattice, g: &Isometry) -> Result<bool> {
    if !lattice.is_hyperbolic() {
        return Err(Error::NotHyperbolic(lattice.signature().to_string()));
    }
    let x0 = lattice.orientation().expect("hyperbolic lattices carry a reference vector");
    Ok(lattice.bilinear(&g.apply(x0), x0)?.is_positive())
}

/// `det(xI - g)` by Faddeev-LeVerrier; every division is exact over Z.
pub fn char_poly(g: &IntMatrix) -> IntPolynomial {
    assert!(g.is_square());
    let n = g.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = g M_{k-1} + c_{n-k+1} I
        m = g.mul(&m);
        for i in 0..n {
            m[(i, i)] += &coeffs[n - k + 1];
        }
        let t = g.mul(&m).trace();
        let (q, r) = t.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[n - k] = -q;
    }
    IntPolynomial::new(coeffs)
}

pub(crate) fn euler_phi_u64(d: u64) -> u64 {
    let mut n = d;
    let mut result = d;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Euler's totient.
pub fn euler_phi(d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::Domain("euler_phi requires d >= 1"));
    }
    Ok(euler_phi_u64(d))
}

/// `n(r) = lcm{d >= 1 : phi(d) <= r}`. Since `phi(d) >= sqrt(d / 2)`, every
/// such `d` is at most `2 r^2`.
pub fn unipotency_exponent(r: usize) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::Domain("unipotency_exponent requires r >= 1"));
    }
    let bound = 2 * (r as u64) * (r as u64);
    let mut n = BigUint::one();
    for d in 1..=bound {
        if euler_phi_u64(d) <= r as u64 {
            n = n.lcm(&BigUint::from(d));
        }
    }
    Ok(n)
}

/// `(g - I)^r = 0`, stopping at the first vanishing power.
pub fn is_unipotent(g: &IntMatrix) -> bool {
    let r = g.rows();
    if r == 0 {
        return true;
    }
    let n = g.minus_identity();
    let mut p = n.clone();
    for _ in 1..r {
        if p.is_zero() {
            return true;
        }
        p = p.mul(&n);
    }
    p.is_zero()
}

/// Exact null-entropy test: `g^{n(r)}` is unipotent.
///
/// A non-cyclotomic characteristic polynomial already rules this out, so it
/// is checked first; the power is only formed when its entries stay
/// polynomially bounded.
pub fn is_null_entropy(g: &IntMatrix) -> bool {
    let r = g.rows();
    if r == 0 || is_unipotent(g) {
        return true;
    }
    if !char_poly(g).is_cyclotomic_product(r) {
        return false;
    }
    let n = unipotency_exponent(r).expect("r >= 1");
    is_unipotent(&g.pow(&n))
}

/// Spectral radius and entropy with a certified enclosure.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyValue {
    /// `delta` lies in `[lower, upper]`.
    pub delta_lower: BigRational,
    pub delta_upper: BigRational,
    pub tol: f64,
    pub is_exactly_zero: bool,
}

impl EntropyValue {
    fn exact_zero(tol: f64) -> Self {
        EntropyValue { delta_lower: BigRational::one(), delta_upper: BigRational::one(), tol, is_exactly_zero: true }
    }

    /// Midpoint of the enclosure.
    pub fn delta(&self) -> BigRational {
        (&self.delta_lower + &self.delta_upper) / BigRational::from_integer(2.into())
    }

    pub fn delta_f64(&self) -> f64 {
        rational_to_f64(&self.delta())
    }

    /// `log delta`; exactly `0.0` when the exact test fired.
    pub fn log_spectral_radius(&self) -> f64 {
        if self.is_exactly_zero {
            0.0
        } else {
            self.delta_f64().ln()
        }
    }

    /// Number of fractional digits printed; the enclosure is narrowed well
    /// below one unit in the last place.
    pub fn digits(&self) -> usize {
        ((-self.tol.log10()).ceil().max(0.0) as usize + 1).clamp(6, 15)
    }

    pub fn delta_decimal(&self) -> String {
        rational_to_decimal(&self.delta(), self.digits())
    }

    pub fn entropy_decimal(&self) -> String {
        if self.is_exactly_zero {
            return rational_to_decimal(&BigRational::zero(), self.digits());
        }
        format!("{:.*}", self.digits(), self.log_spectral_radius())
    }

    pub fn tol_decimal(&self) -> String {
        format!("{:e}", self.tol)
    }
}

/// Certified spectral radius of `g`.
///
/// Null-entropy matrices report exactly 1. Otherwise a coarse enclosure comes
/// from Graeffe root squaring of the characteristic polynomial and is
/// narrowed by bisection with the exact Schur-Cohn disk test until its width
/// is at most `tol / 1024`, so that the printed digits are all significant.
pub fn spectral_radius(g: &IntMatrix, tol: f64) -> Result<EntropyValue> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain("tolerance must be positive"));
    }
    if is_null_entropy(g) {
        return Ok(EntropyValue::exact_zero(tol));
    }
    let p = char_poly(g);
    let (mut lo, mut hi) = initial_bracket(&p);
    let tol_q = dyadic_from_f64(tol, 64, false) / BigRational::from_integer(1024.into());
    let tol_q = if tol_q.is_zero() { BigRational::new(BigInt::one(), BigInt::one() << 74) } else { tol_q };
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > tol_q {
        let mid = (&lo + &hi) / &two;
        if p.roots_strictly_inside(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(EntropyValue { delta_lower: lo, delta_upper: hi, tol, is_exactly_zero: false })
}

/// `[lo, hi]` with `lo <= delta < hi`, each end confirmed by the disk test.
fn initial_bracket(p: &IntPolynomial) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let fallback = (one.clone(), p.cauchy_bound());
    let Some((l, h)) = graeffe_log_bounds(p) else {
        return fallback;
    };
    let lo = dyadic_from_f64(l.exp() * (1.0 - 1e-9), 40, false).max(one.clone());
    let hi = dyadic_from_f64(h.exp() * (1.0 + 1e-9), 40, true);
    if lo < hi && !p.roots_strictly_inside(&lo) && p.roots_strictly_inside(&hi) {
        (lo, hi)
    } else {
        fallback
    }
}

/// Bounds on `log delta` from the coefficients of successive Graeffe
/// transforms, intersected over all steps.
///
/// For a monic degree-`n` polynomial with largest root modulus `R` and
/// coefficients `c_j` (of `x^{n-j}`): `|c_j| <= C(n, j) R^j` and
/// `R <= 2 max_j |c_j|^{1/j}`.
fn graeffe_log_bounds(p: &IntPolynomial) -> Option<(f64, f64)> {
    let n = p.degree()?;
    if n == 0 {
        return None;
    }
    let mut q = p.clone();
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for k in 0..8 {
        let scale = 2f64.powi(k);
        let mut l = f64::NEG_INFINITY;
        let mut h = f64::NEG_INFINITY;
        for j in 1..=n {
            let c = q.coeff(n - j);
            if c.is_zero() {
                continue;
            }
            let lc = ln_abs(&c);
            let binom = ln_abs(&BigInt::from(binomial(n, j)));
            l = l.max((lc - binom) / j as f64);
            h = h.max(lc / j as f64);
        }
        if h.is_finite() {
            lo = lo.max(l / scale);
            hi = hi.min((h + std::f64::consts::LN_2) / scale);
        }
        let bits = q.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
        if bits > 4096 {
            break;
        }
        q = q.graeffe();
    }
    (lo.is_finite() && hi.is_finite() && lo <= hi).then_some((lo, hi))
}

/// `tr(A^l B^m)` by exact binary powering.
pub fn trace_power_product(a: &IntMatrix, b: &IntMatrix, l: u64, m: u64) -> Result<BigInt> {
    if a.rows() != b.rows() || !a.is_square() || !b.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.rows() });
    }
    Ok(a.pow_u64(l).mul(&b.pow_u64(m)).trace())
}

/// Trace as an `i64`, if it fits; convenience for tests and reports.
pub fn trace_i64(g: &IntMatrix) -> Option<i64> {
    g.trace().to_i64()
}
