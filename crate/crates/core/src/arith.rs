//! Small integer and rational helpers shared by the linear algebra modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Non-negative gcd of all entries; zero for an all-zero slice.
pub fn content(xs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in xs {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content. Returns the input unchanged when it is zero.
pub fn primitive_part(xs: &[BigInt]) -> Vec<BigInt> {
    let g = content(xs);
    if g.is_zero() || g.is_one() {
        return xs.to_vec();
    }
    xs.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and returns the primitive integer
/// vector on the same ray (positive multiple).
pub fn clear_denominators(xs: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = xs.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive_part(&ints)
}

/// Negates the vector when its first nonzero entry is negative.
pub fn lex_positive(mut xs: Vec<BigInt>) -> Vec<BigInt> {
    if let Some(first) = xs.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in xs.iter_mut() {
                *x = -&*x;
            }
        }
    }
    xs
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Natural log of |x| for arbitrarily large x. Returns -inf for zero.
pub fn ln_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits < 1000 {
        return x.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact decimal rendering of a rational, rounded half-up to `digits`
/// fractional digits.
pub fn rational_to_decimal(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x * BigRational::from_integer(scale.clone());
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = (abs + half).floor().to_integer();
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let mut s = String::new();
    if neg && !rounded.is_zero() {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        s.push('.');
        for _ in frac.len()..digits {
            s.push('0');
        }
        s.push_str(&frac);
    }
    s
}

/// Dyadic rational approximation of a finite non-negative f64: exact value
/// rounded down (`up = false`) or up to a multiple of 2^-bits.
pub fn dyadic_from_f64(x: f64, bits: u32, up: bool) -> BigRational {
    let scale = (x * 2f64.powi(bits as i32)).max(0.0);
    let n = if up { scale.ceil() } else { scale.floor() };
    let num = BigInt::from(n as u128);
    BigRational::new(num, BigInt::from(BigUint::one() << bits))
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    let ln = ln_abs(n) - ln_abs(d);
    let sign = if n.sign() == Sign::Minus { -1.0 } else { 1.0 };
    if n.is_zero() {
        0.0
    } else {
        match (n.to_f64(), d.to_f64()) {
            (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
            _ => sign * ln.exp(),
        }
    }
}
