use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{GeneratorSet, WordBall};
use crate::arith::{clear_denominators, primitive_part};
use crate::congruence::diagonalize;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::normal_form::{integer_kernel, rank};
use crate::spectral::{is_null_entropy, is_unipotent, unipotency_exponent};

/// Depth used by [`fixed_ray`] when the generator powers are all trivial.
const DEFAULT_ESCALATION_DEPTH: usize = 6;

/// Result of the fixed-ray case analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedRay {
    /// Primitive isotropic `v` in the closure of the positive cone, fixed by
    /// every generator. `fixed_space_dim` is the dimension of the common
    /// fixed space of the unipotent powers used.
    Ray {
        #[serde(with = "crate::json::bigint_vec")]
        v: Vec<BigInt>,
        fixed_space_dim: usize,
        radical_dim: usize,
    },
    /// `x` with `(x, x) > 0` fixed by every generator; the group is finite.
    PositiveVector {
        #[serde(with = "crate::json::bigint_vec")]
        x: Vec<BigInt>,
        #[serde(with = "crate::json::bigint")]
        square: BigInt,
    },
    /// `w^exponent = I` for every element `w` reachable by words of length at
    /// most `depth`, yet no positive fixed vector exists.
    FiniteExponent { exponent: String, depth: usize },
}

/// Integer basis (Hermite normal form) of `F = cap_i ker(g_i^power - I)`.
pub fn common_fixed_space(s: &GeneratorSet, power: &BigUint) -> Vec<Vec<BigInt>> {
    let powers: Vec<IntMatrix> = s.generators().iter().map(|g| g.matrix().pow(power)).collect();
    fixed_space_of(&powers, s.rank())
}

fn fixed_space_of(maps: &[IntMatrix], n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::new();
    for m in maps {
        rows.extend(m.minus_identity().to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    if rows.is_empty() {
        return IntMatrix::identity(n).to_rows();
    }
    integer_kernel(&IntMatrix::from_rows(rows).expect("rows of equal length"))
}

/// Form restricted to the span of `basis`, and its diagonalization.
struct Restricted {
    positive: Option<Vec<BigInt>>,
    radical: Vec<Vec<BigInt>>,
    inertia: (usize, usize, usize),
}

fn restrict(l: &Lattice, basis: &[Vec<BigInt>]) -> Restricted {
    let n = l.rank();
    let b = IntMatrix::from_columns(n, basis);
    let g = b.transpose().mul(&l.gram().mul(&b));
    let d = diagonalize(&g);
    let lift = |c: Vec<BigInt>| primitive_part(&b.mul_vec(&c));
    Restricted { positive: d.positive_vector().map(lift), radical: d.radical().into_iter().map(lift).collect(), inertia: d.inertia() }
}

fn oriented(l: &Lattice, x: Vec<BigInt>) -> Result<Vec<BigInt>> {
    Ok(l.primitivize(&LatticeVector::new(x), true)?.coords)
}

/// Fixed isotropic ray of a null-entropy group, or a finiteness certificate.
pub fn fixed_ray(s: &GeneratorSet) -> Result<FixedRay> {
    fixed_ray_with_depth(s, DEFAULT_ESCALATION_DEPTH)
}

/// As [`fixed_ray`], searching words up to `depth` for a nontrivial
/// unipotent power when every generator has finite order.
pub fn fixed_ray_with_depth(s: &GeneratorSet, depth: usize) -> Result<FixedRay> {
    fixed_ray_impl(s, depth, None)
}

pub(crate) fn fixed_ray_impl(s: &GeneratorSet, depth: usize, ball: Option<&WordBall>) -> Result<FixedRay> {
    let l = s.lattice();
    let r = s.rank();
    let n = unipotency_exponent(r)?;
    for (i, g) in s.generators().iter().enumerate() {
        if !is_null_entropy(g.matrix()) {
            return Err(Error::NotNullEntropy(i));
        }
    }
    let mut powers: Vec<IntMatrix> =
        s.generators().iter().map(|g| g.matrix().pow(&n)).filter(|p| !p.is_identity()).collect();

    if powers.is_empty() {
        // Every generator has finite order. A positive vector fixed by the
        // generators themselves certifies finiteness.
        let own: Vec<IntMatrix> = s.generators().iter().map(|g| g.matrix().clone()).collect();
        let f1 = fixed_space_of(&own, r);
        if let Some(x) = restrict(l, &f1).positive {
            let x = oriented(l, x)?;
            let square = l.square(&LatticeVector::new(x.clone()))?;
            return Ok(FixedRay::PositiveVector { x, square });
        }
        let owned;
        let ball = match ball {
            Some(b) => b,
            None => {
                owned = WordBall::build(s, depth, |_, _| false).0;
                &owned
            }
        };
        for (k, (_, e)) in ball.entries.iter().enumerate() {
            let m = e.to_matrix(r);
            if !is_null_entropy(&m) {
                return Err(Error::InternalInconsistency(format!("word element {k} has positive entropy")));
            }
            let p = m.pow(&n);
            if !p.is_identity() {
                powers.push(p);
                break;
            }
        }
        if powers.is_empty() {
            return Ok(FixedRay::FiniteExponent { exponent: n.to_string(), depth: ball.depth });
        }
    }

    if !powers.iter().all(is_unipotent) {
        return Err(Error::InternalInconsistency("power of a null-entropy element is not unipotent".into()));
    }
    let f = fixed_space_of(&powers, r);
    if f.is_empty() {
        return Err(Error::NonUnipotentPowerGroup);
    }
    let restricted = restrict(l, &f);
    let (pos, zero, _) = restricted.inertia;
    if pos > 0 {
        return Err(Error::InternalInconsistency(
            "a nontrivial unipotent isometry fixes a vector of positive square".into(),
        ));
    }
    match zero {
        1 => {
            let v = oriented(l, restricted.radical[0].clone())?;
            let lv = LatticeVector::new(v.clone());
            for (i, g) in s.generators().iter().enumerate() {
                if g.apply(&lv) != lv {
                    return Err(Error::InternalInconsistency(format!("fixed ray {lv} is moved by g{}", i + 1)));
                }
            }
            Ok(FixedRay::Ray { v, fixed_space_dim: f.len(), radical_dim: 1 })
        }
        0 => Err(Error::InternalInconsistency(
            "nontrivial unipotent powers with a negative definite fixed space".into(),
        )),
        z => Err(Error::InternalInconsistency(format!("fixed space has a {z}-dimensional radical"))),
    }
}

/// Kolchin flag for the group generated by `g_i^power`: integer columns
/// `b_1 .. b_r` such that each power is upper unitriangular in this basis.
pub fn triangularize_unipotent(s: &GeneratorSet, power: &BigUint) -> Result<IntMatrix> {
    let r = s.rank();
    let powers: Vec<IntMatrix> = s.generators().iter().map(|g| g.matrix().pow(power)).collect();
    for (i, p) in powers.iter().enumerate() {
        if !is_unipotent(p) {
            return Err(Error::NotNullEntropy(i));
        }
    }
    let mut flag: Vec<Vec<BigInt>> = Vec::with_capacity(r);
    while flag.len() < r {
        let k = flag.len();
        let complement = greedy_complement(&flag, r);
        let mut cols = flag.clone();
        cols.extend(complement.iter().cloned());
        let b = RatMatrix::from_int(&IntMatrix::from_columns(r, &cols));
        let b_inv = b.inverse().ok_or_else(|| Error::InternalInconsistency("flag basis is singular".into()))?;
        let mut rows = Vec::new();
        for p in &powers {
            let a = b_inv.mul(&RatMatrix::from_int(p).mul(&b));
            for i in k..r {
                let row: Vec<BigRational> = (k..r)
                    .map(|j| if i == j { a.get(i, j) - BigRational::from_integer(1.into()) } else { a.get(i, j).clone() })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(clear_denominators(&row));
                }
            }
        }
        let y = if rows.is_empty() {
            let mut e = vec![BigInt::zero(); r - k];
            e[0] = 1.into();
            e
        } else {
            integer_kernel(&IntMatrix::from_rows(rows).expect("equal lengths"))
                .into_iter()
                .next()
                .ok_or(Error::NonUnipotentPowerGroup)?
        };
        let mut next = vec![BigInt::zero(); r];
        for (c, yc) in complement.iter().zip(&y) {
            for (x, ci) in next.iter_mut().zip(c) {
                *x += yc * ci;
            }
        }
        flag.push(primitive_part(&next));
    }
    Ok(IntMatrix::from_columns(r, &flag))
}

/// Standard basis vectors extending `vs` to a basis of `Q^n`, chosen greedily
/// in index order.
fn greedy_complement(vs: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vs.to_vec();
    let mut out = Vec::new();
    for j in 0..n {
        if rows.len() == n {
            break;
        }
        let mut e = vec![BigInt::zero(); n];
        e[j] = 1.into();
        rows.push(e.clone());
        if rank(&IntMatrix::from_rows(rows.clone()).expect("equal lengths")) == rows.len() {
            out.push(e);
        } else {
            rows.pop();
        }
    }
    out
}

/// `true` when `b^{-1} p b` is upper unitriangular.
pub fn is_upper_unitriangular_in(p: &IntMatrix, b: &IntMatrix) -> bool {
    let rb = RatMatrix::from_int(b);
    let Some(inv) = rb.inverse() else { return false };
    let a = inv.mul(&RatMatrix::from_int(p).mul(&rb));
    let n = p.rows();
    (0..n).all(|i| {
        (0..=i).all(|j| {
            let x = a.get(i, j);
            if i == j {
                x == &BigRational::from_integer(1.into())
            } else {
                x.is_zero()
            }
        })
    })
}
