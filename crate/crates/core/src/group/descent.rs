use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::GeneratorSet;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, QuotientData};
use crate::matrix::IntMatrix;
use crate::spectral::Isometry;

/// Image `h_bar` of a generator on `v^perp / Zv`, with `det h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendedGenerator {
    #[serde(with = "crate::json::bigint_matrix")]
    pub matrix: IntMatrix,
    #[serde(with = "crate::json::bigint")]
    pub det: BigInt,
}

#[derive(Clone, Debug)]
pub struct Descent {
    pub quotient: QuotientData,
    pub images: Vec<DescendedGenerator>,
}

/// `h` in the adapted basis `<v, u_1 .., u_{r-2}, w>`, split into its parts.
pub(crate) struct Adapted {
    pub bar: IntMatrix,
    pub det: BigInt,
    /// Row 0, columns `1 ..= r-2`: the `v`-coefficients of `h(u_i)`.
    pub alpha: Vec<BigInt>,
    pub is_identity: bool,
}

/// Checks that the adapted matrix `a` fixes `v` and preserves `v^perp`.
pub(crate) fn split_adapted(a: &IntMatrix) -> Result<Adapted> {
    let r = a.rows();
    if r < 2 {
        return Err(Error::InternalInconsistency("adapted basis needs rank at least 2".into()));
    }
    if !a[(0, 0)].is_one() || (1..r).any(|i| !a[(i, 0)].is_zero()) {
        return Err(Error::ElementNotFixing);
    }
    if (1..r - 1).any(|j| !a[(r - 1, j)].is_zero()) {
        return Err(Error::InternalInconsistency("element does not preserve v-perp".into()));
    }
    let bar = a.block(1..r - 1, 1..r - 1);
    let c = a[(r - 1, r - 1)].clone();
    let det = if bar.is_identity() { c } else { bar.det() * c };
    let alpha = (1..r - 1).map(|j| a[(0, j)].clone()).collect();
    Ok(Adapted { bar, det, alpha, is_identity: a.is_identity() })
}

/// Descends each generator to the quotient `v^perp / Zv`. Every image is
/// checked to be an isometry of the quotient lattice.
pub fn quotient_descend(s: &GeneratorSet, v: &LatticeVector) -> Result<Descent> {
    for (i, g) in s.generators().iter().enumerate() {
        if &g.apply(v) != v {
            return Err(Error::NotFixed(i));
        }
    }
    let quotient = s.lattice().quotient_lattice(v)?;
    let ql = Arc::new(quotient.quotient.clone());
    let mut images = Vec::with_capacity(s.len());
    for g in s.generators() {
        let parts = split_adapted(&quotient.to_adapted(g.matrix()))?;
        let bar = Isometry::new(ql.clone(), parts.bar)
            .map_err(|_| Error::InternalInconsistency("descended map is not an isometry of the quotient".into()))?;
        images.push(DescendedGenerator { matrix: bar.matrix().clone(), det: parts.det });
    }
    Ok(Descent { quotient, images })
}

/// Multiplicative closure of `images`, in breadth-first order starting from
/// the identity of size `dim`. The group is finite when the images act on a
/// definite lattice; `cap` bounds the search otherwise.
pub fn image_group_closure(dim: usize, images: &[IntMatrix], cap: usize) -> Result<Vec<IntMatrix>> {
    for m in images {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: m.rows() });
        }
    }
    let id = IntMatrix::identity(dim);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut next = 0;
    while next < out.len() {
        let x = out[next].clone();
        next += 1;
        for m in images {
            let y = x.mul(m);
            if seen.insert(y.clone()) {
                out.push(y);
                if out.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
            }
        }
    }
    Ok(out)
}

/// Whether `h` lies in `N^0`, the kernel of `h -> (h_bar, det h)`.
pub fn n0_membership(h: &Isometry, q: &QuotientData) -> Result<bool> {
    let parts = split_adapted(&q.to_adapted(h.matrix()))?;
    Ok(parts.bar.is_identity() && parts.det.is_one())
}

/// `phi(h) = (alpha_1(h) .. alpha_{r-2}(h))` where `h(u_i) = u_i + alpha_i v`.
pub fn alpha_map(h: &Isometry, q: &QuotientData) -> Result<Vec<BigInt>> {
    alpha_of_adapted(&q.to_adapted(h.matrix()))
}

pub(crate) fn alpha_of_adapted(a: &IntMatrix) -> Result<Vec<BigInt>> {
    let parts = split_adapted(a)?;
    if !parts.bar.is_identity() || !parts.det.is_one() {
        return Err(Error::NotInKernel);
    }
    if parts.alpha.iter().all(Zero::is_zero) && !parts.is_identity {
        return Err(Error::InternalInconsistency("phi vanishes on a nontrivial element of N0".into()));
    }
    Ok(parts.alpha)
}
