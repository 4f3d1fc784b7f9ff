//! Integer lattices with a nondegenerate symmetric bilinear form.
//!
//! A [`Lattice`] is a Gram matrix in a fixed basis together with the
//! orientation data selecting one component of the positive cone. Vectors
//! are integer coordinate vectors in that basis.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{content, dot, lex_positive, primitive_part};
use crate::congruence::diagonalize;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::normal_form::{integer_kernel, solve_in_echelon, unimodular_completion};

/// Integer coordinate vector in a lattice's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    #[serde(with = "crate::json::bigint_vec")]
    pub coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        LatticeVector { coords: xs.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// Standard basis vector `e_i` of Z^n.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coords = vec![BigInt::zero(); n];
        coords[i] = BigInt::one();
        LatticeVector { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        LatticeVector { coords: self.coords.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &LatticeVector) -> Self {
        LatticeVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeVector { coords: self.coords.iter().map(|x| x * k).collect() }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Inertia of a symmetric form: counts of positive, zero and negative
/// eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, zero: usize, negative: usize) -> Self {
        Signature { positive, zero, negative }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.zero + self.negative
    }

    pub fn classify(&self) -> Classification {
        let r = self.rank();
        match (self.positive, self.zero, self.negative) {
            (1, 0, n) if n + 1 == r => Classification::Hyperbolic,
            (0, 1, n) if n + 1 == r => Classification::Parabolic,
            (0, 0, n) if n == r => Classification::Elliptic,
            _ => Classification::Other,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.zero, self.negative)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Hyperbolic,
    Parabolic,
    Elliptic,
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Hyperbolic => "hyperbolic",
            Classification::Parabolic => "parabolic",
            Classification::Elliptic => "elliptic",
            Classification::Other => "other",
        };
        f.write_str(s)
    }
}

/// Inertia of an arbitrary symmetric integer matrix (degenerate allowed).
pub fn signature_of(gram: &IntMatrix) -> Signature {
    let (p, z, n) = diagonalize(gram).inertia();
    Signature::new(p, z, n)
}

/// A free Z-module of finite rank with a nondegenerate symmetric integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
    signature: Signature,
    orientation: Option<LatticeVector>,
}

impl Lattice {
    /// Validates the Gram matrix and picks the canonical positive-cone
    /// reference vector when the form has a positive direction.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        Self::validate(&gram)?;
        let diag = diagonalize(&gram);
        let (p, z, n) = diag.inertia();
        let orientation = diag.positive_vector().map(LatticeVector::new);
        Ok(Lattice { gram, signature: Signature::new(p, z, n), orientation })
    }

    /// Like [`Lattice::new`] but with a caller-chosen reference vector `x0`,
    /// `(x0, x0) > 0`, selecting the positive cone.
    pub fn with_orientation(gram: IntMatrix, x0: LatticeVector) -> Result<Self> {
        let mut l = Self::new(gram)?;
        if x0.len() != l.rank() {
            return Err(Error::DimensionMismatch { expected: l.rank(), found: x0.len() });
        }
        if !l.square(&x0)?.is_positive() {
            return Err(Error::BadOrientation);
        }
        l.orientation = Some(x0);
        Ok(l)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    fn validate(gram: &IntMatrix) -> Result<()> {
        if !gram.is_square() {
            return Err(Error::NotSquare);
        }
        for i in 0..gram.rows() {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        if gram.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn classify(&self) -> Classification {
        self.signature.classify()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.classify() == Classification::Hyperbolic
    }

    /// Reference vector `x0` with `(x0, x0) > 0` selecting the positive cone.
    pub fn orientation(&self) -> Option<&LatticeVector> {
        self.orientation.as_ref()
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.det()
    }

    /// Even lattices have `(x, x)` even for every `x`, i.e. an even diagonal.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (&self.gram[(i, i)] % 2u32).is_zero())
    }

    fn check_len(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    /// `x^T G y`.
    pub fn bilinear(&self, x: &LatticeVector, y: &LatticeVector) -> Result<BigInt> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(dot(&x.coords, &self.gram.mul_vec(&y.coords)))
    }

    pub fn square(&self, x: &LatticeVector) -> Result<BigInt> {
        self.bilinear(x, x)
    }

    /// `v` is primitive iff `L / Zv` is free, i.e. its coordinates are coprime.
    pub fn is_primitive(&self, v: &LatticeVector) -> Result<bool> {
        self.check_len(v)?;
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(content(&v.coords).is_one())
    }

    /// Divides out the content of `v`. With `orient`, also flips the sign so
    /// that `v` pairs positively with the reference vector, placing the ray
    /// in the closure of the positive cone.
    pub fn primitivize(&self, v: &LatticeVector, orient: bool) -> Result<LatticeVector> {
        self.check_len(v)?;
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let p = LatticeVector::new(primitive_part(&v.coords));
        if !orient {
            return Ok(p);
        }
        let x0 = self.orientation.as_ref().ok_or(Error::OrientationUndefined)?;
        let pairing = self.bilinear(&p, x0)?;
        if pairing.is_zero() {
            return if self.square(&p)?.is_negative() {
                Err(Error::OrientationUndefined)
            } else {
                Err(Error::InternalInconsistency(format!(
                    "nonzero vector {p} with non-negative square is orthogonal to the positive reference vector"
                )))
            };
        }
        Ok(if pairing.is_negative() { p.neg() } else { p })
    }

    /// Basis (Hermite normal form) of the saturated sublattice `v^perp`.
    pub fn orthogonal_complement(&self, v: &LatticeVector) -> Result<Vec<LatticeVector>> {
        self.check_len(v)?;
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let functional = IntMatrix::from_rows(vec![self.gram.mul_vec(&v.coords)]).expect("single row");
        Ok(integer_kernel(&functional).into_iter().map(LatticeVector::new).collect())
    }

    /// Returns `w` such that `sub_basis` together with `w` is a basis of the
    /// lattice. `sub_basis` must span a primitive sublattice of rank `r - 1`.
    /// The returned `w` has its first nonzero coordinate positive.
    pub fn complete_to_basis(&self, sub_basis: &[LatticeVector]) -> Result<LatticeVector> {
        let r = self.rank();
        if r == 0 || sub_basis.len() + 1 != r {
            return Err(Error::NotPrimitiveSublattice(r.saturating_sub(1)));
        }
        for v in sub_basis {
            self.check_len(v)?;
        }
        let rows: Vec<Vec<BigInt>> = sub_basis.iter().map(|v| v.coords.clone()).collect();
        let mut extra = unimodular_completion(&rows, r).ok_or(Error::NotPrimitiveSublattice(r - 1))?;
        Ok(LatticeVector::new(lex_positive(extra.remove(0))))
    }

    /// Builds `v^perp / Zv` for a primitive isotropic `v` in a hyperbolic
    /// lattice, together with an adapted basis `<v, u_1.., u_{r-2}, w>`.
    pub fn quotient_lattice(&self, v: &LatticeVector) -> Result<QuotientData> {
        if !self.is_hyperbolic() {
            return Err(Error::NotHyperbolic(self.signature.to_string()));
        }
        if !self.is_primitive(v)? {
            return Err(Error::NotPrimitive);
        }
        let sq = self.square(v)?;
        if !sq.is_zero() {
            return Err(Error::NotIsotropic(sq.to_string()));
        }
        let r = self.rank();
        let perp = self.orthogonal_complement(v)?;
        let perp_rows: Vec<Vec<BigInt>> = perp.iter().map(|x| x.coords.clone()).collect();
        let c = solve_in_echelon(&perp_rows, &v.coords)
            .ok_or_else(|| Error::InternalInconsistency("isotropic vector not in its own complement".into()))?;
        let completion = unimodular_completion(&[c], r - 1)
            .ok_or_else(|| Error::InternalInconsistency("v is not primitive in its complement".into()))?;
        let us: Vec<LatticeVector> = completion
            .iter()
            .map(|d| {
                let mut coords = vec![BigInt::zero(); r];
                for (k, dk) in d.iter().enumerate() {
                    if dk.is_zero() {
                        continue;
                    }
                    for (x, y) in coords.iter_mut().zip(&perp_rows[k]) {
                        *x += dk * y;
                    }
                }
                LatticeVector::new(coords)
            })
            .collect();

        let mut complement_basis = Vec::with_capacity(r - 1);
        complement_basis.push(v.clone());
        complement_basis.extend(us.iter().cloned());
        let mut w = self.complete_to_basis(&complement_basis)?;
        if self.bilinear(&w, v)?.is_negative() {
            w = w.neg();
        }

        let mut qgram = IntMatrix::zeros(r - 2, r - 2);
        for i in 0..r - 2 {
            for j in 0..r - 2 {
                qgram[(i, j)] = self.bilinear(&us[i], &us[j])?;
            }
        }
        let sig = signature_of(&qgram);
        if sig.classify() != Classification::Elliptic {
            return Err(Error::NotNegativeDefinite(sig.to_string()));
        }
        let quotient = Lattice::new(qgram)?;

        let mut cols: Vec<Vec<BigInt>> = complement_basis.iter().map(|x| x.coords.clone()).collect();
        cols.push(w.coords.clone());
        let basis = IntMatrix::from_columns(r, &cols);
        let basis_inverse = basis
            .inverse()
            .ok_or_else(|| Error::InternalInconsistency("adapted basis is not unimodular".into()))?;
        Ok(QuotientData { quotient, complement_basis, completion_vector: w, basis, basis_inverse })
    }
}

/// The quotient `v^perp / Zv` and the adapted basis used to read off the
/// descended action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    /// Elliptic lattice of rank `r - 2` with Gram `((u_i, u_j))`.
    pub quotient: Lattice,
    /// `<v, u_1, .., u_{r-2}>`, a basis of `v^perp`.
    pub complement_basis: Vec<LatticeVector>,
    /// `w` completing the complement basis to a basis of `L`.
    pub completion_vector: LatticeVector,
    /// Columns `v, u_1, .., u_{r-2}, w`.
    pub basis: IntMatrix,
    pub basis_inverse: IntMatrix,
}

impl QuotientData {
    pub fn fixed_vector(&self) -> &LatticeVector {
        &self.complement_basis[0]
    }

    pub fn lifts(&self) -> &[LatticeVector] {
        &self.complement_basis[1..]
    }

    /// Coordinates of `x` in the adapted basis.
    pub fn adapted_coords(&self, x: &LatticeVector) -> Vec<BigInt> {
        self.basis_inverse.mul_vec(&x.coords)
    }

    /// Image of `x in v^perp` in the quotient's coordinates; `None` if `x` is
    /// not orthogonal to `v`.
    pub fn project(&self, x: &LatticeVector) -> Option<Vec<BigInt>> {
        let c = self.adapted_coords(x);
        let r = c.len();
        c[r - 1].is_zero().then(|| c[1..r - 1].to_vec())
    }

    /// Matrix of `h` in the adapted basis, `B^{-1} h B`.
    pub fn to_adapted(&self, h: &IntMatrix) -> IntMatrix {
        self.basis_inverse.mul(&h.mul(&self.basis))
    }
}
