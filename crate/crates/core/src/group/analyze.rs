use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::descent::{alpha_of_adapted, image_group_closure, quotient_descend, split_adapted, DescendedGenerator};
use super::fixed::{fixed_ray_impl, FixedRay};
use super::{Elem, GeneratorSet, Word, WordBall};
use crate::catalog::identify_definite;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::matrix::IntMatrix;
use crate::normal_form::{hnf_basis, smith_invariants, solve_in_echelon};
use crate::spectral::{char_poly, spectral_radius, unipotency_exponent};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub word_depth: usize,
    pub closure_cap: usize,
    pub tol: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { word_depth: 6, closure_cap: 1_000_000, tol: 1e-9 }
    }
}

impl AnalysisOptions {
    pub fn validate(&self) -> Result<()> {
        if self.word_depth == 0 {
            return Err(Error::Config("word_depth must be at least 1".into()));
        }
        if self.closure_cap == 0 {
            return Err(Error::Config("closure_cap must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Config("tol must be a positive real".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub rank: usize,
    pub generator_count: usize,
    pub word_depth: usize,
    pub closure_cap: usize,
    pub tol: String,
    /// Distinct group elements reached by words of length at most
    /// `word_depth`; all of them passed the null-entropy test unless the
    /// verdict is a witness.
    pub elements_examined: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FiniteExponentCertificate {
        exponent: String,
        depth: usize,
    },
    FixedPositiveVectorCertificate {
        #[serde(with = "crate::json::bigint_vec")]
        x: Vec<BigInt>,
        #[serde(with = "crate::json::bigint")]
        square: BigInt,
    },
    NullEntropyStructure(NullEntropyStructure),
    PositiveEntropyWitness(PositiveEntropyWitness),
    Inconclusive {
        reason: String,
        partial: Option<Box<NullEntropyStructure>>,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::FiniteExponentCertificate { .. } => "FiniteExponentCertificate",
            Verdict::FixedPositiveVectorCertificate { .. } => "FixedPositiveVectorCertificate",
            Verdict::NullEntropyStructure(_) => "NullEntropyStructure",
            Verdict::PositiveEntropyWitness(_) => "PositiveEntropyWitness",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    /// 0 structure found, 2 positive entropy, 3 finiteness certificate,
    /// 4 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::NullEntropyStructure(_) => 0,
            Verdict::PositiveEntropyWitness(_) => 2,
            Verdict::FiniteExponentCertificate { .. } | Verdict::FixedPositiveVectorCertificate { .. } => 3,
            Verdict::Inconclusive { .. } => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveEntropyWitness {
    pub word: Word,
    pub word_text: String,
    pub char_poly: String,
    pub delta: String,
    pub entropy: String,
    pub tol: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullEntropyStructure {
    #[serde(with = "crate::json::bigint_vec")]
    pub fixed_ray: Vec<BigInt>,
    pub fixed_space_dim: usize,
    pub radical_dim: usize,
    #[serde(with = "crate::json::bigint_matrix")]
    pub quotient_gram: IntMatrix,
    pub quotient_name: Option<String>,
    /// Lifts `u_1 .. u_{r-2}` of the quotient basis.
    pub complement_basis: Vec<IntVector>,
    #[serde(with = "crate::json::bigint_vec")]
    pub completion_vector: Vec<BigInt>,
    pub descended_generators: Vec<DescendedGenerator>,
    pub image_group_order: usize,
    /// Harvested elements of `N^0`, including the identity.
    pub n0_elements: usize,
    /// Hermite basis of the subgroup of `Z^{r-2}` spanned by the observed
    /// values of `phi`.
    pub phi_images: Vec<IntVector>,
    pub phi_rank: usize,
    pub rank_bound: usize,
}

/// An integer vector in report form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(#[serde(with = "crate::json::bigint_vec")] pub Vec<BigInt>);

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

/// Runs the full pipeline: word-level null-entropy check, fixed ray, descent
/// to the quotient, and the rank of `phi` on harvested elements of `N^0`.
pub fn analyze_group(s: &GeneratorSet, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    opts.validate()?;
    let r = s.rank();
    let (ball, hit) = WordBall::build(s, opts.word_depth, |_, e| !e.is_null_entropy(r));
    let report = |verdict| AnalysisReport {
        rank: r,
        generator_count: s.len(),
        word_depth: opts.word_depth,
        closure_cap: opts.closure_cap,
        tol: format!("{:e}", opts.tol),
        elements_examined: ball.entries.len(),
        verdict,
    };

    if let Some(k) = hit {
        let (word, elem) = &ball.entries[k];
        let m = elem.to_matrix(r);
        let ev = spectral_radius(&m, opts.tol)?;
        return Ok(report(Verdict::PositiveEntropyWitness(PositiveEntropyWitness {
            word: word.clone(),
            word_text: word.to_string(),
            char_poly: char_poly(&m).to_string(),
            delta: ev.delta_decimal(),
            entropy: ev.entropy_decimal(),
            tol: ev.tol_decimal(),
        })));
    }

    let (v, fixed_space_dim, radical_dim) = match fixed_ray_impl(s, opts.word_depth, Some(&ball))? {
        FixedRay::PositiveVector { x, square } => {
            return Ok(report(Verdict::FixedPositiveVectorCertificate { x, square }))
        }
        FixedRay::FiniteExponent { exponent, depth } => {
            return Ok(report(Verdict::FiniteExponentCertificate { exponent, depth }))
        }
        FixedRay::Ray { v, fixed_space_dim, radical_dim } => (v, fixed_space_dim, radical_dim),
    };

    let descent = quotient_descend(s, &LatticeVector::new(v.clone()))?;
    let q = &descent.quotient;
    let pairs: Vec<IntMatrix> = descent
        .images
        .iter()
        .map(|d| {
            let k = d.matrix.rows();
            let mut m = IntMatrix::zeros(k + 1, k + 1);
            for i in 0..k {
                for j in 0..k {
                    m[(i, j)] = d.matrix[(i, j)].clone();
                }
            }
            m[(k, k)] = d.det.clone();
            m
        })
        .collect();
    let image_group_order = image_group_closure(r - 1, &pairs, opts.closure_cap)?.len();

    let mut phi = PhiLattice::new(r - 2);
    let basis = Elem::from_matrix(&q.basis);
    let basis_inv = Elem::from_matrix(&q.basis_inverse);
    for (_, h) in &ball.entries {
        let a = basis_inv.mul(&h.mul(&basis, r), r).to_matrix(r);
        let parts = split_adapted(&a)?;
        if parts.bar.is_identity() && parts.det == BigInt::from(1) {
            phi.add(&alpha_of_adapted(&a)?);
        }
    }
    // Generator powers g^n(r) are unipotent, hence in N^0, even when longer
    // than the word depth.
    let n = unipotency_exponent(r)?;
    for g in s.generators() {
        let p = g.matrix().pow(&n);
        if p.is_identity() {
            continue;
        }
        match alpha_of_adapted(&q.to_adapted(&p)) {
            Ok(alpha) => phi.add(&alpha),
            Err(Error::NotInKernel) => {
                return Err(Error::InternalInconsistency("unipotent generator power outside N0".into()))
            }
            Err(e) => return Err(e),
        }
    }

    let phi_rank = phi.rank();
    let rank_bound = r - 2;
    if phi_rank > rank_bound {
        return Err(Error::InternalInconsistency(format!("phi rank {phi_rank} exceeds r - 2 = {rank_bound}")));
    }
    let structure = NullEntropyStructure {
        fixed_ray: v,
        fixed_space_dim,
        radical_dim,
        quotient_gram: q.quotient.gram().clone(),
        quotient_name: identify_definite(&q.quotient),
        complement_basis: q.lifts().iter().map(|u| IntVector(u.coords.clone())).collect(),
        completion_vector: q.completion_vector.coords.clone(),
        descended_generators: descent.images.clone(),
        image_group_order,
        n0_elements: phi.observed,
        phi_images: phi.basis.iter().cloned().map(IntVector).collect(),
        phi_rank,
        rank_bound,
    };
    if phi_rank == 0 {
        return Ok(report(Verdict::Inconclusive {
            reason: format!("no nontrivial element of N0 among words of length at most {}", opts.word_depth),
            partial: Some(Box::new(structure)),
        }));
    }
    Ok(report(Verdict::NullEntropyStructure(structure)))
}

/// Subgroup of `Z^k` generated by observed `phi` values, kept in Hermite
/// normal form.
struct PhiLattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    observed: usize,
}

impl PhiLattice {
    fn new(dim: usize) -> Self {
        PhiLattice { dim, basis: Vec::new(), observed: 0 }
    }

    fn add(&mut self, alpha: &[BigInt]) {
        self.observed += 1;
        if alpha.iter().all(Zero::is_zero) || solve_in_echelon(&self.basis, alpha).is_some() {
            return;
        }
        let mut rows = self.basis.clone();
        rows.push(alpha.to_vec());
        self.basis = hnf_basis(&rows, self.dim);
    }

    fn rank(&self) -> usize {
        if self.basis.is_empty() {
            return 0;
        }
        let m = IntMatrix::from_rows(self.basis.clone()).expect("equal lengths");
        smith_invariants(&m).iter().filter(|d| !d.is_zero()).count()
    }
}
