//! Finitely generated subgroups of `O(L)'` for a hyperbolic lattice: word
//! enumeration, fixed isotropic rays, descent to the elliptic quotient and the
//! abelian part `phi`.

mod analyze;
mod descent;
mod elem;
mod fixed;
mod word;

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::json::GroupJson;
use crate::lattice::Lattice;
use crate::matrix::IntMatrix;
use crate::spectral::{is_in_o_prime, Isometry};

pub use analyze::{
    analyze_group, AnalysisOptions, AnalysisReport, IntVector, NullEntropyStructure, PositiveEntropyWitness, Verdict,
};
pub use descent::{alpha_map, image_group_closure, n0_membership, quotient_descend, DescendedGenerator, Descent};
pub use fixed::{common_fixed_space, fixed_ray, fixed_ray_with_depth, is_upper_unitriangular_in, triangularize_unipotent, FixedRay};
pub use word::Word;

pub(crate) use elem::Elem;

/// Generators `g_1 .. g_k` of a subgroup of `O(L)'`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    lattice: Arc<Lattice>,
    generators: Vec<Isometry>,
}

impl GeneratorSet {
    /// Validates that the lattice is hyperbolic and every matrix is an
    /// isometry preserving the positive cone.
    pub fn new(lattice: Arc<Lattice>, matrices: Vec<IntMatrix>) -> Result<Self> {
        if !lattice.is_hyperbolic() {
            return Err(Error::NotHyperbolic(lattice.signature().to_string()));
        }
        let mut generators = Vec::with_capacity(matrices.len());
        for m in matrices {
            let g = Isometry::new(lattice.clone(), m)?;
            if !is_in_o_prime(&lattice, &g)? {
                return Err(Error::NotInPositiveConeGroup);
            }
            generators.push(g);
        }
        Ok(GeneratorSet { lattice, generators })
    }

    pub fn from_isometries(lattice: Arc<Lattice>, generators: Vec<Isometry>) -> Result<Self> {
        Self::new(lattice, generators.into_iter().map(|g| g.matrix().clone()).collect())
    }

    pub fn from_json(g: &GroupJson) -> Result<Self> {
        let lattice = Arc::new(g.lattice.to_lattice()?);
        Self::new(lattice, g.generators.iter().map(|m| m.matrix.clone()).collect())
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// The product `g_{i1}^{e1} g_{i2}^{e2} ..`, acting on column vectors with the
/// rightmost syllable applied first.
pub fn evaluate_word(s: &GeneratorSet, w: &Word) -> Result<Isometry> {
    let mut acc = Isometry::identity(s.lattice.clone());
    for &(i, e) in &w.letters {
        let g = s.generators.get(i).ok_or(Error::IndexOutOfRange { index: i, count: s.len() })?;
        acc = acc.compose(&g.pow(e));
    }
    Ok(acc)
}

/// Distinct group elements reachable by reduced words of bounded length, in
/// breadth-first shortlex order (letters ordered `g1, g1^-1, g2, ..`). Each
/// element carries the first word that reaches it.
#[derive(Clone, Debug)]
pub(crate) struct WordBall {
    pub depth: usize,
    pub entries: Vec<(Word, Elem)>,
}

impl WordBall {
    /// Enumerates up to `depth`, calling `stop` on each new element; returns
    /// the index of the element at which `stop` returned true, if any.
    pub fn build(s: &GeneratorSet, depth: usize, mut stop: impl FnMut(&Word, &Elem) -> bool) -> (WordBall, Option<usize>) {
        let n = s.rank();
        let letters: Vec<(usize, i64, Elem)> = s
            .generators
            .iter()
            .enumerate()
            .flat_map(|(i, g)| {
                [(i, 1, Elem::from_matrix(g.matrix())), (i, -1, Elem::from_matrix(g.inverse().matrix()))]
            })
            .collect();
        let identity = Elem::from_matrix(&IntMatrix::identity(n));
        let mut seen: HashSet<Elem> = HashSet::new();
        seen.insert(identity.clone());
        let mut entries = vec![(Word::empty(), identity)];
        if stop(&entries[0].0, &entries[0].1) {
            return (WordBall { depth, entries }, Some(0));
        }
        let mut frontier = 0..1;
        for _ in 0..depth {
            let start = entries.len();
            for idx in frontier.clone() {
                let last = entries[idx].0.last_letter();
                for (i, sign, m) in &letters {
                    if last == Some((*i, -*sign)) {
                        continue;
                    }
                    let elem = entries[idx].1.mul(m, n);
                    if seen.contains(&elem) {
                        continue;
                    }
                    seen.insert(elem.clone());
                    let word = entries[idx].0.push_letter(*i, *sign);
                    entries.push((word, elem));
                    let k = entries.len() - 1;
                    if stop(&entries[k].0, &entries[k].1) {
                        return (WordBall { depth, entries }, Some(k));
                    }
                }
            }
            if entries.len() == start {
                break;
            }
            frontier = start..entries.len();
        }
        (WordBall { depth, entries }, None)
    }
}

/// Outcome of the word-level null-entropy check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordCheck {
    /// Every element up to `depth` has null entropy. This is evidence only:
    /// longer words are not examined.
    NullEntropy { depth: usize, elements: usize },
    /// The first word, in shortlex order, with positive entropy.
    Witness(Word),
}

/// Breadth-first search over reduced words of length at most `max_length`.
pub fn verify_null_entropy_words(s: &GeneratorSet, max_length: usize) -> Result<WordCheck> {
    if max_length == 0 {
        return Err(Error::Config("max_length must be at least 1".into()));
    }
    let n = s.rank();
    let (ball, hit) = WordBall::build(s, max_length, |_, e| !e.is_null_entropy(n));
    Ok(match hit {
        Some(k) => WordCheck::Witness(ball.entries[k].0.clone()),
        None => WordCheck::NullEntropy { depth: max_length, elements: ball.entries.len() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn transvection_pair() -> GeneratorSet {
        let (l, gens) = catalog::transvection_family(
            &Lattice::from_i64(&[&[-2, 1], &[1, -2]]).unwrap(),
        )
        .unwrap();
        GeneratorSet::from_isometries(l, gens).unwrap()
    }

    #[test]
    fn evaluate_words() {
        let s = transvection_pair();
        assert!(evaluate_word(&s, &Word::empty()).unwrap().matrix().is_identity());
        assert_eq!(evaluate_word(&s, &Word::generator(0)).unwrap(), s.generators()[0]);
        let g = s.generators();
        let expected = g[0].matrix().mul(g[0].matrix()).mul(g[1].inverse().matrix());
        assert_eq!(evaluate_word(&s, &Word::new(vec![(0, 2), (1, -1)])).unwrap().matrix(), &expected);
        assert_eq!(
            evaluate_word(&s, &Word::generator(5)).unwrap_err(),
            Error::IndexOutOfRange { index: 5, count: 2 }
        );
    }

    #[test]
    fn generator_validation() {
        let (l, _) = catalog::pell_isometry();
        let bad = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(GeneratorSet::new(l.clone(), vec![bad]).unwrap_err(), Error::NotIsometry);
        let flip = IntMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
        assert_eq!(GeneratorSet::new(l, vec![flip]).unwrap_err(), Error::NotInPositiveConeGroup);
        let e8 = Arc::new(catalog::root_lattice(catalog::RootFamily::E, 8, true).unwrap());
        assert!(matches!(GeneratorSet::new(e8, vec![]), Err(Error::NotHyperbolic(_))));
    }

    #[test]
    fn word_checks() {
        let s = transvection_pair();
        assert!(matches!(verify_null_entropy_words(&s, 4).unwrap(), WordCheck::NullEntropy { depth: 4, .. }));
        let (l, g) = catalog::pell_isometry();
        let pell = GeneratorSet::from_isometries(l.clone(), vec![g]).unwrap();
        assert_eq!(verify_null_entropy_words(&pell, 3).unwrap(), WordCheck::Witness(Word::generator(0)));
        let id = GeneratorSet::new(l, vec![IntMatrix::identity(2)]).unwrap();
        assert_eq!(verify_null_entropy_words(&id, 2).unwrap(), WordCheck::NullEntropy { depth: 2, elements: 1 });
        assert!(verify_null_entropy_words(&id, 0).is_err());
    }

    #[test]
    fn ball_counts_abelian_growth() {
        // Z^2 ball of L1 radius 3 has 25 points.
        let s = transvection_pair();
        let (ball, _) = WordBall::build(&s, 3, |_, _| false);
        assert_eq!(ball.entries.len(), 25);
        assert_eq!(ball.entries[1].0, Word::generator(0));
        assert_eq!(ball.entries[2].0, Word::new(vec![(0, -1)]));
    }
}
