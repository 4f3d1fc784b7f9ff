use std::fmt;

use serde::{Deserialize, Serialize};

/// A word in the generators, as `(generator index, exponent)` pairs.
/// Indices are zero-based; the text form numbers generators from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(i: usize) -> Self {
        Word { letters: vec![(i, 1)] }
    }

    pub fn new(letters: Vec<(usize, i64)>) -> Self {
        Word { letters }
    }

    /// Total number of letters counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.iter().all(|&(_, e)| e == 0)
    }

    /// Appends `g_i^sign`, merging with the last syllable when possible.
    pub(crate) fn push_letter(&self, i: usize, sign: i64) -> Word {
        let mut letters = self.letters.clone();
        match letters.last_mut() {
            Some((j, e)) if *j == i => {
                *e += sign;
                if *e == 0 {
                    letters.pop();
                }
            }
            _ => letters.push((i, sign)),
        }
        Word { letters }
    }

    /// The last letter as `(index, +-1)`.
    pub(crate) fn last_letter(&self) -> Option<(usize, i64)> {
        self.letters.last().map(|&(i, e)| (i, e.signum()))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(i, e) in &other.letters {
            match w.letters.last_mut() {
                Some((j, f)) if *j == i => {
                    *f += e;
                    if *f == 0 {
                        w.letters.pop();
                    }
                }
                _ if e != 0 => w.letters.push((i, e)),
                _ => {}
            }
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .filter(|&&(_, e)| e != 0)
            .map(|&(i, e)| if e == 1 { format!("g{}", i + 1) } else { format!("g{}^{}", i + 1, e) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}
