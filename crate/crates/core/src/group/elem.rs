//! Square integer matrices with a machine-word fast path, for enumerating
//! many group elements. `Small` is used whenever every entry fits in `i64`,
//! so equal matrices always have equal representations.

use num_bigint::BigInt;

use crate::matrix::IntMatrix;
use crate::spectral;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Elem {
    Small(Vec<i64>),
    Big(IntMatrix),
}

impl Elem {
    pub(crate) fn from_matrix(m: &IntMatrix) -> Elem {
        let small: Option<Vec<i64>> = m.entries().iter().map(|x| i64::try_from(x).ok()).collect();
        match small {
            Some(v) => Elem::Small(v),
            None => Elem::Big(m.clone()),
        }
    }

    pub(crate) fn to_matrix(&self, n: usize) -> IntMatrix {
        match self {
            Elem::Small(v) => {
                let rows = v.chunks(n.max(1)).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                if n == 0 {
                    IntMatrix::zeros(0, 0)
                } else {
                    IntMatrix::from_rows(rows).expect("square")
                }
            }
            Elem::Big(m) => m.clone(),
        }
    }

    pub(crate) fn mul(&self, other: &Elem, n: usize) -> Elem {
        if let (Elem::Small(a), Elem::Small(b)) = (self, other) {
            if let Some(c) = small_mul(a, b, n) {
                return Elem::Small(c);
            }
        }
        Elem::from_matrix(&self.to_matrix(n).mul(&other.to_matrix(n)))
    }

    pub(crate) fn is_unipotent(&self, n: usize) -> bool {
        if let Elem::Small(v) = self {
            if let Some(u) = small_unipotent(v, n) {
                return u;
            }
        }
        spectral::is_unipotent(&self.to_matrix(n))
    }

    pub(crate) fn is_null_entropy(&self, n: usize) -> bool {
        self.is_unipotent(n) || spectral::is_null_entropy(&self.to_matrix(n))
    }
}

fn small_mul(a: &[i64], b: &[i64], n: usize) -> Option<Vec<i64>> {
    let mut c = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc: i128 = 0;
            for k in 0..n {
                acc = acc.checked_add(i128::from(a[i * n + k]) * i128::from(b[k * n + j]))?;
            }
            c[i * n + j] = i64::try_from(acc).ok()?;
        }
    }
    Some(c)
}

/// `None` on overflow.
fn small_unipotent(g: &[i64], n: usize) -> Option<bool> {
    let mut m = g.to_vec();
    for i in 0..n {
        m[i * n + i] = m[i * n + i].checked_sub(1)?;
    }
    let mut p = m.clone();
    for _ in 1..n {
        if p.iter().all(|&x| x == 0) {
            return Some(true);
        }
        p = small_mul(&p, &m, n)?;
    }
    Some(p.iter().all(|&x| x == 0))
}
