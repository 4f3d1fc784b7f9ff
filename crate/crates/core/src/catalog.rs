//! Named lattices and standard isometries used as fixtures.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Classification, Lattice, LatticeVector};
use crate::matrix::IntMatrix;
use crate::spectral::Isometry;

/// A named lattice with a short description of where it comes from.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub lattice: Lattice,
    pub notes: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootFamily {
    A,
    D,
    E,
}

impl RootFamily {
    fn letter(self) -> char {
        match self {
            RootFamily::A => 'A',
            RootFamily::D => 'D',
            RootFamily::E => 'E',
        }
    }
}

/// `U`, the even unimodular hyperbolic plane, Gram `[[0,1],[1,0]]`.
pub fn hyperbolic_plane() -> Lattice {
    Lattice::from_i64(&[&[0, 1], &[1, 0]]).expect("U is nondegenerate")
}

/// Dynkin Gram matrix (diagonal 2, adjacent -1), negated when `negate`.
///
/// Node numbering: `A_n` and `D_n`, `E_n` share the chain `1..n-1`; `D_n`
/// attaches node `n` to node `n-2`, `E_n` attaches node `n` to node `n-3`.
pub fn root_lattice(family: RootFamily, n: usize, negate: bool) -> Result<Lattice> {
    let valid = match family {
        RootFamily::A => n >= 1,
        RootFamily::D => n >= 4,
        RootFamily::E => (6..=8).contains(&n),
    };
    if !valid {
        return Err(Error::InvalidRootLattice { family: family.letter(), rank: n });
    }
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = BigInt::from(2);
    }
    let chain_end = match family {
        RootFamily::A => n,
        RootFamily::D | RootFamily::E => n - 1,
    };
    let mut edges: Vec<(usize, usize)> = (1..chain_end).map(|i| (i - 1, i)).collect();
    match family {
        RootFamily::A => {}
        RootFamily::D => edges.push((n - 3, n - 1)),
        RootFamily::E => edges.push((n - 4, n - 1)),
    }
    for (a, b) in edges {
        g[(a, b)] = BigInt::from(-1);
        g[(b, a)] = BigInt::from(-1);
    }
    if negate {
        g = g.neg();
    }
    Lattice::new(g)
}

/// Block-diagonal sum.
pub fn direct_sum(parts: &[Lattice]) -> Lattice {
    let n: usize = parts.iter().map(Lattice::rank).sum();
    let mut g = IntMatrix::zeros(n, n);
    let mut off = 0;
    for l in parts {
        let r = l.rank();
        for i in 0..r {
            for j in 0..r {
                g[(off + i, off + j)] = l.gram()[(i, j)].clone();
            }
        }
        off += r;
    }
    Lattice::new(g).expect("direct sum of nondegenerate lattices")
}

/// `L(m)`: the Gram matrix multiplied by `m`.
pub fn rescale(l: &Lattice, m: i64) -> Result<Lattice> {
    if m == 0 {
        return Err(Error::ZeroScale);
    }
    Lattice::new(l.gram().scale(&BigInt::from(m)))
}

/// `U^3 + E8(-1)^2`, rank 22, signature (3, 0, 19).
pub fn k3_lattice() -> Lattice {
    let u = hyperbolic_plane();
    let e8 = root_lattice(RootFamily::E, 8, true).expect("E8");
    direct_sum(&[u.clone(), u.clone(), u, e8.clone(), e8])
}

/// `U + E8(-1)^2 + N` for a negative definite rank-2 lattice `N`.
pub fn ns_rank20(n: &Lattice) -> Result<Lattice> {
    if n.rank() != 2 || n.classify() != Classification::Elliptic {
        return Err(Error::NotNegativeDefinite(n.signature().to_string()));
    }
    let e8 = root_lattice(RootFamily::E, 8, true)?;
    Ok(direct_sum(&[hyperbolic_plane(), e8.clone(), e8, n.clone()]))
}

/// Eichler transvection `x -> x - (x,v) u + (x,u) v - (u,u)/2 (x,v) v` for
/// isotropic `v` and `u` orthogonal to `v` in an even lattice.
pub fn eichler_transvection(l: &Arc<Lattice>, v: &LatticeVector, u: &LatticeVector) -> Result<Isometry> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    if !l.square(v)?.is_zero() {
        return Err(Error::TransvectionPrecondition("v must be isotropic"));
    }
    if !l.bilinear(v, u)?.is_zero() {
        return Err(Error::TransvectionPrecondition("u must be orthogonal to v"));
    }
    let half_u2 = l.square(u)? / 2;
    let r = l.rank();
    let mut cols = Vec::with_capacity(r);
    for j in 0..r {
        let x = LatticeVector::basis(r, j);
        let xv = l.bilinear(&x, v)?;
        let xu = l.bilinear(&x, u)?;
        let coeff_v = &xu - &half_u2 * &xv;
        let col: Vec<BigInt> = (0..r).map(|i| &x.coords[i] - &xv * &u.coords[i] + &coeff_v * &v.coords[i]).collect();
        cols.push(col);
    }
    Isometry::new(l.clone(), IntMatrix::from_columns(r, &cols))
}

/// Reflection `x -> x - 2 (x,r)/(r,r) r` in a root with `(r,r) = +-1, +-2`.
pub fn reflection(l: &Arc<Lattice>, root: &LatticeVector) -> Result<Isometry> {
    let rr = l.square(root)?;
    if !(rr.abs() == BigInt::from(1) || rr.abs() == BigInt::from(2)) {
        return Err(Error::Domain("reflection root must have square +-1 or +-2"));
    }
    let r = l.rank();
    let mut cols = Vec::with_capacity(r);
    for j in 0..r {
        let x = LatticeVector::basis(r, j);
        let c = BigInt::from(2) * l.bilinear(&x, root)? / &rr;
        cols.push((0..r).map(|i| &x.coords[i] - &c * &root.coords[i]).collect());
    }
    Isometry::new(l.clone(), IntMatrix::from_columns(r, &cols))
}

/// `diag(1, -2)` with `g = [[3,4],[2,3]]`, characteristic polynomial
/// `x^2 - 6x + 1`.
pub fn pell_isometry() -> (Arc<Lattice>, Isometry) {
    let l = Arc::new(Lattice::from_i64(&[&[1, 0], &[0, -2]]).expect("diag(1,-2)"));
    let g = Isometry::new(l.clone(), IntMatrix::from_i64(&[&[3, 4], &[2, 3]])).expect("Pell isometry");
    (l, g)
}

/// `U + <-2>` with the swap `e <-> f`, identity on the `<-2>` factor.
pub fn u_swap() -> (Arc<Lattice>, Isometry) {
    let l = Arc::new(direct_sum(&[hyperbolic_plane(), Lattice::from_i64(&[&[-2]]).expect("<-2>")]));
    let g = Isometry::new(l.clone(), IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).expect("swap");
    (l, g)
}

/// `U + M` with the transvections `E(e, u_j)` for the basis vectors `u_j`
/// of an even negative definite `M`.
pub fn transvection_family(m: &Lattice) -> Result<(Arc<Lattice>, Vec<Isometry>)> {
    let l = Arc::new(direct_sum(&[hyperbolic_plane(), m.clone()]));
    let r = l.rank();
    let e = LatticeVector::basis(r, 0);
    let gens = (2..r).map(|j| eichler_transvection(&l, &e, &LatticeVector::basis(r, j))).collect::<Result<Vec<_>>>()?;
    Ok((l, gens))
}

/// The eight transvections on `U + E8(-1)`, rank 10.
pub fn e8_transvections() -> (Arc<Lattice>, Vec<Isometry>) {
    transvection_family(&root_lattice(RootFamily::E, 8, true).expect("E8")).expect("E8(-1) is even")
}

/// Resolves a catalog name: `U`, `A<n>`, `D<n>`, `E<n>` with an optional
/// `(m)` twist such as `(-1)`, `<m>` for a rank-one lattice, `K3`,
/// `NS20:<spec>`, and `+`-separated direct sums of these.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let name = name.trim();
    let lattice = parse_spec(name)?;
    let notes = if name == "K3" {
        "U^3 + E8(-1)^2, the K3 lattice".to_string()
    } else if name.starts_with("NS20:") {
        "U + E8(-1)^2 + N, rank-20 Neron-Severi shape".to_string()
    } else {
        format!("direct sum of standard lattices ({name})")
    };
    Ok(CatalogEntry { name: name.to_string(), lattice, notes })
}

fn parse_spec(spec: &str) -> Result<Lattice> {
    if let Some(rest) = spec.strip_prefix("NS20:") {
        return ns_rank20(&parse_spec(rest)?);
    }
    let parts = spec.split('+').map(|t| parse_term(t.trim())).collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().expect("one part"));
    }
    Ok(direct_sum(&parts))
}

fn unknown(term: &str) -> Error {
    Error::Parse(format!("unknown lattice name: {term}"))
}

fn parse_term(term: &str) -> Result<Lattice> {
    if term == "K3" {
        return Ok(k3_lattice());
    }
    if let Some(inner) = term.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        let m: i64 = inner.trim().parse().map_err(|_| unknown(term))?;
        return Lattice::new(IntMatrix::from_i64(&[&[m]]));
    }
    let (base, twist) = match term.find('(') {
        Some(i) => {
            let t = term[i..].strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| unknown(term))?;
            (&term[..i], Some(t.trim().parse::<i64>().map_err(|_| unknown(term))?))
        }
        None => (term, None),
    };
    let lattice = if base == "U" {
        hyperbolic_plane()
    } else {
        let mut chars = base.chars();
        let family = match chars.next() {
            Some('A') => RootFamily::A,
            Some('D') => RootFamily::D,
            Some('E') => RootFamily::E,
            _ => return Err(unknown(term)),
        };
        let n: usize = chars.as_str().parse().map_err(|_| unknown(term))?;
        root_lattice(family, n, false)?
    };
    match twist {
        None | Some(1) => Ok(lattice),
        Some(m) => rescale(&lattice, m),
    }
}

/// Names a negative definite lattice when its Gram matrix is literally a
/// catalog root lattice (negated), or when it is even unimodular of rank 8
/// and therefore isometric to `E8(-1)`.
pub fn identify_definite(l: &Lattice) -> Option<String> {
    if l.classify() != Classification::Elliptic {
        return None;
    }
    let n = l.rank();
    if n == 1 {
        let m = &l.gram()[(0, 0)];
        return Some(if *m == BigInt::from(-2) { "A1(-1)".to_string() } else { format!("<{m}>") });
    }
    if n == 8 && l.is_even() && l.determinant() == BigInt::from(1) {
        return Some("E8(-1)".to_string());
    }
    for family in [RootFamily::A, RootFamily::D, RootFamily::E] {
        if let Ok(root) = root_lattice(family, n, true) {
            if root.gram() == l.gram() {
                return Some(format!("{}{n}(-1)", family.letter()));
            }
        }
    }
    None
}
