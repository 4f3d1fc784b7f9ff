//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isoray::catalog::{self, RootFamily};
use isoray::group::{
    alpha_map, analyze_group, fixed_ray, n0_membership, AnalysisOptions, AnalysisReport, FixedRay, GeneratorSet, Verdict,
};
use isoray::json::{self as ijson, GroupJson};
use isoray::spectral::{char_poly, is_null_entropy, spectral_radius, trace_power_product, unipotency_exponent};
use isoray::{IntMatrix, Isometry, Lattice, LatticeVector, Signature};

use common::*;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seed() -> u64 {
    std::env::var("ISORAY_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x1507_2a1f)
}

fn root(n: usize, family: RootFamily) -> Lattice {
    catalog::root_lattice(family, n, true).unwrap()
}

fn vector(r: usize, entries: &[(usize, i64)]) -> LatticeVector {
    let mut c = vec![0i64; r];
    for &(i, x) in entries {
        c[i] = x;
    }
    LatticeVector::from_i64(&c)
}

/// `U + M` with reflections in a few `(-2)`-vectors: basis vectors of `M`,
/// `e - f` and `f + u_1`.
fn reflection_family(m: &Lattice, roots_in_m: usize) -> Vec<Isometry> {
    let l = Arc::new(catalog::direct_sum(&[catalog::hyperbolic_plane(), m.clone()]));
    let r = l.rank();
    let mut roots: Vec<LatticeVector> = (2..2 + roots_in_m).map(|j| vector(r, &[(j, 1)])).collect();
    roots.push(vector(r, &[(0, 1), (1, -1)]));
    roots.push(vector(r, &[(1, 1), (2, 1)]));
    roots.iter().map(|v| catalog::reflection(&l, v).unwrap()).collect()
}

/// `-1` on the `M` part of `U + M`.
fn flip_m(l: &Arc<Lattice>) -> Isometry {
    let r = l.rank();
    let d: Vec<BigInt> = (0..r).map(|i| if i < 2 { BigInt::one() } else { -BigInt::one() }).collect();
    Isometry::new(l.clone(), IntMatrix::diagonal(&d)).unwrap()
}

fn families() -> Vec<(&'static str, Vec<Isometry>)> {
    let (_, pell) = catalog::pell_isometry();
    let mut out = vec![("pell", vec![pell])];
    for (name, m) in [("A1", root(1, RootFamily::A)), ("A2", root(2, RootFamily::A)), ("D4", root(4, RootFamily::D))] {
        out.push((name, catalog::transvection_family(&m).unwrap().1));
    }
    out.push(("E8", catalog::e8_transvections().1));
    out.push(("refl-A2", reflection_family(&root(2, RootFamily::A), 2)));
    out.push(("refl-E8", reflection_family(&root(8, RootFamily::E), 3)));
    let (l, mut mixed) = catalog::transvection_family(&root(1, RootFamily::A)).unwrap();
    mixed.extend(reflection_family(&root(1, RootFamily::A), 1));
    mixed.push(flip_m(&l));
    out.push(("mixed-A1", mixed));
    out
}

fn random_word<R: Rng>(rng: &mut R, gens: &[Isometry]) -> Isometry {
    let len = rng.gen_range(1..=6);
    let mut acc = Isometry::identity(gens[0].lattice().clone());
    for _ in 0..len {
        let g = &gens[rng.gen_range(0..gens.len())];
        let e = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=2);
        acc = acc.compose(&g.pow(e));
    }
    acc
}

fn sample_words(per_family: usize) -> Vec<(&'static str, Isometry)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut out = Vec::new();
    for (name, gens) in families() {
        for _ in 0..per_family {
            out.push((name, random_word(&mut rng, &gens)));
        }
    }
    out
}

fn c1_signatures() -> Check {
    let cases: Vec<(&str, Lattice, Signature)> = vec![
        ("U", catalog::hyperbolic_plane(), Signature::new(1, 0, 1)),
        ("E8(-1)", root(8, RootFamily::E), Signature::new(0, 0, 8)),
        ("K3", catalog::lookup("K3").map_err(|e| e.to_string())?.lattice, Signature::new(3, 0, 19)),
        ("NS20(A2(-1))", catalog::ns_rank20(&root(2, RootFamily::A)).map_err(|e| e.to_string())?, Signature::new(1, 0, 19)),
        ("NS20(<-2>+<-4>)", catalog::ns_rank20(&Lattice::from_i64(&[&[-2, 0], &[0, -4]]).unwrap()).unwrap(), Signature::new(1, 0, 19)),
    ];
    for (name, l, want) in &cases {
        ensure(&l.signature() == want, || format!("{name}: got {}, want {want}", l.signature()))?;
    }
    Ok(format!("{} lattices", cases.len()))
}

fn c2_unipotency_exponent() -> Check {
    for r in 1..=20u64 {
        let got = BigInt::from(unipotency_exponent(r as usize).map_err(|e| e.to_string())?);
        let want = unipotency_exponent_oracle(r);
        ensure(got == want, || format!("r={r}: got {got}, oracle {want}"))?;
    }
    for (r, want) in [(1usize, 2u32), (2, 12), (4, 120)] {
        let got = unipotency_exponent(r).map_err(|e| e.to_string())?;
        ensure(got == want.into(), || format!("n({r}) = {got}, expected {want}"))?;
    }
    Ok(format!("r=1..20, n(10)={}", unipotency_exponent(10).unwrap()))
}

fn c3_random_words() -> Check {
    let words = sample_words(20);
    let (mut null, mut pos) = (0, 0);
    for (name, g) in &words {
        let cp = char_poly(g.matrix());
        ensure(cp.coeffs() == char_poly_oracle(g.matrix()).as_slice(), || format!("{name}: char poly mismatch"))?;
        let lib = is_null_entropy(g.matrix());
        let oracle = numerically_null(g.matrix());
        ensure(lib == oracle, || format!("{name}: library {lib}, oracle {oracle} for {}", g.matrix()))?;
        if lib {
            null += 1
        } else {
            pos += 1
        }
    }
    ensure(null > 0 && pos > 0, || format!("sample is one-sided: {null} null, {pos} positive"))?;
    Ok(format!("{} words agree ({null} null, {pos} positive)", words.len()))
}

fn c4_pell() -> Check {
    let (_, g) = catalog::pell_isometry();
    let ev = spectral_radius(g.matrix(), 1e-9).map_err(|e| e.to_string())?;
    let want = (3.0 + 2.0 * 2f64.sqrt()).ln();
    let got = ev.log_spectral_radius();
    ensure((got - want).abs() < 1e-6 && !ev.is_exactly_zero, || format!("entropy {got}, expected {want}"))?;
    Ok(format!("entropy={}", ev.entropy_decimal()))
}

fn structure(report: &AnalysisReport) -> Result<&isoray::group::NullEntropyStructure, String> {
    match &report.verdict {
        Verdict::NullEntropyStructure(s) => Ok(s),
        other => Err(format!("verdict {}", other.name())),
    }
}

fn c5_e8_structure() -> Check {
    let (l, gens) = catalog::e8_transvections();
    let s = GeneratorSet::from_isometries(l, gens).map_err(|e| e.to_string())?;
    let report = analyze_group(&s, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
    let st = structure(&report)?;
    ensure(st.fixed_ray == vector(10, &[(0, 1)]).coords, || format!("fixed ray {:?}", st.fixed_ray))?;
    ensure(st.phi_rank == 8, || format!("phi rank {}", st.phi_rank))?;
    let phi_rows: Vec<Vec<BigInt>> = st.phi_images.iter().map(|v| v.0.clone()).collect();
    ensure(rank_q(&phi_rows) == 8, || "phi images do not span rank 8 over Q".into())?;
    let q = Lattice::new(st.quotient_gram.clone()).map_err(|e| e.to_string())?;
    ensure(q.rank() == 8 && q.signature() == Signature::new(0, 0, 8), || format!("quotient signature {}", q.signature()))?;
    ensure(q.is_even() && q.determinant() == BigInt::one(), || "quotient not even unimodular".into())?;
    ensure(q.gram() == root(8, RootFamily::E).gram(), || "quotient gram differs from E8(-1)".into())?;
    Ok(format!("phi_rank=8, quotient {}", st.quotient_name.as_deref().unwrap_or("?")))
}

/// Reduced words of length at most `depth` over `g_i^{+-1}`, keyed by letters.
fn short_words(gens: &[Isometry], depth: usize) -> Vec<(Vec<(usize, i64)>, Isometry)> {
    let letters: Vec<(usize, i64, Isometry)> =
        gens.iter().enumerate().flat_map(|(i, g)| [(i, 1, g.clone()), (i, -1, g.inverse())]).collect();
    let mut out = vec![(Vec::new(), Isometry::identity(gens[0].lattice().clone()))];
    let mut frontier = 0..1;
    for _ in 0..depth {
        let start = out.len();
        for k in frontier.clone() {
            for (i, e, m) in &letters {
                let (w, h): &(Vec<(usize, i64)>, Isometry) = &out[k];
                if w.last() == Some(&(*i, -*e)) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push((*i, *e));
                let h2 = h.compose(m);
                out.push((w2, h2));
            }
        }
        frontier = start..out.len();
    }
    out
}

/// `phi(h)` computed directly from `h(u_i) - u_i in Zv`, or `None` outside N0.
fn phi_oracle(h: &Isometry, v: &LatticeVector, lifts: &[LatticeVector]) -> Option<Vec<BigInt>> {
    if &h.apply(v) != v || !h.det().is_one() {
        return None;
    }
    lifts
        .iter()
        .map(|u| {
            let diff: Vec<BigInt> = h.apply(u).coords.iter().zip(&u.coords).map(|(a, b)| a - b).collect();
            if diff.iter().all(Zero::is_zero) {
                Some(vec![BigInt::zero(); 1])
            } else {
                v_multiple(&diff, &v.coords).map(|q| vec![q])
            }
        })
        .collect::<Option<Vec<_>>>()
        .map(|cols| cols.into_iter().map(|c| c[0].clone()).collect())
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn check_phi_words(gens: &[Isometry], all_pairs: bool) -> Result<(usize, usize), String> {
    let l = gens[0].lattice().clone();
    let v = vector(l.rank(), &[(0, 1)]);
    let q = l.quotient_lattice(&v).map_err(|e| e.to_string())?;
    let words = short_words(gens, 3);
    let mut phi: HashMap<Vec<(usize, i64)>, Vec<BigInt>> = HashMap::new();
    for (w, h) in &words {
        let oracle = phi_oracle(h, &v, q.lifts());
        let member = n0_membership(h, &q).map_err(|e| e.to_string())?;
        ensure(member == oracle.is_some(), || format!("N0 membership disagrees on {w:?}"))?;
        if let Some(p) = oracle {
            let lib = alpha_map(h, &q).map_err(|e| format!("{w:?}: {e}"))?;
            ensure(lib == p, || format!("phi disagrees on {w:?}"))?;
            ensure(!p.iter().all(Zero::is_zero) || h.matrix().is_identity(), || format!("phi not injective at {w:?}"))?;
            phi.insert(w.clone(), p);
        }
    }
    let mut checks = 0;
    for (w, p) in &phi {
        for cut in 1..w.len() {
            if let (Some(a), Some(b)) = (phi.get(&w[..cut]), phi.get(&w[cut..])) {
                ensure(&add(a, b) == p, || format!("phi not additive on {w:?} at {cut}"))?;
                checks += 1;
            }
        }
    }
    if all_pairs {
        let members: Vec<(&Isometry, &Vec<BigInt>)> =
            words.iter().filter_map(|(w, h)| phi.get(w).map(|p| (h, p))).collect();
        for (h1, p1) in &members {
            for (h2, p2) in &members {
                let prod = h1.compose(h2);
                let p = phi_oracle(&prod, &v, q.lifts()).ok_or("N0 not closed under products")?;
                ensure(p == add(p1, p2), || "phi(hh') != phi(h) + phi(h')".into())?;
                checks += 1;
            }
        }
    }
    Ok((phi.len(), checks))
}

fn c6_phi_homomorphism() -> Check {
    let (l, mut small) = catalog::transvection_family(&root(2, RootFamily::A)).unwrap();
    small.push(small[0].compose(&flip_m(&l)));
    let (n_small, c_small) = check_phi_words(&small, true)?;
    let (n_e8, c_e8) = check_phi_words(&catalog::e8_transvections().1, false)?;
    Ok(format!("{} N0 words, {} additivity checks", n_small + n_e8, c_small + c_e8))
}

fn c7_trace_identity() -> Check {
    let mut count = 0;
    for m in [root(2, RootFamily::A), root(4, RootFamily::D), root(8, RootFamily::E)] {
        let (l, gens) = catalog::transvection_family(&m).unwrap();
        let r = BigInt::from(l.rank());
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                for a in 0..=10 {
                    for b in 0..=10 {
                        let t = trace_power_product(gens[i].matrix(), gens[j].matrix(), a, b).map_err(|e| e.to_string())?;
                        ensure(t == r, || format!("tr(A^{a} B^{b}) = {t} on rank {r}"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} traces"))
}

fn conjugate(t: &IntMatrix, t_inv: &IntMatrix, g: &IntMatrix) -> IntMatrix {
    t_inv.mul(&g.mul(t))
}

fn c8_certificates() -> Check {
    let (l, swap) = catalog::u_swap();
    let s = GeneratorSet::from_isometries(l.clone(), vec![swap.clone()]).map_err(|e| e.to_string())?;
    match fixed_ray(&s).map_err(|e| e.to_string())? {
        FixedRay::PositiveVector { x, square } => {
            let xv = LatticeVector::new(x);
            ensure(square.is_positive() && l.square(&xv).unwrap() == square && swap.apply(&xv) == xv, || {
                "bad positive vector".into()
            })?;
        }
        other => return Err(format!("u-swap gave {other:?}")),
    }

    let (l, gens) = catalog::e8_transvections();
    let s = GeneratorSet::from_isometries(l.clone(), gens.clone()).map_err(|e| e.to_string())?;
    let v = match fixed_ray(&s).map_err(|e| e.to_string())? {
        FixedRay::Ray { v, radical_dim: 1, .. } => LatticeVector::new(v),
        other => return Err(format!("E8 family gave {other:?}")),
    };
    ensure(l.square(&v).unwrap().is_zero() && gens.iter().all(|g| g.apply(&v) == v), || "ray not fixed isotropic".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 0x8);
    let x0 = l.orientation().ok_or("no orientation")?.clone();
    for trial in 0..20 {
        let t = random_unimodular(&mut rng, l.rank(), 30);
        let t_inv = t.inverse().ok_or("T not invertible")?;
        let gram = t.transpose().mul(&l.gram().mul(&t));
        let x0t = LatticeVector::new(t_inv.mul_vec(&x0.coords));
        let lt = Arc::new(Lattice::with_orientation(gram, x0t).map_err(|e| e.to_string())?);
        let conj: Vec<IntMatrix> = gens.iter().map(|g| conjugate(&t, &t_inv, g.matrix())).collect();
        let st = GeneratorSet::new(lt, conj).map_err(|e| format!("trial {trial}: {e}"))?;
        match fixed_ray(&st).map_err(|e| e.to_string())? {
            FixedRay::Ray { v: vt, .. } => {
                ensure(t.mul_vec(&vt) == v.coords, || format!("trial {trial}: T v' != v"))?;
            }
            other => return Err(format!("trial {trial}: {other:?}")),
        }
    }
    Ok("positive vector, isotropic ray, 20 conjugations equivariant".into())
}

fn c9_invariants() -> Check {
    let mut suite: Vec<Isometry> = families().into_iter().flat_map(|(_, g)| g).collect();
    suite.push(catalog::u_swap().1);
    suite.extend(sample_words(20).into_iter().map(|(_, g)| g));
    let mut count = 0;
    for g in &suite {
        ensure(is_abs_one(&g.det()), || format!("det {} for {}", g.det(), g.matrix()))?;
        let ev = spectral_radius(g.matrix(), 1e-9).map_err(|e| e.to_string())?;
        let one = num_rational::BigRational::one();
        ensure(ev.delta_upper >= one, || format!("delta below 1 for {}", g.matrix()))?;
        let null = is_null_entropy(g.matrix());
        ensure(ev.is_exactly_zero == null, || format!("exact zero {} vs null {null}", ev.is_exactly_zero))?;
        ensure(null || ev.delta_lower > one, || format!("positive entropy without delta > 1 for {}", g.matrix()))?;
        count += 1;
    }
    Ok(format!("{count} isometries"))
}

fn c10_determinism() -> Check {
    let fixture: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", "e8_transvections_group.json"].iter().collect();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_isoray"))
            .args(["--format", "json", "analyze", "--group"])
            .arg(&fixture)
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.code() == Some(0), || format!("exit status {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    let report: AnalysisReport = ijson::parse(&String::from_utf8_lossy(&a.stdout)).map_err(|e| e.to_string())?;
    let gj: GroupJson = ijson::parse(&std::fs::read_to_string(&fixture).unwrap()).map_err(|e| e.to_string())?;
    let s = GeneratorSet::from_json(&gj).map_err(|e| e.to_string())?;
    let lib = analyze_group(&s, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
    ensure(report == lib, || "CLI report differs from library report".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("signatures of catalog lattices", 1, c1_signatures),
        ("unipotency exponent against totient oracle", 1, c2_unipotency_exponent),
        ("null-entropy test against numerical roots", 30, c3_random_words),
        ("Pell entropy", 1, c4_pell),
        ("E8 transvection group structure", 10, c5_e8_structure),
        ("phi is an injective homomorphism on N0", 30, c6_phi_homomorphism),
        ("trace identity for unipotent pairs", 5, c7_trace_identity),
        ("fixed-ray certificates and equivariance", 10, c8_certificates),
        ("determinant, spectral radius and exact-zero invariants", 5, c9_invariants),
        ("deterministic JSON output", 10, c10_determinism),
    ];
    println!("acceptance (seed {})", seed());
    let mut failures = 0;
    for (i, (title, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => Err(format!("{detail}; over {limit}s limit")),
            o => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!("criterion {:>2} [{status}] {title}: {detail} ({:.2}s)", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
