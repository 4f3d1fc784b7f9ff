use std::fmt::Write;

use num_bigint::BigInt;

use isoray::group::{AnalysisReport, NullEntropyStructure, Verdict};

fn vec_text(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn structure_text(out: &mut String, s: &NullEntropyStructure) {
    let _ = writeln!(out, "fixed_ray: {}", vec_text(&s.fixed_ray));
    let _ = writeln!(out, "fixed_space_dim: {}  radical_dim: {}", s.fixed_space_dim, s.radical_dim);
    let _ = writeln!(out, "quotient: rank {} {}", s.quotient_gram.rows(), s.quotient_name.as_deref().unwrap_or("(unnamed)"));
    for row in s.quotient_gram.to_rows() {
        let _ = writeln!(out, "  {}", vec_text(&row));
    }
    for (i, d) in s.descended_generators.iter().enumerate() {
        let label = if d.matrix.is_identity() { "identity".to_string() } else { format!("{:?}", d.matrix) };
        let _ = writeln!(out, "g{} descends to {label}, det {}", i + 1, d.det);
    }
    let _ = writeln!(out, "image_group_order: {}", s.image_group_order);
    let _ = writeln!(out, "n0_elements: {}", s.n0_elements);
    let _ = writeln!(out, "phi_rank: {} (bound r-2 = {})", s.phi_rank, s.rank_bound);
}

pub fn report_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", r.verdict.name());
    let _ = writeln!(
        out,
        "rank: {}  generators: {}  elements examined: {} (words of length <= {})",
        r.rank, r.generator_count, r.elements_examined, r.word_depth
    );
    match &r.verdict {
        Verdict::PositiveEntropyWitness(w) => {
            let _ = writeln!(out, "witness: {}", w.word_text);
            let _ = writeln!(out, "char_poly: {}", w.char_poly);
            let _ = writeln!(out, "delta={}, entropy={}, tol={}", w.delta, w.entropy, w.tol);
        }
        Verdict::FixedPositiveVectorCertificate { x, square } => {
            let _ = writeln!(out, "fixed vector x = {}, (x, x) = {square}", vec_text(x));
        }
        Verdict::FiniteExponentCertificate { exponent, depth } => {
            let _ = writeln!(out, "w^{exponent} = 1 for every word of length <= {depth}");
        }
        Verdict::NullEntropyStructure(s) => structure_text(&mut out, s),
        Verdict::Inconclusive { reason, partial } => {
            let _ = writeln!(out, "reason: {reason}");
            if let Some(s) = partial {
                structure_text(&mut out, s);
            }
        }
    }
    out
}
