//! Certificates for non-emptiness of Brill-Noether loci.
//!
//! A query names a construction and its parameters; [`certify`] either
//! returns a [`Certificate`] tree whose every step can be re-checked, or a
//! [`Refusal`] listing the hypotheses that failed.

mod certificate;
mod curve;
mod facts;
mod query;
mod rules;

pub use certificate::{
    Certificate, Check, Conclusion, Hypothesis, LocusKind, Outcome, Refusal, RefusalKind, Relation,
    Status, Strength, Witness, WitnessValue,
};
pub use curve::{CurveClass, Hyperelliptic, Level};
pub use facts::{
    append_fact_file, read_fact_file, Fact, FactDb, FactInstance, FactKind, GenusAffine,
    GenusPredicate, Parity,
};
pub use query::{C8Branch, Query};
pub use rules::{
    b_nonempty, bn_line_nonempty, bn_np1_nonempty, certify_c8, certify_elem, certify_phi,
    certify_psi, certify_rfold, certify_t10, certify_t4, certify_t9, cor_t3_d1_range, max_k_psi,
    petri_degree_bound, petri_dls_cases, s_nonempty, PetriCase,
};

/// Runs the rule named by `query`.
pub fn certify(curve: &CurveClass, query: &Query, facts: &FactDb) -> Outcome {
    match *query {
        Query::Line { d, v } => bn_line_nonempty(curve, d, v),
        Query::Np1 { n1, d1 } => bn_np1_nonempty(curve, facts, n1, d1),
        Query::B { locus } => b_nonempty(curve, facts, &locus),
        Query::S { cs } => s_nonempty(curve, facts, &cs),
        Query::Phi { locus1, cs } => certify_phi(curve, facts, &locus1, &cs),
        Query::Rfold { locus1, cs, r } => certify_rfold(curve, facts, &locus1, &cs, r),
        Query::Elem { locus1, cs, r } => certify_elem(curve, facts, &locus1, &cs, r),
        Query::T9 { locus1, n, d, v } => certify_t9(curve, facts, &locus1, n, d, v),
        Query::Psi { locus1, cs, k, m } => certify_psi(curve, facts, &locus1, &cs, k, m),
        Query::T4 { n1, d1, k1, n, e, f, d } => certify_t4(curve, facts, n1, d1, k1, n, e, f, d),
        Query::T10 { n1, d1, k1, c, d, k } => certify_t10(curve, facts, n1, d1, k1, c, d, k),
        Query::C8 { n1, d1, k1, c, d, e, branch } => {
            certify_c8(curve, facts, n1, d1, k1, c, d, e, branch)
        }
    }
}

/// Checks a certificate's internal consistency and that deriving its query
/// again from `facts` reproduces it exactly.
pub fn revalidate(cert: &Certificate, facts: &FactDb) -> Result<(), String> {
    cert.check_consistency()?;
    let again = certify(&cert.curve, &cert.query, facts)
        .map_err(|r| format!("re-derivation refused: {r}"))?;
    if &again != cert {
        return Err(format!("re-derivation of {} differs from the stored certificate", cert.rule));
    }
    for sub in &cert.subcertificates {
        revalidate(sub, facts)?;
    }
    Ok(())
}
