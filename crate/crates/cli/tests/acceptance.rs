//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
//! Tolerances are exact integer or rational equality throughout.

use std::process::Command;

use bnloci::bncalc::{
    asympt_neg, beta_classical, beta_universal, chi_tensor, leading_coeff_t4, line_bn_degree_bound,
    neg_slope_criterion, t4_beta_poly,
};
use bnloci::certkit::{
    certify, certify_phi, certify_psi, certify_t10, revalidate, Certificate, CurveClass, FactDb, Hyperelliptic,
    Query, Strength,
};
use bnloci::spanops::CoherentSystemType;
use bnloci::sweeps::{
    dmax_formula_bpn, dmax_search, dmin_formula, ex2_min_genus, ex40_d1_range, table1, table2, table2_beta,
    GenusBound,
};
use bnloci::{BigInt, BundleSpec, Genus, KernelFamily, LocusSpec, Rational, SlopeFactor};
use serde_json::Value;

type Verdict = Result<String, String>;

fn genus(g: i64) -> Genus {
    Genus::new(g).unwrap()
}

fn bundle(n: u64, d: i64) -> BundleSpec {
    BundleSpec::new(n, d).unwrap()
}

fn locus(n: u64, d: i64, k: u64) -> LocusSpec {
    LocusSpec::new(n, d, k).unwrap()
}

fn cs(n: u64, d: i64, v: u64) -> CoherentSystemType {
    CoherentSystemType::new(n, d, v).unwrap()
}

fn zero() -> BigInt {
    BigInt::from(0)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn bnloci(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bnloci"))
        .args(args)
        .env_remove("BNLOCI_FACTS")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn bnloci_json(args: &[&str]) -> Result<(i32, Value), String> {
    let (code, out) = bnloci(args);
    let json = serde_json::from_str(&out).map_err(|e| format!("bnloci {}: {e}", args.join(" ")))?;
    Ok((code, json))
}

fn table2_exact() -> Verdict {
    let want = [9, 7, 6, 7, 8, 9, 10, 11, 12];
    let got: Vec<Option<i64>> = table2(2..=10).map_err(|e| e.to_string())?.iter().map(|r| r.g_min).collect();
    ensure(got == want.map(Some), format!("library gave {got:?}"))?;
    let (code, csv) = bnloci(&["sweep", "table2"]);
    let cli: Vec<String> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap_or("").to_string()).collect();
    ensure(code == 0 && cli == want.map(|g| g.to_string()), format!("cli gave {cli:?}"))?;
    Ok("g_min = 9,7,6,7,8,9,10,11,12 for n2 = 2..10".into())
}

fn table1_formulas() -> Verdict {
    let g10 = genus(10);
    let l1 = locus(6, 22, 7);
    let closed: Vec<i64> = (2..=8).map(|n2| dmax_formula_bpn(n2).unwrap()).collect();
    ensure(closed == [10, 17, 24, 31, 37, 44, 50], format!("closed form {closed:?}"))?;
    for n2 in 2..=8u64 {
        let direct = dmax_search(g10, &l1, n2).map_err(|e| e.to_string())?.ok_or("no sign change")?;
        let gap = if n2 <= 3 { 1 } else { 0 };
        ensure(direct - dmax_formula_bpn(n2).unwrap() == gap, format!("n2={n2}: direct {direct}"))?;
    }
    ensure(dmin_formula(g10, 2).unwrap() == 9, "dmin(10,2) != 9")?;
    let rows = table1(g10, &l1, 2..=8).map_err(|e| e.to_string())?;
    ensure(rows.iter().take(2).all(|r| r.flags().iter().any(|f| f.contains("d_max"))), "n2 = 2,3 not flagged")?;
    ensure(rows.iter().skip(2).all(|r| !r.flags().iter().any(|f| f.contains("d_max"))), "spurious d_max flag")?;
    let (code, text) = bnloci(&["sweep", "table1", "--g", "10", "--locus1", "6,22,7", "--format", "text"]);
    ensure(code == 0 && text.contains("# n2=2:") && text.contains("# n2=3:"), "annotations missing from output")?;
    Ok("d_max closed form 10,17,24,31,37,44,50; direct search +1 at n2 = 2,3; dmin(10,2) = 9".into())
}

fn cert_k_beta(json: &Value) -> (Option<u64>, Option<i64>) {
    (json["conclusion"]["k"].as_u64(), json["beta"].as_i64())
}

fn worked_examples() -> Verdict {
    let facts = FactDb::builtin();
    let general = |g| CurveClass::general(g).unwrap();
    let mut seen = Vec::new();

    // rank 2 degree 10 with 5 sections against a rank 4 kernel on genus 6
    let c = certify_psi(&general(6), &facts, &locus(2, 10, 5), &cs(1, 10, 5), None, 0).map_err(|e| e.to_string())?;
    ensure(c.is_proved() && c.conclusion.k == 5 && c.beta == BigInt::from(-23), "psi (2,10,5)/(1,10,5)")?;
    ensure(beta_universal(genus(6), &bundle(2, 10), &bundle(4, -10), 5) == BigInt::from(-23), "direct beta")?;
    let (code, text) = bnloci(&["beta", "universal", "--g", "6", "--b1", "2,10", "--b2", "4,-10", "--k", "5"]);
    ensure(code == 0 && text.contains("beta: -23"), "cli beta universal")?;
    let (code, json) = bnloci_json(&[
        "certify", "psi", "--curve", "general:6", "--locus1", "2,10,5", "--cs", "1,10,5",
    ])?;
    ensure(code == 0 && cert_k_beta(&json) == (Some(5), Some(-23)), "cli psi")?;
    seen.push("k=5 beta=-23");

    // codimension-4 kernel on genus 6
    let c = certify_t10(&general(6), &facts, 2, 10, 5, 4, 26, 33).map_err(|e| e.to_string())?;
    ensure(c.is_proved() && c.conclusion.k == 33, "t10 k=33")?;
    ensure(chi_tensor(genus(6), &bundle(2, 10), &bundle(1, 26)) == BigInt::from(52), "chi_tensor != 52")?;
    let (code, json) = bnloci_json(&[
        "certify", "t10", "--curve", "general:6", "--n1", "2", "--d1", "10", "--k1", "5", "--c", "4", "--d", "26",
        "--k", "33",
    ])?;
    ensure(code == 0 && json["conclusion"]["k"] == 33, "cli t10")?;
    let bound = json["hypotheses"]
        .as_array()
        .and_then(|hs| hs.iter().find(|h| h["label"].as_str().is_some_and(|l| l.starts_with("k <= (d-g+1)"))))
        .ok_or("no section bound hypothesis")?;
    ensure(bound["lhs"] == bound["rhs"] && bound["holds"] == true, "section bound not tight")?;
    let (code, _) = bnloci(&[
        "certify", "t10", "--curve", "general:6", "--n1", "2", "--d1", "10", "--k1", "5", "--c", "4", "--d", "26",
        "--k", "34",
    ]);
    ensure(code == 4, "k=34 should not certify")?;
    seen.push("k=33 chi=52 tight");

    // dual span on genus 7
    let c = certify_phi(&general(7), &facts, &locus(5, 12, 6), &cs(2, 10, 4)).map_err(|e| e.to_string())?;
    ensure(c.is_proved() && c.conclusion.k == 24 && c.beta == BigInt::from(-64), "phi genus 7")?;
    ensure(beta_universal(genus(7), &bundle(5, 12), &bundle(2, 10), 24) == BigInt::from(-64), "direct beta")?;
    let (code, json) =
        bnloci_json(&["certify", "phi", "--curve", "general:7", "--locus1", "5,12,6", "--cs", "2,10,4"])?;
    ensure(code == 0 && cert_k_beta(&json) == (Some(24), Some(-64)), "cli phi genus 7")?;
    seen.push("k=24 beta=-64");

    // (3,12,4) against itself on genus 11
    let c = certify_phi(&general(11), &facts, &locus(3, 12, 4), &cs(1, 12, 4)).map_err(|e| e.to_string())?;
    ensure(c.is_proved() && c.conclusion.k == 16 && c.beta == BigInt::from(-362), "phi genus 11")?;
    ensure(beta_universal(genus(11), &bundle(3, 12), &bundle(3, 12), 16) == BigInt::from(-362), "direct beta")?;
    let range = ex40_d1_range(genus(11), 3).map_err(|e| e.to_string())?;
    ensure(range.iter() == (12..=15), format!("d1 range {:?}", range.iter()))?;
    let (code, json) =
        bnloci_json(&["certify", "phi", "--curve", "general:11", "--locus1", "3,12,4", "--cs", "1,12,4"])?;
    ensure(code == 0 && cert_k_beta(&json) == (Some(16), Some(-362)), "cli phi genus 11")?;
    seen.push("k=16 beta=-362 d1 in 12..15");

    // (2,6,3) with S(2,10,5) on genus 6
    let c = certify_phi(&general(6), &facts, &locus(2, 6, 3), &cs(2, 10, 5)).map_err(|e| e.to_string())?;
    ensure(c.is_proved() && c.conclusion.k == 15 && c.beta == BigInt::from(-38), "phi genus 6")?;
    ensure(beta_universal(genus(6), &bundle(2, 6), &bundle(3, 10), 15) == BigInt::from(-38), "direct beta")?;
    let (code, json) =
        bnloci_json(&["certify", "phi", "--curve", "general:6", "--locus1", "2,6,3", "--cs", "2,10,5"])?;
    ensure(code == 0 && cert_k_beta(&json) == (Some(15), Some(-38)), "cli phi genus 6")?;
    seen.push("k=15 beta=-38");

    Ok(seen.join("; "))
}

fn factor(n: u64, d: i64, k: u64) -> SlopeFactor {
    SlopeFactor::new(n, k, Rational::new(d, n).unwrap()).unwrap()
}

fn slope_criterion_grid() -> Verdict {
    let mut checked = 0u64;
    for g in 2..=6 {
        let gg = genus(g);
        for (n1, d1, k1) in triples(1..=4, -10..=10, 1..=5) {
            let f1 = factor(n1, d1, k1);
            for (n2, d2, k2) in triples(1..=4, -10..=10, 1..=5) {
                let beta = beta_universal(gg, &bundle(n1, d1), &bundle(n2, d2), k1 * k2);
                if neg_slope_criterion(gg, &f1, &factor(n2, d2, k2)) != (beta < zero()) {
                    return Err(format!("g={g} ({n1},{d1},{k1}) ({n2},{d2},{k2})"));
                }
                checked += 1;
            }
        }
    }
    ensure(checked == 882_000, format!("only {checked} cases"))?;
    Ok(format!("{checked} cases, 0 exceptions"))
}

fn triples(
    ns: std::ops::RangeInclusive<u64>,
    ds: std::ops::RangeInclusive<i64>,
    ks: std::ops::RangeInclusive<u64>,
) -> Vec<(u64, i64, u64)> {
    let mut out = Vec::new();
    for n in ns {
        for d in ds.clone() {
            for k in ks.clone() {
                out.push((n, d, k));
            }
        }
    }
    out
}

fn line_degree_bound_grid() -> Verdict {
    let mut checked = 0;
    for g in 2..=12 {
        for n1 in 1..=8u64 {
            let bound = line_bn_degree_bound(genus(g), n1);
            for d1 in 0..=40 {
                let beta = beta_classical(genus(g), &locus(1, d1, n1 + 1));
                ensure((Rational::from(d1) >= bound) == (beta >= zero()), format!("g={g} n1={n1} d1={d1}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases, 0 exceptions"))
}

fn kernel_family_grid() -> Verdict {
    let mut checked = 0;
    for g in 2..=8 {
        let gg = genus(g);
        for n1 in 2..=4u64 {
            for k1 in n1 + 1..=n1 + 4 {
                for d1 in 0..=30 {
                    let lead = leading_coeff_t4(gg, n1, d1, k1).map_err(|e| e.to_string())?;
                    let fam = KernelFamily::new(n1, d1, k1, 1, 0, 0).map_err(|e| e.to_string())?;
                    let poly = t4_beta_poly(gg, &fam).map_err(|e| e.to_string())?;
                    let at = |d: i64| poly.eval(&BigInt::from(d));
                    let second = at(2) - at(1) * 2 + at(0);
                    let case = format!("g={g} n1={n1} k1={k1} d1={d1}");
                    ensure(poly.a2 == lead, format!("{case}: coefficient"))?;
                    ensure(second == &lead * 2, format!("{case}: second difference"))?;
                    // the polynomial is β itself wherever the kernel has positive rank
                    let d = g + 40;
                    let k: u64 = fam.sections_at(d).try_into().map_err(|_| case.clone())?;
                    let direct = beta_universal(gg, &bundle(n1, d1), &bundle((d - g) as u64, -d), k);
                    ensure(at(d) == direct, format!("{case}: evaluation"))?;
                    ensure(asympt_neg(gg, n1, d1, k1).unwrap() == (lead < zero()), format!("{case}: sign"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} cases, 0 exceptions"))
}

fn genus_threshold() -> Verdict {
    match ex2_min_genus(2, 2, 5).map_err(|e| e.to_string())? {
        GenusBound::From(17) => Ok("negative from g = 17".into()),
        other => Err(format!("got {other:?}")),
    }
}

fn small_genus() -> Verdict {
    for g in 2..=4 {
        for n2 in 2..=10 {
            let beta = table2_beta(genus(g), n2).map_err(|e| e.to_string())?;
            ensure(beta >= zero(), format!("g={g} n2={n2}: beta {beta}"))?;
        }
    }
    Ok("27 cases, none negative".into())
}

fn walk(cert: &Certificate, f: &mut impl FnMut(&Certificate)) {
    f(cert);
    for sub in &cert.subcertificates {
        walk(sub, f);
    }
}

fn property_suites() -> Verdict {
    // swap and twist
    let mut checked = 0;
    for g in 2..=5 {
        let gg = genus(g);
        for (n1, d1, _) in triples(1..=3, -6..=6, 1..=1) {
            for (n2, d2, k) in triples(1..=3, -6..=6, 1..=4) {
                let beta = beta_universal(gg, &bundle(n1, d1), &bundle(n2, d2), k);
                ensure(beta == beta_universal(gg, &bundle(n2, d2), &bundle(n1, d1), k), "swap")?;
                for t in -2..=2 {
                    let twisted =
                        beta_universal(gg, &bundle(n1, d1 + n1 as i64 * t), &bundle(n2, d2 - n2 as i64 * t), k);
                    ensure(beta == twisted, format!("twist g={g} ({n1},{d1}) ({n2},{d2}) t={t}"))?;
                }
                checked += 1;
            }
        }
    }

    // every certificate from a deterministic query grid revalidates and
    // never reports more strength than its inputs
    let facts = FactDb::builtin();
    let mut certs = 0;
    for g in 2..=8 {
        let mut curves = vec![CurveClass::general(g).unwrap(), CurveClass::petri(g).unwrap()];
        if g > 2 {
            curves.push(CurveClass::smooth(g, Hyperelliptic::No).unwrap());
        }
        for curve in &curves {
            let mut queries = Vec::new();
            for (n, d, k) in triples(1..=3, 0..=16, 1..=4) {
                let l1 = locus(n, d, k);
                queries.push(Query::B { locus: l1.clone() });
                for v in 2..=5 {
                    queries.push(Query::Phi { locus1: l1.clone(), cs: cs(1, 2 * g + 2, v) });
                }
            }
            for (n1, d1) in (2..=4).flat_map(|n| (0..=20).map(move |d| (n, d))) {
                queries.push(Query::Np1 { n1, d1 });
            }
            for query in queries {
                let Ok(cert) = certify(curve, &query, &facts) else { continue };
                revalidate(&cert, &facts).map_err(|e| format!("{query:?} on {curve}: {e}"))?;
                let mut upgraded = false;
                walk(&cert, &mut |c| {
                    upgraded |= c.subcertificates.iter().any(|s| s.strength() < c.strength());
                });
                ensure(!upgraded, format!("{query:?} on {curve}: strength upgraded"))?;
                certs += 1;
            }
        }
    }

    // semistable inputs stay semistable
    let g2 = CurveClass::general(2).unwrap();
    for (l1, system) in [(locus(2, 4, 3), cs(1, 5, 3)), (locus(1, 3, 2), cs(1, 4, 3))] {
        let cert = certify_phi(&g2, &facts, &l1, &system).map_err(|e| e.to_string())?;
        ensure(cert.strength() == Strength::Semistable, format!("{l1} on genus 2 should be semistable"))?;
    }

    // dmin is the exact argmin of a non-negative Brill-Noether number
    for g in 2..=30 {
        for n2 in 1..=12u64 {
            let d = dmin_formula(genus(g), n2).map_err(|e| e.to_string())?;
            let beta = |d| beta_classical(genus(g), &locus(1, d, n2 + 1));
            ensure(beta(d) >= zero() && beta(d - 1) < zero(), format!("dmin g={g} n2={n2}"))?;
        }
    }

    Ok(format!("{checked} swap/twist cases, {certs} certificates revalidated, 2 semistable chains, 348 dmin cases"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("table 2 minimal genera", table2_exact),
        ("table 1 degree bounds", table1_formulas),
        ("worked examples", worked_examples),
        ("slope criterion equals sign of beta", slope_criterion_grid),
        ("line bundle degree bound equals beta >= 0", line_degree_bound_grid),
        ("kernel family quadratic", kernel_family_grid),
        ("genus threshold for (2,2,5)", genus_threshold),
        ("no negative beta for g <= 4", small_genus),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
