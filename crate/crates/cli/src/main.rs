//! `bnloci`: Brill-Noether numbers, non-emptiness certificates and sweeps.
//!
//! Exit status: 0 proved, 3 conditional or semistable only, 4 no
//! certificate, 2 usage error, 1 anything else.

mod parse;

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use bnloci::bncalc::{
    asympt_neg, beta_classical, beta_twisted, beta_universal, chi_tensor, neg_slope_criterion,
    t4_beta_poly,
};
use bnloci::certkit::{
    append_fact_file, certify, cor_t3_d1_range, petri_dls_cases, C8Branch, CurveClass, Fact,
    FactDb, Outcome, Query, RefusalKind, Status, Strength,
};
use bnloci::spanops::CoherentSystemType;
use bnloci::sweeps::{self, RegionBoundary};
use bnloci::{BundleSpec, Genus, KernelFamily, LocusSpec, SlopeFactor};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bnloci", version, about = "Exact Brill-Noether numbers and non-emptiness certificates")]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON array of extra facts.
    #[arg(long, global = true, env = "BNLOCI_FACTS")]
    facts: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Expected dimensions of Brill-Noether loci.
    #[command(subcommand)]
    Beta(BetaCmd),
    /// Derive a non-emptiness certificate.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Tables and parameter ranges.
    #[command(subcommand)]
    Sweep(SweepCmd),
    /// Built-in and user-supplied facts.
    #[command(subcommand)]
    Facts(FactsCmd),
}

#[derive(Subcommand)]
#[command(allow_negative_numbers = true)]
enum BetaCmd {
    /// β(n,d,k) for B(n,d,k).
    Classical {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: u64,
    },
    /// β for B(n1,d1,k)(E2) with E2 of type b2.
    Twisted {
        #[arg(long)]
        g: i64,
        #[arg(long, value_parser = parse::bundle)]
        b1: BundleSpec,
        #[arg(long, value_parser = parse::bundle)]
        b2: BundleSpec,
        #[arg(long)]
        k: u64,
    },
    /// β for B^k(U1,U2), with the slope criterion verdict.
    Universal {
        #[arg(long)]
        g: i64,
        #[arg(long, value_parser = parse::bundle)]
        b1: BundleSpec,
        #[arg(long, value_parser = parse::bundle)]
        b2: BundleSpec,
        #[arg(long)]
        k: u64,
    },
    /// h0(E1 ⊗ E2) by Riemann-Roch, assuming h1 vanishes.
    Chi {
        #[arg(long)]
        g: i64,
        #[arg(long, value_parser = parse::bundle)]
        b1: BundleSpec,
        #[arg(long, value_parser = parse::bundle)]
        b2: BundleSpec,
    },
    /// β along the kernel family k = d(k1-n1)-e, v = d-n(g-1)-f, as a
    /// quadratic in d.
    Family {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        k1: u64,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long)]
        e: i64,
        #[arg(long, default_value_t = 0)]
        f: i64,
    },
}

#[derive(Args)]
struct On {
    /// Curve, e.g. general:7, petri:9, smooth:6,nonhyp.
    #[arg(long)]
    curve: CurveClass,
}

#[derive(Subcommand)]
#[command(allow_negative_numbers = true)]
enum CertifyCmd {
    /// Line bundle of degree d with v sections.
    Line {
        #[command(flatten)]
        on: On,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        v: u64,
    },
    /// B(n1,d1,n1+1).
    Np1 {
        #[command(flatten)]
        on: On,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        d1: i64,
    },
    /// B(n,d,k) by any route.
    B {
        #[command(flatten)]
        on: On,
        #[arg(long, value_parser = parse::locus)]
        locus: LocusSpec,
    },
    /// S(n,d,v) by any route.
    S {
        #[command(flatten)]
        on: On,
        #[arg(long, value_parser = parse::coherent)]
        cs: CoherentSystemType,
    },
    /// Dual span construction.
    Phi {
        #[command(flatten)]
        on: On,
        #[arg(long, value_parser = parse::locus)]
        locus1: LocusSpec,
        #[arg(long, value_parser = parse::coherent)]
        cs: CoherentSystemType,
    },
    /// Direct sum of r copies of a dual span.
    Rfold {
        #[command(flatten)]
        on: On,
        #[arg(long, value_parser = parse::locus)]
        locus1: LocusSpec,
        #[arg(long, value_parser = parse::coherent)]
        cs: CoherentSystemType,
        #[arg(long)]
        r: u64,
    },
    /// Elementary transformation of r dual spans.
    Elem {
        #[command(flatten)]
        on: On,
        #[arg(long, value_parser = parse::locus)]
        locus1: LocusSpec,
        #[arg(long, value_parser = parse::coherent)]
        cs: CoherentSystemType,
        #[arg(long)]
        r: u64,
    },
    /// Twisted locus from generated bundles of large degree.
    T9 {
        #[command(flatten)]
        on: On,
        #[arg(long, value_parser = parse::locus)]
        locus1: LocusSpec,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        v: u64,
    },
    /// Kernel construction with explicit k (default: the largest) and h1 defect m.
    Psi {
        #[command(flatten)]
        on: On,
        #[arg(long, value_parser = parse::locus)]
        locus1: LocusSpec,
        #[arg(long, value_parser = parse::coherent)]
        cs: CoherentSystemType,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 0)]
        m: u64,
    },
    /// Kernel construction along the family k = d(k1-n1)-e.
    T4 {
        #[command(flatten)]
        on: On,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        k1: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        e: i64,
        #[arg(long)]
        f: i64,
        #[arg(long)]
        d: i64,
    },
    /// Kernel construction with a codimension-c linear system.
    T10 {
        #[command(flatten)]
        on: On,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        k1: u64,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: u64,
    },
    /// Codimension-c construction, coprime or Petri branch.
    C8 {
        #[command(flatten)]
        on: On,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        k1: Option<u64>,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        e: i64,
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Coprime,
    Petri,
}

#[derive(Subcommand)]
enum SweepCmd {
    /// Degree bounds for pairing `locus1` with (n2, d2, n2+1).
    Table1 {
        #[arg(long, default_value_t = 10)]
        g: i64,
        #[arg(long, value_parser = parse::locus, default_value = "6,22,7")]
        locus1: LocusSpec,
        #[arg(long, value_parser = parse::range, default_value = "2..8")]
        n2: RangeInclusive<u64>,
    },
    /// Minimal genus for the (2,5,2) family.
    Table2 {
        #[arg(long, value_parser = parse::range, default_value = "2..10")]
        n2: RangeInclusive<u64>,
    },
    /// Degrees d1 with B(n1,d1,n1+1) non-empty and the self pairing negative.
    Ex40 {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        n1: u64,
    },
    /// Minimal genus for the dual-span pairing criterion at slope d2/n2.
    Ex2 {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        #[arg(long)]
        d2: i64,
    },
    /// Range of d1 available to the k1 = n1+1 kernel construction.
    D1Range {
        #[command(flatten)]
        on: On,
        #[arg(long)]
        n1: u64,
    },
    /// Known Petri stability cases for (n1, d1).
    PetriCases {
        #[command(flatten)]
        on: On,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        d1: i64,
    },
    /// BN-map points of a family, classified against a sampled boundary.
    Bnmap {
        #[arg(long)]
        g: i64,
        #[arg(long, value_parser = parse::locus)]
        locus1: LocusSpec,
        #[arg(long, value_enum, default_value_t = Family::Dmin)]
        family: Family,
        #[arg(long, value_parser = parse::range)]
        n2: RangeInclusive<u64>,
        /// CSV of `mu,lambda` samples.
        #[arg(long)]
        boundary: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// U2 = (n2, dmin(g,n2), n2+1).
    Dmin,
}

#[derive(Subcommand)]
enum FactsCmd {
    /// Every fact in force, built-ins first.
    List,
    /// Append a fact record (JSON) to the facts file.
    Add {
        /// The record; read from --file if omitted.
        json: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

/// Errors with their exit status.
enum Failure {
    Usage(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<bnloci::Error> for Failure {
    fn from(e: bnloci::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Beta(cmd) => beta(cmd, cli.format.unwrap_or(Format::Text)),
        Command::Certify(cmd) => {
            let facts = load_facts(cli.facts.as_deref())?;
            certify_cmd(cmd, &facts, cli.format.unwrap_or(Format::Json))
        }
        Command::Sweep(cmd) => {
            let facts = load_facts(cli.facts.as_deref())?;
            sweep(cmd, &facts, cli.format.unwrap_or(Format::Csv))
        }
        Command::Facts(cmd) => facts_cmd(cmd, cli.facts.as_deref(), cli.format.unwrap_or(Format::Text)),
    }
}

fn load_facts(path: Option<&Path>) -> Result<FactDb, Failure> {
    match path {
        Some(p) => FactDb::load(p).with_context(|| format!("reading facts from {}", p.display())).map_err(Failure::Other),
        None => Ok(FactDb::builtin()),
    }
}

fn no_csv(what: &str) -> Failure {
    Failure::Usage(format!("csv output is not available for {what}"))
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn genus(g: i64) -> Result<Genus, Failure> {
    Ok(Genus::new(g)?)
}

fn beta(cmd: &BetaCmd, format: Format) -> Run {
    let mut fields: Vec<(&str, serde_json::Value)> = Vec::new();
    match *cmd {
        BetaCmd::Classical { g, n, d, k } => {
            let locus = LocusSpec::new(n, d, k)?;
            fields.push(("beta", json!(beta_classical(genus(g)?, &locus).to_string())));
        }
        BetaCmd::Twisted { g, b1, b2, k } => {
            fields.push(("beta", json!(beta_twisted(genus(g)?, &b1, &b2, k).to_string())));
        }
        BetaCmd::Universal { g, b1, b2, k } => {
            let g = genus(g)?;
            let value = beta_universal(g, &b1, &b2, k);
            fields.push(("beta", json!(value.to_string())));
            // the criterion depends on k only through k = k1·k2, so split it as (k, 1)
            if k >= 1 {
                let first = SlopeFactor::new(b1.rank(), k, b1.slope())?;
                let second = SlopeFactor::new(b2.rank(), 1, b2.slope())?;
                fields.push(("criterion_negative", json!(neg_slope_criterion(g, &first, &second))));
            }
        }
        BetaCmd::Chi { g, b1, b2 } => {
            fields.push(("chi", json!(chi_tensor(genus(g)?, &b1, &b2).to_string())));
        }
        BetaCmd::Family { g, n1, d1, k1, n, e, f } => {
            let g = genus(g)?;
            let fam = KernelFamily::new(n1, d1, k1, n, e, f)?;
            let poly = t4_beta_poly(g, &fam)?;
            let threshold = poly.neg_threshold().map(|t| t.to_string()).unwrap_or_else(|| "never".into());
            fields.push(("a2", json!(poly.a2.to_string())));
            fields.push(("a1", json!(poly.a1.to_string())));
            fields.push(("a0", json!(poly.a0.to_string())));
            fields.push(("negative_for_large_d", json!(asympt_neg(g, n1, d1, k1)?)));
            fields.push(("negative_from_d", json!(threshold)));
        }
    }
    let out = match format {
        Format::Text => {
            let mut s = String::new();
            for (name, value) in &fields {
                let shown = value.as_str().map(str::to_string).unwrap_or_else(|| value.to_string());
                let _ = writeln!(s, "{name}: {shown}");
            }
            s
        }
        Format::Json => {
            // integers go out as JSON numbers when they fit
            let map: serde_json::Map<String, serde_json::Value> = fields
                .into_iter()
                .map(|(k, v)| {
                    let v = match v.as_str().and_then(|s| s.parse::<i64>().ok()) {
                        Some(i) => json!(i),
                        None => v,
                    };
                    (k.to_string(), v)
                })
                .collect();
            pretty(&serde_json::Value::Object(map))
        }
        Format::Csv => {
            let names: Vec<&str> = fields.iter().map(|(n, _)| *n).collect();
            let values: Vec<String> = fields
                .iter()
                .map(|(_, v)| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))
                .collect();
            format!("{}\n{}\n", names.join(","), values.join(","))
        }
    };
    Ok((out, 0))
}

fn certify_cmd(cmd: &CertifyCmd, facts: &FactDb, format: Format) -> Run {
    let (curve, query) = match *cmd {
        CertifyCmd::Line { ref on, d, v } => (on.curve, Query::Line { d, v }),
        CertifyCmd::Np1 { ref on, n1, d1 } => (on.curve, Query::Np1 { n1, d1 }),
        CertifyCmd::B { ref on, locus } => (on.curve, Query::B { locus }),
        CertifyCmd::S { ref on, cs } => (on.curve, Query::S { cs }),
        CertifyCmd::Phi { ref on, locus1, cs } => (on.curve, Query::Phi { locus1, cs }),
        CertifyCmd::Rfold { ref on, locus1, cs, r } => (on.curve, Query::Rfold { locus1, cs, r }),
        CertifyCmd::Elem { ref on, locus1, cs, r } => (on.curve, Query::Elem { locus1, cs, r }),
        CertifyCmd::T9 { ref on, locus1, n, d, v } => (on.curve, Query::T9 { locus1, n, d, v }),
        CertifyCmd::Psi { ref on, locus1, cs, k, m } => (on.curve, Query::Psi { locus1, cs, k, m }),
        CertifyCmd::T4 { ref on, n1, d1, k1, n, e, f, d } => {
            (on.curve, Query::T4 { n1, d1, k1, n, e, f, d })
        }
        CertifyCmd::T10 { ref on, n1, d1, k1, c, d, k } => {
            (on.curve, Query::T10 { n1, d1, k1, c, d, k })
        }
        CertifyCmd::C8 { ref on, n1, d1, k1, c, d, e, branch } => {
            let branch = branch.map(|b| match b {
                BranchArg::Coprime => C8Branch::Coprime,
                BranchArg::Petri => C8Branch::Petri,
            });
            (on.curve, Query::C8 { n1, d1, k1, c, d, e, branch })
        }
    };
    if format == Format::Csv {
        return Err(no_csv("certificates"));
    }
    let outcome = certify(&curve, &query, facts);
    let code = exit_code(&query, &outcome);
    let out = match (&outcome, format) {
        (Ok(cert), Format::Json) => format!("{}\n", cert.to_json()),
        (Ok(cert), _) => cert.render_text(),
        (Err(refusal), Format::Json) => pretty(&json!({ "refusal": refusal })),
        (Err(refusal), _) => format!("{refusal}\n"),
    };
    Ok((out, code))
}

fn exit_code(query: &Query, outcome: &Outcome) -> u8 {
    match outcome {
        Ok(cert) => {
            let full = if matches!(query, Query::Rfold { .. }) { Strength::Semistable } else { Strength::Stable };
            if cert.status == Status::Proved && cert.strength() >= full {
                0
            } else {
                3
            }
        }
        Err(r) if r.kind == RefusalKind::InvalidInput => 2,
        Err(_) => 4,
    }
}

fn sweep(cmd: &SweepCmd, facts: &FactDb, format: Format) -> Run {
    let out = match cmd {
        SweepCmd::Table1 { g, locus1, n2 } => {
            let rows = sweeps::table1(genus(*g)?, locus1, n2.clone())?;
            match format {
                Format::Csv => sweeps::table1_csv(&rows),
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            let mut v = serde_json::to_value(r).expect("rows serialize");
                            v["flags"] = json!(r.flags());
                            v
                        })
                        .collect();
                    pretty(&json!({ "g": g, "locus1": locus1, "rows": rows }))
                }
                Format::Text => {
                    let mut s = sweeps::table1_csv(&rows);
                    for r in &rows {
                        for flag in r.flags() {
                            let _ = writeln!(s, "# n2={}: {flag}", r.n2);
                        }
                    }
                    s
                }
            }
        }
        SweepCmd::Table2 { n2 } => {
            if *n2.start() < 2 {
                return Err(Failure::Usage("n2 must be at least 2".into()));
            }
            let rows = sweeps::table2(n2.clone())?;
            match format {
                Format::Csv => sweeps::table2_csv(&rows),
                Format::Json => pretty(&json!({
                    "genus_scan_ceiling": format!(
                        "{}*n2+{}",
                        sweeps::GENUS_CEILING_PER_RANK,
                        sweeps::GENUS_CEILING_BASE
                    ),
                    "rows": rows,
                })),
                Format::Text => {
                    let mut s = sweeps::table2_csv(&rows);
                    let _ = writeln!(
                        s,
                        "# genus scan ceiling {}*n2+{}",
                        sweeps::GENUS_CEILING_PER_RANK,
                        sweeps::GENUS_CEILING_BASE
                    );
                    s
                }
            }
        }
        SweepCmd::Ex40 { g, n1 } => {
            let g = genus(*g)?;
            let range = sweeps::ex40_d1_range(g, *n1)?;
            let rows = sweeps::ex40_rows(g, *n1)?;
            match format {
                Format::Csv => sweeps::ex40_csv(&rows),
                Format::Json => pretty(&json!({
                    "d1_range": range,
                    "upper_bound": sweeps::self_pair_degree_bound(g, *n1),
                    "rows": rows,
                })),
                Format::Text => format!(
                    "d1 range: {range} (d1 < {})\n{}",
                    sweeps::self_pair_degree_bound(g, *n1),
                    sweeps::ex40_csv(&rows)
                ),
            }
        }
        SweepCmd::Ex2 { n1, n2, d2 } => {
            let bound = sweeps::ex2_min_genus(*n1, *n2, *d2)?;
            let (coeff, offset) = sweeps::ex2_coefficients(*n1, *n2)?;
            match format {
                Format::Csv => format!("n1,n2,d2,g_min\n{n1},{n2},{d2},{bound}\n"),
                Format::Json => pretty(&json!({
                    "coefficient": coeff,
                    "offset": offset,
                    "g_min": bound.to_string(),
                })),
                Format::Text => format!(
                    "mu2 < {coeff}(g-1) - {offset}\ng_min: {bound}\n"
                ),
            }
        }
        SweepCmd::D1Range { on, n1 } => {
            let range = cor_t3_d1_range(&on.curve, *n1).ok_or_else(|| {
                Failure::Usage(format!("needs a petri or general curve and n1 >= 2, got {} and {n1}", on.curve))
            })?;
            match format {
                Format::Csv => format!("lo,hi\n{},{}\n", range.lo, range.hi),
                Format::Json => pretty(&json!({ "curve": on.curve, "n1": n1, "d1_range": range })),
                Format::Text => format!("{range}\n"),
            }
        }
        SweepCmd::PetriCases { on, n1, d1 } => {
            let cases = petri_dls_cases(&on.curve, *n1, *d1, Some(facts));
            let labels: Vec<String> = cases.iter().map(|c| c.letter().to_string()).collect();
            match format {
                Format::Csv => format!("cases\n{}\n", labels.join(" ")),
                Format::Json => pretty(&json!({ "curve": on.curve, "n1": n1, "d1": d1, "cases": labels })),
                Format::Text => {
                    if labels.is_empty() {
                        "none\n".to_string()
                    } else {
                        let shown: Vec<String> = cases.iter().map(|c| c.to_string()).collect();
                        format!("{}\n", shown.join(" "))
                    }
                }
            }
        }
        SweepCmd::Bnmap { g, locus1, family: Family::Dmin, n2, boundary } => {
            let boundary = match boundary {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading boundary from {}", path.display()))?;
                    RegionBoundary::parse_csv(&text)?
                }
                None => RegionBoundary::default(),
            };
            let rows = sweeps::bnmap_dmin_family(genus(*g)?, locus1, n2.clone(), &boundary)?;
            match format {
                Format::Csv => sweeps::bnmap_csv(&rows),
                Format::Json => pretty(&json!({ "g": g, "locus1": locus1, "rows": rows })),
                Format::Text => {
                    let mut s = String::new();
                    for r in &rows {
                        let _ = writeln!(
                            s,
                            "n2={} d2={} mu0={} lambda0={} {}",
                            r.n2, r.d2, r.point.mu, r.point.lambda, r.classification
                        );
                    }
                    s
                }
            }
        }
    };
    Ok((out, 0))
}

fn facts_cmd(cmd: &FactsCmd, path: Option<&Path>, format: Format) -> Run {
    match cmd {
        FactsCmd::List => {
            let db = load_facts(path)?;
            let out = match format {
                Format::Csv => return Err(no_csv("facts")),
                Format::Json => {
                    let items: Vec<_> = db
                        .iter()
                        .map(|(f, builtin)| json!({ "source": if builtin { "builtin" } else { "user" }, "fact": f }))
                        .collect();
                    pretty(&json!(items))
                }
                Format::Text => {
                    let mut s = String::new();
                    for (f, builtin) in db.iter() {
                        let _ = writeln!(s, "{} {f}", if builtin { "builtin" } else { "user   " });
                    }
                    for f in db.shadowed() {
                        let _ = writeln!(s, "shadowed {f}");
                    }
                    s
                }
            };
            Ok((out, 0))
        }
        FactsCmd::Add { json, file } => {
            let path = path.ok_or_else(|| Failure::Usage("facts add needs --facts or BNLOCI_FACTS".into()))?;
            let text = match (json, file) {
                (Some(text), None) => text.clone(),
                (None, Some(f)) => std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?,
                _ => return Err(Failure::Usage("give the fact either inline or with --file".into())),
            };
            let fact = Fact::parse_json(&text).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut db = load_facts(Some(path))?;
            if !db.add(fact.clone()) {
                return Ok((format!("not added: {} is already a built-in fact\n", fact.label()), 0));
            }
            append_fact_file(path, &fact).with_context(|| format!("writing {}", path.display()))?;
            Ok((format!("added {fact}\n"), 0))
        }
    }
}
