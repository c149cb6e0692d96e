//! Value parsers for the comma-separated triples and ranges on the command line.

use std::ops::RangeInclusive;

use bnloci::spanops::CoherentSystemType;
use bnloci::{BundleSpec, LocusSpec};

fn ints<const N: usize>(s: &str, shape: &str) -> Result<[i64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {shape}, got '{s}'"));
    }
    let mut out = [0i64; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| format!("'{p}' is not an integer"))?;
    }
    Ok(out)
}

fn rank(x: i64, what: &str) -> Result<u64, String> {
    u64::try_from(x).map_err(|_| format!("{what} must be non-negative, got {x}"))
}

pub fn bundle(s: &str) -> Result<BundleSpec, String> {
    let [n, d] = ints::<2>(s, "n,d")?;
    BundleSpec::new(rank(n, "rank")?, d).map_err(|e| e.to_string())
}

pub fn locus(s: &str) -> Result<LocusSpec, String> {
    let [n, d, k] = ints::<3>(s, "n,d,k")?;
    LocusSpec::new(rank(n, "rank")?, d, rank(k, "k")?).map_err(|e| e.to_string())
}

pub fn coherent(s: &str) -> Result<CoherentSystemType, String> {
    let [n, d, v] = ints::<3>(s, "n,d,v")?;
    CoherentSystemType::new(rank(n, "rank")?, d, rank(v, "v")?).map_err(|e| e.to_string())
}

/// `5`, `2..8` or `2..=8`, all inclusive.
pub fn range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |p: &str| p.trim().parse::<u64>().map_err(|_| format!("bad range '{s}'"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => {
            let x = num(s)?;
            (x, x)
        }
    };
    if lo > hi {
        return Err(format!("empty range '{s}'"));
    }
    Ok(lo..=hi)
}
