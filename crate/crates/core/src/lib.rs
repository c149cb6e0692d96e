//! Exact arithmetic for Brill-Noether loci of vector bundles on curves:
//! expected dimensions, slope criteria for emptiness, certified
//! non-emptiness via span and tensor constructions, and reproducible sweeps.

pub mod bncalc;
pub mod certkit;
pub mod error;
pub mod exactnum;
pub mod spanops;
pub mod sweeps;

pub use bncalc::{BundleSpec, Genus, KernelFamily, LocusSpec, QuadPoly, SlopeFactor, SlopePoint};
pub use error::{Error, Result};
pub use exactnum::{NegThreshold, Rational};
pub use num_bigint::BigInt;
