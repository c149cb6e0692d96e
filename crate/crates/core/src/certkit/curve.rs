use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bncalc::Genus;
use crate::error::{Error, Result};

/// How much genericity is assumed of the curve. Ordered so that a rule
/// needing `Petri` accepts `General`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Smooth,
    Petri,
    General,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Smooth => "smooth",
            Level::Petri => "petri",
            Level::General => "general",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "smooth" => Ok(Level::Smooth),
            "petri" => Ok(Level::Petri),
            "general" => Ok(Level::General),
            other => Err(Error::Parse { what: "curve level", detail: other.to_string() }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hyperelliptic {
    Yes,
    No,
    Unknown,
}

/// A curve of genus `g` together with the assumptions made about it.
///
/// Written `level:g` with an optional `,hyp` or `,nonhyp` flag, e.g.
/// `general:7` or `smooth:6,nonhyp`. Genus 2 curves are always
/// hyperelliptic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CurveClass {
    genus: Genus,
    level: Level,
    hyperelliptic: Hyperelliptic,
}

impl CurveClass {
    pub fn new(genus: Genus, level: Level, hyperelliptic: Hyperelliptic) -> Result<Self> {
        let g = genus.get();
        let hyperelliptic = match (g, hyperelliptic) {
            (2, Hyperelliptic::No) => {
                return Err(Error::param("every curve of genus 2 is hyperelliptic"));
            }
            (2, _) => Hyperelliptic::Yes,
            (_, Hyperelliptic::Yes) if level >= Level::Petri => {
                return Err(Error::param(format!(
                    "a {level} curve of genus {g} is not hyperelliptic"
                )));
            }
            (_, Hyperelliptic::Unknown) if level >= Level::Petri => Hyperelliptic::No,
            (_, h) => h,
        };
        Ok(CurveClass { genus, level, hyperelliptic })
    }

    pub fn general(g: i64) -> Result<Self> {
        CurveClass::new(Genus::new(g)?, Level::General, Hyperelliptic::Unknown)
    }

    pub fn petri(g: i64) -> Result<Self> {
        CurveClass::new(Genus::new(g)?, Level::Petri, Hyperelliptic::Unknown)
    }

    pub fn smooth(g: i64, hyperelliptic: Hyperelliptic) -> Result<Self> {
        CurveClass::new(Genus::new(g)?, Level::Smooth, hyperelliptic)
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn g(&self) -> i64 {
        self.genus.get()
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn hyperelliptic(&self) -> Hyperelliptic {
        self.hyperelliptic
    }

    pub fn satisfies(&self, needed: Level) -> bool {
        self.level >= needed
    }

    pub fn is_nonhyperelliptic(&self) -> bool {
        self.hyperelliptic == Hyperelliptic::No
    }

    /// The same curve with a weaker (or equal) genericity assumption.
    pub fn with_level(&self, level: Level) -> Result<Self> {
        CurveClass::new(self.genus, level, self.hyperelliptic)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level, self.genus)?;
        let implied = self.genus.get() == 2 || self.level >= Level::Petri;
        match self.hyperelliptic {
            Hyperelliptic::Yes if !implied => f.write_str(",hyp"),
            Hyperelliptic::No if !implied => f.write_str(",nonhyp"),
            _ => Ok(()),
        }
    }
}

impl FromStr for CurveClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "curve", detail: s.to_string() };
        let (level, rest) = s.split_once(':').ok_or_else(bad)?;
        let mut parts = rest.split(',');
        let g: i64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let mut hyp = Hyperelliptic::Unknown;
        for flag in parts {
            hyp = match flag.trim() {
                "hyp" => Hyperelliptic::Yes,
                "nonhyp" => Hyperelliptic::No,
                _ => return Err(bad()),
            };
        }
        CurveClass::new(Genus::new(g)?, level.parse()?, hyp)
    }
}

impl TryFrom<String> for CurveClass {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CurveClass> for String {
    fn from(c: CurveClass) -> String {
        c.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let c: CurveClass = "smooth:6,nonhyp".parse().unwrap();
        assert_eq!(c.level(), Level::Smooth);
        assert!(c.is_nonhyperelliptic());
        assert_eq!(c.to_string(), "smooth:6,nonhyp");
        let c: CurveClass = "general:7".parse().unwrap();
        assert!(c.is_nonhyperelliptic());
        assert_eq!(c.to_string(), "general:7");
        assert_eq!("smooth:5".parse::<CurveClass>().unwrap().hyperelliptic(), Hyperelliptic::Unknown);
    }

    #[test]
    fn genus_two_is_hyperelliptic() {
        let c: CurveClass = "general:2".parse().unwrap();
        assert_eq!(c.hyperelliptic(), Hyperelliptic::Yes);
        assert!("smooth:2,nonhyp".parse::<CurveClass>().is_err());
        assert!("petri:5,hyp".parse::<CurveClass>().is_err());
    }

    #[test]
    fn rejects_garbage() {
        for s in ["general", "general:1", "weird:5", "smooth:5,maybe", "smooth:x"] {
            assert!(s.parse::<CurveClass>().is_err(), "{s}");
        }
    }

    #[test]
    fn level_order() {
        assert!(Level::General > Level::Petri && Level::Petri > Level::Smooth);
        let c = CurveClass::general(9).unwrap();
        assert!(c.satisfies(Level::Petri) && c.satisfies(Level::Smooth));
        assert!(!CurveClass::petri(9).unwrap().satisfies(Level::General));
    }
}
