//! Known non-emptiness results that the rules can cite but not derive.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::curve::{CurveClass, Level};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactKind {
    /// `S(n,d,k)`: generated coherent systems of this type with `E` and its
    /// dual span both stable.
    #[serde(rename = "S-nonempty")]
    SNonempty,
    #[serde(rename = "B-nonempty")]
    BNonempty,
    /// Non-emptiness of the semistable locus only.
    #[serde(rename = "Btilde-nonempty")]
    BtildeNonempty,
}

impl FactKind {
    fn symbol(self) -> &'static str {
        match self {
            FactKind::SNonempty => "S",
            FactKind::BNonempty => "B",
            FactKind::BtildeNonempty => "B~",
        }
    }
}

/// An integer of the form `a·g + b`, written `5`, `g+3`, `2g-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AffineRepr", into = "AffineRepr")]
pub struct GenusAffine {
    per_genus: i64,
    constant: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AffineRepr {
    Int(i64),
    Text(String),
}

impl GenusAffine {
    pub fn constant(c: i64) -> Self {
        GenusAffine { per_genus: 0, constant: c }
    }

    pub fn new(per_genus: i64, constant: i64) -> Self {
        GenusAffine { per_genus, constant }
    }

    pub fn at(&self, g: i64) -> Option<i64> {
        self.per_genus.checked_mul(g)?.checked_add(self.constant)
    }
}

impl fmt::Display for GenusAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.per_genus, self.constant) {
            (0, c) => write!(f, "{c}"),
            (a, c) => {
                match a {
                    1 => f.write_str("g")?,
                    -1 => f.write_str("-g")?,
                    a => write!(f, "{a}g")?,
                }
                match c {
                    0 => Ok(()),
                    c if c > 0 => write!(f, "+{c}"),
                    c => write!(f, "{c}"),
                }
            }
        }
    }
}

impl FromStr for GenusAffine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "genus expression", detail: s.to_string() };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Ok(c) = t.parse::<i64>() {
            return Ok(GenusAffine::constant(c));
        }
        let pos = t.find('g').ok_or_else(bad)?;
        let per_genus = match &t[..pos] {
            "" | "+" => 1,
            "-" => -1,
            coeff => coeff.parse().map_err(|_| bad())?,
        };
        let rest = &t[pos + 1..];
        let constant = if rest.is_empty() {
            0
        } else {
            if !rest.starts_with(['+', '-']) {
                return Err(bad());
            }
            rest.parse().map_err(|_| bad())?
        };
        Ok(GenusAffine { per_genus, constant })
    }
}

impl TryFrom<AffineRepr> for GenusAffine {
    type Error = Error;
    fn try_from(r: AffineRepr) -> Result<Self> {
        match r {
            AffineRepr::Int(c) => Ok(GenusAffine::constant(c)),
            AffineRepr::Text(s) => s.parse(),
        }
    }
}

impl From<GenusAffine> for AffineRepr {
    fn from(a: GenusAffine) -> Self {
        if a.per_genus == 0 {
            AffineRepr::Int(a.constant)
        } else {
            AffineRepr::Text(a.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusPredicate {
    Eq(i64),
    AtLeast(i64),
    Parity(Parity),
}

impl GenusPredicate {
    pub fn holds(&self, g: i64) -> bool {
        match *self {
            GenusPredicate::Eq(x) => g == x,
            GenusPredicate::AtLeast(x) => g >= x,
            GenusPredicate::Parity(Parity::Odd) => g % 2 == 1,
            GenusPredicate::Parity(Parity::Even) => g % 2 == 0,
        }
    }
}

impl fmt::Display for GenusPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusPredicate::Eq(x) => write!(f, "g = {x}"),
            GenusPredicate::AtLeast(x) => write!(f, "g >= {x}"),
            GenusPredicate::Parity(Parity::Odd) => f.write_str("g odd"),
            GenusPredicate::Parity(Parity::Even) => f.write_str("g even"),
        }
    }
}

/// A cited non-emptiness statement for a locus whose parameters may depend
/// on the genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFact")]
pub struct Fact {
    pub kind: FactKind,
    pub n: GenusAffine,
    pub d: GenusAffine,
    pub k: GenusAffine,
    pub level: Level,
    #[serde(default)]
    pub genus: Vec<GenusPredicate>,
    pub citation: String,
}

#[derive(Deserialize)]
struct RawFact {
    kind: FactKind,
    n: GenusAffine,
    d: GenusAffine,
    k: GenusAffine,
    level: Level,
    #[serde(default)]
    genus: Vec<GenusPredicate>,
    #[serde(default)]
    citation: Option<String>,
}

impl TryFrom<RawFact> for Fact {
    type Error = Error;
    fn try_from(r: RawFact) -> Result<Self> {
        let citation = r.citation.unwrap_or_default();
        if citation.trim().is_empty() {
            return Err(Error::Fact("every fact needs a non-empty citation".into()));
        }
        Ok(Fact {
            kind: r.kind,
            n: r.n,
            d: r.d,
            k: r.k,
            level: r.level,
            genus: r.genus,
            citation,
        })
    }
}

/// A fact evaluated on a particular curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactInstance {
    pub n: i64,
    pub d: i64,
    pub k: i64,
}

impl Fact {
    pub fn parse_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Parameters at this curve, if the fact applies to it.
    pub fn instantiate(&self, curve: &CurveClass) -> Option<FactInstance> {
        let g = curve.g();
        if !curve.satisfies(self.level) || !self.genus.iter().all(|p| p.holds(g)) {
            return None;
        }
        Some(FactInstance { n: self.n.at(g)?, d: self.d.at(g)?, k: self.k.at(g)? })
    }

    /// Same locus under the same curve conditions; only the citation may differ.
    fn same_statement(&self, other: &Fact) -> bool {
        self.kind == other.kind
            && self.n == other.n
            && self.d == other.d
            && self.k == other.k
            && self.level == other.level
            && self.genus == other.genus
    }

    pub fn label(&self) -> String {
        format!("{}({},{},{})", self.kind.symbol(), self.n, self.d, self.k)
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {} curves", self.label(), self.level)?;
        if !self.genus.is_empty() {
            let preds: Vec<String> = self.genus.iter().map(|p| p.to_string()).collect();
            write!(f, " with {}", preds.join(", "))?;
        }
        write!(f, " [{}]", self.citation)
    }
}

fn builtin_facts() -> Vec<Fact> {
    use GenusPredicate::*;
    let c = GenusAffine::constant;
    let fact = |kind, n, d, k, genus, citation: &str| Fact {
        kind,
        n,
        d,
        k,
        level: Level::General,
        genus,
        citation: citation.into(),
    };
    vec![
        fact(
            FactKind::SNonempty,
            c(2),
            GenusAffine::new(1, 3),
            c(4),
            vec![AtLeast(5), GenusPredicate::Parity(self::Parity::Odd)],
            "stable rank-2 coherent systems of type (2,g+3,4) with stable dual span exist \
             on a general curve of odd genus g >= 5",
        ),
        fact(
            FactKind::SNonempty,
            c(2),
            c(10),
            c(5),
            vec![Eq(6)],
            "stable rank-2 coherent systems of type (2,10,5) with stable dual span exist \
             on a general curve of genus 6",
        ),
        fact(
            FactKind::BNonempty,
            c(2),
            c(10),
            c(5),
            vec![Eq(6)],
            "rank-2 Brill-Noether theory: B(2,10,5) is non-empty on a general curve of genus 6",
        ),
        fact(
            FactKind::BNonempty,
            c(6),
            c(22),
            c(7),
            vec![Eq(10)],
            "(22/6, 7/6) lies in a known non-emptiness region of the genus 10 BN map",
        ),
        Fact {
            level: Level::Smooth,
            ..fact(
                FactKind::BNonempty,
                c(2),
                c(5),
                c(2),
                vec![],
                "for 0 < k <= n, B(n,d,k) is non-empty on every smooth curve when d > 0, \
                 n <= d + (n-k)g and (n,d,k) != (n,n,n)",
            )
        },
    ]
}

/// Built-in facts followed by user facts. A user fact repeating a built-in
/// statement is shadowed, so the built-in citation is the one reported.
#[derive(Debug, Clone)]
pub struct FactDb {
    builtin: Vec<Fact>,
    user: Vec<Fact>,
    shadowed: Vec<Fact>,
}

impl Default for FactDb {
    fn default() -> Self {
        FactDb::builtin()
    }
}

impl FactDb {
    pub fn builtin() -> Self {
        FactDb { builtin: builtin_facts(), user: Vec::new(), shadowed: Vec::new() }
    }

    pub fn with_user(facts: impl IntoIterator<Item = Fact>) -> Self {
        let mut db = FactDb::builtin();
        for f in facts {
            db.add(f);
        }
        db
    }

    /// Builds a database from a JSON array of fact records. A missing file
    /// means no user facts.
    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(FactDb::builtin());
        }
        Ok(FactDb::with_user(read_fact_file(path)?))
    }

    /// Returns `false` when the fact is shadowed by a built-in.
    pub fn add(&mut self, fact: Fact) -> bool {
        if self.builtin.iter().any(|b| b.same_statement(&fact)) {
            self.shadowed.push(fact);
            return false;
        }
        if !self.user.contains(&fact) {
            self.user.push(fact);
        }
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Fact, bool)> {
        self.builtin.iter().map(|f| (f, true)).chain(self.user.iter().map(|f| (f, false)))
    }

    pub fn user_facts(&self) -> &[Fact] {
        &self.user
    }

    pub fn shadowed(&self) -> &[Fact] {
        &self.shadowed
    }

    /// Facts of the given kind that apply to `curve`, in database order.
    pub fn matching<'a>(
        &'a self,
        kind: FactKind,
        curve: &'a CurveClass,
    ) -> impl Iterator<Item = (&'a Fact, FactInstance)> + 'a {
        self.iter()
            .filter(move |(f, _)| f.kind == kind)
            .filter_map(move |(f, _)| f.instantiate(curve).map(|inst| (f, inst)))
    }
}

pub fn read_fact_file(path: &Path) -> Result<Vec<Fact>> {
    let text = std::fs::read_to_string(path)?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(serde_json::from_str(&text)?)
}

/// Appends `fact` to the JSON array in `path`, creating the file if needed.
pub fn append_fact_file(path: &Path, fact: &Fact) -> Result<()> {
    let mut facts = if path.exists() { read_fact_file(path)? } else { Vec::new() };
    if !facts.contains(fact) {
        facts.push(fact.clone());
    }
    let mut text = serde_json::to_string_pretty(&facts)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_round_trip() {
        for (text, a, b) in [("g+3", 1, 3), ("2g-1", 2, -1), ("g", 1, 0), ("-g+10", -1, 10)] {
            let parsed: GenusAffine = text.parse().unwrap();
            assert_eq!(parsed, GenusAffine::new(a, b));
            assert_eq!(parsed.to_string(), text.trim_start_matches('+'));
        }
        assert_eq!("7".parse::<GenusAffine>().unwrap().at(100), Some(7));
        assert!("g3".parse::<GenusAffine>().is_err());
        assert!("h+1".parse::<GenusAffine>().is_err());
    }

    #[test]
    fn citation_required() {
        let missing = r#"{"kind":"B-nonempty","n":2,"d":7,"k":3,"level":"general"}"#;
        assert!(matches!(Fact::parse_json(missing), Err(Error::Json(_))));
        let blank = r#"{"kind":"B-nonempty","n":2,"d":7,"k":3,"level":"general","citation":"  "}"#;
        assert!(Fact::parse_json(blank).is_err());
        let ok = r#"{"kind":"S-nonempty","n":1,"d":"g+1","k":2,"level":"smooth",
                     "genus":[{"at_least":3},{"parity":"even"}],"citation":"x"}"#;
        let fact = Fact::parse_json(ok).unwrap();
        assert_eq!(fact.genus.len(), 2);
        let json = serde_json::to_string(&fact).unwrap();
        assert_eq!(Fact::parse_json(&json).unwrap(), fact);
    }

    #[test]
    fn instantiation_respects_curve() {
        let db = FactDb::builtin();
        let odd7 = CurveClass::general(7).unwrap();
        let found: Vec<_> = db.matching(FactKind::SNonempty, &odd7).map(|(_, i)| i).collect();
        assert_eq!(found, vec![FactInstance { n: 2, d: 10, k: 4 }]);
        assert_eq!(db.matching(FactKind::SNonempty, &CurveClass::general(8).unwrap()).count(), 0);
        assert_eq!(db.matching(FactKind::SNonempty, &CurveClass::petri(7).unwrap()).count(), 0);
        assert_eq!(db.matching(FactKind::SNonempty, &CurveClass::general(3).unwrap()).count(), 0);
    }

    #[test]
    fn builtins_win() {
        let mut db = FactDb::builtin();
        let dup = Fact { citation: "someone".into(), ..db.builtin[2].clone() };
        assert!(!db.add(dup));
        assert!(db.user_facts().is_empty());
        assert_eq!(db.shadowed().len(), 1);
        // a wider claim about the same locus is an extension, not a conflict
        let wider = Fact { level: Level::Smooth, citation: "someone".into(), ..db.builtin[2].clone() };
        assert!(db.add(wider));
        assert_eq!(db.user_facts().len(), 1);
        let smooth6 = CurveClass::smooth(6, super::super::curve::Hyperelliptic::No).unwrap();
        assert!(db.matching(FactKind::BNonempty, &smooth6).any(|(f, _)| f.citation == "someone"));
    }
}
