//! The pair catalog: exceptional entries from the bundled JSON file plus the
//! parametrized classical families.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::orbits::{ClassicalFamily, DiagramLabels};
use crate::rootdata::{LieType, RealPair, RootSystem};
use crate::scalar::Q;

const BUNDLED: &str = include_str!("../data/catalog.json");

/// An exceptional pair as stored in the catalog file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExceptionalEntry {
    pub id: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub group: String,
    pub lie_type: LieType,
    pub rank: usize,
    /// 1-based Bourbaki index.
    pub noncompact_node: usize,
    pub k_type: String,
    pub table: u8,
    /// Bala–Carter label of the complex orbit.
    #[serde(default)]
    pub orbit: Option<String>,
    /// Table dimension column, `#Δ_n^+` (real orbit dimension).
    #[serde(default)]
    pub dim_column: Option<usize>,
    pub springer: bool,
    #[serde(default)]
    pub reason: Option<String>,
    #[serde(default)]
    pub long: bool,
    pub forms: Vec<DiagramLabels>,
    #[serde(default)]
    pub constants: Option<Vec<i64>>,
}

/// A classical family descriptor from the catalog file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub family: String,
    pub group: String,
    pub params: String,
    pub springer: bool,
    #[serde(default)]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CatalogFile {
    version: u32,
    exceptional: Vec<ExceptionalEntry>,
    families: Vec<FamilyEntry>,
}

/// Where a pair comes from.
#[derive(Clone, Debug)]
pub enum PairSource {
    Exceptional(ExceptionalEntry),
    Classical(ClassicalFamily),
}

/// A resolved catalog pair.
#[derive(Clone, Debug)]
pub struct PairSpec {
    pub id: String,
    pub group: String,
    pub source: PairSource,
    pub springer: bool,
    pub reason: Option<String>,
}

impl PairSpec {
    pub fn lie_type(&self) -> LieType {
        match &self.source {
            PairSource::Exceptional(e) => e.lie_type,
            PairSource::Classical(f) => f.lie_type(),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.source {
            PairSource::Exceptional(e) => e.rank,
            PairSource::Classical(f) => f.rank(),
        }
    }

    /// 1-based noncompact node.
    pub fn noncompact_node(&self) -> usize {
        match &self.source {
            PairSource::Exceptional(e) => e.noncompact_node,
            PairSource::Classical(f) => f.noncompact_node(),
        }
    }

    pub fn expected_k_type(&self) -> String {
        match &self.source {
            PairSource::Exceptional(e) => e.k_type.clone(),
            PairSource::Classical(f) => f.k_type_label(),
        }
    }

    pub fn table(&self) -> u8 {
        match &self.source {
            PairSource::Exceptional(e) => e.table,
            PairSource::Classical(_) => 1,
        }
    }

    /// Printed constants, in form order.
    pub fn table_constants(&self) -> Option<&[i64]> {
        match &self.source {
            PairSource::Exceptional(e) => e.constants.as_deref(),
            PairSource::Classical(_) => None,
        }
    }

    pub fn is_long(&self) -> bool {
        matches!(&self.source, PairSource::Exceptional(e) if e.long)
    }

    /// Builds the pair and checks `K`'s Dynkin type against the catalog.
    pub fn build(&self) -> Result<RealPair<Q>> {
        if let PairSource::Classical(f) = &self.source {
            f.validate()?;
        }
        let system = RootSystem::new(self.lie_type(), self.rank())?;
        let pair = RealPair::new(system, vec![self.noncompact_node() - 1])?;
        let want = self.expected_k_type();
        if pair.k_type_label() != want {
            return Err(Error::Catalog(format!(
                "{}: K has type {} but the catalog says {want}",
                self.id,
                pair.k_type_label()
            )));
        }
        Ok(pair)
    }
}

/// The loaded catalog.
#[derive(Clone, Debug)]
pub struct Catalog {
    file: CatalogFile,
    hash: String,
}

impl Catalog {
    /// The catalog compiled into the library.
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED).expect("bundled catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CatalogFile = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        let hash = hex::encode(Sha256::digest(text.as_bytes()));
        Ok(Self { file, hash })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// SHA-256 of the catalog text.
    pub fn version_hash(&self) -> &str {
        &self.hash
    }

    pub fn exceptional(&self) -> &[ExceptionalEntry] {
        &self.file.exceptional
    }

    pub fn families(&self) -> &[FamilyEntry] {
        &self.file.families
    }

    /// Ids of every fixed pair plus the family patterns.
    pub fn known_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.file.exceptional.iter().map(|e| e.id.clone()).collect();
        ids.extend(self.file.families.iter().map(|f| format!("{}(..)", f.family)));
        ids
    }

    fn unknown(&self, id: &str) -> Error {
        Error::UnknownPair { id: id.to_string(), known: self.known_ids().join(", ") }
    }

    /// Resolves an id such as `e7-a7`, `e7(7)`, `su(2,1)` or `su-2-1`.
    pub fn resolve(&self, id: &str) -> Result<PairSpec> {
        let key: String = id.trim().to_ascii_lowercase().chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(e) = self.file.exceptional.iter().find(|e| e.id == key || e.aliases.contains(&key)) {
            return Ok(PairSpec {
                id: e.id.clone(),
                group: e.group.clone(),
                springer: e.springer,
                reason: e.reason.clone(),
                source: PairSource::Exceptional(e.clone()),
            });
        }
        let (name, args) = split_family_id(&key).ok_or_else(|| self.unknown(id))?;
        let entry = self.file.families.iter().find(|f| f.family == name).ok_or_else(|| self.unknown(id))?;
        let family = family_from_args(&name, &args)
            .ok_or_else(|| Error::InvalidParameters(format!("{id}: expected {}({})", entry.family, entry.params)))?;
        family.validate()?;
        Ok(PairSpec {
            id: family_id(&family),
            group: family.to_string(),
            springer: entry.springer,
            reason: entry.reason.clone(),
            source: PairSource::Classical(family),
        })
    }

    /// Classical family members with rank at most `max_rank`.
    pub fn family_sweep(&self, max_rank: usize) -> Vec<PairSpec> {
        let mut out: Vec<PairSpec> = Vec::new();
        for f in &self.file.families {
            for a in 0..=max_rank + 1 {
                for b in 0..=max_rank + 1 {
                    let Some(fam) = family_from_args(&f.family, &[a, b]) else { continue };
                    if fam.validate().is_err() || fam.rank() > max_rank {
                        continue;
                    }
                    let id = family_id(&fam);
                    if out.iter().any(|s| s.id == id) {
                        continue;
                    }
                    out.push(PairSpec {
                        id,
                        group: fam.to_string(),
                        springer: f.springer,
                        reason: f.reason.clone(),
                        source: PairSource::Classical(fam),
                    });
                }
            }
        }
        out
    }
}

/// Canonical id of a classical family member.
pub fn family_id(f: &ClassicalFamily) -> String {
    match *f {
        ClassicalFamily::Su { p, q } => format!("su({p},{q})"),
        ClassicalFamily::SoOdd { p, q } => format!("so-odd({p},{q})"),
        ClassicalFamily::SpReal { n } => format!("sp-real({n})"),
        ClassicalFamily::SoStar { n } => format!("so-star({n})"),
        ClassicalFamily::SoEven { p, q } => format!("so-even({p},{q})"),
        ClassicalFamily::SpQuat { p, q } => format!("sp({p},{q})"),
    }
}

// `name(a,b)` or `name-a-b`.
fn split_family_id(key: &str) -> Option<(String, Vec<usize>)> {
    if let Some((name, rest)) = key.split_once('(') {
        let inner = rest.strip_suffix(')')?;
        let args = inner.split(',').map(|s| s.parse().ok()).collect::<Option<Vec<usize>>>()?;
        return Some((name.to_string(), args));
    }
    let pos = key.char_indices().find(|&(i, c)| c == '-' && key[i + 1..].starts_with(|d: char| d.is_ascii_digit()))?.0;
    let args = key[pos + 1..].split('-').map(|s| s.parse().ok()).collect::<Option<Vec<usize>>>()?;
    Some((key[..pos].to_string(), args))
}

// SU(p,q) ≅ SU(q,p) and so on: two-parameter families are normalized to
// the Table-1 orientation.
fn family_from_args(name: &str, args: &[usize]) -> Option<ClassicalFamily> {
    let two = |a: &[usize]| -> Option<(usize, usize)> {
        match a {
            [x, y] => Some((*x.min(y), *x.max(y))),
            _ => None,
        }
    };
    let one = |a: &[usize]| -> Option<usize> {
        match a {
            [n] | [n, 0] => Some(*n),
            _ => None,
        }
    };
    Some(match name {
        "su" => {
            let (p, q) = two(args)?;
            ClassicalFamily::Su { p, q }
        }
        "so-odd" => match args {
            [p, q] => ClassicalFamily::SoOdd { p: *p, q: *q },
            _ => return None,
        },
        "sp-real" => ClassicalFamily::SpReal { n: one(args)? },
        "so-star" => ClassicalFamily::SoStar { n: one(args)? },
        "so-even" => {
            let (p, q) = two(args)?;
            ClassicalFamily::SoEven { p, q }
        }
        "sp" => {
            let (p, q) = two(args)?;
            ClassicalFamily::SpQuat { p, q }
        }
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_aliases() {
        let cat = Catalog::bundled();
        assert_eq!(cat.resolve("e7-e6xC").unwrap().id, "e7-e6c");
        assert_eq!(cat.resolve("E7(7)").unwrap().id, "e7-a7");
        assert_eq!(cat.resolve("su(2,1)").unwrap().id, "su(1,2)");
        assert_eq!(cat.resolve("su-1-2").unwrap().id, "su(1,2)");
        assert_eq!(cat.resolve("sp-real-3").unwrap().id, "sp-real(3)");
        assert!(matches!(cat.resolve("e9"), Err(Error::UnknownPair { .. })));
        assert!(matches!(cat.resolve("su(0,2)"), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn every_entry_builds() {
        let cat = Catalog::bundled();
        for e in cat.exceptional() {
            cat.resolve(&e.id).unwrap().build().unwrap();
        }
        for spec in cat.family_sweep(6) {
            spec.build().unwrap();
        }
        assert_eq!(cat.version_hash().len(), 64);
    }
}
