//! The JSON certificate and the generator manifest.
//!
//! Both are written through [`serde_json::Value`], whose maps are ordered, so
//! keys come out sorted and output is byte-stable.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use paige::autos::{restrict, Provenance};
use paige::theorems::{AutContext, CheckReport};
use paige::{Gf2, LinearMap, LoopAutomorphism, PaigeLoop2, Permutation};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbits {
    pub c2: Vec<usize>,
    pub v4: Vec<usize>,
}

/// Everything a run established. Fields a command did not compute are `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub q: u32,
    pub seed: u64,
    pub algebra_order: u64,
    pub sphere_order: u64,
    pub loop_order: u64,
    /// Element order to number of loop elements of that order.
    pub census: Option<BTreeMap<String, usize>>,
    pub doubling_triple_count: Option<usize>,
    pub aut_order: Option<usize>,
    pub orbits: Option<Orbits>,
    pub checks: Vec<CheckReport>,
    pub generators: Option<Vec<GeneratorEntry>>,
    pub status: String,
}

impl Certificate {
    pub fn new(q: u32, seed: u64) -> Self {
        let q64 = q as u64;
        let sphere = q64.pow(3) * (q64.pow(4) - 1);
        Certificate {
            version: VERSION.into(),
            q,
            seed,
            algebra_order: q64.pow(8),
            sphere_order: sphere,
            loop_order: if q.is_multiple_of(2) {
                sphere
            } else {
                sphere / 2
            },
            census: None,
            doubling_triple_count: None,
            aut_order: None,
            orbits: None,
            checks: Vec::new(),
            generators: None,
            status: String::new(),
        }
    }

    /// Sets `status` from the checks; an empty check list is a failure.
    pub fn seal(&mut self) -> bool {
        let ok = !self.checks.is_empty() && self.checks.iter().all(CheckReport::passed);
        self.status = if ok { "pass" } else { "fail" }.into();
        ok
    }

    pub fn to_canonical_json(&self) -> String {
        canonical(self)
    }
}

pub fn canonical<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("plain data serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("plain data serializes");
    s.push('\n');
    s
}

/// One generator: how it was built, and either its 8x8 matrix (field
/// indices, row-major) or, for conjugations, its permutation of the loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub provenance: String,
    pub label: String,
    pub matrix: Option<Vec<Vec<u32>>>,
    pub permutation: Option<Vec<u32>>,
    /// The construction as primitive labels, rightmost acting first.
    pub word: Vec<String>,
}

impl GeneratorEntry {
    pub fn from_automorphism(g: &LoopAutomorphism<Gf2>) -> Self {
        GeneratorEntry {
            provenance: g.provenance.to_string(),
            label: g.label.clone(),
            matrix: g.linear.map(|h| h.to_indices()),
            permutation: g.linear.is_none().then(|| g.perm.images().to_vec()),
            word: g.label.split('*').map(str::to_string).collect(),
        }
    }

    fn sort_key(&self) -> (Provenance, Vec<u32>) {
        let provenance = self.provenance.parse().unwrap_or(Provenance::Composite);
        let key = match (&self.matrix, &self.permutation) {
            (Some(m), _) => m.concat(),
            (None, Some(p)) => p.clone(),
            (None, None) => Vec::new(),
        };
        (provenance, key)
    }

    /// Rebuilds the loop automorphism; matrices are restricted to `t`.
    pub fn to_automorphism(&self, t: &PaigeLoop2) -> Result<LoopAutomorphism<Gf2>, CliError> {
        let bad = |why: &str| CliError::Usage(format!("generator {}: {why}", self.label));
        let provenance = self
            .provenance
            .parse()
            .map_err(|_| bad("unknown provenance"))?;
        let (perm, linear) = match (&self.matrix, &self.permutation) {
            (Some(m), _) => {
                let h = LinearMap::<Gf2>::from_indices(m).ok_or_else(|| bad("malformed matrix"))?;
                (restrict(&h, t).map_err(|e| bad(&e.to_string()))?, Some(h))
            }
            (None, Some(p)) => (
                Permutation::from_images(p.clone()).map_err(|e| bad(&e.to_string()))?,
                None,
            ),
            (None, None) => return Err(bad("neither matrix nor permutation")),
        };
        Ok(LoopAutomorphism {
            perm,
            provenance,
            label: self.label.clone(),
            linear,
        })
    }
}

/// Generator entries in export order: by provenance, then by key.
pub fn manifest_entries(gens: &[LoopAutomorphism<Gf2>]) -> Vec<GeneratorEntry> {
    let mut out: Vec<GeneratorEntry> = gens.iter().map(GeneratorEntry::from_automorphism).collect();
    out.sort_by_key(GeneratorEntry::sort_key);
    out
}

/// The on-disk generator cache, keyed by `(q, version)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub q: u32,
    pub generators: Vec<GeneratorEntry>,
}

impl Manifest {
    pub fn new(gens: &[LoopAutomorphism<Gf2>]) -> Self {
        Manifest {
            version: VERSION.into(),
            q: 2,
            generators: manifest_entries(gens),
        }
    }

    pub fn file_name() -> String {
        format!("generators-q2-v{VERSION}.json")
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(Self::file_name()), canonical(self))?;
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<Self, CliError> {
        let path = dir.join(Self::file_name());
        let text = fs::read_to_string(&path).map_err(|_| {
            CliError::Usage(format!(
                "no generator cache at {}; run `paige aut-group --q 2` first",
                path.display()
            ))
        })?;
        let m: Manifest = serde_json::from_str(&text).map_err(|e| {
            CliError::Usage(format!("corrupt generator cache {}: {e}", path.display()))
        })?;
        if m.q != 2 || m.version != VERSION {
            return Err(CliError::Usage(format!(
                "generator cache {} is for q={} version {}; rerun `paige aut-group --q 2`",
                path.display(),
                m.q,
                m.version
            )));
        }
        Ok(m)
    }

    /// Audits the cached generators and closes them.
    pub fn context(&self) -> Result<AutContext, CliError> {
        let t = PaigeLoop2::paige().map_err(|e| CliError::Failed(e.to_string()))?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_automorphism(&t))
            .collect::<Result<Vec<_>, _>>()?;
        AutContext::from_generators(t, gens).map_err(|e| CliError::Failed(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_enumeration() {
        for q in [2u32, 3] {
            let c = Certificate::new(q, 0);
            let n = if q == 2 {
                paige::PaigeLoop2::paige().unwrap().len()
            } else {
                paige::PaigeLoop3::paige().unwrap().len()
            };
            assert_eq!(c.loop_order, n as u64);
        }
        assert_eq!(Certificate::new(3, 0).sphere_order, 2160);
    }

    #[test]
    fn certificate_round_trips() {
        let mut c = Certificate::new(2, 7);
        c.census = Some(BTreeMap::from([("1".into(), 1), ("2".into(), 63)]));
        assert!(!c.seal());
        let text = c.to_canonical_json();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_canonical_json(), text);
        // sorted top-level keys
        let keys: Vec<String> = serde_json::from_str::<serde_json::Value>(&text)
            .unwrap()
            .as_object()
            .unwrap()
            .keys()
            .cloned()
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn manifest_rebuilds_generators() {
        let ctx = AutContext::build().unwrap();
        let m = Manifest::new(&ctx.generators);
        let back = m.context().unwrap();
        assert_eq!(back.group.order(), 12096);
        let perms: std::collections::BTreeSet<_> =
            ctx.generators.iter().map(|g| g.perm.clone()).collect();
        for g in &back.generators {
            assert!(perms.contains(&g.perm), "{}", g.label);
        }
    }
}
