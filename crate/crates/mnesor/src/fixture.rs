//! JSON fixture formats: seq-model universes with named granulars, and
//! explicit lattices.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use mnesor_core::lattice::FiniteLattice;
use mnesor_core::seq_model::{SeqSpace, Universe};
use mnesor_core::GranularId;
use serde::{Deserialize, Serialize};

/// The shipped geography fixture.
pub const GEO_JSON: &str = include_str!("../fixtures/geo.json");

/// `{ "universe": [..], "granulars": { "EU": [..], .. } }`
///
/// Granulars keep their file order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqFixture {
    pub universe: Vec<String>,
    #[serde(default)]
    pub granulars: serde_json::Map<String, serde_json::Value>,
}

impl SeqFixture {
    pub fn parse(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read fixture {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("malformed fixture {}", path.display()))
    }

    pub fn into_space(self) -> Result<SeqSpace> {
        let mut space = SeqSpace::new(Universe::new(&self.universe)?)?;
        for (name, members) in self.granulars {
            let members: Vec<String> = serde_json::from_value(members)
                .with_context(|| format!("granular `{name}` must be a list of atom names"))?;
            space = space
                .with_granular(name.clone(), &members)
                .with_context(|| format!("granular `{name}`"))?;
        }
        Ok(space)
    }
}

/// The geography fixture as a model.
pub fn geo() -> SeqSpace {
    SeqFixture::parse(GEO_JSON)
        .and_then(SeqFixture::into_space)
        .expect("shipped fixture is valid")
}

/// Lattice file format, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatticeFile {
    Powerset {
        atoms: Vec<String>,
    },
    Chain {
        n: usize,
    },
    TwoPoint,
    M3,
    N5,
    Product {
        left: Box<LatticeFile>,
        right: Box<LatticeFile>,
    },
    /// Covering pairs `[lower, upper]` by label.
    Cover {
        name: String,
        elements: Vec<String>,
        edges: Vec<(String, String)>,
    },
    /// Square join and meet tables of element indices.
    Table {
        name: String,
        labels: Vec<String>,
        join: Vec<Vec<u32>>,
        meet: Vec<Vec<u32>>,
        top: String,
        #[serde(default)]
        bottom: Option<String>,
    },
}

impl LatticeFile {
    pub fn build(&self) -> Result<FiniteLattice> {
        Ok(match self {
            LatticeFile::Powerset { atoms } => FiniteLattice::powerset(atoms)?,
            LatticeFile::Chain { n } => FiniteLattice::chain(*n)?,
            LatticeFile::TwoPoint => FiniteLattice::two_point(),
            LatticeFile::M3 => FiniteLattice::diamond_m3(),
            LatticeFile::N5 => FiniteLattice::pentagon_n5(),
            LatticeFile::Product { left, right } => {
                FiniteLattice::product(&left.build()?, &right.build()?)?
            }
            LatticeFile::Cover {
                name,
                elements,
                edges,
            } => FiniteLattice::from_cover_relation(name, elements, edges)?,
            LatticeFile::Table {
                name,
                labels,
                join,
                meet,
                top,
                bottom,
            } => {
                let find = |l: &str| -> Result<GranularId> {
                    match labels.iter().position(|x| x == l) {
                        Some(i) => Ok(GranularId(i as u32)),
                        None => bail!("unknown label `{l}`"),
                    }
                };
                let flat = |t: &[Vec<u32>], what: &str| -> Result<Vec<u32>> {
                    if t.len() != labels.len() || t.iter().any(|r| r.len() != labels.len()) {
                        bail!("{what} table must be {0}x{0}", labels.len());
                    }
                    Ok(t.concat())
                };
                FiniteLattice::from_tables(
                    name.clone(),
                    labels.clone(),
                    flat(join, "join")?,
                    flat(meet, "meet")?,
                    find(top)?,
                    bottom.as_deref().map(find).transpose()?,
                )?
            }
        })
    }
}

/// Resolves a compact lattice specifier: `chain:N`, `powerset:N`,
/// `two_point`, `m3`, `n5` or `file:PATH`. The result is validated.
pub fn lattice_from_spec(spec: &str) -> Result<FiniteLattice> {
    let number = |s: &str| -> Result<usize> {
        s.parse()
            .with_context(|| format!("lattice specifier `{spec}`: `{s}` is not a number"))
    };
    let l = match spec.split_once(':') {
        Some(("chain", n)) => FiniteLattice::chain(number(n)?)?,
        Some(("powerset", n)) => FiniteLattice::powerset_n(number(n)?)?,
        Some(("file", path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read lattice file {path}"))?;
            let file: LatticeFile = serde_json::from_str(&text)
                .with_context(|| format!("malformed lattice file {path}"))?;
            file.build()?
        }
        None if spec == "two_point" => FiniteLattice::two_point(),
        None if spec == "m3" => FiniteLattice::diamond_m3(),
        None if spec == "n5" => FiniteLattice::pentagon_n5(),
        _ => bail!(
            "unknown lattice specifier `{spec}` (expected chain:N, powerset:N, two_point, m3, n5 or file:PATH)"
        ),
    };
    if let Some(v) = l.validate().first() {
        bail!("`{}` is not a bounded lattice: {v}", l.name());
    }
    Ok(l)
}
