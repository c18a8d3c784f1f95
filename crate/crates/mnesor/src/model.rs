//! Resolving command-line model descriptions into constructed models.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use mnesor_core::lattice_model::SelfActionSpace;
use mnesor_core::seq_model::{SeqSpace, Universe};
use mnesor_core::MnesorSpace;

use crate::fixture::{self, SeqFixture};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// Duplicate-free tuples filtered by subsets of a universe.
    Seq,
    /// A lattice acting on itself by meet.
    #[value(name = "self")]
    SelfAction,
}

/// Which model to build and how much of it to enumerate.
#[derive(Clone, Debug, Args)]
pub struct ModelSpec {
    #[arg(long, value_enum, default_value = "seq")]
    pub model: ModelKind,
    /// Seq fixture file; the built-in geography fixture when omitted.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
    /// Comma-separated atoms, replacing the fixture universe.
    #[arg(long, value_delimiter = ',')]
    pub universe: Option<Vec<String>>,
    /// Keep only the first N atoms of the universe.
    #[arg(long)]
    pub universe_limit: Option<usize>,
    /// Longest tuple enumerated; defaults to the universe size.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Lattice for the self-action model: chain:N, powerset:N, two_point,
    /// m3, n5 or file:PATH.
    #[arg(long)]
    pub lattice: Option<String>,
}

pub enum Model {
    Seq(SeqSpace),
    SelfAction(SelfActionSpace),
}

impl ModelSpec {
    /// Builds the model. `default_limit` caps the seq universe when no
    /// explicit `--universe-limit` is given.
    pub fn resolve(&self, default_limit: Option<usize>) -> Result<Model> {
        match self.model {
            ModelKind::Seq => {
                if self.lattice.is_some() {
                    bail!("--lattice applies to the self-action model only");
                }
                let space = match (&self.universe, &self.fixture) {
                    (Some(atoms), _) => SeqSpace::new(Universe::new(atoms)?)?,
                    (None, Some(path)) => SeqFixture::load(path)?.into_space()?,
                    (None, None) => fixture::geo(),
                };
                let limit = self.universe_limit.or(default_limit);
                let space = match limit {
                    Some(n) if n < space.universe().len() => space.restrict(n)?,
                    _ => space,
                };
                Ok(Model::Seq(space))
            }
            ModelKind::SelfAction => {
                if self.fixture.is_some() || self.universe.is_some() {
                    bail!("--fixture and --universe apply to the seq model only");
                }
                let spec = self
                    .lattice
                    .as_deref()
                    .context("the self-action model needs --lattice")?;
                let l = fixture::lattice_from_spec(spec)?;
                Ok(Model::SelfAction(SelfActionSpace::new(l)?))
            }
        }
    }

    /// Enumeration bound for `space`: `--max-len` or everything.
    pub fn bound<S: MnesorSpace>(&self, space: &S) -> usize {
        self.max_len.unwrap_or_else(|| match self.model {
            ModelKind::Seq => space.lattice().powerset_atoms().map_or(1, <[String]>::len),
            ModelKind::SelfAction => 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> ModelSpec {
        ModelSpec {
            model: ModelKind::Seq,
            fixture: None,
            universe: None,
            universe_limit: None,
            max_len: None,
            lattice: None,
        }
    }

    #[test]
    fn seq_defaults_to_geo() {
        let Model::Seq(s) = spec().resolve(None).unwrap() else {
            panic!()
        };
        assert_eq!(s.universe().len(), 17);
        let Model::Seq(s) = spec().resolve(Some(3)).unwrap() else {
            panic!()
        };
        assert_eq!(s.universe().atoms(), ["France", "Poland", "Germany"]);
        assert_eq!(spec().bound(&s), 3);
    }

    #[test]
    fn explicit_universe() {
        let sp = ModelSpec {
            universe: Some(vec!["a".into(), "b".into()]),
            ..spec()
        };
        let Model::Seq(s) = sp.resolve(Some(3)).unwrap() else {
            panic!()
        };
        assert_eq!(s.universe().len(), 2);
        assert!(s.named_granulars().is_empty());
    }

    #[test]
    fn self_action_needs_lattice() {
        let sp = ModelSpec {
            model: ModelKind::SelfAction,
            ..spec()
        };
        assert!(sp.resolve(None).is_err());
        let sp = ModelSpec {
            lattice: Some("n5".into()),
            ..sp
        };
        assert!(matches!(sp.resolve(None).unwrap(), Model::SelfAction(_)));
        let wrong = ModelSpec {
            lattice: Some("m3".into()),
            ..spec()
        };
        assert!(wrong.resolve(None).is_err());
    }
}
