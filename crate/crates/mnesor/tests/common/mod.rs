#![allow(dead_code)]

pub mod oracle;
pub mod trees;

use std::path::PathBuf;

use mnesor::model::{ModelKind, ModelSpec};
use mnesor::report::ReportJson;

pub fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/seq_u3.json")
}

/// The committed matrix. With `MNESOR_BLESS=1` it is first rewritten
/// from the oracle.
pub fn golden_text() -> String {
    let path = golden_path();
    if std::env::var_os("MNESOR_BLESS").is_some() {
        std::fs::write(&path, oracle::matrix().to_pretty()).unwrap();
    }
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn golden() -> ReportJson {
    serde_json::from_str(&golden_text()).unwrap()
}

pub fn seq_spec(universe: &[&str]) -> ModelSpec {
    ModelSpec {
        model: ModelKind::Seq,
        fixture: None,
        universe: Some(universe.iter().map(|s| s.to_string()).collect()),
        universe_limit: None,
        max_len: None,
        lattice: None,
    }
}

pub fn self_spec(lattice: &str) -> ModelSpec {
    ModelSpec {
        model: ModelKind::SelfAction,
        fixture: None,
        universe: None,
        universe_limit: None,
        max_len: None,
        lattice: Some(lattice.to_string()),
    }
}

/// Laws expected to fail on tuples over three letters.
pub const SEQ_U3_FAILS: [&str; 4] = ["A-GDIST", "T-PFX-II-III", "T-COMPAT-ADD", "T-MONO-G"];
