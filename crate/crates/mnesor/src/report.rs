//! Compliance reports as JSON and as plain-text tables, and the parallel
//! driver for the checker.

use std::fmt::Write as _;

use anyhow::Result;
use mnesor_core::checker::{
    self, Binding, CheckBounds, ComplianceReport, LawResult, Status, Value,
};
use mnesor_core::{catalog, MnesorSpace};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Map;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub model: String,
    pub lattice: String,
    pub bounds: BoundsJson,
    pub laws: Vec<LawJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub max_mnesor_enumeration: usize,
    pub total: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawJson {
    pub name: String,
    pub status: String,
    pub instances: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Variable name to rendered value, in declaration order.
    pub counterexample: Option<Map<String, serde_json::Value>>,
}

impl ReportJson {
    pub fn from_report<S: MnesorSpace + ?Sized>(s: &S, r: &ComplianceReport<S::Elem>) -> Self {
        ReportJson {
            model: r.model.clone(),
            lattice: r.lattice.clone(),
            bounds: BoundsJson {
                max_mnesor_enumeration: r.bounds.max_mnesor_enumeration,
                total: r.total,
            },
            laws: r.results.iter().map(|l| law_json(s, l)).collect(),
        }
    }

    /// Pretty JSON with a trailing newline; byte-stable for equal reports.
    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawJson> {
        self.laws.iter().filter(|l| l.status == "fail")
    }

    pub fn get(&self, name: &str) -> Option<&LawJson> {
        self.laws.iter().find(|l| l.name == name)
    }
}

pub fn render_value<S: MnesorSpace + ?Sized>(s: &S, v: &Value<S::Elem>) -> String {
    match v {
        Value::Mnesor(e) => s.render(e),
        Value::Granular(g) => s.lattice().label(*g),
    }
}

pub fn render_binding<S: MnesorSpace + ?Sized>(
    s: &S,
    b: &Binding<S::Elem>,
) -> Map<String, serde_json::Value> {
    b.values
        .iter()
        .map(|(n, v)| (n.to_string(), serde_json::Value::String(render_value(s, v))))
        .collect()
}

fn law_json<S: MnesorSpace + ?Sized>(s: &S, l: &LawResult<S::Elem>) -> LawJson {
    LawJson {
        name: l.name.to_string(),
        status: l.status.as_str().to_string(),
        instances: l.instances_checked,
        reason: match &l.status {
            Status::Skipped(r) => Some(r.clone()),
            _ => None,
        },
        counterexample: l.counterexample.as_ref().map(|b| render_binding(s, b)),
    }
}

/// `check_all` with the laws spread over `jobs` worker threads (`0` means
/// one per core). Results come back in catalog order either way.
pub fn check_all_parallel<S>(
    s: &S,
    b: CheckBounds,
    jobs: usize,
) -> Result<ComplianceReport<S::Elem>>
where
    S: MnesorSpace + Sync + ?Sized,
    S::Elem: Send,
{
    if jobs == 1 {
        return Ok(checker::check_all(s, b));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let cat = catalog();
    let results = pool.install(|| {
        cat.laws()
            .par_iter()
            .map(|law| checker::check_law(s, law, b))
            .collect::<Vec<_>>()
    });
    Ok(checker::report(s, b, results))
}

/// One line per law: name, tier, status, instance count and counterexample.
pub fn table(r: &ReportJson) -> String {
    let cat = catalog();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "model {}  lattice {}  max-len {}{}",
        r.model,
        r.lattice,
        r.bounds.max_mnesor_enumeration,
        if r.bounds.total {
            " (total)"
        } else {
            " (partial)"
        }
    );
    let width = r.laws.iter().map(|l| l.name.len()).max().unwrap_or(0);
    for l in &r.laws {
        let tier = cat.get(&l.name).map_or("?", |law| law.tier.as_str());
        let _ = write!(
            out,
            "{:width$}  {:7}  {:7}  {:>9}",
            l.name,
            tier,
            l.status.to_uppercase(),
            l.instances
        );
        if let Some(cx) = &l.counterexample {
            out.push(' ');
            for (k, v) in cx {
                let _ = write!(out, " {k}={}", v.as_str().unwrap_or_default());
            }
        }
        if let Some(reason) = &l.reason {
            let _ = write!(out, "  ({reason})");
        }
        out.push('\n');
    }
    let fails = r.failures().count();
    let skipped = r.laws.iter().filter(|l| l.status == "skipped").count();
    let _ = writeln!(
        out,
        "{} laws: {} pass, {fails} fail, {skipped} skipped",
        r.laws.len(),
        r.laws.len() - fails - skipped
    );
    out
}
