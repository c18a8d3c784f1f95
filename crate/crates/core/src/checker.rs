//! Exhaustive bounded evaluation of catalog laws against a model.
//!
//! Free variables of a law range over the carrier enumerated at the given
//! bound (mnesor sort) or over the whole lattice (granular sort); quantified
//! variables range over the same domains. Counterexamples are ranked by the
//! total weight of their mnesor values, then lexicographically by the
//! position of each value in its domain (declaration order of variables).
//! The reported counterexample is the least one under that ranking.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{catalog, Formula, GTerm, Law, MTerm, MnesorSpace, Sort, VarId};
use crate::lattice::GranularId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("enumeration bound must be positive")]
    BoundsNotPositive,
    #[error("binding does not violate `{0}`")]
    NotViolating(&'static str),
    #[error("binding does not match the free variables of `{0}`")]
    BadBinding(&'static str),
    #[error("law `{0}` needs a bottom element")]
    MissingBottom(&'static str),
}

/// How much of the carrier the checker enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckBounds {
    pub max_mnesor_enumeration: usize,
}

impl CheckBounds {
    pub fn new(max_mnesor_enumeration: usize) -> Result<Self, CheckError> {
        if max_mnesor_enumeration == 0 {
            return Err(CheckError::BoundsNotPositive);
        }
        Ok(CheckBounds {
            max_mnesor_enumeration,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value<E> {
    Mnesor(E),
    Granular(GranularId),
}

/// Values for the free variables of one law, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding<E> {
    pub values: Vec<(&'static str, Value<E>)>,
}

impl<E> Binding<E> {
    pub fn get(&self, name: &str) -> Option<&Value<E>> {
        self.values.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult<E> {
    pub name: &'static str,
    pub status: Status,
    pub instances_checked: u64,
    pub counterexample: Option<Binding<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplianceReport<E> {
    pub model: String,
    pub lattice: String,
    pub bounds: CheckBounds,
    /// Whether the carrier was fully enumerated at `bounds`.
    pub total: bool,
    pub results: Vec<LawResult<E>>,
}

impl<E> ComplianceReport<E> {
    pub fn failures(&self) -> impl Iterator<Item = &LawResult<E>> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn get(&self, name: &str) -> Option<&LawResult<E>> {
        self.results.iter().find(|r| r.name == name)
    }
}

enum Slot<'a, E> {
    Empty,
    M(&'a E),
    G(GranularId),
}

impl<E> Clone for Slot<'_, E> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<E> Copy for Slot<'_, E> {}

struct Evaluator<'a, S: MnesorSpace + ?Sized> {
    space: &'a S,
    carrier: &'a [S::Elem],
    granulars: usize,
}

impl<'a, S: MnesorSpace + ?Sized> Evaluator<'a, S> {
    fn mterm(&self, t: &MTerm, slots: &[Slot<'a, S::Elem>]) -> S::Elem {
        match t {
            MTerm::Var(v) => match slots[v.index()] {
                Slot::M(e) => e.clone(),
                _ => unreachable!("mnesor variable {} unbound", v.0),
            },
            MTerm::Zero => self.space.zero(),
            MTerm::Add(a, b) => self.space.add(&self.mterm(a, slots), &self.mterm(b, slots)),
            MTerm::Act(a, g) => self.space.act(&self.mterm(a, slots), self.gterm(g, slots)),
        }
    }

    fn gterm(&self, t: &GTerm, slots: &[Slot<'a, S::Elem>]) -> GranularId {
        let l = self.space.lattice();
        match t {
            GTerm::Var(v) => match slots[v.index()] {
                Slot::G(g) => g,
                _ => unreachable!("granular variable {} unbound", v.0),
            },
            GTerm::Top => l.top(),
            GTerm::Bottom => l.bottom().expect("bottom checked before evaluation"),
            GTerm::Join(a, b) => l.join_id(self.gterm(a, slots), self.gterm(b, slots)),
            GTerm::Meet(a, b) => l.meet_id(self.gterm(a, slots), self.gterm(b, slots)),
        }
    }

    fn holds(&self, law: &Law, f: &Formula, slots: &mut Vec<Slot<'a, S::Elem>>) -> bool {
        match f {
            Formula::MEq(a, b) => self.mterm(a, slots) == self.mterm(b, slots),
            Formula::GEq(a, b) => self.gterm(a, slots) == self.gterm(b, slots),
            Formula::And(fs) => fs.iter().all(|f| self.holds(law, f, slots)),
            Formula::Implies(h, c) => !self.holds(law, h, slots) || self.holds(law, c, slots),
            Formula::Exists(v, f) => self.quantify(law, *v, f, slots, true),
            Formula::Forall(v, f) => !self.quantify(law, *v, f, slots, false),
        }
    }

    /// Searches the domain of `v` for a value making `f` evaluate to `want`.
    fn quantify(
        &self,
        law: &Law,
        v: VarId,
        f: &Formula,
        slots: &mut Vec<Slot<'a, S::Elem>>,
        want: bool,
    ) -> bool {
        let saved = slots[v.index()];
        let mut found = false;
        match law.var(v).sort {
            Sort::Mnesor => {
                for e in self.carrier {
                    slots[v.index()] = Slot::M(e);
                    if self.holds(law, f, slots) == want {
                        found = true;
                        break;
                    }
                }
            }
            Sort::Granular => {
                for g in 0..self.granulars as u32 {
                    slots[v.index()] = Slot::G(GranularId(g));
                    if self.holds(law, f, slots) == want {
                        found = true;
                        break;
                    }
                }
            }
        }
        slots[v.index()] = saved;
        found
    }

    fn domain_len(&self, sort: Sort) -> usize {
        match sort {
            Sort::Mnesor => self.carrier.len(),
            Sort::Granular => self.granulars,
        }
    }

    fn fill(&self, law: &Law, free: &[VarId], idx: &[usize], slots: &mut [Slot<'a, S::Elem>]) {
        for (v, &i) in free.iter().zip(idx) {
            slots[v.index()] = match law.var(*v).sort {
                Sort::Mnesor => Slot::M(&self.carrier[i]),
                Sort::Granular => Slot::G(GranularId(i as u32)),
            };
        }
    }

    fn key(&self, law: &Law, free: &[VarId], idx: &[usize]) -> (usize, Vec<usize>) {
        let weight = free
            .iter()
            .zip(idx)
            .filter(|(v, _)| law.var(**v).sort == Sort::Mnesor)
            .map(|(_, &i)| self.space.weight(&self.carrier[i]))
            .sum();
        (weight, idx.to_vec())
    }

    /// Visits every assignment of the free variables; returns the number
    /// of instances and the least violating assignment, if any.
    fn scan(&self, law: &Law, limit: Option<&(usize, Vec<usize>)>) -> (u64, Option<Vec<usize>>) {
        let free = law.free_vars();
        let dims: Vec<usize> = free
            .iter()
            .map(|v| self.domain_len(law.var(*v).sort))
            .collect();
        let mut slots = vec![Slot::Empty; law.vars.len()];
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut instances = 0u64;
        if dims.contains(&0) {
            return (0, None);
        }
        let mut idx = vec![0usize; free.len()];
        loop {
            let key = self.key(law, &free, &idx);
            let worth = limit.is_none_or(|l| key <= *l) && best.as_ref().is_none_or(|b| key < *b);
            instances += 1;
            // assignments ranked above the current best cannot change the result
            if worth {
                self.fill(law, &free, &idx, &mut slots);
                if !self.holds(law, &law.body, &mut slots) {
                    best = Some(key);
                }
            }
            // odometer, last variable fastest
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    return (instances, best.map(|(_, i)| i));
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < dims[pos] {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    fn binding(&self, law: &Law, free: &[VarId], idx: &[usize]) -> Binding<S::Elem> {
        Binding {
            values: free
                .iter()
                .zip(idx)
                .map(|(v, &i)| {
                    let decl = law.var(*v);
                    let val = match decl.sort {
                        Sort::Mnesor => Value::Mnesor(self.carrier[i].clone()),
                        Sort::Granular => Value::Granular(GranularId(i as u32)),
                    };
                    (decl.name, val)
                })
                .collect(),
        }
    }

    /// Positions of a binding's values in their domains.
    fn locate(&self, law: &Law, binding: &Binding<S::Elem>) -> Result<Vec<usize>, CheckError> {
        let free = law.free_vars();
        if free.len() != binding.values.len() {
            return Err(CheckError::BadBinding(law.name));
        }
        free.iter()
            .zip(&binding.values)
            .map(|(v, (name, val))| {
                let decl = law.var(*v);
                if decl.name != *name {
                    return Err(CheckError::BadBinding(law.name));
                }
                match (decl.sort, val) {
                    (Sort::Mnesor, Value::Mnesor(e)) => self
                        .carrier
                        .iter()
                        .position(|c| c == e)
                        .ok_or(CheckError::BadBinding(law.name)),
                    (Sort::Granular, Value::Granular(g)) if g.index() < self.granulars => {
                        Ok(g.index())
                    }
                    _ => Err(CheckError::BadBinding(law.name)),
                }
            })
            .collect()
    }
}

fn skip_reason<S: MnesorSpace + ?Sized>(s: &S, law: &Law) -> Option<String> {
    if law.uses_bottom() && s.lattice().bottom().is_none() {
        Some("lattice has no bottom element".to_string())
    } else {
        None
    }
}

/// Evaluates `law` on every assignment of its free variables.
pub fn check_law<S: MnesorSpace + ?Sized>(s: &S, law: &Law, b: CheckBounds) -> LawResult<S::Elem> {
    if let Some(reason) = skip_reason(s, law) {
        return LawResult {
            name: law.name,
            status: Status::Skipped(reason),
            instances_checked: 0,
            counterexample: None,
        };
    }
    let carrier = s.enumerate(b.max_mnesor_enumeration);
    let ev = Evaluator {
        space: s,
        carrier: &carrier,
        granulars: s.lattice().len(),
    };
    let (instances, worst) = ev.scan(law, None);
    let counterexample = worst.map(|idx| ev.binding(law, &law.free_vars(), &idx));
    if let Some(cx) = &counterexample {
        assert_eq!(
            violates(s, law, cx, b),
            Ok(true),
            "counterexample for {} does not re-evaluate to a violation",
            law.name
        );
    }
    LawResult {
        name: law.name,
        status: if counterexample.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        instances_checked: instances,
        counterexample,
    }
}

/// [`check_law`] by catalog name.
pub fn check_law_named<S: MnesorSpace + ?Sized>(
    s: &S,
    name: &str,
    b: CheckBounds,
) -> Result<LawResult<S::Elem>, CheckError> {
    let cat = catalog();
    let law = cat
        .get(name)
        .ok_or_else(|| CheckError::UnknownLaw(name.to_string()))?;
    Ok(check_law(s, law, b))
}

/// One result per catalog law, in catalog order.
pub fn check_all<S: MnesorSpace + ?Sized>(s: &S, b: CheckBounds) -> ComplianceReport<S::Elem> {
    let results = catalog().iter().map(|law| check_law(s, law, b)).collect();
    report(s, b, results)
}

/// Assembles a report from results already in catalog order.
pub fn report<S: MnesorSpace + ?Sized>(
    s: &S,
    b: CheckBounds,
    results: Vec<LawResult<S::Elem>>,
) -> ComplianceReport<S::Elem> {
    ComplianceReport {
        model: s.describe(),
        lattice: s.lattice().name().to_string(),
        bounds: b,
        total: s.is_total(b.max_mnesor_enumeration),
        results,
    }
}

/// Whether `binding` is a violating instance of `law`.
pub fn violates<S: MnesorSpace + ?Sized>(
    s: &S,
    law: &Law,
    binding: &Binding<S::Elem>,
    b: CheckBounds,
) -> Result<bool, CheckError> {
    if skip_reason(s, law).is_some() {
        return Err(CheckError::MissingBottom(law.name));
    }
    let carrier = s.enumerate(b.max_mnesor_enumeration);
    let ev = Evaluator {
        space: s,
        carrier: &carrier,
        granulars: s.lattice().len(),
    };
    let idx = ev.locate(law, binding)?;
    let mut slots = vec![Slot::Empty; law.vars.len()];
    ev.fill(law, &law.free_vars(), &idx, &mut slots);
    Ok(!ev.holds(law, &law.body, &mut slots))
}

/// The least violating binding that ranks no higher than `binding`.
pub fn minimize<S: MnesorSpace + ?Sized>(
    s: &S,
    law: &Law,
    binding: &Binding<S::Elem>,
    b: CheckBounds,
) -> Result<Binding<S::Elem>, CheckError> {
    if !violates(s, law, binding, b)? {
        return Err(CheckError::NotViolating(law.name));
    }
    let carrier = s.enumerate(b.max_mnesor_enumeration);
    let ev = Evaluator {
        space: s,
        carrier: &carrier,
        granulars: s.lattice().len(),
    };
    let free = law.free_vars();
    let idx = ev.locate(law, binding)?;
    let limit = ev.key(law, &free, &idx);
    let (_, best) = ev.scan(law, Some(&limit));
    let best = best.expect("the binding itself violates");
    Ok(ev.binding(law, &free, &best))
}
