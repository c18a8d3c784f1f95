//! Finite bounded lattices given by explicit join/meet tables.
//!
//! Every lattice is a finite carrier `0..len` of [`GranularId`]s. Table
//! lattices store both operation tables; powerset lattices are kept in
//! bitmask form (element id = subset mask) so that large universes stay
//! enumerable without materialising a `2^n x 2^n` table.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest atom count accepted by [`FiniteLattice::powerset`].
pub const MAX_POWERSET_ATOMS: usize = 20;

/// Largest carrier accepted for table lattices (tables are `len * len`).
pub const MAX_TABLE_ELEMENTS: usize = 1024;

/// Index of an element inside one lattice instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GranularId(pub u32);

impl GranularId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("granulars belong to different lattices")]
    DomainMismatch,
    #[error("element id {0} is not in the carrier")]
    UnknownElement(u32),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("table is not total: expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("lattice must have at least one element")]
    Empty,
    #[error("carrier too large ({0} elements)")]
    TooLarge(usize),
    #[error("cover relation does not define a lattice: {0}")]
    NotALattice(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Ops {
    Table {
        join: Vec<u32>,
        meet: Vec<u32>,
    },
    /// Powerset in bitmask form: join = OR, meet = AND.
    Bits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Labels {
    Explicit(Vec<String>),
    Atoms(Vec<String>),
}

/// An explicit finite bounded lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    name: String,
    len: usize,
    ops: Ops,
    labels: Labels,
    top: GranularId,
    bottom: Option<GranularId>,
}

/// A lattice element tied to the lattice it lives in.
#[derive(Clone, Copy, Debug)]
pub struct Granular<'l> {
    lattice: &'l FiniteLattice,
    id: GranularId,
}

impl PartialEq for Granular<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.lattice, other.lattice) && self.id == other.id
    }
}

impl Eq for Granular<'_> {}

impl<'l> Granular<'l> {
    pub fn new(lattice: &'l FiniteLattice, id: GranularId) -> Result<Self, LatticeError> {
        if id.index() >= lattice.len() {
            return Err(LatticeError::UnknownElement(id.0));
        }
        Ok(Granular { lattice, id })
    }

    pub fn id(self) -> GranularId {
        self.id
    }

    pub fn lattice(self) -> &'l FiniteLattice {
        self.lattice
    }

    fn same_lattice(self, other: Self) -> Result<(), LatticeError> {
        if core::ptr::eq(self.lattice, other.lattice) {
            Ok(())
        } else {
            Err(LatticeError::DomainMismatch)
        }
    }

    pub fn join(self, other: Self) -> Result<Self, LatticeError> {
        self.same_lattice(other)?;
        Ok(Granular {
            lattice: self.lattice,
            id: self.lattice.join_id(self.id, other.id),
        })
    }

    pub fn meet(self, other: Self) -> Result<Self, LatticeError> {
        self.same_lattice(other)?;
        Ok(Granular {
            lattice: self.lattice,
            id: self.lattice.meet_id(self.id, other.id),
        })
    }

    /// `self <= other` in the lattice order, i.e. `self ⊕ other = other`.
    pub fn leq(self, other: Self) -> Result<bool, LatticeError> {
        self.same_lattice(other)?;
        Ok(self.lattice.leq_id(self.id, other.id))
    }
}

impl fmt::Display for Granular<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lattice.label(self.id))
    }
}

/// Lattice law checked by [`FiniteLattice::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LatticeLaw {
    JoinIdempotent,
    MeetIdempotent,
    JoinCommutative,
    MeetCommutative,
    JoinAssociative,
    MeetAssociative,
    AbsorbJoinMeet,
    AbsorbMeetJoin,
    TopJoin,
    TopMeet,
    BottomJoin,
    BottomMeet,
}

impl LatticeLaw {
    pub fn name(self) -> &'static str {
        match self {
            LatticeLaw::JoinIdempotent => "join-idempotent",
            LatticeLaw::MeetIdempotent => "meet-idempotent",
            LatticeLaw::JoinCommutative => "join-commutative",
            LatticeLaw::MeetCommutative => "meet-commutative",
            LatticeLaw::JoinAssociative => "join-associative",
            LatticeLaw::MeetAssociative => "meet-associative",
            LatticeLaw::AbsorbJoinMeet => "absorption a+(a*b)=a",
            LatticeLaw::AbsorbMeetJoin => "absorption a*(a+b)=a",
            LatticeLaw::TopJoin => "a+top=top",
            LatticeLaw::TopMeet => "a*top=a",
            LatticeLaw::BottomJoin => "a+bottom=a",
            LatticeLaw::BottomMeet => "a*bottom=bottom",
        }
    }
}

/// One failed lattice law together with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: LatticeLaw,
    pub witnesses: Vec<GranularId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at", self.law.name())?;
        for w in &self.witnesses {
            write!(f, " #{}", w.0)?;
        }
        Ok(())
    }
}

impl FiniteLattice {
    /// Builds a lattice from explicit tables, indexed `a * len + b`.
    ///
    /// The tables only need to be total; whether they form a lattice is
    /// reported by [`validate`](Self::validate).
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        join: Vec<u32>,
        meet: Vec<u32>,
        top: GranularId,
        bottom: Option<GranularId>,
    ) -> Result<Self, LatticeError> {
        let len = labels.len();
        if len == 0 {
            return Err(LatticeError::Empty);
        }
        if len > MAX_TABLE_ELEMENTS {
            return Err(LatticeError::TooLarge(len));
        }
        let mut seen = BTreeMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        for table in [&join, &meet] {
            if table.len() != len * len {
                return Err(LatticeError::ShapeMismatch {
                    expected: len * len,
                    found: table.len(),
                });
            }
            if let Some(&bad) = table.iter().find(|&&v| v as usize >= len) {
                return Err(LatticeError::UnknownElement(bad));
            }
        }
        for id in core::iter::once(top).chain(bottom) {
            if id.index() >= len {
                return Err(LatticeError::UnknownElement(id.0));
            }
        }
        Ok(FiniteLattice {
            name: name.into(),
            len,
            ops: Ops::Table { join, meet },
            labels: Labels::Explicit(labels),
            top,
            bottom,
        })
    }

    /// Subsets of `atoms` ordered by inclusion. Element id is the subset
    /// bitmask, bit `i` standing for `atoms[i]`.
    pub fn powerset<S: AsRef<str>>(atoms: &[S]) -> Result<Self, LatticeError> {
        if atoms.len() > MAX_POWERSET_ATOMS {
            return Err(LatticeError::TooLarge(1usize << atoms.len().min(63)));
        }
        let atoms: Vec<String> = atoms.iter().map(|a| a.as_ref().to_string()).collect();
        let mut seen = BTreeMap::new();
        for a in &atoms {
            if seen.insert(a.as_str(), ()).is_some() {
                return Err(LatticeError::DuplicateLabel(a.clone()));
            }
        }
        let len = 1usize << atoms.len();
        Ok(FiniteLattice {
            name: format!("powerset:{}", atoms.len()),
            len,
            ops: Ops::Bits,
            labels: Labels::Atoms(atoms),
            top: GranularId((len - 1) as u32),
            bottom: Some(GranularId(0)),
        })
    }

    /// Powerset over the first `n` letters `a, b, c, ...`.
    pub fn powerset_n(n: usize) -> Result<Self, LatticeError> {
        let atoms: Vec<String> = (0..n).map(atom_name).collect();
        Self::powerset(&atoms)
    }

    /// Totally ordered `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mut lat = Self::from_fn(labels, |a, b| a.max(b), |a, b| a.min(b))?;
        lat.top = GranularId((n - 1) as u32);
        lat.bottom = Some(GranularId(0));
        lat.name = format!("chain:{n}");
        Ok(lat)
    }

    pub fn two_point() -> Self {
        let mut lat = Self::chain(2).expect("chain(2) is valid");
        lat.name = "two_point".to_string();
        lat
    }

    /// The diamond: bottom, three pairwise incomparable atoms, top.
    pub fn diamond_m3() -> Self {
        Self::from_cover_relation(
            "m3",
            &["0", "a", "b", "c", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ],
        )
        .expect("m3 is a lattice")
    }

    /// The pentagon: `0 < a < b < 1` with `c` incomparable to `a` and `b`.
    pub fn pentagon_n5() -> Self {
        Self::from_cover_relation(
            "n5",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .expect("n5 is a lattice")
    }

    /// Componentwise product; element `(i, j)` has id `i * right.len() + j`.
    pub fn product(left: &FiniteLattice, right: &FiniteLattice) -> Result<Self, LatticeError> {
        let (n, m) = (left.len(), right.len());
        if n.saturating_mul(m) > MAX_TABLE_ELEMENTS {
            return Err(LatticeError::TooLarge(n.saturating_mul(m)));
        }
        let split = |p: usize| (GranularId((p / m) as u32), GranularId((p % m) as u32));
        let pack = |a: GranularId, b: GranularId| a.index() * m + b.index();
        let labels = (0..n * m)
            .map(|p| {
                let (a, b) = split(p);
                format!("({},{})", left.label(a), right.label(b))
            })
            .collect();
        let mut lat = Self::from_fn(
            labels,
            |p, q| {
                let ((a1, b1), (a2, b2)) = (split(p), split(q));
                pack(left.join_id(a1, a2), right.join_id(b1, b2))
            },
            |p, q| {
                let ((a1, b1), (a2, b2)) = (split(p), split(q));
                pack(left.meet_id(a1, a2), right.meet_id(b1, b2))
            },
        )?;
        lat.top = GranularId(pack(left.top, right.top) as u32);
        lat.bottom = match (left.bottom, right.bottom) {
            (Some(a), Some(b)) => Some(GranularId(pack(a, b) as u32)),
            _ => None,
        };
        lat.name = format!("product({},{})", left.name, right.name);
        Ok(lat)
    }

    /// Builds a lattice from the covering pairs `(lower, upper)` of its order.
    pub fn from_cover_relation<S: AsRef<str>>(
        name: &str,
        elements: &[S],
        edges: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let labels: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > MAX_TABLE_ELEMENTS {
            return Err(LatticeError::TooLarge(n));
        }
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != n {
            let dup = labels
                .iter()
                .enumerate()
                .find(|(i, l)| index[l.as_str()] != *i)
                .map(|(_, l)| l.clone())
                .unwrap_or_default();
            return Err(LatticeError::DuplicateLabel(dup));
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| LatticeError::UnknownLabel(s.to_string()))
        };
        // reflexive-transitive closure
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (lo, hi) in edges {
            le[lookup(lo.as_ref())? * n + lookup(hi.as_ref())?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if le[i * n + j] && le[j * n + i] {
                    return Err(LatticeError::NotALattice(format!(
                        "cycle through `{}` and `{}`",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let lub = extremum(n, |c| le[a * n + c] && le[b * n + c], |x, y| le[x * n + y]);
                let glb = extremum(n, |c| le[c * n + a] && le[c * n + b], |x, y| le[y * n + x]);
                match (lub, glb) {
                    (Some(j), Some(m)) => {
                        join[a * n + b] = j as u32;
                        meet[a * n + b] = m as u32;
                    }
                    _ => {
                        return Err(LatticeError::NotALattice(format!(
                            "`{}` and `{}` lack a unique join or meet",
                            labels[a], labels[b]
                        )))
                    }
                }
            }
        }
        let top = extremum(n, |_| true, |x, y| le[y * n + x])
            .ok_or_else(|| LatticeError::NotALattice("no greatest element".to_string()))?;
        let bottom = extremum(n, |_| true, |x, y| le[x * n + y])
            .ok_or_else(|| LatticeError::NotALattice("no least element".to_string()))?;
        let mut lat = FiniteLattice::from_tables(
            name,
            labels,
            join,
            meet,
            GranularId(top as u32),
            Some(GranularId(bottom as u32)),
        )?;
        lat.name = name.to_string();
        Ok(lat)
    }

    fn from_fn(
        labels: Vec<String>,
        join: impl Fn(usize, usize) -> usize,
        meet: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut jt = Vec::with_capacity(n * n);
        let mut mt = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                jt.push(join(a, b) as u32);
                mt.push(meet(a, b) as u32);
            }
        }
        FiniteLattice::from_tables("table", labels, jt, mt, GranularId(0), None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn top(&self) -> GranularId {
        self.top
    }

    pub fn bottom(&self) -> Option<GranularId> {
        self.bottom
    }

    /// Atom names when this lattice is a powerset in bitmask form.
    pub fn powerset_atoms(&self) -> Option<&[String]> {
        match (&self.ops, &self.labels) {
            (Ops::Bits, Labels::Atoms(a)) => Some(a),
            _ => None,
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = GranularId> + Clone {
        (0..self.len as u32).map(GranularId)
    }

    pub fn granular(&self, id: GranularId) -> Result<Granular<'_>, LatticeError> {
        Granular::new(self, id)
    }

    pub fn granulars(&self) -> impl Iterator<Item = Granular<'_>> + '_ {
        self.ids().map(move |id| Granular { lattice: self, id })
    }

    pub fn top_granular(&self) -> Granular<'_> {
        Granular {
            lattice: self,
            id: self.top,
        }
    }

    pub fn bottom_granular(&self) -> Option<Granular<'_>> {
        self.bottom.map(|id| Granular { lattice: self, id })
    }

    #[inline]
    pub fn join_id(&self, a: GranularId, b: GranularId) -> GranularId {
        match &self.ops {
            Ops::Table { join, .. } => GranularId(join[a.index() * self.len + b.index()]),
            Ops::Bits => GranularId(a.0 | b.0),
        }
    }

    #[inline]
    pub fn meet_id(&self, a: GranularId, b: GranularId) -> GranularId {
        match &self.ops {
            Ops::Table { meet, .. } => GranularId(meet[a.index() * self.len + b.index()]),
            Ops::Bits => GranularId(a.0 & b.0),
        }
    }

    #[inline]
    pub fn leq_id(&self, a: GranularId, b: GranularId) -> bool {
        self.join_id(a, b) == b
    }

    /// Display label: the table label, or `{a b}` for powerset elements.
    pub fn label(&self, id: GranularId) -> String {
        match &self.labels {
            Labels::Explicit(l) => l[id.index()].clone(),
            Labels::Atoms(atoms) => {
                let mut out = String::from("{");
                let mut first = true;
                for (i, a) in atoms.iter().enumerate() {
                    if id.0 & (1 << i) != 0 {
                        if !first {
                            out.push(' ');
                        }
                        out.push_str(a);
                        first = false;
                    }
                }
                out.push('}');
                out
            }
        }
    }

    /// Looks up an element by label. Powerset lattices also accept atom
    /// names, resolved to the singleton.
    pub fn find(&self, label: &str) -> Option<GranularId> {
        match &self.labels {
            Labels::Explicit(l) => l
                .iter()
                .position(|x| x == label)
                .map(|i| GranularId(i as u32)),
            Labels::Atoms(atoms) => atoms
                .iter()
                .position(|a| a == label)
                .map(|i| GranularId(1 << i)),
        }
    }

    /// Checks every bounded-lattice law by table scan. Returns one violation
    /// per law, carrying the first witnessing elements in id order.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let ids: Vec<GranularId> = self.ids().collect();
        let mut first = |law: LatticeLaw, found: Option<Vec<GranularId>>| {
            if let Some(witnesses) = found {
                out.push(Violation { law, witnesses });
            }
        };
        let j = |a, b| self.join_id(a, b);
        let m = |a, b| self.meet_id(a, b);

        first(
            LatticeLaw::JoinIdempotent,
            ids.iter().find(|&&a| j(a, a) != a).map(|&a| vec![a]),
        );
        first(
            LatticeLaw::MeetIdempotent,
            ids.iter().find(|&&a| m(a, a) != a).map(|&a| vec![a]),
        );
        first(
            LatticeLaw::JoinCommutative,
            find_pair(&ids, |a, b| j(a, b) != j(b, a)),
        );
        first(
            LatticeLaw::MeetCommutative,
            find_pair(&ids, |a, b| m(a, b) != m(b, a)),
        );
        first(
            LatticeLaw::JoinAssociative,
            find_triple(&ids, |a, b, c| j(j(a, b), c) != j(a, j(b, c))),
        );
        first(
            LatticeLaw::MeetAssociative,
            find_triple(&ids, |a, b, c| m(m(a, b), c) != m(a, m(b, c))),
        );
        first(
            LatticeLaw::AbsorbJoinMeet,
            find_pair(&ids, |a, b| j(a, m(a, b)) != a),
        );
        first(
            LatticeLaw::AbsorbMeetJoin,
            find_pair(&ids, |a, b| m(a, j(a, b)) != a),
        );
        let top = self.top;
        first(
            LatticeLaw::TopJoin,
            ids.iter()
                .find(|&&a| j(a, top) != top)
                .map(|&a| vec![a, top]),
        );
        first(
            LatticeLaw::TopMeet,
            ids.iter().find(|&&a| m(a, top) != a).map(|&a| vec![a, top]),
        );
        if let Some(bot) = self.bottom {
            first(
                LatticeLaw::BottomJoin,
                ids.iter().find(|&&a| j(a, bot) != a).map(|&a| vec![a, bot]),
            );
            first(
                LatticeLaw::BottomMeet,
                ids.iter()
                    .find(|&&a| m(a, bot) != bot)
                    .map(|&a| vec![a, bot]),
            );
        }
        out
    }

    /// `Ok(())` when `a ⊗ (b ⊕ c) = (a ⊗ b) ⊕ (a ⊗ c)` for every triple,
    /// otherwise the first violating triple in id order.
    pub fn is_distributive(&self) -> Result<(), [GranularId; 3]> {
        let ids: Vec<GranularId> = self.ids().collect();
        match find_triple(&ids, |a, b, c| {
            self.meet_id(a, self.join_id(b, c))
                != self.join_id(self.meet_id(a, b), self.meet_id(a, c))
        }) {
            Some(w) => Err([w[0], w[1], w[2]]),
            None => Ok(()),
        }
    }
}

impl fmt::Display for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Name of the `i`-th default atom: `a..z`, then `a26`, `a27`, ...
pub fn atom_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("a{i}")
    }
}

/// The unique element among `candidates` that is below (per `below`)
/// every other candidate.
fn extremum(
    n: usize,
    candidate: impl Fn(usize) -> bool,
    below: impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let cands: Vec<usize> = (0..n).filter(|&c| candidate(c)).collect();
    cands
        .iter()
        .copied()
        .find(|&c| cands.iter().all(|&d| below(c, d)))
}

fn find_pair(
    ids: &[GranularId],
    bad: impl Fn(GranularId, GranularId) -> bool,
) -> Option<Vec<GranularId>> {
    for &a in ids {
        for &b in ids {
            if bad(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn find_triple(
    ids: &[GranularId],
    bad: impl Fn(GranularId, GranularId, GranularId) -> bool,
) -> Option<Vec<GranularId>> {
    for &a in ids {
        for &b in ids {
            for &c in ids {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}
