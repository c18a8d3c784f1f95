//! Duplicate-free ordered tuples over a named universe.
//!
//! Addition concatenates and drops every entry already present earlier
//! (keep-first). Granulars are subsets of the universe and act by keeping
//! exactly the entries they contain, in order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::MnesorSpace;
use crate::lattice::{FiniteLattice, Granular, GranularId, LatticeError, MAX_POWERSET_ATOMS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("atom `{0}` appears twice")]
    DuplicateAtom(String),
    #[error("value does not belong to this universe")]
    UniverseMismatch,
    #[error("universe must not exceed {MAX_POWERSET_ATOMS} atoms (got {0})")]
    TooManyAtoms(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Ordered list of distinct atom names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    atoms: Vec<String>,
}

impl Universe {
    pub fn new<S: AsRef<str>>(atoms: &[S]) -> Result<Self, SeqError> {
        if atoms.len() > MAX_POWERSET_ATOMS {
            return Err(SeqError::TooManyAtoms(atoms.len()));
        }
        let mut seen = BTreeMap::new();
        for a in atoms {
            if seen.insert(a.as_ref(), ()).is_some() {
                return Err(SeqError::DuplicateAtom(a.as_ref().to_string()));
            }
        }
        Ok(Universe {
            atoms: atoms.iter().map(|a| a.as_ref().to_string()).collect(),
        })
    }

    /// `a, b, c, ...`
    pub fn letters(n: usize) -> Result<Self, SeqError> {
        let names: Vec<String> = (0..n).map(crate::lattice::atom_name).collect();
        Self::new(&names)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom_id(&self, name: &str) -> Option<u8> {
        self.atoms.iter().position(|a| a == name).map(|i| i as u8)
    }

    /// Builds a tuple from atom names, rejecting unknown or repeated atoms.
    pub fn tuple<S: AsRef<str>>(&self, names: &[S]) -> Result<SeqMnesor, SeqError> {
        let mut entries = Vec::with_capacity(names.len());
        let mut mask = 0u32;
        for n in names {
            let id = self
                .atom_id(n.as_ref())
                .ok_or_else(|| SeqError::UnknownAtom(n.as_ref().to_string()))?;
            if mask & (1 << id) != 0 {
                return Err(SeqError::DuplicateAtom(n.as_ref().to_string()));
            }
            mask |= 1 << id;
            entries.push(id);
        }
        Ok(SeqMnesor { entries })
    }

    /// Subset mask of the named atoms (order and repeats are irrelevant).
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<GranularId, SeqError> {
        let mut mask = 0u32;
        for n in names {
            let id = self
                .atom_id(n.as_ref())
                .ok_or_else(|| SeqError::UnknownAtom(n.as_ref().to_string()))?;
            mask |= 1 << id;
        }
        Ok(GranularId(mask))
    }

    /// The first `n` atoms.
    pub fn truncate(&self, n: usize) -> Universe {
        Universe {
            atoms: self.atoms[..n.min(self.atoms.len())].to_vec(),
        }
    }
}

/// A column tuple: atom ids in order, each at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeqMnesor {
    entries: Vec<u8>,
}

impl SeqMnesor {
    pub fn empty() -> Self {
        SeqMnesor::default()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn mask(&self) -> u32 {
        self.entries.iter().fold(0, |m, &e| m | (1 << e))
    }
}

/// Keep-first concatenation.
pub fn add(x: &SeqMnesor, y: &SeqMnesor) -> SeqMnesor {
    let mut seen = x.mask();
    let mut entries = x.entries.clone();
    for &e in &y.entries {
        if seen & (1 << e) == 0 {
            seen |= 1 << e;
            entries.push(e);
        }
    }
    SeqMnesor { entries }
}

/// Order-preserving filter by a subset mask.
pub fn act(x: &SeqMnesor, g: GranularId) -> SeqMnesor {
    SeqMnesor {
        entries: x
            .entries
            .iter()
            .copied()
            .filter(|&e| g.0 & (1 << e) != 0)
            .collect(),
    }
}

/// The set of atoms occurring in `x`; a canonical absorption witness.
pub fn support(x: &SeqMnesor) -> GranularId {
    GranularId(x.mask())
}

/// All duplicate-free tuples of length at most `max_len` over `n` atoms,
/// by length and then lexicographically by atom index.
pub fn enumerate(n: usize, max_len: usize) -> Vec<SeqMnesor> {
    let max_len = max_len.min(n);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(max_len);
    for len in 0..=max_len {
        permutations(n, len, &mut cur, 0, &mut out);
    }
    out
}

fn permutations(n: usize, len: usize, cur: &mut Vec<u8>, used: u32, out: &mut Vec<SeqMnesor>) {
    if cur.len() == len {
        out.push(SeqMnesor {
            entries: cur.clone(),
        });
        return;
    }
    for a in 0..n as u8 {
        if used & (1 << a) == 0 {
            cur.push(a);
            permutations(n, len, cur, used | (1 << a), out);
            cur.pop();
        }
    }
}

/// Column tuples over a universe, acted on by its powerset.
#[derive(Clone, Debug)]
pub struct SeqSpace {
    universe: Universe,
    lattice: FiniteLattice,
    named: Vec<(String, GranularId)>,
}

impl SeqSpace {
    pub fn new(universe: Universe) -> Result<Self, SeqError> {
        let lattice = FiniteLattice::powerset(universe.atoms())?;
        Ok(SeqSpace {
            universe,
            lattice,
            named: Vec::new(),
        })
    }

    /// Space over the letters `a, b, ...`.
    pub fn letters(n: usize) -> Result<Self, SeqError> {
        Self::new(Universe::letters(n)?)
    }

    /// Adds a named granular (e.g. an organisation) as a subset of atoms.
    pub fn with_granular<S: AsRef<str>>(
        mut self,
        name: impl Into<String>,
        members: &[S],
    ) -> Result<Self, SeqError> {
        let id = self.universe.subset(members)?;
        self.named.push((name.into(), id));
        Ok(self)
    }

    /// Restricts to the first `n` atoms; named granulars are intersected.
    pub fn restrict(&self, n: usize) -> Result<Self, SeqError> {
        let universe = self.universe.truncate(n);
        let keep = (1u64 << universe.len()) - 1;
        let named = self
            .named
            .iter()
            .map(|(name, g)| (name.clone(), GranularId(g.0 & keep as u32)))
            .collect();
        let mut space = SeqSpace::new(universe)?;
        space.named = named;
        Ok(space)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn named_granulars(&self) -> &[(String, GranularId)] {
        &self.named
    }

    pub fn named(&self, name: &str) -> Option<GranularId> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, g)| *g)
    }

    fn check(&self, x: &SeqMnesor) -> Result<(), SeqError> {
        let n = self.universe.len();
        let mut seen = 0u32;
        for &e in &x.entries {
            if e as usize >= n || seen & (1 << e) != 0 {
                return Err(SeqError::UniverseMismatch);
            }
            seen |= 1 << e;
        }
        Ok(())
    }

    pub fn checked_add(&self, x: &SeqMnesor, y: &SeqMnesor) -> Result<SeqMnesor, SeqError> {
        self.check(x)?;
        self.check(y)?;
        Ok(add(x, y))
    }

    pub fn checked_act(&self, x: &SeqMnesor, g: Granular<'_>) -> Result<SeqMnesor, SeqError> {
        self.check(x)?;
        if !core::ptr::eq(g.lattice(), &self.lattice) {
            return Err(SeqError::UniverseMismatch);
        }
        Ok(act(x, g.id()))
    }

    pub fn support(&self, x: &SeqMnesor) -> Granular<'_> {
        Granular::new(&self.lattice, support(x)).expect("support lies in the universe")
    }

    pub fn atom_names(&self, x: &SeqMnesor) -> Vec<&str> {
        x.entries
            .iter()
            .map(|&e| self.universe.atoms[e as usize].as_str())
            .collect()
    }
}

impl MnesorSpace for SeqSpace {
    type Elem = SeqMnesor;

    fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    fn zero(&self) -> SeqMnesor {
        SeqMnesor::empty()
    }

    fn add(&self, x: &SeqMnesor, y: &SeqMnesor) -> SeqMnesor {
        add(x, y)
    }

    fn act(&self, x: &SeqMnesor, g: GranularId) -> SeqMnesor {
        act(x, g)
    }

    fn enumerate(&self, bound: usize) -> Vec<SeqMnesor> {
        enumerate(self.universe.len(), bound)
    }

    fn is_total(&self, bound: usize) -> bool {
        bound >= self.universe.len()
    }

    fn weight(&self, x: &SeqMnesor) -> usize {
        x.len()
    }

    fn render(&self, x: &SeqMnesor) -> String {
        format!("[{}]", self.atom_names(x).join(" "))
    }

    fn describe(&self) -> String {
        format!("seq:{}", self.universe.len())
    }
}

/// The geography universe with the organisation granulars used in the
/// worked examples. Memberships beyond the documented ones are arbitrary.
pub fn geo_fixture() -> SeqSpace {
    const COUNTRIES: [&str; 17] = [
        "France",
        "Poland",
        "Germany",
        "Luxembourg",
        "Russia",
        "Sweden",
        "Slovenia",
        "Slovakia",
        "Italy",
        "Switzerland",
        "Spain",
        "Denmark",
        "Norway",
        "Rumania",
        "Serbia",
        "India",
        "Taiwan",
    ];
    let eu = [
        "France",
        "Poland",
        "Germany",
        "Luxembourg",
        "Sweden",
        "Slovenia",
        "Slovakia",
        "Italy",
        "Spain",
        "Denmark",
        "Rumania",
    ];
    let nato = [
        "France",
        "Poland",
        "Germany",
        "Luxembourg",
        "Sweden",
        "Slovenia",
        "Slovakia",
        "Italy",
        "Spain",
        "Denmark",
        "Norway",
        "Rumania",
    ];
    let ioc: Vec<&str> = COUNTRIES
        .iter()
        .copied()
        .filter(|c| *c != "Taiwan")
        .collect();
    SeqSpace::new(Universe::new(&COUNTRIES).expect("distinct"))
        .and_then(|s| s.with_granular("EU", &eu))
        .and_then(|s| s.with_granular("NATO", &nato))
        .and_then(|s| s.with_granular("IOC", &ioc))
        .and_then(|s| s.with_granular("UN", &COUNTRIES))
        .expect("geo fixture is well-formed")
}
