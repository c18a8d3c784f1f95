//! The mnesor-space contract and the catalog of laws a model is checked
//! against.
//!
//! Laws are plain data: a list of sorted variables and a [`Formula`] over
//! [`MTerm`]/[`GTerm`] trees. Variables not bound by a quantifier inside the
//! formula are universally quantified over the enumerated carrier; the
//! checker needs nothing else to evaluate a law against any model.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::{FiniteLattice, GranularId};

/// A monoid `(M, +, 0)` acted on by a finite lattice.
///
/// Implementations describe one finite model: they enumerate their carrier
/// up to a size bound and expose the two operations the laws talk about.
pub trait MnesorSpace {
    type Elem: Clone + Eq + fmt::Debug;

    fn lattice(&self) -> &FiniteLattice;

    fn zero(&self) -> Self::Elem;

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// Granular multiplication `xλ`.
    fn act(&self, x: &Self::Elem, g: GranularId) -> Self::Elem;

    /// Carrier elements of size at most `bound`, in a fixed order.
    fn enumerate(&self, bound: usize) -> Vec<Self::Elem>;

    /// Whether `enumerate(bound)` is the whole carrier.
    fn is_total(&self, bound: usize) -> bool;

    /// Size used to rank counterexamples (entry count for tuples).
    fn weight(&self, x: &Self::Elem) -> usize;

    fn render(&self, x: &Self::Elem) -> String;

    /// Short model descriptor used in reports.
    fn describe(&self) -> String;
}

/// `x ≤ y` in the prefix order: `x + y = y`.
pub fn prefix_leq<S: MnesorSpace + ?Sized>(s: &S, x: &S::Elem, y: &S::Elem) -> bool {
    s.add(x, y) == *y
}

/// `x` and `y` are suffixes of each other: `x + y = x` and `y + x = y`.
pub fn is_anagram<S: MnesorSpace + ?Sized>(s: &S, x: &S::Elem, y: &S::Elem) -> bool {
    s.add(x, y) == *x && s.add(y, x) == *y
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Mnesor,
    Granular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u8);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub name: &'static str,
    pub sort: Sort,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MTerm {
    Var(VarId),
    Zero,
    Add(Box<MTerm>, Box<MTerm>),
    Act(Box<MTerm>, GTerm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GTerm {
    Var(VarId),
    Top,
    Bottom,
    Join(Box<GTerm>, Box<GTerm>),
    Meet(Box<GTerm>, Box<GTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    MEq(MTerm, MTerm),
    GEq(GTerm, GTerm),
    And(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(VarId, Box<Formula>),
    Forall(VarId, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    Axiom,
    Theorem,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Axiom => "axiom",
            Tier::Theorem => "theorem",
        }
    }
}

/// Variable counts of a law, bound variables included.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sorts {
    pub mnesor: usize,
    pub granular: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law {
    pub name: &'static str,
    pub tier: Tier,
    pub vars: Vec<VarDecl>,
    pub body: Formula,
}

impl Law {
    pub fn sorts(&self) -> Sorts {
        let mnesor = self.vars.iter().filter(|v| v.sort == Sort::Mnesor).count();
        Sorts {
            mnesor,
            granular: self.vars.len() - mnesor,
        }
    }

    /// Variables not bound by any quantifier in the body, in declaration
    /// order. These range over the enumerated carrier.
    pub fn free_vars(&self) -> Vec<VarId> {
        let mut bound = vec![false; self.vars.len()];
        mark_bound(&self.body, &mut bound);
        (0..self.vars.len())
            .filter(|&i| !bound[i])
            .map(|i| VarId(i as u8))
            .collect()
    }

    pub fn var(&self, v: VarId) -> &VarDecl {
        &self.vars[v.index()]
    }

    pub fn uses_bottom(&self) -> bool {
        formula_uses_bottom(&self.body)
    }

    /// The law rendered in expression syntax, e.g. `x * top = x`.
    pub fn statement(&self) -> String {
        alloc::format!(
            "{}",
            Display {
                law: self,
                f: &self.body
            }
        )
    }
}

fn mark_bound(f: &Formula, bound: &mut [bool]) {
    match f {
        Formula::MEq(..) | Formula::GEq(..) => {}
        Formula::And(fs) => fs.iter().for_each(|f| mark_bound(f, bound)),
        Formula::Implies(h, c) => {
            mark_bound(h, bound);
            mark_bound(c, bound);
        }
        Formula::Exists(v, f) | Formula::Forall(v, f) => {
            bound[v.index()] = true;
            mark_bound(f, bound);
        }
    }
}

fn formula_uses_bottom(f: &Formula) -> bool {
    fn g(t: &GTerm) -> bool {
        match t {
            GTerm::Bottom => true,
            GTerm::Var(_) | GTerm::Top => false,
            GTerm::Join(a, b) | GTerm::Meet(a, b) => g(a) || g(b),
        }
    }
    fn m(t: &MTerm) -> bool {
        match t {
            MTerm::Var(_) | MTerm::Zero => false,
            MTerm::Add(a, b) => m(a) || m(b),
            MTerm::Act(a, h) => m(a) || g(h),
        }
    }
    match f {
        Formula::MEq(a, b) => m(a) || m(b),
        Formula::GEq(a, b) => g(a) || g(b),
        Formula::And(fs) => fs.iter().any(formula_uses_bottom),
        Formula::Implies(h, c) => formula_uses_bottom(h) || formula_uses_bottom(c),
        Formula::Exists(_, f) | Formula::Forall(_, f) => formula_uses_bottom(f),
    }
}

struct Display<'a, T> {
    law: &'a Law,
    f: &'a T,
}

impl fmt::Display for Display<'_, Formula> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |x| Display {
            law: self.law,
            f: x,
        };
        let name = |v: &VarId| self.law.var(*v).name;
        match self.f {
            Formula::MEq(a, b) => write!(f, "{} = {}", sub_m(self.law, a), sub_m(self.law, b)),
            Formula::GEq(a, b) => write!(f, "{} = {}", sub_g(self.law, a), sub_g(self.law, b)),
            Formula::And(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" and ")?;
                    }
                    write!(f, "{}", sub(x))?;
                }
                Ok(())
            }
            Formula::Implies(h, c) => write!(f, "({}) => ({})", sub(h), sub(c)),
            Formula::Exists(v, x) => write!(f, "exists {}: {}", name(v), sub(x)),
            Formula::Forall(v, x) => write!(f, "forall {}: {}", name(v), sub(x)),
        }
    }
}

fn sub_m<'a>(law: &'a Law, t: &'a MTerm) -> Display<'a, MTerm> {
    Display { law, f: t }
}

fn sub_g<'a>(law: &'a Law, t: &'a GTerm) -> Display<'a, GTerm> {
    Display { law, f: t }
}

impl fmt::Display for Display<'_, MTerm> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.f {
            MTerm::Var(v) => f.write_str(self.law.var(*v).name),
            MTerm::Zero => f.write_str("0"),
            MTerm::Add(a, b) => {
                write!(f, "{} + ", sub_m(self.law, a))?;
                if matches!(**b, MTerm::Add(..)) {
                    write!(f, "({})", sub_m(self.law, b))
                } else {
                    write!(f, "{}", sub_m(self.law, b))
                }
            }
            MTerm::Act(a, g) => {
                if matches!(**a, MTerm::Add(..)) {
                    write!(f, "({})", sub_m(self.law, a))?;
                } else {
                    write!(f, "{}", sub_m(self.law, a))?;
                }
                if matches!(g, GTerm::Join(..)) {
                    write!(f, " * ({})", sub_g(self.law, g))
                } else {
                    write!(f, " * {}", sub_g(self.law, g))
                }
            }
        }
    }
}

impl fmt::Display for Display<'_, GTerm> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.f {
            GTerm::Var(v) => f.write_str(self.law.var(*v).name),
            GTerm::Top => f.write_str("top"),
            GTerm::Bottom => f.write_str("bot"),
            GTerm::Join(a, b) => {
                write!(f, "{} | ", sub_g(self.law, a))?;
                if matches!(**b, GTerm::Join(..)) {
                    write!(f, "({})", sub_g(self.law, b))
                } else {
                    write!(f, "{}", sub_g(self.law, b))
                }
            }
            GTerm::Meet(a, b) => {
                if matches!(**a, GTerm::Join(..)) {
                    write!(f, "({})", sub_g(self.law, a))?;
                } else {
                    write!(f, "{}", sub_g(self.law, a))?;
                }
                if matches!(**b, GTerm::Join(..) | GTerm::Meet(..)) {
                    write!(f, " & ({})", sub_g(self.law, b))
                } else {
                    write!(f, " & {}", sub_g(self.law, b))
                }
            }
        }
    }
}

/// Ordered list of laws, keyed by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCatalog {
    laws: Vec<Law>,
}

impl LawCatalog {
    pub fn laws(&self) -> &[Law] {
        &self.laws
    }

    pub fn len(&self) -> usize {
        self.laws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.laws.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Law> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Law> {
        self.laws.iter()
    }
}

impl core::ops::Index<&str> for LawCatalog {
    type Output = Law;

    fn index(&self, name: &str) -> &Law {
        self.get(name).expect("law not in catalog")
    }
}

impl<'a> IntoIterator for &'a LawCatalog {
    type Item = &'a Law;
    type IntoIter = core::slice::Iter<'a, Law>;

    fn into_iter(self) -> Self::IntoIter {
        self.laws.iter()
    }
}

// term constructors used by the catalog

fn mv(i: u8) -> MTerm {
    MTerm::Var(VarId(i))
}

fn gv(i: u8) -> GTerm {
    GTerm::Var(VarId(i))
}

fn add(a: MTerm, b: MTerm) -> MTerm {
    MTerm::Add(Box::new(a), Box::new(b))
}

fn act(a: MTerm, g: GTerm) -> MTerm {
    MTerm::Act(Box::new(a), g)
}

fn join(a: GTerm, b: GTerm) -> GTerm {
    GTerm::Join(Box::new(a), Box::new(b))
}

fn meet(a: GTerm, b: GTerm) -> GTerm {
    GTerm::Meet(Box::new(a), Box::new(b))
}

fn eq(a: MTerm, b: MTerm) -> Formula {
    Formula::MEq(a, b)
}

fn and(fs: Vec<Formula>) -> Formula {
    Formula::And(fs)
}

fn implies(h: Formula, c: Formula) -> Formula {
    Formula::Implies(Box::new(h), Box::new(c))
}

fn exists(v: u8, f: Formula) -> Formula {
    Formula::Exists(VarId(v), Box::new(f))
}

fn forall(v: u8, f: Formula) -> Formula {
    Formula::Forall(VarId(v), Box::new(f))
}

fn law(name: &'static str, tier: Tier, vars: &[(&'static str, Sort)], body: Formula) -> Law {
    Law {
        name,
        tier,
        vars: vars
            .iter()
            .map(|&(name, sort)| VarDecl { name, sort })
            .collect(),
        body,
    }
}

/// The pinned catalog: monoid and action axioms followed by the derived
/// theorems, in a fixed order.
pub fn catalog() -> LawCatalog {
    use Sort::{Granular as G, Mnesor as M};
    use Tier::{Axiom, Theorem};

    let laws = vec![
        law(
            "A-MON-ID",
            Axiom,
            &[("x", M)],
            and(vec![
                eq(add(MTerm::Zero, mv(0)), mv(0)),
                eq(add(mv(0), MTerm::Zero), mv(0)),
            ]),
        ),
        law(
            "A-MON-ASSOC",
            Axiom,
            &[("x", M), ("y", M), ("z", M)],
            eq(add(add(mv(0), mv(1)), mv(2)), add(mv(0), add(mv(1), mv(2)))),
        ),
        law(
            "A-UNITAL",
            Axiom,
            &[("x", M)],
            eq(act(mv(0), GTerm::Top), mv(0)),
        ),
        law(
            "A-MDIST",
            Axiom,
            &[("x", M), ("y", M), ("lambda", G)],
            eq(
                act(add(mv(0), mv(1)), gv(2)),
                add(act(mv(0), gv(2)), act(mv(1), gv(2))),
            ),
        ),
        law(
            "A-ASSOC-ACT",
            Axiom,
            &[("x", M), ("lambda", G), ("mu", G)],
            eq(
                act(act(mv(0), gv(1)), gv(2)),
                act(mv(0), meet(gv(1), gv(2))),
            ),
        ),
        law(
            "A-GDIST",
            Axiom,
            &[("x", M), ("lambda", G), ("mu", G)],
            eq(
                add(act(mv(0), gv(1)), act(mv(0), gv(2))),
                act(mv(0), join(gv(1), gv(2))),
            ),
        ),
        law(
            "A-ABSORB",
            Axiom,
            &[("x", M), ("y", M), ("alpha", G)],
            exists(2, eq(act(add(mv(0), mv(1)), gv(2)), mv(0))),
        ),
        law("T-IDEM", Theorem, &[("x", M)], eq(add(mv(0), mv(0)), mv(0))),
        law(
            "T-PRIORITY",
            Theorem,
            &[("x", M), ("y", M)],
            eq(add(add(mv(0), mv(1)), mv(0)), add(mv(0), mv(1))),
        ),
        law(
            "T-PFX-I-II",
            Theorem,
            &[("x", M), ("y", M), ("z", M), ("lambda", G)],
            implies(
                exists(2, eq(add(mv(1), mv(2)), mv(0))),
                exists(3, eq(act(mv(0), gv(3)), mv(1))),
            ),
        ),
        law(
            "T-PFX-II-III",
            Theorem,
            &[("x", M), ("y", M), ("lambda", G)],
            implies(
                exists(2, eq(act(mv(0), gv(2)), mv(1))),
                eq(add(mv(1), mv(0)), mv(0)),
            ),
        ),
        law(
            "T-PFX-III-I",
            Theorem,
            &[("x", M), ("y", M), ("z", M)],
            implies(
                eq(add(mv(1), mv(0)), mv(0)),
                exists(2, eq(add(mv(1), mv(2)), mv(0))),
            ),
        ),
        law(
            "T-ORD-REFL",
            Theorem,
            &[("x", M)],
            eq(add(mv(0), mv(0)), mv(0)),
        ),
        law(
            "T-ORD-TRANS",
            Theorem,
            &[("x", M), ("y", M), ("z", M)],
            implies(
                and(vec![
                    eq(add(mv(0), mv(1)), mv(1)),
                    eq(add(mv(1), mv(2)), mv(2)),
                ]),
                eq(add(mv(0), mv(2)), mv(2)),
            ),
        ),
        law(
            "T-ORD-ANTISYM",
            Theorem,
            &[("x", M), ("y", M)],
            implies(
                and(vec![
                    eq(add(mv(0), mv(1)), mv(1)),
                    eq(add(mv(1), mv(0)), mv(0)),
                ]),
                eq(mv(0), mv(1)),
            ),
        ),
        law(
            "T-COMPAT-ADD",
            Theorem,
            &[("x", M), ("y", M), ("a", M)],
            implies(
                eq(add(mv(0), mv(1)), mv(1)),
                eq(add(add(mv(0), mv(2)), add(mv(1), mv(2))), add(mv(1), mv(2))),
            ),
        ),
        law(
            "T-MONO-M",
            Theorem,
            &[("x", M), ("y", M), ("lambda", G)],
            implies(
                eq(add(mv(0), mv(1)), mv(1)),
                eq(add(act(mv(0), gv(2)), act(mv(1), gv(2))), act(mv(1), gv(2))),
            ),
        ),
        law(
            "T-MONO-G",
            Theorem,
            &[("x", M), ("lambda", G), ("mu", G)],
            implies(
                Formula::GEq(join(gv(1), gv(2)), gv(2)),
                eq(add(act(mv(0), gv(1)), act(mv(0), gv(2))), act(mv(0), gv(2))),
            ),
        ),
        law(
            "T-POS",
            Theorem,
            &[("x", M)],
            eq(add(MTerm::Zero, mv(0)), mv(0)),
        ),
        law(
            "T-ZSF",
            Theorem,
            &[("x", M), ("y", M)],
            implies(
                eq(add(mv(0), mv(1)), MTerm::Zero),
                and(vec![eq(mv(0), MTerm::Zero), eq(mv(1), MTerm::Zero)]),
            ),
        ),
        law(
            "T-SFX-II-III",
            Theorem,
            &[("a", M), ("y", M), ("lambda", G)],
            implies(
                eq(add(act(mv(0), gv(2)), mv(1)), mv(0)),
                eq(add(mv(0), mv(1)), mv(0)),
            ),
        ),
        law(
            "T-SFX-III-II",
            Theorem,
            &[("a", M), ("y", M), ("lambda", G)],
            implies(
                eq(add(mv(0), mv(1)), mv(0)),
                exists(2, eq(add(act(mv(0), gv(2)), mv(1)), mv(0))),
            ),
        ),
        law(
            "T-PFX-IS-SFX",
            Theorem,
            &[("a", M), ("z", M), ("lambda", G)],
            implies(
                exists(2, eq(act(mv(0), gv(2)), mv(1))),
                eq(add(mv(0), mv(1)), mv(0)),
            ),
        ),
        law(
            "T-ANAGRAM",
            Theorem,
            &[("z", M), ("t", M)],
            and(vec![
                eq(add(add(mv(0), mv(1)), add(mv(1), mv(0))), add(mv(0), mv(1))),
                eq(add(add(mv(1), mv(0)), add(mv(0), mv(1))), add(mv(1), mv(0))),
            ]),
        ),
        law(
            "T-WIT-STAB",
            Theorem,
            &[("x", M), ("y", M), ("alpha", G)],
            implies(
                eq(act(add(mv(0), mv(1)), gv(2)), mv(0)),
                eq(act(mv(0), gv(2)), mv(0)),
            ),
        ),
        law(
            "T-STAB-CLOSE",
            Theorem,
            &[("x", M), ("lambda", G), ("mu", G)],
            implies(
                and(vec![
                    eq(act(mv(0), gv(1)), mv(0)),
                    eq(act(mv(0), gv(2)), mv(0)),
                ]),
                and(vec![
                    eq(act(mv(0), join(gv(1), gv(2))), mv(0)),
                    eq(act(mv(0), meet(gv(1), gv(2))), mv(0)),
                ]),
            ),
        ),
        law(
            "T-EMPTY-FWD",
            Theorem,
            &[("lambda", G)],
            eq(act(MTerm::Zero, gv(0)), MTerm::Zero),
        ),
        law(
            "T-EMPTY-BWD",
            Theorem,
            &[("e", M), ("lambda", G)],
            implies(
                forall(1, eq(act(mv(0), gv(1)), mv(0))),
                eq(mv(0), MTerm::Zero),
            ),
        ),
        law(
            "T-BOT",
            Theorem,
            &[("x", M)],
            eq(act(mv(0), GTerm::Bottom), MTerm::Zero),
        ),
        law(
            "T-ANNIH-CLOSE",
            Theorem,
            &[("x", M), ("lambda", G), ("mu", G)],
            implies(
                and(vec![
                    eq(act(mv(0), gv(1)), MTerm::Zero),
                    eq(act(mv(0), gv(2)), MTerm::Zero),
                ]),
                and(vec![
                    eq(act(mv(0), join(gv(1), gv(2))), MTerm::Zero),
                    eq(act(mv(0), meet(gv(1), gv(2))), MTerm::Zero),
                ]),
            ),
        ),
    ];
    LawCatalog { laws }
}
