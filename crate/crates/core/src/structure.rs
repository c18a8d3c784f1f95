//! Stabilizer and annihilator sublattices, absorption witnesses and the
//! covering relation of the prefix order.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::{prefix_leq, MnesorSpace};
use crate::lattice::{FiniteLattice, Granular, GranularId};

/// A subset of a lattice given by explicit members, in id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice<'l> {
    lattice: &'l FiniteLattice,
    members: Vec<GranularId>,
}

impl<'l> Sublattice<'l> {
    pub fn new(lattice: &'l FiniteLattice, mut members: Vec<GranularId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Sublattice { lattice, members }
    }

    pub fn lattice(&self) -> &'l FiniteLattice {
        self.lattice
    }

    pub fn members(&self) -> &[GranularId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: GranularId) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Granular<'l>> + '_ {
        let l = self.lattice;
        self.members
            .iter()
            .map(move |&g| Granular::new(l, g).expect("member of parent"))
    }

    /// Checks closure under the parent join and meet. On failure returns
    /// the first pair (in id order) whose join or meet escapes.
    pub fn check_closed(&self) -> Result<(), (GranularId, GranularId)> {
        let mut inside = vec![false; self.lattice.len()];
        for g in &self.members {
            inside[g.index()] = true;
        }
        if self.hulls_inside(&inside) {
            return Ok(());
        }
        self.first_escaping_pair(&inside)
    }

    /// `S` is join-closed iff for every `t` with some member below it, the
    /// join of all members below `t` is a member; dually for meets.
    fn hulls_inside(&self, inside: &[bool]) -> bool {
        let l = self.lattice;
        let n = l.len();
        if let Some(atoms) = l.powerset_atoms() {
            // sums over subsets and supersets of the bitmask ids
            let full = (n - 1) as u32;
            let mut below: Vec<Option<u32>> =
                (0..n).map(|m| inside[m].then_some(m as u32)).collect();
            let mut above = below.clone();
            for bit in 0..atoms.len() {
                let b = 1usize << bit;
                for m in 0..n {
                    if m & b != 0 {
                        if let Some(v) = below[m ^ b] {
                            below[m] = Some(below[m].map_or(v, |w| w | v));
                        }
                    } else if let Some(v) = above[m | b] {
                        above[m] = Some(above[m].map_or(v, |w| w & v));
                    }
                }
            }
            let ok = |h: &Option<u32>| h.is_none_or(|v| inside[(v & full) as usize]);
            return below.iter().all(ok) && above.iter().all(ok);
        }
        l.ids().all(|t| {
            let mut join = None;
            let mut meet = None;
            for &m in &self.members {
                if l.leq_id(m, t) {
                    join = Some(join.map_or(m, |j| l.join_id(j, m)));
                }
                if l.leq_id(t, m) {
                    meet = Some(meet.map_or(m, |j| l.meet_id(j, m)));
                }
            }
            [join, meet]
                .iter()
                .all(|h| h.is_none_or(|g| inside[g.index()]))
        })
    }

    fn first_escaping_pair(&self, inside: &[bool]) -> Result<(), (GranularId, GranularId)> {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i..] {
                if !inside[self.lattice.join_id(a, b).index()]
                    || !inside[self.lattice.meet_id(a, b).index()]
                {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        self.check_closed().is_ok()
    }
}

/// `{ λ : xλ = x }`
pub fn stabilizers<'s, S: MnesorSpace + ?Sized>(s: &'s S, x: &S::Elem) -> Sublattice<'s> {
    let l = s.lattice();
    Sublattice::new(l, l.ids().filter(|&g| s.act(x, g) == *x).collect())
}

/// `{ λ : xλ = 0 }`
pub fn annihilators<'s, S: MnesorSpace + ?Sized>(s: &'s S, x: &S::Elem) -> Sublattice<'s> {
    let l = s.lattice();
    let zero = s.zero();
    Sublattice::new(l, l.ids().filter(|&g| s.act(x, g) == zero).collect())
}

/// Every `α` with `(x + y)α = x`, in lattice order.
pub fn absorption_witnesses<'s, S: MnesorSpace + ?Sized>(
    s: &'s S,
    x: &S::Elem,
    y: &S::Elem,
) -> Vec<Granular<'s>> {
    let l = s.lattice();
    let sum = s.add(x, y);
    l.granulars()
        .filter(|g| s.act(&sum, g.id()) == *x)
        .collect()
}

/// Why the prefix relation is not a partial order on the enumerated carrier.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("prefix order is not reflexive at {0}")]
    NotReflexive(String),
    #[error("prefix order is not antisymmetric: {0} and {1} are distinct but mutually below")]
    NotAntisymmetric(String, String),
    #[error("prefix order is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(String, String, String),
}

/// Covering relation of the prefix order over an enumerated carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hasse<E> {
    pub nodes: Vec<E>,
    /// `(lower, upper)` node indices, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl<E> Hasse<E> {
    /// Graphviz rendering, one node per element in enumeration order.
    pub fn to_dot(&self, render: impl Fn(&E) -> String) -> String {
        let mut out = String::from("digraph prefix_order {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = render(n).replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the Hasse diagram of `x ≤ y ⟺ x + y = y` over `enumerate(bound)`,
/// after checking that the relation is a partial order there.
pub fn hasse<S: MnesorSpace + ?Sized>(s: &S, bound: usize) -> Result<Hasse<S::Elem>, OrderError> {
    let nodes = s.enumerate(bound);
    let n = nodes.len();
    let mut le = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            le[i * n + j] = prefix_leq(s, &nodes[i], &nodes[j]);
        }
    }
    for i in 0..n {
        if !le[i * n + i] {
            return Err(OrderError::NotReflexive(s.render(&nodes[i])));
        }
        for j in (i + 1)..n {
            if le[i * n + j] && le[j * n + i] {
                return Err(OrderError::NotAntisymmetric(
                    s.render(&nodes[i]),
                    s.render(&nodes[j]),
                ));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !le[i * n + j] {
                continue;
            }
            for k in 0..n {
                if le[j * n + k] && !le[i * n + k] {
                    return Err(OrderError::NotTransitive(
                        s.render(&nodes[i]),
                        s.render(&nodes[j]),
                        s.render(&nodes[k]),
                    ));
                }
            }
        }
    }
    let lt = |a: usize, b: usize| a != b && le[a * n + b];
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    Ok(Hasse { nodes, edges })
}

/// Members of a sublattice rendered as labels, for display.
pub fn member_labels(sub: &Sublattice<'_>) -> Vec<String> {
    sub.members()
        .iter()
        .map(|&g| sub.lattice().label(g))
        .collect()
}

/// One-line summary of a closure scan.
pub fn closure_line(sub: &Sublattice<'_>) -> String {
    match sub.check_closed() {
        Ok(()) => format!("closed under join and meet ({} members)", sub.len()),
        Err((a, b)) => format!(
            "NOT closed: {} and {}",
            sub.lattice().label(a),
            sub.lattice().label(b)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_model::SelfActionSpace;
    use crate::seq_model::{geo_fixture, SeqMnesor, SeqSpace};
    use alloc::string::ToString;

    fn labels(s: &SeqSpace, sub: &Sublattice<'_>) -> Vec<String> {
        sub.members()
            .iter()
            .map(|&g| s.lattice().label(g))
            .collect()
    }

    #[test]
    fn stabilizers_of_single_atom() {
        let s = SeqSpace::letters(2).unwrap();
        let a = s.universe().tuple(&["a"]).unwrap();
        let st = stabilizers(&s, &a);
        assert_eq!(labels(&s, &st), ["{a}", "{a b}"]);
        assert!(st.is_closed());
        let an = annihilators(&s, &a);
        assert_eq!(labels(&s, &an), ["{}", "{b}"]);
        assert!(an.is_closed());
    }

    #[test]
    fn empty_tuple_is_stabilized_and_annihilated_by_everything() {
        let s = SeqSpace::letters(3).unwrap();
        assert_eq!(stabilizers(&s, &SeqMnesor::empty()).len(), 8);
        assert_eq!(annihilators(&s, &SeqMnesor::empty()).len(), 8);
    }

    #[test]
    fn geo_structure_examples() {
        let g = geo_fixture();
        let fg = g.universe().tuple(&["France", "Germany"]).unwrap();
        let st = stabilizers(&g, &fg);
        assert!(st.contains(g.named("IOC").unwrap()));
        assert!(st.contains(g.lattice().top()));
        assert!(!st.contains(g.universe().subset(&["France"]).unwrap()));
        let it = g.universe().tuple(&["India", "Taiwan"]).unwrap();
        assert!(annihilators(&g, &it).contains(g.named("EU").unwrap()));
    }

    #[test]
    fn witnesses() {
        let s = SeqSpace::new(crate::seq_model::Universe::new(&["Italy", "Switzerland"]).unwrap())
            .unwrap();
        let x = s.universe().tuple(&["Italy"]).unwrap();
        let y = s.universe().tuple(&["Switzerland"]).unwrap();
        let w: Vec<String> = absorption_witnesses(&s, &x, &y)
            .iter()
            .map(|g| g.to_string())
            .collect();
        assert_eq!(w, ["{Italy}"]);
        // x = y: witnesses are exactly the stabilizers
        let xx: Vec<GranularId> = absorption_witnesses(&s, &x, &x)
            .iter()
            .map(|g| g.id())
            .collect();
        assert_eq!(xx, stabilizers(&s, &x).members());
    }

    #[test]
    fn self_action_witness_is_x() {
        let s = SelfActionSpace::new(crate::lattice::FiniteLattice::pentagon_n5()).unwrap();
        for x in s.enumerate(1) {
            for y in s.enumerate(1) {
                assert!(absorption_witnesses(&s, &x, &y).iter().any(|g| g.id() == x));
            }
        }
    }

    #[test]
    fn hasse_two_letters() {
        let s = SeqSpace::letters(2).unwrap();
        let h = hasse(&s, 2).unwrap();
        let named: Vec<(String, String)> = h
            .edges
            .iter()
            .map(|&(a, b)| (s.render(&h.nodes[a]), s.render(&h.nodes[b])))
            .collect();
        let expect = [
            ("[]", "[a]"),
            ("[]", "[b]"),
            ("[a]", "[a b]"),
            ("[b]", "[b a]"),
        ];
        assert_eq!(
            named,
            expect
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>()
        );
        let dot = h.to_dot(|e| s.render(e));
        assert!(dot.starts_with("digraph prefix_order {"));
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn hasse_small_models() {
        let one = SeqSpace::letters(0).unwrap();
        assert!(hasse(&one, 1).unwrap().edges.is_empty());
        let chain = SelfActionSpace::new(crate::lattice::FiniteLattice::chain(3).unwrap()).unwrap();
        assert_eq!(hasse(&chain, 1).unwrap().edges, [(0, 1), (1, 2)]);
    }

    #[test]
    fn hull_test_agrees_with_pairwise_scan() {
        use crate::lattice::FiniteLattice;
        let lattices = [
            FiniteLattice::powerset_n(3).unwrap(),
            FiniteLattice::diamond_m3(),
            FiniteLattice::pentagon_n5(),
            FiniteLattice::chain(4).unwrap(),
            FiniteLattice::product(
                &FiniteLattice::chain(2).unwrap(),
                &FiniteLattice::diamond_m3(),
            )
            .unwrap(),
        ];
        for l in &lattices {
            let n = l.len();
            for bits in 0u32..(1 << n.min(10)) {
                let members = (0..n as u32)
                    .filter(|i| bits & (1 << i) != 0)
                    .map(GranularId)
                    .collect();
                let sub = Sublattice::new(l, members);
                let mut inside = vec![false; n];
                for g in sub.members() {
                    inside[g.index()] = true;
                }
                let pairwise = sub.first_escaping_pair(&inside);
                assert_eq!(
                    sub.hulls_inside(&inside),
                    pairwise.is_ok(),
                    "{} {bits:b}",
                    l.name()
                );
                assert_eq!(sub.check_closed(), pairwise);
            }
        }
    }

    #[test]
    fn closure_failure_is_reported() {
        let l = crate::lattice::FiniteLattice::powerset_n(2).unwrap();
        let sub = Sublattice::new(&l, vec![GranularId(1), GranularId(2)]);
        assert_eq!(sub.check_closed(), Err((GranularId(1), GranularId(2))));
        assert!(closure_line(&sub).starts_with("NOT closed"));
    }
}
