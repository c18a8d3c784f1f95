//! Deterministic expression trees, level by level up to a given depth.
//!
//! Level `d` holds trees of depth exactly `d`. Each level is an evenly
//! strided selection from every way of joining one depth `d - 1` subtree
//! with any shallower-or-equal subtree, on either side.

use mnesor_core::dsl::{Expr, GExpr, MExpr};

fn words(ws: &[&str]) -> Vec<String> {
    ws.iter().map(|s| s.to_string()).collect()
}

fn m_leaves() -> Vec<MExpr> {
    vec![
        MExpr::Tuple(vec![]),
        MExpr::Tuple(words(&["a"])),
        MExpr::Tuple(words(&["France", "b2"])),
        MExpr::Zero,
        MExpr::Name("x".into()),
    ]
}

fn g_leaves() -> Vec<GExpr> {
    vec![
        GExpr::Set(vec![]),
        GExpr::Set(words(&["a", "c"])),
        GExpr::Top,
        GExpr::Bot,
        GExpr::Name("EU".into()),
        GExpr::Name("g_1".into()),
    ]
}

/// Picks `cap` evenly spaced indices out of `0..space`.
fn stride(space: usize, cap: usize) -> impl Iterator<Item = usize> {
    let n = space.min(cap);
    (0..n).map(move |k| k * space / n)
}

pub struct Levels {
    pub m: Vec<Vec<MExpr>>,
    pub g: Vec<Vec<GExpr>>,
}

impl Levels {
    pub fn build(max_depth: usize, cap: usize) -> Self {
        let mut m = vec![m_leaves()];
        let mut g = vec![g_leaves()];
        for d in 1..=max_depth {
            let deep_m = &m[d - 1];
            let deep_g = &g[d - 1];
            let any_m: Vec<&MExpr> = m.iter().flatten().collect();
            let any_g: Vec<&GExpr> = g.iter().flatten().collect();

            // operator and deep side, then deep index, then other index;
            // indices wrap for the shorter of the mnesor/granular lists
            let deep = deep_m.len().max(deep_g.len());
            let any = any_m.len().max(any_g.len());
            let mut level_m = Vec::new();
            for k in stride(4 * deep * any, cap) {
                let (op, rest) = (k % 4, k / 4);
                let (i, j) = (rest % deep, rest / deep);
                let tree = match op {
                    0 => MExpr::Sum(
                        Box::new(deep_m[i % deep_m.len()].clone()),
                        Box::new(any_m[j % any_m.len()].clone()),
                    ),
                    1 => MExpr::Sum(
                        Box::new(any_m[j % any_m.len()].clone()),
                        Box::new(deep_m[i % deep_m.len()].clone()),
                    ),
                    2 => MExpr::Act(
                        Box::new(deep_m[i % deep_m.len()].clone()),
                        any_g[j % any_g.len()].clone(),
                    ),
                    _ => MExpr::Act(
                        Box::new(any_m[j % any_m.len()].clone()),
                        deep_g[i % deep_g.len()].clone(),
                    ),
                };
                level_m.push(tree);
            }

            let g_space = 4 * deep_g.len() * any_g.len();
            let mut level_g = Vec::new();
            for k in stride(g_space, cap) {
                let (op, rest) = (k % 4, k / 4);
                let (i, j) = (rest % deep_g.len(), rest / deep_g.len());
                let (deep, other) = (Box::new(deep_g[i].clone()), Box::new(any_g[j].clone()));
                level_g.push(match op {
                    0 => GExpr::Join(deep, other),
                    1 => GExpr::Join(other, deep),
                    2 => GExpr::Meet(deep, other),
                    _ => GExpr::Meet(other, deep),
                });
            }
            m.push(level_m);
            g.push(level_g);
        }
        Levels { m, g }
    }

    pub fn exprs(&self) -> Vec<Expr> {
        let ms = self.m.iter().flatten().cloned().map(Expr::Mnesor);
        let gs = self.g.iter().flatten().cloned().map(Expr::Granular);
        ms.chain(gs).collect()
    }
}

pub fn depth_m(e: &MExpr) -> usize {
    match e {
        MExpr::Tuple(_) | MExpr::Zero | MExpr::Name(_) => 0,
        MExpr::Sum(a, b) => 1 + depth_m(a).max(depth_m(b)),
        MExpr::Act(a, g) => 1 + depth_m(a).max(depth_g(g)),
    }
}

pub fn depth_g(e: &GExpr) -> usize {
    match e {
        GExpr::Set(_) | GExpr::Top | GExpr::Bot | GExpr::Name(_) => 0,
        GExpr::Join(a, b) | GExpr::Meet(a, b) => 1 + depth_g(a).max(depth_g(b)),
    }
}
