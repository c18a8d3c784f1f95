//! Brute-force compliance matrix for tuples over three letters.
//!
//! Shares nothing with the checker: tuples are `Vec<usize>`, granulars are
//! 3-bit masks, and every law is a hand-written closure over nested loops.

use mnesor::report::{BoundsJson, LawJson, ReportJson};
use serde_json::{Map, Value};

const N: usize = 3;
const TOP: usize = (1 << N) - 1;
const NAMES: [&str; N] = ["a", "b", "c"];

type T = Vec<usize>;

fn plus(x: &T, y: &T) -> T {
    let mut out = x.clone();
    for &e in y {
        if !out.contains(&e) {
            out.push(e);
        }
    }
    out
}

fn filter(x: &T, g: usize) -> T {
    x.iter().copied().filter(|&e| g >> e & 1 == 1).collect()
}

/// All duplicate-free tuples, shortest first, then lexicographic.
pub fn tuples() -> Vec<T> {
    fn grow(prefix: &mut T, out: &mut Vec<T>) {
        out.push(prefix.clone());
        for e in 0..N {
            if !prefix.contains(&e) {
                prefix.push(e);
                grow(prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn show_tuple(x: &T) -> String {
    let names: Vec<&str> = x.iter().map(|&e| NAMES[e]).collect();
    format!("[{}]", names.join(" "))
}

fn show_set(g: usize) -> String {
    let names: Vec<&str> = (0..N)
        .filter(|&e| g >> e & 1 == 1)
        .map(|e| NAMES[e])
        .collect();
    format!("{{{}}}", names.join(" "))
}

#[derive(Clone, Copy)]
enum Sort {
    M,
    G,
}

struct Ctx {
    ts: Vec<T>,
}

impl Ctx {
    fn m(&self, i: usize) -> &T {
        &self.ts[i]
    }
    fn exists_m(&self, f: impl Fn(&T) -> bool) -> bool {
        self.ts.iter().any(f)
    }
    fn exists_g(&self, f: impl Fn(usize) -> bool) -> bool {
        (0..=TOP).any(f)
    }
}

type Holds = Box<dyn Fn(&Ctx, &[usize]) -> bool>;
type Entry = (String, Vec<(String, Sort)>, Holds);

fn law(name: &str, vars: &[(&str, Sort)], holds: Holds) -> Entry {
    (
        name.to_string(),
        vars.iter().map(|(n, s)| (n.to_string(), *s)).collect(),
        holds,
    )
}

fn laws() -> Vec<Entry> {
    use Sort::{G, M};
    let zero = T::new;
    vec![
        law(
            "A-MON-ID",
            &[("x", M)],
            Box::new(move |c, v| {
                let x = c.m(v[0]);
                plus(&zero(), x) == *x && plus(x, &zero()) == *x
            }),
        ),
        law(
            "A-MON-ASSOC",
            &[("x", M), ("y", M), ("z", M)],
            Box::new(|c, v| {
                let (x, y, z) = (c.m(v[0]), c.m(v[1]), c.m(v[2]));
                plus(&plus(x, y), z) == plus(x, &plus(y, z))
            }),
        ),
        law(
            "A-UNITAL",
            &[("x", M)],
            Box::new(|c, v| filter(c.m(v[0]), TOP) == *c.m(v[0])),
        ),
        law(
            "A-MDIST",
            &[("x", M), ("y", M), ("lambda", G)],
            Box::new(|c, v| {
                let (x, y, l) = (c.m(v[0]), c.m(v[1]), v[2]);
                filter(&plus(x, y), l) == plus(&filter(x, l), &filter(y, l))
            }),
        ),
        law(
            "A-ASSOC-ACT",
            &[("x", M), ("lambda", G), ("mu", G)],
            Box::new(|c, v| {
                let x = c.m(v[0]);
                filter(&filter(x, v[1]), v[2]) == filter(x, v[1] & v[2])
            }),
        ),
        law(
            "A-GDIST",
            &[("x", M), ("lambda", G), ("mu", G)],
            Box::new(|c, v| {
                let x = c.m(v[0]);
                plus(&filter(x, v[1]), &filter(x, v[2])) == filter(x, v[1] | v[2])
            }),
        ),
        law(
            "A-ABSORB",
            &[("x", M), ("y", M)],
            Box::new(|c, v| {
                let (x, y) = (c.m(v[0]), c.m(v[1]));
                c.exists_g(|a| filter(&plus(x, y), a) == *x)
            }),
        ),
        law(
            "T-IDEM",
            &[("x", M)],
            Box::new(|c, v| plus(c.m(v[0]), c.m(v[0])) == *c.m(v[0])),
        ),
        law(
            "T-PRIORITY",
            &[("x", M), ("y", M)],
            Box::new(|c, v| {
                let (x, y) = (c.m(v[0]), c.m(v[1]));
                plus(&plus(x, y), x) == plus(x, y)
            }),
        ),
        law(
            "T-PFX-I-II",
            &[("x", M), ("y", M)],
            Box::new(|c, v| {
                let (x, y) = (c.m(v[0]), c.m(v[1]));
                !c.exists_m(|z| plus(y, z) == *x) || c.exists_g(|l| filter(x, l) == *y)
            }),
        ),
        law(
            "T-PFX-II-III",
            &[("x", M), ("y", M)],
            Box::new(|c, v| {
                let (x, y) = (c.m(v[0]), c.m(v[1]));
                !c.exists_g(|l| filter(x, l) == *y) || plus(y, x) == *x
            }),
        ),
        law(
            "T-PFX-III-I",
            &[("x", M), ("y", M)],
            Box::new(|c, v| {
                let (x, y) = (c.m(v[0]), c.m(v[1]));
                plus(y, x) != *x || c.exists_m(|z| plus(y, z) == *x)
            }),
        ),
        law(
            "T-ORD-REFL",
            &[("x", M)],
            Box::new(|c, v| plus(c.m(v[0]), c.m(v[0])) == *c.m(v[0])),
        ),
        law(
            "T-ORD-TRANS",
            &[("x", M), ("y", M), ("z", M)],
            Box::new(|c, v| {
                let (x, y, z) = (c.m(v[0]), c.m(v[1]), c.m(v[2]));
                !(plus(x, y) == *y && plus(y, z) == *z) || plus(x, z) == *z
            }),
        ),
        law(
            "T-ORD-ANTISYM",
            &[("x", M), ("y", M)],
            Box::new(|c, v| {
                let (x, y) = (c.m(v[0]), c.m(v[1]));
                !(plus(x, y) == *y && plus(y, x) == *x) || x == y
            }),
        ),
        law(
            "T-COMPAT-ADD",
            &[("x", M), ("y", M), ("a", M)],
            Box::new(|c, v| {
                let (x, y, a) = (c.m(v[0]), c.m(v[1]), c.m(v[2]));
                plus(x, y) != *y || plus(&plus(x, a), &plus(y, a)) == plus(y, a)
            }),
        ),
        law(
            "T-MONO-M",
            &[("x", M), ("y", M), ("lambda", G)],
            Box::new(|c, v| {
                let (x, y, l) = (c.m(v[0]), c.m(v[1]), v[2]);
                plus(x, y) != *y || plus(&filter(x, l), &filter(y, l)) == filter(y, l)
            }),
        ),
        law(
            "T-MONO-G",
            &[("x", M), ("lambda", G), ("mu", G)],
            Box::new(|c, v| {
                let (x, l, m) = (c.m(v[0]), v[1], v[2]);
                l | m != m || plus(&filter(x, l), &filter(x, m)) == filter(x, m)
            }),
        ),
        law(
            "T-POS",
            &[("x", M)],
            Box::new(move |c, v| plus(&zero(), c.m(v[0])) == *c.m(v[0])),
        ),
        law(
            "T-ZSF",
            &[("x", M), ("y", M)],
            Box::new(|c, v| {
                let (x, y) = (c.m(v[0]), c.m(v[1]));
                !plus(x, y).is_empty() || (x.is_empty() && y.is_empty())
            }),
        ),
        law(
            "T-SFX-II-III",
            &[("a", M), ("y", M), ("lambda", G)],
            Box::new(|c, v| {
                let (a, y, l) = (c.m(v[0]), c.m(v[1]), v[2]);
                plus(&filter(a, l), y) != *a || plus(a, y) == *a
            }),
        ),
        law(
            "T-SFX-III-II",
            &[("a", M), ("y", M)],
            Box::new(|c, v| {
                let (a, y) = (c.m(v[0]), c.m(v[1]));
                plus(a, y) != *a || c.exists_g(|l| plus(&filter(a, l), y) == *a)
            }),
        ),
        law(
            "T-PFX-IS-SFX",
            &[("a", M), ("z", M)],
            Box::new(|c, v| {
                let (a, z) = (c.m(v[0]), c.m(v[1]));
                !c.exists_g(|l| filter(a, l) == *z) || plus(a, z) == *a
            }),
        ),
        law(
            "T-ANAGRAM",
            &[("z", M), ("t", M)],
            Box::new(|c, v| {
                let (z, t) = (c.m(v[0]), c.m(v[1]));
                let (zt, tz) = (plus(z, t), plus(t, z));
                plus(&zt, &tz) == zt && plus(&tz, &zt) == tz
            }),
        ),
        law(
            "T-WIT-STAB",
            &[("x", M), ("y", M), ("alpha", G)],
            Box::new(|c, v| {
                let (x, y, a) = (c.m(v[0]), c.m(v[1]), v[2]);
                filter(&plus(x, y), a) != *x || filter(x, a) == *x
            }),
        ),
        law(
            "T-STAB-CLOSE",
            &[("x", M), ("lambda", G), ("mu", G)],
            Box::new(|c, v| {
                let (x, l, m) = (c.m(v[0]), v[1], v[2]);
                !(filter(x, l) == *x && filter(x, m) == *x)
                    || (filter(x, l | m) == *x && filter(x, l & m) == *x)
            }),
        ),
        law(
            "T-EMPTY-FWD",
            &[("lambda", G)],
            Box::new(move |_, v| filter(&zero(), v[0]).is_empty()),
        ),
        law(
            "T-EMPTY-BWD",
            &[("e", M)],
            Box::new(|c, v| {
                let e = c.m(v[0]);
                !(0..=TOP).all(|l| filter(e, l) == *e) || e.is_empty()
            }),
        ),
        law(
            "T-BOT",
            &[("x", M)],
            Box::new(|c, v| filter(c.m(v[0]), 0).is_empty()),
        ),
        law(
            "T-ANNIH-CLOSE",
            &[("x", M), ("lambda", G), ("mu", G)],
            Box::new(|c, v| {
                let (x, l, m) = (c.m(v[0]), v[1], v[2]);
                !(filter(x, l).is_empty() && filter(x, m).is_empty())
                    || (filter(x, l | m).is_empty() && filter(x, l & m).is_empty())
            }),
        ),
    ]
}

/// Every assignment, ranked by total tuple length then by the index
/// vector; the least violation is the reported counterexample.
pub fn matrix() -> ReportJson {
    let ctx = Ctx { ts: tuples() };
    assert_eq!(ctx.ts.len(), 16);
    let mut out = Vec::new();
    for (name, vars, holds) in laws() {
        let dims: Vec<usize> = vars
            .iter()
            .map(|(_, s)| match s {
                Sort::M => ctx.ts.len(),
                Sort::G => TOP + 1,
            })
            .collect();
        let total: usize = dims.iter().product();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for flat in 0..total {
            let mut idx = vec![0; dims.len()];
            let mut r = flat;
            for k in (0..dims.len()).rev() {
                idx[k] = r % dims[k];
                r /= dims[k];
            }
            if holds(&ctx, &idx) {
                continue;
            }
            let weight = vars
                .iter()
                .zip(&idx)
                .filter(|((_, s), _)| matches!(s, Sort::M))
                .map(|(_, &i)| ctx.ts[i].len())
                .sum();
            let key = (weight, idx);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        let counterexample = best.map(|(_, idx)| {
            vars.iter()
                .zip(&idx)
                .map(|((n, s), &i)| {
                    let shown = match s {
                        Sort::M => show_tuple(&ctx.ts[i]),
                        Sort::G => show_set(i),
                    };
                    (n.clone(), Value::String(shown))
                })
                .collect::<Map<_, _>>()
        });
        out.push(LawJson {
            name,
            status: if counterexample.is_some() {
                "fail"
            } else {
                "pass"
            }
            .to_string(),
            instances: total as u64,
            reason: None,
            counterexample,
        });
    }
    ReportJson {
        model: "seq:3".into(),
        lattice: "powerset:3".into(),
        bounds: BoundsJson {
            max_mnesor_enumeration: 3,
            total: true,
        },
        laws: out,
    }
}
