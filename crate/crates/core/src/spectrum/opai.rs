//! Quantale-valued open prime (monoid) anti-ideals.
//!
//! An element of `Q ⊗ O X` for an Alexandrov-presented `X` is the same as a
//! monotone map from the points of `X` to `Q`: the pure tensor `q ⊗ U`
//! corresponds to `x ↦ q` on `U` and `0` elsewhere. Under this reading
//! `(Q ⊗ ε₀)(u) = u(0)`, `(Q ⊗ μ×)(u)(x, y) = u(xy)`, `(Q ⊗ ι₁)(u)(x, y) = u(x)`,
//! and products and joins are pointwise.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{LocalicMonoid, LocalicSemiring};
use crate::locale::FiniteLocale;
use crate::order::FinitePoset;
use crate::quantale::Quantale;
use crate::tensor::{TensorElement, TensorSpace};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Only the multiplicative conditions.
    Monoid,
    Semiring,
}

#[derive(Clone, Debug)]
pub struct OpaiInstance {
    pub target: Quantale,
    pub mode: Mode,
    /// Members as monotone maps `points → Q`, sorted.
    pub members: Vec<Vec<usize>>,
}

impl OpaiInstance {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: &[usize]) -> bool {
        self.members.binary_search_by(|m| m.as_slice().cmp(u)).is_ok()
    }
}

#[derive(Clone, Copy, Debug)]
enum Constraint {
    Leq(usize, usize),
    Bottom(usize),
    Top(usize),
    /// `u(z) = u(x)·u(y)`
    Mul(usize, usize, usize),
    /// `u(z) ≤ u(x) ∨ u(y)`
    Add(usize, usize, usize),
}

impl Constraint {
    fn points(self) -> [usize; 3] {
        match self {
            Constraint::Leq(a, b) => [a, b, b],
            Constraint::Bottom(x) | Constraint::Top(x) => [x, x, x],
            Constraint::Mul(x, y, z) | Constraint::Add(x, y, z) => [x, y, z],
        }
    }

    fn holds(self, q: &Quantale, u: &[usize]) -> bool {
        let l = q.lattice();
        match self {
            Constraint::Leq(a, b) => l.leq(u[a], u[b]),
            Constraint::Bottom(x) => u[x] == l.bottom(),
            Constraint::Top(x) => u[x] == l.top(),
            Constraint::Mul(x, y, z) => u[z] == q.mul(u[x], u[y]),
            Constraint::Add(x, y, z) => l.leq(u[z], l.join(u[x], u[y])),
        }
    }

    fn describe(self, p: &FinitePoset) -> String {
        let n = |i: usize| p.label(i);
        match self {
            Constraint::Leq(a, b) => format!("monotone at {} ≤ {}", n(a), n(b)),
            Constraint::Bottom(x) => format!("u({}) = 0", n(x)),
            Constraint::Top(x) => format!("u({}) = 1", n(x)),
            Constraint::Mul(x, y, z) => format!("u({}) = u({})·u({})", n(z), n(x), n(y)),
            Constraint::Add(x, y, z) => format!("u({}) ≤ u({}) ∨ u({})", n(z), n(x), n(y)),
        }
    }
}

struct Problem<'a> {
    points: &'a FinitePoset,
    constraints: Vec<Constraint>,
}

impl<'a> Problem<'a> {
    fn monoid(m: &'a LocalicMonoid) -> Self {
        let p = m.points();
        let n = p.len();
        let mut constraints = Vec::new();
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a && p.leq(a, b)) {
                constraints.push(Constraint::Leq(a, b));
            }
        }
        constraints.push(Constraint::Top(m.unit));
        for x in 0..n {
            for y in x..n {
                constraints.push(Constraint::Mul(x, y, m.mul(x, y)));
            }
        }
        Problem { points: p, constraints }
    }

    fn semiring(r: &'a LocalicSemiring) -> Self {
        let mut pr = Problem::monoid(&r.mult);
        pr.constraints.push(Constraint::Bottom(r.zero));
        let n = r.len();
        for x in 0..n {
            for y in x..n {
                pr.constraints.push(Constraint::Add(x, y, r.add(x, y)));
            }
        }
        pr
    }

    fn violation(&self, q: &Quantale, u: &[usize]) -> Option<String> {
        if u.len() != self.points.len() || u.iter().any(|&v| v >= q.len()) {
            return Some(format!("not a map from {} points into Q", self.points.len()));
        }
        self.constraints.iter().find(|c| !c.holds(q, u)).map(|c| c.describe(self.points))
    }

    fn solve(&self, q: &Quantale) -> Vec<Vec<usize>> {
        let order = self.points.linear_extension();
        let n = order.len();
        let mut position = vec![0; n];
        for (k, &x) in order.iter().enumerate() {
            position[x] = k;
        }
        // each constraint is checked as soon as its last point is assigned
        let mut due: Vec<Vec<Constraint>> = vec![Vec::new(); n];
        for &c in &self.constraints {
            let last = c.points().iter().map(|&x| position[x]).max().unwrap_or(0);
            due[last].push(c);
        }
        let mut u = vec![0; n];
        let mut out = Vec::new();
        self.extend(q, &order, &due, 0, &mut u, &mut out);
        out.sort();
        out
    }

    fn extend(&self, q: &Quantale, order: &[usize], due: &[Vec<Constraint>], k: usize, u: &mut [usize], out: &mut Vec<Vec<usize>>) {
        if k == order.len() {
            out.push(u.to_vec());
            return;
        }
        for v in 0..q.len() {
            u[order[k]] = v;
            if due[k].iter().all(|c| c.holds(q, u)) {
                self.extend(q, order, due, k + 1, u, out);
            }
        }
    }
}

fn require_two_sided(q: &Quantale) -> Result<()> {
    if q.is_two_sided() {
        Ok(())
    } else {
        Err(Error::NotTwoSided)
    }
}

pub fn opai(r: &LocalicSemiring, q: &Quantale) -> Result<OpaiInstance> {
    require_two_sided(q)?;
    Ok(OpaiInstance {
        target: q.clone(),
        mode: Mode::Semiring,
        members: Problem::semiring(r).solve(q),
    })
}

pub fn opmai(m: &LocalicMonoid, q: &Quantale) -> Result<OpaiInstance> {
    require_two_sided(q)?;
    Ok(OpaiInstance {
        target: q.clone(),
        mode: Mode::Monoid,
        members: Problem::monoid(m).solve(q),
    })
}

/// The first failed condition for `u` to be a `Q`-valued open prime anti-ideal.
pub fn opai_violation(r: &LocalicSemiring, q: &Quantale, u: &[usize]) -> Option<String> {
    Problem::semiring(r).violation(q, u)
}

pub fn opmai_violation(m: &LocalicMonoid, q: &Quantale, u: &[usize]) -> Option<String> {
    Problem::monoid(m).violation(q, u)
}

/// `Q ⊗ O X` as a space of bi-ideals.
pub fn valued_open_space(q: &Quantale, x: &FiniteLocale) -> TensorSpace {
    TensorSpace::new(vec![q.lattice().clone(), x.opens().clone()])
}

/// `⋁ₓ u(x) ⊗ ↑x`.
pub fn to_tensor(space: &TensorSpace, x: &FiniteLocale, u: &[usize]) -> TensorElement {
    let p = x.points();
    space.closure_of((0..p.len()).map(|i| {
        let up = x.open_of(p.principal_up(i)).expect("principal up-set is open");
        space.encode(&[u[i], up])
    }))
}

/// `x ↦ ⋁{q : q ⊗ ↑x ≤ s}`.
pub fn from_tensor(space: &TensorSpace, x: &FiniteLocale, s: &TensorElement) -> Vec<usize> {
    let q = &space.factors()[0];
    let p = x.points();
    (0..p.len())
        .map(|i| {
            let up = x.open_of(p.principal_up(i)).expect("principal up-set is open");
            q.join_all((0..q.len()).filter(|&v| s.contains(space.encode(&[v, up]))))
        })
        .collect()
}
