//! Finite posets, monotone maps, adjoints and closure operators.
//!
//! Orders are dense boolean matrices over element positions. Subsets of a
//! poset with at most 64 elements are represented as `u64` masks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::suplattice::Suplattice;
use crate::{law, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

pub const MAX_MASK_POINTS: usize = 64;

pub fn bit(i: usize) -> u64 {
    1u64 << i
}

pub fn mask_iter(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = BTreeMap::new();
    for l in labels {
        if seen.insert(l.as_str(), ()).is_some() {
            return Err(Error::DuplicateElement(l.clone()));
        }
    }
    Ok(())
}

impl FinitePoset {
    /// The reflexive-transitive closure of `pairs` (each `(a, b)` read as `a <= b`).
    pub fn build<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        check_unique(&labels)?;
        let n = labels.len();
        let index = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in pairs {
            let (a, b) = (index(a.as_ref())?, index(b.as_ref())?);
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Cycle {
                        a: labels[i].clone(),
                        b: labels[j].clone(),
                    });
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    /// A poset from an order predicate, checked to be a partial order.
    pub fn from_fn(labels: Vec<String>, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        check_unique(&labels)?;
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = f(i, j);
            }
        }
        let p = FinitePoset { labels, leq };
        p.check_partial_order()?;
        Ok(p)
    }

    /// A poset from a matrix already known to be a partial order.
    pub(crate) fn from_raw(labels: Vec<String>, leq: Vec<bool>) -> Self {
        debug_assert_eq!(leq.len(), labels.len() * labels.len());
        FinitePoset { labels, leq }
    }

    /// Subsets ordered by inclusion.
    pub fn of_masks(labels: Vec<String>, masks: &[u64]) -> Result<Self> {
        Self::from_fn(labels, |i, j| masks[i] & !masks[j] == 0)
    }

    fn check_partial_order(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(law("reflexivity", self.labels[i].clone()));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::Cycle {
                        a: self.labels[i].clone(),
                        b: self.labels[j].clone(),
                    });
                }
                if self.leq(i, j) {
                    for k in 0..n {
                        if self.leq(j, k) && !self.leq(i, k) {
                            return Err(law(
                                "transitivity",
                                format!("{} <= {} <= {}", self.labels[i], self.labels[j], self.labels[k]),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn discrete<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        Self::build(elements, &[])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.labels.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        check_unique(&labels)?;
        if labels.len() != self.len() {
            return Err(Error::BadTable {
                what: "label",
                expected: self.len(),
                found: labels.len(),
            });
        }
        Ok(FinitePoset {
            labels,
            leq: self.leq.clone(),
        })
    }

    pub fn opposite(&self) -> FinitePoset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        FinitePoset {
            labels: self.labels.clone(),
            leq,
        }
    }

    /// Componentwise order on pairs; pair `(a, b)` sits at index `a * other.len() + b`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let (n, m) = (self.len(), other.len());
        let mut labels = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                labels.push(format!("({},{})", self.labels[a], other.labels[b]));
            }
        }
        let size = n * m;
        let mut leq = vec![false; size * size];
        for i in 0..size {
            for j in 0..size {
                leq[i * size + j] = self.leq(i / m, j / m) && other.leq(i % m, j % m);
            }
        }
        FinitePoset { labels, leq }
    }

    /// Restriction to `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> FinitePoset {
        let k = keep.len();
        let mut leq = vec![false; k * k];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                leq[i * k + j] = self.leq(a, b);
            }
        }
        FinitePoset {
            labels: keep.iter().map(|&a| self.labels[a].clone()).collect(),
            leq,
        }
    }

    /// Pairs `(a, b)` with `a` covered by `b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A linear extension: every element appears after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let below = |a: usize| (0..n).filter(|&b| self.leq(b, a)).count();
        order.sort_by_key(|&a| (below(a), a));
        order
    }

    fn require_masks(&self) -> Result<()> {
        if self.len() > MAX_MASK_POINTS {
            return Err(Error::CapExceeded {
                what: "point poset (bitmask width)",
                size: self.len(),
                cap: MAX_MASK_POINTS,
            });
        }
        Ok(())
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn principal_up(&self, x: usize) -> u64 {
        (0..self.len()).filter(|&y| self.leq(x, y)).fold(0, |m, y| m | bit(y))
    }

    pub fn principal_down(&self, x: usize) -> u64 {
        (0..self.len()).filter(|&y| self.leq(y, x)).fold(0, |m, y| m | bit(y))
    }

    pub fn up_closure(&self, mask: u64) -> u64 {
        mask_iter(mask).fold(0, |m, x| m | self.principal_up(x))
    }

    pub fn down_closure(&self, mask: u64) -> u64 {
        mask_iter(mask).fold(0, |m, x| m | self.principal_down(x))
    }

    pub fn is_up_set(&self, mask: u64) -> bool {
        self.up_closure(mask) == mask
    }

    pub fn is_down_set(&self, mask: u64) -> bool {
        self.down_closure(mask) == mask
    }

    /// All up-sets, sorted by mask value. Fails once more than `limit` are found.
    pub fn up_sets(&self, limit: usize) -> Result<Vec<u64>> {
        self.require_masks()?;
        // Decide elements from the top down: x may join only if everything above it has.
        let mut order = self.linear_extension();
        order.reverse();
        let above: Vec<u64> = (0..self.len()).map(|x| self.principal_up(x) & !bit(x)).collect();
        let mut out = Vec::new();
        fn rec(
            order: &[usize],
            above: &[u64],
            cur: u64,
            out: &mut Vec<u64>,
            limit: usize,
        ) -> Result<()> {
            match order.split_first() {
                None => {
                    if out.len() >= limit {
                        return Err(Error::CapExceeded {
                            what: "number of up-sets",
                            size: out.len() + 1,
                            cap: limit,
                        });
                    }
                    out.push(cur);
                    Ok(())
                }
                Some((&x, rest)) => {
                    rec(rest, above, cur, out, limit)?;
                    if above[x] & !cur == 0 {
                        rec(rest, above, cur | bit(x), out, limit)?;
                    }
                    Ok(())
                }
            }
        }
        rec(&order, &above, 0, &mut out, limit)?;
        out.sort_unstable();
        Ok(out)
    }

    pub fn down_sets(&self, limit: usize) -> Result<Vec<u64>> {
        let full = self.full_mask();
        let mut d: Vec<u64> = self.opposite().up_sets(limit)?;
        // Down-sets of P are up-sets of P^op; keep them sorted by mask as well.
        d.sort_unstable();
        debug_assert!(d.iter().all(|&m| m & !full == 0));
        Ok(d)
    }

    pub fn mask_label(&self, mask: u64) -> String {
        let mut s = String::from("{");
        for (k, i) in mask_iter(mask).enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&self.labels[i]);
        }
        s.push('}');
        s
    }
}

/// A total, order-preserving table between two posets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonotoneMap {
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: &FinitePoset, target: &FinitePoset, values: Vec<usize>) -> Result<Self> {
        if values.len() != source.len() {
            return Err(Error::BadTable {
                what: "map",
                expected: source.len(),
                found: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= target.len()) {
            return Err(Error::BadTable {
                what: "map value",
                expected: target.len(),
                found: v,
            });
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(values[a], values[b]) {
                    return Err(Error::NotMonotone {
                        witness: format!(
                            "{} <= {} but {} !<= {}",
                            source.label(a),
                            source.label(b),
                            target.label(values[a]),
                            target.label(values[b])
                        ),
                    });
                }
            }
        }
        Ok(MonotoneMap { values })
    }

    pub fn identity(p: &FinitePoset) -> Self {
        MonotoneMap {
            values: (0..p.len()).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.values[a]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// An inflationary, monotone, idempotent endomap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOperator {
    values: Vec<usize>,
}

impl ClosureOperator {
    pub fn new(carrier: &FinitePoset, values: Vec<usize>) -> Result<Self> {
        MonotoneMap::new(carrier, carrier, values.clone())?;
        for a in 0..carrier.len() {
            if !carrier.leq(a, values[a]) {
                return Err(law("inflationary", carrier.label(a).to_string()));
            }
            if values[values[a]] != values[a] {
                return Err(law("idempotent", carrier.label(a).to_string()));
            }
        }
        Ok(ClosureOperator { values })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.values[a]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&a| self.values[a] == a).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// Binary join and meet tables of a finite lattice plus its bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTables {
    pub join: Vec<u32>,
    pub meet: Vec<u32>,
    pub bottom: usize,
    pub top: usize,
}

pub fn lattice_structure(p: &FinitePoset) -> Result<LatticeTables> {
    let n = p.len();
    let fail = |op: &'static str, a: usize, b: usize| Error::NotALattice {
        op,
        a: p.label(a).to_string(),
        b: p.label(b).to_string(),
    };
    if n == 0 {
        return Err(Error::NotALattice {
            op: "bottom (empty join)",
            a: String::new(),
            b: String::new(),
        });
    }
    // In a linear extension a least upper bound precedes every other upper bound,
    // so the first candidate found is the only one worth checking.
    let ext = p.linear_extension();
    let bottom = ext[0];
    if !(0..n).all(|x| p.leq(bottom, x)) {
        return Err(Error::NotALattice {
            op: "bottom (empty join)",
            a: String::new(),
            b: String::new(),
        });
    }
    let top = ext[n - 1];
    if !(0..n).all(|x| p.leq(x, top)) {
        return Err(Error::NotALattice {
            op: "top (empty meet)",
            a: String::new(),
            b: String::new(),
        });
    }
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for a in 0..n {
        for b in a..n {
            let j = ext
                .iter()
                .copied()
                .find(|&c| p.leq(a, c) && p.leq(b, c))
                .filter(|&c| (0..n).all(|d| !(p.leq(a, d) && p.leq(b, d)) || p.leq(c, d)))
                .ok_or_else(|| fail("join", a, b))?;
            let m = ext
                .iter()
                .rev()
                .copied()
                .find(|&c| p.leq(c, a) && p.leq(c, b))
                .filter(|&c| (0..n).all(|d| !(p.leq(d, a) && p.leq(d, b)) || p.leq(d, c)))
                .ok_or_else(|| fail("meet", a, b))?;
            join[a * n + b] = j as u32;
            join[b * n + a] = j as u32;
            meet[a * n + b] = m as u32;
            meet[b * n + a] = m as u32;
        }
    }
    Ok(LatticeTables { join, meet, bottom, top })
}

/// The lexicographically first triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
pub fn distributivity_witness(l: &Suplattice) -> Option<(usize, usize, usize)> {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub fn is_distributive(l: &Suplattice) -> bool {
    distributivity_witness(l).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The right adjoint of a join-preserving map or the left adjoint of a
/// meet-preserving one, checked against the adjunction law.
pub fn adjoint(f: &[usize], source: &Suplattice, target: &Suplattice, side: Side) -> Result<Vec<usize>> {
    let (n, m) = (source.len(), target.len());
    if f.len() != n {
        return Err(Error::BadTable {
            what: "map",
            expected: n,
            found: f.len(),
        });
    }
    let no = |reason: String| Err(Error::NoAdjoint { reason });
    match side {
        Side::Right => {
            if f[source.bottom()] != target.bottom() {
                return no(format!("{} is not sent to bottom", source.label(source.bottom())));
            }
            for a in 0..n {
                for b in 0..n {
                    if f[source.join(a, b)] != target.join(f[a], f[b]) {
                        return no(format!("join of {} and {} not preserved", source.label(a), source.label(b)));
                    }
                }
            }
        }
        Side::Left => {
            if f[source.top()] != target.top() {
                return no(format!("{} is not sent to top", source.label(source.top())));
            }
            for a in 0..n {
                for b in 0..n {
                    if f[source.meet(a, b)] != target.meet(f[a], f[b]) {
                        return no(format!("meet of {} and {} not preserved", source.label(a), source.label(b)));
                    }
                }
            }
        }
    }
    let g: Vec<usize> = (0..m)
        .map(|b| match side {
            Side::Right => source.join_all((0..n).filter(|&a| target.leq(f[a], b))),
            Side::Left => source.meet_all((0..n).filter(|&a| target.leq(b, f[a]))),
        })
        .collect();
    for a in 0..n {
        for b in 0..m {
            let ok = match side {
                Side::Right => target.leq(f[a], b) == source.leq(a, g[b]),
                Side::Left => target.leq(b, f[a]) == source.leq(g[b], a),
            };
            if !ok {
                return no(format!("adjunction fails at ({}, {})", source.label(a), target.label(b)));
            }
        }
    }
    Ok(g)
}

/// A closure operator together with the quotient lattice of its fixed points.
#[derive(Clone, Debug)]
pub struct ClosureQuotient {
    pub closure: ClosureOperator,
    pub quotient: Suplattice,
    /// Fixed points of the closure, in quotient order (position = quotient index).
    pub fixed: Vec<usize>,
    /// `x ↦ j(x)`, as quotient indices.
    pub surjection: Vec<usize>,
}

impl ClosureQuotient {
    pub fn from_closure(l: &Suplattice, closure: ClosureOperator) -> Result<Self> {
        let fixed = closure.fixed_points();
        let quotient = Suplattice::new(l.poset().restrict(&fixed))?;
        let mut pos = vec![usize::MAX; l.len()];
        for (i, &f) in fixed.iter().enumerate() {
            pos[f] = i;
        }
        let surjection = (0..l.len()).map(|x| pos[closure.apply(x)]).collect();
        Ok(ClosureQuotient {
            closure,
            quotient,
            fixed,
            surjection,
        })
    }
}

/// Raise `j` by round-robin passes until it is a closure operator.
pub(crate) fn close_table(l: &Suplattice, j: &mut [usize]) -> bool {
    let n = l.len();
    let mut changed_any = false;
    loop {
        let mut changed = false;
        for x in 0..n {
            let mut v = j[x];
            v = l.join(v, x);
            for y in 0..n {
                if l.leq(y, x) {
                    v = l.join(v, j[y]);
                }
            }
            v = l.join(v, j[v]);
            if v != j[x] {
                j[x] = v;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        changed_any = true;
    }
    changed_any
}

/// The least closure operator `j` with `a <= j(b)` for every forcing `(a, b)`.
pub fn least_closure(l: &Suplattice, forcings: &[(usize, usize)]) -> Result<ClosureQuotient> {
    let mut j: Vec<usize> = (0..l.len()).collect();
    loop {
        let mut changed = false;
        for &(a, b) in forcings {
            let v = l.join(j[b], a);
            if v != j[b] {
                j[b] = v;
                changed = true;
            }
        }
        changed |= close_table(l, &mut j);
        if !changed {
            break;
        }
    }
    let closure = ClosureOperator::new(l.poset(), j)?;
    ClosureQuotient::from_closure(l, closure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn two_chain_closure_of_a_cover() {
        let p = FinitePoset::build(&["a", "b"], &[("a", "b")]).unwrap();
        let related = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).filter(|&(i, j)| p.leq(i, j)).count();
        assert_eq!(related, 3);
    }

    #[test]
    fn m3_atoms_incomparable() {
        let pairs = [("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")];
        let p = FinitePoset::build(&["0", "x", "y", "z", "1"], &pairs).unwrap();
        assert_eq!(p.len(), 5);
        for a in 1..4 {
            for b in 1..4 {
                assert_eq!(p.leq(a, b), a == b);
            }
        }
    }

    #[test]
    fn antisymmetry_violation_is_a_cycle() {
        let e = FinitePoset::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(e, Error::Cycle { .. }));
        let e = FinitePoset::build(&["a", "a"], &[]).unwrap_err();
        assert_eq!(e, Error::DuplicateElement("a".into()));
    }

    #[test]
    fn chain_and_m3_tables() {
        let c3 = catalog::chain(3);
        assert_eq!(c3.join(1, 2), 2);
        assert_eq!(c3.meet(1, 2), 1);
        let m3 = catalog::m3();
        let (x, y) = (m3.index_of("x").unwrap(), m3.index_of("y").unwrap());
        assert_eq!(m3.label(m3.join(x, y)), "1");
        assert_eq!(m3.label(m3.meet(x, y)), "0");
    }

    #[test]
    fn two_maxima_is_not_a_lattice() {
        let p = FinitePoset::build(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap();
        assert!(matches!(lattice_structure(&p), Err(Error::NotALattice { .. })));
    }

    #[test]
    fn distributivity_brute_force() {
        for n in 1..6 {
            assert!(is_distributive(&catalog::chain(n)));
        }
        let m3 = catalog::m3();
        let (a, b, c) = distributivity_witness(&m3).unwrap();
        // first violating triple is made of the three atoms
        let labels: Vec<&str> = [a, b, c].iter().map(|&i| m3.label(i)).collect();
        assert_eq!(labels, ["x", "y", "z"]);
        assert!(!is_distributive(&catalog::n5()));
    }

    #[test]
    fn right_adjoint_of_chain_embedding() {
        let (c2, c3) = (catalog::chain(2), catalog::chain(3));
        let f = [0, 1]; // 0 ↦ 0, 1 ↦ m
        let g = adjoint(&f, &c2, &c3, Side::Right).unwrap();
        assert_eq!(g, [0, 1, 1]);
        let id: Vec<usize> = (0..3).collect();
        assert_eq!(adjoint(&id, &c3, &c3, Side::Right).unwrap(), id);
        assert_eq!(adjoint(&id, &c3, &c3, Side::Left).unwrap(), id);
    }

    #[test]
    fn non_monotone_rejected_and_non_join_preserving_has_no_adjoint() {
        let (c2, c3) = (catalog::chain(2), catalog::chain(3));
        assert!(matches!(
            MonotoneMap::new(c3.poset(), c2.poset(), vec![0, 1, 0]),
            Err(Error::NotMonotone { .. })
        ));
        // monotone but sends bottom to m
        assert!(matches!(adjoint(&[1, 2], &c2, &c3, Side::Right), Err(Error::NoAdjoint { .. })));
    }

    #[test]
    fn least_closure_examples() {
        let c3 = catalog::chain(3);
        let q = least_closure(&c3, &[]).unwrap();
        assert!(q.closure.is_identity());
        assert_eq!(q.quotient.len(), 3);

        let q = least_closure(&c3, &[(1, 0)]).unwrap();
        assert_eq!(q.closure.values(), &[1, 1, 2]);
        assert_eq!(q.quotient.len(), 2);

        let p2 = catalog::powerset(2);
        let (s1, s2) = (p2.index_of("{1}").unwrap(), p2.index_of("{2}").unwrap());
        let q = least_closure(&p2, &[(s1, p2.bottom()), (s2, p2.bottom())]).unwrap();
        assert_eq!(q.closure.apply(p2.bottom()), p2.top());
        assert_eq!(q.quotient.len(), 1);
    }

    /// Every closure operator on the carrier, by brute force over all tables.
    fn all_closures(l: &Suplattice) -> Vec<Vec<usize>> {
        let n = l.len();
        let mut out = Vec::new();
        let mut t = vec![0usize; n];
        loop {
            if ClosureOperator::new(l.poset(), t.clone()).is_ok() {
                out.push(t.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                t[i] += 1;
                if t[i] < n {
                    break;
                }
                t[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn least_closure_is_minimal_among_all_closures() {
        for l in [catalog::chain(4), catalog::m3(), catalog::n5(), catalog::powerset(2)] {
            let closures = all_closures(&l);
            let n = l.len();
            for a in 0..n {
                for b in 0..n {
                    let forcing = [(a, b)];
                    let j = least_closure(&l, &forcing).unwrap().closure;
                    assert!(l.leq(a, j.apply(b)));
                    for k in closures.iter().filter(|k| l.leq(a, k[b])) {
                        assert!((0..n).all(|x| l.leq(j.apply(x), k[x])));
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_surjection_preserves_joins() {
        let l = catalog::powerset(3);
        let q = least_closure(&l, &[(1, 0), (6, 4)]).unwrap();
        let s = &q.surjection;
        assert_eq!(s[l.bottom()], q.quotient.bottom());
        for a in 0..l.len() {
            for b in 0..l.len() {
                assert_eq!(s[l.join(a, b)], q.quotient.join(s[a], s[b]));
            }
        }
    }

    #[test]
    fn up_and_down_sets_of_chain() {
        let p = catalog::chain(3);
        assert_eq!(p.poset().up_sets(100).unwrap(), [0b000, 0b100, 0b110, 0b111]);
        assert_eq!(p.poset().down_sets(100).unwrap(), [0b000, 0b001, 0b011, 0b111]);
        assert!(p.poset().up_sets(3).is_err());
    }
}
