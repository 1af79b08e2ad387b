//! Finite commutative monoids and semirings, and their localic forms.
//!
//! A localic monoid here is a finite locale presented by a poset of points
//! together with a monotone point-level multiplication; its comultiplication
//! `μ×` is preimage. Law failures report the lexicographically first witness.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::locale::{alexandrov, FiniteLocale};
use crate::order::{bit, FinitePoset};
use crate::suplattice::Suplattice;
use crate::{law, Error, Result};

fn check_table(what: &'static str, n: usize, t: &[usize]) -> Result<()> {
    if t.len() != n * n {
        return Err(Error::BadTable {
            what,
            expected: n * n,
            found: t.len(),
        });
    }
    if let Some(&v) = t.iter().find(|&&v| v >= n) {
        return Err(Error::BadTable {
            what,
            expected: n,
            found: v,
        });
    }
    Ok(())
}

fn check_monoid_laws(labels: &[String], op: &str, unit: usize, t: &[usize]) -> Result<()> {
    let n = labels.len();
    let m = |a: usize, b: usize| t[a * n + b];
    for a in 0..n {
        for b in 0..n {
            if m(a, b) != m(b, a) {
                return Err(Error::LawViolation {
                    law: "commutativity",
                    witness: format!("{op}: {} and {}", labels[a], labels[b]),
                });
            }
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(Error::LawViolation {
                        law: "associativity",
                        witness: format!("{op}: ({}, {}, {})", labels[a], labels[b], labels[c]),
                    });
                }
            }
        }
    }
    for a in 0..n {
        if m(a, unit) != a {
            return Err(Error::LawViolation {
                law: "unit",
                witness: format!("{op}: {}", labels[a]),
            });
        }
    }
    Ok(())
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateElement(l.clone()));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCommMonoid {
    labels: Vec<String>,
    unit: usize,
    mul: Vec<usize>,
}

impl FiniteCommMonoid {
    pub fn new(labels: Vec<String>, unit: usize, mul: Vec<usize>) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        check_table("multiplication", n, &mul)?;
        if unit >= n {
            return Err(Error::BadTable { what: "unit", expected: n, found: unit });
        }
        check_monoid_laws(&labels, "·", unit, &mul)?;
        Ok(FiniteCommMonoid { labels, unit, mul })
    }

    pub fn from_fn<S: AsRef<str>>(labels: &[S], unit: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let labels = labels.iter().map(|s| s.as_ref().to_string()).collect();
        FiniteCommMonoid::new(labels, unit, (0..n * n).map(|i| f(i / n, i % n)).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    /// `g ∣ f`: some `k` has `f = g·k`.
    pub fn divides(&self, g: usize, f: usize) -> bool {
        (0..self.len()).any(|k| self.mul(g, k) == f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCommSemiring {
    labels: Vec<String>,
    zero: usize,
    one: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl FiniteCommSemiring {
    pub fn new(labels: Vec<String>, zero: usize, one: usize, add: Vec<usize>, mul: Vec<usize>) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        check_table("addition", n, &add)?;
        check_table("multiplication", n, &mul)?;
        for u in [zero, one] {
            if u >= n {
                return Err(Error::BadTable { what: "unit", expected: n, found: u });
            }
        }
        check_monoid_laws(&labels, "+", zero, &add)?;
        check_monoid_laws(&labels, "·", one, &mul)?;
        for x in 0..n {
            if mul[x * n + zero] != zero {
                return Err(law("annihilation", format!("{} · {}", labels[x], labels[zero])));
            }
            for a in 0..n {
                for b in 0..n {
                    if mul[x * n + add[a * n + b]] != add[mul[x * n + a] * n + mul[x * n + b]] {
                        return Err(law("distributivity", format!("({}, {}, {})", labels[x], labels[a], labels[b])));
                    }
                }
            }
        }
        Ok(FiniteCommSemiring { labels, zero, one, add, mul })
    }

    pub fn from_fns<S: AsRef<str>>(
        labels: &[S],
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        let labels = labels.iter().map(|s| s.as_ref().to_string()).collect();
        FiniteCommSemiring::new(
            labels,
            zero,
            one,
            (0..n * n).map(|i| add(i / n, i % n)).collect(),
            (0..n * n).map(|i| mul(i / n, i % n)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn multiplicative(&self) -> FiniteCommMonoid {
        FiniteCommMonoid {
            labels: self.labels.clone(),
            unit: self.one,
            mul: self.mul.clone(),
        }
    }
}

/// A distributive lattice as a semiring under join and meet.
pub fn lattice_semiring(l: &Suplattice) -> Result<FiniteCommSemiring> {
    if let Some((a, b, c)) = crate::order::distributivity_witness(l) {
        return Err(Error::NotDistributive {
            a: l.label(a).to_string(),
            b: l.label(b).to_string(),
            c: l.label(c).to_string(),
        });
    }
    let labels: Vec<String> = l.poset().labels().to_vec();
    FiniteCommSemiring::from_fns(&labels, l.bottom(), l.top(), |a, b| l.join(a, b), |a, b| l.meet(a, b))
}

fn check_monotone2(points: &FinitePoset, name: &str, t: &[usize]) -> Result<()> {
    let n = points.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if points.leq(a, b) && !points.leq(t[a * n + c], t[b * n + c]) {
                    return Err(Error::NotMonotone {
                        witness: format!(
                            "{name}: {} <= {} but {} {name} {} !<= {} {name} {}",
                            points.label(a),
                            points.label(b),
                            points.label(a),
                            points.label(c),
                            points.label(b),
                            points.label(c)
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Preimage of an up-set of points under a binary point map, as a subset of pairs.
pub fn preimage2(n: usize, t: &[usize], u: u64) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n * n);
    for i in 0..n * n {
        if u & bit(t[i]) != 0 {
            s.insert(i);
        }
    }
    s
}

fn is_up_set_of_pairs(p: &FinitePoset, s: &FixedBitSet) -> bool {
    let n = p.len();
    s.ones().all(|i| {
        let (x, y) = (i / n, i % n);
        (0..n).all(|a| (0..n).all(|b| !(p.leq(x, a) && p.leq(y, b)) || s.contains(a * n + b)))
    })
}

/// Frame-level comonoid laws for the comultiplication `U ↦ t⁻¹(U)`:
/// counit at `e`, coassociativity and cocommutativity, on every open.
fn check_comonoid(locale: &FiniteLocale, name: &'static str, unit: usize, t: &[usize]) -> Result<()> {
    let p = locale.points();
    let n = p.len();
    for &u in locale.open_masks().masks() {
        let pre = preimage2(n, t, u);
        if !is_up_set_of_pairs(p, &pre) {
            return Err(law(name, format!("preimage of {} is not an up-set", p.mask_label(u))));
        }
        // (id ⊗ ε)(μ(U)) = {x : (x, e) ∈ μ(U)}
        let counit = (0..n).filter(|&x| pre.contains(x * n + unit)).fold(0, |m, x| m | bit(x));
        if counit != u {
            return Err(law(name, format!("counit fails on {}", p.mask_label(u))));
        }
        for x in 0..n {
            for y in 0..n {
                if pre.contains(x * n + y) != pre.contains(y * n + x) {
                    return Err(law(name, format!("cocommutativity fails on {}", p.mask_label(u))));
                }
                for z in 0..n {
                    // (μ ⊗ id)μ(U) ∋ (x,y,z) iff t(x,y) ⊗ z ∈ μ(U); likewise on the right
                    let left = pre.contains(t[x * n + y] * n + z);
                    let right = pre.contains(x * n + t[y * n + z]);
                    if left != right {
                        return Err(law(name, format!("coassociativity fails on {}", p.mask_label(u))));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct LocalicMonoid {
    pub locale: FiniteLocale,
    pub unit: usize,
    times: Vec<usize>,
}

impl LocalicMonoid {
    pub fn new(locale: FiniteLocale, unit: usize, times: Vec<usize>) -> Result<Self> {
        let p = locale.points().clone();
        check_table("multiplication", p.len(), &times)?;
        check_monotone2(&p, "·", &times)?;
        check_monoid_laws(p.labels(), "·", unit, &times)?;
        check_comonoid(&locale, "μ×", unit, &times)?;
        Ok(LocalicMonoid { locale, unit, times })
    }

    pub fn discrete(m: &FiniteCommMonoid) -> Result<Self> {
        Self::ordered(m, &FinitePoset::discrete(m.labels())?)
    }

    pub fn ordered(m: &FiniteCommMonoid, order: &FinitePoset) -> Result<Self> {
        let order = align_order(m.labels(), order)?;
        LocalicMonoid::new(alexandrov(&order)?, m.unit, m.mul.clone())
    }

    pub fn points(&self) -> &FinitePoset {
        self.locale.points()
    }

    pub fn len(&self) -> usize {
        self.points().len()
    }

    pub fn is_empty(&self) -> bool {
        self.points().is_empty()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.times[x * self.len() + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.times
    }

    /// `μ×(U) = {(x, y) : x·y ∈ U}`.
    pub fn mu_times(&self, u: u64) -> FixedBitSet {
        preimage2(self.len(), &self.times, u)
    }

    pub fn point_monoid(&self) -> FiniteCommMonoid {
        FiniteCommMonoid {
            labels: self.points().labels().to_vec(),
            unit: self.unit,
            mul: self.times.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalicSemiring {
    pub mult: LocalicMonoid,
    pub zero: usize,
    plus: Vec<usize>,
}

impl LocalicSemiring {
    pub fn new(mult: LocalicMonoid, zero: usize, plus: Vec<usize>) -> Result<Self> {
        let p = mult.points().clone();
        let n = p.len();
        check_table("addition", n, &plus)?;
        check_monotone2(&p, "+", &plus)?;
        check_monoid_laws(p.labels(), "+", zero, &plus)?;
        check_comonoid(&mult.locale, "μ₊", zero, &plus)?;
        for x in 0..n {
            if mult.mul(x, zero) != zero {
                return Err(law("annihilation", format!("{} · {}", p.label(x), p.label(zero))));
            }
            for a in 0..n {
                for b in 0..n {
                    if mult.mul(x, plus[a * n + b]) != plus[mult.mul(x, a) * n + mult.mul(x, b)] {
                        return Err(law("distributivity", format!("({}, {}, {})", p.label(x), p.label(a), p.label(b))));
                    }
                }
            }
        }
        Ok(LocalicSemiring { mult, zero, plus })
    }

    pub fn locale(&self) -> &FiniteLocale {
        &self.mult.locale
    }

    pub fn points(&self) -> &FinitePoset {
        self.mult.points()
    }

    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn one(&self) -> usize {
        self.mult.unit
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.plus[x * self.len() + y]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult.mul(x, y)
    }

    /// `μ₊(U) = {(x, y) : x + y ∈ U}`.
    pub fn mu_plus(&self, u: u64) -> FixedBitSet {
        preimage2(self.len(), &self.plus, u)
    }

    pub fn point_semiring(&self) -> FiniteCommSemiring {
        FiniteCommSemiring {
            labels: self.points().labels().to_vec(),
            zero: self.zero,
            one: self.one(),
            add: self.plus.clone(),
            mul: self.mult.times.clone(),
        }
    }

    pub fn is_discrete(&self) -> bool {
        let p = self.points();
        (0..p.len()).all(|a| (0..p.len()).all(|b| a == b || !p.leq(a, b)))
    }
}

/// Re-index `order` so that its elements appear in the order of `labels`.
fn align_order(labels: &[String], order: &FinitePoset) -> Result<FinitePoset> {
    if order.len() != labels.len() {
        return Err(Error::BadTable {
            what: "order",
            expected: labels.len(),
            found: order.len(),
        });
    }
    let pos: Vec<usize> = labels
        .iter()
        .map(|l| order.index_of(l).ok_or_else(|| Error::UnknownElement(l.clone())))
        .collect::<Result<_>>()?;
    Ok(order.restrict(&pos))
}

/// The localic semiring of `r` with the Alexandrov topology of `order`
/// (discrete if `None`).
pub fn to_localic(r: &FiniteCommSemiring, order: Option<&FinitePoset>) -> Result<LocalicSemiring> {
    let order = match order {
        Some(o) => align_order(&r.labels, o)?,
        None => FinitePoset::discrete(&r.labels)?,
    };
    let mult = LocalicMonoid::new(alexandrov(&order)?, r.one, r.mul.clone())?;
    LocalicSemiring::new(mult, r.zero, r.add.clone())
}

/// A finite distributive lattice as a localic semiring on its own points.
pub fn scott_localic_lattice(l: &Suplattice) -> Result<LocalicSemiring> {
    let r = lattice_semiring(l)?;
    to_localic(&r, Some(l.poset()))
}

#[derive(Clone, Debug)]
pub struct Holoid {
    pub monoid: FiniteCommMonoid,
    pub surjection: Vec<usize>,
    /// The natural order on the quotient: `x ≤ y` iff `y ∣ x`.
    pub order: FinitePoset,
}

/// Quotient of `m` by mutual divisibility.
pub fn holoid_quotient(m: &FiniteCommMonoid) -> Result<Holoid> {
    let n = m.len();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for y in x..n {
            if m.divides(x, y) && m.divides(y, x) {
                class[y] = c;
            }
        }
    }
    let k = reps.len();
    let labels: Vec<String> = reps.iter().map(|&x| m.label(x).to_string()).collect();
    let mul: Vec<usize> = (0..k * k).map(|i| class[m.mul(reps[i / k], reps[i % k])]).collect();
    let monoid = FiniteCommMonoid::new(labels.clone(), class[m.unit], mul)?;
    let order = FinitePoset::from_fn(labels, |x, y| m.divides(reps[y], reps[x]))?;
    Ok(Holoid {
        monoid,
        surjection: class,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn discrete_semirings() {
        catalog::semiring_bool();
        let z4 = catalog::zmod(4);
        assert_eq!(z4.mul(2, 2), 0);
        // x·(a+b) ≠ x·a + x·b: ℤ/2 addition with "multiplication" max
        let e = FiniteCommSemiring::from_fns(&["0", "1"], 0, 0, |a, b| (a + b) % 2, |a, b| a.max(b)).unwrap_err();
        assert!(matches!(e, Error::LawViolation { .. }));
    }

    #[test]
    fn distributivity_witness_is_first_triple() {
        // ℤ/3 addition with min as multiplication and unit 2
        let e = FiniteCommSemiring::from_fns(&["0", "1", "2"], 0, 2, |a, b| (a + b) % 3, |a, b| a.min(b)).unwrap_err();
        match e {
            Error::LawViolation { law, witness } => {
                assert_eq!(law, "distributivity");
                assert_eq!(witness, "(1, 1, 1)");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn to_localic_round_trip() {
        for r in catalog::discrete_semirings() {
            let d = to_localic(&r, None).unwrap();
            assert_eq!(d.point_semiring(), r);
            assert!(d.is_discrete());
        }
    }

    #[test]
    fn reversed_sierpinski_is_valid() {
        let d = catalog::sierpinski_reversed();
        assert_eq!(d.len(), 2);
        assert_eq!(d.points().label(d.zero), "⊤");
    }

    #[test]
    fn non_monotone_operations_rejected() {
        let r = catalog::zmod(2);
        let order = FinitePoset::build(&["0", "1"], &[("0", "1")]).unwrap();
        // 1 + 1 = 0 while 0 + 1 = 1
        assert!(matches!(to_localic(&r, Some(&order)), Err(Error::NotMonotone { .. })));
        // 1 ≤ a but 1·a = a is not below a·a = 1
        let z2 = catalog::monoid_z2();
        let order = FinitePoset::build(&["1", "a"], &[("1", "a")]).unwrap();
        assert!(matches!(LocalicMonoid::ordered(&z2, &order), Err(Error::NotMonotone { .. })));
    }

    #[test]
    fn scott_lattices() {
        scott_localic_lattice(&catalog::chain(2)).unwrap();
        let c3 = scott_localic_lattice(&catalog::chain(3)).unwrap();
        assert_eq!(c3.locale().opens().len(), 4);
        assert!(matches!(scott_localic_lattice(&catalog::m3()), Err(Error::NotDistributive { .. })));
    }

    #[test]
    fn holoid_examples() {
        let z2 = holoid_quotient(&catalog::monoid_z2()).unwrap();
        assert_eq!(z2.monoid.len(), 1);
        let nil = catalog::monoid_nil();
        let h = holoid_quotient(&nil).unwrap();
        assert_eq!(h.monoid, nil);
        // 1 | a | 0, so 0 ≤ a ≤ 1 in the natural order
        let (one, a, zero) = (0, 1, 2);
        assert!(h.order.leq(zero, a) && h.order.leq(a, one));
        let l = catalog::chain(3);
        let meet = FiniteCommMonoid::from_fn(l.poset().labels(), l.top(), |x, y| l.meet(x, y)).unwrap();
        let h = holoid_quotient(&meet).unwrap();
        assert_eq!(h.monoid, meet);
        assert_eq!(&h.order, l.poset());
    }

    #[test]
    fn holoid_idempotent_and_homomorphic() {
        for m in catalog::monoids() {
            let h = holoid_quotient(&m).unwrap();
            let hh = holoid_quotient(&h.monoid).unwrap();
            assert_eq!(hh.monoid, h.monoid);
            for x in 0..m.len() {
                for y in 0..m.len() {
                    assert_eq!(h.surjection[m.mul(x, y)], h.monoid.mul(h.surjection[x], h.surjection[y]));
                    // order-reflecting onto divisibility
                    assert_eq!(
                        h.order.leq(h.surjection[y], h.surjection[x]),
                        m.divides(x, y)
                    );
                }
            }
        }
    }
}
