//! Finite suplattices, join-preserving maps, duals and dual bases.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::order::{lattice_structure, FinitePoset, LatticeTables};
use crate::tensor::{TensorElement, TensorLattice, TensorSpace};
use crate::{Caps, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suplattice {
    poset: FinitePoset,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
    irreducibles: Vec<usize>,
}

impl Suplattice {
    pub fn new(poset: FinitePoset) -> Result<Self> {
        let t = lattice_structure(&poset)?;
        Ok(Self::from_tables(poset, t))
    }

    pub(crate) fn from_tables(poset: FinitePoset, t: LatticeTables) -> Self {
        let n = poset.len();
        let LatticeTables { join, meet, bottom, top } = t;
        // x is join-irreducible iff it is not the join of the elements strictly below it.
        let irreducibles = (0..n)
            .filter(|&x| {
                let below = (0..n)
                    .filter(|&y| y != x && poset.leq(y, x))
                    .fold(bottom, |acc, y| join[acc * n + y] as usize);
                x != bottom && below != x
            })
            .collect();
        Suplattice {
            poset,
            join,
            meet,
            bottom,
            top,
            irreducibles,
        }
    }

    /// The two-element lattice of truth values.
    pub fn omega() -> Self {
        let p = FinitePoset::build(&["0", "1"], &[("0", "1")]).expect("2-chain");
        Suplattice::new(p).expect("2-chain is a lattice")
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }

    pub fn join_irreducibles(&self) -> &[usize] {
        &self.irreducibles
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        let mut l = self.clone();
        l.poset = self.poset.with_labels(labels)?;
        Ok(l)
    }

    /// The opposite lattice, same labels.
    pub fn opposite(&self) -> Suplattice {
        Suplattice::new(self.poset.opposite()).expect("opposite of a finite lattice is a lattice")
    }

    /// Cartesian product; pair `(a, b)` sits at `a * other.len() + b`.
    pub fn product(&self, other: &Suplattice) -> Suplattice {
        let m = other.len();
        let size = self.len() * m;
        let mut join = vec![0u32; size * size];
        let mut meet = vec![0u32; size * size];
        for i in 0..size {
            for j in 0..size {
                let (a, b, c, d) = (i / m, i % m, j / m, j % m);
                join[i * size + j] = (self.join(a, c) * m + other.join(b, d)) as u32;
                meet[i * size + j] = (self.meet(a, c) * m + other.meet(b, d)) as u32;
            }
        }
        let t = LatticeTables {
            join,
            meet,
            bottom: self.bottom * m + other.bottom,
            top: self.top * m + other.top,
        };
        Suplattice::from_tables(self.poset.product(&other.poset), t)
    }

    /// Sub-suplattice-or-not: the restriction of the order to `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Result<Suplattice> {
        Suplattice::new(self.poset.restrict(keep))
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.poset.covers()
    }

    fn check_element(&self, a: usize) -> Result<()> {
        if a >= self.len() {
            return Err(Error::BadTable {
                what: "element index",
                expected: self.len(),
                found: a,
            });
        }
        Ok(())
    }
}

/// Scalar action of a truth value on an element: `⊤·q = q`, `0·q = 0`.
pub fn scalar(l: &Suplattice, p: bool, q: usize) -> usize {
    if p {
        q
    } else {
        l.bottom()
    }
}

/// A join-preserving table between two suplattices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupMap {
    values: Vec<usize>,
}

impl SupMap {
    pub fn new(source: &Suplattice, target: &Suplattice, values: Vec<usize>) -> Result<Self> {
        if values.len() != source.len() {
            return Err(Error::BadTable {
                what: "map",
                expected: source.len(),
                found: values.len(),
            });
        }
        for &v in &values {
            target.check_element(v)?;
        }
        if let Some(w) = join_failure(source, target, &values) {
            return Err(crate::law("join preservation", w));
        }
        Ok(SupMap { values })
    }

    pub(crate) fn unchecked(values: Vec<usize>) -> Self {
        SupMap { values }
    }

    pub fn identity(l: &Suplattice) -> Self {
        SupMap {
            values: (0..l.len()).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.values[a]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SupMap) -> SupMap {
        SupMap {
            values: first.values.iter().map(|&v| self.values[v]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut v = self.values.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_surjective(&self, target: &Suplattice) -> bool {
        let mut seen = vec![false; target.len()];
        for &v in &self.values {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

fn join_failure(source: &Suplattice, target: &Suplattice, f: &[usize]) -> Option<String> {
    if f[source.bottom()] != target.bottom() {
        return Some(format!("{} is not sent to bottom", source.label(source.bottom())));
    }
    for a in 0..source.len() {
        for b in a + 1..source.len() {
            if f[source.join(a, b)] != target.join(f[a], f[b]) {
                return Some(format!("{} ∨ {}", source.label(a), source.label(b)));
            }
        }
    }
    None
}

pub fn is_join_preserving(source: &Suplattice, target: &Suplattice, f: &[usize]) -> bool {
    join_failure(source, target, f).is_none()
}

/// Extend an assignment on the join-irreducibles of `source` by joins.
pub fn extend_from_irreducibles(source: &Suplattice, target: &Suplattice, on_j: &[usize]) -> Vec<usize> {
    let j = source.join_irreducibles();
    (0..source.len())
        .map(|a| {
            target.join_all(
                j.iter()
                    .zip(on_j)
                    .filter(|(&p, _)| source.leq(p, a))
                    .map(|(_, &v)| v),
            )
        })
        .collect()
}

/// Visit every monotone assignment on the join-irreducibles of `source`,
/// extended by joins, that is join-preserving; `accept` filters further.
pub(crate) fn for_each_sup_map(
    source: &Suplattice,
    target: &Suplattice,
    caps: &Caps,
    mut visit: impl FnMut(Vec<usize>),
) -> Result<()> {
    let j = source.join_irreducibles().to_vec();
    caps.check("join-irreducibles of hom source", j.len(), caps.max_exhaustive)?;
    // join-irreducibles are indexed in ascending element order; visit them
    // along a linear extension so predecessors are assigned first
    let ext = source.poset().linear_extension();
    let order: Vec<usize> = ext
        .iter()
        .filter_map(|x| j.iter().position(|p| p == x))
        .collect();
    let mut assign = vec![usize::MAX; j.len()];
    fn rec(
        k: usize,
        order: &[usize],
        j: &[usize],
        assign: &mut Vec<usize>,
        source: &Suplattice,
        target: &Suplattice,
        visit: &mut dyn FnMut(Vec<usize>),
    ) {
        if k == order.len() {
            let f = extend_from_irreducibles(source, target, assign);
            if is_join_preserving(source, target, &f) {
                visit(f);
            }
            return;
        }
        let pi = order[k];
        let p = j[pi];
        // the value at p sits above the values of the irreducibles below it
        let floor = target.join_all(
            order[..k]
                .iter()
                .filter(|&&qi| source.leq(j[qi], p))
                .map(|&qi| assign[qi]),
        );
        for v in 0..target.len() {
            if target.leq(floor, v) {
                assign[pi] = v;
                rec(k + 1, order, j, assign, source, target, visit);
            }
        }
        assign[pi] = usize::MAX;
    }
    rec(0, &order, &j, &mut assign, source, target, &mut visit);
    Ok(())
}

/// All join-preserving maps `source → target`, sorted by value table.
pub fn sup_maps(source: &Suplattice, target: &Suplattice, caps: &Caps) -> Result<Vec<SupMap>> {
    let mut out = Vec::new();
    for_each_sup_map(source, target, caps, |f| out.push(SupMap::unchecked(f)))?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Value table of the functional encoded by `c` in the dual: `a ↦ [a ≰ c]`,
/// as indices into `Ω` (0 or 1).
pub fn functional(l: &Suplattice, c: usize) -> Vec<usize> {
    (0..l.len()).map(|a| usize::from(!l.leq(a, c))).collect()
}

pub fn pairing(l: &Suplattice, c: usize, a: usize) -> bool {
    !l.leq(a, c)
}

/// `hom(L, Ω)` realised as the opposite order of `L`.
pub fn dual(l: &Suplattice) -> Suplattice {
    l.opposite()
}

/// Check that `c ↦ functional(c)` is an order isomorphism `L^op ≅ hom(L, Ω)`
/// with the pointwise order.
pub fn verify_dual(l: &Suplattice, caps: &Caps) -> Result<()> {
    let omega = Suplattice::omega();
    let homs = sup_maps(l, &omega, caps)?;
    let mut encoded: Vec<Vec<usize>> = (0..l.len()).map(|c| functional(l, c)).collect();
    for (c, f) in encoded.iter().enumerate() {
        if !is_join_preserving(l, &omega, f) {
            return Err(crate::law("dual encoding", format!("functional of {}", l.label(c))));
        }
    }
    for c in 0..l.len() {
        for d in 0..l.len() {
            let pointwise = (0..l.len()).all(|a| encoded[c][a] <= encoded[d][a]);
            if pointwise != l.leq(d, c) {
                return Err(crate::law(
                    "dual order",
                    format!("{} vs {}", l.label(c), l.label(d)),
                ));
            }
        }
    }
    encoded.sort();
    let all: Vec<Vec<usize>> = homs.into_iter().map(SupMap::into_values).collect();
    if encoded != all {
        return Err(crate::law(
            "dual bijection",
            format!("{} encoded functionals vs {} homomorphisms", encoded.len(), all.len()),
        ));
    }
    Ok(())
}

/// `a ⋘ b`: every subset whose join lies above `b` has a member above `a`.
/// Uses that `{x : a ≰ x}` is the largest subset with no member above `a`.
pub fn totally_below(l: &Suplattice) -> Vec<bool> {
    let n = l.len();
    let mut rel = vec![false; n * n];
    for a in 0..n {
        let avoid = l.join_all((0..n).filter(|&x| !l.leq(a, x)));
        for b in 0..n {
            rel[a * n + b] = !l.leq(b, avoid);
        }
    }
    rel
}

/// The same relation by enumerating every subset of the carrier.
pub fn totally_below_exhaustive(l: &Suplattice, caps: &Caps) -> Result<Vec<bool>> {
    let n = l.len();
    caps.check("subset-exhaustive carrier", n, caps.max_exhaustive)?;
    let mut rel = vec![true; n * n];
    for s in 0u32..(1u32 << n) {
        let members = (0..n).filter(|&i| s & (1 << i) != 0);
        let sup = l.join_all(members);
        for b in (0..n).filter(|&b| l.leq(b, sup)) {
            for a in 0..n {
                if !(0..n).any(|i| s & (1 << i) != 0 && l.leq(a, i)) {
                    rel[a * n + b] = false;
                }
            }
        }
    }
    Ok(rel)
}

/// The first element that is not the join of the elements totally below it.
pub fn supercontinuity_witness(l: &Suplattice) -> Option<usize> {
    let n = l.len();
    let rel = totally_below(l);
    (0..n).find(|&a| l.join_all((0..n).filter(|&b| rel[b * n + a])) != a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    /// Index set: the join-irreducibles.
    pub index: Vec<usize>,
    pub r: Vec<usize>,
    pub sigma: Vec<SupMap>,
}

impl DualBasis {
    pub fn reconstruct(&self, l: &Suplattice, a: usize) -> usize {
        l.join_all(
            self.r
                .iter()
                .zip(&self.sigma)
                .map(|(&r, s)| scalar(l, s.apply(a) == 1, r)),
        )
    }
}

#[derive(Clone, Debug)]
pub struct DualityData {
    pub l_star: Suplattice,
    /// `η(⊤) ∈ L* ⊗ L`.
    pub unit_element: TensorElement,
    pub unit_space: TensorSpace,
}

impl DualityData {
    /// `ε : L ⊗ L* → Ω`, `a ⊗ c ↦ [a ≰ c]`, evaluated on a tuple.
    pub fn evaluation(l: &Suplattice, a: usize, c: usize) -> bool {
        pairing(l, c, a)
    }
}

/// First triangle: `(ε ⊗ L)(a ⊗ η) = ⋁{[a ≰ c]·b : (c, b) ∈ η}` in `L`.
pub fn triangle_left(l: &Suplattice, eta: &TensorElement, eta_space: &TensorSpace, a: usize) -> usize {
    l.join_all(eta.tuples(eta_space).map(|t| scalar(l, pairing(l, t[0], a), t[1])))
}

/// Second triangle: `(L* ⊗ ε)(η ⊗ c) = ⋁{[b ≰ c]·d : (d, b) ∈ η}` in `L*`.
pub fn triangle_right(l: &Suplattice, l_star: &Suplattice, eta: &TensorElement, eta_space: &TensorSpace, c: usize) -> usize {
    l_star.join_all(eta.tuples(eta_space).map(|t| scalar(l_star, pairing(l, c, t[1]), t[0])))
}

pub fn triangles_hold(l: &Suplattice, l_star: &Suplattice, eta: &TensorElement, space: &TensorSpace) -> Option<String> {
    for a in 0..l.len() {
        if triangle_left(l, eta, space, a) != a {
            return Some(format!("left triangle at {}", l.label(a)));
        }
    }
    for c in 0..l_star.len() {
        if triangle_right(l, l_star, eta, space, c) != c {
            return Some(format!("right triangle at {}", l_star.label(c)));
        }
    }
    None
}

/// The dual basis indexed by join-irreducibles, and the duality data it induces.
pub fn dual_basis(l: &Suplattice) -> Result<(DualBasis, DualityData)> {
    if let Some(a) = supercontinuity_witness(l) {
        return Err(Error::NotSupercontinuous {
            witness: l.label(a).to_string(),
        });
    }
    let omega = Suplattice::omega();
    let index = l.join_irreducibles().to_vec();
    let mut sigma = Vec::with_capacity(index.len());
    for &p in &index {
        let values = (0..l.len()).map(|a| usize::from(l.leq(p, a))).collect();
        sigma.push(SupMap::new(l, &omega, values)?);
    }
    let basis = DualBasis {
        r: index.clone(),
        index,
        sigma,
    };
    for a in 0..l.len() {
        if basis.reconstruct(l, a) != a {
            return Err(Error::NotSupercontinuous {
                witness: l.label(a).to_string(),
            });
        }
    }
    let l_star = dual(l);
    let space = TensorSpace::new(alloc::vec![l_star.clone(), l.clone()]);
    // σ_p is encoded in L* by the largest element not above p
    let gens = basis.index.iter().map(|&p| {
        let c = l.join_all((0..l.len()).filter(|&x| !l.leq(p, x)));
        debug_assert_eq!(functional(l, c), basis.sigma[basis.index.iter().position(|&q| q == p).unwrap()].values());
        space.encode(&[c, p])
    });
    let unit_element = space.closure_of(gens);
    if let Some(w) = triangles_hold(l, &l_star, &unit_element, &space) {
        return Err(crate::law("triangle identity", w));
    }
    Ok((
        basis,
        DualityData {
            l_star,
            unit_element,
            unit_space: space,
        },
    ))
}

/// Three independent answers to "is `L` dualisable".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualisabilityReport {
    /// The largest family `(σ, r_σ)` over all `σ ∈ hom(L, Ω)` reconstructs every element.
    pub dual_basis: bool,
    /// Some element of `L* ⊗ L` satisfies both triangle identities.
    pub pairing: bool,
    /// Every element is the join of the elements totally below it.
    pub supercontinuous: bool,
}

pub fn dualisability(l: &Suplattice, caps: &Caps) -> Result<DualisabilityReport> {
    let omega = Suplattice::omega();
    let homs = sup_maps(l, &omega, caps)?;
    let n = l.len();
    // r_σ is the largest r with σ(a)·r ≤ a for all a
    let family: Vec<(&SupMap, usize)> = homs
        .iter()
        .map(|s| (s, l.meet_all((0..n).filter(|&a| s.apply(a) == 1))))
        .collect();
    let basis_ok = (0..n).all(|a| {
        l.join_all(family.iter().map(|(s, r)| scalar(l, s.apply(a) == 1, *r))) == a
    });

    let l_star = dual(l);
    let tensor = TensorLattice::new(alloc::vec![l_star.clone(), l.clone()], caps)?;
    let pairing_ok = tensor
        .elements()
        .iter()
        .any(|eta| triangles_hold(l, &l_star, eta, tensor.space()).is_none());

    Ok(DualisabilityReport {
        dual_basis: basis_ok,
        pairing: pairing_ok,
        supercontinuous: supercontinuity_witness(l).is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::order::is_distributive;

    #[test]
    fn omega_is_two_chain() {
        let o = Suplattice::omega();
        assert_eq!(o.len(), 2);
        assert_eq!((o.bottom(), o.top()), (0, 1));
        assert_eq!(o.join_irreducibles(), &[1]);
    }

    #[test]
    fn join_irreducibles_of_catalog() {
        let m3 = catalog::m3();
        let j: Vec<&str> = m3.join_irreducibles().iter().map(|&i| m3.label(i)).collect();
        assert_eq!(j, ["x", "y", "z"]);
        assert_eq!(catalog::chain(4).join_irreducibles().len(), 3);
        assert_eq!(catalog::powerset(3).join_irreducibles().len(), 3);
    }

    #[test]
    fn sup_maps_c2_to_c3_and_c3_to_omega() {
        let caps = Caps::default();
        assert_eq!(sup_maps(&catalog::chain(2), &catalog::chain(3), &caps).unwrap().len(), 3);
        assert_eq!(sup_maps(&catalog::chain(3), &Suplattice::omega(), &caps).unwrap().len(), 3);
    }

    /// All tables `source → target` that preserve binary joins and bottom.
    fn brute_sup_maps(source: &Suplattice, target: &Suplattice) -> Vec<Vec<usize>> {
        let (n, m) = (source.len(), target.len());
        let mut out = Vec::new();
        let mut t = vec![0usize; n];
        'outer: loop {
            if is_join_preserving(source, target, &t) {
                out.push(t.clone());
            }
            for i in 0..n {
                t[i] += 1;
                if t[i] < m {
                    continue 'outer;
                }
                t[i] = 0;
            }
            out.sort();
            return out;
        }
    }

    #[test]
    fn sup_map_enumeration_matches_brute_force() {
        let caps = Caps::default();
        let ls = [
            catalog::chain(1),
            catalog::chain(3),
            catalog::m3(),
            catalog::n5(),
            catalog::powerset(2),
        ];
        for a in &ls {
            for b in &ls {
                let fast: Vec<Vec<usize>> = sup_maps(a, b, &caps).unwrap().into_iter().map(SupMap::into_values).collect();
                assert_eq!(fast, brute_sup_maps(a, b));
            }
        }
    }

    #[test]
    fn dual_examples() {
        let caps = Caps::default();
        for l in [Suplattice::omega(), catalog::chain(3), catalog::m3(), catalog::n5(), catalog::powerset(2)] {
            verify_dual(&l, &caps).unwrap();
        }
        // in P({1,2}), the functional encoded by c is "a meets the complement of c"
        let p = catalog::powerset(2);
        for c in 0..4 {
            for a in 0..4 {
                assert_eq!(pairing(&p, c, a), a & !c != 0);
            }
        }
    }

    fn rel(l: &Suplattice, pairs: &[(&str, &str)]) -> Vec<bool> {
        let n = l.len();
        let mut r = vec![false; n * n];
        for (a, b) in pairs {
            r[l.index_of(a).unwrap() * n + l.index_of(b).unwrap()] = true;
        }
        r
    }

    #[test]
    fn totally_below_examples() {
        let c3 = catalog::chain(3);
        let expect = rel(&c3, &[("0", "m"), ("0", "1"), ("m", "m"), ("m", "1"), ("1", "1")]);
        assert_eq!(totally_below(&c3), expect);
        let m3 = catalog::m3();
        assert_eq!(totally_below(&m3), rel(&m3, &[("0", "x"), ("0", "y"), ("0", "z"), ("0", "1")]));
        let p = catalog::powerset(2);
        let n = p.len();
        assert!(totally_below(&p)[p.index_of("{1}").unwrap() * n + p.index_of("{1,2}").unwrap()]);
    }

    #[test]
    fn totally_below_fast_matches_subset_enumeration() {
        let caps = Caps::default();
        for l in catalog::lattices_up_to(6) {
            assert_eq!(totally_below(&l), totally_below_exhaustive(&l, &caps).unwrap());
        }
    }

    #[test]
    fn dual_basis_examples() {
        let p = catalog::powerset(2);
        let (b, _) = dual_basis(&p).unwrap();
        let r: Vec<&str> = b.r.iter().map(|&i| p.label(i)).collect();
        assert_eq!(r, ["{1}", "{2}"]);
        let c3 = catalog::chain(3);
        let (b, _) = dual_basis(&c3).unwrap();
        assert_eq!(b.index, [1, 2]);
        for a in 0..3 {
            assert_eq!(b.reconstruct(&c3, a), a);
        }
        match dual_basis(&catalog::m3()) {
            Err(Error::NotSupercontinuous { witness }) => assert_eq!(witness, "x"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn three_way_agreement_with_distributivity() {
        let caps = Caps {
            max_tensor_carrier: 36,
            ..Caps::default()
        };
        for l in catalog::lattices_up_to(5) {
            let d = is_distributive(&l);
            let r = dualisability(&l, &caps).unwrap();
            assert_eq!(r, DualisabilityReport { dual_basis: d, pairing: d, supercontinuous: d });
            assert_eq!(dual_basis(&l).is_ok(), d);
        }
    }

    #[test]
    fn basis_dual_matches_concrete_dual() {
        // σ_p ordered pointwise is L* restricted to the encodings c_p
        for l in [catalog::chain(4), catalog::powerset(2), catalog::grid(2, 3)] {
            let (b, data) = dual_basis(&l).unwrap();
            for (s, &p) in b.sigma.iter().zip(&b.index) {
                let c = (0..l.len()).find(|&c| functional(&l, c) == s.values()).unwrap();
                assert!(!l.leq(p, c));
                assert_eq!(data.l_star.len(), l.len());
            }
        }
    }

    #[test]
    fn composition_and_identity() {
        let (c2, c3) = (catalog::chain(2), catalog::chain(3));
        let f = SupMap::new(&c2, &c3, vec![0, 1]).unwrap();
        let g = SupMap::new(&c3, &c2, vec![0, 1, 1]).unwrap();
        assert_eq!(g.after(&f), SupMap::identity(&c2));
        assert!(SupMap::new(&c3, &c2, vec![0, 1, 0]).is_err());
    }

    /// `(ε ⊗ L)(a ⊗ η)` evaluated on the bi-ideal closure in `L ⊗ L* ⊗ L`.
    fn triangle_left_closed(l: &Suplattice, l_star: &Suplattice, eta: &TensorElement, space: &TensorSpace, a: usize) -> usize {
        let three = TensorSpace::new(vec![l.clone(), l_star.clone(), l.clone()]);
        let elem = three.closure_of(eta.tuples(space).map(|t| three.encode(&[a, t[0], t[1]])));
        three.induce_apply(&elem, l, |t| scalar(l, pairing(l, t[1], t[0]), t[2]))
    }

    fn triangle_right_closed(l: &Suplattice, l_star: &Suplattice, eta: &TensorElement, space: &TensorSpace, c: usize) -> usize {
        let three = TensorSpace::new(vec![l_star.clone(), l.clone(), l_star.clone()]);
        let elem = three.closure_of(eta.tuples(space).map(|t| three.encode(&[t[0], t[1], c])));
        three.induce_apply(&elem, l_star, |t| scalar(l_star, pairing(l, t[2], t[1]), t[0]))
    }

    #[test]
    fn triangles_agree_with_three_factor_closure() {
        let caps = Caps::default();
        for l in catalog::lattices_up_to(4) {
            let l_star = dual(&l);
            let t = TensorLattice::new(vec![l_star.clone(), l.clone()], &caps).unwrap();
            for eta in t.elements() {
                for a in 0..l.len() {
                    assert_eq!(triangle_left(&l, eta, t.space(), a), triangle_left_closed(&l, &l_star, eta, t.space(), a));
                    assert_eq!(
                        triangle_right(&l, &l_star, eta, t.space(), a),
                        triangle_right_closed(&l, &l_star, eta, t.space(), a)
                    );
                }
            }
        }
    }
}
