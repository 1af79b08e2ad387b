//! Tensor products of finite suplattices as lattices of bi-ideals.
//!
//! A bi-ideal of `L₁ × … × Lₙ` is a down-closed subset that contains every
//! tuple with a bottom coordinate and is closed under joins in one coordinate
//! with the others held fixed. Tuples are encoded row-major, so for two
//! factors `(a, b)` sits at `a * |L₂| + b`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::order::{FinitePoset, LatticeTables};
use crate::suplattice::{SupMap, Suplattice};
use crate::{law, Caps, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorElement(FixedBitSet);

impl TensorElement {
    pub fn contains(&self, tuple_index: usize) -> bool {
        self.0.contains(tuple_index)
    }

    pub fn leq(&self, other: &TensorElement) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn tuples<'a>(&'a self, space: &'a TensorSpace) -> impl Iterator<Item = Vec<usize>> + 'a {
        self.0.ones().map(move |i| space.decode(i))
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }
}

/// The carrier of a tensor product, with lazily normalised elements.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    factors: Vec<Suplattice>,
    strides: Vec<usize>,
    size: usize,
    lower_covers: Vec<Vec<Vec<usize>>>,
}

impl TensorSpace {
    pub fn new(factors: Vec<Suplattice>) -> Self {
        assert!(!factors.is_empty(), "a tensor product needs at least one factor");
        let mut strides = vec![1; factors.len()];
        for k in (0..factors.len() - 1).rev() {
            strides[k] = strides[k + 1] * factors[k + 1].len();
        }
        let size = factors.iter().map(Suplattice::len).product();
        let lower_covers = factors
            .iter()
            .map(|l| {
                let mut lc = vec![Vec::new(); l.len()];
                for (a, b) in l.covers() {
                    lc[b].push(a);
                }
                lc
            })
            .collect();
        TensorSpace {
            factors,
            strides,
            size,
            lower_covers,
        }
    }

    pub fn factors(&self) -> &[Suplattice] {
        &self.factors
    }

    pub fn carrier_size(&self) -> usize {
        self.size
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.factors.len()];
        for (k, s) in self.strides.iter().enumerate() {
            t[k] = idx / s;
            idx %= s;
        }
        t
    }

    #[inline]
    fn coord(&self, idx: usize, k: usize) -> usize {
        (idx / self.strides[k]) % self.factors[k].len()
    }

    #[inline]
    fn replace(&self, idx: usize, k: usize, v: usize) -> usize {
        idx - self.coord(idx, k) * self.strides[k] + v * self.strides[k]
    }

    /// The least bi-ideal containing the given tuples.
    pub fn closure_of(&self, generators: impl IntoIterator<Item = usize>) -> TensorElement {
        let mut set = FixedBitSet::with_capacity(self.size);
        let mut queue = VecDeque::new();
        let add = |i: usize, set: &mut FixedBitSet, queue: &mut VecDeque<usize>| {
            if !set.put(i) {
                queue.push_back(i);
            }
        };
        for i in 0..self.size {
            if (0..self.factors.len()).any(|k| self.coord(i, k) == self.factors[k].bottom()) {
                set.insert(i);
            }
        }
        for g in generators {
            add(g, &mut set, &mut queue);
        }
        while let Some(t) = queue.pop_front() {
            for k in 0..self.factors.len() {
                let l = &self.factors[k];
                let a = self.coord(t, k);
                for &y in &self.lower_covers[k][a] {
                    add(self.replace(t, k, y), &mut set, &mut queue);
                }
                for x in 0..l.len() {
                    if set.contains(self.replace(t, k, x)) {
                        add(self.replace(t, k, l.join(a, x)), &mut set, &mut queue);
                    }
                }
            }
        }
        TensorElement(set)
    }

    pub fn closure(&self, s: &TensorElement) -> TensorElement {
        self.closure_of(s.0.ones())
    }

    pub fn is_bi_ideal(&self, s: &TensorElement) -> bool {
        self.closure(s) == *s
    }

    pub fn from_indices(&self, indices: impl IntoIterator<Item = usize>) -> TensorElement {
        let mut set = FixedBitSet::with_capacity(self.size);
        set.extend(indices);
        TensorElement(set)
    }

    pub fn pure(&self, tuple: &[usize]) -> TensorElement {
        self.closure_of([self.encode(tuple)])
    }

    pub fn bottom(&self) -> TensorElement {
        self.closure_of([])
    }

    pub fn top(&self) -> TensorElement {
        let mut set = FixedBitSet::with_capacity(self.size);
        set.insert_range(..);
        TensorElement(set)
    }

    pub fn join(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        if a.leq(b) {
            return b.clone();
        }
        if b.leq(a) {
            return a.clone();
        }
        self.closure_of(a.0.union(&b.0))
    }

    pub fn meet(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let mut s = a.0.clone();
        s.intersect_with(&b.0);
        TensorElement(s)
    }

    /// Image of an element under the map induced by a multilinear `f`.
    pub fn induce_apply(&self, s: &TensorElement, target: &Suplattice, f: impl Fn(&[usize]) -> usize) -> usize {
        target.join_all(s.0.ones().map(|i| f(&self.decode(i))))
    }

    /// Check that `f` preserves joins (and bottom) in each coordinate.
    pub fn check_multilinear(&self, target: &Suplattice, f: impl Fn(&[usize]) -> usize) -> Result<()> {
        for i in 0..self.size {
            let t = self.decode(i);
            for (k, l) in self.factors.iter().enumerate() {
                let mut u = t.clone();
                u[k] = l.bottom();
                if f(&u) != target.bottom() {
                    return Err(law("multilinearity", format!("{:?} is not sent to bottom", u)));
                }
                for x in 0..l.len() {
                    let mut v = t.clone();
                    v[k] = x;
                    let mut w = t.clone();
                    w[k] = l.join(t[k], x);
                    if f(&w) != target.join(f(&t), f(&v)) {
                        return Err(law("multilinearity", format!("coordinate {k} at {:?} and {:?}", t, v)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(f₁ ⊗ … ⊗ fₙ)(s)`: the bi-ideal generated by the coordinatewise images.
    pub fn map_element(&self, target: &TensorSpace, fs: &[&SupMap], s: &TensorElement) -> TensorElement {
        assert_eq!(fs.len(), self.factors.len());
        target.closure_of(s.0.ones().map(|i| {
            let t = self.decode(i);
            let u: Vec<usize> = t.iter().zip(fs).map(|(&a, f)| f.apply(a)).collect();
            target.encode(&u)
        }))
    }

    /// A compact description: maximal tuples of join-irreducibles in `s`.
    pub fn describe(&self, s: &TensorElement) -> String {
        let irreducible = |i: usize| {
            (0..self.factors.len()).all(|k| self.factors[k].join_irreducibles().contains(&self.coord(i, k)))
        };
        let gens: Vec<usize> = s.0.ones().filter(|&i| irreducible(i)).collect();
        let below = |i: usize, j: usize| (0..self.factors.len()).all(|k| self.factors[k].leq(self.coord(i, k), self.coord(j, k)));
        let maximal: Vec<usize> = gens
            .iter()
            .copied()
            .filter(|&i| !gens.iter().any(|&j| j != i && below(i, j)))
            .collect();
        if maximal.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (n, &i) in maximal.iter().enumerate() {
            if n > 0 {
                out.push_str(" ∨ ");
            }
            for k in 0..self.factors.len() {
                if k > 0 {
                    out.push('⊗');
                }
                out.push_str(self.factors[k].label(self.coord(i, k)));
            }
        }
        out
    }
}

/// A fully enumerated tensor product.
#[derive(Clone, Debug)]
pub struct TensorLattice {
    space: TensorSpace,
    elements: Vec<TensorElement>,
    index: BTreeMap<TensorElement, usize>,
    lattice: Suplattice,
}

impl TensorLattice {
    pub fn new(factors: Vec<Suplattice>, caps: &Caps) -> Result<Self> {
        let space = TensorSpace::new(factors);
        caps.check("tensor product carrier", space.size, caps.max_tensor_carrier)?;
        // Every bi-ideal is a join of pure tensors of join-irreducibles.
        let gens: Vec<usize> = (0..space.size)
            .filter(|&i| {
                (0..space.factors.len())
                    .all(|k| space.factors[k].join_irreducibles().contains(&space.coord(i, k)))
            })
            .collect();
        let mut seen = BTreeMap::new();
        let bottom = space.bottom();
        seen.insert(bottom.clone(), ());
        let mut queue = VecDeque::from([bottom]);
        while let Some(s) = queue.pop_front() {
            for &g in &gens {
                if !s.contains(g) {
                    let t = space.closure_of(s.0.ones().chain([g]));
                    if seen.insert(t.clone(), ()).is_none() {
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut elements: Vec<TensorElement> = seen.into_keys().collect();
        elements.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index: BTreeMap<TensorElement, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elements.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = elements[i].leq(&elements[j]);
            }
        }
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let jn = index[&space.join(&elements[i], &elements[j])] as u32;
                let mt = index[&space.meet(&elements[i], &elements[j])] as u32;
                join[i * n + j] = jn;
                join[j * n + i] = jn;
                meet[i * n + j] = mt;
                meet[j * n + i] = mt;
            }
        }
        let labels = elements.iter().map(|e| space.describe(e)).collect();
        let poset = FinitePoset::from_raw(labels, leq);
        let lattice = Suplattice::from_tables(
            poset,
            LatticeTables {
                join,
                meet,
                bottom: 0,
                top: n - 1,
            },
        );
        Ok(TensorLattice {
            space,
            elements,
            index,
            lattice,
        })
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn lattice(&self) -> &Suplattice {
        &self.lattice
    }

    pub fn elements(&self) -> &[TensorElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &TensorElement {
        &self.elements[i]
    }

    pub fn index_of(&self, s: &TensorElement) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn pure(&self, tuple: &[usize]) -> usize {
        self.index[&self.space.pure(tuple)]
    }

    /// The unique join-preserving map through which a multilinear `f` factors.
    pub fn induce(&self, target: &Suplattice, f: impl Fn(&[usize]) -> usize) -> Result<SupMap> {
        self.space.check_multilinear(target, &f)?;
        let values = self
            .elements
            .iter()
            .map(|s| self.space.induce_apply(s, target, &f))
            .collect();
        let g = SupMap::new(&self.lattice, target, values)?;
        for i in 0..self.space.size {
            let t = self.space.decode(i);
            if g.apply(self.pure(&t)) != f(&t) {
                return Err(law("universal property", format!("{:?}", t)));
            }
        }
        Ok(g)
    }

    /// `f₁ ⊗ … ⊗ fₙ` between two enumerated tensor products.
    pub fn tensor_map(&self, target: &TensorLattice, fs: &[&SupMap]) -> Result<SupMap> {
        if fs.len() != self.space.factors.len() || target.space.factors.len() != fs.len() {
            return Err(Error::BadTable {
                what: "tensor arity",
                expected: self.space.factors.len(),
                found: fs.len(),
            });
        }
        let values = self
            .elements
            .iter()
            .map(|s| target.index[&self.space.map_element(&target.space, fs, s)])
            .collect();
        SupMap::new(&self.lattice, &target.lattice, values)
    }
}

/// `L ⊗ Ω → L`, `s ↦ ⋁{a : (a, ⊤) ∈ s}`.
pub fn unitor(space: &TensorSpace, s: &TensorElement) -> usize {
    let l = &space.factors[0];
    l.join_all((0..l.len()).filter(|&a| s.contains(space.encode(&[a, 1]))))
}

/// Every bilinear map `L × M → T` as a row-major table, found by
/// backtracking over the carrier without reference to bi-ideals.
pub fn bilinear_maps(l: &Suplattice, m: &Suplattice, t: &Suplattice, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let (nl, nm) = (l.len(), m.len());
    let size = nl * nm;
    caps.check("bilinear carrier", size, caps.max_tensor_carrier)?;
    let cell = |a: usize, b: usize| a * nm + b;
    // (x, y, z): f[z] = f[x] ∨ f[y], checked once the largest cell is assigned
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); size];
    let mut push = |x: usize, y: usize, z: usize| checks[x.max(y).max(z)].push((x, y, z));
    for b in 0..nm {
        for a1 in 0..nl {
            for a2 in a1..nl {
                push(cell(a1, b), cell(a2, b), cell(l.join(a1, a2), b));
            }
        }
    }
    for a in 0..nl {
        for b1 in 0..nm {
            for b2 in b1..nm {
                push(cell(a, b1), cell(a, b2), cell(a, m.join(b1, b2)));
            }
        }
    }
    let forced_bottom: Vec<bool> = (0..size).map(|i| i / nm == l.bottom() || i % nm == m.bottom()).collect();
    let mut out = Vec::new();
    let mut f = vec![0usize; size];
    fn go(
        i: usize,
        f: &mut Vec<usize>,
        t: &Suplattice,
        checks: &[Vec<(usize, usize, usize)>],
        forced_bottom: &[bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == f.len() {
            out.push(f.clone());
            return;
        }
        let candidates = if forced_bottom[i] { t.bottom()..t.bottom() + 1 } else { 0..t.len() };
        for v in candidates {
            f[i] = v;
            if checks[i].iter().all(|&(x, y, z)| f[z] == t.join(f[x], f[y])) {
                go(i + 1, f, t, checks, forced_bottom, out);
            }
        }
    }
    go(0, &mut f, t, &checks, &forced_bottom, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::iso::find_lattice_iso;
    use crate::suplattice::sup_maps;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn omega_tensor_omega_via_codiagonal() {
        let o = Suplattice::omega();
        let t = TensorLattice::new(vec![o.clone(), o.clone()], &caps()).unwrap();
        assert_eq!(t.lattice().len(), 2);
        let delta = t.induce(&o, |x| o.meet(x[0], x[1])).unwrap();
        assert_eq!(delta.values(), &[0, 1]);
    }

    #[test]
    fn bilinear_maps_factor_through_tensor() {
        let c3 = catalog::chain(3);
        for (l, m) in [(c3.clone(), c3.clone()), (catalog::m3(), Suplattice::omega()), (catalog::chain(2), catalog::n5())] {
            let t = TensorLattice::new(vec![l.clone(), m.clone()], &caps()).unwrap();
            let bilinear = bilinear_maps(&l, &m, &c3, &caps()).unwrap();
            assert_eq!(bilinear.len(), sup_maps(t.lattice(), &c3, &caps()).unwrap().len());
            for f in &bilinear {
                t.induce(&c3, |x| f[x[0] * m.len() + x[1]]).unwrap();
            }
        }
    }

    #[test]
    fn powerset_square() {
        let p = catalog::powerset(2);
        let t = TensorLattice::new(vec![p.clone(), p.clone()], &caps()).unwrap();
        assert_eq!(t.lattice().len(), 16);
        assert!(find_lattice_iso(t.lattice(), &catalog::powerset(4)).is_some());
    }

    #[test]
    fn sierpinski_square_is_grid_up_sets() {
        let c3 = catalog::chain(3);
        let t = TensorLattice::new(vec![c3.clone(), c3.clone()], &caps()).unwrap();
        // Up(2-chain) is C3, and up-sets of the 2×2 grid form a 6-element lattice
        assert_eq!(t.lattice().len(), 6);
        let grid = catalog::chain(2).product(&catalog::chain(2));
        let ups = catalog::up_set_lattice(grid.poset());
        assert!(find_lattice_iso(t.lattice(), &ups).is_some());
    }

    #[test]
    fn bottom_is_closure_of_empty_set() {
        let c3 = catalog::chain(3);
        let s = TensorSpace::new(vec![c3.clone(), c3.clone()]);
        let b = s.bottom();
        assert_eq!(b.len(), 5);
        for t in b.tuples(&s) {
            assert!(t.contains(&0));
        }
    }

    #[test]
    fn closure_is_a_closure_operator() {
        let l = catalog::n5();
        let s = TensorSpace::new(vec![l.clone(), catalog::chain(3)]);
        let n = s.carrier_size();
        let mut state = 0x2545_f491_u64;
        for _ in 0..200 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let a = s.from_indices((0..n).filter(|i| state >> (i % 64) & 1 == 1));
            let b = s.from_indices((0..n).filter(|i| (state >> (i % 64) & 1 == 1) || i % 3 == 0));
            let ca = s.closure(&a);
            assert!(a.leq(&ca));
            assert_eq!(s.closure(&ca), ca);
            assert!(ca.leq(&s.closure(&b)));
        }
    }

    #[test]
    fn pure_is_multilinear() {
        let (a, b) = (catalog::m3(), catalog::chain(3));
        let t = TensorLattice::new(vec![a.clone(), b.clone()], &caps()).unwrap();
        let l = t.lattice().clone();
        t.space().check_multilinear(&l, |x| t.pure(x)).unwrap();
    }

    #[test]
    fn tensor_map_identity_and_functoriality() {
        let c3 = catalog::chain(3);
        let t = TensorLattice::new(vec![c3.clone(), c3.clone()], &caps()).unwrap();
        let id = SupMap::identity(&c3);
        assert_eq!(t.tensor_map(&t, &[&id, &id]).unwrap(), SupMap::identity(t.lattice()));
        let maps = sup_maps(&c3, &c3, &caps()).unwrap();
        for f in &maps {
            for g in &maps {
                let (f2, g2) = (&maps[maps.len() - 1], &maps[1]);
                let lhs = t.tensor_map(&t, &[f, g]).unwrap().after(&t.tensor_map(&t, &[f2, g2]).unwrap());
                let rhs = t.tensor_map(&t, &[&f.after(f2), &g.after(g2)]).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn unitor_is_an_isomorphism() {
        let o = Suplattice::omega();
        for l in catalog::lattices_up_to(5) {
            let t = TensorLattice::new(vec![l.clone(), o.clone()], &caps()).unwrap();
            assert_eq!(t.lattice().len(), l.len());
            let u: Vec<usize> = t.elements().iter().map(|s| unitor(t.space(), s)).collect();
            let u = SupMap::new(t.lattice(), &l, u).unwrap();
            for a in 0..l.len() {
                assert_eq!(u.apply(t.pure(&[a, 1])), a);
            }
            assert!(u.is_injective());
        }
    }

    #[test]
    fn exists_through_unitor() {
        // (id ⊗ ∃) then the unitor sends a⊗b to a when b is inhabited, else 0
        let l = catalog::chain(3);
        let m = catalog::powerset(2);
        let o = Suplattice::omega();
        let src = TensorLattice::new(vec![l.clone(), m.clone()], &caps()).unwrap();
        let dst = TensorLattice::new(vec![l.clone(), o.clone()], &caps()).unwrap();
        let exists = SupMap::new(&m, &o, (0..m.len()).map(|b| usize::from(b != m.bottom())).collect()).unwrap();
        let id = SupMap::identity(&l);
        let f = src.tensor_map(&dst, &[&id, &exists]).unwrap();
        for a in 0..l.len() {
            for b in 0..m.len() {
                let got = unitor(dst.space(), dst.element(f.apply(src.pure(&[a, b]))));
                assert_eq!(got, if b == m.bottom() { l.bottom() } else { a });
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p = catalog::powerset(3);
        let e = TensorLattice::new(vec![p.clone(), p.clone()], &caps()).unwrap_err();
        assert!(matches!(e, Error::CapExceeded { size: 64, cap: 36, .. }));
        // lazily, the space is still usable
        let s = TensorSpace::new(vec![p.clone(), p]);
        assert_eq!(s.pure(&[7, 7]).len(), 64);
    }
}
