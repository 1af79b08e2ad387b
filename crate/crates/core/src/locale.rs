//! Finite locales presented by their posets of points.
//!
//! Opens are up-sets of points, ordered by inclusion; every finite frame
//! arises this way from its poset of join-irreducibles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::iso::find_lattice_iso;
use crate::order::{adjoint, bit, mask_iter, FinitePoset, MonotoneMap, Side};
use crate::quantale::Quantale;
use crate::suplattice::{sup_maps, SupMap, Suplattice};
use crate::tensor::TensorLattice;
use crate::{law, Caps, Error, Result};

/// Upper bound on the number of opens of a presented locale.
pub const MAX_OPENS: usize = 1 << 16;

/// A finite lattice of subsets of a point set, keyed by mask.
#[derive(Clone, Debug)]
pub struct MaskLattice {
    lattice: Suplattice,
    masks: Vec<u64>,
    index: BTreeMap<u64, usize>,
}

impl MaskLattice {
    /// `masks` must be closed under union and intersection and sorted.
    pub(crate) fn new(points: &FinitePoset, masks: Vec<u64>) -> Result<Self> {
        let labels = masks.iter().map(|&m| points.mask_label(m)).collect();
        let poset = FinitePoset::of_masks(labels, &masks)?;
        let lattice = Suplattice::new(poset)?;
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(MaskLattice { lattice, masks, index })
    }

    pub fn lattice(&self) -> &Suplattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, i: usize) -> u64 {
        self.masks[i]
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }
}

#[derive(Clone, Debug)]
pub struct FiniteLocale {
    points: FinitePoset,
    opens: MaskLattice,
}

/// The locale whose opens are the up-sets of `points`.
pub fn alexandrov(points: &FinitePoset) -> Result<FiniteLocale> {
    let ups = points.up_sets(MAX_OPENS)?;
    let opens = MaskLattice::new(points, ups)?;
    Ok(FiniteLocale {
        points: points.clone(),
        opens,
    })
}

impl FiniteLocale {
    /// The locale of a finite distributive lattice, with points its
    /// join-irreducibles in the reverse order.
    pub fn from_frame(l: &Suplattice) -> Result<(FiniteLocale, Vec<usize>)> {
        if let Some((a, b, c)) = crate::order::distributivity_witness(l) {
            return Err(Error::NotDistributive {
                a: l.label(a).to_string(),
                b: l.label(b).to_string(),
                c: l.label(c).to_string(),
            });
        }
        let j = l.join_irreducibles().to_vec();
        let points = l.poset().restrict(&j).opposite();
        let loc = alexandrov(&points)?;
        // a ↦ {p : p ≤ a}, an up-set of the reversed order
        let to_opens: Vec<usize> = (0..l.len())
            .map(|a| {
                let m = j.iter().enumerate().filter(|(_, &p)| l.leq(p, a)).fold(0, |m, (i, _)| m | bit(i));
                loc.opens.index_of(m).expect("down-set of irreducibles is an open")
            })
            .collect();
        Ok((loc, to_opens))
    }

    pub fn points(&self) -> &FinitePoset {
        &self.points
    }

    pub fn opens(&self) -> &Suplattice {
        &self.opens.lattice
    }

    pub fn open_masks(&self) -> &MaskLattice {
        &self.opens
    }

    pub fn mask(&self, open: usize) -> u64 {
        self.opens.mask(open)
    }

    pub fn open_of(&self, mask: u64) -> Option<usize> {
        self.opens.index_of(mask)
    }

    pub fn frame(&self) -> Quantale {
        Quantale::frame(self.opens.lattice.clone()).expect("up-set lattices are distributive")
    }

    /// `∃ : O X → Ω`, inhabitation.
    pub fn positivity(&self) -> SupMap {
        let omega = Suplattice::omega();
        let values = (0..self.opens.len()).map(|i| usize::from(self.mask(i) != 0)).collect();
        SupMap::new(self.opens(), &omega, values).expect("inhabitation preserves joins")
    }

    /// Check that positivity is left adjoint to `! : Ω → O X`.
    pub fn verify_overt(&self) -> Result<()> {
        let omega = Suplattice::omega();
        let bang = [self.opens().bottom(), self.opens().top()];
        let left = adjoint(&bang, &omega, self.opens(), Side::Left)?;
        if left != self.positivity().values() {
            return Err(law("overtness", "positivity is not the left adjoint of !".to_string()));
        }
        Ok(())
    }
}

/// A monotone map of points; its preimage map is a frame homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocaleMap {
    map: MonotoneMap,
}

impl LocaleMap {
    pub fn new(source: &FiniteLocale, target: &FiniteLocale, values: Vec<usize>) -> Result<Self> {
        let map = MonotoneMap::new(&source.points, &target.points, values)?;
        Ok(LocaleMap { map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map.apply(x)
    }

    pub fn preimage_mask(&self, mask: u64) -> u64 {
        self.map
            .values()
            .iter()
            .enumerate()
            .filter(|(_, &y)| mask & bit(y) != 0)
            .fold(0, |m, (x, _)| m | bit(x))
    }

    /// `f* : O Y → O X`.
    pub fn frame_map(&self, source: &FiniteLocale, target: &FiniteLocale) -> Result<SupMap> {
        let mut values = Vec::with_capacity(target.opens.len());
        for &m in target.opens.masks() {
            let pre = self.preimage_mask(m);
            let i = source
                .open_of(pre)
                .ok_or_else(|| law("preimage", format!("preimage of {} is not an up-set", target.points.mask_label(m))))?;
            values.push(i);
        }
        SupMap::new(target.opens(), source.opens(), values)
    }
}

#[derive(Clone, Debug)]
pub struct Coproduct {
    pub locale: FiniteLocale,
    pub iota1: SupMap,
    pub iota2: SupMap,
    /// Left adjoint of `ι₁`.
    pub iota1_lower: SupMap,
}

/// `X ⊕ Y`: points are pairs, opens are up-sets of the product order.
pub fn coproduct(x: &FiniteLocale, y: &FiniteLocale) -> Result<Coproduct> {
    let ny = y.points.len();
    if x.points.len() * ny > crate::order::MAX_MASK_POINTS {
        return Err(Error::CapExceeded {
            what: "product point set",
            size: x.points.len() * ny,
            cap: crate::order::MAX_MASK_POINTS,
        });
    }
    let points = x.points.product(&y.points);
    let locale = alexandrov(&points)?;
    let rect = |a: u64, b: u64| {
        let mut m = 0;
        for p in mask_iter(a) {
            for q in mask_iter(b) {
                m |= bit(p * ny + q);
            }
        }
        m
    };
    let (fx, fy) = (x.points.full_mask(), y.points.full_mask());
    let iota1: Vec<usize> = x.opens.masks().iter().map(|&a| locale.open_of(rect(a, fy)).unwrap()).collect();
    let iota2: Vec<usize> = y.opens.masks().iter().map(|&b| locale.open_of(rect(fx, b)).unwrap()).collect();
    let lower = adjoint(&iota1, x.opens(), locale.opens(), Side::Left)?;
    Ok(Coproduct {
        iota1: SupMap::new(x.opens(), locale.opens(), iota1)?,
        iota2: SupMap::new(y.opens(), locale.opens(), iota2)?,
        iota1_lower: SupMap::new(locale.opens(), x.opens(), lower)?,
        locale,
    })
}

/// Check that the coproduct opens are the tensor product of the factor
/// opens with `a ⊗ b ↦ ι₁(a) ∧ ι₂(b)`, and that `(ι₁)!` is `(id ⊗ ∃)`
/// followed by the unitor.
pub fn verify_coproduct(x: &FiniteLocale, y: &FiniteLocale, c: &Coproduct, caps: &Caps) -> Result<()> {
    let t = TensorLattice::new(alloc::vec![x.opens().clone(), y.opens().clone()], caps)?;
    let opens = c.locale.opens();
    let to_opens = t.induce(opens, |ab| opens.meet(c.iota1.apply(ab[0]), c.iota2.apply(ab[1])))?;
    if !(to_opens.is_injective() && to_opens.is_surjective(opens)) {
        return Err(law("coproduct is a tensor", "rectangles do not match bi-ideals".to_string()));
    }
    if find_lattice_iso(t.lattice(), opens).is_none() {
        return Err(law("coproduct is a tensor", "no lattice isomorphism".to_string()));
    }
    let exists = y.positivity();
    let projected = t.induce(x.opens(), |ab| if exists.apply(ab[1]) == 1 { ab[0] } else { x.opens().bottom() })?;
    for w in 0..opens.len() {
        let s = (0..t.lattice().len()).find(|&s| to_opens.apply(s) == w).unwrap();
        if projected.apply(s) != c.iota1_lower.apply(w) {
            return Err(law("(ι₁)! = id ⊗ ∃", opens.label(w).to_string()));
        }
    }
    for a in 0..x.opens().len() {
        for w in 0..opens.len() {
            if x.opens().leq(c.iota1_lower.apply(w), a) != opens.leq(w, c.iota1.apply(a)) {
                return Err(law("(ι₁)! ⊣ ι₁", format!("({}, {})", opens.label(w), x.opens().label(a))));
            }
        }
    }
    Ok(())
}

/// Overt weakly closed sublocales as down-sets of points.
pub fn owc(x: &FiniteLocale) -> Result<MaskLattice> {
    MaskLattice::new(&x.points, x.points.down_sets(MAX_OPENS)?)
}

pub fn meets(downset: u64, open: u64) -> bool {
    downset & open != 0
}

/// The functional `a ↦ [V meets a]`.
pub fn owc_functional(x: &FiniteLocale, downset: u64) -> Vec<usize> {
    x.opens.masks().iter().map(|&a| usize::from(meets(downset, a))).collect()
}

/// The down-set recovered from a functional: points whose principal open it sees.
pub fn owc_of_functional(x: &FiniteLocale, h: &[usize]) -> u64 {
    (0..x.points.len())
        .filter(|&p| h[x.open_of(x.points.principal_up(p)).unwrap()] == 1)
        .fold(0, |m, p| m | bit(p))
}

/// Check the bijection between down-sets and `hom(O X, Ω)`, and that it is
/// an isomorphism `owc(X) ≅ dual(O X)`.
pub fn verify_owc(x: &FiniteLocale, caps: &Caps) -> Result<()> {
    let omega = Suplattice::omega();
    let o = owc(x)?;
    let homs = sup_maps(x.opens(), &omega, caps)?;
    let mut encoded: Vec<Vec<usize>> = o.masks().iter().map(|&v| owc_functional(x, v)).collect();
    for (i, f) in encoded.iter().enumerate() {
        if !crate::suplattice::is_join_preserving(x.opens(), &omega, f) {
            return Err(law("owc functional", x.points.mask_label(o.mask(i))));
        }
        if owc_of_functional(x, f) != o.mask(i) {
            return Err(law("owc round trip", x.points.mask_label(o.mask(i))));
        }
    }
    encoded.sort();
    let all: Vec<Vec<usize>> = homs.into_iter().map(SupMap::into_values).collect();
    if encoded != all {
        return Err(law("owc bijection", format!("{} down-sets vs {} functionals", encoded.len(), all.len())));
    }
    if find_lattice_iso(o.lattice(), &crate::suplattice::dual(x.opens())).is_none() {
        return Err(law("owc ≅ dual", "no lattice isomorphism".to_string()));
    }
    Ok(())
}

/// Weak closure of the image of `V` under `f`: the down-closure of `f(V)`.
pub fn owc_image(f: &LocaleMap, target: &FiniteLocale, v: u64) -> u64 {
    let img = mask_iter(v).fold(0, |m, p| m | bit(f.apply(p)));
    target.points.down_closure(img)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScottReport {
    pub way_below: Vec<bool>,
    pub continuous: bool,
    /// Scott-open subsets, as point masks.
    pub scott_opens: Vec<u64>,
    pub scott_closed: Vec<u64>,
    /// The Scott topology equals the Alexandrov topology.
    pub scott_is_alexandrov: bool,
    /// `S_{h_S} = S` for every Scott-closed `S`.
    pub closed_round_trip: bool,
    /// `h_{S_h} = h` for every `h : O X → Ω`.
    pub functional_round_trip: bool,
}

fn directed(p: &FinitePoset, d: u64) -> bool {
    d != 0
        && mask_iter(d).all(|x| {
            mask_iter(d).all(|y| mask_iter(d).any(|z| p.leq(x, z) && p.leq(y, z)))
        })
}

/// Way-below, Scott topology and the Scott-closed/OWC correspondence by
/// direct enumeration of directed subsets.
pub fn scott_analysis(p: &FinitePoset, caps: &Caps) -> Result<ScottReport> {
    let n = p.len();
    caps.check("poset for directed-subset enumeration", n, caps.max_exhaustive)?;
    let directed_sets: Vec<u64> = (1u64..(1u64 << n)).filter(|&d| directed(p, d)).collect();
    // directed sets are finite, so their join is their maximum
    let sup = |d: u64| mask_iter(d).find(|&x| mask_iter(d).all(|y| p.leq(y, x))).unwrap();
    let mut way_below = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            way_below[a * n + b] = directed_sets
                .iter()
                .filter(|&&d| p.leq(b, sup(d)))
                .all(|&d| mask_iter(d).any(|x| p.leq(a, x)));
        }
    }
    let continuous = (0..n).all(|b| {
        let wb: u64 = (0..n).filter(|&a| way_below[a * n + b]).fold(0, |m, a| m | bit(a));
        directed(p, wb) && sup(wb) == b
    });
    let scott_opens: Vec<u64> = (0u64..(1u64 << n))
        .filter(|&u| p.is_up_set(u))
        .filter(|&u| directed_sets.iter().all(|&d| u & bit(sup(d)) == 0 || u & d != 0))
        .collect();
    let scott_closed: Vec<u64> = scott_opens.iter().map(|&u| p.full_mask() & !u).rev().collect();
    let mut closed_sorted = scott_closed.clone();
    closed_sorted.sort_unstable();
    let x = alexandrov(p)?;
    let scott_is_alexandrov = scott_opens == x.opens.masks();
    let closed_round_trip = closed_sorted
        .iter()
        .all(|&s| owc_of_functional(&x, &owc_functional(&x, s)) == s);
    let omega = Suplattice::omega();
    let functional_round_trip = sup_maps(x.opens(), &omega, caps)?
        .iter()
        .all(|h| owc_functional(&x, owc_of_functional(&x, h.values())) == h.values());
    Ok(ScottReport {
        way_below,
        continuous,
        scott_opens,
        scott_closed: closed_sorted,
        scott_is_alexandrov,
        closed_round_trip,
        functional_round_trip,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn chain_points(n: usize) -> FinitePoset {
        catalog::chain(n).poset().clone()
    }

    #[test]
    fn alexandrov_examples() {
        let one = alexandrov(&chain_points(1)).unwrap();
        assert!(find_lattice_iso(one.opens(), &Suplattice::omega()).is_some());
        let s = alexandrov(&chain_points(2)).unwrap();
        assert!(find_lattice_iso(s.opens(), &catalog::chain(3)).is_some());
        let d = alexandrov(&FinitePoset::discrete(&["1", "2"]).unwrap()).unwrap();
        assert!(find_lattice_iso(d.opens(), &catalog::powerset(2)).is_some());
        for x in [one, s, d] {
            x.verify_overt().unwrap();
            assert!(crate::order::is_distributive(x.opens()));
        }
    }

    #[test]
    fn from_frame_round_trips() {
        for l in catalog::lattices_up_to(6).into_iter().filter(crate::order::is_distributive) {
            let (x, f) = FiniteLocale::from_frame(&l).unwrap();
            assert!(crate::iso::is_order_iso(l.poset(), x.opens().poset(), &f));
        }
    }

    #[test]
    fn coproduct_examples() {
        let caps = Caps::default();
        let s = alexandrov(&chain_points(2)).unwrap();
        let ss = coproduct(&s, &s).unwrap();
        assert_eq!(ss.locale.opens().len(), 6);
        verify_coproduct(&s, &s, &ss, &caps).unwrap();
        let one = alexandrov(&chain_points(1)).unwrap();
        let s1 = coproduct(&s, &one).unwrap();
        assert!(find_lattice_iso(s1.locale.opens(), s.opens()).is_some());
        let d = alexandrov(&FinitePoset::discrete(&["1", "2"]).unwrap()).unwrap();
        let dd = coproduct(&d, &d).unwrap();
        assert_eq!(dd.locale.opens().len(), 16);
        verify_coproduct(&d, &s, &coproduct(&d, &s).unwrap(), &caps).unwrap();
    }

    #[test]
    fn owc_examples() {
        let caps = Caps::default();
        let d = alexandrov(&FinitePoset::discrete(&["1", "2"]).unwrap()).unwrap();
        assert_eq!(owc(&d).unwrap().len(), 4);
        let s = alexandrov(&chain_points(2)).unwrap();
        let o = owc(&s).unwrap();
        assert_eq!(o.masks(), &[0b00, 0b01, 0b11]);
        assert!(!meets(0b01, 0b10));
        assert!(meets(0b11, 0b10));
        for x in [d, s] {
            verify_owc(&x, &caps).unwrap();
        }
    }

    #[test]
    fn owc_image_examples() {
        let s = alexandrov(&chain_points(2)).unwrap();
        let id = LocaleMap::new(&s, &s, vec![0, 1]).unwrap();
        for v in [0b00, 0b01, 0b11] {
            assert_eq!(owc_image(&id, &s, v), v);
        }
        assert!(LocaleMap::new(&s, &s, vec![1, 0]).is_err());
        let collapse = LocaleMap::new(&s, &s, vec![0, 0]).unwrap();
        assert_eq!(owc_image(&collapse, &s, 0b11), 0b01);
        assert_eq!(owc_image(&collapse, &s, 0), 0);
        // meeting is preserved: V' meets a iff V meets f*(a)
        for v in [0b00, 0b01, 0b11] {
            for &a in s.open_masks().masks() {
                assert_eq!(meets(owc_image(&collapse, &s, v), a), meets(v, collapse.preimage_mask(a)));
            }
        }
    }

    #[test]
    fn scott_examples() {
        let caps = Caps::default();
        let r = scott_analysis(&chain_points(3), &caps).unwrap();
        assert_eq!(r.way_below.iter().filter(|&&b| b).count(), 6);
        assert!(r.continuous && r.scott_is_alexandrov && r.closed_round_trip && r.functional_round_trip);
        assert_eq!(r.scott_closed.len(), 4);
        let anti = FinitePoset::discrete(&["a", "b", "c"]).unwrap();
        let r = scott_analysis(&anti, &caps).unwrap();
        assert_eq!(r.scott_closed.len(), 8);
    }
}
