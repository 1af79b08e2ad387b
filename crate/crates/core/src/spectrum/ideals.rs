//! Quantales of overt weakly closed sublocales, monoid ideals and ideals.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::algebra::{LocalicMonoid, LocalicSemiring};
use crate::iso::{find_lattice_iso_with, is_order_iso};
use crate::locale::{owc, MaskLattice};
use crate::order::{bit, mask_iter};
use crate::quantale::{quotient_by, two_sided_reflection, Quantale, QuantaleQuotient};
use crate::spectrum::saturation::{rect, SaturationData};
use crate::suplattice::functional;
use crate::{law, Result};

/// Down-set image of a binary point operation on two down-sets.
fn pushforward(m: &LocalicMonoid, table: impl Fn(usize, usize) -> usize, v: u64, w: u64) -> u64 {
    let mut img = 0;
    for x in mask_iter(v) {
        for y in mask_iter(w) {
            img |= bit(table(x, y));
        }
    }
    m.points().down_closure(img)
}

/// `V·W`: the weak closure of the image of `V × W` under multiplication.
pub fn owc_product(m: &LocalicMonoid, v: u64, w: u64) -> u64 {
    pushforward(m, |x, y| m.mul(x, y), v, w)
}

/// `V + W`, likewise for addition.
pub fn owc_sum(r: &LocalicSemiring, v: u64, w: u64) -> u64 {
    pushforward(&r.mult, |x, y| r.add(x, y), v, w)
}

#[derive(Clone, Debug)]
pub struct OwcQuantale {
    pub owc: MaskLattice,
    pub quantale: Quantale,
}

/// OWC sublocales under the pushforward of `μ×`, with unit the closure of the point `1`.
pub fn owc_quantale(m: &LocalicMonoid) -> Result<OwcQuantale> {
    owc_quantale_with_unit(m, m.unit)
}

pub(crate) fn owc_quantale_with_unit(m: &LocalicMonoid, unit_point: usize) -> Result<OwcQuantale> {
    let o = owc(&m.locale)?;
    let n = o.len();
    let mut mult = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let p = owc_product(m, o.mask(i), o.mask(j));
            mult.push(o.index_of(p).expect("product of down-sets is a down-set"));
        }
    }
    let unit = o.index_of(m.points().principal_down(unit_point)).expect("principal down-set");
    let quantale = Quantale::new(o.lattice().clone(), mult, unit)?;
    Ok(OwcQuantale { owc: o, quantale })
}

#[derive(Clone, Debug)]
pub struct MonoidIdeals {
    pub owc: OwcQuantale,
    /// `𝓜M`, the two-sided reflection; `fixed` indexes OWC sublocales.
    pub mm: QuantaleQuotient,
}

impl MonoidIdeals {
    pub fn quantale(&self) -> &Quantale {
        &self.mm.quantale
    }

    pub fn mask(&self, i: usize) -> u64 {
        self.owc.owc.mask(self.mm.fixed[i])
    }

    pub fn index_of_mask(&self, mask: u64) -> Option<usize> {
        let o = self.owc.owc.index_of(mask)?;
        self.mm.fixed.binary_search(&o).ok()
    }
}

pub fn monoid_ideal_quantale(m: &LocalicMonoid) -> Result<MonoidIdeals> {
    let owc = owc_quantale(m)?;
    let mm = two_sided_reflection(&owc.quantale)?;
    let top = owc.quantale.lattice().top();
    for (i, &f) in mm.fixed.iter().enumerate() {
        if owc.quantale.mul(f, top) != f {
            return Err(law("monoid ideal I = I⊤", mm.quantale.lattice().label(i).to_string()));
        }
    }
    Ok(MonoidIdeals { owc, mm })
}

/// The quantale structure on `hom(𝒮M, Ω)`, realised on the opposite of
/// the saturated-open frame: `(f·g)(s) = ⋁{f(a) ∧ g(b) : a×b ⊆ μ×(s)}` with
/// unit `s ↦ [1 ∈ s]`.
pub fn sat_dual_quantale(m: &LocalicMonoid, s: &SaturationData) -> Result<Quantale> {
    let n = m.len();
    let l = &s.sat_frame;
    let k = l.len();
    let masks = s.masks(m);
    let mu: Vec<_> = masks.iter().map(|&t| m.mu_times(t)).collect();
    let fs: Vec<Vec<usize>> = (0..k).map(|c| functional(l, c)).collect();
    // the element encoding a join-preserving h is the largest s with h(s) = 0
    let encode = |h: &[usize]| -> Result<usize> {
        let c = l.join_all((0..k).filter(|&t| h[t] == 0));
        if fs[c] != h {
            return Err(law("dual multiplication", "product functional does not preserve joins".to_string()));
        }
        Ok(c)
    };
    // a × b ⊆ μ×(s) is downward closed in (a, b) and the minimal opens with
    // f(a) = 1 are join-irreducible, so only those need testing
    let js = l.join_irreducibles();
    let fits: Vec<Vec<FixedBitSet>> = mu
        .iter()
        .map(|m_t| {
            js.iter()
                .map(|&a| {
                    let mut row = FixedBitSet::with_capacity(js.len());
                    for (jb, &b) in js.iter().enumerate() {
                        row.set(jb, rect(n, masks[a], masks[b]).is_subset(m_t));
                    }
                    row
                })
                .collect()
        })
        .collect();
    let outside: Vec<FixedBitSet> = (0..k)
        .map(|c| {
            let mut row = FixedBitSet::with_capacity(js.len());
            for (j, &a) in js.iter().enumerate() {
                row.set(j, fs[c][a] == 1);
            }
            row
        })
        .collect();
    let mut mult = Vec::with_capacity(k * k);
    for c in 0..k {
        for d in 0..k {
            let h: Vec<usize> = (0..k)
                .map(|t| usize::from(outside[c].ones().any(|ja| !fits[t][ja].is_disjoint(&outside[d]))))
                .collect();
            mult.push(encode(&h)?);
        }
    }
    let e: Vec<usize> = masks.iter().map(|&t| usize::from(t & bit(m.unit) != 0)).collect();
    let unit = encode(&e)?;
    Quantale::new(l.opposite(), mult, unit)
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub dual: Quantale,
    /// `W ↦ P ∖ W`, from `𝓜M` to the dual.
    pub complement: Vec<usize>,
    /// An isomorphism found by search, independently of the complement map.
    pub searched: Vec<usize>,
}

/// Exhibit `𝓜M ≅ hom(𝒮M, Ω)` as quantales, twice.
pub fn verify_duality(m: &LocalicMonoid, s: &SaturationData, mi: &MonoidIdeals) -> Result<DualityReport> {
    let dual = sat_dual_quantale(m, s)?;
    let q = mi.quantale();
    let full = m.points().full_mask();
    let complement = (0..q.len())
        .map(|i| s.index_of_mask(m, full & !mi.mask(i)).ok_or_else(|| law("complement of a monoid ideal is saturated", q.lattice().label(i).to_string())))
        .collect::<Result<Vec<usize>>>()?;
    let is_quantale_iso = |f: &[usize]| q.is_hom(&dual, f) && is_order_iso(q.lattice().poset(), dual.lattice().poset(), f);
    if !is_quantale_iso(&complement) {
        return Err(law("𝓜M ≅ dual(𝒮M)", "complement map is not a quantale isomorphism".to_string()));
    }
    let searched = find_lattice_iso_with(q.lattice(), dual.lattice(), |f| q.is_hom(&dual, f))
        .ok_or_else(|| law("𝓜M ≅ dual(𝒮M)", format!("no quantale isomorphism between {} and {} elements", q.len(), dual.len())))?;
    Ok(DualityReport {
        dual,
        complement,
        searched,
    })
}

#[derive(Clone, Debug)]
pub struct IdealQuantaleData {
    pub monoid: MonoidIdeals,
    /// `0₊`, the closure of the point `0`, as an OWC index.
    pub zero_plus: usize,
    /// `I ~+ J = (I + J)⊤` on `𝓜R`.
    pub mod_add: Vec<usize>,
    /// `~0₊ = 0₊⊤` in `𝓜R`.
    pub mod_zero: usize,
    /// `Idl(R)`; `fixed` indexes `𝓜R`.
    pub idl: QuantaleQuotient,
}

impl IdealQuantaleData {
    pub fn quantale(&self) -> &Quantale {
        &self.idl.quantale
    }

    /// The down-set of points underlying an element of `Idl(R)`.
    pub fn mask(&self, i: usize) -> u64 {
        self.monoid.mask(self.idl.fixed[i])
    }

    pub fn index_of_mask(&self, mask: u64) -> Option<usize> {
        let j = self.monoid.index_of_mask(mask)?;
        self.idl.fixed.binary_search(&j).ok()
    }
}

pub fn ideal_quantale(r: &LocalicSemiring) -> Result<IdealQuantaleData> {
    let monoid = monoid_ideal_quantale(&r.mult)?;
    let owc = &monoid.owc;
    let mm = monoid.quantale();
    let k = mm.len();
    let top = owc.quantale.lattice().top();
    let to_mm = |o: usize| -> usize {
        let closed = owc.quantale.mul(o, top);
        monoid.mm.surjection.apply(closed)
    };
    let zero_plus = owc.owc.index_of(r.points().principal_down(r.zero)).expect("principal down-set");
    let mod_zero = to_mm(zero_plus);
    let mut mod_add = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let sum = owc_sum(r, monoid.mask(i), monoid.mask(j));
            mod_add.push(to_mm(owc.owc.index_of(sum).expect("sum of down-sets is a down-set")));
        }
    }
    let l = mm.lattice();
    let mut relations = Vec::with_capacity(k * k + 1);
    relations.push((mod_zero, l.bottom()));
    for i in 0..k {
        for j in 0..k {
            relations.push((mod_add[i * k + j], l.join(i, j)));
        }
    }
    let idl = quotient_by(mm, &relations)?;
    // fixed points are exactly the ideals: 0₊ ≤ I and I + I ≤ I
    let zero_mask = owc.owc.mask(zero_plus);
    for i in 0..k {
        let v = monoid.mask(i);
        let is_ideal = zero_mask & !v == 0 && owc_sum(r, v, v) & !v == 0;
        if is_ideal != idl.fixed.binary_search(&i).is_ok() {
            return Err(law("Idl fixed points are the ideals", r.points().mask_label(v)));
        }
    }
    Ok(IdealQuantaleData {
        monoid,
        zero_plus,
        mod_add,
        mod_zero,
        idl,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{holoid_quotient, to_localic};
    use crate::catalog;
    use crate::iso::find_lattice_iso;
    use crate::spectrum::saturation::saturation;

    fn mi(m: &crate::algebra::FiniteCommMonoid) -> (LocalicMonoid, MonoidIdeals) {
        let d = LocalicMonoid::discrete(m).unwrap();
        let q = monoid_ideal_quantale(&d).unwrap();
        (d, q)
    }

    #[test]
    fn discrete_monoid_ideals_are_set_ideals() {
        for m in catalog::monoids() {
            let (_, q) = mi(&m);
            let n = m.len();
            let ideals: Vec<u64> = (0u64..1 << n)
                .filter(|&s| mask_iter(s).all(|x| (0..n).all(|y| s & bit(m.mul(x, y)) != 0)))
                .collect();
            let got: Vec<u64> = (0..q.quantale().len()).map(|i| q.mask(i)).collect();
            assert_eq!(got, ideals);
        }
    }

    #[test]
    fn nil_and_z2() {
        let (_, q) = mi(&catalog::monoid_nil());
        assert!(find_lattice_iso(q.quantale().lattice(), &catalog::chain(4)).is_some());
        let (_, q) = mi(&catalog::monoid_z2());
        assert_eq!(q.quantale().len(), 2);
    }

    #[test]
    fn duality_for_catalog_monoids() {
        for m in catalog::monoids() {
            let (d, q) = mi(&m);
            let s = saturation(&d).unwrap();
            verify_duality(&d, &s, &q).unwrap();
        }
    }

    #[test]
    fn unit_reading_epsilon_zero_fails() {
        // with the closure of a non-unit point as unit, the unit law breaks
        let m = catalog::monoid_nil();
        let d = LocalicMonoid::discrete(&m).unwrap();
        let zero = m.index_of("0").unwrap();
        assert!(matches!(owc_quantale_with_unit(&d, zero), Err(crate::Error::LawViolation { law: "unit", .. })));
    }

    #[test]
    fn principal_ideals_follow_the_holoid_order() {
        for m in catalog::monoids() {
            let (_, q) = mi(&m);
            let h = holoid_quotient(&m).unwrap();
            let n = m.len();
            let principal = |f: usize| (0..n).fold(0u64, |acc, k| acc | bit(m.mul(f, k)));
            for f in 0..n {
                assert!(q.index_of_mask(principal(f)).is_some());
                for g in 0..n {
                    let sub = principal(f) & !principal(g) == 0;
                    assert_eq!(sub, m.divides(g, f));
                    assert_eq!(sub, h.order.leq(h.surjection[f], h.surjection[g]));
                }
            }
        }
    }

    #[test]
    fn ideal_quantale_examples() {
        let idl = ideal_quantale(&to_localic(&catalog::zmod(4), None).unwrap()).unwrap();
        let q = idl.quantale();
        assert!(find_lattice_iso(q.lattice(), &catalog::chain(3)).is_some());
        // the ideal (2) = {0, 2} squares to (0)
        let two = idl.index_of_mask(0b0101).unwrap();
        assert_eq!(idl.mask(q.mul(two, two)), 0b0001);
        let b = ideal_quantale(&to_localic(&catalog::semiring_bool(), None).unwrap()).unwrap();
        assert_eq!(b.quantale().len(), 2);
        let s = ideal_quantale(&catalog::sierpinski_reversed()).unwrap();
        assert_eq!(s.quantale().len(), 1);
    }
}
