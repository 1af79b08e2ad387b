//! Saturated opens: fixed points of `U ↦ (ι₁)!μ×(U) = {x : ∃y. xy ∈ U}`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::algebra::LocalicMonoid;
use crate::iso::is_order_iso;
use crate::locale::{alexandrov, coproduct};
use crate::order::{bit, mask_iter, ClosureOperator, ClosureQuotient, FinitePoset, MAX_MASK_POINTS};
use crate::suplattice::{SupMap, Suplattice};
use crate::{law, Result};

/// Largest `X ⊕ X` (by number of opens) on which `(ι₁)!` is recomputed as an adjoint.
const COPRODUCT_CHECK_OPENS: usize = 256;

#[derive(Clone, Debug)]
pub struct SaturationData {
    /// The saturation closure on opens.
    pub closure: ClosureOperator,
    /// Saturated opens as open indices, ascending; position is the index in `sat_frame`.
    pub fixed: Vec<usize>,
    pub sat_frame: Suplattice,
    /// Inclusion of saturated opens into opens.
    pub kappa: SupMap,
    /// Its left adjoint, the corestricted closure.
    pub kappa_lower: SupMap,
    /// Every open is saturated, i.e. `μ× ≤ ι₁`.
    pub deflationary: bool,
}

/// Project a set of pairs onto the first coordinate.
pub(crate) fn project_first(n: usize, pairs: &FixedBitSet) -> u64 {
    pairs.ones().fold(0, |m, i| m | bit(i / n))
}

pub fn sat_mask(m: &LocalicMonoid, u: u64) -> u64 {
    project_first(m.len(), &m.mu_times(u))
}

pub(crate) fn rect(n: usize, a: u64, b: u64) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n * n);
    for x in mask_iter(a) {
        for y in mask_iter(b) {
            s.insert(x * n + y);
        }
    }
    s
}

impl SaturationData {
    pub fn mask(&self, m: &LocalicMonoid, s: usize) -> u64 {
        m.locale.mask(self.fixed[s])
    }

    pub fn index_of_mask(&self, m: &LocalicMonoid, mask: u64) -> Option<usize> {
        let open = m.locale.open_of(mask)?;
        self.fixed.binary_search(&open).ok()
    }

    pub fn masks(&self, m: &LocalicMonoid) -> Vec<u64> {
        (0..self.fixed.len()).map(|s| self.mask(m, s)).collect()
    }
}

pub fn saturation(m: &LocalicMonoid) -> Result<SaturationData> {
    let x = &m.locale;
    let opens = x.opens();
    let values = (0..opens.len())
        .map(|i| x.open_of(sat_mask(m, x.mask(i))).ok_or_else(|| law("saturation", "saturation of an open is not open".to_string())))
        .collect::<Result<Vec<usize>>>()?;
    let closure = ClosureOperator::new(opens.poset(), values)?;
    let q = ClosureQuotient::from_closure(opens, closure.clone())?;
    let kappa = SupMap::new(&q.quotient, opens, q.fixed.clone());
    // κ preserves joins because saturated opens are closed under unions
    let kappa = kappa?;
    let kappa_lower = SupMap::new(opens, &q.quotient, q.surjection)?;
    let deflationary = closure.is_identity();
    Ok(SaturationData {
        closure,
        fixed: q.fixed,
        sat_frame: q.quotient,
        kappa,
        kappa_lower,
        deflationary,
    })
}

/// All structural checks on the saturated opens.
pub fn verify_saturation(m: &LocalicMonoid, s: &SaturationData) -> Result<()> {
    let x = &m.locale;
    let n = m.len();
    let opens = x.opens();
    let sat_masks = s.masks(m);
    for i in 0..opens.len() {
        let u = x.mask(i);
        let mu = m.mu_times(u);
        let saturated = mu.ones().all(|p| u & bit(p / n) != 0);
        if saturated != s.fixed.contains(&i) {
            return Err(law("saturated iff μ×(s) ≤ ι₁(s)", x.points().mask_label(u)));
        }
    }
    for &a in &sat_masks {
        for &b in &sat_masks {
            if s.index_of_mask(m, a & b).is_none() || s.index_of_mask(m, a | b).is_none() {
                return Err(law("subframe", format!("{} and {}", x.points().mask_label(a), x.points().mask_label(b))));
            }
        }
    }
    for &t in &[0, x.points().full_mask()] {
        if s.index_of_mask(m, t).is_none() {
            return Err(law("subframe", x.points().mask_label(t)));
        }
    }
    // μ×(s) is a join of rectangles of saturated opens
    for &t in &sat_masks {
        let mu = m.mu_times(t);
        let mut cover = FixedBitSet::with_capacity(n * n);
        for &a in &sat_masks {
            for &b in &sat_masks {
                let r = rect(n, a, b);
                if r.is_subset(&mu) {
                    cover.union_with(&r);
                }
            }
        }
        if cover != mu {
            return Err(law("sub-comonoid", x.points().mask_label(t)));
        }
    }
    for u in 0..opens.len() {
        for t in 0..s.sat_frame.len() {
            if s.sat_frame.leq(s.kappa_lower.apply(u), t) != opens.leq(u, s.kappa.apply(t)) {
                return Err(law("κ! ⊣ κ", format!("({}, {})", opens.label(u), s.sat_frame.label(t))));
            }
        }
        if s.kappa.apply(s.kappa_lower.apply(u)) != s.closure.apply(u) {
            return Err(law("κκ! is the closure", opens.label(u).to_string()));
        }
    }
    for t in 0..s.sat_frame.len() {
        if s.kappa_lower.apply(s.kappa.apply(t)) != t {
            return Err(law("κ!κ = id", s.sat_frame.label(t).to_string()));
        }
    }
    let shrinking = (0..opens.len()).all(|i| {
        let u = x.mask(i);
        m.mu_times(u).ones().all(|p| u & bit(p / n) != 0)
    });
    if shrinking != s.deflationary {
        return Err(law("deflationary iff identity", format!("μ× ≤ ι₁ is {shrinking}")));
    }
    // (ι₁)! computed as an adjoint on X ⊕ X agrees with the projection
    if n * n <= MAX_MASK_POINTS && x.points().product(x.points()).up_sets(COPRODUCT_CHECK_OPENS).is_ok() {
        let c = coproduct(x, x)?;
        for i in 0..opens.len() {
            let mu = m.mu_times(x.mask(i));
            let pairs = mu.ones().fold(0u64, |acc, p| acc | bit(p));
            let w = c.locale.open_of(pairs).ok_or_else(|| law("μ× lands in opens", opens.label(i).to_string()))?;
            if c.iota1_lower.apply(w) != s.closure.apply(i) {
                return Err(law("(ι₁)!μ×", opens.label(i).to_string()));
            }
        }
    }
    Ok(())
}

/// The localic monoid whose frame of opens is the frame of saturated opens.
#[derive(Clone, Debug)]
pub struct SaturatedReplacement {
    pub monoid: LocalicMonoid,
    /// Join-irreducible saturated opens, as `sat_frame` indices; point `i` is `irreducibles[i]`.
    pub irreducibles: Vec<usize>,
    /// `x ↦` the point `sat(↑x)`.
    pub point_of: Vec<usize>,
    /// Saturated open `t` ↦ the open `{j : j ⊆ t}` of the replacement.
    pub sat_to_opens: Vec<usize>,
}

pub fn saturated_replacement(m: &LocalicMonoid, s: &SaturationData) -> Result<SaturatedReplacement> {
    let n = m.len();
    let l = &s.sat_frame;
    let js = l.join_irreducibles().to_vec();
    let masks = s.masks(m);
    let labels = js.iter().map(|&j| l.label(j).to_string()).collect();
    let points = FinitePoset::from_fn(labels, |a, b| masks[js[b]] & !masks[js[a]] == 0)?;
    let k = js.len();
    let smallest = |pred: &dyn Fn(u64) -> bool| -> Result<usize> {
        let meet = masks.iter().filter(|&&t| pred(t)).fold(m.points().full_mask(), |acc, &t| acc & t);
        let t = s.index_of_mask(m, meet).ok_or_else(|| law("replacement", "meet of saturated opens".to_string()))?;
        js.iter().position(|&j| j == t).ok_or_else(|| law("replacement point", l.label(t).to_string()))
    };
    let mut times = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            let r = rect(n, masks[js[a]], masks[js[b]]);
            times.push(smallest(&|t| r.is_subset(&m.mu_times(t)))?);
        }
    }
    let unit_mask = bit(m.unit);
    let unit = smallest(&|t| t & unit_mask != 0)?;
    let locale = alexandrov(&points)?;
    let monoid = LocalicMonoid::new(locale, unit, times)?;
    let sat_to_opens: Vec<usize> = masks
        .iter()
        .map(|&t| {
            let up = (0..k).filter(|&i| masks[js[i]] & !t == 0).fold(0, |acc, i| acc | bit(i));
            monoid.locale.open_of(up).expect("down-set of irreducibles is open")
        })
        .collect();
    if !is_order_iso(l.poset(), monoid.locale.opens().poset(), &sat_to_opens) {
        return Err(law("replacement opens ≅ saturated opens", "no order isomorphism".to_string()));
    }
    let point_of = (0..n)
        .map(|x| smallest(&|t| t & bit(x) != 0))
        .collect::<Result<Vec<usize>>>()?;
    Ok(SaturatedReplacement {
        monoid,
        irreducibles: js,
        point_of,
        sat_to_opens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn sat_sets(m: &LocalicMonoid) -> Vec<u64> {
        let s = saturation(m).unwrap();
        verify_saturation(m, &s).unwrap();
        s.masks(m)
    }

    #[test]
    fn nil_monoid() {
        // elements 1, a, 0 at bits 0, 1, 2
        let m = LocalicMonoid::discrete(&catalog::monoid_nil()).unwrap();
        assert_eq!(sat_sets(&m), [0b000, 0b001, 0b011, 0b111]);
    }

    #[test]
    fn group_z2() {
        let m = LocalicMonoid::discrete(&catalog::monoid_z2()).unwrap();
        assert_eq!(sat_sets(&m), [0b00, 0b11]);
    }

    #[test]
    fn lattice_monoid() {
        let l = catalog::chain(3);
        let mm = crate::algebra::FiniteCommMonoid::from_fn(l.poset().labels(), l.top(), |a, b| l.meet(a, b)).unwrap();
        let d = LocalicMonoid::discrete(&mm).unwrap();
        let ups = l.poset().up_sets(100).unwrap();
        assert_eq!(sat_sets(&d), ups);
        assert!(!saturation(&d).unwrap().deflationary);
        let scott = LocalicMonoid::ordered(&mm, l.poset()).unwrap();
        assert!(saturation(&scott).unwrap().deflationary);
    }

    #[test]
    fn catalog_saturation_and_replacement() {
        for mm in catalog::monoids() {
            let m = LocalicMonoid::discrete(&mm).unwrap();
            let s = saturation(&m).unwrap();
            verify_saturation(&m, &s).unwrap();
            let r = saturated_replacement(&m, &s).unwrap();
            // every open of the replacement is already saturated
            let rs = saturation(&r.monoid).unwrap();
            assert!(rs.deflationary);
        }
    }
}
