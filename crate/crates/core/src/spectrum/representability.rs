//! Extensional checks that `Idl(R)` represents OPAI and `𝓜M` represents OPMAI.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::LocalicMonoid;
use crate::quantale::{enumerate_homs, HomKind, Quantale};
use crate::spectrum::opai::{from_tensor, valued_open_space, OpaiInstance};
use crate::spectrum::saturation::SaturatedReplacement;
use crate::spectrum::universal::UniversalElement;
use crate::suplattice::SupMap;
use crate::{Caps, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentabilityRecord {
    pub homs: usize,
    pub members: usize,
    /// `Φ(f)` is a member for every `f`.
    pub into_members: bool,
    pub injective: bool,
    /// `f ∘ u` agrees with `(f ⊗ id)(u)` computed on bi-ideals.
    pub tensor_agrees: bool,
    /// First offending homomorphism, if any.
    pub witness: Option<String>,
}

impl RepresentabilityRecord {
    pub fn holds(&self) -> bool {
        self.into_members && self.injective && self.tensor_agrees && self.homs == self.members
    }
}

/// `Φ(f) = (f ⊗ id)(u)` for `f : source → Q`, as a monotone map.
pub fn phi(u: &UniversalElement, f: &SupMap) -> Vec<usize> {
    u.map.iter().map(|&v| f.apply(v)).collect()
}

/// Compare `Hom(source, Q)` with the enumerated anti-ideals through `Φ`.
pub fn representability_check(
    u: &UniversalElement,
    locale: &crate::locale::FiniteLocale,
    members: &OpaiInstance,
    caps: &Caps,
) -> Result<RepresentabilityRecord> {
    let q: &Quantale = &members.target;
    let homs = enumerate_homs(&u.target, q, HomKind::TwoSided, caps)?;
    let space = valued_open_space(q, locale);
    let id = SupMap::identity(locale.opens());
    let mut images = Vec::with_capacity(homs.len());
    let mut into_members = true;
    let mut tensor_agrees = true;
    let mut witness = None;
    for f in &homs {
        let img = phi(u, f);
        let via_tensor = from_tensor(&space, locale, &u.space.map_element(&space, &[f, &id], &u.element));
        if via_tensor != img {
            tensor_agrees = false;
            witness.get_or_insert_with(|| format!("f = {:?}: tensor image differs", f.values()));
        }
        if !members.contains(&img) {
            into_members = false;
            witness.get_or_insert_with(|| format!("f = {:?}: Φ(f) = {:?} is not a member", f.values(), img));
        }
        images.push(img);
    }
    images.sort();
    let before = images.len();
    images.dedup();
    let injective = images.len() == before;
    if !injective {
        witness.get_or_insert_with(|| String::from("two homomorphisms share an image"));
    }
    Ok(RepresentabilityRecord {
        homs: homs.len(),
        members: members.len(),
        into_members,
        injective,
        tensor_agrees,
        witness,
    })
}

/// `u' ↦ u' ∘ point_of` is a bijection from OPMAI of the saturated
/// replacement onto OPMAI of `m`.
pub fn opmai_invariance(original: &OpaiInstance, replacement: &OpaiInstance, rep: &SaturatedReplacement) -> bool {
    let mut pulled: Vec<Vec<usize>> = replacement
        .members
        .iter()
        .map(|u| rep.point_of.iter().map(|&p| u[p]).collect())
        .collect();
    pulled.sort();
    pulled.dedup();
    pulled.len() == replacement.len() && pulled == original.members
}

/// Convenience: the OPMAI side of the invariance for a monoid and its replacement.
pub fn opmai_pair(m: &LocalicMonoid, rep: &SaturatedReplacement, q: &Quantale) -> Result<(OpaiInstance, OpaiInstance)> {
    let a = crate::spectrum::opai::opmai(m, q)?;
    let b = crate::spectrum::opai::opmai(&rep.monoid, q)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::to_localic;
    use crate::catalog;
    use crate::spectrum::ideals::{ideal_quantale, monoid_ideal_quantale, verify_duality};
    use crate::spectrum::opai::{opai, opmai};
    use crate::spectrum::saturation::{saturated_replacement, saturation};
    use crate::spectrum::universal::{universal_element, universal_monoid_element};
    use crate::suplattice::Suplattice;

    fn semiring_universal(r: &crate::algebra::LocalicSemiring) -> UniversalElement {
        let s = saturation(&r.mult).unwrap();
        let iq = ideal_quantale(r).unwrap();
        let d = verify_duality(&r.mult, &s, &iq.monoid).unwrap();
        universal_element(r, &s, &d, &iq).unwrap()
    }

    #[test]
    fn examples_with_omega() {
        let omega = Quantale::frame(Suplattice::omega()).unwrap();
        let caps = Caps::default();
        for (r, n) in [(catalog::semiring_bool(), 1), (catalog::zmod(6), 2)] {
            let r = to_localic(&r, None).unwrap();
            let u = semiring_universal(&r);
            let rec = representability_check(&u, r.locale(), &opai(&r, &omega).unwrap(), &caps).unwrap();
            assert!(rec.holds(), "{rec:?}");
            assert_eq!(rec.homs, n);
        }
    }

    #[test]
    fn identity_maps_to_universal_element() {
        let r = to_localic(&catalog::zmod(4), None).unwrap();
        let u = semiring_universal(&r);
        let id = SupMap::identity(u.target.lattice());
        assert_eq!(phi(&u, &id), u.map);
        assert!(opai(&r, &u.target).unwrap().contains(&u.map));
    }

    #[test]
    fn bijection_for_catalog_pairs() {
        let caps = Caps::default();
        for r in [catalog::semiring_bool(), catalog::zmod(4), catalog::z2xz2()] {
            let r = to_localic(&r, None).unwrap();
            let u = semiring_universal(&r);
            for q in catalog::two_sided_quantales() {
                let rec = representability_check(&u, r.locale(), &opai(&r, &q).unwrap(), &caps).unwrap();
                assert!(rec.holds(), "{rec:?}");
            }
        }
    }

    #[test]
    fn monoid_mode_and_invariance() {
        let caps = Caps::default();
        for m in catalog::monoids() {
            let d = LocalicMonoid::discrete(&m).unwrap();
            let s = saturation(&d).unwrap();
            let mi = monoid_ideal_quantale(&d).unwrap();
            let dr = verify_duality(&d, &s, &mi).unwrap();
            let u = universal_monoid_element(&d, &s, &dr, &mi).unwrap();
            let rep = saturated_replacement(&d, &s).unwrap();
            for q in catalog::two_sided_quantales() {
                let rec = representability_check(&u, &d.locale, &opmai(&d, &q).unwrap(), &caps).unwrap();
                assert!(rec.holds(), "{}: {rec:?}", m.labels().join(","));
                let (a, b) = opmai_pair(&d, &rep, &q).unwrap();
                assert!(opmai_invariance(&a, &b, &rep));
            }
        }
    }
}
