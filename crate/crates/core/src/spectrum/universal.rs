//! Universal elements: the unit of the duality on saturated opens, carried to
//! `𝓜M ⊗ O M` and `Idl(R) ⊗ O R`.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::algebra::{LocalicMonoid, LocalicSemiring};
use crate::quantale::Quantale;
use crate::spectrum::ideals::{DualityReport, IdealQuantaleData, MonoidIdeals};
use crate::spectrum::opai::{from_tensor, opai_violation, opmai_violation, valued_open_space};
use crate::spectrum::saturation::SaturationData;
use crate::suplattice::{dual_basis, SupMap};
use crate::tensor::{TensorElement, TensorSpace};
use crate::{law, Result};

#[derive(Clone, Debug)]
pub struct UniversalElement {
    pub target: Quantale,
    /// `target ⊗ O X`.
    pub space: TensorSpace,
    pub element: TensorElement,
    /// The same element as a monotone map from points to the target.
    pub map: Vec<usize>,
}

/// Inverse of the complement isomorphism, as a map `dual(𝒮M) → 𝓜M`.
fn dual_to_monoid_ideals(duality: &DualityReport, mi: &MonoidIdeals) -> Result<SupMap> {
    let mut inv = alloc::vec![0; duality.complement.len()];
    for (i, &c) in duality.complement.iter().enumerate() {
        inv[c] = i;
    }
    SupMap::new(duality.dual.lattice(), mi.quantale().lattice(), inv)
}

/// Push `η(⊤) ∈ (𝒮M)* ⊗ 𝒮M` along `(post ∘ iso) ⊗ κ`.
fn transport(m: &LocalicMonoid, s: &SaturationData, duality: &DualityReport, mi: &MonoidIdeals, target: &Quantale, post: &SupMap) -> Result<UniversalElement> {
    let (basis, data) = dual_basis(&s.sat_frame)?;
    if &data.l_star != duality.dual.lattice() {
        return Err(law("universal element", "dual lattices differ".to_string()));
    }
    let first = post.after(&dual_to_monoid_ideals(duality, mi)?);
    let space = valued_open_space(target, &m.locale);
    let element = data.unit_space.map_element(&space, &[&first, &s.kappa], &data.unit_element);
    let map = from_tensor(&space, &m.locale, &element);
    // the same element read off the dual basis directly: x ↦ ⋁{W_p : x ∈ r_p}
    let l = &s.sat_frame;
    let full = m.points().full_mask();
    let direct: Vec<usize> = (0..m.len())
        .map(|x| {
            target.lattice().join_all(basis.index.iter().filter(|&&p| s.mask(m, p) & crate::order::bit(x) != 0).map(|&p| {
                let c = l.join_all((0..l.len()).filter(|&t| !l.leq(p, t)));
                let w = mi.index_of_mask(full & !s.mask(m, c)).expect("complement of a saturated open is a monoid ideal");
                post.apply(w)
            }))
        })
        .collect();
    if direct != map {
        return Err(law("universal element", "tensor transport disagrees with the dual-basis formula".to_string()));
    }
    Ok(UniversalElement {
        target: target.clone(),
        space,
        element,
        map,
    })
}

/// The universal open prime monoid anti-ideal, valued in `𝓜M`.
pub fn universal_monoid_element(m: &LocalicMonoid, s: &SaturationData, duality: &DualityReport, mi: &MonoidIdeals) -> Result<UniversalElement> {
    let id = SupMap::identity(mi.quantale().lattice());
    let u = transport(m, s, duality, mi, mi.quantale(), &id)?;
    if let Some(w) = opmai_violation(m, mi.quantale(), &u.map) {
        return Err(law("universal element is an OPMAI", w));
    }
    Ok(u)
}

/// The universal open prime anti-ideal, valued in `Idl(R)`.
pub fn universal_element(r: &LocalicSemiring, s: &SaturationData, duality: &DualityReport, iq: &IdealQuantaleData) -> Result<UniversalElement> {
    let u = transport(&r.mult, s, duality, &iq.monoid, iq.quantale(), &iq.idl.surjection)?;
    if let Some(w) = opai_violation(r, iq.quantale(), &u.map) {
        return Err(law("universal element is an OPAI", w));
    }
    Ok(u)
}
