//! The three dualisability conditions on saturated opens.

use alloc::vec::Vec;

use crate::algebra::LocalicMonoid;
use crate::locale::{meets, owc};
use crate::order::{bit, is_distributive};
use crate::spectrum::saturation::{sat_mask, SaturationData};
use crate::suplattice::{dual_basis, supercontinuity_witness};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualisabilityConditions {
    /// OWC sublocales as down-sets, with `π(V) = ⋂{t saturated : V meets t}` alongside.
    pub owc: Vec<u64>,
    pub pi: Vec<u64>,
    /// `𝒮M` admits a dual basis.
    pub dual_basis: bool,
    /// `s = ⋁{r_x : W_x meets s}` for every saturated `s`.
    pub basis_family: bool,
    /// The family `(π(V), V)` reconstructs every saturated open.
    pub pi_family: bool,
    /// `u ≤ ⋁{π(V) : V meets u}` for every open `u`.
    pub pi_cover: bool,
    pub opens_distributive: bool,
    pub supercontinuous: bool,
}

impl DualisabilityConditions {
    pub fn agree(&self) -> bool {
        let c = self.dual_basis;
        self.basis_family == c && self.pi_family == c && self.pi_cover == c && (!self.opens_distributive || self.supercontinuous)
    }
}

pub fn dualisability_conditions(m: &LocalicMonoid, s: &SaturationData) -> Result<DualisabilityConditions> {
    let x = &m.locale;
    let p = m.points();
    let full = p.full_mask();
    let sat = s.masks(m);
    let owc = owc(x)?.masks().to_vec();
    let pi: Vec<u64> = owc
        .iter()
        .map(|&v| sat.iter().filter(|&&t| meets(v, t)).fold(full, |acc, &t| acc & t))
        .collect();
    let cover = |u: u64| owc.iter().zip(&pi).filter(|&(&v, _)| meets(v, u)).fold(0, |acc, (_, &q)| acc | q);
    let pi_cover = x.open_masks().masks().iter().all(|&u| u & !cover(u) == 0);
    let pi_family = sat.iter().all(|&t| cover(t) == t);
    // r_x = sat(↑x) for join-irreducible saturated x, W_x = {y : r_x ⊆ sat(↑y)}
    let principal: Vec<u64> = (0..p.len()).map(|y| sat_mask(m, p.principal_up(y))).collect();
    let family: Vec<(u64, u64)> = s
        .sat_frame
        .join_irreducibles()
        .iter()
        .map(|&j| {
            let r = s.mask(m, j);
            let w = (0..p.len()).filter(|&y| r & !principal[y] == 0).fold(0, |acc, y| acc | bit(y));
            (r, w)
        })
        .collect();
    let basis_family = sat.iter().all(|&t| family.iter().filter(|&&(_, w)| meets(w, t)).fold(0, |acc, &(r, _)| acc | r) == t);
    Ok(DualisabilityConditions {
        owc,
        pi,
        dual_basis: dual_basis(&s.sat_frame).is_ok(),
        basis_family,
        pi_family,
        pi_cover,
        opens_distributive: is_distributive(x.opens()),
        supercontinuous: supercontinuity_witness(&s.sat_frame).is_none(),
    })
}
