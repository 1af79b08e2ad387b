//! Spectra of finite localic semirings: saturated opens, monoid ideals,
//! ideals, the radical frame and its points, with their verifications.

pub mod dualisability;
pub mod ideals;
pub mod opai;
pub mod oracle;
pub mod representability;
pub mod saturation;
pub mod universal;

use alloc::vec::Vec;

use crate::algebra::LocalicSemiring;
use crate::order::{bit, FinitePoset};
use crate::quantale::{localic_reflection, Quantale, QuantaleQuotient};
use crate::suplattice::Suplattice;
use crate::{Caps, Result};

pub use dualisability::{dualisability_conditions, DualisabilityConditions};
pub use ideals::{ideal_quantale, monoid_ideal_quantale, verify_duality, DualityReport, IdealQuantaleData, MonoidIdeals};
pub use opai::{opai, opmai, Mode, OpaiInstance};
pub use saturation::{saturated_replacement, saturation, verify_saturation, SaturationData};
pub use universal::{universal_element, universal_monoid_element, UniversalElement};

#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub saturation: SaturationData,
    pub duality: DualityReport,
    pub ideals: IdealQuantaleData,
    /// `Rad(R)` with `ρ : Idl(R) ↠ Rad(R)` as its surjection; `fixed` indexes `Idl(R)`.
    pub rad: QuantaleQuotient,
    pub universal: UniversalElement,
    /// Open prime anti-ideals as sets of points, sorted.
    pub points: Vec<u64>,
    labels: Vec<alloc::string::String>,
}

impl SpectrumResult {
    pub fn idl(&self) -> &Quantale {
        self.ideals.quantale()
    }

    pub fn rad(&self) -> &Quantale {
        &self.rad.quantale
    }

    /// Points ordered by inclusion of anti-ideals.
    pub fn point_poset(&self) -> FinitePoset {
        let labels = self.points.iter().map(|&m| self.mask_label(m)).collect();
        FinitePoset::of_masks(labels, &self.points).expect("distinct point sets")
    }

    pub fn mask_label(&self, m: u64) -> alloc::string::String {
        let names: Vec<&str> = (0..self.labels.len()).filter(|&i| m & bit(i) != 0).map(|i| self.labels[i].as_str()).collect();
        alloc::format!("{{{}}}", names.join(","))
    }
}

/// The whole pipeline for one localic semiring.
pub fn radical_frame(r: &LocalicSemiring, caps: &Caps) -> Result<SpectrumResult> {
    caps.check("points", r.len(), crate::order::MAX_MASK_POINTS)?;
    let s = saturation(&r.mult)?;
    let ideals = ideal_quantale(r)?;
    let duality = verify_duality(&r.mult, &s, &ideals.monoid)?;
    let universal = universal_element(r, &s, &duality, &ideals)?;
    let rad = localic_reflection(ideals.quantale())?;
    let omega = Quantale::frame(Suplattice::omega())?;
    let mut points: Vec<u64> = opai(r, &omega)?
        .members
        .iter()
        .map(|u| u.iter().enumerate().filter(|&(_, &v)| v == 1).fold(0, |m, (i, _)| m | bit(i)))
        .collect();
    points.sort();
    Ok(SpectrumResult {
        saturation: s,
        duality,
        ideals,
        rad,
        universal,
        points,
        labels: r.points().labels().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::to_localic;
    use crate::catalog;
    use crate::iso::find_lattice_iso;

    #[test]
    fn examples() {
        let caps = Caps::default();
        let z4 = radical_frame(&to_localic(&catalog::zmod(4), None).unwrap(), &caps).unwrap();
        assert!(find_lattice_iso(z4.rad().lattice(), &catalog::chain(2)).is_some());
        assert_eq!(z4.points, [0b1010]);
        let z6 = radical_frame(&to_localic(&catalog::zmod(6), None).unwrap(), &caps).unwrap();
        assert!(find_lattice_iso(z6.rad().lattice(), &catalog::powerset(2)).is_some());
        assert_eq!(z6.points.len(), 2);
        let s = radical_frame(&catalog::sierpinski_reversed(), &caps).unwrap();
        assert_eq!(s.rad().len(), 1);
        assert!(s.points.is_empty());
    }

    #[test]
    fn rad_is_a_frame() {
        for r in catalog::discrete_semirings() {
            let sp = radical_frame(&to_localic(&r, None).unwrap(), &Caps::default()).unwrap();
            assert!(crate::quantale::certify_frame(sp.rad()));
        }
    }
}
