//! Brute-force spectra computed directly from subsets, for comparison with
//! the pipeline: Zariski for discrete semirings, Stone for distributive
//! lattices, Hofmann–Lawson for lattices of up-sets.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::{lattice_semiring, scott_localic_lattice, to_localic, FiniteCommSemiring};
use crate::iso::{find_lattice_iso, find_poset_iso, is_order_iso};
use crate::order::{bit, mask_iter, FinitePoset};
use crate::spectrum::{radical_frame, SpectrumResult};
use crate::suplattice::Suplattice;
use crate::{Caps, Error, Result};

fn has(s: u64, x: usize) -> bool {
    s & bit(x) != 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiOracle {
    /// Ideals as subsets, sorted.
    pub ideals: Vec<u64>,
    /// `product[i * k + j]` is the ideal generated by `{ab}`, as an index into `ideals`.
    pub product: Vec<usize>,
    pub radicals: Vec<u64>,
    pub primes: Vec<u64>,
}

/// Contains `0`, closed under `+` and under multiplication by `R`.
pub fn is_ideal(r: &FiniteCommSemiring, s: u64) -> bool {
    let n = r.len();
    has(s, r.zero()) && mask_iter(s).all(|x| mask_iter(s).all(|y| has(s, r.add(x, y))) && (0..n).all(|k| has(s, r.mul(x, k))))
}

pub fn zariski_oracle(r: &FiniteCommSemiring) -> Result<ZariskiOracle> {
    let n = r.len();
    if n > 20 {
        return Err(Error::CapExceeded {
            what: "subset oracle carrier",
            size: n,
            cap: 20,
        });
    }
    let ideals: Vec<u64> = (0u64..1 << n).filter(|&s| is_ideal(r, s)).collect();
    let generated = |g: u64| ideals.iter().position(|&i| g & !i == 0).expect("R is an ideal");
    let k = ideals.len();
    let mut product = Vec::with_capacity(k * k);
    for &a in &ideals {
        for &b in &ideals {
            let g = mask_iter(a).fold(0, |acc, x| mask_iter(b).fold(acc, |acc, y| acc | bit(r.mul(x, y))));
            product.push(generated(g));
        }
    }
    let power = |x: usize, e: usize| (0..e).fold(r.one(), |acc, _| r.mul(acc, x));
    let radical = |s: u64| (0..n).filter(|&x| (1..=n).any(|e| has(s, power(x, e)))).fold(0, |acc, x| acc | bit(x));
    let radicals: Vec<u64> = ideals.iter().copied().filter(|&s| radical(s) == s).collect();
    let full = (1u64 << n) - 1;
    let primes: Vec<u64> = ideals
        .iter()
        .copied()
        .filter(|&s| s != full && (0..n).all(|a| (0..n).all(|b| !has(s, r.mul(a, b)) || has(s, a) || has(s, b))))
        .collect();
    Ok(ZariskiOracle {
        ideals,
        product,
        radicals,
        primes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub name: String,
    pub checks: Vec<(&'static str, bool)>,
    pub witness: Option<String>,
}

impl OracleComparison {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

fn ideal_masks(sp: &SpectrumResult) -> Vec<u64> {
    let q = sp.ideals.quantale();
    let mut v: Vec<u64> = (0..q.len()).map(|i| sp.ideals.mask(i)).collect();
    v.sort();
    v
}

fn radical_masks(sp: &SpectrumResult) -> Vec<u64> {
    let mut v: Vec<u64> = sp.rad.fixed.iter().map(|&i| sp.ideals.mask(i)).collect();
    v.sort();
    v
}

pub fn zariski_compare(r: &FiniteCommSemiring, caps: &Caps) -> Result<OracleComparison> {
    let o = zariski_oracle(r)?;
    let sp = radical_frame(&to_localic(r, None)?, caps)?;
    let q = sp.ideals.quantale();
    let ideals_ok = ideal_masks(&sp) == o.ideals;
    let mut products_ok = ideals_ok;
    let mut witness = None;
    if ideals_ok {
        let k = o.ideals.len();
        'outer: for i in 0..k {
            for j in 0..k {
                let (a, b) = (sp.ideals.index_of_mask(o.ideals[i]), sp.ideals.index_of_mask(o.ideals[j]));
                let (a, b) = (a.expect("same ideals"), b.expect("same ideals"));
                if sp.ideals.mask(q.mul(a, b)) != o.ideals[o.product[i * k + j]] {
                    products_ok = false;
                    witness = Some(format!("product of {} and {}", r_label(r, o.ideals[i]), r_label(r, o.ideals[j])));
                    break 'outer;
                }
            }
        }
    }
    let full = (1u64 << r.len()) - 1;
    let mut complements: Vec<u64> = o.primes.iter().map(|&p| full & !p).collect();
    complements.sort();
    let checks = alloc::vec![
        ("ideals", ideals_ok),
        ("products", products_ok),
        ("radicals", radical_masks(&sp) == o.radicals),
        ("points", sp.points == complements),
    ];
    Ok(OracleComparison {
        name: format!("zariski({})", r.labels().join(",")),
        checks,
        witness,
    })
}

fn r_label(r: &FiniteCommSemiring, s: u64) -> String {
    let names: Vec<&str> = mask_iter(s).map(|x| r.label(x)).collect();
    format!("{{{}}}", names.join(","))
}

/// Idl of a distributive lattice consists of its principal down-sets, and
/// the points are the prime filters.
pub fn stone_compare(l: &Suplattice, caps: &Caps) -> Result<OracleComparison> {
    let r = lattice_semiring(l)?;
    let sp = radical_frame(&to_localic(&r, None)?, caps)?;
    let n = l.len();
    let p = l.poset();
    let mut principal: Vec<u64> = (0..n).map(|a| p.principal_down(a)).collect();
    principal.sort();
    let fixed_ok = ideal_masks(&sp) == principal;
    let q = sp.ideals.quantale();
    let iso: Option<Vec<usize>> = (0..n).map(|a| sp.ideals.index_of_mask(p.principal_down(a))).collect();
    let iso_ok = iso.as_ref().is_some_and(|f| is_order_iso(p, q.lattice().poset(), f) && (0..n).all(|a| (0..n).all(|b| f[l.meet(a, b)] == q.mul(f[a], f[b]))));
    let is_filter = |s: u64| {
        has(s, l.top()) && !has(s, l.bottom()) && p.is_up_set(s) && mask_iter(s).all(|a| mask_iter(s).all(|b| has(s, l.meet(a, b))))
    };
    let prime = |s: u64| (0..n).all(|a| (0..n).all(|b| !has(s, l.join(a, b)) || has(s, a) || has(s, b)));
    let filters: Vec<u64> = (0u64..1 << n).filter(|&s| is_filter(s) && prime(s)).collect();
    let mut points = sp.points.clone();
    points.sort();
    Ok(OracleComparison {
        name: format!("stone({} elements)", n),
        checks: alloc::vec![("idl fixed points", fixed_ok), ("a ↦ ↓a", iso_ok), ("prime filters", points == filters)],
        witness: None,
    })
}

/// For `L = Up(P)`: the radical frame of `L` with its Alexandrov topology is
/// `L` again and its points form `P`.
pub fn hofmann_lawson_compare(p: &FinitePoset, caps: &Caps) -> Result<OracleComparison> {
    let l = crate::catalog::up_set_lattice(p);
    let d = scott_localic_lattice(&l)?;
    let sp = radical_frame(&d, caps)?;
    let rad_ok = find_lattice_iso(sp.rad.quantale.lattice(), &l).is_some();
    let pts = sp.point_poset();
    let points_ok = find_poset_iso(&pts, p).is_some();
    let witness = if points_ok {
        None
    } else {
        Some(format!("{} points for {} elements", pts.len(), p.len()))
    };
    Ok(OracleComparison {
        name: format!("hofmann-lawson(|P| = {})", p.len()),
        checks: alloc::vec![("rad ≅ L", rad_ok), ("points ≅ P", points_ok)],
        witness,
    })
}

pub fn oracle_suite_label(c: &OracleComparison) -> String {
    let failed: Vec<&str> = c.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    if failed.is_empty() {
        c.name.to_string()
    } else {
        format!("{}: {}", c.name, failed.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn zariski_z4_counts() {
        let o = zariski_oracle(&catalog::zmod(4)).unwrap();
        assert_eq!((o.ideals.len(), o.radicals.len(), o.primes.len()), (3, 2, 1));
        let c = zariski_compare(&catalog::zmod(4), &Caps::default()).unwrap();
        assert!(c.holds(), "{c:?}");
    }

    #[test]
    fn zariski_catalog() {
        for r in catalog::discrete_semirings() {
            let c = zariski_compare(&r, &Caps::default()).unwrap();
            assert!(c.holds(), "{}", oracle_suite_label(&c));
        }
    }

    #[test]
    fn stone_two_by_two() {
        let c = stone_compare(&catalog::powerset(2), &Caps::default()).unwrap();
        assert!(c.holds(), "{c:?}");
        let r = lattice_semiring(&catalog::powerset(2)).unwrap();
        let sp = radical_frame(&to_localic(&r, None).unwrap(), &Caps::default()).unwrap();
        assert_eq!(sp.points.len(), 2);
    }

    #[test]
    fn hofmann_lawson_two_chain() {
        let p = catalog::chain(2).poset().clone();
        let c = hofmann_lawson_compare(&p, &Caps::default()).unwrap();
        assert!(c.holds(), "{c:?}");
    }
}
