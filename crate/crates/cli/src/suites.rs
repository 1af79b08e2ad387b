//! The `verify` suites. Each runs over every applicable object in a model,
//! in file order, and yields one check per (object, property) pair.

use pfspec_core::algebra::{LocalicMonoid, LocalicSemiring};
use pfspec_core::catalog::{chain, named_two_sided_quantales};
use pfspec_core::iso::is_order_iso;
use pfspec_core::locale::scott_analysis;
use pfspec_core::order::is_distributive;
use pfspec_core::spectrum::oracle::{hofmann_lawson_compare, oracle_suite_label, stone_compare, zariski_compare, OracleComparison};
use pfspec_core::spectrum::representability::{opmai_invariance, opmai_pair, representability_check, RepresentabilityRecord};
use pfspec_core::spectrum::{
    dualisability_conditions, ideal_quantale, monoid_ideal_quantale, opai, opmai, saturated_replacement, saturation, universal_element,
    universal_monoid_element, verify_duality, verify_saturation,
};
use pfspec_core::suplattice::{dualisability, sup_maps};
use pfspec_core::tensor::{bilinear_maps, unitor};
use pfspec_core::{Caps, Suplattice, TensorLattice};

use crate::model::{NamedObject, Object};
use crate::report::{run_check, Check, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Tensor,
    Duality,
    Representability,
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Tensor, Suite::Duality, Suite::Representability, Suite::Oracles];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tensor => "tensor",
            Suite::Duality => "duality",
            Suite::Representability => "representability",
            Suite::Oracles => "oracles",
        }
    }
}

pub fn run_suite(suite: Suite, objects: &[NamedObject], caps: &Caps) -> Vec<Check> {
    match suite {
        Suite::Tensor => tensor(objects, caps),
        Suite::Duality => duality(objects, caps),
        Suite::Representability => representability(objects, caps),
        Suite::Oracles => oracles(objects, caps),
    }
}

fn lattices(objects: &[NamedObject]) -> Vec<(&str, &Suplattice)> {
    objects
        .iter()
        .filter_map(|o| match &o.object {
            Object::Lattice(l) => Some((o.name.as_str(), l)),
            _ => None,
        })
        .collect()
}

fn semirings(objects: &[NamedObject]) -> Vec<(&str, &LocalicSemiring)> {
    objects
        .iter()
        .filter_map(|o| match &o.object {
            Object::Semiring { localic, .. } => Some((o.name.as_str(), localic)),
            _ => None,
        })
        .collect()
}

/// Monoid objects, then the multiplicative monoids of semiring objects.
fn monoids(objects: &[NamedObject]) -> Vec<(String, &LocalicMonoid)> {
    let mut out: Vec<(String, &LocalicMonoid)> = objects
        .iter()
        .filter_map(|o| match &o.object {
            Object::Monoid { localic, .. } => Some((o.name.clone(), localic)),
            _ => None,
        })
        .collect();
    out.extend(semirings(objects).into_iter().map(|(n, r)| (format!("{n} under ·"), &r.mult)));
    out
}

fn tensor(objects: &[NamedObject], caps: &Caps) -> Vec<Check> {
    let ls = lattices(objects);
    let targets = [("Ω", Suplattice::omega()), ("C3", chain(3))];
    let mut out = Vec::new();
    for (i, &(ln, l)) in ls.iter().enumerate() {
        for &(mn, m) in &ls[i..] {
            for (tn, t) in &targets {
                out.push(run_check("tensor", format!("{ln} ⊗ {mn} → {tn}: bilinear maps = maps from the tensor"), || {
                    let tensor = TensorLattice::new(vec![l.clone(), m.clone()], caps)?;
                    let bilinear = bilinear_maps(l, m, t, caps)?;
                    let from_tensor = sup_maps(tensor.lattice(), t, caps)?.len();
                    let mut induced = Vec::with_capacity(bilinear.len());
                    for f in &bilinear {
                        induced.push(tensor.induce(t, |x| f[x[0] * m.len() + x[1]])?.into_values());
                    }
                    induced.sort();
                    induced.dedup();
                    let detail = format!("{} bilinear, {} from tensor, {} distinct induced", bilinear.len(), from_tensor, induced.len());
                    Ok(Verdict::when(bilinear.len() == from_tensor && induced.len() == from_tensor, detail))
                }));
            }
        }
    }
    for &(ln, l) in &ls {
        out.push(run_check("tensor", format!("{ln} ⊗ Ω ≅ {ln}"), || {
            let t = TensorLattice::new(vec![l.clone(), Suplattice::omega()], caps)?;
            let f: Vec<usize> = t.elements().iter().map(|s| unitor(t.space(), s)).collect();
            Ok(Verdict::when(
                is_order_iso(t.lattice().poset(), l.poset(), &f),
                format!("{} bi-ideals", t.lattice().len()),
            ))
        }));
    }
    out
}

fn duality(objects: &[NamedObject], caps: &Caps) -> Vec<Check> {
    let mut out = Vec::new();
    for (ln, l) in lattices(objects) {
        out.push(run_check("duality", format!("{ln}: dual basis ⟺ pairing ⟺ supercontinuous ⟺ distributive"), || {
            let d = dualisability(l, caps)?;
            let dist = is_distributive(l);
            let detail = format!(
                "dual basis {}, pairing {}, supercontinuous {}, distributive {}",
                d.dual_basis, d.pairing, d.supercontinuous, dist
            );
            Ok(Verdict::when(d.dual_basis == dist && d.pairing == dist && d.supercontinuous == dist, detail))
        }));
    }
    for (mn, m) in monoids(objects) {
        out.push(run_check("duality", format!("{mn}: saturation closure and frame of saturated opens"), || {
            let s = saturation(m)?;
            verify_saturation(m, &s)?;
            Ok(Verdict::pass(format!("{} of {} opens saturated", s.fixed.len(), m.locale.opens().len())))
        }));
        out.push(run_check("duality", format!("{mn}: monoid ideals ≅ hom(saturated opens, Ω)"), || {
            let s = saturation(m)?;
            let mi = monoid_ideal_quantale(m)?;
            let d = verify_duality(m, &s, &mi)?;
            Ok(Verdict::pass(format!("{} elements, complement and searched isomorphisms verified", d.dual.len())))
        }));
        out.push(run_check("duality", format!("{mn}: dualisability conditions agree"), || {
            let s = saturation(m)?;
            let c = dualisability_conditions(m, &s)?;
            let detail = format!(
                "dual basis {}, basis family {}, pi family {}, pi cover {}",
                c.dual_basis, c.basis_family, c.pi_family, c.pi_cover
            );
            Ok(Verdict::when(c.agree(), detail))
        }));
    }
    out
}

fn record_verdict(rec: RepresentabilityRecord) -> Verdict {
    let detail = format!("{} homomorphisms, {} anti-ideals", rec.homs, rec.members);
    match (rec.holds(), rec.witness) {
        (true, _) => Verdict::pass(detail),
        (false, Some(w)) => Verdict::fail(format!("{detail}; {w}")),
        (false, None) => Verdict::fail(detail),
    }
}

fn representability(objects: &[NamedObject], caps: &Caps) -> Vec<Check> {
    let quantales = named_two_sided_quantales();
    let mut out = Vec::new();
    for (rn, r) in semirings(objects) {
        let prepared = (|| {
            let s = saturation(&r.mult)?;
            let iq = ideal_quantale(r)?;
            let d = verify_duality(&r.mult, &s, &iq.monoid)?;
            universal_element(r, &s, &d, &iq)
        })();
        for (qn, q) in &quantales {
            out.push(run_check("representability", format!("{rn} with {qn}: Hom(Idl, Q) ≅ OPAI(Q)"), || {
                let u = prepared.clone()?;
                Ok(record_verdict(representability_check(&u, r.locale(), &opai(r, q)?, caps)?))
            }));
        }
    }
    for (mn, o) in objects.iter().filter_map(|o| match &o.object {
        Object::Monoid { localic, .. } => Some((o.name.as_str(), localic)),
        _ => None,
    }) {
        let prepared = (|| {
            let s = saturation(o)?;
            let mi = monoid_ideal_quantale(o)?;
            let d = verify_duality(o, &s, &mi)?;
            let rep = saturated_replacement(o, &s)?;
            Ok::<_, pfspec_core::Error>((universal_monoid_element(o, &s, &d, &mi)?, rep))
        })();
        for (qn, q) in &quantales {
            out.push(run_check("representability", format!("{mn} with {qn}: Hom(M, Q) ≅ OPMAI(Q), invariant under saturation"), || {
                let (u, rep) = prepared.clone()?;
                let v = record_verdict(representability_check(&u, &o.locale, &opmai(o, q)?, caps)?);
                let (a, b) = opmai_pair(o, &rep, q)?;
                let invariant = opmai_invariance(&a, &b, &rep);
                let detail = format!("{}; replacement has {} anti-ideals", v.detail.unwrap_or_default(), b.len());
                Ok(Verdict::when(v.pass && invariant, detail))
            }));
        }
    }
    out
}

fn comparison_verdict(c: OracleComparison) -> Verdict {
    let label = oracle_suite_label(&c);
    match (c.holds(), &c.witness) {
        (true, _) => Verdict::pass(label),
        (false, Some(w)) => Verdict::fail(format!("{label}; {w}")),
        (false, None) => Verdict::fail(label),
    }
}

fn oracles(objects: &[NamedObject], caps: &Caps) -> Vec<Check> {
    let mut out = Vec::new();
    for o in objects {
        match &o.object {
            Object::Semiring { algebra, localic } if localic.is_discrete() => {
                out.push(run_check("oracles", format!("{}: Zariski ideals, radicals and primes", o.name), || {
                    Ok(comparison_verdict(zariski_compare(algebra, caps)?))
                }));
            }
            Object::Lattice(l) if is_distributive(l) => {
                out.push(run_check("oracles", format!("{}: Stone ideals and prime filters", o.name), || {
                    Ok(comparison_verdict(stone_compare(l, caps)?))
                }));
            }
            Object::Poset(p) => {
                out.push(run_check("oracles", format!("{}: Hofmann-Lawson Rad ≅ Up(P), points ≅ P", o.name), || {
                    Ok(comparison_verdict(hofmann_lawson_compare(p, caps)?))
                }));
                out.push(run_check("oracles", format!("{}: Scott-closed sets ↔ OWC sublocales", o.name), || {
                    let r = scott_analysis(p, caps)?;
                    let detail = format!(
                        "{} Scott-closed sets, S_(h_S) = S {}, h_(S_h) = h {}",
                        r.scott_closed.len(),
                        r.closed_round_trip,
                        r.functional_round_trip
                    );
                    Ok(Verdict::when(r.closed_round_trip && r.functional_round_trip && r.scott_is_alexandrov, detail))
                }));
            }
            _ => {}
        }
    }
    out
}
