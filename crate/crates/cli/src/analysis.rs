//! Per-object computations behind `analyze`, `spectrum`, `points` and `export`.

use std::fmt::Write as _;

use thiserror::Error;

use pfspec_core::algebra::{lattice_semiring, to_localic, LocalicMonoid, LocalicSemiring};
use pfspec_core::locale::{alexandrov, scott_analysis};
use pfspec_core::order::is_distributive;
use pfspec_core::spectrum::{dualisability_conditions, monoid_ideal_quantale, radical_frame, saturation, SpectrumResult};
use pfspec_core::suplattice::dualisability;
use pfspec_core::{Caps, FinitePoset, Quantale, Suplattice};

use crate::model::{ModelError, NamedObject, Object};
use crate::render::Structure;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("`{object}`: {source}")]
    Core {
        object: String,
        #[source]
        source: pfspec_core::Error,
    },
    #[error("no object named `{0}`")]
    NoSuchObject(String),
    #[error("`{object}` is a {kind}; {what} needs {needs}")]
    NotApplicable {
        object: String,
        kind: &'static str,
        what: &'static str,
        needs: &'static str,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructureKind {
    /// `Idl(R)`.
    Idl,
    /// `Rad(R)`.
    Rad,
    /// Monoid ideals `𝓜M`.
    MonoidIdeals,
    /// Saturated opens `𝒮M`.
    Saturated,
    Opens,
    Lattice,
    Poset,
}

impl StructureKind {
    pub fn default_for(o: &Object) -> Self {
        match o {
            Object::Semiring { .. } => StructureKind::Idl,
            Object::Monoid { .. } => StructureKind::MonoidIdeals,
            Object::Lattice(_) => StructureKind::Lattice,
            Object::Poset(_) => StructureKind::Poset,
        }
    }
}

pub fn kind_of(o: &Object) -> &'static str {
    match o {
        Object::Poset(_) => "poset",
        Object::Semiring { .. } => "semiring",
        Object::Monoid { .. } => "monoid",
        Object::Lattice(_) => "lattice",
    }
}

fn core<T>(object: &NamedObject, r: pfspec_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Core {
        object: object.name.clone(),
        source,
    })
}

fn not_applicable<T>(o: &NamedObject, what: &'static str, needs: &'static str) -> Result<T, CliError> {
    Err(CliError::NotApplicable {
        object: o.name.clone(),
        kind: kind_of(&o.object),
        what,
        needs,
    })
}

/// The localic semiring of a semiring object, or the discrete lattice
/// semiring of a distributive lattice object.
pub fn semiring_of(o: &NamedObject) -> Result<LocalicSemiring, CliError> {
    match &o.object {
        Object::Semiring { localic, .. } => Ok(localic.clone()),
        Object::Lattice(l) => {
            let r = core(o, lattice_semiring(l))?;
            core(o, to_localic(&r, None))
        }
        _ => not_applicable(o, "a spectrum", "a semiring or a distributive lattice"),
    }
}

pub fn monoid_of(o: &NamedObject) -> Result<LocalicMonoid, CliError> {
    match &o.object {
        Object::Monoid { localic, .. } => Ok(localic.clone()),
        Object::Semiring { localic, .. } => Ok(localic.mult.clone()),
        _ => not_applicable(o, "monoid ideals", "a monoid or a semiring"),
    }
}

pub fn spectrum_of(o: &NamedObject, caps: &Caps) -> Result<SpectrumResult, CliError> {
    let r = semiring_of(o)?;
    core(o, radical_frame(&r, caps))
}

fn mask_structure(title: String, points: &FinitePoset, masks: &[u64], q: Option<&Quantale>, order: &FinitePoset) -> Structure {
    Structure {
        title,
        order: order.clone(),
        labels: masks.iter().map(|&m| points.mask_label(m)).collect(),
        quantale: q.cloned(),
    }
}

pub fn structure(o: &NamedObject, kind: StructureKind, caps: &Caps) -> Result<Structure, CliError> {
    let name = &o.name;
    match kind {
        StructureKind::Idl => {
            let sp = spectrum_of(o, caps)?;
            let q = sp.idl();
            let masks: Vec<u64> = (0..q.len()).map(|i| sp.ideals.mask(i)).collect();
            Ok(Structure {
                title: format!("Idl({name})"),
                order: q.lattice().poset().clone(),
                labels: masks.iter().map(|&m| sp.mask_label(m)).collect(),
                quantale: Some(q.clone()),
            })
        }
        StructureKind::Rad => {
            let sp = spectrum_of(o, caps)?;
            let q = sp.rad();
            let masks: Vec<u64> = sp.rad.fixed.iter().map(|&i| sp.ideals.mask(i)).collect();
            Ok(Structure {
                title: format!("Rad({name})"),
                order: q.lattice().poset().clone(),
                labels: masks.iter().map(|&m| sp.mask_label(m)).collect(),
                quantale: Some(q.clone()),
            })
        }
        StructureKind::MonoidIdeals => {
            let m = monoid_of(o)?;
            let mi = core(o, monoid_ideal_quantale(&m))?;
            let q = mi.quantale();
            let masks: Vec<u64> = (0..q.len()).map(|i| mi.mask(i)).collect();
            Ok(mask_structure(format!("M({name})"), m.points(), &masks, Some(q), q.lattice().poset()))
        }
        StructureKind::Saturated => {
            let m = monoid_of(o)?;
            let s = core(o, saturation(&m))?;
            Ok(mask_structure(format!("Sat({name})"), m.points(), &s.masks(&m), None, s.sat_frame.poset()))
        }
        StructureKind::Opens => {
            let x = match &o.object {
                Object::Poset(p) => core(o, alexandrov(p))?,
                _ => monoid_of(o)?.locale,
            };
            Ok(mask_structure(format!("O({name})"), x.points(), x.open_masks().masks(), None, x.opens().poset()))
        }
        StructureKind::Lattice => match &o.object {
            Object::Lattice(l) => Ok(Structure {
                title: name.clone(),
                order: l.poset().clone(),
                labels: l.poset().labels().to_vec(),
                quantale: None,
            }),
            Object::Poset(p) => {
                let x = core(o, alexandrov(p))?;
                Ok(mask_structure(format!("Up({name})"), p, x.open_masks().masks(), None, x.opens().poset()))
            }
            _ => not_applicable(o, "the lattice structure", "a lattice or a poset"),
        },
        StructureKind::Poset => match &o.object {
            Object::Poset(p) => Ok(Structure {
                title: name.clone(),
                order: p.clone(),
                labels: p.labels().to_vec(),
                quantale: None,
            }),
            Object::Lattice(l) => Ok(Structure {
                title: name.clone(),
                order: l.poset().clone(),
                labels: l.poset().labels().to_vec(),
                quantale: None,
            }),
            _ => not_applicable(o, "the poset structure", "a poset or a lattice"),
        },
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn lattice_summary(out: &mut String, l: &Suplattice, caps: &Caps) {
    let joins: Vec<&str> = l.join_irreducibles().iter().map(|&j| l.label(j)).collect();
    let _ = writeln!(out, "join-irreducibles: {}", joins.join(" "));
    let _ = writeln!(out, "distributive: {}", yes(is_distributive(l)));
    match dualisability(l, caps) {
        Ok(d) => {
            let _ = writeln!(
                out,
                "dualisable: dual basis {}, pairing {}, supercontinuous {}",
                yes(d.dual_basis),
                yes(d.pairing),
                yes(d.supercontinuous)
            );
        }
        Err(e) => {
            let _ = writeln!(out, "dualisable: {e}");
        }
    }
}

fn monoid_summary(out: &mut String, o: &NamedObject, m: &LocalicMonoid) -> Result<(), CliError> {
    let s = core(o, saturation(m))?;
    let mi = core(o, monoid_ideal_quantale(m))?;
    let d = core(o, dualisability_conditions(m, &s))?;
    let _ = writeln!(out, "opens: {}", m.locale.opens().len());
    let _ = writeln!(out, "saturated opens: {} (every open saturated: {})", s.fixed.len(), yes(s.deflationary));
    let _ = writeln!(out, "monoid ideals: {}", mi.quantale().len());
    let _ = writeln!(
        out,
        "dualisability: dual basis {}, basis family {}, pi family {}, pi cover {}",
        yes(d.dual_basis),
        yes(d.basis_family),
        yes(d.pi_family),
        yes(d.pi_cover)
    );
    Ok(())
}

pub fn analyze(o: &NamedObject, caps: &Caps) -> Result<String, CliError> {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", kind_of(&o.object), o.name);
    match &o.object {
        Object::Poset(p) => {
            let _ = writeln!(out, "elements: {}", p.len());
            let _ = writeln!(out, "covers: {}", p.covers().len());
            let ups = core(o, p.up_sets(pfspec_core::locale::MAX_OPENS))?;
            let _ = writeln!(out, "up-sets: {}", ups.len());
            let r = core(o, scott_analysis(p, caps))?;
            let wb = r.way_below.iter().filter(|&&b| b).count();
            let _ = writeln!(out, "way-below pairs: {wb}");
            let _ = writeln!(out, "continuous: {}", yes(r.continuous));
            let _ = writeln!(out, "Scott topology is Alexandrov: {}", yes(r.scott_is_alexandrov));
            let _ = writeln!(out, "Scott-closed sets: {}", r.scott_closed.len());
        }
        Object::Lattice(l) => {
            let _ = writeln!(out, "elements: {}", l.len());
            lattice_summary(&mut out, l, caps);
            if is_distributive(l) {
                let sp = spectrum_of(o, caps)?;
                let _ = writeln!(out, "ideals: {}", sp.idl().len());
                let _ = writeln!(out, "points: {}", sp.points.len());
            }
        }
        Object::Monoid { algebra, localic } => {
            let _ = writeln!(out, "elements: {} ({})", algebra.len(), algebra.labels().join(" "));
            let _ = writeln!(out, "unit: {}", algebra.label(algebra.unit()));
            monoid_summary(&mut out, o, localic)?;
        }
        Object::Semiring { algebra, localic } => {
            let _ = writeln!(out, "elements: {} ({})", algebra.len(), algebra.labels().join(" "));
            let _ = writeln!(out, "zero: {}, one: {}", algebra.label(algebra.zero()), algebra.label(algebra.one()));
            let _ = writeln!(out, "order: {}", if localic.is_discrete() { "discrete" } else { "non-discrete" });
            monoid_summary(&mut out, o, &localic.mult)?;
            let sp = spectrum_of(o, caps)?;
            let _ = writeln!(out, "ideals: {} (frame: {})", sp.idl().len(), yes(sp.idl().is_frame()));
            let _ = writeln!(out, "radical ideals: {}", sp.rad().len());
            let _ = writeln!(out, "points: {}", sp.points.len());
        }
    }
    Ok(out)
}

pub fn points(o: &NamedObject, caps: &Caps) -> Result<String, CliError> {
    let sp = spectrum_of(o, caps)?;
    let mut out = String::new();
    let _ = writeln!(out, "points of {}: {}", o.name, sp.points.len());
    for &p in &sp.points {
        let _ = writeln!(out, "  {}", sp.mask_label(p));
    }
    Ok(out)
}
