//! Commutative quantales on finite suplattices, nuclei, reflections and
//! homomorphism enumeration.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::order::{close_table, is_distributive, ClosureOperator, ClosureQuotient};
use crate::suplattice::{for_each_sup_map, SupMap, Suplattice};
use crate::{law, Caps, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantale {
    lattice: Suplattice,
    mult: Vec<u32>,
    unit: usize,
}

impl Quantale {
    pub fn new(lattice: Suplattice, mult: Vec<usize>, unit: usize) -> Result<Self> {
        let n = lattice.len();
        if mult.len() != n * n {
            return Err(Error::BadTable {
                what: "multiplication",
                expected: n * n,
                found: mult.len(),
            });
        }
        if let Some(&v) = mult.iter().chain([&unit]).find(|&&v| v >= n) {
            return Err(Error::BadTable {
                what: "multiplication value",
                expected: n,
                found: v,
            });
        }
        let q = Quantale {
            lattice,
            mult: mult.into_iter().map(|v| v as u32).collect(),
            unit,
        };
        q.check_laws()?;
        Ok(q)
    }

    pub fn from_fn(lattice: Suplattice, f: impl Fn(usize, usize) -> usize, unit: usize) -> Result<Self> {
        let n = lattice.len();
        let mult = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Quantale::new(lattice, mult, unit)
    }

    /// A finite distributive lattice with meet as multiplication.
    pub fn frame(lattice: Suplattice) -> Result<Self> {
        if let Some((a, b, c)) = crate::order::distributivity_witness(&lattice) {
            return Err(Error::NotDistributive {
                a: lattice.label(a).to_string(),
                b: lattice.label(b).to_string(),
                c: lattice.label(c).to_string(),
            });
        }
        let top = lattice.top();
        let l = lattice.clone();
        Quantale::from_fn(lattice, |a, b| l.meet(a, b), top)
    }

    fn check_laws(&self) -> Result<()> {
        let l = &self.lattice;
        let n = l.len();
        let name = |a: usize| l.label(a).to_string();
        for a in 0..n {
            if self.mul(a, self.unit) != a {
                return Err(law("unit", name(a)));
            }
            if self.mul(a, l.bottom()) != l.bottom() {
                return Err(law("bilinearity (bottom)", name(a)));
            }
            for b in 0..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(law("commutativity", format!("{} · {}", name(a), name(b))));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(law("associativity", format!("({}, {}, {})", name(a), name(b), name(c))));
                    }
                    if self.mul(a, l.join(b, c)) != l.join(self.mul(a, b), self.mul(a, c)) {
                        return Err(law("bilinearity (join)", format!("({}, {}, {})", name(a), name(b), name(c))));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> &Suplattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.lattice.len() + b] as usize
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mult_table(&self) -> Vec<usize> {
        self.mult.iter().map(|&v| v as usize).collect()
    }

    /// `p · q = !(p) · q` where `! : Ω → Q` is the unique quantale map.
    pub fn scalar(&self, p: bool, q: usize) -> usize {
        let bang = if p { self.unit } else { self.lattice.bottom() };
        self.mul(bang, q)
    }

    pub fn is_two_sided(&self) -> bool {
        self.unit == self.lattice.top()
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.len()).all(|a| self.mul(a, a) == a)
    }

    /// Two-sided with idempotent multiplication, equivalently mult = meet.
    pub fn is_frame(&self) -> bool {
        let l = &self.lattice;
        (0..l.len()).all(|a| (0..l.len()).all(|b| self.mul(a, b) == l.meet(a, b)))
    }

    pub fn is_hom(&self, target: &Quantale, f: &[usize]) -> bool {
        f[self.unit] == target.unit
            && crate::suplattice::is_join_preserving(&self.lattice, &target.lattice, f)
            && (0..self.len()).all(|a| (0..self.len()).all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }
}

/// A closure operator with `j(a)·j(b) ≤ j(a·b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantaleNucleus(ClosureOperator);

impl QuantaleNucleus {
    pub fn new(q: &Quantale, values: Vec<usize>) -> Result<Self> {
        let c = ClosureOperator::new(q.lattice.poset(), values)?;
        let l = &q.lattice;
        for a in 0..q.len() {
            for b in 0..q.len() {
                if !l.leq(q.mul(c.apply(a), c.apply(b)), c.apply(q.mul(a, b))) {
                    return Err(law("nucleus", format!("{} · {}", l.label(a), l.label(b))));
                }
            }
        }
        Ok(QuantaleNucleus(c))
    }

    pub fn closure(&self) -> &ClosureOperator {
        &self.0
    }

    pub fn apply(&self, a: usize) -> usize {
        self.0.apply(a)
    }
}

/// The quotient of a quantale by a nucleus.
#[derive(Clone, Debug)]
pub struct QuantaleQuotient {
    pub quantale: Quantale,
    pub nucleus: QuantaleNucleus,
    /// Fixed points of the nucleus, indexed by quotient element.
    pub fixed: Vec<usize>,
    /// The quotient map, a surjective quantale homomorphism.
    pub surjection: SupMap,
}

impl QuantaleQuotient {
    pub fn of_nucleus(q: &Quantale, nucleus: QuantaleNucleus) -> Result<Self> {
        let cq = ClosureQuotient::from_closure(&q.lattice, nucleus.0.clone())?;
        let k = cq.fixed.len();
        let s = &cq.surjection;
        let mult: Vec<usize> = (0..k * k)
            .map(|i| s[q.mul(cq.fixed[i / k], cq.fixed[i % k])])
            .collect();
        let quantale = Quantale::new(cq.quotient, mult, s[q.unit])?;
        let surjection = SupMap::new(&q.lattice, &quantale.lattice, cq.surjection)?;
        debug_assert!(q.is_hom(&quantale, surjection.values()));
        Ok(QuantaleQuotient {
            quantale,
            nucleus,
            fixed: cq.fixed,
            surjection,
        })
    }
}

/// The least nucleus with `u ≤ j(v)` for every relation `(u, v)`.
pub fn least_nucleus(q: &Quantale, relations: &[(usize, usize)]) -> Result<QuantaleNucleus> {
    let l = &q.lattice;
    let n = l.len();
    let mut j: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(u, v) in relations {
            let w = l.join(j[v], u);
            if w != j[v] {
                j[v] = w;
                changed = true;
            }
        }
        changed |= close_table(l, &mut j);
        for a in 0..n {
            for b in a..n {
                let ab = q.mul(a, b);
                let w = l.join(j[ab], q.mul(j[a], j[b]));
                if w != j[ab] {
                    j[ab] = w;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    QuantaleNucleus::new(q, j)
}

pub fn quotient_by(q: &Quantale, relations: &[(usize, usize)]) -> Result<QuantaleQuotient> {
    let nucleus = least_nucleus(q, relations)?;
    QuantaleQuotient::of_nucleus(q, nucleus)
}

/// Quotient by the nucleus `a ↦ a·⊤`.
pub fn two_sided_reflection(q: &Quantale) -> Result<QuantaleQuotient> {
    let top = q.lattice.top();
    let values = (0..q.len()).map(|a| q.mul(a, top)).collect();
    QuantaleQuotient::of_nucleus(q, QuantaleNucleus::new(q, values)?)
}

/// The frame reflection of a two-sided quantale: force `a ≤ j(a·a)`.
///
/// In a two-sided quantale `a·b ≤ a ∧ b` always holds, and once every
/// `a ≤ j(a·a)` the nucleus gives `j(a ∧ b) ≤ j((a ∧ b)(a ∧ b)) ≤ j(a·b)`,
/// so these forcings generate the same nucleus as `a ∧ b ≤ j(a·b)`.
pub fn localic_reflection(q: &Quantale) -> Result<QuantaleQuotient> {
    if !q.is_two_sided() {
        return Err(Error::NotTwoSided);
    }
    let relations: Vec<(usize, usize)> = (0..q.len()).map(|a| (a, q.mul(a, a))).collect();
    let r = quotient_by(q, &relations)?;
    debug_assert!(r.quantale.is_frame());
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HomKind {
    Sup,
    Quantale,
    TwoSided,
    Frame,
}

/// All homomorphisms of the given kind, sorted by value table.
pub fn enumerate_homs(source: &Quantale, target: &Quantale, kind: HomKind, caps: &Caps) -> Result<Vec<SupMap>> {
    match kind {
        HomKind::TwoSided if !(source.is_two_sided() && target.is_two_sided()) => return Err(Error::NotTwoSided),
        HomKind::Frame => {
            for q in [source, target] {
                if !q.is_frame() {
                    return Err(law("frame", "multiplication differs from meet".to_string()));
                }
            }
        }
        _ => {}
    }
    let mut out = Vec::new();
    for_each_sup_map(&source.lattice, &target.lattice, caps, |f| {
        if kind == HomKind::Sup || source.is_hom(target, &f) {
            out.push(SupMap::new(&source.lattice, &target.lattice, f).expect("enumerated maps preserve joins"));
        }
    })?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// The unique `g` with `g ∘ quotient.surjection = f`, when it exists as a quantale map.
pub fn factor_through(quotient: &QuantaleQuotient, target: &Quantale, f: &SupMap) -> Option<SupMap> {
    let k = quotient.quantale.len();
    let s = &quotient.surjection;
    let mut g = vec![usize::MAX; k];
    for (a, &v) in f.values().iter().enumerate() {
        let i = s.apply(a);
        if g[i] != usize::MAX && g[i] != v {
            return None;
        }
        g[i] = v;
    }
    if quotient.quantale.is_hom(target, &g) {
        Some(SupMap::new(quotient.quantale.lattice(), target.lattice(), g).ok()?)
    } else {
        None
    }
}

/// True if `q` is a frame: distributive lattice with meet multiplication.
pub fn certify_frame(q: &Quantale) -> bool {
    q.is_frame() && is_distributive(&q.lattice)
}
