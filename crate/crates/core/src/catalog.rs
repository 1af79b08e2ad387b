//! Small named structures used throughout the tests, the acceptance suite
//! and the CLI.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{lattice_semiring, to_localic, FiniteCommMonoid, FiniteCommSemiring, LocalicSemiring};
use crate::locale::{MaskLattice, MAX_OPENS};
use crate::order::{bit, mask_iter, FinitePoset};
use crate::quantale::{two_sided_reflection, Quantale};
use crate::suplattice::Suplattice;

fn lattice_of(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Suplattice {
    let p = FinitePoset::from_fn(labels, leq).expect("catalog order");
    Suplattice::new(p).expect("catalog lattice")
}

fn strings<S: AsRef<str>>(v: &[S]) -> Vec<String> {
    v.iter().map(|s| s.as_ref().to_string()).collect()
}

/// The `n`-element chain: `0`, `0 < 1`, `0 < m < 1`, then `0 < c1 < … < 1`.
pub fn chain(n: usize) -> Suplattice {
    assert!(n >= 1, "a lattice has at least one element");
    let labels = match n {
        1 => strings(&["0"]),
        2 => strings(&["0", "1"]),
        3 => strings(&["0", "m", "1"]),
        _ => {
            let mut v = vec![String::from("0")];
            v.extend((1..n - 1).map(|i| format!("c{i}")));
            v.push(String::from("1"));
            v
        }
    };
    lattice_of(labels, |a, b| a <= b)
}

/// The diamond `0 < x, y, z < 1`.
pub fn m3() -> Suplattice {
    lattice_of(strings(&["0", "x", "y", "z", "1"]), |a, b| a == b || a == 0 || b == 4)
}

/// The pentagon `0 < a < b < 1`, `0 < c < 1`.
pub fn n5() -> Suplattice {
    lattice_of(strings(&["0", "a", "b", "c", "1"]), |a, b| a == b || a == 0 || b == 4 || (a, b) == (1, 2))
}

/// Subsets of `{1, …, n}`; the element with index `s` is the subset with mask `s`.
pub fn powerset(n: usize) -> Suplattice {
    let labels = (0u64..1 << n)
        .map(|s| {
            let names: Vec<String> = mask_iter(s).map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    lattice_of(labels, |a, b| a & !b == 0)
}

/// The product of an `a`-chain and a `b`-chain.
pub fn grid(a: usize, b: usize) -> Suplattice {
    chain(a).product(&chain(b))
}

/// Up-sets of a poset, ordered by inclusion.
pub fn up_set_lattice(p: &FinitePoset) -> Suplattice {
    let ups = p.up_sets(MAX_OPENS).expect("catalog poset is small");
    MaskLattice::new(p, ups).expect("up-sets form a lattice").lattice().clone()
}

/// Strictly upper-triangular relations on `n` points that are transitive,
/// one per isomorphism class.
pub fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    assert!(n <= 6, "poset enumeration is exhaustive");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rel in 0u64..1 << pairs.len() {
        let lt = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| rel & bit(k) != 0);
        let transitive = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(lt(i, j) && lt(j, k)) || lt(i, k))));
        if !transitive {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                let mut code = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        if i < j && lt(i, j) {
                            code |= bit(p[i] * n + p[j]);
                        }
                    }
                }
                code
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canonical) {
            let labels = (0..n).map(|i| format!("p{i}")).collect();
            out.push(FinitePoset::from_fn(labels, |i, j| i == j || lt(i, j)).expect("transitive"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every lattice with at most `n` elements, one per isomorphism class:
/// a bounded poset `0 < Q < 1` for each `Q` with at most `n - 2` elements.
pub fn lattices_up_to(n: usize) -> Vec<Suplattice> {
    let mut out = Vec::new();
    if n >= 1 {
        out.push(chain(1));
    }
    if n < 2 {
        return out;
    }
    for m in 0..=n - 2 {
        for q in posets_up_to_iso(m) {
            let k = m + 2;
            let mut labels = vec![String::from("0")];
            labels.extend((0..m).map(|i| String::from(char::from(b'a' + i as u8))));
            labels.push(String::from("1"));
            let p = FinitePoset::from_fn(labels, |a, b| a == b || a == 0 || b == k - 1 || (a > 0 && b > 0 && a < k - 1 && b < k - 1 && q.leq(a - 1, b - 1)))
                .expect("bounded poset");
            if let Ok(l) = Suplattice::new(p) {
                out.push(l);
            }
        }
    }
    out
}

fn monoid<S: AsRef<str>>(labels: &[S], unit: usize, f: impl Fn(usize, usize) -> usize) -> FiniteCommMonoid {
    FiniteCommMonoid::from_fn(labels, unit, f).expect("catalog monoid")
}

/// `{1, a, 0}` with `a² = 0`.
pub fn monoid_nil() -> FiniteCommMonoid {
    monoid(&["1", "a", "0"], 0, |x, y| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        _ => 2,
    })
}

/// `{1, a}` with `a² = 1`.
pub fn monoid_z2() -> FiniteCommMonoid {
    monoid(&["1", "a"], 0, |x, y| x ^ y)
}

/// The catalog of finite commutative monoids, all with at most four elements.
pub fn monoids() -> Vec<FiniteCommMonoid> {
    let c3 = chain(3);
    let meet = monoid(c3.poset().labels(), c3.top(), |x, y| c3.meet(x, y));
    vec![
        monoid(&["1"], 0, |_, _| 0),
        monoid_z2(),
        monoid(&["1", "e"], 0, |x, y| x.max(y)),
        monoid_nil(),
        monoid(&["1", "a", "b"], 0, |x, y| (x + y) % 3),
        meet,
        monoid(&["0", "1", "2", "3"], 1, |x, y| x * y % 4),
        monoid(&["1", "a", "a2", "0"], 0, |x, y| (x + y).min(3)),
    ]
}

/// `P(M)` with `A·B = {ab}` and unit `{1}`.
pub fn subset_quantale(m: &FiniteCommMonoid) -> Quantale {
    let n = m.len();
    let l = powerset(n);
    let product = |a: usize, b: usize| {
        mask_iter(a as u64).fold(0u64, |acc, x| mask_iter(b as u64).fold(acc, |acc, y| acc | bit(m.mul(x, y)))) as usize
    };
    Quantale::from_fn(l, product, bit(m.unit()) as usize).expect("subset quantale")
}

/// Łukasiewicz product on an `n`-chain: `x ⊙ y = max(0, x + y - (n - 1))`.
pub fn lukasiewicz(n: usize) -> Quantale {
    Quantale::from_fn(chain(n), |x, y| (x + y).saturating_sub(n - 1), n - 1).expect("Łukasiewicz chain")
}

/// The catalog of two-sided quantales, all with at most five elements.
pub fn two_sided_quantales() -> Vec<Quantale> {
    named_two_sided_quantales().into_iter().map(|(_, q)| q).collect()
}

/// [`two_sided_quantales`] with short display names.
pub fn named_two_sided_quantales() -> Vec<(&'static str, Quantale)> {
    let frame = |l: Suplattice| Quantale::frame(l).expect("distributive");
    let nil_ideals = two_sided_reflection(&subset_quantale(&monoid_nil())).expect("reflection").quantale;
    vec![
        ("Ω", frame(Suplattice::omega())),
        ("C3", frame(chain(3))),
        ("Ł3", lukasiewicz(3)),
        ("C4", frame(chain(4))),
        ("Ł4", lukasiewicz(4)),
        ("M(nil)", nil_ideals),
        ("P2", frame(powerset(2))),
        ("C5", frame(chain(5))),
        ("Ł5", lukasiewicz(5)),
    ]
}

fn semiring<S: AsRef<str>>(labels: &[S], zero: usize, one: usize, add: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize) -> FiniteCommSemiring {
    FiniteCommSemiring::from_fns(labels, zero, one, add, mul).expect("catalog semiring")
}

/// The Booleans with `1 + 1 = 1`.
pub fn semiring_bool() -> FiniteCommSemiring {
    semiring(&["0", "1"], 0, 1, |x, y| x | y, |x, y| x & y)
}

pub fn zmod(n: usize) -> FiniteCommSemiring {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    semiring(&labels, 0, 1 % n, |x, y| (x + y) % n, |x, y| x * y % n)
}

/// `ℤ/2 × ℤ/2`; the element `(a, b)` is labelled `ab` and has index `2a + b`.
pub fn z2xz2() -> FiniteCommSemiring {
    semiring(&["00", "01", "10", "11"], 0, 3, |x, y| x ^ y, |x, y| x & y)
}

/// The discrete semirings compared against the subset oracle.
pub fn discrete_semirings() -> Vec<FiniteCommSemiring> {
    vec![
        semiring_bool(),
        zmod(4),
        zmod(6),
        z2xz2(),
        lattice_semiring(&chain(3)).expect("chains are distributive"),
    ]
}

/// Points `⊥ ⊑ ⊤` with `x·y = x ∨ y`, `x + y = x ∧ y`, zero `⊤` and one `⊥`.
pub fn sierpinski_reversed() -> LocalicSemiring {
    let r = semiring(&["⊥", "⊤"], 1, 0, |x, y| x.min(y), |x, y| x.max(y));
    let order = FinitePoset::build(&["⊥", "⊤"], &[("⊥", "⊤")]).expect("2-chain");
    to_localic(&r, Some(&order)).expect("reversed Sierpiński semiring")
}
