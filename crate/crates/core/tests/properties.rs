use std::sync::OnceLock;

use pfspec_core::algebra::{holoid_quotient, lattice_semiring, to_localic, FiniteCommMonoid, FiniteCommSemiring};
use pfspec_core::catalog;
use pfspec_core::order::{adjoint, is_distributive, least_closure, Side};
use pfspec_core::quantale::{quotient_by, Quantale};
use pfspec_core::suplattice::sup_maps;
use pfspec_core::{Caps, Suplattice, TensorSpace};
use proptest::prelude::*;

fn lattices() -> &'static [Suplattice] {
    static L: OnceLock<Vec<Suplattice>> = OnceLock::new();
    L.get_or_init(|| catalog::lattices_up_to(6))
}

fn quantales() -> &'static [Quantale] {
    static Q: OnceLock<Vec<Quantale>> = OnceLock::new();
    Q.get_or_init(catalog::two_sided_quantales)
}

fn lattice() -> impl Strategy<Value = &'static Suplattice> {
    (0..lattices().len()).prop_map(|i| &lattices()[i])
}

fn small_lattice() -> impl Strategy<Value = &'static Suplattice> {
    let small: Vec<usize> = (0..lattices().len()).filter(|&i| lattices()[i].len() <= 5).collect();
    proptest::sample::select(small).prop_map(|i| &lattices()[i])
}

fn pairs(raw: &[(usize, usize)], n: usize) -> Vec<(usize, usize)> {
    raw.iter().map(|&(a, b)| (a % n, b % n)).collect()
}

proptest! {
    #[test]
    fn least_closure_fixes_exactly_the_forcing_closed_elements(
        l in lattice(),
        raw in proptest::collection::vec((0usize..64, 0usize..64), 0..5),
    ) {
        let n = l.len();
        let forcings = pairs(&raw, n);
        let q = least_closure(l, &forcings).unwrap();
        let j = q.closure.values();
        for x in 0..n {
            prop_assert!(l.leq(x, j[x]));
            prop_assert_eq!(j[j[x]], j[x]);
            for y in 0..n {
                if l.leq(x, y) {
                    prop_assert!(l.leq(j[x], j[y]));
                }
            }
        }
        for &(a, b) in &forcings {
            prop_assert!(l.leq(a, j[b]));
        }
        // the forcing-closed elements form a Moore family, hence the fixed points
        let closed: Vec<usize> = (0..n)
            .filter(|&x| forcings.iter().all(|&(a, b)| !l.leq(b, x) || l.leq(a, x)))
            .collect();
        prop_assert_eq!(&q.fixed, &closed);
        for a in 0..n {
            for b in 0..n {
                let s = &q.surjection;
                prop_assert_eq!(s[l.join(a, b)], q.quotient.join(s[a], s[b]));
            }
        }
    }

    #[test]
    fn right_adjoints_satisfy_the_adjunction(l in small_lattice(), m in small_lattice(), pick in any::<prop::sample::Index>()) {
        let maps = sup_maps(l, m, &Caps::default()).unwrap();
        let f = maps[pick.index(maps.len())].values();
        let g = adjoint(f, l, m, Side::Right).unwrap();
        for a in 0..l.len() {
            for b in 0..m.len() {
                prop_assert_eq!(m.leq(f[a], b), l.leq(a, g[b]));
            }
            prop_assert_eq!(f[g[f[a]]], f[a]);
        }
        for b in 0..m.len() {
            for c in 0..m.len() {
                prop_assert_eq!(g[m.meet(b, c)], l.meet(g[b], g[c]));
            }
        }
        let back = adjoint(&g, m, l, Side::Left).unwrap();
        prop_assert_eq!(back.as_slice(), f);
    }

    #[test]
    fn quotients_by_relations_are_homomorphic(
        qi in 0usize..9,
        raw in proptest::collection::vec((0usize..64, 0usize..64), 0..4),
    ) {
        let q = &quantales()[qi % quantales().len()];
        let rel = pairs(&raw, q.len());
        let r = quotient_by(q, &rel).unwrap();
        prop_assert!(q.is_hom(&r.quantale, r.surjection.values()));
        for &(u, v) in &rel {
            prop_assert!(q.lattice().leq(u, r.nucleus.apply(v)));
        }
        for a in 0..q.len() {
            for b in 0..q.len() {
                let (ja, jb) = (r.nucleus.apply(a), r.nucleus.apply(b));
                prop_assert!(q.lattice().leq(q.mul(ja, jb), r.nucleus.apply(q.mul(a, b))));
            }
        }
    }

    #[test]
    fn bi_ideal_closure_is_a_closure(
        l in small_lattice(),
        m in small_lattice(),
        a in proptest::collection::vec(any::<bool>(), 25),
        b in proptest::collection::vec(any::<bool>(), 25),
    ) {
        let space = TensorSpace::new(vec![l.clone(), m.clone()]);
        let n = space.carrier_size();
        let s = space.from_indices((0..n).filter(|&i| a[i]));
        let t = space.from_indices((0..n).filter(|&i| a[i] || b[i]));
        let cs = space.closure(&s);
        prop_assert!(s.leq(&cs));
        prop_assert!(space.is_bi_ideal(&cs));
        prop_assert_eq!(&space.closure(&cs), &cs);
        prop_assert!(cs.leq(&space.closure(&t)));
    }

    #[test]
    fn holoid_quotient_is_idempotent(n in 1usize..9, mi in 0usize..8, use_catalog in any::<bool>()) {
        let m: FiniteCommMonoid = if use_catalog {
            catalog::monoids()[mi].clone()
        } else {
            catalog::zmod(n).multiplicative()
        };
        let h = holoid_quotient(&m).unwrap();
        let hh = holoid_quotient(&h.monoid).unwrap();
        prop_assert_eq!(hh.monoid.len(), h.monoid.len());
        for x in 0..m.len() {
            for y in 0..m.len() {
                prop_assert_eq!(h.surjection[m.mul(x, y)], h.monoid.mul(h.surjection[x], h.surjection[y]));
            }
        }
    }

    #[test]
    fn localic_semirings_recover_their_points(n in 1usize..8, li in 0usize..25, use_lattice in any::<bool>()) {
        let distributive: Vec<&Suplattice> = lattices().iter().filter(|l| is_distributive(l)).collect();
        let r: FiniteCommSemiring = if use_lattice {
            lattice_semiring(distributive[li % distributive.len()]).unwrap()
        } else {
            catalog::zmod(n)
        };
        let d = to_localic(&r, None).unwrap();
        prop_assert!(d.is_discrete());
        prop_assert_eq!(d.point_semiring(), r);
    }
}
