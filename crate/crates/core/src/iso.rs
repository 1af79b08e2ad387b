//! Isomorphism search for finite posets and lattices.

use alloc::vec;
use alloc::vec::Vec;

use crate::order::FinitePoset;
use crate::suplattice::{extend_from_irreducibles, Suplattice};

fn signature(p: &FinitePoset, keep: &[usize], x: usize) -> (usize, usize) {
    let down = keep.iter().filter(|&&y| p.leq(y, x)).count();
    let up = keep.iter().filter(|&&y| p.leq(x, y)).count();
    (down, up)
}

/// Backtracking for an order isomorphism between the sub-posets `ka ⊆ a`
/// and `kb ⊆ b`; `accept` sees every complete candidate.
fn search(
    a: &FinitePoset,
    ka: &[usize],
    b: &FinitePoset,
    kb: &[usize],
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if ka.len() != kb.len() {
        return None;
    }
    let sa: Vec<_> = ka.iter().map(|&x| signature(a, ka, x)).collect();
    let sb: Vec<_> = kb.iter().map(|&x| signature(b, kb, x)).collect();
    let (mut ssa, mut ssb) = (sa.clone(), sb.clone());
    ssa.sort_unstable();
    ssb.sort_unstable();
    if ssa != ssb {
        return None;
    }
    let mut image = vec![usize::MAX; ka.len()];
    let mut used = vec![false; kb.len()];
    fn rec(
        i: usize,
        a: &FinitePoset,
        ka: &[usize],
        b: &FinitePoset,
        kb: &[usize],
        sa: &[(usize, usize)],
        sb: &[(usize, usize)],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        accept: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if i == ka.len() {
            return accept(image);
        }
        for j in 0..kb.len() {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                a.leq(ka[k], ka[i]) == b.leq(kb[image[k]], kb[j]) && a.leq(ka[i], ka[k]) == b.leq(kb[j], kb[image[k]])
            });
            if !consistent {
                continue;
            }
            image[i] = j;
            used[j] = true;
            if rec(i + 1, a, ka, b, kb, sa, sb, image, used, accept) {
                return true;
            }
            used[j] = false;
        }
        image[i] = usize::MAX;
        false
    }
    let mut found = None;
    let mut wrapped = |img: &[usize]| {
        if accept(img) {
            found = Some(img.to_vec());
            true
        } else {
            false
        }
    };
    rec(0, a, ka, b, kb, &sa, &sb, &mut image, &mut used, &mut wrapped);
    found.map(|img| img.into_iter().map(|j| kb[j]).collect())
}

/// An order isomorphism `p → q` as a table, if one exists.
pub fn find_poset_iso(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    let kp: Vec<usize> = (0..p.len()).collect();
    let kq: Vec<usize> = (0..q.len()).collect();
    search(p, &kp, q, &kq, &mut |_| true)
}

/// A lattice isomorphism `a → b`, if one exists.
pub fn find_lattice_iso(a: &Suplattice, b: &Suplattice) -> Option<Vec<usize>> {
    find_lattice_iso_with(a, b, |_| true)
}

/// A lattice isomorphism `a → b` that additionally satisfies `extra`.
///
/// Any isomorphism restricts to one between the join-irreducibles, so the
/// search runs there and extends each candidate by joins.
pub fn find_lattice_iso_with(a: &Suplattice, b: &Suplattice, extra: impl Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let (ja, jb) = (a.join_irreducibles(), b.join_irreducibles());
    let mut full = Vec::new();
    let mut accept = |img_j: &[usize]| {
        let on_j: Vec<usize> = img_j.iter().map(|&j| jb[j]).collect();
        let f = extend_from_irreducibles(a, b, &on_j);
        if is_order_iso(a.poset(), b.poset(), &f) && extra(&f) {
            full = f;
            true
        } else {
            false
        }
    };
    search(a.poset(), ja, b.poset(), jb, &mut accept)?;
    Some(full)
}

pub fn is_order_iso(p: &FinitePoset, q: &FinitePoset, f: &[usize]) -> bool {
    if p.len() != q.len() || f.len() != p.len() {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &v in f {
        if v >= q.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..p.len()).all(|x| (0..p.len()).all(|y| p.leq(x, y) == q.leq(f[x], f[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn chain_is_not_m3() {
        assert!(find_lattice_iso(&catalog::chain(5), &catalog::m3()).is_none());
        assert!(find_lattice_iso(&catalog::m3(), &catalog::n5()).is_none());
        assert!(find_lattice_iso(&catalog::m3(), &catalog::m3()).is_some());
    }

    #[test]
    fn grid_and_powerset() {
        let g = catalog::grid(2, 2);
        let p = catalog::powerset(2);
        let f = find_lattice_iso(&g, &p).unwrap();
        assert!(is_order_iso(g.poset(), p.poset(), &f));
    }

    #[test]
    fn poset_iso_respects_order() {
        let a = FinitePoset::build(&["x", "y", "z"], &[("x", "y")]).unwrap();
        let b = FinitePoset::build(&["p", "q", "r"], &[("r", "q")]).unwrap();
        let f = find_poset_iso(&a, &b).unwrap();
        assert_eq!(f, [2, 1, 0]);
        let c = FinitePoset::build(&["p", "q", "r"], &[("p", "q"), ("q", "r")]).unwrap();
        assert!(find_poset_iso(&a, &c).is_none());
    }
}
