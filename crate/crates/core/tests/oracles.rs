//! Brute-force oracles for values the library computes by cleverer means.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::Ratio;

use enriques_lattice::class_group::local_class_group;
use enriques_lattice::e10::build_e10;
use enriques_lattice::f2::F2QuadSpace;
use enriques_lattice::roots::{covering_involution_action, positive_roots, AdeType, RootDatum};
use enriques_lattice::Lattice;

fn t(s: &str) -> AdeType {
    s.parse().unwrap()
}

fn square(l: &Lattice, x: &[i64]) -> i64 {
    let g = l.gram();
    let n = x.len();
    let mut s = 0;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            s += x[i] * g[(i, j)] * x[j];
        }
    }
    s
}

/// Every vector in `[lo, hi]^n` with square -2.
fn box_roots(l: &Lattice, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let n = l.rank();
    let mut out = Vec::new();
    let mut x = vec![lo; n];
    loop {
        if square(l, &x) == -2 {
            out.push(x.clone());
        }
        let mut i = 0;
        while i < n && x[i] == hi {
            x[i] = lo;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
    }
    out.sort();
    out
}

#[test]
fn positive_roots_match_box_search() {
    // Highest-root coefficients never exceed 6.
    for name in ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6", "E7", "E8"] {
        let ty = t(name);
        let closure = positive_roots(ty);
        assert_eq!(closure, box_roots(&ty.lattice(), 0, 6), "{name}");
    }
    assert_eq!(positive_roots(t("E8")).len(), 120);
}

#[test]
fn all_roots_are_positive_or_negative() {
    for name in ["A2", "A3", "D4"] {
        let ty = t(name);
        let all = box_roots(&ty.lattice(), -3, 3);
        assert_eq!(all.len(), 2 * positive_roots(ty).len(), "{name}");
        assert!(all.iter().all(|r| r.iter().all(|&c| c >= 0) || r.iter().all(|&c| c <= 0)));
    }
}

#[test]
fn highest_root_is_the_root_of_maximal_height() {
    for ty in AdeType::all_up_to(8) {
        let roots = positive_roots(ty);
        let top = roots.iter().max_by_key(|r| r.iter().sum::<i64>()).unwrap();
        assert_eq!(*top, ty.tabulated_highest_root(), "{ty}");
    }
}

fn inverse_rational(l: &Lattice) -> Vec<Vec<Ratio<i64>>> {
    let n = l.rank();
    let mut a: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| if j < n { Ratio::from(l.gram()[(i, j)]) } else { Ratio::from(i64::from(j - n == i)) })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Ratio::from(0)).unwrap();
        a.swap(c, p);
        let piv = a[c][c];
        for v in a[c].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                for k in 0..2 * n {
                    let d = f * a[c][k];
                    a[r][k] -= d;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// `|E^∨/E|` by listing `G⁻¹ y mod Z^n` for `y` in a box of side `|det|`.
fn brute_discriminant_order(l: &Lattice) -> usize {
    let n = l.rank();
    let inv = inverse_rational(l);
    let d = l.invariants().unwrap().determinant.unsigned_abs() as i64;
    let mut classes = BTreeSet::new();
    let mut y = vec![0i64; n];
    loop {
        let x: Vec<Ratio<i64>> = (0..n)
            .map(|i| {
                let v: Ratio<i64> = (0..n).map(|j| inv[i][j] * y[j]).sum();
                v - v.floor()
            })
            .collect();
        classes.insert(x);
        let mut i = 0;
        while i < n && y[i] == d - 1 {
            y[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        y[i] += 1;
    }
    classes.len()
}

#[test]
fn class_group_orders_by_enumeration() {
    for name in ["A1", "A2", "A3", "A4", "D4", "D5", "E6", "E7", "E8"] {
        let ty = t(name);
        let g = local_class_group(ty).unwrap().group;
        assert_eq!(g.order as usize, brute_discriminant_order(&ty.lattice()), "{name}");
    }
}

#[test]
fn isotropic_count_from_integer_form() {
    let e10 = build_e10().unwrap();
    let mut count = 0;
    for v in 1u32..1024 {
        let x: Vec<i64> = (0..10).map(|i| i64::from((v >> i) & 1)).collect();
        if (square(e10.lattice(), &x) / 2).rem_euclid(2) == 0 {
            count += 1;
        }
    }
    assert_eq!(count, 527);
    assert_eq!(F2QuadSpace::from_e10(&e10).count_isotropic().nonzero_isotropic, count);
}

/// The longest Weyl element, found by enumerating `W` as a matrix group.
/// Returns the permutation `π` with `-w_0(e_i) = e_{π(i)}`.
fn minus_longest_element(ty: AdeType) -> Vec<usize> {
    let rd = RootDatum::new(ty).unwrap();
    let n = ty.rank();
    let gens: Vec<_> = (0..n).map(|i| rd.fundamental_reflection(i)).collect();
    let id = enriques_lattice::Isometry::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let images: Vec<Vec<i64>> = (0..n).map(|i| w.matrix.column(i)).collect();
        // w_0 sends every fundamental root to a negative root.
        if images.iter().all(|c| c.iter().all(|&x| x <= 0)) {
            return images
                .iter()
                .map(|c| (0..n).find(|&j| c.iter().enumerate().all(|(k, &x)| x == -i64::from(k == j))).unwrap())
                .collect();
        }
        for s in &gens {
            let next = w.compose(s).unwrap();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    panic!("no longest element for {ty}");
}

#[test]
fn covering_involution_matches_longest_element() {
    for name in ["A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6"] {
        let ty = t(name);
        assert_eq!(covering_involution_action(ty).unwrap().perm, minus_longest_element(ty), "{name}");
    }
}
