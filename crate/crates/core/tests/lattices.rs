use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use sp4_core::exact::hnf::column_hnf;
use sp4_core::exact::rat::int;
use sp4_core::exact::{Rat, RatMatrix};
use sp4_core::lattices::{
    accepted_residues, enumerate_lattices, enumerate_lattices_in, invariants_rst, mirror_consistent, same_lattice,
    scaled_basis, standard_lattice, strata, LatticeClass, ResidueBox, Rst,
};
use sp4_core::monodromy::{enumerate_real_classes, preserves_form, MonodromyClass};

struct Enumerated {
    class: Arc<MonodromyClass>,
    lattices: Vec<LatticeClass>,
}

fn all() -> &'static [Enumerated] {
    static CELL: OnceLock<Vec<Enumerated>> = OnceLock::new();
    CELL.get_or_init(|| {
        enumerate_real_classes()
            .unwrap()
            .into_iter()
            .map(|c| {
                let class = Arc::new(c);
                let lattices = enumerate_lattices(&class).unwrap();
                Enumerated { class, lattices }
            })
            .collect()
    })
}

fn find(m: i64, a: i64) -> &'static Enumerated {
    all().iter().find(|e| e.class.m() == m && e.class.a() == a).unwrap()
}

#[test]
fn every_lattice_is_invariant_and_unimodular() {
    for e in all() {
        for l in &e.lattices {
            assert!(l.t0_adapted.is_integral() && l.t1_adapted.is_integral());
            assert!(preserves_form(&l.t0_adapted, &l.gram_adapted).unwrap());
            assert!(preserves_form(&l.t1_adapted, &l.gram_adapted).unwrap());
            assert!(l.gram_adapted.det().unwrap().is_one());
            let g = &l.gram_adapted;
            assert_eq!((g[(0, 3)].clone(), g[(1, 2)].clone()), (int(-1), int(1)));
            for i in 0..4 {
                for j in 0..4 {
                    if i + j >= 4 {
                        assert!(g[(i, j)].is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn relation_and_recomputed_invariants() {
    for e in all() {
        for l in &e.lattices {
            let rst = invariants_rst(l).unwrap();
            assert_eq!(rst, l.rst);
            assert_eq!(rst.product() as i64, e.class.m());
            assert_eq!(e.class.a() % rst.t as i64, 0);
        }
    }
}

#[test]
fn standard_lattice_always_present() {
    for e in all() {
        let std = standard_lattice(&e.class).unwrap();
        assert!(e.lattices.iter().any(|l| l.canonical == std.canonical && l.rst == Rst::new(1, e.class.m() as u64, 1)));
    }
}

#[test]
fn output_is_sorted_and_distinct() {
    for e in all() {
        for w in e.lattices.windows(2) {
            let key = |l: &LatticeClass| (l.rst.t, l.rst.r, l.rst.s, l.canonical.entries().to_vec());
            assert!(key(&w[0]) < key(&w[1]));
        }
    }
}

#[test]
fn dedup_is_sound() {
    for e in all() {
        // distinct canonical forms are distinct lattices
        for (i, x) in e.lattices.iter().enumerate() {
            for y in &e.lattices[i + 1..] {
                if x.rst.t == y.rst.t {
                    assert!(!same_lattice(&x.scaled_basis(), &y.scaled_basis()).unwrap());
                }
            }
        }
    }
    // equal canonical forms are the same lattice, over every accepted residue of a few strata
    for (m, a) in [(8, 6), (9, 6), (4, 4)] {
        let e = find(m, a);
        for rst in strata(m, a) {
            let accepted = accepted_residues(&e.class, rst, ResidueBox::Scaled(2)).unwrap();
            let bases: Vec<RatMatrix> = accepted.iter().map(|p| scaled_basis(rst, p)).collect();
            let canon: Vec<RatMatrix> = bases.iter().map(|b| column_hnf(b).unwrap()).collect();
            for i in (0..bases.len()).step_by(7) {
                for j in (i + 1..bases.len()).step_by(5) {
                    assert_eq!(canon[i] == canon[j], same_lattice(&bases[i], &bases[j]).unwrap());
                }
            }
        }
    }
}

#[test]
fn mirror_consistent_determined_by_t() {
    let mut total = 0;
    for e in all() {
        let mut ts = Vec::new();
        for l in &e.lattices {
            if mirror_consistent(l).unwrap() {
                ts.push(l.rst.t);
            }
        }
        let distinct: BTreeSet<u64> = ts.iter().copied().collect();
        assert_eq!(distinct.len(), ts.len(), "({}, {})", e.class.m(), e.class.a());
        total += ts.len();
    }
    assert_eq!(total, 23);
}

#[test]
fn mirror_consistent_examples() {
    let t_of = |m, a| -> Vec<u64> {
        find(m, a).lattices.iter().filter(|l| mirror_consistent(l).unwrap()).map(|l| l.rst.t).collect()
    };
    assert_eq!(t_of(16, 8), vec![1, 2, 4, 8]);
    assert_eq!(t_of(9, 6), vec![1, 3]);
    assert_eq!(t_of(5, 5), vec![1, 5]);
}

#[test]
fn lcm_cube_agrees_on_small_strata() {
    for e in all().iter().filter(|e| e.class.m() <= 5) {
        let cube = enumerate_lattices_in(&e.class, ResidueBox::LcmCube).unwrap();
        let canon = |ls: &[LatticeClass]| ls.iter().map(|l| (l.rst.t, l.canonical.clone())).collect::<Vec<_>>();
        assert_eq!(canon(&cube), canon(&e.lattices), "({}, {})", e.class.m(), e.class.a());
    }
}

#[test]
fn doubling_the_box_changes_nothing() {
    for e in all() {
        let doubled = enumerate_lattices_in(&e.class, ResidueBox::Scaled(2)).unwrap();
        assert_eq!(doubled.len(), e.lattices.len(), "({}, {})", e.class.m(), e.class.a());
        for (x, y) in doubled.iter().zip(&e.lattices) {
            assert_eq!(x.canonical, y.canonical);
        }
    }
}

/// Brute force over all sublattices `L'` of `Z^4` with `det L' = t^2 k^4`, taken as
/// `L = L' / (k sqrt t)`: keeps those invariant under `N0`, `N1` with `<L', L'> ⊂ t k^2 Z`.
/// Returns each `L'` as its lower-triangular column Hermite form, row-major.
fn oracle(m: i64, a: i64, t: i64, k: i64) -> BTreeSet<Vec<i64>> {
    let g = [[0, -a, -1, -1], [a, 0, 1, 0], [1, -1, 0, 0], [1, 0, 0, 0]];
    let pair = |x: &[i64; 4], y: &[i64; 4]| -> i64 {
        (0..4).map(|p| (0..4).map(|q| x[p] * g[p][q] * y[q]).sum::<i64>()).sum()
    };
    let n0 = |x: &[i64; 4]| [0, x[0], m * x[1], x[2]];
    let n1 = |x: &[i64; 4]| [-(a * x[1] + x[2] + x[3]), 0, 0, 0];
    let contains = |cols: &[[i64; 4]], from: usize, mut y: [i64; 4]| -> bool {
        if y[..from].iter().any(|&v| v != 0) {
            return false;
        }
        for (j, c) in cols.iter().enumerate().skip(from) {
            if y[j] % c[j] != 0 {
                return false;
            }
            let q = y[j] / c[j];
            for i in j..4 {
                y[i] -= q * c[i];
            }
        }
        true
    };
    let modulus = t * k * k;
    let det = t * t * k.pow(4);
    let divisors = |n: i64| (1..=n).filter(move |d| n % d == 0);
    let mut out = BTreeSet::new();
    for d1 in divisors(det) {
        for d2 in divisors(det / d1) {
            for d3 in divisors(det / (d1 * d2)) {
                let d4 = det / (d1 * d2 * d3);
                if d3 % d4 != 0 {
                    continue;
                }
                for x43 in 0..d4 {
                    let c3 = [0, 0, d3, x43];
                    let c4 = [0, 0, 0, d4];
                    for x32 in 0..d3 {
                        for x42 in 0..d4 {
                            let c2 = [0, d2, x32, x42];
                            let tail = [c2, c3, c4];
                            let mut cols = [[0; 4]; 4];
                            cols[1..].copy_from_slice(&tail);
                            if !contains(&cols, 2, n0(&c2)) || !contains(&cols, 3, n0(&c3)) {
                                continue;
                            }
                            if pair(&c2, &c3) % modulus != 0 || pair(&c2, &c4) % modulus != 0 {
                                continue;
                            }
                            for x21 in 0..d2 {
                                for x31 in 0..d3 {
                                    for x41 in 0..d4 {
                                        let c1 = [d1, x21, x31, x41];
                                        cols[0] = c1;
                                        if !contains(&cols, 1, n0(&c1)) {
                                            continue;
                                        }
                                        if (1..4).any(|j| pair(&c1, &cols[j]) % modulus != 0) {
                                            continue;
                                        }
                                        if cols.iter().any(|c| !contains(&cols, 0, n1(c))) {
                                            continue;
                                        }
                                        out.insert((0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| cols[j][i]).collect());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn rational_sqrt(x: &Rat) -> Option<Rat> {
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(BigRational::new(root(x.numer())?, root(x.denom())?))
}

/// Enumerated lattices of the class that lie in `(1/(k sqrt t)) Z^4`, in the oracle's coordinates.
fn enumerated_in_window(e: &Enumerated, t: i64, k: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for l in &e.lattices {
        let Some(q) = rational_sqrt(&BigRational::new(BigInt::from(t), BigInt::from(l.rst.t))) else { continue };
        let scaled = l.scaled_basis().scale(&(q * int(k)));
        if !scaled.is_integral() {
            continue;
        }
        let h = column_hnf(&scaled).unwrap();
        out.insert(h.entries().iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect());
    }
    out
}

#[test]
fn brute_force_oracle_agrees() {
    for (m, a, t, k) in [(4, 5, 1, 2), (8, 6, 1, 2), (2, 4, 2, 2), (5, 5, 1, 1), (12, 7, 1, 2), (4, 4, 1, 2)] {
        let e = find(m, a);
        let expected = oracle(m, a, t, k);
        let got = enumerated_in_window(e, t, k);
        assert_eq!(got, expected, "(m, a) = ({m}, {a}), t = {t}, k = {k}");
    }
}

#[test]
fn oracle_row_totals_for_t_one_classes() {
    // every lattice of these classes has t = 1 and denominators dividing r <= 2
    assert_eq!(oracle(4, 5, 1, 2).len(), find(4, 5).lattices.len());
    assert_eq!(oracle(12, 7, 1, 2).len(), find(12, 7).lattices.len());
    assert!(find(4, 5).lattices.iter().all(|l| l.rst.t == 1 && l.rst.r <= 2));
    assert!(find(12, 7).lattices.iter().all(|l| l.rst.t == 1 && l.rst.r <= 2));
}
