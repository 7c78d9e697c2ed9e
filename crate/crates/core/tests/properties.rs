//! Property tests against independent brute-force oracles.

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rootfire::appendix::{dual_polytope_dominant_vertices, projection_dilation_max, sub_root_system};
use rootfire::ehrhart::{span_table, sym_formula_with, sym_orbit, tr_conjecture_rhs_with, zero_one_dominants};
use rootfire::exactla::{enumerate_indep_sets, quotient_key, rvol, span_key, to_rat};
use rootfire::firing::{fiber_table, simulated_polys, stabilize, stabilize_with, DeformParam, FiringMode};
use rootfire::json::{poly_from_json, poly_to_json, weight_from_json, weight_to_json};
use rootfire::permutohedra::type_a::partitions;
use rootfire::permutohedra::{discrete_permutohedron, dominant_downset, f_lambda, meet, root_order_leq};
use rootfire::{Limits, Rat, RootSystem, Weight};

const SMALL: [&str; 7] = ["A1", "A2", "B2", "G2", "A3", "B3", "C3"];

fn system() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(SMALL.to_vec()).prop_map(RootSystem::of)
}

fn system_and_weight(range: i64) -> impl Strategy<Value = (RootSystem, Weight)> {
    system().prop_flat_map(move |s| {
        let n = s.rank();
        (Just(s), prop::collection::vec(-range..=range, n).prop_map(Weight))
    })
}

fn good_params(sys: &RootSystem, max: i64) -> Vec<DeformParam> {
    let mut out = Vec::new();
    for kl in 0..=max {
        for ks in 0..=max {
            let k = DeformParam::new(kl, ks);
            if k.check(sys).is_ok() && (!sys.simply_laced || kl == ks) {
                out.push(k);
            }
        }
    }
    out
}

fn det(m: &[Vec<i64>]) -> i64 {
    // Laplace expansion; matrices here are at most 3x3.
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| to_rat(r)).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != Rat::from_integer(0)) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != Rat::from_integer(0) {
                let f = m[r][c] / m[rank][c];
                let pr = m[rank].clone();
                m[r].iter_mut().zip(&pr).for_each(|(x, y)| *x -= f * y);
            }
        }
        rank += 1;
    }
    rank
}

/// Lattice points of the half-open parallelepiped `sum [0, 1) v_i` for a
/// square nonsingular integer matrix, by Cramer's rule.
fn half_open_count(rows: &[Vec<i64>]) -> i64 {
    let d = rows.len();
    let dt = det(rows);
    let lo: Vec<i64> = (0..d).map(|c| rows.iter().map(|r| r[c].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..d).map(|c| rows.iter().map(|r| r[c].max(0)).sum()).collect();
    let mut x = lo.clone();
    let mut count = 0;
    loop {
        let inside = (0..d).all(|i| {
            let mut m = rows.to_vec();
            m[i] = x.clone();
            let num = det(&m);
            // 0 <= num / dt < 1
            if dt > 0 {
                0 <= num && num < dt
            } else {
                dt < num && num <= 0
            }
        });
        count += inside as i64;
        let mut c = 0;
        loop {
            if c == d {
                return count;
            }
            if x[c] < hi[c] {
                x[c] += 1;
                break;
            }
            x[c] = lo[c];
            c += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dominant_rep_is_orbit_invariant((s, lam) in system_and_weight(4), word in prop::collection::vec(0usize..3, 0..6)) {
        let (dom, w) = s.dominant_rep(&lam).unwrap();
        prop_assert!(dom.is_dominant());
        prop_assert_eq!(s.apply_word(&w, &dom), lam.clone());
        prop_assert!(root_order_leq(&s, &lam, &dom));
        let mut moved = lam.clone();
        for i in word.into_iter().filter(|&i| i < s.rank()) {
            moved = s.reflect(&moved, i);
        }
        prop_assert_eq!(s.dominant_rep(&moved).unwrap().0, dom);
    }

    #[test]
    fn eta_is_additive_and_injective((s, lam) in system_and_weight(3), a in 0i64..3, b in 0i64..3) {
        let ks = good_params(&s, 2);
        let ka = ks[a as usize % ks.len()];
        let kb = ks[b as usize % ks.len()];
        let lhs = s.eta(&s.eta(&lam, &ka).unwrap(), &kb).unwrap();
        prop_assert_eq!(lhs, s.eta(&lam, &ka.add(&kb)).unwrap());
        let n = s.rank();
        let mut seen = HashSet::new();
        for m in 0..3i64.pow(n as u32) {
            let nu = Weight((0..n).map(|i| (m / 3i64.pow(i as u32)) % 3 - 1).collect());
            prop_assert!(seen.insert(s.eta(&nu, &ka).unwrap()));
        }
    }

    #[test]
    fn span_key_ignores_order(s in system(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let np = s.num_positive();
        let ids: Vec<usize> = (0..rng.gen_range(0..=s.rank())).map(|_| rng.gen_range(0..np)).collect();
        let mut shuffled = ids.clone();
        shuffled.reverse();
        prop_assert_eq!(span_key(&s, &ids), span_key(&s, &shuffled));
        let key = span_key(&s, &ids);
        let mu: Vec<Rat> = (0..s.rank()).map(|_| Rat::from_integer(rng.gen_range(-3..=3))).collect();
        for &r in &ids {
            let shifted: Vec<Rat> = mu.iter().zip(&s.roots[r].root_coords).map(|(a, &b)| a + Rat::from_integer(b)).collect();
            prop_assert_eq!(quotient_key(&mu, &key), quotient_key(&shifted, &key));
        }
    }

    #[test]
    fn rvol_counts_half_open_parallelepiped(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)) {
        prop_assume!(det(&rows) != 0);
        prop_assert_eq!(rvol(&rows).unwrap(), half_open_count(&rows));
    }

    #[test]
    fn meet_is_compatible((s, lam) in system_and_weight(2), mu_raw in prop::collection::vec(0i64..=2, 3), k in 0i64..=1) {
        let n = s.rank();
        let lam = s.dominant_rep(&lam).unwrap().0;
        // Stay in lam's coset by moving down along simple roots.
        let mu = s.dominant_rep(&lam.sub(&s.weight_from_root_coords(&mu_raw[..n]))).unwrap().0;
        let m = meet(&s, &lam, &mu).unwrap();
        prop_assert!(m.is_dominant());
        let rho = s.rho_k(&DeformParam::uniform(k));
        let l = Limits::default();
        let a: BTreeSet<Weight> = discrete_permutohedron(&s, &lam.add(&rho), &l).unwrap().points.into_iter().collect();
        let b: BTreeSet<Weight> = discrete_permutohedron(&s, &mu.add(&rho), &l).unwrap().points.into_iter().collect();
        let c: BTreeSet<Weight> = discrete_permutohedron(&s, &m.add(&rho), &l).unwrap().points.into_iter().collect();
        prop_assert_eq!(a.intersection(&b).cloned().collect::<BTreeSet<_>>(), c);
    }

    #[test]
    fn downset_has_zero_or_one_minuscule((s, lam) in system_and_weight(2)) {
        let lam = s.dominant_rep(&lam).unwrap().0;
        let down = dominant_downset(&s, &lam, &Limits::default()).unwrap();
        let n = s.rank();
        if s.root_coords_int(&lam).is_some() {
            prop_assert!(down.members.contains(&Weight::zero(n)));
        } else {
            let minuscule: Vec<&Weight> = down
                .members
                .iter()
                .filter(|w| s.roots.iter().all(|r| s.pairing(w, r).abs() <= 1))
                .collect();
            prop_assert_eq!(minuscule.len(), 1);
        }
    }

    #[test]
    fn firing_is_confluent((s, mu) in system_and_weight(4), kidx in 0usize..8, tr in any::<bool>(), seed in any::<u64>()) {
        let ks = good_params(&s, 2);
        let k = ks[kidx % ks.len()];
        let mode = if tr { FiringMode::Truncated } else { FiringMode::Symmetric };
        let l = Limits::default();
        let canon = stabilize(&s, &mu, &k, mode, &l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let got = stabilize_with(&s, &mu, &k, mode, &l, |o| rng.gen_range(0..o.len())).unwrap();
            prop_assert_eq!(&got, &canon);
        }
    }

    #[test]
    fn json_round_trips((s, lam) in system_and_weight(9), terms in prop::collection::vec((0u32..4, 0u32..4, -50i64..50), 0..6)) {
        let _ = s;
        prop_assert_eq!(weight_from_json(&weight_to_json(&lam)).unwrap(), lam);
        let mut p = rootfire::ehrhart::EhrhartPoly::zero();
        for (a, b, c) in terms {
            p.add_term(a, b, c);
        }
        prop_assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }
}

#[test]
fn indep_set_counts_match_naive_enumeration() {
    let l = Limits::default();
    for t in ["A2", "B2", "G2", "A3", "B3"] {
        let s = RootSystem::of(t);
        let pos: Vec<Vec<i64>> = s.positive_roots().iter().map(|r| r.root_coords.clone()).collect();
        let mut naive = 0usize;
        for mask in 0u32..1 << pos.len() {
            let rows: Vec<Vec<i64>> = (0..pos.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pos[i].clone()).collect();
            if rows.len() <= s.rank() && rank_of(&rows) == rows.len() {
                naive += 1;
            }
        }
        assert_eq!(enumerate_indep_sets(&s, s.rank(), &l).unwrap().len(), naive, "{t}");
    }
}

#[test]
fn forest_totals() {
    // Labeled forests on n vertices.
    for (n, total) in [(1, 1), (2, 2), (3, 7), (4, 38), (5, 291), (6, 2932)] {
        let sum: i64 = partitions(n).iter().map(|p| f_lambda(p)).sum();
        assert_eq!(sum, total, "n = {n}");
    }
}

#[test]
fn symmetric_fibers_split_into_truncated_ones() {
    let l = Limits::default();
    for t in ["A2", "B2", "G2", "A3"] {
        let s = RootSystem::of(t);
        let table = span_table(&s, &l).unwrap();
        for top in zero_one_dominants(s.rank()) {
            let tr = simulated_polys(&s, &top, FiringMode::Truncated, &l).unwrap();
            for lam in s.full_orbit(&top) {
                let sym = sym_formula_with(&s, &table, &lam).unwrap();
                assert!(sym.has_nonnegative_coefficients(), "{t} {lam}");
                let rhs = tr_conjecture_rhs_with(&s, &table, &lam);
                assert_eq!(rhs.constant_term(), 1, "{t} {lam}");
                if s.forbidden_sym(&lam) {
                    continue;
                }
                let mut total = rootfire::ehrhart::EhrhartPoly::zero();
                for mu in sym_orbit(&s, &lam).unwrap() {
                    total.add_scaled(&tr.polys[&mu], 1);
                }
                assert_eq!(total, sym, "{t} {lam}");
            }
        }
    }
}

#[test]
fn every_point_stabilizes_to_a_label() {
    let l = Limits::default();
    for t in ["A2", "B2", "G2"] {
        let s = RootSystem::of(t);
        for k in good_params(&s, 2) {
            for mode in [FiringMode::Symmetric, FiringMode::Truncated] {
                let ft = fiber_table(&s, &Weight::rho(2), &k, mode, &l).unwrap();
                assert_eq!(ft.counts.values().sum::<u64>(), ft.sources, "{t} {k:?} {mode:?}");
            }
        }
    }
}

fn coroot_of(s: &RootSystem, coords: &[i64]) -> Vec<i64> {
    let id = s.root_id(coords).expect("root of the ambient system");
    s.roots[id].coroot_coords.clone()
}

#[test]
fn dual_vertices_lie_on_the_dual_polytope() {
    for label in rootfire::TypeLabel::all_up_to(6) {
        let s = RootSystem::build(label).unwrap();
        for i in 0..s.rank() {
            let gens: Vec<usize> = (0..s.rank()).filter(|&j| j != i).collect();
            for f in sub_root_system(&s, &gens).factors {
                let dv = dual_polytope_dominant_vertices(&s, &f);
                for (j, &c) in dv.coroot_coeffs.iter().enumerate() {
                    if c == 1 {
                        assert!(dv.nodes.contains(&j), "{label} node {i}: minuscule {j} missing");
                    }
                }
                for v in &dv.vertices {
                    let mut tight = false;
                    for b in &f.positive_roots {
                        let p = s.pairing_rc(v, &coroot_of(&s, b));
                        assert!(p <= Rat::from_integer(1) && -p <= Rat::from_integer(1), "{label}");
                        tight |= p == Rat::from_integer(1);
                    }
                    assert!(tight, "{label} node {i}: vertex touches no facet");
                }
            }
        }
    }
}

/// Solves a square rational system, or `None` if singular.
fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    let zero = Rat::from_integer(0);
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != zero)?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && a[r][c] != zero {
                let f = a[r][c] / a[c][c];
                let pr = a[c].clone();
                a[r].iter_mut().zip(&pr).for_each(|(x, y)| *x -= f * y);
                let bc = b[c];
                b[r] -= f * bc;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

#[test]
fn maxima_match_brute_force_vertices_in_rank_at_most_three() {
    for t in SMALL {
        let s = RootSystem::of(t);
        let n = s.rank();
        for i in 0..n {
            let basis: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let d = basis.len();
            let inside: Vec<Vec<i64>> = s
                .roots
                .iter()
                .filter(|r| r.root_coords[i] == 0)
                .map(|r| r.coroot_coords.clone())
                .collect();
            let outside: Vec<Vec<i64>> = s
                .roots
                .iter()
                .filter(|r| r.root_coords[i] != 0)
                .map(|r| r.coroot_coords.clone())
                .collect();
            // v = sum_{j in basis} c_j alpha_j, so <v, b^vee> = sum_j c_j <alpha_j, b^vee>.
            let row = |cv: &[i64]| -> Vec<Rat> {
                basis
                    .iter()
                    .map(|&j| {
                        let e: Vec<Rat> = (0..n).map(|m| Rat::from_integer((m == j) as i64)).collect();
                        s.pairing_rc(&e, cv)
                    })
                    .collect()
            };
            let mut verts: Vec<Vec<Rat>> = Vec::new();
            if d == 0 {
                verts.push(Vec::new());
            }
            let m = inside.len();
            let mut idx: Vec<usize> = (0..d).collect();
            while d > 0 {
                let a: Vec<Vec<Rat>> = idx.iter().map(|&r| row(&inside[r])).collect();
                if let Some(c) = solve(a, vec![Rat::from_integer(1); d]) {
                    let ok = inside.iter().all(|b| {
                        row(b).iter().zip(&c).map(|(x, y)| x * y).sum::<Rat>() <= Rat::from_integer(1)
                    });
                    if ok && !verts.contains(&c) {
                        verts.push(c);
                    }
                }
                // Next combination of d facets.
                let mut p = d;
                while p > 0 && idx[p - 1] == m - d + p - 1 {
                    p -= 1;
                }
                if p == 0 {
                    break;
                }
                idx[p - 1] += 1;
                for q in p..d {
                    idx[q] = idx[q - 1] + 1;
                }
            }
            let best = verts
                .iter()
                .flat_map(|c| {
                    outside
                        .iter()
                        .map(move |b| row(b).iter().zip(c).map(|(x, y)| x * y).sum::<Rat>())
                })
                .max()
                .unwrap();
            assert_eq!(projection_dilation_max(&s, i).max_value, best, "{t} node {i}");
        }
    }
}
