//! Discrete permutohedra, root order and quotient counts.
//!
//! `Pi^Q(lam)` is the set of weights in the convex hull of `W(lam)` that are
//! congruent to `lam` modulo the root lattice. It is enumerated as the union
//! of the Weyl orbits of the dominant weights below `lam`.

pub mod minkowski;
pub mod type_a;

use std::collections::HashSet;

use num_traits::Zero;

use crate::ehrhart::{span_table, EhrhartPoly, SpanTable};
use crate::exactla::{self, Rat, RatVec, SpanKey};
use crate::firing::DeformParam;
use crate::rootsys::{RootSystem, Weight};
use crate::{par, Error, Limits, Result};

pub use minkowski::{minkowski_count, minkowski_poly, quotient_counts, MultiPoly};
pub use type_a::{compositions_fitting, f_lambda, typea_count, typea_direct_count};

/// `mu <= lam` in root order.
pub fn root_order_leq(sys: &RootSystem, mu: &Weight, lam: &Weight) -> bool {
    match sys.root_coords_int(&lam.sub(mu)) {
        Some(c) => c.iter().all(|&x| x >= 0),
        None => false,
    }
}

/// Coordinatewise minimum in root coordinates.
pub fn meet(sys: &RootSystem, lam: &Weight, mu: &Weight) -> Result<Weight> {
    if sys.root_coords_int(&lam.sub(mu)).is_none() {
        return Err(Error::DifferentCoset(lam.clone(), mu.clone()));
    }
    let a = sys.root_coords_scaled(lam);
    let b = sys.root_coords_scaled(mu);
    let m: Vec<i64> = a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect();
    let f = sys.index_of_connection;
    let n = sys.rank();
    Ok(Weight(
        (0..n)
            .map(|j| {
                let s: i64 = (0..n).map(|i| m[i] * sys.cartan[i][j]).sum();
                debug_assert_eq!(s % f, 0);
                s / f
            })
            .collect(),
    ))
}

/// Dominant representative of a rational vector in root coordinates.
pub fn make_dominant_rc(sys: &RootSystem, v: &[Rat]) -> RatVec {
    let mut v = v.to_vec();
    loop {
        let neg = (0..sys.rank()).find(|&j| sys.pairing_rc_simple(&v, j) < Rat::zero());
        match neg {
            Some(j) => {
                let p = sys.pairing_rc_simple(&v, j);
                v[j] -= p;
            }
            None => return v,
        }
    }
}

/// Whether the rational point `v` (root coordinates) lies in the real
/// permutohedron of the dominant weight `lam_dom`.
pub fn contains(sys: &RootSystem, lam_dom: &Weight, v: &[Rat]) -> Result<bool> {
    if !lam_dom.is_dominant() {
        return Err(Error::NotDominant(lam_dom.clone()));
    }
    let vd = make_dominant_rc(sys, v);
    let top = sys.root_coords(lam_dom);
    Ok(top.iter().zip(&vd).all(|(a, b)| a >= b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantDownset {
    pub top: Weight,
    pub members: Vec<Weight>,
}

pub fn dominant_downset(sys: &RootSystem, lam_dom: &Weight, limits: &Limits) -> Result<DominantDownset> {
    if !lam_dom.is_dominant() {
        return Err(Error::NotDominant(lam_dom.clone()));
    }
    let f = sys.index_of_connection;
    let bounds: Vec<i64> = sys.root_coords_scaled(lam_dom).iter().map(|x| x.div_euclid(f)).collect();
    let volume: u128 = bounds.iter().map(|&b| b as u128 + 1).product();
    if volume > limits.box_points {
        return Err(Error::ResourceLimit {
            what: "dominant downset box",
            estimate: volume,
            limit: limits.box_points,
        });
    }
    let n = sys.rank();
    let mut members = Vec::new();
    let mut c = vec![0i64; n];
    let mut cur = lam_dom.0.clone();
    loop {
        if cur.iter().all(|&x| x >= 0) {
            members.push(Weight(cur.clone()));
        }
        // odometer over the box, keeping `cur = lam - sum c_i alpha_i`
        let mut i = 0;
        loop {
            if i == n {
                members.sort_unstable_by(|a, b| b.cmp(a));
                return Ok(DominantDownset {
                    top: lam_dom.clone(),
                    members,
                });
            }
            if c[i] < bounds[i] {
                c[i] += 1;
                cur.iter_mut().zip(&sys.cartan[i]).for_each(|(x, a)| *x -= a);
                break;
            }
            cur.iter_mut().zip(&sys.cartan[i]).for_each(|(x, a)| *x += c[i] * a);
            c[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscretePermutohedron {
    pub lam: Weight,
    /// Sorted.
    pub points: Vec<Weight>,
}

pub fn discrete_permutohedron(sys: &RootSystem, lam_dom: &Weight, limits: &Limits) -> Result<DiscretePermutohedron> {
    let down = dominant_downset(sys, lam_dom, limits)?;
    let orbits = par::map(&down.members, |nu| sys.full_orbit(nu));
    let mut points: Vec<Weight> = orbits.into_iter().flatten().collect();
    points.sort_unstable();
    Ok(DiscretePermutohedron {
        lam: lam_dom.clone(),
        points,
    })
}

pub fn quot_count_points(sys: &RootSystem, points: &[Weight], key: &SpanKey) -> usize {
    if key.rank() == sys.rank() {
        return usize::from(!points.is_empty());
    }
    if key.rank() == 0 {
        return points.len();
    }
    let keys: HashSet<RatVec> = points.iter().map(|p| key.quotient_key(&sys.root_coords(p))).collect();
    keys.len()
}

/// Number of cosets of `key` met by `Pi^Q(lam_dom)`.
pub fn quot_count(sys: &RootSystem, lam_dom: &Weight, key: &SpanKey, limits: &Limits) -> Result<usize> {
    let perm = discrete_permutohedron(sys, lam_dom, limits)?;
    Ok(quot_count_points(sys, &perm.points, key))
}

pub fn perm_count_poly_with(sys: &RootSystem, table: &SpanTable, lam_dom: &Weight, limits: &Limits) -> Result<EhrhartPoly> {
    let perm = discrete_permutohedron(sys, lam_dom, limits)?;
    let counts = par::map(&table.entries, |e| quot_count_points(sys, &perm.points, &e.key));
    let mut out = EhrhartPoly::zero();
    for (e, c) in table.entries.iter().zip(counts) {
        out.add_scaled(&e.poly, c as i64);
    }
    Ok(out)
}

/// Closed formula for `#Pi^Q(lam + rho_k)` as a polynomial in `k`.
pub fn perm_count_poly(sys: &RootSystem, lam_dom: &Weight, limits: &Limits) -> Result<EhrhartPoly> {
    let table = span_table(sys, limits)?;
    perm_count_poly_with(sys, &table, lam_dom, limits)
}

pub fn perm_count_formula(sys: &RootSystem, lam_dom: &Weight, k: &DeformParam, limits: &Limits) -> Result<i64> {
    Ok(perm_count_poly(sys, lam_dom, limits)?.eval_param(k))
}

/// `#Pi^Q(lam + rho_k)` by enumeration.
pub fn perm_count_direct(sys: &RootSystem, lam_dom: &Weight, k: &DeformParam, limits: &Limits) -> Result<usize> {
    let top = lam_dom.add(&sys.rho_k(k));
    Ok(discrete_permutohedron(sys, &top, limits)?.points.len())
}

/// The point of `mu + Span(key)` orthogonal to `Span(key)`.
pub fn inner_point(sys: &RootSystem, mu_rc: &[Rat], key: &SpanKey) -> RatVec {
    let r = key.rank();
    if r == 0 {
        return mu_rc.to_vec();
    }
    let gram: Vec<RatVec> = key
        .rows
        .iter()
        .map(|a| key.rows.iter().map(|b| sys.inner_rc(a, b)).collect())
        .collect();
    let inv = exactla::inverse(&gram).expect("Gram matrix of a basis is invertible");
    let rhs: Vec<Rat> = key.rows.iter().map(|b| sys.inner_rc(mu_rc, b)).collect();
    let mut out = mu_rc.to_vec();
    for a in 0..r {
        let x: Rat = (0..r).map(|b| inv[a][b] * rhs[b]).sum();
        out.iter_mut().zip(&key.rows[a]).for_each(|(o, v)| *o -= x * v);
    }
    out
}

/// For each sample weight `mu`, compares "the slice `mu + Span` meets the
/// real permutohedron" with "some point of `Pi^Q(lam)` has the same
/// quotient key". Returns true when they agree on every sample.
pub fn slice_integrality_check(
    sys: &RootSystem,
    lam_dom: &Weight,
    key: &SpanKey,
    samples: &[Weight],
    limits: &Limits,
) -> Result<bool> {
    let perm = discrete_permutohedron(sys, lam_dom, limits)?;
    let keys: HashSet<RatVec> = perm.points.iter().map(|p| key.quotient_key(&sys.root_coords(p))).collect();
    for mu in samples {
        let rc = sys.root_coords(mu);
        let real = contains(sys, lam_dom, &inner_point(sys, &rc, key))?;
        let lattice = keys.contains(&key.quotient_key(&rc));
        if real != lattice {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weights `lam - sum c_i alpha_i` covering a box one step wider than the
/// root-coordinate range of `Pi(lam)`.
pub fn slice_samples(sys: &RootSystem, lam_dom: &Weight) -> Vec<Weight> {
    let n = sys.rank();
    let f = sys.index_of_connection;
    let top = sys.root_coords_scaled(lam_dom);
    let (dual, _) = sys.dominant_rep(&lam_dom.scale(-1)).expect("finite Weyl group");
    let bottom = sys.root_coords_scaled(&dual);
    // Pi(lam) lies between -lam* and lam in root order.
    let lo = vec![-1i64; n];
    let hi: Vec<i64> = (0..n)
        .map(|i| (top[i] + bottom[i] + f - 1).div_euclid(f) + 1)
        .collect();
    let mut out = Vec::new();
    let mut c = lo.clone();
    loop {
        out.push(lam_dom.sub(&sys.weight_from_root_coords(&c)));
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if c[i] < hi[i] {
                c[i] += 1;
                break;
            }
            c[i] = lo[i];
            i += 1;
        }
    }
}

/// Dominant weights whose root coordinates are all at most `bound`.
pub fn dominant_weights_with_rc_at_most(sys: &RootSystem, bound: i64) -> Vec<Weight> {
    let n = sys.rank();
    let f = sys.index_of_connection;
    let mut out = Vec::new();
    let mut a = vec![0i64; n];
    loop {
        let rc = sys.root_coords_scaled(&Weight(a.clone()));
        let fits = rc.iter().all(|&x| x <= bound * f);
        if fits {
            out.push(Weight(a.clone()));
        }
        // Root coordinates grow with every fundamental-weight coordinate,
        // so a coordinate that overflows can be reset.
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            a[i] += 1;
            let rc = sys.root_coords_scaled(&Weight(a.clone()));
            if rc.iter().all(|&x| x <= bound * f) {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> Rat {
        Rat::from_integer(x)
    }

    #[test]
    fn root_order_examples() {
        let a2 = RootSystem::of("A2");
        assert!(root_order_leq(&a2, &Weight(vec![1, 0]), &Weight(vec![1, 0])));
        assert!(!root_order_leq(&a2, &Weight(vec![0, 0]), &Weight(vec![1, 0])));
        assert!(root_order_leq(&a2, &Weight(vec![0, 0]), &Weight(vec![1, 1])));
        for t in ["B3", "G2", "E6"] {
            let s = RootSystem::of(t);
            let rho = Weight::rho(s.rank());
            let lower = rho.sub(&Weight(s.roots[0].fw_coords.clone()));
            assert!(root_order_leq(&s, &lower, &rho));
        }
    }

    #[test]
    fn meet_examples() {
        let b2 = RootSystem::of("B2");
        let m = meet(&b2, &Weight(vec![2, 0]), &Weight(vec![0, 2])).unwrap();
        assert!(m.is_dominant());
        assert!(root_order_leq(&b2, &m, &Weight(vec![2, 0])));
        assert!(root_order_leq(&b2, &m, &Weight(vec![0, 2])));
        assert!(meet(&b2, &Weight(vec![0, 1]), &Weight(vec![0, 0])).is_err());
    }

    #[test]
    fn contains_examples() {
        let b2 = RootSystem::of("B2");
        let lam = Weight(vec![1, 1]);
        assert!(contains(&b2, &lam, &b2.root_coords(&lam)).unwrap());
        let scaled: RatVec = b2.root_coords(&lam).iter().map(|x| x * Rat::new(8, 7)).collect();
        assert!(!contains(&b2, &lam, &scaled).unwrap());
        assert!(contains(&b2, &lam, &[r(0), r(0)]).unwrap());
    }

    #[test]
    fn downsets_and_permutohedra() {
        let l = Limits::default();
        let a2 = RootSystem::of("A2");
        assert_eq!(
            dominant_downset(&a2, &Weight(vec![1, 1]), &l).unwrap().members,
            vec![Weight(vec![1, 1]), Weight(vec![0, 0])]
        );
        assert_eq!(discrete_permutohedron(&a2, &Weight(vec![1, 1]), &l).unwrap().points.len(), 7);
        let a1 = RootSystem::of("A1");
        assert_eq!(
            discrete_permutohedron(&a1, &Weight(vec![2]), &l).unwrap().points,
            vec![Weight(vec![-2]), Weight(vec![0]), Weight(vec![2])]
        );
        let tight = Limits {
            box_points: 3,
            ..l
        };
        assert!(dominant_downset(&a2, &Weight(vec![3, 3]), &tight).is_err());
    }

    #[test]
    fn perm_counts_small() {
        let l = Limits::default();
        let a1 = RootSystem::of("A1");
        let p = perm_count_poly(&a1, &Weight(vec![0]), &l).unwrap();
        assert_eq!(p.diagonal(), vec![1, 1]);
        assert_eq!(perm_count_direct(&a1, &Weight(vec![0]), &DeformParam::uniform(1), &l).unwrap(), 2);
    }

    #[test]
    fn inner_point_example() {
        // B2, lam = omega1 + omega2, mu = -omega1 + omega2, X = {alpha1}
        let b2 = RootSystem::of("B2");
        let key = exactla::span_key(&b2, &[0]);
        let mu0 = inner_point(&b2, &b2.root_coords(&Weight(vec![-1, 1])), &key);
        assert_eq!(mu0, vec![r(0), r(0)]);
        assert!(contains(&b2, &Weight(vec![1, 1]), &mu0).unwrap());
    }
}
