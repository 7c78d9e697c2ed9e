//! Dual root polytopes of parabolic subsystems and the maximum pairing of
//! their vertices with the remaining coroots.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::exactla::{self, to_rat, Rat, RatVec};
use crate::rootsys::{RootSystem, TypeLabel};

/// One irreducible factor of a sub-root system. Vectors are in the
/// ambient simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub simple_roots: Vec<Vec<i64>>,
    /// `cartan[j][k] = <beta_j, beta_k^vee>`.
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSystem {
    /// Ambient ids of the positive roots in the span.
    pub positive_root_ids: Vec<usize>,
    pub factors: Vec<Factor>,
}

fn norm(sys: &RootSystem, v: &[i64]) -> Rat {
    let r = to_rat(v);
    sys.inner_rc(&r, &r)
}

fn inner(sys: &RootSystem, u: &[i64], v: &[i64]) -> Rat {
    sys.inner_rc(&to_rat(u), &to_rat(v))
}

/// The roots of `sys` in the span of the given roots, split into
/// irreducible factors.
pub fn sub_root_system(sys: &RootSystem, generators: &[usize]) -> SubSystem {
    let key = exactla::span_key(sys, generators);
    let pos = exactla::positive_roots_in_span(sys, &key);
    let coords: Vec<&Vec<i64>> = pos.iter().map(|&i| &sys.roots[i].root_coords).collect();
    let simple: Vec<Vec<i64>> = coords
        .iter()
        .filter(|b| {
            !coords.iter().any(|x| {
                let rest: Vec<i64> = b.iter().zip(x.iter()).map(|(p, q)| p - q).collect();
                coords.iter().any(|y| **y == rest)
            })
        })
        .map(|b| (*b).clone())
        .collect();

    let m = simple.len();
    let mut comp = vec![usize::MAX; m];
    let mut factors = Vec::new();
    for start in 0..m {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = factors.len();
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        comp[start] = id;
        while let Some(a) = queue.pop_front() {
            members.push(a);
            for b in 0..m {
                if comp[b] == usize::MAX && !inner(sys, &simple[a], &simple[b]).is_zero() {
                    comp[b] = id;
                    queue.push_back(b);
                }
            }
        }
        members.sort_unstable();
        let betas: Vec<Vec<i64>> = members.iter().map(|&j| simple[j].clone()).collect();
        let cartan = betas
            .iter()
            .map(|bj| {
                betas
                    .iter()
                    .map(|bk| (inner(sys, bj, bk) * 2 / norm(sys, bk)).to_integer())
                    .collect()
            })
            .collect();
        let fkey = exactla::SpanKey::from_vectors(sys.rank(), &betas.iter().map(|b| to_rat(b)).collect::<Vec<_>>());
        let positive_roots = coords
            .iter()
            .filter(|c| fkey.contains(&to_rat(c)))
            .map(|c| (*c).clone())
            .collect();
        factors.push(Factor {
            simple_roots: betas,
            cartan,
            positive_roots,
        });
    }
    SubSystem {
        positive_root_ids: pos,
        factors,
    }
}

/// Coordinates of `v` (ambient root coordinates, inside the factor's span)
/// in the factor's simple roots.
fn factor_coords(sys: &RootSystem, f: &Factor, v: &[i64]) -> Vec<Rat> {
    let gram: Vec<RatVec> = f
        .simple_roots
        .iter()
        .map(|a| f.simple_roots.iter().map(|b| inner(sys, a, b)).collect())
        .collect();
    let inv = exactla::inverse(&gram).expect("simple roots are independent");
    let rhs: Vec<Rat> = f.simple_roots.iter().map(|b| inner(sys, v, b)).collect();
    (0..rhs.len())
        .map(|a| (0..rhs.len()).map(|b| inv[a][b] * rhs[b]).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVertexSet {
    /// Coefficients of the highest coroot in the simple coroots.
    pub coroot_coeffs: Vec<i64>,
    /// Coefficients of the highest root in the simple roots.
    pub root_coeffs: Vec<i64>,
    /// Factor nodes whose removal keeps the extended dual diagram connected.
    pub nodes: Vec<usize>,
    /// `omega'_j / a_j` for each qualifying node, in ambient root coordinates.
    pub vertices: Vec<RatVec>,
}

fn highest(sys: &RootSystem, f: &Factor, dual: bool) -> (Vec<i64>, Vec<i64>) {
    let m = f.simple_roots.len();
    let mut best: Option<(Rat, Vec<i64>, Vec<i64>)> = None;
    for g in &f.positive_roots {
        let c = factor_coords(sys, f, g);
        let coeffs: Vec<Rat> = if dual {
            let ng = norm(sys, g);
            (0..m).map(|j| c[j] * norm(sys, &f.simple_roots[j]) / ng).collect()
        } else {
            c
        };
        let h: Rat = coeffs.iter().sum();
        if best.as_ref().is_none_or(|(bh, _, _)| h > *bh) {
            best = Some((h, coeffs.iter().map(|x| x.to_integer()).collect(), g.clone()));
        }
    }
    let (_, coeffs, root) = best.expect("factor has roots");
    (coeffs, root)
}

fn connected(adj: &[Vec<bool>], removed: usize) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|&v| v != removed) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(a) = queue.pop_front() {
        for b in 0..n {
            if b != removed && !seen[b] && adj[a][b] {
                seen[b] = true;
                count += 1;
                queue.push_back(b);
            }
        }
    }
    count == n - 1
}

pub fn dual_polytope_dominant_vertices(sys: &RootSystem, f: &Factor) -> DualVertexSet {
    let m = f.simple_roots.len();
    let (a, theta_hat) = highest(sys, f, true);
    let (root_coeffs, _) = highest(sys, f, false);
    let mut adj = vec![vec![false; m + 1]; m + 1];
    for j in 0..m {
        for k in 0..m {
            adj[j][k] = j != k && f.cartan[j][k] != 0;
        }
        let t = !inner(sys, &f.simple_roots[j], &theta_hat).is_zero();
        adj[j][m] = t;
        adj[m][j] = t;
    }
    let cm: Vec<RatVec> = f.cartan.iter().map(|r| to_rat(r)).collect();
    let cinv = exactla::inverse(&cm).expect("Cartan matrix is invertible");
    let mut nodes = Vec::new();
    let mut vertices = Vec::new();
    for j in 0..m {
        if !connected(&adj, j) {
            continue;
        }
        let mut v = vec![Rat::zero(); sys.rank()];
        for k in 0..m {
            let c = cinv[j][k] / a[j];
            v.iter_mut().zip(&f.simple_roots[k]).for_each(|(x, b)| *x += c * b);
        }
        nodes.push(j);
        vertices.push(v);
    }
    DualVertexSet {
        coroot_coeffs: a,
        root_coeffs,
        nodes,
        vertices,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxReport {
    pub label: TypeLabel,
    /// Removed simple root (0-based).
    pub node: usize,
    pub max_value: Rat,
    pub argmax_vertex: RatVec,
    pub argmax_root: usize,
}

/// Dominant vertices of the dual polytope of the parabolic subsystem
/// without simple root `i`: one vertex from each factor, summed.
pub fn parabolic_dominant_vertices(sys: &RootSystem, i: usize) -> Vec<RatVec> {
    let gens: Vec<usize> = (0..sys.rank()).filter(|&j| j != i).collect();
    let sub = sub_root_system(sys, &gens);
    let mut acc: Vec<RatVec> = vec![vec![Rat::zero(); sys.rank()]];
    for f in &sub.factors {
        let vs = dual_polytope_dominant_vertices(sys, f).vertices;
        acc = acc
            .iter()
            .flat_map(|a| vs.iter().map(move |v| a.iter().zip(v).map(|(x, y)| x + y).collect()))
            .collect();
    }
    acc
}

/// Ids of the roots outside the parabolic subsystem without node `i`.
pub fn complement_roots(sys: &RootSystem, i: usize) -> Vec<usize> {
    (0..sys.roots.len())
        .filter(|&r| sys.roots[r].root_coords[i] != 0)
        .collect()
}

pub fn projection_dilation_max(sys: &RootSystem, i: usize) -> MaxReport {
    let verts = parabolic_dominant_vertices(sys, i);
    let mut best: Option<(Rat, RatVec, usize)> = None;
    for v in &verts {
        for r in complement_roots(sys, i) {
            let p = sys.pairing_rc(v, &sys.roots[r].coroot_coords);
            if best.as_ref().is_none_or(|(b, _, _)| p > *b) {
                best = Some((p, v.clone(), r));
            }
        }
    }
    let (max_value, argmax_vertex, argmax_root) = best.unwrap_or((Rat::zero(), vec![Rat::zero(); sys.rank()], 0));
    MaxReport {
        label: sys.label,
        node: i,
        max_value,
        argmax_vertex,
        argmax_root,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OshimaReport {
    pub node: usize,
    /// Dominant coroots outside the subsystem (ambient root ids).
    pub representatives: Vec<usize>,
    /// At most one representative per (coefficient at node, length).
    pub unique: bool,
}

pub fn oshima_check(sys: &RootSystem, i: usize) -> OshimaReport {
    let reps: Vec<usize> = complement_roots(sys, i)
        .into_iter()
        .filter(|&r| {
            (0..sys.rank())
                .filter(|&j| j != i)
                .all(|j| sys.pairing(&sys.weight_from_root_coords(&sys.roots[j].root_coords), &sys.roots[r]) >= 0)
        })
        .collect();
    let mut keys: Vec<(i64, bool)> = reps
        .iter()
        .map(|&r| (sys.roots[r].coroot_coords[i], sys.roots[r].is_long))
        .collect();
    keys.sort_unstable();
    let unique = keys.windows(2).all(|w| w[0] != w[1]);
    OshimaReport {
        node: i,
        representatives: reps,
        unique,
    }
}

/// `(kappa, rank * (2 - kappa))` with `kappa` the largest maximum.
pub fn kappa_statistics(sys: &RootSystem) -> (Rat, Rat) {
    let kappa = (0..sys.rank())
        .map(|i| projection_dilation_max(sys, i).max_value)
        .max()
        .unwrap_or_else(Rat::zero);
    let stat = (Rat::from_integer(2) - kappa) * sys.rank() as i64;
    (kappa, stat)
}
