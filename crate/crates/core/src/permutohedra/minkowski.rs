//! Lattice points of `P + k_1[0,v_1] + ... + k_m[0,v_m]` for a lattice
//! polytope `P` given by vertices.

use std::collections::{BTreeMap, HashSet};

use crate::exactla::{self, fourier_motzkin_project, Constraint, LinearSystem, Rat, SpanKey};
use crate::{Error, Limits, Result};

/// Multilinear polynomial in `k_1..k_m`; keys are sorted variable subsets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<usize>, i64>,
}

impl MultiPoly {
    pub fn eval(&self, k: &[i64]) -> i64 {
        self.terms
            .iter()
            .map(|(vars, c)| c * vars.iter().map(|&v| k[v]).product::<i64>())
            .sum()
    }

    /// Coefficients of the polynomial in one variable `k` obtained by
    /// setting every `k_i = k`, lowest degree first.
    pub fn diagonal(&self) -> Vec<i64> {
        let mut out = vec![0; self.nvars + 1];
        for (vars, c) in &self.terms {
            out[vars.len()] += c;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }
}

const MAX_DIM: usize = 4;

fn check_input(vertices: &[Vec<i64>], gens: &[Vec<i64>]) -> Result<usize> {
    let d = vertices
        .first()
        .ok_or_else(|| Error::DimensionError("polytope has no vertices".into()))?
        .len();
    if vertices.iter().chain(gens).any(|v| v.len() != d) {
        return Err(Error::DimensionError("vectors of mixed length".into()));
    }
    if d > MAX_DIM {
        return Err(Error::ResourceLimit {
            what: "ambient dimension",
            estimate: d as u128,
            limit: MAX_DIM as u128,
        });
    }
    Ok(d)
}

fn r(x: i64) -> Rat {
    Rat::from_integer(x)
}

/// Constraints in `y` describing `{ sum t_j p_j + sum s_i g_i : t in simplex,
/// 0 <= s_i <= k_i }`, where `p_j`, `g_i` are given in `y`-coordinates.
fn hull_plus_boxes(points: &[Vec<i64>], gens: &[Vec<i64>], kvec: &[i64]) -> Result<LinearSystem> {
    let d = points[0].len();
    let m = points.len();
    let g = gens.len();
    let dim = d + m + g;
    let mut cs = Vec::new();
    for c in 0..d {
        let mut a = vec![r(0); dim];
        a[c] = r(1);
        for (j, p) in points.iter().enumerate() {
            a[d + j] = r(-p[c]);
        }
        for (i, v) in gens.iter().enumerate() {
            a[d + m + i] = r(-v[c]);
        }
        cs.push(Constraint::eq(a, r(0)));
    }
    let mut sum = vec![r(0); dim];
    for j in 0..m {
        sum[d + j] = r(1);
        let mut a = vec![r(0); dim];
        a[d + j] = r(-1);
        cs.push(Constraint::le(a, r(0)));
    }
    cs.push(Constraint::eq(sum, r(1)));
    for i in 0..g {
        let mut lo = vec![r(0); dim];
        lo[d + m + i] = r(-1);
        cs.push(Constraint::le(lo, r(0)));
        let mut hi = vec![r(0); dim];
        hi[d + m + i] = r(1);
        cs.push(Constraint::le(hi, r(kvec[i])));
    }
    let drop: Vec<usize> = (d..dim).collect();
    fourier_motzkin_project(&LinearSystem { dim, constraints: cs }, &drop)
}

fn lattice_points(
    points: &[Vec<i64>],
    gens: &[Vec<i64>],
    kvec: &[i64],
    limits: &Limits,
) -> Result<Vec<Vec<i64>>> {
    let d = points[0].len();
    let h = hull_plus_boxes(points, gens, kvec)?;
    let mut lo: Vec<i64> = (0..d).map(|c| points.iter().map(|p| p[c]).min().unwrap()).collect();
    let mut hi: Vec<i64> = (0..d).map(|c| points.iter().map(|p| p[c]).max().unwrap()).collect();
    for (v, &k) in gens.iter().zip(kvec) {
        for c in 0..d {
            lo[c] += k * v[c].min(0);
            hi[c] += k * v[c].max(0);
        }
    }
    let volume: u128 = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as u128).product();
    if volume > limits.box_points {
        return Err(Error::ResourceLimit {
            what: "lattice box",
            estimate: volume,
            limit: limits.box_points,
        });
    }
    let mut out = Vec::new();
    if d == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    let mut x = lo.clone();
    loop {
        if h.contains_int(&x) {
            out.push(x.clone());
        }
        let mut c = 0;
        loop {
            if c == d {
                return Ok(out);
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

/// `#(P + sum k_i [0, v_i]) cap Z^d` by direct enumeration.
pub fn minkowski_count(vertices: &[Vec<i64>], gens: &[Vec<i64>], kvec: &[i64], limits: &Limits) -> Result<u64> {
    check_input(vertices, gens)?;
    if kvec.len() != gens.len() || kvec.iter().any(|&k| k < 0) {
        return Err(Error::DimensionError("need one nonnegative k per generator".into()));
    }
    Ok(lattice_points(vertices, gens, kvec, limits)?.len() as u64)
}

/// A unimodular `U` with `U * span(cols)` equal to the first `rank` axes.
fn unimodular_for(cols: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let rcount = cols.len();
    let mut a: Vec<Vec<i64>> = (0..d).map(|row| cols.iter().map(|c| c[row]).collect()).collect();
    let mut u: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
    for col in 0..rcount {
        loop {
            let piv = (col..d).filter(|&i| a[i][col] != 0).min_by_key(|&i| a[i][col].abs());
            let Some(p) = piv else { break };
            a.swap(col, p);
            u.swap(col, p);
            let mut done = true;
            for i in col + 1..d {
                let q = a[i][col] / a[col][col];
                if q != 0 {
                    for j in 0..rcount {
                        a[i][j] -= q * a[col][j];
                    }
                    for j in 0..d {
                        u[i][j] -= q * u[col][j];
                    }
                }
                if a[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
    }
    u
}

fn apply(u: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    u.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// `(#(quot_X(P) cap quot_X(Z^d)), #quot_X(P cap Z^d))` for linearly
/// independent `X`.
pub fn quotient_counts(vertices: &[Vec<i64>], x: &[Vec<i64>], limits: &Limits) -> Result<(u64, u64)> {
    let d = check_input(vertices, x)?;
    exactla::rvol(x)?;
    let rk = x.len();
    let u = unimodular_for(x, d);
    let tails: Vec<Vec<i64>> = vertices.iter().map(|v| apply(&u, v)[rk..].to_vec()).collect();
    let rational = lattice_points(&tails, &[], &[], limits)?.len() as u64;
    let integral: HashSet<Vec<i64>> = lattice_points(vertices, &[], &[], limits)?
        .iter()
        .map(|p| apply(&u, p)[rk..].to_vec())
        .collect();
    Ok((rational, integral.len() as u64))
}

/// `sum_X #(quot_X(P) cap quot_X(Z^d)) rVol(X) k^X` over independent
/// subsets `X` of the generators.
pub fn minkowski_poly(vertices: &[Vec<i64>], gens: &[Vec<i64>], limits: &Limits) -> Result<MultiPoly> {
    let d = check_input(vertices, gens)?;
    let m = gens.len();
    let mut poly = MultiPoly {
        nvars: m,
        terms: BTreeMap::new(),
    };
    for mask in 0u32..(1u32 << m) {
        let ids: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        if ids.len() > d {
            continue;
        }
        let rows: Vec<Vec<i64>> = ids.iter().map(|&i| gens[i].clone()).collect();
        let span = SpanKey::from_vectors(d, &rows.iter().map(|v| exactla::to_rat(v)).collect::<Vec<_>>());
        if span.rank() != ids.len() {
            continue;
        }
        let vol = exactla::rvol(&rows)?;
        let (count, _) = quotient_counts(vertices, &rows, limits)?;
        let c = count as i64 * vol;
        if c != 0 {
            poly.terms.insert(ids, c);
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Vec<Vec<i64>> {
        vec![vec![0, 3], vec![1, 4], vec![2, 0]]
    }

    #[test]
    fn thin_triangle() {
        let l = Limits::default();
        let v = vec![vec![1, 1]];
        let p = minkowski_poly(&triangle(), &v, &l).unwrap();
        assert_eq!(p.diagonal(), vec![5, 6]);
        assert_eq!(quotient_counts(&triangle(), &v, &l).unwrap(), (6, 4));
        for k in 0..5 {
            assert_eq!(minkowski_count(&triangle(), &v, &[k], &l).unwrap() as i64, p.eval(&[k]));
        }
    }

    #[test]
    fn k_zero_counts_polytope() {
        let l = Limits::default();
        assert_eq!(minkowski_count(&triangle(), &[vec![1, 1]], &[0], &l).unwrap(), 5);
    }

    #[test]
    fn bad_inputs() {
        let l = Limits::default();
        assert!(matches!(
            minkowski_count(&[vec![0; 5]], &[], &[], &l),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            minkowski_count(&[vec![0, 0]], &[vec![1]], &[1], &l),
            Err(Error::DimensionError(_))
        ));
    }

    #[test]
    fn unimodular_change_of_basis() {
        let u = unimodular_for(&[vec![2, 4, 6]], 3);
        assert_eq!(exactla::det_i64(&u).abs(), 1);
        let img = apply(&u, &[2, 4, 6]);
        assert_eq!(&img[1..], &[0, 0]);
    }
}
