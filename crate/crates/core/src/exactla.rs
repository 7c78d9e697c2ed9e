//! Exact rational linear algebra in simple-root coordinates.

use std::collections::HashMap;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::rootsys::RootSystem;
use crate::{par, Error, Limits, Result};

pub type Rat = Ratio<i64>;
pub type RatVec = Vec<Rat>;

pub fn to_rat(v: &[i64]) -> RatVec {
    v.iter().map(|&x| Rat::from_integer(x)).collect()
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

pub fn inverse(m: &[RatVec]) -> Option<Vec<RatVec>> {
    let n = m.len();
    let mut a: Vec<RatVec> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| Rat::from_integer((i == j) as i64)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        a[col].iter_mut().for_each(|x| *x /= p);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                a[r].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Canonical reduced row-echelon basis of a subspace of `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanKey {
    pub dim: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<RatVec>,
}

impl SpanKey {
    pub fn empty(dim: usize) -> SpanKey {
        SpanKey {
            dim,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a RatVec>) -> SpanKey {
        let mut k = SpanKey::empty(dim);
        for v in vs {
            k.insert(v);
        }
        k
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` modulo the span; the result has zeros at every pivot.
    pub fn quotient_key(&self, v: &[Rat]) -> RatVec {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p];
            if !c.is_zero() {
                out.iter_mut().zip(row).for_each(|(x, r)| *x -= c * r);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.quotient_key(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span. Returns false if it was already inside.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.quotient_key(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = r[p];
        r.iter_mut().for_each(|x| *x /= lead);
        for row in self.rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                row.iter_mut().zip(&r).for_each(|(x, y)| *x -= c * y);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }
}

pub fn span_key(sys: &RootSystem, root_ids: &[usize]) -> SpanKey {
    let vs: Vec<RatVec> = root_ids.iter().map(|&i| to_rat(&sys.roots[i].root_coords)).collect();
    SpanKey::from_vectors(sys.rank(), &vs)
}

pub fn in_span(sys: &RootSystem, root_id: usize, key: &SpanKey) -> bool {
    key.contains(&to_rat(&sys.roots[root_id].root_coords))
}

pub fn positive_roots_in_span(sys: &RootSystem, key: &SpanKey) -> Vec<usize> {
    if key.rank() == 0 {
        return Vec::new();
    }
    sys.positive_root_ids
        .iter()
        .copied()
        .filter(|&i| in_span(sys, i, key))
        .collect()
}

pub fn quotient_key(mu: &[Rat], key: &SpanKey) -> RatVec {
    key.quotient_key(mu)
}

pub(crate) fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Relative volume of the lattice spanned by the rows: the gcd of the
/// maximal minors.
pub fn rvol(rows: &[Vec<i64>]) -> Result<i64> {
    let r = rows.len();
    if r == 0 {
        return Ok(1);
    }
    let n = rows[0].len();
    let mut g = 0i64;
    combinations(n, r, |cols| {
        let m: Vec<Vec<i64>> = rows.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect();
        g = g.gcd(&det_i64(&m));
    });
    if g == 0 {
        Err(Error::DependentSet)
    } else {
        Ok(g)
    }
}

pub fn rvol_roots(sys: &RootSystem, root_ids: &[usize]) -> Result<i64> {
    let rows: Vec<Vec<i64>> = root_ids.iter().map(|&i| sys.roots[i].root_coords.clone()).collect();
    rvol(&rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndepSet {
    pub root_ids: Vec<usize>,
    pub rank: usize,
    pub span: SpanKey,
    pub rvol: i64,
    pub long_count: u32,
    pub short_count: u32,
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

pub fn indep_set_estimate(num_pos: usize, max_rank: usize) -> u128 {
    (0..=max_rank).map(|j| binom(num_pos as u128, j as u128)).sum()
}

/// Every linearly independent subset of the positive roots of size at most
/// `max_rank`, each exactly once, ordered by first element.
pub fn enumerate_indep_sets(sys: &RootSystem, max_rank: usize, limits: &Limits) -> Result<Vec<IndepSet>> {
    let npos = sys.num_positive();
    let estimate = indep_set_estimate(npos, max_rank);
    if estimate > limits.indep_sets {
        return Err(Error::ResourceLimit {
            what: "independent sets",
            estimate,
            limit: limits.indep_sets,
        });
    }
    let vecs: Vec<RatVec> = sys.positive_roots().iter().map(|r| to_rat(&r.root_coords)).collect();

    struct Walk<'a> {
        sys: &'a RootSystem,
        vecs: &'a [RatVec],
        max_rank: usize,
        out: Vec<IndepSet>,
    }
    impl Walk<'_> {
        fn go(&mut self, start: usize, ids: &mut Vec<usize>, span: &SpanKey) {
            let rows: Vec<Vec<i64>> = ids.iter().map(|&i| self.sys.roots[i].root_coords.clone()).collect();
            let longs = ids.iter().filter(|&&i| self.sys.roots[i].is_long).count() as u32;
            self.out.push(IndepSet {
                root_ids: ids.clone(),
                rank: ids.len(),
                span: span.clone(),
                rvol: rvol(&rows).expect("independent by construction"),
                long_count: longs,
                short_count: ids.len() as u32 - longs,
            });
            if ids.len() == self.max_rank {
                return;
            }
            for j in start..self.vecs.len() {
                if span.contains(&self.vecs[j]) {
                    continue;
                }
                let mut next = span.clone();
                next.insert(&self.vecs[j]);
                ids.push(j);
                self.go(j + 1, ids, &next);
                ids.pop();
            }
        }
    }

    let n = sys.rank();
    let mut firsts: Vec<Option<usize>> = vec![None];
    if max_rank > 0 {
        firsts.extend((0..npos).map(Some));
    }
    let chunks = par::map(&firsts, |first| {
        let mut w = Walk {
            sys,
            vecs: &vecs,
            max_rank,
            out: Vec::new(),
        };
        match *first {
            None => w.out.push(IndepSet {
                root_ids: Vec::new(),
                rank: 0,
                span: SpanKey::empty(n),
                rvol: 1,
                long_count: 0,
                short_count: 0,
            }),
            Some(j) => {
                let span = SpanKey::from_vectors(n, [&vecs[j]]);
                w.go(j + 1, &mut vec![j], &span);
            }
        }
        w.out
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// Independent sets grouped by span, in first-appearance order.
pub fn group_by_span(sets: Vec<IndepSet>) -> Vec<(SpanKey, Vec<IndepSet>)> {
    let mut index: HashMap<SpanKey, usize> = HashMap::new();
    let mut groups: Vec<(SpanKey, Vec<IndepSet>)> = Vec::new();
    for s in sets {
        match index.get(&s.span) {
            Some(&g) => groups[g].1.push(s),
            None => {
                index.insert(s.span.clone(), groups.len());
                groups.push((s.span.clone(), vec![s]));
            }
        }
    }
    groups
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
}

/// `coeffs . x  (<= | =)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: RatVec,
    pub rel: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn le(coeffs: RatVec, rhs: Rat) -> Constraint {
        Constraint {
            coeffs,
            rel: Relation::Le,
            rhs,
        }
    }

    pub fn eq(coeffs: RatVec, rhs: Rat) -> Constraint {
        Constraint {
            coeffs,
            rel: Relation::Eq,
            rhs,
        }
    }

    fn holds(&self, x: &[Rat]) -> bool {
        let lhs: Rat = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    fn normalized(mut self) -> Constraint {
        if let Some(p) = self.coeffs.iter().find(|c| !c.is_zero()).copied() {
            let s = match self.rel {
                Relation::Le => p.abs(),
                Relation::Eq => p,
            };
            self.coeffs.iter_mut().for_each(|c| *c /= s);
            self.rhs /= s;
        }
        self
    }
}

/// A polyhedron given by linear constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|c| c.holds(x))
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.contains(&to_rat(x))
    }

    pub fn is_trivially_empty(&self) -> bool {
        self.constraints
            .iter()
            .any(|c| c.coeffs.iter().all(Zero::is_zero) && !c.holds(&vec![Rat::zero(); self.dim]))
    }
}

fn tidy(cs: Vec<Constraint>) -> Vec<Constraint> {
    let mut best: HashMap<(RatVec, bool), Rat> = HashMap::new();
    let mut order: Vec<(RatVec, bool)> = Vec::new();
    let mut infeasible: Option<Constraint> = None;
    for c in cs {
        let c = c.normalized();
        if c.coeffs.iter().all(Zero::is_zero) {
            let ok = match c.rel {
                Relation::Le => c.rhs >= Rat::zero(),
                Relation::Eq => c.rhs.is_zero(),
            };
            if !ok {
                infeasible = Some(Constraint::le(c.coeffs.clone(), Rat::from_integer(-1)));
            }
            continue;
        }
        let key = (c.coeffs.clone(), c.rel == Relation::Eq);
        match best.get_mut(&key) {
            Some(r) => {
                if c.rel == Relation::Le && c.rhs < *r {
                    *r = c.rhs;
                } else if c.rel == Relation::Eq && c.rhs != *r {
                    infeasible = Some(Constraint::le(c.coeffs.iter().map(|_| Rat::zero()).collect(), Rat::from_integer(-1)));
                }
            }
            None => {
                best.insert(key.clone(), c.rhs);
                order.push(key);
            }
        }
    }
    if let Some(bad) = infeasible {
        return vec![bad];
    }
    order
        .into_iter()
        .map(|key| {
            let rhs = best[&key];
            Constraint {
                coeffs: key.0,
                rel: if key.1 { Relation::Eq } else { Relation::Le },
                rhs,
            }
        })
        .collect()
}

/// Projects the polyhedron onto the coordinates not listed in `drop`,
/// keeping their original order.
pub fn fourier_motzkin_project(sys: &LinearSystem, drop: &[usize]) -> Result<LinearSystem> {
    let mut seen = vec![false; sys.dim];
    for &d in drop {
        if d >= sys.dim || seen[d] {
            return Err(Error::DimensionError(format!(
                "cannot eliminate coordinate {d} of a {}-dimensional system",
                sys.dim
            )));
        }
        seen[d] = true;
    }
    if let Some(c) = sys.constraints.iter().find(|c| c.coeffs.len() != sys.dim) {
        return Err(Error::DimensionError(format!(
            "constraint of length {} in a {}-dimensional system",
            c.coeffs.len(),
            sys.dim
        )));
    }
    let mut cs = tidy(sys.constraints.clone());
    for &v in drop {
        let eq_pos = cs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.rel == Relation::Eq && !c.coeffs[v].is_zero())
            .min_by_key(|(_, c)| c.coeffs.iter().filter(|x| !x.is_zero()).count())
            .map(|(i, _)| i);
        if let Some(ei) = eq_pos {
            let e = cs.swap_remove(ei);
            let ev = e.coeffs[v];
            cs = cs
                .into_iter()
                .map(|mut c| {
                    let f = c.coeffs[v] / ev;
                    if !f.is_zero() {
                        c.coeffs.iter_mut().zip(&e.coeffs).for_each(|(x, y)| *x -= f * y);
                        c.rhs -= f * e.rhs;
                    }
                    c
                })
                .collect();
        } else {
            let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
            for c in cs {
                let a = c.coeffs[v];
                if a.is_zero() {
                    keep.push(c);
                } else if a > Rat::zero() {
                    pos.push(c);
                } else {
                    neg.push(c);
                }
            }
            for p in &pos {
                for q in &neg {
                    let (a, b) = (p.coeffs[v], -q.coeffs[v]);
                    let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| x / a + y / b).collect();
                    keep.push(Constraint::le(coeffs, p.rhs / a + q.rhs / b));
                }
            }
            cs = keep;
        }
        cs = tidy(cs);
    }
    let kept: Vec<usize> = (0..sys.dim).filter(|&i| !seen[i]).collect();
    let constraints = cs
        .into_iter()
        .map(|c| Constraint {
            coeffs: kept.iter().map(|&i| c.coeffs[i]).collect(),
            rel: c.rel,
            rhs: c.rhs,
        })
        .collect();
    Ok(LinearSystem {
        dim: kept.len(),
        constraints: tidy(constraints),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> Rat {
        Rat::from_integer(x)
    }

    #[test]
    fn determinants() {
        assert_eq!(det_i64(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i64(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn rvol_examples() {
        assert_eq!(rvol(&[vec![1, 0], vec![0, 1]]).unwrap(), 1);
        assert_eq!(rvol(&[vec![3, 1], vec![0, 1]]).unwrap(), 3);
        assert_eq!(rvol(&[vec![1, 1], vec![2, 2]]), Err(Error::DependentSet));
        assert_eq!(rvol(&[vec![2, 4, 0]]).unwrap(), 2);
    }

    #[test]
    fn spans() {
        let b2 = RootSystem::of("B2");
        let k = span_key(&b2, &[0]);
        assert_eq!(positive_roots_in_span(&b2, &k), vec![0]);
        let g2 = RootSystem::of("G2");
        assert_eq!(positive_roots_in_span(&g2, &span_key(&g2, &[0, 1])).len(), 6);
        assert!(positive_roots_in_span(&g2, &SpanKey::empty(2)).is_empty());
        let a2 = RootSystem::of("A2");
        let s = span_key(&a2, &[0]);
        assert_eq!(s.quotient_key(&[r(1), r(0)]), s.quotient_key(&[r(0), r(0)]));
        assert_ne!(s.quotient_key(&[r(0), r(1)]), s.quotient_key(&[r(0), r(0)]));
    }

    #[test]
    fn indep_set_counts() {
        let l = Limits::default();
        for (t, want) in [("A1", 2), ("A2", 7), ("B2", 11)] {
            let s = RootSystem::of(t);
            assert_eq!(enumerate_indep_sets(&s, s.rank(), &l).unwrap().len(), want);
        }
        let tight = Limits {
            indep_sets: 10,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_indep_sets(&RootSystem::of("B3"), 3, &tight),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            enumerate_indep_sets(&RootSystem::of("E8"), 8, &l),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn fm_square_and_identity() {
        let sq = LinearSystem {
            dim: 2,
            constraints: vec![
                Constraint::le(vec![r(-1), r(0)], r(0)),
                Constraint::le(vec![r(1), r(0)], r(1)),
                Constraint::le(vec![r(0), r(-1)], r(0)),
                Constraint::le(vec![r(0), r(1)], r(1)),
            ],
        };
        let p = fourier_motzkin_project(&sq, &[1]).unwrap();
        assert_eq!(p.dim, 1);
        assert!(p.contains_int(&[0]) && p.contains_int(&[1]) && !p.contains_int(&[2]) && !p.contains_int(&[-1]));
        let same = fourier_motzkin_project(&sq, &[]).unwrap();
        for x in -1..3 {
            for y in -1..3 {
                assert_eq!(same.contains_int(&[x, y]), sq.contains_int(&[x, y]));
            }
        }
        assert!(fourier_motzkin_project(&sq, &[2]).is_err());
        assert!(fourier_motzkin_project(&sq, &[0, 0]).is_err());
    }
}
