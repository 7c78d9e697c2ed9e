//! Symmetric and truncated interval-firing.
//!
//! A weight `mu` may fire a positive root `alpha`, moving to `mu + alpha`,
//! when `<mu, alpha^vee> + 1` lies in `[-k, k]` (symmetric) or `[-k+1, k]`
//! (truncated), with `k` the parameter attached to the length of `alpha`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::ehrhart::poly::{fit_polynomial, EhrhartPoly};
use crate::permutohedra::discrete_permutohedron;
use crate::rootsys::{dot, RootSystem, Weight};
use crate::{par, Error, Limits, Result};

/// Weyl-invariant parameter: one value for long roots, one for short.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeformParam {
    pub k_long: i64,
    pub k_short: i64,
}

impl DeformParam {
    pub fn new(k_long: i64, k_short: i64) -> DeformParam {
        DeformParam { k_long, k_short }
    }

    pub fn uniform(k: i64) -> DeformParam {
        DeformParam { k_long: k, k_short: k }
    }

    pub fn value(&self, is_long: bool) -> i64 {
        if is_long {
            self.k_long
        } else {
            self.k_short
        }
    }

    pub fn is_good(&self, simply_laced: bool) -> bool {
        self.k_long >= 0 && self.k_short >= 0 && (simply_laced || self.k_short > 0 || self.k_long == 0)
    }

    pub fn check(&self, sys: &RootSystem) -> Result<()> {
        if self.is_good(sys.simply_laced) {
            Ok(())
        } else {
            Err(Error::BadParam(format!(
                "k_long = {}, k_short = {} is not good for {}",
                self.k_long, self.k_short, sys.label
            )))
        }
    }

    pub fn add(&self, other: &DeformParam) -> DeformParam {
        DeformParam::new(self.k_long + other.k_long, self.k_short + other.k_short)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiringMode {
    Symmetric,
    Truncated,
}

/// Per-positive-root firing windows for fixed `k` and mode.
struct Rules<'a> {
    sys: &'a RootSystem,
    windows: Vec<(i64, i64)>,
}

impl<'a> Rules<'a> {
    fn new(sys: &'a RootSystem, k: &DeformParam, mode: FiringMode) -> Result<Rules<'a>> {
        k.check(sys)?;
        let windows = sys
            .positive_roots()
            .iter()
            .map(|a| {
                let kv = k.value(a.is_long);
                match mode {
                    FiringMode::Symmetric => (-kv, kv),
                    FiringMode::Truncated => (-kv + 1, kv),
                }
            })
            .collect();
        Ok(Rules { sys, windows })
    }

    #[inline]
    fn can_fire(&self, mu: &[i64], j: usize) -> bool {
        let p = dot(&self.sys.roots[j].coroot_coords, mu) + 1;
        let (lo, hi) = self.windows[j];
        lo <= p && p <= hi
    }

    fn fireable(&self, mu: &[i64]) -> Vec<usize> {
        (0..self.windows.len()).filter(|&j| self.can_fire(mu, j)).collect()
    }

    fn first_fireable(&self, mu: &[i64]) -> Option<usize> {
        (0..self.windows.len()).find(|&j| self.can_fire(mu, j))
    }

    fn fire(&self, mu: &mut [i64], j: usize) {
        mu.iter_mut()
            .zip(&self.sys.roots[j].fw_coords)
            .for_each(|(x, a)| *x += a);
    }

    fn stabilize(&self, mu: &Weight, limit: u64) -> Result<Weight> {
        let mut v = mu.0.clone();
        let mut steps = 0u64;
        while let Some(j) = self.first_fireable(&v) {
            steps += 1;
            if steps > limit {
                return Err(Error::StepLimit(limit));
            }
            self.fire(&mut v, j);
        }
        Ok(Weight(v))
    }
}

/// Indices of the positive roots `mu` may fire.
pub fn fireable_roots(sys: &RootSystem, mu: &Weight, k: &DeformParam, mode: FiringMode) -> Result<Vec<usize>> {
    Ok(Rules::new(sys, k, mode)?.fireable(&mu.0))
}

pub fn is_stable(sys: &RootSystem, mu: &Weight, k: &DeformParam, mode: FiringMode) -> Result<bool> {
    Ok(Rules::new(sys, k, mode)?.first_fireable(&mu.0).is_none())
}

/// Fires the smallest-index fireable root until nothing can fire.
pub fn stabilize(sys: &RootSystem, mu: &Weight, k: &DeformParam, mode: FiringMode, limits: &Limits) -> Result<Weight> {
    Rules::new(sys, k, mode)?.stabilize(mu, limits.steps)
}

/// Stabilizes using `choose` to pick among the fireable roots at each step.
pub fn stabilize_with(
    sys: &RootSystem,
    mu: &Weight,
    k: &DeformParam,
    mode: FiringMode,
    limits: &Limits,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<Weight> {
    let rules = Rules::new(sys, k, mode)?;
    let mut v = mu.0.clone();
    let mut steps = 0u64;
    loop {
        let options = rules.fireable(&v);
        if options.is_empty() {
            return Ok(Weight(v));
        }
        steps += 1;
        if steps > limits.steps {
            return Err(Error::StepLimit(limits.steps));
        }
        let j = options[choose(&options) % options.len()];
        rules.fire(&mut v, j);
    }
}

/// Checks that `eta_k(nu)` is stable exactly when `nu` is an admissible
/// label for the mode.
pub fn stable_points_check(sys: &RootSystem, nu: &Weight, k: &DeformParam, mode: FiringMode) -> Result<bool> {
    let stable = is_stable(sys, &sys.eta(nu, k)?, k, mode)?;
    Ok(match mode {
        FiringMode::Truncated => stable,
        FiringMode::Symmetric => stable == !sys.forbidden_sym(nu),
    })
}

/// The weight `nu` with `eta_k(nu) == point`, if there is one.
///
/// `eta_k(nu)` has dominant representative `nu_dom + rho_k`, and any Weyl
/// element carrying that representative back to `point` also carries
/// `nu_dom` to `nu`.
pub fn stable_label(sys: &RootSystem, point: &Weight, k: &DeformParam) -> Result<Option<Weight>> {
    let (dom, w) = sys.dominant_rep(point)?;
    let nu_dom = dom.sub(&sys.rho_k(k));
    if !nu_dom.is_dominant() {
        return Ok(None);
    }
    let nu = sys.apply_word(&w, &nu_dom);
    Ok((sys.eta(&nu, k)? == *point).then_some(nu))
}

fn admissible(sys: &RootSystem, nu: &Weight, mode: FiringMode) -> bool {
    mode == FiringMode::Truncated || !sys.forbidden_sym(nu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberTable {
    pub lam_top: Weight,
    pub k: DeformParam,
    pub mode: FiringMode,
    /// Fiber size for every admissible label in `Pi^Q(lam_top)`.
    pub counts: BTreeMap<Weight, u64>,
    pub sources: u64,
}

/// Stabilizes every point of `Pi^Q(lam_top + rho_k)` and counts how many
/// land on `eta_k(nu)` for each `nu` in `Pi^Q(lam_top)`.
pub fn fiber_table(sys: &RootSystem, lam_top: &Weight, k: &DeformParam, mode: FiringMode, limits: &Limits) -> Result<FiberTable> {
    let rules = Rules::new(sys, k, mode)?;
    if !lam_top.is_dominant() {
        return Err(Error::NotDominant(lam_top.clone()));
    }
    let labels: Vec<Weight> = discrete_permutohedron(sys, lam_top, limits)?
        .points
        .into_iter()
        .filter(|nu| admissible(sys, nu, mode))
        .collect();
    let mut index: HashMap<Weight, usize> = HashMap::with_capacity(labels.len());
    for (i, nu) in labels.iter().enumerate() {
        index.insert(sys.eta(nu, k)?, i);
    }
    let top = lam_top.add(&sys.rho_k(k));
    let sources = discrete_permutohedron(sys, &top, limits)?.points;
    let hits = par::try_map(&sources, |mu| {
        let s = rules.stabilize(mu, limits.steps)?;
        index.get(&s).copied().ok_or(Error::UnmatchedStablePoint(s))
    })?;
    let mut tally = vec![0u64; labels.len()];
    for h in hits {
        tally[h] += 1;
    }
    Ok(FiberTable {
        lam_top: lam_top.clone(),
        k: *k,
        mode,
        counts: labels.into_iter().zip(tally).collect(),
        sources: sources.len() as u64,
    })
}

/// Interpolation grid and monomial support used for simulated polynomials.
pub fn sample_grid(sys: &RootSystem, degree: u32) -> (Vec<DeformParam>, Vec<(u32, u32)>) {
    let d = degree as i64;
    if sys.simply_laced {
        let grid = (0..=d + 1).map(DeformParam::uniform).collect();
        let monos = (0..=degree).map(|a| (a, 0)).collect();
        (grid, monos)
    } else {
        let mut grid: Vec<DeformParam> = Vec::new();
        for kl in 0..=d {
            for ks in 0..=d {
                let k = DeformParam::new(kl, ks);
                if k.is_good(false) {
                    grid.push(k);
                }
            }
        }
        grid.push(DeformParam::uniform(d + 1));
        let mut monos = Vec::new();
        for a in 0..=degree {
            for b in 0..=degree - a {
                monos.push((a, b));
            }
        }
        (grid, monos)
    }
}

/// Simulated polynomials for every admissible label of `Pi^Q(lam_top)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulatedPolys {
    pub lam_top: Weight,
    pub mode: FiringMode,
    pub polys: BTreeMap<Weight, EhrhartPoly>,
    /// Labels whose fiber sizes are not fit by an integer polynomial.
    pub failures: Vec<Weight>,
    /// Fiber sizes at each sample point, keyed like `polys`.
    pub samples: BTreeMap<Weight, Vec<(DeformParam, u64)>>,
}

pub fn simulated_polys_on_grid(
    sys: &RootSystem,
    lam_top: &Weight,
    mode: FiringMode,
    grid: &[DeformParam],
    monos: &[(u32, u32)],
    limits: &Limits,
) -> Result<SimulatedPolys> {
    let mut samples: BTreeMap<Weight, Vec<(DeformParam, u64)>> = BTreeMap::new();
    for k in grid {
        let t = fiber_table(sys, lam_top, k, mode, limits)?;
        for (nu, c) in t.counts {
            samples.entry(nu).or_default().push((*k, c));
        }
    }
    let mut polys = BTreeMap::new();
    let mut failures = Vec::new();
    for (nu, pts) in &samples {
        let data: Vec<((i64, i64), i64)> = pts.iter().map(|(k, c)| ((k.k_long, k.k_short), *c as i64)).collect();
        match fit_polynomial(&data, monos) {
            Some(p) => {
                polys.insert(nu.clone(), p);
            }
            None => failures.push(nu.clone()),
        }
    }
    Ok(SimulatedPolys {
        lam_top: lam_top.clone(),
        mode,
        polys,
        failures,
        samples,
    })
}

/// Simulated polynomials of total degree at most the rank.
pub fn simulated_polys(sys: &RootSystem, lam_top: &Weight, mode: FiringMode, limits: &Limits) -> Result<SimulatedPolys> {
    let (grid, monos) = sample_grid(sys, sys.rank() as u32);
    simulated_polys_on_grid(sys, lam_top, mode, &grid, &monos, limits)
}

/// The fiber-size polynomial of a single weight, found by simulation.
pub fn simulated_poly(sys: &RootSystem, lam: &Weight, mode: FiringMode, limits: &Limits) -> Result<EhrhartPoly> {
    if mode == FiringMode::Symmetric && sys.forbidden_sym(lam) {
        return Ok(EhrhartPoly::zero());
    }
    let (dom, _) = sys.dominant_rep(lam)?;
    let sims = simulated_polys(sys, &dom, mode, limits)?;
    sims.polys.get(lam).cloned().ok_or(Error::NonPolynomialFit {
        weight: lam.clone(),
        degree: sys.rank() as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fireable_examples() {
        let a1 = RootSystem::of("A1");
        let z = Weight(vec![0]);
        assert!(fireable_roots(&a1, &z, &DeformParam::uniform(0), FiringMode::Truncated)
            .unwrap()
            .is_empty());
        assert!(fireable_roots(&a1, &Weight(vec![-2]), &DeformParam::uniform(0), FiringMode::Symmetric)
            .unwrap()
            .is_empty());
        assert_eq!(fireable_roots(&a1, &z, &DeformParam::uniform(1), FiringMode::Symmetric).unwrap(), vec![0]);
        let b2 = RootSystem::of("B2");
        assert!(matches!(
            fireable_roots(&b2, &Weight(vec![0, 0]), &DeformParam::new(1, 0), FiringMode::Symmetric),
            Err(Error::BadParam(_))
        ));
    }

    #[test]
    fn stabilize_examples() {
        let l = Limits::default();
        let a1 = RootSystem::of("A1");
        let k = DeformParam::uniform(1);
        let s = stabilize(&a1, &Weight(vec![0]), &k, FiringMode::Symmetric, &l).unwrap();
        assert_eq!(s, Weight(vec![2]));
        assert_eq!(s, a1.eta(&Weight(vec![1]), &k).unwrap());
        let stable = Weight(vec![5]);
        assert_eq!(stabilize(&a1, &stable, &k, FiringMode::Symmetric, &l).unwrap(), stable);
        assert_eq!(stable_label(&a1, &s, &k).unwrap(), Some(Weight(vec![1])));
        assert_eq!(stable_label(&a1, &Weight(vec![0]), &k).unwrap(), None);
        let g2 = RootSystem::of("G2");
        for nu in g2.full_orbit(&Weight(vec![1, 1])) {
            let k = DeformParam::new(2, 1);
            assert_eq!(stable_label(&g2, &g2.eta(&nu, &k).unwrap(), &k).unwrap(), Some(nu));
        }
    }

    #[test]
    fn fiber_table_examples() {
        let l = Limits::default();
        let a1 = RootSystem::of("A1");
        let t = fiber_table(&a1, &Weight(vec![0]), &DeformParam::uniform(1), FiringMode::Symmetric, &l).unwrap();
        assert_eq!(t.counts[&Weight(vec![0])], 2);
        let b2 = RootSystem::of("B2");
        let t0 = fiber_table(&b2, &Weight(vec![1, 1]), &DeformParam::uniform(0), FiringMode::Truncated, &l).unwrap();
        assert!(t0.counts.values().all(|&c| c == 1));
        assert_eq!(t0.counts.len() as u64, t0.sources);
    }

    #[test]
    fn simulated_a1() {
        let l = Limits::default();
        let a1 = RootSystem::of("A1");
        let p = simulated_poly(&a1, &Weight(vec![0]), FiringMode::Symmetric, &l).unwrap();
        assert_eq!(p.diagonal(), vec![1, 1]);
    }
}
