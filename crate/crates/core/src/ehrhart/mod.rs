//! Closed formulas for the symmetric fiber polynomials and for the
//! conjectured truncated ones, plus scans comparing them with simulation.

pub mod poly;

use std::collections::BTreeMap;

use crate::exactla::{enumerate_indep_sets, group_by_span, positive_roots_in_span, SpanKey};
use crate::firing::{fiber_table, simulated_polys, DeformParam, FiringMode};
use crate::rootsys::{RootSystem, TypeLabel, Weight};
use crate::{par, Limits, Result};

pub use poly::{fit_polynomial, hstar_numerator, EhrhartPoly};

/// All independent sets spanning one subspace, summarized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanEntry {
    pub key: SpanKey,
    /// Positive roots inside the span.
    pub pos_roots: Vec<usize>,
    /// `sum rVol(X) k_l^#long k_s^#short` over `X` spanning `key`.
    pub poly: EhrhartPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanTable {
    pub entries: Vec<SpanEntry>,
}

pub fn span_table(sys: &RootSystem, limits: &Limits) -> Result<SpanTable> {
    let sets = enumerate_indep_sets(sys, sys.rank(), limits)?;
    let mut entries: Vec<SpanEntry> = group_by_span(sets)
        .into_iter()
        .map(|(key, group)| {
            let mut poly = EhrhartPoly::zero();
            for x in &group {
                poly.add_term(x.long_count, x.short_count, x.rvol);
            }
            SpanEntry {
                pos_roots: positive_roots_in_span(sys, &key),
                key,
                poly,
            }
        })
        .collect();
    entries.sort_by(|a, b| a.key.rank().cmp(&b.key.rank()).then_with(|| a.key.cmp(&b.key)));
    Ok(SpanTable { entries })
}

fn pairs_in_01(sys: &RootSystem, mu: &Weight, roots: &[usize]) -> bool {
    roots.iter().all(|&j| matches!(sys.pairing(mu, &sys.roots[j]), 0 | 1))
}

/// `w_lam W_I(lam_dom)` with `I` the coordinates of `lam_dom` in `{0, 1}`.
pub fn sym_orbit(sys: &RootSystem, lam: &Weight) -> Result<Vec<Weight>> {
    let (dom, w) = sys.dominant_rep(lam)?;
    let i01 = sys.i01_set(&dom)?;
    Ok(sys
        .weyl_orbit(&dom, &i01)
        .iter()
        .map(|nu| sys.apply_word(&w, nu))
        .collect())
}

pub fn sym_formula_with(sys: &RootSystem, table: &SpanTable, lam: &Weight) -> Result<EhrhartPoly> {
    if sys.forbidden_sym(lam) {
        return Ok(EhrhartPoly::zero());
    }
    let orbit = sym_orbit(sys, lam)?;
    let counts = par::map(&table.entries, |e| {
        orbit.iter().filter(|mu| pairs_in_01(sys, mu, &e.pos_roots)).count() as i64
    });
    let mut out = EhrhartPoly::zero();
    for (e, c) in table.entries.iter().zip(counts) {
        out.add_scaled(&e.poly, c);
    }
    Ok(out)
}

/// The symmetric fiber polynomial of `lam` from the closed formula.
pub fn sym_formula(sys: &RootSystem, lam: &Weight, limits: &Limits) -> Result<EhrhartPoly> {
    sym_formula_with(sys, &span_table(sys, limits)?, lam)
}

pub fn tr_conjecture_rhs_with(sys: &RootSystem, table: &SpanTable, lam: &Weight) -> EhrhartPoly {
    let mut out = EhrhartPoly::zero();
    for e in &table.entries {
        if pairs_in_01(sys, lam, &e.pos_roots) {
            out.add_scaled(&e.poly, 1);
        }
    }
    out
}

/// Conjectured truncated polynomial: independent sets whose span only
/// contains roots pairing to 0 or 1 with `lam`.
pub fn tr_conjecture_rhs(sys: &RootSystem, lam: &Weight, limits: &Limits) -> Result<EhrhartPoly> {
    Ok(tr_conjecture_rhs_with(sys, &span_table(sys, limits)?, lam))
}

pub fn reciprocity_eval(p: &EhrhartPoly, at: i64) -> i64 {
    p.eval(at, at)
}

/// Dominant weights with every coordinate in `{0, 1}`.
pub fn zero_one_dominants(n: usize) -> Vec<Weight> {
    (0u32..1 << n)
        .map(|m| Weight((0..n).map(|i| (m >> i & 1) as i64).collect()))
        .collect()
}

/// All weights whose dominant representative has coordinates in `{0, 1}`.
pub fn scan_domain(sys: &RootSystem) -> Vec<Weight> {
    let mut out: Vec<Weight> = zero_one_dominants(sys.rank())
        .iter()
        .flat_map(|d| sys.full_orbit(d))
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub label: TypeLabel,
    pub lam: Weight,
    pub lhs: EhrhartPoly,
    pub rhs: EhrhartPoly,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub label: TypeLabel,
    pub domain_size: usize,
    /// Every weight of the domain that has a fitted polynomial.
    pub reports: Vec<CounterexampleReport>,
    /// Weights whose truncated fiber sizes admit no integer polynomial fit.
    pub fit_failures: Vec<Weight>,
}

impl ScanResult {
    pub fn counterexamples(&self) -> Vec<&CounterexampleReport> {
        self.reports.iter().filter(|r| !r.equal).collect()
    }
}

/// Compares simulated truncated polynomials with the conjectured ones on
/// the whole `{0, 1}` domain.
pub fn counterexample_scan(sys: &RootSystem, limits: &Limits) -> Result<ScanResult> {
    let table = span_table(sys, limits)?;
    let mut reports = Vec::new();
    let mut fit_failures = Vec::new();
    let mut domain_size = 0;
    for top in zero_one_dominants(sys.rank()) {
        let orbit = sys.full_orbit(&top);
        domain_size += orbit.len();
        let sims = simulated_polys(sys, &top, FiringMode::Truncated, limits)?;
        for lam in orbit {
            match sims.polys.get(&lam) {
                Some(lhs) => {
                    let rhs = tr_conjecture_rhs_with(sys, &table, &lam);
                    reports.push(CounterexampleReport {
                        label: sys.label,
                        equal: *lhs == rhs,
                        lhs: lhs.clone(),
                        rhs,
                        lam,
                    });
                }
                None => fit_failures.push(lam),
            }
        }
    }
    reports.sort_by(|a, b| a.lam.cmp(&b.lam));
    fit_failures.sort();
    Ok(ScanResult {
        label: sys.label,
        domain_size,
        reports,
        fit_failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointScanResult {
    pub label: TypeLabel,
    pub k: DeformParam,
    pub domain_size: usize,
    /// `(lam, simulated, conjectured)` where the two values differ.
    pub disagreements: Vec<(Weight, i64, i64)>,
}

/// The same comparison at a single parameter value.
pub fn counterexample_scan_at(sys: &RootSystem, k: &DeformParam, limits: &Limits) -> Result<PointScanResult> {
    let table = span_table(sys, limits)?;
    let mut disagreements = Vec::new();
    let mut domain_size = 0;
    for top in zero_one_dominants(sys.rank()) {
        let orbit = sys.full_orbit(&top);
        domain_size += orbit.len();
        let t = fiber_table(sys, &top, k, FiringMode::Truncated, limits)?;
        for lam in orbit {
            let lhs = t.counts[&lam] as i64;
            let rhs = tr_conjecture_rhs_with(sys, &table, &lam).eval_param(k);
            if lhs != rhs {
                disagreements.push((lam, lhs, rhs));
            }
        }
    }
    disagreements.sort();
    Ok(PointScanResult {
        label: sys.label,
        k: *k,
        domain_size,
        disagreements,
    })
}

/// Symmetric polynomials for every weight of the `{0, 1}` domain from the
/// closed formula.
pub fn sym_formula_domain(sys: &RootSystem, limits: &Limits) -> Result<BTreeMap<Weight, EhrhartPoly>> {
    let table = span_table(sys, limits)?;
    scan_domain(sys)
        .into_iter()
        .map(|lam| sym_formula_with(sys, &table, &lam).map(|p| (lam, p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_examples() {
        let l = Limits::default();
        let a1 = RootSystem::of("A1");
        assert_eq!(sym_formula(&a1, &Weight(vec![0]), &l).unwrap().diagonal(), vec![1, 1]);
        assert!(sym_formula(&a1, &Weight(vec![-1]), &l).unwrap().is_zero());
        let b3 = RootSystem::of("B3");
        assert_eq!(sym_formula(&b3, &Weight(vec![1, 0, 0]), &l).unwrap().diagonal(), vec![6, 36, 78]);
        let g2 = RootSystem::of("G2");
        let rhs = tr_conjecture_rhs(&g2, &Weight(vec![1, 0]), &l).unwrap();
        assert_eq!(rhs.to_string(), "3kl + 2ks + 1");
        let far = tr_conjecture_rhs(&b3, &Weight(vec![2, 3, 2]), &l).unwrap();
        assert_eq!(far, EhrhartPoly::monomial(0, 0, 1));
    }

    #[test]
    fn domain_sizes() {
        for (t, n) in [("A1", 3), ("A2", 13), ("B2", 17), ("G2", 25)] {
            assert_eq!(scan_domain(&RootSystem::of(t)).len(), n, "{t}");
        }
    }

    #[test]
    fn reciprocity() {
        let p = EhrhartPoly::univariate(&[1, 9, 39, 87]);
        assert_eq!(reciprocity_eval(&p, -1), -56);
        assert_eq!(reciprocity_eval(&p, 0), 1);
    }
}
