use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactla::Rat;
use crate::firing::DeformParam;
use crate::{Error, Result};

/// Integer polynomial in `k_l` (long roots) and `k_s` (short roots).
///
/// Simply-laced systems only use `k_l`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EhrhartPoly {
    pub terms: BTreeMap<(u32, u32), i64>,
}

impl EhrhartPoly {
    pub fn zero() -> EhrhartPoly {
        EhrhartPoly::default()
    }

    pub fn monomial(deg_l: u32, deg_s: u32, coeff: i64) -> EhrhartPoly {
        let mut p = EhrhartPoly::zero();
        p.add_term(deg_l, deg_s, coeff);
        p
    }

    /// Builds `sum_i coeffs[i] k_l^i`.
    pub fn univariate(coeffs: &[i64]) -> EhrhartPoly {
        let mut p = EhrhartPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(i as u32, 0, c);
        }
        p
    }

    pub fn add_term(&mut self, deg_l: u32, deg_s: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry((deg_l, deg_s)).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&(deg_l, deg_s));
        }
    }

    pub fn add_scaled(&mut self, other: &EhrhartPoly, c: i64) {
        for (&(a, b), &v) in &other.terms {
            self.add_term(a, b, v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_l: u32, deg_s: u32) -> i64 {
        self.terms.get(&(deg_l, deg_s)).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn eval(&self, kl: i64, ks: i64) -> i64 {
        self.terms
            .iter()
            .map(|(&(a, b), &c)| c as i128 * (kl as i128).pow(a) * (ks as i128).pow(b))
            .sum::<i128>() as i64
    }

    pub fn eval_param(&self, k: &DeformParam) -> i64 {
        self.eval(k.k_long, k.k_short)
    }

    /// Coefficients after setting `k_l = k_s = k`, lowest degree first.
    pub fn diagonal(&self) -> Vec<i64> {
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![0; deg + 1];
        for (&(a, b), &c) in &self.terms {
            out[(a + b) as usize] += c;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Renders the diagonal polynomial in one variable `k`.
    pub fn display_diagonal(&self) -> String {
        render(
            self.diagonal()
                .iter()
                .enumerate()
                .rev()
                .map(|(i, &c)| (c, var_power("k", i as u32))),
        )
    }
}

fn var_power(v: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    }
}

fn render(terms: impl Iterator<Item = (i64, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.abs();
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a == 1 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for EhrhartPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render(self.terms.iter().rev().map(|(&(a, b), &c)| {
            let parts: Vec<String> = [var_power("kl", a), var_power("ks", b)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            (c, parts.join(" "))
        }));
        f.write_str(&s)
    }
}

/// Exact least-squares-free fit: returns the unique integer polynomial on
/// the given monomials through every sample, or `None` if the samples are
/// inconsistent, underdetermined, or force non-integer coefficients.
pub fn fit_polynomial(samples: &[((i64, i64), i64)], monos: &[(u32, u32)]) -> Option<EhrhartPoly> {
    let m = monos.len();
    let mut rows: Vec<Vec<Rat>> = samples
        .iter()
        .map(|&((kl, ks), v)| {
            let mut row: Vec<Rat> = monos
                .iter()
                .map(|&(a, b)| Rat::from_integer(kl.pow(a) * ks.pow(b)))
                .collect();
            row.push(Rat::from_integer(v));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..m {
        let p = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        let lead = rows[pivot_row][col];
        rows[pivot_row].iter_mut().for_each(|x| *x /= lead);
        let prow = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col];
                row.iter_mut().zip(&prow).for_each(|(x, y)| *x -= f * y);
            }
        }
        pivot_row += 1;
    }
    if rows[m..].iter().any(|r| !r[m].is_zero()) {
        return None;
    }
    let mut p = EhrhartPoly::zero();
    for (i, &(a, b)) in monos.iter().enumerate() {
        let c = rows[i][m];
        if !c.is_integer() {
            return None;
        }
        p.add_term(a, b, c.to_integer());
    }
    Some(p)
}

/// Numerator `h(z)` of `sum_{k>=0} p(k) z^k = h(z) / (1 - z)^denom_power`
/// for a univariate polynomial given lowest degree first.
pub fn hstar_numerator(coeffs: &[i64], denom_power: u32) -> Result<Vec<i64>> {
    let deg = coeffs.iter().rposition(|&c| c != 0).unwrap_or(0);
    if deg as u32 >= denom_power {
        return Err(Error::DimensionError(format!(
            "degree {deg} needs a denominator power above {denom_power}"
        )));
    }
    let d = denom_power as usize;
    let eval = |k: i64| -> i64 { coeffs.iter().rev().fold(0, |acc, &c| acc * k + c) };
    let values: Vec<i64> = (0..=d as i64).map(eval).collect();
    let mut binom = vec![1i64; d + 1];
    for i in 1..=d {
        binom[i] = binom[i - 1] * (d - i + 1) as i64 / i as i64;
    }
    let mut h: Vec<i64> = (0..=d)
        .map(|j| {
            (0..=j)
                .map(|i| values[j - i] * binom[i] * if i % 2 == 0 { 1 } else { -1 })
                .sum()
        })
        .collect();
    debug_assert_eq!(h[d], 0);
    h.truncate(d);
    while h.len() > 1 && *h.last().unwrap() == 0 {
        h.pop();
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hstar_examples() {
        assert_eq!(hstar_numerator(&[24, 36, 6], 3).unwrap(), vec![24, -6, -6]);
        assert_eq!(hstar_numerator(&[1, 3, 1], 3).unwrap(), vec![1, 2, -1]);
        assert_eq!(hstar_numerator(&[1], 1).unwrap(), vec![1]);
        assert!(hstar_numerator(&[1, 1], 1).is_err());
    }

    #[test]
    fn fit_recovers_polynomial() {
        let monos: Vec<(u32, u32)> = vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
        let truth = |kl: i64, ks: i64| 4 * kl * kl + 14 * kl * ks + 8 * ks * ks + 3 * kl + 5 * ks + 1;
        let pts: Vec<((i64, i64), i64)> = [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (2, 1), (2, 2), (3, 3)]
            .iter()
            .map(|&(a, b)| ((a, b), truth(a, b)))
            .collect();
        let p = fit_polynomial(&pts, &monos).unwrap();
        assert_eq!(p.coeff(1, 1), 14);
        assert_eq!(p.eval(5, 7), truth(5, 7));
        let mut bad = pts.clone();
        bad[7].1 += 1;
        assert!(fit_polynomial(&bad, &monos).is_none());
    }

    #[test]
    fn display() {
        let p = EhrhartPoly::univariate(&[1, 9, 39, 87]);
        assert_eq!(p.display_diagonal(), "87k^3 + 39k^2 + 9k + 1");
        let q = {
            let mut q = EhrhartPoly::monomial(1, 0, 4);
            q.add_term(0, 1, 2);
            q.add_term(0, 0, 1);
            q
        };
        assert_eq!(q.to_string(), "4kl + 2ks + 1");
        assert_eq!(EhrhartPoly::zero().to_string(), "0");
    }
}
