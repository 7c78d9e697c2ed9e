//! Type A in the classical coordinates of `Z^(n+1)`.

use std::collections::HashSet;

/// Integer partitions of `n` in decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Number of labeled forests on `sum(parts)` vertices whose component sizes
/// are `parts`.
pub fn f_lambda(parts: &[usize]) -> i64 {
    let n: usize = parts.iter().sum();
    let mut count = factorial(n);
    for &p in parts {
        count /= factorial(p);
    }
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    for run in sorted.chunk_by(|a, b| a == b) {
        count /= factorial(run.len());
    }
    for &p in parts {
        if p >= 2 {
            count *= (p as i128).pow(p as u32 - 2);
        }
    }
    count as i64
}

/// Compositions of `i` into `len(parts)` nonnegative pieces with piece `j`
/// at most `parts[j]`.
pub fn compositions_fitting(i: usize, parts: &[usize]) -> u64 {
    let mut ways = vec![0u64; i + 1];
    ways[0] = 1;
    for &p in parts {
        let mut next = vec![0u64; i + 1];
        for (s, &w) in ways.iter().enumerate() {
            for t in 0..=p.min(i - s) {
                next[s + t] += w;
            }
        }
        ways = next;
    }
    ways[i]
}

/// Integer points of the permutohedron of the weakly decreasing vector `a`.
pub fn permutohedron_points(a: &[i64]) -> Vec<Vec<i64>> {
    let m = a.len();
    let lo = *a.iter().min().unwrap();
    let hi = *a.iter().max().unwrap();
    let total: i64 = a.iter().sum();
    let mut sorted_a = a.to_vec();
    sorted_a.sort_unstable_by(|x, y| y.cmp(x));
    let prefix: Vec<i64> = sorted_a
        .iter()
        .scan(0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect();
    let mut out = Vec::new();
    let mut b = vec![lo; m];
    loop {
        if b.iter().sum::<i64>() == total {
            let mut s = b.clone();
            s.sort_unstable_by(|x, y| y.cmp(x));
            let mut acc = 0;
            if s.iter().enumerate().all(|(j, &x)| {
                acc += x;
                acc <= prefix[j]
            }) {
                out.push(b.clone());
            }
        }
        let mut c = 0;
        loop {
            if c == m {
                return out;
            }
            if b[c] < hi {
                b[c] += 1;
                break;
            }
            b[c] = lo;
            c += 1;
        }
    }
}

fn block_sums(b: &[i64], parts: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(parts.len());
    let mut at = 0;
    for &p in parts {
        out.push(b[at..at + p].iter().sum());
        at += p;
    }
    out
}

/// Right-hand side of the type A count: a sum over partitions of
/// `len(a)` of block-quotient sizes times forest counts times `k` powers.
pub fn typea_count(a: &[i64], k: i64) -> i64 {
    let m = a.len();
    let points = permutohedron_points(a);
    partitions(m)
        .iter()
        .map(|parts| {
            let q: HashSet<Vec<i64>> = points.iter().map(|b| block_sums(b, parts)).collect();
            q.len() as i64 * f_lambda(parts) * k.pow((m - parts.len()) as u32)
        })
        .sum()
}

/// `#Pi(a + k rho) cap Z^(n+1)` by enumeration.
pub fn typea_direct_count(a: &[i64], k: i64) -> usize {
    let m = a.len();
    let shifted: Vec<i64> = a.iter().enumerate().map(|(i, x)| x + k * (m - 1 - i) as i64).collect();
    permutohedron_points(&shifted).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forest_counts() {
        assert_eq!(f_lambda(&[2, 1]), 3);
        assert_eq!(f_lambda(&[4]), 16);
        let total: i64 = partitions(4).iter().map(|p| f_lambda(p)).sum();
        assert_eq!(total, 38);
    }

    #[test]
    fn compositions() {
        assert_eq!(compositions_fitting(1, &[3, 1, 1]), 3);
        assert_eq!(compositions_fitting(2, &[2, 1]), 2);
        assert_eq!(compositions_fitting(0, &[]), 1);
    }

    #[test]
    fn small_count() {
        assert_eq!(typea_count(&[1, 0, 0], 1), typea_direct_count(&[1, 0, 0], 1) as i64);
        assert_eq!(permutohedron_points(&[3, 1, 0]).len(), typea_direct_count(&[1, 0, 0], 1));
    }
}
