//! Reference values checked by `verify tables`.

/// `(type, number of weights whose dominant representative is 0/1)`.
pub const DOMAIN_SIZES: [(&str, usize); 9] = [
    ("A1", 3),
    ("A2", 13),
    ("B2", 17),
    ("G2", 25),
    ("A3", 75),
    ("B3", 147),
    ("C3", 147),
    ("A4", 541),
    ("D4", 865),
];

/// Types whose scan is slow enough to need `--slow`.
pub const SLOW_SCANS: [&str; 2] = ["A4", "D4"];

/// A counterexample `(lambda, lhs, rhs)`, polynomials as `(kl, ks, coeff)`.
pub type Counterexample = (&'static [i64], &'static [(u32, u32, i64)], &'static [(u32, u32, i64)]);

const C3_A_LHS: &[(u32, u32, i64)] = &[(2, 0, 4), (1, 1, 14), (0, 2, 8), (1, 0, 3), (0, 1, 5), (0, 0, 1)];
const C3_A_RHS: &[(u32, u32, i64)] = &[(2, 0, 4), (1, 1, 13), (0, 2, 8), (1, 0, 3), (0, 1, 5), (0, 0, 1)];
const C3_B_LHS: &[(u32, u32, i64)] = &[(2, 0, 2), (1, 1, 7), (0, 2, 4), (1, 0, 3), (0, 1, 4), (0, 0, 1)];
const C3_B_RHS: &[(u32, u32, i64)] = &[(2, 0, 2), (1, 1, 8), (0, 2, 4), (1, 0, 3), (0, 1, 4), (0, 0, 1)];
const D4_A_LHS: &[(u32, u32, i64)] = &[(3, 0, 106), (2, 0, 51), (1, 0, 11), (0, 0, 1)];
const D4_A_RHS: &[(u32, u32, i64)] = &[(3, 0, 105), (2, 0, 51), (1, 0, 11), (0, 0, 1)];
const D4_B_LHS: &[(u32, u32, i64)] = &[(3, 0, 53), (2, 0, 39), (1, 0, 10), (0, 0, 1)];
const D4_B_RHS: &[(u32, u32, i64)] = &[(3, 0, 54), (2, 0, 39), (1, 0, 10), (0, 0, 1)];

pub fn counterexamples(label: &str) -> Vec<Counterexample> {
    match label {
        "G2" => vec![
            (&[1, 0], &[(1, 0, 4), (0, 1, 2), (0, 0, 1)], &[(1, 0, 3), (0, 1, 2), (0, 0, 1)]),
            (&[-1, 1], &[(1, 0, 2), (0, 1, 1), (0, 0, 1)], &[(1, 0, 3), (0, 1, 1), (0, 0, 1)]),
        ],
        "C3" => vec![
            (&[-1, 1, 0], C3_A_LHS, C3_A_RHS),
            (&[0, 1, 0], C3_A_LHS, C3_A_RHS),
            (&[0, -1, 1], C3_B_LHS, C3_B_RHS),
            (&[1, -1, 1], C3_B_LHS, C3_B_RHS),
        ],
        "D4" => vec![
            (&[-1, 1, 0, 0], D4_A_LHS, D4_A_RHS),
            (&[0, 1, 0, 0], D4_A_LHS, D4_A_RHS),
            (&[0, 1, -1, 0], D4_A_LHS, D4_A_RHS),
            (&[0, 1, 0, -1], D4_A_LHS, D4_A_RHS),
            (&[0, -1, 1, 1], D4_B_LHS, D4_B_RHS),
            (&[1, -1, 1, 1], D4_B_LHS, D4_B_RHS),
            (&[1, -1, 0, 1], D4_B_LHS, D4_B_RHS),
            (&[1, -1, 1, 0], D4_B_LHS, D4_B_RHS),
        ],
        _ => Vec::new(),
    }
}

/// B3 rows: `(lambda, sym diagonal, sym(-1), tr diagonal, tr(-1))`, lowest
/// degree first. The omega_2 symmetric constant term is printed as `12k`
/// in the source table; 12 is the value used here.
pub const B3_TABLE: [([i64; 3], &[i64], i64, &[i64], i64); 8] = [
    ([0, 0, 0], &[1, 9, 39, 87], -56, &[1, 9, 39, 87], -56),
    ([1, 0, 0], &[6, 36, 78], 48, &[1, 8, 23], 16),
    ([0, 1, 0], &[12, 48, 36], 0, &[1, 6, 7], 2),
    ([0, 0, 1], &[8, 48, 108, 87], -19, &[1, 9, 39, 87], -56),
    ([1, 1, 0], &[24, 60, 12], -24, &[1, 4, 1], -2),
    ([1, 0, 1], &[24, 84, 78], 18, &[1, 6, 12], 7),
    ([0, 1, 1], &[24, 60, 36], 0, &[1, 4, 4], 1),
    ([1, 1, 1], &[48, 72, 12], -12, &[1, 3, 1], -1),
];

/// Per-node maxima `(numerator, denominator)` for the exceptional types.
pub const EXCEPTIONAL_MAXIMA: [(&str, &[(i64, i64)]); 5] = [
    ("G2", &[(3, 2), (1, 2)]),
    ("F4", &[(1, 1), (5, 3), (11, 6), (3, 2)]),
    ("E6", &[(5, 4), (3, 2), (17, 10), (11, 6), (17, 10), (5, 4)]),
    ("E7", &[(3, 2), (12, 7), (11, 6), (23, 12), (28, 15), (7, 4), (4, 3)]),
    ("E8", &[(7, 4), (15, 8), (27, 14), (59, 30), (39, 20), (23, 12), (11, 6), (3, 2)]),
];

/// `rank * (2 - kappa)` for the exceptional types.
pub const KAPPA_STATISTICS: [(&str, i64, i64); 5] = [("G2", 1, 1), ("F4", 2, 3), ("E6", 1, 1), ("E7", 7, 12), ("E8", 8, 30)];

/// Closed form for the classical maxima at 1-based node `i`.
pub fn classical_max(family: char, n: i64, i: i64) -> (i64, i64) {
    let sum_a = (i - 1) * (n - i + 1) + (n - i) * i;
    match family {
        'A' => (sum_a, i * (n - i + 1)),
        'B' if i == 1 => (1, 2),
        'B' if i == n => (2 * n - 2, n),
        'B' => (2 * i - 2, i),
        'C' if i == 1 => (1, 1),
        'C' if i == n => (2 * n - 4, n),
        'C' => (2 * i - 1, i),
        'D' if i == 1 => (1, 1),
        'D' if i >= n - 1 => (2 * n - 4, n),
        'D' if i == n - 2 => (2 * n - 5, n - 2),
        'D' => (2 * i - 1, i),
        _ => unreachable!("classical families only"),
    }
}
