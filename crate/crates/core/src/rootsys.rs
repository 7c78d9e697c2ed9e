//! Irreducible root systems built from their Cartan type.
//!
//! Conventions: Bourbaki numbering, `cartan[i][j] = <alpha_i, alpha_j^vee>`,
//! so row `i` of the Cartan matrix is the simple root `alpha_i` written in
//! fundamental-weight coordinates. Indices are 0-based in the API.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactla::{self, Rat};
use crate::firing::DeformParam;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl TypeLabel {
    pub fn new(family: Family, rank: usize) -> Result<TypeLabel> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(TypeLabel { family, rank })
        } else {
            Err(Error::InvalidType {
                family: family.as_char(),
                rank,
            })
        }
    }

    /// Every admissible label with rank at most `max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<TypeLabel> {
        use Family::*;
        let mut out = Vec::new();
        for fam in [A, B, C, D, E, F, G] {
            for n in 1..=max_rank {
                if let Ok(t) = TypeLabel::new(fam, n) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.as_char(), self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<TypeLabel> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .and_then(Family::from_char)
            .ok_or_else(|| Error::Parse(format!("unknown root system type {s:?}")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        TypeLabel::new(fam, rank)
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight(vec![0; n])
    }

    /// The fundamental weight `omega_i` (0-based).
    pub fn fundamental(n: usize, i: usize) -> Weight {
        let mut v = vec![0; n];
        v[i] = 1;
        Weight(v)
    }

    pub fn rho(n: usize) -> Weight {
        Weight(vec![1; n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A Weyl group element as a word in simple reflections (0-based letters).
///
/// The word `[i1, .., im]` stands for `s_i1 * .. * s_im`, so it acts on a
/// weight by applying `s_im` first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub root_coords: Vec<i64>,
    pub coroot_coords: Vec<i64>,
    pub fw_coords: Vec<i64>,
    /// Squared length in units where the shortest simple root has the
    /// smallest symmetrizer entry.
    pub norm2: i64,
    pub height: i64,
    pub is_long: bool,
    pub is_positive: bool,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: TypeLabel,
    pub cartan: Vec<Vec<i64>>,
    /// `d_i` proportional to the squared length of `alpha_i`; `C * diag(d)`
    /// is symmetric.
    pub symmetrizer: Vec<i64>,
    pub inv_cartan: Vec<Vec<Rat>>,
    /// Positive roots first (by height, simple roots in index order), then
    /// their negatives in the same order.
    pub roots: Vec<Root>,
    pub positive_root_ids: Vec<usize>,
    pub highest_root_id: usize,
    pub highest_short_root_id: usize,
    pub index_of_connection: i64,
    pub weyl_order: u64,
    pub simply_laced: bool,
    /// `index_of_connection * inv_cartan`, an integer matrix.
    adj_cartan: Vec<Vec<i64>>,
}

fn cartan_matrix(label: TypeLabel) -> Vec<Vec<i64>> {
    let n = label.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match label.family {
        Family::A => (0..n - 1).for_each(|i| link(&mut c, i, i + 1)),
        Family::B => {
            (0..n - 1).for_each(|i| link(&mut c, i, i + 1));
            c[n - 2][n - 1] = -2;
        }
        Family::C => {
            (0..n - 1).for_each(|i| link(&mut c, i, i + 1));
            c[n - 1][n - 2] = -2;
        }
        Family::D => {
            (0..n - 2).for_each(|i| link(&mut c, i, i + 1));
            link(&mut c, n - 3, n - 1);
        }
        Family::E => {
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            (2..n - 1).for_each(|i| link(&mut c, i, i + 1));
        }
        Family::F => {
            (0..3).for_each(|i| link(&mut c, i, i + 1));
            c[1][2] = -2;
        }
        Family::G => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
    }
    c
}

/// Minimal positive integers `d` with `c[i][j] * d[j] == c[j][i] * d[i]`.
pub(crate) fn symmetrizer_of(c: &[Vec<i64>]) -> Vec<i64> {
    let n = c.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    d[0] = Some(Rat::from_integer(1));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let di = d[i].unwrap();
        for j in 0..n {
            if j != i && c[i][j] != 0 && d[j].is_none() {
                d[j] = Some(di * Rat::new(c[j][i], c[i][j]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Rat> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let lcm = d.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / g).collect()
}

impl RootSystem {
    pub fn build(label: TypeLabel) -> Result<RootSystem> {
        let label = TypeLabel::new(label.family, label.rank)?;
        let n = label.rank;
        let cartan = cartan_matrix(label);
        let symmetrizer = symmetrizer_of(&cartan);

        let pair_simple = |b: &[i64], j: usize| -> i64 { (0..n).map(|i| b[i] * cartan[i][j]).sum() };

        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for j in 0..n {
                let p = pair_simple(&b, j);
                if p == 0 {
                    continue;
                }
                let mut r = b.clone();
                r[j] -= p;
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }

        let norm2 = |b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += b[i] * b[j] * cartan[i][j] * symmetrizer[j];
                }
            }
            s / 2
        };
        let max_norm = *symmetrizer.iter().max().unwrap();
        let simply_laced = symmetrizer.iter().all(|&x| x == max_norm);

        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|b| b.iter().all(|&x| x >= 0)).collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let make_root = |b: Vec<i64>, positive: bool| -> Root {
            let nn = norm2(&b);
            let coroot_coords = (0..n)
                .map(|i| {
                    let num = b[i] * symmetrizer[i];
                    debug_assert_eq!(num % nn, 0);
                    num / nn
                })
                .collect();
            let fw_coords = (0..n).map(|j| pair_simple(&b, j)).collect();
            let height = b.iter().sum();
            Root {
                root_coords: b,
                coroot_coords,
                fw_coords,
                norm2: nn,
                height,
                is_long: nn == max_norm,
                is_positive: positive,
            }
        };
        let npos = pos.len();
        let mut roots: Vec<Root> = pos.iter().cloned().map(|b| make_root(b, true)).collect();
        roots.extend(pos.iter().map(|b| make_root(b.iter().map(|x| -x).collect(), false)));

        let highest_root_id = (0..npos).max_by_key(|&i| roots[i].height).unwrap();
        let highest_short_root_id = (0..npos)
            .filter(|&i| !roots[i].is_long)
            .max_by_key(|&i| roots[i].height)
            .unwrap_or(highest_root_id);

        // Exponents are the dual partition of the height distribution.
        let max_h = roots[highest_root_id].height as usize;
        let mut by_height = vec![0u64; max_h + 2];
        for r in &roots[..npos] {
            by_height[r.height as usize] += 1;
        }
        let mut weyl_order = 1u64;
        for h in 1..=max_h {
            let mult = by_height[h] - by_height[h + 1];
            weyl_order *= (h as u64 + 1).pow(mult as u32);
        }

        let index_of_connection = exactla::det_i64(&cartan);
        let rc: Vec<Vec<Rat>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect())
            .collect();
        let inv_cartan = exactla::inverse(&rc).expect("Cartan matrix is invertible");
        let adj_cartan = inv_cartan
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let y = x * index_of_connection;
                        debug_assert!(y.is_integer());
                        y.to_integer()
                    })
                    .collect()
            })
            .collect();

        Ok(RootSystem {
            label,
            cartan,
            symmetrizer,
            inv_cartan,
            roots,
            positive_root_ids: (0..npos).collect(),
            highest_root_id,
            highest_short_root_id,
            index_of_connection,
            weyl_order,
            simply_laced,
            adj_cartan,
        })
    }

    /// Shorthand for `build(label.parse())`, panicking on bad input.
    pub fn of(label: &str) -> RootSystem {
        RootSystem::build(label.parse().expect("valid type label")).expect("valid type label")
    }

    pub fn rank(&self) -> usize {
        self.label.rank
    }

    pub fn num_positive(&self) -> usize {
        self.positive_root_ids.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    /// `<lambda, alpha^vee>`.
    pub fn pairing(&self, lam: &Weight, alpha: &Root) -> i64 {
        dot(&alpha.coroot_coords, &lam.0)
    }

    pub fn reflect(&self, lam: &Weight, i: usize) -> Weight {
        let mut out = lam.clone();
        self.reflect_in_place(&mut out.0, i);
        out
    }

    pub(crate) fn reflect_in_place(&self, v: &mut [i64], i: usize) {
        let p = v[i];
        if p != 0 {
            for (x, c) in v.iter_mut().zip(&self.cartan[i]) {
                *x -= p * c;
            }
        }
    }

    /// Dominant representative of `lam` together with the minimal word `w`
    /// such that `w(lam_dom) = lam`.
    pub fn dominant_rep(&self, lam: &Weight) -> Result<(Weight, WeylWord)> {
        let mut v = lam.0.clone();
        let mut word = Vec::new();
        // A reduced word never exceeds the number of positive roots.
        let cap = self.num_positive() + 1;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            if word.len() >= cap {
                return Err(Error::NonTermination(lam.clone()));
            }
            self.reflect_in_place(&mut v, i);
            word.push(i);
        }
        Ok((Weight(v), WeylWord(word)))
    }

    pub fn apply_word(&self, w: &WeylWord, lam: &Weight) -> Weight {
        let mut v = lam.0.clone();
        for &i in w.0.iter().rev() {
            self.reflect_in_place(&mut v, i);
        }
        Weight(v)
    }

    /// Orbit of `lam` under the parabolic subgroup generated by `subset`,
    /// in breadth-first order.
    pub fn weyl_orbit(&self, lam: &Weight, subset: &[usize]) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut order = vec![lam.clone()];
        seen.insert(lam.clone());
        let mut head = 0;
        while head < order.len() {
            let cur = order[head].clone();
            head += 1;
            for &i in subset {
                if cur.0[i] == 0 {
                    continue;
                }
                let next = self.reflect(&cur, i);
                if seen.insert(next.clone()) {
                    order.push(next);
                }
            }
        }
        order
    }

    pub fn full_orbit(&self, lam: &Weight) -> Vec<Weight> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.weyl_orbit(lam, &all)
    }

    /// `rho_k = sum_i k(alpha_i) omega_i`.
    pub fn rho_k(&self, k: &DeformParam) -> Weight {
        Weight((0..self.rank()).map(|i| k.value(self.roots[i].is_long)).collect())
    }

    /// `eta_k(lam) = lam + w_lam(rho_k)`.
    pub fn eta(&self, lam: &Weight, k: &DeformParam) -> Result<Weight> {
        let (_, w) = self.dominant_rep(lam)?;
        Ok(lam.add(&self.apply_word(&w, &self.rho_k(k))))
    }

    pub fn i01_set(&self, lam_dom: &Weight) -> Result<Vec<usize>> {
        self.coord_set(lam_dom, |c| c == 0 || c == 1)
    }

    pub fn i0_set(&self, lam_dom: &Weight) -> Result<Vec<usize>> {
        self.coord_set(lam_dom, |c| c == 0)
    }

    fn coord_set(&self, lam: &Weight, keep: impl Fn(i64) -> bool) -> Result<Vec<usize>> {
        if !lam.is_dominant() {
            return Err(Error::NotDominant(lam.clone()));
        }
        Ok((0..self.rank()).filter(|&i| keep(lam.0[i])).collect())
    }

    /// True when some positive root pairs to `-1` with `lam`.
    pub fn forbidden_sym(&self, lam: &Weight) -> bool {
        self.positive_roots().iter().any(|a| self.pairing(lam, a) == -1)
    }

    /// Root coordinates of a weight scaled by `index_of_connection`.
    pub fn root_coords_scaled(&self, lam: &Weight) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).map(|i| lam.0[i] * self.adj_cartan[i][j]).sum())
            .collect()
    }

    pub fn root_coords(&self, lam: &Weight) -> Vec<Rat> {
        let f = self.index_of_connection;
        self.root_coords_scaled(lam)
            .into_iter()
            .map(|x| Rat::new(x, f))
            .collect()
    }

    /// Integer root coordinates, if the weight lies in the root lattice.
    pub fn root_coords_int(&self, lam: &Weight) -> Option<Vec<i64>> {
        let f = self.index_of_connection;
        self.root_coords_scaled(lam)
            .into_iter()
            .map(|x| if x % f == 0 { Some(x / f) } else { None })
            .collect()
    }

    /// The weight `sum_i c_i alpha_i` in fundamental-weight coordinates.
    pub fn weight_from_root_coords(&self, c: &[i64]) -> Weight {
        let n = self.rank();
        Weight((0..n).map(|j| (0..n).map(|i| c[i] * self.cartan[i][j]).sum()).collect())
    }

    /// `<v, alpha_j^vee>` for a rational vector in root coordinates.
    pub fn pairing_rc_simple(&self, v: &[Rat], j: usize) -> Rat {
        (0..self.rank()).map(|i| v[i] * self.cartan[i][j]).sum()
    }

    /// `<v, alpha^vee>` for a rational vector in root coordinates and a root
    /// given by its coroot coordinates.
    pub fn pairing_rc(&self, v: &[Rat], coroot: &[i64]) -> Rat {
        (0..self.rank())
            .map(|j| self.pairing_rc_simple(v, j) * coroot[j])
            .sum()
    }

    /// Invariant inner product on root coordinates, normalized so that
    /// `(alpha_i, alpha_i) = symmetrizer[i]`.
    pub fn inner_rc(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let n = self.rank();
        let mut s = Rat::from_integer(0);
        for i in 0..n {
            if u[i] == Rat::from_integer(0) {
                continue;
            }
            for j in 0..n {
                s += u[i] * v[j] * (self.cartan[i][j] * self.symmetrizer[j]);
            }
        }
        s / 2
    }

    pub fn is_simple(&self, root_id: usize) -> bool {
        root_id < self.rank()
    }

    /// Index of the root with the given root coordinates.
    pub fn root_id(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.root_coords == coords)
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
