//! The raw Kirillov-Reshetikhin multiplicity sum over partition
//! configurations.  Valid for every simple type; this is the brute-force
//! oracle the tree algorithm is checked against.
//!
//! A configuration assigns to each node `k` a partition `nu^(k)`, and the
//! vacancy numbers are
//!
//! ```text
//! P^(k)_n = sum_a min(n, m_a) [k = l_a]
//!         - 2 sum_h min(n, h) nu^(k)_h
//!         + sum_{j != k} sum_h min(-c_kj n, -c_jk h) nu^(j)_h
//! ```
//!
//! A configuration contributes iff every vacancy number is nonnegative, and
//! then its weight in the multiplicity sum is `prod binom(P + nu, nu)`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::lie::{AlgebraSpec, CartanData, LieError, RootVector, Weight};
use crate::util::{binomial, partition_count, partitions_with_cap};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KrError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("factor node {0} out of range for rank {1}")]
    BadFactor(usize, usize),
    #[error("cannot parse factor list `{0}` (expected e.g. `4x1,2x3`)")]
    ParseFactors(String),
}

/// One tensor factor `W_m(l)`: node index `l` (1-based) and coefficient `m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Factor {
    pub node: usize,
    pub m: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorList {
    pub factors: Vec<Factor>,
}

impl FactorList {
    pub fn new(spec: AlgebraSpec, factors: Vec<(usize, i64)>) -> Result<Self, KrError> {
        for &(node, m) in &factors {
            if node == 0 || node > spec.rank || m < 0 {
                return Err(KrError::BadFactor(node, spec.rank));
            }
        }
        Ok(FactorList {
            factors: factors.into_iter().map(|(node, m)| Factor { node, m }).collect(),
        })
    }

    pub fn single(spec: AlgebraSpec, node: usize, m: i64) -> Result<Self, KrError> {
        FactorList::new(spec, vec![(node, m)])
    }

    /// Parse `"4x1,2x3"` as factors (node 4, m 1), (node 2, m 3).
    pub fn parse(spec: AlgebraSpec, s: &str) -> Result<Self, KrError> {
        let mut factors = Vec::new();
        for part in s.split(',') {
            let (l, m) = part
                .trim()
                .split_once(['x', 'X'])
                .ok_or_else(|| KrError::ParseFactors(s.to_string()))?;
            let l: usize = l.trim().parse().map_err(|_| KrError::ParseFactors(s.to_string()))?;
            let m: i64 = m.trim().parse().map_err(|_| KrError::ParseFactors(s.to_string()))?;
            factors.push((l, m));
        }
        FactorList::new(spec, factors)
    }

    /// Highest weight of the tensor product, `sum_a m_a omega_{l_a}`.
    pub fn omega_max(&self, rank: usize) -> Weight {
        let mut w = vec![0i64; rank];
        for f in &self.factors {
            w[f.node - 1] += f.m;
        }
        Weight(w)
    }

    /// `sum_a min(n, m_a) omega_{l_a}`; the chamber-walk anchor at step `n`.
    pub fn mins_weight(&self, n: i64, rank: usize) -> Weight {
        let mut w = vec![0i64; rank];
        for f in &self.factors {
            w[f.node - 1] += n.min(f.m);
        }
        Weight(w)
    }

    pub fn total_m(&self) -> i64 {
        self.factors.iter().map(|f| f.m).sum()
    }
}

/// One choice of partitions: `partitions[k][n-1]` counts parts of size `n`
/// in `nu^(k)` (trailing zeros trimmed).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Config {
    pub partitions: Vec<Vec<i64>>,
}

impl Config {
    pub fn empty(rank: usize) -> Self {
        Config {
            partitions: vec![Vec::new(); rank],
        }
    }

    pub fn count(&self, k: usize, n: i64) -> i64 {
        let row = &self.partitions[k];
        if n >= 1 && (n as usize) <= row.len() {
            row[n as usize - 1]
        } else {
            0
        }
    }

    pub fn largest_part(&self) -> i64 {
        self.partitions
            .iter()
            .map(|row| row.len() as i64)
            .max()
            .unwrap_or(0)
    }

    /// Node sizes `n_k = sum_n n * nu^(k)_n`, the alpha coordinates consumed.
    pub fn sizes(&self) -> Vec<i64> {
        self.partitions
            .iter()
            .map(|row| row.iter().enumerate().map(|(i, c)| (i as i64 + 1) * c).sum())
            .collect()
    }
}

/// Vacancy numbers `P^(k)_n` for `1 <= k <= rank`, `1 <= n <= upto_n`.
/// Row `k-1`, entry `n-1`.  Values may be negative.
pub fn vacancy_numbers(
    data: &CartanData,
    factors: &FactorList,
    cfg: &Config,
    upto_n: i64,
) -> Vec<Vec<i64>> {
    let r = data.rank();
    let mut out = vec![vec![0i64; upto_n.max(0) as usize]; r];
    for k in 0..r {
        for n in 1..=upto_n {
            let mut p: i64 = factors
                .factors
                .iter()
                .filter(|f| f.node == k + 1)
                .map(|f| n.min(f.m))
                .sum();
            for (h0, &count) in cfg.partitions[k].iter().enumerate() {
                let h = h0 as i64 + 1;
                p -= 2 * n.min(h) * count;
            }
            for j in 0..r {
                if j == k || data.cartan[k][j] == 0 {
                    continue;
                }
                for (h0, &count) in cfg.partitions[j].iter().enumerate() {
                    let h = h0 as i64 + 1;
                    p += (-data.cartan[k][j] * n).min(-data.cartan[j][k] * h) * count;
                }
            }
            out[k][n as usize - 1] = p;
        }
    }
    out
}

/// Outcome of a support query: `lam` may simply not sit under `omega_max`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Support<T> {
    /// `omega_max - lam` is not a nonnegative integer combination of simple roots.
    Outside,
    Inside(T),
}

impl<T> Support<T> {
    pub fn inside(self) -> Option<T> {
        match self {
            Support::Outside => None,
            Support::Inside(t) => Some(t),
        }
    }
}

/// Beyond this many raw partition tuples the naive scan hands over to the
/// tree-backed reconstruction (simply-laced only).
const NAIVE_LIMIT: f64 = 2e7;

/// Part sizes are capped at `sum_a m_a` plus the largest alpha coordinate of
/// `omega_max`; vacancy numbers are checked up to three times that (they are
/// monotone in `n` past every breakpoint, so this covers all `n`).
fn part_cap(data: &CartanData, factors: &FactorList) -> i64 {
    let omega_max = factors.omega_max(data.rank());
    let max_coord = data
        .weight_to_root(&omega_max)
        .iter()
        .map(|x| x.ceil().to_integer())
        .max()
        .unwrap_or_else(BigInt::zero);
    let max_coord: i64 = max_coord.try_into().unwrap_or(0);
    factors.total_m() + max_coord
}

fn check_bound(data: &CartanData, factors: &FactorList, cap: i64) -> i64 {
    let max_c = data
        .cartan
        .iter()
        .flatten()
        .map(|c| c.abs())
        .max()
        .unwrap_or(1);
    max_c * cap + factors.factors.iter().map(|f| f.m).max().unwrap_or(0) + 1
}

/// All configurations with every vacancy number nonnegative, for the given
/// dominant target weight.
pub fn admissible_configs(
    data: &CartanData,
    factors: &FactorList,
    lam: &Weight,
) -> Support<Vec<Config>> {
    let rank = data.rank();
    let omega_max = factors.omega_max(rank);
    let diff = omega_max.sub(lam);
    let n_vec = match data.weight_to_root_integral(&diff) {
        Some(v) if v.0.iter().all(|&x| x >= 0) => v,
        _ => return Support::Outside,
    };
    let cap = part_cap(data, factors);
    let work: f64 = n_vec.0.iter().map(|&n| partition_count(n)).product();
    if work > NAIVE_LIMIT && data.spec.is_simply_laced() {
        return Support::Inside(configs_via_tree(data, factors, lam));
    }
    Support::Inside(enumerate_configs(data, factors, &n_vec, cap))
}

/// Depth-first scan over per-node partitions, pruning as soon as all Dynkin
/// neighbors of some node are fixed and one of its vacancy numbers went
/// negative.
fn enumerate_configs(
    data: &CartanData,
    factors: &FactorList,
    n_vec: &RootVector,
    cap: i64,
) -> Vec<Config> {
    let rank = data.rank();
    let nbound = check_bound(data, factors, cap);
    let choices: Vec<Vec<Vec<i64>>> = n_vec
        .0
        .iter()
        .map(|&n| partitions_with_cap(n, cap))
        .collect();
    let mut out = Vec::new();
    let mut cfg = Config::empty(rank);
    fn neighbors_fixed(data: &CartanData, k: usize, fixed: usize) -> bool {
        if k >= fixed {
            return false;
        }
        (0..data.rank()).all(|j| j == k || data.cartan[k][j] == 0 || j < fixed)
    }
    fn rec(
        data: &CartanData,
        factors: &FactorList,
        choices: &[Vec<Vec<i64>>],
        nbound: i64,
        cfg: &mut Config,
        k: usize,
        out: &mut Vec<Config>,
    ) {
        let rank = data.rank();
        if k == rank {
            // Every vacancy number is determined and was already checked.
            out.push(cfg.clone());
            return;
        }
        for choice in &choices[k] {
            cfg.partitions[k] = choice.clone();
            let mut ok = true;
            'check: for j in 0..=k {
                if !neighbors_fixed(data, j, k + 1) {
                    continue;
                }
                let p = vacancy_single(data, factors, cfg, j, nbound);
                if p.iter().any(|&x| x < 0) {
                    ok = false;
                    break 'check;
                }
            }
            if ok {
                rec(data, factors, choices, nbound, cfg, k + 1, out);
            }
        }
        cfg.partitions[k] = Vec::new();
    }
    rec(data, factors, &choices, nbound, &mut cfg, 0, &mut out);
    out
}

fn vacancy_single(
    data: &CartanData,
    factors: &FactorList,
    cfg: &Config,
    k: usize,
    upto_n: i64,
) -> Vec<i64> {
    let mut out = Vec::with_capacity(upto_n as usize);
    for n in 1..=upto_n {
        let mut p: i64 = factors
            .factors
            .iter()
            .filter(|f| f.node == k + 1)
            .map(|f| n.min(f.m))
            .sum();
        for (h0, &count) in cfg.partitions[k].iter().enumerate() {
            let h = h0 as i64 + 1;
            p -= 2 * n.min(h) * count;
        }
        for j in 0..data.rank() {
            if j == k || data.cartan[k][j] == 0 {
                continue;
            }
            for (h0, &count) in cfg.partitions[j].iter().enumerate() {
                let h = h0 as i64 + 1;
                p += (-data.cartan[k][j] * n).min(-data.cartan[j][k] * h) * count;
            }
        }
        out.push(p);
    }
    out
}

/// Reconstruct configurations from tree labels: the alpha coordinates of the
/// label increments are the column heights of the partitions.
fn configs_via_tree(data: &CartanData, factors: &FactorList, lam: &Weight) -> Vec<Config> {
    let tree = crate::tree::build_tree(data, factors, None)
        .expect("tree reconstruction requires a simply-laced algebra");
    let mut out = Vec::new();
    collect_tree_configs(&tree.root, lam, &mut out);
    out
}

fn collect_tree_configs(node: &crate::tree::TreeNode, lam: &Weight, out: &mut Vec<Config>) {
    if &node.highest_weight == lam {
        out.push(config_from_label(&node.label));
    }
    for c in &node.children {
        collect_tree_configs(c, lam, out);
    }
}

/// The bijection between labels and configurations: `nu^(k)` has column `n`
/// of height `delta_n[k]`, so `nu^(k)_n = delta_n[k] - delta_{n+1}[k]`.
pub fn config_from_label(label: &crate::tree::Label) -> Config {
    let deltas = label.deltas();
    let rank = label.rank();
    let s = deltas.len();
    let mut partitions = vec![Vec::new(); rank];
    for (k, row) in partitions.iter_mut().enumerate() {
        for n in 0..s {
            let next = if n + 1 < s { deltas[n + 1].0[k] } else { 0 };
            row.push(deltas[n].0[k] - next);
        }
        while row.last() == Some(&0) {
            row.pop();
        }
    }
    Config { partitions }
}

/// The multiplicity `n_lam`: sum over admissible configurations of the
/// binomial product.
pub fn kr_multiplicity(
    data: &CartanData,
    factors: &FactorList,
    lam: &Weight,
) -> Support<BigInt> {
    let configs = match admissible_configs(data, factors, lam) {
        Support::Outside => return Support::Outside,
        Support::Inside(c) => c,
    };
    let mut total = BigInt::zero();
    for cfg in &configs {
        total += config_weight(data, factors, cfg);
    }
    Support::Inside(total)
}

/// `prod_{n,k} binom(P^(k)_n + nu^(k)_n, nu^(k)_n)` for one admissible config.
pub fn config_weight(data: &CartanData, factors: &FactorList, cfg: &Config) -> BigInt {
    let h = cfg.largest_part().max(1);
    let p = vacancy_numbers(data, factors, cfg, h);
    let mut acc = BigInt::from(1);
    for k in 0..data.rank() {
        for n in 1..=h {
            let count = cfg.count(k, n);
            if count > 0 {
                acc *= binomial(p[k][n as usize - 1] + count, count);
            }
        }
    }
    acc
}
