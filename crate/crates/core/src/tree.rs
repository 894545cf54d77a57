//! The Weyl-chamber tree algorithm for simply-laced algebras.
//!
//! Summands of the decomposition are labeled by strictly increasing sequences
//! `d_0 = 0 < d_1 < ... < d_s` of root-lattice points such that the chamber
//! walk `mu_n = sum_a min(n, m_a) omega_{l_a} - d_n` stays dominant and the
//! increments `delta_i = d_i - d_{i-1}` are componentwise nonincreasing.
//! Prefixes of valid labels are valid, which makes the summands the nodes of
//! a rooted tree; the root is the top component `V(omega_max)`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::kr::FactorList;
use crate::lie::{CartanData, LieError, RootVector, Weight};
use crate::ring::Character;
use crate::util::binomial;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("the tree algorithm requires a simply-laced algebra; got {0} (use the oracle instead)")]
    NotSimplyLaced(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A label `d_0 = 0 < d_1 < ... < d_s` in alpha coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Label {
    pub ds: Vec<RootVector>,
}

impl Label {
    pub fn root(rank: usize) -> Self {
        Label {
            ds: vec![RootVector::zero(rank)],
        }
    }

    /// Length `s`; the root label has length 0.
    pub fn len(&self) -> usize {
        self.ds.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        self.ds[0].0.len()
    }

    pub fn last(&self) -> &RootVector {
        self.ds.last().unwrap()
    }

    /// Successive differences `delta_1, ..., delta_s`.
    pub fn deltas(&self) -> Vec<RootVector> {
        self.ds.windows(2).map(|w| w[1].sub(&w[0])).collect()
    }

    pub fn extended(&self, d_next: RootVector) -> Label {
        let mut ds = self.ds.clone();
        ds.push(d_next);
        Label { ds }
    }

    /// Check conditions (i)-(iii) for the given factors.
    pub fn validate(&self, data: &CartanData, factors: &FactorList) -> Result<(), TreeError> {
        if self.ds.is_empty() || !self.ds[0].is_zero() {
            return Err(TreeError::InvalidLabel("label must start at d_0 = 0".into()));
        }
        let deltas = self.deltas();
        for (i, d) in deltas.iter().enumerate() {
            if d.0.iter().any(|&x| x < 0) || d.is_zero() {
                return Err(TreeError::InvalidLabel(format!(
                    "increment {} is not strictly positive",
                    i + 1
                )));
            }
            if i + 1 < deltas.len() && !deltas[i + 1].le(d) {
                return Err(TreeError::InvalidLabel(format!(
                    "increments must be componentwise nonincreasing at step {}",
                    i + 2
                )));
            }
        }
        for (n, d) in self.ds.iter().enumerate() {
            let mu = factors
                .mins_weight(n as i64, data.rank())
                .sub(&data.root_to_weight(d));
            if !mu.is_dominant() {
                return Err(TreeError::InvalidLabel(format!(
                    "mu_{n} leaves the dominant chamber"
                )));
            }
        }
        Ok(())
    }

    /// The chamber walk `mu_n` for `0 <= n <= s`.
    pub fn mu(&self, data: &CartanData, factors: &FactorList, n: usize) -> Weight {
        factors
            .mins_weight(n as i64, data.rank())
            .sub(&data.root_to_weight(&self.ds[n]))
    }
}

/// Increments `e` that extend a valid label by one step, in lexicographic
/// order.  `e` must satisfy `0 < e <= delta_s` componentwise (no upper bound
/// when `s = 0`) and keep `mu_{s+1}` dominant.
pub fn extend_increments(
    data: &CartanData,
    factors: &FactorList,
    label: &Label,
) -> Result<Vec<RootVector>, TreeError> {
    if !data.spec.is_simply_laced() {
        return Err(TreeError::NotSimplyLaced(data.spec.name()));
    }
    let rank = data.rank();
    let s = label.len();
    // x = mu_s + inc_{s+1}; children are dominant weights strictly under x
    // reachable within the increment bound.
    let x = factors
        .mins_weight(s as i64 + 1, rank)
        .sub(&data.root_to_weight(label.last()));
    let x_alpha = data.weight_to_root(&x);
    let mut bound = Vec::with_capacity(rank);
    for (i, coord) in x_alpha.iter().enumerate() {
        let mut b = coord.floor().to_integer().to_i64().unwrap_or(0);
        if s >= 1 {
            let delta_s = label.ds[s].sub(&label.ds[s - 1]);
            b = b.min(delta_s.0[i]);
        }
        if b < 0 {
            return Ok(Vec::new());
        }
        bound.push(b);
    }
    let box_size: f64 = bound.iter().map(|&b| b as f64 + 1.0).product();
    let mut incs = if box_size <= 65_536.0 {
        enumerate_box(data, &x, &bound)
    } else {
        enumerate_dominant_walk(data, &x, &bound)
    };
    incs.sort();
    Ok(incs)
}

/// Scan the whole coordinate box, keeping increments with dominant remainder.
fn enumerate_box(data: &CartanData, x: &Weight, bound: &[i64]) -> Vec<RootVector> {
    let rank = bound.len();
    let mut out = Vec::new();
    let mut e = vec![0i64; rank];
    loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == rank {
                return out;
            }
            e[i] += 1;
            if e[i] > bound[i] {
                e[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        let v = RootVector(e.clone());
        let mu = x.sub(&data.root_to_weight(&v));
        if mu.is_dominant() {
            out.push(v);
        }
    }
}

/// Walk the dominant weights under `x` by positive-root steps; efficient when
/// the box is huge but few dominant weights survive.
fn enumerate_dominant_walk(data: &CartanData, x: &Weight, bound: &[i64]) -> Vec<RootVector> {
    let rank = data.rank();
    let roots_alpha: Vec<&RootVector> = data.positive_roots.iter().collect();
    let roots_omega: Vec<Weight> = data
        .positive_roots
        .iter()
        .map(|g| data.root_to_weight(g))
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<(Weight, Vec<i64>)> = VecDeque::new();
    seen.insert(x.0.clone());
    queue.push_back((x.clone(), vec![0i64; rank]));
    let mut out = Vec::new();
    while let Some((mu, e)) = queue.pop_front() {
        if e.iter().any(|&c| c > 0) {
            out.push(RootVector(e.clone()));
        }
        'step: for (g_alpha, g_omega) in roots_alpha.iter().zip(&roots_omega) {
            let mut e2 = e.clone();
            for i in 0..rank {
                e2[i] += g_alpha.0[i];
                if e2[i] > bound[i] {
                    continue 'step;
                }
            }
            let nu = mu.sub(g_omega);
            if nu.is_dominant() && seen.insert(nu.0.clone()) {
                queue.push_back((nu, e2));
            }
        }
    }
    out
}

/// Labels extending `label` by one element, lexicographic in the increment.
pub fn extend_label(
    data: &CartanData,
    factors: &FactorList,
    label: &Label,
) -> Result<Vec<Label>, TreeError> {
    let incs = extend_increments(data, factors, label)?;
    Ok(incs
        .into_iter()
        .map(|e| label.extended(label.last().add(&e)))
        .collect())
}

/// `prod_{n,k} binom(P^(k)_n + d^(k)_n, d^(k)_n)` where `P_n` are the omega
/// coordinates of `mu_n` and `d_n = delta_n - delta_{n+1}` in alpha
/// coordinates (`delta_{s+1} = 0`).  At least 1 for valid labels.
pub fn node_multiplicity(
    data: &CartanData,
    factors: &FactorList,
    label: &Label,
) -> Result<BigInt, TreeError> {
    label.validate(data, factors)?;
    Ok(node_multiplicity_unchecked(data, factors, label))
}

fn node_multiplicity_unchecked(data: &CartanData, factors: &FactorList, label: &Label) -> BigInt {
    let deltas = label.deltas();
    let s = deltas.len();
    let mut acc = BigInt::one();
    for n in 1..=s {
        let p = label.mu(data, factors, n);
        let zero = RootVector::zero(label.rank());
        let next = if n < s { &deltas[n] } else { &zero };
        let drop = deltas[n - 1].sub(next);
        for k in 0..label.rank() {
            if drop.0[k] > 0 {
                acc *= binomial(p.0[k] + drop.0[k], drop.0[k]);
            }
        }
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeNode {
    pub label: Label,
    pub highest_weight: Weight,
    pub multiplicity: BigInt,
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn level(&self) -> usize {
        self.label.len()
    }

    /// Edge increment from the parent, `None` at the root.
    pub fn delta(&self) -> Option<RootVector> {
        let n = self.label.ds.len();
        if n >= 2 {
            Some(self.label.ds[n - 1].sub(&self.label.ds[n - 2]))
        } else {
            None
        }
    }

    pub fn count(&self) -> usize {
        1 + self.children.iter().map(TreeNode::count).sum::<usize>()
    }

    /// Depth-first traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a TreeNode)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecompositionTree {
    pub spec: crate::lie::AlgebraSpec,
    pub factors: FactorList,
    pub root: TreeNode,
}

impl DecompositionTree {
    pub fn node_count(&self) -> usize {
        self.root.count()
    }

    /// Nodes grouped by level (row `n` = labels of length `n`).
    pub fn rows(&self) -> Vec<Vec<&TreeNode>> {
        let mut rows: Vec<Vec<&TreeNode>> = Vec::new();
        self.root.walk(&mut |node| {
            let lvl = node.level();
            if rows.len() <= lvl {
                rows.resize_with(lvl + 1, Vec::new);
            }
            rows[lvl].push(node);
        });
        rows
    }
}

/// Build the complete decomposition tree.  `max_depth` defaults to the
/// largest alpha coordinate of `omega_max`, which bounds the label length.
pub fn build_tree(
    data: &CartanData,
    factors: &FactorList,
    max_depth: Option<usize>,
) -> Result<DecompositionTree, TreeError> {
    if !data.spec.is_simply_laced() {
        return Err(TreeError::NotSimplyLaced(data.spec.name()));
    }
    let rank = data.rank();
    let omega_max = factors.omega_max(rank);
    let depth = max_depth.unwrap_or_else(|| {
        data.weight_to_root(&omega_max)
            .iter()
            .map(|x| x.floor().to_integer().to_i64().unwrap_or(0).max(0) as usize)
            .max()
            .unwrap_or(0)
    });
    let root_label = Label::root(rank);
    let root = grow(data, factors, &omega_max, root_label, depth)?;
    Ok(DecompositionTree {
        spec: data.spec,
        factors: factors.clone(),
        root,
    })
}

fn grow(
    data: &CartanData,
    factors: &FactorList,
    omega_max: &Weight,
    label: Label,
    depth_left: usize,
) -> Result<TreeNode, TreeError> {
    let highest_weight = omega_max.sub(&data.root_to_weight(label.last()));
    let multiplicity = node_multiplicity_unchecked(data, factors, &label);
    let mut children = Vec::new();
    if depth_left > 0 {
        for e in extend_increments(data, factors, &label)? {
            let child = label.extended(label.last().add(&e));
            children.push(grow(data, factors, omega_max, child, depth_left - 1)?);
        }
    }
    Ok(TreeNode {
        label,
        highest_weight,
        multiplicity,
        children,
    })
}

/// Sum node multiplicities by highest weight; distinct labels with the same
/// endpoint merge here.
pub fn aggregate(tree: &DecompositionTree) -> Character {
    let mut ch = Character::zero(tree.spec);
    tree.root.walk(&mut |node| {
        ch.add_term(&node.highest_weight, &node.multiplicity);
    });
    ch
}
