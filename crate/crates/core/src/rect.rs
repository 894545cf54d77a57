//! Young-diagram specialization for sl_n: decompose tensor products of
//! rectangular representations by alternately adding columns and moving
//! boxes down in dominance order.
//!
//! The per-step bookkeeping is the vector of *dominance numbers*: how many
//! boxes crossed the bottom of row `k` in the latest move.  A move is legal
//! when its dominance numbers are bounded by the previous move's, and the
//! piece multiplicities come from the same binomial product as the
//! Weyl-chamber tree, with `P^(k)_n` = number of columns of height `k`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::util::binomial;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RectError {
    #[error("rectangle must have at least one row")]
    EmptyRectangle,
    #[error("shape must be weakly decreasing and positive, got {0:?}")]
    BadShape(Vec<i64>),
    #[error("|lambda| = {0} does not match |mu| = {1}")]
    SizeMismatch(i64, i64),
    #[error("cannot parse rectangle list `{0}` (expected e.g. `3x2,2x1,1x1`)")]
    ParseRects(String),
}

/// A rectangular diagram: `rows` x `cols`, i.e. the representation
/// `V(cols * omega_rows)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rectangle {
    pub rows: usize,
    pub cols: i64,
}

impl Rectangle {
    pub fn new(rows: usize, cols: i64) -> Result<Self, RectError> {
        if rows == 0 || cols < 0 {
            return Err(RectError::EmptyRectangle);
        }
        Ok(Rectangle { rows, cols })
    }

    pub fn parse_list(s: &str) -> Result<Vec<Rectangle>, RectError> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let (r, c) = part
                .trim()
                .split_once(['x', 'X'])
                .ok_or_else(|| RectError::ParseRects(s.to_string()))?;
            let rows: usize = r.trim().parse().map_err(|_| RectError::ParseRects(s.to_string()))?;
            let cols: i64 = c.trim().parse().map_err(|_| RectError::ParseRects(s.to_string()))?;
            out.push(Rectangle::new(rows, cols)?);
        }
        Ok(out)
    }
}

/// A diagram along with the dominance numbers of the move that produced it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramState {
    /// Weakly decreasing row lengths, no trailing zeros.
    pub shape: Vec<i64>,
    /// Boxes moved past the bottom of row `k` in the latest move
    /// (`dominance_numbers[k-1]`, trailing zeros trimmed).
    pub dominance_numbers: Vec<i64>,
}

impl DiagramState {
    pub fn empty() -> Self {
        DiagramState {
            shape: Vec::new(),
            dominance_numbers: Vec::new(),
        }
    }

    pub fn is_identity_move(&self) -> bool {
        self.dominance_numbers.is_empty()
    }

    pub fn boxes(&self) -> i64 {
        self.shape.iter().sum()
    }

    /// Number of columns of height exactly `k` (1-based).
    pub fn columns_of_height(&self, k: usize) -> i64 {
        let a = self.shape.get(k - 1).copied().unwrap_or(0);
        let b = self.shape.get(k).copied().unwrap_or(0);
        a - b
    }

    /// Column heights, tallest first.
    pub fn column_heights(&self) -> Vec<i64> {
        let width = self.shape.first().copied().unwrap_or(0);
        (1..=width)
            .map(|j| self.shape.iter().filter(|&&r| r >= j).count() as i64)
            .collect()
    }
}

fn check_shape(shape: &[i64]) -> Result<(), RectError> {
    let decreasing = shape.windows(2).all(|w| w[0] >= w[1]);
    if !decreasing || shape.iter().any(|&r| r < 0) {
        return Err(RectError::BadShape(shape.to_vec()));
    }
    Ok(())
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Add full columns of the given heights to a diagram.
pub fn add_columns(shape: &[i64], columns: &[i64]) -> Vec<i64> {
    let depth = columns.iter().copied().max().unwrap_or(0).max(shape.len() as i64) as usize;
    let mut out: Vec<i64> = (0..depth)
        .map(|i| shape.get(i).copied().unwrap_or(0))
        .collect();
    for &h in columns {
        for row in out.iter_mut().take(h as usize) {
            *row += 1;
        }
    }
    trim(out)
}

fn cumsum_at(shape: &[i64], k: usize) -> i64 {
    shape.iter().take(k).sum()
}

/// One step of the algorithm: add the given columns to the state's diagram,
/// then list every diagram reachable by moving boxes down whose dominance
/// numbers are bounded by `prev_dominance` (unconstrained when `None`).
/// The identity move is always included.
pub fn advance(
    state: &DiagramState,
    columns: &[i64],
    prev_dominance: Option<&[i64]>,
) -> Result<Vec<DiagramState>, RectError> {
    check_shape(&state.shape)?;
    let yprime = add_columns(&state.shape, columns);
    Ok(moves_down(&yprime, prev_dominance))
}

/// All partitions reachable from `yprime` by downward box moves within the
/// dominance-number budget.  Output is sorted with the identity move first.
fn moves_down(yprime: &[i64], prev: Option<&[i64]>) -> Vec<DiagramState> {
    let total: i64 = yprime.iter().sum();
    let max_rows = total.max(0) as usize;
    let mut out = Vec::new();
    let mut rows: Vec<i64> = Vec::new();
    // cum bounds: cum_min_k <= cumsum_k(Y) <= cumsum_k(yprime)
    let cum_min = |k: usize| -> i64 {
        let cp = cumsum_at(yprime, k);
        match prev {
            None => 0,
            Some(p) => cp - p.get(k - 1).copied().unwrap_or(0),
        }
    };
    fn rec(
        yprime: &[i64],
        total: i64,
        max_rows: usize,
        cum_min: &dyn Fn(usize) -> i64,
        rows: &mut Vec<i64>,
        placed: i64,
        out: &mut Vec<DiagramState>,
    ) {
        if placed == total {
            let shape = trim(rows.clone());
            let mut doms = Vec::new();
            let depth = yprime.len().max(shape.len());
            for k in 1..=depth {
                doms.push(cumsum_at(yprime, k) - cumsum_at(&shape, k));
            }
            out.push(DiagramState {
                shape,
                dominance_numbers: trim(doms),
            });
            return;
        }
        let i = rows.len();
        if i >= max_rows {
            return;
        }
        let prev_len = if i == 0 { i64::MAX } else { rows[i - 1] };
        let hi = prev_len.min(cumsum_at(yprime, i + 1) - placed).min(total - placed);
        let lo = (cum_min(i + 1) - placed).max(1);
        let mut r = hi;
        while r >= lo {
            rows.push(r);
            rec(yprime, total, max_rows, cum_min, rows, placed + r, out);
            rows.pop();
            r -= 1;
        }
    }
    if total == 0 {
        return vec![DiagramState::empty()];
    }
    rec(yprime, total, max_rows, &cum_min, &mut rows, 0, &mut out);
    // Identity move first, then by shape; deterministic output order.
    out.sort_by(|a, b| b.shape.cmp(&a.shape));
    out
}

/// Check that later rows do not violate the budget that already ran out.
/// (Bound rows implicitly via cum_min; nothing else needed.)
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectNode {
    /// The working diagram `Y_n` of this node.
    pub state: DiagramState,
    /// `Y_n` with all remaining rectangle columns appended; the piece of the
    /// decomposition this node contributes.
    pub final_shape: Vec<i64>,
    pub multiplicity: BigInt,
    pub level: usize,
    pub children: Vec<RectNode>,
}

impl RectNode {
    pub fn count(&self) -> usize {
        1 + self.children.iter().map(RectNode::count).sum::<usize>()
    }

    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a RectNode)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectTree {
    pub rects: Vec<Rectangle>,
    pub root: RectNode,
}

impl RectTree {
    pub fn node_count(&self) -> usize {
        self.root.count()
    }

    /// Multiplicity per final shape (row lengths).
    pub fn aggregate(&self) -> BTreeMap<Vec<i64>, BigInt> {
        let mut out: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        self.root.walk(&mut |node| {
            let entry = out
                .entry(node.final_shape.clone())
                .or_insert_with(num_traits::Zero::zero);
            *entry += &node.multiplicity;
        });
        out
    }

    /// Multiplicities as sl_n weights (rank n-1).  Shapes taller than `n`
    /// rows vanish; columns of full height `n` are deleted.
    pub fn aggregate_sln(&self, n: usize) -> BTreeMap<crate::lie::Weight, BigInt> {
        let mut out = BTreeMap::new();
        for (shape, mult) in self.aggregate() {
            if shape.len() > n {
                continue;
            }
            let coords: Vec<i64> = (1..n)
                .map(|k| {
                    shape.get(k - 1).copied().unwrap_or(0) - shape.get(k).copied().unwrap_or(0)
                })
                .collect();
            let entry = out
                .entry(crate::lie::Weight(coords))
                .or_insert_with(num_traits::Zero::zero);
            *entry += mult;
        }
        out.retain(|_, m: &mut BigInt| !num_traits::Zero::is_zero(m));
        out
    }
}

/// `prod_n prod_k binom(P^(k)_n + d^(k)_n, d^(k)_n)` along a move sequence,
/// where `P^(k)_n` counts columns of height `k` in `Y_n` and `d^(k)_n` is the
/// decrease in the `k`th dominance number from step `n` to `n+1` (zero after
/// the last step).
pub fn rect_node_multiplicity(path: &[DiagramState]) -> BigInt {
    let mut acc = BigInt::one();
    for (n, state) in path.iter().enumerate() {
        let next_doms: &[i64] = if n + 1 < path.len() {
            &path[n + 1].dominance_numbers
        } else {
            &[]
        };
        let depth = state
            .dominance_numbers
            .len()
            .max(next_doms.len());
        for k in 1..=depth {
            let cur = state.dominance_numbers.get(k - 1).copied().unwrap_or(0);
            let nxt = next_doms.get(k - 1).copied().unwrap_or(0);
            let drop = cur - nxt;
            if drop > 0 {
                acc *= binomial(state.columns_of_height(k) + drop, drop);
            }
        }
    }
    acc
}

/// Decompose a tensor product of rectangles.  The tree is built in "large n"
/// mode: every row is kept, and rank bounds only apply when converting to
/// sl_n weights afterwards.
pub fn rect_decompose(rects: &[Rectangle]) -> Result<RectTree, RectError> {
    let full_product: Vec<i64> = {
        let mut cols = Vec::new();
        for r in rects {
            for _ in 0..r.cols {
                cols.push(r.rows as i64);
            }
        }
        add_columns(&[], &cols)
    };
    let root_state = DiagramState::empty();
    let root = grow_rect(rects, &root_state, &[], full_product, 0)?;
    Ok(RectTree {
        rects: rects.to_vec(),
        root,
    })
}

fn columns_at_step(rects: &[Rectangle], n: i64) -> Vec<i64> {
    rects
        .iter()
        .filter(|r| r.cols >= n)
        .map(|r| r.rows as i64)
        .collect()
}

fn remaining_columns(rects: &[Rectangle], after: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for r in rects {
        for _ in after..r.cols {
            out.push(r.rows as i64);
        }
    }
    out
}

fn grow_rect(
    rects: &[Rectangle],
    state: &DiagramState,
    path: &[DiagramState],
    final_shape: Vec<i64>,
    level: usize,
) -> Result<RectNode, RectError> {
    let mut full_path = path.to_vec();
    if level > 0 {
        full_path.push(state.clone());
    }
    let multiplicity = rect_node_multiplicity(&full_path[..]);
    let step = level as i64 + 1;
    let columns = columns_at_step(rects, step);
    let prev: Option<&[i64]> = if level == 0 {
        None
    } else {
        Some(&state.dominance_numbers)
    };
    let mut children = Vec::new();
    // Past the first step an exhausted dominance budget ends the branch.
    let budget_left = level == 0 || !state.dominance_numbers.is_empty();
    if budget_left || !columns.is_empty() {
        for next in advance(state, &columns, prev)? {
            if next.is_identity_move() {
                continue;
            }
            let child_final = add_columns(&next.shape, &remaining_columns(rects, step));
            children.push(grow_rect(rects, &next, &full_path, child_final, level + 1)?);
        }
    }
    Ok(RectNode {
        state: state.clone(),
        final_shape,
        multiplicity,
        level,
        children,
    })
}

/// Kostka number lookup: multiplicity of the shape `lam` (row lengths) in the
/// tensor product of single columns of the given heights.
pub fn kostka(lam_shape: &[i64], mu_columns: &[usize]) -> Result<BigInt, RectError> {
    check_shape(lam_shape)?;
    let lam_size: i64 = lam_shape.iter().sum();
    let mu_size: i64 = mu_columns.iter().map(|&h| h as i64).sum();
    if lam_size != mu_size {
        return Err(RectError::SizeMismatch(lam_size, mu_size));
    }
    let rects: Vec<Rectangle> = mu_columns
        .iter()
        .map(|&h| Rectangle::new(h, 1))
        .collect::<Result<_, _>>()?;
    let tree = rect_decompose(&rects)?;
    let key = trim(lam_shape.to_vec());
    Ok(tree
        .aggregate()
        .get(&key)
        .cloned()
        .unwrap_or_else(num_traits::Zero::zero))
}
