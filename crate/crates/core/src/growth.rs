//! Path-type analysis of the stable tree T(l): which strictly decreasing
//! increment patterns appear, their polynomial growth exponents, and the
//! asymptotic degree of `dim W_m(l)`.
//!
//! A path-type is admissible when every wall it walks towards was pushed away
//! from first: each requirement of `Delta_n` must be provided by some earlier
//! `Delta_k`.  Its growth exponent is
//! `g = t + sum_k alpha_k-coordinate of Delta_{f(k)}`
//! with `f(k)` the first provider of `omega_k` (contribution zero when never
//! provided).  The dimension degree adds the count of positive roots moving
//! against the node weights.

use std::collections::{BTreeSet, HashMap};

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::lie::{CartanData, LieError, RootVector, Weight};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GrowthError {
    #[error("growth analysis requires a simply-laced algebra; got {0}")]
    NotSimplyLaced(String),
    #[error("path-type is not admissible: {0}")]
    Inadmissible(String),
    #[error("path-type is structurally invalid: {0}")]
    BadPathType(String),
    #[error("node index {0} out of range")]
    BadNode(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A strictly decreasing sequence of increments `Delta_1 > ... > Delta_t`,
/// each a nonzero root-lattice point below `omega_l`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathType {
    pub deltas: Vec<RootVector>,
}

impl PathType {
    pub fn new(deltas: Vec<RootVector>) -> Result<Self, GrowthError> {
        if deltas.is_empty() {
            return Err(GrowthError::BadPathType("a path-type has t >= 1".into()));
        }
        for d in &deltas {
            if d.is_zero() || d.0.iter().any(|&x| x < 0) {
                return Err(GrowthError::BadPathType(format!(
                    "increment {d} is not strictly positive"
                )));
            }
        }
        for w in deltas.windows(2) {
            if !(w[1].le(&w[0]) && w[1] != w[0]) {
                return Err(GrowthError::BadPathType(format!(
                    "increments must strictly decrease: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(PathType { deltas })
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

/// Nodes whose walls `Delta` moves away from (provides) and towards
/// (requires): the signs of the omega coordinates of `omega_l - Delta`.
pub fn provides_requires(
    data: &CartanData,
    ell: usize,
    delta: &RootVector,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let w = Weight::fundamental(data.rank(), ell).sub(&data.root_to_weight(delta));
    let mut provides = BTreeSet::new();
    let mut requires = BTreeSet::new();
    for (i, &c) in w.0.iter().enumerate() {
        if c > 0 {
            provides.insert(i + 1);
        } else if c < 0 {
            requires.insert(i + 1);
        }
    }
    (provides, requires)
}

/// Every requirement of each `Delta_n` is provided strictly earlier.
pub fn is_admissible(data: &CartanData, ell: usize, pt: &PathType) -> bool {
    let mut provided: BTreeSet<usize> = BTreeSet::new();
    for d in &pt.deltas {
        let (p, r) = provides_requires(data, ell, d);
        if !r.is_subset(&provided) {
            return false;
        }
        provided.extend(p);
    }
    true
}

/// The growth exponent of an admissible path-type.
pub fn g_value(data: &CartanData, ell: usize, pt: &PathType) -> Result<i64, GrowthError> {
    if !is_admissible(data, ell, pt) {
        return Err(GrowthError::Inadmissible(format!(
            "a requirement precedes its provider under omega_{ell}"
        )));
    }
    let mut provided: BTreeSet<usize> = BTreeSet::new();
    let mut g = pt.len() as i64;
    for d in &pt.deltas {
        let (p, _) = provides_requires(data, ell, d);
        for k in p {
            if provided.insert(k) {
                g += d.0[k - 1];
            }
        }
    }
    Ok(g)
}

/// Count of positive roots orthogonal to `omega_l` and every increment.
pub fn perp_count(data: &CartanData, ell: usize, pt: Option<&PathType>) -> usize {
    let omega = Weight::fundamental(data.rank(), ell);
    data.positive_roots
        .iter()
        .filter(|gamma| {
            if !data.pair_weight_root(&omega, gamma).is_zero() {
                return false;
            }
            match pt {
                None => true,
                Some(pt) => pt.deltas.iter().all(|d| {
                    data.pair_weight_root(&data.root_to_weight(d), gamma).is_zero()
                }),
            }
        })
        .count()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrowthResult {
    /// Maximal growth exponent over admissible path-types.
    pub g: i64,
    /// A maximizing path-type; `None` for the degenerate empty path.
    pub witness: Option<PathType>,
    /// Positive roots orthogonal to all node highest weights of the witness.
    pub perp: usize,
    /// Asymptotic degree of `dim W_m(l)`: `g` plus the number of positive
    /// roots *not* orthogonal to the witness span.
    pub degree: i64,
    /// False when the search budget ran out before the scan finished.
    pub complete: bool,
}

/// Maximize `g` over admissible path-types by dynamic programming on
/// (last increment, set of provided nodes).  The budget caps the number of
/// state evaluations.
pub fn max_growth(
    data: &CartanData,
    ell: usize,
    budget: u64,
) -> Result<GrowthResult, GrowthError> {
    if !data.spec.is_simply_laced() {
        return Err(GrowthError::NotSimplyLaced(data.spec.name()));
    }
    if ell == 0 || ell > data.rank() {
        return Err(GrowthError::BadNode(ell));
    }
    let rank = data.rank();
    let omega = Weight::fundamental(rank, ell);
    let bound: Vec<i64> = data
        .weight_to_root(&omega)
        .iter()
        .map(|x| x.floor().to_integer().to_i64().unwrap_or(0).max(0))
        .collect();

    // Candidate increments: nonzero integer box points below omega_l.
    let mut candidates: Vec<RootVector> = Vec::new();
    let mut v = vec![0i64; rank];
    'outer: loop {
        let mut i = 0;
        loop {
            if i == rank {
                break 'outer;
            }
            v[i] += 1;
            if v[i] > bound[i] {
                v[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        candidates.push(RootVector(v.clone()));
    }
    let masks: Vec<(u32, u32)> = candidates
        .iter()
        .map(|d| {
            let (p, r) = provides_requires(data, ell, d);
            let pm = p.iter().fold(0u32, |acc, k| acc | (1 << (k - 1)));
            let rm = r.iter().fold(0u32, |acc, k| acc | (1 << (k - 1)));
            (pm, rm)
        })
        .collect();
    // Strict componentwise predecessors of each candidate.
    let below: Vec<Vec<u32>> = candidates
        .iter()
        .map(|v| {
            candidates
                .iter()
                .enumerate()
                .filter(|(_, w)| w.le(v) && w.0 != v.0)
                .map(|(j, _)| j as u32)
                .collect()
        })
        .collect();

    struct Search<'a> {
        candidates: &'a [RootVector],
        masks: &'a [(u32, u32)],
        below: &'a [Vec<u32>],
        memo: HashMap<(u32, u32), (i64, Option<(u32, u32)>)>,
        steps: u64,
        budget: u64,
        exhausted: bool,
    }

    impl Search<'_> {
        /// Best additional growth after ending a chain at `idx` with
        /// `provided` already pushed away.
        fn dp(&mut self, idx: u32, provided: u32) -> (i64, Option<(u32, u32)>) {
            if let Some(hit) = self.memo.get(&(idx, provided)) {
                return hit.clone();
            }
            self.steps += 1;
            if self.steps > self.budget {
                self.exhausted = true;
                return (0, None);
            }
            let mut best = (0i64, None);
            for &j in &self.below[idx as usize] {
                let (pm, rm) = self.masks[j as usize];
                if rm & !provided != 0 {
                    continue;
                }
                let newly = pm & !provided;
                let gain: i64 = 1 + (0..32)
                    .filter(|k| newly & (1 << k) != 0)
                    .map(|k| self.candidates[j as usize].0[k])
                    .sum::<i64>();
                let next_provided = provided | pm;
                let (rest, _) = self.dp(j, next_provided);
                if gain + rest > best.0 {
                    best = (gain + rest, Some((j, next_provided)));
                }
            }
            self.memo.insert((idx, provided), best.clone());
            best
        }
    }

    let mut search = Search {
        candidates: &candidates,
        masks: &masks,
        below: &below,
        memo: HashMap::new(),
        steps: 0,
        budget,
        exhausted: false,
    };

    let mut best_g = 0i64;
    let mut best_start: Option<(u32, u32)> = None;
    for (i, _) in candidates.iter().enumerate() {
        let (pm, rm) = masks[i];
        if rm != 0 {
            continue;
        }
        let gain: i64 = 1 + (0..32)
            .filter(|k| pm & (1 << k) != 0)
            .map(|k| candidates[i].0[k])
            .sum::<i64>();
        let (rest, _) = search.dp(i as u32, pm);
        if gain + rest > best_g {
            best_g = gain + rest;
            best_start = Some((i as u32, pm));
        }
    }

    // Reconstruct the witness chain.
    let witness = best_start.map(|(start, mask)| {
        let mut deltas = vec![candidates[start as usize].clone()];
        let mut state = (start, mask);
        while let Some((_, Some(next))) = search.memo.get(&state).map(|v| v.clone()) {
            deltas.push(candidates[next.0 as usize].clone());
            state = next;
        }
        PathType { deltas }
    });

    let perp = perp_count(data, ell, witness.as_ref());
    let degree = best_g + (data.positive_roots.len() - perp) as i64;
    Ok(GrowthResult {
        g: best_g,
        witness,
        perp,
        degree,
        complete: !search.exhausted,
    })
}

/// Path-type equivalence up to reordering transformations that slide an
/// intermediate point across a diamond: same length, same endpoints, same
/// multiset of successive decrements.
pub fn equivalent_path_types(a: &PathType, b: &PathType) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.deltas.first() != b.deltas.first() || a.deltas.last() != b.deltas.last() {
        return false;
    }
    let steps = |pt: &PathType| -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = pt
            .deltas
            .windows(2)
            .map(|w| w[0].sub(&w[1]).0)
            .collect();
        v.sort();
        v
    };
    steps(a) == steps(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::AlgebraSpec;

    fn data(s: &str) -> CartanData {
        CartanData::new(AlgebraSpec::parse(s).unwrap())
    }

    fn omega_alpha(data: &CartanData, l: usize) -> RootVector {
        data.weight_to_root_integral(&Weight::fundamental(data.rank(), l))
            .expect("fundamental weight in root lattice")
    }

    #[test]
    fn provides_requires_examples() {
        let d6 = data("D6");
        // Delta = omega_4 in the root lattice: neither provides nor requires.
        let full = omega_alpha(&d6, 4);
        let (p, r) = provides_requires(&d6, 4, &full);
        assert!(p.is_empty() && r.is_empty());
        // Delta = omega_4 - omega_2 provides node 2.
        let w2 = omega_alpha(&d6, 2);
        let delta = full.sub(&w2);
        let (p, r) = provides_requires(&d6, 4, &delta);
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![2]);
        assert!(r.is_empty());

        // E6: omega_4 - Delta = -omega_2 + omega_1 + omega_6.
        let e6 = data("E6");
        let target = Weight(vec![1, -1, 0, 0, 0, 1]);
        let delta = e6
            .weight_to_root_integral(&Weight::fundamental(6, 4).sub(&target))
            .unwrap();
        let (p, r) = provides_requires(&e6, 4, &delta);
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![1, 6]);
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn admissibility() {
        let d6 = data("D6");
        let full = omega_alpha(&d6, 4);
        let minus2 = full.sub(&omega_alpha(&d6, 2));
        let good = PathType::new(vec![full.clone(), minus2.clone()]).unwrap();
        assert!(is_admissible(&d6, 4, &good));
        // Starting with a requirement fails.
        let bad = PathType::new(vec![minus2]).unwrap();
        assert!(is_admissible(&d6, 4, &bad));
        // omega_4 - omega_2 provides, never requires: need a genuinely
        // requiring increment for the negative case.
        let e6 = data("E6");
        let delta = e6
            .weight_to_root_integral(&Weight::fundamental(6, 4).sub(&Weight(vec![1, -1, 0, 0, 0, 1])))
            .unwrap();
        let bad = PathType::new(vec![delta]).unwrap();
        assert!(!is_admissible(&e6, 4, &bad));
    }

    #[test]
    fn g_values() {
        let d6 = data("D6");
        let full = omega_alpha(&d6, 4);
        let pt = PathType::new(vec![full.clone(), full.sub(&omega_alpha(&d6, 2))]).unwrap();
        assert_eq!(g_value(&d6, 4, &pt).unwrap(), 2);

        // The E6 node-4 maximal path-type
        // w4 > w4-w2 > w4-w1-w6 > w2+w4-w3-w5 > 2w2-w4 has g = 6.
        let e6 = data("E6");
        let omega4 = Weight::fundamental(6, 4);
        let displayed = [
            omega4.clone(),
            omega4.sub(&Weight::fundamental(6, 2)),
            omega4.sub(&Weight(vec![1, 0, 0, 0, 0, 1])),
            Weight(vec![0, 1, -1, 1, -1, 0]),
            Weight(vec![0, 2, 0, -1, 0, 0]),
        ];
        let pt = PathType::new(
            displayed
                .iter()
                .map(|x| e6.weight_to_root_integral(x).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(g_value(&e6, 4, &pt).unwrap(), 6);
    }

    #[test]
    fn max_growth_small_cases() {
        let d5 = data("D5");
        let res = max_growth(&d5, 3, 10_000_000).unwrap();
        assert!(res.complete);
        assert_eq!(res.g, 1);

        let e6 = data("E6");
        let res = max_growth(&e6, 2, 10_000_000).unwrap();
        assert_eq!(res.g, 1);
        // Minuscule nodes have no admissible path-type at all.
        let res = max_growth(&e6, 1, 10_000_000).unwrap();
        assert_eq!(res.g, 0);
        assert!(res.witness.is_none());
    }

    #[test]
    fn degree_for_d4_adjoint_chain() {
        // W_m(2) in D_4 sums V(j w_2); dimensions grow like m^10.
        let d4 = data("D4");
        let res = max_growth(&d4, 2, 10_000_000).unwrap();
        assert_eq!(res.g, 1);
        assert_eq!(res.perp, 3);
        assert_eq!(res.degree, 10);
    }

    #[test]
    fn insertion_never_decreases_g() {
        // Insert an extra increment into an admissible D6 path-type.
        let d6 = data("D6");
        let full = omega_alpha(&d6, 4);
        let minus2 = full.sub(&omega_alpha(&d6, 2));
        let short = PathType::new(vec![full.clone()]).unwrap();
        let long = PathType::new(vec![full, minus2]).unwrap();
        assert!(g_value(&d6, 4, &long).unwrap() >= g_value(&d6, 4, &short).unwrap());
    }

    #[test]
    fn equivalence_checker() {
        let d6 = data("D6");
        let full = omega_alpha(&d6, 4);
        let a = PathType::new(vec![full.clone(), full.sub(&omega_alpha(&d6, 2))]).unwrap();
        assert!(equivalent_path_types(&a, &a));
        let b = PathType::new(vec![full.clone()]).unwrap();
        assert!(!equivalent_path_types(&a, &b));
    }
}
