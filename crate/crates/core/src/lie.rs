//! Cartan data and weight-lattice arithmetic for the simple Lie algebras A-G.
//!
//! Everything here is exact: coordinates are integers, derived quantities are
//! `BigRational`, multiplicities and dimensions are `BigInt`.  Weights are
//! stored in fundamental-weight (omega) coordinates, root vectors in
//! simple-root (alpha) coordinates.  The Cartan convention is
//! `c[i][j] = 2(a_i, a_j)/(a_j, a_j)`, and the bilinear form is normalized so
//! long roots have squared length 2.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("cannot parse algebra spec `{0}` (expected e.g. `A2`, `E6`)")]
    ParseSpec(String),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("coordinate vector has length {got}, expected rank {rank}")]
    LengthMismatch { got: usize, rank: usize },
    #[error("node index {0} out of range 1..={1}")]
    NodeOutOfRange(usize, usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
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
    pub fn letter(self) -> char {
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

/// A simple Lie algebra, e.g. `E6`.  Node numbering follows the convention
/// where B/C/D/E chains run 1..n and the E-series branch node is 2, attached
/// to node 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AlgebraSpec {
    pub family: Family,
    pub rank: usize,
}

impl AlgebraSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, LieError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(AlgebraSpec { family, rank })
        } else {
            Err(LieError::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }

    /// Parse strings like `"A2"`, `"d4"`, `"E6"`.
    pub fn parse(s: &str) -> Result<Self, LieError> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(LieError::ParseSpec(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| LieError::ParseSpec(s.to_string()))?;
        AlgebraSpec::new(fam, rank).map_err(|_| LieError::ParseSpec(s.to_string()))
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Weight in omega (fundamental-weight) coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<i64>);

/// Root-lattice vector in alpha (simple-root) coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootVector(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, node: usize) -> Self {
        let mut v = vec![0; rank];
        v[node - 1] = 1;
        Weight(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(zip_with(&self.0, &other.0, |a, b| a + b))
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(zip_with(&self.0, &other.0, |a, b| a - b))
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&x| k * x).collect())
    }
}

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(zip_with(&self.0, &other.0, |a, b| a + b))
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(zip_with(&self.0, &other.0, |a, b| a - b))
    }

    /// Componentwise `self <= other`; the dominance order on the root lattice.
    pub fn le(&self, other: &RootVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join_i64(&self.0))
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join_i64(&self.0))
    }
}

fn zip_with(a: &[i64], b: &[i64], f: impl Fn(i64, i64) -> i64) -> Vec<i64> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

fn join_i64(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Cartan matrix, bilinear form, positive roots and friends for one algebra.
/// Immutable after construction and freely shareable.
pub struct CartanData {
    pub spec: AlgebraSpec,
    /// `cartan[i][j] = 2(a_i,a_j)/(a_j,a_j)`.
    pub cartan: Vec<Vec<i64>>,
    /// `symmetrized[i][j] = (a_i,a_j)/2`.
    pub symmetrized: Vec<Vec<Rat>>,
    /// Inverse of `cartan`.
    pub inverse_cartan: Vec<Vec<Rat>>,
    pub positive_roots: Vec<RootVector>,
    pub rho: Weight,
    /// `d[i] = (a_i,a_i)/2`; 1 on long roots.
    d: Vec<Rat>,
    /// `(omega_i, omega_j)`.
    weight_form: Vec<Vec<Rat>>,
    /// Positive roots converted to omega coordinates, in the same order.
    positive_roots_omega: Vec<Weight>,
}

/// Dynkin-diagram edges, 0-indexed.
fn edges(spec: AlgebraSpec) -> Vec<(usize, usize)> {
    let n = spec.rank;
    match spec.family {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
        }
        Family::D => {
            let mut e: Vec<(usize, usize)> = (0..n - 3).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 2));
            e.push((n - 3, n - 1));
            e
        }
        Family::E => {
            // Chain 1-3-4-5-...-n with node 2 attached to node 4.
            let chain: Vec<usize> = std::iter::once(0).chain(2..n).collect();
            let mut e: Vec<(usize, usize)> = chain.windows(2).map(|w| (w[0], w[1])).collect();
            e.push((1, 3));
            e
        }
    }
}

/// Half squared lengths `(a_i,a_i)/2`, long roots normalized to length 2.
fn root_half_lengths(spec: AlgebraSpec) -> Vec<Rat> {
    let n = spec.rank;
    let one = Rat::one();
    let half = rat(1, 2);
    match spec.family {
        Family::A | Family::D | Family::E => vec![one; n],
        Family::B => {
            let mut d = vec![one; n];
            d[n - 1] = half;
            d
        }
        Family::C => {
            let mut d = vec![half; n];
            d[n - 1] = one;
            d
        }
        Family::F => vec![one.clone(), one, half.clone(), half],
        Family::G => vec![rat(1, 3), one],
    }
}

fn invert_matrix(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - &t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
    }
    inv
}

impl CartanData {
    pub fn new(spec: AlgebraSpec) -> Self {
        let n = spec.rank;
        let d = root_half_lengths(spec);
        // (a_i,a_j) = -max(d_i,d_j) on Dynkin edges, 0 otherwise, 2*d_i on the diagonal.
        let mut pairing = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            pairing[i][i] = rat(2, 1) * &d[i];
        }
        for (i, j) in edges(spec) {
            let m = if d[i] >= d[j] { d[i].clone() } else { d[j].clone() };
            pairing[i][j] = -m.clone();
            pairing[j][i] = -m;
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = &pairing[i][j] / &d[j];
                assert!(c.is_integer());
                cartan[i][j] = c.to_integer().to_i64().unwrap();
            }
        }
        let symmetrized: Vec<Vec<Rat>> = pairing
            .iter()
            .map(|row| row.iter().map(|x| x / rat(2, 1)).collect())
            .collect();
        let cartan_rat: Vec<Vec<Rat>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| rat(x, 1)).collect())
            .collect();
        let inverse_cartan = invert_matrix(&cartan_rat);
        // (omega_i, omega_j) = (C^-1)_{ij} d_j
        let weight_form: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| &inverse_cartan[i][j] * &d[j]).collect())
            .collect();
        let mut data = CartanData {
            spec,
            cartan,
            symmetrized,
            inverse_cartan,
            positive_roots: Vec::new(),
            rho: Weight(vec![1; n]),
            d,
            weight_form,
            positive_roots_omega: Vec::new(),
        };
        data.positive_roots = data.enumerate_positive_roots();
        data.positive_roots_omega = data
            .positive_roots
            .iter()
            .map(|g| data.root_to_weight(g))
            .collect();
        data
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// Closure of the simple roots under root-string extension, by height.
    fn enumerate_positive_roots(&self) -> Vec<RootVector> {
        let n = self.rank();
        let mut found: HashSet<Vec<i64>> = HashSet::new();
        let mut by_height: Vec<Vec<RootVector>> = vec![Vec::new()];
        let mut simples = Vec::new();
        for i in 0..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            found.insert(v.clone());
            simples.push(RootVector(v));
        }
        by_height.push(simples);
        let mut h = 1;
        while !by_height[h].is_empty() {
            let mut next = Vec::new();
            for beta in by_height[h].clone() {
                for i in 0..n {
                    // q = p - <beta, a_i^vee> where p counts the down-string.
                    let pair: i64 = (0..n).map(|j| beta.0[j] * self.cartan[j][i]).sum();
                    let mut p = 0i64;
                    let mut probe = beta.clone();
                    loop {
                        probe.0[i] -= 1;
                        if probe.0.iter().all(|&x| x >= 0) && found.contains(&probe.0) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - pair > 0 {
                        let mut up = beta.clone();
                        up.0[i] += 1;
                        if found.insert(up.0.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            by_height.push(next);
            h += 1;
        }
        let mut all: Vec<RootVector> = by_height.into_iter().flatten().collect();
        all.sort();
        all
    }

    /// Omega coordinates of a root-lattice vector.
    pub fn root_to_weight(&self, v: &RootVector) -> Weight {
        let n = self.rank();
        assert_eq!(v.0.len(), n);
        Weight(
            (0..n)
                .map(|j| (0..n).map(|i| v.0[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// Exact alpha coordinates of a weight; integral iff it lies in the root lattice.
    pub fn weight_to_root(&self, w: &Weight) -> Vec<Rat> {
        let n = self.rank();
        assert_eq!(w.0.len(), n);
        // a = (C^T)^{-1} w, i.e. a_i = sum_j inv[j][i] w_j.
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.inverse_cartan[j][i] * rat(w.0[j], 1))
                    .sum()
            })
            .collect()
    }

    /// Alpha coordinates when they are integers, else `None`.
    pub fn weight_to_root_integral(&self, w: &Weight) -> Option<RootVector> {
        let a = self.weight_to_root(w);
        let mut out = Vec::with_capacity(a.len());
        for x in a {
            if x.is_integer() {
                out.push(x.to_integer().to_i64().unwrap());
            } else {
                return None;
            }
        }
        Some(RootVector(out))
    }

    /// true iff `mu - lam` is a nonnegative integer combination of simple roots.
    pub fn dominates(&self, mu: &Weight, lam: &Weight) -> bool {
        match self.weight_to_root_integral(&mu.sub(lam)) {
            Some(v) => v.0.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// Sum of alpha coordinates, as a rational.
    pub fn height(&self, w: &Weight) -> Rat {
        self.weight_to_root(w).into_iter().sum()
    }

    /// `(x, gamma)` for a weight `x` (omega coords) and root-lattice `gamma`.
    pub fn pair_weight_root(&self, x: &Weight, gamma: &RootVector) -> Rat {
        (0..self.rank())
            .map(|j| &self.d[j] * rat(gamma.0[j] * x.0[j], 1))
            .sum()
    }

    /// `(x, y)` for two weights in omega coordinates.
    pub fn pair_weights(&self, x: &Weight, y: &Weight) -> Rat {
        let n = self.rank();
        let mut acc = Rat::zero();
        for i in 0..n {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y.0[j] != 0 {
                    acc += &self.weight_form[i][j] * rat(x.0[i] * y.0[j], 1);
                }
            }
        }
        acc
    }

    /// Weyl dimension formula. Exact; errors on non-dominant input.
    pub fn weyl_dim(&self, lam: &Weight) -> Result<BigInt, LieError> {
        if !lam.is_dominant() {
            return Err(LieError::NotDominant(lam.clone()));
        }
        let mut acc = Rat::one();
        for gamma in &self.positive_roots {
            let mut num = Rat::zero();
            let mut den = Rat::zero();
            for j in 0..self.rank() {
                if gamma.0[j] != 0 {
                    num += &self.d[j] * rat(gamma.0[j] * (lam.0[j] + 1), 1);
                    den += &self.d[j] * rat(gamma.0[j], 1);
                }
            }
            acc *= num / den;
        }
        assert!(acc.is_integer(), "Weyl dimension must be an integer");
        Ok(acc.to_integer())
    }

    /// Apply simple reflections until dominant; the orbit representative.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut w = w.clone();
        loop {
            match w.0.iter().position(|&x| x < 0) {
                None => return w,
                Some(i) => {
                    let wi = w.0[i];
                    for j in 0..self.rank() {
                        w.0[j] -= wi * self.cartan[i][j];
                    }
                }
            }
        }
    }

    /// Reflect to the dominant chamber tracking the sign of the Weyl element;
    /// `None` when the orbit meets a chamber wall.  A zero omega coordinate
    /// puts the weight on a simple-root hyperplane, and a singular orbit
    /// always shows one at its dominant representative, so checking
    /// coordinates along the walk is exact.
    pub fn reflect_signed(&self, w: &Weight) -> Option<(Weight, i8)> {
        let mut w = w.clone();
        let mut sign = 1i8;
        loop {
            if w.0.iter().any(|&x| x == 0) {
                return None;
            }
            match w.0.iter().position(|&x| x < 0) {
                None => return Some((w, sign)),
                Some(i) => {
                    let wi = w.0[i];
                    for j in 0..self.rank() {
                        w.0[j] -= wi * self.cartan[i][j];
                    }
                    sign = -sign;
                }
            }
        }
    }

    /// Full Weyl orbit of a dominant weight.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.0.clone());
        queue.push_back(w.clone());
        let mut orbit = Vec::new();
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                if x.0[i] != 0 {
                    let mut y = x.clone();
                    let xi = y.0[i];
                    for j in 0..self.rank() {
                        y.0[j] -= xi * self.cartan[i][j];
                    }
                    if seen.insert(y.0.clone()) {
                        queue.push_back(y);
                    }
                }
            }
            orbit.push(x);
        }
        orbit
    }

    /// All dominant weights `mu` with `mu <= lam` in dominance (including `lam`).
    ///
    /// Walks downward by positive-root steps through dominant weights; the
    /// covers of the dominance order on dominant weights are positive-root
    /// differences, so this reaches everything.
    pub fn dominant_weights_under(&self, lam: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lam.0.clone());
        queue.push_back(lam.clone());
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in &self.positive_roots_omega {
                let y = x.sub(g);
                if y.is_dominant() && seen.insert(y.0.clone()) {
                    queue.push_back(y);
                }
            }
            out.push(x);
        }
        out.sort();
        out
    }

    /// Freudenthal recursion: multiplicities of the dominant weights of `V(lam)`.
    pub fn weight_multiplicities(
        &self,
        lam: &Weight,
    ) -> Result<HashMap<Weight, BigInt>, LieError> {
        if !lam.is_dominant() {
            return Err(LieError::NotDominant(lam.clone()));
        }
        let mut doms = self.dominant_weights_under(lam);
        // Descending height; everything a recursion step looks up is strictly higher.
        doms.sort_by(|a, b| {
            self.height(b)
                .cmp(&self.height(a))
                .then_with(|| a.cmp(b))
        });
        let lam_rho = lam.add(&self.rho);
        let norm_lam = self.pair_weights(&lam_rho, &lam_rho);
        let mut mult: HashMap<Weight, BigInt> = HashMap::new();
        for mu in &doms {
            if mu == lam {
                mult.insert(mu.clone(), BigInt::one());
                continue;
            }
            let mut num = Rat::zero();
            for (g_alpha, g_omega) in self.positive_roots.iter().zip(&self.positive_roots_omega) {
                let mut k = 1i64;
                loop {
                    let x = mu.add(&g_omega.scale(k));
                    // Stop once lam - x leaves the nonnegative root cone.
                    let diff = self.weight_to_root(&lam.sub(&x));
                    if diff.iter().any(|c| c.is_negative()) {
                        break;
                    }
                    let rep = self.dominant_representative(&x);
                    if let Some(m) = mult.get(&rep) {
                        let pairing = self.pair_weight_root(&x, g_alpha);
                        num += pairing * Rat::from(m.clone());
                    }
                    k += 1;
                }
            }
            let mu_rho = mu.add(&self.rho);
            let den = &norm_lam - self.pair_weights(&mu_rho, &mu_rho);
            let value = num * rat(2, 1) / den;
            assert!(value.is_integer(), "Freudenthal multiplicity must be integral");
            let value = value.to_integer();
            if !value.is_zero() {
                mult.insert(mu.clone(), value);
            }
        }
        Ok(mult)
    }

    /// All weights of `V(lam)` with multiplicities, orbits expanded.
    pub fn all_weights(&self, lam: &Weight) -> Result<Vec<(Weight, BigInt)>, LieError> {
        let dom = self.weight_multiplicities(lam)?;
        let mut out = Vec::new();
        for (mu, m) in dom {
            for w in self.weyl_orbit(&mu) {
                out.push((w, m.clone()));
            }
        }
        Ok(out)
    }
}

/// Convenience wrapper matching the one-shot functional interface.
pub fn cartan_data(spec: AlgebraSpec) -> CartanData {
    CartanData::new(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(s: &str) -> CartanData {
        CartanData::new(AlgebraSpec::parse(s).unwrap())
    }

    #[test]
    fn parse_and_validate() {
        assert!(AlgebraSpec::parse("E6").is_ok());
        assert!(AlgebraSpec::parse("E5").is_err());
        assert!(AlgebraSpec::parse("B1").is_err());
        assert!(AlgebraSpec::parse("D3").is_ok());
        assert!(AlgebraSpec::parse("Q3").is_err());
        assert!(AlgebraSpec::parse("F4").unwrap().is_simply_laced() == false);
        assert!(AlgebraSpec::parse("A7").unwrap().is_simply_laced());
    }

    #[test]
    fn cartan_a2_b2() {
        let a2 = data("A2");
        assert_eq!(a2.cartan, vec![vec![2, -1], vec![-1, 2]]);
        // Node 2 of B2 is short: c_{12} = -2, c_{21} = -1.
        let b2 = data("B2");
        assert_eq!(b2.cartan, vec![vec![2, -2], vec![-1, 2]]);
        let g2 = data("G2");
        assert_eq!(g2.cartan, vec![vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn positive_root_counts() {
        let expect = [
            ("A4", 10),
            ("B3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ];
        for (name, count) in expect {
            assert_eq!(data(name).positive_roots.len(), count, "{name}");
        }
    }

    #[test]
    fn conversions() {
        let a2 = data("A2");
        let alpha1 = RootVector(vec![1, 0]);
        assert_eq!(a2.root_to_weight(&alpha1), Weight(vec![2, -1]));
        assert_eq!(
            a2.weight_to_root(&Weight(vec![1, 0])),
            vec![rat(2, 3), rat(1, 3)]
        );
        let d4 = data("D4");
        assert_eq!(
            d4.root_to_weight(&RootVector(vec![1, 2, 1, 1])),
            Weight(vec![0, 1, 0, 0])
        );
        assert_eq!(
            d4.weight_to_root_integral(&Weight(vec![0, 1, 0, 0])),
            Some(RootVector(vec![1, 2, 1, 1]))
        );
        assert_eq!(
            d4.root_to_weight(&RootVector::zero(4)),
            Weight::zero(4)
        );
        // E8: weight lattice equals root lattice.
        let e8 = data("E8");
        for node in 1..=8 {
            assert!(e8
                .weight_to_root_integral(&Weight::fundamental(8, node))
                .is_some());
        }
    }

    #[test]
    fn dominance() {
        let a2 = data("A2");
        assert!(a2.dominates(&Weight(vec![1, 1]), &Weight::zero(2)));
        assert!(!a2.dominates(&Weight(vec![1, 0]), &Weight::zero(2)));
        assert!(a2.dominates(&Weight(vec![1, 0]), &Weight(vec![1, 0])));
        assert!(!Weight(vec![-1, 1]).is_dominant());
        assert!(Weight::zero(2).is_dominant());
    }

    #[test]
    fn weyl_dims() {
        let a1 = data("A1");
        for m in 0..6 {
            assert_eq!(a1.weyl_dim(&Weight(vec![m])).unwrap(), BigInt::from(m + 1));
        }
        let b3 = data("B3");
        assert_eq!(
            b3.weyl_dim(&Weight(vec![0, 0, 1])).unwrap(),
            BigInt::from(8)
        );
        let e6 = data("E6");
        assert_eq!(
            e6.weyl_dim(&Weight(vec![0, 1, 0, 0, 0, 0])).unwrap(),
            BigInt::from(78)
        );
        assert_eq!(
            e6.weyl_dim(&Weight(vec![1, 0, 0, 0, 0, 0])).unwrap(),
            BigInt::from(27)
        );
        assert!(b3.weyl_dim(&Weight(vec![-1, 0, 0])).is_err());
    }

    #[test]
    fn freudenthal_small() {
        let a1 = data("A1");
        let m = a1.weight_multiplicities(&Weight(vec![2])).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[&Weight(vec![2])], BigInt::one());
        assert_eq!(m[&Weight(vec![0])], BigInt::one());

        let a2 = data("A2");
        let adj = a2.weight_multiplicities(&Weight(vec![1, 1])).unwrap();
        assert_eq!(adj.len(), 2);
        assert_eq!(adj[&Weight(vec![1, 1])], BigInt::one());
        assert_eq!(adj[&Weight(vec![0, 0])], BigInt::from(2));

        let trivial = a2.weight_multiplicities(&Weight::zero(2)).unwrap();
        assert_eq!(trivial.len(), 1);
    }

    #[test]
    fn orbit_sum_matches_dimension() {
        for name in ["A2", "B2", "C3", "D4", "G2"] {
            let d = data(name);
            let lam = Weight(vec![1; d.rank()]);
            let mults = d.weight_multiplicities(&lam).unwrap();
            let mut total = BigInt::zero();
            for (mu, m) in &mults {
                total += m * BigInt::from(d.weyl_orbit(mu).len());
            }
            assert_eq!(total, d.weyl_dim(&lam).unwrap(), "{name}");
        }
    }

    #[test]
    fn dominant_weights_under_matches_box_scan() {
        // Independent route: scan the whole coordinate box.
        for name in ["A2", "B3", "D4"] {
            let d = data(name);
            let lam = Weight(vec![1; d.rank()]);
            let fast = d.dominant_weights_under(&lam);
            let bound: Vec<i64> = d
                .weight_to_root(&lam)
                .iter()
                .map(|x| x.floor().to_integer().to_i64().unwrap())
                .collect();
            let mut slow = Vec::new();
            let mut idx = vec![0i64; d.rank()];
            loop {
                let v = RootVector(idx.clone());
                let w = lam.sub(&d.root_to_weight(&v));
                if w.is_dominant() {
                    slow.push(w);
                }
                let mut carry = 0;
                loop {
                    if carry == d.rank() {
                        break;
                    }
                    idx[carry] += 1;
                    if idx[carry] > bound[carry] {
                        idx[carry] = 0;
                        carry += 1;
                    } else {
                        break;
                    }
                }
                if carry == d.rank() {
                    break;
                }
            }
            slow.sort();
            assert_eq!(fast, slow, "{name}");
        }
    }
}
