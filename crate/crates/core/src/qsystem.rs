//! The Q-system: quadratic character relations
//! `Q_m(l)^2 = Q_{m+1}(l) Q_{m-1}(l) + prod_{l'~l} Qc(m,l,l')`,
//! their solution by exact division from fundamental initial data, and the
//! negative-coefficient witnesses that pin the initial data down.
//!
//! The neighbor contribution depends on relative root lengths:
//! `Qc = Q_m(l')` at equal length, `Q_{km}(l')` when `l` is `k` times longer,
//! and `prod_{i<k} Q_{floor((m+i)/k)}(l')` when `l` is `k` times shorter.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::lie::{AlgebraSpec, Family, LieError, Weight};
use crate::ring::{Character, ReprRing, RingError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("KR initial data is tabulated for the classical families only; {0} needs explicit initial characters")]
    ExceptionalInitialData(String),
    #[error("no initial character Q_1({0}) was supplied")]
    MissingInitial(usize),
    #[error("nodes {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("node {0} out of range for rank {1}")]
    BadNode(usize, usize),
    #[error("recurrence for Q_{0}({1}) is not well-founded with this data")]
    Cycle(i64, usize),
}

/// Fundamental characters of Theorem-style KR initial data, classical types:
/// alternating sums `V(w_l) + V(w_{l-2}) + ...` at the B/D ladder nodes,
/// irreducible everywhere else.
pub fn kr_initial_data(spec: AlgebraSpec) -> Result<BTreeMap<usize, Character>, QError> {
    let n = spec.rank;
    let mut out = BTreeMap::new();
    let ladder = |l: usize| -> Character {
        let mut ch = Character::zero(spec);
        let mut b = l as i64;
        while b >= 0 {
            let w = if b == 0 {
                Weight::zero(n)
            } else {
                Weight::fundamental(n, b as usize)
            };
            ch.add_term(&w, &BigInt::one());
            b -= 2;
        }
        ch
    };
    match spec.family {
        Family::A | Family::C => {
            for l in 1..=n {
                out.insert(l, Character::irreducible(spec, Weight::fundamental(n, l)));
            }
        }
        Family::B => {
            for l in 1..n {
                out.insert(l, ladder(l));
            }
            out.insert(n, Character::irreducible(spec, Weight::fundamental(n, n)));
        }
        Family::D => {
            for l in 1..=n - 2 {
                out.insert(l, ladder(l));
            }
            for l in [n - 1, n] {
                out.insert(l, Character::irreducible(spec, Weight::fundamental(n, l)));
            }
        }
        Family::E | Family::F | Family::G => {
            return Err(QError::ExceptionalInitialData(spec.name()))
        }
    }
    Ok(out)
}

/// All initial-data multiplicities `M_{a,b}` the uniqueness theorem varies,
/// with their KR values: `(a, b, kr_value)`.
pub fn admissible_perturbations(spec: AlgebraSpec) -> Vec<(usize, usize, i64)> {
    let n = spec.rank;
    let mut out = Vec::new();
    match spec.family {
        Family::B => {
            for a in 1..n {
                for b in 0..a {
                    let kr = if (a - b) % 2 == 0 { 1 } else { 0 };
                    out.push((a, b, kr));
                }
            }
        }
        Family::C => {
            for a in 2..=n {
                let mut b = a as i64 - 2;
                while b >= 0 {
                    out.push((a, b as usize, 0));
                    b -= 2;
                }
            }
        }
        Family::D => {
            for a in 2..=n.saturating_sub(2) {
                let mut b = a as i64 - 2;
                while b >= 0 {
                    out.push((a, b as usize, 1));
                    b -= 2;
                }
            }
        }
        _ => {}
    }
    out
}

/// The ladder weight `V_i` of the uniqueness proofs: `V_0` is trivial and the
/// top rung is aliased (`V_n = V(2 w_n)` in B_n, `V_{n-1} = V(w_{n-1}+w_n)`
/// in D_n).
pub fn ladder_weight(spec: AlgebraSpec, i: usize) -> Weight {
    let n = spec.rank;
    if i == 0 {
        return Weight::zero(n);
    }
    match spec.family {
        Family::B if i == n => {
            let mut w = Weight::zero(n);
            w.0[n - 1] = 2;
            w
        }
        Family::D if i == n - 1 => {
            let mut w = Weight::zero(n);
            w.0[n - 2] = 1;
            w.0[n - 1] = 1;
            w
        }
        _ => Weight::fundamental(n, i),
    }
}

/// Add `delta` copies of the ladder character `V_b` to `Q_1(a)`.
pub fn perturb_initial(
    initial: &mut BTreeMap<usize, Character>,
    spec: AlgebraSpec,
    a: usize,
    b: usize,
    delta: i64,
) {
    let w = if b == 0 {
        Weight::zero(spec.rank)
    } else {
        Weight::fundamental(spec.rank, b)
    };
    let ch = initial.get_mut(&a).expect("node present in initial data");
    ch.add_term(&w, &BigInt::from(delta));
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// First negative coefficient found in (m, l) scan order.
    Negative {
        m: i64,
        l: usize,
        weight: Weight,
        coeff: BigInt,
    },
    /// The recurrence divided inexactly while computing Q_m(l).
    Inexact { m: i64, l: usize, detail: String },
}

/// Memoized Q-system evaluator over a fixed initial data set.
pub struct QSystem {
    pub ring: ReprRing,
    initial: BTreeMap<usize, Character>,
    memo: HashMap<(i64, usize), Character>,
    in_progress: HashSet<(i64, usize)>,
}

impl QSystem {
    pub fn new(ring: ReprRing, initial: BTreeMap<usize, Character>) -> Result<Self, QError> {
        for l in 1..=ring.spec().rank {
            if !initial.contains_key(&l) {
                return Err(QError::MissingInitial(l));
            }
        }
        Ok(QSystem {
            ring,
            initial,
            memo: HashMap::new(),
            in_progress: HashSet::new(),
        })
    }

    pub fn with_kr_data(spec: AlgebraSpec) -> Result<Self, QError> {
        QSystem::new(ReprRing::new(spec), kr_initial_data(spec)?)
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.ring.spec()
    }

    fn check_node(&self, l: usize) -> Result<(), QError> {
        if l == 0 || l > self.spec().rank {
            return Err(QError::BadNode(l, self.spec().rank));
        }
        Ok(())
    }

    /// Length ratio `(a_l, a_l) / (a_l', a_l')` as an integer pair `(p, q)`
    /// in lowest terms; classical ratios are 1, 2 or 1/2.
    fn length_ratio(&self, l: usize, lp: usize) -> (i64, i64) {
        let d = &self.ring.data.symmetrized;
        let num = &d[l - 1][l - 1];
        let den = &d[lp - 1][lp - 1];
        let r = num / den;
        let (p, q) = (r.numer().clone(), r.denom().clone());
        (
            i64::try_from(p).expect("small ratio"),
            i64::try_from(q).expect("small ratio"),
        )
    }

    /// Neighbor contribution `Qc(m, l, l')`.
    pub fn curly_q(&mut self, m: i64, l: usize, lp: usize) -> Result<Character, QError> {
        self.check_node(l)?;
        self.check_node(lp)?;
        if l == lp || self.ring.data.cartan[l - 1][lp - 1] == 0 {
            return Err(QError::NotAdjacent(l, lp));
        }
        match self.length_ratio(l, lp) {
            (1, 1) => self.q_character(m, lp),
            (k, 1) => self.q_character(k * m, lp),
            (1, k) => {
                let mut acc = Character::trivial(self.spec());
                for i in 0..k {
                    let q = self.q_character((m + i).div_euclid(k), lp)?;
                    acc = self.ring.multiply(&acc, &q)?;
                }
                Ok(acc)
            }
            other => unreachable!("length ratio {other:?} cannot occur"),
        }
    }

    /// `prod_{l'~l} Qc(m, l, l')`; the empty product is the trivial character.
    pub fn neighbor_product(&mut self, m: i64, l: usize) -> Result<Character, QError> {
        let rank = self.spec().rank;
        let mut acc = Character::trivial(self.spec());
        for lp in 1..=rank {
            if lp != l && self.ring.data.cartan[l - 1][lp - 1] != 0 {
                let q = self.curly_q(m, l, lp)?;
                acc = self.ring.multiply(&acc, &q)?;
            }
        }
        Ok(acc)
    }

    /// `Q_m(l)` by the recurrence
    /// `Q_m = (Q_{m-1}^2 - prod Qc(m-1, l, l')) / Q_{m-2}`, memoized.
    pub fn q_character(&mut self, m: i64, l: usize) -> Result<Character, QError> {
        self.check_node(l)?;
        assert!(m >= 0, "Q_m needs m >= 0");
        if m == 0 {
            return Ok(Character::trivial(self.spec()));
        }
        if m == 1 {
            return Ok(self.initial[&l].clone());
        }
        if let Some(ch) = self.memo.get(&(m, l)) {
            return Ok(ch.clone());
        }
        if !self.in_progress.insert((m, l)) {
            return Err(QError::Cycle(m, l));
        }
        let result: Result<Character, QError> = (|| {
            let prev = self.q_character(m - 1, l)?;
            let sq = self.ring.multiply(&prev, &prev)?;
            let prod = self.neighbor_product(m - 1, l)?;
            let num = sq.sub(&prod);
            let den = self.q_character(m - 2, l)?;
            if den == Character::trivial(self.spec()) {
                Ok(num)
            } else {
                Ok(self.ring.divide_exact(&num, &den)?)
            }
        })();
        self.in_progress.remove(&(m, l));
        let ch = result?;
        self.memo.insert((m, l), ch.clone());
        Ok(ch)
    }

    /// Residual `Q_m^2 - Q_{m+1} Q_{m-1} - prod Qc(m,l,l')` for every
    /// `1 <= m <= max_m`, all nodes.  All-zero on consistent data.
    pub fn check_relations(
        &mut self,
        max_m: i64,
    ) -> Result<Vec<((i64, usize), Character)>, QError> {
        let rank = self.spec().rank;
        let mut out = Vec::new();
        for m in 1..=max_m {
            for l in 1..=rank {
                let qm = self.q_character(m, l)?;
                let sq = self.ring.multiply(&qm, &qm)?;
                let hi = self.q_character(m + 1, l)?;
                let lo = self.q_character(m - 1, l)?;
                let cross = self.ring.multiply(&hi, &lo)?;
                let prod = self.neighbor_product(m, l)?;
                let residual = sq.sub(&cross).sub(&prod);
                out.push(((m, l), residual));
            }
        }
        Ok(out)
    }

    /// First negative coefficient (or inexact division) in `(m, l)` scan
    /// order with `m <= max_m`; `None` on KR data.
    pub fn negative_witness(&mut self, max_m: i64) -> Option<Witness> {
        let rank = self.spec().rank;
        for m in 1..=max_m {
            for l in 1..=rank {
                match self.q_character(m, l) {
                    Err(QError::Ring(RingError::Inexact { weight, mult })) => {
                        return Some(Witness::Inexact {
                            m,
                            l,
                            detail: format!("remainder term {mult} V{weight}"),
                        })
                    }
                    Err(_) => return None,
                    Ok(ch) => {
                        if let Some((w, c)) = ch.first_negative() {
                            return Some(Witness::Negative {
                                m,
                                l,
                                weight: w.clone(),
                                coeff: c.clone(),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// Coefficient of `V(w)` in `Q_m(l)`; convenience for witness formulas.
    pub fn coefficient(&mut self, m: i64, l: usize, w: &Weight) -> Result<BigInt, QError> {
        Ok(self.q_character(m, l)?.get(w))
    }

    /// Every computed `Q_m(l)` with `m <= max_m` passes the true-character
    /// test against its top weight `m w_l`.
    pub fn all_true_characters(&mut self, max_m: i64) -> Result<bool, QError> {
        let rank = self.spec().rank;
        for m in 1..=max_m {
            for l in 1..=rank {
                let ch = self.q_character(m, l)?;
                let mut bound = Weight::zero(rank);
                bound.0[l - 1] = m;
                if !self.ring.is_true_character(&ch, &bound) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    #[cfg(test)]
    pub(crate) fn inject(&mut self, m: i64, l: usize, ch: Character) {
        self.memo.insert((m, l), ch);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn kr_system(s: &str) -> QSystem {
        QSystem::with_kr_data(AlgebraSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn initial_data_tables() {
        let spec = AlgebraSpec::parse("A3").unwrap();
        let init = kr_initial_data(spec).unwrap();
        assert_eq!(init[&2], Character::irreducible(spec, w(&[0, 1, 0])));

        let spec = AlgebraSpec::parse("B3").unwrap();
        let init = kr_initial_data(spec).unwrap();
        let expect = Character::from_terms(
            spec,
            [(w(&[0, 1, 0]), BigInt::one()), (w(&[0, 0, 0]), BigInt::one())],
        );
        assert_eq!(init[&2], expect);
        assert_eq!(init[&3], Character::irreducible(spec, w(&[0, 0, 1])));

        let spec = AlgebraSpec::parse("D4").unwrap();
        let init = kr_initial_data(spec).unwrap();
        assert_eq!(
            init[&2],
            Character::from_terms(
                spec,
                [(w(&[0, 1, 0, 0]), BigInt::one()), (w(&[0, 0, 0, 0]), BigInt::one())],
            )
        );
        assert_eq!(init[&3], Character::irreducible(spec, w(&[0, 0, 1, 0])));
        assert_eq!(init[&4], Character::irreducible(spec, w(&[0, 0, 0, 1])));

        assert!(kr_initial_data(AlgebraSpec::parse("E6").unwrap()).is_err());
    }

    #[test]
    fn curly_q_length_cases() {
        let mut q = kr_system("B4");
        // Long next to short, k = 2: Qc(2, 3, 4) = Q_4(4).
        let got = q.curly_q(2, 3, 4).unwrap();
        let expect = q.q_character(4, 4).unwrap();
        assert_eq!(got, expect);
        // Short next to long: Qc(3, 4, 3) = Q_1(3) Q_2(3).
        let got = q.curly_q(3, 4, 3).unwrap();
        let a = q.q_character(1, 3).unwrap();
        let b = q.q_character(2, 3).unwrap();
        let expect = q.ring.multiply(&a, &b).unwrap();
        assert_eq!(got, expect);
        // Equal length is the plain case.
        let got = q.curly_q(2, 1, 2).unwrap();
        let expect = q.q_character(2, 2).unwrap();
        assert_eq!(got, expect);
        assert!(q.curly_q(1, 1, 3).is_err());
    }

    #[test]
    fn a1_and_a2_irreducibility() {
        let mut q = kr_system("A1");
        assert_eq!(
            q.q_character(2, 1).unwrap(),
            Character::irreducible(q.spec(), w(&[2]))
        );
        let mut q = kr_system("A2");
        assert_eq!(
            q.q_character(3, 1).unwrap(),
            Character::irreducible(q.spec(), w(&[3, 0]))
        );
        // Type A stays irreducible through m = 4 at every node.
        for name in ["A1", "A2", "A3"] {
            let mut q = kr_system(name);
            let rank = q.spec().rank;
            for l in 1..=rank {
                for m in 1..=4 {
                    let mut top = Weight::zero(rank);
                    top.0[l - 1] = m;
                    assert_eq!(
                        q.q_character(m, l).unwrap(),
                        Character::irreducible(q.spec(), top),
                        "{name} Q_{m}({l})"
                    );
                }
            }
        }
    }

    #[test]
    fn d4_node2_level2() {
        let mut q = kr_system("D4");
        let got = q.q_character(2, 2).unwrap();
        let expect = Character::from_terms(
            q.spec(),
            [
                (w(&[0, 2, 0, 0]), BigInt::one()),
                (w(&[0, 1, 0, 0]), BigInt::one()),
                (w(&[0, 0, 0, 0]), BigInt::one()),
            ],
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn relations_hold_for_kr_data() {
        for name in ["A2", "B2"] {
            let mut q = kr_system(name);
            let report = q.check_relations(3).unwrap();
            for ((m, l), residual) in report {
                assert!(residual.is_zero(), "{name} residual at m={m} l={l}");
            }
        }
    }

    #[test]
    fn corrupted_entry_leaves_residual() {
        let mut q = kr_system("A2");
        q.inject(2, 1, Character::irreducible(q.spec(), w(&[0, 1])));
        let report = q.check_relations(2).unwrap();
        assert!(report.iter().any(|(_, r)| !r.is_zero()));
    }

    #[test]
    fn witness_b3_flip_even_down() {
        // M_{2,0}: 1 -> 0; the coefficient of V(w_2) in Q_2(2) is 2M - 1 = -1.
        let spec = AlgebraSpec::parse("B3").unwrap();
        let mut init = kr_initial_data(spec).unwrap();
        perturb_initial(&mut init, spec, 2, 0, -1);
        let mut q = QSystem::new(ReprRing::new(spec), init).unwrap();
        assert_eq!(q.coefficient(2, 2, &w(&[0, 1, 0])).unwrap(), BigInt::from(-1));
        let witness = q.negative_witness(3).unwrap();
        match witness {
            Witness::Negative { m, l, weight, coeff } => {
                assert_eq!((m, l), (2, 2));
                assert_eq!(weight, w(&[0, 1, 0]));
                assert_eq!(coeff, BigInt::from(-1));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn witness_b3_flip_odd_up() {
        // M_{2,1}: 0 -> 1 at the n-1 rung; the coefficient of V(w_1 + w_3)
        // in Q_3(3) is 1 - 2M = -1.
        let spec = AlgebraSpec::parse("B3").unwrap();
        let mut init = kr_initial_data(spec).unwrap();
        perturb_initial(&mut init, spec, 2, 1, 1);
        let mut q = QSystem::new(ReprRing::new(spec), init).unwrap();
        assert_eq!(
            q.coefficient(3, 3, &w(&[1, 0, 1])).unwrap(),
            BigInt::from(-1)
        );
        assert!(q.negative_witness(3).is_some());
    }

    #[test]
    fn witness_c3_flip() {
        // M_{3,1}: 0 -> 1; the scan finds a negative coefficient by m = 3,
        // and the designated witness multiplicity of V(w_2 + 2 w_1) in
        // Q_3(2) equals 1 - 2M = -1.
        let spec = AlgebraSpec::parse("C3").unwrap();
        let mut init = kr_initial_data(spec).unwrap();
        perturb_initial(&mut init, spec, 3, 1, 1);
        let mut q = QSystem::new(ReprRing::new(spec), init).unwrap();
        assert_eq!(
            q.coefficient(3, 2, &w(&[2, 1, 0])).unwrap(),
            BigInt::from(-1)
        );
        assert!(q.negative_witness(3).is_some());
    }

    #[test]
    fn kr_data_gives_no_witness() {
        for name in ["A2", "B2", "B3", "C2", "C3", "D4"] {
            let mut q = kr_system(name);
            assert!(q.negative_witness(3).is_none(), "{name}");
            assert!(q.all_true_characters(2).unwrap(), "{name}");
        }
    }
}
