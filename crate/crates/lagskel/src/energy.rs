//! Binary pairwise energies, linear constraints, and the Lagrangian assembly.
//!
//! An energy is a pseudo-Boolean function given by per-node unary tables and
//! per-edge pairwise tables. Constraints are node-linear terms plus an
//! optional edge-disagreement term, so a constraint value is
//! `sum_i a_i x_i + w * sum_(i,j) |x_i - x_j| + c`. The Lagrangian
//! `L(x, lambda) = f(x) + lambda . (H(x) - b)` folds back into the same
//! energy form, which is what makes a single minimization oracle sufficient.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// A binary labeling of the problem variables.
///
/// Ordering is lexicographic on the bit vector (`0 < 1`), which is the
/// tie-break order used by the exhaustive minimizer.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labeling {
    bits: Vec<bool>,
}

impl Labeling {
    pub fn new(bits: Vec<bool>) -> Self {
        Labeling { bits }
    }

    /// Builds a labeling from 0/1 integers; anything nonzero counts as 1.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        Labeling {
            bits: bits.into_iter().map(|b| b != 0).collect(),
        }
    }

    /// The `index`-th labeling of `n` variables in lexicographic order,
    /// i.e. bit 0 of the labeling is the most significant bit of `index`.
    pub fn from_index(index: u64, n: usize) -> Self {
        let bits = (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect();
        Labeling { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Labeling {
            bits: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// Number of variables labeled 1.
    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{}", if *b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeling({self})")
    }
}

/// Pairwise table of an undirected edge, indexed by `(x_u, x_v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeTerm {
    pub u: usize,
    pub v: usize,
    /// `[phi(0,0), phi(0,1), phi(1,0), phi(1,1)]`.
    pub table: [Rational; 4],
}

impl EdgeTerm {
    pub fn value(&self, xu: bool, xv: bool) -> &Rational {
        &self.table[(xu as usize) * 2 + (xv as usize)]
    }

    /// `phi(0,1) + phi(1,0) >= phi(0,0) + phi(1,1)`.
    pub fn is_submodular(&self) -> bool {
        &self.table[1] + &self.table[2] >= &self.table[0] + &self.table[3]
    }

    /// `phi(0,0) + phi(1,1) - phi(0,1) - phi(1,0)`; positive means the table
    /// violates submodularity by that amount.
    pub fn submodularity_deficit(&self) -> Rational {
        &self.table[0] + &self.table[3] - &self.table[1] - &self.table[2]
    }
}

/// A binary pairwise energy: unary tables, edge tables, and a global
/// additive constant.
///
/// The constant keeps Lagrangian assembly exact without touching the unary
/// tables; minimization oracles must report values including it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairwiseEnergy {
    n: usize,
    unary: Vec<(Rational, Rational)>,
    edges: Vec<EdgeTerm>,
    constant: Rational,
}

impl PairwiseEnergy {
    /// Builds an energy, validating the edge list: no self-loops, no
    /// duplicate undirected edges, endpoints in range.
    pub fn new(
        n: usize,
        unary: Vec<(Rational, Rational)>,
        edges: Vec<EdgeTerm>,
    ) -> Result<Self> {
        if unary.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: unary.len(),
                context: "unary table count",
            });
        }
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if e.u == e.v {
                return Err(Error::InvalidEnergy(format!("self-loop on node {}", e.u)));
            }
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidEnergy(format!(
                    "edge ({}, {}) out of range for {} nodes",
                    e.u, e.v, n
                )));
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            if !seen.insert(key) {
                return Err(Error::InvalidEnergy(format!(
                    "duplicate undirected edge ({}, {})",
                    key.0, key.1
                )));
            }
        }
        Ok(PairwiseEnergy {
            n,
            unary,
            edges,
            constant: Rational::zero(),
        })
    }

    /// An energy with all-zero tables.
    pub fn zero(n: usize) -> Self {
        PairwiseEnergy {
            n,
            unary: vec![(Rational::zero(), Rational::zero()); n],
            edges: Vec::new(),
            constant: Rational::zero(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn unary(&self) -> &[(Rational, Rational)] {
        &self.unary
    }

    pub fn edges(&self) -> &[EdgeTerm] {
        &self.edges
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn with_constant(mut self, c: Rational) -> Self {
        self.constant = c;
        self
    }

    /// Exact energy of a labeling, including the global constant.
    pub fn evaluate(&self, x: &Labeling) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
                context: "labeling length",
            });
        }
        let mut total = self.constant.clone();
        for (i, (phi0, phi1)) in self.unary.iter().enumerate() {
            total += if x.get(i) { phi1 } else { phi0 };
        }
        for e in &self.edges {
            total += e.value(x.get(e.u), x.get(e.v));
        }
        Ok(total)
    }

    /// True iff every edge table is submodular.
    pub fn is_submodular(&self) -> bool {
        self.edges.iter().all(EdgeTerm::is_submodular)
    }
}

/// One constraint `h(x) = sum_i a_i x_i + w * sum_(i,j) |x_i - x_j| + c`.
///
/// The disagreement sum runs over the edge set of the energy the constraint
/// is paired with. Disagreement coefficients are nonnegative by convention;
/// the submodularity bound below depends on that sign choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSpec {
    pub name: String,
    pub node_coeffs: Vec<Rational>,
    pub edge_coeff: Rational,
    pub offset: Rational,
}

impl ConstraintSpec {
    pub fn new(
        name: impl Into<String>,
        node_coeffs: Vec<Rational>,
        edge_coeff: Rational,
        offset: Rational,
    ) -> Result<Self> {
        if node_coeffs.iter().all(Rational::is_zero) && edge_coeff.is_zero() {
            return Err(Error::InvalidConstraint(
                "all node coefficients and the edge coefficient are zero".into(),
            ));
        }
        Ok(ConstraintSpec {
            name: name.into(),
            node_coeffs,
            edge_coeff,
            offset,
        })
    }

    /// Node-linear constraint with zero offset.
    pub fn linear(name: impl Into<String>, node_coeffs: Vec<Rational>) -> Result<Self> {
        ConstraintSpec::new(name, node_coeffs, Rational::zero(), Rational::zero())
    }

    /// Evaluates the constraint against a labeling and the edge set of `f`.
    pub fn evaluate(&self, f: &PairwiseEnergy, x: &Labeling) -> Result<Rational> {
        if self.node_coeffs.len() != x.len() {
            return Err(Error::DimensionMismatch {
                expected: self.node_coeffs.len(),
                got: x.len(),
                context: "constraint node coefficients",
            });
        }
        let mut total = self.offset.clone();
        for (i, a) in self.node_coeffs.iter().enumerate() {
            if x.get(i) && !a.is_zero() {
                total += a;
            }
        }
        if !self.edge_coeff.is_zero() {
            let disagreements = f
                .edges()
                .iter()
                .filter(|e| x.get(e.u) != x.get(e.v))
                .count();
            total += &self.edge_coeff * rat(disagreements as i64);
        }
        Ok(total)
    }
}

/// The per-dimension search interval for the multipliers: the region `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRegion {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

impl SearchRegion {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
                context: "search region bounds",
            });
        }
        for (i, (l, h)) in lo.iter().zip(&hi).enumerate() {
            if l >= h {
                return Err(Error::InvalidProblem(format!(
                    "search interval {i} is empty or degenerate ({} >= {})",
                    l, h
                )));
            }
        }
        Ok(SearchRegion { lo, hi })
    }

    /// The symmetric box `[-m, m]^dim`.
    pub fn symmetric(m: i64, dim: usize) -> Self {
        SearchRegion {
            lo: vec![rat(-m); dim],
            hi: vec![rat(m); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rational] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rational] {
        &self.hi
    }

    pub fn contains(&self, lambda: &[Rational]) -> bool {
        lambda.len() == self.dim()
            && lambda
                .iter()
                .enumerate()
                .all(|(i, l)| &self.lo[i] <= l && l <= &self.hi[i])
    }

    pub fn contains_region(&self, other: &SearchRegion) -> bool {
        other.dim() == self.dim()
            && self
                .lo
                .iter()
                .zip(&other.lo)
                .all(|(mine, theirs)| mine <= theirs)
            && self
                .hi
                .iter()
                .zip(&other.hi)
                .all(|(mine, theirs)| mine >= theirs)
    }

    /// Corner `mask`: bit `i` set picks the upper bound on dimension `i`.
    pub fn corner(&self, mask: usize) -> Vec<Rational> {
        (0..self.dim())
            .map(|i| {
                if mask >> i & 1 == 1 {
                    self.hi[i].clone()
                } else {
                    self.lo[i].clone()
                }
            })
            .collect()
    }

    pub fn num_corners(&self) -> usize {
        1 << self.dim()
    }
}

/// A constrained minimization instance: energy, constraints, targets, and
/// the multiplier search region.
#[derive(Clone, Debug)]
pub struct LagrangianProblem {
    energy: PairwiseEnergy,
    constraints: Vec<ConstraintSpec>,
    targets: Vec<Rational>,
    region: SearchRegion,
}

impl LagrangianProblem {
    pub fn new(
        energy: PairwiseEnergy,
        constraints: Vec<ConstraintSpec>,
        targets: Vec<Rational>,
        region: SearchRegion,
    ) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::InvalidProblem("at least one constraint required".into()));
        }
        if targets.len() != constraints.len() {
            return Err(Error::DimensionMismatch {
                expected: constraints.len(),
                got: targets.len(),
                context: "constraint targets",
            });
        }
        if region.dim() != constraints.len() {
            return Err(Error::DimensionMismatch {
                expected: constraints.len(),
                got: region.dim(),
                context: "search region dimension",
            });
        }
        for c in &constraints {
            if c.node_coeffs.len() != energy.num_nodes() {
                return Err(Error::DimensionMismatch {
                    expected: energy.num_nodes(),
                    got: c.node_coeffs.len(),
                    context: "constraint node coefficients",
                });
            }
            if c.edge_coeff < Rational::zero() {
                return Err(Error::NegativeEdgeCoefficient);
            }
        }
        Ok(LagrangianProblem {
            energy,
            constraints,
            targets,
            region,
        })
    }

    /// Same problem with all-zero targets.
    pub fn with_zero_targets(
        energy: PairwiseEnergy,
        constraints: Vec<ConstraintSpec>,
        region: SearchRegion,
    ) -> Result<Self> {
        let m = constraints.len();
        LagrangianProblem::new(energy, constraints, vec![Rational::zero(); m], region)
    }

    pub fn energy(&self) -> &PairwiseEnergy {
        &self.energy
    }

    pub fn constraints(&self) -> &[ConstraintSpec] {
        &self.constraints
    }

    pub fn targets(&self) -> &[Rational] {
        &self.targets
    }

    pub fn region(&self) -> &SearchRegion {
        &self.region
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.energy.num_nodes()
    }

    /// Replaces the constraint targets `b`.
    pub fn with_targets(&self, targets: Vec<Rational>) -> Result<Self> {
        LagrangianProblem::new(
            self.energy.clone(),
            self.constraints.clone(),
            targets,
            self.region.clone(),
        )
    }

    /// Replaces the search region.
    pub fn with_region(&self, region: SearchRegion) -> Result<Self> {
        LagrangianProblem::new(
            self.energy.clone(),
            self.constraints.clone(),
            self.targets.clone(),
            region,
        )
    }

    /// The constraint vector `H(x)`.
    pub fn constraint_values(&self, x: &Labeling) -> Result<Vec<Rational>> {
        self.constraints
            .iter()
            .map(|c| c.evaluate(&self.energy, x))
            .collect()
    }

    /// Assembles `L(., lambda)` as a pairwise energy: node-linear terms fold
    /// into unaries, disagreement terms into the edge tables, and
    /// `lambda . (offsets - b)` into the global constant.
    pub fn lagrangian(&self, lambda: &[Rational]) -> Result<PairwiseEnergy> {
        if lambda.len() != self.num_constraints() {
            return Err(Error::DimensionMismatch {
                expected: self.num_constraints(),
                got: lambda.len(),
                context: "multiplier vector",
            });
        }
        for (i, l) in lambda.iter().enumerate() {
            if l < &self.region.lo()[i] || l > &self.region.hi()[i] {
                return Err(Error::LambdaOutsideBox { dim: i });
            }
        }
        Ok(self.lagrangian_unchecked(lambda))
    }

    /// Lagrangian assembly without the region membership check. Used by the
    /// slack transform, whose effective region handling lives upstream.
    pub fn lagrangian_unchecked(&self, lambda: &[Rational]) -> PairwiseEnergy {
        let mut unary = self.energy.unary().to_vec();
        let mut constant = self.energy.constant().clone();
        let mut edge_shift = Rational::zero();
        for (i, c) in self.constraints.iter().enumerate() {
            let l = &lambda[i];
            if l.is_zero() {
                continue;
            }
            for (u, a) in c.node_coeffs.iter().enumerate() {
                if !a.is_zero() {
                    unary[u].1 += l * a;
                }
            }
            if !c.edge_coeff.is_zero() {
                edge_shift += l * &c.edge_coeff;
            }
            constant += l * (&c.offset - &self.targets[i]);
        }
        let edges = self
            .energy
            .edges()
            .iter()
            .map(|e| {
                let mut table = e.table.clone();
                if !edge_shift.is_zero() {
                    table[1] += &edge_shift;
                    table[2] += &edge_shift;
                }
                EdgeTerm {
                    u: e.u,
                    v: e.v,
                    table,
                }
            })
            .collect();
        PairwiseEnergy {
            n: self.energy.num_nodes(),
            unary,
            edges,
            constant,
        }
    }

    /// Per-dimension submodularity bounds for the multipliers.
    ///
    /// For each dimension `i` with a positive edge coefficient `w`, returns
    /// `K_i = max_e deficit(e) / (2 w)`; keeping `lambda_i >= K_i` makes every
    /// Lagrangian edge table submodular on that dimension. Dimensions without
    /// a disagreement term get `None`. The bound is tight: any smaller value
    /// admits a multiplier whose Lagrangian has a supermodular edge.
    pub fn submodularity_lambda_bound(&self) -> Result<Vec<Option<Rational>>> {
        let mut bounds = Vec::with_capacity(self.num_constraints());
        for c in &self.constraints {
            if c.edge_coeff.is_zero() {
                bounds.push(None);
                continue;
            }
            if c.edge_coeff < Rational::zero() {
                return Err(Error::NegativeEdgeCoefficient);
            }
            let max_deficit = self
                .energy
                .edges()
                .iter()
                .map(EdgeTerm::submodularity_deficit)
                .max()
                .unwrap_or_else(Rational::zero);
            bounds.push(Some(max_deficit / (rat(2) * &c.edge_coeff)));
        }
        Ok(bounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    /// `f = x1 + x2`, `h1 = x1 - x2`, `h2 = 2 |x1 - x2|`, box `[-2, 2]^2`.
    pub(crate) fn two_var_problem() -> LagrangianProblem {
        crate::verify::two_var_example()
    }

    #[test]
    fn evaluates_linear_energy() {
        let p = two_var_problem();
        let f = p.energy();
        assert_eq!(f.evaluate(&Labeling::from_bits([1, 0])).unwrap(), rat(1));
        assert_eq!(f.evaluate(&Labeling::from_bits([0, 0])).unwrap(), rat(0));
        assert_eq!(f.evaluate(&Labeling::from_bits([1, 1])).unwrap(), rat(2));
    }

    #[test]
    fn rejects_length_mismatch() {
        let p = two_var_problem();
        assert!(matches!(
            p.energy().evaluate(&Labeling::from_bits([1, 0, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn three_node_energy_matches_hand_evaluation() {
        // f = 2 x0 - x1 + 1/2 x2 + phi(x0, x2) with phi(0,1) = 3, phi(1,0) = 1
        let unary = vec![
            (rat(0), rat(2)),
            (rat(0), rat(-1)),
            (rat(0), ratio(1, 2)),
        ];
        let edge = EdgeTerm {
            u: 0,
            v: 2,
            table: [rat(0), rat(3), rat(1), rat(0)],
        };
        let f = PairwiseEnergy::new(3, unary, vec![edge]).unwrap();
        for idx in 0..8u64 {
            let x = Labeling::from_index(idx, 3);
            let mut expect = Rational::zero();
            if x.get(0) {
                expect += rat(2);
            }
            if x.get(1) {
                expect += rat(-1);
            }
            if x.get(2) {
                expect += ratio(1, 2);
            }
            match (x.get(0), x.get(2)) {
                (false, true) => expect += rat(3),
                (true, false) => expect += rat(1),
                _ => {}
            }
            assert_eq!(f.evaluate(&x).unwrap(), expect, "labeling {x}");
        }
    }

    #[test]
    fn constraint_values_match_worked_example() {
        let p = two_var_problem();
        let h = |bits: [u8; 2]| p.constraint_values(&Labeling::from_bits(bits)).unwrap();
        assert_eq!(h([1, 0]), vec![rat(1), rat(2)]);
        assert_eq!(h([0, 0]), vec![rat(0), rat(0)]);
        assert_eq!(h([1, 1]), vec![rat(0), rat(0)]);
        assert_eq!(h([0, 1]), vec![rat(-1), rat(2)]);
    }

    #[test]
    fn lagrangian_matches_direct_formula() {
        let p = two_var_problem();
        let l = p.lagrangian(&[rat(-2), rat(-2)]).unwrap();
        assert_eq!(l.evaluate(&Labeling::from_bits([1, 0])).unwrap(), rat(-5));
        let l = p.lagrangian(&[rat(2), rat(2)]).unwrap();
        assert_eq!(l.evaluate(&Labeling::from_bits([1, 1])).unwrap(), rat(2));
        assert_eq!(l.evaluate(&Labeling::from_bits([1, 0])).unwrap(), rat(7));
    }

    #[test]
    fn zero_multiplier_is_identity() {
        let p = two_var_problem();
        let l = p.lagrangian(&[rat(0), rat(0)]).unwrap();
        for idx in 0..4u64 {
            let x = Labeling::from_index(idx, 2);
            assert_eq!(
                l.evaluate(&x).unwrap(),
                p.energy().evaluate(&x).unwrap(),
                "labeling {x}"
            );
        }
    }

    #[test]
    fn lagrangian_outside_region_is_rejected() {
        let p = two_var_problem();
        assert!(matches!(
            p.lagrangian(&[rat(3), rat(0)]),
            Err(Error::LambdaOutsideBox { dim: 0 })
        ));
    }

    #[test]
    fn lagrangian_decomposes_exactly() {
        // L(x, lambda) == f(x) + lambda . (H(x) - b) for random-ish inputs.
        let p = two_var_problem();
        let lambdas = [
            vec![ratio(1, 3), ratio(-5, 7)],
            vec![rat(2), ratio(-3, 2)],
            vec![rat(0), rat(2)],
        ];
        for lambda in &lambdas {
            let l = p.lagrangian(lambda).unwrap();
            for idx in 0..4u64 {
                let x = Labeling::from_index(idx, 2);
                let h = p.constraint_values(&x).unwrap();
                let mut expect = p.energy().evaluate(&x).unwrap();
                for i in 0..2 {
                    expect += &lambda[i] * (&h[i] - &p.targets()[i]);
                }
                assert_eq!(l.evaluate(&x).unwrap(), expect);
            }
        }
    }

    #[test]
    fn lagrangian_is_affine_in_lambda() {
        let p = two_var_problem();
        let a = vec![ratio(-1, 2), ratio(3, 4)];
        let b = vec![ratio(3, 2), ratio(-1, 4)];
        let mid: Vec<Rational> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x + y) / rat(2))
            .collect();
        for idx in 0..4u64 {
            let x = Labeling::from_index(idx, 2);
            let va = p.lagrangian(&a).unwrap().evaluate(&x).unwrap();
            let vb = p.lagrangian(&b).unwrap().evaluate(&x).unwrap();
            let vm = p.lagrangian(&mid).unwrap().evaluate(&x).unwrap();
            assert_eq!(vm, (va + vb) / rat(2));
        }
    }

    #[test]
    fn submodularity_detection() {
        let zero = PairwiseEnergy::zero(4);
        assert!(zero.is_submodular());

        let super_edge = EdgeTerm {
            u: 0,
            v: 1,
            table: [rat(1), rat(0), rat(0), rat(1)],
        };
        let f = PairwiseEnergy::new(2, vec![(rat(0), rat(0)); 2], vec![super_edge]).unwrap();
        assert!(!f.is_submodular());
    }

    #[test]
    fn submodularity_bound_signs() {
        // Strictly submodular edge: slack exists, K < 0.
        let edge = EdgeTerm {
            u: 0,
            v: 1,
            table: [rat(0), rat(1), rat(1), rat(0)],
        };
        let f = PairwiseEnergy::new(2, vec![(rat(0), rat(0)); 2], vec![edge]).unwrap();
        let c = ConstraintSpec::new("boundary", vec![rat(0); 2], rat(1), rat(0)).unwrap();
        let p = LagrangianProblem::with_zero_targets(
            f,
            vec![c],
            SearchRegion::new(vec![rat(-1)], vec![rat(10)]).unwrap(),
        )
        .unwrap();
        let k = p.submodularity_lambda_bound().unwrap();
        assert_eq!(k, vec![Some(rat(-1))]);

        // Modular energy: K = 0 exactly.
        let f = PairwiseEnergy::zero(2);
        let c = ConstraintSpec::new("boundary", vec![rat(0); 2], rat(1), rat(0)).unwrap();
        let p = LagrangianProblem::with_zero_targets(
            f,
            vec![c],
            SearchRegion::new(vec![rat(-1)], vec![rat(1)]).unwrap(),
        )
        .unwrap();
        // Modular (edge-free) energies have no deficit at all.
        assert_eq!(
            p.submodularity_lambda_bound().unwrap(),
            vec![Some(rat(0))]
        );
    }

    #[test]
    fn submodularity_bound_is_tight() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = 4;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.7) {
                        edges.push(EdgeTerm {
                            u,
                            v,
                            table: [
                                rat(rng.gen_range(-4..=4)),
                                rat(rng.gen_range(-4..=4)),
                                rat(rng.gen_range(-4..=4)),
                                rat(rng.gen_range(-4..=4)),
                            ],
                        });
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let f = PairwiseEnergy::new(n, vec![(rat(0), rat(0)); n], edges).unwrap();
            let c = ConstraintSpec::new("boundary", vec![rat(0); n], rat(1), rat(0)).unwrap();
            let p = LagrangianProblem::with_zero_targets(
                f,
                vec![c],
                SearchRegion::new(vec![rat(-100)], vec![rat(100)]).unwrap(),
            )
            .unwrap();
            let k = p.submodularity_lambda_bound().unwrap()[0].clone().unwrap();
            assert!(p.lagrangian_unchecked(&[k.clone()]).is_submodular());
            let below = &k - ratio(1, 7);
            assert!(!p.lagrangian_unchecked(&[below]).is_submodular());
        }
    }
}
