//! Minimization oracles: the procedures behind `argmin_x L(x, lambda)`.
//!
//! Two backends cover pairwise energies — exhaustive enumeration for
//! verification and st-mincut for submodular instances — and a shortest-path
//! oracle covers the constrained-path reduction, where the solution space is
//! the set of s-t paths instead of all bit vectors. All oracles are pure and
//! deterministic: equal multipliers give identical results, which the
//! skeleton reproducibility guarantees rely on.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeMap, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::energy::{
    ConstraintSpec, EdgeTerm, Labeling, LagrangianProblem, PairwiseEnergy, SearchRegion,
};
use crate::error::{Error, Result};
use crate::rational::{dot, rat, Rational};
use crate::skeleton::{plane_of, Hyperplane};

pub use crate::flow::mincut_minimize;

/// Everything one oracle call yields: the minimizer, the exact dual value,
/// and the supporting hyperplane of the dual at the queried multipliers
/// (`value == plane.eval(lambda)` always). Oracles wrapping a slack
/// transform also report the optimal slack.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub minimizer: Labeling,
    pub value: Rational,
    pub plane: Hyperplane,
    pub slack: Option<Vec<Rational>>,
}

/// The dual-value oracle contract: `call` returns the exact minimum of the
/// Lagrangian over the oracle's solution space, deterministically.
pub trait Oracle {
    fn call(&self, lambda: &[Rational]) -> Result<OracleResult>;

    /// The multiplier region this oracle is valid on.
    fn domain(&self) -> &SearchRegion;
}

/// Exhaustive-enumeration guard: beyond this many variables the search
/// space is considered too large even for verification runs.
pub const BRUTE_LIMIT: usize = 24;

/// Brute oracles precompute the full `(f, H)` signature table up to this
/// many variables, turning each call into a table scan.
const TABLE_LIMIT: usize = 16;

/// Exact minimum of an arbitrary pairwise energy by enumeration.
///
/// Ties break toward the lexicographically smallest labeling. Rejects
/// problems with more than `BRUTE_LIMIT` variables.
pub fn brute_minimize(f: &PairwiseEnergy) -> Result<(Labeling, Rational)> {
    let n = f.num_nodes();
    if n > BRUTE_LIMIT {
        return Err(Error::TooManyVariables {
            n,
            limit: BRUTE_LIMIT,
        });
    }
    let mut best: Option<(Labeling, Rational)> = None;
    for index in 0..(1u64 << n) {
        let x = Labeling::from_index(index, n);
        let value = f.evaluate(&x)?;
        match &best {
            Some((_, v)) if *v <= value => {}
            _ => best = Some((x, value)),
        }
    }
    Ok(best.expect("at least the empty labeling"))
}

/// Which minimizer sits behind a Lagrangian oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Mincut,
    Brute,
}

/// The standard oracle: minimizes the assembled Lagrangian of a problem at
/// each queried multiplier vector.
pub struct LagrangianOracle<'a> {
    problem: &'a LagrangianProblem,
    backend: Backend,
    domain: SearchRegion,
    /// Precomputed `(labeling, f(x), H(x) - b)` rows in lexicographic
    /// labeling order, for small brute-backend instances.
    table: Option<Vec<(Labeling, Rational, Vec<Rational>)>>,
}

impl<'a> LagrangianOracle<'a> {
    /// Builds an oracle over an explicit domain.
    ///
    /// The mincut backend requires the domain to respect the problem's
    /// submodularity bounds on every dimension carrying an edge-disagreement
    /// coefficient; violations are configuration errors naming the offending
    /// dimension and bound.
    pub fn new(
        problem: &'a LagrangianProblem,
        backend: Backend,
        domain: SearchRegion,
    ) -> Result<Self> {
        if domain.dim() != problem.num_constraints() {
            return Err(Error::DimensionMismatch {
                expected: problem.num_constraints(),
                got: domain.dim(),
                context: "oracle domain",
            });
        }
        if backend == Backend::Mincut {
            if !problem.energy().is_submodular() {
                return Err(Error::NonSubmodular);
            }
            let bounds = problem.submodularity_lambda_bound()?;
            for (dim, bound) in bounds.iter().enumerate() {
                if let Some(k) = bound {
                    if &domain.lo()[dim] < k {
                        return Err(Error::BoxViolatesSubmodularity {
                            dim,
                            bound: crate::rational::format_rational(k),
                        });
                    }
                }
            }
        }
        let table = if backend == Backend::Brute && problem.num_nodes() <= TABLE_LIMIT {
            Some(signature_table(problem)?)
        } else {
            None
        };
        Ok(LagrangianOracle {
            problem,
            backend,
            domain,
            table,
        })
    }

    pub fn problem(&self) -> &LagrangianProblem {
        self.problem
    }
}

/// All `(labeling, f(x), H(x) - b)` rows in lexicographic labeling order.
pub fn signature_table(
    problem: &LagrangianProblem,
) -> Result<Vec<(Labeling, Rational, Vec<Rational>)>> {
    let n = problem.num_nodes();
    if n > BRUTE_LIMIT {
        return Err(Error::TooManyVariables {
            n,
            limit: BRUTE_LIMIT,
        });
    }
    let mut rows = Vec::with_capacity(1 << n);
    for index in 0..(1u64 << n) {
        let x = Labeling::from_index(index, n);
        let f = problem.energy().evaluate(&x)?;
        let coeffs: Vec<Rational> = problem
            .constraint_values(&x)?
            .iter()
            .zip(problem.targets())
            .map(|(h, b)| h - b)
            .collect();
        rows.push((x, f, coeffs));
    }
    Ok(rows)
}

impl Oracle for LagrangianOracle<'_> {
    fn call(&self, lambda: &[Rational]) -> Result<OracleResult> {
        if !self.domain.contains(lambda) {
            let dim = lambda
                .iter()
                .enumerate()
                .find(|(i, l)| {
                    *i >= self.domain.dim()
                        || *l < &self.domain.lo()[*i]
                        || *l > &self.domain.hi()[*i]
                })
                .map(|(i, _)| i)
                .unwrap_or(0);
            return Err(Error::LambdaOutsideBox { dim });
        }
        if let Some(table) = &self.table {
            let mut best: Option<(&Labeling, Rational, usize)> = None;
            for (row, (x, f, coeffs)) in table.iter().enumerate() {
                let value = f + dot(coeffs, lambda);
                match &best {
                    Some((_, v, _)) if *v <= value => {}
                    _ => best = Some((x, value, row)),
                }
            }
            let (x, value, row) = best.expect("nonempty table");
            let (_, f, coeffs) = &table[row];
            return Ok(OracleResult {
                minimizer: x.clone(),
                value,
                plane: Hyperplane {
                    constant: f.clone(),
                    coeffs: coeffs.clone(),
                    source: x.clone(),
                },
                slack: None,
            });
        }
        let assembled = self.problem.lagrangian_unchecked(lambda);
        let (minimizer, value) = match self.backend {
            Backend::Brute => brute_minimize(&assembled)?,
            Backend::Mincut => mincut_minimize(&assembled)?,
        };
        let plane = plane_of(self.problem, &minimizer)?;
        debug_assert_eq!(plane.eval(lambda), value);
        Ok(OracleResult {
            minimizer,
            value,
            plane,
            slack: None,
        })
    }

    fn domain(&self) -> &SearchRegion {
        &self.domain
    }
}

/// Convenience constructor: an oracle over the problem's own search region.
pub fn make_lagrangian_oracle(
    problem: &LagrangianProblem,
    backend: Backend,
) -> Result<LagrangianOracle<'_>> {
    LagrangianOracle::new(problem, backend, problem.region().clone())
}

/// A directed edge with a length and one delay per constraint dimension.
#[derive(Clone, Debug)]
pub struct PathEdge {
    pub from: usize,
    pub to: usize,
    pub length: Rational,
    pub delays: Vec<Rational>,
}

/// A directed graph for the constrained shortest-path reduction.
#[derive(Clone, Debug)]
pub struct PathGraph {
    pub num_nodes: usize,
    pub edges: Vec<PathEdge>,
}

/// Oracle over s-t paths: labelings are edge-indicator vectors, and the
/// Lagrangian reweights each edge by its delays.
pub struct ShortestPathOracle {
    graph: PathGraph,
    source: usize,
    target: usize,
    /// Delay thresholds: the `b` of the path problem's constraints.
    thresholds: Vec<Rational>,
    domain: SearchRegion,
    out_edges: Vec<Vec<usize>>,
}

impl ShortestPathOracle {
    /// Validates the instance: consistent dimensions, an s-t path exists,
    /// and the multiplier-modified weights stay nonnegative over the whole
    /// domain (checked at the box corners; the weights are affine in the
    /// multipliers).
    pub fn new(
        graph: PathGraph,
        source: usize,
        target: usize,
        thresholds: Vec<Rational>,
        domain: SearchRegion,
    ) -> Result<Self> {
        let m = domain.dim();
        if thresholds.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: thresholds.len(),
                context: "delay thresholds",
            });
        }
        for (i, e) in graph.edges.iter().enumerate() {
            if e.from >= graph.num_nodes || e.to >= graph.num_nodes {
                return Err(Error::InvalidProblem(format!("edge {i} out of range")));
            }
            if e.delays.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: e.delays.len(),
                    context: "edge delay vector",
                });
            }
        }
        let mut out_edges = vec![Vec::new(); graph.num_nodes];
        for (i, e) in graph.edges.iter().enumerate() {
            out_edges[e.from].push(i);
        }
        // reachability, ignoring weights
        let mut seen = vec![false; graph.num_nodes];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &out_edges[u] {
                let v = graph.edges[e].to;
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        if !seen[target] {
            return Err(Error::NoPath);
        }
        for mask in 0..domain.num_corners() {
            let corner = domain.corner(mask);
            for (i, e) in graph.edges.iter().enumerate() {
                if &e.length + dot(&e.delays, &corner) < Rational::zero() {
                    return Err(Error::NegativeEdgeWeight { edge: i });
                }
            }
        }
        Ok(ShortestPathOracle {
            graph,
            source,
            target,
            thresholds,
            domain,
            out_edges,
        })
    }
}

impl Oracle for ShortestPathOracle {
    fn call(&self, lambda: &[Rational]) -> Result<OracleResult> {
        if !self.domain.contains(lambda) {
            return Err(Error::LambdaOutsideBox { dim: 0 });
        }
        let weights: Vec<Rational> = self
            .graph
            .edges
            .iter()
            .map(|e| &e.length + dot(&e.delays, lambda))
            .collect();
        for (i, w) in weights.iter().enumerate() {
            if w.is_negative() {
                return Err(Error::NegativeEdgeWeight { edge: i });
            }
        }
        // Dijkstra with exact weights; ties settle by node index, and only
        // strict improvements update parents, so paths are deterministic
        let n = self.graph.num_nodes;
        let mut dist: Vec<Option<Rational>> = vec![None; n];
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut settled = vec![false; n];
        let mut heap: BinaryHeap<Reverse<(Rational, usize)>> = BinaryHeap::new();
        dist[self.source] = Some(Rational::zero());
        heap.push(Reverse((Rational::zero(), self.source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if settled[u] {
                continue;
            }
            settled[u] = true;
            for &ei in &self.out_edges[u] {
                let e = &self.graph.edges[ei];
                let candidate = &d + &weights[ei];
                let better = match &dist[e.to] {
                    None => true,
                    Some(cur) => candidate < *cur,
                };
                if better {
                    dist[e.to] = Some(candidate.clone());
                    parent[e.to] = Some(ei);
                    heap.push(Reverse((candidate, e.to)));
                }
            }
        }
        if dist[self.target].is_none() {
            return Err(Error::NoPath);
        }
        let mut on_path = vec![false; self.graph.edges.len()];
        let mut node = self.target;
        while node != self.source {
            let ei = parent[node].expect("path reconstruction");
            on_path[ei] = true;
            node = self.graph.edges[ei].from;
        }
        let minimizer = Labeling::new(on_path.clone());
        let mut constant = Rational::zero();
        let mut delay_sum = vec![Rational::zero(); self.thresholds.len()];
        for (ei, used) in on_path.iter().enumerate() {
            if *used {
                let e = &self.graph.edges[ei];
                constant += &e.length;
                for (i, d) in e.delays.iter().enumerate() {
                    delay_sum[i] += d;
                }
            }
        }
        let coeffs: Vec<Rational> = delay_sum
            .iter()
            .zip(&self.thresholds)
            .map(|(d, b)| d - b)
            .collect();
        let value = &constant + dot(&coeffs, lambda);
        Ok(OracleResult {
            minimizer,
            value,
            plane: Hyperplane {
                constant,
                coeffs,
                source: Labeling::new(on_path),
            },
            slack: None,
        })
    }

    fn domain(&self) -> &SearchRegion {
        &self.domain
    }
}

/// Builds the project-selection (maximal closure) energy: minimizers select
/// a maximum-profit set of projects closed under the prerequisite relation.
///
/// Profits are negated into the unaries; each prerequisite pair `(i, j)`
/// ("selecting i requires j") puts a finite penalty larger than any
/// achievable profit on the violating configuration, so the energy stays
/// rational, exact, and submodular.
pub fn project_selection_energy(
    profits: &[Rational],
    prerequisites: &[(usize, usize)],
) -> Result<PairwiseEnergy> {
    let n = profits.len();
    let mut penalty = rat(1);
    for q in profits {
        penalty += q.abs();
    }
    let mut tables: BTreeMap<(usize, usize), [Rational; 4]> = BTreeMap::new();
    for &(i, j) in prerequisites {
        if i == j {
            return Err(Error::InvalidProblem(format!(
                "prerequisite relation must be irreflexive (project {i})"
            )));
        }
        if i >= n || j >= n {
            return Err(Error::InvalidProblem(format!(
                "prerequisite ({i}, {j}) out of range"
            )));
        }
        let key = (i.min(j), i.max(j));
        let table = tables
            .entry(key)
            .or_insert_with(|| std::array::from_fn(|_| Rational::zero()));
        // violation: x_i = 1 and x_j = 0
        let index = if i < j { 2 } else { 1 };
        table[index] += &penalty;
    }
    let unary = profits.iter().map(|q| (Rational::zero(), -q)).collect();
    let edges = tables
        .into_iter()
        .map(|((u, v), table)| EdgeTerm { u, v, table })
        .collect();
    PairwiseEnergy::new(n, unary, edges)
}

/// Indicator constraint counting how many members of `group` are selected,
/// for the grouped variants of project selection and path problems.
pub fn group_count_constraint(
    n: usize,
    group: &[usize],
    name: impl Into<String>,
) -> Result<ConstraintSpec> {
    let mut coeffs = vec![Rational::zero(); n];
    for &i in group {
        if i >= n {
            return Err(Error::InvalidProblem(format!("group member {i} out of range")));
        }
        coeffs[i] = Rational::one();
    }
    ConstraintSpec::linear(name, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::verify::two_var_example;
    use rand::{Rng, SeedableRng};

    #[test]
    fn brute_finds_named_minimizers_of_the_worked_example() {
        let problem = two_var_example();
        let l = problem.lagrangian(&[rat(-2), rat(-2)]).unwrap();
        let (x, v) = brute_minimize(&l).unwrap();
        assert_eq!(x, Labeling::from_bits([1, 0]));
        assert_eq!(v, rat(-5));

        let l = problem.lagrangian(&[rat(2), ratio(-3, 2)]).unwrap();
        let (x, v) = brute_minimize(&l).unwrap();
        assert_eq!(x, Labeling::from_bits([0, 1]));
        assert_eq!(v, rat(-4));
    }

    #[test]
    fn brute_breaks_ties_lexicographically() {
        let f = PairwiseEnergy::zero(3);
        let (x, v) = brute_minimize(&f).unwrap();
        assert_eq!(x, Labeling::zeros(3));
        assert_eq!(v, rat(0));
    }

    #[test]
    fn brute_guards_against_blowup() {
        let f = PairwiseEnergy::zero(25);
        assert!(matches!(
            brute_minimize(&f),
            Err(Error::TooManyVariables { n: 25, limit: 24 })
        ));
    }

    #[test]
    fn lagrangian_oracle_matches_worked_example() {
        let problem = two_var_example();
        let oracle = make_lagrangian_oracle(&problem, Backend::Brute).unwrap();
        let r = oracle.call(&[rat(-2), rat(2)]).unwrap();
        assert_eq!(r.minimizer, Labeling::from_bits([0, 0]));
        assert_eq!(r.value, rat(0));
        assert_eq!(r.plane.eval(&[rat(-2), rat(2)]), rat(0));

        // zero multipliers reduce to the unconstrained energy
        let r = oracle.call(&[rat(0), rat(0)]).unwrap();
        assert_eq!(r.value, rat(0));
        assert_eq!(
            r.value,
            problem.energy().evaluate(&r.minimizer).unwrap()
        );
    }

    #[test]
    fn oracle_rejects_out_of_domain_calls() {
        let problem = two_var_example();
        let oracle = make_lagrangian_oracle(&problem, Backend::Brute).unwrap();
        assert!(matches!(
            oracle.call(&[rat(5), rat(0)]),
            Err(Error::LambdaOutsideBox { dim: 0 })
        ));
    }

    #[test]
    fn oracle_is_deterministic_and_sound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let problem = crate::verify::random_problem(&mut rng, 3..=8, 1..=2, false);
            let oracle = make_lagrangian_oracle(&problem, Backend::Brute).unwrap();
            let table = signature_table(&problem).unwrap();
            for _ in 0..5 {
                let lambda: Vec<Rational> = (0..problem.num_constraints())
                    .map(|i| {
                        let lo = &problem.region().lo()[i];
                        let hi = &problem.region().hi()[i];
                        lo + ratio(rng.gen_range(0..=4), 4) * (hi - lo)
                    })
                    .collect();
                let a = oracle.call(&lambda).unwrap();
                let b = oracle.call(&lambda).unwrap();
                assert_eq!(a.minimizer, b.minimizer);
                assert_eq!(a.value, b.value);
                // soundness: value <= L(x, lambda) for every labeling
                for (_, f, coeffs) in &table {
                    assert!(a.value <= f + dot(coeffs, &lambda));
                }
                assert_eq!(a.plane.eval(&lambda), a.value);
            }
        }
    }

    #[test]
    fn dual_is_concave_along_segments() {
        let problem = two_var_example();
        let oracle = make_lagrangian_oracle(&problem, Backend::Brute).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..40 {
            let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Rational> {
                (0..2).map(|_| ratio(rng.gen_range(-8..=8), 4)).collect()
            };
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let mid: Vec<Rational> = a
                .iter()
                .zip(&b)
                .map(|(x, y)| (x + y) / rat(2))
                .collect();
            let ga = oracle.call(&a).unwrap().value;
            let gb = oracle.call(&b).unwrap().value;
            let gm = oracle.call(&mid).unwrap().value;
            assert!(gm >= (ga + gb) / rat(2));
        }
    }

    #[test]
    fn shortest_path_oracle_picks_lagrangian_optimal_paths() {
        let graph = PathGraph {
            num_nodes: 2,
            edges: vec![
                PathEdge {
                    from: 0,
                    to: 1,
                    length: rat(1),
                    delays: vec![rat(5)],
                },
                PathEdge {
                    from: 0,
                    to: 1,
                    length: rat(3),
                    delays: vec![rat(1)],
                },
            ],
        };
        let domain = SearchRegion::new(vec![rat(0)], vec![rat(2)]).unwrap();
        let oracle =
            ShortestPathOracle::new(graph, 0, 1, vec![rat(0)], domain).unwrap();
        let r = oracle.call(&[rat(0)]).unwrap();
        assert_eq!(r.minimizer, Labeling::from_bits([1, 0]));
        assert_eq!(r.value, rat(1));
        let r = oracle.call(&[rat(1)]).unwrap();
        assert_eq!(r.minimizer, Labeling::from_bits([0, 1]));
        assert_eq!(r.value, rat(4));
    }

    #[test]
    fn shortest_path_oracle_agrees_with_path_enumeration_on_a_triangle() {
        // paths 0 -> 2: direct edge, or via node 1
        let graph = PathGraph {
            num_nodes: 3,
            edges: vec![
                PathEdge {
                    from: 0,
                    to: 2,
                    length: rat(5),
                    delays: vec![rat(1)],
                },
                PathEdge {
                    from: 0,
                    to: 1,
                    length: rat(1),
                    delays: vec![rat(3)],
                },
                PathEdge {
                    from: 1,
                    to: 2,
                    length: rat(1),
                    delays: vec![rat(3)],
                },
            ],
        };
        let domain = SearchRegion::new(vec![rat(0)], vec![rat(3)]).unwrap();
        let oracle =
            ShortestPathOracle::new(graph, 0, 2, vec![rat(4)], domain).unwrap();
        // direct path: 5 + lambda (1 - 4); via 1: 2 + lambda (6 - 4)
        for step in 0..=6 {
            let lambda = vec![ratio(step, 2)];
            let direct = rat(5) + &lambda[0] * rat(-3);
            let via = rat(2) + &lambda[0] * rat(2);
            let r = oracle.call(&lambda).unwrap();
            assert_eq!(r.value, direct.clone().min(via.clone()));
        }
    }

    #[test]
    fn shortest_path_rejects_negative_weights_and_missing_paths() {
        let graph = PathGraph {
            num_nodes: 2,
            edges: vec![PathEdge {
                from: 0,
                to: 1,
                length: rat(1),
                delays: vec![rat(-1)],
            }],
        };
        let domain = SearchRegion::new(vec![rat(0)], vec![rat(2)]).unwrap();
        assert!(matches!(
            ShortestPathOracle::new(graph, 0, 1, vec![rat(0)], domain.clone()),
            Err(Error::NegativeEdgeWeight { edge: 0 })
        ));

        let graph = PathGraph {
            num_nodes: 3,
            edges: vec![PathEdge {
                from: 0,
                to: 1,
                length: rat(1),
                delays: vec![rat(1)],
            }],
        };
        assert!(matches!(
            ShortestPathOracle::new(graph, 0, 2, vec![rat(0)], domain),
            Err(Error::NoPath)
        ));
    }

    #[test]
    fn project_selection_examples() {
        // single profitable project
        let f = project_selection_energy(&[rat(5)], &[]).unwrap();
        let (x, v) = brute_minimize(&f).unwrap();
        assert_eq!(x, Labeling::from_bits([1]));
        assert_eq!(v, rat(-5));

        // profitable project with a costly prerequisite still worth taking
        let f = project_selection_energy(&[rat(5), rat(-3)], &[(0, 1)]).unwrap();
        assert!(f.is_submodular());
        let (x, v) = brute_minimize(&f).unwrap();
        assert_eq!(x, Labeling::from_bits([1, 1]));
        assert_eq!(v, rat(-2));

        // prerequisite too costly: select nothing
        let f = project_selection_energy(&[rat(1), rat(-3)], &[(0, 1)]).unwrap();
        let (x, v) = brute_minimize(&f).unwrap();
        assert_eq!(x, Labeling::from_bits([0, 0]));
        assert_eq!(v, rat(0));
    }

    #[test]
    fn project_selection_penalty_dominates_all_closures() {
        // exhaustive check: minimizers are exactly the max-profit closed sets
        let profits = [rat(4), rat(-1), rat(2), rat(-5)];
        let prereqs = [(0, 1), (2, 1), (2, 3)];
        let f = project_selection_energy(&profits, &prereqs).unwrap();
        let (x, v) = brute_minimize(&f).unwrap();
        let mut best = Rational::zero();
        let mut best_bits = Labeling::zeros(4);
        for index in 0..16u64 {
            let cand = Labeling::from_index(index, 4);
            let closed = prereqs
                .iter()
                .all(|&(i, j)| !cand.get(i) || cand.get(j));
            if !closed {
                continue;
            }
            let profit: Rational = profits
                .iter()
                .enumerate()
                .filter(|(i, _)| cand.get(*i))
                .map(|(_, q)| q.clone())
                .sum();
            if profit > best {
                best = profit;
                best_bits = cand;
            }
        }
        assert_eq!(v, -best);
        assert_eq!(x, best_bits);
    }

    #[test]
    fn group_count_constraint_counts_members() {
        let c = group_count_constraint(4, &[0, 2], "group").unwrap();
        let f = PairwiseEnergy::zero(4);
        assert_eq!(
            c.evaluate(&f, &Labeling::from_bits([1, 1, 1, 0])).unwrap(),
            rat(2)
        );
    }
}
