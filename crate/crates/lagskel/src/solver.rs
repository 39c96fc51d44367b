//! The three solvers over the dual skeleton.
//!
//! `dual_search` computes the full characteristic set: every labeling that
//! minimizes the Lagrangian somewhere in the search region, each of which is
//! exactly optimal for its own constraint instance. `dual_max` is the
//! selective variant that climbs to the dual maximum for one instance.
//! `adapt_search` chains an inequality-relaxed `dual_max`, an equality
//! `dual_max`, and a small-region `dual_search`, then picks the candidate
//! minimizing a soft-constrained objective.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::energy::{Labeling, LagrangianProblem, SearchRegion};
use crate::error::{Error, Result};
use crate::oracle::{LagrangianOracle, Oracle, OracleResult};
use crate::rational::{dot, Rational};
use crate::skeleton::{Skeleton, VertexId};

/// One discovered minimizer with its signature.
#[derive(Clone, Debug)]
pub struct CharacteristicEntry {
    /// First labeling seen with this `(f, H)` signature.
    pub labeling: Labeling,
    pub energy: Rational,
    pub constraints: Vec<Rational>,
    /// The multiplier vector the oracle was called at when this entry
    /// appeared.
    pub witness_lambda: Vec<Rational>,
}

/// The deduplicated set of constrained minimizers found by a search, in
/// discovery order. No two entries share an `(f, H)` signature.
#[derive(Clone, Debug, Default)]
pub struct CharacteristicSet {
    pub entries: Vec<CharacteristicEntry>,
}

impl CharacteristicSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Signatures as a sorted set, for order-independent comparisons.
    pub fn signatures(&self) -> Vec<(Rational, Vec<Rational>)> {
        let mut sigs: Vec<(Rational, Vec<Rational>)> = self
            .entries
            .iter()
            .map(|e| (e.energy.clone(), e.constraints.clone()))
            .collect();
        sigs.sort();
        sigs
    }

    fn contains_signature(&self, energy: &Rational, constraints: &[Rational]) -> bool {
        self.entries
            .iter()
            .any(|e| &e.energy == energy && e.constraints == constraints)
    }
}

/// Counters from one solver run.
#[derive(Clone, Debug, Default)]
pub struct SearchReport {
    pub oracle_calls: u64,
    pub num_vertices: usize,
    pub num_minimizers: usize,
    /// Cuts that passed exactly through a pre-existing vertex. Zero means
    /// the run was in general position and the query-count identity
    /// `oracle_calls == num_vertices + num_minimizers` is exact.
    pub degeneracies: u64,
    pub wall_time: Duration,
}

/// State carried out of a search that ran out of oracle budget.
#[derive(Debug)]
pub struct PartialSearch {
    pub set: CharacteristicSet,
    pub skeleton: Skeleton,
    pub report: SearchReport,
}

/// How the vertex queue is processed. The characteristic set and the final
/// skeleton are invariant under the order; `Shuffled` exists so tests can
/// exercise exactly that.
#[derive(Clone, Copy, Debug, Default)]
pub enum ProcessOrder {
    #[default]
    Fifo,
    Shuffled(u64),
}

/// Searches the whole region and returns the characteristic set, the final
/// skeleton (whose vertices are all confirmed), and the run report.
///
/// Each queued vertex costs one oracle call: either the call confirms the
/// vertex's dual value, or it discovers a new minimizer whose hyperplane
/// cuts the skeleton and enqueues the cut's new vertices.
pub fn dual_search(
    oracle: &dyn Oracle,
    problem: &LagrangianProblem,
    region: &SearchRegion,
    max_calls: Option<u64>,
) -> Result<(CharacteristicSet, Skeleton, SearchReport)> {
    dual_search_ordered(oracle, problem, region, max_calls, ProcessOrder::Fifo)
}

/// `dual_search` with an explicit queue-processing order.
pub fn dual_search_ordered(
    oracle: &dyn Oracle,
    problem: &LagrangianProblem,
    region: &SearchRegion,
    max_calls: Option<u64>,
    order: ProcessOrder,
) -> Result<(CharacteristicSet, Skeleton, SearchReport)> {
    let started = Instant::now();
    let m = region.dim();
    if m > 3 {
        return Err(Error::UnsupportedDimension(m));
    }
    if m != problem.num_constraints() {
        return Err(Error::DimensionMismatch {
            expected: problem.num_constraints(),
            got: m,
            context: "search region",
        });
    }
    if !oracle.domain().contains_region(region) {
        return Err(Error::InvalidProblem(
            "search region exceeds the oracle's domain".into(),
        ));
    }
    let mut rng = match order {
        ProcessOrder::Fifo => None,
        ProcessOrder::Shuffled(seed) => Some(rand_chacha::ChaCha8Rng::seed_from_u64(seed)),
    };

    let mut report = SearchReport::default();
    let mut set = CharacteristicSet::default();

    // first oracle call at an arbitrary corner: the all-lower one
    let lambda0 = region.corner(0);
    let first = call_counted(oracle, &lambda0, max_calls, &mut report)?;
    record_entry(&mut set, problem, &first, &lambda0)?;
    let mut skeleton = Skeleton::init(region.clone(), first.plane)?;

    let mut queue: VecDeque<VertexId> = skeleton.vertices().map(|v| v.id).collect();
    loop {
        if let Some(r) = &mut rng {
            let mut pending: Vec<VertexId> = queue.drain(..).collect();
            pending.shuffle(r);
            queue.extend(pending);
        }
        let Some(id) = queue.pop_front() else { break };
        if !skeleton.contains(id) {
            continue; // removed by a cut before its turn
        }
        let vertex = skeleton.vertex(id).expect("present").clone();
        let response = match call_counted(oracle, &vertex.point.lambda, max_calls, &mut report) {
            Ok(r) => r,
            Err(Error::BudgetExhausted { .. }) => {
                report.num_vertices = skeleton.num_vertices();
                report.num_minimizers = set.len();
                report.wall_time = started.elapsed();
                return Err(Error::Budget(Box::new(PartialSearch {
                    set,
                    skeleton,
                    report,
                })));
            }
            Err(e) => return Err(e),
        };
        assert!(
            response.value <= vertex.point.z,
            "oracle returned a value above the induced dual"
        );
        if response.value < vertex.point.z {
            record_entry(&mut set, problem, &response, &vertex.point.lambda)?;
            let cut = skeleton.cut(response.plane)?;
            assert!(cut.applied, "strict improvement must cut the skeleton");
            if !cut.touched.is_empty() {
                report.degeneracies += 1;
            }
            queue.extend(cut.added);
        } else {
            skeleton.confirm(id);
        }
    }
    debug_assert!(skeleton.vertices().all(|v| v.confirmed));
    report.num_vertices = skeleton.num_vertices();
    report.num_minimizers = set.len();
    report.wall_time = started.elapsed();
    Ok((set, skeleton, report))
}

fn attach_budget(e: Error, _budget: u64, _calls: u64) -> Error {
    e
}

fn call_counted(
    oracle: &dyn Oracle,
    lambda: &[Rational],
    max_calls: Option<u64>,
    report: &mut SearchReport,
) -> Result<OracleResult> {
    if let Some(budget) = max_calls {
        if report.oracle_calls >= budget {
            return Err(Error::BudgetExhausted {
                budget,
                calls: report.oracle_calls,
            });
        }
    }
    report.oracle_calls += 1;
    oracle.call(lambda)
}

fn record_entry(
    set: &mut CharacteristicSet,
    problem: &LagrangianProblem,
    response: &OracleResult,
    lambda: &[Rational],
) -> Result<()> {
    let energy = problem.energy().evaluate(&response.minimizer)?;
    let constraints = problem.constraint_values(&response.minimizer)?;
    if !set.contains_signature(&energy, &constraints) {
        set.entries.push(CharacteristicEntry {
            labeling: response.minimizer.clone(),
            energy,
            constraints,
            witness_lambda: lambda.to_vec(),
        });
    }
    Ok(())
}

/// Result of a `dual_max` run.
#[derive(Clone, Debug)]
pub struct DualMaxOutcome {
    /// Multipliers attaining the dual maximum over the region.
    pub lambda_star: Vec<Rational>,
    /// The minimizer the oracle returned at `lambda_star`.
    pub minimizer: Labeling,
    /// `max over the region of g`.
    pub dual_value: Rational,
    /// Optimal slack at `lambda_star` when the oracle carries a slack
    /// transform.
    pub slack: Option<Vec<Rational>>,
    pub report: SearchReport,
}

/// Climbs to the maximum of the dual over the region.
///
/// The full skeleton is maintained (cuts need the geometry), but only the
/// current maximum vertex is ever processed: starting from the best initial
/// corner, each oracle call either confirms the vertex — in which case its
/// height is the dual maximum — or cuts the skeleton, and the climb moves to
/// the highest vertex the cut created or touched.
pub fn dual_max(
    oracle: &dyn Oracle,
    problem: &LagrangianProblem,
    region: &SearchRegion,
    max_calls: Option<u64>,
) -> Result<DualMaxOutcome> {
    let started = Instant::now();
    let m = region.dim();
    if m > 3 {
        return Err(Error::UnsupportedDimension(m));
    }
    if !oracle.domain().contains_region(region) {
        return Err(Error::InvalidProblem(
            "search region exceeds the oracle's domain".into(),
        ));
    }
    let mut report = SearchReport::default();
    let mut set = CharacteristicSet::default();

    let lambda0 = region.corner(0);
    let first = call_counted(oracle, &lambda0, max_calls, &mut report)?;
    record_entry(&mut set, problem, &first, &lambda0)?;
    let mut skeleton = Skeleton::init(region.clone(), first.plane)?;

    // start at the highest corner; ties break toward smaller multipliers
    let mut current = skeleton
        .vertices()
        .map(|v| v.id)
        .max_by(|a, b| {
            let va = &skeleton.vertex(*a).unwrap().point;
            let vb = &skeleton.vertex(*b).unwrap().point;
            va.z.cmp(&vb.z)
                .then_with(|| vb.lambda.cmp(&va.lambda))
        })
        .expect("initial skeleton has corners");

    loop {
        let vertex = skeleton.vertex(current).expect("current vertex").clone();
        let response = call_counted(oracle, &vertex.point.lambda, max_calls, &mut report)?;
        debug_assert!(response.value <= vertex.point.z);
        if response.value == vertex.point.z {
            skeleton.confirm(current);
            report.num_vertices = skeleton.num_vertices();
            report.num_minimizers = set.len();
            report.wall_time = started.elapsed();
            return Ok(DualMaxOutcome {
                lambda_star: vertex.point.lambda,
                minimizer: response.minimizer,
                dual_value: vertex.point.z,
                slack: response.slack,
                report,
            });
        }
        record_entry(&mut set, problem, &response, &vertex.point.lambda)?;
        let cut = skeleton.cut(response.plane)?;
        assert!(cut.applied, "strict improvement must cut the skeleton");
        if !cut.touched.is_empty() {
            report.degeneracies += 1;
        }
        // next candidate: the highest point of the new facet
        current = cut
            .added
            .iter()
            .chain(cut.touched.iter())
            .copied()
            .max_by(|a, b| {
                let va = &skeleton.vertex(*a).unwrap().point;
                let vb = &skeleton.vertex(*b).unwrap().point;
                va.z.cmp(&vb.z)
                    .then_with(|| vb.lambda.cmp(&va.lambda))
            })
            .expect("a cut that removed the maximum creates or touches a vertex");
    }
}

/// Inequality slack bounds around a prior target: the admissible window is
/// `[b_hat - below, b_hat + above]` per dimension.
#[derive(Clone, Debug)]
pub struct SlackBounds {
    pub below: Vec<Rational>,
    pub above: Vec<Rational>,
}

impl SlackBounds {
    pub fn new(below: Vec<Rational>, above: Vec<Rational>) -> Result<Self> {
        if below.len() != above.len() {
            return Err(Error::DimensionMismatch {
                expected: below.len(),
                got: above.len(),
                context: "slack bounds",
            });
        }
        if below.iter().chain(&above).any(|k| k < &Rational::zero()) {
            return Err(Error::InvalidConstraint(
                "slack bounds must be nonnegative".into(),
            ));
        }
        Ok(SlackBounds { below, above })
    }

    /// Total window width `k = below + above` per dimension.
    pub fn width(&self) -> Vec<Rational> {
        self.below
            .iter()
            .zip(&self.above)
            .map(|(b, a)| b + a)
            .collect()
    }

    /// The upper equality target `b_bar = b_hat + above`.
    pub fn upper_target(&self, b_hat: &[Rational]) -> Vec<Rational> {
        b_hat.iter().zip(&self.above).map(|(b, a)| b + a).collect()
    }
}

/// Optimal slack for a two-sided inequality at fixed multipliers: `0` where
/// the multiplier is positive, the full window width where it is negative,
/// and `0` by convention at zero (so the oracle stays deterministic).
pub fn optimal_slack(width: &[Rational], lambda: &[Rational]) -> Vec<Rational> {
    width
        .iter()
        .zip(lambda)
        .map(|(k, l)| {
            if l < &Rational::zero() {
                k.clone()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// An oracle for the slack-transformed inequality problem.
///
/// The inner oracle must be built on the upper equality target
/// `b_bar = b_hat + above`; the wrapper adds the slack's contribution
/// `sum_i k_i min(0, lambda_i)` to the value and shifts the supporting
/// plane's coefficients by the optimal slack.
pub struct SlackOracle<O> {
    inner: O,
    width: Vec<Rational>,
}

/// Wraps an oracle with the two-sided inequality slack transform. See
/// `SlackOracle` for the target convention the inner oracle must follow.
pub fn slack_wrap<O: Oracle>(inner: O, bounds: &SlackBounds) -> SlackOracle<O> {
    SlackOracle {
        inner,
        width: bounds.width(),
    }
}

impl<O: Oracle> Oracle for SlackOracle<O> {
    fn call(&self, lambda: &[Rational]) -> Result<OracleResult> {
        let mut result = self.inner.call(lambda)?;
        let y = optimal_slack(&self.width, lambda);
        result.value += dot(&y, lambda);
        for (c, yi) in result.plane.coeffs.iter_mut().zip(&y) {
            *c += yi;
        }
        result.slack = Some(y);
        Ok(result)
    }

    fn domain(&self) -> &SearchRegion {
        self.inner.domain()
    }
}

/// The soft-constraint penalty `rho(H(x) - target)`.
#[derive(Clone, Debug)]
pub struct PenaltySpec {
    pub kind: PenaltyKind,
    pub weights: Vec<Rational>,
    pub target: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PenaltyKind {
    SquaredWeighted,
    AbsoluteWeighted,
}

impl PenaltySpec {
    pub fn new(kind: PenaltyKind, weights: Vec<Rational>, target: Vec<Rational>) -> Result<Self> {
        if weights.len() != target.len() {
            return Err(Error::DimensionMismatch {
                expected: target.len(),
                got: weights.len(),
                context: "penalty weights",
            });
        }
        if weights.iter().any(|w| w < &Rational::zero()) {
            return Err(Error::InvalidConstraint(
                "penalty weights must be nonnegative".into(),
            ));
        }
        Ok(PenaltySpec {
            kind,
            weights,
            target,
        })
    }

    /// `rho(h - target)`, exactly.
    pub fn penalty(&self, h: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for ((hi, ti), w) in h.iter().zip(&self.target).zip(&self.weights) {
            if w.is_zero() {
                continue;
            }
            let gap = hi - ti;
            total += match self.kind {
                PenaltyKind::SquaredWeighted => w * &gap * &gap,
                PenaltyKind::AbsoluteWeighted => {
                    w * if gap < Rational::zero() { -gap } else { gap }
                }
            };
        }
        total
    }

    /// The full soft objective `f + rho(H - target)` of an entry.
    pub fn objective(&self, energy: &Rational, h: &[Rational]) -> Rational {
        energy + self.penalty(h)
    }
}

/// Exact argmin of the soft objective over a characteristic set. Ties break
/// toward smaller energy, then the lexicographically smallest labeling.
pub fn select_soft<'a>(
    set: &'a CharacteristicSet,
    penalty: &PenaltySpec,
) -> Result<&'a CharacteristicEntry> {
    let mut best: Option<(&CharacteristicEntry, Rational)> = None;
    for entry in &set.entries {
        let score = penalty.objective(&entry.energy, &entry.constraints);
        let replace = match &best {
            None => true,
            Some((cur, cur_score)) => {
                score < *cur_score
                    || (score == *cur_score
                        && (entry.energy < cur.energy
                            || (entry.energy == cur.energy && entry.labeling < cur.labeling)))
            }
        };
        if replace {
            best = Some((entry, score));
        }
    }
    best.map(|(e, _)| e)
        .ok_or_else(|| Error::InvalidProblem("empty characteristic set".into()))
}

/// Intermediate values of an `adapt_search` run.
#[derive(Clone, Debug)]
pub struct AdaptDiagnostics {
    /// Constraint instance isolated by the inequality stage.
    pub b_star: Vec<Rational>,
    /// Dual maximizer of the equality stage.
    pub lambda_star: Vec<Rational>,
    /// Size of the final stage's characteristic set.
    pub candidates: usize,
    /// The soft objective of the returned labeling.
    pub objective: Rational,
    pub oracle_calls: u64,
}

/// Hybrid solver for a soft-constrained instance with prior target `b_hat`.
///
/// Stage one relaxes the target to the window `[b_hat - below, b_hat +
/// above]` and climbs the slack-transformed dual, isolating an attainable
/// instance `b* = H(x*) + y*`. Stage two climbs the equality dual at `b*` to
/// find its maximizer `lambda*`. Stage three runs the full search on the box
/// `lambda* +- alpha` (clipped to the problem's region and to the mincut
/// backend's submodularity bounds; zero-width dimensions are pinned by
/// folding the multiplier into the energy). The result is the candidate with
/// the smallest soft objective; the minimizers the first two stages produced
/// compete as well.
pub fn adapt_search(
    problem: &LagrangianProblem,
    b_hat: &[Rational],
    bounds: &SlackBounds,
    alpha: &[Rational],
    penalty: &PenaltySpec,
    backend: crate::oracle::Backend,
    max_calls: Option<u64>,
) -> Result<(Labeling, AdaptDiagnostics)> {
    let m = problem.num_constraints();
    if b_hat.len() != m || alpha.len() != m || bounds.below.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b_hat.len(),
            context: "adapt-search targets",
        });
    }
    if alpha.iter().any(|a| a < &Rational::zero()) {
        return Err(Error::InvalidConstraint(
            "search half-widths must be nonnegative".into(),
        ));
    }
    let mut calls = 0u64;

    // stage one: inequality dual max via the slack transform
    let relaxed = problem.with_targets(bounds.upper_target(b_hat))?;
    let inner = LagrangianOracle::new(&relaxed, backend, relaxed.region().clone())?;
    let slack_oracle = slack_wrap(inner, bounds);
    let stage1 = dual_max(&slack_oracle, &relaxed, relaxed.region(), max_calls)?;
    calls += stage1.report.oracle_calls;
    let y_star = stage1
        .slack
        .clone()
        .expect("slack oracle reports optimal slack");
    let h_star = problem.constraint_values(&stage1.minimizer)?;
    let b_star: Vec<Rational> = h_star.iter().zip(&y_star).map(|(h, y)| h + y).collect();

    // stage two: equality dual max at the isolated instance
    let pinned = problem.with_targets(b_star.clone())?;
    let oracle2 = LagrangianOracle::new(&pinned, backend, pinned.region().clone())?;
    let stage2 = dual_max(&oracle2, &pinned, pinned.region(), max_calls)?;
    calls += stage2.report.oracle_calls;
    let lambda_star = stage2.lambda_star.clone();

    // stage three: full search on the alpha-window around lambda*
    let sub_bounds = match backend {
        crate::oracle::Backend::Mincut => pinned.submodularity_lambda_bound()?,
        crate::oracle::Backend::Brute => vec![None; m],
    };
    let region = problem.region();
    let mut fixed: Vec<(usize, Rational)> = Vec::new();
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    let mut open_dims = Vec::new();
    for i in 0..m {
        let mut l = (&lambda_star[i] - &alpha[i]).max(region.lo()[i].clone());
        let h = (&lambda_star[i] + &alpha[i]).min(region.hi()[i].clone());
        if let Some(k) = &sub_bounds[i] {
            l = l.max(k.clone());
        }
        if l >= h {
            fixed.push((i, lambda_star[i].clone()));
        } else {
            open_dims.push(i);
            lo.push(l);
            hi.push(h);
        }
    }

    let mut candidates = stage_three_candidates(
        &pinned, &fixed, &open_dims, lo, hi, backend, max_calls, &mut calls,
    )?;

    // the earlier stages' minimizers compete in the final selection
    for x in [&stage1.minimizer, &stage2.minimizer] {
        let energy = problem.energy().evaluate(x)?;
        let constraints = problem.constraint_values(x)?;
        if !candidates.contains_signature(&energy, &constraints) {
            candidates.entries.push(CharacteristicEntry {
                labeling: x.clone(),
                energy,
                constraints,
                witness_lambda: lambda_star.clone(),
            });
        }
    }

    let chosen = select_soft(&candidates, penalty)?;
    let diagnostics = AdaptDiagnostics {
        b_star,
        lambda_star,
        candidates: candidates.len(),
        objective: penalty.objective(&chosen.energy, &chosen.constraints),
        oracle_calls: calls,
    };
    Ok((chosen.labeling.clone(), diagnostics))
}

/// Runs the stage-three search with pinned dimensions folded away.
#[allow(clippy::too_many_arguments)]
fn stage_three_candidates(
    pinned: &LagrangianProblem,
    fixed: &[(usize, Rational)],
    open_dims: &[usize],
    lo: Vec<Rational>,
    hi: Vec<Rational>,
    backend: crate::oracle::Backend,
    max_calls: Option<u64>,
    calls: &mut u64,
) -> Result<CharacteristicSet> {
    if open_dims.is_empty() {
        // fully pinned: a single oracle call at lambda*
        let lambda: Vec<Rational> = fixed.iter().map(|(_, l)| l.clone()).collect();
        let oracle = LagrangianOracle::new(pinned, backend, pinned.region().clone())?;
        let response = oracle.call(&lambda)?;
        *calls += 1;
        let mut set = CharacteristicSet::default();
        record_entry(&mut set, pinned, &response, &lambda)?;
        return Ok(set);
    }
    let folded = fold_fixed_dims(pinned, fixed, open_dims, lo, hi)?;
    let oracle = LagrangianOracle::new(&folded, backend, folded.region().clone())?;
    let (set, _, report) = dual_search(&oracle, &folded, folded.region(), max_calls)?;
    *calls += report.oracle_calls;
    // re-evaluate signatures against the original constraint system
    let mut out = CharacteristicSet::default();
    for entry in set.entries {
        let energy = pinned.energy().evaluate(&entry.labeling)?;
        let constraints = pinned.constraint_values(&entry.labeling)?;
        if !out.contains_signature(&energy, &constraints) {
            out.entries.push(CharacteristicEntry {
                labeling: entry.labeling,
                energy,
                constraints,
                witness_lambda: entry.witness_lambda,
            });
        }
    }
    Ok(out)
}

/// Folds dimensions with a fixed multiplier into the energy, producing a
/// lower-dimensional problem over the open dimensions only.
fn fold_fixed_dims(
    problem: &LagrangianProblem,
    fixed: &[(usize, Rational)],
    open_dims: &[usize],
    lo: Vec<Rational>,
    hi: Vec<Rational>,
) -> Result<LagrangianProblem> {
    let fixed_lambda: std::collections::BTreeMap<usize, &Rational> =
        fixed.iter().map(|(i, l)| (*i, l)).collect();
    let mut energy = problem.energy().clone();
    if !fixed.is_empty() {
        // assemble a single-purpose Lagrangian holding only the fixed terms
        let full_lambda: Vec<Rational> = (0..problem.num_constraints())
            .map(|i| {
                fixed_lambda
                    .get(&i)
                    .map(|l| (*l).clone())
                    .unwrap_or_else(Rational::zero)
            })
            .collect();
        energy = problem.lagrangian_unchecked(&full_lambda);
    }
    let constraints: Vec<_> = open_dims
        .iter()
        .map(|&i| problem.constraints()[i].clone())
        .collect();
    let targets: Vec<_> = open_dims
        .iter()
        .map(|&i| problem.targets()[i].clone())
        .collect();
    LagrangianProblem::new(energy, constraints, targets, SearchRegion::new(lo, hi)?)
}
