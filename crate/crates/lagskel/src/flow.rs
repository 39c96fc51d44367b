//! Exact st-mincut for submodular pairwise energies.
//!
//! The energy is reparameterized into a flow network with nonnegative
//! rational capacities, capacities are scaled to integers by the common
//! denominator, and max flow runs with arbitrary-precision integers so the
//! cut value is exact. The solver keeps source and sink search trees alive
//! across augmentations (grow / augment / adopt), which is the usual scheme
//! for grid-shaped vision graphs.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::energy::{Labeling, PairwiseEnergy};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A directed flow network with integer capacities.
///
/// Node 0 is the source and node 1 the sink; energy node `i` maps to
/// network node `i + 2`. Instances are single-use: `max_flow` consumes the
/// residual state.
pub struct FlowNetwork {
    num_nodes: usize,
    // arcs come in pairs: arc 2k and its reverse 2k+1
    arc_to: Vec<u32>,
    arc_residual: Vec<BigInt>,
    adjacency: Vec<Vec<u32>>,
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

impl FlowNetwork {
    pub fn new(num_nodes: usize) -> Self {
        FlowNetwork {
            num_nodes,
            arc_to: Vec::new(),
            arc_residual: Vec::new(),
            adjacency: vec![Vec::new(); num_nodes],
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    /// Adds a directed arc with the given capacity (and a zero-capacity
    /// reverse arc). Zero-capacity arcs are skipped entirely.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: BigInt) {
        debug_assert!(capacity >= BigInt::zero());
        if capacity.is_zero() {
            return;
        }
        let id = self.arc_to.len() as u32;
        self.arc_to.push(to as u32);
        self.arc_residual.push(capacity);
        self.arc_to.push(from as u32);
        self.arc_residual.push(BigInt::zero());
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
    }

    /// Builds the network for a submodular energy.
    ///
    /// Returns the network, the additive constant collected during
    /// reparameterization, and the integer scale: the true minimum equals
    /// `max_flow / scale + constant`.
    pub fn from_energy(f: &PairwiseEnergy) -> Result<(Self, Rational, BigInt)> {
        if !f.is_submodular() {
            return Err(Error::NonSubmodular);
        }
        let n = f.num_nodes();
        let mut constant = f.constant().clone();
        // effective unaries after absorbing the linear part of each edge term
        let mut phi0: Vec<Rational> = f.unary().iter().map(|(a, _)| a.clone()).collect();
        let mut phi1: Vec<Rational> = f.unary().iter().map(|(_, b)| b.clone()).collect();
        // arc capacities in rational form: (u, v, cap) meaning u -> v
        let mut pair_caps = Vec::with_capacity(f.edges().len());
        for e in f.edges() {
            let [a, b, c, d] = &e.table;
            // phi(xu, xv) = a + (c - a) xu + (d - c) xv + (b + c - a - d)(1 - xu) xv
            constant += a;
            phi1[e.u] += c - a;
            phi1[e.v] += d - c;
            let cross = b + c - a - d;
            debug_assert!(cross >= Rational::zero());
            pair_caps.push((e.u, e.v, cross));
        }
        let mut terminal_caps = Vec::with_capacity(n);
        for i in 0..n {
            let base = if phi0[i] <= phi1[i] {
                phi0[i].clone()
            } else {
                phi1[i].clone()
            };
            constant += &base;
            // s -> i pays for label 1, i -> t pays for label 0
            terminal_caps.push((&phi1[i] - &base, &phi0[i] - &base));
        }

        let mut scale = BigInt::one();
        for (_, _, c) in &pair_caps {
            scale = scale.lcm(c.denom());
        }
        for (c1, c0) in &terminal_caps {
            scale = scale.lcm(c1.denom());
            scale = scale.lcm(c0.denom());
        }

        let to_int = |r: &Rational| -> BigInt {
            let scaled = r * Rational::from_integer(scale.clone());
            debug_assert!(scaled.denom().is_one());
            scaled.to_integer()
        };

        let mut net = FlowNetwork::new(n + 2);
        for (i, (cap_label1, cap_label0)) in terminal_caps.iter().enumerate() {
            net.add_arc(SOURCE, i + 2, to_int(cap_label1));
            net.add_arc(i + 2, SINK, to_int(cap_label0));
        }
        for (u, v, c) in &pair_caps {
            net.add_arc(u + 2, v + 2, to_int(c));
        }
        Ok((net, constant, scale))
    }

    /// Runs max flow and returns `(flow value, source side)` where the
    /// source side is the set of nodes reachable from the source in the
    /// final residual graph (the canonical minimum cut).
    pub fn max_flow(mut self) -> (BigInt, Vec<bool>) {
        let mut flow = BigInt::zero();
        let mut solver = BkState::new(self.num_nodes);
        while let Some(bridge) = solver.grow(&self) {
            flow += solver.augment(&mut self, bridge);
            solver.adopt(&self);
        }
        let mut reachable = vec![false; self.num_nodes];
        reachable[SOURCE] = true;
        let mut queue = VecDeque::from([SOURCE]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adjacency[u] {
                let v = self.arc_to[a as usize] as usize;
                if !reachable[v] && self.arc_residual[a as usize].is_positive() {
                    reachable[v] = true;
                    queue.push_back(v);
                }
            }
        }
        (flow, reachable)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tree {
    Free,
    Source,
    Sink,
}

struct BkState {
    tree: Vec<Tree>,
    // arc carrying flow between the node and its parent: for source-tree
    // nodes the arc parent -> node, for sink-tree nodes the arc node -> parent
    parent_arc: Vec<Option<u32>>,
    active: VecDeque<usize>,
    orphans: VecDeque<usize>,
}

impl BkState {
    fn new(num_nodes: usize) -> Self {
        let mut tree = vec![Tree::Free; num_nodes];
        tree[SOURCE] = Tree::Source;
        tree[SINK] = Tree::Sink;
        BkState {
            tree,
            parent_arc: vec![None; num_nodes],
            active: VecDeque::from([SOURCE, SINK]),
            orphans: VecDeque::new(),
        }
    }

    fn parent_of(&self, net: &FlowNetwork, u: usize) -> Option<usize> {
        self.parent_arc[u].map(|a| match self.tree[u] {
            // the stored arc points away from the parent for source-tree
            // nodes, so its reverse ends at the parent
            Tree::Source => net.arc_to[(a ^ 1) as usize] as usize,
            Tree::Sink => net.arc_to[a as usize] as usize,
            Tree::Free => unreachable!(),
        })
    }

    fn rooted(&self, net: &FlowNetwork, mut u: usize) -> bool {
        loop {
            if u == SOURCE || u == SINK {
                return true;
            }
            match self.parent_of(net, u) {
                Some(p) => u = p,
                None => return false,
            }
        }
    }

    /// Grows the trees until they touch; returns the bridging arc oriented
    /// from the source side to the sink side, or None when no augmenting
    /// path remains.
    fn grow(&mut self, net: &FlowNetwork) -> Option<u32> {
        while let Some(&p) = self.active.front() {
            if self.tree[p] == Tree::Free {
                self.active.pop_front();
                continue;
            }
            let own = self.tree[p];
            for &a in &net.adjacency[p] {
                // residual in the growth direction: away from the source
                // tree, into the sink tree
                let growth_arc = match own {
                    Tree::Source => a,
                    Tree::Sink => a ^ 1,
                    Tree::Free => unreachable!(),
                };
                if !net.arc_residual[growth_arc as usize].is_positive() {
                    continue;
                }
                let q = net.arc_to[a as usize] as usize;
                match self.tree[q] {
                    Tree::Free => {
                        self.tree[q] = own;
                        self.parent_arc[q] = Some(growth_arc);
                        self.active.push_back(q);
                    }
                    t if t == own => {}
                    // p and q are in opposite trees; growth_arc is already
                    // oriented from the source side to the sink side
                    _ => return Some(growth_arc),
                }
            }
            self.active.pop_front();
        }
        None
    }

    /// Pushes the bottleneck along the path through `bridge` and queues the
    /// nodes orphaned by saturated tree arcs.
    fn augment(&mut self, net: &mut FlowNetwork, bridge: u32) -> BigInt {
        let mut path = vec![bridge];
        let mut u = net.arc_to[(bridge ^ 1) as usize] as usize; // source-side endpoint
        while u != SOURCE {
            let a = self.parent_arc[u].expect("source tree invariant");
            path.push(a);
            u = net.arc_to[(a ^ 1) as usize] as usize;
        }
        let mut v = net.arc_to[bridge as usize] as usize; // sink-side endpoint
        while v != SINK {
            let a = self.parent_arc[v].expect("sink tree invariant");
            path.push(a);
            v = net.arc_to[a as usize] as usize;
        }
        let bottleneck = path
            .iter()
            .map(|&a| &net.arc_residual[a as usize])
            .min()
            .expect("nonempty path")
            .clone();
        debug_assert!(bottleneck.is_positive());
        for &a in &path {
            net.arc_residual[a as usize] -= &bottleneck;
            net.arc_residual[(a ^ 1) as usize] += &bottleneck;
            if net.arc_residual[a as usize].is_zero() {
                // orphan the child side of a saturated tree arc
                let head = net.arc_to[a as usize] as usize;
                let tail = net.arc_to[(a ^ 1) as usize] as usize;
                if self.tree[head] == Tree::Source && self.parent_arc[head] == Some(a) {
                    self.parent_arc[head] = None;
                    self.orphans.push_back(head);
                }
                if self.tree[tail] == Tree::Sink && self.parent_arc[tail] == Some(a) {
                    self.parent_arc[tail] = None;
                    self.orphans.push_back(tail);
                }
            }
        }
        bottleneck
    }

    /// Reattaches orphans to their tree or frees them.
    fn adopt(&mut self, net: &FlowNetwork) {
        while let Some(u) = self.orphans.pop_front() {
            let own = self.tree[u];
            debug_assert!(own != Tree::Free);
            let mut found = None;
            for &a in &net.adjacency[u] {
                // arc that could carry flow from a parent in our tree
                let link = match own {
                    Tree::Source => a ^ 1, // parent -> u
                    Tree::Sink => a,       // u -> parent
                    Tree::Free => unreachable!(),
                };
                if !net.arc_residual[link as usize].is_positive() {
                    continue;
                }
                let p = net.arc_to[a as usize] as usize;
                if self.tree[p] == own && self.rooted(net, p) {
                    found = Some(link);
                    break;
                }
            }
            if let Some(link) = found {
                self.parent_arc[u] = Some(link);
                continue;
            }
            // no parent: u leaves the tree, neighbors get notified
            for &a in &net.adjacency[u] {
                let p = net.arc_to[a as usize] as usize;
                if self.tree[p] != own {
                    continue;
                }
                if self.parent_of(net, p) == Some(u) {
                    self.parent_arc[p] = None;
                    self.orphans.push_back(p);
                }
                // p may be able to grow toward u again later
                let link = match own {
                    Tree::Source => a ^ 1,
                    Tree::Sink => a,
                    Tree::Free => unreachable!(),
                };
                if net.arc_residual[link as usize].is_positive() {
                    self.active.push_back(p);
                }
            }
            self.tree[u] = Tree::Free;
        }
    }
}

/// Exact global minimizer of a submodular pairwise energy by st-mincut.
///
/// The returned labeling is canonical: nodes reachable from the source in
/// the final residual graph take the source-side label (0), so ties break
/// deterministically toward the minimal source side.
pub fn mincut_minimize(f: &PairwiseEnergy) -> Result<(Labeling, Rational)> {
    let (net, constant, scale) = FlowNetwork::from_energy(f)?;
    let (flow, reachable) = net.max_flow();
    let value = Rational::new(flow, scale) + constant;
    let labeling = Labeling::new(
        (0..f.num_nodes())
            .map(|i| !reachable[i + 2]) // sink side takes label 1
            .collect(),
    );
    debug_assert_eq!(f.evaluate(&labeling).unwrap(), value);
    Ok((labeling, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::EdgeTerm;
    use crate::oracle::brute_minimize;
    use crate::rational::{rat, ratio};
    use rand::{Rng, SeedableRng};

    #[test]
    fn single_node_argmin() {
        let f = PairwiseEnergy::new(1, vec![(rat(0), rat(-1))], vec![]).unwrap();
        let (x, v) = mincut_minimize(&f).unwrap();
        assert_eq!(x, Labeling::from_bits([1]));
        assert_eq!(v, rat(-1));
    }

    #[test]
    fn all_zero_energy_is_deterministic() {
        let f = PairwiseEnergy::zero(5);
        let (x1, v1) = mincut_minimize(&f).unwrap();
        let (x2, v2) = mincut_minimize(&f).unwrap();
        assert_eq!(v1, rat(0));
        assert_eq!(v2, rat(0));
        assert_eq!(x1, x2);
    }

    #[test]
    fn rejects_supermodular_energy() {
        let edge = EdgeTerm {
            u: 0,
            v: 1,
            table: [rat(1), rat(0), rat(0), rat(1)],
        };
        let f = PairwiseEnergy::new(2, vec![(rat(0), rat(0)); 2], vec![edge]).unwrap();
        assert!(matches!(mincut_minimize(&f), Err(Error::NonSubmodular)));
    }

    #[test]
    fn rational_capacities_stay_exact() {
        let edge = EdgeTerm {
            u: 0,
            v: 1,
            table: [rat(0), ratio(1, 3), ratio(1, 5), rat(0)],
        };
        let f = PairwiseEnergy::new(
            2,
            vec![(ratio(1, 7), rat(0)), (rat(0), ratio(2, 9))],
            vec![edge],
        )
        .unwrap();
        let (_, v) = mincut_minimize(&f).unwrap();
        let (_, bv) = brute_minimize(&f).unwrap();
        assert_eq!(v, bv);
    }

    #[test]
    fn agrees_with_exhaustive_search_on_random_energies() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(202);
        for round in 0..100 {
            let n = rng.gen_range(2..=12);
            let f = crate::verify::random_submodular_energy(&mut rng, n, 6);
            let (x, v) = mincut_minimize(&f).unwrap();
            let (_, bv) = brute_minimize(&f).unwrap();
            assert_eq!(v, bv, "round {round}");
            assert_eq!(f.evaluate(&x).unwrap(), v, "round {round}");
        }
    }
}
