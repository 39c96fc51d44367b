//! The skeleton (vertices and edges) of an induced dual over a box.
//!
//! The dual value of a set of discovered labelings is the pointwise minimum
//! of their hyperplanes; the region under it, intersected with the search
//! box, is a convex polyhedron that is unbounded downward. This module
//! maintains that polyhedron's 1-skeleton exactly: finite vertices and
//! segment edges on the envelope and box walls, plus one vertical downward
//! ray at each box corner. Cuts insert one hyperplane at a time, removing
//! everything strictly above it and stitching the new facet's boundary in.
//!
//! `rebuild_geometry` constructs the same skeleton from scratch by
//! enumerating candidate support lines; it shares nothing with the
//! incremental path and exists to cross-check it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::io::Write;

use num_traits::{One, Zero};

use crate::energy::{Labeling, LagrangianProblem, SearchRegion};
use crate::error::{Error, Result};
use crate::geometry::{hull_edges, solve_affine};
use crate::rational::{dot, format_rational, Rational};

/// The graph of `lambda -> L(x, lambda)` for one labeling:
/// `z = constant + coeffs . lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub constant: Rational,
    pub coeffs: Vec<Rational>,
    /// The labeling this plane came from.
    pub source: Labeling,
}

impl Hyperplane {
    pub fn eval(&self, lambda: &[Rational]) -> Rational {
        &self.constant + dot(&self.coeffs, lambda)
    }

    /// Two planes are the same cut iff constant and coefficients agree;
    /// the witness labeling does not participate.
    pub fn same_plane(&self, other: &Hyperplane) -> bool {
        self.constant == other.constant && self.coeffs == other.coeffs
    }
}

/// Builds the hyperplane of a labeling: `coeff_i = h_i(x) - b_i`,
/// `constant = f(x)`.
pub fn plane_of(problem: &LagrangianProblem, x: &Labeling) -> Result<Hyperplane> {
    let constant = problem.energy().evaluate(x)?;
    let h = problem.constraint_values(x)?;
    let coeffs = h
        .iter()
        .zip(problem.targets())
        .map(|(hi, bi)| hi - bi)
        .collect();
    Ok(Hyperplane {
        constant,
        coeffs,
        source: x.clone(),
    })
}

/// A point of the dual space: multipliers plus the dual value coordinate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DualPoint {
    pub lambda: Vec<Rational>,
    pub z: Rational,
}

impl DualPoint {
    pub fn new(lambda: Vec<Rational>, z: Rational) -> Self {
        DualPoint { lambda, z }
    }

    /// Coordinates as one vector, multipliers first.
    pub fn coords(&self) -> Vec<Rational> {
        let mut c = self.lambda.clone();
        c.push(self.z.clone());
        c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u64);

#[derive(Clone, Debug)]
pub struct SkeletonVertex {
    pub id: VertexId,
    pub point: DualPoint,
    /// Set once a solver has verified that `z` equals the true dual value.
    pub confirmed: bool,
}

/// An edge of the skeleton: a segment between two vertices, or the vertical
/// downward ray hanging from a box-corner vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonEdge {
    Segment(VertexId, VertexId),
    VerticalRay(VertexId),
}

/// What a cut did: vertices born on the cutting plane, vertices removed
/// (strictly above), and pre-existing vertices the plane passed through
/// exactly (degeneracies).
#[derive(Clone, Debug, Default)]
pub struct CutReport {
    pub applied: bool,
    pub added: Vec<VertexId>,
    pub removed: Vec<(VertexId, DualPoint)>,
    pub touched: Vec<VertexId>,
}

/// Exact geometric content of a skeleton, for equality comparisons that
/// ignore vertex identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonGeometry {
    pub vertices: BTreeSet<Vec<Rational>>,
    pub segments: BTreeSet<(Vec<Rational>, Vec<Rational>)>,
    /// Top endpoints of the vertical corner rays.
    pub rays: BTreeSet<Vec<Rational>>,
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    region: SearchRegion,
    vertices: BTreeMap<VertexId, SkeletonVertex>,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    /// Current top vertex of the ray at each box corner, indexed by corner
    /// bitmask.
    ray_tops: Vec<VertexId>,
    planes: Vec<Hyperplane>,
    next_id: u64,
}

impl Skeleton {
    /// Builds the initial skeleton from the first discovered hyperplane:
    /// one vertex per box corner at the plane's height, the box edges
    /// between them, and a downward ray at every corner.
    pub fn init(region: SearchRegion, first_plane: Hyperplane) -> Result<Self> {
        let m = region.dim();
        if m > 3 {
            return Err(Error::UnsupportedDimension(m));
        }
        if first_plane.coeffs.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: first_plane.coeffs.len(),
                context: "hyperplane coefficients",
            });
        }
        let mut skeleton = Skeleton {
            region,
            vertices: BTreeMap::new(),
            adjacency: BTreeMap::new(),
            ray_tops: Vec::with_capacity(1 << m),
            planes: Vec::new(),
            next_id: 0,
        };
        for mask in 0..skeleton.region.num_corners() {
            let lambda = skeleton.region.corner(mask);
            let z = first_plane.eval(&lambda);
            let id = skeleton.insert_vertex(DualPoint::new(lambda, z));
            skeleton.ray_tops.push(id);
        }
        for mask in 0..skeleton.region.num_corners() {
            for bit in 0..m {
                let other = mask | (1 << bit);
                if other > mask {
                    skeleton.insert_edge(VertexId(mask as u64), VertexId(other as u64));
                }
            }
        }
        skeleton.planes.push(first_plane);
        Ok(skeleton)
    }

    pub fn region(&self) -> &SearchRegion {
        &self.region
    }

    pub fn dim(&self) -> usize {
        self.region.dim()
    }

    pub fn planes(&self) -> &[Hyperplane] {
        &self.planes
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, id: VertexId) -> Option<&SkeletonVertex> {
        self.vertices.get(&id)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &SkeletonVertex> {
        self.vertices.values()
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.vertices.contains_key(&id)
    }

    /// Marks a vertex as holding the true dual value at its multipliers.
    pub fn confirm(&mut self, id: VertexId) {
        if let Some(v) = self.vertices.get_mut(&id) {
            v.confirmed = true;
        }
    }

    /// All edges, segments first, then the corner rays.
    pub fn edges(&self) -> Vec<SkeletonEdge> {
        let mut out = Vec::new();
        for (&u, nbrs) in &self.adjacency {
            for &v in nbrs {
                if u < v {
                    out.push(SkeletonEdge::Segment(u, v));
                }
            }
        }
        for &top in &self.ray_tops {
            out.push(SkeletonEdge::VerticalRay(top));
        }
        out
    }

    /// The induced dual value: minimum of the stored planes at `lambda`.
    pub fn envelope_value(&self, lambda: &[Rational]) -> Result<Rational> {
        if !self.region.contains(lambda) {
            let dim = lambda
                .iter()
                .enumerate()
                .find(|(i, l)| {
                    *i >= self.region.dim()
                        || *l < &self.region.lo()[*i]
                        || *l > &self.region.hi()[*i]
                })
                .map(|(i, _)| i)
                .unwrap_or(0);
            return Err(Error::LambdaOutsideBox { dim });
        }
        Ok(self
            .planes
            .iter()
            .map(|p| p.eval(lambda))
            .min()
            .expect("skeleton always stores at least one plane"))
    }

    fn insert_vertex(&mut self, point: DualPoint) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.vertices.insert(
            id,
            SkeletonVertex {
                id,
                point,
                confirmed: false,
            },
        );
        self.adjacency.insert(id, BTreeSet::new());
        id
    }

    fn insert_edge(&mut self, u: VertexId, v: VertexId) {
        debug_assert!(u != v);
        self.adjacency.get_mut(&u).expect("endpoint exists").insert(v);
        self.adjacency.get_mut(&v).expect("endpoint exists").insert(u);
    }

    fn remove_vertex(&mut self, id: VertexId) {
        if let Some(nbrs) = self.adjacency.remove(&id) {
            for n in nbrs {
                if let Some(set) = self.adjacency.get_mut(&n) {
                    set.remove(&id);
                }
            }
        }
        self.vertices.remove(&id);
    }

    /// Cuts the skeleton with a new hyperplane.
    ///
    /// Vertices strictly above the plane are removed (they are found by a
    /// breadth-first search from the first such vertex; concavity makes the
    /// above-region connected). Each edge crossing the plane spawns an exact
    /// intersection vertex and is truncated; rays hanging from removed
    /// corner vertices are re-topped at the plane. The new facet's boundary
    /// edges are the hull edges of the intersection points together with any
    /// pre-existing vertices the plane passes through.
    ///
    /// Cutting with an already-stored plane, or with a plane that has no
    /// vertex strictly above it, is a no-op (`applied == false`).
    pub fn cut(&mut self, plane: Hyperplane) -> Result<CutReport> {
        if plane.coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: plane.coeffs.len(),
                context: "hyperplane coefficients",
            });
        }
        if self.planes.iter().any(|p| p.same_plane(&plane)) {
            return Ok(CutReport::default());
        }

        // classify vertices: sign of z - P(lambda)
        let mut above: BTreeSet<VertexId> = BTreeSet::new();
        let mut on_plane: Vec<VertexId> = Vec::new();
        for v in self.vertices.values() {
            let diff = &v.point.z - plane.eval(&v.point.lambda);
            if diff > Rational::zero() {
                above.insert(v.id);
            } else if diff.is_zero() {
                on_plane.push(v.id);
            }
        }
        if above.is_empty() {
            return Ok(CutReport {
                applied: false,
                added: Vec::new(),
                removed: Vec::new(),
                touched: on_plane,
            });
        }

        // the strictly-above region must be connected: walk it
        let seed = *above.iter().next().expect("nonempty");
        let mut reached: BTreeSet<VertexId> = BTreeSet::new();
        reached.insert(seed);
        let mut queue = VecDeque::from([seed]);
        while let Some(u) = queue.pop_front() {
            for &n in &self.adjacency[&u] {
                if above.contains(&n) && reached.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        if reached != above {
            panic!("skeleton invariant violated: strictly-above region is disconnected");
        }
        for &id in &above {
            assert!(
                !self.vertices[&id].confirmed,
                "skeleton invariant violated: a confirmed vertex lies strictly above a new plane"
            );
        }

        // collect crossings from edges with exactly one endpoint above
        let mut crossing_events: Vec<(VertexId, VertexId)> = Vec::new(); // (above, strictly below)
        let mut saw_crossing_or_ray = false;
        for (&u, nbrs) in &self.adjacency {
            for &w in nbrs {
                if u >= w {
                    continue;
                }
                let (hi, lo) = if above.contains(&u) {
                    (u, w)
                } else if above.contains(&w) {
                    (w, u)
                } else {
                    continue;
                };
                if above.contains(&lo) {
                    continue; // both above: edge vanishes with its endpoints
                }
                let lo_diff =
                    &self.vertices[&lo].point.z - plane.eval(&self.vertices[&lo].point.lambda);
                if lo_diff.is_zero() {
                    // the plane passes through lo; the truncation is degenerate
                    saw_crossing_or_ray = true;
                    continue;
                }
                crossing_events.push((hi, lo));
            }
        }
        crossing_events.sort();

        // rays hanging from removed corner vertices cross the plane at the
        // corner's multipliers
        let mut ray_events: Vec<usize> = Vec::new();
        for (mask, top) in self.ray_tops.iter().enumerate() {
            if above.contains(top) {
                ray_events.push(mask);
            }
        }
        if !crossing_events.is_empty() || !ray_events.is_empty() {
            saw_crossing_or_ray = true;
        }
        if !saw_crossing_or_ray {
            panic!("skeleton invariant violated: vertices above the plane but no edge crosses it");
        }

        // create intersection vertices in a deterministic order: edge
        // crossings sorted by endpoint ids, then ray crossings by corner
        let mut added: Vec<VertexId> = Vec::new();
        let mut seen_points: BTreeSet<Vec<Rational>> = BTreeSet::new();
        let mut truncated: Vec<(VertexId, VertexId)> = Vec::new(); // (new vertex, below endpoint)
        for (hi, lo) in &crossing_events {
            let above_pt = self.vertices[hi].point.clone();
            let below_pt = self.vertices[lo].point.clone();
            let s_hi = &above_pt.z - plane.eval(&above_pt.lambda);
            let s_lo = &below_pt.z - plane.eval(&below_pt.lambda);
            let t = &s_hi / (&s_hi - &s_lo);
            let lambda: Vec<Rational> = above_pt
                .lambda
                .iter()
                .zip(&below_pt.lambda)
                .map(|(a, b)| a + &t * (b - a))
                .collect();
            let z = plane.eval(&lambda);
            let point = DualPoint::new(lambda, z);
            assert!(
                seen_points.insert(point.coords()),
                "two distinct edges crossed the plane at the same point"
            );
            let id = self.insert_vertex(point);
            added.push(id);
            truncated.push((id, *lo));
        }
        let mut new_ray_tops: Vec<(usize, VertexId)> = Vec::new();
        for &mask in &ray_events {
            let lambda = self.region.corner(mask);
            let z = plane.eval(&lambda);
            let point = DualPoint::new(lambda, z);
            assert!(
                seen_points.insert(point.coords()),
                "a ray crossing coincided with an edge crossing"
            );
            let id = self.insert_vertex(point);
            added.push(id);
            new_ray_tops.push((mask, id));
        }

        // drop the strictly-above vertices together with their edges
        let removed: Vec<(VertexId, DualPoint)> = above
            .iter()
            .map(|id| (*id, self.vertices[id].point.clone()))
            .collect();
        for &id in &above {
            self.remove_vertex(id);
        }
        for (w, lo) in &truncated {
            self.insert_edge(*w, *lo);
        }
        for (mask, id) in &new_ray_tops {
            self.ray_tops[*mask] = *id;
        }

        // the new facet: hull edges over the intersection points and any
        // retained vertices lying exactly on the plane
        let mut facet: Vec<VertexId> = added.clone();
        facet.extend(on_plane.iter().copied());
        let projections: Vec<Vec<Rational>> = facet
            .iter()
            .map(|id| self.vertices[id].point.lambda.clone())
            .collect();
        for (a, b) in hull_edges(&projections)? {
            if facet[a] != facet[b] {
                self.insert_edge(facet[a], facet[b]);
            }
        }

        self.planes.push(plane);
        Ok(CutReport {
            applied: true,
            added,
            removed,
            touched: on_plane,
        })
    }

    /// Serializes the skeleton in the line-oriented dump format: one vertex
    /// per line `v <id> <lambda...> <z> <confirmed>`, then one edge per
    /// line `e <id> <id>` or `e <id> RAY`, rationals as `p/q`.
    pub fn write_dump<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for v in self.vertices.values() {
            write!(out, "v {}", v.id.0)?;
            for l in &v.point.lambda {
                write!(out, " {}", format_rational(l))?;
            }
            writeln!(
                out,
                " {} {}",
                format_rational(&v.point.z),
                u8::from(v.confirmed)
            )?;
        }
        for edge in self.edges() {
            match edge {
                SkeletonEdge::Segment(u, v) => writeln!(out, "e {} {}", u.0, v.0)?,
                SkeletonEdge::VerticalRay(u) => writeln!(out, "e {} RAY", u.0)?,
            }
        }
        Ok(())
    }

    /// The skeleton's exact geometric content, independent of vertex ids.
    pub fn geometry(&self) -> SkeletonGeometry {
        let mut geometry = SkeletonGeometry {
            vertices: BTreeSet::new(),
            segments: BTreeSet::new(),
            rays: BTreeSet::new(),
        };
        for v in self.vertices.values() {
            geometry.vertices.insert(v.point.coords());
        }
        for (&u, nbrs) in &self.adjacency {
            for &v in nbrs {
                if u < v {
                    let a = self.vertices[&u].point.coords();
                    let b = self.vertices[&v].point.coords();
                    let (a, b) = if a <= b { (a, b) } else { (b, a) };
                    geometry.segments.insert((a, b));
                }
            }
        }
        for top in &self.ray_tops {
            geometry.rays.insert(self.vertices[top].point.coords());
        }
        geometry
    }
}

/// Edges of the convex hull of coplanar dual points, as index pairs into
/// the input. All points must lie on one hyperplane of the dual space; the
/// hull is computed in multiplier coordinates, which the plane projects to
/// bijectively. Points that are proper convex combinations of others (hull
/// interior, or interior to a hull edge) never appear as endpoints.
pub fn conv_edge(points: &[DualPoint]) -> Result<Vec<(usize, usize)>> {
    let projections: Vec<Vec<Rational>> = points.iter().map(|p| p.lambda.clone()).collect();
    hull_edges(&projections)
}

/// Builds the skeleton geometry of a plane set over a box from scratch.
///
/// Every subset of `dim` constraints (plane facets and box walls) whose
/// tight set is a line contributes the line clipped against all
/// constraints; nonempty clips are exactly the polyhedron's edges, rays,
/// and vertices. This path shares no code with `Skeleton::cut`.
pub fn rebuild_geometry(region: &SearchRegion, planes: &[Hyperplane]) -> SkeletonGeometry {
    let m = region.dim();
    assert!(!planes.is_empty(), "at least one plane required");
    // constraints as normal . y <= rhs over y = (lambda, z)
    let mut constraints: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for p in planes {
        // z <= constant + coeffs . lambda
        let mut normal: Vec<Rational> = p.coeffs.iter().map(|c| -c).collect();
        normal.push(Rational::one());
        constraints.push((normal, p.constant.clone()));
    }
    for i in 0..m {
        let mut lo = vec![Rational::zero(); m + 1];
        lo[i] = -Rational::one();
        constraints.push((lo, -&region.lo()[i]));
        let mut hi = vec![Rational::zero(); m + 1];
        hi[i] = Rational::one();
        constraints.push((hi, region.hi()[i].clone()));
    }

    let mut geometry = SkeletonGeometry {
        vertices: BTreeSet::new(),
        segments: BTreeSet::new(),
        rays: BTreeSet::new(),
    };
    let mut seen_lines: BTreeSet<(Vec<Rational>, Vec<Rational>)> = BTreeSet::new();
    let k = constraints.len();
    let mut chosen: Vec<usize> = (0..m).collect();
    loop {
        // solve the chosen constraints as equalities
        let rows: Vec<(Vec<Rational>, Rational)> = chosen
            .iter()
            .map(|&i| constraints[i].clone())
            .collect();
        if let Some((point, basis)) = solve_affine(&rows) {
            if basis.len() == 1 {
                let dir = &basis[0];
                if let Some(key) = canonical_line(&point, dir) {
                    if seen_lines.insert(key) {
                        clip_line_into(&constraints, &point, dir, region, &mut geometry);
                    }
                }
            }
        }
        // next m-combination of constraint indices
        let mut i = m;
        loop {
            if i == 0 {
                return geometry;
            }
            i -= 1;
            if chosen[i] != i + k - m {
                chosen[i] += 1;
                for j in (i + 1)..m {
                    chosen[j] = chosen[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Canonical (direction, base point) key of a line, so coincident lines
/// from different constraint subsets dedupe. Returns None for a zero
/// direction.
fn canonical_line(point: &[Rational], dir: &[Rational]) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let lead_idx = dir.iter().position(|d| !d.is_zero())?;
    let lead = dir[lead_idx].clone();
    let dir_norm: Vec<Rational> = dir.iter().map(|d| d / &lead).collect();
    // slide the base point so its lead coordinate is zero
    let t = &point[lead_idx]; // dir_norm[lead_idx] == 1
    let base: Vec<Rational> = point
        .iter()
        .zip(&dir_norm)
        .map(|(p, d)| p - t * d)
        .collect();
    Some((dir_norm, base))
}

/// Clips the line `point + t dir` against all constraints and records the
/// resulting face (vertex, segment, or downward ray) in `geometry`.
fn clip_line_into(
    constraints: &[(Vec<Rational>, Rational)],
    point: &[Rational],
    dir: &[Rational],
    region: &SearchRegion,
    geometry: &mut SkeletonGeometry,
) {
    let mut t_lo: Option<Rational> = None;
    let mut t_hi: Option<Rational> = None;
    for (normal, rhs) in constraints {
        let slope = dot(normal, dir);
        let value = dot(normal, point);
        if slope.is_zero() {
            if &value > rhs {
                return; // line entirely infeasible
            }
            continue;
        }
        let bound = (rhs - &value) / &slope;
        if slope > Rational::zero() {
            if t_hi.as_ref().is_none_or(|t| bound < *t) {
                t_hi = Some(bound);
            }
        } else if t_lo.as_ref().is_none_or(|t| bound > *t) {
            t_lo = Some(bound);
        }
    }
    let at = |t: &Rational| -> Vec<Rational> {
        point
            .iter()
            .zip(dir)
            .map(|(p, d)| p + t * d)
            .collect()
    };
    match (t_lo, t_hi) {
        (Some(lo), Some(hi)) => {
            if lo > hi {
                return;
            }
            let a = at(&lo);
            let b = at(&hi);
            geometry.vertices.insert(a.clone());
            geometry.vertices.insert(b.clone());
            if a != b {
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                geometry.segments.insert((a, b));
            }
        }
        (half_lo, half_hi) => {
            // a half-line: must be one of the vertical corner rays
            let m = region.dim();
            let vertical = dir[..m].iter().all(Rational::is_zero);
            assert!(
                vertical,
                "unbounded non-vertical face in a boxed dual polyhedron"
            );
            let top_t = match (half_lo, half_hi) {
                (Some(t), None) if dir[m] < Rational::zero() => t,
                (None, Some(t)) if dir[m] > Rational::zero() => t,
                _ => panic!("dual polyhedron unbounded upward"),
            };
            let top = at(&top_t);
            geometry.vertices.insert(top.clone());
            geometry.rays.insert(top);
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::Labeling;
    use crate::rational::{rat, ratio};
    use crate::verify::two_var_example;
    use rand::{Rng, SeedableRng};

    fn plane(constant: i64, coeffs: &[i64]) -> Hyperplane {
        Hyperplane {
            constant: rat(constant),
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
            source: Labeling::zeros(0),
        }
    }

    fn point(coords: &[Rational]) -> Vec<Rational> {
        coords.to_vec()
    }

    #[test]
    fn worked_example_initial_vertices() {
        let problem = two_var_example();
        let first = plane_of(&problem, &Labeling::from_bits([1, 0])).unwrap();
        let skeleton = Skeleton::init(problem.region().clone(), first).unwrap();
        let got: BTreeSet<Vec<Rational>> = skeleton.geometry().vertices;
        let want: BTreeSet<Vec<Rational>> = [
            point(&[rat(-2), rat(-2), rat(-5)]),
            point(&[rat(-2), rat(2), rat(3)]),
            point(&[rat(2), rat(-2), rat(-1)]),
            point(&[rat(2), rat(2), rat(7)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        // 4 box-side segments plus 4 corner rays
        assert_eq!(skeleton.geometry().segments.len(), 4);
        assert_eq!(skeleton.geometry().rays.len(), 4);
    }

    #[test]
    fn one_dimensional_init_shape() {
        let region = SearchRegion::new(vec![rat(-1)], vec![rat(1)]).unwrap();
        let skeleton = Skeleton::init(region, plane(0, &[0])).unwrap();
        let g = skeleton.geometry();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.segments.len(), 1);
        assert_eq!(g.rays.len(), 2);
    }

    #[test]
    fn three_dimensional_init_shape() {
        let region = SearchRegion::symmetric(1, 3);
        let skeleton = Skeleton::init(region, plane(2, &[1, -1, 3])).unwrap();
        let g = skeleton.geometry();
        assert_eq!(g.vertices.len(), 8);
        assert_eq!(g.segments.len(), 12);
        assert_eq!(g.rays.len(), 8);
    }

    #[test]
    fn worked_example_first_cut() {
        let problem = two_var_example();
        let first = plane_of(&problem, &Labeling::from_bits([1, 0])).unwrap();
        let mut skeleton = Skeleton::init(problem.region().clone(), first).unwrap();
        let report = skeleton
            .cut(plane_of(&problem, &Labeling::from_bits([0, 0])).unwrap())
            .unwrap();
        assert!(report.applied);
        let removed: BTreeSet<Vec<Rational>> =
            report.removed.iter().map(|(_, p)| p.coords()).collect();
        let want_removed: BTreeSet<Vec<Rational>> = [
            point(&[rat(-2), rat(2), rat(3)]),
            point(&[rat(2), rat(2), rat(7)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(removed, want_removed);
        let added: BTreeSet<Vec<Rational>> = report
            .added
            .iter()
            .map(|id| skeleton.vertex(*id).unwrap().point.coords())
            .collect();
        let want_added: BTreeSet<Vec<Rational>> = [
            point(&[rat(-2), ratio(1, 2), rat(0)]),
            point(&[rat(2), ratio(-3, 2), rat(0)]),
            point(&[rat(-2), rat(2), rat(0)]),
            point(&[rat(2), rat(2), rat(0)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(added, want_added);
    }

    #[test]
    fn cut_below_everything_is_a_noop() {
        let problem = two_var_example();
        let first = plane_of(&problem, &Labeling::from_bits([1, 0])).unwrap();
        let mut skeleton = Skeleton::init(problem.region().clone(), first).unwrap();
        let before = skeleton.geometry();
        let report = skeleton.cut(plane(-100, &[0, 0])).unwrap();
        assert!(!report.applied);
        assert_eq!(skeleton.geometry(), before);
        assert_eq!(skeleton.planes().len(), 1);
    }

    #[test]
    fn cut_is_idempotent() {
        let problem = two_var_example();
        let first = plane_of(&problem, &Labeling::from_bits([1, 0])).unwrap();
        let mut skeleton = Skeleton::init(problem.region().clone(), first).unwrap();
        let cut_plane = plane_of(&problem, &Labeling::from_bits([0, 0])).unwrap();
        skeleton.cut(cut_plane.clone()).unwrap();
        let mid = skeleton.geometry();
        let report = skeleton.cut(cut_plane).unwrap();
        assert!(!report.applied);
        assert_eq!(skeleton.geometry(), mid);
    }

    #[test]
    fn envelope_values_on_worked_example() {
        let problem = two_var_example();
        let labelings = [[1u8, 0], [0, 0], [0, 1], [1, 1]];
        let mut planes = labelings
            .iter()
            .map(|bits| plane_of(&problem, &Labeling::from_bits(bits.iter().copied())).unwrap());
        let mut skeleton = Skeleton::init(problem.region().clone(), planes.next().unwrap()).unwrap();
        for p in planes {
            skeleton.cut(p).unwrap();
        }
        assert_eq!(skeleton.envelope_value(&[rat(0), rat(0)]).unwrap(), rat(0));
        assert_eq!(
            skeleton.envelope_value(&[rat(-2), rat(-2)]).unwrap(),
            rat(-5)
        );
        assert!(matches!(
            skeleton.envelope_value(&[rat(9), rat(0)]),
            Err(Error::LambdaOutsideBox { dim: 0 })
        ));
        // every vertex sits exactly on the envelope of the stored planes
        for v in skeleton.vertices() {
            assert_eq!(
                skeleton.envelope_value(&v.point.lambda).unwrap(),
                v.point.z
            );
        }
    }

    #[test]
    fn incremental_cuts_match_rebuild_on_random_planes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for round in 0..60 {
            let m = rng.gen_range(1..=3usize);
            let region = SearchRegion::symmetric(rng.gen_range(1..=3), m);
            let num_planes = rng.gen_range(2..=7);
            let planes: Vec<Hyperplane> = (0..num_planes)
                .map(|_| {
                    let coeffs: Vec<Rational> = (0..m)
                        .map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=2)))
                        .collect();
                    Hyperplane {
                        constant: ratio(rng.gen_range(-4..=4), rng.gen_range(1..=2)),
                        coeffs,
                        source: Labeling::zeros(0),
                    }
                })
                .collect();
            let mut skeleton = Skeleton::init(region.clone(), planes[0].clone()).unwrap();
            for p in &planes[1..] {
                skeleton.cut(p.clone()).unwrap();
                let incremental = skeleton.geometry();
                let scratch = rebuild_geometry(&region, skeleton.planes());
                assert_eq!(incremental, scratch, "round {round}, m {m}");
            }
        }
    }

    #[test]
    fn degenerate_plane_through_vertex_is_registered_not_duplicated() {
        // envelope of z = 0 over [-1, 1]; cut with a plane touching (0, 0)
        // from below on one side only: z = lambda (above at lambda < 0? no:
        // z = lambda is below z = 0 for lambda < 0) -- use z = lambda with
        // the left corner strictly above.
        let region = SearchRegion::new(vec![rat(-1)], vec![rat(1)]).unwrap();
        let mut skeleton = Skeleton::init(region.clone(), plane(0, &[0])).unwrap();
        // plane z = lambda: at lambda=-1 the envelope vertex (-1, 0) is above
        let report = skeleton.cut(plane(0, &[1])).unwrap();
        assert!(report.applied);
        let g = skeleton.geometry();
        let want: BTreeSet<Vec<Rational>> = [
            point(&[rat(-1), rat(-1)]),
            point(&[rat(0), rat(0)]),
            point(&[rat(1), rat(0)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(g.vertices, want);
        assert_eq!(rebuild_geometry(&region, skeleton.planes()), g);

        // cutting with a plane passing exactly through (0, 0) and (1, 0)
        // while nothing is strictly above changes nothing
        let before = skeleton.geometry();
        let touch = skeleton.cut(plane(0, &[0])).unwrap();
        // already stored; dedupe by coefficients
        assert!(!touch.applied);
        assert_eq!(skeleton.geometry(), before);
    }

    #[test]
    fn vertices_are_never_proper_convex_combinations() {
        // small random instances: every vertex must be extreme among the
        // vertex set (pairwise midpoint test in exact arithmetic)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = rng.gen_range(1..=2usize);
            let region = SearchRegion::symmetric(2, m);
            let planes: Vec<Hyperplane> = (0..rng.gen_range(2..=5))
                .map(|_| {
                    Hyperplane {
                        constant: rat(rng.gen_range(-3..=3)),
                        coeffs: (0..m).map(|_| rat(rng.gen_range(-3..=3))).collect(),
                        source: Labeling::zeros(0),
                    }
                })
                .collect();
            let mut skeleton = Skeleton::init(region, planes[0].clone()).unwrap();
            for p in &planes[1..] {
                skeleton.cut(p.clone()).unwrap();
            }
            let vertices: Vec<Vec<Rational>> =
                skeleton.vertices().map(|v| v.point.coords()).collect();
            for (i, v) in vertices.iter().enumerate() {
                for (j, a) in vertices.iter().enumerate() {
                    for b in vertices.iter().skip(j + 1) {
                        if i == j {
                            continue;
                        }
                        let mid: Vec<Rational> = a
                            .iter()
                            .zip(b)
                            .map(|(x, y)| (x + y) / rat(2))
                            .collect();
                        assert!(
                            mid != *v || a == v || b == v,
                            "vertex {v:?} is the midpoint of {a:?} and {b:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dump_format_is_stable() {
        let region = SearchRegion::new(vec![rat(-1)], vec![rat(1)]).unwrap();
        let mut skeleton = Skeleton::init(region, plane(1, &[1])).unwrap();
        skeleton.confirm(VertexId(0));
        let mut buf = Vec::new();
        skeleton.write_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "v 0 -1/1 0/1 1\nv 1 1/1 2/1 0\ne 0 1\ne 0 RAY\ne 1 RAY\n"
        );
    }
}
