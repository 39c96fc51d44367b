//! Exact rational geometry: convex hull edge sets in dimension 1 to 3 and
//! the small linear-algebra kernel shared with the skeleton code.
//!
//! Everything here works on `Vec<Rational>` coordinates with exact
//! predicates; there are no tolerances. The 3D hull uses gift wrapping:
//! pivot a supporting plane around a known support line until it lands on a
//! facet, take the facet polygon's boundary, and wrap across its edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Point = Vec<Rational>;

fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn cross3(a: &[Rational], b: &[Rational]) -> Point {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Orientation of `c` relative to the directed line `a -> b` in the plane:
/// positive for a left turn, zero for collinear.
fn orient2d(a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
}

/// Gaussian elimination on `rows` of homogeneous coordinates; returns the
/// rank. `rows` is consumed as scratch space.
fn rank_of(mut rows: Vec<Point>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let head = rows[rank][col].clone();
        for r in (rank + 1)..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &head;
            for c in col..width {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Affine rank of a point set (0 for a single point, 1 for collinear, ...).
pub fn affine_rank(points: &[Point]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Vec<Point> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank_of(diffs)
}

/// Solves `a_i . y = c_i` exactly. Returns `None` if inconsistent, else a
/// particular solution and a basis of the solution space's direction.
pub fn solve_affine(rows: &[(Point, Rational)]) -> Option<(Point, Vec<Point>)> {
    let width = rows.first().map(|(a, _)| a.len())?;
    let mut mat: Vec<(Point, Rational)> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..width {
        let Some(p) = (row..mat.len()).find(|&r| !mat[r].0[col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let head = mat[row].0[col].clone();
        for r in 0..mat.len() {
            if r == row || mat[r].0[col].is_zero() {
                continue;
            }
            let factor = &mat[r].0[col] / &head;
            for c in col..width {
                let delta = &factor * &mat[row].0[c];
                mat[r].0[c] -= delta;
            }
            let delta = &factor * &mat[row].1;
            mat[r].1 -= delta;
        }
        pivot_cols.push((row, col));
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    // inconsistent row: 0 = c with c != 0
    for r in row..mat.len() {
        if mat[r].0.iter().all(Rational::is_zero) && !mat[r].1.is_zero() {
            return None;
        }
    }
    let pivot_of_col: BTreeMap<usize, usize> =
        pivot_cols.iter().map(|&(r, c)| (c, r)).collect();
    let mut particular = vec![Rational::zero(); width];
    for (&c, &r) in &pivot_of_col {
        particular[c] = &mat[r].1 / &mat[r].0[c];
    }
    let mut basis = Vec::new();
    for free in 0..width {
        if pivot_of_col.contains_key(&free) {
            continue;
        }
        let mut dir = vec![Rational::zero(); width];
        dir[free] = Rational::one();
        for (&c, &r) in &pivot_of_col {
            dir[c] = -&mat[r].0[free] / &mat[r].0[c];
        }
        basis.push(dir);
    }
    Some((particular, basis))
}

/// Canonical form of a hyperplane `n . y = n . a` through `a` with normal
/// `n`: the normal is rescaled so its first nonzero coordinate is 1.
fn plane_key(normal: &[Rational], through: &[Rational]) -> (Point, Rational) {
    let lead = normal
        .iter()
        .find(|v| !v.is_zero())
        .expect("nonzero normal")
        .clone();
    let scaled: Point = normal.iter().map(|v| v / &lead).collect();
    let offset = dot(&scaled, through);
    (scaled, offset)
}

/// Which side of plane `(n, a)` the points are on: `Some(true)` if the plane
/// supports with `n` pointing away from the set (all dots <= 0),
/// `Some(false)` if `-n` does, `None` if the plane separates the set.
fn supporting_sign(points: &[Point], through: &[Rational], normal: &[Rational]) -> Option<bool> {
    let mut any_pos = false;
    let mut any_neg = false;
    for p in points {
        let d = dot(normal, &sub(p, through));
        if d > Rational::zero() {
            any_pos = true;
        } else if d < Rational::zero() {
            any_neg = true;
        }
        if any_pos && any_neg {
            return None;
        }
    }
    if !any_pos {
        Some(true)
    } else {
        Some(false)
    }
}

/// Hull edges of points with a single coordinate: the segment between the
/// two extremes.
fn hull_edges_1d(points: &[Point]) -> Vec<(usize, usize)> {
    let min = points
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i);
    let max = points
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i);
    match (min, max) {
        (Some(a), Some(b)) if a != b => vec![(a.min(b), a.max(b))],
        _ => Vec::new(),
    }
}

/// Hull edges of planar points: monotone chain with strict turns, so
/// collinear interior points never become hull vertices.
fn hull_edges_2d(points: &[Point]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    let chain = |iter: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
        let mut hull: Vec<usize> = Vec::new();
        for i in iter {
            while hull.len() >= 2 {
                let o = &points[hull[hull.len() - 2]];
                let a = &points[hull[hull.len() - 1]];
                if orient2d(o, a, &points[i]) <= Rational::zero() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        hull
    };
    let lower = chain(&mut order.iter().copied());
    let upper = chain(&mut order.iter().rev().copied());
    let mut cycle = lower;
    cycle.extend(upper.into_iter().skip(1));
    // cycle ends where it started; drop the repeat
    if cycle.len() > 1 {
        cycle.pop();
    }
    let mut edges = BTreeSet::new();
    if cycle.len() == 2 {
        edges.insert((cycle[0].min(cycle[1]), cycle[0].max(cycle[1])));
    } else {
        for w in 0..cycle.len() {
            let a = cycle[w];
            let b = cycle[(w + 1) % cycle.len()];
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    edges.into_iter().collect()
}

/// Projects 3D points onto the two coordinates not annihilated by `normal`,
/// which is an affine bijection on the plane orthogonal to `normal`.
fn project_to_plane(points: &[Point], normal: &[Rational]) -> Vec<Point> {
    let drop = normal
        .iter()
        .position(|v| !v.is_zero())
        .expect("nonzero normal");
    points
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Rotates a supporting plane around the axis `through + t * dir` until it
/// touches the point set; returns the touching plane's normal. `exclude` is
/// the canonical key of a plane to skip (the facet we are wrapping from).
fn pivot_plane(
    points: &[Point],
    through: &Point,
    dir: &Point,
    exclude: Option<&(Point, Rational)>,
) -> Option<Point> {
    for r in points {
        let v = sub(r, through);
        let n = cross3(dir, &v);
        if n.iter().all(Rational::is_zero) {
            continue; // r on the axis
        }
        let Some(outward) = supporting_sign(points, through, &n) else {
            continue;
        };
        let n = if outward {
            n
        } else {
            n.iter().map(|x| -x).collect()
        };
        if let Some(key) = exclude {
            if plane_key(&n, through) == *key {
                continue;
            }
        }
        return Some(n);
    }
    None
}

/// Hull edges of a full-dimensional 3D point set by gift wrapping.
fn hull_edges_3d(points: &[Point]) -> Vec<(usize, usize)> {
    // start from the lexicographic minimum, a guaranteed hull vertex
    let start = (0..points.len())
        .min_by(|&a, &b| points[a].cmp(&points[b]))
        .expect("nonempty");
    let p0 = &points[start];

    // initial supporting plane: x = min, then pivot until the contact set
    // spans a facet
    let mut normal: Point = vec![
        -Rational::one(),
        Rational::zero(),
        Rational::zero(),
    ];
    loop {
        let contact: Vec<Point> = points
            .iter()
            .filter(|p| dot(&normal, &sub(p, p0)).is_zero())
            .cloned()
            .collect();
        if affine_rank(&contact) >= 2 {
            break;
        }
        let axis = if contact.len() < 2 || affine_rank(&contact) == 0 {
            // single contact point: pick any axis inside the plane
            if normal[0].is_zero() && normal[2].is_zero() {
                vec![Rational::one(), Rational::zero(), Rational::zero()]
            } else {
                let probe = vec![Rational::zero(), Rational::one(), Rational::zero()];
                let in_plane = cross3(&normal, &probe);
                if in_plane.iter().all(Rational::is_zero) {
                    vec![Rational::one(), Rational::zero(), Rational::zero()]
                } else {
                    in_plane
                }
            }
        } else {
            // contact is collinear: rotate around its line
            let other = contact
                .iter()
                .find(|p| *p != p0)
                .expect("two contact points");
            sub(other, p0)
        };
        normal = pivot_plane(points, p0, &axis, Some(&plane_key(&normal, p0)))
            .expect("full-dimensional set must admit a facet");
    }

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut seen: BTreeSet<(Point, Rational)> = BTreeSet::new();
    let mut queue: VecDeque<(Point, usize)> = VecDeque::new(); // (normal, contact witness)
    seen.insert(plane_key(&normal, p0));
    queue.push_back((normal, start));

    while let Some((normal, witness)) = queue.pop_front() {
        let anchor = points[witness].clone();
        let contact_idx: Vec<usize> = (0..points.len())
            .filter(|&i| dot(&normal, &sub(&points[i], &anchor)).is_zero())
            .collect();
        let contact: Vec<Point> = contact_idx.iter().map(|&i| points[i].clone()).collect();
        let projected = project_to_plane(&contact, &normal);
        let boundary = hull_edges_2d(&projected);
        for (a, b) in boundary {
            let (ia, ib) = (contact_idx[a], contact_idx[b]);
            edges.insert((ia.min(ib), ia.max(ib)));
            // wrap across this facet edge to the neighbor facet
            let axis = sub(&points[ib], &points[ia]);
            let key = plane_key(&normal, &anchor);
            let next = pivot_plane(points, &points[ia], &axis, Some(&key))
                .expect("hull edge must have two incident facets");
            let next_key = plane_key(&next, &points[ia]);
            if seen.insert(next_key) {
                queue.push_back((next, ia));
            }
        }
    }
    edges.into_iter().collect()
}

/// Edges (1-faces) of the convex hull of `points`, as index pairs into the
/// input. Duplicate points map to the first occurrence; points interior to
/// the hull or to a hull edge are not endpoints of anything returned.
///
/// Supports 1, 2, and 3 coordinates; higher dimensions are rejected.
pub fn hull_edges(points: &[Point]) -> Result<Vec<(usize, usize)>> {
    let dim = points.first().map_or(0, Vec::len);
    if dim > 3 {
        return Err(Error::UnsupportedDimension(dim));
    }
    // dedupe, remembering the first original index of each distinct point
    let mut first_index: BTreeMap<&Point, usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        first_index.entry(p).or_insert(i);
    }
    let distinct: Vec<Point> = first_index.keys().map(|p| (*p).clone()).collect();
    let back: Vec<usize> = first_index.values().copied().collect();
    if distinct.len() < 2 {
        return Ok(Vec::new());
    }

    let rank = affine_rank(&distinct);
    let local = match (dim, rank) {
        (_, 0) => Vec::new(),
        (1, _) => hull_edges_1d(&distinct),
        (_, 1) => {
            // collinear in any dimension: segment between the extremes,
            // ordering points along the line lexicographically
            let min = (0..distinct.len())
                .min_by(|&a, &b| distinct[a].cmp(&distinct[b]))
                .unwrap();
            let max = (0..distinct.len())
                .max_by(|&a, &b| distinct[a].cmp(&distinct[b]))
                .unwrap();
            vec![(min.min(max), min.max(max))]
        }
        (2, _) => hull_edges_2d(&distinct),
        (3, 2) => {
            // coplanar: project out the plane normal and hull in 2D
            let dirs: Vec<Point> = distinct[1..]
                .iter()
                .map(|p| sub(p, &distinct[0]))
                .collect();
            let normal = coplanar_normal(&dirs);
            let projected = project_to_plane(&distinct, &normal);
            hull_edges_2d(&projected)
        }
        (3, _) => hull_edges_3d(&distinct),
        _ => unreachable!("dimension checked above"),
    };
    let mut out: Vec<(usize, usize)> = local
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (back[a], back[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Normal of the plane spanned by a rank-2 set of 3D direction vectors.
fn coplanar_normal(dirs: &[Point]) -> Point {
    let mut base: Option<&Point> = None;
    for d in dirs {
        if d.iter().all(Rational::is_zero) {
            continue;
        }
        match base {
            None => base = Some(d),
            Some(b) => {
                let n = cross3(b, d);
                if !n.iter().all(Rational::is_zero) {
                    return n;
                }
            }
        }
    }
    panic!("direction set does not span a plane");
}
