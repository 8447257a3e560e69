//! Polygonal free-space model: visibility predicates, critical-point
//! detection and frontier segments.
//!
//! Orientation convention: the outer boundary is counterclockwise and holes
//! are clockwise, so free space is always on the left of the directed
//! boundary and solid material on the right.

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{cmp_finite, Real};

/// A position in the plane. Also used as a displacement vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Real> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn sub(&self, other: &Point<S>) -> Point<S> {
        Point::new(self.x - other.x, self.y - other.y)
    }

    pub fn add(&self, other: &Point<S>) -> Point<S> {
        Point::new(self.x + other.x, self.y + other.y)
    }

    pub fn scale(&self, k: S) -> Point<S> {
        Point::new(self.x * k, self.y * k)
    }

    pub fn cross(&self, other: &Point<S>) -> S {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(&self, other: &Point<S>) -> S {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(&self) -> S {
        self.dot(self).sqrt()
    }

    pub fn dist(&self, other: &Point<S>) -> S {
        self.sub(other).norm()
    }

    /// Point at parameter t on the segment self -> other.
    pub fn lerp(&self, other: &Point<S>, t: S) -> Point<S> {
        self.add(&other.sub(self).scale(t))
    }
}

/// Distance from `p` to the closed segment `ab`.
pub fn point_segment_distance<S: Real>(p: &Point<S>, a: &Point<S>, b: &Point<S>) -> S {
    let ab = b.sub(a);
    let len2 = ab.dot(&ab);
    if len2 <= S::zero() {
        return p.dist(a);
    }
    let t = p.sub(a).dot(&ab) / len2;
    let t = t.max(S::zero()).min(S::one());
    p.dist(&a.lerp(b, t))
}

/// A simple polygon given by its vertex cycle.
#[derive(Clone, Debug, Serialize)]
pub struct Polygon<S> {
    pub vertices: Vec<Point<S>>,
}

impl<S: Real> Polygon<S> {
    pub fn new(vertices: Vec<Point<S>>) -> Self {
        Polygon { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Twice the signed area is accumulated with the shoelace formula;
    /// positive means counterclockwise.
    pub fn signed_area(&self) -> S {
        let n = self.vertices.len();
        let mut acc = S::zero();
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            acc = acc + a.cross(b);
        }
        acc / S::from_f64_lit(2.0)
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area() > S::zero()
    }

    /// Directed boundary edges, in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (Point<S>, Point<S>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Ray-casting parity test. Points on the boundary give an arbitrary
    /// answer; callers that care use a distance check first.
    pub fn contains(&self, p: &Point<S>) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let vi = &self.vertices[i];
            let vj = &self.vertices[j];
            if (vi.y > p.y) != (vj.y > p.y) {
                let t = (p.y - vi.y) / (vj.y - vi.y);
                let xc = vi.x + t * (vj.x - vi.x);
                if p.x < xc {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    fn check_basic(&self, which: PolygonRef) -> Result<(), EnvError> {
        if self.vertices.len() < 3 {
            return Err(EnvError::TooFewVertices { which, count: self.vertices.len() });
        }
        for v in &self.vertices {
            if !v.is_finite() {
                return Err(EnvError::NonFiniteCoordinate { which });
            }
        }
        let eps = S::geom_eps();
        let n = self.vertices.len();
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            if a.dist(b) <= eps {
                return Err(EnvError::DuplicateVertex { which, index: i });
            }
        }
        if self.signed_area().abs() <= eps {
            return Err(EnvError::DegenerateArea { which });
        }
        // Non-adjacent edge pairs must not intersect or touch.
        let verts = &self.vertices;
        for i in 0..n {
            for j in (i + 1)..n {
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (a, b) = (verts[i], verts[(i + 1) % n]);
                let (c, d) = (verts[j], verts[(j + 1) % n]);
                if segments_intersect_or_touch(&a, &b, &c, &d) {
                    return Err(EnvError::SelfIntersection { which, edge_a: i, edge_b: j });
                }
            }
        }
        Ok(())
    }
}

/// Which polygon of an environment a vertex or diagnostic refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PolygonRef {
    Outer,
    Hole(usize),
}

impl std::fmt::Display for PolygonRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PolygonRef::Outer => write!(f, "outer polygon"),
            PolygonRef::Hole(i) => write!(f, "hole {i}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("{which} has {count} vertices, need at least 3")]
    TooFewVertices { which: PolygonRef, count: usize },
    #[error("{which} has a non-finite coordinate")]
    NonFiniteCoordinate { which: PolygonRef },
    #[error("{which} repeats vertex {index}")]
    DuplicateVertex { which: PolygonRef, index: usize },
    #[error("{which} has zero signed area")]
    DegenerateArea { which: PolygonRef },
    #[error("{which} self-intersects (edges {edge_a} and {edge_b})")]
    SelfIntersection { which: PolygonRef, edge_a: usize, edge_b: usize },
    #[error("outer polygon must be counterclockwise")]
    OuterNotCcw,
    #[error("hole {index} must be clockwise")]
    HoleNotCw { index: usize },
    #[error("hole {index} is not strictly inside the outer polygon")]
    HoleOutside { index: usize },
    #[error("holes {a} and {b} overlap or touch")]
    HolesOverlap { a: usize, b: usize },
    #[error("environment JSON: {0}")]
    Format(String),
}

/// True when the closed segments ab and cd share any point. Used for
/// validity checking, where touching already counts as invalid.
fn segments_intersect_or_touch<S: Real>(
    a: &Point<S>,
    b: &Point<S>,
    c: &Point<S>,
    d: &Point<S>,
) -> bool {
    let eps = S::geom_eps();
    if point_segment_distance(c, a, b) <= eps
        || point_segment_distance(d, a, b) <= eps
        || point_segment_distance(a, c, d) <= eps
        || point_segment_distance(b, c, d) <= eps
    {
        return true;
    }
    proper_crossing(a, b, c, d)
}

/// Strict crossing: the intersection point is interior to both segments,
/// with all four endpoints farther than eps from the other supporting line.
fn proper_crossing<S: Real>(a: &Point<S>, b: &Point<S>, c: &Point<S>, d: &Point<S>) -> bool {
    let eps = S::geom_eps();
    let ab = b.sub(a);
    let cd = d.sub(c);
    let lab = ab.norm();
    let lcd = cd.norm();
    if lab <= eps || lcd <= eps {
        return false;
    }
    // Signed distances of c, d from line ab and of a, b from line cd.
    let dc = ab.cross(&c.sub(a)) / lab;
    let dd = ab.cross(&d.sub(a)) / lab;
    let da = cd.cross(&a.sub(c)) / lcd;
    let db = cd.cross(&b.sub(c)) / lcd;
    let straddles = |u: S, v: S| (u > eps && v < -eps) || (u < -eps && v > eps);
    straddles(dc, dd) && straddles(da, db)
}

/// Point-membership mode for [`Environment::contains`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Strictly interior: boundary points (within eps) are excluded.
    Strict,
    /// Closure: boundary points (within eps) are included.
    Closure,
}

/// The free space F: the interior of `outer` minus the holes.
#[derive(Clone, Debug, Serialize)]
pub struct Environment<S> {
    pub outer: Polygon<S>,
    pub holes: Vec<Polygon<S>>,
    #[serde(skip)]
    edges: Vec<(Point<S>, Point<S>)>,
    #[serde(skip)]
    reflex: Vec<Point<S>>,
    #[serde(skip)]
    bbox: (Point<S>, Point<S>),
}

impl<S: Real> Environment<S> {
    pub fn new(outer: Polygon<S>, holes: Vec<Polygon<S>>) -> Result<Self, EnvError> {
        outer.check_basic(PolygonRef::Outer)?;
        if !outer.is_ccw() {
            return Err(EnvError::OuterNotCcw);
        }
        for (i, h) in holes.iter().enumerate() {
            h.check_basic(PolygonRef::Hole(i))?;
            if h.is_ccw() {
                return Err(EnvError::HoleNotCw { index: i });
            }
        }
        let eps = S::geom_eps();
        // Every hole strictly inside the outer polygon, away from its boundary.
        for (i, h) in holes.iter().enumerate() {
            for v in &h.vertices {
                let near_outer = outer
                    .edges()
                    .any(|(a, b)| point_segment_distance(v, &a, &b) <= eps);
                if near_outer || !outer.contains(v) {
                    return Err(EnvError::HoleOutside { index: i });
                }
            }
        }
        // Holes pairwise disjoint (no touching).
        for i in 0..holes.len() {
            for j in (i + 1)..holes.len() {
                let overlap = holes[i].vertices.iter().any(|v| holes[j].contains(v))
                    || holes[j].vertices.iter().any(|v| holes[i].contains(v))
                    || holes[i].edges().any(|(a, b)| {
                        holes[j]
                            .edges()
                            .any(|(c, d)| segments_intersect_or_touch(&a, &b, &c, &d))
                    });
                if overlap {
                    return Err(EnvError::HolesOverlap { a: i, b: j });
                }
            }
        }

        let mut env = Environment {
            outer,
            holes,
            edges: Vec::new(),
            reflex: Vec::new(),
            bbox: (Point::new(S::zero(), S::zero()), Point::new(S::zero(), S::zero())),
        };
        env.edges = env
            .polygons()
            .flat_map(|(_, p)| p.edges().collect::<Vec<_>>())
            .collect();
        env.reflex = detect_critical_points(&env).iter().map(|cp| cp.location).collect();
        let xs = env.outer.vertices.iter().map(|v| v.x);
        let ys = env.outer.vertices.iter().map(|v| v.y);
        let min_x = xs.clone().fold(S::infinity(), |m, v| m.min(v));
        let max_x = xs.fold(S::neg_infinity(), |m, v| m.max(v));
        let min_y = ys.clone().fold(S::infinity(), |m, v| m.min(v));
        let max_y = ys.fold(S::neg_infinity(), |m, v| m.max(v));
        env.bbox = (Point::new(min_x, min_y), Point::new(max_x, max_y));
        Ok(env)
    }

    /// Parse the environment file format: `{"outer": [[x,y],...], "holes": [...]}`.
    pub fn from_json(text: &str) -> Result<Self, EnvError> {
        #[derive(serde::Deserialize)]
        struct Raw {
            outer: Vec<[f64; 2]>,
            #[serde(default)]
            holes: Vec<Vec<[f64; 2]>>,
        }
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| EnvError::Format(e.to_string()))?;
        let conv = |pts: Vec<[f64; 2]>| {
            Polygon::new(
                pts.into_iter()
                    .map(|[x, y]| Point::new(S::from_f64_lit(x), S::from_f64_lit(y)))
                    .collect(),
            )
        };
        Environment::new(conv(raw.outer), raw.holes.into_iter().map(conv).collect())
    }

    pub fn to_json(&self) -> String {
        let outer: Vec<[f64; 2]> = self
            .outer
            .vertices
            .iter()
            .map(|p| [p.x.to_f64().unwrap(), p.y.to_f64().unwrap()])
            .collect();
        let holes: Vec<Vec<[f64; 2]>> = self
            .holes
            .iter()
            .map(|h| {
                h.vertices
                    .iter()
                    .map(|p| [p.x.to_f64().unwrap(), p.y.to_f64().unwrap()])
                    .collect()
            })
            .collect();
        serde_json::json!({ "outer": outer, "holes": holes }).to_string()
    }

    /// All polygons with their role: outer first, then holes in order.
    pub fn polygons(&self) -> impl Iterator<Item = (PolygonRef, &Polygon<S>)> {
        std::iter::once((PolygonRef::Outer, &self.outer)).chain(
            self.holes
                .iter()
                .enumerate()
                .map(|(i, h)| (PolygonRef::Hole(i), h)),
        )
    }

    pub fn polygon(&self, which: PolygonRef) -> &Polygon<S> {
        match which {
            PolygonRef::Outer => &self.outer,
            PolygonRef::Hole(i) => &self.holes[i],
        }
    }

    /// Every boundary edge of the environment.
    pub fn boundary_edges(&self) -> &[(Point<S>, Point<S>)] {
        &self.edges
    }

    pub fn bounding_box(&self) -> (Point<S>, Point<S>) {
        self.bbox
    }

    pub fn bbox_diagonal(&self) -> S {
        self.bbox.0.dist(&self.bbox.1)
    }

    /// Distance from `p` to the nearest boundary edge.
    pub fn boundary_distance(&self, p: &Point<S>) -> S {
        self.edges
            .iter()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .min_by(|u, v| cmp_finite(*u, *v))
            .unwrap_or(S::infinity())
    }

    /// Membership in free space, strict or up to the closure.
    pub fn contains(&self, p: &Point<S>, mode: Membership) -> bool {
        if self.boundary_distance(p) <= S::geom_eps() {
            return mode == Membership::Closure;
        }
        self.outer.contains(p) && !self.holes.iter().any(|h| h.contains(p))
    }
}

/// True iff `p` is strictly inside the free space.
pub fn point_in_free_space<S: Real>(env: &Environment<S>, p: &Point<S>) -> bool {
    env.contains(p, Membership::Strict)
}

/// Mutual visibility of two points of the free-space closure.
///
/// The open segment must not cross a boundary edge, pass through a reflex
/// vertex (other than an endpoint), or enter the solid region. Grazing
/// contact along a wall counts as visible: pursuers stand on boundary
/// vertices and must see their own walls.
pub fn visible<S: Real>(env: &Environment<S>, p: &Point<S>, q: &Point<S>) -> bool {
    let eps = S::geom_eps();
    if p.dist(q) <= eps {
        return true;
    }
    for (a, b) in env.boundary_edges() {
        if proper_crossing(p, q, a, b) {
            return false;
        }
    }
    // A sightline through an occluding corner is blocked; at such a vertex
    // the solid cone pokes into the segment's path. Convex free-space
    // vertices cannot lie interior to a free segment, so only reflex
    // vertices are checked.
    for v in &env.reflex {
        if v.dist(p) > eps && v.dist(q) > eps && point_segment_distance(v, p, q) <= eps {
            return false;
        }
    }
    // Interior samples catch corner-to-corner segments that slice through
    // solid without properly crossing any single edge.
    const INTERIOR_SAMPLES: usize = 16;
    let n = S::from_f64_lit(INTERIOR_SAMPLES as f64);
    for k in 1..INTERIOR_SAMPLES {
        let t = S::from_f64_lit(k as f64) / n;
        let m = p.lerp(q, t);
        if !env.contains(&m, Membership::Closure) {
            return false;
        }
    }
    true
}

/// The solid-side interior angle at a vertex, in (0, 2*pi).
///
/// The polygon must follow the environment orientation convention (free
/// space on the left of travel), so this is the angle of the material
/// region: for a clockwise hole that is the hole's interior angle, for the
/// counterclockwise outer boundary the exterior one. Collinear vertices
/// report exactly pi.
pub fn internal_angle<S: Real>(polygon: &Polygon<S>, vertex_index: usize) -> S {
    let n = polygon.vertices.len();
    assert!(vertex_index < n, "vertex index out of range");
    let v = polygon.vertices[vertex_index];
    let prev = polygon.vertices[(vertex_index + n - 1) % n];
    let next = polygon.vertices[(vertex_index + 1) % n];
    let u = prev.sub(&v);
    let w = next.sub(&v);
    let two_pi = S::PI() + S::PI();
    // Counterclockwise angle from the outgoing edge to the reversed
    // incoming edge is the free-side angle.
    let mut free = u.y.atan2(u.x) - w.y.atan2(w.x);
    while free < S::zero() {
        free = free + two_pi;
    }
    while free >= two_pi {
        free = free - two_pi;
    }
    let solid = two_pi - free;
    if (solid - S::PI()).abs() <= S::from_f64_lit(1e-9) {
        return S::PI();
    }
    solid
}

/// Identifier of a critical point; indexes into the detection order.
pub type CpId = usize;

/// A boundary vertex the intruder can hide behind: its solid-side angle is
/// below pi, equivalently the free-space angle exceeds pi.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint<S> {
    pub id: CpId,
    pub location: Point<S>,
    pub owner: PolygonRef,
    pub vertex: usize,
    /// The two incident boundary segments, (previous, this) and (this, next).
    pub adjacent_edges: [(Point<S>, Point<S>); 2],
}

/// All critical points, in deterministic order: outer vertices by index,
/// then each hole in order.
pub fn detect_critical_points<S: Real>(env: &Environment<S>) -> Vec<CriticalPoint<S>> {
    let mut out = Vec::new();
    for (which, poly) in env.polygons() {
        let n = poly.vertices.len();
        for i in 0..n {
            let solid = internal_angle(poly, i);
            if solid < S::PI() {
                let v = poly.vertices[i];
                let prev = poly.vertices[(i + n - 1) % n];
                let next = poly.vertices[(i + 1) % n];
                out.push(CriticalPoint {
                    id: out.len(),
                    location: v,
                    owner: which,
                    vertex: i,
                    adjacent_edges: [(prev, v), (v, next)],
                });
            }
        }
    }
    out
}

/// The polyline m -> p -> x bounding the convex region swept clear while a
/// pursuer traverses an incident edge. Diagnostic and rendering construct.
#[derive(Clone, Debug, Serialize)]
pub struct FrontierSegment<S> {
    pub critical_point_id: CpId,
    /// Midpoint of the adjacent edge the frontier extends.
    pub m: Point<S>,
    /// First boundary intersection of the ray from the critical point away
    /// from m.
    pub x: Point<S>,
}

/// First boundary hit of a ray, ignoring hits within eps of the origin.
/// Returns (t, hit point, hit-near-vertex flag).
fn ray_first_boundary_hit<S: Real>(
    env: &Environment<S>,
    origin: &Point<S>,
    dir: &Point<S>,
) -> Option<(S, Point<S>, bool)> {
    let eps = S::geom_eps();
    let mut best: Option<(S, Point<S>, bool)> = None;
    for (a, b) in env.boundary_edges() {
        let e = b.sub(a);
        let denom = dir.cross(&e);
        if denom.abs() <= S::from_f64_lit(1e-15) {
            continue;
        }
        let ao = a.sub(origin);
        let t = ao.cross(&e) / denom;
        let u = ao.cross(dir) / denom;
        let edge_len = e.norm();
        let slack = eps / edge_len;
        if t > eps && u >= -slack && u <= S::one() + slack {
            let hit = origin.add(&dir.scale(t));
            let near_vertex = hit.dist(a) <= eps || hit.dist(b) <= eps;
            match &best {
                Some((bt, _, _)) if *bt <= t => {}
                _ => best = Some((t, hit, near_vertex)),
            }
        }
    }
    best
}

/// Frontier segments of a critical point, one per adjacent edge.
///
/// Casts the ray from p in the direction p - m (m the edge midpoint) and
/// takes the first boundary intersection. A ray that exits exactly through
/// a vertex is perturbed deterministically and retried.
pub fn compute_frontier<S: Real>(
    env: &Environment<S>,
    cp: &CriticalPoint<S>,
) -> Vec<FrontierSegment<S>> {
    let half = S::from_f64_lit(0.5);
    let mut out = Vec::with_capacity(2);
    for (a, b) in &cp.adjacent_edges {
        let m = a.lerp(b, half);
        let d = cp.location.sub(&m);
        let len = d.norm();
        if len <= S::geom_eps() {
            continue;
        }
        let dir = d.scale(S::one() / len);
        let mut angle = S::zero();
        let mut step = S::from_f64_lit(1e-7);
        for _ in 0..9 {
            let (s, c) = angle.sin_cos();
            let rotated = Point::new(dir.x * c - dir.y * s, dir.x * s + dir.y * c);
            if let Some((_, hit, near_vertex)) = ray_first_boundary_hit(env, &cp.location, &rotated)
            {
                if !near_vertex {
                    out.push(FrontierSegment { critical_point_id: cp.id, m, x: hit });
                    break;
                }
            }
            angle = step;
            step = step * S::from_f64_lit(3.0);
        }
    }
    out
}

/// True iff `target` is visible from every one of `samples` points placed
/// evenly on the segment ab, endpoints included. With a single sample the
/// check degenerates to `visible(a, target)`.
pub fn visible_along_segment<S: Real>(
    env: &Environment<S>,
    a: &Point<S>,
    b: &Point<S>,
    target: &Point<S>,
    samples: usize,
) -> bool {
    sweep_points(a, b, samples).all(|p| visible(env, &p, target))
}

/// Evenly spaced points on ab inclusive of endpoints; one sample yields `a`.
pub fn sweep_points<S: Real>(
    a: &Point<S>,
    b: &Point<S>,
    samples: usize,
) -> impl Iterator<Item = Point<S>> {
    let n = samples.max(1);
    let a = *a;
    let b = *b;
    (0..n).map(move |k| {
        if n == 1 {
            a
        } else {
            let t = S::from_f64_lit(k as f64) / S::from_f64_lit((n - 1) as f64);
            a.lerp(&b, t)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Point<f64>;

    fn pt(x: f64, y: f64) -> P {
        Point::new(x, y)
    }

    pub fn unit_square() -> Environment<f64> {
        Environment::new(
            Polygon::new(vec![pt(0., 0.), pt(1., 0.), pt(1., 1.), pt(0., 1.)]),
            vec![],
        )
        .unwrap()
    }

    pub fn square_with_hole() -> Environment<f64> {
        Environment::new(
            Polygon::new(vec![pt(0., 0.), pt(1., 0.), pt(1., 1.), pt(0., 1.)]),
            vec![Polygon::new(vec![
                pt(0.4, 0.4),
                pt(0.4, 0.6),
                pt(0.6, 0.6),
                pt(0.6, 0.4),
            ])],
        )
        .unwrap()
    }

    pub fn l_room() -> Environment<f64> {
        Environment::new(
            Polygon::new(vec![
                pt(0., 0.),
                pt(2., 0.),
                pt(2., 1.),
                pt(1., 1.),
                pt(1., 2.),
                pt(0., 2.),
            ]),
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn signed_area_orientation() {
        let sq = Polygon::new(vec![pt(0., 0.), pt(1., 0.), pt(1., 1.), pt(0., 1.)]);
        assert!((sq.signed_area() - 1.0).abs() < 1e-12);
        assert!(sq.is_ccw());
        let rev = Polygon::new(vec![pt(0., 0.), pt(0., 1.), pt(1., 1.), pt(1., 0.)]);
        assert!(!rev.is_ccw());
    }

    #[test]
    fn env_validation_diagnostics() {
        // Outer must be CCW.
        let cw = Polygon::new(vec![pt(0., 0.), pt(0., 1.), pt(1., 1.), pt(1., 0.)]);
        assert!(matches!(Environment::new(cw, vec![]), Err(EnvError::OuterNotCcw)));
        // Holes must be CW.
        let outer = Polygon::new(vec![pt(0., 0.), pt(4., 0.), pt(4., 4.), pt(0., 4.)]);
        let ccw_hole = Polygon::new(vec![pt(1., 1.), pt(2., 1.), pt(2., 2.), pt(1., 2.)]);
        assert!(matches!(
            Environment::new(outer.clone(), vec![ccw_hole]),
            Err(EnvError::HoleNotCw { index: 0 })
        ));
        // Hole outside.
        let far = Polygon::new(vec![pt(5., 5.), pt(5., 6.), pt(6., 6.), pt(6., 5.)]);
        assert!(matches!(
            Environment::new(outer.clone(), vec![far]),
            Err(EnvError::HoleOutside { index: 0 })
        ));
        // Self intersection (asymmetric bowtie; a symmetric one has zero
        // area and trips the area check instead).
        let bowtie = Polygon::new(vec![pt(0., 0.), pt(3., 1.), pt(3., 0.), pt(0., 2.)]);
        assert!(matches!(
            Environment::new(bowtie, vec![]),
            Err(EnvError::SelfIntersection { which: PolygonRef::Outer, .. })
        ));
        // Overlapping holes named by index.
        let h0 = Polygon::new(vec![pt(1., 1.), pt(1., 2.), pt(2., 2.), pt(2., 1.)]);
        let h1 = Polygon::new(vec![pt(1.5, 1.5), pt(1.5, 2.5), pt(2.5, 2.5), pt(2.5, 1.5)]);
        assert!(matches!(
            Environment::new(outer, vec![h0, h1]),
            Err(EnvError::HolesOverlap { a: 0, b: 1 })
        ));
    }

    #[test]
    fn from_json_roundtrip_and_errors() {
        let env: Environment<f64> = Environment::from_json(
            r#"{"outer":[[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]],"holes":[]}"#,
        )
        .unwrap();
        assert_eq!(env.outer.len(), 6);
        assert!(Environment::<f64>::from_json("not json").is_err());
        let bad = Environment::<f64>::from_json(r#"{"outer":[[0,0],[0,1],[1,1],[1,0]]}"#);
        assert!(matches!(bad, Err(EnvError::OuterNotCcw)));
    }

    #[test]
    fn point_in_free_space_examples() {
        let sq = unit_square();
        assert!(point_in_free_space(&sq, &pt(0.5, 0.5)));
        assert!(!point_in_free_space(&sq, &pt(2., 2.)));
        let holed = square_with_hole();
        assert!(!point_in_free_space(&holed, &pt(0.5, 0.5)));
        // Boundary points are not strictly interior but are in the closure.
        assert!(!point_in_free_space(&sq, &pt(0., 0.5)));
        assert!(sq.contains(&pt(0., 0.5), Membership::Closure));
        assert!(!holed.contains(&pt(0.5, 0.5), Membership::Closure));
    }

    #[test]
    fn visible_examples() {
        let sq = unit_square();
        assert!(visible(&sq, &pt(0.1, 0.1), &pt(0.9, 0.9)));
        let holed = square_with_hole();
        assert!(!visible(&holed, &pt(0.1, 0.5), &pt(0.9, 0.5)));
        // Sightline through the reflex corner at (1,1) is blocked.
        let l = l_room();
        assert!(!visible(&l, &pt(1.5, 0.5), &pt(0.5, 1.5)));
        // Grazing along a wall stays visible.
        assert!(visible(&holed, &pt(0.4, 0.4), &pt(0.6, 0.4)));
        // Corner-to-corner diagonal through the hole is blocked.
        assert!(!visible(&holed, &pt(0.4, 0.4), &pt(0.6, 0.6)));
        // visible(p, p) for any free point.
        assert!(visible(&l, &pt(0.5, 0.5), &pt(0.5, 0.5)));
    }

    #[test]
    fn visible_is_symmetric_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let env = square_with_hole();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 500 {
            let a = pt(rng.gen::<f64>(), rng.gen::<f64>());
            let b = pt(rng.gen::<f64>(), rng.gen::<f64>());
            if !point_in_free_space(&env, &a) || !point_in_free_space(&env, &b) {
                continue;
            }
            assert_eq!(visible(&env, &a, &b), visible(&env, &b, &a));
            checked += 1;
        }
    }

    #[test]
    fn internal_angle_examples() {
        // A clockwise square models a hole: material inside, angle pi/2.
        let hole = Polygon::new(vec![pt(0., 0.), pt(0., 1.), pt(1., 1.), pt(1., 0.)]);
        for i in 0..4 {
            assert!((internal_angle(&hole, i) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        }
        // The L-room's reflex corner: solid side pi/2, free side 3*pi/2.
        let l = l_room();
        assert!((internal_angle(&l.outer, 3) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        // Collinear triple reports exactly pi.
        let collinear = Polygon::new(vec![pt(0., 0.), pt(1., 0.), pt(2., 0.), pt(2., 1.), pt(0., 1.)]);
        assert_eq!(internal_angle(&collinear, 1), std::f64::consts::PI);
    }

    #[test]
    fn critical_points_examples() {
        let convex = Environment::new(
            Polygon::new(vec![pt(0., 0.), pt(3., 0.), pt(4., 2.), pt(0., 2.)]),
            vec![],
        )
        .unwrap();
        assert!(detect_critical_points(&convex).is_empty());

        let l = l_room();
        let cps = detect_critical_points(&l);
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].location, pt(1., 1.));
        assert_eq!(cps[0].owner, PolygonRef::Outer);

        let holed = square_with_hole();
        let cps = detect_critical_points(&holed);
        assert_eq!(cps.len(), 4);
        for cp in &cps {
            assert_eq!(cp.owner, PolygonRef::Hole(0));
        }
        // Criticality cross-check: every vertex of every polygon is critical
        // exactly when its solid angle is below pi.
        for env in [&l, &holed] {
            let cps = detect_critical_points(env);
            for (which, poly) in env.polygons() {
                for i in 0..poly.len() {
                    let is_cp = cps.iter().any(|c| c.owner == which && c.vertex == i);
                    let solid = internal_angle(poly, i);
                    assert_eq!(is_cp, solid < std::f64::consts::PI, "{which} vertex {i}");
                }
            }
        }
    }

    #[test]
    fn frontier_examples() {
        let l = l_room();
        let cps = detect_critical_points(&l);
        let fr = compute_frontier(&l, &cps[0]);
        assert_eq!(fr.len(), 2);
        // Edge (2,1)-(1,1): m=(1.5,1), ray direction (-1,0), x=(0,1).
        let f = fr.iter().find(|f| (f.m.x - 1.5).abs() < 1e-9).unwrap();
        assert!(f.x.dist(&pt(0., 1.)) < 1e-9);
        // Edge (1,1)-(1,2): m=(1,1.5), ray direction (0,-1), x=(1,0).
        let g = fr.iter().find(|f| (f.m.y - 1.5).abs() < 1e-9).unwrap();
        assert!(g.x.dist(&pt(1., 0.)) < 1e-9);

        let holed = square_with_hole();
        let cps = detect_critical_points(&holed);
        // Corner (0.4,0.4): one adjacent edge has midpoint (0.5,0.4); the
        // ray goes left and exits at (0,0.4).
        let corner = cps.iter().find(|c| c.location.dist(&pt(0.4, 0.4)) < 1e-9).unwrap();
        let fr = compute_frontier(&holed, corner);
        let f = fr.iter().find(|f| f.m.dist(&pt(0.5, 0.4)) < 1e-9).unwrap();
        assert!(f.x.dist(&pt(0., 0.4)) < 1e-9);
        // Invariants: x on the boundary; m, p, x collinear.
        for cp in &cps {
            for f in compute_frontier(&holed, cp) {
                assert!(holed.boundary_distance(&f.x) < 1e-7);
                let d1 = cp.location.sub(&f.m);
                let d2 = f.x.sub(&cp.location);
                assert!(d1.cross(&d2).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn sweep_visibility_examples() {
        let sq = unit_square();
        assert!(visible_along_segment(&sq, &pt(0.1, 0.1), &pt(0.9, 0.1), &pt(0.5, 0.9), 16));
        let holed = square_with_hole();
        assert!(visible_along_segment(
            &holed,
            &pt(0.1, 0.1),
            &pt(0.1, 0.9),
            &pt(0.9, 0.5),
            16
        ));
        // One sample reduces to plain visibility from the start point.
        let a = pt(0.1, 0.5);
        let t = pt(0.9, 0.5);
        assert_eq!(
            visible_along_segment(&holed, &a, &pt(0.1, 0.9), &t, 1),
            visible(&holed, &a, &t)
        );
        assert!(!visible_along_segment(&holed, &a, &pt(0.1, 0.9), &t, 16));
    }

    #[test]
    fn detection_is_deterministic() {
        let a = square_with_hole();
        let b = square_with_hole();
        let fa = format!("{:?}", detect_critical_points(&a));
        let fb = format!("{:?}", detect_critical_points(&b));
        assert_eq!(fa, fb);
    }
}
