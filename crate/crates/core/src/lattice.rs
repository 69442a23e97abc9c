//! Honeycomb geometry.
//!
//! Plaquettes use axial coordinates. Vertices live on an integer grid where a
//! point `(x, y)` sits at real position `(x * sqrt(3) / 4, y / 4)`; plaquette
//! centres are `(4q + 2r, 6r)` and have circumradius 1.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DIRS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
const CORNERS: [(i32, i32); 6] = [(2, 2), (0, 4), (-2, 2), (-2, -2), (0, -4), (2, -2)];
const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Axial coordinates of a hexagonal plaquette.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HexCoord {
    pub q: i32,
    pub r: i32,
}

impl HexCoord {
    pub const ORIGIN: HexCoord = HexCoord { q: 0, r: 0 };

    pub fn new(q: i32, r: i32) -> Self {
        HexCoord { q, r }
    }

    /// Neighbour across side `dir`; direction `d` points at angle `60 d` degrees.
    pub fn step(self, dir: usize) -> HexCoord {
        let (dq, dr) = DIRS[dir % 6];
        HexCoord::new(self.q + dq, self.r + dr)
    }

    pub fn neighbors(self) -> [HexCoord; 6] {
        std::array::from_fn(|d| self.step(d))
    }

    pub fn distance(self, other: HexCoord) -> u32 {
        let dq = self.q - other.q;
        let dr = self.r - other.r;
        ((dq.abs() + dr.abs() + (dq + dr).abs()) / 2) as u32
    }

    pub fn center(self) -> LatticePoint {
        LatticePoint::new(4 * self.q + 2 * self.r, 6 * self.r)
    }

    pub fn position(self) -> [f64; 2] {
        self.center().position()
    }

    /// Corner `k` sits at angle `30 + 60 k` degrees.
    pub fn corner(self, k: usize) -> VertexId {
        let c = self.center();
        let (dx, dy) = CORNERS[k % 6];
        VertexId(LatticePoint::new(c.x + dx, c.y + dy))
    }

    pub fn vertices(self) -> [VertexId; 6] {
        std::array::from_fn(|k| self.corner(k))
    }

    /// Side shared with `self.step(dir)`, between corners `dir - 1` and `dir`.
    pub fn edge(self, dir: usize) -> EdgeId {
        EdgeId::new(self, dir)
    }

    pub fn edges(self) -> [EdgeId; 6] {
        std::array::from_fn(|d| self.edge(d))
    }
}

impl fmt::Display for HexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.r)
    }
}

/// Integer point of the scaled vertex grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i32,
    pub y: i32,
}

impl LatticePoint {
    pub fn new(x: i32, y: i32) -> Self {
        LatticePoint { x, y }
    }

    pub fn position(self) -> [f64; 2] {
        [self.x as f64 * SQRT3 / 4.0, self.y as f64 / 4.0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub LatticePoint);

impl VertexId {
    pub fn position(self) -> [f64; 2] {
        self.0.position()
    }

    /// A plaquette containing this vertex and the corner index it occupies.
    fn anchor(self) -> (HexCoord, usize) {
        for (k, (dx, dy)) in CORNERS.iter().enumerate() {
            let cx = self.0.x - dx;
            let cy = self.0.y - dy;
            if cy.rem_euclid(6) == 0 {
                let r = cy / 6;
                if (cx - 2 * r).rem_euclid(4) == 0 {
                    return (HexCoord::new((cx - 2 * r) / 4, r), k);
                }
            }
        }
        unreachable!("vertex ids are only built from plaquette corners")
    }

    pub fn incident_hexes(self) -> [HexCoord; 3] {
        let (h, k) = self.anchor();
        [h, h.step(k), h.step(k + 1)]
    }

    pub fn edges(self) -> [EdgeId; 3] {
        let (h, k) = self.anchor();
        [h.edge(k), h.edge(k + 1), h.step(k).edge(k + 2)]
    }

    pub fn neighbors(self) -> [VertexId; 3] {
        let e = self.edges();
        std::array::from_fn(|i| e[i].other_end(self))
    }

    pub fn edge_to(self, other: VertexId) -> Option<EdgeId> {
        self.edges().into_iter().find(|e| e.other_end(self) == other)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v({},{})", self.0.x, self.0.y)
    }
}

/// Edge named by the lexicographically smaller of its two plaquettes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId {
    pub hex: HexCoord,
    pub dir: u8,
}

impl EdgeId {
    pub fn new(hex: HexCoord, dir: usize) -> Self {
        let dir = dir % 6;
        let other = hex.step(dir);
        if other < hex {
            EdgeId { hex: other, dir: ((dir + 3) % 6) as u8 }
        } else {
            EdgeId { hex, dir: dir as u8 }
        }
    }

    pub fn hexes(self) -> [HexCoord; 2] {
        [self.hex, self.hex.step(self.dir as usize)]
    }

    pub fn endpoints(self) -> [VertexId; 2] {
        let d = self.dir as usize;
        [self.hex.corner(d + 5), self.hex.corner(d)]
    }

    pub fn other_end(self, v: VertexId) -> VertexId {
        let [a, b] = self.endpoints();
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn midpoint(self) -> [f64; 2] {
        let [a, b] = self.endpoints();
        let (pa, pb) = (a.position(), b.position());
        [(pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0]
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}:{}", self.hex, self.dir)
    }
}

/// Edges of a region plus the edges leaving its vertices.
pub fn extended_edges(region: &Region) -> BTreeSet<EdgeId> {
    region.vertices().iter().flat_map(|v| v.edges()).collect()
}

/// Finite set of plaquettes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region(pub BTreeSet<HexCoord>);

impl Region {
    pub fn new<I: IntoIterator<Item = HexCoord>>(hexes: I) -> Self {
        Region(hexes.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, h: HexCoord) -> bool {
        self.0.contains(&h)
    }

    pub fn iter(&self) -> impl Iterator<Item = HexCoord> + '_ {
        self.0.iter().copied()
    }

    pub fn symmetric_difference(&self, other: &Region) -> Region {
        Region(self.0.symmetric_difference(&other.0).copied().collect())
    }

    /// Number of connected components under side adjacency.
    pub fn component_count(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &start in &self.0 {
            if !seen.insert(start) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([start]);
            while let Some(h) = queue.pop_front() {
                for n in h.neighbors() {
                    if self.0.contains(&n) && seen.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
        }
        count
    }

    /// Edges of the plaquettes in the region.
    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.0.iter().flat_map(|h| h.edges()).collect()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.0.iter().flat_map(|h| h.vertices()).collect()
    }

    /// Edges bordering exactly one plaquette of the region.
    pub fn boundary_edges(&self) -> BTreeSet<EdgeId> {
        let mut out = BTreeSet::new();
        for h in &self.0 {
            for e in h.edges() {
                if !out.insert(e) {
                    out.remove(&e);
                }
            }
        }
        out
    }

    /// Largest plaquette distance from the origin.
    pub fn radius(&self) -> u32 {
        self.0.iter().map(|h| h.distance(HexCoord::ORIGIN)).max().unwrap_or(0)
    }
}

/// Plaquettes within distance `n - 1` of the origin.
pub fn standard_region(n: u32) -> Result<Region> {
    if n == 0 {
        return Err(Error::InvalidSize(n));
    }
    let m = n as i32 - 1;
    let mut hexes = BTreeSet::new();
    for q in -m..=m {
        for r in -m..=m {
            let h = HexCoord::new(q, r);
            if h.distance(HexCoord::ORIGIN) <= m as u32 {
                hexes.insert(h);
            }
        }
    }
    Ok(Region(hexes))
}

/// Edge path given by its vertex sequence. A closed path stores each vertex
/// once; edge `k` joins vertex `k` to vertex `k + 1` cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedPath {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    closed: bool,
}

impl OrientedPath {
    pub fn open(vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::EmptyPath);
        }
        let edges = Self::edges_between(vertices.windows(2).map(|w| (w[0], w[1])))?;
        Ok(OrientedPath { vertices, edges, closed: false })
    }

    /// Closed path; the first vertex may optionally be repeated at the end.
    pub fn closed(mut vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::EmptyPath);
        }
        let n = vertices.len();
        let edges = Self::edges_between((0..n).map(|k| (vertices[k], vertices[(k + 1) % n])))?;
        Ok(OrientedPath { vertices, edges, closed: true })
    }

    fn edges_between(pairs: impl Iterator<Item = (VertexId, VertexId)>) -> Result<Vec<EdgeId>> {
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for (a, b) in pairs {
            let e = a.edge_to(b).ok_or(Error::NotAdjacent(a, b))?;
            if !seen.insert(e) {
                return Err(Error::RepeatedEdge(e));
            }
            edges.push(e);
        }
        Ok(edges)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn initial_edge(&self) -> EdgeId {
        self.edges[0]
    }

    pub fn final_edge(&self) -> EdgeId {
        *self.edges.last().expect("paths are non-empty")
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        if self.closed {
            self.vertices[0]
        } else {
            *self.vertices.last().expect("paths are non-empty")
        }
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    pub fn reversed(&self) -> OrientedPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        if self.closed {
            Self::closed(vertices).expect("reversal keeps validity")
        } else {
            Self::open(vertices).expect("reversal keeps validity")
        }
    }

    /// Sub-path covering edges `from..to`.
    pub fn slice(&self, from: usize, to: usize) -> Result<OrientedPath> {
        if from >= to || to > self.edges.len() {
            return Err(Error::EmptyPath);
        }
        let n = self.vertices.len();
        let vs = (from..=to).map(|k| self.vertices[k % n]).collect();
        Self::open(vs)
    }

    /// Concatenation; `next` must start where `self` ends.
    pub fn concat(&self, next: &OrientedPath) -> Result<OrientedPath> {
        if self.closed || next.closed {
            return Err(Error::ClosedPath);
        }
        if self.end() != next.start() {
            return Err(Error::NotAdjacent(self.end(), next.start()));
        }
        let mut vs = self.vertices.clone();
        vs.extend_from_slice(&next.vertices[1..]);
        Self::open(vs)
    }
}

/// Which side of the direction of travel the third edge of a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexStep {
    pub vertex: VertexId,
    pub in_edge: EdgeId,
    pub out_edge: EdgeId,
    pub leg: EdgeId,
    pub side: Side,
}

/// Per-vertex turn data of a path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStepClass {
    pub steps: Vec<VertexStep>,
}

impl PathStepClass {
    pub fn r_legs(&self) -> Vec<EdgeId> {
        self.steps.iter().filter(|s| s.side == Side::Right).map(|s| s.leg).collect()
    }

    /// `(in_edge, out_edge)` at each vertex whose leg is on the left.
    pub fn l_vertices(&self) -> Vec<(EdgeId, EdgeId)> {
        self.steps
            .iter()
            .filter(|s| s.side == Side::Left)
            .map(|s| (s.in_edge, s.out_edge))
            .collect()
    }
}

pub fn classify_path(path: &OrientedPath) -> PathStepClass {
    let vs = &path.vertices;
    let es = &path.edges;
    let n = vs.len();
    let interior: Vec<usize> = if path.closed { (0..n).collect() } else { (1..n - 1).collect() };
    let steps = interior
        .into_iter()
        .map(|k| {
            let prev = vs[(k + n - 1) % n].0;
            let v = vs[k];
            let next = vs[(k + 1) % n].0;
            let in_edge = es[(k + es.len() - 1) % es.len()];
            let out_edge = es[k % es.len()];
            let leg = v
                .edges()
                .into_iter()
                .find(|e| *e != in_edge && *e != out_edge)
                .expect("three edges meet at every vertex");
            let (ax, ay) = ((v.0.x - prev.x) as i64, (v.0.y - prev.y) as i64);
            let (bx, by) = ((next.x - v.0.x) as i64, (next.y - v.0.y) as i64);
            let side = if ax * by - ay * bx > 0 { Side::Right } else { Side::Left };
            VertexStep { vertex: v, in_edge, out_edge, leg, side }
        })
        .collect();
    PathStepClass { steps }
}

/// Boundary loops of a region, oriented with the region on their left.
pub fn boundary_path(region: &Region) -> Vec<OrientedPath> {
    let mut next: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for e in region.boundary_edges() {
        let (inside, dir) = if region.contains(e.hex) {
            (e.hex, e.dir as usize)
        } else {
            (e.hex.step(e.dir as usize), (e.dir as usize + 3) % 6)
        };
        next.insert(inside.corner(dir + 5), inside.corner(dir));
    }
    let mut loops = Vec::new();
    while let Some((&start, _)) = next.iter().next() {
        let mut vs = vec![start];
        let mut cur = next.remove(&start).expect("present");
        while cur != start {
            vs.push(cur);
            cur = next.remove(&cur).expect("boundary vertices have one successor");
        }
        loops.push(OrientedPath::closed(vs).expect("boundary loops are valid"));
    }
    loops
}

/// Shapes for plaquette-overlap queries. Polygons must be convex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    Empty,
    Polygon(Vec<[f64; 2]>),
    /// `{x : (x - point) . normal >= 0}` restricted to plaquettes within
    /// `radius` of the origin.
    HalfPlane { point: [f64; 2], normal: [f64; 2], radius: u32 },
}

const EPS: f64 = 1e-9;

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn hex_corners(h: HexCoord) -> [[f64; 2]; 6] {
    let v = h.vertices();
    std::array::from_fn(|k| v[k].position())
}

fn project(points: &[[f64; 2]], axis: [f64; 2]) -> (f64, f64) {
    points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let t = dot(*p, axis);
        (lo.min(t), hi.max(t))
    })
}

fn edge_normals(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    (0..n)
        .map(|k| {
            let d = sub(points[(k + 1) % n], points[k]);
            [-d[1], d[0]]
        })
        .filter(|a| dot(*a, *a) > EPS)
        .collect()
}

/// Whether the open plaquette meets the closed convex polygon.
fn overlaps_polygon(h: HexCoord, poly: &[[f64; 2]]) -> bool {
    let corners = hex_corners(h);
    let mut axes = edge_normals(&corners);
    axes.extend(edge_normals(poly));
    axes.iter().all(|&a| {
        let norm = dot(a, a).sqrt();
        let a = [a[0] / norm, a[1] / norm];
        let (hlo, hhi) = project(&corners, a);
        let (slo, shi) = project(poly, a);
        shi > hlo + EPS && slo < hhi - EPS
    })
}

/// Plaquettes whose open interior meets `shape`.
pub fn hexes_overlapping(shape: &Shape) -> Region {
    match shape {
        Shape::Empty => Region::default(),
        Shape::Polygon(poly) if poly.is_empty() => Region::default(),
        Shape::Polygon(poly) => {
            let (xlo, xhi) = project(poly, [1.0, 0.0]);
            let (ylo, yhi) = project(poly, [0.0, 1.0]);
            let rlo = ((ylo - 1.0) / 1.5).floor() as i32 - 1;
            let rhi = ((yhi + 1.0) / 1.5).ceil() as i32 + 1;
            let mut out = BTreeSet::new();
            for r in rlo..=rhi {
                let qlo = ((xlo - 1.0) / SQRT3 - r as f64 / 2.0).floor() as i32 - 1;
                let qhi = ((xhi + 1.0) / SQRT3 - r as f64 / 2.0).ceil() as i32 + 1;
                for q in qlo..=qhi {
                    let h = HexCoord::new(q, r);
                    if overlaps_polygon(h, poly) {
                        out.insert(h);
                    }
                }
            }
            Region(out)
        }
        Shape::HalfPlane { point, normal, radius } => {
            let disk = standard_region(radius + 1).expect("positive size");
            Region::new(disk.iter().filter(|&h| {
                hex_corners(h).iter().any(|c| dot(sub(*c, *point), *normal) > EPS)
            }))
        }
    }
}

/// Closed cone `{apex + t (cos a, sin a) : t >= 0, |a - axis| <= opening / 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    pub apex: [f64; 2],
    /// Direction of the axis in radians.
    pub axis: f64,
    pub opening: f64,
}

impl Cone {
    pub fn axis_vector(&self) -> [f64; 2] {
        [self.axis.cos(), self.axis.sin()]
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        let d = sub(p, self.apex);
        let t = dot(d, d).sqrt();
        if t < EPS {
            return true;
        }
        let cos = dot(d, self.axis_vector()) / t;
        cos >= (self.opening / 2.0).cos() - 1e-12
    }

    /// Right half of the cone: its left leg is this cone's axis.
    pub fn right_half(&self) -> Cone {
        Cone { apex: self.apex, axis: self.axis - self.opening / 4.0, opening: self.opening / 2.0 }
    }

    /// Convex polygon approximating the cone cut off at distance `radius`.
    pub fn polygon(&self, radius: f64) -> Vec<[f64; 2]> {
        let samples = 16;
        let mut pts = vec![self.apex];
        for s in 0..=samples {
            let a = self.axis - self.opening / 2.0 + self.opening * s as f64 / samples as f64;
            pts.push([self.apex[0] + radius * a.cos(), self.apex[1] + radius * a.sin()]);
        }
        pts
    }
}

/// Part of the boundary of the plaquettes overlapping the right half of
/// `cone` that runs along the cone axis, kept inside the edges of `window`
/// beyond distance `depth` from the apex. The path runs towards the apex.
pub fn truncated_cone_path(cone: &Cone, depth: f64, window: &Region) -> Result<OrientedPath> {
    if depth <= 2.0 || !depth.is_finite() {
        return Err(Error::InvalidDepth(depth));
    }
    let axis = cone.axis_vector();
    let normal = [axis[1], -axis[0]];
    let radius = window.radius() + 4;
    let half = hexes_overlapping(&Shape::HalfPlane { point: cone.apex, normal, radius });
    let allowed = extended_edges(window);
    let loops = boundary_path(&half);
    let lp = loops.first().ok_or(Error::ConeOutsideRegion)?;
    let keep: Vec<bool> = lp
        .edges()
        .iter()
        .map(|e| {
            let m = sub(e.midpoint(), cone.apex);
            allowed.contains(e) && dot(m, axis) > depth && dot(m, normal).abs() < 1.5
        })
        .collect();
    let n = keep.len();
    let starts: Vec<usize> = (0..n).filter(|&k| keep[k] && !keep[(k + n - 1) % n]).collect();
    match starts.as_slice() {
        [] => Err(Error::ConeOutsideRegion),
        [s] => {
            let mut len = 0;
            while keep[(s + len) % n] {
                len += 1;
            }
            let path = lp.slice(*s, s + len)?;
            if path.vertices().iter().all(|v| cone.contains(v.position())) {
                Ok(path)
            } else {
                Err(Error::ConeTooNarrow(depth))
            }
        }
        _ => Err(Error::Geometry("cone path leaves and re-enters the working region".into())),
    }
}

/// Indexed edge set of a region: the edges of its plaquettes plus the outer
/// legs, i.e. the remaining edges touching a region vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    region: Region,
    edges: Vec<EdgeId>,
    index: HashMap<EdgeId, usize>,
    inner: BTreeSet<EdgeId>,
    legs: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

impl Patch {
    pub fn new(region: Region) -> Result<Self> {
        let inner = region.edges();
        let vertex_set = region.vertices();
        let all = extended_edges(&region);
        if all.len() > 128 {
            return Err(Error::PatchTooLarge(all.len()));
        }
        let edges: Vec<EdgeId> = all.iter().copied().collect();
        let index = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let legs = Self::ordered_legs(&region, &inner, &all);
        Ok(Patch { region, edges, index, inner, legs, vertices: vertex_set.into_iter().collect() })
    }

    pub fn standard(n: u32) -> Result<Self> {
        Self::new(standard_region(n)?)
    }

    /// Outer legs in the order met while walking the boundary loops.
    fn ordered_legs(region: &Region, inner: &BTreeSet<EdgeId>, all: &BTreeSet<EdgeId>) -> Vec<EdgeId> {
        let mut legs = Vec::new();
        for lp in boundary_path(region) {
            for v in lp.vertices() {
                for e in v.edges() {
                    if all.contains(&e) && !inner.contains(&e) && !legs.contains(&e) {
                        legs.push(e);
                    }
                }
            }
        }
        legs
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn inner_edges(&self) -> &BTreeSet<EdgeId> {
        &self.inner
    }

    pub fn legs(&self) -> &[EdgeId] {
        &self.legs
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn index_of(&self, e: EdgeId) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn bit(&self, e: EdgeId) -> Result<u128> {
        self.index_of(e).map(|i| 1u128 << i).ok_or(Error::OutsidePatch(e))
    }

    pub fn mask<'a, I: IntoIterator<Item = &'a EdgeId>>(&self, edges: I) -> Result<u128> {
        edges.into_iter().try_fold(0u128, |m, e| Ok(m ^ self.bit(*e)?))
    }

    pub fn inner_mask(&self) -> u128 {
        self.mask(self.inner.iter()).expect("inner edges are indexed")
    }

    pub fn leg_mask(&self) -> u128 {
        self.mask(self.legs.iter()).expect("legs are indexed")
    }

    pub fn occupied(&self, config: u128) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|i| config >> i & 1 == 1).map(|i| self.edges[i]).collect()
    }

    /// Masks of the three edges at each region vertex.
    pub fn vertex_masks(&self) -> Vec<u128> {
        self.vertices
            .iter()
            .map(|v| self.mask(v.edges().iter()).expect("vertex edges are indexed"))
            .collect()
    }

    pub fn hex_mask(&self, h: HexCoord) -> Result<u128> {
        self.mask(h.edges().iter())
    }

    /// Vertex outside the region at the far end of a leg.
    pub fn leg_outer_end(&self, leg: EdgeId) -> VertexId {
        let [a, b] = leg.endpoints();
        if self.vertices.binary_search(&a).is_ok() {
            b
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_endpoints_are_consistent() {
        for h in standard_region(3).unwrap().iter() {
            for d in 0..6 {
                let e = h.edge(d);
                assert_eq!(e, h.step(d).edge(d + 3));
                for v in e.endpoints() {
                    assert!(v.edges().contains(&e));
                    assert!(v.incident_hexes().contains(&h));
                }
            }
        }
    }

    #[test]
    fn standard_region_counts() {
        for (n, hexes, inner, legs) in [(1, 1, 6, 6), (2, 7, 30, 12), (3, 19, 72, 18)] {
            let p = Patch::standard(n).unwrap();
            assert_eq!(p.region().len(), hexes);
            assert_eq!(p.inner_edges().len(), inner);
            assert_eq!(p.legs().len(), legs);
        }
    }

    #[test]
    fn hexagon_turns() {
        let h = HexCoord::ORIGIN;
        let ccw = &boundary_path(&Region::new([h]))[0];
        let class = classify_path(ccw);
        assert_eq!(class.r_legs().len(), 6);
        assert!(class.l_vertices().is_empty());
        let cw = classify_path(&ccw.reversed());
        assert_eq!(cw.l_vertices().len(), 6);
        for leg in class.r_legs() {
            assert!(!h.edges().contains(&leg));
        }
    }

    #[test]
    fn annulus_has_two_loops() {
        let mut ring = standard_region(2).unwrap();
        ring.0.remove(&HexCoord::ORIGIN);
        assert_eq!(ring.component_count(), 1);
        assert_eq!(boundary_path(&ring).len(), 2);
    }

    #[test]
    fn overlap_of_shrunk_and_grown_hexagon() {
        let h = HexCoord::new(1, -1);
        let c = h.position();
        let scaled = |s: f64| {
            Shape::Polygon(hex_corners(h).iter().map(|p| [c[0] + s * (p[0] - c[0]), c[1] + s * (p[1] - c[1])]).collect())
        };
        assert_eq!(hexes_overlapping(&scaled(0.9)), Region::new([h]));
        assert_eq!(hexes_overlapping(&scaled(1.0)), Region::new([h]));
        assert_eq!(hexes_overlapping(&scaled(1.05)).len(), 7);
        assert!(hexes_overlapping(&Shape::Empty).is_empty());
    }

    #[test]
    fn cone_path_runs_down_the_axis() {
        let window = standard_region(4).unwrap();
        let cone = Cone { apex: [0.3, -9.0], axis: std::f64::consts::FRAC_PI_2, opening: 0.6 };
        let p = truncated_cone_path(&cone, 6.0, &window).unwrap();
        assert!(p.len() >= 3);
        let ys: Vec<f64> = p.vertices().iter().map(|v| v.position()[1]).collect();
        assert!(ys.first() > ys.last());
        assert!(matches!(truncated_cone_path(&cone, 0.0, &window), Err(Error::InvalidDepth(_))));
    }
}
