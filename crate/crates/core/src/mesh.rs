//! Convex polyhedron representation, validation and intrinsic angles.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::io::Read;

use thiserror::Error;

use crate::geometry::{eps, Vec3};
use crate::verify::{Status, Verdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("surface is not closed: {0}")]
    NotClosed(String),
    #[error("polyhedron is not convex: {0}")]
    NotConvex(String),
    #[error("face {0} is not planar")]
    NonPlanarFace(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("i/o error: {0}")]
    Io(String),
}

/// An undirected edge `a < b` with the two faces that contain it.
///
/// `faces[0]` holds the half-edge `a → b`, `faces[1]` holds `b → a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub faces: [usize; 2],
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Combinatorics of a closed oriented polygonal surface.
#[derive(Debug, Clone)]
pub struct Topology {
    vertex_count: usize,
    faces: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    edge_index: HashMap<(usize, usize), usize>,
    /// Directed half-edge `(from, to)` → `(face, corner of from)`.
    half_edges: HashMap<(usize, usize), (usize, usize)>,
}

impl Topology {
    /// Builds and checks the combinatorics: every edge shared by exactly two
    /// consistently oriented faces, every vertex link a single cycle, and
    /// Euler characteristic 2.
    pub fn new(vertex_count: usize, faces: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        let mut half_edges = HashMap::new();
        let mut edge_index = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        for (f, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(MeshError::Degenerate(format!(
                    "face {f} has fewer than 3 corners"
                )));
            }
            for (i, &v) in face.iter().enumerate() {
                if v >= vertex_count {
                    return Err(MeshError::Degenerate(format!(
                        "face {f} references vertex {v}"
                    )));
                }
                let w = face[(i + 1) % face.len()];
                if v == w {
                    return Err(MeshError::Degenerate(format!(
                        "face {f} repeats vertex {v}"
                    )));
                }
                if half_edges.insert((v, w), (f, i)).is_some() {
                    return Err(MeshError::NotClosed(format!(
                        "directed edge {v}->{w} appears twice (non-manifold or inconsistent orientation)"
                    )));
                }
                let key = (v.min(w), v.max(w));
                match edge_index.get(&key) {
                    None => {
                        edge_index.insert(key, edges.len());
                        edges.push(Edge {
                            a: key.0,
                            b: key.1,
                            faces: [usize::MAX; 2],
                        });
                    }
                    Some(_) => {}
                }
                let e = edge_index[&key];
                let slot = if v < w { 0 } else { 1 };
                edges[e].faces[slot] = f;
            }
        }
        for e in &edges {
            if e.faces.contains(&usize::MAX) {
                return Err(MeshError::NotClosed(format!(
                    "edge ({}, {}) has one incident face",
                    e.a, e.b
                )));
            }
        }
        let topo = Topology {
            vertex_count,
            faces,
            edges,
            edge_index,
            half_edges,
        };
        for v in 0..vertex_count {
            let incident = topo.faces.iter().filter(|f| f.contains(&v)).count();
            if incident == 0 {
                return Err(MeshError::Degenerate(format!("vertex {v} is unused")));
            }
            if topo.vertex_star(v).len() != incident {
                return Err(MeshError::NotClosed(format!(
                    "vertex {v} has a disconnected link"
                )));
            }
        }
        let chi = vertex_count as i64 - topo.edges.len() as i64 + topo.faces.len() as i64;
        if chi != 2 {
            return Err(MeshError::NotClosed(format!(
                "Euler characteristic is {chi}, expected 2"
            )));
        }
        Ok(topo)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    /// Face and corner index of the half-edge `from → to`.
    pub fn half_edge(&self, from: usize, to: usize) -> Option<(usize, usize)> {
        self.half_edges.get(&(from, to)).copied()
    }

    /// Successor and predecessor of corner `i` in face `f`.
    pub fn corner_neighbors(&self, f: usize, i: usize) -> (usize, usize) {
        let face = &self.faces[f];
        let k = face.len();
        (face[(i + 1) % k], face[(i + k - 1) % k])
    }

    /// Corners `(face, corner)` around `v` in counterclockwise order (seen
    /// from outside), starting from the lowest-index incident face.
    pub fn vertex_star(&self, v: usize) -> Vec<(usize, usize)> {
        let Some(start) = self
            .faces
            .iter()
            .enumerate()
            .find_map(|(f, face)| face.iter().position(|&w| w == v).map(|i| (f, i)))
        else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut cur = start;
        loop {
            let (_, prev) = self.corner_neighbors(cur.0, cur.1);
            // The next face counterclockwise holds the half-edge v → prev.
            match self.half_edge(v, prev) {
                Some(next) if next != start => {
                    if out.len() > self.faces.len() {
                        break;
                    }
                    out.push(next);
                    cur = next;
                }
                _ => break,
            }
        }
        out
    }

    /// Undirected vertex neighbors in counterclockwise order around `v`.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.vertex_star(v)
            .into_iter()
            .map(|(f, i)| self.corner_neighbors(f, i).0)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Polyhedron {
    vertices: Vec<Vec3>,
    topology: Topology,
    diameter: f64,
    coplanar_edges: Vec<usize>,
}

impl Polyhedron {
    /// Validates a mesh whose faces are already oriented counterclockwise as
    /// seen from outside. Coordinates are kept as given.
    pub fn new(vertices: Vec<Vec3>, faces: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        if vertices.len() < 4 {
            return Err(MeshError::Degenerate("fewer than 4 vertices".into()));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(MeshError::Degenerate(format!("vertex {i} is not finite")));
        }
        let topology = Topology::new(vertices.len(), faces)?;
        let diameter = bbox_diameter(&vertices);
        if diameter <= 0.0 {
            return Err(MeshError::Degenerate("all vertices coincide".into()));
        }
        let mut p = Polyhedron {
            vertices,
            topology,
            diameter,
            coplanar_edges: Vec::new(),
        };
        p.validate_geometry()?;
        Ok(p)
    }

    /// Ingestion path: normalizes to unit bounding-box diameter centred on the
    /// origin, orients every face outward, then validates.
    pub fn from_raw(vertices: Vec<Vec3>, mut faces: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        if vertices.is_empty() {
            return Err(MeshError::Degenerate("no vertices".into()));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(MeshError::Degenerate(format!("vertex {i} is not finite")));
        }
        let (lo, hi) = bbox(&vertices);
        let diameter = (hi - lo).norm();
        if diameter <= 0.0 {
            return Err(MeshError::Degenerate("all vertices coincide".into()));
        }
        let center = (lo + hi) * 0.5;
        let vertices: Vec<Vec3> = vertices.iter().map(|v| (*v - center) / diameter).collect();
        let centroid = vertices.iter().fold(Vec3::ZERO, |a, v| a + *v) / vertices.len() as f64;
        for (f, face) in faces.iter_mut().enumerate() {
            if face.iter().any(|&i| i >= vertices.len()) {
                return Err(MeshError::Degenerate(format!(
                    "face {f} references a missing vertex"
                )));
            }
            let pts: Vec<Vec3> = face.iter().map(|&i| vertices[i]).collect();
            let n = newell_normal(&pts);
            let fc = pts.iter().fold(Vec3::ZERO, |a, v| a + *v) / pts.len() as f64;
            if n.dot(fc - centroid) < 0.0 {
                face.reverse();
            }
        }
        Polyhedron::new(vertices, faces)
    }

    fn validate_geometry(&mut self) -> Result<(), MeshError> {
        let tol = eps() * self.diameter;
        let angle_tol = eps();
        let mut normals = Vec::with_capacity(self.faces().len());
        for (f, face) in self.faces().iter().enumerate() {
            let pts: Vec<Vec3> = face.iter().map(|&i| self.vertices[i]).collect();
            let Some(n) = newell_normal(&pts).normalized() else {
                return Err(MeshError::Degenerate(format!("face {f} has zero area")));
            };
            let c = pts.iter().fold(Vec3::ZERO, |a, v| a + *v) / pts.len() as f64;
            if pts.iter().any(|p| (*p - c).dot(n).abs() > tol) {
                return Err(MeshError::NonPlanarFace(f));
            }
            let k = pts.len();
            for i in 0..k {
                let (prev, cur, next) = (pts[(i + k - 1) % k], pts[i], pts[(i + 1) % k]);
                let turn = (cur - prev).cross(next - cur).dot(n);
                let corner = corner_angle(cur, next, prev);
                if turn <= 0.0 || corner >= std::f64::consts::PI - angle_tol {
                    return Err(MeshError::NotConvex(format!(
                        "face {f} has a reflex or flat corner at vertex {}",
                        face[i]
                    )));
                }
            }
            for (v, p) in self.vertices.iter().enumerate() {
                if (*p - c).dot(n) > tol {
                    return Err(MeshError::NotConvex(format!(
                        "vertex {v} lies outside the plane of face {f}"
                    )));
                }
            }
            normals.push(n);
        }
        for v in 0..self.vertices.len() {
            let cone = self.cone_angle(v);
            if cone >= TAU - angle_tol {
                return Err(MeshError::NotConvex(format!(
                    "vertex {v} is not an extreme point (cone angle {cone})"
                )));
            }
        }
        self.coplanar_edges = self
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| normals[e.faces[0]].dot(normals[e.faces[1]]) > 1.0 - angle_tol)
            .map(|(i, _)| i)
            .collect();
        for &e in &self.coplanar_edges {
            let edge = self.edges()[e];
            log::warn!("edge ({}, {}) joins coplanar faces", edge.a, edge.b);
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Vec3 {
        self.vertices[v]
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        self.topology.faces()
    }

    pub fn edges(&self) -> &[Edge] {
        self.topology.edges()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Edges whose two faces are coplanar; accepted, not merged.
    pub fn coplanar_edges(&self) -> &[usize] {
        &self.coplanar_edges
    }

    /// Vector from `a` to `b` of edge `e`.
    pub fn edge_vector(&self, e: usize) -> Vec3 {
        let edge = self.edges()[e];
        self.vertices[edge.b] - self.vertices[edge.a]
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        self.edge_vector(e).norm()
    }

    /// Angle of face `f` at its corner `i`.
    pub fn face_corner_angle(&self, f: usize, i: usize) -> f64 {
        let (next, prev) = self.topology.corner_neighbors(f, i);
        let v = self.faces()[f][i];
        corner_angle(self.vertices[v], self.vertices[next], self.vertices[prev])
    }

    /// Outward unit normal of face `f`.
    pub fn face_normal(&self, f: usize) -> Vec3 {
        let pts: Vec<Vec3> = self.faces()[f].iter().map(|&i| self.vertices[i]).collect();
        newell_normal(&pts).normalized().unwrap_or(Vec3::ZERO)
    }

    pub fn face_area(&self, f: usize) -> f64 {
        let pts: Vec<Vec3> = self.faces()[f].iter().map(|&i| self.vertices[i]).collect();
        0.5 * newell_normal(&pts).norm()
    }

    /// Total angle around vertex `v`.
    pub fn cone_angle(&self, v: usize) -> f64 {
        self.topology
            .vertex_star(v)
            .into_iter()
            .map(|(f, i)| self.face_corner_angle(f, i))
            .sum()
    }

    /// Intrinsic angle at `a` swept counterclockwise (seen from outside) from
    /// edge `ab` to edge `ac`.
    pub fn intrinsic_angle(
        &self,
        a: usize,
        b: usize,
        c: usize,
    ) -> Result<IntrinsicAngle, MeshError> {
        let from_edge = self
            .topology
            .edge_between(a, b)
            .ok_or(MeshError::NotAnEdge(a, b))?;
        let to_edge = self
            .topology
            .edge_between(a, c)
            .ok_or(MeshError::NotAnEdge(a, c))?;
        let mut value = 0.0;
        if b != c {
            // Half-edge a → b lives in the face whose corner at a starts at ab.
            let (mut f, mut i) = self
                .topology
                .half_edge(a, b)
                .ok_or(MeshError::NotAnEdge(a, b))?;
            for _ in 0..=self.face_count() {
                value += self.face_corner_angle(f, i);
                let (_, prev) = self.topology.corner_neighbors(f, i);
                if prev == c {
                    break;
                }
                (f, i) = self
                    .topology
                    .half_edge(a, prev)
                    .ok_or(MeshError::NotAnEdge(a, prev))?;
            }
        }
        Ok(IntrinsicAngle {
            at: a,
            from_edge,
            to_edge,
            value,
        })
    }

    /// Checks `∡bac + ∡cab < 2π` for every vertex and every pair of incident
    /// edges.
    pub fn check_alexandrov(&self) -> Verdict {
        let mut verdict = Verdict::net();
        let mut ok = true;
        'outer: for a in 0..self.vertex_count() {
            let nbrs = self.topology.neighbors(a);
            for (i, &b) in nbrs.iter().enumerate() {
                for &c in &nbrs[i + 1..] {
                    let s = self
                        .intrinsic_angle(a, b, c)
                        .map(|x| x.value)
                        .unwrap_or(f64::NAN)
                        + self
                            .intrinsic_angle(a, c, b)
                            .map(|x| x.value)
                            .unwrap_or(f64::NAN);
                    if !(s < TAU) {
                        verdict
                            .failures
                            .push(format!("angle sum {s} at vertex {a} between {b} and {c}"));
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        verdict.checks.insert("alexandrov".into(), ok);
        if !ok {
            verdict.status = Status::PreconditionFailure;
        }
        verdict
    }

    pub fn edge_graph(&self) -> EdgeGraph {
        EdgeGraph::new(
            self.vertex_count(),
            self.edges().iter().map(|e| (e.a, e.b)).collect(),
        )
    }

    /// ASCII OFF with 17 significant digits per coordinate.
    pub fn to_off(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "OFF");
        let _ = writeln!(
            s,
            "{} {} {}",
            self.vertex_count(),
            self.face_count(),
            self.edge_count()
        );
        for v in &self.vertices {
            let _ = writeln!(s, "{:.16e} {:.16e} {:.16e}", v.x, v.y, v.z);
        }
        for f in self.faces() {
            let _ = write!(s, "{}", f.len());
            for i in f {
                let _ = write!(s, " {i}");
            }
            s.push('\n');
        }
        s
    }

    /// Same combinatorics with new vertex positions, revalidated.
    pub fn with_vertices(&self, vertices: Vec<Vec3>) -> Result<Polyhedron, MeshError> {
        Polyhedron::new(vertices, self.faces().to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntrinsicAngle {
    pub at: usize,
    pub from_edge: usize,
    pub to_edge: usize,
    /// Radians, in `[0, 2π)`.
    pub value: f64,
}

/// Undirected multigraph over `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl EdgeGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        EdgeGraph {
            vertex_count,
            edges,
        }
    }

    /// Neighbor lists, one entry per incident edge.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            if a != b {
                adj[b].push(a);
            }
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        connected_with(self.vertex_count, self.edges.iter().copied())
    }
}

/// Whether the graph on `n` vertices with the given edges is connected.
pub(crate) fn connected_with(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    if n == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = n;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

/// Unnormalized face normal by Newell's method; its length is twice the area.
pub fn newell_normal(pts: &[Vec3]) -> Vec3 {
    let mut n = Vec3::ZERO;
    let k = pts.len();
    for i in 0..k {
        let (a, b) = (pts[i], pts[(i + 1) % k]);
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    n
}

/// Unsigned angle at `at` between rays to `p` and `q`.
pub fn corner_angle(at: Vec3, p: Vec3, q: Vec3) -> f64 {
    let (u, w) = (p - at, q - at);
    u.cross(w).norm().atan2(u.dot(w))
}

fn bbox(vertices: &[Vec3]) -> (Vec3, Vec3) {
    let mut lo = Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    for v in vertices {
        lo = Vec3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
        hi = Vec3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
    }
    (lo, hi)
}

fn bbox_diameter(vertices: &[Vec3]) -> f64 {
    let (lo, hi) = bbox(vertices);
    (hi - lo).norm()
}

/// Parses ASCII OFF and validates the result as a convex polyhedron.
pub fn load_off<R: Read>(mut reader: R) -> Result<Polyhedron, MeshError> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| MeshError::Io(e.to_string()))?;
    parse_off(&text)
}

pub fn parse_off(text: &str) -> Result<Polyhedron, MeshError> {
    let (vertices, faces) = parse_off_raw(text)?;
    Polyhedron::from_raw(vertices, faces)
}

/// Tokenizes OFF into raw vertices and faces without any geometric checks.
pub fn parse_off_raw(text: &str) -> Result<(Vec<Vec3>, Vec<Vec<usize>>), MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, message: &str| MeshError::Parse {
        line,
        message: message.to_string(),
    };
    let last_line = text.lines().count().max(1);

    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let mut header_tokens = header.split_whitespace();
    if header_tokens.next() != Some("OFF") {
        return Err(err(hline, "expected OFF header"));
    }
    let rest: Vec<&str> = header_tokens.collect();
    let (cline, counts) = if rest.is_empty() {
        let (n, l) = lines
            .next()
            .ok_or_else(|| err(last_line, "missing counts line"))?;
        (n, l.split_whitespace().collect::<Vec<_>>())
    } else {
        (hline, rest)
    };
    if counts.len() < 2 {
        return Err(err(cline, "expected `V F E` counts"));
    }
    let parse_count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| err(cline, &format!("invalid count `{s}`")))
    };
    let nv = parse_count(counts[0])?;
    let nf = parse_count(counts[1])?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (n, l) = lines
            .next()
            .ok_or_else(|| err(last_line, "unexpected end of file in vertex list"))?;
        let coords: Vec<f64> = l
            .split_whitespace()
            .take(3)
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| err(n, &format!("invalid coordinate `{t}`")))
            })
            .collect::<Result<_, _>>()?;
        if coords.len() < 3 {
            return Err(err(n, "vertex needs 3 coordinates"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(err(n, "non-finite coordinate"));
        }
        vertices.push(Vec3::new(coords[0], coords[1], coords[2]));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (n, l) = lines
            .next()
            .ok_or_else(|| err(last_line, "unexpected end of file in face list"))?;
        let mut toks = l.split_whitespace();
        let k: usize = toks
            .next()
            .unwrap_or("")
            .parse()
            .map_err(|_| err(n, "invalid face corner count"))?;
        if k < 3 {
            return Err(err(n, "face needs at least 3 corners"));
        }
        let idx: Vec<usize> = toks
            .take(k)
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| err(n, &format!("invalid vertex index `{t}`")))
            })
            .collect::<Result<_, _>>()?;
        if idx.len() != k {
            return Err(err(n, "face has fewer indices than declared"));
        }
        if let Some(bad) = idx.iter().find(|&&i| i >= nv) {
            return Err(err(n, &format!("vertex index {bad} out of range")));
        }
        faces.push(idx);
    }
    Ok((vertices, faces))
}
