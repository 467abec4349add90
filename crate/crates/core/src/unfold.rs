//! Cutting a polyhedron along a spanning tree and developing the cut surface
//! into the plane.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{signed_area, Vec2, Vec3};
use crate::mesh::{newell_normal, MeshError, Polyhedron, Topology};
use crate::tree::{SpanningTree, TreeError, TreeJson, VertexOrder};

/// Largest disagreement tolerated between the two placements of a fold edge.
pub const COMPATIBILITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnfoldError {
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("fold edge placements disagree by {mismatch} at face {face}")]
    CompatibilityFailure { face: usize, mismatch: f64 },
    #[error("malformed layout: {0}")]
    MalformedLayout(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// One side of a cut edge, traversed with the surface on its left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryHalfEdge {
    pub from: usize,
    pub to: usize,
    pub face: usize,
    /// Corner of `from` within `face`.
    pub corner: usize,
    pub edge: usize,
}

/// The surface cut open along a spanning tree.
#[derive(Debug, Clone)]
pub struct CutSurface {
    topology: Topology,
    tree: SpanningTree,
    cut: Vec<bool>,
    boundary: Vec<BoundaryHalfEdge>,
    dual: Vec<usize>,
    start_vertex: usize,
}

pub fn cut(q: &Polyhedron, t: &SpanningTree) -> Result<CutSurface, UnfoldError> {
    let start = VertexOrder::new(q).y_min;
    CutSurface::from_topology(q.topology().clone(), t.clone(), start)
}

impl CutSurface {
    /// Builds the cut from combinatorics alone. `start_vertex` picks where the
    /// boundary traversal begins (the first side of a cut edge leaving it).
    pub fn from_topology(
        topology: Topology,
        tree: SpanningTree,
        start_vertex: usize,
    ) -> Result<Self, UnfoldError> {
        let n = topology.vertex_count();
        if tree.vertex_count() != n || tree.edges.len() + 1 != n {
            return Err(UnfoldError::NotSpanningTree(format!(
                "{} tree edges for {n} vertices",
                tree.edges.len()
            )));
        }
        let mut cut = vec![false; topology.edges().len()];
        for &e in &tree.edges {
            *cut.get_mut(e)
                .ok_or_else(|| UnfoldError::NotSpanningTree(format!("edge {e} out of range")))? =
                true;
        }
        // Fold edges must connect all faces.
        let folds = topology
            .edges()
            .iter()
            .zip(&cut)
            .filter(|(_, &c)| !c)
            .map(|(e, _)| (e.faces[0], e.faces[1]));
        if !crate::mesh::connected_with(topology.faces().len(), folds) {
            return Err(UnfoldError::NotSpanningTree(
                "fold edges leave the face graph disconnected".into(),
            ));
        }

        let first = topology
            .faces()
            .iter()
            .enumerate()
            .flat_map(|(f, face)| (0..face.len()).map(move |i| (f, i)))
            .find(|&(f, i)| {
                let (next, _) = topology.corner_neighbors(f, i);
                let from = topology.faces()[f][i];
                from == start_vertex && topology.edge_between(from, next).is_some_and(|e| cut[e])
            })
            .ok_or_else(|| {
                UnfoldError::NotSpanningTree(format!("start vertex {start_vertex} has no cut edge"))
            })?;

        let make = |f: usize, i: usize| {
            let from = topology.faces()[f][i];
            let (to, _) = topology.corner_neighbors(f, i);
            BoundaryHalfEdge {
                from,
                to,
                face: f,
                corner: i,
                edge: topology.edge_between(from, to).expect("face edge"),
            }
        };
        let expected = 2 * (n - 1);
        let mut boundary = vec![make(first.0, first.1)];
        loop {
            let last = *boundary.last().expect("non-empty");
            // Rotate about `last.to` through fold edges until the next cut edge.
            let (mut f, mut i) = (
                last.face,
                (last.corner + 1) % topology.faces()[last.face].len(),
            );
            let mut guard = 0;
            loop {
                let h = make(f, i);
                if cut[h.edge] {
                    break;
                }
                (f, i) = topology.half_edge(h.to, h.from).expect("closed surface");
                i = (i + 1) % topology.faces()[f].len();
                guard += 1;
                if guard > topology.faces().len() {
                    return Err(UnfoldError::NotSpanningTree(
                        "boundary walk does not terminate".into(),
                    ));
                }
            }
            if (f, i) == first {
                break;
            }
            boundary.push(make(f, i));
            if boundary.len() > expected {
                break;
            }
        }
        if boundary.len() != expected {
            return Err(UnfoldError::NotSpanningTree(format!(
                "boundary has {} edges, expected {expected}",
                boundary.len()
            )));
        }
        let index: HashMap<(usize, usize), usize> = boundary
            .iter()
            .enumerate()
            .map(|(k, h)| ((h.from, h.to), k))
            .collect();
        let dual = boundary
            .iter()
            .map(|h| {
                index.get(&(h.to, h.from)).copied().ok_or_else(|| {
                    UnfoldError::NotSpanningTree("cut edge seen from one side only".into())
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CutSurface {
            topology,
            tree,
            cut,
            boundary,
            dual,
            start_vertex,
        })
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn is_cut(&self, e: usize) -> bool {
        self.cut[e]
    }

    /// Counterclockwise boundary cycle starting at a copy of the start vertex.
    pub fn boundary(&self) -> &[BoundaryHalfEdge] {
        &self.boundary
    }

    /// Index of the other side of the same cut edge.
    pub fn dual(&self, k: usize) -> usize {
        self.dual[k]
    }

    pub fn start_vertex(&self) -> usize {
        self.start_vertex
    }

    pub fn fold_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cut.len()).filter(|&e| !self.cut[e])
    }
}

/// Planar rigid motion `p ↦ R(angle)·p + translation`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rigid2 {
    pub angle: f64,
    pub translation: Vec2,
}

impl Rigid2 {
    pub fn apply(&self, p: Vec2) -> Vec2 {
        p.rotated(self.angle) + self.translation
    }
}

/// Per-face placement of the developed surface.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarLayout {
    /// Image of each face corner, in the face's vertex order.
    pub corners: Vec<Vec<Vec2>>,
    /// Rigid motion from each face's intrinsic frame into the plane.
    pub placements: Vec<Rigid2>,
    pub root_face: usize,
    /// Image of the start vertex at the beginning of the boundary.
    pub y_prime: Vec2,
}

impl PlanarLayout {
    pub fn face_polygon(&self, f: usize) -> &[Vec2] {
        &self.corners[f]
    }

    /// Sum of signed face areas.
    pub fn area(&self) -> f64 {
        self.corners.iter().map(|c| signed_area(c)).sum()
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = -lo;
        for p in self.corners.iter().flatten() {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    /// Largest disagreement between the two faces of any fold edge.
    pub fn fold_mismatch(&self, s: &CutSurface) -> f64 {
        let topo = s.topology();
        s.fold_edges()
            .map(|e| {
                let edge = topo.edges()[e];
                let pos = |f: usize, v: usize| {
                    let i = topo.faces()[f]
                        .iter()
                        .position(|&w| w == v)
                        .expect("vertex on face");
                    self.corners[f][i]
                };
                let [f0, f1] = edge.faces;
                pos(f0, edge.a)
                    .distance(pos(f1, edge.a))
                    .max(pos(f0, edge.b).distance(pos(f1, edge.b)))
            })
            .fold(0.0, f64::max)
    }

    /// Worst relative deviation of placed edge lengths and corner angles from
    /// the 3D faces.
    pub fn isometry_error(&self, q: &Polyhedron) -> f64 {
        let mut worst: f64 = 0.0;
        for (f, face) in q.faces().iter().enumerate() {
            let k = face.len();
            for i in 0..k {
                let (a, b) = (q.vertex(face[i]), q.vertex(face[(i + 1) % k]));
                let (pa, pb) = (self.corners[f][i], self.corners[f][(i + 1) % k]);
                let len3 = (b - a).norm();
                worst = worst.max(((pb - pa).norm() - len3).abs() / len3);
                let angle3 = q.face_corner_angle(f, i);
                let prev = self.corners[f][(i + k - 1) % k];
                let (u, w) = (pb - pa, prev - pa);
                let angle2 = u.cross(w).atan2(u.dot(w));
                worst = worst.max((angle2 - angle3).abs() / angle3);
            }
        }
        worst
    }
}

/// Intrinsic coordinates of a planar polygon: corner 0 at the origin, corner
/// 1 on the positive first axis, counterclockwise as seen along the normal.
fn intrinsic_coords(pts: &[Vec3]) -> Vec<Vec2> {
    let n = newell_normal(pts)
        .normalized()
        .unwrap_or(Vec3::new(0.0, 0.0, 1.0));
    let e1 = (pts[1] - pts[0])
        .normalized()
        .unwrap_or(Vec3::new(1.0, 0.0, 0.0));
    let e2 = n.cross(e1);
    pts.iter()
        .map(|p| {
            let d = *p - pts[0];
            Vec2::new(d.dot(e1), d.dot(e2))
        })
        .collect()
}

/// Fold adjacency: for face `f`, entries `(corner i of f, g, corner j of g)`
/// where half-edge `f[i] → f[i+1]` is glued to `g[j] → g[j+1]`.
type FoldAdjacency = Vec<Vec<(usize, usize, usize)>>;

/// Breadth-first development of `faces` over the fold adjacency.
///
/// The root face is posed so that its corner `anchor` maps to the origin and
/// the edge leaving it points along `anchor_direction`.
fn develop_faces(
    faces: &[Vec<Vec3>],
    folds: &FoldAdjacency,
    root: usize,
    anchor: usize,
    anchor_direction: Vec2,
) -> Result<(Vec<Vec<Vec2>>, Vec<Rigid2>), UnfoldError> {
    let intrinsic: Vec<Vec<Vec2>> = faces.iter().map(|f| intrinsic_coords(f)).collect();
    let mut placements: Vec<Option<Rigid2>> = vec![None; faces.len()];
    let mut corners: Vec<Vec<Vec2>> = vec![Vec::new(); faces.len()];

    let root_in = &intrinsic[root];
    let k = root_in.len();
    let w = root_in[(anchor + 1) % k] - root_in[anchor];
    let angle = anchor_direction.y.atan2(anchor_direction.x) - w.y.atan2(w.x);
    let translation = -root_in[anchor].rotated(angle);
    let rigid = Rigid2 { angle, translation };
    placements[root] = Some(rigid);
    corners[root] = root_in.iter().map(|p| rigid.apply(*p)).collect();

    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        for &(i, g, j) in &folds[f] {
            if placements[g].is_some() {
                continue;
            }
            let kf = corners[f].len();
            let (pu, pv) = (corners[f][i], corners[f][(i + 1) % kf]);
            let ig = &intrinsic[g];
            let kg = ig.len();
            // g traverses the shared edge as v → u.
            let (qv, qu) = (ig[j], ig[(j + 1) % kg]);
            let dq = qv - qu;
            let dp = pv - pu;
            let angle = dp.y.atan2(dp.x) - dq.y.atan2(dq.x);
            let translation = pu - qu.rotated(angle);
            let rigid = Rigid2 { angle, translation };
            let mismatch = rigid.apply(qv).distance(pv);
            if !(mismatch <= COMPATIBILITY_TOLERANCE) {
                return Err(UnfoldError::CompatibilityFailure { face: g, mismatch });
            }
            placements[g] = Some(rigid);
            corners[g] = ig.iter().map(|p| rigid.apply(*p)).collect();
            queue.push_back(g);
        }
    }
    if placements.iter().any(Option::is_none) {
        return Err(UnfoldError::NotSpanningTree(
            "fold edges do not reach every face".into(),
        ));
    }
    Ok((
        corners,
        placements.into_iter().map(|p| p.expect("placed")).collect(),
    ))
}

fn fold_adjacency(q: &Polyhedron, s: &CutSurface) -> FoldAdjacency {
    let topo = q.topology();
    let mut folds: FoldAdjacency = vec![Vec::new(); q.face_count()];
    for (f, face) in topo.faces().iter().enumerate() {
        for i in 0..face.len() {
            let (next, _) = topo.corner_neighbors(f, i);
            let e = topo.edge_between(face[i], next).expect("face edge");
            if s.is_cut(e) {
                continue;
            }
            let (g, j) = topo.half_edge(next, face[i]).expect("closed surface");
            folds[f].push((i, g, j));
        }
    }
    folds
}

/// Canonical development: root face is the lowest-index face at the tree
/// root, anchored at the root's corner with the edge leaving it mapped to
/// `(dx, √(dy² + dz²))`.
pub fn develop(q: &Polyhedron, s: &CutSurface) -> Result<PlanarLayout, UnfoldError> {
    let root_vertex = s.tree().root;
    let (root_face, anchor) = s
        .topology()
        .faces()
        .iter()
        .enumerate()
        .find_map(|(f, face)| face.iter().position(|&v| v == root_vertex).map(|i| (f, i)))
        .ok_or_else(|| UnfoldError::NotSpanningTree("root vertex is on no face".into()))?;
    develop_from(q, s, root_face, anchor)
}

/// Development rooted at `root_face`, anchored at its corner `anchor`.
pub fn develop_from(
    q: &Polyhedron,
    s: &CutSurface,
    root_face: usize,
    anchor: usize,
) -> Result<PlanarLayout, UnfoldError> {
    let faces3d: Vec<Vec<Vec3>> = q
        .faces()
        .iter()
        .map(|f| f.iter().map(|&v| q.vertex(v)).collect())
        .collect();
    let face = &q.faces()[root_face];
    let d = q.vertex(face[(anchor + 1) % face.len()]) - q.vertex(face[anchor]);
    let direction = Vec2::new(d.x, d.yz_norm());
    let (corners, placements) = develop_faces(
        &faces3d,
        &fold_adjacency(q, s),
        root_face,
        anchor,
        direction,
    )?;
    let first = s.boundary()[0];
    let y_prime = corners[first.face][first.corner];
    Ok(PlanarLayout {
        corners,
        placements,
        root_face,
        y_prime,
    })
}

/// A boundary segment of the developed surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySegment {
    pub edge: usize,
    pub face: usize,
    pub from: usize,
    pub to: usize,
    /// Index of the segment on the other side of the same cut.
    pub dual: usize,
}

/// Closed polyline: segment `i` runs from `points[i]` to `points[i + 1]`
/// (cyclically).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub points: Vec<Vec2>,
    pub segments: Vec<BoundarySegment>,
}

impl BoundaryCurve {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn segment(&self, i: usize) -> (Vec2, Vec2) {
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.points)
    }

    pub fn total_length(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.segment(i);
                a.distance(b)
            })
            .sum()
    }

    /// A curve from bare points, without cut annotations.
    pub fn from_points(points: Vec<Vec2>) -> Self {
        let n = points.len();
        let segments = (0..n)
            .map(|i| BoundarySegment {
                edge: usize::MAX,
                face: usize::MAX,
                from: i,
                to: (i + 1) % n,
                dual: usize::MAX,
            })
            .collect();
        BoundaryCurve { points, segments }
    }
}

pub fn boundary_curve(layout: &PlanarLayout, s: &CutSurface) -> BoundaryCurve {
    let points = s
        .boundary()
        .iter()
        .map(|h| layout.corners[h.face][h.corner])
        .collect();
    let segments = s
        .boundary()
        .iter()
        .enumerate()
        .map(|(k, h)| BoundarySegment {
            edge: h.edge,
            face: h.face,
            from: h.from,
            to: h.to,
            dual: s.dual(k),
        })
        .collect();
    BoundaryCurve { points, segments }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutMeta {
    pub lambda: f64,
    pub theta_max: f64,
    pub seed: u64,
    pub vertex_count: usize,
    pub start_vertex: usize,
    pub root_face: usize,
}

/// On-disk form of a layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub faces: Vec<Vec<[f64; 2]>>,
    pub face_vertices: Vec<Vec<usize>>,
    /// `[angle, tx, ty]` per face.
    pub placements: Vec<[f64; 3]>,
    pub tree: TreeJson,
    pub boundary: Vec<[f64; 2]>,
    pub meta: LayoutMeta,
}

pub fn layout_to_json(
    layout: &PlanarLayout,
    s: &CutSurface,
    lambda: f64,
    theta_max: f64,
    seed: u64,
) -> LayoutJson {
    let b = boundary_curve(layout, s);
    LayoutJson {
        faces: layout
            .corners
            .iter()
            .map(|c| c.iter().map(|p| [p.x, p.y]).collect())
            .collect(),
        face_vertices: s.topology().faces().to_vec(),
        placements: layout
            .placements
            .iter()
            .map(|r| [r.angle, r.translation.x, r.translation.y])
            .collect(),
        tree: s.tree().to_json(),
        boundary: b.points.iter().map(|p| [p.x, p.y]).collect(),
        meta: LayoutMeta {
            lambda,
            theta_max,
            seed,
            vertex_count: s.topology().vertex_count(),
            start_vertex: s.start_vertex(),
            root_face: layout.root_face,
        },
    }
}

/// JSON text of a layout. `serde_json` prints the shortest decimal that
/// round-trips each `f64`, so re-import is exact.
pub fn export_json(
    layout: &PlanarLayout,
    s: &CutSurface,
    lambda: f64,
    theta_max: f64,
    seed: u64,
) -> String {
    let mut text =
        serde_json::to_string_pretty(&layout_to_json(layout, s, lambda, theta_max, seed))
            .expect("layout serializes");
    text.push('\n');
    text
}

/// Rebuilds the combinatorial cut and the planar layout from JSON.
pub fn import_json(text: &str) -> Result<(PlanarLayout, CutSurface, LayoutMeta), UnfoldError> {
    let j: LayoutJson =
        serde_json::from_str(text).map_err(|e| UnfoldError::MalformedLayout(e.to_string()))?;
    layout_from_json(j)
}

pub fn layout_from_json(
    j: LayoutJson,
) -> Result<(PlanarLayout, CutSurface, LayoutMeta), UnfoldError> {
    if j.faces.len() != j.face_vertices.len() || j.placements.len() != j.faces.len() {
        return Err(UnfoldError::MalformedLayout(
            "face, vertex and placement lists differ in length".into(),
        ));
    }
    for (f, (c, v)) in j.faces.iter().zip(&j.face_vertices).enumerate() {
        if c.len() != v.len() {
            return Err(UnfoldError::MalformedLayout(format!(
                "face {f} has {} points for {} vertices",
                c.len(),
                v.len()
            )));
        }
    }
    let is_finite = |p: &[f64]| p.iter().all(|x| x.is_finite());
    if !j.faces.iter().flatten().all(|p| is_finite(p)) || !j.placements.iter().all(|p| is_finite(p))
    {
        return Err(UnfoldError::MalformedLayout("non-finite coordinate".into()));
    }
    let topology = Topology::new(j.meta.vertex_count, j.face_vertices.clone())?;
    if j.meta.root_face >= j.faces.len() {
        return Err(UnfoldError::MalformedLayout(
            "root face out of range".into(),
        ));
    }
    let tree = SpanningTree::from_parent_pairs(&topology, &j.tree.edges, j.tree.root)?;
    let surface = CutSurface::from_topology(topology, tree, j.meta.start_vertex)?;
    let corners: Vec<Vec<Vec2>> = j
        .faces
        .iter()
        .map(|f| f.iter().map(|p| Vec2::new(p[0], p[1])).collect())
        .collect();
    let first = surface.boundary()[0];
    let y_prime = corners[first.face][first.corner];
    let layout = PlanarLayout {
        corners,
        placements: j
            .placements
            .iter()
            .map(|p| Rigid2 {
                angle: p[0],
                translation: Vec2::new(p[1], p[2]),
            })
            .collect(),
        root_face: j.meta.root_face,
        y_prime,
    };
    Ok((layout, surface, j.meta))
}

/// SVG 1.1 drawing: faces, fold edges (light), cut edges (dark) and optional
/// witness points. The plane's y axis points up, so SVG y is negated.
pub fn export_svg(layout: &PlanarLayout, s: &CutSurface, witnesses: &[Vec2]) -> String {
    let (lo, hi) = layout.bounding_box();
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let (mx, my) = (0.05 * w, 0.05 * h);
    let view = (lo.x - mx, -hi.y - my, w + 2.0 * mx, h + 2.0 * my);
    let pt = |p: Vec2| format!("{},{}", p.x, -p.y);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" preserveAspectRatio="none">"#,
        view.0, view.1, view.2, view.3
    );
    let _ = writeln!(
        out,
        "<style>.face{{fill:#f4e7c5;stroke:none}}.fold{{stroke:#b0b0b0;stroke-width:1;vector-effect:non-scaling-stroke}}\
         .cut{{stroke:#202020;stroke-width:2;vector-effect:non-scaling-stroke}}.witness{{fill:#d00000}}</style>"
    );
    for (f, poly) in layout.corners.iter().enumerate() {
        let pts: Vec<String> = poly.iter().map(|p| pt(*p)).collect();
        let _ = writeln!(
            out,
            r#"<polygon class="face" data-face="{f}" points="{}"/>"#,
            pts.join(" ")
        );
    }
    let topo = s.topology();
    for e in s.fold_edges() {
        let edge = topo.edges()[e];
        let (f, i) = topo.half_edge(edge.a, edge.b).expect("edge in face");
        let k = layout.corners[f].len();
        let (a, b) = (layout.corners[f][i], layout.corners[f][(i + 1) % k]);
        let _ = writeln!(
            out,
            r#"<line class="fold" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            a.x, -a.y, b.x, -b.y
        );
    }
    let b = boundary_curve(layout, s);
    for i in 0..b.len() {
        let (p, q) = b.segment(i);
        let _ = writeln!(
            out,
            r#"<line class="cut" data-edge="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            b.segments[i].edge, p.x, -p.y, q.x, -q.y
        );
    }
    let r = 0.01 * w.max(h);
    for p in witnesses {
        let _ = writeln!(
            out,
            r#"<circle class="witness" cx="{}" cy="{}" r="{r}"/>"#,
            p.x, -p.y
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Face-to-face map used when comparing two developments.
pub fn corner_map(layout: &PlanarLayout) -> BTreeMap<(usize, usize), Vec2> {
    layout
        .corners
        .iter()
        .enumerate()
        .flat_map(|(f, c)| c.iter().enumerate().map(move |(i, p)| ((f, i), *p)))
        .collect()
}
