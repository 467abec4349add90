//! Certification of planar layouts: boundary decomposition into monotone
//! runs, turn directions, self-intersection, winding-number injectivity and
//! the arm-lemma checks.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    eps, segments_intersect, vertex_centroid, winding_number, EndpointPolicy, Vec2,
};
use crate::transform::ARM_ANGLE_BOUND;
use crate::unfold::{
    boundary_curve, BoundaryCurve, CutSurface, PlanarLayout, COMPATIBILITY_TOLERANCE,
};

/// Default grid side for the winding-number sampler.
pub const WINDING_GRID: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Net,
    Overlap,
    PreconditionFailure,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Net => "Net",
            Status::Overlap => "Overlap",
            Status::PreconditionFailure => "PreconditionFailure",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Two boundary segments that touch or cross, and a point where they do.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub seg_a: usize,
    pub seg_b: usize,
    pub point: Vec2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub witnesses: Vec<Witness>,
    /// Named sub-checks and whether each passed.
    pub checks: BTreeMap<String, bool>,
    pub failures: Vec<String>,
}

impl Verdict {
    pub fn net() -> Self {
        Verdict {
            status: Status::Net,
            witnesses: Vec::new(),
            checks: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    pub fn is_net(&self) -> bool {
        self.status == Status::Net
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }

    fn record(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("segment {segment} is vertical")]
    VerticalSegment { segment: usize },
    #[error("curve never changes horizontal direction")]
    DirectionNeverChanges,
    #[error("curve has fewer than two segments")]
    TooShort,
    #[error("arms have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Turn {
    Ccw,
    Cw,
    Straight,
}

/// Maximal run of consecutive segments with the same horizontal direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub direction: Direction,
    pub start: usize,
    pub len: usize,
}

impl Run {
    pub fn end(&self) -> usize {
        self.start + self.len
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDecomposition {
    pub runs: Vec<Run>,
    /// `turns[i]` is the turn from the last segment of `runs[i]` into the
    /// first segment of `runs[i + 1]`.
    pub turns: Vec<Turn>,
}

impl BoundaryDecomposition {
    pub fn right_runs(&self) -> impl Iterator<Item = &Run> {
        self.runs.iter().filter(|r| r.direction == Direction::Right)
    }
}

fn segment_dir(a: Vec2, b: Vec2, segment: usize) -> Result<Direction, VerifyError> {
    let dx = b.x - a.x;
    if dx.abs() <= eps() * (b - a).norm().max(1.0) {
        Err(VerifyError::VerticalSegment { segment })
    } else if dx > 0.0 {
        Ok(Direction::Right)
    } else {
        Ok(Direction::Left)
    }
}

fn turn(a: Vec2, b: Vec2, c: Vec2) -> Turn {
    let x = (b - a).cross(c - b);
    let scale = (b - a).norm() * (c - b).norm();
    if x > eps() * scale {
        Turn::Ccw
    } else if x < -eps() * scale {
        Turn::Cw
    } else {
        Turn::Straight
    }
}

/// Splits a polyline into maximal left/right runs starting at `points[0]`.
/// With `closed`, the segment from the last point back to the first is
/// included; runs are not merged across the starting point.
pub fn decompose_polyline(
    points: &[Vec2],
    closed: bool,
) -> Result<BoundaryDecomposition, VerifyError> {
    let n = points.len();
    let m = if closed { n } else { n.saturating_sub(1) };
    if m < 2 {
        return Err(VerifyError::TooShort);
    }
    let seg = |i: usize| (points[i], points[(i + 1) % n]);
    let mut runs: Vec<Run> = Vec::new();
    for i in 0..m {
        let (a, b) = seg(i);
        let d = segment_dir(a, b, i)?;
        match runs.last_mut() {
            Some(r) if r.direction == d => r.len += 1,
            _ => runs.push(Run {
                direction: d,
                start: i,
                len: 1,
            }),
        }
    }
    if runs.len() < 2 {
        return Err(VerifyError::DirectionNeverChanges);
    }
    let turns = runs
        .windows(2)
        .map(|w| {
            let last = w[0].end() - 1;
            let (a, b) = seg(last);
            let (_, c) = seg(w[1].start);
            turn(a, b, c)
        })
        .collect();
    Ok(BoundaryDecomposition { runs, turns })
}

pub fn decompose_boundary(b: &BoundaryCurve) -> Result<BoundaryDecomposition, VerifyError> {
    decompose_polyline(&b.points, true)
}

/// Right-to-left junctions must turn counterclockwise and left-to-right
/// junctions clockwise. Only junctions interior to the traversal are
/// checked; the closing junction at the start vertex is not.
pub fn check_turn_directions(d: &BoundaryDecomposition) -> Verdict {
    let mut v = Verdict::net();
    let mut ok = true;
    for (i, t) in d.turns.iter().enumerate() {
        let want = match d.runs[i].direction {
            Direction::Right => Turn::Ccw,
            Direction::Left => Turn::Cw,
        };
        if *t != want {
            ok = false;
            v.failures.push(format!(
                "junction {i} at segment {} turns {t:?}, expected {want:?}",
                d.runs[i + 1].start
            ));
        }
    }
    v.record("turn_directions", ok);
    if !ok {
        v.status = Status::PreconditionFailure;
    }
    v
}

/// Point where segments `(p1, p2)` and `(q1, q2)` meet, or the closest point
/// on the second when they only come within ε. Also returns the parameter
/// along the second segment.
fn contact_point(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> (Vec2, f64) {
    let r = p2 - p1;
    let s = q2 - q1;
    let denom = r.cross(s);
    if denom.abs() > eps() * r.norm() * s.norm() {
        let u = (q1 - p1).cross(r) / denom;
        let t = (q1 - p1).cross(s) / denom;
        if (-1e-9..=1.0 + 1e-9).contains(&t) && (-1e-9..=1.0 + 1e-9).contains(&u) {
            let u = u.clamp(0.0, 1.0);
            return (q1 + s * u, u);
        }
    }
    // Closest approach is at an endpoint of one of the segments.
    let proj = |p: Vec2, a: Vec2, b: Vec2| {
        let ab = b - a;
        let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
        (a + ab * t, t)
    };
    let mut best = (f64::INFINITY, Vec2::ZERO, 0.0);
    for p in [p1, p2] {
        let (c, u) = proj(p, q1, q2);
        let d = c.distance(p);
        if d < best.0 {
            best = (d, c, u);
        }
    }
    for q in [q1, q2] {
        let (c, _) = proj(q, p1, p2);
        let d = c.distance(q);
        if d < best.0 {
            let u = if q == q1 { 0.0 } else { 1.0 };
            best = (d, q, u);
        }
    }
    (best.1, best.2)
}

/// All touching pairs of a polyline, ordered by traversal: the first witness
/// is the first point where the curve runs into an earlier part of itself.
pub fn polyline_self_intersections(points: &[Vec2], closed: bool) -> Vec<Witness> {
    let n = points.len();
    let m = if closed { n } else { n.saturating_sub(1) };
    let seg = |i: usize| (points[i], points[(i + 1) % n]);
    let mut hits: Vec<(usize, f64, Witness)> = Vec::new();
    for j in 0..m {
        let (q1, q2) = seg(j);
        for i in 0..j {
            let (p1, p2) = seg(i);
            let adjacent = j == i + 1 || (closed && i == 0 && j == m - 1);
            let policy = if adjacent {
                EndpointPolicy::ExcludeSharedEndpoint
            } else {
                EndpointPolicy::Closed
            };
            let touch = segments_intersect(p1, p2, q1, q2, policy).unwrap_or(true);
            if touch {
                let (point, u) = contact_point(p1, p2, q1, q2);
                hits.push((
                    j,
                    u,
                    Witness {
                        seg_a: i,
                        seg_b: j,
                        point,
                    },
                ));
            }
        }
    }
    hits.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.seg_a.cmp(&b.2.seg_a))
    });
    hits.into_iter().map(|h| h.2).collect()
}

pub fn check_self_intersection(b: &BoundaryCurve) -> Verdict {
    let mut v = Verdict::net();
    v.witnesses = polyline_self_intersections(&b.points, true);
    let ok = v.witnesses.is_empty();
    v.record("simple_boundary", ok);
    if !ok {
        let w = v.witnesses[0];
        v.failures.push(format!(
            "segments {} and {} meet at ({}, {})",
            w.seg_a, w.seg_b, w.point.x, w.point.y
        ));
        v.status = Status::Overlap;
    }
    v
}

/// Winding numbers at cell centres of a `grid × grid` sampling of the
/// bounding box plus `extra` points; each must be 0 or 1. Points within ε
/// of the curve are skipped.
pub fn winding_injectivity_check(b: &BoundaryCurve, grid: usize, extra: &[Vec2]) -> Verdict {
    let mut v = Verdict::net();
    let (mut lo, mut hi) = (
        Vec2::new(f64::INFINITY, f64::INFINITY),
        Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in &b.points {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let mut samples = Vec::with_capacity(grid * grid + extra.len());
    for i in 0..grid {
        for j in 0..grid {
            let fx = (i as f64 + 0.5) / grid as f64;
            let fy = (j as f64 + 0.5) / grid as f64;
            samples.push(Vec2::new(
                lo.x + fx * (hi.x - lo.x),
                lo.y + fy * (hi.y - lo.y),
            ));
        }
    }
    samples.extend_from_slice(extra);
    let mut seen_negative = false;
    let mut seen_multiple = false;
    let mut max_w = 0;
    for p in samples {
        let Ok(w) = winding_number(&b.points, p) else {
            continue;
        };
        max_w = max_w.max(w);
        if w < 0 {
            seen_negative = true;
        }
        if w > 1 || (w < 0 && w != -1) {
            seen_multiple = true;
        }
        if !(0..=1).contains(&w) && v.failures.len() < 8 {
            v.failures
                .push(format!("winding {w} at ({}, {})", p.x, p.y));
        }
    }
    let ok = !seen_negative && !seen_multiple;
    v.record("winding_injective", ok);
    if !ok {
        // A purely clockwise curve is an orientation problem, not an overlap.
        v.status = if seen_negative && !seen_multiple && max_w <= 0 {
            Status::PreconditionFailure
        } else {
            Status::Overlap
        };
    }
    v
}

/// Winding number of the boundary at each face's vertex centroid.
pub fn face_centroid_windings(layout: &PlanarLayout, b: &BoundaryCurve) -> Vec<Option<i32>> {
    layout
        .corners
        .iter()
        .map(|c| winding_number(&b.points, vertex_centroid(c)).ok())
        .collect()
}

fn arm_edges(u: &[Vec2]) -> impl Iterator<Item = Vec2> + '_ {
    u.windows(2).map(|w| w[1] - w[0])
}

/// Hypotheses of the arm lemma for a pair of chains with common start:
/// equal link lengths, every link within the angle bound of the positive x
/// axis, and each link of `v` at least as steep as the matching link of `u`.
pub fn check_arm_hypotheses(u: &[Vec2], v: &[Vec2]) -> Result<bool, VerifyError> {
    if u.len() != v.len() {
        return Err(VerifyError::LengthMismatch(u.len(), v.len()));
    }
    if u.len() < 2 {
        return Err(VerifyError::TooShort);
    }
    let tol = eps();
    if u[0].distance(v[0]) > tol {
        return Ok(false);
    }
    for (du, dv) in arm_edges(u).zip(arm_edges(v)) {
        let (lu, lv) = (du.norm(), dv.norm());
        if (lu - lv).abs() > tol * lu.max(1.0) || lu <= tol {
            return Ok(false);
        }
        let (au, av) = (du.y.atan2(du.x), dv.y.atan2(dv.x));
        if !(au.abs() < ARM_ANGLE_BOUND && av.abs() < ARM_ANGLE_BOUND) {
            return Ok(false);
        }
        if av < au - tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Conclusion of the arm lemma: the chains meet only at their start, and the
/// segment from `u`'s end to `v`'s end points within π/10 of straight up.
pub fn check_arm_conclusion(u: &[Vec2], v: &[Vec2]) -> bool {
    if u.len() != v.len() || u.len() < 2 {
        return false;
    }
    for i in 0..u.len() - 1 {
        for j in 0..v.len() - 1 {
            let policy = if i == 0 && j == 0 {
                EndpointPolicy::ExcludeSharedEndpoint
            } else {
                EndpointPolicy::Closed
            };
            if segments_intersect(u[i], u[i + 1], v[j], v[j + 1], policy).unwrap_or(true) {
                return false;
            }
        }
    }
    let d = v[v.len() - 1] - u[u.len() - 1];
    if d.norm() <= eps() {
        return false;
    }
    let a = d.y.atan2(d.x);
    a > 2.0 * PI / 5.0 && a < 3.0 * PI / 5.0
}

/// Every prefix `R1 L1 … Rk` of the boundary, as an open polyline, is simple.
pub fn check_zig_prefixes(b: &BoundaryCurve, d: &BoundaryDecomposition) -> Verdict {
    let mut v = Verdict::net();
    let mut ok = true;
    for (k, r) in d.right_runs().enumerate() {
        let prefix = &b.points[..=r.end().min(b.len() - 1)];
        let hits = polyline_self_intersections(prefix, false);
        if let Some(w) = hits.first() {
            ok = false;
            v.failures
                .push(format!("prefix through R{} is not simple", k + 1));
            v.witnesses.push(*w);
            break;
        }
    }
    v.record("zig_prefixes", ok);
    if !ok {
        v.status = Status::Overlap;
    }
    v
}

fn merge(into: &mut Verdict, part: Verdict) {
    into.checks.extend(part.checks);
    into.failures.extend(part.failures);
    into.witnesses.extend(part.witnesses);
}

/// Full certification of a developed layout.
///
/// Any self-intersection or multiply covered point gives `Overlap`. A simple,
/// counterclockwise boundary whose turn structure or fold compatibility
/// breaks the expected pattern gives `PreconditionFailure`.
pub fn certify_net(layout: &PlanarLayout, surface: &CutSurface) -> Verdict {
    let mut v = Verdict::net();
    let mismatch = layout.fold_mismatch(surface);
    let compatible = mismatch <= COMPATIBILITY_TOLERANCE;
    v.record("compatibility", compatible);
    if !compatible {
        v.failures.push(format!(
            "CompatibilityFailure: fold edges disagree by {mismatch}"
        ));
    }
    let b = boundary_curve(layout, surface);

    let mut precondition = !compatible;
    match decompose_boundary(&b) {
        Ok(d) => {
            v.record("decomposition", true);
            let t = check_turn_directions(&d);
            precondition |= !t.is_net();
            merge(&mut v, t);
        }
        Err(e) => {
            v.record("decomposition", false);
            v.failures.push(e.to_string());
            precondition = true;
        }
    }

    let s = check_self_intersection(&b);
    let mut overlap = !s.is_net();
    merge(&mut v, s);

    let centroids: Vec<Vec2> = layout.corners.iter().map(|c| vertex_centroid(c)).collect();
    let w = winding_injectivity_check(&b, WINDING_GRID, &centroids);
    match w.status {
        Status::Overlap => overlap = true,
        Status::PreconditionFailure => precondition = true,
        Status::Net => {}
    }
    let mut w = w;
    w.witnesses.clear();
    merge(&mut v, w);

    v.status = if overlap {
        Status::Overlap
    } else if precondition {
        Status::PreconditionFailure
    } else {
        Status::Net
    };
    v
}
