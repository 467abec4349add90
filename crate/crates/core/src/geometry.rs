//! Scalar and vector primitives, angle arithmetic and tolerance-based 2D
//! predicates.
//!
//! Every predicate here shares one absolute tolerance, [`eps`], which
//! defaults to `1e-9`. Meshes are normalized to unit bounding-box diameter on
//! ingestion so that an absolute tolerance is meaningful.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default global tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Global tolerance. `UNFOLD_EPS` in the environment overrides the default;
/// it is read once per process.
pub fn eps() -> f64 {
    static EPS: OnceLock<f64> = OnceLock::new();
    *EPS.get_or_init(|| {
        std::env::var("UNFOLD_EPS")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|e| e.is_finite() && *e > 0.0)
            .unwrap_or(DEFAULT_EPS)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("direction is degenerate (zero vector or coincident points)")]
    DegenerateDirection,
    #[error("segment has zero length")]
    DegenerateSegment,
    #[error("query point lies on the curve")]
    PointOnBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Length of the component orthogonal to the x axis.
    pub fn yz_norm(self) -> f64 {
        self.y.hypot(self.z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z component of the 3D cross product.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise rotation by `angle` radians.
    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        *self = *self + o;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, s: f64) -> Vec2 {
        Vec2::new(self.x / s, self.y / s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// An angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
pub struct Angle(pub f64);

impl Angle {
    pub fn radians(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

/// Argument of `v` as a complex number, in `(-π, π]`.
pub fn arg(v: Vec2) -> Result<Angle, GeometryError> {
    if v.x == 0.0 && v.y == 0.0 || !v.is_finite() {
        return Err(GeometryError::DegenerateDirection);
    }
    let a = v.y.atan2(v.x);
    // atan2 returns -π for (-x, -0.0); fold onto the closed end.
    Ok(Angle(if a <= -PI { PI } else { a }))
}

/// Angle at `x` swept counterclockwise from ray `x→y` to ray `x→z`, in `[0, 2π)`.
pub fn ccw_angle(y: Vec2, x: Vec2, z: Vec2) -> Result<Angle, GeometryError> {
    let a = arg(y - x)?.0;
    let b = arg(z - x)?.0;
    let mut d = b - a;
    if d < 0.0 {
        d += TAU;
    }
    if d >= TAU {
        d -= TAU;
    }
    Ok(Angle(d))
}

/// Wrap an angle into `(-π, π]`.
pub fn wrap_pi(a: f64) -> f64 {
    let mut r = a.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}

/// Sign of the doubled signed area of `abc`.
///
/// The zero band is `eps() * max_edge²`, which is symmetric in the three
/// arguments, so the result is exactly antisymmetric under swaps.
pub fn orient2d(a: Vec2, b: Vec2, c: Vec2) -> i8 {
    let det = (b - a).cross(c - a);
    let scale = (b - a)
        .dot(b - a)
        .max((c - b).dot(c - b))
        .max((a - c).dot(a - c));
    if det.abs() <= eps() * scale {
        0
    } else if det > 0.0 {
        1
    } else {
        -1
    }
}

/// Distance from `p` to the closed segment `ab`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// How shared endpoints are treated by [`segments_intersect`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointPolicy {
    /// Closed segments: any contact counts.
    Closed,
    /// If the segments share an endpoint, contact at that endpoint alone does
    /// not count. Collinear overlap beyond it still does.
    ExcludeSharedEndpoint,
}

/// Whether two proper (non-degenerate) segments cross transversally at an
/// interior point of both.
fn proper_crossing(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> bool {
    let d1 = orient2d(p1, p2, q1);
    let d2 = orient2d(p1, p2, q2);
    let d3 = orient2d(q1, q2, p1);
    let d4 = orient2d(q1, q2, p2);
    d1 * d2 < 0 && d3 * d4 < 0
}

/// Minimum distance between two closed segments.
pub fn segment_distance(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> f64 {
    if proper_crossing(p1, p2, q1, q2) {
        return 0.0;
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}

/// Closed-segment intersection test with an ε contact band.
pub fn segments_intersect(
    p1: Vec2,
    p2: Vec2,
    q1: Vec2,
    q2: Vec2,
    policy: EndpointPolicy,
) -> Result<bool, GeometryError> {
    let tol = eps();
    if p1.distance(p2) <= tol || q1.distance(q2) <= tol {
        return Err(GeometryError::DegenerateSegment);
    }
    if policy == EndpointPolicy::ExcludeSharedEndpoint {
        let shared = [
            (p1, p2, q1, q2),
            (p1, p2, q2, q1),
            (p2, p1, q1, q2),
            (p2, p1, q2, q1),
        ]
        .into_iter()
        .find(|(ps, _, qs, _)| ps.distance(*qs) <= tol);
        if let Some((_, pf, _, qf)) = shared {
            let (ps, qs) = (p1 + p2 - pf, q1 + q2 - qf);
            // Two straight segments from a common point meet elsewhere only
            // when they overlap collinearly.
            return Ok(point_segment_distance(pf, qs, qf) <= tol
                || point_segment_distance(qf, ps, pf) <= tol);
        }
    }
    Ok(segment_distance(p1, p2, q1, q2) <= tol)
}

/// Winding number of the closed polyline `polyline` (last point joins the
/// first) around `p`.
///
/// Signed crossings against the rightward horizontal ray from `p`. Vertices on
/// the ray are resolved by the half-open rule, which is the limit of an
/// infinitesimal upward perturbation of `p`.
pub fn winding_number(polyline: &[Vec2], p: Vec2) -> Result<i32, GeometryError> {
    let n = polyline.len();
    if n == 0 {
        return Ok(0);
    }
    let tol = eps();
    let mut w = 0;
    for i in 0..n {
        let a = polyline[i];
        let b = polyline[(i + 1) % n];
        if point_segment_distance(p, a, b) <= tol {
            return Err(GeometryError::PointOnBoundary);
        }
        if a.y <= p.y {
            if b.y > p.y && (b - a).cross(p - a) > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && (b - a).cross(p - a) < 0.0 {
            w -= 1;
        }
    }
    Ok(w)
}

/// Twice the signed area of a closed polygon (shoelace).
pub fn signed_area2(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum()
}

pub fn signed_area(poly: &[Vec2]) -> f64 {
    0.5 * signed_area2(poly)
}

/// Vertex average of a polygon; lies inside when the polygon is convex.
pub fn vertex_centroid(poly: &[Vec2]) -> Vec2 {
    let s = poly.iter().fold(Vec2::ZERO, |acc, p| acc + *p);
    s / poly.len() as f64
}

/// A 3x3 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Mat3(r)
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Rotation from a (not necessarily unit) quaternion `w + xi + yj + zk`.
    pub fn from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Mat3 {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        let (w, x, y, z) = (w / n, x / n, y / n, z / n);
        Mat3([
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ])
    }

    /// The rotation taking unit vector `from` onto unit vector `to` about
    /// their common normal (Rodrigues). Antipodal inputs rotate by π about an
    /// axis orthogonal to `from`.
    pub fn rotation_between(from: Vec3, to: Vec3) -> Mat3 {
        let v = from.cross(to);
        let c = from.dot(to);
        if c < -1.0 + 1e-12 {
            let helper = if from.x.abs() < 0.9 {
                Vec3::new(1.0, 0.0, 0.0)
            } else {
                Vec3::new(0.0, 1.0, 0.0)
            };
            let axis = from
                .cross(helper)
                .normalized()
                .unwrap_or(Vec3::new(0.0, 0.0, 1.0));
            return Mat3::from_quaternion(0.0, axis.x, axis.y, axis.z);
        }
        let k = 1.0 / (1.0 + c);
        Mat3([
            [v.x * v.x * k + c, v.x * v.y * k - v.z, v.x * v.z * k + v.y],
            [v.y * v.x * k + v.z, v.y * v.y * k + c, v.y * v.z * k - v.x],
            [v.z * v.x * k - v.y, v.z * v.y * k + v.x, v.z * v.z * k + c],
        ])
    }

    /// Largest entry of `RᵀR - I`.
    pub fn orthogonality_error(&self) -> f64 {
        let p = self.transpose().mul(self);
        let mut err: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                err = err.max((p.0[i][j] - target).abs());
            }
        }
        err
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const ORIGIN: Vec2 = Vec2::ZERO;

    #[test]
    fn arg_examples() {
        assert_eq!(arg(Vec2::new(1.0, 0.0)).unwrap().0, 0.0);
        assert_abs_diff_eq!(arg(Vec2::new(0.0, 1.0)).unwrap().0, PI / 2.0);
        assert_eq!(arg(Vec2::new(-1.0, 0.0)).unwrap().0, PI);
        assert_eq!(arg(Vec2::new(-1.0, -0.0)).unwrap().0, PI);
        assert_eq!(arg(Vec2::ZERO), Err(GeometryError::DegenerateDirection));
    }

    #[test]
    fn ccw_angle_examples() {
        let e1 = Vec2::new(1.0, 0.0);
        let e2 = Vec2::new(0.0, 1.0);
        assert_abs_diff_eq!(ccw_angle(e1, ORIGIN, e2).unwrap().0, PI / 2.0);
        assert_abs_diff_eq!(ccw_angle(e2, ORIGIN, e1).unwrap().0, 3.0 * PI / 2.0);
        assert_eq!(ccw_angle(e1, ORIGIN, e1).unwrap().0, 0.0);
        assert!(ccw_angle(ORIGIN, ORIGIN, e1).is_err());
    }

    #[test]
    fn orient2d_examples() {
        let (a, b, c) = (ORIGIN, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0));
        assert_eq!(orient2d(a, b, c), 1);
        assert_eq!(orient2d(a, c, b), -1);
        assert_eq!(orient2d(a, Vec2::new(1.0, 1.0), Vec2::new(2.0, 2.0)), 0);
    }

    #[test]
    fn segment_examples() {
        let v = |x, y| Vec2::new(x, y);
        let closed = EndpointPolicy::Closed;
        assert!(segments_intersect(v(0., 0.), v(2., 0.), v(1., -1.), v(1., 1.), closed).unwrap());
        assert!(!segments_intersect(v(0., 0.), v(1., 0.), v(0., 1.), v(1., 1.), closed).unwrap());
        let excl = EndpointPolicy::ExcludeSharedEndpoint;
        assert!(!segments_intersect(v(0., 0.), v(1., 0.), v(1., 0.), v(2., 0.), excl).unwrap());
        // Same pair under the closed policy touches.
        assert!(segments_intersect(v(0., 0.), v(1., 0.), v(1., 0.), v(2., 0.), closed).unwrap());
        // Folding back onto itself overlaps beyond the shared point.
        assert!(segments_intersect(v(0., 0.), v(1., 0.), v(1., 0.), v(0.5, 0.), excl).unwrap());
        assert_eq!(
            segments_intersect(v(0., 0.), v(0., 0.), v(0., 1.), v(1., 1.), closed),
            Err(GeometryError::DegenerateSegment)
        );
    }

    fn unit_square() -> Vec<Vec2> {
        vec![
            Vec2::new(0., 0.),
            Vec2::new(1., 0.),
            Vec2::new(1., 1.),
            Vec2::new(0., 1.),
        ]
    }

    #[test]
    fn winding_square() {
        let sq = unit_square();
        assert_eq!(winding_number(&sq, Vec2::new(0.5, 0.5)).unwrap(), 1);
        assert_eq!(winding_number(&sq, Vec2::new(5.0, 5.0)).unwrap(), 0);
        // Ray passes exactly through vertices (1,0) and (1,1) level cases.
        assert_eq!(winding_number(&sq, Vec2::new(0.5, 0.0 + 1e-3)).unwrap(), 1);
        assert_eq!(winding_number(&sq, Vec2::new(-0.5, 1.0)).unwrap(), 0);
        assert_eq!(winding_number(&sq, Vec2::new(-0.5, 0.0)).unwrap(), 0);
        assert_eq!(
            winding_number(&sq, Vec2::new(1.0, 0.5)),
            Err(GeometryError::PointOnBoundary)
        );
    }

    /// Total signed angle subtended by a densely resampled closed curve.
    fn angle_sum_winding(poly: &[Vec2], p: Vec2) -> f64 {
        let mut dense = Vec::new();
        for i in 0..poly.len() {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            for k in 0..64 {
                dense.push(a.lerp(b, k as f64 / 64.0));
            }
        }
        let mut total = 0.0;
        for i in 0..dense.len() {
            let u = dense[i] - p;
            let w = dense[(i + 1) % dense.len()] - p;
            total += u.cross(w).atan2(u.dot(w));
        }
        total / TAU
    }

    #[test]
    fn winding_figure_eight_matches_angle_sum() {
        // Left lobe CCW, right lobe CW, crossing at the origin.
        let eight = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(-1.0, -1.0),
            Vec2::new(-2.0, 0.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 1.0),
        ];
        let left = Vec2::new(-1.0, 0.1);
        let right = Vec2::new(1.0, 0.1);
        let oracle_left = angle_sum_winding(&eight, left);
        let oracle_right = angle_sum_winding(&eight, right);
        assert_abs_diff_eq!(oracle_left, -1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(oracle_right, 1.0, epsilon = 1e-9);
        assert_eq!(
            winding_number(&eight, left).unwrap(),
            oracle_left.round() as i32
        );
        assert_eq!(
            winding_number(&eight, right).unwrap(),
            oracle_right.round() as i32
        );
    }

    #[test]
    fn rotation_between_maps_vectors() {
        let from = Vec3::new(1.0, 2.0, -0.5).normalized().unwrap();
        let to = Vec3::new(1.0, 0.0, 0.0);
        let r = Mat3::rotation_between(from, to);
        let img = r.apply(from);
        assert_abs_diff_eq!(img.x, 1.0, epsilon = 1e-12);
        assert!(r.orthogonality_error() < 1e-12);
        assert_abs_diff_eq!(r.determinant(), 1.0, epsilon = 1e-12);
        let anti = Mat3::rotation_between(-to, to);
        assert_abs_diff_eq!(anti.apply(-to).x, 1.0, epsilon = 1e-12);
    }

    /// Even-odd ray casting, written independently of `winding_number`.
    fn ray_cast_inside(poly: &[Vec2], p: Vec2) -> bool {
        let mut inside = false;
        let n = poly.len();
        let mut j = n - 1;
        for i in 0..n {
            let (a, b) = (poly[i], poly[j]);
            if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
                inside = !inside;
            }
            j = i;
        }
        inside
    }

    fn star_polygon() -> impl Strategy<Value = Vec<Vec2>> {
        prop::collection::vec((0.2f64..1.0, 0.0f64..1.0), 3..12).prop_map(|raw| {
            let n = raw.len();
            raw.iter()
                .enumerate()
                .map(|(i, (r, jitter))| {
                    let t = (i as f64 + 0.8 * jitter) / n as f64 * TAU;
                    Vec2::new(r * t.cos(), r * t.sin())
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn arg_range_and_negation(x in -10.0f64..10.0, y in -10.0f64..10.0) {
            prop_assume!(x.abs() + y.abs() > 1e-6);
            let v = Vec2::new(x, y);
            let a = arg(v).unwrap().0;
            prop_assert!(a > -PI && a <= PI);
            let b = arg(-v).unwrap().0;
            prop_assert!(wrap_pi(b - a - PI).abs() < 1e-12);
        }

        #[test]
        fn ccw_angles_complement(ax in -5.0f64..5.0, ay in -5.0f64..5.0, bx in -5.0f64..5.0, by in -5.0f64..5.0) {
            let (y, z) = (Vec2::new(ax, ay), Vec2::new(bx, by));
            prop_assume!(y.norm() > 1e-3 && z.norm() > 1e-3);
            let f = ccw_angle(y, ORIGIN, z).unwrap().0;
            let g = ccw_angle(z, ORIGIN, y).unwrap().0;
            prop_assume!(f > 1e-9 && g > 1e-9);
            prop_assert!((f + g - TAU).abs() < 1e-9);
        }

        #[test]
        fn orient2d_antisymmetric(p in prop::array::uniform6(-3.0f64..3.0)) {
            let (a, b, c) = (Vec2::new(p[0], p[1]), Vec2::new(p[2], p[3]), Vec2::new(p[4], p[5]));
            let s = orient2d(a, b, c);
            prop_assert_eq!(orient2d(b, a, c), -s);
            prop_assert_eq!(orient2d(a, c, b), -s);
            prop_assert_eq!(orient2d(c, b, a), -s);
        }

        #[test]
        fn winding_of_simple_curve_matches_ray_casting(poly in star_polygon(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let orient = if signed_area(&poly) > 0.0 { 1 } else { -1 };
            for _ in 0..1000 {
                let p = Vec2::new(rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2));
                match winding_number(&poly, p) {
                    Ok(w) => {
                        prop_assert!(w == 0 || w == orient);
                        prop_assert_eq!(w != 0, ray_cast_inside(&poly, p));
                    }
                    Err(GeometryError::PointOnBoundary) => {}
                    Err(e) => prop_assert!(false, "{e}"),
                }
            }
        }
    }
}
