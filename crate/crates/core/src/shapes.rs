//! Convex polyhedra built from point sets: Platonic solids, random hulls and
//! the skinny tetrahedra used by the overlap search.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::Vec3;
use crate::mesh::{MeshError, Polyhedron};

/// Convex hull of `points` by brute-force plane enumeration.
///
/// Points strictly inside the hull are dropped; coplanar hull points are
/// merged into one polygonal face. Intended for small inputs (tens of points).
pub fn convex_hull(points: &[Vec3]) -> Result<Polyhedron, MeshError> {
    let n = points.len();
    if n < 4 {
        return Err(MeshError::Degenerate("hull needs at least 4 points".into()));
    }
    let scale = points
        .iter()
        .map(|p| p.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let tol = 1e-10 * scale;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let Some(normal) = (points[j] - points[i])
                    .cross(points[k] - points[i])
                    .normalized()
                else {
                    continue;
                };
                let dist: Vec<f64> = points
                    .iter()
                    .map(|p| (*p - points[i]).dot(normal))
                    .collect();
                let above = dist.iter().any(|&d| d > tol);
                let below = dist.iter().any(|&d| d < -tol);
                if above && below {
                    continue;
                }
                let outward = if above { -normal } else { normal };
                let on: Vec<usize> = (0..n).filter(|&m| dist[m].abs() <= tol).collect();
                if !seen.insert(on.clone()) {
                    continue;
                }
                faces.push(order_ccw(points, &on, outward));
            }
        }
    }
    // Drop collinear-on-face points: keep only corners of each face polygon.
    for face in &mut faces {
        let k = face.len();
        let keep: Vec<usize> = (0..k)
            .filter(|&c| {
                let (p, q, r) = (
                    points[face[(c + k - 1) % k]],
                    points[face[c]],
                    points[face[(c + 1) % k]],
                );
                (q - p).cross(r - q).norm() > tol * scale
            })
            .map(|c| face[c])
            .collect();
        *face = keep;
    }
    let used: BTreeSet<usize> = faces.iter().flatten().copied().collect();
    let remap: Vec<Option<usize>> = {
        let mut m = vec![None; n];
        for (new, &old) in used.iter().enumerate() {
            m[old] = Some(new);
        }
        m
    };
    let vertices: Vec<Vec3> = used.iter().map(|&i| points[i]).collect();
    let faces: Vec<Vec<usize>> = faces
        .into_iter()
        .map(|f| f.into_iter().filter_map(|i| remap[i]).collect())
        .collect();
    Polyhedron::from_raw(vertices, faces)
}

fn order_ccw(points: &[Vec3], on: &[usize], normal: Vec3) -> Vec<usize> {
    let c = on.iter().fold(Vec3::ZERO, |a, &i| a + points[i]) / on.len() as f64;
    let u = (points[on[0]] - c)
        .normalized()
        .unwrap_or(Vec3::new(1.0, 0.0, 0.0));
    let w = normal.cross(u);
    let mut keyed: Vec<(f64, usize)> = on
        .iter()
        .map(|&i| {
            let d = points[i] - c;
            (d.dot(w).atan2(d.dot(u)), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, i)| i).collect()
}

const PHI: f64 = 1.618_033_988_749_895;

pub fn tetrahedron() -> Polyhedron {
    let pts = [(1., 1., 1.), (1., -1., -1.), (-1., 1., -1.), (-1., -1., 1.)];
    hull_of(&pts)
}

pub fn cube() -> Polyhedron {
    let mut pts = Vec::new();
    for x in [-1., 1.] {
        for y in [-1., 1.] {
            for z in [-1., 1.] {
                pts.push((x, y, z));
            }
        }
    }
    hull_of(&pts)
}

pub fn octahedron() -> Polyhedron {
    let pts = [
        (1., 0., 0.),
        (-1., 0., 0.),
        (0., 1., 0.),
        (0., -1., 0.),
        (0., 0., 1.),
        (0., 0., -1.),
    ];
    hull_of(&pts)
}

pub fn icosahedron() -> Polyhedron {
    let mut pts = Vec::new();
    for a in [-1., 1.] {
        for b in [-PHI, PHI] {
            pts.push((0., a, b));
            pts.push((a, b, 0.));
            pts.push((b, 0., a));
        }
    }
    hull_of(&pts)
}

pub fn dodecahedron() -> Polyhedron {
    let mut pts = Vec::new();
    for x in [-1., 1.] {
        for y in [-1., 1.] {
            for z in [-1., 1.] {
                pts.push((x, y, z));
            }
        }
    }
    for a in [-1. / PHI, 1. / PHI] {
        for b in [-PHI, PHI] {
            pts.push((0., a, b));
            pts.push((a, b, 0.));
            pts.push((b, 0., a));
        }
    }
    hull_of(&pts)
}

/// Tetrahedron, cube, octahedron, icosahedron, dodecahedron.
pub fn platonic_array() -> [Polyhedron; 5] {
    [
        tetrahedron(),
        cube(),
        octahedron(),
        icosahedron(),
        dodecahedron(),
    ]
}

pub fn platonic_solids() -> Vec<Polyhedron> {
    platonic_array().into()
}

fn hull_of(pts: &[(f64, f64, f64)]) -> Polyhedron {
    let v: Vec<Vec3> = pts.iter().map(|&(x, y, z)| Vec3::new(x, y, z)).collect();
    convex_hull(&v).expect("Platonic point sets are in convex position")
}

/// Hull of `count` points drawn uniformly from the unit ball.
pub fn random_hull(count: usize, seed: u64) -> Result<Polyhedron, MeshError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let p = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if p.norm() <= 1.0 {
            pts.push(p);
        }
    }
    convex_hull(&pts)
}

/// Tetrahedron over a thin jittered base triangle in the plane z = 0, with
/// its apex pulled out to distance `pull` along the x axis, tilted slightly
/// up and sideways.
pub fn skinny_tetrahedron(pull: f64, rng: &mut impl Rng) -> Result<Polyhedron, MeshError> {
    let mut j = || rng.random_range(-0.2..0.2);
    let (a, b, c) = (j(), j(), j());
    let base = [
        Vec3::new(a, b, 0.0),
        Vec3::new(1.0 + c, b, 0.0),
        Vec3::new(
            rng.random_range(-0.5..1.5),
            rng.random_range(0.05..0.4),
            0.0,
        ),
    ];
    let side = rng.random_range(-1.0..1.0);
    let lift = rng.random_range(0.02..0.4);
    let apex = Vec3::new(pull, side * pull, lift * pull);
    convex_hull(&[base[0], base[1], base[2], apex])
}
