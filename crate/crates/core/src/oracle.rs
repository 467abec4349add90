//! Brute-force cross-checks: spanning tree counts, exhaustive censuses of
//! edge unfoldings, and the search for overlapping unfoldings of skinny
//! tetrahedra.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::mesh::{EdgeGraph, Polyhedron};
use crate::pipeline::{unfold_tree, Error, Unfolding};
use crate::shapes::skinny_tetrahedron;
use crate::transform::{apply_linear, choose_rotation};
use crate::tree::{enumerate_spanning_trees, is_increasing};
use crate::verify::Status;

/// Number of spanning trees of a multigraph by the matrix-tree theorem, using
/// fraction-free (Bareiss) elimination on the reduced Laplacian.
pub fn matrix_tree_count(g: &EdgeGraph) -> u128 {
    let n = g.vertex_count;
    if n <= 1 {
        return 1;
    }
    let mut lap = vec![vec![0i128; n]; n];
    for &(a, b) in &g.edges {
        if a == b {
            continue;
        }
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    let m = n - 1;
    let mut a: Vec<Vec<i128>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..m).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[m - 1][m - 1]).max(0) as u128
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub tree_id: usize,
    pub increasing: bool,
    pub verdict: Status,
    pub witnesses: usize,
    pub lambda: f64,
}

/// Certifies the unfolding of every spanning tree (up to `cap`) of
/// `diag(λ, 1, 1)·R·p` for each λ, where `R` is the chosen rotation for
/// `seed`.
pub fn census(
    p: &Polyhedron,
    lambdas: &[f64],
    cap: usize,
    seed: u64,
) -> Result<Vec<CensusRow>, Error> {
    let rotation = choose_rotation(p, seed);
    let mut rows = Vec::new();
    for &lambda in lambdas {
        let q = apply_linear(p, &rotation, lambda)?;
        for (tree_id, t) in enumerate_spanning_trees(&q, cap).enumerate() {
            let (verdict, witnesses) = match unfold_tree(&q, &t) {
                Ok(u) => (u.verdict.status, u.verdict.witnesses.len()),
                Err(e) => {
                    log::warn!("tree {tree_id}: {e}");
                    (Status::PreconditionFailure, 0)
                }
            };
            rows.push(CensusRow {
                tree_id,
                increasing: is_increasing(&q, &t),
                verdict,
                witnesses,
                lambda,
            });
        }
    }
    Ok(rows)
}

pub fn census_csv(rows: &[CensusRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn parse_census_csv(text: &str) -> Result<Vec<CensusRow>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

/// An overlapping edge unfolding found by [`find_overlapping_tetrahedron`].
#[derive(Debug, Clone)]
pub struct OverlapExample {
    pub shape_index: usize,
    pub pull: f64,
    pub tree_id: usize,
    pub unfolding: Unfolding,
}

/// Skinny tetrahedra tried by the search; the pull grows with the index.
pub fn skinny_family(count: usize, seed: u64) -> Vec<(f64, Polyhedron)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < count {
        let pull = 2.0 + 0.5 * i as f64;
        i += 1;
        if let Ok(p) = skinny_tetrahedron(pull, &mut rng) {
            out.push((pull, p));
        }
    }
    out
}

/// Scans every spanning tree of each shape in the skinny family, unstretched,
/// and returns the first unfolding accepted by `want`.
pub fn find_overlapping_tetrahedron(
    shapes: usize,
    seed: u64,
    mut want: impl FnMut(&Unfolding) -> bool,
) -> Option<OverlapExample> {
    for (shape_index, (pull, p)) in skinny_family(shapes, seed).into_iter().enumerate() {
        for (tree_id, t) in enumerate_spanning_trees(&p, 16).enumerate() {
            let Ok(u) = unfold_tree(&p, &t) else { continue };
            if u.verdict.status == Status::Overlap && want(&u) {
                return Some(OverlapExample {
                    shape_index,
                    pull,
                    tree_id,
                    unfolding: u,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn complete(n: usize) -> EdgeGraph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        EdgeGraph::new(n, e)
    }

    #[test]
    fn cayley() {
        for n in 2..9 {
            assert_eq!(
                matrix_tree_count(&complete(n)),
                (n as u128).pow(n as u32 - 2)
            );
        }
    }

    #[test]
    fn platonic_tree_counts() {
        let expected = [16u128, 384, 384, 5_184_000, 5_184_000];
        for (p, want) in shapes::platonic_solids().iter().zip(expected) {
            assert_eq!(matrix_tree_count(&p.edge_graph()), want);
        }
    }

    #[test]
    fn enumeration_matches_count() {
        for p in [shapes::tetrahedron(), shapes::cube(), shapes::octahedron()] {
            let n = enumerate_spanning_trees(&p, usize::MAX).count() as u128;
            assert_eq!(n, matrix_tree_count(&p.edge_graph()));
        }
    }

    #[test]
    fn multigraph_count() {
        let g = EdgeGraph::new(3, vec![(0, 1), (0, 1), (1, 2), (0, 2)]);
        assert_eq!(matrix_tree_count(&g), 5);
        assert_eq!(matrix_tree_count(&EdgeGraph::new(3, vec![(0, 1)])), 0);
    }

    #[test]
    fn census_csv_round_trip() {
        let rows = census(&shapes::tetrahedron(), &[1.0, 3.0], 16, 0).unwrap();
        assert_eq!(rows.len(), 32);
        let text = census_csv(&rows).unwrap();
        assert!(text.starts_with("tree_id,increasing,verdict,witnesses,lambda\n"));
        assert_eq!(parse_census_csv(&text).unwrap(), rows);
    }
}
