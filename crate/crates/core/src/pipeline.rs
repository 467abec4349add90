//! End-to-end: stretch, build the increasing tree, cut, develop, certify.

use thiserror::Error;

use crate::mesh::{MeshError, Polyhedron};
use crate::transform::{apply_stretch, default_theta_max, plan_stretch, Stretch, TransformError};
use crate::tree::{build_increasing_tree, SpanningTree, TieRule, TreeError};
use crate::unfold::{
    boundary_curve, cut, develop, BoundaryCurve, CutSurface, PlanarLayout, UnfoldError,
};
use crate::verify::{certify_net, Verdict};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Unfold(#[from] UnfoldError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Defaults to π/(20N) for an N-vertex input.
    pub theta_max: Option<f64>,
    pub tie_rule: TieRule,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            theta_max: None,
            tie_rule: TieRule::SteepestAscent,
            seed: 0,
        }
    }
}

/// A cut, its development and the certificate.
#[derive(Debug, Clone)]
pub struct Unfolding {
    pub polyhedron: Polyhedron,
    pub tree: SpanningTree,
    pub surface: CutSurface,
    pub layout: PlanarLayout,
    pub boundary: BoundaryCurve,
    pub verdict: Verdict,
}

/// Unfolds `q` along `tree` and certifies the result.
pub fn unfold_tree(q: &Polyhedron, tree: &SpanningTree) -> Result<Unfolding, Error> {
    let surface = cut(q, tree)?;
    let layout = develop(q, &surface)?;
    let boundary = boundary_curve(&layout, &surface);
    let verdict = certify_net(&layout, &surface);
    Ok(Unfolding {
        polyhedron: q.clone(),
        tree: tree.clone(),
        surface,
        layout,
        boundary,
        verdict,
    })
}

#[derive(Debug, Clone)]
pub struct NetResult {
    pub stretch: Stretch,
    pub unfolding: Unfolding,
}

/// Stretches `p` until every edge is nearly horizontal, then unfolds it along
/// an increasing tree.
pub fn stretch_and_unfold(p: &Polyhedron, opts: &Options) -> Result<NetResult, Error> {
    let theta = opts.theta_max.unwrap_or_else(|| default_theta_max(p));
    let stretch = plan_stretch(p, theta, opts.seed)?;
    let q = apply_stretch(p, &stretch)?;
    let tree = build_increasing_tree(&q, opts.tie_rule)?;
    let unfolding = unfold_tree(&q, &tree)?;
    log::info!(
        "lambda {} theta_max {} verdict {}",
        stretch.lambda,
        stretch.theta_max,
        unfolding.verdict.status
    );
    Ok(NetResult { stretch, unfolding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;
    use crate::verify::Status;

    #[test]
    fn platonic_solids_unfold_to_nets() {
        for p in shapes::platonic_solids() {
            let r = stretch_and_unfold(&p, &Options::default()).unwrap();
            assert_eq!(
                r.unfolding.verdict.status,
                Status::Net,
                "{:?}",
                r.unfolding.verdict.failures
            );
        }
    }

    #[test]
    fn deterministic() {
        let p = shapes::dodecahedron();
        let a = stretch_and_unfold(&p, &Options::default()).unwrap();
        let b = stretch_and_unfold(&p, &Options::default()).unwrap();
        assert_eq!(a.unfolding.layout, b.unfolding.layout);
        assert_eq!(a.stretch, b.stretch);
    }
}
