//! Exact squared Hausdorff distance between bounded polytopes.
//!
//! Working with squared Euclidean distances keeps everything rational;
//! callers only ever order distances or test them against zero, so the
//! square root would add nothing but irrationality.

use itertools::Itertools;
use num_traits::Zero;

use crate::error::GeomError;
use crate::linalg;
use crate::rational::Rat;

use super::{HPolytope, QVector};

/// Squared Euclidean distance from `point` to `p` (bounded, feasible).
///
/// The nearest point lies in the relative interior of some face, and
/// minimizing over a face's affine hull is an exact least-squares solve;
/// we try every independent active set and keep feasible minimizers.
pub fn point_distance_sq(point: &QVector, p: &HPolytope) -> Result<Rat, GeomError> {
    if point.dim() != p.dim_ambient() {
        return Err(GeomError::DimensionMismatch {
            left: point.dim(),
            right: p.dim_ambient(),
        });
    }
    if !p.is_feasible() {
        return Err(GeomError::Infeasible);
    }
    if p.contains_point(point)? {
        return Ok(Rat::zero());
    }
    let dim = p.dim_ambient();
    let hs = p.halfspaces();
    let mut best: Option<Rat> = None;
    for size in 1..=dim.min(hs.len()) {
        for subset in (0..hs.len()).combinations(size) {
            let rows: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| hs[i].normal().coords().to_vec())
                .collect();
            if linalg::rank(&rows) != size {
                continue;
            }
            // Project `point` onto {x : A x = b}: x = point - A^T lambda
            // where (A A^T) lambda = A point - b.
            let gram: Vec<Vec<Rat>> = rows
                .iter()
                .map(|r| rows.iter().map(|s| linalg::dot(r, s)).collect())
                .collect();
            let resid: Vec<Rat> = subset
                .iter()
                .map(|&i| hs[i].normal().dot(point) - hs[i].bound())
                .collect();
            let Some(lambda) = linalg::solve_unique(&gram, &resid) else {
                continue;
            };
            let mut x = point.coords().to_vec();
            for (l, r) in lambda.iter().zip(&rows) {
                for (xi, ri) in x.iter_mut().zip(r) {
                    *xi = &*xi - &(l * ri);
                }
            }
            let proj = QVector::new(x);
            if !p.contains_point(&proj)? {
                continue;
            }
            let diff = proj.sub(point);
            let d2 = diff.dot(&diff);
            if best.as_ref().is_none_or(|b| d2 < *b) {
                best = Some(d2);
            }
        }
    }
    Ok(best.expect("a nearest face exists for a nonempty bounded polytope"))
}

/// Squared Hausdorff distance between two bounded feasible polytopes:
/// the larger of the two directed vertex-to-body maxima.
pub fn hausdorff_distance_sq(p: &HPolytope, q: &HPolytope) -> Result<Rat, GeomError> {
    if p.dim_ambient() != q.dim_ambient() {
        return Err(GeomError::DimensionMismatch {
            left: p.dim_ambient(),
            right: q.dim_ambient(),
        });
    }
    if !p.is_feasible() || !q.is_feasible() {
        return Err(GeomError::Infeasible);
    }
    let vp = p.vertex_enumerate()?;
    let vq = q.vertex_enumerate()?;
    if !vp.is_bounded() || !vq.is_bounded() {
        return Err(GeomError::Unbounded);
    }
    let mut best = Rat::zero();
    for v in &vp.vertices {
        let d2 = point_distance_sq(v, q)?;
        if d2 > best {
            best = d2;
        }
    }
    for w in &vq.vertices {
        let d2 = point_distance_sq(w, p)?;
        if d2 > best {
            best = d2;
        }
    }
    Ok(best)
}
