//! Exact convex polytope kernel in H-representation.
//!
//! Polytopes are stored as canonical lists of half-spaces `normal.x <= bound`:
//! each half-space is scaled to coprime integer coefficients, redundant
//! half-spaces are removed, and the list is sorted. Canonicalization runs
//! after every constructive operation, so set equality is a syntactic check
//! with a semantic (mutual containment) fallback for lower-dimensional sets.
//!
//! Everything here is sized for ambient dimension at most [`MAX_DIM`]; the
//! enumeration routines are exhaustive rather than output-sensitive.

mod distance;
mod vrep;

pub use distance::{hausdorff_distance_sq, point_distance_sq};
pub(crate) use vrep::enumerate_vertices_raw;
pub use vrep::VRep;

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::GeomError;
use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::rational::{primitive_integer_scale, rat_to_string, Rat};

/// Soft ambient-dimension limit for the enumeration routines.
pub const MAX_DIM: usize = 6;

/// A point or direction with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector {
    coords: Vec<Rat>,
}

impl QVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        QVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        QVector {
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[axis] = Rat::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QVector {
            coords: coords.iter().map(|&c| crate::rational::rat_i(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &QVector) -> Rat {
        linalg::dot(&self.coords, &other.coords)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rat) -> QVector {
        QVector {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Scales to coprime integer coordinates. Sign is preserved.
    pub fn primitive(&self) -> QVector {
        QVector {
            coords: primitive_integer_scale(&self.coords),
        }
    }

    /// Scales to coprime integer coordinates with positive first nonzero
    /// entry; the canonical form of an undirected line direction.
    pub fn primitive_line_direction(&self) -> QVector {
        let p = self.primitive();
        match p.coords.iter().find(|c| !c.is_zero()) {
            Some(first) if first.is_negative() => p.scale(&-Rat::one()),
            _ => p,
        }
    }
}

impl std::fmt::Display for QVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_to_string(c))?;
        }
        write!(f, ")")
    }
}

/// Half-space `normal . x <= bound` with a nonzero normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfSpace {
    normal: QVector,
    bound: Rat,
}

impl HalfSpace {
    pub fn new(normal: QVector, bound: Rat) -> Result<Self, GeomError> {
        if normal.is_zero() {
            return Err(GeomError::Invalid("half-space normal is zero".into()));
        }
        Ok(HalfSpace { normal, bound })
    }

    pub fn normal(&self) -> &QVector {
        &self.normal
    }

    pub fn bound(&self) -> &Rat {
        &self.bound
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.normal.dot(x) <= self.bound
    }

    /// Exact slack `bound - normal . x` (nonnegative inside).
    pub fn slack(&self, x: &QVector) -> Rat {
        &self.bound - self.normal.dot(x)
    }

    /// Scales coefficients and bound jointly to coprime integers; the
    /// scaling factor is positive so the half-space is unchanged.
    fn canonical(&self) -> HalfSpace {
        let mut all: Vec<Rat> = self.normal.coords.clone();
        all.push(self.bound.clone());
        let scaled = primitive_integer_scale(&all);
        let bound = scaled.last().unwrap().clone();
        let coords = scaled[..scaled.len() - 1].to_vec();
        HalfSpace {
            normal: QVector::new(coords),
            bound,
        }
    }
}

impl std::fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} . x <= {}", self.normal, rat_to_string(&self.bound))
    }
}

/// Convex polyhedron in canonical H-representation.
///
/// The infeasible polyhedron is a distinguished value (empty constraint
/// list, `feasible == false`), not an error; an empty constraint list with
/// `feasible == true` is all of R^dim.
#[derive(Debug)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    feasible: bool,
    vrep_cache: OnceLock<VRep>,
}

impl Clone for HPolytope {
    fn clone(&self) -> Self {
        HPolytope {
            dim: self.dim,
            halfspaces: self.halfspaces.clone(),
            feasible: self.feasible,
            vrep_cache: self.vrep_cache.clone(),
        }
    }
}

impl PartialEq for HPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.feasible == other.feasible
            && self.halfspaces == other.halfspaces
    }
}

impl Eq for HPolytope {}

impl HPolytope {
    /// Builds a polyhedron from raw rows `(normal, bound)` and
    /// canonicalizes. Zero normals are resolved here: `0 . x <= c` is
    /// dropped when `c >= 0` and makes the system infeasible when `c < 0`.
    pub fn new(
        dim: usize,
        rows: impl IntoIterator<Item = (QVector, Rat)>,
    ) -> Result<Self, GeomError> {
        if dim == 0 {
            return Err(GeomError::Invalid("ambient dimension must be >= 1".into()));
        }
        let mut halfspaces = Vec::new();
        let mut infeasible = false;
        for (normal, bound) in rows {
            if normal.dim() != dim {
                return Err(GeomError::DimensionMismatch {
                    left: dim,
                    right: normal.dim(),
                });
            }
            if normal.is_zero() {
                if bound.is_negative() {
                    infeasible = true;
                }
                continue;
            }
            halfspaces.push(HalfSpace { normal, bound }.canonical());
        }
        if infeasible {
            return Ok(Self::empty(dim));
        }
        let mut p = HPolytope {
            dim,
            halfspaces,
            feasible: true,
            vrep_cache: OnceLock::new(),
        };
        p.canonicalize();
        Ok(p)
    }

    /// Internal fast path: scale, sort and deduplicate rows but skip the
    /// LP redundancy sweep. The value still describes the right set and
    /// supports membership, exits, and vertex enumeration; only the
    /// syntactic-equality guarantee of the canonical form is weaker, so
    /// this stays crate-private for intermediate computations.
    pub(crate) fn new_unreduced(
        dim: usize,
        rows: impl IntoIterator<Item = (QVector, Rat)>,
        known_feasible: bool,
    ) -> Result<Self, GeomError> {
        let mut halfspaces = Vec::new();
        let mut infeasible = false;
        for (normal, bound) in rows {
            if normal.dim() != dim {
                return Err(GeomError::DimensionMismatch {
                    left: dim,
                    right: normal.dim(),
                });
            }
            if normal.is_zero() {
                if bound.is_negative() {
                    infeasible = true;
                }
                continue;
            }
            halfspaces.push(HalfSpace { normal, bound }.canonical());
        }
        if infeasible {
            return Ok(Self::empty(dim));
        }
        halfspaces.sort();
        halfspaces.dedup();
        let feasible = if known_feasible {
            true
        } else {
            let rows: Vec<Vec<Rat>> = halfspaces
                .iter()
                .map(|h| h.normal.coords.clone())
                .collect();
            let rhs: Vec<Rat> = halfspaces.iter().map(|h| h.bound.clone()).collect();
            lp::is_feasible(&rows, &rhs)
        };
        if !feasible {
            return Ok(Self::empty(dim));
        }
        Ok(HPolytope {
            dim,
            halfspaces,
            feasible: true,
            vrep_cache: OnceLock::new(),
        })
    }

    /// Seeds the V-representation cache with an externally computed
    /// value; used when a transform maps a known V-representation
    /// exactly (affine images of vertices are vertices).
    pub(crate) fn with_vrep(self, mut vrep: VRep) -> Self {
        vrep.vertices.sort();
        vrep.vertices.dedup();
        vrep.rays.sort();
        vrep.rays.dedup();
        let _ = self.vrep_cache.set(vrep);
        self
    }

    /// The whole space R^dim.
    pub fn full_space(dim: usize) -> Self {
        HPolytope {
            dim,
            halfspaces: Vec::new(),
            feasible: true,
            vrep_cache: OnceLock::new(),
        }
    }

    /// The distinguished infeasible polyhedron.
    pub fn empty(dim: usize) -> Self {
        HPolytope {
            dim,
            halfspaces: Vec::new(),
            feasible: false,
            vrep_cache: OnceLock::new(),
        }
    }

    /// Axis-aligned box given per-axis closed ranges.
    pub fn from_box(ranges: &[(Rat, Rat)]) -> Result<Self, GeomError> {
        let dim = ranges.len();
        let mut rows = Vec::with_capacity(2 * dim);
        for (i, (lo, hi)) in ranges.iter().enumerate() {
            rows.push((QVector::unit(dim, i), hi.clone()));
            rows.push((QVector::unit(dim, i).scale(&-Rat::one()), -lo.clone()));
        }
        Self::new(dim, rows)
    }

    /// The nonnegative orthant of R^dim.
    pub fn nonneg_orthant(dim: usize) -> Result<Self, GeomError> {
        let rows = (0..dim)
            .map(|i| (QVector::unit(dim, i).scale(&-Rat::one()), Rat::zero()));
        Self::new(dim, rows)
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible
    }

    pub(crate) fn rows_matrix(&self) -> (Vec<Vec<Rat>>, Vec<Rat>) {
        let rows = self
            .halfspaces
            .iter()
            .map(|h| h.normal.coords.clone())
            .collect();
        let rhs = self.halfspaces.iter().map(|h| h.bound.clone()).collect();
        (rows, rhs)
    }

    /// Deduplicates, removes redundant half-spaces via exact LP, and sorts.
    fn canonicalize(&mut self) {
        for h in &mut self.halfspaces {
            *h = h.canonical();
        }
        self.halfspaces.sort();
        self.halfspaces.dedup();

        let (rows, rhs) = self.rows_matrix();
        if !lp::is_feasible(&rows, &rhs) {
            self.halfspaces.clear();
            self.feasible = false;
            self.vrep_cache = OnceLock::new();
            return;
        }
        self.feasible = true;

        let m = self.halfspaces.len();
        let mut kept = vec![true; m];
        for i in 0..m {
            let sub_rows: Vec<Vec<Rat>> = (0..m)
                .filter(|&j| j != i && kept[j])
                .map(|j| rows[j].clone())
                .collect();
            let sub_rhs: Vec<Rat> = (0..m)
                .filter(|&j| j != i && kept[j])
                .map(|j| rhs[j].clone())
                .collect();
            match lp::maximize(&rows[i], &sub_rows, &sub_rhs) {
                LpOutcome::Optimal { value, .. } if value <= rhs[i] => kept[i] = false,
                _ => {}
            }
        }
        let mut idx = 0;
        self.halfspaces.retain(|_| {
            let keep = kept[idx];
            idx += 1;
            keep
        });
        self.vrep_cache = OnceLock::new();
    }

    /// Intersection; redundant half-spaces of the conjunction are removed.
    pub fn intersect(&self, other: &HPolytope) -> Result<HPolytope, GeomError> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if !self.feasible || !other.feasible {
            return Ok(Self::empty(self.dim));
        }
        let rows = self
            .halfspaces
            .iter()
            .chain(&other.halfspaces)
            .map(|h| (h.normal.clone(), h.bound.clone()));
        Self::new(self.dim, rows)
    }

    /// Exact membership.
    pub fn contains_point(&self, x: &QVector) -> Result<bool, GeomError> {
        if x.dim() != self.dim {
            return Err(GeomError::DimensionMismatch {
                left: self.dim,
                right: x.dim(),
            });
        }
        Ok(self.feasible && self.halfspaces.iter().all(|h| h.contains(x)))
    }

    /// Exact set containment `other subseteq self`, decided by maximizing
    /// each half-space of `self` over `other`.
    pub fn contains(&self, other: &HPolytope) -> Result<bool, GeomError> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if !other.feasible {
            return Ok(true);
        }
        if !self.feasible {
            return Ok(false);
        }
        let (rows, rhs) = other.rows_matrix();
        for h in &self.halfspaces {
            match lp::maximize(&h.normal.coords, &rows, &rhs) {
                LpOutcome::Unbounded => return Ok(false),
                LpOutcome::Optimal { value, .. } => {
                    if value > h.bound {
                        return Ok(false);
                    }
                }
                LpOutcome::Infeasible => unreachable!("feasibility checked above"),
            }
        }
        Ok(true)
    }

    /// Set equality: syntactic canonical-form check, semantic fallback.
    pub fn set_eq(&self, other: &HPolytope) -> Result<bool, GeomError> {
        if self == other {
            return Ok(true);
        }
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// True when the polyhedron is bounded (the empty set counts as
    /// bounded).
    pub fn is_bounded(&self) -> bool {
        if !self.feasible {
            return true;
        }
        let (rows, rhs) = self.rows_matrix();
        for axis in 0..self.dim {
            let mut obj = vec![Rat::zero(); self.dim];
            obj[axis] = Rat::one();
            if matches!(lp::maximize(&obj, &rows, &rhs), LpOutcome::Unbounded) {
                return false;
            }
            if matches!(lp::minimize(&obj, &rows, &rhs), LpOutcome::Unbounded) {
                return false;
            }
        }
        true
    }

    /// Dimension of the affine hull; `-1` for the infeasible polyhedron.
    pub fn dimension(&self) -> i64 {
        if !self.feasible {
            return -1;
        }
        let (rows, rhs) = self.rows_matrix();
        let mut equality_normals = Vec::new();
        for (i, h) in self.halfspaces.iter().enumerate() {
            match lp::minimize(&h.normal.coords, &rows, &rhs) {
                LpOutcome::Optimal { value, .. } if value == rhs[i] => {
                    equality_normals.push(h.normal.coords.clone());
                }
                _ => {}
            }
        }
        self.dim as i64 - linalg::rank(&equality_normals) as i64
    }

    /// Exact coordinate projection: eliminates `drop_axis` by
    /// Fourier-Motzkin and canonicalizes. Requires ambient dimension >= 2
    /// and a feasible input.
    pub fn project(&self, drop_axis: usize) -> Result<HPolytope, GeomError> {
        if self.dim < 2 {
            return Err(GeomError::Invalid(
                "projection requires ambient dimension >= 2".into(),
            ));
        }
        if drop_axis >= self.dim {
            return Err(GeomError::Invalid(format!(
                "projection axis {drop_axis} out of range for dimension {}",
                self.dim
            )));
        }
        if !self.feasible {
            return Err(GeomError::Infeasible);
        }

        let strip = |h: &HalfSpace| -> QVector {
            let coords: Vec<Rat> = h
                .normal
                .coords
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop_axis)
                .map(|(_, c)| c.clone())
                .collect();
            QVector::new(coords)
        };

        let mut zero_rows = Vec::new();
        let mut pos_rows = Vec::new();
        let mut neg_rows = Vec::new();
        for h in &self.halfspaces {
            let c = &h.normal.coords[drop_axis];
            if c.is_zero() {
                zero_rows.push((strip(h), h.bound.clone()));
            } else if c.is_positive() {
                pos_rows.push((strip(h), h.bound.clone(), c.clone()));
            } else {
                neg_rows.push((strip(h), h.bound.clone(), c.clone()));
            }
        }

        // Fourier-Motzkin squares the constraint count; once the cross
        // term gets large it is cheaper to project the generators
        // instead (the image of conv(V) + cone(R) is the hull of the
        // projected generators). Both routes land in the same canonical
        // form.
        if zero_rows.len() + pos_rows.len() * neg_rows.len() > 48
            && self.dim <= MAX_DIM
        {
            let vrep = self.vertex_enumerate()?;
            let strip_pt = |v: &QVector| -> QVector {
                let coords: Vec<Rat> = v
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop_axis)
                    .map(|(_, c)| c.clone())
                    .collect();
                QVector::new(coords)
            };
            let verts: Vec<QVector> = vrep.vertices.iter().map(&strip_pt).collect();
            let rays: Vec<QVector> = vrep
                .rays
                .iter()
                .map(&strip_pt)
                .filter(|r| !r.is_zero())
                .collect();
            return Self::from_generators(self.dim - 1, &verts, &rays);
        }

        let mut rows = zero_rows;
        for (ap, bp, cp) in &pos_rows {
            for (an, bn, cn) in &neg_rows {
                // cp > 0, cn < 0: (-cn) * row_p + cp * row_n kills the axis.
                let f_p = -cn.clone();
                let f_n = cp.clone();
                let normal = ap.scale(&f_p).add(&an.scale(&f_n));
                let bound = bp * &f_p + bn * &f_n;
                rows.push((normal, bound));
            }
        }
        Self::new(self.dim - 1, rows)
    }

    /// Drops several axes at once. Multi-axis drops go through the
    /// generator representation in a single step, skipping the
    /// intermediate eliminations; a single drop defers to [`Self::project`].
    pub fn project_out(&self, axes: &[usize]) -> Result<HPolytope, GeomError> {
        let mut sorted = axes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        match sorted.len() {
            0 => return Ok(self.clone()),
            1 => return self.project(sorted[0]),
            _ => {}
        }
        if sorted.iter().any(|&a| a >= self.dim) {
            return Err(GeomError::Invalid("projection axis out of range".into()));
        }
        if sorted.len() >= self.dim {
            return Err(GeomError::Invalid(
                "cannot project away every coordinate".into(),
            ));
        }
        if !self.feasible {
            return Err(GeomError::Infeasible);
        }
        let keep: Vec<usize> = (0..self.dim).filter(|i| !sorted.contains(i)).collect();
        let strip = |v: &QVector| -> QVector {
            QVector::new(keep.iter().map(|&i| v.coords[i].clone()).collect())
        };
        let vrep = self.vertex_enumerate()?;
        let verts: Vec<QVector> = vrep.vertices.iter().map(&strip).collect();
        let rays: Vec<QVector> = vrep
            .rays
            .iter()
            .map(&strip)
            .filter(|r| !r.is_zero())
            .collect();
        Self::from_generators(keep.len(), &verts, &rays)
    }
}

/// JSON form: `{"dim": s, "ineqs": [[a_1, ..., a_s, c], ...]}` with every
/// rational a `"p/q"` string. The infeasible polyhedron is the single raw
/// row `[0, ..., 0, -1]`.
#[derive(Serialize, Deserialize)]
struct HPolytopeWire {
    dim: usize,
    ineqs: Vec<Vec<String>>,
}

impl Serialize for HPolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut ineqs = Vec::new();
        if !self.feasible {
            let mut row = vec!["0".to_string(); self.dim];
            row.push("-1".to_string());
            ineqs.push(row);
        } else {
            for h in &self.halfspaces {
                let mut row: Vec<String> = h.normal.coords.iter().map(rat_to_string).collect();
                row.push(rat_to_string(&h.bound));
                ineqs.push(row);
            }
        }
        HPolytopeWire {
            dim: self.dim,
            ineqs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = HPolytopeWire::deserialize(d)?;
        let mut rows = Vec::with_capacity(wire.ineqs.len());
        for raw in &wire.ineqs {
            if raw.len() != wire.dim + 1 {
                return Err(D::Error::custom(format!(
                    "inequality row has {} entries, expected {}",
                    raw.len(),
                    wire.dim + 1
                )));
            }
            let parsed: Result<Vec<Rat>, _> =
                raw.iter().map(|s| crate::rational::parse_rat(s)).collect();
            let mut parsed = parsed.map_err(D::Error::custom)?;
            let bound = parsed.pop().unwrap();
            rows.push((QVector::new(parsed), bound));
        }
        HPolytope::new(wire.dim, rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn unit_square() -> HPolytope {
        HPolytope::from_box(&[(rat_i(0), rat_i(1)), (rat_i(0), rat_i(1))]).unwrap()
    }

    #[test]
    fn intersect_square_with_halfplane_gives_triangle() {
        let square = unit_square();
        let halfplane = HPolytope::new(
            2,
            [(QVector::from_ints(&[1, 1]), rat_i(1))],
        )
        .unwrap();
        let tri = square.intersect(&halfplane).unwrap();
        assert!(tri.is_feasible());
        // x1 <= 1 and x2 <= 1 are now redundant: 3 facets remain.
        assert_eq!(tri.halfspaces().len(), 3);
        assert!(tri.contains_point(&QVector::from_ints(&[0, 0])).unwrap());
        assert!(tri
            .contains_point(&QVector::new(vec![rat(1, 2), rat(1, 2)]))
            .unwrap());
        assert!(!tri.contains_point(&QVector::from_ints(&[1, 1])).unwrap());
    }

    #[test]
    fn intersect_is_idempotent() {
        let square = unit_square();
        let again = square.intersect(&square).unwrap();
        assert_eq!(square, again);
        assert!(square.set_eq(&again).unwrap());
    }

    #[test]
    fn disjoint_intersection_is_infeasible() {
        let a = HPolytope::new(1, [(QVector::from_ints(&[1]), rat_i(1))]).unwrap();
        let b = HPolytope::new(1, [(QVector::from_ints(&[-1]), rat_i(-2))]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert!(!c.is_feasible());
        assert_eq!(c, HPolytope::empty(1));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = HPolytope::full_space(2);
        let b = HPolytope::full_space(3);
        assert!(matches!(
            a.intersect(&b),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dimension_of_basic_shapes() {
        assert_eq!(unit_square().dimension(), 2);
        // segment [-1,1] x {0}
        let seg = HPolytope::new(
            2,
            [
                (QVector::from_ints(&[1, 0]), rat_i(1)),
                (QVector::from_ints(&[-1, 0]), rat_i(1)),
                (QVector::from_ints(&[0, 1]), rat_i(0)),
                (QVector::from_ints(&[0, -1]), rat_i(0)),
            ],
        )
        .unwrap();
        assert_eq!(seg.dimension(), 1);
        // single point
        let pt = HPolytope::from_box(&[(rat_i(3), rat_i(3))]).unwrap();
        assert_eq!(pt.dimension(), 0);
        assert_eq!(HPolytope::empty(2).dimension(), -1);
    }

    #[test]
    fn projection_of_square_and_triangle() {
        let square = unit_square();
        let shadow = square.project(1).unwrap();
        let interval = HPolytope::from_box(&[(rat_i(0), rat_i(1))]).unwrap();
        assert!(shadow.set_eq(&interval).unwrap());

        // triangle conv{(0,0),(2,0),(1,2)}: x2 >= 0, 2x1 + x2 <= 4, -2x1 + x2 <= 0
        let tri = HPolytope::new(
            2,
            [
                (QVector::from_ints(&[0, -1]), rat_i(0)),
                (QVector::from_ints(&[2, 1]), rat_i(4)),
                (QVector::from_ints(&[-2, 1]), rat_i(0)),
            ],
        )
        .unwrap();
        let shadow = tri.project(1).unwrap();
        let expected = HPolytope::from_box(&[(rat_i(0), rat_i(2))]).unwrap();
        assert!(shadow.set_eq(&expected).unwrap());
    }

    #[test]
    fn projection_derived_example() {
        // P = {x >= 0, 2x1 <= 1, 3x2 <= 1, 2x1 + 3x2 <= 2}, drop x2 -> [0, 1/2]
        let p = HPolytope::new(
            2,
            [
                (QVector::from_ints(&[-1, 0]), rat_i(0)),
                (QVector::from_ints(&[0, -1]), rat_i(0)),
                (QVector::from_ints(&[2, 0]), rat_i(1)),
                (QVector::from_ints(&[0, 3]), rat_i(1)),
                (QVector::from_ints(&[2, 3]), rat_i(2)),
            ],
        )
        .unwrap();
        let shadow = p.project(1).unwrap();
        let expected = HPolytope::from_box(&[(rat_i(0), rat(1, 2))]).unwrap();
        assert!(shadow.set_eq(&expected).unwrap());
    }

    #[test]
    fn containment_basics() {
        let small = unit_square();
        let big = HPolytope::from_box(&[(rat_i(0), rat_i(2)), (rat_i(0), rat_i(2))]).unwrap();
        assert!(big.contains(&small).unwrap());
        assert!(!small.contains(&big).unwrap());
        // unbounded vs bounded
        let orthant = HPolytope::nonneg_orthant(2).unwrap();
        assert!(orthant.contains(&small).unwrap());
        assert!(!small.contains(&orthant).unwrap());
        // empty set is contained in everything
        assert!(small.contains(&HPolytope::empty(2)).unwrap());
        assert!(!HPolytope::empty(2).contains(&small).unwrap());
    }

    #[test]
    fn zero_rows_are_resolved() {
        let trivial = HPolytope::new(2, [(QVector::zero(2), rat_i(1))]).unwrap();
        assert_eq!(trivial, HPolytope::full_space(2));
        let broken = HPolytope::new(2, [(QVector::zero(2), rat_i(-1))]).unwrap();
        assert!(!broken.is_feasible());
    }

    #[test]
    fn boundedness() {
        assert!(unit_square().is_bounded());
        assert!(!HPolytope::nonneg_orthant(2).unwrap().is_bounded());
        assert!(HPolytope::empty(3).is_bounded());
        assert!(!HPolytope::full_space(1).is_bounded());
    }

    #[test]
    fn canonical_form_scales_and_sorts() {
        let a = HPolytope::new(
            1,
            [
                (QVector::new(vec![rat(2, 3)]), rat(4, 3)),
                (QVector::new(vec![rat_i(-5)]), rat_i(0)),
            ],
        )
        .unwrap();
        let b = HPolytope::from_box(&[(rat_i(0), rat_i(2))]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip() {
        let p = unit_square();
        let js = serde_json::to_string(&p).unwrap();
        let back: HPolytope = serde_json::from_str(&js).unwrap();
        assert_eq!(p, back);
        let empty = HPolytope::empty(2);
        let js = serde_json::to_string(&empty).unwrap();
        assert!(js.contains("-1"));
        let back: HPolytope = serde_json::from_str(&js).unwrap();
        assert!(!back.is_feasible());
    }
}
