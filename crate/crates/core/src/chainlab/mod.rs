//! Parametric chains of polytopes with every row entry affine in `1/m`.
//!
//! On this class the exit value of any line is a quotient of functions
//! affine in `1/m`, so eventual monotonicity, eventual constancy and
//! limit positions are exactly decidable. That is enough to express the
//! motivating pictures (facets translating or rotating with speed `1/m`)
//! while keeping every stabilization question decidable.

mod lemmas;
mod stabilize;

pub use lemmas::{escaping_ray, facet_cone_check, EscapingRay, FacetConeReport};
pub use stabilize::{
    line_stabilization, union_closedness_check, unstable_points, LineVerdict, MobiusFn,
    RayStabilization, UnionClosednessReport, UnstablePoint, UnstableReport,
};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ChainError;
use crate::exactgeom::{HPolytope, QVector};
use crate::rational::{parse_rat, rat_to_string, Rat};

/// One half-space family `(alpha + beta/m) . x <= bound_alpha +
/// bound_beta/m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRow {
    pub alpha: QVector,
    pub beta: QVector,
    pub bound_alpha: Rat,
    pub bound_beta: Rat,
}

impl ChainRow {
    /// Row normal at parameter `m`.
    pub fn normal_at(&self, m: u64) -> QVector {
        let inv = Rat::one() / Rat::from_integer(m.into());
        self.alpha.add(&self.beta.scale(&inv))
    }

    pub fn bound_at(&self, m: u64) -> Rat {
        let inv = Rat::one() / Rat::from_integer(m.into());
        &self.bound_alpha + &self.bound_beta * inv
    }

    /// True when the half-space it cuts out is the same set for every
    /// `m`: the extended vectors `(alpha, bound_alpha)` and
    /// `(beta, bound_beta)` are proportional, so varying `m` only
    /// rescales the inequality.
    pub fn is_set_constant(&self) -> bool {
        let mut a = self.alpha.coords().to_vec();
        a.push(self.bound_alpha.clone());
        let mut b = self.beta.coords().to_vec();
        b.push(self.bound_beta.clone());
        crate::linalg::rank(&[a, b]) <= 1
    }
}

/// A family `P_m` of polyhedra, one per positive integer `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricChain {
    dim: usize,
    rows: Vec<ChainRow>,
}

impl ParametricChain {
    pub fn new(dim: usize, rows: Vec<ChainRow>) -> Result<Self, ChainError> {
        if dim == 0 {
            return Err(ChainError::Invalid("ambient dimension must be >= 1".into()));
        }
        for r in &rows {
            if r.alpha.dim() != dim || r.beta.dim() != dim {
                return Err(ChainError::Invalid(format!(
                    "row vectors must have dimension {dim}"
                )));
            }
        }
        Ok(ParametricChain { dim, rows })
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[ChainRow] {
        &self.rows
    }

    /// The exact polytope `P_m`. Infeasibility is a data error: the type
    /// promises every instance nonempty.
    pub fn instantiate(&self, m: u64) -> Result<HPolytope, ChainError> {
        if m == 0 {
            return Err(ChainError::Invalid("m must be a positive integer".into()));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| (r.normal_at(m), r.bound_at(m)));
        let p = HPolytope::new(self.dim, rows.collect::<Vec<_>>())?;
        if !p.is_feasible() {
            return Err(ChainError::InfeasibleInstance { m });
        }
        Ok(p)
    }

    /// The limit polytope: all `beta` contributions dropped.
    pub fn limit_polytope(&self) -> Result<HPolytope, ChainError> {
        let rows = self
            .rows
            .iter()
            .map(|r| (r.alpha.clone(), r.bound_alpha.clone()));
        let p = HPolytope::new(self.dim, rows.collect::<Vec<_>>())?;
        if !p.is_feasible() {
            return Err(ChainError::Invalid("limit polytope is infeasible".into()));
        }
        Ok(p)
    }

    /// The corner-cut chain used throughout the tests and fixtures:
    /// `{x >= 0, x2 <= 2, x1 + x2 <= 3, x1 <= 3, x1 + 2 x2 <= 5 - 1/m}`.
    /// Strictly increasing, with the cut facet converging onto the
    /// intersection point (1, 2) of two stationary facets.
    pub fn corner_cut() -> ParametricChain {
        let z = Rat::zero;
        let rows = vec![
            ChainRow {
                alpha: QVector::from_ints(&[-1, 0]),
                beta: QVector::zero(2),
                bound_alpha: z(),
                bound_beta: z(),
            },
            ChainRow {
                alpha: QVector::from_ints(&[0, -1]),
                beta: QVector::zero(2),
                bound_alpha: z(),
                bound_beta: z(),
            },
            ChainRow {
                alpha: QVector::from_ints(&[0, 1]),
                beta: QVector::zero(2),
                bound_alpha: crate::rational::rat_i(2),
                bound_beta: z(),
            },
            ChainRow {
                alpha: QVector::from_ints(&[1, 1]),
                beta: QVector::zero(2),
                bound_alpha: crate::rational::rat_i(3),
                bound_beta: z(),
            },
            ChainRow {
                alpha: QVector::from_ints(&[1, 0]),
                beta: QVector::zero(2),
                bound_alpha: crate::rational::rat_i(3),
                bound_beta: z(),
            },
            ChainRow {
                alpha: QVector::from_ints(&[1, 2]),
                beta: QVector::zero(2),
                bound_alpha: crate::rational::rat_i(5),
                bound_beta: -Rat::one(),
            },
        ];
        ParametricChain::new(2, rows).unwrap()
    }
}

/// Result of the inclusion-monotonicity scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncreasingReport {
    pub increasing: bool,
    pub strictly: bool,
    /// First `m` with `P_m` not contained in `P_{m+1}`.
    pub first_violation: Option<u64>,
    /// First `m` with `P_m = P_{m+1}` (breaks strictness only).
    pub first_equality: Option<u64>,
}

/// Checks `P_m subseteq P_{m+1}` for consecutive `m` in the range;
/// strictness is certified by a vertex of `P_{m+1}` outside `P_m`.
pub fn is_increasing(
    chain: &ParametricChain,
    m_range: std::ops::RangeInclusive<u64>,
) -> Result<IncreasingReport, ChainError> {
    if m_range.is_empty() {
        return Err(ChainError::EmptyRange);
    }
    let mut report = IncreasingReport {
        increasing: true,
        strictly: true,
        first_violation: None,
        first_equality: None,
    };
    let (start, end) = (*m_range.start(), *m_range.end());
    let mut current = chain.instantiate(start)?;
    for m in start..end {
        let next = chain.instantiate(m + 1)?;
        if !next.contains(&current)? {
            report.increasing = false;
            report.strictly = false;
            report.first_violation = Some(m);
            return Ok(report);
        }
        // strict iff some vertex of the larger body escapes the smaller
        let strict = next
            .vertex_enumerate()?
            .vertices
            .iter()
            .any(|v| !current.contains_point(v).unwrap_or(false));
        if !strict && report.first_equality.is_none() {
            report.strictly = false;
            report.first_equality = Some(m);
        }
        current = next;
    }
    Ok(report)
}

/// A line (or ray from a base point) queried for stabilization.
/// Directions are canonicalized to coprime integers with positive
/// leading entry; exit values refer to the canonical direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineQuery {
    pub base: QVector,
    pub direction: QVector,
}

impl LineQuery {
    pub fn new(base: QVector, direction: QVector) -> Result<Self, ChainError> {
        if direction.is_zero() {
            return Err(ChainError::Invalid("direction must be nonzero".into()));
        }
        if base.dim() != direction.dim() {
            return Err(ChainError::Invalid(
                "base and direction dimensions differ".into(),
            ));
        }
        Ok(LineQuery {
            base,
            direction: direction.primitive_line_direction(),
        })
    }
}

/// JSON wire format for a chain: rows as alpha/beta coefficient lists
/// with `"p/q"` entries.
#[derive(Serialize, Deserialize)]
struct ChainRowWire {
    alpha: Vec<String>,
    beta: Vec<String>,
    bound_alpha: String,
    bound_beta: String,
}

#[derive(Serialize, Deserialize)]
struct ChainWire {
    dim: usize,
    rows: Vec<ChainRowWire>,
}

impl Serialize for ParametricChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ChainWire {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| ChainRowWire {
                    alpha: r.alpha.coords().iter().map(rat_to_string).collect(),
                    beta: r.beta.coords().iter().map(rat_to_string).collect(),
                    bound_alpha: rat_to_string(&r.bound_alpha),
                    bound_beta: rat_to_string(&r.bound_beta),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParametricChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = ChainWire::deserialize(d)?;
        let parse_vec = |v: &[String]| -> Result<QVector, D::Error> {
            let coords: Result<Vec<Rat>, _> = v.iter().map(|s| parse_rat(s)).collect();
            Ok(QVector::new(coords.map_err(D::Error::custom)?))
        };
        let mut rows = Vec::with_capacity(wire.rows.len());
        for r in &wire.rows {
            rows.push(ChainRow {
                alpha: parse_vec(&r.alpha)?,
                beta: parse_vec(&r.beta)?,
                bound_alpha: parse_rat(&r.bound_alpha).map_err(D::Error::custom)?,
                bound_beta: parse_rat(&r.bound_beta).map_err(D::Error::custom)?,
            });
        }
        ParametricChain::new(wire.dim, rows).map_err(D::Error::custom)
    }
}
