//! Exact stabilization analysis along lines and rays, and unstable-point
//! detection, for chains whose rows are affine in `1/m`.
//!
//! Everything is phrased in `mu = 1/m`: row slacks along a line are
//! quotients of polynomials of degree at most 1 in `mu`, vertex paths are
//! quotients of polynomials of degree at most the ambient dimension, and
//! every "for all large m" question is the sign of a polynomial near
//! zero-plus, constant on an explicitly computable root-free interval.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::ChainError;
use crate::exactgeom::{HPolytope, QVector};
use crate::poly::{cramer_poly, Poly};
use crate::rational::{rat, rat_i, rat_to_string, Rat};

use super::{LineQuery, ParametricChain};

/// Exit value as a function of `m`: `(c m + d) / (a m + b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusFn {
    #[serde(with = "crate::rational::rat_string")]
    pub c: Rat,
    #[serde(with = "crate::rational::rat_string")]
    pub d: Rat,
    #[serde(with = "crate::rational::rat_string")]
    pub a: Rat,
    #[serde(with = "crate::rational::rat_string")]
    pub b: Rat,
}

impl MobiusFn {
    pub fn eval(&self, m: u64) -> Option<Rat> {
        let mr = rat_i(m as i64);
        let den = &self.a * &mr + &self.b;
        if den.is_zero() {
            return None;
        }
        Some((&self.c * &mr + &self.d) / den)
    }

    /// Constant as a function of `m` iff the cross-determinant vanishes.
    pub fn is_constant(&self) -> bool {
        &self.c * &self.b - &self.d * &self.a == Rat::zero()
    }

    /// Limit as `m` grows; `None` when the value diverges.
    pub fn limit(&self) -> Option<Rat> {
        if !self.a.is_zero() {
            Some(&self.c / &self.a)
        } else if self.c.is_zero() {
            Some(&self.d / &self.b)
        } else {
            None
        }
    }
}

impl std::fmt::Display for MobiusFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}m + {})/({}m + {})",
            rat_to_string(&self.c),
            rat_to_string(&self.d),
            rat_to_string(&self.a),
            rat_to_string(&self.b)
        )
    }
}

/// Outcome of a line-stabilization query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineVerdict {
    /// The exit value equals `value` for every `m >= m0` (and not at
    /// `m0 - 1` when `m0` exceeds the first valid instance).
    Stabilizes {
        m0: u64,
        #[serde(with = "crate::rational::rat_string")]
        value: Rat,
    },
    /// The exit value is eventually the strictly varying Mobius function
    /// of the binding row; it never becomes constant.
    Never {
        binding_row: usize,
        exit: MobiusFn,
        limit: Option<String>,
    },
    /// The exit values decrease somewhere: the chain is not increasing
    /// along this line.
    NonMonotone { witness_m: u64 },
}

struct LineAnalysis {
    /// Per row: slack numerator `C + D mu` and denominator `A + B mu`
    /// of the exit bound `(C m + D)/(A m + B)`.
    rows: Vec<(Poly, Poly)>,
    /// All decisions are stable for `m > structural_m`.
    structural_m: u64,
}

fn line_analysis(chain: &ParametricChain, query: &LineQuery) -> LineAnalysis {
    let mut rows = Vec::with_capacity(chain.rows().len());
    let mut polys: Vec<Poly> = Vec::new();
    for r in chain.rows() {
        let a = r.alpha.dot(&query.direction);
        let b = r.beta.dot(&query.direction);
        let c = &r.bound_alpha - r.alpha.dot(&query.base);
        let d = &r.bound_beta - r.beta.dot(&query.base);
        let num = Poly::affine(c, d);
        let den = Poly::affine(a, b);
        polys.push(num.clone());
        polys.push(den.clone());
        rows.push((num, den));
    }
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            // pairwise order of the Mobius bounds
            let cross = rows[i].0.mul(&rows[j].1).sub(&rows[j].0.mul(&rows[i].1));
            polys.push(cross);
        }
    }
    LineAnalysis {
        rows,
        structural_m: structural_threshold(&polys),
    }
}

/// Smallest `M` such that every listed polynomial has constant sign on
/// `mu in (0, 1/M)`.
fn structural_threshold(polys: &[Poly]) -> u64 {
    let mut m = 1u64;
    for p in polys {
        if let Some(r) = p.positive_root_free_radius() {
            // need 1/M < r, i.e. M > 1/r
            let bound = (Rat::one() / r).ceil().to_integer();
            let bound: u64 = bound.try_into().unwrap_or(u64::MAX);
            m = m.max(bound + 1);
        }
    }
    m
}

/// Exit value of the ray `base + t dir` in `P_m`, directly from the
/// analyzed rows; `None` means unbounded in that direction.
fn exit_at(analysis: &LineAnalysis, m: u64) -> Option<Rat> {
    let mu = rat(1, m as i64);
    let mut best: Option<Rat> = None;
    for (num, den) in &analysis.rows {
        let d = den.eval(&mu);
        if d.is_positive() {
            let t = num.eval(&mu) / d;
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
    }
    best
}

/// True when the base point lies in `P_m`.
fn base_inside_at(analysis: &LineAnalysis, m: u64) -> bool {
    let mu = rat(1, m as i64);
    analysis
        .rows
        .iter()
        .all(|(num, _)| !num.eval(&mu).is_negative())
}

/// Decides how the exit value `t_m = sup{t : base + t dir in P_m}`
/// behaves: eventually constant (with the exact first stable index),
/// never constant (with the exact eventual Mobius form), or decreasing
/// somewhere (the chain is not increasing along the line).
pub fn line_stabilization(
    chain: &ParametricChain,
    query: &LineQuery,
    m_range: std::ops::RangeInclusive<u64>,
) -> Result<LineVerdict, ChainError> {
    if m_range.is_empty() || *m_range.start() == 0 {
        return Err(ChainError::EmptyRange);
    }
    if query.base.dim() != chain.dim_ambient() {
        return Err(ChainError::Invalid("query dimension mismatch".into()));
    }
    let analysis = line_analysis(chain, query);
    let scan_end = analysis.structural_m.max(*m_range.end()) + 1;

    // First instance containing the base point; the base is eventually
    // inside iff every slack numerator is eventually nonnegative.
    let eventually_inside = analysis
        .rows
        .iter()
        .all(|(num, _)| num.sign_near_zero_plus() >= 0);
    let m_in = (*m_range.start()..=scan_end).find(|&m| base_inside_at(&analysis, m));
    let Some(m_in) = m_in else {
        return Err(ChainError::BaseOutsideChain);
    };
    if !eventually_inside {
        return Err(ChainError::BaseOutsideChain);
    }

    // Eventual binding row: among rows with eventually positive
    // denominator, the pairwise-minimal Mobius bound near mu = 0+.
    let active: Vec<usize> = (0..analysis.rows.len())
        .filter(|&k| analysis.rows[k].1.sign_near_zero_plus() > 0)
        .collect();
    if active.is_empty() {
        return Err(ChainError::Invalid(
            "instances are eventually unbounded along the direction".into(),
        ));
    }
    let mut binding = active[0];
    for &k in &active[1..] {
        let cross = analysis.rows[k]
            .0
            .mul(&analysis.rows[binding].1)
            .sub(&analysis.rows[binding].0.mul(&analysis.rows[k].1));
        if cross.sign_near_zero_plus() < 0 {
            binding = k;
        }
    }
    let (num, den) = &analysis.rows[binding];
    let exit = MobiusFn {
        c: num.coeff(0),
        d: num.coeff(1),
        a: den.coeff(0),
        b: den.coeff(1),
    };

    // Scan the finite prefix where anything can still change.
    let mut prev: Option<Rat> = None;
    let mut last_change: Option<u64> = None;
    let mut values: Vec<(u64, Rat)> = Vec::new();
    for m in m_in..=scan_end {
        let Some(t) = exit_at(&analysis, m) else {
            return Err(ChainError::Invalid(format!(
                "instance m = {m} is unbounded along the direction"
            )));
        };
        if let Some(p) = &prev {
            if t < *p {
                return Ok(LineVerdict::NonMonotone { witness_m: m });
            }
            if t != *p {
                last_change = Some(m);
            }
        }
        values.push((m, t.clone()));
        prev = Some(t);
    }

    if exit.is_constant() {
        let value = exit.eval(scan_end).expect("eventually positive denominator");
        // exact first index from which the value never changes again
        let m0 = match last_change {
            Some(m) => m,
            None => m_in,
        };
        debug_assert!(values.iter().all(|(m, t)| *m < m0 || *t == value));
        Ok(LineVerdict::Stabilizes { m0, value })
    } else {
        // strictly varying tail: decreasing means non-monotone
        let tail_slope = &exit.c * &exit.b - &exit.d * &exit.a;
        if tail_slope.is_negative() {
            return Ok(LineVerdict::NonMonotone {
                witness_m: scan_end + 1,
            });
        }
        Ok(LineVerdict::Never {
            binding_row: binding,
            exit: exit.clone(),
            limit: exit.limit().map(|l| rat_to_string(&l)),
        })
    }
}

/// One sampled ray with its verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RayStabilization {
    pub direction: Vec<String>,
    pub verdict: LineVerdict,
}

/// Outcome of the ray-sampling closedness check: if every sampled ray
/// from the origin stabilizes, each sampled boundary point of the union
/// must already lie in some instance; if some ray never stabilizes, the
/// closedness hypothesis fails and nothing is asserted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnionClosednessReport {
    pub rays: Vec<RayStabilization>,
    pub hypothesis_holds: bool,
    pub witness_failure: Option<Vec<String>>,
    /// Number of stabilized boundary points confirmed to lie in their
    /// stabilizing instance (present only when the hypothesis holds).
    pub boundary_points_verified: Option<usize>,
}

/// Samples rays from the origin: the coordinate axes, the diagonal, the
/// directions of the limit polytope's nonzero vertices (where failures
/// concentrate), then seeded random nonnegative directions up to
/// `sample_rays` in total.
pub fn union_closedness_check(
    chain: &ParametricChain,
    sample_rays: usize,
    seed: u64,
    m_range: std::ops::RangeInclusive<u64>,
) -> Result<UnionClosednessReport, ChainError> {
    let s = chain.dim_ambient();
    let mut directions: Vec<QVector> = Vec::new();
    for i in 0..s {
        directions.push(QVector::unit(s, i));
    }
    directions.push(QVector::new(vec![Rat::one(); s]));
    if let Ok(limit) = chain.limit_polytope() {
        if let Ok(v) = limit.vertex_enumerate() {
            for vertex in &v.vertices {
                if !vertex.is_zero()
                    && vertex.coords().iter().all(|c| !c.is_negative())
                {
                    directions.push(vertex.primitive());
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while directions.len() < sample_rays {
        let coords: Vec<Rat> = (0..s)
            .map(|_| rat(rng.gen_range(0..=6), rng.gen_range(1..=3)))
            .collect();
        let v = QVector::new(coords);
        if !v.is_zero() {
            directions.push(v.primitive());
        }
    }
    directions.dedup();

    let mut rays = Vec::new();
    let mut witness: Option<QVector> = None;
    let mut verified = 0usize;
    let mut all_stabilize = true;
    for dir in &directions {
        let query = LineQuery::new(QVector::zero(s), dir.clone())?;
        let verdict = line_stabilization(chain, &query, m_range.clone())?;
        match &verdict {
            LineVerdict::Stabilizes { m0, value } => {
                // the stable boundary point of the union along this ray
                // lies in P_{m0}
                let point = query.direction.scale(value);
                let inst = chain.instantiate(*m0)?;
                if inst.contains_point(&point)? {
                    verified += 1;
                }
            }
            LineVerdict::Never { .. } => {
                all_stabilize = false;
                if witness.is_none() {
                    witness = Some(dir.clone());
                }
            }
            LineVerdict::NonMonotone { .. } => {
                all_stabilize = false;
                if witness.is_none() {
                    witness = Some(dir.clone());
                }
            }
        }
        rays.push(RayStabilization {
            direction: dir.coords().iter().map(rat_to_string).collect(),
            verdict,
        });
    }
    Ok(UnionClosednessReport {
        hypothesis_holds: all_stabilize,
        witness_failure: witness.map(|w| w.coords().iter().map(rat_to_string).collect()),
        boundary_points_verified: all_stabilize.then_some(verified),
        rays,
    })
}

/// Why a point is unstable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnstableKind {
    /// A vertex path with non-constant position converges here: the
    /// path is a nonconstant rational function of `1/m`, so it takes
    /// each value finitely often and every neighborhood of the limit
    /// meets infinitely many distinct vertex positions.
    MovingVertex,
    /// A stationary vertex lies on a facet whose supporting half-space
    /// genuinely varies with `m`: distinct `m` give distinct local cones.
    RotatingFacet { row: usize },
}

/// An unstable point with its certificate data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnstablePoint {
    pub point: Vec<String>,
    pub kind: UnstableKind,
    pub basis_rows: Vec<usize>,
}

/// Output of [`unstable_points`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnstableReport {
    pub points: Vec<UnstablePoint>,
    /// All structure is provably constant beyond this index.
    pub stable_beyond_m: u64,
    /// Shrinking-box evidence per point: for boxes of half-width
    /// `1/2^k`, the number of distinct instance intersections across the
    /// sampled range (distinct counts growing with the sample certify
    /// instability empirically).
    pub box_evidence: Vec<Vec<(u64, usize)>>,
}

impl UnstableReport {
    pub fn point_vectors(&self) -> Vec<QVector> {
        self.points
            .iter()
            .map(|p| {
                QVector::new(
                    p.point
                        .iter()
                        .map(|s| crate::rational::parse_rat(s).unwrap())
                        .collect(),
                )
            })
            .collect()
    }
}

/// Finds every unstable point of an increasing chain exactly: limits of
/// non-constant vertex paths, plus stationary vertices on genuinely
/// rotating facets. Vertex paths are computed symbolically over
/// `Q(mu)` via Cramer's rule; eventual feasibility of a path and
/// eventual facet-ness are signs of explicit polynomials near `0+`.
pub fn unstable_points(
    chain: &ParametricChain,
    m_range: std::ops::RangeInclusive<u64>,
    resolution: u32,
) -> Result<UnstableReport, ChainError> {
    if m_range.is_empty() || *m_range.start() == 0 {
        return Err(ChainError::EmptyRange);
    }
    let s = chain.dim_ambient();
    let rows = chain.rows();
    // Row data as polynomials in mu.
    let normals: Vec<Vec<Poly>> = rows
        .iter()
        .map(|r| {
            (0..s)
                .map(|j| {
                    Poly::affine(r.alpha.coords()[j].clone(), r.beta.coords()[j].clone())
                })
                .collect()
        })
        .collect();
    let bounds: Vec<Poly> = rows
        .iter()
        .map(|r| Poly::affine(r.bound_alpha.clone(), r.bound_beta.clone()))
        .collect();

    let mut sign_polys: Vec<Poly> = Vec::new();
    struct BasisPath {
        basis: Vec<usize>,
        limit: QVector,
        constant: bool,
        tight_rows: Vec<usize>,
    }
    let mut paths: Vec<BasisPath> = Vec::new();

    use itertools::Itertools;
    for subset in (0..rows.len()).combinations(s) {
        let m: Vec<Vec<Poly>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let b: Vec<Poly> = subset.iter().map(|&i| bounds[i].clone()).collect();
        let Some((nums, det)) = cramer_poly(&m, &b) else {
            continue;
        };
        sign_polys.push(det.clone());
        // eventual feasibility: every row slack has the sign of det (or
        // vanishes identically) near 0+
        let det_sign = det.sign_near_zero_plus();
        let mut feasible = true;
        let mut tight_rows = Vec::new();
        for (r, normal) in normals.iter().enumerate() {
            let mut lhs = Poly::zero();
            for (nj, xj) in normal.iter().zip(&nums) {
                lhs = lhs.add(&nj.mul(xj));
            }
            let slack = bounds[r].mul(&det).sub(&lhs);
            if slack.is_zero() {
                tight_rows.push(r);
                continue;
            }
            sign_polys.push(slack.clone());
            if slack.sign_near_zero_plus() * det_sign < 0 {
                feasible = false;
                break;
            }
        }
        if !feasible {
            continue;
        }
        // bounded limit: valuations of the numerators reach the
        // determinant's
        let v = det.valuation().expect("det is nonzero");
        if nums
            .iter()
            .any(|n| !n.is_zero() && n.valuation().unwrap() < v)
        {
            // diverging vertex path: instances would be unbounded
            return Err(ChainError::UnboundedInstance {
                m: *m_range.start(),
            });
        }
        let det_lead = det.coeff(v);
        let limit = QVector::new(nums.iter().map(|n| n.coeff(v) / &det_lead).collect());
        let constant = nums
            .iter()
            .zip(limit.coords())
            .all(|(n, c)| *n == det.scale(c));
        paths.push(BasisPath {
            basis: subset,
            limit,
            constant,
            tight_rows,
        });
    }

    let stable_beyond = structural_threshold(&sign_polys).max(*m_range.end());
    let probe_m = stable_beyond + 1;
    let probe = chain.instantiate(probe_m)?;
    let probe_vrep = probe.vertex_enumerate()?;
    if !probe_vrep.is_bounded() {
        return Err(ChainError::UnboundedInstance { m: probe_m });
    }

    let mut points: Vec<UnstablePoint> = Vec::new();
    for path in &paths {
        if !path.constant {
            points.push(UnstablePoint {
                point: path.limit.coords().iter().map(rat_to_string).collect(),
                kind: UnstableKind::MovingVertex,
                basis_rows: path.basis.clone(),
            });
            continue;
        }
        // stationary vertex: look for an identically tight row whose
        // half-space varies as a set and still supports a facet at the
        // probe (structure is constant beyond the threshold)
        let incident: BTreeSet<usize> = path
            .basis
            .iter()
            .chain(&path.tight_rows)
            .copied()
            .collect();
        for &r in &incident {
            if rows[r].is_set_constant() {
                continue;
            }
            let normal = rows[r].normal_at(probe_m);
            let bound = rows[r].bound_at(probe_m);
            if normal.is_zero() {
                continue;
            }
            let is_facet = probe.halfspaces().iter().any(|h| {
                // same half-space up to positive scaling
                let hn = h.normal().coords();
                let rn = normal.coords();
                let mut ext_h: Vec<Rat> = hn.to_vec();
                ext_h.push(h.bound().clone());
                let mut ext_r: Vec<Rat> = rn.to_vec();
                ext_r.push(bound.clone());
                crate::linalg::rank(&[ext_h.clone(), ext_r.clone()]) == 1
                    && crate::linalg::dot(hn, rn).is_positive()
            });
            if is_facet {
                points.push(UnstablePoint {
                    point: path.limit.coords().iter().map(rat_to_string).collect(),
                    kind: UnstableKind::RotatingFacet { row: r },
                    basis_rows: path.basis.clone(),
                });
                break;
            }
        }
    }
    points.sort_by(|a, b| a.point.cmp(&b.point).then(a.basis_rows.cmp(&b.basis_rows)));
    points.dedup_by(|a, b| a.point == b.point);

    // Shrinking-box evidence: count distinct intersections over a sample
    // of the range for each box half-width 1/2^k.
    let sample: Vec<u64> = {
        let (lo, hi) = (*m_range.start(), *m_range.end());
        let step = ((hi - lo) / 7).max(1);
        (0..8).map(|i| (lo + i * step).min(hi)).collect()
    };
    let mut box_evidence = Vec::new();
    for p in &points {
        let center = QVector::new(
            p.point
                .iter()
                .map(|s| crate::rational::parse_rat(s).unwrap())
                .collect(),
        );
        let mut per_box = Vec::new();
        for k in 1..=resolution.max(1) {
            let half = rat(1, 1 << k.min(30));
            let ranges: Vec<(Rat, Rat)> = center
                .coords()
                .iter()
                .map(|c| (c - &half, c + &half))
                .collect();
            let cube = HPolytope::from_box(&ranges)?;
            let mut seen: Vec<HPolytope> = Vec::new();
            for &m in &sample {
                let slice = chain.instantiate(m)?.intersect(&cube)?;
                if !seen.iter().any(|q| *q == slice) {
                    seen.push(slice);
                }
            }
            per_box.push((k as u64, seen.len()));
        }
        box_evidence.push(per_box);
    }

    Ok(UnstableReport {
        points,
        stable_beyond_m: stable_beyond,
        box_evidence,
    })
}
