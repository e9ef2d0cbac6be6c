//! Randomized-but-exact verifiers for the two convex-geometry lemmas:
//! the escaping-ray construction for decreasing polytope chains around a
//! lower-dimensional core, and the facet-cone equality at a boundary
//! point of an LCT-polytope. Randomness only picks generic data; every
//! claimed property is verified with exact arithmetic before returning.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ChainError, GeomError};
use crate::exactgeom::{HPolytope, QVector, VRep};

fn lctpoly_vrep(vertices: Vec<QVector>) -> VRep {
    VRep {
        vertices,
        rays: Vec::new(),
    }
}
use crate::lctcore::{build_lct_polytope, ResolutionDatum};
use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::rational::{rat_i, rat_to_string, Rat};

/// A ray `alpha + lambda e` meeting every chain member outside the core,
/// with one exactly verified witness point per member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapingRay {
    pub alpha: QVector,
    pub direction: QVector,
    /// Per chain member: `(lambda_i, alpha + lambda_i * direction)` with
    /// the point inside `T_i` and outside `T`.
    pub witnesses: Vec<(Rat, QVector)>,
}

/// Affine change of coordinates `x = basis * y + origin` applied to the
/// constraint side: `n . x <= c` becomes `(basis^T n) . y <= c - n . origin`.
fn transform_polytope(
    p: &HPolytope,
    basis_cols: &[Vec<Rat>],
    origin: &QVector,
) -> Result<HPolytope, GeomError> {
    let dim = basis_cols.len();
    let rows = p.halfspaces().iter().map(|h| {
        let n = h.normal().coords();
        let new_normal: Vec<Rat> =
            basis_cols.iter().map(|col| linalg::dot(n, col)).collect();
        let new_bound = h.bound() - h.normal().dot(origin);
        (QVector::new(new_normal), new_bound)
    });
    // an affine image of a nonempty set is nonempty; skip the LP sweep
    HPolytope::new_unreduced(dim, rows.collect::<Vec<_>>(), p.is_feasible())
}

/// Exit parameter `sup{t >= 0 : base + t d in p}`; `None` when unbounded.
/// Requires `base` in `p`.
fn ray_exit(p: &HPolytope, base: &QVector, d: &QVector) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    for h in p.halfspaces() {
        let pairing = h.normal().dot(d);
        if pairing.is_positive() {
            let t = h.slack(base) / pairing;
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
    }
    best
}

/// Fixes the last `fixed.dim()` coordinates of `p` and returns the slice
/// polytope in the leading coordinates.
fn slice_fixing_tail(p: &HPolytope, lead: usize, fixed: &QVector) -> Result<HPolytope, GeomError> {
    let rows = p.halfspaces().iter().map(|h| {
        let n = h.normal().coords();
        let head = QVector::new(n[..lead].to_vec());
        let tail = QVector::new(n[lead..].to_vec());
        let bound = h.bound() - tail.dot(fixed);
        (head, bound)
    });
    HPolytope::new_unreduced(lead, rows.collect::<Vec<_>>(), false)
}

/// Implements the escaping-ray construction for a decreasing chain of
/// full-dimensional compact polytopes `T_1 superseteq ... superseteq T_N`
/// around a lower-dimensional compact convex core `T`: returns a point
/// `alpha` in `T` and a direction `e` such that the ray meets every `T_i`
/// outside `T`. The returned witnesses are verified exactly in the
/// original coordinates before the function returns.
pub fn escaping_ray(
    members: &[HPolytope],
    core: &HPolytope,
    seed: u64,
) -> Result<EscapingRay, ChainError> {
    let Some(first) = members.first() else {
        return Err(ChainError::Invalid("chain of polytopes is empty".into()));
    };
    let s = first.dim_ambient();
    // All checks below work on the vertex representations: the members
    // must be compact, so inclusion is vertex membership and dimension
    // is the affine rank of the vertex set.
    let affine_rank = |vertices: &[QVector]| -> usize {
        let dirs: Vec<Vec<Rat>> = vertices[1..]
            .iter()
            .map(|v| v.sub(&vertices[0]).coords().to_vec())
            .collect();
        linalg::rank(&dirs)
    };
    let mut member_vertices: Vec<Vec<QVector>> = Vec::with_capacity(members.len());
    for (i, t) in members.iter().enumerate() {
        if t.dim_ambient() != s {
            return Err(ChainError::Invalid("ambient dimensions differ".into()));
        }
        if !t.is_feasible() {
            return Err(ChainError::Invalid(format!("chain member {i} is empty")));
        }
        let vrep = t.vertex_enumerate()?;
        if !vrep.is_bounded() {
            return Err(ChainError::Geom(GeomError::Unbounded));
        }
        if affine_rank(&vrep.vertices) != s {
            return Err(ChainError::Invalid(format!(
                "chain member {i} is not full-dimensional"
            )));
        }
        member_vertices.push(vrep.vertices.clone());
    }
    for (i, pair) in members.windows(2).enumerate() {
        for v in &member_vertices[i + 1] {
            if !pair[0].contains_point(v)? {
                return Err(ChainError::Invalid(
                    "chain members must be decreasing under inclusion".into(),
                ));
            }
        }
    }
    if !core.is_feasible() {
        return Err(ChainError::Invalid("core must be a nonempty compact set".into()));
    }
    let core_vrep = core.vertex_enumerate()?;
    if !core_vrep.is_bounded() {
        return Err(ChainError::Invalid("core must be a nonempty compact set".into()));
    }
    let core_vertices = core_vrep.vertices.clone();
    let last = members.last().unwrap();
    for v in &core_vertices {
        if !last.contains_point(v)? {
            return Err(ChainError::Invalid(
                "core must be contained in every chain member".into(),
            ));
        }
    }
    let r = affine_rank(&core_vertices);
    if r >= s {
        return Err(ChainError::Invalid(format!(
            "core dimension {r} must be in [0, {})",
            s
        )));
    }

    // Affine change of coordinates sending the core into
    // [-1, 1]^r x {0}: origin at the vertex barycenter (relative
    // interior), first r basis columns spanning the core's affine hull.
    let count = rat_i(core_vertices.len() as i64);
    let mut origin = QVector::zero(s);
    for v in &core_vertices {
        origin = origin.add(v);
    }
    let origin = origin.scale(&(Rat::one() / count));

    let mut hull_dirs: Vec<Vec<Rat>> = Vec::new();
    for v in &core_vertices {
        let d = v.sub(&origin).coords().to_vec();
        hull_dirs.push(d);
        if linalg::rank(&hull_dirs) != hull_dirs.len() {
            hull_dirs.pop();
        }
    }
    debug_assert_eq!(hull_dirs.len(), r);
    let mut basis: Vec<Vec<Rat>> = hull_dirs;
    for i in 0..s {
        if basis.len() == s {
            break;
        }
        let mut e = vec![Rat::zero(); s];
        e[i] = Rat::one();
        basis.push(e);
        if linalg::rank(&basis) != basis.len() {
            basis.pop();
        }
    }

    // Coordinates of a point: y = basis^{-1}(x - origin), computed by
    // solving. Scale the leading columns so the core lands in [-1,1]^r.
    let coords_of = |x: &QVector, basis: &[Vec<Rat>]| -> Vec<Rat> {
        let cols: Vec<Vec<Rat>> = (0..s)
            .map(|i| basis.iter().map(|col| col[i].clone()).collect())
            .collect();
        linalg::solve_unique(&cols, &x.sub(&origin).coords().to_vec())
            .expect("basis is invertible")
    };
    for axis in 0..r {
        let mut maxabs = Rat::zero();
        for v in &core_vertices {
            let y = coords_of(v, &basis);
            let a = crate::rational::rat_abs(&y[axis]);
            if a > maxabs {
                maxabs = a;
            }
        }
        debug_assert!(maxabs.is_positive());
        basis[axis] = basis[axis].iter().map(|c| c * &maxabs).collect();
    }

    // Invertible affine maps carry vertices to vertices, so the known
    // vertex sets ride along instead of being re-enumerated.
    let members_t: Vec<HPolytope> = members
        .iter()
        .zip(&member_vertices)
        .map(|(t, verts)| {
            let p = transform_polytope(t, &basis, &origin)?;
            let mapped: Vec<QVector> = verts
                .iter()
                .map(|v| QVector::new(coords_of(v, &basis)))
                .collect();
            Ok(p.with_vrep(lctpoly_vrep(mapped)))
        })
        .collect::<Result<_, ChainError>>()?;
    let core_t = transform_polytope(core, &basis, &origin)?;
    let core_t = {
        let mapped: Vec<QVector> = core_vertices
            .iter()
            .map(|v| QVector::new(coords_of(v, &basis)))
            .collect();
        core_t.with_vrep(lctpoly_vrep(mapped))
    };

    // Project away the core coordinates and build the cones at the
    // origin of the projected images.
    let drop_axes: Vec<usize> = (0..r).collect();
    let projected: Vec<HPolytope> = members_t
        .iter()
        .map(|t| {
            if r == 0 {
                Ok(t.clone())
            } else {
                t.project_out(&drop_axes)
            }
        })
        .collect::<Result<_, _>>()?;
    let q = s - r;
    let zero_q = QVector::zero(q);
    let cones: Vec<HPolytope> = projected
        .iter()
        .map(|p| HPolytope::cone_from_polytope(&zero_q, p))
        .collect::<Result<_, _>>()?;
    let last_cone = cones.last().unwrap();

    // Generic hyperplane h . y = 1: not parallel to any face of any
    // projected image (no vanishing pairing with a vertex difference)
    // and meeting the smallest cone.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Option<(QVector, HPolytope)> = None;
    'draw: for _ in 0..256 {
        let h = QVector::new(
            (0..q)
                .map(|_| rat_i(rng.gen_range(-3i64..=3)))
                .collect(),
        );
        if h.is_zero() {
            continue;
        }
        for p in &projected {
            let verts = &p.vertex_enumerate()?.vertices;
            for (i, v) in verts.iter().enumerate() {
                for w in &verts[i + 1..] {
                    if h.dot(&v.sub(w)).is_zero() {
                        continue 'draw;
                    }
                }
            }
        }
        for cand in [h.clone(), h.scale(&-Rat::one())] {
            let mut rows: Vec<(QVector, Rat)> = last_cone
                .halfspaces()
                .iter()
                .map(|hs| (hs.normal().clone(), hs.bound().clone()))
                .collect();
            rows.push((cand.clone(), Rat::one()));
            rows.push((cand.scale(&-Rat::one()), -Rat::one()));
            let slice = HPolytope::new(q, rows)?;
            if slice.is_feasible() {
                chosen = Some((cand, slice));
                break 'draw;
            }
        }
    }
    let Some((_h, slice)) = chosen else {
        return Err(ChainError::Invalid(
            "no generic hyperplane met the smallest cone".into(),
        ));
    };
    let z = slice.vertex_enumerate()?.vertices[0].clone();
    debug_assert!(!z.is_zero());

    // Per member: exit of the ray 0 -> z in the projected image (strictly
    // positive since the projected image contains the origin and z lies
    // in the cone over it), then a preimage and the interior margin
    // epsilon, then the convex-combination witness.
    let mut witnesses_t: Vec<(Rat, QVector)> = Vec::new();
    for (t_i, p_i) in members_t.iter().zip(&projected) {
        let c_i = ray_exit(p_i, &zero_q, &z)
            .ok_or_else(|| ChainError::Invalid("projected image is unbounded".into()))?;
        debug_assert!(c_i.is_positive());
        let zc = z.scale(&c_i);
        let lambda = if r == 0 {
            c_i.clone()
        } else {
            let fiber = slice_fixing_tail(t_i, r, &zc)?;
            if !fiber.is_feasible() {
                return Err(ChainError::Invalid(
                    "projection produced an empty fiber".into(),
                ));
            }
            let y_i = fiber.vertex_enumerate()?.vertices[0].clone();
            // epsilon with (-eps y_i, 0) in the transformed core
            let mut dir = y_i.scale(&-Rat::one()).coords().to_vec();
            dir.extend(std::iter::repeat_n(Rat::zero(), s - r));
            let dir = QVector::new(dir);
            let eps = if dir.is_zero() {
                Rat::one()
            } else {
                match ray_exit(&core_t, &QVector::zero(s), &dir) {
                    Some(sigma) => {
                        debug_assert!(sigma.is_positive());
                        sigma / rat_i(2)
                    }
                    None => Rat::one(),
                }
            };
            &eps * &c_i / (&eps + Rat::one())
        };
        let mut w = vec![Rat::zero(); r];
        w.extend(z.scale(&lambda).coords().to_vec());
        witnesses_t.push((lambda, QVector::new(w)));
    }

    // Map back and verify the contract exactly in original coordinates.
    let to_original = |y: &QVector| -> QVector {
        let mut x = origin.coords().to_vec();
        for (c, col) in y.coords().iter().zip(&basis) {
            for (xi, bi) in x.iter_mut().zip(col) {
                *xi = &*xi + &(c * bi);
            }
        }
        QVector::new(x)
    };
    let mut e_coords = vec![Rat::zero(); r];
    e_coords.extend(z.coords().to_vec());
    let direction = to_original(&QVector::new(e_coords)).sub(&origin);
    let alpha = origin.clone();
    let mut witnesses = Vec::with_capacity(witnesses_t.len());
    for ((lambda, wt), t_i) in witnesses_t.into_iter().zip(members) {
        let x = to_original(&wt);
        if !t_i.contains_point(&x)? {
            return Err(ChainError::Invalid(format!(
                "witness {x} escaped its chain member; construction bug"
            )));
        }
        if core.contains_point(&x)? {
            return Err(ChainError::Invalid(format!(
                "witness {x} landed inside the core; construction bug"
            )));
        }
        let on_ray = alpha.add(&direction.scale(&lambda));
        debug_assert_eq!(on_ray, x);
        witnesses.push((lambda, x));
    }
    if !core.contains_point(&alpha)? {
        return Err(ChainError::Invalid("ray base must lie in the core".into()));
    }
    Ok(EscapingRay {
        alpha,
        direction,
        witnesses,
    })
}

/// Report of the facet-cone comparison at a boundary point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacetConeReport {
    /// Number of facets through the point that are not inside the
    /// dropped-coordinate hyperplane.
    pub facet_count: usize,
    /// Dimension of the cone over the projected facet set.
    pub cone_dim: usize,
    /// Whether that dimension equals `s - 1` (the lemma's hypothesis).
    pub hypothesis_holds: bool,
    /// When the hypothesis holds: whether the projected facet cone equals
    /// the projected polytope cone. A `false` here is a bug, not data.
    pub equality_holds: Option<bool>,
    pub counterexample: Option<Vec<String>>,
}

/// Maximum strict margin `delta` with some `x` in `c` violating every
/// listed constraint by at least `delta`. `None` when no such point.
fn strict_violation_point(
    c: &HPolytope,
    violated: &[(QVector, Rat)],
) -> Option<(Rat, QVector)> {
    let d = c.dim_ambient();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for h in c.halfspaces() {
        let mut row = h.normal().coords().to_vec();
        row.push(Rat::zero());
        rows.push(row);
        rhs.push(h.bound().clone());
    }
    for (n, b) in violated {
        // n . x >= b + delta  <=>  -n . x + delta <= -b
        let mut row: Vec<Rat> = n.coords().iter().map(|v| -v.clone()).collect();
        row.push(Rat::one());
        rows.push(row);
        rhs.push(-b.clone());
    }
    let mut cap = vec![Rat::zero(); d];
    cap.push(Rat::one());
    rows.push(cap.clone());
    rhs.push(Rat::one());
    let mut obj = vec![Rat::zero(); d];
    obj.push(Rat::one());
    match lp::maximize(&obj, &rows, &rhs) {
        LpOutcome::Optimal { value, point } if value.is_positive() => {
            Some((value, QVector::new(point[..d].to_vec())))
        }
        _ => None,
    }
}

/// Is the convex polyhedron `c` covered by the union of the convex
/// polyhedra `parts`? Exact: a point of `c` escapes the union iff for
/// every part some constraint is strictly violated, so we search over
/// choices of violated constraints with LP feasibility pruning.
fn covered_by_union(c: &HPolytope, parts: &[HPolytope]) -> Result<Option<QVector>, GeomError> {
    if !c.is_feasible() {
        return Ok(None);
    }
    if parts.iter().any(|p| p.is_feasible() && p.halfspaces().is_empty()) {
        return Ok(None); // some part is the whole space
    }
    fn search(
        c: &HPolytope,
        parts: &[HPolytope],
        idx: usize,
        chosen: &mut Vec<(QVector, Rat)>,
    ) -> Option<QVector> {
        match strict_violation_point(c, chosen) {
            None => None,
            Some((_, point)) => {
                if idx == parts.len() {
                    return Some(point);
                }
                for h in parts[idx].halfspaces() {
                    chosen.push((h.normal().clone(), h.bound().clone()));
                    if let Some(p) = search(c, parts, idx + 1, chosen) {
                        return Some(p);
                    }
                    chosen.pop();
                }
                None
            }
        }
    }
    Ok(search(c, parts, 0, &mut Vec::new()))
}

/// Checks the facet-cone identity at a boundary point `beta` of the
/// LCT-polytope of `datum`: with `pi` dropping the last coordinate and
/// `B` the facets through `beta` not inside `{x_s = 0}`, if the cone
/// over `pi(B)` at `pi(beta)` has dimension `s - 1` then it equals the
/// cone over `pi(P)`. A reported counterexample is a bug in the algebra,
/// not a property of the data.
pub fn facet_cone_check(
    datum: &ResolutionDatum,
    beta: &QVector,
) -> Result<FacetConeReport, ChainError> {
    let s = datum.s();
    if s < 2 {
        return Err(ChainError::Invalid("need at least two testing divisors".into()));
    }
    if beta.dim() != s {
        return Err(ChainError::Invalid("beta dimension mismatch".into()));
    }
    let p = build_lct_polytope(datum);
    if p.dimension() != s as i64 {
        return Err(ChainError::Geom(GeomError::NotFullDimensional {
            found: p.dimension(),
            ambient: s,
        }));
    }
    if !p.contains_point(beta)? {
        return Err(ChainError::Invalid("beta lies outside the polytope".into()));
    }
    let tight: Vec<usize> = p
        .halfspaces()
        .iter()
        .enumerate()
        .filter(|(_, h)| h.slack(beta).is_zero())
        .map(|(i, _)| i)
        .collect();
    if tight.is_empty() {
        return Err(ChainError::Invalid("beta is an interior point".into()));
    }

    let last = s - 1;
    let in_dropped_hyperplane = |i: usize| {
        let h = &p.halfspaces()[i];
        h.bound().is_zero()
            && h.normal()
                .coords()
                .iter()
                .enumerate()
                .all(|(j, c)| (j == last) != c.is_zero())
    };
    let fan: Vec<usize> = tight
        .iter()
        .copied()
        .filter(|&i| !in_dropped_hyperplane(i))
        .collect();

    let pi_beta = QVector::new(beta.coords()[..last].to_vec());
    let mut cones = Vec::new();
    let mut cone_dim = 0usize;
    for &i in &fan {
        let h = p.halfspaces()[i].clone();
        let mut rows: Vec<(QVector, Rat)> = p
            .halfspaces()
            .iter()
            .map(|g| (g.normal().clone(), g.bound().clone()))
            .collect();
        rows.push((h.normal().scale(&-Rat::one()), -h.bound().clone()));
        let facet = HPolytope::new(s, rows)?;
        let pi_facet = facet.project(last)?;
        // dimension of this facet's cone: the identity can only be (and
        // is only claimed) when a single projected facet already spans
        // dimension s - 1 -- a facet not parallel to the dropped axis.
        // The affine hull of the union is the wrong reading: two rays
        // spanning the plane satisfy it while covering nothing.
        let vrep = pi_facet.vertex_enumerate()?;
        let mut dirs: Vec<Vec<Rat>> = vrep
            .vertices
            .iter()
            .map(|v| v.sub(&pi_beta).coords().to_vec())
            .collect();
        dirs.extend(vrep.rays.iter().map(|r| r.coords().to_vec()));
        cone_dim = cone_dim.max(linalg::rank(&dirs));
        cones.push(HPolytope::cone_from_polytope(&pi_beta, &pi_facet)?);
    }
    let hypothesis_holds = !fan.is_empty() && cone_dim == s - 1;
    let mut report = FacetConeReport {
        facet_count: fan.len(),
        cone_dim,
        hypothesis_holds,
        equality_holds: None,
        counterexample: None,
    };
    if !hypothesis_holds {
        return Ok(report);
    }

    let pi_p = p.project(last)?;
    let big_cone = HPolytope::cone_from_polytope(&pi_beta, &pi_p)?;
    // Containment of each facet cone in the polytope cone is structural;
    // the content of the lemma is the reverse inclusion.
    for c in &cones {
        debug_assert!(big_cone.contains(c)?);
    }
    match covered_by_union(&big_cone, &cones)? {
        None => {
            report.equality_holds = Some(true);
        }
        Some(point) => {
            report.equality_holds = Some(false);
            report.counterexample =
                Some(point.coords().iter().map(rat_to_string).collect());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lctcore::{ResolutionRow, RowKind};
    use crate::rational::rat;

    fn box2(x: (i64, i64), y: (i64, i64)) -> HPolytope {
        HPolytope::from_box(&[(rat_i(x.0), rat_i(x.1)), (rat_i(y.0), rat_i(y.1))]).unwrap()
    }

    #[test]
    fn escaping_ray_shrinking_slabs() {
        // T_i = [-1,1] x [-1/i, 1/i], T = [-1,1] x {0}
        let members: Vec<HPolytope> = (1..=4)
            .map(|i| {
                HPolytope::from_box(&[
                    (rat_i(-1), rat_i(1)),
                    (rat(-1, i), rat(1, i)),
                ])
                .unwrap()
            })
            .collect();
        let core = HPolytope::new(
            2,
            [
                (QVector::from_ints(&[1, 0]), rat_i(1)),
                (QVector::from_ints(&[-1, 0]), rat_i(1)),
                (QVector::from_ints(&[0, 1]), rat_i(0)),
                (QVector::from_ints(&[0, -1]), rat_i(0)),
            ],
        )
        .unwrap();
        let ray = escaping_ray(&members, &core, 42).unwrap();
        assert_eq!(ray.witnesses.len(), 4);
        // the escaping direction must be vertical
        assert!(!ray.direction.coords()[1].is_zero());
        for (_, w) in &ray.witnesses {
            assert!(!core.contains_point(w).unwrap());
        }
    }

    #[test]
    fn escaping_ray_point_core() {
        // N = 1, T = {(0,0)}: any ray into the interior works.
        let members = vec![box2((-1, 1), (-1, 1))];
        let core = box2((0, 0), (0, 0));
        let ray = escaping_ray(&members, &core, 7).unwrap();
        assert_eq!(ray.alpha, QVector::zero(2));
        assert!(!ray.direction.is_zero());
        assert!(members[0].contains_point(&ray.witnesses[0].1).unwrap());
    }

    #[test]
    fn escaping_ray_rejects_bad_chains() {
        // not decreasing
        let members = vec![box2((0, 1), (0, 1)), box2((0, 2), (0, 2))];
        let core = box2((0, 1), (0, 0));
        assert!(escaping_ray(&members, &core, 1).is_err());
        // full-dimensional core
        let members = vec![box2((0, 2), (0, 2))];
        let core = box2((0, 1), (0, 1));
        assert!(escaping_ray(&members, &core, 1).is_err());
    }

    fn unit_square_datum() -> ResolutionDatum {
        ResolutionDatum::new(
            2,
            vec![
                ResolutionRow {
                    a: vec![rat_i(1), rat_i(0)],
                    b: rat_i(0),
                    label: "D1".into(),
                    kind: RowKind::StrictTransform,
                },
                ResolutionRow {
                    a: vec![rat_i(0), rat_i(1)],
                    b: rat_i(0),
                    label: "D2".into(),
                    kind: RowKind::StrictTransform,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn facet_cone_at_far_corner() {
        let report =
            facet_cone_check(&unit_square_datum(), &QVector::from_ints(&[1, 1])).unwrap();
        assert_eq!(report.facet_count, 2);
        assert!(report.hypothesis_holds);
        assert_eq!(report.equality_holds, Some(true));
    }

    #[test]
    fn facet_cone_hypothesis_fails_on_axis() {
        // beta = (1, 0) lies on {x2 = 0}; only the facet x1 = 1 remains
        // and its projection is the single point {1}: dimension 0.
        let report =
            facet_cone_check(&unit_square_datum(), &QVector::from_ints(&[1, 0])).unwrap();
        assert_eq!(report.facet_count, 1);
        assert_eq!(report.cone_dim, 0);
        assert!(!report.hypothesis_holds);
        assert_eq!(report.equality_holds, None);
    }

    #[test]
    fn facet_cone_interior_point_is_an_error() {
        let err = facet_cone_check(
            &unit_square_datum(),
            &QVector::new(vec![rat(1, 2), rat(1, 2)]),
        );
        assert!(err.is_err());
    }

    #[test]
    fn covered_by_union_detects_gaps() {
        // [0,2] is not covered by [0,1) union... use closed parts
        // [0,1] and [3/2,2]: the gap (1, 3/2) must be found.
        let c = HPolytope::from_box(&[(rat_i(0), rat_i(2))]).unwrap();
        let p1 = HPolytope::from_box(&[(rat_i(0), rat_i(1))]).unwrap();
        let p2 = HPolytope::from_box(&[(rat(3, 2), rat_i(2))]).unwrap();
        let gap = covered_by_union(&c, &[p1.clone(), p2.clone()]).unwrap();
        let point = gap.expect("gap point exists");
        assert!(!p1.contains_point(&point).unwrap());
        assert!(!p2.contains_point(&point).unwrap());
        // and with the gap filled, coverage holds
        let p3 = HPolytope::from_box(&[(rat_i(1), rat(3, 2))]).unwrap();
        assert!(covered_by_union(&c, &[p1, p2, p3]).unwrap().is_none());
    }

}
