//! Exact V-representation: vertex/ray enumeration from half-spaces, facet
//! enumeration from generators, and cones with a given apex.
//!
//! The enumerations are exhaustive over active-constraint subsets. At the
//! sizes this crate targets (ambient dimension <= 6 after redundancy
//! removal) this is fast and has no degenerate-input corner cases.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::GeomError;
use crate::linalg;
use crate::rational::Rat;

use super::{HPolytope, HalfSpace, QVector, MAX_DIM};

/// Exact V-representation. A polyhedron equals
/// `conv(vertices) + cone(rays)`; for pointed polyhedra the vertices are
/// the extreme points and the rays the extreme rays. When the polyhedron
/// has a lineality space, `vertices` holds one representative point per
/// minimal face and `rays` includes both signs of a lineality basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<QVector>,
    pub rays: Vec<QVector>,
}

impl VRep {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

impl HPolytope {
    /// Exact V-representation; cached after the first call.
    /// Fails on infeasible input or ambient dimension above [`MAX_DIM`].
    pub fn vertex_enumerate(&self) -> Result<&VRep, GeomError> {
        if !self.is_feasible() {
            return Err(GeomError::Infeasible);
        }
        if self.dim_ambient() > MAX_DIM {
            return Err(GeomError::DimensionTooLarge(self.dim_ambient(), MAX_DIM));
        }
        Ok(self
            .vrep_cache
            .get_or_init(|| compute_vrep(self.dim_ambient(), self.halfspaces())))
    }
}

fn normals_matrix(halfspaces: &[HalfSpace]) -> Vec<Vec<Rat>> {
    halfspaces
        .iter()
        .map(|h| h.normal().coords().to_vec())
        .collect()
}

fn compute_vrep(dim: usize, halfspaces: &[HalfSpace]) -> VRep {
    let normals = normals_matrix(halfspaces);
    let lineality = linalg::nullspace(&normals, dim);
    if lineality.is_empty() {
        return compute_vrep_pointed(dim, halfspaces);
    }

    // Quotient out the lineality space: express the constraints in
    // coordinates on the row space of the normal matrix, which is the
    // orthogonal complement of the lineality space.
    let basis = independent_subset(&normals, dim);
    let k = basis.len();
    let quotient_rows: Vec<(QVector, Rat)> = halfspaces
        .iter()
        .map(|h| {
            let coords: Vec<Rat> = basis
                .iter()
                .map(|w| linalg::dot(h.normal().coords(), w))
                .collect();
            (QVector::new(coords), h.bound().clone())
        })
        .collect();
    let quotient =
        HPolytope::new(k, quotient_rows).expect("quotient construction cannot fail");
    let inner = compute_vrep(k, quotient.halfspaces());

    let lift = |y: &QVector| -> QVector {
        let mut x = vec![Rat::zero(); dim];
        for (c, w) in y.coords().iter().zip(&basis) {
            for (xi, wi) in x.iter_mut().zip(w) {
                *xi = &*xi + &(c * wi);
            }
        }
        QVector::new(x)
    };

    let mut vertices: Vec<QVector> = inner.vertices.iter().map(&lift).collect();
    let mut rays: Vec<QVector> = inner.rays.iter().map(&lift).collect();
    for l in &lineality {
        let d = QVector::new(l.clone()).primitive();
        rays.push(d.scale(&-Rat::one()));
        rays.push(d);
    }
    vertices.sort();
    vertices.dedup();
    rays = rays.into_iter().map(|r| r.primitive()).collect();
    rays.sort();
    rays.dedup();
    VRep { vertices, rays }
}

/// Integer-scaled rows `(normal, bound)`: scaling each constraint by a
/// positive factor changes nothing, and integer Cramer solves are far
/// cheaper than rational elimination in the enumeration loops.
fn scaled_int_rows(rows: &[(Vec<Rat>, Rat)]) -> Vec<(Vec<num_bigint::BigInt>, num_bigint::BigInt)> {
    rows.iter()
        .map(|(normal, bound)| {
            let mut all = normal.clone();
            all.push(bound.clone());
            let scaled = crate::rational::primitive_integer_scale(&all);
            let ints: Vec<num_bigint::BigInt> =
                scaled.iter().map(|r| r.numer().clone()).collect();
            let bound = ints.last().unwrap().clone();
            (ints[..ints.len() - 1].to_vec(), bound)
        })
        .collect()
}

/// Exhaustive vertex enumeration over integer-scaled rows.
fn vertices_from_int_rows(
    dim: usize,
    int_rows: &[(Vec<num_bigint::BigInt>, num_bigint::BigInt)],
) -> Vec<QVector> {
    use num_bigint::BigInt;
    let mut vertices: Vec<QVector> = Vec::new();
    for subset in (0..int_rows.len()).combinations(dim) {
        let sel: Vec<Vec<BigInt>> = subset.iter().map(|&i| int_rows[i].0.clone()).collect();
        let rhs: Vec<BigInt> = subset.iter().map(|&i| int_rows[i].1.clone()).collect();
        let Some((nums, det)) = linalg::solve_square_int(&sel, &rhs) else {
            continue;
        };
        // feasibility in integers: a . x <= c  <=>  a . nums <=> c det,
        // with the comparison flipped when det < 0
        let det_neg = det.is_negative();
        let feasible = int_rows.iter().all(|(a, c)| {
            let lhs = linalg::dot_int(a, &nums);
            let rhs = c * &det;
            if det_neg {
                lhs >= rhs
            } else {
                lhs <= rhs
            }
        });
        if feasible {
            let det_rat = Rat::from_integer(det);
            vertices.push(QVector::new(
                nums.into_iter()
                    .map(|n| Rat::from_integer(n) / &det_rat)
                    .collect(),
            ));
        }
    }
    vertices.sort();
    vertices.dedup();
    vertices
}

fn compute_vrep_pointed(dim: usize, halfspaces: &[HalfSpace]) -> VRep {
    use num_bigint::BigInt;
    let raw: Vec<(Vec<Rat>, Rat)> = halfspaces
        .iter()
        .map(|h| (h.normal().coords().to_vec(), h.bound().clone()))
        .collect();
    let int_rows = scaled_int_rows(&raw);
    let vertices = vertices_from_int_rows(dim, &int_rows);

    // Extreme rays of the recession cone {d : A d <= 0}: tight sets of
    // rank dim - 1, kernel vectors via signed minors.
    let mut rays = Vec::new();
    for subset in (0..int_rows.len()).combinations(dim - 1) {
        let sel: Vec<Vec<BigInt>> = subset.iter().map(|&i| int_rows[i].0.clone()).collect();
        let Some(kernel) = linalg::kernel_vector_int(&sel, dim) else {
            continue;
        };
        let d = QVector::new(kernel.into_iter().map(Rat::from_integer).collect()).primitive();
        for cand in [d.scale(&-Rat::one()), d] {
            if int_rows
                .iter()
                .all(|(a, _)| {
                    let pairing: Rat = a
                        .iter()
                        .zip(cand.coords())
                        .map(|(ai, ci)| Rat::from_integer(ai.clone()) * ci)
                        .sum();
                    !pairing.is_positive()
                })
            {
                rays.push(cand);
            }
        }
    }
    rays.sort();
    rays.dedup();
    VRep { vertices, rays }
}

/// Brute-force vertex enumeration over a raw inequality system
/// `rows[i] . x <= rhs[i]`, without canonicalization. Intended for
/// bounded full-dimensional systems with many redundant rows, where
/// LP-based canonicalization would be slower than direct enumeration.
pub(crate) fn enumerate_vertices_raw(
    dim: usize,
    rows: &[Vec<Rat>],
    rhs: &[Rat],
) -> Vec<QVector> {
    let raw: Vec<(Vec<Rat>, Rat)> = rows
        .iter()
        .cloned()
        .zip(rhs.iter().cloned())
        .collect();
    vertices_from_int_rows(dim, &scaled_int_rows(&raw))
}

/// Greedy maximal linearly independent subset of `rows`.
fn independent_subset(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut picked: Vec<Vec<Rat>> = Vec::new();
    for row in rows {
        if row.iter().all(|c| c.is_zero()) {
            continue;
        }
        picked.push(row.clone());
        if linalg::rank(&picked) != picked.len() {
            picked.pop();
        }
        if picked.len() == ncols {
            break;
        }
    }
    picked
}

/// H-representation rows of the polyhedral cone generated by `dirs`
/// (apex at the origin): facet rows `h . x <= 0` plus equality pairs
/// cutting out the linear span. An empty generator list yields the
/// origin; generators spanning every direction yield no rows.
fn cone_rows(dim: usize, dirs: &[QVector]) -> Vec<(QVector, Rat)> {
    let dirs: Vec<&QVector> = dirs.iter().filter(|d| !d.is_zero()).collect();
    let mut rows = Vec::new();
    if dirs.is_empty() {
        for i in 0..dim {
            rows.push((QVector::unit(dim, i), Rat::zero()));
            rows.push((QVector::unit(dim, i).scale(&-Rat::one()), Rat::zero()));
        }
        return rows;
    }

    let dir_matrix: Vec<Vec<Rat>> = dirs.iter().map(|d| d.coords().to_vec()).collect();
    // Equalities: the orthogonal complement of the span.
    for h in linalg::nullspace(&dir_matrix, dim) {
        let hv = QVector::new(h).primitive();
        rows.push((hv.scale(&-Rat::one()), Rat::zero()));
        rows.push((hv, Rat::zero()));
    }

    let basis = independent_subset(&dir_matrix, dim);
    let k = basis.len();
    if k == 0 {
        return rows;
    }

    // Integer-scaled generators and basis: positive scaling preserves
    // every sign test, and staying in integers keeps the hot loop cheap.
    use num_bigint::BigInt;
    let to_int = |v: &[Rat]| -> Vec<BigInt> {
        crate::rational::primitive_integer_scale(v)
            .into_iter()
            .map(|r| r.numer().clone())
            .collect()
    };
    let dirs_int: Vec<Vec<BigInt>> = dirs.iter().map(|d| to_int(d.coords())).collect();
    let basis_int: Vec<Vec<BigInt>> = basis.iter().map(|b| to_int(b)).collect();

    // A facet of a finitely generated cone contains k-1 independent
    // generators; the facet normal lives in the span, so it is a kernel
    // vector of the pairing matrix against the basis.
    let mut facets: Vec<QVector> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<BigInt>> = std::collections::BTreeSet::new();
    for subset in (0..dirs_int.len()).combinations(k - 1) {
        let m: Vec<Vec<BigInt>> = subset
            .iter()
            .map(|&i| {
                basis_int
                    .iter()
                    .map(|b| linalg::dot_int(&dirs_int[i], b))
                    .collect()
            })
            .collect();
        let Some(c) = linalg::kernel_vector_int(&m, k) else {
            continue;
        };
        let mut h = vec![BigInt::from(0); dim];
        for (cj, b) in c.iter().zip(&basis_int) {
            for (hi, bi) in h.iter_mut().zip(b) {
                *hi += cj * bi;
            }
        }
        // reduce to the canonical undirected form and skip repeats: a
        // facet with t generators shows up in C(t, k-1) subsets
        let mut g = BigInt::from(0);
        for v in &h {
            g = num_integer::Integer::gcd(&g, v);
        }
        for v in h.iter_mut() {
            *v /= &g;
        }
        let undirected = if h.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative())
        {
            h.iter().map(|v| -v).collect::<Vec<_>>()
        } else {
            h.clone()
        };
        if !seen.insert(undirected) {
            continue;
        }
        let mut has_pos = false;
        let mut has_neg = false;
        for d in &dirs_int {
            let v = linalg::dot_int(&h, d);
            if v.is_positive() {
                has_pos = true;
            } else if v.is_negative() {
                has_neg = true;
            }
            if has_pos && has_neg {
                break;
            }
        }
        let oriented = match (has_pos, has_neg) {
            (true, false) => h.iter().map(|v| -v.clone()).collect::<Vec<_>>(),
            (false, true) => h,
            // All generators on the hyperplane is impossible for a
            // nonzero h in the span; both signs means no facet.
            _ => continue,
        };
        facets.push(QVector::new(
            oriented.into_iter().map(Rat::from_integer).collect(),
        ));
    }
    facets.sort();
    facets.dedup();
    rows.extend(facets.into_iter().map(|h| (h, Rat::zero())));
    rows
}

impl HPolytope {
    /// Exact H-representation of `conv(vertices) + cone(rays)`.
    /// An empty vertex list yields the infeasible polyhedron.
    pub fn from_generators(
        dim: usize,
        vertices: &[QVector],
        rays: &[QVector],
    ) -> Result<HPolytope, GeomError> {
        if dim > MAX_DIM {
            return Err(GeomError::DimensionTooLarge(dim, MAX_DIM));
        }
        for v in vertices.iter().chain(rays) {
            if v.dim() != dim {
                return Err(GeomError::DimensionMismatch {
                    left: dim,
                    right: v.dim(),
                });
            }
        }
        if vertices.is_empty() {
            return Ok(HPolytope::empty(dim));
        }
        // Homogenize: vertices at height 1, rays at height 0.
        let mut gens = Vec::with_capacity(vertices.len() + rays.len());
        for v in vertices {
            let mut c = v.coords().to_vec();
            c.push(Rat::one());
            gens.push(QVector::new(c));
        }
        for r in rays {
            let mut c = r.coords().to_vec();
            c.push(Rat::zero());
            gens.push(QVector::new(c));
        }
        let mut rows = Vec::new();
        for (h, _) in cone_rows(dim + 1, &gens) {
            // h . (x, 1) <= 0 becomes h_x . x <= -h_w.
            let coords = h.coords();
            let normal = QVector::new(coords[..dim].to_vec());
            let bound = -coords[dim].clone();
            rows.push((normal, bound));
        }
        HPolytope::new(dim, rows)
    }

    /// Closed cone with apex `apex` over the points and rays of `base`:
    /// the closure of `{apex + t (s - apex) : s in base, t >= 0}`.
    pub fn cone_from_polytope(
        apex: &QVector,
        base: &HPolytope,
    ) -> Result<HPolytope, GeomError> {
        if apex.dim() != base.dim_ambient() {
            return Err(GeomError::DimensionMismatch {
                left: apex.dim(),
                right: base.dim_ambient(),
            });
        }
        if !base.is_feasible() {
            return Err(GeomError::Invalid(
                "cone over the empty set is undefined".into(),
            ));
        }
        let vrep = base.vertex_enumerate()?;
        let mut dirs: Vec<QVector> = vrep.vertices.iter().map(|v| v.sub(apex)).collect();
        dirs.extend(vrep.rays.iter().cloned());
        cone_with_apex(apex, &dirs)
    }

    /// Closed cone with apex `apex` over a finite point set.
    pub fn cone_from_points(
        apex: &QVector,
        points: &[QVector],
    ) -> Result<HPolytope, GeomError> {
        if points.is_empty() {
            return Err(GeomError::Invalid(
                "cone over the empty set is undefined".into(),
            ));
        }
        for p in points {
            if p.dim() != apex.dim() {
                return Err(GeomError::DimensionMismatch {
                    left: apex.dim(),
                    right: p.dim(),
                });
            }
        }
        let dirs: Vec<QVector> = points.iter().map(|p| p.sub(apex)).collect();
        cone_with_apex(apex, &dirs)
    }
}

fn cone_with_apex(apex: &QVector, dirs: &[QVector]) -> Result<HPolytope, GeomError> {
    let dim = apex.dim();
    if dim > MAX_DIM {
        return Err(GeomError::DimensionTooLarge(dim, MAX_DIM));
    }
    let rows = cone_rows(dim, dirs)
        .into_iter()
        .map(|(h, _)| {
            let bound = h.dot(apex);
            (h, bound)
        })
        .collect::<Vec<_>>();
    HPolytope::new(dim, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn unit_square() -> HPolytope {
        HPolytope::from_box(&[(rat_i(0), rat_i(1)), (rat_i(0), rat_i(1))]).unwrap()
    }

    #[test]
    fn square_vertices() {
        let square = unit_square();
        let v = square.vertex_enumerate().unwrap();
        assert!(v.is_bounded());
        let expect: Vec<QVector> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|c| QVector::from_ints(c))
            .collect();
        assert_eq!(v.vertices, expect);
    }

    #[test]
    fn orthant_vertex_and_rays() {
        let p = HPolytope::nonneg_orthant(2).unwrap();
        let v = p.vertex_enumerate().unwrap();
        assert_eq!(v.vertices, vec![QVector::from_ints(&[0, 0])]);
        assert_eq!(
            v.rays,
            vec![QVector::from_ints(&[0, 1]), QVector::from_ints(&[1, 0])]
        );
    }

    #[test]
    fn monomial_example_has_four_vertices() {
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
        let v = p.vertex_enumerate().unwrap();
        let expect = vec![
            QVector::new(vec![rat_i(0), rat_i(0)]),
            QVector::new(vec![rat_i(0), rat(1, 3)]),
            QVector::new(vec![rat(1, 2), rat_i(0)]),
            QVector::new(vec![rat(1, 2), rat(1, 3)]),
        ];
        assert_eq!(v.vertices, expect);
        assert!(v.rays.is_empty());
    }

    #[test]
    fn slab_has_lineality_rays() {
        // [0,1] x R
        let p = HPolytope::new(
            2,
            [
                (QVector::from_ints(&[1, 0]), rat_i(1)),
                (QVector::from_ints(&[-1, 0]), rat_i(0)),
            ],
        )
        .unwrap();
        let v = p.vertex_enumerate().unwrap();
        assert_eq!(v.vertices.len(), 2);
        assert_eq!(
            v.rays,
            vec![QVector::from_ints(&[0, -1]), QVector::from_ints(&[0, 1])]
        );
    }

    #[test]
    fn infeasible_fails_enumeration() {
        assert!(matches!(
            HPolytope::empty(2).vertex_enumerate(),
            Err(GeomError::Infeasible)
        ));
    }

    #[test]
    fn generators_round_trip_square() {
        let square = unit_square();
        let v = square.vertex_enumerate().unwrap().clone();
        let back = HPolytope::from_generators(2, &v.vertices, &v.rays).unwrap();
        assert!(back.set_eq(&square).unwrap());
        assert_eq!(back, square);
    }

    #[test]
    fn generators_round_trip_orthant() {
        let p = HPolytope::nonneg_orthant(3).unwrap();
        let v = p.vertex_enumerate().unwrap().clone();
        let back = HPolytope::from_generators(3, &v.vertices, &v.rays).unwrap();
        assert!(back.set_eq(&p).unwrap());
    }

    #[test]
    fn generators_of_lower_dimensional_simplex() {
        // segment from (0,0,0) to (1,1,0) in R^3
        let vs = vec![QVector::from_ints(&[0, 0, 0]), QVector::from_ints(&[1, 1, 0])];
        let p = HPolytope::from_generators(3, &vs, &[]).unwrap();
        assert_eq!(p.dimension(), 1);
        assert!(p
            .contains_point(&QVector::new(vec![rat(1, 2), rat(1, 2), rat_i(0)]))
            .unwrap());
        assert!(!p
            .contains_point(&QVector::new(vec![rat(1, 2), rat(1, 3), rat_i(0)]))
            .unwrap());
    }

    #[test]
    fn empty_generators_is_empty_polytope() {
        let p = HPolytope::from_generators(2, &[], &[]).unwrap();
        assert!(!p.is_feasible());
    }

    #[test]
    fn cone_over_axis_points_is_orthant() {
        let apex = QVector::zero(2);
        let pts = vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1])];
        let cone = HPolytope::cone_from_points(&apex, &pts).unwrap();
        assert!(cone.set_eq(&HPolytope::nonneg_orthant(2).unwrap()).unwrap());
    }

    #[test]
    fn cone_over_interval_in_dim_one() {
        // apex 1, S = [0,1] -> (-inf, 1]
        let apex = QVector::from_ints(&[1]);
        let seg = HPolytope::from_box(&[(rat_i(0), rat_i(1))]).unwrap();
        let cone = HPolytope::cone_from_polytope(&apex, &seg).unwrap();
        let expected = HPolytope::new(1, [(QVector::from_ints(&[1]), rat_i(1))]).unwrap();
        assert!(cone.set_eq(&expected).unwrap());
    }

    #[test]
    fn cone_over_single_diagonal_point_is_ray() {
        let apex = QVector::zero(2);
        let cone =
            HPolytope::cone_from_points(&apex, &[QVector::from_ints(&[1, 1])]).unwrap();
        assert!(cone.contains_point(&QVector::from_ints(&[2, 2])).unwrap());
        assert!(!cone.contains_point(&QVector::from_ints(&[2, 1])).unwrap());
        assert!(!cone.contains_point(&QVector::from_ints(&[-1, -1])).unwrap());
        assert_eq!(cone.dimension(), 1);
    }

    #[test]
    fn cone_over_point_set_containing_apex() {
        // apex itself among generators contributes the zero direction.
        let apex = QVector::from_ints(&[1]);
        let pts = vec![QVector::from_ints(&[1]), QVector::from_ints(&[0])];
        let cone = HPolytope::cone_from_points(&apex, &pts).unwrap();
        let expected = HPolytope::new(1, [(QVector::from_ints(&[1]), rat_i(1))]).unwrap();
        assert!(cone.set_eq(&expected).unwrap());
    }

    #[test]
    fn cone_degenerate_apex_only() {
        let apex = QVector::from_ints(&[2, 3]);
        let cone = HPolytope::cone_from_points(&apex, &[apex.clone()]).unwrap();
        assert_eq!(cone.dimension(), 0);
        assert!(cone.contains_point(&apex).unwrap());
    }
}
