//! From resolution data to LCT-polytopes and thresholds.
//!
//! A resolution datum is a table of rows `(a_1, ..., a_s; b)`, one per
//! divisor on a log resolution, each encoding the constraint
//! `sum_i a_i x_i + b <= 1` on the coefficient vector `(x_1, ..., x_s)`
//! of the testing divisors. Exceptional divisors and strict transforms of
//! the boundary components sit in the same table: the strict-transform
//! rows carry the coefficient bounds that keep the moving divisor a
//! boundary, so no operation needs a special "row zero".

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{lower_envelope, AffineFn, PLFunction};
use crate::coeffsets::{Caps, DecompWitness, FnFamily};
use crate::error::LctError;
use crate::exactgeom::{HPolytope, HalfSpace, QVector};
use crate::rational::{rat_string, rat_to_string, Interval, Rat};

/// Provenance of a resolution row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowKind {
    #[serde(rename = "exceptional")]
    Exceptional,
    #[serde(rename = "strict")]
    StrictTransform,
}

/// One divisor on the resolution: multiplicities `a_i` of the testing
/// divisors and the offset `b` from the fixed boundary, normalized so
/// that log canonicity along this divisor reads `a . x + b <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionRow {
    #[serde(with = "crate::rational::rat_vec_string")]
    pub a: Vec<Rat>,
    #[serde(with = "rat_string")]
    pub b: Rat,
    pub label: String,
    pub kind: RowKind,
}

/// Table of resolution rows over `s` testing divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ResolutionDatumWire", into = "ResolutionDatumWire")]
pub struct ResolutionDatum {
    s: usize,
    rows: Vec<ResolutionRow>,
}

#[derive(Clone, Serialize, Deserialize)]
struct ResolutionDatumWire {
    s: usize,
    rows: Vec<ResolutionRow>,
}

impl TryFrom<ResolutionDatumWire> for ResolutionDatum {
    type Error = LctError;
    fn try_from(w: ResolutionDatumWire) -> Result<Self, LctError> {
        ResolutionDatum::new(w.s, w.rows)
    }
}

impl From<ResolutionDatum> for ResolutionDatumWire {
    fn from(d: ResolutionDatum) -> Self {
        ResolutionDatumWire {
            s: d.s,
            rows: d.rows,
        }
    }
}

impl ResolutionDatum {
    /// Validates the sign structure: every `a_i >= 0` and `0 <= b <= 1`.
    pub fn new(s: usize, rows: Vec<ResolutionRow>) -> Result<Self, LctError> {
        if s == 0 {
            return Err(LctError::InvalidDatum(
                "at least one testing divisor required".into(),
            ));
        }
        for row in &rows {
            if row.a.len() != s {
                return Err(LctError::InvalidDatum(format!(
                    "row {:?} has {} entries, expected {}",
                    row.label,
                    row.a.len(),
                    s
                )));
            }
            if row.a.iter().any(|c| c.is_negative()) {
                return Err(LctError::InvalidDatum(format!(
                    "row {:?} has a negative multiplicity",
                    row.label
                )));
            }
            if row.b.is_negative() || row.b > Rat::one() {
                return Err(LctError::InvalidDatum(format!(
                    "row {:?} has offset b = {} outside [0, 1]",
                    row.label,
                    rat_to_string(&row.b)
                )));
            }
        }
        Ok(ResolutionDatum { s, rows })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn rows(&self) -> &[ResolutionRow] {
        &self.rows
    }

    /// Row constraint value `a . x + b` at a point.
    fn row_value(&self, row: &ResolutionRow, x: &QVector) -> Rat {
        crate::linalg::dot(&row.a, x.coords()) + &row.b
    }
}

/// The LCT-polytope of a datum: the nonnegative orthant intersected with
/// every row constraint `a . x <= 1 - b`. Contains the origin; every
/// facet half-space, scaled so the right side is `1 - b`, has
/// nonnegative coefficients and a nonnegative bound.
pub fn build_lct_polytope(datum: &ResolutionDatum) -> HPolytope {
    let s = datum.s();
    let mut rows: Vec<(QVector, Rat)> = Vec::with_capacity(s + datum.rows().len());
    for i in 0..s {
        rows.push((QVector::unit(s, i).scale(&-Rat::one()), Rat::zero()));
    }
    for row in datum.rows() {
        rows.push((
            QVector::new(row.a.clone()),
            Rat::one() - &row.b,
        ));
    }
    HPolytope::new(s, rows).expect("datum dimensions are validated")
}

/// A facet of an LCT-polytope, labeled by whether it is an LCT facet
/// (its affine hull is not a coordinate hyperplane `{x_i = 0}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetLabel {
    pub facet: HalfSpace,
    pub is_lct_facet: bool,
}

/// Labels every facet of a full-dimensional bounded polytope.
pub fn classify_facets(p: &HPolytope) -> Result<Vec<FacetLabel>, LctError> {
    let d = p.dimension();
    if d != p.dim_ambient() as i64 {
        return Err(LctError::Geom(crate::error::GeomError::NotFullDimensional {
            found: d,
            ambient: p.dim_ambient(),
        }));
    }
    if !p.is_bounded() {
        return Err(LctError::Geom(crate::error::GeomError::Unbounded));
    }
    // In canonical form every stored half-space supports a facet.
    Ok(p.halfspaces()
        .iter()
        .map(|h| {
            let coordinate_hyperplane = h.bound().is_zero()
                && h.normal().coords().iter().filter(|c| !c.is_zero()).count() == 1;
            FacetLabel {
                facet: h.clone(),
                is_lct_facet: !coordinate_hyperplane,
            }
        })
        .collect())
}

/// A log canonical threshold: either an exact rational or infinite (the
/// ray never leaves the polytope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    Finite(Rat),
    Infinite,
}

impl Threshold {
    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Threshold::Finite(v) => Some(v),
            Threshold::Infinite => None,
        }
    }
}

/// Exit parameter `sup{t >= 0 : base + t dir in P}` computed directly
/// from the datum rows: the minimum over rows with positive pairing of
/// `(1 - b - a . base) / (a . dir)`. Infinite when no row meets the
/// direction.
pub fn lct_along_ray(
    datum: &ResolutionDatum,
    direction: &QVector,
    base: &QVector,
) -> Result<Threshold, LctError> {
    let s = datum.s();
    if direction.dim() != s || base.dim() != s {
        return Err(LctError::InvalidDatum(format!(
            "direction/base dimension does not match s = {s}"
        )));
    }
    if direction.is_zero() {
        return Err(LctError::InvalidDatum("direction must be nonzero".into()));
    }
    if direction.coords().iter().any(|c| c.is_negative()) {
        return Err(LctError::InvalidDatum(
            "direction must be componentwise nonnegative".into(),
        ));
    }
    if base.coords().iter().any(|c| c.is_negative()) {
        return Err(LctError::BaseOutside(format!(
            "base {base} has a negative coordinate"
        )));
    }
    let mut best: Option<Rat> = None;
    for row in datum.rows() {
        let value = datum.row_value(row, base);
        if value > Rat::one() {
            return Err(LctError::BaseOutside(format!(
                "row {:?} evaluates to {} > 1 at the base point",
                row.label,
                rat_to_string(&value)
            )));
        }
        let pairing = crate::linalg::dot(&row.a, direction.coords());
        if pairing.is_positive() {
            let t = (Rat::one() - value) / pairing;
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
    }
    Ok(match best {
        Some(t) => Threshold::Finite(t),
        None => Threshold::Infinite,
    })
}

/// The data of a one-parameter threshold problem: the boundary moves as
/// `Delta(t) = sum_i base_coeffs_i(t) D_i` on `interval`, and the
/// threshold multiplies the testing divisor in `test_column`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentProblem {
    pub datum: ResolutionDatum,
    pub base_coeffs: Vec<AffineFn>,
    pub test_column: usize,
    pub interval: Interval,
}

impl SegmentProblem {
    pub fn new(
        datum: ResolutionDatum,
        base_coeffs: Vec<AffineFn>,
        test_column: usize,
        interval: Interval,
    ) -> Result<Self, LctError> {
        let s = datum.s();
        if base_coeffs.len() != s {
            return Err(LctError::InvalidDatum(format!(
                "{} base coefficients for s = {s}",
                base_coeffs.len()
            )));
        }
        if test_column >= s {
            return Err(LctError::InvalidDatum(format!(
                "test column {test_column} out of range"
            )));
        }
        if interval.is_degenerate() {
            return Err(LctError::InvalidDatum(
                "segment interval must be non-degenerate".into(),
            ));
        }
        let base_coeffs: Vec<AffineFn> = base_coeffs
            .into_iter()
            .map(|f| f.with_domain(interval.clone()))
            .collect();
        for (i, f) in base_coeffs.iter().enumerate() {
            if !f.is_nonneg_on_domain() {
                return Err(LctError::InvalidDatum(format!(
                    "base coefficient {i} ({f}) is negative somewhere on {interval}"
                )));
            }
        }
        if !datum
            .rows()
            .iter()
            .any(|row| row.a[test_column].is_positive())
        {
            return Err(LctError::EmptyEffectiveRows);
        }
        Ok(SegmentProblem {
            datum,
            base_coeffs,
            test_column,
            interval,
        })
    }

    /// Row constraint value at parameter `t` and threshold `tau = 0`:
    /// `sum_i a_i base_i(t) + b` as an affine function of `t`.
    fn row_base_value(&self, row: &ResolutionRow) -> AffineFn {
        let mut f = AffineFn::constant(row.b.clone(), self.interval.clone());
        for (ai, base) in row.a.iter().zip(&self.base_coeffs) {
            f = f.add_fn(&base.scale(ai));
        }
        f
    }

    /// The per-row threshold `tau_k(t) = (1 - b - a . base(t)) / a_test`
    /// for rows with positive test-column entry.
    fn row_thresholds(&self) -> Vec<(usize, AffineFn)> {
        let mut out = Vec::new();
        for (k, row) in self.datum.rows().iter().enumerate() {
            let q = &row.a[self.test_column];
            if !q.is_positive() {
                continue;
            }
            let base = self.row_base_value(row);
            let inv = Rat::one() / q;
            let tau = AffineFn::new(
                -&base.slope * &inv,
                (Rat::one() - &base.intercept) * &inv,
                self.interval.clone(),
            );
            out.push((k, tau));
        }
        out
    }
}

/// The threshold function on a segment with its lc places: per linear
/// piece, the labels of the rows attaining the minimum on the piece
/// interior (constant there; the set changes across every breakpoint).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentLct {
    pub zeta: PLFunction,
    pub places: Vec<(Interval, BTreeSet<String>)>,
}

/// Computes `zeta(t) = lct` along the segment as the exact lower envelope
/// of the row thresholds. Checks the lc hypothesis (every row value at
/// most 1 at `tau = 0` across the interval) first.
pub fn lct_segment(prob: &SegmentProblem) -> Result<SegmentLct, LctError> {
    for row in prob.datum.rows() {
        let base = prob.row_base_value(row);
        if base.max_on_domain() > Rat::one() {
            return Err(LctError::LcHypothesis(format!(
                "row {:?} reaches {} > 1 on {}",
                row.label,
                rat_to_string(&base.max_on_domain()),
                prob.interval
            )));
        }
    }
    let taus = prob.row_thresholds();
    if taus.is_empty() {
        return Err(LctError::EmptyEffectiveRows);
    }
    let fns: Vec<AffineFn> = taus.iter().map(|(_, f)| f.clone()).collect();
    let (zeta, argmins) = lower_envelope(&fns, &prob.interval)
        .map_err(|e| LctError::InvalidDatum(e.to_string()))?;
    debug_assert!(zeta.is_nonneg(), "lc hypothesis keeps the envelope nonnegative");
    let places = zeta
        .pieces()
        .iter()
        .zip(&argmins)
        .map(|(piece, args)| {
            let labels: BTreeSet<String> = args
                .iter()
                .map(|&j| prob.datum.rows()[taus[j].0].label.clone())
                .collect();
            (piece.domain.clone(), labels)
        })
        .collect();
    Ok(SegmentLct { zeta, places })
}

/// The first linear piece of the threshold along `[0, lambda0]`: the
/// affine function `t(lambda)` and the largest `c <= lambda0` on which
/// the threshold is that single function.
pub fn local_vertex_function(
    prob: &SegmentProblem,
    lambda0: &Rat,
) -> Result<(AffineFn, Rat), LctError> {
    if !lambda0.is_positive() {
        return Err(LctError::InvalidDatum("lambda0 must be positive".into()));
    }
    let interval = Interval::new(Rat::zero(), lambda0.clone())
        .map_err(|e| LctError::InvalidDatum(e.to_string()))?;
    let local = SegmentProblem::new(
        prob.datum.clone(),
        prob.base_coeffs.clone(),
        prob.test_column,
        interval,
    )?;
    let seg = lct_segment(&local)?;
    let first = seg.zeta.pieces()[0].clone();
    let c = first.domain.hi.clone();
    Ok((first, c))
}

/// Adjunction coefficient `(m - 1 + sum r_i b_i(t)) / m`, certified as a
/// member of the derived set `D({b_i}, interval)` by an explicit witness.
/// Fails when the result exceeds 1 somewhere on the interval.
pub fn adjunction_coefficient(
    m: u64,
    mults: &[(u64, AffineFn)],
) -> Result<(AffineFn, DecompWitness), LctError> {
    if m == 0 {
        return Err(LctError::InvalidDatum("m must be a positive integer".into()));
    }
    let Some(interval) = mults.first().map(|(_, f)| f.domain.clone()) else {
        return Err(LctError::InvalidDatum(
            "adjunction needs at least one multiplicity".into(),
        ));
    };
    for (_, f) in mults {
        if f.domain != interval {
            return Err(LctError::InvalidDatum(
                "all coefficient functions must share one interval".into(),
            ));
        }
    }
    let terms: Vec<(u64, AffineFn)> = mults
        .iter()
        .filter(|(r, _)| *r > 0)
        .map(|(r, f)| (*r, f.clone()))
        .collect();
    let witness = DecompWitness {
        m,
        terms,
        interval: interval.clone(),
    };
    let result = witness.derived_fn();
    if result.max_on_domain() > Rat::one() {
        return Err(LctError::NotBoundary(format!(
            "{result} reaches {} on {interval}",
            rat_to_string(&result.max_on_domain())
        )));
    }
    debug_assert!(witness.is_valid());
    // Cross-certify against the enumerated derived set when the inputs
    // are family members (nonnegative, nonzero); the witness itself is
    // the membership certificate either way.
    let members: Vec<AffineFn> = witness
        .terms
        .iter()
        .map(|(_, f)| f.clone())
        .filter(|f| !f.is_zero_fn())
        .collect();
    if !members.is_empty() && members.iter().all(|f| f.is_nonneg_on_domain()) {
        if let Ok(family) = FnFamily::new(interval.clone(), members, Vec::new()) {
            let caps = Caps {
                m_cap: m,
                term_cap: witness.terms.iter().map(|(n, _)| *n as usize).sum(),
            };
            if let Ok(d) = crate::coeffsets::derived_set(&family, &interval.hi, &caps) {
                debug_assert!(
                    d.contains_fn(&result),
                    "adjunction output must appear in the enumerated derived set"
                );
            }
        }
    }
    Ok((result, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn row(a: &[(i64, i64)], b: (i64, i64), label: &str, kind: RowKind) -> ResolutionRow {
        ResolutionRow {
            a: a.iter().map(|&(p, q)| rat(p, q)).collect(),
            b: rat(b.0, b.1),
            label: label.into(),
            kind,
        }
    }

    /// D1 = div(x^2), D2 = div(y^3) on the plane: rows from the two
    /// coordinate axes plus the weight-(1,1) blow-up.
    fn monomial_datum() -> ResolutionDatum {
        ResolutionDatum::new(
            2,
            vec![
                row(&[(2, 1), (0, 1)], (0, 1), "E_x", RowKind::StrictTransform),
                row(&[(0, 1), (3, 1)], (0, 1), "E_y", RowKind::StrictTransform),
                row(&[(1, 1), (3, 2)], (0, 1), "E_w11", RowKind::Exceptional),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_invalid_data() {
        assert!(ResolutionDatum::new(0, vec![]).is_err());
        assert!(ResolutionDatum::new(
            1,
            vec![row(&[(-1, 1)], (0, 1), "bad", RowKind::Exceptional)]
        )
        .is_err());
        assert!(ResolutionDatum::new(
            1,
            vec![row(&[(1, 1)], (2, 1), "bad-b", RowKind::Exceptional)]
        )
        .is_err());
        assert!(ResolutionDatum::new(
            2,
            vec![row(&[(1, 1)], (0, 1), "short", RowKind::Exceptional)]
        )
        .is_err());
    }

    #[test]
    fn single_smooth_divisor_gives_unit_interval() {
        let datum = ResolutionDatum::new(
            1,
            vec![row(&[(1, 1)], (0, 1), "D", RowKind::StrictTransform)],
        )
        .unwrap();
        let p = build_lct_polytope(&datum);
        let expected = HPolytope::from_box(&[(rat_i(0), rat_i(1))]).unwrap();
        assert!(p.set_eq(&expected).unwrap());
    }

    #[test]
    fn two_lines_after_blowup_give_unit_square() {
        // two lines through a point, one blow-up: exceptional row
        // a = (1/2, 1/2), b = 0 encodes x1 + x2 <= 2.
        let datum = ResolutionDatum::new(
            2,
            vec![
                row(&[(1, 1), (0, 1)], (0, 1), "L1", RowKind::StrictTransform),
                row(&[(0, 1), (1, 1)], (0, 1), "L2", RowKind::StrictTransform),
                row(&[(1, 2), (1, 2)], (0, 1), "E", RowKind::Exceptional),
            ],
        )
        .unwrap();
        let p = build_lct_polytope(&datum);
        let square =
            HPolytope::from_box(&[(rat_i(0), rat_i(1)), (rat_i(0), rat_i(1))]).unwrap();
        assert!(p.set_eq(&square).unwrap());
    }

    #[test]
    fn monomial_polytope_is_scaled_rectangle() {
        let p = build_lct_polytope(&monomial_datum());
        let v = p.vertex_enumerate().unwrap();
        let expected = vec![
            QVector::new(vec![rat_i(0), rat_i(0)]),
            QVector::new(vec![rat_i(0), rat(1, 3)]),
            QVector::new(vec![rat(1, 2), rat_i(0)]),
            QVector::new(vec![rat(1, 2), rat(1, 3)]),
        ];
        assert_eq!(v.vertices, expected);
        // origin always inside, boundary point inside
        assert!(p.contains_point(&QVector::zero(2)).unwrap());
        assert!(p
            .contains_point(&QVector::new(vec![rat(1, 2), rat(1, 3)]))
            .unwrap());
    }

    #[test]
    fn facet_classification_unit_square() {
        let square =
            HPolytope::from_box(&[(rat_i(0), rat_i(1)), (rat_i(0), rat_i(1))]).unwrap();
        let labels = classify_facets(&square).unwrap();
        let lct: Vec<bool> = labels.iter().map(|l| l.is_lct_facet).collect();
        assert_eq!(labels.len(), 4);
        assert_eq!(lct.iter().filter(|b| **b).count(), 2);
        for l in &labels {
            let is_coord = l.facet.bound().is_zero();
            assert_eq!(l.is_lct_facet, !is_coord);
        }
    }

    #[test]
    fn facet_classification_triangle() {
        let tri = HPolytope::new(
            2,
            [
                (QVector::from_ints(&[-1, 0]), rat_i(0)),
                (QVector::from_ints(&[0, -1]), rat_i(0)),
                (QVector::from_ints(&[1, 1]), rat_i(1)),
            ],
        )
        .unwrap();
        let labels = classify_facets(&tri).unwrap();
        assert_eq!(labels.iter().filter(|l| l.is_lct_facet).count(), 1);
    }

    #[test]
    fn classify_rejects_lower_dimensional() {
        let seg = HPolytope::new(
            2,
            [
                (QVector::from_ints(&[0, 1]), rat_i(0)),
                (QVector::from_ints(&[0, -1]), rat_i(0)),
                (QVector::from_ints(&[1, 0]), rat_i(1)),
                (QVector::from_ints(&[-1, 0]), rat_i(0)),
            ],
        )
        .unwrap();
        assert!(classify_facets(&seg).is_err());
    }

    #[test]
    fn ray_thresholds() {
        let datum = monomial_datum();
        // diagonal from the origin: min(1/2, 1/3, 2/5) = 1/3
        let t = lct_along_ray(&datum, &QVector::from_ints(&[1, 1]), &QVector::zero(2))
            .unwrap();
        assert_eq!(t, Threshold::Finite(rat(1, 3)));
        // axis directions
        let t = lct_along_ray(&datum, &QVector::from_ints(&[1, 0]), &QVector::zero(2))
            .unwrap();
        assert_eq!(t, Threshold::Finite(rat(1, 2)));
        // zero column: thresholds along it are infinite
        let datum2 = ResolutionDatum::new(
            2,
            vec![row(&[(1, 1), (0, 1)], (0, 1), "D1", RowKind::StrictTransform)],
        )
        .unwrap();
        let t = lct_along_ray(&datum2, &QVector::from_ints(&[0, 1]), &QVector::zero(2))
            .unwrap();
        assert_eq!(t, Threshold::Infinite);
        // base outside
        let err = lct_along_ray(
            &datum,
            &QVector::from_ints(&[1, 1]),
            &QVector::from_ints(&[1, 1]),
        );
        assert!(matches!(err, Err(LctError::BaseOutside(_))));
    }

    #[test]
    fn ray_exit_matches_polytope_exit() {
        let datum = monomial_datum();
        let p = build_lct_polytope(&datum);
        let dir = QVector::from_ints(&[1, 1]);
        let t = lct_along_ray(&datum, &dir, &QVector::zero(2)).unwrap();
        let exit = t.as_finite().unwrap();
        assert!(p.contains_point(&dir.scale(exit)).unwrap());
        let beyond = exit + rat(1, 1000);
        assert!(!p.contains_point(&dir.scale(&beyond)).unwrap());
    }

    fn two_row_segment_problem() -> SegmentProblem {
        // Rows giving tau_1(t) = 1 - t and tau_2(t) = 1/2 on [0, 1]:
        // row1: a = (1, 1), b = 0 with base (t, .) => tau = 1 - t
        // row2: a = (0, 2), b = 0 => tau = 1/2
        let datum = ResolutionDatum::new(
            2,
            vec![
                row(&[(1, 1), (1, 1)], (0, 1), "row1", RowKind::Exceptional),
                row(&[(0, 1), (2, 1)], (0, 1), "row2", RowKind::Exceptional),
            ],
        )
        .unwrap();
        let unit = Interval::unit();
        SegmentProblem::new(
            datum,
            vec![
                AffineFn::new(rat_i(1), rat_i(0), unit.clone()),
                AffineFn::constant(rat_i(0), unit.clone()),
            ],
            1,
            unit,
        )
        .unwrap()
    }

    #[test]
    fn segment_two_line_minimum() {
        let prob = two_row_segment_problem();
        let seg = lct_segment(&prob).unwrap();
        assert_eq!(
            seg.zeta.breakpoints(),
            &[rat_i(0), rat(1, 2), rat_i(1)]
        );
        assert_eq!(seg.zeta.eval(&rat(1, 4)), Some(rat(1, 2)));
        assert_eq!(seg.zeta.eval(&rat(3, 4)), Some(rat(1, 4)));
        assert_eq!(seg.places[0].1, BTreeSet::from(["row2".to_string()]));
        assert_eq!(seg.places[1].1, BTreeSet::from(["row1".to_string()]));
    }

    #[test]
    fn segment_constant_single_row() {
        let datum = ResolutionDatum::new(
            1,
            vec![row(&[(2, 1)], (0, 1), "only", RowKind::Exceptional)],
        )
        .unwrap();
        let unit = Interval::unit();
        let prob = SegmentProblem::new(
            datum,
            vec![AffineFn::constant(rat(1, 4), unit.clone())],
            0,
            unit,
        )
        .unwrap();
        let seg = lct_segment(&prob).unwrap();
        assert_eq!(seg.zeta.pieces().len(), 1);
        // tau = (1 - 2 * 1/4) / 2 = 1/4
        assert_eq!(seg.zeta.eval(&rat(1, 2)), Some(rat(1, 4)));
    }

    #[test]
    fn segment_saturated_coefficient_gives_zero() {
        // base coefficient already 1 and the test column touches it
        let datum = ResolutionDatum::new(
            1,
            vec![row(&[(1, 1)], (0, 1), "C", RowKind::StrictTransform)],
        )
        .unwrap();
        let unit = Interval::unit();
        let prob = SegmentProblem::new(
            datum,
            vec![AffineFn::constant(rat_i(1), unit.clone())],
            0,
            unit,
        )
        .unwrap();
        let seg = lct_segment(&prob).unwrap();
        assert_eq!(seg.zeta.eval(&rat(1, 2)), Some(rat_i(0)));
    }

    #[test]
    fn segment_lc_hypothesis_violation() {
        let datum = ResolutionDatum::new(
            1,
            vec![row(&[(1, 1)], (0, 1), "C", RowKind::StrictTransform)],
        )
        .unwrap();
        let unit = Interval::unit();
        let prob = SegmentProblem::new(
            datum,
            vec![AffineFn::new(rat_i(2), rat_i(0), unit.clone())],
            0,
            unit,
        );
        // base coefficient 2t reaches 2 > 1 at t = 1
        let prob = prob.unwrap();
        assert!(matches!(lct_segment(&prob), Err(LctError::LcHypothesis(_))));
    }

    #[test]
    fn argmin_changes_across_breakpoints() {
        let prob = two_row_segment_problem();
        let seg = lct_segment(&prob).unwrap();
        for w in seg.places.windows(2) {
            assert_ne!(w[0].1, w[1].1);
        }
    }

    #[test]
    fn local_vertex_two_rows() {
        let prob = two_row_segment_problem();
        let (t_fn, c) = local_vertex_function(&prob, &rat_i(1)).unwrap();
        assert_eq!(c, rat(1, 2));
        assert!(t_fn.same_fn(&AffineFn::constant(rat(1, 2), Interval::unit())));
    }

    #[test]
    fn local_vertex_single_row_runs_to_lambda0() {
        let datum = ResolutionDatum::new(
            1,
            vec![row(&[(1, 1)], (0, 1), "only", RowKind::Exceptional)],
        )
        .unwrap();
        let prob = SegmentProblem::new(
            datum,
            vec![AffineFn::constant(rat_i(0), Interval::unit())],
            0,
            Interval::unit(),
        )
        .unwrap();
        let (t_fn, c) = local_vertex_function(&prob, &rat_i(1)).unwrap();
        assert_eq!(c, rat_i(1));
        assert_eq!(t_fn.fn_key(), (rat_i(0), rat_i(1)));
    }

    #[test]
    fn local_vertex_engineered_breakpoint() {
        // tau_1 = 1 - t, tau_2 = 6/7: crossing at t = 1/7.
        let datum = ResolutionDatum::new(
            2,
            vec![
                row(&[(1, 1), (1, 1)], (0, 1), "moving", RowKind::Exceptional),
                row(&[(0, 1), (7, 6)], (0, 1), "flat", RowKind::Exceptional),
            ],
        )
        .unwrap();
        let unit = Interval::unit();
        let prob = SegmentProblem::new(
            datum,
            vec![
                AffineFn::new(rat_i(1), rat_i(0), unit.clone()),
                AffineFn::constant(rat_i(0), unit.clone()),
            ],
            1,
            unit,
        )
        .unwrap();
        let (_, c) = local_vertex_function(&prob, &rat_i(1)).unwrap();
        assert_eq!(c, rat(1, 7));
    }

    #[test]
    fn adjunction_identity_and_bounds() {
        let unit = Interval::unit();
        let t = AffineFn::new(rat_i(1), rat_i(0), unit.clone());
        // m = 1 is the identity on F_+
        let (f, w) = adjunction_coefficient(1, &[(1, t.clone())]).unwrap();
        assert!(f.same_fn(&t));
        assert!(w.is_valid());
        // m = 2 with b = 1: (1 + 1)/2 = 1
        let one = AffineFn::constant(rat_i(1), unit.clone());
        let (f, _) = adjunction_coefficient(2, &[(1, one)]).unwrap();
        assert_eq!(f.fn_key(), (rat_i(0), rat_i(1)));
        // m = 3, r = 2, b = t/4: (2 + t/2)/3, max 5/6 at t = 1
        let quarter_t = AffineFn::new(rat(1, 4), rat_i(0), unit.clone());
        let (f, _) = adjunction_coefficient(3, &[(2, quarter_t)]).unwrap();
        assert_eq!(f.eval(&rat_i(0)), rat(2, 3));
        assert_eq!(f.eval(&rat_i(1)), rat(5, 6));
        // exceeding 1 is rejected
        let big = AffineFn::constant(rat(3, 2), unit.clone());
        assert!(matches!(
            adjunction_coefficient(1, &[(1, big)]),
            Err(LctError::NotBoundary(_))
        ));
    }

    #[test]
    fn datum_json_round_trip() {
        let datum = monomial_datum();
        let js = serde_json::to_string(&datum).unwrap();
        assert!(js.contains("\"kind\":\"exceptional\""));
        assert!(js.contains("\"3/2\""));
        let back: ResolutionDatum = serde_json::from_str(&js).unwrap();
        assert_eq!(datum, back);
    }
}
