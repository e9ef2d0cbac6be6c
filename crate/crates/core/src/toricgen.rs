//! Ground-truth generator for monomial divisor data on affine space.
//!
//! For torus-invariant divisors the log canonicity conditions are carried
//! entirely by monomial valuations: a weight `w` contributes the
//! constraint `sum_j t_j <w, a_j> <= sum_i w_i`. Enumerating primitive
//! weights up to a bound and normalizing by the weight sum produces
//! resolution rows in the standard shape, and a stability report over
//! growing bounds certifies empirically that the truncation captured
//! every binding weight. That certificate, not a theorem, is this
//! module's correctness contract.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LctError;
use crate::exactgeom::{HPolytope, QVector};
use crate::lctcore::{build_lct_polytope, ResolutionDatum, ResolutionRow, RowKind, Threshold};
use crate::linalg;
use crate::rational::{rat_i, Rat};

/// Monomial divisors `D_j = div(x^{a_j})` on affine `n`-space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialDivisorSet {
    pub n: usize,
    pub exponents: Vec<Vec<u32>>,
}

impl MonomialDivisorSet {
    pub fn new(n: usize, exponents: Vec<Vec<u32>>) -> Result<Self, LctError> {
        if n == 0 || exponents.is_empty() {
            return Err(LctError::InvalidDatum(
                "need ambient dimension >= 1 and at least one divisor".into(),
            ));
        }
        for a in &exponents {
            if a.len() != n {
                return Err(LctError::InvalidDatum(format!(
                    "exponent vector {a:?} does not have length {n}"
                )));
            }
            if a.iter().all(|&e| e == 0) {
                return Err(LctError::InvalidDatum(
                    "divisor exponent vectors must be nonzero".into(),
                ));
            }
        }
        Ok(MonomialDivisorSet { n, exponents })
    }

    pub fn s(&self) -> usize {
        self.exponents.len()
    }
}

/// All primitive weights `w` in `Z^n_{>= 0} \ {0}` with `sum w_i <=
/// bound`, ordered by weight sum then lexicographically.
fn primitive_weights(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(n: usize, bound: u32, idx: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == n {
            let g = current.iter().fold(0u32, |acc, &v| acc.gcd(&v));
            if g == 1 {
                out.push(current.clone());
            }
            return;
        }
        let used: u32 = current[..idx].iter().sum();
        for v in 0..=(bound - used) {
            current[idx] = v;
            rec(n, bound, idx + 1, current, out);
        }
        current[idx] = 0;
    }
    rec(n, bound, 0, &mut current, &mut out);
    out.sort_by_key(|w| (w.iter().sum::<u32>(), w.clone()));
    out
}

fn weight_label(w: &[u32]) -> String {
    let parts: Vec<String> = w.iter().map(|v| v.to_string()).collect();
    format!("w({})", parts.join(","))
}

/// Normalized row from one weight: `a_j = <w, a_j> / |w|`, offset 0.
fn weight_row(mds: &MonomialDivisorSet, w: &[u32]) -> Vec<Rat> {
    let total: i64 = w.iter().map(|&v| v as i64).sum();
    mds.exponents
        .iter()
        .map(|a| {
            let pairing: i64 = a
                .iter()
                .zip(w)
                .map(|(&e, &wi)| e as i64 * wi as i64)
                .sum();
            Rat::new(pairing.into(), total.into())
        })
        .collect()
}

fn is_coordinate_weight(w: &[u32]) -> bool {
    w.iter().filter(|&&v| v != 0).count() == 1 && w.iter().sum::<u32>() == 1
}

/// Deduplicated, domination-filtered rows for all primitive weights up to
/// the bound. Over the nonnegative orthant a row with componentwise
/// smaller coefficients is implied by a larger one, so only maximal rows
/// survive.
fn candidate_rows(
    mds: &MonomialDivisorSet,
    bound: u32,
) -> Vec<(Vec<Rat>, String, RowKind)> {
    let mut rows: Vec<(Vec<Rat>, String, RowKind)> = Vec::new();
    for w in primitive_weights(mds.n, bound) {
        let a = weight_row(mds, &w);
        if a.iter().all(|c| c.is_zero()) {
            continue;
        }
        let kind = if is_coordinate_weight(&w) {
            RowKind::StrictTransform
        } else {
            RowKind::Exceptional
        };
        if !rows.iter().any(|(existing, _, _)| *existing == a) {
            rows.push((a, weight_label(&w), kind));
        }
    }
    let dominated = |a: &[Rat], by: &[Rat]| a.iter().zip(by).all(|(x, y)| x <= y);
    let keep: Vec<bool> = rows
        .iter()
        .enumerate()
        .map(|(i, (a, _, _))| {
            !rows
                .iter()
                .enumerate()
                .any(|(j, (other, _, _))| j != i && dominated(a, other) && a != other)
        })
        .collect();
    rows.into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r)
        .collect()
}

/// Vertices of the system `x >= 0`, `a . x <= 1` over the given rows.
fn system_vertices(s: usize, rows: &[(Vec<Rat>, String, RowKind)]) -> Vec<QVector> {
    let mut all_rows: Vec<Vec<Rat>> = Vec::with_capacity(s + rows.len());
    let mut rhs: Vec<Rat> = Vec::with_capacity(s + rows.len());
    for i in 0..s {
        let mut r = vec![Rat::zero(); s];
        r[i] = -Rat::one();
        all_rows.push(r);
        rhs.push(Rat::zero());
    }
    for (a, _, _) in rows {
        all_rows.push(a.clone());
        rhs.push(Rat::one());
    }
    crate::exactgeom::enumerate_vertices_raw(s, &all_rows, &rhs)
}

/// Converts monomial divisor data into a resolution datum: one row per
/// primitive weight up to the bound, redundant rows removed. The rows
/// that survive are exactly the facets of the LCT-polytope beyond the
/// coordinate hyperplanes (the polytope is bounded and full-dimensional,
/// so a row is irredundant iff its tight vertex set spans a facet).
pub fn toric_datum(mds: &MonomialDivisorSet, weight_bound: u32) -> ResolutionDatum {
    let s = mds.s();
    let rows = candidate_rows(mds, weight_bound);
    let vertices = system_vertices(s, &rows);
    let kept: Vec<ResolutionRow> = rows
        .into_iter()
        .filter(|(a, _, _)| {
            let tight: Vec<&QVector> = vertices
                .iter()
                .filter(|v| linalg::dot(a, v.coords()) == Rat::one())
                .collect();
            if tight.is_empty() {
                return false;
            }
            let diffs: Vec<Vec<Rat>> = tight[1..]
                .iter()
                .map(|v| {
                    v.coords()
                        .iter()
                        .zip(tight[0].coords())
                        .map(|(x, y)| x - y)
                        .collect()
                })
                .collect();
            linalg::rank(&diffs) == s - 1
        })
        .map(|(a, label, kind)| ResolutionRow {
            a,
            b: Rat::zero(),
            label,
            kind,
        })
        .collect();
    ResolutionDatum::new(s, kept).expect("generated rows satisfy the sign conditions")
}

/// Independent brute-force threshold along a ray from the origin: the
/// minimum of `|w| / sum_j d_j <w, a_j>` over every enumerated weight,
/// straight from the discrepancy inequality with no polytope machinery.
pub fn toric_ray_oracle(
    mds: &MonomialDivisorSet,
    weight_bound: u32,
    direction: &QVector,
) -> Result<Threshold, LctError> {
    if direction.dim() != mds.s() {
        return Err(LctError::InvalidDatum(format!(
            "direction has {} entries for {} divisors",
            direction.dim(),
            mds.s()
        )));
    }
    if direction.is_zero() || direction.coords().iter().any(|c| c.is_negative()) {
        return Err(LctError::InvalidDatum(
            "direction must be nonzero and nonnegative".into(),
        ));
    }
    let mut best: Option<Rat> = None;
    for w in primitive_weights(mds.n, weight_bound) {
        let total = rat_i(w.iter().map(|&v| v as i64).sum());
        let mut pairing = Rat::zero();
        for (a, d) in mds.exponents.iter().zip(direction.coords()) {
            let wa: i64 = a
                .iter()
                .zip(&w)
                .map(|(&e, &wi)| e as i64 * wi as i64)
                .sum();
            pairing = pairing + d * rat_i(wa);
        }
        if pairing.is_positive() {
            let t = total / pairing;
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

/// Stability report over an increasing list of weight bounds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilityReport {
    pub bounds: Vec<u32>,
    /// Bounds at which the polytope strictly shrank relative to the
    /// previous listed bound.
    pub changed_at: Vec<u32>,
    /// Smallest listed bound from which the polytope never changes again,
    /// provided at least one later bound confirms it.
    pub stabilized_at: Option<u32>,
    pub final_polytope: HPolytope,
}

/// Recomputes the polytope at each bound and reports when it stops
/// changing. Bounds where no new weight cuts the current polytope are
/// confirmed by substituting its vertices, which avoids re-enumeration.
pub fn oracle_stability(
    mds: &MonomialDivisorSet,
    bounds: &[u32],
) -> Result<StabilityReport, LctError> {
    let mut sorted: Vec<u32> = bounds.iter().copied().filter(|&b| b >= 1).collect();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(LctError::InvalidDatum("no weight bounds given".into()));
    }

    let mut changed_at = Vec::new();
    let mut current_bound = sorted[0];
    let mut datum = toric_datum(mds, current_bound);
    let mut polytope = build_lct_polytope(&datum);
    let mut last_change = current_bound;
    for &b in &sorted[1..] {
        // New weights cut the polytope iff some new normalized row
        // exceeds 1 at a current vertex.
        let vertices = polytope.vertex_enumerate()?.vertices.clone();
        let mut cuts = false;
        'outer: for w in primitive_weights(mds.n, b) {
            if w.iter().map(|&v| v as u32).sum::<u32>() <= current_bound {
                continue;
            }
            let a = weight_row(mds, &w);
            for v in &vertices {
                if linalg::dot(&a, v.coords()) > Rat::one() {
                    cuts = true;
                    break 'outer;
                }
            }
        }
        if cuts {
            datum = toric_datum(mds, b);
            polytope = build_lct_polytope(&datum);
            changed_at.push(b);
            last_change = b;
        }
        current_bound = b;
    }
    let stabilized_at = if last_change < *sorted.last().unwrap() {
        Some(last_change)
    } else {
        None
    };
    Ok(StabilityReport {
        bounds: sorted,
        changed_at,
        stabilized_at,
        final_polytope: polytope,
    })
}
