//! Exact enumeration of numerically-trivial decompositions
//! `K = sum r_j (m_j - 1 + v_j)/m_j` and the two-testing-divisor surface
//! relation.

use num_traits::{Signed, Zero};

use crate::affine::AffineFn;
use crate::error::SetError;
use crate::rational::{rat_i, Rat};

use super::derived::{derived_set, DerivedMember};
use super::family::{Caps, FnFamily};

/// One decomposition of the constant `K` into derived-set values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Parts grouped by value: (multiplicity, derived member).
    pub parts: Vec<(u64, DerivedMember)>,
}

impl Decomposition {
    /// The expanded value multiset, repeating each part by multiplicity.
    pub fn value_multiset(&self) -> Vec<AffineFn> {
        let mut out = Vec::new();
        for (r, m) in &self.parts {
            for _ in 0..*r {
                out.push(m.func.clone());
            }
        }
        out
    }

    pub fn term_count(&self) -> u64 {
        self.parts.iter().map(|(r, _)| *r).sum()
    }

    /// Exact sum of the expanded values as an affine function.
    pub fn sum(&self) -> AffineFn {
        let mut acc: Option<AffineFn> = None;
        for (r, m) in &self.parts {
            let scaled = m.func.scale(&rat_i(*r as i64));
            acc = Some(match acc {
                Some(a) => a.add_fn(&scaled),
                None => scaled,
            });
        }
        acc.expect("decompositions are nonempty")
    }
}

/// Enumerates every multiset of nonzero derived-set values (within caps)
/// whose sum is identically `K` on the family interval: slope zero and
/// intercept `K`, decided exactly by matching both endpoint values.
pub fn trivial_decompositions(
    k: &Rat,
    family: &FnFamily,
    caps: &Caps,
) -> Result<Vec<Decomposition>, SetError> {
    if !k.is_positive() {
        return Err(SetError::InvalidFamily(
            "decomposition target K must be positive".into(),
        ));
    }
    let derived = derived_set(family, &family.interval().hi, caps)?;
    let candidates: Vec<DerivedMember> = derived
        .members
        .into_iter()
        .filter(|m| !m.func.is_zero_fn())
        .collect();

    let mut results = Vec::new();
    let mut combo: Vec<(u64, usize)> = Vec::new();
    fn rec(
        cands: &[DerivedMember],
        start: usize,
        rem_lo: &Rat,
        rem_hi: &Rat,
        terms_left: u64,
        combo: &mut Vec<(u64, usize)>,
        results: &mut Vec<Decomposition>,
    ) {
        if rem_lo.is_zero() && rem_hi.is_zero() {
            results.push(Decomposition {
                parts: combo
                    .iter()
                    .map(|&(r, i)| (r, cands[i].clone()))
                    .collect(),
            });
            return;
        }
        if terms_left == 0 {
            return;
        }
        for i in start..cands.len() {
            let lo = cands[i].func.eval_lo();
            let hi = cands[i].func.eval_hi();
            if lo > *rem_lo || hi > *rem_hi {
                continue;
            }
            let next_lo = rem_lo - &lo;
            let next_hi = rem_hi - &hi;
            match combo.last_mut() {
                Some((r, j)) if *j == i => *r += 1,
                _ => combo.push((1, i)),
            }
            rec(cands, i, &next_lo, &next_hi, terms_left - 1, combo, results);
            match combo.last_mut() {
                Some((r, _)) if *r > 1 => *r -= 1,
                _ => {
                    combo.pop();
                }
            }
        }
    }
    rec(
        &candidates,
        0,
        k,
        k,
        caps.term_cap as u64,
        &mut combo,
        &mut results,
    );
    Ok(results)
}

/// Solves the degree-two relation `sum_j (a_j lambda + b_j t) = 2` for
/// `t`: the restriction of a numerically trivial pair to a rational
/// curve. Fails when `sum b_j = 0`.
pub fn surface_relation_solve(pairs: &[(Rat, Rat)], lambda: &Rat) -> Result<Rat, SetError> {
    let sum_a: Rat = pairs.iter().map(|(a, _)| a.clone()).sum();
    let sum_b: Rat = pairs.iter().map(|(_, b)| b.clone()).sum();
    if sum_b.is_zero() {
        return Err(SetError::DegenerateRelation);
    }
    Ok((rat_i(2) - lambda * sum_a) / sum_b)
}

/// Monotone comparison: when the first coefficient list is dominated
/// componentwise by the second and `lambda > 0`, the solved value for the
/// first is at least the value for the second. Returns both values and
/// whether the domination hypothesis holds.
pub fn surface_relation_compare(
    small: &[(Rat, Rat)],
    large: &[(Rat, Rat)],
    lambda: &Rat,
) -> Result<(Rat, Rat, bool), SetError> {
    let dominated = small.len() == large.len()
        && small
            .iter()
            .zip(large)
            .all(|((a1, b1), (a2, b2))| a1 <= a2 && b1 <= b2);
    let t1 = surface_relation_solve(small, lambda)?;
    let t2 = surface_relation_solve(large, lambda)?;
    Ok((t1, t2, dominated))
}
