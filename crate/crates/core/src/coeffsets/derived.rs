//! The derived coefficient-set algebra for affine-function families:
//! bounded positive-integer combinations, the `(m - 1 + v)/m` derived
//! sets on shrinking intervals, exact membership queries, the inverse
//! image construction, and the idempotence checker.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::AffineFn;
use crate::error::SetError;
use crate::rational::{rat_to_string, Interval, Rat};

use super::family::{Caps, FnFamily};

/// Certificate that `(m - 1 + sum n_i f_i) / m` stays at most 1 on the
/// witness interval; the sum is over the listed terms with positive
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompWitness {
    pub m: u64,
    pub terms: Vec<(u64, AffineFn)>,
    pub interval: Interval,
}

impl DecompWitness {
    /// The inner combination `v = sum n_i f_i` as a function.
    pub fn inner_sum(&self) -> AffineFn {
        let mut v = AffineFn::constant(Rat::zero(), self.interval.clone());
        for (n, f) in &self.terms {
            v = v.add_fn(&f.scale(&Rat::from_integer((*n).into())));
        }
        v.with_domain(self.interval.clone())
    }

    /// The derived function `(m - 1 + v) / m`.
    pub fn derived_fn(&self) -> AffineFn {
        let m = Rat::from_integer(self.m.into());
        let v = self.inner_sum();
        AffineFn::new(
            &v.slope / &m,
            (&m - Rat::one() + &v.intercept) / &m,
            self.interval.clone(),
        )
    }

    /// Endpoint check of the `<= 1` invariant (linearity makes it exact).
    pub fn is_valid(&self) -> bool {
        self.m >= 1
            && self.terms.iter().all(|(n, _)| *n >= 1)
            && self.inner_sum().max_on_domain() <= Rat::one()
    }
}

/// Member of `F_+` together with its combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPlusMember {
    pub func: AffineFn,
    pub combo: Vec<(u64, AffineFn)>,
}

/// Output of [`f_plus`]: complete unless parametric tails were cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPlusResult {
    pub members: Vec<FPlusMember>,
    pub cut: Rat,
    pub complete: bool,
}

/// All positive-integer combinations `v = sum n_i f_i` with `v <= 1` on
/// `[a, c]`, plus the zero function.
///
/// Completeness: a nonzero nonnegative affine member has a positive value
/// at `a` or at `c`, so its multiplicity in any admissible combination is
/// bounded and the search is exhaustive.
pub fn f_plus(family: &FnFamily, cut: &Rat, caps: &Caps) -> Result<FPlusResult, SetError> {
    let interval = family.interval();
    if *cut <= interval.lo || *cut > interval.hi {
        return Err(SetError::BadCut(format!(
            "c = {} not in ({}, {}]",
            rat_to_string(cut),
            rat_to_string(&interval.lo),
            rat_to_string(&interval.hi)
        )));
    }
    let sub = Interval::new(interval.lo.clone(), cut.clone()).unwrap();
    let (base, complete) = family.instantiated_members(caps.m_cap);
    let base: Vec<AffineFn> = base.into_iter().map(|f| f.with_domain(sub.clone())).collect();

    let mut members = vec![FPlusMember {
        func: AffineFn::constant(Rat::zero(), sub.clone()),
        combo: Vec::new(),
    }];
    let one = Rat::one();
    enumerate_sums_upto(&base, &one, &one, &mut |func, combo| {
        members.push(FPlusMember {
            func: func.clone(),
            combo: combo
                .iter()
                .map(|&(n, i)| (n, base[i].clone()))
                .collect(),
        });
    });
    members.sort_by_key(|m| m.func.fn_key());
    members.dedup_by_key(|m| m.func.fn_key());
    Ok(FPlusResult {
        members,
        cut: cut.clone(),
        complete,
    })
}

/// Depth-first enumeration of all combinations `sum n_i base_i` whose
/// values at both domain endpoints stay at most `limit_lo` / `limit_hi`.
/// Visits each combination exactly once (indices non-decreasing).
fn enumerate_sums_upto(
    base: &[AffineFn],
    limit_lo: &Rat,
    limit_hi: &Rat,
    visit: &mut impl FnMut(&AffineFn, &[(u64, usize)]),
) {
    let domain = match base.first() {
        Some(f) => f.domain.clone(),
        None => return,
    };
    let mut combo: Vec<(u64, usize)> = Vec::new();
    let zero = AffineFn::constant(Rat::zero(), domain);
    fn rec(
        base: &[AffineFn],
        start: usize,
        current: &AffineFn,
        combo: &mut Vec<(u64, usize)>,
        limit_lo: &Rat,
        limit_hi: &Rat,
        visit: &mut impl FnMut(&AffineFn, &[(u64, usize)]),
    ) {
        for i in start..base.len() {
            let next = current.add_fn(&base[i]);
            if next.eval_lo() > *limit_lo || next.eval_hi() > *limit_hi {
                continue;
            }
            match combo.last_mut() {
                Some((n, j)) if *j == i => *n += 1,
                _ => combo.push((1, i)),
            }
            visit(&next, combo);
            rec(base, i, &next, combo, limit_lo, limit_hi, visit);
            match combo.last_mut() {
                Some((n, _)) if *n > 1 => *n -= 1,
                _ => {
                    combo.pop();
                }
            }
        }
    }
    rec(base, 0, &zero, &mut combo, limit_lo, limit_hi, visit);
}

/// Exact decomposition of `target` as `sum n_i base_i` (endpoint values
/// matched, hence syntactic identity). `forced` pins one base index to
/// appear with multiplicity at least 1. Returns the lexicographically
/// first combination in the canonical enumeration order.
fn decompose_exact(
    base: &[AffineFn],
    target_lo: &Rat,
    target_hi: &Rat,
    forced: Option<usize>,
) -> Option<Vec<(u64, usize)>> {
    if target_lo.is_negative() || target_hi.is_negative() {
        return None;
    }
    // Peel off the forced member first.
    let (mut start_lo, mut start_hi) = (target_lo.clone(), target_hi.clone());
    if let Some(f) = forced {
        start_lo = start_lo - base[f].eval_lo();
        start_hi = start_hi - base[f].eval_hi();
        if start_lo.is_negative() || start_hi.is_negative() {
            return None;
        }
    }
    fn rec(
        base: &[AffineFn],
        start: usize,
        rem_lo: &Rat,
        rem_hi: &Rat,
        combo: &mut Vec<(u64, usize)>,
    ) -> bool {
        if rem_lo.is_zero() && rem_hi.is_zero() {
            return true;
        }
        for i in start..base.len() {
            let lo = base[i].eval_lo();
            let hi = base[i].eval_hi();
            if lo > *rem_lo || hi > *rem_hi {
                continue;
            }
            let next_lo = rem_lo - &lo;
            let next_hi = rem_hi - &hi;
            match combo.last_mut() {
                Some((n, j)) if *j == i => *n += 1,
                _ => combo.push((1, i)),
            }
            if rec(base, i, &next_lo, &next_hi, combo) {
                return true;
            }
            match combo.last_mut() {
                Some((n, _)) if *n > 1 => *n -= 1,
                _ => {
                    combo.pop();
                }
            }
        }
        false
    }
    let mut combo = Vec::new();
    if let Some(f) = forced {
        combo.push((1, f));
    }
    if rec(base, 0, &start_lo, &start_hi, &mut combo) {
        // Merge the forced head in case the search also picked index f.
        let mut merged: Vec<(u64, usize)> = Vec::new();
        combo.sort_by_key(|&(_, i)| i);
        for (n, i) in combo {
            match merged.last_mut() {
                Some((m, j)) if *j == i => *m += n,
                _ => merged.push((n, i)),
            }
        }
        Some(merged)
    } else {
        None
    }
}

/// Member of a derived set with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedMember {
    pub func: AffineFn,
    pub witness: DecompWitness,
}

/// Output of [`derived_set`] / [`script_d`]. The list is exact for
/// denominators up to `m_cap`; the true set continues beyond the cap,
/// so `complete` is false unless stated otherwise by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedResult {
    pub members: Vec<DerivedMember>,
    pub m_cap: u64,
    pub complete: bool,
}

impl DerivedResult {
    pub fn contains_fn(&self, g: &AffineFn) -> bool {
        self.members.iter().any(|m| m.func.same_fn(g))
    }

    pub fn functions(&self) -> Vec<AffineFn> {
        self.members.iter().map(|m| m.func.clone()).collect()
    }
}

/// `D(F, [a, c])`: all `(m - 1 + v)/m <= 1` with `v` in `F_+` over
/// `[a, c]` and `m <= m_cap`. Since `v <= 1` already, the `<= 1`
/// condition on the derived function is automatic.
pub fn derived_set(family: &FnFamily, cut: &Rat, caps: &Caps) -> Result<DerivedResult, SetError> {
    let fp = f_plus(family, cut, caps)?;
    let sub = Interval::new(family.interval().lo.clone(), cut.clone()).unwrap();
    let mut members: Vec<DerivedMember> = Vec::new();
    for m in 1..=caps.m_cap {
        for v in &fp.members {
            let witness = DecompWitness {
                m,
                terms: v.combo.clone(),
                interval: sub.clone(),
            };
            let func = witness.derived_fn();
            members.push(DerivedMember { func, witness });
        }
    }
    members.sort_by(|x, y| {
        x.func
            .fn_key()
            .cmp(&y.func.fn_key())
            .then(x.witness.m.cmp(&y.witness.m))
    });
    members.dedup_by_key(|m| m.func.fn_key());
    Ok(DerivedResult {
        members,
        m_cap: caps.m_cap,
        complete: false,
    })
}

/// Grid-based under-approximation of `script D(F) = union over c of
/// D(F, [a, c])`. Member functions are re-domained to the full interval;
/// each witness records the cut it was built on.
pub fn script_d(
    family: &FnFamily,
    c_grid: &[Rat],
    caps: &Caps,
) -> Result<DerivedResult, SetError> {
    let mut grid = c_grid.to_vec();
    grid.sort();
    grid.dedup();
    let mut members: Vec<DerivedMember> = Vec::new();
    for c in &grid {
        let d = derived_set(family, c, caps)?;
        for mut m in d.members {
            m.func = m.func.with_domain(family.interval().clone());
            members.push(m);
        }
    }
    members.sort_by(|x, y| {
        x.func
            .fn_key()
            .cmp(&y.func.fn_key())
            .then(x.witness.m.cmp(&y.witness.m))
            .then(x.witness.interval.hi.cmp(&y.witness.interval.hi))
    });
    members.dedup_by_key(|m| m.func.fn_key());
    Ok(DerivedResult {
        members,
        m_cap: caps.m_cap,
        complete: false,
    })
}

/// Exact, grid-free membership query for `script D(F)` within the `m`
/// cap: is `g = (m - 1 + v)/m` for some `m <= m_cap`, some positive
/// combination `v` of members, and some cut `c` in `(a, b]` with
/// `v <= 1` on `[a, c]`? The witness cut is solved for exactly.
pub fn script_d_contains(
    g: &AffineFn,
    family: &FnFamily,
    caps: &Caps,
) -> Result<Option<DecompWitness>, SetError> {
    let interval = family.interval();
    let (base, _) = family.instantiated_members(caps.m_cap);
    let base: Vec<AffineFn> = base
        .into_iter()
        .map(|f| f.with_domain(interval.clone()))
        .collect();
    let g = g.with_domain(interval.clone());
    for m in 1..=caps.m_cap {
        let mr = Rat::from_integer(m.into());
        // v = m*g - (m-1)
        let v = AffineFn::new(
            &g.slope * &mr,
            &g.intercept * &mr - (&mr - Rat::one()),
            interval.clone(),
        );
        let v_lo = v.eval_lo();
        let v_hi = v.eval_hi();
        if v_lo.is_negative() || v_hi.is_negative() {
            continue; // not a nonnegative combination at this m
        }
        // A valid cut c > a with v <= 1 on [a, c] exists iff
        // v(a) < 1, or v(a) = 1 and v is non-increasing.
        let one = Rat::one();
        if v_lo > one || (v_lo == one && v_hi > one) {
            continue;
        }
        let Some(combo) = decompose_exact(&base, &v_lo, &v_hi, None) else {
            continue;
        };
        let cut = if v_hi <= one {
            interval.hi.clone()
        } else {
            // v(a) < 1 < v(b): solve v(c) = 1 exactly.
            (&one - &v.intercept) / &v.slope
        };
        let witness = DecompWitness {
            m,
            terms: combo.into_iter().map(|(n, i)| (n, base[i].clone())).collect(),
            interval: Interval::new(interval.lo.clone(), cut).unwrap(),
        };
        debug_assert!(witness.is_valid());
        debug_assert!(witness.derived_fn().same_fn(&g));
        return Ok(Some(witness));
    }
    Ok(None)
}

/// Member of the inverse image with the witness that put it there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseMember {
    pub func: AffineFn,
    pub target: AffineFn,
    pub witness: DecompWitness,
}

/// `script D^{-1}(D_0)`: members `f` of the family admitting positive
/// integers `m, n, n_j` and members `f_j` with
/// `(m - 1 + n f + sum n_j f_j)/m` syntactically equal to an element of
/// `D_0`.
pub fn script_d_inverse(
    d0: &[AffineFn],
    family: &FnFamily,
    caps: &Caps,
) -> Result<Vec<InverseMember>, SetError> {
    let interval = family.interval();
    let (base, _) = family.instantiated_members(caps.m_cap);
    let base: Vec<AffineFn> = base
        .into_iter()
        .map(|f| f.with_domain(interval.clone()))
        .collect();
    let mut out = Vec::new();
    for (fi, f) in base.iter().enumerate() {
        let mut found: Option<InverseMember> = None;
        'search: for target in d0 {
            let target = target.with_domain(interval.clone());
            for m in 1..=caps.m_cap {
                let mr = Rat::from_integer(m.into());
                let v = AffineFn::new(
                    &target.slope * &mr,
                    &target.intercept * &mr - (&mr - Rat::one()),
                    interval.clone(),
                );
                let v_lo = v.eval_lo();
                let v_hi = v.eval_hi();
                if v_lo.is_negative() || v_hi.is_negative() {
                    continue;
                }
                if let Some(combo) = decompose_exact(&base, &v_lo, &v_hi, Some(fi)) {
                    found = Some(InverseMember {
                        func: f.clone(),
                        target: target.clone(),
                        witness: DecompWitness {
                            m,
                            terms: combo
                                .into_iter()
                                .map(|(n, i)| (n, base[i].clone()))
                                .collect(),
                            interval: interval.clone(),
                        },
                    });
                    break 'search;
                }
            }
        }
        if let Some(w) = found {
            out.push(w);
        }
    }
    Ok(out)
}

/// Report of the capped idempotence checks `D(F)_+ = D(F)` and
/// `script D(script D(F)) = script D(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotenceReport {
    pub sums_checked: usize,
    pub nested_checked: usize,
    /// Hard violations: combinations provably outside the derived set
    /// within caps on a family whose enumeration was complete. Any entry
    /// here is a bug in the algebra.
    pub violations: Vec<String>,
    /// Failures on families with truncated (parametric) enumerations;
    /// these cannot distinguish a missing witness from a cut tail.
    pub truncation_artifacts: Vec<String>,
    /// Composite denominators `(outer m, witness m)` observed when
    /// re-deriving nested members; for a pure nesting of `m` over `n`
    /// the witness denominator is the product `m * n`.
    pub collapses: Vec<(u64, u64)>,
    pub passed: bool,
}

/// Verifies, on capped enumerations, that (i) every sum of derived-set
/// members staying at most 1 is itself a derived-set member, and that
/// (ii) every member of the twice-derived set (built on `grid`) is
/// reproduced in `script D(F)` with a composite denominator.
pub fn check_idempotence(
    family: &FnFamily,
    caps: &Caps,
    grid: &[Rat],
) -> Result<IdempotenceReport, SetError> {
    if !family.contains_one() {
        return Err(SetError::MissingOne);
    }
    let interval = family.interval();
    let truncated = !family.parametric().is_empty();
    let mut report = IdempotenceReport {
        sums_checked: 0,
        nested_checked: 0,
        violations: Vec::new(),
        truncation_artifacts: Vec::new(),
        collapses: Vec::new(),
        passed: true,
    };

    // (i) D(F)_+ cap {<= 1} subseteq D(F) on the full interval.
    let d_full = derived_set(family, &interval.hi, caps)?;
    let basis: Vec<AffineFn> = d_full
        .members
        .iter()
        .map(|m| m.func.with_domain(interval.clone()))
        .filter(|f| !f.is_zero_fn())
        .collect();
    let mut sums: Vec<AffineFn> = Vec::new();
    let one = Rat::one();
    enumerate_sums_upto(&basis, &one, &one, &mut |func, combo| {
        let nterms: u64 = combo.iter().map(|&(n, _)| n).sum();
        if nterms >= 2 && nterms <= caps.term_cap as u64 {
            sums.push(func.clone());
        }
    });
    sums.sort_by_key(|f| f.fn_key());
    sums.dedup_by_key(|f| f.fn_key());
    let member_caps = Caps {
        m_cap: caps.m_cap * caps.m_cap,
        term_cap: caps.term_cap,
    };
    for g in &sums {
        report.sums_checked += 1;
        if d_full.contains_fn(g) {
            continue;
        }
        // Membership must hold at the full cut [a, b].
        let found = d_contains_at_cut(g, family, &interval.hi, &member_caps)?;
        if found.is_none() {
            let msg = format!("sum {g} escaped D(F)");
            if truncated {
                report.truncation_artifacts.push(msg);
            } else {
                report.violations.push(msg);
            }
        }
    }

    // (ii) script D of script D(F), built on the grid, collapses back.
    let d1 = script_d(family, grid, caps)?;
    let inner_members: Vec<AffineFn> = d1
        .members
        .iter()
        .map(|m| m.func.clone())
        .filter(|f| !f.is_zero_fn())
        .collect();
    let nested_family = FnFamily::new(interval.clone(), inner_members, Vec::new())?;
    let d2 = script_d(&nested_family, grid, caps)?;
    for m2 in &d2.members {
        report.nested_checked += 1;
        match script_d_contains(&m2.func, family, &member_caps)? {
            Some(w) => report.collapses.push((m2.witness.m, w.m)),
            None => {
                let msg = format!("nested member {} not reproduced", m2.func);
                if truncated {
                    report.truncation_artifacts.push(msg);
                } else {
                    report.violations.push(msg);
                }
            }
        }
    }

    report.passed = report.violations.is_empty();
    Ok(report)
}

/// Membership in `D(F, [a, c])` at a fixed cut (no cut solving).
fn d_contains_at_cut(
    g: &AffineFn,
    family: &FnFamily,
    cut: &Rat,
    caps: &Caps,
) -> Result<Option<DecompWitness>, SetError> {
    let interval = family.interval();
    let sub = Interval::new(interval.lo.clone(), cut.clone()).unwrap();
    let (base, _) = family.instantiated_members(caps.m_cap);
    let base: Vec<AffineFn> = base.into_iter().map(|f| f.with_domain(sub.clone())).collect();
    let g = g.with_domain(sub.clone());
    let one = Rat::one();
    for m in 1..=caps.m_cap {
        let mr = Rat::from_integer(m.into());
        let v = AffineFn::new(
            &g.slope * &mr,
            &g.intercept * &mr - (&mr - Rat::one()),
            sub.clone(),
        );
        let v_lo = v.eval_lo();
        let v_hi = v.eval_hi();
        if v_lo.is_negative() || v_hi.is_negative() || v_lo > one || v_hi > one {
            continue;
        }
        if let Some(combo) = decompose_exact(&base, &v_lo, &v_hi, None) {
            return Ok(Some(DecompWitness {
                m,
                terms: combo.into_iter().map(|(n, i)| (n, base[i].clone())).collect(),
                interval: sub,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn unit() -> Interval {
        Interval::unit()
    }

    fn fam_one() -> FnFamily {
        FnFamily::constants(unit(), [rat_i(1)]).unwrap()
    }

    fn fam_one_t() -> FnFamily {
        FnFamily::new(
            unit(),
            vec![
                AffineFn::constant(rat_i(1), unit()),
                AffineFn::new(rat_i(1), rat_i(0), unit()),
            ],
            vec![],
        )
        .unwrap()
    }

    fn keys(fns: &[AffineFn]) -> Vec<(Rat, Rat)> {
        fns.iter().map(|f| f.fn_key()).collect()
    }

    #[test]
    fn f_plus_of_one() {
        let fp = f_plus(&fam_one(), &rat_i(1), &Caps::default()).unwrap();
        let funcs: Vec<AffineFn> = fp.members.iter().map(|m| m.func.clone()).collect();
        assert_eq!(
            keys(&funcs),
            vec![(rat_i(0), rat_i(0)), (rat_i(0), rat_i(1))]
        );
        assert!(fp.complete);
    }

    #[test]
    fn f_plus_with_slope_cut_half() {
        // F = {1, t} on [0,1], c = 1/2: multiples nt with n <= 2 plus 1.
        let fp = f_plus(&fam_one_t(), &rat(1, 2), &Caps::default()).unwrap();
        let funcs: Vec<AffineFn> = fp.members.iter().map(|m| m.func.clone()).collect();
        assert_eq!(
            keys(&funcs),
            vec![
                (rat_i(0), rat_i(0)),
                (rat_i(0), rat_i(1)),
                (rat_i(1), rat_i(0)),
                (rat_i(2), rat_i(0)),
            ]
        );
    }

    #[test]
    fn f_plus_small_cut_admits_steep_multiples() {
        // c = 1/(m+2) admits (m+2) t; take m = 3, c = 1/5.
        let caps = Caps {
            m_cap: 6,
            term_cap: 8,
        };
        let fp = f_plus(&fam_one_t(), &rat(1, 5), &caps).unwrap();
        assert!(fp
            .members
            .iter()
            .any(|m| m.func.fn_key() == (rat_i(5), rat_i(0))));
    }

    #[test]
    fn derived_set_of_one_is_standard_set() {
        // D({1}) with m <= 4: {0, 1/2, 2/3, 3/4, 1}
        let caps = Caps {
            m_cap: 4,
            term_cap: 4,
        };
        let d = derived_set(&fam_one(), &rat_i(1), &caps).unwrap();
        let got: Vec<Rat> = d.members.iter().map(|m| m.func.intercept.clone()).collect();
        assert_eq!(got, vec![rat_i(0), rat(1, 2), rat(2, 3), rat(3, 4), rat_i(1)]);
        assert!(d.members.iter().all(|m| m.func.slope.is_zero()));
        // m = 1 slice is exactly f_plus.
        let m1: Vec<&DerivedMember> =
            d.members.iter().filter(|m| m.witness.m == 1).collect();
        assert_eq!(m1.len(), 2); // 0 and 1
    }

    #[test]
    fn derived_witnesses_validate() {
        let caps = Caps::default();
        let d = derived_set(&fam_one_t(), &rat(1, 3), &caps).unwrap();
        for m in &d.members {
            assert!(m.witness.is_valid());
            assert!(m.witness.derived_fn().same_fn(&m.func));
        }
    }

    #[test]
    fn script_d_produces_paper_chain_members() {
        // F = {1, t} with grid hitting c = 1/(m+2) contains
        // (m - 1 + (m+2) t)/m for each m <= 4.
        let caps = Caps {
            m_cap: 4,
            term_cap: 8,
        };
        let grid: Vec<Rat> = (1..=6).map(|k| rat(1, k)).collect();
        let d = script_d(&fam_one_t(), &grid, &caps).unwrap();
        for m in 1..=4i64 {
            let expected = (
                rat(m + 2, m),
                rat(m - 1, m),
            );
            assert!(
                d.members.iter().any(|x| x.func.fn_key() == expected),
                "missing (m-1+(m+2)t)/m for m = {m}"
            );
        }
        // Evaluated at t = 1 these are (2m+1)/m, strictly decreasing.
        let mut at_one: Vec<Rat> = (1..=4i64)
            .map(|m| {
                let f = d
                    .members
                    .iter()
                    .find(|x| x.func.fn_key() == (rat(m + 2, m), rat(m - 1, m)))
                    .unwrap();
                f.func.eval(&rat_i(1))
            })
            .collect();
        assert_eq!(at_one[0], rat_i(3));
        assert_eq!(at_one[1], rat(5, 2));
        at_one.dedup();
        assert!(at_one.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn empty_grid_gives_empty_union() {
        let d = script_d(&fam_one(), &[], &Caps::default()).unwrap();
        assert!(d.members.is_empty());
    }

    #[test]
    fn membership_query_solves_for_cut() {
        // (2 + 5t)/3 = (m-1+v)/m with m = 3, v = 5t, needs c <= 1/5.
        let caps = Caps {
            m_cap: 6,
            term_cap: 8,
        };
        let g = AffineFn::new(rat(5, 3), rat(2, 3), unit());
        let w = script_d_contains(&g, &fam_one_t(), &caps).unwrap().unwrap();
        assert_eq!(w.m, 3);
        assert_eq!(w.interval.hi, rat(1, 5));
        assert!(w.derived_fn().same_fn(&g));
        // 2t is not in script D: v = 2t at m = 1 is fine on [0, 1/2]... it is a member!
        let g = AffineFn::new(rat_i(2), rat_i(0), unit());
        assert!(script_d_contains(&g, &fam_one_t(), &caps).unwrap().is_some());
        // 3/2 constant exceeds 1 everywhere: not a member.
        let g = AffineFn::constant(rat(3, 2), unit());
        assert!(script_d_contains(&g, &fam_one_t(), &caps).unwrap().is_none());
    }

    #[test]
    fn inverse_image_examples() {
        let caps = Caps {
            m_cap: 4,
            term_cap: 4,
        };
        // D0 = {1}, F = {1}: f = 1 via m = 1, n = 1.
        let d0 = vec![AffineFn::constant(rat_i(1), unit())];
        let inv = script_d_inverse(&d0, &fam_one(), &caps).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].witness.m, 1);

        // D0 = {t}, F = {1, t}: f = t included, f = 1 excluded.
        let d0 = vec![AffineFn::new(rat_i(1), rat_i(0), unit())];
        let inv = script_d_inverse(&d0, &fam_one_t(), &caps).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].func.fn_key(), (rat_i(1), rat_i(0)));

        // D0 empty: nothing.
        let inv = script_d_inverse(&[], &fam_one_t(), &caps).unwrap();
        assert!(inv.is_empty());
    }

    #[test]
    fn idempotence_for_constants() {
        let caps = Caps {
            m_cap: 6,
            term_cap: 6,
        };
        let grid = vec![rat_i(1)];
        let rep = check_idempotence(&fam_one(), &caps, &grid).unwrap();
        assert!(rep.passed, "violations: {:?}", rep.violations);
        assert!(rep.sums_checked > 0);
        assert!(rep.nested_checked > 0);
        // Nested members over m = 2 of an inner n = 3 member collapse to
        // denominator 6 somewhere in the report.
        assert!(rep.collapses.iter().any(|&(_, r)| r == 6));
    }

    #[test]
    fn idempotence_requires_one() {
        let f = FnFamily::constants(unit(), [rat(1, 2)]).unwrap();
        assert_eq!(
            check_idempotence(&f, &Caps::default(), &[rat_i(1)]),
            Err(SetError::MissingOne)
        );
    }
}
