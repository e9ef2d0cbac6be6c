//! Symbolic real-number sets with decidable chain conditions, the derived
//! coefficient-set algebra for families of affine functions, and the
//! numerically-trivial decomposition enumerator.
//!
//! The atom vocabulary is deliberately tiny: finite rational lists plus
//! one-parameter families `a - b/m` and `a + b/m` over positive integers
//! `m`. Everything the toolkit manipulates at desk scale lives here, and
//! on this class the descending/ascending chain conditions are decidable.
//! Where a set is genuinely infinite, enumerations carry explicit
//! completeness flags; nothing is silently approximated.

mod decomp;
mod derived;
mod family;

pub use decomp::{
    surface_relation_compare, surface_relation_solve, trivial_decompositions, Decomposition,
};
pub use derived::{
    check_idempotence, derived_set, f_plus, script_d, script_d_contains, script_d_inverse,
    DecompWitness, DerivedMember, DerivedResult, FPlusMember, FPlusResult, IdempotenceReport,
    InverseMember,
};
pub use family::{Caps, FnFamily, ParametricAtom};

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SetError;
use crate::rational::{rat_string, rat_to_string, Rat};

/// One-parameter family `{a - b/m}` (ascending toward `a`) or `{a + b/m}`
/// (descending toward `a`), `m` ranging over positive integers, `b > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetFamily {
    pub kind: FamilyKind,
    #[serde(with = "rat_string")]
    pub a: Rat,
    #[serde(with = "rat_string")]
    pub b: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// `{a - b/m : m}`: strictly increasing, accumulating at `a` from below.
    Desc,
    /// `{a + b/m : m}`: strictly decreasing, accumulating at `a` from above.
    Asc,
}

impl SetFamily {
    pub fn value_at(&self, m: u64) -> Rat {
        let frac = &self.b / Rat::from_integer(m.into());
        match self.kind {
            FamilyKind::Desc => &self.a - frac,
            FamilyKind::Asc => &self.a + frac,
        }
    }
}

/// Symbolic description of a set of real numbers: a finite part plus
/// finitely many one-parameter families. Canonical by construction
/// (duplicates merged via ordered sets).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetExpr {
    #[serde(default, with = "crate::rational::rat_set_string")]
    pub finite: BTreeSet<Rat>,
    #[serde(default)]
    pub families: BTreeSet<SetFamily>,
}

/// Why a chain condition holds or fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainCertificate {
    /// Every atom satisfies the condition (finite sets always do; for DCC
    /// the descending families do, for ACC the ascending ones).
    AllAtomsSatisfy,
    /// A violating family together with the start of its monotone chain.
    Witness {
        family: SetFamily,
        #[serde(with = "crate::rational::rat_vec_string")]
        chain: Vec<Rat>,
    },
}

/// Verdict plus certificate for a chain-condition query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainVerdict {
    pub holds: bool,
    pub certificate: ChainCertificate,
}

impl SetExpr {
    pub fn from_finite(values: impl IntoIterator<Item = Rat>) -> Self {
        SetExpr {
            finite: values.into_iter().collect(),
            families: BTreeSet::new(),
        }
    }

    pub fn with_family(mut self, kind: FamilyKind, a: Rat, b: Rat) -> Result<Self, SetError> {
        if !b.is_positive() {
            return Err(SetError::InvalidFamily(format!(
                "family parameter b must be positive, got {}",
                rat_to_string(&b)
            )));
        }
        self.families.insert(SetFamily { kind, a, b });
        Ok(self)
    }

    pub fn is_empty_set(&self) -> bool {
        self.finite.is_empty() && self.families.is_empty()
    }

    /// Validates the family invariant `b > 0` (deserialized values).
    pub fn validate(&self) -> Result<(), SetError> {
        for f in &self.families {
            if !f.b.is_positive() {
                return Err(SetError::InvalidFamily(format!(
                    "family parameter b must be positive, got {}",
                    rat_to_string(&f.b)
                )));
            }
        }
        Ok(())
    }

    /// The enumerated members: the finite part plus family values for
    /// `m <= m_cap`, sorted and deduplicated. Exact for the finite part;
    /// family tails beyond the cap are cut (the caller tracks this).
    pub fn enumerate(&self, m_cap: u64) -> Vec<Rat> {
        let mut out: BTreeSet<Rat> = self.finite.clone();
        for fam in &self.families {
            for m in 1..=m_cap {
                out.insert(fam.value_at(m));
            }
        }
        out.into_iter().collect()
    }

    /// Decides the descending chain condition. A set in this vocabulary
    /// fails DCC exactly when an ascending family `{a + b/m}` is present:
    /// its members form an infinite strictly decreasing chain, while
    /// finite atoms and descending families admit none, and a finite
    /// union of DCC sets is DCC.
    pub fn is_dcc(&self) -> ChainVerdict {
        match self.families.iter().find(|f| f.kind == FamilyKind::Asc) {
            Some(fam) => ChainVerdict {
                holds: false,
                certificate: ChainCertificate::Witness {
                    family: fam.clone(),
                    chain: (1..=3).map(|m| fam.value_at(m)).collect(),
                },
            },
            None => ChainVerdict {
                holds: true,
                certificate: ChainCertificate::AllAtomsSatisfy,
            },
        }
    }

    /// Decides the ascending chain condition; mirror image of [`Self::is_dcc`].
    pub fn is_acc(&self) -> ChainVerdict {
        match self.families.iter().find(|f| f.kind == FamilyKind::Desc) {
            Some(fam) => ChainVerdict {
                holds: false,
                certificate: ChainCertificate::Witness {
                    family: fam.clone(),
                    chain: (1..=3).map(|m| fam.value_at(m)).collect(),
                },
            },
            None => ChainVerdict {
                holds: true,
                certificate: ChainCertificate::AllAtomsSatisfy,
            },
        }
    }

    /// Least element of a nonempty DCC set. Descending families attain
    /// their minimum at `m = 1` (the infimum `a` of a family is not a
    /// member).
    pub fn min_element(&self) -> Result<Rat, SetError> {
        if !self.is_dcc().holds {
            return Err(SetError::NotDcc);
        }
        if self.is_empty_set() {
            return Err(SetError::Empty);
        }
        let mut best: Option<Rat> = self.finite.first().cloned();
        for fam in &self.families {
            let v = fam.value_at(1);
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        Ok(best.unwrap())
    }
}

/// Exact enumeration of finite sums of members, capped by value and term
/// count; family members are drawn up to `m_cap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumProbe {
    #[serde(with = "crate::rational::rat_vec_string")]
    pub values: Vec<Rat>,
    /// True when the enumeration is exhaustive below the value bound:
    /// no families present (their tails are infinite) and the term bound
    /// does not cut any sum below the value bound.
    pub complete: bool,
}

/// Enumerates all sums of at most `term_bound` members with value at most
/// `value_bound`. Members must be strictly positive, which makes the
/// search finite; nonpositive members are rejected.
pub fn sum_closure_probe(
    e: &SetExpr,
    value_bound: &Rat,
    term_bound: usize,
    m_cap: u64,
) -> Result<SumProbe, SetError> {
    let members = e.enumerate(m_cap);
    if let Some(bad) = members.iter().find(|v| !v.is_positive()) {
        return Err(SetError::NonPositiveMember(rat_to_string(bad)));
    }
    // Descending families approach their supremum from below, so all
    // members are positive iff the m = 1 value is; ascending families
    // need a >= 0 for the whole tail to stay positive.
    for fam in &e.families {
        if fam.kind == FamilyKind::Asc && fam.a.is_negative() {
            return Err(SetError::NonPositiveMember(format!(
                "family tail of {} + {}/m goes nonpositive",
                rat_to_string(&fam.a),
                rat_to_string(&fam.b)
            )));
        }
    }

    let mut sums: BTreeSet<Rat> = BTreeSet::new();
    let mut stack: Vec<(usize, Rat, usize)> = vec![(0, Rat::zero(), 0)];
    while let Some((start, sum, used)) = stack.pop() {
        for i in start..members.len() {
            let s = &sum + &members[i];
            if s > *value_bound {
                break; // members sorted ascending
            }
            sums.insert(s.clone());
            if used + 1 < term_bound {
                stack.push((i, s, used + 1));
            }
        }
    }

    // Exhaustive below the bound iff no infinite family tails were cut
    // and term_bound terms of the smallest member already reach the bound.
    let complete = e.families.is_empty()
        && members.first().is_none_or(|min| {
            Rat::from_integer((term_bound as i64).into()) * min >= *value_bound
        });

    Ok(SumProbe {
        values: sums.into_iter().collect(),
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    #[test]
    fn ascending_family_breaks_dcc() {
        // {1/m} = Asc(0, 1): the classic non-DCC set.
        let e = SetExpr::default()
            .with_family(FamilyKind::Asc, rat_i(0), rat_i(1))
            .unwrap();
        let v = e.is_dcc();
        assert!(!v.holds);
        match v.certificate {
            ChainCertificate::Witness { chain, .. } => {
                assert_eq!(chain, vec![rat_i(1), rat(1, 2), rat(1, 3)]);
            }
            _ => panic!("expected witness"),
        }
        assert!(e.is_acc().holds);
    }

    #[test]
    fn descending_family_is_dcc_not_acc() {
        // {1 - 1/m}
        let e = SetExpr::default()
            .with_family(FamilyKind::Desc, rat_i(1), rat_i(1))
            .unwrap();
        assert!(e.is_dcc().holds);
        assert!(!e.is_acc().holds);
    }

    #[test]
    fn finite_union_desc_family_is_dcc() {
        let e = SetExpr::from_finite([rat_i(1), rat_i(2), rat_i(3)])
            .with_family(FamilyKind::Desc, rat_i(5), rat_i(1))
            .unwrap();
        assert!(e.is_dcc().holds);
        assert!(e.is_acc().holds || !e.families.is_empty());
    }

    #[test]
    fn finite_sets_satisfy_both() {
        let e = SetExpr::from_finite([rat(1, 2), rat(1, 3)]);
        assert!(e.is_dcc().holds);
        assert!(e.is_acc().holds);
    }

    #[test]
    fn min_element_cases() {
        let e = SetExpr::default()
            .with_family(FamilyKind::Desc, rat_i(1), rat_i(1))
            .unwrap();
        assert_eq!(e.min_element().unwrap(), rat_i(0));

        let e = SetExpr::from_finite([rat(1, 2), rat(1, 3)]);
        assert_eq!(e.min_element().unwrap(), rat(1, 3));

        let e = SetExpr::from_finite([rat_i(2)])
            .with_family(FamilyKind::Desc, rat_i(1), rat(1, 2))
            .unwrap();
        assert_eq!(e.min_element().unwrap(), rat(1, 2));

        let non_dcc = SetExpr::default()
            .with_family(FamilyKind::Asc, rat_i(0), rat_i(1))
            .unwrap();
        assert_eq!(non_dcc.min_element(), Err(SetError::NotDcc));
        assert_eq!(SetExpr::default().min_element(), Err(SetError::Empty));
    }

    #[test]
    fn sum_probe_single_value() {
        let e = SetExpr::from_finite([rat_i(1)]);
        let p = sum_closure_probe(&e, &rat_i(3), 3, 1).unwrap();
        assert_eq!(p.values, vec![rat_i(1), rat_i(2), rat_i(3)]);
        assert!(p.complete);
    }

    #[test]
    fn sum_probe_halves_and_thirds() {
        let e = SetExpr::from_finite([rat(1, 2), rat(1, 3)]);
        let p = sum_closure_probe(&e, &rat_i(1), 3, 1).unwrap();
        assert_eq!(
            p.values,
            vec![rat(1, 3), rat(1, 2), rat(2, 3), rat(5, 6), rat_i(1)]
        );
        assert!(p.complete);
    }

    #[test]
    fn sum_probe_family_is_truncated() {
        let e = SetExpr::default()
            .with_family(FamilyKind::Desc, rat_i(1), rat(1, 2))
            .unwrap();
        let p = sum_closure_probe(&e, &rat_i(1), 2, 4).unwrap();
        assert!(!p.complete);
        assert!(p.values.contains(&rat(1, 2)));
        assert!(p.values.contains(&rat(3, 4)));
        assert!(p.values.contains(&rat_i(1))); // 1/2 + 1/2
    }

    #[test]
    fn sum_probe_rejects_nonpositive() {
        let e = SetExpr::from_finite([rat_i(0), rat_i(1)]);
        assert!(sum_closure_probe(&e, &rat_i(1), 2, 1).is_err());
        let e = SetExpr::default()
            .with_family(FamilyKind::Asc, rat_i(-1), rat_i(1))
            .unwrap();
        assert!(sum_closure_probe(&e, &rat_i(1), 2, 1).is_err());
    }

    #[test]
    fn enumerate_merges_and_sorts() {
        let e = SetExpr::from_finite([rat(1, 2)])
            .with_family(FamilyKind::Asc, rat_i(0), rat_i(1))
            .unwrap();
        // members: 1/2 (finite), 1, 1/2, 1/3 (family, m <= 3)
        assert_eq!(e.enumerate(3), vec![rat(1, 3), rat(1, 2), rat_i(1)]);
    }

    #[test]
    fn json_shape() {
        let e = SetExpr::from_finite([rat(1, 2)])
            .with_family(FamilyKind::Desc, rat_i(1), rat(1, 3))
            .unwrap();
        let js = serde_json::to_value(&e).unwrap();
        assert_eq!(js["finite"][0], "1/2");
        assert_eq!(js["families"][0]["kind"], "desc");
        assert_eq!(js["families"][0]["b"], "1/3");
        let back: SetExpr = serde_json::from_value(js).unwrap();
        assert_eq!(back, e);
    }
}
