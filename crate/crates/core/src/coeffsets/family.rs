//! Families of nonnegative affine functions on a closed interval, the
//! input data of the derived-set algebra.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::AffineFn;
use crate::error::SetError;
use crate::rational::{parse_rat, rat_string, rat_to_string, Interval, Rat};

/// Enumeration caps shared by the derived-set operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest denominator `m` tried in `(m - 1 + v) / m`.
    pub m_cap: u64,
    /// Largest number of expanded terms in a sum enumeration.
    pub term_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            m_cap: 6,
            term_cap: 6,
        }
    }
}

/// Parametric member `g_m(t) = alpha(t) + beta(t)/m`, one function per
/// positive integer `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricAtom {
    pub alpha: AffineFn,
    pub beta: AffineFn,
}

impl ParametricAtom {
    pub fn instantiate(&self, m: u64) -> AffineFn {
        let inv = Rat::one() / Rat::from_integer(m.into());
        self.alpha.add_fn(&self.beta.scale(&inv))
    }
}

/// A set of nonnegative, not identically zero affine functions on a
/// common interval, plus optional parametric atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnFamily {
    interval: Interval,
    members: Vec<AffineFn>,
    parametric: Vec<ParametricAtom>,
}

impl FnFamily {
    pub fn new(
        interval: Interval,
        members: Vec<AffineFn>,
        parametric: Vec<ParametricAtom>,
    ) -> Result<Self, SetError> {
        if interval.is_degenerate() {
            return Err(SetError::InvalidFamily(
                "family interval must be non-degenerate".into(),
            ));
        }
        let mut fixed: Vec<AffineFn> = Vec::new();
        for f in members {
            let f = f.with_domain(interval.clone());
            if f.is_zero_fn() {
                return Err(SetError::InvalidFamily(
                    "the zero function is excluded from families".into(),
                ));
            }
            if !f.is_nonneg_on_domain() {
                return Err(SetError::InvalidFamily(format!(
                    "member {f} is negative somewhere on {interval}"
                )));
            }
            fixed.push(f);
        }
        fixed.sort_by_key(|f| f.fn_key());
        fixed.dedup_by_key(|f| f.fn_key());
        for atom in &parametric {
            // alpha + beta/m >= 0 for every m >= 1 iff alpha >= 0 and
            // alpha + beta >= 0 (checked at the endpoints).
            let at_one = atom.alpha.add_fn(&atom.beta);
            let alpha = atom.alpha.with_domain(interval.clone());
            let at_one = at_one.with_domain(interval.clone());
            if !alpha.is_nonneg_on_domain() || !at_one.is_nonneg_on_domain() {
                return Err(SetError::InvalidFamily(format!(
                    "parametric atom {} + ({})/m goes negative on {interval}",
                    atom.alpha, atom.beta
                )));
            }
        }
        Ok(FnFamily {
            interval,
            members: fixed,
            parametric,
        })
    }

    /// Family of constant functions on an interval.
    pub fn constants(
        interval: Interval,
        values: impl IntoIterator<Item = Rat>,
    ) -> Result<Self, SetError> {
        let members = values
            .into_iter()
            .map(|v| AffineFn::constant(v, interval.clone()))
            .collect();
        Self::new(interval, members, Vec::new())
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn members(&self) -> &[AffineFn] {
        &self.members
    }

    pub fn parametric(&self) -> &[ParametricAtom] {
        &self.parametric
    }

    pub fn contains_one(&self) -> bool {
        self.members
            .iter()
            .any(|f| f.slope.is_zero() && f.intercept.is_one())
    }

    /// Concrete members: the fixed ones plus parametric instantiations up
    /// to `m_cap`. The second component is false when parametric tails
    /// were cut.
    pub fn instantiated_members(&self, m_cap: u64) -> (Vec<AffineFn>, bool) {
        let mut out = self.members.clone();
        for atom in &self.parametric {
            for m in 1..=m_cap {
                let g = atom.instantiate(m).with_domain(self.interval.clone());
                if !g.is_zero_fn() {
                    out.push(g);
                }
            }
        }
        out.sort_by_key(|f| f.fn_key());
        out.dedup_by_key(|f| f.fn_key());
        (out, self.parametric.is_empty())
    }
}

/// Wire form of an affine function inside a family: the interval lives at
/// the family level, so members are bare `(slope, intercept)` pairs.
#[derive(Serialize, Deserialize)]
struct FnWire {
    #[serde(with = "rat_string")]
    slope: Rat,
    #[serde(with = "rat_string")]
    intercept: Rat,
}

#[derive(Serialize, Deserialize)]
struct ParametricWire {
    alpha: FnWire,
    beta: FnWire,
}

#[derive(Serialize, Deserialize)]
struct FnFamilyWire {
    interval: [String; 2],
    fns: Vec<FnWire>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    parametric: Vec<ParametricWire>,
}

impl Serialize for FnFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FnFamilyWire {
            interval: [
                rat_to_string(&self.interval.lo),
                rat_to_string(&self.interval.hi),
            ],
            fns: self
                .members
                .iter()
                .map(|f| FnWire {
                    slope: f.slope.clone(),
                    intercept: f.intercept.clone(),
                })
                .collect(),
            parametric: self
                .parametric
                .iter()
                .map(|p| ParametricWire {
                    alpha: FnWire {
                        slope: p.alpha.slope.clone(),
                        intercept: p.alpha.intercept.clone(),
                    },
                    beta: FnWire {
                        slope: p.beta.slope.clone(),
                        intercept: p.beta.intercept.clone(),
                    },
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FnFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = FnFamilyWire::deserialize(d)?;
        let lo = parse_rat(&wire.interval[0]).map_err(D::Error::custom)?;
        let hi = parse_rat(&wire.interval[1]).map_err(D::Error::custom)?;
        let interval = Interval::new(lo, hi).map_err(D::Error::custom)?;
        let members = wire
            .fns
            .into_iter()
            .map(|f| AffineFn::new(f.slope, f.intercept, interval.clone()))
            .collect();
        let parametric = wire
            .parametric
            .into_iter()
            .map(|p| ParametricAtom {
                alpha: AffineFn::new(p.alpha.slope, p.alpha.intercept, interval.clone()),
                beta: AffineFn::new(p.beta.slope, p.beta.intercept, interval.clone()),
            })
            .collect();
        FnFamily::new(interval, members, parametric).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    #[test]
    fn rejects_negative_members_and_zero() {
        let unit = Interval::unit();
        let neg = AffineFn::new(rat_i(-1), rat_i(0), unit.clone());
        assert!(FnFamily::new(unit.clone(), vec![neg], vec![]).is_err());
        let zero = AffineFn::constant(rat_i(0), unit.clone());
        assert!(FnFamily::new(unit.clone(), vec![zero], vec![]).is_err());
    }

    #[test]
    fn contains_one_detection() {
        let f = FnFamily::constants(Interval::unit(), [rat_i(1), rat(1, 2)]).unwrap();
        assert!(f.contains_one());
        let g = FnFamily::constants(Interval::unit(), [rat(1, 2)]).unwrap();
        assert!(!g.contains_one());
    }

    #[test]
    fn parametric_instantiation() {
        // g_m = 1 - t/m on [0, 1]
        let unit = Interval::unit();
        let atom = ParametricAtom {
            alpha: AffineFn::constant(rat_i(1), unit.clone()),
            beta: AffineFn::new(rat_i(-1), rat_i(0), unit.clone()),
        };
        let fam = FnFamily::new(unit.clone(), vec![], vec![atom]).unwrap();
        let (members, complete) = fam.instantiated_members(3);
        assert!(!complete);
        assert_eq!(members.len(), 3);
        assert_eq!(members[0].eval(&rat_i(1)), rat_i(0)); // 1 - t at t=1
        assert_eq!(members[1].eval(&rat_i(1)), rat(1, 2)); // 1 - t/2
    }

    #[test]
    fn parametric_negativity_rejected() {
        // alpha = 0, beta = -t: g_1 = -t < 0 on (0, 1]
        let unit = Interval::unit();
        let atom = ParametricAtom {
            alpha: AffineFn::constant(rat_i(0), unit.clone()),
            beta: AffineFn::new(rat_i(-1), rat_i(0), unit.clone()),
        };
        assert!(FnFamily::new(unit, vec![], vec![atom]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let unit = Interval::unit();
        let fam = FnFamily::new(
            unit.clone(),
            vec![
                AffineFn::constant(rat_i(1), unit.clone()),
                AffineFn::new(rat_i(1), rat_i(0), unit.clone()),
            ],
            vec![],
        )
        .unwrap();
        let js = serde_json::to_string(&fam).unwrap();
        let back: FnFamily = serde_json::from_str(&js).unwrap();
        assert_eq!(fam, back);
    }
}
