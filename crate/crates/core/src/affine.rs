//! Exact affine functions on a closed interval and piecewise-linear
//! functions as breakpoint lists.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::rational::{rat_string, rat_to_string, Interval, Rat};

/// `f(t) = slope * t + intercept` on a closed rational interval.
///
/// Everything about an affine function on `[a, b]` is decided at the two
/// endpoints: sign, comparison with another affine function, extrema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFn {
    #[serde(with = "rat_string")]
    pub slope: Rat,
    #[serde(with = "rat_string")]
    pub intercept: Rat,
    pub domain: Interval,
}

impl AffineFn {
    pub fn new(slope: Rat, intercept: Rat, domain: Interval) -> Self {
        AffineFn {
            slope,
            intercept,
            domain,
        }
    }

    pub fn constant(value: Rat, domain: Interval) -> Self {
        AffineFn {
            slope: Rat::zero(),
            intercept: value,
            domain,
        }
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        &self.slope * t + &self.intercept
    }

    pub fn eval_lo(&self) -> Rat {
        self.eval(&self.domain.lo.clone())
    }

    pub fn eval_hi(&self) -> Rat {
        self.eval(&self.domain.hi.clone())
    }

    /// Minimum over the domain (attained at an endpoint).
    pub fn min_on_domain(&self) -> Rat {
        self.eval_lo().min(self.eval_hi())
    }

    /// Maximum over the domain (attained at an endpoint).
    pub fn max_on_domain(&self) -> Rat {
        self.eval_lo().max(self.eval_hi())
    }

    pub fn is_nonneg_on_domain(&self) -> bool {
        !self.min_on_domain().is_negative()
    }

    pub fn is_zero_fn(&self) -> bool {
        self.slope.is_zero() && self.intercept.is_zero()
    }

    /// Syntactic identity as a function: equal slope and intercept.
    /// Two affine functions agreeing at two points agree everywhere, so
    /// this is also semantic equality on any non-degenerate interval.
    pub fn same_fn(&self, other: &AffineFn) -> bool {
        self.slope == other.slope && self.intercept == other.intercept
    }

    /// Ordering key ignoring the domain.
    pub fn fn_key(&self) -> (Rat, Rat) {
        (self.slope.clone(), self.intercept.clone())
    }

    pub fn add_fn(&self, other: &AffineFn) -> AffineFn {
        AffineFn {
            slope: &self.slope + &other.slope,
            intercept: &self.intercept + &other.intercept,
            domain: self.domain.clone(),
        }
    }

    pub fn scale(&self, factor: &Rat) -> AffineFn {
        AffineFn {
            slope: &self.slope * factor,
            intercept: &self.intercept * factor,
            domain: self.domain.clone(),
        }
    }

    pub fn with_domain(&self, domain: Interval) -> AffineFn {
        AffineFn {
            slope: self.slope.clone(),
            intercept: self.intercept.clone(),
            domain,
        }
    }

    /// Abscissa where `self` and `other` cross, if they are not parallel.
    pub fn crossing(&self, other: &AffineFn) -> Option<Rat> {
        if self.slope == other.slope {
            return None;
        }
        Some((&other.intercept - &self.intercept) / (&self.slope - &other.slope))
    }
}

impl std::fmt::Display for AffineFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.slope.is_zero() {
            write!(f, "{}", rat_to_string(&self.intercept))
        } else if self.intercept.is_zero() {
            write!(f, "{}*t", rat_to_string(&self.slope))
        } else {
            write!(
                f,
                "{}*t + {}",
                rat_to_string(&self.slope),
                rat_to_string(&self.intercept)
            )
        }
    }
}

use num_traits::Signed;

/// Continuous piecewise-linear function in canonical form: strictly
/// increasing breakpoints bracketing each piece, and adjacent pieces with
/// distinct slopes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLFunction {
    /// `pieces.len() + 1` abscissae including both endpoints.
    #[serde(with = "crate::rational::rat_vec_string")]
    breakpoints: Vec<Rat>,
    pieces: Vec<AffineFn>,
}

impl PLFunction {
    /// Validates continuity, breakpoint monotonicity, and canonical form.
    pub fn new(breakpoints: Vec<Rat>, pieces: Vec<AffineFn>) -> Result<Self, ParseError> {
        if pieces.is_empty() || breakpoints.len() != pieces.len() + 1 {
            return Err(ParseError::new(
                "piecewise-linear function needs n pieces and n+1 breakpoints",
            ));
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(ParseError::new("breakpoints must be strictly increasing"));
            }
        }
        for (i, w) in breakpoints.windows(2).enumerate() {
            if pieces[i].domain.lo != w[0] || pieces[i].domain.hi != w[1] {
                return Err(ParseError::new("piece domains must match breakpoints"));
            }
        }
        for i in 1..pieces.len() {
            let t = &breakpoints[i];
            if pieces[i - 1].eval(t) != pieces[i].eval(t) {
                return Err(ParseError::new("pieces must agree at interior breakpoints"));
            }
            if pieces[i - 1].slope == pieces[i].slope {
                return Err(ParseError::new(
                    "canonical form requires distinct slopes at breakpoints",
                ));
            }
        }
        Ok(PLFunction {
            breakpoints,
            pieces,
        })
    }

    pub fn domain(&self) -> Interval {
        Interval {
            lo: self.breakpoints[0].clone(),
            hi: self.breakpoints[self.breakpoints.len() - 1].clone(),
        }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[AffineFn] {
        &self.pieces
    }

    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        if !self.domain().contains(t) {
            return None;
        }
        let idx = self
            .pieces
            .iter()
            .position(|p| p.domain.contains(t))
            .expect("breakpoints cover the domain");
        Some(self.pieces[idx].eval(t))
    }

    pub fn min_value(&self) -> Rat {
        self.pieces
            .iter()
            .map(|p| p.min_on_domain())
            .min()
            .expect("at least one piece")
    }

    pub fn is_nonneg(&self) -> bool {
        !self.min_value().is_negative()
    }
}

/// Exact lower envelope `min_j fns[j]` on `domain`, together with the set
/// of indices attaining the minimum on the interior of each piece.
///
/// All pairwise crossings are breakpoint candidates, so on each open cell
/// the order of any two inputs is constant and a midpoint comparison
/// decides the argmin set exactly. Adjacent cells with the same envelope
/// function are merged; a function touching the envelope at an isolated
/// interior point of a merged piece would have to coincide with it (both
/// are affine), so argmin sets are well defined per piece.
pub fn lower_envelope(
    fns: &[AffineFn],
    domain: &Interval,
) -> Result<(PLFunction, Vec<BTreeSet<usize>>), ParseError> {
    if fns.is_empty() {
        return Err(ParseError::new("lower envelope of an empty family"));
    }
    if domain.is_degenerate() {
        return Err(ParseError::new(
            "lower envelope requires a non-degenerate interval",
        ));
    }
    let mut cuts: Vec<Rat> = vec![domain.lo.clone(), domain.hi.clone()];
    for i in 0..fns.len() {
        for j in (i + 1)..fns.len() {
            if let Some(t) = fns[i].crossing(&fns[j]) {
                if domain.lo < t && t < domain.hi {
                    cuts.push(t);
                }
            }
        }
    }
    cuts.sort();
    cuts.dedup();

    let mut cell_fns: Vec<AffineFn> = Vec::new();
    let mut cell_args: Vec<BTreeSet<usize>> = Vec::new();
    for w in cuts.windows(2) {
        let cell = Interval::new(w[0].clone(), w[1].clone()).unwrap();
        let mid = cell.midpoint();
        let values: Vec<Rat> = fns.iter().map(|f| f.eval(&mid)).collect();
        let min = values.iter().min().unwrap().clone();
        let argmin: BTreeSet<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == min)
            .map(|(j, _)| j)
            .collect();
        let rep = *argmin.iter().next().unwrap();
        cell_fns.push(fns[rep].with_domain(cell));
        cell_args.push(argmin);
    }

    // Merge adjacent cells carrying the same envelope function.
    let mut breakpoints = vec![cuts[0].clone()];
    let mut pieces: Vec<AffineFn> = Vec::new();
    let mut argmins: Vec<BTreeSet<usize>> = Vec::new();
    for (cell, args) in cell_fns.into_iter().zip(cell_args) {
        if let Some(last) = pieces.last_mut() {
            if last.same_fn(&cell) {
                last.domain.hi = cell.domain.hi.clone();
                *breakpoints.last_mut().unwrap() = cell.domain.hi;
                debug_assert_eq!(argmins.last(), Some(&args));
                continue;
            }
        }
        breakpoints.push(cell.domain.hi.clone());
        pieces.push(cell);
        argmins.push(args);
    }
    let pl = PLFunction::new(breakpoints, pieces)?;
    Ok((pl, argmins))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn unit() -> Interval {
        Interval::unit()
    }

    fn aff(slope: i64, intercept_num: i64, intercept_den: i64) -> AffineFn {
        AffineFn::new(rat_i(slope), rat(intercept_num, intercept_den), unit())
    }

    #[test]
    fn eval_and_extrema() {
        let f = aff(-1, 1, 1); // 1 - t on [0,1]
        assert_eq!(f.eval(&rat(1, 2)), rat(1, 2));
        assert_eq!(f.min_on_domain(), rat_i(0));
        assert_eq!(f.max_on_domain(), rat_i(1));
        assert!(f.is_nonneg_on_domain());
    }

    #[test]
    fn crossing_points() {
        let f = aff(-1, 1, 1); // 1 - t
        let g = aff(0, 1, 2); // 1/2
        assert_eq!(f.crossing(&g), Some(rat(1, 2)));
        assert_eq!(g.crossing(&g), None);
    }

    #[test]
    fn envelope_of_two_lines() {
        // min(1 - t, 1/2) on [0, 1]: breakpoint at 1/2
        let fns = vec![aff(-1, 1, 1), aff(0, 1, 2)];
        let (pl, args) = lower_envelope(&fns, &unit()).unwrap();
        assert_eq!(pl.breakpoints(), &[rat_i(0), rat(1, 2), rat_i(1)]);
        assert_eq!(pl.pieces().len(), 2);
        assert_eq!(args[0], BTreeSet::from([1]));
        assert_eq!(args[1], BTreeSet::from([0]));
        assert_eq!(pl.eval(&rat(1, 4)), Some(rat(1, 2)));
        assert_eq!(pl.eval(&rat(3, 4)), Some(rat(1, 4)));
    }

    #[test]
    fn envelope_merges_identical_functions() {
        let fns = vec![aff(0, 1, 2), aff(0, 1, 2), aff(1, 1, 1)];
        let (pl, args) = lower_envelope(&fns, &unit()).unwrap();
        assert_eq!(pl.pieces().len(), 1);
        assert_eq!(args[0], BTreeSet::from([0, 1]));
    }

    #[test]
    fn envelope_single_function_is_itself() {
        let fns = vec![aff(2, 0, 1)];
        let (pl, args) = lower_envelope(&fns, &unit()).unwrap();
        assert_eq!(pl.pieces().len(), 1);
        assert!(pl.pieces()[0].same_fn(&fns[0]));
        assert_eq!(args[0], BTreeSet::from([0]));
    }

    #[test]
    fn canonical_form_rejects_equal_slopes() {
        let bad = PLFunction::new(
            vec![rat_i(0), rat(1, 2), rat_i(1)],
            vec![
                AffineFn::constant(rat_i(1), Interval::new(rat_i(0), rat(1, 2)).unwrap()),
                AffineFn::constant(rat_i(1), Interval::new(rat(1, 2), rat_i(1)).unwrap()),
            ],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn three_way_envelope() {
        // min(t, 1 - t, 2/5) on [0,1]
        let fns = vec![
            AffineFn::new(rat_i(1), rat_i(0), unit()),
            aff(-1, 1, 1),
            aff(0, 2, 5),
        ];
        let (pl, args) = lower_envelope(&fns, &unit()).unwrap();
        assert_eq!(
            pl.breakpoints(),
            &[rat_i(0), rat(2, 5), rat(3, 5), rat_i(1)]
        );
        assert_eq!(args[0], BTreeSet::from([0]));
        assert_eq!(args[1], BTreeSet::from([2]));
        assert_eq!(args[2], BTreeSet::from([1]));
    }
}
