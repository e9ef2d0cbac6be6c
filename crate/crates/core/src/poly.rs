//! Dense univariate polynomials over the rationals, just enough for the
//! parametric-chain analysis: entries of chain rows are affine in
//! `mu = 1/m`, so vertex paths are quotients of polynomials in `mu` of
//! degree at most the ambient dimension, and "for all large m" questions
//! reduce to the sign of a polynomial near zero-plus.

use num_traits::{One, Signed, Zero};

use crate::rational::{Rat, rat_i};

/// Polynomial `c_0 + c_1 x + ... + c_d x^d`; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b x`.
    pub fn affine(a: Rat, b: Rat) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Poly::new(coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, f: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * f).collect())
    }

    /// Sign of the polynomial for all sufficiently small `x > 0`:
    /// the sign of the lowest nonzero coefficient (0 for the zero
    /// polynomial).
    pub fn sign_near_zero_plus(&self) -> i8 {
        match self.valuation() {
            None => 0,
            Some(v) => {
                if self.coeffs[v].is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// A positive rational `r` such that the polynomial has no root in
    /// the open interval `(0, r)`; hence its sign is constant there and
    /// equals [`Self::sign_near_zero_plus`]. Returns `None` for the zero
    /// polynomial. Standard bound: with `v` the valuation and `M` the
    /// largest remaining coefficient magnitude, `|p(x)| > 0` whenever
    /// `0 < x < |c_v| / (|c_v| + M)`.
    pub fn positive_root_free_radius(&self) -> Option<Rat> {
        let v = self.valuation()?;
        let cv = self.coeffs[v].abs();
        let max_rest = self.coeffs[v + 1..]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero);
        if max_rest.is_zero() {
            // monomial: no positive roots at all
            return Some(rat_i(1));
        }
        Some(&cv / (cv.clone() + max_rest))
    }
}

/// Determinant of a square polynomial matrix by Laplace expansion
/// (intended for sizes up to 6).
pub fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(Rat::one());
    }
    for row in m {
        assert_eq!(row.len(), n);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for (j, top) in m[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = top.mul(&det_poly(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Cramer solution of `M(x) y = b(x)`: returns `(numerators, det)` with
/// `y_i = num_i / det` wherever `det` is nonzero, or `None` when the
/// determinant is identically zero.
pub fn cramer_poly(m: &[Vec<Poly>], b: &[Poly]) -> Option<(Vec<Poly>, Poly)> {
    let n = m.len();
    assert_eq!(b.len(), n);
    let det = det_poly(m);
    if det.is_zero() {
        return None;
    }
    let mut nums = Vec::with_capacity(n);
    for col in 0..n {
        let replaced: Vec<Vec<Poly>> = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, p)| if j == col { b[i].clone() } else { p.clone() })
                    .collect()
            })
            .collect();
        nums.push(det_poly(&replaced));
    }
    Some((nums, det))
}
