//! Seeded generators shared by the property and acceptance suites.
#![allow(dead_code)] // each suite uses its own subset

use lctpoly_core::affine::AffineFn;
use lctpoly_core::exactgeom::{HPolytope, QVector};
use lctpoly_core::lctcore::{ResolutionDatum, ResolutionRow, RowKind, SegmentProblem};
use lctpoly_core::rational::{rat, rat_i, Interval, Rat};
use lctpoly_core::toricgen::MonomialDivisorSet;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random rational in `[lo, hi]` with denominator up to 4.
pub fn small_rat(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    let den = r.gen_range(1..=4i64);
    let num = r.gen_range(lo * den..=hi * den);
    rat(num, den)
}

/// Random bounded feasible polytope: a box `[-2, 2]^dim` cut by up to
/// `extra` random half-spaces kept feasible around a random interior
/// point.
pub fn random_bounded_polytope(r: &mut ChaCha8Rng, dim: usize, extra: usize) -> HPolytope {
    let center = QVector::new((0..dim).map(|_| small_rat(r, -1, 1)).collect());
    let mut rows: Vec<(QVector, Rat)> = Vec::new();
    for i in 0..dim {
        rows.push((QVector::unit(dim, i), rat_i(2)));
        rows.push((QVector::unit(dim, i).scale(&-Rat::one()), rat_i(2)));
    }
    for _ in 0..extra {
        let normal = QVector::new((0..dim).map(|_| small_rat(r, -2, 2)).collect());
        if normal.is_zero() {
            continue;
        }
        let shift = small_rat(r, 0, 1);
        let bound = normal.dot(&center) + shift;
        rows.push((normal, bound));
    }
    HPolytope::new(dim, rows).expect("generated rows are valid")
}

/// Random resolution datum with every column bounded (some row has a
/// positive entry in each column), offsets in `[0, 1/2]`.
pub fn random_datum(r: &mut ChaCha8Rng, s: usize, max_rows: usize) -> ResolutionDatum {
    let nrows = r.gen_range(1..=max_rows);
    let mut rows: Vec<ResolutionRow> = Vec::new();
    for k in 0..nrows {
        let a: Vec<Rat> = (0..s)
            .map(|_| {
                if r.gen_bool(0.3) {
                    Rat::zero()
                } else {
                    small_rat(r, 0, 3)
                }
            })
            .collect();
        if a.iter().all(|c| c.is_zero()) {
            continue;
        }
        let b = small_rat(r, 0, 1) / rat_i(2);
        rows.push(ResolutionRow {
            a,
            b,
            label: format!("E{k}"),
            kind: if r.gen_bool(0.5) {
                RowKind::Exceptional
            } else {
                RowKind::StrictTransform
            },
        });
    }
    // ensure boundedness: every testing divisor meets a positive entry
    for j in 0..s {
        let covered = rows.iter().any(|row| row.a[j].is_positive());
        if !covered {
            let mut a = vec![Rat::zero(); s];
            a[j] = small_rat(r, 1, 2).max(Rat::one());
            rows.push(ResolutionRow {
                a,
                b: Rat::zero(),
                label: format!("C{j}"),
                kind: RowKind::StrictTransform,
            });
        }
    }
    ResolutionDatum::new(s, rows).expect("generated datum is valid")
}

/// Random monomial divisor data: `n <= 3`, exponents `<= 4`.
pub fn random_monomial_set(r: &mut ChaCha8Rng, n_max: usize, e_max: u32) -> MonomialDivisorSet {
    let n = r.gen_range(1..=n_max);
    let s = r.gen_range(1..=3usize);
    let mut divisors = Vec::with_capacity(s);
    for _ in 0..s {
        loop {
            let a: Vec<u32> = (0..n).map(|_| r.gen_range(0..=e_max)).collect();
            if a.iter().any(|&e| e > 0) {
                divisors.push(a);
                break;
            }
        }
    }
    MonomialDivisorSet::new(n, divisors).expect("generated exponents are valid")
}

/// Random nonzero nonnegative direction.
pub fn random_direction(r: &mut ChaCha8Rng, dim: usize) -> QVector {
    loop {
        let v = QVector::new((0..dim).map(|_| small_rat(r, 0, 3)).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random segment problem on `[0, 1]` satisfying the lc hypothesis.
pub fn random_segment_problem(r: &mut ChaCha8Rng) -> SegmentProblem {
    let s = r.gen_range(1..=3usize);
    let unit = Interval::unit();
    loop {
        let datum = random_datum(r, s, 4);
        let test_column = r.gen_range(0..s);
        if !datum
            .rows()
            .iter()
            .any(|row| row.a[test_column].is_positive())
        {
            continue;
        }
        // small nonnegative affine base coefficients
        let base: Vec<AffineFn> = (0..s)
            .map(|_| {
                let intercept = small_rat(r, 0, 1) / rat_i(4);
                let slope = small_rat(r, -1, 1) / rat_i(4);
                let slope = if (&slope + &intercept).is_negative() {
                    -intercept.clone()
                } else {
                    slope
                };
                AffineFn::new(slope, intercept, unit.clone())
            })
            .collect();
        // enforce the lc hypothesis by scaling the base down if needed
        let mut worst = Rat::zero();
        for row in datum.rows() {
            for t in [rat_i(0), rat_i(1)] {
                let mut v = row.b.clone();
                for (ai, f) in row.a.iter().zip(&base) {
                    v = v + ai * f.eval(&t);
                }
                if v > worst {
                    worst = v;
                }
            }
        }
        let base = if worst > Rat::one() {
            // rescale so the largest row value is exactly 1/2 above b...
            // simply divide the moving part by 2*worst
            let f = Rat::one() / (rat_i(2) * &worst);
            base.iter()
                .map(|g| AffineFn::new(&g.slope * &f, &g.intercept * &f, unit.clone()))
                .collect()
        } else {
            base
        };
        match SegmentProblem::new(datum, base, test_column, unit.clone()) {
            Ok(p) => return p,
            Err(_) => continue,
        }
    }
}
