//! Randomized exact verification commands. Randomness only generates
//! instances; every claimed property is verified with exact arithmetic.
//! Trials carry independent per-index seeds and results are collected in
//! index order, so reports are byte-deterministic regardless of the
//! number of worker threads.

use lctpoly_core::chainlab::{escaping_ray, facet_cone_check};
use lctpoly_core::exactgeom::{HPolytope, QVector};
use lctpoly_core::lctcore::{build_lct_polytope, ResolutionDatum, ResolutionRow, RowKind};
use lctpoly_core::rational::{rat, rat_i, Rat};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::CliError;

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn small_rat(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    let den = r.gen_range(1..=4i64);
    rat(r.gen_range(lo * den..=hi * den), den)
}

/// Escaping-ray construction on a randomized decreasing chain of
/// simplex thickenings around a lower-dimensional simplex core, in
/// ambient dimension 2 + (trial mod 3). Returns an error description on
/// failure, which would indicate a bug in the construction.
fn cone_lemma_trial(seed: u64, trial: u64) -> Result<(), String> {
    let mut r = trial_rng(seed, trial);
    let s = 2 + (trial % 3) as usize;
    let core_dim = r.gen_range(0..s);
    let base_pt = QVector::new((0..s).map(|_| small_rat(&mut r, -1, 1)).collect());
    let mut dirs: Vec<Vec<Rat>> = Vec::new();
    while dirs.len() < core_dim {
        let d: Vec<Rat> = (0..s).map(|_| small_rat(&mut r, -2, 2)).collect();
        dirs.push(d);
        if lctpoly_core::linalg::rank(&dirs) != dirs.len() {
            dirs.pop();
        }
    }
    let mut core_vertices = vec![base_pt.clone()];
    for d in &dirs {
        core_vertices.push(base_pt.add(&QVector::new(d.clone())));
    }
    let core = HPolytope::from_generators(s, &core_vertices, &[])
        .map_err(|e| format!("core construction: {e}"))?;
    let mut b_vertices: Vec<QVector> = (0..s).map(|j| QVector::unit(s, j)).collect();
    b_vertices.push(QVector::new(vec![-Rat::one(); s]));
    let members: Vec<HPolytope> = (1..=3i64)
        .map(|i| {
            let delta = rat(1, i);
            let mut gens = Vec::new();
            for v in &core_vertices {
                for b in &b_vertices {
                    gens.push(v.add(&b.scale(&delta)));
                }
            }
            HPolytope::from_generators(s, &gens, &[])
                .map_err(|e| format!("member construction: {e}"))
        })
        .collect::<Result<_, _>>()?;
    let ray = escaping_ray(&members, &core, seed ^ trial).map_err(|e| e.to_string())?;
    for ((lambda, point), member) in ray.witnesses.iter().zip(&members) {
        if *point != ray.alpha.add(&ray.direction.scale(lambda)) {
            return Err("witness not on the ray".into());
        }
        if !member.contains_point(point).map_err(|e| e.to_string())? {
            return Err("witness escaped its chain member".into());
        }
        if core.contains_point(point).map_err(|e| e.to_string())? {
            return Err("witness landed in the core".into());
        }
    }
    Ok(())
}

pub fn cone_lemma(trials: u64, seed: u64) -> Result<Value, CliError> {
    let results: Vec<(u64, Result<(), String>)> = (0..trials)
        .into_par_iter()
        .map(|t| (t, cone_lemma_trial(seed, t)))
        .collect();
    let failures: Vec<Value> = results
        .iter()
        .filter_map(|(t, r)| {
            r.as_ref()
                .err()
                .map(|e| json!({ "trial": t, "error": e }))
        })
        .collect();
    Ok(json!({
        "lemma": "escaping-ray",
        "trials": trials,
        "seed": seed,
        "dims": [2, 3, 4],
        "verified": trials - failures.len() as u64,
        "failures": failures,
    }))
}

/// Random bounded resolution datum in dimension `s`.
fn random_datum(r: &mut ChaCha8Rng, s: usize) -> ResolutionDatum {
    let nrows = r.gen_range(1..=4usize);
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
        rows.push(ResolutionRow {
            a,
            b: small_rat(r, 0, 1) / rat_i(2),
            label: format!("E{k}"),
            kind: if r.gen_bool(0.5) {
                RowKind::Exceptional
            } else {
                RowKind::StrictTransform
            },
        });
    }
    for j in 0..s {
        if !rows.iter().any(|row| row.a[j].is_positive()) {
            let mut a = vec![Rat::zero(); s];
            a[j] = Rat::one();
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

#[derive(Debug)]
enum FacetConeOutcome {
    HypothesisFailed,
    EqualityConfirmed,
    Counterexample(String),
    Skipped,
}

fn facet_cone_trial(seed: u64, trial: u64) -> FacetConeOutcome {
    let mut r = trial_rng(seed, trial);
    let s = 2 + (trial % 3) as usize;
    let datum = random_datum(&mut r, s);
    let p = build_lct_polytope(&datum);
    if p.dimension() != s as i64 {
        return FacetConeOutcome::Skipped;
    }
    let vertices = match p.vertex_enumerate() {
        Ok(v) => v.vertices.clone(),
        Err(_) => return FacetConeOutcome::Skipped,
    };
    let beta = vertices[r.gen_range(0..vertices.len())].clone();
    match facet_cone_check(&datum, &beta) {
        Ok(report) => {
            if !report.hypothesis_holds {
                FacetConeOutcome::HypothesisFailed
            } else if report.equality_holds == Some(true) {
                FacetConeOutcome::EqualityConfirmed
            } else {
                FacetConeOutcome::Counterexample(format!(
                    "beta {beta}, counterexample {:?}",
                    report.counterexample
                ))
            }
        }
        Err(e) => FacetConeOutcome::Counterexample(format!("check failed: {e}")),
    }
}

pub fn facet_cone(trials: u64, seed: u64) -> Result<Value, CliError> {
    let results: Vec<(u64, FacetConeOutcome)> = (0..trials)
        .into_par_iter()
        .map(|t| (t, facet_cone_trial(seed, t)))
        .collect();
    let mut confirmed = 0u64;
    let mut hypothesis_failed = 0u64;
    let mut skipped = 0u64;
    let mut counterexamples: Vec<Value> = Vec::new();
    for (t, outcome) in &results {
        match outcome {
            FacetConeOutcome::EqualityConfirmed => confirmed += 1,
            FacetConeOutcome::HypothesisFailed => hypothesis_failed += 1,
            FacetConeOutcome::Skipped => skipped += 1,
            FacetConeOutcome::Counterexample(msg) => {
                counterexamples.push(json!({ "trial": t, "detail": msg }));
            }
        }
    }
    Ok(json!({
        "lemma": "facet-cone",
        "trials": trials,
        "seed": seed,
        "dims": [2, 3, 4],
        "equality_confirmed": confirmed,
        "hypothesis_failed": hypothesis_failed,
        "skipped": skipped,
        "counterexamples": counterexamples,
    }))
}
