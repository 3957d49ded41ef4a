use std::io::Write;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use steiner_core::exactalg::Field;
use steiner_core::instability::{
    classify_w_ideal, scan_w_bundle, secant_pencil_check, IdealOracle, ScanDomain,
};
use steiner_core::polygeom::{h0_ideal, is_general_position, projective_points, PointConfig, ProjPoint};
use steiner_core::steiner::{build_logarithmic, validate_bundle, ValidationStrategy};

use crate::config::PointConfigJson;
use crate::error::{CliError, CliResult};

pub const DEFAULT_MAX_RETRIES: usize = 10_000;
pub const CSV_HEADER: [&str; 8] = ["id", "k", "r", "t", "w_kind", "agreement", "secant_ok", "ms"];

/// Ideal-side test used by the census; replaceable so that the failure
/// path can be exercised.
pub type IdealSide = dyn Fn(&IdealOracle, &ProjPoint) -> steiner_core::Result<bool> + Sync;

pub fn default_ideal_side(oracle: &IdealOracle, l: &ProjPoint) -> steiner_core::Result<bool> {
    oracle.is_unstable(l)
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub field: Field,
    pub k_min: usize,
    pub k_max: usize,
    pub r: usize,
    pub count: usize,
    pub seed: u64,
    /// 0 lets the thread pool choose.
    pub workers: usize,
    pub timing: bool,
    pub max_retries: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub id: usize,
    pub k: usize,
    pub r: usize,
    pub t: usize,
    pub w_kind: String,
    /// Both oracles agree on every line and the two classifications match.
    pub agreement: bool,
    pub secant_ok: bool,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reproducer {
    pub id: usize,
    pub seed: u64,
    pub r: usize,
    pub config: PointConfigJson,
    pub line: Vec<String>,
    pub bundle_unstable: bool,
    pub ideal_unstable: bool,
}

#[derive(Debug)]
pub enum CensusFailure {
    Infeasible(String),
    Disagreement(Box<Reproducer>),
}

#[derive(Debug)]
pub struct CensusRun {
    pub records: Vec<CensusRecord>,
    pub failure: Option<CensusFailure>,
}

enum Outcome {
    Done(CensusRecord, Option<Reproducer>),
    Infeasible(String),
}

/// Configuration `id` of a census: its own ChaCha stream of `seed`.
pub fn sample_config(opts: &CensusOptions, id: usize, all: &[ProjPoint]) -> Result<(PointConfig, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(id as u64);
    let k = if opts.k_min == opts.k_max {
        opts.k_min
    } else {
        rng.gen_range(opts.k_min..=opts.k_max)
    };
    if k > all.len() {
        return Err(format!("k = {k} exceeds the {} points of the plane", all.len()));
    }
    let mut last = String::new();
    for attempt in 1..=opts.max_retries {
        let idx = sample(&mut rng, all.len(), k);
        let pts: Vec<ProjPoint> = idx.iter().map(|i| all[i].clone()).collect();
        let z = PointConfig::new(opts.field, 2, pts).expect("distinct points");
        let gp = is_general_position(&z, opts.r).expect("plane configuration");
        match gp.violation() {
            None => return Ok((z, attempt)),
            Some(v) => last = v,
        }
    }
    Err(format!(
        "configuration {id}: no general position sample of {k} points in {} attempts (last rejection: {last})",
        opts.max_retries
    ))
}

fn check_config(opts: &CensusOptions, id: usize, all: &[ProjPoint], ideal: &IdealSide) -> CliResult<Outcome> {
    let start = Instant::now();
    let z = match sample_config(opts, id, all) {
        Ok((z, _)) => z,
        Err(msg) => return Ok(Outcome::Infeasible(msg)),
    };
    let r = opts.r;
    let p = build_logarithmic(&z, r)?;
    let validity = validate_bundle(&p, ValidationStrategy::ExhaustiveFp)?;
    let scan = scan_w_bundle(&p, &ScanDomain::Exhaustive, Some(&validity))?;
    let oracle = IdealOracle::new(&z, r)?;
    let mut first_mismatch = None;
    for l in all {
        let i = ideal(&oracle, l)?;
        let b = scan.found.binary_search(l).is_ok();
        if b != i && first_mismatch.is_none() {
            first_mismatch = Some((l.clone(), b, i));
        }
    }
    let ideal_report = classify_w_ideal(&z, r)?;
    let coherent = ideal_report.kind == scan.report.kind && scan.report.checks_pass();
    let secant_ok = secant_pencil_check(&p, &scan.found, r, opts.seed)?.is_empty();
    let record = CensusRecord {
        id,
        k: z.len(),
        r,
        t: h0_ideal(&z, r + 2),
        w_kind: scan.report.kind.name().to_string(),
        agreement: first_mismatch.is_none() && coherent,
        secant_ok,
        ms: if opts.timing { start.elapsed().as_millis() as u64 } else { 0 },
    };
    let repro = match first_mismatch {
        Some((line, b, i)) => Some(minimize(opts, id, &z, &line, b, i, ideal)?),
        None if !coherent => {
            let line = z.points()[0].clone();
            Some(Reproducer {
                id,
                seed: opts.seed,
                r,
                config: PointConfigJson::from_config(&z),
                line: line.to_strings(),
                bundle_unstable: true,
                ideal_unstable: true,
            })
        }
        None => None,
    };
    Ok(Outcome::Done(record, repro))
}

/// Drops points greedily while the disagreement on `line` persists.
fn minimize(
    opts: &CensusOptions,
    id: usize,
    z: &PointConfig,
    line: &ProjPoint,
    bundle: bool,
    ideal_value: bool,
    ideal: &IdealSide,
) -> CliResult<Reproducer> {
    let r = opts.r;
    let disagrees = |c: &PointConfig| -> Option<(bool, bool)> {
        let oracle = IdealOracle::new(c, r).ok()?;
        let p = build_logarithmic(c, r).ok()?;
        let b = steiner_core::instability::unstable_test_bundle(&p, line, None).ok()?.unstable;
        let i = ideal(&oracle, line).ok()?;
        (b != i).then_some((b, i))
    };
    let mut current = z.clone();
    let mut values = (bundle, ideal_value);
    let mut i = 0;
    while i < current.len() {
        let smaller = current.without(i);
        match disagrees(&smaller) {
            Some(v) => {
                current = smaller;
                values = v;
            }
            None => i += 1,
        }
    }
    Ok(Reproducer {
        id,
        seed: opts.seed,
        r,
        config: PointConfigJson::from_config(&current),
        line: line.to_strings(),
        bundle_unstable: values.0,
        ideal_unstable: values.1,
    })
}

pub fn run_census(opts: &CensusOptions, ideal: &IdealSide) -> CliResult<CensusRun> {
    if !opts.field.is_prime_field() {
        return Err(steiner_core::Error::Precondition("the census runs over a prime field".into()).into());
    }
    if opts.k_min > opts.k_max {
        return Err(CliError::Io(format!("empty size range {}..{}", opts.k_min, opts.k_max)));
    }
    let mut all = projective_points(opts.field, 2)?;
    all.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let outcomes: Vec<CliResult<Outcome>> =
        pool.install(|| (0..opts.count).into_par_iter().map(|id| check_config(opts, id, &all, ideal)).collect());
    let mut records = Vec::new();
    let mut failure = None;
    for outcome in outcomes {
        match outcome? {
            Outcome::Done(rec, repro) => {
                records.push(rec);
                if let (Some(rep), None) = (repro, &failure) {
                    failure = Some(CensusFailure::Disagreement(Box::new(rep)));
                }
            }
            Outcome::Infeasible(msg) => {
                if failure.is_none() {
                    failure = Some(CensusFailure::Infeasible(msg));
                }
            }
        }
    }
    Ok(CensusRun { records, failure })
}

pub fn write_csv<W: Write>(records: &[CensusRecord], r: usize, out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        w.write_record([
            rec.id.to_string(),
            rec.k.to_string(),
            rec.r.to_string(),
            rec.t.to_string(),
            rec.w_kind.clone(),
            rec.agreement.to_string(),
            rec.secant_ok.to_string(),
            rec.ms.to_string(),
        ])?;
    }
    let count = |kind: &str| records.iter().filter(|x| x.w_kind == kind).count();
    w.write_record([
        "summary".to_string(),
        records.len().to_string(),
        r.to_string(),
        String::new(),
        format!("finite={};curve={};whole_space={}", count("finite"), count("curve"), count("whole_space")),
        records.iter().all(|x| x.agreement).to_string(),
        records.iter().all(|x| x.secant_ok).to_string(),
        records.iter().map(|x| x.ms).sum::<u64>().to_string(),
    ])?;
    w.flush()?;
    Ok(())
}
