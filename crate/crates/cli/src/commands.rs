//! Data sources and the computations behind each subcommand.

use std::fs;
use std::path::{Path, PathBuf};

use sextic_core::census::{build_report, cubic_ap_histogram};
use sextic_core::{
    CensusFilter, CensusReport, CheckpointCounter, CubicFieldRecord, EnumerationRange, LocalCondition, Model,
    PredictionModel, Predictor, Sign,
};

use crate::cache::{cache_file_name, find_cache, largest_cache, read_cache, CacheMetadata, CacheWriter};
use crate::driver::for_each_segment;
use crate::error::{CliError, Result};
use crate::report::{CubicApRow, PredictRow};

/// Where cubic fields come from: a cache directory, live enumeration, or both
/// (live results are then written to the directory).
#[derive(Debug, Clone)]
pub struct Source {
    pub cache: Option<PathBuf>,
    pub live: bool,
    pub threads: usize,
}

impl Source {
    pub fn live(threads: usize) -> Self {
        Self { cache: None, live: true, threads }
    }

    fn cached(&self, sign: Sign, required: u64) -> Result<Option<Vec<CubicFieldRecord>>> {
        let Some(dir) = &self.cache else { return Ok(None) };
        match find_cache(dir, sign, required)? {
            Some((path, _)) => {
                let (_, mut records) = read_cache(&path)?;
                records.retain(|r| r.disc.unsigned_abs() < required);
                Ok(Some(records))
            }
            None => Ok(None),
        }
    }

    fn insufficient(&self, sign: Sign, required: u64) -> Result<CliError> {
        let available = match &self.cache {
            Some(dir) => largest_cache(dir, sign)?,
            None => 0,
        };
        Ok(CliError::InsufficientRange { required, available })
    }

    fn writer(&self, range: &EnumerationRange) -> Result<Option<CacheWriter>> {
        let Some(dir) = &self.cache else { return Ok(None) };
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Some(CacheWriter::create(&dir.join(cache_file_name(range)), *range)?))
    }
}

/// Enumerates `range` into a cache file at `path`.
pub fn enumerate_to(path: &Path, range: EnumerationRange, threads: usize) -> Result<CacheMetadata> {
    let mut w = CacheWriter::create(path, range)?;
    for_each_segment(&range, threads, Ok, |seg| seg.iter().try_for_each(|r| w.push(r)))?;
    w.finish()
}

/// Cubic fields of `sign` with `|Disc| < bound`, in the global order.
pub fn cubic_records(sign: Sign, bound: u64, source: &Source) -> Result<Vec<CubicFieldRecord>> {
    if bound == 0 {
        return Ok(Vec::new());
    }
    if let Some(records) = source.cached(sign, bound)? {
        return Ok(records);
    }
    if !source.live {
        return Err(source.insufficient(sign, bound)?);
    }
    let range = EnumerationRange::new(sign, 0, bound)?;
    let mut writer = source.writer(&range)?;
    let mut all = Vec::new();
    for_each_segment(&range, source.threads, Ok, |seg| {
        if let Some(w) = writer.as_mut() {
            seg.iter().try_for_each(|r| w.push(r))?;
        }
        all.extend(seg);
        Ok(())
    })?;
    if let Some(w) = writer {
        w.finish()?;
    }
    Ok(all)
}

/// Counts sextic fields at each checkpoint, enumerating cubic fields to the required bound.
/// Every non-cyclic field passes the two-way discriminant check.
pub fn count(checkpoints: &[u128], filter: &CensusFilter, source: &Source) -> Result<CheckpointCounter> {
    let mut counter = CheckpointCounter::new(checkpoints, filter.clone())?;
    let required = counter.required_cubic_bound();
    if required == 0 {
        return Ok(counter);
    }
    if let Some(records) = source.cached(filter.sign, required)? {
        for r in &records {
            counter.push_cubic(r)?;
        }
        return Ok(counter);
    }
    if !source.live {
        return Err(source.insufficient(filter.sign, required)?);
    }
    let range = EnumerationRange::new(filter.sign, 0, required)?;
    let mut writer = source.writer(&range)?;
    let keep = writer.is_some();
    let template = CheckpointCounter::new(checkpoints, filter.clone())?;
    for_each_segment(
        &range,
        source.threads,
        |seg| {
            let mut c = template.clone();
            for r in &seg {
                c.push_cubic(r)?;
            }
            Ok((c, if keep { seg } else { Vec::new() }))
        },
        |(c, seg)| {
            counter.merge(&c)?;
            if let Some(w) = writer.as_mut() {
                seg.iter().try_for_each(|r| w.push(r))?;
            }
            Ok(())
        },
    )?;
    if let Some(w) = writer {
        w.finish()?;
    }
    Ok(counter)
}

pub fn census(
    checkpoints: &[u128],
    filter: &CensusFilter,
    source: &Source,
    predictor: &Predictor,
    cyclic_correction: bool,
) -> Result<CensusReport> {
    let counter = count(checkpoints, filter, source)?;
    Ok(build_report(&counter, predictor, cyclic_correction)?)
}

/// Residue counts of positive cubic discriminants below each bound, with and without cyclic fields.
pub fn cubic_ap(bounds: &[u64], modulus: u64, source: &Source) -> Result<Vec<CubicApRow>> {
    let max = bounds.iter().copied().max().unwrap_or(0);
    let records = cubic_records(Sign::Positive, max, source)?;
    let mut rows = Vec::new();
    for &bound in bounds {
        for include_cyclic in [true, false] {
            let counts = cubic_ap_histogram(&records, max, modulus, bound, include_cyclic)?;
            rows.push(CubicApRow { bound, modulus, include_cyclic, counts });
        }
    }
    Ok(rows)
}

pub fn model_name(m: Model) -> &'static str {
    match m {
        Model::Main => "main",
        Model::Strong => "strong",
        Model::Stronger => "stronger",
    }
}

pub fn predictions(
    predictor: &Predictor,
    xs: &[u128],
    sign: Sign,
    model: Model,
    unramified: &[u64],
    cyclic_correction: bool,
    mod5: bool,
) -> Result<Vec<PredictRow>> {
    let mut rows = Vec::new();
    for &x in xs {
        let row = |residue, value: f64| PredictRow {
            x,
            sign: sign.as_str(),
            model: model_name(model),
            residue,
            value,
            rounded: value.round() as i64,
        };
        if mod5 {
            if !unramified.is_empty() && unramified != [2, 3] {
                return Err(CliError::Usage("--mod5 always conditions on 2 and 3 being unramified".into()));
            }
            let q = predictor.mod5_prediction(x as f64, model, sign)?;
            rows.extend(q.iter().enumerate().map(|(r, &v)| row(Some(r as u64), v)));
        } else {
            let overrides =
                unramified.iter().map(|&p| LocalCondition::unramified(p)).collect::<std::result::Result<Vec<_>, _>>()?;
            let pm = PredictionModel { model, sign, cyclic_correction: cyclic_correction && sign == Sign::Positive };
            if pm.cyclic_correction && !overrides.is_empty() {
                return Err(CliError::Usage(
                    "the cyclic correction is undefined with local conditions; pass --no-cyclic-correction".into(),
                ));
            }
            rows.push(row(None, predictor.predict(x as f64, &pm, &overrides)?.total));
        }
    }
    Ok(rows)
}
