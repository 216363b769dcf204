//! Counting sextic discriminants at checkpoints, residue histograms and comparison reports.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::isqrt_ceil_u128;
use crate::enumerate::CubicFieldRecord;
use crate::predict::{Model, PredictionModel, Predictor};
use crate::sextic::{build_sextic, SexticRecord};
use crate::{Error, Sign};

/// Which sextic fields are counted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CensusFilter {
    pub sign: Sign,
    /// Primes at which the sextic field must be unramified.
    pub unramified: Vec<u64>,
    /// Modulus for residue histograms.
    pub modulus: Option<u64>,
}

impl CensusFilter {
    pub fn new(sign: Sign) -> Self {
        Self { sign, unramified: Vec::new(), modulus: None }
    }

    pub fn with_unramified(mut self, primes: &[u64]) -> Result<Self, Error> {
        if primes.len() > 10 {
            return Err(Error::InvalidArgument("at most 10 unramified primes"));
        }
        if let Some(&p) = primes.iter().find(|&&p| !crate::arith::is_prime_u64(p)) {
            return Err(Error::NotPrime(p));
        }
        self.unramified = primes.to_vec();
        self.unramified.sort_unstable();
        self.unramified.dedup();
        Ok(self)
    }

    pub fn with_modulus(mut self, m: u64) -> Result<Self, Error> {
        if m < 2 {
            return Err(Error::InvalidArgument("modulus must be at least 2"));
        }
        self.modulus = Some(m);
        Ok(self)
    }

    pub fn accepts(&self, r: &SexticRecord) -> bool {
        self.sign.matches(r.disc_sextic) && self.unramified.iter().all(|&p| r.is_unramified_at(p))
    }
}

/// Cubic `|Disc|` bound (exclusive) needed to see every sextic field with `|Disc| < x_max`:
/// the smallest `U` with `3 U^2 >= x_max`, since `|Disc(F)| >= 3`.
pub fn required_cubic_bound(x_max: u128) -> u64 {
    let u = isqrt_ceil_u128(x_max.div_ceil(3));
    u64::try_from(u).unwrap_or(u64::MAX)
}

fn check_coverage(coverage: u64, x_max: u128) -> Result<(), Error> {
    let required = required_cubic_bound(x_max);
    if coverage < required {
        Err(Error::InsufficientRange { required, available: coverage })
    } else {
        Ok(())
    }
}

/// Streaming checkpoint counts with optional residue histograms; mergeable across partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointCounter {
    checkpoints: Vec<u128>,
    filter: CensusFilter,
    /// `buckets[i]`: records with `checkpoints[i-1] <= |Disc| < checkpoints[i]`
    buckets: Vec<u64>,
    hist: Vec<Vec<u64>>,
}

impl CheckpointCounter {
    pub fn new(checkpoints: &[u128], filter: CensusFilter) -> Result<Self, Error> {
        if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("checkpoints must be strictly increasing"));
        }
        let m = filter.modulus.unwrap_or(0) as usize;
        Ok(Self {
            checkpoints: checkpoints.to_vec(),
            buckets: vec![0; checkpoints.len()],
            hist: vec![vec![0; m]; checkpoints.len()],
            filter,
        })
    }

    pub fn checkpoints(&self) -> &[u128] {
        &self.checkpoints
    }

    pub fn filter(&self) -> &CensusFilter {
        &self.filter
    }

    /// Cubic bound needed for the largest checkpoint.
    pub fn required_cubic_bound(&self) -> u64 {
        self.checkpoints.last().map_or(0, |&x| required_cubic_bound(x))
    }

    pub fn push(&mut self, r: &SexticRecord) {
        if !self.filter.accepts(r) {
            return;
        }
        let mag = r.disc_sextic.unsigned_abs();
        let i = self.checkpoints.partition_point(|&x| x <= mag);
        if i == self.checkpoints.len() {
            return;
        }
        self.buckets[i] += 1;
        if let Some(m) = self.filter.modulus {
            self.hist[i][r.residue(m) as usize] += 1;
        }
    }

    /// Builds the sextic record of a cubic field (skipping cyclic fields) and counts it.
    pub fn push_cubic(&mut self, r: &CubicFieldRecord) -> Result<(), Error> {
        if r.cyclic || !self.filter.sign.matches(r.disc as i128) {
            return Ok(());
        }
        let s = build_sextic(r, &[])?;
        self.push(&s);
        Ok(())
    }

    /// Adds the counts of another counter over a disjoint set of records.
    pub fn merge(&mut self, other: &Self) -> Result<(), Error> {
        if other.checkpoints != self.checkpoints || other.filter != self.filter {
            return Err(Error::InvalidArgument("counters with different configurations"));
        }
        for (a, b) in self.buckets.iter_mut().zip(&other.buckets) {
            *a += b;
        }
        for (ha, hb) in self.hist.iter_mut().zip(&other.hist) {
            for (a, b) in ha.iter_mut().zip(hb) {
                *a += b;
            }
        }
        Ok(())
    }

    /// Counts with `|Disc| < X` for each checkpoint.
    pub fn counts(&self) -> Vec<u64> {
        self.buckets
            .iter()
            .scan(0u64, |acc, &b| {
                *acc += b;
                Some(*acc)
            })
            .collect()
    }

    /// Residue histograms with `|Disc| < X` for each checkpoint (empty without a modulus).
    pub fn histograms(&self) -> Vec<Vec<u64>> {
        let m = self.filter.modulus.unwrap_or(0) as usize;
        let mut acc = vec![0u64; m];
        self.hist
            .iter()
            .map(|h| {
                for (a, b) in acc.iter_mut().zip(h) {
                    *a += b;
                }
                acc.clone()
            })
            .collect()
    }
}

/// Number of filtered sextic records with `0 < ±Disc < X` at each checkpoint.
/// `coverage` is the exclusive cubic `|Disc|` bound the records were enumerated to.
pub fn count_checkpoints(
    records: impl IntoIterator<Item = SexticRecord>,
    coverage: u64,
    checkpoints: &[u128],
    filter: &CensusFilter,
) -> Result<Vec<u64>, Error> {
    let mut counter = CheckpointCounter::new(checkpoints, filter.clone())?;
    check_coverage(coverage, counter.checkpoints.last().copied().unwrap_or(0))?;
    for r in records {
        counter.push(&r);
    }
    Ok(counter.counts())
}

/// Filtered counts below `x` by residue of the sextic discriminant modulo `filter.modulus`.
pub fn ap_histogram(
    records: impl IntoIterator<Item = SexticRecord>,
    coverage: u64,
    x: u128,
    filter: &CensusFilter,
) -> Result<Vec<u64>, Error> {
    if filter.modulus.is_none() {
        return Err(Error::InvalidArgument("histogram requires a modulus"));
    }
    check_coverage(coverage, x)?;
    let mut counter = CheckpointCounter::new(&[x], filter.clone())?;
    for r in records {
        counter.push(&r);
    }
    Ok(counter.histograms().pop().expect("one checkpoint"))
}

/// Cubic fields with `0 < Disc < bound` by residue of `Disc` modulo `modulus`.
pub fn cubic_ap_histogram<'a>(
    records: impl IntoIterator<Item = &'a CubicFieldRecord>,
    coverage: u64,
    modulus: u64,
    bound: u64,
    include_cyclic: bool,
) -> Result<Vec<u64>, Error> {
    if modulus < 2 {
        return Err(Error::InvalidArgument("modulus must be at least 2"));
    }
    if coverage < bound {
        return Err(Error::InsufficientRange { required: bound, available: coverage });
    }
    let mut h = vec![0u64; modulus as usize];
    for r in records {
        if r.disc > 0 && (r.disc as u64) < bound && (include_cyclic || !r.cyclic) {
            h[(r.disc as u64 % modulus) as usize] += 1;
        }
    }
    Ok(h)
}

/// `(predicted - actual) / X^{5/18}`.
pub fn error_column(predicted: f64, actual: u64, x: f64) -> f64 {
    (predicted - actual as f64) / libm::pow(x, 5.0 / 18.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub x: u128,
    pub actual: u64,
    pub pred_strong: f64,
    pub pred_stronger: f64,
    /// Error column of the rounded main-plus-secondary prediction.
    pub error_strong: f64,
    pub histogram: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub filter: CensusFilter,
    pub rows: Vec<ReportRow>,
}

/// Joins actual counts with predictions. Predictions at `X < 10^6` are reported as NaN.
pub fn build_report(
    counter: &CheckpointCounter,
    predictor: &Predictor,
    cyclic_correction: bool,
) -> Result<CensusReport, Error> {
    let filter = counter.filter().clone();
    let overrides = filter
        .unramified
        .iter()
        .map(|&p| crate::predict::LocalCondition::unramified(p))
        .collect::<Result<Vec<_>, _>>()?;
    let model = |m| PredictionModel { model: m, sign: filter.sign, cyclic_correction };
    let hist = counter.histograms();
    let mut rows = Vec::new();
    for (i, (&x, actual)) in counter.checkpoints().iter().zip(counter.counts()).enumerate() {
        let xf = x as f64;
        let (strong, stronger) = if xf >= crate::predict::MIN_X {
            (
                predictor.predict(xf, &model(Model::Strong), &overrides)?.total,
                predictor.predict(xf, &model(Model::Stronger), &overrides)?.total,
            )
        } else {
            (f64::NAN, f64::NAN)
        };
        rows.push(ReportRow {
            x,
            actual,
            pred_strong: strong,
            pred_stronger: stronger,
            error_strong: error_column(libm::round(strong), actual, xf),
            histogram: filter.modulus.map(|_| hist[i].clone()),
        });
    }
    Ok(CensusReport { filter, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_bound() {
        assert_eq!(required_cubic_bound(12), 2);
        assert_eq!(required_cubic_bound(13), 3);
        assert_eq!(required_cubic_bound(1_000_000_000_000), 577_351);
        for x in [1u128, 2, 3, 4, 26, 27, 28, 10u128.pow(23)] {
            let u = required_cubic_bound(x) as u128;
            assert!(3 * u * u >= x && (u == 0 || 3 * (u - 1) * (u - 1) < x));
        }
    }

    #[test]
    fn error_examples() {
        assert_eq!(libm::round(error_column(756.0, 690, 1e12) * 1000.0), 31.0);
        assert_eq!(libm::round(error_column(2979.0, 2809, 1e12) * 1000.0), 79.0);
        assert_eq!(error_column(5.0, 5, 1e12), 0.0);
    }

    #[test]
    fn counter_validation() {
        assert!(CheckpointCounter::new(&[10, 10], CensusFilter::new(Sign::Negative)).is_err());
        assert!(CensusFilter::new(Sign::Negative).with_modulus(1).is_err());
        assert!(CensusFilter::new(Sign::Negative).with_unramified(&[4]).is_err());
        let c = CheckpointCounter::new(&[], CensusFilter::new(Sign::Negative)).unwrap();
        assert!(c.counts().is_empty());
        assert!(matches!(
            count_checkpoints(Vec::new(), 10, &[10u128.pow(12)], &CensusFilter::new(Sign::Positive)),
            Err(Error::InsufficientRange { required: 577_351, available: 10 })
        ));
    }
}
