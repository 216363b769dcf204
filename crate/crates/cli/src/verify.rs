//! Oracle comparisons and numeric identities run by `sextic verify`.

use std::f64::consts::PI;

use serde::Serialize;
use sextic_core::arith::primes_up_to;
use sextic_core::enumerate::{brute_force_enumerate, partition};
use sextic_core::predict::{
    accelerated_product, c3_alternate, c_p, k_p, k_p_theta, local_factor, LocalSeries, Term,
};
use sextic_core::special::{gamma, gamma_two_thirds, riemann_zeta, zeta_one_third};
use sextic_core::{build_sextic, EnumerationRange, Enumerator, LocalCondition, Model, PredictionModel, Predictor, Sign};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.into(), passed, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// `ζ(s)` for `0 < s < 1` from the alternating series `sum (-1)^{n-1} n^{-s}`: partial sums
/// from the 50th on, averaged pairwise 40 times, divided by `1 - 2^{1-s}`.
pub fn zeta_alternating_oracle(s: f64) -> f64 {
    const START: usize = 50;
    const ROUNDS: usize = 40;
    let mut partial = Vec::with_capacity(ROUNDS + 1);
    let mut acc = 0.0;
    for n in 1..=START + ROUNDS {
        let term = (n as f64).powf(-s);
        acc += if n % 2 == 1 { term } else { -term };
        if n >= START {
            partial.push(acc);
        }
    }
    for _ in 0..ROUNDS {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    partial[0] / (1.0 - 2f64.powf(1.0 - s))
}

/// Largest relative disagreement between the closed forms and the alternative representations
/// of `c_p` and `k_p` over `p <= bound`.
pub fn representation_gaps(bound: u64) -> (f64, f64, f64) {
    let (mut c_gap, mut k_gap, mut theta_gap) = (0.0f64, 0.0f64, 0.0f64);
    c_gap = c_gap.max(rel(c3_alternate(), c_p(3)));
    for p in primes_up_to(bound) {
        let all = LocalCondition::all(p).expect("prime");
        c_gap = c_gap.max(rel(local_factor(&all, Term::Main), c_p(p)));
        k_gap = k_gap.max(rel(local_factor(&all, Term::Secondary), k_p(p)));
        if p != 3 {
            theta_gap = theta_gap.max(rel(k_p_theta(p), k_p(p)));
        }
    }
    (c_gap, k_gap, theta_gap)
}

pub fn run_checks() -> Result<VerifySummary> {
    let mut checks = Vec::new();

    for sign in [Sign::Positive, Sign::Negative] {
        let range = EnumerationRange::new(sign, 0, 5001)?;
        let en = Enumerator::new(5001)?;
        let fast = en.segment(&range)?;
        let slow = brute_force_enumerate(&range)?;
        let same = fast.iter().map(|r| r.form).eq(slow.iter().map(|r| r.form));
        checks.push(check(
            &format!("oracle_{}", sign.as_str()),
            same,
            format!("{} fast, {} brute force, |disc| <= 5000", fast.len(), slow.len()),
        ));
        let mut merged = Vec::new();
        for part in partition(&range, 8) {
            merged.extend(en.segment(&part)?);
        }
        checks.push(check(&format!("partition_{}", sign.as_str()), merged == fast, "k = 1 vs k = 8".into()));
        let mut mismatches = 0usize;
        let mut noncyclic = 0usize;
        for r in fast.iter().filter(|r| !r.cyclic) {
            noncyclic += 1;
            if build_sextic(r, &[]).is_err() {
                mismatches += 1;
            }
        }
        checks.push(check(
            &format!("dual_path_{}", sign.as_str()),
            mismatches == 0,
            format!("{mismatches} disagreements among {noncyclic} non-cyclic fields"),
        ));
    }

    let z2 = riemann_zeta(2.0)?;
    checks.push(check("zeta_2", rel(z2, PI * PI / 6.0) < 1e-9, format!("{z2:.15}")));
    let kernel = LocalSeries { root: 1, numerator: vec![1, 0, -1], denominator: vec![1] };
    let prod = accelerated_product(&kernel, |p| 1.0 - 1.0 / (p as f64 * p as f64), &[], 1e-10)?.value;
    checks.push(check("euler_product_zeta_2", rel(prod, 6.0 / (PI * PI)) < 1e-9, format!("{prod:.15}")));
    let refl = gamma(1.0 / 3.0)? * gamma_two_thirds();
    checks.push(check("gamma_reflection", rel(refl, 2.0 * PI / 3f64.sqrt()) < 1e-12, format!("{refl:.15}")));
    let rec = gamma(5.0 / 3.0)?;
    checks.push(check("gamma_recurrence", rel(rec, 2.0 / 3.0 * gamma_two_thirds()) < 1e-12, format!("{rec:.15}")));
    let (z, oracle) = (zeta_one_third(), zeta_alternating_oracle(1.0 / 3.0));
    checks.push(check("zeta_one_third", (z - oracle).abs() < 1e-9 && z < 0.0, format!("{z:.15} vs {oracle:.15}")));

    let (c_gap, k_gap, theta_gap) = representation_gaps(10_000);
    checks.push(check("c_p_dual", c_gap < 1e-12, format!("max relative gap {c_gap:e}")));
    checks.push(check("k_p_triple", k_gap < 1e-12 && theta_gap < 1e-12, format!("max relative gaps {k_gap:e}, {theta_gap:e}")));

    let predictor = Predictor::new(1e-10)?;
    let x = 1e20;
    let q = predictor.mod5_prediction(x, Model::Strong, Sign::Negative)?;
    let base = [LocalCondition::unramified(2)?, LocalCondition::unramified(3)?];
    let whole = predictor.predict(x, &PredictionModel::new(Model::Strong, Sign::Negative), &base)?.total;
    let sum: f64 = q.iter().sum();
    checks.push(check("mod5_partition", rel(sum, whole) < 1e-12, format!("{sum} vs {whole}")));

    Ok(VerifySummary { passed: checks.iter().all(|c| c.passed), checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_values() {
        assert!((zeta_alternating_oracle(0.5) + 1.4603545088095868).abs() < 1e-12);
        assert!((zeta_alternating_oracle(1.0 / 3.0) + 0.9733602483507827).abs() < 1e-12);
    }
}
