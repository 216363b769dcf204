//! Predicted counts of S3-sextic fields: local densities, Euler products and the
//! main (`X^{1/3}`) and secondary (`X^{5/18}`) terms.
//!
//! Euler products are evaluated by writing the generic local factor as a power series
//! `F(x) = prod_k (1 - x^k)^{-e_k}` in `x = p^{-1/r}` and dividing out the zeta factors:
//! `prod_p F = prod_k ζ(k/r)^{e_k} * prod_p [F(p) prod_k (1 - p^{-k/r})^{e_k}]`, where the
//! second product converges like `sum p^{-(K+1)/r}`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::arith::{is_prime_u64, primes_up_to};
use crate::local::SplittingType;
use crate::special::{gamma_two_thirds, riemann_zeta, zeta_one_third};
use crate::{Error, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    Main,
    Secondary,
}

/// Which terms of the asymptotic are included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// `X^{1/3}` term only.
    Main,
    /// Main and secondary terms.
    Strong,
    /// Main and secondary terms with the tail corrections
    /// `1 - 12 X^{-1/12} / log X` and `1 - 9 X^{-1/9} / log X`.
    Stronger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PredictionModel {
    pub model: Model,
    pub sign: Sign,
    /// Subtract the weight-1/3 count of cyclic cubic fields, `(c_cyc / 3) X^{1/4}` (positive sign only).
    pub cyclic_correction: bool,
}

impl PredictionModel {
    /// The cyclic correction is on by default for positive discriminants.
    pub fn new(model: Model, sign: Sign) -> Self {
        Self { model, sign, cyclic_correction: sign == Sign::Positive }
    }
}

/// The splitting types allowed at one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalCondition {
    pub p: u64,
    allowed: [bool; 5],
}

fn type_index(t: SplittingType) -> usize {
    SplittingType::ALL.iter().position(|&s| s == t).expect("listed")
}

impl LocalCondition {
    pub fn new(p: u64, types: &[SplittingType]) -> Result<Self, Error> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if types.is_empty() {
            return Err(Error::InvalidArgument("a local condition needs at least one splitting type"));
        }
        let mut allowed = [false; 5];
        for &t in types {
            allowed[type_index(t)] = true;
        }
        Ok(Self { p, allowed })
    }

    pub fn all(p: u64) -> Result<Self, Error> {
        Self::new(p, &SplittingType::ALL)
    }

    pub fn unramified(p: u64) -> Result<Self, Error> {
        Self::new(p, &SplittingType::ALL[..3])
    }

    pub fn ramified(p: u64) -> Result<Self, Error> {
        Self::new(p, &SplittingType::ALL[3..])
    }

    pub fn partially_ramified(p: u64) -> Result<Self, Error> {
        Self::new(p, &[SplittingType::PartiallyRamified])
    }

    pub fn totally_ramified(p: u64) -> Result<Self, Error> {
        Self::new(p, &[SplittingType::TotallyRamified])
    }

    pub fn allows(&self, t: SplittingType) -> bool {
        self.allowed[type_index(t)]
    }

    pub fn types(&self) -> impl Iterator<Item = SplittingType> + '_ {
        SplittingType::ALL.into_iter().filter(|&t| self.allows(t))
    }
}

fn pw(p: u64, e: f64) -> f64 {
    libm::pow(p as f64, e)
}

/// Local factor of the main term.
pub fn c_p(p: u64) -> f64 {
    if p == 3 {
        (1.0 - 1.0 / 3.0) * (4.0 / 3.0 + pw(3, -5.0 / 3.0) + 2.0 * pw(3, -7.0 / 3.0))
    } else {
        let q = 1.0 / p as f64;
        (1.0 - q) * (1.0 + q + pw(p, -4.0 / 3.0))
    }
}

/// Local factor of the secondary term.
pub fn k_p(p: u64) -> f64 {
    if p == 3 {
        0.25 * (11.0 / 3.0 - pw(3, -2.0 / 3.0) + pw(3, -8.0 / 9.0) + 2.0 * pw(3, -13.0 / 9.0)
            - pw(3, -14.0 / 9.0)
            - 2.0 * pw(3, -19.0 / 9.0))
    } else {
        let q = 1.0 / p as f64;
        1.0 + 1.0 / (pw(p, 13.0 / 9.0) * (1.0 + q))
            * (1.0 - pw(p, -2.0 / 9.0) - pw(p, -5.0 / 9.0) - pw(p, -2.0 / 3.0))
    }
}

/// Relative main-term weights of `(111), (12), (3), (1²1), (1³)`.
pub fn main_weights(p: u64) -> [f64; 5] {
    let last = if p == 3 { pw(3, -5.0 / 3.0) + 2.0 * pw(3, -7.0 / 3.0) } else { pw(p, -4.0 / 3.0) };
    [1.0 / 6.0, 0.5, 1.0 / 3.0, 1.0 / p as f64, last]
}

/// Relative secondary-term weights of `(111), (12), (3), (1²1), (1³)`.
pub fn secondary_weights(p: u64) -> [f64; 5] {
    let x = pw(p, -1.0 / 3.0);
    let last = if p == 3 { pw(3, -17.0 / 9.0) + 2.0 * pw(3, -22.0 / 9.0) } else { pw(p, -13.0 / 9.0) };
    [
        (1.0 + 2.0 * x + x * x) / 6.0,
        (1.0 + x * x) / 2.0,
        (1.0 - x + x * x) / 3.0,
        (1.0 + x) / p as f64,
        last,
    ]
}

/// Normalization of the secondary weights.
pub fn secondary_normalizer(p: u64) -> f64 {
    let q = 1.0 / p as f64;
    (1.0 - (pw(p, 1.0 / 3.0) + 1.0) / (p as f64 * (p as f64 + 1.0)))
        / (1.0 + pw(p, -2.0 / 3.0) + q + pw(p, -4.0 / 3.0))
}

/// The local factor at `condition.p` restricted to the allowed splitting types.
pub fn local_factor(condition: &LocalCondition, term: Term) -> f64 {
    let p = condition.p;
    let (scale, weights) = match term {
        Term::Main => (1.0 - 1.0 / p as f64, main_weights(p)),
        Term::Secondary => (secondary_normalizer(p), secondary_weights(p)),
    };
    let sum: f64 = SplittingType::ALL
        .iter()
        .zip(weights)
        .filter(|(t, _)| condition.allows(**t))
        .map(|(_, w)| w)
        .sum();
    scale * sum
}

/// A local factor as a rational function of `x = p^{-1/root}` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSeries {
    pub root: u32,
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
}

impl LocalSeries {
    /// `1 + x^12 - x^18 - x^21` with `x = p^{-1/9}`.
    pub fn main() -> Self {
        let mut num = vec![0; 22];
        num[0] = 1;
        num[12] = 1;
        num[18] = -1;
        num[21] = -1;
        Self { root: 9, numerator: num, denominator: vec![1] }
    }

    /// `1 + x^13 (1 - x^2 - x^5 - x^6) / (1 + x^9)` with `x = p^{-1/9}`.
    pub fn secondary() -> Self {
        let mut num = vec![0; 20];
        for (i, c) in [(0, 1), (9, 1), (13, 1), (15, -1), (18, -1), (19, -1)] {
            num[i] = c;
        }
        let mut den = vec![0; 10];
        den[0] = 1;
        den[9] = 1;
        Self { root: 9, numerator: num, denominator: den }
    }

    /// Power-series coefficients up to `x^n`.
    fn coefficients(&self, n: usize) -> Result<Vec<i128>, Error> {
        if self.denominator.first() != Some(&1) || self.numerator.first() != Some(&1) {
            return Err(Error::InvalidArgument("local series must have constant term 1"));
        }
        let ovf = || Error::Overflow("local series");
        let mut f = vec![0i128; n + 1];
        for k in 0..=n {
            let mut v = *self.numerator.get(k).unwrap_or(&0) as i128;
            for j in 1..=k.min(self.denominator.len() - 1) {
                v = v
                    .checked_sub((self.denominator[j] as i128).checked_mul(f[k - j]).ok_or_else(ovf)?)
                    .ok_or_else(ovf)?;
            }
            f[k] = v;
        }
        Ok(f)
    }

    /// The exponents `e_k`, `1 <= k <= n`, of `F = prod_k (1 - x^k)^{-e_k}`.
    pub fn zeta_exponents(&self, n: usize) -> Result<Vec<i64>, Error> {
        let f = self.coefficients(n)?;
        let ovf = || Error::Overflow("local series");
        // h_k = k [x^k] log F
        let mut h = vec![0i128; n + 1];
        for k in 1..=n {
            let mut v = (k as i128).checked_mul(f[k]).ok_or_else(ovf)?;
            for j in 1..k {
                v = v.checked_sub(h[j].checked_mul(f[k - j]).ok_or_else(ovf)?).ok_or_else(ovf)?;
            }
            h[k] = v;
        }
        let mut e = vec![0i64; n + 1];
        for k in 1..=n {
            let mut s = 0i128;
            for d in 1..=k {
                if k % d == 0 {
                    s += mobius((k / d) as u64) as i128 * h[d];
                }
            }
            if s % k as i128 != 0 {
                return Err(Error::InvalidArgument("local series exponents are not integral"));
            }
            e[k] = i64::try_from(s / k as i128).map_err(|_| ovf())?;
        }
        Ok(e)
    }
}

fn mobius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// An evaluated Euler product and its convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductValue {
    pub value: f64,
    /// Largest prime included explicitly in the accelerated product.
    pub prime_bound: u64,
    /// Estimated relative size of the omitted primes.
    pub tail_bound: f64,
    /// Relative change between the last two prime bounds.
    pub doubling_delta: f64,
}

const MIN_PRIME_BOUND: u64 = 1 << 12;
const MAX_PRIME_BOUND: u64 = 1 << 24;

/// Neumaier-compensated sum.
#[derive(Default, Clone, Copy)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if libm::fabs(self.s) >= libm::fabs(x) {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// `prod_p F(p)` where `local(p)` evaluates the generic factor described by `series`
/// and `exceptions` replace the factor at individual primes.
pub fn accelerated_product(
    series: &LocalSeries,
    local: impl Fn(u64) -> f64,
    exceptions: &[(u64, f64)],
    rel_tol: f64,
) -> Result<ProductValue, Error> {
    if !(rel_tol >= 1e-12) {
        return Err(Error::InvalidArgument("relative tolerance must be at least 1e-12"));
    }
    let r = series.root as usize;
    let k_max = 4 * r;
    let e = series.zeta_exponents(k_max)?;
    if e[1..=r].iter().any(|&x| x != 0) {
        return Err(Error::InvalidArgument("local series must agree with 1 up to x^root"));
    }
    let active: Vec<(f64, f64)> =
        (r + 1..=k_max).filter(|&k| e[k] != 0).map(|k| (k as f64 / r as f64, e[k] as f64)).collect();
    let mut log_total = Sum::default();
    for &(s, ek) in &active {
        log_total.add(ek * libm::log(riemann_zeta(s)?));
    }
    for &(p, v) in exceptions {
        log_total.add(libm::log(v) - libm::log(local(p)));
    }
    let decay = (k_max + 1) as f64 / r as f64;
    let log_residual = |p: u64| {
        let mut v = libm::log(local(p));
        for &(s, ek) in &active {
            v += ek * libm::log1p(-pw(p, -s));
        }
        v
    };
    let mut bound = MIN_PRIME_BOUND;
    let primes = primes_up_to(MAX_PRIME_BOUND);
    let mut idx = 0;
    let mut previous: Option<f64> = None;
    loop {
        let mut worst: f64 = 0.0;
        while idx < primes.len() && primes[idx] <= bound {
            let p = primes[idx];
            let lr = log_residual(p);
            log_total.add(lr);
            if 2 * p > bound {
                worst = libm::fmax(worst, libm::fabs(lr) * pw(p, decay));
            }
            idx += 1;
        }
        let current = log_total.value();
        // sum over n > bound of 2 * worst * n^{-decay}, and the rounding floor of the residual terms
        let tail = 2.0 * worst * pw(bound, 1.0 - decay) / (decay - 1.0) + idx as f64 * 1e-17;
        let delta = previous.map_or(f64::INFINITY, |prev| libm::fabs(libm::expm1(current - prev)));
        if delta < rel_tol && tail < rel_tol {
            return Ok(ProductValue {
                value: libm::exp(current),
                prime_bound: bound,
                tail_bound: tail,
                doubling_delta: delta,
            });
        }
        if bound >= MAX_PRIME_BOUND {
            return Err(Error::Convergence { prime_bound: bound, delta, tail });
        }
        previous = Some(current);
        bound *= 2;
    }
}

/// `prod_p c_p` or `prod_p k_p`, with the factors at overridden primes restricted.
pub fn euler_product(term: Term, overrides: &[LocalCondition], rel_tol: f64) -> Result<ProductValue, Error> {
    let mut base = match term {
        Term::Main => accelerated_product(&LocalSeries::main(), c_p, &[(3, c_p(3))], rel_tol)?,
        Term::Secondary => accelerated_product(&LocalSeries::secondary(), k_p, &[(3, k_p(3))], rel_tol)?,
    };
    base.value *= override_ratio(term, overrides)?;
    Ok(base)
}

fn override_ratio(term: Term, overrides: &[LocalCondition]) -> Result<f64, Error> {
    let mut ratio = 1.0;
    for (i, c) in overrides.iter().enumerate() {
        if overrides[..i].iter().any(|o| o.p == c.p) {
            return Err(Error::InvalidArgument("at most one local condition per prime"));
        }
        let full = match term {
            Term::Main => c_p(c.p),
            Term::Secondary => k_p(c.p),
        };
        ratio *= local_factor(c, term) / full;
    }
    Ok(ratio)
}

/// `c_3` written as `(1 - 3^{-2}) (1 + 1/3 + (2/27) 3^{2/3} + (1/27) 3^{4/3}) / (1 + 1/3)`.
pub fn c3_alternate() -> f64 {
    (1.0 - 1.0 / 9.0) * (1.0 + 1.0 / 3.0 + 2.0 / 27.0 * pw(3, 2.0 / 3.0) + pw(3, 4.0 / 3.0) / 27.0) / (4.0 / 3.0)
}

/// `k_p` for `p != 3` as `(1 + θ(p) p^{5/9}) (1 - (p^{1/3} + 1) / (p (p + 1)))`
/// with `θ(p) = 1 / (p^2 (1 + p^{-2/3} + p^{-1} + p^{-4/3}))`.
pub fn k_p_theta(p: u64) -> f64 {
    let pf = p as f64;
    let theta = 1.0 / (pf * pf * (1.0 + pw(p, -2.0 / 3.0) + 1.0 / pf + pw(p, -4.0 / 3.0)));
    (1.0 + theta * pw(p, 5.0 / 9.0)) * (1.0 - (libm::cbrt(pf) + 1.0) / (pf * (pf + 1.0)))
}

/// `(11 sqrt 3 / (36 π)) prod_{p ≡ 1 mod 3} (1 - 2 / (p (p + 1)))`: cyclic cubic fields
/// have conductor below `Y` with density `c_cyc Y`.
pub fn cyclic_constant() -> f64 {
    const BOUND: u64 = 1 << 22;
    let mut log = Sum::default();
    for p in primes_up_to(BOUND) {
        if p % 3 == 1 {
            let p = p as f64;
            log.add(libm::log1p(-2.0 / (p * (p + 1.0))));
        }
    }
    // primes ≡ 1 mod 3 above the bound contribute about -1 / (B log B)
    let b = BOUND as f64;
    log.add(-1.0 / (b * libm::log(b)));
    11.0 * libm::sqrt(3.0) / (36.0 * PI) * libm::exp(log.value())
}

/// The pieces of a prediction. `total = main + secondary - cyclic`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub main: f64,
    pub secondary: f64,
    pub cyclic: f64,
    pub total: f64,
}

impl Prediction {
    /// Rounded half away from zero.
    pub fn rounded(&self) -> i64 {
        libm::round(self.total) as i64
    }
}

/// Smallest `X` for which predictions are produced.
pub const MIN_X: f64 = 1e6;

/// Evaluates predictions, caching the unconditioned Euler products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Predictor {
    pub main_product: ProductValue,
    pub secondary_product: ProductValue,
    pub cyclic_constant: f64,
    pub zeta_one_third: f64,
    pub gamma_two_thirds: f64,
}

impl Predictor {
    pub fn new(rel_tol: f64) -> Result<Self, Error> {
        Ok(Self {
            main_product: euler_product(Term::Main, &[], rel_tol)?,
            secondary_product: euler_product(Term::Secondary, &[], rel_tol)?,
            cyclic_constant: cyclic_constant(),
            zeta_one_third: zeta_one_third(),
            gamma_two_thirds: gamma_two_thirds(),
        })
    }

    /// `C/12 prod c_p` with `C = 1, 3`.
    pub fn main_coefficient(&self, sign: Sign, overrides: &[LocalCondition]) -> Result<f64, Error> {
        let c = match sign {
            Sign::Positive => 1.0,
            Sign::Negative => 3.0,
        };
        Ok(c / 12.0 * self.main_product.value * override_ratio(Term::Main, overrides)?)
    }

    /// `4 K ζ(1/3) / (5 Γ(2/3)^3) prod k_p` with `K = 1, sqrt 3`.
    pub fn secondary_coefficient(&self, sign: Sign, overrides: &[LocalCondition]) -> Result<f64, Error> {
        let k = match sign {
            Sign::Positive => 1.0,
            Sign::Negative => libm::sqrt(3.0),
        };
        let g = self.gamma_two_thirds;
        Ok(4.0 * k * self.zeta_one_third / (5.0 * g * g * g)
            * self.secondary_product.value
            * override_ratio(Term::Secondary, overrides)?)
    }

    pub fn predict(&self, x: f64, model: &PredictionModel, overrides: &[LocalCondition]) -> Result<Prediction, Error> {
        if !(x >= MIN_X) || !x.is_finite() {
            return Err(Error::InvalidArgument("predictions require X >= 10^6"));
        }
        let with_cyclic = model.cyclic_correction && model.sign == Sign::Positive;
        if with_cyclic && !overrides.is_empty() {
            return Err(Error::InvalidArgument("the cyclic correction is only defined without local conditions"));
        }
        let ln = libm::log(x);
        let mut main = self.main_coefficient(model.sign, overrides)? * libm::cbrt(x);
        let mut secondary = self.secondary_coefficient(model.sign, overrides)? * libm::pow(x, 5.0 / 18.0);
        match model.model {
            Model::Main => secondary = 0.0,
            Model::Strong => {}
            Model::Stronger => {
                main *= 1.0 - 12.0 * libm::pow(x, -1.0 / 12.0) / ln;
                secondary *= 1.0 - 9.0 * libm::pow(x, -1.0 / 9.0) / ln;
            }
        }
        let cyclic = if with_cyclic { self.cyclic_constant / 3.0 * libm::pow(x, 0.25) } else { 0.0 };
        Ok(Prediction { main, secondary, cyclic, total: main + secondary - cyclic })
    }

    /// Predicted counts by `Disc mod 5`, for fields unramified at 2 and 3: residue 0 holds
    /// the fields ramified at 5 and the unramified ones are split evenly over 1..4.
    pub fn mod5_prediction(&self, x: f64, model: Model, sign: Sign) -> Result<[f64; 5], Error> {
        let pm = PredictionModel { model, sign, cyclic_correction: false };
        let base = [LocalCondition::unramified(2)?, LocalCondition::unramified(3)?];
        let with = |c: LocalCondition| -> Result<f64, Error> {
            let mut o = base.to_vec();
            o.push(c);
            Ok(self.predict(x, &pm, &o)?.total)
        };
        let ramified = with(LocalCondition::ramified(5)?)?;
        let unramified = with(LocalCondition::unramified(5)?)? / 4.0;
        Ok([ramified, unramified, unramified, unramified, unramified])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        ((a - b) / b).abs() < tol
    }

    #[test]
    fn local_constants() {
        assert!(close(c_p(2), 0.9484251314, 1e-9));
        assert!(close(c_p(3), 1.0984423792, 1e-9));
        assert!(close(k_p(2), 0.7139897883, 1e-9));
        assert!(close(k_p(3), 0.8984773541, 1e-9));
        for p in primes_up_to(2000).into_iter().filter(|&p| p > 100) {
            assert!((c_p(p) - 1.0).abs() < 2.0 * pw(p, -4.0 / 3.0));
            assert!((k_p(p) - 1.0).abs() < 2.0 * pw(p, -13.0 / 9.0));
        }
    }

    #[test]
    fn weights() {
        let w = main_weights(5);
        assert_eq!(w[..4], [1.0 / 6.0, 0.5, 1.0 / 3.0, 0.2]);
        assert!(close(w[4], pw(5, -4.0 / 3.0), 1e-15));
        for p in [2, 3, 5, 7, 101] {
            let s = secondary_weights(p);
            assert!(close(s[0] + s[1] + s[2], 1.0 + pw(p, -2.0 / 3.0), 1e-15));
            let m = main_weights(p);
            assert!(close(m[0] + m[1] + m[2], 1.0, 1e-15));
        }
    }

    #[test]
    fn conditioned_factors() {
        let all7 = LocalCondition::all(7).unwrap();
        assert!(close(local_factor(&all7, Term::Main), c_p(7), 1e-15));
        let all3 = LocalCondition::all(3).unwrap();
        assert!(close(local_factor(&all3, Term::Secondary), k_p(3), 1e-12));
        assert!(close(local_factor(&LocalCondition::unramified(5).unwrap(), Term::Main), 0.8, 1e-15));
        assert!(LocalCondition::new(5, &[]).is_err());
        assert!(LocalCondition::new(6, &SplittingType::ALL).is_err());
    }

    #[test]
    fn alternate_representations() {
        assert!(close(c3_alternate(), c_p(3), 1e-14));
        for p in primes_up_to(10_000) {
            let all = LocalCondition::all(p).unwrap();
            assert!(close(local_factor(&all, Term::Main), c_p(p), 1e-14));
            assert!(close(local_factor(&all, Term::Secondary), k_p(p), 1e-12), "{p}");
            if p != 3 {
                assert!(close(k_p_theta(p), k_p(p), 1e-12), "{p}");
            }
        }
    }

    #[test]
    fn series_exponents() {
        let e = LocalSeries::main().zeta_exponents(36).unwrap();
        let nz: Vec<(usize, i64)> = e.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect();
        assert_eq!(nz[..4], [(12, 1), (18, -1), (21, -1), (24, -1)]);
        let e = LocalSeries::secondary().zeta_exponents(28).unwrap();
        assert_eq!(
            [e[13], e[15], e[18], e[19], e[22], e[24], e[26], e[27], e[28]],
            [1, -1, -1, -1, -1, 1, -1, 1, 2]
        );
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(1), 1);
    }

    #[test]
    fn zeta_kernel() {
        // prod (1 - p^{-2}) = 6 / π^2
        let s = LocalSeries { root: 1, numerator: vec![1, 0, -1], denominator: vec![1] };
        let v = accelerated_product(&s, |p| 1.0 - 1.0 / (p * p) as f64, &[], 1e-10).unwrap();
        assert!(close(v.value, 6.0 / (PI * PI), 1e-12));
    }

    #[test]
    fn products_match_high_precision_values() {
        let p = Predictor::new(1e-10).unwrap();
        assert!(close(p.main_product.value, 1.492_978_499_662_215_3, 1e-12));
        assert!(close(p.secondary_product.value, 0.643_766_079_925_980_3, 1e-12));
        assert!(p.main_product.doubling_delta < 1e-10 && p.main_product.tail_bound < 1e-10);
        assert!(close(p.cyclic_constant, 0.1585282584, 2e-9));
    }

    #[test]
    fn desk_scale_predictions() {
        let p = Predictor::new(1e-10).unwrap();
        let rounded = |x: f64, m, s| p.predict(x, &PredictionModel::new(m, s), &[]).unwrap().rounded();
        assert_eq!(rounded(1e12, Model::Strong, Sign::Positive), 756);
        assert_eq!(rounded(1e12, Model::Stronger, Sign::Positive), 709);
        assert_eq!(rounded(1e12, Model::Strong, Sign::Negative), 2979);
        assert_eq!(rounded(1e12, Model::Stronger, Sign::Negative), 2828);
        assert_eq!(rounded(1e14, Model::Strong, Sign::Negative), 14617);
        assert!(p.predict(1e5, &PredictionModel::new(Model::Strong, Sign::Negative), &[]).is_err());
    }

    #[test]
    fn conditioned_predictions() {
        let p = Predictor::new(1e-10).unwrap();
        let five = [LocalCondition::unramified(5).unwrap()];
        let full = euler_product(Term::Main, &[], 1e-10).unwrap().value;
        let cond = euler_product(Term::Main, &five, 1e-10).unwrap().value;
        assert!(close(cond, full * 0.8 / c_p(5), 1e-12));
        let twice = [LocalCondition::unramified(5).unwrap(), LocalCondition::ramified(5).unwrap()];
        assert!(p.main_coefficient(Sign::Negative, &twice).is_err());
        let pos = PredictionModel::new(Model::Strong, Sign::Positive);
        assert!(p.predict(1e12, &pos, &five).is_err());
        let q = p.mod5_prediction(1e20, Model::Strong, Sign::Negative).unwrap();
        assert_eq!(libm::round(q[0]), 122686.0);
        assert!(q[1..].iter().all(|&v| v == q[1]));
    }
}
