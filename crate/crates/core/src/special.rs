//! Riemann zeta and Gamma on the positive real axis.

use core::f64::consts::PI;

use crate::Error;

/// `B_2, B_4, ..., B_24`.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// `ζ(s)` for real `s > 0`, `s != 1`.
pub fn riemann_zeta(s: f64) -> Result<f64, Error> {
    if !(s > 0.0) || s == 1.0 || !s.is_finite() {
        return Err(Error::InvalidArgument("zeta requires a finite s > 0 with s != 1"));
    }
    if s > 1.0 {
        Ok(zeta_euler_maclaurin(s))
    } else {
        Ok(eta_borwein(s) / (1.0 - libm::exp2(1.0 - s)))
    }
}

fn zeta_euler_maclaurin(s: f64) -> f64 {
    if s > 60.0 {
        return 1.0 + libm::exp2(-s) + libm::pow(3.0, -s);
    }
    const N: f64 = 20.0;
    let mut sum = 0.0;
    for n in (1..N as u32).rev() {
        sum += libm::pow(n as f64, -s);
    }
    sum += libm::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * libm::pow(N, -s);
    // B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = libm::pow(N, -s - 1.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = k as f64 + 1.0;
        sum += b / fact * rising * npow;
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow /= N * N;
    }
    sum
}

/// Dirichlet eta function by Borwein's alternating-series acceleration.
fn eta_borwein(s: f64) -> f64 {
    const N: usize = 48;
    let n = N as f64;
    let mut d = [0.0f64; N + 1];
    let mut term = 1.0 / n;
    let mut acc = term;
    d[0] = n * acc;
    for i in 1..=N {
        let fi = i as f64;
        term *= 4.0 * (n + fi - 1.0) * (n - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d[i] = n * acc;
    }
    let dn = d[N];
    let mut sum = 0.0;
    for k in 0..N {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - dn) * libm::pow(k as f64 + 1.0, -s);
    }
    -sum / dn
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64, Error> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument("gamma requires a finite x > 0"));
    }
    let mut z = x;
    let mut shift = 0.0;
    while z < 15.0 {
        shift += libm::log(z);
        z += 1.0;
    }
    let mut series = 0.0;
    let mut zpow = z;
    let z2 = z * z;
    for (k, b) in BERNOULLI.iter().take(9).enumerate() {
        let k = k as f64 + 1.0;
        series += b / (2.0 * k * (2.0 * k - 1.0) * zpow);
        zpow *= z2;
    }
    Ok((z - 0.5) * libm::log(z) - z + 0.5 * libm::log(2.0 * PI) + series - shift)
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> Result<f64, Error> {
    if x > 0.0 && x < 15.0 {
        // Stirling at x + n, then divide back down; avoids exp of a large logarithm
        let mut z = x;
        let mut prod = 1.0;
        while z < 15.0 {
            prod *= z;
            z += 1.0;
        }
        return Ok(libm::exp(ln_gamma(z)?) / prod);
    }
    Ok(libm::exp(ln_gamma(x)?))
}

pub fn gamma_two_thirds() -> f64 {
    gamma(2.0 / 3.0).expect("positive argument")
}

pub fn zeta_one_third() -> f64 {
    riemann_zeta(1.0 / 3.0).expect("valid argument")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn zeta_closed_forms() {
        assert!(rel(riemann_zeta(2.0).unwrap(), PI * PI / 6.0) < 1e-14);
        assert!(rel(riemann_zeta(4.0).unwrap(), PI.powi(4) / 90.0) < 1e-14);
        assert!(rel(riemann_zeta(0.5).unwrap(), -1.4603545088095868) < 1e-13);
        assert!(riemann_zeta(1.0).is_err());
        assert!(riemann_zeta(0.0).is_err());
        assert!(riemann_zeta(-2.0).is_err());
    }

    #[test]
    fn zeta_four_thirds_against_partial_sums() {
        // direct sum to 10^6 plus the integral tail with the midpoint correction
        let s = 4.0 / 3.0;
        let n = 1_000_000u32;
        let mut sum = 0.0;
        for k in (1..=n).rev() {
            sum += (k as f64).powf(-s);
        }
        let tail = (n as f64).powf(1.0 - s) / (s - 1.0) - 0.5 * (n as f64).powf(-s);
        assert!(rel(riemann_zeta(s).unwrap(), sum + tail) < 1e-11);
        assert!(rel(riemann_zeta(s).unwrap(), 3.6009377504) < 1e-10);
    }

    #[test]
    fn special_values() {
        assert!(rel(zeta_one_third(), -0.9733602483507827) < 1e-12);
        assert!(rel(gamma_two_thirds(), 1.3541179394264004) < 1e-13);
        let g13 = gamma(1.0 / 3.0).unwrap();
        assert!(rel(g13 * gamma_two_thirds(), 2.0 * PI / 3f64.sqrt()) < 1e-13);
        assert!(rel(gamma(5.0 / 3.0).unwrap(), 2.0 / 3.0 * gamma_two_thirds()) < 1e-13);
        assert!(rel(gamma(5.0).unwrap(), 24.0) < 1e-14);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        for x in [0.1, 0.7, 1.9, 3.3, 12.5, 40.0] {
            assert!(rel(gamma(x).unwrap(), libm::tgamma(x)) < 1e-13, "{x}");
        }
    }
}
