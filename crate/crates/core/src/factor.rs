//! Integer factorization: trial division and a smallest-prime-factor table.

use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

/// `sign * prod p^e` with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub negative: bool,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored integer. Panics on overflow of `i128`.
    pub fn value(&self) -> i128 {
        let mag = self
            .factors
            .iter()
            .fold(1i128, |acc, &(p, e)| acc * (p as i128).pow(e));
        if self.negative {
            -mag
        } else {
            mag
        }
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Signed squarefree kernel: `sign * prod_{e odd} p`.
    pub fn squarefree_kernel(&self) -> i128 {
        let k = self
            .factors
            .iter()
            .filter(|&&(_, e)| e % 2 == 1)
            .fold(1i128, |acc, &(p, _)| acc * p as i128);
        if self.negative {
            -k
        } else {
            k
        }
    }
}

/// Prime factorization of a nonzero integer by trial division.
pub fn factorize(n: i128) -> Result<Factorization, Error> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut m = n.unsigned_abs();
    let mut factors = Vec::new();
    let mut push = |m: &mut u128, p: u128| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p as u64, e));
        }
    };
    push(&mut m, 2);
    push(&mut m, 3);
    let mut p: u128 = 5;
    while p * p <= m {
        push(&mut m, p);
        push(&mut m, p + 2);
        p += 6;
    }
    if m > 1 {
        factors.push((u64::try_from(m).map_err(|_| Error::Overflow("factorize"))?, 1));
    }
    Ok(Factorization { negative: n < 0, factors })
}

/// Smallest prime factor of every integer below a limit (at most `2^32`).
///
/// Entries are stored as `u16`; zero marks a prime, which is unambiguous because
/// a composite below `2^32` has a prime factor below `2^16`.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u16>,
}

impl SpfSieve {
    pub const MAX_LIMIT: u64 = 1 << 32;

    pub fn new(limit: u64) -> Result<Self, Error> {
        if limit > Self::MAX_LIMIT {
            return Err(Error::InvalidArgument("sieve limit exceeds 2^32"));
        }
        let n = limit as usize;
        let mut spf = vec![0u16; n];
        let mut p = 2usize;
        while p * p < n {
            if spf[p] == 0 {
                let mut m = p * p;
                while m < n {
                    if spf[m] == 0 {
                        spf[m] = p as u16;
                    }
                    m += p;
                }
            }
            p += 1;
        }
        Ok(Self { spf })
    }

    pub fn limit(&self) -> u64 {
        self.spf.len() as u64
    }

    fn smallest(&self, n: u64) -> u64 {
        match self.spf[n as usize] {
            0 => n,
            p => p as u64,
        }
    }

    /// Factorization of `n`, falling back to trial division outside the table.
    pub fn factorize(&self, n: i128) -> Result<Factorization, Error> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        let mag = n.unsigned_abs();
        if mag >= self.limit() as u128 {
            return factorize(n);
        }
        let mut m = mag as u64;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while m > 1 {
            let p = self.smallest(m);
            m /= p;
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Ok(Factorization { negative: n < 0, factors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = factorize(-23).unwrap();
        assert!(f.negative);
        assert_eq!(f.factors, vec![(23, 1)]);
        assert_eq!(factorize(148).unwrap().factors, vec![(2, 2), (37, 1)]);
        let f = factorize(-34992).unwrap();
        assert!(f.negative);
        assert_eq!(f.factors, vec![(2, 4), (3, 7)]);
        assert_eq!(f.value(), -34992);
        assert_eq!(factorize(0), Err(Error::ZeroInput));
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert_eq!(factorize(-108).unwrap().squarefree_kernel(), -3);
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let s = SpfSieve::new(20_000).unwrap();
        for n in 1..20_000i128 {
            assert_eq!(s.factorize(n).unwrap(), factorize(n).unwrap());
            assert_eq!(s.factorize(-n).unwrap(), factorize(-n).unwrap());
        }
        assert_eq!(s.factorize(1_000_003).unwrap(), factorize(1_000_003).unwrap());
    }
}
