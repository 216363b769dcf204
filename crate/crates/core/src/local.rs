//! Local invariants of cubic rings at a prime: maximality, splitting type, ramification.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{is_prime_u64, isqrt_u128, rem_euclid_i128};
use crate::factor::Factorization;
use crate::form::BinaryCubicForm;
use crate::Error;

/// Shape of the factorization of a form over `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplittingType {
    /// `(111)`
    Split,
    /// `(12)`
    Partial,
    /// `(3)`
    Inert,
    /// `(1²1)`
    PartiallyRamified,
    /// `(1³)`
    TotallyRamified,
}

impl SplittingType {
    pub const ALL: [SplittingType; 5] = [
        SplittingType::Split,
        SplittingType::Partial,
        SplittingType::Inert,
        SplittingType::PartiallyRamified,
        SplittingType::TotallyRamified,
    ];

    /// Degrees of the irreducible factors, with multiplicity.
    pub fn degrees(self) -> &'static [u32] {
        match self {
            SplittingType::Split => &[1, 1, 1],
            SplittingType::Partial => &[1, 2],
            SplittingType::Inert => &[3],
            SplittingType::PartiallyRamified => &[1, 1, 1],
            SplittingType::TotallyRamified => &[1, 1, 1],
        }
    }

    pub fn is_ramified(self) -> bool {
        matches!(self, SplittingType::PartiallyRamified | SplittingType::TotallyRamified)
    }

    pub fn label(self) -> &'static str {
        match self {
            SplittingType::Split => "(111)",
            SplittingType::Partial => "(12)",
            SplittingType::Inert => "(3)",
            SplittingType::PartiallyRamified => "(1^21)",
            SplittingType::TotallyRamified => "(1^3)",
        }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A prime dividing a field discriminant, with its exponent and whether it is totally ramified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RamifiedPrime {
    pub p: u64,
    pub e: u32,
    pub total: bool,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn addmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn coeffs_mod(f: &BinaryCubicForm, m: u64) -> [u64; 4] {
    f.coeffs().map(|x| rem_euclid_i128(x as i128, m))
}

/// `f(x, y) mod m` for reduced coefficients.
fn eval_mod(cs: &[u64; 4], x: u64, y: u64, m: u64) -> u64 {
    let (x, y) = (x % m, y % m);
    let x2 = mulmod(x, x, m);
    let y2 = mulmod(y, y, m);
    let t0 = mulmod(cs[0], mulmod(x2, x, m), m);
    let t1 = mulmod(cs[1], mulmod(x2, y, m), m);
    let t2 = mulmod(cs[2], mulmod(x, y2, m), m);
    let t3 = mulmod(cs[3], mulmod(y2, y, m), m);
    addmod(addmod(t0, t1, m), addmod(t2, t3, m), m)
}

/// Both partial derivatives vanish at `(x, y)` mod `p`.
fn is_singular_point(cs: &[u64; 4], x: u64, y: u64, p: u64) -> bool {
    let [a, b, c, d] = *cs;
    let (xx, xy, yy) = (mulmod(x, x, p), mulmod(x, y, p), mulmod(y, y, p));
    let fu = addmod(
        addmod(mulmod(3 * (a % p) % p, xx, p), mulmod(2 * b % p, xy, p), p),
        mulmod(c, yy, p),
        p,
    );
    let fv = addmod(
        addmod(mulmod(b, xx, p), mulmod(2 * c % p, xy, p), p),
        mulmod(3 * (d % p) % p, yy, p),
        p,
    );
    fu == 0 && fv == 0
}

const BRUTE_FORCE_PRIME: u64 = 64;

/// A point of `P^1(F_p)` where the form (nonzero mod `p`) has a root of multiplicity at least 2.
fn multiple_root(cs: &[u64; 4], p: u64) -> Option<(u64, u64)> {
    let is_multiple = |x: u64, y: u64| eval_mod(cs, x, y, p) == 0 && is_singular_point(cs, x, y, p);
    if p < BRUTE_FORCE_PRIME {
        return (0..p).map(|x| (x, 1)).chain(core::iter::once((1, 0))).find(|&(x, y)| is_multiple(x, y));
    }
    // for p >= 5 the Hessian of l^2 m is a multiple of l^2, and vanishes for l^3
    let [a, b, c, d] = *cs;
    let sub = |x: u64, y: u64| (x + p - y) % p;
    let hp = sub(mulmod(b, b, p), mulmod(3, mulmod(a, c, p), p));
    let hq = sub(mulmod(b, c, p), mulmod(9, mulmod(a, d, p), p));
    let hr = sub(mulmod(c, c, p), mulmod(3, mulmod(b, d, p), p));
    let candidate = if hp != 0 {
        (mulmod(p - hq, invmod(mulmod(2, hp, p), p), p), 1)
    } else if hr != 0 {
        (1, 0)
    } else if a != 0 {
        (mulmod(p - b, invmod(mulmod(3, a, p), p), p), 1)
    } else {
        (1, 0)
    };
    is_multiple(candidate.0, candidate.1).then_some(candidate)
}

fn check_prime(p: u64) -> Result<(), Error> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Nonmaximality at `p` for a form with nonzero discriminant and a prime `p`.
fn maximal_at_unchecked(f: &BinaryCubicForm, disc: i128, p: u64) -> bool {
    let cs = coeffs_mod(f, p);
    if cs == [0; 4] {
        return false;
    }
    let p2 = p as u128 * p as u128;
    if !disc.unsigned_abs().is_multiple_of(p2) {
        return true;
    }
    match multiple_root(&cs, p) {
        None => true,
        Some((x, y)) => {
            // the value at the multiple root mod p^2 does not depend on the lift
            let m = u64::try_from(p2).expect("prime below 2^32");
            let big = coeffs_mod(f, m);
            eval_mod(&big, x, y, m) != 0
        }
    }
}

/// Whether the cubic ring of `f` is maximal at the prime `p`.
pub fn is_maximal_at(f: &BinaryCubicForm, p: u64) -> Result<bool, Error> {
    check_prime(p)?;
    if p >= 1 << 32 {
        return Err(Error::InvalidArgument("prime must be below 2^32"));
    }
    let disc = f.try_discriminant().ok_or(Error::Overflow("discriminant"))?;
    if disc == 0 {
        return Err(Error::Degenerate);
    }
    Ok(maximal_at_unchecked(f, disc, p))
}

/// Maximality everywhere, given the factorization of the discriminant.
pub fn is_maximal(f: &BinaryCubicForm, disc: &Factorization) -> Result<bool, Error> {
    let d = f.try_discriminant().ok_or(Error::Overflow("discriminant"))?;
    if d == 0 {
        return Err(Error::Degenerate);
    }
    if disc.value() != d {
        return Err(Error::InvalidArgument("factorization does not match the discriminant"));
    }
    Ok(maximal_given_disc(f, d, disc))
}

pub(crate) fn maximal_given_disc(f: &BinaryCubicForm, d: i128, fac: &Factorization) -> bool {
    fac.factors.iter().all(|&(p, e)| e < 2 || maximal_at_unchecked(f, d, p))
}

/// Degree of `gcd(g, x^p - x)` for a polynomial over `F_p`, i.e. its number of distinct roots.
fn distinct_root_count(g: &[u64], p: u64) -> usize {
    let mut g: Vec<u64> = g.to_vec();
    while g.last() == Some(&0) {
        g.pop();
    }
    let n = g.len().saturating_sub(1);
    if n == 0 {
        return 0;
    }
    let inv = invmod(g[n], p);
    let g: Vec<u64> = g.iter().map(|&c| mulmod(c, inv, p)).collect();
    // multiply two residues modulo the monic g
    let mul = |u: &[u64], v: &[u64]| -> Vec<u64> {
        let mut prod = vec![0u64; 2 * n];
        for (i, &ui) in u.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                prod[i + j] = addmod(prod[i + j], mulmod(ui, vj, p), p);
            }
        }
        for k in (n..2 * n).rev() {
            let t = prod[k];
            if t != 0 {
                for i in 0..n {
                    prod[k - n + i] = (prod[k - n + i] + p - mulmod(t, g[i], p)) % p;
                }
                prod[k] = 0;
            }
        }
        prod.truncate(n);
        prod
    };
    let mut base = vec![0u64; n];
    if n == 1 {
        base[0] = (p - g[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut acc = vec![0u64; n];
    acc[0] = 1;
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    // acc = x^p mod g; subtract x
    if n == 1 {
        acc[0] = (acc[0] + g[0]) % p;
    } else {
        acc[1] = (acc[1] + p - 1) % p;
    }
    poly_gcd_degree(g, acc, p)
}

fn poly_gcd_degree(mut u: Vec<u64>, mut v: Vec<u64>, p: u64) -> usize {
    let trim = |w: &mut Vec<u64>| {
        while w.last() == Some(&0) {
            w.pop();
        }
    };
    trim(&mut u);
    trim(&mut v);
    while !v.is_empty() {
        // u mod v
        let inv = invmod(*v.last().expect("nonempty"), p);
        while u.len() >= v.len() {
            let t = mulmod(*u.last().expect("nonempty"), inv, p);
            let shift = u.len() - v.len();
            for (i, &vi) in v.iter().enumerate() {
                u[shift + i] = (u[shift + i] + p - mulmod(t, vi, p)) % p;
            }
            trim(&mut u);
            if u.is_empty() {
                break;
            }
        }
        core::mem::swap(&mut u, &mut v);
    }
    u.len().saturating_sub(1)
}

/// Number of distinct roots in `P^1(F_p)` of a form that is nonzero mod `p`.
fn projective_root_count(cs: &[u64; 4], p: u64) -> usize {
    if p < BRUTE_FORCE_PRIME {
        return (0..p).filter(|&x| eval_mod(cs, x, 1, p) == 0).count() + usize::from(cs[0] == 0);
    }
    // f(x, 1) = a x^3 + b x^2 + c x + d, with (1:0) a root iff a = 0
    let finite = distinct_root_count(&[cs[3], cs[2], cs[1], cs[0]], p);
    finite + usize::from(cs[0] == 0)
}

/// Triple root of `f` mod `p`, for a form nonzero mod `p` with `p | Disc(f)`.
fn has_triple_root(cs: &[u64; 4], p: u64) -> bool {
    if p == 2 {
        return matches!(cs, [1, 1, 1, 1] | [1, 0, 0, 0] | [0, 0, 0, 1]);
    }
    let [a, b, c, d] = cs.map(|x| x as u128);
    let p = p as u128;
    (b * b + 3 * (p - 1) * a % p * c).is_multiple_of(p)
        && (b * c + 9 * (p - 1) * a % p * d).is_multiple_of(p)
        && (c * c + 3 * (p - 1) * b % p * d).is_multiple_of(p)
}

fn splitting_type_unchecked(f: &BinaryCubicForm, disc: i128, p: u64) -> SplittingType {
    let cs = coeffs_mod(f, p);
    if rem_euclid_i128(disc, p) == 0 {
        if has_triple_root(&cs, p) {
            SplittingType::TotallyRamified
        } else {
            SplittingType::PartiallyRamified
        }
    } else {
        match projective_root_count(&cs, p) {
            3 => SplittingType::Split,
            1 => SplittingType::Partial,
            0 => SplittingType::Inert,
            n => unreachable!("squarefree cubic with {n} roots"),
        }
    }
}

/// Factorization shape of `f` mod `p`; `f` must be maximal at `p`.
pub fn splitting_type(f: &BinaryCubicForm, p: u64) -> Result<SplittingType, Error> {
    if !is_maximal_at(f, p)? {
        return Err(Error::NotMaximalAt(p));
    }
    Ok(splitting_type_unchecked(f, f.discriminant(), p))
}

/// Factorization shape of `f` mod `p` without any maximality requirement.
pub fn splitting_shape(f: &BinaryCubicForm, p: u64) -> Result<SplittingType, Error> {
    check_prime(p)?;
    let disc = f.try_discriminant().ok_or(Error::Overflow("discriminant"))?;
    if disc == 0 {
        return Err(Error::Degenerate);
    }
    if coeffs_mod(f, p) == [0; 4] {
        return Err(Error::NotMaximalAt(p));
    }
    Ok(splitting_type_unchecked(f, disc, p))
}

pub fn is_totally_ramified(f: &BinaryCubicForm, p: u64) -> Result<bool, Error> {
    Ok(splitting_type(f, p)? == SplittingType::TotallyRamified)
}

/// Ramified primes of a maximal form with their exponents and total-ramification flags.
pub fn ramification_profile(f: &BinaryCubicForm, disc: &Factorization) -> Vec<RamifiedPrime> {
    let d = disc.value();
    disc.factors
        .iter()
        .map(|&(p, e)| RamifiedPrime {
            p,
            e,
            total: splitting_type_unchecked(f, d, p) == SplittingType::TotallyRamified,
        })
        .collect()
}

/// A cubic field is cyclic iff its discriminant is a positive square.
pub fn is_cyclic(disc_k: i128) -> bool {
    if disc_k <= 0 {
        return false;
    }
    let r = isqrt_u128(disc_k as u128);
    r * r == disc_k as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use crate::factor::factorize;

    const F23: BinaryCubicForm = BinaryCubicForm::new(1, 0, -1, -1);

    #[test]
    fn maximality_examples() {
        for p in [2, 3, 5, 23, 101] {
            assert!(is_maximal_at(&F23, p).unwrap());
        }
        assert!(!is_maximal_at(&BinaryCubicForm::new(1, 0, 0, -4), 2).unwrap());
        assert!(is_maximal_at(&BinaryCubicForm::new(1, 0, 0, -2), 2).unwrap());
        assert_eq!(is_maximal_at(&F23, 4), Err(Error::NotPrime(4)));
        let fac = |f: &BinaryCubicForm| factorize(f.discriminant()).unwrap();
        assert!(is_maximal(&F23, &fac(&F23)).unwrap());
        let f = BinaryCubicForm::new(2, 0, -2, -2);
        assert!(!is_maximal(&f, &fac(&f)).unwrap());
        let f = BinaryCubicForm::new(1, 0, 0, -4);
        assert!(!is_maximal(&f, &fac(&f)).unwrap());
        assert!(is_maximal(&F23, &fac(&BinaryCubicForm::new(1, 0, 0, -2))).is_err());
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_type(&F23, 5).unwrap(), SplittingType::Partial);
        // v (u + v)^2 mod 2; the form itself is reducible and not maximal at 2
        let f = BinaryCubicForm::new(2, 1, 0, 1);
        assert_eq!(splitting_shape(&f, 2).unwrap(), SplittingType::PartiallyRamified);
        assert_eq!(splitting_type(&f, 2), Err(Error::NotMaximalAt(2)));
        assert_eq!(splitting_shape(&BinaryCubicForm::new(1, 1, 1, 1), 2).unwrap(), SplittingType::TotallyRamified);
        assert_eq!(splitting_shape(&BinaryCubicForm::new(1, 1, 2, 2), 2).unwrap(), SplittingType::PartiallyRamified);
        assert!(is_totally_ramified(&BinaryCubicForm::new(1, 0, 0, -2), 2).unwrap());
        assert!(matches!(
            splitting_type(&BinaryCubicForm::new(1, 0, 0, -4), 2),
            Err(Error::NotMaximalAt(2))
        ));
        // x^3 - x - 1 mod 23 = (x - 3)(x - 10)^2
        assert_eq!(splitting_type(&F23, 23).unwrap(), SplittingType::PartiallyRamified);
    }

    #[test]
    fn triple_root_mod_two_is_the_cube_set() {
        for bits in 1u64..16 {
            let cs = [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1];
            let cubes = [[1, 0, 0, 0], [0, 0, 0, 1], [1, 1, 1, 1]];
            let disc_even = {
                let f = BinaryCubicForm::new(cs[0] as i64, cs[1] as i64, cs[2] as i64, cs[3] as i64);
                f.discriminant().rem_euclid(2) == 0
            };
            if disc_even {
                assert_eq!(has_triple_root(&cs, 2), cubes.contains(&cs), "{cs:?}");
            }
        }
    }

    #[test]
    fn hessian_route_matches_brute_force() {
        // compare the large-prime code paths with direct search on mid-size primes
        let forms = [
            BinaryCubicForm::new(1, 0, -1, -1),
            BinaryCubicForm::new(3, -7, 2, 11),
            BinaryCubicForm::new(0, 5, -3, 8),
            BinaryCubicForm::new(4, 4, 1, 9),
        ];
        for p in primes_up_to(400).into_iter().filter(|&p| p >= 5) {
            for f in &forms {
                let cs = coeffs_mod(f, p);
                let brute_roots = (0..p).filter(|&x| eval_mod(&cs, x, 1, p) == 0).count()
                    + usize::from(cs[0] == 0);
                let disc = f.discriminant();
                if rem_euclid_i128(disc, p) != 0 {
                    let finite = distinct_root_count(&[cs[3], cs[2], cs[1], cs[0]], p);
                    assert_eq!(finite + usize::from(cs[0] == 0), brute_roots, "{f:?} mod {p}");
                }
            }
        }
        for p in primes_up_to(300).into_iter().filter(|&p| p >= BRUTE_FORCE_PRIME) {
            // f = (u - r v)^2 (u - s v) mod p, and f = (u - r v)^3
            for (r, s) in [(3u64, 7u64), (0, 1), (5, 5), (p - 1, 2)] {
                let cs = [1, (p * 2 - 2 * r % p - s) % p, (mulmod(r, r, p) + mulmod(2 * r % p, s, p)) % p, (p - mulmod(mulmod(r, r, p), s, p)) % p];
                let root = multiple_root(&cs, p).expect("multiple root");
                assert_eq!(root, (r % p, 1));
                let brute = (0..p).find(|&x| eval_mod(&cs, x, 1, p) == 0 && is_singular_point(&cs, x, 1, p));
                assert_eq!(brute, Some(r));
            }
        }
    }

    #[test]
    fn cyclic_examples() {
        assert!(is_cyclic(49));
        assert!(!is_cyclic(-23));
        assert!(!is_cyclic(148));
        assert!(is_cyclic(81));
    }

    #[test]
    fn profile_of_pure_cubic() {
        let f = BinaryCubicForm::new(1, 0, 0, -2);
        let prof = ramification_profile(&f, &factorize(f.discriminant()).unwrap());
        assert_eq!(
            prof,
            vec![RamifiedPrime { p: 2, e: 2, total: true }, RamifiedPrime { p: 3, e: 3, total: true }]
        );
    }
}
