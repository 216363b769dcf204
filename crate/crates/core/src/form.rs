//! Integral binary cubic forms `a u^3 + b u^2 v + c u v^2 + d v^3`.
//!
//! `GL_2(Z)` acts on the right: a matrix `g = [[g11, g12], [g21, g22]]` sends `f` to
//! `f'(u, v) = f((u, v) g) = f(g11 u + g21 v, g12 u + g22 v)`. Under this convention
//! `apply(h, apply(g, f)) == apply(h * g, f)`, and the roots `x = u / v` of `f'`
//! are the images of the roots of `f` under the Möbius map of `g^{-1}`.
//!
//! Canonical orbit representatives:
//!
//! * `Disc > 0`: the Hessian is positive definite. A form is *reduced* when its
//!   Hessian `(P, Q, R)` satisfies `|Q| <= P <= R` and `a > 0`. Every reduced form of
//!   an orbit is reached from any other by a matrix with entries in `{-1, 0, 1}`, and
//!   the canonical representative is the lexicographically smallest reduced form.
//! * `Disc < 0`: the form has one real root `θ` and a pair of complex roots; let `α`
//!   be the one in the upper half plane. A form is reduced when `a > 0` and `α` lies
//!   in `{0 < Re α < 1/2, |α| > 1}`, which in integers reads
//!   `bc < ad < (a+b)(a+b+c)` and `d^2 - bd + ac - a^2 > 0`. Equality in any of these
//!   forces a rational root, so irreducible forms have exactly one reduced
//!   representative.

use core::cmp::Ordering;

use crate::arith::{div_floor, divisors, gcd_u64};
use crate::Error;

/// `a u^3 + b u^2 v + c u v^2 + d v^3`. Ordering is lexicographic on `(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryCubicForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// The quadratic covariant `P u^2 + Q uv + R v^2` with
/// `P = b^2 - 3ac`, `Q = bc - 9ad`, `R = c^2 - 3bd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HessianForm {
    pub p: i128,
    pub q: i128,
    pub r: i128,
}

impl HessianForm {
    pub fn discriminant(&self) -> i128 {
        self.q * self.q - 4 * self.p * self.r
    }

    /// `|Q| <= P <= R`.
    pub fn is_reduced(&self) -> bool {
        self.q.abs() <= self.p && self.p <= self.r
    }
}

/// A 2x2 integer matrix of determinant ±1, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    m: [[i64; 2]; 2],
}

impl UnimodularMap {
    pub fn new(m: [[i64; 2]; 2]) -> Result<Self, Error> {
        let det = (m[0][0] as i128) * (m[1][1] as i128) - (m[0][1] as i128) * (m[1][0] as i128);
        if det == 1 || det == -1 {
            Ok(Self { m })
        } else {
            Err(Error::NotUnimodular(m))
        }
    }

    pub const fn identity() -> Self {
        Self { m: [[1, 0], [0, 1]] }
    }

    /// `u <-> v`.
    pub const fn swap() -> Self {
        Self { m: [[0, 1], [1, 0]] }
    }

    /// `u -> u + k v`.
    pub const fn translation(k: i64) -> Self {
        Self { m: [[1, 0], [k, 1]] }
    }

    /// `v -> -v`.
    pub const fn reflection() -> Self {
        Self { m: [[1, 0], [0, -1]] }
    }

    /// `(u, v) -> (v, -u)`; maps roots `x` to `-1/x`.
    pub const fn inversion() -> Self {
        Self { m: [[0, -1], [1, 0]] }
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Matrix product `self * other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let a = &self.m;
        let b = &other.m;
        let e = |i: usize, j: usize| -> Option<i64> {
            a[i][0].checked_mul(b[0][j])?.checked_add(a[i][1].checked_mul(b[1][j])?)
        };
        Some(Self { m: [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]] })
    }
}

fn narrow(x: i128) -> Result<i64, Error> {
    i64::try_from(x).map_err(|_| Error::Overflow("form coefficient"))
}

impl BinaryCubicForm {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn coeffs(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs() == [0; 4]
    }

    /// `18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2`, or `None` if it does not fit in `i128`.
    pub fn try_discriminant(&self) -> Option<i128> {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let t1 = a.checked_mul(b)?.checked_mul(c)?.checked_mul(d)?.checked_mul(18)?;
        let t2 = b.checked_mul(b)?.checked_mul(b)?.checked_mul(d)?.checked_mul(4)?;
        let t3 = b.checked_mul(c)?.checked_pow(2)?;
        let t4 = a.checked_mul(c)?.checked_mul(c)?.checked_mul(c)?.checked_mul(4)?;
        let t5 = a.checked_mul(d)?.checked_pow(2)?.checked_mul(27)?;
        t1.checked_sub(t2)?.checked_add(t3)?.checked_sub(t4)?.checked_sub(t5)
    }

    /// Exact discriminant. Coefficients below `2^29` in absolute value never overflow.
    ///
    /// # Panics
    /// If the discriminant does not fit in an `i128`.
    pub fn discriminant(&self) -> i128 {
        self.try_discriminant().expect("cubic form discriminant overflows i128")
    }

    pub fn hessian(&self) -> HessianForm {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        HessianForm { p: b * b - 3 * a * c, q: b * c - 9 * a * d, r: c * c - 3 * b * d }
    }

    /// `f(x, y)` with overflow checking.
    pub fn eval(&self, x: i128, y: i128) -> Option<i128> {
        let x2 = x.checked_mul(x)?;
        let y2 = y.checked_mul(y)?;
        let t0 = (self.a as i128).checked_mul(x2.checked_mul(x)?)?;
        let t1 = (self.b as i128).checked_mul(x2.checked_mul(y)?)?;
        let t2 = (self.c as i128).checked_mul(x.checked_mul(y2)?)?;
        let t3 = (self.d as i128).checked_mul(y2.checked_mul(y)?)?;
        t0.checked_add(t1)?.checked_add(t2)?.checked_add(t3)
    }

    /// gcd of the four coefficients.
    pub fn content(&self) -> Result<u64, Error> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(self.coeffs().iter().fold(0u64, |g, &x| gcd_u64(g, x.unsigned_abs())))
    }

    /// The transformed form `f((u, v) g)`.
    pub fn apply(&self, g: &UnimodularMap) -> Result<Self, Error> {
        let [[al, be], [ga, de]] = g.m.map(|row| row.map(|x| x as i128));
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let ovf = || Error::Overflow("apply");
        let a2 = self.eval(al, be).ok_or_else(ovf)?;
        let d2 = self.eval(ga, de).ok_or_else(ovf)?;
        let mid = |x: i128, y: i128, z: i128, w: i128| -> Option<i128> {
            // coefficient of u^2 v in f(x u + z v, y u + w v)
            let s0 = a.checked_mul(3)?.checked_mul(x)?.checked_mul(x)?.checked_mul(z)?;
            let s1 = b.checked_mul(x.checked_mul(x)?.checked_mul(w)?.checked_add(
                x.checked_mul(y)?.checked_mul(z)?.checked_mul(2)?,
            )?)?;
            let s2 = c.checked_mul(y.checked_mul(y)?.checked_mul(z)?.checked_add(
                x.checked_mul(y)?.checked_mul(w)?.checked_mul(2)?,
            )?)?;
            let s3 = d.checked_mul(3)?.checked_mul(y)?.checked_mul(y)?.checked_mul(w)?;
            s0.checked_add(s1)?.checked_add(s2)?.checked_add(s3)
        };
        let b2 = mid(al, be, ga, de).ok_or_else(ovf)?;
        // the u v^2 coefficient is the u^2 v coefficient of the form with u and v exchanged
        let c2 = mid(ga, de, al, be).ok_or_else(ovf)?;
        Ok(Self::new(narrow(a2)?, narrow(b2)?, narrow(c2)?, narrow(d2)?))
    }

    pub fn negate(&self) -> Result<Self, Error> {
        let n = |x: i64| x.checked_neg().ok_or(Error::Overflow("negate"));
        Ok(Self::new(n(self.a)?, n(self.b)?, n(self.c)?, n(self.d)?))
    }

    /// True iff `f` has no linear factor over `Q`.
    pub fn is_irreducible(&self) -> Result<bool, Error> {
        let disc = self.try_discriminant().ok_or(Error::Overflow("discriminant"))?;
        if disc == 0 {
            return Err(Error::Degenerate);
        }
        Ok(!self.has_rational_root())
    }

    /// Rational-root search over divisors of the outer coefficients.
    pub(crate) fn has_rational_root(&self) -> bool {
        if self.a == 0 || self.d == 0 {
            return true;
        }
        let qs = divisors(self.a.unsigned_abs());
        let ps = divisors(self.d.unsigned_abs());
        qs.iter().any(|&q| {
            ps.iter().any(|&p| {
                let (p, q) = (p as i128, q as i128);
                self.eval(p, q) == Some(0) || self.eval(-p, q) == Some(0)
            })
        })
    }

    /// The canonical representative of the `GL_2(Z)`-orbit (see the module docs).
    pub fn canonical_reduce(&self) -> Result<Self, Error> {
        let disc = self.try_discriminant().ok_or(Error::Overflow("discriminant"))?;
        if disc == 0 {
            return Err(Error::Degenerate);
        }
        if self.has_rational_root() {
            return Err(Error::Reducible);
        }
        if disc > 0 {
            let reduced = reduce_positive(*self)?;
            Ok(min_reduced_positive(&reduced))
        } else {
            reduce_negative(*self)
        }
    }

    /// Same `GL_2(Z)`-orbit.
    pub fn is_equivalent(&self, other: &Self) -> Result<bool, Error> {
        if self.discriminant() != other.discriminant() {
            // validate the inputs even when the answer is already known
            self.canonical_reduce()?;
            other.canonical_reduce()?;
            return Ok(false);
        }
        Ok(self.canonical_reduce()? == other.canonical_reduce()?)
    }

    /// `u -> u + k v`.
    pub(crate) fn translate(&self, k: i64) -> Result<Self, Error> {
        self.apply(&UnimodularMap::translation(k))
    }

    /// Whether a negative-discriminant form with `a > 0` satisfies the reduction conditions.
    pub(crate) fn is_reduced_negative(&self) -> bool {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        a > 0 && b * c < a * d && a * d < (a + b) * (a + b + c) && d * d - b * d + a * c - a * a > 0
    }
}

/// The matrices with entries in `{-1, 0, 1}` and determinant ±1.
pub(crate) fn small_unimodular_maps() -> impl Iterator<Item = UnimodularMap> {
    (0..81).filter_map(|i: i64| {
        let e = |k: u32| (i / 3i64.pow(k)) % 3 - 1;
        UnimodularMap::new([[e(0), e(1)], [e(2), e(3)]]).ok()
    })
}

/// Gauss reduction of the (positive definite) Hessian, carried along on the form.
fn reduce_positive(mut f: BinaryCubicForm) -> Result<BinaryCubicForm, Error> {
    loop {
        let h = f.hessian();
        debug_assert!(h.p > 0 && h.r > 0);
        // the translation by k moves Q to Q + 2kP; pick k so that -P < Q + 2kP <= P
        let k = div_floor(h.p - h.q, 2 * h.p);
        if k != 0 {
            f = f.translate(i64::try_from(k).map_err(|_| Error::Overflow("reduce"))?)?;
            continue;
        }
        if h.r < h.p {
            f = f.apply(&UnimodularMap::inversion())?;
            continue;
        }
        if f.a < 0 {
            f = f.negate()?;
        }
        return Ok(f);
    }
}

/// Lexicographically smallest form with `a > 0` and reduced Hessian among
/// the images of an already reduced positive-discriminant form.
pub(crate) fn min_reduced_positive(f: &BinaryCubicForm) -> BinaryCubicForm {
    small_unimodular_maps()
        .filter_map(|g| f.apply(&g).ok())
        .filter(|g| g.a > 0 && g.hessian().is_reduced())
        .min()
        .expect("a reduced form is among its own images")
}

/// Where the real root `θ` of `f(x, 1)` sits relative to `p / q` (`q > 0`, `a > 0`,
/// negative discriminant): `Less` means `θ < p/q`.
fn cmp_real_root(f: &BinaryCubicForm, p: i128, q: i128) -> Result<Ordering, Error> {
    let v = f.eval(p, q).ok_or(Error::Overflow("root comparison"))?;
    // f(x, 1) / a is negative left of θ and positive right of it
    Ok(0.cmp(&v))
}

/// `Re α > m / 2`, where `Re α = (-b/a - θ) / 2`.
fn re_alpha_exceeds_half_integer(f: &BinaryCubicForm, m: i128) -> Result<bool, Error> {
    let a = f.a as i128;
    let p = -(f.b as i128 + m * a);
    Ok(cmp_real_root(f, p, a)? == Ordering::Less)
}

fn real_root_estimate(f: &BinaryCubicForm) -> f64 {
    let a = f.a as f64;
    let (b, c, d) = (f.b as f64 / a, f.c as f64 / a, f.d as f64 / a);
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = q * q / 4.0 + p * p * p / 27.0;
    let s = libm::sqrt(libm::fmax(disc, 0.0));
    let mut x = libm::cbrt(-q / 2.0 + s) + libm::cbrt(-q / 2.0 - s) - b / 3.0;
    for _ in 0..3 {
        let fx = ((x + b) * x + c) * x + d;
        let dfx = (3.0 * x + 2.0 * b) * x + c;
        if dfx == 0.0 || !dfx.is_finite() {
            break;
        }
        x -= fx / dfx;
    }
    x
}

/// Reduction of an irreducible form with negative discriminant.
fn reduce_negative(mut f: BinaryCubicForm) -> Result<BinaryCubicForm, Error> {
    loop {
        if f.a < 0 {
            f = f.negate()?;
        }
        // translate so that -1/2 < Re α < 1/2: find the smallest k with Re α < k + 1/2
        let guess = (-(f.b as f64) / (f.a as f64) - real_root_estimate(&f)) / 2.0;
        let mut k: i128 = if guess.is_finite() && libm::fabs(guess) < 1e15 {
            libm::round(guess) as i128
        } else {
            0
        };
        let above = |k: i128| re_alpha_exceeds_half_integer(&f, 2 * k + 1);
        if above(k)? {
            let mut step = 1;
            while above(k + step)? {
                step *= 2;
            }
            let (mut lo, mut hi) = (k + step / 2, k + step);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if above(mid)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            k = hi;
        } else {
            let mut step = 1;
            while !above(k - step)? {
                step *= 2;
            }
            let (mut lo, mut hi) = (k - step, k - step / 2);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if above(mid)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            k = hi;
        }
        if k != 0 {
            f = f.translate(i64::try_from(k).map_err(|_| Error::Overflow("reduce"))?)?;
        }
        // Re α is now in (-1/2, 1/2) and never 0
        if !re_alpha_exceeds_half_integer(&f, 0)? {
            f = f.apply(&UnimodularMap::reflection())?;
        }
        if f.is_reduced_negative() {
            return Ok(f);
        }
        f = f.apply(&UnimodularMap::inversion())?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    const F23: BinaryCubicForm = BinaryCubicForm::new(1, 0, -1, -1);

    /// `Res(g, g') / lead(g)` for `g = f(x, 1)`, computed from the Sylvester matrix.
    fn resultant_oracle(f: &BinaryCubicForm) -> i128 {
        let (a, b, c, d) = (f.a as i128, f.b as i128, f.c as i128, f.d as i128);
        let rows: [[i128; 5]; 5] = [
            [a, b, c, d, 0],
            [0, a, b, c, d],
            [3 * a, 2 * b, c, 0, 0],
            [0, 3 * a, 2 * b, c, 0],
            [0, 0, 3 * a, 2 * b, c],
        ];
        fn det(m: &[Vec<i128>]) -> i128 {
            if m.len() == 1 {
                return m[0][0];
            }
            let mut total = 0;
            for col in 0..m.len() {
                if m[0][col] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, &x)| x).collect())
                    .collect();
                let s = if col % 2 == 0 { 1 } else { -1 };
                total += s * m[0][col] * det(&minor);
            }
            total
        }
        let m: Vec<Vec<i128>> = rows.iter().map(|r| r.to_vec()).collect();
        // disc = (-1)^{n(n-1)/2} Res(g, g') / a with n = 3
        -det(&m) / a
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(F23.discriminant(), -23);
        assert_eq!(resultant_oracle(&F23), -23);
        assert_eq!(BinaryCubicForm::new(1, 0, 0, 0).discriminant(), 0);
        let f49 = BinaryCubicForm::new(1, -1, -2, 1);
        assert_eq!(f49.discriminant(), 49);
        assert_eq!(resultant_oracle(&f49), 49);
        for f in [BinaryCubicForm::new(2, -3, 5, 7), BinaryCubicForm::new(-4, 1, 0, 9)] {
            assert_eq!(f.discriminant(), resultant_oracle(&f));
        }
    }

    #[test]
    fn hessian_examples() {
        let h = F23.hessian();
        assert_eq!((h.p, h.q, h.r), (3, 9, 1));
        assert_eq!(h.discriminant(), -3 * F23.discriminant());
        let h = BinaryCubicForm::new(1, 0, 0, 0).hessian();
        assert_eq!((h.p, h.q, h.r), (0, 0, 0));
        let f = BinaryCubicForm::new(1, 0, -3, 1);
        let h = f.hessian();
        assert_eq!((h.p, h.q, h.r), (9, -9, 9));
        assert_eq!(h.discriminant(), -3 * 81);
    }

    #[test]
    fn apply_examples() {
        assert_eq!(F23.apply(&UnimodularMap::identity()).unwrap(), F23);
        assert_eq!(F23.apply(&UnimodularMap::swap()).unwrap(), BinaryCubicForm::new(-1, -1, 0, 1));
        assert!(matches!(UnimodularMap::new([[2, 0], [0, 1]]), Err(Error::NotUnimodular(_))));
        // translation u -> u + v on u^3: (u + v)^3
        let cube = BinaryCubicForm::new(1, 0, 0, 0);
        assert_eq!(cube.translate(1).unwrap(), BinaryCubicForm::new(1, 3, 3, 1));
    }

    #[test]
    fn apply_is_an_action() {
        let g = UnimodularMap::new([[2, 1], [1, 1]]).unwrap();
        let h = UnimodularMap::new([[0, 1], [-1, 3]]).unwrap();
        let f = BinaryCubicForm::new(3, -1, 4, 2);
        let lhs = f.apply(&g).unwrap().apply(&h).unwrap();
        let rhs = f.apply(&h.checked_mul(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn content_examples() {
        assert_eq!(BinaryCubicForm::new(2, 0, -2, -2).content().unwrap(), 2);
        assert_eq!(F23.content().unwrap(), 1);
        assert_eq!(BinaryCubicForm::new(6, 9, 3, 12).content().unwrap(), 3);
        assert_eq!(BinaryCubicForm::new(0, 0, 0, 0).content(), Err(Error::ZeroForm));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(F23.is_irreducible().unwrap());
        assert!(!BinaryCubicForm::new(1, 1, 1, 1).is_irreducible().unwrap());
        assert!(!BinaryCubicForm::new(0, 1, 1, 1).is_irreducible().unwrap());
        assert_eq!(BinaryCubicForm::new(1, 0, 0, 0).is_irreducible(), Err(Error::Degenerate));
        // (2u - 3v)(u^2 + v^2) has the non-integral root 3/2
        assert!(!BinaryCubicForm::new(2, -3, 2, -3).is_irreducible().unwrap());
    }

    #[test]
    fn canonical_forms_are_fixed_points() {
        let c = F23.canonical_reduce().unwrap();
        assert_eq!(c.discriminant(), -23);
        assert_eq!(c.canonical_reduce().unwrap(), c);
        let c = BinaryCubicForm::new(1, -1, -2, 1).canonical_reduce().unwrap();
        assert_eq!(c.discriminant(), 49);
        assert!(c.hessian().is_reduced());
        assert_eq!(c.canonical_reduce().unwrap(), c);
        assert_eq!(BinaryCubicForm::new(1, 1, 1, 1).canonical_reduce(), Err(Error::Reducible));
    }

    #[test]
    fn small_map_count() {
        // the matrices over {-1,0,1} with det ±1
        assert_eq!(small_unimodular_maps().count(), 40);
    }

    #[test]
    fn equivalence_examples() {
        let g = UnimodularMap::new([[5, 2], [2, 1]]).unwrap();
        assert!(F23.is_equivalent(&F23.apply(&g).unwrap()).unwrap());
        assert!(!F23.is_equivalent(&BinaryCubicForm::new(1, 0, -2, -2)).unwrap());
    }
}
