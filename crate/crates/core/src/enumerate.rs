//! Enumeration of cubic fields by discriminant through reduced binary cubic forms.
//!
//! Each isomorphism class of cubic field corresponds to exactly one canonical
//! (reduced, irreducible, maximal) form. The sweeps below walk the reduced forms
//! with `lower <= |Disc| < upper` using coefficient bounds coming from the Hessian
//! (positive discriminant) or from the root geometry (negative discriminant), and the
//! syzygy `4P^3 = G^2 + 27 a^2 Disc` with `G = 2b^3 - 9abc + 27a^2 d`, which pins `d`
//! to short intervals once `a, b, c` are fixed.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{div_ceil, div_floor, isqrt_ceil_u128, isqrt_u128, iroot4_u128};
use crate::factor::{factorize, Factorization, SpfSieve};
use crate::form::{min_reduced_positive, BinaryCubicForm};
use crate::local::{is_cyclic, maximal_given_disc, ramification_profile, RamifiedPrime};
use crate::{Error, Sign};

/// Largest supported `|Disc|` bound (exclusive).
pub const MAX_ABS_DISC: u64 = 1 << 32;

/// Largest bound accepted by the brute-force oracle.
pub const ORACLE_MAX_ABS_DISC: u64 = 100_000;

/// Default width of the `|Disc|` segments that are enumerated and sorted in memory.
pub const DEFAULT_SEGMENT_WIDTH: u64 = 1 << 20;

/// Fields with `lower <= |Disc| < upper` and the given sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumerationRange {
    pub sign: Sign,
    pub lower: u64,
    pub upper: u64,
}

impl EnumerationRange {
    pub fn new(sign: Sign, lower: u64, upper: u64) -> Result<Self, Error> {
        if lower >= upper {
            return Err(Error::InvalidRange("lower bound must be below the upper bound"));
        }
        if upper > MAX_ABS_DISC {
            return Err(Error::InvalidRange("upper bound exceeds the supported |disc| limit of 2^32"));
        }
        Ok(Self { sign, lower, upper })
    }

    pub fn contains(&self, disc: i128) -> bool {
        self.sign.matches(disc) && {
            let m = disc.unsigned_abs();
            m >= self.lower as u128 && m < self.upper as u128
        }
    }
}

/// `k` consecutive disjoint sub-ranges covering `range` (fewer if the range is narrower than `k`).
pub fn partition(range: &EnumerationRange, k: usize) -> Vec<EnumerationRange> {
    let k = k.max(1) as u64;
    let width = range.upper - range.lower;
    let parts = k.min(width);
    (0..parts)
        .map(|i| EnumerationRange {
            sign: range.sign,
            lower: range.lower + width * i / parts,
            upper: range.lower + width * (i + 1) / parts,
        })
        .collect()
}

/// One cubic field, represented by its canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicFieldRecord {
    pub form: BinaryCubicForm,
    pub disc: i64,
    pub factorization: Factorization,
    pub cyclic: bool,
    pub ramification: Vec<RamifiedPrime>,
}

impl CubicFieldRecord {
    /// The record of the field attached to an irreducible maximal form (any orbit member).
    pub fn from_form(f: &BinaryCubicForm) -> Result<Self, Error> {
        let form = f.canonical_reduce()?;
        let disc = form.discriminant();
        let factorization = factorize(disc)?;
        if let Some(&(p, _)) = factorization
            .factors
            .iter()
            .find(|&&(p, e)| e >= 2 && !crate::local::is_maximal_at(&form, p).unwrap_or(false))
        {
            return Err(Error::NotMaximalAt(p));
        }
        Ok(Self::assemble(form, disc, factorization))
    }

    fn assemble(form: BinaryCubicForm, disc: i128, factorization: Factorization) -> Self {
        let ramification = ramification_profile(&form, &factorization);
        Self {
            form,
            disc: disc as i64,
            factorization,
            cyclic: is_cyclic(disc),
            ramification,
        }
    }

    /// The global output order: `|Disc|` ascending, then coefficients lexicographically.
    pub fn sort_key(&self) -> (u64, BinaryCubicForm) {
        (self.disc.unsigned_abs(), self.form)
    }

    pub fn ramification_at(&self, p: u64) -> Option<&RamifiedPrime> {
        self.ramification.iter().find(|r| r.p == p)
    }
}

const PREFILTER_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// For each small prime `l`, whether a form mod `l` has a zero in `P^1(F_l)`.
#[derive(Debug, Clone)]
struct RootTables {
    tables: Vec<Vec<bool>>,
}

impl RootTables {
    fn new() -> Self {
        let tables = PREFILTER_PRIMES
            .iter()
            .map(|&l| {
                let l = l as usize;
                let mut t = vec![false; l * l * l * l];
                for (idx, slot) in t.iter_mut().enumerate() {
                    let (a, b, c, d) = (idx / (l * l * l), idx / (l * l) % l, idx / l % l, idx % l);
                    *slot = a == 0 || (0..l).any(|x| (((a * x + b) * x + c) * x + d) % l == 0);
                }
                t
            })
            .collect();
        Self { tables }
    }

    /// False only when some prime proves the form irreducible.
    fn may_have_root(&self, f: &BinaryCubicForm) -> bool {
        PREFILTER_PRIMES.iter().zip(&self.tables).all(|(&l, t)| {
            let r = |x: i64| x.rem_euclid(l as i64) as usize;
            let l = l as usize;
            t[((r(f.a) * l + r(f.b)) * l + r(f.c)) * l + r(f.d)]
        })
    }
}

/// Reusable enumeration state: a factor table up to the bound and the irreducibility prefilter.
#[derive(Debug, Clone)]
pub struct Enumerator {
    limit: u64,
    sieve: Arc<SpfSieve>,
    roots: Arc<RootTables>,
}

impl Enumerator {
    /// Prepares enumeration of any range with `upper <= limit`.
    pub fn new(limit: u64) -> Result<Self, Error> {
        if limit > MAX_ABS_DISC {
            return Err(Error::InvalidRange("upper bound exceeds the supported |disc| limit of 2^32"));
        }
        Ok(Self { limit, sieve: Arc::new(SpfSieve::new(limit)?), roots: Arc::new(RootTables::new()) })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All fields in `range`, sorted in the global order.
    pub fn segment(&self, range: &EnumerationRange) -> Result<Vec<CubicFieldRecord>, Error> {
        if range.upper > self.limit {
            return Err(Error::InvalidRange("range exceeds the enumerator limit"));
        }
        let mut out = Vec::new();
        let lo = range.lower.max(1) as i128;
        let hi = range.upper as i128 - 1;
        if lo <= hi {
            match range.sign {
                Sign::Positive => self.sweep_positive(lo, hi, &mut out),
                Sign::Negative => self.sweep_negative(lo, hi, &mut out),
            }
        }
        out.sort_unstable_by_key(|r| r.sort_key());
        Ok(out)
    }

    /// Streams `range` segment by segment in the global order.
    pub fn stream(&self, range: EnumerationRange, segment_width: u64) -> Result<EnumerationStream, Error> {
        if range.upper > self.limit {
            return Err(Error::InvalidRange("range exceeds the enumerator limit"));
        }
        Ok(EnumerationStream {
            enumerator: self.clone(),
            range,
            next_lower: range.lower,
            width: segment_width.max(1),
            buffer: Vec::new().into_iter(),
        })
    }

    fn admit(&self, f: BinaryCubicForm, disc: i128, out: &mut Vec<CubicFieldRecord>) {
        if self.roots.may_have_root(&f) && f.has_rational_root() {
            return;
        }
        let fac = self.sieve.factorize(disc).expect("nonzero discriminant");
        if !maximal_given_disc(&f, disc, &fac) {
            return;
        }
        out.push(CubicFieldRecord::assemble(f, disc, fac));
    }

    /// Reduced forms with `lo <= Disc <= hi`.
    fn sweep_positive(&self, lo: i128, hi: i128, out: &mut Vec<CubicFieldRecord>) {
        // reduced Hessian: P^2 <= Disc and 27 a^2 <= 4P
        let pmax = isqrt_u128(hi as u128) as i128;
        let root4 = iroot4_u128(hi as u128) as i128;
        let mut a: i128 = 1;
        while 27 * a * a <= 4 * pmax {
            let pmin = div_ceil(27 * a * a, 4).max(1);
            let a27 = 27 * a * a;
            // b = (G + 3aQ) / (2P) with |G| <= 2 P^{3/2} and |Q| <= P
            let bmax = (3 * a) / 2 + root4 + 1;
            for b in -bmax..=0 {
                let c_lo = div_ceil(b * b - pmax, 3 * a);
                let c_hi = div_floor(b * b - pmin, 3 * a);
                for c in c_lo..=c_hi {
                    let p = b * b - 3 * a * c;
                    let g2_hi = 4 * p * p * p - a27 * lo;
                    if g2_hi < 0 {
                        continue;
                    }
                    let g2_lo = 4 * p * p * p - a27 * hi;
                    let gmax = isqrt_u128(g2_hi as u128) as i128;
                    let gmin = if g2_lo <= 0 { 0 } else { isqrt_ceil_u128(g2_lo as u128) as i128 };
                    if gmin > gmax {
                        continue;
                    }
                    // |Q| <= P with Q = bc - 9ad
                    let dq_lo = div_ceil(b * c - p, 9 * a);
                    let dq_hi = div_floor(b * c + p, 9 * a);
                    let base = 2 * b * b * b - 9 * a * b * c;
                    for (g_lo, g_hi) in g_windows(gmin, gmax) {
                        let d_lo = div_ceil(g_lo - base, a27).max(dq_lo);
                        let d_hi = div_floor(g_hi - base, a27).min(dq_hi);
                        for d in d_lo..=d_hi {
                            let r = c * c - 3 * b * d;
                            if r < p {
                                continue;
                            }
                            let f = BinaryCubicForm::new(a as i64, b as i64, c as i64, d as i64);
                            let disc = f.discriminant();
                            debug_assert!(disc >= lo && disc <= hi);
                            let q = b * c - 9 * a * d;
                            let canonical = if q.abs() < p && p < r {
                                b < 0 || (b == 0 && d < 0)
                            } else {
                                min_reduced_positive(&f) == f
                            };
                            if canonical {
                                self.admit(f, disc, out);
                            }
                        }
                    }
                }
            }
            a += 1;
        }
    }

    /// Reduced forms with `lo <= -Disc <= hi`.
    fn sweep_negative(&self, lo: i128, hi: i128, out: &mut Vec<CubicFieldRecord>) {
        // |Disc| = 4 a^4 y^2 |θ - α|^4 >= 4 a^4 y^6 with y^2 > 3/4
        let mut a: i128 = 1;
        while 27 * a * a * a * a <= 16 * hi {
            let a27 = 27 * a * a;
            let af = a as f64;
            let y2max = libm::cbrt(hi as f64 / (4.0 * af * af * af * af)) * (1.0 + 1e-12);
            let t = libm::pow(hi as f64 / 3.0, 0.25);
            let b_lo = libm::floor(-t - 1.5 * af) as i128 - 1;
            let b_hi = libm::ceil(t) as i128 + 1;
            for b in b_lo..=b_hi {
                let bf = b as f64;
                // c = -2σb - 3aσ^2 + a y^2 over 0 < σ < 1/2, 3/4 < y^2 <= y2max
                let g_min = libm::fmin(0.0, -bf - 0.75 * af);
                let vertex = -bf / (3.0 * af);
                let g_max = if (0.0..=0.5).contains(&vertex) {
                    bf * bf / (3.0 * af)
                } else {
                    libm::fmax(0.0, -bf - 0.75 * af)
                };
                let c_lo = libm::floor(g_min + 0.75 * af) as i128 - 1;
                let c_hi = libm::ceil(g_max + af * y2max) as i128 + 1;
                for c in c_lo..=c_hi {
                    // bc < ad < (a + b)(a + b + c)
                    let dl_lo = div_floor(b * c, a) + 1;
                    let dl_hi = div_ceil((a + b) * (a + b + c), a) - 1;
                    if dl_lo > dl_hi {
                        continue;
                    }
                    let p = b * b - 3 * a * c;
                    let g2_hi = 4 * p * p * p + a27 * hi;
                    if g2_hi < 0 {
                        continue;
                    }
                    let g2_lo = 4 * p * p * p + a27 * lo;
                    let gmax = isqrt_u128(g2_hi as u128) as i128;
                    let gmin = if g2_lo <= 0 { 0 } else { isqrt_ceil_u128(g2_lo as u128) as i128 };
                    if gmin > gmax {
                        continue;
                    }
                    let base = 2 * b * b * b - 9 * a * b * c;
                    for (g_lo, g_hi) in g_windows(gmin, gmax) {
                        let d_lo = div_ceil(g_lo - base, a27).max(dl_lo);
                        let d_hi = div_floor(g_hi - base, a27).min(dl_hi);
                        for d in d_lo..=d_hi {
                            if d * d - b * d + a * c - a * a <= 0 {
                                continue;
                            }
                            let f = BinaryCubicForm::new(a as i64, b as i64, c as i64, d as i64);
                            let disc = f.discriminant();
                            debug_assert!(-disc >= lo && -disc <= hi);
                            self.admit(f, disc, out);
                        }
                    }
                }
            }
            a += 1;
        }
    }
}

/// The sets `{G : gmin <= |G| <= gmax}` as disjoint intervals, negative side first.
fn g_windows(gmin: i128, gmax: i128) -> impl Iterator<Item = (i128, i128)> {
    let neg = if gmin == 0 { (-gmax, -1) } else { (-gmax, -gmin) };
    [neg, (gmin, gmax)].into_iter().filter(|&(l, h)| l <= h)
}

/// Records of a range in the global order, produced one segment at a time.
#[derive(Debug)]
pub struct EnumerationStream {
    enumerator: Enumerator,
    range: EnumerationRange,
    next_lower: u64,
    width: u64,
    buffer: alloc::vec::IntoIter<CubicFieldRecord>,
}

impl Iterator for EnumerationStream {
    type Item = CubicFieldRecord;

    fn next(&mut self) -> Option<CubicFieldRecord> {
        loop {
            if let Some(r) = self.buffer.next() {
                return Some(r);
            }
            if self.next_lower >= self.range.upper {
                return None;
            }
            let upper = self.next_lower.saturating_add(self.width).min(self.range.upper);
            let seg = EnumerationRange { sign: self.range.sign, lower: self.next_lower, upper };
            self.next_lower = upper;
            self.buffer = self.enumerator.segment(&seg).expect("segment within limit").into_iter();
        }
    }
}

/// Every cubic field in `range`, in the global order.
pub fn enumerate(range: &EnumerationRange) -> Result<EnumerationStream, Error> {
    Enumerator::new(range.upper)?.stream(*range, DEFAULT_SEGMENT_WIDTH)
}

/// Slow reference enumeration: exhausts a coefficient box containing a reduced
/// representative of every orbit and deduplicates with [`BinaryCubicForm::canonical_reduce`].
pub fn brute_force_enumerate(range: &EnumerationRange) -> Result<Vec<CubicFieldRecord>, Error> {
    if range.upper > ORACLE_MAX_ABS_DISC {
        return Err(Error::InvalidRange("brute-force oracle is limited to |disc| < 100000"));
    }
    let y = (range.upper - 1) as f64;
    let mut seen = BTreeSet::new();
    let mut records = Vec::new();
    let mut consider = |f: BinaryCubicForm| {
        let Some(disc) = f.try_discriminant() else { return };
        if disc == 0 || !range.contains(disc) {
            return;
        }
        if !f.is_irreducible().unwrap_or(false) {
            return;
        }
        let Ok(fac) = factorize(disc) else { return };
        if !crate::local::is_maximal(&f, &fac).unwrap_or(false) {
            return;
        }
        let canon = f.canonical_reduce().expect("irreducible form");
        if seen.insert(canon) {
            records.push(CubicFieldRecord::assemble(canon, disc, fac));
        }
    };
    let sqrt_y = libm::sqrt(y);
    let root4_y = libm::sqrt(sqrt_y);
    match range.sign {
        Sign::Positive => {
            let mut a = 1i64;
            while 729.0 * libm::pow(a as f64, 4.0) <= 16.0 * y {
                let af = a as f64;
                let bm = (1.5 * af + root4_y) as i64 + 1;
                let cm = ((bm * bm) as f64 + sqrt_y) / (3.0 * af);
                let cm = cm as i64 + 1;
                let dm = ((bm * cm) as f64 + sqrt_y) / (9.0 * af);
                let dm = dm as i64 + 1;
                for b in -bm..=bm {
                    for c in -cm..=cm {
                        for d in -dm..=dm {
                            consider(BinaryCubicForm::new(a, b, c, d));
                        }
                    }
                }
                a += 1;
            }
        }
        Sign::Negative => {
            let mut a = 1i64;
            while 27.0 * libm::pow(a as f64, 4.0) <= 16.0 * y {
                let af = a as f64;
                let a4 = libm::pow(af, 4.0);
                let y2 = libm::cbrt(y / (4.0 * a4));
                let theta = libm::pow(y / (3.0 * a4), 0.25) + 0.5;
                let bm = (libm::pow(y / 3.0, 0.25) + 1.5 * af) as i64 + 2;
                let cm = (bm as f64 + 0.75 * af + af * y2) as i64 + 2;
                let dm = (af * theta * (0.25 + y2)) as i64 + 2;
                for b in -bm..=bm {
                    for c in -cm..=cm {
                        for d in -dm..=dm {
                            consider(BinaryCubicForm::new(a, b, c, d));
                        }
                    }
                }
                a += 1;
            }
        }
    }
    records.sort_unstable_by_key(|r| r.sort_key());
    Ok(records)
}
