//! Discriminants of the Galois closures of non-cyclic cubic fields.

use alloc::vec::Vec;

use crate::enumerate::CubicFieldRecord;
use crate::factor::{factorize, Factorization};
use crate::Error;

/// The 3-adic valuation class of the local cubic discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum V3Class {
    Below3,
    Equal3,
    Above3,
}

impl V3Class {
    pub fn of(v3: u32) -> Self {
        match v3 {
            0..=2 => V3Class::Below3,
            3 => V3Class::Equal3,
            _ => V3Class::Above3,
        }
    }
}

/// `Disc_3(A)^3 / Disc_3(Ã)` from the valuation of the local discriminant at 3.
pub fn m_a_of(v3: u32) -> u32 {
    match V3Class::of(v3) {
        V3Class::Below3 => 1,
        V3Class::Equal3 => 9,
        V3Class::Above3 => 81,
    }
}

/// The S3-sextic closure of a non-cyclic cubic field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SexticRecord {
    pub disc_sextic: i128,
    pub disc_k: i64,
    pub fundamental_disc: i64,
    pub v3_class: V3Class,
    pub m_a: u32,
    /// `(m, disc_sextic mod m)` for the requested moduli, in `0..m`.
    pub residues: Vec<(u64, u64)>,
    pub unramified_at_2: bool,
    pub unramified_at_3: bool,
}

impl SexticRecord {
    pub fn residue(&self, m: u64) -> u64 {
        self.disc_sextic.rem_euclid(m as i128) as u64
    }

    pub fn is_unramified_at(&self, p: u64) -> bool {
        self.disc_sextic % p as i128 != 0
    }
}

/// Discriminant of `Q(sqrt n)`.
pub fn fundamental_discriminant(n: i128, factorization: Option<&Factorization>) -> Result<i128, Error> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let owned;
    let fac = match factorization {
        Some(f) => {
            if f.value() != n {
                return Err(Error::InvalidArgument("factorization does not match the integer"));
            }
            f
        }
        None => {
            owned = factorize(n)?;
            &owned
        }
    };
    let s = fac.squarefree_kernel();
    if s == 1 {
        return Err(Error::InvalidArgument("perfect squares have no quadratic field"));
    }
    Ok(if s.rem_euclid(4) == 1 { s } else { 4 * s })
}

/// `Disc(K)^2 Disc(F)` with `F` the quadratic resolvent.
pub fn sextic_disc_resolvent(record: &CubicFieldRecord) -> Result<i128, Error> {
    if record.cyclic {
        return Err(Error::Cyclic);
    }
    let d = record.disc as i128;
    Ok(d * d * fundamental_discriminant(d, Some(&record.factorization))?)
}

/// Exponent of `p` in the sextic discriminant from the cubic exponent and ramification type.
pub fn sextic_exponent(p: u64, e: u32, total: bool) -> Result<u32, Error> {
    if !total {
        return Ok(3 * e);
    }
    match (p, e) {
        (3, 3) => Ok(7),
        (3, 4) => Ok(8),
        (3, 5) => Ok(11),
        (3, _) => Err(Error::RamificationCase { p, e }),
        (_, 2) => Ok(4),
        _ => Err(Error::RamificationCase { p, e }),
    }
}

/// The sextic discriminant assembled prime by prime from the ramification profile.
pub fn sextic_disc_lemma(record: &CubicFieldRecord) -> Result<i128, Error> {
    if record.cyclic {
        return Err(Error::Cyclic);
    }
    let mut mag: i128 = 1;
    for r in &record.ramification {
        let e = sextic_exponent(r.p, r.e, r.total)?;
        mag = (r.p as i128)
            .checked_pow(e)
            .and_then(|x| mag.checked_mul(x))
            .ok_or(Error::Overflow("sextic discriminant"))?;
    }
    Ok(if record.disc < 0 { -mag } else { mag })
}

/// Builds the sextic record; the two discriminant computations must agree.
pub fn build_sextic(record: &CubicFieldRecord, moduli: &[u64]) -> Result<SexticRecord, Error> {
    let via_resolvent = sextic_disc_resolvent(record)?;
    let via_lemma = sextic_disc_lemma(record)?;
    if via_resolvent != via_lemma {
        return Err(Error::SexticMismatch { disc_k: record.disc, resolvent: via_resolvent, lemma: via_lemma });
    }
    let v3 = record.ramification_at(3).map_or(0, |r| r.e);
    let fundamental = via_resolvent / (record.disc as i128 * record.disc as i128);
    Ok(SexticRecord {
        disc_sextic: via_resolvent,
        disc_k: record.disc,
        fundamental_disc: fundamental as i64,
        v3_class: V3Class::of(v3),
        m_a: m_a_of(v3),
        residues: moduli.iter().map(|&m| (m, via_resolvent.rem_euclid(m as i128) as u64)).collect(),
        unramified_at_2: record.disc % 2 != 0,
        unramified_at_3: record.disc % 3 != 0,
    })
}
