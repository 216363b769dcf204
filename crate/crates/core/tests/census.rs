use sextic_core::census::{count_checkpoints, required_cubic_bound, CheckpointCounter};
use sextic_core::enumerate::partition;
use sextic_core::{build_sextic, enumerate, CensusFilter, EnumerationRange, Enumerator, SexticRecord, Sign};

fn sextics(sign: Sign, upper: u64) -> Vec<SexticRecord> {
    let range = EnumerationRange::new(sign, 0, upper).unwrap();
    enumerate(&range).unwrap().filter(|r| !r.cyclic).map(|r| build_sextic(&r, &[]).unwrap()).collect()
}

/// `|d| * |squarefree part of d|`, with the 4 for squarefree parts not 1 mod 4.
fn naive_sextic_magnitude(d: i64) -> u128 {
    let mut n = d.unsigned_abs();
    let mut core = 1u64;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            core *= p;
        }
        p += 1;
    }
    core *= n;
    let signed = if d < 0 { -(core as i64) } else { core as i64 };
    let fund = if signed.rem_euclid(4) == 1 { core } else { 4 * core };
    d.unsigned_abs() as u128 * d.unsigned_abs() as u128 * fund as u128
}

#[test]
fn strict_bound_at_the_smallest_discriminant() {
    let filter = CensusFilter::new(Sign::Negative);
    let u = required_cubic_bound(12168);
    let counts = count_checkpoints(sextics(Sign::Negative, u), u, &[12167, 12168], &filter).unwrap();
    assert_eq!(counts, vec![0, 1]);
}

#[test]
fn counts_agree_with_a_naive_tally() {
    for sign in [Sign::Positive, Sign::Negative] {
        let xs = [10u128.pow(8), 10u128.pow(9), 10u128.pow(10)];
        let u = required_cubic_bound(xs[2]);
        let counts = count_checkpoints(sextics(sign, u), u, &xs, &CensusFilter::new(sign)).unwrap();
        let range = EnumerationRange::new(sign, 0, u).unwrap();
        let mags: Vec<u128> =
            enumerate(&range).unwrap().filter(|r| !r.cyclic).map(|r| naive_sextic_magnitude(r.disc)).collect();
        let naive: Vec<u64> = xs.iter().map(|&x| mags.iter().filter(|&&m| m < x).count() as u64).collect();
        assert_eq!(counts, naive, "{sign:?}");
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn histograms_partition_the_filtered_count() {
    let xs = [10u128.pow(9), 10u128.pow(10)];
    let u = required_cubic_bound(xs[1]);
    let filter = CensusFilter::new(Sign::Negative).with_unramified(&[2, 3]).unwrap().with_modulus(5).unwrap();
    let mut counter = CheckpointCounter::new(&xs, filter).unwrap();
    for s in sextics(Sign::Negative, u) {
        counter.push(&s);
    }
    for (h, c) in counter.histograms().iter().zip(counter.counts()) {
        assert_eq!(h.iter().sum::<u64>(), c);
    }
    for s in sextics(Sign::Negative, u) {
        if s.disc_sextic.unsigned_abs() < xs[1] && s.is_unramified_at(2) && s.is_unramified_at(3) {
            assert_ne!(s.disc_sextic % 2, 0);
            assert_ne!(s.disc_sextic % 3, 0);
        }
    }
}

#[test]
fn merged_partition_counters_equal_the_sequential_counter() {
    let xs = [10u128.pow(9), 10u128.pow(10)];
    let u = required_cubic_bound(xs[1]);
    let filter = CensusFilter::new(Sign::Positive).with_modulus(7).unwrap();
    let range = EnumerationRange::new(Sign::Positive, 0, u).unwrap();
    let en = Enumerator::new(u).unwrap();
    let mut whole = CheckpointCounter::new(&xs, filter.clone()).unwrap();
    for r in en.segment(&range).unwrap() {
        whole.push_cubic(&r).unwrap();
    }
    let parts: Vec<_> = partition(&range, 8)
        .iter()
        .map(|p| {
            let mut c = CheckpointCounter::new(&xs, filter.clone()).unwrap();
            for r in en.segment(p).unwrap() {
                c.push_cubic(&r).unwrap();
            }
            c
        })
        .collect();
    let mut merged = CheckpointCounter::new(&xs, filter.clone()).unwrap();
    for p in parts.iter().rev() {
        merged.merge(p).unwrap();
    }
    assert_eq!(merged, whole);
}
