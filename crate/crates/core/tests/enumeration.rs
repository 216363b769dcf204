use std::collections::BTreeSet;

use sextic_core::enumerate::{brute_force_enumerate, enumerate, partition, EnumerationRange, Enumerator};
use sextic_core::local::{is_maximal_at, splitting_type, SplittingType};
use sextic_core::{BinaryCubicForm, Sign};

fn forms(records: impl IntoIterator<Item = sextic_core::CubicFieldRecord>) -> Vec<BinaryCubicForm> {
    records.into_iter().map(|r| r.form).collect()
}

#[test]
fn fast_enumeration_matches_oracle() {
    for sign in [Sign::Positive, Sign::Negative] {
        let range = EnumerationRange::new(sign, 0, 5000).unwrap();
        let fast: Vec<_> = enumerate(&range).unwrap().collect();
        let slow = brute_force_enumerate(&range).unwrap();
        assert_eq!(fast, slow, "{sign:?}");
        let unique: BTreeSet<_> = fast.iter().map(|r| r.form).collect();
        assert_eq!(unique.len(), fast.len());
    }
}

#[test]
fn partitioned_enumeration_is_identical() {
    let range = EnumerationRange::new(Sign::Negative, 0, 5000).unwrap();
    let whole = forms(enumerate(&range).unwrap());
    let en = Enumerator::new(5000).unwrap();
    let mut merged = Vec::new();
    for part in partition(&range, 8) {
        merged.extend(forms(en.segment(&part).unwrap()));
    }
    assert_eq!(whole, merged);
}

#[test]
fn oracle_agreement_on_a_wider_window() {
    for sign in [Sign::Positive, Sign::Negative] {
        let range = EnumerationRange::new(sign, 15_000, 20_000).unwrap();
        let fast = forms(enumerate(&range).unwrap());
        let slow = forms(brute_force_enumerate(&range).unwrap());
        assert_eq!(fast, slow, "{sign:?}");
    }
}

#[test]
fn records_are_consistent() {
    for sign in [Sign::Positive, Sign::Negative] {
        let range = EnumerationRange::new(sign, 0, 20_000).unwrap();
        for r in enumerate(&range).unwrap() {
            assert_eq!(r.form.discriminant(), r.disc as i128);
            assert_eq!(r.factorization.value(), r.disc as i128);
            for ram in &r.ramification {
                assert!(is_maximal_at(&r.form, ram.p).unwrap());
                let t = splitting_type(&r.form, ram.p).unwrap();
                assert_eq!(ram.total, t == SplittingType::TotallyRamified);
                match ram.p {
                    2 => assert!(matches!(ram.e, 2 | 3)),
                    3 => assert!(matches!(ram.e, 1 | 3 | 4 | 5)),
                    _ => assert_eq!(ram.e, if ram.total { 2 } else { 1 }),
                }
                if ram.p == 2 {
                    let m = r.form.coeffs().map(|x| x.rem_euclid(2));
                    let cube = matches!(m, [1, 1, 1, 1] | [1, 0, 0, 0] | [0, 0, 0, 1]);
                    assert_eq!(cube, ram.total);
                }
            }
            let sq = (r.disc as f64).sqrt() as i64;
            assert_eq!(r.cyclic, r.disc > 0 && (sq - 1..=sq + 1).any(|s| s * s == r.disc));
        }
    }
}
