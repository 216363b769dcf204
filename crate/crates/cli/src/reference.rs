//! Reference tables: counts of S3-sextic fields, their predictions, and cubic residue counts.

/// `(X, actual, main-plus-secondary prediction, tail-corrected prediction, error in thousandths)`.
pub type CountRow = (u128, u64, u64, u64, u32);

const fn pow10(e: u32) -> u128 {
    10u128.pow(e)
}

pub const POSITIVE: [CountRow; 12] = [
    (pow10(12), 690, 756, 709, 31),
    (pow10(13), 1650, 1762, 1682, 27),
    (pow10(14), 3848, 4045, 3910, 25),
    (pow10(15), 8867, 9181, 8955, 21),
    (pow10(16), 20062, 20658, 20276, 21),
    (pow10(17), 45054, 46159, 45513, 21),
    (pow10(18), 100335, 102555, 101460, 22),
    (pow10(19), 222939, 226801, 224943, 20),
    (pow10(20), 492335, 499647, 496490, 20),
    (pow10(21), 1083761, 1097214, 1091842, 20),
    (pow10(22), 2378358, 2402995, 2393842, 19),
    (pow10(23), 5207310, 5250840, 5235221, 18),
];

pub const NEGATIVE: [CountRow; 13] = [
    (pow10(12), 2809, 2979, 2828, 79),
    (pow10(13), 6315, 6613, 6362, 73),
    (pow10(14), 14121, 14617, 14199, 64),
    (pow10(15), 31276, 32192, 31492, 62),
    (pow10(16), 68972, 70683, 69507, 61),
    (pow10(17), 151877, 154800, 152820, 55),
    (pow10(18), 333398, 338279, 334938, 49),
    (pow10(19), 729572, 737847, 732195, 44),
    (pow10(20), 1592941, 1606792, 1597213, 39),
    (pow10(21), 3470007, 3494240, 3477974, 36),
    (pow10(22), 7550171, 7589746, 7562074, 31),
    (pow10(23), 16399890, 16468453, 16421298, 28),
    (3 * pow10(23), 23738460, 23824734, 23763890, 26),
];

/// Negative sextic discriminants, unramified at 2 and 3, by `Disc mod 5`.
pub const MOD5_ACTUAL: [(u128, [u64; 5]); 9] = [
    (pow10(16), [5034, 3974, 4091, 4027, 4075]),
    (pow10(17), [11211, 8817, 8967, 8833, 9075]),
    (pow10(18), [24816, 19530, 19872, 19395, 19902]),
    (pow10(19), [54582, 42917, 43623, 42972, 43615]),
    (pow10(20), [119354, 94222, 95303, 94175, 95428]),
    (pow10(21), [261627, 205997, 208080, 205916, 208632]),
    (pow10(22), [570179, 449574, 453456, 449432, 454119]),
    (pow10(23), [1243107, 980023, 985513, 978812, 986670]),
    (3 * pow10(23), [1801227, 1420062, 1427778, 1418371, 1429022]),
];

pub const MOD5_PREDICTED: [(u128, [u64; 5]); 2] = [
    (pow10(20), [122687, 96553, 96553, 96553, 96553]),
    (3 * pow10(23), [1824995, 1437452, 1437452, 1437452, 1437452]),
];

/// Cubic fields with `0 < Disc < 2 * 10^6` by `Disc mod 5` and `Disc mod 7`.
pub const CUBIC_BOUND: u64 = 2_000_000;
pub const CUBIC_MOD5: [u64; 5] = [21277, 22887, 22751, 22748, 22781];
pub const CUBIC_MOD7: [u64; 7] = [15330, 17229, 14327, 15323, 17027, 18058, 15150];
