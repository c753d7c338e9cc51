//! Basis-blade product on bitmasks.
//!
//! A blade is a bitmask over generators; bit k set means generator k is a
//! factor, and factors are kept in ascending index order. The product of two
//! blades is the XOR of their masks, a reordering sign from counting the
//! generator transpositions needed to sort the concatenated factor list, and
//! one metric factor per generator the blades share.

use super::Signature;

/// Grade of a blade = number of generator factors.
#[inline]
pub fn blade_grade(mask: u16) -> u32 {
    mask.count_ones()
}

/// Sign from sorting the concatenation of two ascending generator lists.
///
/// Counts pairs (i in a, j in b) with i > j; each such pair is one adjacent
/// transposition when merging, so the sign is (-1)^count.
#[inline]
fn reorder_sign(a: u16, b: u16) -> i32 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Geometric product of two basis blades: returns (sign, result mask).
///
/// The sign combines the reordering sign with the metric squares of the
/// generators common to both blades; it is always +1 or -1 (blades never
/// annihilate in a non-degenerate metric).
#[inline]
pub fn blade_product(sig: Signature, a: u16, b: u16) -> (i32, u16) {
    debug_assert!(u32::from(a) < sig.blade_count() as u32);
    debug_assert!(u32::from(b) < sig.blade_count() as u32);
    let mut sign = reorder_sign(a, b);
    let mut common = a & b;
    while common != 0 {
        let k = common.trailing_zeros();
        sign *= sig.metric(k);
        common &= common - 1;
    }
    (sign, a ^ b)
}
