//! Shared test helpers: an independent blade-product oracle and random
//! multivector generators.

use faraday::algebra::Signature;

/// Reference blade product computed the slow, literal way: write out the
/// generator sequence of both blades, bubble-sort it while counting adjacent
/// transpositions, then contract equal neighbors through the metric. Kept
/// deliberately different from the library's bitmask/popcount kernel.
pub fn oracle_blade_product(sig: Signature, a: u16, b: u16) -> (i32, u16) {
    let gens = |mask: u16| (0..sig.dim()).filter(move |k| mask & (1 << k) != 0);
    let mut seq: Vec<u32> = gens(a).chain(gens(b)).collect();
    let mut sign = 1i32;
    // Bubble sort, one transposition at a time.
    let mut swapped = true;
    while swapped {
        swapped = false;
        for i in 1..seq.len() {
            if seq[i - 1] > seq[i] {
                seq.swap(i - 1, i);
                sign = -sign;
                swapped = true;
            }
        }
    }
    // Contract equal adjacent generators; the list stays sorted.
    let mut i = 0;
    while i + 1 < seq.len() {
        if seq[i] == seq[i + 1] {
            sign *= sig.metric(seq[i]);
            seq.drain(i..=i + 1);
            if i > 0 {
                i -= 1;
            }
        } else {
            i += 1;
        }
    }
    let mut mask = 0u16;
    for g in seq {
        mask |= 1 << g;
    }
    (sign, mask)
}

/// All four signatures the crate supports at n = 4.
pub fn four_signatures() -> [Signature; 4] {
    [
        faraday::algebra::MINKOWSKI,
        faraday::algebra::EUCLIDEAN4,
        faraday::algebra::CL31,
        faraday::algebra::CL22,
    ]
}
