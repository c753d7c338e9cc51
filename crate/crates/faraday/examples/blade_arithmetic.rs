//! The exact Clifford kernel: blades, products, grades, and how the metric
//! signature changes the answers.

use faraday::algebra::{Multivector, Signature, EUCLIDEAN4, MINKOWSKI};

type Mv = Multivector<f64>;

fn main() {
    // generator squares encode the metric: +1 once, -1 three times
    println!("generator squares in Cl(1,3):");
    for k in 0..4 {
        let g = Mv::basis_vector(MINKOWSKI, k);
        println!("  g{k} g{k} = {}", g.geometric(&g));
    }

    // distinct generators anticommute, so products sort into blades
    let g0 = Mv::basis_vector(MINKOWSKI, 0);
    let g1 = Mv::basis_vector(MINKOWSKI, 1);
    println!("\ng0 g1     = {}", g0.geometric(&g1));
    println!("g1 g0     = {}", g1.geometric(&g0));
    println!("g0^g1     = {}", g0.outer(&g1));
    println!("g0|g1     = {}", g0.inner(&g1));

    // a general element mixes grades; projection picks them apart
    let bivector = g1.geometric(&Mv::basis_vector(MINKOWSKI, 2)).scale(&3.0);
    let a = &(&g0.scale(&2.0) + &bivector) + &Mv::scalar(MINKOWSKI, 5.0);
    println!("\na         = {a}");
    for k in 0..=4 {
        let part = a.grade(k);
        if !part.is_zero() {
            println!("  grade {k}: {part}");
        }
    }
    println!("reverse   = {}", a.reverse());

    // the unit pseudoscalar: square and commutation depend on the signature
    for sig in [MINKOWSKI, EUCLIDEAN4, Signature::new(2, 2).unwrap()] {
        let i = Mv::pseudoscalar(sig);
        let v = Mv::basis_vector(sig, 0);
        let commutes = i.geometric(&v) == v.geometric(&i);
        println!(
            "\nCl({},{}): I = {i}, I I = {}, I {} vectors",
            sig.p(),
            sig.q(),
            i.geometric(&i),
            if commutes { "commutes with" } else { "anticommutes with" },
        );
    }

    // products against every blade of the algebra stay exact: these are
    // signed permutations, no rounding anywhere
    let i = Mv::pseudoscalar(MINKOWSKI);
    let squared = i.geometric(&i);
    assert_eq!(squared.scalar_part(), -1.0);
    assert_eq!(squared.grade(0), squared, "I^2 lands on grade 0 exactly");

    // Cl(2,2) is the split case: its pseudoscalar squares to +1
    let split = Multivector::<f64>::pseudoscalar(Signature::new(2, 2).unwrap());
    assert_eq!(split.geometric(&split).scalar_part(), 1.0);
    println!("\nall exactness assertions passed");
}
