//! Splitting spacetime vectors against the time axis, relative vectors,
//! and the two rotor families (boosts and duality rotations).

use faraday::algebra::{
    apply_rotor, boost_rotor, duality_rotor, field_bivector, field_components, relative_vector,
    Multivector, SpacetimeSplit, MINKOWSKI,
};

type Mv = Multivector<f64>;

fn main() {
    let sig = MINKOWSKI;

    // a g0 = a.g0 + a^g0 separates the time component from a relative
    // 3-vector built on the g_k g0 planes
    let a = Mv::from_coeffs(
        sig,
        &{
            let mut c = [0.0; 16];
            c[0b0001] = 2.0; // t
            c[0b0010] = 0.5; // x
            c[0b0100] = -1.0; // y
            c
        },
    );
    let split = SpacetimeSplit::of(&a).unwrap();
    println!("a = {a}");
    println!("  time component    {}", split.time);
    println!("  spatial components {:?}", split.spatial);
    assert_eq!(split.recombine(sig), a);

    // relative vectors multiply like the Pauli algebra: squares are +1
    let x = relative_vector(sig, &[1.0, 0.0, 0.0]);
    println!("\nrelative x = {x}");
    println!("x x = {}", x.geometric(&x));

    // a boost rotor mixes t and x with cosh/sinh of the rapidity
    let zeta = 0.6f64;
    let r = boost_rotor(sig, 1, zeta);
    let g0 = Mv::basis_vector(sig, 0);
    let boosted = apply_rotor(&r, &g0);
    println!("\nboost along x at rapidity {zeta} (velocity {:.4}c):", zeta.tanh());
    println!("  R g0 R~ = {boosted}");
    println!("  expected cosh = {}, sinh = {}", zeta.cosh(), zeta.sinh());

    // the same rotor acts on the field bivector; invariants cannot move
    let f = field_bivector(sig, &[1.0, 0.0, 0.0], &[0.0, 0.5, 0.0]);
    let f2 = f.geometric(&f);
    let boosted_f = apply_rotor(&r, &f);
    let boosted_f2 = boosted_f.geometric(&boosted_f);
    println!("\nfield bivector F = {f}");
    let (e, b) = field_components(&boosted_f);
    println!("  boosted E = {e:?}");
    println!("  boosted B = {b:?}");
    println!("  <F^2>_0 before/after: {} / {}", f2.scalar_part(), boosted_f2.scalar_part());

    // duality rotations act by right-multiplication with exp(-I alpha);
    // a quarter turn sends E -> B and B -> -E exactly
    let q = duality_rotor(sig, std::f64::consts::FRAC_PI_2).unwrap();
    let (e, b) = field_components(&f.geometric(&q));
    println!("\nquarter duality turn:");
    println!("  E -> {e:?}");
    println!("  B -> {b:?}");
    assert_eq!(e, [0.0, 0.5, 0.0]);
    assert_eq!(b, [-1.0, 0.0, 0.0]);
}
