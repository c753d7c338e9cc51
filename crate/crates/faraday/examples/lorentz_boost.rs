//! Boosting the field bivector with a rotor: components mix, the two
//! scalar invariants stay put, and the energy-type quantity does not.

use faraday::fields::{euclidean_density_maps, boost_fields, density_maps, GridSpec, VectorField};

fn main() {
    let grid = GridSpec::cube(16, 1.0).unwrap();

    // uniform crossed fields: E along y, B along z, |B| < |E|
    let e = VectorField::from_fn(grid, |_| [0.0, 1.0, 0.0]);
    let b = VectorField::from_fn(grid, |_| [0.0, 0.0, 0.4]);

    println!("rapidity  velocity  E'_y      B'_z      E^2-B^2   E.B       E^2+B^2");
    for zeta in [0.0f64, 0.3, 0.6, 1.2] {
        let (be, bb) = boost_fields(&e, &b, 0, zeta);
        let [ex, ey, ez] = be.at(0, 0, 0);
        let [bx, by, bz] = bb.at(0, 0, 0);
        let e2 = ex * ex + ey * ey + ez * ez;
        let b2 = bx * bx + by * by + bz * bz;
        let dot = ex * bx + ey * by + ez * bz;
        println!(
            "{zeta:.1}       {:.4}    {ey:8.4}  {bz:8.4}  {:8.4}  {dot:8.4}  {:8.4}",
            zeta.tanh(),
            e2 - b2,
            e2 + b2
        );
    }
    println!("(the last column is not an invariant: energy density is frame-dependent)");

    // against the closed cosh/sinh mixing at rapidity 0.6
    let zeta = 0.6f64;
    let (be, bb) = boost_fields(&e, &b, 0, zeta);
    let [_, ey, _] = be.at(0, 0, 0);
    let [_, _, bz] = bb.at(0, 0, 0);
    let expect_e = zeta.cosh() * 1.0 - zeta.sinh() * 0.4;
    let expect_b = zeta.cosh() * 0.4 - zeta.sinh() * 1.0;
    println!("\nrapidity 0.6 against closed forms:");
    println!("  E'_y = {ey:.12} (cosh E_y - sinh B_z = {expect_e:.12})");
    println!("  B'_z = {bz:.12} (cosh B_z - sinh E_y = {expect_b:.12})");
    assert!((ey - expect_e).abs() < 1e-12);
    assert!((bz - expect_b).abs() < 1e-12);

    // the pointwise invariants agree over a whole non-uniform state
    let e = VectorField::from_fn(grid, |[x, y, _]| {
        [(std::f64::consts::TAU * x).sin(), (std::f64::consts::TAU * y).cos(), 0.2]
    });
    let b = VectorField::from_fn(grid, |[_, y, z]| {
        [0.1, (std::f64::consts::TAU * y).sin(), (std::f64::consts::TAU * z).cos()]
    });
    let (be, bb) = boost_fields(&e, &b, 2, 0.77);
    let mut state = faraday::fields::FieldState::vacuum(grid, 0.0, 1.0);
    state.e = e.clone();
    state.b = b.clone();
    let mut boosted = state.clone();
    boosted.e = be.clone();
    boosted.b = bb.clone();
    let before = density_maps(&state);
    let after = density_maps(&boosted);
    let d_action = after.action.sub(&before.action).linf();
    let d_pseudo = after.pseudo.sub(&before.pseudo).linf();
    let d_energy = after.energy.sub(&before.energy).linf();
    println!("\nnon-uniform state, boost along z at rapidity 0.77:");
    println!("  max |action' - action|   {d_action:.3e}");
    println!("  max |pseudo' - pseudo|   {d_pseudo:.3e}");
    println!("  max |energy' - energy|   {d_energy:.3e}  <- moves, as it should");
    assert!(d_action < 1e-12);
    assert!(d_pseudo < 1e-12);
    assert!(d_energy > 1e-3);

    // the elliptic signature has no boosts: its "energy" form is definite
    // and the swap-symmetric pair transforms differently
    let eu = euclidean_density_maps(&e, &b);
    println!(
        "\ndefinite-signature invariant (no boost can exist there): {:.6} total",
        eu.action.integral()
    );
}
