//! Invariant densities and what duality rotations do to them.

use faraday::fields::{
    density_maps, density_totals, duality_report, duality_rotate, euclidean_density_maps,
    euclidean_swap, synth, total_energy_with_mass, GridSpec,
};
use std::f64::consts::FRAC_PI_2;

fn main() {
    let grid = GridSpec::cube(32, 1.0).unwrap();
    let (state, derivs) = synth::random_state(grid, 7, 0.5, 1.0);

    let maps = density_maps(&state);
    let totals = density_totals(&maps);
    println!("integrated densities of a random state:");
    println!("  action-type invariant   {:+.6}", totals.action);
    println!("  pseudoscalar invariant  {:+.6}", totals.pseudo);
    println!("  field energy            {:+.6}", totals.energy);
    println!("  energy incl. mass terms {:+.6}", total_energy_with_mass(&state));
    println!("  energy flux             {:+.4?}", totals.flux);
    println!("  field momentum          {:+.4?}", totals.momentum);

    // a quarter duality turn negates the action-type invariants and fixes
    // the energy sector -- exactly, coefficient swaps with sign flips
    let rotated = duality_rotate(&state, FRAC_PI_2).unwrap();
    let rmaps = density_maps(&rotated);
    let rtotals = density_totals(&rmaps);
    println!("\nafter a quarter duality turn:");
    println!("  action  {:+.6} (was {:+.6})", rtotals.action, totals.action);
    println!("  pseudo  {:+.6} (was {:+.6})", rtotals.pseudo, totals.pseudo);
    println!("  energy  {:+.6} (was {:+.6})", rtotals.energy, totals.energy);
    assert_eq!(rtotals.action, -totals.action);
    assert_eq!(rtotals.energy, totals.energy);

    // the full report also rotates the sources and re-checks that the two
    // forms of the field equation still agree on the rotated state
    for alpha in [FRAC_PI_2, 0.37] {
        let rep = duality_report(&state, &derivs, alpha).unwrap();
        println!(
            "\nalpha = {alpha}{}:",
            if rep.exact_quarter_turn { " (exact quarter turn)" } else { "" }
        );
        println!("  energy density moved by   {:.3e}", rep.energy_diff_linf);
        println!("  flux density moved by     {:.3e}", rep.flux_diff_linf);
        if let Some(neg) = rep.action_negation_linf {
            println!("  |action' + action|_inf    {:.3e}", neg);
        }
        println!("  rotated equivalence drift {:.3e}", rep.rotated_residual_agreement);
    }

    // the elliptic-signature invariants see the discrete swap E <-> B the
    // same way: the definite one is fixed, the difference flips sign
    let (es, bs) = euclidean_swap(&state.e, &state.b);
    let before = euclidean_density_maps(&state.e, &state.b);
    let after = euclidean_density_maps(&es, &bs);
    let sum_drift = after.action.sub(&before.action).linf();
    let diff_flip = after.difference.add(&before.difference).linf();
    println!("\ndiscrete swap in the definite signature:");
    println!("  definite invariant drift  {sum_drift:.3e}");
    println!("  difference negation error {diff_flip:.3e}");
}
