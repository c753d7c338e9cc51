//! End-to-end acceptance battery. Each test is one claim about the crate,
//! checked at the sizes and tolerances the library documents, and prints a
//! single summary line (visible with --nocapture). Together they cover the
//! symbolic corpus, the product kernel, the residual equivalence, duality,
//! gauge shifts, boosts, dispersion, evanescence, the monopole Gauss law,
//! and charge conservation.

mod common;

use common::{four_signatures, oracle_blade_product};
use faraday::algebra::{blade_product, Multivector, CL22};
use faraday::fields::{
    boost_fields, conservation_report, density_maps, duality_report, equivalence_report,
    fields_from_potentials, gauge_report, synth, FieldState, GaugeProbe, GridSpec, SourceDerivs,
    TimeDerivs,
};
use faraday::sim::{
    evanescence_report, gaussian_monopole_state, measure_dispersion, monopole_gauss_check,
    plane_wave_state, DispersionSpec, Simulation,
};
use faraday::symbolic::{parse_corpus, run_corpus, IDENTITY_CORPUS, NEGATIVE_CONTROL_CORPUS};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::Instant;

/// The random 32^3 states shared by the equivalence and duality batteries:
/// even seeds massless, odd seeds massive.
fn shared_state(grid: GridSpec, i: u64) -> (FieldState, TimeDerivs) {
    let mass = if i % 2 == 0 { 0.0 } else { 0.7 };
    synth::random_state(grid, 9000 + i, mass, 1.0)
}

#[test]
fn corpus_identities_all_pass_and_corrupted_controls_all_fail() {
    let t = Instant::now();
    let cases = parse_corpus(IDENTITY_CORPUS).expect("shipped corpus parses");
    assert!(cases.len() >= 18, "only {} corpus identities", cases.len());
    assert!(cases.iter().any(|c| c.sig.q() == 3), "no indefinite-signature identities");
    assert!(cases.iter().any(|c| c.sig.q() == 0), "no definite-signature identities");
    let report = run_corpus(&cases);
    for out in &report.outcomes {
        assert!(out.passed, "[{}] failed:\n  {}", out.name, out.detail.join("\n  "));
    }
    let controls = parse_corpus(NEGATIVE_CONTROL_CORPUS).expect("control corpus parses");
    assert!(!controls.is_empty());
    let control_report = run_corpus(&controls);
    for out in &control_report.outcomes {
        assert!(!out.passed, "corrupted control [{}] was not rejected", out.name);
    }
    let dt = t.elapsed().as_secs_f64();
    assert!(dt < 1.0, "corpus run took {dt:.2}s, budget is 1s");
    println!(
        "PASS corpus: {} identities hold exactly, {} corrupted controls rejected ({dt:.2}s)",
        cases.len(),
        controls.len()
    );
}

#[test]
fn kernel_blade_products_match_the_permutation_oracle_exactly() {
    let t = Instant::now();
    let mut checked = 0usize;
    for sig in four_signatures() {
        for a in 0..sig.blade_count() as u16 {
            for b in 0..sig.blade_count() as u16 {
                assert_eq!(
                    blade_product(sig, a, b),
                    oracle_blade_product(sig, a, b),
                    "{sig}: blades {a:#06b} * {b:#06b}"
                );
                checked += 1;
            }
        }
    }
    // the split signature is the one where the unit 4-volume squares to +1
    let i = Multivector::<f64>::pseudoscalar(CL22);
    assert_eq!(i.geometric(&i), Multivector::scalar(CL22, 1.0));
    let dt = t.elapsed().as_secs_f64();
    assert!(dt < 1.0, "oracle sweep took {dt:.2}s, budget is 1s");
    println!(
        "PASS kernel: {checked} blade pairs match the sorting oracle; split-signature I^2 = +1 ({dt:.2}s)"
    );
}

#[test]
fn unified_residual_matches_component_residuals_on_random_states() {
    let t = Instant::now();
    let grid = GridSpec::cube(32, 1.0).unwrap();
    let mut worst = 0.0f64;
    for i in 0..100 {
        let (state, derivs) = shared_state(grid, i);
        let rep = equivalence_report(&state, &derivs);
        assert!(rep.unified_linf > 1.0, "state {i} is degenerate");
        worst = worst.max(rep.max_diff);
    }
    let dt = t.elapsed().as_secs_f64();
    assert!(worst <= 1e-12, "max deviation {worst:.3e} exceeds 1e-12");
    assert!(dt < 30.0, "equivalence battery took {dt:.1}s, budget is 30s");
    println!("PASS equivalence: 100 random 32^3 states, max per-cell deviation {worst:.3e} ({dt:.1}s)");
}

#[test]
fn duality_quarter_turn_negates_action_exactly_and_keeps_energy() {
    let t = Instant::now();
    let grid = GridSpec::cube(32, 1.0).unwrap();
    let mut worst_energy = 0.0f64;
    let mut worst_flux = 0.0f64;
    for i in 0..100 {
        let (state, derivs) = shared_state(grid, i);
        let rep = duality_report(&state, &derivs, FRAC_PI_2).unwrap();
        assert!(rep.exact_quarter_turn);
        assert_eq!(rep.action_negation_linf, Some(0.0), "state {i}: action not exactly negated");
        assert!(rep.energy_diff_linf <= 1e-12, "state {i}: energy moved {:e}", rep.energy_diff_linf);
        assert!(rep.flux_diff_linf <= 1e-12, "state {i}: flux moved {:e}", rep.flux_diff_linf);
        assert!(rep.rotated_residual_agreement <= 1e-12);
        worst_energy = worst_energy.max(rep.energy_diff_linf);
        worst_flux = worst_flux.max(rep.flux_diff_linf);
    }
    // energy density is invariant at every angle, not just quarter turns
    let (state, derivs) = shared_state(grid, 1);
    let mut worst_any_angle = 0.0f64;
    for j in 0..10 {
        let alpha = 0.155 + 0.31 * j as f64;
        let rep = duality_report(&state, &derivs, alpha).unwrap();
        assert!(!rep.exact_quarter_turn);
        assert!(rep.energy_diff_linf <= 1e-12, "alpha {alpha}: energy moved {:e}", rep.energy_diff_linf);
        worst_any_angle = worst_any_angle.max(rep.energy_diff_linf);
    }
    let dt = t.elapsed().as_secs_f64();
    println!(
        "PASS duality: 100 quarter turns negate the action exactly \
         (energy drift {worst_energy:.1e}, flux drift {worst_flux:.1e}); \
         10 generic angles keep energy to {worst_any_angle:.1e} ({dt:.1}s)"
    );
}

#[test]
fn gauge_shift_preserves_fields_and_satisfies_the_dot_expansion() {
    let t = Instant::now();
    let grid = GridSpec::cube(32, 1.0).unwrap();
    let mut worst_field = 0.0f64;
    let mut worst_expansion = 0.0f64;
    let mut smallest_witness = f64::INFINITY;
    for i in 0..20 {
        // random potentials with fields derived through the same discrete
        // operators the residual uses, plus a random band-limited chi
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + i);
        let a0 = synth::band_limited_scalar(grid, &mut rng, 2, 0.4);
        let a = synth::band_limited_vector(grid, &mut rng, 2, 0.4);
        let da0_dt = synth::band_limited_scalar(grid, &mut rng, 2, 0.4);
        let da_dt = synth::band_limited_vector(grid, &mut rng, 2, 0.4);
        let chi = synth::band_limited_scalar(grid, &mut rng, 2, 0.1);
        let dchi_dt = synth::band_limited_scalar(grid, &mut rng, 2, 0.1);
        let (e, b) = fields_from_potentials(&a0, &a, &da_dt, 1.0);
        let mut state = FieldState::vacuum(grid, 0.0, 1.0);
        state.a0 = a0;
        state.a = a;
        state.e = e;
        state.b = b;
        let derivs = TimeDerivs::zero(grid);
        let probe = GaugeProbe { chi, dchi_dt };
        let rep = gauge_report(&state, &derivs, &da0_dt, &da_dt, &probe).unwrap();
        assert!(rep.e_change_linf <= 1e-12, "pair {i}: E moved {:e}", rep.e_change_linf);
        assert!(rep.b_change_linf <= 1e-12, "pair {i}: B moved {:e}", rep.b_change_linf);
        assert!(rep.dot_expansion_linf <= 1e-12, "pair {i}: expansion off {:e}", rep.dot_expansion_linf);
        assert!(rep.witness_l2 > 0.0, "pair {i}: gauge witness vanished");
        worst_field = worst_field.max(rep.e_change_linf).max(rep.b_change_linf);
        worst_expansion = worst_expansion.max(rep.dot_expansion_linf);
        smallest_witness = smallest_witness.min(rep.witness_l2);
    }
    let dt = t.elapsed().as_secs_f64();
    println!(
        "PASS gauge: 20 potential shifts leave F to {worst_field:.1e}, \
         expansion holds to {worst_expansion:.1e}, witness >= {smallest_witness:.2e} ({dt:.1}s)"
    );
}

#[test]
fn rotor_boosts_keep_both_invariants_and_move_energy_density() {
    let t = Instant::now();
    let grid = GridSpec::cube(32, 1.0).unwrap();
    let mut worst_action = 0.0f64;
    let mut worst_pseudo = 0.0f64;
    let mut max_energy_moved = 0.0f64;
    for i in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + i);
        let e = synth::band_limited_vector(grid, &mut rng, 2, 1.0);
        let b = synth::band_limited_vector(grid, &mut rng, 2, 1.0);
        let axis = (i % 3) as usize;
        let rapidity = 0.2 + 0.04 * i as f64;
        let (be, bb) = boost_fields(&e, &b, axis, rapidity);
        let mut before = FieldState::vacuum(grid, 0.0, 1.0);
        before.e = e;
        before.b = b;
        let mut after = before.clone();
        after.e = be;
        after.b = bb;
        let maps0 = density_maps(&before);
        let maps1 = density_maps(&after);
        let d_action = maps1.action.sub(&maps0.action).linf();
        let d_pseudo = maps1.pseudo.sub(&maps0.pseudo).linf();
        assert!(d_action <= 1e-12, "pair {i}: scalar invariant moved {d_action:e}");
        assert!(d_pseudo <= 1e-12, "pair {i}: pseudoscalar invariant moved {d_pseudo:e}");
        worst_action = worst_action.max(d_action);
        worst_pseudo = worst_pseudo.max(d_pseudo);
        max_energy_moved = max_energy_moved.max(maps1.energy.sub(&maps0.energy).linf());
    }
    assert!(
        max_energy_moved > 1e-6,
        "no boost moved the energy density; the non-invariance witness failed"
    );
    let dt = t.elapsed().as_secs_f64();
    println!(
        "PASS boosts: 20 rotor boosts keep both invariants \
         (action {worst_action:.1e}, pseudo {worst_pseudo:.1e}); \
         energy density moved up to {max_energy_moved:.2e} ({dt:.1}s)"
    );
}

#[test]
fn lattice_dispersion_tracks_the_massive_branch_at_second_order() {
    let t = Instant::now();
    let k = TAU; // mode 1 on a unit box
    let mut fine_half_mass = None;
    for mass in [0.0, k / 2.0, k] {
        let r = measure_dispersion(DispersionSpec { nx: 128, mode: 1, mass, c: 1.0, periods: 6 })
            .unwrap();
        assert!(
            r.rel_error < 0.01,
            "mass {mass:.3}: omega off by {:.3e} relative",
            r.rel_error
        );
        if mass == k / 2.0 {
            fine_half_mass = Some(r);
        }
    }
    let fine = fine_half_mass.unwrap();
    let coarse =
        measure_dispersion(DispersionSpec { nx: 64, mode: 1, mass: k / 2.0, c: 1.0, periods: 6 })
            .unwrap();
    let ratio = coarse.rel_error / fine.rel_error;
    assert!(
        (3.2..=4.8).contains(&ratio),
        "error ratio 64->128 is {ratio:.2}, expected second order (about 4)"
    );
    let dt = t.elapsed().as_secs_f64();
    assert!(dt < 120.0, "dispersion battery took {dt:.1}s, budget is 120s");
    println!(
        "PASS dispersion: three masses within 1% at nx=128 (worst {:.2e}); \
         halving h cuts the error {ratio:.2}x ({dt:.1}s)",
        fine.rel_error.max(coarse.rel_error / 4.0)
    );
}

#[test]
fn euclidean_slab_decays_at_omega_over_c_without_transmission() {
    let t = Instant::now();
    let rep = evanescence_report(4.0 * PI, 1.0, 128, 1.0).unwrap();
    assert!(
        rep.rel_error < 0.02,
        "decay rate off by {:.3e} relative (kappa fit {:.4} vs {:.4})",
        rep.rel_error,
        rep.kappa_fit,
        rep.kappa_expected
    );
    assert!(
        rep.tail_amplitude < 1e-4,
        "transmitted amplitude {:.3e} beyond ten decay lengths",
        rep.tail_amplitude
    );
    let dt = t.elapsed().as_secs_f64();
    println!(
        "PASS evanescence: kappa = {:.4} vs omega/c = {:.4} ({:.2}% off), \
         tail {:.1e} ({dt:.2}s)",
        rep.kappa_fit,
        rep.kappa_expected,
        100.0 * rep.rel_error,
        rep.tail_amplitude
    );
}

#[test]
fn monopole_flux_equals_enclosed_charge_for_nested_boxes() {
    let t = Instant::now();
    let rep = monopole_gauss_check(1.0, 4.0, 64).unwrap();
    let ratios = rep.ratio.expect("nonzero charge yields flux ratios");
    for (r, half) in ratios.iter().zip(rep.box_half_cells) {
        assert!(
            (0.99..=1.01).contains(r),
            "box of half-width {half} cells: flux/4 pi e_m = {r:.6}"
        );
    }
    let spread = rep.ratio_difference.unwrap();
    assert!(spread < 0.005, "nested boxes disagree by {spread:.4}");
    let dt = t.elapsed().as_secs_f64();
    println!(
        "PASS monopole: flux ratios {:.6} and {:.6}, boxes agree to {spread:.1e} ({dt:.1}s)",
        ratios[0], ratios[1]
    );
}

/// Evolve the oblique massive mode for 10^4 steps and return the largest
/// electric continuity residual seen at twenty evenly spaced readouts.
/// The magnetic residual must stay exactly zero the whole way (no magnetic
/// currents anywhere in the run).
fn lorenz_run_worst_residual(n: [usize; 3]) -> f64 {
    let grid = GridSpec::new(n, [1.0, 1.0, 1.0]).unwrap();
    let state = plane_wave_state(grid, [1, 2, 0], [2.0, -1.0, 0.0], 1.0, 3.0, 1.0).unwrap();
    let dt = 0.4 * grid.min_h();
    let mut sim = Simulation::new(&state, dt).unwrap();
    let zero = SourceDerivs::zero(grid);
    let mut worst = conservation_report(&sim.colocated_state(), &zero).electric_linf;
    for _ in 0..20 {
        for _ in 0..500 {
            sim.step();
        }
        let rep = conservation_report(&sim.colocated_state(), &zero);
        worst = worst.max(rep.electric_linf);
        assert_eq!(rep.magnetic_linf, 0.0, "magnetic continuity broke during the wave run");
    }
    worst
}

#[test]
fn charge_continuity_converges_second_order_and_monopole_current_stays_zero() {
    let t = Instant::now();
    let coarse = lorenz_run_worst_residual([16, 16, 8]);
    let fine = lorenz_run_worst_residual([32, 32, 16]);
    let ratio = coarse / fine;
    assert!(
        (3.2..=4.8).contains(&ratio),
        "continuity residual ratio {ratio:.2} between h and h/2, expected about 4"
    );

    // a magnetic charge at rest: its current is identically zero and stays so
    let grid = GridSpec::cube(32, 1.0).unwrap();
    let state = gaussian_monopole_state(grid, 1.0, 3.0, 0.0, 1.0);
    let mut sim = Simulation::new(&state, 0.4 * grid.min_h()).unwrap();
    let zero = SourceDerivs::zero(grid);
    for _ in 0..5 {
        for _ in 0..100 {
            sim.step();
        }
        let rep = conservation_report(&sim.colocated_state(), &zero);
        assert_eq!(rep.magnetic_linf, 0.0, "static monopole grew a magnetic current");
        assert_eq!(rep.magnetic_l2, 0.0);
    }
    let dt = t.elapsed().as_secs_f64();
    println!(
        "PASS conservation: electric continuity residual drops {ratio:.2}x when h halves \
         ({coarse:.3e} -> {fine:.3e}); magnetic current exactly zero on both runs ({dt:.1}s)"
    );
}
