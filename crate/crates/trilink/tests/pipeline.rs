//! Cross-route consistency of the spectral pipeline on whole links.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trilink::gauss::{subtorus_degree, Axis};
use trilink::link::{preset, transform_link, Link3};
use trilink::spectral::{
    characteristic_form, compute_mu, dft3, idft3, least_norm_primitive, mu_fourier,
    mu_fourier_modes, mu_helicity, mu_spherical, mu_whitehead, sample_gauss_field,
    sample_spherical_field, spectral_partial_field, whitehead_pairing, Grid3Field, MuMethod,
};
use trilink::{Mat3, Vec3};

#[test]
fn whitehead_equals_fourier_at_matched_truncation() {
    for name in ["borromean", "split-unlink"] {
        let link = preset(name).unwrap();
        let mu_f = {
            let coeffs = dft3(&characteristic_form(&link, 32).unwrap());
            mu_fourier(&coeffs).unwrap()
        };
        let mu_w = mu_whitehead(&link, 32).unwrap();
        assert!(
            (mu_f - mu_w).abs() < 1e-9,
            "{name}: fourier {mu_f} vs whitehead {mu_w}"
        );
    }
}

#[test]
fn helicity_matches_mode_restricted_fourier() {
    let link = preset("borromean").unwrap();
    let hel = mu_helicity(&link, 16, 8).unwrap();
    let coeffs = dft3(&characteristic_form(&link, 16).unwrap());
    let restricted = mu_fourier_modes(&coeffs, 8).unwrap();
    println!("helicity = {hel}, restricted fourier = {restricted}, diff = {:.3e}", (hel - restricted).abs());
    assert!((hel - restricted).abs() < 1e-6);

    let split = preset("split-unlink").unwrap();
    let hel0 = mu_helicity(&split, 16, 8).unwrap();
    assert!(hel0.abs() < 1e-6, "split helicity = {hel0}");
}

/// Perturbing the primitive by an exact 1-form ∇h leaves the pairing
/// unchanged up to the (spectrally small) discrete divergence residue.
/// The single-mode perturbation d(cos s) sits at a mode whose residue
/// vanishes for this link, so it holds to machine precision; random
/// perturbations are bounded by the aliasing tail, which drops below 1e-9
/// comfortably at N = 192 for the borromean field.
#[test]
fn whitehead_pairing_is_gauge_independent() {
    let link = preset("borromean").unwrap();
    let n = 192usize;
    let form = characteristic_form(&link, n).unwrap();
    let coeffs = dft3(&form);
    let alpha = idft3(&least_norm_primitive(&coeffs).unwrap());
    let base = whitehead_pairing(&alpha, &form);
    let step = TAU / n as f64;

    // d(cos s) = (−sin s, 0, 0)
    let mut single = alpha.clone();
    for j in 0..n {
        let g = Vec3::new(-((j as f64) * step).sin(), 0.0, 0.0);
        for k in 0..n {
            for l in 0..n {
                single.set(j, k, l, single.get(j, k, l) + g);
            }
        }
    }
    let single_drift = (whitehead_pairing(&single, &form) - base).abs();
    println!("d(cos s) gauge drift at N={n}: {single_drift:.3e}");
    assert!(single_drift < 1e-9);

    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        // random real trig polynomial with |m_i| ≤ 2
        let mut modes = Vec::new();
        for _ in 0..6 {
            modes.push((
                (
                    rng.random_range(-2i64..=2),
                    rng.random_range(-2i64..=2),
                    rng.random_range(-2i64..=2),
                ),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ));
        }
        // ∇h per node via precomputed one-axis phase tables:
        // cos/sin of (m_s s + m_t t + m_u u) from products of e^{i m·θ}
        let mut perturbed = alpha.clone();
        for ((ms, mt, mu_), ac, asn) in &modes {
            let m = Vec3::new(*ms as f64, *mt as f64, *mu_ as f64);
            let table = |mode: i64| -> Vec<(f64, f64)> {
                (0..n)
                    .map(|i| (mode as f64 * i as f64 * step).sin_cos())
                    .collect()
            };
            let (es, et, eu) = (table(*ms), table(*mt), table(*mu_));
            for j in 0..n {
                for k in 0..n {
                    // e^{i(a+b)} components for the two outer axes
                    let sc = es[j].0 * et[k].1 + es[j].1 * et[k].0;
                    let cc = es[j].1 * et[k].1 - es[j].0 * et[k].0;
                    for l in 0..n {
                        let sin_angle = sc * eu[l].1 + cc * eu[l].0;
                        let cos_angle = cc * eu[l].1 - sc * eu[l].0;
                        let g = m * (asn * cos_angle - ac * sin_angle);
                        perturbed.set(j, k, l, perturbed.get(j, k, l) + g);
                    }
                }
            }
        }
        let shifted = whitehead_pairing(&perturbed, &form);
        worst = worst.max((shifted - base).abs());
    }
    println!("random gauge drift at N={n}: {worst:.3e}");
    assert!(worst < 1e-8, "gauge drift {worst:.3e} at N={n}");
}

#[test]
fn characteristic_form_mean_vanishes_for_borromean() {
    let link = preset("borromean").unwrap();
    let coeffs = dft3(&characteristic_form(&link, 64).unwrap());
    let c0 = coeffs.c0_norm();
    println!("borromean |c0| at N=64: {c0:.3e}");
    assert!(c0 < 1e-6);
}

/// Spectral partials of the sampled key map against 4th-order central
/// differences on the same grid. The discrepancy is the oracle's own O(h⁴)
/// truncation error: it meets 1e-6 outright on the tame split-unlink field,
/// and on the borromean field (|F⁽⁵⁾| ~ 3e4) it must fall at the h⁴ rate
/// under grid refinement.
#[test]
fn spectral_partials_match_finite_differences() {
    let fd_worst = |link: &Link3, n: usize| -> f64 {
        let field = sample_gauss_field(link, n).unwrap();
        let parts = [
            spectral_partial_field(&field, 0),
            spectral_partial_field(&field, 1),
            spectral_partial_field(&field, 2),
        ];
        let h = TAU / n as f64;
        let wrap = |i: i64| -> usize { i.rem_euclid(n as i64) as usize };
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let mut worst = 0.0f64;
        for _ in 0..500 {
            let (j, k, l) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            for axis in 0..3 {
                let sample = |o: i64| -> Vec3 {
                    match axis {
                        0 => field.get(wrap(j as i64 + o), k, l),
                        1 => field.get(j, wrap(k as i64 + o), l),
                        _ => field.get(j, k, wrap(l as i64 + o)),
                    }
                };
                let fd =
                    (sample(-2) - sample(2) + (sample(1) - sample(-1)) * 8.0) / (12.0 * h);
                worst = worst.max((fd - parts[axis].get(j, k, l)).norm());
            }
        }
        worst
    };

    let split = preset("split-unlink").unwrap();
    let split_diff = fd_worst(&split, 128);
    println!("split-unlink N=128: max |spectral − FD4| = {split_diff:.3e}");
    assert!(split_diff < 1e-6);

    let borromean = preset("borromean").unwrap();
    let coarse = fd_worst(&borromean, 64);
    let fine = fd_worst(&borromean, 128);
    println!("borromean: FD4 discrepancy {coarse:.3e} at N=64 → {fine:.3e} at N=128");
    assert!(fine < coarse / 8.0, "expected ~h⁴ decay: {coarse} → {fine}");
    assert!(fine < 2e-2);
}

#[test]
fn spherical_route_rounds_to_the_same_integer() {
    for (name, want) in [("borromean", -1i64), ("split-unlink", 0)] {
        let link = preset(name).unwrap();
        let spherical = mu_spherical(&link, 64).unwrap();
        let fourier = compute_mu(&link, MuMethod::Fourier, 64, None).unwrap();
        assert_eq!(spherical.round() as i64, fourier.round() as i64, "{name}");
        assert_eq!(spherical.round() as i64, want, "{name}: {spherical}");
    }
}

#[test]
fn translation_leaves_the_sampled_field_unchanged() {
    let link = preset("borromean").unwrap();
    let moved = transform_link(&link, &Mat3::IDENTITY, Vec3::new(5.0, 5.0, 5.0), 1.0).unwrap();
    let f0 = sample_gauss_field(&link, 16).unwrap();
    let f1 = sample_gauss_field(&moved, 16).unwrap();
    let mut worst = 0.0f64;
    for (a, b) in f0.data().iter().zip(f1.data()) {
        worst = worst.max((*a - *b).norm());
    }
    // equality is analytic; floating-point addition leaves a rounding residue
    println!("translation residue: {worst:.3e}");
    assert!(worst < 1e-12);
}

#[test]
fn mu_is_invariant_under_orientation_preserving_similarity() {
    let link = preset("borromean").unwrap();
    let base = compute_mu(&link, MuMethod::Fourier, 32, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let axis = Vec3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    );
    let rot = Mat3::rotation(axis, rng.random_range(0.0..TAU));
    let moved = transform_link(&link, &rot, Vec3::new(1.0, -2.0, 0.5), 1.7).unwrap();
    let mu = compute_mu(&moved, MuMethod::Fourier, 32, None).unwrap();
    println!("similarity drift at N=32: {:.3e}", (mu - base).abs());
    assert!((mu - base).abs() < 1e-6);
}

#[test]
fn permutation_behavior_of_mu() {
    let link = preset("borromean").unwrap();
    let base = compute_mu(&link, MuMethod::Fourier, 32, None).unwrap();

    // cyclic permutation preserves μ
    let cycled = Link3::new(link.cy().clone(), link.cz().clone(), link.cx().clone()).unwrap();
    let mu_cycled = compute_mu(&cycled, MuMethod::Fourier, 32, None).unwrap();
    assert_eq!(mu_cycled.round() as i64, base.round() as i64);

    // transposition: μ still rounds to an integer; record the observed value
    let swapped = Link3::new(link.cy().clone(), link.cx().clone(), link.cz().clone()).unwrap();
    let mu_swapped = compute_mu(&swapped, MuMethod::Fourier, 32, None).unwrap();
    println!("mu after transposing X and Y: {mu_swapped}");
    assert!((mu_swapped - mu_swapped.round()).abs() < 0.1);
}

#[test]
fn translation_moves_spherical_samples_but_not_mu() {
    // the stereographic lift is not translation invariant, so the sampled
    // spherical field genuinely changes; the rounded μ does not. Larger
    // shifts push the lifted link toward −1 on the 3-sphere and need finer
    // grids to stay resolved, so keep the shift moderate at N=64.
    let link = preset("borromean").unwrap();
    let moved = transform_link(&link, &Mat3::IDENTITY, Vec3::new(2.0, 2.0, 2.0), 1.0).unwrap();
    let f0 = sample_spherical_field(&link, 16).unwrap();
    let f1 = sample_spherical_field(&moved, 16).unwrap();
    let max_shift = f0
        .data()
        .iter()
        .zip(f1.data())
        .map(|(a, b)| (*a - *b).norm())
        .fold(0.0f64, f64::max);
    assert!(max_shift > 1e-2, "spherical samples should move: {max_shift}");

    let mu0 = mu_spherical(&link, 64).unwrap();
    let mu1 = mu_spherical(&moved, 64).unwrap();
    assert_eq!(mu0.round() as i64, mu1.round() as i64);
    assert_eq!(mu0.round() as i64, -1);
}

#[test]
fn reversed_borromean_has_mu_plus_one() {
    let link = preset("borromean-reversed").unwrap();
    let mu = compute_mu(&link, MuMethod::Fourier, 64, None).unwrap();
    assert!((mu - 1.0).abs() < 1e-2, "mu = {mu}");
}

#[test]
fn subtorus_degree_is_slice_independent() {
    let link = preset("borromean").unwrap();
    for axis in Axis::ALL {
        let at_zero = subtorus_degree(&link, axis, 0.0, 128).unwrap();
        let at_pi = subtorus_degree(&link, axis, PI, 128).unwrap();
        println!("axis {axis}: deg(0) = {at_zero:.3e}, deg(pi) = {at_pi:.3e}");
        assert!((at_zero - at_pi).abs() < 1e-6);
    }
}

#[test]
fn truncation_error_shrinks_with_n() {
    let link = preset("borromean").unwrap();
    let e32 = (compute_mu(&link, MuMethod::Fourier, 32, None).unwrap() + 1.0).abs();
    let e64 = (compute_mu(&link, MuMethod::Fourier, 64, None).unwrap() + 1.0).abs();
    assert!(e64 < e32, "error should shrink: {e32} vs {e64}");
}

/// The split field stays far from zero and its slice integrals vanish.
#[test]
fn split_unlink_degrees_and_mean() {
    let link = preset("split-unlink").unwrap();
    let form = characteristic_form(&link, 32).unwrap();
    // per-slice integral of p over (t,u) at fixed s ≈ degree 0
    let n = form.n();
    let weight = (TAU / n as f64).powi(2);
    for j in [0usize, 5, 11] {
        let mut slice = 0.0;
        for k in 0..n {
            for l in 0..n {
                slice += form.get(j, k, l).x;
            }
        }
        assert!((slice * weight).abs() < 1e-6);
    }
    let grid = Grid3Field::zeros(8);
    assert_eq!(grid.n(), 8);
}
