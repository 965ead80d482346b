use num_complex::Complex64;
use powergin::exact::{
    charpoly_laurent, cue_charpoly_moment, cue_product_stat, decomposition_identity_residual, eval_monomial_symmetric,
    evaluate_terms, ginibre_product_stat, gue_block_product_stat, gue_det_moment, gue_det_odd_moment,
    gue_det_power_moment, gue_product_stat, power_ginibre_product_stat, radial_product_stat, spanning_coefficients,
    translation_invariance_check, ExactError, Laurent, MixedPolynomial, ShiftTable,
};
use powergin::numerics::quadrature::integrate;
use powergin::numerics::{log_factorial, log_gamma};
use powergin::samplers::{sample_cue, sample_ginibre, sample_gue, RadialPotential, RngStream};
use proptest::prelude::*;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_poly(deg: u32, rng: &mut RngStream) -> MixedPolynomial {
    let mut p = MixedPolynomial::one();
    for a in 0..=deg {
        for b in 0..=deg - a {
            if rng.random_bool(0.6) {
                p.add_term(a, b, c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            }
        }
    }
    p
}

fn mc_mean(values: &[Complex64]) -> (Complex64, f64, f64) {
    let n = values.len() as f64;
    let mean: Complex64 = values.iter().sum::<Complex64>() / n;
    let vr = values.iter().map(|v| (v.re - mean.re).powi(2)).sum::<f64>() / (n - 1.0);
    let vi = values.iter().map(|v| (v.im - mean.im).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (vr / n).sqrt(), (vi / n).sqrt())
}

#[test]
fn single_ginibre_point_is_complex_gaussian() {
    // E[z^a conj(z)^b] = a! when a = b, else 0
    let p = MixedPolynomial::from_terms([((0, 0), c(0.5, 0.0)), ((2, 2), c(1.0, 1.0)), ((3, 1), c(7.0, 0.0)), ((1, 0), c(2.0, 0.0))]);
    let got = ginibre_product_stat(1, &p).unwrap();
    assert!((got - c(2.5, 2.0)).norm() < 1e-13);
}

#[test]
fn ginibre_radial_statistic_factorizes_over_gamma_radii() {
    // |z|^2 of unscaled Ginibre eigenvalues are independent Gamma(i, 1)
    let coeffs = [1.0, 0.3, -0.05, 0.002];
    let g = MixedPolynomial::radial(&coeffs);
    for n in 1..=10 {
        let mut want = 1.0;
        for i in 1..=n {
            let e: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(q, &cq)| cq * (log_gamma((i + q) as f64) - log_gamma(i as f64)).exp())
                .sum();
            want *= e;
        }
        let got = ginibre_product_stat(n, &g).unwrap();
        assert!((got.re - want).abs() <= 1e-9 * want.abs() && got.im.abs() <= 1e-9 * want.abs(), "n={n}");
    }
}

#[test]
fn ginibre_characteristic_polynomial_second_moment() {
    // E|det(G - z)|^2 = N! sum_{j<=N} |z|^(2j)/j!
    let z = c(0.7, -1.2);
    let g = MixedPolynomial::from_terms([
        ((0, 0), c(z.norm_sqr(), 0.0)),
        ((1, 0), -z.conj()),
        ((0, 1), -z),
        ((1, 1), c(1.0, 0.0)),
    ]);
    for n in 1..=8u64 {
        let s: f64 = (0..=n).map(|j| (j as f64 * z.norm_sqr().ln() - log_factorial(j)).exp()).sum();
        let want = log_factorial(n).exp() * s;
        let got = ginibre_product_stat(n as usize, &g).unwrap();
        assert!((got - c(want, 0.0)).norm() <= 1e-10 * want, "n={n}: {got} vs {want}");
    }
}

#[test]
fn ginibre_mixed_statistic_agrees_with_monte_carlo() {
    let g = MixedPolynomial::from_terms([
        ((0, 0), c(1.0, 0.0)),
        ((1, 0), c(0.3, 0.0)),
        ((0, 1), c(0.0, -0.2)),
        ((1, 1), c(0.2, 0.0)),
        ((2, 1), c(0.05, 0.05)),
        ((0, 2), c(-0.1, 0.0)),
    ]);
    let n = 3;
    let exact = ginibre_product_stat(n, &g).unwrap();
    let mut rng = RngStream::new(77);
    let values: Vec<Complex64> = (0..20_000)
        .map(|_| {
            let s = sample_ginibre(n, &mut rng).unwrap();
            s.points.iter().map(|&l| g.eval(l * (n as f64).sqrt())).product()
        })
        .collect();
    let (mean, se_re, se_im) = mc_mean(&values);
    assert!((mean.re - exact.re).abs() < 4.5 * se_re, "{mean} vs {exact}");
    assert!((mean.im - exact.im).abs() < 4.5 * se_im, "{mean} vs {exact}");
}

#[test]
fn decomposition_residual_is_tiny_for_random_polynomials() {
    let mut rng = RngStream::new(404);
    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        for m in 1..=n {
            for _ in 0..20 {
                let p = random_poly(3, &mut rng);
                worst = worst.max(decomposition_identity_residual(n, m, &p).unwrap());
            }
        }
    }
    assert!(worst <= 1e-9, "worst residual {worst:e}");
}

#[test]
fn power_block_radial_statistic_is_a_gamma_power_product() {
    // block radii: |w|^2 = gamma_i^M over i in the residue class
    let coeffs = [1.0, 0.1, 0.01];
    let g = MixedPolynomial::radial(&coeffs);
    for &(n, m) in &[(5usize, 2usize), (7, 3), (6, 6)] {
        for k in 1..=m {
            let mut want = 1.0;
            for i in (k..=n).step_by(m) {
                let e: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(q, &cq)| cq * (log_gamma((i + m * q) as f64) - log_gamma(i as f64)).exp())
                    .sum();
                want *= e;
            }
            let got = power_ginibre_product_stat(n, m, k, &g).unwrap();
            assert!((got.re - want).abs() <= 1e-9 * want, "n={n} m={m} k={k}");
        }
    }
}

#[test]
fn power_block_with_no_indices_is_one() {
    let g = MixedPolynomial::radial(&[2.0, 1.0]);
    let v = power_ginibre_product_stat(2, 4, 3, &g).unwrap();
    assert_eq!(v, c(1.0, 0.0));
}

#[test]
fn radial_ensemble_statistic_matches_quadrature() {
    // truncated unitary weight (1-t)^(n-1) on [0,1]
    let n_removed = 3u32;
    let v = RadialPotential::truncated_unitary(n_removed);
    let coeffs = [1.0, -0.4, 0.2];
    let g = MixedPolynomial::radial(&coeffs);
    let moment = |alpha: f64| {
        integrate(|t| t.powf(alpha - 1.0) * (1.0 - t).powi(n_removed as i32 - 1), 0.0, 1.0, 1e-14, 1e-13).unwrap()
    };
    for n in 1..=5 {
        let mut want = 1.0;
        for i in 1..=n {
            let e: f64 = coeffs.iter().enumerate().map(|(q, &cq)| cq * moment((i + q) as f64) / moment(i as f64)).sum();
            want *= e;
        }
        let got = radial_product_stat(n, &v, &g).unwrap();
        assert!((got.re - want).abs() <= 1e-9 * want.abs(), "n={n}: {got} vs {want}");
    }
}

#[test]
fn infinite_moment_is_reported() {
    let v = RadialPotential::spherical(2);
    let g = MixedPolynomial::radial(&[1.0, 0.0, 0.0, 1.0]);
    assert!(matches!(radial_product_stat(2, &v, &g), Err(ExactError::InfiniteMoment { .. })));
}

#[test]
fn cue_pascal_minor_matches_product_formula() {
    for n in 0..=12 {
        for m in 0..=5 {
            for k in 0..=5 {
                let r = cue_charpoly_moment(n, m, k).unwrap();
                assert!(r.relative_difference() <= 1e-9, "n={n} m={m} k={k}: {r:?}");
            }
        }
    }
}

#[test]
fn cue_toeplitz_route_matches_product_formula() {
    for n in 1..=6 {
        for &(m, k) in &[(1u32, 1u32), (2, 2), (3, 1), (2, 3)] {
            let toeplitz = cue_product_stat(n, &charpoly_laurent(m, k)).unwrap();
            let r = cue_charpoly_moment(n, m, k).unwrap();
            assert!((toeplitz - c(r.product_formula, 0.0)).norm() <= 1e-9 * r.product_formula.abs().max(1.0), "n={n} m={m} k={k}");
        }
    }
}

#[test]
fn cue_second_moment_of_characteristic_polynomial() {
    // E|det(1 + U)|^2 = N + 1
    let g: Laurent = [(-1, c(1.0, 0.0)), (0, c(2.0, 0.0)), (1, c(1.0, 0.0))].into_iter().collect();
    for n in 1..=10 {
        let v = cue_product_stat(n, &g).unwrap();
        assert!((v - c(n as f64 + 1.0, 0.0)).norm() < 1e-10);
    }
}

#[test]
fn cue_statistic_agrees_with_monte_carlo() {
    let g: Laurent = [(-2, c(0.2, 0.1)), (0, c(1.0, 0.0)), (1, c(0.5, 0.0)), (2, c(0.0, 0.3))].into_iter().collect();
    let n = 4;
    let exact = cue_product_stat(n, &g).unwrap();
    let mut rng = RngStream::new(5);
    let values: Vec<Complex64> = (0..20_000)
        .map(|_| {
            let s = sample_cue(n, &mut rng).unwrap();
            s.points.iter().map(|&u| g.iter().map(|(&j, &a)| a * u.powi(j)).sum::<Complex64>()).product()
        })
        .collect();
    let (mean, se_re, se_im) = mc_mean(&values);
    assert!((mean.re - exact.re).abs() < 4.5 * se_re, "{mean} vs {exact}");
    assert!((mean.im - exact.im).abs() < 4.5 * se_im, "{mean} vs {exact}");
}

#[test]
fn gue_det_moments_small_cases() {
    // N = 1: standard normal moments (2m-1)!!
    for m in 0..6u32 {
        let dfact: f64 = (1..=m).map(|i| (2 * i - 1) as f64).product();
        assert!((gue_det_moment(1, m) - dfact).abs() <= 1e-12 * dfact);
    }
    // N = 2: det H = ab - |c|^2 with a, b ~ N(0,1), |c|^2 ~ Exp(1)
    assert!((gue_det_odd_moment(2, 0) + 1.0).abs() < 1e-13);
    assert!((gue_det_moment(2, 1) - 3.0).abs() < 1e-12);
    assert_eq!(gue_det_odd_moment(3, 2), 0.0);
}

#[test]
fn gue_det_closed_form_matches_determinant_route() {
    for n in 1..=8 {
        for power in 0..=6u32 {
            let mut g = vec![0.0; power as usize + 1];
            g[power as usize] = 1.0;
            let det_route = gue_product_stat(n, &g).unwrap();
            let closed = gue_det_power_moment(n, power);
            assert!((det_route - closed).abs() <= 1e-9 * closed.abs().max(1.0), "n={n} p={power}: {det_route} vs {closed}");
        }
    }
}

#[test]
fn gue_det_moment_agrees_with_monte_carlo() {
    let mut rng = RngStream::new(9);
    let n = 3;
    let dets: Vec<f64> = (0..40_000)
        .map(|_| sample_gue(n, &mut rng).unwrap().points.iter().map(|z| z.re).product::<f64>())
        .collect();
    let sq: Vec<Complex64> = dets.iter().map(|d| c(d * d, 0.0)).collect();
    let (mean, se, _) = mc_mean(&sq);
    assert!((mean.re - gue_det_moment(n, 1)).abs() < 4.5 * se);
}

#[test]
fn gue_blocks_factor_even_statistics() {
    let h = [1.0, 0.5, 0.1];
    let mut g = vec![0.0; 5];
    for (q, &x) in h.iter().enumerate() {
        g[2 * q] = x;
    }
    for n in 1..=7 {
        let whole = gue_product_stat(n, &g).unwrap();
        let blocks = gue_block_product_stat(n, 1, &h).unwrap() * gue_block_product_stat(n, 2, &h).unwrap();
        assert!((whole - blocks).abs() <= 1e-10 * whole.abs(), "n={n}");
    }
}

#[test]
fn gue_rejects_mixed_parity() {
    assert!(matches!(gue_product_stat(3, &[1.0, 1.0]), Err(ExactError::MixedParity)));
}

#[test]
fn spanning_reconstructs_symmetric_monomial() {
    let mut rng = RngStream::new(123);
    let targets: [&[(u32, u32)]; 4] = [&[(1, 0)], &[(2, 1), (0, 1)], &[(1, 1), (1, 1), (2, 0)], &[(3, 0), (0, 2), (1, 1)]];
    for target in targets {
        for n in target.len()..=4 {
            let terms = spanning_coefficients(target, n).unwrap();
            for _ in 0..20 {
                let z: Vec<Complex64> = (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                let want = brute_symmetric(target, &z);
                let got = evaluate_terms(&terms, &z);
                assert!((got - want).norm() <= 1e-8 * want.norm().max(1.0), "target {target:?} n={n}");
                assert!((eval_monomial_symmetric(target, &z).unwrap() - want).norm() <= 1e-12 * want.norm().max(1.0));
            }
        }
    }
}

// Sum over all N! assignments divided by the stabilizer order.
fn brute_symmetric(target: &[(u32, u32)], z: &[Complex64]) -> Complex64 {
    let n = z.len();
    let mut t = target.to_vec();
    t.resize(n, (0, 0));
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = c(0.0, 0.0);
    let mut count = 0usize;
    permute(0, &mut perm, &mut |p| {
        total += (0..n).map(|i| z[i].powu(t[p[i]].0) * z[i].conj().powu(t[p[i]].1)).product::<Complex64>();
        count += 1;
    });
    let mut stab = 1.0;
    let mut sorted = t.clone();
    sorted.sort();
    let mut run = 1;
    for i in 1..=n {
        if i < n && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            stab *= (1..=run).product::<usize>() as f64;
            run = 1;
        }
    }
    assert_eq!(count, (1..=n).product::<usize>());
    total / stab
}

fn permute(k: usize, perm: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(k + 1, perm, f);
        perm.swap(k, i);
    }
}

#[test]
fn spanning_rejects_too_many_pairs() {
    assert!(matches!(spanning_coefficients(&[(1, 0), (0, 1), (2, 2)], 2), Err(ExactError::InvalidTarget(_))));
}

#[test]
fn shifted_determinants_are_translation_invariant() {
    let mut rng = RngStream::new(31);
    let shifts: Vec<(Complex64, Complex64)> = (0..8)
        .map(|_| (c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)), c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
        .collect();
    for table in [ShiftTable::Cue, ShiftTable::Gaussian] {
        for n in 1..=6 {
            let g = random_poly(2, &mut rng);
            let r = translation_invariance_check(table, &g, n, &shifts).unwrap();
            assert!(r <= 1e-9, "{table:?} n={n}: {r:e}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_identity_holds(seed in any::<u64>(), n in 1usize..7, m_frac in 0.0f64..1.0) {
        let m = 1 + ((n as f64 * m_frac) as usize).min(n - 1);
        let mut rng = RngStream::new(seed);
        let p = random_poly(2, &mut rng);
        prop_assert!(decomposition_identity_residual(n, m, &p).unwrap() <= 1e-9);
    }

    #[test]
    fn conjugate_polynomial_gives_conjugate_statistic(seed in any::<u64>(), n in 1usize..6) {
        // the Ginibre law is invariant under z -> conj(z)
        let mut rng = RngStream::new(seed);
        let p = random_poly(2, &mut rng);
        let q = MixedPolynomial::from_terms(p.terms().map(|(a, b, x)| ((b, a), x.conj())));
        let s = ginibre_product_stat(n, &p).unwrap();
        let t = ginibre_product_stat(n, &q).unwrap();
        prop_assert!((s.conj() - t).norm() <= 1e-10 * s.norm().max(1.0));
    }
}

#[test]
fn small_worked_cases() {
    let one = MixedPolynomial::one();
    for n in 1..=5 {
        assert!((ginibre_product_stat(n, &one).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        assert!((radial_product_stat(n, &RadialPotential::truncated_unitary(2), &one).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(decomposition_identity_residual(n, 1, &one).unwrap(), 0.0);
    }
    let zz = MixedPolynomial::monomial(1, 1, c(1.0, 0.0));
    // E[gamma_1 gamma_2] = 2
    assert!((ginibre_product_stat(2, &zz).unwrap() - c(2.0, 0.0)).norm() < 1e-13);
    // E[gamma_1^2] E[gamma_3^2] = 2 * 12
    assert!((power_ginibre_product_stat(4, 2, 1, &zz).unwrap() - c(24.0, 0.0)).norm() < 1e-12);
    let p = MixedPolynomial::from_terms([((0, 0), c(1.0, 0.0)), ((1, 0), c(1.0, 0.0)), ((1, 1), c(1.0, 0.0))]);
    assert!(decomposition_identity_residual(6, 2, &p).unwrap() <= 1e-9);
    assert!(decomposition_identity_residual(5, 5, &zz).unwrap() <= 1e-9);
    // 2x2 Toeplitz [[2,1],[1,2]]
    let g: Laurent = [(-1, c(1.0, 0.0)), (0, c(2.0, 0.0)), (1, c(1.0, 0.0))].into_iter().collect();
    assert!((cue_product_stat(2, &g).unwrap() - c(3.0, 0.0)).norm() < 1e-13);
    assert!((cue_charpoly_moment(2, 1, 1).unwrap().product_formula - 3.0).abs() < 1e-12);
    assert!((cue_charpoly_moment(4, 0, 0).unwrap().pascal_minor - 1.0).abs() < 1e-12);
    assert!(cue_charpoly_moment(3, 2, 0).unwrap().relative_difference() < 1e-10);
    assert!((gue_product_stat(1, &[0.0, 0.0, 1.0]).unwrap() - 1.0).abs() < 1e-13);
    assert!((gue_product_stat(3, &[0.0, 0.0, 1.0]).unwrap() - gue_det_moment(3, 1)).abs() < 1e-10 * gue_det_moment(3, 1));
}

#[test]
fn gue_two_point_second_moment_by_quadrature() {
    // E[(x1 x2)^2] under (x1-x2)^2 e^(-(x1^2+x2^2)/2)
    let inner = |x1: f64, f: &dyn Fn(f64, f64) -> f64| integrate(|x2| f(x1, x2), -12.0, 12.0, 1e-13, 1e-12).unwrap();
    let w = |x1: f64, x2: f64| (x1 - x2).powi(2) * (-(x1 * x1 + x2 * x2) / 2.0).exp();
    let num = integrate(|x1| inner(x1, &|a, b| w(a, b) * (a * b).powi(2)), -12.0, 12.0, 1e-12, 1e-11).unwrap();
    let den = integrate(|x1| inner(x1, &w), -12.0, 12.0, 1e-12, 1e-11).unwrap();
    assert!((num / den - gue_det_moment(2, 1)).abs() < 1e-8);
}

#[test]
fn spanning_single_pair_is_one_product() {
    let terms = spanning_coefficients(&[(2, 1), (2, 1), (2, 1)], 3).unwrap();
    assert_eq!(terms.len(), 1);
    assert!((terms[0].weight - c(1.0, 0.0)).norm() < 1e-15);
    // power sum and e_1 in |Z|^2
    let z = [c(0.3, 0.4), c(-0.7, 0.1)];
    let t = spanning_coefficients(&[(1, 0)], 2).unwrap();
    assert!((evaluate_terms(&t, &z) - (z[0] + z[1])).norm() < 1e-10);
    let z3 = [c(0.3, 0.4), c(-0.7, 0.1), c(0.2, -0.9)];
    let t = spanning_coefficients(&[(1, 1)], 3).unwrap();
    let e1: f64 = z3.iter().map(|w| w.norm_sqr()).sum();
    assert!((evaluate_terms(&t, &z3) - c(e1, 0.0)).norm() < 1e-8);
}

#[test]
fn cue_charpoly_translation_invariance() {
    let mut g = MixedPolynomial::zero();
    // (1 - z)^2 (1 - conj z) on the circle
    for (a, ca) in [(0u32, 1.0), (1, -2.0), (2, 1.0)] {
        for (b, cb) in [(0u32, 1.0), (1, -1.0)] {
            g.add_term(a, b, c(ca * cb, 0.0));
        }
    }
    let mut shifts = Vec::new();
    for i in -2..=2 {
        for j in -2..=2 {
            let z = c(i as f64 * 0.3, j as f64 * 0.3);
            shifts.push((z, z.conj() * 0.5));
        }
    }
    assert!(translation_invariance_check(ShiftTable::Cue, &g, 4, &shifts).unwrap() <= 1e-9);
}
