use num_complex::Complex64;
use powergin::exact::{cue_charpoly_moment, gue_block_product_stat, gue_det_moment, power_ginibre_product_stat, MixedPolynomial};
use powergin::numerics::gamma_p;
use powergin::samplers::{
    batch_means, sample_beta_ensemble_mcmc, sample_bhny_charpoly, sample_cue, sample_ginibre, sample_ginibre_guarded,
    sample_ginibre_power, sample_gue, sample_gue_det, sample_ginibre_product, sample_gamma_products, sample_high_powers, sample_kostlan_radii,
    sample_power_ginibre_block, sample_real_block_mcmc, sample_spherical, sample_truncated_unitary, DppOptions,
    GueDetCalibration, RadialPotential, RngStream, SamplerError, Scaling,
};
use rand::RngCore;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ks_statistic(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    d
}

// two-sided critical value at level 0.001
fn ks_critical(n: usize) -> f64 {
    1.949 / (n as f64).sqrt()
}

fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

#[test]
fn same_seed_same_sample() {
    let a = sample_ginibre(6, &mut RngStream::new(42)).unwrap();
    let b = sample_ginibre(6, &mut RngStream::new(42)).unwrap();
    assert_eq!(a.points, b.points);
    let c2 = sample_ginibre(6, &mut RngStream::new(43)).unwrap();
    assert_ne!(a.points, c2.points);
}

#[test]
fn split_streams_are_distinct_and_stable() {
    let root = RngStream::new(7);
    let mut s1 = root.split(1);
    let mut s2 = root.split(2);
    let mut s1b = RngStream::new(7).split(1);
    let x1 = s1.next_u64();
    assert_eq!(x1, s1b.next_u64());
    assert_ne!(x1, s2.next_u64());
    assert_eq!(s1.seed(), 7);
}

#[test]
fn ginibre_metadata_and_scaling() {
    let s = sample_ginibre(5, &mut RngStream::new(1)).unwrap();
    assert_eq!(s.len(), 5);
    assert_eq!(s.meta.scaling, Scaling::Scaled);
    assert_eq!(s.meta.seed, 1);
    assert!(s.is_finite());
}

#[test]
fn ginibre_guard_rejects_large_dimension() {
    let r = sample_ginibre_guarded(20, 10, &mut RngStream::new(1));
    assert!(matches!(r, Err(SamplerError::DimensionGuard { n: 20, limit: 10 })));
}

#[test]
fn ginibre_squared_moduli_follow_gamma_mixture() {
    // N |lambda|^2 over the spectrum is the equal mixture of Gamma(1..N)
    let n = 4;
    let mut rng = RngStream::new(3);
    let mut pooled = Vec::new();
    for _ in 0..1500 {
        let s = sample_ginibre(n, &mut rng).unwrap();
        pooled.extend(s.squared_moduli().iter().map(|r| r * n as f64));
    }
    let len = pooled.len();
    let d = ks_statistic(pooled, |x| (1..=n).map(|k| gamma_p(k as f64, x)).sum::<f64>() / n as f64);
    // points within one matrix are dependent, so allow twice the iid critical value at the matrix count
    assert!(d < 2.0 * ks_critical(len / n), "KS {d}");
}

#[test]
fn kostlan_radii_are_independent_gammas() {
    let mut rng = RngStream::new(4);
    let n = 5;
    let draws: Vec<Vec<f64>> = (0..3000).map(|_| sample_kostlan_radii(n, &mut rng)).collect();
    for k in 1..=n {
        let xs: Vec<f64> = draws.iter().map(|d| d[k - 1]).collect();
        let d = ks_statistic(xs, |x| gamma_p(k as f64, x));
        assert!(d < ks_critical(3000), "k={k} KS {d}");
    }
}

#[test]
fn high_powers_need_large_exponent() {
    assert!(sample_high_powers(5, 3, &mut RngStream::new(1)).is_err());
    let s = sample_high_powers(3, 3, &mut RngStream::new(1)).unwrap();
    assert_eq!(s.len(), 3);
    assert_eq!(s.meta.scaling, Scaling::Unscaled);
}

#[test]
fn high_powers_match_eigenvalue_powers() {
    // pooled |N^(M/2) lambda^M|^(2/M) from eigenvalues against the gamma mixture
    let (n, m) = (3, 4);
    let mut rng = RngStream::new(8);
    let mut eig = Vec::new();
    let mut direct = Vec::new();
    for _ in 0..1500 {
        let s = sample_ginibre_power(n, m, 64, &mut rng).unwrap();
        eig.extend(s.points.iter().map(|z| (z.norm() * (n as f64).powf(m as f64 / 2.0)).powf(2.0 / m as f64)));
        let h = sample_high_powers(n, m, &mut rng).unwrap();
        direct.extend(h.points.iter().map(|z| z.norm().powf(2.0 / m as f64)));
    }
    let cdf = |x: f64| (1..=n).map(|k| gamma_p(k as f64, x)).sum::<f64>() / n as f64;
    let len = eig.len();
    assert!(ks_statistic(eig, cdf) < 2.0 * ks_critical(len / n));
    assert!(ks_statistic(direct, cdf) < 2.0 * ks_critical(len / n));
}

#[test]
fn cue_points_are_on_the_circle() {
    let mut rng = RngStream::new(5);
    let mut traces = Vec::new();
    for _ in 0..4000 {
        let s = sample_cue(6, &mut rng).unwrap();
        assert!(s.points.iter().all(|z| (z.norm() - 1.0).abs() < 1e-10));
        traces.push(s.points.iter().sum::<Complex64>().norm_sqr());
    }
    // E|tr U|^2 = 1
    let (m, se) = mean_se(&traces);
    assert!((m - 1.0).abs() < 4.5 * se, "{m} +- {se}");
}

#[test]
fn gue_spectrum_is_real_with_expected_trace() {
    let n = 5;
    let mut rng = RngStream::new(6);
    let mut sq = Vec::new();
    for _ in 0..4000 {
        let s = sample_gue(n, &mut rng).unwrap();
        assert!(s.points.iter().all(|z| z.im == 0.0));
        sq.push(s.points.iter().map(|z| z.re * z.re).sum::<f64>());
    }
    // E tr H^2 = N^2
    let (m, se) = mean_se(&sq);
    assert!((m - (n * n) as f64).abs() < 4.5 * se);
}

#[test]
fn truncated_unitary_and_spherical_samples() {
    let mut rng = RngStream::new(10);
    for _ in 0..50 {
        let t = sample_truncated_unitary(4, 2, &mut rng).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.points.iter().all(|z| z.norm() < 1.0));
        let s = sample_spherical(4, &mut rng).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.is_finite());
    }
}

#[test]
fn dpp_block_has_residue_class_size() {
    let mut rng = RngStream::new(11);
    for &(n, m) in &[(7usize, 3usize), (10, 4), (5, 5), (3, 5)] {
        for k in 1..=m {
            let s = sample_power_ginibre_block(n, m, k, &DppOptions::default(), &mut rng).unwrap();
            let want = if k > n { 0 } else { (n - k) / m + 1 };
            assert_eq!(s.len(), want, "n={n} m={m} k={k}");
            assert_eq!(s.meta.k, Some(k));
        }
    }
}

#[test]
fn dpp_block_guard() {
    let opts = DppOptions { max_block: 3, ..DppOptions::default() };
    let r = sample_power_ginibre_block(10, 1, 1, &opts, &mut RngStream::new(1));
    assert!(matches!(r, Err(SamplerError::DimensionGuard { .. })));
}

#[test]
fn dpp_block_statistics_match_exact_values() {
    let (n, m) = (6usize, 2usize);
    let g = MixedPolynomial::from_terms([
        ((0, 0), c(1.0, 0.0)),
        ((1, 1), c(0.02, 0.0)),
        ((2, 1), c(0.0, 0.01)),
        ((1, 2), c(0.005, 0.0)),
    ]);
    let scale = (n as f64).powf(m as f64 / 2.0);
    let mut rng = RngStream::new(12);
    for k in 1..=m {
        let exact = power_ginibre_product_stat(n, m, k, &g).unwrap();
        let mut re = Vec::new();
        let mut im = Vec::new();
        for _ in 0..6000 {
            let s = sample_power_ginibre_block(n, m, k, &DppOptions::default(), &mut rng).unwrap();
            let v = s.product_stat(|z| g.eval(z * scale));
            re.push(v.re);
            im.push(v.im);
        }
        let (mr, sr) = mean_se(&re);
        let (mi, si) = mean_se(&im);
        assert!((mr - exact.re).abs() < 4.5 * sr, "k={k}: {mr} vs {}", exact.re);
        assert!((mi - exact.im).abs() < 4.5 * si.max(1e-12), "k={k}: {mi} vs {}", exact.im);
    }
}

#[test]
fn dpp_blocks_reassemble_the_power_spectrum() {
    // union of the M blocks has the law of the eigenvalues of G^M: compare pooled moduli
    let (n, m) = (5usize, 2usize);
    let mut rng = RngStream::new(13);
    let mut dpp = Vec::new();
    let mut eig = Vec::new();
    for _ in 0..1500 {
        for k in 1..=m {
            let s = sample_power_ginibre_block(n, m, k, &DppOptions::default(), &mut rng).unwrap();
            dpp.extend(s.points.iter().map(|z| z.norm()));
        }
        eig.extend(sample_ginibre_power(n, m, 64, &mut rng).unwrap().points.iter().map(|z| z.norm()));
    }
    let scale = (n as f64).powf(m as f64 / 2.0);
    let cdf = |r: f64| (1..=n).map(|i| gamma_p(i as f64, (r * scale).powf(2.0 / m as f64))).sum::<f64>() / n as f64;
    let len = dpp.len();
    assert!(ks_statistic(dpp, cdf) < 2.0 * ks_critical(len / n));
    assert!(ks_statistic(eig, cdf) < 2.0 * ks_critical(len / n));
}

#[test]
fn bhny_moments_match_characteristic_polynomial() {
    let n = 5;
    let mut rng = RngStream::new(14);
    let z: Vec<Complex64> = (0..40_000).map(|_| sample_bhny_charpoly(n, &mut rng)).collect();
    let (m1, se1) = mean_se(&z.iter().map(|z| z.re).collect::<Vec<_>>());
    assert!((m1 - 1.0).abs() < 4.5 * se1);
    let want = cue_charpoly_moment(n, 1, 1).unwrap().product_formula;
    assert!((want - (n as f64 + 1.0)).abs() < 1e-9);
    let (m2, se2) = mean_se(&z.iter().map(|z| z.norm_sqr()).collect::<Vec<_>>());
    assert!((m2 - want).abs() < 4.5 * se2, "{m2} vs {want}");
}

#[test]
fn gue_determinant_calibrations() {
    let mut rng = RngStream::new(15);
    for n in 2..=5 {
        let exact = gue_det_moment(n, 1);
        let sqrt: Vec<f64> = (0..40_000).map(|_| sample_gue_det(n, GueDetCalibration::SquareRoot, &mut rng).powi(2)).collect();
        let (m, se) = mean_se(&sqrt);
        assert!((m - exact).abs() < 4.5 * se, "n={n} square-root: {m} vs {exact}");
        let scalar: Vec<f64> = (0..40_000).map(|_| sample_gue_det(n, GueDetCalibration::Scalar, &mut rng).powi(2)).collect();
        let (m, se) = mean_se(&scalar);
        assert!((m - exact).abs() < 4.5 * se, "n={n} scalar: {m} vs {exact}");
    }
}

#[test]
fn mcmc_ginibre_matches_kostlan_mean() {
    let n = 3;
    let run = sample_beta_ensemble_mcmc(n, 1, &RadialPotential::quadratic(), 600_000, &mut RngStream::new(16)).unwrap();
    assert!(run.acceptance_rate > 0.05 && run.acceptance_rate < 0.9);
    let (m, se) = run.estimate(|z| z.iter().map(|w| w.norm_sqr()).sum(), 20);
    assert!((m - 6.0).abs() < 4.5 * se, "{m} +- {se}");
}

#[test]
fn real_block_mcmc_matches_gue_block() {
    // N = 4, k = 1 block has two points
    let h = [1.0, 0.1];
    let exact = gue_block_product_stat(4, 1, &h).unwrap();
    let run = sample_real_block_mcmc(2, 1, 600_000, &mut RngStream::new(17)).unwrap();
    let (m, se) = run.estimate(|y| y.iter().map(|v| 1.0 + 0.1 * v.re).product(), 20);
    assert!((m - exact).abs() < 4.5 * se, "{m} +- {se} vs {exact}");
}

#[test]
fn batch_means_of_constant_has_zero_error() {
    let (m, se) = batch_means(&[2.5; 100], 10);
    assert_eq!(m, 2.5);
    assert_eq!(se, 0.0);
}

#[test]
fn one_point_ensembles() {
    let mut rng = RngStream::new(18);
    // truncated unitary N = 1: |lambda|^2 ~ Beta(1, n), CDF 1 - (1-x)^n
    let n = 3;
    let xs: Vec<f64> = (0..4000).map(|_| sample_truncated_unitary(1, n, &mut rng).unwrap().points[0].norm_sqr()).collect();
    assert!(ks_statistic(xs, |x| 1.0 - (1.0 - x).powi(n as i32)) < ks_critical(4000));
    // spherical N = 1: |lambda|^2 / (1 + |lambda|^2) uniform
    let xs: Vec<f64> = (0..4000)
        .map(|_| {
            let r = sample_spherical(1, &mut rng).unwrap().points[0].norm_sqr();
            r / (1.0 + r)
        })
        .collect();
    assert!(ks_statistic(xs, |x| x) < ks_critical(4000));
    // Ginibre N = 1: Exp(1) squared modulus
    let xs: Vec<f64> = (0..4000).map(|_| sample_ginibre(1, &mut rng).unwrap().points[0].norm_sqr()).collect();
    assert!(ks_statistic(xs, |x| 1.0 - (-x).exp()) < ks_critical(4000));
}

#[test]
fn product_matrix_radii_are_gamma_products() {
    let (n, count) = (4, 2);
    let mut rng = RngStream::new(19);
    let mut eig = Vec::new();
    let mut direct = Vec::new();
    for _ in 0..1500 {
        eig.extend(sample_ginibre_product(n, count, &mut rng).unwrap().squared_moduli());
        direct.extend(sample_gamma_products(n, count, &mut rng));
    }
    // two-sample KS at level 0.001, inflated by 2 for within-matrix dependence
    eig.sort_by(f64::total_cmp);
    direct.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    let len = eig.len() as f64;
    while i < eig.len() && j < direct.len() {
        if eig[i] <= direct[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / len - j as f64 / len).abs());
    }
    let crit = 1.949 * (2.0 / (len / n as f64)).sqrt();
    assert!(d < 2.0 * crit, "KS {d}");
}

#[test]
fn bhny_modulus_bound() {
    let mut rng = RngStream::new(20);
    for n in 1..6 {
        for _ in 0..200 {
            assert!(sample_bhny_charpoly(n, &mut rng).norm() <= 2f64.powi(n as i32) + 1e-12);
        }
    }
}
