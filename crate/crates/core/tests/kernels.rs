use powergin::kernels::{
    finite_microscopic_kernel, integrate_plane, log_block_series, microscopic_kernel, microscopic_kernel_with,
    twisted_circular_density, PowerGinKernel, RootChoice, OMEGA_EPSILON,
};
use powergin::numerics::quadrature::{integrate, integrate_to_infinity};
use powergin::numerics::LogComplex;
use powergin::samplers::{uniform01, RngStream};
use powergin::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Radial integral of a radial density `2 pi int f(r) r dr`.
fn radial_integral(f: impl Fn(f64) -> f64) -> f64 {
    integrate_to_infinity(|r| 2.0 * PI * r * f(r), 0.0, 1e-13, 1e-12).unwrap()
}

#[test]
fn kernel_at_origin_is_one_for_k1() {
    let kern = PowerGinKernel::new(5, 2, 1).unwrap();
    assert!((kern.kernel_eval(c(0.0, 0.0), c(0.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn ginibre_kernel_matches_direct_exponential_partial_sum() {
    let n = 7;
    let kern = PowerGinKernel::new(n, 1, 1).unwrap();
    let (z, w) = (c(0.3, -0.2), c(-0.1, 0.5));
    let x = z * w.conj() * n as f64;
    let direct: Complex64 = (0..n).map(|l| x.powu(l as u32) / factorial(l)).sum();
    assert!((kern.kernel_eval(z, w) - direct).norm() < 1e-13 * direct.norm());
}

#[test]
fn power_kernel_matches_direct_sum() {
    for &(n, m, k) in &[(8usize, 2usize, 1usize), (8, 2, 2), (9, 3, 2), (10, 3, 3)] {
        let kern = PowerGinKernel::new(n, m, k).unwrap();
        let (z, w) = (c(0.4, 0.3), c(0.2, -0.6));
        let x = z * w.conj() * (n as f64).powi(m as i32);
        let gk = factorial(k - 1);
        let direct: Complex64 = (0..kern.c_k).map(|l| x.powu(l as u32) / factorial(m * l + k - 1)).sum::<Complex64>() * gk;
        let got = kern.kernel_eval(z, w);
        assert!((got - direct).norm() < 1e-12 * direct.norm().max(1.0), "({n},{m},{k})");
    }
}

#[test]
fn block_series_survives_cancellation() {
    // x = -R: sum_l (-R)^l / l! up to l < c is e^-R minus a huge tail; both
    // routes must agree with a direct evaluation at a moderate size
    let r = 30.0f64;
    let c_terms = 200;
    let direct: f64 = (0..c_terms).map(|l| (-r).powi(l) / factorial(l as usize)).sum();
    // direct sum is accurate only to about eps * e^R here; use the identity
    assert!((direct - (-r).exp()).abs() < 1e-16 * r.exp() * 10.0);
    let (s, _) = log_block_series(1, 1, c_terms as usize, LogComplex::from_real(-r));
    assert!((s.to_real() - (-r).exp()).abs() < 1e-12 * (-r).exp());
}

#[test]
fn reference_density_is_normalized_with_known_moments() {
    for &(n, m, k) in &[(8usize, 1usize, 1usize), (8, 2, 1), (8, 2, 2), (9, 3, 2), (6, 3, 3)] {
        let kern = PowerGinKernel::new(n, m, k).unwrap();
        let total = radial_integral(|r| kern.reference_density(c(r, 0.0)));
        assert!((total - 1.0).abs() < 1e-8, "({n},{m},{k}) total {total}");
        for l in 1..=5 {
            let got = radial_integral(|r| r.powi(2 * l) * kern.reference_density(c(r, 0.0)));
            let want = factorial(m * l as usize + k - 1) / (factorial(k - 1) * (n as f64).powi((m * l as usize) as i32));
            assert!((got / want - 1.0).abs() < 1e-9, "({n},{m},{k}) l={l}");
        }
    }
}

#[test]
fn reference_density_reduces_to_gaussian() {
    let n = 6;
    let kern = PowerGinKernel::new(n, 1, 1).unwrap();
    let z = c(0.3, 0.2);
    let want = n as f64 / PI * (-(n as f64) * z.norm_sqr()).exp();
    assert!((kern.reference_density(z) - want).abs() < 1e-14);
}

#[test]
fn mean_density_integrates_to_one() {
    for &(n, m, k) in &[(8usize, 2usize, 1usize), (9, 3, 2), (20, 2, 2)] {
        let kern = PowerGinKernel::new(n, m, k).unwrap();
        let total = radial_integral(|r| kern.mean_density(c(r, 0.0)).unwrap());
        assert!((total - 1.0).abs() < 1e-8, "({n},{m},{k}) total {total}");
    }
}

#[test]
fn mean_density_approaches_twisted_law() {
    for m in 1..=3usize {
        for k in 1..=m {
            let kern = PowerGinKernel::new(4000, m, k).unwrap();
            for i in 0..=16 {
                let r = 0.1 + 0.05 * i as f64;
                let got = kern.mean_density(c(r, 0.0)).unwrap();
                let want = twisted_circular_density(m, c(r, 0.0));
                assert!((got / want - 1.0).abs() < 0.02, "M={m} k={k} r={r}");
            }
        }
    }
    let kern = PowerGinKernel::new(4000, 1, 1).unwrap();
    assert!((kern.mean_density(c(0.5, 0.0)).unwrap() - 1.0 / PI).abs() < 1e-3);
}

#[test]
fn twisted_density_is_normalized() {
    assert!((twisted_circular_density(1, c(0.3, 0.1)) - 1.0 / PI).abs() < 1e-15);
    for m in 1..=4usize {
        // substitute r = s^M to tame the singularity at the origin
        let total = integrate(
            |s: f64| {
                let r = s.powi(m as i32);
                2.0 * PI * r * twisted_circular_density(m, c(r, 0.0)) * m as f64 * s.powi(m as i32 - 1)
            },
            0.0,
            1.0,
            1e-13,
            1e-12,
        )
        .unwrap();
        assert!((total - 1.0).abs() < 1e-10, "M={m}");
    }
}

#[test]
fn twisted_radial_cdf_matches_pushforward_of_uniform_disk() {
    let mut rng = RngStream::new(41);
    let n = 40_000;
    for m in 1..=3usize {
        let radii: Vec<f64> = (0..n)
            .map(|_| {
                // uniform point in the disk, then z -> z^M
                let r = uniform01(&mut rng).sqrt();
                r.powi(m as i32)
            })
            .collect();
        for &t in &[0.1, 0.3, 0.5, 0.8] {
            let emp = radii.iter().filter(|&&r| r <= t).count() as f64 / n as f64;
            let want = t.powf(2.0 / m as f64);
            let se = (want * (1.0 - want) / n as f64).sqrt();
            assert!((emp - want).abs() < 4.0 * se, "M={m} t={t}");
        }
    }
}

#[test]
fn kernel_reproduces_and_has_trace_c_k() {
    let kern = PowerGinKernel::new(8, 2, 1).unwrap();
    let trace = integrate_plane(|u| kern.kernel_eval(u, u) * kern.reference_density(u), 256, 1e-12, 1e-11).unwrap();
    assert!((trace.re - kern.c_k as f64).abs() < 1e-8 && trace.im.abs() < 1e-8, "trace {trace}");
    for &(z, w) in &[(c(0.3, 0.1), c(-0.2, 0.4)), (c(0.5, -0.5), c(0.1, 0.0))] {
        let got = integrate_plane(|u| kern.kernel_eval(z, u) * kern.kernel_eval(u, w) * kern.reference_density(u), 256, 1e-10, 1e-10)
            .unwrap();
        let want = kern.kernel_eval(z, w);
        assert!((got - want).norm() < 1e-6 * want.norm().max(1.0), "{got} vs {want}");
    }
}

#[test]
fn j_on_the_diagonal_is_squared_intensity() {
    let kern = PowerGinKernel::new(50, 2, 1).unwrap();
    let z = c(0.4, 0.3);
    let intensity = kern.c_k as f64 * kern.mean_density(z).unwrap();
    assert!((kern.j_quantity(z, z) / intensity.powi(2) - 1.0).abs() < 1e-12);
}

#[test]
fn j_asymptotics_improve_with_n() {
    let pairs = [
        (c(0.5, 0.0), Complex64::from_polar(0.4, 0.2)),
        // near the boundary of the region where the partial sums track e^x,
        // so the error is still above round-off at N = 200
        (c(0.8, 0.0), Complex64::from_polar(0.8, 0.1)),
        (Complex64::from_polar(0.75, 0.5), Complex64::from_polar(0.8, 0.45)),
        (Complex64::from_polar(0.7, -1.0), Complex64::from_polar(0.72, -1.05)),
        (Complex64::from_polar(0.78, 2.0), Complex64::from_polar(0.76, 2.1)),
        (Complex64::from_polar(0.8, -2.5), Complex64::from_polar(0.7, -2.4)),
    ];
    for &(m, k) in &[(2usize, 1usize), (2, 2), (3, 1)] {
        for &(z, w) in &pairs {
            let res: Vec<f64> = [50usize, 100, 200]
                .iter()
                .map(|&n| PowerGinKernel::new(n, m, k).unwrap().asymptotic_residual(z, w, OMEGA_EPSILON).unwrap())
                .collect();
            assert!(res[2] < res[1] && res[1] < res[0], "M={m} k={k} {z} {w}: {res:?}");
            assert!(res[2] < 0.05, "M={m} k={k} {z} {w}: {res:?}");
        }
    }
}

#[test]
fn j_is_small_at_antipodal_pairs() {
    let kern = PowerGinKernel::new(200, 2, 1).unwrap();
    let z = c(0.5, 0.0);
    let aligned = kern.j_quantity(z, c(0.5, 0.0) * Complex64::from_polar(1.0, 0.01));
    let antipodal = kern.j_quantity(z, c(-0.5, 0.0));
    assert!(antipodal / aligned < 0.01);
    assert!(kern.asymptotic_residual(z, c(-0.5, 0.0), OMEGA_EPSILON).is_err());
}

#[test]
fn microscopic_kernel_reduces_to_ginibre() {
    let (z, w) = (c(0.7, -1.2), c(0.3, 0.4));
    let want = Complex64::from_polar((-0.5 * (z - w).norm_sqr()).exp(), (z * w.conj()).im);
    assert!((microscopic_kernel(1, 1, z, w) - want).norm() < 1e-15);
}

#[test]
fn microscopic_kernel_choice_invariance() {
    let (z, w) = (c(2.0, 1.0), c(1.5, 1.8));
    for &(m, k) in &[(3usize, 1usize), (3, 2), (4, 3), (5, 4)] {
        let base = microscopic_kernel(m, k, z, w);
        let coprime: Vec<usize> = (1..m).filter(|j| gcd(*j, m) == 1).collect();
        let choices = [
            RootChoice { zeta_index: *coprime.last().unwrap(), z_branch: 0, w_branch: 0 },
            RootChoice { zeta_index: 1, z_branch: 1, w_branch: 1 },
            RootChoice { zeta_index: *coprime.last().unwrap(), z_branch: 2, w_branch: 2 },
        ];
        for ch in choices {
            let v = microscopic_kernel_with(m, k, z, w, ch);
            // same branch shift on both points leaves the value unchanged
            assert!((v - base).norm() < 1e-12, "M={m} k={k} {ch:?}");
        }
        for s in 0..m {
            let v = microscopic_kernel_with(m, k, z, w, RootChoice { zeta_index: 1, z_branch: s, w_branch: 0 });
            assert!((v.norm() - base.norm()).abs() < 1e-12);
            if k == 1 {
                assert!((v - base).norm() < 1e-12);
            }
        }
        // 2x2 correlation determinant is gauge free; branches are per point
        let det = |bz: usize, bw: usize| {
            let kz = microscopic_kernel_with(m, k, z, z, RootChoice { zeta_index: 1, z_branch: bz, w_branch: bz });
            let kw = microscopic_kernel_with(m, k, w, w, RootChoice { zeta_index: 1, z_branch: bw, w_branch: bw });
            let kzw = microscopic_kernel_with(m, k, z, w, RootChoice { zeta_index: 1, z_branch: bz, w_branch: bw });
            (kz * kw - kzw * kzw.conj()).re
        };
        let d0 = det(0, 0);
        let d1 = det(1, 2);
        assert!((d0 - d1).abs() < 1e-12);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn finite_n_microscopic_kernel_converges() {
    // |x| = |z w|^(1/M) large enough that N = 80 is not yet converged
    let pairs = [
        (70.0f64, 0.0f64),
        (110.0, 0.02),
        (130.0, -0.01),
        (90.0, 0.01),
        (150.0, 0.0),
    ];
    for &(m, k) in &[(2usize, 1usize), (2, 2), (3, 2)] {
        for &(s, dphi) in &pairs {
            let z = Complex64::from_polar(s.powf(m as f64 / 2.0), 0.3);
            let w = Complex64::from_polar((s * 1.02).powf(m as f64 / 2.0), 0.3 + dphi);
            let lim = microscopic_kernel(m, k, z, w);
            let res: Vec<f64> = [20usize, 80, 320]
                .iter()
                .map(|&n| (finite_microscopic_kernel(n, m, k, z, w, RootChoice::default()).unwrap() - lim).norm())
                .collect();
            assert!(res[1] < res[0] && res[2] < res[1], "M={m} k={k} s={s}: {res:?}");
        }
    }
}

proptest! {
    #[test]
    fn kernel_is_conjugate_symmetric(zr in -1.0f64..1.0, zi in -1.0f64..1.0, wr in -1.0f64..1.0, wi in -1.0f64..1.0,
                                     m in 1usize..4, kk in 0usize..4, n in 4usize..30) {
        let k = kk % m + 1;
        let kern = PowerGinKernel::new(n, m, k).unwrap();
        let (z, w) = (c(zr, zi), c(wr, wi));
        let a = kern.kernel_eval(z, w);
        let b = kern.kernel_eval(w, z).conj();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        prop_assert!(kern.kernel_eval(z, z).re >= 0.0);
    }

    #[test]
    fn microscopic_kernel_is_hermitian(zr in -3.0f64..3.0, zi in -3.0f64..3.0, wr in -3.0f64..3.0, wi in -3.0f64..3.0,
                                       m in 1usize..5, kk in 0usize..5) {
        let k = kk % m + 1;
        let (z, w) = (c(zr, zi), c(wr, wi));
        let a = microscopic_kernel(m, k, z, w);
        let b = microscopic_kernel(m, k, w, z).conj();
        prop_assert!((a - b).norm() < 1e-12);
        let d = microscopic_kernel(m, k, z, z);
        prop_assert!(d.re > 0.0 && d.im.abs() < 1e-12);
    }
}
