use super::stats::{ks_one_sample, ks_two_sample, mean_se, moments, normal_two_sided, variance_se, KsResult};
use super::{replicates, svg, Check, ExperimentId, HarnessError, Outcome, Params, Plot, Provenance, Record};
use crate::exact::{
    charpoly_laurent, cue_charpoly_moment, cue_product_stat, decomposition_identity_residual, ginibre_product_stat,
    gue_block_product_stat, gue_det_moment, gue_det_odd_moment, gue_product_stat, power_ginibre_product_stat, Laurent,
    MixedPolynomial,
};
use crate::kernels::{
    finite_microscopic_kernel, integrate_plane, microscopic_kernel, microscopic_kernel_with, twisted_circular_density,
    PowerGinKernel, RootChoice, OMEGA_EPSILON,
};
use crate::latent::{
    exact_quadratic_weights, expand_vandermonde_power_guarded, latent_distribution, log_z_two_points,
    verify_conditional_radii_against_mcmc, LatentWeightTable,
};
use crate::numerics::quadrature::integrate;
use crate::numerics::{log_det, log_gamma, striped_det, ComplexMatrix, ProgressionIndex};
use crate::samplers::{
    gamma, sample_bhny_charpoly, sample_cue, sample_ginibre, sample_ginibre_guarded, sample_ginibre_power, sample_gue,
    sample_gue_det, sample_high_powers, sample_kostlan_radii, sample_power_ginibre_block, sample_real_block_mcmc,
    standard_complex_normal, uniform01, DppOptions, GueDetCalibration, RadialPotential, RngStream, DEFAULT_MAX_DIMENSION,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;

use Provenance::{ClosedForm, Exact, OracleSampler};

/// Per-replicate series longer than this are written as batch means.
const MAX_SERIES: usize = 20_000;

struct Ctx {
    id: &'static str,
    out: Outcome,
}

impl Ctx {
    fn check(&mut self, c: Check) {
        self.out.checks.push(c);
    }

    fn ks(&mut self, name: &str, r: &KsResult, provenance: Provenance) {
        self.check(Check::at_most(name, r.statistic, r.critical, provenance));
        self.note(format!("{name}: D = {:.5}, p = {:.4}", r.statistic, r.p_value));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.out.notes.push(s.into());
    }

    fn record(&mut self, replicate: usize, statistic: &str, value: f64) {
        self.out.records.push(Record { experiment: self.id.to_string(), replicate, statistic: statistic.to_string(), value });
    }

    fn series(&mut self, statistic: &str, values: &[f64]) {
        if values.len() <= MAX_SERIES {
            for (i, &v) in values.iter().enumerate() {
                self.record(i, statistic, v);
            }
        } else {
            let b = values.len().div_ceil(1000);
            for (i, chunk) in values.chunks(b).enumerate() {
                self.record(i, &format!("{statistic}_batch_mean"), chunk.iter().sum::<f64>() / chunk.len() as f64);
            }
        }
    }

    fn plot(&mut self, name: &str, svg: String) {
        self.out.plots.push(Plot { name: name.to_string(), svg });
    }

    /// Mean of `values` against `reference` within `z` standard errors.
    fn mean_check(&mut self, name: &str, values: &[f64], reference: f64, provenance: Provenance, z: f64) {
        let (m, se) = mean_se(values);
        self.check(Check::within_se(name, m, reference, provenance, se, z));
    }

    /// Two independent sample means agree within `z` combined errors.
    fn two_sample_check(&mut self, name: &str, a: &[f64], b: &[f64], z: f64) {
        let (ma, sa) = mean_se(a);
        let (mb, sb) = mean_se(b);
        self.check(Check::within_se(name, ma - mb, 0.0, OracleSampler, (sa * sa + sb * sb).sqrt(), z));
    }
}

pub(super) fn dispatch(id: ExperimentId, p: &Params, rng: RngStream) -> Result<Outcome, HarnessError> {
    let mut cx = Ctx { id: id.as_str(), out: Outcome::default() };
    match id {
        ExperimentId::KostlanKs => kostlan_ks(&mut cx, p, &rng)?,
        ExperimentId::HighpowerIndep => highpower_indep(&mut cx, p, &rng)?,
        ExperimentId::PgDecompositionExact => pg_decomposition_exact(&mut cx, p, &rng)?,
        ExperimentId::PgDecompositionMc => pg_decomposition_mc(&mut cx, p, &rng)?,
        ExperimentId::PgKostlan => pg_kostlan(&mut cx, p, &rng)?,
        ExperimentId::TwistedLaw => twisted_law(&mut cx, p, &rng)?,
        ExperimentId::GffVariance => gff_variance(&mut cx, p, &rng)?,
        ExperimentId::CueRains => cue_rains(&mut cx, p, &rng)?,
        ExperimentId::CueCharpoly => cue_charpoly(&mut cx, p, &rng)?,
        ExperimentId::GueDecomposition => gue_decomposition(&mut cx, p, &rng)?,
        ExperimentId::GueDet => gue_det(&mut cx, p, &rng)?,
        ExperimentId::MrootAsymptotics => mroot_asymptotics(&mut cx, p)?,
        ExperimentId::MicroscopicKernel => microscopic(&mut cx, p)?,
        ExperimentId::BetaLatentN2 => beta_latent_n2(&mut cx, p)?,
        ExperimentId::BetaLatentMcmc => beta_latent_mcmc(&mut cx, p, &rng)?,
    }
    Ok(cx.out)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unif(rng: &mut RngStream, a: f64, b: f64) -> f64 {
    a + (b - a) * uniform01(rng)
}

fn random_poly(deg: u32, rng: &mut RngStream) -> MixedPolynomial {
    let mut p = MixedPolynomial::one();
    for a in 0..=deg {
        for b in 0..=deg - a {
            if uniform01(rng) < 0.6 {
                let z = c(unif(rng, -1.0, 1.0), unif(rng, -1.0, 1.0));
                p.add_term(a, b, z);
            }
        }
    }
    p
}

fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn positive(key: &str, v: usize) -> Result<usize, HarnessError> {
    if v == 0 {
        return Err(HarnessError::Parameter { key: key.into(), value: "0".into(), reason: "must be positive".into() });
    }
    Ok(v)
}

fn kostlan_ks(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n = positive("n", p.usize("n")?)?;
    let samples = positive("samples", p.usize("samples")?)?;
    let alpha = p.f64("alpha")?;

    let mut r1 = rng.split(1);
    let mut r2 = rng.split(2);
    let mut eig = Vec::with_capacity(n * samples);
    let mut gam = Vec::with_capacity(n * samples);
    let mut sums = Vec::with_capacity(samples);
    for _ in 0..samples {
        let s = sample_ginibre(n, &mut r1)?;
        let sq: Vec<f64> = s.squared_moduli().iter().map(|x| x * n as f64).collect();
        sums.push(sq.iter().sum::<f64>());
        eig.extend(sq);
        gam.extend(sample_kostlan_radii(n, &mut r2));
    }
    let ks = ks_two_sample(&eig, &gam, alpha)?;
    cx.ks("pooled N|lambda|^2 vs gamma radii", &ks, OracleSampler);
    cx.note("points of one matrix are dependent, so the pooled KS level is conservative");
    cx.series("sum_squared_moduli", &sums);

    // exact radial statistic against products of gamma moments
    let n_max = p.usize("exact_n_max")?;
    let deg = p.usize("exact_degree")?;
    let tol = p.f64("exact_tol")?;
    let mut r3 = rng.split(3);
    let mut worst: f64 = 0.0;
    for nn in 1..=n_max {
        for _ in 0..5 {
            let coeffs: Vec<f64> = (0..=deg).map(|q| if q == 0 { 1.0 } else { unif(&mut r3, -1.0, 1.0) / (q * q) as f64 }).collect();
            let got = ginibre_product_stat(nn, &MixedPolynomial::radial(&coeffs))?;
            let want: f64 = (1..=nn)
                .map(|i| coeffs.iter().enumerate().map(|(q, &cq)| cq * (i..i + q).map(|t| t as f64).product::<f64>()).sum::<f64>())
                .product();
            worst = worst.max(rel_diff(got, c(want, 0.0)));
        }
    }
    cx.check(Check::at_most("radial statistic vs gamma moment products", worst, tol, Exact));
    Ok(())
}

fn highpower_indep(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n = positive("n", p.usize("n")?)?;
    let m = p.usize("m")?;
    if m < n {
        return Err(HarnessError::Parameter { key: "m".into(), value: m.to_string(), reason: "need m >= n".into() });
    }
    let samples = positive("samples", p.usize("samples")?)?;
    let z = p.f64("z")?;
    let alpha = p.f64("alpha")?;

    // for M >= N only the diagonal terms of P survive
    let mut r0 = rng.split(0);
    let mut worst: f64 = 0.0;
    for nn in 1..=p.usize("exact_n_max")? {
        for mm in nn..nn + 3 {
            for _ in 0..4 {
                let poly = random_poly(3, &mut r0);
                let got = ginibre_product_stat(nn, &poly.power_compose(mm as u32))?;
                let mut want = c(1.0, 0.0);
                for i in 1..=nn {
                    let mut s = c(0.0, 0.0);
                    for (a, b, coef) in poly.terms() {
                        if a == b {
                            s += coef * (log_gamma((i + mm * a as usize) as f64) - log_gamma(i as f64)).exp();
                        }
                    }
                    want *= s;
                }
                worst = worst.max(rel_diff(got, want));
            }
        }
    }
    cx.check(Check::at_most("diagonal formula for E prod P(z^M)", worst, p.f64("exact_tol")?, ClosedForm));

    let stats = |pts: &[Complex64]| -> [f64; 4] {
        let mut phase = c(0.0, 0.0);
        let mut rad = 0.0;
        let mut mixed = c(0.0, 0.0);
        for &x in pts {
            let s = x.norm().powf(2.0 / m as f64);
            let e = x / x.norm();
            phase += e;
            rad += s;
            mixed += e * s;
        }
        [phase.norm_sqr() - n as f64, rad, mixed.re, mixed.im]
    };
    let scale = (n as f64).powf(m as f64 / 2.0);
    let mut r1 = rng.split(1);
    let mut r2 = rng.split(2);
    let mut a: [Vec<f64>; 4] = Default::default();
    let mut b: [Vec<f64>; 4] = Default::default();
    let mut rad_a = Vec::new();
    let mut rad_b = Vec::new();
    for _ in 0..samples {
        let s = sample_ginibre_power(n, m, DEFAULT_MAX_DIMENSION, &mut r1)?;
        let x: Vec<Complex64> = s.points.iter().map(|w| w * scale).collect();
        let h = sample_high_powers(n, m, &mut r2)?;
        for (i, v) in stats(&x).into_iter().enumerate() {
            a[i].push(v);
        }
        for (i, v) in stats(&h.points).into_iter().enumerate() {
            b[i].push(v);
        }
        rad_a.extend(x.iter().map(|w| w.norm().powf(2.0 / m as f64)));
        rad_b.extend(h.points.iter().map(|w| w.norm().powf(2.0 / m as f64)));
    }
    let names = ["|sum e^(i theta)|^2 - N", "sum |x|^(2/M)", "Re sum |x|^(2/M) e^(i theta)", "Im sum |x|^(2/M) e^(i theta)"];
    let refs = [0.0, (n * (n + 1)) as f64 / 2.0, 0.0, 0.0];
    for i in 0..4 {
        cx.mean_check(&format!("{} (eigenvalues)", names[i]), &a[i], refs[i], ClosedForm, z);
        cx.two_sample_check(&format!("{} (eigenvalues vs independent gammas)", names[i]), &a[i], &b[i], z);
    }
    let ks = ks_two_sample(&rad_a, &rad_b, alpha)?;
    cx.ks("pooled |x|^(2/M) vs gamma radii", &ks, OracleSampler);
    cx.series("phase_sum_sq_minus_n", &a[0]);
    cx.series("radial_sum", &a[1]);
    Ok(())
}

fn random_striped(n: usize, m: usize, rng: &mut RngStream) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        let z = standard_complex_normal(rng);
        if (i as i64 - j as i64).rem_euclid(m as i64) == 0 {
            z
        } else {
            c(0.0, 0.0)
        }
    })
}

fn pg_decomposition_exact(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n_max = p.usize("n_max")?;
    let polys = p.usize("polys")?;
    let deg = p.usize("degree")? as u32;
    let mut r = rng.split(1);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in 1..=n_max {
        for m in 1..=n {
            let mut w: f64 = 0.0;
            for _ in 0..polys {
                let poly = random_poly(deg, &mut r);
                w = w.max(decomposition_identity_residual(n, m, &poly)?);
                cases += 1;
            }
            cx.record(n * 100 + m, "worst_residual", w);
            worst = worst.max(w);
        }
    }
    cx.note(format!("{cases} polynomials; replicate encodes 100 N + M"));
    cx.check(Check::at_most("decomposition residual", worst, p.f64("tol")?, Exact));

    let mut r2 = rng.split(2);
    let mut worst: f64 = 0.0;
    for _ in 0..p.usize("striped_cases")? {
        let n = 1 + (uniform01(&mut r2) * 12.0) as usize;
        let m = 1 + (uniform01(&mut r2) * n as f64) as usize;
        let a = random_striped(n, m.min(n), &mut r2);
        let full = log_det(&a)?;
        let fast = striped_det(&a, m.min(n))?;
        let d = ((fast / full).to_complex() - c(1.0, 0.0)).norm();
        worst = worst.max(d);
    }
    cx.check(Check::at_most("striped determinant vs full determinant", worst, p.f64("striped_tol")?, Exact));
    Ok(())
}

// Test polynomial for the Monte Carlo decomposition check.
fn mc_polynomial() -> MixedPolynomial {
    MixedPolynomial::from_terms([
        ((0, 0), c(1.0, 0.0)),
        ((1, 0), c(0.3, 0.1)),
        ((0, 1), c(-0.2, 0.0)),
        ((1, 1), c(0.05, 0.0)),
        ((2, 0), c(0.0, 0.02)),
    ])
}

fn pg_decomposition_mc(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n = positive("n", p.usize("n")?)?;
    let m = positive("m", p.usize("m")?)?;
    let samples = positive("samples", p.usize("samples")?)?;
    let z = p.f64("z")?;
    let poly = mc_polynomial();
    let mut exact: Complex64 = c(1.0, 0.0);
    for k in 1..=m {
        exact *= power_ginibre_product_stat(n, m, k, &poly)?;
    }
    cx.check(Check::at_most("exact identity residual", decomposition_identity_residual(n, m, &poly)?, 1e-9, Exact));

    let scale = (n as f64).powf(m as f64 / 2.0);
    let opts = DppOptions { max_block: n, ..Default::default() };
    let mut r1 = rng.split(1);
    let mut r2 = rng.split(2);
    let (mut ar, mut ai, mut br, mut bi) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for _ in 0..samples {
        let s = sample_ginibre_power(n, m, DEFAULT_MAX_DIMENSION, &mut r1)?;
        let v = s.product_stat(|w| poly.eval(w * scale));
        ar.push(v.re);
        ai.push(v.im);
        let mut u = c(1.0, 0.0);
        for k in 1..=m {
            let blk = sample_power_ginibre_block(n, m, k, &opts, &mut r2)?;
            u *= blk.product_stat(|w| poly.eval(w * scale));
        }
        br.push(u.re);
        bi.push(u.im);
    }
    cx.mean_check("Re E prod P(N^(M/2) lambda^M), eigenvalues", &ar, exact.re, Exact, z);
    cx.mean_check("Im E prod P(N^(M/2) lambda^M), eigenvalues", &ai, exact.im, Exact, z);
    cx.mean_check("Re E prod P, independent blocks", &br, exact.re, Exact, z);
    cx.mean_check("Im E prod P, independent blocks", &bi, exact.im, Exact, z);
    cx.series("re_product_eigenvalues", &ar);
    cx.series("re_product_blocks", &br);
    Ok(())
}

fn pg_kostlan(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n = positive("n", p.usize("n")?)?;
    let m = positive("m", p.usize("m")?)?;
    let samples = positive("samples", p.usize("samples")?)?;
    let alpha = p.f64("alpha")?;
    let z = p.f64("z")?;
    let scale = (n as f64).powf(m as f64 / 2.0);
    let opts = DppOptions { max_block: n, ..Default::default() };
    let g = MixedPolynomial::from_terms([((0, 0), c(1.0, 0.0)), ((1, 0), c(0.05, 0.02)), ((1, 1), c(0.02, 0.0))]);
    for k in 1..=m {
        let idx = ProgressionIndex::new(n, m, k)?.indices();
        if idx.is_empty() {
            continue;
        }
        let mut r1 = rng.split(10 + k as u64);
        let mut r2 = rng.split(100 + k as u64);
        let mut dpp = Vec::with_capacity(samples * idx.len());
        let mut gam = Vec::with_capacity(samples * idx.len());
        let (mut re, mut im) = (Vec::with_capacity(samples), Vec::with_capacity(samples));
        for _ in 0..samples {
            let s = sample_power_ginibre_block(n, m, k, &opts, &mut r1)?;
            dpp.extend(s.points.iter().map(|w| (w * scale).norm_sqr()));
            gam.extend(idx.iter().map(|&i| gamma(i as f64, &mut r2).powi(m as i32)));
            let v = s.product_stat(|w| g.eval(w * scale));
            re.push(v.re);
            im.push(v.im);
        }
        let ks = ks_two_sample(&dpp, &gam, alpha)?;
        cx.ks(&format!("block k={k}: squared radii vs gamma^M"), &ks, OracleSampler);
        let exact = power_ginibre_product_stat(n, m, k, &g)?;
        cx.mean_check(&format!("block k={k}: Re E prod g"), &re, exact.re, Exact, z);
        cx.mean_check(&format!("block k={k}: Im E prod g"), &im, exact.im, Exact, z);
        cx.series(&format!("re_product_k{k}"), &re);
    }
    cx.note("pooled KS over the points of a block is conservative (points repel, laws differ)");
    Ok(())
}

fn twisted_law(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n = positive("n", p.usize("n")?)?;
    let powers = p.usize_list("powers")?;
    let tol = p.f64("tol")?;
    let mut r = rng.split(1);
    let s = sample_ginibre_guarded(n, p.usize("max_dimension")?, &mut r)?;
    let mut panels = Vec::new();
    let mut curves = Vec::new();
    for &m in &powers {
        let m = positive("powers", m)?;
        let pts = s.powers(m as u32);
        let radii: Vec<f64> = pts.iter().map(|w| w.norm()).collect();
        let e = 2.0 / m as f64;
        let ks = ks_one_sample(&radii, |t| t.clamp(0.0, 1.0).powf(e), 0.05)?;
        cx.check(Check::at_most(&format!("M={m}: sup |F_N - r^(2/M)|"), ks.statistic, tol, ClosedForm));
        cx.record(0, &format!("sup_error_m{m}"), ks.statistic);
        let mut sorted = radii.clone();
        sorted.sort_by(f64::total_cmp);
        let step = (sorted.len() / 200).max(1);
        let emp: Vec<(f64, f64)> = sorted.iter().enumerate().step_by(step).map(|(i, &x)| (x.min(1.2), (i + 1) as f64 / sorted.len() as f64)).collect();
        let theory: Vec<(f64, f64)> = (0..=120).map(|i| {
            let t = i as f64 / 100.0;
            (t, t.min(1.0).powf(e))
        }).collect();
        curves.push((format!("empirical M={m}"), emp));
        curves.push((format!("r^(2/M), M={m}"), theory));
        panels.push((format!("M = {m}"), pts));
    }
    cx.plot("scatter.svg", svg::scatter_panels(&panels, 1.2));
    cx.plot("radial_cdf.svg", svg::line_plot("radial CDF of |lambda|^M", &curves, 1.2, 1.0));

    let dn = positive("density_n", p.usize("density_n")?)?;
    let dtol = p.f64("density_tol")?;
    let mut worst: f64 = 0.0;
    for &m in &powers {
        for k in 1..=m {
            let kern = PowerGinKernel::new(dn, m, k)?;
            for i in 0..=16 {
                let rr = 0.1 + 0.05 * i as f64;
                let got = kern.mean_density(c(rr, 0.0))?;
                let d = (got / twisted_circular_density(m, c(rr, 0.0)) - 1.0).abs();
                cx.record(i, &format!("density_rel_error_m{m}_k{k}"), d);
                worst = worst.max(d);
            }
        }
    }
    cx.check(Check::at_most("block mean density vs twisted law (relative)", worst, dtol, ClosedForm));
    Ok(())
}

fn bump(r: f64, radius: f64) -> f64 {
    let s = r / radius;
    if s >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

fn gff_variance(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n = positive("n", p.usize("n")?)?;
    let replicas = positive("replicas", p.usize("replicas")?)?;
    let powers = p.usize_list("powers")?;
    let radius = p.f64("radius")?;
    let alpha = p.f64("alpha")?;
    let zq = normal_two_sided(alpha);
    let f = |w: Complex64| bump(w.norm(), radius);
    let h = 1e-4;
    let sigma2 = 0.5
        * integrate(
            |r| {
                let d = (bump(r + h, radius) - bump((r - h).max(0.0), radius)) / (r + h - (r - h).max(0.0));
                r * d * d
            },
            0.0,
            radius,
            1e-13,
            1e-10,
        )?;
    cx.note(format!("sigma_f^2 = {sigma2:.6e}"));

    let values = replicates(replicas, &rng.split(1), |_, r| {
        let s = sample_ginibre(n, r)?;
        Ok(powers.iter().map(|&m| s.powers(m as u32).iter().map(|&w| f(w)).sum::<f64>()).collect::<Vec<f64>>())
    })?;
    let mut curves = Vec::new();
    for (j, &m) in powers.iter().enumerate() {
        let x: Vec<f64> = values.iter().map(|v| v[j]).collect();
        check_linear_statistic(cx, &format!("M={m}, full spectrum"), &x, m as f64 * sigma2, p.f64("tol")?, zq);
        cx.series(&format!("linear_statistic_m{m}"), &x);
        curves.push((format!("M={m}"), standardized_ecdf(&x)));
    }

    let block_m = 2;
    let opts = DppOptions { max_block: n, ..Default::default() };
    let block = replicates(positive("block_replicas", p.usize("block_replicas")?)?, &rng.split(2), |_, r| {
        let s = sample_power_ginibre_block(n, block_m, 1, &opts, r)?;
        Ok(s.points.iter().map(|&w| f(w)).sum::<f64>())
    })?;
    check_linear_statistic(cx, "M=2, block k=1", &block, sigma2, p.f64("block_tol")?, zq);
    cx.series("linear_statistic_block_m2_k1", &block);
    curves.push(("block M=2, k=1".to_string(), standardized_ecdf(&block)));
    let normal: Vec<(f64, f64)> = (0..=120).map(|i| {
        let t = -3.0 + 6.0 * i as f64 / 120.0;
        (t + 3.0, crate::numerics::normal_cdf(t))
    }).collect();
    curves.push(("standard normal".to_string(), normal));
    cx.plot("standardized_cdf.svg", svg::line_plot("standardized linear statistics (x shifted by 3)", &curves, 6.0, 1.0));
    Ok(())
}

fn standardized_ecdf(x: &[f64]) -> Vec<(f64, f64)> {
    let (m, v, _, _) = moments(x);
    let mut z: Vec<f64> = x.iter().map(|t| (t - m) / v.sqrt()).collect();
    z.sort_by(f64::total_cmp);
    let step = (z.len() / 200).max(1);
    z.iter().enumerate().step_by(step).map(|(i, &t)| ((t + 3.0).clamp(0.0, 6.0), (i + 1) as f64 / z.len() as f64)).collect()
}

fn check_linear_statistic(cx: &mut Ctx, label: &str, x: &[f64], target_var: f64, tol: f64, zq: f64) {
    let n = x.len() as f64;
    let (_, var, skew, kurt) = moments(x);
    cx.check(Check::relative(&format!("{label}: variance"), var, target_var, ClosedForm, tol));
    cx.note(format!("{label}: variance {var:.5e} (s.e. {:.2e}), target {target_var:.5e}", variance_se(x)));
    cx.check(Check::absolute(&format!("{label}: skewness"), skew, 0.0, ClosedForm, zq * (6.0 / n).sqrt()));
    cx.check(Check::absolute(&format!("{label}: excess kurtosis"), kurt, 0.0, ClosedForm, zq * (24.0 / n).sqrt()));
}

fn cue_rains(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n = positive("n", p.usize("n")?)?;
    let m = positive("m", p.usize("m")?)?;
    let samples = positive("samples", p.usize("samples")?)?;
    let z = normal_two_sided(p.f64("alpha")?);
    let blocks: Vec<usize> = ProgressionIndex::partition(n, m)?.iter().map(|b| b.cardinality()).collect();
    cx.note(format!("block sizes {blocks:?}"));

    // E|p_j|^2: min(Mj, N) for CUE(N)^M and sum_k min(j, c_k) for the union
    let ok = (1..=n + 1).all(|j| blocks.iter().map(|&ck| ck.min(j)).sum::<usize>() == (m * j).min(n));
    cx.check(Check::holds("power-sum variances agree with block sizes", ok, ClosedForm));
    let mut broken = Vec::new();
    for nn in 1..=8 {
        for mm in 1..=nn {
            let ceil: Vec<usize> = ProgressionIndex::partition(nn, mm)?.iter().map(|b| b.ceiling_count()).collect();
            if (1..=nn + 1).any(|j| ceil.iter().map(|&ck| ck.min(j)).sum::<usize>() != (mm * j).min(nn)) {
                broken.push(format!("({nn},{mm})"));
            }
        }
    }
    cx.note(format!("counts ceil((N-k)/M) break the power-sum identity at (N,M) in {}", broken.join(" ")));

    let mut g_pow = Laurent::new();
    g_pow.insert(0, c(1.25, 0.0));
    g_pow.insert(m as i32, c(-0.5, 0.0));
    g_pow.insert(-(m as i32), c(-0.5, 0.0));
    let mut g1 = Laurent::new();
    g1.insert(0, c(1.25, 0.0));
    g1.insert(1, c(-0.5, 0.0));
    g1.insert(-1, c(-0.5, 0.0));
    let lhs = cue_product_stat(n, &g_pow)?;
    let mut rhs = c(1.0, 0.0);
    for &ck in &blocks {
        rhs *= cue_product_stat(ck, &g1)?;
    }
    cx.check(Check::relative("E prod |1 - w/2|^2: powers vs blocks", lhs.re, rhs.re, Exact, 1e-10));

    let stats = |w: &[Complex64]| -> [f64; 3] {
        let p1: Complex64 = w.iter().sum();
        let p2: Complex64 = w.iter().map(|x| x * x).sum();
        let prod: f64 = w.iter().map(|x| (c(1.0, 0.0) - x * 0.5).norm_sqr()).product();
        [p1.norm_sqr(), p2.norm_sqr(), prod]
    };
    let mut r1 = rng.split(1);
    let mut r2 = rng.split(2);
    let mut a: [Vec<f64>; 3] = Default::default();
    let mut b: [Vec<f64>; 3] = Default::default();
    for _ in 0..samples {
        let s = sample_cue(n, &mut r1)?;
        for (i, v) in stats(&s.powers(m as u32)).into_iter().enumerate() {
            a[i].push(v);
        }
        let mut u = Vec::with_capacity(n);
        for &ck in &blocks {
            if ck > 0 {
                u.extend(sample_cue(ck, &mut r2)?.points);
            }
        }
        for (i, v) in stats(&u).into_iter().enumerate() {
            b[i].push(v);
        }
    }
    let names = ["|p_1|^2", "|p_2|^2", "prod |1 - w/2|^2"];
    let refs = [m.min(n) as f64, (2 * m).min(n) as f64, lhs.re];
    for i in 0..3 {
        cx.mean_check(&format!("{}: CUE(N)^M", names[i]), &a[i], refs[i], ClosedForm, z);
        cx.mean_check(&format!("{}: union of blocks", names[i]), &b[i], refs[i], ClosedForm, z);
        cx.two_sample_check(&format!("{}: CUE(N)^M vs union", names[i]), &a[i], &b[i], z);
    }
    cx.series("p1_sq_powers", &a[0]);
    cx.series("p1_sq_union", &b[0]);
    Ok(())
}

fn cue_charpoly(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n_max = p.usize("n_max")?;
    let pm = p.usize("power_max")? as u32;
    let tol = p.f64("tol")?;
    let mut worst: f64 = 0.0;
    let mut worst_toeplitz: f64 = 0.0;
    for n in 1..=n_max {
        for a in 0..=pm {
            for b in 0..=pm {
                let r = cue_charpoly_moment(n, a, b)?;
                worst = worst.max(r.relative_difference());
                if n <= 6 && a + b <= 4 {
                    let t = cue_product_stat(n, &charpoly_laurent(a, b))?;
                    worst_toeplitz = worst_toeplitz.max((t - c(r.product_formula, 0.0)).norm() / r.product_formula.abs().max(1.0));
                }
            }
        }
    }
    cx.check(Check::at_most("Pascal minor vs product formula", worst, tol, Exact));
    cx.check(Check::at_most("Toeplitz determinant vs product formula", worst_toeplitz, tol, Exact));

    let n = positive("bhny_n", p.usize("bhny_n")?)?;
    let samples = positive("samples", p.usize("samples")?)?;
    let z = p.f64("z")?;
    let mut r = rng.split(1);
    let (mut re, mut im, mut sq, mut quad) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for _ in 0..samples {
        let v = sample_bhny_charpoly(n, &mut r);
        re.push(v.re);
        im.push(v.im);
        sq.push(v.norm_sqr());
        quad.push(v.norm_sqr().powi(2));
    }
    cx.mean_check("E|Z|^2 = N + 1", &sq, n as f64 + 1.0, ClosedForm, z);
    cx.mean_check("Re E Z = 1", &re, 1.0, ClosedForm, z);
    cx.mean_check("Im E Z = 0", &im, 0.0, ClosedForm, z);
    cx.mean_check("E|Z|^4 vs product formula", &quad, cue_charpoly_moment(n, 2, 2)?.product_formula, Exact, z);
    cx.series("abs_z_squared", &sq);
    Ok(())
}

fn gue_decomposition(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n = positive("n", p.usize("n")?)?;
    let samples = positive("samples", p.usize("samples")?)?;
    let steps = positive("mcmc_steps", p.usize("mcmc_steps")?)?;
    let z = normal_two_sided(p.f64("alpha")?);
    let h = [1.0, 0.1];

    let mut worst: f64 = 0.0;
    for nn in 1..=8 {
        for hh in [&[1.0, 0.1][..], &[0.5, -0.2, 0.03][..], &[2.0, 0.0, 0.0, 0.01][..]] {
            let g: Vec<f64> = (0..2 * hh.len() - 1).map(|i| if i % 2 == 0 { hh[i / 2] } else { 0.0 }).collect();
            let full = gue_product_stat(nn, &g)?;
            let split = gue_block_product_stat(nn, 1, hh)? * gue_block_product_stat(nn, 2, hh)?;
            worst = worst.max((full - split).abs() / full.abs().max(f64::MIN_POSITIVE));
        }
    }
    cx.check(Check::at_most("E prod h(x^2) factorizes over the two blocks", worst, 1e-10, Exact));

    let exact_p = gue_product_stat(n, &[1.0, 0.0, 0.1])?;
    let nf = n as f64;
    let refs = [nf * nf, 2.0 * nf.powi(3) + nf, exact_p];
    let names = ["sum x^2", "sum x^4", "prod (1 + x^2/10)"];
    let stat = |y: &[f64]| -> [f64; 3] {
        [y.iter().sum(), y.iter().map(|t| t * t).sum(), y.iter().map(|t| h[0] + h[1] * t).product()]
    };
    let mut r = rng.split(1);
    let mut a: [Vec<f64>; 3] = Default::default();
    for _ in 0..samples {
        let s = sample_gue(n, &mut r)?;
        let y: Vec<f64> = s.points.iter().map(|x| x.re * x.re).collect();
        for (i, v) in stat(&y).into_iter().enumerate() {
            a[i].push(v);
        }
    }
    for i in 0..3 {
        cx.mean_check(&format!("{}: GUE sampler", names[i]), &a[i], refs[i], ClosedForm, z);
    }
    cx.series("sum_x2_gue", &a[0]);

    // independent real blocks, combined: sums add, products multiply
    let mut est = [(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)];
    for k in 1..=2usize {
        let count = ProgressionIndex::new(n, 2, k)?.cardinality();
        if count == 0 {
            continue;
        }
        let run = sample_real_block_mcmc(count, k, steps, &mut rng.split(10 + k as u64))?;
        let mut block = [(0.0, 0.0); 3];
        for (i, slot) in block.iter_mut().enumerate() {
            *slot = run.estimate(|pts| {
                let y: Vec<f64> = pts.iter().map(|w| w.re).collect();
                stat(&y)[i]
            }, 20);
        }
        let exact_block = gue_block_product_stat(n, k, &h)?;
        cx.check(Check::within_se(&format!("block k={k}: prod h, MCMC"), block[2].0, exact_block, Exact, block[2].1, z));
        cx.note(format!("block k={k}: {count} points, acceptance {:.3}", run.acceptance_rate));
        for i in 0..2 {
            est[i] = (est[i].0 + block[i].0, (est[i].1 * est[i].1 + block[i].1 * block[i].1).sqrt());
        }
        let (m0, s0) = est[2];
        let (m1, s1) = block[2];
        est[2] = (m0 * m1, ((m1 * s0).powi(2) + (m0 * s1).powi(2)).sqrt());
    }
    for i in 0..3 {
        cx.check(Check::within_se(&format!("{}: union of MCMC blocks", names[i]), est[i].0, refs[i], ClosedForm, est[i].1, z));
    }
    Ok(())
}

fn gue_det(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let n_max = p.usize("n_max")?;
    let m_max = p.usize("m_max")? as u32;
    let tol = p.f64("tol")?;
    let mono = |power: u32| -> Vec<f64> {
        let mut g = vec![0.0; power as usize + 1];
        g[power as usize] = 1.0;
        g
    };
    let (mut even, mut odd_zero, mut odd_form) = (0.0f64, 0.0f64, 0.0f64);
    let mut nonzero = Vec::new();
    for n in 1..=n_max {
        for m in 1..=m_max {
            let e = gue_product_stat(n, &mono(2 * m))?;
            even = even.max((e - gue_det_moment(n, m)).abs() / gue_det_moment(n, m));
        }
        for m in 0..m_max {
            let o = gue_product_stat(n, &mono(2 * m + 1))?;
            let scale = gue_det_moment(n, 2 * m + 1).sqrt();
            let rel = o.abs() / scale;
            if rel > tol {
                nonzero.push(format!("N={n}, power {}: {o:.6e}", 2 * m + 1));
            }
            odd_zero = odd_zero.max(rel);
            odd_form = odd_form.max((o - gue_det_odd_moment(n, m)).abs() / scale);
        }
    }
    cx.check(Check::at_most("E Pi^(2m): determinant route vs closed form", even, tol, Exact));
    cx.check(Check::at_most("E Pi^(2m+1) = 0 (relative to sqrt E Pi^(4m+2))", odd_zero, tol, Exact));
    cx.check(Check::at_most("E Pi^(2m+1): determinant route vs anti-striped closed form", odd_form, tol, Exact));
    if !nonzero.is_empty() {
        cx.note(format!(
            "odd moments do not vanish for even N, since det(-H) = det(H) there: {}",
            nonzero.join("; ")
        ));
    }

    let samples = positive("samples", p.usize("samples")?)?;
    let z = p.f64("z")?;
    for n in p.usize("sampler_n_min")?..=p.usize("sampler_n_max")? {
        let n = positive("sampler_n_min", n)?;
        let mut r = rng.split(10 + n as u64);
        let scalar: Vec<f64> = (0..samples).map(|_| sample_gue_det(n, GueDetCalibration::Scalar, &mut r)).collect();
        let root: Vec<f64> = (0..samples).map(|_| sample_gue_det(n, GueDetCalibration::SquareRoot, &mut r)).collect();
        let sq = |v: &[f64], q: i32| v.iter().map(|x| x.powi(q)).collect::<Vec<f64>>();
        cx.mean_check(&format!("N={n}: scalar sampler E Pi^2"), &sq(&scalar, 2), gue_det_moment(n, 1), ClosedForm, z);
        cx.mean_check(&format!("N={n}: square-root sampler E Pi^2"), &sq(&root, 2), gue_det_moment(n, 1), ClosedForm, z);
        cx.mean_check(&format!("N={n}: square-root sampler E Pi^4"), &sq(&root, 4), gue_det_moment(n, 2), ClosedForm, z);
        cx.mean_check(&format!("N={n}: square-root sampler E Pi"), &root, gue_det_odd_moment(n, 0), ClosedForm, z);
        cx.series(&format!("pi_squared_scalar_n{n}"), &sq(&scalar, 2));
    }
    cx.note("the sampler draws a symmetric sign, so its odd moments vanish; the exact ones do not for even N");
    Ok(())
}

fn mroot_asymptotics(cx: &mut Ctx, p: &Params) -> Result<(), HarnessError> {
    let sizes = p.usize_list("sizes")?;
    if sizes.len() < 2 || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HarnessError::Parameter { key: "sizes".into(), value: format!("{sizes:?}"), reason: "need at least two increasing sizes".into() });
    }
    let pairs = [
        (c(0.5, 0.0), Complex64::from_polar(0.4, 0.2)),
        (c(0.8, 0.0), Complex64::from_polar(0.8, 0.1)),
        (Complex64::from_polar(0.75, 0.5), Complex64::from_polar(0.8, 0.45)),
        (Complex64::from_polar(0.7, -1.0), Complex64::from_polar(0.72, -1.05)),
        (Complex64::from_polar(0.78, 2.0), Complex64::from_polar(0.76, 2.1)),
        (Complex64::from_polar(0.8, -2.5), Complex64::from_polar(0.7, -2.4)),
    ];
    let mut max_ratio: f64 = 0.0;
    let mut max_last: f64 = 0.0;
    let mut curves = Vec::new();
    for &(m, k) in &[(2usize, 1usize), (2, 2), (3, 1)] {
        for (i, &(z, w)) in pairs.iter().enumerate() {
            let mut res = Vec::new();
            for &n in &sizes {
                let v = PowerGinKernel::new(n, m, k)?.asymptotic_residual(z, w, OMEGA_EPSILON)?;
                cx.record(i, &format!("residual_m{m}_k{k}_n{n}"), v);
                res.push(v);
            }
            for w in res.windows(2) {
                max_ratio = max_ratio.max(w[1] / w[0]);
            }
            max_last = max_last.max(*res.last().unwrap());
            curves.push((format!("M={m} k={k} pair {i}"), sizes.iter().zip(&res).map(|(&n, &r)| (n as f64, r)).collect::<Vec<_>>()));
        }
    }
    cx.check(Check::at_most("largest ratio of successive residuals", max_ratio, 1.0, ClosedForm));
    cx.check(Check::at_most(&format!("largest residual at N={}", sizes.last().unwrap()), max_last, p.f64("bound")?, ClosedForm));

    let kern = PowerGinKernel::new(*sizes.last().unwrap(), 2, 1)?;
    let z = c(0.5, 0.0);
    let ratio = kern.j_quantity(z, -z) / kern.j_quantity(z, z * Complex64::from_polar(1.0, 0.01));
    cx.check(Check::at_most("antipodal J / aligned J", ratio, p.f64("antipodal_ratio")?, Exact));
    let y_max = curves.iter().flat_map(|(_, v)| v.iter().map(|t| t.1)).fold(0.0, f64::max);
    cx.plot("residuals.svg", svg::line_plot("relative residual of J against N", &curves[..6], *sizes.last().unwrap() as f64, y_max));
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn microscopic(cx: &mut Ctx, p: &Params) -> Result<(), HarnessError> {
    let tol = p.f64("tol")?;
    let (z, w) = (c(2.0, 1.0), c(1.5, 1.8));
    let mut worst: f64 = 0.0;
    for &(m, k) in &[(2usize, 1usize), (3, 1), (3, 2), (4, 3), (5, 4)] {
        let base = microscopic_kernel(m, k, z, w);
        for j in (1..m).filter(|j| gcd(*j, m) == 1) {
            for s in 0..m {
                // a common branch shift and any primitive root leave it unchanged
                let v = microscopic_kernel_with(m, k, z, w, RootChoice { zeta_index: j, z_branch: s, w_branch: s });
                worst = worst.max((v - base).norm());
            }
        }
        for s in 0..m {
            let v = microscopic_kernel_with(m, k, z, w, RootChoice { zeta_index: 1, z_branch: s, w_branch: 0 });
            worst = worst.max((v.norm() - base.norm()).abs());
            if k == 1 {
                worst = worst.max((v - base).norm());
            }
        }
        let det = |bz: usize, bw: usize| {
            let kz = microscopic_kernel_with(m, k, z, z, RootChoice { zeta_index: 1, z_branch: bz, w_branch: bz });
            let kw = microscopic_kernel_with(m, k, w, w, RootChoice { zeta_index: 1, z_branch: bw, w_branch: bw });
            let kzw = microscopic_kernel_with(m, k, z, w, RootChoice { zeta_index: 1, z_branch: bz, w_branch: bw });
            (kz * kw - kzw * kzw.conj()).re
        };
        worst = worst.max((det(0, 0) - det(1, m - 1)).abs());
    }
    cx.check(Check::at_most("root-choice invariance", worst, tol, Exact));
    let gin = Complex64::from_polar((-0.5 * (z - w).norm_sqr()).exp(), (z * w.conj()).im);
    cx.check(Check::absolute("M=1 limit is the Ginibre kernel", (microscopic_kernel(1, 1, z, w) - gin).norm(), 0.0, ClosedForm, tol));

    let sizes = p.usize_list("sizes")?;
    if sizes.len() < 2 {
        return Err(HarnessError::Parameter { key: "sizes".into(), value: format!("{sizes:?}"), reason: "need at least two sizes".into() });
    }
    let mut max_ratio: f64 = 0.0;
    for &(m, k) in &[(2usize, 1usize), (2, 2), (3, 2)] {
        for (i, &(s, dphi)) in [(70.0f64, 0.0f64), (110.0, 0.02), (130.0, -0.01), (90.0, 0.01), (150.0, 0.0)].iter().enumerate() {
            let z = Complex64::from_polar(s.powf(m as f64 / 2.0), 0.3);
            let w = Complex64::from_polar((s * 1.02).powf(m as f64 / 2.0), 0.3 + dphi);
            let lim = microscopic_kernel(m, k, z, w);
            let mut res = Vec::new();
            for &n in &sizes {
                let d = (finite_microscopic_kernel(n, m, k, z, w, RootChoice::default())? - lim).norm();
                cx.record(i, &format!("finite_n_error_m{m}_k{k}_n{n}"), d);
                res.push(d);
            }
            for r in res.windows(2) {
                max_ratio = max_ratio.max(r[1] / r[0]);
            }
        }
    }
    cx.check(Check::at_most("finite-N kernel error ratio (must decrease)", max_ratio, 1.0, ClosedForm));

    let stol = p.f64("structure_tol")?;
    let kern = PowerGinKernel::new(8, 2, 1)?;
    let trace = integrate_plane(|u| kern.kernel_eval(u, u) * kern.reference_density(u), 256, 1e-12, 1e-11)?;
    cx.check(Check::absolute("trace of the (8,2,1) kernel equals c_k", trace.re, kern.c_k as f64, Exact, stol));
    let mut worst: f64 = 0.0;
    for &(z, w) in &[(c(0.3, 0.1), c(-0.2, 0.4)), (c(0.5, -0.5), c(0.1, 0.0))] {
        let got = integrate_plane(|u| kern.kernel_eval(z, u) * kern.kernel_eval(u, w) * kern.reference_density(u), 256, 1e-10, 1e-10)?;
        let want = kern.kernel_eval(z, w);
        worst = worst.max((got - want).norm() / want.norm().max(1.0));
    }
    cx.check(Check::at_most("reproducing property of the (8,2,1) kernel", worst, stol, Exact));
    Ok(())
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn beta_latent_n2(cx: &mut Ctx, p: &Params) -> Result<(), HarnessError> {
    let p_max = p.usize("p_max")? as u32;
    let v = RadialPotential::quadratic();
    let (mut coeff_ok, mut z_ok, mut json_ok) = (true, true, true);
    let (mut prob_err, mut logz_err) = (0.0f64, 0.0f64);
    for pp in 1..=p_max {
        let table = expand_vandermonde_power_guarded(2, pp, (2, p_max))?;
        for j in 0..=pp {
            let sign = if (pp - j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            coeff_ok &= table.coefficient(&[j, pp - j]) == sign * binomial(pp, j);
        }
        let (_, z) = exact_quadratic_weights(&table);
        let fact: BigInt = (1..=pp).fold(BigInt::one(), |a, i| a * BigInt::from(i));
        z_ok &= z == (BigInt::one() << pp as usize) * fact;
        let dist = latent_distribution(&table, &v)?;
        for (u, &pr) in dist.support.iter().zip(&dist.probabilities) {
            let want = crate::numerics::log_binomial(pp as f64, u[0] as f64).exp() / 2f64.powi(pp as i32);
            prob_err = prob_err.max((pr - want).abs());
            cx.record(pp as usize, &format!("p_latent_u1_{}", u[0]), pr);
        }
        logz_err = logz_err.max((dist.log_z - log_z_two_points(pp)).abs());
        let back = LatentWeightTable::from_json(&table.to_json())?;
        json_ok &= back.n == table.n && back.p == table.p && back.entries == table.entries;
    }
    cx.check(Check::holds("coefficients are (-1)^(u_2) C(p, u_1)", coeff_ok, Exact));
    cx.check(Check::holds("Z = 2^p p! exactly", z_ok, Exact));
    cx.check(Check::absolute("latent law is Binomial(p, 1/2)", prob_err, 0.0, Exact, 1e-12));
    cx.check(Check::absolute("ln Z from the mixture vs ln(2^p p!)", logz_err, 0.0, ClosedForm, 1e-10));
    cx.check(Check::holds("weight table JSON round trip", json_ok, Exact));
    Ok(())
}

fn beta_latent_mcmc(cx: &mut Ctx, p: &Params, rng: &RngStream) -> Result<(), HarnessError> {
    let samples = positive("samples", p.usize("samples")?)?;
    let steps = positive("mcmc_steps", p.usize("mcmc_steps")?)?;
    let v = RadialPotential::quadratic();
    let cases: [(usize, u32, &str, fn(f64) -> f64); 2] = [(2, 2, "r", |r| r), (3, 2, "1 + r", |r| 1.0 + r)];
    for (i, (n, pp, label, g)) in cases.into_iter().enumerate() {
        let mut r = rng.split(i as u64 + 1);
        let res = verify_conditional_radii_against_mcmc(n, pp, &v, &g, samples, steps, &mut r)?;
        let name = format!("N={n}, p={pp}, g = {label}");
        cx.check(Check::within_se(&format!("{name}: conditional sampler"), res.conditional.mean, res.exact, Exact, res.conditional.se, 3.0));
        cx.check(Check::within_se(&format!("{name}: MCMC"), res.mcmc.mean, res.exact, Exact, res.mcmc.se, 4.0));
        cx.note(format!("{name}: exact {:.6}, MCMC acceptance {:.3}", res.exact, res.mcmc_acceptance));
        cx.record(i, "exact", res.exact);
        cx.record(i, "conditional_mean", res.conditional.mean);
        cx.record(i, "mcmc_mean", res.mcmc.mean);
    }
    cx.note("bands: 3 s.e. for the independent sampler, 4 s.e. for batch-means MCMC");
    Ok(())
}

