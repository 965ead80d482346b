// Acceptance suite: one line per criterion, nonzero exit if any fails.

use powergin::exact::{evaluate_terms, eval_monomial_symmetric, spanning_coefficients, translation_invariance_check, MixedPolynomial, ShiftTable};
use powergin::harness::{self, Check, ExperimentId, ExperimentSpec, TestReport};
use powergin::numerics::{partial_exp_sum, roots_of_unity_filter, Terms};
use powergin::samplers::{uniform01, RngStream};
use powergin::Complex64;
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

struct Runner {
    seed: u64,
    out: PathBuf,
    reports: HashMap<ExperimentId, TestReport>,
    failures: usize,
}

impl Runner {
    fn report(&mut self, id: ExperimentId, params: &[(&str, &str)]) -> TestReport {
        if let Some(r) = self.reports.get(&id) {
            return r.clone();
        }
        let params: BTreeMap<String, String> = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let spec = ExperimentSpec::new(id, params, self.seed).expect("valid parameters").with_out_dir(self.out.join(id.as_str()));
        let r = harness::run(&spec);
        self.reports.insert(id, r.clone());
        r
    }

    fn line(&mut self, number: u32, title: &str, pass: bool, detail: String, seconds: f64) {
        if !pass {
            self.failures += 1;
        }
        println!("[{}] {number:>2} {title}: {detail} ({seconds:.2} s)", if pass { "PASS" } else { "FAIL" });
    }
}

fn select(r: &TestReport, pred: impl Fn(&str) -> bool) -> Vec<&Check> {
    r.checks.iter().filter(|c| pred(&c.name)).collect()
}

/// Verdict and a summary naming the failing checks, or the tightest one.
fn verdict(r: &TestReport, checks: &[&Check]) -> (bool, String) {
    if let Some(e) = &r.error {
        return (false, format!("error: {e}"));
    }
    if checks.is_empty() {
        return (false, "no matching checks".into());
    }
    let failed: Vec<&&Check> = checks.iter().filter(|c| !c.pass).collect();
    if failed.is_empty() {
        let tight = checks.iter().min_by(|a, b| a.margin.total_cmp(&b.margin)).unwrap();
        (true, format!("{} checks; smallest margin '{}' {:.3e} vs {:.3e}", checks.len(), tight.name, tight.statistic, tight.reference))
    } else {
        let names: Vec<String> = failed.iter().map(|c| format!("'{}' {:.3e} vs {:.3e}", c.name, c.statistic, c.reference)).collect();
        (false, format!("{} of {} checks fail: {}", failed.len(), checks.len(), names.join("; ")))
    }
}

fn within_time(pass: bool, detail: String, seconds: f64, limit: Option<f64>) -> (bool, String) {
    match limit {
        Some(l) if seconds >= l => (false, format!("{detail}; runtime {seconds:.1} s exceeds {l} s")),
        _ => (pass, detail),
    }
}

fn library_identities() -> (bool, String) {
    // roots-of-unity filter against the direct series
    let mut filter_worst: f64 = 0.0;
    for m in 1..=6 {
        for k in 1..=m {
            for x in [Complex64::new(0.7, 0.2), Complex64::new(-5.0, 3.0), Complex64::new(9.0, 9.0), Complex64::new(-20.0, -1.0)] {
                let series = partial_exp_sum(m, k, x, Terms::Infinite).unwrap();
                let filter = roots_of_unity_filter(m, k, x).unwrap();
                let scale = (0..m).map(|j| (x * Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)).exp().norm()).fold(0.0, f64::max);
                filter_worst = filter_worst.max((series - filter).norm() / scale);
            }
        }
    }

    let mut rng = RngStream::new(31);
    let mut u = |a: f64, b: f64| a + (b - a) * uniform01(&mut rng);
    let shifts: Vec<(Complex64, Complex64)> = (0..8).map(|_| (Complex64::new(u(-1.0, 1.0), u(-1.0, 1.0)), Complex64::new(u(-1.0, 1.0), u(-1.0, 1.0)))).collect();
    let mut trans_worst: f64 = 0.0;
    for table in [ShiftTable::Cue, ShiftTable::Gaussian] {
        for n in 1..=6 {
            let mut g = MixedPolynomial::one();
            for a in 0..=2u32 {
                for b in 0..=2 - a {
                    g.add_term(a, b, Complex64::new(u(-1.0, 1.0), u(-1.0, 1.0)));
                }
            }
            trans_worst = trans_worst.max(translation_invariance_check(table, &g, n, &shifts).unwrap());
        }
    }

    let mut span_worst: f64 = 0.0;
    let targets: [&[(u32, u32)]; 4] = [&[(1, 0)], &[(2, 1), (0, 1)], &[(1, 1), (1, 1), (2, 0)], &[(3, 0), (0, 2), (1, 1)]];
    for target in targets {
        for n in target.len()..=4 {
            let terms = spanning_coefficients(target, n).unwrap();
            for _ in 0..20 {
                let z: Vec<Complex64> = (0..n).map(|_| Complex64::new(u(-1.0, 1.0), u(-1.0, 1.0))).collect();
                let want = eval_monomial_symmetric(target, &z).unwrap();
                span_worst = span_worst.max((evaluate_terms(&terms, &z) - want).norm() / want.norm().max(1.0));
            }
        }
    }
    let pass = filter_worst <= 1e-12 && trans_worst <= 1e-9 && span_worst <= 1e-8;
    (pass, format!("filter {filter_worst:.2e} <= 1e-12, translation {trans_worst:.2e} <= 1e-9, spanning {span_worst:.2e} <= 1e-8"))
}

fn main() -> ExitCode {
    let seed = harness::default_seed().expect("seed");
    let out = std::env::temp_dir().join("powergin-acceptance");
    let mut run = Runner { seed, out: out.clone(), reports: HashMap::new(), failures: 0 };
    println!("acceptance suite, seed {seed}");

    let r = run.report(ExperimentId::PgDecompositionExact, &[("n_max", "8"), ("polys", "20"), ("degree", "3"), ("tol", "1e-9"), ("striped_cases", "200"), ("striped_tol", "1e-10")]);
    let (p, d) = verdict(&r, &select(&r, |n| n == "decomposition residual"));
    let (p, d) = within_time(p, d, r.runtime_seconds, Some(10.0));
    run.line(1, "Power-Ginibre decomposition, exact", p, d, r.runtime_seconds);
    let (p, d) = verdict(&r, &select(&r, |n| n.starts_with("striped determinant")));
    let (p, d) = within_time(p, d, r.runtime_seconds, Some(1.0));
    run.line(2, "striped determinant lemma", p, d, r.runtime_seconds);

    let r = run.report(ExperimentId::KostlanKs, &[("n", "8"), ("samples", "10000"), ("alpha", "0.001"), ("exact_n_max", "8"), ("exact_degree", "4"), ("exact_tol", "1e-9")]);
    let (p, d) = verdict(&r, &select(&r, |_| true));
    let (p, d) = within_time(p, d, r.runtime_seconds, Some(120.0));
    run.line(3, "Kostlan radii", p, d, r.runtime_seconds);

    let r = run.report(ExperimentId::HighpowerIndep, &[("n", "4"), ("m", "5"), ("z", "3"), ("exact_n_max", "5"), ("exact_tol", "1e-8")]);
    let (p, d) = verdict(&r, &select(&r, |_| true));
    run.line(4, "high powers, M >= N", p, d, r.runtime_seconds);

    let r = run.report(ExperimentId::CueCharpoly, &[("n_max", "12"), ("power_max", "5"), ("tol", "1e-9"), ("bhny_n", "5"), ("samples", "1000000"), ("z", "3")]);
    let (p, d) = verdict(&r, &select(&r, |n| n == "Pascal minor vs product formula" || n == "E|Z|^2 = N + 1"));
    let (p, d) = within_time(p, d, r.runtime_seconds, Some(60.0));
    run.line(5, "CUE characteristic polynomial moments", p, d, r.runtime_seconds);

    let r = run.report(ExperimentId::GueDet, &[("n_max", "8"), ("m_max", "4"), ("tol", "1e-9"), ("sampler_n_min", "2"), ("sampler_n_max", "6"), ("samples", "100000"), ("z", "3")]);
    let (p, d) = verdict(&r, &select(&r, |n| n.starts_with("E Pi^(2m): ") || n.starts_with("E Pi^(2m+1) = 0") || n.contains("scalar sampler E Pi^2")));
    run.line(6, "GUE determinant moments", p, d, r.runtime_seconds);

    let r = run.report(ExperimentId::TwistedLaw, &[("n", "2000"), ("powers", "1,2,3"), ("tol", "0.02"), ("density_n", "4000"), ("density_tol", "0.02")]);
    let (p, d) = verdict(&r, &select(&r, |n| n.contains("sup |F_N")));
    let svg = out.join("twisted-law").join("scatter.svg");
    let (p, d) = if svg.exists() { (p, format!("{d}; scatter at {}", svg.display())) } else { (false, format!("{d}; scatter.svg missing")) };
    let (p, d) = within_time(p, d, r.runtime_seconds, Some(300.0));
    run.line(7, "twisted circular law, radial CDF", p, d, r.runtime_seconds);
    let (p, d) = verdict(&r, &select(&r, |n| n.starts_with("block mean density")));
    run.line(8, "mean twisted law at N = 4000", p, d, r.runtime_seconds);

    let r = run.report(ExperimentId::GffVariance, &[("n", "256"), ("replicas", "2000"), ("powers", "1,2"), ("tol", "0.15"), ("block_tol", "0.2"), ("block_replicas", "2000")]);
    let (p, d) = verdict(&r, &select(&r, |n| n.ends_with(": variance")));
    let (p, d) = within_time(p, d, r.runtime_seconds, Some(1800.0));
    run.line(9, "linear statistic variance", p, d, r.runtime_seconds);

    let r = run.report(ExperimentId::PgKostlan, &[("n", "6"), ("m", "2"), ("samples", "10000"), ("alpha", "0.001"), ("z", "3")]);
    let (p, d) = verdict(&r, &select(&r, |_| true));
    run.line(10, "DPP block sampler", p, d, r.runtime_seconds);

    let r = run.report(ExperimentId::MicroscopicKernel, &[("sizes", "20,80,320"), ("tol", "1e-12"), ("structure_tol", "1e-6")]);
    let (p, d) = verdict(&r, &select(&r, |_| true));
    run.line(11, "kernel structure", p, d, r.runtime_seconds);

    let a = run.report(ExperimentId::BetaLatentN2, &[("p_max", "6")]);
    let b = run.report(ExperimentId::BetaLatentMcmc, &[("samples", "200000")]);
    let (pa, da) = verdict(&a, &select(&a, |_| true));
    let (pb, db) = verdict(&b, &select(&b, |_| true));
    let secs = a.runtime_seconds + b.runtime_seconds;
    let (p, d) = within_time(pa && pb, format!("two points: {da}; radii: {db}"), secs, Some(600.0));
    run.line(12, "even-beta latent variables", p, d, secs);

    let t = Instant::now();
    let (p, d) = library_identities();
    run.line(13, "identity library", p, d, t.elapsed().as_secs_f64());

    println!("{} of 13 criteria pass", 13 - run.failures);
    if run.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
