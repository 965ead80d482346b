use super::HarnessError;

/// A declared parameter with its default. Significance levels and
/// tolerances are parameters too, so every report records them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub key: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

macro_rules! p {
    ($key:expr, $default:expr, $doc:expr) => {
        ParamSpec { key: $key, default: $default, doc: $doc }
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentId {
    KostlanKs,
    HighpowerIndep,
    PgDecompositionExact,
    PgDecompositionMc,
    PgKostlan,
    TwistedLaw,
    GffVariance,
    CueRains,
    CueCharpoly,
    GueDecomposition,
    GueDet,
    MrootAsymptotics,
    MicroscopicKernel,
    BetaLatentN2,
    BetaLatentMcmc,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 15] = [
        ExperimentId::KostlanKs,
        ExperimentId::HighpowerIndep,
        ExperimentId::PgDecompositionExact,
        ExperimentId::PgDecompositionMc,
        ExperimentId::PgKostlan,
        ExperimentId::TwistedLaw,
        ExperimentId::GffVariance,
        ExperimentId::CueRains,
        ExperimentId::CueCharpoly,
        ExperimentId::GueDecomposition,
        ExperimentId::GueDet,
        ExperimentId::MrootAsymptotics,
        ExperimentId::MicroscopicKernel,
        ExperimentId::BetaLatentN2,
        ExperimentId::BetaLatentMcmc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentId::KostlanKs => "kostlan-ks",
            ExperimentId::HighpowerIndep => "highpower-indep",
            ExperimentId::PgDecompositionExact => "pg-decomposition-exact",
            ExperimentId::PgDecompositionMc => "pg-decomposition-mc",
            ExperimentId::PgKostlan => "pg-kostlan",
            ExperimentId::TwistedLaw => "twisted-law",
            ExperimentId::GffVariance => "gff-variance",
            ExperimentId::CueRains => "cue-rains",
            ExperimentId::CueCharpoly => "cue-charpoly",
            ExperimentId::GueDecomposition => "gue-decomposition",
            ExperimentId::GueDet => "gue-det",
            ExperimentId::MrootAsymptotics => "mroot-asymptotics",
            ExperimentId::MicroscopicKernel => "microscopic-kernel",
            ExperimentId::BetaLatentN2 => "beta-latent-n2",
            ExperimentId::BetaLatentMcmc => "beta-latent-mcmc",
        }
    }

    pub fn parse(s: &str) -> Result<Self, HarnessError> {
        Self::ALL.iter().copied().find(|id| id.as_str() == s).ok_or_else(|| HarnessError::UnknownExperiment(s.to_string()))
    }

    /// Key for the experiment's RNG substream.
    pub(crate) fn stream_key(self) -> u64 {
        Self::ALL.iter().position(|&x| x == self).unwrap() as u64 + 1
    }

    pub fn description(self) -> &'static str {
        match self {
            ExperimentId::KostlanKs => "Ginibre squared moduli against independent gamma radii",
            ExperimentId::HighpowerIndep => "high powers of Ginibre eigenvalues are independent with uniform phases",
            ExperimentId::PgDecompositionExact => "power-Ginibre block decomposition, exact determinant identity",
            ExperimentId::PgDecompositionMc => "power-Ginibre block decomposition, Monte Carlo",
            ExperimentId::PgKostlan => "block squared radii against gamma powers",
            ExperimentId::TwistedLaw => "radial law of powered Ginibre spectra and the mean density",
            ExperimentId::GffVariance => "linear statistics of powered spectra: variance and normality",
            ExperimentId::CueRains => "CUE powers against independent smaller CUE blocks",
            ExperimentId::CueCharpoly => "CUE characteristic polynomial moments",
            ExperimentId::GueDecomposition => "squared GUE spectrum against independent real blocks",
            ExperimentId::GueDet => "GUE determinant moments and the determinant sampler",
            ExperimentId::MrootAsymptotics => "large-N kernel asymptotics at the unit circle",
            ExperimentId::MicroscopicKernel => "microscopic kernel: root-choice invariance and finite-N limit",
            ExperimentId::BetaLatentN2 => "latent weights for two points: binomial law and normalization",
            ExperimentId::BetaLatentMcmc => "latent-variable radii against an MCMC oracle",
        }
    }

    pub fn params(self) -> &'static [ParamSpec] {
        match self {
            ExperimentId::KostlanKs => &[
                p!("n", "8", "matrix size"),
                p!("samples", "10000", "number of matrices"),
                p!("alpha", "0.001", "KS significance level"),
                p!("exact_n_max", "8", "largest N for the exact radial check"),
                p!("exact_degree", "4", "degree of the radial test polynomials"),
                p!("exact_tol", "1e-9", "relative tolerance of the exact check"),
            ],
            ExperimentId::HighpowerIndep => &[
                p!("n", "4", "matrix size"),
                p!("m", "5", "power, at least n"),
                p!("samples", "20000", "number of matrices"),
                p!("z", "3", "standard errors allowed"),
                p!("alpha", "0.001", "KS significance level"),
                p!("exact_n_max", "5", "largest N for the exact check"),
                p!("exact_tol", "1e-8", "relative tolerance of the exact check"),
            ],
            ExperimentId::PgDecompositionExact => &[
                p!("n_max", "8", "largest matrix size"),
                p!("polys", "20", "random polynomials per (N, M)"),
                p!("degree", "3", "polynomial degree"),
                p!("tol", "1e-9", "relative residual tolerance"),
                p!("striped_cases", "200", "random striped matrices"),
                p!("striped_tol", "1e-10", "tolerance of the striped determinant"),
            ],
            ExperimentId::PgDecompositionMc => &[
                p!("n", "4", "matrix size"),
                p!("m", "2", "power"),
                p!("samples", "20000", "number of matrices"),
                p!("z", "3", "standard errors allowed"),
            ],
            ExperimentId::PgKostlan => &[
                p!("n", "6", "matrix size"),
                p!("m", "2", "power"),
                p!("samples", "10000", "samples per block"),
                p!("alpha", "0.001", "KS significance level"),
                p!("z", "3", "standard errors allowed"),
            ],
            ExperimentId::TwistedLaw => &[
                p!("n", "2000", "matrix size"),
                p!("powers", "1,2,3", "powers M"),
                p!("tol", "0.02", "sup-norm tolerance of the radial CDF"),
                p!("density_n", "4000", "matrix size for the mean density"),
                p!("density_tol", "0.02", "relative tolerance of the mean density"),
                p!("max_dimension", "2048", "largest matrix the sampler may build"),
            ],
            ExperimentId::GffVariance => &[
                p!("n", "256", "matrix size"),
                p!("replicas", "2000", "number of matrices"),
                p!("powers", "1,2", "powers M"),
                p!("tol", "0.15", "relative variance tolerance, full spectrum"),
                p!("block_tol", "0.2", "relative variance tolerance, single block"),
                p!("block_replicas", "2000", "number of block samples"),
                p!("alpha", "0.001", "significance level of the moment tests"),
                p!("radius", "0.8", "support radius of the test function"),
            ],
            ExperimentId::CueRains => &[
                p!("n", "6", "matrix size"),
                p!("m", "2", "power"),
                p!("samples", "20000", "samples per ensemble"),
                p!("alpha", "0.001", "significance level"),
            ],
            ExperimentId::CueCharpoly => &[
                p!("n_max", "12", "largest matrix size"),
                p!("power_max", "5", "largest exponent of each factor"),
                p!("tol", "1e-9", "relative tolerance"),
                p!("bhny_n", "5", "matrix size of the sampler check"),
                p!("samples", "1000000", "sampler draws"),
                p!("z", "3", "standard errors allowed"),
            ],
            ExperimentId::GueDecomposition => &[
                p!("n", "5", "matrix size"),
                p!("samples", "20000", "GUE matrices"),
                p!("mcmc_steps", "2000000", "MCMC steps per block"),
                p!("alpha", "0.001", "significance level"),
            ],
            ExperimentId::GueDet => &[
                p!("n_max", "8", "largest N of the exact checks"),
                p!("m_max", "4", "largest m of the exact checks"),
                p!("tol", "1e-9", "relative tolerance"),
                p!("sampler_n_min", "2", "smallest N of the sampler check"),
                p!("sampler_n_max", "6", "largest N of the sampler check"),
                p!("samples", "100000", "sampler draws per N"),
                p!("z", "3", "standard errors allowed"),
            ],
            ExperimentId::MrootAsymptotics => &[
                p!("sizes", "50,100,200", "increasing values of N"),
                p!("bound", "0.05", "largest residual at the last size"),
                p!("antipodal_ratio", "0.01", "largest antipodal kernel ratio"),
            ],
            ExperimentId::MicroscopicKernel => &[
                p!("sizes", "20,80,320", "increasing values of N"),
                p!("tol", "1e-12", "tolerance of the root-choice invariance"),
                p!("structure_tol", "1e-6", "tolerance of trace and reproducing checks"),
            ],
            ExperimentId::BetaLatentN2 => &[p!("p_max", "6", "largest power of the Vandermonde")],
            ExperimentId::BetaLatentMcmc => &[
                p!("samples", "200000", "exact conditional samples"),
                p!("mcmc_steps", "3000000", "MCMC steps"),
            ],
        }
    }
}

impl std::fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ExperimentId {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        Self::parse(s)
    }
}
