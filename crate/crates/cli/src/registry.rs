//! The fixed set of experiments.

use crate::config::ModelConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    WeylCount,
    WeylTrace,
    EntropyAreaLaw,
    Cumulants,
    Cgf,
    Clt,
    Tails,
    Laplace,
    Constants,
    KernelXcheck,
    FourierInterval,
    EulerMaclaurin,
}

pub struct ExperimentInfo {
    pub name: &'static str,
    /// The result an experiment reproduces.
    pub anchor: &'static str,
    pub summary: &'static str,
    pub default_model: Option<fn() -> ModelConfig>,
    pub default_ladder: Option<&'static [u32]>,
    /// Whether the experiment draws random numbers (and needs a seed).
    pub samples: bool,
}

const CONVERGENCE_LADDER: &[u32] = &[100, 200, 400, 800];
const SAMPLING_LADDER: &[u32] = &[100, 400, 1600];

fn disk() -> ModelConfig {
    ModelConfig::disk(1.0)
}

fn cylinder() -> ModelConfig {
    ModelConfig::cylinder()
}

impl Experiment {
    pub const ALL: [Experiment; 12] = [
        Experiment::WeylCount,
        Experiment::WeylTrace,
        Experiment::EntropyAreaLaw,
        Experiment::Cumulants,
        Experiment::Cgf,
        Experiment::Clt,
        Experiment::Tails,
        Experiment::Laplace,
        Experiment::Constants,
        Experiment::KernelXcheck,
        Experiment::FourierInterval,
        Experiment::EulerMaclaurin,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.info().name == name)
    }

    pub fn info(self) -> ExperimentInfo {
        use Experiment::*;
        let (name, anchor, summary, default_model, default_ladder, samples): (
            _,
            _,
            _,
            Option<fn() -> ModelConfig>,
            Option<&'static [u32]>,
            _,
        ) = match self {
            WeylCount => (
                "weyl-count",
                "Weyl law for eigenvalue counts in [a,b]",
                "count of eigenvalues in [a,b] against k^{n-1/2} vol(dA)/(2pi)^n (er^-1(b) - er^-1(a))",
                Some(disk),
                Some(CONVERGENCE_LADDER),
                false,
            ),
            WeylTrace => (
                "weyl-trace",
                "boundary trace law tr f(T) ~ k^{n-1/2} vol(dA)/(2pi)^n I(f)",
                "tr f(T) for functions vanishing at 0 and 1 against the boundary prediction",
                Some(disk),
                Some(CONVERGENCE_LADDER),
                false,
            ),
            EntropyAreaLaw => (
                "entropy-arealaw",
                "area law for the entanglement entropy of the filled state",
                "entanglement entropy against k^{n-1/2} vol(dA)/(2pi)^n I(f_entropy)",
                Some(disk),
                Some(CONVERGENCE_LADDER),
                false,
            ),
            Cumulants => (
                "cumulants",
                "particle-number cumulants: even ones follow the area law, odd ones are suppressed",
                "kappa_2 and kappa_4 against the boundary prediction, |kappa_3|/kappa_2 against k^{-1/4}",
                Some(disk),
                Some(CONVERGENCE_LADDER),
                false,
            ),
            Cgf => (
                "cgf",
                "rescaled cumulant generating function converges to vol(dA)/(2pi)^n I(f(t,.))",
                "k^{-n+1/2} cgf(t) against the boundary functional, pointwise in t",
                Some(cylinder),
                Some(CONVERGENCE_LADDER),
                false,
            ),
            Clt => (
                "clt",
                "central limit theorem for the particle number at scale k^{n/2-1/4}",
                "sampled and exact Kolmogorov-Smirnov distance to the predicted normal law",
                Some(cylinder),
                Some(SAMPLING_LADDER),
                true,
            ),
            Tails => (
                "tails",
                "Chernoff-type tail bound exp(-k^{min(alpha_c+beta, 2 beta)}/C)",
                "empirical exceedance frequency and the smallest admissible C",
                Some(cylinder),
                Some(SAMPLING_LADDER),
                true,
            ),
            Laplace => (
                "laplace",
                "Laplace expansions on conic domains with degenerate phase (half-integer powers)",
                "quadrature oracle against the computed series; fitted b0, b1 and remainder slope",
                None,
                Some(&[100, 200, 400, 800, 1600, 3200, 6400, 12800]),
                false,
            ),
            Constants => (
                "constants",
                "universal constants C_{p,n} of tr(T^p - T^{p+1}), two routes",
                "lattice/Euler-Maclaurin route against the Gaussian conic integral route",
                None,
                None,
                true,
            ),
            KernelXcheck => (
                "kernel-xcheck",
                "trace of T^p - T^{p+1} as an integral of cyclic Bergman kernel products",
                "kernel-integral route against the spectral route on the Bargmann disk",
                Some(disk),
                Some(&[50, 100, 200]),
                true,
            ),
            FourierInterval => (
                "fourier-interval",
                "truncated Fourier Toeplitz matrices of arcs: logarithmic eigenvalue count",
                "count in [a,b] against ln k #dA/(2pi^2) (m^-1(b) - m^-1(a))",
                None,
                Some(&[64, 128, 256, 512]),
                false,
            ),
            EulerMaclaurin => (
                "euler-maclaurin",
                "Euler-Maclaurin: lattice sums of Schwartz functions equal the integral up to O(tau^-inf)",
                "tau^-1 sum f(l/tau) against the integral with tau = sqrt(k)",
                None,
                Some(&[100, 400, 1600, 6400]),
                false,
            ),
        };
        ExperimentInfo {
            name,
            anchor,
            summary,
            default_model,
            default_ladder,
            samples,
        }
    }
}

/// One line per experiment: name and anchor.
pub fn list_experiments() -> String {
    let width = Experiment::ALL.iter().map(|e| e.info().name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for e in Experiment::ALL {
        let info = e.info();
        out.push_str(&format!("{:width$}  {}\n", info.name, info.anchor));
    }
    out
}

/// Names, anchors and every default: model, ladder, parameters and tolerances.
pub fn list_experiments_verbose() -> String {
    let mut out = String::new();
    for e in Experiment::ALL {
        let info = e.info();
        let (params, tols) = crate::experiments::defaults(e);
        out.push_str(&format!("{}\n  anchor:      {}\n  computes:    {}\n", info.name, info.anchor, info.summary));
        if let Some(m) = info.default_model {
            out.push_str(&format!("  model:       {}\n", serde_json::to_string(&m()).unwrap()));
        }
        if let Some(l) = info.default_ladder {
            out.push_str(&format!("  k_ladder:    {l:?}\n"));
        }
        if info.samples {
            out.push_str("  seed:        required\n");
        }
        out.push_str(&format!("  parameters:  {params}\n  tolerances:  {tols}\n\n"));
    }
    out
}
