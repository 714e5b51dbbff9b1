//! Central limit and tail checks for the particle number along a k-ladder.

use crate::error::{FermionError, Result};
use crate::pmf::poisson_binomial_pairs;
use crate::sample::sample_count;
use serde_json::{json, Value};
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use toeplab_models::Spectrum;
use toeplab_spectral::{compensated_sum, cumulant};
use toeplab_specfun::{er, integral_i, Fn01, QuadratureSpec};

/// Critical exponent `α_c = n/2 - 1/4` of the fluctuations.
pub fn critical_exponent(n: u32) -> f64 {
    0.5 * n as f64 - 0.25
}

/// Limiting variance `(2π)^{-n} vol(∂A) I(P₂)` of `k^{-α_c}(N - E N)`.
pub fn predicted_variance(spec: &Spectrum) -> Result<f64> {
    let i_p2 = integral_i(&Fn01::p2(), &QuadratureSpec::default())?;
    Ok((2.0 * PI).powi(-(spec.complex_dim as i32)) * spec.domain.boundary_volume * i_p2)
}

/// Seed of ladder rung `index`, derived from the run seed.
pub fn rung_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// DKW band: with probability `1 - α` the empirical CDF of `n` samples is
/// within this distance of the true CDF everywhere.
pub fn dkw_radius(n: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt()
}

fn normal_cdf(x: f64, sigma: f64) -> f64 {
    if sigma == 0.0 {
        if x >= 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        er(x / (sigma * SQRT_2))
    }
}

/// One ladder rung of [`clt_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct CltRow {
    pub k: u32,
    pub mean: f64,
    pub kappa2: f64,
    pub sample_variance: f64,
    /// Sample variance over `κ₂`.
    pub variance_ratio: f64,
    /// Plain Kolmogorov–Smirnov distance of the scaled samples to the normal.
    pub ks_raw: f64,
    /// KS distance evaluated at the half-integer points between lattice
    /// values (continuity correction), from the samples.
    pub ks_sampled: f64,
    /// Same statistic from the exact Poisson-binomial CDF.
    pub ks_exact: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CltReport {
    pub alpha_c: f64,
    pub predicted_variance: f64,
    pub n_samples: usize,
    pub dkw_radius: f64,
    pub rows: Vec<CltRow>,
    /// Exact continuity-corrected KS decreases along the ladder.
    pub decreasing: bool,
    /// Sampled statistic stays within the DKW band of the exact one.
    pub sampling_consistent: bool,
    pub ks_tolerance: f64,
    pub pass: bool,
}

fn sample_variance(samples: &[u32]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = compensated_sum(samples.iter().map(|&s| s as f64)) / n;
    let var = compensated_sum(samples.iter().map(|&s| (s as f64 - mean).powi(2))) / (n - 1.0).max(1.0);
    (mean, var)
}

/// KS distance of the samples, scaled as `scale·(N - mean)`, to `N(0, σ²)`.
fn ks_plain(sorted: &[u32], mean: f64, scale: f64, sigma: f64) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == v {
            j += 1;
        }
        let phi = normal_cdf(scale * (v as f64 - mean), sigma);
        d = d.max((i as f64 / n - phi).abs()).max((j as f64 / n - phi).abs());
        i = j;
    }
    d
}

/// `sup_j |F(j) - Φ(scale·(j + 1/2 - mean))|` over lattice points `j`.
fn ks_corrected(cdf: impl Fn(i64) -> f64, lo: i64, hi: i64, mean: f64, scale: f64, sigma: f64) -> f64 {
    (lo - 1..=hi)
        .map(|j| (cdf(j) - normal_cdf(scale * (j as f64 + 0.5 - mean), sigma)).abs())
        .fold(0.0, f64::max)
}

/// Compare `k^{-α_c}(N - E N)` with the predicted normal law on each rung.
///
/// A lattice variable is at KS distance about half its largest atom from
/// any continuous law, so the verdict uses the continuity-corrected
/// statistic; the plain one is reported alongside. Monotonicity is judged
/// on the exact statistic, which carries no sampling noise.
pub fn clt_check(ladder: &[Spectrum], n_samples: usize, seed: u64, ks_tolerance: f64) -> Result<CltReport> {
    if ladder.is_empty() || n_samples < 2 {
        return Err(FermionError::Domain("need a non-empty ladder and at least two samples".into()));
    }
    let n = ladder[0].complex_dim;
    let alpha_c = critical_exponent(n);
    let var_pred = predicted_variance(&ladder[0])?;
    let sigma = var_pred.sqrt();
    let mut rows = Vec::with_capacity(ladder.len());
    for (index, spec) in ladder.iter().enumerate() {
        let pairs: Vec<(f64, f64)> = spec.pairs().collect();
        let params: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let mean = cumulant(spec, 1)?;
        let kappa2 = cumulant(spec, 2)?;
        let scale = (spec.k as f64).powf(-alpha_c);
        let mut samples = sample_count(&params, rung_seed(seed, index), n_samples)?;
        samples.sort_unstable();
        let (_, var) = sample_variance(&samples);
        let ns = samples.len() as f64;
        let lo = samples[0] as i64;
        let hi = samples[samples.len() - 1] as i64;
        let empirical = |j: i64| samples.partition_point(|&s| (s as i64) <= j) as f64 / ns;
        let dist = poisson_binomial_pairs(&pairs)?;
        let exact_cdf = dist.cdf();
        let exact = |j: i64| {
            if j < 0 {
                0.0
            } else {
                exact_cdf[(j as usize).min(exact_cdf.len() - 1)]
            }
        };
        rows.push(CltRow {
            k: spec.k,
            mean,
            kappa2,
            sample_variance: var,
            variance_ratio: if kappa2 > 0.0 { var / kappa2 } else { f64::NAN },
            ks_raw: ks_plain(&samples, mean, scale, sigma),
            ks_sampled: ks_corrected(empirical, lo, hi, mean, scale, sigma),
            ks_exact: ks_corrected(exact, 0, exact_cdf.len() as i64 - 1, mean, scale, sigma),
        });
    }
    let dkw = dkw_radius(n_samples, 1e-3);
    let decreasing = rows.windows(2).all(|w| w[1].ks_exact < w[0].ks_exact);
    let sampling_consistent = rows.iter().all(|r| (r.ks_sampled - r.ks_exact).abs() <= dkw);
    let top = rows.last().expect("non-empty ladder");
    let pass = decreasing && sampling_consistent && top.ks_sampled < ks_tolerance;
    Ok(CltReport {
        alpha_c,
        predicted_variance: var_pred,
        n_samples,
        dkw_radius: dkw,
        rows,
        decreasing,
        sampling_consistent,
        ks_tolerance,
        pass,
    })
}

impl CltReport {
    pub fn to_json(&self) -> Value {
        let top = self.rows.last();
        json!({
            "statistic": top.map(|r| r.ks_sampled),
            "bound": self.ks_tolerance,
            "pass": self.pass,
            "alpha_c": self.alpha_c,
            "predicted_variance": self.predicted_variance,
            "decreasing": self.decreasing,
            "sampling_consistent": self.sampling_consistent,
            "dkw_radius": self.dkw_radius,
            "rows": self.rows.iter().map(|r| json!({
                "k": r.k,
                "kappa2": r.kappa2,
                "variance_ratio": r.variance_ratio,
                "ks_raw": r.ks_raw,
                "ks_sampled": r.ks_sampled,
                "ks_exact": r.ks_exact,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CltReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "CLT check: α_c = {}, predicted variance {:.6}, {} samples per rung",
            self.alpha_c, self.predicted_variance, self.n_samples
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "  k = {:5}  var/κ₂ = {:.4}  KS raw {:.4}  corrected {:.4} (exact {:.4})",
                r.k, r.variance_ratio, r.ks_raw, r.ks_sampled, r.ks_exact
            )?;
        }
        write!(f, "  verdict: {}", if self.pass { "pass" } else { "fail" })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    pub k: u32,
    pub alpha_c: f64,
    pub beta: f64,
    /// Deviation threshold `k^{α_c + β}`.
    pub threshold: f64,
    /// `min(α_c + β, 2β)`.
    pub exponent: f64,
    pub exceedances: usize,
    pub frequency: f64,
    /// Smallest `C >= 1` with `frequency <= exp(-k^{exponent}/C)`.
    pub fitted_c: f64,
    /// `P(|N - E N| >= threshold)` from the exact law.
    pub exact_probability: f64,
    /// Smallest `C >= 1` admitted by the exact probability.
    pub exact_c: f64,
    /// The bound at the fitted `C`.
    pub bound: f64,
    pub c_max: f64,
    pub pass: bool,
}

/// Number of samples with `|N - mean| >= threshold`.
pub fn tail_exceedances(samples: &[u32], mean: f64, threshold: f64) -> usize {
    samples.iter().filter(|&&s| (s as f64 - mean).abs() >= threshold).count()
}

/// Compare the empirical frequency of `|N - E N| >= k^{α_c+β}` with
/// `exp(-k^{min(α_c+β, 2β)}/C)` and fit the smallest admissible `C`.
pub fn tail_check(spec: &Spectrum, beta: f64, n_samples: usize, seed: u64, c_max: f64) -> Result<TailReport> {
    if !(beta > 0.0) || n_samples == 0 {
        return Err(FermionError::Domain("tail check needs β > 0 and at least one sample".into()));
    }
    let alpha_c = critical_exponent(spec.complex_dim);
    let kf = spec.k as f64;
    let threshold = kf.powf(alpha_c + beta);
    let exponent = (alpha_c + beta).min(2.0 * beta);
    let params: Vec<f64> = spec.eigenvalues.clone();
    let mean = cumulant(spec, 1)?;
    let samples = sample_count(&params, seed, n_samples)?;
    let exceedances = tail_exceedances(&samples, mean, threshold);
    let frequency = exceedances as f64 / n_samples as f64;
    let scale = kf.powf(exponent);
    let fit = |prob: f64| {
        if prob <= 0.0 {
            1.0
        } else if prob >= 1.0 {
            f64::INFINITY
        } else {
            (scale / -prob.ln()).max(1.0)
        }
    };
    let fitted_c = fit(frequency);
    // sampling rarely reaches the threshold, the exact law always does
    let pairs: Vec<(f64, f64)> = spec.pairs().collect();
    let dist = poisson_binomial_pairs(&pairs)?;
    let exact_probability = compensated_sum(
        dist.pmf
            .iter()
            .enumerate()
            .filter(|&(j, _)| (j as f64 - mean).abs() >= threshold)
            .map(|(_, &p)| p),
    );
    let exact_c = fit(exact_probability);
    Ok(TailReport {
        k: spec.k,
        alpha_c,
        beta,
        threshold,
        exponent,
        exceedances,
        frequency,
        fitted_c,
        exact_probability,
        exact_c,
        bound: (-scale / fitted_c).exp(),
        c_max,
        pass: fitted_c <= c_max && exact_c <= c_max,
    })
}

impl TailReport {
    pub fn to_json(&self) -> Value {
        json!({
            "statistic": self.frequency,
            "bound": self.bound,
            "pass": self.pass,
            "k": self.k,
            "beta": self.beta,
            "threshold": self.threshold,
            "exponent": self.exponent,
            "exceedances": self.exceedances,
            "fitted_c": self.fitted_c,
            "exact_probability": self.exact_probability,
            "exact_c": self.exact_c,
            "c_max": self.c_max,
        })
    }
}

impl fmt::Display for TailReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tail check k = {} β = {}: {} of samples beyond {:.3}, fitted C = {:.3}, exact C = {:.3} (max {}), {}",
            self.k,
            self.beta,
            self.frequency,
            self.threshold,
            self.fitted_c,
            self.exact_c,
            self.c_max,
            if self.pass { "pass" } else { "fail" }
        )
    }
}
