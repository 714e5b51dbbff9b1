use crate::domain::DomainSpec;
use crate::error::{ModelError, Result};
use std::fmt::Write;

/// Eigenvalues closer than this to `[0, 1]` are clamped; farther is an error.
pub const CLAMP_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSide {
    NearZero,
    NearOne,
}

/// Bound for the eigenvalues cut off by a basis truncation.
///
/// The omitted eigenvalues, measured as distance to the endpoint on `side`,
/// are dominated by `first · ratio^j`, `j = 0, 1, ...`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub side: TailSide,
    pub first: f64,
    pub ratio: f64,
}

impl TailBound {
    /// Bound on `Σ_j (first · ratio^j)^p`.
    pub fn power_sum(&self, p: f64) -> f64 {
        if self.first == 0.0 {
            return 0.0;
        }
        let r = self.ratio.powf(p);
        if r >= 1.0 {
            f64::INFINITY
        } else {
            self.first.powf(p) / (1.0 - r)
        }
    }
}

/// Descriptive fields attached to a spectrum.
#[derive(Debug, Clone)]
pub struct SpectrumInfo {
    pub model: String,
    pub k: u32,
    pub complex_dim: u32,
    pub domain: DomainSpec,
    pub exact: bool,
    pub tail: Vec<TailBound>,
}

/// Spectrum of `T_{A,k}`: eigenvalues in `[0, 1]`, ascending, with
/// multiplicity. `complements[i] = 1 - eigenvalues[i]` is kept to full
/// relative precision for eigenvalues near 1.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub complements: Vec<f64>,
    pub model: String,
    pub k: u32,
    pub complex_dim: u32,
    pub domain: DomainSpec,
    pub exact: bool,
    pub tail: Vec<TailBound>,
}

fn clamp_unit(v: f64) -> Result<f64> {
    if !v.is_finite() || v < -CLAMP_TOLERANCE || v > 1.0 + CLAMP_TOLERANCE {
        return Err(ModelError::OutOfRange { value: v });
    }
    Ok(v.clamp(0.0, 1.0))
}

impl Spectrum {
    /// Build from `(λ, 1 - λ)` pairs; validates, clamps and sorts.
    pub fn from_pairs(pairs: Vec<(f64, f64)>, info: SpectrumInfo) -> Result<Self> {
        let mut checked = Vec::with_capacity(pairs.len());
        for (l, c) in pairs {
            checked.push((clamp_unit(l)?, clamp_unit(c)?));
        }
        // ascending in λ; among values that round to the same λ, larger
        // complement first
        checked.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
        let (eigenvalues, complements) = checked.into_iter().unzip();
        Ok(Self {
            eigenvalues,
            complements,
            model: info.model,
            k: info.k,
            complex_dim: info.complex_dim,
            domain: info.domain,
            exact: info.exact,
            tail: info.tail,
        })
    }

    pub fn from_values(values: Vec<f64>, info: SpectrumInfo) -> Result<Self> {
        let pairs = values.into_iter().map(|v| (v, 1.0 - v)).collect();
        Self::from_pairs(pairs, info)
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `(λ, 1 - λ)` pairs in ascending order.
    pub fn pairs(&self) -> impl DoubleEndedIterator<Item = (f64, f64)> + ExactSizeIterator + '_ {
        self.eigenvalues.iter().copied().zip(self.complements.iter().copied())
    }

    /// Bound on `Σ min(λ, 1-λ)^p` over the truncated tail.
    pub fn tail_power_sum(&self, p: f64) -> f64 {
        self.tail.iter().map(|t| t.power_sum(p)).sum()
    }

    /// Spectrum of the complementary operator `1 - T_A = T_{A^c}`.
    pub fn complement(&self) -> Spectrum {
        let mut pairs: Vec<(f64, f64)> = self.pairs().map(|(l, c)| (c, l)).collect();
        pairs.reverse();
        let (eigenvalues, complements) = pairs.into_iter().unzip();
        Spectrum {
            eigenvalues,
            complements,
            model: self.model.clone(),
            k: self.k,
            complex_dim: self.complex_dim,
            domain: self.domain.clone().complement(),
            exact: self.exact,
            tail: self
                .tail
                .iter()
                .map(|t| TailBound {
                    side: match t.side {
                        TailSide::NearZero => TailSide::NearOne,
                        TailSide::NearOne => TailSide::NearZero,
                    },
                    ..*t
                })
                .collect(),
        }
    }

    /// CSV: a `# model,k,n,boundary_volume` header, its values, then one
    /// eigenvalue per line with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# schema=v1\n# model,k,n,boundary_volume\n");
        let _ = writeln!(
            out,
            "# {} {},{},{},{:.16e}",
            self.model,
            self.domain.label(),
            self.k,
            self.complex_dim,
            self.domain.boundary_volume
        );
        for v in &self.eigenvalues {
            let _ = writeln!(out, "{v:.16e}");
        }
        out
    }
}
