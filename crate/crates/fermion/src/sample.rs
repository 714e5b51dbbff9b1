//! Reproducible sampling of particle numbers.

use crate::error::Result;
use crate::pmf::check_params;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Samples drawn from one generator stream.
pub const SAMPLE_BLOCK: usize = 4096;

/// Generator for block `index` of a run with `seed`.
///
/// ChaCha8 is counter-based: the seed fixes the key and the block index
/// selects an independent stream, so the output depends only on
/// `(seed, index)` and not on how blocks are spread over threads.
pub fn block_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `n_samples` draws of `Σ εᵢ` with independent `εᵢ ~ Bernoulli(λᵢ)`.
///
/// Parameters equal to 0 or 1 are deterministic and skipped by the flips.
pub fn sample_count(params: &[f64], seed: u64, n_samples: usize) -> Result<Vec<u32>> {
    check_params(params)?;
    let fixed = params.iter().filter(|&&l| l >= 1.0).count() as u32;
    let random: Vec<f64> = params.iter().copied().filter(|&l| l > 0.0 && l < 1.0).collect();
    let mut out = vec![0u32; n_samples];
    out.par_chunks_mut(SAMPLE_BLOCK)
        .enumerate()
        .for_each(|(block, chunk)| {
            let mut rng = block_rng(seed, block as u64);
            for slot in chunk {
                let mut n = fixed;
                for &l in &random {
                    if rng.random::<f64>() < l {
                        n += 1;
                    }
                }
                *slot = n;
            }
        });
    Ok(out)
}
