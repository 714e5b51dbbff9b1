//! Bergman kernels of the Bargmann model, cyclic kernel products, the
//! reproducing identity and traces of Toeplitz powers computed as kernel
//! integrals.

mod error;
mod kernel;
mod reproducing;
mod trace;

pub use error::{KernelError, Result};
pub use kernel::{
    cyclic_kernel, kernel_decay_profile, BargmannKernel, CyclicProduct, DecayProfile, Point,
    METRIC_SCALE,
};
pub use reproducing::{reproducing_check, ReproducingReport, WindowQuadrature};
pub use trace::{
    pairwise_sum, trace_gap_via_kernel, trace_power_via_kernel, Disk, KernelTrace, McBudget,
    TraceMethod, MAX_KERNEL_POWER, MC_BLOCK, TUBE_SCALE,
};
