use crate::error::{domain, Result};

pub const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Gaussian profile `er(x) = erfc(-x) / 2`.
///
/// For `x < 0` the complementary error function keeps full relative
/// precision, so `er(-x)` is the accurate way to get `1 - er(x)`.
pub fn er(x: f64) -> f64 {
    0.5 * libm::erfc(-x)
}

/// `(er(x), 1 - er(x))`, both to full relative precision.
pub fn er_pair(x: f64) -> (f64, f64) {
    (er(x), er(-x))
}

// Rational approximation of the standard normal quantile (Acklam).
// Relative accuracy ~1.2e-9, refined below by Halley steps.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];

fn normal_quantile_seed(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p <= 0.5);
    if p < 0.02425 {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// Inverse on the lower half: returns `x <= 0` with `er(x) = p`, `p <= 1/2`.
fn lower_inverse(p: f64) -> f64 {
    if p == 0.5 {
        return 0.0;
    }
    let mut x = normal_quantile_seed(p) * std::f64::consts::FRAC_1_SQRT_2;
    for _ in 0..10 {
        let slope = (-x * x).exp() / SQRT_PI;
        if slope == 0.0 {
            break;
        }
        let step = (er(x) - p) / slope;
        if !step.is_finite() {
            break;
        }
        // Halley: er'' = -2x er'
        let next = x - step / (1.0 + x * step);
        let done = (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
        x = next;
        if done {
            break;
        }
    }
    x
}

/// Inverse of [`er`] on `(0, 1)`.
pub fn er_inv(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain("er_inv", format!("p = {p} must lie in (0,1)")));
    }
    if p > 0.5 {
        // 1 - p is exact here
        Ok(-lower_inverse(1.0 - p))
    } else {
        Ok(lower_inverse(p))
    }
}

/// Spectral density `δ(t) = √π exp(er⁻¹(t)²)`.
pub fn density_delta(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(domain("density_delta", format!("t = {t} must lie in (0,1)")));
    }
    Ok(density_delta_pair(t, 1.0 - t))
}

/// `δ` evaluated from a point and its complement `tc = 1 - t`, both
/// supplied to full precision. Uses the smaller of the two.
pub fn density_delta_pair(t: f64, tc: f64) -> f64 {
    let x = lower_inverse(t.min(tc).min(0.5));
    SQRT_PI * (x * x).exp()
}
