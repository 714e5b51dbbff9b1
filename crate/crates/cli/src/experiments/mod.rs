//! Experiment implementations. Each module exposes `Params` and
//! `Tolerances` (serde, unknown keys rejected) and a `run` function.

mod constants;
mod fermion;
mod fourier;
mod kernel;
mod laplace;
mod lattice;
mod spectral;

use crate::config::{compute_err, config_err, section, Resolved, Result};
use crate::registry::Experiment;
use crate::report::Outcome;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use toeplab_models::Spectrum;
use toeplab_specfun::Fn01;

pub fn run(r: &Resolved) -> Result<Outcome> {
    use Experiment::*;
    match r.experiment {
        WeylCount => spectral::weyl_count(r),
        WeylTrace => spectral::weyl_trace(r),
        EntropyAreaLaw => spectral::entropy(r),
        Cumulants => spectral::cumulants(r),
        Cgf => spectral::cgf(r),
        Clt => fermion::clt(r),
        Tails => fermion::tails(r),
        Laplace => laplace::run(r),
        Constants => constants::run(r),
        KernelXcheck => kernel::run(r),
        FourierInterval => fourier::run(r),
        EulerMaclaurin => lattice::run(r),
    }
}

/// Default `(parameters, tolerances)` of an experiment as JSON.
pub fn defaults(e: Experiment) -> (Value, Value) {
    fn pair<P: Serialize + Default, T: Serialize + Default>() -> (Value, Value) {
        (
            serde_json::to_value(P::default()).unwrap(),
            serde_json::to_value(T::default()).unwrap(),
        )
    }
    use Experiment::*;
    match e {
        WeylCount => pair::<spectral::CountParams, spectral::CountTolerances>(),
        WeylTrace => pair::<spectral::TraceParams, spectral::TraceTolerances>(),
        EntropyAreaLaw => pair::<spectral::NoParams, spectral::EntropyTolerances>(),
        Cumulants => pair::<spectral::NoParams, spectral::CumulantTolerances>(),
        Cgf => pair::<spectral::CgfParams, spectral::CgfTolerances>(),
        Clt => pair::<fermion::CltParams, fermion::CltTolerances>(),
        Tails => pair::<fermion::TailParams, fermion::TailTolerances>(),
        Laplace => pair::<laplace::Params, laplace::Tolerances>(),
        Constants => pair::<constants::Params, constants::Tolerances>(),
        KernelXcheck => pair::<kernel::Params, kernel::Tolerances>(),
        FourierInterval => pair::<fourier::Params, fourier::Tolerances>(),
        EulerMaclaurin => pair::<lattice::Params, lattice::Tolerances>(),
    }
}

/// Parses both sections of an experiment.
fn sections<P, T>(r: &Resolved) -> Result<(P, T)>
where
    P: DeserializeOwned + Default,
    T: DeserializeOwned + Default,
{
    Ok((section(&r.parameters, "parameters")?, section(&r.tolerances, "tolerances")?))
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Spectra over the ladder, computed concurrently and returned in ladder order.
fn spectra(r: &Resolved) -> Result<Vec<Spectrum>> {
    let model = r.model();
    r.ladder
        .par_iter()
        .map(|&k| {
            let spec = model.model_spec(k)?;
            toeplab_models::spectrum(&spec).map_err(compute_err)
        })
        .collect()
}

/// `|1 - ratio|`-style errors shrink along the ladder; values below `floor`
/// count as converged.
fn non_increasing(errors: &[f64], floor: f64) -> bool {
    errors
        .windows(2)
        .all(|w| w[1] <= w[0] || w[1] <= floor)
}

/// `entropy`, `P<l>` (cumulant polynomial), `g<p>` = x^p - x^{p+1},
/// `h<p>` = (x(1-x))^p.
fn named_function(name: &str) -> Result<Fn01> {
    if name == "entropy" {
        return Ok(Fn01::entropy());
    }
    let bad = || config_err(format!("parameters.functions: unknown function `{name}`"));
    let (head, tail) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    match head {
        "P" => {
            let l: usize = tail.parse().map_err(|_| bad())?;
            if !(2..=64).contains(&l) {
                return Err(config_err(format!("parameters.functions: `{name}` needs 2 <= l <= 64")));
            }
            Ok(toeplab_spectral::cumulant_function(l))
        }
        "g" | "h" => {
            let p: f64 = tail.parse().map_err(|_| bad())?;
            if !(p > 0.0 && p.is_finite()) {
                return Err(config_err(format!("parameters.functions: `{name}` needs p > 0")));
            }
            Ok(if head == "g" { Fn01::gp(p) } else { Fn01::hp(p) })
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trend_rule() {
        assert!(non_increasing(&[0.3, 0.2, 0.1], 0.0));
        assert!(!non_increasing(&[0.3, 0.4], 0.0));
        assert!(non_increasing(&[1e-14, 3e-14], 1e-12));
    }

    #[test]
    fn function_names() {
        for n in ["entropy", "P2", "P4", "g1", "g2.5", "h0.5"] {
            assert!(named_function(n).is_ok(), "{n}");
        }
        for n in ["", "P1", "P", "gx", "h-1", "cos"] {
            assert!(named_function(n).is_err(), "{n}");
        }
        let f = named_function("g2").unwrap();
        assert!((f.eval(0.5) - 0.125).abs() < 1e-15);
    }
}
