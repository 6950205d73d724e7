//! Monte-Carlo robustness of a sorter against random per-arm phase errors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sorter::{build, efficiency, sorting_matrix, Efficiency, SorterSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub sigma: f64,
    pub seed: u64,
    /// Efficiency of every trial, in draw order.
    pub trials: Vec<Efficiency>,
    /// Average over trials of the worst-case efficiency.
    pub worst: f64,
    /// Average over trials of the mean efficiency.
    pub mean: f64,
    /// Standard error of `mean`.
    pub mean_std_error: f64,
}

/// Draws per-arm phase offsets `N(0, sigma^2)` for arms `1..d` (arm 0 is the
/// phase reference and stays unperturbed), on top of any offsets already in
/// `spec`, and records the resulting efficiencies.
///
/// Offsets are drawn serially from a ChaCha8 stream seeded with `seed`; the
/// trials are then evaluated in parallel and collected in draw order.
pub fn sweep_perturbations(spec: &SorterSpec, sigma: f64, trials: usize, seed: u64) -> Result<SweepResult> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidSigma(sigma));
    }
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let d = spec.d();
    let normal = Normal::new(0.0, sigma).map_err(|_| Error::InvalidSigma(sigma))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offsets: Vec<Vec<f64>> = (0..trials)
        .map(|_| {
            let mut offs = spec.perturbations().to_vec();
            for o in offs.iter_mut().skip(1) {
                if sigma > 0.0 {
                    *o += normal.sample(&mut rng);
                }
            }
            offs
        })
        .collect();
    debug_assert!(offsets.iter().all(|o| o.len() == d));

    let results: Vec<Efficiency> = offsets
        .into_par_iter()
        .map(|offs| {
            let trial = spec.clone().with_perturbations(offs)?;
            Ok(efficiency(&sorting_matrix(&build(&trial)?)?))
        })
        .collect::<Result<_>>()?;

    let n = results.len() as f64;
    let worst = results.iter().map(|e| e.worst).sum::<f64>() / n;
    let mean = results.iter().map(|e| e.mean).sum::<f64>() / n;
    let mean_std_error = if results.len() > 1 {
        let var = results.iter().map(|e| (e.mean - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(SweepResult {
        sigma,
        seed,
        trials: results,
        worst,
        mean,
        mean_std_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devices::pbs_module;
    use crate::phase::PhaseModule;

    #[test]
    fn rejects_bad_arguments() {
        let spec = SorterSpec::new(pbs_module());
        assert_eq!(sweep_perturbations(&spec, -0.1, 10, 0).unwrap_err(), Error::InvalidSigma(-0.1));
        assert!(sweep_perturbations(&spec, f64::NAN, 10, 0).is_err());
        assert_eq!(sweep_perturbations(&spec, 0.1, 0, 0).unwrap_err(), Error::ZeroTrials);
    }

    #[test]
    fn zero_sigma_is_perfect() {
        let spec = SorterSpec::new(pbs_module());
        let r = sweep_perturbations(&spec, 0.0, 25, 3).unwrap();
        assert!(r.trials.iter().all(|e| e.worst == 1.0 && e.mean == 1.0));
        assert_eq!((r.worst, r.mean, r.mean_std_error), (1.0, 1.0, 0.0));
    }

    #[test]
    fn seeded_sweeps_repeat() {
        let spec = SorterSpec::new(PhaseModule::ideal(4).unwrap());
        let a = sweep_perturbations(&spec, 0.2, 50, 11).unwrap();
        let b = sweep_perturbations(&spec, 0.2, 50, 11).unwrap();
        assert_eq!(a, b);
        let c = sweep_perturbations(&spec, 0.2, 50, 12).unwrap();
        assert_ne!(a.trials, c.trials);
    }

    #[test]
    fn noise_lowers_efficiency() {
        let spec = SorterSpec::new(PhaseModule::ideal(3).unwrap());
        let r = sweep_perturbations(&spec, 0.3, 40, 5).unwrap();
        assert!(r.mean < 1.0 && r.mean > 0.5);
        assert!(r.worst <= r.mean);
    }
}
