//! Experiments registered by name and selected by CLI subcommand.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use fraclap_core::grid::sample;
use fraclap_core::profile::Profile;
use fraclap_core::{FracParams, GridFunction};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{at_s, LabError, Result};
use crate::report::Report;

mod consistency;
mod kernel_check;
mod mollifier_check;
mod rates;
mod solve;

pub use consistency::{run_consistency, Consistency};
pub use kernel_check::{run_kernel_check, KernelCheck};
pub use mollifier_check::{random_bump_function, run_mollifier_check, MollifierCheck};
pub use rates::{run_rates, Rates};
pub use solve::{run_solve, Solve};

pub trait Experiment: Send + Sync {
    fn kind(&self) -> ExperimentKind;

    fn run(&self, cfg: &ExperimentConfig) -> Result<Box<dyn Report>>;
}

pub struct Registry {
    entries: BTreeMap<&'static str, Box<dyn Experiment>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, exp: Box<dyn Experiment>) {
        self.entries.insert(exp.kind().name(), exp);
    }

    pub fn builtin() -> &'static Registry {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        REGISTRY.get_or_init(|| {
            let mut r = Registry::empty();
            r.register(Box::new(KernelCheck));
            r.register(Box::new(MollifierCheck));
            r.register(Box::new(Solve));
            r.register(Box::new(Consistency));
            r.register(Box::new(Rates));
            r
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, kind: ExperimentKind) -> Option<&dyn Experiment> {
        self.entries.get(kind.name()).map(|e| e.as_ref())
    }

    pub fn run(&self, cfg: &ExperimentConfig) -> Result<Box<dyn Report>> {
        let exp = self.get(cfg.experiment).ok_or_else(|| {
            LabError::Config(format!(
                "no experiment registered as `{}`",
                cfg.experiment.name()
            ))
        })?;
        exp.run(cfg)
    }
}

pub(crate) fn params(s: f64, eps: f64) -> Result<FracParams> {
    FracParams::line(s)
        .and_then(|p| p.with_eps(eps))
        .map_err(at_s(s))
}

pub(crate) fn sample_profile(cfg: &ExperimentConfig, g: &dyn Profile) -> Result<GridFunction> {
    Ok(sample(cfg.domain, cfg.n, |x| g.value(x))?)
}

/// Wall time of `f` in seconds when timing is on, zero otherwise so that
/// reports stay byte-identical between runs.
pub(crate) fn timed<T>(on: bool, f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let v = f()?;
    Ok((
        v,
        if on {
            start.elapsed().as_secs_f64()
        } else {
            0.0
        },
    ))
}
