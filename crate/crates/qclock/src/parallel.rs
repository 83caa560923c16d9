use rayon::prelude::*;

use qclock_core::{Scenario, VisibilityCurve, VisibilityRow};

use crate::error::CliError;

/// Evaluates the sweep on a pool of `threads` workers (`None` lets rayon
/// decide). Rows come back in sweep order, so the curve is identical for any
/// thread count.
pub fn run_sweep_parallel(
    scenario: &Scenario,
    threads: Option<usize>,
) -> Result<VisibilityCurve, CliError> {
    scenario.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    let values = scenario.sweep.values();
    let rows = pool.install(|| {
        values
            .par_iter()
            .map(|&v| scenario.evaluate_row(v))
            .collect::<qclock_core::Result<Vec<VisibilityRow>>>()
    })?;
    Ok(VisibilityCurve {
        variable: scenario.sweep.variable,
        rows,
    })
}
