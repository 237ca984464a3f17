//! Candidate-parallel factor scans.

use anyhow::Result;
use descentlab_core::cyclo::{
    assemble_report, candidates, scan_candidate, FactorReport, ScanConfig,
};
use descentlab_core::descent::DescentTable;
use rayon::prelude::*;

pub fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()?)
}

/// Same result as the sequential scan for any worker count: multiplicities
/// are collected per candidate and merged in index order.
pub fn par_factor_scan(
    table: &DescentTable,
    config: &ScanConfig,
    pool: &rayon::ThreadPool,
) -> Result<FactorReport> {
    anyhow::ensure!(config.max_index >= 2, "max_index must be at least 2");
    let ms = candidates(table.n(), config);
    let found = pool.install(|| {
        ms.par_iter()
            .map(|&m| scan_candidate(table, m, config.max_multiplicity).map(|j| (m, j)))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(assemble_report(table, config, found))
}

#[cfg(test)]
mod tests {
    use super::*;
    use descentlab_core::cyclo::factor_scan;
    use descentlab_core::descent::beta_table;

    #[test]
    fn worker_count_does_not_change_reports() {
        let config = ScanConfig {
            max_index: 600,
            ..ScanConfig::default()
        };
        for (n, signed) in [(10, false), (12, false), (6, true)] {
            let t = beta_table(n, signed).unwrap();
            let seq = factor_scan(&t, &config).unwrap();
            for w in [1, 3] {
                assert_eq!(
                    par_factor_scan(&t, &config, &pool(w).unwrap()).unwrap(),
                    seq
                );
            }
        }
    }
}
