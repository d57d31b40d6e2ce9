//! Parallel drivers over the core's per-item operations. Work items are keyed
//! by index and collected in index order, so results match the sequential
//! core functions exactly for any thread count.

use entropic_frames_core::bounds::{verify_batch_item, BatchOutcome, BatchSummary};
use entropic_frames_core::entropy::PhiSpec;
use entropic_frames_core::frames::WeightedFrame;
use entropic_frames_core::tightness::{skip_note, sweep_row, ConjectureProbe, ProductSearch, SearchConfig, Sweep};
use entropic_frames_core::{Error, Result};
use rayon::prelude::*;

/// Thread pool of `jobs` workers; `0` lets rayon choose.
pub fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

pub fn verify_batch(
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
    n_states: u64,
    seed: u64,
    eta_adm: f64,
    jobs: usize,
) -> Result<BatchOutcome> {
    if n_states == 0 {
        return Err(Error::Validation("n_states: must be at least 1".into()));
    }
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            actual: b.dimension(),
        });
    }
    let items: Vec<_> = pool(jobs).install(|| {
        (0..n_states)
            .into_par_iter()
            .map(|i| verify_batch_item(a, b, phi, seed, i, eta_adm))
            .collect::<Result<Vec<_>>>()
    })?;
    let reports: Vec<_> = items.into_iter().flatten().collect();
    Ok(BatchOutcome {
        summary: BatchSummary::from_reports(n_states, &reports),
        reports,
    })
}

pub fn probe_conjecture(
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
    cfg: &SearchConfig,
    jobs: usize,
) -> Result<ConjectureProbe> {
    let search = ProductSearch::new(a, b, phi, *cfg)?;
    let runs = pool(jobs).install(|| (0..cfg.n_starts).into_par_iter().map(|s| search.run_start(s)).collect());
    Ok(search.judge_conjecture(search.collect(runs)?))
}

pub fn sweep_rotation(angles: &[f64], phi: &PhiSpec, cfg: &SearchConfig, jobs: usize) -> Result<Sweep> {
    let rows = pool(jobs).install(|| {
        angles
            .par_iter()
            .map(|&theta| sweep_row(theta, phi, cfg))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut sweep = Sweep {
        rows: Vec::new(),
        skipped: Vec::new(),
    };
    for (theta, row) in angles.iter().zip(rows) {
        match row {
            Some(r) => sweep.rows.push(r),
            None => sweep.skipped.push(skip_note(*theta)),
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use entropic_frames_core::frames::{make_orthonormal_basis, make_parseval_frame, BasisKind, ParsevalKind};
    use entropic_frames_core::{bounds, tightness};

    #[test]
    fn parallel_batch_matches_sequential() {
        let a = make_orthonormal_basis(BasisKind::RandomUnitary, 3, 1).unwrap();
        let b = make_parseval_frame(ParsevalKind::Harmonic, 6, 3, 0).unwrap();
        let phi = PhiSpec::Power { p: 0.5 };
        let seq = bounds::verify_batch(&a, &b, &phi, 200, 5, 1e-12).unwrap();
        for jobs in [1, 4] {
            assert_eq!(verify_batch(&a, &b, &phi, 200, 5, 1e-12, jobs).unwrap(), seq);
        }
    }

    #[test]
    fn parallel_search_matches_sequential() {
        let a = make_orthonormal_basis(BasisKind::Standard, 2, 0).unwrap();
        let b = make_orthonormal_basis(BasisKind::Fourier, 2, 0).unwrap();
        let phi = PhiSpec::LogShift { a: 1.0 };
        let cfg = SearchConfig { n_starts: 6, max_iters: 200, seed: 3, ..SearchConfig::default() };
        let seq = tightness::probe_conjecture(&a, &b, &phi, &cfg).unwrap();
        assert_eq!(probe_conjecture(&a, &b, &phi, &cfg, 3).unwrap(), seq);
    }
}
