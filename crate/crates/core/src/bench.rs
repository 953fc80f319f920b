//! BM versus QTBM timing on generated quasi-tower sets.

use std::collections::hash_map::DefaultHasher;
use std::fmt::{self, Write as _};
use std::hash::{Hash, Hasher};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bm::{bm, GroebnerOutput};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::generate::{generate, Flavor, GeneratorConfig};
use crate::geometry::PointSet;
use crate::monomial::MonomialOrder;
use crate::qtbm::qtbm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Bm,
    Qtbm,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Bm => "bm",
            Algo::Qtbm => "qtbm",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub algo: Algo,
    pub order: MonomialOrder,
    pub field: FieldSpec,
    pub mu: usize,
    pub wall_seconds: f64,
    pub seed: u64,
    pub output_hash: u64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub orders: Vec<MonomialOrder>,
    pub fields: Vec<FieldSpec>,
    pub mus: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Runs cells concurrently; trials inside a cell stay sequential.
    pub parallel: bool,
}

pub type Runner = dyn Fn(&PointSet, MonomialOrder) -> Result<GroebnerOutput> + Sync;

/// The algorithms under comparison. Replaceable for fault injection.
pub struct Runners<'a> {
    pub bm: &'a Runner,
    pub qtbm: &'a Runner,
}

fn run_bm(points: &PointSet, order: MonomialOrder) -> Result<GroebnerOutput> {
    Ok(bm(points, order))
}

pub const DEFAULT_RUNNERS: Runners<'static> = Runners {
    bm: &run_bm,
    qtbm: &qtbm,
};

/// Quasi-tower flavor whose closed-form bases cover `order`.
pub fn flavor_for(order: MonomialOrder) -> Flavor {
    match order {
        MonomialOrder::Lex | MonomialOrder::GrLex => Flavor::QuasiX,
        MonomialOrder::InvLex | MonomialOrder::GrevLex => Flavor::QuasiY,
    }
}

/// A quasi-tower instance, or a tower when `mu` is too small for one.
pub fn bench_instance(
    order: MonomialOrder,
    field: FieldSpec,
    mu: usize,
    seed: u64,
) -> Result<PointSet> {
    let flavor = flavor_for(order);
    match generate(GeneratorConfig {
        field,
        flavor,
        mu,
        seed,
    }) {
        Err(Error::Infeasible(_)) => {
            let flavor = if flavor == Flavor::QuasiX {
                Flavor::XTower
            } else {
                Flavor::YTower
            };
            generate(GeneratorConfig {
                field,
                flavor,
                mu,
                seed,
            })
        }
        other => other,
    }
}

pub fn output_hash(out: &GroebnerOutput, order: MonomialOrder) -> u64 {
    let mut h = DefaultHasher::new();
    for g in out.sorted_g(order) {
        g.format(order).hash(&mut h);
    }
    out.n.hash(&mut h);
    h.finish()
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

fn timed(
    runner: &Runner,
    points: &PointSet,
    order: MonomialOrder,
) -> Result<(f64, GroebnerOutput)> {
    let start = Instant::now();
    let out = runner(points, order)?;
    Ok((start.elapsed().as_secs_f64().max(f64::MIN_POSITIVE), out))
}

/// Both records of one `(order, field, mu)` cell.
pub fn bench_cell(
    order: MonomialOrder,
    field: FieldSpec,
    mu: usize,
    trials: usize,
    seed: u64,
    runners: &Runners<'_>,
) -> Result<[BenchRecord; 2]> {
    let points = bench_instance(order, field, mu, seed)?;
    let mut bm_times = Vec::with_capacity(trials);
    let mut qt_times = Vec::with_capacity(trials);
    let mut hash = 0;
    for _ in 0..trials.max(1) {
        let (tb, ob) = timed(runners.bm, &points, order)?;
        let (tq, oq) = timed(runners.qtbm, &points, order)?;
        if !ob.same_ideal_data(&oq, order) {
            return Err(Error::OutputMismatch(format!(
                "{order} over {field}, μ = {mu}, seed {seed}"
            )));
        }
        hash = output_hash(&ob, order);
        bm_times.push(tb);
        qt_times.push(tq);
    }
    let record = |algo, times| BenchRecord {
        algo,
        order,
        field,
        mu,
        wall_seconds: median(times),
        seed,
        output_hash: hash,
    };
    Ok([record(Algo::Bm, bm_times), record(Algo::Qtbm, qt_times)])
}

/// Runs every `(order, field, mu)` cell. Any output mismatch aborts the run.
pub fn bench_with(config: &BenchConfig, runners: &Runners<'_>) -> Result<Vec<BenchRecord>> {
    let cells: Vec<(MonomialOrder, FieldSpec, usize)> = config
        .orders
        .iter()
        .flat_map(|&o| {
            config
                .fields
                .iter()
                .flat_map(move |&f| config.mus.iter().map(move |&m| (o, f, m)))
        })
        .collect();
    let run = |&(o, f, m): &(MonomialOrder, FieldSpec, usize)| {
        bench_cell(o, f, m, config.trials, config.seed, runners)
    };
    let results: Vec<Result<[BenchRecord; 2]>> = if config.parallel {
        cells.par_iter().map(run).collect()
    } else {
        cells.iter().map(run).collect()
    };
    let mut records = Vec::with_capacity(2 * cells.len());
    for r in results {
        records.extend(r?);
    }
    Ok(records)
}

pub fn bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    bench_with(config, &DEFAULT_RUNNERS)
}

pub const CSV_HEADER: &str = "algo,order,field,mu,seed,wall_seconds";

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.6}",
            r.algo, r.order, r.field, r.mu, r.seed, r.wall_seconds
        );
    }
    out
}

/// BM time over QTBM time for one cell, if both records are present.
pub fn speedup(
    records: &[BenchRecord],
    order: MonomialOrder,
    field: FieldSpec,
    mu: usize,
) -> Option<f64> {
    let time = |algo| {
        records
            .iter()
            .find(|r| r.algo == algo && r.order == order && r.field == field && r.mu == mu)
            .map(|r| r.wall_seconds)
    };
    Some(time(Algo::Bm)? / time(Algo::Qtbm)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Bidegree;

    fn small(parallel: bool) -> BenchConfig {
        BenchConfig {
            orders: vec![MonomialOrder::GrLex, MonomialOrder::InvLex],
            fields: vec![FieldSpec::Prime(37)],
            mus: vec![1, 20],
            trials: 3,
            seed: 4,
            parallel,
        }
    }

    #[test]
    fn records_pair_up() {
        let records = bench(&small(false)).unwrap();
        assert_eq!(records.len(), 8);
        for pair in records.chunks(2) {
            assert_eq!(pair[0].algo, Algo::Bm);
            assert_eq!(pair[1].algo, Algo::Qtbm);
            assert_eq!(pair[0].output_hash, pair[1].output_hash);
            assert!(pair.iter().all(|r| r.wall_seconds > 0.0));
        }
        let csv = to_csv(&records);
        assert!(csv.starts_with("algo,order,field,mu,seed,wall_seconds\n"));
        assert_eq!(csv.lines().count(), 9);
        assert!(csv.lines().nth(1).unwrap().starts_with("bm,grlex,37,1,4,"));
        assert!(speedup(&records, MonomialOrder::GrLex, FieldSpec::Prime(37), 20).is_some());
    }

    #[test]
    fn parallel_cells_keep_order() {
        let a = bench(&small(false)).unwrap();
        let b = bench(&small(true)).unwrap();
        let key = |r: &BenchRecord| (r.algo, r.order, r.mu, r.output_hash);
        assert_eq!(
            a.iter().map(key).collect::<Vec<_>>(),
            b.iter().map(key).collect::<Vec<_>>()
        );
    }

    #[test]
    fn mismatched_outputs_abort() {
        let broken = |points: &PointSet, order: MonomialOrder| -> Result<GroebnerOutput> {
            let mut out = qtbm(points, order)?;
            out.n.push(Bidegree::new(99, 99));
            Ok(out)
        };
        let runners = Runners {
            bm: DEFAULT_RUNNERS.bm,
            qtbm: &broken,
        };
        assert!(matches!(
            bench_with(&small(false), &runners),
            Err(Error::OutputMismatch(_))
        ));
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0]), 2.5);
    }
}
