//! Per-n surveys over all free trees: fort counts per tree, maxima with
//! argmax trees, exact means, and the table/report rendering on top.
//!
//! Trees are consumed from the generator in batches; batches fan out across
//! a worker pool and results are merged in generation order, so the output
//! is identical for any worker count. Wall-clock fields are informational
//! only and never part of correctness comparisons.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::enumerate::enumerate_minimal_forts;
use crate::error::{Error, Result};
use crate::formulas::{binomial, forest_max_table, known_max_tree_forts, path_forts};
use crate::graph::{Graph, VertexSet};
use crate::oracle::brute_force_minimal_forts;
use crate::treegen::{canonical_tree_code, family_name, generate_free_trees};

/// Default ceiling for surveys; larger n take minutes and must be asked for.
pub const DEFAULT_SURVEY_CEILING: usize = 16;
/// Hard survey ceiling (tree generation cap).
pub const MAX_SURVEY_N: usize = 24;

const BATCH_SIZE: usize = 1024;
const SAMPLE_SEED: u64 = 0x5eed_f0e7;

/// Survey run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub workers: usize,
    /// Fraction of trees re-checked against the brute-force oracle.
    pub oracle_sample: f64,
    /// Permit n beyond [`DEFAULT_SURVEY_CEILING`].
    pub allow_long: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_min: 4,
            n_max: 10,
            workers: 1,
            oracle_sample: 0.0,
            allow_long: false,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.workers < 1 {
            return Err(Error::InvalidParameters {
                reason: "worker count must be at least 1".into(),
            });
        }
        if !(0.0..=1.0).contains(&self.oracle_sample) {
            return Err(Error::InvalidParameters {
                reason: "oracle sample rate must lie in [0, 1]".into(),
            });
        }
        if self.n_min > self.n_max {
            return Err(Error::InvalidParameters {
                reason: "n-min must not exceed n-max".into(),
            });
        }
        if self.n_max > MAX_SURVEY_N {
            return Err(Error::CapacityExceeded {
                n: self.n_max,
                limit: MAX_SURVEY_N,
            });
        }
        if self.n_max > DEFAULT_SURVEY_CEILING && !self.allow_long {
            return Err(Error::InvalidParameters {
                reason: format!(
                    "n = {} exceeds the default ceiling of {DEFAULT_SURVEY_CEILING}; pass --allow-long",
                    self.n_max
                ),
            });
        }
        Ok(())
    }
}

/// Aggregate results for one vertex count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyRow {
    pub n: usize,
    pub tree_count: u64,
    /// Exact sum of per-tree fort counts; the mean is `fort_sum / tree_count`.
    pub fort_sum: u128,
    pub max_forts: u64,
    /// graph6 codes (canonical labeling) of every tree attaining the max,
    /// in generation order.
    pub argmax_codes: Vec<String>,
    pub total_time_ns: u128,
}

impl SurveyRow {
    /// The exact mean rendered with `places` decimal digits, round half up.
    pub fn mean_forts(&self, places: u32) -> String {
        decimal_ratio(self.fort_sum, self.tree_count as u128, places)
    }

    pub fn mean_time_ms(&self) -> String {
        if self.tree_count == 0 {
            return "0".into();
        }
        // ns per tree -> ms with 6 decimals = total / (count * 10^9) * 10^3
        decimal_ratio(self.total_time_ns, self.tree_count as u128 * 1_000_000, 6)
    }
}

/// Renders `numerator / denominator` as a decimal with `places` digits,
/// rounding half away from zero. Exact integer arithmetic throughout.
pub fn decimal_ratio(numerator: u128, denominator: u128, places: u32) -> String {
    assert!(denominator > 0);
    let scaled = numerator * 10u128.pow(places);
    let mut q = scaled / denominator;
    if 2 * (scaled % denominator) >= denominator {
        q += 1;
    }
    let digits = 10u128.pow(places);
    if places == 0 {
        return q.to_string();
    }
    format!("{}.{:0width$}", q / digits, q % digits, width = places as usize)
}

fn worker_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameters {
            reason: format!("cannot build worker pool: {e}"),
        })
}

/// Whether tree `index` of size `n` gets an oracle re-check at this rate.
/// Depends only on `(n, index)`, never on scheduling.
fn sampled(n: usize, index: u64, rate: f64) -> bool {
    if rate <= 0.0 {
        return false;
    }
    if rate >= 1.0 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ (n as u64) << 32 ^ index);
    rng.gen::<f64>() < rate
}

fn count_one(tree: &Graph, n: usize, index: u64, oracle_sample: f64) -> Result<u64> {
    let forts = enumerate_minimal_forts(tree, VertexSet::EMPTY)?;
    if sampled(n, index, oracle_sample) {
        let reference = brute_force_minimal_forts(tree)?;
        if forts != reference {
            return Err(Error::OracleMismatch {
                n,
                tree_index: index,
            });
        }
    }
    Ok(forts.len() as u64)
}

/// Surveys every free tree on `n` vertices using an existing pool.
fn survey_n_in_pool(
    n: usize,
    pool: &rayon::ThreadPool,
    oracle_sample: f64,
) -> Result<SurveyRow> {
    let start = Instant::now();
    let mut row = SurveyRow {
        n,
        tree_count: 0,
        fort_sum: 0,
        max_forts: 0,
        argmax_codes: Vec::new(),
        total_time_ns: 0,
    };
    let mut generator = generate_free_trees(n)?;
    let mut batch: Vec<Graph> = Vec::with_capacity(BATCH_SIZE);
    loop {
        batch.clear();
        batch.extend(generator.by_ref().take(BATCH_SIZE));
        if batch.is_empty() {
            break;
        }
        let base = row.tree_count;
        let counts: Result<Vec<u64>> = pool.install(|| {
            batch
                .par_iter()
                .enumerate()
                .map(|(i, tree)| count_one(tree, n, base + i as u64, oracle_sample))
                .collect()
        });
        // merge strictly in generation order
        for (i, count) in counts?.into_iter().enumerate() {
            row.tree_count += 1;
            row.fort_sum += count as u128;
            if count > row.max_forts {
                row.max_forts = count;
                row.argmax_codes = vec![canonical_tree_code(&batch[i])?.graph6];
            } else if count == row.max_forts {
                row.argmax_codes.push(canonical_tree_code(&batch[i])?.graph6);
            }
        }
    }
    row.total_time_ns = start.elapsed().as_nanos();
    Ok(row)
}

/// Surveys each n in the configured range.
pub fn survey_range(config: &RunConfig) -> Result<Vec<SurveyRow>> {
    config.validate()?;
    let pool = worker_pool(config.workers)?;
    (config.n_min..=config.n_max)
        .map(|n| survey_n_in_pool(n, &pool, config.oracle_sample))
        .collect()
}

/// Surveys a fixed list of trees (e.g. read from a graph6 file) that must
/// all share one vertex count.
pub fn survey_tree_list(trees: &[Graph], config: &RunConfig) -> Result<SurveyRow> {
    config.validate()?;
    let Some(first) = trees.first() else {
        return Err(Error::InvalidParameters {
            reason: "no trees given".into(),
        });
    };
    let n = first.n();
    if trees.iter().any(|t| t.n() != n) {
        return Err(Error::InvalidParameters {
            reason: "all surveyed trees must have the same vertex count".into(),
        });
    }
    let start = Instant::now();
    let pool = worker_pool(config.workers)?;
    let counts: Result<Vec<u64>> = pool.install(|| {
        trees
            .par_iter()
            .enumerate()
            .map(|(i, tree)| count_one(tree, n, i as u64, config.oracle_sample))
            .collect()
    });
    let mut row = SurveyRow {
        n,
        tree_count: 0,
        fort_sum: 0,
        max_forts: 0,
        argmax_codes: Vec::new(),
        total_time_ns: 0,
    };
    for (i, count) in counts?.into_iter().enumerate() {
        row.tree_count += 1;
        row.fort_sum += count as u128;
        if count > row.max_forts {
            row.max_forts = count;
            row.argmax_codes = vec![canonical_tree_code(&trees[i])?.graph6];
        } else if count == row.max_forts {
            row.argmax_codes.push(canonical_tree_code(&trees[i])?.graph6);
        }
    }
    row.total_time_ns = start.elapsed().as_nanos();
    Ok(row)
}

pub const SURVEY_CSV_HEADER: &str =
    "n,tree_count,fort_sum,max_forts,argmax_g6,mean_forts,total_time_ns,mean_time_ms";

/// CSV with one row per n: UTF-8, comma-separated, LF line endings. The two
/// trailing columns are wall-clock and vary between runs; everything else is
/// deterministic.
pub fn rows_to_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from(SURVEY_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.n,
            row.tree_count,
            row.fort_sum,
            row.max_forts,
            row.argmax_codes.join(";"),
            row.mean_forts(4),
            row.total_time_ns,
            row.mean_time_ms(),
        ));
    }
    out
}

/// Parses [`rows_to_csv`] output back into rows.
pub fn parse_survey_csv(text: &str) -> Result<Vec<SurveyRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == SURVEY_CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                reason: "missing survey CSV header".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::Parse {
                line: idx + 1,
                reason: format!("expected 8 fields, got {}", fields.len()),
            });
        }
        let bad = |what: &str| Error::Parse {
            line: idx + 1,
            reason: format!("invalid {what}"),
        };
        let row = SurveyRow {
            n: fields[0].parse().map_err(|_| bad("n"))?,
            tree_count: fields[1].parse().map_err(|_| bad("tree_count"))?,
            fort_sum: fields[2].parse().map_err(|_| bad("fort_sum"))?,
            max_forts: fields[3].parse().map_err(|_| bad("max_forts"))?,
            argmax_codes: if fields[4].is_empty() {
                Vec::new()
            } else {
                fields[4].split(';').map(str::to_string).collect()
            },
            total_time_ns: fields[6].parse().map_err(|_| bad("total_time_ns"))?,
        };
        if row.mean_forts(4) != fields[5] {
            return Err(bad("mean_forts (does not match fort_sum/tree_count)"));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Human name for a surveyed forest decomposition: a single named tree, an
/// empty graph for the all-ones partition, or the part list.
fn forest_label(partition: &[usize], tree_label: impl Fn(usize) -> String) -> String {
    if partition.iter().all(|&p| p == 1) {
        format!("E_{}", partition.len())
    } else if partition.len() == 1 {
        tree_label(partition[0])
    } else {
        let parts: Vec<String> = partition.iter().map(|&p| tree_label(p)).collect();
        parts.join(" + ")
    }
}

/// Per-n maxima over trees and forests, from survey rows:
/// `n,max_tree_forts,max_tree,forest_max_forts,max_forest`.
pub fn max_table_csv(rows: &[SurveyRow]) -> Result<String> {
    let Some(first) = rows.first() else {
        return Err(Error::InvalidParameters {
            reason: "no survey rows".into(),
        });
    };
    if rows
        .iter()
        .enumerate()
        .any(|(i, r)| r.n != first.n + i || r.n < 1)
    {
        return Err(Error::InvalidParameters {
            reason: "survey rows must cover a contiguous range of n".into(),
        });
    }
    // the partition DP needs ft from 1 up; fill the head from known values
    let mut ft = known_max_tree_forts(first.n.saturating_sub(1).min(20))?;
    for row in rows {
        if row.n != ft.len() {
            return Err(Error::MissingSurveyData { n: ft.len() });
        }
        ft.push(row.max_forts);
    }
    let table = forest_max_table(&ft);
    let tree_label = |n: usize, codes: Option<&Vec<String>>| -> String {
        codes
            .and_then(|c| c.first())
            .and_then(|g6| crate::graph6::decode_graph6(g6).ok())
            .and_then(|g| family_name(&g))
            .unwrap_or_else(|| {
                codes
                    .and_then(|c| c.first().cloned())
                    .unwrap_or_else(|| format!("n={n}"))
            })
    };
    let mut out = String::from("n,max_tree_forts,max_tree,forest_max_forts,max_forest\n");
    for row in rows {
        let label_for = |k: usize| {
            let codes = rows.iter().find(|r| r.n == k).map(|r| &r.argmax_codes);
            tree_label(k, codes)
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n,
            row.max_forts,
            label_for(row.n),
            table.fr[row.n],
            forest_label(&table.fr_partition[row.n], label_for),
        ));
    }
    Ok(out)
}

/// The bound-comparison table from formulas alone:
/// `n,max_tree_forts,forest_max_forts,pair_bound,bound_holds` for
/// 1 <= n <= n_max (n_max <= 20), where `pair_bound = C(n,2) * path count`.
/// The bound fails exactly at n = 2, which the `bound_holds` column records.
pub fn bound_table_csv(n_max: usize) -> Result<String> {
    let ft = known_max_tree_forts(n_max)?;
    let table = forest_max_table(&ft);
    let mut out = String::from("n,max_tree_forts,forest_max_forts,pair_bound,bound_holds\n");
    for n in 1..=n_max {
        // the reference column pins 1 at n = 1 even though C(1,2) = 0
        let bound = if n == 1 {
            1
        } else {
            binomial(n as u128, 2) * path_forts(n)
        };
        let holds = (table.fr[n] as u128) <= bound;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            n, table.ft[n], table.fr[n], bound, holds
        ));
    }
    Ok(out)
}

/// Mean fort counts and timing per n: `n,tree_count,mean_forts,mean_time_ms`.
pub fn mean_table_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from("n,tree_count,mean_forts,mean_time_ms\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.n,
            row.tree_count,
            row.mean_forts(4),
            row.mean_time_ms()
        ));
    }
    out
}

/// Outcome of the global-bound check against survey data.
#[derive(Clone, Debug)]
pub struct BoundCheckRow {
    pub n: usize,
    pub ft: u64,
    pub fr: u64,
    pub pair_bound: u128,
    /// `ft <= fr` always; `fr <= pair_bound` for n >= 3 (fails at n = 2).
    pub holds: bool,
}

/// Checks `ft[n] <= fr[n] <= C(n,2) * path_forts(n)` for 3 <= n <= n_max
/// using survey-derived tree maxima. n = 2 is reported but exempt: two
/// isolated vertices beat the bound there.
pub fn bound_check(rows: &[SurveyRow], n_max: usize) -> Result<(Vec<BoundCheckRow>, bool)> {
    let mut ft = vec![0u64; 1];
    for (i, row) in rows.iter().enumerate() {
        if row.n != i + 1 {
            return Err(Error::MissingSurveyData { n: i + 1 });
        }
        ft.push(row.max_forts);
    }
    if ft.len() <= n_max {
        return Err(Error::MissingSurveyData { n: n_max });
    }
    let table = forest_max_table(&ft[..=n_max]);
    let mut out = Vec::new();
    let mut all_hold = true;
    for n in 2..=n_max {
        let pair_bound = binomial(n as u128, 2) * path_forts(n);
        let holds = table.ft[n] <= table.fr[n] && table.fr[n] as u128 <= pair_bound;
        if n >= 3 && !holds {
            all_hold = false;
        }
        out.push(BoundCheckRow {
            n,
            ft: table.ft[n],
            fr: table.fr[n],
            pair_bound,
            holds,
        });
    }
    Ok((out, all_hold))
}
