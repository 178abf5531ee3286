//! Scaling experiments: wall-clock times of the pipelines against problem
//! size, and log-log exponent fits.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::build_diagram;
use crate::fast_count::count_increasing;
use crate::grid::{make_dense_fill, make_dense_pair, mix_grid_link, GridLink};
use crate::invariants::{lk_2d, lk_3d};

/// Slots per instance in the `count_increasing` experiment.
pub const COUNT_SLOTS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("unknown operation `{0}` (expected lk_2d_pipeline, lk_3d, build_diagram or count_increasing)")]
    UnknownOp(String),
    #[error("at least {min} repetitions are required, got {got}")]
    TooFewReps { min: usize, got: usize },
    #[error("a fit needs at least 4 rows, got {0}")]
    TooFewRows(usize),
    #[error("row {row} has a missing or non-positive {field}")]
    NonPositive { row: usize, field: Field },
    #[error("all rows share the same {0}")]
    DegenerateRange(Field),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BenchOp {
    Lk2dPipeline,
    Lk3d,
    BuildDiagram,
    CountIncreasing,
}

impl BenchOp {
    pub const ALL: [BenchOp; 4] =
        [BenchOp::Lk2dPipeline, BenchOp::Lk3d, BenchOp::BuildDiagram, BenchOp::CountIncreasing];

    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Lk2dPipeline => "lk_2d_pipeline",
            BenchOp::Lk3d => "lk_3d",
            BenchOp::BuildDiagram => "build_diagram",
            BenchOp::CountIncreasing => "count_increasing",
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BenchOp::ALL.into_iter().find(|op| op.name() == s).ok_or_else(|| BenchError::UnknownOp(s.to_string()))
    }
}

/// One measured cell. For `count_increasing` the `size` column holds the
/// slot size `K`, `volume` the total number of tokens and `edges` the
/// number of slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingRow {
    pub op: BenchOp,
    pub size: i64,
    pub volume: i64,
    pub edges: usize,
    pub n: usize,
    /// Median wall time; `None` if the cell failed.
    pub time_ns: Option<u128>,
    pub reps: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Size,
    Volume,
    Edges,
    Crossings,
    Time,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Size => "L",
            Field::Volume => "V",
            Field::Edges => "edges",
            Field::Crossings => "n",
            Field::Time => "time_ns",
        })
    }
}

impl ScalingRow {
    pub fn get(&self, field: Field) -> Option<f64> {
        match field {
            Field::Size => Some(self.size as f64),
            Field::Volume => Some(self.volume as f64),
            Field::Edges => Some(self.edges as f64),
            Field::Crossings => Some(self.n as f64),
            Field::Time => self.time_ns.map(|t| t as f64),
        }
    }
}

/// Dense single-component fixture: the boustrophedon fill, mixed.
pub fn dense_knot(size: i32, seed: u64) -> GridLink {
    mix_grid_link(&make_dense_fill(size), seed, mix_steps(size))
}

/// Dense two-component fixture: two stacked fills, mixed.
pub fn dense_link(size: i32, seed: u64) -> GridLink {
    mix_grid_link(&make_dense_pair(size), seed, mix_steps(size))
}

fn mix_steps(size: i32) -> u64 {
    u64::try_from(size).unwrap_or(0).pow(3)
}

/// Median of `reps` timed runs after one untimed warm-up.
fn time_median<T>(reps: usize, mut f: impl FnMut() -> T) -> u128 {
    black_box(f());
    let mut times: Vec<u128> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            black_box(f());
            start.elapsed().as_nanos()
        })
        .collect();
    times.sort_unstable();
    times[times.len() / 2]
}

fn random_slots(k: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = (COUNT_SLOTS * k) as i64 * 4;
    (0..COUNT_SLOTS)
        .map(|_| {
            let mut s: Vec<i64> = (0..k).map(|_| rng.gen_range(0..range)).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect()
}

fn measure(op: BenchOp, size: i32, seed: u64, reps: usize) -> ScalingRow {
    let mut row = ScalingRow {
        op,
        size: i64::from(size),
        volume: i64::from(size).pow(3),
        edges: 0,
        n: 0,
        time_ns: None,
        reps,
        seed,
    };
    match op {
        BenchOp::CountIncreasing => {
            let k = usize::try_from(size).unwrap_or(0);
            let slots = random_slots(k, seed);
            row.volume = slots.iter().map(Vec::len).sum::<usize>() as i64;
            row.edges = slots.len();
            row.time_ns = Some(time_median(reps, || count_increasing(&slots)));
        }
        BenchOp::BuildDiagram => {
            let link = dense_knot(size, seed);
            row.edges = link.edge_count();
            let n = build_diagram(&link).n();
            row.n = n;
            let recount = crate::diagram::enumerate_fields(&link)
                .iter()
                .map(|f| crate::diagram::field_crossings(f).len())
                .sum::<usize>();
            if recount == n {
                row.time_ns = Some(time_median(reps, || build_diagram(&link)));
            }
        }
        BenchOp::Lk3d | BenchOp::Lk2dPipeline => {
            let link = dense_link(size, seed);
            row.edges = link.edge_count();
            let diagram = build_diagram(&link);
            row.n = diagram.n();
            let expected = lk_2d(&diagram);
            drop(diagram);
            // Timing only runs on inputs where both pipelines agree.
            if expected.is_ok() && lk_3d(&link) == expected {
                row.time_ns = Some(match op {
                    BenchOp::Lk3d => time_median(reps, || lk_3d(&link)),
                    _ => time_median(reps, || lk_2d(&build_diagram(&link))),
                });
            }
        }
    }
    row
}

/// Runs `op` at every size and seed. Sizes are box sizes `L`, except for
/// `count_increasing` where they are slot sizes `K`.
pub fn run_scaling(op_name: &str, sizes: &[i32], seeds: &[u64], reps: usize) -> Result<Vec<ScalingRow>, BenchError> {
    let op: BenchOp = op_name.parse()?;
    if reps < 5 {
        return Err(BenchError::TooFewReps { min: 5, got: reps });
    }
    let mut rows = Vec::with_capacity(sizes.len() * seeds.len());
    for &size in sizes {
        for &seed in seeds {
            rows.push(measure(op, size, seed, reps));
        }
    }
    Ok(rows)
}

/// Least-squares slope and `r^2` of `log y` against `log x`.
pub fn fit_loglog(rows: &[ScalingRow], x: Field, y: Field) -> Result<(f64, f64), BenchError> {
    if rows.len() < 4 {
        return Err(BenchError::TooFewRows(rows.len()));
    }
    let mut pts = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let px = r.get(x).filter(|v| *v > 0.0).ok_or(BenchError::NonPositive { row: i, field: x })?;
        let py = r.get(y).filter(|v| *v > 0.0).ok_or(BenchError::NonPositive { row: i, field: y })?;
        pts.push((px.ln(), py.ln()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx <= f64::EPSILON * n {
        return Err(BenchError::DegenerateRange(x));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok((slope, r2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Tsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            _ => Err(format!("unknown format `{s}` (expected csv or tsv)")),
        }
    }
}

pub fn format_rows(rows: &[ScalingRow], format: Format) -> String {
    let sep = match format {
        Format::Csv => ",",
        Format::Tsv => "\t",
    };
    let mut out = ["op", "L", "V", "edges", "n", "time_ns", "reps", "seed"].join(sep);
    out.push('\n');
    for r in rows {
        let time = r.time_ns.map_or_else(|| "fail".to_string(), |t| t.to_string());
        let cells = [
            r.op.to_string(),
            r.size.to_string(),
            r.volume.to_string(),
            r.edges.to_string(),
            r.n.to_string(),
            time,
            r.reps.to_string(),
            r.seed.to_string(),
        ];
        out.push_str(&cells.join(sep));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows_on(f: impl Fn(f64) -> f64) -> Vec<ScalingRow> {
        [2, 4, 8, 16, 32]
            .into_iter()
            .map(|l| ScalingRow {
                op: BenchOp::Lk3d,
                size: l,
                volume: l * l * l,
                edges: 0,
                n: f(l as f64) as usize,
                time_ns: Some(f(l as f64) as u128),
                reps: 5,
                seed: 0,
            })
            .collect()
    }

    #[test]
    fn exact_power_laws() {
        let (s, r2) = fit_loglog(&rows_on(|x| x), Field::Size, Field::Time).unwrap();
        assert!((s - 1.0).abs() < 1e-9 && (r2 - 1.0).abs() < 1e-9);
        let (s, _) = fit_loglog(&rows_on(|x| x.powi(4)), Field::Size, Field::Crossings).unwrap();
        assert!((s - 4.0).abs() < 1e-9);
        let (s, _) = fit_loglog(&rows_on(|x| x.powi(3)), Field::Volume, Field::Time).unwrap();
        assert!((s - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fit_errors() {
        let rows = rows_on(|x| x);
        assert_eq!(fit_loglog(&rows[..3], Field::Size, Field::Time), Err(BenchError::TooFewRows(3)));
        let flat: Vec<ScalingRow> = rows.iter().map(|r| ScalingRow { size: 4, ..r.clone() }).collect();
        assert_eq!(fit_loglog(&flat, Field::Size, Field::Time), Err(BenchError::DegenerateRange(Field::Size)));
        let mut failed = rows.clone();
        failed[2].time_ns = None;
        assert!(matches!(fit_loglog(&failed, Field::Size, Field::Time), Err(BenchError::NonPositive { row: 2, .. })));
    }

    #[test]
    fn runs_and_formats() {
        let rows = run_scaling("lk_3d", &[3, 4], &[1], 5).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].volume < rows[1].volume);
        assert!(rows.iter().all(|r| r.time_ns.is_some()));
        let csv = format_rows(&rows, Format::Csv);
        assert!(csv.starts_with("op,L,V,edges,n,time_ns,reps,seed\nlk_3d,3,27,"));
        assert!(format_rows(&rows, Format::Tsv).contains("lk_3d\t4\t64\t"));
        assert!(matches!(run_scaling("nope", &[3], &[1], 5), Err(BenchError::UnknownOp(_))));
        assert!(matches!(run_scaling("lk_3d", &[3], &[1], 2), Err(BenchError::TooFewReps { .. })));
    }

    #[test]
    fn build_rows_report_recounted_crossings() {
        let rows = run_scaling("build_diagram", &[3, 4], &[0, 1], 5).unwrap();
        for r in &rows {
            assert_eq!(r.n, build_diagram(&dense_knot(r.size as i32, r.seed)).n());
        }
    }
}
