//! Benchmark sweeps over (task, method) pairs.
//!
//! CSV columns, in order: `task_id, source, target, method, d, criteria,
//! visited_node_count, bound_relaxed_edges, search_visited_nodes,
//! assembled_path_count, skyline_size, runtime_us, bound_runtime_us,
//! search_runtime_us, repetitions, timed_out`. Count and time columns are
//! empty for timed-out records. JSON output is an array of the same flat
//! objects.

use crate::{exit, CliError, GraphInput};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use route_skyline::search::QueryMetrics;
use route_skyline::{
    answer_query_with, Method, MultiCostGraph, NodeId, SearchError, SearchOptions,
};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

#[derive(Clone, Debug)]
pub enum TaskSource {
    File(PathBuf),
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub methods: Vec<Method>,
    pub reps: usize,
    pub timeout: Duration,
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            methods: vec![Method::ParetoPrep, Method::MultiDijkstra],
            reps: 3,
            timeout: Duration::from_secs(300),
            threads: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Task {
    pub id: usize,
    pub source: NodeId,
    pub target: NodeId,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub task_id: usize,
    pub source: u64,
    pub target: u64,
    pub method: String,
    pub d: usize,
    pub criteria: String,
    /// Node entries created by the bound phase (zero for `none`).
    pub visited_node_count: Option<usize>,
    pub bound_relaxed_edges: Option<usize>,
    /// Node entries created by the skyline search.
    pub search_visited_nodes: Option<usize>,
    pub assembled_path_count: Option<usize>,
    pub skyline_size: Option<usize>,
    /// Mean over repetitions, whole microseconds.
    pub runtime_us: Option<u64>,
    pub bound_runtime_us: Option<u64>,
    pub search_runtime_us: Option<u64>,
    pub repetitions: usize,
    pub timed_out: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: String,
    pub tasks: usize,
    pub timeouts: usize,
    pub mean_visited_nodes: f64,
    pub mean_search_visited_nodes: f64,
    pub mean_assembled_paths: f64,
    pub mean_runtime_us: f64,
    /// Reference-method mean divided by this method's mean.
    pub visited_ratio: f64,
    pub assembled_ratio: f64,
    pub runtime_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    /// Means over tasks that no method timed out on; ratios relative to the
    /// first method.
    pub summary: Vec<MethodSummary>,
    /// Rejected random draws (s == t or t unreachable from s).
    pub task_retries: Option<usize>,
    pub disagreements: Vec<String>,
}

impl BenchReport {
    pub fn exit_code(&self) -> i32 {
        if self.disagreements.is_empty() {
            exit::OK
        } else {
            exit::MISMATCH
        }
    }

    pub fn write_csv(&self, out: impl Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json(&self, mut out: impl Write) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut out, &self.records)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn summary_text(&self) -> String {
        // Zero or undefined ratios arise when the reference has no bound phase.
        let ratio = |r: f64| {
            if r.is_finite() && r > 0.0 {
                format!("{r:.2}")
            } else {
                "-".to_string()
            }
        };
        let mut s = String::new();
        if let Some(r) = self.task_retries {
            let _ = writeln!(s, "random task draws rejected: {r}");
        }
        let _ = writeln!(
            s,
            "{:<6} {:>6} {:>8} {:>16} {:>16} {:>16} {:>9} {:>9} {:>9}",
            "method",
            "tasks",
            "timeouts",
            "visited",
            "assembled",
            "runtime_us",
            "visited×",
            "assem×",
            "time×"
        );
        for m in &self.summary {
            let _ = writeln!(
                s,
                "{:<6} {:>6} {:>8} {:>16.1} {:>16.1} {:>16.1} {:>9} {:>9} {:>9}",
                m.method,
                m.tasks,
                m.timeouts,
                m.mean_visited_nodes,
                m.mean_assembled_paths,
                m.mean_runtime_us,
                ratio(m.visited_ratio),
                ratio(m.assembled_ratio),
                ratio(m.runtime_ratio)
            );
        }
        for d in &self.disagreements {
            let _ = writeln!(s, "DISAGREEMENT: {d}");
        }
        s
    }
}

/// Draws `count` tasks with `s != t` and `t` reachable from `s`.
pub fn random_tasks(
    g: &MultiCostGraph,
    count: usize,
    seed: u64,
) -> Result<(Vec<Task>, usize), CliError> {
    let n = g.node_count() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks = Vec::with_capacity(count);
    let mut retries = 0;
    let max_retries = 1000 + 100 * count;
    while tasks.len() < count {
        if n < 2 || retries > max_retries {
            return Err(CliError::TooFewTasks {
                wanted: count,
                retries,
            });
        }
        let s = NodeId(rng.random_range(0..n));
        let t = NodeId(rng.random_range(0..n));
        if s == t || !g.nodes_reachable_from(s)[t.index()] {
            retries += 1;
            continue;
        }
        tasks.push(Task {
            id: tasks.len(),
            source: s,
            target: t,
        });
    }
    Ok((tasks, retries))
}

/// Reads `s t` lines; `#` comments and blank lines are skipped.
pub fn read_tasks(input: &GraphInput, reader: impl BufRead) -> Result<Vec<Task>, CliError> {
    let mut tasks = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [s, t] = fields[..] else {
            return Err(CliError::TaskFormat {
                line: i + 1,
                reason: format!("expected `s t`, found {} fields", fields.len()),
            });
        };
        let parse = |f: &str| {
            f.parse::<u64>().map_err(|e| CliError::TaskFormat {
                line: i + 1,
                reason: format!("bad node id {f:?}: {e}"),
            })
        };
        tasks.push(Task {
            id: tasks.len(),
            source: input.node(parse(s)?)?,
            target: input.node(parse(t)?)?,
        });
    }
    Ok(tasks)
}

pub fn load_tasks(
    input: &GraphInput,
    source: &TaskSource,
) -> Result<(Vec<Task>, Option<usize>), CliError> {
    match source {
        TaskSource::File(path) => {
            let file = std::fs::File::open(path)?;
            Ok((read_tasks(input, std::io::BufReader::new(file))?, None))
        }
        TaskSource::Random { count, seed } => {
            let (tasks, retries) = random_tasks(&input.graph, *count, *seed)?;
            Ok((tasks, Some(retries)))
        }
    }
}

struct Measured {
    metrics: QueryMetrics,
    skyline_size: usize,
    runtime: Duration,
    bound_time: Duration,
    search_time: Duration,
}

fn measure(
    g: &MultiCostGraph,
    task: &Task,
    method: Method,
    config: &BenchConfig,
) -> Result<Option<Measured>, CliError> {
    let reps = config.reps.max(1);
    let mut first: Option<Measured> = None;
    let (mut total, mut bound, mut search) = (Duration::ZERO, Duration::ZERO, Duration::ZERO);
    for _ in 0..reps {
        let options = SearchOptions {
            deadline: Some(Instant::now() + config.timeout),
            ..Default::default()
        };
        let started = Instant::now();
        let result = match answer_query_with(g, task.source, task.target, method, &options) {
            Ok(r) => r,
            Err(SearchError::Timeout) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let elapsed = started.elapsed();
        if elapsed > config.timeout {
            return Ok(None);
        }
        total += elapsed;
        bound += result.metrics.bound_time;
        search += result.metrics.search_time;
        if first.is_none() {
            first = Some(Measured {
                skyline_size: result.skyline.len(),
                metrics: result.metrics,
                runtime: Duration::ZERO,
                bound_time: Duration::ZERO,
                search_time: Duration::ZERO,
            });
        }
    }
    let mut m = first.expect("at least one repetition");
    m.runtime = total / reps as u32;
    m.bound_time = bound / reps as u32;
    m.search_time = search / reps as u32;
    Ok(Some(m))
}

pub fn run_bench(
    input: &GraphInput,
    tasks: &[Task],
    config: &BenchConfig,
) -> Result<Vec<BenchRecord>, CliError> {
    let g = &input.graph;
    let d = g.criteria();
    if let Some(m) = config.methods.iter().find(|m| !m.supports(d)) {
        return Err(CliError::Usage(format!(
            "method {m} needs exactly 2 criteria, graph has {d}"
        )));
    }
    let criteria = (1..=d)
        .map(|i| format!("c{i}"))
        .collect::<Vec<_>>()
        .join(";");
    let run_task = |task: &Task| -> Result<Vec<BenchRecord>, CliError> {
        config
            .methods
            .iter()
            .map(|&method| {
                let measured = measure(g, task, method, config)?;
                let us = |d: Duration| d.as_micros() as u64;
                Ok(BenchRecord {
                    task_id: task.id,
                    source: input.external(task.source),
                    target: input.external(task.target),
                    method: method.to_string(),
                    d,
                    criteria: criteria.clone(),
                    visited_node_count: measured.as_ref().map(|m| m.metrics.bound_visited_nodes),
                    bound_relaxed_edges: measured.as_ref().map(|m| m.metrics.bound_relaxed_edges),
                    search_visited_nodes: measured.as_ref().map(|m| m.metrics.search_visited_nodes),
                    assembled_path_count: measured.as_ref().map(|m| m.metrics.assembled_path_count),
                    skyline_size: measured.as_ref().map(|m| m.skyline_size),
                    runtime_us: measured.as_ref().map(|m| us(m.runtime)),
                    bound_runtime_us: measured.as_ref().map(|m| us(m.bound_time)),
                    search_runtime_us: measured.as_ref().map(|m| us(m.search_time)),
                    repetitions: config.reps.max(1),
                    timed_out: measured.is_none(),
                })
            })
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let per_task: Vec<Result<Vec<BenchRecord>, CliError>> =
        pool.install(|| tasks.par_iter().map(run_task).collect());
    let mut records = Vec::new();
    for r in per_task {
        records.extend(r?);
    }
    Ok(records)
}

/// Tasks whose completed records report different skyline sizes.
pub fn disagreements(records: &[BenchRecord]) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in records.chunk_by(|a, b| a.task_id == b.task_id) {
        let sizes: Vec<(&str, usize)> = chunk
            .iter()
            .filter_map(|r| r.skyline_size.map(|s| (r.method.as_str(), s)))
            .collect();
        if sizes.windows(2).any(|w| w[0].1 != w[1].1) {
            let detail: Vec<String> = sizes.iter().map(|(m, s)| format!("{m}={s}")).collect();
            out.push(format!(
                "task {} ({} -> {}): skyline sizes {}",
                chunk[0].task_id,
                chunk[0].source,
                chunk[0].target,
                detail.join(", ")
            ));
        }
    }
    out
}

pub fn summarize(records: &[BenchRecord], methods: &[Method]) -> Vec<MethodSummary> {
    let complete: Vec<usize> = records
        .chunk_by(|a, b| a.task_id == b.task_id)
        .filter(|c| c.iter().all(|r| !r.timed_out))
        .map(|c| c[0].task_id)
        .collect();
    let mean = |values: Vec<f64>| {
        if values.is_empty() {
            f64::NAN
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        }
    };
    let mut out: Vec<MethodSummary> = methods
        .iter()
        .map(|m| {
            let name = m.to_string();
            let mine: Vec<&BenchRecord> = records.iter().filter(|r| r.method == name).collect();
            let done: Vec<&BenchRecord> = mine
                .iter()
                .copied()
                .filter(|r| complete.binary_search(&r.task_id).is_ok())
                .collect();
            let field = |f: fn(&BenchRecord) -> Option<f64>| {
                mean(done.iter().filter_map(|r| f(r)).collect())
            };
            MethodSummary {
                method: name,
                tasks: mine.len(),
                timeouts: mine.iter().filter(|r| r.timed_out).count(),
                mean_visited_nodes: field(|r| r.visited_node_count.map(|v| v as f64)),
                mean_search_visited_nodes: field(|r| r.search_visited_nodes.map(|v| v as f64)),
                mean_assembled_paths: field(|r| r.assembled_path_count.map(|v| v as f64)),
                mean_runtime_us: field(|r| r.runtime_us.map(|v| v as f64)),
                visited_ratio: f64::NAN,
                assembled_ratio: f64::NAN,
                runtime_ratio: f64::NAN,
            }
        })
        .collect();
    if let Some(reference) = out.first().cloned() {
        for m in &mut out {
            m.visited_ratio = reference.mean_visited_nodes / m.mean_visited_nodes;
            m.assembled_ratio = reference.mean_assembled_paths / m.mean_assembled_paths;
            m.runtime_ratio = reference.mean_runtime_us / m.mean_runtime_us;
        }
    }
    out
}

pub fn cmd_bench(
    input: &GraphInput,
    source: &TaskSource,
    config: &BenchConfig,
) -> Result<BenchReport, CliError> {
    let (tasks, task_retries) = load_tasks(input, source)?;
    let records = run_bench(input, &tasks, config)?;
    Ok(BenchReport {
        summary: summarize(&records, &config.methods),
        disagreements: disagreements(&records),
        records,
        task_retries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use route_skyline::graph::parse_graph;

    fn diamond() -> GraphInput {
        GraphInput::from_graph(
            parse_graph("2\n0 1 1 1\n1 3 2 3\n1 2 2 1\n2 3 3 1\n0 2 6 5\n").unwrap(),
        )
    }

    fn record(task_id: usize, method: Method, skyline: usize, assembled: usize) -> BenchRecord {
        BenchRecord {
            task_id,
            source: 0,
            target: 3,
            method: method.to_string(),
            d: 2,
            criteria: "c1;c2".into(),
            visited_node_count: Some(0),
            bound_relaxed_edges: Some(0),
            search_visited_nodes: Some(0),
            assembled_path_count: Some(assembled),
            skyline_size: Some(skyline),
            runtime_us: Some(10),
            bound_runtime_us: Some(0),
            search_runtime_us: Some(10),
            repetitions: 1,
            timed_out: false,
        }
    }

    #[test]
    fn task_lines_parse_with_comments() {
        let tasks = read_tasks(&diamond(), "# header\n0 3\n\n1 2 # trailing\n".as_bytes()).unwrap();
        let pairs: Vec<(u32, u32)> = tasks.iter().map(|t| (t.source.0, t.target.0)).collect();
        assert_eq!(pairs, vec![(0, 3), (1, 2)]);
        assert_eq!(tasks[1].id, 1);
    }

    #[test]
    fn malformed_task_lines_report_their_line() {
        let err = read_tasks(&diamond(), "0 3\n0 1 2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, CliError::TaskFormat { line: 2, .. }), "{err}");
        let err = read_tasks(&diamond(), "0 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, CliError::TaskFormat { line: 1, .. }), "{err}");
        let err = read_tasks(&diamond(), "0 9\n".as_bytes()).unwrap_err();
        assert!(matches!(err, CliError::InvalidNode(9)));
    }

    #[test]
    fn random_tasks_are_reachable_and_reproducible() {
        let input = diamond();
        let (a, _) = random_tasks(&input.graph, 5, 3).unwrap();
        let (b, _) = random_tasks(&input.graph, 5, 3).unwrap();
        assert_eq!(a, b);
        for t in &a {
            assert_ne!(t.source, t.target);
            assert!(input.graph.nodes_reachable_from(t.source)[t.target.index()]);
        }
        let empty = parse_graph("2\n").unwrap();
        assert!(matches!(
            random_tasks(&empty, 1, 0),
            Err(CliError::TooFewTasks { .. })
        ));
    }

    #[test]
    fn disagreements_flag_differing_skyline_sizes() {
        let records = vec![
            record(0, Method::ParetoPrep, 2, 10),
            record(0, Method::MultiDijkstra, 2, 12),
            record(1, Method::ParetoPrep, 3, 10),
            record(1, Method::MultiDijkstra, 4, 12),
        ];
        let found = disagreements(&records);
        assert_eq!(found.len(), 1);
        assert!(found[0].starts_with("task 1"), "{}", found[0]);
    }

    #[test]
    fn summary_skips_tasks_with_any_timeout() {
        let mut slow = record(1, Method::MultiDijkstra, 0, 0);
        slow.timed_out = true;
        slow.assembled_path_count = None;
        let records = vec![
            record(0, Method::ParetoPrep, 2, 10),
            record(0, Method::MultiDijkstra, 2, 40),
            record(1, Method::ParetoPrep, 2, 1000),
            slow,
        ];
        let summary = summarize(&records, &[Method::ParetoPrep, Method::MultiDijkstra]);
        assert_eq!(summary[0].mean_assembled_paths, 10.0);
        assert_eq!(summary[1].mean_assembled_paths, 40.0);
        assert_eq!(summary[1].timeouts, 1);
        assert_eq!(summary[1].tasks, 2);
        assert_eq!(summary[1].assembled_ratio, 0.25);
    }
}
