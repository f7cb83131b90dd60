//! Seeded synthetic graph generation.
//!
//! Edge costs are integers in `1..=max_cost`, drawn through a Gaussian
//! copula: a shared standard normal factor mixed with per-criterion noise is
//! pushed through the normal CDF, giving uniform marginals. The latent
//! correlation is set to `2 sin(pi |rho| / 6)`, which makes the Pearson
//! correlation of the resulting uniforms equal to `|rho|`. For negative
//! `rho` the factor enters odd criteria with flipped sign, so criteria of
//! opposite parity (in particular criteria 1 and 2) correlate at `rho`
//! while same-parity pairs correlate at `|rho|`.

use super::{GraphBuilder, GraphError, MultiCostGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub const DEFAULT_MAX_COST: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphKind {
    /// Bidirectional 4-neighbour lattice; node `(x, y)` has id `y * width + x`.
    Grid { width: usize, height: usize },
    /// Strongly connected random digraph: a random Hamiltonian cycle plus
    /// `edges - nodes` uniformly drawn extra edges (no self-loops).
    Random { nodes: usize, edges: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub kind: GraphKind,
    pub criteria: usize,
    /// Target Pearson correlation between criteria, in `[-1, 1]`.
    pub correlation: f64,
    pub max_cost: u32,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn grid(width: usize, height: usize, criteria: usize, seed: u64) -> Self {
        Self {
            kind: GraphKind::Grid { width, height },
            criteria,
            correlation: 0.0,
            max_cost: DEFAULT_MAX_COST,
            seed,
        }
    }

    pub fn random(nodes: usize, edges: usize, criteria: usize, seed: u64) -> Self {
        Self {
            kind: GraphKind::Random { nodes, edges },
            criteria,
            correlation: 0.0,
            max_cost: DEFAULT_MAX_COST,
            seed,
        }
    }

    pub fn with_correlation(mut self, rho: f64) -> Self {
        self.correlation = rho;
        self
    }

    pub fn with_max_cost(mut self, max_cost: u32) -> Self {
        self.max_cost = max_cost;
        self
    }
}

struct CostSampler {
    rng: ChaCha8Rng,
    criteria: usize,
    shared: f64,
    noise: f64,
    negative: bool,
    max_cost: u32,
    buf: Vec<f64>,
}

impl CostSampler {
    fn new(cfg: &GeneratorConfig) -> Self {
        let latent = 2.0 * (std::f64::consts::PI * cfg.correlation.abs() / 6.0).sin();
        let latent = latent.clamp(0.0, 1.0);
        Self {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            criteria: cfg.criteria,
            shared: latent.sqrt(),
            noise: (1.0 - latent).sqrt(),
            negative: cfg.correlation < 0.0,
            max_cost: cfg.max_cost,
            buf: vec![0.0; cfg.criteria],
        }
    }

    fn draw(&mut self) -> &[f64] {
        let factor: f64 = self.rng.sample(StandardNormal);
        for k in 0..self.criteria {
            let own: f64 = self.rng.sample(StandardNormal);
            let sign = if self.negative && k % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            let z = sign * self.shared * factor + self.noise * own;
            let u = 0.5 * (1.0 + libm::erf(z / std::f64::consts::SQRT_2));
            let c = 1.0 + (u * self.max_cost as f64).floor();
            self.buf[k] = c.min(self.max_cost as f64);
        }
        &self.buf
    }
}

pub fn generate_graph(cfg: &GeneratorConfig) -> Result<MultiCostGraph, GraphError> {
    if !(-1.0..=1.0).contains(&cfg.correlation) {
        return Err(GraphError::InvalidParameters(format!(
            "correlation {} outside [-1, 1]",
            cfg.correlation
        )));
    }
    if cfg.max_cost == 0 {
        return Err(GraphError::InvalidParameters(
            "max_cost must be positive".into(),
        ));
    }
    let mut builder = GraphBuilder::new(cfg.criteria)?;
    let mut costs = CostSampler::new(cfg);

    match cfg.kind {
        GraphKind::Grid { width, height } => {
            if width == 0 || height == 0 {
                return Err(GraphError::InvalidParameters(
                    "grid dimensions must be positive".into(),
                ));
            }
            if width
                .checked_mul(height)
                .is_none_or(|n| n >= u32::MAX as usize)
            {
                return Err(GraphError::InvalidParameters("grid too large".into()));
            }
            builder.ensure_nodes(width * height);
            let id = |x: usize, y: usize| (y * width + x) as u32;
            for y in 0..height {
                for x in 0..width {
                    let mut neighbours = Vec::with_capacity(4);
                    if x + 1 < width {
                        neighbours.push(id(x + 1, y));
                    }
                    if x > 0 {
                        neighbours.push(id(x - 1, y));
                    }
                    if y + 1 < height {
                        neighbours.push(id(x, y + 1));
                    }
                    if y > 0 {
                        neighbours.push(id(x, y - 1));
                    }
                    for to in neighbours {
                        builder.add_edge(id(x, y), to, costs.draw())?;
                    }
                }
            }
        }
        GraphKind::Random { nodes, edges } => {
            if nodes < 2 {
                return Err(GraphError::InvalidParameters(
                    "random graphs need at least 2 nodes".into(),
                ));
            }
            if nodes >= u32::MAX as usize {
                return Err(GraphError::InvalidParameters("too many nodes".into()));
            }
            if edges < nodes {
                return Err(GraphError::InvalidParameters(format!(
                    "{edges} edges cannot strongly connect {nodes} nodes (need at least {nodes})"
                )));
            }
            builder.ensure_nodes(nodes);
            let mut order: Vec<u32> = (0..nodes as u32).collect();
            order.shuffle(&mut costs.rng);
            for i in 0..nodes {
                let (from, to) = (order[i], order[(i + 1) % nodes]);
                builder.add_edge(from, to, costs.draw())?;
            }
            for _ in nodes..edges {
                let from = costs.rng.random_range(0..nodes as u32);
                let mut to = costs.rng.random_range(0..nodes as u32 - 1);
                if to >= from {
                    to += 1;
                }
                builder.add_edge(from, to, costs.draw())?;
            }
        }
    }
    Ok(builder.build())
}
