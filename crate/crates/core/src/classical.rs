//! Classical walk matrices: the simple random walk P, its absorbing variant
//! P', the interpolation P(s) = (1-s)P + sP', the lazy walk and its
//! interpolation, plus exact and Monte Carlo hitting times.

use crate::error::{Result, WalkError};
use crate::graph::RegularGraph;
use crate::linalg::solve_dense;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ROW_SUM_TOL: f64 = 1e-12;

/// Which construction produced a stochastic matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkKind {
    Plain,
    Absorbing,
    Interpolated,
    Lazy,
    LazyInterpolated,
}

/// Row-stochastic N x N transition matrix, dense storage.
#[derive(Debug, Clone)]
pub struct StochasticMatrix {
    n: usize,
    entries: Vec<f64>,
    kind: WalkKind,
    s: Option<f64>,
    ell: Option<f64>,
}

impl StochasticMatrix {
    fn validated(n: usize, entries: Vec<f64>, kind: WalkKind, s: Option<f64>, ell: Option<f64>) -> Result<Self> {
        debug_assert_eq!(entries.len(), n * n);
        for x in 0..n {
            let mut sum = 0.0;
            for y in 0..n {
                let v = entries[x * n + y];
                if v < 0.0 {
                    return Err(WalkError::InvalidParameter(format!(
                        "negative transition probability at ({x}, {y})"
                    )));
                }
                sum += v;
            }
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(WalkError::InvalidParameter(format!(
                    "row {x} sums to {sum}, not 1"
                )));
            }
        }
        Ok(StochasticMatrix { n, entries, kind, s, ell })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, x: usize, y: usize) -> f64 {
        self.entries[x * self.n + y]
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[f64] {
        &self.entries[x * self.n..(x + 1) * self.n]
    }

    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn interpolation(&self) -> Option<f64> {
        self.s
    }

    pub fn self_loop_weight(&self) -> Option<f64> {
        self.ell
    }
}

/// Probability distribution over vertices.
#[derive(Debug, Clone)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|&p| p < 0.0) || (sum - 1.0).abs() > ROW_SUM_TOL {
            return Err(WalkError::InvalidParameter(format!(
                "distribution sums to {sum} or has negative mass"
            )));
        }
        Ok(Distribution(probs))
    }

    /// Uniform over all N vertices.
    pub fn uniform(n: usize) -> Self {
        Distribution(vec![1.0 / n as f64; n])
    }

    /// pi-bar: uniform over the unmarked vertices, zero on `marked`.
    pub fn pibar(n: usize, marked: usize) -> Self {
        let mut probs = vec![1.0 / (n - 1) as f64; n];
        probs[marked] = 0.0;
        Distribution(probs)
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    /// Entrywise square root, the unit vector the spectral module expands.
    pub fn sqrt(&self) -> Vec<f64> {
        self.0.iter().map(|&p| p.sqrt()).collect()
    }
}

/// P(G): uniform transition to each neighbor.
pub fn walk_matrix(graph: &RegularGraph) -> StochasticMatrix {
    let n = graph.n_vertices();
    let d = graph.degree();
    let p = 1.0 / d as f64;
    let mut entries = vec![0.0; n * n];
    for x in 0..n {
        for &y in graph.neighbors_of(x) {
            entries[x * n + y] = p;
        }
    }
    StochasticMatrix::validated(n, entries, WalkKind::Plain, None, None)
        .expect("uniform walk rows sum to 1")
}

/// P': replace the marked row with the indicator of the marked vertex.
pub fn absorbing_matrix(p: &StochasticMatrix, marked: usize) -> Result<StochasticMatrix> {
    if !matches!(p.kind, WalkKind::Plain | WalkKind::Lazy) {
        return Err(WalkError::InvalidParameter(
            "absorbing variant is built from a plain or lazy walk".into(),
        ));
    }
    let n = p.n;
    let mut entries = p.entries.clone();
    for y in 0..n {
        entries[marked * n + y] = 0.0;
    }
    entries[marked * n + marked] = 1.0;
    StochasticMatrix::validated(n, entries, WalkKind::Absorbing, p.s, p.ell)
}

/// P(s) = (1-s) P + s P'. Only the marked row changes.
pub fn interpolated_matrix(p: &StochasticMatrix, marked: usize, s: f64) -> Result<StochasticMatrix> {
    if !(0.0..=1.0).contains(&s) {
        return Err(WalkError::InvalidParameter(format!("s = {s} outside [0, 1]")));
    }
    let n = p.n;
    let kind = match p.kind {
        WalkKind::Plain => WalkKind::Interpolated,
        WalkKind::Lazy => WalkKind::LazyInterpolated,
        _ => {
            return Err(WalkError::InvalidParameter(
                "interpolation starts from a plain or lazy walk".into(),
            ))
        }
    };
    let mut entries = p.entries.clone();
    for y in 0..n {
        let absorbing = if y == marked { 1.0 } else { 0.0 };
        entries[marked * n + y] = (1.0 - s) * p.entry(marked, y) + s * absorbing;
    }
    StochasticMatrix::validated(n, entries, kind, Some(s), p.ell)
}

/// Lazy walk: self-loop of weight `ell` at every vertex,
/// `d/(d+ell) * P + ell/(d+ell) * I`.
pub fn lazy_matrix(graph: &RegularGraph, ell: f64) -> Result<StochasticMatrix> {
    if ell < 0.0 {
        return Err(WalkError::InvalidParameter(format!("ell = {ell} is negative")));
    }
    let n = graph.n_vertices();
    let d = graph.degree() as f64;
    let stay = ell / (d + ell);
    let hop = 1.0 / (d + ell);
    let mut entries = vec![0.0; n * n];
    for x in 0..n {
        entries[x * n + x] = stay;
        for &y in graph.neighbors_of(x) {
            entries[x * n + y] = hop;
        }
    }
    StochasticMatrix::validated(n, entries, WalkKind::Lazy, None, Some(ell))
}

/// Interpolated lazy walk: lazy walk first, then interpolation toward its
/// absorbing variant.
pub fn lazy_interpolated_matrix(
    graph: &RegularGraph,
    marked: usize,
    ell: f64,
    s: f64,
) -> Result<StochasticMatrix> {
    let lazy = lazy_matrix(graph, ell)?;
    interpolated_matrix(&lazy, marked, s)
}

/// Exact hitting time of the marked vertex: solve `(I - Q) h = 1` on the
/// unmarked block and average `h` under `start` (default: uniform over
/// unmarked).
pub fn hitting_time_exact(
    p: &StochasticMatrix,
    marked: usize,
    start: Option<&Distribution>,
) -> Result<f64> {
    let n = p.n;
    if marked >= n {
        return Err(WalkError::InvalidParameter(format!("marked vertex {marked} out of range")));
    }
    let unmarked: Vec<usize> = (0..n).filter(|&x| x != marked).collect();
    let m = unmarked.len();
    let mut a = vec![0.0; m * m];
    for (i, &x) in unmarked.iter().enumerate() {
        for (j, &y) in unmarked.iter().enumerate() {
            let q = p.entry(x, y);
            a[i * m + j] = if i == j { 1.0 - q } else { -q };
        }
    }
    let h = solve_dense(a, vec![1.0; m], m)
        .map_err(|_| WalkError::SingularSystem("marked vertex unreachable".into()))?;
    let default = Distribution::pibar(n, marked);
    let start = start.unwrap_or(&default);
    if start.probs().len() != n {
        return Err(WalkError::DimensionMismatch { expected: n, found: start.probs().len() });
    }
    // Starting on the marked vertex contributes zero steps.
    let mut weighted = 0.0;
    for (i, &x) in unmarked.iter().enumerate() {
        weighted += start.probs()[x] * h[i];
    }
    Ok(weighted)
}

/// Monte Carlo estimate of the hitting time.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
    /// Trajectories cut off at the 100 N^2 step cap.
    pub truncated: usize,
}

/// Sample trajectories until absorption at `marked`; each trial uses its own
/// RNG stream derived from `seed` and the trial index, so the estimate does
/// not depend on scheduling or trial order.
pub fn hitting_time_monte_carlo(
    p: &StochasticMatrix,
    marked: usize,
    start: Option<&Distribution>,
    n_trials: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if n_trials == 0 {
        return Err(WalkError::InvalidParameter("n_trials must be >= 1".into()));
    }
    let n = p.n;
    let default = Distribution::pibar(n, marked);
    let start = start.unwrap_or(&default);
    if start.probs().len() != n {
        return Err(WalkError::DimensionMismatch { expected: n, found: start.probs().len() });
    }
    // Row CDFs once; binary search per step.
    let mut cdf = vec![0.0; n * n];
    for x in 0..n {
        let mut acc = 0.0;
        for y in 0..n {
            acc += p.entry(x, y);
            cdf[x * n + y] = acc;
        }
    }
    let mut start_cdf = vec![0.0; n];
    let mut acc = 0.0;
    for x in 0..n {
        acc += start.probs()[x];
        start_cdf[x] = acc;
    }
    let cap = 100 * n as u64 * n as u64;

    let mut total: u64 = 0;
    let mut total_sq: u128 = 0;
    let mut truncated = 0usize;
    for trial in 0..n_trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let mut x = sample_cdf(&start_cdf, rng.random::<f64>());
        let mut steps: u64 = 0;
        while x != marked && steps < cap {
            let r = rng.random::<f64>();
            x = sample_cdf(&cdf[x * n..(x + 1) * n], r);
            steps += 1;
        }
        if x != marked {
            truncated += 1;
        }
        total += steps;
        total_sq += (steps as u128) * (steps as u128);
    }
    let t = n_trials as f64;
    let mean = total as f64 / t;
    let var = (total_sq as f64 / t - mean * mean).max(0.0) * t / (t - 1.0).max(1.0);
    Ok(MonteCarloEstimate {
        mean,
        std_error: (var / t).sqrt(),
        trials: n_trials,
        truncated,
    })
}

fn sample_cdf(cdf: &[f64], r: f64) -> usize {
    cdf.partition_point(|&c| c <= r).min(cdf.len() - 1)
}
