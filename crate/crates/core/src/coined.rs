//! The lackadaisical quantum walk L = W * G and its oracle variant
//! L-hat = W * G-hat on the coin space H_N (x) H_{d+1}.
//!
//! States live on N(d+1) amplitudes indexed by (vertex, slot); slots 0..d-1
//! are the outgoing arcs in neighbor order and slot d is the self-loop. All
//! step operators are matrix-free: one step costs O(dN) and allocates
//! nothing.

use crate::error::{Result, WalkError};
use crate::graph::{MarkedInstance, RegularGraph};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Which oracle a walk step applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkVariant {
    /// Phase flip on every amplitude of the marked vertex.
    Lackadaisical,
    /// Phase flip on the self-loop and the uniform arc superposition only.
    Variant,
}

/// Self-loop weight and the weighted Grover coin vector.
#[derive(Debug, Clone)]
pub struct CoinConfig {
    ell: f64,
    /// Length d+1; entries 1/sqrt(d+ell) on arcs, sqrt(ell/(d+ell)) on the loop.
    coin: Vec<f64>,
}

impl CoinConfig {
    pub fn new(graph: &RegularGraph, ell: f64) -> Result<Self> {
        if ell < 0.0 {
            return Err(WalkError::InvalidParameter(format!("ell = {ell} is negative")));
        }
        let d = graph.degree() as f64;
        let norm = (d + ell).sqrt();
        let mut coin = vec![1.0 / norm; graph.degree() + 1];
        coin[graph.degree()] = ell.sqrt() / norm;
        Ok(CoinConfig { ell, coin })
    }

    /// The default weight ell = d/N, which makes the interpolated-walk
    /// correspondence exact.
    pub fn default_for(graph: &RegularGraph) -> Self {
        let ell = graph.degree() as f64 / graph.n_vertices() as f64;
        Self::new(graph, ell).expect("d/N is nonnegative")
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn coin(&self) -> &[f64] {
        &self.coin
    }
}

/// Complex amplitude vector over the N(d+1) arc and self-loop basis states.
#[derive(Debug, Clone)]
pub struct CoinState {
    n: usize,
    degree: usize,
    amplitudes: Vec<Complex64>,
}

impl CoinState {
    pub fn zero(graph: &RegularGraph) -> Self {
        CoinState {
            n: graph.n_vertices(),
            degree: graph.degree(),
            amplitudes: vec![Complex64::ZERO; graph.n_vertices() * (graph.degree() + 1)],
        }
    }

    pub fn from_amplitudes(graph: &RegularGraph, amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = graph.n_vertices() * (graph.degree() + 1);
        if amplitudes.len() != dim {
            return Err(WalkError::DimensionMismatch { expected: dim, found: amplitudes.len() });
        }
        Ok(CoinState { n: graph.n_vertices(), degree: graph.degree(), amplitudes })
    }

    /// Normalized pseudo-random state, used by conjugation and oracle tests.
    pub fn random(graph: &RegularGraph, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = graph.n_vertices() * (graph.degree() + 1);
        let mut amplitudes: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        CoinState { n: graph.n_vertices(), degree: graph.degree(), amplitudes }
    }

    #[inline]
    pub fn index(&self, x: usize, slot: usize) -> usize {
        x * (self.degree + 1) + slot
    }

    #[inline]
    pub fn amplitude(&self, x: usize, slot: usize) -> Complex64 {
        self.amplitudes[self.index(x, slot)]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &CoinState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// |init_lazy>: the coin vector on every unmarked vertex, weight
/// 1/sqrt(N-1); zero on the marked vertex.
pub fn initial_state_lazy(inst: &MarkedInstance, cfg: &CoinConfig) -> CoinState {
    let graph = inst.graph();
    let mut state = CoinState::zero(graph);
    let w = 1.0 / ((graph.n_vertices() - 1) as f64).sqrt();
    for x in 0..graph.n_vertices() {
        if x == inst.marked() {
            continue;
        }
        for slot in 0..=graph.degree() {
            let idx = state.index(x, slot);
            state.amplitudes[idx] = Complex64::new(w * cfg.coin[slot], 0.0);
        }
    }
    state
}

/// Oracle G: negate all d+1 amplitudes at the marked vertex.
pub fn apply_oracle_g(state: &mut CoinState, inst: &MarkedInstance) {
    let base = state.index(inst.marked(), 0);
    for slot in 0..=state.degree {
        state.amplitudes[base + slot] = -state.amplitudes[base + slot];
    }
}

/// Oracle G-hat: at the marked vertex negate the self-loop amplitude and the
/// component along the uniform arc superposition, fixing the rest.
pub fn apply_oracle_ghat(state: &mut CoinState, inst: &MarkedInstance) {
    let d = state.degree;
    let base = state.index(inst.marked(), 0);
    let mut sum = Complex64::ZERO;
    for slot in 0..d {
        sum += state.amplitudes[base + slot];
    }
    let twice_mean = sum * Complex64::new(2.0 / d as f64, 0.0);
    for slot in 0..d {
        state.amplitudes[base + slot] -= twice_mean;
    }
    state.amplitudes[base + d] = -state.amplitudes[base + d];
}

/// Grover diffusion about the weighted coin state, per vertex block.
pub fn apply_coin(state: &mut CoinState, cfg: &CoinConfig) {
    let d = state.degree;
    debug_assert_eq!(cfg.coin.len(), d + 1);
    for x in 0..state.n {
        let base = x * (d + 1);
        let mut proj = Complex64::ZERO;
        for slot in 0..=d {
            proj += state.amplitudes[base + slot] * cfg.coin[slot];
        }
        let twice = proj * 2.0;
        for slot in 0..=d {
            state.amplitudes[base + slot] =
                twice * cfg.coin[slot] - state.amplitudes[base + slot];
        }
    }
}

/// Flip-flop shift: swap each arc with its reverse, fix self-loops.
pub fn apply_shift(state: &mut CoinState, graph: &RegularGraph) {
    let d = state.degree;
    for x in 0..state.n {
        for i in 0..d {
            let y = graph.neighbor(x, i);
            if y > x {
                let j = graph.reverse_index(x, i);
                let a = x * (d + 1) + i;
                let b = y * (d + 1) + j;
                state.amplitudes.swap(a, b);
            }
        }
    }
}

/// One step of L = S (I (x) C) G.
pub fn step_l(state: &mut CoinState, inst: &MarkedInstance, cfg: &CoinConfig) {
    apply_oracle_g(state, inst);
    apply_coin(state, cfg);
    apply_shift(state, inst.graph());
}

/// One step of the variant walk L-hat = S (I (x) C) G-hat.
pub fn step_lhat(state: &mut CoinState, inst: &MarkedInstance, cfg: &CoinConfig) {
    apply_oracle_ghat(state, inst);
    apply_coin(state, cfg);
    apply_shift(state, inst.graph());
}

pub fn step(state: &mut CoinState, inst: &MarkedInstance, cfg: &CoinConfig, variant: WalkVariant) {
    match variant {
        WalkVariant::Lackadaisical => step_l(state, inst, cfg),
        WalkVariant::Variant => step_lhat(state, inst, cfg),
    }
}

/// Probability of measuring the marked vertex in the vertex register.
pub fn success_probability(state: &CoinState, inst: &MarkedInstance) -> f64 {
    let base = state.index(inst.marked(), 0);
    (0..=state.degree).map(|slot| state.amplitudes[base + slot].norm_sqr()).sum()
}

/// Largest pairwise amplitude difference over the marked vertex's d arcs.
pub fn marked_arc_spread(state: &CoinState, inst: &MarkedInstance) -> f64 {
    let base = state.index(inst.marked(), 0);
    let arcs = &state.amplitudes[base..base + state.degree];
    let mut spread = 0.0f64;
    for i in 0..arcs.len() {
        for j in (i + 1)..arcs.len() {
            spread = spread.max((arcs[i] - arcs[j]).norm());
        }
    }
    spread
}

/// True iff the marked vertex's arc amplitudes agree pairwise within `tol`.
pub fn verify_marked_arc_symmetry(
    state: &CoinState,
    inst: &MarkedInstance,
    tol: f64,
) -> Result<bool> {
    let dim = inst.graph().n_vertices() * (inst.graph().degree() + 1);
    if state.dim() != dim {
        return Err(WalkError::DimensionMismatch { expected: dim, found: state.dim() });
    }
    Ok(marked_arc_spread(state, inst) <= tol)
}

/// Maximum coin-space dimension for the dense test oracle.
pub const DENSE_GUARD: usize = 512;

/// Dense matrix of one walk step, for brute-force equivalence tests only.
pub fn dense_step_operator(
    inst: &MarkedInstance,
    cfg: &CoinConfig,
    variant: WalkVariant,
) -> Result<Vec<Complex64>> {
    let graph = inst.graph();
    let dim = graph.n_vertices() * (graph.degree() + 1);
    if dim > DENSE_GUARD {
        return Err(WalkError::InvalidParameter(format!(
            "dense oracle guard: dimension {dim} exceeds {DENSE_GUARD}"
        )));
    }
    let mut matrix = vec![Complex64::ZERO; dim * dim];
    for col in 0..dim {
        let mut basis = CoinState::zero(graph);
        basis.amplitudes[col] = Complex64::ONE;
        step(&mut basis, inst, cfg, variant);
        for row in 0..dim {
            matrix[row * dim + col] = basis.amplitudes[row];
        }
    }
    Ok(matrix)
}

/// Apply a dense operator to a state, for the same tests.
pub fn dense_apply(matrix: &[Complex64], state: &CoinState) -> CoinState {
    let dim = state.dim();
    debug_assert_eq!(matrix.len(), dim * dim);
    let mut out = state.clone();
    for row in 0..dim {
        let mut acc = Complex64::ZERO;
        for col in 0..dim {
            acc += matrix[row * dim + col] * state.amplitudes[col];
        }
        out.amplitudes[row] = acc;
    }
    out
}
