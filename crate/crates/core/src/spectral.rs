//! Discriminant matrices, their symmetric eigendecomposition, the overlap
//! decomposition of sqrt(pi-bar), the interpolated hitting time and the
//! cotangent quantum hitting time computed purely from the spectrum.
//!
//! Degenerate eigenvalues are grouped into eigenspaces and every spectral
//! sum runs over per-eigenspace projections, so nothing here depends on the
//! basis the solver happens to pick inside a degenerate eigenspace.

use crate::classical::{Distribution, StochasticMatrix};
use crate::error::{Result, WalkError};
use crate::linalg::symmetric_eigen;

/// Eigenvalues closer than this are treated as one eigenspace.
pub const GROUP_TOL: f64 = 1e-9;
/// |lambda - 1| below this counts as the stationary eigenvalue.
pub const UNIT_TOL: f64 = 1e-10;

/// Symmetric matrix D(M) with entries sqrt(M_xy * M_yx).
#[derive(Debug, Clone)]
pub struct Discriminant {
    n: usize,
    entries: Vec<f64>,
}

impl Discriminant {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, x: usize, y: usize) -> f64 {
        self.entries[x * self.n + y]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Entrywise sqrt of the Hadamard product with the transpose; symmetric by
/// construction (each unordered pair is computed once and mirrored).
pub fn discriminant(m: &StochasticMatrix) -> Discriminant {
    let n = m.n();
    let mut entries = vec![0.0; n * n];
    for x in 0..n {
        for y in x..n {
            let v = (m.entry(x, y) * m.entry(y, x)).sqrt();
            entries[x * n + y] = v;
            entries[y * n + x] = v;
        }
    }
    Discriminant { n, entries }
}

/// Full orthonormal eigensystem of a discriminant, with eigenvalues sorted
/// ascending and grouped into eigenspaces.
#[derive(Debug, Clone)]
pub struct Spectrum {
    n: usize,
    values: Vec<f64>,
    /// Row k is the eigenvector for `values[k]`.
    vectors: Vec<f64>,
    /// Index ranges `[start, end)` of the eigenspace groups, ascending.
    groups: Vec<(usize, usize)>,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }

    /// Angle in [0, pi] with lambda_k = cos(theta_k).
    pub fn angle(&self, k: usize) -> f64 {
        self.values[k].clamp(-1.0, 1.0).acos()
    }

    /// Eigenspace groups as index ranges into the sorted eigenvalues.
    pub fn groups(&self) -> &[(usize, usize)] {
        &self.groups
    }

    /// Representative eigenvalue of a group (mean over its members).
    pub fn group_value(&self, g: usize) -> f64 {
        let (a, b) = self.groups[g];
        self.values[a..b].iter().sum::<f64>() / (b - a) as f64
    }

    pub fn is_unit_group(&self, g: usize) -> bool {
        (self.group_value(g) - 1.0).abs() < UNIT_TOL
    }

    /// Squared norm of the projection of `w` onto eigenspace `g`.
    pub fn group_overlap_sq(&self, g: usize, w: &[f64]) -> f64 {
        let (a, b) = self.groups[g];
        (a..b)
            .map(|k| {
                let c: f64 = self.eigenvector(k).iter().zip(w).map(|(v, x)| v * x).sum();
                c * c
            })
            .sum()
    }

    /// Test/verification hook: replace an eigenvector row pair by a rotation
    /// of itself. Only meaningful inside a degenerate eigenspace.
    pub fn rotate_pair(&mut self, i: usize, j: usize, angle: f64) {
        let n = self.n;
        let (c, s) = (angle.cos(), angle.sin());
        for t in 0..n {
            let vi = self.vectors[i * n + t];
            let vj = self.vectors[j * n + t];
            self.vectors[i * n + t] = c * vi + s * vj;
            self.vectors[j * n + t] = -s * vi + c * vj;
        }
    }
}

/// Decompose a discriminant with the deterministic symmetric solver.
pub fn eigendecompose(d: &Discriminant) -> Result<Spectrum> {
    let n = d.n;
    let eig = symmetric_eigen(&d.entries, n)?;
    let mut groups = Vec::new();
    let mut start = 0usize;
    for k in 1..=n {
        if k == n || (eig.values[k] - eig.values[k - 1]).abs() >= GROUP_TOL {
            groups.push((start, k));
            start = k;
        }
    }
    Ok(Spectrum { n, values: eig.values, vectors: eig.vectors, groups })
}

/// Coefficients of sqrt(pi-bar) in the eigenbasis plus per-eigenspace
/// squared overlaps.
#[derive(Debug, Clone)]
pub struct OverlapDecomposition {
    pub coefficients: Vec<f64>,
    pub group_overlaps_sq: Vec<f64>,
}

pub fn overlap_decomposition(spec: &Spectrum, pibar: &Distribution) -> Result<OverlapDecomposition> {
    let w = unit_sqrt(spec, pibar)?;
    let n = spec.n;
    let coefficients: Vec<f64> = (0..n)
        .map(|k| spec.eigenvector(k).iter().zip(&w).map(|(v, x)| v * x).sum())
        .collect();
    let group_overlaps_sq = (0..spec.groups.len())
        .map(|g| spec.group_overlap_sq(g, &w))
        .collect();
    // Reconstruction contract: sum alpha_k |lambda_k> returns sqrt(pi-bar).
    let mut recon = vec![0.0; n];
    for k in 0..n {
        let v = spec.eigenvector(k);
        for t in 0..n {
            recon[t] += coefficients[k] * v[t];
        }
    }
    let err = recon.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
    if err > 1e-10 {
        return Err(WalkError::DegenerateSpectrum(format!(
            "overlap reconstruction error {err} exceeds 1e-10"
        )));
    }
    Ok(OverlapDecomposition { coefficients, group_overlaps_sq })
}

/// HT(s) = sum over non-unit eigenspaces of |overlap|^2 / (1 - lambda).
pub fn interpolated_hitting_time(spec: &Spectrum, pibar: &Distribution) -> Result<f64> {
    let w = unit_sqrt(spec, pibar)?;
    let mut total = 0.0;
    for g in 0..spec.groups.len() {
        if spec.is_unit_group(g) {
            guard_unit_group(spec, g, &w)?;
            continue;
        }
        let overlap = spec.group_overlap_sq(g, &w);
        let lambda = spec.group_value(g);
        if 1.0 - lambda <= 0.0 {
            if overlap > 1e-14 {
                return Err(WalkError::DegenerateSpectrum(format!(
                    "non-stationary eigenvalue {lambda} at or above 1 carries overlap {overlap}"
                )));
            }
            continue;
        }
        total += overlap / (1.0 - lambda);
    }
    Ok(total)
}

/// Cotangent quantum hitting time from the discriminant spectrum alone.
///
/// For |w> = T(s) sqrt(pi-bar), each non-unit eigenvalue lambda = cos(theta)
/// of the discriminant contributes overlap^2 * cot^2(theta/2) to C^2: the
/// lifted pair phi_k-plus/minus each carry half the overlap and the same
/// angle, and cot^2(theta/2) = (1 + lambda)/(1 - lambda). Eigenvalue -1
/// (theta = pi) contributes zero through the same formula.
pub fn cotangent_qht_from_spectrum(spec: &Spectrum, pibar: &Distribution) -> Result<f64> {
    let w = unit_sqrt(spec, pibar)?;
    let mut total = 0.0;
    for g in 0..spec.groups.len() {
        if spec.is_unit_group(g) {
            guard_unit_group(spec, g, &w)?;
            continue;
        }
        let overlap = spec.group_overlap_sq(g, &w);
        let lambda = spec.group_value(g);
        if 1.0 - lambda <= 0.0 {
            if overlap > 1e-14 {
                return Err(WalkError::DegenerateSpectrum(format!(
                    "theta = 0 eigenvalue outside the stationary eigenspace carries overlap {overlap}"
                )));
            }
            continue;
        }
        total += overlap * (1.0 + lambda) / (1.0 - lambda);
    }
    Ok(total.max(0.0).sqrt())
}

fn unit_sqrt(spec: &Spectrum, pibar: &Distribution) -> Result<Vec<f64>> {
    if pibar.probs().len() != spec.n {
        return Err(WalkError::DimensionMismatch {
            expected: spec.n,
            found: pibar.probs().len(),
        });
    }
    Ok(pibar.sqrt())
}

/// A stationary eigenspace of dimension >= 2 means the walk has more than
/// one invariant direction, so the hitting-time sums are ill-defined when
/// the start vector actually touches it.
fn guard_unit_group(spec: &Spectrum, g: usize, w: &[f64]) -> Result<()> {
    let (a, b) = spec.groups[g];
    if b - a >= 2 && spec.group_overlap_sq(g, w) > 1e-8 {
        return Err(WalkError::DegenerateSpectrum(format!(
            "stationary eigenspace has dimension {}; walk is not absorbing toward a unique vertex",
            b - a
        )));
    }
    Ok(())
}
