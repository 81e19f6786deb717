//! Adjacency spectra via cyclic Jacobi rotations, spectral moments, the
//! Estrada index and graph energy.
//!
//! [`estrada_index_series`] is a second, eigenvalue-free route to the Estrada
//! index through traces of matrix powers. It exists to cross-check the
//! eigensolver and must not share code with it.

use alloc::vec::Vec;

use crate::error::SpectralError;
use crate::graph::Graph;

/// Relative off-diagonal threshold for Jacobi convergence.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    residual: f64,
}

impl Spectrum {
    /// `λ_1 ≥ … ≥ λ_n`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Off-diagonal Frobenius norm left when the iteration stopped.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest eigenvalue `λ_1`.
    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn smallest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `λ_i = -λ_{n+1-i}` for all `i`, within `tol`.
    pub fn is_symmetric_about_zero(&self, tol: f64) -> bool {
        self.values
            .iter()
            .zip(self.values.iter().rev())
            .all(|(a, b)| libm::fabs(a + b) <= tol)
    }
}

fn frobenius(a: &[f64]) -> f64 {
    libm::sqrt(a.iter().map(|x| x * x).sum())
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    libm::sqrt(s)
}

/// Eigenvalues of the symmetric row-major `n x n` matrix `a` by cyclic
/// Jacobi sweeps. Stops once the off-diagonal Frobenius norm drops below
/// `1e-12 * max(1, ‖A‖_F)`.
pub fn eigen_symmetric(n: usize, a: &[f64]) -> Result<Spectrum, SpectralError> {
    if n == 0 {
        return Err(SpectralError::Degenerate);
    }
    if a.len() != n * n {
        return Err(SpectralError::Shape { n, len: a.len() });
    }
    let mut a = a.to_vec();
    let target = JACOBI_TOLERANCE * frobenius(&a).max(1.0);
    let mut off = off_diagonal_norm(&a, n);
    let mut sweeps = 0;
    while off >= target {
        if sweeps == MAX_SWEEPS {
            return Err(SpectralError::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                // smaller root of t^2 + 2 t theta - 1 = 0
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::hypot(theta, 1.0))
                } else {
                    -1.0 / (-theta + libm::hypot(theta, 1.0))
                };
                let c = 1.0 / libm::hypot(t, 1.0);
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a, n);
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(Spectrum {
        values,
        residual: off,
    })
}

/// Adjacency spectrum of `g`.
pub fn spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    eigen_symmetric(g.n(), &g.adjacency_matrix())
}

/// `M_k = Σ λ_i^k`.
pub fn spectral_moment(s: &Spectrum, k: u32) -> f64 {
    s.values.iter().map(|&x| libm::pow(x, k as f64)).sum()
}

/// `EE = Σ exp(λ_i)`, accumulated from the smallest term upward.
pub fn estrada_index(s: &Spectrum) -> f64 {
    s.values.iter().rev().map(|&x| libm::exp(x)).sum()
}

/// `E = Σ |λ_i|`.
pub fn graph_energy(s: &Spectrum) -> f64 {
    s.values.iter().map(|&x| libm::fabs(x)).sum()
}

/// Estrada index as the moment series `Σ_k tr(A^k) / k!`, truncated once
/// `n ρ^K / K! / (1 - ρ/(K+1))` falls below `tol`, with `ρ = Δ` bounding the
/// spectral radius. Works on `A^k / k!` directly so terms stay bounded.
pub fn estrada_index_series(g: &Graph, tol: f64) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let rho = (0..n).map(|v| g.degree(v)).max().unwrap_or(0) as f64;
    if rho == 0.0 {
        return n as f64;
    }
    let neighbors: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    // term = A^k / k!, starting from the identity
    let mut term = alloc::vec![0.0f64; n * n];
    for i in 0..n {
        term[i * n + i] = 1.0;
    }
    let mut next = alloc::vec![0.0f64; n * n];
    let mut sum = n as f64;
    // scalar n ρ^k / k!
    let mut envelope = n as f64;
    let mut k = 0usize;
    loop {
        k += 1;
        let kf = k as f64;
        for i in 0..n {
            let row = &term[i * n..(i + 1) * n];
            for l in 0..n {
                let mut acc = 0.0;
                for &j in &neighbors[l] {
                    acc += row[j];
                }
                next[i * n + l] = acc / kf;
            }
        }
        core::mem::swap(&mut term, &mut next);
        sum += (0..n).map(|i| term[i * n + i]).sum::<f64>();
        envelope *= rho / kf;
        // tail from k+1 on
        let ratio = rho / (kf + 2.0);
        if ratio < 1.0 {
            let tail = envelope * rho / (kf + 1.0) / (1.0 - ratio);
            if tail < tol {
                return sum;
            }
        }
    }
}
