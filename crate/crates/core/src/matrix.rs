//! Dense symmetric matrices, Cholesky factorization, and a cyclic Jacobi
//! eigensolver with definiteness classification and null-space extraction.
//!
//! Symmetry is structural: only the lower triangle is stored, so
//! `get(i, j) == get(j, i)` holds bit-exactly by construction.

use crate::error::{Error, Result};

/// Relative tolerance used to classify an eigenvalue as zero,
/// measured against `max(1, lambda_max)`.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Sweep cap for the cyclic Jacobi iteration.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius tolerance for Jacobi convergence, relative to
/// the Frobenius norm of the input.
const JACOBI_TOL_FACTOR: f64 = 1e-14;

/// Dense symmetric `p x p` matrix backed by a packed lower triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    /// Row-major packed lower triangle, length `p * (p + 1) / 2`.
    data: Vec<f64>,
}

impl SymMatrix {
    /// Zero matrix of dimension `p >= 1`.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        SymMatrix {
            dim,
            data: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds from a callback evaluated once per lower-triangle entry
    /// (`i >= j`); the upper triangle mirrors it.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(dim: usize, mut f: F) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds from full square rows, requiring exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
        }
        let mut max_asym: f64 = 0.0;
        for i in 0..dim {
            for j in 0..i {
                max_asym = max_asym.max((rows[i][j] - rows[j][i]).abs());
            }
        }
        if max_asym > 0.0 {
            return Err(Error::NotSymmetric {
                max_asymmetry: max_asym,
            });
        }
        Ok(SymMatrix::from_fn(dim, |i, j| rows[i][j]))
    }

    /// Assembles `sum_i scale_i * v_i v_i^T` from paired vectors and scales.
    pub fn from_scaled_outer(dim: usize, vectors: &[Vec<f64>], scales: &[f64]) -> Self {
        assert_eq!(vectors.len(), scales.len());
        SymMatrix::from_fn(dim, |i, j| {
            vectors
                .iter()
                .zip(scales)
                .map(|(v, s)| s * v[i] * v[j])
                .sum()
        })
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        r * (r + 1) / 2 + c
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.index(i, j)]
    }

    /// Sets entry `(i, j)` and, structurally, `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let idx = self.index(i, j);
        self.data[idx] = value;
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// `tr(A B)` for symmetric `A`, `B`: the entrywise product sum.
    pub fn trace_product(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "trace_product dimension mismatch");
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += self.get(i, j) * other.get(i, j);
            }
        }
        acc
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.get(i, j);
                acc += v * v;
            }
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Attempts the LL^T factorization; `None` unless every pivot is
    /// strictly positive and finite.
    pub fn cholesky(&self) -> Option<CholeskyFactor> {
        let p = self.dim;
        let mut lower = vec![0.0; p * (p + 1) / 2];
        let at = |l: &[f64], i: usize, j: usize| l[i * (i + 1) / 2 + j];
        for i in 0..p {
            for j in 0..=i {
                let mut sum = self.get(i, j);
                for k in 0..j {
                    sum -= at(&lower, i, k) * at(&lower, j, k);
                }
                if i == j {
                    if !(sum > 0.0) || !sum.is_finite() {
                        return None;
                    }
                    lower[i * (i + 1) / 2 + j] = sum.sqrt();
                } else {
                    lower[i * (i + 1) / 2 + j] = sum / at(&lower, j, j);
                }
            }
        }
        Some(CholeskyFactor { dim: p, lower })
    }

    /// Fast positive-definiteness test via Cholesky pivots.
    pub fn is_positive_definite(&self) -> bool {
        self.cholesky().is_some()
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L L^T`.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    dim: usize,
    /// Packed lower triangle of `L`.
    lower: Vec<f64>,
}

impl CholeskyFactor {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.lower[i * (i + 1) / 2 + j]
    }

    /// `log det A = 2 sum_i log L_ii`.
    pub fn log_det(&self) -> f64 {
        (0..self.dim).map(|i| self.at(i, i).ln()).sum::<f64>() * 2.0
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.dim);
        let p = self.dim;
        let mut y = vec![0.0; p];
        for i in 0..p {
            let mut sum = b[i];
            for k in 0..i {
                sum -= self.at(i, k) * y[k];
            }
            y[i] = sum / self.at(i, i);
        }
        let mut x = vec![0.0; p];
        for i in (0..p).rev() {
            let mut sum = y[i];
            for k in (i + 1)..p {
                sum -= self.at(k, i) * x[k];
            }
            x[i] = sum / self.at(i, i);
        }
        x
    }

    /// Dense symmetric inverse, one solve per basis vector.
    pub fn inverse(&self) -> SymMatrix {
        let p = self.dim;
        let mut columns = Vec::with_capacity(p);
        for j in 0..p {
            let mut e = vec![0.0; p];
            e[j] = 1.0;
            columns.push(self.solve(&e));
        }
        // The exact solves are symmetric up to rounding; store the average
        // so the result is structurally symmetric.
        SymMatrix::from_fn(p, |i, j| 0.5 * (columns[j][i] + columns[i][j]))
    }
}

/// Eigenvalues (descending) paired with orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Sorted descending.
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V diag(values) V^T`.
    pub fn reconstruct(&self) -> SymMatrix {
        SymMatrix::from_scaled_outer(self.dim(), &self.vectors, &self.values)
    }

    /// Largest entry of `|V^T V - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let p = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..p {
            for b in a..p {
                let dot: f64 = (0..p).map(|k| self.vectors[a][k] * self.vectors[b][k]).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Definiteness of a symmetric matrix at a given zero tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefinitenessTag {
    PositiveDefinite,
    /// Positive semidefinite with at least one zero eigenvalue.
    OnlyPositiveSemidefinite,
    Indefinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefinitenessClass {
    pub tag: DefinitenessTag,
    pub zero_eigen_count: usize,
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Deterministic for a fixed input: sweeps visit the upper triangle in
/// row-major order and each eigenvector is signed so its
/// largest-magnitude component is positive. Eigenvalues are returned in
/// descending order.
pub fn eigendecompose(a: &SymMatrix) -> Result<EigenDecomposition> {
    let p = a.dim();
    let mut m: Vec<Vec<f64>> = a.to_rows();
    let mut v: Vec<Vec<f64>> = (0..p)
        .map(|i| (0..p).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let frob = a.frobenius_norm();
    let tol = JACOBI_TOL_FACTOR * frob;

    let off_frobenius = |m: &Vec<Vec<f64>>| -> f64 {
        let mut acc = 0.0;
        for i in 0..p {
            for j in (i + 1)..p {
                acc += 2.0 * m[i][j] * m[i][j];
            }
        }
        acc.sqrt()
    };

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_frobenius(&m) <= tol {
            converged = true;
            break;
        }
        for r in 0..p {
            for c in (r + 1)..p {
                let apq = m[r][c];
                if apq == 0.0 {
                    continue;
                }
                let app = m[r][r];
                let aqq = m[c][c];
                // Stable rotation angle (Numerical Recipes convention).
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.abs() > 1e12 {
                    // Avoid overflow in theta^2; the limit of the formula.
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;
                let tau = sin / (1.0 + cos);

                m[r][r] = app - t * apq;
                m[c][c] = aqq + t * apq;
                m[r][c] = 0.0;
                m[c][r] = 0.0;
                for k in 0..p {
                    if k != r && k != c {
                        let akp = m[k][r];
                        let akq = m[k][c];
                        let new_kp = akp - sin * (akq + tau * akp);
                        let new_kq = akq + sin * (akp - tau * akq);
                        m[k][r] = new_kp;
                        m[r][k] = new_kp;
                        m[k][c] = new_kq;
                        m[c][k] = new_kq;
                    }
                }
                for k in 0..p {
                    let vkp = v[k][r];
                    let vkq = v[k][c];
                    v[k][r] = vkp - sin * (vkq + tau * vkp);
                    v[k][c] = vkq + sin * (vkp - tau * vkq);
                }
            }
        }
    }
    if !converged && off_frobenius(&m) > tol {
        return Err(Error::EigenNoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&i, &j| {
        m[j][j]
            .partial_cmp(&m[i][i])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });

    let mut values = Vec::with_capacity(p);
    let mut vectors = Vec::with_capacity(p);
    for &idx in &order {
        values.push(m[idx][idx]);
        let mut vec: Vec<f64> = (0..p).map(|k| v[k][idx]).collect();
        // Sign convention: largest-magnitude component positive.
        let mut arg = 0;
        for (k, comp) in vec.iter().enumerate() {
            if comp.abs() > vec[arg].abs() {
                arg = k;
            }
        }
        if vec[arg] < 0.0 {
            for comp in &mut vec {
                *comp = -*comp;
            }
        }
        vectors.push(vec);
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Counts near-zero eigenvalues (`|lambda| <= rel_tol * max(1, lambda_max)`)
/// and classifies definiteness accordingly.
pub fn classify_definiteness(eigen: &EigenDecomposition, rel_tol: f64) -> DefinitenessClass {
    assert!(rel_tol > 0.0, "rel_tol must be positive");
    let lambda_max = eigen.values.first().copied().unwrap_or(0.0);
    let threshold = rel_tol * lambda_max.max(1.0);
    let mut zero_count = 0;
    let mut indefinite = false;
    for &v in &eigen.values {
        if v.abs() <= threshold {
            zero_count += 1;
        } else if v < 0.0 {
            indefinite = true;
        }
    }
    let tag = if indefinite {
        DefinitenessTag::Indefinite
    } else if zero_count > 0 {
        DefinitenessTag::OnlyPositiveSemidefinite
    } else {
        DefinitenessTag::PositiveDefinite
    };
    DefinitenessClass {
        tag,
        zero_eigen_count: zero_count,
    }
}

/// Eigenvectors whose eigenvalues classify as zero. Empty for a positive
/// definite input; indefinite input is rejected.
pub fn null_space(eigen: &EigenDecomposition, rel_tol: f64) -> Result<Vec<Vec<f64>>> {
    let class = classify_definiteness(eigen, rel_tol);
    if class.tag == DefinitenessTag::Indefinite {
        let worst = eigen.values.last().copied().unwrap_or(f64::NAN);
        return Err(Error::IndefiniteInput { eigenvalue: worst });
    }
    let lambda_max = eigen.values.first().copied().unwrap_or(0.0);
    let threshold = rel_tol * lambda_max.max(1.0);
    Ok(eigen
        .values
        .iter()
        .zip(&eigen.vectors)
        .filter(|(v, _)| v.abs() <= threshold)
        .map(|(_, vec)| vec.clone())
        .collect())
}
