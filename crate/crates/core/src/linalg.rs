//! Small dense complex matrices, totally symmetric third-order tensors, and the
//! WDVV commutator residual.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Index, IndexMut, Mul};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative singularity threshold for [`invert`].
pub const SINGULAR_RTOL: f64 = 1e-12;

/// Square `n×n` complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length as the row count.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Induced ∞-norm (largest absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn max_row_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// LU factorisation with partial pivoting, `P·M = L·U` packed in one matrix.
struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    det: Complex64,
}

fn lu_factor(m: &ComplexMatrix) -> Lu {
    let n = m.n;
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut det = ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| lu[(a, col)].norm().total_cmp(&lu[(b, col)].norm()))
            .unwrap_or(col);
        if pivot != col {
            for j in 0..n {
                lu.data.swap(col * n + j, pivot * n + j);
            }
            perm.swap(col, pivot);
            det = -det;
        }
        let p = lu[(col, col)];
        det *= p;
        if p == ZERO {
            continue;
        }
        for r in (col + 1)..n {
            let factor = lu[(r, col)] / p;
            lu[(r, col)] = factor;
            for j in (col + 1)..n {
                let u = lu[(col, j)];
                lu[(r, j)] -= factor * u;
            }
        }
    }
    Lu { lu, perm, det }
}

/// Determinant by LU factorisation.
pub fn determinant(m: &ComplexMatrix) -> Complex64 {
    lu_factor(m).det
}

/// Inverse and determinant by Gaussian elimination with partial pivoting.
///
/// Fails with [`Error::SingularMatrix`] unless `|det M| > 1e−12·(max row norm)ⁿ`.
pub fn invert(m: &ComplexMatrix) -> Result<(ComplexMatrix, Complex64)> {
    let n = m.n;
    let Lu { lu, perm, det } = lu_factor(m);
    let bound = SINGULAR_RTOL * m.max_row_norm().powi(n as i32);
    if det.norm().is_nan() || det.norm() <= bound {
        return Err(Error::SingularMatrix {
            det: det.norm(),
            bound,
        });
    }
    let mut inv = ComplexMatrix::zeros(n);
    let mut col = vec![ZERO; n];
    for j in 0..n {
        // solve L·U·x = P·e_j
        for (i, slot) in col.iter_mut().enumerate() {
            *slot = if perm[i] == j { ONE } else { ZERO };
        }
        for i in 0..n {
            let mut s = col[i];
            for k in 0..i {
                s -= lu[(i, k)] * col[k];
            }
            col[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = col[i];
            for k in (i + 1)..n {
                s -= lu[(i, k)] * col[k];
            }
            col[i] = s / lu[(i, i)];
        }
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    Ok((inv, det))
}

/// Totally symmetric `n×n×n` complex tensor of third derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct ThirdTensor {
    n: usize,
    data: Vec<Complex64>,
}

impl ThirdTensor {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    /// Writes `v` into every permutation of `(i, j, k)`.
    pub fn set_sym(&mut self, i: usize, j: usize, k: usize, v: Complex64) {
        for (a, b, c) in permutations(i, j, k) {
            let o = self.offset(a, b, c);
            self.data[o] = v;
        }
    }

    /// Overwrites a single entry, leaving its permutations untouched.
    pub fn set_entry(&mut self, (i, j, k): (usize, usize, usize), v: Complex64) {
        let o = self.offset(i, j, k);
        self.data[o] = v;
    }

    /// Adds `v` to every distinct permutation of `(i, j, k)`.
    pub fn add_sym(&mut self, i: usize, j: usize, k: usize, v: Complex64) {
        let mut seen: Vec<(usize, usize, usize)> = Vec::with_capacity(6);
        for p in permutations(i, j, k) {
            if !seen.contains(&p) {
                seen.push(p);
                let o = self.offset(p.0, p.1, p.2);
                self.data[o] += v;
            }
        }
    }

    /// Adds `w·ℓ⊗ℓ⊗ℓ`.
    pub fn add_rank_one(&mut self, w: Complex64, covector: &[Complex64]) {
        let n = self.n;
        for i in 0..n {
            let wi = w * covector[i];
            if wi == ZERO {
                continue;
            }
            for (j, &cj) in covector.iter().enumerate() {
                let wij = wi * cj;
                if wij == ZERO {
                    continue;
                }
                for (k, &ck) in covector.iter().enumerate() {
                    let o = self.offset(i, j, k);
                    self.data[o] += wij * ck;
                }
            }
        }
    }

    /// The matrix `F_i` with entries `F_{irs}`.
    pub fn slice(&self, i: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |r, s| self[(i, r, s)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entry of `|self − other|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "tensor dimensions differ");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max|self − other| / max|other|`, or the absolute difference when `other` vanishes.
    pub fn relative_diff(&self, other: &Self) -> f64 {
        let scale = other.max_abs();
        let d = self.max_abs_diff(other);
        if scale > 0.0 {
            d / scale
        } else {
            d
        }
    }

    /// Largest deviation from total symmetry.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self[(i, j, k)];
                    for p in permutations(i, j, k) {
                        worst = worst.max((v - self[p]).norm());
                    }
                }
            }
        }
        worst
    }

    /// Pullback through a linear change of coordinates `y = L·x`:
    /// `T'_{abc} = Σ T_{pqr} L_{pa} L_{qb} L_{rc}`.
    pub fn pullback(&self, jac: &ComplexMatrix) -> Self {
        let n = self.n;
        assert_eq!(jac.dim(), n, "jacobian dimension differs");
        // contract one index at a time: O(n⁴)
        let mut t1 = Self::zeros(n);
        for a in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let s: Complex64 = (0..n).map(|p| self[(p, q, r)] * jac[(p, a)]).sum();
                    let o = t1.offset(a, q, r);
                    t1.data[o] = s;
                }
            }
        }
        let mut t2 = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for r in 0..n {
                    let s: Complex64 = (0..n).map(|q| t1[(a, q, r)] * jac[(q, b)]).sum();
                    let o = t2.offset(a, b, r);
                    t2.data[o] = s;
                }
            }
        }
        let mut t3 = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let s: Complex64 = (0..n).map(|r| t2[(a, b, r)] * jac[(r, c)]).sum();
                    let o = t3.offset(a, b, c);
                    t3.data[o] = s;
                }
            }
        }
        t3
    }

    /// Contracts the last index with a matrix: `Σ_l T_{abl} J_{lk}`.
    pub fn contract_last(&self, jac: &ComplexMatrix) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    let s: Complex64 = (0..n).map(|l| self[(a, b, l)] * jac[(l, k)]).sum();
                    let o = out.offset(a, b, k);
                    out.data[o] = s;
                }
            }
        }
        out
    }

    /// Linear combination `Σ_k q_k F_k`.
    pub fn combine(&self, weights: &[Complex64]) -> ComplexMatrix {
        let n = self.n;
        ComplexMatrix::from_fn(n, |r, s| {
            (0..n).map(|k| weights[k] * self[(k, r, s)]).sum()
        })
    }

    /// Relabels every index by `perm`: `T'_{p(i)p(j)p(k)} = T_{ijk}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let o = out.offset(perm[i], perm[j], perm[k]);
                    out.data[o] = self[(i, j, k)];
                }
            }
        }
        out
    }
}

impl Index<(usize, usize, usize)> for ThirdTensor {
    type Output = Complex64;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &Complex64 {
        &self.data[self.offset(i, j, k)]
    }
}

fn permutations(i: usize, j: usize, k: usize) -> [(usize, usize, usize); 6] {
    [
        (i, j, k),
        (i, k, j),
        (j, i, k),
        (j, k, i),
        (k, i, j),
        (k, j, i),
    ]
}

/// Relative residual of `F_i·G·F_j = F_j·G·F_i` over all pairs `i < j`.
///
/// The largest entry of any commutator is divided by
/// `max_i ‖F_i G‖_∞ · max_j ‖F_j‖_∞`, which bounds every entry of `F_i G F_j`.
pub fn commutator_residual(tensor: &ThirdTensor, middle: &ComplexMatrix) -> Result<f64> {
    let n = tensor.dim();
    if middle.dim() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            found: middle.dim(),
        });
    }
    let slices: Vec<ComplexMatrix> = (0..n).map(|i| tensor.slice(i)).collect();
    let left: Vec<ComplexMatrix> = slices.iter().map(|s| s * middle).collect();
    let scale = left.iter().map(ComplexMatrix::inf_norm).fold(0.0, f64::max)
        * slices.iter().map(ComplexMatrix::inf_norm).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let ab = &left[i] * &slices[j];
            let ba = &left[j] * &slices[i];
            worst = worst.max(ab.sub(&ba).max_abs());
        }
    }
    Ok(worst / scale)
}

/// Relative WDVV residual `F_i η⁻¹ F_j − F_j η⁻¹ F_i`.
pub fn wdvv_residual(tensor: &ThirdTensor, eta_inv: &ComplexMatrix) -> Result<f64> {
    commutator_residual(tensor, eta_inv)
}
