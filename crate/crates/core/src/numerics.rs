//! Dense complex matrix kernels.
//!
//! Everything here is deterministic and allocation-light: Householder
//! tridiagonalization followed by implicit QL for Hermitian spectra,
//! Householder QR for least squares, and one-sided Jacobi for the small
//! singular values that the Gram route cannot resolve.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, C64};

/// Componentwise tolerance for accepting a matrix as Hermitian, relative to
/// `max(1, max |m_ij|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Columns with `σ_min ≤ RANK_TOL · σ_max` are treated as rank deficient.
pub const RANK_TOL: f64 = 1e-13;

const JACOBI_TOL: f64 = 1e-15;
const JACOBI_MAX_SWEEPS: usize = 80;
const QL_MAX_ITER: usize = 100;

/// Row-major dense complex matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                what: "matrix data",
                expected: rows * cols,
                found: data.len(),
            });
        }
        if !data.iter().all(|z| z.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = C64::new(d, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// Builds a matrix from real row slices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension {
                    what: "row length",
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                what: "matmul inner dimension",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.cols {
            return Err(Error::Dimension {
                what: "matrix-vector product",
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `M* x`.
    pub fn adjoint_mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.rows {
            return Err(Error::Dimension {
                what: "adjoint matrix-vector product",
                expected: self.rows,
                found: x.len(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.cols];
        for (i, &xi) in x.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a.conj() * xi;
            }
        }
        Ok(out)
    }

    /// `M* M`, exactly Hermitian.
    pub fn gram(&self) -> Self {
        self.gram_of_leading_rows(self.rows)
    }

    /// Gram matrix of the first `rows` rows, `(P_rows M)* (P_rows M)`.
    pub fn gram_of_leading_rows(&self, rows: usize) -> Self {
        let n = self.cols;
        let mut g = Self::zeros(n, n);
        for i in 0..rows.min(self.rows) {
            let r = self.row(i);
            for j in 0..n {
                let a = r[j].conj();
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let g_row = &mut g.data[j * n + j..(j + 1) * n];
                for (gjk, &rk) in g_row.iter_mut().zip(&r[j..]) {
                    *gjk += a * rk;
                }
            }
        }
        g.mirror_upper();
        g
    }

    /// Copies the conjugated upper triangle into the lower one.
    fn mirror_upper(&mut self) {
        let n = self.cols;
        for j in 0..n {
            self.data[j * n + j].im = 0.0;
            for k in j + 1..n {
                self.data[k * n + j] = self.data[j * n + k].conj();
            }
        }
    }

    /// `M M*`.
    pub fn outer_gram(&self) -> Self {
        let m = self.rows;
        let mut g = Self::zeros(m, m);
        for i in 0..m {
            for k in i..m {
                g.data[i * m + k] = self
                    .row(i)
                    .iter()
                    .zip(self.row(k))
                    .map(|(a, b)| a * b.conj())
                    .sum();
            }
        }
        g.mirror_upper();
        g
    }

    pub fn sub_block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Result<Self> {
        if row0 + rows > self.rows || col0 + cols > self.cols {
            return Err(Error::Dimension {
                what: "sub-block extent",
                expected: self.rows.min(self.cols),
                found: (row0 + rows).max(col0 + cols),
            });
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in row0..row0 + rows {
            data.extend_from_slice(&self.data[i * self.cols + col0..i * self.cols + col0 + cols]);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

/// Complex vector with finite entries.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ComplexVector(Vec<C64>);

impl ComplexVector {
    pub fn new(values: Vec<C64>) -> Result<Self> {
        if values.iter().all(|z| z.is_finite()) {
            Ok(Self(values))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![C64::new(0.0, 0.0); len])
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, C64> {
        self.0.iter()
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.0)
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self(self.0.iter().map(|&z| z * c).collect())
    }
}

impl Index<usize> for ComplexVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

pub(crate) fn norm2(v: &[C64]) -> f64 {
    // scaled to avoid overflow for large entries
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let s: f64 = v.iter().map(|z| (z / scale).norm_sqr()).sum();
    scale * s.sqrt()
}

fn dot_conj(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Eigenvalues of the Hermitian part of `m`, in descending order.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Dimension {
            what: "eigenvalue input (must be square)",
            expected: m.rows,
            found: m.cols,
        });
    }
    let n = m.rows;
    let tol = HERMITIAN_TOL * m.max_abs().max(1.0);
    let mut deviation: f64 = 0.0;
    let mut a = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            let x = m.data[i * n + j];
            let y = m.data[j * n + i].conj();
            deviation = deviation.max((x - y).norm());
            a[i * n + j] = (x + y) * 0.5;
        }
    }
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let (mut d, mut e) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(|x, y| y.total_cmp(x));
    Ok(d)
}

/// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
/// form. Returns the diagonal and the moduli of the sub-diagonal; `e[k]`
/// couples `d[k]` and `d[k + 1]`, `e[n - 1] = 0`.
fn tridiagonalize(a: &mut [C64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![C64::new(0.0, 0.0); n];
    let mut p = vec![C64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        d[k] = a[k * n + k].re;
        let len = n - k - 1;
        let x = |i: usize| a[(k + 1 + i) * n + k];
        let xs: Vec<C64> = (0..len).map(x).collect();
        let xnorm = norm2(&xs);
        if xnorm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = xs[0];
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let v = &mut v[..len];
        v.copy_from_slice(&xs);
        v[0] -= alpha;
        let vnorm = norm2(v);
        for vi in v.iter_mut() {
            *vi /= vnorm;
        }
        e[k] = xnorm;

        // trailing block update: A' = A - 2 (v w* + w v*), w = A v - (v* A v) v
        let off = k + 1;
        let p = &mut p[..len];
        for i in 0..len {
            let row = &a[(off + i) * n + off..(off + i) * n + n];
            p[i] = row.iter().zip(v.iter()).map(|(aij, vj)| aij * vj).sum();
        }
        let kappa = dot_conj(v, p).re;
        for i in 0..len {
            p[i] -= v[i] * kappa;
        }
        for i in 0..len {
            let vi = v[i];
            let wi = p[i];
            let row = &mut a[(off + i) * n + off..(off + i) * n + n];
            for j in 0..len {
                row[j] -= (vi * p[j].conj() + wi * v[j].conj()) * 2.0;
            }
        }
    }
    if n >= 2 {
        d[n - 2] = a[(n - 2) * n + n - 2].re;
        d[n - 1] = a[(n - 1) * n + n - 1].re;
        e[n - 2] = a[(n - 1) * n + n - 2].norm();
    } else if n == 1 {
        d[0] = a[0].re;
    }
    (d, e)
}

/// Eigenvalues of a real symmetric tridiagonal matrix by implicit QL with
/// Wilkinson-type shifts; results overwrite `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::NoConvergence("tridiagonal QL"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Householder QR of a tall matrix (`rows ≥ cols`).
#[derive(Clone, Debug)]
pub struct QrFactor {
    rows: usize,
    cols: usize,
    /// Unit reflector for column k acting on rows k.., empty when skipped.
    reflectors: Vec<Vec<C64>>,
    /// Columns of R, column k has k + 1 meaningful entries.
    r_cols: Vec<Vec<C64>>,
}

impl QrFactor {
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        let (rows, cols) = (m.rows, m.cols);
        if rows < cols {
            return Err(Error::Dimension {
                what: "QR input (rows must be >= cols)",
                expected: cols,
                found: rows,
            });
        }
        let mut work: Vec<Vec<C64>> = (0..cols).map(|j| m.column(j)).collect();
        let mut reflectors = Vec::with_capacity(cols);
        for k in 0..cols {
            let (head, tail) = work.split_at_mut(k + 1);
            let col = &mut head[k][k..];
            let xnorm = norm2(col);
            if xnorm == 0.0 {
                reflectors.push(Vec::new());
                continue;
            }
            let x0 = col[0];
            let phase = if x0.norm() == 0.0 {
                C64::new(1.0, 0.0)
            } else {
                x0 / x0.norm()
            };
            let alpha = -phase * xnorm;
            let mut v = col.to_vec();
            v[0] -= alpha;
            let vnorm = norm2(&v);
            for vi in v.iter_mut() {
                *vi /= vnorm;
            }
            col[0] = alpha;
            for c in col[1..].iter_mut() {
                *c = C64::new(0.0, 0.0);
            }
            for other in tail.iter_mut() {
                reflect(&v, &mut other[k..]);
            }
            reflectors.push(v);
        }
        let r_cols = work
            .into_iter()
            .enumerate()
            .map(|(k, mut c)| {
                c.truncate(k + 1);
                c
            })
            .collect();
        Ok(Self {
            rows,
            cols,
            reflectors,
            r_cols,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Overwrites `b` (length `rows`) with `Q* b`.
    pub fn apply_adjoint_q(&self, b: &mut [C64]) {
        debug_assert_eq!(b.len(), self.rows);
        for (k, v) in self.reflectors.iter().enumerate() {
            if !v.is_empty() {
                reflect(v, &mut b[k..]);
            }
        }
    }

    /// Upper-triangular factor as a `cols × cols` matrix.
    pub fn r(&self) -> ComplexMatrix {
        let n = self.cols;
        let mut out = ComplexMatrix::zeros(n, n);
        for (j, c) in self.r_cols.iter().enumerate() {
            for (i, &z) in c.iter().enumerate() {
                out.data[i * n + j] = z;
            }
        }
        out
    }

    /// Solves `R x = y[..cols]` by back substitution.
    pub fn solve_r(&self, y: &[C64]) -> Vec<C64> {
        let n = self.cols;
        let mut x = y[..n].to_vec();
        for k in (0..n).rev() {
            x[k] /= self.r_cols[k][k];
            let xk = x[k];
            for (xi, rik) in x[..k].iter_mut().zip(&self.r_cols[k][..k]) {
                *xi -= rik * xk;
            }
        }
        x
    }

    /// Singular values of R (equal to those of the factored matrix), descending.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let n = self.cols;
        let cols = self
            .r_cols
            .iter()
            .map(|c| {
                let mut full = c.clone();
                full.resize(n, C64::new(0.0, 0.0));
                full
            })
            .collect();
        jacobi_singular_values(cols)
    }

    /// `(σ_min, σ_max)` of R. Uses the spectrum of `R* R` when it clearly
    /// separates from the rank tolerance, the Jacobi values otherwise.
    fn singular_value_extremes(&self) -> Result<(f64, f64)> {
        let n = self.cols;
        if n == 0 {
            return Ok((0.0, 0.0));
        }
        let ev = hermitian_eigenvalues(&self.r().gram())?;
        let smax = ev[0].max(0.0).sqrt();
        let smin = ev[n - 1].max(0.0).sqrt();
        if smax > 0.0 && smin > 1e-5 * smax {
            return Ok((smin, smax));
        }
        let sv = self.singular_values()?;
        Ok((sv[n - 1], sv[0]))
    }
}

fn reflect(v: &[C64], x: &mut [C64]) {
    let s = dot_conj(v, x) * 2.0;
    for (xi, vi) in x.iter_mut().zip(v) {
        *xi -= vi * s;
    }
}

/// One-sided (Hestenes) Jacobi on a set of columns; returns singular values
/// in descending order.
fn jacobi_singular_values(mut cols: Vec<Vec<C64>>) -> Result<Vec<f64>> {
    let k = cols.len();
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let sq: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum()).collect();
        let mut sq = sq;
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let (alpha, beta) = (sq[p], sq[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot_conj(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= JACOBI_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 { 1.0 } else { -1.0 } / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let cp = &mut left[p];
                let cq = &mut right[0];
                for (ap, aq) in cp.iter_mut().zip(cq.iter_mut()) {
                    let aq_t = *aq * phase.conj();
                    let new_p = *ap * c - aq_t * s;
                    let new_q = *ap * s + aq_t * c;
                    *ap = new_p;
                    *aq = new_q;
                }
                sq[p] = alpha - t * g;
                sq[q] = beta + t * g;
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("one-sided Jacobi SVD"));
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// All singular values of `m`, descending (`min(rows, cols)` of them).
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.is_empty() {
        return Ok(Vec::new());
    }
    let tall;
    let a = if m.rows >= m.cols {
        m
    } else {
        tall = m.adjoint();
        &tall
    };
    if a.rows == a.cols {
        jacobi_singular_values((0..a.cols).map(|j| a.column(j)).collect())
    } else {
        QrFactor::new(a)?.singular_values()
    }
}

/// Spectral norm, `sqrt(λ_max(M* M))`.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    if m.is_empty() || m.max_abs() == 0.0 {
        return 0.0;
    }
    let g = if m.rows >= m.cols { m.gram() } else { m.outer_gram() };
    // a Gram matrix is Hermitian by construction
    let ev = hermitian_eigenvalues(&g).expect("Gram matrix is Hermitian");
    ev[0].max(0.0).sqrt()
}

/// Smallest singular value. For square invertible `m`, `‖m⁻¹‖ = 1 / result`.
pub fn min_singular_value(m: &ComplexMatrix) -> f64 {
    singular_values(m)
        .ok()
        .and_then(|sv| sv.last().copied())
        .unwrap_or(0.0)
}

/// Least squares solution of `M x ≈ b` via Householder QR.
pub fn least_squares_solve(m: &ComplexMatrix, b: &ComplexVector) -> Result<ComplexVector> {
    if b.len() != m.rows {
        return Err(Error::Dimension {
            what: "least squares right-hand side",
            expected: m.rows,
            found: b.len(),
        });
    }
    let qr = QrFactor::new(m)?;
    let (smin, smax) = qr.singular_value_extremes()?;
    if smax == 0.0 || smin <= RANK_TOL * smax {
        return Err(Error::Singular {
            sigma_min: smin,
            sigma_max: smax,
        });
    }
    let mut y = b.as_slice().to_vec();
    qr.apply_adjoint_q(&mut y);
    ComplexVector::new(qr.solve_r(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn eigenvalues_of_identity_and_diagonal() {
        assert_eq!(hermitian_eigenvalues(&ComplexMatrix::identity(2)).unwrap(), [1.0, 1.0]);
        let ev = hermitian_eigenvalues(&ComplexMatrix::from_diagonal(&[1.0, 3.0])).unwrap();
        assert_eq!(ev, [3.0, 1.0]);
    }

    #[test]
    fn eigenvalues_of_complex_hermitian_2x2() {
        // (2 - λ)² - 1 = 0
        let m = ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_close(ev[0], 3.0, 1e-14);
        assert_close(ev[1], 1.0, 1e-14);
    }

    #[test]
    fn eigenvalue_errors() {
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eigenvalues(&rect), Err(Error::Dimension { .. })));
        let m = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigenvalues_match_characteristic_roots_3x3() {
        // real symmetric tridiagonal [2 -1 0; -1 2 -1; 0 -1 2] has eigenvalues 2 - √2, 2, 2 + √2
        let m = ComplexMatrix::from_real_rows(&[&[2.0, -1.0, 0.0], &[-1.0, 2.0, -1.0], &[0.0, -1.0, 2.0]]).unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        let s = 2f64.sqrt();
        assert_close(ev[0], 2.0 + s, 1e-13);
        assert_close(ev[1], 2.0, 1e-13);
        assert_close(ev[2], 2.0 - s, 1e-13);
    }

    #[test]
    fn operator_norm_examples() {
        assert_eq!(operator_norm(&ComplexMatrix::zeros(3, 2)), 0.0);
        assert_close(operator_norm(&ComplexMatrix::identity(4)), 1.0, 1e-14);
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        assert_close(operator_norm(&m), 2.0, 1e-14);
    }

    #[test]
    fn min_singular_value_examples() {
        assert_close(min_singular_value(&ComplexMatrix::identity(3)), 1.0, 1e-14);
        assert_close(min_singular_value(&ComplexMatrix::from_diagonal(&[2.0, 0.5])), 0.5, 1e-14);
        let col = ComplexMatrix::from_real_rows(&[&[3.0], &[4.0]]).unwrap();
        assert_close(min_singular_value(&col), 5.0, 1e-14);
        // wide input goes through the adjoint
        assert_close(min_singular_value(&col.adjoint()), 5.0, 1e-14);
    }

    #[test]
    fn least_squares_examples() {
        let b = ComplexVector::new(vec![c(1.0, 2.0), c(-3.0, 0.5)]).unwrap();
        let x = least_squares_solve(&ComplexMatrix::identity(2), &b).unwrap();
        for (xi, bi) in x.iter().zip(b.iter()) {
            assert!((xi - bi).norm() < 1e-15);
        }

        let m = ComplexMatrix::from_real_rows(&[&[1.0], &[1.0]]).unwrap();
        let x = least_squares_solve(&m, &ComplexVector::from_real(&[0.0, 2.0]).unwrap()).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-15);

        // Vandermonde on nodes 0, 1, 2 with exact linear data 1 + x
        let v = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[1.0, 1.0], &[1.0, 2.0]]).unwrap();
        let x = least_squares_solve(&v, &ComplexVector::from_real(&[1.0, 2.0, 3.0]).unwrap()).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((x[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn least_squares_rank_deficient() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0], &[3.0, 6.0]]).unwrap();
        let b = ComplexVector::from_real(&[1.0, 1.0, 1.0]).unwrap();
        match least_squares_solve(&m, &b) {
            Err(Error::Singular { sigma_min, sigma_max }) => assert!(sigma_min <= RANK_TOL * sigma_max),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]),
            Err(Error::Dimension { .. })
        ));
        assert_eq!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        );
        assert_eq!(ComplexVector::from_real(&[f64::INFINITY]), Err(Error::NonFinite));
    }

    #[test]
    fn qr_reproduces_input() {
        let m = ComplexMatrix::from_fn(5, 3, |i, j| c((i + 2 * j) as f64 * 0.3 - 1.0, (i * j) as f64 * 0.1 + 0.2)).unwrap();
        let qr = QrFactor::new(&m).unwrap();
        // Q* M has R on top and zeros below
        for j in 0..3 {
            let mut col = m.column(j);
            qr.apply_adjoint_q(&mut col);
            let r = qr.r();
            for i in 0..5 {
                let expect = if i < 3 { r[(i, j)] } else { c(0.0, 0.0) };
                assert!((col[i] - expect).norm() < 1e-13);
            }
        }
    }
}
