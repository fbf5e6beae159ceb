//! Computable stability constants of uneven sections.
//!
//! With `B = P_m U P_n`, `G = B*B` and `U` scaled so that `εU*U = I` for
//! orthonormal families:
//!
//! * inverse norm `1/λ_min(G)`,
//! * `K_{n,m,M} = ‖G⁻¹ B* P_m U (P_M - P_n)‖`, increasing to `K_{n,m}` in `M`,
//! * `K̃_{n,m} = ‖G⁻¹ B*‖` and the upper bound `‖U‖ K̃_{n,m} ≥ K_{n,m}`,
//! * the residual `‖ε⁻¹I - G‖` and the sample count `Ψ̃` at which it drops
//!   below `ε⁻¹ f(θ)`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bases::BasisFamily;
use crate::numerics::{hermitian_eigenvalues, ComplexMatrix, QrFactor, RANK_TOL};
use crate::sections::{build_section_with, DirectSource, SamplingScheme, SectionMatrix, SectionSource};
use crate::{Error, Result, C64};

/// Tail cap `M* = 8n` used when no explicit `M` is given.
pub const DEFAULT_TAIL_FACTOR: usize = 8;

/// Relative change between the last two tail sizes above which `k_lower`
/// is flagged as not converged.
pub const TAIL_CONVERGENCE: f64 = 0.01;

/// `f(θ) = (√(1+4θ²) - 1)² / (4θ²)`.
pub fn f_theta(theta: f64) -> f64 {
    let s = (1.0 + 4.0 * theta * theta).sqrt() - 1.0;
    s * s / (4.0 * theta * theta)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdQuery {
    n: usize,
    theta: f64,
    epsilon: f64,
}

impl ThresholdQuery {
    pub fn new(n: usize, theta: f64, epsilon: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParameter("threshold must be positive"));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::InvalidParameter("sample spacing must lie in (0, 1]"));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive"));
        }
        Ok(Self { n, theta, epsilon })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// `‖U‖ = √(B/ε)`.
pub fn u_norm(family: &BasisFamily, scheme: &SamplingScheme) -> f64 {
    (family.riesz_bounds().1 / scheme.epsilon()).sqrt()
}

/// Analytic upper bound on the smallest admissible sample count for a
/// wavelet family with decay `C/|ω|^p` on `[0, a]`.
pub fn wavelet_phi_bound(query: &ThresholdQuery, c: f64, p: u32, a: f64) -> Result<f64> {
    if !(c > 0.0) || p == 0 || !(a > 0.0) {
        return Err(Error::InvalidParameter("decay constants must be positive"));
    }
    let e = 1.0 / (2 * p - 1) as f64;
    let p_i = p as i32;
    let eps = query.epsilon;
    let lead = 4.0 * eps.powi(1 - 2 * p_i) * a.ceil() * c * c / f_theta(query.theta);
    Ok(lead.powf(e) * level_sum(query.n, p).powf(e))
}

/// `1 + (4^p n^{2p} - 1)/(4^p - 1)`.
fn level_sum(n: usize, p: u32) -> f64 {
    let four_p = 4f64.powi(p as i32);
    1.0 + (four_p * (n as f64).powi(2 * p as i32) - 1.0) / (four_p - 1.0)
}

/// Analytic bound on the residual `‖ε⁻¹I - G(n,m)‖` for the same wavelet setting.
pub fn residual_tail_bound(n: usize, m: usize, epsilon: f64, c: f64, p: u32, a: f64) -> f64 {
    let p_i = p as i32;
    4.0 * epsilon.powi(-2 * p_i) * a.ceil() * c * c / (m as f64).powi(2 * p_i - 1) * level_sum(n, p)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantsReport {
    pub n: usize,
    pub m: usize,
    pub inv_norm: f64,
    pub k_tilde: f64,
    /// `K_{n,m,M}` at `M = m_used`.
    pub k_lower: f64,
    pub k_upper: f64,
    pub residual: f64,
    pub m_used: usize,
    /// False when the last doubling of `M` moved `k_lower` by more than 1%.
    pub tail_converged: bool,
}

/// Point of a `K_{n,m,M}` sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailPoint {
    pub big_m: usize,
    pub k: f64,
}

/// Stability constants for one family and sampling scheme.
#[derive(Clone, Debug)]
pub struct Analyzer<S = DirectSource> {
    family: BasisFamily,
    scheme: SamplingScheme,
    source: S,
}

impl Analyzer<DirectSource> {
    pub fn new(family: BasisFamily, scheme: SamplingScheme) -> Self {
        Self::with_source(family, scheme, DirectSource)
    }
}

impl<S: SectionSource> Analyzer<S> {
    pub fn with_source(family: BasisFamily, scheme: SamplingScheme, source: S) -> Self {
        Self {
            family,
            scheme,
            source,
        }
    }

    pub fn family(&self) -> &BasisFamily {
        &self.family
    }

    pub fn scheme(&self) -> &SamplingScheme {
        &self.scheme
    }

    pub fn section(&self, m: usize, n: usize, col_offset: usize) -> Result<SectionMatrix> {
        build_section_with(&self.source, &self.family, &self.scheme, m, n, col_offset)
    }

    fn check_sizes(n: usize, m: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive"));
        }
        if m < n {
            return Err(Error::Dimension {
                what: "section needs at least as many rows as columns",
                expected: n,
                found: m,
            });
        }
        Ok(())
    }

    fn require_orthonormal(&self) -> Result<()> {
        if self.family.is_orthonormal() {
            Ok(())
        } else {
            Err(Error::Unsupported("residual needs an orthonormal family"))
        }
    }

    /// `1/λ_min(G(n,m))`, infinite when `G` is numerically singular.
    pub fn gram_inverse_norm(&self, n: usize, m: usize) -> Result<f64> {
        Self::check_sizes(n, m)?;
        let sec = self.section(m, n, 0)?;
        Ok(inverse_norm_of_gram(&sec.block().gram())?.0)
    }

    /// `K̃_{n,m} = 1/σ_min(B)`.
    pub fn k_tilde(&self, n: usize, m: usize) -> Result<f64> {
        Ok(self.gram_inverse_norm(n, m)?.sqrt())
    }

    pub fn k_upper(&self, n: usize, m: usize) -> Result<f64> {
        Ok(u_norm(&self.family, &self.scheme) * self.k_tilde(n, m)?)
    }

    /// `λ_max(ε⁻¹I - G(n,m))`, clamped at zero.
    pub fn residual_norm(&self, n: usize, m: usize) -> Result<f64> {
        self.require_orthonormal()?;
        Self::check_sizes(n, m)?;
        let sec = self.section(m, n, 0)?;
        residual_of_gram(&sec.block().gram(), self.scheme.epsilon())
    }

    pub fn k_lower(&self, n: usize, m: usize, big_m: usize) -> Result<f64> {
        Ok(self.k_lower_sweep(n, m, &[big_m])?[0].k)
    }

    /// `K_{n,m,M}` for each `M` in `tails`, sharing one factorization.
    pub fn k_lower_sweep(&self, n: usize, m: usize, tails: &[usize]) -> Result<Vec<TailPoint>> {
        Self::check_sizes(n, m)?;
        let mut sorted: Vec<usize> = tails.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.first().map_or(true, |&t| t <= n) {
            return Err(Error::InvalidParameter("tail size M must exceed n"));
        }
        let max_m = *sorted.last().expect("non-empty");
        let head = self.section(m, n, 0)?;
        let qr = QrFactor::new(head.block())?;
        check_rank(&qr)?;

        // X = R⁻¹ Q* C, accumulated into X X* one column at a time
        let mut xx = vec![C64::new(0.0, 0.0); n * n];
        let mut col = vec![C64::new(0.0, 0.0); m];
        let mut out = Vec::with_capacity(sorted.len());
        let mut next = 0;
        let chunk = 256usize;
        let mut start = n;
        while start < max_m {
            let width = chunk.min(max_m - start);
            let tail = self.section(m, width, start)?;
            for j in 0..width {
                for (i, c) in col.iter_mut().enumerate() {
                    *c = tail.block()[(i, j)];
                }
                qr.apply_adjoint_q(&mut col);
                let x = qr.solve_r(&col[..n]);
                for r in 0..n {
                    let xr = x[r];
                    for s in r..n {
                        xx[r * n + s] += xr * x[s].conj();
                    }
                }
                let done = start + j + 1;
                while next < sorted.len() && sorted[next] == done {
                    out.push(TailPoint {
                        big_m: done,
                        k: largest_eigen_sqrt(&xx, n)?,
                    });
                    next += 1;
                }
            }
            start += width;
        }
        Ok(out)
    }

    /// All constants at `(n, m)` with the tail capped at `big_m`
    /// (default `8n`).
    pub fn report(&self, n: usize, m: usize, big_m: Option<usize>) -> Result<ConstantsReport> {
        Self::check_sizes(n, m)?;
        let big_m = big_m.unwrap_or(DEFAULT_TAIL_FACTOR * n).max(n + 1);
        let half = (big_m / 2).max(n + 1);
        let sweep = self.k_lower_sweep(n, m, &[half, big_m])?;
        let k_lower = sweep.last().expect("non-empty").k;
        let k_prev = sweep[0].k;
        let tail_converged = k_lower == 0.0 || (k_lower - k_prev).abs() <= TAIL_CONVERGENCE * k_lower;
        let sec = self.section(m, n, 0)?;
        let gram = sec.block().gram();
        let (inv_norm, _) = inverse_norm_of_gram(&gram)?;
        let residual = if self.family.is_orthonormal() {
            residual_of_gram(&gram, self.scheme.epsilon())?
        } else {
            f64::NAN
        };
        let k_tilde = inv_norm.sqrt();
        Ok(ConstantsReport {
            n,
            m,
            inv_norm,
            k_tilde,
            k_lower,
            k_upper: u_norm(&self.family, &self.scheme) * k_tilde,
            residual,
            m_used: big_m,
            tail_converged,
        })
    }

    /// Smallest `m ≥ n` with `residual_norm(n, m) ≤ ε⁻¹ f(θ)`.
    pub fn psi_tilde(&self, query: &ThresholdQuery) -> Result<usize> {
        self.require_orthonormal()?;
        let n = query.n;
        let target = f_theta(query.theta) / self.scheme.epsilon();
        let mut rows = RowGrowth::new(self, n)?;
        first_crossing(n, |m| Ok(rows.residual(m)? <= target))
    }

    /// `(lower, upper)` with `lower ≤ Φ(n, θ) ≤ upper`.
    ///
    /// `upper` is the first `m` at which a computable bound on `K_{n,m}`
    /// drops to `θ`: the smaller of `‖U‖K̃` and `‖A⁻¹‖ ‖U‖ √residual`, both
    /// nonincreasing in `m`. `lower` is the first `m` at which
    /// `K_{n,m,8n} ≤ θ`.
    pub fn phi_bracket(&self, query: &ThresholdQuery) -> Result<(usize, usize)> {
        self.require_orthonormal()?;
        let n = query.n;
        let theta = query.theta;
        let eps = self.scheme.epsilon();
        let un = u_norm(&self.family, &self.scheme);
        let mut rows = RowGrowth::new(self, n)?;
        let upper = first_crossing(n, |m| {
            let gram = rows.gram(m)?;
            let eig = hermitian_eigenvalues(&gram)?;
            let min = *eig.last().expect("n > 0");
            if !(min > RANK_TOL * eig[0]) {
                return Ok(false);
            }
            let inv = 1.0 / min;
            let residual = (1.0 / eps - min).max(0.0);
            let bound = (un * inv.sqrt()).min(inv * un * residual.sqrt());
            Ok(bound <= theta)
        })?;
        let big_m = DEFAULT_TAIL_FACTOR * n;
        let mut lower = upper;
        for m in n..upper {
            match self.k_lower(n, m, big_m.max(n + 1)) {
                Ok(k) if k <= theta => {
                    lower = m;
                    break;
                }
                Ok(_) | Err(Error::Singular { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok((lower, upper))
    }
}

/// Section rows grown on demand, so a search over `m` assembles each row once.
struct RowGrowth<'a, S> {
    analyzer: &'a Analyzer<S>,
    n: usize,
    section: SectionMatrix,
}

impl<'a, S: SectionSource> RowGrowth<'a, S> {
    fn new(analyzer: &'a Analyzer<S>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive"));
        }
        Ok(Self {
            analyzer,
            n,
            section: analyzer.section(n, n, 0)?,
        })
    }

    fn gram(&mut self, m: usize) -> Result<ComplexMatrix> {
        if m > self.section.rows() {
            let rows = m.max(2 * self.section.rows());
            self.section = self.analyzer.section(rows, self.n, 0)?;
        }
        Ok(self.section.block().gram_of_leading_rows(m))
    }

    fn residual(&mut self, m: usize) -> Result<f64> {
        let g = self.gram(m)?;
        residual_of_gram(&g, self.analyzer.scheme.epsilon())
    }
}

/// Smallest `m ≥ start` with `pred(m)`, for a predicate that stays true once
/// true: doubling, then bisection.
fn first_crossing(start: usize, mut pred: impl FnMut(usize) -> Result<bool>) -> Result<usize> {
    if pred(start)? {
        return Ok(start);
    }
    let mut lo = start;
    let mut hi = start.max(1) * 2;
    let limit = start.max(1) << 30;
    while !pred(hi)? {
        lo = hi;
        hi *= 2;
        if hi > limit {
            return Err(Error::NoConvergence("threshold search"));
        }
    }
    // pred(lo) false, pred(hi) true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn check_rank(qr: &QrFactor) -> Result<()> {
    let r = qr.r();
    let mut max = 0.0f64;
    let mut min = f64::INFINITY;
    for i in 0..r.rows() {
        let d = r[(i, i)].norm();
        max = max.max(d);
        min = min.min(d);
    }
    if !(min > RANK_TOL * max) {
        return Err(Error::Singular {
            sigma_min: min,
            sigma_max: max,
        });
    }
    Ok(())
}

/// `(1/λ_min, λ_max)` of a Hermitian PSD matrix; infinite inverse norm when
/// singular to working precision.
fn inverse_norm_of_gram(gram: &ComplexMatrix) -> Result<(f64, f64)> {
    let eig = hermitian_eigenvalues(gram)?;
    let max = eig[0];
    let min = *eig.last().expect("non-empty");
    if !(min > RANK_TOL * max) {
        return Ok((f64::INFINITY, max));
    }
    Ok((1.0 / min, max))
}

fn residual_of_gram(gram: &ComplexMatrix, epsilon: f64) -> Result<f64> {
    let eig = hermitian_eigenvalues(gram)?;
    let min = *eig.last().expect("non-empty");
    Ok((1.0 / epsilon - min).max(0.0))
}

fn largest_eigen_sqrt(upper: &[C64], n: usize) -> Result<f64> {
    let mut full = vec![C64::new(0.0, 0.0); n * n];
    for r in 0..n {
        full[r * n + r] = C64::new(upper[r * n + r].re, 0.0);
        for s in r + 1..n {
            full[r * n + s] = upper[r * n + s];
            full[s * n + r] = upper[r * n + s].conj();
        }
    }
    let m = ComplexMatrix::new(n, n, full)?;
    Ok(hermitian_eigenvalues(&m)?[0].max(0.0).sqrt())
}

fn analyzer(family: &BasisFamily, scheme: &SamplingScheme) -> Analyzer {
    Analyzer::new(*family, *scheme)
}

pub fn gram_inverse_norm(family: &BasisFamily, scheme: &SamplingScheme, n: usize, m: usize) -> Result<f64> {
    analyzer(family, scheme).gram_inverse_norm(n, m)
}

pub fn k_lower(family: &BasisFamily, scheme: &SamplingScheme, n: usize, m: usize, big_m: usize) -> Result<f64> {
    analyzer(family, scheme).k_lower(n, m, big_m)
}

pub fn k_tilde(family: &BasisFamily, scheme: &SamplingScheme, n: usize, m: usize) -> Result<f64> {
    analyzer(family, scheme).k_tilde(n, m)
}

pub fn k_upper(family: &BasisFamily, scheme: &SamplingScheme, n: usize, m: usize) -> Result<f64> {
    analyzer(family, scheme).k_upper(n, m)
}

pub fn residual_norm(family: &BasisFamily, scheme: &SamplingScheme, n: usize, m: usize) -> Result<f64> {
    analyzer(family, scheme).residual_norm(n, m)
}

pub fn psi_tilde(family: &BasisFamily, scheme: &SamplingScheme, query: &ThresholdQuery) -> Result<usize> {
    analyzer(family, scheme).psi_tilde(query)
}

pub fn phi_bracket(family: &BasisFamily, scheme: &SamplingScheme, query: &ThresholdQuery) -> Result<(usize, usize)> {
    analyzer(family, scheme).phi_bracket(query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{eval_fourier, BasisIndex};
    use crate::sections::{build_section, rho};

    fn haar(eps: f64) -> (BasisFamily, SamplingScheme) {
        let f = BasisFamily::haar();
        (f, SamplingScheme::for_family(eps, &f).unwrap())
    }

    fn fexp(eps: f64) -> (BasisFamily, SamplingScheme) {
        let f = BasisFamily::fourier_exp(eps).unwrap();
        (f, SamplingScheme::for_family(eps, &f).unwrap())
    }

    #[test]
    fn f_theta_values() {
        assert!((f_theta(1.0) - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn wavelet_bound_value() {
        let q = ThresholdQuery::new(1, 1.0, 0.5).unwrap();
        let b = wavelet_phi_bound(&q, 2.0, 1, 1.0).unwrap();
        assert!((b - 64.0 / f_theta(1.0)).abs() < 1e-10);
        assert!((b - 167.55).abs() < 0.01);
        // doubling n quadruples the bound asymptotically
        let big = |n| wavelet_phi_bound(&ThresholdQuery::new(n, 1.0, 0.5).unwrap(), 2.0, 1, 1.0).unwrap();
        let r = big(2000) / big(1000);
        assert!((r - 4.0).abs() < 1e-5);
        assert!(wavelet_phi_bound(&q, 0.0, 1, 1.0).is_err());
    }

    #[test]
    fn fourier_exp_constants() {
        let (f, s) = fexp(0.5);
        for n in [1, 3, 6] {
            assert!((gram_inverse_norm(&f, &s, n, n).unwrap() - 0.5).abs() < 1e-15);
            assert!(residual_norm(&f, &s, n, n).unwrap() < 1e-14);
            for big_m in [n + 1, 2 * n + 1] {
                if big_m <= n {
                    continue;
                }
                assert_eq!(k_lower(&f, &s, n, 2 * n + 1, big_m.min(2 * n + 1)).unwrap(), 0.0);
            }
        }
        let q = ThresholdQuery::new(5, 1.0, 0.5).unwrap();
        assert_eq!(phi_bracket(&f, &s, &q).unwrap(), (5, 5));
    }

    #[test]
    fn one_by_one_residual() {
        let (f, s) = haar(0.5);
        assert!((residual_norm(&f, &s, 1, 1).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn residual_decreases_for_haar() {
        let (f, s) = haar(0.5);
        let r: Vec<f64> = [16, 32, 64, 128].iter().map(|&m| residual_norm(&f, &s, 16, m).unwrap()).collect();
        for w in r.windows(2) {
            assert!(w[1] < w[0], "{r:?}");
        }
    }

    #[test]
    fn residual_requires_orthonormal_family() {
        let (_, s) = haar(0.5);
        let f = BasisFamily::haar().with_riesz_bounds(0.5, 2.0).unwrap();
        assert!(matches!(residual_norm(&f, &s, 2, 4), Err(Error::Unsupported(_))));
    }

    /// Inverse of a Hermitian positive definite matrix by Gauss–Jordan.
    fn gauss_jordan_inverse(a: &ComplexMatrix) -> ComplexMatrix {
        let n = a.rows();
        let mut aug: Vec<Vec<C64>> = (0..n)
            .map(|i| {
                let mut row: Vec<C64> = a.row(i).to_vec();
                row.extend((0..n).map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)));
                row
            })
            .collect();
        for p in 0..n {
            let piv = (p..n).max_by(|&x, &y| aug[x][p].norm().partial_cmp(&aug[y][p].norm()).unwrap()).unwrap();
            aug.swap(p, piv);
            let d = aug[p][p];
            for v in aug[p].iter_mut() {
                *v /= d;
            }
            for r in 0..n {
                if r != p {
                    let f = aug[r][p];
                    let prow = aug[p].clone();
                    for (v, pv) in aug[r].iter_mut().zip(prow) {
                        *v -= f * pv;
                    }
                }
            }
        }
        ComplexMatrix::from_fn(n, n, |i, j| aug[i][n + j]).unwrap()
    }

    #[test]
    fn k_lower_matches_brute_force() {
        let (f, s) = haar(0.5);
        let (n, m, big_m) = (4, 32, 64);
        // entries straight from the closed forms, no section assembly
        let u = ComplexMatrix::from_fn(m, big_m, |i, j| {
            eval_fourier(&f, BasisIndex::new(j + 1).unwrap(), rho(i + 1, 0.5).unwrap())
        })
        .unwrap();
        let b = u.sub_block(0, 0, m, n).unwrap();
        let c = u.sub_block(0, n, m, big_m - n).unwrap();
        let g_inv = gauss_jordan_inverse(&b.gram());
        let comp = g_inv.matmul(&b.adjoint().matmul(&c).unwrap()).unwrap();
        let brute = hermitian_eigenvalues(&comp.outer_gram()).unwrap()[0].sqrt();
        let fast = k_lower(&f, &s, n, m, big_m).unwrap();
        assert!((fast - brute).abs() < 1e-10 * brute.max(1.0), "{fast} {brute}");
        assert!(fast <= k_upper(&f, &s, n, m).unwrap());
    }

    #[test]
    fn k_lower_is_nondecreasing_in_tail() {
        let (f, s) = haar(0.5);
        let pts = Analyzer::new(f, s).k_lower_sweep(8, 40, &[9, 16, 32, 64, 128]).unwrap();
        for w in pts.windows(2) {
            assert!(w[1].k >= w[0].k - 1e-12);
        }
        assert_eq!(pts.len(), 5);
        assert!(k_lower(&f, &s, 8, 40, 8).is_err());
    }

    #[test]
    fn psi_tilde_scalar_case() {
        let (f, s) = haar(0.5);
        for theta in [0.5, 1.0, 2.0] {
            let q = ThresholdQuery::new(1, theta, 0.5).unwrap();
            let got = psi_tilde(&f, &s, &q).unwrap();
            // direct scalar summation of 2 - Σ|Fφ(ρ(i))|²
            let target = 2.0 * f_theta(theta);
            let mut sum = 0.0;
            let mut m = 0;
            loop {
                m += 1;
                let v = eval_fourier(&f, BasisIndex::new(1).unwrap(), rho(m, 0.5).unwrap()).norm_sqr();
                sum += v;
                if 2.0 - sum <= target {
                    break;
                }
            }
            assert_eq!(got, m, "theta {theta}");
        }
    }

    #[test]
    fn psi_tilde_below_wavelet_bound() {
        let (f, s) = haar(0.5);
        for n in [2, 4, 8, 16] {
            let q = ThresholdQuery::new(n, 1.0, 0.5).unwrap();
            let psi = psi_tilde(&f, &s, &q).unwrap() as f64;
            assert!(psi <= wavelet_phi_bound(&q, 2.0, 1, 1.0).unwrap());
        }
    }

    #[test]
    fn phi_bracket_haar() {
        let (f, s) = haar(0.5);
        let q1 = ThresholdQuery::new(8, 1.0, 0.5).unwrap();
        let q2 = ThresholdQuery::new(8, 2.0, 0.5).unwrap();
        let (l1, u1) = phi_bracket(&f, &s, &q1).unwrap();
        let (l2, u2) = phi_bracket(&f, &s, &q2).unwrap();
        assert!(l1 <= u1 && l2 <= u2);
        assert!(l2 <= l1 && u2 <= u1);
        // the residual-based bound is at least as good as Ψ̃
        assert!(u1 <= psi_tilde(&f, &s, &q1).unwrap());
    }

    #[test]
    fn report_is_consistent() {
        let (f, s) = haar(0.5);
        let r = Analyzer::new(f, s).report(8, 40, None).unwrap();
        assert_eq!(r.m_used, 64);
        assert!(r.k_lower <= r.k_upper + 1e-10);
        assert!(r.inv_norm >= 0.5);
        assert!(r.residual >= 0.0);
        assert!((r.k_tilde * r.k_tilde - r.inv_norm).abs() < 1e-12);
        let direct = build_section(&f, &s, 40, 8, 0).unwrap();
        let inv = 1.0 / *hermitian_eigenvalues(&direct.block().gram()).unwrap().last().unwrap();
        assert!((r.inv_norm - inv).abs() < 1e-14 * inv);
    }
}
