//! Reconstruction from Fourier samples, classical baselines and error metrics.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bases::{cis_turns, eval_fourier, eval_point, sinc, BasisFamily, BasisIndex, FourierOracle};
use crate::numerics::{hermitian_eigenvalues, least_squares_solve, min_singular_value, ComplexVector, RANK_TOL};
use crate::sections::{rho, SamplingScheme, SectionMatrix};
use crate::{Error, Result, C64};

/// Fourier samples `f(ρ(1)), …, f(ρ(m))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleVector {
    values: ComplexVector,
    scheme: SamplingScheme,
}

impl SampleVector {
    pub fn new(values: ComplexVector, scheme: SamplingScheme) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Dimension {
                what: "sample vector",
                expected: 1,
                found: 0,
            });
        }
        Ok(Self { values, scheme })
    }

    pub fn values(&self) -> &ComplexVector {
        &self.values
    }

    pub fn scheme(&self) -> &SamplingScheme {
        &self.scheme
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self {
            values: self.values.scaled(c),
            scheme: self.scheme,
        }
    }

    /// The first `m` samples.
    pub fn truncated(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.len() {
            return Err(Error::Dimension {
                what: "sample truncation",
                expected: self.len(),
                found: m,
            });
        }
        Self::new(ComplexVector::new(self.values.as_slice()[..m].to_vec())?, self.scheme)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionResult {
    pub coefficients: ComplexVector,
    pub family: BasisFamily,
    /// Inverse norm of the solved system.
    pub inv_norm: f64,
    pub m_used: usize,
    pub n_used: usize,
}

fn check_samples(section: &SectionMatrix, samples: &SampleVector) -> Result<()> {
    if samples.len() != section.rows() {
        return Err(Error::Dimension {
            what: "samples against section rows",
            expected: section.rows(),
            found: samples.len(),
        });
    }
    if section.col_offset() != 0 {
        return Err(Error::InvalidParameter("reconstruction needs a section starting at the first column"));
    }
    Ok(())
}

/// Least-squares solve of the `m × n` section, `m ≥ n`. Reports
/// `1/λ_min(B*B)` as the inverse norm.
pub fn solve_uneven(section: &SectionMatrix, samples: &SampleVector) -> Result<ReconstructionResult> {
    check_samples(section, samples)?;
    let (m, n) = (section.rows(), section.cols());
    if m < n {
        return Err(Error::Dimension {
            what: "uneven section needs at least as many rows as columns",
            expected: n,
            found: m,
        });
    }
    let coefficients = least_squares_solve(section.block(), samples.values())?;
    let eig = hermitian_eigenvalues(&section.block().gram())?;
    let (max, min) = (eig[0], eig[n - 1]);
    if !(min > RANK_TOL * max) {
        return Err(Error::Singular {
            sigma_min: min.max(0.0).sqrt(),
            sigma_max: max.sqrt(),
        });
    }
    Ok(ReconstructionResult {
        coefficients,
        family: *section.family(),
        inv_norm: 1.0 / min,
        m_used: m,
        n_used: n,
    })
}

/// Direct solve of the square section.
pub fn solve_consistent(square: &SectionMatrix, samples: &SampleVector) -> Result<ReconstructionResult> {
    check_samples(square, samples)?;
    if !square.block().is_square() {
        return Err(Error::Dimension {
            what: "consistent reconstruction needs a square section",
            expected: square.rows(),
            found: square.cols(),
        });
    }
    let coefficients = least_squares_solve(square.block(), samples.values())?;
    let sigma = min_singular_value(square.block());
    Ok(ReconstructionResult {
        coefficients,
        family: *square.family(),
        inv_norm: 1.0 / sigma,
        m_used: square.rows(),
        n_used: square.cols(),
    })
}

/// `∫_a^b e^{-2πiνt} dt = (b-a) e^{-πiν(a+b)} sinc(ν(b-a))`.
fn interval_transform(a: f64, b: f64, nu: f64) -> C64 {
    cis_turns(-0.5 * nu * (a + b)) * ((b - a) * sinc(nu * (b - a)))
}

/// Closed-form signals used in the experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogTerm {
    /// `cos(2πt)` on `[1/2, 1]`.
    CosineHalf,
    /// `sin(2πt)` on `[0.3, 0.6]`.
    SineBump,
    /// `1/(1+16x²)` on `[-1, 1]`.
    Runge,
}

impl CatalogTerm {
    pub fn support(self) -> (f64, f64) {
        match self {
            CatalogTerm::CosineHalf => (0.5, 1.0),
            CatalogTerm::SineBump => (0.3, 0.6),
            CatalogTerm::Runge => (-1.0, 1.0),
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        let (a, b) = self.support();
        if x < a || x > b {
            return 0.0;
        }
        match self {
            CatalogTerm::CosineHalf => (2.0 * PI * x).cos(),
            CatalogTerm::SineBump => (2.0 * PI * x).sin(),
            CatalogTerm::Runge => 1.0 / (1.0 + 16.0 * x * x),
        }
    }

    /// Closed-form Fourier transform, if one is implemented.
    pub fn closed_form_transform(self, omega: f64) -> Option<C64> {
        let (a, b) = self.support();
        match self {
            CatalogTerm::CosineHalf => {
                Some((interval_transform(a, b, omega - 1.0) + interval_transform(a, b, omega + 1.0)) * 0.5)
            }
            CatalogTerm::SineBump => Some(
                (interval_transform(a, b, omega - 1.0) - interval_transform(a, b, omega + 1.0)) / C64::new(0.0, 2.0),
            ),
            CatalogTerm::Runge => None,
        }
    }

    pub fn oracle_transform(self, oracle: &FourierOracle, omega: f64) -> C64 {
        let (a, b) = self.support();
        let intrinsic = match self {
            CatalogTerm::Runge => 2.0,
            _ => 1.0,
        };
        oracle.transform(a, b, intrinsic, 0.25, omega, |x| C64::new(self.eval(x), 0.0))
    }
}

/// A finite expansion `Σ β_l φ_l` plus an optional catalog term.
#[derive(Clone, Debug, PartialEq)]
pub struct SignalSpec {
    pub family: BasisFamily,
    pub coefficients: Vec<C64>,
    pub term: Option<CatalogTerm>,
    /// Permit quadrature for terms without a closed-form transform.
    pub allow_quadrature: bool,
}

impl SignalSpec {
    pub fn expansion(family: BasisFamily, coefficients: Vec<C64>) -> Self {
        Self {
            family,
            coefficients,
            term: None,
            allow_quadrature: true,
        }
    }

    pub fn term(family: BasisFamily, term: CatalogTerm) -> Self {
        Self {
            family,
            coefficients: Vec::new(),
            term: Some(term),
            allow_quadrature: true,
        }
    }

    pub fn eval(&self, x: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (j, &b) in self.coefficients.iter().enumerate() {
            if b != C64::new(0.0, 0.0) {
                acc += b * eval_point(&self.family, BasisIndex::from_zero_based(j), x);
            }
        }
        if let Some(t) = self.term {
            acc += t.eval(x);
        }
        acc
    }

    /// `(Fg)(ω)`, using quadrature only where no closed form exists.
    pub fn transform(&self, omega: f64, oracle: Option<&FourierOracle>) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (j, &b) in self.coefficients.iter().enumerate() {
            if b != C64::new(0.0, 0.0) {
                acc += b * eval_fourier(&self.family, BasisIndex::from_zero_based(j), omega);
            }
        }
        if let Some(t) = self.term {
            acc += match t.closed_form_transform(omega) {
                Some(v) => v,
                None => match oracle {
                    Some(o) if self.allow_quadrature => t.oracle_transform(o, omega),
                    _ => return Err(Error::ClosedFormUnavailable("catalog term without closed-form transform")),
                },
            };
        }
        Ok(acc)
    }
}

/// Samples `(Fg)(ρ(i))`, `i = 1..=m`.
pub fn synthesize_samples(spec: &SignalSpec, scheme: &SamplingScheme, m: usize) -> Result<SampleVector> {
    let needs_oracle = spec.term.map_or(false, |t| t.closed_form_transform(0.0).is_none());
    if needs_oracle && !spec.allow_quadrature {
        return Err(Error::ClosedFormUnavailable("catalog term without closed-form transform"));
    }
    let oracle = if needs_oracle { Some(FourierOracle::new()) } else { None };
    let values = (1..=m)
        .map(|i| spec.transform(rho(i, scheme.epsilon())?, oracle.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    SampleVector::new(ComplexVector::new(values)?, *scheme)
}

/// Where a reconstruction is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `g̃ = Σ β̃_j φ_j`.
    Signal,
    /// `f̃ = Σ β̃_j Fφ_j`.
    Transform,
}

pub fn eval_reconstruction(result: &ReconstructionResult, grid: &[f64], domain: Domain) -> Vec<C64> {
    let family = result.family;
    let coeffs = result.coefficients.as_slice();
    grid.iter()
        .map(|&x| {
            coeffs
                .iter()
                .enumerate()
                .map(|(j, &b)| {
                    let l = BasisIndex::from_zero_based(j);
                    b * match domain {
                        Domain::Signal => eval_point(&family, l, x),
                        Domain::Transform => eval_fourier(&family, l, x),
                    }
                })
                .sum()
        })
        .collect()
}

/// Truncated Fourier series `ε Σ f(ρ(i)) e^{2πiρ(i)x}` over a symmetric window.
pub fn baseline_truncated_fourier(samples: &SampleVector, grid: &[f64]) -> Result<Vec<C64>> {
    if samples.len() % 2 == 0 {
        return Err(Error::InvalidParameter("truncated Fourier series needs an odd number of samples"));
    }
    let eps = samples.scheme().epsilon();
    let freqs = (1..=samples.len()).map(|i| rho(i, eps)).collect::<Result<Vec<_>>>()?;
    Ok(grid
        .iter()
        .map(|&x| {
            let s: C64 = samples
                .values()
                .iter()
                .zip(&freqs)
                .map(|(&f, &w)| f * cis_turns(w * x))
                .sum();
            s * eps
        })
        .collect())
}

/// Shannon interpolation `Σ f(ρ(i)) sinc((t - ρ(i))/ε)`.
pub fn baseline_sinc(samples: &SampleVector, grid: &[f64]) -> Vec<C64> {
    let eps = samples.scheme().epsilon();
    grid.iter()
        .map(|&t| {
            samples
                .values()
                .iter()
                .enumerate()
                .map(|(i, &f)| {
                    let w = rho(i + 1, eps).expect("one-based");
                    f * sinc((t - w) / eps)
                })
                .sum()
        })
        .collect()
}

/// Weighted discrete `L²` norm and max norm of `approx - reference`.
pub fn error_metrics(approx: &[C64], reference: &[C64], weights: &[f64]) -> Result<(f64, f64)> {
    if approx.len() != reference.len() || weights.len() != approx.len() {
        return Err(Error::Dimension {
            what: "error metric inputs",
            expected: reference.len(),
            found: if approx.len() != reference.len() {
                approx.len()
            } else {
                weights.len()
            },
        });
    }
    let mut sq = 0.0;
    let mut max = 0.0f64;
    for ((a, r), w) in approx.iter().zip(reference).zip(weights) {
        let d = (a - r).norm();
        sq += w * d * d;
        max = max.max(d);
    }
    Ok((sq.sqrt(), max))
}

/// 64-bit linear congruential generator with a fixed multiplier and increment.
#[derive(Clone, Debug)]
pub struct SeededLcg {
    state: u64,
}

impl SeededLcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;
    pub const DEFAULT_SEED: u64 = 42;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[0, 10)`.
    pub fn next_coefficient(&mut self) -> f64 {
        10.0 * self.next_unit()
    }
}
