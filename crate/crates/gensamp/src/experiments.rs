//! The experiments behind each CLI subcommand. Every experiment has a
//! parameter struct resolved from [`Overrides`], a compute function returning
//! typed results, and a rendering into CSV tables.

use std::path::PathBuf;

use gensamp_core::bases::{eval_point, BasisFamily, BasisIndex};
use gensamp_core::constants::{Analyzer, TailPoint, ThresholdQuery, TAIL_CONVERGENCE};
use gensamp_core::numerics::min_singular_value;
use gensamp_core::quadrature::GaussLegendre;
use gensamp_core::sections::{build_section_with, SamplingScheme, SectionMatrix};
use gensamp_core::solver::{
    baseline_sinc, baseline_truncated_fourier, error_metrics, eval_reconstruction, solve_consistent, solve_uneven,
    synthesize_samples, CatalogTerm, Domain, ReconstructionResult, SampleVector, SeededLcg, SignalSpec,
};
use gensamp_core::C64;
use rayon::prelude::*;

use crate::cache::{ParallelSource, RowCache};
use crate::config::{ExperimentConfig, ExperimentId, Overrides};
use crate::error::RunError;
use crate::output::{format_float, write_tables, Table};

/// `⌈4.9 n⌉` in integer arithmetic.
pub fn samples_for(n: usize) -> usize {
    (49 * n + 9) / 10
}

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(msg.into())
}

fn reject(o: &Overrides, id: ExperimentId, eps: bool, n: bool, m: bool, grid: bool, seed: bool) -> Result<(), RunError> {
    let bad = [
        (o.epsilon.is_some() && !eps, "--epsilon"),
        (o.n.is_some() && !n, "--n"),
        (o.m.is_some() && !m, "--m"),
        (o.grid.is_some() && !grid, "--grid"),
        (o.seed.is_some() && !seed, "--seed"),
    ];
    match bad.iter().find(|b| b.0) {
        Some((_, flag)) => Err(usage(format!("{flag} does not apply to {id}"))),
        None => Ok(()),
    }
}

fn check_epsilon(eps: f64) -> Result<f64, RunError> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(eps)
    } else {
        Err(usage(format!("--epsilon must lie in (0, 1], got {eps}")))
    }
}

fn scheme_for(eps: f64, family: &BasisFamily) -> Result<SamplingScheme, RunError> {
    SamplingScheme::for_family(eps, family).map_err(|e| usage(e.to_string()))
}

fn positive(v: usize, flag: &str) -> Result<usize, RunError> {
    if v == 0 {
        Err(usage(format!("{flag} must be positive")))
    } else {
        Ok(v)
    }
}

fn full_section<S: gensamp_core::sections::SectionSource>(
    source: &S,
    family: &BasisFamily,
    scheme: &SamplingScheme,
    m: usize,
    n: usize,
) -> Result<SectionMatrix, RunError> {
    Ok(build_section_with(source, family, scheme, m, n, 0)?)
}

fn max_imag(v: &[C64]) -> f64 {
    v.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------- instability

#[derive(Clone, Debug, PartialEq)]
pub struct InstabilityParams {
    pub epsilons: Vec<f64>,
    pub haar_max_m: usize,
    pub legendre_max_m: usize,
}

impl InstabilityParams {
    pub fn resolve(o: &Overrides) -> Result<Self, RunError> {
        reject(o, ExperimentId::FigInstability, true, false, true, false, false)?;
        let epsilons = match o.epsilon {
            Some(e) => vec![check_epsilon(e)?],
            None => vec![1.0, 0.875, 0.5, 0.125],
        };
        let m = o.m.map(|m| positive(m, "--m")).transpose()?;
        Ok(Self {
            epsilons,
            haar_max_m: m.unwrap_or(100),
            legendre_max_m: m.unwrap_or(50),
        })
    }

    fn config(&self) -> String {
        let eps: Vec<String> = self.epsilons.iter().map(|e| e.to_string()).collect();
        format!(
            "experiment=fig-instability epsilons={} haar_m=1..{} legendre_m=2..{}:2 legendre_max_epsilon=0.5",
            eps.join(";"),
            self.haar_max_m,
            self.legendre_max_m
        )
    }
}

/// `‖(P_m U P_m)⁻¹‖` against `m` for one family and spacing.
#[derive(Clone, Debug, PartialEq)]
pub struct InstabilityCurve {
    pub family: &'static str,
    pub epsilon: f64,
    pub points: Vec<(usize, f64)>,
}

fn square_inverse_norms(family: &BasisFamily, eps: f64, sizes: &[usize]) -> Result<Vec<(usize, f64)>, RunError> {
    let scheme = scheme_for(eps, family)?;
    let max = sizes.iter().copied().max().unwrap_or(0);
    let full = full_section(&ParallelSource, family, &scheme, max, max)?;
    sizes
        .par_iter()
        .map(|&m| {
            let block = full.block().sub_block(0, 0, m, m)?;
            Ok((m, 1.0 / min_singular_value(&block)))
        })
        .collect()
}

pub fn instability_sweep(p: &InstabilityParams) -> Result<Vec<InstabilityCurve>, RunError> {
    let mut curves = Vec::new();
    let haar = BasisFamily::haar();
    let legendre = BasisFamily::legendre();
    for &eps in &p.epsilons {
        let sizes: Vec<usize> = (1..=p.haar_max_m).collect();
        curves.push(InstabilityCurve {
            family: "haar",
            epsilon: eps,
            points: square_inverse_norms(&haar, eps, &sizes)?,
        });
    }
    for &eps in &p.epsilons {
        // Legendre lives on [-1, 1], so only spacings up to 1/2 are admissible
        if eps > legendre.nyquist_spacing() {
            continue;
        }
        let sizes: Vec<usize> = (1..=p.legendre_max_m / 2).map(|k| 2 * k).collect();
        if sizes.is_empty() {
            continue;
        }
        curves.push(InstabilityCurve {
            family: "legendre",
            epsilon: eps,
            points: square_inverse_norms(&legendre, eps, &sizes)?,
        });
    }
    Ok(curves)
}

// ------------------------------------------------------------------- legendre

#[derive(Clone, Debug, PartialEq)]
pub struct LegendreParams {
    pub epsilon: f64,
    pub n_min: usize,
    pub n_max: usize,
    pub step: usize,
}

impl LegendreParams {
    pub fn resolve(o: &Overrides) -> Result<Self, RunError> {
        reject(o, ExperimentId::FigLegendre, true, true, false, false, false)?;
        let epsilon = check_epsilon(o.epsilon.unwrap_or(0.5))?;
        scheme_for(epsilon, &BasisFamily::legendre())?;
        let n_max = o.n.unwrap_or(20);
        if n_max < 4 {
            return Err(usage("--n must be at least 4 for fig-legendre"));
        }
        Ok(Self {
            epsilon,
            n_min: 4,
            n_max,
            step: 2,
        })
    }

    pub fn sizes(&self) -> Vec<usize> {
        (self.n_min..=self.n_max).step_by(self.step).collect()
    }

    fn config(&self) -> String {
        format!(
            "experiment=fig-legendre family=legendre signal=runge epsilon={} n={}..{}:{} uneven_m=4n^2 consistent_m=n",
            self.epsilon, self.n_min, self.n_max, self.step
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RungeRow {
    pub n: usize,
    pub consistent_l2: f64,
    pub uneven_l2: f64,
    pub best_l2: f64,
    pub consistent_inv_norm: f64,
}

pub fn legendre_runge(p: &LegendreParams) -> Result<Vec<RungeRow>, RunError> {
    let family = BasisFamily::legendre();
    let scheme = scheme_for(p.epsilon, &family)?;
    let sizes = p.sizes();
    let max_n = *sizes.last().expect("non-empty");
    let max_m = 4 * max_n * max_n;
    let spec = SignalSpec::term(family, CatalogTerm::Runge);
    let samples = synthesize_samples(&spec, &scheme, max_m)?;
    let full = full_section(&ParallelSource, &family, &scheme, max_m, max_n)?;

    let gl = GaussLegendre::new(64);
    let (xs, ws) = gl.composite_grid(-1.0, 1.0, 32);
    let reference: Vec<C64> = xs.iter().map(|&x| C64::new(CatalogTerm::Runge.eval(x), 0.0)).collect();
    let basis: Vec<Vec<C64>> = (0..max_n)
        .map(|j| xs.iter().map(|&x| eval_point(&family, BasisIndex::new(j + 1).expect("one-based"), x)).collect())
        .collect();
    let l2 = |coeffs: &[C64]| -> Result<f64, RunError> {
        let approx: Vec<C64> = (0..xs.len())
            .map(|i| coeffs.iter().enumerate().map(|(j, c)| c * basis[j][i]).sum())
            .collect();
        Ok(error_metrics(&approx, &reference, &ws)?.0)
    };
    let best: Vec<C64> = (0..max_n)
        .map(|j| (0..xs.len()).map(|i| reference[i] * basis[j][i].conj() * ws[i]).sum())
        .collect();

    sizes
        .par_iter()
        .map(|&n| {
            let square = build_sub(&full, n, n)?;
            let consistent = solve_consistent(&square, &samples.truncated(n)?)?;
            let m = 4 * n * n;
            let uneven_sec = build_sub(&full, m, n)?;
            let uneven = solve_uneven(&uneven_sec, &samples.truncated(m)?)?;
            Ok(RungeRow {
                n,
                consistent_l2: l2(consistent.coefficients.as_slice())?,
                uneven_l2: l2(uneven.coefficients.as_slice())?,
                best_l2: l2(&best[..n])?,
                consistent_inv_norm: consistent.inv_norm,
            })
        })
        .collect()
}

/// Leading `m × n` block of a section assembled from the first column.
fn build_sub(full: &SectionMatrix, m: usize, n: usize) -> Result<SectionMatrix, RunError> {
    let rows = full.truncated(m)?;
    if rows.cols() == n {
        return Ok(rows);
    }
    Ok(build_section_with(&SubBlock(&rows), rows.family(), rows.scheme(), m, n, 0)?)
}

/// Serves entries from an already assembled section.
struct SubBlock<'a>(&'a SectionMatrix);

impl gensamp_core::sections::SectionSource for SubBlock<'_> {
    fn fill_row(&self, _: &BasisFamily, _: &SamplingScheme, row: usize, col_offset: usize, out: &mut [C64]) {
        let r = self.0.block().row(row - 1);
        out.copy_from_slice(&r[col_offset..col_offset + out.len()]);
    }
}

// ---------------------------------------------------------------------- knmm

#[derive(Clone, Debug, PartialEq)]
pub struct KnmmParams {
    pub epsilon: f64,
    pub configs: Vec<(usize, usize)>,
    pub step: usize,
    pub max_tail: usize,
}

/// Tail sizes that must appear in every sweep.
pub const KNMM_CHECKPOINTS: [usize; 4] = [500, 1000, 2000, 6000];

impl KnmmParams {
    pub fn resolve(o: &Overrides) -> Result<Self, RunError> {
        reject(o, ExperimentId::FigKnmm, true, true, true, false, false)?;
        let epsilon = check_epsilon(o.epsilon.unwrap_or(0.5))?;
        scheme_for(epsilon, &BasisFamily::haar())?;
        let configs = match (o.n, o.m) {
            (None, None) => vec![(75, 350), (100, 400)],
            (Some(n), Some(m)) => {
                positive(n, "--n")?;
                if m < n {
                    return Err(usage("--m must be at least --n"));
                }
                vec![(n, m)]
            }
            _ => return Err(usage("fig-knmm needs --n and --m together")),
        };
        let max_tail = configs.iter().map(|c| 8 * c.0).max().unwrap_or(0).max(6000);
        Ok(Self {
            epsilon,
            configs,
            step: 25,
            max_tail,
        })
    }

    pub fn tails(&self, n: usize) -> Vec<usize> {
        let mut t: Vec<usize> = (1..=self.max_tail / self.step).map(|k| k * self.step).filter(|&m| m > n).collect();
        t.extend(KNMM_CHECKPOINTS.iter().copied().filter(|&m| m > n));
        t.sort_unstable();
        t.dedup();
        t
    }

    fn config(&self) -> String {
        let c: Vec<String> = self.configs.iter().map(|(n, m)| format!("{n}x{m}")).collect();
        format!(
            "experiment=fig-knmm family=haar epsilon={} configs={} M_step={} M_max={}",
            self.epsilon,
            c.join(";"),
            self.step,
            self.max_tail
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KnmmCurve {
    pub n: usize,
    pub m: usize,
    pub points: Vec<TailPoint>,
    pub k_upper: f64,
}

impl KnmmCurve {
    pub fn at(&self, big_m: usize) -> Option<f64> {
        self.points.iter().find(|p| p.big_m == big_m).map(|p| p.k)
    }

    /// Relative change over the last doubling-or-more step of the sweep.
    pub fn converged(&self) -> bool {
        match self.points.len() {
            0 | 1 => false,
            len => {
                let last = self.points[len - 1].k;
                let half = self.points[len - 1].big_m / 2;
                let prev = self.points.iter().rev().find(|p| p.big_m <= half).unwrap_or(&self.points[len - 2]).k;
                last == 0.0 || (last - prev).abs() <= TAIL_CONVERGENCE * last
            }
        }
    }
}

pub fn knmm_sweep(p: &KnmmParams) -> Result<Vec<KnmmCurve>, RunError> {
    let family = BasisFamily::haar();
    let scheme = scheme_for(p.epsilon, &family)?;
    let analyzer = Analyzer::with_source(family, scheme, ParallelSource);
    p.configs
        .iter()
        .map(|&(n, m)| {
            Ok(KnmmCurve {
                n,
                m,
                points: analyzer.k_lower_sweep(n, m, &p.tails(n))?,
                k_upper: analyzer.k_upper(n, m)?,
            })
        })
        .collect()
}

// ----------------------------------------------------------------------- psi

#[derive(Clone, Debug, PartialEq)]
pub struct PsiParams {
    pub epsilon: f64,
    pub n_step: usize,
    pub n_max: usize,
    pub thetas: [f64; 2],
}

impl PsiParams {
    pub fn resolve(o: &Overrides) -> Result<Self, RunError> {
        reject(o, ExperimentId::FigPsi, true, true, false, false, false)?;
        let epsilon = check_epsilon(o.epsilon.unwrap_or(0.5))?;
        scheme_for(epsilon, &BasisFamily::haar())?;
        let n_max = o.n.unwrap_or(200);
        if n_max < 10 {
            return Err(usage("--n must be at least 10 for fig-psi"));
        }
        Ok(Self {
            epsilon,
            n_step: 10,
            n_max,
            thetas: [1.0, 2.0],
        })
    }

    pub fn sizes(&self) -> Vec<usize> {
        (1..=self.n_max / self.n_step).map(|k| k * self.n_step).collect()
    }

    fn config(&self) -> String {
        format!(
            "experiment=fig-psi family=haar epsilon={} n={}..{}:{} thetas=1;2",
            self.epsilon, self.n_step, self.n_max, self.n_step
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsiCurve {
    pub theta: f64,
    pub points: Vec<(usize, usize)>,
}

pub fn psi_sweep(p: &PsiParams) -> Result<Vec<PsiCurve>, RunError> {
    let family = BasisFamily::haar();
    let scheme = scheme_for(p.epsilon, &family)?;
    let cache = RowCache::new();
    let analyzer = Analyzer::with_source(family, scheme, &cache);
    p.thetas
        .iter()
        .map(|&theta| {
            let points = p
                .sizes()
                .par_iter()
                .map(|&n| {
                    let q = ThresholdQuery::new(n, theta, p.epsilon)?;
                    Ok((n, analyzer.psi_tilde(&q)?))
                })
                .collect::<Result<Vec<_>, RunError>>()?;
            Ok(PsiCurve { theta, points })
        })
        .collect()
}

// ----------------------------------------------------------------- stability

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityParams {
    pub epsilon: f64,
    pub n_max: usize,
}

impl StabilityParams {
    pub fn resolve(o: &Overrides) -> Result<Self, RunError> {
        reject(o, ExperimentId::FigStability, true, true, false, false, false)?;
        let epsilon = check_epsilon(o.epsilon.unwrap_or(0.5))?;
        scheme_for(epsilon, &BasisFamily::haar())?;
        let n_max = o.n.unwrap_or(360);
        if n_max < 2 {
            return Err(usage("--n must be at least 2 for fig-stability"));
        }
        Ok(Self { epsilon, n_max })
    }

    pub fn sizes(&self) -> Vec<usize> {
        (1..=self.n_max / 2).map(|k| 2 * k).collect()
    }

    fn config(&self) -> String {
        format!(
            "experiment=fig-stability family=haar epsilon={} n=2..{}:2 m=ceil(4.9n) value=inv_norm/epsilon",
            self.epsilon, self.n_max
        )
    }
}

/// `‖(εA)⁻¹‖ = ‖A⁻¹‖/ε` with `m = ⌈4.9n⌉`.
pub fn stability_sweep(p: &StabilityParams) -> Result<Vec<(usize, f64)>, RunError> {
    let family = BasisFamily::haar();
    let scheme = scheme_for(p.epsilon, &family)?;
    let cache = RowCache::new();
    let analyzer = Analyzer::with_source(family, scheme, &cache);
    p.sizes()
        .par_iter()
        .map(|&n| Ok((n, analyzer.gram_inverse_norm(n, samples_for(n))? / p.epsilon)))
        .collect()
}

// ------------------------------------------------------------ reconstructions

#[derive(Clone, Debug, PartialEq)]
pub struct ReconParams {
    pub epsilon: f64,
    pub n: usize,
    pub m: usize,
    pub grid: usize,
    pub seed: u64,
    /// Number of random Haar coefficients in the pointwise example.
    pub terms: usize,
}

/// Common output of the two reconstruction examples.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub grid: Vec<f64>,
    pub reference: Vec<C64>,
    pub generalized: Vec<C64>,
    pub baseline: Vec<C64>,
    pub result: ReconstructionResult,
    pub k_tilde: f64,
    /// Ordered `(key, value)` diagnostics.
    pub diagnostics: Vec<(String, f64)>,
}

impl Reconstruction {
    pub fn diagnostic(&self, key: &str) -> Option<f64> {
        self.diagnostics.iter().find(|d| d.0 == key).map(|d| d.1)
    }
}

fn solve_haar(p: &ReconParams, spec: &SignalSpec) -> Result<(SampleVector, ReconstructionResult), RunError> {
    let family = spec.family;
    let scheme = scheme_for(p.epsilon, &family)?;
    let samples = synthesize_samples(spec, &scheme, p.m)?;
    let section = full_section(&ParallelSource, &family, &scheme, p.m, p.n)?;
    let result = solve_uneven(&section, &samples)?;
    Ok((samples, result))
}

fn eval_parallel(result: &ReconstructionResult, grid: &[f64], domain: Domain) -> Vec<C64> {
    grid.par_chunks(64).flat_map_iter(|c| eval_reconstruction(result, c, domain)).collect()
}

impl ReconParams {
    pub fn fourier(o: &Overrides) -> Result<Self, RunError> {
        reject(o, ExperimentId::ExFourierRecon, true, true, true, true, false)?;
        let p = Self {
            epsilon: check_epsilon(o.epsilon.unwrap_or(0.5))?,
            n: positive(o.n.unwrap_or(500), "--n")?,
            m: o.m.unwrap_or(1801),
            grid: positive(o.grid.unwrap_or(4096), "--grid")?,
            seed: 0,
            terms: 0,
        };
        if p.m < p.n {
            return Err(usage("--m must be at least --n"));
        }
        if p.m % 2 == 0 {
            return Err(usage("--m must be odd so the truncated Fourier series is symmetric"));
        }
        scheme_for(p.epsilon, &BasisFamily::haar())?;
        Ok(p)
    }

    pub fn pointwise(o: &Overrides) -> Result<Self, RunError> {
        reject(o, ExperimentId::ExPointwiseRecon, true, true, true, true, true)?;
        let p = Self {
            epsilon: check_epsilon(o.epsilon.unwrap_or(0.5))?,
            n: positive(o.n.unwrap_or(500), "--n")?,
            m: o.m.unwrap_or(1201),
            grid: positive(o.grid.unwrap_or(5000), "--grid")?,
            seed: o.seed.unwrap_or(SeededLcg::DEFAULT_SEED),
            terms: 400,
        };
        if p.m < p.n {
            return Err(usage("--m must be at least --n"));
        }
        if p.terms > p.n {
            return Err(usage("--n must be at least the 400 signal terms"));
        }
        scheme_for(p.epsilon, &BasisFamily::haar())?;
        Ok(p)
    }

    fn fourier_config(&self) -> String {
        format!(
            "experiment=ex-fourier-recon family=haar signal=cos(2pi t) on [0.5,1] epsilon={} n={} m={} grid={} midpoints on [0,1] jump_margin=0.01",
            self.epsilon, self.n, self.m, self.grid
        )
    }

    fn pointwise_config(&self) -> String {
        format!(
            "experiment=ex-pointwise-recon family=haar signal={} random haar terms in [0,10) + sin(2pi t) on [0.3,0.6] seed={} epsilon={} n={} m={} grid=integers in [-{},{}] far_field=[{},{}]",
            self.terms,
            self.seed,
            self.epsilon,
            self.n,
            self.m,
            self.grid,
            self.grid,
            self.far_field().0,
            self.grid
        )
    }

    /// Window of the pointwise example used for the far-field comparison.
    pub fn far_field(&self) -> (i64, i64) {
        let g = self.grid as i64;
        (g * 4 / 5, g)
    }
}

/// Jumps of the cosine example.
pub const JUMPS: [f64; 3] = [0.0, 0.5, 1.0];
pub const JUMP_MARGIN: f64 = 0.01;

pub fn away_from_jumps(x: f64) -> bool {
    JUMPS.iter().all(|&j| (x - j).abs() > JUMP_MARGIN)
}

fn linf_where(a: &[C64], b: &[C64], keep: impl Fn(usize) -> bool) -> f64 {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|(i, _)| keep(*i))
        .map(|(_, (x, y))| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn fourier_recon(p: &ReconParams) -> Result<Reconstruction, RunError> {
    let family = BasisFamily::haar();
    let spec = SignalSpec::term(family, CatalogTerm::CosineHalf);
    let (samples, result) = solve_haar(p, &spec)?;
    let grid: Vec<f64> = (0..p.grid).map(|i| (i as f64 + 0.5) / p.grid as f64).collect();
    let reference: Vec<C64> = grid.iter().map(|&x| spec.eval(x)).collect();
    let generalized = eval_parallel(&result, &grid, Domain::Signal);
    let baseline: Vec<C64> = grid
        .par_chunks(64)
        .map(|c| baseline_truncated_fourier(&samples, c))
        .collect::<Result<Vec<_>, _>>()?
        .concat();
    let weights = vec![1.0 / p.grid as f64; p.grid];
    let (l2, linf) = error_metrics(&generalized, &reference, &weights)?;
    let (bl2, blinf) = error_metrics(&baseline, &reference, &weights)?;
    let away = |i: usize| away_from_jumps(grid[i]);
    let linf_away = linf_where(&generalized, &reference, away);
    let blinf_away = linf_where(&baseline, &reference, away);
    let k_tilde = result.inv_norm.sqrt();
    let diagnostics = vec![
        ("inv_norm".to_string(), result.inv_norm),
        ("k_tilde".to_string(), k_tilde),
        ("l2_error".to_string(), l2),
        ("linf_error".to_string(), linf),
        ("baseline_l2_error".to_string(), bl2),
        ("baseline_linf_error".to_string(), blinf),
        ("linf_error_away_from_jumps".to_string(), linf_away),
        ("baseline_linf_error_away_from_jumps".to_string(), blinf_away),
        ("improvement_away_from_jumps".to_string(), blinf_away / linf_away),
        ("max_imag_residue".to_string(), max_imag(&generalized)),
    ];
    Ok(Reconstruction {
        grid,
        reference,
        generalized,
        baseline,
        result,
        k_tilde,
        diagnostics,
    })
}

/// Signal of the pointwise example: seeded Haar terms plus the sine bump.
pub fn pointwise_signal(p: &ReconParams) -> SignalSpec {
    let mut lcg = SeededLcg::new(p.seed);
    let coefficients = (0..p.terms).map(|_| C64::new(lcg.next_coefficient(), 0.0)).collect();
    SignalSpec {
        family: BasisFamily::haar(),
        coefficients,
        term: Some(CatalogTerm::SineBump),
        allow_quadrature: false,
    }
}

pub fn pointwise_recon(p: &ReconParams) -> Result<Reconstruction, RunError> {
    let spec = pointwise_signal(p);
    let (samples, result) = solve_haar(p, &spec)?;
    let g = p.grid as i64;
    let grid: Vec<f64> = (-g..=g).map(|t| t as f64).collect();
    let reference: Vec<C64> = grid
        .par_iter()
        .map(|&t| spec.transform(t, None))
        .collect::<Result<Vec<_>, _>>()?;
    let generalized = eval_parallel(&result, &grid, Domain::Transform);
    let baseline: Vec<C64> = grid.par_chunks(64).flat_map_iter(|c| baseline_sinc(&samples, c)).collect();
    let weights = vec![1.0; grid.len()];
    let (l2, linf) = error_metrics(&generalized, &reference, &weights)?;
    let (bl2, blinf) = error_metrics(&baseline, &reference, &weights)?;
    let (lo, hi) = p.far_field();
    let far = |i: usize| {
        let t = grid[i] as i64;
        t >= lo && t <= hi
    };
    let far_err = linf_where(&generalized, &reference, far);
    let far_base = linf_where(&baseline, &reference, far);
    let k_tilde = result.inv_norm.sqrt();
    let diagnostics = vec![
        ("inv_norm".to_string(), result.inv_norm),
        ("k_tilde".to_string(), k_tilde),
        ("l2_error".to_string(), l2),
        ("linf_error".to_string(), linf),
        ("baseline_l2_error".to_string(), bl2),
        ("baseline_linf_error".to_string(), blinf),
        ("far_field_linf_error".to_string(), far_err),
        ("baseline_far_field_linf_error".to_string(), far_base),
        ("far_field_improvement".to_string(), far_base / far_err),
    ];
    Ok(Reconstruction {
        grid,
        reference,
        generalized,
        baseline,
        result,
        k_tilde,
        diagnostics,
    })
}

// ------------------------------------------------------------------- shannon

#[derive(Clone, Debug, PartialEq)]
pub struct ShannonParams {
    pub epsilon: f64,
    pub n: usize,
    pub m: usize,
}

impl ShannonParams {
    pub fn resolve(o: &Overrides) -> Result<Self, RunError> {
        reject(o, ExperimentId::ShannonCheck, true, true, true, false, false)?;
        let epsilon = check_epsilon(o.epsilon.unwrap_or(0.5))?;
        // the cosine term lives on [1/2, 1], inside [-1/(2ε), 1/(2ε)] only for ε ≤ 1/2
        if epsilon > 0.5 {
            return Err(usage("shannon-check needs --epsilon <= 0.5 so the signal fits the exponential support"));
        }
        let n = o.n.unwrap_or(101);
        if n < 2 {
            return Err(usage("--n must be at least 2 for shannon-check"));
        }
        let m = o.m.unwrap_or(n);
        if m < n {
            return Err(usage("--m must be at least --n"));
        }
        Ok(Self { epsilon, n, m })
    }

    /// Column count used for the tail check, which needs `n < M ≤ m`.
    pub fn tail_n(&self) -> usize {
        self.n / 2
    }

    fn config(&self) -> String {
        format!(
            "experiment=shannon-check family=fourier-exp signal=cos(2pi t) on [0.5,1] epsilon={} n={} m={} tail_n={}",
            self.epsilon,
            self.n,
            self.m,
            self.tail_n()
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShannonOutcome {
    /// `(k, β̃_k, √ε f(ρ(k)))`.
    pub coefficients: Vec<(usize, C64, C64)>,
    pub max_error: f64,
    pub tail: Vec<TailPoint>,
    pub inv_norm: f64,
}

pub fn shannon_check(p: &ShannonParams) -> Result<ShannonOutcome, RunError> {
    let family = BasisFamily::fourier_exp(p.epsilon)?;
    let scheme = scheme_for(p.epsilon, &family)?;
    let spec = SignalSpec::term(family, CatalogTerm::CosineHalf);
    let samples = synthesize_samples(&spec, &scheme, p.m)?;
    let section = full_section(&ParallelSource, &family, &scheme, p.m, p.n)?;
    let r = solve_uneven(&section, &samples)?;
    let root = p.epsilon.sqrt();
    let coefficients: Vec<(usize, C64, C64)> = (0..p.n)
        .map(|k| (k + 1, r.coefficients[k], samples.values()[k] * root))
        .collect();
    let max_error = coefficients.iter().map(|c| (c.1 - c.2).norm()).fold(0.0, f64::max);
    let tn = p.tail_n().max(1);
    let tails: Vec<usize> = (tn + 1..=p.m).collect();
    let analyzer = Analyzer::with_source(family, scheme, ParallelSource);
    let tail = analyzer.k_lower_sweep(tn, p.m, &tails)?;
    Ok(ShannonOutcome {
        coefficients,
        max_error,
        tail,
        inv_norm: r.inv_norm,
    })
}

// ---------------------------------------------------------------------- run

/// Tables, the configuration comment and the summary line of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub config: String,
    pub tables: Vec<Table>,
    pub summary: String,
}

fn eps_tag(e: f64) -> String {
    e.to_string()
}

fn recon_tables(r: &Reconstruction, transform_domain: bool) -> Vec<Table> {
    let x_name = if transform_domain { "t" } else { "x" };
    let mut rec = Table::new(
        "reconstruction.csv",
        &[x_name, "reference", "generalized", "baseline", "generalized_modulus"],
    );
    for i in 0..r.grid.len() {
        rec.push(vec![
            r.grid[i].into(),
            r.reference[i].re.into(),
            r.generalized[i].re.into(),
            r.baseline[i].re.into(),
            r.generalized[i].norm().into(),
        ]);
    }
    let mut coef = Table::new("coefficients.csv", &["index", "real", "imag"]);
    for (j, c) in r.result.coefficients.iter().enumerate() {
        coef.push(vec![(j + 1).into(), c.re.into(), c.im.into()]);
    }
    let mut diag = Table::new("diagnostics.csv", &["key", "value"]);
    diag.push(vec!["n".into(), r.result.n_used.into()]);
    diag.push(vec!["m".into(), r.result.m_used.into()]);
    for (k, v) in &r.diagnostics {
        diag.push(vec![k.as_str().into(), (*v).into()]);
    }
    vec![rec, coef, diag]
}

pub fn compute(id: ExperimentId, o: &Overrides) -> Result<Outcome, RunError> {
    match id {
        ExperimentId::FigInstability => {
            let p = InstabilityParams::resolve(o)?;
            let curves = instability_sweep(&p)?;
            let tables = curves
                .iter()
                .map(|c| {
                    let mut t = Table::new(format!("instability_{}_eps{}.csv", c.family, eps_tag(c.epsilon)), &["m", "inv_norm"]);
                    for &(m, v) in &c.points {
                        t.push(vec![m.into(), v.into()]);
                    }
                    t
                })
                .collect::<Vec<_>>();
            let peak = curves
                .iter()
                .map(|c| format!("{}@{}:max={}", c.family, c.epsilon, format_float(c.points.iter().map(|p| p.1).fold(0.0, f64::max))))
                .collect::<Vec<_>>();
            Ok(Outcome {
                config: p.config(),
                summary: format!("fig-instability: {} curves; {}", curves.len(), peak.join(" ")),
                tables,
            })
        }
        ExperimentId::FigLegendre => {
            let p = LegendreParams::resolve(o)?;
            let rows = legendre_runge(&p)?;
            let mut tables = Vec::new();
            for (name, get) in [
                ("legendre_consistent.csv", (|r: &RungeRow| r.consistent_l2) as fn(&RungeRow) -> f64),
                ("legendre_uneven.csv", |r: &RungeRow| r.uneven_l2),
                ("legendre_best.csv", |r: &RungeRow| r.best_l2),
            ] {
                let mut t = Table::new(name, &["n", "l2_error"]);
                for r in &rows {
                    t.push(vec![r.n.into(), get(r).into()]);
                }
                tables.push(t);
            }
            let last = rows.last().expect("non-empty");
            Ok(Outcome {
                config: p.config(),
                summary: format!(
                    "fig-legendre: n={} consistent_l2={} uneven_l2={} best_l2={}",
                    last.n,
                    format_float(last.consistent_l2),
                    format_float(last.uneven_l2),
                    format_float(last.best_l2)
                ),
                tables,
            })
        }
        ExperimentId::FigKnmm => {
            let p = KnmmParams::resolve(o)?;
            let curves = knmm_sweep(&p)?;
            let tables = curves
                .iter()
                .map(|c| {
                    let mut t = Table::new(format!("knmm_n{}_m{}.csv", c.n, c.m), &["M", "k_lower"]);
                    for pt in &c.points {
                        t.push(vec![pt.big_m.into(), pt.k.into()]);
                    }
                    t
                })
                .collect();
            let s: Vec<String> = curves
                .iter()
                .map(|c| {
                    format!(
                        "n={} m={} K(M={})={} k_upper={} converged={}",
                        c.n,
                        c.m,
                        c.points.last().map_or(0, |p| p.big_m),
                        format_float(c.points.last().map_or(0.0, |p| p.k)),
                        format_float(c.k_upper),
                        c.converged()
                    )
                })
                .collect();
            Ok(Outcome {
                config: p.config(),
                summary: format!("fig-knmm: {}", s.join("; ")),
                tables,
            })
        }
        ExperimentId::FigPsi => {
            let p = PsiParams::resolve(o)?;
            let curves = psi_sweep(&p)?;
            let tables = curves
                .iter()
                .map(|c| {
                    let mut t = Table::new(format!("psi_theta{}.csv", c.theta), &["n", "psi_tilde"]);
                    for &(n, v) in &c.points {
                        t.push(vec![n.into(), v.into()]);
                    }
                    t
                })
                .collect();
            let s: Vec<String> = curves
                .iter()
                .map(|c| {
                    let r = c.points.iter().map(|&(n, v)| v as f64 / n as f64).fold(0.0, f64::max);
                    format!("theta={} max psi/n={r:.4}", c.theta)
                })
                .collect();
            Ok(Outcome {
                config: p.config(),
                summary: format!("fig-psi: {}", s.join("; ")),
                tables,
            })
        }
        ExperimentId::FigStability => {
            let p = StabilityParams::resolve(o)?;
            let pts = stability_sweep(&p)?;
            let mut t = Table::new("stability.csv", &["n", "scaled_inv_norm"]);
            for &(n, v) in &pts {
                t.push(vec![n.into(), v.into()]);
            }
            let max = pts.iter().map(|p| p.1).fold(0.0, f64::max);
            Ok(Outcome {
                config: p.config(),
                summary: format!("fig-stability: {} points, max inv_norm/epsilon={}", pts.len(), format_float(max)),
                tables: vec![t],
            })
        }
        ExperimentId::ExFourierRecon => {
            let p = ReconParams::fourier(o)?;
            let r = fourier_recon(&p)?;
            let d = |k| r.diagnostic(k).unwrap_or(f64::NAN);
            Ok(Outcome {
                config: p.fourier_config(),
                summary: format!(
                    "ex-fourier-recon: inv_norm={:.4} k_tilde={:.4} l2_error={:.3e} linf_error_away_from_jumps={:.3e} baseline={:.3e}",
                    r.result.inv_norm,
                    r.k_tilde,
                    d("l2_error"),
                    d("linf_error_away_from_jumps"),
                    d("baseline_linf_error_away_from_jumps")
                ),
                tables: recon_tables(&r, false),
            })
        }
        ExperimentId::ExPointwiseRecon => {
            let p = ReconParams::pointwise(o)?;
            let r = pointwise_recon(&p)?;
            let d = |k| r.diagnostic(k).unwrap_or(f64::NAN);
            Ok(Outcome {
                config: p.pointwise_config(),
                summary: format!(
                    "ex-pointwise-recon: inv_norm={:.4} k_tilde={:.4} far_field_error={:.3e} baseline={:.3e} improvement={:.1}",
                    r.result.inv_norm,
                    r.k_tilde,
                    d("far_field_linf_error"),
                    d("baseline_far_field_linf_error"),
                    d("far_field_improvement")
                ),
                tables: recon_tables(&r, true),
            })
        }
        ExperimentId::ShannonCheck => {
            let p = ShannonParams::resolve(o)?;
            let s = shannon_check(&p)?;
            let mut coef = Table::new("shannon_coefficients.csv", &["index", "abs_error"]);
            for (k, got, want) in &s.coefficients {
                coef.push(vec![(*k).into(), (got - want).norm().into()]);
            }
            let mut tail = Table::new("shannon_tail.csv", &["M", "k_lower"]);
            for pt in &s.tail {
                tail.push(vec![pt.big_m.into(), pt.k.into()]);
            }
            let kmax = s.tail.iter().map(|p| p.k).fold(0.0, f64::max);
            let verdict = if s.max_error <= 1e-12 { "<=" } else { ">" };
            Ok(Outcome {
                config: p.config(),
                summary: format!(
                    "shannon-check: max coefficient error {} {verdict} 1e-12; max K_(n,m,M) over M <= m: {}",
                    format_float(s.max_error),
                    format_float(kmax)
                ),
                tables: vec![coef, tail],
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

pub fn run(config: &ExperimentConfig) -> Result<RunReport, RunError> {
    let outcome = compute(config.id, &config.overrides)?;
    let files = write_tables(&config.out_dir, &outcome.config, &outcome.tables)?;
    Ok(RunReport {
        files,
        summary: outcome.summary,
    })
}
