//! Sample ordering and rectangular finite sections of the cross-Gramian `U`.

use alloc::vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bases::{eval_fourier, BasisFamily, BasisIndex};
use crate::numerics::ComplexMatrix;
use crate::{Error, Result, C64};

/// Relative slack when comparing a spacing with its Nyquist bound.
const NYQUIST_SLACK: f64 = 1e-12;

/// Frequency of the `i`-th sample: `0, ε, -ε, 2ε, -2ε, …`.
pub fn rho(i: usize, epsilon: f64) -> Result<f64> {
    if i == 0 {
        return Err(Error::InvalidIndex { index: 0 });
    }
    let k = (i / 2) as f64;
    Ok(if i % 2 == 0 { k * epsilon } else { -k * epsilon })
}

/// Sample spacing together with the support radius it was validated against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingScheme {
    epsilon: f64,
    radius: f64,
}

impl SamplingScheme {
    /// Checks `0 < ε ≤ 1` and `ε ≤ 1/(2T)`.
    pub fn new(epsilon: f64, radius: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::InvalidParameter("sample spacing must lie in (0, 1]"));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter("support radius must be positive"));
        }
        let max_epsilon = 0.5 / radius;
        if epsilon > max_epsilon * (1.0 + NYQUIST_SLACK) {
            return Err(Error::Nyquist {
                epsilon,
                max_epsilon,
            });
        }
        Ok(Self { epsilon, radius })
    }

    pub fn for_family(epsilon: f64, family: &BasisFamily) -> Result<Self> {
        Self::new(epsilon, family.support_radius())
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Frequency of row `i` (one-based).
    pub fn frequency(&self, i: usize) -> Result<f64> {
        rho(i, self.epsilon)
    }
}

/// Produces the entries of `U`. Implementations may cache, but must return
/// values bit-identical to [`eval_fourier`].
pub trait SectionSource {
    /// Fills `out[j]` with `u_{row, col_offset + j + 1}`, `row` one-based.
    fn fill_row(&self, family: &BasisFamily, scheme: &SamplingScheme, row: usize, col_offset: usize, out: &mut [C64]);

    /// Fills a row-major `rows × out.len()/rows` block starting at row 1.
    fn fill_block(&self, family: &BasisFamily, scheme: &SamplingScheme, rows: usize, col_offset: usize, out: &mut [C64]) {
        if rows == 0 {
            return;
        }
        let cols = out.len() / rows;
        for (i, chunk) in out.chunks_mut(cols.max(1)).enumerate().take(rows) {
            self.fill_row(family, scheme, i + 1, col_offset, chunk);
        }
    }
}

/// Evaluates every entry from the closed forms.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectSource;

impl SectionSource for DirectSource {
    fn fill_row(&self, family: &BasisFamily, scheme: &SamplingScheme, row: usize, col_offset: usize, out: &mut [C64]) {
        let omega = rho(row, scheme.epsilon).expect("rows are one-based");
        for (j, v) in out.iter_mut().enumerate() {
            *v = eval_fourier(family, BasisIndex::from_zero_based(col_offset + j), omega);
        }
    }
}

impl<S: SectionSource + ?Sized> SectionSource for &S {
    fn fill_row(&self, family: &BasisFamily, scheme: &SamplingScheme, row: usize, col_offset: usize, out: &mut [C64]) {
        (**self).fill_row(family, scheme, row, col_offset, out)
    }

    fn fill_block(&self, family: &BasisFamily, scheme: &SamplingScheme, rows: usize, col_offset: usize, out: &mut [C64]) {
        (**self).fill_block(family, scheme, rows, col_offset, out)
    }
}

/// The block `P_m U (P_{offset+n} - P_offset)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionMatrix {
    block: ComplexMatrix,
    scheme: SamplingScheme,
    family: BasisFamily,
    col_offset: usize,
}

impl SectionMatrix {
    pub fn block(&self) -> &ComplexMatrix {
        &self.block
    }

    pub fn into_block(self) -> ComplexMatrix {
        self.block
    }

    pub fn scheme(&self) -> &SamplingScheme {
        &self.scheme
    }

    pub fn family(&self) -> &BasisFamily {
        &self.family
    }

    pub fn col_offset(&self) -> usize {
        self.col_offset
    }

    pub fn rows(&self) -> usize {
        self.block.rows()
    }

    pub fn cols(&self) -> usize {
        self.block.cols()
    }

    /// Leading `rows` rows, i.e. the section with fewer samples.
    pub fn truncated(&self, rows: usize) -> Result<Self> {
        Ok(Self {
            block: self.block.sub_block(0, 0, rows, self.cols())?,
            ..self.clone()
        })
    }
}

fn check_scheme(family: &BasisFamily, scheme: &SamplingScheme) -> Result<()> {
    let max_epsilon = family.nyquist_spacing();
    if scheme.epsilon > max_epsilon * (1.0 + NYQUIST_SLACK) {
        return Err(Error::Nyquist {
            epsilon: scheme.epsilon,
            max_epsilon,
        });
    }
    Ok(())
}

/// Assembles rows `1..=m` and columns `col_offset+1 ..= col_offset+n`.
pub fn build_section_with<S: SectionSource>(
    source: &S,
    family: &BasisFamily,
    scheme: &SamplingScheme,
    m: usize,
    n: usize,
    col_offset: usize,
) -> Result<SectionMatrix> {
    check_scheme(family, scheme)?;
    let mut data = vec![C64::new(0.0, 0.0); m * n];
    if n > 0 {
        source.fill_block(family, scheme, m, col_offset, &mut data);
    }
    Ok(SectionMatrix {
        block: ComplexMatrix::new(m, n, data)?,
        scheme: *scheme,
        family: *family,
        col_offset,
    })
}

pub fn build_section(family: &BasisFamily, scheme: &SamplingScheme, m: usize, n: usize, col_offset: usize) -> Result<SectionMatrix> {
    build_section_with(&DirectSource, family, scheme, m, n, col_offset)
}

/// The square finite section `P_m U P_m`.
pub fn build_square_section(family: &BasisFamily, scheme: &SamplingScheme, m: usize) -> Result<SectionMatrix> {
    build_section(family, scheme, m, m, 0)
}
