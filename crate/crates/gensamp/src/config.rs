//! Experiment selection and command-line overrides.

use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum ExperimentId {
    FigInstability,
    FigLegendre,
    FigKnmm,
    FigPsi,
    FigStability,
    ExFourierRecon,
    ExPointwiseRecon,
    ShannonCheck,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 8] = [
        ExperimentId::FigInstability,
        ExperimentId::FigLegendre,
        ExperimentId::FigKnmm,
        ExperimentId::FigPsi,
        ExperimentId::FigStability,
        ExperimentId::ExFourierRecon,
        ExperimentId::ExPointwiseRecon,
        ExperimentId::ShannonCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::FigInstability => "fig-instability",
            ExperimentId::FigLegendre => "fig-legendre",
            ExperimentId::FigKnmm => "fig-knmm",
            ExperimentId::FigPsi => "fig-psi",
            ExperimentId::FigStability => "fig-stability",
            ExperimentId::ExFourierRecon => "ex-fourier-recon",
            ExperimentId::ExPointwiseRecon => "ex-pointwise-recon",
            ExperimentId::ShannonCheck => "shannon-check",
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Optional replacements for an experiment's defaults. Which ones apply
/// depends on the experiment; the rest are rejected.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides {
    pub epsilon: Option<f64>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub id: ExperimentId,
    pub out_dir: PathBuf,
    pub overrides: Overrides,
}

impl ExperimentConfig {
    pub fn new(id: ExperimentId, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            id,
            out_dir: out_dir.into(),
            overrides: Overrides::default(),
        }
    }
}
