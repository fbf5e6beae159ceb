//! Reconstruction bases and their Fourier transforms.
//!
//! Fourier convention: `(Ff)(ω) = ∫ f(x) e^{-2πixω} dx`.
//!
//! Three families are provided:
//!
//! * Haar system on `[0, a]` (integer `a`, default 1), ordered coarse to fine:
//!   `φ_0, …, φ_{a-1}, ψ_{0,0}, …, ψ_{0,a-1}, ψ_{1,0}, …`. For `a = 1` the
//!   first `2^J` functions span exactly the levels `j < J`.
//! * Legendre polynomials on `[-1, 1]`, normalized to unit `L²` norm.
//! * Complex exponentials `√ε e^{2πiρ(l)x}` on `[-1/(2ε), 1/(2ε)]`, the basis
//!   in which generalized sampling reduces to the classical Shannon series.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::quadrature::{oscillation_pieces, GaussLegendre};
use crate::sections::rho;
use crate::{Error, Result, C64};

/// Nodes per smooth piece of the quadrature oracle.
pub const ORACLE_NODES: usize = 64;

/// Half-width of the band around zero where `sinc` switches to its series.
const SINC_GUARD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BasisKind {
    /// Haar scaling functions and wavelets on `[0, width]`.
    Haar { width: u32 },
    Legendre,
    /// Exponentials on the grid `spacing · Z`.
    FourierExp { spacing: f64 },
}

/// Algebraic decay `|Fφ(ω)| ≤ c / |ω|^p` of the generating functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayBound {
    pub c: f64,
    pub p: u32,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisFamily {
    kind: BasisKind,
    riesz_lower: f64,
    riesz_upper: f64,
    decay: Option<DecayBound>,
}

impl BasisFamily {
    /// Haar system on `[0, 1]`.
    pub fn haar() -> Self {
        Self::haar_on(1).expect("unit width is valid")
    }

    pub fn haar_on(width: u32) -> Result<Self> {
        if width == 0 {
            return Err(Error::InvalidParameter("Haar width must be positive"));
        }
        Ok(Self {
            kind: BasisKind::Haar { width },
            riesz_lower: 1.0,
            riesz_upper: 1.0,
            // |Fφ(ω)|, |Fψ(ω)| ≤ 2/|ω|
            decay: Some(DecayBound { c: 2.0, p: 1 }),
        })
    }

    pub fn legendre() -> Self {
        Self {
            kind: BasisKind::Legendre,
            riesz_lower: 1.0,
            riesz_upper: 1.0,
            decay: None,
        }
    }

    pub fn fourier_exp(spacing: f64) -> Result<Self> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::InvalidParameter("exponential spacing must be positive"));
        }
        Ok(Self {
            kind: BasisKind::FourierExp { spacing },
            riesz_lower: 1.0,
            riesz_upper: 1.0,
            decay: None,
        })
    }

    /// Same functions, declared with other Riesz constants `0 < A ≤ B`.
    pub fn with_riesz_bounds(self, lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0 && lower <= upper && upper.is_finite()) {
            return Err(Error::InvalidParameter("Riesz bounds must satisfy 0 < A <= B"));
        }
        Ok(Self {
            riesz_lower: lower,
            riesz_upper: upper,
            ..self
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            BasisKind::Haar { .. } => "haar",
            BasisKind::Legendre => "legendre",
            BasisKind::FourierExp { .. } => "fourier-exp",
        }
    }

    /// Riesz constants `(A, B)`.
    pub fn riesz_bounds(&self) -> (f64, f64) {
        (self.riesz_lower, self.riesz_upper)
    }

    pub fn is_orthonormal(&self) -> bool {
        self.riesz_lower == 1.0 && self.riesz_upper == 1.0
    }

    pub fn decay(&self) -> Option<DecayBound> {
        self.decay
    }

    /// Width `a` of the interval `[0, a]` covered by a Haar system.
    pub fn wavelet_width(&self) -> Option<u32> {
        match self.kind {
            BasisKind::Haar { width } => Some(width),
            _ => None,
        }
    }

    /// Smallest closed interval containing every basis function's support.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            BasisKind::Haar { width } => (0.0, width as f64),
            BasisKind::Legendre => (-1.0, 1.0),
            BasisKind::FourierExp { spacing } => (-0.5 / spacing, 0.5 / spacing),
        }
    }

    /// Half the support length. Translating the support only multiplies rows
    /// of `U` by unimodular phases, so this is the radius that matters for the
    /// Nyquist bound `ε ≤ 1/(2T)`.
    pub fn support_radius(&self) -> f64 {
        let (lo, hi) = self.support();
        0.5 * (hi - lo)
    }

    /// Largest admissible sample spacing, `1/(2T)`.
    pub fn nyquist_spacing(&self) -> f64 {
        0.5 / self.support_radius()
    }
}

/// One-based linear position in a basis ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex(usize);

impl BasisIndex {
    pub fn new(l: usize) -> Result<Self> {
        if l == 0 {
            Err(Error::InvalidIndex { index: l })
        } else {
            Ok(Self(l))
        }
    }

    /// Index of the `j`-th column (zero-based).
    pub(crate) fn from_zero_based(j: usize) -> Self {
        Self(j + 1)
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Decoded Haar element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaarElement {
    /// `φ(· - shift)`.
    Scaling { shift: u64 },
    /// `2^{level/2} ψ(2^level · - shift)`.
    Wavelet { level: u32, shift: u64 },
}

impl HaarElement {
    /// Position of `l` in the coarse-to-fine ordering on `[0, width]`.
    pub fn decode(l: BasisIndex, width: u32) -> Self {
        let a = width as u64;
        let l = l.0 as u64;
        if l <= a {
            return HaarElement::Scaling { shift: l - 1 };
        }
        let mut r = l - a - 1;
        let mut level = 0u32;
        loop {
            let block = a << level;
            if r < block {
                return HaarElement::Wavelet { level, shift: r };
            }
            r -= block;
            level += 1;
        }
    }

    /// Breakpoints of the element, sorted: its support split where it is
    /// discontinuous.
    fn pieces(self) -> [(f64, f64, f64); 2] {
        match self {
            HaarElement::Scaling { shift } => {
                let k = shift as f64;
                [(k, k + 0.5, 1.0), (k + 0.5, k + 1.0, 1.0)]
            }
            HaarElement::Wavelet { level, shift } => {
                let h = 1.0 / (1u64 << level) as f64;
                let amp = (h).sqrt().recip();
                let lo = shift as f64 * h;
                [(lo, lo + 0.5 * h, amp), (lo + 0.5 * h, lo + h, -amp)]
            }
        }
    }
}

/// `sin(πx)`, exact zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (0.5 * x).round();
    // r in [-1, 1]
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

/// `sin(πx)/(πx)` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else if x.abs() < SINC_GUARD {
        let px = PI * x;
        1.0 - px * px / 6.0
    } else {
        sin_pi(x) / (PI * x)
    }
}

/// `e^{-2πi t}` with the argument reduced modulo one.
fn cis_neg_turns(t: f64) -> C64 {
    let r = t - t.round();
    let a = -2.0 * PI * r;
    C64::new(a.cos(), a.sin())
}

/// `e^{2πi t}` with the argument reduced modulo one.
pub(crate) fn cis_turns(t: f64) -> C64 {
    cis_neg_turns(-t)
}

/// Fourier transform of `χ_[0,1)`: `e^{-πiω} sinc(ω)`.
pub fn haar_scaling_transform(omega: f64) -> C64 {
    cis_neg_turns(0.5 * omega) * sinc(omega)
}

/// Fourier transform of the Haar wavelet `χ_[0,1/2) - χ_[1/2,1)`:
/// `(1 - e^{-πiω})² / (2πiω) = i e^{-πiω} sin(πω/2) sinc(ω/2)`.
pub fn haar_wavelet_transform(omega: f64) -> C64 {
    if omega == 0.0 {
        return C64::new(0.0, 0.0);
    }
    C64::new(0.0, 1.0) * cis_neg_turns(0.5 * omega) * (sin_pi(0.5 * omega) * sinc(0.5 * omega))
}

/// Spherical Bessel function `j_n(z)` for real `z`.
pub fn spherical_bessel_j(n: usize, z: f64) -> f64 {
    let parity = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let z = z.abs();
    if z == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let v = if z <= 1.0 {
        bessel_series(n, z)
    } else if (n as f64) < z {
        bessel_upward(n, z)
    } else {
        bessel_miller(n, z)
    };
    parity * v
}

fn bessel_series(n: usize, z: f64) -> f64 {
    // z^n/(2n+1)!! Σ_k (-z²/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
    let mut lead = 1.0;
    for k in 0..n {
        lead *= z / (2 * k + 3) as f64;
    }
    // lead = z^n / (3·5···(2n+1))
    let x = -0.5 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        term *= x / (k as f64 * (2 * n + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn bessel_upward(n: usize, z: f64) -> f64 {
    let (s, c) = (z.sin(), z.cos());
    let j0 = s / z;
    if n == 0 {
        return j0;
    }
    let mut jm = j0;
    let mut j = s / (z * z) - c / z;
    for k in 1..n {
        let next = (2 * k + 1) as f64 / z * j - jm;
        jm = j;
        j = next;
    }
    j
}

fn bessel_miller(n: usize, z: f64) -> f64 {
    let start = n + 20 + (40.0 * n as f64).sqrt() as usize + z as usize;
    let mut above = 0.0;
    let mut cur = 1.0;
    let mut sum = 0.0;
    let mut at_n = 0.0;
    let mut j0 = 0.0;
    let mut j1 = 0.0;
    for k in (0..=start).rev() {
        if k == n {
            at_n = cur;
        }
        if k == 1 {
            j1 = cur;
        }
        if k == 0 {
            j0 = cur;
        }
        sum += (2 * k + 1) as f64 * cur * cur;
        let below = (2 * k + 1) as f64 / z * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > 1e150 {
            cur *= 1e-150;
            above *= 1e-150;
            at_n *= 1e-150;
            j1 *= 1e-150;
            sum *= 1e-300;
        }
    }
    // Σ (2k+1) j_k² = 1 fixes the scale, the exact low orders fix the sign
    let scale = sum.sqrt();
    let exact_j0 = z.sin() / z;
    let exact_j1 = z.sin() / (z * z) - z.cos() / z;
    let sign = if exact_j0.abs() >= exact_j1.abs() {
        (exact_j0 * j0).signum()
    } else {
        (exact_j1 * j1).signum()
    };
    sign * at_n / scale
}

/// Value of the `l`-th basis function at `x`.
pub fn eval_point(family: &BasisFamily, l: BasisIndex, x: f64) -> C64 {
    match family.kind {
        BasisKind::Haar { width } => C64::new(haar_point(HaarElement::decode(l, width), x), 0.0),
        BasisKind::Legendre => {
            if !(-1.0..=1.0).contains(&x) {
                return C64::new(0.0, 0.0);
            }
            let deg = l.0 - 1;
            C64::new(((2 * deg + 1) as f64 / 2.0).sqrt() * legendre_p(deg, x), 0.0)
        }
        BasisKind::FourierExp { spacing } => {
            let half = 0.5 / spacing;
            if x < -half || x > half {
                return C64::new(0.0, 0.0);
            }
            cis_turns(rho(l.0, spacing).unwrap_or(0.0) * x) * spacing.sqrt()
        }
    }
}

fn haar_point(e: HaarElement, x: f64) -> f64 {
    let half_open = |t: f64| -> f64 {
        if (0.0..0.5).contains(&t) {
            1.0
        } else if (0.5..1.0).contains(&t) {
            -1.0
        } else {
            0.0
        }
    };
    match e {
        HaarElement::Scaling { shift } => {
            let t = x - shift as f64;
            if (0.0..1.0).contains(&t) {
                1.0
            } else {
                0.0
            }
        }
        HaarElement::Wavelet { level, shift } => {
            let s = (1u64 << level) as f64;
            s.sqrt() * half_open(s * x - shift as f64)
        }
    }
}

/// Legendre polynomial `P_n(x)`.
pub fn legendre_p(n: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return 1.0;
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Closed-form `(Fφ_l)(ω)`.
pub fn eval_fourier(family: &BasisFamily, l: BasisIndex, omega: f64) -> C64 {
    match family.kind {
        BasisKind::Haar { width } => match HaarElement::decode(l, width) {
            HaarElement::Scaling { shift } => cis_neg_turns(shift as f64 * omega) * haar_scaling_transform(omega),
            HaarElement::Wavelet { level, shift } => {
                let scale = (1u64 << level) as f64;
                let nu = omega / scale;
                cis_neg_turns(shift as f64 * nu) * haar_wavelet_transform(nu) / scale.sqrt()
            }
        },
        BasisKind::Legendre => {
            let deg = l.0 - 1;
            let norm = ((2 * deg + 1) as f64 / 2.0).sqrt();
            let j = spherical_bessel_j(deg, 2.0 * PI * omega);
            // ∫ P_n(x) e^{-ikx} dx = 2 (-i)^n j_n(k)
            let phase = match deg % 4 {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(0.0, -1.0),
                2 => C64::new(-1.0, 0.0),
                _ => C64::new(0.0, 1.0),
            };
            phase * (2.0 * norm * j)
        }
        BasisKind::FourierExp { spacing } => {
            let center = rho(l.0, spacing).unwrap_or(0.0);
            C64::new(sinc((omega - center) / spacing) * spacing.recip().sqrt(), 0.0)
        }
    }
}

/// Quadrature evaluation of Fourier transforms, independent of the closed forms.
#[derive(Clone, Debug)]
pub struct FourierOracle {
    rule: GaussLegendre,
}

impl Default for FourierOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl FourierOracle {
    pub fn new() -> Self {
        Self {
            rule: GaussLegendre::new(ORACLE_NODES),
        }
    }

    /// `∫_a^b f(x) e^{-2πixω} dx` for a smooth `f` whose own oscillation is
    /// at most `intrinsic_freq` cycles per unit length.
    pub fn transform(&self, a: f64, b: f64, intrinsic_freq: f64, max_piece: f64, omega: f64, f: impl Fn(f64) -> C64) -> C64 {
        let pieces = oscillation_pieces(a, b, omega.abs() + intrinsic_freq, 4.0, max_piece);
        self.rule
            .integrate_composite(a, b, pieces, |x| f(x) * cis_neg_turns(x * omega))
    }

    pub fn eval(&self, family: &BasisFamily, l: BasisIndex, omega: f64) -> C64 {
        match family.kind {
            BasisKind::Haar { width } => {
                let e = HaarElement::decode(l, width);
                e.pieces()
                    .iter()
                    .map(|&(a, b, v)| self.transform(a, b, 0.0, f64::INFINITY, omega, |_| C64::new(v, 0.0)))
                    .sum()
            }
            BasisKind::Legendre => {
                let deg = l.0 - 1;
                self.transform(-1.0, 1.0, deg as f64, 0.5, omega, |x| eval_point(family, l, x))
            }
            BasisKind::FourierExp { spacing } => {
                let half = 0.5 / spacing;
                let center = rho(l.0, spacing).unwrap_or(0.0);
                self.transform(-half, half, center.abs(), f64::INFINITY, omega, |x| eval_point(family, l, x))
            }
        }
    }
}

/// `(Fφ_l)(ω)` by composite Gauss–Legendre quadrature, 64 nodes per piece.
pub fn fourier_oracle(family: &BasisFamily, l: BasisIndex, omega: f64) -> C64 {
    FourierOracle::new().eval(family, l, omega)
}
