//! The one-parameter mixed-state family σ_b, its five pure components,
//! pseudo-pure assembly and the Uhlmann fidelity.
//!
//! σ_b is the convex mixture
//!
//! ```text
//! σ_b = 7b/(7b+1) · σ_insep + 1/(7b+1) · |φ_b⟩⟨φ_b|
//! σ_insep = (2/7) Σ_{k=1..3} |ψ_k⟩⟨ψ_k| + (1/7)|011⟩⟨011|
//! ```
//!
//! with ψ₁ = (|000⟩+|101⟩)/√2, ψ₂ = (|001⟩+|110⟩)/√2, ψ₃ = (|010⟩+|111⟩)/√2
//! and |φ_b⟩ = |1⟩⊗(√(1+b)|00⟩+√(1−b)|11⟩)/√2. The same operator is also
//! constructed directly entrywise; the two routes agreeing elementwise is
//! the strongest internal consistency check in this crate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{frobenius_distance, ComplexMatrix};

/// Trace and hermiticity tolerance for a valid density operator.
pub const DENSITY_TOL: f64 = 1e-12;

/// Most negative eigenvalue a valid density operator may carry; eigenvalues
/// in `[-DENSITY_MIN_EIG_TOL, 0)` are numerical dust, anything below is
/// rejected.
pub const DENSITY_MIN_EIG_TOL: f64 = 1e-10;

/// Unit-norm tolerance for pure-state amplitude vectors.
pub const NORM_TOL: f64 = 1e-12;

/// Mixing parameter b ∈ [0, 1] of the σ_b family. Endpoints are allowed;
/// the family is qubit-ququart entangled strictly inside the interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BParam(f64);

impl BParam {
    pub fn new(b: f64) -> Result<Self> {
        if !b.is_finite() || !(0.0..=1.0).contains(&b) {
            return Err(Error::InvalidParameter(format!(
                "b must lie in [0, 1], got {b}"
            )));
        }
        Ok(Self(b))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for BParam {
    type Error = Error;
    fn try_from(b: f64) -> Result<Self> {
        Self::new(b)
    }
}

/// Pure three-qubit state as a length-8 amplitude vector of unit norm.
#[derive(Clone, Debug)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 8 {
            return Err(Error::DimensionMismatch(format!(
                "pure state needs 8 amplitudes, got {}",
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("pure-state amplitude".into()));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "pure state norm {norm} deviates from 1 beyond {NORM_TOL}"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis state |q1 q2 q3⟩ for index ∈ 0..8.
    pub fn basis(index: usize) -> Result<Self> {
        if index >= 8 {
            return Err(Error::InvalidIndex(format!(
                "basis index {index} out of range 0..8"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩|², insensitive to global phase.
    pub fn overlap(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// |ψ⟩⟨ψ| as an 8×8 matrix.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(8, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }

    /// Projector wrapped as a density operator in the three-qubit view.
    pub fn density(&self) -> DensityOperator {
        DensityOperator::new(self.projector(), vec![2, 2, 2])
            .expect("projector of a normalized state is a valid density operator")
    }
}

/// 8×8 unit-trace PSD Hermitian matrix with its tensor-factor view
/// (`[2, 2, 2]` three qubits or `[2, 4]` qubit-ququart).
#[derive(Clone, Debug)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityOperator {
    /// Validates hermiticity, unit trace, positivity (up to numerical dust)
    /// and the factor decomposition.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        matrix.check_finite()?;
        if dims.iter().product::<usize>() != matrix.dim() {
            return Err(Error::InvalidDensity(format!(
                "factor dims {dims:?} do not match matrix dimension {}",
                matrix.dim()
            )));
        }
        let herm_dev = matrix.hermiticity_deviation();
        if herm_dev > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "hermiticity deviation {herm_dev} exceeds {DENSITY_TOL}"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "trace {trace} deviates from 1 beyond {DENSITY_TOL}"
            )));
        }
        let min_eig = matrix.herm_eig()?.min_eigenvalue();
        if min_eig < -DENSITY_MIN_EIG_TOL {
            return Err(Error::InvalidDensity(format!(
                "minimum eigenvalue {min_eig} below -{DENSITY_MIN_EIG_TOL}"
            )));
        }
        Ok(Self { matrix, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Same operator under a different factor decomposition, e.g. the
    /// qubit-ququart view `[2, 4]` of a three-qubit state.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        if dims.iter().product::<usize>() != self.matrix.dim() {
            return Err(Error::DimensionMismatch(format!(
                "factor dims {dims:?} do not match matrix dimension {}",
                self.matrix.dim()
            )));
        }
        Ok(Self {
            matrix: self.matrix.clone(),
            dims,
        })
    }
}

/// Convex weights expanding σ_b over its five pure components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixtureWeights {
    pub w_psi1: f64,
    pub w_psi2: f64,
    pub w_psi3: f64,
    pub w_011: f64,
    pub w_phi: f64,
}

impl MixtureWeights {
    /// Weights in the fixed component order (ψ₁, ψ₂, ψ₃, |011⟩, φ_b).
    pub fn as_array(&self) -> [f64; 5] {
        [self.w_psi1, self.w_psi2, self.w_psi3, self.w_011, self.w_phi]
    }

    pub fn sum(&self) -> f64 {
        self.as_array().iter().sum()
    }
}

/// Pseudo-pure NMR ensemble state (1−ε)/8·𝕀₈ + ε·ρ.
#[derive(Clone, Debug)]
pub struct PseudoPureState {
    epsilon: f64,
    pure_part: DensityOperator,
}

impl PseudoPureState {
    pub fn new(epsilon: f64, pure_part: DensityOperator) -> Result<Self> {
        if !epsilon.is_finite() || epsilon <= 0.0 || epsilon > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "pseudo-pure ε must lie in (0, 1], got {epsilon}"
            )));
        }
        Ok(Self { epsilon, pure_part })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn pure_part(&self) -> &DensityOperator {
        &self.pure_part
    }

    /// The assembled ensemble operator.
    pub fn density(&self) -> DensityOperator {
        let dim = self.pure_part.dim();
        let id_part = ComplexMatrix::identity(dim)
            .scale(Complex64::new((1.0 - self.epsilon) / dim as f64, 0.0));
        let matrix = id_part
            .add(&self.pure_part.matrix().scale(Complex64::new(self.epsilon, 0.0)))
            .expect("same dimension");
        DensityOperator::new(matrix, self.pure_part.dims().to_vec())
            .expect("convex mixture of a density operator with 𝕀/d stays valid")
    }
}

/// The Bell-like components ψ₁, ψ₂, ψ₃ for k ∈ {1, 2, 3}.
pub fn psi_k(k: usize) -> Result<PureState> {
    let (a, b) = match k {
        1 => (0, 5), // (|000⟩+|101⟩)/√2
        2 => (1, 6), // (|001⟩+|110⟩)/√2
        3 => (2, 7), // (|010⟩+|111⟩)/√2
        _ => {
            return Err(Error::InvalidIndex(format!(
                "ψ_k index must be 1, 2 or 3, got {k}"
            )))
        }
    };
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amplitudes[a] = r;
    amplitudes[b] = r;
    PureState::from_amplitudes(amplitudes)
}

/// |φ_b⟩ = |1⟩⊗(√(1+b)|00⟩+√(1−b)|11⟩)/√2, supported on |100⟩ and |111⟩.
pub fn phi_b(b: BParam) -> PureState {
    let b = b.value();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    amplitudes[4] = Complex64::new(((1.0 + b) / 2.0).sqrt(), 0.0);
    amplitudes[7] = Complex64::new(((1.0 - b) / 2.0).sqrt(), 0.0);
    PureState::from_amplitudes(amplitudes).expect("φ_b amplitudes are normalized by construction")
}

/// The five ordered pure components (ψ₁, ψ₂, ψ₃, |011⟩, φ_b) of σ_b.
pub fn mixture_components(b: BParam) -> [PureState; 5] {
    [
        psi_k(1).unwrap(),
        psi_k(2).unwrap(),
        psi_k(3).unwrap(),
        PureState::basis(0b011).unwrap(),
        phi_b(b),
    ]
}

/// Convex weights of σ_b over (ψ₁, ψ₂, ψ₃, |011⟩, φ_b):
/// 2b/(7b+1) for each ψ_k, b/(7b+1) for |011⟩ and 1/(7b+1) for φ_b.
pub fn mixture_weights(b: BParam) -> MixtureWeights {
    let b = b.value();
    let denom = 7.0 * b + 1.0;
    MixtureWeights {
        w_psi1: 2.0 * b / denom,
        w_psi2: 2.0 * b / denom,
        w_psi3: 2.0 * b / denom,
        w_011: b / denom,
        w_phi: 1.0 / denom,
    }
}

/// σ_b assembled as the weighted sum of its five pure projectors.
pub fn sigma_b_mixture(b: BParam) -> DensityOperator {
    let weights = mixture_weights(b).as_array();
    let components = mixture_components(b);
    let mut matrix = ComplexMatrix::zeros(8);
    for (w, component) in weights.iter().zip(&components) {
        matrix = matrix
            .add(&component.projector().scale(Complex64::new(*w, 0.0)))
            .expect("same dimension");
    }
    DensityOperator::new(matrix, vec![2, 2, 2])
        .expect("convex mixture of projectors is a valid density operator")
}

/// σ_b written out entrywise in the computational basis and scaled by
/// 1/(1+7b).
pub fn sigma_b_matrix(b: BParam) -> DensityOperator {
    let b = b.value();
    let scale = 1.0 / (1.0 + 7.0 * b);
    let half = (1.0 + b) / 2.0;
    let coh = (1.0 - b * b).sqrt() / 2.0;
    let mut m = ComplexMatrix::zeros(8);
    let re = |x: f64| Complex64::new(x, 0.0);
    for &i in &[0usize, 1, 2, 3, 5, 6] {
        m[(i, i)] = re(b);
    }
    m[(4, 4)] = re(half);
    m[(7, 7)] = re(half);
    m[(0, 5)] = re(b);
    m[(5, 0)] = re(b);
    m[(1, 6)] = re(b);
    m[(6, 1)] = re(b);
    m[(2, 7)] = re(b);
    m[(7, 2)] = re(b);
    m[(4, 7)] = re(coh);
    m[(7, 4)] = re(coh);
    DensityOperator::new(m.scale(re(scale)), vec![2, 2, 2])
        .expect("the explicit σ_b matrix is a valid density operator")
}

/// Pseudo-pure assembly (1−ε)/8·𝕀₈ + ε·ρ for ε ∈ (0, 1].
pub fn pps(epsilon: f64, pure: &DensityOperator) -> Result<DensityOperator> {
    Ok(PseudoPureState::new(epsilon, pure.clone())?.density())
}

/// Uhlmann fidelity F = [Tr √(√ρ_th · ρ_ex · √ρ_th)]².
///
/// Symmetric in its arguments, 1 exactly when the states coincide and
/// |⟨ψ|φ⟩|² on pure inputs.
pub fn fidelity(rho_th: &DensityOperator, rho_ex: &DensityOperator) -> Result<f64> {
    if rho_th.dim() != rho_ex.dim() {
        return Err(Error::DimensionMismatch(format!(
            "fidelity of dim {} with dim {}",
            rho_th.dim(),
            rho_ex.dim()
        )));
    }
    let root = rho_th.matrix().psd_sqrt()?;
    let inner = root.matmul(rho_ex.matrix())?.matmul(&root)?;
    let eig = inner.hermitize().herm_eig()?;
    // Analytic zeros of √ρ·σ·√ρ come back as ~1e-16 dust whose square
    // roots would contaminate the trace at the 1e-8 level; drop anything
    // below a relative floor before taking roots.
    let floor = eig.max_eigenvalue().max(0.0) * 1e-13;
    let sum: f64 = eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > floor)
        .map(|&l| l.sqrt())
        .sum();
    Ok(sum * sum)
}

/// Frobenius distance between two density operators.
pub fn state_distance(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    frobenius_distance(a.matrix(), b.matrix())
}
