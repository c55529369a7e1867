//! The three-observable entanglement witness, its four separability
//! inequalities, and PPT tests across bipartitions.
//!
//! Every fully separable three-qubit state ρ_s satisfies
//!
//! ```text
//! |⟨B₁⟩ ± ⟨B₂⟩ ± ⟨B₃⟩| ≤ 1,   B₁ = 𝕀⊗σx⊗σx, B₂ = 𝕀⊗σy⊗σy, B₃ = σz⊗σz⊗σz
//! ```
//!
//! so exceeding 1 in any of the four sign combinations certifies
//! entanglement. On the σ_b family the maximum over signs evaluates in
//! closed form to (2√(1−b²) + 1 − b)/(1+7b), which exceeds 1 exactly for
//! b < 1/√17 even though σ_b stays PPT across the qubit|ququart cut — the
//! detected entanglement is bound.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qlinalg::{pauli, ComplexMatrix};
use crate::states::{BParam, DensityOperator, PureState};

/// Slack added to the separable bound before declaring a violation on
/// exact-arithmetic inputs. Shot-noised data goes through the CLI's
/// statistical threshold instead.
pub const VERDICT_TOL: f64 = 1e-9;

/// Eigenvalues of a partial transpose above `-PPT_TOL` count as positive;
/// the eigensolver noise floor.
pub const PPT_TOL: f64 = 1e-10;

/// Imaginary part allowed in Tr(ρ·O) before it is discarded.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

/// Labels of the three witness observables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObservableLabel {
    B1,
    B2,
    B3,
}

impl std::fmt::Display for ObservableLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::B1 => write!(f, "B1"),
            Self::B2 => write!(f, "B2"),
            Self::B3 => write!(f, "B3"),
        }
    }
}

/// One of the three 8×8 witness observables; Hermitian, traceless, with
/// eigenvalues ±1.
#[derive(Clone, Debug)]
pub struct Observable {
    label: ObservableLabel,
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn label(&self) -> ObservableLabel {
        self.label
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// The witness triple (B₁, B₂, B₃).
pub fn observables() -> [Observable; 3] {
    let b1 = pauli::identity().tensor(&pauli::sigma_x().tensor(&pauli::sigma_x()));
    let b2 = pauli::identity().tensor(&pauli::sigma_y().tensor(&pauli::sigma_y()));
    let b3 = pauli::sigma_z().tensor(&pauli::sigma_z().tensor(&pauli::sigma_z()));
    [
        Observable {
            label: ObservableLabel::B1,
            matrix: b1,
        },
        Observable {
            label: ObservableLabel::B2,
            matrix: b2,
        },
        Observable {
            label: ObservableLabel::B3,
            matrix: b3,
        },
    ]
}

/// Tr(ρ·O) with the (numerically negligible) imaginary part checked and
/// discarded.
pub fn expectation(rho: &DensityOperator, observable: &Observable) -> Result<f64> {
    expectation_matrix(rho.matrix(), observable.matrix())
}

pub(crate) fn expectation_matrix(rho: &ComplexMatrix, obs: &ComplexMatrix) -> Result<f64> {
    let value = rho.matmul(obs)?.trace();
    if value.im.abs() > EXPECTATION_IMAG_TOL {
        return Err(Error::ComplexExpectation(value.im));
    }
    Ok(value.re)
}

/// Sign choices applied to (±⟨B₂⟩, ±⟨B₃⟩), in the fixed reporting order.
pub const SIGN_COMBINATIONS: [(f64, f64); 4] = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];

/// The three expectation values, the four signed inequality values, their
/// maximum magnitude and the violation verdict.
#[derive(Clone, Copy, Debug)]
pub struct WitnessReport {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    /// ⟨B₁⟩ ± ⟨B₂⟩ ± ⟨B₃⟩ for the sign order (+,+), (+,−), (−,+), (−,−).
    pub four_values: [f64; 4],
    /// max |four_values|.
    pub max_value: f64,
    /// Index into [`SIGN_COMBINATIONS`] attaining the maximum; ties go to
    /// the first combination in the fixed order.
    pub max_index: usize,
    /// max_value > 1 + verdict tolerance.
    pub violated: bool,
}

impl WitnessReport {
    /// Assembles the four inequality values from measured expectations with
    /// the default verdict tolerance.
    pub fn from_expectations(b1: f64, b2: f64, b3: f64) -> Self {
        Self::from_expectations_with(b1, b2, b3, VERDICT_TOL)
    }

    pub fn from_expectations_with(b1: f64, b2: f64, b3: f64, verdict_tol: f64) -> Self {
        let mut four_values = [0.0; 4];
        let mut max_value = f64::NEG_INFINITY;
        let mut max_index = 0;
        for (i, (s2, s3)) in SIGN_COMBINATIONS.iter().enumerate() {
            let v = b1 + s2 * b2 + s3 * b3;
            four_values[i] = v;
            if v.abs() > max_value {
                max_value = v.abs();
                max_index = i;
            }
        }
        Self {
            b1,
            b2,
            b3,
            four_values,
            max_value,
            max_index,
            violated: max_value > 1.0 + verdict_tol,
        }
    }
}

/// Evaluates all four separability inequalities on a state.
pub fn witness(rho: &DensityOperator) -> Result<WitnessReport> {
    witness_with(rho, VERDICT_TOL)
}

pub fn witness_with(rho: &DensityOperator, verdict_tol: f64) -> Result<WitnessReport> {
    let [b1, b2, b3] = observables();
    Ok(WitnessReport::from_expectations_with(
        expectation(rho, &b1)?,
        expectation(rho, &b2)?,
        expectation(rho, &b3)?,
        verdict_tol,
    ))
}

/// Closed form of the maximum inequality value on σ_b:
/// (2√(1−b²) + 1 − b)/(1+7b).
///
/// ⟨B₁⟩ = −⟨B₂⟩ = √(1−b²)/(1+7b) and ⟨B₃⟩ = (b−1)/(1+7b), so the (−,−)
/// sign choice accumulates all three magnitudes.
pub fn max_violation_analytic(b: BParam) -> f64 {
    let b = b.value();
    (2.0 * (1.0 - b * b).sqrt() + 1.0 - b) / (1.0 + 7.0 * b)
}

/// Upper edge 1/√17 of the parameter window in which the witness detects
/// the entanglement of σ_b; the closed form crosses 1 exactly there.
pub fn detection_window() -> f64 {
    1.0 / 17f64.sqrt()
}

/// Outcome of a partial-transpose positivity test.
#[derive(Clone, Debug)]
pub struct PptReport {
    /// Human-readable cut, e.g. `"1|23"` for transposing the first qubit.
    pub bipartition: String,
    pub min_eigenvalue: f64,
    pub is_ppt: bool,
}

/// Minimum eigenvalue of the partial transpose over factor `which` of the
/// decomposition `dims`, and the PPT verdict at tolerance [`PPT_TOL`].
pub fn ppt_check(rho: &DensityOperator, dims: &[usize], which: usize) -> Result<PptReport> {
    let pt = rho.matrix().partial_transpose(dims, which)?;
    let min_eigenvalue = pt.herm_eig()?.min_eigenvalue();
    let transposed: Vec<String> = (0..dims.len())
        .filter(|&f| f == which)
        .map(|f| (f + 1).to_string())
        .collect();
    let rest: Vec<String> = (0..dims.len())
        .filter(|&f| f != which)
        .map(|f| (f + 1).to_string())
        .collect();
    Ok(PptReport {
        bipartition: format!("{}|{}", transposed.join(""), rest.join("")),
        min_eigenvalue,
        is_ppt: min_eigenvalue >= -PPT_TOL,
    })
}

/// Haar-random single-qubit pure state drawn from `rng`.
fn haar_qubit(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    use rand_distr::StandardNormal;
    let mut amps = [Complex64::new(0.0, 0.0); 2];
    loop {
        for a in &mut amps {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *a = Complex64::new(re, im);
        }
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for a in &mut amps {
                *a /= norm;
            }
            break;
        }
    }
    ComplexMatrix::from_fn(2, |i, j| amps[i] * amps[j].conj())
}

/// Deterministic Haar-product test fixture |a⟩⟨a|⊗|c⟩⟨c|⊗|d⟩⟨d| for the
/// separable-state bound.
pub fn random_product_state(seed: u64) -> DensityOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = haar_qubit(&mut rng)
        .tensor(&haar_qubit(&mut rng))
        .tensor(&haar_qubit(&mut rng));
    DensityOperator::new(rho, vec![2, 2, 2])
        .expect("product of pure qubit projectors is a valid density operator")
}

/// Seeded convex mixture of up to `max_components` random product states;
/// still separable, so still bound by the witness inequalities.
pub fn random_separable_mixture(seed: u64, max_components: usize) -> DensityOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=max_components.max(1));
    let weights: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..1.0) + 1e-9).collect();
    let total: f64 = weights.iter().sum();
    let mut matrix = ComplexMatrix::zeros(8);
    for w in &weights {
        let product = haar_qubit(&mut rng)
            .tensor(&haar_qubit(&mut rng))
            .tensor(&haar_qubit(&mut rng));
        matrix = matrix
            .add(&product.scale(Complex64::new(w / total, 0.0)))
            .expect("same dimension");
    }
    DensityOperator::new(matrix, vec![2, 2, 2])
        .expect("convex mixture of product states is a valid density operator")
}
