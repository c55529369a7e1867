//! Dense complex matrix arithmetic and spectral primitives sized for small
//! Hermitian problems (8×8 states and observables, up to the 63×63 normal
//! matrix of the tomography inversion).
//!
//! Index convention, fixed globally: the leftmost tensor factor is qubit 1
//! and owns the most significant bit of a computational-basis index, so the
//! basis of three qubits is ordered |000⟩, |001⟩, …, |111⟩.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance accepted by [`ComplexMatrix::herm_eig`] before the
/// input is symmetrized and diagonalized.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Convergence threshold on the off-diagonal Frobenius norm of the cyclic
/// Jacobi iteration.
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-13;

/// Sweep cap for the Jacobi iteration; exceeding it is a numerical failure.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues in `[-PSD_CLIP_TOL, 0)` are treated as zero by
/// [`ComplexMatrix::psd_sqrt`]; anything below fails. Absorbs eigensolver
/// noise without masking a genuinely negative spectrum.
pub const PSD_CLIP_TOL: f64 = 1e-10;

/// Dense square complex matrix in row-major order. The universal carrier for
/// states, observables and unitaries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix(dim={})", self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Zero matrix of dimension `dim ≥ 1`.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of dimension `dim ≥ 1`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged shapes and non-finite
    /// entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {} in a {dim}×{dim} matrix",
                    row.len()
                )));
            }
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        m.check_finite()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Errors if any entry is NaN or infinite.
    pub fn check_finite(&self) -> Result<()> {
        for (k, z) in self.data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(format!(
                    "entry ({}, {}) is {z}",
                    k / self.dim,
                    k % self.dim
                )));
            }
        }
        Ok(())
    }

    /// Standard matrix product; both operands must have equal dimension.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "matmul of {}×{} with {}×{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Kronecker product. The left operand is the more significant factor,
    /// matching the global qubit-ordering convention.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut out = Self::zeros(da * db);
        for ia in 0..da {
            for ja in 0..da {
                let a = self[(ia, ja)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for ib in 0..db {
                    for jb in 0..db {
                        out[(ia * db + ib, ja * db + jb)] = a * other[(ib, jb)];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "add of dim {} with dim {}",
                self.dim, other.dim
            )));
        }
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest elementwise deviation from Hermiticity, max |A - A†|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// (A + A†)/2.
    pub fn hermitize(&self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Transpose applied only to the tensor factor `which` of a state on
    /// factors of dimensions `dims`. Involutive and trace-preserving.
    pub fn partial_transpose(&self, dims: &[usize], which: usize) -> Result<Self> {
        check_dims(self.dim, dims)?;
        if which >= dims.len() {
            return Err(Error::InvalidIndex(format!(
                "factor index {which} out of range for {} factors",
                dims.len()
            )));
        }
        let mut out = Self::zeros(self.dim);
        let mut mi = vec![0usize; dims.len()];
        let mut ni = vec![0usize; dims.len()];
        for m in 0..self.dim {
            decode(m, dims, &mut mi);
            for n in 0..self.dim {
                decode(n, dims, &mut ni);
                std::mem::swap(&mut mi[which], &mut ni[which]);
                out[(encode(&mi, dims), encode(&ni, dims))] = self[(m, n)];
                std::mem::swap(&mut mi[which], &mut ni[which]);
            }
        }
        Ok(out)
    }

    /// Reduced operator on the factors listed in `keep` (strictly
    /// increasing); the remaining factors are traced out.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        check_dims(self.dim, dims)?;
        if keep.is_empty() || keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(
                "keep set must be non-empty and strictly increasing".into(),
            ));
        }
        if *keep.last().unwrap() >= dims.len() {
            return Err(Error::InvalidIndex(format!(
                "keep factor {} out of range for {} factors",
                keep.last().unwrap(),
                dims.len()
            )));
        }
        let traced: Vec<usize> = (0..dims.len()).filter(|f| !keep.contains(f)).collect();
        let kept_dims: Vec<usize> = keep.iter().map(|&f| dims[f]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&f| dims[f]).collect();
        let out_dim: usize = kept_dims.iter().product();
        let traced_total: usize = traced_dims.iter().product();

        let mut out = Self::zeros(out_dim);
        let mut ki = vec![0usize; kept_dims.len()];
        let mut kj = vec![0usize; kept_dims.len()];
        let mut ti = vec![0usize; traced_dims.len()];
        let mut full_i = vec![0usize; dims.len()];
        let mut full_j = vec![0usize; dims.len()];
        for i in 0..out_dim {
            decode(i, &kept_dims, &mut ki);
            for j in 0..out_dim {
                decode(j, &kept_dims, &mut kj);
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..traced_total {
                    decode(t, &traced_dims, &mut ti);
                    for (slot, &f) in keep.iter().enumerate() {
                        full_i[f] = ki[slot];
                        full_j[f] = kj[slot];
                    }
                    for (slot, &f) in traced.iter().enumerate() {
                        full_i[f] = ti[slot];
                        full_j[f] = ti[slot];
                    }
                    acc += self[(encode(&full_i, dims), encode(&full_j, dims))];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Spectral decomposition of a Hermitian matrix by cyclic Jacobi
    /// rotations. Eigenvalues are returned in ascending order with matching
    /// eigenvector columns.
    pub fn herm_eig(&self) -> Result<HermEigResult> {
        self.herm_eig_with(HERMITICITY_TOL, JACOBI_OFFDIAG_TOL)
    }

    /// [`herm_eig`](Self::herm_eig) with explicit hermiticity and
    /// convergence tolerances.
    pub fn herm_eig_with(&self, herm_tol: f64, offdiag_tol: f64) -> Result<HermEigResult> {
        self.check_finite()?;
        let deviation = self.hermiticity_deviation();
        if deviation > herm_tol {
            return Err(Error::NotHermitian {
                deviation,
                tol: herm_tol,
            });
        }
        let n = self.dim;
        let mut a = self.hermitize();
        let mut v = Self::identity(n);

        let mut off = off_diagonal_norm(&a);
        let mut converged = off < offdiag_tol;
        let mut sweeps = 0;
        while !converged && sweeps < JACOBI_MAX_SWEEPS {
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
            sweeps += 1;
            off = off_diagonal_norm(&a);
            converged = off < offdiag_tol;
        }
        if !converged {
            return Err(Error::NonConvergence {
                sweeps,
                off_norm: off,
            });
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
        let eigenvectors = Self::from_fn(n, |r, c| v[(r, order[c])]);
        Ok(HermEigResult {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Hermitian PSD square root R with R·R = A. Eigenvalues in
    /// `[-PSD_CLIP_TOL, 0)` are clipped to zero; anything lower is an error.
    pub fn psd_sqrt(&self) -> Result<Self> {
        self.psd_sqrt_with(PSD_CLIP_TOL)
    }

    pub fn psd_sqrt_with(&self, clip_tol: f64) -> Result<Self> {
        let eig = self.herm_eig()?;
        if let Some(&lambda) = eig.eigenvalues.first() {
            if lambda < -clip_tol {
                return Err(Error::NegativeEigenvalue {
                    eigenvalue: lambda,
                    tol: clip_tol,
                });
            }
        }
        let roots: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&l| l.max(0.0).sqrt())
            .collect();
        Ok(eig.recompose(&roots))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// ||A − B|| in the Frobenius norm.
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(a.sub(b)?.frobenius_norm())
}

/// Largest elementwise |A − B|.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let d = a.sub(b)?;
    Ok(d.data.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Result of a Hermitian eigendecomposition: ascending eigenvalues and a
/// unitary whose columns are the matching eigenvectors.
#[derive(Clone, Debug)]
pub struct HermEigResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermEigResult {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// V·diag(values)·V† for arbitrary spectra over the same eigenbasis.
    pub fn recompose(&self, values: &[f64]) -> ComplexMatrix {
        let n = self.eigenvectors.dim();
        ComplexMatrix::from_fn(n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &val) in values.iter().enumerate() {
                acc += self.eigenvectors[(i, k)] * val * self.eigenvectors[(j, k)].conj();
            }
            acc
        })
    }

    /// V·diag(λ)·V†, which must reproduce the decomposed input.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.recompose(&self.eigenvalues)
    }
}

fn check_dims(dim: usize, dims: &[usize]) -> Result<()> {
    let product: usize = dims.iter().product();
    if dims.is_empty() || product != dim {
        return Err(Error::DimensionMismatch(format!(
            "factor dimensions {dims:?} do not multiply to matrix dimension {dim}"
        )));
    }
    Ok(())
}

fn decode(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in dims.iter().enumerate().rev() {
        out[slot] = index % d;
        index /= d;
    }
}

fn encode(indices: &[usize], dims: &[usize]) -> usize {
    indices
        .iter()
        .zip(dims)
        .fold(0, |acc, (&i, &d)| acc * d + i)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing A[p][q]. The 2×2 block
/// [[α, w], [w̄, β]] is diagonalized by J = P·R with P = diag(1, e^{-iφ})
/// removing the phase of w and R the classical symmetric rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let w = a[(p, q)];
    let absw = w.norm();
    if absw == 0.0 {
        return;
    }
    let phase = w / absw; // e^{iφ}
    let alpha = a[(p, p)].re;
    let beta = a[(q, q)].re;
    let tau = (beta - alpha) / (2.0 * absw);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J embeds [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]] at rows/cols (p, q).
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -s * phase.conj();
    let jqq = c * phase.conj();

    let n = a.dim();
    // A ← J† A J: rows first, then columns.
    for r in 0..n {
        let ap = a[(p, r)];
        let aq = a[(q, r)];
        a[(p, r)] = jpp.conj() * ap + jqp.conj() * aq;
        a[(q, r)] = jpq.conj() * ap + jqq.conj() * aq;
    }
    for r in 0..n {
        let ap = a[(r, p)];
        let aq = a[(r, q)];
        a[(r, p)] = ap * jpp + aq * jqp;
        a[(r, q)] = ap * jpq + aq * jqq;
        let vp = v[(r, p)];
        let vq = v[(r, q)];
        v[(r, p)] = vp * jpp + vq * jqp;
        v[(r, q)] = vp * jpq + vq * jqq;
    }
    // The rotated diagonal is real analytically; drop rounding dust so the
    // convergence measure only sees genuine off-diagonal weight.
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
}

/// Shared 2×2 constants for states, observables and gates.
pub mod pauli {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    fn from2(rows: [[Complex64; 2]; 2]) -> ComplexMatrix {
        ComplexMatrix::from_fn(2, |i, j| rows[i][j])
    }

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn sigma_x() -> ComplexMatrix {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        from2([[z, one], [one, z]])
    }

    pub fn sigma_y() -> ComplexMatrix {
        let z = Complex64::new(0.0, 0.0);
        from2([[z, Complex64::new(0.0, -1.0)], [Complex64::new(0.0, 1.0), z]])
    }

    pub fn sigma_z() -> ComplexMatrix {
        let z = Complex64::new(0.0, 0.0);
        from2([[Complex64::new(1.0, 0.0), z], [z, Complex64::new(-1.0, 0.0)]])
    }
}

#[cfg(test)]
mod tests {
    use super::pauli::*;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(dim, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let a = random_matrix(rng, dim);
        a.add(&a.dagger()).unwrap()
    }

    #[test]
    fn matmul_identity_and_pauli_products() {
        let i2 = identity();
        assert!(max_abs_diff(&i2.matmul(&i2).unwrap(), &i2).unwrap() < 1e-15);
        assert!(max_abs_diff(&sigma_x().matmul(&sigma_x()).unwrap(), &i2).unwrap() < 1e-15);
        // σx·σy = i·σz, expanded by hand.
        let want = sigma_z().scale(c(0.0, 1.0));
        let got = sigma_x().matmul(&sigma_y()).unwrap();
        assert!(max_abs_diff(&got, &want).unwrap() < 1e-15);
    }

    #[test]
    fn matmul_rejects_dimension_mismatch() {
        let err = identity().matmul(&ComplexMatrix::identity(4));
        assert!(matches!(err, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn dagger_cases() {
        assert!(max_abs_diff(&identity().dagger(), &identity()).unwrap() < 1e-15);
        assert!(max_abs_diff(&sigma_y().dagger(), &sigma_y()).unwrap() < 1e-15);
        let ii = identity().scale(c(0.0, 1.0));
        let want = identity().scale(c(0.0, -1.0));
        assert!(max_abs_diff(&ii.dagger(), &want).unwrap() < 1e-15);
    }

    #[test]
    fn tensor_basics() {
        let i4 = ComplexMatrix::identity(4);
        assert!(max_abs_diff(&identity().tensor(&identity()), &i4).unwrap() < 1e-15);

        let zz = sigma_z().tensor(&sigma_z());
        for (i, want) in [1.0, -1.0, -1.0, 1.0].iter().enumerate() {
            assert_eq!(zz[(i, i)], c(*want, 0.0));
        }

        // 𝕀₂⊗σx⊗σx couples basis states whose last two bits are both flipped.
        let b1 = identity().tensor(&sigma_x().tensor(&sigma_x()));
        for m in 0..8 {
            for n in 0..8 {
                let want = if n == m ^ 0b011 { 1.0 } else { 0.0 };
                assert_eq!(b1[(m, n)], c(want, 0.0));
            }
        }
    }

    #[test]
    fn tensor_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let a = random_matrix(&mut rng, 2);
            let b = random_matrix(&mut rng, 3);
            let d = random_matrix(&mut rng, 2);
            let left = a.tensor(&b.tensor(&d));
            let right = a.tensor(&b).tensor(&d);
            assert!(max_abs_diff(&left, &right).unwrap() <= 1e-14);
        }
    }

    #[test]
    fn partial_transpose_identity_invariant() {
        let id8 = ComplexMatrix::identity(8).scale(c(0.125, 0.0));
        let pt = id8.partial_transpose(&[2, 4], 0).unwrap();
        assert!(max_abs_diff(&pt, &id8).unwrap() < 1e-15);
    }

    #[test]
    fn partial_transpose_bell_spectrum() {
        // |Φ+⟩⟨Φ+| on two qubits; PT eigenvalues are {−1/2, 1/2, 1/2, 1/2}.
        let mut bell = ComplexMatrix::zeros(4);
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                bell[(i, j)] = c(0.5, 0.0);
            }
        }
        let pt = bell.partial_transpose(&[2, 2], 0).unwrap();
        let eig = pt.herm_eig().unwrap();
        let want = [-0.5, 0.5, 0.5, 0.5];
        for (got, want) in eig.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_involution_trace_hermiticity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for dims in [&[2usize, 4] as &[usize], &[2, 2, 2]] {
            for which in 0..dims.len() {
                let h = random_hermitian(&mut rng, 8);
                let pt = h.partial_transpose(dims, which).unwrap();
                assert!((pt.trace() - h.trace()).norm() < 1e-13);
                assert!(pt.is_hermitian(1e-13));
                let back = pt.partial_transpose(dims, which).unwrap();
                assert!(max_abs_diff(&back, &h).unwrap() < 1e-14);
            }
        }
    }

    #[test]
    fn partial_transpose_rejects_bad_dims() {
        let h = ComplexMatrix::identity(8);
        assert!(h.partial_transpose(&[2, 3], 0).is_err());
        assert!(h.partial_transpose(&[2, 4], 2).is_err());
    }

    #[test]
    fn partial_trace_product_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = random_hermitian(&mut rng, 2);
        let tau = random_hermitian(&mut rng, 4);
        let joint = rho.tensor(&tau);
        let reduced = joint.partial_trace(&[2, 4], &[0]).unwrap();
        let want = rho.scale(tau.trace());
        assert!(max_abs_diff(&reduced, &want).unwrap() < 1e-13);
        // Trace is preserved.
        assert!((joint.trace() - reduced.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_maximally_mixed() {
        let id8 = ComplexMatrix::identity(8).scale(c(0.125, 0.0));
        let reduced = id8.partial_trace(&[2, 2, 2], &[0]).unwrap();
        let want = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(max_abs_diff(&reduced, &want).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_input() {
        let h = ComplexMatrix::identity(8);
        assert!(h.partial_trace(&[2, 2], &[0]).is_err());
        assert!(h.partial_trace(&[2, 2, 2], &[]).is_err());
        assert!(h.partial_trace(&[2, 2, 2], &[1, 0]).is_err());
        assert!(h.partial_trace(&[2, 2, 2], &[3]).is_err());
    }

    #[test]
    fn herm_eig_pauli_spectra() {
        for m in [sigma_z(), sigma_x()] {
            let eig = m.herm_eig().unwrap();
            assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
            assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn herm_eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut worst_recon: f64 = 0.0;
        let mut worst_ortho: f64 = 0.0;
        for _ in 0..1000 {
            let h = random_hermitian(&mut rng, 8);
            let eig = h.herm_eig().unwrap();
            worst_recon = worst_recon.max(max_abs_diff(&eig.reconstruct(), &h).unwrap());
            let v = &eig.eigenvectors;
            let gram = v.dagger().matmul(v).unwrap();
            worst_ortho =
                worst_ortho.max(max_abs_diff(&gram, &ComplexMatrix::identity(8)).unwrap());
            assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
        assert!(worst_recon <= 1e-10, "reconstruction error {worst_recon}");
        assert!(worst_ortho <= 1e-10, "orthonormality error {worst_ortho}");
    }

    #[test]
    fn herm_eig_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(0.5, 0.0);
        assert!(matches!(m.herm_eig(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn psd_sqrt_cases() {
        let id8 = ComplexMatrix::identity(8);
        assert!(max_abs_diff(&id8.psd_sqrt().unwrap(), &id8).unwrap() < 1e-12);

        let four = identity().scale(c(4.0, 0.0));
        let two = identity().scale(c(2.0, 0.0));
        assert!(max_abs_diff(&four.psd_sqrt().unwrap(), &two).unwrap() < 1e-12);

        let mut proj = ComplexMatrix::zeros(2);
        proj[(0, 0)] = c(1.0, 0.0);
        assert!(max_abs_diff(&proj.psd_sqrt().unwrap(), &proj).unwrap() < 1e-12);
    }

    #[test]
    fn psd_sqrt_squares_back_on_random_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 8);
            let psd = m.matmul(&m.dagger()).unwrap();
            let root = psd.psd_sqrt().unwrap();
            let squared = root.matmul(&root).unwrap();
            assert!(max_abs_diff(&squared, &psd).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn psd_sqrt_rejects_negative_spectrum() {
        assert!(matches!(
            sigma_z().psd_sqrt(),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn trace_and_distance() {
        assert_eq!(ComplexMatrix::identity(8).trace(), c(8.0, 0.0));
        assert_eq!(sigma_z().trace(), c(0.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 8);
        assert_eq!(frobenius_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn from_rows_rejects_non_finite() {
        let rows = vec![
            vec![c(f64::NAN, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ];
        assert!(matches!(
            ComplexMatrix::from_rows(&rows),
            Err(Error::NonFinite(_))
        ));
    }
}
