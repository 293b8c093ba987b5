//! Discrete data operators and the Hermitian spectral calculus.
//!
//! From an L x L phaseless dataset the pipeline assembles
//!
//! * `N`  with n_ij = (|u(R x̂_i, x̂_j)|^2 - 1) e^{ikR x̂_i·x̂_j},
//! * `B`  = (2 pi / L) C D C* — the truncated half-order Sobolev smoother
//!   over the Fourier basis phi_m = e^{im theta}/sqrt(2 pi), |m| <= M, with
//!   weights (1 + m^2)^{-1/4},
//! * `Ñ`  = e^{-i(kR + pi/4)} B N B, and the far-field counterpart
//!   `F̃` = B F B.
//!
//! The trapezoid constant 2 pi / L is deliberately dropped from both N and F
//! so the comparison constant (8 k pi R)^{-1/2} between the two pipelines is
//! unchanged. The `sharp` combination |Re A| + |Im A| produces the positive
//! semidefinite operator whose eigensystem feeds the indicator.

use crate::forward::{FarFieldMatrix, PhaselessDataset};
use crate::linalg::hermitian_eigen;
use crate::{Complex, Error, Result};
use nalgebra::DMatrix;

const I: Complex = Complex::new(0.0, 1.0);

/// How a matrix was produced (bookkeeping for dumps and debugging).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    DataMatrix,
    Basis,
    NTilde,
    FarField,
    FTilde,
    Derived,
}

/// Square complex matrix with provenance.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub data: DMatrix<Complex>,
    pub provenance: Provenance,
}

impl OperatorMatrix {
    pub fn new(data: DMatrix<Complex>, provenance: Provenance) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "operator matrix must be square, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("operator matrix has nonfinite entries".into()));
        }
        Ok(Self { data, provenance })
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }
}

/// n_ij = (|u_ij|^2 - 1) e^{ikR x̂_i·x̂_j}, no trapezoid weight.
pub fn assemble_data_matrix(data: &PhaselessDataset) -> Result<OperatorMatrix> {
    data.validate()?;
    let l = data.l;
    let angles: Vec<f64> =
        (0..l).map(|j| 2.0 * std::f64::consts::PI * j as f64 / l as f64).collect();
    let kr = data.k * data.r;
    let m = DMatrix::from_fn(l, l, |i, j| {
        let u = data.values[(i, j)];
        let dot = (angles[i] - angles[j]).cos();
        (I * kr * dot).exp() * (u * u - 1.0)
    });
    OperatorMatrix::new(m, Provenance::DataMatrix)
}

/// B_{L,M} = (2 pi / L) C D C* with c_ij = phi_{j-(M+1)}(x̂_i) and
/// d_j = (1 + (j - M - 1)^2)^{-1/4}, computed literally.
pub fn assemble_b_matrix(l: usize, m: usize) -> Result<OperatorMatrix> {
    if l < 2 || l % 2 != 0 {
        return Err(Error::InvalidArgument(format!("L must be even and >= 2, got {l}")));
    }
    let modes = 2 * m + 1;
    let angles: Vec<f64> =
        (0..l).map(|j| 2.0 * std::f64::consts::PI * j as f64 / l as f64).collect();
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let c = DMatrix::from_fn(l, modes, |i, j| {
        let mode = j as i64 - m as i64;
        (I * (mode as f64) * angles[i]).exp() * norm
    });
    let d: Vec<f64> = (0..modes)
        .map(|j| {
            let mode = j as i64 - m as i64;
            (1.0 + (mode * mode) as f64).powf(-0.25)
        })
        .collect();
    let mut cd = c.clone();
    for j in 0..modes {
        let mut col = cd.column_mut(j);
        col *= Complex::new(d[j], 0.0);
    }
    let b = (&cd * c.adjoint()) * Complex::new(2.0 * std::f64::consts::PI / l as f64, 0.0);
    OperatorMatrix::new(b, Provenance::Basis)
}

/// Ñ = e^{-i(kR + pi/4)} B N B.
pub fn assemble_n_tilde(
    n: &OperatorMatrix,
    b: &OperatorMatrix,
    k: f64,
    r: f64,
) -> Result<OperatorMatrix> {
    if n.dim() != b.dim() {
        return Err(Error::ShapeMismatch(format!("N is {}, B is {}", n.dim(), b.dim())));
    }
    let phase = (-I * (k * r + std::f64::consts::FRAC_PI_4)).exp();
    let prod = &b.data * &n.data * &b.data * phase;
    OperatorMatrix::new(prod, Provenance::NTilde)
}

/// F̃ = B F B (same dropped trapezoid constant as Ñ).
pub fn assemble_f_tilde(f: &FarFieldMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    if f.l != b.dim() {
        return Err(Error::ShapeMismatch(format!("F is {}, B is {}", f.l, b.dim())));
    }
    let prod = &b.data * &f.values * &b.data;
    OperatorMatrix::new(prod, Provenance::FTilde)
}

/// Hermitian parts: Re A = (A + A*)/2, Im A = (A - A*)/(2i); A = Re + i Im.
pub fn hermitian_split(a: &OperatorMatrix) -> (DMatrix<Complex>, DMatrix<Complex>) {
    let adj = a.data.adjoint();
    let re = (&a.data + &adj) * Complex::new(0.5, 0.0);
    let im = (&a.data - &adj) * (Complex::new(0.0, -0.5));
    (re, im)
}

/// |A| = V |Lambda| V* of a Hermitian matrix; rejects visibly non-Hermitian
/// input (relative deviation above 1e-10).
pub fn matrix_abs(a: &DMatrix<Complex>) -> Result<DMatrix<Complex>> {
    let dev = (a - a.adjoint()).norm();
    if dev > 1e-10 * a.norm().max(1e-300) {
        return Err(Error::InvalidArgument(format!(
            "matrix_abs needs a Hermitian input (relative deviation {:.2e})",
            dev / a.norm()
        )));
    }
    let (vals, vecs) = hermitian_eigen(a)?;
    let mut scaled = vecs.clone();
    for (j, &lambda) in vals.iter().enumerate() {
        let mut col = scaled.column_mut(j);
        col *= Complex::new(lambda.abs(), 0.0);
    }
    Ok(&scaled * vecs.adjoint())
}

/// Hermitian positive semidefinite operator with its eigensystem.
#[derive(Clone, Debug)]
pub struct SpectralOperator {
    pub matrix: DMatrix<Complex>,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal columns matching `eigenvalues`.
    pub eigenvectors: DMatrix<Complex>,
}

impl SpectralOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// A_# = |Re A| + |Im A| with its full eigensystem.
pub fn sharp(a: &OperatorMatrix) -> Result<SpectralOperator> {
    let (re, im) = hermitian_split(a);
    let abs_re = matrix_abs(&re)?;
    let abs_im = matrix_abs(&im)?;
    let total = abs_re + abs_im;
    let (eigenvalues, eigenvectors) = hermitian_eigen(&total)?;
    Ok(SpectralOperator { matrix: total, eigenvalues, eigenvectors })
}

/// Largest singular value.
pub fn spectral_norm(a: &OperatorMatrix) -> f64 {
    crate::linalg::spectral_norm(&a.data)
}
