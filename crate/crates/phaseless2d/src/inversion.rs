//! Spectral indicator reconstruction on a sampling grid.
//!
//! For a sampling point z the test vector is phĩ_z = B (e^{-ik x̂_j·z})_j and
//! the indicator is the reciprocal Picard series
//! W(z) = [ sum_l |phĩ_z* psi_l|^2 / lambda_l ]^{-1}
//! over the eigensystem of the sharp operator; W is large inside the
//! scatterer and small outside.

use crate::forward::{FarFieldMatrix, PhaselessDataset};
use crate::geometry::{DirectionSet, SamplingGrid};
use crate::operators::{
    assemble_b_matrix, assemble_data_matrix, assemble_f_tilde, assemble_n_tilde, sharp,
    OperatorMatrix, SpectralOperator,
};
use crate::{Complex, Error, Result, Vec2};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

const I: Complex = Complex::new(0.0, 1.0);

/// B-smoothed sampling function at one point.
#[derive(Clone, Debug)]
pub struct TestVector {
    pub z: Vec2,
    pub values: DVector<Complex>,
}

/// phĩ_z = B (phi_z(x̂_1), ..., phi_z(x̂_L))^T with phi_z(x̂) = e^{-ik x̂·z}.
pub fn test_vector(
    z: Vec2,
    k: f64,
    directions: &DirectionSet,
    b: &OperatorMatrix,
) -> Result<TestVector> {
    if directions.len() != b.dim() {
        return Err(Error::ShapeMismatch(format!(
            "direction set has {} entries, B is {}x{}",
            directions.len(),
            b.dim(),
            b.dim()
        )));
    }
    let raw = DVector::from_fn(directions.len(), |j, _| {
        (-I * k * directions.direction(j).dot(&z)).exp()
    });
    Ok(TestVector { z, values: &b.data * raw })
}

/// One Picard-series evaluation; eigenvalues at or below
/// cutoff_rel * lambda_max are excluded, and degenerate spectra map to 0.
pub fn indicator_value(spec: &SpectralOperator, tv: &TestVector, cutoff_rel: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&cutoff_rel) {
        return Err(Error::InvalidArgument(format!(
            "cutoff_rel must be in [0, 1), got {cutoff_rel}"
        )));
    }
    if spec.dim() != tv.values.len() {
        return Err(Error::ShapeMismatch(format!(
            "operator is {}, test vector is {}",
            spec.dim(),
            tv.values.len()
        )));
    }
    let lmax = spec.max_eigenvalue();
    if lmax <= 0.0 {
        return Ok(0.0);
    }
    let cut = cutoff_rel * lmax;
    let mut sum = 0.0;
    for (l, &lambda) in spec.eigenvalues.iter().enumerate() {
        if lambda <= cut {
            break; // descending order
        }
        let c = spec.eigenvectors.column(l).dotc(&tv.values);
        sum += c.norm_sqr() / lambda;
    }
    Ok(if sum > 0.0 { 1.0 / sum } else { 0.0 })
}

/// Real nonnegative indicator samples over a rectangular grid (row-major,
/// ny rows of nx values).
#[derive(Clone, Debug)]
pub struct IndicatorField {
    pub grid: SamplingGrid,
    pub values: Vec<f64>,
    /// Set by `normalize`: the maximum before rescaling.
    pub raw_max: Option<f64>,
    /// Eigenvalue cutoff used to build the field.
    pub cutoff_rel: f64,
}

impl IndicatorField {
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn argmax(&self) -> Vec2 {
        let (mut best, mut at) = (f64::NEG_INFINITY, 0);
        for (i, &v) in self.values.iter().enumerate() {
            if v > best {
                best = v;
                at = i;
            }
        }
        self.grid.nodes()[at]
    }

    /// Nodes with value >= frac * max.
    pub fn level_set(&self, frac: f64) -> Vec<bool> {
        let th = frac * self.max();
        self.values.iter().map(|&v| v >= th).collect()
    }
}

/// Sweep the indicator over the grid for a fixed spectral operator.
fn sweep(
    spec: &SpectralOperator,
    b: &OperatorMatrix,
    k: f64,
    l: usize,
    grid: &SamplingGrid,
    cutoff_rel: f64,
) -> Result<IndicatorField> {
    if !(0.0..1.0).contains(&cutoff_rel) {
        return Err(Error::InvalidArgument(format!(
            "cutoff_rel must be in [0, 1), got {cutoff_rel}"
        )));
    }
    let dirs = DirectionSet::uniform(l)?;
    let lmax = spec.max_eigenvalue();
    let kept: Vec<usize> = spec
        .eigenvalues
        .iter()
        .enumerate()
        .take_while(|(_, &v)| v > cutoff_rel * lmax && lmax > 0.0)
        .map(|(i, _)| i)
        .collect();
    if kept.is_empty() {
        return Ok(IndicatorField {
            grid: *grid,
            values: vec![0.0; grid.len()],
            raw_max: None,
            cutoff_rel,
        });
    }
    // rows of (Psi* B) for the kept eigenpairs, so each node costs one
    // matrix-vector product in the raw sampling vector
    let mut t = DMatrix::zeros(kept.len(), l);
    for (row, &idx) in kept.iter().enumerate() {
        let col = spec.eigenvectors.column(idx);
        for j in 0..l {
            let mut acc = Complex::new(0.0, 0.0);
            for p in 0..l {
                acc += col[p].conj() * b.data[(p, j)];
            }
            t[(row, j)] = acc;
        }
    }
    let inv_lambda: Vec<f64> = kept.iter().map(|&i| 1.0 / spec.eigenvalues[i]).collect();
    let dvecs = dirs.directions();
    let nodes = grid.nodes();
    let values: Vec<f64> = nodes
        .par_iter()
        .map(|&z| {
            let raw = DVector::from_fn(l, |j, _| (-I * k * dvecs[j].dot(&z)).exp());
            let coeff = &t * raw;
            let sum: f64 =
                coeff.iter().zip(&inv_lambda).map(|(c, il)| c.norm_sqr() * il).sum();
            if sum > 0.0 {
                1.0 / sum
            } else {
                0.0
            }
        })
        .collect();
    Ok(IndicatorField { grid: *grid, values, raw_max: None, cutoff_rel })
}

/// Full phaseless pipeline: data matrix, B, Ñ, sharp, indicator sweep.
pub fn reconstruct(
    data: &PhaselessDataset,
    grid: &SamplingGrid,
    m: usize,
    cutoff_rel: f64,
) -> Result<IndicatorField> {
    let n = assemble_data_matrix(data)?;
    let b = assemble_b_matrix(data.l, m)?;
    let ntilde = assemble_n_tilde(&n, &b, data.k, data.r)?;
    let spec = sharp(&ntilde)?;
    sweep(&spec, &b, data.k, data.l, grid, cutoff_rel)
}

/// Far-field reference pipeline: F̃ = B F B in place of Ñ.
pub fn reconstruct_from_farfield(
    f: &FarFieldMatrix,
    grid: &SamplingGrid,
    m: usize,
    cutoff_rel: f64,
) -> Result<IndicatorField> {
    let b = assemble_b_matrix(f.l, m)?;
    let ftilde = assemble_f_tilde(f, &b)?;
    let spec = sharp(&ftilde)?;
    sweep(&spec, &b, f.k, f.l, grid, cutoff_rel)
}

/// Divide by the maximum (when positive) and record it.
pub fn normalize(field: &IndicatorField) -> IndicatorField {
    let mx = field.max();
    if mx <= 0.0 {
        return field.clone();
    }
    IndicatorField {
        grid: field.grid,
        values: field.values.iter().map(|v| v / mx).collect(),
        raw_max: Some(mx),
        cutoff_rel: field.cutoff_rel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::NoiseRecord;
    use crate::operators::Provenance;

    fn basis_operator(l: usize) -> SpectralOperator {
        SpectralOperator {
            matrix: DMatrix::identity(l, l),
            eigenvalues: vec![1.0; l],
            eigenvectors: DMatrix::identity(l, l),
        }
    }

    #[test]
    fn test_vector_at_origin_with_m0() {
        // B with M = 0 is the averaging matrix (1/L) ones; phi_0 = all ones
        let l = 8;
        let b = assemble_b_matrix(l, 0).unwrap();
        let dirs = DirectionSet::uniform(l).unwrap();
        let tv = test_vector(Vec2::zeros(), 5.0, &dirs, &b).unwrap();
        for v in tv.values.iter() {
            assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn raw_sampling_values_unimodular() {
        let l = 16;
        let dirs = DirectionSet::uniform(l).unwrap();
        let z = Vec2::new(1.2, -0.4);
        for j in 0..l {
            let v = (-Complex::new(0.0, 3.0) * dirs.direction(j).dot(&z)).exp();
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn truncation_residual_small_when_m_covers_kz() {
        // || (I - P_M) phi_z ||^2 = 2 pi sum_{|m| > M} J_m(k|z|)^2
        let k = 10.0;
        let z = 6.0;
        let m = 100;
        let mut tail = 0.0;
        for mm in (m + 1)..250 {
            let j = crate::specfun::bessel_j(mm, k * z).unwrap();
            tail += 2.0 * j * j;
        }
        let resid = (2.0 * std::f64::consts::PI * tail).sqrt();
        assert!(resid <= 1e-4, "residual {resid:e}");
    }

    #[test]
    fn indicator_simple_arithmetic() {
        let spec = basis_operator(2);
        let tv = TestVector {
            z: Vec2::zeros(),
            values: DVector::from_vec(vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]),
        };
        assert!((indicator_value(&spec, &tv, 1e-12).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn indicator_zero_operator_is_zero() {
        let l = 4;
        let spec = SpectralOperator {
            matrix: DMatrix::zeros(l, l),
            eigenvalues: vec![0.0; l],
            eigenvectors: DMatrix::identity(l, l),
        };
        let tv = TestVector { z: Vec2::zeros(), values: DVector::from_element(l, Complex::new(1.0, 0.0)) };
        assert_eq!(indicator_value(&spec, &tv, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn indicator_scaling_homogeneity() {
        let l = 6;
        let raw = DMatrix::from_fn(l, l, |i, j| {
            Complex::new(((i + j) % 4) as f64 + 0.5, (i as f64 - j as f64) * 0.1)
        });
        let psd = &raw * raw.adjoint();
        let a = OperatorMatrix::new(psd, Provenance::Derived).unwrap();
        let spec = sharp(&a).unwrap();
        let scaled = OperatorMatrix::new(&spec.matrix * Complex::new(3.5, 0.0), Provenance::Derived)
            .unwrap();
        let spec2 = sharp(&scaled).unwrap();
        let tv = TestVector {
            z: Vec2::zeros(),
            values: DVector::from_fn(l, |i, _| Complex::new(1.0 / (i + 1) as f64, 0.2)),
        };
        let w1 = indicator_value(&spec, &tv, 1e-12).unwrap();
        let w2 = indicator_value(&spec2, &tv, 1e-12).unwrap();
        assert!((w2 / w1 - 3.5).abs() < 1e-10);
    }

    #[test]
    fn indicator_invariant_under_degenerate_rotation() {
        // two equal eigenvalues; mixing the pair by a unitary leaves W alone
        let l = 4;
        let mut spec = basis_operator(l);
        spec.eigenvalues = vec![2.0, 1.0, 1.0, 0.5];
        let tv = TestVector {
            z: Vec2::zeros(),
            values: DVector::from_fn(l, |i, _| Complex::new((i + 1) as f64, -0.3 * i as f64)),
        };
        let w1 = indicator_value(&spec, &tv, 1e-12).unwrap();
        let (c, s) = (0.6, 0.8);
        let mut mixed = spec.clone();
        let v1 = spec.eigenvectors.column(1).clone_owned();
        let v2 = spec.eigenvectors.column(2).clone_owned();
        mixed.eigenvectors.set_column(1, &(&v1 * Complex::new(c, 0.0) + &v2 * Complex::new(s, 0.0)));
        mixed
            .eigenvectors
            .set_column(2, &(&v1 * Complex::new(-s, 0.0) + &v2 * Complex::new(c, 0.0)));
        let w2 = indicator_value(&mixed, &tv, 1e-12).unwrap();
        assert!((w1 - w2).abs() < 1e-10 * w1);
    }

    #[test]
    fn empty_scene_reconstruction_is_zero() {
        let l = 8;
        let data = PhaselessDataset {
            l,
            r: 10.0,
            k: 5.0,
            values: DMatrix::from_element(l, l, 1.0),
            noise: NoiseRecord::Exact,
        };
        let grid = SamplingGrid::new(-2.0, 2.0, -2.0, 2.0, 5, 5).unwrap();
        let field = reconstruct(&data, &grid, 4, 1e-12).unwrap();
        assert!(field.values.iter().all(|&v| v == 0.0));
        let unchanged = normalize(&field);
        assert!(unchanged.values.iter().all(|&v| v == 0.0));
        assert!(unchanged.raw_max.is_none());
    }

    #[test]
    fn farfield_pipeline_localizes_circle() {
        // indicator at the center beats the indicator three radii out
        let k = 5.0;
        let scene = crate::forward::ScatteringScene::new(
            k,
            vec![crate::forward::Obstacle {
                curve: crate::geometry::BoundaryCurve::new(
                    crate::geometry::CurveKind::Circle,
                    Vec2::zeros(),
                    256,
                )
                .unwrap(),
                condition: crate::forward::Condition::Dirichlet,
            }],
        )
        .unwrap();
        let f = crate::forward::simulate_farfield(&scene, 128).unwrap();
        let b = assemble_b_matrix(128, 100).unwrap();
        let ft = assemble_f_tilde(&f, &b).unwrap();
        let spec = sharp(&ft).unwrap();
        let dirs = DirectionSet::uniform(128).unwrap();
        let w_center = indicator_value(
            &spec,
            &test_vector(Vec2::zeros(), k, &dirs, &b).unwrap(),
            1e-12,
        )
        .unwrap();
        let w_far = indicator_value(
            &spec,
            &test_vector(Vec2::new(3.0, 0.0), k, &dirs, &b).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!(w_center > 100.0 * w_far, "center {w_center:e} vs far {w_far:e}");
    }

    #[test]
    fn normalize_preserves_argmax() {
        let grid = SamplingGrid::new(0.0, 1.0, 0.0, 1.0, 3, 3).unwrap();
        let field = IndicatorField {
            grid,
            values: vec![0.0, 1.0, 0.5, 0.25, 4.0, 0.0, 0.1, 0.2, 0.3],
            raw_max: None,
            cutoff_rel: 1e-12,
        };
        let n = normalize(&field);
        assert_eq!(n.raw_max, Some(4.0));
        assert!((n.max() - 1.0).abs() < 1e-15);
        assert_eq!(n.argmax(), field.argmax());
    }

    #[test]
    fn grid_order_independence() {
        // the sweep is a pure map over nodes: evaluating a permutation of the
        // nodes through indicator_value reproduces the field values
        let l = 8;
        let scene = crate::forward::ScatteringScene::new(
            2.0,
            vec![crate::forward::Obstacle {
                curve: crate::geometry::BoundaryCurve::new(
                    crate::geometry::CurveKind::Circle,
                    Vec2::zeros(),
                    64,
                )
                .unwrap(),
                condition: crate::forward::Condition::Dirichlet,
            }],
        )
        .unwrap();
        let data = crate::forward::simulate_phaseless(&scene, 6.0, l).unwrap();
        let grid = SamplingGrid::new(-1.5, 1.5, -1.5, 1.5, 4, 4).unwrap();
        let field = reconstruct(&data, &grid, 4, 1e-12).unwrap();
        let n = assemble_data_matrix(&data).unwrap();
        let b = assemble_b_matrix(l, 4).unwrap();
        let nt = assemble_n_tilde(&n, &b, data.k, data.r).unwrap();
        let spec = sharp(&nt).unwrap();
        let dirs = DirectionSet::uniform(l).unwrap();
        for (node, expect) in grid.nodes().into_iter().zip(&field.values).rev() {
            let tv = test_vector(node, data.k, &dirs, &b).unwrap();
            let w = indicator_value(&spec, &tv, 1e-12).unwrap();
            assert!((w - expect).abs() <= 1e-12 * expect.abs().max(1e-30));
        }
    }
}
