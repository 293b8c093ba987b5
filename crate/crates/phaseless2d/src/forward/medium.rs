//! Lippmann–Schwinger volume solver for penetrable scatterers:
//! u = u^i + k^2 Conv(Phi) (m u) on a uniform cell grid over the bounding box
//! of the support, solved by GMRES with an FFT-accelerated convolution.
//!
//! The singular self-cell weight is the closed-form integral of Phi over the
//! disc of equal area: int_{|y|<rho} Phi(y) dy = (i pi rho / 2k) H^(1)_1(k rho) - 1/k^2.
//! Cells cut by the boundary carry the contrast scaled by the inside-area
//! fraction (16x16 subsampling), which restores O(h^2) behavior.

use crate::geometry::BoundaryCurve;
use crate::linalg::gmres;
use crate::specfun::hankel1;
use crate::{Complex, Error, Result, Vec2};
use nalgebra::DVector;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

const I: Complex = Complex::new(0.0, 1.0);

pub(crate) struct MediumSystem {
    pub k: f64,
    pub ng: usize,
    pub h: f64,
    pub origin: Vec2,
    /// Contrast m = n - 1 (area-fraction weighted) at cell centers, row-major
    /// (iy * ng + ix).
    pub m: Vec<Complex>,
    /// Support cells: (flat index, center, m value).
    pub support: Vec<(usize, Vec2, Complex)>,
    fft_len: usize,
    ghat: Vec<Complex>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    pub self_weight: Complex,
}

impl MediumSystem {
    pub fn assemble(k: f64, curve: &BoundaryCurve, n_index: Complex, ng: usize) -> Result<Self> {
        if ng < 8 {
            return Err(Error::InvalidArgument(format!("medium grid {ng} too coarse")));
        }
        if n_index.re <= 0.0 || n_index.im < 0.0 {
            return Err(Error::Admissibility(format!(
                "refractive index must have Re > 0 and Im >= 0, got {n_index}"
            )));
        }
        // bounding box of the support
        let (mut xmin, mut xmax, mut ymin, mut ymax) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..1024 {
            let p = curve.point(2.0 * std::f64::consts::PI * i as f64 / 1024.0);
            xmin = xmin.min(p.x);
            xmax = xmax.max(p.x);
            ymin = ymin.min(p.y);
            ymax = ymax.max(p.y);
        }
        let side = (xmax - xmin).max(ymax - ymin);
        let cx = 0.5 * (xmin + xmax);
        let cy = 0.5 * (ymin + ymax);
        let origin = Vec2::new(cx - 0.5 * side, cy - 0.5 * side);
        let h = side / ng as f64;

        let contrast = n_index - Complex::new(1.0, 0.0);
        let mut m = vec![Complex::new(0.0, 0.0); ng * ng];
        let mut support = Vec::new();
        for iy in 0..ng {
            for ix in 0..ng {
                let c = origin + Vec2::new((ix as f64 + 0.5) * h, (iy as f64 + 0.5) * h);
                let frac = inside_fraction(curve, c, h);
                if frac > 0.0 {
                    let idx = iy * ng + ix;
                    m[idx] = contrast * frac;
                    support.push((idx, c, m[idx]));
                }
            }
        }
        if support.is_empty() {
            return Err(Error::Admissibility("medium support contains no cells".into()));
        }

        // convolution kernel, wrapped into a 2ng x 2ng cyclic table
        let p = 2 * ng;
        let rho = h / std::f64::consts::PI.sqrt();
        let self_weight = I * std::f64::consts::PI * rho / (2.0 * k) * hankel1(1, k * rho)?
            - Complex::new(1.0 / (k * k), 0.0);
        let mut gtab = vec![Complex::new(0.0, 0.0); p * p];
        for dy in -(ng as i64 - 1)..=(ng as i64 - 1) {
            for dx in -(ng as i64 - 1)..=(ng as i64 - 1) {
                let r = h * ((dx * dx + dy * dy) as f64).sqrt();
                let val = if r == 0.0 {
                    self_weight
                } else {
                    I * 0.25 * hankel1(0, k * r)? * h * h
                };
                let px = ((dx + p as i64) % p as i64) as usize;
                let py = ((dy + p as i64) % p as i64) as usize;
                gtab[py * p + px] = val;
            }
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(p);
        let inv = planner.plan_fft_inverse(p);
        let mut ghat = gtab;
        fft2(&fwd, &mut ghat, p);
        Ok(Self { k, ng, h, origin, m, support, fft_len: p, ghat, fwd, inv, self_weight })
    }

    pub fn cell_centers(&self) -> Vec<Vec2> {
        let mut out = Vec::with_capacity(self.ng * self.ng);
        for iy in 0..self.ng {
            for ix in 0..self.ng {
                out.push(
                    self.origin + Vec2::new((ix as f64 + 0.5) * self.h, (iy as f64 + 0.5) * self.h),
                );
            }
        }
        out
    }

    /// Convolution with the Phi kernel on the full grid.
    fn conv(&self, v: &[Complex]) -> Vec<Complex> {
        let p = self.fft_len;
        let ng = self.ng;
        let mut buf = vec![Complex::new(0.0, 0.0); p * p];
        for iy in 0..ng {
            for ix in 0..ng {
                buf[iy * p + ix] = v[iy * ng + ix];
            }
        }
        fft2(&self.fwd, &mut buf, p);
        for (b, g) in buf.iter_mut().zip(&self.ghat) {
            *b *= *g;
        }
        fft2(&self.inv, &mut buf, p);
        let scale = 1.0 / (p * p) as f64;
        let mut out = vec![Complex::new(0.0, 0.0); ng * ng];
        for iy in 0..ng {
            for ix in 0..ng {
                out[iy * ng + ix] = buf[iy * p + ix] * scale;
            }
        }
        out
    }

    /// Total field on the grid for one incident plane-wave direction.
    pub fn solve_direction(&self, d: Vec2) -> Result<DVector<Complex>> {
        let centers = self.cell_centers();
        let ui = DVector::from_fn(self.ng * self.ng, |i, _| {
            (I * self.k * d.dot(&centers[i])).exp()
        });
        let k2 = self.k * self.k;
        let op = |v: &DVector<Complex>| {
            let mv: Vec<Complex> =
                v.iter().zip(&self.m).map(|(vi, mi)| vi * mi).collect();
            let cv = self.conv(&mv);
            DVector::from_fn(v.len(), |i, _| v[i] - k2 * cv[i])
        };
        let (u, rel, iters) = gmres(op, &ui, 1e-12, 400)?;
        if rel > 1e-10 {
            return Err(Error::NonConvergence(format!(
                "Lippmann-Schwinger GMRES stalled at relative residual {rel:.3e} after {iters} iterations"
            )));
        }
        Ok(u)
    }
}

fn fft2(plan: &Arc<dyn Fft<f64>>, buf: &mut [Complex], p: usize) {
    for row in buf.chunks_exact_mut(p) {
        plan.process(row);
    }
    let mut col = vec![Complex::new(0.0, 0.0); p];
    for c in 0..p {
        for r in 0..p {
            col[r] = buf[r * p + c];
        }
        plan.process(&mut col);
        for r in 0..p {
            buf[r * p + c] = col[r];
        }
    }
}

/// Inside-area fraction of the cell centered at `c` with side `h`.
fn inside_fraction(curve: &BoundaryCurve, c: Vec2, h: f64) -> f64 {
    let segs = 1024;
    let half = 0.5 * h;
    let probes = [
        c,
        c + Vec2::new(-half, -half),
        c + Vec2::new(half, -half),
        c + Vec2::new(-half, half),
        c + Vec2::new(half, half),
    ];
    let inside: Vec<bool> = probes.iter().map(|&p| curve.contains(p, segs)).collect();
    if inside.iter().all(|&b| b) {
        return 1.0;
    }
    if inside.iter().all(|&b| !b) {
        return 0.0;
    }
    let sub = 16;
    let mut count = 0;
    for sy in 0..sub {
        for sx in 0..sub {
            let p = c + Vec2::new(
                ((sx as f64 + 0.5) / sub as f64 - 0.5) * h,
                ((sy as f64 + 0.5) / sub as f64 - 0.5) * h,
            );
            if curve.contains(p, segs) {
                count += 1;
            }
        }
    }
    count as f64 / (sub * sub) as f64
}
