//! Boundary curves, direction sets and sampling grids.

use crate::{Error, Result, Vec2};
use serde::{Deserialize, Serialize};

/// The five analytic test boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Circle,
    Kite,
    Peanut,
    RoundedSquare,
    RoundedTriangle,
}

impl std::str::FromStr for CurveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circle" => Ok(Self::Circle),
            "kite" => Ok(Self::Kite),
            "peanut" => Ok(Self::Peanut),
            "rounded_square" => Ok(Self::RoundedSquare),
            "rounded_triangle" => Ok(Self::RoundedTriangle),
            _ => Err(Error::Parse(format!("unknown curve kind `{s}`"))),
        }
    }
}

/// A closed 2pi-periodic parametrized boundary.
#[derive(Clone, Debug)]
pub struct BoundaryCurve {
    pub kind: CurveKind,
    pub center: Vec2,
    pub quadrature_count: usize,
}

impl BoundaryCurve {
    pub fn new(kind: CurveKind, center: Vec2, quadrature_count: usize) -> Result<Self> {
        if quadrature_count < 2 || quadrature_count % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "quadrature_count must be even and >= 2, got {quadrature_count}"
            )));
        }
        Ok(Self { kind, center, quadrature_count })
    }

    /// x(t), translated by the center.
    pub fn point(&self, t: f64) -> Vec2 {
        let (ct, st) = (t.cos(), t.sin());
        let p = match self.kind {
            CurveKind::Circle => Vec2::new(ct, st),
            CurveKind::Kite => Vec2::new(ct + 0.65 * (2.0 * t).cos() - 0.65, 1.5 * st),
            CurveKind::Peanut => {
                let r = (ct * ct + 0.25 * st * st).sqrt();
                Vec2::new(r * ct, r * st)
            }
            CurveKind::RoundedSquare => 0.75 * Vec2::new(ct * ct * ct + ct, st * st * st + st),
            CurveKind::RoundedTriangle => {
                let r = 2.0 + 0.3 * (3.0 * t).cos();
                Vec2::new(r * ct, r * st)
            }
        };
        self.center + p
    }

    /// Analytic first and second derivatives (x'(t), x''(t)).
    pub fn derivatives(&self, t: f64) -> (Vec2, Vec2) {
        let (ct, st) = (t.cos(), t.sin());
        match self.kind {
            CurveKind::Circle => (Vec2::new(-st, ct), Vec2::new(-ct, -st)),
            CurveKind::Kite => (
                Vec2::new(-st - 1.3 * (2.0 * t).sin(), 1.5 * ct),
                Vec2::new(-ct - 2.6 * (2.0 * t).cos(), -1.5 * st),
            ),
            CurveKind::Peanut => {
                let r2 = ct * ct + 0.25 * st * st;
                let r = r2.sqrt();
                let rp = -0.375 * (2.0 * t).sin() / r;
                let rpp = -0.75 * (2.0 * t).cos() / r + 0.375 * (2.0 * t).sin() * rp / r2;
                radial_derivatives(r, rp, rpp, ct, st)
            }
            CurveKind::RoundedSquare => (
                0.75 * Vec2::new(-3.0 * ct * ct * st - st, 3.0 * st * st * ct + ct),
                0.75 * Vec2::new(
                    6.0 * ct * st * st - 3.0 * ct * ct * ct - ct,
                    6.0 * st * ct * ct - 3.0 * st * st * st - st,
                ),
            ),
            CurveKind::RoundedTriangle => {
                let r = 2.0 + 0.3 * (3.0 * t).cos();
                let rp = -0.9 * (3.0 * t).sin();
                let rpp = -2.7 * (3.0 * t).cos();
                radial_derivatives(r, rp, rpp, ct, st)
            }
        }
    }

    /// Outward unit normal (x_2'(t), -x_1'(t)) / |x'(t)|. All Table
    /// parametrizations are counterclockwise, so this points away from the
    /// interior.
    pub fn outward_normal(&self, t: f64) -> Result<Vec2> {
        let (dx, _) = self.derivatives(t);
        let j = dx.norm();
        if j < 1e-12 {
            return Err(Error::Domain {
                op: "outward_normal",
                msg: format!("degenerate parametrization at t = {t}"),
            });
        }
        Ok(Vec2::new(dx.y, -dx.x) / j)
    }

    /// Arc length, by the trapezoidal rule on |x'| (spectrally accurate).
    pub fn perimeter(&self) -> f64 {
        let n = 2048;
        (0..n)
            .map(|i| self.derivatives(2.0 * std::f64::consts::PI * i as f64 / n as f64).0.norm())
            .sum::<f64>()
            * 2.0
            * std::f64::consts::PI
            / n as f64
    }

    /// Quadrature nodes t_j = 2 pi j / N.
    pub fn nodes(&self) -> Vec<f64> {
        let n = self.quadrature_count;
        (0..n).map(|j| 2.0 * std::f64::consts::PI * j as f64 / n as f64).collect()
    }

    /// Winding-number test against a fine polyline of the curve.
    pub fn contains(&self, p: Vec2, segments: usize) -> bool {
        let mut crossings = 0u32;
        let mut prev = self.point(0.0);
        for i in 1..=segments {
            let t = 2.0 * std::f64::consts::PI * i as f64 / segments as f64;
            let cur = self.point(t);
            let (x1, y1, x2, y2) = (prev.x, prev.y, cur.x, cur.y);
            if (y1 > p.y) != (y2 > p.y) && p.x < (x2 - x1) * (p.y - y1) / (y2 - y1) + x1 {
                crossings += 1;
            }
            prev = cur;
        }
        crossings % 2 == 1
    }

    /// Radius of the smallest origin-independent bound: max |x(t)| over nodes.
    pub fn max_radius_from_origin(&self) -> f64 {
        (0..512)
            .map(|i| self.point(2.0 * std::f64::consts::PI * i as f64 / 512.0).norm())
            .fold(0.0, f64::max)
    }
}

fn radial_derivatives(r: f64, rp: f64, rpp: f64, ct: f64, st: f64) -> (Vec2, Vec2) {
    let e = Vec2::new(ct, st);
    let ep = Vec2::new(-st, ct);
    (e * rp + ep * r, e * (rpp - r) + ep * (2.0 * rp))
}

/// L observation/incidence directions, uniformly spaced starting at angle 0.
#[derive(Clone, Debug)]
pub struct DirectionSet {
    angles: Vec<f64>,
}

impl DirectionSet {
    /// L must be even so that the set is closed under negation.
    pub fn uniform(l: usize) -> Result<Self> {
        if l < 2 || l % 2 != 0 {
            return Err(Error::InvalidArgument(format!("L must be even and >= 2, got {l}")));
        }
        Ok(Self {
            angles: (0..l).map(|j| 2.0 * std::f64::consts::PI * j as f64 / l as f64).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn direction(&self, j: usize) -> Vec2 {
        Vec2::new(self.angles[j].cos(), self.angles[j].sin())
    }

    pub fn directions(&self) -> Vec<Vec2> {
        (0..self.len()).map(|j| self.direction(j)).collect()
    }

    /// Index of -x̂_j in the set.
    pub fn antipodal_index(&self, j: usize) -> usize {
        (j + self.len() / 2) % self.len()
    }
}

/// Rectangular tensor grid of sampling points, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

impl SamplingGrid {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(xmax > xmin && ymax > ymin) || nx < 2 || ny < 2 {
            return Err(Error::InvalidArgument(
                "grid needs xmax > xmin, ymax > ymin and nx, ny >= 2".into(),
            ));
        }
        Ok(Self { xmin, xmax, ymin, ymax, nx, ny })
    }

    pub fn x_coords(&self) -> Vec<f64> {
        let h = (self.xmax - self.xmin) / (self.nx - 1) as f64;
        (0..self.nx).map(|i| self.xmin + h * i as f64).collect()
    }

    pub fn y_coords(&self) -> Vec<f64> {
        let h = (self.ymax - self.ymin) / (self.ny - 1) as f64;
        (0..self.ny).map(|i| self.ymin + h * i as f64).collect()
    }

    /// Row-major nodes: y varies slowest, x fastest.
    pub fn nodes(&self) -> Vec<Vec2> {
        let xs = self.x_coords();
        let ys = self.y_coords();
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for &y in &ys {
            for &x in &xs {
                out.push(Vec2::new(x, y));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell area of the grid spacing (dx * dy), used for area estimates.
    pub fn cell_area(&self) -> f64 {
        (self.xmax - self.xmin) / (self.nx - 1) as f64 * (self.ymax - self.ymin)
            / (self.ny - 1) as f64
    }
}
