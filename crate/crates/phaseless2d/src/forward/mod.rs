//! Direct scattering solvers and synthetic phaseless / far-field data.

mod medium;
mod mie;
pub(crate) mod nystrom;

pub use mie::{analytic_circle_farfield, CircleKind};

use crate::config::ScalarExpr;
use crate::geometry::{BoundaryCurve, DirectionSet};
use crate::specfun::hankel1;
use crate::{Complex, Error, Result, Vec2};
use medium::MediumSystem;
use nalgebra::{DMatrix, DVector};
use nystrom::{farfield_row, potential_row, Ansatz, BieSystem, CurveGeometry, ObstacleSpec};
use rayon::prelude::*;

const I: Complex = Complex::new(0.0, 1.0);

/// Physical nature of one scatterer.
#[derive(Clone, Debug)]
pub enum Condition {
    /// Sound-soft (u = 0 on the boundary).
    Dirichlet,
    /// Robin condition du/dnu + rho u = 0 with rho = rho(t) along the
    /// parametrization; rho = 0 is the sound-hard case.
    Impedance(ScalarExpr),
    /// Penetrable scatterer with constant refractive index `n`, discretized
    /// on a `grid` x `grid` cell mesh over the curve's bounding box.
    Medium { n: Complex, grid: usize },
}

#[derive(Clone, Debug)]
pub struct Obstacle {
    pub curve: BoundaryCurve,
    pub condition: Condition,
}

/// A wavenumber plus a list of scatterers.
#[derive(Clone, Debug)]
pub struct ScatteringScene {
    pub k: f64,
    pub obstacles: Vec<Obstacle>,
}

impl ScatteringScene {
    pub fn new(k: f64, obstacles: Vec<Obstacle>) -> Result<Self> {
        let scene = Self { k, obstacles };
        scene.validate()?;
        Ok(scene)
    }

    /// Admissibility checks: k > 0, Im(rho) >= 0, Re(n) > 0, Im(n) >= 0,
    /// at most one medium obstacle and no mixing of medium with boundary
    /// obstacles, pairwise disjoint boundaries.
    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0) {
            return Err(Error::Admissibility(format!("wavenumber must be positive, got {}", self.k)));
        }
        let mut medium_count = 0usize;
        for ob in &self.obstacles {
            match &ob.condition {
                Condition::Dirichlet => {}
                Condition::Impedance(rho) => {
                    for i in 0..256 {
                        let t = 2.0 * std::f64::consts::PI * i as f64 / 256.0;
                        if rho.eval(t).im < -1e-14 {
                            return Err(Error::Admissibility(format!(
                                "Im(rho) must be >= 0; found {} at t = {t}",
                                rho.eval(t)
                            )));
                        }
                    }
                }
                Condition::Medium { n, .. } => {
                    medium_count += 1;
                    if n.re <= 0.0 || n.im < 0.0 {
                        return Err(Error::Admissibility(format!(
                            "refractive index must have Re > 0 and Im >= 0, got {n}"
                        )));
                    }
                }
            }
        }
        if medium_count > 1 || (medium_count == 1 && self.obstacles.len() > 1) {
            return Err(Error::Admissibility(
                "a medium scatterer cannot be combined with other obstacles".into(),
            ));
        }
        // pairwise disjointness on coarse polylines
        for a in 0..self.obstacles.len() {
            for b in (a + 1)..self.obstacles.len() {
                let ca = &self.obstacles[a].curve;
                let cb = &self.obstacles[b].curve;
                for i in 0..64 {
                    let p = ca.point(2.0 * std::f64::consts::PI * i as f64 / 64.0);
                    if cb.contains(p, 512) {
                        return Err(Error::Admissibility(format!(
                            "obstacles {a} and {b} overlap"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Non-fatal quadrature-resolution diagnostics: fewer than 10 points per
    /// wavelength of perimeter.
    pub fn resolution_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, ob) in self.obstacles.iter().enumerate() {
            if matches!(ob.condition, Condition::Medium { .. }) {
                continue;
            }
            let perimeter = ob.curve.perimeter();
            let wavelength = 2.0 * std::f64::consts::PI / self.k;
            let ppw = ob.curve.quadrature_count as f64 * wavelength / perimeter;
            if ppw < 10.0 {
                out.push(format!(
                    "obstacle {i}: {:.1} quadrature points per wavelength (< 10)",
                    ppw
                ));
            }
        }
        out
    }

    /// Largest |x| over all scatterer boundaries.
    pub fn max_radius(&self) -> f64 {
        self.obstacles.iter().map(|o| o.curve.max_radius_from_origin()).fold(0.0, f64::max)
    }

    fn rho_at_nodes(&self, ob: &Obstacle) -> Option<Vec<Complex>> {
        match &ob.condition {
            Condition::Impedance(rho) => {
                Some(ob.curve.nodes().iter().map(|&t| rho.eval(t)).collect())
            }
            _ => None,
        }
    }

    pub(crate) fn operator(&self) -> Result<SceneOp> {
        if self.obstacles.is_empty() {
            return Ok(SceneOp::Empty);
        }
        if let Condition::Medium { n, grid } = &self.obstacles[0].condition {
            if self.obstacles.len() == 1 {
                return Ok(SceneOp::Medium(MediumSystem::assemble(
                    self.k,
                    &self.obstacles[0].curve,
                    *n,
                    *grid,
                )?));
            }
        }
        let specs: Vec<ObstacleSpec> = self
            .obstacles
            .iter()
            .map(|ob| {
                if matches!(ob.condition, Condition::Medium { .. }) {
                    Err(Error::Admissibility(
                        "medium obstacle mixed with boundary obstacles".into(),
                    ))
                } else {
                    Ok(ObstacleSpec { curve: &ob.curve, rho: self.rho_at_nodes(ob) })
                }
            })
            .collect::<Result<_>>()?;
        Ok(SceneOp::Bie(Box::new(BieSystem::assemble(self.k, &specs)?)))
    }
}

pub(crate) enum SceneOp {
    Empty,
    Bie(Box<BieSystem>),
    Medium(MediumSystem),
}

impl SceneOp {
    fn solve_one(&self, k: f64, d: Vec2) -> Result<ForwardSolution> {
        match self {
            SceneOp::Empty => Ok(ForwardSolution { k, incident: d, payload: Payload::Empty }),
            SceneOp::Bie(sys) => {
                let dens = sys.solve_directions(&[d])?;
                Ok(ForwardSolution {
                    k,
                    incident: d,
                    payload: Payload::Boundary(boundary_pieces(sys, &dens, 0)),
                })
            }
            SceneOp::Medium(sys) => {
                let u = sys.solve_direction(d)?;
                let cells: Vec<(Vec2, Complex)> = sys
                    .support
                    .iter()
                    .map(|&(idx, c, m)| (c, m * u[idx]))
                    .collect();
                Ok(ForwardSolution {
                    k,
                    incident: d,
                    payload: Payload::Medium {
                        cells,
                        h: sys.h,
                        self_weight: sys.self_weight,
                    },
                })
            }
        }
    }
}

fn boundary_pieces(sys: &BieSystem, densities: &DMatrix<Complex>, col: usize) -> Vec<BoundaryPiece> {
    sys.geos
        .iter()
        .zip(&sys.ansatzes)
        .zip(&sys.offsets)
        .map(|((geo, ansatz), &off)| BoundaryPiece {
            geo: geo.clone(),
            ansatz: ansatz.clone(),
            density: (0..geo.n).map(|i| densities[(off + i, col)]).collect(),
        })
        .collect()
}

#[derive(Clone)]
pub(crate) struct BoundaryPiece {
    pub geo: CurveGeometry,
    pub ansatz: Ansatz,
    pub density: Vec<Complex>,
}

#[derive(Clone)]
enum Payload {
    Empty,
    Boundary(Vec<BoundaryPiece>),
    Medium { cells: Vec<(Vec2, Complex)>, h: f64, self_weight: Complex },
}

/// Scattered field of one incident direction, evaluable anywhere outside the
/// obstacles (boundary case) or anywhere (medium case).
#[derive(Clone)]
pub struct ForwardSolution {
    pub k: f64,
    pub incident: Vec2,
    payload: Payload,
}

impl ForwardSolution {
    /// Far-field pattern u^inf(x̂) in the normalization
    /// u^s = e^{i pi/4}/sqrt(8 k pi) e^{ik|x|}/sqrt(|x|) (u^inf + O(1/|x|)).
    pub fn far_field(&self, xhat: Vec2) -> Complex {
        match &self.payload {
            Payload::Empty => Complex::new(0.0, 0.0),
            Payload::Boundary(pieces) => pieces
                .iter()
                .map(|p| {
                    let row = farfield_row(self.k, &p.geo, &p.ansatz, xhat);
                    row.iter().zip(&p.density).map(|(r, d)| r * d).sum::<Complex>()
                })
                .sum(),
            Payload::Medium { cells, h, .. } => {
                let k2 = self.k * self.k;
                cells
                    .iter()
                    .map(|&(c, mu)| (-I * self.k * xhat.dot(&c)).exp() * mu)
                    .sum::<Complex>()
                    * k2
                    * h
                    * h
            }
        }
    }

    /// Scattered field u^s(x).
    pub fn scattered_field(&self, x: Vec2) -> Complex {
        match &self.payload {
            Payload::Empty => Complex::new(0.0, 0.0),
            Payload::Boundary(pieces) => pieces
                .iter()
                .map(|p| {
                    let row = potential_row(self.k, &p.geo, &p.ansatz, x);
                    row.iter().zip(&p.density).map(|(r, d)| r * d).sum::<Complex>()
                })
                .sum(),
            Payload::Medium { cells, h, self_weight } => {
                let k2 = self.k * self.k;
                let rho_eq = h / std::f64::consts::PI.sqrt();
                cells
                    .iter()
                    .map(|&(c, mu)| {
                        let r = (x - c).norm();
                        let g = if r < rho_eq {
                            *self_weight / (h * h)
                        } else {
                            I * 0.25 * hankel1(0, self.k * r).unwrap()
                        };
                        g * mu
                    })
                    .sum::<Complex>()
                    * k2
                    * h
                    * h
            }
        }
    }

    /// Total field u = u^i + u^s.
    pub fn total_field(&self, x: Vec2) -> Complex {
        (I * self.k * self.incident.dot(&x)).exp() + self.scattered_field(x)
    }

    /// True when `x` is closer to a boundary node set than the quadrature can
    /// resolve (evaluation accuracy degrades there).
    pub fn near_boundary(&self, x: Vec2) -> bool {
        match &self.payload {
            Payload::Boundary(pieces) => pieces.iter().any(|p| {
                let perim: f64 = p.geo.jac.iter().sum::<f64>() * p.geo.weight;
                let limit = 2.0 * std::f64::consts::PI * perim / p.geo.n as f64;
                p.geo.x.iter().any(|&y| (x - y).norm() < limit)
            }),
            _ => false,
        }
    }
}

/// Solve the scene for one incident plane wave e^{ik x·d}.
pub fn solve(scene: &ScatteringScene, d: Vec2) -> Result<ForwardSolution> {
    scene.validate()?;
    scene.operator()?.solve_one(scene.k, d)
}

/// Sound-soft solve; rejects scenes with non-Dirichlet obstacles.
pub fn solve_dirichlet(scene: &ScatteringScene, d: Vec2) -> Result<ForwardSolution> {
    if !scene.obstacles.iter().all(|o| matches!(o.condition, Condition::Dirichlet)) {
        return Err(Error::InvalidArgument("solve_dirichlet needs an all-Dirichlet scene".into()));
    }
    solve(scene, d)
}

/// Impedance (or sound-hard) solve; rejects other conditions.
pub fn solve_impedance(scene: &ScatteringScene, d: Vec2) -> Result<ForwardSolution> {
    if !scene.obstacles.iter().all(|o| matches!(o.condition, Condition::Impedance(_))) {
        return Err(Error::InvalidArgument("solve_impedance needs impedance obstacles".into()));
    }
    solve(scene, d)
}

/// Penetrable-medium solve; the scene must be a single medium obstacle.
pub fn solve_medium(scene: &ScatteringScene, d: Vec2) -> Result<ForwardSolution> {
    if scene.obstacles.len() != 1
        || !matches!(scene.obstacles[0].condition, Condition::Medium { .. })
    {
        return Err(Error::InvalidArgument("solve_medium needs a single medium obstacle".into()));
    }
    solve(scene, d)
}

/// Provenance of the noise applied to a dataset.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseRecord {
    Exact,
    Noisy { delta: f64, seed: u64 },
}

/// L x L matrix of |u(R x̂_i, x̂_j)| with its acquisition metadata.
#[derive(Clone, Debug)]
pub struct PhaselessDataset {
    pub l: usize,
    pub r: f64,
    pub k: f64,
    /// values[(i, j)] = |u(R x̂_i, x̂_j)|, observation index i, incidence j.
    pub values: DMatrix<f64>,
    pub noise: NoiseRecord,
}

impl PhaselessDataset {
    pub fn validate(&self) -> Result<()> {
        if self.values.nrows() != self.l || self.values.ncols() != self.l {
            return Err(Error::ShapeMismatch(format!(
                "dataset claims L = {} but matrix is {}x{}",
                self.l,
                self.values.nrows(),
                self.values.ncols()
            )));
        }
        if self.values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidArgument("dataset entries must be finite and >= 0".into()));
        }
        Ok(())
    }
}

/// L x L far-field matrix u^inf(x̂_i, x̂_j).
#[derive(Clone, Debug)]
pub struct FarFieldMatrix {
    pub l: usize,
    pub k: f64,
    pub values: DMatrix<Complex>,
}

/// Per-direction forward solves batched behind one factorization.
fn batch_solutions(scene: &ScatteringScene, dirs: &DirectionSet) -> Result<Vec<ForwardSolution>> {
    scene.validate()?;
    let op = scene.operator()?;
    match &op {
        SceneOp::Empty => Ok(dirs
            .directions()
            .into_iter()
            .map(|d| ForwardSolution { k: scene.k, incident: d, payload: Payload::Empty })
            .collect()),
        SceneOp::Bie(sys) => {
            let dvecs = dirs.directions();
            let dens = sys.solve_directions(&dvecs)?;
            Ok(dvecs
                .iter()
                .enumerate()
                .map(|(c, &d)| ForwardSolution {
                    k: scene.k,
                    incident: d,
                    payload: Payload::Boundary(boundary_pieces(sys, &dens, c)),
                })
                .collect())
        }
        SceneOp::Medium(_) => {
            let dvecs = dirs.directions();
            dvecs
                .par_iter()
                .map(|&d| op.solve_one(scene.k, d))
                .collect::<Result<Vec<_>>>()
        }
    }
}

/// u^s(x_i, d_j) for every observation point and incident direction; the
/// medium case shares one kernel-evaluation matrix across directions.
fn scattered_matrix(
    scene: &ScatteringScene,
    dirs: &DirectionSet,
    obs: &[Vec2],
) -> Result<DMatrix<Complex>> {
    let op = scene.operator()?;
    let l = dirs.len();
    match &op {
        SceneOp::Empty => Ok(DMatrix::zeros(obs.len(), l)),
        SceneOp::Bie(sys) => {
            let dvecs = dirs.directions();
            let dens = sys.solve_directions(&dvecs)?;
            let sols: Vec<ForwardSolution> = dvecs
                .iter()
                .enumerate()
                .map(|(c, &d)| ForwardSolution {
                    k: scene.k,
                    incident: d,
                    payload: Payload::Boundary(boundary_pieces(sys, &dens, c)),
                })
                .collect();
            let rows: Vec<Vec<Complex>> = obs
                .par_iter()
                .map(|&xi| (0..l).map(|j| sols[j].scattered_field(xi)).collect())
                .collect();
            Ok(DMatrix::from_fn(obs.len(), l, |i, j| rows[i][j]))
        }
        SceneOp::Medium(sys) => {
            let dvecs = dirs.directions();
            let contrasts: Vec<DVector<Complex>> = dvecs
                .par_iter()
                .map(|&d| {
                    sys.solve_direction(d).map(|u| {
                        DVector::from_fn(sys.support.len(), |c, _| {
                            let (idx, _, m) = sys.support[c];
                            m * u[idx]
                        })
                    })
                })
                .collect::<Result<_>>()?;
            let mut v = DMatrix::zeros(sys.support.len(), l);
            for (j, col) in contrasts.iter().enumerate() {
                v.set_column(j, col);
            }
            let k = scene.k;
            let h2 = sys.h * sys.h;
            let rows: Vec<Vec<Complex>> = obs
                .par_iter()
                .map(|&xi| {
                    let kernel = DVector::from_fn(sys.support.len(), |c, _| {
                        let (_, y, _) = sys.support[c];
                        I * 0.25 * crate::specfun::hankel1(0, k * (xi - y).norm()).unwrap()
                    });
                    let row = kernel.transpose() * &v;
                    (0..l).map(|j| row[(0, j)] * k * k * h2).collect()
                })
                .collect();
            Ok(DMatrix::from_fn(obs.len(), l, |i, j| rows[i][j]))
        }
    }
}

/// Simulate the phaseless total-field dataset |u(R x̂_i, x̂_j)|, i, j = 1..L.
///
/// The modulus is computed as |1 + e^{-ikR x̂_i·x̂_j} u^s| so an empty scene
/// yields exactly 1.0 in every entry.
pub fn simulate_phaseless(scene: &ScatteringScene, r: f64, l: usize) -> Result<PhaselessDataset> {
    let dirs = DirectionSet::uniform(l)?;
    if scene.max_radius() >= r {
        return Err(Error::Admissibility(format!(
            "obstacles must lie strictly inside the measurement circle of radius {r}"
        )));
    }
    scene.validate()?;
    let obs: Vec<Vec2> = dirs.directions().iter().map(|&x| x * r).collect();
    let us = scattered_matrix(scene, &dirs, &obs)?;
    let k = scene.k;
    let values = DMatrix::from_fn(l, l, |i, j| {
        let phase = (-I * k * dirs.direction(j).dot(&obs[i])).exp();
        (Complex::new(1.0, 0.0) + phase * us[(i, j)]).norm()
    });
    Ok(PhaselessDataset { l, r, k, values, noise: NoiseRecord::Exact })
}

/// Simulate the far-field matrix u^inf(x̂_i, x̂_j).
pub fn simulate_farfield(scene: &ScatteringScene, l: usize) -> Result<FarFieldMatrix> {
    let dirs = DirectionSet::uniform(l)?;
    let sols = batch_solutions(scene, &dirs)?;
    let xh = dirs.directions();
    let rows: Vec<Vec<Complex>> = xh
        .par_iter()
        .map(|&xi| (0..l).map(|j| sols[j].far_field(xi)).collect())
        .collect();
    let values = DMatrix::from_fn(l, l, |i, j| rows[i][j]);
    Ok(FarFieldMatrix { l, k: scene.k, values })
}

/// The `index`-th output of SplitMix64 seeded with `seed`, mapped to the
/// uniform distribution on [-1, 1). This is the entire noise generator
/// ("splitmix64-v1"); any implementation of these three xor-multiply steps
/// reproduces the datasets bit for bit.
pub(crate) fn noise_uniform(seed: u64, index: u64) -> f64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    2.0 * ((z >> 11) as f64 / (1u64 << 53) as f64) - 1.0
}

/// Multiplicative uniform noise |u_delta| = |u| (1 + delta zeta), with the
/// zeta drawn row-major from the seeded splitmix64-v1 stream.
pub fn add_noise(data: &PhaselessDataset, delta: f64, seed: u64) -> Result<PhaselessDataset> {
    if delta < 0.0 {
        return Err(Error::InvalidArgument(format!("noise ratio must be >= 0, got {delta}")));
    }
    if delta == 0.0 {
        return Ok(data.clone());
    }
    let l = data.l;
    let values = DMatrix::from_fn(l, l, |i, j| {
        let zeta = noise_uniform(seed, (i * l + j) as u64);
        data.values[(i, j)] * (1.0 + delta * zeta)
    });
    Ok(PhaselessDataset { l, r: data.r, k: data.k, values, noise: NoiseRecord::Noisy { delta, seed } })
}

/// Default quadrature size: max(256, 12 points per wavelength of perimeter),
/// rounded up to even.
pub fn default_quadrature(curve: &BoundaryCurve, k: f64) -> usize {
    let perimeter = curve.perimeter();
    let by_ppw = (12.0 * perimeter * k / (2.0 * std::f64::consts::PI)).ceil() as usize;
    let n = by_ppw.max(256);
    n + (n & 1)
}

#[cfg(test)]
mod tests;
