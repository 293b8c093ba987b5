//! Nyström discretization of the boundary integral equations with
//! Kussmaul–Martensen quadrature for the logarithmic singularity.
//!
//! Sound-soft obstacles use the combined double/single-layer ansatz
//! u^s = (D - i eta S) phi with eta = k, which stays invertible at interior
//! eigenvalues. Impedance obstacles use a single-layer ansatz
//! u^s = S phi via the exterior jump relation (K' - I/2) phi + rho S phi.
//! Multi-obstacle scenes couple the per-obstacle ansatzes in one block
//! system; cross-obstacle kernels are smooth and use plain trapezoid weights.

use crate::geometry::BoundaryCurve;
use crate::specfun::{bessel_j, hankel1, EULER_GAMMA};
use crate::{Complex, Error, Result, Vec2};
use nalgebra::{DMatrix, DVector};

const I: Complex = Complex::new(0.0, 1.0);

/// Node-sampled geometry of one boundary curve.
#[derive(Clone, Debug)]
pub(crate) struct CurveGeometry {
    pub n: usize,
    pub t: Vec<f64>,
    pub x: Vec<Vec2>,
    pub ddx: Vec<Vec2>,
    pub jac: Vec<f64>,
    /// (x_2'(t), -x_1'(t)) = outward normal times the Jacobian.
    pub nu_jac: Vec<Vec2>,
    /// Trapezoid weight 2 pi / n.
    pub weight: f64,
}

impl CurveGeometry {
    pub fn build(curve: &BoundaryCurve) -> Self {
        let n = curve.quadrature_count;
        let t = curve.nodes();
        let x: Vec<Vec2> = t.iter().map(|&ti| curve.point(ti)).collect();
        let mut ddx = Vec::with_capacity(n);
        let mut jac = Vec::with_capacity(n);
        let mut nu_jac = Vec::with_capacity(n);
        for &ti in &t {
            let (d1, d2) = curve.derivatives(ti);
            ddx.push(d2);
            jac.push(d1.norm());
            nu_jac.push(Vec2::new(d1.y, -d1.x));
        }
        Self { n, t, x, ddx, jac, nu_jac, weight: 2.0 * std::f64::consts::PI / n as f64 }
    }
}

/// Kussmaul–Martensen weights R_m for the quadrature
/// int_0^{2pi} ln(4 sin^2((t_i - t_j)/2)) f(t_j) dt_j ~ sum_j R_{(i-j) mod n} f(t_j),
/// exact for trigonometric polynomials of degree < n/2.
pub(crate) fn km_weight_table(n: usize) -> Vec<f64> {
    let half = n / 2;
    let mut cos_table = vec![0.0; n];
    for (i, c) in cos_table.iter_mut().enumerate() {
        *c = (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos();
    }
    (0..n)
        .map(|m| {
            let mut s = 0.0;
            for l in 1..half {
                s += cos_table[(l * m) % n] / l as f64;
            }
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            -4.0 * std::f64::consts::PI / n as f64 * s
                - 4.0 * std::f64::consts::PI / (n * n) as f64 * sign
        })
        .collect()
}

/// Off-node weights R_j(t) for evaluation between quadrature points.
#[cfg_attr(not(test), allow(dead_code))]
fn km_weights_at(n: usize, t: f64, nodes: &[f64]) -> Vec<f64> {
    let half = (n / 2) as f64;
    nodes
        .iter()
        .map(|&tj| {
            let d = t - tj;
            let mut s = 0.0;
            for l in 1..(n / 2) {
                s += (l as f64 * d).cos() / l as f64;
            }
            -4.0 * std::f64::consts::PI / n as f64 * s
                - std::f64::consts::PI / (half * half) * (half * d).cos()
        })
        .collect()
}

fn ln_4sin2(dt: f64) -> f64 {
    let s = (0.5 * dt).sin();
    (4.0 * s * s).ln()
}

/// Single-layer kernel split: returns (L1, L2) with
/// kernel = L1 ln(4 sin^2((t-tau)/2)) + L2.
fn s_kernel_split(k: f64, xi: Vec2, xj: Vec2, jac_j: f64) -> (f64, Complex) {
    let r = (xi - xj).norm();
    let l1 = -bessel_j(0, k * r).unwrap() * jac_j / (4.0 * std::f64::consts::PI);
    let lfull = I * 0.25 * hankel1(0, k * r).unwrap() * jac_j;
    (l1, lfull)
}

fn s_diag(k: f64, jac_i: f64) -> Complex {
    (I * 0.25
        - Complex::new(
            EULER_GAMMA / (2.0 * std::f64::consts::PI)
                + (0.5 * k * jac_i).ln() / (2.0 * std::f64::consts::PI),
            0.0,
        ))
        * jac_i
}

/// Double-layer kernel split (same curve): geometric factor
/// g = (x_i - x_j) . nu_jac_j.
fn k_kernel_split(k: f64, xi: Vec2, xj: Vec2, nu_jac_j: Vec2) -> (f64, Complex) {
    let d = xi - xj;
    let r = d.norm();
    let g = d.dot(&nu_jac_j);
    let k1 = -k * bessel_j(1, k * r).unwrap() * g / (4.0 * std::f64::consts::PI * r);
    let hfull = I * 0.25 * k * hankel1(1, k * r).unwrap() * g / r;
    (k1, hfull)
}

/// Curvature diagonal shared by K and K'.
fn k_diag(ddx_i: Vec2, nu_jac_i: Vec2, jac_i: f64) -> f64 {
    ddx_i.dot(&nu_jac_i) / (4.0 * std::f64::consts::PI * jac_i * jac_i)
}

/// Adjoint double-layer kernel split (same curve): g' = (x_i - x_j) . nu_i jac_j.
fn kprime_kernel_split(k: f64, xi: Vec2, xj: Vec2, nu_i: Vec2, jac_j: f64) -> (f64, Complex) {
    let d = xi - xj;
    let r = d.norm();
    let g = d.dot(&nu_i) * jac_j;
    let k1 = k * bessel_j(1, k * r).unwrap() * g / (4.0 * std::f64::consts::PI * r);
    let hfull = -I * 0.25 * k * hankel1(1, k * r).unwrap() * g / r;
    (k1, hfull)
}

/// Assemble the same-curve single-layer matrix S.
pub(crate) fn assemble_s(k: f64, geo: &CurveGeometry) -> DMatrix<Complex> {
    let n = geo.n;
    let rm = km_weight_table(n);
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let l1 = -geo.jac[i] / (4.0 * std::f64::consts::PI);
            Complex::new(rm[0] * l1, 0.0) + geo.weight * s_diag(k, geo.jac[i])
        } else {
            let (l1, lfull) = s_kernel_split(k, geo.x[i], geo.x[j], geo.jac[j]);
            let l2 = lfull - l1 * ln_4sin2(geo.t[i] - geo.t[j]);
            Complex::new(rm[(n + i - j) % n] * l1, 0.0) + geo.weight * l2
        }
    })
}

pub(crate) fn assemble_k(k: f64, geo: &CurveGeometry) -> DMatrix<Complex> {
    let n = geo.n;
    let rm = km_weight_table(n);
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::new(geo.weight * k_diag(geo.ddx[i], geo.nu_jac[i], geo.jac[i]), 0.0)
        } else {
            let (k1, hfull) = k_kernel_split(k, geo.x[i], geo.x[j], geo.nu_jac[j]);
            let k2 = hfull - k1 * ln_4sin2(geo.t[i] - geo.t[j]);
            Complex::new(rm[(n + i - j) % n] * k1, 0.0) + geo.weight * k2
        }
    })
}

pub(crate) fn assemble_kprime(k: f64, geo: &CurveGeometry) -> DMatrix<Complex> {
    let n = geo.n;
    let rm = km_weight_table(n);
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::new(geo.weight * k_diag(geo.ddx[i], geo.nu_jac[i], geo.jac[i]), 0.0)
        } else {
            let nu_i = geo.nu_jac[i] / geo.jac[i];
            let (k1, hfull) = kprime_kernel_split(k, geo.x[i], geo.x[j], nu_i, geo.jac[j]);
            let k2 = hfull - k1 * ln_4sin2(geo.t[i] - geo.t[j]);
            Complex::new(rm[(n + i - j) % n] * k1, 0.0) + geo.weight * k2
        }
    })
}

/// Which layer ansatz represents an obstacle's scattered field.
#[derive(Clone, Debug)]
pub(crate) enum Ansatz {
    /// u^s = (D - i eta S) phi, eta = k.
    Combined { eta: f64 },
    /// u^s = S phi (impedance / sound-hard), with rho sampled at the nodes.
    SingleLayer { rho: Vec<Complex> },
}

/// Potentials of obstacle `b` evaluated at an arbitrary point away from b's
/// boundary (smooth kernels, trapezoid rule).
pub(crate) fn potential_row(
    k: f64,
    geo: &CurveGeometry,
    ansatz: &Ansatz,
    p: Vec2,
) -> Vec<Complex> {
    (0..geo.n)
        .map(|j| {
            let d = p - geo.x[j];
            let r = d.norm();
            let h0 = hankel1(0, k * r).unwrap();
            match ansatz {
                Ansatz::Combined { eta } => {
                    let h1 = hankel1(1, k * r).unwrap();
                    let dl = I * 0.25 * k * h1 * (d.dot(&geo.nu_jac[j]) / r);
                    let sl = I * 0.25 * h0 * geo.jac[j];
                    geo.weight * (dl - I * eta * sl)
                }
                Ansatz::SingleLayer { .. } => geo.weight * I * 0.25 * h0 * geo.jac[j],
            }
        })
        .collect()
}

/// Far-field kernel row of obstacle `b` under the e^{i pi/4}/sqrt(8 k pi)
/// normalization: single layer contributes e^{-ik x̂·y}, double layer
/// -ik (x̂·nu) e^{-ik x̂·y}.
pub(crate) fn farfield_row(
    k: f64,
    geo: &CurveGeometry,
    ansatz: &Ansatz,
    xhat: Vec2,
) -> Vec<Complex> {
    (0..geo.n)
        .map(|j| {
            let phase = (-I * k * xhat.dot(&geo.x[j])).exp();
            match ansatz {
                Ansatz::Combined { eta } => {
                    geo.weight
                        * (-I * k * xhat.dot(&geo.nu_jac[j]) - I * eta * geo.jac[j])
                        * phase
                }
                Ansatz::SingleLayer { .. } => geo.weight * geo.jac[j] * phase,
            }
        })
        .collect()
}

/// Normal-derivative + rho trace of obstacle b's potential at a point of
/// obstacle a (disjoint curves, smooth kernels).
fn bc_row_cross(
    k: f64,
    geo_b: &CurveGeometry,
    ansatz_b: &Ansatz,
    p: Vec2,
    row_kind: &RowKind,
) -> Vec<Complex> {
    match row_kind {
        RowKind::Trace => potential_row(k, geo_b, ansatz_b, p),
        RowKind::ImpedanceTrace { nu, rho } => {
            let pot = potential_row(k, geo_b, ansatz_b, p);
            (0..geo_b.n)
                .map(|j| {
                    let d = p - geo_b.x[j];
                    let r = d.norm();
                    let h1 = hankel1(1, k * r).unwrap();
                    let dn = match ansatz_b {
                        Ansatz::SingleLayer { .. } => {
                            // d/dnu(p) of S phi
                            -I * 0.25 * k * h1 * (d.dot(nu) / r) * geo_b.jac[j]
                        }
                        Ansatz::Combined { eta } => {
                            // d/dnu(p) of (D - i eta S) phi
                            let h0 = hankel1(0, k * r).unwrap();
                            let g = d.dot(&geo_b.nu_jac[j]);
                            let h1p = h0 - h1 / (k * r); // H_1'(kr)
                            let ddl = I * 0.25
                                * k
                                * (h1p * k * (d.dot(nu) / r) * (g / r)
                                    + h1 * (nu.dot(&geo_b.nu_jac[j]) / r)
                                    - h1 * g * d.dot(nu) / (r * r * r));
                            let dsl = -I * 0.25 * k * h1 * (d.dot(nu) / r) * geo_b.jac[j];
                            ddl - I * eta * dsl
                        }
                    };
                    geo_b.weight * dn + *rho * pot[j]
                })
                .collect()
        }
    }
}

enum RowKind {
    Trace,
    ImpedanceTrace { nu: Vec2, rho: Complex },
}

/// Assembled and factored block boundary-integral system for a scene of
/// impenetrable obstacles.
pub(crate) struct BieSystem {
    pub k: f64,
    pub geos: Vec<CurveGeometry>,
    pub ansatzes: Vec<Ansatz>,
    pub offsets: Vec<usize>,
    pub total: usize,
    matrix: DMatrix<Complex>,
    lu: nalgebra::LU<Complex, nalgebra::Dyn, nalgebra::Dyn>,
}

pub(crate) struct ObstacleSpec<'a> {
    pub curve: &'a BoundaryCurve,
    /// None = sound-soft (combined ansatz); Some(rho at nodes) = impedance.
    pub rho: Option<Vec<Complex>>,
}

impl BieSystem {
    pub fn assemble(k: f64, obstacles: &[ObstacleSpec]) -> Result<Self> {
        let geos: Vec<CurveGeometry> =
            obstacles.iter().map(|o| CurveGeometry::build(o.curve)).collect();
        let ansatzes: Vec<Ansatz> = obstacles
            .iter()
            .map(|o| match &o.rho {
                None => Ansatz::Combined { eta: k },
                Some(r) => Ansatz::SingleLayer { rho: r.clone() },
            })
            .collect();
        let mut offsets = vec![0usize];
        for g in &geos {
            offsets.push(offsets.last().unwrap() + g.n);
        }
        let total = *offsets.last().unwrap();
        let mut a = DMatrix::<Complex>::zeros(total, total);

        for (bi, (geo_a, ans_a)) in geos.iter().zip(&ansatzes).enumerate() {
            let ra = offsets[bi];
            for (bj, (geo_b, ans_b)) in geos.iter().zip(&ansatzes).enumerate() {
                let ca = offsets[bj];
                if bi == bj {
                    let block = match ans_a {
                        Ansatz::Combined { eta } => {
                            let s = assemble_s(k, geo_a);
                            let kk = assemble_k(k, geo_a);
                            let mut blk = kk - s * (I * *eta);
                            for i in 0..geo_a.n {
                                blk[(i, i)] += Complex::new(0.5, 0.0);
                            }
                            blk
                        }
                        Ansatz::SingleLayer { rho } => {
                            let s = assemble_s(k, geo_a);
                            let kp = assemble_kprime(k, geo_a);
                            let mut blk = kp;
                            for i in 0..geo_a.n {
                                blk[(i, i)] -= Complex::new(0.5, 0.0);
                                for j in 0..geo_a.n {
                                    blk[(i, j)] += rho[i] * s[(i, j)];
                                }
                            }
                            blk
                        }
                    };
                    a.view_mut((ra, ca), (geo_a.n, geo_a.n)).copy_from(&block);
                } else {
                    for i in 0..geo_a.n {
                        let row_kind = match ans_a {
                            Ansatz::Combined { .. } => RowKind::Trace,
                            Ansatz::SingleLayer { rho } => RowKind::ImpedanceTrace {
                                nu: geo_a.nu_jac[i] / geo_a.jac[i],
                                rho: rho[i],
                            },
                        };
                        let row = bc_row_cross(k, geo_b, ans_b, geo_a.x[i], &row_kind);
                        for (j, v) in row.into_iter().enumerate() {
                            a[(ra + i, ca + j)] = v;
                        }
                    }
                }
            }
        }
        let lu = a.clone().lu();
        Ok(Self { k, geos, ansatzes, offsets, total, matrix: a, lu })
    }

    /// Boundary data rows for one incident plane-wave direction.
    fn rhs(&self, d: Vec2) -> DVector<Complex> {
        let mut b = DVector::zeros(self.total);
        for (bi, geo) in self.geos.iter().enumerate() {
            let off = self.offsets[bi];
            for i in 0..geo.n {
                let ui = (I * self.k * d.dot(&geo.x[i])).exp();
                b[off + i] = match &self.ansatzes[bi] {
                    Ansatz::Combined { .. } => -ui,
                    Ansatz::SingleLayer { rho } => {
                        let nu = geo.nu_jac[i] / geo.jac[i];
                        -(I * self.k * d.dot(&nu) + rho[i]) * ui
                    }
                };
            }
        }
        b
    }

    /// Solve for the densities of many incident directions at once.
    /// Returns (total x ndirs) and enforces the discrete residual tolerance.
    pub fn solve_directions(&self, dirs: &[Vec2]) -> Result<DMatrix<Complex>> {
        let mut b = DMatrix::zeros(self.total, dirs.len());
        for (c, &d) in dirs.iter().enumerate() {
            b.set_column(c, &self.rhs(d));
        }
        let x = self
            .lu
            .solve(&b)
            .ok_or_else(|| Error::SingularSystem("BIE system LU factorization failed".into()))?;
        let resid = (&self.matrix * &x - &b).norm() / b.norm().max(f64::MIN_POSITIVE);
        if resid > 1e-12 {
            return Err(Error::Residual { residual: resid, tol: 1e-12 });
        }
        Ok(x)
    }
}

/// Exterior trace of the scattered field of a one-obstacle combined-ansatz
/// solution at boundary parameter `t` (off-node evaluation, same splitting
/// with off-node weights). Used to verify the boundary condition.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn dirichlet_boundary_trace(
    k: f64,
    eta: f64,
    curve: &BoundaryCurve,
    geo: &CurveGeometry,
    density: &[Complex],
    t: f64,
) -> Complex {
    let n = geo.n;
    let rw = km_weights_at(n, t, &geo.t);
    let xt = curve.point(t);
    let (d1t, _) = curve.derivatives(t);
    let jac_t = d1t.norm();
    let mut acc = Complex::new(0.0, 0.0);
    for j in 0..n {
        let close = (xt - geo.x[j]).norm() < 1e-12;
        let (s1, s2, kk1, kk2) = if close {
            let l1 = -geo.jac[j] / (4.0 * std::f64::consts::PI);
            (l1, s_diag(k, jac_t), 0.0, Complex::new(k_diag(geo.ddx[j], geo.nu_jac[j], geo.jac[j]), 0.0))
        } else {
            let (l1, lfull) = s_kernel_split(k, xt, geo.x[j], geo.jac[j]);
            let l2 = lfull - l1 * ln_4sin2(t - geo.t[j]);
            let (k1, hfull) = k_kernel_split(k, xt, geo.x[j], geo.nu_jac[j]);
            let k2 = hfull - k1 * ln_4sin2(t - geo.t[j]);
            (l1, l2, k1, k2)
        };
        let s_wc = Complex::new(rw[j] * s1, 0.0) + geo.weight * s2;
        let k_wc = Complex::new(rw[j] * kk1, 0.0) + geo.weight * kk2;
        acc += (k_wc - I * eta * s_wc) * density[j];
    }
    // exterior jump of the double layer: + phi(t)/2
    acc + 0.5 * trig_interpolate(density, t)
}

/// Impedance boundary residual (d/dnu + rho)(u^i + S phi) at off-node t.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn impedance_boundary_residual(
    k: f64,
    curve: &BoundaryCurve,
    geo: &CurveGeometry,
    rho_fn: &dyn Fn(f64) -> Complex,
    density: &[Complex],
    t: f64,
    d: Vec2,
) -> Complex {
    let n = geo.n;
    let rw = km_weights_at(n, t, &geo.t);
    let xt = curve.point(t);
    let (d1t, _) = curve.derivatives(t);
    let jac_t = d1t.norm();
    let nu_t = Vec2::new(d1t.y, -d1t.x) / jac_t;
    let rho_t = rho_fn(t);
    let mut acc = Complex::new(0.0, 0.0);
    for j in 0..n {
        let close = (xt - geo.x[j]).norm() < 1e-12;
        let (s1, s2, kp1, kp2) = if close {
            let l1 = -geo.jac[j] / (4.0 * std::f64::consts::PI);
            (l1, s_diag(k, jac_t), 0.0, Complex::new(k_diag(geo.ddx[j], geo.nu_jac[j], geo.jac[j]), 0.0))
        } else {
            let (l1, lfull) = s_kernel_split(k, xt, geo.x[j], geo.jac[j]);
            let l2 = lfull - l1 * ln_4sin2(t - geo.t[j]);
            let (k1, hfull) = kprime_kernel_split(k, xt, geo.x[j], nu_t, geo.jac[j]);
            let k2 = hfull - k1 * ln_4sin2(t - geo.t[j]);
            (l1, l2, k1, k2)
        };
        let s_wc = Complex::new(rw[j] * s1, 0.0) + geo.weight * s2;
        let kp_wc = Complex::new(rw[j] * kp1, 0.0) + geo.weight * kp2;
        acc += (kp_wc + rho_t * s_wc) * density[j];
    }
    // exterior jump of d/dnu S: - phi(t)/2
    acc -= 0.5 * trig_interpolate(density, t);
    let ui = (I * k * d.dot(&xt)).exp();
    let dui = I * k * d.dot(&nu_t) * ui;
    acc + dui + rho_t * ui
}

/// Trigonometric interpolation of node values at parameter t.
#[cfg_attr(not(test), allow(dead_code))]
fn trig_interpolate(values: &[Complex], t: f64) -> Complex {
    let n = values.len();
    let half = (n / 2) as i64;
    let mut acc = Complex::new(0.0, 0.0);
    for m in -half + 1..half {
        let mut c = Complex::new(0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            let tj = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            c += v * (-I * (m as f64) * tj).exp();
        }
        acc += c / n as f64 * (I * (m as f64) * t).exp();
    }
    // Nyquist mode as a cosine
    let mut cn = Complex::new(0.0, 0.0);
    for (j, v) in values.iter().enumerate() {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        cn += v * sign;
    }
    acc + cn / n as f64 * (half as f64 * t).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CurveKind;

    #[test]
    fn km_quadrature_exact_on_cosines() {
        // int ln(4 sin^2((t - tau)/2)) cos(m tau) dtau = -(2 pi / m) cos(m t)
        let n = 32;
        let rm = km_weight_table(n);
        for m in 1..(n / 2) {
            for i in [0usize, 3, 17] {
                let ti = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                let mut q = 0.0;
                for j in 0..n {
                    let tj = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                    q += rm[(n + i - j) % n] * (m as f64 * tj).cos();
                }
                let expect = -2.0 * std::f64::consts::PI / m as f64 * (m as f64 * ti).cos();
                assert!((q - expect).abs() < 1e-12, "m={m} i={i}: {q} vs {expect}");
            }
        }
        // constant integrates to zero
        let total: f64 = rm.iter().sum();
        assert!(total.abs() < 1e-12);
    }

    #[test]
    fn off_node_weights_match_table() {
        let n = 16;
        let rm = km_weight_table(n);
        let nodes: Vec<f64> =
            (0..n).map(|j| 2.0 * std::f64::consts::PI * j as f64 / n as f64).collect();
        let at = km_weights_at(n, nodes[3], &nodes);
        for j in 0..n {
            assert!((at[j] - rm[(n + 3 - j) % n]).abs() < 1e-12);
        }
    }

    #[test]
    fn laplace_double_layer_gauss_identity() {
        // For k -> 0 the double-layer of the constant density integrates to
        // -1/2 on the boundary. Use the Helmholtz kernel at tiny k as proxy.
        let curve = BoundaryCurve::new(CurveKind::Kite, Vec2::zeros(), 128).unwrap();
        let geo = CurveGeometry::build(&curve);
        let kmat = assemble_k(1e-6, &geo);
        let ones = DVector::from_element(geo.n, Complex::new(1.0, 0.0));
        let v = &kmat * &ones;
        for i in 0..geo.n {
            assert!((v[i].re + 0.5).abs() < 1e-6, "row {i}: {}", v[i]);
            assert!(v[i].im.abs() < 1e-6);
        }
    }

    #[test]
    fn trig_interpolation_reproduces_smooth_function() {
        let n = 32;
        let vals: Vec<Complex> = (0..n)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                Complex::new((2.0 * t).cos() + 0.3 * t.sin(), (3.0 * t).sin())
            })
            .collect();
        for t in [0.123, 1.9, 4.4] {
            let v = trig_interpolate(&vals, t);
            let expect = Complex::new((2.0 * t).cos() + 0.3 * t.sin(), (3.0 * t).sin());
            assert!((v - expect).norm() < 1e-12);
        }
    }
}
