//! Separation-of-variables far fields for the origin-centered circle: the
//! in-repo oracle every boundary solver is checked against.

use crate::specfun::{bessel_j, bessel_y};
use crate::{Complex, Error, Result, Vec2};

const I: Complex = Complex::new(0.0, 1.0);

/// Boundary condition of the analytic circle solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CircleKind {
    Dirichlet,
    Neumann,
    /// Constant refractive index of the penetrable disc.
    Transmission(Complex),
}

/// J_n(z) for complex z by the ascending series; adequate for |z| up to ~25,
/// which covers every transmission oracle in the test matrix. Returns the
/// whole ladder J_0..J_nmax.
fn complex_j_ladder(nmax: usize, z: Complex) -> Vec<Complex> {
    let q = z * z * 0.25;
    let mut out = Vec::with_capacity(nmax + 1);
    let mut front = Complex::new(1.0, 0.0); // (z/2)^n / n!
    for n in 0..=nmax {
        let mut term = front;
        let mut sum = term;
        for m in 1..200 {
            term *= -q / (m as f64 * (m + n) as f64);
            sum += term;
            if term.norm() < 1e-18 * sum.norm().max(1e-280) {
                break;
            }
        }
        out.push(sum);
        front *= z * 0.5 / (n + 1) as f64;
    }
    out
}

/// Far-field pattern u^inf(x̂, d) of the unit-amplitude plane wave scattered
/// by the circle of radius `a`, in the normalization
/// u^s = e^{i pi/4}/sqrt(8 k pi) e^{ik|x|}/sqrt(|x|) (u^inf + O(1/|x|)).
pub fn analytic_circle_farfield(
    k: f64,
    radius: f64,
    kind: CircleKind,
    xhat: Vec2,
    d: Vec2,
) -> Result<Complex> {
    let ka = k * radius;
    if !(ka > 0.0) {
        return Err(Error::InvalidArgument(format!("need k*a > 0, got {ka}")));
    }
    if ka > 200.0 {
        return Err(Error::InvalidArgument(format!("k*a = {ka} beyond supported range 200")));
    }
    let nmax = ka.ceil() as usize + 40;
    let psi = xhat.y.atan2(xhat.x) - d.y.atan2(d.x);

    // ratio coefficients c_n for n = 0..nmax
    let mut coef = Vec::with_capacity(nmax + 1);
    match kind {
        CircleKind::Dirichlet => {
            for n in 0..=nmax {
                coef.push(safe_ratio(bessel_j(n as i32, ka)?, bessel_y(n as i32, ka)?));
            }
        }
        CircleKind::Neumann => {
            for n in 0..=nmax {
                let jp = 0.5 * (bessel_j(n as i32 - 1, ka)? - bessel_j(n as i32 + 1, ka)?);
                let yp = 0.5 * (bessel_y_safe(n as i32 - 1, ka)? - bessel_y_safe(n as i32 + 1, ka)?);
                coef.push(safe_ratio(jp, yp));
            }
        }
        CircleKind::Transmission(n0) => {
            if n0.re <= 0.0 || n0.im < 0.0 {
                return Err(Error::Admissibility(format!(
                    "refractive index must have Re > 0 and Im >= 0, got {n0}"
                )));
            }
            let ki = Complex::new(k, 0.0) * n0.sqrt();
            let jz = complex_j_ladder(nmax + 1, ki * radius);
            for n in 0..=nmax {
                let jka = bessel_j(n as i32, ka)?;
                let jka_p = 0.5 * (bessel_j(n as i32 - 1, ka)? - bessel_j(n as i32 + 1, ka)?);
                let yka = bessel_y(n as i32, ka)?;
                let yka_p =
                    0.5 * (bessel_y_safe(n as i32 - 1, ka)? - bessel_y_safe(n as i32 + 1, ka)?);
                let a_ = Complex::new(jka, 0.0);
                let ap = Complex::new(k * jka_p, 0.0);
                let b_ = Complex::new(jka, yka);
                let bp = Complex::new(k * jka_p, k * yka_p);
                let c_ = jz[n];
                // J_n'(z) = J_{n-1}(z) - n/z J_n(z)
                let jprev = if n == 0 { -jz[1] } else { jz[n - 1] };
                let cp = ki * (jprev - (n as f64) / (ki * radius) * jz[n]);
                let num = a_ * cp - ap * c_;
                let den = bp * c_ - b_ * cp;
                coef.push(if den.norm() == 0.0 { Complex::new(0.0, 0.0) } else { num / den });
            }
        }
    }
    // tail check: the last retained coefficient must be negligible
    let maxc = coef.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if coef[nmax].norm() > 1e-13 * maxc.max(1e-30) {
        return Err(Error::NonConvergence(format!(
            "circle series tail {:.3e} not negligible at order {nmax}",
            coef[nmax].norm()
        )));
    }

    let mut sum = coef[0];
    for (n, c) in coef.iter().enumerate().skip(1) {
        sum += 2.0 * c * (n as f64 * psi).cos();
    }
    Ok(match kind {
        CircleKind::Transmission(_) => -4.0 * I * sum,
        _ => 4.0 * I * sum,
    })
}

/// Y_n with overflow saturated to -inf treated as "denominator huge".
fn bessel_y_safe(n: i32, x: f64) -> Result<f64> {
    bessel_y(n, x)
}

/// c = J / (J + iY) without overflow when |Y| is astronomically large.
fn safe_ratio(j: f64, y: f64) -> Complex {
    if !y.is_finite() || y.abs() > 1e120 {
        // c = (J/Y) / (J/Y + i); J/Y underflows safely
        let t = j / y;
        Complex::new(t, 0.0) / Complex::new(t, 1.0)
    } else {
        Complex::new(j, 0.0) / Complex::new(j, y)
    }
}
