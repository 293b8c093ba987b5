//! Cylinder functions J_n, Y_n, H^(1)_n and the 2D Helmholtz fundamental
//! solution.
//!
//! Evaluation strategy, with crossover at `SERIES_CUTOFF = 17`:
//! * `x <= 17`: ascending power series for orders 0 and 1, accumulated in
//!   double-double arithmetic so the alternating-series cancellation does not
//!   eat into the final accuracy;
//! * `x > 17`: Hankel asymptotic expansions with optimal truncation (the
//!   smallest term at `x = 17` is below 2e-15);
//! * higher orders: forward recurrence for `n <= x` (J) and always (Y, the
//!   dominant solution), backward Miller recurrence normalized by
//!   `J_0 + 2 sum J_{2m} = 1` for `n > x`.
//!
//! Negative orders use the reflection `C_{-n} = (-1)^n C_n`.

use crate::{Complex, Error, Result, Vec2};

/// Largest supported order.
pub const MAX_ORDER: i32 = 300;

/// Euler–Mascheroni constant (f64 head; used by kernel diagonals).
pub(crate) const EULER_GAMMA: f64 = 0.5772156649015329;

/// Switch point between the ascending series and the asymptotic expansions.
const SERIES_CUTOFF: f64 = 17.0;

// ---------------------------------------------------------------------------
// double-double arithmetic (enough of it for the series)
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

const DD_EULER: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };
const DD_TWO_OVER_PI: Dd =
    Dd { hi: std::f64::consts::FRAC_2_PI, lo: -3.935735335036497e-17 };

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: f64::mul_add(a, b, -p) }
}

impl Dd {
    #[inline]
    fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        quick_two_sum(s.hi, s.lo + self.lo + o.lo)
    }

    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + self.hi * o.lo + self.lo * o.hi)
    }

    /// Division by a f64 whose value is exactly representable (integers here).
    #[inline]
    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let p = two_prod(q1, b);
        let r = (self.hi - p.hi) - p.lo + self.lo;
        quick_two_sum(q1, r / b)
    }

    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

// ---------------------------------------------------------------------------
// order 0 and 1, small argument: ascending series in double-double
// ---------------------------------------------------------------------------

/// J_n(x) for n in {0,1}, 0 < x <= SERIES_CUTOFF.
fn j01_series(n: i32, x: f64) -> f64 {
    let q = two_prod(x, x).div_f64(4.0); // x^2/4 exactly to dd
    let mut term = if n == 0 { Dd::from_f64(1.0) } else { Dd::from_f64(0.5 * x) };
    let mut sum = term;
    for m in 1..200 {
        let denom = (m * (m + n)) as f64;
        term = term.mul(q).div_f64(denom).neg();
        sum = sum.add(term);
        if term.hi.abs() < 1e-40 * sum.hi.abs().max(1e-300) {
            break;
        }
    }
    sum.to_f64()
}

/// Y_n(x) for n in {0,1}, 0 < x <= SERIES_CUTOFF.
fn y01_series(n: i32, x: f64) -> f64 {
    let q = two_prod(x, x).div_f64(4.0);
    // (ln(x/2) + gamma) * J_n(x); the f64 log costs ~eps absolute, which is
    // harmless because it is never the cancelling part.
    let jn = Dd::from_f64(j01_series(n, x));
    let logfac = two_sum((0.5 * x).ln(), DD_EULER.hi).add(Dd::from_f64(DD_EULER.lo));
    let log_part = DD_TWO_OVER_PI.mul(logfac).mul(jn);

    let mut sum;
    let mut harm_m = Dd::from_f64(0.0); // H_m
    if n == 0 {
        // (2/pi) * sum_{m>=1} (-1)^{m+1} H_m (x^2/4)^m / (m!)^2
        let mut term = Dd::from_f64(1.0);
        sum = Dd::from_f64(0.0);
        let mut sign = 1.0;
        for m in 1..200 {
            term = term.mul(q).div_f64((m * m) as f64);
            harm_m = harm_m.add(Dd::from_f64(1.0).div_f64(m as f64));
            let contrib = term.mul(harm_m);
            sum = sum.add(if sign > 0.0 { contrib } else { contrib.neg() });
            sign = -sign;
            if contrib.hi.abs() < 1e-40 * sum.hi.abs().max(1e-300) {
                break;
            }
        }
        sum = DD_TWO_OVER_PI.mul(sum);
        log_part.add(sum).to_f64()
    } else {
        // -2/(pi x) - (1/pi) sum_{m>=0} (-1)^m (H_m + H_{m+1}) (x/2)^{2m+1}/(m!(m+1)!)
        let mut term = Dd::from_f64(0.5 * x); // (x/2)^{2m+1}/(m!(m+1)!) at m=0
        let mut harm_m1 = Dd::from_f64(1.0); // H_{m+1}
        sum = term.mul(harm_m1); // m = 0 contribution (H_0 = 0)
        let mut sign = -1.0;
        for m in 1..200 {
            term = term.mul(q).div_f64((m * (m + 1)) as f64);
            harm_m = harm_m.add(Dd::from_f64(1.0).div_f64(m as f64));
            harm_m1 = harm_m1.add(Dd::from_f64(1.0).div_f64((m + 1) as f64));
            let contrib = term.mul(harm_m.add(harm_m1));
            sum = sum.add(if sign > 0.0 { contrib } else { contrib.neg() });
            sign = -sign;
            if contrib.hi.abs() < 1e-40 * sum.hi.abs().max(1e-300) {
                break;
            }
        }
        let half_pi_sum = DD_TWO_OVER_PI.mul(sum).div_f64(2.0);
        let pole = DD_TWO_OVER_PI.div_f64(x).neg();
        log_part.add(pole).add(half_pi_sum.neg()).to_f64()
    }
}

// ---------------------------------------------------------------------------
// order 0 and 1, large argument: Hankel asymptotic expansion
// ---------------------------------------------------------------------------

/// (P, Q, chi) of the expansion C_n(x) ~ sqrt(2/(pi x)) [P cos/sin +- Q ...].
fn asymptotic_pq(n: i32, x: f64) -> (f64, f64, f64) {
    let mu = (4 * n * n) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for j in 1..80 {
        let jj = (2 * j - 1) as f64;
        term *= (mu - jj * jj) / (j as f64 * 8.0 * x);
        if term.abs() >= prev {
            break; // asymptotic tail started growing: stop at optimal order
        }
        prev = term.abs();
        match j % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (2 * n + 1) as f64 * std::f64::consts::FRAC_PI_4;
    (p, q, chi)
}

fn j01_asymptotic(n: i32, x: f64) -> f64 {
    let (p, q, chi) = asymptotic_pq(n, x);
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn y01_asymptotic(n: i32, x: f64) -> f64 {
    let (p, q, chi) = asymptotic_pq(n, x);
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.sin() + q * chi.cos())
}

fn j0(x: f64) -> f64 {
    if x <= SERIES_CUTOFF {
        j01_series(0, x)
    } else {
        j01_asymptotic(0, x)
    }
}

fn j1(x: f64) -> f64 {
    if x <= SERIES_CUTOFF {
        j01_series(1, x)
    } else {
        j01_asymptotic(1, x)
    }
}

fn y0(x: f64) -> f64 {
    if x <= SERIES_CUTOFF {
        y01_series(0, x)
    } else {
        y01_asymptotic(0, x)
    }
}

fn y1(x: f64) -> f64 {
    if x <= SERIES_CUTOFF {
        y01_series(1, x)
    } else {
        y01_asymptotic(1, x)
    }
}

// ---------------------------------------------------------------------------
// general integer order
// ---------------------------------------------------------------------------

/// Backward (Miller) recurrence for J_n(x) with n > x, normalized by
/// J_0 + 2 sum_{m>=1} J_{2m} = 1.
fn jn_miller(n: i32, x: f64) -> f64 {
    let acc = 160.0;
    let start = {
        let s = n as usize + (acc * n as f64).sqrt() as usize + 2;
        s + (s & 1) // even
    };
    let mut jp = 0.0_f64; // J_{m+1}
    let mut j = 1e-300_f64; // J_m
    let mut sum = 0.0_f64;
    let mut target = 0.0_f64;
    let mut m = start as i32;
    while m >= 1 {
        let jm = (2.0 * m as f64 / x) * j - jp; // J_{m-1}
        jp = j;
        j = jm;
        m -= 1;
        if m == n {
            target = j;
        }
        if m > 0 && m % 2 == 0 {
            sum += 2.0 * j;
        } else if m == 0 {
            sum += j;
        }
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp *= s;
            sum *= s;
            target *= s;
        }
    }
    target / sum
}

fn check_args(op: &'static str, order: i32, x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::Domain { op, msg: format!("argument must be positive, got {x}") });
    }
    if order.abs() > MAX_ORDER {
        return Err(Error::Domain { op, msg: format!("|order| must be <= {MAX_ORDER}, got {order}") });
    }
    Ok(())
}

/// Bessel function of the first kind J_n(x), integer order, x > 0.
pub fn bessel_j(order: i32, x: f64) -> Result<f64> {
    check_args("bessel_j", order, x)?;
    let n = order.abs();
    let sign = if order < 0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let v = match n {
        0 => j0(x),
        1 => j1(x),
        _ => {
            if (n as f64) <= x {
                // forward recurrence, stable while n <= x
                let mut jm = j0(x);
                let mut j = j1(x);
                for m in 1..n {
                    let jp = (2.0 * m as f64 / x) * j - jm;
                    jm = j;
                    j = jp;
                }
                j
            } else {
                jn_miller(n, x)
            }
        }
    };
    Ok(sign * v)
}

/// Bessel function of the second kind Y_n(x), integer order, x > 0.
///
/// Values beyond the f64 range (huge order, small argument) saturate to
/// `-inf`, matching the monotone divergence of the true function.
pub fn bessel_y(order: i32, x: f64) -> Result<f64> {
    check_args("bessel_y", order, x)?;
    let n = order.abs();
    let sign = if order < 0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let v = match n {
        0 => y0(x),
        1 => y1(x),
        _ => {
            // forward recurrence: Y is the dominant solution, always stable
            let mut ym = y0(x);
            let mut y = y1(x);
            for m in 1..n {
                if y.abs() > 1e305 {
                    // everything beyond this order is -inf at f64 scale
                    y = f64::NEG_INFINITY;
                    break;
                }
                let yp = (2.0 * m as f64 / x) * y - ym;
                ym = y;
                y = yp;
            }
            y
        }
    };
    Ok(sign * v)
}

/// Hankel function of the first kind H^(1)_n(x) = J_n(x) + i Y_n(x).
pub fn hankel1(order: i32, x: f64) -> Result<Complex> {
    Ok(Complex::new(bessel_j(order, x)?, bessel_y(order, x)?))
}

/// Fundamental solution Phi(x, y) = (i/4) H^(1)_0(k |x - y|) of the 2D
/// Helmholtz equation.
pub fn fundamental_solution(x: Vec2, y: Vec2, k: f64) -> Result<Complex> {
    let r = (x - y).norm();
    if r == 0.0 {
        return Err(Error::Domain { op: "fundamental_solution", msg: "x = y".into() });
    }
    let h = hankel1(0, k * r)?;
    Ok(Complex::new(0.0, 0.25) * h)
}

/// Normal derivative of the fundamental solution with respect to the second
/// argument: dPhi(x,y)/dnu(y) = (ik/4) H^(1)_1(k|x-y|) (x-y)·nu(y) / |x-y|.
pub fn fundamental_solution_normal_derivative(
    x: Vec2,
    y: Vec2,
    normal_at_y: Vec2,
    k: f64,
) -> Result<Complex> {
    let d = x - y;
    let r = d.norm();
    if r == 0.0 {
        return Err(Error::Domain {
            op: "fundamental_solution_normal_derivative",
            msg: "x = y".into(),
        });
    }
    if (normal_at_y.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain {
            op: "fundamental_solution_normal_derivative",
            msg: format!("normal has length {}", normal_at_y.norm()),
        });
    }
    let h1 = hankel1(1, k * r)?;
    Ok(Complex::new(0.0, 0.25 * k) * h1 * (d.dot(&normal_at_y) / r))
}
