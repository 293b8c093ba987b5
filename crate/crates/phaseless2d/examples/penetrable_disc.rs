//! Lippmann–Schwinger solver for a penetrable disc, checked against the
//! analytic transmission series at two grid resolutions.
//!
//!     cargo run --release --example penetrable_disc

use phaseless2d::{
    analytic_circle_farfield, forward, BoundaryCurve, CircleKind, Complex, Condition, CurveKind,
    DirectionSet, Obstacle, ScatteringScene, Vec2,
};

fn main() -> phaseless2d::Result<()> {
    let k = 2.0;
    let n0 = Complex::new(2.0, 1.5);
    let d = Vec2::new(1.0, 0.0);
    let dirs = DirectionSet::uniform(64)?;

    println!("penetrable unit disc, n = {n0}, k = {k}");
    for grid in [32usize, 64, 128] {
        let scene = ScatteringScene::new(
            k,
            vec![Obstacle {
                curve: BoundaryCurve::new(CurveKind::Circle, Vec2::zeros(), 64)?,
                condition: Condition::Medium { n: n0, grid },
            }],
        )?;
        let sol = forward::solve_medium(&scene, d)?;
        let mut worst = 0.0_f64;
        for xh in dirs.directions() {
            let exact = analytic_circle_farfield(k, 1.0, CircleKind::Transmission(n0), xh, d)?;
            worst = worst.max((sol.far_field(xh) - exact).norm() / exact.norm());
        }
        println!("  grid {grid:3} x {grid:<3}: max relative far-field error {worst:.3e}");
    }
    Ok(())
}
