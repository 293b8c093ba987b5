//! Spectral convergence of the Nyström boundary solver: far-field error
//! against the analytic circle series as the quadrature size doubles.
//!
//!     cargo run --release --example mie_convergence

use phaseless2d::{
    analytic_circle_farfield, forward, BoundaryCurve, CircleKind, Condition, CurveKind,
    DirectionSet, Obstacle, ScatteringScene, Vec2,
};

fn main() -> phaseless2d::Result<()> {
    let k = 5.0;
    let d = Vec2::new(1.0, 0.0);
    let dirs = DirectionSet::uniform(64)?;
    println!("sound-soft unit circle, k = {k}: Nystrom vs separation of variables");
    for n in [16usize, 32, 64, 128, 256] {
        let scene = ScatteringScene::new(
            k,
            vec![Obstacle {
                curve: BoundaryCurve::new(CurveKind::Circle, Vec2::zeros(), n)?,
                condition: Condition::Dirichlet,
            }],
        )?;
        let sol = forward::solve_dirichlet(&scene, d)?;
        let mut worst = 0.0_f64;
        for xh in dirs.directions() {
            let exact = analytic_circle_farfield(k, 1.0, CircleKind::Dirichlet, xh, d)?;
            worst = worst.max((sol.far_field(xh) - exact).norm() / exact.norm());
        }
        println!("  {n:4} nodes: max relative error {worst:.3e}");
    }
    Ok(())
}
