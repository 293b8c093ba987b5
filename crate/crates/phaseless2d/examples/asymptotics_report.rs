//! Numerical check of the operator asymptotics driving the method: the
//! modified phaseless operator approaches (8 k pi R)^{-1/2} times the
//! modified far-field operator as the measurement radius grows, before and
//! after the |Re| + |Im| combination.
//!
//!     cargo run --release --example asymptotics_report

use phaseless2d::{
    check_farfield_asymptotics, check_operator_asymptotics, check_reciprocity,
    check_sharp_asymptotics, check_truncation_decay, simulate_farfield, BoundaryCurve, Condition,
    CurveKind, Obstacle, ScatteringScene, Vec2,
};

fn print_report(name: &str, rep: &phaseless2d::DecayReport) {
    println!("{name}: slope {:.3}, pass {}", rep.slope, rep.pass);
    for (p, e) in &rep.points {
        println!("    {:8.1}  {e:.6e}", p);
    }
}

fn main() -> phaseless2d::Result<()> {
    let k = 5.0;
    let peanut = ScatteringScene::new(
        k,
        vec![Obstacle {
            curve: BoundaryCurve::new(CurveKind::Peanut, Vec2::zeros(), 256)?,
            condition: Condition::Dirichlet,
        }],
    )?;

    let f = simulate_farfield(&peanut, 128)?;
    println!("reciprocity deviation (peanut, k = {k}, L = 128): {:.3e}", check_reciprocity(&f)?);

    let circle = ScatteringScene::new(
        k,
        vec![Obstacle {
            curve: BoundaryCurve::new(CurveKind::Circle, Vec2::zeros(), 256)?,
            condition: Condition::Dirichlet,
        }],
    )?;
    let rep = check_farfield_asymptotics(&circle, Vec2::new(1.0, 0.0), &[50.0, 100.0, 200.0, 400.0])?;
    print_report("far-field expansion remainder (expect ~ R^-1.5)", &rep);

    let radii = [20.0, 40.0, 80.0, 160.0];
    let rep = check_operator_asymptotics(&peanut, 128, 100, &radii)?;
    print_report("operator difference || Ntilde - (8 k pi R)^-1/2 Ftilde ||", &rep);
    let rep = check_sharp_asymptotics(&peanut, 128, 100, &radii)?;
    print_report("sharp difference   || Nsharp - (8 k pi R)^-1/2 Fsharp ||", &rep);

    let rep = check_truncation_decay(10.0, Vec2::new(6.0, 0.0), 256, &[60, 80, 100])?;
    print_report("test-vector truncation residual vs M", &rep);
    Ok(())
}
