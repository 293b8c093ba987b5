//! Compare the phaseless reconstruction against the far-field reference
//! pipeline on the same scene: the phaseless operator approaches
//! (8 k pi R)^{-1/2} times the modified far-field operator as R grows, so the
//! two indicators should agree on where the scatterer is.
//!
//!     cargo run --release --example farfield_reference

use phaseless2d::{
    normalize, reconstruct, reconstruct_from_farfield, simulate_farfield, simulate_phaseless,
    BoundaryCurve, Condition, CurveKind, Obstacle, SamplingGrid, ScatteringScene, Vec2,
};

fn main() -> phaseless2d::Result<()> {
    let (k, r, l, m) = (10.0, 10.0, 150, 100);
    let curve = BoundaryCurve::new(CurveKind::Kite, Vec2::zeros(), 256)?;
    let scene = ScatteringScene::new(k, vec![Obstacle { curve, condition: Condition::Dirichlet }])?;
    let grid = SamplingGrid::new(-3.0, 3.0, -3.0, 3.0, 101, 101)?;

    let phaseless = normalize(&reconstruct(&simulate_phaseless(&scene, r, l)?, &grid, m, 1e-12)?);
    let farfield =
        normalize(&reconstruct_from_farfield(&simulate_farfield(&scene, l)?, &grid, m, 1e-12)?);

    for frac in [0.5, 0.7, 0.9] {
        let a = phaseless.level_set(frac);
        let b = farfield.level_set(frac);
        let inter = a.iter().zip(&b).filter(|(x, y)| **x && **y).count();
        let union = a.iter().zip(&b).filter(|(x, y)| **x || **y).count();
        println!(
            "level {frac:.1}: phaseless {} nodes, far-field {} nodes, Jaccard {:.3}",
            a.iter().filter(|&&x| x).count(),
            b.iter().filter(|&&x| x).count(),
            inter as f64 / union.max(1) as f64
        );
    }
    println!(
        "peaks: phaseless ({:+.3}, {:+.3}), far-field ({:+.3}, {:+.3})",
        phaseless.argmax().x,
        phaseless.argmax().y,
        farfield.argmax().x,
        farfield.argmax().y
    );
    Ok(())
}
