//! Synthesize a phaseless total-field dataset (and the matching far-field
//! matrix) for a sound-soft peanut, with and without measurement noise.
//!
//!     cargo run --release --example simulate_phaseless

use phaseless2d::{
    add_noise, io, simulate_farfield, simulate_phaseless, BoundaryCurve, Condition, CurveKind,
    Obstacle, ScatteringScene, Vec2,
};
use std::path::Path;

fn main() -> phaseless2d::Result<()> {
    let k = 10.0;
    let (r, l) = (10.0, 100);
    let curve = BoundaryCurve::new(CurveKind::Peanut, Vec2::zeros(), 256)?;
    println!(
        "scene: sound-soft peanut, k = {k}, quadrature {} ({:.1} points per wavelength)",
        curve.quadrature_count,
        curve.quadrature_count as f64 * (2.0 * std::f64::consts::PI / k) / curve.perimeter()
    );
    let scene = ScatteringScene::new(k, vec![Obstacle { curve, condition: Condition::Dirichlet }])?;

    let exact = simulate_phaseless(&scene, r, l)?;
    let noisy = add_noise(&exact, 0.1, 7)?;
    let farfield = simulate_farfield(&scene, l)?;

    let out = Path::new("out/simulate_phaseless");
    std::fs::create_dir_all(out)?;
    io::write_phaseless_csv(&out.join("phaseless.csv"), &exact)?;
    io::write_phaseless_csv(&out.join("phaseless_noisy.csv"), &noisy)?;
    io::write_farfield_csv(&out.join("farfield.csv"), &farfield)?;
    io::write_manifest(
        &out.join("manifest.txt"),
        &[
            ("k", format!("{k}")),
            ("R", format!("{r}")),
            ("L", format!("{l}")),
            ("delta", "0.1".into()),
            ("seed", "7".into()),
            ("noise_generator", "splitmix64-v1".into()),
        ],
    )?;

    let (lo, hi) = exact
        .values
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    println!("|u| over the measurement circle: [{lo:.4}, {hi:.4}]");
    println!("wrote {}", out.display());
    Ok(())
}
