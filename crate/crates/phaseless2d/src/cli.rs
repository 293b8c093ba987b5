//! Command implementations behind the `phaseless2d` binary: simulate,
//! invert, invert-farfield, and the validation suites.
//!
//! Exit codes (mapped in main): 0 success, 2 configuration error,
//! 3 numerical failure, 4 validation failure.

use crate::config::RunConfig;
use crate::forward::{add_noise, simulate_farfield, simulate_phaseless, CircleKind};
use crate::geometry::{BoundaryCurve, CurveKind, DirectionSet};
use crate::inversion::{normalize, reconstruct, reconstruct_from_farfield};
use crate::validation::{
    check_farfield_asymptotics, check_operator_asymptotics, check_reciprocity,
    check_sharp_asymptotics, check_truncation_decay,
};
use crate::{io, Error, Result, Vec2};
use std::path::Path;

fn ensure_out_dir(out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    Ok(())
}

fn manifest_entries(cfg: &RunConfig, extra: &[(&'static str, String)]) -> Vec<(&'static str, String)> {
    let mut entries: Vec<(&'static str, String)> = vec![
        ("tool", format!("phaseless2d {}", env!("CARGO_PKG_VERSION"))),
        ("k", format!("{:.16e}", cfg.k)),
        ("R", format!("{:.16e}", cfg.r)),
        ("L", cfg.l.to_string()),
        ("M", cfg.m.to_string()),
        ("delta", format!("{:.16e}", cfg.delta)),
        ("seed", cfg.seed.to_string()),
        ("cutoff", format!("{:.16e}", cfg.cutoff)),
        (
            "grid",
            format!(
                "{} {} {} {} {} {}",
                cfg.grid.xmin, cfg.grid.xmax, cfg.grid.ymin, cfg.grid.ymax, cfg.grid.nx, cfg.grid.ny
            ),
        ),
        ("noise_generator", "splitmix64-v1".into()),
    ];
    for (i, ob) in cfg.obstacle.iter().enumerate() {
        let mut line = format!(
            "kind={:?} center=({}, {}) condition={}",
            ob.kind, ob.center[0], ob.center[1], ob.condition
        );
        if let Some(rho) = &ob.rho {
            line.push_str(&format!(" rho={rho}"));
        }
        if let Some(n) = &ob.n {
            line.push_str(&format!(" n={n}"));
        }
        let _ = i;
        entries.push(("obstacle", line));
    }
    entries.extend_from_slice(extra);
    entries
}

/// Simulate phaseless (and far-field) data files plus a manifest.
pub fn cmd_simulate(cfg: &RunConfig, out_dir: &Path, with_farfield: bool) -> Result<()> {
    cfg.validate()?;
    ensure_out_dir(out_dir)?;
    let scene = cfg.scene()?;
    for w in scene.resolution_warnings() {
        eprintln!("warning: {w}");
    }
    let exact = simulate_phaseless(&scene, cfg.r, cfg.l)?;
    let data = if cfg.delta > 0.0 { add_noise(&exact, cfg.delta, cfg.seed)? } else { exact };
    let data_path = out_dir.join("phaseless.csv");
    io::write_phaseless_csv(&data_path, &data)?;
    let mut extra = vec![("output", data_path.display().to_string())];
    if with_farfield {
        let f = simulate_farfield(&scene, cfg.l)?;
        let f_path = out_dir.join("farfield.csv");
        io::write_farfield_csv(&f_path, &f)?;
        extra.push(("output", f_path.display().to_string()));
    }
    io::write_manifest(&out_dir.join("manifest.txt"), &manifest_entries(cfg, &extra))?;
    Ok(())
}

/// Invert a phaseless dataset file into indicator CSV + PGM.
pub fn cmd_invert(data_path: &Path, cfg: &RunConfig, out_dir: &Path) -> Result<()> {
    ensure_out_dir(out_dir)?;
    let data = io::read_phaseless_csv(data_path)?;
    if data.l != cfg.l {
        return Err(Error::ShapeMismatch(format!(
            "data file has L = {}, configuration says L = {}",
            data.l, cfg.l
        )));
    }
    if (cfg.m as f64) < data.r {
        eprintln!("warning: M = {} < R = {}; accuracy degrades when M < R", cfg.m, data.r);
    }
    let grid = cfg.sampling_grid()?;
    let field = reconstruct(&data, &grid, cfg.m, cfg.cutoff)?;
    let normalized = normalize(&field);
    io::write_indicator_csv(&out_dir.join("indicator.csv"), &normalized)?;
    io::write_pgm(&out_dir.join("indicator.pgm"), &normalized)?;
    io::write_manifest(
        &out_dir.join("manifest.txt"),
        &manifest_entries(cfg, &[("input", data_path.display().to_string())]),
    )?;
    Ok(())
}

/// Far-field reference inversion.
pub fn cmd_invert_farfield(data_path: &Path, cfg: &RunConfig, out_dir: &Path) -> Result<()> {
    ensure_out_dir(out_dir)?;
    let f = io::read_farfield_csv(data_path)?;
    if f.l != cfg.l {
        return Err(Error::ShapeMismatch(format!(
            "far-field file has L = {}, configuration says L = {}",
            f.l, cfg.l
        )));
    }
    let grid = cfg.sampling_grid()?;
    let field = reconstruct_from_farfield(&f, &grid, cfg.m, cfg.cutoff)?;
    let normalized = normalize(&field);
    io::write_indicator_csv(&out_dir.join("indicator_farfield.csv"), &normalized)?;
    io::write_pgm(&out_dir.join("indicator_farfield.pgm"), &normalized)?;
    io::write_manifest(
        &out_dir.join("manifest.txt"),
        &manifest_entries(cfg, &[("input", data_path.display().to_string())]),
    )?;
    Ok(())
}

/// Run one validation suite; Ok(true) means every check passed.
pub fn cmd_validate(suite: &str, cfg: &RunConfig, out_dir: &Path) -> Result<bool> {
    ensure_out_dir(out_dir)?;
    match suite {
        "reciprocity" => {
            let scene = cfg.scene()?;
            let f = simulate_farfield(&scene, cfg.l)?;
            let dev = check_reciprocity(&f)?;
            let pass = dev <= 1e-6;
            println!("reciprocity deviation: {dev:.3e} (tolerance 1e-6) -> {}", verdict(pass));
            io::write_manifest(
                &out_dir.join("reciprocity.txt"),
                &[("deviation", format!("{dev:.16e}")), ("pass", pass.to_string())],
            )?;
            Ok(pass)
        }
        "farfield-asymptotics" => {
            let scene = cfg.scene()?;
            let radii = [50.0, 100.0, 200.0, 400.0];
            let rep = check_farfield_asymptotics(&scene, Vec2::new(1.0, 0.0), &radii)?;
            println!(
                "far-field expansion slope: {:.3} (expected in [-1.7, -1.3]) -> {}",
                rep.slope,
                verdict(rep.pass)
            );
            io::write_decay_report(
                &out_dir.join("farfield_asymptotics.txt"),
                &out_dir.join("farfield_asymptotics.csv"),
                "farfield-asymptotics",
                &rep,
            )?;
            Ok(rep.pass)
        }
        "operator-asymptotics" | "sharp-asymptotics" => {
            let scene = cfg.scene()?;
            let radii = [20.0, 40.0, 80.0, 160.0];
            if (cfg.m as f64) < radii[radii.len() - 1] {
                eprintln!(
                    "warning: M = {} is below the largest radius {}; theory prefers M >= R",
                    cfg.m,
                    radii[radii.len() - 1]
                );
            }
            let rep = if suite == "operator-asymptotics" {
                check_operator_asymptotics(&scene, cfg.l, cfg.m, &radii)?
            } else {
                check_sharp_asymptotics(&scene, cfg.l, cfg.m, &radii)?
            };
            let bound = if suite == "operator-asymptotics" { -0.8 } else { -0.5 };
            println!(
                "{suite} slope: {:.3} (required <= {bound}), strictly decreasing: {} -> {}",
                rep.slope,
                rep.strictly_decreasing(),
                verdict(rep.pass)
            );
            io::write_decay_report(
                &out_dir.join(format!("{}.txt", suite.replace('-', "_"))),
                &out_dir.join(format!("{}.csv", suite.replace('-', "_"))),
                suite,
                &rep,
            )?;
            Ok(rep.pass)
        }
        "truncation" => {
            let ms = [60usize, 80, 100];
            let l = (2 * ms[ms.len() - 1] + 2).max(cfg.l);
            let rep = check_truncation_decay(cfg.k, Vec2::new(6.0, 0.0), l, &ms)?;
            let last = rep.points.last().map(|p| p.1).unwrap_or(f64::NAN);
            let pass = rep.pass && last <= 1e-4;
            println!(
                "truncation residual at M=100: {last:.3e} (tolerance 1e-4), monotone: {} -> {}",
                rep.pass,
                verdict(pass)
            );
            io::write_decay_report(
                &out_dir.join("truncation.txt"),
                &out_dir.join("truncation.csv"),
                "truncation",
                &rep,
            )?;
            Ok(pass)
        }
        "oracle" => cmd_oracle_suite(out_dir),
        other => Err(Error::InvalidArgument(format!(
            "unknown suite `{other}` (expected reciprocity, farfield-asymptotics, operator-asymptotics, sharp-asymptotics, truncation, oracle)"
        ))),
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Mie-series cross-validation of the three forward solvers.
fn cmd_oracle_suite(out_dir: &Path) -> Result<bool> {
    use crate::forward::{solve_dirichlet, solve_impedance, solve_medium, Condition, Obstacle,
        ScatteringScene};
    use crate::Complex;

    let mut all = true;
    let mut lines: Vec<(&str, String)> = Vec::new();
    let d = Vec2::new(1.0, 0.0);
    let dirs = DirectionSet::uniform(64)?.directions();
    let circle = |n: usize| BoundaryCurve::new(CurveKind::Circle, Vec2::zeros(), n).unwrap();

    // sound-soft circle, k = 5
    let scene = ScatteringScene::new(
        5.0,
        vec![Obstacle { curve: circle(256), condition: Condition::Dirichlet }],
    )?;
    let sol = solve_dirichlet(&scene, d)?;
    let mut worst = 0.0_f64;
    for &xh in &dirs {
        let exact = crate::forward::analytic_circle_farfield(5.0, 1.0, CircleKind::Dirichlet, xh, d)?;
        worst = worst.max((sol.far_field(xh) - exact).norm() / exact.norm());
    }
    let pass = worst <= 1e-8;
    all &= pass;
    println!("oracle sound-soft circle: max rel err {worst:.3e} (tol 1e-8) -> {}", verdict(pass));
    lines.push(("dirichlet_rel_err", format!("{worst:.16e}")));

    // sound-hard circle, k = 5
    let scene = ScatteringScene::new(
        5.0,
        vec![Obstacle {
            curve: circle(256),
            condition: Condition::Impedance(crate::config::ScalarExpr::zero()),
        }],
    )?;
    let sol = solve_impedance(&scene, d)?;
    let mut worst = 0.0_f64;
    for &xh in &dirs {
        let exact = crate::forward::analytic_circle_farfield(5.0, 1.0, CircleKind::Neumann, xh, d)?;
        worst = worst.max((sol.far_field(xh) - exact).norm() / exact.norm());
    }
    let pass = worst <= 1e-8;
    all &= pass;
    println!("oracle sound-hard circle: max rel err {worst:.3e} (tol 1e-8) -> {}", verdict(pass));
    lines.push(("neumann_rel_err", format!("{worst:.16e}")));

    // penetrable disc, k = 2, n = 2 + 1.5i, 64x64 cells
    let n0 = Complex::new(2.0, 1.5);
    let scene = ScatteringScene::new(
        2.0,
        vec![Obstacle { curve: circle(64), condition: Condition::Medium { n: n0, grid: 64 } }],
    )?;
    let sol = solve_medium(&scene, d)?;
    let mut worst = 0.0_f64;
    for &xh in &dirs {
        let exact =
            crate::forward::analytic_circle_farfield(2.0, 1.0, CircleKind::Transmission(n0), xh, d)?;
        worst = worst.max((sol.far_field(xh) - exact).norm() / exact.norm());
    }
    let pass = worst <= 1e-2;
    all &= pass;
    println!("oracle penetrable disc: max rel err {worst:.3e} (tol 1e-2) -> {}", verdict(pass));
    lines.push(("transmission_rel_err", format!("{worst:.16e}")));

    io::write_manifest(&out_dir.join("oracle.txt"), &lines)?;
    Ok(all)
}
